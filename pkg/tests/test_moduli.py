"""Tests for the localized rings and the groupoid presentation."""

import random

import pytest

from wittdisplays.display import change_of_coords
from wittdisplays.errors import NotAUnitError
from wittdisplays.moduli import (
    HopfPresentation,
    LocalizedRing,
    beta_name,
    build_presentation,
    check_coassociativity,
    check_delta_counit,
    check_right_unit_counit,
    delta_substitution,
    epsilon_apply,
    invariant_ideal_certificate,
    phi_name,
    specialize_change,
    specialize_display,
    substitute_localized,
)
from wittdisplays.rings import IntegersMod, PolynomialRing, ZZ, substitute


# ---------------------------------------------------------------------------
# Localized rings


def localized():
    poly = PolynomialRing(ZZ, ["x", "y"])
    x, y = poly.gens()
    return LocalizedRing(poly, (x.payload, (x * y + 1).payload)), poly


def test_localized_normalization():
    ring, poly = localized()
    x, y = poly.gens()
    elt = ring.element(ring.normalize((x * x * y).payload, (1, 0)))
    # x cancels once
    assert elt.payload == ((x * y).payload, (0, 0))


def test_localized_arithmetic():
    ring, poly = localized()
    x, y = poly.gens()
    a = ring.element(((poly.one()).payload, (1, 0)))  # 1/x
    b = ring.from_poly(x.payload)
    assert a * b == ring.one()
    s = a + a
    assert s.payload == (poly(2).payload, (1, 0))
    assert (s - s).is_zero()


def test_localized_inversion():
    ring, poly = localized()
    x, y = poly.gens()
    inv = ring.from_poly(x.payload).invert()
    assert inv * ring.from_poly(x.payload) == ring.one()
    with pytest.raises(NotAUnitError):
        ring.from_poly(y.payload).invert()
    with pytest.raises(NotAUnitError):
        ring.from_poly((x + y).payload).invert()
    assert not ring.is_unit((x + y).payload)
    assert ring.is_unit(((x * y + 1) * x).payload)


def test_substitute_localized():
    ring, poly = localized()
    x, y = poly.gens()
    elt = ring.element(((x * y).payload, (1, 0)))  # y after cancellation? no: (xy)/x
    target = IntegersMod(7)
    value = substitute_localized(elt, {"x": target(2), "y": target(3)}, target)
    assert value == target(3)


# ---------------------------------------------------------------------------
# Presentation structure


def test_generator_counts():
    for h, N in ((2, 2), (3, 2), (2, 3)):
        P = build_presentation(2, N, h, symbolic=False)
        assert P.generator_count_beta() == h * h * N
        assert P.generator_count_phi() == h * h * N - (h - 1)


def test_symbolic_axioms_small():
    P = build_presentation(2, 2, 2)
    assert P.symbolic
    assert check_right_unit_counit(P)
    assert check_delta_counit(P)
    assert check_coassociativity(P)
    assert P.antipode is not None


def test_epsilon_fixes_beta():
    P = build_presentation(2, 2, 2)
    gamma = P.ring_Gamma_ext
    img = epsilon_apply(P, gamma.gen(beta_name(1, 2, 1)))
    assert img == P.ring_A.gen(beta_name(1, 2, 1))


def test_build_rejects_truncation_one():
    with pytest.raises(ValueError):
        build_presentation(2, 1, 2)


def test_certificate_decomposition():
    for p in (2, 3):
        P = build_presentation(p, 2, 2)
        cert = invariant_ideal_certificate(P)
        ring = P.ring_Gamma_ext
        target = ring.gen(beta_name(0, 2, 2))
        recomposed = (
            cert.unit_factor * target
            + ring(p) * cert.p_part
            + target * cert.hh_part
        )
        assert recomposed == P.eta_R[beta_name(0, 2, 2)]
        assert cert.unit_factor == ring.gen(phi_name(0, 2, 2))
        ring_p = cert.mod_p_cofactor.ring
        assert cert.mod_p_cofactor * cert.mod_p_cofactor_inverse == ring_p.one()


def test_specialization_functoriality():
    # a ring map out of the representing ring gives a valid display exactly
    # when the w_0 determinant specializes to a unit
    P = build_presentation(2, 2, 2)
    field = IntegersMod(2)
    rng = random.Random(0)
    valid = invalid = 0
    for _ in range(40):
        values = {nm: field(rng.randrange(2)) for nm in P.beta_names}
        det = (
            values[beta_name(0, 1, 1)] * values[beta_name(0, 2, 2)]
            - values[beta_name(0, 1, 2)] * values[beta_name(0, 2, 1)]
        )
        try:
            specialize_display(P, values, field)
            ok = True
        except Exception:
            ok = False
        assert ok == det.is_unit()
        valid += ok
        invalid += not ok
    assert valid and invalid


def test_delta_specialization_matches_composition():
    P = build_presentation(2, 2, 2)
    field = IntegersMod(2)
    rng = random.Random(1)

    def rand_change():
        while True:
            vals = {nm: field(rng.randrange(2)) for nm in P.phi_names}
            try:
                return vals, specialize_change(P, vals, field)
            except Exception:
                continue

    for _ in range(10):
        vals1, c1 = rand_change()
        vals2, c2 = rand_change()
        composed = c2.compose(c1)
        sub = delta_substitution(P, vals1, vals2)
        for nm, img in P.delta.items():
            value = substitute(img, sub, field)
            n = int(nm[3])
            ij = nm.split("_")[1]
            i, j = int(ij[0]), int(ij[1])
            if i < 2 and j == 2:
                assert value == composed.b[i - 1][0].components[n - 1]
            elif i < 2:
                assert value == composed.a[i - 1][j - 1].components[n]
            elif j < 2:
                assert value == composed.c[0][j - 1].components[n]
            else:
                assert value == composed.e[0][0].components[n]


def test_eta_r_matches_display_route():
    P = build_presentation(3, 2, 2)
    field = IntegersMod(3)
    rng = random.Random(2)
    for _ in range(10):
        while True:
            beta_vals = {nm: field(rng.randrange(3)) for nm in P.beta_names}
            try:
                D = specialize_display(P, beta_vals, field)
                break
            except Exception:
                continue
        while True:
            phi_vals = {nm: field(rng.randrange(3)) for nm in P.phi_names}
            try:
                phi = specialize_change(P, phi_vals, field)
                break
            except Exception:
                continue
        moved, _ = change_of_coords(D, phi)
        assignment = {
            nm: (beta_vals[nm] if nm in beta_vals else phi_vals[nm])
            for nm in P.ring_Gamma_ext.poly.names
        }
        for i in (1, 2):
            for j in (1, 2):
                sym = substitute_localized(P.eta_R[beta_name(0, i, j)], assignment, field)
                assert sym == moved.rows[i - 1][j - 1].components[0]


def test_relations_listed():
    P = build_presentation(2, 2, 3)
    assert any("phi0_i3 = 0" in r for r in P.relations)
