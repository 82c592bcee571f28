"""Tests for displays in matrix form."""

import random

import pytest

from wittdisplays.display import (
    CoordinateChange,
    NilpotenceResult,
    apply_F,
    apply_Vinv,
    change_of_coords,
    display_substitute,
    dual,
    dual_basis_permutation,
    dual_pairing_holds,
    example_display,
    is_nilpotent,
    lubin_tate_display,
    new_display,
    reduce_h2,
    standard_truncation_ring,
    w0_matrix,
    witt_matrix_inverse,
    zeta_action_fixture,
)
from wittdisplays.errors import AlgebraError, NotAUnitError, PrecisionError
from wittdisplays.linalg import mat_mul, mat_vec
from wittdisplays.rings import FiniteField, IntegersMod, convert
from wittdisplays.witt import WittVector, one as witt_one, teichmuller, zero as witt_zero


def wv(p, ring, comps):
    return WittVector(p, ring, [ring(c) for c in comps])


def rand_witt(p, ring, length, rng):
    return WittVector(p, ring, [ring(rng.randrange(ring.modulus)) for _ in range(length)])


def rand_display(p, ring, h, d, length, rng):
    while True:
        rows = [[rand_witt(p, ring, length, rng) for _ in range(h)] for _ in range(h)]
        try:
            return new_display(p, h, d, ring, rows)
        except AlgebraError:
            continue


def rand_change(p, ring, h, d, length, rng):
    one_w, zero_w = witt_one(p, length, ring), witt_zero(p, length, ring)
    while True:
        blocks = {}
        blocks["a"] = tuple(
            tuple(rand_witt(p, ring, length, rng) + (one_w if i == j else zero_w)
                  for j in range(d))
            for i in range(d)
        )
        blocks["e"] = tuple(
            tuple(rand_witt(p, ring, length, rng) + (one_w if i == j else zero_w)
                  for j in range(h - d))
            for i in range(h - d)
        )
        blocks["b"] = tuple(
            tuple(rand_witt(p, ring, length, rng) for _ in range(h - d)) for _ in range(d)
        )
        blocks["c"] = tuple(
            tuple(rand_witt(p, ring, length, rng) for _ in range(d)) for _ in range(h - d)
        )
        try:
            return CoordinateChange(p, ring, h, d, **blocks)
        except AlgebraError:
            continue


def antidiagonal_display(p, ring, h, length):
    one_w, zero_w = witt_one(p, length, ring), witt_zero(p, length, ring)
    rows = [[zero_w] * h for _ in range(h)]
    rows[0][h - 1] = one_w
    for i in range(1, h):
        rows[i][i - 1] = one_w
    return new_display(p, h, h - 1, ring, rows)


# ---------------------------------------------------------------------------
# Validation


def test_standard_display_accepted():
    ring = standard_truncation_ring(3, 2, 3)
    D = lubin_tate_display(3, 2, 2, ring)
    assert (D.h, D.d, D.n) == (3, 2, 2)


def test_zero_row_rejected():
    ring = IntegersMod(3)
    zero_w = witt_zero(3, 2, ring)
    one_w = witt_one(3, 2, ring)
    with pytest.raises(AlgebraError):
        new_display(3, 2, 1, ring, [[zero_w, zero_w], [one_w, one_w]])


def test_height2_unit_form_accepted():
    ring = standard_truncation_ring(2, 3, 3)
    u1 = teichmuller(ring.gen("u1"), 3, 2)
    D = new_display(3, 2, 1, ring,
                    [[witt_zero(3, 2, ring), witt_one(3, 2, ring)],
                     [witt_one(3, 2, ring), u1]])
    assert D.d == 1


def test_dimension_bounds():
    ring = IntegersMod(2)
    one_w, zero_w = witt_one(2, 2, ring), witt_zero(2, 2, ring)
    with pytest.raises(ValueError):
        new_display(2, 2, 2, ring, [[one_w, zero_w], [zero_w, one_w]])
    with pytest.raises(ValueError):
        new_display(2, 1, 0, ring, [[one_w]])


def test_structure_matrix_is_inverse():
    rng = random.Random(0)
    ring = IntegersMod(5)
    D = rand_display(5, ring, 3, 1, 3, rng)
    binv = D.structure_matrix()
    prod = mat_mul(D.rows, binv)
    ident = [[witt_one(5, 3, ring) if i == j else witt_zero(5, 3, ring)
              for j in range(3)] for i in range(3)]
    assert all(x == y for r1, r2 in zip(prod, ident) for x, y in zip(r1, r2))


def test_witt_matrix_inverse_rejects_singular():
    ring = IntegersMod(3)
    zero_w = witt_zero(3, 2, ring)
    with pytest.raises(NotAUnitError):
        witt_matrix_inverse(((zero_w, zero_w), (zero_w, zero_w)), 3, ring)


# ---------------------------------------------------------------------------
# Block actions


def columns_eq(u, v):
    length = min(min(x.n for x in u), min(x.n for x in v))
    return all(a.truncate(length) == b.truncate(length) for a, b in zip(u, v))


def test_block_formulas_antidiagonal():
    for p in (2, 3):
        ring = IntegersMod(p)
        D = antidiagonal_display(p, ring, 2, 3)
        one_w, zero_w = witt_one(p, 3, ring), witt_zero(p, 3, ring)
        assert columns_eq(apply_F(D, (one_w, zero_w)), (zero_w, one_w))
        assert columns_eq(apply_F(D, (zero_w, one_w)), (one_w.scale_int(p), zero_w))
        # the v-part consumes one component, so V^-1 answers at length 2
        assert columns_eq(apply_Vinv(D, (zero_w, one_w)), (one_w, zero_w))
        assert columns_eq(apply_F(D, (zero_w, zero_w)), (zero_w, zero_w))
        assert columns_eq(apply_Vinv(D, (zero_w, zero_w)), (zero_w, zero_w))


def test_vinv_rejects_bad_encoding():
    ring = IntegersMod(3)
    D = antidiagonal_display(3, ring, 2, 3)
    one_w = witt_one(3, 3, ring)
    with pytest.raises(AlgebraError):
        apply_Vinv(D, (one_w, one_w))


def test_apply_f_needs_precision():
    # over a base not of characteristic p, one Frobenius needs length >= 2
    ring = IntegersMod(9)
    D = antidiagonal_display(3, ring, 2, 1)
    one_w = witt_one(3, 1, ring)
    with pytest.raises(PrecisionError):
        apply_F(D, (one_w, one_w))


# ---------------------------------------------------------------------------
# Coordinate changes


def test_identity_change_is_neutral():
    ring = IntegersMod(3)
    rng = random.Random(1)
    D = rand_display(3, ring, 2, 1, 3, rng)
    ident = CoordinateChange.identity(3, 3, 2, 1, ring)
    moved, factor = change_of_coords(D, ident)
    assert moved == D.truncate(moved.n)
    assert factor == ring.one()


def test_change_requires_invertible_phi():
    ring = IntegersMod(3)
    zero_w = witt_zero(3, 2, ring)
    one_w = witt_one(3, 2, ring)
    with pytest.raises(AlgebraError):
        CoordinateChange(3, ring, 2, 1, ((zero_w,),), ((zero_w,),),
                         ((zero_w,),), ((one_w,),))


def test_conjugation_matches_matrix_form():
    rng = random.Random(2)
    ring = IntegersMod(3)
    for h in (2, 3):
        d = h - 1
        for _ in range(5):
            D = rand_display(3, ring, h, d, 3, rng)
            phi = rand_change(3, ring, h, d, 3, rng)
            moved, _ = change_of_coords(D, phi)
            x = tuple(rand_witt(3, ring, 3, rng) for _ in range(h))
            phi_mat = phi.matrix()
            lhs = apply_F(moved, mat_vec(phi_mat, x))
            rhs = mat_vec(phi_mat, apply_F(D, x))
            length = min(min(c.n for c in lhs), min(c.n for c in rhs))
            assert all(a.truncate(length) == b.truncate(length)
                       for a, b in zip(lhs, rhs))


def test_composition_and_factor():
    rng = random.Random(3)
    ring = IntegersMod(3)
    D = rand_display(3, ring, 2, 1, 3, rng)
    c1 = rand_change(3, ring, 2, 1, 3, rng)
    c2 = rand_change(3, ring, 2, 1, 3, rng)
    Da, fa = change_of_coords(D, c1)
    Db, fb = change_of_coords(Da, c2)
    Dc, fc = change_of_coords(D, c2.compose(c1))
    length = min(Db.n, Dc.n)
    assert Db.truncate(length) == Dc.truncate(length)
    assert fc == fb * fa


def test_change_inverse_roundtrip():
    rng = random.Random(4)
    ring = IntegersMod(5)
    D = rand_display(5, ring, 2, 1, 3, rng)
    phi = rand_change(5, ring, 2, 1, 3, rng)
    moved, _ = change_of_coords(D, phi)
    back, _ = change_of_coords(moved, phi.inverse())
    length = min(back.n, D.n)
    assert back.truncate(length) == D.truncate(length)


# ---------------------------------------------------------------------------
# Nilpotence


def test_nilpotence_of_standard_display():
    ring = standard_truncation_ring(2, 3, 4)
    D = lubin_tate_display(2, 3, 2, ring)
    result = is_nilpotent(D)
    assert result.status == NilpotenceResult.NILPOTENT
    # u1^(1+p) needs one twisted factor to vanish at truncation 4
    assert result.exponent == 1


def test_zero_corner_is_nilpotent_at_zero():
    ring = IntegersMod(3)
    D = antidiagonal_display(3, ring, 2, 2)
    assert is_nilpotent(D) == NilpotenceResult(NilpotenceResult.NILPOTENT, 0)


def test_unit_corner_not_nilpotent():
    ring = standard_truncation_ring(2, 2, 3)
    one_w, zero_w = witt_one(2, 2, ring), witt_zero(2, 2, ring)
    D = new_display(2, 2, 1, ring, [[zero_w, one_w], [one_w, one_w]])
    assert is_nilpotent(D).status == NilpotenceResult.NOT_NILPOTENT


def test_unknown_when_budget_exhausted():
    ring = standard_truncation_ring(2, 3, 4)
    D = lubin_tate_display(2, 3, 2, ring)
    assert is_nilpotent(D, max_iter=0).status == NilpotenceResult.UNKNOWN


# ---------------------------------------------------------------------------
# Duality


def test_dual_swaps_dimension():
    rng = random.Random(5)
    ring = IntegersMod(2)
    D = rand_display(2, ring, 3, 2, 3, rng)
    Dd = dual(D)
    assert (Dd.h, Dd.d) == (3, 1)


def test_dual_pairing_and_bidual():
    rng = random.Random(6)
    for p, h, d in ((2, 2, 1), (3, 3, 2)):
        ring = IntegersMod(p)
        D = rand_display(p, ring, h, d, 3, rng)
        Dd = dual(D)
        one_w = witt_one(p, 3, ring)
        zero_w = witt_zero(p, 3, ring)
        lam = tuple(
            one_w.verschiebung() if j < h - d else one_w for j in range(h)
        )
        x = tuple(one_w.verschiebung() if j < d else one_w for j in range(h))
        assert dual_pairing_holds(D, Dd, lam, x)
        assert dual(Dd) == D


def test_dual_permutation_shape():
    assert dual_basis_permutation(3, 1) == (1, 2, 0)
    assert dual_basis_permutation(3, 2) == (2, 0, 1)
    assert dual_basis_permutation(2, 1) == (1, 0)


# ---------------------------------------------------------------------------
# Height-2 reduction


def test_reduce_h2_already_reduced():
    ring = standard_truncation_ring(2, 3, 3)
    u1 = teichmuller(ring.gen("u1"), 3, 2)
    D = new_display(3, 2, 1, ring,
                    [[witt_zero(3, 2, ring), witt_one(3, 2, ring)],
                     [witt_one(3, 2, ring), u1]])
    reduced, phi = reduce_h2(D)
    assert reduced == D
    ident = CoordinateChange.identity(3, 2, 2, 1, ring)
    assert phi.matrix() == ident.matrix()


def test_reduce_h2_random_unit_corner():
    rng = random.Random(7)
    ring = IntegersMod(3)
    for _ in range(10):
        D = rand_display(3, ring, 2, 1, 3, rng)
        if not D.rows[0][1].components[0].is_unit():
            continue
        reduced, phi = reduce_h2(D)
        assert reduced.rows[0][0].is_zero()
        assert reduced.rows[0][1] == witt_one(3, reduced.n, ring)
        again, _ = change_of_coords(D, phi)
        assert again == reduced


def test_reduce_h2_fails_without_unit():
    ring = IntegersMod(3)
    one_w, zero_w = witt_one(3, 2, ring), witt_zero(3, 2, ring)
    D = new_display(3, 2, 1, ring, [[one_w, zero_w], [zero_w, one_w]])
    with pytest.raises(AlgebraError):
        reduce_h2(D)


def test_reduce_h2_wrong_shape():
    rng = random.Random(8)
    D = rand_display(2, IntegersMod(2), 3, 2, 2, rng)
    with pytest.raises(ValueError):
        reduce_h2(D)


# ---------------------------------------------------------------------------
# Example corpus


def test_example_names():
    D = example_display("lubin-tate-h4")
    assert (D.h, D.d) == (4, 3)
    fix = example_display("zeta-action-h2")
    assert set(fix) >= {"display", "pullback", "phi", "zeta"}
    with pytest.raises(ValueError):
        example_display("lubin-tate-h9")


def test_zeta_fixture_roundtrip_small():
    fix = zeta_action_fixture(2, 3)
    moved, factor = change_of_coords(fix["pullback"], fix["phi"])
    assert moved == fix["display"].truncate(moved.n)
    assert factor == convert(fix["zeta"], fix["ring"])


def test_display_substitute_is_ring_map():
    ring = standard_truncation_ring(3, 2, 3)
    D = lubin_tate_display(3, 2, 2, ring)
    subs = {"u1": ring.gen("u1") + ring.gen("u2"), "u2": ring.gen("u2")}
    moved = display_substitute(D, subs, ring)
    assert w0_matrix(moved.rows)[2][2] == ring.gen("u1") + ring.gen("u2")
