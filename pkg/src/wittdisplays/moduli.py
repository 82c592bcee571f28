"""Symbolic presentation of displays-with-isomorphisms at a finite Witt
truncation: the representing ring of matrix forms (beta generators, with
the w_0 determinant inverted), the ring of coordinate changes on top of it
(phi generators, with the forced zeros in the upper-right w_0 block), and
the structure maps of the resulting groupoid presentation.

Structure maps are computed on ghost coordinates, where the
change-of-coordinates formula becomes plain matrix algebra: the k-th ghost
of the target matrix form is

    w_k(B') = w_k(T) w_k(B) w_k(phi)^{-1},

whose only denominators are the ghosts of the Witt determinant of phi.
Components are then recovered through the usual exact divisions by powers
of p.  The composition map needs no inversion at all (a product of two
generic coordinate changes), the counit substitutes the identity change,
and the inverse map applies the same ghost machinery to phi^{-1}.

Everything lives in polynomial rings localized at an explicit list of
denominators; elements are stored as (numerator, exponent-vector) pairs in
lowest terms, so equality stays structural.
"""

from __future__ import annotations

from dataclasses import dataclass

from .display import CoordinateChange, DisplayMatrix
from .errors import (
    AlgebraError,
    NotAUnitError,
    ResourceLimitError,
    RingMismatchError,
)
from .linalg import mat, mat_adjugate, mat_det, mat_mul, mat_scale
from .rings import (
    IntegersMod,
    PolynomialRing,
    Ring,
    RingElement,
    ZZ,
    poly_exact_divide,
    substitute,
)
from .witt import WittVector

_DEFAULT_MONOMIAL_CAP = 200_000


class LocalizedRing(Ring):
    """A polynomial ring with finitely many inverted denominators.

    Payload: (numerator payload, denominator exponent vector), kept in
    lowest terms by repeated exact division, which makes equality
    structural.  The base polynomial ring must be over Z or a field so
    exact division is decidable.
    """

    def __init__(self, poly: PolynomialRing, denominators):
        dens = tuple(tuple(d) for d in denominators)
        for d in dens:
            if not d:
                raise ValueError("denominators must be nonzero")
        self.poly = poly
        self.dens = dens

    def descriptor(self):
        return ("localized", self.poly.descriptor(), self.dens)

    def _zero_exps(self):
        return (0,) * len(self.dens)

    def normalize(self, num, exps):
        if not num:
            return ((), self._zero_exps())
        exps = list(exps)
        for i, d in enumerate(self.dens):
            while exps[i] > 0:
                q = poly_exact_divide(self.poly, num, d)
                if q is None:
                    break
                num = q
                exps[i] -= 1
        return (num, tuple(exps))

    def from_poly(self, num_payload):
        return self.element((num_payload, self._zero_exps()))

    def gen(self, name: str) -> RingElement:
        return self.from_poly(self.poly.gen(name).payload)

    def _scale_up(self, num, delta):
        for d, k in zip(self.dens, delta):
            for _ in range(k):
                num = self.poly.mul(num, d)
        return num

    def zero_payload(self):
        return ((), self._zero_exps())

    def one_payload(self):
        return (self.poly.one_payload(), self._zero_exps())

    def is_zero(self, a):
        return not a[0]

    def add(self, a, b):
        (na, ea), (nb, eb) = a, b
        common = tuple(max(x, y) for x, y in zip(ea, eb))
        na = self._scale_up(na, tuple(c - x for c, x in zip(common, ea)))
        nb = self._scale_up(nb, tuple(c - x for c, x in zip(common, eb)))
        return self.normalize(self.poly.add(na, nb), common)

    def neg(self, a):
        return (self.poly.neg(a[0]), a[1])

    def mul(self, a, b):
        (na, ea), (nb, eb) = a, b
        return self.normalize(
            self.poly.mul(na, nb), tuple(x + y for x, y in zip(ea, eb))
        )

    def coerce_int(self, n):
        return self.normalize(self.poly.coerce_int(n), self._zero_exps())

    def characteristic(self):
        return self.poly.characteristic()

    def divexact_int(self, a, n):
        return (self.poly.divexact_int(a[0], n), a[1])

    def invert(self, a, search_bound: int = 8):
        num, exps = a
        if not num:
            raise NotAUnitError("0 is not a unit")
        # x = num / dens^exps is a unit iff num divides some product of
        # denominator powers; search multi-exponents by total degree.
        k = len(self.dens)
        from itertools import product as iproduct

        candidates = sorted(
            iproduct(range(search_bound + 1), repeat=k), key=lambda g: (sum(g), g)
        )
        for g in candidates:
            dg = self._scale_up(self.poly.one_payload(), g)
            q = poly_exact_divide(self.poly, dg, num)
            if q is None:
                continue
            inv_num = self._scale_up(
                q, tuple(max(0, e - gi) for e, gi in zip(exps, g))
            )
            inv_exps = tuple(max(0, gi - e) for e, gi in zip(exps, g))
            return self.normalize(inv_num, inv_exps)
        raise NotAUnitError(
            f"{self.render(a)} is not a unit (or exceeds the search bound)"
        )

    def is_unit(self, a):
        try:
            self.invert(a)
            return True
        except NotAUnitError:
            return False

    def is_nilpotent_payload(self, a):
        return self.is_zero(a)  # the localized polynomial ring is a domain

    def render(self, a):
        num, exps = a
        num_str = self.poly.render(num)
        if not any(exps):
            return num_str
        den_parts = []
        for d, k in zip(self.dens, exps):
            if k == 0:
                continue
            ds = self.poly.render(d)
            den_parts.append(f"({ds})^{k}" if k > 1 else f"({ds})")
        return f"({num_str}) / " + "*".join(den_parts)

    def __repr__(self):
        return f"{self.poly!r} localized at {len(self.dens)} elements"


def substitute_localized(elt: RingElement, assignment: dict, target: Ring) -> RingElement:
    """Evaluate a localized element under a variable assignment; the
    denominators must specialize to units of the target."""
    ring = elt.ring
    if not isinstance(ring, LocalizedRing):
        raise RingMismatchError("substitute_localized needs a localized element")
    num, exps = elt.payload
    value = substitute(ring.poly.element(num), assignment, target)
    for d, k in zip(ring.dens, exps):
        if k == 0:
            continue
        dval = substitute(ring.poly.element(d), assignment, target)
        value = value * dval.invert() ** k
    return value


# ---------------------------------------------------------------------------
# Generator bookkeeping


def beta_name(n: int, i: int, j: int) -> str:
    return f"beta{n}_{i}{j}"


def phi_name(n: int, i: int, j: int) -> str:
    return f"phi{n}_{i}{j}"


def _beta_names(N, h):
    return [beta_name(n, i, j) for n in range(N)
            for i in range(1, h + 1) for j in range(1, h + 1)]


def _phi_names(N, h):
    # The (n=0, i<h, j=h) slots are identically zero: the upper-right block
    # of a coordinate change lies in the ideal of definition.
    return [
        phi_name(n, i, j)
        for n in range(N)
        for i in range(1, h + 1)
        for j in range(1, h + 1)
        if not (n == 0 and i < h and j == h)
    ]


def _ghost_entry(ring, var_of_level, p, k):
    """sum_m p^m x_m^(p^(k-m)) where var_of_level(m) is the level-m
    component (None meaning a zero component)."""
    acc = ring.zero()
    for m in range(k + 1):
        var = var_of_level(m)
        if var is None:
            continue
        acc = acc + ring(p**m) * var ** (p ** (k - m))
    return acc


@dataclass(frozen=True)
class HopfPresentation:
    """Generators and structure maps of the groupoid presentation at a
    fixed truncation length N.

    eta_R carries assignments for the beta generators of level < N-1 (one
    Frobenius twist is consumed by the change-of-coordinates formula);
    delta for every phi generator (no precision cost); the counit is the
    substitution phi -> identity; inverse assignments (phi -> phi^{-1})
    live in the extension ring whose extra denominators are the ghosts of
    the Witt determinant of phi.
    """

    p: int
    N: int
    h: int
    ring_A: LocalizedRing
    ring_Gamma: LocalizedRing
    ring_Gamma_ext: LocalizedRing
    beta_names: tuple
    phi_names: tuple
    eta_R: dict
    delta_ring: PolynomialRing
    delta: dict
    epsilon: dict
    antipode: dict | None
    symbolic: bool
    relations: tuple

    def generator_count_beta(self) -> int:
        return len(self.beta_names)

    def generator_count_phi(self) -> int:
        return len(self.phi_names)


def _phi_ghost_matrix(ring, p, h, k, name_of):
    """w_k of the generic coordinate-change matrix (h x h, over `ring`)."""
    rows = []
    for i in range(1, h + 1):
        row = []
        for j in range(1, h + 1):
            if i < h and j == h:
                var_of = lambda m, i=i, j=j: (
                    None if m == 0 else ring.gen(name_of(m, i, j))
                )
            else:
                var_of = lambda m, i=i, j=j: ring.gen(name_of(m, i, j))
            row.append(_ghost_entry(ring, var_of, p, k))
        rows.append(tuple(row))
    return mat(rows)


def _beta_ghost_matrix(ring, p, h, k):
    rows = []
    for i in range(1, h + 1):
        row = tuple(
            _ghost_entry(
                ring, lambda m, i=i, j=j: ring.gen(beta_name(m, i, j)), p, k
            )
            for j in range(1, h + 1)
        )
        rows.append(row)
    return mat(rows)


def _twisted_ghost_matrix(ring, p, h, k, name_of):
    """w_k of [[f.a, b],[p f.c, f.e]]: the a/c/e blocks contribute their
    (k+1)-st ghosts, the b block (components shifted up one level) its
    k-th.  Needs generator levels up to k+1."""
    d = h - 1
    rows = []
    for i in range(1, h + 1):
        row = []
        for j in range(1, h + 1):
            if i <= d and j == h:
                var_of = lambda m, i=i: ring.gen(name_of(m + 1, i, h))
                row.append(_ghost_entry(ring, var_of, p, k))
            else:
                var_of = lambda m, i=i, j=j: ring.gen(name_of(m, i, j))
                entry = _ghost_entry(ring, var_of, p, k + 1)
                if i > d and j <= d:
                    entry = ring(p) * entry
                row.append(entry)
        rows.append(tuple(row))
    return mat(rows)


def _components_from_ghosts(ring, p, ghosts):
    """Solve w_n(x) = ghosts[n] for the components x_n by exact division."""
    comps = []
    pows = []
    for n, goal in enumerate(ghosts):
        acc = goal
        for i in range(n):
            pows[i] = pows[i] ** p
            acc = acc - ring(p**i) * pows[i]
        payload = ring.divexact_int(acc.payload, p**n)
        elt = RingElement(ring, payload)
        comps.append(elt)
        pows.append(elt)
    return comps


def build_presentation(
    p: int,
    N: int,
    h: int,
    symbolic: str | bool = "auto",
    monomial_cap: int = _DEFAULT_MONOMIAL_CAP,
) -> HopfPresentation:
    """Construct the truncated presentation.

    ``symbolic`` controls whether the level >= 1 right-unit and the
    inverse assignments are expanded symbolically ("auto": only at the
    guaranteed-cheap size h = 2, N <= 2; True forces expansion subject to
    the monomial cap; False skips them).  Level-0 right-unit assignments
    and the composition/counit maps are always materialized.
    """
    if h < 2 or N < 1:
        raise ValueError("need h >= 2 and N >= 1")
    if N < 2:
        raise ValueError("structure maps need N >= 2 (one Frobenius twist)")
    if symbolic == "auto":
        symbolic = h == 2 and N <= 2
    bnames = _beta_names(N, h)
    pnames = _phi_names(N, h)

    a_poly = PolynomialRing(ZZ, bnames)
    beta0 = mat(
        tuple(a_poly.gen(beta_name(0, i, j)) for j in range(1, h + 1))
        for i in range(1, h + 1)
    )
    det_beta0_A = mat_det(beta0).payload
    ring_A = LocalizedRing(a_poly, (det_beta0_A,))

    g_poly = PolynomialRing(ZZ, bnames + pnames)
    det_beta0_G = mat_det(
        mat(
            tuple(g_poly.gen(beta_name(0, i, j)) for j in range(1, h + 1))
            for i in range(1, h + 1)
        )
    ).payload

    def phi_var(n, i, j):
        return phi_name(n, i, j)

    ghost_dets = []
    for k in range(N):
        gm = _phi_ghost_matrix(g_poly, p, h, k, phi_var)
        ghost_dets.append(mat_det(gm).payload)
    dens_gamma = (det_beta0_G, ghost_dets[0])
    dens_ext = (det_beta0_G,) + tuple(dict.fromkeys(ghost_dets))
    ring_Gamma = LocalizedRing(g_poly, dens_gamma)
    ring_ext = LocalizedRing(g_poly, dens_ext)

    eta_R = _eta_r_assignments(ring_ext, p, N, h, monomial_cap,
                               levels=N - 1 if symbolic else 1)
    delta_ring, delta = _delta_assignments(p, N, h, monomial_cap)
    epsilon = {
        phi_name(n, i, j): (1 if (n == 0 and i == j) else 0)
        for n in range(N)
        for i in range(1, h + 1)
        for j in range(1, h + 1)
        if not (n == 0 and i < h and j == h)
    }
    antipode = _antipode_assignments(ring_ext, p, N, h, monomial_cap) if symbolic else None

    relations = (
        f"phi0_i{h} = 0 for 1 <= i <= {h - 1} (upper-right w_0 block vanishes)",
        "det(beta_0) is inverted",
        "det(phi_0) is inverted",
    )
    return HopfPresentation(
        p=p, N=N, h=h,
        ring_A=ring_A, ring_Gamma=ring_Gamma, ring_Gamma_ext=ring_ext,
        beta_names=tuple(bnames), phi_names=tuple(pnames),
        eta_R=eta_R, delta_ring=delta_ring, delta=delta,
        epsilon=epsilon, antipode=antipode,
        symbolic=bool(symbolic), relations=relations,
    )


def _cap_check(elt: RingElement, cap: int):
    payload = elt.payload
    size = len(payload[0]) if isinstance(elt.ring, LocalizedRing) else len(payload)
    if size > cap:
        raise ResourceLimitError(
            f"symbolic expansion exceeded the monomial cap ({size} > {cap})"
        )


def _eta_r_assignments(ring_ext, p, N, h, cap, levels):
    """Ghost-side computation of the right unit on beta generators."""
    out = {}
    ghost_mats = []
    for k in range(levels):
        wb = tuple(
            tuple(ring_ext.from_poly(x.payload) for x in row)
            for row in _beta_ghost_matrix(ring_ext.poly, p, h, k)
        )
        wt = tuple(
            tuple(ring_ext.from_poly(x.payload) for x in row)
            for row in _twisted_ghost_matrix(ring_ext.poly, p, h, k, phi_name)
        )
        wphi = tuple(
            tuple(ring_ext.from_poly(x.payload) for x in row)
            for row in _phi_ghost_matrix(ring_ext.poly, p, h, k, phi_name)
        )
        det = mat_det(wphi)
        det_inv = RingElement(ring_ext, ring_ext.invert(det.payload))
        wphi_inv = mat_scale(det_inv, mat_adjugate(wphi, ring_ext.one()))
        gk = mat_mul(mat_mul(wt, wb), wphi_inv)
        for row in gk:
            for x in row:
                _cap_check(x, cap)
        ghost_mats.append(gk)
    for i in range(h):
        for j in range(h):
            ghosts = [ghost_mats[k][i][j] for k in range(levels)]
            comps = _components_from_ghosts(ring_ext, p, ghosts)
            for n, c in enumerate(comps):
                _cap_check(c, cap)
                out[beta_name(n, i + 1, j + 1)] = c
    return out


def _generic_change_matrix(ring, p, N, h, prefix_name):
    """The assembled generic coordinate-change matrix as Witt vectors."""
    zero = ring.zero()
    rows = []
    for i in range(1, h + 1):
        row = []
        for j in range(1, h + 1):
            comps = []
            for n in range(N):
                if n == 0 and i < h and j == h:
                    comps.append(zero)
                else:
                    comps.append(ring.gen(prefix_name(n, i, j)))
            row.append(WittVector(p, ring, comps))
        rows.append(tuple(row))
    return mat(rows)


def _delta_assignments(p, N, h, cap):
    """Composition: components of (second change) . (first change)."""
    names_a = [f"A{nm}" for nm in _phi_names(N, h)]
    names_b = [f"B{nm}" for nm in _phi_names(N, h)]
    ring = PolynomialRing(ZZ, names_a + names_b)
    first = _generic_change_matrix(ring, p, N, h, lambda n, i, j: f"A{phi_name(n, i, j)}")
    second = _generic_change_matrix(ring, p, N, h, lambda n, i, j: f"B{phi_name(n, i, j)}")
    product = mat_mul(second, first)
    out = {}
    for i in range(1, h + 1):
        for j in range(1, h + 1):
            entry = product[i - 1][j - 1]
            if i < h and j == h and not entry.components[0].is_zero():
                raise RuntimeError(
                    "internal error: composed change left the expected block shape"
                )
            for n in range(N):
                if n == 0 and i < h and j == h:
                    continue
                elt = entry.components[n]
                _cap_check(elt, cap)
                out[phi_name(n, i, j)] = elt
    return ring, out


def _antipode_assignments(ring_ext, p, N, h, cap):
    """phi -> phi^{-1} (components of the inverse matrix), plus the right
    unit on the beta generators at its available levels."""
    out = {}
    inv_ghosts = []
    for k in range(N):
        wphi = tuple(
            tuple(ring_ext.from_poly(x.payload) for x in row)
            for row in _phi_ghost_matrix(ring_ext.poly, p, h, k, phi_name)
        )
        det = mat_det(wphi)
        det_inv = RingElement(ring_ext, ring_ext.invert(det.payload))
        inv_ghosts.append(mat_scale(det_inv, mat_adjugate(wphi, ring_ext.one())))
    for i in range(h):
        for j in range(h):
            ghosts = [inv_ghosts[k][i][j] for k in range(N)]
            comps = _components_from_ghosts(ring_ext, p, ghosts)
            if i + 1 < h and j + 1 == h and not comps[0].is_zero():
                raise RuntimeError("internal error: inverse change left the block shape")
            for n, c in enumerate(comps):
                if n == 0 and i + 1 < h and j + 1 == h:
                    continue
                _cap_check(c, cap)
                out[phi_name(n, i + 1, j + 1)] = c
    return out


# ---------------------------------------------------------------------------
# Structure-map application and axiom checks


def epsilon_apply(P: HopfPresentation, elt: RingElement) -> RingElement:
    """The counit: substitute the identity coordinate change."""
    assignment = {}
    for name in P.ring_Gamma_ext.poly.names:
        if name.startswith("beta"):
            assignment[name] = P.ring_A.gen(name)
        else:
            assignment[name] = P.ring_A(P.epsilon[name])
    return substitute_localized(elt, assignment, P.ring_A)


def check_right_unit_counit(P: HopfPresentation) -> bool:
    """epsilon . eta_R = identity on the available beta generators."""
    for name, img in P.eta_R.items():
        if epsilon_apply(P, img) != P.ring_A.gen(name):
            return False
    return True


def check_delta_counit(P: HopfPresentation) -> bool:
    """Substituting the identity into either slot of the composition map
    returns the other slot's generator."""
    target = PolynomialRing(ZZ, list(P.phi_names))
    for name in P.phi_names:
        image = P.delta[name]
        left = {}
        right = {}
        for vn in P.delta_ring.names:
            base = vn[1:]
            if vn.startswith("A"):
                left[vn] = target(P.epsilon[base])
                right[vn] = target.gen(base)
            else:
                left[vn] = target.gen(base)
                right[vn] = target(P.epsilon[base])
        if substitute(image, left, target) != target.gen(name):
            return False
        if substitute(image, right, target) != target.gen(name):
            return False
    return True


def check_coassociativity(P: HopfPresentation) -> bool:
    """Expanding the inner or the outer slot of the composition map gives
    the same three-fold composite."""
    names3 = (
        [f"A{nm}" for nm in P.phi_names]
        + [f"B{nm}" for nm in P.phi_names]
        + [f"C{nm}" for nm in P.phi_names]
    )
    ring3 = PolynomialRing(ZZ, names3)

    def relabel(image, first_prefix, second_prefix):
        assignment = {}
        for vn in P.delta_ring.names:
            base = vn[1:]
            prefix = first_prefix if vn.startswith("A") else second_prefix
            assignment[vn] = ring3.gen(f"{prefix}{base}")
        return substitute(image, assignment, ring3)

    for name in P.phi_names:
        image = P.delta[name]
        # expand the inner (first-applied) slot
        inner = {}
        for vn in P.delta_ring.names:
            base = vn[1:]
            if vn.startswith("A"):
                inner[vn] = relabel(P.delta[base], "A", "B")
            else:
                inner[vn] = ring3.gen(f"C{base}")
        lhs = substitute(image, inner, ring3)
        # expand the outer (second-applied) slot
        outer = {}
        for vn in P.delta_ring.names:
            base = vn[1:]
            if vn.startswith("A"):
                outer[vn] = ring3.gen(f"A{base}")
            else:
                outer[vn] = relabel(P.delta[base], "B", "C")
        rhs = substitute(image, outer, ring3)
        if lhs != rhs:
            return False
    return True


# ---------------------------------------------------------------------------
# The invariant ideal certificate


@dataclass(frozen=True)
class InvariantIdealCertificate:
    """Explicit membership of eta_R(beta0_hh) in the ideal (p, beta0_hh).

    The identity eta_R(beta0_hh) = unit_factor * beta0_hh + p * p_part
    + beta0_hh * hh_part holds exactly; the chosen unit factor is the w_0
    of phi's lower-right block (the canonical 1-form multiplier).  The
    mod-p cofactor (eta_R(beta0_hh)/beta0_hh in Gamma/p) is certified a
    unit by its explicit inverse.
    """

    unit_factor: RingElement
    p_part: RingElement
    hh_part: RingElement
    mod_p_cofactor: RingElement
    mod_p_cofactor_inverse: RingElement


def invariant_ideal_certificate(P: HopfPresentation) -> InvariantIdealCertificate:
    ring = P.ring_Gamma_ext
    g_poly = ring.poly
    p = P.p
    target_name = beta_name(0, P.h, P.h)
    image = P.eta_R[target_name]
    unit = ring.gen(phi_name(0, P.h, P.h))
    beta_hh = ring.gen(target_name)
    residual = image - unit * beta_hh

    num, exps = residual.payload
    idx = g_poly.names.index(target_name)
    p_terms = {}
    hh_terms = {}
    for mono, coeff in num:
        if mono[idx] > 0:
            reduced = tuple(e - 1 if t == idx else e for t, e in enumerate(mono))
            hh_terms[reduced] = g_poly.base.add(
                hh_terms.get(reduced, 0), coeff
            )
        else:
            if coeff % p != 0:
                raise AlgebraError(
                    "certificate search failed: a residual term lies outside "
                    "(p, beta0_hh)"
                )
            p_terms[mono] = g_poly.base.add(p_terms.get(mono, 0), coeff // p)
    p_part = ring.element(ring.normalize(g_poly.canonical(p_terms), exps))
    hh_part = ring.element(ring.normalize(g_poly.canonical(hh_terms), exps))

    recomposed = unit * beta_hh + ring(p) * p_part + beta_hh * hh_part
    if recomposed != image:
        raise AlgebraError("certificate decomposition failed to recompose")

    # Mod-p cofactor and its explicit inverse.
    fp = IntegersMod(p)
    poly_p = PolynomialRing(fp, g_poly.names)
    dens_p = []
    for d in ring.dens:
        dp = poly_p.canonical({e: c % p for e, c in d})
        dens_p.append(dp)
    ring_p = LocalizedRing(poly_p, tuple(dens_p))
    num_p = poly_p.canonical({e: c % p for e, c in image.payload[0]})
    cof_num = poly_exact_divide(poly_p, num_p, poly_p.gen(target_name).payload)
    if cof_num is None:
        raise AlgebraError("certificate search failed: no mod-p cofactor")
    cofactor = ring_p.element(ring_p.normalize(cof_num, image.payload[1]))
    inverse = cofactor.invert()
    return InvariantIdealCertificate(
        unit_factor=unit,
        p_part=p_part,
        hh_part=hh_part,
        mod_p_cofactor=cofactor,
        mod_p_cofactor_inverse=inverse,
    )


# ---------------------------------------------------------------------------
# Specialization


def specialize_display(P: HopfPresentation, values: dict, ring, length=None) -> DisplayMatrix:
    """A ring map out of the representing ring, returned as a display.

    `values` assigns an element of `ring` to every beta generator name;
    validity of the result is exactly the unit condition on the
    specialized w_0 determinant (DisplayMatrix validation enforces it).
    """
    length = P.N if length is None else length
    rows = []
    for i in range(1, P.h + 1):
        row = []
        for j in range(1, P.h + 1):
            comps = [values[beta_name(n, i, j)] for n in range(length)]
            row.append(WittVector(P.p, ring, comps))
        rows.append(tuple(row))
    return DisplayMatrix(P.p, P.h, P.h - 1, ring, rows)


def specialize_change(P: HopfPresentation, values: dict, ring) -> CoordinateChange:
    """A coordinate change from phi-generator values (missing upper-right
    level-0 slots are the forced zeros)."""
    h, N, p = P.h, P.N, P.p
    d = h - 1

    def witt_entry(i, j):
        comps = []
        for n in range(N):
            if n == 0 and i < h and j == h:
                continue
            comps.append(values[phi_name(n, i, j)])
        return comps

    a = tuple(
        tuple(WittVector(p, ring, witt_entry(i, j)) for j in range(1, d + 1))
        for i in range(1, d + 1)
    )
    b = tuple(
        (WittVector(p, ring, witt_entry(i, h)),) for i in range(1, d + 1)
    )
    c = tuple(
        tuple(WittVector(p, ring, witt_entry(h, j)) for j in range(1, d + 1))
        for _ in (0,)
    )
    e = ((WittVector(p, ring, witt_entry(h, h)),),)
    return CoordinateChange(p, ring, h, d, a, b, c, e)


def delta_substitution(P: HopfPresentation, first_values: dict, second_values: dict):
    """Assignment dictionary for evaluating composition-map polynomials:
    the A-copy receives the first-applied change, the B-copy the second."""
    out = {}
    for vn in P.delta_ring.names:
        base = vn[1:]
        out[vn] = first_values[base] if vn.startswith("A") else second_values[base]
    return out
