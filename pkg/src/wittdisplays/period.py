"""Algebraic approximation of the period map.

Everything happens over Q[u_1..u_{h-1}] / J^M with J = (u_1, ..., u_{h-1}).
The dual Frobenius of the standard height-h display has, in the dual
basis, the matrix Psi with p on the superdiagonal of the first h-2 rows,
a 1 in position (h-1, h), and last row (p, p u_{h-1}, ..., p u_2, u_1);
PsiBar is its image under u_i -> 0.  A horizontal basis is a matrix A
congruent to the identity mod J with

    Psi . A^sigma = A . PsiBar,        sigma: u_i -> u_i^p.

Iterating A <- Psi A^sigma PsiBar^{-1} from the identity converges
J-adically (each round multiplies the J-order of A - previous by p), and
the fixed point is certified through the functional equation, which is
checked exactly at the working truncation.  The period map is the last
row of A read as homogeneous coordinates; mod J^p it is
(u_{h-1}, ..., u_1, 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .deformation import ProjectivePoint
from .errors import AlgebraError
from .linalg import mat, mat_det, mat_identity, mat_mul
from .rings import (
    PolynomialRing,
    QQ,
    QuotientRing,
    RingElement,
    convert,
    substitute,
)


def period_ring(h: int, order: int) -> QuotientRing:
    """Q[u_1..u_{h-1}] truncated at J^order, J = (all variables)."""
    if h < 2:
        raise ValueError("height must be >= 2")
    if order < 1:
        raise ValueError("truncation order must be >= 1")
    names = [f"u{i}" for i in range(1, h)]
    poly = PolynomialRing(QQ, names)
    return QuotientRing(poly, poly.gens(), order)


def psi_matrix(h: int, p: int, order: int, reduce_u_to_zero: bool = False):
    """The dual-Frobenius matrix (or its u -> 0 reduction) over the
    truncated ring."""
    ring = period_ring(h, order)
    zero, one = ring.zero(), ring.one()
    p_elt = ring(p)
    rows = [[zero for _ in range(h)] for _ in range(h)]
    for i in range(h - 2):
        rows[i][i + 1] = p_elt
    rows[h - 2][h - 1] = one
    rows[h - 1][0] = p_elt
    for j in range(1, h - 1):
        u = ring.gen(f"u{h - j}")
        rows[h - 1][j] = p_elt * u
    rows[h - 1][h - 1] = ring.gen("u1")
    if reduce_u_to_zero:
        rows = [
            [_drop_variables(x) for x in row]
            for row in rows
        ]
    return mat(rows)


def _drop_variables(x: RingElement):
    ring = x.ring
    zero_exps = (0,) * ring.poly.nvars
    terms = {exps: c for exps, c in x.payload if exps == zero_exps}
    return ring.element(ring.reduce(ring.poly.canonical(terms)))


def _sigma(x: RingElement, p: int):
    ring = x.ring
    assignment = {name: ring.gen(name) ** p for name in ring.poly.names}
    return substitute(x, assignment, ring)


def _mat_sigma(M, p):
    return tuple(tuple(_sigma(x, p) for x in row) for row in M)


def _mat_eq(A, B):
    return all(x == y for ra, rb in zip(A, B) for x, y in zip(ra, rb))


def _j_order_bound(p: int, order: int) -> int:
    """Stabilization bound: ceil(log_p(order)) + 2 iterations suffice."""
    bound = 2
    power = 1
    while power < order:
        power *= p
        bound += 1
    return bound


@dataclass(frozen=True)
class PeriodApprox:
    """A certified horizontal-basis matrix at a finite truncation."""

    h: int
    p: int
    order: int
    ring: QuotientRing
    matrix: tuple
    iterations: int
    functional_equation_exact: bool


def horizontal_sections(h: int, p: int, order: int) -> PeriodApprox:
    """Fixed-point iteration for the horizontal basis matrix A.

    Certifies Psi A^sigma = A PsiBar exactly mod J^order, A = I mod J,
    and invertibility of A; raises if the iteration fails to stabilize
    within the provable bound (which would indicate a bug).
    """
    ring = period_ring(h, order)
    psi = psi_matrix(h, p, order)
    psi_bar = psi_matrix(h, p, order, reduce_u_to_zero=True)
    psi_bar_inv = _invert_constant_matrix(psi_bar, ring)
    A = mat_identity(h, ring.one(), ring.zero())
    bound = _j_order_bound(p, order)
    iterations = 0
    for _ in range(bound):
        nxt = mat_mul(mat_mul(psi, _mat_sigma(A, p)), psi_bar_inv)
        iterations += 1
        if _mat_eq(nxt, A):
            break
        A = nxt
    else:
        raise RuntimeError(
            "horizontal-section iteration did not stabilize within the bound"
        )
    if not _mat_eq(mat_mul(psi, _mat_sigma(A, p)), mat_mul(A, psi_bar)):
        raise RuntimeError("functional equation failed after stabilization")
    _assert_congruent_identity_mod_j(A, ring)
    det = mat_det(A)
    const = det.ring.poly.constant_term(det.payload)
    if const == 0:
        raise RuntimeError("horizontal basis matrix is not invertible")
    return PeriodApprox(
        h=h,
        p=p,
        order=order,
        ring=ring,
        matrix=A,
        iterations=iterations,
        functional_equation_exact=True,
    )


def _invert_constant_matrix(M, ring):
    """Invert a matrix of constants over the truncation (denominators in Q)."""
    consts = [
        [Fraction(ring.poly.constant_term(x.payload)) for x in row] for row in M
    ]
    n = len(consts)
    aug = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(consts)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise AlgebraError("constant matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return mat(
        tuple(ring(Fraction(aug[i][n + j])) for j in range(n)) for i in range(n)
    )


def _assert_congruent_identity_mod_j(A, ring):
    for i, row in enumerate(A):
        for j, x in enumerate(row):
            const = ring.poly.constant_term(x.payload)
            expected = Fraction(1) if i == j else Fraction(0)
            if Fraction(const) != expected:
                raise RuntimeError("matrix is not congruent to the identity mod J")


def reduce_to_order(pa: PeriodApprox, order: int) -> PeriodApprox:
    """The canonical image of an approximation at a lower truncation."""
    if order > pa.order:
        raise ValueError("cannot refine to a higher order; recompute instead")
    target = period_ring(pa.h, order)
    matrix = tuple(
        tuple(convert(x, target) for x in row) for row in pa.matrix
    )
    return PeriodApprox(pa.h, pa.p, order, target, matrix, pa.iterations, True)


def period_map(pa: PeriodApprox) -> ProjectivePoint:
    """The last row of A as homogeneous coordinates."""
    return ProjectivePoint(pa.ring, pa.matrix[pa.h - 1])


def entries_p_integral_mod_jp(pa: PeriodApprox) -> bool:
    """Whether every coefficient of A mod J^p has nonnegative p-valuation."""
    cutoff = min(pa.p, pa.order)
    for row in pa.matrix:
        for x in row:
            for exps, coeff in x.payload:
                if sum(exps) >= cutoff:
                    continue
                if Fraction(coeff).denominator % pa.p == 0:
                    return False
    return True


def expected_low_order_matrix(h: int, p: int, order: int):
    """The unipotent matrix with last row (u_{h-1}, ..., u_1, 1): the value
    of A at any truncation order <= p."""
    ring = period_ring(h, order)
    rows = [
        [ring.one() if i == j else ring.zero() for j in range(h)]
        for i in range(h)
    ]
    for j in range(h - 1):
        rows[h - 1][j] = ring.gen(f"u{h - 1 - j}")
    return mat(rows)


def chart_comparison_point(pa: PeriodApprox) -> ProjectivePoint:
    """The period map rewritten for comparison with the display-side chart
    projection: reverse the coordinate order and relabel u_i <-> u_{h-i}.

    With this reindexing the point agrees with the projection
    (1 : u_{h-1} : ... : u_1) of the standard display mod J^p; the
    relabeling convention is recorded here rather than claimed canonical.
    """
    ring = pa.ring
    h = pa.h
    relabel = {f"u{i}": ring.gen(f"u{h - i}") for i in range(1, h)}
    coords = [substitute(c, relabel, ring) for c in pa.matrix[h - 1]]
    return ProjectivePoint(ring, tuple(reversed(coords)))
