"""Deformation-theoretic tools: the projection to projective space, the
Jacobian etale criterion on coordinate charts, and a brute-force oracle
that enumerates isomorphism classes of square-zero lifts of a display over
a finite field.

The oracle works over k[eps]/(eps^2).  Lifts of a matrix form B are B + s
with s a matrix of Witt vectors all of whose components lie in eps*k; two
lifts are isomorphic exactly when they differ by

    X(a,b,c,e) = [[0, b], [0, 0]] B  -  B [[a, v.b], [c, e]]

for parameter blocks over W(eps k) (the Frobenius kills that ideal, which
collapses the change-of-coordinates formula to this expression).  On the
square-zero ideal Witt addition is componentwise and X is linear over the
prime field, so the orbit of a lift is a coset of the F_p-span of the
images of the parameter basis; the oracle verifies those two facts
explicitly before using them, materializes the span, quotients the full
lift space, and cross-checks the closed-form description of the subspace
(final column congruent to a multiple of the final column of B modulo the
ideal of definition) by comparing row-reduced bases.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .display import (
    CoordinateChange,
    DisplayMatrix,
    NilpotenceResult,
    is_nilpotent,
    w0_matrix,
)
from .errors import AlgebraError, ResourceLimitError, RingMismatchError
from .linalg import mat, mat_det, mat_mul
from .rings import (
    FiniteField,
    IntegersMod,
    PolynomialRing,
    QuotientRing,
    RingElement,
    convert,
    derivative,
    _is_prime,
)
from .witt import WittVector, zero as witt_zero


# ---------------------------------------------------------------------------
# Projective points and charts


class ProjectivePoint:
    """Homogeneous coordinates over R, defined up to a common unit."""

    __slots__ = ("ring", "coords")

    def __init__(self, ring, coords):
        coords = tuple(coords)
        if not coords:
            raise ValueError("a projective point needs at least one coordinate")
        for c in coords:
            if not isinstance(c, RingElement) or c.ring != ring:
                raise RingMismatchError("coordinates must lie in the declared ring")
        if not any(c.is_unit() for c in coords):
            raise AlgebraError(
                "no coordinate is a unit; the tuple does not define a point "
                "over this local base"
            )
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, name, value):
        raise AttributeError("ProjectivePoint is immutable")

    def __len__(self):
        return len(self.coords)

    def projectively_equal(self, other: "ProjectivePoint") -> bool:
        if self.ring != other.ring or len(self) != len(other):
            return False
        pivot = next(i for i, c in enumerate(self.coords) if c.is_unit())
        if not other.coords[pivot].is_unit():
            return False
        scale = other.coords[pivot] * self.coords[pivot].invert()
        return all(
            other.coords[i] == scale * self.coords[i] for i in range(len(self))
        )

    def __repr__(self):
        return "[" + " : ".join(repr(c) for c in self.coords) + "]"


def projective_point(D: DisplayMatrix) -> ProjectivePoint:
    """The last column of w_0(B) as homogeneous coordinates (d = h-1)."""
    if D.d != D.h - 1:
        raise ValueError("the projection is defined for dimension h-1")
    coords = tuple(w0_matrix(D.rows)[i][D.h - 1] for i in range(D.h))
    return ProjectivePoint(D.ring, coords)


@dataclass(frozen=True)
class ChartMap:
    """A coordinate chart of projective space: the index of the coordinate
    normalized to 1 and the remaining coordinate functions, in order."""

    ring: object
    chart_index: int
    functions: tuple


def charts_from_point(point: ProjectivePoint):
    """All charts available for a point: index -> ChartMap (unit pivots only)."""
    charts = {}
    for i, c in enumerate(point.coords):
        if not c.is_unit():
            continue
        inv = c.invert()
        funcs = tuple(
            point.coords[j] * inv for j in range(len(point.coords)) if j != i
        )
        charts[i] = ChartMap(point.ring, i, funcs)
    return charts


@dataclass(frozen=True)
class EtaleCheckResult:
    etale: bool
    reason: str | None = None
    jacobian_determinant: object | None = None


def _ring_variable_names(ring):
    if isinstance(ring, QuotientRing):
        return ring.poly.names
    if isinstance(ring, PolynomialRing):
        return ring.names
    raise RingMismatchError(f"{ring!r} has no presentation with explicit variables")


def jacobian_etale_check(chart: ChartMap) -> EtaleCheckResult:
    """Whether the chart map is etale: the Jacobian determinant of its
    coordinate functions with respect to the presentation variables must
    be a unit (tested through residue evaluation, which is what unit
    testing in these local truncations means)."""
    ring = chart.ring
    names = _ring_variable_names(ring)
    funcs = chart.functions
    if len(funcs) != len(names):
        return EtaleCheckResult(
            False,
            reason=(
                f"variable count mismatch: {len(funcs)} coordinate functions "
                f"over a presentation with {len(names)} variables"
            ),
        )
    jac = tuple(
        tuple(derivative(f, name) for name in names) for f in funcs
    )
    det = mat_det(jac)
    return EtaleCheckResult(det.is_unit(), jacobian_determinant=det)


def all_charts_etale(point: ProjectivePoint):
    """Convenience: run the Jacobian criterion on every available chart."""
    return {
        i: jacobian_etale_check(chart)
        for i, chart in sorted(charts_from_point(point).items())
    }


# ---------------------------------------------------------------------------
# The square-zero lift oracle


def _field_data(ring):
    if isinstance(ring, FiniteField):
        return ring.p, ring.degree
    if isinstance(ring, IntegersMod) and _is_prime(ring.modulus):
        return ring.modulus, 1
    raise RingMismatchError(f"{ring!r} is not a finite field")


def _field_payload_to_coords(field, payload, m):
    if isinstance(field, FiniteField):
        return tuple(int(c) for c in payload)
    return (int(payload),)


def _coords_to_field_payload(field, coords):
    if isinstance(field, FiniteField):
        return tuple(int(c) for c in coords)
    return int(coords[0])


class _FpMatrixSpace:
    """Coordinates for h x h matrices of Witt vectors over eps*k.

    Index layout: ((i*h + j)*N + n)*m + t with entry (i, j), Witt level n,
    and field-basis exponent t (coefficient of eps * z^t).
    """

    def __init__(self, eps_ring, field, p, h, length):
        self.eps_ring = eps_ring
        self.field = field
        self.p = p
        self.h = h
        self.length = length
        self.m = _field_data(field)[1]
        self.dim = h * h * length * self.m

    def _component_coords(self, elt: RingElement):
        """eps-linear part of an element of k[eps]/(eps^2) as F_p coords."""
        eps_coeff = None
        for exps, coeff in elt.payload:
            if exps == (1,):
                eps_coeff = coeff
            elif exps == (0,) and not self.eps_ring.poly.base.is_zero(coeff):
                raise AlgebraError("element has a nonzero constant part")
        if eps_coeff is None:
            return (0,) * self.m
        return _field_payload_to_coords(self.field, eps_coeff, self.m)

    def encode(self, matrix) -> tuple:
        out = []
        for row in matrix:
            for x in row:
                for n in range(self.length):
                    out.extend(self._component_coords(x.components[n]))
        return tuple(out)

    def decode(self, coords):
        base = self.eps_ring.poly.base
        rows = []
        pos = 0
        for i in range(self.h):
            row = []
            for j in range(self.h):
                comps = []
                for n in range(self.length):
                    chunk = coords[pos : pos + self.m]
                    pos += self.m
                    coeff = _coords_to_field_payload(self.field, chunk)
                    if base.is_zero(coeff):
                        comps.append(self.eps_ring.zero())
                    else:
                        payload = self.eps_ring.reduce((((1,), coeff),))
                        comps.append(self.eps_ring.element(payload))
                row.append(WittVector(self.p, self.eps_ring, comps))
            rows.append(tuple(row))
        return mat(rows)


def _rref_mod_p(rows, p):
    """Reduced row echelon form over F_p; returns (rows, pivot positions)."""
    rows = [list(r) for r in rows]
    pivots = []
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot_row = None
        for r in range(rank, len(rows)):
            if rows[r][col] % p != 0:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [(x * inv) % p for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] % p != 0:
                factor = rows[r][col]
                rows[r] = [(x - factor * y) % p for x, y in zip(rows[r], rows[rank])]
        pivots.append(col)
        rank += 1
    return [tuple(r) for r in rows[:rank]], pivots


def _vec_to_int(vec, p):
    value = 0
    for x in reversed(vec):
        value = value * p + (x % p)
    return value


def _int_to_vec(value, p, dim):
    out = []
    for _ in range(dim):
        value, r = divmod(value, p)
        out.append(r)
    return tuple(out)


@dataclass(frozen=True)
class TangentOracleResult:
    class_count: int
    representatives: tuple
    subspace_rank: int
    total_dimension: int
    closed_form_matches: bool
    nilpotence: NilpotenceResult
    warnings: tuple = field(default_factory=tuple)


def tangent_lift_oracle(
    D: DisplayMatrix,
    budget: int = 1 << 20,
    nonnilpotent: str = "warn",
) -> TangentOracleResult:
    """Enumerate isomorphism classes of square-zero lifts of a display.

    Returns the class count (which should equal |k|^(h-1), the size of the
    tangent space of projective (h-1)-space over k), canonical class
    representatives (lexicographically least coordinate vectors, decoded
    to lifted displays), and whether the closed-form description of the
    isomorphism subspace matches the orbit computation exactly.
    """
    k = D.ring
    p, m = _field_data(k)
    if p != D.p:
        raise RingMismatchError("display prime differs from field characteristic")
    h, length = D.h, D.n
    warnings = []
    nil = is_nilpotent(D)
    if nil.status != NilpotenceResult.NILPOTENT:
        msg = f"display is not certified nilpotent (status: {nil.status})"
        if nonnilpotent == "reject":
            raise AlgebraError(msg)
        warnings.append(msg)

    poly = PolynomialRing(k, ("eps",))
    eps_ring = QuotientRing(poly, [poly.gen("eps")], 2)
    space = _FpMatrixSpace(eps_ring, k, p, h, length)
    if p**space.dim > budget:
        raise ResourceLimitError(
            f"lift space of size {p}^{space.dim} exceeds the budget {budget}"
        )

    rows_eps = tuple(
        tuple(
            WittVector(p, eps_ring, [convert(c, eps_ring) for c in x.components])
            for x in row
        )
        for row in D.rows
    )
    zero_w = witt_zero(p, length, eps_ring)

    # Sanity: the Frobenius annihilates W(eps k), and Witt addition there is
    # componentwise; both facts are used by the linear model below.
    probe = space.decode(tuple(1 if i < 2 * m else 0 for i in range(space.dim)))
    probe_entry = probe[0][0]
    if not probe_entry.frobenius().is_zero():
        raise RuntimeError("internal error: Frobenius does not kill the ideal")

    def componentwise_sum(x, y):
        return WittVector(p, eps_ring,
                          [a + b for a, b in zip(x.components, y.components)])

    s1 = space.decode(tuple(1 if i % 3 == 0 else 0 for i in range(space.dim)))
    s2 = space.decode(tuple(1 if i % 2 == 0 else 0 for i in range(space.dim)))
    for rowa, rowb in zip(s1, s2):
        for xa, xb in zip(rowa, rowb):
            if xa + xb != componentwise_sum(xa, xb):
                raise RuntimeError(
                    "internal error: Witt addition is not componentwise on the ideal"
                )

    d = D.d

    def action_image(blocks):
        """X(a,b,c,e) = [[0,b],[0,0]] B - B [[a, v.b],[c, e]]."""
        a, b, c, e = blocks
        top = [
            [zero_w] * d + [b[i][j] for j in range(h - d)] for i in range(d)
        ]
        top += [[zero_w] * h for _ in range(h - d)]
        phi_like = [
            [a[i][j] for j in range(d)] + [b[i][j].verschiebung() for j in range(h - d)]
            for i in range(d)
        ]
        phi_like += [
            [c[i][j] for j in range(d)] + [e[i][j] for j in range(h - d)]
            for i in range(h - d)
        ]
        lhs = mat_mul(mat(top), rows_eps)
        rhs = mat_mul(rows_eps, mat(phi_like))
        return tuple(
            tuple(x + (-y) for x, y in zip(ra, rb)) for ra, rb in zip(lhs, rhs)
        )

    def blocks_from_matrix(M):
        a = tuple(tuple(M[i][j] for j in range(d)) for i in range(d))
        b = tuple(tuple(M[i][d + j] for j in range(h - d)) for i in range(d))
        c = tuple(tuple(M[d + i][j] for j in range(d)) for i in range(h - d))
        e = tuple(tuple(M[d + i][d + j] for j in range(h - d)) for i in range(h - d))
        return a, b, c, e

    basis_images = []
    for idx in range(space.dim):
        coords = tuple(1 if i == idx else 0 for i in range(space.dim))
        blocks = blocks_from_matrix(space.decode(coords))
        basis_images.append(space.encode(action_image(blocks)))

    # Linearity spot-check: a dense parameter combination must map to the
    # sum of the basis images it combines.
    combo = tuple(i % p for i in range(space.dim))
    direct = space.encode(action_image(blocks_from_matrix(space.decode(combo))))
    predicted = tuple(
        sum(combo[i] * basis_images[i][j] for i in range(space.dim)) % p
        for j in range(space.dim)
    )
    if direct != predicted:
        raise RuntimeError("internal error: the isomorphism action is not linear")

    rref_rows, pivots = _rref_mod_p(basis_images, p)
    rank = len(rref_rows)

    # Closed form: matrices whose final column is, under w_0, a k-multiple
    # of the final column of B.  As an F_p-space this is spanned by (a) all
    # coordinates away from the final column's w_0 slots and (b) the line
    # through the final column of w_0(B).
    final_w0_positions = [
        ((i * h + (h - 1)) * length + 0) * m + t for i in range(h) for t in range(m)
    ]
    closed_rows = []
    for idx in range(space.dim):
        if idx not in final_w0_positions:
            closed_rows.append(tuple(1 if i == idx else 0 for i in range(space.dim)))
    bcol = [w0_matrix(D.rows)[i][h - 1] for i in range(h)]
    for t in range(m):
        if isinstance(k, FiniteField):
            scale = k.gen() ** t
        else:
            scale = k.one()
        vec = [0] * space.dim
        for i in range(h):
            val = scale * bcol[i]
            coords_i = _field_payload_to_coords(k, val.payload, m)
            for tt in range(m):
                vec[final_w0_positions[i * m + tt]] = coords_i[tt]
        closed_rows.append(tuple(vec))
    closed_rref, closed_pivots = _rref_mod_p(closed_rows, p)
    closed_form_matches = (rref_rows == closed_rref and pivots == closed_pivots)

    # Materialize the orbit of zero (the span) and verify the closed-form
    # membership predicate on every element.
    span_ints = {0}
    for row in rref_rows:
        addend = _vec_to_int(row, p)
        new = set()
        for existing in span_ints:
            vec = existing
            for _ in range(p - 1):
                vec = _add_base_p(vec, addend, p, space.dim)
                new.add(vec)
        span_ints |= new
    if len(span_ints) != p**rank:
        raise RuntimeError("internal error: span enumeration has the wrong size")

    def predicate(vec_int):
        vec = _int_to_vec(vec_int, p, space.dim)
        wcol = [
            _coords_to_field_payload(
                k, tuple(vec[final_w0_positions[i * m + t]] for t in range(m))
            )
            for i in range(h)
        ]
        welts = [k.element(k(c).payload if isinstance(c, int) else c) for c in wcol]
        pivot = next(i for i, b in enumerate(bcol) if b.is_unit())
        lam = welts[pivot] * bcol[pivot].invert()
        return all(welts[i] == lam * bcol[i] for i in range(h))

    predicate_ok = all(predicate(v) for v in span_ints)
    closed_form_matches = closed_form_matches and predicate_ok

    # Quotient the full lift space by the subspace: canonical (pivot-zeroed,
    # hence lexicographically least) coset representatives.
    canonical_forms = _quotient_canonical_forms(rref_rows, pivots, p, space.dim)
    class_count = len(canonical_forms)

    representatives = []
    for coords_int in sorted(canonical_forms):
        coords = _int_to_vec(coords_int, p, space.dim)
        s_matrix = space.decode(coords)
        lifted = tuple(
            tuple(x + s for x, s in zip(row, srow))
            for row, srow in zip(rows_eps, s_matrix)
        )
        representatives.append(DisplayMatrix(p, h, d, eps_ring, lifted))

    return TangentOracleResult(
        class_count=class_count,
        representatives=tuple(representatives),
        subspace_rank=rank,
        total_dimension=space.dim,
        closed_form_matches=closed_form_matches,
        nilpotence=nil,
        warnings=tuple(warnings),
    )


def _add_base_p(x: int, y: int, p: int, dim: int) -> int:
    if p == 2:
        return x ^ y
    out = 0
    mult = 1
    for _ in range(dim):
        digit = (x % p + y % p) % p
        out += digit * mult
        x //= p
        y //= p
        mult *= p
    return out


def _quotient_canonical_forms(rref_rows, pivots, p, dim):
    """Canonical representative (pivot coordinates zeroed) of every coset,
    computed by scanning the full space of base-p encoded vectors."""
    row_ints = [_vec_to_int(r, p) for r in rref_rows]
    if p == 2:
        pivot_mask = 0
        for c in pivots:
            pivot_mask |= 1 << c
        # Table: pivot-bit pattern -> xor of the matching rref rows.
        table = {0: 0}
        for row_int, c in zip(row_ints, pivots):
            bit = 1 << c
            for pattern, mask in list(table.items()):
                table[pattern | bit] = mask ^ row_int
        forms = set()
        for v in range(1 << dim):
            forms.add(v ^ table[v & pivot_mask])
        return forms
    forms = set()
    for value in range(p**dim):
        vec = list(_int_to_vec(value, p, dim))
        for row, c in zip(rref_rows, pivots):
            coeff = vec[c] % p
            if coeff:
                vec = [(x - coeff * y) % p for x, y in zip(vec, row)]
        forms.add(_vec_to_int(vec, p))
    return forms
