"""Displays in matrix form over the truncated Witt vectors.

A display of height h and dimension d over R is presented by an h x h
matrix B over W_N(R) whose image under w_0 is invertible over R.  B is the
*matrix form*, i.e. the inverse of the structure matrix (b_ij) that
expresses the operators on the standard basis: writing (b_ij) = B^{-1} in
block columns [L | Rt] (L the first d columns), the operators act by

    F [x; y]      = [L | p*Rt] [f x; f y]
    V^{-1} [vx; y] = [L | Rt]   [x; f y]

This module implements validity, the two block actions, the
change-of-coordinates action, the nilpotence test, duality (certified by
the pairing relation; see docs/duality.md for the derivation of the matrix
form used here), the canonical height-2 reduction, and the named example
corpus.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    AlgebraError,
    NotAUnitError,
    PrecisionError,
    RingMismatchError,
)
from .linalg import (
    mat,
    mat_adjugate,
    mat_det,
    mat_identity,
    mat_mul,
    mat_scale,
    mat_transpose,
    mat_vec,
)
from .rings import RingElement, frobenius_power, mod_p_reduction, substitute
from .witt import WittVector, one as witt_one, teichmuller, zero as witt_zero


def _min_length(entries) -> int:
    return min(e.n for e in entries)


def _truncate_matrix(M, length):
    return tuple(tuple(x.truncate(length) for x in row) for row in M)


def _entries(M):
    return [x for row in M for x in row]


def w0_matrix(M):
    """Componentwise w_0 of a matrix of Witt vectors."""
    return tuple(tuple(x.components[0] for x in row) for row in M)


def witt_matrix_inverse(M, p, ring):
    """Inverse of a Witt matrix via adjugate and Newton inversion of det."""
    length = _min_length(_entries(M))
    M = _truncate_matrix(M, length)
    det = mat_det(M)
    try:
        det_inv = det.invert()
    except NotAUnitError as exc:
        raise NotAUnitError(f"matrix is not invertible over W_N: {exc}") from None
    return mat_scale(det_inv, mat_adjugate(M, witt_one(p, length, ring)))


class DisplayMatrix:
    """A validated display in matrix form."""

    __slots__ = ("p", "h", "d", "ring", "rows", "_structure")

    def __init__(self, p: int, h: int, d: int, ring, rows):
        if h < 2:
            raise ValueError("height must be >= 2")
        if not 1 <= d < h:
            raise ValueError("dimension must satisfy 1 <= d < h")
        rows = mat(rows)
        if len(rows) != h or any(len(r) != h for r in rows):
            raise ValueError(f"matrix must be {h}x{h}")
        for x in _entries(rows):
            if not isinstance(x, WittVector):
                raise TypeError("matrix entries must be Witt vectors")
            if x.p != p or x.ring != ring:
                raise RingMismatchError("entry prime/ring mismatch")
        length = _min_length(_entries(rows))
        rows = _truncate_matrix(rows, length)
        det0 = mat_det(w0_matrix(rows))
        if not det0.is_unit():
            raise AlgebraError(
                "w_0 of the matrix form is not invertible over the base ring"
            )
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "_structure", None)

    def __setattr__(self, name, value):
        raise AttributeError("DisplayMatrix is immutable")

    @property
    def n(self) -> int:
        return self.rows[0][0].n

    def structure_matrix(self):
        """(b_ij) = B^{-1}, computed once via the adjugate."""
        if self._structure is None:
            inv = witt_matrix_inverse(self.rows, self.p, self.ring)
            object.__setattr__(self, "_structure", inv)
        return self._structure

    def entry(self, i: int, j: int) -> WittVector:
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, DisplayMatrix):
            return NotImplemented
        return (
            (self.p, self.h, self.d, self.ring) == (other.p, other.h, other.d, other.ring)
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.p, self.h, self.d, self.ring, self.rows))

    def truncate(self, length: int) -> "DisplayMatrix":
        return DisplayMatrix(self.p, self.h, self.d, self.ring,
                             _truncate_matrix(self.rows, length))

    def __repr__(self):
        rows = "; ".join(
            "[" + ", ".join(repr(x) for x in row) + "]" for row in self.rows
        )
        return f"Display(h={self.h}, d={self.d}, p={self.p}, B=[{rows}])"


def new_display(p: int, h: int, d: int, ring, rows) -> DisplayMatrix:
    """Validate and build a display in matrix form (rejects non-unit w_0 det)."""
    return DisplayMatrix(p, h, d, ring, rows)


# ---------------------------------------------------------------------------
# Block actions


def apply_F(D: DisplayMatrix, column) -> tuple:
    """The operator F on a column of h Witt vectors."""
    column = tuple(column)
    if len(column) != D.h:
        raise ValueError(f"expected a column of {D.h} Witt vectors")
    fcol = [x.frobenius() for x in column]
    length = min(_min_length(fcol), D.n)
    b = _truncate_matrix(D.structure_matrix(), length)
    fcol = [x.truncate(length) for x in fcol]
    scaled = [
        fcol[j] if j < D.d else fcol[j].scale_int(D.p) for j in range(D.h)
    ]
    return mat_vec(b, scaled)


def apply_Vinv(D: DisplayMatrix, column) -> tuple:
    """The operator V^{-1} on a column whose first d entries lie in v(W(R))."""
    column = tuple(column)
    if len(column) != D.h:
        raise ValueError(f"expected a column of {D.h} Witt vectors")
    parts = []
    for j, x in enumerate(column):
        if j < D.d:
            if not x.in_v_ideal():
                raise AlgebraError(
                    f"entry {j} is not in the ideal of definition; "
                    "the column does not encode an element of Q"
                )
            parts.append(x.unshift())
        else:
            parts.append(x.frobenius())
    length = min(_min_length(parts), D.n)
    b = _truncate_matrix(D.structure_matrix(), length)
    parts = [x.truncate(length) for x in parts]
    return mat_vec(b, parts)


# ---------------------------------------------------------------------------
# Coordinate changes


class CoordinateChange:
    """An invertible change of basis compatible with the submodule Q.

    Stored in blocks a (d x d), b (d x (h-d)), c ((h-d) x d) and
    e ((h-d) x (h-d)); the assembled matrix is [[a, v.b], [c, e]], so the
    upper-right block lies entrywise in the ideal of definition.
    """

    __slots__ = ("p", "ring", "h", "d", "a", "b", "c", "e")

    def __init__(self, p, ring, h, d, a, b, c, e):
        a, b, c, e = mat(a), mat(b), mat(c), mat(e)
        shapes = {
            "a": (a, d, d),
            "b": (b, d, h - d),
            "c": (c, h - d, d),
            "e": (e, h - d, h - d),
        }
        for name, (block, nr, nc) in shapes.items():
            if len(block) != nr or any(len(r) != nc for r in block):
                raise ValueError(f"block {name} must be {nr}x{nc}")
            for x in _entries(block):
                if not isinstance(x, WittVector) or x.p != p or x.ring != ring:
                    raise RingMismatchError(f"block {name} entry prime/ring mismatch")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "e", e)
        det0 = mat_det(w0_matrix(self.matrix()))
        if not det0.is_unit():
            raise AlgebraError("coordinate change is not invertible (w_0 determinant)")

    def __setattr__(self, name, value):
        raise AttributeError("CoordinateChange is immutable")

    @classmethod
    def identity(cls, p, length, h, d, ring):
        one_w = witt_one(p, length, ring)
        zero_w = witt_zero(p, length, ring)
        a = mat_identity(d, one_w, zero_w)
        e = mat_identity(h - d, one_w, zero_w)
        b = tuple((zero_w,) * (h - d) for _ in range(d))
        c = tuple((zero_w,) * d for _ in range(h - d))
        return cls(p, ring, h, d, a, b, c, e)

    @property
    def n(self) -> int:
        """Effective length of the assembled matrix.  The b block sits
        under a verschiebung, so it contributes one more component than
        it stores."""
        ace = _min_length(_entries(self.a) + _entries(self.c) + _entries(self.e))
        return min(ace, _min_length(_entries(self.b)) + 1)

    def matrix(self):
        """The assembled h x h matrix [[a, v.b], [c, e]]."""
        length = self.n
        top = [
            tuple(x.truncate(length) for x in row_a)
            + tuple(x.verschiebung_extend().truncate(length) for x in row_b)
            for row_a, row_b in zip(self.a, self.b)
        ]
        bottom = [
            tuple(x.truncate(length) for x in row_c)
            + tuple(x.truncate(length) for x in row_e)
            for row_c, row_e in zip(self.c, self.e)
        ]
        return mat(top + bottom)

    def twisted_matrix(self):
        """The matrix [[f.a, b], [p f.c, f.e]] appearing in the
        change-of-coordinates formula."""
        fa = tuple(tuple(x.frobenius() for x in row) for row in self.a)
        fc = tuple(tuple(x.frobenius().scale_int(self.p) for x in row) for row in self.c)
        fe = tuple(tuple(x.frobenius() for x in row) for row in self.e)
        length = _min_length(
            _entries(fa) + _entries(fc) + _entries(fe) + _entries(self.b)
        )
        top = [
            tuple(x.truncate(length) for x in row_fa)
            + tuple(x.truncate(length) for x in row_b)
            for row_fa, row_b in zip(fa, self.b)
        ]
        bottom = [
            tuple(x.truncate(length) for x in row_fc)
            + tuple(x.truncate(length) for x in row_fe)
            for row_fc, row_fe in zip(fc, fe)
        ]
        return mat(top + bottom)

    def inverse_matrix(self):
        return witt_matrix_inverse(self.matrix(), self.p, self.ring)

    def one_form_factor(self):
        """w_0 of the lower-right block: the action on the canonical
        invariant 1-form (a single ring element when d = h-1)."""
        block = w0_matrix(self.e)
        if self.h - self.d == 1:
            return block[0][0]
        return block

    def inverse(self) -> "CoordinateChange":
        """The inverse change, repackaged into blocks (the upper-right
        block of the inverse matrix again lies in the ideal of definition,
        so the v-part can be stripped off; that costs one component)."""
        inv = self.inverse_matrix()
        d = self.d
        a = tuple(tuple(inv[i][j] for j in range(d)) for i in range(d))
        b = tuple(
            tuple(inv[i][d + j].unshift() for j in range(self.h - d))
            for i in range(d)
        )
        c = tuple(tuple(inv[d + i][j] for j in range(d)) for i in range(self.h - d))
        e = tuple(
            tuple(inv[d + i][d + j] for j in range(self.h - d))
            for i in range(self.h - d)
        )
        return CoordinateChange(self.p, self.ring, self.h, self.d, a, b, c, e)

    def compose(self, inner: "CoordinateChange") -> "CoordinateChange":
        """self after inner: blocks of the matrix product self.matrix() @
        inner.matrix(), repackaged (the v-block is recovered exactly via
        x*v(y) = v(f(x)*y), so only the b-block costs Frobenius twists)."""
        if (self.p, self.ring, self.h, self.d) != (inner.p, inner.ring, inner.h, inner.d):
            raise RingMismatchError("coordinate changes are not composable")
        vb_inner = tuple(tuple(x.verschiebung_extend() for x in row) for row in inner.b)
        vb_self = tuple(tuple(x.verschiebung_extend() for x in row) for row in self.b)
        a3 = _mat_add2(mat_mul(self.a, inner.a), mat_mul(vb_self, inner.c))
        c3 = _mat_add2(mat_mul(self.c, inner.a), mat_mul(self.e, inner.c))
        e3 = _mat_add2(mat_mul(self.c, vb_inner), mat_mul(self.e, inner.e))
        fa_self = tuple(tuple(x.frobenius() for x in row) for row in self.a)
        fe_inner = tuple(tuple(x.frobenius() for x in row) for row in inner.e)
        b3 = _mat_add2(mat_mul(fa_self, inner.b), mat_mul(self.b, fe_inner))
        return CoordinateChange(self.p, self.ring, self.h, self.d, a3, b3, c3, e3)

    def __repr__(self):
        return f"CoordinateChange(h={self.h}, d={self.d}, p={self.p})"


def _mat_add2(A, B):
    length = min(_min_length(_entries(A)), _min_length(_entries(B)))
    A = _truncate_matrix(A, length)
    B = _truncate_matrix(B, length)
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(A, B))


def change_of_coords(D: DisplayMatrix, phi: CoordinateChange):
    """Apply a coordinate change: B' = [[f.a, b],[p f.c, f.e]] B phi^{-1}.

    Returns the new display together with the w_0 of phi's lower-right
    block, which is the action on the canonical invariant 1-form (a ring
    element when d = h-1, else a matrix).  One Frobenius application is
    consumed over bases not of characteristic p.
    """
    if (D.p, D.ring, D.h, D.d) != (phi.p, phi.ring, phi.h, phi.d):
        raise RingMismatchError("display and coordinate change are incompatible")
    if D.n < 2 and D.ring.characteristic() != D.p:
        raise PrecisionError("change of coordinates needs Witt length >= 2 here")
    twisted = phi.twisted_matrix()
    phi_inv = phi.inverse_matrix()
    length = min(_min_length(_entries(twisted)), D.n,
                 _min_length(_entries(phi_inv)))
    product = mat_mul(
        mat_mul(_truncate_matrix(twisted, length), _truncate_matrix(D.rows, length)),
        _truncate_matrix(phi_inv, length),
    )
    return DisplayMatrix(D.p, D.h, D.d, D.ring, product), phi.one_form_factor()


# ---------------------------------------------------------------------------
# Nilpotence


@dataclass(frozen=True)
class NilpotenceResult:
    status: str  # "nilpotent" | "not_nilpotent" | "unknown"
    exponent: int | None = None

    NILPOTENT = "nilpotent"
    NOT_NILPOTENT = "not_nilpotent"
    UNKNOWN = "unknown"


def default_nilpotence_bound(D: DisplayMatrix) -> int:
    ring = D.ring
    exponent = getattr(ring, "exponent", None)
    return exponent if exponent is not None else 32


def is_nilpotent(D: DisplayMatrix, max_iter: int | None = None) -> NilpotenceResult:
    """Decide nilpotence of the display where possible.

    Forms the lower-right (h-d) x (h-d) corner of B over R/(p) and
    multiplies Frobenius twists, f^n(C) ... f(C) C, until the product
    vanishes (nilpotent, smallest such n returned), revisits an earlier
    value (the sequence is then periodic and never zero: not nilpotent),
    or the iteration bound runs out (unknown).
    """
    if max_iter is None:
        max_iter = default_nilpotence_bound(D)
    char_ring, reduce_payload = mod_p_reduction(D.ring, D.p)
    corner = tuple(
        tuple(
            RingElement(char_ring, reduce_payload(D.rows[i][j].components[0].payload))
            for j in range(D.d, D.h)
        )
        for i in range(D.d, D.h)
    )

    def canon(M):
        return tuple(tuple(x.payload for x in row) for row in M)

    def is_zero_mat(M):
        return all(x.is_zero() for row in M for x in row)

    def twist(M):
        return tuple(tuple(frobenius_power(x) for x in row) for row in M)

    current = corner
    seen = {canon(current)}
    for n in range(max_iter + 1):
        if is_zero_mat(current):
            return NilpotenceResult(NilpotenceResult.NILPOTENT, n)
        nxt = mat_mul(twist(current), corner)
        key = canon(nxt)
        if key in seen:
            return NilpotenceResult(NilpotenceResult.NOT_NILPOTENT)
        seen.add(key)
        current = nxt
    return NilpotenceResult(NilpotenceResult.UNKNOWN)


# ---------------------------------------------------------------------------
# Duality


def dual_basis_permutation(h: int, d: int) -> tuple:
    """Index map for the dual display's basis: position j of the dual
    display corresponds to the dual-basis vector with this original index
    (the last h-d functionals come first, so that the dual Hodge submodule
    has the standard shape)."""
    return tuple(list(range(d, h)) + list(range(d)))


def dual(D: DisplayMatrix) -> DisplayMatrix:
    """The dual display: height h, dimension h-d.

    The matrix form is the permuted transposed inverse of B (see
    docs/duality.md for the derivation from the defining pairing
    v((V_dual f)(V^{-1} x)) = f(x)); tests accept it only through that
    pairing certificate, never by trusting the formula.
    """
    binv = D.structure_matrix()
    perm = dual_basis_permutation(D.h, D.d)
    rows = tuple(
        tuple(binv[perm[j]][perm[i]] for j in range(D.h)) for i in range(D.h)
    )
    return DisplayMatrix(D.p, D.h, D.h - D.d, D.ring, rows)


def pair_dual(dual_col, primal_col, h: int, d: int) -> WittVector:
    """Evaluate a functional (given in the dual display's coordinates)
    on a primal column: sum over matched basis indices."""
    perm = dual_basis_permutation(h, d)
    length = min(_min_length(dual_col), _min_length(primal_col))
    acc = None
    for j in range(h):
        term = dual_col[j].truncate(length) * primal_col[perm[j]].truncate(length)
        acc = term if acc is None else acc + term
    return acc


def dual_pairing_holds(D: DisplayMatrix, Ddual: DisplayMatrix,
                       dual_col, primal_col) -> bool:
    """Certificate instance: v((V_dual lam)(V^{-1} x)) == lam(x).

    `dual_col` must encode an element of the dual Q (first h-d entries in
    the ideal of definition, in the dual display's coordinates) and
    `primal_col` an element of Q.
    """
    mu = apply_Vinv(Ddual, dual_col)
    vx = apply_Vinv(D, primal_col)
    lhs = pair_dual(mu, vx, D.h, D.d).verschiebung()
    rhs = pair_dual(dual_col, primal_col, D.h, D.d)
    length = min(lhs.n, rhs.n)
    return lhs.truncate(length) == rhs.truncate(length)


# ---------------------------------------------------------------------------
# Height-2 canonical reduction


def reduce_h2(D: DisplayMatrix):
    """Reduce an h=2, d=1 display to the form [[0,1],[g,dd]].

    Needs the w_0 image of the (1,2) entry to be a unit (automatic for
    nilpotent displays over local rings); fails loudly otherwise rather
    than guessing.  Returns the reduced display and the witnessing
    coordinate change.
    """
    if D.h != 2 or D.d != 1:
        raise ValueError("reduction is specific to height 2, dimension 1")
    ring = D.ring
    one_w = witt_one(D.p, D.n, ring)
    if D.rows[0][0].is_zero() and D.rows[0][1] == one_w:
        return D, CoordinateChange.identity(D.p, D.n, 2, 1, ring)
    beta = D.rows[0][1]
    if not beta.components[0].is_unit():
        raise AlgebraError(
            "the (1,2) entry is not a unit mod the ideal of definition; "
            "no canonical reduction without extending the base"
        )
    alpha = D.rows[0][0]
    zero_w = witt_zero(D.p, D.n, ring)
    phi = CoordinateChange(
        D.p, ring, 2, 1,
        a=((one_w,),), b=((zero_w,),), c=((alpha,),), e=((beta,),),
    )
    reduced, _ = change_of_coords(D, phi)
    head = reduced.rows[0]
    if not (head[0].is_zero() and head[1] == witt_one(D.p, reduced.n, ring)):
        raise AlgebraError("internal error: reduction did not reach the canonical form")
    return reduced, phi


# ---------------------------------------------------------------------------
# Example corpus


def lubin_tate_rows(h: int, p: int, length: int, ring, names=None):
    """The standard height-h pattern: subdiagonal ones, last column
    (1, [u_{h-1}], ..., [u_1]), zeros elsewhere."""
    if names is None:
        names = [f"u{i}" for i in range(1, h)]
    one_w = witt_one(p, length, ring)
    zero_w = witt_zero(p, length, ring)
    gen = {name: teichmuller(_ring_gen(ring, name), p, length) for name in names}
    rows = []
    for i in range(1, h + 1):
        row = [zero_w] * h
        if i == 1:
            row[h - 1] = one_w
        else:
            row[i - 2] = one_w
            row[h - 1] = gen[f"u{h - i + 1}"]
        rows.append(tuple(row))
    return mat(rows)


def _ring_gen(ring, name):
    return ring.gen(name)


def lubin_tate_display(h: int, p: int, length: int, ring) -> DisplayMatrix:
    return new_display(p, h, h - 1, ring, lubin_tate_rows(h, p, length, ring))


def display_substitute(D: DisplayMatrix, assignment: dict, target_ring) -> DisplayMatrix:
    """Apply a ring map (a variable substitution) to every Witt component."""
    rows = tuple(
        tuple(
            WittVector(D.p, target_ring,
                       [substitute(c, assignment, target_ring) for c in x.components])
            for x in row
        )
        for row in D.rows
    )
    return DisplayMatrix(D.p, D.h, D.d, target_ring, rows)


def standard_truncation_ring(h: int, p: int, exponent: int = 3):
    """Z/p^2 [u_1..u_{h-1}] truncated at the power of the ideal (p, u_1)."""
    from .rings import IntegersMod, PolynomialRing, QuotientRing

    names = [f"u{i}" for i in range(1, h)]
    poly = PolynomialRing(IntegersMod(p**2), names)
    return QuotientRing(poly, [p, poly.gen("u1")], exponent)


def zeta_action_fixture(h: int, p: int, length: int = 2, exponent: int = 2) -> dict:
    """The root-of-unity action on the height-h standard display.

    Over F_{p^h}[u_1..u_{h-1}] (variables truncated), the generator zeta of
    the multiplicative group acts on the base by u_i -> zeta^(1-p^i) u_i;
    the diagonal Teichmueller matrix diag([zeta^{p^{h-1}}], ..., [zeta^p],
    [zeta]) carries the pulled-back display to the original one and scales
    the canonical 1-form by zeta.
    """
    from .rings import FiniteField, PolynomialRing, QuotientRing, convert

    field = FiniteField(p, h)
    zeta = field.multiplicative_generator()
    names = [f"u{i}" for i in range(1, h)]
    poly = PolynomialRing(field, names)
    ring = QuotientRing(poly, [poly.gen(nm) for nm in names], exponent)
    disp = lubin_tate_display(h, p, length, ring)
    assignment = {
        f"u{i}": convert(zeta ** (1 - p**i), ring) * ring.gen(f"u{i}")
        for i in range(1, h)
    }
    pullback = display_substitute(disp, assignment, ring)
    diag = [
        teichmuller(convert(zeta ** (p ** (h - 1 - i)), ring), p, length)
        for i in range(h)
    ]
    zero_w = witt_zero(p, length, ring)
    d = h - 1
    phi = CoordinateChange(
        p, ring, h, d,
        a=tuple(tuple(diag[i] if i == j else zero_w for j in range(d)) for i in range(d)),
        b=tuple((zero_w,) for _ in range(d)),
        c=((zero_w,) * d,),
        e=((diag[h - 1],),),
    )
    return {
        "field": field,
        "zeta": zeta,
        "ring": ring,
        "display": disp,
        "pullback": pullback,
        "phi": phi,
    }


EXAMPLE_NAMES = (
    "lubin-tate-h2",
    "lubin-tate-h3",
    "lubin-tate-h4",
    "zeta-action-h2",
    "zeta-action-h3",
)


def example_display(name: str, p: int | None = None, length: int = 2,
                    exponent: int = 3):
    """The named example corpus.

    ``lubin-tate-h{2,3,4}`` is the standard display over the
    Z/p^2-coefficient truncation (default p = 2); ``zeta-action-h{2,3}``
    returns the root-of-unity fixture dictionary (default p = 3).
    """
    if name.startswith("lubin-tate-h"):
        h = int(name.rsplit("h", 1)[1])
        if h not in (2, 3, 4):
            raise ValueError(f"unknown example {name!r}")
        p = 2 if p is None else p
        ring = standard_truncation_ring(h, p, exponent)
        return lubin_tate_display(h, p, length, ring)
    if name.startswith("zeta-action-h"):
        h = int(name.rsplit("h", 1)[1])
        if h not in (2, 3):
            raise ValueError(f"unknown example {name!r}")
        p = 3 if p is None else p
        return zeta_action_fixture(h, p, length, max(exponent - 1, 2))
    raise ValueError(f"unknown example {name!r}; known: {', '.join(EXAMPLE_NAMES)}")
