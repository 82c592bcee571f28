"""Classical Dieudonne modules over perfect fields, extracted from displays.

Over a finite field k the operator V^{-1} of a display has a genuine
inverse, and the pair (F, V) acts on the free module W_N(k)^h by

    F x = M_F . f(x)        (f-semilinear)
    V x = M_V . f^{-1}(x)   (f^{-1}-semilinear)

with M_F = B^{-1} diag(1..1, p..p) and M_V = [v.(top d rows of B);
f^{-1}.(bottom rows of B)], satisfying F V = V F = p.  The inverse
Frobenius is the componentwise p^{m-1} power, which exists exactly only
over finite fields; that is why this module is restricted to them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .display import DisplayMatrix, w0_matrix, witt_matrix_inverse
from .errors import RingMismatchError
from .linalg import mat, mat_mul, mat_transpose, mat_vec
from .rings import FiniteField, IntegersMod, RingElement, _is_prime
from .witt import WittVector, from_int


def _field_frobenius_inverse(field, payload):
    if isinstance(field, FiniteField):
        return field.frobenius_inverse(payload)
    if isinstance(field, IntegersMod) and _is_prime(field.modulus):
        return payload  # prime field: x^p = x
    raise RingMismatchError(f"{field!r} is not a finite field")


def witt_frobenius(x: WittVector) -> WittVector:
    """Componentwise x -> x^p (length-preserving; perfect-field case)."""
    ring = x.ring
    comps = [RingElement(ring, ring.frobenius(c.payload)) for c in x.components]
    return WittVector(x.p, ring, comps)


def witt_frobenius_inverse(x: WittVector) -> WittVector:
    """Componentwise inverse Frobenius on W_N(F_q)."""
    ring = x.ring
    comps = [
        RingElement(ring, _field_frobenius_inverse(ring, c.payload))
        for c in x.components
    ]
    return WittVector(x.p, ring, comps)


def twist_matrix(M):
    return tuple(tuple(witt_frobenius(x) for x in row) for row in M)


def untwist_matrix(M):
    return tuple(tuple(witt_frobenius_inverse(x) for x in row) for row in M)


def _is_finite_field(ring) -> bool:
    return isinstance(ring, FiniteField) or (
        isinstance(ring, IntegersMod) and _is_prime(ring.modulus)
    )


@dataclass(frozen=True)
class DieudonneModule:
    """F and V matrices on W_N(k)^h with their semilinearity twists."""

    field: object
    p: int
    n: int
    h: int
    f_matrix: tuple
    v_matrix: tuple

    def apply_F(self, column):
        fx = [witt_frobenius(x) for x in column]
        return mat_vec(self.f_matrix, fx)

    def apply_V(self, column):
        fx = [witt_frobenius_inverse(x) for x in column]
        return mat_vec(self.v_matrix, fx)

    def basis_vector(self, j: int):
        from .witt import one as witt_one, zero as witt_zero

        return tuple(
            witt_one(self.p, self.n, self.field) if i == j
            else witt_zero(self.p, self.n, self.field)
            for i in range(self.h)
        )

    def check_fv_relations(self) -> bool:
        """FV = VF = p, checked on every basis vector."""
        p_scalar = from_int(self.p, self.p, self.n, self.field)
        for j in range(self.h):
            e = self.basis_vector(j)
            expected = tuple(p_scalar * x for x in e)
            if tuple(self.apply_F(self.apply_V(e))) != expected:
                return False
            if tuple(self.apply_V(self.apply_F(e))) != expected:
                return False
        return True


def to_dieudonne(D: DisplayMatrix) -> DieudonneModule:
    """Extract the (F, V) matrices of a display over a finite field."""
    if not _is_finite_field(D.ring):
        raise RingMismatchError(
            f"the base ring {D.ring!r} is not a finite (perfect) field"
        )
    binv = D.structure_matrix()
    f_matrix = tuple(
        tuple(
            binv[i][j] if j < D.d else binv[i][j].scale_int(D.p)
            for j in range(D.h)
        )
        for i in range(D.h)
    )
    v_matrix = tuple(
        tuple(
            D.rows[i][j].verschiebung() if i < D.d
            else witt_frobenius_inverse(D.rows[i][j])
            for j in range(D.h)
        )
        for i in range(D.h)
    )
    module = DieudonneModule(D.ring, D.p, D.n, D.h, mat(f_matrix), mat(v_matrix))
    if not module.check_fv_relations():
        raise RuntimeError("internal error: FV = VF = p failed for the extracted module")
    return module


def dieudonne_isomorphic_under_base_change(
    M: DieudonneModule, M2: DieudonneModule, g
) -> bool:
    """Whether the invertible matrix g conjugates (F, V) with the correct
    semilinear twists: F' = g F g^{-1} and V' = g V g^{-1} as operators,
    i.e. M2.f = g M.f f(g)^{-1} and M2.v = g M.v f^{-1}(g)^{-1}."""
    if (M.field, M.p, M.n, M.h) != (M2.field, M2.p, M2.n, M2.h):
        raise RingMismatchError("modules are not comparable")
    g = mat(g)
    if len(g) != M.h or any(len(r) != M.h for r in g):
        raise ValueError("base-change matrix has the wrong size")
    g_f_inv = witt_matrix_inverse(twist_matrix(g), M.p, M.field)
    g_fi_inv = witt_matrix_inverse(untwist_matrix(g), M.p, M.field)
    f_ok = mat_mul(mat_mul(g, M.f_matrix), g_f_inv) == mat(M2.f_matrix)
    v_ok = mat_mul(mat_mul(g, M.v_matrix), g_fi_inv) == mat(M2.v_matrix)
    return f_ok and v_ok


def dual_operator_expectations(D: DisplayMatrix):
    """The transposed-and-swapped operator matrices predicted for the dual
    of a display over a finite field: the dual Frobenius is f(M_V)^t and
    the dual Verschiebung is f^{-1}(M_F)^t, both written in the plain dual
    basis (tests conjugate by the dual basis permutation)."""
    module = to_dieudonne(D)
    return (
        mat_transpose(twist_matrix(module.v_matrix)),
        mat_transpose(untwist_matrix(module.f_matrix)),
    )
