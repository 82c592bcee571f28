"""Exact arithmetic for truncated p-typical Witt vectors, displays in
matrix form over the Witt vectors, and the algebraic approximation of the
period map.  Everything is computed exactly (big integers, fractions,
sparse polynomials); there is no floating point anywhere."""

from .errors import (
    AlgebraError,
    NotAUnitError,
    PrecisionError,
    RingMismatchError,
    ResourceLimitError,
)
from .rings import (
    FiniteField,
    IntegerRing,
    IntegersMod,
    PolynomialRing,
    QQ,
    QuotientRing,
    RationalField,
    Ring,
    RingElement,
    ZZ,
    convert,
    derivative,
    frobenius_power,
    mod_p_reduction,
    ring_arith,
    substitute,
)
from .witt import (
    WittVector,
    from_int,
    generate_universal_polynomials,
    one,
    teichmuller,
    zero,
)

__version__ = "0.1.0"
