"""Tests for the exact ring tower."""

import random

import pytest

from wittdisplays.errors import NotAUnitError, RingMismatchError
from wittdisplays.rings import (
    FiniteField,
    IntegersMod,
    PolynomialRing,
    QQ,
    QuotientRing,
    ZZ,
    convert,
    derivative,
    frobenius_power,
    irreducible_mod_p,
    mod_p_reduction,
    poly_exact_divide,
    ring_arith,
    substitute,
    torsion_free_cover,
)


def quotient(base, names, gens, exponent):
    poly = PolynomialRing(base, names)
    elems = [g if isinstance(g, int) else poly.gen(g) for g in gens]
    return QuotientRing(poly, elems, exponent)


def test_modular_addition():
    Z7 = IntegersMod(7)
    assert Z7(3) + Z7(5) == Z7(1)


def test_square_zero_variable():
    R = quotient(ZZ, ["u1"], ["u1"], 2)
    u1 = R.gen("u1")
    assert (u1 * u1).is_zero()


def test_polynomial_identity():
    Zx = PolynomialRing(ZZ, ["x"])
    x = Zx.gen("x")
    assert (x + 1) * (x - 1) == x * x - 1


def test_invert_mod_nine():
    Z9 = IntegersMod(9)
    assert Z9(2).invert() == Z9(5)


def test_variable_not_unit_in_truncation():
    R = quotient(IntegersMod(9), ["u1"], [3, "u1"], 3)
    assert not R.gen("u1").is_unit()


def test_geometric_series_inverse():
    R = quotient(QQ, ["u1"], ["u1"], 3)
    u1 = R.gen("u1")
    inv = (R.one() + u1).invert()
    assert inv == R.one() - u1 + u1 * u1
    assert inv * (R.one() + u1) == R.one()


def test_invert_non_unit_raises():
    with pytest.raises(NotAUnitError):
        IntegersMod(9)(3).invert()
    with pytest.raises(NotAUnitError):
        quotient(QQ, ["u1"], ["u1"], 3).gen("u1").invert()


def test_frobenius_freshman_dream():
    F2uv = PolynomialRing(IntegersMod(2), ["u1", "u2"])
    u1, u2 = F2uv.gens()
    assert frobenius_power(u1 + u2) == u1 * u1 + u2 * u2


def test_frobenius_fixes_prime_field():
    for p in (2, 3, 5):
        Fp = IntegersMod(p)
        for c in range(p):
            assert frobenius_power(Fp(c)) == Fp(c)


def test_frobenius_on_f4():
    F4 = FiniteField(2, 2)
    z = F4.gen()
    assert frobenius_power(z) == z + 1
    assert F4.modulus == (1, 1, 1)  # z^2 + z + 1


def test_frobenius_requires_char_p():
    with pytest.raises(RingMismatchError):
        frobenius_power(ZZ(2))
    with pytest.raises(RingMismatchError):
        frobenius_power(IntegersMod(4)(3))


def test_substitution_examples():
    R = PolynomialRing(ZZ, ["u1"])
    u1 = R.gen("u1")
    assert substitute(u1 * u1 + 1, {"u1": ZZ(0)}, ZZ) == ZZ(1)

    p = 3
    Q3 = quotient(QQ, ["u1"], ["u1"], 30)
    u = Q3.gen("u1")
    once = substitute(u, {"u1": u**p}, Q3)
    twice = substitute(once, {"u1": u**p}, Q3)
    assert twice == u ** (p * p)

    R2 = PolynomialRing(ZZ, ["u1", "u2"])
    u1, u2 = R2.gens()
    assert substitute(u1 * u2, {"u1": ZZ(1), "u2": ZZ(2)}, ZZ) == ZZ(2)


def test_substitution_missing_variable():
    R = PolynomialRing(ZZ, ["u1", "u2"])
    with pytest.raises(ValueError):
        substitute(R.gen("u1"), {"u1": ZZ(1)}, ZZ)


def test_ring_mismatch():
    with pytest.raises(RingMismatchError):
        IntegersMod(5)(1) + IntegersMod(7)(1)


@pytest.mark.parametrize(
    "ring",
    [
        ZZ,
        QQ,
        IntegersMod(7),
        IntegersMod(8),
        FiniteField(3, 2),
        PolynomialRing(ZZ, ["x", "y"]),
        quotient(IntegersMod(9), ["u1", "u2"], [3, "u1"], 3),
        quotient(QQ, ["u1"], ["u1"], 4),
    ],
)
def test_ring_axioms_random(ring):
    rng = random.Random(17)

    def rand():
        if ring is ZZ:
            return ring(rng.randint(-10, 10))
        if ring is QQ:
            from fractions import Fraction

            return ring(Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
        if isinstance(ring, FiniteField):
            return ring.element(tuple(rng.randrange(ring.p) for _ in range(ring.degree)))
        if isinstance(ring, IntegersMod):
            return ring(rng.randrange(ring.modulus))
        poly = ring.poly if isinstance(ring, QuotientRing) else ring
        terms = {}
        for _ in range(3):
            exps = tuple(rng.randrange(3) for _ in range(poly.nvars))
            terms[exps] = poly.base.coerce_int(rng.randint(-4, 4))
        payload = poly.canonical(terms)
        if isinstance(ring, QuotientRing):
            payload = ring.reduce(payload)
        return ring.element(payload)

    for _ in range(25):
        a, b, c = rand(), rand(), rand()
        assert a + b == b + a
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + (-a) == ring.zero()
        # canonical form: a - b vanishes exactly when a equals b
        assert ((a - b).is_zero()) == (a == b)
        if a.is_unit():
            assert a.invert() * a == ring.one()


def test_frobenius_is_homomorphism_char_p():
    rng = random.Random(5)
    for ring in (IntegersMod(5), FiniteField(2, 3),
                 quotient(IntegersMod(3), ["u"], ["u"], 4)):
        p = ring.characteristic()
        for _ in range(20):
            if isinstance(ring, FiniteField):
                a = ring.element(tuple(rng.randrange(ring.p) for _ in range(ring.degree)))
                b = ring.element(tuple(rng.randrange(ring.p) for _ in range(ring.degree)))
            elif isinstance(ring, IntegersMod):
                a, b = ring(rng.randrange(p)), ring(rng.randrange(p))
            else:
                u = ring.gen("u")
                a = ring(rng.randrange(p)) + ring(rng.randrange(p)) * u
                b = ring(rng.randrange(p)) + ring(rng.randrange(p)) * u * u
            assert frobenius_power(a + b) == frobenius_power(a) + frobenius_power(b)
            assert frobenius_power(a * b) == frobenius_power(a) * frobenius_power(b)


def test_quotient_coefficient_truncation():
    # (p, u1)^3 over Z: coefficient of u1^d is reduced mod p^(3-d)
    R = quotient(ZZ, ["u1"], [2, "u1"], 3)
    u1 = R.gen("u1")
    assert R(8).is_zero()
    assert not R(4).is_zero()
    assert not (R(2) * u1).is_zero()
    assert (R(4) * u1).is_zero()
    assert (R(2) * u1 * u1).is_zero()
    assert (u1 * u1 * u1).is_zero()


def test_quotient_without_constant():
    R = quotient(QQ, ["u1", "u2"], ["u1", "u2"], 3)
    u1, u2 = R.gen("u1"), R.gen("u2")
    assert (u1 * u2 * u1).is_zero()
    assert not (u1 * u2).is_zero()


def test_unit_with_free_variable_is_rejected():
    # u2 is not in the ideal: 1 + u2 must not be a unit
    R = quotient(IntegersMod(4), ["u1", "u2"], [2, "u1"], 3)
    x = R.one() + R.gen("u2")
    assert not x.is_unit()
    assert (R.one() + R.gen("u1")).is_unit()


def test_polynomial_unit_with_nilpotent_coefficients():
    R = PolynomialRing(IntegersMod(4), ["x"])
    x = R.gen("x")
    elt = R.one() + R(2) * x
    assert elt.is_unit()
    assert elt.invert() * elt == R.one()
    assert not x.is_unit()


def test_finite_field_structure():
    F9 = FiniteField(3, 2)
    assert irreducible_mod_p(list(F9.modulus), 3)
    elements = list(F9.elements())
    assert len(elements) == 9
    g = F9.multiplicative_generator()
    order = 1
    power = g
    while power != F9.one():
        power = power * g
        order += 1
    assert order == 8
    # inverse Frobenius really inverts
    for elt in elements:
        fro = frobenius_power(elt)
        back = F9.element(F9.frobenius_inverse(fro.payload))
        assert back == elt


def test_mod_p_reduction_tower():
    R = quotient(IntegersMod(4), ["u1", "u2"], [2, "u1"], 3)
    Rp, mapping = mod_p_reduction(R, 2)
    one = Rp.element(mapping(R.one().payload))
    assert one == Rp.one()
    # 2 dies, u1 survives with nilpotence exponent 3
    two = Rp.element(mapping(R(2).payload))
    assert two.is_zero()
    u1 = Rp.element(mapping(R.gen("u1").payload))
    cube = u1 * u1 * u1
    assert cube.is_zero()
    with pytest.raises(RingMismatchError):
        mod_p_reduction(QQ, 3)


def test_torsion_free_cover_projects_back():
    rng = random.Random(3)
    for ring in (IntegersMod(8), FiniteField(3, 2),
                 quotient(IntegersMod(9), ["u"], [3, "u"], 2)):
        cover, lift, project = torsion_free_cover(ring)
        assert cover.characteristic() == 0
        for _ in range(10):
            if isinstance(ring, FiniteField):
                x = ring.element(tuple(rng.randrange(3) for _ in range(2)))
            elif isinstance(ring, IntegersMod):
                x = ring(rng.randrange(ring.modulus))
            else:
                x = ring(rng.randrange(9)) + ring(rng.randrange(9)) * ring.gen("u")
            assert project(lift(x.payload)) == x.payload


def test_exact_division():
    R = PolynomialRing(ZZ, ["x", "y"])
    x, y = R.gens()
    a = (x + y) * (x - y)
    q = poly_exact_divide(R, a.payload, (x + y).payload)
    assert q == (x - y).payload
    assert poly_exact_divide(R, (x * x + 1).payload, (x + y).payload) is None


def test_derivative():
    R = quotient(IntegersMod(4), ["u1"], [2, "u1"], 3)
    u1 = R.gen("u1")
    assert derivative(u1 * u1, "u1") == R(2) * u1
    assert derivative(R.one(), "u1").is_zero()


def test_ring_arith_dispatch():
    assert ring_arith("add", ZZ(2), ZZ(3)) == ZZ(5)
    assert ring_arith("neg", ZZ(2)) == ZZ(-2)
    with pytest.raises(ValueError):
        ring_arith("add", ZZ(1))


def test_descriptor_equality():
    assert PolynomialRing(ZZ, ["x"]) == PolynomialRing(ZZ, ["x"])
    assert PolynomialRing(ZZ, ["x"]) != PolynomialRing(ZZ, ["y"])
    assert IntegersMod(4) != IntegersMod(8)
    assert FiniteField(2, 2) == FiniteField(2, 2, (1, 1, 1))


def test_convert_rules():
    R = quotient(IntegersMod(4), ["u1"], [2, "u1"], 3)
    assert convert(ZZ(5), R) == R(5)
    assert convert(IntegersMod(8)(5), IntegersMod(4)) == IntegersMod(4)(1)
    with pytest.raises(RingMismatchError):
        convert(IntegersMod(5)(1), IntegersMod(4))
    smaller = quotient(IntegersMod(4), ["u1"], [2, "u1"], 2)
    x = R.gen("u1") + R(2)
    assert convert(x, smaller) == smaller.gen("u1") + smaller(2)
