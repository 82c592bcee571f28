"""Exact arithmetic for the tower of base rings.

The tower consists of the integers, integers mod m, the rationals, finite
fields realized as univariate polynomial quotients, sparse multivariate
polynomial rings over any ring in the tower, and quotients of polynomial
rings by a power of an ideal generated by variables and (optionally) a
prime number.

Every element is stored in a canonical reduced payload so that structural
equality of payloads coincides with equality in the ring.  All values are
immutable and all operations are pure functions; nothing in this module
holds mutable global state.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import NotAUnitError, RingMismatchError

_NEWTON_GUARD = 64


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class Ring:
    """Base class.  Subclasses implement arithmetic on raw payloads.

    Payloads are hashable canonical values (ints, Fractions, or nested
    tuples).  The public surface wraps payloads in :class:`RingElement`.
    """

    def descriptor(self) -> tuple:
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, Ring) and self.descriptor() == other.descriptor()

    def __hash__(self):
        return hash(self.descriptor())

    # -- payload arithmetic ------------------------------------------------

    def zero_payload(self):
        raise NotImplementedError

    def one_payload(self):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def is_zero(self, a) -> bool:
        return a == self.zero_payload()

    def pow_payload(self, a, n: int):
        if n < 0:
            return self.pow_payload(self.invert(a), -n)
        result = self.one_payload()
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base) if n > 1 else base
            n >>= 1
        return result

    def coerce_int(self, n: int):
        """The canonical image of the integer n."""
        result = self.zero_payload()
        one = self.one_payload()
        neg = n < 0
        for _ in range(abs(n)):
            result = self.add(result, one)
        return self.neg(result) if neg else result

    def characteristic(self) -> int:
        raise NotImplementedError

    def is_unit(self, a) -> bool:
        raise NotImplementedError

    def invert(self, a):
        raise NotImplementedError

    def is_nilpotent_payload(self, a) -> bool:
        raise NotImplementedError

    def frobenius(self, a):
        """a^p where p is the (prime) characteristic."""
        p = self.characteristic()
        if not _is_prime(p):
            raise RingMismatchError(
                f"frobenius requires prime characteristic, got {p}"
            )
        return self.pow_payload(a, p)

    def divexact_int(self, a, n: int):
        """Exact division of a payload by a nonzero integer.

        Only supported on torsion-free rings (used by the Witt-vector
        engine through lifts); raises on non-exact division.
        """
        raise NotImplementedError(f"{self!r} does not support exact integer division")

    def render(self, a) -> str:
        raise NotImplementedError

    # -- wrapping ----------------------------------------------------------

    def element(self, payload) -> "RingElement":
        return RingElement(self, payload)

    def zero(self) -> "RingElement":
        return self.element(self.zero_payload())

    def one(self) -> "RingElement":
        return self.element(self.one_payload())

    def __call__(self, value) -> "RingElement":
        if isinstance(value, RingElement):
            if value.ring == self:
                return value
            return convert(value, self)
        if isinstance(value, int):
            return self.element(self.coerce_int(value))
        if isinstance(value, Fraction):
            return convert(QQ.element(value), self)
        raise TypeError(f"cannot coerce {value!r} into {self!r}")


class RingElement:
    """An immutable element of a ring: a ring reference plus a payload."""

    __slots__ = ("ring", "payload")

    def __init__(self, ring: Ring, payload):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "payload", payload)

    def __setattr__(self, name, value):
        raise AttributeError("RingElement is immutable")

    def _coerce(self, other) -> "RingElement":
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise RingMismatchError(
                    f"ring mismatch: {self.ring!r} vs {other.ring!r}"
                )
            return other
        if isinstance(other, int):
            return self.ring(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RingElement(self.ring, self.ring.add(self.payload, other.payload))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RingElement(self.ring, self.ring.sub(self.payload, other.payload))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RingElement(self.ring, self.ring.mul(self.payload, other.payload))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElement(self.ring, self.ring.neg(self.payload))

    def __pow__(self, n: int):
        return RingElement(self.ring, self.ring.pow_payload(self.payload, n))

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring(other)
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.ring == other.ring and self.payload == other.payload

    def __hash__(self):
        return hash((self.ring, self.payload))

    def __bool__(self):
        return not self.is_zero()

    def is_zero(self) -> bool:
        return self.ring.is_zero(self.payload)

    def is_unit(self) -> bool:
        return self.ring.is_unit(self.payload)

    def invert(self) -> "RingElement":
        return RingElement(self.ring, self.ring.invert(self.payload))

    def is_nilpotent(self) -> bool:
        return self.ring.is_nilpotent_payload(self.payload)

    def __repr__(self):
        return self.ring.render(self.payload)


# ---------------------------------------------------------------------------
# The integers and the rationals


class IntegerRing(Ring):
    def descriptor(self):
        return ("integers",)

    def zero_payload(self):
        return 0

    def one_payload(self):
        return 1

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def pow_payload(self, a, n):
        if n < 0:
            return self.pow_payload(self.invert(a), -n)
        return a**n

    def coerce_int(self, n):
        return n

    def characteristic(self):
        return 0

    def is_unit(self, a):
        return a in (1, -1)

    def invert(self, a):
        if a in (1, -1):
            return a
        raise NotAUnitError(f"{a} is not a unit in Z")

    def is_nilpotent_payload(self, a):
        return a == 0

    def divexact_int(self, a, n):
        q, r = divmod(a, n)
        if r != 0:
            raise RuntimeError(f"non-exact division of {a} by {n}")
        return q

    def render(self, a):
        return str(a)

    def __repr__(self):
        return "Z"


class RationalField(Ring):
    def descriptor(self):
        return ("rationals",)

    def zero_payload(self):
        return Fraction(0)

    def one_payload(self):
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def pow_payload(self, a, n):
        if n < 0 and a == 0:
            raise NotAUnitError("division by zero in Q")
        return a**n

    def coerce_int(self, n):
        return Fraction(n)

    def characteristic(self):
        return 0

    def is_unit(self, a):
        return a != 0

    def invert(self, a):
        if a == 0:
            raise NotAUnitError("0 is not a unit in Q")
        return 1 / a

    def is_nilpotent_payload(self, a):
        return a == 0

    def divexact_int(self, a, n):
        return a / n

    def __call__(self, value):
        if isinstance(value, Fraction):
            return self.element(value)
        return super().__call__(value)

    def render(self, a):
        return str(a)

    def __repr__(self):
        return "Q"


ZZ = IntegerRing()
QQ = RationalField()


# ---------------------------------------------------------------------------
# Integers mod m


class IntegersMod(Ring):
    def __init__(self, modulus: int):
        if modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {modulus}")
        self.modulus = modulus

    def descriptor(self):
        return ("integers_mod", self.modulus)

    def zero_payload(self):
        return 0

    def one_payload(self):
        return 1 % self.modulus

    def add(self, a, b):
        return (a + b) % self.modulus

    def neg(self, a):
        return (-a) % self.modulus

    def mul(self, a, b):
        return (a * b) % self.modulus

    def pow_payload(self, a, n):
        if n < 0:
            return self.pow_payload(self.invert(a), -n)
        return pow(a, n, self.modulus)

    def coerce_int(self, n):
        return n % self.modulus

    def characteristic(self):
        return self.modulus

    def is_unit(self, a):
        import math

        return math.gcd(a, self.modulus) == 1

    def invert(self, a):
        try:
            return pow(a, -1, self.modulus)
        except ValueError:
            raise NotAUnitError(f"{a} is not a unit in Z/{self.modulus}") from None

    def is_nilpotent_payload(self, a):
        return pow(a, self.modulus, self.modulus) == 0

    def render(self, a):
        return str(a)

    def __repr__(self):
        return f"Z/{self.modulus}"


# ---------------------------------------------------------------------------
# Univariate polynomial quotients and finite fields

# Dense univariate helpers over Z/p, used for irreducibility testing.


def _upoly_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _upoly_mod(num, den, p):
    """Remainder of num by monic den, coefficients mod p (little-endian lists)."""
    num = [x % p for x in num]
    d = len(den) - 1
    while len(_upoly_trim(num)) - 1 >= d:
        num = _upoly_trim(num)
        shift = len(num) - 1 - d
        lead = num[-1]
        for i, coeff in enumerate(den):
            num[shift + i] = (num[shift + i] - lead * coeff) % p
        num = _upoly_trim(num)
        if not num:
            break
    return _upoly_trim(num)


def _monic_polys(p: int, degree: int):
    """All monic polynomials of the given degree over Z/p (little-endian)."""

    def rec(k):
        if k == 0:
            yield []
            return
        for rest in rec(k - 1):
            for c in range(p):
                yield [c] + rest

    for lower in rec(degree):
        yield lower + [1]


def irreducible_mod_p(coeffs, p: int) -> bool:
    """Brute-force irreducibility of a monic polynomial over Z/p."""
    coeffs = [c % p for c in coeffs]
    degree = len(coeffs) - 1
    if degree < 1 or coeffs[-1] != 1:
        return False
    if coeffs[0] == 0:
        return degree == 1
    for d in range(1, degree // 2 + 1):
        for cand in _monic_polys(p, d):
            if not _upoly_mod(coeffs, cand, p):
                return False
    return True


def default_irreducible(p: int, degree: int):
    """The lexicographically first monic irreducible of the given degree."""
    if degree == 1:
        return (0, 1)
    for cand in _monic_polys(p, degree):
        if irreducible_mod_p(cand, p):
            return tuple(cand)
    raise ValueError(f"no irreducible polynomial of degree {degree} over Z/{p}")


class UnivariatePolyQuotient(Ring):
    """base[var] / (monic modulus).  Payload: fixed-length coefficient tuple.

    Used both for finite fields (base = Z/p, irreducible modulus) and as a
    torsion-free cover of a finite field (base = Z, lifted modulus).
    """

    def __init__(self, base: Ring, modulus, var_name: str = "z"):
        modulus = tuple(modulus)
        if len(modulus) < 2 or modulus[-1] != base.one_payload():
            raise ValueError("modulus must be monic of degree >= 1")
        self.base = base
        self.modulus = modulus
        self.var_name = var_name
        self.degree = len(modulus) - 1

    def descriptor(self):
        return ("uni_quotient", self.base.descriptor(), self.modulus, self.var_name)

    def zero_payload(self):
        return (self.base.zero_payload(),) * self.degree

    def one_payload(self):
        return (self.base.one_payload(),) + (self.base.zero_payload(),) * (
            self.degree - 1
        )

    def gen(self) -> RingElement:
        if self.degree == 1:
            return self.element(self._reduce([self.base.zero_payload(),
                                              self.base.one_payload()]))
        pay = [self.base.zero_payload()] * self.degree
        pay[1] = self.base.one_payload()
        return self.element(tuple(pay))

    def _reduce(self, coeffs):
        """Reduce a little-endian list of base payloads by the monic modulus."""
        coeffs = list(coeffs)
        m = self.degree
        for i in range(len(coeffs) - 1, m - 1, -1):
            lead = coeffs[i]
            if self.base.is_zero(lead):
                continue
            shift = i - m
            for j in range(m + 1):
                coeffs[shift + j] = self.base.sub(
                    coeffs[shift + j], self.base.mul(lead, self.modulus[j])
                )
        coeffs = coeffs[:m] + [self.base.zero_payload()] * (m - len(coeffs))
        return tuple(coeffs[:m])

    def add(self, a, b):
        return tuple(self.base.add(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.base.neg(x) for x in a)

    def mul(self, a, b):
        m = self.degree
        acc = [self.base.zero_payload()] * (2 * m - 1)
        for i, x in enumerate(a):
            if self.base.is_zero(x):
                continue
            for j, y in enumerate(b):
                if self.base.is_zero(y):
                    continue
                acc[i + j] = self.base.add(acc[i + j], self.base.mul(x, y))
        return self._reduce(acc)

    def coerce_int(self, n):
        pay = [self.base.zero_payload()] * self.degree
        pay[0] = self.base.coerce_int(n)
        return tuple(pay)

    def characteristic(self):
        return self.base.characteristic()

    def is_unit(self, a):
        raise NotImplementedError

    def invert(self, a):
        raise NotImplementedError

    def is_nilpotent_payload(self, a):
        return all(self.base.is_nilpotent_payload(c) for c in a)

    def divexact_int(self, a, n):
        return tuple(self.base.divexact_int(c, n) for c in a)

    def __call__(self, value):
        if isinstance(value, (list, tuple)):
            pay = [self.base.coerce_int(c) if isinstance(c, int) else c for c in value]
            if len(pay) > self.degree:
                return self.element(self._reduce(pay))
            pay = pay + [self.base.zero_payload()] * (self.degree - len(pay))
            return self.element(tuple(pay))
        return super().__call__(value)

    def render(self, a):
        terms = []
        for i in range(self.degree - 1, -1, -1):
            c = a[i]
            if self.base.is_zero(c):
                continue
            if i == 0:
                terms.append(self.base.render(c))
            else:
                mono = self.var_name if i == 1 else f"{self.var_name}^{i}"
                cs = self.base.render(c)
                terms.append(mono if cs == "1" else f"{cs}*{mono}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        mod = self.render(tuple(self.modulus[: self.degree]))
        return f"{self.base!r}[{self.var_name}]/({self.var_name}^{self.degree} + {mod})"


class FiniteField(UnivariatePolyQuotient):
    """F_{p^m} as Z/p[z] modulo a monic irreducible of degree m."""

    def __init__(self, p: int, degree: int = 1, modulus=None, var_name: str = "z"):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        if degree < 1:
            raise ValueError("extension degree must be >= 1")
        if modulus is None:
            modulus = default_irreducible(p, degree)
        modulus = tuple(c % p for c in modulus)
        if len(modulus) - 1 != degree:
            raise ValueError("modulus degree does not match extension degree")
        if not irreducible_mod_p(list(modulus), p):
            raise ValueError("defining polynomial is not irreducible")
        super().__init__(IntegersMod(p), modulus, var_name)
        self.p = p

    def descriptor(self):
        return ("finite_field", self.p, self.degree, self.modulus, self.var_name)

    @property
    def order(self) -> int:
        return self.p**self.degree

    def characteristic(self):
        return self.p

    def is_unit(self, a):
        return not self.is_zero(a)

    def invert(self, a):
        if self.is_zero(a):
            raise NotAUnitError(f"0 is not a unit in {self!r}")
        return self.pow_payload(a, self.order - 2)

    def is_nilpotent_payload(self, a):
        return self.is_zero(a)

    def frobenius(self, a):
        return self.pow_payload(a, self.p)

    def frobenius_inverse(self, a):
        """The inverse of x -> x^p; only finite fields support this exactly."""
        return self.pow_payload(a, self.p ** (self.degree - 1))

    def elements(self):
        """All field elements in deterministic payload order."""

        def rec(k):
            if k == 0:
                yield ()
                return
            for rest in rec(k - 1):
                for c in range(self.p):
                    yield (c,) + rest

        for pay in rec(self.degree):
            yield self.element(pay)

    def multiplicative_generator(self) -> RingElement:
        """The first field element (payload order) of order p^m - 1."""
        target = self.order - 1
        for elt in self.elements():
            if elt.is_zero():
                continue
            power = elt
            order = 1
            while power != self.one():
                power = power * elt
                order += 1
            if order == target:
                return elt
        raise RuntimeError("no multiplicative generator found")

    def __repr__(self):
        return f"F{self.order}" if self.degree > 1 else f"F{self.p}"


# ---------------------------------------------------------------------------
# Sparse multivariate polynomials


def _grlex_key(exps):
    return (sum(exps), exps)


class PolynomialRing(Ring):
    """Sparse multivariate polynomials over any base ring in the tower.

    Payload: tuple of (exponent-vector, base payload) pairs, sorted in
    descending graded-lexicographic order, zero coefficients dropped.
    """

    def __init__(self, base: Ring, names):
        names = tuple(names)
        if len(set(names)) != len(names) or not names:
            raise ValueError("variable names must be nonempty and distinct")
        self.base = base
        self.names = names
        self.nvars = len(names)

    def descriptor(self):
        return ("polynomial", self.base.descriptor(), self.names)

    def canonical(self, terms: dict):
        items = [
            (exps, coeff)
            for exps, coeff in terms.items()
            if not self.base.is_zero(coeff)
        ]
        items.sort(key=lambda t: _grlex_key(t[0]), reverse=True)
        return tuple(items)

    def zero_payload(self):
        return ()

    def one_payload(self):
        return (((0,) * self.nvars, self.base.one_payload()),)

    def constant(self, coeff_payload):
        if self.base.is_zero(coeff_payload):
            return ()
        return (((0,) * self.nvars, coeff_payload),)

    def gens(self):
        out = []
        for i in range(self.nvars):
            exps = tuple(1 if j == i else 0 for j in range(self.nvars))
            out.append(self.element(((exps, self.base.one_payload()),)))
        return out

    def gen(self, name: str) -> RingElement:
        return self.gens()[self.names.index(name)]

    def add(self, a, b):
        terms = dict(a)
        for exps, coeff in b:
            if exps in terms:
                terms[exps] = self.base.add(terms[exps], coeff)
            else:
                terms[exps] = coeff
        return self.canonical(terms)

    def neg(self, a):
        return tuple((exps, self.base.neg(coeff)) for exps, coeff in a)

    def mul(self, a, b):
        if not a or not b:
            return ()
        terms: dict = {}
        for ea, ca in a:
            for eb, cb in b:
                exps = tuple(x + y for x, y in zip(ea, eb))
                c = self.base.mul(ca, cb)
                if exps in terms:
                    terms[exps] = self.base.add(terms[exps], c)
                else:
                    terms[exps] = c
        return self.canonical(terms)

    def coerce_int(self, n):
        return self.constant(self.base.coerce_int(n))

    def characteristic(self):
        return self.base.characteristic()

    def constant_term(self, a):
        zero_exps = (0,) * self.nvars
        for exps, coeff in a:
            if exps == zero_exps:
                return coeff
        return self.base.zero_payload()

    def is_unit(self, a):
        # A polynomial is a unit iff its constant term is a unit and every
        # other coefficient is nilpotent.
        if not self.base.is_unit(self.constant_term(a)):
            return False
        zero_exps = (0,) * self.nvars
        return all(
            self.base.is_nilpotent_payload(coeff)
            for exps, coeff in a
            if exps != zero_exps
        )

    def invert(self, a):
        if not self.is_unit(a):
            raise NotAUnitError(f"{self.render(a)} is not a unit in {self!r}")
        return self._newton_invert(a, self.constant(self.base.invert(self.constant_term(a))))

    def _newton_invert(self, a, start):
        y = start
        one = self.one_payload()
        for _ in range(_NEWTON_GUARD):
            err = self.sub(one, self.mul(a, y))
            if not err:
                return y
            y = self.add(y, self.mul(y, err))
        raise NotAUnitError(f"inversion did not terminate for {self.render(a)}")

    def is_nilpotent_payload(self, a):
        return all(self.base.is_nilpotent_payload(coeff) for _, coeff in a)

    def frobenius(self, a):
        p = self.characteristic()
        if not _is_prime(p):
            raise RingMismatchError(
                f"frobenius requires prime characteristic, got {p}"
            )
        # (sum c*m)^p = sum c^p * m^p in characteristic p.
        return tuple(
            (tuple(e * p for e in exps), self.base.pow_payload(coeff, p))
            for exps, coeff in a
        )

    def divexact_int(self, a, n):
        return tuple((exps, self.base.divexact_int(coeff, n)) for exps, coeff in a)

    def total_degree(self, a) -> int:
        return max((sum(exps) for exps, _ in a), default=0)

    def render(self, a):
        if not a:
            return "0"
        parts = []
        for exps, coeff in a:
            factors = []
            for name, e in zip(self.names, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mono = "*".join(factors)
            cs = self.base.render(coeff)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append(f"-{mono}")
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"{self.base!r}[{','.join(self.names)}]"


# ---------------------------------------------------------------------------
# Quotients by powers of ideals generated by variables and a prime


class QuotientRing(Ring):
    """poly / (ideal generators)^M with eager monomial-ideal reduction.

    Generators must each be a single variable or a prime integer constant;
    this covers every ring the package needs while keeping normal forms
    cheap and unique (no Groebner machinery).
    """

    def __init__(self, poly: PolynomialRing, generators, exponent: int):
        if exponent < 1:
            raise ValueError("ideal power exponent must be >= 1")
        ideal_vars = set()
        const_gen = None
        for g in generators:
            pay = g.payload if isinstance(g, RingElement) else g
            if isinstance(g, RingElement) and g.ring != poly:
                raise RingMismatchError("ideal generators must live in the base polynomial ring")
            if isinstance(pay, int):
                kind, val = "const", pay
            else:
                kind, val = self._classify(poly, pay)
            if kind == "var":
                ideal_vars.add(val)
            elif kind == "zero":
                continue
            else:
                if const_gen is not None and const_gen != val:
                    raise ValueError("at most one constant ideal generator is supported")
                if not _is_prime(val):
                    raise ValueError(f"constant ideal generator must be prime, got {val}")
                base_char = poly.base.characteristic()
                if base_char:
                    reduced = val % base_char
                    if reduced == 0:
                        # The constant is already zero in the base; the ideal
                        # degenerates to its variable part.
                        continue
                    if base_char % val != 0:
                        raise ValueError(
                            f"constant generator {val} incompatible with base of characteristic {base_char}"
                        )
                const_gen = val
        self.poly = poly
        self.ideal_vars = frozenset(ideal_vars)
        self.const_gen = const_gen
        self.exponent = exponent

    @staticmethod
    def _classify(poly, payload):
        if not payload:
            return "zero", None
        if len(payload) != 1:
            raise ValueError("ideal generators must be variables or integer constants")
        exps, coeff = payload[0]
        if sum(exps) == 0:
            if isinstance(coeff, int):
                return "const", coeff
            raise ValueError("constant ideal generator must be an integer")
        if sum(exps) == 1 and coeff == poly.base.one_payload():
            return "var", exps.index(1)
        raise ValueError("ideal generators must be variables or integer constants")

    def descriptor(self):
        return (
            "quotient_power",
            self.poly.descriptor(),
            tuple(sorted(self.ideal_vars)),
            self.const_gen,
            self.exponent,
        )

    # -- reduction ---------------------------------------------------------

    def _ideal_degree(self, exps) -> int:
        return sum(exps[i] for i in self.ideal_vars)

    def _coeff_modulus(self, ideal_deg: int):
        """Modulus for coefficients of monomials of the given ideal degree."""
        if self.const_gen is None:
            return None
        import math

        q_pow = self.const_gen ** (self.exponent - ideal_deg)
        base_char = self.poly.base.characteristic()
        if base_char:
            return math.gcd(q_pow, base_char)
        return q_pow

    def reduce(self, payload):
        terms = {}
        base = self.poly.base
        for exps, coeff in payload:
            d = self._ideal_degree(exps)
            if d >= self.exponent:
                continue
            mod = self._coeff_modulus(d)
            if mod is not None:
                coeff = coeff % mod
            if not base.is_zero(coeff):
                terms[exps] = coeff
        return self.poly.canonical(terms)

    def zero_payload(self):
        return ()

    def one_payload(self):
        return self.reduce(self.poly.one_payload())

    def gens(self):
        return [self.element(self.reduce(g.payload)) for g in self.poly.gens()]

    def gen(self, name: str) -> RingElement:
        return self.gens()[self.poly.names.index(name)]

    def add(self, a, b):
        return self.reduce(self.poly.add(a, b))

    def neg(self, a):
        return self.reduce(self.poly.neg(a))

    def mul(self, a, b):
        return self.reduce(self.poly.mul(a, b))

    def coerce_int(self, n):
        return self.reduce(self.poly.coerce_int(n))

    def characteristic(self):
        base_char = self.poly.base.characteristic()
        if self.const_gen is None:
            return base_char
        import math

        q_pow = self.const_gen**self.exponent
        return math.gcd(q_pow, base_char) if base_char else q_pow

    # -- residue projection (strip the nilpotent ideal) ---------------------

    def residue_ring(self):
        base = self.poly.base
        if self.const_gen is not None:
            base = IntegersMod(self.const_gen)
        return PolynomialRing(base, self.poly.names)

    def residue_payload(self, a):
        res = self.residue_ring()
        terms = {}
        for exps, coeff in a:
            if self._ideal_degree(exps) > 0:
                continue
            c = coeff % self.const_gen if self.const_gen is not None else coeff
            if not res.base.is_zero(c):
                terms[exps] = c
        return res.canonical(terms)

    def is_unit(self, a):
        res = self.residue_ring()
        return res.is_unit(self.residue_payload(a))

    def invert(self, a):
        if not self.is_unit(a):
            raise NotAUnitError(f"{self.render(a)} is not a unit in {self!r}")
        res = self.residue_ring()
        start = res.invert(self.residue_payload(a))
        # Lift the residue inverse and refine by Newton iteration; the error
        # lies in the nilpotent ideal, so the loop terminates.
        y = self.reduce(start)
        one = self.one_payload()
        for _ in range(_NEWTON_GUARD):
            err = self.sub(one, self.mul(a, y))
            if not err:
                return y
            y = self.add(y, self.mul(y, err))
        raise NotAUnitError(f"inversion did not terminate for {self.render(a)}")

    def is_nilpotent_payload(self, a):
        res = self.residue_ring()
        return res.is_nilpotent_payload(self.residue_payload(a))

    def frobenius(self, a):
        p = self.characteristic()
        if not _is_prime(p):
            raise RingMismatchError(
                f"frobenius requires prime characteristic, got {p}"
            )
        return self.reduce(self.poly.frobenius(a))

    def divexact_int(self, a, n):
        if self.const_gen is not None:
            raise NotImplementedError("exact integer division needs a torsion-free quotient")
        return tuple((exps, self.poly.base.divexact_int(coeff, n)) for exps, coeff in a)

    def total_degree(self, a):
        return self.poly.total_degree(a)

    def render(self, a):
        return self.poly.render(a)

    def __repr__(self):
        gens = [self.poly.names[i] for i in sorted(self.ideal_vars)]
        if self.const_gen is not None:
            gens = [str(self.const_gen)] + gens
        return f"{self.poly!r}/({','.join(gens)})^{self.exponent}"


# ---------------------------------------------------------------------------
# Structural maps between rings


def convert(elt: RingElement, target: Ring) -> RingElement:
    """Canonical coercion of an element into a target ring.

    Supports: identity; Z into anything; Q into rings where denominators
    invert; Z/m into rings whose characteristic divides m; a base ring into
    a polynomial ring or quotient over it; a polynomial ring into a quotient
    of it (and into one of the same shape with a smaller exponent).
    """
    src = elt.ring
    if src == target:
        return elt
    if isinstance(src, IntegerRing):
        return target.element(target.coerce_int(elt.payload))
    if isinstance(src, RationalField):
        num = target.element(target.coerce_int(elt.payload.numerator))
        den = target.element(target.coerce_int(elt.payload.denominator))
        return num * den.invert()
    if isinstance(src, IntegersMod):
        c = target.characteristic()
        if c == 0 or src.modulus % c != 0:
            raise RingMismatchError(f"no canonical map {src!r} -> {target!r}")
        return target.element(target.coerce_int(elt.payload))
    if isinstance(target, QuotientRing):
        if src == target.poly:
            return target.element(target.reduce(elt.payload))
        if (
            isinstance(src, QuotientRing)
            and src.poly == target.poly
            and src.ideal_vars == target.ideal_vars
            and src.const_gen == target.const_gen
            and src.exponent >= target.exponent
        ):
            return target.element(target.reduce(elt.payload))
        if src == target.poly.base:
            return target.element(target.reduce(target.poly.constant(elt.payload)))
    if isinstance(target, PolynomialRing) and src == target.base:
        return target.element(target.constant(elt.payload))
    raise RingMismatchError(f"no canonical map {src!r} -> {target!r}")


def substitute(elt: RingElement, assignment: dict, target: Ring) -> RingElement:
    """Evaluate a polynomial (or quotient) element under variable assignments.

    Every variable of the source ring must be assigned an element of the
    target ring; coefficients are carried over by :func:`convert`.  The
    resulting map is a ring homomorphism in ``elt`` for any fixed assignment.
    """
    src = elt.ring
    if isinstance(src, QuotientRing):
        poly = src.poly
    elif isinstance(src, PolynomialRing):
        poly = src
    else:
        raise RingMismatchError(f"substitute requires a polynomial-type ring, got {src!r}")
    values = []
    for name in poly.names:
        if name not in assignment:
            raise ValueError(f"no assignment for variable {name}")
        val = assignment[name]
        if not isinstance(val, RingElement) or val.ring != target:
            raise RingMismatchError(f"assignment for {name} is not in the target ring")
        values.append(val)
    base_elt = lambda c: convert(RingElement(poly.base, c), target)
    result = target.zero()
    powers = [{} for _ in values]

    def var_power(i, e):
        if e == 0:
            return target.one()
        cache = powers[i]
        if e not in cache:
            cache[e] = values[i] ** e
        return cache[e]

    for exps, coeff in elt.payload:
        term = base_elt(coeff)
        for i, e in enumerate(exps):
            if e:
                term = term * var_power(i, e)
        result = result + term
    return result


def derivative(elt: RingElement, name: str) -> RingElement:
    """Formal partial derivative with respect to a named variable.

    On a quotient ring the derivative is taken on the canonical
    representative; for power-ideal truncations this is well defined up to
    one step of the ideal filtration, which is all the Jacobian unit tests
    need.
    """
    src = elt.ring
    poly = src.poly if isinstance(src, QuotientRing) else src
    if not isinstance(poly, PolynomialRing):
        raise RingMismatchError(f"derivative requires a polynomial-type ring, got {src!r}")
    idx = poly.names.index(name)
    terms = {}
    for exps, coeff in elt.payload:
        e = exps[idx]
        if e == 0:
            continue
        new_exps = tuple(x - 1 if i == idx else x for i, x in enumerate(exps))
        c = poly.base.mul(coeff, poly.base.coerce_int(e))
        if new_exps in terms:
            c = poly.base.add(terms[new_exps], c)
        terms[new_exps] = c
    payload = poly.canonical(terms)
    if isinstance(src, QuotientRing):
        payload = src.reduce(payload)
    return src.element(payload)


def frobenius_power(elt: RingElement) -> RingElement:
    """x -> x^p on a ring of prime characteristic p (a ring homomorphism)."""
    return elt.ring.element(elt.ring.frobenius(elt.payload))


def mod_p_reduction(ring: Ring, p: int):
    """The quotient map R -> R/(p), returned as (ring, payload map).

    Raises when p is invertible in R (e.g. over the rationals).
    """
    if isinstance(ring, IntegerRing):
        target = IntegersMod(p)
        return target, lambda a: a % p
    if isinstance(ring, IntegersMod):
        if ring.modulus % p != 0:
            raise RingMismatchError(f"{p} is a unit in {ring!r}")
        target = IntegersMod(p)
        return target, lambda a: a % p
    if isinstance(ring, FiniteField):
        if ring.p != p:
            raise RingMismatchError(f"{ring!r} has characteristic {ring.p}, not {p}")
        return ring, lambda a: a
    if isinstance(ring, PolynomialRing):
        base_t, base_map = mod_p_reduction(ring.base, p)
        target = PolynomialRing(base_t, ring.names)

        def poly_map(a, target=target, base_map=base_map):
            return target.canonical({exps: base_map(c) for exps, c in a})

        return target, poly_map
    if isinstance(ring, QuotientRing):
        if ring.const_gen is not None and ring.const_gen != p:
            raise RingMismatchError(f"{ring!r} cannot be reduced mod {p}")
        base_t, base_map = mod_p_reduction(ring.poly.base, p)
        poly_t = PolynomialRing(base_t, ring.poly.names)
        gens = [poly_t.gens()[i] for i in sorted(ring.ideal_vars)]
        target = QuotientRing(poly_t, gens, ring.exponent)

        def quot_map(a, target=target, base_map=base_map):
            return target.reduce(
                target.poly.canonical({exps: base_map(c) for exps, c in a})
            )

        return target, quot_map
    raise RingMismatchError(f"no characteristic-p quotient for {ring!r}")


def torsion_free_cover(ring: Ring):
    """A torsion-free ring covering R, with a set-theoretic lift and the
    projection ring homomorphism (both at payload level).

    The Witt-vector engine runs its exact-division recursions in the cover.
    """
    if isinstance(ring, (IntegerRing, RationalField)):
        ident = lambda a: a
        return ring, ident, ident
    if isinstance(ring, FiniteField):
        cover = UnivariatePolyQuotient(ZZ, tuple(int(c) for c in ring.modulus), ring.var_name)
        lift = lambda a: tuple(int(c) for c in a)
        project = lambda a, p=ring.p: tuple(c % p for c in a)
        return cover, lift, project
    if isinstance(ring, IntegersMod):
        m = ring.modulus
        return ZZ, (lambda a: a), (lambda a: a % m)
    if isinstance(ring, UnivariatePolyQuotient):
        base_cover, base_lift, base_project = torsion_free_cover(ring.base)
        if base_cover == ring.base:
            ident = lambda a: a
            return ring, ident, ident
        cover = UnivariatePolyQuotient(
            base_cover, tuple(base_lift(c) for c in ring.modulus), ring.var_name
        )
        lift = lambda a: tuple(base_lift(c) for c in a)
        project = lambda a: tuple(base_project(c) for c in a)
        return cover, lift, project
    if isinstance(ring, PolynomialRing):
        base_cover, base_lift, base_project = torsion_free_cover(ring.base)
        if base_cover == ring.base:
            ident = lambda a: a
            return ring, ident, ident
        cover = PolynomialRing(base_cover, ring.names)
        lift = lambda a: tuple((exps, base_lift(c)) for exps, c in a)

        def project(a, ring=ring, base_project=base_project):
            return ring.canonical({exps: base_project(c) for exps, c in a})

        return cover, lift, project
    if isinstance(ring, QuotientRing):
        base_cover, base_lift, base_project = torsion_free_cover(ring.poly.base)
        cover_poly = PolynomialRing(base_cover, ring.poly.names)
        gens = [cover_poly.gens()[i] for i in sorted(ring.ideal_vars)]
        if not gens and ring.const_gen is not None:
            # Purely arithmetic truncation: cover by the plain polynomial ring.
            cover = cover_poly
            lift = lambda a: tuple((exps, base_lift(c)) for exps, c in a)

            def project(a, ring=ring, base_project=base_project):
                return ring.reduce(
                    ring.poly.canonical({exps: base_project(c) for exps, c in a})
                )

            return cover, lift, project
        cover = QuotientRing(cover_poly, gens, ring.exponent) if gens else cover_poly
        lift = lambda a: tuple((exps, base_lift(c)) for exps, c in a)

        def project(a, ring=ring, base_project=base_project):
            return ring.reduce(
                ring.poly.canonical({exps: base_project(c) for exps, c in a})
            )

        return cover, lift, project
    raise RingMismatchError(f"no torsion-free cover for {ring!r}")


def p_nilpotence_exponent(ring: Ring, p: int):
    """Smallest s with p^s = 0 in R, or None when p is not nilpotent."""
    c = ring.characteristic()
    if c == 0:
        return None
    s = 0
    while c % p == 0:
        c //= p
        s += 1
    return s if c == 1 else None


def poly_exact_divide(ring: PolynomialRing, a, b):
    """Exact division of payload a by payload b, or None when not divisible.

    Standard leading-term long division in the graded-lexicographic order;
    over a domain this decides exact divisibility.  Coefficient division is
    supported over Z (exact), Q, and the finite-field bases.
    """
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    base = ring.base
    b_exps, b_coeff = b[0]

    def coeff_div(x):
        if isinstance(base, IntegerRing):
            q, r = divmod(x, b_coeff)
            return q if r == 0 else None
        try:
            return base.mul(x, base.invert(b_coeff))
        except NotAUnitError:
            return None

    remainder = dict(a)
    quotient: dict = {}
    while remainder:
        lead = max(remainder, key=_grlex_key)
        exps = tuple(x - y for x, y in zip(lead, b_exps))
        if any(e < 0 for e in exps):
            return None
        q = coeff_div(remainder[lead])
        if q is None:
            return None
        quotient[exps] = base.add(quotient.get(exps, base.zero_payload()), q)
        for be, bc in b:
            key = tuple(x + y for x, y in zip(exps, be))
            val = base.sub(
                remainder.get(key, base.zero_payload()), base.mul(q, bc)
            )
            if base.is_zero(val):
                remainder.pop(key, None)
            else:
                remainder[key] = val
    return ring.canonical(quotient)


def ring_arith(op: str, x: RingElement, y: RingElement = None) -> RingElement:
    """Dispatch table around the element operators (CLI convenience)."""
    if op == "neg":
        return -x
    if y is None:
        raise ValueError(f"operation {op} needs two operands")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise ValueError(f"unknown operation {op!r}")
