"""Truncated p-typical Witt vectors W_N(R).

Arithmetic is defined by requiring the ghost maps

    w_k(x) = sum_{i<=k} p^i x_i^{p^(k-i)}

to be ring homomorphisms.  Components of sums, products, negatives and the
Frobenius are computed by the classical recursion

    s_n = (goal_n - sum_{i<n} p^i s_i^{p^(n-i)}) / p^n

with exact division.  Over rings with p-torsion the recursion runs in a
torsion-free cover (componentwise lift, then project back), which gives
exactly the values of the universal integral polynomials without having to
expand those polynomials symbolically.  The polynomials themselves are
produced on demand by running the same recursion on generic variables; the
table is cached per prime and can be persisted through the
``WITTDISPLAYS_POLY_CACHE`` environment variable.

Precision ledger: over a general base ring one Frobenius application costs
one component of precision (length N input, length N-1 output).  Over a
base of prime characteristic p the Frobenius is componentwise x -> x^p and
keeps the full length.  Operations that mix lengths truncate to the
shortest input.
"""

from __future__ import annotations

import json
import os
import threading

from .errors import NotAUnitError, PrecisionError, RingMismatchError
from .rings import (
    PolynomialRing,
    Ring,
    RingElement,
    ZZ,
    _is_prime,
    p_nilpotence_exponent,
    torsion_free_cover,
)


class WittVector:
    """A length-N p-typical Witt vector over a base ring."""

    __slots__ = ("p", "ring", "components")

    def __init__(self, p: int, ring: Ring, components):
        components = tuple(components)
        if not components:
            raise ValueError("a Witt vector needs at least one component")
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        for c in components:
            if not isinstance(c, RingElement) or c.ring != ring:
                raise RingMismatchError("all components must lie in the declared ring")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "components", components)

    def __setattr__(self, name, value):
        raise AttributeError("WittVector is immutable")

    @property
    def n(self) -> int:
        return len(self.components)

    def _check_compatible(self, other: "WittVector"):
        if not isinstance(other, WittVector):
            raise TypeError(f"expected a WittVector, got {other!r}")
        if self.p != other.p or self.ring != other.ring:
            raise RingMismatchError("Witt vectors have mismatched prime or base ring")

    def truncate(self, length: int) -> "WittVector":
        if length < 1 or length > self.n:
            raise PrecisionError(f"cannot truncate length {self.n} to {length}")
        if length == self.n:
            return self
        return WittVector(self.p, self.ring, self.components[:length])

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        self._check_compatible(other)
        x, y = _align(self, other)
        return _binary(x, y, "add")

    def __sub__(self, other):
        self._check_compatible(other)
        return self + (-other)

    def __mul__(self, other):
        self._check_compatible(other)
        x, y = _align(self, other)
        return _binary(x, y, "mul")

    def __neg__(self):
        return _unary_neg(self)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale_int(other)
        return NotImplemented

    def scale_int(self, k: int) -> "WittVector":
        """k-fold sum of self (repeated doubling); exact for any integer."""
        if k < 0:
            return (-self).scale_int(-k)
        result = zero(self.p, self.n, self.ring)
        base = self
        while k:
            if k & 1:
                result = result + base
            k >>= 1
            if k:
                base = base + base
        return result

    def __eq__(self, other):
        if not isinstance(other, WittVector):
            return NotImplemented
        return (
            self.p == other.p
            and self.ring == other.ring
            and self.components == other.components
        )

    def __hash__(self):
        return hash((self.p, self.ring, self.components))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __repr__(self):
        return "(" + ", ".join(repr(c) for c in self.components) + ")"

    # -- structure maps --------------------------------------------------------

    def ghost(self, k: int) -> RingElement:
        """w_k(x) = sum_{i<=k} p^i x_i^{p^(k-i)}, computed in the base ring."""
        if k < 0 or k >= self.n:
            raise PrecisionError(f"ghost index {k} out of range for length {self.n}")
        acc = self.ring.zero()
        for i in range(k + 1):
            acc = acc + self.ring(self.p**i) * self.components[i] ** (self.p ** (k - i))
        return acc

    def ghost_all(self):
        return [self.ghost(k) for k in range(self.n)]

    def verschiebung(self) -> "WittVector":
        """(x_0, ..., x_{N-1}) -> (0, x_0, ..., x_{N-2}) at fixed length."""
        comps = (self.ring.zero(),) + self.components[:-1]
        return WittVector(self.p, self.ring, comps)

    def verschiebung_extend(self) -> "WittVector":
        """Verschiebung at growing length: (0, x_0, ..., x_{N-1})."""
        comps = (self.ring.zero(),) + self.components
        return WittVector(self.p, self.ring, comps)

    def frobenius(self) -> "WittVector":
        """The Witt-vector Frobenius f, with f([x]) = [x^p] and f(v(x)) = p x.

        Over a base of characteristic p this is componentwise x -> x^p at
        full length; otherwise one component of precision is consumed.
        """
        if self.ring.characteristic() == self.p:
            comps = [
                RingElement(self.ring, self.ring.frobenius(c.payload))
                for c in self.components
            ]
            return WittVector(self.p, self.ring, comps)
        if self.n < 2:
            raise PrecisionError("frobenius needs length >= 2 over this base ring")
        return _frobenius_general(self)

    def in_v_ideal(self) -> bool:
        """Membership in the ideal of definition (image of verschiebung)."""
        return self.components[0].is_zero()

    def unshift(self) -> "WittVector":
        """The preimage under verschiebung (length drops by one)."""
        if not self.in_v_ideal():
            raise ValueError("unshift requires the first component to vanish")
        if self.n < 2:
            raise PrecisionError("unshift needs length >= 2")
        return WittVector(self.p, self.ring, self.components[1:])

    def invert(self) -> "WittVector":
        """Multiplicative inverse by Newton iteration y <- y(2 - xy).

        Requires x_0 to be a unit, and p nilpotent in R or R of
        characteristic p; the iteration count is bounded because the error
        1 - xy lies in v(W(R)) whose powers gain p-divisibility.
        """
        x0 = self.components[0]
        if not x0.is_unit():
            raise NotAUnitError("first component is not a unit")
        y = teichmuller(x0.invert(), self.p, self.n)
        one_w = one(self.p, self.n, self.ring)
        s = p_nilpotence_exponent(self.ring, self.p) or 1
        guard = self.n * s + self.n
        for _ in range(guard):
            err = one_w - self * y
            if err.is_zero():
                return y
            y = y + y * err
        raise NotAUnitError(
            "Witt inversion did not terminate; preconditions violated "
            "(need p nilpotent in R or characteristic p)"
        )


def zero(p: int, length: int, ring: Ring) -> WittVector:
    return WittVector(p, ring, (ring.zero(),) * length)


def one(p: int, length: int, ring: Ring) -> WittVector:
    return teichmuller(ring.one(), p, length)


def teichmuller(elt: RingElement, p: int, length: int) -> WittVector:
    """The multiplicative lift [x] = (x, 0, ..., 0)."""
    comps = (elt,) + (elt.ring.zero(),) * (length - 1)
    return WittVector(p, elt.ring, comps)


def from_int(k: int, p: int, length: int, ring: Ring) -> WittVector:
    """The image of an ordinary integer in W_N(R)."""
    return one(p, length, ring).scale_int(k)


def _align(x: WittVector, y: WittVector):
    length = min(x.n, y.n)
    return x.truncate(length), y.truncate(length)


# ---------------------------------------------------------------------------
# The ghost-recursion engine


class _GhostTracker:
    """Produces w_0(x), w_1(x), ... for a fixed component list, reusing the
    power table x_i^{p^(n-i)} across rounds."""

    def __init__(self, p: int, comps):
        self.p = p
        self.comps = list(comps)
        self.pows = list(comps)
        self.round = 0

    def next_ghost(self):
        n = self.round
        if n >= len(self.comps):
            raise PrecisionError("ghost tracker exhausted")
        for i in range(n):
            self.pows[i] = self.pows[i] ** self.p
        ring = self.comps[0].ring
        acc = self.pows[0]
        for i in range(1, n + 1):
            acc = acc + ring(self.p**i) * self.pows[i]
        self.round += 1
        return acc


def _ghost_solve(p: int, length: int, goal, cover: Ring):
    """Solve w_n(s) = goal(n) for n < length by exact division in the cover."""
    s = []
    spow = []
    for n in range(length):
        acc = goal(n)
        for i in range(n):
            spow[i] = spow[i] ** p
            acc = acc - cover(p**i) * spow[i]
        try:
            payload = cover.divexact_int(acc.payload, p**n)
        except RuntimeError as exc:
            raise RuntimeError(
                f"non-exact division in the Witt recursion at level {n}: {exc}"
            ) from None
        elt = RingElement(cover, payload)
        s.append(elt)
        spow.append(elt)
    return s


def _lift_components(x: WittVector):
    cover, lift, project = torsion_free_cover(x.ring)
    lifted = [RingElement(cover, lift(c.payload)) for c in x.components]
    return cover, project, lifted


def _binary(x: WittVector, y: WittVector, kind: str) -> WittVector:
    cover, project, xs = _lift_components(x)
    _, _, ys = _lift_components(y)
    gx = _GhostTracker(x.p, xs)
    gy = _GhostTracker(x.p, ys)
    if kind == "add":
        goal = lambda n: gx.next_ghost() + gy.next_ghost()
    else:
        goal = lambda n: gx.next_ghost() * gy.next_ghost()
    s = _ghost_solve(x.p, x.n, goal, cover)
    comps = [RingElement(x.ring, project(e.payload)) for e in s]
    return WittVector(x.p, x.ring, comps)


def _unary_neg(x: WittVector) -> WittVector:
    # Solved through the recursion rather than by multiplying with [-1],
    # which is wrong at p = 2.
    cover, project, xs = _lift_components(x)
    gx = _GhostTracker(x.p, xs)
    goal = lambda n: -gx.next_ghost()
    s = _ghost_solve(x.p, x.n, goal, cover)
    comps = [RingElement(x.ring, project(e.payload)) for e in s]
    return WittVector(x.p, x.ring, comps)


def _frobenius_general(x: WittVector) -> WittVector:
    cover, project, xs = _lift_components(x)
    gx = _GhostTracker(x.p, xs)
    gx.next_ghost()  # discard w_0; the goal for level n is w_{n+1}(x)
    goal = lambda n: gx.next_ghost()
    s = _ghost_solve(x.p, x.n - 1, goal, cover)
    comps = [RingElement(x.ring, project(e.payload)) for e in s]
    return WittVector(x.p, x.ring, comps)


# ---------------------------------------------------------------------------
# Universal sum/product/negation/Frobenius polynomials


class UniversalPolynomialTable:
    """Integral polynomials S_n, P_n, Neg_n, F_n for a fixed prime.

    S_n and P_n live in Z[x_0..x_n, y_0..y_n], Neg_n in Z[x_0..x_n], and
    F_n in Z[x_0..x_{n+1}].  They satisfy, symbolically,

        w_n(S_0..S_n) = w_n(x) + w_n(y)
        w_n(P_0..P_n) = w_n(x) * w_n(y)
        w_n(Neg_0..Neg_n) = -w_n(x)
        w_n(F_0..F_n) = w_{n+1}(x)
    """

    def __init__(self, p: int, n_max: int, sums, prods, negs, frobs):
        self.p = p
        self.n_max = n_max
        self.sums = list(sums)
        self.prods = list(prods)
        self.negs = list(negs)
        self.frobs = list(frobs)

    def sum_poly(self, n: int) -> RingElement:
        return self.sums[n]

    def prod_poly(self, n: int) -> RingElement:
        return self.prods[n]

    def neg_poly(self, n: int) -> RingElement:
        return self.negs[n]

    def frobenius_poly(self, n: int) -> RingElement:
        return self.frobs[n]

    def evaluate(self, kind: str, xs, ys=None):
        """Evaluate one family on component lists (used as a cross-check
        against the recursion-on-values arithmetic)."""
        from .rings import substitute

        polys = {"sum": self.sums, "prod": self.prods, "neg": self.negs,
                 "frobenius": self.frobs}[kind]
        target = xs[0].ring
        length = len(xs) if kind != "frobenius" else len(xs) - 1
        length = min(length, len(polys))
        out = []
        for n in range(length):
            poly = polys[n]
            assignment = {}
            for name in poly.ring.names:
                source = xs if name.startswith("x") else ys
                assignment[name] = source[int(name[1:])]
            out.append(substitute(poly, assignment, target))
        return out


_xy_names = lambda k: tuple(f"x{i}" for i in range(k + 1)) + tuple(
    f"y{i}" for i in range(k + 1)
)
_x_names = lambda k: tuple(f"x{i}" for i in range(k + 1))

_TABLE_LOCK = threading.Lock()
_TABLE_CACHE: dict = {}

CACHE_ENV_VAR = "WITTDISPLAYS_POLY_CACHE"
_CACHE_FORMAT_VERSION = 1


def _restrict(poly_elt: RingElement, target: PolynomialRing) -> RingElement:
    """Re-express a polynomial in the subring spanned by target's variables."""
    src = poly_elt.ring
    index = [src.names.index(name) for name in target.names]
    terms = {}
    for exps, coeff in poly_elt.payload:
        for pos, e in enumerate(exps):
            if e and src.names[pos] not in target.names:
                raise ValueError(f"polynomial uses {src.names[pos]} outside target ring")
        terms[tuple(exps[i] for i in index)] = coeff
    return target.element(target.canonical(terms))


def _generate_table(p: int, n_max: int) -> UniversalPolynomialTable:
    big = PolynomialRing(ZZ, _xy_names(n_max + 1))
    xs = [big.gen(f"x{i}") for i in range(n_max + 2)]
    ys = [big.gen(f"y{i}") for i in range(n_max + 2)]

    def run(goal_factory, length):
        return _ghost_solve(p, length, goal_factory(), big)

    def sum_goal():
        gx, gy = _GhostTracker(p, xs), _GhostTracker(p, ys)
        return lambda n: gx.next_ghost() + gy.next_ghost()

    def prod_goal():
        gx, gy = _GhostTracker(p, xs), _GhostTracker(p, ys)
        return lambda n: gx.next_ghost() * gy.next_ghost()

    def neg_goal():
        gx = _GhostTracker(p, xs)
        return lambda n: -gx.next_ghost()

    def frob_goal():
        gx = _GhostTracker(p, xs)
        gx.next_ghost()
        return lambda n: gx.next_ghost()

    sums_raw = run(sum_goal, n_max + 1)
    prods_raw = run(prod_goal, n_max + 1)
    negs_raw = run(neg_goal, n_max + 1)
    frobs_raw = run(frob_goal, n_max + 1)

    sums, prods, negs, frobs = [], [], [], []
    for n in range(n_max + 1):
        ring_xy = PolynomialRing(ZZ, _xy_names(n))
        ring_x = PolynomialRing(ZZ, _x_names(n))
        ring_xf = PolynomialRing(ZZ, _x_names(n + 1))
        sums.append(_restrict(sums_raw[n], ring_xy))
        prods.append(_restrict(prods_raw[n], ring_xy))
        negs.append(_restrict(negs_raw[n], ring_x))
        frobs.append(_restrict(frobs_raw[n], ring_xf))
    return UniversalPolynomialTable(p, n_max, sums, prods, negs, frobs)


def _poly_to_json(poly_elt: RingElement):
    return [[list(exps), str(coeff)] for exps, coeff in poly_elt.payload]


def _poly_from_json(data, ring: PolynomialRing) -> RingElement:
    terms = {tuple(exps): int(coeff) for exps, coeff in data}
    return ring.element(ring.canonical(terms))


def _cache_path(p: int):
    directory = os.environ.get(CACHE_ENV_VAR)
    if not directory:
        return None
    return os.path.join(directory, f"witt_polynomials_p{p}.json")


def _load_persisted(p: int):
    path = _cache_path(p)
    if not path or not os.path.exists(path):
        return None
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if data.get("version") != _CACHE_FORMAT_VERSION or data.get("p") != p:
        return None
    n_max = data["n_max"]
    sums, prods, negs, frobs = [], [], [], []
    for n in range(n_max + 1):
        level = data["levels"][str(n)]
        ring_xy = PolynomialRing(ZZ, _xy_names(n))
        ring_x = PolynomialRing(ZZ, _x_names(n))
        ring_xf = PolynomialRing(ZZ, _x_names(n + 1))
        sums.append(_poly_from_json(level["sum"], ring_xy))
        prods.append(_poly_from_json(level["prod"], ring_xy))
        negs.append(_poly_from_json(level["neg"], ring_x))
        frobs.append(_poly_from_json(level["frobenius"], ring_xf))
    return UniversalPolynomialTable(p, n_max, sums, prods, negs, frobs)


def _persist(table: UniversalPolynomialTable):
    path = _cache_path(table.p)
    if not path:
        return
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    levels = {}
    for n in range(table.n_max + 1):
        levels[str(n)] = {
            "sum": _poly_to_json(table.sums[n]),
            "prod": _poly_to_json(table.prods[n]),
            "neg": _poly_to_json(table.negs[n]),
            "frobenius": _poly_to_json(table.frobs[n]),
        }
    payload = {
        "version": _CACHE_FORMAT_VERSION,
        "p": table.p,
        "n_max": table.n_max,
        "levels": levels,
    }
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True)
    os.replace(tmp, path)


def generate_universal_polynomials(p: int, n_max: int) -> UniversalPolynomialTable:
    """The cached table of universal Witt polynomials up to level n_max.

    The cache is append-only per prime: requesting a larger n_max extends
    it, and previously returned entries never change.  Thread-safe.
    """
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    with _TABLE_LOCK:
        table = _TABLE_CACHE.get(p)
        if table is None:
            table = _load_persisted(p)
            if table is not None:
                _TABLE_CACHE[p] = table
        if table is None or table.n_max < n_max:
            table = _generate_table(p, max(n_max, table.n_max if table else 0))
            _TABLE_CACHE[p] = table
            _persist(table)
        return UniversalPolynomialTable(
            p,
            n_max,
            table.sums[: n_max + 1],
            table.prods[: n_max + 1],
            table.negs[: n_max + 1],
            table.frobs[: n_max + 1],
        )


def verify_table_identities(table: UniversalPolynomialTable, level: int) -> bool:
    """Symbolic check of the defining ghost identities at one level."""
    p, n = table.p, level
    big = PolynomialRing(ZZ, _xy_names(n + 1))
    xs = [big.gen(f"x{i}") for i in range(n + 2)]
    ys = [big.gen(f"y{i}") for i in range(n + 2)]

    def ghost(comps, k):
        acc = big.zero()
        for i in range(k + 1):
            acc = acc + big(p**i) * comps[i] ** (p ** (k - i))
        return acc

    def widen(poly_elt):
        index = [big.names.index(name) for name in poly_elt.ring.names]
        terms = {}
        for exps, coeff in poly_elt.payload:
            new = [0] * big.nvars
            for pos, e in zip(index, exps):
                new[pos] = e
            terms[tuple(new)] = coeff
        return big.element(big.canonical(terms))

    sums = [widen(table.sums[i]) for i in range(n + 1)]
    prods = [widen(table.prods[i]) for i in range(n + 1)]
    negs = [widen(table.negs[i]) for i in range(n + 1)]
    frobs = [widen(table.frobs[i]) for i in range(n + 1)]
    ok = ghost(sums, n) == ghost(xs, n) + ghost(ys, n)
    ok = ok and ghost(prods, n) == ghost(xs, n) * ghost(ys, n)
    ok = ok and ghost(negs, n) == -ghost(xs, n)
    ok = ok and ghost(frobs, n) == ghost(xs, n + 1)
    return ok
