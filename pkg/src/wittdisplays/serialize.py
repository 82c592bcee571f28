"""JSON interchange for every domain type, plus small text parsers for
ring descriptors and polynomial expressions used by the command line.

Conventions: integers are serialized as decimal strings (no word-size
assumptions anywhere), rationals as "num/den" strings, polynomials as
lists of {"e": exponent vector, "c": coefficient} in the canonical
graded-lexicographic order.  Serialization is deterministic: equal values
produce byte-identical documents.
"""

from __future__ import annotations

from fractions import Fraction

from .display import CoordinateChange, DisplayMatrix
from .errors import AlgebraError
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
    _is_prime,
)
from .witt import WittVector


# ---------------------------------------------------------------------------
# Rings


def ring_to_json(ring: Ring):
    if isinstance(ring, IntegerRing):
        return {"kind": "integers"}
    if isinstance(ring, RationalField):
        return {"kind": "rationals"}
    if isinstance(ring, FiniteField):
        return {
            "kind": "finite_field",
            "p": ring.p,
            "degree": ring.degree,
            "modulus": [str(c) for c in ring.modulus],
            "variable": ring.var_name,
        }
    if isinstance(ring, IntegersMod):
        return {"kind": "integers_mod", "modulus": str(ring.modulus)}
    if isinstance(ring, PolynomialRing):
        return {
            "kind": "polynomial",
            "base": ring_to_json(ring.base),
            "variables": list(ring.names),
        }
    if isinstance(ring, QuotientRing):
        return {
            "kind": "quotient_power",
            "base": ring_to_json(ring.poly),
            "variable_generators": [
                ring.poly.names[i] for i in sorted(ring.ideal_vars)
            ],
            "constant_generator": (
                str(ring.const_gen) if ring.const_gen is not None else None
            ),
            "exponent": ring.exponent,
        }
    raise AlgebraError(f"no serialization for ring {ring!r}")


def ring_from_json(data) -> Ring:
    kind = data["kind"]
    if kind == "integers":
        return ZZ
    if kind == "rationals":
        return QQ
    if kind == "integers_mod":
        return IntegersMod(int(data["modulus"]))
    if kind == "finite_field":
        return FiniteField(
            int(data["p"]),
            int(data["degree"]),
            tuple(int(c) for c in data["modulus"]),
            data.get("variable", "z"),
        )
    if kind == "polynomial":
        return PolynomialRing(ring_from_json(data["base"]), data["variables"])
    if kind == "quotient_power":
        poly = ring_from_json(data["base"])
        gens = [poly.gen(name) for name in data["variable_generators"]]
        if data.get("constant_generator") is not None:
            gens.append(int(data["constant_generator"]))
        return QuotientRing(poly, gens, int(data["exponent"]))
    raise AlgebraError(f"unknown ring kind {kind!r}")


# ---------------------------------------------------------------------------
# Elements


def _payload_to_json(ring: Ring, payload):
    if isinstance(ring, IntegerRing) or isinstance(ring, IntegersMod):
        return str(payload)
    if isinstance(ring, RationalField):
        return f"{payload.numerator}/{payload.denominator}"
    if isinstance(ring, FiniteField):
        return [str(c) for c in payload]
    if isinstance(ring, PolynomialRing):
        return [
            {"e": list(exps), "c": _payload_to_json(ring.base, coeff)}
            for exps, coeff in payload
        ]
    if isinstance(ring, QuotientRing):
        return _payload_to_json(ring.poly, payload)
    raise AlgebraError(f"no serialization for elements of {ring!r}")


def _payload_from_json(ring: Ring, data):
    if isinstance(ring, IntegerRing):
        return int(data)
    if isinstance(ring, IntegersMod):
        return int(data) % ring.modulus
    if isinstance(ring, RationalField):
        if isinstance(data, str):
            return Fraction(data)
        return Fraction(int(data))
    if isinstance(ring, FiniteField):
        if isinstance(data, (list, tuple)):
            return ring((tuple(int(c) for c in data))).payload
        return ring.coerce_int(int(data))
    if isinstance(ring, QuotientRing):
        return ring.reduce(_payload_from_json(ring.poly, data))
    if isinstance(ring, PolynomialRing):
        if isinstance(data, (str, int)):
            return ring.coerce_int(int(data))
        terms = {}
        for item in data:
            exps = tuple(int(e) for e in item["e"])
            coeff = _payload_from_json(ring.base, item["c"])
            terms[exps] = coeff
        return ring.canonical(terms)
    raise AlgebraError(f"no deserialization for elements of {ring!r}")


def element_to_json(elt: RingElement):
    return _payload_to_json(elt.ring, elt.payload)


def element_from_json(data, ring: Ring) -> RingElement:
    if isinstance(data, int):
        return ring(data)
    return ring.element(_payload_from_json(ring, data))


# ---------------------------------------------------------------------------
# Witt vectors, displays, coordinate changes


def witt_to_json(w: WittVector):
    return {
        "kind": "witt_vector",
        "p": w.p,
        "n": w.n,
        "ring": ring_to_json(w.ring),
        "components": [element_to_json(c) for c in w.components],
    }


def witt_from_json(data, ring: Ring | None = None) -> WittVector:
    ring = ring if ring is not None else ring_from_json(data["ring"])
    comps = [element_from_json(c, ring) for c in data["components"]]
    return WittVector(int(data["p"]), ring, comps)


def _witt_matrix_to_json(rows):
    return [
        [[element_to_json(c) for c in x.components] for x in row] for row in rows
    ]


def _witt_matrix_from_json(data, p, ring):
    return tuple(
        tuple(
            WittVector(p, ring, [element_from_json(c, ring) for c in comps])
            for comps in row
        )
        for row in data
    )


def display_to_json(D: DisplayMatrix):
    return {
        "kind": "display",
        "p": D.p,
        "n": D.n,
        "h": D.h,
        "d": D.d,
        "ring": ring_to_json(D.ring),
        "matrix": _witt_matrix_to_json(D.rows),
    }


def display_from_json(data) -> DisplayMatrix:
    ring = ring_from_json(data["ring"])
    p = int(data["p"])
    rows = _witt_matrix_from_json(data["matrix"], p, ring)
    return DisplayMatrix(p, int(data["h"]), int(data["d"]), ring, rows)


def change_to_json(c: CoordinateChange):
    return {
        "kind": "coordinate_change",
        "p": c.p,
        "h": c.h,
        "d": c.d,
        "ring": ring_to_json(c.ring),
        "a": _witt_matrix_to_json(c.a),
        "b": _witt_matrix_to_json(c.b),
        "c": _witt_matrix_to_json(c.c),
        "e": _witt_matrix_to_json(c.e),
    }


def change_from_json(data) -> CoordinateChange:
    ring = ring_from_json(data["ring"])
    p = int(data["p"])
    return CoordinateChange(
        p,
        ring,
        int(data["h"]),
        int(data["d"]),
        _witt_matrix_from_json(data["a"], p, ring),
        _witt_matrix_from_json(data["b"], p, ring),
        _witt_matrix_from_json(data["c"], p, ring),
        _witt_matrix_from_json(data["e"], p, ring),
    )


def dieudonne_to_json(module):
    return {
        "kind": "dieudonne_module",
        "p": module.p,
        "n": module.n,
        "h": module.h,
        "field": ring_to_json(module.field),
        "f_matrix": _witt_matrix_to_json(module.f_matrix),
        "v_matrix": _witt_matrix_to_json(module.v_matrix),
    }


def dieudonne_from_json(data):
    from .dieudonne import DieudonneModule

    field = ring_from_json(data["field"])
    p = int(data["p"])
    return DieudonneModule(
        field,
        p,
        int(data["n"]),
        int(data["h"]),
        _witt_matrix_from_json(data["f_matrix"], p, field),
        _witt_matrix_from_json(data["v_matrix"], p, field),
    )


def projective_point_to_json(point):
    return {
        "kind": "projective_point",
        "ring": ring_to_json(point.ring),
        "coordinates": [element_to_json(c) for c in point.coords],
        "text": repr(point),
    }


def chart_map_to_json(chart):
    return {
        "kind": "chart_map",
        "ring": ring_to_json(chart.ring),
        "chart_index": chart.chart_index,
        "functions": [element_to_json(f) for f in chart.functions],
    }


def chart_map_from_json(data):
    from .deformation import ChartMap

    ring = ring_from_json(data["ring"])
    funcs = tuple(element_from_json(f, ring) for f in data["functions"])
    return ChartMap(ring, int(data.get("chart_index", 0)), funcs)


def period_to_json(pa):
    return {
        "kind": "period_approx",
        "h": pa.h,
        "p": pa.p,
        "order": pa.order,
        "ring": ring_to_json(pa.ring),
        "iterations": pa.iterations,
        "functional_equation_exact": pa.functional_equation_exact,
        "matrix": [[element_to_json(x) for x in row] for row in pa.matrix],
    }


def localized_to_json(elt):
    num, exps = elt.payload
    return {
        "numerator": _payload_to_json(elt.ring.poly, num),
        "den_exponents": list(exps),
        "text": repr(elt),
    }


def presentation_to_json(P):
    doc = {
        "kind": "hopf_presentation",
        "p": P.p,
        "n": P.N,
        "h": P.h,
        "symbolic": P.symbolic,
        "beta_generators": list(P.beta_names),
        "phi_generators": list(P.phi_names),
        "relations": list(P.relations),
        "denominators": [
            P.ring_Gamma_ext.poly.render(d) for d in P.ring_Gamma_ext.dens
        ],
        "structure_maps": {
            "eta_L": {name: name for name in P.beta_names},
            "eta_R": {name: localized_to_json(img) for name, img in sorted(P.eta_R.items())},
            "epsilon": {name: value for name, value in sorted(P.epsilon.items())},
            "delta": {
                name: _payload_to_json(P.delta_ring, img.payload)
                for name, img in sorted(P.delta.items())
            },
        },
    }
    if P.antipode is not None:
        doc["structure_maps"]["inverse"] = {
            name: localized_to_json(img) for name, img in sorted(P.antipode.items())
        }
    return doc


# ---------------------------------------------------------------------------
# Text parsers (CLI inputs)


def parse_ring(text: str) -> Ring:
    """Compact ring descriptors: Z, Q, Z/9, F4, F(3,2), Z[x,y],
    Z/4[u1,u2]/(2,u1)^3, Q[u1]/(u1)^5, F9[u1]/(u1)^2."""
    text = text.strip()
    quotient = None
    if ")^" in text:
        head, _, exp = text.rpartition(")^")
        base_part, _, gens_part = head.rpartition("/(")
        quotient = ([g.strip() for g in gens_part.split(",")], int(exp))
        text = base_part.strip()
    names = None
    if text.endswith("]"):
        idx = text.index("[")
        names = [n.strip() for n in text[idx + 1 : -1].split(",")]
        text = text[:idx].strip()
    base = _parse_base_ring(text)
    ring: Ring = base
    if names:
        ring = PolynomialRing(base, names)
    if quotient is not None:
        if names is None:
            raise ValueError("a quotient needs a polynomial ring")
        gens, exp = quotient
        elems = []
        for g in gens:
            if g.lstrip("-").isdigit():
                elems.append(int(g))
            else:
                elems.append(ring.gen(g))
        ring = QuotientRing(ring, elems, exp)
    return ring


def _parse_base_ring(text: str) -> Ring:
    if text == "Z":
        return ZZ
    if text == "Q":
        return QQ
    if text.startswith("Z/"):
        return IntegersMod(int(text[2:]))
    if text.startswith("F(") and text.endswith(")"):
        p, m = (int(x) for x in text[2:-1].split(","))
        return FiniteField(p, m)
    if text.startswith("F"):
        q = int(text[1:])
        for p in range(2, q + 1):
            if _is_prime(p) and q % p == 0:
                m = 0
                qq = q
                while qq % p == 0:
                    qq //= p
                    m += 1
                if qq != 1:
                    raise ValueError(f"{q} is not a prime power")
                return FiniteField(p, m) if m > 1 else IntegersMod(p)
    raise ValueError(f"cannot parse ring descriptor {text!r}")


class _ExprParser:
    """Recursive-descent parser for +, -, *, ^, parentheses, integers and
    variable names over a fixed ring."""

    def __init__(self, text: str, ring: Ring):
        self.tokens = self._tokenize(text)
        self.pos = 0
        self.ring = ring

    @staticmethod
    def _tokenize(text):
        tokens = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                tokens.append(("int", int(text[i:j])))
                i = j
            elif ch.isalpha() or ch == "_":
                j = i
                while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                tokens.append(("name", text[i:j]))
                i = j
            elif ch in "+-*^()/":
                tokens.append((ch, ch))
                i += 1
            else:
                raise ValueError(f"unexpected character {ch!r} in expression")
        return tokens

    def _peek(self):
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def _next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self) -> RingElement:
        value = self._sum()
        if self.pos != len(self.tokens):
            raise ValueError("trailing tokens in expression")
        return value

    def _sum(self):
        value = self._product()
        while self._peek() in ("+", "-"):
            op = self._next()[0]
            rhs = self._product()
            value = value + rhs if op == "+" else value - rhs
        return value

    def _product(self):
        value = self._power()
        while self._peek() == "*":
            self._next()
            value = value * self._power()
        return value

    def _power(self):
        value = self._atom()
        if self._peek() == "^":
            self._next()
            kind, exp = self._next()
            if kind != "int":
                raise ValueError("exponent must be an integer literal")
            value = value**exp
        return value

    def _atom(self):
        kind, val = self._next()
        if kind == "int":
            return self.ring(val)
        if kind == "-":
            return -self._atom()
        if kind == "name":
            return self.ring.gen(val)
        if kind == "(":
            value = self._sum()
            if self._next()[0] != ")":
                raise ValueError("unbalanced parentheses")
            return value
        raise ValueError(f"unexpected token {val!r}")


def parse_element(text: str, ring: Ring) -> RingElement:
    """Parse an expression like ``2*u1^2 - u2 + 1`` into a ring element."""
    return _ExprParser(text, ring).parse()
