"""Exact polynomials in q, xi_m, xi_n (motives) and dense integer polynomials.

``MotiveExpr`` keeps integer numerators over one positive common
denominator, so quarter factors can be carried without floating point and
without leaving ``Z``; the denominator is reduced after every operation.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Iterable, Mapping

Exps = tuple[int, int, int]
VARS = ("q", "xi_m", "xi_n")


class NotIntegral(ArithmeticError):
    """A specialization left a non-integer coefficient behind."""


class MotiveExpr:
    __slots__ = ("terms", "denom")

    def __init__(self, terms: Mapping[Exps, int] | None = None, denom: int = 1):
        if denom == 0:
            raise ZeroDivisionError("zero denominator")
        clean = {tuple(e): int(c) for e, c in (terms or {}).items() if c}
        if denom < 0:
            clean = {e: -c for e, c in clean.items()}
            denom = -denom
        g = denom
        for c in clean.values():
            g = math.gcd(g, c)
            if g == 1:
                break
        if g > 1:
            clean = {e: c // g for e, c in clean.items()}
            denom //= g
        if not clean:
            denom = 1
        self.terms: dict[Exps, int] = clean
        self.denom: int = denom

    # constructors
    @classmethod
    def const(cls, c: int | Fraction) -> "MotiveExpr":
        c = Fraction(c)
        return cls({(0, 0, 0): c.numerator}, c.denominator)

    @classmethod
    def monomial(cls, eq: int = 0, em: int = 0, en: int = 0, coeff: int = 1) -> "MotiveExpr":
        return cls({(eq, em, en): coeff})

    def _lift(self, other) -> "MotiveExpr":
        if isinstance(other, MotiveExpr):
            return other
        if isinstance(other, (int, Fraction)):
            return MotiveExpr.const(other)
        return NotImplemented

    # ring operations
    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        d = self.denom * other.denom // math.gcd(self.denom, other.denom)
        fa, fb = d // self.denom, d // other.denom
        out = {e: c * fa for e, c in self.terms.items()}
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c * fb
        return MotiveExpr(out, d)

    __radd__ = __add__

    def __neg__(self):
        return MotiveExpr({e: -c for e, c in self.terms.items()}, self.denom)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out: dict[Exps, int] = {}
        for (a1, b1, c1), x in self.terms.items():
            for (a2, b2, c2), y in other.terms.items():
                e = (a1 + a2, b1 + b2, c1 + c2)
                out[e] = out.get(e, 0) + x * y
        return MotiveExpr(out, self.denom * other.denom)

    __rmul__ = __mul__

    def __truediv__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        return MotiveExpr(self.terms, self.denom * k)

    def __pow__(self, e: int):
        out = MotiveExpr.const(1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        other = self._lift(other)
        if other is NotImplemented:
            return False
        return self.denom == other.denom and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((frozenset(self.terms.items()), self.denom))

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_integral(self) -> bool:
        return self.denom == 1

    def coeff(self, exps: Exps) -> Fraction:
        return Fraction(self.terms.get(tuple(exps), 0), self.denom)

    def degree_q(self) -> int:
        return max((e[0] for e in self.terms), default=-1)

    def coeff_q(self, d: int) -> "MotiveExpr":
        """Coefficient of q^d as an expression in the xi symbols."""
        return MotiveExpr({(0, em, en): c for (eq, em, en), c in self.terms.items() if eq == d},
                          self.denom)

    def specialize_fraction(self, xi_m: int, xi_n: int) -> list[Fraction]:
        deg = self.degree_q()
        coeffs = [0] * (deg + 1)
        for (eq, em, en), c in self.terms.items():
            coeffs[eq] += c * xi_m**em * xi_n**en
        return [Fraction(c, self.denom) for c in coeffs]

    def specialize(self, xi_m: int, xi_n: int) -> "IntPoly":
        fr = self.specialize_fraction(xi_m, xi_n)
        bad = [c for c in fr if c.denominator != 1]
        if bad:
            raise NotIntegral(f"specialization at xi=({xi_m},{xi_n}) has non-integer coefficient {bad[0]}")
        return IntPoly([int(c) for c in fr])

    def evaluate(self, q: int, xi_m: int, xi_n: int) -> Fraction:
        tot = 0
        for (eq, em, en), c in self.terms.items():
            tot += c * q**eq * xi_m**em * xi_n**en
        return Fraction(tot, self.denom)

    # serialization
    def to_json_obj(self) -> dict:
        obj = {
            "vars": list(VARS),
            "terms": [{"coeff": str(c), "exps": list(e)} for e, c in sorted(self.terms.items())],
        }
        if self.denom != 1:
            obj["denominator"] = str(self.denom)
        return obj

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)

    @classmethod
    def from_json_obj(cls, obj: dict) -> "MotiveExpr":
        if list(obj.get("vars", VARS)) != list(VARS):
            raise ValueError(f"unexpected variable list {obj.get('vars')}")
        terms = {tuple(t["exps"]): int(t["coeff"]) for t in obj["terms"]}
        return cls(terms, int(obj.get("denominator", "1")))

    @classmethod
    def from_json(cls, s: str) -> "MotiveExpr":
        return cls.from_json_obj(json.loads(s))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = ("q", "xi_m", "xi_n")
        parts = []
        for e, c in sorted(self.terms.items(), key=lambda kv: (-kv[0][0], -kv[0][1], -kv[0][2])):
            mon = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            body = mon if (a == 1 and mon) else (f"{a}*{mon}" if mon else str(a))
            parts.append(f"{sign} {body}")
        s = " ".join(parts)
        s = s[2:] if s.startswith("+ ") else "-" + s[2:]
        return s if self.denom == 1 else f"({s})/{self.denom}"

    __repr__ = __str__


Q = MotiveExpr.monomial(1, 0, 0)
XI_M = MotiveExpr.monomial(0, 1, 0)
XI_N = MotiveExpr.monomial(0, 0, 1)
ONE = MotiveExpr.const(1)


def mexpr_arith(a: MotiveExpr, b: MotiveExpr, op: str) -> MotiveExpr:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


class IntPoly:
    """Dense polynomial in one variable over the integers."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = c

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, t: int) -> int:
        return eval_poly(self, t)

    def __add__(self, other: "IntPoly") -> "IntPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + [0] * (n - len(self.coeffs))
        b = other.coeffs + [0] * (n - len(other.coeffs))
        return IntPoly(x + y for x, y in zip(a, b))

    def __neg__(self) -> "IntPoly":
        return IntPoly(-x for x in self.coeffs)

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other: "IntPoly | int") -> "IntPoly":
        if isinstance(other, int):
            return IntPoly(x * other for x in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return IntPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(tuple(self.coeffs))

    def content_ratio(self, other: "IntPoly") -> Fraction | None:
        """c with self == c * other, if such a rational c exists."""
        if not other.coeffs:
            return None if self.coeffs else Fraction(0)
        i = next(j for j, x in enumerate(other.coeffs) if x)
        c = Fraction(self.coeffs[i] if i < len(self.coeffs) else 0, other.coeffs[i])
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + [0] * (n - len(self.coeffs))
        b = other.coeffs + [0] * (n - len(other.coeffs))
        return c if all(x == c * y for x, y in zip(a, b)) else None

    def __str__(self) -> str:
        return self.format("t")

    def format(self, var: str = "t") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mon = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            a = abs(c)
            body = str(a) if not mon else (mon if a == 1 else f"{a}{mon}")
            parts.append(("-" if c < 0 else "+") + " " + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    __repr__ = __str__


T = IntPoly([0, 1])


def specialize(e: MotiveExpr, xi_m: int, xi_n: int) -> IntPoly:
    return e.specialize(xi_m, xi_n)


def eval_poly(p: IntPoly, t: int) -> int:
    acc = 0
    for c in reversed(p.coeffs):
        acc = acc * t + c
    return acc
