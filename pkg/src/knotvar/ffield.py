"""Small finite fields F_{p^k} with exact arithmetic.

Elements are addressed by their canonical integer code
``code(x) = sum(c_i * p**i)`` where ``c_i`` are the coefficients of the
reduced representative in ``F_p[x]/(modulus)``.  Hot loops work on codes
directly through the ``FieldCtx`` methods (or the numpy tables for batch
work); :class:`Fq` wraps a code for readable scalar code.
"""

from __future__ import annotations

import math
from functools import cached_property
from itertools import product
from typing import Iterator, Sequence

import numpy as np

DEFAULT_MAX_ORDER = 2**20
# dense q x q operation tables are only built up to this order
TABLE_MAX_ORDER = 1024


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factor(n: int) -> dict[int, int]:
    """Trial-division factorization of a positive integer."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, k)`` with ``q == p**k`` or None."""
    if q < 2:
        return None
    f = factor(q)
    if len(f) != 1:
        return None
    ((p, k),) = f.items()
    return p, k


# -- polynomials over F_p, coefficient lists low -> high ---------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _trim(list(a))
    db = len(b) - 1
    inv_lead = pow(b[-1], -1, p)
    while len(a) - 1 >= db:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - db
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _trim(a)
    return a


def _monic_polys(p: int, d: int) -> Iterator[tuple[int, ...]]:
    """Monic degree-d polynomials, lexicographic by coefficients high -> low."""
    for tail in product(range(p), repeat=d):
        yield tuple(reversed(tail)) + (1,)


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Exhaustive divisor scan over monic polynomials of degree <= deg/2."""
    k = len(poly) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    for d in range(1, k // 2 + 1):
        for div in _monic_polys(p, d):
            if not _polymod(poly, div, p):
                return False
    return True


def irreducible_polys(p: int, k: int) -> Iterator[tuple[int, ...]]:
    """Monic irreducible polynomials of degree k in the canonical order.

    The order is lexicographic on the coefficient tuple read from the
    highest non-leading degree down to the constant term.
    """
    for poly in _monic_polys(p, k):
        if is_irreducible(poly, p):
            yield poly


def poly_str(poly: Sequence[int], var: str = "x") -> str:
    parts = []
    for i in range(len(poly) - 1, -1, -1):
        c = poly[i]
        if c == 0:
            continue
        mon = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if i == 0:
            parts.append(str(c))
        elif c == 1:
            parts.append(mon)
        else:
            parts.append(f"{c}{mon}")
    return " + ".join(parts) if parts else "0"


class FieldCtx:
    """A fully materialized finite field ``F_q``, ``q = p**k``.

    Immutable after construction.  All element-level methods take and return
    integer codes in ``range(q)``.
    """

    def __init__(self, p: int, k: int, modulus: Sequence[int]):
        self.p = p
        self.k = k
        self.modulus = tuple(int(c) % p for c in modulus)
        self.q = p**k
        self._key = (p, k, self.modulus)

    # -- identity -----------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldCtx) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        if self.k == 1:
            return f"FieldCtx(F_{self.p})"
        return f"FieldCtx(F_{self.q} = F_{self.p}[x]/({poly_str(self.modulus)}))"

    @property
    def is_prime_field(self) -> bool:
        return self.k == 1

    # -- codes <-> coefficients --------------------------------------------
    def digits(self, a: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.k):
            a, r = divmod(a, p)
            out.append(r)
        return out

    def from_digits(self, ds: Sequence[int]) -> int:
        code = 0
        for c in reversed(ds):
            code = code * self.p + (c % self.p)
        return code

    # -- element arithmetic on codes ---------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        p = self.p
        return self.from_digits([(x + y) % p for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        return self.from_digits([(-x) % self.p for x in self.digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        log = self._log
        return self._exp[(log[a] + log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        if self.k == 1:
            return pow(a, -1, self.p)
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if self.k == 1:
            return pow(a, e, self.p)
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def scalar(self, c: int) -> int:
        """Code of the image of the integer c under Z -> F_q."""
        return c % self.p

    def is_square(self, a: int) -> bool:
        if a == 0:
            return True
        if self.p == 2:
            return True
        return self.pow(a, (self.q - 1) // 2) == 1

    def sqrt(self, a: int) -> int | None:
        """Some square root of a, or None (search; desk scale)."""
        if a == 0:
            return 0
        if not self.is_square(a):
            return None
        if self.k > 1:
            return self._exp[(self._log[a] // 2) if self._log[a] % 2 == 0 else
                             (self._log[a] + self.q - 1) // 2]
        for x in range(1, self.p):
            if x * x % self.p == a:
                return x
        return None  # pragma: no cover

    # -- structure ----------------------------------------------------------
    def _polymul_code(self, a: int, b: int) -> int:
        p, k = self.p, self.k
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        return self.from_digits(_polymod(prod, self.modulus, p) + [0] * k)

    def _slow_pow(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self._polymul_code(result, base)
            base = self._polymul_code(base, base)
            e >>= 1
        return result

    @cached_property
    def generator(self) -> int:
        """Smallest code generating the multiplicative group."""
        n = self.q - 1
        if n == 1:
            return 1
        primes = list(factor(n))
        powf = (lambda a, e: pow(a, e, self.p)) if self.k == 1 else self._slow_pow
        for g in range(2, self.q):
            if all(powf(g, n // r) != 1 for r in primes):
                return g
        raise FieldError(f"no generator found; modulus of {self!r} is not irreducible")

    @cached_property
    def _exp(self) -> list[int]:
        g = self.generator
        out = [1] * (self.q - 1)
        x = 1
        for i in range(1, self.q - 1):
            x = self._polymul_code(x, g) if self.k > 1 else x * g % self.p
            out[i] = x
        return out

    @cached_property
    def _log(self) -> list[int]:
        log = [-1] * self.q
        for i, x in enumerate(self._exp):
            log[x] = i
        return log

    def elements(self) -> Iterator["Fq"]:
        for c in range(self.q):
            yield Fq(self, c)

    def __call__(self, x: int | Sequence[int] | "Fq") -> "Fq":
        """Element from a code, a coefficient sequence (low -> high) or an Fq."""
        if isinstance(x, Fq):
            _check_same(self, x.ctx)
            return x
        if isinstance(x, (int, np.integer)):
            x = int(x)
            if not 0 <= x < self.q:
                raise FieldError(f"code {x} out of range for {self!r}")
            return Fq(self, x)
        ds = list(x)
        if len(ds) > self.k:
            raise FieldError("too many coefficients")
        return Fq(self, self.from_digits(ds + [0] * (self.k - len(ds))))

    @property
    def zero(self) -> "Fq":
        return Fq(self, 0)

    @property
    def one(self) -> "Fq":
        return Fq(self, 1)

    # -- dense tables for vectorized group arithmetic -----------------------
    def _require_tables(self) -> None:
        if self.q > TABLE_MAX_ORDER:
            raise FieldError(f"dense tables limited to q <= {TABLE_MAX_ORDER}, got {self.q}")

    @cached_property
    def add_table(self) -> np.ndarray:
        self._require_tables()
        q, p = self.q, self.p
        if self.k == 1:
            r = np.arange(q, dtype=np.int64)
            return (r[:, None] + r[None, :]) % p
        dig = np.array([self.digits(a) for a in range(q)], dtype=np.int64)
        s = (dig[:, None, :] + dig[None, :, :]) % p
        weights = p ** np.arange(self.k, dtype=np.int64)
        return (s * weights).sum(axis=2)

    @cached_property
    def mul_table(self) -> np.ndarray:
        self._require_tables()
        q = self.q
        if self.k == 1:
            r = np.arange(q, dtype=np.int64)
            return (r[:, None] * r[None, :]) % q
        exp = np.array(self._exp, dtype=np.int64)
        log = np.array(self._log, dtype=np.int64)
        idx = (log[:, None] + log[None, :]) % (q - 1)
        out = exp[idx]
        out[0, :] = 0
        out[:, 0] = 0
        return out

    @cached_property
    def neg_table(self) -> np.ndarray:
        return np.array([self.neg(a) for a in range(self.q)], dtype=np.int64)

    @cached_property
    def inv_table(self) -> np.ndarray:
        """Inverse table; entry 0 maps to 0 as a sentinel."""
        return np.array([0] + [self.inv(a) for a in range(1, self.q)], dtype=np.int64)


def _check_same(a: FieldCtx, b: FieldCtx) -> None:
    if a is not b and a != b:
        raise FieldError(f"mixing elements of {a!r} and {b!r}")


class Fq:
    """An element of a :class:`FieldCtx`, by canonical code."""

    __slots__ = ("ctx", "code")

    def __init__(self, ctx: FieldCtx, code: int):
        self.ctx = ctx
        self.code = code

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(self.ctx.digits(self.code))

    def _other(self, y: "Fq | int") -> int:
        if isinstance(y, Fq):
            _check_same(self.ctx, y.ctx)
            return y.code
        return self.ctx.scalar(int(y))

    def __add__(self, y):
        return Fq(self.ctx, self.ctx.add(self.code, self._other(y)))

    __radd__ = __add__

    def __sub__(self, y):
        return Fq(self.ctx, self.ctx.sub(self.code, self._other(y)))

    def __rsub__(self, y):
        return Fq(self.ctx, self.ctx.sub(self._other(y), self.code))

    def __mul__(self, y):
        return Fq(self.ctx, self.ctx.mul(self.code, self._other(y)))

    __rmul__ = __mul__

    def __truediv__(self, y):
        return Fq(self.ctx, self.ctx.div(self.code, self._other(y)))

    def __neg__(self):
        return Fq(self.ctx, self.ctx.neg(self.code))

    def __pow__(self, e: int):
        return Fq(self.ctx, self.ctx.pow(self.code, e))

    def inv(self) -> "Fq":
        return Fq(self.ctx, self.ctx.inv(self.code))

    def __eq__(self, y: object) -> bool:
        if isinstance(y, Fq):
            return self.ctx == y.ctx and self.code == y.code
        if isinstance(y, int):
            return self.code == self.ctx.scalar(y)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ctx, self.code))

    def __int__(self) -> int:
        return self.code

    def __bool__(self) -> bool:
        return self.code != 0

    def __repr__(self) -> str:
        if self.ctx.k == 1:
            return f"{self.code} (mod {self.ctx.p})"
        return f"[{poly_str(self.coeffs)}]"


def make_field(p: int, k: int = 1, *, modulus: Sequence[int] | None = None,
               max_order: int = DEFAULT_MAX_ORDER) -> FieldCtx:
    """Build ``F_{p^k}``.

    The modulus defaults to the first irreducible polynomial in
    :func:`irreducible_polys` order (``x`` for prime fields).  A caller-chosen
    modulus (coefficients low -> high, monic) is checked for irreducibility.
    """
    if not is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if k < 1:
        raise FieldError(f"extension degree must be >= 1, got {k}")
    if p**k > max_order:
        raise FieldError(f"field order {p}^{k} exceeds bound {max_order}")
    if modulus is None:
        modulus = next(irreducible_polys(p, k))
    else:
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise FieldError("modulus must be monic of degree k")
        if not is_irreducible(modulus, p):
            raise FieldError(f"modulus {poly_str(modulus)} is reducible over F_{p}")
    return FieldCtx(p, k, modulus)


def field_of_order(q: int, **kw) -> FieldCtx:
    pk = prime_power(q)
    if pk is None:
        raise FieldError(f"{q} is not a prime power")
    return make_field(*pk, **kw)


def arith(ctx: FieldCtx, op: str, x: Fq, y: Fq | int | None = None) -> Fq:
    """Dispatch one of add|sub|mul|neg|inv|pow; ``y`` is the exponent for pow."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "neg":
        return -x
    if op == "inv":
        return x.inv()
    if op == "pow":
        return x ** int(y)
    raise FieldError(f"unknown operation {op!r}")


def unity_root_count(ctx: FieldCtx, l: int) -> int:
    """|{x in F_q : x^l = 1}| by enumeration of the unit group."""
    if l < 1:
        raise FieldError("l must be positive")
    return sum(1 for x in range(1, ctx.q) if ctx.pow(x, l) == 1)


def unity_root_count_fast(ctx: FieldCtx | int, l: int) -> int:
    q = ctx.q if isinstance(ctx, FieldCtx) else ctx
    return math.gcd(l, q - 1)


def omega_set(ctx: FieldCtx, m: int, n: int) -> set[int]:
    """Codes t with t^(nm) = 1 but t^n != 1 and t^m != 1."""
    if math.gcd(m, n) != 1:
        raise FieldError(f"gcd({m}, {n}) != 1")
    return {t for t in range(1, ctx.q)
            if ctx.pow(t, n * m) == 1 and ctx.pow(t, n) != 1 and ctx.pow(t, m) != 1}


def char_divides(ctx: FieldCtx | int, *ls: int) -> bool:
    p = ctx.p if isinstance(ctx, FieldCtx) else ctx
    return any(l % p == 0 for l in ls)
