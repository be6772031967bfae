"""Independent brute-force oracles.

Nothing here imports the package under test.  Prime fields are plain
integers mod p; extension-field arithmetic goes through sympy's
galoistools on coefficient lists.
"""

from __future__ import annotations

from collections import defaultdict
from itertools import product
from math import gcd

from sympy import factorint, isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p, gf_mul, gf_rem


def prime_powers(limit: int) -> list[int]:
    out = []
    for q in range(2, limit + 1):
        f = factorint(q)
        if len(f) == 1:
            out.append(q)
    return out


def char_of(q: int) -> int:
    (p,) = factorint(q)
    return p


# -- extension fields via sympy ---------------------------------------------------

def code_to_poly(code: int, p: int, k: int) -> list[int]:
    """Code sum c_i p^i -> sympy dense list, highest degree first."""
    cs = []
    for _ in range(k):
        code, r = divmod(code, p)
        cs.append(r)
    cs.reverse()
    while cs and cs[0] == 0:
        cs.pop(0)
    return cs


def poly_to_code(poly: list[int], p: int) -> int:
    code = 0
    for c in poly:
        code = code * p + int(c) % p
    return code


def gf_mul_code(a: int, b: int, p: int, k: int, modulus_low_high: tuple[int, ...]) -> int:
    mod = [int(c) for c in reversed(modulus_low_high)]
    prod = gf_mul(code_to_poly(a, p, k), code_to_poly(b, p, k), p, ZZ)
    return poly_to_code(gf_rem(prod, mod, p, ZZ), p)


def is_irreducible(modulus_low_high: tuple[int, ...], p: int) -> bool:
    return gf_irreducible_p([int(c) for c in reversed(modulus_low_high)], p, ZZ)


# -- prime-field matrices --------------------------------------------------------

def _mm(a, b, p):
    return ((a[0] * b[0] + a[1] * b[2]) % p, (a[0] * b[1] + a[1] * b[3]) % p,
            (a[2] * b[0] + a[3] * b[2]) % p, (a[2] * b[1] + a[3] * b[3]) % p)


def _mpow(a, e, p):
    out = (1, 0, 0, 1)
    for _ in range(e):
        out = _mm(out, a, p)
    return out


def _phi(a, l, p):
    acc, cur = (0, 0, 0, 0), (1, 0, 0, 1)
    for _ in range(l):
        acc = tuple((x + y) % p for x, y in zip(acc, cur))
        cur = _mm(cur, a, p)
    return acc


def _rank(rows, p):
    rows = [list(r) for r in rows]
    rank = 0
    for c in range(len(rows[0])):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], -1, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def gl2(p: int) -> list[tuple[int, int, int, int]]:
    return [a for a in product(range(p), repeat=4) if (a[0] * a[3] - a[1] * a[2]) % p]


def agl2_count(p: int, n: int, m: int) -> int:
    """|{(A, B) in AGL2(F_p)^2 : A^n = B^m}| via linear parts and kernel dimensions.

    A = (A0, alpha) has A^n = (A0^n, Phi_n(A0) alpha), so for a fixed linear
    pair with A0^n = B0^m the translations form the kernel of
    (alpha, beta) -> Phi_n(A0) alpha - Phi_m(B0) beta.
    """
    mats = gl2(p)
    by_power = defaultdict(list)
    for b in mats:
        by_power[_mpow(b, m, p)].append(b)
    total = 0
    for a in mats:
        bs = by_power.get(_mpow(a, n, p))
        if not bs:
            continue
        pa = _phi(a, n, p)
        for b in bs:
            pb = _phi(b, m, p)
            rows = [[pa[0], pa[1], -pb[0], -pb[1]], [pa[2], pa[3], -pb[2], -pb[3]]]
            total += p ** (4 - _rank(rows, p))
    return total


def agl1_count(p: int, n: int, m: int) -> int:
    """Naive count over AGL1(F_p)^2 with explicit affine powers."""
    assert isprime(p)

    def power(a, alpha, e):
        b, beta = 1, 0
        for _ in range(e):
            b, beta = b * a % p, (beta + b * alpha) % p
        return b, beta

    elems = [(a, alpha) for a in range(1, p) for alpha in range(p)]
    lhs = defaultdict(int)
    for g in elems:
        lhs[power(*g, n)] += 1
    return sum(lhs[power(*g, m)] for g in elems)


def agl1_formula(q: int, m: int, n: int) -> int:
    xm, xn = gcd(m, q - 1), gcd(n, q - 1)
    return (xm * xn - xm - xn + 2) * (q * q - q)
