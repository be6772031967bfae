"""Closed-form motives for AGL1 and AGL2 torus-knot representation varieties.

Every expression lives in Z[q, xi_m, xi_n] (with a rational common
denominator where quarter factors appear).  ``w`` below always means
(xi_m - 1)(xi_n - 1), the size of the set Omega for coprime (m, n).
"""

from __future__ import annotations

from math import gcd

from .exactpoly import ONE, Q, XI_M, XI_N, IntPoly, MotiveExpr, T
from .ffield import factor, prime_power


class HypothesisError(ValueError):
    """The requested motive is outside its domain of validity."""


W = (XI_M - 1) * (XI_N - 1)
XI_MN = XI_M * XI_N
PGL2 = Q**3 - Q

STRATUM_FIBER_EXP = {
    "IRR1": 4, "IRR2": 3, "IRR3": 3, "IRR4": 2, "IRR5": 2,
    "A1": 4, "A2": 3, "A3": 2,
    "B1": 4, "B2": 2,
    "C1": 3, "C2": 2,
}
FAMILIES = {
    "IRR": ("IRR1", "IRR2", "IRR3", "IRR4", "IRR5"),
    "A": ("A1", "A2", "A3"),
    "B": ("B1", "B2"),
    "C": ("C1", "C2"),
}
STRATA = tuple(STRATUM_FIBER_EXP)


def _require_coprime(m: int, n: int) -> None:
    if m < 1 or n < 1:
        raise ValueError(f"m and n must be positive, got ({m}, {n})")
    if gcd(m, n) != 1:
        raise ValueError(f"m={m} and n={n} are not coprime")


def _check_agl2_domain(m: int, n: int, force: bool) -> None:
    _require_coprime(m, n)
    if force:
        return
    bad = [v for v in (m, n) if v < 3 or v % 2 == 0]
    if bad:
        raise HypothesisError(
            f"AGL2 formula needs m, n odd and >= 3 (got m={m}, n={n}); pass force to override")


def motive_agl1(m: int, n: int) -> MotiveExpr:
    _require_coprime(m, n)
    return (XI_MN - XI_M - XI_N + 2) * (Q**2 - Q)


def motive_agl2(m: int, n: int, *, force: bool = False) -> MotiveExpr:
    _check_agl2_domain(m, n, force)
    first = (Q**7 + Q**6 + Q**5 - 5 * Q**4 + 2 * Q**3) / 4
    second = (XI_MN - XI_M - XI_N) * (Q - 1) ** 2 * (Q - 2) * (Q + 1) * Q**3 / 4
    inner = (2 * (XI_MN - XI_M - XI_N + 2) * (Q - 1)
             + (Q - 1) * (Q - 2) * ((XI_M - 2) * (XI_N - 2) * Q + XI_MN - 4))
    third = W * (Q**5 - Q**3) * inner / 4
    return first + second + third


def gl2_irr_motive(m: int, n: int) -> MotiveExpr:
    _require_coprime(m, n)
    return PGL2 * W * (Q - 2) * (Q - 1) / 4


def ell_terms(m: int, n: int) -> tuple[MotiveExpr, MotiveExpr]:
    """The forbidden-eigenvalue orbit count, as a four-term sum and in closed form."""
    _require_coprime(m, n)
    summed = ((XI_N - 1) * (XI_N - 2) * (XI_M - 1) * (XI_M - 2) / 4
              + (XI_N - 1) * (XI_N - 2) * (XI_M - 1) / 2
              + (XI_M - 1) * (XI_N - 1) * (XI_M - 2) / 2
              + W)
    closed = XI_MN * W / 4
    return summed, closed


# GL2-level base classes; the AGL2 stratum is base * q^fiber_exp.
def a3_base() -> MotiveExpr:
    return (Q - 1) ** 2 - W * (W - 1) / 2 - W * (Q - 1 - W)


def a3_base_expanded() -> MotiveExpr:
    """The expanded form of the A3 base as printed in the source derivation (suspected erratum)."""
    return Q**2 - (XI_MN - XI_M - XI_N + 3) * Q - W * (XI_MN - 8) / 4


_P1_MINUS_3 = (Q - 2) * PGL2

_BASES = {
    "IRR1": (XI_N - 1) * (XI_N - 2) * (XI_M - 1) * (XI_M - 2) / 4 * _P1_MINUS_3,
    "IRR2": (XI_N - 1) * (XI_N - 2) * (XI_M - 1) / 2 * _P1_MINUS_3,
    "IRR3": (XI_M - 1) * (XI_N - 1) * (XI_M - 2) / 2 * _P1_MINUS_3,
    "IRR4": W * _P1_MINUS_3,
    "IRR5": PGL2 * (Q - 2) * W * (Q - 1 - XI_MN) / 4,
    "A1": W * (W - 1) / 2 * (Q**2 + Q),
    "A2": W * (Q - 1 - W) * (Q**2 + Q),
    "A3": a3_base() * (Q**2 + Q),
    "B1": W,
    "B2": Q - 1 - W,
    "C1": W * (Q - 1) * (Q + 1),
    "C2": (Q - 1) ** 2 * (Q + 1) - W * (Q - 1) * (Q + 1),
}


def _label_name(label) -> str:
    name = getattr(label, "value", label)
    name = str(name).upper()
    if name.endswith("-TOTAL"):
        name = name[: -len("-TOTAL")]
    return name


def stratum_base(label, m: int, n: int) -> MotiveExpr:
    """Class of the GL2 base of a stratum (or of a whole family)."""
    _require_coprime(m, n)
    name = _label_name(label)
    if name in FAMILIES:
        out = MotiveExpr()
        for s in FAMILIES[name]:
            out = out + _BASES[s]
        return out
    if name not in _BASES:
        raise ValueError(f"unknown stratum label {label!r}")
    return _BASES[name]


def stratum_motive(label, m: int, n: int) -> MotiveExpr:
    _require_coprime(m, n)
    name = _label_name(label)
    if name in FAMILIES:
        out = MotiveExpr()
        for s in FAMILIES[name]:
            out = out + stratum_motive(s, m, n)
        return out
    if name not in _BASES:
        raise ValueError(f"unknown stratum label {label!r}")
    return _BASES[name] * Q ** STRATUM_FIBER_EXP[name]


# Family totals in the factored shapes they are usually quoted in.
def irr_total_display(m: int, n: int) -> MotiveExpr:
    _require_coprime(m, n)
    return (W * (Q**4 - 3 * Q**3 + 2 * Q**2) * PGL2
            * ((XI_M - 2) * (XI_N - 2) * Q + XI_MN - 3) / 4)


def a_total_display(m: int, n: int) -> MotiveExpr:
    _require_coprime(m, n)
    return (Q**2 + Q) * Q**2 * (W * (XI_MN - XI_M - XI_N) * (Q**2 - 1) / 2
                                + W * (Q - XI_MN + XI_M + XI_N - 2) * (Q - 1)
                                + (Q - 1) ** 2)


def b_total_display(m: int, n: int) -> MotiveExpr:
    _require_coprime(m, n)
    return W * (Q**4 - Q**2) + (Q - 1) * Q**2


def c_total_display(m: int, n: int) -> MotiveExpr:
    _require_coprime(m, n)
    return (Q - 1) ** 2 * (Q + 1) * Q**2 + W * (Q - 1) * (Q + 1) * (Q**3 - Q**2)


def a3_motive_expanded(m: int, n: int) -> MotiveExpr:
    _require_coprime(m, n)
    return a3_base_expanded() * (Q**2 + Q) * Q**2


def irr_bookkeeping(m: int, n: int) -> tuple[MotiveExpr, MotiveExpr]:
    """IRR total two ways: stratum sum, and GL2-irreducibles times q^2 plus
    the extra fiber dimensions of the four rational-eigenvalue strata."""
    lhs = stratum_motive("IRR", m, n)
    rhs = gl2_irr_motive(m, n) * Q**2
    for s in ("IRR1", "IRR2", "IRR3", "IRR4"):
        rhs = rhs + _BASES[s] * (Q ** STRATUM_FIBER_EXP[s] - Q**2)
    return lhs, rhs


def motive_agl2_corrected(m: int, n: int, *, force: bool = False) -> MotiveExpr:
    """AGL2 count with two reducible-stratum corrections applied.

    a3_fix: the diagonal stratum with both parameters outside Omega has
    frame space GL2/T with Frobenius-invariant part q^2 and anti-invariant
    part q; the anti-invariant weight belongs to the ordered pairs
    (t1, t2) outside Omega minus the invariant base, not to the base itself.

    semi: pairs of non-scalar diagonalizable matrices sharing exactly one
    eigenline (three distinct lines in all).  These are reducible but not
    simultaneously diagonalizable, so none of the A/B/C normal forms hold.
    They need t2/t1 in Omega, hence vanish when w = 0.
    """
    _check_agl2_domain(m, n, force)
    a3_fix = Q**3 * ((Q - 1 - W) * (Q - 2 - W) - 2 * a3_base())
    semi = PGL2 * ((Q - 1 - XI_MN) * W * Q**2
                   + W * (Q**2 + (XI_M + XI_N - 4) * Q**3 + (XI_N - 2) * (XI_M - 2) * Q**4)
                   + W * (Q**2 + (XI_M - 2) * Q**3)
                   + W * (Q**2 + (XI_N - 2) * Q**3)
                   + W * Q**3)
    return motive_agl2(m, n, force=force) + a3_fix + semi


def complex_specialization(e: MotiveExpr, m: int, n: int) -> IntPoly:
    """Over C every xi_l equals l."""
    return e.specialize(m, n)


def xi_pair(q: int, m: int, n: int) -> tuple[int, int]:
    return gcd(m, q - 1), gcd(n, q - 1)


def eval_motive(e: MotiveExpr, q: int, m: int, n: int) -> int:
    xm, xn = xi_pair(q, m, n)
    return int(e.specialize(xm, xn)(q))


def counting_polynomial(m: int, n: int, group: str, d_m: int, d_n: int) -> IntPoly:
    _require_coprime(m, n)
    if d_m < 1 or d_n < 1 or m % d_m or n % d_n:
        raise ValueError(f"({d_m}, {d_n}) are not divisors of ({m}, {n})")
    g = group.upper()
    if g == "AGL1":
        return motive_agl1(m, n).specialize(d_m, d_n)
    if g == "AGL2":
        return motive_agl2(m, n).specialize(d_m, d_n)
    raise ValueError(f"no counting polynomial for group {group!r}")


def trend_coefficient(d_m: int, d_n: int) -> int:
    """Coefficient c with AGL1 trend polynomial c * (t^2 - t)."""
    return d_m * d_n - d_m - d_n + 2


def char_of(q: int) -> int:
    pk = prime_power(q)
    if pk is None:
        raise ValueError(f"{q} is not a prime power")
    return pk[0]


def is_clean(q: int, m: int, n: int) -> bool:
    char_of(q)
    return gcd(n * m, q + 1) == 1


def hypotheses_ok(q: int, m: int, n: int, group: str = "agl1") -> bool:
    p = char_of(q)
    if gcd(m, n) != 1 or m % p == 0 or n % p == 0:
        return False
    if group.lower() == "agl2":
        return p != 2 and m % 2 == 1 and n % 2 == 1 and m >= 3 and n >= 3
    return True


__all__ = [
    "HypothesisError", "W", "STRATUM_FIBER_EXP", "FAMILIES", "STRATA",
    "motive_agl1", "motive_agl2", "motive_agl2_corrected", "gl2_irr_motive", "ell_terms",
    "stratum_base", "stratum_motive", "irr_total_display", "a_total_display",
    "b_total_display", "c_total_display", "a3_base", "a3_base_expanded", "a3_motive_expanded",
    "irr_bookkeeping", "complex_specialization", "xi_pair", "eval_motive",
    "counting_polynomial", "trend_coefficient", "is_clean", "hypotheses_ok", "ONE", "T",
]
