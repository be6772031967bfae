"""Point-level stratification of AGL2 representation varieties.

Each pair (A0, B0) in GL2(F_q)^2 with A0^n = B0^m is placed in one of the
strata IRR1..IRR5, A1..A3, B1, B2, C1, C2 and tagged split or quadratic by
the field of definition of its eigenvalues.  Eigendata lives in the
quadratic extension F_q[s]/(s^2 - d), d the smallest non-square.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .closedform import HypothesisError, STRATA, STRATUM_FIBER_EXP
from .ffield import FieldCtx, FieldError, Fq, factor, make_field, omega_set
from .matgroups import (GroupDescriptor, GroupElement, _digit_grid, batch_cyclotomic_sum,
                        batch_det, batch_encode_comps)
from .repcount import _batch_pow_lin, _joint_rank, _phi_scalar, colspace_class

STRATA_MAX_Q = 64
TWISTS = ("split", "quadratic")


# -- cusp curve ----------------------------------------------------------------

def bezout(m: int, n: int) -> tuple[int, int]:
    """(a, b) with a*m + b*n = 1 and |a| minimal (ties go to positive a)."""
    if m < 1 or n < 1:
        raise ValueError("bezout needs positive arguments")
    if gcd(m, n) != 1:
        raise ValueError(f"{m} and {n} are not coprime")
    if m == 1 and n == 1:
        return 1, 0
    a = pow(m, -1, n) if n > 1 else 0
    if n > 1 and a > n - a:
        a -= n
    b = (1 - a * m) // n
    return a, b


def _as_code(ctx: FieldCtx, x) -> int:
    if isinstance(x, Fq):
        if x.ctx != ctx:
            raise FieldError("element from a different field")
        return x.code
    return int(x)


def cusp_param(ctx: FieldCtx, m: int, n: int, t):
    """t -> (t^m, t^n), a point on x^n = y^m."""
    c = _as_code(ctx, t)
    if c == 0:
        raise ValueError("cusp parameter must be nonzero")
    x, y = ctx.pow(c, m), ctx.pow(c, n)
    return (ctx(x), ctx(y)) if isinstance(t, Fq) else (x, y)


def _cusp_inv_codes(F, m: int, n: int, x: int, y: int) -> int:
    a, b = bezout(m, n)
    return F.mul(F.pow(x, a), F.pow(y, b))


def cusp_inv(ctx: FieldCtx, m: int, n: int, x, y):
    """(x, y) on x^n = y^m, (x, y) != (0, 0) -> t = x^a y^b with am + bn = 1."""
    xc, yc = _as_code(ctx, x), _as_code(ctx, y)
    if xc == 0 and yc == 0:
        raise ValueError("(0, 0) is the cusp point, not in the image of F_q*")
    if ctx.pow(xc, n) != ctx.pow(yc, m):
        raise ValueError(f"({xc}, {yc}) is not on x^{n} = y^{m}")
    t = _cusp_inv_codes(ctx, m, n, xc, yc)
    return ctx(t) if isinstance(x, Fq) else t


# -- quadratic extension -------------------------------------------------------

class QuadExt:
    """F_q(s), s^2 = d; element a + b*s has code a + b*q."""

    def __init__(self, ctx: FieldCtx):
        if ctx.p == 2:
            raise FieldError("quadratic extension by a square root needs odd characteristic")
        self.ctx = ctx
        self.q = ctx.q
        self.d = next(c for c in range(1, ctx.q) if not ctx.is_square(c))
        self.order = self.q * self.q
        self._build_tables()

    def split(self, x: int) -> tuple[int, int]:
        return x % self.q, x // self.q

    def join(self, a: int, b: int) -> int:
        return a + b * self.q

    def is_base(self, x: int) -> bool:
        return x < self.q

    def add(self, x: int, y: int) -> int:
        (a, b), (c, e) = self.split(x), self.split(y)
        return self.join(self.ctx.add(a, c), self.ctx.add(b, e))

    def sub(self, x: int, y: int) -> int:
        (a, b), (c, e) = self.split(x), self.split(y)
        return self.join(self.ctx.sub(a, c), self.ctx.sub(b, e))

    def _slow_mul(self, x: int, y: int) -> int:
        f = self.ctx
        (a, b), (c, e) = self.split(x), self.split(y)
        re = f.add(f.mul(a, c), f.mul(self.d, f.mul(b, e)))
        im = f.add(f.mul(a, e), f.mul(b, c))
        return self.join(re, im)

    def _build_tables(self) -> None:
        N = self.order - 1
        primes = list(factor(N))
        g = 0
        for cand in range(2, self.order):
            if all(self._slow_pow(cand, N // r) != 1 for r in primes):
                g = cand
                break
        exp = [1] * N
        for i in range(1, N):
            exp[i] = self._slow_mul(exp[i - 1], g)
        log = [-1] * self.order
        for i, v in enumerate(exp):
            log[v] = i
        self.generator, self._exp, self._log, self._N = g, exp, log, N

    def _slow_pow(self, x: int, e: int) -> int:
        r, b = 1, x
        while e:
            if e & 1:
                r = self._slow_mul(r, b)
            b = self._slow_mul(b, b)
            e >>= 1
        return r

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        return self._exp[(self._log[x] + self._log[y]) % self._N]

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[(-self._log[x]) % self._N]

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def pow(self, x: int, e: int) -> int:
        if x == 0:
            if e <= 0:
                raise ZeroDivisionError("zero to a non-positive power")
            return 0
        return self._exp[(self._log[x] * e) % self._N]

    def conj(self, x: int) -> int:
        a, b = self.split(x)
        return self.join(a, self.ctx.neg(b))

    def fmt(self, x: int) -> str:
        a, b = self.split(x)
        return str(a) if b == 0 else f"{a}+{b}s"


# -- eigendata -----------------------------------------------------------------

INF_LINE = -1  # the line through (0, 1); other lines are keyed by slope


@dataclass(frozen=True)
class _Eig:
    eigs: tuple[int, ...]         # distinct eigenvalues (K codes)
    lines: tuple[int, ...] | None  # aligned eigenlines; None for scalars
    diag: bool
    scalar: bool


def _eigenline(K: QuadExt, M: tuple[int, ...], lam: int) -> int:
    a, b, c, d = M
    if K.sub(a, lam) or b:
        # kernel vector (b, lam - a)
        return INF_LINE if b == 0 else K.div(K.sub(lam, a), b)
    # first row vanishes; kernel vector (lam - d, c)
    x0 = K.sub(lam, d)
    return INF_LINE if x0 == 0 else K.div(c, x0)


def eigendata(K: QuadExt, M: tuple[int, ...]) -> _Eig:
    f = K.ctx
    a, b, c, d = M
    if b == 0 and c == 0 and a == d:
        return _Eig((a,), None, True, True)
    tr = f.add(a, d)
    det = f.sub(f.mul(a, d), f.mul(b, c))
    half = f.inv(f.scalar(2))
    disc = f.sub(f.mul(tr, tr), f.mul(f.scalar(4), det))
    h = f.mul(tr, half)
    if disc == 0:
        return _Eig((h,), (_eigenline(K, M, h),), False, False)
    r = f.sqrt(disc)
    if r is not None:
        rr = f.mul(r, half)
        l1, l2 = f.add(h, rr), f.sub(h, rr)
    else:
        r = f.sqrt(f.div(disc, K.d))
        rr = f.mul(r, half)
        l1, l2 = K.join(h, rr), K.join(h, f.neg(rr))
    eigs = (l1, l2)
    return _Eig(eigs, tuple(_eigenline(K, M, lam) for lam in eigs), True, False)


@dataclass(frozen=True, order=True)
class StratumLabel:
    family: str
    twist: str = "split"

    def __post_init__(self):
        if self.family not in STRATUM_FIBER_EXP:
            raise ValueError(f"unknown stratum {self.family!r}")
        if self.twist not in TWISTS:
            raise ValueError(f"unknown twist {self.twist!r}")

    @property
    def fiber_exp(self) -> int:
        return STRATUM_FIBER_EXP[self.family]

    @property
    def value(self) -> str:
        return self.family

    def sort_key(self) -> tuple[int, int]:
        return STRATA.index(self.family), TWISTS.index(self.twist)

    def __str__(self) -> str:
        return f"{self.family}/{self.twist}"


@dataclass(frozen=True)
class EigenData:
    eig_a: tuple[str, ...]
    eig_b: tuple[str, ...]
    diag_a: bool
    diag_b: bool
    omega: str | None
    shared_lines: int
    params: tuple[str, ...] = ()


class _Classifier:
    def __init__(self, ctx: FieldCtx, n: int, m: int):
        self.ctx, self.n, self.m = ctx, n, m
        self.K = QuadExt(ctx)
        self.q = ctx.q

    def in_omega(self, t: int) -> bool:
        K, n, m = self.K, self.n, self.m
        return K.pow(t, n * m) == 1 and K.pow(t, n) != 1 and K.pow(t, m) != 1

    def cusp(self, lam: int, eta: int) -> int:
        return _cusp_inv_codes(self.K, self.m, self.n, lam, eta)

    def label(self, ea: _Eig, eb: _Eig) -> tuple[str, str, int, tuple[int, ...]]:
        """(family, twist, shared line count, cusp parameters)."""
        q = self.q
        twist = "quadratic" if any(e >= q for e in ea.eigs + eb.eigs) else "split"
        if ea.scalar and eb.scalar:
            t = self.cusp(ea.eigs[0], eb.eigs[0])
            return ("B1" if self.in_omega(t) else "B2"), twist, 2, (t,)
        if ea.scalar or eb.scalar:
            other = eb if ea.scalar else ea
            pairs = [((ea.eigs[0], e) if ea.scalar else (e, eb.eigs[0])) for e in other.eigs]
            shared = len(other.eigs)
            both_diag = other.diag
        else:
            common = set(ea.lines) & set(eb.lines)
            if not common:
                return self._irr(ea, eb), twist, 0, ()
            shared = len(common)
            both_diag = ea.diag and eb.diag
            la = dict(zip(ea.lines, ea.eigs))
            lb = dict(zip(eb.lines, eb.eigs))
            first = min(common)
            pairs = [(la[first], lb[first])]
            if len(ea.eigs) == 2 and len(eb.eigs) == 2:
                rest_a = [e for e in ea.eigs if e != la[first]]
                rest_b = [e for e in eb.eigs if e != lb[first]]
                pairs.append((rest_a[0], rest_b[0]))
        ts = tuple(self.cusp(x, y) for x, y in pairs)
        if both_diag:
            k = sum(self.in_omega(t) for t in ts)
            return ("A1", "A2", "A3")[2 - k], twist, shared, ts
        return ("C1" if self.in_omega(ts[0]) else "C2"), twist, shared, ts[:1]

    def _irr(self, ea: _Eig, eb: _Eig) -> str:
        K = self.K
        omega = K.pow(ea.eigs[0], self.n)
        if omega != 1:
            return "IRR5"
        one_a, one_b = 1 in ea.eigs, 1 in eb.eigs
        if one_a and one_b:
            return "IRR4"
        if one_a:
            return "IRR3"
        if one_b:
            return "IRR2"
        return "IRR1"


def _require_strata_domain(ctx: FieldCtx, n: int, m: int, max_q: int) -> None:
    if ctx.q > max_q:
        raise ValueError(f"q = {ctx.q} exceeds stratification bound {max_q}")
    if ctx.p == 2 or n % ctx.p == 0 or m % ctx.p == 0:
        raise HypothesisError(f"characteristic {ctx.p} divides 2nm for (n, m) = ({n}, {m})")
    if n % 2 == 0 or m % 2 == 0:
        raise HypothesisError("stratification needs n and m odd")
    if gcd(n, m) != 1:
        raise HypothesisError(f"{n} and {m} are not coprime")


def _to_tuple(g) -> tuple[int, ...]:
    if isinstance(g, GroupElement):
        return tuple(g.linear)
    return tuple(int(x) for x in g)


def classify(A0, B0, n: int, m: int, ctx: FieldCtx | None = None) -> tuple[StratumLabel, EigenData]:
    """Stratum of a GL2 pair with A0^n = B0^m."""
    if ctx is None:
        if not isinstance(A0, GroupElement):
            raise ValueError("pass ctx when A0, B0 are plain tuples")
        ctx = A0.group.ctx
    a, b = _to_tuple(A0), _to_tuple(B0)
    G = GroupDescriptor(ctx, 2, False)
    ga, gb = G.element(a), G.element(b)
    if (ga ** n).linear != (gb ** m).linear:
        raise ValueError("classify needs A0^n = B0^m")
    cl = _Classifier(ctx, n, m)
    K = cl.K
    ea, eb = eigendata(K, a), eigendata(K, b)
    fam, twist, shared, ts = cl.label(ea, eb)
    pw = (ga ** n).linear
    omega = K.fmt(pw[0]) if pw[1] == 0 and pw[2] == 0 and pw[0] == pw[3] else None
    data = EigenData(tuple(K.fmt(e) for e in ea.eigs), tuple(K.fmt(e) for e in eb.eigs),
                     ea.diag, eb.diag, omega, shared, tuple(K.fmt(t) for t in ts))
    return StratumLabel(fam, twist), data


# -- stratified counting -------------------------------------------------------

@dataclass
class StratumTally:
    base_pairs: int = 0
    points: int = 0
    anomalous: int = 0   # pairs whose kernel dimension differs from the label's exponent
    one_line: int = 0    # reducible pairs sharing exactly one eigenline

    def add(self, q: int, kdim: int, exp: int, one_line: bool) -> None:
        self.base_pairs += 1
        self.points += q**kdim
        self.anomalous += kdim != exp
        self.one_line += one_line


def _gl2_all(ctx: FieldCtx) -> np.ndarray:
    grid = _digit_grid(ctx.q, 4)
    return grid[batch_det(ctx, grid) != 0]


def _relation_pairs(ctx: FieldCtx, comps: np.ndarray, n: int, m: int):
    q = ctx.q
    ka = batch_encode_comps(q, _batch_pow_lin(ctx, comps, n))
    kb = batch_encode_comps(q, _batch_pow_lin(ctx, comps, m))
    by_b: dict[int, list[int]] = {}
    for j, k in enumerate(kb.tolist()):
        by_b.setdefault(k, []).append(j)
    for i, k in enumerate(ka.tolist()):
        for j in by_b.get(k, ()):
            yield i, j


def walk_pairs(ctx: FieldCtx, n: int, m: int, *, max_q: int = STRATA_MAX_Q):
    """Yield (A0, B0, family, twist, shared_lines, kdim, eig_A0, eig_B0) per relation pair."""
    _require_strata_domain(ctx, n, m, max_q)
    comps = _gl2_all(ctx)
    cl = _Classifier(ctx, n, m)
    rows = [tuple(r) for r in comps.tolist()]
    eig = [eigendata(cl.K, r) for r in rows]
    ca = colspace_class(ctx, batch_cyclotomic_sum(ctx, comps, n)).tolist()
    cb = colspace_class(ctx, batch_cyclotomic_sum(ctx, comps, m)).tolist()
    q = ctx.q
    for i, j in _relation_pairs(ctx, comps, n, m):
        fam, twist, shared, _ = cl.label(eig[i], eig[j])
        kdim = 4 - _joint_rank(q, ca[i], cb[j])
        yield rows[i], rows[j], fam, twist, shared, kdim, eig[i], eig[j]


def stratified_count(ctx: FieldCtx, n: int, m: int, *,
                     max_q: int = STRATA_MAX_Q) -> dict[StratumLabel, StratumTally]:
    out: dict[StratumLabel, StratumTally] = {}
    q = ctx.q
    for _, _, fam, twist, shared, kdim, ea, eb in walk_pairs(ctx, n, m, max_q=max_q):
        lab = StratumLabel(fam, twist)
        tally = out.get(lab)
        if tally is None:
            tally = out[lab] = StratumTally()
        one = fam[0] == "A" and shared == 1 and not (ea.scalar or eb.scalar)
        tally.add(q, kdim, STRATUM_FIBER_EXP[fam], one)
    return dict(sorted(out.items(), key=lambda kv: kv[0].sort_key()))


def family_totals(tallies: dict[StratumLabel, StratumTally], *,
                  twist: str | None = None) -> dict[str, StratumTally]:
    """Merge tallies per stratum name, optionally keeping one twist class."""
    out: dict[str, StratumTally] = {}
    for lab, t in tallies.items():
        if twist is not None and lab.twist != twist:
            continue
        acc = out.setdefault(lab.family, StratumTally())
        acc.base_pairs += t.base_pairs
        acc.points += t.points
        acc.anomalous += t.anomalous
        acc.one_line += t.one_line
    return out


CSV_HEADER = ("label", "twist", "base_pairs", "fiber_exp", "points", "anomalous", "one_line")


def strata_csv(tallies: dict[StratumLabel, StratumTally]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for lab, t in sorted(tallies.items(), key=lambda kv: kv[0].sort_key()):
        w.writerow([lab.family, lab.twist, t.base_pairs, lab.fiber_exp, t.points,
                    t.anomalous, t.one_line])
    return buf.getvalue()


def agl1_stratified_count(ctx: FieldCtx, n: int, m: int) -> tuple[int, int]:
    """AGL1 points split by the cusp parameter: (t outside Omega, t in Omega)."""
    if n % ctx.p == 0 or m % ctx.p == 0:
        raise HypothesisError(f"characteristic {ctx.p} divides nm for (n, m) = ({n}, {m})")
    if gcd(n, m) != 1:
        raise HypothesisError(f"{n} and {m} are not coprime")
    q = ctx.q
    omega = omega_set(ctx, m, n)
    outside = inside = 0
    pow_m = {b: ctx.pow(b, m) for b in range(1, q)}
    by_val: dict[int, list[int]] = {}
    for b, v in pow_m.items():
        by_val.setdefault(v, []).append(b)
    for a in range(1, q):
        for b in by_val.get(ctx.pow(a, n), ()):
            fiber = q * q if (_phi_scalar(ctx, a, n) == 0 and _phi_scalar(ctx, b, m) == 0) else q
            t = _cusp_inv_codes(ctx, m, n, a, b)
            if t in omega:
                inside += fiber
            else:
                outside += fiber
    return outside, inside


# -- Schur audit ---------------------------------------------------------------

class SchurViolation(AssertionError):
    """An irreducible pair whose relation power is not scalar."""


@dataclass
class SchurReport:
    q: int
    n: int
    m: int
    irr_pairs: int = 0
    split_pairs: int = 0
    twisted_pairs: int = 0
    twisted_by_label: dict[str, int] = field(default_factory=dict)
    nondiagonalizable: int = 0
    repeated_eigenvalues: int = 0

    def lines(self) -> list[str]:
        out = [f"q={self.q} n={self.n} m={self.m}",
               f"irreducible pairs: {self.irr_pairs}",
               f"  split eigendata: {self.split_pairs}",
               f"  quadratic-twist eigendata: {self.twisted_pairs}"]
        for lab, c in sorted(self.twisted_by_label.items()):
            out.append(f"    {lab}: {c}")
        out.append(f"non-diagonalizable irreducible pairs: {self.nondiagonalizable}")
        out.append(f"irreducible pairs with a repeated eigenvalue: {self.repeated_eigenvalues}")
        return out


def schur_audit(ctx: FieldCtx, n: int, m: int, *, max_q: int = STRATA_MAX_Q) -> SchurReport:
    rep = SchurReport(ctx.q, n, m)
    G = GroupDescriptor(ctx, 2, False)
    for a, b, fam, twist, _, _, ea, eb in walk_pairs(ctx, n, m, max_q=max_q):
        if not fam.startswith("IRR"):
            continue
        pw = (G.element(a) ** n).linear
        if not (pw[1] == 0 and pw[2] == 0 and pw[0] == pw[3] and pw[0] != 0):
            raise SchurViolation(f"A0^n not scalar for irreducible pair {a}, {b}")
        rep.irr_pairs += 1
        if twist == "split":
            rep.split_pairs += 1
        else:
            rep.twisted_pairs += 1
            rep.twisted_by_label[fam] = rep.twisted_by_label.get(fam, 0) + 1
        rep.nondiagonalizable += not (ea.diag and eb.diag)
        rep.repeated_eigenvalues += len(ea.eigs) < 2 or len(eb.eigs) < 2
    return rep


# -- +/- class audits ----------------------------------------------------------

@dataclass(frozen=True)
class PMReport:
    q: int
    stable_point_pairs: int
    split_point_pairs: int
    conjugate_point_pairs: int
    stable_line_pairs: int
    a_base_pairs: int

    @property
    def expected(self) -> tuple[int, int, int]:
        q = self.q
        return (q - 1) ** 2, q * q, q * q * (q - 1) ** 2 - q * (q - 1)

    @property
    def ok(self) -> bool:
        return (self.stable_point_pairs, self.stable_line_pairs, self.a_base_pairs) == self.expected

    def lines(self) -> list[str]:
        e = self.expected
        return [f"q={self.q}",
                f"stable pairs in (F_q2^*)^2 - diag / S2: {self.stable_point_pairs} "
                f"(split {self.split_point_pairs}, conjugate {self.conjugate_point_pairs}; expect {e[0]})",
                f"stable pairs of distinct lines in P1(F_q2): {self.stable_line_pairs} (expect {e[1]})",
                f"GL2 elements with distinct eigenvalues: {self.a_base_pairs} (expect {e[2]})"]


def _stable_unordered_pairs(points: list[int], frob: dict[int, int]) -> tuple[int, int]:
    """Unordered pairs {a, b}, a != b, with {F a, F b} = {a, b}: (both fixed, swapped)."""
    fixed = sorted(x for x in points if frob[x] == x)
    both_fixed = len(fixed) * (len(fixed) - 1) // 2
    swapped = sum(1 for x in points if frob[x] != x and frob[x] > x)
    return both_fixed, swapped


def pm_class_audit(ctx: FieldCtx, *, max_q: int = STRATA_MAX_Q) -> PMReport:
    if ctx.q > max_q:
        raise ValueError(f"q = {ctx.q} exceeds audit bound {max_q}")
    q = ctx.q
    big = make_field(ctx.p, 2 * ctx.k)
    units = list(range(1, big.q))
    frob = {x: big.pow(x, q) for x in range(big.q)}
    split, conj = _stable_unordered_pairs(units, frob)
    # P^1(F_q2): slope codes plus infinity, Frobenius acts on slopes
    inf = big.q
    pts = list(range(big.q)) + [inf]
    frob_line = dict(frob)
    frob_line[inf] = inf
    lsplit, lconj = _stable_unordered_pairs(pts, frob_line)
    comps = _gl2_all(ctx)
    M, S, N = ctx.mul_table, ctx.add_table, ctx.neg_table
    tr = S[comps[:, 0], comps[:, 3]]
    det = batch_det(ctx, comps)
    disc = S[M[tr, tr], N[M[ctx.scalar(4), det]]]
    a_base = int(np.count_nonzero(disc))
    return PMReport(q, split + conj, split, conj, lsplit + lconj, a_base)
