"""Trend classification of representation counts across prime powers."""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import gcd

import numpy as np

from . import closedform
from .ffield import field_of_order
from .matgroups import GroupDescriptor
from .repcount import count_agl1_fibration, count_agl2_reduced, count_power_fibers

PRIME_POWER_LIMIT = 10**7
DEFAULT_CROSSOVER = 64
AGL2_SCAN_MAX_Q = 31


@dataclass(frozen=True)
class TrendRecord:
    q: int
    p: int
    k: int
    d_n: int
    d_m: int
    count: int
    predicted: int
    right_trend: bool
    clean: bool
    hypothesis_ok: bool
    provenance: str

    @property
    def on_trend(self) -> bool:
        return self.count == self.predicted


CSV_FIELDS = ("q", "p", "k", "d_n", "d_m", "count", "predicted", "right_trend", "clean",
              "hypothesis_ok", "provenance")


def prime_powers(limit: int) -> list[tuple[int, int, int]]:
    """All (p^k, p, k) with p^k <= limit, ascending."""
    if limit > PRIME_POWER_LIMIT:
        raise ValueError(f"limit {limit} exceeds {PRIME_POWER_LIMIT}")
    if limit < 2:
        return []
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, int(limit**0.5) + 1):
        if sieve[i]:
            sieve[i * i::i] = False
    out = []
    for p in np.flatnonzero(sieve).tolist():
        q, k = p, 1
        while q <= limit:
            out.append((q, p, k))
            q *= p
            k += 1
    out.sort()
    return out


def _agl1_engine(q: int, m: int, n: int) -> int:
    return count_power_fibers(GroupDescriptor(field_of_order(q), 1, True), n, m)


def _predicted(group: str, m: int, n: int, d_m: int, d_n: int, q: int) -> int:
    return closedform.counting_polynomial(m, n, group, d_m, d_n)(q)


def _record(q: int, p: int, k: int, m: int, n: int, group: str, crossover: int) -> TrendRecord:
    d_m, d_n = gcd(m, q - 1), gcd(n, q - 1)
    ok = closedform.hypotheses_ok(q, m, n, group)
    clean = closedform.is_clean(q, m, n)
    right = (q - 1) % m == 0 and (q - 1) % n == 0
    if group == "AGL1":
        pred = _predicted(group, m, n, d_m, d_n, q)
        if q <= crossover:
            count, prov = _agl1_engine(q, m, n), "engine"
        elif ok:
            count, prov = pred, "formula"
        else:
            count, prov = count_agl1_fibration(field_of_order(q), n, m), "engine"
    else:
        pred = _predicted(group, m, n, d_m, d_n, q) if ok else 0
        count, prov = count_agl2_reduced(field_of_order(q), n, m), "engine"
    return TrendRecord(q, p, k, d_n, d_m, count, pred, right, clean, ok, prov)


def trend_scan(m: int, n: int, group: str = "AGL1", limit: int = 3000, *,
               crossover: int = DEFAULT_CROSSOVER, threads: int = 1) -> list[TrendRecord]:
    group = group.upper()
    if gcd(m, n) != 1:
        raise ValueError(f"{m} and {n} are not coprime")
    if group == "AGL2" and limit > AGL2_SCAN_MAX_Q:
        raise ValueError(f"AGL2 trend scans are capped at q <= {AGL2_SCAN_MAX_Q}")
    if group not in ("AGL1", "AGL2"):
        raise ValueError(f"unknown group {group!r}")
    pps = prime_powers(limit)

    def work(t):
        return _record(*t, m, n, group, crossover)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            return list(ex.map(work, pps))
    return [work(t) for t in pps]


def trends_csv(records: list[TrendRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for r in records:
        row = asdict(r)
        w.writerow([int(v) if isinstance(v, bool) else v for v in (row[f] for f in CSV_FIELDS)])
    return buf.getvalue()


@dataclass
class TrendClass:
    d_m: int
    d_n: int
    coeff: int
    count_points: int = 0


@dataclass
class DensityReport:
    m: int
    n: int
    limit: int
    total: int
    right_trend_points: int
    trends: list[TrendClass] = field(default_factory=list)
    off_trend: list[int] = field(default_factory=list)

    @property
    def right_trend_fraction(self) -> Fraction:
        return Fraction(self.right_trend_points, self.total) if self.total else Fraction(0)

    def summary(self) -> dict:
        return {
            "trends": [asdict(t) for t in self.trends],
            "right_trend_fraction": str(self.right_trend_fraction),
            "right_trend_points": self.right_trend_points,
            "total_points": self.total,
            "off_trend_q": self.off_trend,
        }

    def to_json(self) -> str:
        return json.dumps(self.summary(), sort_keys=True, indent=2)


def density_report(m: int, n: int, limit: int = 3000, *,
                   records: list[TrendRecord] | None = None, **kw) -> DensityReport:
    """Right-trend share and per-(d_m, d_n) multiplicities of an AGL1 scan.

    Records outside the hypotheses that miss their trend polynomial are
    listed in ``off_trend`` rather than folded into a trend class.
    """
    recs = records if records is not None else trend_scan(m, n, "AGL1", limit, **kw)
    classes: dict[tuple[int, int], TrendClass] = {}
    off = []
    for r in recs:
        if not r.on_trend:
            off.append(r.q)
            continue
        key = (r.d_m, r.d_n)
        if key not in classes:
            classes[key] = TrendClass(r.d_m, r.d_n, closedform.trend_coefficient(r.d_m, r.d_n))
        classes[key].count_points += 1
    right = sum(r.right_trend for r in recs)
    trends = [classes[k] for k in sorted(classes)]
    return DensityReport(m, n, limit, len(recs), right, trends, off)


def trend_polynomials(records: list[TrendRecord]) -> list[int]:
    """Distinct coefficients c such that some record has count = c (q^2 - q)."""
    cs = set()
    for r in records:
        base = r.q * r.q - r.q
        if r.count % base == 0:
            cs.add(r.count // base)
    return sorted(cs)


@dataclass
class ResidueWitness:
    p: int
    count: int
    coeff: int | None
    hypothesis_ok: bool


@dataclass
class ResidueEvidence:
    m: int
    n: int
    limit: int
    classes: dict[int, list[ResidueWitness]]
    need: int = 3

    def sufficient(self, residue: int) -> bool:
        return len(self.classes.get(residue, [])) >= self.need

    def coefficients(self, residue: int) -> set[int]:
        return {w.coeff for w in self.classes.get(residue, []) if w.coeff is not None}

    @property
    def distinct(self) -> bool:
        a, b = self.coefficients(1), self.coefficients(2)
        return bool(a) and bool(b) and a.isdisjoint(b)

    def lines(self) -> list[str]:
        mod = self.m * self.n
        out = [f"(m,n)=({self.m},{self.n}) primes up to {self.limit}, modulus {mod}"]
        for res in sorted(self.classes):
            ws = self.classes[res]
            status = "ok" if self.sufficient(res) else f"insufficient data ({len(ws)} < {self.need})"
            out.append(f"class {res} mod {mod}: {status}")
            for w in ws:
                poly = f"{w.coeff}(t^2-t)" if w.coeff is not None else "off-trend"
                flag = "" if w.hypothesis_ok else " [char divides nm]"
                out.append(f"  p={w.p} count={w.count} trend={poly}{flag}")
        out.append(f"trend polynomials distinct: {'yes' if self.distinct else 'no'}")
        return out


def residue_evidence(m: int, n: int, limit: int = 3000, *, need: int = 3,
                     crossover: int = DEFAULT_CROSSOVER) -> ResidueEvidence:
    mod = m * n
    if mod >= limit:
        raise ValueError(f"nm = {mod} must be below the limit {limit}")
    classes: dict[int, list[ResidueWitness]] = {1: [], 2: []}
    for q, p, k in prime_powers(limit):
        if k != 1:
            continue
        res = p % mod
        if res not in classes or len(classes[res]) >= need:
            continue
        r = _record(q, p, k, m, n, "AGL1", crossover)
        base = q * q - q
        coeff = r.count // base if r.count % base == 0 else None
        classes[res].append(ResidueWitness(p, r.count, coeff, r.hypothesis_ok))
        if all(len(v) >= need for v in classes.values()):
            break
    return ResidueEvidence(m, n, limit, classes, need)


def gnuplot_script(csv_path: str, m: int, n: int, coeffs: list[int], *,
                   output: str | None = None) -> str:
    """A gnuplot script plotting count against q from the CSV, with trend curves."""
    lines = ["set datafile separator ','",
             "set key left top",
             "set logscale xy",
             "set xlabel 'q'",
             "set ylabel 'points'",
             f"set title 'Rep_({m},{n})(AGL1(F_q))'"]
    if output:
        lines += ["set terminal pngcairo size 900,600", f"set output '{output}'"]
    plots = [f"'{csv_path}' using 1:6 every ::1 with points pt 7 ps 0.5 title 'count'"]
    plots += [f"{c}*(x**2-x) with lines title '{c}(t^2-t)'" for c in coeffs]
    lines.append("plot " + ", \\\n     ".join(plots))
    return "\n".join(lines) + "\n"
