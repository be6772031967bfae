"""Command-line interface: ``knotvar <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 hypothesis violation
(rerun with --force), 3 usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import closedform as cf
from .ffield import FieldError, field_of_order
from .matgroups import GroupDescriptor, GroupError
from .repcount import (TIERS, HypothesisError, count, count_agl2_reduced, stderr_progress)

EXIT_OK, EXIT_VERIFY, EXIT_HYPOTHESIS, EXIT_USAGE = 0, 1, 2, 3
GROUPS = ("agl1", "agl2", "gl1", "gl2")
SUITE_NAMES = ("ffield", "agl1", "agl2", "lemmas", "symbolic")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _relation_args(p: argparse.ArgumentParser, *, with_q: bool = False) -> None:
    p.add_argument("--m", type=int, required=True, help="B side exponent in A^n = B^m")
    p.add_argument("--n", type=int, required=True, help="A side exponent in A^n = B^m")
    if with_q:
        p.add_argument("--q", type=int, required=True, help="field order (prime power)")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="knotvar", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("count", help="exact |Rep_{m,n}(G(F_q))| by enumeration")
    p.add_argument("--group", choices=GROUPS, default="agl1")
    _relation_args(p, with_q=True)
    p.add_argument("--tier", choices=TIERS, default=None)
    p.add_argument("--strata", action="store_true", help="AGL2: print stratified CSV instead")
    p.add_argument("--twist-census", action="store_true", help="AGL2: report twisted irreducibles")
    p.add_argument("--force", action="store_true")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--progress", action="store_true")

    p = sub.add_parser("motive", help="closed-form motive in q, xi_m, xi_n")
    p.add_argument("--group", choices=("agl1", "agl2"), default="agl1")
    _relation_args(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--stratum", default=None, help="AGL2 stratum or family label")
    p.add_argument("--corrected", action="store_true", help="AGL2 with reducible-stratum fixes")
    p.add_argument("--force", action="store_true")

    p = sub.add_parser("epoly", help="E-polynomial (every xi_l = l)")
    p.add_argument("--group", choices=("agl1", "agl2"), default="agl1")
    _relation_args(p)
    p.add_argument("--corrected", action="store_true")
    p.add_argument("--force", action="store_true")

    p = sub.add_parser("predict", help="closed form specialized at F_q")
    p.add_argument("--group", choices=("agl1", "agl2"), default="agl1")
    _relation_args(p, with_q=True)
    p.add_argument("--corrected", action="store_true")
    p.add_argument("--force", action="store_true")

    p = sub.add_parser("gap", help="AGL2 engine count minus closed form")
    _relation_args(p, with_q=True)
    p.add_argument("--force", action="store_true")
    p.add_argument("--threads", type=int, default=1)

    p = sub.add_parser("trends", help="trend scan over prime powers")
    p.add_argument("--group", choices=("agl1", "agl2"), default="agl1")
    _relation_args(p)
    p.add_argument("--limit", type=int, default=3000)
    p.add_argument("--crossover", type=int, default=64)
    p.add_argument("--out", default=None, help="CSV path (default stdout)")
    p.add_argument("--gnuplot", default=None, help="write a gnuplot script here")
    p.add_argument("--plot", default=None, help="render a PNG here")
    p.add_argument("--summary", default=None, help="write the JSON summary here")
    p.add_argument("--threads", type=int, default=1)

    p = sub.add_parser("residue-evidence", help="primes in classes 1 and 2 mod nm")
    _relation_args(p)
    p.add_argument("--limit", type=int, default=3000)

    p = sub.add_parser("density", help="right-trend density summary (JSON)")
    _relation_args(p)
    p.add_argument("--limit", type=int, default=3000)

    p = sub.add_parser("verify", help="run property suites")
    p.add_argument("--suite", choices=SUITE_NAMES + ("all",), default="all")
    p.add_argument("--max-q", type=int, default=13)

    sub.add_parser("selftest", help="fast checks expected to pass")
    return ap


def _out(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _field(q: int):
    return field_of_order(q)


def _check_hyp(q: int, m: int, n: int, group: str, force: bool) -> bool:
    """True when outside the hypotheses (and --force given)."""
    g = "agl2" if group == "agl2" else "agl1"
    if cf.hypotheses_ok(q, m, n, g):
        return False
    if not force:
        raise HypothesisError(f"(m,n)=({m},{n}) at q={q} is outside the {g.upper()} hypotheses")
    return True


def cmd_count(a) -> int:
    F = _field(a.q)
    probe = _check_hyp(a.q, a.m, a.n, a.group, a.force)
    if a.strata or a.twist_census:
        if a.group != "agl2":
            raise UsageError("--strata and --twist-census need --group agl2")
        from .strata import schur_audit, strata_csv, stratified_count
        if a.strata:
            _out(strata_csv(stratified_count(F, a.n, a.m)))
        if a.twist_census:
            _out("\n".join(schur_audit(F, a.n, a.m).lines()))
        return EXIT_OK
    rank = 2 if a.group.endswith("2") else 1
    d = GroupDescriptor(F, rank, a.group.startswith("a"))
    tier = a.tier or ("reduced" if a.group == "agl2" else "fibers")
    kw = {}
    if tier == "reduced":
        kw = {"threads": a.threads}
        if a.progress:
            kw["progress"] = stderr_progress(f"{d.name}")
    _out(str(count(d, a.n, a.m, tier, **kw)))
    if probe:
        _out("# outside-theorem probe")
    return EXIT_OK


def _motive(a):
    if a.group == "agl1":
        return cf.motive_agl1(a.m, a.n)
    if getattr(a, "stratum", None):
        return cf.stratum_motive(a.stratum, a.m, a.n)
    if a.corrected:
        return cf.motive_agl2_corrected(a.m, a.n, force=a.force)
    return cf.motive_agl2(a.m, a.n, force=a.force)


def cmd_motive(a) -> int:
    e = _motive(a)
    _out(e.to_json() if a.format == "json" else str(e))
    return EXIT_OK


def cmd_epoly(a) -> int:
    _out(cf.complex_specialization(_motive(a), a.m, a.n).format("q"))
    return EXIT_OK


def cmd_predict(a) -> int:
    probe = _check_hyp(a.q, a.m, a.n, a.group, a.force)
    e = _motive(a)
    xm, xn = cf.xi_pair(a.q, a.m, a.n)
    _out(str(e.specialize(xm, xn)(a.q)))
    if probe:
        _out("# outside-theorem probe")
    return EXIT_OK


def cmd_gap(a) -> int:
    probe = _check_hyp(a.q, a.m, a.n, "agl2", a.force)
    F = _field(a.q)
    engine = count_agl2_reduced(F, a.n, a.m, threads=a.threads)
    xm, xn = cf.xi_pair(a.q, a.m, a.n)
    pub = cf.motive_agl2(a.m, a.n, force=True).specialize(xm, xn)(a.q)
    cor = cf.motive_agl2_corrected(a.m, a.n, force=True).specialize(xm, xn)(a.q)
    _out(f"q={a.q} m={a.m} n={a.n} xi_m={xm} xi_n={xn} clean={int(cf.is_clean(a.q, a.m, a.n))}")
    _out(f"engine={engine}")
    _out(f"formula={pub}")
    _out(f"gap={engine - pub}")
    _out(f"corrected={cor}")
    _out(f"corrected_gap={engine - cor}")
    if probe:
        _out("# outside-theorem probe")
    return EXIT_OK


def cmd_trends(a) -> int:
    from .trends import density_report, gnuplot_script, trend_polynomials, trend_scan, trends_csv
    recs = trend_scan(a.m, a.n, a.group, a.limit, crossover=a.crossover, threads=a.threads)
    text = trends_csv(recs)
    if a.out:
        Path(a.out).write_text(text)
    else:
        _out(text)
    if a.gnuplot:
        csv_ref = a.out or "trends.csv"
        png = str(Path(a.gnuplot).with_suffix(".png"))
        Path(a.gnuplot).write_text(gnuplot_script(csv_ref, a.m, a.n, trend_polynomials(recs),
                                                  output=png))
    if a.plot:
        from .plotting import plot_trends
        plot_trends(recs, a.plot, a.m, a.n)
    if a.summary:
        if a.group != "agl1":
            raise UsageError("--summary is for AGL1 scans")
        Path(a.summary).write_text(density_report(a.m, a.n, a.limit, records=recs).to_json() + "\n")
    return EXIT_OK


def cmd_residue(a) -> int:
    from .trends import residue_evidence
    _out("\n".join(residue_evidence(a.m, a.n, a.limit).lines()))
    return EXIT_OK


def cmd_density(a) -> int:
    from .trends import density_report
    _out(density_report(a.m, a.n, a.limit).to_json())
    return EXIT_OK


def _report(checks) -> int:
    for c in checks:
        _out(c.line())
    failed = sum(c.ok is False for c in checks)
    passed = sum(c.ok is True for c in checks)
    _out(f"{passed} passed, {failed} failed")
    return EXIT_VERIFY if failed else EXIT_OK


def cmd_verify(a) -> int:
    from .verify import run_suites
    names = list(SUITE_NAMES) if a.suite == "all" else [a.suite]
    return _report(run_suites(names, a.max_q))


def cmd_selftest(a) -> int:
    from .verify import selftest
    return _report(selftest())


COMMANDS = {
    "count": cmd_count, "motive": cmd_motive, "epoly": cmd_epoly, "predict": cmd_predict,
    "gap": cmd_gap, "trends": cmd_trends, "residue-evidence": cmd_residue,
    "density": cmd_density, "verify": cmd_verify, "selftest": cmd_selftest,
}


def run(argv: list[str] | None = None) -> int:
    try:
        a = build_parser().parse_args(argv)
        return COMMANDS[a.command](a)
    except UsageError as e:
        sys.stderr.write(f"{e}\n")
        return EXIT_USAGE
    except HypothesisError as e:
        sys.stderr.write(f"hypothesis violation: {e} (use --force to probe anyway)\n")
        return EXIT_HYPOTHESIS
    except (FieldError, GroupError, ValueError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE


def main() -> int:
    return run(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
