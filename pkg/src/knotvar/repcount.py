"""Exact counting of |Rep_{m,n}(G)(F_q)| = #{(A, B) in G^2 : A^n = B^m}.

Three engines, each usable as an oracle for the others:

* ``count_naive``        compare every power A^n against every power B^m;
* ``count_power_fibers`` tabulate the fibers of the two power maps by code;
* ``count_agl2_reduced`` AGL2 only: sum q^dim ker over pairs of linear parts.

Counts are python ints throughout.
"""

from __future__ import annotations

import sys
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Iterator

import numpy as np

from . import closedform
from .ffield import FieldCtx
from .matgroups import (GroupDescriptor, GroupElement, GroupError, _det, _matmul,
                        batch_cyclotomic_sum, batch_det, batch_encode_comps,
                        batch_matmul, check_order, _digit_grid)

NAIVE_PAIR_BOUND = 10**8
FIBER_ORDER_BOUND = 2**27
REDUCED_MAX_Q = 64


HypothesisError = closedform.HypothesisError


def _naive_power(g: GroupElement, e: int) -> GroupElement:
    out = g.group.identity
    for _ in range(e):
        out = out * g
    return out


def count_naive(d: GroupDescriptor, n: int, m: int, *, pair_bound: int = NAIVE_PAIR_BOUND) -> int:
    """Double loop over G x G; powers by repeated multiplication."""
    order = d.order()
    if order * order > pair_bound:
        raise GroupError(f"|G|^2 = {order * order} exceeds naive bound {pair_bound}")
    elems = list(d.elements())
    pa = np.array([_naive_power(g, n).code for g in elems], dtype=np.int64)
    pb = np.array([_naive_power(g, m).code for g in elems], dtype=np.int64)
    total = 0
    step = max(1, 4_000_000 // max(1, len(pb)))
    for i in range(0, len(pa), step):
        total += int((pa[i:i + step, None] == pb[None, :]).sum())
    return total


def _merge(counters: Iterable[Counter]) -> Counter:
    out: Counter = Counter()
    for c in counters:
        out.update(c)
    return out


def _tally(keys: np.ndarray) -> Counter:
    u, c = np.unique(keys, return_counts=True)
    return Counter(dict(zip(u.tolist(), c.tolist())))


def power_fiber_tables(d: GroupDescriptor, n: int, m: int) -> tuple[Counter, Counter]:
    """C -> #{A : A^n = C} and C -> #{B : B^m = C}, keyed by code."""
    ta, tb = Counter(), Counter()
    for batch in d.batches():
        ta.update(_tally(d.batch_encode(d.batch_pow(batch, n))))
        tb.update(_tally(d.batch_encode(d.batch_pow(batch, m))))
    return ta, tb


def count_power_fibers(d: GroupDescriptor, n: int, m: int, *,
                       order_bound: int = FIBER_ORDER_BOUND) -> int:
    check_order(d, order_bound)
    ta, tb = power_fiber_tables(d, n, m)
    return sum(c * tb[k] for k, c in ta.items() if k in tb)


# -- AGL2 reduction -----------------------------------------------------------

def cyclotomic_matrix(ctx: FieldCtx, a: tuple[int, ...], l: int) -> tuple[int, ...]:
    """Phi_l(A) = I + A + ... + A^(l-1), by Horner."""
    ident = (1, 0, 0, 1) if len(a) == 4 else (1,)
    acc = ident
    for _ in range(l - 1):
        acc = tuple(ctx.add(x, y) for x, y in zip(_matmul(ctx, acc, a), ident))
    return acc


def rank_mod(ctx: FieldCtx, rows: list[list[int]]) -> int:
    """Rank of a small matrix of field codes by Gaussian elimination."""
    rows = [list(r) for r in rows]
    ncol = len(rows[0]) if rows else 0
    rank = 0
    for c in range(ncol):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = ctx.inv(rows[rank][c])
        rows[rank] = [ctx.mul(x, inv) for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c]
                rows[i] = [ctx.sub(x, ctx.mul(f, y)) for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def kernel_dim(A0: GroupElement, B0: GroupElement, n: int, m: int) -> int:
    """dim ker of (alpha, beta) -> Phi_n(A0) alpha - Phi_m(B0) beta."""
    d = A0.group
    if d.rank != 2 or d.affine or B0.group != d:
        raise GroupError("kernel_dim takes two GL2 elements over one field")
    if A0 ** n != B0 ** m:
        raise GroupError("precondition A0^n = B0^m violated")
    ctx = d.ctx
    P = cyclotomic_matrix(ctx, A0.linear, n)
    Qm = cyclotomic_matrix(ctx, B0.linear, m)
    neg = ctx.neg
    rows = [[P[0], P[1], neg(Qm[0]), neg(Qm[1])],
            [P[2], P[3], neg(Qm[2]), neg(Qm[3])]]
    return 4 - rank_mod(ctx, rows)


def colspace_class(ctx: FieldCtx, P: np.ndarray) -> np.ndarray:
    """Column space of each 2x2 matrix as an integer label.

    0..q-1: the line through (1, s) labelled s; q: the line through (0, 1);
    q+1: the zero space; q+2: the whole plane.
    """
    q = ctx.q
    zero = (P == 0).all(axis=1)
    full = batch_det(ctx, P) != 0
    c0 = np.where(((P[:, 0] != 0) | (P[:, 2] != 0))[:, None], P[:, [0, 2]], P[:, [1, 3]])
    slope = ctx.mul_table[c0[:, 1], ctx.inv_table[c0[:, 0]]]
    line = np.where(c0[:, 0] != 0, slope, q)
    return np.where(zero, q + 1, np.where(full, q + 2, line))


def _class_rank(q: int, c: int) -> int:
    return 0 if c == q + 1 else (2 if c == q + 2 else 1)


def _joint_rank(q: int, ca: int, cb: int) -> int:
    if ca == q + 2 or cb == q + 2:
        return 2
    if ca == q + 1:
        return _class_rank(q, cb)
    if cb == q + 1:
        return 1
    return 1 if ca == cb else 2


def gl2_partition(ctx: FieldCtx, a00: int) -> np.ndarray:
    """GL2 components with (0,0) entry a00; these partition GL2 as a00 varies."""
    tail = _digit_grid(ctx.q, 3)
    full = np.concatenate([np.full((len(tail), 1), a00, dtype=np.int64), tail], axis=1)
    return full[batch_det(ctx, full) != 0]


def _reduced_partition(ctx: FieldCtx, comps: np.ndarray, n: int, m: int) -> tuple[Counter, Counter]:
    q = ctx.q
    width = q + 3
    tables = []
    for e in (n, m):
        key = batch_encode_comps(q, _batch_pow_lin(ctx, comps, e))
        cls = colspace_class(ctx, batch_cyclotomic_sum(ctx, comps, e))
        tables.append(_tally(key * width + cls))
    return tables[0], tables[1]


def _batch_pow_lin(ctx: FieldCtx, A: np.ndarray, e: int) -> np.ndarray:
    result = np.tile(np.array([1, 0, 0, 1], dtype=np.int64), (len(A), 1))
    base = A
    while e:
        if e & 1:
            result = batch_matmul(ctx, result, base, 2)
        e >>= 1
        if e:
            base = batch_matmul(ctx, base, base, 2)
    return result


def _check_reduced(ctx: FieldCtx, max_q: int) -> None:
    if ctx.q > max_q:
        raise GroupError(f"q = {ctx.q} exceeds reduced-engine bound {max_q}")


def reduced_tables(ctx: FieldCtx, n: int, m: int, *, threads: int = 1,
                   progress: Callable[[int, int], None] | None = None) -> tuple[Counter, Counter]:
    """(power code, column-space class) tallies for both sides of the relation."""
    total = ctx.q
    done = 0

    def work(a00):
        nonlocal done
        out = _reduced_partition(ctx, gl2_partition(ctx, a00), n, m)
        done += 1
        if progress:
            progress(done, total)
        return out

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(work, range(total)))
    else:
        results = [work(i) for i in range(total)]
    # merge in partition order; Counter addition is associative and commutative
    return _merge(r[0] for r in results), _merge(r[1] for r in results)


def count_agl2_reduced(ctx: FieldCtx, n: int, m: int, *, method: str = "colspace",
                       threads: int = 1, max_q: int = REDUCED_MAX_Q,
                       progress: Callable[[int, int], None] | None = None) -> int:
    """|Rep(AGL2(F_q))| = sum over GL2 pairs with A0^n = B0^m of q^dim ker.

    ``method='colspace'`` groups each bucket by the column spaces of
    Phi_n(A0) and Phi_m(B0), which determine the rank of the 2x4 block
    matrix; ``method='direct'`` evaluates :func:`kernel_dim` on every pair.
    """
    _check_reduced(ctx, max_q)
    q = ctx.q
    if method == "direct":
        return _count_reduced_direct(ctx, n, m)
    if method != "colspace":
        raise ValueError(f"unknown method {method!r}")
    ta, tb = reduced_tables(ctx, n, m, threads=threads, progress=progress)
    width = q + 3
    by_key_b: dict[int, list[tuple[int, int]]] = {}
    for k, c in tb.items():
        key, cls = divmod(k, width)
        by_key_b.setdefault(key, []).append((cls, c))
    total = 0
    for k, ca_count in ta.items():
        key, ca = divmod(k, width)
        for cb, cb_count in by_key_b.get(key, ()):
            total += ca_count * cb_count * q ** (4 - _joint_rank(q, ca, cb))
    return total


def relation_buckets(ctx: FieldCtx, n: int, m: int) -> dict[int, tuple[list, list]]:
    """Power code -> (A0 list, B0 list) restricted to codes hit by both sides."""
    d = GroupDescriptor(ctx, 2, False)
    comps = d.all_components()
    ka = d.batch_encode(_batch_pow_lin(ctx, comps, n))
    kb = d.batch_encode(_batch_pow_lin(ctx, comps, m))
    common = np.intersect1d(ka, kb)
    out: dict[int, tuple[list, list]] = {}
    rows = comps.tolist()
    for side, keys in ((0, ka), (1, kb)):
        mask = np.isin(keys, common)
        for idx in np.nonzero(mask)[0].tolist():
            out.setdefault(int(keys[idx]), ([], []))[side].append(tuple(rows[idx]))
    return dict(sorted(out.items()))


def _count_reduced_direct(ctx: FieldCtx, n: int, m: int) -> int:
    d = GroupDescriptor(ctx, 2, False)
    q = ctx.q
    total = 0
    for As, Bs in relation_buckets(ctx, n, m).values():
        for a in As:
            A0 = GroupElement(d, a)
            for b in Bs:
                total += q ** kernel_dim(A0, GroupElement(d, b), n, m)
    return total


def count_agl1_fibration(ctx: FieldCtx, n: int, m: int) -> int:
    """AGL1 count through the cusp parametrization t -> (t^m, t^n).

    Valid in every characteristic: the fiber over t is the solution space
    of one linear equation in (alpha, beta), of dimension 1 unless both of
    its coefficients vanish.
    """
    q = ctx.q
    total = 0
    for t in range(1, q):
        a0, b0 = ctx.pow(t, m), ctx.pow(t, n)
        pa = _phi_scalar(ctx, a0, n)
        pb = _phi_scalar(ctx, b0, m)
        total += q * q if (pa == 0 and pb == 0) else q
    return total


def _phi_scalar(ctx: FieldCtx, x: int, l: int) -> int:
    acc = 1
    for _ in range(l - 1):
        acc = ctx.add(ctx.mul(acc, x), 1)
    return acc


TIERS = ("naive", "fibers", "reduced")


def count(d: GroupDescriptor, n: int, m: int, tier: str = "fibers", **kw) -> int:
    if tier == "naive":
        return count_naive(d, n, m)
    if tier == "fibers":
        return count_power_fibers(d, n, m)
    if tier == "reduced":
        if not (d.affine and d.rank == 2):
            raise GroupError("the reduced tier only applies to AGL2")
        return count_agl2_reduced(d.ctx, n, m, **kw)
    raise ValueError(f"unknown tier {tier!r}")


def predicted_agl2(q: int, m: int, n: int, *, force: bool = False) -> int:
    xm, xn = closedform.xi_pair(q, m, n)
    val = closedform.motive_agl2(m, n, force=force).evaluate(q, xm, xn)
    assert val.denominator == 1
    return int(val)


def formula_gap(ctx: FieldCtx, n: int, m: int, *, force: bool = False, **kw) -> int:
    """count_agl2_reduced minus the AGL2 closed form at the same field."""
    if not closedform.hypotheses_ok(ctx.q, m, n, "agl2") and not force:
        raise HypothesisError(f"(m,n)=({m},{n}) at q={ctx.q} violates the AGL2 hypotheses")
    return count_agl2_reduced(ctx, n, m, **kw) - predicted_agl2(ctx.q, m, n, force=force)


def stderr_progress(label: str) -> Callable[[int, int], None]:
    def report(done: int, total: int) -> None:
        sys.stderr.write(f"\r{label}: {done}/{total}")
        if done == total:
            sys.stderr.write("\n")
        sys.stderr.flush()
    return report
