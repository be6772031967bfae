from __future__ import annotations

import pytest

import oracles
from knotvar import closedform as cf
from knotvar.ffield import field_of_order, irreducible_polys, make_field
from knotvar.matgroups import GroupDescriptor, GroupError
from knotvar.repcount import (HypothesisError, count, count_agl1_fibration, count_agl2_reduced,
                              count_naive, count_power_fibers, formula_gap, kernel_dim)


def agl(q, r=1):
    return GroupDescriptor(field_of_order(q), r, True)


def test_naive_examples():
    for G in (agl(5), GroupDescriptor(make_field(3), 2, False), agl(2, 2)):
        assert count_naive(G, 1, 1) == G.order()
    assert count_naive(agl(7), 5, 1) == 42
    assert count_naive(agl(7), 5, 3) == 42


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
@pytest.mark.parametrize("n,m", [(5, 3), (3, 2), (4, 9), (6, 1)])
def test_agl1_tiers_match_oracle(p, n, m):
    want = oracles.agl1_count(p, n, m)
    F = make_field(p)
    assert count_naive(agl(p), n, m) == want
    assert count_power_fibers(agl(p), n, m) == want
    assert count_agl1_fibration(F, n, m) == want


def test_power_fiber_examples():
    assert count_power_fibers(agl(31), 5, 3) == 8370
    assert count_power_fibers(agl(16), 5, 3) == 2160


def test_agl2_f7_matches_independent_oracle():
    # the closed form predicts 113190 here; the enumeration says otherwise
    want = oracles.agl2_count(7, 5, 3)
    assert want == 98784
    assert count_power_fibers(agl(7, 2), 5, 3) == want
    assert count_agl2_reduced(make_field(7), 5, 3) == want
    assert cf.eval_motive(cf.motive_agl2(3, 5), 7, 3, 5) == 113190


def _diag(G, a, b):
    return G.element((a, 0, 0, b))


def test_kernel_dim_examples():
    F = make_field(31)
    G = GroupDescriptor(F, 2, False)
    z3 = F.pow(F.generator, 10)
    z5 = F.pow(F.generator, 6)
    ident = G.identity
    # both cyclotomic sums vanish
    assert kernel_dim(_diag(G, z3, F.mul(z3, z3)), _diag(G, z5, F.pow(z5, 4)), 3, 5) == 4
    assert kernel_dim(ident, ident, 3, 5) == 2
    # each sum has a one-dimensional kernel, on the same line
    assert kernel_dim(_diag(G, z3, 1), _diag(G, z5, 1), 3, 5) == 3
    # one-dimensional kernel against an invertible sum
    assert kernel_dim(_diag(G, z3, 1), ident, 3, 5) == 2
    with pytest.raises(GroupError):
        kernel_dim(_diag(G, z3, 1), _diag(G, 3, 1), 3, 5)


@pytest.mark.parametrize("q", [3, 5, 7])
@pytest.mark.parametrize("n,m", [(5, 3), (3, 7), (5, 1), (2, 3)])
def test_agl2_engines_agree_with_oracle(q, n, m):
    want = oracles.agl2_count(q, n, m)
    F = make_field(q)
    assert count_power_fibers(agl(q, 2), n, m) == want
    assert count_agl2_reduced(F, n, m) == want
    assert count_agl2_reduced(F, n, m, method="direct") == want


def test_agl2_f3_degenerate_relation():
    assert count_agl2_reduced(make_field(3), 5, 1) == count_power_fibers(agl(3, 2), 5, 1) == 432


@pytest.mark.parametrize("q", [11, 13])
def test_agl2_reduced_matches_oracle_at_larger_q(q):
    assert count_agl2_reduced(make_field(q), 5, 3) == oracles.agl2_count(q, 5, 3)


def test_agl2_reduced_thread_invariance():
    F = make_field(11)
    assert count_agl2_reduced(F, 5, 3, threads=1) == count_agl2_reduced(F, 5, 3, threads=4)


def test_extension_fields_agree_across_engines():
    F4 = field_of_order(4)
    for n, m in ((5, 3), (3, 7)):
        assert count_agl2_reduced(F4, n, m) == count_agl2_reduced(F4, n, m, method="direct")
    for q in (4, 8, 9):
        assert count_agl2_reduced(field_of_order(q), 5, 7) == count_power_fibers(agl(q, 2), 5, 7)


def test_modulus_independence_f9():
    vals = {count_agl2_reduced(make_field(3, 2, modulus=mod), n, m)
            for mod in irreducible_polys(3, 2) for n, m in [(5, 7)]}
    assert len(vals) == 1
    vals = {count_power_fibers(GroupDescriptor(make_field(3, 2, modulus=mod), 1, True), 4, 5)
            for mod in irreducible_polys(3, 2)}
    assert len(vals) == 1


def test_formula_gap_values():
    for q in (7, 11, 13):
        want = oracles.agl2_count(q, 5, 3) - cf.eval_motive(cf.motive_agl2(3, 5), q, 3, 5)
        assert formula_gap(make_field(q), 5, 3) == want
    assert formula_gap(make_field(11), 5, 3) > 0
    with pytest.raises(HypothesisError):
        formula_gap(make_field(5), 5, 3)
    assert isinstance(formula_gap(make_field(5), 5, 3, force=True), int)


def test_tier_dispatch():
    G = agl(5, 2)
    assert count(G, 5, 3, "fibers") == count(G, 5, 3, "reduced")
    with pytest.raises(GroupError):
        count(agl(5), 5, 3, "reduced")
    with pytest.raises(ValueError):
        count(G, 5, 3, "psychic")
    with pytest.raises(GroupError):
        count_naive(agl(9, 2), 5, 3)
    with pytest.raises(GroupError):
        count_agl2_reduced(make_field(67), 5, 3)
