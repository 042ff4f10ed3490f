import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ternpath.algebra import (
    INF,
    DomainError,
    UnknownGamma,
    aggregate_all,
    check_distributivity,
    check_monotonicity,
    check_semilattice,
    check_ternary_associativity,
    check_top,
    leq,
)
from ternpath.instances import AND_TABLE, OR_TABLE, bool_f2, minplus_degenerate, table_algebra
from ternpath.separation import semilattice_tables

FIRST = tuple(x for x in (0, 1) for y in (0, 1) for z in (0, 1))
XOR_XY = tuple(x ^ y for x in (0, 1) for y in (0, 1) for z in (0, 1))


def two(agg=AND_TABLE, tern=FIRST, top=1):
    return table_algebra(2, agg, {"g0": tern}, top=top, seed=1 - top)


def test_leq_examples():
    mp = minplus_degenerate()
    assert leq(mp, 2, 5)
    assert not leq(mp, 5, 2)
    assert leq(mp, 7, INF)
    assert leq(two(), 0, 1)
    for a in (0, 1):
        assert leq(two(), a, a)


def test_leq_rejects_foreign_elements():
    with pytest.raises(DomainError):
        leq(two(), 0, 2)
    with pytest.raises(DomainError):
        leq(minplus_degenerate(), 1.5, 2)
    with pytest.raises(DomainError):
        leq(minplus_degenerate(), True, 2)


def test_aggregate_all():
    mp = minplus_degenerate()
    assert aggregate_all(mp, [3, 1, 2]) == 1
    assert aggregate_all(mp, []) is INF
    assert aggregate_all(mp, [4]) == 4
    assert aggregate_all(two(), []) == 1
    with pytest.raises(DomainError):
        aggregate_all(mp, [1, "x"])


def test_semilattice_checks():
    assert check_semilattice(minplus_degenerate(), 1000).passed
    rep = check_semilattice(two(agg=(0, 1, 1, 0)))  # XOR
    assert not rep.passed and rep.exhaustive
    assert rep.detail["law"] == "idempotency"
    assert rep.witness == (1,) and rep.lhs == 0 and rep.rhs == 1

    rep = check_semilattice(two(agg=(1, 0, 0, 1)))  # a + a != a at 0 first
    assert not rep.passed and rep.witness == (0,)


def test_semilattice_sampled_is_flagged():
    rep = check_semilattice(minplus_degenerate(), 1000)
    assert rep.checked == 1000 and not rep.exhaustive


def test_check_top():
    assert check_top(two()).passed
    rep = check_top(two(top=0))
    assert not rep.passed and rep.witness == (1,)


def test_ternary_associativity_examples():
    rep = check_ternary_associativity(bool_f2())
    assert rep.passed and rep.checked == 32 and rep.exhaustive
    assert check_ternary_associativity(two(tern=FIRST)).passed

    rep = check_ternary_associativity(two(tern=XOR_XY))
    assert not rep.passed and rep.exhaustive
    t = lambda x, y, z: x ^ y  # noqa: E731
    x, y, z, u, v = rep.witness
    nestings = {t(t(x, y, z), u, v), t(x, t(y, z, u), v), t(x, y, t(z, u, v))}
    assert len(nestings) > 1
    assert rep.lhs != rep.rhs


def test_ternary_associativity_sampled_minplus():
    rep = check_ternary_associativity(minplus_degenerate(), sample_budget=1000)
    assert rep.passed and not rep.exhaustive and rep.checked == 1000


def test_unknown_gamma():
    for check in (check_ternary_associativity, check_monotonicity, check_distributivity):
        with pytest.raises(UnknownGamma):
            check(bool_f2(), "nope")


def test_monotonicity_examples():
    assert check_monotonicity(minplus_degenerate(), sample_budget=1000).passed
    assert check_monotonicity(two(tern=(1,) * 8)).passed

    rep = check_monotonicity(bool_f2(AND_TABLE))
    assert not rep.passed
    assert rep.detail["coordinate"] == 1 and rep.detail["pair"] == [0, 1]
    assert rep.witness == (0, 0, 0, 1, 0, 0)
    assert (rep.lhs, rep.rhs) == (1, 0)


def test_distributivity_examples():
    assert check_distributivity(minplus_degenerate(), sample_budget=1000).passed
    rep = check_distributivity(bool_f2(AND_TABLE))
    assert not rep.passed
    assert rep.witness == (0, 0, 0, 1, 0, 0) and rep.detail["coordinate"] == 1
    assert (rep.lhs, rep.rhs) == (1, 0)
    rep = check_distributivity(two(agg=AND_TABLE, tern=FIRST))
    assert rep.passed and rep.exhaustive and rep.checked == 3 * 16


def test_canonical_order_is_partial_order_on_small_semilattices():
    for n in (1, 2, 3):
        for agg in semilattice_tables(n):
            alg = table_algebra(n, agg, {"g0": (0,) * n**3}, top=0, seed=0)
            els = range(n)
            for a in els:
                assert leq(alg, a, a)
            for a, b in itertools.product(els, repeat=2):
                if leq(alg, a, b) and leq(alg, b, a):
                    assert a == b
                m = alg.aggregate(a, b)
                assert leq(alg, m, a) and leq(alg, m, b)
            for a, b, c in itertools.product(els, repeat=3):
                if leq(alg, a, b) and leq(alg, b, c):
                    assert leq(alg, a, c)


def test_labelled_semilattice_counts():
    # 1, 2, and 9 labelled meet-semilattices on 1, 2, 3 points (6 chains + 3 V shapes)
    assert [len(semilattice_tables(n)) for n in (1, 2, 3)] == [1, 2, 9]


def test_minplus_factorization_holds_on_samples():
    mp = minplus_degenerate()
    t, mul = mp.op(), mp.factorization
    for x, y, z in itertools.product([-3, 0, 4, INF], repeat=3):
        assert t(x, y, z) == mul(mul(x, y), z)


tables8 = st.tuples(*[st.integers(0, 1)] * 8)


@settings(max_examples=200, deadline=None)
@given(tern=tables8, agg=st.sampled_from([AND_TABLE, OR_TABLE]))
def test_witnesses_reproduce(tern, agg):
    top = 1 if agg == AND_TABLE else 0
    alg = two(agg=agg, tern=tern, top=top)
    t = lambda x, y, z: tern[4 * x + 2 * y + z]  # noqa: E731
    meet = lambda a, b: agg[2 * a + b]  # noqa: E731

    rep = check_ternary_associativity(alg)
    if not rep.passed:
        x, y, z, u, v = rep.witness
        assert len({t(t(x, y, z), u, v), t(x, t(y, z, u), v), t(x, y, t(z, u, v))}) == 2

    rep = check_monotonicity(alg)
    if not rep.passed:
        lo, hi = t(*rep.witness[:3]), t(*rep.witness[3:])
        assert (lo, hi) == (rep.lhs, rep.rhs)
        assert meet(lo, hi) != lo
        diff = [i for i in range(3) if rep.witness[i] != rep.witness[3 + i]]
        assert diff == [rep.detail["coordinate"] - 1]

    rep = check_distributivity(alg)
    if not rep.passed:
        a, b = rep.witness[:3], rep.witness[3:]
        i = rep.detail["coordinate"] - 1
        joined = list(a)
        joined[i] = meet(a[i], b[i])
        assert t(*joined) == rep.lhs
        assert meet(t(*a), t(*b)) == rep.rhs
        assert rep.lhs != rep.rhs
