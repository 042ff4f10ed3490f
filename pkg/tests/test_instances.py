import itertools
import json

import pytest

from ternpath.algebra import (
    INF,
    check_all,
    check_factorization,
    check_monotonicity,
    check_ternary_associativity,
)
from ternpath.instances import (
    AND_TABLE,
    OR_TABLE,
    TableFormatError,
    bool_f2,
    dump_table,
    load_table,
    minplus_degenerate,
    resolve,
    table_from_dict,
    table_to_dict,
)


def test_minplus_values():
    t = minplus_degenerate().op()
    assert t(1, 2, 3) == 6
    assert t(5, INF, -2) is INF
    assert t(INF, INF, INF) is INF


def test_minplus_passes_every_axiom_sampled():
    reports = check_all(minplus_degenerate(), sample_budget=1000)
    assert all(r.passed for r in reports)
    assert all(not r.exhaustive for r in reports)
    assert check_factorization(minplus_degenerate(), sample_budget=1000).passed


def test_minplus_literals():
    mp = minplus_degenerate()
    assert mp.parse("12") == 12 and mp.parse("-3") == -3 and mp.parse("inf") is INF
    assert mp.parse(7) == 7
    assert mp.render(INF) == "inf"
    for bad in ("1.5", "abc", 2.0, None):
        with pytest.raises(ValueError):
            mp.parse(bad)


def test_bool_f2_defining_values():
    t = bool_f2().op()
    assert t(0, 0, 0) == 1
    assert t(0, 0, 1) == 0
    assert t(1, 0, 0) == 0


def test_bool_f2_collapsed_quintuple():
    t = bool_f2().op()
    for x, y, z, u, v in itertools.product((0, 1), repeat=5):
        assert t(t(x, y, z), u, v) == x ^ y ^ z ^ u ^ v
    assert t(t(1, 1, 1), 1, 1) == 1


def test_bool_f2_metadata():
    b = bool_f2()
    assert b.triple_system_only and b.factorization is None
    assert (b.top, b.seed) == (1, 0)
    assert bool_f2(OR_TABLE).top == 0


def test_bool_f2_fails_monotonicity_under_both_semilattices():
    for agg in (AND_TABLE, OR_TABLE):
        alg = bool_f2(agg)
        assert check_ternary_associativity(alg).passed
        rep = check_monotonicity(alg)
        assert not rep.passed and rep.witness is not None


def test_load_valid_table(fixtures):
    alg = load_table(fixtures / "proj1.json")
    assert alg.size == 2 and alg.top == 1 and alg.seed == 0
    assert alg.op()(1, 0, 1) == 1 and alg.op()(0, 1, 1) == 0


def test_load_rejects_non_idempotent(fixtures):
    with pytest.raises(TableFormatError, match="idempotency"):
        load_table(fixtures / "nonidempotent.json")


def test_load_rejects_bad_top(fixtures):
    with pytest.raises(TableFormatError, match="not the order maximum"):
        load_table(fixtures / "badtop.json")


def test_load_rejects_parse_error(fixtures):
    with pytest.raises(TableFormatError):
        load_table(fixtures / "bad.json")


@pytest.mark.parametrize("patch", [
    {"carrier_size": 0},
    {"aggregate": [[0, 0]]},
    {"aggregate": [[0, 0], [0, 2]]},
    {"ternary": {"g0": [0] * 7}},
    {"ternary": {"g0": [0] * 7 + [5]}},
    {"ternary": {}},
    {"top": 3},
    {"factorization": [[1, 1], [1, 1]]},
])
def test_table_validation(patch):
    doc = {"carrier_size": 2, "aggregate": [[0, 0], [0, 1]], "ternary": {"g0": [0] * 8},
           "top": 1, "seed": 0}
    doc.update(patch)
    with pytest.raises(TableFormatError):
        table_from_dict(doc)


def test_missing_key():
    with pytest.raises(TableFormatError, match="seed"):
        table_from_dict({"carrier_size": 1, "aggregate": [[0]], "ternary": {"g0": [0]}, "top": 0})


def test_round_trip(tmp_path):
    doc = {"carrier_size": 2, "aggregate": [[0, 0], [0, 1]],
           "ternary": {"g0": [0, 0, 0, 0, 0, 0, 0, 1], "g1": [0, 0, 0, 0, 1, 1, 1, 1]},
           "top": 1, "seed": 1, "factorization": [[0, 0], [0, 1]]}
    with pytest.raises(TableFormatError):
        table_from_dict(doc)  # AND factors g0 but not the projection g1
    doc["ternary"].pop("g1")
    alg = table_from_dict(doc)
    path = tmp_path / "t.json"
    dump_table(alg, path)
    again = load_table(path)
    assert again == alg
    assert table_to_dict(again) == doc
    assert json.loads(path.read_text()) == doc


def test_resolve():
    assert resolve("minplus").name == "minplus-degenerate"
    assert resolve("bool-f2").name == "bool-f2"
    with pytest.raises(ValueError):
        resolve("maxplus")
