import math

import pytest

import cloverlie as cl


def test_tuple_weights():
    t = cl.Tuple(3, "constant:1,2")
    assert t.at(4) == (1, 2)
    assert t.pivot_weight(3) == (3 + 9 - 1) ** 3
    a, b, c = t.pivot_multidegree(3, "u")
    assert c == 9**3
    assert a + b + c == t.pivot_weight(3)


def test_big_weights_are_exact():
    t = cl.Tuple(5, "constant:3,3")
    assert t.pivot_weight(40) == (125 + 125 - 1) ** 40


def test_bracket_and_power():
    ctx = cl.context(cl.Tuple(2, "constant:1,1"), 4)
    v0, w0 = cl.pivot("v", 0, ctx), cl.pivot("w", 0, ctx)
    assert cl.bracket(v0, v0).is_zero()
    assert cl.bracket(v0, w0) == -cl.bracket(w0, v0)
    assert cl.p_power(v0).multidegree() == (2, 0, 0)
    assert cl.pivot("v", 4, ctx).is_zero()


def test_closure_matches_counts():
    t = cl.Tuple(2, "constant:1,1")
    dims = cl.closure_dimensions(cl.context(t, 4))
    rows = {r["m"]: r["gamma"] for r in cl.growth_table(t, t.trusted_bound(4), dense=True)}
    for w, d in dims.items():
        assert rows[w] - rows.get(w - 1, 0) == d


def test_gk_constant():
    lo, hi = cl.gk_constant(2, 1, 1)
    exact = 3 * math.log(2) / math.log(3)
    assert lo - 1e-12 <= exact <= hi + 1e-12
    assert hi - lo < 1e-12


def test_reports():
    t = cl.Tuple(2, "constant:1,1")
    assert cl.relation_suite(t, 4)["passed"]
    nil = cl.nil_sampling(t, 5, samples=20, seed=3)
    assert len(nil["records"]) == 20
    assert nil["summary"]["samples"] == 20
    assert cl.growth_sandwich(t, 500)["passed"]


def test_errors():
    with pytest.raises(ValueError):
        cl.Tuple(4, "constant:1,1")
    with pytest.raises(ValueError):
        cl.pivot("q", 0, cl.context(cl.Tuple(2, "constant:1,1"), 3))
