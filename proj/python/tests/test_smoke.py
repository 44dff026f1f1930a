import json
import math

import pytest

import hotelbell as hb


def test_observable_bands_and_breakpoints():
    a0 = hb.make_observable(0.0)
    assert a0.pieces == [(0.0, 0.25, -1.0), (0.25, 0.75, 1.0), (0.75, 1.0, -1.0)]
    assert a0(0.5) == 1.0
    assert a0(0.1) == -1.0
    with pytest.raises(hb.Error) as info:
        a0(0.25)
    assert info.value.kind == "UndefinedPoint"
    assert a0.find(0.75) is None
    assert hb.log_curve(0.0, 0.25) == 0.0


def test_disjoint_sum_does_not_exist():
    a0, a1 = hb.make_observable(0.0), hb.make_observable(1.0)
    with pytest.raises(hb.Error) as info:
        a0 + a1
    assert info.value.kind == "EmptyDomain"
    s = hb.combine(a0, hb.make_observable(0.5), "+")
    assert s.domain.measure() == 0.5


def test_domain_set_keeps_touching_intervals_apart():
    d = hb.DomainSet([(1, 2), (0, 1)])
    assert d.intervals == [(0.0, 1.0), (1.0, 2.0)]
    assert not d.contains(1.0)
    assert d.filled().intervals == [(0.0, 2.0)]
    assert (d & hb.DomainSet([(0.5, 1.5)])).measure() == 1.0


def test_saturating_family_reaches_four():
    family = hb.saturating_family()
    e = hb.family_expectations(family)
    assert list(e) == [1.0, 1.0, 1.0, -1.0]
    assert hb.chsh_value(e) == 4.0
    for ma, mb in hb.family_marginals(family):
        assert ma == 0.0 and mb == 0.0
    back = hb.ChshFamily.from_json(family.to_json())
    assert json.loads(back.to_json())["expectations"]["S"] == 4.0


def test_optimizer_and_classical_bound():
    family, achieved, _ = hb.optimize_family([1, 1, 1, -1])
    assert hb.chsh_value(achieved) >= 4.0 - 1e-6
    r = hb.run_classical_suite(20, 1000, 5)
    assert r["violations"] == 0 and r["max_abs_s"] <= 2.0 + 1e-12


def test_uniform_expectation_is_zero():
    rho = hb.uniform_density((0, 1), (0, 1))
    assert hb.expectation(hb.alice_observable(0), hb.bob_observable(0), rho) == 0.0
    with pytest.raises(hb.Error) as info:
        hb.GridDensity((0, 1), (0, 1), 2, 2, [0, 0, 0, 0])
    assert info.value.kind == "ZeroTotalMass"


def test_simulation_is_reproducible():
    family = hb.saturating_family()
    first = hb.run_experiment(family, 20000, seed=3, workers=2)
    second = hb.run_experiment(family, 20000, seed=3, workers=2)
    assert first == second
    assert first["S"] == 4.0
    assert sum(c["trials"] for c in first["counts"]) == 20000
    logged = hb.run_experiment(family, 200, seed=3, log=True)
    assert logged["events"].splitlines()[0] == "trial,alpha,beta,x,y,a,b"
    assert len(logged["events"].splitlines()) == 201


def test_derivation_checker():
    r = hb.analyze("(a0+a1)*b0")
    assert not r["exists"]
    assert r["culprit"] == "(a0 + a1)"
    assert r["report"] == "EMPTY at '(a0 + a1)': axis x: (0,1) ∩ (1,2) = ∅"
    assert hb.analyze("a0*b0")["exists"]
    assert hb.format_expr("a0 *b0+ -a1") == "a0 * b0 + -a1"
    with pytest.raises(hb.Error) as info:
        hb.analyze("a0**b0")
    assert info.value.kind == "SyntaxError"
    assert info.value.position == 3


def test_outcomes_are_local():
    assert hb.alice_outcome(0, 0.5) == 1
    assert hb.bob_outcome(1, 1.1) == -1
    assert math.isclose(sum(hb.thresholds(2.0)), 5.0)
