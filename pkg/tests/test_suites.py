from __future__ import annotations

import json

import pytest

from glitlab.itfun import phi
from glitlab.krull import default_registry
from glitlab.repcat import direct_sum
from glitlab.suites import SUITES, minimize, run_suite


@pytest.mark.parametrize("name", sorted(SUITES))
def test_small_runs_pass(name):
    count = 2 if name in ("morita-sandwich", "glit") else 10
    rep = run_suite(name, count, seed=11)
    assert rep.ok, rep.violations
    assert rep.passed == count and rep.checks > 0


def test_count_zero_is_vacuous():
    rep = run_suite("huard", 0)
    assert rep.ok and rep.passed == 0 and rep.checks == 0


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("no-such-suite", 3)


def test_reports_are_deterministic_and_job_independent():
    a = run_suite("phi-basic", 12, seed=5).as_dict()
    b = run_suite("phi-basic", 12, seed=5).as_dict()
    c = run_suite("phi-basic", 12, seed=5, jobs=2).as_dict()
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True) == json.dumps(c, sort_keys=True)
    assert a["scope"] == "family-level"


def test_seeds_change_instances():
    a = run_suite("huard", 10, seed=1).as_dict()
    b = run_suite("huard", 10, seed=2).as_dict()
    assert a["seed"] != b["seed"]


def test_minimize_drops_irrelevant_summands(T, mods, regT):
    x = direct_sum([mods["S1"], mods["I2"], mods["S2"], T.projective(2)])
    # "fails" whenever Φ stays at least 2: S1 ⊕ I2 is the smallest such sum
    small = minimize(x, lambda z: phi(z, regT) >= 2, regT)
    assert phi(small, regT) >= 2
    assert small.total_dim < x.total_dim
    assert minimize(mods["S1"], lambda z: True, default_registry(T)) is mods["S1"]
