from __future__ import annotations

import numpy as np
import pytest
import sympy
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from glitlab.fixtures import dual_numbers
from glitlab.itfun import (
    Budget,
    BudgetExhausted,
    ClassDescriptor,
    DescriptorError,
    L_step,
    class_vector,
    findim_add,
    integer_rank,
    pd,
    phi,
    phi_rel,
    phi_report,
    phidim_add,
    psi,
    psi_report,
    syzygy_closure,
)
from glitlab.krull import ClassRegistry, default_registry
from glitlab.randgen import random_algebra, random_module
from glitlab.repcat import direct_sum, syzygy_power

from oracles import pd_by_resolution, phi_by_syzygies


def test_class_vectors(T, mods, regT):
    S1, S2 = mods["S1"], mods["S2"]
    c1, c2 = regT.classify(S1)[0], regT.classify(S2)[0]
    assert class_vector(T.projective(0), regT) == {}
    assert class_vector(syzygy_power(S1, 2), regT) == {c1: 1, c2: 1}
    assert class_vector(direct_sum([S1, S1]), regT) == {c1: 2}


def test_L_step(mods, regT):
    c1, c2 = regT.classify(mods["S1"])[0], regT.classify(mods["S2"])[0]
    ci = regT.classify(mods["I2"])[0]
    assert L_step({}, regT) == {}
    assert L_step({c1: 1}, regT) == {c1: 1, c2: 1}
    assert L_step({ci: 1}, regT) == {c1: 1}


def test_phi_examples(T, mods, regT):
    rep = phi_report(direct_sum([mods["S1"], mods["I2"]]), regT)
    assert rep.value == 2
    assert [r for _, r in rep.trace[:4]] == [2, 2, 1, 1]
    assert phi(T.regular_module(), regT) == 0
    assert phi(mods["S2"], regT) == 1


def test_pd_examples(T, mods, regT):
    r = pd(T.projective(0), regT)
    assert r.finite and r.value == 0
    r = pd(mods["S2"], regT)
    assert r.finite and r.value == 1
    r = pd(mods["S1"], regT)
    assert r.kind == "infinite" and regT.classify(mods["S1"])[0] in r.cycle


def test_findim_and_psi(T, mods, regT):
    S1, S2, I2 = mods["S1"], mods["S2"], mods["I2"]
    assert findim_add([T.projective(0)], regT).value == 0
    assert findim_add([S1, S2], regT).value == 1
    assert findim_add([], regT).value == 0
    assert psi(T.projective(1), regT) == 0
    assert psi(S2, regT) == 1
    # Φ = 2 and the tail Ω²(S1 ⊕ I2) has finite-pd summands S2 (pd 1) and S3
    rep = psi_report(direct_sum([S1, I2]), regT)
    assert (rep.phi, rep.findim.value, rep.value) == (2, 1, 3)


def test_phidim_examples(T, mods, regT):
    assert phidim_add([T.projective(0), T.projective(2)], regT) == 0
    assert phidim_add([mods["S1"], mods["I2"]], regT) == 2
    assert phidim_add([mods["S2"]], regT) == 1


def test_phi_rel_examples(T, mods, regT):
    x = direct_sum([mods["S1"], mods["I2"]])
    assert phi_rel(x, ClassDescriptor(()), regT) == phi(x, regT)
    K = dual_numbers()
    reg = default_registry(K)
    d = syzygy_closure([K.regular_module().pres.projective(0), _simple(K)], reg)
    assert phi_rel(direct_sum([_simple(K), _simple(K)]), d, reg) == 0


def _simple(K):
    from glitlab.repcat import Representation

    return Representation(K, [1])


def test_descriptor_errors(mods, regT):
    c1 = regT.classify(mods["S1"])[0]
    with pytest.raises(DescriptorError):
        ClassDescriptor((c1,), 1).check(regT)  # ΩS1 contains S2
    with pytest.raises(DescriptorError):
        ClassDescriptor((), 0)


def test_budget_exhaustion(mods):
    reg = ClassRegistry(mods["S1"].pres)
    with pytest.raises(BudgetExhausted):
        phi(mods["S1"], reg, Budget(max_classes=1, max_depth=1))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.dictionaries(st.integers(0, 5), st.integers(-20, 20), max_size=6), max_size=6))
def test_integer_rank_matches_sympy(vecs):
    keys = list(range(6))
    m = sympy.Matrix([[v.get(k, 0) for k in keys] for v in vecs]) if vecs else sympy.zeros(0, 6)
    assert integer_rank(vecs) == m.rank()


def _instance(seed):
    rng = np.random.default_rng(seed)
    alg = random_algebra(rng, max_dim=14)
    return rng, alg, ClassRegistry(alg, seed=3)


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.integers(0, 10**6))
def test_phi_matches_syzygy_oracle(seed):
    rng, alg, reg = _instance(seed)
    x = random_module(alg, rng, 12)
    try:
        rep = phi_report(x, reg, Budget(max_classes=200, max_depth=40))
    except BudgetExhausted:
        return
    out = phi_by_syzygies(x, reg, len(rep.trace) + 2, cap=150)
    if out is None:
        return
    value, trace = out
    assert [r for _, r in rep.trace] == trace[: len(rep.trace)]
    assert rep.value == value


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.integers(0, 10**6))
def test_phi_equals_pd_when_finite(seed):
    rng, alg, reg = _instance(seed)
    x = random_module(alg, rng, 12)
    oracle = pd_by_resolution(x, 12, cap=120)
    r = pd(x, reg)
    if oracle is not None:
        assert r.finite and r.value == oracle
        assert phi(x, reg) == oracle == psi(x, reg)
