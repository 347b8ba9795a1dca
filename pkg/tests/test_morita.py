from __future__ import annotations

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from glitlab.algebra import Quiver, path_algebra
from glitlab.fixtures import a2_context, a2_cross_validation, a2_path_algebra
from glitlab.itfun import Budget, class_vector, phi
from glitlab.krull import default_registry, iso_test
from glitlab.morita import (
    Bimodule,
    ContextError,
    MoritaContext,
    build_tensor_path,
    build_triangular,
    field_algebra,
    first,
    pad_T,
    pad_U,
    phi_bound_battery,
    closed_form_checks,
    second,
    tensor_over,
    tuple_hom,
    tuple_projective,
    tuple_syzygy,
    validate_context,
)
from glitlab.randgen import random_context, random_module
from glitlab.repcat import direct_sum, is_projective, syzygy, validate


def test_tensor_with_regular(T, mods):
    M = Bimodule.regular(T)
    for x in list(mods.values()) + [T.projective(0)]:
        assert iso_test(tensor_over(x, M), x)
    assert list(tensor_over(T.projective(0), M).dims) == [2, 1, 0]
    assert tensor_over(mods["I2"], Bimodule.zero(T, T)).total_dim == 0


def test_validate_context(T):
    assert validate_context(build_triangular(T, T, Bimodule.regular(T))).ok
    assert validate_context(MoritaContext(T, T)).ok
    K = field_algebra(T.field)
    # M = S1 as a right T-module: not projective on the right
    bad = MoritaContext(K, T, Bimodule(K, T, {(0, 0): 1}))
    rep = validate_context(bad)
    assert not rep.checks["M projective on the right"] and rep.checks["M projective on the left"]
    with pytest.raises(ContextError):
        build_triangular(K, T, Bimodule(K, T, {(0, 0): 1}))


def test_tuple_projectives(ctx, T):
    P = tuple_projective(ctx, "T", "1")
    assert iso_test(first(P), T.projective(0)) and iso_test(second(P), T.projective(0))
    Q = tuple_projective(ctx, "U", "3")
    assert first(Q).total_dim == 0 and list(second(Q).dims) == [0, 0, 1]
    prod = MoritaContext(T, T)
    P = tuple_projective(prod, "T", "2")
    assert second(P).total_dim == 0 and list(first(P).dims) == [0, 1, 1]


def test_tuple_syzygy_examples(ctx, T, mods):
    S1, S2, I2 = mods["S1"], mods["S2"], mods["I2"]
    s = tuple_syzygy(pad_T(ctx, S1)).syzygy
    assert iso_test(first(s), direct_sum([S1, S2])) and iso_test(second(s), T.projective(0))
    s = tuple_syzygy(pad_T(ctx, I2)).syzygy
    assert iso_test(first(s), S1) and iso_test(second(s), T.projective(0))
    # the closed form agrees with the minimal syzygy only up to projectives
    P = tuple_projective(ctx, "T", "1")
    assert is_projective(tuple_syzygy(P).syzygy) and syzygy(P).total_dim == 0


def test_tuple_syzygy_agrees_with_minimal_up_to_projectives(ctx, mods):
    reg = default_registry(ctx.ring)
    for x in mods.values():
        t = pad_T(ctx, x)
        closed = tuple_syzygy(t).syzygy
        minimal = syzygy(t)
        assert class_vector(closed, reg) == class_vector(minimal, reg)


def test_tuple_hom(ctx, mods, T):
    x = pad_T(ctx, mods["S1"])
    assert len(tuple_hom(x, x)) >= 1
    assert len(tuple_hom(x, pad_U(ctx, T.regular_module()))) == 0


def test_a2_identification():
    rows = a2_cross_validation()
    assert len(rows) == 3 and all(r["agree"] for r in rows)
    ring = a2_context().ring
    path = a2_path_algebra()
    assert ring.dim == path.dim == 3


def test_tensor_path_examples(T):
    K = field_algebra()
    single = build_tensor_path(T, Quiver(["1"], []))
    assert single.tower == [] and single.flat.dim == T.dim
    b = build_tensor_path(K, Quiver(["1", "2"], [("x", "1", "2")]))
    assert b.d_table == [[1, 0], [1, 1]] and b.flat.dim == 3
    assert [list(b.flat.projective(v).dims) for v in range(2)] == [list(path_algebra(Quiver(["1", "2"], [("x", "1", "2")])).projective(v).dims) for v in range(2)]
    b = build_tensor_path(T, Quiver(["1", "2"], [("x", "1", "2")]))
    assert b.flat.n_vertices == 6 and b.flat.dim == 18
    assert all(validate_context(c).ok for c in b.tower)


def test_battery_on_golden_sample(ctx, mods):
    x = direct_sum([mods["S1"], mods["I2"]])
    assert phi(x) == 2 and phi(pad_T(ctx, x)) == 3
    rep = phi_bound_battery(ctx, [x], [], [tuple_projective(ctx, "T", "1")])
    assert rep.ok, rep.failures()


def _context(seed):
    rng = np.random.default_rng(seed)
    return rng, random_context(rng, max_dim=10, kinds=("triangular", "zero-pairing"))


@settings(max_examples=12, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.integers(0, 10**6))
def test_random_contexts_valid_and_sandwich(seed):
    rng, ctx = _context(seed)
    assert validate_context(ctx).ok
    ts = [random_module(ctx.T, rng, 6) for _ in range(2)]
    us = [random_module(ctx.U, rng, 6) for _ in range(2)]
    rep = phi_bound_battery(ctx, ts, us, [], rng, Budget(max_classes=200, max_depth=40))
    assert rep.ok, rep.failures()


@settings(max_examples=12, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.integers(0, 10**6))
def test_closed_form_syzygy_is_a_module_and_kernel(seed):
    rng, ctx = _context(seed)
    x = random_module(ctx.ring, rng, 8)
    ts = tuple_syzygy(x)
    validate(ts.syzygy)
    assert ts.inclusion is not None and ts.inclusion.is_mono()
    assert ts.inclusion.then(ts.cover_map).is_zero() and ts.cover_map.is_epi()
    assert is_projective(ts.cover)
    checks = closed_form_checks(ctx, x, n_max=2)
    assert all(ok for _, ok in checks), checks


@settings(max_examples=10, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.integers(0, 10**6))
def test_flat_and_tuple_invariants_agree(seed):
    from glitlab.itfun import BudgetExhausted, pd
    from glitlab.randgen import random_algebra

    rng = np.random.default_rng(seed)
    T = random_algebra(rng, max_dim=6, max_vertices=2, max_arrows=2)
    b = build_tensor_path(T, Quiver(["1", "2"], [("x", "1", "2")]))
    x = random_module(b.flat, rng, 8)
    y = b.flat_to_tuple(x)
    assert y.pres is b.tower[-1].ring and sum(y.dims) == x.total_dim
    bud = Budget(max_classes=150, max_depth=40)
    try:
        want = (phi(x, budget=bud), str(pd(x, budget=bud)))
    except BudgetExhausted:
        return
    assert (phi(y, budget=bud), str(pd(y, budget=bud))) == want
