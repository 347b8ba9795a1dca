from __future__ import annotations

import os

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from glitlab.algebra import ParseError, serialize_algebra
from glitlab.formats import (
    Loader,
    dump_registry,
    load_registry,
    parse_module,
    parse_tuple,
    serialize_module,
    serialize_tuple,
)
from glitlab.itfun import Budget, BudgetExhausted, phi
from glitlab.krull import ClassRegistry, decompose, iso_test
from glitlab.randgen import random_algebra, random_context, random_module

DATA = os.path.join(os.path.dirname(__file__), "data")


def data(name: str) -> str:
    return os.path.join(DATA, name)


def test_loader_reads_example_files(mods):
    ld = Loader()
    T = ld.algebra(data("T.alg"))
    assert T.dim == 6 and ld.algebra(data("T.alg")) is T
    I2 = ld.module(data("I2.mod"))
    assert I2.pres is T and list(I2.dims) == [1, 1, 0]
    assert int(I2.arrow_map("b")[0, 0]) == 1
    ctx = ld.context(data("example.ctx"))
    assert ctx.T is T and ctx.triangular and ctx.M.total == T.dim
    x = ld.tuple_module(data("S1pad.tup"))
    assert x.pres is ctx.ring and list(x.dims) == [1, 0, 0, 0, 0, 0]
    spec = ld.witness_spec(data("special.wit"))
    assert (spec.n, spec.t, len(spec.V), len(spec.D)) == (0, 1, 0, 2)


def test_field_override_and_line_numbers(tmp_path):
    ld = Loader()
    p = tmp_path / "bad.mod"
    p.write_text(f"module over {data('T.alg')}\ndims 1:1 2:1 3:0\nmap b\n1 2\n")
    with pytest.raises(ParseError) as info:
        ld.module(str(p))
    assert "bad.mod" in str(info.value) and "4" in str(info.value)
    q = tmp_path / "rel.mod"
    q.write_text(f"module over {data('T.alg')}\ndims 1:1 2:1 3:1\nmap b\n1\nmap c\n1\n")
    with pytest.raises(ParseError, match="does not act as zero"):
        ld.module(str(q))


def _alg(seed):
    rng = np.random.default_rng(seed)
    return rng, random_algebra(rng, max_dim=14)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_module_round_trip(seed):
    rng, alg = _alg(seed)
    x = random_module(alg, rng, 12)
    y = parse_module(serialize_module(x), alg)
    assert y.same_data(x)


@settings(max_examples=15, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.integers(0, 10**6))
def test_tuple_round_trip(seed):
    rng = np.random.default_rng(seed)
    ctx = random_context(rng)
    x = random_module(ctx.ring, rng, 10)
    y = parse_tuple(serialize_tuple(x), ctx)
    assert y.same_data(x)


@settings(max_examples=10, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_files_round_trip_with_same_phi(tmp_path_factory, seed):
    rng, alg = _alg(seed)
    x = random_module(alg, rng, 10)
    d = tmp_path_factory.mktemp("rt")
    (d / "A.alg").write_text(serialize_algebra(alg))
    (d / "x.mod").write_text(serialize_module(x, "A.alg"))
    y = Loader().module(str(d / "x.mod"))
    assert list(y.dims) == list(x.dims)
    bud = Budget(max_classes=200, max_depth=40)
    try:
        want = phi(x, budget=bud)
    except BudgetExhausted:
        return
    assert phi(y, budget=bud) == want


def test_registry_dump_round_trip(T, mods):
    reg = ClassRegistry(T)
    for x in mods.values():
        decompose(x, reg)
    decompose(T.regular_module(), reg)
    again = load_registry(dump_registry(reg), T)
    assert len(again) == len(reg)
    for c in range(len(reg)):
        assert iso_test(again.rep(c), reg.rep(c), again)
        assert again.is_projective(c) == reg.is_projective(c)
