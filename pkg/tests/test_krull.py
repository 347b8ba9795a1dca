from __future__ import annotations

from collections import Counter

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from glitlab.krull import ClassRegistry, decompose, is_indecomposable, iso_test, split_once
from glitlab.randgen import random_algebra, random_module
from glitlab.repcat import Morphism, Representation, direct_sum, radical


def conjugate(x: Representation, rng) -> tuple[Representation, Morphism]:
    """x transported along random invertible base changes, with the transport map."""
    f = x.field
    gs = []
    for d in x.dims:
        while True:
            g = rng.integers(0, f.p, (d, d))
            if d == 0 or f.is_invertible(g):
                break
        gs.append(g.astype(np.int64))
    maps = {}
    for a in range(x.pres.n_arrows):
        s, t = x.pres.arrow_src[a], x.pres.arrow_tgt[a]
        maps[a] = f.chain(gs[t], x.maps[a], f.inverse(gs[s])) if x.dims[s] and x.dims[t] else np.zeros((x.dims[t], x.dims[s]), dtype=np.int64)
    y = Representation(x.pres, x.dims, maps)
    return y, Morphism(x, y, tuple(gs))


def test_decompose_examples(T, mods, regT):
    S1, S2 = mods["S1"], mods["S2"]
    rad = radical(T.projective(0))[0]
    c1 = regT.classify(S1)[0]
    c2 = regT.classify(S2)[0]
    assert Counter(dict(decompose(rad, regT).summands)) == Counter({c1: 1, c2: 1})
    assert decompose(S1, regT).summands == [(c1, 1)]
    P1 = T.projective(0)
    (cp, m), = decompose(direct_sum([P1, P1]), regT).summands
    assert m == 2 and regT.is_projective(cp)


def test_iso_examples(T, mods, regT):
    S1, S2 = mods["S1"], mods["S2"]
    r = iso_test(S1, S1, regT)
    assert r and r.witness.is_iso()
    assert not iso_test(S1, S2, regT)
    assert iso_test(radical(T.projective(0))[0], direct_sum([S1, S2]), regT)


def test_split_once_examples(T, mods):
    assert not split_once(mods["S1"]).split
    assert split_once(direct_sum([mods["S1"], mods["S2"]])).split
    out = split_once(T.projective(0))
    assert not out.split and out.certificate.get("local")


def test_indecomposable_with_non_simple_top():
    # the Kronecker module (1, 1) with maps (1, 0) and (0, 1) over two parallel arrows
    from glitlab.algebra import Quiver, path_algebra

    kr = path_algebra(Quiver(["1", "2"], [("x", "1", "2"), ("y", "1", "2")]))
    z = Representation(kr, [2, 1], {0: [[1, 0]], 1: [[0, 1]]})
    assert not is_indecomposable(Representation(kr, [2, 2], {0: [[1, 0], [0, 0]], 1: [[0, 0], [0, 1]]}))
    assert is_indecomposable(z)


def _random(seed):
    rng = np.random.default_rng(seed)
    alg = random_algebra(rng, max_dim=14)
    return rng, alg, ClassRegistry(alg, seed=seed % 7)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_decomposition_is_additive(seed):
    rng, alg, reg = _random(seed)
    x, y = random_module(alg, rng, 9), random_module(alg, rng, 9)
    dx, dy, dxy = (decompose(z, reg) for z in (x, y, direct_sum([x, y])))
    assert dxy.counter() == dx.counter() + dy.counter()
    for d in (dx, dy, dxy):
        assert d.witness.is_intertwining() and d.witness.is_iso()
        total = [sum(reg.rep(c).dims[v] * m for c, m in d.summands) for v in range(alg.n_vertices)]
        assert total == list(d.source.dims)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_iso_is_invariant_under_base_change(seed):
    rng, alg, reg = _random(seed)
    x = random_module(alg, rng, 10)
    y, _ = conjugate(x, rng)
    r = iso_test(x, y, reg)
    assert r and r.witness.is_intertwining() and r.witness.is_iso()


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_decomposition_independent_of_seed(seed):
    rng, alg, _ = _random(seed)
    x = random_module(alg, rng, 10)
    a = ClassRegistry(alg, seed=1)
    b = ClassRegistry(alg, seed=2)
    sa = sorted(tuple(a.rep(c).dims) + (m,) for c, m in decompose(x, a).summands)
    sb = sorted(tuple(b.rep(c).dims) + (m,) for c, m in decompose(x, b).summands)
    assert sa == sb
