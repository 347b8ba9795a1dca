from __future__ import annotations

import numpy as np
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from glitlab.fixtures import a2_context, a2_path_algebra, dual_numbers
from glitlab.glit import (
    SCOPE,
    SesWitness,
    approx_cover,
    assemble_morita_witness,
    closure_witness,
    cover_ses,
    findim_bound,
    horseshoe,
    make_witness,
    restrict_witness,
    shift_witness,
    special_glit_witness,
    trivial_ses,
    verify_ses,
)
from glitlab.itfun import Budget, BudgetExhausted
from glitlab.krull import default_registry
from glitlab.morita import MoritaContext, field_algebra, first, pad_T, second
from glitlab.randgen import random_algebra, random_context, random_module
from glitlab.repcat import Morphism, Representation, direct_sum, syzygy


def test_verify_ses_examples(T, mods, regT):
    x = direct_sum([mods["S1"], mods["I2"]])
    w = make_witness(0, 1, [T.regular_module()], [syzygy(x)], regT)
    assert verify_ses(cover_ses(x), x, w).ok
    w0 = make_witness(0, 1, [x], [], regT)
    assert verify_ses(trivial_ses(x), x, w0).ok
    # a trivial sequence for x does not qualify when x is outside add(V) ⊕ D
    assert not verify_ses(trivial_ses(x), x, make_witness(0, 1, [T.regular_module()], [], regT)).ok


def test_verify_ses_negative_control(T, mods):
    s = cover_ses(mods["S1"])
    # drop a kernel vector: the "kernel" is now too small
    sub = Representation(T, [1, 0, 0])
    broken = SesWitness(Morphism(sub, s.X0, (s.mono.mats[0][:, :1], s.mono.mats[1][:, :0], s.mono.mats[2][:, :0])), s.epi)
    rep = verify_ses(broken, mods["S1"])
    assert not rep.checks["dim X0 = dim X1 + dim target"]
    assert any("vertexwise dims" in p for p in rep.problems)


def test_horseshoe_is_exact(mods):
    s = cover_ses(direct_sum([mods["S1"], mods["I2"]]))
    h = horseshoe(s)
    assert verify_ses(h).ok
    assert list(h.target.dims) == list(syzygy(s.target).dims)


def test_approx_cover_examples(T, mods, regT):
    x = mods["I2"]
    r = approx_cover(x, [x, mods["S1"]], regT)
    assert r and r.ses.X1.total_dim == 0
    # I2 is outside the allowed class {S1}, so the cover P1 -> I2 is reproduced
    r = approx_cover(mods["I2"], [T.regular_module()], regT, allowed={regT.classify(mods["S1"])[0]})
    assert r and list(r.ses.X0.dims) == [2, 1, 0] and list(r.ses.X1.dims) == [1, 0, 0]
    K = dual_numbers()
    S = Representation(K, [1])
    r = approx_cover(S, [S])
    assert r and r.ses.how == "trivial"


def test_shift_examples(T, mods):
    K = dual_numbers()
    reg = default_registry(K)
    S = Representation(K, [1])
    w = make_witness(0, 1, [], [S], reg)
    w1 = shift_witness(w, 1)
    assert w1.D.generators == w.D.generators
    same = shift_witness(w, 0)
    assert same.D.generators == w.D.generators and [list(v.dims) for v in same.V] == [[2]]
    fam = list(mods.values())
    wT = closure_witness(fam, 1)
    w2 = shift_witness(wT, 2)
    assert all(w2.verify(x).ok for x in fam)


def test_a2_assemble_and_restrict():
    ctx = a2_context()
    K = ctx.T
    wK = closure_witness([K.regular_module()])
    wL = assemble_morita_witness(ctx, wK, wK)
    ring = ctx.ring
    inds = [ring.projective(0), ring.projective(1), Representation(ring, [1, 0]), Representation(ring, [0, 1])]
    assert all(wL.verify(x).ok for x in inds)
    assert wL.scope == SCOPE == "family-level"
    rT, rU = restrict_witness(ctx, wL)
    assert rT.verify(K.regular_module()).ok and rU.verify(K.regular_module()).ok
    assert rT.D.generators == () and rU.D.generators == ()


def test_product_context_reduces_to_coordinates(T, mods):
    ctx = MoritaContext(T, T)
    wT = closure_witness(list(mods.values()))
    wL = assemble_morita_witness(ctx, wT, wT)
    x = direct_sum([pad_T(ctx, mods["S1"]), _pad_U(ctx, mods["I2"])])
    assert wL.verify(x).ok
    rT, rU = restrict_witness(ctx, wL)
    assert all(rT.verify(m).ok and rU.verify(m).ok for m in mods.values())


def _pad_U(ctx, B):
    from glitlab.morita import pad_U

    return pad_U(ctx, B)


def test_example_context_witness(ctx, mods):
    fam = list(mods.values())
    w = closure_witness(fam)
    wL = assemble_morita_witness(ctx, w, w)
    ring = ctx.ring
    samples = [pad_T(ctx, direct_sum([mods["S1"], mods["I2"]]))]
    samples += [Representation(ring, [int(i == v) for i in range(ring.n_vertices)]) for v in range(ring.n_vertices)]
    assert all(wL.verify(x).ok for x in samples)
    rT, _ = restrict_witness(ctx, wL)
    assert all(rT.verify(x).ok for x in fam)
    audit = findim_bound(wL, samples)
    assert audit.ok and audit.bound >= 0


def test_findim_bound_examples(T, mods):
    K = field_algebra()
    a = findim_bound(closure_witness([K.regular_module()]), [K.regular_module()])
    assert a.ok and a.bound >= 0
    A2 = a2_path_algebra()
    reg = default_registry(A2)
    w = make_witness(0, 1, [A2.regular_module()], [], reg)
    samples = [Representation(A2, [1, 0]), Representation(A2, [0, 1]), A2.projective(0)]
    a = findim_bound(w, samples)
    assert a.bound == 1 and a.ok
    assert all(r["pd"] in ("0", "1") for r in a.rows)
    wT = closure_witness(list(mods.values()))
    a = findim_bound(wT, [mods["S2"]])
    assert a.bound >= 2 and a.ok


def test_special_witness_examples(T, mods):
    w = special_glit_witness([T.projective(0), T.projective(1)])
    assert w.t == 1 and w.D.nonprojective(w.reg) == []
    A2 = a2_path_algebra()
    w = special_glit_witness([Representation(A2, [1, 0]), Representation(A2, [0, 1])])
    assert w.t == 1 and len(w.D.nonprojective(w.reg)) == 1
    w = special_glit_witness([mods["S2"], mods["S3"]])
    assert w.t == 1 and len(w.D.nonprojective(w.reg)) == 1 and w.scope == "family-level"


@settings(max_examples=6, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.integers(0, 10**6))
def test_random_round_trip(seed):
    rng = np.random.default_rng(seed)
    bud = Budget(max_classes=300, max_depth=64)
    ctx = random_context(rng, kinds=("triangular", "zero-pairing"))
    tuples = [random_module(ctx.ring, rng, 12) for _ in range(4)]
    fT = [first(x) for x in tuples if first(x).total_dim] + [ctx.T.regular_module()]
    fU = [second(x) for x in tuples if second(x).total_dim] + [ctx.U.regular_module()]
    try:
        wT, wU = closure_witness(fT, budget=bud), closure_witness(fU, budget=bud)
    except BudgetExhausted:
        return
    wL = assemble_morita_witness(ctx, wT, wU, bud)
    assert all(wL.verify(x).ok for x in tuples)
    rT, rU = restrict_witness(ctx, wL, bud)
    assert all(rT.verify(a).ok for a in fT) and all(rU.verify(b).ok for b in fU)
    assert findim_bound(wL, tuples, bud).ok


@settings(max_examples=15, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.integers(0, 10**6))
def test_cover_sequences_verify_on_random_algebras(seed):
    rng = np.random.default_rng(seed)
    alg = random_algebra(rng, max_dim=14)
    x = random_module(alg, rng, 10)
    assert verify_ses(cover_ses(x), x).ok
    assert verify_ses(horseshoe(cover_ses(x))).ok
