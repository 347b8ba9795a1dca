"""GLIT witnesses: data (n, t, V, D), their short exact sequences, and bounds.

A witness here is always *family-level*: D is a finite list of classes
(projectives are implicitly included) whose Ω^t-closure has been checked,
and the sequences demanded by a witness are produced on request for the
modules actually tested.  Nothing is claimed about all of mod Λ.

Every witness knows how to produce its sequences: witnesses found by search
use trivial, cover or approximation sequences; shifted witnesses push the
parent's sequences through the horseshoe lemma; assembled Morita witnesses
follow the componentwise construction and then one horseshoe step; restricted
witnesses take first (or second) components and pull back to the syzygy.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .itfun import (
    Budget,
    BudgetExhausted,
    ClassDescriptor,
    DescriptorError,
    L_step,
    PdResult,
    explore,
    pd,
    phi,
    psi,
)
from .krull import ClassRegistry, decompose, default_registry, iso_test
from .repcat import (
    Morphism,
    Representation,
    direct_sum,
    factor_through_mono,
    hom_space,
    identity,
    kernel,
    lift_through_epi,
    projective_cover,
    submodule,
    sum_inclusions,
    syzygy_power,
    zero_morphism,
)

SCOPE = "family-level"


class WitnessError(RuntimeError):
    """A construction the theorems guarantee did not materialize."""


class NoSequence(LookupError):
    pass


# -- short exact sequences ------------------------------------------------------


@dataclass
class SesWitness:
    """``0 -> X1 --mono--> X0 --epi--> target -> 0``."""

    mono: Morphism
    epi: Morphism
    how: str = ""

    @property
    def X1(self) -> Representation:
        return self.mono.source

    @property
    def X0(self) -> Representation:
        return self.mono.target

    @property
    def target(self) -> Representation:
        return self.epi.target


@dataclass
class SesReport:
    checks: dict[str, bool]
    dims: dict[str, list[int]]
    parts: dict[str, dict[str, dict[int, int]]] = field(default_factory=dict)
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def as_dict(self) -> dict:
        return {"ok": self.ok, "checks": self.checks, "dims": self.dims, "parts": self.parts, "problems": self.problems}


def trivial_ses(x: Representation) -> SesWitness:
    """``0 -> 0 -> x -> x -> 0``."""
    z = x.pres.zero_module()
    return SesWitness(zero_morphism(z, x), identity(x), "trivial")


def cover_ses(x: Representation) -> SesWitness:
    """``0 -> Ωx -> P -> x -> 0`` from the projective cover."""
    c = projective_cover(x)
    return SesWitness(c.inclusion, c.cover_map, "cover")


def split_parts(x: Representation, v_classes: set[int], d_classes: set[int], reg: ClassRegistry) -> tuple[dict[int, int], dict[int, int], dict[int, int]]:
    """Split the summands of x into add(V), D (with projectives) and neither."""
    vpart, dpart, bad = {}, {}, {}
    for c, m in decompose(x, reg).summands:
        if c in v_classes:
            vpart[c] = m
        elif c in d_classes or reg.is_projective(c):
            dpart[c] = m
        else:
            bad[c] = m
    return vpart, dpart, bad


def verify_ses(
    s: SesWitness,
    target: Representation | None = None,
    w: GlitWitness | None = None,
    reg: ClassRegistry | None = None,
) -> SesReport:
    """Check exactness of ``s`` and, with a witness, the add(V) ⊕ D memberships."""
    checks: dict[str, bool] = {}
    problems: list[str] = []
    X1, X0, Z = s.X1, s.X0, s.target
    f = X0.field
    checks["mono is a morphism"] = s.mono.is_intertwining()
    checks["epi is a morphism"] = s.epi.is_intertwining()
    checks["mono injective"] = s.mono.is_mono()
    checks["epi surjective"] = s.epi.is_epi()
    checks["composite zero"] = s.mono.then(s.epi).is_zero()
    dims_ok = all(b == a + c for a, b, c in zip(X1.dims, X0.dims, Z.dims))
    checks["dim X0 = dim X1 + dim target"] = dims_ok
    if not dims_ok:
        problems.append(f"vertexwise dims: X1={list(X1.dims)} X0={list(X0.dims)} target={list(Z.dims)}")
    ranks = all(f.rank(m) + f.rank(e) == m.shape[0] for m, e in zip(s.mono.mats, s.epi.mats))
    checks["exact in the middle"] = ranks and checks["composite zero"]
    if target is not None:
        if target is Z:
            checks["target matches"] = True
        else:
            res = iso_test(Z, target, reg)
            checks["target matches"] = bool(res)
            if not res:
                problems.append(f"target mismatch: {res.reason}")
    parts = {}
    if w is not None:
        reg = w.reg
        vcl, dcl = w.v_classes(), set(w.D.generators)
        for name, x in (("X1", X1), ("X0", X0)):
            vp, dp, bad = split_parts(x, vcl, dcl, reg)
            parts[name] = {"V": vp, "D": dp}
            checks[f"{name} in add(V) ⊕ D"] = not bad
            if bad:
                problems.append(f"{name} has summands outside add(V) ⊕ D: classes {sorted(bad)}")
    dims = {"X1": list(X1.dims), "X0": list(X0.dims), "target": list(Z.dims)}
    return SesReport(checks, dims, parts, problems)


def horseshoe(s: SesWitness) -> SesWitness:
    """From ``X -> Y -> Z`` build ``ΩX -> K -> ΩZ`` with K ≅ ΩY ⊕ projective.

    ΩX and ΩZ are the minimal syzygies; K is the kernel of the horseshoe cover
    ``P_X ⊕ P_Z -> Y``.
    """
    X, Y = s.X1, s.X0
    pres = Y.pres
    cX, cZ = projective_cover(X), projective_cover(s.target)
    lam = lift_through_epi(cZ, s.epi)
    cover = direct_sum([cX.cover, cZ.cover], pres)
    alpha_pi = cX.cover_map.then(s.mono)
    mats = tuple(np.concatenate([a, b], axis=1) for a, b in zip(alpha_pi.mats, lam.mats))
    phi_map = Morphism(cover, Y, mats)
    K, kinc = kernel(phi_map)
    incX, incZ = sum_inclusions([cX.cover, cZ.cover], cover)
    into = factor_through_mono(kinc, cX.inclusion.then(incX))
    nX = cX.cover.dims
    proj_Z = tuple(m[nx:, :].copy() for m, nx in zip(kinc.mats, nX))
    # (incX, incZ spans) -> Z-part of K, which lies in ΩZ
    kz = Morphism(K, cZ.cover, proj_Z)
    out = factor_through_mono(cZ.inclusion, kz)
    return SesWitness(into, out, "horseshoe")


def pullback_to_summand(s: SesWitness, j: Morphism) -> SesWitness:
    """Restrict ``s`` along a split mono ``j : Z' -> target``."""
    f = s.X0.field
    spans = []
    for e, jm in zip(s.epi.mats, j.mats):
        proj, _ = f.quotient_projection(f.column_basis(jm) if jm.size else np.zeros((jm.shape[0], 0), dtype=np.int64))
        spans.append(f.nullspace(f.mul(proj, e)) if proj.shape[0] else f.eye(e.shape[1]))
    X0p, inc = submodule(s.X0, spans)
    mono = factor_through_mono(inc, s.mono)
    epi = factor_through_mono(j, inc.then(s.epi))
    return SesWitness(mono, epi, s.how + "+pullback")


def retarget(s: SesWitness, target: Representation, reg: ClassRegistry | None = None) -> SesWitness:
    """Compose the epi with an isomorphism onto ``target``."""
    if s.target is target:
        return s
    res = iso_test(s.target, target, reg)
    if not res:
        raise WitnessError(f"sequence target is not isomorphic to the requested module: {res.reason}")
    return SesWitness(s.mono, s.epi.then(res.witness), s.how)


def summand_embedding(small: Representation, big: Representation, reg: ClassRegistry | None = None) -> Morphism:
    """A split mono ``small -> big``, when small is a direct summand of big."""
    reg = default_registry(big.pres) if reg is None else reg
    ds, db = decompose(small, reg).counter(), decompose(big, reg).counter()
    rest = db - ds
    if ds - db:
        raise WitnessError("module is not a direct summand")
    others = [reg.rep(c) for c, m in sorted(rest.items()) for _ in range(m)]
    total = direct_sum([small] + others, big.pres)
    res = iso_test(total, big, reg)
    if not res:
        raise WitnessError(f"summand embedding failed: {res.reason}")
    inc = sum_inclusions([small] + others, total)[0]
    return inc.then(res.witness)


# -- additive approximations ---------------------------------------------------


@dataclass
class ApproxResult:
    ses: SesWitness | None
    reason: str

    def __bool__(self) -> bool:
        return self.ses is not None


def approx_cover(
    target: Representation,
    W: Sequence[Representation],
    reg: ClassRegistry | None = None,
    allowed: set[int] | None = None,
) -> ApproxResult:
    """Evaluation map from copies of W onto target, pruned greedily.

    The kernel must lie in add(⊕W), or in ``allowed`` plus projectives when
    that is given.
    """
    reg = default_registry(target.pres) if reg is None else reg
    pres = target.pres
    wcls = {c for w in W for c, _ in decompose(w, reg).summands}
    allowed = wcls if allowed is None else allowed
    if all(c in allowed or reg.is_projective(c) for c, _ in decompose(target, reg).summands):
        return ApproxResult(trivial_ses(target), "target already in the class")
    # maps from indecomposable summands of W, so pruning can drop whole summands
    terms: list[Morphism] = []
    for c in sorted(wcls):
        terms.extend(hom_space(reg.rep(c), target))
    f = target.field

    def stacked(ms: Sequence[Morphism]) -> list[np.ndarray]:
        return [
            np.concatenate([m.mats[v] for m in ms], axis=1) if ms else np.zeros((target.dims[v], 0), dtype=np.int64)
            for v in range(pres.n_vertices)
        ]

    def onto(ms: Sequence[Morphism]) -> bool:
        return all(f.rank(m) == target.dims[v] for v, m in enumerate(stacked(ms)))

    if not onto(terms):
        return ApproxResult(None, "not surjective")
    keep = list(terms)
    for m in list(terms):
        trial = [k for k in keep if k is not m]
        if onto(trial):
            keep = trial
    X0 = direct_sum([m.source for m in keep], pres)
    epi = Morphism(X0, target, tuple(stacked(keep)))
    K, inc = kernel(epi)
    escapes = [c for c, _ in decompose(K, reg).summands if c not in allowed and not reg.is_projective(c)]
    if escapes:
        return ApproxResult(None, f"kernel escapes the class: classes {sorted(escapes)}")
    return ApproxResult(SesWitness(inc, epi, "approximation"), "ok")


# -- witnesses ---------------------------------------------------------------------


@dataclass
class GlitWitness:
    n: int
    t: int
    V: list[Representation]
    D: ClassDescriptor
    reg: ClassRegistry
    phidim_D: int
    phidim_bound: int | None = None
    kind: str = "given"
    scope: str = SCOPE
    notes: list[str] = field(default_factory=list)
    _provider: Callable[[Representation], SesWitness] | None = field(default=None, repr=False)
    _seq_cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise DescriptorError("n must be non-negative")
        if self.D.t != self.t:
            raise DescriptorError("descriptor closure index must equal t")

    @property
    def pres(self):
        return self.reg.pres

    def v_classes(self) -> set[int]:
        return {c for v in self.V for c, _ in decompose(v, self.reg).summands}

    def d_modules(self) -> list[Representation]:
        return [self.reg.rep(c) for c in self.D.generators]

    def target_of(self, c: Representation) -> Representation:
        return syzygy_power(c, self.n)

    def sequence_for(self, c: Representation) -> SesWitness:
        """An exact sequence ending in Ω^n(c), with ends in add(V) ⊕ D."""
        key = id(c)
        hit = self._seq_cache.get(key)
        if hit is not None and hit[0] is c:
            return hit[1]
        if self._provider is not None:
            s = self._provider(c)
        else:
            s = search_sequence(self, self.target_of(c))
        self._seq_cache[key] = (c, s)
        return s

    def verify(self, c: Representation) -> SesReport:
        try:
            s = self.sequence_for(c)
        except (NoSequence, WitnessError) as exc:
            return SesReport({"sequence found": False}, {}, {}, [str(exc)])
        rep = verify_ses(s, self.target_of(c), self, self.reg)
        rep.checks = {"sequence found": True, **rep.checks}
        return rep

    def summary(self) -> dict:
        return {
            "n": self.n,
            "t": self.t,
            "V_dims": [list(v.dims) for v in self.V],
            "D_classes": list(self.D.generators),
            "D_dims": [list(self.reg.rep(c).dims) for c in self.D.generators],
            "phidim_D": self.phidim_D,
            "phidim_bound": self.phidim_bound,
            "kind": self.kind,
            "scope": self.scope,
            "notes": self.notes,
        }


def search_sequence(w: GlitWitness, target: Representation) -> SesWitness:
    """Trivial, cover, or approximation sequence for ``target``."""
    reg = w.reg
    vcl, dcl = w.v_classes(), set(w.D.generators)
    allowed = vcl | dcl
    if not split_parts(target, vcl, dcl, reg)[2]:
        return trivial_ses(target)
    s = cover_ses(target)
    if not split_parts(s.X1, vcl, dcl, reg)[2] and not split_parts(s.X0, vcl, dcl, reg)[2]:
        return s
    res = approx_cover(target, w.V + w.d_modules() + [w.pres.regular_module()], reg, allowed)
    if res:
        return res.ses
    raise NoSequence(f"no sequence with ends in add(V) ⊕ D found: {res.reason}")


def make_witness(
    n: int,
    t: int,
    V: Sequence[Representation],
    D_modules: Sequence[Representation],
    reg: ClassRegistry | None = None,
    budget: Budget = Budget(),
    kind: str = "given",
) -> GlitWitness:
    """Witness from explicit data; D is the add-closure of the listed modules."""
    pres = (list(V) + list(D_modules))[0].pres if (V or D_modules) else None
    if reg is None:
        if pres is None:
            raise DescriptorError("cannot infer the algebra of an empty witness; pass a registry")
        reg = default_registry(pres)
    cids = [c for x in D_modules for c, _ in decompose(x, reg).summands if not reg.is_projective(c)]
    D = ClassDescriptor(tuple(cids), t).check(reg)
    return GlitWitness(n, t, list(V), D, reg, _phidim(D, reg, budget), kind=kind)


def _phidim(D: ClassDescriptor, reg: ClassRegistry, budget: Budget) -> int:
    gens = D.nonprojective(reg)
    if not gens:
        return 0
    return phi(direct_sum([reg.rep(c) for c in gens], reg.pres), reg, budget)


def closure_witness(
    family: Sequence[Representation],
    n: int = 0,
    reg: ClassRegistry | None = None,
    budget: Budget = Budget(),
) -> GlitWitness:
    """(n, 1, Λ, D) with D the syzygy closure of the Ω^n-family.

    Valid whenever that closure is finite, which the exploration certifies.
    """
    if not family:
        raise DescriptorError("empty family")
    pres = family[0].pres
    reg = default_registry(pres) if reg is None else reg
    cids = [c for x in family for c, _ in decompose(syzygy_power(x, n), reg).summands if not reg.is_projective(c)]
    ex = explore(reg, cids, budget)
    if not ex.complete:
        raise BudgetExhausted("syzygy closure of the family exceeded the budget")
    D = ClassDescriptor(tuple(ex.nodes), 1).check(reg)
    return GlitWitness(n, 1, [pres.regular_module()], D, reg, _phidim(D, reg, budget), kind="closure")


# -- transformers -------------------------------------------------------------------


def _omega_classes(cids: Sequence[int], k: int, reg: ClassRegistry) -> list[int]:
    out: set[int] = set()
    for c in cids:
        v = {c: 1}
        for _ in range(k):
            v = L_step(v, reg)
        out.update(v)
    return sorted(out)


def shift_witness(w: GlitWitness, m: int, budget: Budget = Budget()) -> GlitWitness:
    """(m, t, Ω^(m-n)V ⊕ Λ, add Ω^(m-n)D) from an (n, t, V, D) witness."""
    if m < w.n:
        raise ValueError(f"cannot shift a witness with n={w.n} down to {m}")
    k = m - w.n
    reg = w.reg
    V = [syzygy_power(v, k) for v in w.V] + [w.pres.regular_module()]
    V = [v for v in V if v.total_dim]
    D = ClassDescriptor(tuple(_omega_classes(w.D.nonprojective(reg), k, reg)), w.t)
    D.check(reg)
    bound = w.phidim_D + k * (w.t - 1)
    new = GlitWitness(m, w.t, V, D, reg, _phidim(D, reg, budget), bound, kind="shift")
    if new.phidim_D > bound:
        raise WitnessError(f"Φ-dimension {new.phidim_D} of the shifted class exceeds the bound {bound}")

    def provider(c: Representation, parent=w, k=k) -> SesWitness:
        s = parent.sequence_for(c)
        for _ in range(k):
            s = horseshoe(s)
        return s

    new._provider = provider
    new.notes = [f"shifted from n={w.n} by {k}"]
    return new


def assemble_morita_witness(ctx, wT: GlitWitness, wU: GlitWitness, budget: Budget = Budget()) -> GlitWitness:
    """(n+1, t·u, Ω(V,W,0,0) ⊕ Λ, add Ω(D_T, D_U, 0, 0)) over the Morita ring.

    Witnesses with different n, or with n = 0, are first shifted to a common
    n ≥ 1, where the closed-form syzygy of a tuple splits into its two
    displayed summands.
    """
    from . import morita as mo

    mo.require_valid(ctx)
    if wT.pres is not ctx.T or wU.pres is not ctx.U:
        raise DescriptorError("witnesses must live over the context's algebras")
    n = max(wT.n, wU.n, 1)
    if wT.n != n:
        wT = shift_witness(wT, n, budget)
    if wU.n != n:
        wU = shift_witness(wU, n, budget)
    ring = ctx.ring
    reg = default_registry(ring)
    lam = wT.t * wU.t
    Z = [mo.tuple_syzygy(mo.pad_T(ctx, v)).syzygy for v in wT.V]
    Z += [mo.tuple_syzygy(mo.pad_U(ctx, w)).syzygy for w in wU.V]
    Z = [z for z in Z if z.total_dim] + [ring.regular_module()]
    gens_T = [wT.reg.rep(c) for c in wT.D.generators] + [ctx.T.projective(v) for v in range(ctx.T.n_vertices)]
    gens_U = [wU.reg.rep(c) for c in wU.D.generators] + [ctx.U.projective(v) for v in range(ctx.U.n_vertices)]
    dmods = [mo.tuple_syzygy(mo.pad_T(ctx, y)).syzygy for y in gens_T]
    dmods += [mo.tuple_syzygy(mo.pad_U(ctx, y)).syzygy for y in gens_U]
    cids = sorted({c for x in dmods for c, _ in decompose(x, reg).summands if not reg.is_projective(c)})
    D = ClassDescriptor(tuple(cids), lam)
    bad = D.closure_failures(reg)
    if bad:
        raise WitnessError(f"assembled class is not Ω^{lam}-closed (theorem violation): {bad}")
    D.checked = True
    bound = max(wT.phidim_bound if wT.phidim_bound is not None else wT.phidim_D,
                wU.phidim_bound if wU.phidim_bound is not None else wU.phidim_D) + lam
    new = GlitWitness(n + 1, lam, Z, D, reg, _phidim(D, reg, budget), bound, kind="assemble")
    if new.phidim_D > bound:
        raise WitnessError(f"Φ-dimension {new.phidim_D} of the assembled class exceeds the bound {bound}")

    def provider(x: Representation) -> SesWitness:
        s = _morita_sequence(ctx, wT, wU, x, n)
        s = horseshoe(s)
        return retarget(s, syzygy_power(x, n + 1), reg)

    new._provider = provider
    new.notes = [f"assembled from T-witness (n={n}, t={wT.t}) and U-witness (n={n}, t={wU.t})"]
    return new


def _morita_sequence(ctx, wT: GlitWitness, wU: GlitWitness, x: Representation, n: int) -> SesWitness:
    """The sequence ``X -> Y -> Ω^n x`` (closed form) built componentwise."""
    from . import morita as mo

    ring = ctx.ring
    A, B = mo.first(x), mo.second(x)
    sT, sU = wT.sequence_for(A), wU.sequence_for(B)
    An1, Bn1 = syzygy_power(A, n - 1), syzygy_power(B, n - 1)
    cA, cB = projective_cover(An1), projective_cover(Bn1)
    if sT.target is not cA.syzygy or sU.target is not cB.syzygy:
        raise WitnessError("component sequences do not end in the expected syzygies")
    Z = mo.closed_form_syzygy(ctx, x, n)
    ZT = mo.induced_T(ctx, cA.syzygy, cA.cover, cA.inclusion)
    ZU = mo.induced_U(ctx, cB.syzygy, cB.cover, cB.inclusion)
    YT = mo.induced_T(ctx, sT.X0, cA.cover, sT.epi.then(cA.inclusion))
    YU = mo.induced_U(ctx, sU.X0, cB.cover, sU.epi.then(cB.inclusion))
    XT, XU = mo.pad_T(ctx, sT.X1), mo.pad_U(ctx, sU.X1)
    nT = ring.nT
    f = ctx.field

    def glue(src, tgt, t_mats, u_mats):
        return Morphism(src, tgt, tuple(t_mats) + tuple(u_mats))

    dims_PM = ZT.dims[nT:]
    dims_QN = ZU.dims[:nT]
    monoT = glue(XT, YT, sT.mono.mats, [np.zeros((d, 0), dtype=np.int64) for d in dims_PM])
    epiT = glue(YT, ZT, sT.epi.mats, [f.eye(d) for d in dims_PM])
    monoU = glue(XU, YU, [np.zeros((d, 0), dtype=np.int64) for d in dims_QN], sU.mono.mats)
    epiU = glue(YU, ZU, [f.eye(d) for d in dims_QN], sU.epi.mats)
    for m in (monoT, epiT, monoU, epiU):
        if not m.is_intertwining():
            raise WitnessError("componentwise sequence maps are not tuple morphisms")
    X = direct_sum([XT, XU], ring)
    Y = direct_sum([YT, YU], ring)
    mono = Morphism(X, Y, tuple(_block(a, b) for a, b in zip(monoT.mats, monoU.mats)))
    epi = Morphism(Y, Z, tuple(_block(a, b) for a, b in zip(epiT.mats, epiU.mats)))
    return SesWitness(mono, epi, "componentwise")


def _block(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.zeros((a.shape[0] + b.shape[0], a.shape[1] + b.shape[1]), dtype=np.int64)
    out[: a.shape[0], : a.shape[1]] = a
    out[a.shape[0] :, a.shape[1] :] = b
    return out


def restrict_witness(ctx, wL: GlitWitness, budget: Budget = Budget()) -> tuple[GlitWitness, GlitWitness]:
    """T- and U-witnesses from a witness over the Morita ring."""
    from . import morita as mo

    mo.require_valid(ctx)
    if wL.pres is not ctx.ring:
        raise DescriptorError("witness must live over the context's Morita ring")
    out = []
    for side, alg, comp, pad in (("T", ctx.T, mo.first, mo.pad_T), ("U", ctx.U, mo.second, mo.pad_U)):
        reg = default_registry(alg)
        V = [comp(v) for v in wL.V]
        V = [v for v in V if v.total_dim]
        reps = [comp(wL.reg.rep(c)) for c in wL.D.generators]
        cids = sorted({c for y in reps for c, _ in decompose(y, reg).summands if not reg.is_projective(c)})
        D = ClassDescriptor(tuple(cids), wL.t)
        bad = D.closure_failures(reg)
        if bad:
            raise WitnessError(f"restricted {side}-class is not Ω^{wL.t}-closed (theorem violation): {bad}")
        D.checked = True
        bound = (wL.phidim_bound if wL.phidim_bound is not None else wL.phidim_D) + wL.t
        w = GlitWitness(wL.n, wL.t, V, D, reg, _phidim(D, reg, budget), bound, kind=f"restrict-{side}")
        if w.phidim_D > bound:
            raise WitnessError(f"Φ-dimension of the restricted {side}-class exceeds the bound {bound}")

        def provider(a: Representation, comp=comp, pad=pad, side=side, reg=reg) -> SesWitness:
            s = wL.sequence_for(pad(ctx, a))
            mono = mo.restrict_morphism(s.mono, side)
            epi = mo.restrict_morphism(s.epi, side)
            # restriction re-creates the component modules; rebuild the chain on them
            X0 = mono.target
            epi = Morphism(X0, epi.target, epi.mats)
            rs = SesWitness(mono, epi, "restricted")
            target = syzygy_power(a, wL.n)
            j = summand_embedding(target, rs.target, reg)
            return pullback_to_summand(rs, j)

        w._provider = provider
        w.notes = [f"restricted to {side} from a witness with n={wL.n}, t={wL.t}"]
        out.append(w)
    return out[0], out[1]


@dataclass
class FinitudeFilter:
    members: list[Representation]
    pds: list[PdResult]


def finitude_filter(family: Sequence[Representation], reg: ClassRegistry | None = None, budget: Budget = Budget()) -> FinitudeFilter:
    if not family:
        return FinitudeFilter([], [])
    reg = default_registry(family[0].pres) if reg is None else reg
    res = [pd(x, reg, budget) for x in family]
    if any(r.kind == "unknown" for r in res):
        raise BudgetExhausted("projective dimension unresolved for some family member")
    keep = [(x, r) for x, r in zip(family, res) if r.finite]
    return FinitudeFilter([x for x, _ in keep], [r for _, r in keep])


def special_glit_witness(family: Sequence[Representation], reg: ClassRegistry | None = None, budget: Budget = Budget()) -> GlitWitness:
    """(0, max(1, fin.dim), 0, syzygy closure of the finite-pd members)."""
    if not family:
        raise DescriptorError("empty family")
    pres = family[0].pres
    reg = default_registry(pres) if reg is None else reg
    filt = finitude_filter(family, reg, budget)
    t = max([1] + [r.value for r in filt.pds])
    cids = [c for x in filt.members for c, _ in decompose(x, reg).summands if not reg.is_projective(c)]
    ex = explore(reg, cids, budget)
    if not ex.complete:
        raise BudgetExhausted("syzygy closure exceeded the budget")
    D = ClassDescriptor(tuple(ex.nodes), t).check(reg)
    w = GlitWitness(0, t, [], D, reg, _phidim(D, reg, budget), t, kind="special")
    if w.phidim_D > t:
        raise WitnessError("Φ-dimension of the finite-pd class exceeds its fin.dim")
    w.notes = [f"{len(filt.members)} of {len(family)} family members have finite pd"]
    return w


# -- fin.dim bound ---------------------------------------------------------------------


@dataclass
class FindimAudit:
    bound: int
    psi_value: int
    rows: list[dict]
    violations: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations

    def as_dict(self) -> dict:
        return {"bound": self.bound, "psi": self.psi_value, "ok": self.ok, "samples": self.rows, "violations": self.violations, "scope": SCOPE}


def findim_bound(w: GlitWitness, samples: Sequence[Representation], budget: Budget = Budget()) -> FindimAudit:
    """fin.dim ≤ Ψ(⊕(D ∪ V)) + n + 1, audited on the samples."""
    reg = w.reg
    mods = w.d_modules() + list(w.V)
    mods = [m for m in mods if m.total_dim]
    psi_val = psi(direct_sum(mods, w.pres), reg, budget) if mods else 0
    bound = psi_val + w.n + 1
    rows, violations = [], []
    for i, c in enumerate(samples):
        rep = w.verify(c)
        r = pd(c, reg, budget)
        row = {"sample": i, "dims": list(c.dims), "pd": str(r), "sequence_ok": rep.ok}
        if not rep.ok:
            violations.append(f"sample {i}: witness sequence fails: {rep.problems}")
        if r.finite:
            s = w.sequence_for(c)
            it = psi(direct_sum([s.X1, s.X0], w.pres), reg, budget) + 1
            tgt = pd(w.target_of(c), reg, budget)
            row["psi_X1_X0_plus_1"] = it
            if r.value > bound:
                violations.append(f"sample {i}: pd {r.value} exceeds bound {bound}")
            if tgt.finite and tgt.value > it:
                violations.append(f"sample {i}: Igusa–Todorov inequality fails ({tgt.value} > {it})")
        rows.append(row)
    return FindimAudit(bound, psi_val, rows, violations)
