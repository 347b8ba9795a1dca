"""Randomized property suites.

Each suite draws instance groups from ``default_rng([seed, suite_tag, g])``
for g = 0, 1, 2, ..., so results depend only on the seed and not on the
number of worker processes.  Instances whose computations exhaust the
budget are counted as skipped and do not count toward ``count``.
"""

from __future__ import annotations

import time
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .exactlin import FieldSpec
from .itfun import (
    Budget,
    BudgetExhausted,
    ClassDescriptor,
    findim_of_classes,
    omega_power_classes,
    pd,
    phi,
    phi_of_classes,
    phi_rel,
    phi_rel_of_classes,
    phidim_add,
    psi,
    psi_report,
    syzygy_closure,
)
from .krull import decompose, default_registry
from .repcat import Representation, direct_sum, syzygy

MAX_SKIP_FACTOR = 4
# closed-form syzygies up to Ω⁴ of a sampled tuple must stay below this total dimension
CLOSED_FORM_CAP = 160
TUPLE_TRIES = 6


@dataclass
class Violation:
    check: str
    lhs: int | str
    rhs: int | str
    detail: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"check": self.check, "lhs": self.lhs, "rhs": self.rhs, "detail": self.detail}


@dataclass
class InstanceResult:
    checks: int = 0
    violations: list[Violation] = field(default_factory=list)
    skipped: bool = False
    note: str = ""


@dataclass
class SuiteReport:
    name: str
    count: int
    seed: int
    passed: int
    failed: int
    skipped: int
    checks: int
    violations: list[dict]
    elapsed: float

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.passed == self.count

    def as_dict(self, timing: bool = False) -> dict:
        d = {
            "suite": self.name,
            "count": self.count,
            "seed": self.seed,
            "passed": self.passed,
            "failed": self.failed,
            "skipped": self.skipped,
            "checks": self.checks,
            "violations": self.violations,
            "ok": self.ok,
            "scope": "family-level",
        }
        if timing:
            d["elapsed_s"] = round(self.elapsed, 3)
        return d


class _Checker:
    def __init__(self):
        self.res = InstanceResult()

    def le(self, name: str, lhs: int, rhs: int, **detail) -> bool:
        self.res.checks += 1
        if lhs <= rhs:
            return True
        self.res.violations.append(Violation(name, lhs, rhs, detail))
        return False

    def eq(self, name: str, lhs, rhs, **detail) -> bool:
        self.res.checks += 1
        if lhs == rhs:
            return True
        self.res.violations.append(Violation(name, lhs, rhs, detail))
        return False


def _mod_detail(x: Representation) -> dict:
    return {"dims": list(x.dims), "algebra_dim": getattr(x.pres, "dim", None)}


def minimize(x: Representation, fails: Callable[[Representation], bool], reg) -> Representation:
    """Shrink a failing module to a smaller failing sum of its summands."""
    dec = decompose(x, reg)
    pieces = [reg.rep(c) for c, m in dec.summands for _ in range(m)]
    if len(pieces) <= 1:
        return x
    best = x
    changed = True
    while changed and len(pieces) > 1:
        changed = False
        for i in range(len(pieces)):
            trial = pieces[:i] + pieces[i + 1 :]
            cand = direct_sum(trial, x.pres) if len(trial) > 1 else trial[0]
            try:
                bad = fails(cand)
            except BudgetExhausted:
                bad = False
            if bad:
                pieces, best, changed = trial, cand, True
                break
    return best


def _algebra_and_modules(rng, p: int, k: int, max_dim: int = 24):
    from .randgen import random_algebra, random_module

    alg = random_algebra(rng, FieldSpec(p))
    return alg, [random_module(alg, rng, max_dim) for _ in range(k)]


# -- Φ and Ψ suites ---------------------------------------------------------------


def _huard_checks(x: Representation, reg, budget: Budget) -> _Checker:
    c = _Checker()
    ox = syzygy(x)
    c.le("Φ(X) <= Φ(ΩX)+1", phi(x, reg, budget), phi(ox, reg, budget) + 1, **_mod_detail(x))
    c.le("Ψ(X) <= Ψ(ΩX)+1", psi(x, reg, budget), psi(ox, reg, budget) + 1, **_mod_detail(x))
    return c


def group_huard(rng, p: int, k: int, budget: Budget) -> list[InstanceResult]:
    alg, mods = _algebra_and_modules(rng, p, k)
    reg = default_registry(alg)
    out = []
    for x in mods:
        out.append(_run_module_checks(x, reg, lambda y: _huard_checks(y, reg, budget)))
    return out


def _phi_basic_checks(x: Representation, s: int, P: Representation, Y: Representation, reg, budget: Budget) -> _Checker:
    c = _Checker()
    fx = phi(x, reg, budget)
    d = _mod_detail(x)
    c.eq("Φ(X^s) = Φ(X)", phi(direct_sum([x] * s), reg, budget), fx, s=s, **d)
    c.eq("Φ(X⊕P) = Φ(X)", phi(direct_sum([x, P]), reg, budget), fx, projective_dims=list(P.dims), **d)
    c.le("Φ(X) <= Φ(X⊕Y)", fx, phi(direct_sum([x, Y]), reg, budget), other_dims=list(Y.dims), **d)
    r = pd(x, reg, budget)
    if r.finite:
        c.eq("Φ(X) = pd(X) when finite", fx, r.value, **d)
        c.eq("Ψ(X) = pd(X) when finite", psi(x, reg, budget), r.value, **d)
    return c


def group_phi_basic(rng, p: int, k: int, budget: Budget) -> list[InstanceResult]:
    from .randgen import random_module

    alg, mods = _algebra_and_modules(rng, p, k, 16)
    reg = default_registry(alg)
    out = []
    for x in mods:
        s = int(rng.integers(2, 4))
        P = alg.projective(int(rng.integers(alg.n_vertices)))
        Y = random_module(alg, rng, 16)
        out.append(_run_module_checks(x, reg, lambda y: _phi_basic_checks(y, s, P, Y, reg, budget)))
    return out


def _random_descriptor(alg, rng, reg, budget: Budget) -> ClassDescriptor:
    from .randgen import random_module

    seeds = [random_module(alg, rng, 16) for _ in range(int(rng.integers(1, 3)))]
    return syzygy_closure(seeds, reg, budget)


def _rel_phi_checks(x, d: ClassDescriptor, D0, s: int, P, Y, delta: int, reg, budget: Budget) -> _Checker:
    c = _Checker()
    det = {**_mod_detail(x), "D": list(d.generators)}
    rx = phi_rel(x, d, reg, budget)
    c.eq("Φ_[D](X⊕D0) = Φ_[D](X)", phi_rel(direct_sum([x, D0]), d, reg, budget), rx, **det)
    c.le("Φ(X) <= Φ_[D](X) + Φdim(D)", phi(x, reg, budget), rx + delta, **det)
    c.eq("Φ_[D](X^s) = Φ_[D](X)", phi_rel(direct_sum([x] * s), d, reg, budget), rx, s=s, **det)
    c.eq("Φ_[D](X⊕P) = Φ_[D](X)", phi_rel(direct_sum([x, P]), d, reg, budget), rx, **det)
    c.le("Φ_[D](X) <= Φ_[D](X⊕Y)", rx, phi_rel(direct_sum([x, Y]), d, reg, budget), **det)
    return c


def group_rel_phi(rng, p: int, k: int, budget: Budget) -> list[InstanceResult]:
    from .randgen import random_module

    alg, mods = _algebra_and_modules(rng, p, k, 16)
    reg = default_registry(alg)
    try:
        d = _random_descriptor(alg, rng, reg, budget)
    except BudgetExhausted:
        return [InstanceResult(skipped=True, note="descriptor closure over budget")]
    gens = [reg.rep(g) for g in d.nonprojective(reg)]
    delta = phidim_add(gens, reg, budget) if gens else 0
    out = []
    for x in mods:
        picks = [gens[int(i)] for i in rng.integers(0, len(gens), size=int(rng.integers(1, 3)))] if gens else []
        D0 = direct_sum(picks, alg) if picks else alg.projective(0)
        s = int(rng.integers(2, 4))
        P = alg.projective(int(rng.integers(alg.n_vertices)))
        Y = random_module(alg, rng, 16)
        out.append(_run_module_checks(x, reg, lambda y: _rel_phi_checks(y, d, D0, s, P, Y, delta, reg, budget)))
    return out


def group_psi_bounds(rng, p: int, k: int, budget: Budget) -> list[InstanceResult]:
    """Instance checks of the Ψ-dimension bounds for add-closures of finite lists."""
    from .glit import cover_ses
    from .randgen import random_module

    alg, mods = _algebra_and_modules(rng, p, k, 12)
    reg = default_registry(alg)
    try:
        d = _random_descriptor(alg, rng, reg, budget)
    except BudgetExhausted:
        return [InstanceResult(skipped=True, note="descriptor closure over budget")]
    dg = [reg.rep(g) for g in d.nonprojective(reg)]
    delta = phidim_add(dg, reg, budget) if dg else 0
    out = []
    for x in mods:
        c = _Checker()
        try:
            det = _mod_detail(x)
            # finite family C = {x, y}: Ψdim(C) = Ψ(x ⊕ y), Φdim(C) = Φ(x ⊕ y)
            y = random_module(alg, rng, 12)
            C = direct_sum([x, y])
            n = phi(C, reg, budget)
            t = n + int(rng.integers(0, 2))
            parts = sorted(omega_power_classes(C, t, reg))
            fd = findim_of_classes(parts, reg, budget)
            ps = psi_report(C, reg, budget)
            if not fd.tainted and not ps.tainted:
                c.le("Ψdim(C) <= fin.dim(add Ω^t C) + t", ps.value, fd.value + t, t=t, **det)
            c.le("Ψdim(C) <= Φdim(Ω^t C) + t", ps.value, phi_of_classes(parts, reg, budget) + t, t=t, **det)
            # D ⊕ add V with V = x: sample C0 = D0 ⊕ V0
            if dg:
                D0 = dg[int(rng.integers(len(dg)))]
                V0 = direct_sum([x] * int(rng.integers(1, 3)))
                C0 = direct_sum([D0, V0])
                m = phi(direct_sum(dg + [x]), reg, budget)
                om = omega_power_classes(x, m, reg)
                bound = phi_rel(x, d, reg, budget) + phi_rel_of_classes(om, d, reg, budget) + 2 * delta
                ps0 = psi_report(C0, reg, budget)
                if not ps0.tainted:
                    c.le("Ψ(D0⊕V0) <= Φ_[D](V) + Φ_[D](Ω^m V) + 2Φdim(D)", ps0.value, bound, **det)
                tt = int(rng.integers(1, 3))
                kk = int(rng.integers(1, 3))
                lhs = phi_of_classes(omega_power_classes(C0, kk, reg), reg, budget)
                gens = set(d.nonprojective(reg)) | set(omega_power_classes(x, kk * tt, reg))
                rhs = phi_of_classes(sorted(gens), reg, budget) + kk * (tt - 1)
                c.le("Φ(Ω^k(D0⊕V0)) <= Φdim(D ⊕ Ω^{kt}V) + k(t-1)", lhs, rhs, k=kk, t=tt, **det)
            # Igusa–Todorov inequality on the cover sequence of x
            s = cover_ses(x)
            r = pd(x, reg, budget)
            if r.finite:
                c.le("pd(C) <= Ψ(X1⊕X0)+1", r.value, psi(direct_sum([s.X1, s.X0]), reg, budget) + 1, **det)
        except BudgetExhausted:
            c.res.skipped = True
        out.append(c.res)
    return out


def _run_module_checks(x: Representation, reg, run: Callable[[Representation], _Checker]) -> InstanceResult:
    try:
        c = run(x)
    except BudgetExhausted:
        return InstanceResult(skipped=True, note="budget")
    res = c.res
    if res.violations:
        small = minimize(x, lambda y: bool(run(y).res.violations), reg)
        for v in res.violations:
            v.detail["minimized_dims"] = list(small.dims)
    return res


# -- Morita suites -----------------------------------------------------------------


def group_morita_sandwich(rng, p: int, k: int, budget: Budget) -> list[InstanceResult]:
    """One random triangular or zero-pairing context per instance."""
    from .morita import first, phi_bound_battery, padding_checks, closed_form_checks, closed_form_size_estimate, second
    from .randgen import random_context, random_module

    out = []
    for _ in range(k):
        ctx = random_context(rng, FieldSpec(p), max_dim=12, kinds=("triangular", "zero-pairing"))
        ring = ctx.ring
        regT, regU, regL = default_registry(ctx.T), default_registry(ctx.U), default_registry(ring)
        c = _Checker()
        det = {"context": ctx.name, "T_dim": ctx.T.dim, "U_dim": ctx.U.dim, "ring_dim": ring.dim}
        try:
            As = [random_module(ctx.T, rng, 10) for _ in range(2)]
            Bs = [random_module(ctx.U, rng, 10) for _ in range(2)]
            tuples = []
            for _ in range(2 * TUPLE_TRIES):
                x = random_module(ring, rng, 14)
                if closed_form_size_estimate(ctx, x, 4, CLOSED_FORM_CAP) <= CLOSED_FORM_CAP:
                    tuples.append(x)
                if len(tuples) == 2:
                    break
            else:
                raise BudgetExhausted("iterated syzygies of the sampled tuples exceed the size cap")
            rep = phi_bound_battery(ctx, As, Bs, tuples, rng, budget)
            for bc in rep.checks:
                c.le(bc.name, bc.lhs, bc.rhs, note=bc.detail, **det)
            for x in tuples:
                for name, ok in closed_form_checks(ctx, x, 4, regL):
                    c.eq(f"syzygy {name}", ok, True, tuple_dims=list(x.dims), **det)
            for A, B in zip(As, Bs):
                for name, ok in padding_checks(ctx, A, B, rng, regL):
                    c.eq(f"syzygy {name}", ok, True, A=list(A.dims), B=list(B.dims), **det)
            for x in tuples:
                pa, pb, px = pd(first(x), regT, budget), pd(second(x), regU, budget), pd(x, regL, budget)
                if "unknown" in (pa.kind, pb.kind, px.kind):
                    continue
                both = pa.finite and pb.finite
                c.eq("tuple pd finite iff both coordinates are", px.finite, both, tuple_dims=list(x.dims), **det)
                if both and px.finite:
                    m = max(pa.value, pb.value)
                    c.le("max{pd A, pd B} <= pd(A,B,f,g)", m, px.value, tuple_dims=list(x.dims), **det)
                    c.le("pd(A,B,f,g) <= max{pd A, pd B}+2", px.value, m + 2, tuple_dims=list(x.dims), **det)
        except BudgetExhausted:
            c.res.skipped = True
        out.append(c.res)
    return out


def group_glit(rng, p: int, k: int, budget: Budget, tuples_per_context: int = 10) -> list[InstanceResult]:
    """Assemble, verify, restrict and audit witnesses over one random context."""
    from .glit import WitnessError, assemble_morita_witness, closure_witness, findim_bound, restrict_witness
    from .morita import first, second
    from .randgen import random_context, random_module

    out = []
    for _ in range(k):
        ctx = random_context(rng, FieldSpec(p))
        ring = ctx.ring
        c = _Checker()
        det = {"context": ctx.name, "ring_dim": ring.dim}
        try:
            tuples = [random_module(ring, rng, 16) for _ in range(tuples_per_context)]
            fT = [a for a in (first(x) for x in tuples) if a.total_dim] + [ctx.T.regular_module()]
            fU = [b for b in (second(x) for x in tuples) if b.total_dim] + [ctx.U.regular_module()]
            wT, wU = closure_witness(fT, budget=budget), closure_witness(fU, budget=budget)
            wL = assemble_morita_witness(ctx, wT, wU, budget)
            for x in tuples:
                r = wL.verify(x)
                c.eq("assembled witness verifies", r.ok, True, tuple_dims=list(x.dims), problems=r.problems, **det)
            rT, rU = restrict_witness(ctx, wL, budget)
            for w, fam, side in ((rT, fT, "T"), (rU, fU, "U")):
                for a in fam:
                    r = w.verify(a)
                    c.eq(f"restricted {side}-witness verifies", r.ok, True, dims=list(a.dims), problems=r.problems, **det)
            audit = findim_bound(wL, tuples, budget)
            c.eq("fin.dim audit", audit.violations, [], bound=audit.bound, **det)
        except BudgetExhausted:
            c.res.skipped = True
        except WitnessError as exc:
            c.res.checks += 1
            c.res.violations.append(Violation("witness construction", str(exc), "", det))
        out.append(c.res)
    return out


@dataclass(frozen=True)
class Suite:
    name: str
    group: Callable
    group_size: int
    description: str


SUITES: dict[str, Suite] = {
    s.name: s
    for s in (
        Suite("huard", group_huard, 5, "Φ(X) ≤ Φ(ΩX)+1 and Ψ(X) ≤ Ψ(ΩX)+1"),
        Suite("phi-basic", group_phi_basic, 5, "Φ(X^s) = Φ(X), Φ(X⊕P) = Φ(X), Φ(X) ≤ Φ(X⊕Y), Φ = Ψ = pd when finite"),
        Suite("rel-phi", group_rel_phi, 5, "relative Φ over random 1-syzygy-closed classes"),
        Suite("psi-bounds", group_psi_bounds, 4, "Ψ-dimension bounds and the Igusa–Todorov inequality"),
        Suite("morita-sandwich", group_morita_sandwich, 1, "Φ battery, syzygy identities (n ≤ 4), pd sandwich over random contexts"),
        Suite("glit", group_glit, 1, "witness assembly, restriction, verification and fin.dim audit"),
    )
}


def _tag(name: str) -> int:
    return zlib.crc32(name.encode())


def _run_group(args) -> list[InstanceResult]:
    name, seed, g, p, budget = args
    suite = SUITES[name]
    rng = np.random.default_rng([seed, _tag(name), g])
    return suite.group(rng, p, suite.group_size, budget)


def run_suite(
    name: str,
    count: int,
    seed: int = 0,
    p: int = 101,
    budget: Budget = Budget(max_classes=300, max_depth=64),
    jobs: int = 1,
    max_violations: int = 5,
) -> SuiteReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    t0 = time.perf_counter()
    results: list[InstanceResult] = []
    skipped = 0
    g = 0
    evaluated = 0
    cap = MAX_SKIP_FACTOR * max(count, 1) + 10
    pool = ProcessPoolExecutor(jobs) if jobs > 1 else None
    try:
        while evaluated < count and skipped < cap:
            batch = list(range(g, g + max(jobs, 1)))
            g += len(batch)
            args = [(name, seed, i, p, budget) for i in batch]
            groups = list(pool.map(_run_group, args)) if pool else [_run_group(a) for a in args]
            for grp in groups:
                for r in grp:
                    if evaluated >= count:
                        break
                    if r.skipped:
                        skipped += 1
                        continue
                    results.append(r)
                    evaluated += 1
    finally:
        if pool:
            pool.shutdown()
    failed = [r for r in results if r.violations]
    viol = [v.as_dict() for r in failed for v in r.violations][:max_violations]
    return SuiteReport(
        name,
        count,
        seed,
        len(results) - len(failed),
        len(failed),
        skipped,
        sum(r.checks for r in results),
        viol,
        time.perf_counter() - t0,
    )
