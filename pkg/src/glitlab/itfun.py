"""Igusa–Todorov functions over a class registry.

Everything is computed on the finite set R of indecomposable non-projective
classes reachable from a module under repeated syzygies.  L is the integer
matrix of the syzygy map on the free abelian group on R.  Ranks are exact
(multimodular with a Hadamard bound).

Φ certification: let ν be the first k with rk L^k = rk L^(k+1) on all of
ℤ^R.  From ν on L is injective on im L^ν, so rk L^k<X> is constant for
k ≥ ν and Φ(X) is the last point ≤ ν where the rank trace drops.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np
from sympy import prevprime

from .krull import ClassRegistry, decompose, default_registry
from .repcat import Representation, direct_sum, syzygy, syzygy_power

ClassVector = dict  # class id -> positive integer multiplicity

DEFAULT_MAX_CLASSES = 10_000
DEFAULT_MAX_DEPTH = 256


class BudgetExhausted(RuntimeError):
    def __init__(self, message: str, trace: list[tuple[int, int]] | None = None):
        super().__init__(message)
        self.trace = trace or []


class DescriptorError(ValueError):
    pass


@dataclass(frozen=True)
class Budget:
    max_classes: int = DEFAULT_MAX_CLASSES
    max_depth: int = DEFAULT_MAX_DEPTH


# -- exact integer rank --------------------------------------------------------


@lru_cache(maxsize=None)
def _primes(n: int) -> tuple[int, ...]:
    out, p = [], 1 << 31
    while len(out) < n:
        p = prevprime(p)
        out.append(p)
    return tuple(out)


def _rank_mod(a: np.ndarray, p: int) -> int:
    m = a.copy()
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            m[[r, k]] = m[[k, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r] = (m[r] * inv) % p
        below = np.flatnonzero(m[r + 1 :, c]) + r + 1
        if below.size:
            m[below] = (m[below] - (m[below, c][:, None] * m[r]) % p) % p
        r += 1
    return r


def integer_rank(vectors: Sequence[dict[int, int]]) -> int:
    """Rank over ℚ of sparse integer vectors.

    Uses ranks modulo primes below 2^31; once the prime product exceeds the
    Hadamard bound of every minor, the maximum modular rank is the rational
    rank.
    """
    vecs = [v for v in vectors if any(v.values())]
    if not vecs:
        return 0
    keys = sorted({k for v in vecs for k, c in v.items() if c})
    col = {k: i for i, k in enumerate(keys)}
    log_h = sum(0.5 * math.log2(sum(c * c for c in v.values())) for v in vecs)
    need = max(1, int(log_h // 30) + 1)
    primes = _primes(need)
    best = 0
    bound = min(len(vecs), len(keys))
    for p in primes:
        a = np.zeros((len(vecs), len(keys)), dtype=np.int64)
        for i, v in enumerate(vecs):
            for k, c in v.items():
                if c:
                    a[i, col[k]] = c % p
        best = max(best, _rank_mod(a, p))
        if best == bound:
            break
    return best


# -- L-graph -------------------------------------------------------------------


def class_vector(x: Representation, reg: ClassRegistry | None = None) -> ClassVector:
    reg = default_registry(x.pres) if reg is None else reg
    return dict(decompose(x, reg).nonprojective(reg))


def _edges(reg: ClassRegistry, cid: int) -> dict[int, int]:
    if cid not in reg.syz_edges:
        if reg.is_projective(cid):
            reg.syz_edges[cid] = {}
        else:
            reg.syz_edges[cid] = class_vector(syzygy(reg.rep(cid)), reg)
    return reg.syz_edges[cid]


@dataclass
class Exploration:
    nodes: list[int]
    complete: bool
    depth: dict[int, int] = field(default_factory=dict)


def explore(reg: ClassRegistry, start: Iterable[int], budget: Budget = Budget()) -> Exploration:
    """Breadth-first closure of ``start`` under the L-graph."""
    start = [c for c in dict.fromkeys(start) if not reg.is_projective(c)]
    depth = {c: 0 for c in start}
    order = list(start)
    frontier = list(start)
    complete = True
    while frontier:
        nxt = []
        for c in frontier:
            if depth[c] >= budget.max_depth:
                complete = False
                continue
            for d in _edges(reg, c):
                if d not in depth:
                    if len(depth) >= budget.max_classes:
                        return Exploration(order, False, depth)
                    depth[d] = depth[c] + 1
                    order.append(d)
                    nxt.append(d)
        frontier = nxt
    if complete:
        for c in order:
            if c not in reg.syz_edges:
                complete = False
                break
    return Exploration(order, complete, depth)


def L_step(v: ClassVector, reg: ClassRegistry, drop: frozenset[int] = frozenset()) -> ClassVector:
    out: dict[int, int] = {}
    for c, n in v.items():
        if c in drop or not n:
            continue
        for d, m in _edges(reg, c).items():
            if d in drop:
                continue
            out[d] = out.get(d, 0) + n * m
    return {k: c for k, c in out.items() if c}


# -- projective dimension -------------------------------------------------------


@dataclass(frozen=True)
class PdResult:
    kind: str  # "finite" | "infinite" | "unknown"
    value: int | None = None
    cycle: tuple[int, ...] = ()

    @property
    def finite(self) -> bool:
        return self.kind == "finite"

    def __str__(self) -> str:
        if self.kind == "finite":
            return str(self.value)
        if self.kind == "infinite":
            return "inf"
        return f"unknown(>{self.value})" if self.value is not None else "unknown"


def _node_pds(reg: ClassRegistry, nodes: Iterable[int], budget: Budget) -> dict[int, PdResult]:
    """pd of each class reachable from ``nodes``, by iterative DFS."""
    memo: dict[int, PdResult] = reg.pd_memo
    state: dict[int, int] = {}
    stack_pos: dict[int, int] = {}
    path: list[int] = []
    for root in nodes:
        if root in memo:
            continue
        todo = [(root, False)]
        while todo:
            c, done = todo.pop()
            if done:
                path.pop()
                del stack_pos[c]
                state[c] = 2
                if c in memo:
                    continue
                children = _edges(reg, c)
                best = 1
                res = None
                for d in children:
                    r = memo[d]
                    if r.kind == "infinite":
                        res = PdResult("infinite", None, r.cycle)
                        break
                    if r.kind == "unknown":
                        res = r
                    elif res is None:
                        best = max(best, r.value + 1)
                if res is None:
                    res = PdResult("finite", best)
                    if best > budget.max_depth:
                        res = PdResult("unknown", budget.max_depth)
                memo[c] = res
                continue
            if c in memo or state.get(c) == 2:
                continue
            if reg.is_projective(c):
                memo[c] = PdResult("finite", 0)
                continue
            if len(path) >= budget.max_depth or len(reg) > budget.max_classes:
                memo[c] = PdResult("unknown", budget.max_depth)
                continue
            state[c] = 1
            stack_pos[c] = len(path)
            path.append(c)
            todo.append((c, True))
            for d in _edges(reg, c):
                if d in stack_pos:
                    cyc = tuple(path[stack_pos[d] :])
                    memo[c] = PdResult("infinite", None, cyc)
                    for e in cyc:
                        memo.setdefault(e, PdResult("infinite", None, cyc))
                elif d not in memo:
                    todo.append((d, False))
    return memo


def pd(x: Representation, reg: ClassRegistry | None = None, budget: Budget = Budget()) -> PdResult:
    reg = default_registry(x.pres) if reg is None else reg
    cv = class_vector(x, reg)
    return pd_of_classes(cv, reg, budget)


def pd_of_classes(cids: Iterable[int], reg: ClassRegistry, budget: Budget = Budget()) -> PdResult:
    cids = [c for c in cids if not reg.is_projective(c)]
    if not cids:
        return PdResult("finite", 0)
    memo = _node_pds(reg, cids, budget)
    results = [memo[c] for c in cids]
    for r in results:
        if r.kind == "infinite":
            return r
    if any(r.kind == "unknown" for r in results):
        return PdResult("unknown", budget.max_depth)
    return PdResult("finite", max(r.value for r in results))


@dataclass(frozen=True)
class DimBound:
    value: int
    tainted: bool = False

    def __str__(self) -> str:
        return f">={self.value} (tainted)" if self.tainted else str(self.value)


def findim_of_classes(cids: Iterable[int], reg: ClassRegistry, budget: Budget = Budget()) -> DimBound:
    """max finite pd over the given classes; sup of the empty set is 0."""
    cids = list(dict.fromkeys(cids))
    nonproj = [c for c in cids if not reg.is_projective(c)]
    memo = _node_pds(reg, nonproj, budget) if nonproj else {}
    best, taint = 0, False
    for c in nonproj:
        r = memo[c]
        if r.kind == "finite":
            best = max(best, r.value)
        elif r.kind == "unknown":
            taint = True
    return DimBound(best, taint)


def findim_add(xs: Sequence[Representation], reg: ClassRegistry | None = None, budget: Budget = Budget()) -> DimBound:
    if not xs:
        return DimBound(0)
    reg = default_registry(xs[0].pres) if reg is None else reg
    cids = [c for x in xs for c, _ in decompose(x, reg).summands]
    return findim_of_classes(cids, reg, budget)


# -- Φ and relatives -----------------------------------------------------------


@dataclass
class PhiReport:
    value: int
    trace: list[tuple[int, int]]
    nu: int
    classes: list[int]
    dropped: list[int] = field(default_factory=list)

    def as_dict(self, reg: ClassRegistry | None = None) -> dict:
        out = {
            "phi": self.value,
            "rank_trace": [[k, r] for k, r in self.trace],
            "stabilization_index": self.nu,
            "classes": self.classes,
        }
        if reg is not None:
            out["class_dims"] = {str(c): list(reg.rep(c).dims) for c in self.classes}
        if self.dropped:
            out["dropped"] = self.dropped
        return out


def _phi_core(start: Sequence[int], reg: ClassRegistry, budget: Budget, drop: frozenset[int]) -> PhiReport:
    start = [c for c in dict.fromkeys(start) if c not in drop and not reg.is_projective(c)]
    if not start:
        return PhiReport(0, [(0, 0)], 0, [], sorted(drop))
    ex = explore(reg, start, budget)
    if not ex.complete:
        raise BudgetExhausted(
            f"syzygy exploration exceeded {budget.max_classes} classes or depth {budget.max_depth}"
        )
    nodes = [c for c in ex.nodes if c not in drop]
    # ν from the full reachable lattice
    cur = [{c: 1} for c in nodes]
    ranks_full = [integer_rank(cur)]
    while True:
        cur = [L_step(v, reg, drop) for v in cur]
        ranks_full.append(integer_rank(cur))
        if ranks_full[-1] == ranks_full[-2]:
            break
    nu = len(ranks_full) - 2
    gens = [{c: 1} for c in start]
    trace = []
    for k in range(nu + 2):
        trace.append((k, integer_rank(gens)))
        gens = [L_step(v, reg, drop) for v in gens]
    value = 0
    for k in range(1, len(trace)):
        if trace[k][1] != trace[k - 1][1]:
            value = k
    for k in range(1, len(trace)):
        assert trace[k][1] <= trace[k - 1][1], "rank trace must be non-increasing"
    return PhiReport(value, trace, nu, nodes, sorted(drop))


def phi_report(x: Representation, reg: ClassRegistry | None = None, budget: Budget = Budget()) -> PhiReport:
    reg = default_registry(x.pres) if reg is None else reg
    return _phi_core(list(class_vector(x, reg)), reg, budget, frozenset())


def phi(x: Representation, reg: ClassRegistry | None = None, budget: Budget = Budget()) -> int:
    return phi_report(x, reg, budget).value


def phi_of_classes(cids: Iterable[int], reg: ClassRegistry, budget: Budget = Budget()) -> int:
    return _phi_core(list(cids), reg, budget, frozenset()).value


@dataclass
class PsiReport:
    value: int
    phi: int
    findim: DimBound
    tail_classes: list[int]

    @property
    def tainted(self) -> bool:
        return self.findim.tainted


def psi_of_classes(cv: ClassVector, reg: ClassRegistry, budget: Budget = Budget()) -> PsiReport:
    cv = {c: n for c, n in cv.items() if not reg.is_projective(c)}
    ph = _phi_core(list(cv), reg, budget, frozenset()).value
    tail = dict(cv)
    for _ in range(ph):
        tail = L_step(tail, reg)
    # projective summands of the tail contribute pd 0, never above the max
    fd = findim_of_classes(sorted(tail), reg, budget)
    return PsiReport(ph + fd.value, ph, fd, sorted(tail))


def psi_report(x: Representation, reg: ClassRegistry | None = None, budget: Budget = Budget()) -> PsiReport:
    reg = default_registry(x.pres) if reg is None else reg
    return psi_of_classes(class_vector(x, reg), reg, budget)


def psi(x: Representation, reg: ClassRegistry | None = None, budget: Budget = Budget()) -> int:
    return psi_report(x, reg, budget).value


def phidim_add(xs: Sequence[Representation], reg: ClassRegistry | None = None, budget: Budget = Budget()) -> int:
    """Φ-dimension of add(xs), attained at the full direct sum."""
    if not xs:
        return 0
    reg = default_registry(xs[0].pres) if reg is None else reg
    return phi(direct_sum(list(xs), xs[0].pres), reg, budget)


def psidim_add(xs: Sequence[Representation], reg: ClassRegistry | None = None, budget: Budget = Budget()) -> int:
    if not xs:
        return 0
    reg = default_registry(xs[0].pres) if reg is None else reg
    return psi(direct_sum(list(xs), xs[0].pres), reg, budget)


# -- class descriptors and relative Φ -----------------------------------------


@dataclass
class ClassDescriptor:
    """add(generators ∪ projectives) with a declared syzygy-closure index t."""

    generators: tuple[int, ...]
    t: int = 1
    checked: bool = False

    def __post_init__(self) -> None:
        if self.t < 1:
            raise DescriptorError("closure index t must be at least 1")
        self.generators = tuple(sorted(set(self.generators)))

    def closure_failures(self, reg: ClassRegistry) -> list[tuple[int, int]]:
        """(generator, escaping class) pairs violating Ω^t(D) ⊆ add D."""
        gens = set(self.generators)
        bad = []
        for g in self.generators:
            if reg.is_projective(g):
                continue
            v = {g: 1}
            for _ in range(self.t):
                v = L_step(v, reg)
            bad.extend((g, c) for c in v if c not in gens)
        return bad

    def check(self, reg: ClassRegistry) -> "ClassDescriptor":
        bad = self.closure_failures(reg)
        if bad:
            raise DescriptorError(f"class is not closed under Ω^{self.t}: escapes {bad}")
        self.checked = True
        return self

    def nonprojective(self, reg: ClassRegistry) -> list[int]:
        return [g for g in self.generators if not reg.is_projective(g)]

    def contains(self, x: Representation, reg: ClassRegistry) -> bool:
        gens = set(self.generators)
        return all(reg.is_projective(c) or c in gens for c, _ in decompose(x, reg).summands)


def descriptor_from_modules(xs: Sequence[Representation], reg: ClassRegistry, t: int = 1) -> ClassDescriptor:
    cids = [c for x in xs for c, _ in decompose(x, reg).summands]
    return ClassDescriptor(tuple(cids), t)


def syzygy_closure(xs: Sequence[Representation], reg: ClassRegistry, budget: Budget = Budget()) -> ClassDescriptor:
    """Smallest 1-syzygy-closed descriptor containing xs."""
    cids = [c for x in xs for c, _ in decompose(x, reg).summands if not reg.is_projective(c)]
    ex = explore(reg, cids, budget)
    if not ex.complete:
        raise BudgetExhausted("syzygy closure exceeded budget")
    return ClassDescriptor(tuple(ex.nodes), 1).check(reg)


def phi_rel_report(x: Representation, d: ClassDescriptor, reg: ClassRegistry | None = None, budget: Budget = Budget()) -> PhiReport:
    reg = default_registry(x.pres) if reg is None else reg
    if d.t != 1:
        raise DescriptorError("relative Φ needs a 1-syzygy-closed class")
    if not d.checked:
        d.check(reg)
    return _phi_core(list(class_vector(x, reg)), reg, budget, frozenset(d.generators))


def phi_rel(x: Representation, d: ClassDescriptor, reg: ClassRegistry | None = None, budget: Budget = Budget()) -> int:
    return phi_rel_report(x, d, reg, budget).value


def phi_rel_of_classes(cids: Iterable[int], d: ClassDescriptor, reg: ClassRegistry, budget: Budget = Budget()) -> int:
    if not d.checked:
        d.check(reg)
    return _phi_core(list(cids), reg, budget, frozenset(d.generators)).value


def omega_power_classes(x: Representation, k: int, reg: ClassRegistry | None = None) -> ClassVector:
    """Class vector of Ω^k x computed through L."""
    reg = default_registry(x.pres) if reg is None else reg
    v = class_vector(x, reg)
    for _ in range(k):
        v = L_step(v, reg)
    return v


def omega_power_module_classes(x: Representation, k: int, reg: ClassRegistry | None = None) -> ClassVector:
    """Same as :func:`omega_power_classes` but through honest syzygies."""
    reg = default_registry(x.pres) if reg is None else reg
    return class_vector(syzygy_power(x, k), reg)
