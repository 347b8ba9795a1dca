"""Krull–Schmidt decomposition, isomorphism tests, and the class registry.

Splitting uses elements of End(X): if the characteristic polynomial of a
sampled endomorphism has two distinct irreducible factors, the primary
decomposition ``X = ker g(x)^e ⊕ im g(x)^e`` splits X.  When no split turns up
an exact locality certificate for End(X) is required, so a module is only
ever declared indecomposable with proof.
"""

from __future__ import annotations

import weakref
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .exactlin import FieldSpec
from .repcat import (
    Morphism,
    PresentationBase,
    Representation,
    hom_space,
    is_projective,
    submodule,
    top_generators,
)

DEFAULT_SPLIT_BUDGET = 64


class SplitFailure(RuntimeError):
    """No split and no locality certificate within the sampling budget."""


class Inconclusive(RuntimeError):
    pass


# -- endomorphism algebra helpers ----------------------------------------


def _compose(f: FieldSpec, a: Sequence[np.ndarray], b: Sequence[np.ndarray]) -> tuple[np.ndarray, ...]:
    """``a . b`` vertexwise."""
    return tuple(f.mul(x, y) for x, y in zip(a, b))


def _flat(mats: Sequence[np.ndarray]) -> np.ndarray:
    return np.concatenate([m.reshape(-1) for m in mats]) if mats else np.zeros(0, dtype=np.int64)


def _unflat(vec: np.ndarray, dims: Sequence[int]) -> tuple[np.ndarray, ...]:
    out, pos = [], 0
    for d in dims:
        out.append(vec[pos : pos + d * d].reshape(d, d))
        pos += d * d
    return tuple(out)


def _combine(f: FieldSpec, basis: list[tuple[np.ndarray, ...]], coeffs) -> tuple[np.ndarray, ...]:
    out = []
    for v in range(len(basis[0])):
        acc = np.zeros_like(basis[0][v])
        for c, b in zip(coeffs, basis):
            if c:
                acc = (acc + int(c) * b[v]) % f.p
        out.append(acc)
    return tuple(out)


def _charpoly_factors(f: FieldSpec, mats: Sequence[np.ndarray]) -> dict[tuple[int, ...], int]:
    """Irreducible factors (monic, high to low) of the product of vertex charpolys."""
    total: dict[tuple[int, ...], int] = {}
    for m in mats:
        if m.shape[0] == 0:
            continue
        cp = f.charpoly(m)
        roots = f.roots_with_multiplicity(cp)
        if roots is not None:
            items = [((1, (-r) % f.p), e) for r, e in roots.items()]
        else:
            items = [(tuple(g), e) for g, e in f.factor(cp)]
        for g, e in items:
            total[g] = total.get(g, 0) + e
    return total


def _poly_at(f: FieldSpec, g: Sequence[int], mats: Sequence[np.ndarray], power: int = 1) -> tuple[np.ndarray, ...]:
    out = []
    for m in mats:
        y = f.poly_eval_matrix(list(g), m)
        if power > 1:
            y = f.power(y, power)
        out.append(y)
    return tuple(out)


def _span_basis(f: FieldSpec, vecs: list[np.ndarray], length: int) -> np.ndarray:
    if not vecs:
        return np.zeros((0, length), dtype=np.int64)
    red, _ = f.rref(np.vstack(vecs))
    return red


@dataclass
class SplitOutcome:
    parts: tuple[list[np.ndarray], list[np.ndarray]] | None
    certificate: dict = field(default_factory=dict)

    @property
    def split(self) -> bool:
        return self.parts is not None


def _locality_certificate(f, x, ebasis, nilpotents, degrees) -> dict | None:
    """Certify End(x) local, or return None when the data do not suffice.

    R is the two-sided ideal generated by the sampled nilpotents g(s).  If R
    is nilpotent it lies in the radical; if moreover E/R has dimension 1, or
    equals K[s] for a sampled s with irreducible g of degree dim E/R, then
    E/R is a field and E is local.
    """
    dims = x.dims
    length = sum(d * d for d in dims)
    dim_e = len(ebasis)
    gens = [_flat(n) for n in nilpotents if any(np.any(m) for m in n)]
    R = _span_basis(f, gens, length)
    while True:
        new = [R]
        for r in R:
            rm = _unflat(r, dims)
            for e in ebasis:
                new.append(_flat(_compose(f, e, rm)).reshape(1, -1))
                new.append(_flat(_compose(f, rm, e)).reshape(1, -1))
        R2 = _span_basis(f, [row for block in new for row in block], length)
        if R2.shape[0] == R.shape[0]:
            break
        R = R2
    dim_r = R.shape[0]
    if dim_r >= dim_e:
        return None
    power = R
    steps = 0
    while power.shape[0]:
        prods = []
        for r in R:
            rm = _unflat(r, dims)
            for s in power:
                prods.append(_flat(_compose(f, rm, _unflat(s, dims))))
        nxt = _span_basis(f, prods, length)
        steps += 1
        if nxt.shape[0] >= power.shape[0]:
            return None
        power = nxt
    q = dim_e - dim_r
    if q == 1 or q in degrees:
        return {"local": True, "end_dim": dim_e, "radical_dim": dim_r, "residue_dim": q, "nilpotency": steps}
    return None


def split_once(x: Representation, rng: np.random.Generator | int = 0, budget: int = DEFAULT_SPLIT_BUDGET) -> SplitOutcome:
    """Split x into two nonzero summands or certify that End(x) is local."""
    f = x.field
    if isinstance(rng, (int, np.integer)):
        rng = np.random.default_rng(int(rng))
    if x.total_dim == 0:
        raise ValueError("cannot split the zero module")
    if len(top_generators(x)) == 1:
        return SplitOutcome(None, {"local": True, "reason": "simple top"})
    ebasis = [m.mats for m in hom_space(x, x)]
    if len(ebasis) == 1:
        return SplitOutcome(None, {"local": True, "end_dim": 1, "residue_dim": 1})

    def samples():
        for _ in range(budget):
            yield _combine(f, ebasis, rng.integers(0, f.p, size=len(ebasis)))
        yield from ebasis
        for i in range(len(ebasis)):
            for j in range(i + 1, len(ebasis)):
                yield _combine(f, [ebasis[i], ebasis[j]], [1, 1])

    nilpotents, degrees = [], set()
    tried = 0
    for s in samples():
        tried += 1
        facs = _charpoly_factors(f, s)
        if len(facs) >= 2:
            g, e = sorted(facs.items())[0]
            y = _poly_at(f, g, s, e)
            kers = [f.nullspace(m) for m in y]
            ims = [f.column_basis(m) for m in y]
            if sum(k.shape[1] for k in kers) and sum(i.shape[1] for i in ims):
                return SplitOutcome((kers, ims), {"samples": tried})
            continue
        (g, _), = facs.items()
        nilpotents.append(_poly_at(f, g, s))
        degrees.add(len(g) - 1)
        if tried in (2, 8) or tried % 32 == 0:
            cert = _locality_certificate(f, x, ebasis, nilpotents, degrees)
            if cert is not None:
                cert["samples"] = tried
                return SplitOutcome(None, cert)
    cert = _locality_certificate(f, x, ebasis, nilpotents, degrees)
    if cert is not None:
        cert["samples"] = tried
        return SplitOutcome(None, cert)
    raise SplitFailure(
        f"no split and no locality certificate after {tried} samples; increase the field size or the budget"
    )


# -- registry --------------------------------------------------------------


def find_iso_indecomposable(a: Representation, b: Representation) -> Morphism | None:
    """An isomorphism a -> b between indecomposables, or None.

    With End(a) local, Hom(a, b) ≅ End(a) whenever a ≅ b, and some basis
    vector of any basis maps to a unit; so scanning a basis is exhaustive.
    """
    if a.dims != b.dims:
        return None
    for m in hom_space(a, b):
        if m.is_mono():
            return m
    return None


@dataclass
class ClassInfo:
    cid: int
    rep: Representation
    projective: bool

    @property
    def dims(self) -> tuple[int, ...]:
        return self.rep.dims


class ClassRegistry:
    """Append-only list of pairwise non-isomorphic indecomposables."""

    def __init__(self, pres: PresentationBase, seed: int = 0, split_budget: int = DEFAULT_SPLIT_BUDGET):
        self.pres = pres
        self.seed = seed
        self.split_budget = split_budget
        self.classes: list[ClassInfo] = []
        self._by_dims: dict[tuple[int, ...], list[int]] = {}
        # L-graph memo: class -> {non-projective child class: multiplicity}
        self.syz_edges: dict[int, dict[int, int]] = {}
        self.pd_memo: dict = {}

    def __len__(self) -> int:
        return len(self.classes)

    def __getitem__(self, cid: int) -> ClassInfo:
        return self.classes[cid]

    def rep(self, cid: int) -> Representation:
        return self.classes[cid].rep

    def is_projective(self, cid: int) -> bool:
        return self.classes[cid].projective

    def lookup(self, z: Representation) -> tuple[int, Morphism] | None:
        for cid in self._by_dims.get(z.dims, []):
            iso = find_iso_indecomposable(self.classes[cid].rep, z)
            if iso is not None:
                return cid, iso
        return None

    def classify(self, z: Representation) -> tuple[int, Morphism]:
        """Class id of an indecomposable plus an isomorphism representative -> z."""
        if z.pres is not self.pres:
            raise ValueError("module is over a different algebra than the registry")
        hit = self.lookup(z)
        if hit is not None:
            return hit
        cid = len(self.classes)
        self.classes.append(ClassInfo(cid, z, is_projective(z)))
        self._by_dims.setdefault(z.dims, []).append(cid)
        return cid, Morphism(z, z, tuple(z.field.eye(d) for d in z.dims))

    def projective_classes(self) -> list[int]:
        """Register every indecomposable projective and return their ids."""
        return [self.classify(self.pres.projective(v))[0] for v in range(self.pres.n_vertices)]


_DEFAULTS: "weakref.WeakKeyDictionary[PresentationBase, ClassRegistry]" = weakref.WeakKeyDictionary()


_SETTINGS = {"seed": 0, "split_budget": DEFAULT_SPLIT_BUDGET}


def configure_defaults(seed: int | None = None, split_budget: int | None = None) -> None:
    """Seed and split budget for registries created by :func:`default_registry` from now on."""
    if seed is not None:
        _SETTINGS["seed"] = int(seed)
    if split_budget is not None:
        if split_budget < 1:
            raise ValueError("split budget must be positive")
        _SETTINGS["split_budget"] = int(split_budget)


def default_registry(pres: PresentationBase) -> ClassRegistry:
    reg = _DEFAULTS.get(pres)
    if reg is None:
        reg = ClassRegistry(pres, _SETTINGS["seed"], _SETTINGS["split_budget"])
        _DEFAULTS[pres] = reg
    return reg


# -- decomposition -----------------------------------------------------------


@dataclass
class Decomposition:
    source: Representation
    summands: list[tuple[int, int]]
    pieces: list[tuple[int, Morphism]]
    witness: Morphism

    def counter(self) -> Counter:
        return Counter(dict(self.summands))

    def nonprojective(self, reg: ClassRegistry) -> dict[int, int]:
        return {c: m for c, m in self.summands if not reg.is_projective(c)}

    def has_projective_summand(self, reg: ClassRegistry) -> bool:
        return any(reg.is_projective(c) for c, _ in self.summands)


def coordinate_blocks(x: Representation) -> list[list[np.ndarray]] | None:
    """Spans of a splitting visible in the given basis, or None.

    Basis vectors are linked when some arrow matrix has a nonzero entry
    between them; each connected component spans a direct summand.
    """
    n = x.pres.n_vertices
    offs = np.concatenate([[0], np.cumsum(x.dims)]).astype(int)
    total = int(offs[-1])
    if total < 2:
        return None
    parent = list(range(total))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    pres = x.pres
    for a in range(pres.n_arrows):
        m = x.maps[a]
        if not m.size:
            continue
        s, t = pres.arrow_src[a], pres.arrow_tgt[a]
        for r, c in zip(*np.nonzero(m)):
            ra, rb = find(offs[t] + int(r)), find(offs[s] + int(c))
            if ra != rb:
                parent[ra] = rb
    roots = {}
    for i in range(total):
        roots.setdefault(find(i), []).append(i)
    if len(roots) < 2:
        return None
    out = []
    for members in roots.values():
        spans = []
        for v in range(n):
            idx = [i - offs[v] for i in members if offs[v] <= i < offs[v + 1]]
            e = np.zeros((x.dims[v], len(idx)), dtype=np.int64)
            for k, i in enumerate(idx):
                e[i, k] = 1
            spans.append(e)
        out.append(spans)
    return out


def decompose(
    x: Representation,
    reg: ClassRegistry | None = None,
    rng_seed: int | None = None,
    budget: int | None = None,
) -> Decomposition:
    """Krull–Schmidt decomposition with an explicit isomorphism witness."""
    reg = default_registry(x.pres) if reg is None else reg
    if x.pres is not reg.pres:
        raise ValueError("module is over a different algebra than the registry")
    # keyed by id, so the registry is stored too: ids of dead registries get reused
    key = ("decomp", id(reg))
    hit = x._cache.get(key)
    if hit is not None and hit[0] is reg:
        return hit[1]
    f = x.field
    rng = np.random.default_rng(reg.seed if rng_seed is None else rng_seed)
    budget = budget or reg.split_budget
    n = x.pres.n_vertices
    stack = [(x, tuple(f.eye(d) for d in x.dims))]
    leaves = []
    while stack:
        z, emb = stack.pop()
        if z.total_dim == 0:
            continue
        blocks = coordinate_blocks(z)
        if blocks is not None:
            for spans in blocks:
                sub, inc = submodule(z, spans)
                stack.append((sub, tuple(f.mul(e, i) for e, i in zip(emb, inc.mats))))
            continue
        if reg.lookup(z) is not None:
            leaves.append((z, emb))
            continue
        out = split_once(z, rng, budget)
        if not out.split:
            leaves.append((z, emb))
            continue
        kers, ims = out.parts
        for spans in (ims, kers):
            sub, inc = submodule(z, spans)
            stack.append((sub, tuple(f.mul(e, i) for e, i in zip(emb, inc.mats))))
    pieces = []
    for z, emb in leaves:
        cid, iso = reg.classify(z)
        pieces.append((cid, Morphism(reg.rep(cid), x, tuple(f.mul(e, i) for e, i in zip(emb, iso.mats)))))
    pieces.sort(key=lambda t: t[0])
    counts = Counter(c for c, _ in pieces)
    summands = sorted(counts.items())
    from .repcat import direct_sum

    src = direct_sum([reg.rep(c) for c, _ in pieces], x.pres)
    mats = []
    for v in range(n):
        cols = [m.mats[v] for _, m in pieces]
        mats.append(np.concatenate(cols, axis=1) if cols else np.zeros((x.dims[v], 0), dtype=np.int64))
    witness = Morphism(src, x, tuple(mats))
    dec = Decomposition(x, summands, pieces, witness)
    x._cache[key] = (reg, dec)
    return dec


@dataclass
class IsoResult:
    isomorphic: bool
    witness: Morphism | None
    reason: str

    def __bool__(self) -> bool:
        return self.isomorphic


def iso_test(x: Representation, y: Representation, reg: ClassRegistry | None = None, rng_seed: int | None = None) -> IsoResult:
    if x.pres is not y.pres:
        raise ValueError("modules over different algebras")
    if x.dims != y.dims:
        return IsoResult(False, None, f"dimension vectors differ: {x.dims} vs {y.dims}")
    reg = default_registry(x.pres) if reg is None else reg
    dx = decompose(x, reg, rng_seed)
    dy = decompose(y, reg, rng_seed)
    if dx.summands != dy.summands:
        return IsoResult(False, None, f"summand multisets differ: {dx.summands} vs {dy.summands}")
    f = x.field
    inv = dx.witness.inverse()
    mats = tuple(f.mul(wy, ix) for wy, ix in zip(dy.witness.mats, inv.mats))
    return IsoResult(True, Morphism(x, y, mats), "matching decompositions")


def is_indecomposable(x: Representation, reg: ClassRegistry | None = None) -> bool:
    if x.total_dim == 0:
        return False
    return sum(m for _, m in decompose(x, reg).summands) == 1
