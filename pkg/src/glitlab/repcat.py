"""Finite-dimensional representations of a quiver with relations.

Everything here is generic over a *presentation*: an object exposing a
quiver (vertices and arrows), a prime field, the relations a representation
must satisfy, and the indecomposable projectives together with a word (path)
for every basis vector.  Bound quiver algebras and Morita rings both provide
this, so covers, syzygies and hom-spaces are shared by the two categories.

Conventions: a path ``u*v`` means "u, then v" and a representation assigns
``phi_{u*v} = phi_v . phi_u``.  The projective at ``v`` is spanned by the
paths starting at ``v``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .exactlin import FieldSpec, block_diag


class RelationViolation(ValueError):
    pass


class AlgebraMismatch(ValueError):
    pass


Word = tuple[int, ...]


class PresentationBase:
    """Quiver bookkeeping shared by every presentation.

    Subclasses call :meth:`_init_quiver` and implement
    :meth:`validation_relations` and :meth:`projective_spec`.
    """

    field: FieldSpec

    def _init_quiver(self, vertices: Sequence[str], arrows: Sequence[tuple[str, str, str]]) -> None:
        self.vertex_names: tuple[str, ...] = tuple(vertices)
        self.vertex_ids = {v: i for i, v in enumerate(self.vertex_names)}
        if len(self.vertex_ids) != len(self.vertex_names):
            raise ValueError("duplicate vertex id")
        self.arrow_names: tuple[str, ...] = tuple(a for a, _, _ in arrows)
        self.arrow_ids = {a: i for i, a in enumerate(self.arrow_names)}
        if len(self.arrow_ids) != len(self.arrow_names):
            raise ValueError("duplicate arrow id")
        try:
            self.arrow_src = tuple(self.vertex_ids[s] for _, s, _ in arrows)
            self.arrow_tgt = tuple(self.vertex_ids[t] for _, _, t in arrows)
        except KeyError as exc:
            raise ValueError(f"arrow references unknown vertex {exc.args[0]!r}") from None
        self.in_arrows = [[] for _ in self.vertex_names]
        self.out_arrows = [[] for _ in self.vertex_names]
        for a, (s, t) in enumerate(zip(self.arrow_src, self.arrow_tgt)):
            self.out_arrows[s].append(a)
            self.in_arrows[t].append(a)
        self._projectives: dict[int, tuple[Representation, list[list[Word]]]] = {}

    @property
    def n_vertices(self) -> int:
        return len(self.vertex_names)

    @property
    def n_arrows(self) -> int:
        return len(self.arrow_names)

    def vertex(self, v: int | str) -> int:
        if isinstance(v, (int, np.integer)):
            if not 0 <= v < self.n_vertices:
                raise KeyError(f"unknown vertex index {v}")
            return int(v)
        try:
            return self.vertex_ids[v]
        except KeyError:
            raise KeyError(f"unknown vertex {v!r}") from None

    def word_target(self, start: int, word: Word) -> int:
        v = start
        for a in word:
            if self.arrow_src[a] != v:
                raise ValueError("word is not a path")
            v = self.arrow_tgt[a]
        return v

    # -- to be provided by subclasses ------------------------------------

    def validation_relations(self) -> list[tuple[int, list[tuple[int, Word]]]]:
        """Relations as ``(start vertex, [(coeff, word), ...])``."""
        raise NotImplementedError

    def projective_spec(self, v: int) -> tuple[list[int], dict[int, np.ndarray], list[list[Word]]]:
        """Dims, arrow maps, and per-vertex basis words of the projective at v."""
        raise NotImplementedError

    # -- shared ----------------------------------------------------------

    def projective(self, v: int | str) -> Representation:
        return self._projective_entry(self.vertex(v))[0]

    def projective_words(self, v: int) -> list[list[Word]]:
        return self._projective_entry(v)[1]

    def _projective_entry(self, v: int):
        if v not in self._projectives:
            dims, maps, words = self.projective_spec(v)
            rep = Representation(self, dims, maps)
            self._projectives[v] = (rep, words)
        return self._projectives[v]

    def regular_module(self) -> Representation:
        return direct_sum([self.projective(v) for v in range(self.n_vertices)])

    def zero_module(self) -> Representation:
        return Representation(self, [0] * self.n_vertices, {})


class Representation:
    """Dimension vector plus one matrix ``dims[tgt] x dims[src]`` per arrow."""

    __slots__ = ("pres", "dims", "maps", "_cache", "__weakref__")

    def __init__(self, pres: PresentationBase, dims: Sequence[int], maps: dict | Sequence | None = None):
        self.pres = pres
        self.dims = tuple(int(d) for d in dims)
        if len(self.dims) != pres.n_vertices:
            raise ValueError("dimension vector has the wrong length")
        p = pres.field.p
        out = []
        maps = maps or {}
        for a in range(pres.n_arrows):
            shape = (self.dims[pres.arrow_tgt[a]], self.dims[pres.arrow_src[a]])
            m = maps.get(a) if isinstance(maps, dict) else maps[a]
            if m is None:
                m = np.zeros(shape, dtype=np.int64)
            else:
                m = np.asarray(m, dtype=np.int64).reshape(shape) % p
            out.append(m)
        self.maps = tuple(out)
        self._cache: dict = {}

    @classmethod
    def from_named(cls, pres: PresentationBase, dims: dict[str, int] | Sequence[int], maps: dict[str, object]):
        if isinstance(dims, dict):
            dv = [0] * pres.n_vertices
            for k, d in dims.items():
                dv[pres.vertex(k)] = d
        else:
            dv = list(dims)
        idx = {}
        for name, m in maps.items():
            if name not in pres.arrow_ids:
                raise KeyError(f"unknown arrow {name!r}")
            a = pres.arrow_ids[name]
            shape = (dv[pres.arrow_tgt[a]], dv[pres.arrow_src[a]])
            arr = np.array(m, dtype=np.int64)
            if arr.size != shape[0] * shape[1]:
                raise ValueError(f"map {name} should be {shape[0]}x{shape[1]}")
            idx[a] = arr.reshape(shape)
        return cls(pres, dv, idx)

    @property
    def field(self) -> FieldSpec:
        return self.pres.field

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def arrow_map(self, name: str) -> np.ndarray:
        return self.maps[self.pres.arrow_ids[name]]

    def dim_vector(self) -> dict[str, int]:
        return dict(zip(self.pres.vertex_names, self.dims))

    def __repr__(self) -> str:
        return f"Representation(dims={self.dims})"

    def same_data(self, other: Representation) -> bool:
        return (
            self.pres is other.pres
            and self.dims == other.dims
            and all(np.array_equal(a, b) for a, b in zip(self.maps, other.maps))
        )


def _check_same(x: Representation, y: Representation) -> None:
    if x.pres is not y.pres:
        raise AlgebraMismatch("representations live over different algebras")


@dataclass
class Morphism:
    source: Representation
    target: Representation
    mats: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        self.mats = tuple(np.asarray(m, dtype=np.int64) % self.source.field.p for m in self.mats)

    @property
    def field(self) -> FieldSpec:
        return self.source.field

    def is_intertwining(self) -> bool:
        pres, f = self.source.pres, self.field
        for a in range(pres.n_arrows):
            s, t = pres.arrow_src[a], pres.arrow_tgt[a]
            lhs = f.mul(self.target.maps[a], self.mats[s])
            rhs = f.mul(self.mats[t], self.source.maps[a])
            if not np.array_equal(lhs, rhs):
                return False
        return True

    def then(self, other: Morphism) -> Morphism:
        """``other . self``."""
        f = self.field
        return Morphism(self.source, other.target, tuple(f.mul(b, a) for a, b in zip(self.mats, other.mats)))

    def is_mono(self) -> bool:
        f = self.field
        return all(f.rank(m) == m.shape[1] for m in self.mats)

    def is_epi(self) -> bool:
        f = self.field
        return all(f.rank(m) == m.shape[0] for m in self.mats)

    def is_iso(self) -> bool:
        return self.source.dims == self.target.dims and self.is_mono()

    def is_zero(self) -> bool:
        return all(not np.any(m) for m in self.mats)

    def inverse(self) -> Morphism:
        f = self.field
        inv = []
        for m in self.mats:
            mi = f.inverse(m)
            if mi is None:
                raise ValueError("morphism is not invertible")
            inv.append(mi)
        return Morphism(self.target, self.source, tuple(inv))


def identity(x: Representation) -> Morphism:
    return Morphism(x, x, tuple(x.field.eye(d) for d in x.dims))


def zero_morphism(x: Representation, y: Representation) -> Morphism:
    return Morphism(x, y, tuple(np.zeros((e, d), dtype=np.int64) for d, e in zip(x.dims, y.dims)))


def combine(morphs: Sequence[Morphism], coeffs: Sequence[int]) -> Morphism:
    f = morphs[0].field
    mats = []
    for v in range(len(morphs[0].mats)):
        acc = np.zeros_like(morphs[0].mats[v])
        for c, m in zip(coeffs, morphs):
            acc = (acc + int(c) * m.mats[v]) % f.p
        mats.append(acc)
    return Morphism(morphs[0].source, morphs[0].target, tuple(mats))


# -- words -------------------------------------------------------------


def word_matrix(x: Representation, start: int, word: Word) -> np.ndarray:
    f = x.field
    m = f.eye(x.dims[start])
    for a in word:
        m = f.mul(x.maps[a], m)
    return m


def eval_tensors(x: Representation, v: int) -> list[np.ndarray]:
    """For each vertex u, an array ``(n_b, dims[u], dims[v])`` of word maps.

    Entry ``b`` is the action on ``x`` of the word of the ``b``-th basis
    vector of the projective at ``v`` lying over ``u``.
    """
    key = ("eval", v)
    if key in x._cache:
        return x._cache[key]
    pres, f = x.pres, x.field
    words = pres.projective_words(v)
    memo: dict[Word, np.ndarray] = {(): f.eye(x.dims[v])}

    def get(w: Word) -> np.ndarray:
        if w not in memo:
            memo[w] = f.mul(x.maps[w[-1]], get(w[:-1]))
        return memo[w]

    out = []
    for u, ws in enumerate(words):
        if ws:
            out.append(np.stack([get(w) for w in ws]))
        else:
            out.append(np.zeros((0, x.dims[u], x.dims[v]), dtype=np.int64))
    x._cache[key] = out
    return out


def validate(x: Representation) -> None:
    """Raise RelationViolation unless every relation acts as zero."""
    f = x.field
    pres = x.pres
    for a in range(pres.n_arrows):
        m = x.maps[a]
        if m.shape != (x.dims[pres.arrow_tgt[a]], x.dims[pres.arrow_src[a]]):
            raise ValueError(f"map {pres.arrow_names[a]} has the wrong shape")
    for start, terms in pres.validation_relations():
        if x.dims[start] == 0:
            continue
        acc = None
        for c, w in terms:
            m = word_matrix(x, start, w)
            acc = (int(c) * m) % f.p if acc is None else (acc + int(c) * m) % f.p
        if acc is not None and np.any(acc):
            text = " + ".join(f"{c}*{'*'.join(pres.arrow_names[a] for a in w)}" for c, w in terms)
            raise RelationViolation(f"relation {text} does not act as zero")


# -- constructions -----------------------------------------------------


def direct_sum(xs: Sequence[Representation], pres: PresentationBase | None = None) -> Representation:
    xs = list(xs)
    if not xs:
        if pres is None:
            raise ValueError("empty direct sum needs the algebra")
        return pres.zero_module()
    p0 = xs[0].pres
    for x in xs[1:]:
        _check_same(xs[0], x)
    if len(xs) == 1:
        return xs[0]
    dims = [sum(x.dims[v] for x in xs) for v in range(p0.n_vertices)]
    maps = {a: block_diag([x.maps[a] for x in xs]) for a in range(p0.n_arrows)}
    return Representation(p0, dims, maps)


def sum_inclusions(xs: Sequence[Representation], total: Representation) -> list[Morphism]:
    out = []
    offs = [0] * total.pres.n_vertices
    for x in xs:
        mats = []
        for v in range(total.pres.n_vertices):
            m = np.zeros((total.dims[v], x.dims[v]), dtype=np.int64)
            m[offs[v] : offs[v] + x.dims[v], :] = np.eye(x.dims[v], dtype=np.int64)
            offs[v] += x.dims[v]
            mats.append(m)
        out.append(Morphism(x, total, tuple(mats)))
    return out


def sum_projections(xs: Sequence[Representation], total: Representation) -> list[Morphism]:
    return [Morphism(total, i.source, tuple(m.T.copy() for m in i.mats)) for i in sum_inclusions(xs, total)]


def sum_of_morphisms(ms: Sequence[Morphism], source: Representation, target: Representation) -> Morphism:
    """Block-diagonal morphism ``⊕ source_i -> ⊕ target_i``."""
    n = source.pres.n_vertices
    return Morphism(source, target, tuple(block_diag([m.mats[v] for m in ms]) for v in range(n)))


def _echelon(f: FieldSpec, b: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Column basis of colspace(b) with an identity block at the returned rows."""
    if b.shape[1] == 0 or not np.any(b):
        return np.zeros((b.shape[0], 0), dtype=np.int64), []
    red, piv = f.rref(b.T)
    return red.T.copy(), piv


def submodule(x: Representation, spans: Sequence[np.ndarray]) -> tuple[Representation, Morphism]:
    """Subrepresentation spanned per vertex by the columns of ``spans``.

    The spans must already be closed under the arrow maps.
    """
    f = x.field
    pres = x.pres
    bases, pivs = [], []
    for v in range(pres.n_vertices):
        b = np.asarray(spans[v], dtype=np.int64)
        if b.ndim != 2 or b.shape[0] != x.dims[v]:
            b = b.reshape(x.dims[v], -1) if b.size else np.zeros((x.dims[v], 0), dtype=np.int64)
        e, piv = _echelon(f, b)
        bases.append(e)
        pivs.append(piv)
    maps = {}
    for a in range(pres.n_arrows):
        s, t = pres.arrow_src[a], pres.arrow_tgt[a]
        img = f.mul(x.maps[a], bases[s])
        coords = img[pivs[t], :] if pivs[t] else np.zeros((0, bases[s].shape[1]), dtype=np.int64)
        if not np.array_equal(f.mul(bases[t], coords), img):
            raise ValueError("spans are not closed under the arrow action")
        maps[a] = coords
    sub = Representation(pres, [b.shape[1] for b in bases], maps)
    return sub, Morphism(sub, x, tuple(bases))


def kernel(m: Morphism) -> tuple[Representation, Morphism]:
    f = m.field
    return submodule(m.source, [f.nullspace(mat) for mat in m.mats])


def image(m: Morphism) -> tuple[Representation, Morphism]:
    f = m.field
    return submodule(m.target, [f.column_basis(mat) for mat in m.mats])


def generated_submodule(x: Representation, elements: Sequence[tuple[int, np.ndarray]]) -> tuple[Representation, Morphism]:
    """Submodule generated by ``(vertex, vector)`` pairs."""
    f, pres = x.field, x.pres
    spans = [np.zeros((x.dims[v], 0), dtype=np.int64) for v in range(pres.n_vertices)]
    todo = [(v, np.asarray(vec, dtype=np.int64).reshape(-1, 1) % f.p) for v, vec in elements]
    while todo:
        v, col = todo.pop()
        if not np.any(col):
            continue
        cur = spans[v]
        if cur.shape[1] and f.in_span(cur, col[:, 0]):
            continue
        spans[v] = np.concatenate([cur, col], axis=1)
        for a in pres.out_arrows[v]:
            todo.append((pres.arrow_tgt[a], f.mul(x.maps[a], col)))
    return submodule(x, spans)


def quotient(x: Representation, spans: Sequence[np.ndarray]) -> tuple[Representation, Morphism]:
    """``x`` modulo a subrepresentation given by closed spans."""
    f, pres = x.field, x.pres
    projs, sects = [], []
    for v in range(pres.n_vertices):
        b = np.asarray(spans[v], dtype=np.int64)
        if b.ndim != 2 or b.shape[0] != x.dims[v]:
            b = b.reshape(x.dims[v], -1) if b.size else np.zeros((x.dims[v], 0), dtype=np.int64)
        proj, keep = f.quotient_projection(b)
        sect = np.zeros((x.dims[v], len(keep)), dtype=np.int64)
        for q, k in enumerate(keep):
            sect[k, q] = 1
        projs.append(proj)
        sects.append(sect)
    maps = {a: f.chain(projs[pres.arrow_tgt[a]], x.maps[a], sects[pres.arrow_src[a]]) for a in range(pres.n_arrows)}
    q = Representation(pres, [p.shape[0] for p in projs], maps)
    return q, Morphism(x, q, tuple(projs))


def cokernel(m: Morphism) -> tuple[Representation, Morphism]:
    f = m.field
    return quotient(m.target, [f.column_basis(mat) for mat in m.mats])


def map_from_projective(x: Representation, v: int, elem: np.ndarray) -> list[np.ndarray]:
    """Vertex matrices of the map ``P_v -> x`` sending e_v to ``elem``."""
    elem = np.asarray(elem, dtype=np.int64).reshape(-1)
    out = []
    for w, wt in enumerate(eval_tensors(x, v)):
        if wt.shape[0] == 0 or x.dims[w] == 0 or x.dims[v] == 0:
            out.append(np.zeros((x.dims[w], wt.shape[0]), dtype=np.int64))
        else:
            out.append((np.tensordot(wt, elem, axes=(2, 0)) % x.field.p).T.copy())
    return out


def factor_through_mono(mono: Morphism, m: Morphism) -> Morphism:
    """The unique h with ``h then mono = m``; raises if m leaves the image."""
    f = m.field
    mats = []
    for a, b in zip(mono.mats, m.mats):
        if b.shape[1] == 0 or a.shape[1] == 0:
            mats.append(np.zeros((a.shape[1], b.shape[1]), dtype=np.int64))
            if a.shape[1] == 0 and np.any(b):
                raise ValueError("morphism does not factor through the monomorphism")
            continue
        h = f.solve_many(a, b)
        if h is None:
            raise ValueError("morphism does not factor through the monomorphism")
        mats.append(h)
    return Morphism(m.source, mono.source, tuple(mats))


def lift_through_epi(cover: SyzygyResult, epi: Morphism) -> Morphism:
    """Lift ``cover.cover_map`` along an epimorphism onto its target."""
    y = epi.source
    f = y.field
    pres = y.pres
    pieces = []
    for v, c in cover.generators:
        z = np.zeros(epi.target.dims[v], dtype=np.int64)
        z[c] = 1
        pre = f.solve(epi.mats[v], z)
        if pre is None:
            raise ValueError("map is not surjective")
        pieces.append(map_from_projective(y, v, pre))
    mats = []
    for w in range(pres.n_vertices):
        cols = [pc[w] for pc in pieces]
        mats.append(np.concatenate(cols, axis=1) if cols else np.zeros((y.dims[w], 0), dtype=np.int64))
    return Morphism(cover.cover, y, tuple(mats))


def radical(x: Representation) -> tuple[Representation, Morphism]:
    pres = x.pres
    spans = []
    for v in range(pres.n_vertices):
        ins = [x.maps[a] for a in pres.in_arrows[v]]
        spans.append(np.concatenate(ins, axis=1) if ins else np.zeros((x.dims[v], 0), dtype=np.int64))
    return submodule(x, spans)


def top_generators(x: Representation) -> list[tuple[int, int]]:
    """``(vertex, unit index)`` pairs spanning a complement of the radical.

    Chosen greedily in pivot order, so the choice is deterministic.
    """
    if "topgen" in x._cache:
        return x._cache["topgen"]
    f, pres = x.field, x.pres
    gens = []
    for v in range(pres.n_vertices):
        ins = [x.maps[a] for a in pres.in_arrows[v]]
        rad = np.concatenate(ins, axis=1) if ins else np.zeros((x.dims[v], 0), dtype=np.int64)
        gens.extend((v, c) for c in f.complement_units(rad))
    x._cache["topgen"] = gens
    return gens


def top_dims(x: Representation) -> tuple[int, ...]:
    out = [0] * x.pres.n_vertices
    for v, _ in top_generators(x):
        out[v] += 1
    return tuple(out)


@dataclass
class SyzygyResult:
    cover: Representation
    cover_map: Morphism
    inclusion: Morphism
    syzygy: Representation
    generators: list[tuple[int, int]] = field(default_factory=list)
    kernel_free: list[list[int]] = field(default_factory=list)


def projective_cover(x: Representation) -> SyzygyResult:
    """Minimal projective cover via top generators; kernel is the syzygy."""
    if "cover" in x._cache:
        return x._cache["cover"]
    f, pres = x.field, x.pres
    gens = top_generators(x)
    pieces = [pres.projective(v) for v, _ in gens]
    cover = direct_sum(pieces, pres)
    pis = []
    for w in range(pres.n_vertices):
        cols = []
        for v, c in gens:
            wt = eval_tensors(x, v)[w]
            cols.append(wt[:, :, c].T)
        pis.append(np.concatenate(cols, axis=1) if cols else np.zeros((x.dims[w], 0), dtype=np.int64))
    cover_map = Morphism(cover, x, tuple(pis))
    kers, frees = [], []
    for w in range(pres.n_vertices):
        # kernel bases carry an identity block at the free columns
        k, free = f.nullspace_free(pis[w])
        kers.append(k)
        frees.append(free)
    maps = {}
    for a in range(pres.n_arrows):
        s, t = pres.arrow_src[a], pres.arrow_tgt[a]
        img = f.mul(cover.maps[a], kers[s])
        maps[a] = img[frees[t], :] if frees[t] else np.zeros((0, kers[s].shape[1]), dtype=np.int64)
    syz = Representation(pres, [k.shape[1] for k in kers], maps)
    res = SyzygyResult(cover, cover_map, Morphism(syz, cover, tuple(kers)), syz, gens, frees)
    x._cache["cover"] = res
    return res


def syzygy(x: Representation) -> Representation:
    return projective_cover(x).syzygy


def syzygy_power(x: Representation, k: int) -> Representation:
    if k < 0:
        raise ValueError("syzygy power must be non-negative")
    for _ in range(k):
        x = syzygy(x)
    return x


def resolution(x: Representation, k: int) -> list[SyzygyResult]:
    """The first ``k`` steps of the minimal projective resolution."""
    out = []
    for _ in range(k):
        r = projective_cover(x)
        out.append(r)
        x = r.syzygy
    return out


def is_projective(x: Representation) -> bool:
    return projective_cover(x).cover.total_dim == x.total_dim


def hom_space(x: Representation, y: Representation) -> list[Morphism]:
    """Basis of Hom(x, y), solved through a projective presentation of x."""
    _check_same(x, y)
    f, pres = x.field, x.pres
    if x.total_dim == 0 or y.total_dim == 0:
        return []
    cov = projective_cover(x)
    gens = cov.generators
    offsets, n_unk = [], 0
    for v, _ in gens:
        offsets.append(n_unk)
        n_unk += y.dims[v]
    if n_unk == 0:
        return []
    gen_tensors = {v: eval_tensors(y, v) for v, _ in gens}
    # per generator, the basis rows it owns in cover_w
    slices = []
    for w in range(pres.n_vertices):
        sl, start = [], 0
        for v, _ in gens:
            nb = len(pres.projective_words(v)[w])
            sl.append(slice(start, start + nb))
            start += nb
        slices.append(sl)
    blocks = []
    for w in range(pres.n_vertices):
        ker = cov.inclusion.mats[w]
        if ker.shape[1] == 0 or y.dims[w] == 0:
            continue
        row = np.zeros((ker.shape[1] * y.dims[w], n_unk), dtype=np.int64)
        for k, (v, _) in enumerate(gens):
            wt = gen_tensors[v][w]
            if wt.shape[0] == 0 or y.dims[v] == 0:
                continue
            kappa = ker[slices[w][k], :]
            coef = np.tensordot(kappa, wt, axes=(0, 0)) % f.p
            row[:, offsets[k] : offsets[k] + y.dims[v]] = coef.reshape(-1, y.dims[v])
        blocks.append(row)
    if blocks:
        sol = f.nullspace(np.concatenate(blocks, axis=0))
    else:
        sol = f.eye(n_unk)
    if sol.shape[1] == 0:
        return []
    sections = []
    for w in range(pres.n_vertices):
        if x.dims[w] == 0:
            sections.append(np.zeros((cov.cover.dims[w], 0), dtype=np.int64))
            continue
        s = f.solve_many(cov.cover_map.mats[w], f.eye(x.dims[w]))
        sections.append(s)
    per_w = []
    for w in range(pres.n_vertices):
        acc = np.zeros((sol.shape[1], y.dims[w], x.dims[w]), dtype=np.int64)
        if x.dims[w] and y.dims[w]:
            for k, (v, _) in enumerate(gens):
                wt = gen_tensors[v][w]
                if wt.shape[0] == 0 or y.dims[v] == 0:
                    continue
                yk = sol[offsets[k] : offsets[k] + y.dims[v], :]
                imgs = np.tensordot(wt, yk, axes=(2, 0)).transpose(2, 0, 1) % f.p
                sk = sections[w][slices[w][k], :]
                acc = (acc + np.tensordot(imgs, sk, axes=(1, 0))) % f.p
        per_w.append(acc)
    return [Morphism(x, y, tuple(per_w[w][h] for w in range(pres.n_vertices))) for h in range(sol.shape[1])]


def hom_dim(x: Representation, y: Representation) -> int:
    return len(hom_space(x, y))


def dim_table(xs: Iterable[Representation]) -> list[tuple[int, ...]]:
    return [x.dims for x in xs]
