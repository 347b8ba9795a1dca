"""Morita rings with zero pairings and their modules as 4-tuples.

Modules throughout are right modules (representations, see repcat), so the
functor ``M ⊗_T -`` of left-module language appears here as ``- ⊗_T M``
with ``M`` a T-U-bimodule carrying right T-modules to right U-modules, and
``N`` a U-T-bimodule going back.  A tuple ``(A, B, f, g)`` has ``A`` over T,
``B`` over U, ``f : A ⊗_T M -> B`` and ``g : B ⊗_U N -> A``.

Tuples are realized as representations of a single presentation, the
*Morita ring*: T's and U's quivers side by side, plus one arrow ``mu_k``
per basis vector of M (from its T-vertex to its U-vertex) and one ``nu_k``
per basis vector of N, with the balancing, compatibility and zero-pairing
relations.  krull and itfun therefore run on tuples unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .algebra import BoundQuiverAlgebra, Quiver, Relation
from .exactlin import FieldSpec
from .repcat import (
    Morphism,
    PresentationBase,
    Representation,
    direct_sum,
    eval_tensors,
    hom_space,
    is_projective,
    kernel,
    projective_cover,
)


class ContextError(ValueError):
    pass


class SyzygyAuditError(RuntimeError):
    pass


def _opposite(alg: BoundQuiverAlgebra) -> BoundQuiverAlgebra:
    op = getattr(alg, "_opposite_cache", None)
    if op is None:
        op = alg.opposite()
        alg._opposite_cache = op
    return op


# -- bimodules ----------------------------------------------------------------


class Bimodule:
    """A left-``left``, right-``right`` bimodule, graded by vertex pairs.

    ``dims[(i, j)]`` is ``dim e_i M e_j``.  For an arrow ``a : s -> t`` of
    the left algebra, ``lact[a]`` is the global matrix of ``m -> a.m``,
    taking block ``(t, j)`` to ``(s, j)``; for ``b : j -> j'`` of the right
    algebra ``ract[b]`` takes ``(i, j)`` to ``(i, j')``.
    """

    def __init__(
        self,
        left: BoundQuiverAlgebra,
        right: BoundQuiverAlgebra,
        dims: dict[tuple[int, int], int],
        lact: dict[int, np.ndarray] | None = None,
        ract: dict[int, np.ndarray] | None = None,
        name: str = "M",
    ):
        if left.field != right.field:
            raise ContextError("bimodule algebras live over different fields")
        self.left, self.right, self.name = left, right, name
        self.field = left.field
        self.dims = {k: int(v) for k, v in sorted(dims.items()) if v}
        self.offsets: dict[tuple[int, int], int] = {}
        pos = 0
        self.basis: list[tuple[int, int, int]] = []
        for (i, j), d in self.dims.items():
            self.offsets[(i, j)] = pos
            self.basis.extend((i, j, l) for l in range(d))
            pos += d
        self.total = pos
        p = self.field.p
        z = np.zeros((pos, pos), dtype=np.int64)
        self.lact = tuple(
            (np.asarray(lact[a], dtype=np.int64) % p if lact and a in lact else z.copy()).reshape(pos, pos)
            for a in range(left.n_arrows)
        )
        self.ract = tuple(
            (np.asarray(ract[b], dtype=np.int64) % p if ract and b in ract else z.copy()).reshape(pos, pos)
            for b in range(right.n_arrows)
        )
        self._word_cache: dict = {}

    # -- indexing -------------------------------------------------------

    def dim(self, i: int, j: int) -> int:
        return self.dims.get((i, j), 0)

    def block(self, i: int, j: int) -> slice:
        o = self.offsets.get((i, j), 0)
        return slice(o, o + self.dim(i, j))

    def index(self, i: int, j: int, l: int) -> int:
        return self.offsets[(i, j)] + l

    def sub(self, mat: np.ndarray, to: tuple[int, int], frm: tuple[int, int]) -> np.ndarray:
        return mat[self.block(*to), self.block(*frm)]

    def left_word(self, word: Sequence[int]) -> np.ndarray:
        """Matrix of ``m -> w.m`` for a path w of the left algebra."""
        key = ("L", tuple(word))
        if key not in self._word_cache:
            m = self.field.eye(self.total)
            for a in reversed(word):
                m = self.field.mul(self.lact[a], m)
            self._word_cache[key] = m
        return self._word_cache[key]

    def right_word(self, word: Sequence[int]) -> np.ndarray:
        key = ("R", tuple(word))
        if key not in self._word_cache:
            m = self.field.eye(self.total)
            for b in word:
                m = self.field.mul(self.ract[b], m)
            self._word_cache[key] = m
        return self._word_cache[key]

    # -- checks -------------------------------------------------------

    def problems(self) -> list[str]:
        f = self.field
        out = []
        for a in range(self.left.n_arrows):
            s, t = self.left.arrow_src[a], self.left.arrow_tgt[a]
            mask = np.zeros((self.total, self.total), dtype=bool)
            for (i, j) in self.dims:
                if i == t and (s, j) in self.dims:
                    mask[self.block(s, j), self.block(t, j)] = True
            if np.any(self.lact[a][~mask]):
                out.append(f"left action of {self.left.arrow_names[a]} is not vertex-graded")
        for b in range(self.right.n_arrows):
            s, t = self.right.arrow_src[b], self.right.arrow_tgt[b]
            mask = np.zeros((self.total, self.total), dtype=bool)
            for (i, j) in self.dims:
                if j == s and (i, t) in self.dims:
                    mask[self.block(i, t), self.block(i, s)] = True
            if np.any(self.ract[b][~mask]):
                out.append(f"right action of {self.right.arrow_names[b]} is not vertex-graded")
        for start, terms in self.left.validation_relations():
            acc = sum(int(c) * self.left_word(w) for c, w in terms) % f.p
            if np.any(acc):
                out.append("a relation of the left algebra acts nontrivially")
                break
        for start, terms in self.right.validation_relations():
            acc = sum(int(c) * self.right_word(w) for c, w in terms) % f.p
            if np.any(acc):
                out.append("a relation of the right algebra acts nontrivially")
                break
        for a in range(self.left.n_arrows):
            for b in range(self.right.n_arrows):
                if not np.array_equal(f.mul(self.lact[a], self.ract[b]), f.mul(self.ract[b], self.lact[a])):
                    out.append(
                        f"actions of {self.left.arrow_names[a]} and {self.right.arrow_names[b]} do not commute"
                    )
        return out

    def validate(self) -> None:
        bad = self.problems()
        if bad:
            raise ContextError("; ".join(bad))

    def right_module_at(self, i: int) -> Representation:
        """``e_i M`` as a right module over the right algebra."""
        R = self.right
        dims = [self.dim(i, j) for j in range(R.n_vertices)]
        maps = {b: self.sub(self.ract[b], (i, R.arrow_tgt[b]), (i, R.arrow_src[b])) for b in range(R.n_arrows)}
        return Representation(R, dims, maps)

    def left_module_at(self, j: int) -> Representation:
        """``M e_j`` as a right module over the opposite of the left algebra."""
        L = self.left
        op = _opposite(L)
        dims = [self.dim(i, j) for i in range(L.n_vertices)]
        maps = {a: self.sub(self.lact[a], (L.arrow_src[a], j), (L.arrow_tgt[a], j)) for a in range(L.n_arrows)}
        return Representation(op, dims, maps)

    def is_zero(self) -> bool:
        return self.total == 0

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, left: BoundQuiverAlgebra, right: BoundQuiverAlgebra, name: str = "M") -> Bimodule:
        return cls(left, right, {}, name=name)

    @classmethod
    def free(cls, left: BoundQuiverAlgebra, right: BoundQuiverAlgebra, i: int, j: int, name: str = "M") -> Bimodule:
        """``left.e_i ⊗ e_j.right``: basis pairs (path into i, path out of j)."""
        lb = {u: left.paths_between(u, i) for u in range(left.n_vertices)}
        rb = {w: right.paths_between(j, w) for w in range(right.n_vertices)}
        dims = {(u, w): len(lb[u]) * len(rb[w]) for u in lb for w in rb}
        tmp = cls(left, right, dims, name=name)
        lpos = {u: {k: n for n, k in enumerate(lb[u])} for u in lb}
        rpos = {w: {k: n for n, k in enumerate(rb[w])} for w in rb}
        D = tmp.total
        lact, ract = {}, {}
        for a in range(left.n_arrows):
            s, t = left.arrow_src[a], left.arrow_tgt[a]
            m = np.zeros((D, D), dtype=np.int64)
            for x, kx in enumerate(lb[t]):
                nf = left.normal_form(s, (a,) + left.basis[kx][1])
                for w in rb:
                    for y in range(len(rb[w])):
                        col = tmp.index(t, w, x * len(rb[w]) + y)
                        for kk, c in enumerate(nf):
                            if c:
                                row = tmp.index(s, w, lpos[s][kk] * len(rb[w]) + y)
                                m[row, col] = c
            lact[a] = m
        for b in range(right.n_arrows):
            s, t = right.arrow_src[b], right.arrow_tgt[b]
            m = np.zeros((D, D), dtype=np.int64)
            for y, ky in enumerate(rb[s]):
                bs, bw = right.basis[ky]
                nf = right.normal_form(bs, bw + (b,))
                for u in lb:
                    for x in range(len(lb[u])):
                        col = tmp.index(u, s, x * len(rb[s]) + y)
                        for kk, c in enumerate(nf):
                            if c:
                                row = tmp.index(u, t, x * len(rb[t]) + rpos[t][kk])
                                m[row, col] = c
            ract[b] = m
        return cls(left, right, dims, lact, ract, name)

    @classmethod
    def regular(cls, alg: BoundQuiverAlgebra, name: str = "M") -> Bimodule:
        """The algebra as a bimodule over itself; block (i, j) = paths i -> j."""
        n = alg.n_vertices
        paths = {(i, j): alg.paths_between(i, j) for i in range(n) for j in range(n)}
        dims = {k: len(v) for k, v in paths.items()}
        tmp = cls(alg, alg, dims, name=name)
        pos = {k: {b: x for x, b in enumerate(v)} for k, v in paths.items()}
        D = tmp.total
        lact, ract = {}, {}
        for a in range(alg.n_arrows):
            s, t = alg.arrow_src[a], alg.arrow_tgt[a]
            lm = np.zeros((D, D), dtype=np.int64)
            rm = np.zeros((D, D), dtype=np.int64)
            for j in range(n):
                for x, k in enumerate(paths[(t, j)]):
                    nf = alg.normal_form(s, (a,) + alg.basis[k][1])
                    for kk, c in enumerate(nf):
                        if c:
                            lm[tmp.index(s, j, pos[(s, j)][kk]), tmp.index(t, j, x)] = c
            for i in range(n):
                for x, k in enumerate(paths[(i, s)]):
                    bs, bw = alg.basis[k]
                    nf = alg.normal_form(bs, bw + (a,))
                    for kk, c in enumerate(nf):
                        if c:
                            rm[tmp.index(i, t, pos[(i, t)][kk]), tmp.index(i, s, x)] = c
            lact[a] = lm
            ract[a] = rm
        return cls(alg, alg, dims, lact, ract, name)

    @classmethod
    def direct_sum(cls, parts: Sequence[Bimodule], name: str | None = None) -> Bimodule:
        if not parts:
            raise ValueError("empty bimodule sum needs algebras; use Bimodule.zero")
        left, right = parts[0].left, parts[0].right
        keys = sorted({k for p in parts for k in p.dims})
        dims = {k: sum(p.dim(*k) for p in parts) for k in keys}
        tmp = cls(left, right, dims)
        # global index of block (k, part, l)
        perm = []
        inner = {k: 0 for k in keys}
        for p in parts:
            idx = []
            for (i, j, l) in p.basis:
                idx.append(tmp.offsets[(i, j)] + inner[(i, j)] + l)
            for k in p.dims:
                inner[k] += p.dims[k]
            perm.append(idx)
        D = tmp.total

        def place(mats):
            out = np.zeros((D, D), dtype=np.int64)
            for idx, m in zip(perm, mats):
                if idx:
                    out[np.ix_(idx, idx)] = m
            return out

        lact = {a: place([p.lact[a] for p in parts]) for a in range(left.n_arrows)}
        ract = {b: place([p.ract[b] for p in parts]) for b in range(right.n_arrows)}
        return cls(left, right, dims, lact, ract, name or parts[0].name)

    def __repr__(self) -> str:
        return f"Bimodule({self.name}, dim={self.total})"


# -- tensor products --------------------------------------------------------


@dataclass
class TensorData:
    rep: Representation
    blocks: list[list[tuple[int, int, int]]]  # per right vertex: (left vertex, offset, size)
    raw_dims: list[int]
    proj: list[np.ndarray]
    sect: list[np.ndarray]


def tensor_data(x: Representation, m: Bimodule) -> TensorData:
    """``x ⊗ m`` over m's left algebra, as a module over its right algebra."""
    if x.pres is not m.left:
        raise ContextError("module and bimodule live over different algebras")
    key = ("tensor", id(m))
    hit = x._cache.get(key)
    if hit is not None and hit[0] is m:
        return hit[1]
    f = x.field
    L, R = m.left, m.right
    blocks, raw_dims, projs, sects = [], [], [], []
    for j in range(R.n_vertices):
        bl, off = [], 0
        for i in range(L.n_vertices):
            sz = x.dims[i] * m.dim(i, j)
            bl.append((i, off, sz))
            off += sz
        blocks.append(bl)
        raw_dims.append(off)
        cols = []
        for a in range(L.n_arrows):
            s, t = L.arrow_src[a], L.arrow_tgt[a]
            n_in = x.dims[s] * m.dim(t, j)
            if n_in == 0:
                continue
            c = np.zeros((off, n_in), dtype=np.int64)
            _, ot, st = bl[t]
            if st:
                c[ot : ot + st, :] = np.kron(x.maps[a], f.eye(m.dim(t, j)))
            _, os_, ss = bl[s]
            if ss:
                la = m.sub(m.lact[a], (s, j), (t, j))
                c[os_ : os_ + ss, :] = (c[os_ : os_ + ss, :] - np.kron(f.eye(x.dims[s]), la)) % f.p
            cols.append(c)
        rel = np.concatenate(cols, axis=1) if cols else np.zeros((off, 0), dtype=np.int64)
        proj, keep = f.quotient_projection(rel)
        sect = np.zeros((off, len(keep)), dtype=np.int64)
        for q, k in enumerate(keep):
            sect[k, q] = 1
        projs.append(proj)
        sects.append(sect)
    maps = {}
    for b in range(R.n_arrows):
        s, t = R.arrow_src[b], R.arrow_tgt[b]
        raw = np.zeros((raw_dims[t], raw_dims[s]), dtype=np.int64)
        for i in range(L.n_vertices):
            _, o_s, sz_s = blocks[s][i]
            _, o_t, sz_t = blocks[t][i]
            if sz_s and sz_t:
                raw[o_t : o_t + sz_t, o_s : o_s + sz_s] = np.kron(f.eye(x.dims[i]), m.sub(m.ract[b], (i, t), (i, s)))
        maps[b] = f.chain(projs[t], raw, sects[s])
    rep = Representation(R, [p.shape[0] for p in projs], maps)
    td = TensorData(rep, blocks, raw_dims, projs, sects)
    x._cache[key] = (m, td)
    return td


def tensor_over(x: Representation, m: Bimodule) -> Representation:
    return tensor_data(x, m).rep


def tensor_morphism(h: Morphism, m: Bimodule) -> Morphism:
    """``h ⊗ 1_m``."""
    f = h.field
    sx, sy = tensor_data(h.source, m), tensor_data(h.target, m)
    mats = []
    for j in range(m.right.n_vertices):
        raw = np.zeros((sy.raw_dims[j], sx.raw_dims[j]), dtype=np.int64)
        for i in range(m.left.n_vertices):
            _, ox, zx = sx.blocks[j][i]
            _, oy, zy = sy.blocks[j][i]
            if zx and zy:
                raw[oy : oy + zy, ox : ox + zx] = np.kron(h.mats[i], f.eye(m.dim(i, j)))
        mats.append(f.chain(sy.proj[j], raw, sx.sect[j]))
    return Morphism(sx.rep, sy.rep, tuple(mats))


def tensor_bimodules(m: Bimodule, n: Bimodule) -> int:
    """Total dimension of ``m ⊗ n`` over the middle algebra."""
    return sum(tensor_over(m.right_module_at(i), n).total_dim for i in range(m.left.n_vertices))


# -- contexts and the Morita ring ------------------------------------------


class MoritaContext:
    """``(T, U, M, N)`` with zero pairings; M is T-U, N is U-T."""

    def __init__(self, T: BoundQuiverAlgebra, U: BoundQuiverAlgebra, M: Bimodule | None = None, N: Bimodule | None = None, name: str = ""):
        if T.field != U.field:
            raise ContextError("T and U live over different fields")
        self.T, self.U = T, U
        self.M = M if M is not None else Bimodule.zero(T, U, "M")
        self.N = N if N is not None else Bimodule.zero(U, T, "N")
        if self.M.left is not T or self.M.right is not U:
            raise ContextError("M must be a T-U-bimodule")
        if self.N.left is not U or self.N.right is not T:
            raise ContextError("N must be a U-T-bimodule")
        self.name = name
        self.field = T.field
        self._ring: MoritaRing | None = None

    @property
    def ring(self) -> MoritaRing:
        if self._ring is None:
            self._ring = MoritaRing(self)
        return self._ring

    @property
    def triangular(self) -> bool:
        return self.N.is_zero()


@dataclass
class ContextReport:
    checks: dict[str, bool]
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def validate_context(c: MoritaContext) -> ContextReport:
    checks, notes = {}, []
    for bm in (c.M, c.N):
        bad = bm.problems()
        checks[f"{bm.name} is a bimodule"] = not bad
        notes.extend(bad)
    for bm in (c.M, c.N):
        checks[f"{bm.name} projective on the left"] = all(
            is_projective(bm.left_module_at(j)) for j in range(bm.right.n_vertices)
        )
        checks[f"{bm.name} projective on the right"] = all(
            is_projective(bm.right_module_at(i)) for i in range(bm.left.n_vertices)
        )
    if checks["M is a bimodule"] and checks["N is a bimodule"]:
        checks["M⊗N = 0"] = c.M.is_zero() or c.N.is_zero() or tensor_bimodules(c.M, c.N) == 0
        checks["N⊗M = 0"] = c.M.is_zero() or c.N.is_zero() or tensor_bimodules(c.N, c.M) == 0
    else:
        checks["M⊗N = 0"] = checks["N⊗M = 0"] = False
    return ContextReport(checks, notes)


def require_valid(c: MoritaContext) -> None:
    rep = validate_context(c)
    if not rep.ok:
        failed = [k for k, v in rep.checks.items() if not v]
        raise ContextError("context fails: " + ", ".join(failed))


class MoritaRing(PresentationBase):
    """Presentation whose representations are the tuples of a context."""

    def __init__(self, ctx: MoritaContext):
        self.ctx = ctx
        T, U, M, N = ctx.T, ctx.U, ctx.M, ctx.N
        self.field = ctx.field
        self.nT, self.nU = T.n_vertices, U.n_vertices
        self.aT, self.aU = T.n_arrows, U.n_arrows
        verts = [f"T:{v}" for v in T.vertex_names] + [f"U:{v}" for v in U.vertex_names]
        arrows = [(f"T:{a}", f"T:{T.vertex_names[s]}", f"T:{T.vertex_names[t]}") for a, s, t in zip(T.arrow_names, T.arrow_src, T.arrow_tgt)]
        arrows += [(f"U:{b}", f"U:{U.vertex_names[s]}", f"U:{U.vertex_names[t]}") for b, s, t in zip(U.arrow_names, U.arrow_src, U.arrow_tgt)]
        arrows += [(f"mu{k}", f"T:{T.vertex_names[i]}", f"U:{U.vertex_names[j]}") for k, (i, j, _) in enumerate(M.basis)]
        arrows += [(f"nu{k}", f"U:{U.vertex_names[j]}", f"T:{T.vertex_names[i]}") for k, (j, i, _) in enumerate(N.basis)]
        self._init_quiver(verts, arrows)
        self.mu0 = self.aT + self.aU
        self.nu0 = self.mu0 + M.total
        self._rels = None

    # index helpers
    def tv(self, i: int) -> int:
        return i

    def uv(self, j: int) -> int:
        return self.nT + j

    def ta(self, a: int) -> int:
        return a

    def ua(self, b: int) -> int:
        return self.aT + b

    def mu(self, k: int) -> int:
        return self.mu0 + k

    def nu(self, k: int) -> int:
        return self.nu0 + k

    def validation_relations(self):
        if self._rels is not None:
            return self._rels
        ctx = self.ctx
        T, U, M, N = ctx.T, ctx.U, ctx.M, ctx.N
        out = []
        for s, terms in T.validation_relations():
            out.append((self.tv(s), [(c, tuple(self.ta(a) for a in w)) for c, w in terms]))
        for s, terms in U.validation_relations():
            out.append((self.uv(s), [(c, tuple(self.ua(b) for b in w)) for c, w in terms]))
        p = self.field.p
        for bm, nat, nar, lv, ri, lo, ra in (
            (M, T, U, self.tv, self.ta, self.mu, self.ua),
            (N, U, T, self.uv, self.ua, self.nu, self.ta),
        ):
            for a in range(nat.n_arrows):
                s, t = nat.arrow_src[a], nat.arrow_tgt[a]
                for k, (i, j, l) in enumerate(bm.basis):
                    if i != t:
                        continue
                    terms = [(1, (ri(a), lo(k)))]
                    col = bm.lact[a][:, k]
                    terms += [((-int(col[r])) % p, (lo(r),)) for r in np.flatnonzero(col)]
                    out.append((lv(s), terms))
            for b in range(nar.n_arrows):
                s, t = nar.arrow_src[b], nar.arrow_tgt[b]
                for k, (i, j, l) in enumerate(bm.basis):
                    if j != s:
                        continue
                    terms = [(1, (lo(k), ra(b)))]
                    col = bm.ract[b][:, k]
                    terms += [((-int(col[r])) % p, (lo(r),)) for r in np.flatnonzero(col)]
                    out.append((lv(i), terms))
        for k, (i, j, _) in enumerate(M.basis):
            for r, (j2, i2, _) in enumerate(N.basis):
                if j2 == j:
                    out.append((self.tv(i), [(1, (self.mu(k), self.nu(r)))]))
        for r, (j, i, _) in enumerate(N.basis):
            for k, (i2, j2, _) in enumerate(M.basis):
                if i2 == i:
                    out.append((self.uv(j), [(1, (self.nu(r), self.mu(k)))]))
        self._rels = out
        return out

    def _side_projective(self, v: int, home: BoundQuiverAlgebra, bm: Bimodule, hv, ha, away_v, away_a, lo, lo_other):
        """Projective tuple generated on the ``home`` side at vertex v."""
        n = self.n_vertices
        dims = [0] * n
        words: list[list] = [[] for _ in range(n)]
        hwords = home.projective_words(v)
        for u in range(home.n_vertices):
            dims[hv(u)] = len(hwords[u])
            words[hv(u)] = [tuple(ha(a) for a in w) for w in hwords[u]]
        away = bm.right
        for j in range(away.n_vertices):
            d = bm.dim(v, j)
            dims[away_v(j)] = d
            words[away_v(j)] = [(lo(bm.index(v, j, l)),) for l in range(d)]
        hp = home.projective(v)
        maps = {}
        for a in range(home.n_arrows):
            maps[ha(a)] = hp.maps[a]
        for b in range(away.n_arrows):
            s, t = away.arrow_src[b], away.arrow_tgt[b]
            maps[away_a(b)] = bm.sub(bm.ract[b], (v, t), (v, s))
        for k, (x, j, l) in enumerate(bm.basis):
            # mu_k : home vertex x -> away vertex j ; path p from v to x maps to p.m_k in e_v M e_j
            m = np.zeros((bm.dim(v, j), len(hwords[x])), dtype=np.int64)
            if m.size:
                for col, w in enumerate(hwords[x]):
                    vec = bm.left_word(w)[:, bm.index(x, j, l)]
                    m[:, col] = vec[bm.block(v, j)]
            maps[lo(k)] = m
        return dims, maps, words

    def projective_spec(self, v: int):
        ctx = self.ctx
        if v < self.nT:
            return self._side_projective(v, ctx.T, ctx.M, self.tv, self.ta, self.uv, self.ua, self.mu, self.nu)
        return self._side_projective(v - self.nT, ctx.U, ctx.N, self.uv, self.ua, self.tv, self.ta, self.nu, self.mu)

    @property
    def dim(self) -> int:
        return sum(self.projective(v).total_dim for v in range(self.n_vertices))

    def __repr__(self) -> str:
        return f"MoritaRing({self.ctx.name or 'context'}, vertices={self.n_vertices})"


# -- tuple helpers -------------------------------------------------------------


def first(x: Representation) -> Representation:
    ring: MoritaRing = x.pres
    T = ring.ctx.T
    return Representation(T, x.dims[: ring.nT], {a: x.maps[ring.ta(a)] for a in range(T.n_arrows)})


def second(x: Representation) -> Representation:
    ring: MoritaRing = x.pres
    U = ring.ctx.U
    return Representation(U, x.dims[ring.nT :], {b: x.maps[ring.ua(b)] for b in range(U.n_arrows)})


def restrict_morphism(h: Morphism, side: str) -> Morphism:
    ring: MoritaRing = h.source.pres
    if side == "T":
        return Morphism(first(h.source), first(h.target), h.mats[: ring.nT])
    return Morphism(second(h.source), second(h.target), h.mats[ring.nT :])


def make_tuple(
    ctx: MoritaContext,
    A: Representation,
    B: Representation,
    mu: dict[int, np.ndarray] | None = None,
    nu: dict[int, np.ndarray] | None = None,
) -> Representation:
    """Tuple from components; ``mu[k]`` is the map ``x -> f(x ⊗ m_k)``."""
    ring = ctx.ring
    if A.pres is not ctx.T or B.pres is not ctx.U:
        raise ContextError("components must be over T and U")
    dims = list(A.dims) + list(B.dims)
    maps = {}
    for a in range(ctx.T.n_arrows):
        maps[ring.ta(a)] = A.maps[a]
    for b in range(ctx.U.n_arrows):
        maps[ring.ua(b)] = B.maps[b]
    for k, m in (mu or {}).items():
        maps[ring.mu(k)] = m
    for k, m in (nu or {}).items():
        maps[ring.nu(k)] = m
    return Representation(ring, dims, maps)


def pad_T(ctx: MoritaContext, A: Representation) -> Representation:
    """``(A, 0, 0, 0)``."""
    return make_tuple(ctx, A, ctx.U.zero_module())


def pad_U(ctx: MoritaContext, B: Representation) -> Representation:
    """``(0, B, 0, 0)``."""
    return make_tuple(ctx, ctx.T.zero_module(), B)


def f_morphism(x: Representation) -> Morphism:
    """The U-morphism ``f : A ⊗ M -> B`` of a tuple."""
    ring: MoritaRing = x.pres
    return _structure_morphism(x, ring.ctx.M, first(x), second(x), ring.mu)


def g_morphism(x: Representation) -> Morphism:
    ring: MoritaRing = x.pres
    return _structure_morphism(x, ring.ctx.N, second(x), first(x), ring.nu)


def _structure_morphism(x, bm: Bimodule, src: Representation, tgt: Representation, arrow) -> Morphism:
    f = x.field
    td = tensor_data(src, bm)
    mats = []
    for j in range(bm.right.n_vertices):
        raw = np.zeros((tgt.dims[j], td.raw_dims[j]), dtype=np.int64)
        for i, off, sz in td.blocks[j]:
            d = bm.dim(i, j)
            for l in range(d):
                mk = x.maps[arrow(bm.index(i, j, l))]
                for xa in range(src.dims[i]):
                    raw[:, off + xa * d + l] = mk[:, xa]
        mats.append(f.mul(raw, td.sect[j]))
    return Morphism(td.rep, tgt, tuple(mats))


def _arrows_from_morphism(bm: Bimodule, src: Representation, hom: Morphism) -> dict[int, np.ndarray]:
    """Per basis vector of bm, the map ``x -> hom(x ⊗ m)``."""
    f = src.field
    td = tensor_data(src, bm)
    out = {}
    for k, (i, j, l) in enumerate(bm.basis):
        _, off, sz = td.blocks[j][i]
        d = bm.dim(i, j)
        cols = [off + xa * d + l for xa in range(src.dims[i])]
        out[k] = f.mul(hom.mats[j], td.proj[j][:, cols])
    return out


def tuple_from_f(ctx: MoritaContext, A: Representation, B: Representation, fmor: Morphism) -> Representation:
    """``(A, B, f, 0)`` from a U-morphism ``f : A ⊗ M -> B``."""
    return make_tuple(ctx, A, B, _arrows_from_morphism(ctx.M, A, fmor), {})


def tuple_from_g(ctx: MoritaContext, A: Representation, B: Representation, gmor: Morphism) -> Representation:
    return make_tuple(ctx, A, B, {}, _arrows_from_morphism(ctx.N, B, gmor))


def induced_T(ctx: MoritaContext, a: Representation, p: Representation, iota: Morphism) -> Representation:
    """``(a, p ⊗ M, 1 ⊗ iota, 0)`` for a T-morphism ``iota : a -> p``."""
    td = tensor_data(p, ctx.M)
    return tuple_from_f(ctx, a, td.rep, tensor_morphism(iota, ctx.M))


def induced_U(ctx: MoritaContext, b: Representation, q: Representation, iota: Morphism) -> Representation:
    """``(q ⊗ N, b, 0, 1 ⊗ iota)``."""
    td = tensor_data(q, ctx.N)
    return tuple_from_g(ctx, td.rep, b, tensor_morphism(iota, ctx.N))


def tuple_projective(ctx: MoritaContext, side: str, v: int | str) -> Representation:
    alg = ctx.T if side == "T" else ctx.U
    idx = alg.vertex(v)
    return ctx.ring.projective(idx if side == "T" else ctx.ring.nT + idx)


def tuple_hom(x: Representation, y: Representation) -> list[Morphism]:
    return hom_space(x, y)


# -- the closed-form syzygy --------------------------------------------------


@dataclass
class TupleSyzygy:
    syzygy: Representation
    part_T: Representation
    part_U: Representation
    cover: Representation
    cover_map: Morphism
    inclusion: Morphism | None  # syzygy -> cover, present when audited


def tuple_syzygy(x: Representation, audit: bool = True) -> TupleSyzygy:
    """Ω of a tuple as ``(ΩA, P_A ⊗ M, 1⊗i, 0) ⊕ (Q_B ⊗ N, ΩB, 0, 1⊗j)``.

    The audit computes the honest kernel of the evident cover
    ``⊕ Proj_T(gens A) ⊕ Proj_U(gens B) -> x`` and certifies an explicit
    isomorphism onto it.  That cover is not minimal in general, so the
    result agrees with the minimal syzygy only up to projective summands.
    """
    key = ("tuple_syz", audit)
    if key in x._cache:
        return x._cache[key]
    ring: MoritaRing = x.pres
    ctx = ring.ctx
    A, B = first(x), second(x)
    cA, cB = projective_cover(A), projective_cover(B)
    part_T = induced_T(ctx, cA.syzygy, cA.cover, cA.inclusion)
    part_U = induced_U(ctx, cB.syzygy, cB.cover, cB.inclusion)
    syz = direct_sum([part_T, part_U], ring)
    gens = [(ring.tv(v), c) for v, c in cA.generators] + [(ring.uv(w), c) for w, c in cB.generators]
    cover = direct_sum([ring.projective(v) for v, _ in gens], ring)
    n = ring.n_vertices
    pis = []
    for w in range(n):
        cols = [eval_tensors(x, v)[w][:, :, c].T for v, c in gens]
        pis.append(np.concatenate(cols, axis=1) if cols else np.zeros((x.dims[w], 0), dtype=np.int64))
    cover_map = Morphism(cover, x, tuple(pis))
    witness = None
    if audit:
        from .krull import iso_test

        if not cover_map.is_intertwining() or not cover_map.is_epi():
            raise SyzygyAuditError("evident cover map is not a surjective morphism")
        ker, inc = kernel(cover_map)
        for w in range(n):
            if ker.dims[w] != cover.dims[w] - x.dims[w]:
                raise SyzygyAuditError(f"kernel dimension mismatch at vertex {ring.vertex_names[w]}")
        res = iso_test(syz, ker)
        if not res:
            raise SyzygyAuditError(f"closed-form syzygy is not the kernel of the evident cover: {res.reason}")
        witness = res.witness.then(inc)
    out = TupleSyzygy(syz, part_T, part_U, cover, cover_map, witness)
    x._cache[key] = out
    return out


def tuple_syzygy_power(x: Representation, k: int) -> Representation:
    for _ in range(k):
        x = tuple_syzygy(x).syzygy
    return x


def closed_form_syzygy(ctx: MoritaContext, x: Representation, n: int) -> Representation:
    """``(Ω^nA, P^A_{n-1}⊗M, 1⊗i_n, 0) ⊕ (P^B_{n-1}⊗N, Ω^nB, 0, 1⊗i_n)``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    A, B = first(x), second(x)
    for _ in range(n - 1):
        A = projective_cover(A).syzygy
        B = projective_cover(B).syzygy
    cA, cB = projective_cover(A), projective_cover(B)
    left = induced_T(ctx, cA.syzygy, cA.cover, cA.inclusion)
    right = induced_U(ctx, cB.syzygy, cB.cover, cB.inclusion)
    return direct_sum([left, right], ctx.ring)


# -- builders -------------------------------------------------------------------


def build_triangular(T: BoundQuiverAlgebra, U: BoundQuiverAlgebra, M: Bimodule, name: str = "") -> MoritaContext:
    ctx = MoritaContext(T, U, M, None, name)
    require_valid(ctx)
    return ctx


def field_algebra(field: FieldSpec | None = None, vertex: str = "1") -> BoundQuiverAlgebra:
    """The ground field as a one-vertex algebra."""
    return BoundQuiverAlgebra(Quiver([vertex], []), [], 1, field, name="K")


@dataclass
class TensorPathBuild:
    flat: BoundQuiverAlgebra
    d_table: list[list[int]]
    tower: list[MoritaContext]
    order: list[str]
    column_algebras: list[BoundQuiverAlgebra]
    quiver: Quiver

    def flat_to_tuple(self, x: Representation, level: int | None = None) -> Representation:
        """Restrict a flat module to the top context of the tower."""
        level = len(self.tower) - 1 if level is None else level
        if level < 0:
            raise ValueError("single-vertex quiver has no tower")
        ctx = self.tower[level]
        return flat_module_to_tuple(self, x, ctx, level)


def _flat_algebra(T: BoundQuiverAlgebra, Q: Quiver, qverts: Sequence[str]) -> BoundQuiverAlgebra:
    qv = list(qverts)
    qarrows = [b for b in Q.arrows if b.source in qv and b.target in qv]
    verts = [f"{t}@{q}" for q in qv for t in T.vertex_names]
    arrows = []
    for q in qv:
        for a in T.quiver.arrows:
            arrows.append((f"{a.name}@{q}", f"{a.source}@{q}", f"{a.target}@{q}"))
    for b in qarrows:
        for t in T.vertex_names:
            arrows.append((f"{t}@{b.name}", f"{t}@{b.source}", f"{t}@{b.target}"))
    rels = []
    for q in qv:
        for r in T.relations:
            rels.append(Relation(tuple((c, tuple(f"{a}@{q}" for a in w)) for c, w in r.terms)))
    for b in qarrows:
        for a in T.quiver.arrows:
            rels.append(
                Relation(
                    (
                        (1, (f"{a.name}@{b.source}", f"{a.target}@{b.name}")),
                        (-1, (f"{a.source}@{b.name}", f"{a.name}@{b.target}")),
                    )
                )
            )
    sub = Quiver(qv, qarrows)
    nq = sub.longest_path() + 1
    fq = Quiver(verts, arrows)
    return BoundQuiverAlgebra(fq, rels, T.nilpotency + nq - 1, T.field, name=f"{T.name or 'T'}⊗KQ")


def build_tensor_path(T: BoundQuiverAlgebra, Q: Quiver) -> TensorPathBuild:
    order = Q.topological_order()
    if order is None:
        raise ContextError("quiver has an oriented cycle")
    counts = Q.path_counts()
    # d[i][j] = number of paths from vertex j to vertex i
    d_table = [[counts.get((j, i), 0) for j in order] for i in order]
    flat = _flat_algebra(T, Q, order)
    tower, cols = [], []
    for k in range(1, len(order)):
        lower = _flat_algebra(T, Q, order[:k])
        cols.append(lower)
        M = _tower_bimodule(T, Q, order[:k], order[k], lower)
        tower.append(MoritaContext(lower, T, M, None, name=f"level {k}"))
    return TensorPathBuild(flat, d_table, tower, list(order), cols, Q)


def _tower_bimodule(T, Q: Quiver, lower_q: Sequence[str], sink: str, lower: BoundQuiverAlgebra) -> Bimodule:
    """e_(t,q) (T⊗KQ) e_(t',sink) for q in lower_q: pairs (T path t->t', Q path q->sink)."""
    qpaths = {q: Q.paths_between(q, sink) for q in lower_q}
    tpaths = {(t, u): T.paths_between(t, u) for t in range(T.n_vertices) for u in range(T.n_vertices)}
    dims = {}
    index = {}
    for q in lower_q:
        for t in range(T.n_vertices):
            i = lower.vertex(f"{T.vertex_names[t]}@{q}")
            for u in range(T.n_vertices):
                basis = [(kt, qp) for kt in tpaths[(t, u)] for qp in qpaths[q]]
                dims[(i, u)] = len(basis)
                for l, b in enumerate(basis):
                    index[(i, u, b)] = l
    tmp = Bimodule(lower, T, dims)
    D = tmp.total
    lact = {}
    for a in range(lower.n_arrows):
        name = lower.arrow_names[a]
        s, t_ = lower.arrow_src[a], lower.arrow_tgt[a]
        m = np.zeros((D, D), dtype=np.int64)
        left_part, right_part = name.split("@", 1)
        sq = lower.vertex_names[s].split("@", 1)[1]
        tq = lower.vertex_names[t_].split("@", 1)[1]
        for (i, u, (kt, qp)), l in index.items():
            if i != t_:
                continue
            col = tmp.index(t_, u, l)
            if sq == tq:
                # horizontal arrow a' of T at column q: left multiply the T path
                ta = T.arrow_ids[left_part]
                nf = T.normal_form(T.arrow_src[ta], (ta,) + T.basis[kt][1])
                for kk, c in enumerate(nf):
                    if c:
                        m[tmp.index(s, u, index[(s, u, (kk, qp))]), col] = c
            else:
                # vertical arrow: prepend the Q arrow to the Q path
                new_qp = (right_part,) + qp
                m[tmp.index(s, u, index[(s, u, (kt, new_qp))]), col] = 1
        lact[a] = m
    ract = {}
    for b in range(T.n_arrows):
        m = np.zeros((D, D), dtype=np.int64)
        s, t_ = T.arrow_src[b], T.arrow_tgt[b]
        for (i, u, (kt, qp)), l in index.items():
            if u != s:
                continue
            bs, bw = T.basis[kt]
            nf = T.normal_form(bs, bw + (b,))
            for kk, c in enumerate(nf):
                if c:
                    m[tmp.index(i, t_, index[(i, t_, (kk, qp))]), tmp.index(i, u, l)] = c
        ract[b] = m
    return Bimodule(lower, T, dims, lact, ract, "M")


def flat_module_to_tuple(build: TensorPathBuild, x: Representation, ctx: MoritaContext, level: int) -> Representation:
    """Flat T⊗KQ module restricted to columns 0..level+1, as a tuple."""
    flat = build.flat
    lower = ctx.T
    T = ctx.U
    sink = build.order[level + 1]
    f = x.field
    A_dims = [x.dims[flat.vertex(v)] for v in lower.vertex_names]
    A_maps = {a: x.maps[flat.arrow_ids[lower.arrow_names[a]]] for a in range(lower.n_arrows)}
    A = Representation(lower, A_dims, A_maps)
    B_dims = [x.dims[flat.vertex(f"{t}@{sink}")] for t in T.vertex_names]
    B_maps = {b: x.maps[flat.arrow_ids[f"{T.arrow_names[b]}@{sink}"]] for b in range(T.n_arrows)}
    B = Representation(T, B_dims, B_maps)
    M = ctx.M
    mu = {}
    cached = _tower_words(build, ctx, level)
    for k, word in enumerate(cached):
        i = M.basis[k][0]
        mat = f.eye(x.dims[flat.vertex(lower.vertex_names[i])])
        for a in word:
            mat = f.mul(x.maps[a], mat)
        mu[k] = mat
    return make_tuple(ctx, A, B, mu, {})


def _tower_words(build: TensorPathBuild, ctx: MoritaContext, level: int) -> list[tuple[int, ...]]:
    """Flat-quiver word for each basis vector of the level's bimodule."""
    cache = getattr(ctx, "_tower_words", None)
    if cache is not None:
        return cache
    flat, lower, T, M = build.flat, ctx.T, ctx.U, ctx.M
    Q_sink = build.order[level + 1]
    words = []
    # rebuild the basis ordering used by _tower_bimodule
    qpaths_cache: dict = {}
    for k, (i, u, l) in enumerate(M.basis):
        tname, q = lower.vertex_names[i].split("@", 1)
        t = T.vertex_ids[tname]
        if q not in qpaths_cache:
            qpaths_cache[q] = build.quiver.paths_between(q, Q_sink)
        basis = [(kt, qp) for kt in T.paths_between(t, u) for qp in qpaths_cache[q]]
        kt, qp = basis[l]
        tw = T.basis[kt][1]
        word = tuple(flat.arrow_ids[f"{T.arrow_names[a]}@{q}"] for a in tw)
        end_t = T.vertex_names[u]
        word += tuple(flat.arrow_ids[f"{end_t}@{b}"] for b in qp)
        words.append(word)
    ctx._tower_words = words
    return words


# -- Φ battery -----------------------------------------------------------------


@dataclass
class BatteryCheck:
    name: str
    lhs: int
    rhs: int
    ok: bool
    detail: str = ""


@dataclass
class BatteryReport:
    checks: list[BatteryCheck] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list[BatteryCheck]:
        return [c for c in self.checks if not c.ok]

    def add(self, name: str, lhs: int, rhs: int, detail: str = "") -> None:
        self.checks.append(BatteryCheck(name, lhs, rhs, lhs <= rhs, detail))


def random_f_tuple(ctx: MoritaContext, A: Representation, P: Representation, rng: np.random.Generator) -> Representation:
    """``(A, P⊗M, f, 0)`` with f a random element of Hom_U(A⊗M, P⊗M)."""
    AM = tensor_over(A, ctx.M)
    PM = tensor_over(P, ctx.M)
    basis = hom_space(AM, PM)
    f = ctx.field
    if basis:
        coeffs = rng.integers(0, f.p, size=len(basis))
        mats = tuple(sum(int(c) * m.mats[v] for c, m in zip(coeffs, basis)) % f.p for v in range(ctx.U.n_vertices))
        fm = Morphism(AM, PM, mats)
    else:
        fm = Morphism(AM, PM, tuple(np.zeros((PM.dims[v], AM.dims[v]), dtype=np.int64) for v in range(ctx.U.n_vertices)))
    return tuple_from_f(ctx, A, PM, fm)


def random_g_tuple(ctx: MoritaContext, B: Representation, Q: Representation, rng: np.random.Generator) -> Representation:
    BN = tensor_over(B, ctx.N)
    QN = tensor_over(Q, ctx.N)
    basis = hom_space(BN, QN)
    f = ctx.field
    if basis:
        coeffs = rng.integers(0, f.p, size=len(basis))
        mats = tuple(sum(int(c) * m.mats[v] for c, m in zip(coeffs, basis)) % f.p for v in range(ctx.T.n_vertices))
        gm = Morphism(BN, QN, mats)
    else:
        gm = Morphism(BN, QN, tuple(np.zeros((QN.dims[v], BN.dims[v]), dtype=np.int64) for v in range(ctx.T.n_vertices)))
    return tuple_from_g(ctx, QN, B, gm)


def phi_bound_battery(
    ctx: MoritaContext,
    t_modules: Sequence[Representation],
    u_modules: Sequence[Representation],
    tuples: Sequence[Representation] = (),
    rng: np.random.Generator | int = 0,
    budget=None,
) -> BatteryReport:
    """Check the Φ inequalities relating T, U and the Morita ring."""
    from .itfun import Budget, phi
    from .krull import default_registry

    budget = budget or Budget()
    if isinstance(rng, (int, np.integer)):
        rng = np.random.default_rng(int(rng))
    ring = ctx.ring
    regT, regU, regL = default_registry(ctx.T), default_registry(ctx.U), default_registry(ring)
    rep = BatteryReport()

    def ph_T(a):
        return phi(a, regT, budget)

    def ph_U(b):
        return phi(b, regU, budget)

    def ph_L(x):
        return phi(x, regL, budget)

    projT = [ctx.T.projective(v) for v in range(ctx.T.n_vertices)]
    projU = [ctx.U.projective(v) for v in range(ctx.U.n_vertices)]
    maxT = maxU = maxL = 0
    for A in t_modules:
        pa = ph_T(A)
        pl = ph_L(pad_T(ctx, A))
        maxT, maxL = max(maxT, pa), max(maxL, pl)
        rep.add("Φ(A) <= Φ(A,0,0,0)", pa, pl, f"dims {A.dims}")
        rep.add("Φ(A,0,0,0) <= Φ(A)+1", pl, pa + 1, f"dims {A.dims}")
        P = projT[int(rng.integers(len(projT)))]
        xf = random_f_tuple(ctx, A, P, rng)
        rep.add("Φ(A,P⊗M,f,g) <= Φ(A)+1", ph_L(xf), pa + 1, f"dims {A.dims}")
    for B in u_modules:
        pb = ph_U(B)
        pl = ph_L(pad_U(ctx, B))
        maxU, maxL = max(maxU, pb), max(maxL, pl)
        rep.add("Φ(B) <= Φ(0,B,0,0)", pb, pl, f"dims {B.dims}")
        rep.add("Φ(0,B,0,0) <= Φ(B)+1", pl, pb + 1, f"dims {B.dims}")
        Q = projU[int(rng.integers(len(projU)))]
        xg = random_g_tuple(ctx, B, Q, rng)
        rep.add("Φ(Q⊗N,B,f,g) <= Φ(B)+1", ph_L(xg), pb + 1, f"dims {B.dims}")
    for A, B in zip(t_modules, u_modules):
        P = projT[int(rng.integers(len(projT)))]
        Q = projU[int(rng.integers(len(projU)))]
        both = direct_sum([random_f_tuple(ctx, A, P, rng), random_g_tuple(ctx, B, Q, rng)], ring)
        rep.add("Φ((A,P⊗M,f,g)⊕(Q⊗N,B,f',g')) <= max+1", ph_L(both), max(ph_T(A), ph_U(B)) + 1)
    from .repcat import syzygy

    for x in tuples:
        bound = max(ph_T(syzygy(first(x))), ph_U(syzygy(second(x)))) + 2
        val = ph_L(x)
        maxL = max(maxL, val)
        rep.add("Φ(A,B,f,g) <= max{Φ(ΩA),Φ(ΩB)}+2", val, bound, f"dims {x.dims}")
    # family-level Φ-dim sandwich
    rep.add("max Φ over T, U family <= max Φ over tuples", max(maxT, maxU), maxL)
    rep.add("max Φ over tuples <= max Φ over T, U family + 2", maxL, max(maxT, maxU) + 2)
    return rep


def closed_form_size_estimate(ctx: MoritaContext, x: Representation, n: int, cap: int | None = None) -> int:
    """Largest total dimension of the closed-form Ω^k x, k ≤ n, from component resolutions.

    Stops early (returning a value above ``cap``) once the estimate exceeds it.
    """
    M, N = ctx.M, ctx.N
    eM = [sum(M.dim(i, j) for j in range(ctx.U.n_vertices)) for i in range(ctx.T.n_vertices)]
    eN = [sum(N.dim(j, i) for i in range(ctx.T.n_vertices)) for j in range(ctx.U.n_vertices)]
    A, B = first(x), second(x)
    worst = 0
    for _ in range(n):
        cA, cB = projective_cover(A), projective_cover(B)
        size = cA.syzygy.total_dim + cB.syzygy.total_dim
        size += sum(eM[v] for v, _ in cA.generators) + sum(eN[w] for w, _ in cB.generators)
        worst = max(worst, size)
        if cap is not None and worst > cap:
            return worst
        A, B = cA.syzygy, cB.syzygy
    return worst


def closed_form_checks(ctx: MoritaContext, x: Representation, n_max: int = 4, reg=None) -> list[tuple[str, bool]]:
    """Closed-form Ω^n of a tuple, and Ω^n of a padded component against Ω of its padded Ω^(n-1)."""
    from .krull import default_registry, iso_test

    ring = ctx.ring
    reg = default_registry(ring) if reg is None else reg
    out = []
    cur = x
    for n in range(1, n_max + 1):
        cur = tuple_syzygy(cur).syzygy
        out.append((f"closed form n={n}", bool(iso_test(cur, closed_form_syzygy(ctx, x, n), reg))))
    A, B = first(x), second(x)
    for n in range(1, n_max + 1):
        lhs = tuple_syzygy_power(pad_T(ctx, A), n)
        An = A
        for _ in range(n - 1):
            An = projective_cover(An).syzygy
        rhs = tuple_syzygy(pad_T(ctx, An)).syzygy
        out.append((f"T-padding n={n}", bool(iso_test(lhs, rhs, reg))))
        lhs = tuple_syzygy_power(pad_U(ctx, B), n)
        Bn = B
        for _ in range(n - 1):
            Bn = projective_cover(Bn).syzygy
        rhs = tuple_syzygy(pad_U(ctx, Bn)).syzygy
        out.append((f"U-padding n={n}", bool(iso_test(lhs, rhs, reg))))
    return out


def padding_checks(ctx: MoritaContext, A: Representation, B: Representation, rng: np.random.Generator, reg=None) -> list[tuple[str, bool]]:
    from .krull import default_registry, iso_test

    reg = default_registry(ctx.ring) if reg is None else reg
    P = ctx.T.projective(int(rng.integers(ctx.T.n_vertices)))
    Q = ctx.U.projective(int(rng.integers(ctx.U.n_vertices)))
    x2 = random_f_tuple(ctx, A, P, rng)
    x3 = random_g_tuple(ctx, B, Q, rng)
    return [
        ("f-tuple", bool(iso_test(tuple_syzygy(x2).syzygy, tuple_syzygy(pad_T(ctx, A)).syzygy, reg))),
        ("g-tuple", bool(iso_test(tuple_syzygy(x3).syzygy, tuple_syzygy(pad_U(ctx, B)).syzygy, reg))),
    ]
