"""Quivers, relations, and bound quiver algebras with an explicit path basis."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .exactlin import FieldSpec
from .repcat import PresentationBase, Representation, Word

DEFAULT_PATH_CAP = 20000


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        where = ""
        if source:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}".strip())
        self.line = line


class AdmissibilityError(ValueError):
    pass


class ResourceLimit(RuntimeError):
    """A configured size cap was exceeded."""


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


class Quiver:
    def __init__(self, vertices: Iterable[str], arrows: Iterable[Arrow | tuple[str, str, str]]):
        self.vertices = tuple(str(v) for v in vertices)
        self.arrows = tuple(a if isinstance(a, Arrow) else Arrow(*map(str, a)) for a in arrows)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex id")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError("duplicate arrow id")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise ValueError(f"arrow {a.name} references an unknown vertex")
        self._by_name = {a.name: a for a in self.arrows}

    def arrow(self, name: str) -> Arrow:
        try:
            return self._by_name[name]
        except KeyError:
            raise KeyError(f"unknown arrow {name!r}") from None

    def has_arrow(self, name: str) -> bool:
        return name in self._by_name

    def out_arrows(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.source == v]

    def in_arrows(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.target == v]

    def opposite(self) -> Quiver:
        return Quiver(self.vertices, [Arrow(a.name, a.target, a.source) for a in self.arrows])

    def topological_order(self) -> list[str] | None:
        """Vertices ordered so every arrow goes forward, or None if cyclic."""
        indeg = {v: 0 for v in self.vertices}
        for a in self.arrows:
            indeg[a.target] += 1
        ready = [v for v in self.vertices if indeg[v] == 0]
        order = []
        while ready:
            v = ready.pop(0)
            order.append(v)
            for a in self.out_arrows(v):
                indeg[a.target] -= 1
                if indeg[a.target] == 0:
                    ready.append(a.target)
        return order if len(order) == len(self.vertices) else None

    def is_acyclic(self) -> bool:
        return self.topological_order() is not None

    def longest_path(self) -> int:
        order = self.topological_order()
        if order is None:
            raise ValueError("quiver has oriented cycles")
        best = {v: 0 for v in self.vertices}
        for v in reversed(order):
            for a in self.out_arrows(v):
                best[v] = max(best[v], best[a.target] + 1)
        return max(best.values(), default=0)

    def path_counts(self) -> dict[tuple[str, str], int]:
        """Number of paths between each ordered pair (acyclic quivers)."""
        order = self.topological_order()
        if order is None:
            raise ValueError("quiver has oriented cycles")
        counts = {(u, v): int(u == v) for u in self.vertices for v in self.vertices}
        for v in reversed(order):
            for a in self.out_arrows(v):
                for w in self.vertices:
                    counts[(v, w)] += counts[(a.target, w)]
        return counts

    def paths_between(self, u: str, v: str) -> list[tuple[str, ...]]:
        if not self.is_acyclic():
            raise ValueError("quiver has oriented cycles")
        out: list[tuple[str, ...]] = []

        def walk(cur: str, word: tuple[str, ...]) -> None:
            if cur == v:
                out.append(word)
            for a in self.out_arrows(cur):
                walk(a.target, word + (a.name,))

        walk(u, ())
        return sorted(out, key=lambda w: (len(w), w))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Quiver) and self.vertices == other.vertices and self.arrows == other.arrows

    def __hash__(self) -> int:
        return hash((self.vertices, self.arrows))


@dataclass(frozen=True)
class Relation:
    """A linear combination of parallel paths; paths are arrow-id tuples."""

    terms: tuple[tuple[int, tuple[str, ...]], ...]

    @classmethod
    def monomial(cls, *path: str) -> Relation:
        return cls(((1, tuple(path)),))

    def text(self) -> str:
        parts = []
        for c, w in self.terms:
            body = "*".join(w)
            parts.append(body if c == 1 else f"{c}*{body}")
        return " + ".join(parts)


def _path_end(q: Quiver, start: str, word: Sequence[str]) -> str:
    v = start
    for name in word:
        a = q.arrow(name)
        if a.source != v:
            raise ValueError(f"path {'*'.join(word)} is not composable")
        v = a.target
    return v


class BoundQuiverAlgebra(PresentationBase):
    """The algebra KQ/(I + J^N) with a basis of standard paths.

    ``basis[k]`` is a pair ``(start vertex index, arrow-index word)``; the
    basis is ordered by length, then start vertex, then word, so the trivial
    paths come first.
    """

    def __init__(
        self,
        quiver: Quiver,
        relations: Sequence[Relation],
        nilpotency: int,
        field: FieldSpec | None = None,
        path_cap: int = DEFAULT_PATH_CAP,
        name: str = "",
    ):
        if nilpotency < 1:
            raise ValueError("nilpotency bound must be at least 1")
        self.quiver = quiver
        self.field = field or FieldSpec()
        self.nilpotency = int(nilpotency)
        self.name = name
        p = self.field.p
        rels = []
        for r in relations:
            terms = []
            for c, w in r.terms:
                if len(w) < 2:
                    raise AdmissibilityError(f"relation term {'*'.join(w) or '(empty)'} has length < 2")
                for a in w:
                    quiver.arrow(a)
                terms.append((int(c) % p, tuple(w)))
            terms = [(c, w) for c, w in terms if c]
            if not terms:
                continue
            ends = set()
            for _, w in terms:
                ends.add((quiver.arrow(w[0]).source, _path_end(quiver, quiver.arrow(w[0]).source, w)))
            if len(ends) != 1:
                raise ValueError(f"relation {Relation(tuple(terms)).text()} has non-parallel terms")
            rels.append(Relation(tuple(terms)))
        self.relations = tuple(rels)
        self._init_quiver(quiver.vertices, [(a.name, a.source, a.target) for a in quiver.arrows])
        self._build_basis(path_cap)

    # -- basis -----------------------------------------------------------

    def _enumerate(self, max_len: int, cap: int) -> list[list[tuple[int, Word]]]:
        levels = [[(v, ()) for v in range(self.n_vertices)]]
        total = len(levels[0])
        for _ in range(max_len):
            nxt = []
            for s, w in levels[-1]:
                end = self.arrow_tgt[w[-1]] if w else s
                for a in self.out_arrows[end]:
                    nxt.append((s, w + (a,)))
            total += len(nxt)
            if total > cap:
                raise ResourceLimit(f"more than {cap} paths of length <= {max_len}; raise the path cap")
            levels.append(nxt)
        return levels

    def _end(self, s: int, w: Word) -> int:
        return self.arrow_tgt[w[-1]] if w else s

    def _build_basis(self, cap: int) -> None:
        f = self.field
        N = self.nilpotency
        levels = self._enumerate(N, cap)
        allpaths = [pw for lev in levels for pw in lev]
        # descending deg-lex so rref pivots land on the largest paths
        cols = sorted(allpaths, key=lambda sw: (len(sw[1]), sw[1], sw[0]), reverse=True)
        col_of = {pw: i for i, pw in enumerate(cols)}
        ending_at = [[] for _ in range(self.n_vertices)]
        starting_at = [[] for _ in range(self.n_vertices)]
        for s, w in allpaths:
            ending_at[self._end(s, w)].append((s, w))
            starting_at[s].append((s, w))
        rows = []
        for r in self.relations:
            terms = [(c, tuple(self.arrow_ids[a] for a in w)) for c, w in r.terms]
            s = self.arrow_src[terms[0][1][0]]
            t = self._end(s, terms[0][1])
            lmin = min(len(w) for _, w in terms)
            for us, uw in ending_at[s]:
                if len(uw) + lmin > N:
                    continue
                for _, vw in starting_at[t]:
                    if len(uw) + lmin + len(vw) > N:
                        continue
                    row = np.zeros(len(cols), dtype=np.int64)
                    for c, w in terms:
                        full = uw + w + vw
                        if len(full) <= N:
                            row[col_of[(us, full)]] = (row[col_of[(us, full)]] + c) % f.p
                    if np.any(row):
                        rows.append(row)
        n_long = len(levels[N])
        if rows:
            red, pivots = f.rref(np.array(rows))
        else:
            red, pivots = np.zeros((0, len(cols)), dtype=np.int64), []
        long_pivots = [c for c in pivots if c < n_long]
        if len(long_pivots) != n_long or any(np.any(red[i, n_long:]) for i, c in enumerate(pivots) if c < n_long):
            # identify a long path outside the span for the error message
            for c in range(n_long):
                test = np.zeros(len(cols), dtype=np.int64)
                test[c] = 1
                if f.rank(np.vstack([red, test])) > len(pivots):
                    s, w = cols[c]
                    raise AdmissibilityError(
                        f"path {self._word_text(s, w)} of length {N} is not in the ideal generated by the relations"
                    )
        pivot_row = {c: i for i, c in enumerate(pivots)}
        short = [pw for lev in levels[:N] for pw in lev]
        basis = sorted(
            (pw for pw in short if col_of[pw] not in pivot_row),
            key=lambda sw: (len(sw[1]), sw[0], sw[1]),
        )
        self.basis: list[tuple[int, Word]] = basis
        self.basis_index = {pw: i for i, pw in enumerate(basis)}
        dim = len(basis)
        basis_cols = [col_of[pw] for pw in basis]
        self._nf: dict[tuple[int, Word], np.ndarray] = {}
        for pw in short:
            vec = np.zeros(dim, dtype=np.int64)
            c = col_of[pw]
            if pw in self.basis_index:
                vec[self.basis_index[pw]] = 1
            else:
                row = red[pivot_row[c]]
                vec = (-row[basis_cols]) % f.p
            self._nf[pw] = vec
        self.vertex_idempotents = [self.basis_index[(v, ())] for v in range(self.n_vertices)]
        self._mult: np.ndarray | None = None

    def _word_text(self, s: int, w: Word) -> str:
        if not w:
            return f"e_{self.vertex_names[s]}"
        return "*".join(self.arrow_names[a] for a in w)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def basis_labels(self) -> list[str]:
        return [self._word_text(s, w) for s, w in self.basis]

    def normal_form(self, start: int, word: Word) -> np.ndarray:
        """Coordinates of a path in the basis (zero if it vanishes)."""
        if len(word) >= self.nilpotency:
            return np.zeros(self.dim, dtype=np.int64)
        return self._nf[(start, tuple(word))].copy()

    def basis_start(self, k: int) -> int:
        return self.basis[k][0]

    def basis_end(self, k: int) -> int:
        s, w = self.basis[k]
        return self._end(s, w)

    def mul_basis(self, i: int, j: int) -> np.ndarray:
        si, wi = self.basis[i]
        sj, wj = self.basis[j]
        if self._end(si, wi) != sj:
            return np.zeros(self.dim, dtype=np.int64)
        return self.normal_form(si, wi + wj)

    @property
    def mult_table(self) -> np.ndarray:
        """``mult_table[i, j]`` is the coordinate vector of ``basis[i] * basis[j]``."""
        if self._mult is None:
            d = self.dim
            m = np.zeros((d, d, d), dtype=np.int64)
            for i in range(d):
                for j in range(d):
                    m[i, j] = self.mul_basis(i, j)
            self._mult = m
        return self._mult

    def multiply(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.einsum("i,j,ijk->k", x, y, self.mult_table) % self.field.p

    def paths_between(self, u: int, v: int) -> list[int]:
        """Basis indices of standard paths from u to v."""
        return [k for k, (s, w) in enumerate(self.basis) if s == u and self._end(s, w) == v]

    # -- presentation contract ------------------------------------------

    def validation_relations(self):
        if hasattr(self, "_valrels"):
            return self._valrels
        out = []
        for r in self.relations:
            terms = [(c, tuple(self.arrow_ids[a] for a in w)) for c, w in r.terms]
            out.append((self.arrow_src[terms[0][1][0]], terms))
        for s, w in self._enumerate(self.nilpotency, DEFAULT_PATH_CAP * 10)[self.nilpotency]:
            out.append((s, [(1, w)]))
        self._valrels = out
        return out

    def projective_spec(self, v: int):
        groups = [self.paths_between(v, u) for u in range(self.n_vertices)]
        maps = {}
        for a in range(self.n_arrows):
            s, t = self.arrow_src[a], self.arrow_tgt[a]
            m = np.zeros((len(groups[t]), len(groups[s])), dtype=np.int64)
            for col, k in enumerate(groups[s]):
                bs, bw = self.basis[k]
                vec = self.normal_form(bs, bw + (a,))
                for row, kk in enumerate(groups[t]):
                    m[row, col] = vec[kk]
            maps[a] = m
        words = [[self.basis[k][1] for k in g] for g in groups]
        return [len(g) for g in groups], maps, words

    # -- misc -----------------------------------------------------------

    def opposite(self) -> BoundQuiverAlgebra:
        rels = [Relation(tuple((c, tuple(reversed(w))) for c, w in r.terms)) for r in self.relations]
        return BoundQuiverAlgebra(self.quiver.opposite(), rels, self.nilpotency, self.field, name=self.name + "^op")

    def with_field(self, field: FieldSpec) -> BoundQuiverAlgebra:
        return BoundQuiverAlgebra(self.quiver, self.relations, self.nilpotency, field, name=self.name)

    def check_associative(self) -> bool:
        m = self.mult_table
        p = self.field.p
        left = np.einsum("ijk,klm->ijlm", m, m) % p
        right = np.einsum("jlk,ikm->ijlm", m, m) % p
        return bool(np.array_equal(left, right))

    def __repr__(self) -> str:
        return f"BoundQuiverAlgebra({self.name or 'unnamed'}, dim={self.dim}, p={self.field.p})"


def projective_module(alg: BoundQuiverAlgebra, v: str) -> Representation:
    return alg.projective(alg.vertex(v))


def path_algebra(q: Quiver, field: FieldSpec | None = None) -> BoundQuiverAlgebra:
    return BoundQuiverAlgebra(q, [], q.longest_path() + 1, field)


def all_paths_of_length(q: Quiver, n: int) -> list[tuple[str, ...]]:
    if n <= 0:
        return []
    out = [(a.name,) for a in q.arrows]
    for _ in range(n - 1):
        out = [w + (a.name,) for w in out for a in q.out_arrows(q.arrow(w[-1]).target)]
    return out


def radical_power_quotient(q: Quiver, n: int, field: FieldSpec | None = None, extra: Sequence[Relation] = ()) -> BoundQuiverAlgebra:
    """KQ/J^n, optionally with further relations of length below n."""
    rels = [Relation.monomial(*w) for w in all_paths_of_length(q, n)] if n >= 2 else []
    return BoundQuiverAlgebra(q, list(extra) + rels, n, field)


# -- text format ---------------------------------------------------------

_INT = re.compile(r"^[+-]?\d+$")


def _parse_relation(text: str, q: Quiver, lineno: int, source: str | None) -> Relation:
    s = text.replace(" ", "").replace("\t", "")
    if not s:
        raise ParseError("empty relation", lineno, source)
    chunks = re.findall(r"[+-]?[^+-]+", s)
    if "".join(chunks) != s:
        raise ParseError(f"cannot parse relation {text!r}", lineno, source)
    terms = []
    for ch in chunks:
        sign = -1 if ch.startswith("-") else 1
        ch = ch.lstrip("+-")
        factors = ch.split("*")
        if any(not x for x in factors):
            raise ParseError(f"malformed term {ch!r}", lineno, source)
        coeff = 1
        if _INT.match(factors[0]) and not q.has_arrow(factors[0]):
            coeff = int(factors[0])
            factors = factors[1:]
        for a in factors:
            if not q.has_arrow(a):
                raise ParseError(f"unknown arrow {a!r}", lineno, source)
        if not factors:
            raise ParseError(f"term {ch!r} has no path", lineno, source)
        terms.append((sign * coeff, tuple(factors)))
    return Relation(tuple(terms))


def parse_algebra(text: str, field: FieldSpec | None = None, source: str | None = None, name: str = "") -> BoundQuiverAlgebra:
    """Parse the line-oriented algebra format.

    ``field`` overrides a ``field`` line in the text when given.
    """
    p = None
    vertices: list[str] | None = None
    arrows: list[Arrow] = []
    nil = None
    rel_lines: list[tuple[int, str]] = []
    in_rel = False
    keywords = {"field", "vertices", "arrow", "nilpotency", "relations"}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if in_rel and head not in keywords:
            rel_lines.append((lineno, line))
            continue
        in_rel = False
        if head == "field":
            if len(rest) != 1 or not rest[0].isdigit():
                raise ParseError("expected 'field <p>'", lineno, source)
            p = int(rest[0])
        elif head == "vertices":
            if not rest:
                raise ParseError("expected at least one vertex", lineno, source)
            vertices = rest
        elif head == "arrow":
            if len(rest) != 3:
                raise ParseError("expected 'arrow <id> <src> <tgt>'", lineno, source)
            if vertices is None:
                raise ParseError("arrow declared before vertices", lineno, source)
            for v in rest[1:]:
                if v not in vertices:
                    raise ParseError(f"unknown vertex {v!r}", lineno, source)
            if any(a.name == rest[0] for a in arrows):
                raise ParseError(f"duplicate arrow {rest[0]!r}", lineno, source)
            arrows.append(Arrow(*rest))
        elif head == "nilpotency":
            if len(rest) != 1 or not rest[0].isdigit():
                raise ParseError("expected 'nilpotency <N>'", lineno, source)
            nil = int(rest[0])
        elif head == "relations":
            if rest:
                raise ParseError("'relations' takes no arguments", lineno, source)
            in_rel = True
        else:
            raise ParseError(f"unknown keyword {head!r}", lineno, source)
    if vertices is None:
        raise ParseError("missing 'vertices' line", None, source)
    q = Quiver(vertices, arrows)
    rels = []
    for lineno, line in rel_lines:
        r = _parse_relation(line, q, lineno, source)
        for c, w in r.terms:
            if len(w) < 2:
                raise ParseError(f"relation term {'*'.join(w)} has length < 2", lineno, source)
            try:
                _path_end(q, q.arrow(w[0]).source, w)
            except ValueError as exc:
                raise ParseError(str(exc), lineno, source) from None
        ends = {(q.arrow(w[0]).source, _path_end(q, q.arrow(w[0]).source, w)) for _, w in r.terms}
        if len(ends) != 1:
            raise ParseError(f"relation {line!r} has non-parallel terms", lineno, source)
        rels.append(r)
    if nil is None:
        if not q.is_acyclic():
            raise ParseError("cyclic quiver needs an explicit 'nilpotency' line", None, source)
        nil = q.longest_path() + 1
    if field is None:
        field = FieldSpec(p) if p is not None else FieldSpec()
    try:
        return BoundQuiverAlgebra(q, rels, nil, field, name=name)
    except AdmissibilityError as exc:
        raise AdmissibilityError(f"{source + ': ' if source else ''}{exc}") from None


def serialize_algebra(alg: BoundQuiverAlgebra) -> str:
    lines = [f"field {alg.field.p}", "vertices " + " ".join(alg.quiver.vertices)]
    lines += [f"arrow {a.name} {a.source} {a.target}" for a in alg.quiver.arrows]
    lines.append(f"nilpotency {alg.nilpotency}")
    if alg.relations:
        lines.append("relations")
        lines += [r.text() for r in alg.relations]
    return "\n".join(lines) + "\n"


def same_algebra(a: BoundQuiverAlgebra, b: BoundQuiverAlgebra) -> bool:
    return (
        a.quiver == b.quiver
        and a.nilpotency == b.nilpotency
        and a.field == b.field
        and a.basis == b.basis
        and np.array_equal(a.mult_table, b.mult_table)
    )
