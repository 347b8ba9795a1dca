"""Text formats for modules, tuples, contexts, witnesses and registry dumps.

All formats are line oriented, ``#`` starts a comment, and file references
are resolved relative to the referring file.  Matrices are given as rows of
integers, one row per line, immediately after their header line.

Module::

    module over T.alg
    dims 1:1 2:1 3:0
    map b
    1

Tuple (a module over the Morita ring of a context)::

    tuple over example.ctx
    A
    dims 1:1 2:1 3:0
    map b
    1
    B
    dims 1:0 2:0 3:0
    f 0        # the matrix of basis vector 0 of M, from A to B
    g 0        # likewise for N, from B to A

Context::

    context example
    T T.alg
    U T.alg
    bimodule M left=T right=U regular
    bimodule N left=U right=T zero

A bimodule line ends in ``regular``, ``zero``, ``free i j [i j ...]``, or
nothing, in which case explicit data follows: ``dims i,j:d ...`` then
``left <arrow>`` and ``right <arrow>`` blocks with full action matrices.

Witness::

    glit n=1 t=1
    over T.alg
    V: regular
    D: S1.mod I2.mod
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .algebra import BoundQuiverAlgebra, ParseError, parse_algebra
from .exactlin import FieldSpec
from .krull import ClassRegistry
from .morita import Bimodule, MoritaContext, first, second
from .repcat import PresentationBase, Representation, validate


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _int_row(line: str, lineno: int, source: str | None) -> list[int]:
    try:
        return [int(t) for t in line.split()]
    except ValueError:
        raise ParseError(f"expected a row of integers, got {line!r}", lineno, source) from None


class _Reader:
    def __init__(self, text: str, source: str | None):
        self.items = list(_lines(text))
        self.pos = 0
        self.source = source

    def peek(self):
        return self.items[self.pos] if self.pos < len(self.items) else (None, None)

    def next(self):
        item = self.peek()
        self.pos += 1
        return item

    def fail(self, msg: str, lineno: int | None = None):
        raise ParseError(msg, lineno, self.source)

    def matrix(self, rows: int, cols: int, lineno: int) -> np.ndarray:
        out = []
        for _ in range(rows):
            ln, line = self.next()
            if line is None:
                self.fail(f"matrix ended early: expected {rows} rows", lineno)
            row = _int_row(line, ln, self.source)
            if len(row) != cols:
                self.fail(f"expected {cols} entries per row, got {len(row)}", ln)
            out.append(row)
        return np.array(out, dtype=np.int64).reshape(rows, cols)


def _parse_dims(tokens: list[str], names: set[str], lineno: int, source: str | None, prefix: str = "") -> dict[str, int]:
    out = {}
    for tok in tokens:
        v, sep, d = tok.rpartition(":")
        if not sep or not d.isdigit():
            raise ParseError(f"expected <vertex>:<dim>, got {tok!r}", lineno, source)
        if prefix + v not in names:
            raise ParseError(f"unknown vertex {v!r}", lineno, source)
        out[prefix + v] = int(d)
    return out


def _module_body(rd: _Reader, pres: PresentationBase, dims: dict[str, int], stop: set[str], vprefix: str = "", aprefix: str = "") -> dict[str, np.ndarray]:
    """Read ``dims`` and ``map`` lines until a line starting with a word in ``stop``."""
    maps: dict[str, np.ndarray] = {}
    names = set(pres.vertex_names)
    while True:
        lineno, line = rd.peek()
        if line is None or line.split()[0] in stop:
            return maps
        rd.next()
        head, *rest = line.split()
        if head == "dims":
            dims.update(_parse_dims(rest, names, lineno, rd.source, vprefix))
        elif head == "map":
            if len(rest) != 1:
                rd.fail("expected 'map <arrow>'", lineno)
            name = aprefix + rest[0]
            if name not in pres.arrow_ids:
                rd.fail(f"unknown arrow {rest[0]!r}", lineno)
            a = pres.arrow_ids[name]
            rows = dims.get(pres.vertex_names[pres.arrow_tgt[a]], 0)
            cols = dims.get(pres.vertex_names[pres.arrow_src[a]], 0)
            maps[name] = rd.matrix(rows, cols, lineno)
        else:
            rd.fail(f"unexpected line {line!r}", lineno)


def parse_module(text: str, pres: PresentationBase, source: str | None = None) -> Representation:
    rd = _Reader(text, source)
    lineno, line = rd.peek()
    if line is not None and line.split()[0] == "module":
        rd.next()
    dims: dict[str, int] = {}
    maps = _module_body(rd, pres, dims, set())
    x = Representation.from_named(pres, dims, maps)
    try:
        validate(x)
    except ValueError as exc:
        raise ParseError(f"not a module: {exc}", None, source) from None
    return x


def _matrix_lines(m: np.ndarray) -> list[str]:
    return [" ".join(str(int(v)) for v in row) for row in m]


def serialize_module(x: Representation, over: str | None = None) -> str:
    pres = x.pres
    lines = [f"module over {over}"] if over else []
    lines.append("dims " + " ".join(f"{v}:{d}" for v, d in zip(pres.vertex_names, x.dims)))
    for a, name in enumerate(pres.arrow_names):
        m = x.maps[a]
        if m.size and np.any(m):
            lines.append(f"map {name}")
            lines += _matrix_lines(m)
    return "\n".join(lines) + "\n"


def parse_tuple(text: str, ctx: MoritaContext, source: str | None = None) -> Representation:
    ring = ctx.ring
    rd = _Reader(text, source)
    lineno, line = rd.peek()
    if line is not None and line.split()[0] in ("tuple", "module"):
        rd.next()
    dims: dict[str, int] = {}
    maps: dict[str, np.ndarray] = {}
    stop = {"A", "B", "f", "g"}
    maps.update(_module_body(rd, ring, dims, stop))
    while True:
        lineno, line = rd.next()
        if line is None:
            break
        head, *rest = line.split()
        if head in ("A", "B"):
            pre = "T:" if head == "A" else "U:"
            maps.update(_module_body(rd, ring, dims, stop, pre, pre))
        elif head in ("f", "g"):
            if len(rest) != 1 or not rest[0].isdigit():
                rd.fail(f"expected '{head} <basis index>'", lineno)
            name = ("mu" if head == "f" else "nu") + rest[0]
            if name not in ring.arrow_ids:
                rd.fail(f"basis index {rest[0]} out of range", lineno)
            a = ring.arrow_ids[name]
            rows = dims.get(ring.vertex_names[ring.arrow_tgt[a]], 0)
            cols = dims.get(ring.vertex_names[ring.arrow_src[a]], 0)
            maps[name] = rd.matrix(rows, cols, lineno)
        else:
            rd.fail(f"unexpected line {line!r}", lineno)
    x = Representation.from_named(ring, dims, maps)
    try:
        validate(x)
    except ValueError as exc:
        raise ParseError(f"not a tuple module: {exc}", None, source) from None
    return x


def serialize_tuple(x: Representation, over: str | None = None) -> str:
    ring = x.pres
    lines = [f"tuple over {over}"] if over else []
    for head, comp in (("A", first(x)), ("B", second(x))):
        lines.append(head)
        lines += serialize_module(comp).splitlines()
    for head, lo, total in (("f", ring.mu0, ring.ctx.M.total), ("g", ring.nu0, ring.ctx.N.total)):
        for k in range(total):
            m = x.maps[lo + k]
            if m.size and np.any(m):
                lines.append(f"{head} {k}")
                lines += _matrix_lines(m)
    return "\n".join(lines) + "\n"


def _parse_bimodule(rd: _Reader, head_line: str, lineno: int, algs: dict[str, BoundQuiverAlgebra]) -> tuple[str, Bimodule]:
    toks = head_line.split()
    if len(toks) < 4:
        rd.fail("expected 'bimodule <name> left=<X> right=<Y> ...'", lineno)
    name = toks[1]
    opts = dict(t.split("=", 1) for t in toks[2:4] if "=" in t)
    try:
        left, right = algs[opts["left"]], algs[opts["right"]]
    except KeyError:
        rd.fail("bimodule needs left= and right= naming T or U", lineno)
    rest = toks[4:]
    if rest == ["zero"]:
        return name, Bimodule.zero(left, right, name)
    if rest == ["regular"]:
        if left is not right:
            rd.fail("regular bimodule needs left and right to be the same algebra", lineno)
        return name, Bimodule.regular(left, name)
    if rest and rest[0] == "free":
        pairs = rest[1:]
        if not pairs or len(pairs) % 2:
            rd.fail("expected 'free <i> <j> [<i> <j> ...]'", lineno)
        try:
            parts = [Bimodule.free(left, right, left.vertex(pairs[k]), right.vertex(pairs[k + 1]), name) for k in range(0, len(pairs), 2)]
        except (KeyError, ValueError) as exc:
            rd.fail(f"bad vertex in free bimodule: {exc}", lineno)
        return name, parts[0] if len(parts) == 1 else Bimodule.direct_sum(parts, name)
    if rest:
        rd.fail(f"unknown bimodule kind {' '.join(rest)!r}", lineno)
    dims: dict[tuple[int, int], int] = {}
    lact: dict[int, np.ndarray] = {}
    ract: dict[int, np.ndarray] = {}
    total = None
    while True:
        ln, line = rd.peek()
        if line is None or line.split()[0] in ("bimodule", "T", "U", "context"):
            break
        rd.next()
        h, *args = line.split()
        if h == "dims":
            for tok in args:
                pair, sep, d = tok.rpartition(":")
                i, sep2, j = pair.partition(",")
                if not sep or not sep2 or not d.isdigit():
                    rd.fail(f"expected <i>,<j>:<dim>, got {tok!r}", ln)
                try:
                    dims[(left.vertex(i), right.vertex(j))] = int(d)
                except (KeyError, ValueError):
                    rd.fail(f"unknown vertex in {tok!r}", ln)
        elif h in ("left", "right"):
            if total is None:
                total = sum(dims.values())
            alg, store = (left, lact) if h == "left" else (right, ract)
            if len(args) != 1 or args[0] not in alg.arrow_ids:
                rd.fail(f"unknown arrow in {line!r}", ln)
            store[alg.arrow_ids[args[0]]] = rd.matrix(total, total, ln)
        else:
            rd.fail(f"unexpected line {line!r}", ln)
    return name, Bimodule(left, right, dims, lact, ract, name)


class Loader:
    """Loads files, caching algebras and contexts by resolved path.

    Modules referring to the same algebra file share one algebra object,
    which the rest of the library requires.
    """

    def __init__(self, field: FieldSpec | None = None):
        self.field = field
        self.algebras: dict[str, BoundQuiverAlgebra] = {}
        self.contexts: dict[str, MoritaContext] = {}

    @staticmethod
    def _read(path: str) -> str:
        try:
            with open(path, encoding="utf-8") as fh:
                return fh.read()
        except OSError as exc:
            raise ParseError(f"cannot read file: {exc.strerror}", None, path) from None

    @staticmethod
    def _resolve(ref: str, base: str | None) -> str:
        if base and not os.path.isabs(ref):
            ref = os.path.join(os.path.dirname(base), ref)
        return os.path.abspath(ref)

    def algebra(self, path: str) -> BoundQuiverAlgebra:
        key = os.path.abspath(path)
        if key not in self.algebras:
            name = os.path.splitext(os.path.basename(path))[0]
            self.algebras[key] = parse_algebra(self._read(path), self.field, path, name)
        return self.algebras[key]

    def _header_ref(self, path: str, text: str, words: tuple[str, ...]) -> str | None:
        for lineno, line in _lines(text):
            toks = line.split()
            if toks[0] in words and len(toks) == 3 and toks[1] == "over":
                return self._resolve(toks[2], path)
            return None
        return None

    def module(self, path: str, pres: PresentationBase | None = None) -> Representation:
        text = self._read(path)
        if pres is None:
            ref = self._header_ref(path, text, ("module",))
            if ref is None:
                raise ParseError("module file lacks 'module over <algebra>' and no algebra was given", 1, path)
            pres = self.algebra(ref)
        return parse_module(text, pres, path)

    def context(self, path: str) -> MoritaContext:
        key = os.path.abspath(path)
        if key in self.contexts:
            return self.contexts[key]
        rd = _Reader(self._read(path), path)
        name = os.path.splitext(os.path.basename(path))[0]
        algs: dict[str, BoundQuiverAlgebra] = {}
        bms: dict[str, Bimodule] = {}
        while True:
            lineno, line = rd.next()
            if line is None:
                break
            head, *rest = line.split()
            if head == "context":
                if rest:
                    name = rest[0]
            elif head in ("T", "U"):
                if len(rest) != 1:
                    rd.fail(f"expected '{head} <algebra file>'", lineno)
                algs[head] = self.algebra(self._resolve(rest[0], path))
            elif head == "bimodule":
                if "T" not in algs or "U" not in algs:
                    rd.fail("declare T and U before the bimodules", lineno)
                bname, bm = _parse_bimodule(rd, line, lineno, algs)
                if bname not in ("M", "N"):
                    rd.fail("bimodules must be named M or N", lineno)
                bms[bname] = bm
            else:
                rd.fail(f"unexpected line {line!r}", lineno)
        if "T" not in algs or "U" not in algs:
            rd.fail("context needs both T and U")
        ctx = MoritaContext(algs["T"], algs["U"], bms.get("M"), bms.get("N"), name)
        self.contexts[key] = ctx
        return ctx

    def tuple_module(self, path: str, ctx: MoritaContext | None = None) -> Representation:
        text = self._read(path)
        if ctx is None:
            ref = self._header_ref(path, text, ("tuple", "module"))
            if ref is None:
                raise ParseError("tuple file lacks 'tuple over <context>' and no context was given", 1, path)
            ctx = self.context(ref)
        return parse_tuple(text, ctx, path)

    def witness_spec(self, path: str, pres: PresentationBase | None = None) -> WitnessSpec:
        rd = _Reader(self._read(path), path)
        n = t = None
        V: list[Representation] = []
        D: list[Representation] = []
        pending: list[tuple[str, list[str], int]] = []
        for lineno, line in rd.items:
            head, *rest = line.split()
            if head == "glit":
                try:
                    kv = dict(tok.split("=", 1) for tok in rest)
                    n, t = int(kv["n"]), int(kv["t"])
                except (ValueError, KeyError):
                    rd.fail("expected 'glit n=<n> t=<t>'", lineno)
            elif head == "over":
                if len(rest) != 1:
                    rd.fail("expected 'over <algebra or context file>'", lineno)
                ref = self._resolve(rest[0], path)
                pres = self.context(ref).ring if ref.endswith(".ctx") else self.algebra(ref)
            elif head in ("V:", "D:"):
                pending.append((head, rest, lineno))
            else:
                rd.fail(f"unexpected line {line!r}", lineno)
        if n is None:
            rd.fail("missing 'glit n=<n> t=<t>' header")
        if pres is None:
            rd.fail("missing 'over <file>' line")
        for head, refs, lineno in pending:
            for ref in refs:
                if ref == "regular":
                    x = pres.regular_module()
                else:
                    full = self._resolve(ref, path)
                    text = self._read(full)
                    x = parse_tuple(text, pres.ctx, full) if hasattr(pres, "ctx") else parse_module(text, pres, full)
                (V if head == "V:" else D).append(x)
        return WitnessSpec(n, t, V, D, pres)


@dataclass
class WitnessSpec:
    n: int
    t: int
    V: list[Representation]
    D: list[Representation]
    pres: PresentationBase


def serialize_witness_spec(n: int, t: int, over: str, V: list[str], D: list[str]) -> str:
    return f"glit n={n} t={t}\nover {over}\nV: {' '.join(V)}\nD: {' '.join(D)}\n"


def dump_registry(reg: ClassRegistry) -> str:
    """Every class with its representative, in module format."""
    out = []
    for cid in range(len(reg)):
        kind = "projective" if reg.is_projective(cid) else "nonprojective"
        out.append(f"class {cid} {kind}")
        out += serialize_module(reg.rep(cid)).splitlines()
        out.append("end")
    return "\n".join(out) + "\n"


def load_registry(text: str, pres: PresentationBase, seed: int = 0, source: str | None = None) -> ClassRegistry:
    """Rebuild a registry from a dump; class ids follow the dump's order."""
    from .krull import decompose

    reg = ClassRegistry(pres, seed)
    block: list[str] = []
    cid = None
    for lineno, line in _lines(text):
        head = line.split()[0]
        if head == "class":
            cid = int(line.split()[1])
            block = []
        elif head == "end":
            x = parse_module("\n".join(block), pres, source)
            got = decompose(x, reg).summands
            if len(got) != 1 or got[0][1] != 1:
                raise ParseError(f"class {cid} representative is not indecomposable", lineno, source)
            if got[0][0] != cid:
                raise ParseError(f"class {cid} duplicates class {got[0][0]}", lineno, source)
        else:
            block.append(line)
    return reg
