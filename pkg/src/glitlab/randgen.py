"""Random bound quiver algebras, modules and Morita contexts for the suites."""

from __future__ import annotations

import numpy as np

from .algebra import AdmissibilityError, BoundQuiverAlgebra, Quiver, Relation, all_paths_of_length, radical_power_quotient
from .exactlin import FieldSpec
from .morita import Bimodule, MoritaContext, validate_context
from .repcat import Representation, direct_sum, generated_submodule, quotient

MAX_VERTICES = 4
MAX_ARROWS = 6


def _rng(rng) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


def random_quiver(rng, max_vertices: int = MAX_VERTICES, max_arrows: int = MAX_ARROWS, loops: bool = True) -> Quiver:
    rng = _rng(rng)
    n = int(rng.integers(1, max_vertices + 1))
    k = int(rng.integers(0 if n == 1 else 1, max_arrows + 1))
    verts = [str(i + 1) for i in range(n)]
    arrows = []
    for a in range(k):
        s, t = (int(x) for x in rng.integers(0, n, size=2))
        if s == t and not loops:
            continue
        arrows.append((f"a{a}", verts[s], verts[t]))
    return Quiver(verts, arrows)


def _extra_relations(q: Quiver, nil: int, rng: np.random.Generator, p: int) -> list[Relation]:
    """A few relations among length-2 paths, when they are shorter than N."""
    if nil < 3:
        return []
    paths = all_paths_of_length(q, 2)
    if not paths:
        return []
    out = []
    for _ in range(int(rng.integers(0, 3))):
        w = paths[int(rng.integers(len(paths)))]
        s, t = q.arrow(w[0]).source, q.arrow(w[-1]).target
        parallel = [u for u in paths if u != w and q.arrow(u[0]).source == s and q.arrow(u[-1]).target == t]
        if parallel and rng.random() < 0.6:
            u = parallel[int(rng.integers(len(parallel)))]
            c = int(rng.integers(1, p))
            out.append(Relation(((1, w), (c, u))))
        else:
            out.append(Relation.monomial(*w))
    return out


def random_algebra(
    rng,
    field: FieldSpec | None = None,
    max_dim: int = 20,
    max_vertices: int = MAX_VERTICES,
    max_arrows: int = MAX_ARROWS,
    tries: int = 200,
) -> BoundQuiverAlgebra:
    """J-adic algebra KQ/(J^N + extras) with N in {2, 3} and dim <= max_dim."""
    rng = _rng(rng)
    field = field or FieldSpec()
    for _ in range(tries):
        q = random_quiver(rng, max_vertices, max_arrows)
        nil = int(rng.choice([2, 3]))
        extra = _extra_relations(q, nil, rng, field.p) if rng.random() < 0.5 else []
        try:
            alg = radical_power_quotient(q, nil, field, extra)
        except AdmissibilityError:
            try:
                alg = radical_power_quotient(q, nil, field)
            except AdmissibilityError:
                continue
        if alg.dim <= max_dim:
            return alg
    raise RuntimeError("could not generate an algebra within the size cap")


def _random_vector(rng: np.random.Generator, n: int, p: int) -> np.ndarray:
    v = rng.integers(0, p, size=n)
    mask = rng.random(n) < 0.5
    v[mask] = 0
    if n and not v.any():
        v[int(rng.integers(n))] = 1
    return v.astype(np.int64)


def _random_elements(x: Representation, rng: np.random.Generator, k: int) -> list[tuple[int, np.ndarray]]:
    verts = [v for v in range(x.pres.n_vertices) if x.dims[v]]
    out = []
    for _ in range(k):
        v = verts[int(rng.integers(len(verts)))]
        out.append((v, _random_vector(rng, x.dims[v], x.field.p)))
    return out


def _projective_sum(pres, rng: np.random.Generator, parts: int) -> Representation:
    vs = rng.integers(0, pres.n_vertices, size=parts)
    return direct_sum([pres.projective(int(v)) for v in vs], pres)


def _one_module(pres, rng: np.random.Generator) -> Representation:
    kind = rng.random()
    if kind < 0.15:
        dims = [0] * pres.n_vertices
        dims[int(rng.integers(pres.n_vertices))] = 1
        return Representation(pres, dims)
    if kind < 0.25:
        return pres.projective(int(rng.integers(pres.n_vertices)))
    P = _projective_sum(pres, rng, int(rng.integers(1, 3)))
    if P.total_dim == 0:
        return P
    elems = _random_elements(P, rng, int(rng.integers(1, 3)))
    sub, inc = generated_submodule(P, elems)
    if kind < 0.45:
        return sub
    return quotient(P, list(inc.mats))[0]


def random_module(pres, rng, max_dim: int = 24, nonzero: bool = True, tries: int = 100) -> Representation:
    """A random module: simples, projectives, quotients and submodules of
    projectives, and direct sums of those."""
    rng = _rng(rng)
    for _ in range(tries):
        parts = [_one_module(pres, rng) for _ in range(int(rng.integers(1, 3)))]
        x = direct_sum(parts, pres) if len(parts) > 1 else parts[0]
        if x.total_dim > max_dim or (nonzero and x.total_dim == 0):
            continue
        return x
    raise RuntimeError("could not generate a module within the size cap")


def random_modules(pres, rng, count: int, max_dim: int = 24) -> list[Representation]:
    rng = _rng(rng)
    return [random_module(pres, rng, max_dim) for _ in range(count)]


def _paths_exist(alg: BoundQuiverAlgebra, u: int, v: int) -> bool:
    return bool(alg.paths_between(u, v))


def random_context(
    rng,
    field: FieldSpec | None = None,
    max_dim: int = 12,
    max_vertices: int = 3,
    max_arrows: int = 4,
    kinds: tuple[str, ...] = ("triangular", "zero-pairing", "product"),
    tries: int = 100,
) -> MoritaContext:
    """Random valid context built from free bimodules ``T e_i ⊗ e_j U``."""
    rng = _rng(rng)
    field = field or FieldSpec()
    for _ in range(tries):
        T = random_algebra(rng, field, max_dim, max_vertices, max_arrows)
        U = random_algebra(rng, field, max_dim, max_vertices, max_arrows) if rng.random() < 0.7 else T
        kind = kinds[int(rng.integers(len(kinds)))]
        if kind == "product":
            ctx = MoritaContext(T, U, None, None, "product")
        else:
            gens = [(int(rng.integers(T.n_vertices)), int(rng.integers(U.n_vertices)))]
            if rng.random() < 0.3:
                gens.append((int(rng.integers(T.n_vertices)), int(rng.integers(U.n_vertices))))
            parts = [Bimodule.free(T, U, i, j, "M") for i, j in gens]
            M = parts[0] if len(parts) == 1 else Bimodule.direct_sum(parts, "M")
            N = None
            if kind == "zero-pairing":
                # M⊗N = 0 needs no path j -> j' in U, N⊗M = 0 none i' -> i in T
                pairs = [
                    (jj, ii)
                    for jj in range(U.n_vertices)
                    for ii in range(T.n_vertices)
                    if not any(_paths_exist(U, j, jj) for _, j in gens)
                    and not any(_paths_exist(T, ii, i) for i, _ in gens)
                ]
                if not pairs:
                    continue
                jj, ii = pairs[int(rng.integers(len(pairs)))]
                N = Bimodule.free(U, T, jj, ii, "N")
            ctx = MoritaContext(T, U, M, N, kind)
        if validate_context(ctx).ok:
            return ctx
    raise RuntimeError("could not generate a valid context")
