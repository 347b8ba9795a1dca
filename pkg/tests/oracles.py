"""Independent brute-force oracles used by several test files."""

from __future__ import annotations

import numpy as np
from sympy import GF
from sympy.polys.matrices import DomainMatrix


def gf_rank(m: np.ndarray, p: int) -> int:
    if m.size == 0:
        return 0
    K = GF(p)
    return DomainMatrix([[K(int(e)) for e in row] for row in m], m.shape, K).rank()


def hom_dim(x, y) -> int:
    """dim Hom(x, y) by solving the intertwining equations as one linear system."""
    pres, p = x.pres, x.field.p
    offs, n = [], 0
    for v in range(pres.n_vertices):
        offs.append(n)
        n += y.dims[v] * x.dims[v]
    if n == 0:
        return 0
    rows = []
    for a in range(pres.n_arrows):
        s, t = pres.arrow_src[a], pres.arrow_tgt[a]
        xa, ya = x.maps[a], y.maps[a]
        # ya h_s - h_t xa = 0, with h_v stored row-major
        for i in range(y.dims[t]):
            for j in range(x.dims[s]):
                r = np.zeros(n, dtype=np.int64)
                for k in range(y.dims[s]):
                    r[offs[s] + k * x.dims[s] + j] += ya[i, k]
                for k in range(x.dims[t]):
                    r[offs[t] + i * x.dims[t] + k] -= xa[k, j]
                rows.append(r % p)
    if not rows:
        return n
    return n - gf_rank(np.array(rows), p)


def pd_by_resolution(x, limit: int = 40, cap: int = 300):
    """pd from the minimal resolution.

    None when no zero syzygy shows up within ``limit`` steps or the syzygies
    grow past ``cap`` total dimension.
    """
    from glitlab.repcat import is_projective, syzygy

    for k in range(limit):
        if is_projective(x):
            return k
        if x.total_dim > cap:
            return None
        x = syzygy(x)
    return None


def phi_by_syzygies(x, reg, depth: int, cap: int = 300):
    """Φ from honest iterated syzygies of each summand, ranks over ℚ via sympy.

    Returns (value, trace) where trace[k] = rk <Ω^k x_i>; value is the last
    drop of the trace within ``depth``.  None once the syzygies outgrow ``cap``.
    """
    import sympy

    from glitlab.itfun import class_vector
    from glitlab.krull import decompose
    from glitlab.repcat import syzygy

    gens = [reg.rep(c) for c, _ in decompose(x, reg).summands if not reg.is_projective(c)]
    trace = []
    for _ in range(depth + 1):
        vecs = [class_vector(g, reg) for g in gens]
        keys = sorted({k for v in vecs for k in v})
        m = sympy.Matrix([[v.get(k, 0) for k in keys] for v in vecs]) if keys and vecs else sympy.zeros(0, 0)
        trace.append(m.rank() if keys else 0)
        if sum(g.total_dim for g in gens) > cap:
            return None
        gens = [syzygy(g) for g in gens]
    value = max([k for k in range(1, len(trace)) if trace[k] != trace[k - 1]], default=0)
    return value, trace
