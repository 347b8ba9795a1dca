"""Dense linear algebra over a prime field GF(p).

Matrices are plain ``numpy`` int64 arrays whose entries are kept reduced to
``[0, p)``.  Every routine here is exact; there is no floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from sympy import isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_factor

DEFAULT_PRIME = 101
# p**2 * (matrix size) must stay far below 2**63 in int64 matmul
MAX_PRIME = 1 << 20
_EXACT_FLOAT = 1 << 53


@lru_cache(maxsize=None)
def _check_prime(p: int) -> None:
    if not isinstance(p, (int, np.integer)) or p < 2 or not isprime(int(p)):
        raise ValueError(f"field modulus must be a prime, got {p!r}")
    if p > MAX_PRIME:
        raise ValueError(f"field modulus {p} exceeds the supported bound {MAX_PRIME}")


@dataclass(frozen=True)
class FieldSpec:
    """The prime field GF(p)."""

    p: int = DEFAULT_PRIME

    def __post_init__(self) -> None:
        _check_prime(self.p)

    # -- construction -----------------------------------------------------

    def mat(self, entries, rows: int | None = None, cols: int | None = None) -> np.ndarray:
        """Build a reduced matrix from nested lists (or an array).

        ``rows``/``cols`` are only needed to give empty matrices a shape.
        """
        a = np.array(entries, dtype=np.int64)
        if a.size == 0:
            r = rows if rows is not None else (a.shape[0] if a.ndim >= 1 else 0)
            c = cols if cols is not None else (a.shape[1] if a.ndim == 2 else 0)
            return np.zeros((r, c), dtype=np.int64)
        if a.ndim == 1:
            a = a.reshape(1, -1)
        return a % self.p

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        return np.zeros((rows, cols), dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def vec(self, entries) -> np.ndarray:
        return np.array(entries, dtype=np.int64).reshape(-1) % self.p

    # -- arithmetic -------------------------------------------------------

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape[1] == 0 or a.shape[0] == 0 or b.shape[1] == 0:
            return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
        k = a.shape[1]
        if k * (self.p - 1) ** 2 < _EXACT_FLOAT:
            # exact in double precision, and BLAS is far faster than int64 matmul
            return np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64) % self.p
        return (a @ b) % self.p

    def chain(self, *mats: np.ndarray) -> np.ndarray:
        """Product ``mats[0] @ mats[1] @ ...`` reduced mod p."""
        out = mats[0]
        for m in mats[1:]:
            out = self.mul(out, m)
        return out

    def add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return (a + b) % self.p

    def sub(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return (a - b) % self.p

    def scale(self, c: int, a: np.ndarray) -> np.ndarray:
        return (int(c) % self.p * a) % self.p

    def inv_scalar(self, c: int) -> int:
        c = int(c) % self.p
        if c == 0:
            raise ZeroDivisionError("zero has no inverse")
        return pow(c, self.p - 2, self.p)

    def power(self, a: np.ndarray, k: int) -> np.ndarray:
        n = a.shape[0]
        result = self.eye(n)
        base = a.copy()
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    # -- elimination ------------------------------------------------------

    def rref(self, m: np.ndarray) -> tuple[np.ndarray, list[int]]:
        """Reduced row echelon form and the pivot columns.

        Pivot rule: scan columns left to right and take the first row (top to
        bottom) with a nonzero entry.  Output is fully deterministic.
        """
        p = self.p
        a = np.array(m, dtype=np.int64) % p
        rows, cols = a.shape
        pivots: list[int] = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = np.flatnonzero(a[r:, c])
            if nz.size == 0:
                continue
            piv = r + int(nz[0])
            if piv != r:
                a[[r, piv]] = a[[piv, r]]
            inv = pow(int(a[r, c]), p - 2, p)
            a[r] = (a[r] * inv) % p
            col = a[:, c].copy()
            col[r] = 0
            hit = np.flatnonzero(col)
            if hit.size:
                a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
            pivots.append(c)
            r += 1
        return a[:r], pivots

    def rank(self, m: np.ndarray) -> int:
        m = np.asarray(m)
        if m.size == 0:
            return 0
        return len(self.rref(m)[1])

    def nullspace(self, m: np.ndarray) -> np.ndarray:
        """Matrix whose columns form a basis of ``{v : m v = 0}``."""
        return self.nullspace_free(m)[0]

    def nullspace_free(self, m: np.ndarray) -> tuple[np.ndarray, list[int]]:
        """Kernel basis plus the free columns where it carries an identity block."""
        m = np.asarray(m, dtype=np.int64)
        cols = m.shape[1]
        if m.shape[0] == 0:
            return self.eye(cols), list(range(cols))
        red, pivots = self.rref(m)
        piv = set(pivots)
        free = [c for c in range(cols) if c not in piv]
        basis = np.zeros((cols, len(free)), dtype=np.int64)
        for k, fc in enumerate(free):
            basis[fc, k] = 1
            for r, pc in enumerate(pivots):
                basis[pc, k] = (-red[r, fc]) % self.p
        return basis, free

    def kernel_basis(self, m: np.ndarray) -> list[np.ndarray]:
        k = self.nullspace(m)
        return [k[:, i].copy() for i in range(k.shape[1])]

    def solve_many(self, m: np.ndarray, b: np.ndarray) -> np.ndarray | None:
        """Some X with ``m X = b`` or None when the system is inconsistent."""
        m = np.asarray(m, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        rows, cols = m.shape
        if b.ndim == 1:
            b = b.reshape(-1, 1)
        if rows == 0:
            if np.any(b % self.p):
                return None
            return np.zeros((cols, b.shape[1]), dtype=np.int64)
        aug = np.concatenate([m, b], axis=1)
        red, pivots = self.rref(aug)
        if any(pc >= cols for pc in pivots):
            return None
        x = np.zeros((cols, b.shape[1]), dtype=np.int64)
        for r, pc in enumerate(pivots):
            x[pc] = red[r, cols:]
        return x

    def solve(self, m: np.ndarray, b: np.ndarray) -> np.ndarray | None:
        x = self.solve_many(m, np.asarray(b).reshape(-1, 1))
        return None if x is None else x[:, 0]

    def inverse(self, m: np.ndarray) -> np.ndarray | None:
        n = m.shape[0]
        if m.shape != (n, n):
            raise ValueError("inverse of a non-square matrix")
        if n == 0:
            return self.zeros(0, 0)
        red, pivots = self.rref(np.concatenate([m, self.eye(n)], axis=1))
        if pivots[:n] != list(range(n)) or len(pivots) < n or pivots[n - 1] >= n:
            return None
        return red[:, n:]

    def is_invertible(self, m: np.ndarray) -> bool:
        return m.shape[0] == m.shape[1] and self.rank(m) == m.shape[0]

    # -- subspaces --------------------------------------------------------

    def column_basis(self, m: np.ndarray) -> np.ndarray:
        """Columns forming a basis of the column space (reduced echelon)."""
        m = np.asarray(m, dtype=np.int64)
        if m.size == 0:
            return np.zeros((m.shape[0], 0), dtype=np.int64)
        red, _ = self.rref(m.T)
        return red.T.copy()

    def complement_units(self, m: np.ndarray) -> list[int]:
        """Indices of unit vectors spanning a complement of colspace(m).

        These are the non-pivot columns of rref(m^T): greedy in index order.
        """
        n = m.shape[0]
        if m.size == 0:
            return list(range(n))
        _, pivots = self.rref(m.T)
        piv = set(pivots)
        return [i for i in range(n) if i not in piv]

    def quotient_projection(self, m: np.ndarray) -> tuple[np.ndarray, list[int]]:
        """Projection onto ``F^n / colspace(m)`` in standard complement coordinates.

        Returns ``(proj, keep)`` where ``keep`` lists the complement unit
        vectors and ``proj`` is the ``len(keep) x n`` matrix of the quotient map.
        """
        n = m.shape[0]
        if m.size == 0:
            return self.eye(n), list(range(n))
        red, pivots = self.rref(m.T)
        piv = set(pivots)
        keep = [i for i in range(n) if i not in piv]
        proj = np.zeros((len(keep), n), dtype=np.int64)
        pos = {c: k for k, c in enumerate(keep)}
        for c in keep:
            proj[pos[c], c] = 1
        for r, pc in enumerate(pivots):
            proj[:, pc] = (-red[r, keep]) % self.p
        return proj, keep

    def in_span(self, basis: np.ndarray, v: np.ndarray) -> bool:
        if basis.size == 0:
            return not np.any(np.asarray(v) % self.p)
        return self.rank(np.column_stack([basis, v])) == self.rank(basis)

    # -- polynomials (coefficient lists, highest degree first) -----------

    def charpoly(self, m: np.ndarray) -> list[int]:
        """Characteristic polynomial det(tI - m), monic, highest degree first.

        Hessenberg reduction followed by the standard recurrence; valid in
        every characteristic.
        """
        p = self.p
        n = m.shape[0]
        h = [[int(x) % p for x in row] for row in np.asarray(m)]
        for j in range(n - 2):
            piv = next((i for i in range(j + 1, n) if h[i][j]), None)
            if piv is None:
                continue
            if piv != j + 1:
                h[piv], h[j + 1] = h[j + 1], h[piv]
                for row in h:
                    row[piv], row[j + 1] = row[j + 1], row[piv]
            inv = pow(h[j + 1][j], p - 2, p)
            for k in range(j + 2, n):
                u = h[k][j] * inv % p
                if not u:
                    continue
                rk, rj = h[k], h[j + 1]
                for c in range(n):
                    rk[c] = (rk[c] - u * rj[c]) % p
                for row in h:
                    row[j + 1] = (row[j + 1] + u * row[k]) % p
        # polys stored lowest degree first during the recurrence
        polys: list[list[int]] = [[1]]
        for k in range(n):
            prev = polys[-1]
            cur = [0] + prev  # t * prev
            for i, c in enumerate(prev):
                cur[i] = (cur[i] - h[k][k] * c) % p
            prod = 1
            for i in range(k - 1, -1, -1):
                prod = prod * h[i + 1][i] % p
                if not prod:
                    break
                coef = h[i][k] * prod % p
                if coef:
                    for d, c in enumerate(polys[i]):
                        cur[d] = (cur[d] - coef * c) % p
            polys.append(cur)
        return list(reversed(polys[-1]))

    def poly_mul(self, f: list[int], g: list[int]) -> list[int]:
        out = [0] * (len(f) + len(g) - 1)
        for i, a in enumerate(f):
            if a:
                for j, b in enumerate(g):
                    out[i + j] = (out[i + j] + a * b) % self.p
        return out

    def factor(self, f: list[int]) -> list[tuple[list[int], int]]:
        """Monic irreducible factors with multiplicities."""
        if len(f) <= 1:
            return []
        _, facs = gf_factor([int(c) for c in f], self.p, ZZ)
        return [([int(c) for c in g], int(e)) for g, e in facs]

    def poly_eval_matrix(self, f: list[int], m: np.ndarray) -> np.ndarray:
        """Evaluate f(m) by Horner's rule."""
        n = m.shape[0]
        out = self.zeros(n, n)
        eye = self.eye(n)
        for c in f:
            out = (self.mul(out, m) + int(c) * eye) % self.p
        return out

    def roots_with_multiplicity(self, f: list[int]) -> dict[int, int] | None:
        """Roots of f in GF(p) when f splits into linear factors, else None.

        Uses vectorized evaluation for small p and full factoring otherwise.
        """
        p = self.p
        deg = len(f) - 1
        if deg == 0:
            return {}
        if p > 4096:
            facs = self.factor(f)
            if any(len(g) != 2 for g, _ in facs):
                return None
            return {(-g[1]) % p: e for g, e in facs}
        roots: dict[int, int] = {}
        cur = [int(c) % p for c in f]
        xs = np.arange(p, dtype=np.int64)
        while len(cur) > 1:
            vals = np.zeros(p, dtype=np.int64)
            for c in cur:
                vals = (vals * xs + c) % p
            zs = np.flatnonzero(vals == 0)
            if zs.size == 0:
                return None
            for z in zs:
                z = int(z)
                while len(cur) > 1:
                    q, r = _synthetic_division(cur, z, p)
                    if r:
                        break
                    cur = q
                    roots[z] = roots.get(z, 0) + 1
        return roots


def _synthetic_division(f: list[int], z: int, p: int) -> tuple[list[int], int]:
    out = []
    acc = 0
    for c in f:
        acc = (acc * z + c) % p
        out.append(acc)
    return out[:-1], out[-1]


def block_diag(mats: list[np.ndarray]) -> np.ndarray:
    rows = sum(m.shape[0] for m in mats)
    cols = sum(m.shape[1] for m in mats)
    out = np.zeros((rows, cols), dtype=np.int64)
    r = c = 0
    for m in mats:
        out[r : r + m.shape[0], c : c + m.shape[1]] = m
        r += m.shape[0]
        c += m.shape[1]
    return out


def transpose(m: np.ndarray) -> np.ndarray:
    return np.ascontiguousarray(np.asarray(m).T)
