"""Built-in algebras, modules and contexts, and the golden example checks."""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

from .algebra import BoundQuiverAlgebra, Quiver, parse_algebra, path_algebra
from .exactlin import FieldSpec
from .itfun import Budget, phi_report
from .krull import ClassRegistry, default_registry, iso_test
from .morita import (
    Bimodule,
    MoritaContext,
    build_triangular,
    field_algebra,
    pad_T,
    tuple_projective,
    tuple_syzygy_power,
)
from .repcat import Representation, direct_sum

# A loop a at 1, then 1 -b-> 2 -c-> 3; every path of length two is zero.
EXAMPLE_T = """\
vertices 1 2 3
arrow a 1 1
arrow b 1 2
arrow c 2 3
nilpotency 2
relations
a*a
a*b
b*c
"""


def example_T(field: FieldSpec | None = None) -> BoundQuiverAlgebra:
    return parse_algebra(EXAMPLE_T, field, "<example-T>", "T")


def example_modules(T: BoundQuiverAlgebra) -> dict[str, Representation]:
    return {
        "S1": Representation(T, [1, 0, 0]),
        "S2": Representation(T, [0, 1, 0]),
        "S3": Representation(T, [0, 0, 1]),
        "I2": Representation.from_named(T, [1, 1, 0], {"b": [[1]]}),
    }


def example_context(T: BoundQuiverAlgebra | None = None, field: FieldSpec | None = None) -> MoritaContext:
    """Λ = [[T, 0], [T, T]]: the triangular context with M = T."""
    T = T or example_T(field)
    return build_triangular(T, T, Bimodule.regular(T), "example")


def dual_numbers(field: FieldSpec | None = None) -> BoundQuiverAlgebra:
    """K[x]/x²."""
    return parse_algebra("vertices 1\narrow x 1 1\nnilpotency 2\nrelations\nx*x\n", field, "<dual-numbers>", "K[x]/x^2")


def a2_path_algebra(field: FieldSpec | None = None) -> BoundQuiverAlgebra:
    return path_algebra(Quiver(["1", "2"], [("a", "1", "2")]), field or FieldSpec())


def a2_context(field: FieldSpec | None = None) -> MoritaContext:
    """K, K and M = K: its tuples are the representations of 1 -> 2."""
    K = field_algebra(field)
    return build_triangular(K, K, Bimodule.regular(K), "A2")


FIXTURES = {
    "example-T": example_T,
    "dual-numbers": dual_numbers,
    "A2": a2_path_algebra,
}


def a2_cross_validation(field: FieldSpec | None = None, budget: Budget = Budget()) -> list[dict]:
    """Φ, Ψ and pd of the three A₂ indecomposables, computed on both sides.

    One side is the path algebra of 1 -> 2, the other the tuple category of
    the triangular context K, K, M = K; a representation V1 -> V2 is the
    tuple (V1, V2, f).
    """
    path = a2_path_algebra(field)
    ctx = a2_context(field)
    ring = ctx.ring
    reg_p, reg_t = default_registry(path), default_registry(ring)
    pairs = {
        "S1": (Representation(path, [1, 0]), Representation(ring, [1, 0])),
        "S2": (Representation(path, [0, 1]), Representation(ring, [0, 1])),
        "P1": (path.projective(0), tuple_projective(ctx, "T", "1")),
    }
    rows = []
    for name, (x, y) in pairs.items():
        vp = _invariants(x, reg_p, budget)
        vt = _invariants(y, reg_t, budget)
        rows.append({"module": name, "path": vp, "tuple": vt, "agree": vp == vt})
    return rows


def _invariants(x: Representation, reg: ClassRegistry, budget: Budget) -> dict:
    from .itfun import pd, psi

    return {"phi": phi_report(x, reg, budget).value, "psi": psi(x, reg, budget), "pd": str(pd(x, reg, budget))}


@dataclass
class GoldenCheck:
    name: str
    ok: bool
    detail: dict = field(default_factory=dict)


def golden_checks(field: FieldSpec | None = None, corrupt: bool = False, budget: Budget = Budget()) -> list[GoldenCheck]:
    """The worked example: Φ values, the rank trace and the Ω³ isomorphism.

    With ``corrupt`` the module I₂ is replaced by S₁ ⊕ S₂, which must make
    the checks fail.
    """
    t0 = time.perf_counter()
    T = example_T(field)
    mods = example_modules(T)
    S1, I2 = mods["S1"], mods["I2"]
    if corrupt:
        I2 = direct_sum([S1, mods["S2"]])
    ctx = example_context(T)
    ring = ctx.ring
    regT = default_registry(T)
    regL = default_registry(ring)
    out = []

    rt = phi_report(direct_sum([S1, I2]), regT, budget)
    out.append(GoldenCheck("Φ_T(S1⊕I2) = 2", rt.value == 2, {"value": rt.value, "trace": [list(r) for r in rt.trace]}))
    ranks = {k: r for k, r in rt.trace}
    level_ok = ranks.get(1) == 2 and all(r == 1 for k, r in rt.trace if k >= 2) and len(rt.trace) > 2
    out.append(GoldenCheck("rank 2 at level 1, rank 1 from level 2 on", level_ok, {"trace": [list(r) for r in rt.trace]}))

    x = pad_T(ctx, direct_sum([S1, I2]))
    rl = phi_report(x, regL, budget)
    out.append(GoldenCheck("Φ_Λ((S1⊕I2,0,0)) = 3", rl.value == 3, {"value": rl.value, "trace": [list(r) for r in rl.trace]}))

    a3 = tuple_syzygy_power(pad_T(ctx, S1), 3)
    b3 = tuple_syzygy_power(pad_T(ctx, I2), 3)
    P3 = tuple_projective(ctx, "U", "3")
    iso = iso_test(a3, direct_sum([b3, P3]), regL)
    certified = bool(iso) and iso.witness.is_intertwining() and iso.witness.is_iso()
    out.append(GoldenCheck("Ω³(S1,0,0) ≅ Ω³(I2,0,0) ⊕ (0,P3,0)", certified, {"dims": [list(a3.dims), list(b3.dims), list(P3.dims)]}))

    a2 = tuple_syzygy_power(pad_T(ctx, S1), 2)
    b2 = tuple_syzygy_power(pad_T(ctx, I2), 2)
    found = projective_padding_iso(a2, b2, regL, 2)
    out.append(GoldenCheck("Ω²(S1,0,0) and Ω²(I2,0,0) differ for every padding tried", found is None, {"paddings_tried": "up to 2 projectives per side", "hit": found}))
    elapsed = time.perf_counter() - t0
    for c in out:
        c.detail["elapsed_total_s"] = round(elapsed, 3)
    return out


def projective_padding_iso(a: Representation, b: Representation, reg: ClassRegistry, k: int) -> tuple | None:
    """First pair of projective paddings (≤ k summands each) making a ≅ b."""
    pres = a.pres
    projs = [pres.projective(v) for v in range(pres.n_vertices)]
    combos = [c for r in range(k + 1) for c in itertools.combinations_with_replacement(range(len(projs)), r)]
    for ca in combos:
        pa = direct_sum([a] + [projs[v] for v in ca], pres)
        for cb in combos:
            pb = direct_sum([b] + [projs[v] for v in cb], pres)
            if pa.dims != pb.dims:
                continue
            if iso_test(pa, pb, reg):
                return (list(ca), list(cb))
    return None
