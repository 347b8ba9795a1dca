"""Command-line front end.

Every command builds a JSON-shaped report; ``--format human`` renders the
same report as indented text.  Exit codes: 0 success, 1 a check or
verification failed, 2 bad input, 3 a budget was exhausted.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import __version__
from .algebra import AdmissibilityError, ParseError, Quiver, ResourceLimit, serialize_algebra
from .exactlin import FieldSpec
from .itfun import Budget, BudgetExhausted, DescriptorError, pd, phi_report, psi_report
from .krull import configure_defaults, decompose, default_registry
from .glit import NoSequence, WitnessError
from .repcat import RelationViolation, direct_sum, syzygy

WitnessFailure = (WitnessError, NoSequence)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


@dataclass
class RunConfig:
    p: int
    seed: int
    split_budget: int
    max_depth: int
    max_classes: int
    fmt: str
    jobs: int

    @property
    def field(self) -> FieldSpec:
        return FieldSpec(self.p)

    @property
    def budget(self) -> Budget:
        return Budget(max_classes=self.max_classes, max_depth=self.max_depth)

    def header(self) -> dict:
        return {
            "p": self.p,
            "seed": self.seed,
            "budgets": {"split": self.split_budget, "depth": self.max_depth, "classes": self.max_classes},
            "version": __version__,
            "scope": "family-level",
        }


class CheckFailed(Exception):
    """Raised by commands whose report is complete but records a failure."""

    def __init__(self, report: dict):
        super().__init__("check failed")
        self.report = report


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be a non-negative integer")
    return v


def _config(args) -> RunConfig:
    seed = args.seed
    if seed is None:
        env = os.environ.get("GLITLAB_SEED")
        try:
            seed = int(env) if env is not None else 0
        except ValueError:
            raise ParseError(f"GLITLAB_SEED must be an integer, got {env!r}") from None
    return RunConfig(args.field, seed, args.budget_split, args.budget_depth, args.budget_classes, args.format, args.jobs)


def _loader(cfg: RunConfig):
    from .formats import Loader

    return Loader(cfg.field)


def _sum(mods, pres):
    return direct_sum(mods, pres) if len(mods) > 1 else mods[0]


def _load_modules(cfg: RunConfig, alg_path: str, mod_paths: list[str]):
    ld = _loader(cfg)
    alg = ld.algebra(alg_path)
    return alg, [ld.module(m, alg) for m in mod_paths]


# -- commands ---------------------------------------------------------------------


def cmd_phi(cfg: RunConfig, args) -> dict:
    alg, mods = _load_modules(cfg, args.algebra, args.modules)
    reg = default_registry(alg)
    rep = phi_report(_sum(mods, alg), reg, cfg.budget)
    return {"command": "phi", "dims": [list(m.dims) for m in mods], **rep.as_dict(reg)}


def cmd_psi(cfg: RunConfig, args) -> dict:
    alg, mods = _load_modules(cfg, args.algebra, args.modules)
    reg = default_registry(alg)
    rep = psi_report(_sum(mods, alg), reg, cfg.budget)
    return {
        "command": "psi",
        "psi": rep.value,
        "phi": rep.phi,
        "findim_tail": rep.findim.value,
        "tainted": rep.tainted,
        "certified": not rep.tainted,
        "tail_classes": rep.tail_classes,
    }


def cmd_pd(cfg: RunConfig, args) -> dict:
    alg, mods = _load_modules(cfg, args.algebra, args.modules)
    reg = default_registry(alg)
    rows = []
    for path, m in zip(args.modules, mods):
        r = pd(m, reg, cfg.budget)
        rows.append({"file": os.path.basename(path), "dims": list(m.dims), "pd": str(r), "kind": r.kind})
    report = {"command": "pd", "modules": rows}
    if any(r["kind"] == "unknown" for r in rows):
        raise BudgetExhausted(json.dumps(report, sort_keys=True))
    return report


def cmd_resolve(cfg: RunConfig, args) -> dict:
    alg, mods = _load_modules(cfg, args.algebra, [args.module])
    x = mods[0]
    chain = [{"k": 0, "dims": list(x.dims)}]
    for k in range(1, args.steps + 1):
        x = syzygy(x)
        chain.append({"k": k, "dims": list(x.dims)})
        if x.total_dim == 0:
            break
    return {"command": "resolve", "chain": chain}


def cmd_decompose(cfg: RunConfig, args) -> dict:
    alg, mods = _load_modules(cfg, args.algebra, [args.module])
    reg = default_registry(alg)
    dec = decompose(mods[0], reg)
    out = {
        "command": "decompose",
        "dims": list(mods[0].dims),
        "summands": [
            {"class": c, "multiplicity": m, "dims": list(reg.rep(c).dims), "projective": reg.is_projective(c)}
            for c, m in dec.summands
        ],
        "witness_is_iso": dec.witness.is_iso(),
    }
    if args.dump_registry:
        from .formats import dump_registry

        with open(args.dump_registry, "w", encoding="utf-8") as fh:
            fh.write(dump_registry(reg))
        out["registry_file"] = args.dump_registry
    return out


def cmd_paper_example(cfg: RunConfig, args) -> dict:
    from .fixtures import golden_checks

    checks = golden_checks(cfg.field, corrupt=args.corrupt, budget=cfg.budget)
    report = {
        "command": "paper-example",
        "corrupted_fixture": args.corrupt,
        "checks": [{"name": c.name, "ok": c.ok, **{k: v for k, v in c.detail.items() if k != "elapsed_total_s"}} for c in checks],
        "ok": all(c.ok for c in checks),
    }
    if not report["ok"]:
        raise CheckFailed(report)
    return report


def cmd_suite(cfg: RunConfig, args) -> dict:
    from .suites import run_suite

    rep = run_suite(args.name, args.count, cfg.seed, cfg.p, cfg.budget, cfg.jobs)
    report = {"command": "suite", **rep.as_dict()}
    if rep.failed:
        raise CheckFailed(report)
    if not rep.ok:
        raise BudgetExhausted(json.dumps(report, sort_keys=True))
    return report


def _ring_summary(ctx) -> dict:
    from .morita import validate_context

    ring = ctx.ring
    val = validate_context(ctx)
    return {
        "context": ctx.name,
        "triangular": ctx.triangular,
        "vertices": list(ring.vertex_names),
        "arrows": len(ring.arrow_names),
        "dim": ring.dim,
        "projective_dims": {ring.vertex_names[v]: list(ring.projective(v).dims) for v in range(ring.n_vertices)},
        "M_dim": ctx.M.total,
        "N_dim": ctx.N.total,
        "checks": val.checks,
        "valid": val.ok,
    }


def cmd_triangular_build(cfg: RunConfig, args) -> dict:
    from .morita import Bimodule, build_triangular

    ld = _loader(cfg)
    T, U = ld.algebra(args.T), ld.algebra(args.U)
    if args.free:
        try:
            parts = [Bimodule.free(T, U, T.vertex(i), U.vertex(j), "M") for i, j in args.free]
        except (KeyError, ValueError) as exc:
            raise ParseError(f"bad vertex in --free: {exc}") from None
        M = parts[0] if len(parts) == 1 else Bimodule.direct_sum(parts, "M")
    else:
        if T is not U:
            raise ParseError("the regular bimodule needs T and U to be the same file; use --free i j")
        M = Bimodule.regular(T, "M")
    ctx = build_triangular(T, U, M, "triangular")
    report = {"command": "triangular-build", **_ring_summary(ctx)}
    if not report["valid"]:
        raise CheckFailed(report)
    return report


def cmd_tensor_build(cfg: RunConfig, args) -> dict:
    from .morita import build_tensor_path, validate_context

    ld = _loader(cfg)
    T = ld.algebra(args.algebra)
    verts = args.vertices
    arrows = [tuple(a) for a in (args.arrow or [])]
    try:
        Q = Quiver(verts, arrows)
    except (KeyError, ValueError) as exc:
        raise ParseError(f"bad quiver: {exc}") from None
    b = build_tensor_path(T, Q)
    report = {
        "command": "tensor-build",
        "flat_dim": b.flat.dim,
        "expected_dim": T.dim * sum(sum(r) for r in b.d_table),
        "order": b.order,
        "d_table": b.d_table,
        "tower": [{"level": k + 1, "ring_dim": c.ring.dim, "valid": validate_context(c).ok} for k, c in enumerate(b.tower)],
    }
    report["ok"] = report["flat_dim"] == report["expected_dim"] and all(t["valid"] for t in report["tower"])
    if args.write_flat:
        with open(args.write_flat, "w", encoding="utf-8") as fh:
            fh.write(serialize_algebra(b.flat))
        report["flat_file"] = args.write_flat
    if not report["ok"]:
        raise CheckFailed(report)
    return report


def _load_witness(cfg: RunConfig, path: str):
    from .glit import make_witness

    ld = _loader(cfg)
    spec = ld.witness_spec(path)
    reg = default_registry(spec.pres)
    w = make_witness(spec.n, spec.t, spec.V, spec.D, reg, cfg.budget, kind="file")
    return ld, spec, w


def _load_samples(ld, pres, paths: list[str]):
    if hasattr(pres, "ctx"):
        return [ld.tuple_module(p, pres.ctx) for p in paths]
    return [ld.module(p, pres) for p in paths]


def _verify_all(w, samples, paths) -> tuple[list[dict], bool]:
    rows, ok = [], True
    for path, x in zip(paths, samples):
        r = w.verify(x)
        ok = ok and r.ok
        rows.append({"file": os.path.basename(path), **r.as_dict()})
    return rows, ok


def cmd_glit_verify(cfg: RunConfig, args) -> dict:
    ld, spec, w = _load_witness(cfg, args.witness)
    samples = _load_samples(ld, spec.pres, args.modules)
    rows, ok = _verify_all(w, samples, args.modules)
    report = {"command": "glit-verify", "witness": w.summary(), "samples": rows, "ok": ok}
    if not ok:
        raise CheckFailed(report)
    return report


def cmd_glit_shift(cfg: RunConfig, args) -> dict:
    from .glit import shift_witness

    ld, spec, w = _load_witness(cfg, args.witness)
    s = shift_witness(w, args.to, cfg.budget)
    samples = _load_samples(ld, spec.pres, args.modules)
    rows, ok = _verify_all(s, samples, args.modules)
    report = {"command": "glit-shift", "witness": s.summary(), "samples": rows, "ok": ok}
    if not ok:
        raise CheckFailed(report)
    return report


def cmd_glit_assemble(cfg: RunConfig, args) -> dict:
    from .glit import assemble_morita_witness, restrict_witness

    ld = _loader(cfg)
    ctx = ld.context(args.context)
    _, _, wT = _load_witness_over(cfg, ld, args.t_witness, ctx.T)
    _, _, wU = _load_witness_over(cfg, ld, args.u_witness, ctx.U)
    wL = assemble_morita_witness(ctx, wT, wU, cfg.budget)
    samples = [ld.tuple_module(p, ctx) for p in args.tuples]
    rows, ok = _verify_all(wL, samples, args.tuples)
    report = {"command": "glit-assemble", "witness": wL.summary(), "samples": rows}
    if args.restrict:
        rT, rU = restrict_witness(ctx, wL, cfg.budget)
        report["restricted"] = {"T": rT.summary(), "U": rU.summary()}
    report["ok"] = ok
    if not ok:
        raise CheckFailed(report)
    return report


def _load_witness_over(cfg: RunConfig, ld, path: str, pres):
    from .glit import make_witness

    spec = ld.witness_spec(path, pres)
    if spec.pres is not pres:
        raise ParseError("witness is over a different algebra than the context expects", None, path)
    w = make_witness(spec.n, spec.t, spec.V, spec.D, default_registry(pres), cfg.budget, kind="file")
    return ld, spec, w


def cmd_findim_bound(cfg: RunConfig, args) -> dict:
    from .glit import findim_bound

    ld, spec, w = _load_witness(cfg, args.witness)
    samples = _load_samples(ld, spec.pres, args.modules)
    audit = findim_bound(w, samples, cfg.budget)
    report = {"command": "findim-bound", "witness": w.summary(), **audit.as_dict()}
    if not audit.ok:
        raise CheckFailed(report)
    return report


# -- parser and dispatch ------------------------------------------------------------


def _common_options(top: bool) -> argparse.ArgumentParser:
    # Subcommands repeat the options without defaults, so a value given
    # before the subcommand is not overwritten.
    def d(v):
        return v if top else argparse.SUPPRESS

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=int, default=d(101), help="prime modulus p (default 101)")
    common.add_argument("--seed", type=int, default=d(None), help="rng seed (falls back to GLITLAB_SEED, then 0)")
    common.add_argument("--budget-split", type=_positive, default=d(64), help="random End-samples per split attempt")
    common.add_argument("--budget-depth", type=_positive, default=d(256), help="syzygy depth cap for pd and Φ")
    common.add_argument("--budget-classes", type=_positive, default=d(10000), help="cap on explored iso-classes")
    common.add_argument("--format", choices=("human", "json"), default=d("human"))
    common.add_argument("--jobs", type=_positive, default=d(1), help="worker processes for suites")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options(top=False)

    ap = argparse.ArgumentParser(prog="glitlab", description=__doc__.splitlines()[0], parents=[_common_options(top=True)])
    ap.add_argument("--version", action="version", version=f"glitlab {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_, parents=[common])
        p.set_defaults(fn=fn)
        return p

    for name, fn, help_ in (
        ("phi", cmd_phi, "Φ of the direct sum of modules, with the rank trace"),
        ("psi", cmd_psi, "Ψ of the direct sum of modules"),
        ("pd", cmd_pd, "projective dimension of each module"),
    ):
        p = add(name, fn, help_)
        p.add_argument("algebra")
        p.add_argument("modules", nargs="+")
    p = add("resolve", cmd_resolve, "syzygy chain with dimension vectors")
    p.add_argument("algebra")
    p.add_argument("module")
    p.add_argument("-k", "--steps", type=_nonneg, default=4)
    p = add("decompose", cmd_decompose, "indecomposable summands with multiplicities")
    p.add_argument("algebra")
    p.add_argument("module")
    p.add_argument("--dump-registry", metavar="FILE")
    p = add("paper-example", cmd_paper_example, "run the built-in worked example")
    p.add_argument("--corrupt", action="store_true", help="negative control: corrupt the fixture")
    p = add("suite", cmd_suite, "run a randomized property suite")
    from .suites import SUITES

    p.add_argument("name", choices=sorted(SUITES))
    p.add_argument("--count", type=_nonneg, default=100)
    p = add("triangular-build", cmd_triangular_build, "build [[T, 0], [M, U]] and report its structure")
    p.add_argument("T")
    p.add_argument("U")
    p.add_argument("--free", nargs=2, action="append", metavar=("I", "J"), help="add a free summand T e_I ⊗ e_J U to M")
    p = add("tensor-build", cmd_tensor_build, "build T ⊗ KQ for an acyclic quiver Q")
    p.add_argument("algebra")
    p.add_argument("--vertices", nargs="+", required=True)
    p.add_argument("--arrow", nargs=3, action="append", metavar=("NAME", "SRC", "TGT"))
    p.add_argument("--write-flat", metavar="FILE")
    for name, fn, help_ in (
        ("glit-verify", cmd_glit_verify, "verify a witness on sample modules"),
        ("findim-bound", cmd_findim_bound, "fin.dim bound from a witness, audited on samples"),
    ):
        p = add(name, fn, help_)
        p.add_argument("witness")
        p.add_argument("modules", nargs="*")
    p = add("glit-shift", cmd_glit_shift, "shift a witness to a larger n and verify")
    p.add_argument("witness")
    p.add_argument("--to", type=_nonneg, required=True)
    p.add_argument("modules", nargs="*")
    p = add("glit-assemble", cmd_glit_assemble, "assemble a Morita-ring witness from T- and U-witnesses")
    p.add_argument("context")
    p.add_argument("t_witness")
    p.add_argument("u_witness")
    p.add_argument("tuples", nargs="*")
    p.add_argument("--restrict", action="store_true", help="also restrict the result back to T and U")
    return ap


def render_human(obj, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v and not _flat_list(v):
                lines.append(f"{pad}{k}:")
                lines.append(render_human(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and not _flat_list(v):
                lines.append(f"{pad}-")
                lines.append(render_human(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(pad + _scalar(obj))
    return "\n".join(lines)


def _flat_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(e, dict) for e in v) and all(
        not isinstance(e, list) or all(not isinstance(f, (list, dict)) for f in e) for e in v
    )


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(e) for e in v) + "]"
    if isinstance(v, dict) and not v:
        return "{}"
    return str(v)


def _emit(cfg: RunConfig | None, report: dict, stream=None) -> None:
    stream = stream or sys.stdout
    fmt = cfg.fmt if cfg is not None else "json"
    if fmt == "json":
        stream.write(json.dumps(report, sort_keys=True, ensure_ascii=False, default=str) + "\n")
    else:
        stream.write(render_human(report) + "\n")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        FieldSpec(cfg.p)
    except (ParseError, ValueError) as exc:
        sys.stderr.write(f"glitlab: error: {exc}\n")
        return EXIT_INPUT
    configure_defaults(cfg.seed, cfg.split_budget)
    base = cfg.header()
    try:
        report = args.fn(cfg, args)
    except CheckFailed as exc:
        _emit(cfg, {**base, **exc.report, "status": "fail"})
        return EXIT_FAIL
    except WitnessFailure as exc:
        _emit(cfg, {**base, "command": args.command, "status": "fail", "error": str(exc)})
        return EXIT_FAIL
    except BudgetExhausted as exc:
        _emit(cfg, {**base, "command": args.command, "status": "budget-exhausted", "error": str(exc)})
        return EXIT_BUDGET
    except (ParseError, RelationViolation, AdmissibilityError, ResourceLimit, DescriptorError, KeyError, ValueError, OSError) as exc:
        sys.stderr.write(f"glitlab: error: {exc}\n")
        return EXIT_INPUT
    _emit(cfg, {**base, **report, "status": "ok"})
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
