"""Command-line surface: spectrum, walk, marked, verify.

Site labels are 1-based everywhere.  Exit codes: 0 success, 2 usage error,
3 numerical-verification failure, 1 runtime failure (overflow etc.).
Run configurations can be given as flags or via ``--config file.json``;
explicit flags win over the config file.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import List, Optional, Sequence

import numpy as np

from . import __version__, dynamics, spectral
from .dynamics import TimeGrid, WalkResult
from .errors import PermwalkError
from .fock import OccupationState, enumerate_sector
from .hamiltonians import FAMILIES, ModelSpec


class UsageError(Exception):
    pass


def _parse_sites(text: str) -> List[int]:
    toks = [t for t in text.replace("|", ",").replace(" ", ",").split(",") if t]
    try:
        return [int(t) for t in toks]
    except ValueError:
        raise UsageError(f"cannot parse site tuple {text!r}")


def _parse_floats(text: str) -> List[float]:
    try:
        return [float(t) for t in text.split(",") if t]
    except ValueError:
        raise UsageError(f"cannot parse number list {text!r}")


def _fmt_float(x: float) -> str:
    return f"{x:.12g}"


def _model_from_args(args, config: dict) -> ModelSpec:
    model_cfg = dict(config.get("model", {}))
    if args.family is not None:
        model_cfg["family"] = args.family
    if args.n is not None:
        model_cfg["N"] = args.n
    if getattr(args, "k", None) is not None:
        model_cfg["k"] = args.k
        model_cfg.pop("down", None)
    if getattr(args, "down", None) is not None:
        model_cfg["down"] = args.down
        model_cfg.pop("k", None)
    if getattr(args, "beta", None) is not None:
        model_cfg["beta"] = args.beta
    if getattr(args, "p", None) is not None:
        model_cfg["p"] = args.p
    if getattr(args, "cycle_type", None) is not None:
        model_cfg["cycle_type"] = [int(t) for t in args.cycle_type.split(",")]
        model_cfg.pop("p", None)
    if "family" not in model_cfg or "N" not in model_cfg:
        raise UsageError("a model needs at least --family and --n")
    try:
        return ModelSpec.from_json_dict(model_cfg)
    except (ValueError, KeyError) as exc:
        raise UsageError(str(exc))


def _load_config(path: Optional[str]) -> dict:
    if not path:
        return {}
    with open(path) as fh:
        return json.load(fh)


def _grid_from_args(args, config: dict) -> TimeGrid:
    grid_cfg = dict(config.get("grid", {}))
    if args.t_start is not None:
        grid_cfg["t_start"] = args.t_start
    if args.t_end is not None:
        grid_cfg["t_end"] = args.t_end
    if args.points is not None:
        grid_cfg["n_points"] = args.points
    return TimeGrid.from_json_dict(grid_cfg)


def _write_output(text: str, path: Optional[str]):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_spectrum(args) -> int:
    config = _load_config(args.config)
    model = _model_from_args(args, config)
    op = model.build()
    levels = spectral.numeric_spectrum(op)
    out = dict(model.to_json_dict())
    out["levels"] = [{"e": e, "mult": m} for e, m in levels]
    if model.family == "hopping" and 1 <= model.sector <= model.n_sites - 1:
        summary = spectral.analytic_spectrum(model.n_sites, model.sector)
        out["analytic"] = summary.to_json_dict()["levels"]
    _write_output(json.dumps(out, indent=2) + "\n", args.output)
    return 0


def _closed_form_walk(model: ModelSpec, initial: List[int], grid: TimeGrid,
                      oracle: WalkResult) -> WalkResult:
    """Analytic probability table for the hopping model, k in {1, 2}."""
    n, k = model.n_sites, model.sector
    if model.family != "hopping" or k not in (1, 2):
        raise UsageError("--closed-form needs the hopping family with k = 1 or 2")
    times = grid.times
    basis = enumerate_sector(n, k)
    probs = np.empty((grid.n_points, basis.dim))
    if k == 1:
        start = initial[0]
        for t_idx, t in enumerate(times):
            u = dynamics.propagator_1fermion(n, float(t)).to_dense()
            probs[t_idx] = np.abs(u[:, start - 1]) ** 2
    else:
        i, j = sorted(initial)
        for idx in range(basis.dim):
            kk, ll = basis.state_at(idx).sites
            amp = np.array([dynamics.amplitude_2fermion(i, j, kk, ll, n, float(t))
                            for t in times])
            probs[:, idx] = np.abs(amp) ** 2
    return WalkResult(grid, oracle.labels, probs)


def cmd_walk(args) -> int:
    config = _load_config(args.config)
    model = _model_from_args(args, config)
    grid = _grid_from_args(args, config)

    initial = _parse_sites(args.initial) if args.initial is not None \
        else [int(s) for s in config.get("initial", [])]
    if not initial:
        raise UsageError("an initial site tuple is required (--initial)")
    n = model.n_sites
    if len(set(initial)) != len(initial) or not all(1 <= s <= n for s in initial):
        raise UsageError(f"initial sites must be distinct and within 1..{n}")
    if model.sector and model.sector != len(initial):
        raise UsageError(f"initial tuple has {len(initial)} sites but the sector is k={model.sector}")
    model = ModelSpec(model.family, n, len(initial), beta=model.beta,
                      cycle_type=model.cycle_type)

    basis = model.basis()
    h = model.build(basis=basis)
    psi0 = basis.ket(initial)
    result = dynamics.evolve_oracle(h, psi0, grid)

    footers = []
    if args.closed_form:
        closed = _closed_form_walk(model, initial, grid, result)
        deviation = float(np.max(np.abs(closed.probs - result.probs)))
        footers.append(f"closed-form max deviation vs oracle = {deviation:.3e}")
        result = closed

    targets = args.targets if args.targets is not None else config.get("targets", "all")
    if targets == "all":
        selected = result
    elif targets in ("shared", "shared-support"):
        init = set(initial)
        keep = [s.label() for s in basis
                if len(init & set(s.sites)) >= len(initial) - 1]
        selected = result.select(keep)
    else:
        labels = targets if isinstance(targets, list) else [t for t in targets.split(",") if t]
        try:
            selected = result.select(labels)
        except ValueError:
            raise UsageError(f"unknown target label among {labels}")

    fmt = args.format if args.format is not None else config.get("output", {}).get("format", "csv")
    path = args.output if args.output is not None else config.get("output", {}).get("path")
    if fmt == "csv":
        _write_output(selected.to_csv(footer_comments=footers), path)
    elif fmt == "json":
        payload = selected.to_json_dict()
        payload["model"] = model.to_json_dict()
        if footers:
            payload["comments"] = footers
        _write_output(json.dumps(payload) + "\n", path)
    else:
        raise UsageError(f"unknown format {fmt!r}")
    return 0


def cmd_marked(args) -> int:
    config = _load_config(args.config)
    if args.n is None:
        raise UsageError("--n is required")
    betas = _parse_floats(args.betas) if args.betas else [0.0, 0.05, 1.0]
    grid = _grid_from_args(args, config)
    times = grid.times
    labels = []
    columns = []
    for beta in betas:
        tag = _fmt_float(beta)
        labels.append(f"p11@beta={tag}")
        columns.append(np.asarray(dynamics.marked_p11(args.n, beta, times)))
        labels.append(f"p22@beta={tag}")
        columns.append(dynamics.marked_p22(args.n, beta, grid))
    result = WalkResult(grid, labels, np.column_stack(columns))
    _write_output(result.to_csv(), args.output)
    return 0


def cmd_verify(args) -> int:
    from .verify import run_checks

    t0 = time.perf_counter()
    results = run_checks(args.level)
    for r in results:
        print(r.line())
    elapsed = time.perf_counter() - t0
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed "
          f"in {elapsed:.1f}s at level {args.level!r}")
    return 3 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permwalk",
        description="Exact permutation-symmetric fermionic quantum walks")
    parser.add_argument("--version", action="version", version=f"permwalk {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_model_flags(p):
        p.add_argument("--family", choices=FAMILIES)
        p.add_argument("--n", type=int, help="number of sites N")
        p.add_argument("--k", type=int, help="fermion number of the sector")
        p.add_argument("--down", type=int, help="down-spin count (xxx_spin)")
        p.add_argument("--beta", type=float, help="marked-site coupling")
        p.add_argument("--p", type=int, help="class_sum: pure p-cycle class")
        p.add_argument("--cycle-type", help="class_sum: partition like 3,2,1")
        p.add_argument("--config", help="RunConfig JSON file")
        p.add_argument("--output", help="output path (default stdout)")

    def add_grid_flags(p):
        p.add_argument("--t-start", type=float)
        p.add_argument("--t-end", type=float)
        p.add_argument("--points", type=int)

    p_spec = sub.add_parser("spectrum", help="eigenvalues with multiplicities")
    add_model_flags(p_spec)
    p_spec.set_defaults(func=cmd_spectrum)

    p_walk = sub.add_parser("walk", help="probability table of one walk")
    add_model_flags(p_walk)
    add_grid_flags(p_walk)
    p_walk.add_argument("--initial", help="start sites, e.g. 5 or 10,15")
    p_walk.add_argument("--targets", help="all | shared | comma-separated labels")
    p_walk.add_argument("--format", choices=("csv", "json"))
    p_walk.add_argument("--closed-form", action="store_true",
                        help="use the analytic law and report the oracle deviation")
    p_walk.set_defaults(func=cmd_walk)

    p_marked = sub.add_parser("marked", help="p11/p22 series of the marked model")
    p_marked.add_argument("--n", type=int)
    p_marked.add_argument("--betas", help="comma-separated couplings, e.g. 0,0.05,1")
    p_marked.add_argument("--config")
    p_marked.add_argument("--output")
    add_grid_flags(p_marked)
    p_marked.set_defaults(func=cmd_marked)

    p_verify = sub.add_parser("verify", help="run the numerical invariant suites")
    p_verify.add_argument("--level", choices=("quick", "full"), default="quick")
    p_verify.set_defaults(func=cmd_verify)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses 2 for usage errors, 0 for --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PermwalkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
