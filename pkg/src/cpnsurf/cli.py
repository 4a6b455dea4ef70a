"""``cpnsurf verify|surface|scan``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from collections import defaultdict

import numpy as np

from . import export, minkowski as mk, spectral as sp
from .chain import build_chain
from .config import ConfigError, ModelConfig, parse_config
from .linalg import matrix_poly_residual
from .suite import run_suite, reports_to_json, suite_exit_code
from .surfaces import minimal_poly_roots

log = logging.getLogger("cpnsurf")

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON model configuration")
    common.add_argument("--n", type=int, help="dimension N of CP^{N-1}")
    common.add_argument("--curve", help="curve kind (veronese, or polynomial with coefficients in --config)")
    common.add_argument("--sheet", help="sheet index k or 'all'")
    common.add_argument("--seed", type=int)
    common.add_argument("--tolerance", type=float)
    common.add_argument("--out", help="output file (verify, scan) or directory (surface)")

    p = argparse.ArgumentParser(prog="cpnsurf", description="Projector chains and soliton surfaces of CP^{N-1} models")
    sub = p.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", parents=[common], help="run the identity suite")
    v.add_argument("--filter", default="", help="case id prefix")
    v.add_argument("--samples", type=int, help="samples per case")
    sub.add_parser("surface", parents=[common], help="export X_k on a grid")
    s = sub.add_parser("scan", parents=[common], help="parameter scans")
    s.add_argument("--kind", required=True, choices=["st-lambda", "fg-kappa", "mixed-constraint"])
    return p


def build_config(args: argparse.Namespace) -> ModelConfig:
    data = {}
    if args.config:
        with open(args.config) as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"cannot parse {args.config}: {exc}") from None
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
    if args.n is not None:
        data["n"] = args.n
    if args.curve is not None:
        curve = data.get("curve", {})
        curve = dict(curve) if isinstance(curve, dict) else {}
        curve["kind"] = args.curve
        data["curve"] = curve
    if args.sheet is not None:
        data["sheet"] = "all" if args.sheet == "all" else _int(args.sheet, "sheet")
    if args.seed is not None:
        data["seed"] = args.seed
    if args.tolerance is not None:
        data["tolerance"] = args.tolerance
    if getattr(args, "samples", None) is not None:
        data["samples"] = args.samples
    return parse_config(data)


def _int(text: str, name: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ConfigError(f"{name} must be an integer or 'all'") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        export.write_atomic(out, text)
    else:
        sys.stdout.write(text)


def cmd_verify(cfg: ModelConfig, filter: str, out: str | None) -> int:
    reports = run_suite(filter, cfg.seed, cfg.samples, ns=(cfg.n,), curve=cfg.curve.build(cfg.n),
                        tolerance=cfg.tolerance)
    _emit(reports_to_json(reports), out)
    groups: dict[str, list] = defaultdict(list)
    for r in reports:
        groups[r.anchor].append(r)
    for anchor, rs in sorted(groups.items()):
        ok = all(r.expected_outcome for r in rs)
        print(f"{'PASS' if ok else 'FAIL'}  {anchor}  ({len(rs)} cases)", file=sys.stderr)
    print(f"{len(reports)} cases in {len(groups)} groups", file=sys.stderr)
    return suite_exit_code(reports)


def cmd_surface(cfg: ModelConfig, out: str | None) -> int:
    if cfg.space != "euclidean":
        raise ConfigError("surface export needs space = euclidean")
    outdir = out or "."
    tol = cfg.tolerance if cfg.tolerance is not None else 1e-9
    curve = cfg.curve.build(cfg.n)
    g = cfg.grid
    status = EXIT_OK
    for k in cfg.sheets():
        pts, xs = export.surface_grid(curve, k, g.center, g.radius, g.resolution)
        roots = minimal_poly_roots(k, cfg.n)
        worst = max(matrix_poly_residual(x, roots) for x in xs)
        if worst > tol:
            log.error("sheet %d: minimal polynomial residual %.3e exceeds %.1e", k, worst, tol)
            status = EXIT_FAIL
        stem = os.path.join(outdir, f"surface_n{cfg.n}_k{k}")
        export.write_atomic(stem + ".csv", export.grid_to_csv(pts, xs))
        if cfg.n == 2:
            export.write_atomic(stem + ".obj", export.grid_to_obj(xs, g.resolution))
        else:
            export.write_atomic(stem + ".preview.obj", export.pca_preview_obj(xs, g.resolution))
        print(f"sheet {k}: {len(pts)} points -> {stem}.csv", file=sys.stderr)
    return status


def cmd_scan(cfg: ModelConfig, kind: str, out: str | None) -> int:
    s = cfg.spectral
    if kind == "fg-kappa":
        if abs(s.lam.imag) > 0:
            raise ConfigError("fg-kappa needs a real lambda")
        model = mk.rotating_wave_profile(s.omega, kappa=s.kappa, lam=s.lam.real, c2=s.c2, c3=s.c3)
        grid = np.round(np.arange(-3.0, 3.0 + 0.005, 0.01), 10)
        rows = mk.kappa_coincidence_scan(model, grid)
        cols = ["kappa", "lambda", "ratio_residual", "direction_residual", "fitted_c1"]
        best = min(rows, key=lambda r: r["ratio_residual"])
        print(f"min ratio residual {best['ratio_residual']:.3e} at kappa = {best['kappa']}", file=sys.stderr)
    else:
        chain = build_chain(cfg.curve.build(cfg.n), cfg.grid.center, order=2)
        if kind == "st-lambda":
            rows = []
            for k in cfg.sheets():
                for r in sp.st_lambda_scan(chain, k, s.tau):
                    rows.append({"sheet": k, **r})
            cols = ["sheet", "lambda_re", "lambda_im", "distance", "antihermitian", "pole"]
            for k in cfg.sheets():
                live = [r for r in rows if r["sheet"] == k and not r["pole"]]
                best = min(live, key=lambda r: r["distance"])
                print(f"sheet {k}: min distance {best['distance']:.3e} at lambda = "
                      f"{complex(best['lambda_re'], best['lambda_im'])}", file=sys.stderr)
        else:
            sheets = [k for k in cfg.sheets() if 1 <= k <= cfg.n - 2]
            if not sheets:
                raise ConfigError(f"no mixed sheet (1 <= k <= N-2) selected for N={cfg.n}")
            rows = []
            for k in sheets:
                rows += [{"sheet": k, **r} for r in sp.st_mixed_constraint_scan(chain, k, s.tau)]
            cols = ["sheet", "lambda_im", "residual_matrix", "residual_sextic", "pole"]
    _emit(export.rows_to_csv(rows, cols), out)
    return EXIT_OK


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = _parser().parse_args(argv)
    try:
        cfg = build_config(args)
        export.thread_cap()
        if args.command == "verify":
            return cmd_verify(cfg, args.filter, args.out)
        if args.command == "surface":
            return cmd_surface(cfg, args.out)
        return cmd_scan(cfg, args.kind, args.out)
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as exc:
        if "CPNSURF_THREADS" in str(exc):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_CONFIG
        raise


if __name__ == "__main__":
    sys.exit(main())
