"""Command-line entry point.

Subcommands: run (one flow per config), sweep (many configs concurrently),
check-identities (integral identity and inequality suites on the corpus),
sphere-table (calibration export), validate-f (speed-function checks).

Exit codes: 0 success, 1 check failure, 2 usage or validation error,
3 numerical failure (step rejection or loss of the positive cone).
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import fields
from pathlib import Path

import numpy as np

from . import config as cfgmod
from . import io as iomod
from . import quermass, verify
from .curvature import CurvatureFunctionSpec, validate_assumptions
from .errors import ConfigError, HoroflowError, NotHoroConvex
from .flow import run as flow_run
from .geometry import build_geometry
from .shapes import build_corpus

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="run configuration file (key = value lines)")
    for f in fields(cfgmod.RunConfig):
        if f.type == "bool" or isinstance(f.default, bool):
            p.add_argument(f"--{f.name}", choices=["true", "false"], default=None)
        else:
            p.add_argument(f"--{f.name}", default=None)


def _load_config(args: argparse.Namespace) -> cfgmod.RunConfig:
    if args.config:
        config = cfgmod.parse(Path(args.config).read_text())
    else:
        config = cfgmod.RunConfig(outputDir=iomod.default_output_dir())
    for f in fields(cfgmod.RunConfig):
        raw = getattr(args, f.name, None)
        if raw is None:
            continue
        if isinstance(f.default, bool):
            setattr(config, f.name, raw == "true")
        elif isinstance(f.default, int):
            setattr(config, f.name, int(raw))
        elif isinstance(f.default, float):
            setattr(config, f.name, float(raw))
        else:
            setattr(config, f.name, raw)
    cfgmod.validate(config)
    return config


def _execute_run(config: cfgmod.RunConfig) -> int:
    root = iomod.prepare_run_dir(config)
    snap_index = {"i": 0}

    def on_snapshot(t, curve):
        iomod.write_snapshot(root / "snapshots" / f"{snap_index['i']:06d}.snap", curve, t)
        snap_index["i"] += 1

    with iomod.SeriesWriter(root / "series.csv", config.n) as writer:
        count = {"i": 0}

        def on_record(rec):
            if count["i"] % config.outputEvery == 0:
                writer.write(rec)
            count["i"] += 1

        traj = flow_run(config, on_record=on_record, on_snapshot=on_snapshot)

    report = verify.verify_monotonicity(traj, config.k)
    report.provenance["run_id"] = cfgmod.run_id(config)
    report.provenance["N"] = config.N
    report.provenance["F"] = f"H_{config.k}/H_{config.k - 1}"
    (root / "verdict.txt").write_text(report.render())
    print(report.render(), end="")
    print(f"artifacts: {root}")
    if traj.reason in ("StepFailure", "OutsideGamma"):
        return EXIT_NUMERICAL
    return EXIT_OK if report.all_pass else EXIT_CHECK_FAILED


def _cmd_run(args: argparse.Namespace) -> int:
    try:
        config = _load_config(args)
    except (ConfigError, NotHoroConvex, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return _execute_run(config)
    except NotHoroConvex as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def _sweep_one(path: str) -> tuple[str, int]:
    try:
        config = cfgmod.parse(Path(path).read_text())
    except (ConfigError, OSError) as exc:
        print(f"{path}: error: {exc}", file=sys.stderr)
        return path, EXIT_USAGE
    try:
        return path, _execute_run(config)
    except NotHoroConvex as exc:
        print(f"{path}: error: {exc}", file=sys.stderr)
        return path, EXIT_USAGE


def _cmd_sweep(args: argparse.Namespace) -> int:
    if not args.configs:
        print("error: sweep needs at least one config file", file=sys.stderr)
        return EXIT_USAGE
    worst = EXIT_OK
    with ProcessPoolExecutor(max_workers=args.jobs) as pool:
        for path, code in pool.map(_sweep_one, args.configs):
            print(f"{path}: exit {code}")
            worst = max(worst, code)
    return worst


def _cmd_check_identities(args: argparse.Namespace) -> int:
    lines = []
    ok = True

    for member in build_corpus():
        geom = build_geometry(member.curve)
        n = member.curve.n
        for k in range(1, n + 1):
            res = quermass.hsiung_minkowski_residual(geom, k)
            good = abs(res) < args.identity_tol
            ok &= good
            lines.append(
                f"hsiung-minkowski {member.label} k={k} residual={res:.3e} "
                f"{'pass' if good else 'FAIL'}"
            )
        gap = quermass.heintze_karcher_gap(geom)
        good = gap >= -1e-8 and (not member.is_sphere or abs(gap) < 1e-6)
        ok &= good
        lines.append(
            f"heintze-karcher {member.label} gap={gap:.3e} {'pass' if good else 'FAIL'}"
        )

    rng = np.random.default_rng(args.seed)
    for n in (2, 3, 4):
        kappa = 10.0 ** rng.uniform(-1.0, 1.0, size=(args.samples, n))
        worst = 0.0
        for row in kappa:
            from .curvature import h_k

            H = [h_k(row, j) for j in range(n + 1)]
            for k in range(1, n):
                worst = max(worst, (H[k - 1] * H[k + 1] - H[k] ** 2) / H[k] ** 2)
        good = worst <= 1e-12
        ok &= good
        lines.append(
            f"newton-maclaurin n={n} samples={args.samples} worst={worst:.3e} "
            f"{'pass' if good else 'FAIL'}"
        )

    text = "\n".join(lines) + f"\noverall {'PASS' if ok else 'FAIL'}\n"
    print(text, end="")
    if args.out:
        Path(args.out).write_text(text)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def _cmd_sphere_table(args: argparse.Namespace) -> int:
    rhos = np.linspace(args.rho_min, args.rho_max, args.count)
    table = quermass.calibration_table(args.n, rhos)
    if args.out:
        Path(args.out).write_text(table)
    else:
        print(table, end="")
    return EXIT_OK


def _cmd_validate_f(args: argparse.Namespace) -> int:
    spec = CurvatureFunctionSpec.quotient(args.n, args.k)
    report = validate_assumptions(spec, samples=args.samples, seed=args.seed)
    print(report.render(), end="")
    if args.out:
        Path(args.out).write_text(report.render())
    return EXIT_OK if report.all_pass else EXIT_CHECK_FAILED


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="horoflow",
        description="Numerical laboratory for locally constrained inverse "
        "curvature flows on hemisphere hypersurfaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute one flow run")
    _add_config_flags(p_run)

    p_sweep = sub.add_parser("sweep", help="execute many configs concurrently")
    p_sweep.add_argument("configs", nargs="*", help="config files")
    p_sweep.add_argument("--jobs", type=int, default=None)

    p_chk = sub.add_parser("check-identities", help="identity suites on the corpus")
    p_chk.add_argument("--samples", type=int, default=10000)
    p_chk.add_argument("--seed", type=int, default=0)
    p_chk.add_argument("--identity-tol", type=float, default=1e-6)
    p_chk.add_argument("--out", default=None)

    p_tab = sub.add_parser("sphere-table", help="export the sphere calibration table")
    p_tab.add_argument("--n", type=int, default=2)
    p_tab.add_argument("--count", type=int, default=64)
    p_tab.add_argument("--rho-min", type=float, default=0.05)
    p_tab.add_argument("--rho-max", type=float, default=1.5)
    p_tab.add_argument("--out", default=None)

    p_val = sub.add_parser("validate-f", help="structural checks on a speed function")
    p_val.add_argument("--n", type=int, default=2)
    p_val.add_argument("--k", type=int, default=1)
    p_val.add_argument("--samples", type=int, default=1000)
    p_val.add_argument("--seed", type=int, default=0)
    p_val.add_argument("--out", default=None)

    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0

    handlers = {
        "run": _cmd_run,
        "sweep": _cmd_sweep,
        "check-identities": _cmd_check_identities,
        "sphere-table": _cmd_sphere_table,
        "validate-f": _cmd_validate_f,
    }
    try:
        return handlers[args.command](args)
    except HoroflowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
