"""Command-line front end: threshold queries, figure data tables, verification.

Single queries print one JSON object on stdout and exit 0 (feasible),
2 (valid but infeasible), or 1 (usage error).  Sweeps write CSV with the
fixed header `d,scenario,pointer,quantity,value,feasible`, 12 significant
digits, and LF line endings, so identical flags give byte-identical files.
The `figure` subcommand can additionally render the table to a PNG.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import analytic, oracle
from .mub import (basis_from_label, computational_basis, fourier_basis,
                  incompatibility, quadratic_mub)
from .pointer import BUILTIN_KINDS, PointerModel, load_curve, quality
from .solver import (ScenarioConfig, alt_mub_witness, critical_g1,
                     critical_precision, equal_precision_bounds,
                     isotropic_thresholds, max_observers)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INFEASIBLE = 2

CSV_HEADER = "d,scenario,pointer,quantity,value,feasible"

FIGURE_RECIPES = {
    # figure id -> (scenarios, pointer kinds or None for pointer-free,
    #               quantities, default d range)
    "fig2": (("os1", "ts1"), None, ("G1c",), (2, 100)),
    "fig3": (("os1", "os2"), ("unsharp", "optimal", "square"), ("G2c",), (2, 100)),
    "fig4": (("ts1", "ts2"), ("unsharp", "optimal", "square"), ("G2c",), (2, 100)),
    "fig5": (("os2", "ts2"), ("unsharp", "optimal"), ("p1", "p2"), (2, 100)),
    "fig6": (("os1", "os2"), ("optimal",), ("GL", "GU"), (11, 200)),
}


def _fmt(value: float) -> str:
    return f"{value:.12g}"


def _make_pointer(kind: str, d: int, curve_path) -> PointerModel:
    if kind == "custom":
        if curve_path is None:
            raise SystemExit("custom pointer requires --curve")
        return PointerModel(kind="custom", d=d, curve=load_curve(curve_path))
    return PointerModel(kind=kind, d=d)


def _emit(query: str, args, value, feasible: bool, certificate) -> int:
    obj = {
        "query": query,
        "d": args.d,
        "scenario": getattr(args, "scenario", None),
        "pointer": getattr(args, "pointer", None),
        "n": getattr(args, "n", None),
        "value": value,
        "feasible": feasible,
        "certificate": certificate,
    }
    print(json.dumps(obj))
    return EXIT_OK if feasible else EXIT_INFEASIBLE


def cmd_critical(args) -> int:
    pointer = _make_pointer(args.pointer, args.d, args.curve)
    cfg = ScenarioConfig(scenario=args.scenario, d=args.d, pointer=pointer,
                         p=args.p)
    res = critical_precision(cfg, args.n, args.tol)
    if not res.feasible:
        return _emit("critical", args, None, False, None)
    g = res.require()
    u = analytic.scenario_uncertainty(args.scenario, args.d, g,
                                      list(res.f_chain), args.p)
    cert = {"residual_bits": abs(u - math.log2(args.d)),
            "f_chain": list(res.f_chain)}
    return _emit("critical", args, g, True, cert)


def cmd_observers(args) -> int:
    pointer = _make_pointer(args.pointer, args.d, args.curve)
    cfg = ScenarioConfig(scenario=args.scenario, d=args.d, pointer=pointer,
                         p=args.p)
    n_max = max_observers(cfg)
    levels = [critical_precision(cfg, k).require() for k in range(1, n_max + 1)]
    args.n = n_max
    return _emit("observers", args, n_max, n_max >= 1, {"levels": levels})


def cmd_isotropic(args) -> int:
    pointer = _make_pointer(args.pointer, args.d, args.curve)
    cfg = ScenarioConfig(scenario=args.scenario, d=args.d, pointer=pointer)
    thr = isotropic_thresholds(cfg, args.tol)
    p2 = thr.p2 if math.isfinite(thr.p2) else None
    return _emit("isotropic", args, p2, thr.feasible, {"p1": thr.p1})


def cmd_equal_precision(args) -> int:
    pointer = _make_pointer(args.pointer, args.d, args.curve)
    cfg = ScenarioConfig(scenario=args.scenario, d=args.d, pointer=pointer,
                         p=args.p)
    bounds = equal_precision_bounds(cfg, args.tol)
    if bounds is None:
        return _emit("equal-precision", args, None, False, None)
    g_l, g_u = bounds
    return _emit("equal-precision", args, [g_l, g_u], True,
                 {"width": g_u - g_l})


def _d_values(args, default_range) -> list[int]:
    dmin = args.dmin if args.dmin is not None else default_range[0]
    dmax = args.dmax if args.dmax is not None else default_range[1]
    if dmin < 2 or dmax < dmin:
        raise SystemExit(f"bad dimension range [{dmin}, {dmax}]")
    if args.dlog:
        pts = np.geomspace(dmin, dmax, args.dlog)
        return sorted({int(round(x)) for x in pts})
    return list(range(dmin, dmax + 1))


def _figure_task(task):
    """Compute the rows of one (figure, d, scenario, pointer) cell.

    Module-level so the worker pool can pickle it; the curve is reloaded
    from its path inside the worker.
    """
    fig, d, scenario, kind, curve_path, tol = task
    pointer = _make_pointer(kind or "optimal", d, curve_path)
    cfg = ScenarioConfig(scenario=scenario, d=d, pointer=pointer)
    label = kind if kind else "-"
    rows = []

    def add(quantity, value, feasible):
        val = _fmt(value) if value is not None and math.isfinite(value) else "nan"
        rows.append(f"{d},{scenario},{label},{quantity},{val},"
                    f"{'true' if feasible else 'false'}")

    if fig == "fig2":
        res = critical_g1(cfg, tol)
        add("G1c", res.g_crit, res.feasible)
    elif fig in ("fig3", "fig4"):
        res = critical_precision(cfg, 2, tol)
        add("G2c", res.g_crit if res.feasible else None, res.feasible)
    elif fig == "fig5":
        thr = isotropic_thresholds(cfg, tol)
        add("p1", thr.p1, True)
        add("p2", thr.p2 if math.isfinite(thr.p2) else None, thr.feasible)
    elif fig == "fig6":
        bounds = equal_precision_bounds(cfg, tol)
        if bounds is None:
            add("GL", None, False)
            add("GU", None, False)
        else:
            add("GL", bounds[0], True)
            add("GU", bounds[1], True)
    else:
        raise ValueError(f"unknown figure id {fig!r}")
    return rows


def _plot_rows(rows: list[str], out_path: str, log_x: bool):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    series: dict[str, tuple[list[int], list[float]]] = {}
    for row in rows:
        d, scenario, pointer, quantity, value, feasible = row.split(",")
        if feasible != "true":
            continue
        key = f"{scenario}/{pointer}/{quantity}"
        xs, ys = series.setdefault(key, ([], []))
        xs.append(int(d))
        ys.append(float(value))
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for key in sorted(series):
        xs, ys = series[key]
        ax.plot(xs, ys, marker=".", markersize=3, linewidth=1, label=key)
    if log_x:
        ax.set_xscale("log")
    ax.set_xlabel("d")
    ax.set_ylabel("value")
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)


def cmd_figure(args) -> int:
    if args.id not in FIGURE_RECIPES:
        raise SystemExit(f"unknown figure id {args.id!r}")
    scenarios, kinds, _quantities, default_range = FIGURE_RECIPES[args.id]
    pointer_kinds: tuple = kinds if kinds else (None,)
    if kinds and args.curve:
        pointer_kinds = kinds + ("custom",)
    ds = _d_values(args, default_range)
    tasks = [
        (args.id, d, scenario, kind, args.curve, args.tol)
        for d in ds
        for scenario in scenarios
        for kind in pointer_kinds
    ]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            chunks = list(pool.map(_figure_task, tasks))
    else:
        chunks = [_figure_task(t) for t in tasks]
    rows = [row for chunk in chunks for row in chunk]
    text = CSV_HEADER + "\n" + "\n".join(rows) + "\n"
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.plot:
        _plot_rows(rows, args.plot, log_x=bool(args.dlog))
    return EXIT_OK


def _check(report, name, dev, tol):
    ok = dev <= tol
    report.append((name, dev, ok))
    return ok


def _verify_mub(report, dims, tol):
    for d in dims:
        bases = [computational_basis(d), fourier_basis(d)]
        if d == 2 or d in (3, 5, 7, 11):
            bases.append(quadratic_mub(d, 1))
        dev = 0.0
        for b in bases:
            gram = b.vectors @ b.vectors.conj().T
            dev = max(dev, float(np.max(np.abs(gram - np.eye(d)))))
            projs = b.projectors().projectors
            dev = max(dev, float(np.max(np.abs(projs.sum(axis=0) - np.eye(d)))))
        for i in range(len(bases)):
            for j in range(i + 1, len(bases)):
                ov = np.abs(bases[i].vectors @ bases[j].vectors.conj().T) ** 2
                dev = max(dev, float(np.max(np.abs(ov - 1.0 / d))))
        _check(report, f"mub-invariants d={d}", dev, max(tol, 1e-12))
        pair = (list(bases[0].projectors().projectors),
                list(bases[1].projectors().projectors))
        dev = abs(incompatibility(*pair) - 1.0 / d)
        _check(report, f"incompatibility d={d}", dev, max(tol, 1e-12))


def _verify_pointer(report, dims, tol):
    for d in dims:
        grid = [k / 100 for k in range(101)]
        dev = 0.0
        for kind in BUILTIN_KINDS:
            fs = [quality(kind, d, g) for g in grid]
            dev = max(dev, abs(fs[0] - 1.0))
            dev = max(dev, max(max(b - a, 0.0) for a, b in zip(fs, fs[1:])))
            dev = max(dev, max(max(f * f + g * g - 1.0, 0.0)
                               for f, g in zip(fs, grid)))
        if d == 2:
            dev = max(dev, max(abs(quality("unsharp", 2, g)
                                   - quality("optimal", 2, g)) for g in grid))
        _check(report, f"pointer-invariants d={d}", dev, max(tol, 1e-12))


def _verify_oracle(report, dims, tol):
    g_grid = [0.15, 0.45, 0.75, 0.95]
    for d in dims:
        dev = 0.0
        for scenario in analytic.SCENARIOS:
            for kind in BUILTIN_KINDS:
                pointer = PointerModel(kind=kind, d=d)
                for g in g_grid:
                    for f_list in ((), (pointer.quality(0.6),),
                                   (pointer.quality(0.5), pointer.quality(0.8))):
                        a = analytic.scenario_uncertainty(scenario, d, g, f_list)
                        o = oracle.scenario_uncertainty(scenario, d, g, f_list)
                        dev = max(dev, abs(a - o))
        _check(report, f"oracle-equivalence d={d}", dev, tol)


def _verify_alt_mub(report, tol):
    canonical = alt_mub_witness(3, [("fourier", "computational")],
                                "one-sided", [1.0])
    quad = alt_mub_witness(3, [("quadratic:1", "quadratic:2")],
                           "one-sided", [1.0])
    dev = abs(canonical[0][0] - quad[0][0])
    _check(report, "alt-mub one-sided match d=3", dev, tol)
    ts = alt_mub_witness(3, [("quadratic:1", "quadratic:2")],
                         "two-sided", [1.0])
    _check(report, "alt-mub two-sided fails d=3",
           0.0 if not ts[0][1] else 1.0, 0.5)


def cmd_verify(args) -> int:
    dims = args.d or [2, 3, 5]
    if any(d > oracle.MAX_DIM for d in dims):
        raise SystemExit(f"verify is oracle-backed; d must be <= {oracle.MAX_DIM}")
    report: list[tuple[str, float, bool]] = []
    _verify_mub(report, dims, args.tol)
    _verify_pointer(report, dims, args.tol)
    _verify_oracle(report, dims, args.tol)
    _verify_alt_mub(report, args.tol)
    failures = 0
    for name, dev, ok in report:
        status = "PASS" if ok else "FAIL"
        print(f"{status} {name} max_dev={dev:.3e} tol={args.tol:.1e}")
        failures += 0 if ok else 1
    print(f"{len(report) - failures}/{len(report)} checks passed")
    return EXIT_OK if failures == 0 else EXIT_INFEASIBLE


def _add_common(sub, scenario=True, pointer=True):
    if scenario:
        sub.add_argument("--scenario", required=True,
                         choices=["os1", "os2", "ts1", "ts2"])
    if pointer:
        sub.add_argument("--pointer", default="optimal",
                         choices=["unsharp", "optimal", "square", "custom"])
        sub.add_argument("--curve", help="CSV file with a custom G,F curve")
    sub.add_argument("--tol", type=float, default=1e-9)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entshare",
        description="Entanglement-sharing thresholds for sequential weak "
                    "measurements on two-qudit states.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("critical", help="critical precision of observer n")
    _add_common(p)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--p", type=float, default=1.0)
    p.set_defaults(handler=cmd_critical)

    p = subs.add_parser("observers", help="maximum number of sharing observers")
    _add_common(p)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--p", type=float, default=1.0)
    p.set_defaults(handler=cmd_observers)

    p = subs.add_parser("isotropic", help="isotropic mixing thresholds p1, p2")
    _add_common(p)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(handler=cmd_isotropic)

    p = subs.add_parser("equal-precision",
                        help="equal-precision sharing window (G_L, G_U)")
    _add_common(p)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--p", type=float, default=1.0)
    p.set_defaults(handler=cmd_equal_precision)

    p = subs.add_parser("figure", help="emit a figure data table as CSV")
    p.add_argument("id", choices=sorted(FIGURE_RECIPES))
    p.add_argument("--dmin", type=int)
    p.add_argument("--dmax", type=int)
    p.add_argument("--dlog", type=int, default=0,
                   help="number of log-spaced d samples (0 = every integer)")
    p.add_argument("--curve", help="CSV file with a custom G,F curve")
    p.add_argument("--out", help="output CSV path (default stdout)")
    p.add_argument("--plot", help="optionally render the table to this PNG")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(handler=cmd_figure)

    p = subs.add_parser("verify", help="oracle-vs-closed-form verification")
    p.add_argument("--d", type=int, action="append",
                   help="dimension to verify (repeatable; default 2 3 5)")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(handler=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.handler(args)
    except (ValueError, OSError, SystemExit) as exc:
        if isinstance(exc, SystemExit):
            print(str(exc), file=sys.stderr)
        else:
            print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
