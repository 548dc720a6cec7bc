"""Batch driver: threshold tables, sequence generation, constructions,
verification, transforms, indicator sweeps, interpolation runs, and the
acceptance suite.

Every output file starts from the run configuration and a seed, carries a
provenance header (tool version, config hash, seed), and is byte-identical
across reruns of the same configuration.  Exit codes: 0 all requested checks
passed, 1 a check failed, 2 configuration error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from . import acceptance as acc
from . import asymptotics as asy
from . import constructions as con
from . import fourier
from . import interpolation as itp
from . import pauli_verify as pv
from . import thresholds as th
from .entire_models import ProductModel
from .sequences import SampledSet, SmoothSpec, generate_smooth


def max_threads() -> int:
    """Parallelism cap from PAULI_LAB_THREADS (default 1)."""
    try:
        return max(1, int(os.environ.get("PAULI_LAB_THREADS", "1")))
    except ValueError:
        return 1


def _config_hash(args: argparse.Namespace) -> str:
    # output destinations are excluded so identical runs stay byte-identical
    skip = {"func", "out", "out_dir"}
    payload = {k: v for k, v in sorted(vars(args).items()) if k not in skip}
    digest = hashlib.sha256(repr(payload).encode()).hexdigest()
    return digest[:12]


def _provenance_line(args: argparse.Namespace, seed) -> str:
    return f"# pauli-lab {__version__} config={_config_hash(args)} seed={seed}\n"


def _write(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _parse_range(spec: str) -> np.ndarray:
    """start:stop:step with inclusive stop (within half a step)."""
    try:
        start, stop, step = (float(tok) for tok in spec.split(":"))
    except ValueError as exc:
        raise SystemExit(2) from exc
    if step <= 0:
        raise SystemExit(2)
    n = int(np.floor((stop - start) / step + 0.5)) + 1
    return start + step * np.arange(n)


def _fmt(x: float) -> str:
    return f"{x:.17g}"


# -- subcommands ---------------------------------------------------------------


def cmd_thresholds(args) -> int:
    grid = _parse_range(args.a_grid)
    lines = [_provenance_line(args, 0)]
    lines.append("A,c1,c2,pauli_threshold,uniqueness_time,uniqueness_freq\n")
    for a in grid:
        if not 0 < a < 1:
            continue
        d1, d2 = th.uniqueness_density_bounds(th.DecayParams(a, a))
        lines.append(",".join(_fmt(v) for v in (
            a, th.one_sided_threshold(a), th.weak_pair_threshold(a),
            th.pauli_threshold(a), d1, d2)) + "\n")
    _write(args.out, "".join(lines))
    return 0


def cmd_gen_seq(args) -> int:
    spec = SmoothSpec(p=args.p, density=args.density, count=args.count,
                      jitter=args.jitter, seed=args.seed, halves=args.halves)
    sampled = generate_smooth(spec)
    text = _provenance_line(args, args.seed) + sampled.to_csv()
    _write(args.out, text)
    return 0


def _load_set(path: str) -> SampledSet:
    return SampledSet.from_csv(Path(path).read_text())


def cmd_construct(args) -> int:
    lam = (_load_set(args.lam) if args.lam else
           generate_smooth(SmoothSpec(p=2.0, density=args.density, count=args.count,
                                      jitter=args.jitter, seed=args.seed,
                                      halves="+" if args.kind == "freq-matched" else "±")))
    if args.kind == "freq-matched":
        pair = con.build_frequency_matched_pair(lam, args.decay)
        mu = SampledSet(points=np.empty(0))
    elif args.kind == "time":
        pair = con.build_time_pair(lam, args.decay)
        mu = SampledSet(points=np.empty(0))
    else:
        mu = (_load_set(args.mu) if args.mu else
              generate_smooth(SmoothSpec(p=2.0, density=args.density, count=args.count,
                                         jitter=args.jitter, seed=args.seed + 1, halves="±")))
        pair = con.build_nonweak_pair(lam, mu, args.decay)
    pair.provenance.update({
        "tool": f"pauli-lab {__version__}",
        "config": _config_hash(args),
        "seed": args.seed,
        "lambda_points": [float(v) for v in lam.points],
        "mu_points": [float(v) for v in mu.points],
    })
    _write(args.out, pair.to_json() + "\n")
    return 0


def _check_radius(pair) -> float:
    kind = pair.provenance.get("kind", "")
    if kind in ("time_pair", "frequency_matched") and pair.provenance.get("branch") != "null_space":
        return 12.0
    return 3.2


def cmd_verify(args) -> int:
    pair = con.pair_from_json(Path(args.pair).read_text())
    lam = np.array(pair.provenance.get("lambda_points", []), dtype=float)
    mu = np.array(pair.provenance.get("mu_points", []), dtype=float)
    radius = args.radius if args.radius else _check_radius(pair)
    kind = pair.provenance.get("kind", "")
    if kind == "frequency_matched":
        lam = np.unique(np.concatenate([-lam, lam]))
    lam = lam[np.abs(lam) <= radius]
    mu = mu[np.abs(mu) <= radius]
    grid = np.linspace(-args.grid_radius, args.grid_radius, args.grid_points)
    report = pv.pair_report(pair, lam, mu, grid, grid,
                            discrete_tol=args.tol_discrete, weak_tol=args.tol_weak)
    payload = json.loads(report.to_json())
    payload["provenance"] = {"tool": f"pauli-lab {__version__}",
                             "config": _config_hash(args),
                             "seed": pair.provenance.get("seed"),
                             "pair_kind": kind}
    _write(args.out, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    null_branch = pair.provenance.get("branch") == "null_space"
    expected = {
        "frequency_matched": lambda v: v["discrete_pair"] and (null_branch or v["weak_pair_freq"]),
        "time_pair": lambda v: v["discrete_pair"],
        "non_weak": lambda v: v["discrete_pair"] and (null_branch or v["non_weak"]),
    }
    check = expected.get(kind, lambda v: v["discrete_pair"])
    return 0 if check(report.verdicts) else 1


def cmd_ft(args) -> int:
    model = ProductModel.from_json(Path(args.model).read_text())
    xi = _parse_range(args.xi)
    spec = fourier.QuadratureSpec(half_width=args.half_width, nodes=args.nodes)
    res = fourier.transform(model.values, spec, xi)
    lines = [_provenance_line(args, 0), "xi,re,im,err\n"]
    for x, v, e in zip(xi, res.values, res.error):
        lines.append(f"{_fmt(x)},{_fmt(v.real)},{_fmt(v.imag)},{_fmt(float(e))}\n")
    _write(args.out, "".join(lines))
    return 0


def cmd_indicator(args) -> int:
    model = ProductModel.from_json(Path(args.model).read_text())
    thetas = _parse_range(args.theta)
    lines = [_provenance_line(args, 0), "theta,h_hat,residual,window_lo,window_hi\n"]
    for theta in thetas:
        est = asy.indicator_estimate(model, theta)
        lines.append(",".join(_fmt(v) for v in
                              (theta, est.h_hat, est.residual, est.window[0], est.window[1])) + "\n")
    _write(args.out, "".join(lines))
    return 0


def cmd_interp(args) -> int:
    cfg = json.loads(Path(args.problem).read_text())
    allowed = {"lambda", "mu", "alpha", "beta", "weight_a", "weight_b",
               "inner_cut", "outer_radius", "nodes", "tol"}
    unknown = set(cfg) - allowed
    if unknown:
        sys.stderr.write(f"unknown problem keys: {sorted(unknown)}\n")
        return 2
    lam = SampledSet(points=np.array(cfg["lambda"], dtype=float))
    mu = SampledSet(points=np.array(cfg["mu"], dtype=float))
    alpha = {float(k): complex(v[0], v[1]) for k, v in cfg.get("alpha", {}).items()}
    beta = {float(k): complex(v[0], v[1]) for k, v in cfg.get("beta", {}).items()}
    base = itp.make_problem(lam, mu,
                            (lambda v: alpha.get(float(v), 0.0)) if alpha else None,
                            (lambda v: beta.get(float(v), 0.0)) if beta else None,
                            cfg["weight_a"], cfg["weight_b"],
                            cfg.get("inner_cut", 0.0), cfg["outer_radius"],
                            nodes=cfg.get("nodes", 2048))
    cut, _ = itp.choose_window_cut(base)
    problem = base.restricted(cut)
    res = itp.solve(problem, tol=cfg.get("tol", 1e-10))
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    hist = [_provenance_line(args, 0), "step,norm,ratio\n"]
    for i, n in enumerate(res.state.norms):
        ratio = res.state.ratios[i - 1] if i else float("nan")
        hist.append(f"{i},{_fmt(n)},{_fmt(ratio)}\n")
    (out_dir / "residual_history.csv").write_text("".join(hist))
    grid = np.linspace(-problem.outer_cut, problem.outer_cut, args.samples)
    vals = res.interpolant.eval(grid)
    samp = [_provenance_line(args, 0), "x,re,im\n"]
    for x, v in zip(grid, vals):
        samp.append(f"{_fmt(x)},{_fmt(v.real)},{_fmt(v.imag)}\n")
    (out_dir / "assembled_samples.csv").write_text("".join(samp))
    return 0 if res.state.converged else 1


def cmd_acceptance(args) -> int:
    names = args.only.split(",") if args.only else None
    records = acc.run_all(names, threads=max_threads())
    lines = [_provenance_line(args, acc.SEED), "criterion,passed,seconds,detail\n"]
    for rec in records:
        status = "PASS" if rec.passed else "FAIL"
        print(f"{status}  {rec.name}  ({rec.seconds:.2f} s)  {rec.detail}")
        detail = rec.detail.replace(",", ";")
        lines.append(f"{rec.name},{int(rec.passed)},{rec.seconds:.3f},{detail}\n")
    if args.out:
        _write(args.out, "".join(lines))
    return 0 if all(r.passed for r in records) else 1


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pauli-lab",
                                     description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("thresholds", help="threshold table over a decay-rate grid")
    p.add_argument("--a-grid", required=True, help="start:stop:step, inclusive stop")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_thresholds)

    p = sub.add_parser("gen-seq", help="generate a power-profile sampling sequence")
    p.add_argument("--p", type=float, default=2.0)
    p.add_argument("--density", type=float, default=1.0)
    p.add_argument("--count", type=int, default=256)
    p.add_argument("--jitter", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--halves", default="+", choices=["+", "-", "±"])
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_gen_seq)

    p = sub.add_parser("construct", help="build a counterexample pair")
    p.add_argument("kind", choices=["time", "freq-matched", "non-weak"])
    p.add_argument("--A", dest="decay", type=float, required=True)
    p.add_argument("--D", dest="density", type=float, default=0.9)
    p.add_argument("--count", type=int, default=512)
    p.add_argument("--jitter", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--lam", default=None, help="CSV set for the time side")
    p.add_argument("--mu", default=None, help="CSV set for the frequency side")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="verdicts for a constructed pair")
    p.add_argument("--pair", required=True)
    p.add_argument("--radius", type=float, default=None)
    p.add_argument("--grid-radius", type=float, default=3.0)
    p.add_argument("--grid-points", type=int, default=301)
    p.add_argument("--tol-discrete", type=float, default=1e-8)
    p.add_argument("--tol-weak", type=float, default=1e-6)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("ft", help="numerical transform of a serialized model")
    p.add_argument("--model", required=True)
    p.add_argument("--xi", required=True, help="start:stop:step")
    p.add_argument("--half-width", type=float, default=8.0)
    p.add_argument("--nodes", type=int, default=2048)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_ft)

    p = sub.add_parser("indicator", help="ray growth estimates of a serialized model")
    p.add_argument("--model", required=True)
    p.add_argument("--theta", required=True, help="start:stop:step (radians)")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_indicator)

    p = sub.add_parser("interp", help="run a windowed interpolation problem")
    p.add_argument("--problem", required=True, help="problem JSON")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--samples", type=int, default=257)
    p.set_defaults(func=cmd_interp)

    p = sub.add_parser("acceptance", help="run the acceptance suite")
    p.add_argument("--only", default=None, help="comma-separated criterion names")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_acceptance)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (con.DensityTooHighError, con.ParameterInfeasibleError,
            itp.NoFeasibleWindowError, itp.SolverFailedError) as exc:
        sys.stderr.write(f"check failed: {exc}\n")
        return 1
    except (ValueError, KeyError, OSError) as exc:
        sys.stderr.write(f"configuration error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
