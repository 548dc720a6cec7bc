#!/usr/bin/env python3
"""Contraction-iteration demonstration on random windowed data.

Chooses the window cut by measuring the weighted cross norms, then iterates:
the residual norm history should at least halve per step once the cut is
accepted, and the assembled interpolant is re-verified by independent
evaluation and a fresh transform.
"""

import argparse
import dataclasses
from dataclasses import dataclass

import numpy as np

from pauli_lab import interpolation as itp
from pauli_lab.sequences import SmoothSpec, generate_smooth


@dataclass(frozen=True)
class ContractionConfig:
    density: float = 0.8
    weight_a: float = 0.5
    weight_b: float = 0.5
    outer_radius: float = 3.2
    seed: int = 20260808
    tol: float = 1e-10


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--density", type=float, default=ContractionConfig.density)
    parser.add_argument("--outer-radius", type=float, default=ContractionConfig.outer_radius)
    parser.add_argument("--seed", type=int, default=ContractionConfig.seed)
    parser.add_argument("--tol", type=float, default=ContractionConfig.tol)
    args = parser.parse_args()
    cfg = ContractionConfig(density=args.density, outer_radius=args.outer_radius,
                            seed=args.seed, tol=args.tol)

    lam = generate_smooth(SmoothSpec(p=2.0, density=cfg.density, count=512, halves="±", seed=1))
    mu = generate_smooth(SmoothSpec(p=2.0, density=cfg.density, count=512, halves="±", seed=2))
    base = itp.make_problem(lam, mu, None, None, cfg.weight_a, cfg.weight_b,
                            0.0, cfg.outer_radius, nodes=2048)
    cut, diagnostics = itp.choose_window_cut(base)
    for c, n_a, n_b in diagnostics:
        print(f"cut candidate L={c:.3f}: norms ({n_a:.4f}, {n_b:.4f})")
    print(f"accepted cut L = {cut:.3f}")

    prob = base.restricted(cut)
    rng = np.random.default_rng(cfg.seed)
    alpha = rng.normal(size=len(prob.lam)) + 1j * rng.normal(size=len(prob.lam))
    beta = rng.normal(size=len(prob.mu)) + 1j * rng.normal(size=len(prob.mu))
    nrm = prob.data_norm(alpha, beta)
    prob = dataclasses.replace(prob, alpha=alpha / nrm, beta=beta / nrm)

    res = itp.solve(prob, tol=cfg.tol)
    print(f"window: {len(prob.lam)} time points, {len(prob.mu)} frequency points")
    for i, n in enumerate(res.state.norms):
        ratio = f"  ratio {res.state.ratios[i-1]:.4f}" if i else ""
        print(f"step {i}: norm {n:.3e}{ratio}")
    print(f"independent re-evaluation gaps: time {res.verify_time:.2e}, "
          f"freq {res.verify_freq:.2e}")


if __name__ == "__main__":
    main()
