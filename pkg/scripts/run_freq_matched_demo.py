#!/usr/bin/env python3
"""Build a frequency-matched pair and print its verdict bundle.

The pair's transforms have identical modulus at every frequency while the
time moduli differ; the sampled time moduli agree on +-lambda by construction.
"""

import argparse
from dataclasses import dataclass

import numpy as np

from pauli_lab import constructions as con
from pauli_lab import pauli_verify as pv
from pauli_lab.sequences import SmoothSpec, generate_smooth


@dataclass(frozen=True)
class DemoConfig:
    decay: float = 0.5
    density: float = 0.9
    count: int = 1024
    seed: int = 7
    jitter: float = 0.0


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--decay", type=float, default=DemoConfig.decay)
    parser.add_argument("--density", type=float, default=DemoConfig.density)
    parser.add_argument("--count", type=int, default=DemoConfig.count)
    parser.add_argument("--seed", type=int, default=DemoConfig.seed)
    parser.add_argument("--jitter", type=float, default=DemoConfig.jitter)
    parser.add_argument("--pair-out", default=None, help="write the serialized pair here")
    args = parser.parse_args()
    cfg = DemoConfig(args.decay, args.density, args.count, args.seed, args.jitter)

    lam = generate_smooth(SmoothSpec(p=2.0, density=cfg.density, count=cfg.count,
                                     jitter=cfg.jitter, seed=cfg.seed, halves="+"))
    pair = con.build_frequency_matched_pair(lam, cfg.decay)
    print("construction:", {k: v for k, v in pair.provenance.items() if k != "count"})

    pts = lam.points[lam.points <= 10.0]
    pts = np.concatenate([-pts[::-1], pts])
    grid = np.linspace(-3.5, 3.5, 401)
    report = pv.pair_report(pair, pts, np.empty(0), grid, grid)
    print(report.to_json())
    if args.pair_out:
        with open(args.pair_out, "w") as handle:
            handle.write(pair.to_json())
        print(f"pair written to {args.pair_out}")


if __name__ == "__main__":
    main()
