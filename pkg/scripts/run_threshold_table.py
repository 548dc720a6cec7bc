#!/usr/bin/env python3
"""Tabulate the density thresholds and uniqueness bounds over a decay grid."""

import argparse
from dataclasses import dataclass

import numpy as np

from pauli_lab import thresholds as th


@dataclass(frozen=True)
class TableConfig:
    a_min: float = 0.05
    a_max: float = 0.95
    step: float = 0.05


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--a-min", type=float, default=TableConfig.a_min)
    parser.add_argument("--a-max", type=float, default=TableConfig.a_max)
    parser.add_argument("--step", type=float, default=TableConfig.step)
    args = parser.parse_args()
    cfg = TableConfig(args.a_min, args.a_max, args.step)

    print(f"{'A':>6} {'c1':>12} {'c2':>12} {'pauli':>12} {'uniq(a=b=A)':>12}")
    for a in np.arange(cfg.a_min, cfg.a_max + cfg.step / 2, cfg.step):
        d1, _ = th.uniqueness_density_bounds(th.DecayParams(a, a))
        print(f"{a:6.2f} {th.one_sided_threshold(a):12.6f} "
              f"{th.weak_pair_threshold(a):12.6f} {th.pauli_threshold(a):12.6f} {d1:12.6f}")


if __name__ == "__main__":
    main()
