#!/usr/bin/env python3
"""Sweep voter discernment and watch ranking quality respond.

Runs the 10-good / 40-poor snippet population at several discernment levels
and prints precision@4, Kendall tau, and coverage per level, averaged over
seeds.
"""

import argparse

from coachd.domain import TaskType
from coachd.simulator import SimSnippetProfile, SimWorkerProfile, run_voting_sim


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seeds", type=int, default=10)
    parser.add_argument("--rounds", type=int, default=2000)
    args = parser.parse_args()

    snippets = [
        SimSnippetProfile(f"s{i:03d}", TaskType.SURVEY, 0.9 if i < 10 else 0.1)
        for i in range(50)
    ]
    print(f"{'discernment':>12} {'precision@4':>12} {'kendall':>9} {'coverage_1':>11}")
    for discernment in (0.0, 0.2, 0.4, 0.6, 0.8, 1.0):
        workers = [SimWorkerProfile(f"w{i:03d}", 100, discernment) for i in range(100)]
        precision = tau = coverage = 0.0
        for seed in range(args.seeds):
            report = run_voting_sim(workers, snippets, args.rounds, seed=seed)
            precision += report.precision_at_4
            tau += report.kendall_tau
            coverage += report.coverage[1]
        n = args.seeds
        print(
            f"{discernment:>12.1f} {precision / n:>12.3f} {tau / n:>9.3f} {coverage / n:>11.3f}"
        )


if __name__ == "__main__":
    main()
