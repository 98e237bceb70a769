#!/usr/bin/env python3
"""Replicate the three-condition field experiment over many seeds.

Prints one full report for the first seed, then the fraction of seeds where
the completion-time effects land below the usual significance thresholds.
"""

import argparse

from coachd.simulator import reference_experiment_config, run_field_experiment_replica


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seeds", type=int, default=100)
    args = parser.parse_args()

    first = run_field_experiment_replica(reference_experiment_config(seed=0))
    print(first.format_text())
    print()

    anova_hits = tukey_hits = 0
    for seed in range(args.seeds):
        analysis = run_field_experiment_replica(reference_experiment_config(seed=seed)).analysis
        anova_hits += analysis.completion_anova.p < 1e-4
        tukey = analysis.completion_tukey
        tukey_hits += (
            tukey.pair("coach", "control").p < 1e-4
            and tukey.pair("coach", "random").p < 1e-4
        )
    print(f"completion ANOVA p < 0.0001 in {anova_hits}/{args.seeds} seeds")
    print(f"Tukey coach-vs-control and coach-vs-random p < 0.0001 in {tukey_hits}/{args.seeds} seeds")


if __name__ == "__main__":
    main()
