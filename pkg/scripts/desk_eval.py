"""Desk evaluation: ACXON against the per-plan baseline on random plan pairs.

Prints the averaged metric grid and the attribute-count reduction at each
specificity level.

    python3 scripts/desk_eval.py --pairs 20 --seed 0
"""

import argparse
import random
import statistics

from plancontrast.inference import compare_all_plans
from plancontrast.metrics import MetricReport, compare_report, format_table
from plancontrast.synthetic import SyntheticConfig, random_pair_kb


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pairs", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--min-shared", type=float, default=SyntheticConfig.min_shared)
    ap.add_argument("--max-shared", type=float, default=SyntheticConfig.max_shared)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    config = SyntheticConfig(min_shared=args.min_shared, max_shared=args.max_shared)
    totals = {}
    reductions = {1: [], 2: [], 3: []}
    for _ in range(args.pairs):
        kb = random_pair_kb(rng, config)
        compare_all_plans(kb)
        grid = compare_report(kb, [("Plan", "Plan")])
        for key, report in grid.items():
            totals[key] = totals.get(key, MetricReport()) + report
        for level in reductions:
            a = grid[("acxon", level)].attribute_count
            b = grid[("baseline", level)].attribute_count
            reductions[level].append(1 - a / b)

    print(format_table({k: r.scaled(1 / args.pairs) for k, r in totals.items()}))
    for level, values in reductions.items():
        print(f"s={level}: mean attribute reduction {100 * statistics.mean(values):6.1f}%"
              f"  (min {100 * min(values):.1f}%, max {100 * max(values):.1f}%)")


if __name__ == "__main__":
    main()
