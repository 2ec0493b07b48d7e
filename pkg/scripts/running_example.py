"""Walk through one contrastive narrative: T_P, D_P, clusters and text.

    python3 scripts/running_example.py [--restrict-class Quality]
"""

import argparse

from plancontrast.acxon import narrate_pair, retrieve_instantiated_pairs
from plancontrast.metrics import dale_chall, interaction_time, Channel
from plancontrast.scenarios import running_example_kb


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--restrict-class")
    ap.add_argument("--specificity", type=int, default=3, choices=(1, 2, 3))
    args = ap.parse_args()

    kb = running_example_kb()
    (pair,) = retrieve_instantiated_pairs(kb, [("Plan", "Plan")])
    n = narrate_pair(kb, pair, args.specificity, args.restrict_class)

    print(f"T_P ({len(n.retrieved)} tuples)")
    for i, t in enumerate(n.retrieved, 1):
        print(f"  {i:2d}. {t}")
    print(f"\nD_P ({len(n.divergent_tuples)} tuples)")
    for i, t in enumerate(n.divergent_tuples, 1):
        print(f"  {i:2d}. {t}")
    print("\nclusters")
    for c in n.clusters:
        print(f"  {c.kind.name.lower():9s} {c.property or '-':28s} {len(c.tuples)} tuples")
    print("\n" + n.text)
    print(f"\nDale-Chall {dale_chall(n.text):.2f}, "
          f"{interaction_time(n.text, Channel.AUDITORY):.1f} s heard, "
          f"{interaction_time(n.text, Channel.VISUAL):.1f} s read")


if __name__ == "__main__":
    main()
