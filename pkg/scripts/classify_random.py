"""Classify random realisable nine-line arrangements and tally the classes.

    python3 scripts/classify_random.py --count 1000 --seed 1
"""

import argparse
import collections
import random

from arrlab.classify import OutsideTheorem, classify_nine, validate_evidence
from arrlab.geometry import incidence_of
from arrlab.sampling import random_realizable


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    tags: collections.Counter = collections.Counter()
    kinds: collections.Counter = collections.Counter()
    outside = 0
    for _ in range(args.count):
        s = incidence_of(random_realizable(rng, 9))
        try:
            c = classify_nine(s)
        except OutsideTheorem as exc:
            outside += 1
            print("outside:", s.to_json(), exc.trace)
            continue
        assert validate_evidence(s, c)
        tags[c.tag] += 1
        kinds[c.evidence["kind"]] += 1
    for tag, n in sorted(tags.items()):
        print(f"{tag:<18} {n}")
    print("evidence kinds:", dict(sorted(kinds.items())))
    print("outside the classification:", outside)


if __name__ == "__main__":
    main()
