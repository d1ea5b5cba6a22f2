"""Run the four nine-line censuses and write their JSON reports.

    python3 scripts/run_censuses.py --out results/
"""

import argparse
import json
import time
from pathlib import Path

from arrlab import census


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("results"))
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    jobs = {
        "nine_three": census.enumerate_933,
        "ten_triples": census.enumerate_ten_triples,
        "quadruple": census.enumerate_quadruple_case,
        "triple_bound": census.check_triple_bound,
    }
    for name, fn in jobs.items():
        t0 = time.perf_counter()
        result = fn()
        path = args.out / f"{name}.json"
        path.write_text(json.dumps(result.to_json(), indent=2, sort_keys=True) + "\n")
        n = len(getattr(result, "structures", getattr(result, "survivors", [])))
        print(f"{name:<13} {n:>3} structures  {time.perf_counter() - t0:6.2f} s  -> {path}")


if __name__ == "__main__":
    main()
