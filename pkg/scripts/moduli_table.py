"""Moduli verdict for every catalog lattice, as a small table."""

from arrlab.catalog import catalog
from arrlab.moduli import solve_moduli


def main() -> None:
    seen = set()
    for name, e in catalog().items():
        lat = e.expected_lattice
        if lat in seen:
            continue
        seen.add(lat)
        rep = solve_moduli(lat)
        closure = "" if rep.closure_polynomial is None else str(rep.closure_polynomial)
        print(
            f"{name:<13} n={lat.n:<3} frame={rep.plan.frame} params={rep.plan.residual_parameters} "
            f"{rep.status:<18} points={rep.point_count} d={rep.splitting_field_d} {closure}"
        )


if __name__ == "__main__":
    main()
