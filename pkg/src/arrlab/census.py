"""Exhaustive censuses of nine-line lattices with prescribed concurrencies.

Each census fixes how many multiple points every line carries, then
backtracks over the remaining triples: the smallest line that still needs
triples receives all of them at once, so every labelled family is produced
exactly once.  Results are reduced modulo lattice isomorphism and each
representative gets a realisability verdict from the moduli solver.

Root-level branches can be spread over a process pool whose size is capped
by the ``ARRLAB_THREADS`` environment variable; the output is sorted by the
structure encoding before deduplication, so it does not depend on the
schedule.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterator, Sequence

from .catalog import A_PM_I_LATTICE, FS_LATTICE, NINE_THREE_LATTICES
from .classify import find_maclane_sublattice
from .lattice import (
    IncidenceStructure,
    dedupe_isomorphic,
    find_As,
    find_isomorphism,
    hirzebruch_filter,
    is_simple_C_le_3,
    profile_from_counts,
)
from .moduli import moduli_verdict

N = 9


@dataclass
class CensusResult:
    constraints: dict
    structures: list[IncidenceStructure]
    verdicts: list[str]
    labelled_count: int = 0
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "constraints": self.constraints,
            "labelled_count": self.labelled_count,
            "structures": [
                {"lattice": s.to_json(), "verdict": v} for s, v in zip(self.structures, self.verdicts)
            ],
            **self.extra,
        }


def worker_count() -> int:
    raw = os.environ.get("ARRLAB_THREADS", "")
    try:
        cap = int(raw)
    except ValueError:
        cap = 1
    return max(1, min(cap, os.cpu_count() or 1))


def triple_families(
    n: int, need: Sequence[int], fixed: Sequence[Sequence[int]] = ()
) -> Iterator[tuple[tuple[int, ...], ...]]:
    """All families of triples, pairwise sharing at most one line, in which
    line i lies in exactly ``need[i-1]`` triples, on top of the ``fixed`` sets
    (which may be larger and count towards ``need`` as one point each)."""
    left = [0] + list(need)
    used = [[False] * (n + 1) for _ in range(n + 1)]
    for s in fixed:
        for i in s:
            left[i] -= 1
        for i, j in itertools.combinations(s, 2):
            if used[i][j]:
                raise ValueError(f"fixed sets share the pair {i, j}")
            used[i][j] = used[j][i] = True
    if min(left[1:], default=0) < 0:
        return
    chosen: list[tuple[int, ...]] = []

    def pairs_for(i: int, k: int, start: int) -> Iterator[list[tuple[int, int]]]:
        # k pairwise-disjoint pairs (j, l) to join line i, lexicographically increasing
        if k == 0:
            yield []
            return
        for j in range(start, n + 1):
            if left[j] <= 0 or used[i][j]:
                continue
            for l in range(j + 1, n + 1):
                if left[l] <= 0 or used[i][l] or used[j][l]:
                    continue
                for a, b in ((i, j), (i, l), (j, l)):
                    used[a][b] = used[b][a] = True
                left[j] -= 1
                left[l] -= 1
                for rest in pairs_for(i, k - 1, j + 1):
                    yield [(j, l)] + rest
                left[j] += 1
                left[l] += 1
                for a, b in ((i, j), (i, l), (j, l)):
                    used[a][b] = used[b][a] = False

    def extend() -> Iterator[tuple[tuple[int, ...], ...]]:
        i = next((k for k in range(1, n + 1) if left[k] > 0), 0)
        if i == 0:
            yield tuple(chosen)
            return
        k = left[i]
        left[i] = 0
        for pairs in pairs_for(i, k, i + 1):
            chosen.extend((i, j, l) for j, l in pairs)
            yield from extend()
            del chosen[len(chosen) - k:]
        left[i] = k

    yield from extend()


def _branch(args: tuple) -> tuple[int, list[IncidenceStructure]]:
    n, need, fixed = args
    found = [IncidenceStructure.from_sets(n, list(fixed) + list(f)) for f in triple_families(n, need, fixed)]
    return len(found), dedupe_isomorphic(found)


def _run(branches: list[tuple]) -> tuple[int, list[IncidenceStructure]]:
    workers = worker_count()
    if workers > 1 and len(branches) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_branch, branches))
    else:
        results = [_branch(b) for b in branches]
    total = sum(r[0] for r in results)
    reps = sorted((s for r in results for s in r[1]), key=lambda s: s.multiples)
    return total, dedupe_isomorphic(reps)


def _verdicts(structures: Sequence[IncidenceStructure]) -> list[str]:
    return [moduli_verdict(s) for s in structures]


STAR = ((1, 2, 3), (1, 4, 5), (1, 6, 7), (1, 8, 9))


def enumerate_933() -> CensusResult:
    """Nine lines, nine triple points, three on each line."""
    total, reps = _run([(N, [3] * N, STAR[:3])])
    return CensusResult(
        {"n": N, "triples": 9, "per_line": 3, "normalisation": "line 1 meets 2&3, 4&5, 6&7"},
        reps, _verdicts(reps), total,
    )


def enumerate_ten_triples() -> CensusResult:
    """Nine lines, ten triple points, every line on at least three of them."""
    # a line meets 8 others, so it lies in 3 or 4 triples; degrees sum to 30,
    # hence a = 30 - 27 = 3 lines carry four triples.  Line 1 is one of them.
    a = 30 - 3 * N
    branches = []
    for heavy in itertools.combinations(range(2, N + 1), a - 1):
        need = [4 if i == 1 or i in heavy else 3 for i in range(1, N + 1)]
        branches.append((N, need, STAR))
    total, reps = _run(branches)
    non_simple = [s for s in reps if not is_simple_C_le_3(s).simple]
    structures = non_simple
    verdicts = _verdicts(structures)
    extra = {
        "lines_with_four_triples": a,
        "lines_with_three_triples": N - a,
        "all_classes": len(reps),
        "simple_classes": len(reps) - len(non_simple),
    }
    result = CensusResult(
        {"n": N, "triples": 10, "per_line_min": 3, "filter": "not simple C<=3"},
        structures, verdicts, total, extra,
    )
    result.extra["simple_structures"] = [s.to_json() for s in reps if is_simple_C_le_3(s).simple]
    return result


@dataclass(frozen=True)
class ProfileCheck:
    n4: int
    n3: int
    n2: int
    reasons: tuple[str, ...]

    @property
    def admissible(self) -> bool:
        return not self.reasons

    def to_json(self) -> dict:
        return {"n4": self.n4, "n3": self.n3, "n2": self.n2, "fails": list(self.reasons)}


def quadruple_profiles() -> list[ProfileCheck]:
    """Every (n4, n3) with n4 >= 1, only triple and quadruple points, checked
    against the Hirzebruch inequality, the requirement that each of the
    nine lines carries at least three multiple points, and the triples needed
    on the lines through a quadruple point.  The pair count fixes n2 >= 0."""
    out = []
    for n4 in range(1, comb(N, 2) // 6 + 1):
        for n3 in range(0, (comb(N, 2) - 6 * n4) // 3 + 1):
            n2 = comb(N, 2) - 6 * n4 - 3 * n3
            reasons = []
            if 4 * n4 + 3 * n3 < 3 * N:
                reasons.append("line degree")
            if n3 < 9 - n4:
                reasons.append("quadruple lines")
            p = profile_from_counts(N, {4: n4, 3: n3})
            if hirzebruch_filter(p) == "fail":
                reasons.append("hirzebruch")
            out.append(ProfileCheck(n4, n3, n2, tuple(reasons)))
    return out


def hirzebruch_n4_bound() -> Fraction:
    """Largest real n4 left by Hirzebruch, the pair count and n3 >= 9 - n4.

    The four lines through one quadruple point need two more multiple points
    each, at least 9 - n4 of them triple.  Substituting into
    36 = 6 n4 + 3 n3 + n2 >= 6 n4 + 9/4 n3 + 9 gives a linear bound on n4.
    """
    h = Fraction(9, 4)
    # 36 - 9 >= 6 n4 + h (9 - n4)
    return (comb(N, 2) - N - h * 9) / (6 - h)


def enumerate_quadruple_case() -> CensusResult:
    """Nine lines, a quadruple point, every line on at least three multiple points."""
    profiles = quadruple_profiles()
    admissible = [p for p in profiles if p.admissible]
    branches = []
    for p in admissible:
        if p.n4 != 1:
            continue
        # lines 1-4 through the quadruple point each need two triples; every
        # triple holds at most one of them, so lines 5-9 share 3 n3 - 8 slots
        extra = 3 * p.n3 - 8 - 3 * 5
        if not 0 <= extra <= 5:
            continue
        for heavy in itertools.combinations(range(5, N + 1), extra):
            need = [3] * 4 + [4 if i in heavy else 3 for i in range(5, N + 1)]
            branches.append((N, need, ((1, 2, 3, 4),)))
    total, reps = _run(branches)
    non_simple = [s for s in reps if not is_simple_C_le_3(s).simple]
    verdicts = _verdicts(non_simple)
    survivors = [s for s, v in zip(non_simple, verdicts) if v != "infeasible"]
    extra = {
        "profiles": [p.to_json() for p in profiles],
        "max_admissible_n4": max((p.n4 for p in admissible), default=0),
        "n4_real_bound": str(hirzebruch_n4_bound()),
        "all_classes": len(reps),
        "non_simple_classes": len(non_simple),
        "survivors": [s.to_json() for s in survivors],
    }
    return CensusResult(
        {"n": N, "max_multiplicity": 4, "per_line_min": 3, "filter": "not simple C<=3"},
        non_simple, verdicts, total, extra,
    )


@dataclass
class TripleBoundReport:
    candidates: dict[int, int]
    with_maclane: dict[int, int]
    survivors: list[IncidenceStructure]
    verdicts: list[str]
    violations: list[IncidenceStructure]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "candidates": {str(k): v for k, v in self.candidates.items()},
            "with_maclane": {str(k): v for k, v in self.with_maclane.items()},
            "survivors": [
                {"lattice": s.to_json(), "verdict": v} for s, v in zip(self.survivors, self.verdicts)
            ],
            "violations": [s.to_json() for s in self.violations],
            "ok": self.ok,
        }


def check_triple_bound() -> TripleBoundReport:
    """No realisable nine-line lattice with only triple points has 11 or 12 of them
    once simple C<=3 lattices and MacLane sub-lattices are excluded."""
    candidates: dict[int, int] = {}
    with_maclane: dict[int, int] = {}
    survivors: list[IncidenceStructure] = []
    for n3 in (11, 12):
        light = 4 * N - 3 * n3  # lines with three triples instead of four
        branches = []
        for lt in itertools.combinations(range(2, N + 1), light):
            need = [3 if i in lt else 4 for i in range(1, N + 1)]
            branches.append((N, need, STAR))
        _, reps = _run(branches)
        non_simple = [s for s in reps if not is_simple_C_le_3(s).simple and find_As(s, require=False)]
        candidates[n3] = len(non_simple)
        keep = [s for s in non_simple if find_maclane_sublattice(s) is None]
        with_maclane[n3] = len(non_simple) - len(keep)
        survivors.extend(keep)
    verdicts = _verdicts(survivors)
    violations = [s for s, v in zip(survivors, verdicts) if v.startswith("points") or v == "irreducible_family"]
    return TripleBoundReport(candidates, with_maclane, survivors, verdicts, violations)


def catalog_match(s: IncidenceStructure) -> str | None:
    """Name of the catalog nine-line lattice isomorphic to ``s``."""
    named = {"fs": FS_LATTICE, "a_pm_i": A_PM_I_LATTICE}
    named.update({f"nine_three_{k}": v for k, v in NINE_THREE_LATTICES.items()})
    for name, lat in named.items():
        if find_isomorphism(s, lat) is not None:
            return name
    return None
