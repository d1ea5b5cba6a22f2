"""Random realisable arrangements with exact coordinates.

Lines are placed one at a time: a random line, a line through one existing
intersection point, or a line through two of them.  Passing through existing
points is what creates triple and higher points; with purely random lines
almost every arrangement would be generic.  Catalog entries are perturbed by
replacing some of their lines the same way, which keeps the coefficients in
the entry's quadratic field.
"""

from __future__ import annotations

import itertools
import random
from typing import Sequence

from .catalog import catalog
from .exact import QuadExt
from .geometry import Arrangement, EqualPoints, ProjLine, ProjPoint, cross, intersect, line_through


def _random_line(rng: random.Random, size: int = 6) -> ProjLine:
    while True:
        c = [rng.randint(-size, size) for _ in range(3)]
        if any(c):
            return ProjLine(c)


def _points(lines: Sequence[ProjLine]) -> list[ProjPoint]:
    return sorted(
        {intersect(a, b) for a, b in itertools.combinations(lines, 2)},
        key=lambda p: tuple(c.sort_key() for c in p.coords),
    )


def _random_point(rng: random.Random, size: int = 6) -> ProjPoint:
    while True:
        c = [rng.randint(-size, size) for _ in range(3)]
        if any(c):
            return ProjPoint(c)


def _new_line(rng: random.Random, lines: list[ProjLine]) -> ProjLine:
    mode = rng.random()
    if len(lines) < 2 or mode < 0.15:
        return _random_line(rng)
    pts = _points(lines)
    p = rng.choice(pts)
    if mode < 0.45:
        q = _random_point(rng)
    else:
        q = rng.choice(pts)
    return line_through(p, q)


def _fill(rng: random.Random, lines: list[ProjLine], n: int, d: int) -> Arrangement:
    while len(lines) < n:
        try:
            cand = _new_line(rng, lines)
        except EqualPoints:
            continue
        if cand not in lines:
            lines.append(cand)
    return Arrangement(lines, d)


def random_arrangement(rng: random.Random, n: int = 9) -> Arrangement:
    """Rational arrangement built by random placement."""
    return _fill(rng, [], n, 1)


def perturbed_catalog(rng: random.Random, n: int = 9) -> Arrangement:
    """A catalog entry with some lines dropped, then refilled to ``n`` lines."""
    entries = [e for e in catalog().values() if len(e.arrangement) <= n + 1]
    e = rng.choice(entries)
    lines = list(e.arrangement.lines)
    rng.shuffle(lines)
    drop = rng.randint(max(0, len(lines) - n), min(len(lines), 3))
    lines = lines[drop:][:n]
    return _fill(rng, lines, n, e.arrangement.field_d)


def random_realizable(rng: random.Random, n: int = 9) -> Arrangement:
    if rng.random() < 0.5:
        return random_arrangement(rng, n)
    return perturbed_catalog(rng, n)
