"""Abstract intersection lattices of line arrangements.

A lattice is stored as its line count plus the family of concurrent index
sets of size >= 3 (the multiple points).  Double points are implied: any
pair of lines not sharing a multiple set meets in a double point.  All
indices are 1-based.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import comb
from typing import Iterable, Iterator, Literal, Sequence


class InvalidStructure(ValueError):
    pass


class InconsistentStructure(ValueError):
    """The multiple sets need more line pairs than C(n, 2)."""


class ConsistencyViolation(RuntimeError):
    """A structure contradicts a result this library relies on."""


@dataclass(frozen=True)
class IncidenceStructure:
    n: int
    multiples: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        sets = sorted({tuple(sorted(set(s))) for s in self.multiples})
        for s in sets:
            if len(s) < 3:
                raise InvalidStructure(f"multiple set {s} has fewer than 3 lines")
            if s[0] < 1 or s[-1] > self.n:
                raise InvalidStructure(f"multiple set {s} out of range 1..{self.n}")
        object.__setattr__(self, "multiples", tuple(sets))
        seen: dict[tuple[int, int], tuple[int, ...]] = {}
        for s in sets:
            for pair in itertools.combinations(s, 2):
                if pair in seen:
                    raise InvalidStructure(
                        f"lines {pair} lie in both {seen[pair]} and {s}"
                    )
                seen[pair] = s

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]]) -> IncidenceStructure:
        return cls(n, tuple(tuple(s) for s in sets))

    @cached_property
    def block_of(self) -> list[list[int]]:
        """``block_of[i][j]``: index into ``multiples`` of the set holding i, j, else -1."""
        tab = [[-1] * (self.n + 1) for _ in range(self.n + 1)]
        for k, s in enumerate(self.multiples):
            for i, j in itertools.permutations(s, 2):
                tab[i][j] = k
        return tab

    @cached_property
    def incident(self) -> list[tuple[int, ...]]:
        """``incident[i]``: indices of the multiple sets through line i."""
        inc: list[list[int]] = [[] for _ in range(self.n + 1)]
        for k, s in enumerate(self.multiples):
            for i in s:
                inc[i].append(k)
        return [tuple(x) for x in inc]

    def degree(self, i: int) -> int:
        return len(self.incident[i])

    def to_json(self) -> dict:
        return {"n": self.n, "multiples": [list(s) for s in self.multiples]}

    @classmethod
    def from_json(cls, data: dict) -> IncidenceStructure:
        return cls.from_sets(int(data["n"]), data["multiples"])

    def relabel(self, perm: Sequence[int]) -> IncidenceStructure:
        """Image under ``i -> perm[i-1]``."""
        return IncidenceStructure.from_sets(
            self.n, ([perm[i - 1] for i in s] for s in self.multiples)
        )

    def restrict(self, keep: Sequence[int]) -> IncidenceStructure:
        """Sub-arrangement on ``keep`` (in that order), reindexed 1..len(keep)."""
        pos = {line: k + 1 for k, line in enumerate(keep)}
        sets = []
        for s in self.multiples:
            t = [pos[i] for i in s if i in pos]
            if len(t) >= 3:
                sets.append(t)
        return IncidenceStructure.from_sets(len(keep), sets)


def delete_line(s: IncidenceStructure, i: int) -> IncidenceStructure:
    if not 1 <= i <= s.n:
        raise IndexError(f"line {i} not in 1..{s.n}")
    return s.restrict([j for j in range(1, s.n + 1) if j != i])


def lines_with_few_multiples(s: IncidenceStructure, k: int) -> list[int]:
    if k < 0:
        raise ValueError("k must be non-negative")
    return [i for i in range(1, s.n + 1) if s.degree(i) <= k]


# ---------------------------------------------------------------------------
# counting


@dataclass(frozen=True)
class MultiplicityProfile:
    n: int
    counts: dict[int, int]
    m_max: int

    def get(self, r: int) -> int:
        return self.counts.get(r, 0)

    def to_json(self) -> dict:
        return {str(r): c for r, c in sorted(self.counts.items(), reverse=True)}


def profile_from_counts(n: int, higher: dict[int, int]) -> MultiplicityProfile:
    """Profile with n_2 filled in from the pair-count identity."""
    used = sum(c * comb(r, 2) for r, c in higher.items() if r >= 3)
    n2 = comb(n, 2) - used
    if n2 < 0:
        raise InconsistentStructure(
            f"multiple points use {used} line pairs but only {comb(n, 2)} exist"
        )
    counts = {r: c for r, c in higher.items() if r >= 3 and c > 0}
    if n2:
        counts[2] = n2
    m_max = max(counts, default=2)
    return MultiplicityProfile(n, counts, m_max)


def profile_of(s: IncidenceStructure) -> MultiplicityProfile:
    higher: dict[int, int] = {}
    for m in s.multiples:
        higher[len(m)] = higher.get(len(m), 0) + 1
    return profile_from_counts(s.n, higher)


FilterVerdict = Literal["pass", "fail", "not_applicable"]


def hirzebruch_filter(p: MultiplicityProfile) -> FilterVerdict:
    """Hirzebruch's inequality n2 + 3/4 n3 >= t + sum_{r>=5} (2r-9) n_r."""
    t = p.n
    if p.get(t) or p.get(t - 1) or p.get(t - 2):
        return "not_applicable"
    lhs = p.get(2) + Fraction(3, 4) * p.get(3)
    rhs = t + sum((2 * r - 9) * c for r, c in p.counts.items() if r >= 5)
    return "pass" if lhs >= rhs else "fail"


def pair_count_holds(s: IncidenceStructure) -> bool:
    p = profile_of(s)
    return comb(s.n, 2) == sum(c * comb(r, 2) for r, c in p.counts.items())


# ---------------------------------------------------------------------------
# isomorphism


@dataclass(frozen=True)
class LatticeIso:
    """Line bijection ``i -> perm[i-1]`` carrying one multiples family onto another."""

    perm: tuple[int, ...]

    def __call__(self, i: int) -> int:
        return self.perm[i - 1]

    def apply(self, s: IncidenceStructure) -> IncidenceStructure:
        return s.relabel(self.perm)

    def inverse(self) -> LatticeIso:
        inv = [0] * len(self.perm)
        for i, j in enumerate(self.perm, start=1):
            inv[j - 1] = i
        return LatticeIso(tuple(inv))

    def is_witness(self, s1: IncidenceStructure, s2: IncidenceStructure) -> bool:
        return (
            s1.n == s2.n
            and sorted(self.perm) == list(range(1, s1.n + 1))
            and self.apply(s1).multiples == s2.multiples
        )


def refine_colors(s: IncidenceStructure) -> tuple[list[int], tuple]:
    """Iterated colour refinement of the lines.

    Starts from the sorted sizes of incident multiple sets and refines by
    the colours met along multiple sets and along double points.  Colour
    ids are assigned by sorting signatures, so they and the returned
    certificate do not depend on the labelling.
    """
    n = s.n
    colors = [0] * (n + 1)
    start = {i: tuple(sorted(len(s.multiples[k]) for k in s.incident[i])) for i in range(1, n + 1)}
    colors, history = _relabel_signatures(start)
    cert = [history]
    while True:
        sigs = {}
        for i in range(1, n + 1):
            via_blocks = tuple(
                sorted(
                    (len(s.multiples[k]), tuple(sorted(colors[j] for j in s.multiples[k] if j != i)))
                    for k in s.incident[i]
                )
            )
            via_doubles = tuple(
                sorted(colors[j] for j in range(1, n + 1) if j != i and s.block_of[i][j] < 0)
            )
            sigs[i] = (colors[i], via_blocks, via_doubles)
        new, history = _relabel_signatures(sigs)
        cert.append(history)
        if len(set(new[1:])) == len(set(colors[1:])):
            return new, tuple(cert)
        colors = new


def _relabel_signatures(sigs: dict[int, tuple]) -> tuple[list[int], tuple]:
    distinct = sorted(set(sigs.values()))
    index = {sig: k for k, sig in enumerate(distinct)}
    colors = [0] * (len(sigs) + 1)
    for i, sig in sigs.items():
        colors[i] = index[sig]
    counts = tuple(sorted((index[sig], sum(1 for v in sigs.values() if v == sig), sig) for sig in distinct))
    return colors, counts


def invariant(s: IncidenceStructure) -> tuple:
    """Labelling-independent certificate; equal for isomorphic structures."""
    return (s.n, tuple(sorted(len(m) for m in s.multiples)), refine_colors(s)[1])


def iter_isomorphisms(s1: IncidenceStructure, s2: IncidenceStructure) -> Iterator[LatticeIso]:
    """All isomorphisms s1 -> s2, in lexicographic order of the image tuple
    restricted to the search order."""
    if s1.n != s2.n or len(s1.multiples) != len(s2.multiples):
        return
    if sorted(map(len, s1.multiples)) != sorted(map(len, s2.multiples)):
        return
    c1, cert1 = refine_colors(s1)
    c2, cert2 = refine_colors(s2)
    if cert1 != cert2:
        return
    n = s1.n
    cls_size: dict[int, int] = {}
    for i in range(1, n + 1):
        cls_size[c1[i]] = cls_size.get(c1[i], 0) + 1
    candidates = {c: [j for j in range(1, n + 1) if c2[j] == c] for c in cls_size}
    # Most constrained first; prefer lines adjacent (through a multiple set)
    # to already ordered ones so block constraints bite early.
    order: list[int] = []
    remaining = set(range(1, n + 1))
    while remaining:
        def key(i):
            linked = sum(1 for j in order if s1.block_of[i][j] >= 0)
            return (cls_size[c1[i]], -linked, i)
        nxt = min(remaining, key=key)
        order.append(nxt)
        remaining.remove(nxt)

    B1, B2 = s1.block_of, s2.block_of
    perm = [0] * (n + 1)
    used = [False] * (n + 1)
    bmap: dict[int, int] = {}
    bcount: dict[int, int] = {}
    rmap: dict[int, int] = {}

    def extend(pos: int) -> Iterator[LatticeIso]:
        if pos == n:
            yield LatticeIso(tuple(perm[1:]))
            return
        a = order[pos]
        for a2 in candidates[c1[a]]:
            if used[a2]:
                continue
            added: list[int] = []
            ok = True
            for b in order[:pos]:
                k1 = B1[a][b]
                k2 = B2[a2][perm[b]]
                if (k1 < 0) != (k2 < 0):
                    ok = False
                    break
                if k1 < 0:
                    continue
                if k1 in bmap:
                    if bmap[k1] != k2:
                        ok = False
                        break
                    bcount[k1] += 1
                    added.append(k1)
                elif k2 in rmap:
                    ok = False
                    break
                else:
                    if len(s1.multiples[k1]) != len(s2.multiples[k2]):
                        ok = False
                        break
                    bmap[k1] = k2
                    rmap[k2] = k1
                    bcount[k1] = 1
                    added.append(k1)
            if ok:
                perm[a] = a2
                used[a2] = True
                yield from extend(pos + 1)
                used[a2] = False
                perm[a] = 0
            for k1 in added:
                bcount[k1] -= 1
                if bcount[k1] == 0:
                    del rmap[bmap.pop(k1)]
                    del bcount[k1]

    yield from extend(0)


def find_isomorphism(s1: IncidenceStructure, s2: IncidenceStructure) -> LatticeIso | None:
    for iso in iter_isomorphisms(s1, s2):
        return iso
    return None


def automorphisms(s: IncidenceStructure) -> list[LatticeIso]:
    return list(iter_isomorphisms(s, s))


def dedupe_isomorphic(structures: Iterable[IncidenceStructure]) -> list[IncidenceStructure]:
    """One representative per isomorphism class, first occurrence kept."""
    buckets: dict[tuple, list[IncidenceStructure]] = {}
    out = []
    for s in structures:
        key = invariant(s)
        reps = buckets.setdefault(key, [])
        if any(find_isomorphism(s, r) is not None for r in reps):
            continue
        reps.append(s)
        out.append(s)
    return out


# ---------------------------------------------------------------------------
# C<=3 classes


def _covers(s: IncidenceStructure, lines: Sequence[int]) -> bool:
    return all(any(i in m for i in lines) for m in s.multiples)


def _min_cover(s: IncidenceStructure, max_size: int) -> tuple[int, ...] | None:
    for k in range(0, max_size + 1):
        for c in itertools.combinations(range(1, s.n + 1), k):
            if _covers(s, c):
                return c
    return None


def is_C_le_3(s: IncidenceStructure) -> tuple[bool, tuple[int, ...] | None]:
    """Are all multiple points on at most three lines?  Returns a smallest cover."""
    cover = _min_cover(s, 3)
    return cover is not None, cover


@dataclass(frozen=True)
class SimpleCheck:
    simple: bool
    clause: str | None = None
    cover: tuple[int, ...] | None = None

    def __iter__(self):
        return iter((self.simple, self.clause))


def _private_multiples(s: IncidenceStructure, line: int, cover: Sequence[int]) -> int:
    """Multiple sets through ``line`` that avoid every other cover line."""
    others = [c for c in cover if c != line]
    return sum(1 for k in s.incident[line] if not any(o in s.multiples[k] for o in others))


def is_simple_C_le_3(s: IncidenceStructure) -> SimpleCheck:
    """Simple C<=3 test over every covering triple.

    Clause 2 excludes the multiple points sitting at pairwise intersections
    of the cover lines from the one-extra-point budget.  A cover by at most
    two lines always qualifies (pad with arbitrary lines; every multiple
    point on a pad line is then at its intersection with a cover line).
    """
    if not s.multiples:
        return SimpleCheck(True, "no multiple points", ())
    small = _min_cover(s, 2)
    if small is not None:
        return SimpleCheck(True, "2", small)
    for cover in itertools.combinations(range(1, s.n + 1), 3):
        if not _covers(s, cover):
            continue
        a, b, c = cover
        k = s.block_of[a][b]
        if k >= 0 and c in s.multiples[k]:
            return SimpleCheck(True, "1", cover)
        if any(_private_multiples(s, line, cover) <= 1 for line in cover):
            return SimpleCheck(True, "2", cover)
    return SimpleCheck(False)


@dataclass(frozen=True)
class SubArrangementWitness:
    """Six lines: two concurrent triples whose nine cross points are double
    points of the six-line sub-arrangement."""

    lines: tuple[int, int, int, int, int, int]

    @property
    def triples(self) -> tuple[tuple[int, int, int], tuple[int, int, int]]:
        return self.lines[:3], self.lines[3:]

    @property
    def cross_pairs(self) -> list[tuple[int, int]]:
        """``Q_ij = L_i & L_{j+3}`` as index pairs, row-major in (i, j)."""
        return [(a, b) for a in self.lines[:3] for b in self.lines[3:]]

    def check(self, s: IncidenceStructure) -> bool:
        first, second = self.triples
        if len(set(self.lines)) != 6:
            return False
        for t in (first, second):
            k = s.block_of[t[0]][t[1]]
            if k < 0 or t[2] not in s.multiples[k]:
                return False
        six = set(self.lines)
        for a, b in self.cross_pairs:
            k = s.block_of[a][b]
            if k >= 0 and len(six.intersection(s.multiples[k])) > 2:
                return False
        return True


def find_As(s: IncidenceStructure, require: bool = True) -> SubArrangementWitness | None:
    """Smallest (lexicographic) six-line witness of the two-triple pattern.

    Structures that are not simple C<=3 always carry one for realisable
    arrangements; with ``require`` set, its absence raises.
    """
    triples: list[tuple[int, int, int]] = []
    for m in s.multiples:
        triples.extend(itertools.combinations(m, 3))
    triples.sort()
    for t1 in triples:
        for t2 in triples:
            if t2 <= t1 or set(t1) & set(t2):
                continue
            w = SubArrangementWitness(t1 + t2)
            if w.check(s):
                return w
    if require and not is_simple_C_le_3(s).simple:
        raise ConsistencyViolation(
            "structure is not simple C<=3 but has no two-triple six-line witness"
        )
    return None
