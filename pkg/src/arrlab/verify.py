"""The reproducibility checklist behind ``arrlab verify-paper``.

Each check is a function returning ``(ok, detail)``; the runner times it and
records pass/fail (or skipped / unsupported).  Checks that read the catalog
take it as an argument so a tampered copy can be fed in as a negative control.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from math import comb
from typing import Callable, Mapping

from .catalog import FS_PERMUTATION, CatalogEntry, catalog, fs_transform
from .exact import UnsupportedDegree
from .geometry import ProjLine, ProjPoint, apply_transform, incidence_of, intersect
from .lattice import hirzebruch_filter, pair_count_holds, profile_of

Catalog = Mapping[str, CatalogEntry]


@dataclass
class CheckResult:
    name: str
    status: str  # pass, fail, unsupported, skipped
    citation: str
    elapsed: float
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "citation": self.citation,
            "elapsed": round(self.elapsed, 3),
            "detail": self.detail,
        }


@dataclass(frozen=True)
class Check:
    name: str
    citation: str
    run: Callable[[Catalog], tuple[bool, str]]
    slow: bool = False


def _profile(cat: Catalog, name: str) -> dict[int, int]:
    return dict(profile_of(incidence_of(cat[name].arrangement)).counts)


def check_maclane_incidence(cat: Catalog) -> tuple[bool, str]:
    out = []
    for sign in "+-":
        s = incidence_of(cat[f"maclane{sign}"].arrangement)
        ok = s.n == 8 and len(s.multiples) == 8 and all(len(m) == 3 for m in s.multiples)
        ok = ok and all(s.degree(i) == 3 for i in range(1, 9))
        out.append(ok)
    return all(out), f"profiles {[_profile(cat, 'maclane' + x) for x in '+-']}"


def check_fs_incidence(cat: Catalog) -> tuple[bool, str]:
    ok = True
    for sign in "+-":
        s = incidence_of(cat[f"fs{sign}"].arrangement)
        prof = dict(profile_of(s).counts)
        four = [i for i in range(1, s.n + 1) if sum(len(s.multiples[k]) == 3 for k in s.incident[i]) == 4]
        ok = ok and prof == {4: 1, 3: 8, 2: 6} and bool(four)
    return ok, f"fs+ profile {_profile(cat, 'fs+')}"


def check_a_pm_i_incidence(cat: Catalog) -> tuple[bool, str]:
    ok = True
    for sign in "+-":
        s = incidence_of(cat[f"a_pm_i{sign}"].arrangement)
        heavy = [i for i in range(1, 10) if s.degree(i) == 4]
        light = [i for i in range(1, 10) if s.degree(i) == 3]
        concurrent = any(set(heavy) <= set(m) for m in s.multiples)
        ok = ok and dict(profile_of(s).counts) == {3: 10, 2: 6} and len(heavy) == 3
        ok = ok and len(light) == 6 and not concurrent
    return ok, f"a_pm_i+ profile {_profile(cat, 'a_pm_i+')}"


def check_counting(cat: Catalog) -> tuple[bool, str]:
    bad = []
    for name, e in cat.items():
        s = incidence_of(e.arrangement)
        if s != e.expected_lattice:
            bad.append(f"{name}: lattice differs from the recorded one")
        if not pair_count_holds(s):
            bad.append(f"{name}: pair count")
        if hirzebruch_filter(profile_of(s)) == "fail":
            bad.append(f"{name}: Hirzebruch")
    return not bad, "; ".join(bad) or f"{len(cat)} entries"


def _moduli_check(base: str, d: int) -> Callable[[Catalog], tuple[bool, str]]:
    def run(cat: Catalog) -> tuple[bool, str]:
        from .moduli import realizations_equivalent, solve_moduli

        plus, minus = cat[f"{base}+"], cat[f"{base}-"]
        rep = solve_moduli(incidence_of(plus.arrangement))
        if rep.status != "points" or rep.point_count != 2 or rep.splitting_field_d != d:
            return False, f"{rep.status}, {rep.point_count} points, d={rep.splitting_field_d}"
        matched = set()
        for r in rep.realizations:
            for e in (plus, minus):
                if realizations_equivalent(r, e.arrangement, permute=False):
                    matched.add(e.name)
        ok = matched == {plus.name, minus.name}
        return ok, f"closure {rep.closure_polynomial}, d={d}, matched {sorted(matched)}"

    return run


def check_nine_three_moduli(cat: Catalog) -> tuple[bool, str]:
    from .moduli import solve_moduli

    got = {}
    for k in "abc":
        got[k] = solve_moduli(incidence_of(cat[f"nine_three_{k}"].arrangement)).status
    return all(v == "irreducible_family" for v in got.values()), str(got)


def _on(line: ProjLine, p: ProjPoint) -> bool:
    return line.contains(p)


def check_fs_transform(cat: Catalog) -> tuple[bool, str]:
    T = fs_transform()
    plus, minus = cat["ext_fs+"].arrangement, cat["ext_fs-"].arrangement
    image = apply_transform(plus, T)
    perm = FS_PERMUTATION + (10,)
    lines_ok = all(image.lines[i] == minus.lines[perm[i] - 1] for i in range(10))
    through = True
    for arr in (plus, minus):
        L = arr.lines
        h = L[9]
        pts = [intersect(L[0], L[1]), intersect(L[4], L[5]), intersect(L[6], L[7])]
        through = through and all(_on(h, p) for p in pts)
    return lines_ok and through, f"permutation {list(perm)}; H10 through L1&L2, K1&K2, K3&K4"


def check_catalog_classification(cat: Catalog) -> tuple[bool, str]:
    from .classify import classify_nine, validate_evidence

    expected = {
        "fs+": "FalkSturmfels", "fs-": "FalkSturmfels",
        "a_pm_i+": "APlusMinusI", "a_pm_i-": "APlusMinusI",
        "nine_three_a": "IrreducibleModuli", "nine_three_b": "IrreducibleModuli",
        "nine_three_c": "IrreducibleModuli",
    }
    got = {}
    for name in expected:
        s = incidence_of(cat[name].arrangement)
        c = classify_nine(s)
        got[name] = c.tag if validate_evidence(s, c) else "invalid evidence"
    return got == expected, str(got)


def check_census_933(cat: Catalog) -> tuple[bool, str]:
    from .census import catalog_match, enumerate_933

    r = enumerate_933()
    names = sorted(str(catalog_match(s)) for s in r.structures)
    ok = names == ["nine_three_a", "nine_three_b", "nine_three_c"]
    ok = ok and all(v == "irreducible_family" for v in r.verdicts)
    return ok, f"{len(r.structures)} classes {names}, verdicts {r.verdicts}"


def check_census_ten(cat: Catalog) -> tuple[bool, str]:
    from .census import catalog_match, enumerate_ten_triples

    r = enumerate_ten_triples()
    names = [catalog_match(s) for s in r.structures]
    ok = names == ["a_pm_i"] and r.verdicts == ["points:2:d=-1"]
    return ok, f"non-simple {names}, verdicts {r.verdicts}"


def check_census_quadruple(cat: Catalog) -> tuple[bool, str]:
    from .census import catalog_match, enumerate_quadruple_case

    r = enumerate_quadruple_case()
    survivors = [s for s, v in zip(r.structures, r.verdicts) if v != "infeasible"]
    names = [catalog_match(s) for s in survivors]
    ok = r.extra["max_admissible_n4"] == 1 and names == ["fs"]
    return ok, f"n4 <= {r.extra['n4_real_bound']}, survivors {names}"


def check_triple_bound(cat: Catalog) -> tuple[bool, str]:
    from .census import check_triple_bound as run

    r = run()
    return r.ok, f"candidates {r.candidates}, with MacLane {r.with_maclane}, survivors {len(r.survivors)}"


def check_pair_count_bound(cat: Catalog) -> tuple[bool, str]:
    # all-triple nine-line lattices: 36 = 3 n3 + n2 with n2 >= 0
    top = max(n3 for n3 in range(0, 40) if comb(9, 2) - 3 * n3 >= 0)
    return top == 12, f"n3 <= {top}"


CHECKS: tuple[Check, ...] = (
    Check("catalog.maclane", "MacLane arrangement: eight triple points, three on each line", check_maclane_incidence),
    Check("catalog.falk_sturmfels", "Falk-Sturmfels arrangement: one line through four triple points", check_fs_incidence),
    Check("catalog.a_pm_i", "A^{+-sqrt(-1)}: ten triple points, three non-concurrent lines through four", check_a_pm_i_incidence),
    Check("counting.identities", "pair count identity and Hirzebruch inequality", check_counting),
    Check("counting.triple_pair_bound", "pair count bound on triple points of nine lines", check_pair_count_bound),
    Check("moduli.maclane", "MacLane moduli: two points over Q(sqrt -3)", _moduli_check("maclane", -3)),
    Check("moduli.falk_sturmfels", "Falk-Sturmfels moduli: two points, x^2 - x - 1", _moduli_check("fs", 5)),
    Check("moduli.a_pm_i", "A^{+-sqrt(-1)} moduli: two points over Q(i)", _moduli_check("a_pm_i", -1)),
    Check("moduli.nine_three", "9_3 configurations have irreducible moduli", check_nine_three_moduli),
    Check("extension.fs_transform", "projective map between the extended Falk-Sturmfels arrangements", check_fs_transform),
    Check("classify.catalog", "nine-line classification of the named lattices", check_catalog_classification),
    Check("census.nine_three", "three combinatorial types of 9_3 configurations", check_census_933, slow=True),
    Check("census.ten_triples", "nine lines with ten triple points", check_census_ten, slow=True),
    Check("census.quadruple", "quadruple point case: n4 = 1 and Falk-Sturmfels", check_census_quadruple, slow=True),
    Check("census.triple_bound", "at most ten triple points without MacLane", check_triple_bound, slow=True),
)


def run_checks(cat: Catalog | None = None, skip_slow: bool = False) -> list[CheckResult]:
    cat = catalog() if cat is None else cat
    out = []
    for chk in CHECKS:
        if skip_slow and chk.slow:
            out.append(CheckResult(chk.name, "skipped", chk.citation, 0.0))
            continue
        t0 = time.perf_counter()
        try:
            ok, detail = chk.run(cat)
            status = "pass" if ok else "fail"
        except UnsupportedDegree as exc:
            status, detail = "unsupported", str(exc)
        except Exception as exc:  # a crash is a failed check, reported with its cause
            status, detail = "fail", f"{type(exc).__name__}: {exc}"
        out.append(CheckResult(chk.name, status, chk.citation, time.perf_counter() - t0, detail))
    return out
