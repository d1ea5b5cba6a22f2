"""Classification of nine-line intersection lattices.

The driver tries, in order: deleting a line through at most two multiple
points and recognising the eight-line rest, the simple C<=3 test, and
lattice isomorphism against the Falk-Sturmfels, A^{+-i} and 9_3 lattices.
Anything left over raises :class:`OutsideTheorem` with the branch trace.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Literal

from .catalog import A_PM_I_LATTICE, FS_LATTICE, MACLANE_LATTICE, NINE_THREE_LATTICES
from .lattice import (
    IncidenceStructure,
    LatticeIso,
    delete_line,
    find_isomorphism,
    hirzebruch_filter,
    is_simple_C_le_3,
    lines_with_few_multiples,
    pair_count_holds,
    profile_of,
)

Tag = Literal["IrreducibleModuli", "ContainsMacLane", "FalkSturmfels", "APlusMinusI"]

_NAMED = {
    "fs": FS_LATTICE,
    "a_pm_i": A_PM_I_LATTICE,
    "maclane": MACLANE_LATTICE,
    **{f"nine_three_{k}": v for k, v in NINE_THREE_LATTICES.items()},
}


class OutsideTheorem(RuntimeError):
    """No branch of the classification applies."""

    def __init__(self, message: str, trace: list[str]):
        super().__init__(message + "; trace: " + " | ".join(trace))
        self.trace = trace


@dataclass
class NineLineClass:
    tag: Tag
    evidence: dict
    trace: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"class": self.tag, "evidence": self.evidence, "trace": self.trace}


def find_maclane_sublattice(s: IncidenceStructure) -> tuple[tuple[int, ...], LatticeIso] | None:
    """Eight lines of ``s`` whose restricted lattice is the MacLane lattice."""
    for keep in itertools.combinations(range(1, s.n + 1), 8):
        sub = s.restrict(keep)
        if len(sub.multiples) != 8:
            continue
        iso = find_isomorphism(sub, MACLANE_LATTICE)
        if iso is not None:
            return keep, iso
    return None


def _eight_line_class(rest: IncidenceStructure) -> tuple[str, dict] | None:
    check = is_simple_C_le_3(rest)
    if check.simple:
        return "simple", {"clause": check.clause, "cover": list(check.cover or ())}
    iso = find_isomorphism(rest, MACLANE_LATTICE)
    if iso is not None:
        return "maclane", {"perm": list(iso.perm)}
    return None


def _iso_evidence(s: IncidenceStructure, name: str) -> dict | None:
    iso = find_isomorphism(s, _NAMED[name])
    if iso is None:
        return None
    return {"kind": "iso", "target": name, "perm": list(iso.perm)}


def _maclane_or_raise(s: IncidenceStructure, trace: list[str], why: str) -> NineLineClass:
    found = find_maclane_sublattice(s)
    if found is not None:
        keep, iso = found
        trace.append(f"MacLane sub-lattice on lines {list(keep)}")
        return NineLineClass(
            "ContainsMacLane", {"kind": "maclane_sub", "lines": list(keep), "perm": list(iso.perm)}, trace
        )
    trace.append("no MacLane sub-lattice")
    raise OutsideTheorem(why, trace)


def classify_nine(s: IncidenceStructure) -> NineLineClass:
    if s.n != 9:
        raise ValueError(f"expected 9 lines, got {s.n}")
    trace: list[str] = []
    profile = profile_of(s)
    if not pair_count_holds(s):
        raise OutsideTheorem("pair count fails", ["pair count"])
    verdict = hirzebruch_filter(profile)
    trace.append(f"Hirzebruch {verdict}")
    if verdict == "fail":
        raise OutsideTheorem("Hirzebruch inequality fails, lattice not realisable", trace)

    for line in lines_with_few_multiples(s, 2):
        rest = delete_line(s, line)
        got = _eight_line_class(rest)
        if got is None:
            trace.append(f"delete {line}: rest neither simple nor MacLane")
            continue
        kind, info = got
        trace.append(f"delete {line}: rest {kind}")
        tag: Tag = "IrreducibleModuli" if kind == "simple" else "ContainsMacLane"
        return NineLineClass(tag, {"kind": "deletion", "line": line, "rest": kind, **info}, trace)

    check = is_simple_C_le_3(s)
    if check.simple:
        trace.append(f"simple C<=3 (clause {check.clause})")
        return NineLineClass(
            "IrreducibleModuli",
            {"kind": "simple", "clause": check.clause, "cover": list(check.cover or ())},
            trace,
        )
    trace.append("not simple C<=3")

    m = profile.m_max
    if m >= 5:
        return _maclane_or_raise(s, trace, f"maximal multiplicity {m} but no sparse line")
    if m == 4:
        ev = _iso_evidence(s, "fs")
        if ev is not None:
            trace.append("isomorphic to the Falk-Sturmfels lattice")
            return NineLineClass("FalkSturmfels", ev, trace)
        trace.append("not isomorphic to the Falk-Sturmfels lattice")
        return _maclane_or_raise(s, trace, "quadruple point but not Falk-Sturmfels")
    if m == 3:
        for k in "abc":
            ev = _iso_evidence(s, f"nine_three_{k}")
            if ev is not None:
                trace.append(f"9_3 configuration of type {k}")
                return NineLineClass("IrreducibleModuli", ev, trace)
        ev = _iso_evidence(s, "a_pm_i")
        if ev is not None:
            trace.append("isomorphic to the A^{+-i} lattice")
            return NineLineClass("APlusMinusI", ev, trace)
        trace.append("triple points only, no named lattice")
    return _maclane_or_raise(s, trace, f"no branch applies at maximal multiplicity {m}")


def validate_evidence(s: IncidenceStructure, cls: NineLineClass) -> bool:
    """Re-check the evidence carried by ``cls`` from scratch."""
    ev = cls.evidence
    kind = ev.get("kind")
    if kind == "deletion":
        line = ev["line"]
        if line not in lines_with_few_multiples(s, 2):
            return False
        rest = delete_line(s, line)
        if ev["rest"] == "simple":
            return cls.tag == "IrreducibleModuli" and is_simple_C_le_3(rest).simple
        return cls.tag == "ContainsMacLane" and LatticeIso(tuple(ev["perm"])).is_witness(rest, MACLANE_LATTICE)
    if kind == "simple":
        return cls.tag == "IrreducibleModuli" and is_simple_C_le_3(s).simple
    if kind == "iso":
        expected = {"fs": "FalkSturmfels", "a_pm_i": "APlusMinusI"}.get(ev["target"], "IrreducibleModuli")
        return cls.tag == expected and LatticeIso(tuple(ev["perm"])).is_witness(s, _NAMED[ev["target"]])
    if kind == "maclane_sub":
        sub = s.restrict(ev["lines"])
        return cls.tag == "ContainsMacLane" and LatticeIso(tuple(ev["perm"])).is_witness(sub, MACLANE_LATTICE)
    return False
