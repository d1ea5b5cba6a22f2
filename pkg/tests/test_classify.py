import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arrlab.catalog import A_PM_I_LATTICE, FS_LATTICE, MACLANE_LATTICE, NINE_THREE_LATTICES, get
from arrlab.classify import NineLineClass, OutsideTheorem, classify_nine, find_maclane_sublattice, validate_evidence
from arrlab.geometry import Arrangement, incidence_of, intersect, line_through
from arrlab.lattice import IncidenceStructure
from arrlab.sampling import random_realizable
from shared_lattices import HIRZEBRUCH_FAIL


def _shuffled(s: IncidenceStructure, seed: int) -> IncidenceStructure:
    perm = list(range(1, s.n + 1))
    random.Random(seed).shuffle(perm)
    return s.relabel(perm)


def test_fs_lattice():
    c = classify_nine(FS_LATTICE)
    assert c.tag == "FalkSturmfels"
    assert c.evidence["kind"] == "iso" and c.evidence["perm"] == list(range(1, 10))
    assert validate_evidence(FS_LATTICE, c)


def test_a_pm_i_lattice():
    c = classify_nine(A_PM_I_LATTICE)
    assert c.tag == "APlusMinusI" and validate_evidence(A_PM_I_LATTICE, c)


@pytest.mark.parametrize("k", "abc")
def test_nine_three(k):
    c = classify_nine(NINE_THREE_LATTICES[k])
    assert c.tag == "IrreducibleModuli"
    assert c.evidence["target"] == f"nine_three_{k}"


def test_maclane_plus_sparse_line():
    # line 9 only passes through the MacLane triple point 1&2&5
    s = IncidenceStructure.from_sets(9, [m + (9,) if m == (1, 2, 5) else m for m in MACLANE_LATTICE.multiples])
    c = classify_nine(s)
    assert c.tag == "ContainsMacLane"
    assert c.evidence == {"kind": "deletion", "line": 9, "rest": "maclane", "perm": c.evidence["perm"]}
    assert validate_evidence(s, c)


def test_relabelled_inputs_keep_their_class():
    for s, tag in ((FS_LATTICE, "FalkSturmfels"), (A_PM_I_LATTICE, "APlusMinusI")):
        for seed in range(5):
            t = _shuffled(s, seed)
            c = classify_nine(t)
            assert c.tag == tag and validate_evidence(t, c)


def test_wrong_size():
    with pytest.raises(ValueError):
        classify_nine(MACLANE_LATTICE)


def test_hirzebruch_failure_is_outside_with_trace():
    with pytest.raises(OutsideTheorem) as info:
        classify_nine(HIRZEBRUCH_FAIL)
    assert info.value.trace == ["Hirzebruch fail"]


def test_dual_hesse_contains_maclane():
    L = get("maclane+").arrangement.lines
    # a ninth line through double points of MacLane completing twelve triple points
    pts = []
    for i in range(8):
        for j in range(i + 1, 8):
            p = intersect(L[i], L[j])
            if sum(l.contains(p) for l in L) == 2:
                pts.append(p)
    best = None
    for a in range(len(pts)):
        for b in range(a + 1, len(pts)):
            if pts[a] == pts[b]:
                continue
            cand = line_through(pts[a], pts[b])
            if cand in L:
                continue
            s = incidence_of(Arrangement(list(L) + [cand], -3))
            if len(s.multiples) == 12:
                best = s
                break
        if best:
            break
    assert best is not None
    assert find_maclane_sublattice(best) is not None
    c = classify_nine(best)
    assert c.tag == "ContainsMacLane" and validate_evidence(best, c)


def test_tampered_evidence_is_rejected():
    c = classify_nine(FS_LATTICE)
    bad = NineLineClass(c.tag, {**c.evidence, "perm": [2, 1] + list(range(3, 10))})
    assert not validate_evidence(FS_LATTICE, bad)
    assert not validate_evidence(FS_LATTICE, NineLineClass("APlusMinusI", c.evidence))


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_random_realizable_never_outside(seed):
    s = incidence_of(random_realizable(random.Random(seed), 9))
    c = classify_nine(s)
    assert validate_evidence(s, c)
