import itertools
import json

import pytest

from arrlab import census
from arrlab.catalog import A_PM_I_LATTICE, FS_LATTICE, NINE_THREE_LATTICES
from arrlab.classify import classify_nine, validate_evidence
from arrlab.lattice import find_isomorphism, is_simple_C_le_3


@pytest.fixture(scope="module")
def results():
    return {
        "933": census.enumerate_933(),
        "ten": census.enumerate_ten_triples(),
        "quad": census.enumerate_quadruple_case(),
    }


def test_triple_families_respects_degrees():
    fams = list(census.triple_families(7, [3] * 7))
    # the Fano plane: 7!/168 = 30 labelled copies
    assert len(fams) == 30
    for f in fams:
        for i in range(1, 8):
            assert sum(i in b for b in f) == 3
        pairs = [p for b in f for p in itertools.combinations(b, 2)]
        assert len(pairs) == len(set(pairs))


def test_fixed_sets_must_be_compatible():
    with pytest.raises(ValueError):
        list(census.triple_families(5, [1] * 5, [(1, 2, 3), (1, 2, 4)]))


def test_nine_three(results):
    r = results["933"]
    assert len(r.structures) == 3
    assert sorted(census.catalog_match(s) for s in r.structures) == ["nine_three_a", "nine_three_b", "nine_three_c"]
    assert r.verdicts == ["irreducible_family"] * 3


def test_ten_triples(results):
    r = results["ten"]
    assert len(r.structures) == 1
    assert find_isomorphism(r.structures[0], A_PM_I_LATTICE) is not None
    assert r.verdicts == ["points:2:d=-1"]
    assert r.extra["lines_with_four_triples"] == 3


def test_ten_triples_simple_ones_classify_irreducible(results):
    from arrlab.lattice import IncidenceStructure

    simple = [IncidenceStructure.from_json(d) for d in results["ten"].extra["simple_structures"]]
    assert simple
    for s in simple:
        assert is_simple_C_le_3(s).simple
        assert classify_nine(s).tag == "IrreducibleModuli"


def test_quadruple_case(results):
    r = results["quad"]
    assert r.extra["max_admissible_n4"] == 1
    assert r.extra["n4_real_bound"] == "9/5"
    survivors = [s for s, v in zip(r.structures, r.verdicts) if v != "infeasible"]
    assert len(survivors) == 1
    assert find_isomorphism(survivors[0], FS_LATTICE) is not None


def test_profiles_with_two_quadruple_points_all_fail():
    for p in census.quadruple_profiles():
        if p.n4 >= 2:
            assert not p.admissible


def test_triple_bound():
    r = census.check_triple_bound()
    assert r.ok and r.survivors == []
    assert r.candidates == r.with_maclane


def test_census_members_classify(results):
    for r in results.values():
        for s in r.structures:
            c = classify_nine(s)
            assert validate_evidence(s, c)


def test_isomorph_free(results):
    for r in results.values():
        for a, b in itertools.combinations(r.structures, 2):
            assert find_isomorphism(a, b) is None


def test_parallel_matches_serial(monkeypatch):
    serial = json.dumps(census.enumerate_933().to_json(), sort_keys=True)
    monkeypatch.setenv("ARRLAB_THREADS", "2")
    parallel = json.dumps(census.enumerate_933().to_json(), sort_keys=True)
    assert serial == parallel


def test_worker_count_env(monkeypatch):
    monkeypatch.setenv("ARRLAB_THREADS", "1")
    assert census.worker_count() == 1
    monkeypatch.setenv("ARRLAB_THREADS", "junk")
    assert census.worker_count() == 1


def test_catalog_match_names():
    assert census.catalog_match(NINE_THREE_LATTICES["b"]) == "nine_three_b"
