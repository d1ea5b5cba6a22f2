import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arrlab.catalog import A_PM_I_LATTICE, EXT_FS_LATTICE, FS_LATTICE, MACLANE_LATTICE, NINE_THREE_LATTICES, get
from arrlab.exact import Poly, QuadExt
from arrlab.geometry import incidence_of
from arrlab.lattice import IncidenceStructure
from arrlab.moduli import (
    Infeasible,
    NoFrame,
    all_plans,
    moduli_verdict,
    plan_construction,
    realizations_equivalent,
    solve_moduli,
    valid_frames,
)
from arrlab.sampling import random_realizable
from shared_lattices import DEGENERATE

class TestPlan:
    def test_frame_has_no_concurrent_triple(self):
        for f in valid_frames(FS_LATTICE):
            assert all(len(set(f) & set(m)) < 3 for m in FS_LATTICE.multiples)

    def test_one_parameter_for_two_point_lattices(self):
        for s in (MACLANE_LATTICE, FS_LATTICE, A_PM_I_LATTICE):
            plan = plan_construction(s)
            assert plan.residual_parameters == 1
            assert set(plan.order) == set(range(1, s.n + 1))

    def test_explicit_frame(self):
        plan = plan_construction(FS_LATTICE, (1, 2, 5, 6))
        assert plan.frame == (1, 2, 5, 6)
        with pytest.raises(NoFrame):
            plan_construction(FS_LATTICE, (1, 2, 3, 5))

    def test_pencil_has_no_frame(self):
        with pytest.raises(NoFrame):
            plan_construction(IncidenceStructure.from_sets(5, [(1, 2, 3, 4, 5)]))

    def test_parameter_count_minus_closures_is_constant(self):
        # 2(n - 4) minus the number of concurrency conditions, whatever the frame
        s = NINE_THREE_LATTICES["b"]
        values = {p.residual_parameters - p.closure_constraints for p in all_plans(s)}
        assert len(values) == 1


class TestSolve:
    @pytest.mark.parametrize(
        "lattice,d,closure",
        [(MACLANE_LATTICE, -3, None), (FS_LATTICE, 5, Poly([-1, -1, 1])), (A_PM_I_LATTICE, -1, None)],
    )
    def test_two_conjugate_points(self, lattice, d, closure):
        rep = solve_moduli(lattice)
        assert rep.status == "points" and rep.point_count == 2
        assert rep.splitting_field_d == d
        if closure is not None:
            assert rep.closure_polynomial == closure
        r1, r2 = rep.roots
        assert r1.conjugate() == r2
        for arr in rep.realizations:
            assert incidence_of(arr) == lattice

    def test_extended_fs(self):
        rep = solve_moduli(EXT_FS_LATTICE)
        assert rep.point_count == 2 and rep.splitting_field_d == 5

    @pytest.mark.parametrize("k", "abc")
    def test_nine_three_irreducible(self, k):
        rep = solve_moduli(NINE_THREE_LATTICES[k])
        assert rep.status == "irreducible_family"
        assert incidence_of(rep.realizations[0]) == NINE_THREE_LATTICES[k]

    def test_pappus_closure_vanishes_identically(self):
        rep = solve_moduli(NINE_THREE_LATTICES["a"])
        assert rep.automatic_constraints >= 1
        assert rep.free_dimension == 2

    def test_degenerate_root_rejected(self):
        rep = solve_moduli(DEGENERATE)
        assert rep.closure_polynomial == Poly([0, 1, -3, 1])
        assert rep.degenerate_roots_rejected == 1
        assert [r for r, _ in rep.rejected_roots] == [QuadExt(0)]
        assert rep.point_count == 2 and rep.splitting_field_d == 5

    def test_fano_is_infeasible(self):
        fano = IncidenceStructure.from_sets(
            7, [(1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 5, 6)]
        )
        with pytest.raises(Infeasible):
            solve_moduli(fano)
        assert moduli_verdict(fano) == "infeasible"

    def test_report_json(self):
        data = solve_moduli(FS_LATTICE).to_json()
        assert data["status"] == "points"
        assert data["closure_polynomial"] == ["-1", "-1", "1"]


class TestEquivalence:
    def test_plus_minus_related_by_relabelling(self):
        for base in ("maclane", "fs", "a_pm_i"):
            a, b = get(base + "+").arrangement, get(base + "-").arrangement
            assert realizations_equivalent(a, b)
            assert not realizations_equivalent(a, b, permute=False)

    def test_moduli_points_are_the_catalog_signs(self):
        plus, minus = get("fs+"), get("fs-")
        rep = solve_moduli(FS_LATTICE)
        matched = {
            e.name
            for r in rep.realizations
            for e in (plus, minus)
            if realizations_equivalent(r, e.arrangement, permute=False)
        }
        assert matched == {"fs+", "fs-"}

    def test_different_lattices_never_equivalent(self):
        assert not realizations_equivalent(get("fs+").arrangement, get("a_pm_i+").arrangement)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_every_reported_point_realises_the_lattice(seed):
    """Roots producing extra incidences or coincident lines never reach the report."""
    arr = random_realizable(random.Random(seed), 8)
    s = incidence_of(arr)
    try:
        rep = solve_moduli(s)
    except NoFrame:
        return
    assert rep.status != "points" or rep.point_count >= 1
    for r in rep.realizations:
        assert incidence_of(r) == s
