import pytest

from arrlab.catalog import (
    EXT_FS_LATTICE,
    FS_PERMUTATION,
    catalog,
    eisenstein,
    extended_falk_sturmfels,
    falk_sturmfels,
    fs_transform,
    get,
    golden,
    nine_three,
)
from arrlab.geometry import apply_transform, conjugate_arrangement, incidence_of, intersect
from arrlab.lattice import find_isomorphism, profile_of


def test_eleven_entries():
    assert sorted(catalog()) == sorted(
        ["maclane+", "maclane-", "fs+", "fs-", "a_pm_i+", "a_pm_i-",
         "nine_three_a", "nine_three_b", "nine_three_c", "ext_fs+", "ext_fs-"]
    )


@pytest.mark.parametrize("name", sorted(catalog()))
def test_coordinates_produce_recorded_lattice(name):
    e = get(name)
    assert incidence_of(e.arrangement) == e.expected_lattice
    assert len(e.line_names) == len(e.arrangement)


def test_unknown_name():
    with pytest.raises(KeyError):
        get("nosuch")


def test_field_constants():
    assert golden("+") * golden("+") == golden("+") + 1
    w = eisenstein("-")
    assert w * w - w + 1 == 0


def test_signs_are_galois_conjugate():
    for base in ("maclane", "fs", "a_pm_i", "ext_fs"):
        plus, minus = get(base + "+").arrangement, get(base + "-").arrangement
        assert conjugate_arrangement(plus) == minus


def test_fs_field_and_size():
    e = falk_sturmfels("+")
    assert len(e.arrangement) == 9 and e.arrangement.field_d == 5
    assert profile_of(incidence_of(e.arrangement)).counts == {4: 1, 3: 8, 2: 6}


def test_nine_three_types_are_distinct():
    lats = [nine_three(k).expected_lattice for k in "abc"]
    for i in range(3):
        for j in range(i + 1, 3):
            assert find_isomorphism(lats[i], lats[j]) is None
    with pytest.raises(ValueError):
        nine_three("d")


def test_fs_transform_maps_plus_to_minus():
    plus, minus = extended_falk_sturmfels("+").arrangement, extended_falk_sturmfels("-").arrangement
    image = apply_transform(plus, fs_transform())
    perm = FS_PERMUTATION + (10,)
    for i in range(10):
        assert image.lines[i] == minus.lines[perm[i] - 1]


def test_h10_points():
    for sign in "+-":
        L = extended_falk_sturmfels(sign).arrangement.lines
        for a, b in ((0, 1), (4, 5), (6, 7)):
            assert L[9].contains(intersect(L[a], L[b]))
    # L1 & L2 is the quadruple point, so H10 turns it into a quintuple point
    assert (1, 2, 3, 4, 10) in EXT_FS_LATTICE.multiples
