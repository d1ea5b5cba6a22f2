import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arrlab.exact import MixedField, QuadExt
from arrlab.geometry import (
    Arrangement,
    EqualLines,
    EqualPoints,
    ProjLine,
    ProjPoint,
    ProjTransform,
    SingularMatrix,
    apply_transform,
    conjugate_arrangement,
    incidence_of,
    intersect,
    line_through,
    normalize_frame,
)
from arrlab.sampling import random_arrangement


def test_canonical_scaling():
    assert ProjLine([2, 4, 6]) == ProjLine([1, 2, 3]) == ProjLine([-1, -2, -3])
    assert ProjPoint([0, 3, 0]) == ProjPoint([0, 1, 0])
    with pytest.raises(ValueError):
        ProjPoint([0, 0, 0])


def test_intersect_and_join():
    x, y = ProjLine([1, 0, 0]), ProjLine([0, 1, 0])
    p = intersect(x, y)
    assert p == ProjPoint([0, 0, 1])
    assert x.contains(p) and y.contains(p)
    q = ProjPoint([1, 1, 1])
    assert line_through(p, q) == ProjLine([1, -1, 0])


def test_degenerate_inputs():
    l = ProjLine([1, 2, 3])
    with pytest.raises(EqualLines):
        intersect(l, ProjLine([2, 4, 6]))
    p = ProjPoint([1, 0, 1])
    with pytest.raises(EqualPoints):
        line_through(p, p)
    with pytest.raises(EqualLines):
        Arrangement([[1, 0, 0], [2, 0, 0]])


def test_mixed_fields_rejected():
    with pytest.raises(MixedField):
        Arrangement([[1, QuadExt(0, 1, 5), 0], [1, QuadExt(0, 1, -1), 0]])


def test_field_is_inferred():
    arr = Arrangement([[1, 0, 0], [0, 1, QuadExt(0, 1, 2)], [1, 1, 1]])
    assert arr.field_d == 2


def test_json_round_trip():
    arr = Arrangement([[1, 0, 0], [0, 1, QuadExt(Fraction(1, 2), 3, 5)], [1, 1, 1]])
    assert Arrangement.from_json(arr.to_json()) == arr


def test_pencil_gives_one_multiple_point():
    arr = Arrangement([[1, 0, 0], [0, 1, 0], [1, 1, 0], [1, 2, 0], [0, 0, 1]])
    s = incidence_of(arr)
    assert s.multiples == ((1, 2, 3, 4),)


def test_two_lines_have_no_multiples():
    assert incidence_of(Arrangement([[1, 0, 0], [0, 1, 0]])).multiples == ()


def test_singular_matrix():
    with pytest.raises(SingularMatrix):
        ProjTransform([[1, 2, 3], [2, 4, 6], [0, 0, 1]])


def test_transform_preserves_incidence_of_points_and_lines():
    T = ProjTransform([[1, 2, 0], [0, 1, 3], [1, 0, 1]])
    l = ProjLine([1, -1, 2])
    p = ProjPoint([1, 1, 0])
    assert l.contains(p)
    assert T.line(l).contains(T.point(p))


def test_normalize_frame_sends_frame_to_standard_lines():
    arr = Arrangement([[1, 2, 3], [0, 1, 1], [1, 0, 5], [2, 1, 1], [1, 1, 1]])
    out = normalize_frame(arr, (1, 2, 3, 4))
    assert out[:4] == [ProjLine([1, 0, 0]), ProjLine([0, 1, 0]), ProjLine([0, 0, 1]), ProjLine([1, 1, 1])]


def _random_transform(rng: random.Random) -> ProjTransform:
    while True:
        try:
            return ProjTransform([[rng.randint(-4, 4) for _ in range(3)] for _ in range(3)])
        except SingularMatrix:
            continue


def _lines_through_points(rng: random.Random, n: int) -> Arrangement:
    """Lines joining a few integer points, so concurrencies are common."""
    pts = [ProjPoint([rng.randint(-3, 3), rng.randint(-3, 3), 1]) for _ in range(4)]
    lines: list[ProjLine] = []
    while len(lines) < n:
        p, q = rng.choice(pts), rng.choice(pts + [ProjPoint([rng.randint(-5, 5), rng.randint(-5, 5), 1])])
        if p == q:
            continue
        l = line_through(p, q)
        if l not in lines:
            lines.append(l)
    return Arrangement(lines)


@settings(max_examples=10_000, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(4, 6))
def test_transform_commutes_with_incidence(seed, n):
    rng = random.Random(seed)
    arr = _lines_through_points(rng, n)
    T = _random_transform(rng)
    assert incidence_of(apply_transform(arr, T)) == incidence_of(arr)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_transform_commutes_with_incidence_nine_lines(seed):
    rng = random.Random(seed)
    arr = random_arrangement(rng, 9)
    assert incidence_of(apply_transform(arr, _random_transform(rng))) == incidence_of(arr)


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_conjugation_preserves_incidence(seed):
    from arrlab.sampling import perturbed_catalog

    arr = perturbed_catalog(random.Random(seed), 9)
    assert incidence_of(conjugate_arrangement(arr)) == incidence_of(arr)
