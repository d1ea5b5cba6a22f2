"""Projective points, lines and arrangements over Q(sqrt d)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .exact import DivisionByZero, MixedField, Number, QuadExt, common_field, format_quad, parse_quad
from .lattice import IncidenceStructure

Triple = tuple[QuadExt, QuadExt, QuadExt]


class EqualLines(ValueError):
    pass


class EqualPoints(ValueError):
    pass


class SingularMatrix(ValueError):
    pass


def _canonical(coords: Iterable[Number]) -> Triple:
    c = tuple(QuadExt.coerce(x) for x in coords)
    if len(c) != 3:
        raise ValueError("need three homogeneous coordinates")
    for x in c:
        if x:
            inv = x.inverse()
            return (c[0] * inv, c[1] * inv, c[2] * inv)
    raise ValueError("all coordinates are zero")


def cross(u: Sequence[QuadExt], v: Sequence[QuadExt]) -> Triple:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def dot(u: Sequence[QuadExt], v: Sequence[QuadExt]) -> QuadExt:
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


@dataclass(frozen=True)
class ProjPoint:
    coords: Triple

    def __init__(self, coords: Iterable[Number]):
        object.__setattr__(self, "coords", _canonical(coords))

    def __iter__(self):
        return iter(self.coords)

    def __str__(self) -> str:
        return "[" + ":".join(format_quad(c) for c in self.coords) + "]"


@dataclass(frozen=True)
class ProjLine:
    """The line a*x + b*y + c*z = 0."""

    coeffs: Triple

    def __init__(self, coeffs: Iterable[Number]):
        object.__setattr__(self, "coeffs", _canonical(coeffs))

    def __iter__(self):
        return iter(self.coeffs)

    def contains(self, p: ProjPoint) -> bool:
        return not dot(self.coeffs, p.coords)

    def conjugate(self) -> ProjLine:
        return ProjLine(c.conjugate() for c in self.coeffs)

    def to_json(self) -> list[str]:
        return [format_quad(c) for c in self.coeffs]

    def __str__(self) -> str:
        return "(" + ", ".join(self.to_json()) + ")"


def intersect(l1: ProjLine, l2: ProjLine) -> ProjPoint:
    if l1 == l2:
        raise EqualLines(f"{l1} twice")
    return ProjPoint(cross(l1.coeffs, l2.coeffs))


def line_through(p: ProjPoint, q: ProjPoint) -> ProjLine:
    if p == q:
        raise EqualPoints(f"{p} twice")
    return ProjLine(cross(p.coords, q.coords))


@dataclass(frozen=True)
class Arrangement:
    lines: tuple[ProjLine, ...]
    field_d: int = 1

    def __init__(self, lines: Iterable[ProjLine | Iterable[Number]], field_d: int | None = None):
        ls = tuple(l if isinstance(l, ProjLine) else ProjLine(l) for l in lines)
        found = common_field(c for l in ls for c in l.coeffs)
        if field_d is None:
            field_d = found
        elif found not in (1, field_d):
            raise MixedField(f"coefficients in sqrt({found}), declared sqrt({field_d})")
        if len(set(ls)) != len(ls):
            dup = next(l for l in ls if ls.count(l) > 1)
            raise EqualLines(f"line {dup} repeated")
        object.__setattr__(self, "lines", ls)
        object.__setattr__(self, "field_d", field_d)

    def __len__(self) -> int:
        return len(self.lines)

    def to_json(self) -> dict:
        return {"field_d": self.field_d, "lines": [l.to_json() for l in self.lines]}

    @classmethod
    def from_json(cls, data: dict) -> Arrangement:
        lines = [[parse_quad(str(c)) for c in row] for row in data["lines"]]
        return cls(lines, int(data.get("field_d", 1)))


def incidence_of(arr: Arrangement) -> IncidenceStructure:
    """Group the pairwise intersections by point and keep those on >= 3 lines."""
    at: dict[ProjPoint, set[int]] = {}
    for (i, a), (j, b) in itertools.combinations(enumerate(arr.lines, start=1), 2):
        p = ProjPoint(cross(a.coeffs, b.coeffs))
        at.setdefault(p, set()).update((i, j))
    return IncidenceStructure.from_sets(len(arr.lines), (s for s in at.values() if len(s) >= 3))


def conjugate_arrangement(arr: Arrangement) -> Arrangement:
    return Arrangement((l.conjugate() for l in arr.lines), arr.field_d)


# ---------------------------------------------------------------------------
# projective transformations

Matrix = tuple[Triple, Triple, Triple]


def _mat(rows: Iterable[Iterable[Number]]) -> Matrix:
    m = tuple(tuple(QuadExt.coerce(x) for x in r) for r in rows)
    if len(m) != 3 or any(len(r) != 3 for r in m):
        raise ValueError("need a 3x3 matrix")
    return m  # type: ignore[return-value]


def det3(m: Matrix) -> QuadExt:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def adjugate(m: Matrix) -> Matrix:
    def minor(i, j):
        r = [k for k in range(3) if k != i]
        c = [k for k in range(3) if k != j]
        return m[r[0]][c[0]] * m[r[1]][c[1]] - m[r[0]][c[1]] * m[r[1]][c[0]]

    # adj[i][j] = (-1)^(i+j) * minor(j, i)
    return tuple(
        tuple(minor(j, i) * (1 if (i + j) % 2 == 0 else -1) for j in range(3)) for i in range(3)
    )  # type: ignore[return-value]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    return tuple(
        tuple(a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j] for j in range(3))
        for i in range(3)
    )  # type: ignore[return-value]


def matvec(m: Matrix, v: Sequence[QuadExt]) -> Triple:
    return tuple(m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2] for i in range(3))  # type: ignore[return-value]


@dataclass(frozen=True)
class ProjTransform:
    """Invertible 3x3 matrix acting on row-vector points from the right: p -> p*M.

    Lines (column vectors) then map by the adjugate: l -> adj(M) l.
    """

    matrix: Matrix

    def __init__(self, rows: Iterable[Iterable[Number]]):
        m = _mat(rows)
        if not det3(m):
            raise SingularMatrix("determinant is zero")
        object.__setattr__(self, "matrix", m)

    @classmethod
    def identity(cls) -> ProjTransform:
        return cls([[1, 0, 0], [0, 1, 0], [0, 0, 1]])

    def then(self, other: ProjTransform) -> ProjTransform:
        """Apply self, then other."""
        return ProjTransform(matmul(self.matrix, other.matrix))

    def point(self, p: ProjPoint) -> ProjPoint:
        m = self.matrix
        v = p.coords
        return ProjPoint(v[0] * m[0][j] + v[1] * m[1][j] + v[2] * m[2][j] for j in range(3))

    def line(self, l: ProjLine) -> ProjLine:
        return ProjLine(matvec(adjugate(self.matrix), l.coeffs))


def apply_transform(arr: Arrangement, T: ProjTransform) -> Arrangement:
    adj = adjugate(T.matrix)
    lines = [ProjLine(matvec(adj, l.coeffs)) for l in arr.lines]
    d = common_field(c for l in lines for c in l.coeffs)
    return Arrangement(lines, arr.field_d if d == 1 else d)


def frame_normalizer(lines: Sequence[ProjLine]) -> Matrix:
    """Matrix N (acting on line vectors) with N l_k proportional to x, y, z, x+y+z.

    ``lines`` are four lines, no three concurrent.
    """
    a, b, c, e = (l.coeffs for l in lines)
    basis = ((a[0], b[0], c[0]), (a[1], b[1], c[1]), (a[2], b[2], c[2]))  # columns a, b, c
    D = det3(basis)
    if not D:
        raise SingularMatrix("first three frame lines are concurrent")
    inv = adjugate(basis)
    lam = matvec(inv, e)  # e = sum lam_k * col_k (up to the factor D)
    if not all(lam):
        raise SingularMatrix("frame has three concurrent lines")
    # N = diag(1/lam) * basis^{-1}; scale by D*prod(lam) to stay division-free
    l0, l1, l2 = lam
    scale = (l1 * l2, l0 * l2, l0 * l1)
    return tuple(tuple(scale[i] * inv[i][j] for j in range(3)) for i in range(3))  # type: ignore[return-value]


def normalize_frame(arr: Arrangement, frame: Sequence[int]) -> list[ProjLine]:
    """Lines of ``arr`` after sending the frame lines (1-based) to x, y, z, x+y+z."""
    N = frame_normalizer([arr.lines[i - 1] for i in frame])
    return [ProjLine(matvec(N, l.coeffs)) for l in arr.lines]
