"""Named arrangements: MacLane, Falk-Sturmfels, A^{+-sqrt(-1)}, the three
9_3 configurations and the extended Falk-Sturmfels pair.

Every entry carries exact coordinates and the lattice those coordinates are
expected to produce (line indices in construction order).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact import QuadExt
from .geometry import Arrangement, ProjTransform
from .lattice import IncidenceStructure


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    arrangement: Arrangement
    expected_lattice: IncidenceStructure
    line_names: tuple[str, ...]
    notes: str = ""

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "line_names": list(self.line_names),
            "arrangement": self.arrangement.to_json(),
            "lattice": self.expected_lattice.to_json(),
            "notes": self.notes,
        }


def _sign(sign: str | int) -> int:
    if sign in ("+", 1, "plus"):
        return 1
    if sign in ("-", -1, "minus"):
        return -1
    raise ValueError(f"sign must be '+' or '-', got {sign!r}")


def _suffix(s: int) -> str:
    return "+" if s > 0 else "-"


def golden(sign: str | int) -> QuadExt:
    """(1 +- sqrt 5)/2, the roots of x^2 - x - 1."""
    return QuadExt(Fraction(1, 2), Fraction(_sign(sign), 2), 5)


def eisenstein(sign: str | int) -> QuadExt:
    """(1 +- sqrt -3)/2, the roots of x^2 - x + 1."""
    return QuadExt(Fraction(1, 2), Fraction(_sign(sign), 2), -3)


MACLANE_LATTICE = IncidenceStructure.from_sets(
    8,
    [(1, 2, 5), (1, 3, 6), (1, 4, 8), (2, 4, 7), (2, 6, 8), (3, 4, 5), (3, 7, 8), (5, 6, 7)],
)

FS_LATTICE = IncidenceStructure.from_sets(
    9,
    [
        (1, 2, 3, 4), (1, 5, 9), (1, 6, 7), (2, 5, 8), (2, 6, 9),
        (3, 6, 8), (3, 7, 9), (4, 5, 7), (4, 8, 9),
    ],
)

A_PM_I_LATTICE = IncidenceStructure.from_sets(
    9,
    [
        (1, 2, 7), (1, 3, 5), (1, 4, 9), (1, 6, 8), (2, 4, 6),
        (2, 8, 9), (3, 4, 7), (3, 6, 9), (4, 5, 8), (5, 6, 7),
    ],
)

NINE_THREE_LATTICES = {
    "a": IncidenceStructure.from_sets(
        9,
        [(1, 2, 3), (1, 4, 8), (1, 5, 9), (2, 4, 7), (2, 6, 9), (3, 5, 7), (3, 6, 8), (4, 5, 6), (7, 8, 9)],
    ),
    "b": IncidenceStructure.from_sets(
        9,
        [(1, 2, 3), (1, 5, 9), (1, 6, 8), (2, 4, 7), (2, 8, 9), (3, 4, 8), (3, 5, 7), (4, 5, 6), (6, 7, 9)],
    ),
    "c": IncidenceStructure.from_sets(
        9,
        [(1, 2, 3), (1, 4, 7), (1, 6, 9), (2, 4, 8), (2, 5, 7), (3, 5, 9), (3, 6, 8), (4, 5, 6), (7, 8, 9)],
    ),
}

# H10 runs through L1&L2 (the quadruple point, which becomes quintuple)
# and the double points K1&K2, K3&K4; same lattice for both signs.
EXT_FS_LATTICE = IncidenceStructure.from_sets(
    10,
    [(1, 2, 3, 4, 10), (5, 6, 10), (7, 8, 10)]
    + [m for m in FS_LATTICE.multiples if len(m) == 3],
)


def maclane(sign: str | int = "+") -> CatalogEntry:
    s = _sign(sign)
    w = eisenstein(s)
    lines = [
        (1, 0, 0),       # x
        (0, 1, 0),       # y
        (1, 0, -1),      # x - z
        (0, 1, -1),      # y - z
        (1, -1, 0),      # x - y
        (1, 0, -w),      # x - w z
        (0, 1, -w),      # y - w z
        (w - 1, -1, 1),  # (w - 1) x - y + z
    ]
    return CatalogEntry(
        f"maclane{_suffix(s)}",
        Arrangement(lines, -3),
        MACLANE_LATTICE,
        ("x", "y", "x-z", "y-z", "x-y", "x-wz", "y-wz", "(w-1)x-y+z"),
        "eight lines, eight triple points; w = (1+-sqrt(-3))/2",
    )


FS_NAMES = ("L1", "L2", "L3", "L4", "K1", "K2", "K3", "K4", "H9")


def _fs_lines(g: QuadExt) -> list:
    return [
        (1, 0, 0),            # L1: x = 0
        (1, -g, g),           # L2: x = g (y - z)
        (0, 1, -1),           # L3: y = z
        (1, 1, -1),           # L4: x + y = z
        (1, 0, -1),           # K1: x = z
        (1, -g, 0),           # K2: x = g y
        (0, 1, 0),            # K3: y = 0
        (1, 1, -(g + 1)),     # K4: x + y = (g + 1) z
        (0, 0, 1),            # H9: z = 0
    ]


def falk_sturmfels(sign: str | int = "+") -> CatalogEntry:
    s = _sign(sign)
    return CatalogEntry(
        f"fs{_suffix(s)}",
        Arrangement(_fs_lines(golden(s)), 5),
        FS_LATTICE,
        FS_NAMES,
        "one quadruple point, eight triple points; g = (1+-sqrt 5)/2",
    )


def h10(sign: str | int) -> tuple[QuadExt, QuadExt, QuadExt]:
    """y = (1/g - 1) x + z."""
    g = golden(sign)
    return (1 / g - 1, QuadExt(-1), QuadExt(1))


def extended_falk_sturmfels(sign: str | int = "+") -> CatalogEntry:
    s = _sign(sign)
    return CatalogEntry(
        f"ext_fs{_suffix(s)}",
        Arrangement(_fs_lines(golden(s)) + [h10(s)], 5),
        EXT_FS_LATTICE,
        FS_NAMES + ("H10",),
        "Falk-Sturmfels plus H10 through L1&L2, K1&K2, K3&K4",
    )


def a_pm_i(sign: str | int = "+") -> CatalogEntry:
    s = _sign(sign)
    i = QuadExt(0, s, -1)
    lines = [
        (1, 0, 0),          # x
        (0, 1, 0),          # y
        (1, 0, -1),         # x - z
        (0, 1, -1),         # y - z
        (1, 0, -i),         # x -+ i z
        (0, 1, -i),         # y -+ i z
        (1, -1, 0),         # x - y
        (i - 1, i, 1),      # (+-i - 1) x +- i y + z
        (1 - i, 1, -1),     # (1 -+ i) x + y - z
    ]
    return CatalogEntry(
        f"a_pm_i{_suffix(s)}",
        Arrangement(lines, -1),
        A_PM_I_LATTICE,
        ("x", "y", "x-z", "y-z", "x-iz", "y-iz", "x-y", "(i-1)x+iy+z", "(1-i)x+y-z"),
        "nine lines, ten triple points; i = +-sqrt(-1)",
    )


def _hor(c) -> tuple:
    return (0, 1, -c)


def _vert(c) -> tuple:
    return (1, 0, -c)


def _slope(m, c) -> tuple:
    """y = m x + c."""
    return (m, -1, c)


_NINE_THREE_LINES = {
    "a": [_slope(1, 1), _slope(Fraction(2, 3), 0), _slope(Fraction(1, 2), Fraction(-1, 2))],
    "b": [_slope(1, 1), _slope(Fraction(-2, 3), 2), _slope(2, -2)],
    "c": [_slope(1, 0), _slope(Fraction(1, 3), 1), _slope(-1, 3)],
}


def nine_three(which: str) -> CatalogEntry:
    if which not in _NINE_THREE_LINES:
        raise ValueError(f"9_3 type must be one of a, b, c; got {which!r}")
    # L1-L3: y = 0, 1, 2; L4-L6: x = 0, 1, 3; L7-L9 as drawn
    lines = [_hor(0), _hor(1), _hor(2), _vert(0), _vert(1), _vert(3)] + _NINE_THREE_LINES[which]
    return CatalogEntry(
        f"nine_three_{which}",
        Arrangement(lines, 1),
        NINE_THREE_LATTICES[which],
        tuple(f"L{k}" for k in range(1, 10)),
        "rational 9_3 configuration; grid y in {0,1,2}, x in {0,1,3}",
    )


def fs_transform() -> ProjTransform:
    """The matrix sending FS+ onto FS- (acting on row-vector points from the right)."""
    gm = golden("-")
    return ProjTransform([[-gm, -1, 0], [-gm, 0, 0], [gm, 1, 1]])


# FS+ line i goes to FS- line FS_PERMUTATION[i-1] under fs_transform();
# H10 is fixed.
FS_PERMUTATION = (3, 4, 2, 1, 7, 8, 6, 5, 9)


@lru_cache(maxsize=None)
def catalog() -> dict[str, CatalogEntry]:
    entries = [
        maclane("+"), maclane("-"),
        falk_sturmfels("+"), falk_sturmfels("-"),
        a_pm_i("+"), a_pm_i("-"),
        nine_three("a"), nine_three("b"), nine_three("c"),
        extended_falk_sturmfels("+"), extended_falk_sturmfels("-"),
    ]
    return {e.name: e for e in entries}


def get(name: str) -> CatalogEntry:
    try:
        return catalog()[name]
    except KeyError:
        raise KeyError(f"unknown catalog entry {name!r}; known: {', '.join(catalog())}") from None
