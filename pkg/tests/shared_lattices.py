"""Lattices used by more than one test module."""

from arrlab.lattice import IncidenceStructure

# two quadruple and seven triple points leave n2 = 3: 3 + 21/4 < 9
HIRZEBRUCH_FAIL = IncidenceStructure.from_sets(
    9, [(1, 2, 5, 7), (1, 3, 8), (1, 6, 9), (2, 3, 4), (2, 6, 8), (3, 5, 6), (3, 7, 9), (4, 5, 8, 9), (4, 6, 7)]
)

# FS-type lattice whose closure t^3 - 3t^2 + t has the root t = 0, where two lines coincide
DEGENERATE = IncidenceStructure.from_sets(
    9, [(1, 2, 8), (1, 4, 7), (1, 5, 9), (2, 3, 5), (2, 6, 7, 9), (3, 4, 9), (3, 6, 8), (4, 5, 6), (5, 7, 8)]
)
