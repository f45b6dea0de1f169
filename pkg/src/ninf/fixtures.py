"""Embedded Latin squares and cubes used as construction inputs and test anchors.

Squares are written row by row with 1-based symbols.  Cubes are written as a
stack of layers where layer ``x`` holds the symbols ``H[i, j, x]``.
"""
from functools import lru_cache

from .core import Hypercube, LatinSquare


def _grid(text: str) -> list[list[int]]:
    return [[int(v) for v in line.split()] for line in text.strip().splitlines() if line.strip()]


def _layers(text: str) -> list[list[list[int]]]:
    return [_grid(chunk) for chunk in text.strip().split("\n\n")]


_E = """
    1 2 3 4 5 6 7 8
    2 3 5 7 8 1 6 4
    3 1 8 5 6 4 2 7
    4 7 1 8 3 2 5 6
    5 6 7 1 4 3 8 2
    6 4 2 3 7 8 1 5
    7 8 4 6 2 5 3 1
    8 5 6 2 1 7 4 3
"""

_A8 = """
    4 8 6 7 5 1 3 2
    8 6 4 2 7 5 1 3
    1 7 5 3 4 2 6 8
    5 4 3 1 2 6 8 7
    3 2 1 4 6 8 7 5
    2 1 7 5 8 3 4 6
    6 3 2 8 1 7 5 4
    7 5 8 6 3 4 2 1
"""

_B8 = """
    4 1 7 2 8 6 5 3
    7 3 5 8 6 1 4 2
    3 5 8 4 1 7 2 6
    2 7 4 6 3 8 1 5
    1 8 6 5 4 2 3 7
    6 4 3 7 2 5 8 1
    5 2 1 3 7 4 6 8
    8 6 2 1 5 3 7 4
"""

_A9 = """
    2 8 6 3 1 4 5 9 7
    8 6 2 9 5 1 3 7 4
    3 4 7 1 2 5 6 8 9
    1 3 5 2 4 9 7 6 8
    9 1 8 7 3 2 4 5 6
    7 2 1 6 9 3 8 4 5
    4 5 9 8 7 6 1 2 3
    5 7 3 4 6 8 9 1 2
    6 9 4 5 8 7 2 3 1
"""

_B9 = """
    2 4 3 7 8 6 9 5 1
    3 7 9 5 4 8 2 1 6
    4 6 1 3 9 2 5 7 8
    6 2 4 9 5 1 8 3 7
    7 5 6 8 1 4 3 9 2
    5 9 2 1 3 7 6 8 4
    1 3 8 2 6 5 7 4 9
    8 1 5 6 7 9 4 2 3
    9 8 7 4 2 3 1 6 5
"""

_J = """
    3 2 1
    1 3 2
    2 1 3
"""

_Z = """
    1 2 3
    2 3 1
    3 1 2
"""

_CUBE4 = """
    1 2 3 4
    2 3 4 1
    3 4 1 2
    4 1 2 3

    2 1 4 3
    1 4 3 2
    4 3 2 1
    3 2 1 4

    3 4 2 1
    4 2 1 3
    2 1 3 4
    1 3 4 2

    4 3 1 2
    3 1 2 4
    1 2 4 3
    2 4 3 1
"""

_CUBE6 = """
    1 2 3 4 5 6
    2 1 4 3 6 5
    3 4 6 5 1 2
    4 3 5 6 2 1
    5 6 1 2 4 3
    6 5 2 1 3 4

    2 1 4 3 6 5
    1 3 2 6 5 4
    6 2 5 4 3 1
    3 4 6 5 1 2
    4 5 3 1 2 6
    5 6 1 2 4 3

    3 4 5 6 1 2
    4 2 6 5 3 1
    5 6 3 1 2 4
    6 5 1 2 4 3
    1 3 2 4 6 5
    2 1 4 3 5 6

    4 3 6 5 2 1
    3 5 1 2 4 6
    2 1 4 6 5 3
    5 6 2 1 3 4
    6 4 5 3 1 2
    1 2 3 4 6 5

    5 6 1 2 3 4
    6 4 5 1 2 3
    1 5 2 3 4 6
    2 1 3 4 6 5
    3 2 4 6 5 1
    4 3 6 5 1 2

    6 5 2 1 4 3
    5 6 3 4 1 2
    4 3 1 2 6 5
    1 2 4 3 5 6
    2 1 6 5 3 4
    3 4 5 6 2 1
"""


@lru_cache(maxsize=None)
def square(name: str) -> LatinSquare:
    """One of ``E``, ``A8``, ``B8``, ``A9``, ``B9``, ``J`` or ``Z``."""
    table = {"E": _E, "A8": _A8, "B8": _B8, "A9": _A9, "B9": _B9, "J": _J, "Z": _Z}
    return LatinSquare.from_rows(_grid(table[name]))


@lru_cache(maxsize=None)
def cube(order: int) -> Hypercube:
    """The embedded subcube-free Latin cube of order 4 or 6."""
    return Hypercube.from_layers(_layers({4: _CUBE4, 6: _CUBE6}[order]))


SQUARE_NAMES = ("E", "A8", "B8", "A9", "B9", "J", "Z")
