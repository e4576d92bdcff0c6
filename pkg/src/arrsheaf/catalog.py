"""Arrangements used throughout the tests and demos."""

from __future__ import annotations

from .arrangement import Arrangement


def _make(n, rows):
    return Arrangement.from_rows(n, rows)


def boolean(n: int = 3) -> Arrangement:
    return _make(n, [[int(i == j) for j in range(n)] + [0] for i in range(n)])


def braid() -> Arrangement:
    """Essentialized braid arrangement: x, y, z, x-y, x-z, y-z."""
    return _make(3, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0],
                     [1, -1, 0, 0], [1, 0, -1, 0], [0, 1, -1, 0]])


def cone5() -> Arrangement:
    """z, x-z, x+z, y-z, y+z."""
    return _make(3, [[0, 0, 1, 0], [1, 0, -1, 0], [1, 0, 1, 0],
                     [0, 1, -1, 0], [0, 1, 1, 0]])


def cone4() -> Arrangement:
    """x-z, x+z, y-z, y+z."""
    return _make(3, [[1, 0, -1, 0], [1, 0, 1, 0], [0, 1, -1, 0], [0, 1, 1, 0]])


def braid_plus_generic() -> Arrangement:
    """The braid arrangement with one extra plane x + 3y + 7z: seven planes, four triple lines."""
    return _make(3, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0],
                     [1, -1, 0, 0], [1, 0, -1, 0], [0, 1, -1, 0], [1, 3, 7, 0]])


def generic_cone4() -> Arrangement:
    """x, y, z, x+y+z: a cone over four lines in general position."""
    return _make(3, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [1, 1, 1, 0]])


def generic_cone5() -> Arrangement:
    return _make(3, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [1, 1, 1, 0], [1, 2, 5, 0]])


def pencil(m: int) -> Arrangement:
    """m lines through the origin of C^2."""
    return _make(2, [[1, k, 0] for k in range(m)])


def pencil3() -> Arrangement:
    return pencil(3)


def triangle() -> Arrangement:
    """Three lines in general position: x, y, x+y-1."""
    return _make(2, [[1, 0, 0], [0, 1, 0], [1, 1, -1]])


def boolean_plus_diagonal() -> Arrangement:
    """x, y, x-y, z: decomposable into a pencil and a single plane."""
    return _make(3, [[1, 0, 0, 0], [0, 1, 0, 0], [1, -1, 0, 0], [0, 0, 1, 0]])


def x3_cone() -> Arrangement:
    """x, y, z, x+y, x+z, y+z: six planes with three triple lines."""
    return _make(3, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0],
                     [1, 1, 0, 0], [1, 0, 1, 0], [0, 1, 1, 0]])


CATALOG = {
    "boolean": boolean,
    "braid": braid,
    "cone5": cone5,
    "cone4": cone4,
    "braid7": braid_plus_generic,
    "generic4": generic_cone4,
    "generic5": generic_cone5,
    "pencil3": pencil3,
    "triangle": triangle,
    "boolean_diag": boolean_plus_diagonal,
    "x3": x3_cone,
}
