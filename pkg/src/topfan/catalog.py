"""Built-in example fans.

The projective-space and Hirzebruch entries are diagonally embedded ordinary
fans; the two nontoric entries keep the same cone geometry but twist the
vector data so that some transition exponent fails to be a scalar integer.
"""

from __future__ import annotations

from .czalgebra import CZMat, diagonal_vector
from .fan import SimplicialComplex, TopologicalFan


def cp(n: int) -> TopologicalFan:
    """Projective-space fan: n + 1 rays, maximal simplices omit one vertex each."""
    if not 1 <= n <= 4:
        raise ValueError("cp(n) is cataloged for 1 <= n <= 4")
    m = n + 1
    simplices = [[i for i in range(m) if i != omit] for omit in range(m)]
    rays = [[1 if j == i else 0 for j in range(n)] for i in range(n)]
    rays.append([-1] * n)
    beta = tuple(diagonal_vector(r) for r in rays)
    return TopologicalFan(n, SimplicialComplex(m, simplices), beta)


def hirzebruch(a: int) -> TopologicalFan:
    """Four-ray surface fan with rays (1,0), (0,1), (-1,a), (0,-1)."""
    rays = [(1, 0), (0, 1), (-1, a), (0, -1)]
    sc = SimplicialComplex(4, [[0, 1], [1, 2], [2, 3], [3, 0]])
    return TopologicalFan(2, sc, tuple(diagonal_vector(r) for r in rays))


def nontoric_line() -> TopologicalFan:
    """Two rays on the line with real part -2 against integer part -1."""
    sc = SimplicialComplex(2, [[0], [1]])
    beta = ((CZMat(1, 0, 1),), (CZMat(-2, 0, -1),))
    return TopologicalFan(1, sc, beta)


def nontoric_surface() -> TopologicalFan:
    """cp2 cone geometry with an imaginary twist on the first vector."""
    sc = SimplicialComplex(3, [[0, 1], [1, 2], [2, 0]])
    beta = (
        (CZMat(1, 0, 1), CZMat(0, 1, 0)),
        (CZMat(0, 0, 0), CZMat(1, 0, 1)),
        (CZMat(-1, 0, -1), CZMat(-1, 0, -1)),
    )
    return TopologicalFan(2, sc, beta)


_FIXED = {
    "cp1": lambda: cp(1),
    "cp2": lambda: cp(2),
    "cp3": lambda: cp(3),
    "cp4": lambda: cp(4),
    "nontoric-line": nontoric_line,
    "nontoric-surface": nontoric_surface,
}

_HIRZEBRUCH_DEFAULTS = ("hirzebruch-0", "hirzebruch-1", "hirzebruch-2", "hirzebruch--1")


def names() -> list[str]:
    return sorted(_FIXED) + list(_HIRZEBRUCH_DEFAULTS)


def get(name: str) -> TopologicalFan:
    """Look up a catalog fan; hirzebruch-<a> accepts any integer a."""
    if name in _FIXED:
        return _FIXED[name]()
    if name.startswith("hirzebruch-"):
        try:
            return hirzebruch(int(name[len("hirzebruch-") :]))
        except ValueError:
            raise KeyError(name) from None
    raise KeyError(name)


def all_fans() -> dict[str, TopologicalFan]:
    """Every fixed catalog fan plus the default Hirzebruch parameters."""
    fans = {name: factory() for name, factory in _FIXED.items()}
    for name in _HIRZEBRUCH_DEFAULTS:
        fans[name] = get(name)
    return fans
