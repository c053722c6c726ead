"""Exact strict-feasibility via Fourier-Motzkin elimination.

Decides systems of strict linear inequalities c . y + k > 0 over the
rationals and, when feasible, back-substitutes an explicit rational solution.
Row counts stay tiny for the cone dimensions this package handles, so no
attempt is made at redundancy removal beyond duplicate elimination.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .linalg import Vec

#: One strict inequality: (coefficients, constant) meaning coeffs . y + const > 0.
Row = tuple[Vec, Fraction]


def _normalize(coeffs: Sequence[Fraction], const: Fraction) -> Row:
    scale = max((abs(x) for x in (*coeffs, const)), default=Fraction(0))
    if scale == 0:
        return (tuple(coeffs), const)
    return (tuple(x / scale for x in coeffs), const / scale)


def strict_feasible(rows: Sequence[Row], dim: int) -> Optional[Vec]:
    """A rational point satisfying every row strictly, or None if infeasible."""
    current = {_normalize(c, k) for c, k in rows}
    stages: list[tuple[int, list[Row], list[Row]]] = []

    for var in reversed(range(dim)):
        lowers = [r for r in current if r[0][var] > 0]
        uppers = [r for r in current if r[0][var] < 0]
        passthrough = {r for r in current if r[0][var] == 0}
        stages.append((var, lowers, uppers))
        derived = set(passthrough)
        for lc, lk in lowers:
            for uc, uk in uppers:
                a, b = lc[var], -uc[var]
                coeffs = [b * x + a * y for x, y in zip(lc, uc)]
                coeffs[var] = Fraction(0)
                derived.add(_normalize(coeffs, b * lk + a * uk))
        current = derived

    for coeffs, const in current:
        # all variables eliminated in these rows
        if const <= 0:
            return None

    solution = [Fraction(0)] * dim
    for var, lowers, uppers in reversed(stages):
        lo_bounds = []
        for coeffs, const in lowers:
            rest = sum(
                (coeffs[j] * solution[j] for j in range(dim) if j != var),
                const,
            )
            lo_bounds.append(-rest / coeffs[var])
        up_bounds = []
        for coeffs, const in uppers:
            rest = sum(
                (coeffs[j] * solution[j] for j in range(dim) if j != var),
                const,
            )
            up_bounds.append(-rest / coeffs[var])
        if lo_bounds and up_bounds:
            lo, up = max(lo_bounds), min(up_bounds)
            solution[var] = (lo + up) / 2
        elif lo_bounds:
            solution[var] = max(lo_bounds) + 1
        elif up_bounds:
            solution[var] = min(up_bounds) - 1
        else:
            solution[var] = Fraction(0)
    return tuple(solution)
