"""A tiny dense simplex solver for the small exact LPs this package needs.

Solves  maximize c.x  subject to  A x <= b  with x free and b >= 0, so the
origin is always a feasible start.  Free variables are split into positive
parts and Bland's rule is used throughout, which guarantees termination and
keeps every pivot exact when the data are rational.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple

from . import scalars
from .scalars import Scalar, div


class UnboundedLP(RuntimeError):
    """The objective is unbounded over the feasible region."""


def simplex_max(obj: Sequence[Scalar],
                rows: Sequence[Sequence[Scalar]],
                rhs: Sequence[Scalar]) -> Tuple[Scalar, List[Scalar]]:
    """Maximize obj.x subject to rows[i].x <= rhs[i]; requires rhs >= 0.

    Returns (optimal value, optimizer).  Raises UnboundedLP when the problem
    is unbounded and ValueError when some rhs entry is negative.
    """
    m = len(rows)
    n = len(obj)
    for b in rhs:
        if scalars.lt(b, 0):
            raise ValueError("simplex_max needs nonnegative right-hand sides")

    def wrap(v):
        return Fraction(v) if isinstance(v, int) else v

    # columns: n "plus" parts, n "minus" parts, m slacks
    width = 2 * n + m
    tab: List[List[Scalar]] = []
    for i in range(m):
        row = [wrap(v) for v in rows[i]]
        line = row + [-v for v in row] + [Fraction(0)] * m + [wrap(rhs[i])]
        line[2 * n + i] = Fraction(1)
        tab.append(line)
    cost = ([wrap(v) for v in obj] + [-wrap(v) for v in obj]
            + [Fraction(0)] * m + [Fraction(0)])
    basis = [2 * n + i for i in range(m)]

    while True:
        enter = None
        for j in range(width):
            if scalars.gt(cost[j], 0):
                enter = j
                break
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            a = tab[i][enter]
            if scalars.gt(a, 0):
                ratio = div(tab[i][width], a)
                if (best is None or scalars.lt(ratio, best)
                        or (scalars.eq(ratio, best) and basis[i] < basis[leave])):
                    best = ratio
                    leave = i
        if leave is None:
            raise UnboundedLP("unbounded objective direction at column %d" % enter)
        pivot = tab[leave][enter]
        tab[leave] = [div(v, pivot) for v in tab[leave]]
        for i in range(m):
            if i != leave and not scalars.eq(tab[i][enter], 0):
                f = tab[i][enter]
                tab[i] = [v - f * w for v, w in zip(tab[i], tab[leave])]
        f = cost[enter]
        cost = [v - f * w for v, w in zip(cost, tab[leave])]
        basis[leave] = enter

    x = [Fraction(0)] * (2 * n)
    for i, bv in enumerate(basis):
        if bv < 2 * n:
            x[bv] = tab[i][width]
    solution = [x[k] - x[n + k] for k in range(n)]
    # the cost row's rhs accumulates -(objective value) across pivots
    return -cost[width], solution
