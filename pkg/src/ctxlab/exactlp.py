"""Exact linear programming over the rationals.

Two-phase primal simplex on the standard form

    minimize c.x   subject to   A x = b,  x >= 0

with all arithmetic in :class:`fractions.Fraction` and Bland's smallest-index
pivot rule, which makes every run deterministic and termination guaranteed.
Infeasible problems return a Farkas certificate y (y.A <= 0, y.b > 0);
optimal ones return the optimal basic solution and the dual vector.

This is deliberately a dense-tableau implementation: problem sizes here are
tens of rows and at most a couple of hundred columns, where simplicity and
exactness matter more than sparsity tricks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    x: tuple[Fraction, ...] | None = None
    objective: Fraction | None = None
    dual: tuple[Fraction, ...] | None = None
    farkas: tuple[Fraction, ...] | None = None


class _Tableau:
    """Rows of [A | B^-1-tracking block | rhs] plus a maintained cost row.

    The tracking block starts as the identity over the (sign-fixed) rows and
    doubles as the phase-1 artificial columns; after any pivot sequence it
    holds the current basis inverse, which is where dual vectors come from.
    """

    def __init__(self, A: list[list[Fraction]], b: list[Fraction], n: int):
        self.m = len(A)
        self.n = n
        self.sign = [Fraction(-1) if bi < 0 else Fraction(1) for bi in b]
        self.rows = []
        for i in range(self.m):
            row = [self.sign[i] * v for v in A[i]]
            row += [Fraction(1) if j == i else Fraction(0) for j in range(self.m)]
            row.append(self.sign[i] * b[i])
            self.rows.append(row)
        self.basis = [self.n + i for i in range(self.m)]  # artificials
        self.cost: list[Fraction] = []
        self.width = self.n + self.m + 1

    def set_costs(self, costs: list[Fraction]) -> None:
        """Install a cost row reduced against the current basis."""
        row = list(costs) + [Fraction(0)]
        for i, bv in enumerate(self.basis):
            cb = costs[bv]
            if cb:
                r = self.rows[i]
                for j in range(self.width):
                    row[j] -= cb * r[j]
        self.cost = row

    def pivot(self, r: int, col: int) -> None:
        piv = self.rows[r][col]
        inv = 1 / piv
        self.rows[r] = [v * inv for v in self.rows[r]]
        for i in range(self.m):
            if i != r and self.rows[i][col]:
                f = self.rows[i][col]
                ri, rr = self.rows[i], self.rows[r]
                self.rows[i] = [a - f * bq for a, bq in zip(ri, rr)]
        if self.cost and self.cost[col]:
            f = self.cost[col]
            self.cost = [a - f * bq for a, bq in zip(self.cost, self.rows[r])]
        self.basis[r] = col

    def run(self, eligible: int) -> str:
        """Bland simplex over columns [0, eligible); returns a status."""
        while True:
            col = next((j for j in range(eligible) if self.cost[j] < 0), None)
            if col is None:
                return OPTIMAL
            best_ratio = None
            leave = None
            for i in range(self.m):
                a = self.rows[i][col]
                if a > 0:
                    ratio = self.rows[i][-1] / a
                    if (best_ratio is None or ratio < best_ratio
                            or (ratio == best_ratio and self.basis[i] < self.basis[leave])):
                        best_ratio, leave = ratio, i
            if leave is None:
                return UNBOUNDED
            self.pivot(leave, col)

    def solution(self) -> list[Fraction]:
        x = [Fraction(0)] * self.n
        for i, bv in enumerate(self.basis):
            if bv < self.n:
                x[bv] = self.rows[i][-1]
        return x

    def dual_for(self, costs: list[Fraction]) -> list[Fraction]:
        """y = c_B . B^-1 in the original row order and scaling."""
        y = []
        for j in range(self.m):
            col = self.n + j
            acc = Fraction(0)
            for i, bv in enumerate(self.basis):
                if costs[bv]:
                    acc += costs[bv] * self.rows[i][col]
            y.append(acc * self.sign[j])
        return y


def solve_standard(c: Sequence, A: Sequence[Sequence], b: Sequence) -> LPResult:
    """Minimize ``c.x`` over ``A x = b, x >= 0`` exactly.

    All inputs are coerced to Fraction.  ``dual`` satisfies
    ``dual . A <= c`` with ``dual . b == objective`` at optimality;
    ``farkas`` satisfies ``farkas . A <= 0`` with ``farkas . b > 0``.
    """
    A = [[Fraction(v) for v in row] for row in A]
    b = [Fraction(v) for v in b]
    c = [Fraction(v) for v in c]
    m = len(A)
    if any(len(row) != len(c) for row in A):
        raise ValueError("ragged constraint matrix")
    if len(b) != m:
        raise ValueError("rhs length mismatch")

    n = len(c)
    t = _Tableau(A, b, n)

    phase1 = [Fraction(0)] * n + [Fraction(1)] * m
    t.set_costs(phase1)
    status = t.run(eligible=n + m)
    assert status == OPTIMAL  # artificial objective is bounded below by 0
    phase1_value = -t.cost[-1]
    if phase1_value > 0:
        y = t.dual_for(phase1)
        return LPResult(status=INFEASIBLE, farkas=tuple(y))

    # drive any degenerate artificial out of the basis; rows that cannot
    # pivot on a structural column are redundant and harmless to keep
    for i in range(t.m):
        if t.basis[i] >= n:
            col = next((j for j in range(n) if t.rows[i][j] != 0), None)
            if col is not None:
                t.pivot(i, col)

    phase2 = c + [Fraction(0)] * m
    t.set_costs(phase2)
    # artificial columns stay ineligible in phase 2
    status = t.run(eligible=n)
    if status == UNBOUNDED:
        return LPResult(status=UNBOUNDED)
    x = t.solution()
    obj = sum(ci * xi for ci, xi in zip(c, x))
    y = t.dual_for(phase2)
    return LPResult(status=OPTIMAL, x=tuple(x), objective=obj, dual=tuple(y))
