"""Exact two-phase tableau simplex over the rationals.

All variables are nonnegative. Pivots follow Bland's rule (lowest-index entering column, ties in the ratio
test broken by the lowest-index basic variable), so degenerate programs cannot cycle.
"""
import logging
import time
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from simplicial_contextuality.exceptions import UsageError

log = logging.getLogger(__name__)

Coefficients = Union[Sequence, Mapping[int, object]]


class LPStatus(Enum):
    OPTIMAL = 'optimal'
    INFEASIBLE = 'infeasible'
    UNBOUNDED = 'unbounded'


class LPSense(Enum):
    MAX = 'max'
    FEASIBILITY = 'feasibility'


@dataclass
class LinearProgram:
    """maximize objective . x  subject to  equalities, `row . x <= rhs` inequalities and x >= 0."""

    num_vars: int
    sense: LPSense = LPSense.FEASIBILITY
    objective: Dict[int, Fraction] = field(default_factory=dict)
    equalities: List[Tuple[Dict[int, Fraction], Fraction]] = field(default_factory=list)
    inequalities: List[Tuple[Dict[int, Fraction], Fraction]] = field(default_factory=list)

    def _sparse(self, coefficients: Coefficients) -> Dict[int, Fraction]:
        items = coefficients.items() if isinstance(coefficients, Mapping) else enumerate(coefficients)
        row = {}
        for j, v in items:
            if not 0 <= j < self.num_vars:
                raise UsageError(f"coefficient for variable {j} outside 0..{self.num_vars - 1}")
            if v:
                row[j] = Fraction(v)
        return row

    def add_equality(self, coefficients: Coefficients, rhs) -> None:
        self.equalities.append((self._sparse(coefficients), Fraction(rhs)))

    def add_upper_bound(self, coefficients: Coefficients, rhs) -> None:
        self.inequalities.append((self._sparse(coefficients), Fraction(rhs)))

    def maximize(self, coefficients: Coefficients) -> None:
        self.sense = LPSense.MAX
        self.objective = self._sparse(coefficients)


@dataclass
class LPResult:
    status: LPStatus
    value: Optional[Fraction] = None
    assignment: Optional[List[Fraction]] = None

    @property
    def is_optimal(self) -> bool:
        return self.status is LPStatus.OPTIMAL


class _Tableau:
    def __init__(self, rows: List[List[Fraction]], basis: List[int], ncols: int):
        self.rows = rows
        self.basis = basis
        self.ncols = ncols
        self.obj: List[Fraction] = [Fraction(0)] * (ncols + 1)
        self.pivots = 0

    def set_objective(self, costs: Mapping[int, Fraction]) -> None:
        obj = [Fraction(0)] * (self.ncols + 1)
        for j, c in costs.items():
            obj[j] = c
        for row, b in zip(self.rows, self.basis):
            cb = obj[b]
            if cb:
                for j, v in enumerate(row):
                    if v:
                        obj[j] -= cb * v
        self.obj = obj

    @property
    def value(self) -> Fraction:
        return -self.obj[-1]

    def pivot(self, r: int, c: int) -> None:
        row = self.rows[r]
        lead = row[c]
        if lead != 1:
            row = [v / lead for v in row]
            self.rows[r] = row
        nonzero = [(j, v) for j, v in enumerate(row) if v]
        for i, other in enumerate(self.rows):
            factor = other[c]
            if i != r and factor:
                for j, v in nonzero:
                    other[j] -= factor * v
        factor = self.obj[c]
        if factor:
            for j, v in nonzero:
                self.obj[j] -= factor * v
        self.basis[r] = c
        self.pivots += 1

    def optimize(self, allowed: int) -> LPStatus:
        """Run Bland's rule over the columns below `allowed`."""
        while True:
            entering = next((j for j in range(allowed) if self.obj[j] > 0), None)
            if entering is None:
                return LPStatus.OPTIMAL
            best = None
            for i, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    key = (row[-1] / a, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return LPStatus.UNBOUNDED
            self.pivot(best[1], entering)


def lp_solve(lp: LinearProgram) -> LPResult:
    """Solve exactly; unbounded programs are reported distinctly from infeasible ones."""
    t0 = time.perf_counter()
    n = lp.num_vars
    constraints = [(row, rhs, False) for row, rhs in lp.equalities]
    constraints += [(row, rhs, True) for row, rhs in lp.inequalities]
    n_slack = len(lp.inequalities)

    # columns: structural | slack | artificial | rhs
    dense_rows = []
    slack = n
    for row, rhs, is_upper in constraints:
        dense = [Fraction(0)] * (n + n_slack)
        for j, v in row.items():
            dense[j] = v
        if is_upper:
            dense[slack] = Fraction(1)
            slack += 1
        sign = -1 if rhs < 0 else 1
        if sign < 0:
            dense = [-v for v in dense]
        dense_rows.append((dense, sign * rhs, is_upper and sign > 0, slack - 1))
    n_art = sum(1 for _, _, slack_basic, _ in dense_rows if not slack_basic)
    ncols = n + n_slack + n_art

    rows, basis = [], []
    art = n + n_slack
    for dense, rhs, slack_basic, slack_col in dense_rows:
        full = dense + [Fraction(0)] * n_art + [rhs]
        if slack_basic:
            basis.append(slack_col)
        else:
            full[art] = Fraction(1)
            basis.append(art)
            art += 1
        rows.append(full)

    T = _Tableau(rows, basis, ncols)
    structural = n + n_slack
    if n_art:
        T.set_objective({j: Fraction(-1) for j in range(structural, ncols)})
        T.optimize(ncols)
        if T.value < 0:
            log.debug('lp infeasible after %s pivots', T.pivots)
            return LPResult(LPStatus.INFEASIBLE)
        # drive zero-valued artificials out of the basis; rows that cannot pivot are redundant
        i = 0
        while i < len(T.rows):
            if T.basis[i] >= structural:
                c = next((j for j in range(structural) if T.rows[i][j] != 0), None)
                if c is None:
                    del T.rows[i]
                    del T.basis[i]
                    continue
                T.pivot(i, c)
            i += 1

    if lp.sense is LPSense.MAX:
        T.set_objective(lp.objective)
        status = T.optimize(structural)
        if status is LPStatus.UNBOUNDED:
            return LPResult(LPStatus.UNBOUNDED)
        value = T.value
    else:
        value = Fraction(0)

    x = [Fraction(0)] * n
    for row, b in zip(T.rows, T.basis):
        if b < n:
            x[b] = row[-1]
    log.debug('lp solved: %s vars, %s rows, %s pivots in %.4f secs', n, len(rows), T.pivots, time.perf_counter() - t0)
    return LPResult(LPStatus.OPTIMAL, value, x)
