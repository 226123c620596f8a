"""Small exact linear programming solver over rationals.

Two-phase primal simplex on a dense tableau of Fractions, with Bland's
smallest-index rule for both entering and leaving variables so cycling is
impossible.  Problem sizes in this package are tiny (a handful of variables,
a few dozen rows), so clarity and exactness win over sparse cleverness.
Optimal points are re-checked against every constraint before being returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

__all__ = [
    "Constraint",
    "LinearProgram",
    "Optimal",
    "Infeasible",
    "Unbounded",
    "LpOutcome",
    "solve",
    "feasible_point",
]

LE, EQ, GE = "<=", "==", ">="


@dataclass(frozen=True)
class Constraint:
    """coeffs . x  (cmp)  rhs, with cmp one of '<=', '==', '>='."""

    coeffs: tuple[Fraction, ...]
    cmp: str
    rhs: Fraction

    def __post_init__(self) -> None:
        if self.cmp not in (LE, EQ, GE):
            raise ValueError(f"comparison must be one of <=, ==, >=; got {self.cmp!r}")

    def holds_at(self, point: Sequence[Fraction]) -> bool:
        value = sum((c * x for c, x in zip(self.coeffs, point)), Fraction(0))
        if self.cmp == LE:
            return value <= self.rhs
        if self.cmp == GE:
            return value >= self.rhs
        return value == self.rhs


@dataclass(frozen=True)
class LinearProgram:
    """Maximize objective . x subject to constraints and optional var bounds.

    ``lower``/``upper`` give per-variable bounds, with None meaning
    unbounded on that side; omitted entirely means free variables.
    """

    num_vars: int
    objective: tuple[Fraction, ...]
    constraints: tuple[Constraint, ...]
    lower: tuple[Fraction | None, ...] | None = None
    upper: tuple[Fraction | None, ...] | None = None

    def __post_init__(self) -> None:
        if len(self.objective) != self.num_vars:
            raise ValueError("objective length does not match num_vars")
        for row in self.constraints:
            if len(row.coeffs) != self.num_vars:
                raise ValueError("constraint width does not match num_vars")
        for bounds in (self.lower, self.upper):
            if bounds is not None and len(bounds) != self.num_vars:
                raise ValueError("bounds length does not match num_vars")


@dataclass(frozen=True)
class Optimal:
    value: Fraction
    point: tuple[Fraction, ...]


@dataclass(frozen=True)
class Infeasible:
    pass


@dataclass(frozen=True)
class Unbounded:
    pass


LpOutcome = Optimal | Infeasible | Unbounded

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _pivot(tableau: list[list[Fraction]], basis: list[int], row: int, col: int) -> None:
    pivot_row = tableau[row]
    factor = pivot_row[col]
    tableau[row] = [v / factor for v in pivot_row]
    pivot_row = tableau[row]
    for i, other in enumerate(tableau):
        if i == row:
            continue
        scale = other[col]
        if scale != 0:
            tableau[i] = [a - scale * b for a, b in zip(other, pivot_row)]
    basis[row] = col


def _simplex(
    tableau: list[list[Fraction]],
    basis: list[int],
    cost: list[Fraction],
    allowed: Sequence[bool],
) -> str:
    """Minimize cost over the tableau; returns 'optimal' or 'unbounded'."""
    ncols = len(cost)
    while True:
        # Reduced costs in canonical form: z_j = c_j - c_B . column_j.
        basic_cost = [cost[b] for b in basis]
        entering = -1
        for j in range(ncols):
            if not allowed[j] or j in basis:
                continue
            reduced = cost[j] - sum(
                (cb * tableau[i][j] for i, cb in enumerate(basic_cost)), _ZERO
            )
            if reduced < 0:
                entering = j
                break  # Bland: smallest index wins
        if entering < 0:
            return "optimal"
        leaving = -1
        best_ratio: Fraction | None = None
        for i, tab_row in enumerate(tableau):
            coef = tab_row[entering]
            if coef > 0:
                ratio = tab_row[-1] / coef
                if best_ratio is None or ratio < best_ratio or (
                    ratio == best_ratio and basis[i] < basis[leaving]
                ):
                    best_ratio = ratio
                    leaving = i
        if leaving < 0:
            return "unbounded"
        _pivot(tableau, basis, leaving, entering)


class _Standardized:
    """Rewrite of a general program in equality standard form y >= 0."""

    def __init__(self, lp: LinearProgram):
        self.lp = lp
        lower = lp.lower or (None,) * lp.num_vars
        upper = lp.upper or (None,) * lp.num_vars
        # Column layout per original variable: shifted single column when a
        # lower bound exists, otherwise a split positive/negative pair.
        self.columns: list[tuple[str, int, int]] = []
        ncols = 0
        for j in range(lp.num_vars):
            if lower[j] is not None:
                self.columns.append(("shift", ncols, -1))
                ncols += 1
            else:
                self.columns.append(("split", ncols, ncols + 1))
                ncols += 2
        self.num_structural = ncols
        self.lower = lower

        rows: list[tuple[list[Fraction], str, Fraction]] = []
        for con in lp.constraints:
            rows.append((list(con.coeffs), con.cmp, con.rhs))
        for j in range(lp.num_vars):
            if upper[j] is not None:
                coeffs = [_ZERO] * lp.num_vars
                coeffs[j] = _ONE
                rows.append((coeffs, LE, upper[j]))
        self.rows = rows

    def structural_row(self, coeffs: Sequence[Fraction], rhs: Fraction) -> tuple[list[Fraction], Fraction]:
        out = [_ZERO] * self.num_structural
        shifted_rhs = rhs
        for j, c in enumerate(coeffs):
            if c == 0:
                continue
            kind, a, b = self.columns[j]
            if kind == "shift":
                out[a] += c
                shifted_rhs -= c * self.lower[j]  # type: ignore[operator]
            else:
                out[a] += c
                out[b] -= c
        return out, shifted_rhs

    def recover_point(self, values: Sequence[Fraction]) -> tuple[Fraction, ...]:
        point = []
        for j in range(self.lp.num_vars):
            kind, a, b = self.columns[j]
            if kind == "shift":
                point.append(values[a] + self.lower[j])  # type: ignore[operator]
            else:
                point.append(values[a] - values[b])
        return tuple(point)


def solve(lp: LinearProgram) -> LpOutcome:
    """Solve the program exactly; the returned point is verified feasible."""
    std = _Standardized(lp)
    n_struct = std.num_structural

    # Assemble equality rows with slack/surplus columns and artificials.
    body: list[list[Fraction]] = []
    slack_cols = 0
    for coeffs, cmp, rhs in std.rows:
        if cmp != EQ:
            slack_cols += 1
    total_cols = n_struct + slack_cols
    artificial_start = total_cols
    basis: list[int] = []
    artificials: list[int] = []
    slack_at = n_struct
    for coeffs, cmp, rhs in std.rows:
        row, rhs2 = std.structural_row(coeffs, rhs)
        row = row + [_ZERO] * (total_cols - n_struct)
        if cmp == LE:
            row[slack_at] = _ONE
            slack_col = slack_at
            slack_at += 1
        elif cmp == GE:
            row[slack_at] = -_ONE
            slack_col = -1
            slack_at += 1
        else:
            slack_col = -1
        if rhs2 < 0:
            row = [-v for v in row]
            rhs2 = -rhs2
            slack_col = -1  # a negated slack is -1, not a valid basic column
        if slack_col >= 0:
            basis.append(slack_col)
            body.append(row + [rhs2])
        else:
            art = artificial_start + len(artificials)
            artificials.append(art)
            basis.append(art)
            body.append(row + [rhs2])
    # Widen all rows for the artificial columns.
    n_art = len(artificials)
    full_cols = total_cols + n_art
    for i, row in enumerate(body):
        rhs_val = row.pop()
        row.extend([_ZERO] * n_art)
        if basis[i] >= artificial_start:
            row[basis[i]] = _ONE
        row.append(rhs_val)

    allowed_all = [True] * full_cols
    if n_art:
        phase1_cost = [_ZERO] * total_cols + [_ONE] * n_art
        status = _simplex(body, basis, phase1_cost, allowed_all)
        assert status == "optimal"  # phase 1 is bounded below by zero
        residual = sum(
            (row[-1] for row, b in zip(body, basis) if b >= artificial_start), _ZERO
        )
        if residual > 0:
            return Infeasible()
        # Drive leftover zero-level artificials out of the basis.
        for i in range(len(body) - 1, -1, -1):
            if basis[i] < artificial_start:
                continue
            pivot_col = next(
                (j for j in range(total_cols) if body[i][j] != 0), None
            )
            if pivot_col is None:
                del body[i]
                del basis[i]
            else:
                _pivot(body, basis, i, pivot_col)

    allowed = [j < total_cols for j in range(full_cols)]
    phase2_cost = [_ZERO] * full_cols
    for j in range(lp.num_vars):
        kind, a, b = std.columns[j]
        c = lp.objective[j]
        phase2_cost[a] -= c  # minimize the negated objective
        if kind == "split":
            phase2_cost[b] += c
    status = _simplex(body, basis, phase2_cost, allowed)
    if status == "unbounded":
        return Unbounded()

    values = [_ZERO] * full_cols
    for i, b in enumerate(basis):
        values[b] = body[i][-1]
    point = std.recover_point(values)
    objective_value = sum((c * x for c, x in zip(lp.objective, point)), _ZERO)
    _check_point(lp, point)
    return Optimal(objective_value, point)


def _check_point(lp: LinearProgram, point: Sequence[Fraction]) -> None:
    for con in lp.constraints:
        if not con.holds_at(point):
            raise RuntimeError(f"solver returned a point violating {con}")
    lower = lp.lower or (None,) * lp.num_vars
    upper = lp.upper or (None,) * lp.num_vars
    for j, x in enumerate(point):
        if lower[j] is not None and x < lower[j]:
            raise RuntimeError(f"solver violated lower bound on variable {j}")
        if upper[j] is not None and x > upper[j]:
            raise RuntimeError(f"solver violated upper bound on variable {j}")


def feasible_point(
    num_vars: int,
    constraints: Sequence[Constraint],
    lower: tuple[Fraction | None, ...] | None = None,
    upper: tuple[Fraction | None, ...] | None = None,
) -> tuple[Fraction, ...] | None:
    """Any exact point satisfying the system, or None when there is none."""
    lp = LinearProgram(
        num_vars=num_vars,
        objective=(_ZERO,) * num_vars,
        constraints=tuple(constraints),
        lower=lower,
        upper=upper,
    )
    outcome = solve(lp)
    if isinstance(outcome, Optimal):
        return outcome.point
    return None
