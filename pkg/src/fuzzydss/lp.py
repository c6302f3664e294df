"""A small deterministic linear programming solver.

Bounded-variable primal simplex, two phases, Bland's smallest-index
anti-cycling rule.  Problems here are tiny (tens of variables), so the basis
is refactorized every iteration with dense solves; determinism and
correctness are worth far more than speed at this scale.

The solver reports optimal/infeasible/unbounded as statuses, returns dual
values and reduced costs from the final basis, and guards against pivots
smaller than 1e-11 (raising NumericalInstabilityError rather than grinding
on with garbage).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

INF = math.inf
OPT_TOL = 1e-9       # reduced-cost optimality threshold
FEAS_TOL = 1e-9      # constraint/bound feasibility threshold
PIVOT_TOL = 1e-11    # below this a pivot is numerically meaningless

RELATIONS = ("<=", "=", ">=")


class LpError(ValueError):
    pass


class NumericalInstabilityError(RuntimeError):
    pass


@dataclass(frozen=True)
class Variable:
    name: str
    lo: float = 0.0
    hi: float = INF

    def __post_init__(self):
        if math.isnan(self.lo) or math.isnan(self.hi):
            raise LpError(f"variable {self.name}: NaN bound")
        if self.lo > self.hi:
            raise LpError(f"variable {self.name}: lower bound {self.lo} exceeds upper {self.hi}")


@dataclass(frozen=True)
class Constraint:
    coeffs: dict[str, float]
    relation: str
    rhs: float

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise LpError(f"unknown relation {self.relation!r}")
        if not math.isfinite(self.rhs):
            raise LpError(f"constraint rhs must be finite, got {self.rhs}")


@dataclass(frozen=True)
class LinearProgram:
    variables: tuple[Variable, ...]
    objective: dict[str, float]       # minimize
    constraints: tuple[Constraint, ...]

    def __post_init__(self):
        names = [v.name for v in self.variables]
        if len(set(names)) != len(names):
            raise LpError("duplicate variable names")
        known = set(names)
        for name in self.objective:
            if name not in known:
                raise LpError(f"objective references unknown variable {name!r}")
        for i, con in enumerate(self.constraints):
            for name in con.coeffs:
                if name not in known:
                    raise LpError(f"constraint {i} references unknown variable {name!r}")


@dataclass(frozen=True)
class LpSolution:
    status: str                        # "optimal" | "infeasible" | "unbounded"
    x: dict[str, float] = field(default_factory=dict)
    objective: float = math.nan
    duals: tuple[float, ...] = ()      # one per constraint row
    reduced_costs: dict[str, float] = field(default_factory=dict)
    iterations: int = 0

    def dual_objective(self, lp: LinearProgram) -> float:
        """b'y plus the bound terms; used for the duality-gap check."""
        if self.status != "optimal":
            raise LpError("dual objective is only defined at an optimum")
        total = sum(y * c.rhs for y, c in zip(self.duals, lp.constraints))
        for v in lp.variables:
            d = self.reduced_costs[v.name]
            if d > OPT_TOL:
                total += d * v.lo
            elif d < -OPT_TOL:
                total += d * v.hi
        return total


AT_LOWER, AT_UPPER, FREE, BASIC = 0, 1, 2, 3


class _Simplex:
    """Working state over the equality form [A | I_slack | artificials] x = b."""

    def __init__(self, lp: LinearProgram):
        self.lp = lp
        names = [v.name for v in lp.variables]
        self.n = len(names)
        self.m = len(lp.constraints)
        col = {name: j for j, name in enumerate(names)}

        ncols = self.n + self.m
        A = np.zeros((self.m, ncols))
        b = np.zeros(self.m)
        lo = np.full(ncols, -INF)
        hi = np.full(ncols, INF)
        for j, v in enumerate(lp.variables):
            lo[j], hi[j] = v.lo, v.hi
        for i, con in enumerate(lp.constraints):
            for name, coef in con.coeffs.items():
                A[i, col[name]] = coef
            s = self.n + i
            A[i, s] = 1.0
            b[i] = con.rhs
            if con.relation == "<=":
                lo[s], hi[s] = 0.0, INF
            elif con.relation == ">=":
                lo[s], hi[s] = -INF, 0.0
            else:
                lo[s], hi[s] = 0.0, 0.0
        self.A, self.b, self.lo, self.hi = A, b, lo, hi
        self.cost = np.zeros(ncols)
        for name, coef in lp.objective.items():
            self.cost[col[name]] = coef
        self.iterations = 0

    # -- state helpers --------------------------------------------------

    def _nonbasic_value(self, j: int) -> float:
        s = self.status[j]
        if s == AT_LOWER:
            return self.lo[j]
        if s == AT_UPPER:
            return self.hi[j]
        return 0.0

    def _values(self) -> np.ndarray:
        x = np.array([self._nonbasic_value(j) if self.status[j] != BASIC else 0.0
                      for j in range(self.A.shape[1])])
        rhs = self.b - self.A @ x
        if self.m:
            B = self.A[:, self.basis]
            try:
                xb = np.linalg.solve(B, rhs)
            except np.linalg.LinAlgError as exc:
                raise NumericalInstabilityError(f"singular basis: {exc}") from exc
            for i, j in enumerate(self.basis):
                x[j] = xb[i]
        return x

    def _reduced_costs(self, c: np.ndarray, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        if self.m:
            B = self.A[:, self.basis]
            y = np.linalg.solve(B.T, c[self.basis])
        else:
            y = np.zeros(0)
        d = c - self.A.T @ y if self.m else c.copy()
        return d, y

    # -- the pivoting loop ----------------------------------------------

    def _iterate(self, c: np.ndarray, max_iter: int) -> str:
        ncols = self.A.shape[1]
        while True:
            self.iterations += 1
            if self.iterations > max_iter:
                raise NumericalInstabilityError(
                    f"simplex exceeded {max_iter} iterations; model is suspect")
            x = self._values()
            d, _ = self._reduced_costs(c, x)

            entering, direction = -1, 0.0
            for j in range(ncols):
                if self.status[j] == BASIC or self.hi[j] - self.lo[j] <= 0:
                    continue
                if self.status[j] in (AT_LOWER, FREE) and d[j] < -OPT_TOL:
                    entering, direction = j, +1.0
                    break
                if self.status[j] in (AT_UPPER, FREE) and d[j] > OPT_TOL:
                    entering, direction = j, -1.0
                    break
            if entering < 0:
                return "optimal"

            w = (np.linalg.solve(self.A[:, self.basis], self.A[:, entering])
                 if self.m else np.zeros(0))
            # entering moves by t >= 0 in `direction`; basic i moves by -direction*w_i*t
            candidates = []   # (t, variable index, row, destination status)
            for i, jb in enumerate(self.basis):
                delta = -direction * w[i]
                if delta > PIVOT_TOL * 10 and math.isfinite(self.hi[jb]):
                    candidates.append((max((self.hi[jb] - x[jb]) / delta, 0.0), jb, i, AT_UPPER))
                elif delta < -PIVOT_TOL * 10 and math.isfinite(self.lo[jb]):
                    candidates.append((max((x[jb] - self.lo[jb]) / (-delta), 0.0), jb, i, AT_LOWER))
            if candidates:
                t_min = min(t for t, _, _, _ in candidates)
                # Bland: smallest variable index among (near-)minimal ratios
                _, _, leave_row, leave_to = min(
                    (c for c in candidates if c[0] <= t_min + FEAS_TOL),
                    key=lambda c: c[1])
                t_best = t_min
            else:
                leave_row, t_best = -1, INF
            t_flip = INF
            if math.isfinite(self.lo[entering]) and math.isfinite(self.hi[entering]):
                t_flip = self.hi[entering] - self.lo[entering]

            if t_flip <= t_best:
                if not math.isfinite(t_flip):
                    return "unbounded"
                self.status[entering] = AT_UPPER if direction > 0 else AT_LOWER
                continue
            if not math.isfinite(t_best):
                return "unbounded"
            pivot = w[leave_row]
            if abs(pivot) < PIVOT_TOL:
                raise NumericalInstabilityError(
                    f"pivot magnitude {abs(pivot):.2e} below {PIVOT_TOL}")
            leaving = self.basis[leave_row]
            self.basis[leave_row] = entering
            self.status[entering] = BASIC
            self.status[leaving] = leave_to

    # -- phases ----------------------------------------------------------

    def solve(self, max_iter: int = 20000) -> LpSolution:
        ncols = self.n + self.m
        self.status = []
        for j in range(ncols):
            if math.isfinite(self.lo[j]):
                self.status.append(AT_LOWER)
            elif math.isfinite(self.hi[j]):
                self.status.append(AT_UPPER)
            else:
                self.status.append(FREE)
        self.basis = []

        if self.m:
            x0 = np.array([self._nonbasic_value(j) for j in range(ncols)])
            resid = self.b - self.A @ x0
            art_cols = []
            for i, r in enumerate(resid):
                colv = np.zeros(self.m)
                colv[i] = 1.0 if r >= 0 else -1.0
                art_cols.append(colv)
            self.A = np.hstack([self.A, np.column_stack(art_cols)])
            self.lo = np.concatenate([self.lo, np.zeros(self.m)])
            self.hi = np.concatenate([self.hi, np.full(self.m, INF)])
            self.cost = np.concatenate([self.cost, np.zeros(self.m)])
            self.basis = list(range(ncols, ncols + self.m))
            self.status += [BASIC] * self.m

            phase1 = np.zeros(self.A.shape[1])
            phase1[ncols:] = 1.0
            self._iterate(phase1, max_iter)
            x = self._values()
            # infeasibility threshold scales with the data so that models
            # priced in large units are not misjudged on rounding noise
            scale = 1.0 + float(np.max(np.abs(self.b))) if self.m else 1.0
            if float(phase1 @ x) > max(1e-7, 1e-9 * scale):
                return LpSolution(status="infeasible", iterations=self.iterations)
            self._evict_artificials(ncols)
            # artificials are pinned at zero for phase 2
            self.lo[ncols:] = 0.0
            self.hi[ncols:] = 0.0

        outcome = self._iterate(self.cost, max_iter)
        if outcome == "unbounded":
            return LpSolution(status="unbounded", iterations=self.iterations)
        return self._extract()

    def _evict_artificials(self, ncols: int):
        """Pivot basic artificials out where a real column can replace them."""
        for row in range(self.m):
            jb = self.basis[row]
            if jb < ncols:
                continue
            B = self.A[:, self.basis]
            for j in range(ncols):
                if self.status[j] == BASIC:
                    continue
                w = np.linalg.solve(B, self.A[:, j])
                if abs(w[row]) > 1e-8:
                    self.basis[row] = j
                    self.status[j] = BASIC
                    self.status[jb] = AT_LOWER
                    break
            # if no replacement exists the row is redundant; the artificial
            # stays basic at zero with its bounds about to be pinned

    def _extract(self) -> LpSolution:
        x = self._values()
        d, y = self._reduced_costs(self.cost, x)
        names = [v.name for v in self.lp.variables]
        xs = {name: float(x[j]) for j, name in enumerate(names)}
        rc = {name: (0.0 if self.status[j] == BASIC else float(d[j]))
              for j, name in enumerate(names)}
        obj = float(self.cost[: len(x)] @ x)
        return LpSolution(status="optimal", x=xs, objective=obj,
                          duals=tuple(float(v) for v in y), reduced_costs=rc,
                          iterations=self.iterations)


def lp_solve(lp: LinearProgram, max_iter: int = 20000) -> LpSolution:
    """Solve min c'x subject to the rows and bounds of `lp`."""
    return _Simplex(lp).solve(max_iter)


def enumerate_vertices_objective(lp: LinearProgram) -> tuple[str, float]:
    """Brute-force oracle: try every choice of active constraints/bounds,
    solve the resulting square system, keep the best feasible objective.

    Only sensible for a handful of variables; used to cross-check the
    simplex on small random instances.  Returns (status, objective); a
    bounded optimum must sit at one of the enumerated basic points, so on
    box-bounded problems this is exact.
    """
    from itertools import combinations

    names = [v.name for v in lp.variables]
    n = len(names)
    col = {name: j for j, name in enumerate(names)}

    rows = []
    for con in lp.constraints:
        arr = np.zeros(n)
        for name, coef in con.coeffs.items():
            arr[col[name]] = coef
        rows.append((arr, con.relation, con.rhs))
    for j, v in enumerate(lp.variables):
        e = np.zeros(n)
        e[j] = 1.0
        if math.isfinite(v.lo):
            rows.append((e, ">=", v.lo))
        if math.isfinite(v.hi):
            rows.append((e, "<=", v.hi))

    cvec = np.zeros(n)
    for name, coef in lp.objective.items():
        cvec[col[name]] = coef

    def feasible(x):
        for arr, rel, rhs in rows:
            lhs = float(arr @ x)
            if rel == "<=" and lhs > rhs + 1e-7:
                return False
            if rel == ">=" and lhs < rhs - 1e-7:
                return False
            if rel == "=" and abs(lhs - rhs) > 1e-7:
                return False
        return True

    eq_idx = [k for k, (_, rel, _) in enumerate(rows) if rel == "="]
    best = None
    for active in combinations(range(len(rows)), n):
        if any(k not in active for k in eq_idx):
            continue
        M = np.array([rows[k][0] for k in active])
        rhs = np.array([rows[k][2] for k in active])
        if abs(np.linalg.det(M)) < 1e-10:
            continue
        x = np.linalg.solve(M, rhs)
        if feasible(x):
            val = float(cvec @ x)
            if best is None or val < best:
                best = val
    if best is None:
        return ("infeasible", math.nan)
    return ("optimal", best)
