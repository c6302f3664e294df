"""Order allocation by multi-choice goal programming.

Four goals carry deviation variables: a floor on the total value of
procurement (the closeness-weighted order sum), a budget with an interval
aspiration level, an average lead time with an interval aspiration level,
and the total quantity cap.  The objective minimizes the summed deviations.

The lead-time goal is a ratio (order-weighted mean lead time), which is not
linear.  Mode "fixed_total" replaces the denominator with the procurement
level Q, which is exact whenever the quantity goal binds; mode "iterative"
re-solves with the previous solution's total as the denominator until the
total stabilizes.

A standalone penalty oracle evaluates any candidate plan against the goals
without the LP machinery; the solver's optimum must never be worse than the
oracle value of any plan, and at the solver's own plan the two must agree.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from .lp import Constraint, LinearProgram, LpSolution, Variable, lp_solve

MODES = ("fixed_total", "iterative")


class McgpError(ValueError):
    pass


@dataclass(frozen=True)
class SupplierTerms:
    id: str
    coeff: float        # closeness coefficient feeding the value goal
    unit_cost: float
    lead_time: float

    def __post_init__(self):
        if min(self.coeff, self.unit_cost, self.lead_time) < 0:
            raise McgpError(f"supplier {self.id}: terms must be nonnegative")


@dataclass(frozen=True)
class McgpModel:
    suppliers: tuple[SupplierTerms, ...]
    tvp_floor: float
    budget_anchor: float
    budget_min: float
    budget_max: float
    lead_anchor: float
    lead_min: float
    lead_max: float
    quantity: float
    deviation_weights: dict[str, float] = field(default_factory=dict)  # optional, default 1

    def __post_init__(self):
        if not self.suppliers:
            raise McgpError("model needs at least one supplier")
        if self.budget_min > self.budget_max:
            raise McgpError("budget bounds inverted")
        if self.lead_min > self.lead_max:
            raise McgpError("lead-time bounds inverted")
        if self.quantity < 0 or self.tvp_floor < 0:
            raise McgpError("quantity and TVP floor must be nonnegative")

    def weight(self, goal: str) -> float:
        return self.deviation_weights.get(goal, 1.0)

    @property
    def lead_denominator(self) -> float:
        return self.quantity if self.quantity > 0 else 1.0


@dataclass(frozen=True)
class PenaltyBreakdown:
    tvp_shortfall: float
    budget: float
    lead: float
    quantity_excess: float

    @property
    def total(self) -> float:
        return self.tvp_shortfall + self.budget + self.lead + self.quantity_excess


@dataclass(frozen=True)
class AllocationPlan:
    quantities: dict[str, float]
    objective: float
    achieved: dict[str, float]          # tvp, spend, avg_lead_time, total_qty
    deviations: dict[str, float]
    solver_status: str
    mode: str
    iterations: int = 1                  # outer iterations for "iterative" mode
    converged: bool = True


def _anchored_interval_penalty(value: float, anchor: float, lo: float, hi: float,
                               w_track: float, w_anchor: float) -> float:
    """min over y in [lo, hi] of w_track*|value - y| + w_anchor*|y - anchor|.

    Piecewise linear in y; the minimum sits at value, anchor, lo or hi,
    whichever is feasible and cheapest."""
    cands = [min(max(v, lo), hi) for v in (value, anchor, lo, hi)]
    return min(w_track * abs(value - y) + w_anchor * abs(y - anchor) for y in cands)


def penalty_oracle(model: McgpModel, quantities: dict[str, float] | list[float],
                   mode: str = "fixed_total") -> PenaltyBreakdown:
    """Total goal penalty of a candidate plan, minimized over the free
    aspiration variables.  Independent of the LP solver by construction."""
    if mode not in MODES:
        raise McgpError(f"unknown mode {mode!r}")
    ids = [s.id for s in model.suppliers]
    if isinstance(quantities, dict):
        x = [float(quantities.get(i, 0.0)) for i in ids]
    else:
        if len(quantities) != len(ids):
            raise McgpError("plan length does not match supplier count")
        x = [float(v) for v in quantities]
    if any(v < 0 for v in x):
        raise McgpError("allocated quantities must be nonnegative")

    total = sum(x)
    tvp = sum(s.coeff * v for s, v in zip(model.suppliers, x))
    spend = sum(s.unit_cost * v for s, v in zip(model.suppliers, x))
    lead_sum = sum(s.lead_time * v for s, v in zip(model.suppliers, x))
    if mode == "fixed_total":
        ratio = lead_sum / model.lead_denominator
    else:
        ratio = lead_sum / total if total > 0 else 0.0

    tvp_short = model.weight("d1") * max(0.0, model.tvp_floor - tvp)
    budget = _anchored_interval_penalty(spend, model.budget_anchor,
                                        model.budget_min, model.budget_max,
                                        model.weight("d2"), model.weight("e1"))
    lead = _anchored_interval_penalty(ratio, model.lead_anchor,
                                      model.lead_min, model.lead_max,
                                      model.weight("d3"), model.weight("e2"))
    qty = model.weight("d4") * max(0.0, total - model.quantity)
    return PenaltyBreakdown(tvp_short, budget, lead, qty)


def build_mcgp(model: McgpModel, mode: str = "fixed_total",
               lead_denominator: float | None = None) -> LinearProgram:
    """Assemble the goal program as a plain LP."""
    if mode not in MODES:
        raise McgpError(f"unknown mode {mode!r}")
    denom = lead_denominator if lead_denominator is not None else model.lead_denominator
    if denom <= 0:
        raise McgpError(f"lead denominator must be positive, got {denom}")

    variables = [Variable(f"x_{s.id}", 0.0) for s in model.suppliers]
    variables += [Variable("y1", model.budget_min, model.budget_max),
                  Variable("y2", model.lead_min, model.lead_max)]
    dev_names = ["d1+", "d1-", "d2+", "d2-", "d3+", "d3-", "d4+", "d4-",
                 "e1+", "e1-", "e2+", "e2-"]
    variables += [Variable(name, 0.0) for name in dev_names]

    objective = {name: model.weight(name[:-1]) for name in dev_names}

    cons = [
        Constraint({**{f"x_{s.id}": s.coeff for s in model.suppliers},
                    "d1+": -1.0, "d1-": 1.0}, ">=", model.tvp_floor),
        Constraint({**{f"x_{s.id}": s.unit_cost for s in model.suppliers},
                    "d2+": -1.0, "d2-": 1.0, "y1": -1.0}, "=", 0.0),
        Constraint({"y1": 1.0, "e1+": -1.0, "e1-": 1.0}, "=", model.budget_anchor),
        Constraint({**{f"x_{s.id}": s.lead_time / denom for s in model.suppliers},
                    "d3+": -1.0, "d3-": 1.0, "y2": -1.0}, "=", 0.0),
        Constraint({"y2": 1.0, "e2+": -1.0, "e2-": 1.0}, "=", model.lead_anchor),
        Constraint({**{f"x_{s.id}": 1.0 for s in model.suppliers},
                    "d4+": -1.0, "d4-": 1.0}, "<=", model.quantity),
    ]
    return LinearProgram(tuple(variables), objective, tuple(cons))


def _plan_from_solution(model: McgpModel, sol: LpSolution, mode: str,
                        iterations: int = 1, converged: bool = True) -> AllocationPlan:
    x = {s.id: sol.x[f"x_{s.id}"] for s in model.suppliers}
    total = sum(x.values())
    tvp = sum(s.coeff * x[s.id] for s in model.suppliers)
    spend = sum(s.unit_cost * x[s.id] for s in model.suppliers)
    lead_sum = sum(s.lead_time * x[s.id] for s in model.suppliers)
    achieved = {
        "tvp": tvp,
        "spend": spend,
        "avg_lead_time": lead_sum / total if total > 0 else 0.0,
        "total_qty": total,
    }
    deviations = {k: v for k, v in sol.x.items() if not k.startswith("x_")}
    return AllocationPlan(x, sol.objective, achieved, deviations,
                          sol.status, mode, iterations, converged)


def solve_allocation(model: McgpModel, mode: str = "fixed_total",
                     integerize: bool = False,
                     max_outer_iterations: int = 25,
                     total_tolerance: float = 1e-6
                     ) -> AllocationPlan | tuple[AllocationPlan, AllocationPlan]:
    """Solve the goal program; optionally derive an integer-rounded plan.

    With integerize=True returns (continuous, integer) plans; the integer
    plan is a largest-remainder rounding that preserves the total, with
    penalties re-evaluated by the oracle.
    """
    if mode == "fixed_total":
        sol = lp_solve(build_mcgp(model, mode))
        if sol.status != "optimal":
            return AllocationPlan({}, math.nan, {}, {}, sol.status, mode)
        plan = _plan_from_solution(model, sol, mode)
    else:
        denom = model.lead_denominator
        plan = None
        converged = False
        for it in range(1, max_outer_iterations + 1):
            sol = lp_solve(build_mcgp(model, mode, lead_denominator=denom))
            if sol.status != "optimal":
                return AllocationPlan({}, math.nan, {}, {}, sol.status, mode, it, False)
            plan = _plan_from_solution(model, sol, mode, it, False)
            total = plan.achieved["total_qty"]
            if abs(total - denom) <= total_tolerance:
                converged = True
                break
            denom = total if total > 0 else model.lead_denominator
        plan = replace(plan, converged=converged)
        if not converged:
            plan = replace(plan, solver_status="non_converged")

    if not integerize:
        return plan
    return plan, _integerize(model, plan, mode)


def _integerize(model: McgpModel, plan: AllocationPlan, mode: str) -> AllocationPlan:
    """Largest-remainder rounding that keeps the rounded total equal to
    round(continuous total); penalties come from the oracle."""
    ids = [s.id for s in model.suppliers]
    xs = [plan.quantities[i] for i in ids]
    floors = [math.floor(v) for v in xs]
    target = round(sum(xs))
    deficit = int(target - sum(floors))
    order = sorted(range(len(ids)), key=lambda i: (-(xs[i] - floors[i]), i))
    ints = list(floors)
    for i in order[:max(deficit, 0)]:
        ints[i] += 1
    q = {i: float(v) for i, v in zip(ids, ints)}
    pen = penalty_oracle(model, q, mode)
    total = sum(q.values())
    achieved = {
        "tvp": sum(s.coeff * q[s.id] for s in model.suppliers),
        "spend": sum(s.unit_cost * q[s.id] for s in model.suppliers),
        "avg_lead_time": (sum(s.lead_time * q[s.id] for s in model.suppliers) / total
                          if total > 0 else 0.0),
        "total_qty": total,
    }
    return AllocationPlan(q, pen.total, achieved,
                          {"oracle_breakdown": pen.total}, "integerized", mode)


def tvp_sweep(model: McgpModel, tvp_values: list[float],
              mode: str = "fixed_total") -> list[AllocationPlan]:
    """Re-solve the allocation across TVP floors (for trade-off plots)."""
    if not tvp_values:
        raise McgpError("sweep needs at least one TVP value")
    plans = []
    for t in tvp_values:
        plans.append(solve_allocation(replace(model, tvp_floor=float(t)), mode))
    return plans
