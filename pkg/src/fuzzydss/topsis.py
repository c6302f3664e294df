"""Fuzzy TOPSIS over a TFN decision matrix, plus the cost/resilience index.

Normalization maps every column into (0, 1]^3: benefit columns divide by the
column's largest upper bound; cost columns invert through the column's
smallest lower bound.  Cells are then weighted component-wise, anchored
against crisp per-column ideals (best upper bound / worst lower bound), and
scored by closeness to the ideals.

Two distance variants are provided.  The default ("paper") pools the squared
component gaps across all attributes under a single square root; the
classical alternative ("per_attribute") takes the vertex distance per
attribute and sums.  They rank identically on the bundled case but differ
numerically, so both are exposed.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

from .tfn import TFN

EVIDENCE_KINDS = ("temporal", "granular", "linguistic")
OBJECTIVES = ("max", "min")
GROUPS = ("resilience", "cost")
DISTANCE_VARIANTS = ("paper", "per_attribute")


class TopsisError(ValueError):
    pass


@dataclass(frozen=True)
class Attribute:
    id: str
    name: str = ""
    evidence_kind: str = "linguistic"
    objective: str = "max"
    group: str = "resilience"

    def __post_init__(self):
        if self.evidence_kind not in EVIDENCE_KINDS:
            raise TopsisError(f"{self.id}: unknown evidence kind {self.evidence_kind!r}")
        if self.objective not in OBJECTIVES:
            raise TopsisError(f"{self.id}: unknown objective {self.objective!r}")
        if self.group not in GROUPS:
            raise TopsisError(f"{self.id}: unknown group {self.group!r}")


@dataclass(frozen=True)
class DecisionMatrix:
    suppliers: tuple[str, ...]
    attributes: tuple[Attribute, ...]
    cells: dict[tuple[str, str], TFN] = field(repr=False)   # (supplier, attribute id) -> TFN
    weights: dict[str, TFN] = field(repr=False)             # attribute id -> TFN

    def __post_init__(self):
        for s in self.suppliers:
            for att in self.attributes:
                if (s, att.id) not in self.cells:
                    raise TopsisError(f"matrix is missing cell ({s}, {att.id})")
        for att in self.attributes:
            w = self.weights.get(att.id)
            if w is None:
                raise TopsisError(f"matrix is missing the weight for {att.id}")
            if w.a < 0 or w.c > 1:
                raise TopsisError(f"weight for {att.id} must lie within [0, 1]: {w.triple()}")

    def cell(self, supplier: str, attribute_id: str) -> TFN:
        return self.cells[(supplier, attribute_id)]

    def column(self, attribute_id: str) -> list[TFN]:
        return [self.cells[(s, attribute_id)] for s in self.suppliers]

    def subset(self, attribute_ids: list[str]) -> "DecisionMatrix":
        keep = set(attribute_ids)
        atts = tuple(a for a in self.attributes if a.id in keep)
        if len(atts) != len(keep):
            raise TopsisError(f"unknown attribute ids in subset: {sorted(keep - {a.id for a in atts})}")
        cells = {(s, a.id): self.cells[(s, a.id)] for s in self.suppliers for a in atts}
        return DecisionMatrix(self.suppliers, atts,
                              cells, {a.id: self.weights[a.id] for a in atts})


@dataclass(frozen=True)
class SupplierScore:
    supplier: str
    d_plus: float
    d_minus: float
    closeness: float
    rank: int


@dataclass(frozen=True)
class RankingResult:
    scores: tuple[SupplierScore, ...]            # in input supplier order
    pis: dict[str, float]                        # attribute id -> crisp ideal
    nis: dict[str, float]
    variant: str

    @property
    def closeness(self) -> list[float]:
        return [s.closeness for s in self.scores]

    def by_rank(self) -> list[SupplierScore]:
        return sorted(self.scores, key=lambda s: s.rank)


def normalize(matrix: DecisionMatrix) -> DecisionMatrix:
    """Eq-style linear normalization by column extremes."""
    cells = {}
    for att in matrix.attributes:
        col = matrix.column(att.id)
        if att.objective == "max":
            peak = max(t.c for t in col)
            if peak <= 0:
                raise TopsisError(f"column {att.id}: cannot normalize, max upper bound is {peak}")
            for s, t in zip(matrix.suppliers, col):
                cells[(s, att.id)] = TFN(t.a / peak, t.b / peak, t.c / peak)
        else:
            floor = min(t.a for t in col)
            for s, t in zip(matrix.suppliers, col):
                if t.a <= 0:
                    raise TopsisError(
                        f"cell ({s}, {att.id}): min-objective normalization needs a > 0, got {t.a}")
                cells[(s, att.id)] = TFN(floor / t.c, floor / t.b, floor / t.a)
    return DecisionMatrix(matrix.suppliers, matrix.attributes, cells, dict(matrix.weights))


def apply_weights(matrix: DecisionMatrix) -> DecisionMatrix:
    cells = {key: tfn * matrix.weights[key[1]] for key, tfn in matrix.cells.items()}
    return DecisionMatrix(matrix.suppliers, matrix.attributes, cells, dict(matrix.weights))


def ideal_solutions(matrix: DecisionMatrix) -> tuple[dict[str, float], dict[str, float]]:
    """Crisp per-column anchors: PIS = max upper bound, NIS = min lower bound."""
    pis, nis = {}, {}
    for att in matrix.attributes:
        col = matrix.column(att.id)
        pis[att.id] = max(t.c for t in col)
        nis[att.id] = min(t.a for t in col)
    return pis, nis


def _distance(cells_row: list[TFN], anchors: list[float], variant: str) -> float:
    if variant == "paper":
        total = 0.0
        for t, v in zip(cells_row, anchors):
            total += (t.a - v) ** 2 + (t.b - v) ** 2 + (t.c - v) ** 2
        return math.sqrt(total / 3.0)
    total = 0.0
    for t, v in zip(cells_row, anchors):
        total += math.sqrt(((t.a - v) ** 2 + (t.b - v) ** 2 + (t.c - v) ** 2) / 3.0)
    return total


def closeness(matrix: DecisionMatrix, pis: dict[str, float], nis: dict[str, float],
              variant: str = "paper") -> RankingResult:
    """Closeness coefficients and ranks from a weighted matrix and its ideals.

    A single-supplier matrix is degenerate (the anchors come from the one
    row being scored), so its closeness is pinned to the uninformative 0.5
    with a warning rather than reported as if it meant something."""
    if variant not in DISTANCE_VARIANTS:
        raise TopsisError(f"unknown distance variant {variant!r}")
    single = len(matrix.suppliers) == 1
    if single:
        warnings.warn("single-supplier ranking: ideal anchors are self-referential; "
                      "closeness defaults to 0.5")
    att_ids = [a.id for a in matrix.attributes]
    rows = []
    for s in matrix.suppliers:
        row = [matrix.cell(s, aid) for aid in att_ids]
        dp = _distance(row, [pis[aid] for aid in att_ids], variant)
        dn = _distance(row, [nis[aid] for aid in att_ids], variant)
        if single:
            rho = 0.5
        elif dp + dn == 0:
            warnings.warn(f"supplier {s}: ideal anchors coincide; closeness defaults to 0.5")
            rho = 0.5
        else:
            rho = dn / (dp + dn)
        rows.append((s, dp, dn, rho))
    order = sorted(range(len(rows)), key=lambda i: (-rows[i][3], i))
    ranks = {rows[i][0]: pos + 1 for pos, i in enumerate(order)}
    scores = tuple(SupplierScore(s, dp, dn, rho, ranks[s]) for s, dp, dn, rho in rows)
    return RankingResult(scores, dict(pis), dict(nis), variant)


def rank(matrix: DecisionMatrix, variant: str = "paper") -> RankingResult:
    """Normalize, weight, anchor and score in one call."""
    weighted = apply_weights(normalize(matrix))
    pis, nis = ideal_solutions(weighted)
    return closeness(weighted, pis, nis, variant)


def normalized_closeness(result: RankingResult) -> list[float]:
    """Closeness vector scaled to sum 1 (for index blending)."""
    total = sum(result.closeness)
    if total <= 0:
        raise TopsisError("closeness vector sums to zero; cannot normalize")
    return [c / total for c in result.closeness]


def scri(resilience: RankingResult, cost: RankingResult, alpha: float) -> list[float]:
    """Convex blend of normalized resilience and cost closeness vectors."""
    if not 0.0 <= alpha <= 1.0:
        raise TopsisError(f"alpha must be within [0, 1], got {alpha}")
    nr, nc = normalized_closeness(resilience), normalized_closeness(cost)
    return [alpha * r + (1.0 - alpha) * c for r, c in zip(nr, nc)]


def scri_sweep(resilience: RankingResult, cost: RankingResult,
               alpha_step: float) -> list[dict]:
    """SCRI grid over alpha = step, 2*step, ... < 1, with per-alpha argmax."""
    if not 0.0 < alpha_step <= 0.5:
        raise TopsisError(f"alpha step must be in (0, 0.5], got {alpha_step}")
    suppliers = [s.supplier for s in resilience.scores]
    out = []
    k = 1
    while True:
        alpha = round(k * alpha_step, 10)
        if alpha >= 1.0 - 1e-12:
            break
        values = scri(resilience, cost, alpha)
        top = max(range(len(values)), key=lambda i: (values[i], -i))
        for i, s in enumerate(suppliers):
            out.append({"alpha": alpha, "supplier": s, "scri": values[i],
                        "is_argmax": i == top})
        k += 1
    return out


def split_by_group(matrix: DecisionMatrix) -> tuple[DecisionMatrix, DecisionMatrix]:
    """(resilience-group matrix, cost-group matrix)."""
    res_ids = [a.id for a in matrix.attributes if a.group == "resilience"]
    cost_ids = [a.id for a in matrix.attributes if a.group == "cost"]
    if not res_ids or not cost_ids:
        raise TopsisError("group split needs at least one attribute in each group")
    return matrix.subset(res_ids), matrix.subset(cost_ids)
