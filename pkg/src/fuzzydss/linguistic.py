"""Aggregate linguistic appraisals from multiple decision makers.

A cell's judgments are mapped through the bound scale and fused with the
pessimistic-support rule: the aggregate keeps the smallest lower bound and
the largest upper bound seen across decision makers, with the peak averaged.
Decision makers carry equal importance on this path; a per-DM weight field
exists in the dataset model but is deliberately unused here.
"""
from __future__ import annotations

from dataclasses import dataclass

from .scales import LinguisticScale
from .tfn import TFN


class AppraisalError(ValueError):
    pass


@dataclass(frozen=True)
class Appraisal:
    supplier: str
    attribute: str
    dm: str
    term: str


@dataclass(frozen=True)
class WeightJudgment:
    attribute: str
    dm: str
    term: str


def term_to_tfn(term: str, scale: LinguisticScale) -> TFN:
    return scale[term]


def aggregate_dms(tfns: list[TFN]) -> TFN:
    """(min of lower bounds, mean of peaks, max of upper bounds)."""
    if not tfns:
        raise AppraisalError("cannot aggregate an empty judgment list")
    return TFN(
        min(t.a for t in tfns),
        sum(t.b for t in tfns) / len(tfns),
        max(t.c for t in tfns),
    )


def build_qualitative_tfn(appraisals: list[Appraisal], scale: LinguisticScale,
                          dms: list[str]) -> TFN:
    """Aggregate one (supplier, attribute) cell; every registered DM must
    appear exactly once.  Missing or duplicate judgments are errors, never
    imputed, because the min/max fusion is sensitive to silent fill-in."""
    if not appraisals:
        raise AppraisalError("cell has no appraisals")
    cell = {(a.supplier, a.attribute) for a in appraisals}
    if len(cell) != 1:
        raise AppraisalError(f"appraisals span multiple cells: {sorted(cell)}")
    seen = [a.dm for a in appraisals]
    if sorted(seen) != sorted(dms):
        missing = set(dms) - set(seen)
        extra = [d for d in seen if seen.count(d) > 1 or d not in dms]
        supplier, attribute = next(iter(cell))
        raise AppraisalError(
            f"cell ({supplier}, {attribute}): missing DMs {sorted(missing)}, "
            f"unexpected/duplicate {sorted(set(extra))}"
        )
    return aggregate_dms([term_to_tfn(a.term, scale) for a in appraisals])


def aggregate_weight(judgments: list[WeightJudgment], scale: LinguisticScale,
                     dms: list[str]) -> TFN:
    """Same fusion for one attribute's weight judgments."""
    if not judgments:
        raise AppraisalError("attribute has no weight judgments")
    attrs = {j.attribute for j in judgments}
    if len(attrs) != 1:
        raise AppraisalError(f"weight judgments span multiple attributes: {sorted(attrs)}")
    seen = [j.dm for j in judgments]
    if sorted(seen) != sorted(dms):
        raise AppraisalError(
            f"attribute {next(iter(attrs))}: weight judgments do not cover the DM "
            f"panel exactly once (got {sorted(seen)}, expected {sorted(dms)})"
        )
    return aggregate_dms([term_to_tfn(j.term, scale) for j in judgments])
