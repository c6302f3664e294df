"""Turn extracted crisp ranges into one integrated TFN per attribute cell.

Each range [p, q] receives a membership degree on every frame class: the
integral of the class membership over the range divided by the length of
the range's intersection with the class support (zero when they are
disjoint; point ranges use the point membership).  Per-class degrees are
multiplied by the attribute's normalized reliability index, summed across
ranges, normalized to sum 1, and finally converted to a TFN as the convex
combination of the class representative TFNs.

Because the reliability index is one scalar per attribute, it cancels out
of the normalized weights; the final TFN is provably independent of it.
The indices are still computed and reported for audit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .frames import Frame
from .tfn import TFN

STAGES = ("raw", "reliability_modified", "aggregated", "normalized")


class GranularError(ValueError):
    pass


@dataclass(frozen=True)
class MembershipRow:
    per_class: tuple[float, ...]
    stage: str = "raw"

    def __post_init__(self):
        if self.stage not in STAGES:
            raise GranularError(f"unknown stage {self.stage!r}")
        if any(v < 0 for v in self.per_class):
            raise GranularError("membership degrees must be nonnegative")


@dataclass(frozen=True)
class ReliabilityReport:
    static_index: float
    dynamic_index: float
    comprehensive: float          # static * dynamic
    normalized: float             # comprehensive / max over attributes
    test_samples: tuple[float, ...]


def range_membership(frame: Frame, class_index: int, rng: tuple[float, float]) -> float:
    """Membership of the range [p, q] in one class (integral / overlap length)."""
    p, q = rng
    if p > q:
        raise GranularError(f"range requires p <= q, got ({p}, {q})")
    cls = frame.class_at(class_index)
    if p == q:
        return cls.membership(p)
    s_lo, s_hi = cls.support
    seg = min(q, s_hi) - max(p, s_lo)
    if seg <= 0:
        return 0.0
    return cls.integrate(p, q) / seg


def raw_membership_row(frame: Frame, rng: tuple[float, float]) -> MembershipRow:
    return MembershipRow(tuple(range_membership(frame, l, rng) for l in range(frame.m)))


def _overlap_similarity(frame: Frame, left_idx: int, panels: int = 1200) -> float:
    """Similarity of adjacent classes: overlap area over union of areas.

    The min-of-memberships integral uses the trapezoid rule on the overlap
    interval; the full class areas are exact.
    """
    left, right = frame.classes[left_idx], frame.classes[left_idx + 1]
    o_lo, o_hi = right.support[0], left.support[1]
    if o_hi <= o_lo:
        return 0.0
    xs = np.linspace(o_lo, o_hi, panels + 1)
    ys = np.minimum([left.membership(x) for x in xs], [right.membership(x) for x in xs])
    overlap = float(np.trapezoid(ys, xs))
    union = left.area() + right.area() - overlap
    return overlap / union


def static_reliability(frame: Frame) -> float:
    """Sum over adjacent class pairs of (1 - similarity)."""
    if frame.m < 2:
        raise GranularError("static reliability needs at least 2 classes")
    return sum(1.0 - _overlap_similarity(frame, i) for i in range(frame.m - 1))


def dynamic_reliability(frame: Frame, test_samples: list[float]) -> float:
    """exp of the summed risk distances between test samples and the
    adjacent-pair crossing points, scaled by the span."""
    if not test_samples:
        raise GranularError("dynamic reliability needs at least one test sample")
    crossings = frame.crossing_points()
    total = 0.0
    for p in crossings:
        total += float(np.mean([abs(t - p) for t in test_samples])) / frame.span
    return math.exp(total)


def reliability_report(frame: Frame, test_samples: list[float]) -> ReliabilityReport:
    rs = static_reliability(frame)
    rd = dynamic_reliability(frame, test_samples)
    return ReliabilityReport(rs, rd, rs * rd, 1.0, tuple(test_samples))


def normalize_reliability(reports: dict[str, ReliabilityReport]) -> dict[str, ReliabilityReport]:
    """Scale comprehensive indices by the max across attributes."""
    if not reports:
        return {}
    peak = max(r.comprehensive for r in reports.values())
    if peak <= 0:
        raise GranularError("comprehensive reliability must be positive")
    return {k: replace(r, normalized=r.comprehensive / peak) for k, r in reports.items()}


def reliability_modify(row: MembershipRow, r_star: float) -> MembershipRow:
    if not 0 < r_star <= 1:
        raise GranularError(f"normalized reliability must be in (0, 1], got {r_star}")
    return MembershipRow(tuple(v * r_star for v in row.per_class), "reliability_modified")


def aggregate_and_normalize(rows: list[MembershipRow]) -> MembershipRow:
    """Per-class sum across ranges, then divide by the grand total."""
    if not rows:
        raise GranularError("need at least one membership row")
    m = len(rows[0].per_class)
    if any(len(r.per_class) != m for r in rows):
        raise GranularError("membership rows disagree on class count")
    sums = [sum(r.per_class[l] for r in rows) for l in range(m)]
    total = sum(sums)
    if total <= 0:
        raise GranularError("ranges carry no membership mass (frame/data mismatch)")
    return MembershipRow(tuple(s / total for s in sums), "normalized")


def integrate_tfn(frame: Frame, normalized: MembershipRow) -> TFN:
    """Convex combination of class representative TFNs by normalized weight."""
    if normalized.stage != "normalized":
        raise GranularError(f"expected a normalized row, got stage {normalized.stage!r}")
    if abs(sum(normalized.per_class) - 1.0) > 1e-9:
        raise GranularError("normalized row must sum to 1")
    a = b = c = 0.0
    for w, cls in zip(normalized.per_class, frame.classes):
        rep = cls.representative
        a += w * rep.a
        b += w * rep.b
        c += w * rep.c
    return TFN(a, b, c)


def extract(frame: Frame, ranges: list[tuple[float, float]],
            reliability: ReliabilityReport | None = None) -> TFN:
    """Full pipeline for one (supplier, attribute) cell."""
    if not ranges:
        raise GranularError("need at least one range")
    r_star = reliability.normalized if reliability is not None else 1.0
    rows = [reliability_modify(raw_membership_row(frame, rng), r_star) for rng in ranges]
    return integrate_tfn(frame, aggregate_and_normalize(rows))


def default_test_samples(ranges_by_supplier: dict[str, list[tuple[float, float]]]) -> list[float]:
    """Deterministic default: one sample, the mean of all range midpoints."""
    mids = [0.5 * (p + q) for rs in ranges_by_supplier.values() for (p, q) in rs]
    if not mids:
        raise GranularError("no ranges to derive a test sample from")
    return [float(np.mean(mids))]


def seeded_test_samples(frame: Frame, k: int, seed: int) -> list[float]:
    """Uniform samples over the frame span, for reliability sensitivity studies."""
    if k < 1:
        raise GranularError("sample count must be >= 1")
    rng = np.random.default_rng(seed)
    return rng.uniform(frame.lo, frame.hi, size=k).tolist()
