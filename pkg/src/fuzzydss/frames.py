"""Fuzzified frames of discernment.

A frame partitions a numeric span [lo, hi] into m overlapping linguistic
classes built on 2m - 1 equally spaced knots, a_i = lo + i * (hi - lo) / (2m).
Interior class k is a triangle peaking at a_{2k-1} with support
[a_{2k-3}, a_{2k+1}]; the two edge classes sit on the span ends.

Two edge-class conventions are supported:

* ``"paper"`` (default): the edge membership falls (rises) linearly across
  the whole edge support, e.g. max(0, (a_3 - x) / (a_3 - lo)) on the left.
  This is the convention that reproduces the published integrated TFNs for
  the capacity data to within 0.3 units.
* ``"ruspini"``: the edge classes carry a flat plateau out to the first
  (last) knot and fall over the same two-knot stretch as the interior
  triangles, which makes the class memberships an exact partition of unity
  (they sum to 1 everywhere on [lo, hi]).

Either way, every class carries a representative TFN used when granular
membership weights are converted back into a single TFN: interior classes
use (support lo, peak, support hi) and edge classes use the degenerate
triangles (lo, lo, a_3) and (a_{2m-3}, hi, hi).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .tfn import TFN

SEVEN_CLASS_LABELS = ("B", "MB", "M", "MG", "G", "VG", "VVG")


class FrameError(ValueError):
    pass


@dataclass(frozen=True)
class FrameClass:
    label: str
    kind: str                # "left" | "interior" | "right"
    support: tuple[float, float]
    peak: float              # plateau start for "ruspini" edges
    fall_start: float        # where the left edge begins its descent
    rise_end: float          # where the right edge stops rising
    representative: TFN

    def membership(self, t: float) -> float:
        lo, hi = self.support
        if t < lo or t > hi:
            return 0.0
        if self.kind == "interior":
            if t <= self.peak:
                return (t - lo) / (self.peak - lo)
            return (hi - t) / (hi - self.peak)
        if self.kind == "left":
            if t <= self.fall_start:
                return 1.0
            return (hi - t) / (hi - self.fall_start)
        # right
        if t >= self.rise_end:
            return 1.0
        return (t - lo) / (self.rise_end - lo)

    def breakpoints(self) -> list[float]:
        """Knots of the piecewise-linear membership, in order."""
        lo, hi = self.support
        if self.kind == "interior":
            return [lo, self.peak, hi]
        if self.kind == "left":
            return [lo, self.fall_start, hi] if self.fall_start > lo else [lo, hi]
        return [lo, self.rise_end, hi] if self.rise_end < hi else [lo, hi]

    def integrate(self, p: float, q: float) -> float:
        """Exact integral of the membership over [p, q]."""
        lo, hi = self.support
        p, q = max(p, lo), min(q, hi)
        if q <= p:
            return 0.0
        pts = sorted({p, q, *[x for x in self.breakpoints() if p < x < q]})
        total = 0.0
        for x0, x1 in zip(pts, pts[1:]):
            total += 0.5 * (self.membership(x0) + self.membership(x1)) * (x1 - x0)
        return total

    def area(self) -> float:
        return self.integrate(*self.support)


@dataclass(frozen=True)
class Frame:
    lo: float
    hi: float
    m: int
    shoulder: str
    classes: tuple[FrameClass, ...] = field(repr=False)

    @property
    def span(self) -> float:
        return self.hi - self.lo

    @property
    def knot_step(self) -> float:
        return self.span / (2 * self.m)

    def knot(self, i: int) -> float:
        """a_i = lo + i * (hi - lo) / (2m), valid for 0 <= i <= 2m."""
        return self.lo + i * self.span / (2 * self.m)

    @property
    def knots(self) -> list[float]:
        return [self.knot(i) for i in range(1, 2 * self.m)]

    def class_at(self, idx: int) -> FrameClass:
        if not 0 <= idx < self.m:
            raise FrameError(f"class index {idx} out of range for {self.m} classes")
        return self.classes[idx]

    def membership(self, class_index: int, t: float) -> float:
        return self.class_at(class_index).membership(t)

    def membership_row(self, t: float) -> list[float]:
        return [cls.membership(t) for cls in self.classes]

    def representative(self, class_index: int) -> TFN:
        return self.class_at(class_index).representative

    def crossing_points(self) -> list[float]:
        """x positions where adjacent class memberships are equal (the
        peak of each pairwise overlap), one per adjacent pair."""
        out = []
        for left, right in zip(self.classes, self.classes[1:]):
            o_lo, o_hi = right.support[0], left.support[1]
            f = lambda x: left.membership(x) - right.membership(x)
            a, b = o_lo, o_hi
            # f(a) >= 0 >= f(b); bisect the continuous difference
            for _ in range(200):
                mid = 0.5 * (a + b)
                if f(mid) > 0:
                    a = mid
                else:
                    b = mid
            out.append(0.5 * (a + b))
        return out


def fuzzify_frame(lo: float, hi: float, m: int = 7, shoulder: str = "paper") -> Frame:
    """Build the m-class fuzzified frame over [lo, hi]."""
    if not lo < hi:
        raise FrameError(f"frame requires lo < hi, got [{lo}, {hi}]")
    if m < 2:
        raise FrameError(f"frame requires at least 2 classes, got {m}")
    if shoulder not in ("paper", "ruspini"):
        raise FrameError(f"unknown shoulder convention {shoulder!r}")

    span = hi - lo
    a = lambda i: lo + i * span / (2 * m)
    labels = SEVEN_CLASS_LABELS if m == 7 else tuple(f"L{k}" for k in range(1, m + 1))

    classes = []
    for k in range(1, m + 1):
        if k == 1:
            support = (lo, a(3))
            fall_start = a(1) if shoulder == "ruspini" else lo
            cls = FrameClass(labels[0], "left", support, lo, fall_start, support[1],
                             TFN(lo, lo, a(3)))
        elif k == m:
            support = (a(2 * m - 3), hi)
            rise_end = a(2 * m - 1) if shoulder == "ruspini" else hi
            cls = FrameClass(labels[-1], "right", support, hi, support[0], rise_end,
                             TFN(a(2 * m - 3), hi, hi))
        else:
            support = (a(2 * k - 3), a(2 * k + 1))
            peak = a(2 * k - 1)
            cls = FrameClass(labels[k - 1], "interior", support, peak, support[0], support[1],
                             TFN(support[0], peak, support[1]))
        classes.append(cls)
    return Frame(lo, hi, m, shoulder, tuple(classes))


def class_membership(frame: Frame, class_index: int, t: float) -> float:
    return frame.membership(class_index, t)
