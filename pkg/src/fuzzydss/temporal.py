"""Induce a TFN from a large time series.

The series is treated as draws from an unknown density; a histogram
estimate of that density, normalized by its own maximum, is the possibility
distribution of the quantity (peak possibility exactly 1).  The induced TFN
takes the sample minimum and maximum as its support and places the peak at
the estimated mode.

The (x(t), x(t+1)) point cloud is emitted for plotting only; the density is
estimated from the marginal sample.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .tfn import TFN


class DegenerateSeriesWarning(UserWarning):
    pass


@dataclass(frozen=True)
class PossibilityEstimate:
    grid_x: tuple[float, ...]     # bin midpoints
    mu: tuple[float, ...]         # possibility values, max exactly 1
    mode_x: float
    bin_count: int
    degenerate: bool = False


def _as_series(values) -> np.ndarray:
    x = np.asarray(values, dtype=float)
    if x.ndim != 1:
        raise ValueError("time series must be one-dimensional")
    if not np.all(np.isfinite(x)):
        raise ValueError("time series contains non-finite values")
    return x


def point_cloud(values) -> list[tuple[float, float]]:
    """Lagged pairs (x(t), x(t+1)) for t = 1..N-1."""
    x = _as_series(values)
    if len(x) < 2:
        raise ValueError(f"point cloud needs at least 2 observations, got {len(x)}")
    return list(zip(x[:-1].tolist(), x[1:].tolist()))


def freedman_diaconis_bins(x: np.ndarray) -> int:
    """Automatic bin count; falls back to ceil(sqrt(N)) when the IQR is 0."""
    n = len(x)
    q75, q25 = np.percentile(x, [75, 25])
    iqr = q75 - q25
    if iqr <= 0:
        return max(2, int(np.ceil(np.sqrt(n))))
    width = 2.0 * iqr / n ** (1.0 / 3.0)
    span = float(x.max() - x.min())
    return max(2, int(np.ceil(span / width)))


def estimate_possibility(values, bin_count: int | None = None) -> PossibilityEstimate:
    """Histogram density over [min, max], normalized so the peak is 1.

    mode_x is the midpoint of the highest bin (mean of midpoints on ties).
    An all-identical series yields a single-spike estimate flagged degenerate.
    """
    x = _as_series(values)
    if len(x) < 3:
        raise ValueError(f"possibility estimation needs at least 3 observations, got {len(x)}")
    if bin_count is not None and bin_count < 2:
        raise ValueError(f"bin count must be >= 2, got {bin_count}")
    lo, hi = float(x.min()), float(x.max())
    if lo == hi:
        warnings.warn(f"series is constant at {lo}; possibility collapses to a spike",
                      DegenerateSeriesWarning, stacklevel=2)
        return PossibilityEstimate((lo,), (1.0,), lo, 1, degenerate=True)
    k = bin_count if bin_count is not None else freedman_diaconis_bins(x)
    counts, edges = np.histogram(x, bins=k, range=(lo, hi))
    mids = 0.5 * (edges[:-1] + edges[1:])
    mu = counts / counts.max()
    mode_x = float(mids[counts == counts.max()].mean())
    return PossibilityEstimate(tuple(mids.tolist()), tuple(mu.tolist()), mode_x, k)


def _triangular_density(x: np.ndarray, a: float, b: float, c: float) -> np.ndarray:
    y = np.zeros_like(x)
    if b > a:
        up = (x >= a) & (x <= b)
        y[up] = 2.0 * (x[up] - a) / ((c - a) * (b - a))
    if c > b:
        dn = (x > b) & (x <= c)
        y[dn] = 2.0 * (c - x[dn]) / ((c - a) * (c - b))
    return y


def _lsq_peak(x: np.ndarray, bin_count: int | None) -> float:
    """Peak of the least-squares triangular density fit with the support
    pinned at the sample extremes.  One-dimensional scan plus refinement,
    deterministic and shift/scale equivariant under fixed binning."""
    a, c = float(x.min()), float(x.max())
    k = bin_count if bin_count is not None else freedman_diaconis_bins(x)
    dens, edges = np.histogram(x, bins=k, range=(a, c), density=True)
    mids = 0.5 * (edges[:-1] + edges[1:])

    def sse(b):
        return float(np.sum((_triangular_density(mids, a, b, c) - dens) ** 2))

    rel = np.linspace(0.0, 1.0, 401)[1:-1]
    cand = a + rel * (c - a)
    i = int(np.argmin([sse(b) for b in cand]))
    lo, hi = cand[max(0, i - 1)], cand[min(len(cand) - 1, i + 1)]
    cand2 = np.linspace(lo, hi, 201)
    j = int(np.argmin([sse(b) for b in cand2]))
    return float(cand2[j])


def induce_tfn(values, bin_count: int | None = None, fit: str = "lsq") -> TFN:
    """Induce (min, peak, max) from a series.

    fit="lsq" (default) places the peak by a least-squares triangular fit to
    the histogram density; fit="mode" uses the raw histogram mode (noisier,
    kept for comparison).  A constant series embeds as the crisp TFN (v,v,v).
    """
    x = _as_series(values)
    if len(x) < 3:
        raise ValueError(f"TFN induction needs at least 3 observations, got {len(x)}")
    a, c = float(x.min()), float(x.max())
    if a == c:
        warnings.warn(f"series is constant at {a}; inducing crisp TFN",
                      DegenerateSeriesWarning, stacklevel=2)
        return TFN.crisp(a)
    if fit == "lsq":
        b = _lsq_peak(x, bin_count)
    elif fit == "mode":
        b = estimate_possibility(x, bin_count).mode_x
    else:
        raise ValueError(f"unknown fit {fit!r}; expected 'lsq' or 'mode'")
    b = min(max(b, a), c)
    return TFN(a, b, c)
