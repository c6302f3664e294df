"""Built-in scales, including the enumeration oracle that pins the WEIGHT
scale's interior terms before trusting them anywhere else."""
from itertools import combinations

import pytest

from fuzzydss.scales import PERFORMANCE, WEIGHT, LinguisticScale, UnknownTermError
from fuzzydss.tfn import TFN

# Aggregated weight rows (a, mean-b, c) the WEIGHT scale must reproduce
# under (min a, mean b, max c) fusion of the judgment matrix below.
WEIGHT_JUDGMENTS = {
    "C1": "I VI EI I VI", "C2": "M I VI I M", "C3": "M M I M I", "C4": "I I VI I I",
    "C5": "I I VI VI I", "C6": "EI I EI EI I", "C7": "M M I I M", "C8": "I VI I I VI",
    "C9": "M UI M M UI", "C10": "I VI VI VI I", "C11": "I I VI VI I", "C12": "I MI MI I MI",
    "C13": "M MI I MI I", "C14": "VI I I VI VI", "C15": "MI I M MI M", "C16": "I VI VI MI I",
    "C17": "I M M VI I", "C18": "I I MI M MI", "C19": "M MI I MI MI",
}
AGGREGATED_WEIGHTS = {
    "C1": (0.5, 0.7, 1.0), "C2": (0.3, 0.54, 0.8), "C3": (0.3, 0.48, 0.7),
    "C4": (0.5, 0.62, 0.8), "C5": (0.5, 0.64, 0.8), "C6": (0.5, 0.78, 1.0),
    "C7": (0.3, 0.48, 0.7), "C8": (0.5, 0.64, 0.8), "C9": (0.1, 0.32, 0.5),
    "C10": (0.5, 0.66, 0.8), "C11": (0.5, 0.64, 0.8), "C12": (0.4, 0.54, 0.7),
    "C13": (0.3, 0.52, 0.7), "C14": (0.5, 0.66, 0.8), "C15": (0.3, 0.48, 0.7),
    "C16": (0.4, 0.62, 0.8), "C17": (0.3, 0.54, 0.8), "C18": (0.3, 0.52, 0.7),
    "C19": (0.3, 0.5, 0.7),
}


def test_performance_terms_verbatim():
    assert PERFORMANCE["VB"].triple() == (0, 1, 2)
    assert PERFORMANCE["B"].triple() == (1, 2, 3)
    assert PERFORMANCE["EG"].triple() == (8, 9, 10)
    assert len(PERFORMANCE.terms) == 9


def test_weight_anchor_terms_verbatim():
    assert WEIGHT["VUI"].triple() == (0.0, 0.1, 0.2)
    assert WEIGHT["UI"].triple() == (0.1, 0.2, 0.3)
    assert WEIGHT["EI"].triple() == (0.8, 0.9, 1.0)


def test_unknown_term_rejected():
    with pytest.raises(UnknownTermError):
        PERFORMANCE["XX"]
    assert "XX" not in PERFORMANCE


def _rows_match(candidate: dict[str, tuple[float, float, float]]) -> bool:
    for att, terms in WEIGHT_JUDGMENTS.items():
        tfns = [candidate[t] for t in terms.split()]
        a = min(t[0] for t in tfns)
        b = sum(t[1] for t in tfns) / len(tfns)
        c = max(t[2] for t in tfns)
        want = AGGREGATED_WEIGHTS[att]
        if abs(a - want[0]) > 1e-9 or abs(b - want[1]) > 0.005 or abs(c - want[2]) > 1e-9:
            return False
    return True


def test_weight_interior_terms_are_the_unique_unit_step_fit():
    """Enumerate every strictly-increasing assignment of unit-step triangles
    to M, MI, I, VI between the anchored UI and EI peaks; exactly one
    assignment reproduces the aggregated weight matrix, and it is the one
    the built-in scale ships."""
    anchors = {"VUI": (0.0, 0.1, 0.2), "UI": (0.1, 0.2, 0.3), "EI": (0.8, 0.9, 1.0)}
    # candidate peaks strictly between UI's 0.2 and EI's 0.9, on the 0.1 grid
    peak_grid = [round(0.1 * k, 10) for k in range(3, 9)]
    matches = []
    for peaks in combinations(peak_grid, 4):
        candidate = dict(anchors)
        for term, peak in zip(("M", "MI", "I", "VI"), peaks):
            candidate[term] = (round(peak - 0.1, 10), peak, round(peak + 0.1, 10))
        if _rows_match(candidate):
            matches.append(peaks)
    assert matches == [(0.4, 0.5, 0.6, 0.7)]
    assert WEIGHT["M"].triple() == pytest.approx((0.3, 0.4, 0.5))
    assert WEIGHT["MI"].triple() == pytest.approx((0.4, 0.5, 0.6))
    assert WEIGHT["I"].triple() == pytest.approx((0.5, 0.6, 0.7))
    assert WEIGHT["VI"].triple() == pytest.approx((0.6, 0.7, 0.8))


def test_builtin_scale_against_aggregated_rows():
    scale = {t: WEIGHT[t].triple() for t in WEIGHT.terms}
    assert _rows_match(scale)


def test_json_round_trip():
    doc = PERFORMANCE.to_json()
    again = LinguisticScale.from_json(doc)
    assert again == PERFORMANCE


def test_scale_validation():
    with pytest.raises(ValueError):
        LinguisticScale("bad", (("A", TFN(0, 1, 2)), ("A", TFN(1, 2, 3))))
    with pytest.raises(ValueError):
        LinguisticScale("bad", (("A", TFN(0, 2, 3)), ("B", TFN(0, 1, 3))))
