"""Linguistic scales mapping terms to TFNs.

Two scales ship built in: PERFORMANCE (nine terms on [0, 10]) for supplier
appraisals and WEIGHT (seven terms on [0, 1]) for attribute importance
judgments.  Custom scales can be loaded from a JSON document of the form
{"name": ..., "terms": {"VB": [0, 1, 2], ...}} with entries ordered by peak.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from .tfn import TFN


class UnknownTermError(KeyError):
    def __init__(self, term: str, scale_name: str):
        super().__init__(term)
        self.term = term
        self.scale_name = scale_name

    def __str__(self):
        return f"term {self.term!r} is not in scale {self.scale_name!r}"


@dataclass(frozen=True)
class LinguisticScale:
    name: str
    entries: tuple[tuple[str, TFN], ...]

    def __post_init__(self):
        terms = [t for t, _ in self.entries]
        if len(set(terms)) != len(terms):
            raise ValueError(f"scale {self.name!r} has duplicate terms")
        peaks = [tfn.b for _, tfn in self.entries]
        if any(p2 <= p1 for p1, p2 in zip(peaks, peaks[1:])):
            raise ValueError(f"scale {self.name!r} entries must have strictly increasing peaks")

    def __contains__(self, term: str) -> bool:
        return any(t == term for t, _ in self.entries)

    def __getitem__(self, term: str) -> TFN:
        for t, tfn in self.entries:
            if t == term:
                return tfn
        raise UnknownTermError(term, self.name)

    @property
    def terms(self) -> list[str]:
        return [t for t, _ in self.entries]

    def to_json(self) -> str:
        return json.dumps(
            {"name": self.name, "terms": {t: list(tfn.triple()) for t, tfn in self.entries}}
        )

    @staticmethod
    def from_json(doc: str | dict) -> "LinguisticScale":
        data = json.loads(doc) if isinstance(doc, str) else doc
        entries = tuple(
            (term, TFN(*(float(v) for v in triple))) for term, triple in data["terms"].items()
        )
        return LinguisticScale(data["name"], entries)


def _scale(name, pairs):
    return LinguisticScale(name, tuple((t, TFN(*v)) for t, v in pairs))


# Appraisal terms, unit-step triangles on [0, 10].
PERFORMANCE = _scale(
    "PERFORMANCE",
    [
        ("VB", (0, 1, 2)),
        ("B", (1, 2, 3)),
        ("MB", (2, 3, 4)),
        ("M", (3, 4, 5)),
        ("MG", (4, 5, 6)),
        ("G", (5, 6, 7)),
        ("VG", (6, 7, 8)),
        ("VVG", (7, 8, 9)),
        ("EG", (8, 9, 10)),
    ],
)

# Importance terms on [0, 1].  The interior terms are the unique 0.1-step
# assignment consistent with the published aggregated weight matrix; the
# test suite re-derives them by enumeration before trusting this table.
WEIGHT = _scale(
    "WEIGHT",
    [
        ("VUI", (0.0, 0.1, 0.2)),
        ("UI", (0.1, 0.2, 0.3)),
        ("M", (0.3, 0.4, 0.5)),
        ("MI", (0.4, 0.5, 0.6)),
        ("I", (0.5, 0.6, 0.7)),
        ("VI", (0.6, 0.7, 0.8)),
        ("EI", (0.8, 0.9, 1.0)),
    ],
)

BUILTIN_SCALES = {"PERFORMANCE": PERFORMANCE, "WEIGHT": WEIGHT}
