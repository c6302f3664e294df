#!/usr/bin/env python3
"""Regenerate the bundled reference-case dataset from its source tables.

Run from the repository root:

    python scripts/generate_fixture.py

Writes src/fuzzydss/fixtures/paper_case/.  The time series are synthetic
(seeded) draws from triangular distributions matching the published TFN
parameters, because the original raw series were never published as numbers;
they only feed the optional --from-raw demonstration path.
"""
from pathlib import Path

import numpy as np

from fuzzydss.dataset import Dataset, DecisionMaker, PipelineConfig, save_dataset
from fuzzydss.mcgp import McgpModel, SupplierTerms
from fuzzydss.synth import STANDARD_ATTRIBUTES
from fuzzydss.tfn import TFN

SUPPLIERS = ["S1", "S2", "S3", "S4", "S5"]
DMS = ["DM1", "DM2", "DM3", "DM4", "DM5"]

# Linguistic appraisals, one row of five DM terms per supplier.
APPRAISALS = {
    "C5":  ["VG VG VVG VG G", "VG VVG EG VG VG", "EG VG VVG VG EG", "VG VG G MG VVG", "M MG MG MG MB"],
    "C6":  ["VG VG VVG VG VVG", "VG VG G MG MG", "EG VVG VVG EG VG", "MG M M MG G", "M M MG MG G"],
    "C7":  ["VG VG G MG VVG", "M MG MG MG MG", "G VG VVG VG G", "VG VVG VVG EG EG", "VG VVG VG VG VVG"],
    "C8":  ["G G VG VG G", "VVG VG VG VVG VG", "M G MG MG G", "VG VVG VVG VVG VG", "M MG MG MG M"],
    "C9":  ["M MG M M MG", "M MB MB MB B", "G VG G G G", "M MG M M M", "M M MG MG MB"],
    "C10": ["VG VVG VVG VG VG", "M MG G M MG", "VG VVG VVG VG VG", "VG VVG VVG VG EG", "G G M MG G"],
    "C11": ["G G VVG G VG", "VG G VVG VG VG", "M B M M B", "MG MG M G G", "EG VVG VVG VG VVG"],
    "C12": ["MG MG M G G", "MG G G MG MG", "VG G VG VG G", "VG VG VVG VVG VG", "MG MG G M M"],
    "C13": ["MG MG G M MG", "G VG VG G G", "VG VG VVG VVG VG", "MG MG MG M MG", "VG G G MG MG"],
    "C14": ["EG VG VVG VVG EG", "MG MG G MG MG", "VG MG G G VG", "M M G G MG", "G VG G G VG"],
    "C15": ["VG VG G G G", "VG G VVG VG VG", "G G G VG G", "MG M M MG MG", "MG M M MB M"],
    "C16": ["G G VG G G", "VG VVG EG VVG EG", "G G VG G G", "VG VG G G MG", "VVG VVG VG VG VVG"],
    "C17": ["M G G MG MG", "G VG VG G VG", "EG VG VVG VG VVG", "M M MG MG M", "VVG G VG G G"],
    "C18": ["G VG G G VG", "VG VVG VG EG VVG", "G MG G M MG", "VG G VG VG G", "G G MG G MG"],
    "C19": ["VG G G MG G", "M MG G G MG", "G MG G MG MG", "VG G VG G G", "G VG VG G VG"],
}

# Weight judgments, five DM terms per attribute.
WEIGHTS = {
    "C1": "I VI EI I VI", "C2": "M I VI I M", "C3": "M M I M I", "C4": "I I VI I I",
    "C5": "I I VI VI I", "C6": "EI I EI EI I", "C7": "M M I I M", "C8": "I VI I I VI",
    "C9": "M UI M M UI", "C10": "I VI VI VI I", "C11": "I I VI VI I", "C12": "I MI MI I MI",
    "C13": "M MI I MI I", "C14": "VI I I VI VI", "C15": "MI I M MI M", "C16": "I VI VI MI I",
    "C17": "I M M VI I", "C18": "I I MI M MI", "C19": "M MI I MI MI",
}

# Published TFNs for the temporal attributes (induced from the raw series).
TEMPORAL_TFNS = {
    "C1": [(423.98, 441.04, 454), (459.98, 469.54, 480), (441.98, 455.01, 470),
           (404.98, 425.51, 445), (424.98, 446.05, 459)],
    "C2": [(7.98, 11.01, 15), (5.98, 9, 12), (10.98, 14.03, 17),
           (11.98, 14.01, 16), (9.98, 14, 18)],
}

# Published integrated TFNs for the granular attributes.
GRANULAR_TFNS = {
    "C3": [(102.98, 117.23, 131.49), (66.14, 75.55, 92.23), (81.25, 95.04, 109.53),
           (124.33, 141.10, 150.33), (113.44, 128.67, 140.98)],
    "C4": [(320.06, 394.96, 488.16), (358.10, 470.87, 526.03), (338.87, 432.49, 506.88),
           (311.70, 379.58, 481.14), (316.41, 385.76, 482.62)],
}

# Extracted crisp ranges (10 per supplier) for production capacity (C3)
# and cost (C4).
RANGES = {
    ("S1", "C3"): [(103, 134), (96, 136), (96, 134), (96, 135), (98, 136),
                   (100, 136), (101, 135), (103, 135), (105, 135), (110, 136)],
    ("S2", "C3"): [(60, 88), (60, 90), (58, 90), (59, 89), (59, 91),
                   (60, 91), (58, 89), (58, 88), (58, 88), (60, 87)],
    ("S3", "C3"): [(76, 103), (76, 110), (78, 113), (79, 113), (78, 115),
                   (77, 115), (75, 115), (75, 113), (75, 114), (75, 113)],
    ("S4", "C3"): [(131, 147), (128, 152), (125, 157), (128, 158), (129, 156),
                   (129, 157), (130, 158), (131, 157), (131, 158), (134, 156)],
    ("S5", "C3"): [(115, 143), (112, 144), (112, 145), (111, 144), (112, 145),
                   (111, 146), (111, 147), (111, 148), (113, 148), (114, 149)],
    ("S1", "C4"): [(337, 472), (310, 478), (296, 483), (295, 483), (297, 481),
                   (300, 478), (385, 459), (300, 473), (325, 475), (301, 482)],
    ("S2", "C4"): [(405, 554), (400, 555), (394, 556), (391, 556), (391, 554),
                   (391, 554), (408, 551), (420, 547), (426, 544), (430, 536)],
    ("S3", "C4"): [(371, 529), (361, 531), (355, 528), (351, 528), (351, 524),
                   (354, 522), (354, 518), (357, 511), (367, 505), (363, 529)],
    ("S4", "C4"): [(272, 467), (345, 455), (394, 446), (270, 458), (273, 450),
                   (283, 442), (317, 436), (326, 462), (270, 463), (270, 454)],
    ("S5", "C4"): [(348, 463), (314, 474), (294, 483), (283, 489), (279, 484),
                   (282, 478), (306, 465), (311, 382), (301, 480), (287, 486)],
}

MCGP_COEFFS = [0.467, 0.45, 0.448, 0.451, 0.388]
UNIT_COSTS = [700, 1000, 600, 500, 650]
LEAD_TIMES = [11.01, 9, 14.03, 14.01, 14]

SERIES_SEED = 7


def build() -> Dataset:
    appraisals = {}
    for att, rows in APPRAISALS.items():
        for s, row in zip(SUPPLIERS, rows):
            for d, term in zip(DMS, row.split()):
                appraisals[(s, att, d)] = term
    weights = {}
    for att, row in WEIGHTS.items():
        for d, term in zip(DMS, row.split()):
            weights[(att, d)] = term

    overrides = {}
    for att, rows in {**TEMPORAL_TFNS, **GRANULAR_TFNS}.items():
        for s, (a, b, c) in zip(SUPPLIERS, rows):
            overrides[(s, att)] = TFN(float(a), float(b), float(c))

    rng = np.random.default_rng(SERIES_SEED)
    series = {}
    for att, rows in TEMPORAL_TFNS.items():
        for s, (a, b, c) in zip(SUPPLIERS, rows):
            series[(s, att)] = [round(float(v), 4)
                                for v in rng.triangular(a, b, c, 500)]

    mcgp = McgpModel(
        suppliers=tuple(SupplierTerms(s, coeff, cost, lead)
                        for s, coeff, cost, lead
                        in zip(SUPPLIERS, MCGP_COEFFS, UNIT_COSTS, LEAD_TIMES)),
        tvp_floor=260.0,
        budget_anchor=300000.0, budget_min=250000.0, budget_max=350000.0,
        lead_anchor=10.0, lead_min=10.0, lead_max=12.0,
        quantity=500.0,
    )

    return Dataset(
        name="paper-case",
        suppliers=list(SUPPLIERS),
        decision_makers=[DecisionMaker(d) for d in DMS],
        attributes=list(STANDARD_ATTRIBUTES),
        appraisals=appraisals,
        weight_judgments=weights,
        ranges={k: [(float(p), float(q)) for p, q in v] for k, v in RANGES.items()},
        series=series,
        tfn_overrides=overrides,
        config=PipelineConfig(),
        mcgp=mcgp,
        notes=(
            "Reference supplier-evaluation case. Quantitative TFN overrides are the "
            "published values; the raw ranges reproduce the capacity column when run "
            "with --from-raw, while the published cost TFNs are wider than any "
            "frame-class combination allows, so the cost column is kept as an input. "
            "The time series are seeded synthetic stand-ins (seed 7) drawn from the "
            "published TFN parameters. Allocation note: the budget aspiration anchor "
            "is 300000 while the binding interval is [250000, 350000]; the interval, "
            "not the anchor, bounds the budget variable. Allocation coefficients are "
            "pinned to the closeness vector the reference allocation was solved with, "
            "which differs in the third decimal from the ranking table's vector."
        ),
    )


def main():
    out = Path(__file__).resolve().parents[1] / "src" / "fuzzydss" / "fixtures" / "paper_case"
    ds = build()
    problems = ds.validate()
    if problems:
        raise SystemExit("fixture invalid: " + "; ".join(str(p) for p in problems))
    save_dataset(ds, out)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
