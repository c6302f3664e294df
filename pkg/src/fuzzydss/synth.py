"""Deterministic synthetic dataset generation.

Builds a full evaluation bundle for n suppliers against the standard
19-attribute layout: triangular-distributed time series for the two
temporal attributes, noisy interval extractions for the two granular ones,
random linguistic grids for the rest, random weight judgments, and a
matching order-allocation parameter block.  Identical seeds produce
identical bundles.
"""
from __future__ import annotations

import numpy as np

from .dataset import Dataset, DecisionMaker, PipelineConfig
from .mcgp import McgpModel, SupplierTerms
from .scales import PERFORMANCE, WEIGHT
from .topsis import Attribute

STANDARD_ATTRIBUTES = (
    Attribute("C1", "Pre-positioned inventory level", "temporal", "max", "resilience"),
    Attribute("C2", "Lead time variability", "temporal", "min", "resilience"),
    Attribute("C3", "Production capacity", "granular", "max", "resilience"),
    Attribute("C4", "Cost", "granular", "min", "cost"),
    Attribute("C5", "Digitalization", "linguistic", "max", "resilience"),
    Attribute("C6", "Traceability", "linguistic", "max", "resilience"),
    Attribute("C7", "Supply chain density", "linguistic", "min", "resilience"),
    Attribute("C8", "Supply chain complexity", "linguistic", "max", "resilience"),
    Attribute("C9", "Re-engineering", "linguistic", "max", "resilience"),
    Attribute("C10", "Supplier's resource flexibility", "linguistic", "max", "resilience"),
    Attribute("C11", "Automation disruption", "linguistic", "min", "resilience"),
    Attribute("C12", "Information management", "linguistic", "max", "resilience"),
    Attribute("C13", "Cyber security risk management", "linguistic", "max", "resilience"),
    Attribute("C14", "Supplier reliability", "linguistic", "max", "resilience"),
    Attribute("C15", "Supply chain visibility", "linguistic", "max", "resilience"),
    Attribute("C16", "Level of collaboration", "linguistic", "max", "resilience"),
    Attribute("C17", "Restorative capacity", "linguistic", "max", "resilience"),
    Attribute("C18", "Rerouting", "linguistic", "max", "resilience"),
    Attribute("C19", "Agility", "linguistic", "max", "resilience"),
)


def triangular_series(rng: np.random.Generator, a: float, b: float, c: float,
                      n: int = 500) -> list[float]:
    return [round(float(v), 6) for v in rng.triangular(a, b, c, n)]


def synthesize_dataset(n_suppliers: int, seed: int, name: str | None = None,
                       series_length: int = 500, ranges_per_cell: int = 10) -> Dataset:
    if n_suppliers < 1:
        raise ValueError(f"need at least one supplier, got {n_suppliers}")
    rng = np.random.default_rng(seed)
    suppliers = [f"S{i + 1}" for i in range(n_suppliers)]
    dms = [DecisionMaker(f"DM{i + 1}") for i in range(5)]

    series = {}
    for att, (lo_lo, lo_hi, width_lo, width_hi) in (
            ("C1", (400.0, 470.0, 20.0, 60.0)), ("C2", (5.0, 12.0, 4.0, 9.0))):
        for s in suppliers:
            a = float(rng.uniform(lo_lo, lo_hi))
            c = a + float(rng.uniform(width_lo, width_hi))
            b = float(rng.uniform(a + 0.2 * (c - a), a + 0.8 * (c - a)))
            series[(s, att)] = triangular_series(rng, a, b, c, series_length)

    ranges = {}
    for att, (lo_lo, lo_hi, width_lo, width_hi) in (
            ("C3", (55.0, 130.0, 15.0, 35.0)), ("C4", (270.0, 430.0, 60.0, 190.0))):
        for s in suppliers:
            p0 = float(rng.uniform(lo_lo, lo_hi))
            w = float(rng.uniform(width_lo, width_hi))
            cell = []
            for _ in range(ranges_per_cell):
                jitter_p = float(rng.uniform(-0.08, 0.08)) * w
                jitter_q = float(rng.uniform(-0.08, 0.08)) * w
                p = round(p0 + jitter_p, 2)
                q = round(p0 + w + jitter_q, 2)
                cell.append((min(p, q), max(p, q)))
            ranges[(s, att)] = cell

    perf_terms = PERFORMANCE.terms
    appraisals = {}
    for att in STANDARD_ATTRIBUTES:
        if att.evidence_kind != "linguistic":
            continue
        # min-objective columns are inverted through the lower support bound,
        # so the bottom term (support floor 0) is off limits there
        floor = 1 if att.objective == "min" else 0
        for s in suppliers:
            center = int(rng.integers(1, len(perf_terms) - 1))
            for d in dms:
                idx = center + int(rng.integers(-1, 2))
                idx = min(max(idx, floor), len(perf_terms) - 1)
                appraisals[(s, att.id, d.id)] = perf_terms[idx]

    weight_terms = WEIGHT.terms
    weights = {}
    for att in STANDARD_ATTRIBUTES:
        center = int(rng.integers(1, len(weight_terms) - 1))
        for d in dms:
            idx = center + int(rng.integers(-1, 2))
            idx = min(max(idx, 0), len(weight_terms) - 1)
            weights[(att.id, d.id)] = weight_terms[idx]

    unit_costs = [round(float(rng.uniform(450, 1050)), 0) for _ in suppliers]
    lead_times = [round(float(rng.uniform(8, 15)), 2) for _ in suppliers]
    quantity = 100.0 * n_suppliers
    budget_anchor = round(float(np.mean(unit_costs)) * quantity * 1.0, -3)
    mcgp = McgpModel(
        suppliers=tuple(SupplierTerms(s, 0.0, u, l)
                        for s, u, l in zip(suppliers, unit_costs, lead_times)),
        tvp_floor=round(0.5 * quantity, 0),
        budget_anchor=budget_anchor,
        budget_min=budget_anchor * 0.85,
        budget_max=budget_anchor * 1.15,
        lead_anchor=10.0, lead_min=10.0, lead_max=12.0,
        quantity=quantity,
    )

    return Dataset(
        name=name or f"synth-{n_suppliers}x{seed}",
        suppliers=suppliers,
        decision_makers=dms,
        attributes=list(STANDARD_ATTRIBUTES),
        appraisals=appraisals,
        weight_judgments=weights,
        ranges=ranges,
        series=series,
        config=PipelineConfig(from_raw=True),
        mcgp=mcgp,
        notes=f"synthetic bundle (seed {seed}); allocation coefficients are filled "
              "from the computed closeness scores at solve time",
    )
