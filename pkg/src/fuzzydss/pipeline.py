"""Run the full evaluation pipeline over a dataset and persist sessions.

Stage order: quantitative evidence (time series induction and granular
extraction, or published TFN overrides), qualitative aggregation (cells and
weights), TOPSIS scoring (full, resilience-only and cost-only), the
cost/resilience index sweep, and finally order allocation when goal-program
parameters are present.  Every intermediate is kept on the session for
audit, and every artifact is hashed so what-if tooling can tell which
stages a change touched.

All reals in the session document are rounded to 12 significant digits at
serialization time, which makes hashes platform-stable and the round trip
exact.
"""
from __future__ import annotations

import hashlib
import json
import time
import warnings
from dataclasses import dataclass, field

from . import granular, temporal, topsis
from .dataset import Dataset, DatasetError
from .frames import fuzzify_frame
from .linguistic import Appraisal, WeightJudgment, aggregate_weight, build_qualitative_tfn
from .mcgp import penalty_oracle, solve_allocation
from .tfn import TFN

SESSION_SCHEMA_VERSION = 1


class PipelineStageError(RuntimeError):
    def __init__(self, stage: str, where: str, message: str):
        super().__init__(f"stage {stage!r} failed at {where}: {message}")
        self.stage = stage
        self.where = where


def _round12(value):
    """Recursively round floats to 12 significant digits (hash stability)."""
    if isinstance(value, bool):
        return value
    if isinstance(value, float):
        return float(format(value, ".12g"))
    if isinstance(value, dict):
        return {k: _round12(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_round12(v) for v in value]
    return value


def canonical_json(doc) -> str:
    return json.dumps(_round12(doc), sort_keys=True, separators=(",", ":"))


def digest(doc) -> str:
    return hashlib.sha256(canonical_json(doc).encode()).hexdigest()


@dataclass
class Session:
    dataset_document: dict
    artifacts: dict
    provenance: dict = field(default_factory=dict)
    integrity_ok: bool = True

    def to_document(self) -> dict:
        return _round12({
            "schema_version": SESSION_SCHEMA_VERSION,
            "dataset": self.dataset_document,
            "artifacts": self.artifacts,
            "provenance": self.provenance,
        })

    def stage_hash(self, stage: str) -> str:
        return self.provenance["stage_hashes"][stage]


def _tfn_list(t: TFN) -> list[float]:
    return [t.a, t.b, t.c]


def _ranking_doc(result: topsis.RankingResult) -> dict:
    return {
        "variant": result.variant,
        "pis": dict(result.pis),
        "nis": dict(result.nis),
        "scores": [
            {"supplier": s.supplier, "d_plus": s.d_plus, "d_minus": s.d_minus,
             "closeness": s.closeness, "rank": s.rank}
            for s in result.scores
        ],
        "normalized_closeness": topsis.normalized_closeness(result),
    }


def ranking_result_from_doc(doc: dict) -> topsis.RankingResult:
    """Rehydrate a RankingResult from its artifact document."""
    scores = tuple(
        topsis.SupplierScore(s["supplier"], s["d_plus"], s["d_minus"],
                             s["closeness"], s["rank"])
        for s in doc["scores"])
    return topsis.RankingResult(scores, dict(doc["pis"]), dict(doc["nis"]),
                                doc["variant"])


def _quantitative_stage(ds: Dataset) -> tuple[dict[tuple[str, str], TFN], dict]:
    """TFNs for temporal and granular attributes, plus audit detail."""
    cfg = ds.config
    cells: dict[tuple[str, str], TFN] = {}
    detail: dict = {"temporal": {}, "granular": {}}

    def prefer_raw(s, a) -> bool:
        if cfg.from_raw:
            return True
        return (s, a) not in ds.tfn_overrides

    for att in ds.attributes:
        if att.evidence_kind != "temporal":
            continue
        for s in ds.suppliers:
            where = f"({s}, {att.id})"
            if prefer_raw(s, att.id) and (s, att.id) in ds.series:
                xs = ds.series[(s, att.id)]
                try:
                    with warnings.catch_warnings():
                        warnings.simplefilter("ignore", temporal.DegenerateSeriesWarning)
                        tfn = temporal.induce_tfn(xs, cfg.bin_count)
                        est = temporal.estimate_possibility(xs, cfg.bin_count)
                except ValueError as exc:
                    raise PipelineStageError("temporal-induction", where, str(exc)) from exc
                detail["temporal"].setdefault(att.id, {})[s] = {
                    "n": len(xs), "bin_count": est.bin_count, "mode_x": est.mode_x,
                    "degenerate": est.degenerate, "source": "series",
                }
            elif (s, att.id) in ds.tfn_overrides:
                tfn = ds.tfn_overrides[(s, att.id)]
                detail["temporal"].setdefault(att.id, {})[s] = {"source": "override"}
            else:
                raise PipelineStageError("temporal-induction", where,
                                         "no series and no override")
            cells[(s, att.id)] = tfn

    granular_atts = [a for a in ds.attributes if a.evidence_kind == "granular"]
    frames, reports = {}, {}
    for att in granular_atts:
        per_supplier = {s: ds.ranges.get((s, att.id), []) for s in ds.suppliers}
        # the frame spans the extremes of every supplier's extracted ranges
        spans = [b for rs in per_supplier.values() for rng in rs for b in rng]
        if spans:
            try:
                frame = fuzzify_frame(min(spans), max(spans),
                                      cfg.frame_classes, cfg.shoulder)
            except ValueError as exc:
                raise PipelineStageError("granular-extraction", f"({att.id})",
                                         str(exc)) from exc
            frames[att.id] = frame
            if cfg.reliability_mode == "seeded-uniform":
                samples = granular.seeded_test_samples(
                    frame, cfg.reliability_samples, cfg.reliability_seed)
            else:
                samples = granular.default_test_samples(
                    {s: r for s, r in per_supplier.items() if r})
            reports[att.id] = granular.reliability_report(frame, samples)
    reports = granular.normalize_reliability(reports)

    for att in granular_atts:
        for s in ds.suppliers:
            where = f"({s}, {att.id})"
            use_raw = prefer_raw(s, att.id) and bool(ds.ranges.get((s, att.id)))
            if use_raw:
                frame = frames[att.id]
                report = reports[att.id] if cfg.reliability_enabled else None
                try:
                    rows = [granular.raw_membership_row(frame, rng)
                            for rng in ds.ranges[(s, att.id)]]
                    if report is not None:
                        rows = [granular.reliability_modify(r, report.normalized)
                                for r in rows]
                    normalized = granular.aggregate_and_normalize(rows)
                    tfn = granular.integrate_tfn(frame, normalized)
                except granular.GranularError as exc:
                    raise PipelineStageError("granular-extraction", where, str(exc)) from exc
                det = detail["granular"].setdefault(att.id, {
                    "frame": {"lo": frame.lo, "hi": frame.hi, "m": frame.m,
                              "shoulder": frame.shoulder},
                    "reliability": {
                        "static_index": reports[att.id].static_index,
                        "dynamic_index": reports[att.id].dynamic_index,
                        "comprehensive": reports[att.id].comprehensive,
                        "normalized": reports[att.id].normalized,
                        "test_samples": list(reports[att.id].test_samples),
                        "applied": bool(cfg.reliability_enabled),
                    },
                    "normalized_rows": {},
                })
                det["normalized_rows"][s] = list(normalized.per_class)
            elif (s, att.id) in ds.tfn_overrides:
                tfn = ds.tfn_overrides[(s, att.id)]
                detail["granular"].setdefault(att.id, {}).setdefault(
                    "override_sources", []).append(s)
            else:
                raise PipelineStageError("granular-extraction", where,
                                         "no ranges and no override")
            cells[(s, att.id)] = tfn
    return cells, detail


def _qualitative_stage(ds: Dataset) -> dict[tuple[str, str], TFN]:
    scale = ds.performance_scale()
    dm_ids = [d.id for d in ds.decision_makers]
    cells = {}
    for att in ds.attributes:
        if att.evidence_kind != "linguistic":
            continue
        for s in ds.suppliers:
            items = [Appraisal(s, att.id, d, ds.appraisals[(s, att.id, d)])
                     for d in dm_ids if (s, att.id, d) in ds.appraisals]
            try:
                cells[(s, att.id)] = build_qualitative_tfn(items, scale, dm_ids)
            except (KeyError, ValueError) as exc:
                raise PipelineStageError("qualitative-aggregation",
                                         f"({s}, {att.id})", str(exc)) from exc
    return cells


def _weight_stage(ds: Dataset) -> dict[str, TFN]:
    scale = ds.weight_scale()
    dm_ids = [d.id for d in ds.decision_makers]
    weights = {}
    for att in ds.attributes:
        items = [WeightJudgment(att.id, d, ds.weight_judgments[(att.id, d)])
                 for d in dm_ids if (att.id, d) in ds.weight_judgments]
        try:
            weights[att.id] = aggregate_weight(items, scale, dm_ids)
        except (KeyError, ValueError) as exc:
            raise PipelineStageError("weight-aggregation", f"({att.id})", str(exc)) from exc
    return weights


def build_decision_matrix(ds: Dataset) -> topsis.DecisionMatrix:
    quantitative, _ = _quantitative_stage(ds)
    cells = {**quantitative, **_qualitative_stage(ds)}
    return topsis.DecisionMatrix(tuple(ds.suppliers), tuple(ds.attributes),
                                 cells, _weight_stage(ds))


def run_pipeline(dataset: Dataset) -> Session:
    """Execute every stage and return an immutable session snapshot."""
    violations = dataset.validate()
    if violations:
        raise DatasetError("dataset is invalid: " + "; ".join(str(v) for v in violations))
    cfg = dataset.config

    quantitative, quant_detail = _quantitative_stage(dataset)
    qualitative = _qualitative_stage(dataset)
    weights = _weight_stage(dataset)
    cells = {**quantitative, **qualitative}
    matrix = topsis.DecisionMatrix(tuple(dataset.suppliers), tuple(dataset.attributes),
                                   cells, weights)

    try:
        normalized_matrix = topsis.normalize(matrix)
        weighted_matrix = topsis.apply_weights(normalized_matrix)
        ranking = topsis.rank(matrix, cfg.distance_variant)
        groups = {a.group for a in matrix.attributes}
        if groups == {"resilience", "cost"}:
            res_matrix, cost_matrix = topsis.split_by_group(matrix)
            ranking_res = topsis.rank(res_matrix, cfg.distance_variant)
            ranking_cost = topsis.rank(cost_matrix, cfg.distance_variant)
            scri_rows = topsis.scri_sweep(ranking_res, ranking_cost, cfg.scri_step)
        else:
            # no trade-off to sweep when one group is absent
            ranking_res = ranking_cost = None
            scri_rows = None
    except topsis.TopsisError as exc:
        raise PipelineStageError("topsis-scoring", "matrix", str(exc)) from exc

    artifacts = {
        "quantitative_tfns": {f"{s}|{a}": _tfn_list(t)
                              for (s, a), t in sorted(quantitative.items())},
        "qualitative_tfns": {f"{s}|{a}": _tfn_list(t)
                             for (s, a), t in sorted(qualitative.items())},
        "weights": {a: _tfn_list(t) for a, t in sorted(weights.items())},
        "matrix": {f"{s}|{a}": _tfn_list(t) for (s, a), t in sorted(cells.items())},
        "normalized_matrix": {f"{s}|{a}": _tfn_list(t)
                              for (s, a), t in sorted(normalized_matrix.cells.items())},
        "weighted_matrix": {f"{s}|{a}": _tfn_list(t)
                            for (s, a), t in sorted(weighted_matrix.cells.items())},
        "stage_detail": quant_detail,
        "ranking": _ranking_doc(ranking),
        "ranking_resilience": _ranking_doc(ranking_res) if ranking_res else None,
        "ranking_cost": _ranking_doc(ranking_cost) if ranking_cost else None,
        "scri": scri_rows,
        "allocation": None,
    }

    if dataset.mcgp is not None:
        model = resolve_mcgp_model(dataset, ranking)
        plan = solve_allocation(model)
        artifacts["allocation"] = allocation_doc(model, plan)

    ds_doc = dataset.to_document()
    stage_hashes = {
        "quantitative": digest(artifacts["quantitative_tfns"]),
        "qualitative": digest(artifacts["qualitative_tfns"]),
        "weights": digest(artifacts["weights"]),
        "ranking": digest([artifacts["normalized_matrix"], artifacts["weighted_matrix"],
                           artifacts["ranking"], artifacts["ranking_resilience"],
                           artifacts["ranking_cost"]]),
        "scri": digest(artifacts["scri"]),
        "allocation": digest(artifacts["allocation"]),
    }
    provenance = {
        "schema_version": SESSION_SCHEMA_VERSION,
        "created_at": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
        "config_hash": digest([ds_doc, dataset.config.to_dict()]),
        "artifact_hash": digest(artifacts),
        "stage_hashes": stage_hashes,
    }
    return Session(_round12(ds_doc), _round12(artifacts), provenance)


def resolve_mcgp_model(dataset: Dataset, ranking: topsis.RankingResult):
    """Fill allocation coefficients: explicit overrides win, zero/absent
    coefficients fall back to the computed closeness."""
    from dataclasses import replace as dc_replace
    model = dataset.mcgp
    rho = {s.supplier: s.closeness for s in ranking.scores}
    terms = []
    for t in model.suppliers:
        coeff = dataset.mcgp_coeff_overrides.get(t.id, t.coeff)
        if coeff <= 0:
            coeff = rho[t.id]
        terms.append(dc_replace(t, coeff=coeff))
    return dc_replace(model, suppliers=tuple(terms))


def allocation_doc(model, plan) -> dict:
    doc = {
        "mode": plan.mode,
        "solver_status": plan.solver_status,
        "objective": plan.objective,
        "quantities": dict(plan.quantities),
        "achieved": dict(plan.achieved),
        "deviations": dict(plan.deviations),
        "converged": plan.converged,
        "coefficients": {t.id: t.coeff for t in model.suppliers},
        "goals": {"tvp_floor": model.tvp_floor, "budget_anchor": model.budget_anchor,
                  "budget_min": model.budget_min, "budget_max": model.budget_max,
                  "lead_anchor": model.lead_anchor, "lead_min": model.lead_min,
                  "lead_max": model.lead_max, "quantity": model.quantity},
    }
    if plan.solver_status == "optimal":
        doc["oracle_total"] = penalty_oracle(model, plan.quantities, plan.mode).total
    return doc


# -- session persistence ------------------------------------------------------


def save_session(session: Session, path) -> None:
    from pathlib import Path
    doc = session.to_document()
    doc["integrity"] = digest([doc["dataset"], doc["artifacts"]])
    Path(path).write_text(json.dumps(doc, sort_keys=True, indent=1) + "\n")


def load_session(path) -> Session:
    from pathlib import Path
    doc = json.loads(Path(path).read_text())
    version = doc.get("schema_version")
    if version != SESSION_SCHEMA_VERSION:
        raise DatasetError(f"unsupported session schema version {version!r}; "
                           f"this build reads version {SESSION_SCHEMA_VERSION}")
    expected = doc.get("integrity")
    actual = digest([doc.get("dataset"), doc.get("artifacts")])
    ok = expected == actual
    if not ok:
        warnings.warn("session file integrity hash mismatch; contents may be tampered",
                      UserWarning, stacklevel=2)
    return Session(doc["dataset"], doc["artifacts"], doc.get("provenance", {}),
                   integrity_ok=ok)
