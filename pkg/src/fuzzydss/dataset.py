"""Dataset schema, loading and validation.

A dataset bundles everything one evaluation run needs: suppliers, decision
makers, attributes (with their evidence kind, optimization direction and
group), the evidence payloads (time series, extracted ranges, linguistic
appraisals), weight judgments, optional TFN overrides for the quantitative
stages, pipeline configuration, and optional order-allocation parameters.

Two physical forms are supported and interconvertible: a directory bundle
(manifest.json plus CSV tables plus mcgp.json) and a single JSON document
(used by the HTTP service).  Validation is whole-file: it returns every
violation with table/row coordinates instead of stopping at the first.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field, asdict, replace
from pathlib import Path

from .mcgp import McgpModel, SupplierTerms
from .scales import BUILTIN_SCALES, LinguisticScale
from .tfn import TFN, TfnError
from .topsis import Attribute, TopsisError

SCHEMA_VERSION = 1

BUNDLE_FILES = ("manifest.json", "suppliers.csv", "attributes.csv", "appraisals.csv",
                "weights.csv", "ranges.csv", "series.csv", "tfn_overrides.csv", "mcgp.json")


class DatasetError(ValueError):
    pass


@dataclass(frozen=True)
class Violation:
    table: str
    row: str
    message: str

    def __str__(self):
        return f"{self.table}[{self.row}]: {self.message}"


@dataclass(frozen=True)
class PipelineConfig:
    frame_classes: int = 7
    shoulder: str = "paper"                  # "paper" | "ruspini"
    distance_variant: str = "paper"          # "paper" | "per_attribute"
    reliability_mode: str = "midpoint-mean"  # "midpoint-mean" | "seeded-uniform"
    reliability_samples: int = 1
    reliability_seed: int = 0
    reliability_enabled: bool = True
    from_raw: bool = False
    bin_count: int | None = None
    scri_step: float = 0.1

    @staticmethod
    def from_dict(data: dict) -> "PipelineConfig":
        known = {f for f in PipelineConfig.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise DatasetError(f"unknown config keys: {sorted(unknown)}")
        return PipelineConfig(**data)

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class DecisionMaker:
    id: str
    weight: float = 1.0   # reserved hook; the aggregation path treats DMs equally


@dataclass
class Dataset:
    name: str
    suppliers: list[str]
    decision_makers: list[DecisionMaker]
    attributes: list[Attribute]
    appraisals: dict[tuple[str, str, str], str] = field(default_factory=dict)
    weight_judgments: dict[tuple[str, str], str] = field(default_factory=dict)
    ranges: dict[tuple[str, str], list[tuple[float, float]]] = field(default_factory=dict)
    series: dict[tuple[str, str], list[float]] = field(default_factory=dict)
    tfn_overrides: dict[tuple[str, str], TFN] = field(default_factory=dict)
    scales: dict[str, LinguisticScale] = field(default_factory=dict)
    config: PipelineConfig = field(default_factory=PipelineConfig)
    mcgp: McgpModel | None = None
    mcgp_coeff_overrides: dict[str, float] = field(default_factory=dict)
    notes: str = ""

    # -- scales ---------------------------------------------------------

    def performance_scale(self) -> LinguisticScale:
        return self.scales.get("PERFORMANCE", BUILTIN_SCALES["PERFORMANCE"])

    def weight_scale(self) -> LinguisticScale:
        return self.scales.get("WEIGHT", BUILTIN_SCALES["WEIGHT"])

    def attribute(self, attr_id: str) -> Attribute:
        for a in self.attributes:
            if a.id == attr_id:
                return a
        raise DatasetError(f"unknown attribute {attr_id!r}")

    # -- validation -------------------------------------------------------

    def validate(self) -> list[Violation]:
        v: list[Violation] = []
        if not self.suppliers:
            v.append(Violation("suppliers", "-", "at least one supplier is required"))
        if not self.decision_makers:
            v.append(Violation("manifest", "-", "at least one decision maker is required"))
        if not self.attributes:
            v.append(Violation("attributes", "-", "at least one attribute is required"))
        if len(set(self.suppliers)) != len(self.suppliers):
            v.append(Violation("suppliers", "-", "duplicate supplier ids"))
        dm_ids = [d.id for d in self.decision_makers]
        if len(set(dm_ids)) != len(dm_ids):
            v.append(Violation("manifest", "-", "duplicate decision maker ids"))
        att_ids = [a.id for a in self.attributes]
        if len(set(att_ids)) != len(att_ids):
            v.append(Violation("attributes", "-", "duplicate attribute ids"))

        suppliers, dms, atts = set(self.suppliers), set(dm_ids), set(att_ids)
        kind = {a.id: a.evidence_kind for a in self.attributes}
        perf, wscale = self.performance_scale(), self.weight_scale()

        for (s, a, d), term in sorted(self.appraisals.items()):
            where = f"{s},{a},{d}"
            if s not in suppliers:
                v.append(Violation("appraisals", where, f"unknown supplier {s!r}"))
            if a not in atts:
                v.append(Violation("appraisals", where, f"unknown attribute {a!r}"))
            elif kind[a] != "linguistic":
                v.append(Violation("appraisals", where,
                                   f"attribute {a} is {kind[a]}, not linguistic"))
            if d not in dms:
                v.append(Violation("appraisals", where, f"unknown decision maker {d!r}"))
            if term not in perf:
                v.append(Violation("appraisals", where,
                                   f"term {term!r} not in scale {perf.name}"))
        for a in sorted(atts):
            if kind[a] != "linguistic":
                continue
            for s in self.suppliers:
                for d in dm_ids:
                    if (s, a, d) not in self.appraisals:
                        v.append(Violation("appraisals", f"{s},{a},{d}",
                                           "missing appraisal"))

        for (a, d), term in sorted(self.weight_judgments.items()):
            where = f"{a},{d}"
            if a not in atts:
                v.append(Violation("weights", where, f"unknown attribute {a!r}"))
            if d not in dms:
                v.append(Violation("weights", where, f"unknown decision maker {d!r}"))
            if term not in wscale:
                v.append(Violation("weights", where,
                                   f"term {term!r} not in scale {wscale.name}"))
        for a in sorted(atts):
            for d in dm_ids:
                if (a, d) not in self.weight_judgments:
                    v.append(Violation("weights", f"{a},{d}", "missing weight judgment"))

        for (s, a), rs in sorted(self.ranges.items()):
            where = f"{s},{a}"
            if s not in suppliers:
                v.append(Violation("ranges", where, f"unknown supplier {s!r}"))
            if a not in atts:
                v.append(Violation("ranges", where, f"unknown attribute {a!r}"))
            elif kind[a] != "granular":
                v.append(Violation("ranges", where,
                                   f"attribute {a} is {kind[a]}, not granular"))
            for i, (p, q) in enumerate(rs, start=1):
                if not (math.isfinite(p) and math.isfinite(q)):
                    v.append(Violation("ranges", f"{where},{i}", "non-finite bound"))
                elif p > q:
                    v.append(Violation("ranges", f"{where},{i}", f"p {p} exceeds q {q}"))

        for (s, a), xs in sorted(self.series.items()):
            where = f"{s},{a}"
            if s not in suppliers:
                v.append(Violation("series", where, f"unknown supplier {s!r}"))
            if a not in atts:
                v.append(Violation("series", where, f"unknown attribute {a!r}"))
            elif kind[a] != "temporal":
                v.append(Violation("series", where,
                                   f"attribute {a} is {kind[a]}, not temporal"))
            if len(xs) < 3:
                v.append(Violation("series", where, f"needs >= 3 observations, has {len(xs)}"))
            if any(not math.isfinite(x) for x in xs):
                v.append(Violation("series", where, "non-finite observation"))

        for (s, a), tfn in sorted(self.tfn_overrides.items()):
            where = f"{s},{a}"
            if s not in suppliers:
                v.append(Violation("tfn_overrides", where, f"unknown supplier {s!r}"))
            if a not in atts:
                v.append(Violation("tfn_overrides", where, f"unknown attribute {a!r}"))
            elif kind[a] == "linguistic":
                v.append(Violation("tfn_overrides", where,
                                   "overrides are only meaningful for quantitative attributes"))

        for a in self.attributes:
            if a.evidence_kind == "linguistic":
                continue
            payload = self.series if a.evidence_kind == "temporal" else self.ranges
            for s in self.suppliers:
                has_raw = (s, a.id) in payload and bool(payload[(s, a.id)])
                has_override = (s, a.id) in self.tfn_overrides
                if not has_raw and not has_override:
                    v.append(Violation("attributes", f"{s},{a.id}",
                                       f"{a.evidence_kind} attribute has neither raw "
                                       "evidence nor a TFN override"))
                if self.config.from_raw and not has_raw:
                    v.append(Violation("attributes", f"{s},{a.id}",
                                       "from_raw is set but raw evidence is missing"))

        if self.mcgp is not None:
            model_ids = [t.id for t in self.mcgp.suppliers]
            if model_ids != self.suppliers:
                v.append(Violation("mcgp", "-",
                                   f"allocation suppliers {model_ids} do not match "
                                   f"dataset suppliers {self.suppliers}"))
        return v

    # -- document form ----------------------------------------------------

    def to_document(self) -> dict:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "name": self.name,
            "suppliers": list(self.suppliers),
            "decision_makers": [{"id": d.id, "weight": d.weight}
                                for d in self.decision_makers],
            "attributes": [{"id": a.id, "name": a.name, "evidence": a.evidence_kind,
                            "objective": a.objective, "group": a.group}
                           for a in self.attributes],
            "appraisals": [{"supplier": s, "attribute": a, "dm": d, "term": t}
                           for (s, a, d), t in sorted(self.appraisals.items())],
            "weights": [{"attribute": a, "dm": d, "term": t}
                        for (a, d), t in sorted(self.weight_judgments.items())],
            "ranges": [{"supplier": s, "attribute": a, "range_index": i + 1,
                        "p": p, "q": q}
                       for (s, a), rs in sorted(self.ranges.items())
                       for i, (p, q) in enumerate(rs)],
            "series": [{"supplier": s, "attribute": a, "t": i + 1, "value": x}
                       for (s, a), xs in sorted(self.series.items())
                       for i, x in enumerate(xs)],
            "tfn_overrides": [{"supplier": s, "attribute": a,
                               "a": t.a, "b": t.b, "c": t.c}
                              for (s, a), t in sorted(self.tfn_overrides.items())],
            "config": self.config.to_dict(),
            "notes": self.notes,
        }
        if self.scales:
            doc["scales"] = {k: json.loads(sc.to_json()) for k, sc in self.scales.items()}
        if self.mcgp is not None:
            m = self.mcgp
            doc["mcgp"] = {
                "suppliers": [{"id": t.id, "coeff": t.coeff, "unit_cost": t.unit_cost,
                               "lead_time": t.lead_time} for t in m.suppliers],
                "goals": {
                    "tvp_floor": m.tvp_floor,
                    "budget": {"anchor": m.budget_anchor, "min": m.budget_min,
                               "max": m.budget_max},
                    "lead": {"anchor": m.lead_anchor, "min": m.lead_min,
                             "max": m.lead_max},
                    "quantity": m.quantity,
                },
                "deviation_weights": dict(m.deviation_weights),
                "coeff_overrides": dict(self.mcgp_coeff_overrides),
            }
        return doc

    @staticmethod
    def from_document(doc: dict) -> "Dataset":
        version = doc.get("schema_version")
        if version != SCHEMA_VERSION:
            raise DatasetError(f"unsupported schema version {version!r}; "
                               f"this build reads version {SCHEMA_VERSION}")
        try:
            attributes = [Attribute(a["id"], a.get("name", ""), a["evidence"],
                                    a["objective"], a.get("group", "resilience"))
                          for a in doc.get("attributes", [])]
        except TopsisError as exc:
            raise DatasetError(str(exc)) from exc
        ranges: dict[tuple[str, str], list[tuple[float, float]]] = {}
        seen_ranges = set()
        for r in sorted(doc.get("ranges", []), key=lambda r: (r["supplier"], r["attribute"],
                                                              r.get("range_index", 0))):
            key = (r["supplier"], r["attribute"], r.get("range_index", 0))
            if key in seen_ranges:
                raise DatasetError(f"ranges[{','.join(str(k) for k in key)}]: duplicate row")
            seen_ranges.add(key)
            ranges.setdefault((r["supplier"], r["attribute"]), []).append(
                (float(r["p"]), float(r["q"])))
        series: dict[tuple[str, str], list[float]] = {}
        seen_t = set()
        for r in sorted(doc.get("series", []), key=lambda r: (r["supplier"], r["attribute"],
                                                              r.get("t", 0))):
            key = (r["supplier"], r["attribute"], r.get("t", 0))
            if key in seen_t:
                raise DatasetError(f"series[{','.join(str(k) for k in key)}]: duplicate row")
            seen_t.add(key)
            series.setdefault((r["supplier"], r["attribute"]), []).append(float(r["value"]))
        overrides = {}
        for r in doc.get("tfn_overrides", []):
            try:
                overrides[(r["supplier"], r["attribute"])] = TFN(
                    float(r["a"]), float(r["b"]), float(r["c"]))
            except TfnError as exc:
                raise DatasetError(
                    f"tfn_overrides[{r['supplier']},{r['attribute']}]: {exc}") from exc
        scales = {k: LinguisticScale.from_json(sc)
                  for k, sc in doc.get("scales", {}).items()}
        mcgp_model, coeff_overrides = _mcgp_from_document(doc.get("mcgp"))
        appraisals: dict[tuple[str, str, str], str] = {}
        for r in doc.get("appraisals", []):
            key = (r["supplier"], r["attribute"], r["dm"])
            if key in appraisals:
                raise DatasetError(f"appraisals[{','.join(key)}]: duplicate row")
            appraisals[key] = r["term"]
        weight_judgments: dict[tuple[str, str], str] = {}
        for r in doc.get("weights", []):
            key = (r["attribute"], r["dm"])
            if key in weight_judgments:
                raise DatasetError(f"weights[{','.join(key)}]: duplicate row")
            weight_judgments[key] = r["term"]
        return Dataset(
            name=doc.get("name", "dataset"),
            suppliers=list(doc.get("suppliers", [])),
            decision_makers=[DecisionMaker(d["id"], float(d.get("weight", 1.0)))
                             for d in doc.get("decision_makers", [])],
            attributes=attributes,
            appraisals=appraisals,
            weight_judgments=weight_judgments,
            ranges=ranges,
            series=series,
            tfn_overrides=overrides,
            scales=scales,
            config=PipelineConfig.from_dict(doc.get("config", {})),
            mcgp=mcgp_model,
            mcgp_coeff_overrides=coeff_overrides,
            notes=doc.get("notes", ""),
        )

    def with_config(self, **kwargs) -> "Dataset":
        return replace(self, config=replace(self.config, **kwargs))


def _mcgp_from_document(data: dict | None) -> tuple[McgpModel | None, dict[str, float]]:
    if not data:
        return None, {}
    goals = data["goals"]
    suppliers = tuple(
        SupplierTerms(t["id"], float(t.get("coeff", 0.0)), float(t["unit_cost"]),
                      float(t["lead_time"]))
        for t in data["suppliers"]
    )
    model = McgpModel(
        suppliers=suppliers,
        tvp_floor=float(goals["tvp_floor"]),
        budget_anchor=float(goals["budget"]["anchor"]),
        budget_min=float(goals["budget"]["min"]),
        budget_max=float(goals["budget"]["max"]),
        lead_anchor=float(goals["lead"]["anchor"]),
        lead_min=float(goals["lead"]["min"]),
        lead_max=float(goals["lead"]["max"]),
        quantity=float(goals["quantity"]),
        deviation_weights={k: float(v)
                           for k, v in data.get("deviation_weights", {}).items()},
    )
    coeff_overrides = {k: float(v) for k, v in data.get("coeff_overrides", {}).items()}
    return model, coeff_overrides


# -- bundle (directory) I/O -------------------------------------------------


def _read_csv(path: Path, required: list[str]) -> list[dict]:
    if not path.exists():
        return []
    with path.open(newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            return []
        missing = [c for c in required if c not in reader.fieldnames]
        if missing:
            raise DatasetError(f"{path.name}: missing columns {missing}")
        return [row for row in reader]


def load_dataset(path: str | Path) -> Dataset:
    """Load a dataset from a bundle directory."""
    root = Path(path)
    if not root.is_dir():
        raise FileNotFoundError(f"dataset bundle {root} is not a directory")
    manifest_path = root / "manifest.json"
    if not manifest_path.exists():
        raise DatasetError(f"{root}: missing manifest.json")
    manifest = json.loads(manifest_path.read_text())
    version = manifest.get("schema_version")
    if version != SCHEMA_VERSION:
        raise DatasetError(f"unsupported schema version {version!r}; "
                           f"this build reads version {SCHEMA_VERSION}")

    doc: dict = {
        "schema_version": SCHEMA_VERSION,
        "name": manifest.get("name", root.name),
        "decision_makers": manifest.get("decision_makers", []),
        "config": manifest.get("config", {}),
        "notes": manifest.get("notes", ""),
        "scales": manifest.get("scales", {}),
    }
    doc["suppliers"] = [r["id"] for r in _read_csv(root / "suppliers.csv", ["id"])]
    doc["attributes"] = [
        {"id": r["id"], "name": r.get("name", ""), "evidence": r["evidence"],
         "objective": r["objective"], "group": r.get("group", "resilience")}
        for r in _read_csv(root / "attributes.csv", ["id", "evidence", "objective"])
    ]
    doc["appraisals"] = _read_csv(root / "appraisals.csv",
                                  ["supplier", "attribute", "dm", "term"])
    doc["weights"] = _read_csv(root / "weights.csv", ["attribute", "dm", "term"])
    doc["ranges"] = [
        {"supplier": r["supplier"], "attribute": r["attribute"],
         "range_index": int(r["range_index"]), "p": float(r["p"]), "q": float(r["q"])}
        for r in _read_csv(root / "ranges.csv",
                           ["supplier", "attribute", "range_index", "p", "q"])
    ]
    doc["series"] = [
        {"supplier": r["supplier"], "attribute": r["attribute"],
         "t": int(r["t"]), "value": float(r["value"])}
        for r in _read_csv(root / "series.csv", ["supplier", "attribute", "t", "value"])
    ]
    doc["tfn_overrides"] = [
        {"supplier": r["supplier"], "attribute": r["attribute"],
         "a": float(r["a"]), "b": float(r["b"]), "c": float(r["c"])}
        for r in _read_csv(root / "tfn_overrides.csv",
                           ["supplier", "attribute", "a", "b", "c"])
    ]
    mcgp_path = root / "mcgp.json"
    if mcgp_path.exists():
        doc["mcgp"] = json.loads(mcgp_path.read_text())
    return Dataset.from_document(doc)


def save_dataset(dataset: Dataset, path: str | Path) -> None:
    """Write a dataset out as a bundle directory."""
    root = Path(path)
    root.mkdir(parents=True, exist_ok=True)
    doc = dataset.to_document()

    manifest = {
        "schema_version": SCHEMA_VERSION,
        "name": doc["name"],
        "decision_makers": doc["decision_makers"],
        "config": doc["config"],
        "notes": doc["notes"],
    }
    if "scales" in doc:
        manifest["scales"] = doc["scales"]
    (root / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")

    def write_csv(name: str, header: list[str], rows: list[dict]):
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=header)
        w.writeheader()
        for row in rows:
            w.writerow(row)
        (root / name).write_text(buf.getvalue())

    write_csv("suppliers.csv", ["id"], [{"id": s} for s in doc["suppliers"]])
    write_csv("attributes.csv", ["id", "name", "evidence", "objective", "group"],
              doc["attributes"])
    write_csv("appraisals.csv", ["supplier", "attribute", "dm", "term"], doc["appraisals"])
    write_csv("weights.csv", ["attribute", "dm", "term"], doc["weights"])
    write_csv("ranges.csv", ["supplier", "attribute", "range_index", "p", "q"],
              doc["ranges"])
    write_csv("series.csv", ["supplier", "attribute", "t", "value"], doc["series"])
    write_csv("tfn_overrides.csv", ["supplier", "attribute", "a", "b", "c"],
              doc["tfn_overrides"])
    if "mcgp" in doc:
        (root / "mcgp.json").write_text(json.dumps(doc["mcgp"], indent=2) + "\n")
