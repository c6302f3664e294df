import json
from dataclasses import replace

import pytest

from fuzzydss.dataset import (Dataset, DatasetError, PipelineConfig, load_dataset,
                              save_dataset)

class TestPaperCaseBundle:
    def test_loads_and_validates(self, paper_case):
        assert paper_case.suppliers == ["S1", "S2", "S3", "S4", "S5"]
        assert len(paper_case.attributes) == 19
        assert len(paper_case.decision_makers) == 5
        assert paper_case.validate() == []

    def test_attribute_objectives(self, paper_case):
        mins = [a.id for a in paper_case.attributes if a.objective == "min"]
        assert mins == ["C2", "C4", "C7", "C11"]
        cost_group = [a.id for a in paper_case.attributes if a.group == "cost"]
        assert cost_group == ["C4"]

    def test_mcgp_block(self, paper_case):
        model = paper_case.mcgp
        assert model.quantity == 500.0
        assert (model.budget_min, model.budget_max) == (250000.0, 350000.0)
        assert [t.coeff for t in model.suppliers] == [0.467, 0.45, 0.448, 0.451, 0.388]


class TestValidation:
    def test_missing_appraisal_names_coordinates(self, paper_case):
        appraisals = dict(paper_case.appraisals)
        del appraisals[("S3", "C12", "DM4")]
        broken = replace(paper_case, appraisals=appraisals)
        violations = broken.validate()
        assert len(violations) == 1
        v = violations[0]
        assert (v.table, v.row) == ("appraisals", "S3,C12,DM4")

    def test_empty_supplier_list(self, paper_case):
        broken = replace(paper_case, suppliers=[], appraisals={}, ranges={},
                         series={}, tfn_overrides={}, mcgp=None)
        messages = [v.message for v in broken.validate()]
        assert any("at least one supplier" in m for m in messages)

    def test_unknown_term_carries_cell(self, paper_case):
        appraisals = dict(paper_case.appraisals)
        appraisals[("S1", "C5", "DM1")] = "WONDERFUL"
        violations = replace(paper_case, appraisals=appraisals).validate()
        assert len(violations) == 1
        assert violations[0].row == "S1,C5,DM1"
        assert "WONDERFUL" in violations[0].message

    def test_inverted_range(self, paper_case):
        ranges = dict(paper_case.ranges)
        ranges[("S1", "C3")] = [(10.0, 5.0)]
        violations = replace(paper_case, ranges=ranges).validate()
        assert any(v.table == "ranges" and "exceeds" in v.message for v in violations)

    def test_evidence_kind_mismatch(self, paper_case):
        ranges = dict(paper_case.ranges)
        ranges[("S1", "C5")] = [(1.0, 2.0)]
        violations = replace(paper_case, ranges=ranges).validate()
        assert any("not granular" in v.message for v in violations)

    def test_violations_do_not_fail_fast(self, paper_case):
        appraisals = dict(paper_case.appraisals)
        del appraisals[("S3", "C12", "DM4")]
        del appraisals[("S1", "C5", "DM1")]
        broken = replace(paper_case, appraisals=appraisals)
        assert len(broken.validate()) == 2

    def test_mcgp_suppliers_must_match(self, paper_case):
        model = paper_case.mcgp
        broken = replace(paper_case, mcgp=replace(model, suppliers=model.suppliers[:3]))
        assert any(v.table == "mcgp" for v in broken.validate())


class TestDocumentRoundTrip:
    def test_round_trip_preserves_everything(self, paper_case):
        doc = paper_case.to_document()
        again = Dataset.from_document(doc)
        assert again.to_document() == doc
        assert again.validate() == []

    def test_document_is_json_serializable(self, paper_case):
        json.dumps(paper_case.to_document())

    def test_unsupported_schema_version(self, paper_case):
        doc = paper_case.to_document()
        doc["schema_version"] = 99
        with pytest.raises(DatasetError, match="version"):
            Dataset.from_document(doc)

    def test_duplicate_appraisal_rows_rejected(self, paper_case):
        doc = paper_case.to_document()
        doc["appraisals"].append(dict(doc["appraisals"][0]))
        with pytest.raises(DatasetError, match="duplicate"):
            Dataset.from_document(doc)

    def test_duplicate_weight_rows_rejected(self, paper_case):
        doc = paper_case.to_document()
        doc["weights"].append(dict(doc["weights"][3]))
        with pytest.raises(DatasetError, match="duplicate"):
            Dataset.from_document(doc)

    def test_duplicate_series_rows_rejected(self, paper_case):
        doc = paper_case.to_document()
        doc["series"].append(dict(doc["series"][0]))
        with pytest.raises(DatasetError, match="duplicate"):
            Dataset.from_document(doc)

    def test_custom_scale_override_round_trips_and_applies(self, paper_case, tmp_path):
        import json
        from dataclasses import replace
        from fuzzydss.pipeline import run_pipeline
        from fuzzydss.scales import PERFORMANCE, LinguisticScale

        # stretch the appraisal scale onto [0, 20]: same terms, doubled TFNs
        doubled = LinguisticScale(
            "PERFORMANCE",
            tuple((term, tfn.scale(2.0)) for term, tfn in PERFORMANCE.entries))
        custom = replace(paper_case, scales={"PERFORMANCE": doubled})
        assert custom.validate() == []

        save_dataset(custom, tmp_path / "bundle")
        again = load_dataset(tmp_path / "bundle")
        assert again.performance_scale()["EG"].triple() == (16, 18, 20)

        # the linear normalization divides the doubling out: same ranking
        base = run_pipeline(paper_case)
        scaled = run_pipeline(again)
        assert (scaled.artifacts["ranking"]["scores"]
                == base.artifacts["ranking"]["scores"])
        assert scaled.artifacts["qualitative_tfns"]["S3|C5"] == [12.0, 16.0, 20.0]

    def test_bundle_round_trip(self, paper_case, tmp_path):
        save_dataset(paper_case, tmp_path / "bundle")
        again = load_dataset(tmp_path / "bundle")
        assert again.to_document() == paper_case.to_document()

    def test_missing_directory(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_dataset(tmp_path / "nope")

    def test_missing_manifest(self, tmp_path):
        (tmp_path / "empty").mkdir()
        with pytest.raises(DatasetError, match="manifest"):
            load_dataset(tmp_path / "empty")


class TestConfig:
    def test_defaults(self):
        cfg = PipelineConfig()
        assert cfg.frame_classes == 7
        assert cfg.shoulder == "paper"
        assert cfg.distance_variant == "paper"
        assert cfg.reliability_mode == "midpoint-mean"

    def test_unknown_keys_rejected(self):
        with pytest.raises(DatasetError, match="unknown config"):
            PipelineConfig.from_dict({"frame_classes": 5, "sauce": "extra"})

    def test_with_config(self, paper_case):
        tweaked = paper_case.with_config(frame_classes=9, from_raw=True)
        assert tweaked.config.frame_classes == 9
        assert tweaked.config.from_raw
        assert paper_case.config.frame_classes == 7
