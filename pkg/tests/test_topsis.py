import pytest

from fuzzydss.tfn import TFN
from fuzzydss.topsis import (Attribute, DecisionMatrix, TopsisError, apply_weights,
                             closeness, ideal_solutions, normalize, normalized_closeness,
                             rank, scri, scri_sweep, split_by_group)

UNIT = TFN(1, 1, 1)


def matrix_of(cells, objectives=None, weights=None, groups=None):
    """cells: {supplier: {attr: TFN}}."""
    suppliers = tuple(cells)
    att_ids = list(next(iter(cells.values())))
    atts = tuple(
        Attribute(a, objective=(objectives or {}).get(a, "max"),
                  group=(groups or {}).get(a, "resilience"))
        for a in att_ids)
    flat = {(s, a): cells[s][a] for s in suppliers for a in att_ids}
    w = {a: (weights or {}).get(a, UNIT) for a in att_ids}
    return DecisionMatrix(suppliers, atts, flat, w)


class TestNormalize:
    def test_single_supplier_benefit(self):
        m = matrix_of({"S1": {"A": TFN(2, 3, 4)}})
        out = normalize(m)
        assert out.cell("S1", "A").triple() == pytest.approx((0.5, 0.75, 1.0))

    def test_single_supplier_cost(self):
        m = matrix_of({"S1": {"A": TFN(2, 4, 8)}}, objectives={"A": "min"})
        out = normalize(m)
        assert out.cell("S1", "A").triple() == pytest.approx((0.25, 0.5, 1.0))

    def test_benefit_columns_peak_at_one(self):
        m = matrix_of({
            "S1": {"A": TFN(1, 2, 3)},
            "S2": {"A": TFN(2, 4, 6)},
            "S3": {"A": TFN(1, 3, 5)},
        })
        out = normalize(m)
        assert max(out.cell(s, "A").c for s in m.suppliers) == pytest.approx(1.0)

    def test_zero_lower_bound_under_min_objective(self):
        m = matrix_of({"S1": {"A": TFN(0, 1, 2)}}, objectives={"A": "min"})
        with pytest.raises(TopsisError, match=r"\(S1, A\)"):
            normalize(m)

    def test_incomplete_matrix_rejected(self):
        with pytest.raises(TopsisError, match="missing cell"):
            DecisionMatrix(("S1", "S2"), (Attribute("A"),),
                           {("S1", "A"): UNIT}, {"A": UNIT})

    def test_weight_outside_unit_cube_rejected(self):
        with pytest.raises(TopsisError, match="within"):
            matrix_of({"S1": {"A": UNIT}}, weights={"A": TFN(0, 1, 2)})


class TestWeighting:
    def test_unit_weight_is_identity(self):
        m = matrix_of({"S1": {"A": TFN(0.5, 0.75, 1.0)}})
        assert apply_weights(m).cell("S1", "A") == m.cell("S1", "A")

    def test_componentwise_product(self):
        m = matrix_of({"S1": {"A": TFN(0.5, 0.75, 1.0)}},
                      weights={"A": TFN(0.5, 0.7, 1.0)})
        assert apply_weights(m).cell("S1", "A").triple() == pytest.approx(
            (0.25, 0.525, 1.0))

    def test_zero_weight_drops_attribute(self):
        m = matrix_of({"S1": {"A": TFN(0.5, 0.75, 1.0)}}, weights={"A": TFN.zero()})
        assert apply_weights(m).cell("S1", "A") == TFN.zero()


class TestIdeals:
    def test_crisp_anchors(self):
        m = matrix_of({
            "S1": {"A": TFN(0.2, 0.3, 0.4)},
            "S2": {"A": TFN(0.1, 0.5, 0.9)},
        })
        pis, nis = ideal_solutions(m)
        assert pis["A"] == 0.9
        assert nis["A"] == 0.1

    def test_pis_equals_weight_upper_bound_after_normalization(self):
        m = matrix_of({
            "S1": {"A": TFN(1, 2, 3)},
            "S2": {"A": TFN(2, 4, 6)},
        }, weights={"A": TFN(0.5, 0.7, 1.0)})
        weighted = apply_weights(normalize(m))
        pis, _ = ideal_solutions(weighted)
        assert pis["A"] == pytest.approx(1.0)   # = the weight's upper bound


class TestCloseness:
    def setup_method(self):
        self.m = matrix_of({
            "S1": {"A": TFN(0.2, 0.3, 0.4), "B": TFN(0.5, 0.6, 0.7)},
            "S2": {"A": TFN(0.3, 0.5, 0.8), "B": TFN(0.1, 0.2, 0.4)},
            "S3": {"A": TFN(0.1, 0.2, 0.3), "B": TFN(0.6, 0.8, 0.9)},
        })
        self.pis, self.nis = ideal_solutions(self.m)

    def test_row_at_pis_scores_one(self):
        cells = {("S1", a): TFN.crisp(self.pis[a]) for a in ("A", "B")}
        cells[("S2", "A")] = self.m.cell("S2", "A")
        cells[("S2", "B")] = self.m.cell("S2", "B")
        m2 = DecisionMatrix(("S1", "S2"), self.m.attributes, cells, dict(self.m.weights))
        out = closeness(m2, self.pis, self.nis)
        assert out.scores[0].closeness == pytest.approx(1.0)

    def test_row_at_nis_scores_zero(self):
        cells = {("S1", a): TFN.crisp(self.nis[a]) for a in ("A", "B")}
        cells[("S2", "A")] = self.m.cell("S2", "A")
        cells[("S2", "B")] = self.m.cell("S2", "B")
        m2 = DecisionMatrix(("S1", "S2"), self.m.attributes, cells, dict(self.m.weights))
        out = closeness(m2, self.pis, self.nis)
        assert out.scores[0].closeness == pytest.approx(0.0)

    def test_identical_suppliers_tie_broken_by_order(self):
        m = matrix_of({
            "S1": {"A": TFN(0.2, 0.3, 0.4)},
            "S2": {"A": TFN(0.2, 0.3, 0.4)},
        })
        pis, nis = ideal_solutions(m)
        out = closeness(m, pis, nis)
        assert out.scores[0].closeness == pytest.approx(out.scores[1].closeness)
        assert [s.rank for s in out.scores] == [1, 2]

    def test_coincident_anchors_default_to_half_with_warning(self):
        m = matrix_of({
            "S1": {"A": TFN.crisp(0.3)},
            "S2": {"A": TFN.crisp(0.3)},
        })
        pis, nis = ideal_solutions(m)
        with pytest.warns(UserWarning, match="anchors coincide"):
            out = closeness(m, pis, nis)
        assert [s.closeness for s in out.scores] == [0.5, 0.5]
        assert [s.rank for s in out.scores] == [1, 2]

    def test_ranks_are_a_permutation(self):
        out = closeness(self.m, self.pis, self.nis)
        assert sorted(s.rank for s in out.scores) == [1, 2, 3]
        by_rho = sorted(out.scores, key=lambda s: -s.closeness)
        assert [s.rank for s in by_rho] == [1, 2, 3]

    def test_variants_disagree_numerically_but_bound_rho(self):
        for variant in ("paper", "per_attribute"):
            out = closeness(self.m, self.pis, self.nis, variant)
            for s in out.scores:
                assert 0.0 <= s.closeness <= 1.0

    def test_unknown_variant(self):
        with pytest.raises(TopsisError):
            closeness(self.m, self.pis, self.nis, "manhattan")


class TestRankMonotonicity:
    def test_improving_a_cell_helps_without_anchor_shift(self):
        base = {
            "S1": {"A": TFN(0.30, 0.40, 0.50)},
            "S2": {"A": TFN(0.20, 0.35, 0.60)},
            "S3": {"A": TFN(0.10, 0.20, 0.90)},
        }
        m = matrix_of(base)
        before = rank(m)
        # raise S1's components without touching the column max c (S3 holds
        # 0.9 -> normalized anchor) or min a (S3 holds 0.1)
        improved = dict(base)
        improved["S1"] = {"A": TFN(0.35, 0.45, 0.55)}
        after = rank(matrix_of(improved))
        assert after.scores[0].closeness >= before.scores[0].closeness - 1e-12
        for i in (1, 2):
            assert after.scores[i].closeness <= before.scores[i].closeness + 1e-12


class TestScri:
    def setup_method(self):
        m = matrix_of({
            "S1": {"A": TFN(0.2, 0.3, 0.4), "B": TFN(0.5, 0.6, 0.7)},
            "S2": {"A": TFN(0.3, 0.5, 0.8), "B": TFN(0.1, 0.2, 0.4)},
            "S3": {"A": TFN(0.1, 0.2, 0.3), "B": TFN(0.6, 0.8, 0.9)},
        }, groups={"B": "cost"}, objectives={"B": "min"})
        res_m, cost_m = split_by_group(m)
        self.res = rank(res_m)
        self.cost = rank(cost_m)

    def test_endpoints(self):
        assert scri(self.res, self.cost, 0.0) == pytest.approx(
            normalized_closeness(self.cost))
        assert scri(self.res, self.cost, 1.0) == pytest.approx(
            normalized_closeness(self.res))

    def test_affine_in_alpha(self):
        lo = scri(self.res, self.cost, 0.2)
        hi = scri(self.res, self.cost, 0.8)
        mid = scri(self.res, self.cost, 0.5)
        assert mid == pytest.approx([(u + v) / 2 for u, v in zip(lo, hi)], abs=1e-12)

    def test_values_sum_to_one(self):
        for alpha in (0.0, 0.3, 0.7, 1.0):
            assert sum(scri(self.res, self.cost, alpha)) == pytest.approx(1.0)

    def test_alpha_range_enforced(self):
        with pytest.raises(TopsisError):
            scri(self.res, self.cost, 1.5)
        with pytest.raises(TopsisError):
            scri(self.res, self.cost, -0.1)

    def test_sweep_grid(self):
        rows = scri_sweep(self.res, self.cost, 0.1)
        alphas = sorted({r["alpha"] for r in rows})
        assert alphas == pytest.approx([0.1 * k for k in range(1, 10)])
        assert len(rows) == 9 * 3
        for a in alphas:
            block = [r for r in rows if r["alpha"] == a]
            assert sum(r["is_argmax"] for r in block) == 1
            top = max(block, key=lambda r: r["scri"])
            assert top["is_argmax"]

    def test_sweep_step_validation(self):
        with pytest.raises(TopsisError):
            scri_sweep(self.res, self.cost, 0.0)
        with pytest.raises(TopsisError):
            scri_sweep(self.res, self.cost, 0.6)

    def test_split_requires_both_groups(self):
        m = matrix_of({"S1": {"A": UNIT}})
        with pytest.raises(TopsisError):
            split_by_group(m)
