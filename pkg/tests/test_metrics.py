import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from flowallometry import (AllZero, ComplexityTable, NoExports, NoMarket,
                           TooFewPoints, TradeRecord, ZeroVariance,
                           complexity_table, dominance_share, gini,
                           inequality_report, pearson, prody, prody_all, rca,
                           rca_column)


def gini_pairwise(values):
    """O(n^2) mean-absolute-difference oracle."""
    x = np.asarray(values, dtype=float)
    n = len(x)
    return float(np.abs(x[:, None] - x[None, :]).sum() / (2 * n * n * x.mean()))


class TestGini:
    def test_perfect_equality(self):
        assert gini([4, 4, 4, 4]) == pytest.approx(0.0, abs=1e-15)

    def test_one_to_five(self):
        assert gini([1, 2, 3, 4, 5]) == pytest.approx(0.26667, abs=1e-5)
        assert gini([1, 2, 3, 4, 5]) == pytest.approx(gini_pairwise([1, 2, 3, 4, 5]),
                                                      abs=1e-12)

    def test_single_holder_is_max(self):
        values = [0, 0, 0, 0, 10]
        assert gini(values) == pytest.approx(0.8, abs=1e-12)
        assert gini(values) == pytest.approx(1 - 1 / len(values), abs=1e-12)

    def test_all_zero(self):
        with pytest.raises(AllZero):
            gini([0.0, 0.0, 0.0])

    def test_rejects_negatives(self):
        with pytest.raises(ValueError):
            gini([1.0, -1.0])

    @given(arrays(float, st.integers(2, 60),
                  elements=st.floats(0, 1e9, allow_nan=False)))
    def test_sorted_form_equals_pairwise_oracle(self, values):
        if values.sum() == 0:
            return
        assert gini(values) == pytest.approx(gini_pairwise(values), abs=1e-9)

    @given(arrays(float, st.integers(2, 40),
                  elements=st.floats(0.0, 1e6, allow_nan=False)),
           st.floats(1e-6, 1e6))
    def test_scale_invariant_and_bounded(self, values, scale):
        if values.sum() == 0:
            return
        base = gini(values)
        assert gini(values * scale) == pytest.approx(base, rel=1e-9, abs=1e-12)
        assert -1e-12 <= base <= 1 - 1 / len(values) + 1e-12


class TestDominance:
    @pytest.mark.parametrize("impacts,expected", [
        ([1, 2, 3, 4, 5], 0.3333),
        ([1, 1.4, 1.7, 2, 2.2], 0.2651),
        ([1, 4, 9, 16, 25], 0.4545),
    ])
    def test_worked_triple(self, impacts, expected):
        assert dominance_share(impacts) == pytest.approx(expected, abs=1e-3)

    def test_all_zero(self):
        with pytest.raises(AllZero):
            dominance_share([0.0, 0.0])


class TestInequalityReport:
    def test_topk_ranked_with_deterministic_ties(self):
        report = inequality_report(("AAA", "BBB", "CCC", "DDD"),
                                   [2.0, 5.0, 2.0, 9.0], k=3)
        assert report.topk == (("DDD", 9.0), ("BBB", 5.0), ("AAA", 2.0))
        assert report.dominance == pytest.approx(9.0 / 18.0)


def toy_table(gdp=None):
    return ComplexityTable(("C1", "C2"), ("P1", "P2"),
                           np.array([[5.0, 5.0], [0.0, 10.0]]), gdp)


class TestRca:
    def test_sole_exporter(self):
        table = ComplexityTable(("C1", "C2"), ("P1", "P2"),
                                np.array([[10.0, 0.0], [0.0, 10.0]]))
        assert rca(table, "C1", "P1") == pytest.approx(1.0)

    def test_shared_market(self):
        table = toy_table()
        assert rca(table, "C1", "P2") == pytest.approx(1 / 3)
        assert rca(table, "C2", "P2") == pytest.approx(2 / 3)

    def test_scale_invariance(self):
        table = toy_table()
        scaled = ComplexityTable(table.countries, table.products,
                                 table.exports * 1e6)
        for c in table.countries:
            for p in table.products:
                if table.exports[table.country_index(c),
                                 table.product_index(p)] > 0:
                    assert rca(scaled, c, p) == pytest.approx(rca(table, c, p),
                                                              rel=1e-12)

    def test_no_exports(self):
        table = ComplexityTable(("C1", "C2"), ("P1",),
                                np.array([[5.0], [0.0]]))
        with pytest.raises(NoExports):
            rca(table, "C2", "P1")

    def test_no_market(self):
        table = ComplexityTable(("C1", "C2"), ("P1", "P2"),
                                np.array([[5.0, 0.0], [5.0, 0.0]]))
        with pytest.raises(NoMarket):
            rca(table, "C1", "P2")

    def test_columns_sum_to_one_on_random_tables(self):
        rng = np.random.default_rng(17)
        for _ in range(20):
            exports = rng.uniform(0, 100, size=(6, 9))
            exports[rng.random(exports.shape) < 0.4] = 0.0
            exports[0, 0] = 1.0  # keep at least one active cell
            countries = tuple(f"C{i}" for i in range(6))
            products = tuple(str(1000 + j)[:4] for j in range(9))
            table = ComplexityTable(countries, products, exports)
            for p in products:
                if exports[:, table.product_index(p)].sum() > 0:
                    assert rca_column(table, p).sum() == pytest.approx(
                        1.0, abs=1e-12)


class TestPrody:
    def test_sole_exporter_weight_one(self):
        table = ComplexityTable(("C1", "C2"), ("P1", "P2"),
                                np.array([[10.0, 0.0], [0.0, 10.0]]),
                                np.array([30000.0, 9000.0]))
        assert prody(table, "P1") == pytest.approx(30000.0)

    def test_worked_example(self):
        table = toy_table(np.array([9000.0, 36000.0]))
        assert prody(table, "P2") == pytest.approx(27000.0)

    def test_identical_gdp_everywhere(self):
        table = toy_table(np.array([15000.0, 15000.0]))
        for p in table.products:
            assert prody(table, p) == pytest.approx(15000.0)

    def test_bounded_by_gdp_range(self):
        rng = np.random.default_rng(23)
        for _ in range(20):
            exports = rng.uniform(0, 50, size=(5, 7))
            exports[0, :] += 1.0
            gdp = rng.uniform(500, 80000, size=5)
            table = ComplexityTable(tuple(f"C{i}" for i in range(5)),
                                    tuple(str(10 + j) for j in range(7)),
                                    exports, gdp)
            for p, value in prody_all(table).items():
                assert gdp.min() - 1e-9 <= value <= gdp.max() + 1e-9

    def test_requires_gdp(self):
        with pytest.raises(ValueError):
            prody(toy_table(), "P1")


class TestPearson:
    def test_perfect_linear(self):
        x = np.array([1.0, 2.0, 3.0, 4.0])
        assert pearson(x, 2 * x + 1) == pytest.approx(1.0)
        assert pearson(x, -x) == pytest.approx(-1.0)

    def test_pinned_oracle(self):
        # independent covariance-formula oracle value
        assert pearson([1, 2, 3], [1, 3, 2]) == pytest.approx(0.5, abs=1e-12)

    def test_zero_variance(self):
        with pytest.raises(ZeroVariance):
            pearson([1, 1, 1], [1, 2, 3])

    def test_too_few(self):
        with pytest.raises(TooFewPoints):
            pearson([1, 2], [3, 4])

    def test_affine_invariance(self):
        rng = np.random.default_rng(31)
        x = rng.normal(size=30)
        y = 0.4 * x + rng.normal(size=30)
        base = pearson(x, y)
        assert pearson(3.0 * x + 7.0, y) == pytest.approx(base, rel=1e-12)
        assert pearson(x, 0.1 * y - 2.0) == pytest.approx(base, rel=1e-12)


class TestComplexityTable:
    def test_from_records(self):
        records = [
            TradeRecord(2000, "USA", "JPN", "7100", 5.0),
            TradeRecord(2000, "USA", "JPN", "7102", 5.0),
            TradeRecord(2000, "JPN", "USA", "0111", 10.0),
            TradeRecord(1999, "JPN", "USA", "0111", 99.0),
        ]
        table = complexity_table(records, 2000, 2)
        assert table.countries == ("JPN", "USA")
        assert table.products == ("01", "71")
        assert table.exports[table.country_index("USA"),
                             table.product_index("71")] == 10.0

    def test_missing_gdp_rejected(self):
        records = [TradeRecord(2000, "USA", "JPN", "7100", 5.0)]
        with pytest.raises(ValueError, match="missing"):
            complexity_table(records, 2000, 2, gdp={"JPN": 30000.0})

    def test_gdp_must_cover_exporters_only(self):
        records = [TradeRecord(2000, "USA", "JPN", "7100", 5.0)]
        table = complexity_table(records, 2000, 2, gdp={"USA": 30000.0})
        assert table.countries == ("USA",)
