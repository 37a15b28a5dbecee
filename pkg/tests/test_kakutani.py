"""Sequence specs, the l2 classifier, truncated series, numeric verdicts."""

import math

import numpy as np
import pytest

from cauchyprod import (
    Constant,
    Explicit,
    Geometric,
    InputError,
    PowerLaw,
    ProductModel,
    classify,
    kakutani_partial_sum,
    lp_status,
    series_verdict,
    spec_length,
    term,
    weighted_sequence,
)

# oracle: per-term scipy quadrature sum for zeta_n = 1/n (computed pre-build)
ORACLE_S50_POWER1 = 0.0950893225924291
ORACLE_S1000_POWER1 = 0.09626441947198028
ORACLE_K_CONST_02 = 0.0024891297292336688


class TestSequenceSpecs:
    def test_power_law_terms(self):
        s = PowerLaw(2.0, 1.0)
        assert term(s, 1) == 2.0
        assert term(s, 4) == 0.5

    def test_geometric_terms(self):
        s = Geometric(0.5, 0.9)
        assert term(s, 2) == pytest.approx(0.405, abs=1e-15)

    def test_explicit_terms_and_exhaustion(self):
        s = Explicit((3.0, 1.0, 4.0))
        assert term(s, 3) == 4.0
        assert spec_length(s) == 3
        with pytest.raises(IndexError):
            term(s, 4)

    def test_validation(self):
        with pytest.raises(InputError):
            PowerLaw(1.0, 0.0)
        with pytest.raises(InputError):
            PowerLaw(1.0, -1.0)
        with pytest.raises(InputError):
            Geometric(1.0, 1.0)
        with pytest.raises(InputError):
            Geometric(1.0, 0.0)
        with pytest.raises(InputError):
            Explicit(())
        with pytest.raises(InputError):
            Constant(math.inf)
        with pytest.raises(InputError):
            term(PowerLaw(1.0, 1.0), 0)


class TestProductModel:
    def test_scalar_promotion(self):
        m = ProductModel(kind="additive", perturbation=0.5, base_scale=2.0)
        assert m.perturbation == Constant(0.5)
        assert m.base_scale == Constant(2.0)

    def test_scale_positivity(self):
        with pytest.raises(InputError):
            ProductModel(kind="additive", perturbation=Constant(0.1), base_scale=Constant(0.0))
        with pytest.raises(InputError):
            ProductModel(
                kind="additive", perturbation=Constant(0.1), base_scale=PowerLaw(-1.0, 1.0)
            )

    def test_multiplicative_validity(self):
        with pytest.raises(InputError):
            ProductModel(kind="multiplicative", perturbation=Constant(-1.0))
        ProductModel(kind="multiplicative", perturbation=Constant(-0.5))  # sigma = 0.5, fine

    def test_unknown_kind(self):
        with pytest.raises(InputError):
            ProductModel(kind="scale", perturbation=Constant(0.1))

    def test_horizon(self):
        m = ProductModel(kind="additive", perturbation=Explicit((1.0, 2.0)))
        assert m.horizon == 2
        assert ProductModel(kind="additive", perturbation=Constant(0.1)).horizon is None


class TestWeightedSequence:
    def test_additive_constant_scale(self):
        m = ProductModel(
            kind="additive", perturbation=PowerLaw(1.0, 1.0), base_scale=Constant(2.0)
        )
        assert weighted_sequence(m, 3) == pytest.approx(1.0 / 6.0, abs=1e-16)

    def test_multiplicative_geometric(self):
        m = ProductModel(kind="multiplicative", perturbation=Geometric(0.5, 0.9))
        assert weighted_sequence(m, 2) == pytest.approx(0.405, abs=1e-15)

    def test_gamma_weighting_is_the_point(self):
        m = ProductModel(
            kind="additive",
            perturbation=PowerLaw(1.0, 2.0),
            base_scale=PowerLaw(1.0, 1.0),
        )
        assert weighted_sequence(m, 5) == pytest.approx(0.2, abs=1e-16)

    def test_explicit_exhaustion(self):
        m = ProductModel(kind="additive", perturbation=Explicit((0.1,)))
        with pytest.raises(IndexError):
            weighted_sequence(m, 2)


class TestLpStatus:
    def test_power_law_l2_bracket_contains_basel_sum(self):
        st = lp_status(PowerLaw(1.0, 1.0), 2.0)
        assert st.summable
        assert st.lower <= math.pi**2 / 6.0 <= st.upper
        assert st.width <= 1e-6

    def test_constant_divergent(self):
        st = lp_status(Constant(0.1), 2.0)
        assert not st.summable

    def test_geometric_closed_form(self):
        st = lp_status(Geometric(1.0, 0.5), 2.0)
        assert st.summable
        assert st.lower == st.upper == pytest.approx(1.0 / 3.0, rel=1e-15)

    def test_power_law_threshold(self):
        assert not lp_status(PowerLaw(1.0, 0.5), 2.0).summable
        assert lp_status(PowerLaw(1.0, 0.51), 2.0).summable
        assert lp_status(PowerLaw(1.0, 0.5), 3.0).summable  # 3 * 0.5 > 1

    def test_explicit_exact(self):
        st = lp_status(Explicit((3.0, -4.0)), 2.0)
        assert st.lower == st.upper == 25.0

    def test_p_domain(self):
        with pytest.raises(InputError):
            lp_status(Constant(1.0), 0.5)


CLASSIFY_CASES = [
    (PowerLaw(1.0, 0.4), "Singular"),
    (PowerLaw(1.0, 0.5), "Singular"),
    (PowerLaw(1.0, 0.51), "Equivalent"),
    (PowerLaw(1.0, 0.75), "Equivalent"),
    (PowerLaw(1.0, 1.0), "Equivalent"),
    (PowerLaw(1.0, 2.0), "Equivalent"),
    (Constant(0.1), "Singular"),
    (Geometric(1.0, 0.9), "Equivalent"),
]


class TestClassify:
    @pytest.mark.parametrize("spec,expected", CLASSIFY_CASES)
    @pytest.mark.parametrize("kind", ["additive", "multiplicative"])
    def test_parametric_suite(self, kind, spec, expected):
        res = classify(ProductModel(kind=kind, perturbation=spec))
        assert res.verdict == expected
        assert res.method == "SymbolicL2"

    def test_spec_paper_examples(self):
        eq = classify(ProductModel(kind="additive", perturbation=PowerLaw(1.0, 0.75)))
        assert eq.verdict == "Equivalent"
        si = classify(ProductModel(kind="additive", perturbation=PowerLaw(1.0, 0.5)))
        assert si.verdict == "Singular"
        co = classify(ProductModel(kind="additive", perturbation=Constant(0.1)))
        assert co.verdict == "Singular"
        assert "zero" in co.evidence["note"]

    def test_explicit_degenerate_equivalent(self):
        res = classify(ProductModel(kind="additive", perturbation=Explicit((5.0, 5.0))))
        assert res.verdict == "Equivalent"
        assert "finite" in res.evidence["note"]

    def test_gamma_weighting_flips_verdict(self):
        # h_n = n^-1 alone is square-summable, but weighting by gamma_n = n^-1
        # leaves a constant sequence
        flat = ProductModel(
            kind="additive", perturbation=PowerLaw(1.0, 1.0), base_scale=PowerLaw(1.0, 1.0)
        )
        assert classify(flat).verdict == "Singular"
        tilted = ProductModel(
            kind="additive", perturbation=PowerLaw(1.0, 2.0), base_scale=PowerLaw(1.0, 1.0)
        )
        assert classify(tilted).verdict == "Equivalent"

    def test_geometric_against_power_scale(self):
        m = ProductModel(
            kind="additive", perturbation=Geometric(1.0, 0.5), base_scale=PowerLaw(1.0, 3.0)
        )
        assert classify(m).verdict == "Equivalent"

    def test_power_against_geometric_scale_blows_up(self):
        m = ProductModel(
            kind="additive", perturbation=PowerLaw(0.001, 3.0), base_scale=Geometric(1.0, 0.5)
        )
        assert classify(m).verdict == "Singular"
        assert "does not converge to zero" in classify(m).evidence["note"]

    @pytest.mark.parametrize("factor", [2.0, 4.0, 0.25, 2.0**20])
    def test_gamma_rescale_invariance_exact(self, factor):
        # rescaling h and gamma by the same power of two changes no bit of
        # any weighted term and no verdict
        base = ProductModel(
            kind="additive", perturbation=PowerLaw(3.0, 1.25), base_scale=Constant(0.5)
        )
        scaled = ProductModel(
            kind="additive",
            perturbation=PowerLaw(3.0 * factor, 1.25),
            base_scale=Constant(0.5 * factor),
        )
        assert classify(base).verdict == classify(scaled).verdict
        for n in (1, 2, 3, 10, 100, 12345):
            assert weighted_sequence(base, n) == weighted_sequence(scaled, n)

    def test_gamma_rescale_verdict_invariance_general(self):
        for a, p, expected in ((1.0, 0.75, "Equivalent"), (1.0, 0.5, "Singular")):
            for c in (3.0, 7.0, 0.1):
                m = ProductModel(
                    kind="additive",
                    perturbation=PowerLaw(a * c, p),
                    base_scale=Constant(c),
                )
                assert classify(m).verdict == expected


class TestPartialSum:
    def test_identity_sum_is_zero(self):
        part = kakutani_partial_sum(
            ProductModel(kind="additive", perturbation=Constant(0.0)), 25
        )
        assert part.total == 0.0
        assert (part.tail_low, part.tail_high) == (0.0, 0.0)

    def test_constant_sequence_doubling_exact(self):
        model = ProductModel(kind="additive", perturbation=Constant(0.2))
        s1 = kakutani_partial_sum(model, 300).total
        s2 = kakutani_partial_sum(model, 600).total
        assert s2 - s1 == s1  # N * K arithmetic: S_2N - S_N = S_N exactly

    def test_constant_sequence_matches_oracle_slope(self):
        model = ProductModel(kind="additive", perturbation=Constant(0.2))
        part = kakutani_partial_sum(model, 100)
        assert part.total == pytest.approx(100 * ORACLE_K_CONST_02, rel=1e-9)

    def test_power_law_against_per_term_oracle(self):
        model = ProductModel(kind="additive", perturbation=PowerLaw(1.0, 1.0))
        assert kakutani_partial_sum(model, 50).total == pytest.approx(
            ORACLE_S50_POWER1, abs=1e-9
        )

    def test_power_law_long_sum_against_oracle(self):
        model = ProductModel(kind="additive", perturbation=PowerLaw(1.0, 1.0))
        part = kakutani_partial_sum(model, 1000)
        assert part.total == pytest.approx(ORACLE_S1000_POWER1, abs=1e-8)
        assert 1e-5 < part.tail_low <= part.tail_high < 1e-4

    def test_tail_bracket_covers_true_tail(self):
        model = ProductModel(kind="additive", perturbation=PowerLaw(1.0, 1.0))
        part = kakutani_partial_sum(model, 50)
        assert 0.0 < part.tail_low <= part.tail_high < math.inf
        # S_1000 - S_50 is most of the true tail beyond 50 (remainder ~6e-5)
        true_tail_lower = ORACLE_S1000_POWER1 - ORACLE_S50_POWER1
        assert part.tail_low < true_tail_lower + 7e-5 < part.tail_high

    def test_tail_divergent_model(self):
        model = ProductModel(kind="additive", perturbation=PowerLaw(1.0, 0.5))
        part = kakutani_partial_sum(model, 30)
        assert part.tail_high == math.inf

    def test_tail_uncertified_when_terms_large(self):
        model = ProductModel(kind="additive", perturbation=Constant(0.0))  # placeholder
        model = ProductModel(kind="additive", perturbation=PowerLaw(3.0, 1.0))
        part = kakutani_partial_sum(model, 10)  # w_11 = 3/11 > 0.1
        assert part.tail_low == 0.0 and part.tail_high == math.inf
        assert "not certified" in part.tail_note

    def test_monotone_cumulative(self):
        for spec in (PowerLaw(1.0, 0.5), PowerLaw(1.0, 1.0), Constant(0.2), Geometric(1.0, 0.9)):
            for kind in ("additive", "multiplicative"):
                part = kakutani_partial_sum(ProductModel(kind=kind, perturbation=spec), 60)
                assert np.all(np.diff(part.cumulative) >= 0.0)

    def test_explicit_horizon_enforced(self):
        model = ProductModel(kind="additive", perturbation=Explicit((0.1, 0.2)))
        with pytest.raises(IndexError):
            kakutani_partial_sum(model, 3)

    def test_n_domain(self):
        with pytest.raises(InputError):
            kakutani_partial_sum(ProductModel(kind="additive", perturbation=Constant(0.1)), 0)


class TestSeriesVerdict:
    def test_power_one_equivalent(self):
        model = ProductModel(kind="additive", perturbation=PowerLaw(1.0, 1.0))
        res = series_verdict(model, 600, 100)
        assert res.verdict == "Equivalent"
        assert res.method == "NumericTruncation"

    def test_constant_singular(self):
        model = ProductModel(kind="additive", perturbation=Constant(0.2))
        res = series_verdict(model, 400, 100)
        assert res.verdict == "Singular"

    def test_critical_power_singular(self):
        model = ProductModel(kind="additive", perturbation=PowerLaw(1.0, 0.5))
        res = series_verdict(model, 600, 100)
        assert res.verdict == "Singular"

    def test_evidence_carries_truncation_parameters(self):
        model = ProductModel(kind="additive", perturbation=Constant(0.2))
        res = series_verdict(model, 200, 50)
        assert res.evidence["N"] == 200
        assert res.evidence["growth_window"] == 50
        assert "S_N" in res.evidence

    def test_agreement_with_symbolic_classifier(self):
        # numeric verdicts must never contradict the exact classifier
        for kind in ("additive", "multiplicative"):
            for spec, expected in CLASSIFY_CASES:
                numeric = series_verdict(ProductModel(kind=kind, perturbation=spec), 600, 100)
                if numeric.verdict != "Undetermined":
                    assert numeric.verdict == expected, (kind, spec)

    def test_domain(self):
        model = ProductModel(kind="additive", perturbation=Constant(0.1))
        with pytest.raises(InputError):
            series_verdict(model, 10, 20)
