import json
from fractions import Fraction

import pytest

from seqeffect.algebra import one, zero
from seqeffect.harness import (
    CHECKS,
    EA_SUITE,
    FULL_SUITE,
    LEMMA_SUITE,
    ORDER_SUITE,
    SEA_SUITE,
    UnknownAxiomError,
    WindowTooLargeError,
    check_axiom,
    check_lemma1,
    default_suite,
    enumerate_window,
    replay,
    run_suite,
)
from seqeffect.instances import FuzzyInstance, instance_e0, instance_fuzzy, instance_mutant
from seqeffect.poly import AlgebraConfig
from seqeffect.window import SampleWindow

N2, N3 = AlgebraConfig(2), AlgebraConfig(3)
SMALL = SampleWindow(1, 1)


class SkewFuzzy(FuzzyInstance):
    """Unit interval with a non-commutative, non-distributive product."""

    def seq(self, a, b):
        return a * b * b


class TestWindow:
    def test_golden_count(self):
        assert len(list(enumerate_window(instance_e0(N2), SMALL))) == 22

    def test_minimal_window(self):
        assert list(enumerate_window(instance_e0(N3), SampleWindow(0, 0))) == [zero(N3), one(N3)]

    def test_cap(self):
        with pytest.raises(WindowTooLargeError):
            enumerate_window(instance_e0(N3), SampleWindow(3, 3), cap=100)
        with pytest.raises(WindowTooLargeError):
            run_suite(instance_e0(N3), ["EA2"], SampleWindow(3, 3), cap=100)

    def test_sampled_ignores_cap(self):
        w = SampleWindow(50, 50, "sampled", 200)
        assert check_axiom(instance_e0(N3), "SEA1", w, cap=10).passed


class TestSuites:
    def test_ids_are_registered(self):
        assert set(FULL_SUITE) == set(CHECKS)
        assert CHECKS["EA3"].note

    def test_default_suites(self):
        assert default_suite(instance_e0(N2)) == FULL_SUITE
        assert not set(LEMMA_SUITE) & set(default_suite(instance_fuzzy()))

    def test_unknown_axiom(self):
        with pytest.raises(UnknownAxiomError):
            run_suite(instance_e0(N2), ["EA9"], SMALL)

    def test_lemma_needs_e0(self):
        with pytest.raises(UnknownAxiomError):
            run_suite(instance_fuzzy(), ["LEM1-1"], SMALL)

    def test_exhaustive_trial_counts(self):
        rep = run_suite(instance_e0(N2), ["EA1", "EA2", "EA3", "EA4"], SMALL)
        assert [r.trials for r in rep.reports] == [22**2, 22**3, 22, 22]
        assert rep.passed

    def test_e0_full_suite_n2(self):
        rep = run_suite(instance_e0(N2), None, SMALL)
        assert rep.passed, rep.to_text()

    def test_fuzzy_full_suite(self):
        rep = run_suite(instance_fuzzy(), None, SMALL)
        assert rep.passed, rep.to_text()

    def test_lemma1_returns_reports(self):
        reports = check_lemma1(N3, SampleWindow(1, 0))
        assert [r.axiom for r in reports] == list(LEMMA_SUITE)
        assert all(r.passed for r in reports)


class TestSensitivity:
    def test_skewed_product_is_caught(self):
        rep = run_suite(SkewFuzzy(), SEA_SUITE, SMALL)
        assert not rep.passed
        failing = {r.axiom for r in rep.reports if not r.passed}
        assert "SEA1" in failing

    @pytest.mark.parametrize("tag", ["drop-G-term", "swap-F-args-one-side", "off-by-one-m"])
    def test_mutants_fail(self, tag):
        rep = run_suite(instance_mutant(instance_e0(N2), tag), EA_SUITE + SEA_SUITE, SMALL)
        assert not rep.passed

    def test_witness_cap(self):
        rep = run_suite(instance_mutant(instance_e0(N2), "off-by-one-m"), ["EA2"], SMALL)
        r = rep.reports[0]
        assert r.violation_count > 5 and len(r.witnesses) == 5


class TestReplay:
    @pytest.mark.parametrize("tag", ["drop-G-term", "swap-F-args-one-side", "off-by-one-m"])
    def test_witnesses_refail(self, tag):
        mut = instance_mutant(instance_e0(N2), tag)
        rep = run_suite(mut, EA_SUITE + SEA_SUITE, SMALL)
        replayed = 0
        for r in rep.reports:
            for w in r.witnesses:
                assert replay(mut, r.axiom, w) is not None
                # the same tuple is fine in the unmutated algebra
                assert replay(instance_e0(N2), r.axiom, w) is None
                replayed += 1
        assert replayed

    def test_replay_fuzzy(self):
        assert replay(SkewFuzzy(), "SEA2", ["1/2"]) == "1 ∘ a != a"
        assert replay(SkewFuzzy(), "SEA3", ["0", "1/2"]) is None
        assert replay(SkewFuzzy(), "SEA1", ["1/2", "1/4", "1/4"]) is not None
        assert SkewFuzzy().seq(Fraction(1, 2), Fraction(1, 2)) == Fraction(1, 8)


class TestDeterminism:
    def test_same_seed_same_report(self):
        w = SampleWindow(2, 2, "sampled", 25_000, seed=7)
        inst = instance_e0(N3)
        a = run_suite(inst, ["EA2", "SEA4", "LE-oracle"], w).to_json()
        b = run_suite(inst, ["EA2", "SEA4", "LE-oracle"], w, jobs=2).to_json()
        assert a == b

    def test_mutant_reports_independent_of_jobs(self):
        w = SampleWindow(1, 1, "sampled", 12_000, seed=3)
        mut = instance_mutant(instance_e0(N3), "off-by-one-m")
        a = run_suite(mut, ["EA2", "EA3"], w).to_json()
        assert a == run_suite(mut, ["EA2", "EA3"], w, jobs=3).to_json()
        assert json.loads(a)["verdict"] == "fail"

    def test_seed_changes_sample(self):
        mut = instance_mutant(instance_e0(N3), "off-by-one-m")
        reps = [
            run_suite(mut, ["EA3"], SampleWindow(1, 1, "sampled", 500, seed=s)).reports[0]
            for s in (1, 2)
        ]
        assert reps[0].witnesses != reps[1].witnesses


class TestReportShape:
    def test_json(self):
        rep = run_suite(instance_e0(N2), ["EA1", "ORD-refl"], SMALL)
        d = json.loads(rep.to_json())
        assert d["n"] == 2 and d["verdict"] == "pass"
        assert d["window"] == {"W": 1, "M": 1, "mode": "exhaustive"}
        assert [r["axiom"] for r in d["reports"]] == ["EA1", "ORD-refl"]
        assert set(d["reports"][0]) >= {"trials", "violations", "witnesses", "verdict"}

    def test_text(self):
        rep = run_suite(instance_e0(N2), ORDER_SUITE, SMALL)
        text = rep.to_text()
        assert text.rstrip().endswith("overall: PASS")
        assert all(a in text for a in ORDER_SUITE)
