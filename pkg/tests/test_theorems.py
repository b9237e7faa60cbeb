import random
from fractions import Fraction
from math import comb

import pytest

from horadam.catalog import SamplerConfig
from horadam.errors import GuardViolation, SingularSummand
from horadam.sequences import PRESETS, HoradamParams, SequenceKind, TermContext
from horadam.theorems import (
    VARIANT_COUNT,
    SumReport,
    TheoremSelector,
    reciprocal_sum,
    singularity_scan,
    theorem_sum,
)

FIB = PRESETS["fibonacci"]
FIBW = HoradamParams(3, 2, 1, -1)
PELL = PRESETS["pell"]

U, V, W = SequenceKind.U, SequenceKind.V, SequenceKind.W


def run(sel, params, n, m, r, s, k):
    fn = reciprocal_sum if sel.theorem in (5, 6) else theorem_sum
    return fn(sel, params, n, m, r, s, k)


def guard_passing_draws(rng, sampler, sel, count, kmax=5, span=6):
    got = 0
    attempts = 0
    while got < count:
        attempts += 1
        assert attempts < 300 * count, "rejection sampling stalled"
        params = sampler.draw_params(rng)
        n, m, r, s = (rng.randint(-span, span) for _ in range(4))
        k = rng.randint(0, kmax)
        try:
            yield params, (n, m, r, s, k), run(sel, params, n, m, r, s, k)
        except (GuardViolation, SingularSummand):
            continue
        got += 1


class TestContractExamples:
    def test_theorem2_k0_collapses(self):
        rep = theorem_sum(TheoremSelector(2, 1), FIBW, 5, 2, 1, 0, 0)
        ctx = TermContext(FIBW)
        assert rep.lhs == rep.rhs == ctx.w(5)
        assert rep.notes  # outside the stated positive-k hypothesis

    def test_theorem2_v1_fibonacci_w(self):
        rep = theorem_sum(TheoremSelector(2, 1), FIBW, 4, 2, 1, 0, 2)
        assert rep.equal

    def test_theorem3_v1_fibonacci_w(self):
        rep = theorem_sum(TheoremSelector(3, 1), FIBW, 6, 1, 2, 0, 3)
        assert rep.equal

    def test_theorem4_v3_pell_u(self):
        rep = theorem_sum(TheoremSelector(4, 3, U), PELL, 5, 3, 2, 1, 2)
        assert rep.equal

    def test_theorem5_v1_fibonacci(self):
        rep = reciprocal_sum(TheoremSelector(5, 1), FIB, 9, 2, 1, 0, 1)
        assert rep.equal

    def test_theorem5_k0_single_term(self):
        rep = reciprocal_sum(TheoremSelector(5, 1), FIBW, 7, 2, 1, 0, 0)
        assert rep.equal

    def test_guard_violation_when_h_vanishes(self):
        with pytest.raises(GuardViolation):
            theorem_sum(TheoremSelector(2, 1), FIBW, 4, 2, 1, 1, 2)

    def test_guard_violation_when_f_vanishes(self):
        # m = r zeroes u(m-r); m = s zeroes u(m-s)
        with pytest.raises(GuardViolation):
            theorem_sum(TheoremSelector(2, 1), FIBW, 4, 2, 2, 0, 2)
        with pytest.raises(GuardViolation):
            theorem_sum(TheoremSelector(4, 1), FIBW, 4, 0, 2, 0, 2)

    def test_singular_summand(self):
        with pytest.raises(SingularSummand):
            reciprocal_sum(TheoremSelector(5, 1), FIB, 2, 2, 1, 0, 2)

    def test_selector_validation(self):
        with pytest.raises(ValueError):
            TheoremSelector(7, 1)
        with pytest.raises(ValueError):
            TheoremSelector(3, 3)
        with pytest.raises(ValueError):
            theorem_sum(TheoremSelector(5, 1), FIB, 1, 2, 3, 0, 1)
        with pytest.raises(ValueError):
            reciprocal_sum(TheoremSelector(2, 1), FIB, 1, 2, 3, 0, 1)
        with pytest.raises(ValueError):
            theorem_sum(TheoremSelector(2, 1), FIB, 1, 2, 3, 0, -1)


class TestDisplayedFormOracles:
    """Library values vs verbatim transcriptions of the displayed equations,
    re-implemented here against the plain term evaluator."""

    def _ctx(self, params, kind):
        return TermContext(params.specialized(kind))

    def test_theorem2_variant4_verbatim(self):
        rng = random.Random(83)
        sampler = SamplerConfig(max_index=6, bound=9)
        sel = TheoremSelector(2, 4)
        for params, (n, m, r, s, k), rep in guard_passing_draws(rng, sampler, sel, 15):
            t = self._ctx(params, W)
            lhs = sum((-1) ** j * t.qp((r - s) * (k - j)) * comb(k, j)
                      * t.u(m + r) ** j * t.u(m + s) ** (k - j)
                      * t.w(n - (m + r) * k + (r - s) * j) for j in range(k + 1))
            rhs = (-1) ** k * t.u(r - s) ** k * t.w(n)
            assert rep.lhs == lhs and rep.rhs == rhs and rep.equal

    def test_theorem2_variant6_verbatim(self):
        rng = random.Random(89)
        sampler = SamplerConfig(max_index=6, bound=9)
        sel = TheoremSelector(2, 6)
        for params, (n, m, r, s, k), rep in guard_passing_draws(rng, sampler, sel, 15):
            t = self._ctx(params, W)
            lhs = sum((-1) ** j * comb(k, j) * t.u(r - s) ** j * t.u(m + r) ** (k - j)
                      * t.w(n + (r - s) * k + (m + s) * j) for j in range(k + 1))
            rhs = t.qp((r - s) * k) * t.u(m + s) ** k * t.w(n)
            assert rep.lhs == lhs and rep.rhs == rhs and rep.equal

    def test_theorem4_variant5_verbatim(self):
        rng = random.Random(97)
        sampler = SamplerConfig(max_index=6, bound=9)
        sel = TheoremSelector(4, 5)
        for params, (n, m, r, s, k), rep in guard_passing_draws(rng, sampler, sel, 15):
            t = self._ctx(params, W)
            lhs = (-1) ** k * t.u(m + r) * sum(
                (-1) ** j * t.qp((r - s) * (k - j)) * t.u(m + s) ** (k - j)
                * t.u(r - s) ** j * t.w(n - (m + r) * k - (m + s) + (m + r) * j)
                for j in range(k + 1))
            rhs = (t.u(r - s) ** (k + 1) * t.w(n)
                   - (-1) ** (k + 1) * t.qp((r - s) * (k + 1))
                   * t.u(m + s) ** (k + 1) * t.w(n - (m + r) * (k + 1)))
            assert rep.lhs == lhs and rep.rhs == rhs and rep.equal

    def test_theorem3_variant2_verbatim(self):
        rng = random.Random(101)
        sampler = SamplerConfig(max_index=6, bound=9)
        sel = TheoremSelector(3, 2)
        for params, (n, m, r, s, k), rep in guard_passing_draws(rng, sampler, sel, 15):
            t = self._ctx(params, W)
            lhs = t.u(r - s) * sum(
                t.qp((s - r) * j) * t.w(m - r) ** (k - j) * t.w(m - s) ** j
                * t.w(n - (r - s) * k + m - r + (r - s) * j) for j in range(k + 1))
            rhs = (t.qp((s - r) * k) * t.u(n) * t.w(m - s) ** (k + 1)
                   - t.qp(r - s) * t.u(n - (r - s) * (k + 1)) * t.w(m - r) ** (k + 1))
            assert rep.lhs == lhs and rep.rhs == rhs and rep.equal

    def test_theorem6_variant4_verbatim(self):
        rng = random.Random(103)
        sampler = SamplerConfig(max_index=5, bound=9)
        sel = TheoremSelector(6, 4)
        for params, (n, m, r, s, k), rep in guard_passing_draws(
                rng, sampler, sel, 10, kmax=3, span=5):
            t = self._ctx(params, W)
            c = m + s
            lhs = -t.qp(r - s) * t.u(m + s) * t.w(n) * t.w(n - c * (k + 1)) * sum(
                t.u(r - s) ** (k - j) * t.u(m + r) ** j
                * t.w(n - m - r - c * k + c * j)
                / (t.w(n - c * k + c * j) * t.w(n - c - c * k + c * j))
                for j in range(k + 1))
            rhs = (t.u(r - s) ** (k + 1) * t.w(n)
                   - t.u(m + r) ** (k + 1) * t.w(n - c * (k + 1)))
            assert rep.lhs == lhs and rep.rhs == rhs and rep.equal


class TestTransformationConsistency:
    def test_variants_4_to_6_are_swapped_1_to_3(self):
        # the swap r -> -s, s -> -r carries each early variant to its twin
        rng = random.Random(107)
        sampler = SamplerConfig(max_index=6, bound=9)
        for theorem in (2, 4):
            for early, late in ((1, 4), (2, 5), (3, 6)):
                sel_late = TheoremSelector(theorem, late)
                for params, (n, m, r, s, k), rep in guard_passing_draws(
                        rng, sampler, sel_late, 8):
                    swapped = theorem_sum(TheoremSelector(theorem, early),
                                          params, n, m, -s, -r, k)
                    assert (rep.lhs, rep.rhs) == (swapped.lhs, swapped.rhs)

    def test_theorem3_swap(self):
        rng = random.Random(109)
        sampler = SamplerConfig(max_index=6, bound=9)
        sel = TheoremSelector(3, 2)
        for params, (n, m, r, s, k), rep in guard_passing_draws(rng, sampler, sel, 10):
            swapped = theorem_sum(TheoremSelector(3, 1), params, n, m, -s, -r, k)
            assert (rep.lhs, rep.rhs) == (swapped.lhs, swapped.rhs)


class TestSpecializationConsistency:
    @pytest.mark.parametrize("kind,seeds", [(U, (0, 1)), (V, None)])
    def test_uv_forms_equal_w_form_at_seed_params(self, kind, seeds):
        rng = random.Random(113)
        sampler = SamplerConfig(max_index=5, bound=9)
        for theorem, nvar in VARIANT_COUNT.items():
            for variant in (1, nvar):
                sel = TheoremSelector(theorem, variant, kind)
                for params, asg, rep in guard_passing_draws(
                        rng, sampler, sel, 5, kmax=3, span=5):
                    spec_params = params.specialized(kind)
                    w_rep = run(TheoremSelector(theorem, variant, W),
                                spec_params, *asg)
                    assert (rep.lhs, rep.rhs, rep.lemma_lhs) == (
                        w_rep.lhs, w_rep.rhs, w_rep.lemma_lhs)


class TestTripleAgreement:
    def test_randomized_sweep(self):
        rng = random.Random(127)
        sampler = SamplerConfig(max_index=6, bound=9)
        for theorem, nvar in VARIANT_COUNT.items():
            for variant in range(1, nvar + 1):
                for kind in SequenceKind:
                    sel = TheoremSelector(theorem, variant, kind)
                    for _, _, rep in guard_passing_draws(
                            rng, sampler, sel, 10, kmax=4):
                        assert rep.equal
                        assert isinstance(rep, SumReport)


class TestReciprocalCrossChecks:
    def test_theorem5_scaled_through_matches_theorem3(self):
        # clearing the reciprocal denominators relates theorem 5 to theorem 3
        # by the factor q^((r-s)k)
        rng = random.Random(131)
        sampler = SamplerConfig(max_index=5, bound=9)
        sel = TheoremSelector(5, 1)
        for params, (n, m, r, s, k), rep in guard_passing_draws(
                rng, sampler, sel, 10, kmax=3, span=5):
            t = TermContext(params)
            base = theorem_sum(TheoremSelector(3, 1), params, n, m, r, s, k)
            scale = t.qp((r - s) * k)
            assert rep.lhs == scale * base.lhs
            assert rep.rhs == scale * base.rhs

    def test_theorem6_scaled_through_matches_theorem4(self):
        rng = random.Random(137)
        sampler = SamplerConfig(max_index=5, bound=9)
        for variant, scale_pow in ((1, 0), (2, 0), (3, 1)):
            sel = TheoremSelector(6, variant)
            for params, (n, m, r, s, k), rep in guard_passing_draws(
                    rng, sampler, sel, 8, kmax=3, span=5):
                t = TermContext(params)
                base = theorem_sum(TheoremSelector(4, variant), params, n, m, r, s, k)
                scale = t.qp((r - s) * k) if scale_pow else 1
                assert rep.lhs == scale * base.lhs
                assert rep.rhs == scale * base.rhs


class TestSingularityScan:
    def test_non_reciprocal_theorems_scan_empty(self):
        for theorem in (2, 3, 4):
            sel = TheoremSelector(theorem, 1)
            assert singularity_scan(sel, FIBW, 4, 2, 1, 0, 3) == []

    def test_flags_zero_denominator(self):
        entries = singularity_scan(TheoremSelector(5, 1), FIB, 2, 2, 1, 0, 2)
        flagged = [(j, idx) for j, idx, z in entries if z]
        assert flagged == [(0, 0)]  # u(0) = 0 sits in the window

    def test_counting_contract(self):
        # one entry per distinct denominator index: k + 2 of them
        for k in range(0, 6):
            entries = singularity_scan(TheoremSelector(5, 1), FIBW, 9, 2, 1, 0, k)
            assert len(entries) == k + 2
            indices = [idx for _, idx, _ in entries]
            assert len(set(indices)) == len(indices)

    def test_safe_window_has_no_flags(self):
        entries = singularity_scan(TheoremSelector(6, 3), FIBW, 6, 2, 1, 0, 2)
        assert entries and not any(z for _, _, z in entries)

    def test_reciprocal_sum_raises_exactly_when_scan_flags(self):
        rng = random.Random(139)
        sampler = SamplerConfig(max_index=5, bound=9)
        checked = 0
        while checked < 60:
            params = sampler.draw_params(rng)
            n, m, r, s = (rng.randint(-5, 5) for _ in range(4))
            k = rng.randint(0, 3)
            sel = TheoremSelector(5, 1)
            try:
                scan = singularity_scan(sel, params, n, m, r, s, k)
            except ValueError:
                continue
            try:
                reciprocal_sum(sel, params, n, m, r, s, k)
                raised = False
            except SingularSummand:
                raised = True
            except GuardViolation:
                continue
            checked += 1
            assert raised == any(z for _, _, z in scan)
