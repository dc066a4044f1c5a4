import math

import numpy as np
import pytest
from pydantic import ValidationError

from pir_analytics.analysis import build_context
from pir_analytics.core import (
    compute_pir,
    compute_pir_pond,
    compute_pir_rees,
    mean_point_weight,
    mean_variable_weights,
    minmax_rescale,
    rescale_index,
    rescale_rees_to_unit,
    rescale_series,
    rescale_with_flag,
)
from pir_analytics.errors import IncompleteContextError, InvalidValueError, InvertedBoundsError, NoDataError
from pir_analytics.models import Scope, Target, Variable, WeightProfile


class TestMinMax:
    def test_series_with_high_outlier(self):
        values = rescale_series([15, 5, 4, 3])
        assert values == pytest.approx([1.0, 0.1667, 0.0833, 0.0], abs=1e-4)
        assert np.mean(values) == pytest.approx(0.3125)

    def test_series_with_low_outlier(self):
        values = rescale_series([15, 14, 13, 3])
        assert values == pytest.approx([1.0, 0.9167, 0.8333, 0.0], abs=1e-4)
        assert np.mean(values) == pytest.approx(0.687, abs=0.005)

    def test_clamps_to_bounds(self):
        assert minmax_rescale(15, 3, 5) == 1.0
        assert minmax_rescale(3, 13, 15) == 0.0

    def test_endpoints_are_exact(self):
        assert minmax_rescale(3, 3, 15) == 0.0
        assert minmax_rescale(15, 3, 15) == 1.0

    def test_degenerate_range(self):
        assert minmax_rescale(7, 7, 7) == 0.5
        assert rescale_with_flag(7, 7, 7) == (0.5, True)
        assert rescale_with_flag(7, 7, 7, degenerate_value=0.0) == (0.0, True)
        assert rescale_with_flag(4, 3, 5) == (0.5, False)

    def test_inverted_bounds(self):
        with pytest.raises(InvertedBoundsError, match="inverted bounds"):
            minmax_rescale(1, 5, 3)

    @pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
    def test_non_finite_input(self, bad):
        with pytest.raises(InvalidValueError, match="invalid value"):
            minmax_rescale(bad, 0, 1)
        with pytest.raises(InvalidValueError):
            minmax_rescale(0.5, 0, bad)

    def test_empty_series(self):
        with pytest.raises(NoDataError):
            rescale_series([])


class TestPIR:
    def test_positive_minus_negative(self, make_line):
        s = make_line(points=10, rebounds=5, assists=3, steals=1, blocks_made=1, fouls_drawn=2,
                      fg_missed=4, ft_missed=1, turnovers=2, blocks_received=1, fouls_committed=3)
        assert compute_pir(s) == pytest.approx(22 - 11)

    def test_all_zero(self, make_line):
        assert compute_pir(make_line()) == 0.0

    def test_rescale_index_joint(self, best_and_worst):
        best, worst = best_and_worst
        ctx = build_context([best, worst], Scope.JOINT, Target.WHOLE_INDEX)
        assert rescale_index([compute_pir(best), compute_pir(worst)], ctx) == [1.0, 0.0]

    def test_rescale_index_needs_pir_bounds(self, best_and_worst):
        ctx = build_context(list(best_and_worst), Scope.JOINT, Target.PER_VARIABLE)
        with pytest.raises(IncompleteContextError, match="incomplete context"):
            rescale_index([1.0], ctx)

    def test_rescale_index_empty(self, best_and_worst):
        ctx = build_context(list(best_and_worst), Scope.JOINT, Target.WHOLE_INDEX)
        with pytest.raises(NoDataError):
            rescale_index([], ctx)


class TestREES:
    def test_extremes_hit_reduced_bounds(self, best_and_worst):
        best, worst = best_and_worst
        ctx = build_context([best, worst], Scope.JOINT, Target.PER_VARIABLE)
        assert ctx.zeroed_keys == {"fouls_drawn", "blocks_received"}

        top = compute_pir_rees(best, ctx)
        bottom = compute_pir_rees(worst, ctx)
        assert top.value == pytest.approx(5.0)
        assert bottom.value == pytest.approx(-4.0)
        assert top.bounds == (-4.0, 5.0)
        assert not top.degenerate

    def test_zeroed_variables_can_keep_their_weight(self, best_and_worst):
        best, _ = best_and_worst
        ctx = build_context(list(best_and_worst), Scope.JOINT, Target.PER_VARIABLE)
        result = compute_pir_rees(best, ctx, zero_constant=False)
        # Both constant variables rescale to 0.5 and cancel
        assert result.value == pytest.approx(5.0)
        assert result.bounds == (-5.0, 6.0)
        assert result.degenerate

    def test_weights(self, best_and_worst):
        best, worst = best_and_worst
        ctx = build_context([best, worst], Scope.JOINT, Target.PER_VARIABLE)
        w = WeightProfile(a=(2, 1, 1, 1, 1, 1, 1, 1, 3, 1, 1))
        assert compute_pir_rees(best, ctx, w).value == pytest.approx(6.0)
        assert compute_pir_rees(worst, ctx, w).value == pytest.approx(-6.0)

    def test_zeroed_variable_weights_have_no_effect(self, best_and_worst):
        ctx = build_context(list(best_and_worst), Scope.JOINT, Target.PER_VARIABLE)
        heavy = WeightProfile(a=(1, 1, 1, 1, 1, 5, 1, 1, 1, 7, 1))
        for s in best_and_worst:
            assert compute_pir_rees(s, ctx, heavy).value == pytest.approx(compute_pir_rees(s, ctx).value)
        assert compute_pir_rees(best_and_worst[0], ctx, heavy).bounds == (-4.0, 5.0)

    def test_points_weigh_one_and_a_half_rebounds(self, best_and_worst, make_line):
        ctx = build_context(list(best_and_worst), Scope.JOINT, Target.PER_VARIABLE)
        # Halfway through both the points and the rebounds range
        mid = make_line(season="2002-03", points=20, rebounds=6)
        rest = (1,) * 9
        full = compute_pir_rees(mid, ctx, WeightProfile(a=(3, 2) + rest)).value
        points = full - compute_pir_rees(mid, ctx, WeightProfile(a=(0, 2) + rest)).value
        rebounds = full - compute_pir_rees(mid, ctx, WeightProfile(a=(3, 0) + rest)).value
        assert points == pytest.approx(1.5)
        assert rebounds == pytest.approx(1.0)
        assert points / rebounds == pytest.approx(1.5)

    def test_incomplete_context(self, best_and_worst):
        best, _ = best_and_worst
        ctx = build_context(list(best_and_worst), Scope.JOINT, Target.WHOLE_INDEX)
        with pytest.raises(IncompleteContextError):
            compute_pir_rees(best, ctx)

    def test_rescale_to_unit(self):
        unit = WeightProfile.unit()
        assert rescale_rees_to_unit(6.0, unit) == 1.0
        assert rescale_rees_to_unit(-5.0, unit) == 0.0
        assert rescale_rees_to_unit(0.5, unit) == pytest.approx(0.5)


class TestPOND:
    def test_extremes(self, best_and_worst):
        best, worst = best_and_worst
        ctx = build_context([best, worst], Scope.JOINT, Target.PER_VARIABLE)
        # All positives rescale to 1 and all negatives to 0 for the best record
        assert compute_pir_pond(best, ctx).value == pytest.approx(30 + 10 + 10 + 3 + 2)
        assert compute_pir_pond(worst, ctx).value == pytest.approx(-(12 + 4 + 4 + 5))

    def test_point_weights(self, best_and_worst):
        best, worst = best_and_worst
        ctx = build_context([best, worst], Scope.JOINT, Target.PER_VARIABLE)
        assert mean_point_weight([best, worst], ctx) == pytest.approx(0.5)
        assert mean_point_weight([best, worst], ctx, excluded={worst.key}) == 1.0

    def test_variable_weights(self, best_and_worst):
        ctx = build_context(list(best_and_worst), Scope.JOINT, Target.PER_VARIABLE)
        means = mean_variable_weights(list(best_and_worst), ctx)
        assert means[Variable.REBOUNDS] == pytest.approx(0.5)
        assert means[Variable.FOULS_DRAWN] == 0.5

    def test_all_excluded(self, best_and_worst):
        best, worst = best_and_worst
        ctx = build_context([best, worst], Scope.JOINT, Target.PER_VARIABLE)
        with pytest.raises(NoDataError):
            mean_point_weight([best], ctx, excluded={best.key})


class TestWeightProfile:
    def test_unit_bounds(self):
        w = WeightProfile.unit()
        assert (w.a_min, w.a_max) == (-5.0, 6.0)
        assert w.weight(Variable.POINTS) == 1.0

    def test_from_string(self):
        w = WeightProfile.from_string("2, 1,1,1,1,1,1,1,1,1,0.5")
        assert w.a[0] == 2.0 and w.a[-1] == 0.5

    @pytest.mark.parametrize("text", ["1,1,1", "1,1,1,1,1,1,1,1,1,1,-1", "1,1,1,1,1,1,1,1,1,1,inf"])
    def test_rejects_bad_profiles(self, text):
        with pytest.raises(ValidationError):
            WeightProfile.from_string(text)

    def test_effective_zeroes_named_variables(self):
        eff = WeightProfile.unit().effective({"fouls_drawn", "blocks_received"})
        assert (eff.a_min, eff.a_max) == (-4.0, 5.0)
