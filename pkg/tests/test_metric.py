import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from msiq import (
    DescriptorMismatchError,
    MomentDescriptor,
    MomentScheme,
    MsiqVariant,
    ParameterError,
    default_weights,
    descriptor,
    msiq_distance,
    msiq_rmse,
    msiq_weighted,
)

RAW = MomentScheme.RAW_GRID


def _desc(values, order=4, scheme=RAW):
    return MomentDescriptor.from_values(order, scheme, values)


def _vec_strategy(n=12):
    return st.lists(
        st.floats(min_value=-1.0, max_value=1.0, allow_nan=False),
        min_size=n,
        max_size=n,
    )


def _normal_vec_strategy(n=12):
    # zero or normally-sized values; squared subnormals underflow to 0
    element = st.one_of(
        st.just(0.0),
        st.floats(min_value=1e-9, max_value=1.0),
        st.floats(min_value=-1.0, max_value=-1e-9),
    )
    return st.lists(element, min_size=n, max_size=n)


class TestRmse:
    def test_self_distance_zero(self, ramp):
        d = descriptor(ramp, 4)
        assert msiq_rmse(d, d) == 0.0

    def test_single_entry_gap(self):
        delta = 0.25
        a = _desc([0.0] * 12)
        values = [0.0] * 12
        values[3] = delta
        b = _desc(values)
        assert msiq_rmse(a, b) == pytest.approx(delta / math.sqrt(12), rel=1e-12)

    def test_order_mismatch(self, ramp):
        with pytest.raises(DescriptorMismatchError):
            msiq_rmse(descriptor(ramp, 4), descriptor(ramp, 5))

    def test_scheme_mismatch(self, ramp):
        with pytest.raises(DescriptorMismatchError):
            msiq_rmse(
                descriptor(ramp, 4, MomentScheme.RAW_GRID),
                descriptor(ramp, 4, MomentScheme.PIXEL_CENTER_DELTA),
            )


class TestWeighted:
    def test_self_distance_zero(self, ramp):
        d = descriptor(ramp, 4)
        assert msiq_weighted(d, d) == 0.0

    def test_default_weights_values(self):
        w = default_weights(4)
        assert w[(2, 0)] == pytest.approx(1.0 / 3.0)
        assert w[(0, 4)] == pytest.approx(1.0 / 5.0)
        assert len(w) == 12

    def test_single_entry_gap_order_two(self):
        # only entry (2,0) differs: sqrt(w20) * delta with w20 = 1/3
        delta = 0.6
        a = _desc([0.0] * 12)
        values = [0.0] * 12
        idx = a.indices().index((2, 0))
        values[idx] = delta
        b = _desc(values)
        assert msiq_weighted(a, b) == pytest.approx(delta / math.sqrt(3), rel=1e-12)

    def test_not_normalized_by_weight_sum(self):
        # uniform unit weights must reduce to the plain euclidean norm
        a = _desc([0.0] * 12)
        b = _desc([0.1] * 12)
        w = {pq: 1.0 for pq in a.indices()}
        assert msiq_weighted(a, b, w) == pytest.approx(0.1 * math.sqrt(12), rel=1e-12)

    def test_missing_weight(self):
        a = _desc([0.0] * 12)
        b = _desc([0.1] * 12)
        w = default_weights(4)
        del w[(2, 2)]
        with pytest.raises(ParameterError):
            msiq_weighted(a, b, w)

    def test_nonpositive_weight_rejected(self):
        a = _desc([0.0] * 12)
        w = default_weights(4)
        w[(2, 0)] = 0.0
        with pytest.raises(ParameterError):
            msiq_weighted(a, a, w)


class TestVariantDispatch:
    def test_parse(self):
        assert MsiqVariant.parse("msiq_w") is MsiqVariant.WEIGHTED
        assert MsiqVariant.parse("rmse") is MsiqVariant.RMSE
        with pytest.raises(ParameterError):
            MsiqVariant.parse("nope")

    def test_dispatch(self, ramp, blob):
        da, db = descriptor(ramp, 4), descriptor(blob, 4)
        assert msiq_distance(da, db, "rmse") == msiq_rmse(da, db)
        assert msiq_distance(da, db, "weighted") == msiq_weighted(da, db)


class TestMetricProperties:
    @settings(max_examples=50)
    @given(_vec_strategy(), _vec_strategy())
    def test_symmetry(self, xs, ys):
        a, b = _desc(xs), _desc(ys)
        assert msiq_rmse(a, b) == msiq_rmse(b, a)
        assert msiq_weighted(a, b) == msiq_weighted(b, a)

    @settings(max_examples=50)
    @given(_normal_vec_strategy(), _normal_vec_strategy())
    def test_identity_of_indiscernibles(self, xs, ys):
        a, b = _desc(xs), _desc(ys)
        if xs == ys:
            assert msiq_rmse(a, b) == 0.0
        else:
            assert msiq_rmse(a, b) >= 0.0
            assert (msiq_rmse(a, b) == 0.0) == (list(a.values()) == list(b.values()))

    @settings(max_examples=50)
    @given(_vec_strategy(), _vec_strategy(), _vec_strategy())
    def test_triangle_inequality(self, xs, ys, zs):
        a, b, c = _desc(xs), _desc(ys), _desc(zs)
        slack = 1e-9
        assert msiq_rmse(a, c) <= msiq_rmse(a, b) + msiq_rmse(b, c) + slack
        assert msiq_weighted(a, c) <= msiq_weighted(a, b) + msiq_weighted(b, c) + slack

    @settings(max_examples=30)
    @given(
        _vec_strategy(),
        st.integers(min_value=0, max_value=11),
        st.floats(min_value=0.0, max_value=0.5),
        st.floats(min_value=0.0, max_value=0.5),
    )
    def test_monotone_in_single_gap(self, xs, idx, gap_small, extra):
        a = _desc(xs)
        grow = list(xs)
        grow[idx] = xs[idx] + gap_small
        bigger = list(xs)
        bigger[idx] = xs[idx] + gap_small + extra
        assert msiq_rmse(a, _desc(bigger)) >= msiq_rmse(a, _desc(grow))
        assert msiq_weighted(a, _desc(bigger)) >= msiq_weighted(a, _desc(grow))
