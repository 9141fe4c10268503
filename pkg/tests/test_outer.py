import mpmath as mp
import numpy as np
import pytest
from hypothesis import given

from conftest import channel_params, hlog, param_sets
from oracles import oracle_exact, oracle_relaxed
from picgap.channel import ChannelParams, ChannelType
from picgap.geometry import DomainError, contains_halfspace, contains_halfspace_many, sample_boundary
from picgap.outer import (
    OuterBoundSet,
    PreconditionError,
    outer_cross_section,
    outer_region,
    relaxed_outer_region,
    sum_row_threshold,
)


def _as_dict(region):
    return {c.support: c.bound for c in region.constraints}


@pytest.mark.parametrize("ctype", list(ChannelType))
def test_exact_and_relaxed_match_oracle(ctype):
    for p in param_sets(25, seed=ctype):
        for region, oracle in ((outer_region(ctype, p), oracle_exact), (relaxed_outer_region(ctype, p), oracle_relaxed)):
            got, want = _as_dict(region), oracle(ctype, p)
            assert set(got) == set(want)
            for k in want:
                assert got[k] == pytest.approx(want[k], rel=1e-9)


def test_outer_examples(p100):
    r1 = outer_region(1, p100)
    assert r1.row(1, 2).bound == pytest.approx(hlog(101) + hlog(mp.mpf(204) / 104), rel=1e-12)
    assert r1.row(1, 2).bound == pytest.approx(3.8151, abs=1e-3)
    assert len(r1.constraints) == 5
    assert outer_region(4, p100).row(1, 3).bound == pytest.approx(hlog(201), rel=1e-12)
    zero = outer_region(3, ChannelParams(0.0, (1, 2, 3)))
    assert all(c.bound == 0.0 for c in zero.constraints)


def test_relaxed_examples(p100):
    assert relaxed_outer_region(1, p100).row(1, 2).bound == pytest.approx(hlog(mp.mpf(700) / 3), rel=1e-12)
    edge = ChannelParams(48.0, (1.0, 4.0, 16.0))
    assert relaxed_outer_region(1, edge).row(3).bound == pytest.approx(1.0, abs=1e-14)


def test_relaxed_requires_high_snr():
    with pytest.raises(PreconditionError):
        relaxed_outer_region(1, ChannelParams(40.0, (1.0, 4.0, 16.0)))
    assert OuterBoundSet.build(1, ChannelParams(40.0, (1.0, 4.0, 16.0))).relaxed is None


@pytest.mark.parametrize("ctype", list(ChannelType))
def test_exact_inside_relaxed(ctype):
    for i, p in enumerate(param_sets(20, seed=10 + ctype)):
        pts = sample_boundary(outer_region(ctype, p), 200, seed=i)
        assert contains_halfspace_many(relaxed_outer_region(ctype, p), pts, tol=1e-9).all()


@given(channel_params())
def test_relaxed_rows_dominate_exact_rows(params):
    for t in ChannelType:
        ex, rx = _as_dict(outer_region(t, params)), _as_dict(relaxed_outer_region(t, params))
        for k in ex:
            assert ex[k] <= rx[k] + 1e-12


def test_cross_section_examples(p100):
    s1 = outer_cross_section(1, p100, 2, 1.0)
    assert s1.free_bound(1) == pytest.approx(min(hlog(mp.mpf(700) / 3) - 1, hlog(mp.mpf(400) / 3)), rel=1e-12)
    assert s1.free_bound(1) == pytest.approx(2.9324, abs=1e-3)
    assert s1.free_bound(3) == pytest.approx(min(hlog(mp.mpf(175) / 3) - 1, hlog(mp.mpf(25) / 3)), rel=1e-12)
    assert s1.free_bound(3) == pytest.approx(1.5297, abs=1e-3)
    s2 = outer_cross_section(2, p100, 1, 0.0)
    assert s2.free_bound(2) == pytest.approx(hlog(mp.mpf(100) / 4 * 4 / 3), rel=1e-12)


def test_cross_section_keeps_extra_sum_row():
    p = ChannelParams(1000.0, (1.0, 4.0, 16.0))
    s4 = outer_cross_section(4, p, 1, 0.5)
    assert s4.sum_bound() == pytest.approx(hlog(mp.mpf(1000) / 4 * 7 / 3), rel=1e-12)
    s5 = outer_cross_section(5, p, 2, 0.5)
    assert s5.free_axes == (1, 3)
    assert s5.sum_bound() == pytest.approx(hlog(mp.mpf(1000) * 7 / 3), rel=1e-12)


def test_cross_section_at_zero_drops_fixed_axis(p100):
    rx = relaxed_outer_region(3, p100)
    sec = outer_cross_section(3, p100, 3, 0.0)
    assert sec.free_bound(1) == pytest.approx(rx.row(1).bound)
    assert sec.free_bound(2) == pytest.approx(rx.row(2).bound)


def test_cross_section_value_out_of_range(p100):
    with pytest.raises(DomainError):
        outer_cross_section(1, p100, 2, 10.0)
    with pytest.raises(DomainError):
        outer_cross_section(1, p100, 2, -0.1)


def test_thresholds_make_sum_row_inactive():
    p = ChannelParams(1e4, (1.0, 4.0, 16.0))
    for t, axis in ((4, 1), (5, 2)):
        th = sum_row_threshold(t, p)
        below = outer_cross_section(t, p, axis, th * 0.9)
        a, b = below.free_axes
        assert below.sum_bound() < below.free_bound(a) + below.free_bound(b)
        if th * 1.1 <= relaxed_outer_region(t, p).axis_bound(axis):
            above = outer_cross_section(t, p, axis, th * 1.1)
            assert above.sum_bound() is None or above.sum_bound() >= above.free_bound(a) + above.free_bound(b) - 1e-12
    with pytest.raises(ValueError):
        sum_row_threshold(1, p)


def test_boundary_point_example(p100):
    assert contains_halfspace(outer_region(1, p100), (3.0, 0.8, 0.0))
    assert not contains_halfspace(outer_region(1, p100), (p100_c1 := outer_region(1, p100).row(1).bound + 1, 0, 0))
    assert p100_c1 > 4
