import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _oracle import mp_copula, mp_raw, oracle_region
from corrcopula.core import (
    CorrelationCopula,
    DomainError,
    Rect,
    Region,
    RegionError,
    UnitPoint,
    clamp_to_frechet,
    classify_region,
    classify_region_array,
    copula_eval,
    copula_eval_array,
    frechet_lower,
    frechet_upper,
    mixed_density,
    partial_a,
    raw_and,
)

probs = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)
open_probs = st.floats(min_value=1e-6, max_value=1 - 1e-6, allow_nan=False)
rhos = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False)


def C(rho, a, b):
    return copula_eval(CorrelationCopula(rho), UnitPoint(a, b))


# --- construction ---------------------------------------------------------


@pytest.mark.parametrize("rho", [-1.0000001, 1.5, float("nan"), float("inf")])
def test_rho_out_of_range_rejected(rho):
    with pytest.raises(DomainError):
        CorrelationCopula(rho)


@pytest.mark.parametrize("a,b", [(-0.1, 0.5), (0.5, 1.01), (float("nan"), 0.2)])
def test_point_out_of_range_rejected(a, b):
    with pytest.raises(DomainError):
        UnitPoint(a, b)


def test_rect_ordering_enforced():
    with pytest.raises(DomainError):
        Rect(0.5, 0.4, 0.0, 1.0)
    assert Rect.unit().corners()[3] == UnitPoint(1.0, 1.0)


# --- raw_and ----------------------------------------------------------------


def test_raw_and_paper_negative_example():
    assert raw_and(CorrelationCopula(-1), UnitPoint(0.1, 0.1)) == pytest.approx(-0.08, abs=1e-15)


def test_raw_and_product_at_zero_rho():
    assert raw_and(CorrelationCopula(0), UnitPoint(0.3, 0.7)) == pytest.approx(0.21, abs=1e-16)


def test_raw_and_positive_rho():
    # 0.0625 + 0.5 * 0.1875
    expected = float(mp_raw(0.5, 0.25, 0.25))
    assert expected == 0.15625
    assert raw_and(CorrelationCopula(0.5), UnitPoint(0.25, 0.25)) == pytest.approx(expected, abs=1e-16)


# --- Frechet bounds ---------------------------------------------------------


@pytest.mark.parametrize(
    "a,b,lower,upper",
    [(0.1, 0.1, 0.0, 0.1), (1.0, 0.4, 0.4, 0.4), (0.8, 0.5, 0.3, 0.5)],
)
def test_frechet_bounds(a, b, lower, upper):
    p = UnitPoint(a, b)
    assert frechet_lower(p) == pytest.approx(lower, abs=1e-15)
    assert frechet_upper(p) == upper


def test_frechet_lower_exact_on_unit_margin():
    for x in np.linspace(0, 1, 1001):
        assert frechet_lower(UnitPoint(x, 1.0)) == x
        assert frechet_lower(UnitPoint(1.0, x)) == x


# --- clamp ------------------------------------------------------------------


def test_clamp_examples():
    assert clamp_to_frechet(-0.08, UnitPoint(0.1, 0.1)) == 0.0
    assert clamp_to_frechet(0.21, UnitPoint(0.3, 0.7)) == 0.21
    raw = 0.04 + 0.5 * math.sqrt(0.0216)
    assert raw == pytest.approx(0.1134847, abs=1e-7)
    assert clamp_to_frechet(raw, UnitPoint(0.1, 0.4)) == 0.1


# --- copula_eval ------------------------------------------------------------


def test_copula_eval_examples():
    assert C(1, 0.3, 0.7) == 0.3
    assert C(0, 0.3, 0.7) == 0.3 * 0.7
    # 0.12 - 0.5 * sqrt(0.0504), inside the band so no clamp
    expected = mp_copula(-0.5, 0.3, 0.4)
    assert expected == pytest.approx(0.00775028, abs=1e-8)
    assert classify_region(CorrelationCopula(-0.5), UnitPoint(0.3, 0.4)) is Region.INTERIOR
    assert C(-0.5, 0.3, 0.4) == pytest.approx(expected, abs=1e-15)
    # raw 0.0567 falls below a + b - 1 = 0.1
    assert float(mp_raw(-1, 0.3, 0.8)) == pytest.approx(0.0567, abs=1e-4)
    assert C(-1, 0.3, 0.8) == pytest.approx(0.1, abs=1e-15)


@given(a=probs, b=probs)
def test_independence_member_is_product(a, b):
    assert C(0.0, a, b) == a * b


@settings(max_examples=300)
@given(rho=rhos, a=probs, b=probs)
def test_copula_matches_high_precision_oracle(rho, a, b):
    assert C(rho, a, b) == pytest.approx(mp_copula(rho, a, b), abs=1e-15)


@given(rho=rhos, a=probs, b=probs)
def test_frechet_sandwich(rho, a, b):
    p = UnitPoint(a, b)
    assert frechet_lower(p) <= copula_eval(CorrelationCopula(rho), p) <= frechet_upper(p)


@given(rho=rhos, a=probs, b=probs)
def test_symmetry_bitwise(rho, a, b):
    assert C(rho, a, b) == C(rho, b, a)


@given(rho=rhos, a=probs, b=probs)
def test_grounded_and_uniform_margins(rho, a, b):
    assert C(rho, 0.0, b) == 0.0
    assert C(rho, a, 0.0) == 0.0
    assert C(rho, a, 1.0) == a
    assert C(rho, 1.0, b) == b


@given(a=probs, b=probs)
def test_endpoint_members(a, b):
    assert C(-1.0, a, b) == pytest.approx(max(a + b - 1, 0.0), abs=1e-15)
    assert C(1.0, a, b) == pytest.approx(min(a, b), abs=1e-15)


@given(r1=rhos, r2=rhos, a=probs, b=probs)
def test_monotone_in_rho(r1, r2, a, b):
    lo, hi = sorted((r1, r2))
    assert C(lo, a, b) <= C(hi, a, b)


# dividing by the spread amplifies rounding by 1/spread, so keep away from the edges
@given(
    rho=rhos,
    a=st.floats(min_value=0.05, max_value=0.95),
    b=st.floats(min_value=0.05, max_value=0.95),
)
def test_correlation_recovered_on_interior(rho, a, b):
    c, p = CorrelationCopula(rho), UnitPoint(a, b)
    if classify_region(c, p) is not Region.INTERIOR:
        return
    spread = math.sqrt(a * (1 - a) * b * (1 - b))
    assert (copula_eval(c, p) - a * b) / spread == pytest.approx(rho, abs=1e-12)


def test_sqrt_argument_clamped_at_zero():
    # edge values make the product exactly zero; no nan may leak through
    for x in (0.0, 1.0):
        for y in np.linspace(0, 1, 11):
            assert math.isfinite(raw_and(CorrelationCopula(-1), UnitPoint(x, y)))


# --- regions ----------------------------------------------------------------


def test_classify_examples():
    assert classify_region(CorrelationCopula(0.5), UnitPoint(0.1, 0.4)) is Region.UPPER_CLAMP
    # boundary for rho=0.5 at a=0.1 sits at b = 0.1 / (0.1 + 0.25 * 0.9)
    assert 0.1 / (0.1 + 0.25 * 0.9) == pytest.approx(0.30769, abs=1e-5)
    assert classify_region(CorrelationCopula(-0.5), UnitPoint(0.2, 0.3)) is Region.LOWER_CLAMP
    assert str(Region.LOWER_CLAMP) == "LowerClamp"


@given(a=probs, b=probs)
def test_zero_rho_always_interior(a, b):
    assert classify_region(CorrelationCopula(0), UnitPoint(a, b)) is Region.INTERIOR


@given(rho=rhos, a=probs, b=probs)
def test_region_agrees_with_clamp_branch(rho, a, b):
    c, p = CorrelationCopula(rho), UnitPoint(a, b)
    region = classify_region(c, p)
    value, raw = copula_eval(c, p), raw_and(c, p)
    if region is Region.INTERIOR:
        assert value == raw
    elif region is Region.LOWER_CLAMP:
        assert value == frechet_lower(p) and raw < value
        assert rho < 0
    else:
        assert value == frechet_upper(p) and raw > value
        assert rho > 0
    assert region.value == oracle_region(rho, a, b) or abs(raw - value) < 1e-15


def test_exact_boundary_is_interior():
    # rho = 0.5, a = 0.2: raw at b = 0.5 equals min(a, b) = 0.2 exactly in floats
    p = UnitPoint(0.2, 0.5)
    assert raw_and(CorrelationCopula(0.5), p) == 0.2
    assert classify_region(CorrelationCopula(0.5), p) is Region.INTERIOR


def test_array_path_matches_scalar():
    rng = np.random.default_rng(3)
    for rho in np.linspace(-1, 1, 9):
        a, b = rng.random(500), rng.random(500)
        arr = copula_eval_array(rho, a, b)
        reg = classify_region_array(rho, a, b)
        codes = {Region.LOWER_CLAMP: -1, Region.INTERIOR: 0, Region.UPPER_CLAMP: 1}
        for k in range(500):
            assert arr[k] == C(rho, a[k], b[k])
            assert reg[k] == codes[classify_region(CorrelationCopula(rho), UnitPoint(a[k], b[k]))]


# --- derivatives ------------------------------------------------------------


def _fd_partial(rho, a, b, h=1e-6):
    return (C(rho, a + h, b) - C(rho, a - h, b)) / (2 * h)


def _fd_mixed(rho, a, b, h=1e-4):
    return (C(rho, a + h, b + h) - C(rho, a + h, b - h) - C(rho, a - h, b + h) + C(rho, a - h, b - h)) / (4 * h * h)


def test_partial_a_examples():
    c = CorrelationCopula(0.5)
    assert partial_a(c, UnitPoint(0.25, 0.25)) == pytest.approx(0.375, abs=1e-15)
    assert _fd_partial(0.5, 0.25, 0.25) == pytest.approx(0.375, rel=1e-5)
    assert partial_a(CorrelationCopula(0), UnitPoint(0.6, 0.3)) == pytest.approx(0.3, abs=1e-16)
    assert partial_a(c, UnitPoint(0.5, 0.5)) == 0.5


def test_mixed_density_examples():
    for rho in (-1, -0.3, 0.4, 1):
        p = UnitPoint(0.5, 0.3)
        if classify_region(CorrelationCopula(rho), p) is Region.INTERIOR:
            assert mixed_density(CorrelationCopula(rho), p) == 1.0
    assert mixed_density(CorrelationCopula(0), UnitPoint(0.17, 0.83)) == 1.0
    # 1 + 0.5 * (0.5 * 0.5) / (4 * 0.1875) = 7/6
    assert mixed_density(CorrelationCopula(0.5), UnitPoint(0.25, 0.25)) == pytest.approx(7 / 6, abs=1e-15)
    assert _fd_mixed(0.5, 0.25, 0.25) == pytest.approx(7 / 6, rel=1e-5)


@pytest.mark.parametrize("a", [0.0, 1.0])
def test_partial_a_undefined_on_edges(a):
    with pytest.raises(DomainError):
        partial_a(CorrelationCopula(0.3), UnitPoint(a, 0.5))


def test_mixed_density_undefined_on_edges():
    with pytest.raises(DomainError):
        mixed_density(CorrelationCopula(0.3), UnitPoint(0.5, 1.0))


def test_closed_forms_reject_clamped_points():
    with pytest.raises(RegionError):
        partial_a(CorrelationCopula(0.5), UnitPoint(0.1, 0.4))
    with pytest.raises(RegionError):
        mixed_density(CorrelationCopula(-0.5), UnitPoint(0.2, 0.3))


def _interior_with_margin(rho, a, b, m=1e-3):
    c = CorrelationCopula(rho)
    if not (m <= a <= 1 - m and m <= b <= 1 - m):
        return False
    return all(
        classify_region(c, UnitPoint(a + da, b + db)) is Region.INTERIOR
        for da in (-m, 0, m)
        for db in (-m, 0, m)
    )


@settings(max_examples=300)
@given(rho=rhos, a=open_probs, b=open_probs)
def test_partial_a_bounded_and_matches_finite_difference(rho, a, b):
    if not _interior_with_margin(rho, a, b):
        return
    p = UnitPoint(a, b)
    value = partial_a(CorrelationCopula(rho), p)
    assert value <= 1 + 1e-9
    fd = _fd_partial(rho, a, b)
    assert value == pytest.approx(fd, rel=1e-5, abs=1e-9)


@settings(max_examples=300)
@given(rho=rhos, a=open_probs, b=open_probs)
def test_density_nonnegative(rho, a, b):
    c, p = CorrelationCopula(rho), UnitPoint(a, b)
    if classify_region(c, p) is Region.INTERIOR:
        assert mixed_density(c, p) >= -1e-12
