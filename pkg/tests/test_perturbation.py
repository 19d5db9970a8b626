"""Closed-form level shift vs. the Rayleigh-Schrodinger ladder engine."""

from __future__ import annotations

import dataclasses
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from doublewell import (
    AnharmonicExpansion,
    epsilon_closed_form,
    epsilon_series_coefficients,
    from_eta,
    perturbed_level,
    rs_engine,
    transition_amplitudes,
    validity_boundary,
)


def test_epsilon_closed_form_value():
    assert epsilon_closed_form(0.1) == pytest.approx(0.01444375, rel=1e-12)


def test_epsilon_closed_form_root():
    root = math.sqrt(25.0 / 189.0)
    assert abs(epsilon_closed_form(root)) <= 1e-16
    assert root == pytest.approx(0.363696, abs=1e-6)


def test_epsilon_closed_form_small_eta_limit():
    assert epsilon_closed_form(1e-8) == pytest.approx(25.0 / 16.0 * 1e-16, rel=1e-10)


@pytest.mark.parametrize("bad", [0.0, -0.2, math.nan, math.inf])
def test_epsilon_closed_form_domain(bad):
    with pytest.raises(ValueError):
        epsilon_closed_form(bad)


def test_engine_matches_closed_form_everywhere():
    for et in np.linspace(0.01, 0.2, 50):
        expansion = AnharmonicExpansion.standard(from_eta(float(et)))
        assert abs(rs_engine(expansion, order=2) - epsilon_closed_form(float(et))) <= 1e-12


def test_engine_first_order_quartic_term():
    # <0|y^4|0> = 3 (hbar/2mw)^2 turns the quartic coefficient into (36/16) eta^2
    p = from_eta(0.07)
    expansion = dataclasses.replace(AnharmonicExpansion.standard(p), cubic=0.0)
    assert rs_engine(expansion, order=1) == pytest.approx(36.0 / 16.0 * 0.07**2, rel=1e-13)


def test_engine_second_order_cubic_term():
    # cubic-only second order: amplitudes 3 lam^3 (k=1) and sqrt(6) lam^3 (k=3)
    # give -(9 + 6/3) c3^2 lam^6 / (hbar w) = -(11/16) eta^2 * E0 in total
    p = from_eta(0.07)
    expansion = dataclasses.replace(AnharmonicExpansion.standard(p), quartic=0.0)
    value = rs_engine(expansion, order=2)
    assert value == pytest.approx(-11.0 / 16.0 * 0.07**2, rel=1e-13)
    lam = math.sqrt(p.hbar / (2.0 * p.mass * p.angular_frequency))
    explicit = -(9.0 + 6.0 / 3.0) * expansion.cubic**2 * lam**6 / (p.hbar * p.angular_frequency)
    assert value * 0.5 * p.hbar * p.angular_frequency == pytest.approx(explicit, rel=1e-13)


def test_engine_truncation_stability():
    expansion = AnharmonicExpansion.standard(from_eta(0.1))
    values = [rs_engine(expansion, order=2, truncation=t) for t in (5, 8, 16)]
    assert abs(values[0] - values[1]) <= 1e-14
    assert abs(values[1] - values[2]) <= 1e-14


def test_engine_rejects_small_truncation():
    expansion = AnharmonicExpansion.standard(from_eta(0.1))
    with pytest.raises(ValueError):
        rs_engine(expansion, truncation=4)
    with pytest.raises(ValueError):
        rs_engine(expansion, order=3)


def test_parity_selection_rules():
    # the cubic term connects |0> only to odd k, the quartic only to even k,
    # so the cross products vanish identically state by state
    amp_cubic, amp_quartic = transition_amplitudes(AnharmonicExpansion.standard(from_eta(0.1)), 16)
    k = np.arange(16)
    assert np.all(amp_cubic[k % 2 == 0] == 0.0)
    assert np.all(amp_quartic[k % 2 == 1] == 0.0)
    assert np.all(amp_cubic * amp_quartic == 0.0)
    assert np.count_nonzero(amp_cubic) == 2  # k = 1, 3
    assert np.count_nonzero(amp_quartic) == 3  # k = 0, 2, 4


@settings(max_examples=60)
@given(
    cubic=st.floats(min_value=-5.0, max_value=5.0),
    quartic=st.floats(min_value=-5.0, max_value=5.0),
)
def test_second_order_correction_never_raises_ground_state(cubic: float, quartic: float):
    expansion = dataclasses.replace(
        AnharmonicExpansion.standard(from_eta(0.3)), cubic=cubic, quartic=quartic
    )
    second = rs_engine(expansion, order=2) - rs_engine(expansion, order=1)
    assert second <= 0.0


def test_series_coefficients_standard():
    a2, a4 = epsilon_series_coefficients("standard")
    assert abs(a2 - 25.0 / 16.0) <= 1e-12
    assert abs(a4 - (-189.0 / 16.0)) <= 1e-12


def test_series_coefficients_taylor():
    a2, a4 = epsilon_series_coefficients("taylor")
    assert abs(a2 - (-0.5)) <= 1e-12
    assert abs(a4 - (-21.0 / 256.0)) <= 1e-12


def test_series_coefficients_no_perturbation():
    # engine with both couplings off must give the zero polynomial; checked
    # directly rather than through the mode table
    p = from_eta(0.1)
    expansion = dataclasses.replace(AnharmonicExpansion.standard(p), cubic=0.0, quartic=0.0)
    assert rs_engine(expansion, order=2) == 0.0


def test_perturbed_level_value():
    level = perturbed_level(from_eta(0.1))
    assert level.unperturbed == 0.5
    assert level.energy == pytest.approx(0.5 * 1.01444375, rel=1e-12)
    assert level.energy == level.unperturbed * (1.0 + level.epsilon)
    assert level.below_barrier


def test_perturbed_level_taylor_mode():
    level = perturbed_level(from_eta(0.15), mode="taylor")
    expected = -0.5 * 0.15**2 - 21.0 / 256.0 * 0.15**4
    assert level.epsilon == pytest.approx(expected, rel=1e-10)
    with pytest.raises(ValueError):
        perturbed_level(from_eta(0.15), mode="other")


def test_perturbed_level_small_eta_is_harmonic():
    level = perturbed_level(from_eta(1e-6))
    assert level.energy == pytest.approx(0.5, rel=1e-11)


@given(value=st.floats(min_value=0.01, max_value=0.60))
def test_below_barrier_flag_matches_energy_comparison(value: float):
    p = from_eta(value)
    level = perturbed_level(p)
    assert level.below_barrier == (level.energy < p.barrier_height)


def test_below_barrier_throughout_working_range():
    for et in np.linspace(0.005, 0.15, 40):
        assert perturbed_level(from_eta(float(et))).below_barrier


def test_below_barrier_with_negative_shift():
    # at eta = 0.49 the shift is already strongly negative, which keeps the
    # level under the barrier: eta^2 (1 + eps) = 0.167 < 1/4
    p = from_eta(0.49)
    level = perturbed_level(p)
    assert level.epsilon < -0.25
    assert level.below_barrier
    assert level.energy < p.barrier_height


def test_validity_boundary_with_no_shift():
    assert validity_boundary(lambda et: 0.0) == pytest.approx(0.5, abs=1e-12)


def test_validity_boundary_standard():
    boundary = validity_boundary()
    assert boundary == pytest.approx(0.6037523990662577, abs=1e-9)
    # the binding constraint is 1 + eps hitting zero, not the turning-point root
    assert 1.0 + epsilon_closed_form(boundary) == pytest.approx(0.0, abs=1e-12)
    # and the turning-point expression never reaches 1 below the boundary
    grid = np.linspace(1e-3, boundary - 1e-9, 500)
    values = 2.0 * grid * np.sqrt(1.0 + (grid**2 / 16.0) * (25.0 - 189.0 * grid**2))
    assert values.max() < 1.0


def test_turning_expression_small_in_table_range():
    for et in np.linspace(1e-3, 0.15, 100):
        assert 2.0 * et * math.sqrt(1.0 + epsilon_closed_form(float(et))) < 1.0


def test_expansion_validation():
    p = from_eta(0.1)
    with pytest.raises(ValueError):
        AnharmonicExpansion(params=p, harmonic=0.0, cubic=1.0, quartic=1.0, expansion_point=10.0)
    with pytest.raises(ValueError):
        AnharmonicExpansion(params=p, harmonic=1.0, cubic=math.nan, quartic=1.0, expansion_point=10.0)


def test_expansion_mode_quartic_ratio():
    # the two conventions share c2 and c3 but differ by 12x in the quartic
    p = from_eta(0.1)
    std = AnharmonicExpansion.standard(p)
    tay = AnharmonicExpansion.taylor(p)
    assert std.harmonic == tay.harmonic
    assert std.cubic == tay.cubic
    assert std.quartic == pytest.approx(12.0 * tay.quartic, rel=1e-15)
