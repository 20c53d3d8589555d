import numpy as np
import pytest

from qpaths import (DiagonalObservable, KetState, MeterModel,
                    MeterStatisticsUndefined, StateSpace, WeakValueUndefined,
                    build_network, conditional_reading_distribution, decompose,
                    hardy, mean_reading, reading_amplitude, scaled_widths,
                    three_box, weak_limit_convergence, weak_value)


def hardy_case(obs_name="N(1-|1+)", final_name="f"):
    sc = hardy()
    return decompose(sc.initial, sc.final(final_name)), sc.observable(obs_name)


def test_pointer_state_is_unit_norm():
    meter = MeterModel(0.7)
    x = np.linspace(-12.0, 12.0, 20001)
    assert np.trapezoid(meter.pointer_amplitude(x) ** 2, x) == pytest.approx(1.0, abs=1e-12)


def test_meter_width_must_be_positive():
    with pytest.raises(ValueError):
        MeterModel(0.0)
    with pytest.raises(ValueError):
        MeterModel(-1.0)


def test_reading_amplitude_spot_value():
    dec, obs = hardy_case()
    psi0 = reading_amplitude(dec, obs, MeterModel(1.0), 0.0)
    assert psi0 == pytest.approx(-0.19283308919522263 + 0j, abs=1e-14)


def test_reading_amplitude_vectorizes():
    dec, obs = hardy_case()
    meter = MeterModel(1.0)
    xs = np.array([-1.0, 0.0, 2.5])
    batch = reading_amplitude(dec, obs, meter, xs)
    assert batch.shape == (3,)
    for k, x in enumerate(xs):
        assert batch[k] == reading_amplitude(dec, obs, meter, float(x))


def test_mean_reading_strong_limit_is_conditional_average():
    dec, obs = hardy_case()
    assert mean_reading(dec, obs, MeterModel(0.001)) == pytest.approx(0.2, abs=1e-6)


def test_mean_reading_frozen_values():
    # anchors computed once by direct numerical integration of the
    # pointer density, outside this package
    dec, obs = hardy_case()
    expected = {1.0: -0.5203995629895912, 10.0: -0.9925419524883535,
                100.0: -0.9999250042185065}
    for width, value in expected.items():
        assert mean_reading(dec, obs, MeterModel(width)) == pytest.approx(value, abs=1e-11)


def test_mean_reading_approaches_weak_value():
    dec, obs = hardy_case()
    target = weak_value(dec, obs).reported
    assert mean_reading(dec, obs, MeterModel(1e4)) == pytest.approx(target, abs=1e-7)


def test_mean_reading_undefined_when_post_selection_impossible():
    space = StateSpace(("a", "b"))
    dec = decompose(space.basis_state("a"), space.basis_state("b"))
    obs = DiagonalObservable(space, [1.0, 0.0])
    with pytest.raises(MeterStatisticsUndefined):
        mean_reading(dec, obs, MeterModel(1.0))


def test_three_box_mean_reading_is_width_independent():
    sc = three_box(0.5)
    dec = decompose(sc.initial, sc.final("f"))
    for width in (0.01, 0.5, 3.0, 200.0):
        assert mean_reading(dec, sc.observable("P2"), MeterModel(width)) == \
            pytest.approx(1.0, abs=1e-12)


def test_weak_values_for_hardy_f():
    sc = hardy()
    dec = decompose(sc.initial, sc.final("f"))
    values = {name: weak_value(dec, sc.observable(name)).reported
              for name in ("N(1-|1+)", "N(1-|2+)", "N(2-|1+)", "N(2-|2+)")}
    assert values["N(1-|1+)"] == -1.0
    assert values["N(1-|2+)"] == 1.0
    assert values["N(2-|1+)"] == 1.0
    assert values["N(2-|2+)"] == 0.0


def test_weak_value_is_complex_in_general():
    space = StateSpace(("a", "b"))
    dec = decompose(KetState(space, [1.0, 1j]), KetState(space, [1.0, 1.0]))
    result = weak_value(dec, DiagonalObservable(space, [1.0, 0.0]))
    assert result.complex_value == pytest.approx(0.5 - 0.5j, abs=1e-12)
    assert result.reported == pytest.approx(0.5, abs=1e-12)


def test_weak_value_undefined_for_orthogonal_selection():
    space = StateSpace(("a", "b"))
    dec = decompose(space.basis_state("a"), space.basis_state("b"))
    with pytest.raises(WeakValueUndefined):
        weak_value(dec, DiagonalObservable(space, [1.0, 0.0]))


def test_weak_limit_errors_decrease():
    dec, obs = hardy_case()
    errors = weak_limit_convergence(dec, obs, scaled_widths(obs, (1.0, 10.0, 100.0)))
    assert errors[0] > errors[1] > errors[2]
    assert errors[2] < 1e-3


def test_scaled_widths():
    sc = hardy()
    obs = sc.observable("N(1-|1+)")
    assert scaled_widths(obs, (1.0, 10.0)) == (1.0, 10.0)
    zero_spread = DiagonalObservable(sc.space, [1.0] * 5)
    with pytest.raises(ValueError):
        scaled_widths(zero_spread, (1.0,))


def test_strong_limit_matches_conditional_average_elsewhere():
    sc = hardy()
    dec = decompose(sc.initial, sc.final("j"))
    obs = sc.observable("N(1-)")
    dist = conditional_reading_distribution(build_network(sc.initial, sc.final("j"), obs))
    expected = sum(ev * p for ev, p in dist.items())
    assert mean_reading(dec, obs, MeterModel(0.01)) == pytest.approx(expected, abs=1e-3)
