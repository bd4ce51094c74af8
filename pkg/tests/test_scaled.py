# tests/test_scaled.py
import math

import numpy as np
import pytest

from hardyhermite.exceptions import DomainError
from hardyhermite.numerics.scaled import (
    ScaledArray,
    ScaledComplex,
    normalize_phase,
    rel_diff,
    sc_add,
    sc_mul,
    sc_sum,
)


@pytest.mark.parametrize("z", [1.0, -3.5, 2.5j, 1e-300 + 1e-300j, 1.7e308, complex(-0.1, 7.3)])
def test_complex_round_trip_is_exact(z):
    assert ScaledComplex.from_complex(z).to_complex() == complex(z)


def test_mantissa_is_normalized():
    v = ScaledComplex.from_complex(12.0)
    assert 0.5 <= abs(v.mantissa) < 1.0
    assert v.exponent == 4


def test_products_far_outside_double_range():
    big = ScaledComplex.from_log(2000.0)
    small = ScaledComplex.from_log(-2100.0, phase=0.3)
    prod = big * small
    assert prod.ln_mag == pytest.approx(-100.0, abs=1e-12)
    assert prod.phase == pytest.approx(0.3, abs=1e-14)
    assert big.try_complex() is None
    with pytest.raises(OverflowError):
        big.to_complex()


def test_integer_power_and_log10():
    v = ScaledComplex.from_complex(2.0) ** 1100
    assert v.log10_abs == pytest.approx(1100 * math.log10(2.0), rel=1e-14)
    assert (v ** -1 * v).to_complex() == pytest.approx(1.0)


def test_cancellation_gives_the_zero_element():
    x = ScaledComplex.from_log(700.0, 1.1)
    assert (x - x).is_zero
    assert (x + (-x)) == ScaledComplex.zero()
    assert ScaledComplex.zero().ln_mag == -math.inf


def test_addition_across_exponents():
    x = ScaledComplex.from_complex(1.0)
    tiny = ScaledComplex.from_log(-2000.0)
    assert (x + tiny) == x
    assert (tiny + tiny).ln_mag == pytest.approx(-2000.0 + math.log(2.0))


@pytest.fixture
def triple():
    rng = np.random.default_rng(7)
    logs = rng.uniform(-900.0, 900.0, 3)
    phases = rng.uniform(-math.pi, math.pi, 3)
    return [ScaledComplex.from_log(l, p) for l, p in zip(logs, phases)]


def test_product_is_commutative_and_associative(triple):
    x, y, z = triple
    assert rel_diff(sc_mul(x, y), sc_mul(y, x)) <= 1e-15
    assert rel_diff(sc_mul(sc_mul(x, y), z), sc_mul(x, sc_mul(y, z))) <= 1e-14


def test_sum_is_associative():
    x, y, z = (ScaledComplex.from_log(-1000.0 + k, 0.4 * k) for k in range(3))
    assert rel_diff(sc_add(sc_add(x, y), z), sc_add(x, sc_add(y, z))) <= 1e-14
    assert rel_diff(sc_add(x, y), sc_add(y, x)) <= 1e-15


def test_sc_sum_matches_fsum():
    values = [0.1 * k - 0.35j for k in range(50)]
    total = sc_sum(ScaledComplex.from_complex(v) for v in values)
    expected = complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values))
    assert total.to_complex() == pytest.approx(expected, rel=1e-15)
    assert sc_sum([]).is_zero


def test_rel_diff():
    x = ScaledComplex.from_log(-900.0)
    y = x * (1.0 + 1e-9)
    assert rel_diff(x, y) == pytest.approx(1e-9, rel=1e-5)
    assert rel_diff(ScaledComplex.zero(), ScaledComplex.zero()) == 0.0
    assert rel_diff(x, ScaledComplex.zero()) == pytest.approx(1.0)


def test_division_by_zero_element():
    with pytest.raises(ZeroDivisionError):
        ScaledComplex.one() / ScaledComplex.zero()


def test_non_finite_input_rejected():
    with pytest.raises(DomainError):
        ScaledComplex.from_complex(float("nan"))
    with pytest.raises(DomainError):
        ScaledComplex.from_log(math.inf)


def test_normalize_phase_range():
    assert normalize_phase(-math.pi) == math.pi
    assert normalize_phase(2.5 * math.pi) == pytest.approx(0.5 * math.pi)
    assert normalize_phase(0.25) == 0.25


def test_array_from_log_handles_minus_infinity():
    arr = ScaledArray.from_log(np.array([-np.inf, 0.0, -1500.0]))
    assert arr.is_zero.tolist() == [True, False, False]
    assert arr.log_abs()[2] == pytest.approx(-1500.0)
    assert isinstance(arr[1], ScaledComplex)
    assert arr[1].to_complex() == pytest.approx(1.0)


def test_array_arithmetic_matches_complex():
    a = np.array([1.0 + 2j, -0.5, 3j])
    b = np.array([0.25, 4.0 - 1j, -2.0])
    sa, sb = ScaledArray.from_complex(a), ScaledArray.from_complex(b)
    np.testing.assert_allclose((sa * sb).to_complex(), a * b, rtol=1e-15)
    np.testing.assert_allclose((sa + sb).to_complex(), a + b, rtol=1e-15)
    np.testing.assert_allclose((sa - sb).to_complex(), a - b, rtol=1e-15)
    np.testing.assert_allclose((sa / sb).to_complex(), a / b, rtol=1e-15)
    np.testing.assert_allclose(sa.conj().to_complex(), a.conj())


def test_array_sum_along_axis():
    table = ScaledArray.from_log(np.array([[-1000.0, -1000.0], [5.0, -np.inf]]))
    rows = table.sum(axis=-1)
    assert isinstance(rows, ScaledArray)
    assert rows[0].ln_mag == pytest.approx(-1000.0 + math.log(2.0))
    assert rows[1].ln_mag == pytest.approx(5.0)
    total = ScaledArray.from_complex([1.0, 2.0, 3.0]).sum()
    assert isinstance(total, ScaledComplex)
    assert total.to_complex() == 6.0


def test_from_scalars_and_to_list():
    values = [ScaledComplex.from_log(-800.0, 0.5), ScaledComplex.zero(), ScaledComplex.from_complex(-2.0)]
    arr = ScaledArray.from_scalars(values)
    assert arr.to_list() == values
    assert arr.max_log_abs() == pytest.approx(math.log(2.0))
