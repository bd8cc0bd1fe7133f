"""Exact average weight distribution tests.

The recurrence pipeline is checked against an independent oracle that
expands the check-node generating polynomial by repeated convolution of
exact rationals.
"""

from __future__ import annotations

import math
from fractions import Fraction

import pytest

from ldpc_spectra import (
    CapacityError,
    EnsembleParams,
    ParameterError,
    avg_weight_at,
    avg_weight_d2,
    avg_weight_distribution,
    beta,
    check_coeffs,
    log_avg_upper_bound,
    log_fraction,
    single_check_coeffs,
    small_weight_scaling,
)

STIRLING_CONST = math.log(2 * math.pi) / 2 + 1 / 6


def poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def oracle_coeffs(q, d, big_n, max_m):
    # [((1+(q-1)x)^d + (q-1)(1-x)^d) / q] ** big_n, coefficient list
    plus = [Fraction(math.comb(d, i) * (q - 1) ** i) for i in range(d + 1)]
    minus = [Fraction(math.comb(d, i) * (q - 1) * (-1) ** i) for i in range(d + 1)]
    base = [(a + b) / q for a, b in zip(plus, minus)]
    full = [Fraction(1)]
    for _ in range(big_n):
        full = poly_mul(full, base)
    return [full[m] if m < len(full) else Fraction(0) for m in range(max_m + 1)]


def oracle_average(q, c, d, n):
    g = oracle_coeffs(q, d, c * n // d, c * n)
    vals = []
    for l in range(n + 1):
        num = Fraction(math.comb(n, l)) * g[c * l]
        den = Fraction(math.comb(c * n, c * l)) * (q - 1) ** ((c - 1) * l)
        vals.append(num / den)
    return vals


def test_params_validation():
    EnsembleParams(q=2, c=3, d=6, n=12)
    with pytest.raises(ParameterError):
        EnsembleParams(q=6, c=3, d=6, n=12)     # not a prime power
    with pytest.raises(ParameterError):
        EnsembleParams(q=2, c=3, d=5, n=12)     # d does not divide cn
    with pytest.raises(ParameterError):
        EnsembleParams(q=2, c=0, d=2, n=4)
    with pytest.raises(ParameterError):
        EnsembleParams(q=2, c=2, d=2, n=0)


def test_single_check_coefficients():
    assert single_check_coeffs(2, 4) == [1, 0, 6, 0, 1]
    assert single_check_coeffs(2, 5) == [1, 0, 10, 0, 5, 0]
    assert single_check_coeffs(3, 3) == [1, 0, 6, 2]
    assert single_check_coeffs(5, 2) == [1, 0, 4]
    # independent formula: C(d,i) * ((q-1)^i + (-1)^i (q-1)) / q
    for q in (2, 3, 4, 5, 7):
        for d in range(1, 8):
            got = single_check_coeffs(q, d)
            for i in range(d + 1):
                b = Fraction((q - 1) ** i + (-1) ** i * (q - 1), q)
                assert b.denominator == 1
                assert got[i] == math.comb(d, i) * int(b)


def test_check_coeffs_match_polynomial_oracle():
    for q in (2, 3, 4, 5):
        for d in range(1, 7):
            for big_n in range(5):
                max_m = min(big_n * d, 14)
                got = check_coeffs(q, d, big_n, max_m).coeffs
                want = oracle_coeffs(q, d, big_n, max_m)
                assert [Fraction(v) for v in got] == want, (q, d, big_n)


def test_weight_two_closed_form():
    # N checks of degree d contribute N * C(d,2) * (q-1) pairs
    for q in (2, 3, 5):
        for d in range(2, 8):
            for big_n in (1, 7, 40):
                got = check_coeffs(q, d, big_n, 2).coeffs
                assert got[2] == big_n * math.comb(d, 2) * (q - 1)


def test_average_distribution_examples():
    params = EnsembleParams(q=2, c=2, d=4, n=2)
    assert list(avg_weight_distribution(params).values) == [1, 2, 1]
    params = EnsembleParams(q=3, c=1, d=3, n=3)
    assert list(avg_weight_distribution(params).values) == [1, 0, 6, 2]
    params = EnsembleParams(q=2, c=3, d=6, n=12)
    table = avg_weight_distribution(params)
    assert table.values[0] == 1
    assert table.values[2] == Fraction(78, 31)
    assert all(table.values[l] == 0 for l in (1, 3, 5, 7, 9, 11))


def test_average_matches_oracle_grid():
    for q, c, d, n in [
        (2, 2, 4, 4), (2, 3, 6, 6), (3, 2, 3, 6), (4, 2, 4, 8), (5, 1, 3, 9),
    ]:
        params = EnsembleParams(q=q, c=c, d=d, n=n)
        got = list(avg_weight_distribution(params).values)
        assert got == oracle_average(q, c, d, n)


def test_total_mass_lower_bound():
    # expected codebook size is at least q**(n - cn/d)
    for q, c, d, n in [(2, 3, 6, 12), (3, 2, 4, 8), (4, 2, 2, 5)]:
        params = EnsembleParams(q=q, c=c, d=d, n=n)
        total = sum(avg_weight_distribution(params).values)
        assert total >= q ** (n - c * n // d)


def test_spectrum_symmetry_binary_even_d():
    for c, n in ((3, 12), (4, 12)):
        params = EnsembleParams(q=2, c=c, d=6, n=n)
        vals = avg_weight_distribution(params).values
        assert all(vals[l] == vals[n - l] for l in range(n + 1))


def test_degree_one_checks_pin_everything():
    params = EnsembleParams(q=3, c=2, d=1, n=4)
    vals = avg_weight_distribution(params).values
    assert vals[0] == 1
    assert all(v == 0 for v in vals[1:])


def test_avg_weight_at_consistent_with_table():
    params = EnsembleParams(q=3, c=2, d=3, n=9)
    table = avg_weight_distribution(params)
    for l in range(10):
        assert avg_weight_at(params, l) == table.values[l]


def test_d2_closed_form_equals_recurrence():
    for q in (2, 3, 4):
        for c in (2, 3, 4):
            for n in range(1, 13):
                if (c * n) % 2:
                    continue
                params = EnsembleParams(q=q, c=c, d=2, n=n)
                assert avg_weight_d2(params).values == \
                    avg_weight_distribution(params).values


def test_d2_odd_product_weight_vanishes():
    params = EnsembleParams(q=3, c=3, d=2, n=4)
    vals = avg_weight_d2(params).values
    for l in range(5):
        if (3 * l) % 2:
            assert vals[l] == 0


def test_capacity_cap_enforced():
    params = EnsembleParams(q=2, c=3, d=6, n=100)
    with pytest.raises(CapacityError):
        avg_weight_distribution(params, n_cap=50)


def test_beta_endpoints_and_bounds():
    for n in range(2, 65):
        assert beta(n, 0) == 0.0
        assert beta(n, n) == 0.0
        for l in range(1, n):
            b = beta(n, l)
            upper = math.log(l * (n - l) / n) / (2 * n) + STIRLING_CONST / n
            assert 0.0 <= b <= upper, (n, l)


def test_log_upper_bound_dominates():
    for q, c, d, n in [(2, 3, 6, 12), (3, 3, 6, 12), (2, 3, 2, 8), (2, 2, 4, 10)]:
        params = EnsembleParams(q=q, c=c, d=d, n=n)
        vals = avg_weight_distribution(params).values
        for l in range(n + 1):
            if vals[l] == 0:
                continue
            assert log_fraction(vals[l]) / n <= log_avg_upper_bound(params, l) + 1e-12


def test_small_weight_scaling_slopes():
    rep = small_weight_scaling(2, 3, 6, 2, [24, 48, 96, 192])
    assert rep.predicted_exponent == -1
    assert not rep.exact_zero
    assert abs(rep.slope - rep.predicted_exponent) < 0.1
    rep = small_weight_scaling(3, 3, 6, 1, [24, 48, 96, 192])
    assert rep.predicted_exponent == -1
    assert abs(rep.slope - rep.predicted_exponent) < 0.1


def test_small_weight_scaling_degenerate_zero():
    # odd c*l over GF(2) kills the expectation at every block length
    rep = small_weight_scaling(2, 3, 6, 3, [24, 48, 96])
    assert rep.exact_zero
    assert rep.slope is None
    assert all(v == 0 for v in rep.values)
    rep = small_weight_scaling(3, 1, 3, 1, [12, 24, 36])
    assert rep.exact_zero


def test_small_weight_scaling_needs_three_points():
    with pytest.raises(ParameterError):
        small_weight_scaling(2, 3, 6, 2, [24, 48])
