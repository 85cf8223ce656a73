import random
from fractions import Fraction

import pytest

from nonarch import (BoundedSeries, INF, NEG_INF, PadicNumber, TailBound,
                     binom_fractional, convergence_logradius,
                     series_p_power_root, valuation, vp_factorial)
from nonarch.errors import PrecisionExhaustedError, UndecidableSlopeError


def Q(p, r, prec=64):
    return PadicNumber.from_rational(p, Fraction(r), prec)


# ---------------------------------------------------------------- scalars


def test_valuation_of_p_is_one():
    assert valuation(Q(5, 5)) == 1
    assert valuation(Q(2, 2)) == 1


def test_valuation_of_unit_is_zero():
    assert valuation(Q(3, 1)) == 0
    assert valuation(Q(3, Fraction(7, 4))) == 0


def test_valuation_of_uniformizer_is_half():
    pi = PadicNumber.uniformizer(3)
    assert valuation(pi) == Fraction(1, 2)
    assert (pi * pi - Q(3, 3)).is_exact_zero


def test_zero_at_precision_reports_infinite_valuation():
    x = Q(3, 3 ** 10, prec=8)
    assert valuation(x) is INF
    assert x.val is INF
    assert x.exact_valuation == 10


def test_valuation_multiplicative_and_ultrametric():
    rng = random.Random(7)
    for p in (2, 3, 5):
        pi = PadicNumber.uniformizer(p)
        for _ in range(40):
            x = Q(p, Fraction(rng.randint(-50, 50), rng.randint(1, 40))) + \
                pi * rng.randint(-5, 5)
            y = Q(p, Fraction(rng.randint(-50, 50), rng.randint(1, 40))) + \
                pi * rng.randint(-5, 5)
            if x.is_exact_zero or y.is_exact_zero:
                continue
            assert (x * y).exact_valuation == x.exact_valuation + y.exact_valuation
            vs = (x + y).exact_valuation
            assert vs >= min(x.exact_valuation, y.exact_valuation)
            if x.exact_valuation != y.exact_valuation:
                assert vs == min(x.exact_valuation, y.exact_valuation)


def test_division_and_power_roundtrip():
    x = Q(5, Fraction(7, 3)) + PadicNumber.uniformizer(5) * 2
    assert ((x / x) - 1).is_exact_zero
    assert ((x ** 3) * (x ** -3) - 1).is_exact_zero


def test_vp_factorial_examples():
    assert vp_factorial(0, 5) == 0
    assert vp_factorial(5, 5) == 1
    # direct factor counting in 10! = 2^8 3^4 5^2 7
    assert vp_factorial(10, 3) == 4


def test_vp_factorial_against_direct_count():
    import math
    for p in (2, 3, 5):
        for k in range(0, 40):
            n = math.factorial(k)
            v = 0
            while n % p == 0:
                n //= p
                v += 1
            assert vp_factorial(k, p) == v


def test_binom_fractional_k0_is_one():
    b = binom_fractional(Fraction(3, 7), 0, 5)
    assert (b - 1).is_exact_zero


def test_binom_fractional_example_third():
    # C(1/3, 3) = (1/3)(1/3-1)(1/3-2)/6 = 5/81, valuation -3*1 - v_3(3!) = -4
    b = binom_fractional(Fraction(1, 3), 3, 3)
    assert b.rat == Fraction(5, 81)
    assert b.exact_valuation == -4


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_binomial_valuation_law(p, n):
    m = Fraction(1, p ** (n - 1))
    for k in range(1, 30):
        b = binom_fractional(m, k, p)
        assert b.exact_valuation == -k * (n - 1) - vp_factorial(k, p)


def test_serialization_roundtrip_qp():
    x = Q(3, Fraction(-22, 7), prec=16)
    back = PadicNumber.from_json(x.to_json())
    assert valuation(back - x) is INF  # agreement to the serialized precision


def test_serialization_roundtrip_ramified():
    pi = PadicNumber.uniformizer(3, prec=12)
    x = Q(3, 5, prec=12) + pi * Fraction(7, 2)
    back = PadicNumber.from_json(x.to_json())
    assert valuation(back - x) is INF


def test_padic_json_format():
    x = Q(3, Fraction(18, 5), prec=8)
    data = x.to_json()
    assert set(data) == {"p", "val", "unit", "prec"}
    assert data["p"] == 3 and data["val"] == "2" and data["prec"] == 8
    assert data["unit"].isdigit()


def test_series_json_format_and_roundtrip():
    f = BoundedSeries.build(3, [1, 0, Fraction(1, 2)],
                            TailBound(Fraction(1, 3), Fraction(-2)))
    data = f.to_json()
    assert set(data) == {"coeffs", "tail"}
    assert data["tail"] == {"alpha": "1/3", "beta": "-2"}
    back = BoundedSeries.from_json(data)
    assert back.tail == f.tail
    # serialization truncates to prec digits: agreement at working precision
    assert all(valuation(a - b) is INF for a, b in zip(back.coeffs, f.coeffs))


def test_unit_digits_coprime_to_p():
    for r in (5, Fraction(9, 7), Fraction(-3, 4)):
        x = Q(3, r)
        assert x.unit_digits % 3 != 0


# ---------------------------------------------------------------- series


def conv_oracle(a, b):
    """Brute-force polynomial convolution on exact coefficient lists."""
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out


def test_mul_matches_convolution_oracle():
    p = 5
    rng = random.Random(3)
    for _ in range(10):
        a = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(5)]
        b = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(4)]
        f = BoundedSeries.build(p, a)
        g = BoundedSeries.build(p, b)
        expect = conv_oracle(a, b)
        got = f.mul(g)
        assert [c.rat for c in got.coeffs] == expect


def test_root_of_constant_one():
    f = BoundedSeries.build(3, [1])
    g = series_p_power_root(f, 4)
    assert g.degree == 0 and (g.coeffs[0] - 1).is_exact_zero and g.tail is None


def test_root_coefficients_are_binomials():
    p, n = 3, 3
    # f = 1 + X^2 explicit to degree 8
    f = BoundedSeries.build(p, [1, 0, 1] + [0] * 6)
    g = series_p_power_root(f, n)
    for k in range(0, 4):
        expect = binom_fractional(Fraction(1, p ** n), k, p)
        assert (g.coeffs[2 * k] - expect).is_exact_zero
    # odd coefficients vanish
    assert all(g.coeffs[j].is_exact_zero for j in range(1, g.degree + 1, 2))


def test_root_power_recovers_input():
    p, m = 3, 1
    f = BoundedSeries.build(p, [1, 1, 2, Fraction(1, 2), 0, 5, 0, 0, 0])
    g = series_p_power_root(f, m)
    h = g
    for _ in range(p ** m - 1):
        h = h.mul(g, trunc=f.degree)
    for j in range(f.degree + 1):
        assert (h.coeffs[j] - f.coeffs[j]).is_exact_zero


def test_root_square_against_multiplication_oracle():
    # f = (1+X)^2 with p = 3: the p^m-th root of f is the square of the
    # root of 1+X, checked coefficientwise via the convolution oracle.
    p, m, D = 3, 1, 8
    one_plus = BoundedSeries.build(p, [1, 1] + [0] * (D - 1))
    f = BoundedSeries.build(p, conv_oracle([Fraction(1), Fraction(1)],
                                           [Fraction(1), Fraction(1)]) + [0] * (D - 2))
    r1 = series_p_power_root(one_plus, m)
    r2 = series_p_power_root(f, m)
    square = r1.mul(r1, trunc=D)
    for j in range(D + 1):
        assert (square.coeffs[j] - r2.coeffs[j]).is_exact_zero


def test_convergence_geometric_series():
    p = 3
    f = BoundedSeries.build(p, [1] * 7, TailBound(0, 0))
    assert convergence_logradius(f) == 0


def test_convergence_p_powers_newton_slope():
    # sum p^k X^k: the valuation sequence v_k = k has Newton slope 1,
    # so the convergence log-radius is -1 (radius p).
    p = 3
    coeffs = [Fraction(p) ** k for k in range(6)]
    vals = [k for k in range(6)]  # oracle: lower hull of (k, v_k) has slope 1
    slope = min((vals[j] - vals[i]) / (j - i)
                for i in range(6) for j in range(i + 1, 6))
    assert slope == 1
    f = BoundedSeries.build(p, coeffs, TailBound(1, 0))
    assert convergence_logradius(f) == -slope


def test_convergence_polynomial_is_entire():
    f = BoundedSeries.build(3, [1, 4, 0, 2])
    assert convergence_logradius(f) is NEG_INF


@pytest.mark.parametrize("p,N,n", [(2, 1, 1), (3, 2, 3), (5, 3, 2), (3, 4, 5)])
def test_root_radius_matches_closed_form(p, N, n):
    coeffs = [0] * (N + 1)
    coeffs[0] = 1
    coeffs[N] = 1
    f = BoundedSeries.build(p, coeffs)
    g = series_p_power_root(f, n)
    assert convergence_logradius(g) == (Fraction(n) + Fraction(1, p - 1)) / N


def test_rescaled_germ_radius():
    # f = 1 + X^2 composed with X -> pX gives 1 + p^2 X^2; its p^n-th root
    # has coefficients C(1/p^n, k) p^(2k) at degree 2k, so the Newton slope
    # is (n + 1/(p-1))/2 - v(p^2)/2 and the log-radius drops by v(p) = 1:
    # for p = 3, n = 3 the radius is 7/4 - 1 = 3/4.
    p, n = 3, 3
    f = BoundedSeries.build(p, [1, 0, 1]).rescale(Q(p, p))
    g = series_p_power_root(f, n)
    assert convergence_logradius(g) == Fraction(3, 4)
    # oracle: explicit coefficients sit on the certified line
    line = g.tail
    k = 1
    assert g.coeffs[2 * k].exact_valuation == line.at(2 * k)


def test_tail_bound_is_conservative():
    p = 3
    f = BoundedSeries.build(p, [1, 0, 1, 0, 0, 0, 0, 0, 0])
    g = series_p_power_root(f, 2)
    for j, v in g.explicit_points():
        if j >= 1:
            assert v >= g.tail.at(j)


def test_convergence_flag_on_inconsistent_series():
    p = 3
    f = BoundedSeries.build(p, [1, Fraction(1, p)], TailBound(0, 0))
    with pytest.raises(UndecidableSlopeError):
        convergence_logradius(f)


def test_coefficient_beyond_certified_degree_raises():
    f = BoundedSeries.build(3, [1, 1], TailBound(0, 0))
    with pytest.raises(PrecisionExhaustedError):
        f.coeff(5)


def test_add_and_tail_folding():
    p = 3
    f = BoundedSeries.build(p, [1, 1, 1, 1, 1])          # polynomial
    g = BoundedSeries.build(p, [0, 1], TailBound(1, 0))  # short, tailed
    s = f + g
    assert s.degree == 1
    assert [c.rat for c in s.coeffs] == [1, 2]
    # folded bound stays below the exact dropped coefficients (v = 0 at j = 2..4)
    assert s.tail.at(2) <= 0 and s.tail.at(4) <= 0


def test_derivative_and_inverse():
    p = 5
    f = BoundedSeries.build(p, [1, 0, 1, 0, 0, 0, 0])  # 1 + X^2
    df = f.derivative()
    assert [c.rat for c in df.coeffs[:3]] == [0, 2, 0]
    inv = f.inverse()
    prod = f.mul(inv, trunc=4)
    assert (prod.coeffs[0] - 1).is_exact_zero
    assert all(prod.coeffs[j].is_exact_zero for j in range(1, 5))


def test_monotone_radius_under_high_valuation_perturbation():
    # perturbing explicit coefficients above the tail line leaves the
    # certified radius unchanged
    p = 3
    base = BoundedSeries.build(p, [1, 1, 1, 1], TailBound(0, 0))
    bumped = BoundedSeries.build(p, [1, 1 + 9, 1, 1 + 27], TailBound(0, 0))
    assert convergence_logradius(base) == convergence_logradius(bumped)
