import random
from fractions import Fraction

import pytest

from nonarch import (BallPoint, Current, DifferentialEval, FactoredFunction,
                     INF, PadicNumber, TateCurve, alpha_eval, alpha_germ,
                     current_from_slopes, current_x, delta_at_one, delta_eval,
                     dlog_ord, factored_alpha, ladder_ord, moebius,
                     moebius_current, poly_current_eval,
                     theta_automorphy_constant, theta_product, validate_current)
from nonarch.errors import PoleCollisionError, TailCertificateError

from helpers import seed_current_with_ord, seeded_window_current


def Q(p, r, prec=64):
    return PadicNumber.from_rational(p, Fraction(r), prec)


# ------------------------------------------------------------ validation


def test_validate_x_current():
    rep = validate_current(current_x())
    assert rep.ok


def test_validate_moebius_grid():
    for n in (1, 2, 3):
        for J in (0, 1, 4, 9):
            assert validate_current(moebius_current(n, J)).ok


def test_validate_reports_first_violation():
    good = Current.windowed({1: 2, 3: -1}, left_spine=1)
    bad = Current(ring=good.ring, window=good.window, cusp=good.cusp,
                  spine=tuple((j, v + (1 if j == 1 else 0)) for j, v in good.spine),
                  period=None, modulus=None)
    rep = validate_current(bad)
    assert not rep.ok
    assert rep.index == 1


def test_validate_periodic_sum():
    c = Current.periodic(3, {0: 1, 1: -1, 2: 0}, spine0=2)
    assert validate_current(c).ok
    with pytest.raises(ValueError):
        Current.periodic(3, {0: 1, 1: 1, 2: 1})


def test_moebius_values():
    assert [moebius(k) for k in range(1, 5)] == [1, -1, -1, 0]
    cur = moebius_current(1, 4)
    assert [cur.cusp_at(j) for j in (1, 2, 3, 4)] == [1, -1, -1, 0]
    assert all(cur.spine_at(j) == 0 for j in range(-5, 1))


def test_current_json_roundtrip():
    c = seeded_window_current(random.Random(4))
    assert Current.from_json(c.to_json()) == c
    c2 = Current.periodic(2, {0: 1, 1: -1}, spine0=3)
    assert Current.from_json(c2.to_json()) == c2


# ------------------------------------------------------------ alpha


def test_alpha_of_x_current_is_identity():
    q = Q(3, 3)
    for zr in (1, 5, Fraction(7, 2)):
        z = Q(3, zr)
        assert (alpha_eval(current_x(), q, z).value - z).is_exact_zero


def test_alpha_of_zero_current_is_one():
    q = Q(3, 3)
    res = alpha_eval(Current.zero(), q, Q(3, 11))
    assert (res.value - 1).is_exact_zero
    assert res.error_valuation is INF


def test_alpha_single_cusp_direct_oracle():
    q = Q(3, 3)
    c = Current.windowed({1: 1})
    z = Q(3, 1)
    got = alpha_eval(c, q, z).value
    # direct product: x^0 * ((x - q)/x)^1 at x = 1
    direct = (z - q) / z
    assert (got - direct).is_exact_zero
    assert (got - (1 - q.rat)).is_exact_zero


def test_alpha_homomorphism_seeded():
    rng = random.Random(21)
    q = Q(5, 5)
    z = Q(5, 7)
    for _ in range(15):
        a = seeded_window_current(rng)
        b = seeded_window_current(rng)
        lhs = alpha_eval(a + b, q, z).value
        rhs = alpha_eval(a, q, z).value * alpha_eval(b, q, z).value
        assert (lhs - rhs).is_exact_zero


def test_alpha_rejects_periodic_with_cusps():
    c = Current.periodic(2, {0: 1, 1: -1})
    with pytest.raises(ValueError):
        alpha_eval(c, Q(3, 3), Q(3, 2))


# ------------------------------------------------ slopes and round trips


def annulus_slopes_oracle(c, q, jlo, jhi):
    """Slopes of |alpha(c)| on each annulus, read off two seminorm values."""
    vq = q.exact_valuation
    zero = PadicNumber.zero(q.p)
    out = {}
    for J in range(jlo, jhi + 1):
        r1 = J * vq + vq / 3
        r2 = J * vq + 2 * vq / 3
        w1 = alpha_eval(c, q, BallPoint(zero, r1)).value
        w2 = alpha_eval(c, q, BallPoint(zero, r2)).value
        s = (w2 - w1) / (r2 - r1)
        assert s.denominator == 1
        out[J] = int(s)
    return out


def test_round_trip_direct_factored_form():
    rng = random.Random(31)
    q = Q(3, 3)
    for _ in range(25):
        c = seeded_window_current(rng)
        assert current_from_slopes(factored_alpha(c), q) == c


def test_round_trip_via_seminorm_slope_extraction():
    rng = random.Random(32)
    q = Q(3, 3)
    for _ in range(10):
        c = seeded_window_current(rng)
        jmin = min(list(c.support()) + [0]) - 1
        jmax = max(list(c.support()) + [0])
        slopes = annulus_slopes_oracle(c, q, jmin, jmax)
        m = slopes[jmax]
        zeros = tuple((J + 1, slopes[J] - slopes[J + 1])
                      for J in range(jmin, jmax))
        fd = FactoredFunction(x_exponent=m, zeros=zeros)
        assert current_from_slopes(fd, q) == c


def test_current_from_slopes_of_constant():
    # alpha kills scalars: a constant function maps to the zero current
    fd = FactoredFunction(x_exponent=0, zeros=())
    assert current_from_slopes(fd, Q(3, 3)) == Current.zero()


def test_current_from_slopes_of_x():
    fd = FactoredFunction(x_exponent=1, zeros=())
    c = current_from_slopes(fd, Q(3, 3))
    assert c.spine_at(0) == 1 and not c.support()
    z = Q(3, 10)
    assert (alpha_eval(c, Q(3, 3), z).value - z).is_exact_zero


def test_alpha_matches_factored_function_up_to_scalar():
    rng = random.Random(33)
    q = Q(5, 5)
    for _ in range(8):
        c = seeded_window_current(rng)
        fd = factored_alpha(c)
        z1, z2 = Q(5, 2), Q(5, 13)
        a1, a2 = alpha_eval(c, q, z1).value, alpha_eval(c, q, z2).value
        f1, f2 = fd.value(q, z1), fd.value(q, z2)
        if f1.is_exact_zero or f2.is_exact_zero:
            continue
        # alpha(c)/f is a nonzero constant
        assert (a1 * f2 - a2 * f1).is_exact_zero


# ------------------------------------------------------------ delta


def test_delta_of_x_current_at_one():
    q = Q(3, 3)
    res = delta_eval(current_x(), q, Q(3, 1))
    assert (res.value - 1).is_exact_zero


def test_delta_zero_current():
    res = delta_eval(Current.zero(), Q(3, 3), Q(3, 5))
    assert res.value.is_exact_zero


def test_delta_linearity():
    rng = random.Random(41)
    q = Q(3, 3)
    z = Q(3, 5)
    for _ in range(10):
        a = seeded_window_current(rng)
        b = seeded_window_current(rng)
        lhs = delta_eval(a + b, q, z).value
        rhs = delta_eval(a, q, z).value + delta_eval(b, q, z).value
        assert (lhs - rhs).is_exact_zero


def test_delta_pole_marker():
    q = Q(3, 3)
    c = Current.windowed({2: 1})
    res = delta_eval(c, q, q * q)
    assert res.is_pole and res.pole_ord == -1


def test_differential_eval_wrapper():
    q = Q(3, 3)
    ev = DifferentialEval(current_x(), q)
    assert (ev.at(Q(3, 2)).value - Fraction(1, 2)).is_exact_zero


def test_delta_periodic_truncation_certificate():
    # periodic current with cusps: compare the J-truncation against a much
    # deeper truncation; the difference must respect the certificate
    q = Q(3, 3)
    c = Current.periodic(2, {0: 1, 1: -1}, spine0=0)
    z = Q(3, 5)
    shallow = delta_eval(c, q, z, J=4)
    deep = delta_eval(c, q, z, J=40)
    assert (shallow.value - deep.value).exact_valuation >= shallow.error_valuation


# ----------------------------------------------------- Moebius-Lambert


def test_delta_at_one_equals_q_within_tail():
    q = Q(3, 3)
    res = delta_at_one(1, q, 10)
    assert res.error_valuation == 11
    assert (res.value - q).exact_valuation >= 11


def test_delta_at_one_list_example_n2():
    for qr in (2, 3, 5):
        q = Q(5, 5) if qr == 5 else Q(qr, qr)
        res = delta_at_one(2, q, 2)
        target = q ** 2
        assert (res.value - target).exact_valuation >= 3 * 2 * q.exact_valuation


def test_delta_at_one_empty_window():
    q = Q(3, 3)
    res = delta_at_one(2, q, 0)
    assert res.value.is_exact_zero
    assert res.error_valuation == 2 * q.exact_valuation


def test_delta_at_one_matches_current_route():
    q = Q(5, 5)
    for n in (1, 2, 3):
        via_sum = delta_at_one(n, q, 6)
        via_current = delta_eval(moebius_current(n, 6), q, PadicNumber.one(5))
        assert (via_sum.value - via_current.value).is_exact_zero


def test_poly_current_eval_monomials():
    q = Q(3, 3)
    res = poly_current_eval([0, 1], q, 12)  # P = X
    assert (res.value - q).exact_valuation >= res.error_valuation
    res = poly_current_eval([1], q, 12)  # P = 1
    assert (res.value - 1).is_exact_zero
    res = poly_current_eval([0, -1, 1], q, 12)  # P = X^2 - X
    target = q ** 2 - q
    assert (res.value - target).exact_valuation >= res.error_valuation


# ------------------------------------------------------------ theta


def test_theta_constant_function():
    q = Q(3, 3)
    fd = FactoredFunction(0, ())
    res = theta_product(fd, q, 1, Q(3, 5), Q(3, 2), 6)
    assert (res.value - 1).is_exact_zero
    assert res.error_valuation is INF


def test_theta_normalization_at_base_point():
    q = Q(3, 3)
    fd = FactoredFunction(0, ((0, 1), (1, -1)))
    z0 = Q(3, 2)
    res = theta_product(fd, q, 2, z0, z0, 6)
    assert (res.value - 1).is_exact_zero


def test_theta_automorphy_direct_comparison():
    q = Q(3, 3)
    fd = FactoredFunction(0, ((1, 1), (2, -1)))
    z0 = Q(3, 2)
    const = theta_automorphy_constant(fd, q)
    for l in (1, 2):
        for zr in (5, 7):
            z = Q(3, zr)
            th = theta_product(fd, q, l, z, z0, 8)
            sh = theta_product(fd, q, l, (q ** l) * z, z0, 8)
            ratio = sh.value / th.value
            rel = min(th.error_valuation - th.value.exact_valuation,
                      sh.error_valuation - sh.value.exact_valuation)
            bound = rel + ratio.exact_valuation
            # the ratio is the constant f(0)/f(inf), independent of l
            assert (ratio - const).exact_valuation >= bound


def test_theta_requires_degree_zero():
    q = Q(3, 3)
    with pytest.raises(ValueError):
        theta_product(FactoredFunction(1, ()), q, 1, Q(3, 5), Q(3, 2), 4)
    with pytest.raises(ValueError):
        theta_product(FactoredFunction(0, ((1, 2),)), q, 1, Q(3, 5), Q(3, 2), 4)


def test_theta_pole_collision():
    q = Q(3, 3)
    fd = FactoredFunction(0, ((1, 1), (2, -1)))
    with pytest.raises(PoleCollisionError):
        theta_product(fd, q, 1, q ** 4, Q(3, 2), 6)  # q^4 = q^1 * q^(3): translate hit


def test_theta_tail_not_certifiable():
    # deep grid zeros with a tiny window cannot certify the tail
    q = Q(3, 3)
    fd = FactoredFunction(0, ((6, 1), (-6, -1)))
    with pytest.raises(TailCertificateError):
        theta_product(fd, q, 1, Q(3, 5), Q(3, 2), 0)


# ------------------------------------------------------------ ladder


@pytest.mark.parametrize("ord_target", [0, 1, 2])
def test_ladder_ord_matches_dlog(ord_target):
    q = Q(3, 3)
    z = Q(3, 5)
    c = seed_current_with_ord(q, z, ord_target, grid=(1, 2, 3))
    germ = alpha_germ(c, q, z)
    assert dlog_ord(germ) == ord_target
    res = ladder_ord(c, q, z, nmax=5)
    assert not res.pole
    assert res.value == ord_target + 1
    # inf-index grows affinely in n with slope e0 = ord + 1
    steps = [res.table[i + 1][1] - res.table[i][1] for i in range(len(res.table) - 1)]
    assert steps[-2:] == [ord_target + 1, ord_target + 1]


def test_ladder_ord_cusp_short_circuit():
    q = Q(3, 3)
    c = Current.windowed({2: 3})
    res = ladder_ord(c, q, q ** 2, nmax=4)
    assert res.pole and res.value == 0


def test_tate_curve_validation():
    with pytest.raises(ValueError):
        TateCurve(Q(3, 1))
    E = TateCurve(Q(3, 9))
    assert E.p == 3 and (E.grid(2) - Q(3, 81)).is_exact_zero
