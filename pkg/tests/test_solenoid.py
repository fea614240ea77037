from fractions import Fraction

import pytest

from pyjama.gaussian import (
    GaussianInt,
    GaussianRational,
    P5BAR,
    P13BAR,
    THETA5,
    THETA13,
    abs_at,
    P5,
    P13,
    in_A,
    theta_power,
    theta_set,
    unit_group_order,
)
from pyjama.padic import PadicNumber, PrecisionError, gauss_frac_part
from pyjama.solenoid import (
    ExactPoint,
    SolenoidPoint,
    act,
    classify_point,
    distance_upper,
    evaluate,
    orbit_eval_rows,
    orbit_eval_sweep,
    period_exponent,
    periodic_dense_set,
    reduce_to_fundamental,
    stripe_membership,
    torsion_to_periodic,
)

from _util import rng, random_a_element, random_gaussian_rational


def gr(re, im=0, den=1):
    return GaussianRational(GaussianInt(re, im), den)


def test_modes_and_constructors():
    x = SolenoidPoint.zero()
    assert x.exact_mode
    assert x.a.is_zero and x.b.is_zero
    y = SolenoidPoint(0.25 + 0.5j, PadicNumber.zero(5, 8), PadicNumber.zero(13, 8))
    assert not y.exact_mode
    w = gr(1, 1, 2)
    fc = SolenoidPoint.from_complex(w)
    assert fc.exact_mode and fc.z == -w
    assert SolenoidPoint.from_complex(0.5 + 0.0j).z == -0.5 - 0.0j
    with pytest.raises(TypeError):
        SolenoidPoint("x", PadicNumber.zero(5, 4), PadicNumber.zero(13, 4))
    with pytest.raises(TypeError):
        SolenoidPoint(0, PadicNumber.zero(13, 4), PadicNumber.zero(13, 4))
    # immutability and value semantics
    with pytest.raises(AttributeError):
        x.unexpected = 1
    assert SolenoidPoint.zero() == SolenoidPoint.zero()
    assert hash(SolenoidPoint.zero()) == hash(SolenoidPoint.zero())
    assert str(fc) == f"({-w}, {PadicNumber.zero(5, 24)}, {PadicNumber.zero(13, 24)})"


def test_kernel_identity_random():
    r_ = rng(11)
    for _ in range(60):
        q = random_a_element(r_)
        r = random_a_element(r_)
        assert ExactPoint(q).evaluate(r) == 0
        assert evaluate(SolenoidPoint.diagonal(q, 32), r) == 0


def test_evaluate_from_complex_and_pins():
    r_ = rng(12)
    for _ in range(40):
        w = random_gaussian_rational(r_)
        r = random_a_element(r_)
        assert evaluate(SolenoidPoint.from_complex(w), r) == (w * r).re % 1
    # the pinned triple (0, 1/5, 0) pairs with 1 to 1/5
    x = SolenoidPoint(0, Fraction(1, 5), 0)
    assert evaluate(x, 1) == Fraction(1, 5)
    assert not stripe_membership(x, 1, Fraction(1, 5))
    assert stripe_membership(x, 1, Fraction(1, 4))
    # and a purely complex 1/2 point misses the width-1/4 stripe
    assert not stripe_membership(SolenoidPoint.from_complex(gr(1, 0, 2)), 1, Fraction(1, 4))
    assert stripe_membership(SolenoidPoint.zero(), THETA5, Fraction(1, 100))
    with pytest.raises(ValueError):
        stripe_membership(x, 1, Fraction(1, 2))
    with pytest.raises(ValueError):
        evaluate(x, gr(1, 0, 3))  # 1/3 is not in the base ring


def test_act_examples():
    q = gr(1, 1, 2)
    x = SolenoidPoint.diagonal(q)
    assert act(1, x) == x
    # the generator rotation moves the half-integer diagonal point to an
    # equivalent representative: the difference of diagonals is in the ring
    moved = THETA5 * q - q
    assert moved == gr(-2, 2) / GaussianRational(P5BAR.generator)
    assert in_A(moved)
    assert ExactPoint(THETA5 * q).same_class(ExactPoint(q))
    # action on purely complex points is plain rotation
    r_ = rng(13)
    for _ in range(20):
        w = random_gaussian_rational(r_)
        r = random_a_element(r_)
        lhs = evaluate(act(THETA5, SolenoidPoint.from_complex(w)), r)
        rhs = evaluate(SolenoidPoint.from_complex(THETA5 * w), r)
        assert lhs == rhs
    with pytest.raises(ValueError):
        act(gr(1, 0, 3), x)


def test_action_evaluation_adjunction():
    r_ = rng(14)
    thetas = theta_set(2)
    for _ in range(15):
        q = random_a_element(r_)
        w = random_gaussian_rational(r_)
        x = SolenoidPoint.diagonal(q, 32) + SolenoidPoint.from_complex(w, 32)
        r = random_a_element(r_)
        theta = thetas[r_.randrange(len(thetas))]
        assert evaluate(act(theta, x), r) == evaluate(x, theta * r)


def test_estar_pullback():
    r_ = rng(15)
    thetas = theta_set(2)
    eps = Fraction(1, 4)
    for _ in range(25):
        w = random_gaussian_rational(r_)
        x = SolenoidPoint.from_complex(w, 32)
        theta = thetas[r_.randrange(len(thetas))]
        assert stripe_membership(x, theta, eps) == stripe_membership(act(theta, x), 1, eps)


def test_exact_point_pairing_matches_solenoid():
    r_ = rng(16)
    for _ in range(25):
        q = random_gaussian_rational(r_)
        w = random_gaussian_rational(r_)
        r = random_a_element(r_)
        p = ExactPoint(q, w)
        assert p.evaluate(r) == evaluate(p.to_solenoid(40), r)


def test_reduce_trivial_and_pinned():
    x = SolenoidPoint.zero()
    out, r = reduce_to_fundamental(x)
    assert r == 0 and out == x

    x = SolenoidPoint(0, Fraction(1, 5), 0)
    out, r = reduce_to_fundamental(x)
    assert in_A(r)
    assert out.a.valuation is None or out.a.valuation >= 0
    assert out.b.valuation is None or out.b.valuation >= 0
    assert Fraction(0) <= out.z.re < 1 and Fraction(0) <= out.z.im < 1
    # the subtracted element hits the 5-adic fractional part through the
    # halved diagonal; its raw embedding lands on 2/5 rather than 1/5
    assert gauss_frac_part(r / 2, 5) == Fraction(1, 5)
    assert gauss_frac_part(r, 5) == Fraction(2, 5)
    assert gauss_frac_part(r / 2, 13) == 0


def test_reduce_diagonal_lands_on_zero_class():
    r_ = rng(17)
    for _ in range(12):
        q = random_a_element(r_)
        out, r = reduce_to_fundamental(SolenoidPoint.diagonal(q, 32))
        for _ in range(4):
            s = random_a_element(r_)
            assert evaluate(out, s) == 0
        assert in_A(r)
        assert Fraction(0) <= out.z.re < 1 and Fraction(0) <= out.z.im < 1


def test_reduce_float_mode():
    x = SolenoidPoint(2.75 - 0.5j, Fraction(7, 25), Fraction(1, 13))
    out, r = reduce_to_fundamental(x)
    assert in_A(r)
    assert not out.exact_mode
    assert 0 <= out.z.real < 1 and 0 <= out.z.imag < 1
    assert out.a.valuation is None or out.a.valuation >= 0
    assert out.b.valuation is None or out.b.valuation >= 0


def test_reduce_precision_error():
    deep = PadicNumber.from_rational(Fraction(1, 5**6), 5, 4)
    x = SolenoidPoint(0, deep, PadicNumber.zero(13, 4))
    with pytest.raises(PrecisionError):
        reduce_to_fundamental(x)


def test_classify_pins():
    res = classify_point(gr(1, 1, 2))
    assert res.kind == "periodic" and res.is_periodic
    assert (res.abs_p5, res.abs_p13) == (Fraction(1), Fraction(1))
    res = classify_point(GaussianRational(1) / GaussianRational(P5.generator))
    assert res.kind == "torsion_only"
    assert res.abs_p5 == Fraction(5) and res.abs_p13 == Fraction(1)
    assert classify_point(0).is_periodic
    assert classify_point(ExactPoint(gr(1, 1, 2))).is_periodic
    with pytest.raises(ValueError):
        classify_point(ExactPoint(gr(1), gr(1, 1)))


def test_torsion_to_periodic():
    assert torsion_to_periodic(gr(1, 1, 2)) == 1
    assert torsion_to_periodic(0) == 1
    q = GaussianRational(1) / GaussianRational(P5.generator)
    assert torsion_to_periodic(q) == THETA5
    assert THETA5 * q == GaussianRational(1) / GaussianRational(P5BAR.generator)
    q = GaussianRational(1) / (
        GaussianRational(P5.generator) ** 2 * GaussianRational(P13.generator)
    )
    assert torsion_to_periodic(q) == theta_power(2, 1)
    r_ = rng(18)
    for _ in range(30):
        q = random_gaussian_rational(r_, max_den=40)
        theta = torsion_to_periodic(q)
        assert classify_point(theta * q).is_periodic


def _brute_period(q, cap):
    one = GaussianRational(1)
    for m in range(1, cap + 1):
        if in_A((theta_power(m, 0) - one) * q) and in_A((theta_power(0, m) - one) * q):
            return m
    raise AssertionError("no period within cap")


def test_period_exponent():
    assert period_exponent(0) == 1
    q = gr(1, 1, 2)
    assert period_exponent(q) == 1
    assert in_A((THETA5 - 1) * q) and in_A((THETA13 - 1) * q)
    with pytest.raises(ValueError):
        period_exponent(GaussianRational(1) / GaussianRational(P5.generator))
    r_ = rng(19)
    for den in (2, 3, 7):
        bound = unit_group_order(den)
        for _ in range(4):
            q = gr(r_.randrange(den), r_.randrange(den), den)
            m = period_exponent(q)
            assert bound % m == 0
            assert m == _brute_period(q, bound)


def test_periodic_dense_set():
    points, m = periodic_dense_set(1)
    assert len(points) == 49
    assert 48 % m == 0
    seen = {(p.q.num.re, p.q.num.im, p.q.den) for p in points}
    assert len(seen) == 49
    t5, t13 = theta_power(m, 0), theta_power(0, m)
    for p in points:
        assert act(t5, p).same_class(p)
        assert act(t13, p).same_class(p)
    with pytest.raises(ValueError):
        periodic_dense_set(0)


def test_orbit_rows_and_sweep():
    rows = orbit_eval_rows(SolenoidPoint.zero(), 1, 2)
    assert len(rows) == 9
    assert all(v == 0 for _, _, v in rows)
    assert {(r, s) for r, s, _ in rows} == {(r, s) for r in range(3) for s in range(3)}
    assert orbit_eval_sweep(SolenoidPoint.zero(), 1, 2) == 1
    # a unit-size complex point fills in the circle as the sweep grows
    w = SolenoidPoint.from_complex(1.0 + 0.0j)
    g10 = orbit_eval_sweep(w, 1, 10)
    g30 = orbit_eval_sweep(w, 1, 30)
    assert g30 < g10 < 1
    # a radius-1/4 point pairs into [-1/4, 1/4] only: a fixed gap remains
    small = SolenoidPoint.from_complex(0.25 + 0.0j)
    assert orbit_eval_sweep(small, 1, 20) >= 0.25
    # exact points sweep exactly
    gap = orbit_eval_sweep(SolenoidPoint.from_complex(gr(1, 0, 4), 16), 1, 6)
    assert isinstance(gap, Fraction) and gap >= Fraction(1, 4)
    with pytest.raises(ValueError):
        orbit_eval_sweep(w, 0, 3)


def test_distance_upper():
    x = SolenoidPoint.diagonal(gr(3, 5, 7), 16)
    assert distance_upper(x, x, 1) == 0.0
    r_ = rng(20)
    for _ in range(6):
        w = random_gaussian_rational(r_, max_coeff=3, max_den=4)
        d = distance_upper(SolenoidPoint.from_complex(w, 8), SolenoidPoint.zero(8), 1)
        assert d <= abs(complex(float(w.re), float(w.im))) + 1e-12
    x = SolenoidPoint(0, Fraction(1, 5), 0)
    zero = SolenoidPoint.zero()
    d2 = distance_upper(x, zero, 2)
    assert d2 <= 5.0
    assert d2 < 5.0  # shifting by ring elements improves on the raw triple
    assert distance_upper(x, zero, 1) >= d2
    # translation invariance for exact shifts
    t = SolenoidPoint.diagonal(gr(1, 2, 5), 24)
    y = SolenoidPoint.from_complex(gr(1, 1, 3), 24)
    lhs = distance_upper(x + t, y + t, 1)
    rhs = distance_upper(x, y, 1)
    assert abs(lhs - rhs) < 1e-9


def test_torsion_orbits_are_finite():
    # exact orbit enumeration: the orbit of a denominator-n diagonal point
    # under the full rotation grid has at most |Z[i]/n| distinct classes
    for q, n in ((gr(1, 1, 3), 3), (gr(1, 0, 2), 2), (gr(2, 3, 7), 7)):
        orbit = []
        for theta in theta_set(6):
            p = act(theta, ExactPoint(q))
            if not any(p.same_class(o) for o in orbit):
                orbit.append(p)
        assert len(orbit) <= n * n
