import math
from fractions import Fraction

import pytest

from pyjama.gaussian import (
    GaussianInt,
    GaussianRational,
    P5BAR,
    P13BAR,
    THETA5,
    abs_at,
    in_A,
)
from pyjama.padic import PadicNumber, PrecisionError, embed
from pyjama.approx import (
    CosetSpec,
    circle_density,
    coset_element,
    semigroup_density,
    strong_approx,
    strong_approx_3way,
)

from _util import rng, random_a_element

F = Fraction


def _complex_of(q):
    return complex(float(q.re), float(q.im))


def _padic_residual(q, target, check_k):
    image = embed(q, target.p, check_k)
    return (image - target).abs_bound()


# ---------------------------------------------------------------------------
# strong approximation, one finite site
# ---------------------------------------------------------------------------


def test_strong_approx_identity_targets():
    q0 = GaussianRational(GaussianInt(3, -1), 5)
    z = _complex_of(q0)
    b = embed(q0, 5, 12)
    q = strong_approx(z, b, F(1, 2))
    assert in_A(q)
    assert abs(_complex_of(q) - z) <= 0.5
    assert _padic_residual(q, b, 14) <= F(1, 2)


def test_strong_approx_zero_complex_target():
    b = PadicNumber.from_rational(F(1, 5), 5, 10)
    q = strong_approx(0j, b, F(1, 10))
    assert in_A(q)
    assert abs(_complex_of(q)) <= 0.1
    assert _padic_residual(q, b, 12) <= F(1, 10)


def test_strong_approx_loose_tolerance_is_nearest_integer():
    b = PadicNumber.from_rational(7, 5, 8)
    z = 0.4 + 0.3j
    q = strong_approx(z, b, F(2))
    assert q.is_gaussian_int()
    assert abs(_complex_of(q) - z) <= 2.0
    assert _padic_residual(q, b, 10) <= 2


def test_strong_approx_13_adic_variant():
    b = PadicNumber.from_rational(F(4, 13), 13, 10)
    q = strong_approx(1 + 1j, b, F(1, 20))
    assert in_A(q)
    assert abs(_complex_of(q) - (1 + 1j)) <= 0.05
    assert _padic_residual(q, b, 12) <= F(1, 20)


def test_strong_approx_random_targets():
    r_ = rng(31)
    for _ in range(25):
        z = complex(r_.uniform(-3, 3), r_.uniform(-3, 3))
        target = random_a_element(r_, max_coeff=9, max_exp=2)
        b = embed(target, 5, 16)
        q = strong_approx(z, b, F(1, 50))
        assert in_A(q)
        assert abs(_complex_of(q) - z) <= 1 / 50
        assert _padic_residual(q, b, 18) <= F(1, 50)


def test_strong_approx_precision_errors():
    shallow = PadicNumber.from_unit(5, 2, 0, 7)  # unit known mod 5^2 only
    with pytest.raises(PrecisionError):
        strong_approx(0j, shallow, F(1, 5**4))
    blurred = PadicNumber.zero(5, 6, 1)  # only known to be O(5^1)
    with pytest.raises(PrecisionError):
        strong_approx(0j, blurred, F(1, 25))
    with pytest.raises(ValueError):
        strong_approx(0j, PadicNumber.zero(5, 6), F(0))


# ---------------------------------------------------------------------------
# strong approximation, both finite sites at once
# ---------------------------------------------------------------------------


def test_three_way_all_zero_targets():
    a = PadicNumber.zero(5, 8)
    b = PadicNumber.zero(13, 8)
    q = strong_approx_3way(0j, a, b, F(1, 100))
    assert q == GaussianRational(0)


def test_three_way_mixed_targets():
    a = PadicNumber.from_rational(F(1, 5), 5, 10)
    b = PadicNumber.zero(13, 10)
    q = strong_approx_3way(0j, a, b, F(1, 10))
    assert abs(_complex_of(q)) <= 0.1
    assert _padic_residual(q, a, 12) <= F(1, 10)
    assert _padic_residual(q, b, 12) <= F(1, 10)
    cleared = q
    while cleared.den % 7 == 0:
        cleared = cleared * 7
    assert in_A(cleared)


def test_three_way_exact_images():
    q0 = GaussianRational(GaussianInt(2, 5), 7)
    z = _complex_of(q0)
    a = embed(q0, 5, 12)
    b = embed(q0, 13, 12)
    q = strong_approx_3way(z, a, b, F(1, 30))
    assert abs(_complex_of(q) - z) <= 1 / 30
    assert _padic_residual(q, a, 14) <= F(1, 30)
    assert _padic_residual(q, b, 14) <= F(1, 30)


def test_three_way_random_targets():
    r_ = rng(32)
    for _ in range(10):
        z = complex(r_.uniform(-2, 2), r_.uniform(-2, 2))
        a = embed(random_a_element(r_, max_coeff=6, max_exp=1), 5, 14)
        b = embed(random_a_element(r_, max_coeff=6, max_exp=1), 13, 14)
        q = strong_approx_3way(z, a, b, F(1, 40))
        assert abs(_complex_of(q) - z) <= 1 / 40
        assert _padic_residual(q, a, 16) <= F(1, 40)
        assert _padic_residual(q, b, 16) <= F(1, 40)


# ---------------------------------------------------------------------------
# coset-constrained small elements
# ---------------------------------------------------------------------------


def _full_group_spec(p=5, m=1, k=3):
    one = PadicNumber.from_rational(1, p, k)
    return CosetSpec(p=p, m=m, representative=one, precision_k=k)


def test_coset_spec_membership_basics():
    H = _full_group_spec()
    assert H.contains(THETA5)
    assert H.contains(THETA5**3)
    one = PadicNumber.from_rational(1, 5, 3)
    assert H.contains(one)
    with pytest.raises(PrecisionError):
        H.contains(PadicNumber.from_rational(1, 5, 2))  # too few digits
    assert not H.contains(PadicNumber.zero(5, 3))
    with pytest.raises(PrecisionError):
        H.contains(PadicNumber.zero(5, 3, 1))
    with pytest.raises(ValueError):
        CosetSpec(p=7, m=1, representative=one, precision_k=3)
    with pytest.raises(ValueError):
        CosetSpec(p=5, m=0, representative=one, precision_k=3)


def test_coset_spec_detects_nonmembers():
    # index-two image: squares of the generators cannot reach an odd power
    # of the uniformizing rotation
    one = PadicNumber.from_rational(1, 5, 3)
    H = CosetSpec(p=5, m=2, representative=one, precision_k=3)
    assert H.contains(THETA5**2)
    assert not H.contains(THETA5)


def test_coset_element_full_group():
    H = _full_group_spec()
    r = coset_element(1, 1, H)
    assert in_A(r)
    assert r.abs2() <= 1
    assert abs_at(r, P13BAR) <= 1
    assert abs_at(r, P5BAR) >= 1
    assert H.contains(r)


def test_coset_element_shrinking_mu():
    H = _full_group_spec()
    sizes = []
    for mu in (F(1), F(1, 10), F(1, 100)):
        r = coset_element(mu, 1, H)
        assert r.abs2() <= mu * mu
        assert abs_at(r, P13BAR) <= mu
        assert abs_at(r, P5BAR) >= 1
        assert H.contains(r)
        sizes.append(r.abs2())
    assert sizes[2] < sizes[1] < sizes[0]


def test_coset_element_demanding_both_bounds():
    H = _full_group_spec()
    mu, nu = F(1, 1000), F(10**6)
    r = coset_element(mu, nu, H)
    assert r.abs2() <= mu * mu
    assert abs_at(r, P13BAR) <= mu
    assert abs_at(r, P5BAR) >= nu
    assert H.contains(r)


def test_coset_element_13_site_and_proper_coset():
    one = PadicNumber.from_rational(1, 13, 2)
    H = CosetSpec(p=13, m=2, representative=one, precision_k=2)
    r = coset_element(F(1, 5), F(100), H)
    assert in_A(r)
    assert r.abs2() <= F(1, 25)
    assert abs_at(r, P5BAR) <= F(1, 5)
    assert abs_at(r, P13BAR) >= 100
    assert H.contains(r)
    with pytest.raises(ValueError):
        coset_element(0, 1, H)


# ---------------------------------------------------------------------------
# density of {eta * 2^r * 3^s} and of rotation orbits on the circle
# ---------------------------------------------------------------------------


def test_semigroup_density_tiny_sample():
    report = semigroup_density(F(1, 2), F(1, 2))
    assert report.sample == (F(1, 2), F(1))
    assert report.max_gap == F(1, 2)
    assert report.witness_pair == (F(0), F(1, 2))
    assert report.is_dense is True


def test_semigroup_density_small_scale():
    report = semigroup_density(F(1, 10**6), F(1, 10))
    assert report.is_dense is True
    # the verdict is reproducible from the sample
    pts = sorted(report.sample)
    gaps = [pts[0]] + [b - a for a, b in zip(pts, pts[1:])] + [1 - pts[-1]]
    assert max(gaps) == report.max_gap
    lo, hi = report.witness_pair
    assert hi - lo == report.max_gap
    for w in report.witness_pair:
        assert w in (F(0), F(1)) or w in report.sample


def test_semigroup_density_endpoint_gap():
    # with eta just below 1 the sample is {eta} and the left gap dominates
    report = semigroup_density(F(9, 10), F(1, 2))
    assert report.sample == (F(9, 10),)
    assert report.max_gap == F(9, 10)
    assert report.witness_pair == (F(0), F(9, 10))
    assert report.is_dense is False


def test_semigroup_density_threshold_scan():
    # the coarsest scale at which delta-density first holds shrinks with delta
    scales = [F(1, 2**j) for j in range(1, 30)]
    coarsest = []
    for delta in (F(1, 2), F(1, 5), F(1, 20)):
        ok = [eta for eta in scales if semigroup_density(eta, delta).is_dense]
        coarsest.append(max(ok))
    assert coarsest[0] >= coarsest[1] >= coarsest[2]
    with pytest.raises(ValueError):
        semigroup_density(F(3, 2), F(1, 2))
    with pytest.raises(ValueError):
        semigroup_density(F(1, 2), F(2))


def test_circle_density_single_point():
    report = circle_density(THETA5, 1 + 0j, 0)
    assert report.max_gap == pytest.approx(2 * math.pi)


def test_circle_density_aperiodic_rotation():
    report = circle_density(THETA5, 1 + 0j, 200)
    assert report.max_gap < 2 * math.pi / 20
    longer = circle_density(THETA5, 1 + 0j, 1000)
    assert longer.max_gap <= report.max_gap
    lo, hi = report.witness_pair
    gap = (hi - lo) % (2 * math.pi)
    assert gap == pytest.approx(report.max_gap)


def test_circle_density_rotation_invariance():
    base = circle_density(THETA5, 2 + 1j, 150)
    spun = circle_density(THETA5, (2 + 1j) * complex(math.cos(0.7), math.sin(0.7)), 150)
    assert spun.max_gap == pytest.approx(base.max_gap, abs=1e-9)


def test_circle_density_rejects_torsion():
    with pytest.raises(ValueError):
        circle_density(GaussianRational(GaussianInt(0, 1)), 1 + 0j, 10)
    with pytest.raises(ValueError):
        circle_density(GaussianRational(GaussianInt(-1, 0)), 1 + 0j, 10)
    with pytest.raises(ValueError):
        circle_density(GaussianRational(GaussianInt(1, 1)), 1 + 0j, 10)
    with pytest.raises(ValueError):
        circle_density(THETA5, 0j, 10)
