"""Constructive approximation and density routines.

Every routine here returns a *checked certificate*: approximation outputs have
their residual bounds re-verified (exactly, or at the declared p-adic
precision) before they are handed back, and density reports carry the witness
pair realizing the maximal gap so the verdict can be reproduced.

The simultaneous-approximation construction works in the ring generated by
Gaussian integers and the inverses of the two conjugate primes ``1 - 2i`` and
``2 - 3i`` (plus the rational prime 7 for the three-site variant): a target
residue class pins the numerator modulo a sublattice of the Gaussian
integers, and the complex target is then met by an exact closest-vector
rounding inside that sublattice, which is just a rescaled copy of the
Gaussian-integer grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .gaussian import (
    GaussianInt,
    GaussianRational,
    P5BAR,
    P13BAR,
    THETA5,
    THETA13,
    abs_at,
    as_gaussian_rational,
    in_A,
)
from .padic import PadicNumber, PrecisionError, embed

__all__ = [
    "CosetSpec",
    "DensityReport",
    "strong_approx",
    "strong_approx_3way",
    "coset_element",
    "semigroup_density",
    "circle_density",
]


_BAR = {5: P5BAR, 13: P13BAR}
_OTHER_PRIME = {5: 13, 13: 5}


def _to_complex(q: GaussianRational) -> complex:
    return complex(float(q.re), float(q.im))


# ---------------------------------------------------------------------------
# multiplicative cosets at one prime site
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _unit_subgroup(p: int, m: int, k: int) -> frozenset:
    """Subgroup of (Z/p^k)^x generated by the unit parts of the m-th powers
    of the two standard rotations, viewed p-adically."""
    mod = p**k
    gens = []
    for theta in (THETA5, THETA13):
        # the unit part of the embedded rotation, with any uniformizer power
        # stripped, is exactly its stored digit expansion
        gens.append(pow(embed(theta, p, k).unit_digits, m, mod))
    group = {1}
    frontier = [1]
    while frontier:
        cur = frontier.pop()
        for g in gens:
            nxt = (cur * g) % mod
            if nxt not in group:
                group.add(nxt)
                frontier.append(nxt)
    return frozenset(group)


@dataclass(frozen=True)
class CosetSpec:
    """A coset ``representative * J`` of the finite-index subgroup J of the
    p-adic multiplicative group generated (topologically) by the m-th powers
    of the two standard rotations.

    Membership is decided at the stored precision: a valuation congruence
    modulo ``m`` plus unit-part membership in the subgroup enumerated modulo
    ``p**precision_k``.
    """

    p: int
    m: int
    representative: PadicNumber
    precision_k: int

    def __post_init__(self):
        if self.p not in (5, 13):
            raise ValueError("the prime site must lie over 5 or 13")
        if self.m < 1:
            raise ValueError("generation exponent must be positive")
        if self.precision_k < 1:
            raise ValueError("precision must be at least one digit")
        rep = self.representative
        if not isinstance(rep, PadicNumber) or rep.p != self.p:
            raise TypeError("representative must be a p-adic number at the "
                            "same prime")
        if rep.is_zero:
            raise ValueError("a multiplicative coset needs an invertible "
                             "representative")
        if rep.precision_k < self.precision_k:
            raise PrecisionError(
                "representative carries fewer digits than the membership "
                "precision requires"
            )

    def unit_subgroup(self) -> frozenset:
        return _unit_subgroup(self.p, self.m, self.precision_k)

    def contains(self, x) -> bool:
        """Decide membership of ``x`` (a p-adic number, or any exact value
        embeddable at this prime) at this spec's precision."""
        if not isinstance(x, PadicNumber):
            q = as_gaussian_rational(x)
            if q is None:
                raise TypeError(f"cannot test membership of {x!r}")
            x = embed(q, self.p, self.precision_k)
        if x.p != self.p:
            raise ValueError("value lives at a different prime")
        if x.is_zero:
            if x.zero_abs is None:
                return False
            raise PrecisionError(
                "value is indistinguishable from zero at its precision; "
                "coset membership is undetermined"
            )
        if x.precision_k < self.precision_k:
            raise PrecisionError(
                "value carries fewer digits than the membership precision"
            )
        rep = self.representative
        if (x.valuation - rep.valuation) % self.m != 0:
            return False
        mod = self.p**self.precision_k
        ratio = x.unit_digits * pow(rep.unit_digits, -1, mod) % mod
        return ratio in self.unit_subgroup()


# ---------------------------------------------------------------------------
# density reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DensityReport:
    """Outcome of a density scan: the scale parameter, the maximal gap of the
    sorted sample, and the two consecutive points realizing it."""

    parameter: object
    max_gap: object
    witness_pair: tuple
    threshold: object = None
    sample: tuple = ()

    @property
    def is_dense(self):
        """Verdict against the threshold (None when no threshold was set)."""
        if self.threshold is None:
            return None
        return self.max_gap <= self.threshold

    def csv_rows(self) -> list[tuple]:
        rows = [("parameter", str(self.parameter)),
                ("max_gap", str(self.max_gap)),
                ("witness_lo", str(self.witness_pair[0])),
                ("witness_hi", str(self.witness_pair[1]))]
        if self.threshold is not None:
            rows.append(("threshold", str(self.threshold)))
            rows.append(("dense", str(self.is_dense)))
        return rows


# ---------------------------------------------------------------------------
# strong approximation
# ---------------------------------------------------------------------------


def _min_exponent(base: int, bound: Fraction) -> int:
    """Least k >= 0 with base**(-k) <= bound."""
    k = 0
    while Fraction(base) ** (-k) > bound:
        k += 1
    return k


def _integer_lift(x: PadicNumber, exponent: int) -> int:
    """The integer in [0, p**exponent) congruent to ``x`` (requires ``x``
    integral and known to at least that many digits)."""
    mod = x.p**exponent
    if x.is_zero:
        if x.zero_abs is not None and x.zero_abs < exponent:
            raise PrecisionError("zero marker too coarse for the lift")
        return 0
    if x.valuation < 0:
        raise ValueError("cannot lift a non-integral value")
    if x.valuation + x.precision_k < exponent:
        raise PrecisionError("not enough digits for the integer lift")
    return x.unit_digits * x.p**x.valuation % mod


def _check_target_precision(b: PadicNumber, k: int, delta: Fraction) -> None:
    if b.is_zero:
        if b.zero_abs is not None and Fraction(b.p) ** (-b.zero_abs) > delta:
            raise PrecisionError(
                "target is only known to be O(%d^%d), coarser than the "
                "requested tolerance" % (b.p, b.zero_abs)
            )
    elif b.valuation + b.precision_k < k:
        raise PrecisionError(
            "target carries too few digits for the requested tolerance"
        )


def _padic_residual_ok(q: GaussianRational, b: PadicNumber, k: int,
                       delta: Fraction) -> bool:
    image = embed(q, b.p, k + 2)
    return (image - b).abs_bound() <= delta


def strong_approx(z: complex, b: PadicNumber, delta) -> GaussianRational:
    """Find q in the base ring with |q - z| <= delta in the complex plane and
    |q - b| <= delta at the prime of ``b`` (5-adically or 13-adically).

    Both bounds are re-verified before returning; a target known to fewer
    digits than the tolerance requires raises PrecisionError.
    """
    delta = Fraction(delta)
    if delta <= 0:
        raise ValueError("tolerance must be positive")
    if not isinstance(b, PadicNumber):
        raise TypeError("the local target must be a p-adic number")
    z = complex(z)
    p = b.p
    other = _OTHER_PRIME[p]
    bar = _BAR[p].generator
    other_bar = _BAR[other].generator

    k = _min_exponent(p, delta)
    _check_target_precision(b, k, delta)
    j = 0 if b.is_zero else max(0, -b.valuation)
    K = k + j

    f = 0
    while Fraction(other) ** f * 2 * delta * delta < p**k:
        f += 1

    for _ in range(4):
        den = GaussianRational(bar**j) * GaussianRational(other_bar**f)
        # residue constraint: the numerator must land in B + bar^K * Z[i]
        if b.is_zero:
            B = 0
        else:
            beta = b * embed(den, p, K + max(0, -b.valuation) + 2)
            B = _integer_lift(beta, K)
        scale = bar**K
        w = z * _to_complex(den)
        quot = (w - B) / _to_complex(GaussianRational(scale))
        h = GaussianInt(round(quot.real), round(quot.imag))
        g = GaussianInt(B, 0) + scale * h
        q = GaussianRational(g) / den
        if abs(_to_complex(q) - z) <= float(delta) and _padic_residual_ok(
            q, b, k, delta
        ):
            assert in_A(q)
            return q
        f += 1
    raise RuntimeError("approximation certificate failed verification")


def _crt_pair(r1: int, m1: int, r2: int, m2: int) -> int:
    t = (r2 - r1) * pow(m1, -1, m2) % m2
    return (r1 + m1 * t) % (m1 * m2)


def strong_approx_3way(z: complex, a: PadicNumber, b: PadicNumber,
                       delta) -> GaussianRational:
    """Find q in the base ring extended by 1/7 approximating a complex, a
    5-adic and a 13-adic target simultaneously, all residuals <= delta.

    The inert prime 7 is invisible at both finite sites, so widening the
    denominator by powers of 7 shrinks the complex covering radius without
    disturbing the residue constraints.
    """
    delta = Fraction(delta)
    if delta <= 0:
        raise ValueError("tolerance must be positive")
    if not isinstance(a, PadicNumber) or a.p != 5:
        raise TypeError("first local target must be 5-adic")
    if not isinstance(b, PadicNumber) or b.p != 13:
        raise TypeError("second local target must be 13-adic")
    z = complex(z)

    k5 = _min_exponent(5, delta)
    k13 = _min_exponent(13, delta)
    _check_target_precision(a, k5, delta)
    _check_target_precision(b, k13, delta)
    j5 = 0 if a.is_zero else max(0, -a.valuation)
    j13 = 0 if b.is_zero else max(0, -b.valuation)
    K5, K13 = k5 + j5, k13 + j13

    t = 0
    need = 5**k5 * 13**k13
    while 2 * delta * delta * 49**t < need:
        t += 1

    W = P5BAR.generator**K5 * P13BAR.generator**K13
    w_c = _to_complex(GaussianRational(W))
    for _ in range(4):
        den = (
            GaussianRational(P5BAR.generator**j5)
            * GaussianRational(P13BAR.generator**j13)
            * GaussianRational(GaussianInt(7, 0) ** t)
        )
        B5 = 0 if a.is_zero else _integer_lift(a * embed(den, 5, K5 + 2), K5)
        B13 = 0 if b.is_zero else _integer_lift(b * embed(den, 13, K13 + 2),
                                                K13)
        G = _crt_pair(B5, 5**K5, B13, 13**K13)
        w = z * _to_complex(den)
        quot = (w - G) / w_c
        h = GaussianInt(round(quot.real), round(quot.imag))
        g = GaussianInt(G, 0) + W * h
        q = GaussianRational(g) / den
        if (
            abs(_to_complex(q) - z) <= float(delta)
            and _padic_residual_ok(q, a, k5, delta)
            and _padic_residual_ok(q, b, k13, delta)
        ):
            cleared = q
            while cleared.den % 7 == 0:
                cleared = cleared * 7
            assert in_A(cleared)
            return q
        t += 1
    raise RuntimeError("approximation certificate failed verification")


# ---------------------------------------------------------------------------
# small elements of a prescribed coset
# ---------------------------------------------------------------------------


def coset_element(mu, nu, H: CosetSpec) -> GaussianRational:
    """Find r in the base ring with complex absolute value <= mu, absolute
    value <= mu at the prime opposite to H, absolute value >= nu at H's own
    prime, whose image lies in the coset H at its precision.

    Candidates are uniformizer-times-unit representatives multiplied by a
    growing power of the shrinking element (the opposite conjugate prime over
    the tenth power of H's conjugate prime), whose complex modulus is < 1
    while its H-site absolute value grows.
    """
    mu = Fraction(mu)
    nu = Fraction(nu)
    if mu <= 0 or nu <= 0:
        raise ValueError("magnitude bounds must be positive")
    p = H.p
    other = _OTHER_PRIME[p]
    site = _BAR[p]
    other_site = _BAR[other]
    uniform = GaussianRational(site.generator)
    shrink = GaussianRational(other_site.generator) / GaussianRational(
        site.generator**10
    )
    # exact magnitudes of the shrinking element at the three places
    log_shrink_c = 0.5 * math.log(float(shrink.abs2()))
    assert log_shrink_c < 0

    unit_order = (p - 1) * p ** (H.precision_k - 1)
    reps = []
    two = GaussianRational(GaussianInt(2, 0))
    for c in range(H.m):
        x = uniform**c
        for d in range(unit_order):
            reps.append((c, d, x))
            x = x * two

    def _log_fraction(value: Fraction) -> float:
        # math.log on the integer parts avoids float overflow on huge values
        return math.log(value.numerator) - math.log(value.denominator)

    # least power for which every bound can hold for the smallest candidate
    def _n_floor(x: GaussianRational, c: int) -> int:
        bound = 0
        lx = 0.5 * _log_fraction(x.abs2())
        bound = max(bound, math.ceil((_log_fraction(mu) - lx) / log_shrink_c))
        # opposite site: |x| there is 1, each shrink factor divides by `other`
        bound = max(
            bound,
            math.ceil(-_log_fraction(mu) / math.log(other)),
        )
        # own site: |x| = p^-c, each shrink factor multiplies by p^10
        bound = max(
            bound,
            math.ceil(
                (_log_fraction(nu) + c * math.log(p)) / (10 * math.log(p))
            ),
        )
        return max(0, bound)

    n_start = min(_n_floor(x, c) for c, _, x in reps)
    cycle = H.m * unit_order
    power = shrink**n_start
    for n in range(n_start, n_start + cycle + 16):
        for c, _, x in reps:
            if _n_floor(x, c) > n:
                continue
            r = x * power
            if r.abs2() > mu * mu:
                continue
            if abs_at(r, other_site) > mu:
                continue
            if abs_at(r, site) < nu:
                continue
            if H.contains(r):
                assert in_A(r)
                return r
        power = power * shrink
    raise PrecisionError(
        "no coset representative found at the requested precision"
    )


# ---------------------------------------------------------------------------
# density of the doubling-tripling semigroup and of circle rotations
# ---------------------------------------------------------------------------


def semigroup_density(eta, delta) -> DensityReport:
    """Enumerate {eta * 2^r * 3^s <= 1}, sort it, and report the largest gap
    of the sample inside [0, 1] — gaps to the endpoints 0 and 1 count."""
    eta = Fraction(eta)
    delta = Fraction(delta)
    if not 0 < eta < 1:
        raise ValueError("scale must lie strictly between 0 and 1")
    if not 0 < delta < 1:
        raise ValueError("density tolerance must lie strictly between 0 and 1")
    sample = []
    pow2 = eta
    while pow2 <= 1:
        value = pow2
        while value <= 1:
            sample.append(value)
            value *= 3
        pow2 *= 2
    sample.sort()
    best_gap = sample[0] - 0
    witness = (Fraction(0), sample[0])
    for lo, hi in zip(sample, sample[1:]):
        if hi - lo > best_gap:
            best_gap = hi - lo
            witness = (lo, hi)
    if 1 - sample[-1] > best_gap:
        best_gap = 1 - sample[-1]
        witness = (sample[-1], Fraction(1))
    return DensityReport(
        parameter=eta,
        max_gap=best_gap,
        witness_pair=witness,
        threshold=delta,
        sample=tuple(sample),
    )


def circle_density(theta: GaussianRational, t: complex, M: int) -> DensityReport:
    """Sample theta^r * t for 0 <= r <= M and report the largest angular gap
    (radians) between consecutive sample points on their common circle."""
    q = as_gaussian_rational(theta)
    if q is None or q.abs2() != 1:
        raise ValueError("the rotation must have unit modulus exactly")
    power = GaussianRational(1)
    for _ in range(12):
        power = power * q
        if power == GaussianRational(1):
            raise ValueError("the rotation is a root of unity; its orbit is "
                             "finite and never dense")
    t = complex(t)
    if t == 0:
        raise ValueError("the sampled point must be nonzero")
    if M < 0:
        raise ValueError("the power count must be nonnegative")
    step = _to_complex(q)
    radius = abs(t)
    angles = []
    cur = t
    for _ in range(M + 1):
        angles.append(math.atan2(cur.imag, cur.real) % (2 * math.pi))
        cur *= step
        cur *= radius / abs(cur)
    angles.sort()
    tau = 2 * math.pi
    best_gap = angles[0] + tau - angles[-1]
    witness = (angles[-1], angles[0])
    for lo, hi in zip(angles, angles[1:]):
        if hi - lo > best_gap:
            best_gap = hi - lo
            witness = (lo, hi)
    return DensityReport(
        parameter=M,
        max_gap=best_gap,
        witness_pair=witness,
        sample=tuple(angles),
    )
