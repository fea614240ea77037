"""The limit space for the stripe dynamics: points of the quotient
(C x Q5 x Q13) / (twisted diagonal image of A), reduction to the fundamental
domain, the rotation action, character evaluation, torsion/periodic
classification, dense periodic sets, orbit sweeps, and metric upper bounds.

A point is interpreted through its evaluation pairing with A: a triple
(z, a, b) sends r in A to

    -Re(z * r) + frac5(a * i5(r)) + frac13(b * i13(r))   (mod 1).

The diagonal image of q in A that this pairing annihilates is the *twisted*
triple (q, i5(q/2), i13(q/2)): for every y in A the real part of y and the
two fractional parts of i_p(y/2) agree mod 1, which makes the pairing vanish
on diagonal(q) for all q, r in A.  Halving is harmless on the p-adic side
(2 is a unit at 5 and 13), so the fundamental domain is still
[0,1)^2 x Z5 x Z13.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .gaussian import (
    GaussianInt,
    GaussianRational,
    P5,
    P5BAR,
    P13,
    P13BAR,
    abs_at,
    in_A,
    mod_from_rational,
    mod_order,
    theta_power,
    unit_group_order,
    valuation,
)
from .padic import PadicNumber, embed, gauss_frac_part, sqrt_neg1

__all__ = [
    "DEFAULT_PRECISION",
    "SolenoidPoint",
    "ExactPoint",
    "PointClassification",
    "reduce_to_fundamental",
    "act",
    "evaluate",
    "stripe_membership",
    "classify_point",
    "torsion_to_periodic",
    "period_exponent",
    "periodic_dense_set",
    "orbit_eval_rows",
    "orbit_eval_sweep",
    "distance_upper",
]

#: p-adic digits carried by points constructed without an explicit precision.
DEFAULT_PRECISION = 24


def _as_rational(x) -> GaussianRational | None:
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (GaussianInt, int)):
        return GaussianRational(x)
    if isinstance(x, Fraction):
        return GaussianRational(GaussianInt(x.numerator, 0), x.denominator)
    return None


def _to_complex(q: GaussianRational) -> complex:
    return complex(float(q.re), float(q.im))


def _require_in_A(q) -> GaussianRational:
    qq = _as_rational(q)
    if qq is None:
        raise TypeError(f"expected a Gaussian rational, got {type(q)!r}")
    if not in_A(qq):
        raise ValueError(
            f"{qq} lies outside the base ring; its action/evaluation is not well-defined"
        )
    return qq


class SolenoidPoint:
    """A representative triple (z, a, b) with z complex (exact Gaussian
    rational or floating), a a 5-adic number and b a 13-adic number."""

    __slots__ = ("_z", "_a", "_b")

    def __init__(self, z, a, b):
        zq = _as_rational(z)
        if zq is None:
            if isinstance(z, (complex, float)):
                zq = complex(z)
            else:
                raise TypeError(f"cannot use {type(z)!r} as the complex component")
        if isinstance(a, (int, Fraction)):
            a = PadicNumber.from_rational(a, 5, DEFAULT_PRECISION)
        if isinstance(b, (int, Fraction)):
            b = PadicNumber.from_rational(b, 13, DEFAULT_PRECISION)
        if not isinstance(a, PadicNumber) or a.p != 5:
            raise TypeError("second component must be 5-adic")
        if not isinstance(b, PadicNumber) or b.p != 13:
            raise TypeError("third component must be 13-adic")
        object.__setattr__(self, "_z", zq)
        object.__setattr__(self, "_a", a)
        object.__setattr__(self, "_b", b)

    def __setattr__(self, name, value):
        raise AttributeError("SolenoidPoint is immutable")

    # -- components ----------------------------------------------------------

    @property
    def z(self) -> GaussianRational | complex:
        return self._z

    @property
    def a(self) -> PadicNumber:
        return self._a

    @property
    def b(self) -> PadicNumber:
        return self._b

    @property
    def exact_mode(self) -> bool:
        return isinstance(self._z, GaussianRational)

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, precision_k: int = DEFAULT_PRECISION) -> "SolenoidPoint":
        return cls(
            GaussianRational(0),
            PadicNumber.zero(5, precision_k),
            PadicNumber.zero(13, precision_k),
        )

    @classmethod
    def from_complex(cls, w, precision_k: int = DEFAULT_PRECISION) -> "SolenoidPoint":
        """The purely complex point; evaluate(from_complex(w), r) = Re(w*r) mod 1."""
        wq = _as_rational(w)
        z: GaussianRational | complex
        if wq is not None:
            z = -wq
        else:
            z = -complex(w)
        return cls(
            z,
            PadicNumber.zero(5, precision_k),
            PadicNumber.zero(13, precision_k),
        )

    @classmethod
    def diagonal(cls, q, precision_k: int = DEFAULT_PRECISION) -> "SolenoidPoint":
        """The twisted diagonal triple (q, i5(q/2), i13(q/2)); it evaluates to
        zero against every element of A exactly when q itself lies in A."""
        qq = _as_rational(q)
        if qq is None:
            raise TypeError(f"cannot embed {type(q)!r} diagonally")
        half = qq / 2
        return cls(qq, embed(half, 5, precision_k), embed(half, 13, precision_k))

    # -- structure -----------------------------------------------------------

    def __add__(self, other: "SolenoidPoint") -> "SolenoidPoint":
        if not isinstance(other, SolenoidPoint):
            return NotImplemented
        if self.exact_mode and other.exact_mode:
            z = self._z + other._z
        else:
            z = _as_complex_value(self._z) + _as_complex_value(other._z)
        return SolenoidPoint(z, self._a + other._a, self._b + other._b)

    def __sub__(self, other: "SolenoidPoint") -> "SolenoidPoint":
        if not isinstance(other, SolenoidPoint):
            return NotImplemented
        if self.exact_mode and other.exact_mode:
            z = self._z - other._z
        else:
            z = _as_complex_value(self._z) - _as_complex_value(other._z)
        return SolenoidPoint(z, self._a - other._a, self._b - other._b)

    def __neg__(self) -> "SolenoidPoint":
        return SolenoidPoint(-self._z, -self._a, -self._b)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SolenoidPoint):
            return NotImplemented
        return self._z == other._z and self._a == other._a and self._b == other._b

    def __hash__(self) -> int:
        return hash((self._z, self._a, self._b))

    def __str__(self) -> str:
        return f"({self._z}, {self._a}, {self._b})"

    def __repr__(self) -> str:
        return f"SolenoidPoint({self._z!r}, {self._a!r}, {self._b!r})"

    def agrees(self, other: "SolenoidPoint") -> bool:
        """Componentwise agreement at the comparable p-adic precision."""
        return (
            self._z == other._z
            and self._a.agrees(other._a)
            and self._b.agrees(other._b)
        )


def _as_complex_value(z) -> complex:
    if isinstance(z, GaussianRational):
        return _to_complex(z)
    return complex(z)


@dataclass(frozen=True)
class ExactPoint:
    """A diagonal point shifted by a purely complex offset, kept fully exact.

    Denotes diagonal(q) + from_complex(offset_w); classification only applies
    when offset_w = 0.  Evaluation needs no p-adic precision at all.
    """

    q: GaussianRational
    offset_w: GaussianRational = GaussianRational(0)

    def __post_init__(self):
        qq = _as_rational(self.q)
        ww = _as_rational(self.offset_w)
        if qq is None or ww is None:
            raise TypeError("ExactPoint components must be Gaussian rationals")
        object.__setattr__(self, "q", qq)
        object.__setattr__(self, "offset_w", ww)

    def evaluate(self, r) -> Fraction:
        """Exact pairing value in [0, 1)."""
        rr = _require_in_A(r)
        y = self.q * rr
        total = (
            -y.re
            + (self.offset_w * rr).re
            + gauss_frac_part(y / 2, 5)
            + gauss_frac_part(y / 2, 13)
        )
        return total % 1

    def same_class(self, other: "ExactPoint") -> bool:
        """Whether the two exact points denote the same point of the quotient."""
        return self.offset_w == other.offset_w and in_A(self.q - other.q)

    def to_solenoid(self, precision_k: int = DEFAULT_PRECISION) -> SolenoidPoint:
        diag = SolenoidPoint.diagonal(self.q, precision_k)
        if not self.offset_w:
            return diag
        return diag + SolenoidPoint.from_complex(self.offset_w, precision_k)

    def __str__(self) -> str:
        return f"({self.q}; {self.offset_w})"


# ---------------------------------------------------------------------------
# reduction to the fundamental domain
# ---------------------------------------------------------------------------


def _integer_residue(frac: Fraction, p: int, e: int, clear: GaussianInt) -> int:
    """The integer B mod p**e with B = 2 * c * i_p(clear) / p**e in Z_p, where
    frac = c / p**e; any rational integer congruent to B mod p**e maps under
    i_p into 2 * frac * i_p(clear) + p**e * Z_p."""
    if e == 0:
        return 0
    c = frac.numerator
    root = sqrt_neg1(p, 2 * e).digits
    image = (clear.re + clear.im * root) % p ** (2 * e)
    assert image % p**e == 0, "clearing denominator has unexpected valuation"
    return 2 * c * (image // p**e) % p**e


def _crt(b1: int, m1: int, b2: int, m2: int) -> int:
    if m1 == 1:
        return b2 % m2
    if m2 == 1:
        return b1 % m1
    t = (b2 - b1) * pow(m1, -1, m2) % m2
    return b1 + m1 * t


def _floor_component(x) -> int:
    return math.floor(x)


def reduce_to_fundamental(
    x: SolenoidPoint | ExactPoint,
) -> tuple[SolenoidPoint, GaussianRational]:
    """The unique equivalent representative with a, b p-adic integers and both
    coordinates of z in [0, 1), together with the ring element r subtracted
    (diagonally) to get there.

    Raises PrecisionError when the p-adic fractional parts are undetermined.
    """
    if isinstance(x, ExactPoint):
        x = x.to_solenoid()
    f5 = x.a.frac_part()
    f13 = x.b.frac_part()
    e = 0 if f5 == 0 else _p_exp(f5.denominator, 5)
    f = 0 if f13 == 0 else _p_exp(f13.denominator, 13)
    clear = P5BAR.generator**e * P13BAR.generator**f
    b5 = _integer_residue(f5, 5, e, clear)
    b13 = _integer_residue(f13, 13, f, clear)
    g = _crt(b5, 5**e, b13, 13**f)
    r = GaussianRational(GaussianInt(g, 0)) / GaussianRational(clear)

    shifted = x - SolenoidPoint.diagonal(r, max(x.a.precision_k, x.b.precision_k))
    n = GaussianInt(_floor_component(_re_of(shifted.z)), _floor_component(_im_of(shifted.z)))
    if n:
        shifted = shifted - SolenoidPoint.diagonal(
            GaussianRational(n), max(x.a.precision_k, x.b.precision_k)
        )
        r = r + n
    assert shifted.a.is_zero or shifted.a.valuation >= 0
    assert shifted.b.is_zero or shifted.b.valuation >= 0
    return shifted, r


def _p_exp(d: int, p: int) -> int:
    e = 0
    while d % p == 0:
        d //= p
        e += 1
    assert d == 1, "fractional part denominator is not a prime power"
    return e


def _re_of(z) -> Fraction | float:
    return z.re if isinstance(z, GaussianRational) else z.real


def _im_of(z) -> Fraction | float:
    return z.im if isinstance(z, GaussianRational) else z.imag


# ---------------------------------------------------------------------------
# action and evaluation
# ---------------------------------------------------------------------------


def act(q, x: SolenoidPoint | ExactPoint):
    """Componentwise multiplication by the three embeddings of q in A."""
    qq = _require_in_A(q)
    if isinstance(x, ExactPoint):
        return ExactPoint(qq * x.q, qq * x.offset_w)
    z = x.z * qq if x.exact_mode else _as_complex_value(x.z) * _to_complex(qq)
    a = x.a * embed(qq, 5, x.a.precision_k)
    b = x.b * embed(qq, 13, x.b.precision_k)
    return SolenoidPoint(z, a, b)


def evaluate(x: SolenoidPoint | ExactPoint, r) -> Fraction | float:
    """The pairing value of the point against r in A, in [0, 1); exact when
    the point carries exact data, floating otherwise."""
    if isinstance(x, ExactPoint):
        return x.evaluate(r)
    rr = _require_in_A(r)
    t5 = (x.a * embed(rr, 5, x.a.precision_k)).frac_part()
    t13 = (x.b * embed(rr, 13, x.b.precision_k)).frac_part()
    if x.exact_mode:
        return (-(x.z * rr).re + t5 + t13) % 1
    zr = _as_complex_value(x.z) * _to_complex(rr)
    return (-zr.real + float(t5) + float(t13)) % 1.0


def stripe_membership(x, theta, epsilon) -> bool:
    """Whether the pairing value against theta lies strictly within epsilon of
    zero on the circle."""
    eps = Fraction(epsilon) if not isinstance(epsilon, float) else epsilon
    if not 0 < eps < Fraction(1, 2):
        raise ValueError("stripe half-width must lie in (0, 1/2)")
    v = evaluate(x, theta)
    one = 1.0 if isinstance(v, float) else 1
    dist = min(v, one - v)
    if isinstance(v, float) or isinstance(eps, float):
        return float(dist) < float(eps)
    return dist < eps


# ---------------------------------------------------------------------------
# torsion and periodicity
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PointClassification:
    """Torsion/periodic verdict for a diagonal point, with the two absolute
    values at the unbarred sites as witness."""

    kind: str  # "periodic" or "torsion_only"
    abs_p5: Fraction
    abs_p13: Fraction

    @property
    def is_periodic(self) -> bool:
        return self.kind == "periodic"


def _diagonal_rational(q) -> GaussianRational:
    if isinstance(q, ExactPoint):
        if q.offset_w:
            raise ValueError("classification requires a zero complex offset")
        return q.q
    qq = _as_rational(q)
    if qq is None:
        raise TypeError(f"cannot classify {type(q)!r}")
    return qq


def classify_point(q) -> PointClassification:
    """Every Gaussian rational gives a torsion point; it is periodic exactly
    when its absolute values at the two unbarred sites are at most 1."""
    qq = _diagonal_rational(q)
    if not qq:
        return PointClassification("periodic", Fraction(0), Fraction(0))
    a5 = abs_at(qq, P5)
    a13 = abs_at(qq, P13)
    kind = "periodic" if a5 <= 1 and a13 <= 1 else "torsion_only"
    return PointClassification(kind, a5, a13)


def torsion_to_periodic(q) -> GaussianRational:
    """The canonical rotation moving a torsion point onto a periodic one:
    clears the unbarred prime powers from the denominator."""
    qq = _diagonal_rational(q)
    if not qq:
        return GaussianRational(1)
    r = max(0, -valuation(qq, P5))
    s = max(0, -valuation(qq, P13))
    return theta_power(r, s)


def _minimal_clearing_integer(q: GaussianRational) -> int:
    d = q.den
    for n in sorted(_divisors(d)):
        if in_A(q * n):
            return n
    raise AssertionError("denominator does not clear itself")


def _divisors(n: int) -> list[int]:
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return out


def period_exponent(q) -> int:
    """The least m >= 1 such that both generator rotations to the m-th power
    fix the (periodic) diagonal point; divides the unit group order of the
    Gaussian integers modulo the clearing integer."""
    qq = _diagonal_rational(q)
    cls = classify_point(qq)
    if not cls.is_periodic:
        raise ValueError(f"{qq} is not periodic (witness {cls.abs_p5}, {cls.abs_p13})")
    if not qq:
        return 1
    n = _minimal_clearing_integer(qq)
    bound = unit_group_order(n)
    one = GaussianRational(1)
    for m in sorted(_divisors(bound)):
        if in_A((theta_power(m, 0) - one) * qq) and in_A((theta_power(0, m) - one) * qq):
            return m
    raise AssertionError("period exponent must divide the unit group order")


def periodic_dense_set(n: int) -> tuple[list[ExactPoint], int]:
    """Representatives of the 7**(-n) torsion layer (49**n exact points) and
    an exponent m for which both generator rotations to the m-th power fix
    every one of them."""
    if n < 1:
        raise ValueError("layer index must be positive")
    mod = 7**n
    points = [
        ExactPoint(GaussianRational(GaussianInt(a, b), mod))
        for a in range(mod)
        for b in range(mod)
    ]
    cap = unit_group_order(mod)
    m5 = mod_order(mod_from_rational(theta_power(1, 0), mod), mod, cap)
    m13 = mod_order(mod_from_rational(theta_power(0, 1), mod), mod, cap)
    m = math.lcm(m5, m13)
    return points, m


# ---------------------------------------------------------------------------
# orbit sweeps and the metric bound
# ---------------------------------------------------------------------------


def orbit_eval_rows(
    x: SolenoidPoint | ExactPoint, m: int, sweep_max: int
) -> list[tuple[int, int, Fraction | float]]:
    """Rows (r, s, value) of the pairing of the rotated point against 1, for
    rotation exponents (m*r, m*s) over the full grid 0 <= r, s <= sweep_max."""
    if m < 1 or sweep_max < 1:
        raise ValueError("exponent step and sweep bound must be positive")
    step5 = theta_power(m, 0)
    step13 = theta_power(0, m)
    rows = []
    row_point = x
    for r in range(sweep_max + 1):
        point = row_point
        for s in range(sweep_max + 1):
            rows.append((r, s, evaluate(point, 1)))
            if s < sweep_max:
                point = act(step13, point)
        if r < sweep_max:
            row_point = act(step5, row_point)
    return rows


def orbit_eval_sweep(x, m: int, sweep_max: int) -> Fraction | float:
    """Largest circular gap left by the orbit evaluations on the circle."""
    values = sorted(v for _, _, v in orbit_eval_rows(x, m, sweep_max))
    first = values[0]
    one = 1.0 if isinstance(first, float) else Fraction(1)
    best = one - values[-1] + first
    for lo, hi in zip(values, values[1:]):
        gap = hi - lo
        if gap > best:
            best = gap
    return best


def distance_upper(x: SolenoidPoint, y: SolenoidPoint, search_bound: int) -> float:
    """An upper bound for the translation-invariant metric between two points:
    the smallest combined size |z| + |a|_5 + |b|_13 of any representative of
    x - y shifted by candidate ring elements with numerator window and
    denominator exponents up to search_bound."""
    if isinstance(x, ExactPoint):
        x = x.to_solenoid()
    if isinstance(y, ExactPoint):
        y = y.to_solenoid()
    if x == y:
        return 0.0
    diff = x - y
    prec = max(diff.a.precision_k, diff.b.precision_k)
    best = math.inf
    bound = search_bound
    for e in range(bound + 1):
        for f in range(bound + 1):
            den = GaussianRational(P5BAR.generator**e * P13BAR.generator**f)
            for u in range(-bound, bound + 1):
                for v in range(-bound, bound + 1):
                    r = GaussianRational(GaussianInt(u, v)) / den
                    shifted = diff - SolenoidPoint.diagonal(r, prec)
                    size = (
                        abs(_as_complex_value(shifted.z))
                        + float(shifted.a.abs_bound())
                        + float(shifted.b.abs_bound())
                    )
                    if size < best:
                        best = size
    return best
