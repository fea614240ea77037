"""Exact arithmetic over the Gaussian integers and Gaussian rationals.

``GaussianInt`` and ``GaussianRational`` are immutable value types with
arbitrary-precision integer components.  On top of them the module pins the
four prime sites above the rational primes 5 and 13, computes exact
valuations and absolute values at those sites, and generates the
unit-modulus rotations and enumerations that drive the rest of the package.
"""

from __future__ import annotations

import re as _re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

__all__ = [
    "GaussianInt",
    "GaussianRational",
    "PrimeSite",
    "P5",
    "P5BAR",
    "P13",
    "P13BAR",
    "SITES",
    "THETA5",
    "THETA13",
    "conjugate_site",
    "valuation",
    "abs_at",
    "theta_power",
    "theta_set",
    "min_period_multiplier",
    "unit_circle_elements",
    "in_A",
    "a_clearing_denominator",
    "unit_group_order",
    "gaussian_ints_of_norm",
    "is_sum_of_two_squares",
    "nearest_gaussian_int",
    "mod_reduce",
    "mod_mul",
    "mod_pow",
    "mod_inv",
    "mod_from_rational",
    "mod_order",
]


@dataclass(frozen=True, slots=True)
class GaussianInt:
    """A Gaussian integer re + im*i with arbitrary-precision components."""

    re: int = 0
    im: int = 0

    def conj(self) -> "GaussianInt":
        return GaussianInt(self.re, -self.im)

    def norm(self) -> int:
        """re**2 + im**2; multiplicative."""
        return self.re * self.re + self.im * self.im

    def __bool__(self) -> bool:
        return self.re != 0 or self.im != 0

    def __neg__(self) -> "GaussianInt":
        return GaussianInt(-self.re, -self.im)

    def __add__(self, other):
        other = _as_gint(other)
        if other is None:
            return NotImplemented
        return GaussianInt(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_gint(other)
        if other is None:
            return NotImplemented
        return GaussianInt(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _as_gint(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _as_gint(other)
        if other is None:
            return NotImplemented
        return GaussianInt(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "GaussianInt":
        if e < 0:
            raise ValueError("negative power of a GaussianInt; use GaussianRational")
        out = GaussianInt(1, 0)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __truediv__(self, other) -> "GaussianRational":
        return GaussianRational(self) / other

    def __rtruediv__(self, other) -> "GaussianRational":
        return _coerce(other) / GaussianRational(self)

    def exact_div(self, other: "GaussianInt") -> "GaussianInt":
        """Exact quotient self/other in Z[i]; ValueError if not divisible."""
        q = try_exact_div(self, other)
        if q is None:
            raise ValueError(f"{self} is not divisible by {other} in Z[i]")
        return q

    def __complex__(self) -> complex:
        return complex(self.re, self.im)

    def __abs__(self) -> float:
        return abs(complex(self))

    def __str__(self) -> str:
        return f"{self.re}{self.im:+d}i"

    def __repr__(self) -> str:
        return f"GaussianInt({self.re}, {self.im})"

    @classmethod
    def parse(cls, text: str) -> "GaussianInt":
        """Parse 'a+bi' (also bare integers and pure-imaginary forms)."""
        q = GaussianRational.parse(text)
        return q.to_gaussian_int()


def _as_gint(x) -> GaussianInt | None:
    if isinstance(x, GaussianInt):
        return x
    if isinstance(x, int):
        return GaussianInt(x, 0)
    return None


def try_exact_div(g: GaussianInt, d: GaussianInt) -> GaussianInt | None:
    """g/d if it lies in Z[i], else None."""
    n = d.norm()
    if n == 0:
        raise ZeroDivisionError("division by zero Gaussian integer")
    t = g * d.conj()
    if t.re % n or t.im % n:
        return None
    return GaussianInt(t.re // n, t.im // n)


class GaussianRational:
    """An element of Q(i): Gaussian-integer numerator over a positive
    integer denominator, kept in lowest terms (no rational prime divides
    both numerator components and the denominator)."""

    __slots__ = ("_a", "_b", "_d")

    def __init__(self, num: GaussianInt | int = 0, den: int = 1):
        g = _as_gint(num)
        if g is None:
            raise TypeError(f"numerator must be GaussianInt or int, got {type(num)!r}")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        a, b = g.re, g.im
        if den < 0:
            a, b, den = -a, -b, -den
        c = gcd(gcd(a, b), den)
        if c > 1:
            a //= c
            b //= c
            den //= c
        object.__setattr__(self, "_a", a)
        object.__setattr__(self, "_b", b)
        object.__setattr__(self, "_d", den)

    def __setattr__(self, *args):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def from_fractions(cls, re: Fraction | int, im: Fraction | int = 0) -> "GaussianRational":
        re = Fraction(re)
        im = Fraction(im)
        d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        return cls(
            GaussianInt(re.numerator * (d // re.denominator), im.numerator * (d // im.denominator)),
            d,
        )

    @property
    def num(self) -> GaussianInt:
        return GaussianInt(self._a, self._b)

    @property
    def den(self) -> int:
        return self._d

    @property
    def re(self) -> Fraction:
        return Fraction(self._a, self._d)

    @property
    def im(self) -> Fraction:
        return Fraction(self._b, self._d)

    def conj(self) -> "GaussianRational":
        return GaussianRational(GaussianInt(self._a, -self._b), self._d)

    def abs2(self) -> Fraction:
        """Modulus squared, an exact rational."""
        return Fraction(self._a * self._a + self._b * self._b, self._d * self._d)

    def is_gaussian_int(self) -> bool:
        return self._d == 1

    def to_gaussian_int(self) -> GaussianInt:
        if self._d != 1:
            raise ValueError(f"{self} is not a Gaussian integer")
        return GaussianInt(self._a, self._b)

    def inverse(self) -> "GaussianRational":
        n = self._a * self._a + self._b * self._b
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return GaussianRational(GaussianInt(self._a * self._d, -self._b * self._d), n)

    def __bool__(self) -> bool:
        return self._a != 0 or self._b != 0

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(GaussianInt(-self._a, -self._b), self._d)

    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(
            GaussianInt(self._a * o._d + o._a * self._d, self._b * o._d + o._b * self._d),
            self._d * o._d,
        )

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(
            GaussianInt(
                self._a * o._a - self._b * o._b,
                self._a * o._b + self._b * o._a,
            ),
            self._d * o._d,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int) -> "GaussianRational":
        if e < 0:
            return self.inverse() ** (-e)
        out = GaussianRational(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self._a == o._a and self._b == o._b and self._d == o._d

    def __hash__(self):
        if self._d == 1:
            return hash((self._a, self._b))
        return hash((self._a, self._b, self._d))

    def __complex__(self) -> complex:
        return complex(self._a / self._d, self._b / self._d)

    def __abs__(self) -> float:
        return abs(complex(self))

    def __str__(self) -> str:
        sign = "+" if self._b >= 0 else "-"
        return f"{self._a}/{self._d}{sign}{abs(self._b)}/{self._d}i"

    def __repr__(self) -> str:
        return f"GaussianRational.parse({str(self)!r})"

    _TERM = _re.compile(r"^([+-]?)(\d+(?:/\d+)?)?(i?)$")

    @classmethod
    def parse(cls, text: str) -> "GaussianRational":
        """Parse 'a/d+b/di' and looser forms ('3+4i', '1/2', 'i', '-i')."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty Gaussian rational literal")
        re_part: Fraction | None = None
        im_part: Fraction | None = None
        terms = _re.findall(r"[+-]?[^+-]+", s)
        if "".join(terms) != s:
            raise ValueError(f"cannot parse Gaussian rational literal {text!r}")
        for term in terms:
            m = cls._TERM.match(term)
            if m is None:
                raise ValueError(f"cannot parse Gaussian rational term {term!r} in {text!r}")
            sign, body, imag = m.groups()
            if body is None:
                if not imag:
                    raise ValueError(f"cannot parse Gaussian rational term {term!r} in {text!r}")
                value = Fraction(1)
            else:
                value = Fraction(body)
            if sign == "-":
                value = -value
            if imag:
                if im_part is not None:
                    raise ValueError(f"duplicate imaginary part in {text!r}")
                im_part = value
            else:
                if re_part is not None:
                    raise ValueError(f"duplicate real part in {text!r}")
                re_part = value
        return cls.from_fractions(re_part or Fraction(0), im_part or Fraction(0))


def _coerce(x) -> GaussianRational | None:
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (GaussianInt, int)):
        return GaussianRational(x)
    if isinstance(x, Fraction):
        return GaussianRational(GaussianInt(x.numerator, 0), x.denominator)
    return None


def as_gaussian_rational(x) -> GaussianRational | None:
    """Coerce an int, Fraction, GaussianInt or GaussianRational; None when
    the value has no exact Gaussian-rational meaning."""
    return _coerce(x)


@dataclass(frozen=True, slots=True)
class PrimeSite:
    """One of the four fixed primes of Z[i] above 5 and 13."""

    tag: str
    generator: GaussianInt
    residue_norm: int

    def __str__(self) -> str:
        return self.tag


P5 = PrimeSite("P5", GaussianInt(1, 2), 5)
P5BAR = PrimeSite("P5bar", GaussianInt(1, -2), 5)
P13 = PrimeSite("P13", GaussianInt(2, 3), 13)
P13BAR = PrimeSite("P13bar", GaussianInt(2, -3), 13)
SITES = (P5, P5BAR, P13, P13BAR)

_CONJ = {P5: P5BAR, P5BAR: P5, P13: P13BAR, P13BAR: P13}


def conjugate_site(site: PrimeSite) -> PrimeSite:
    return _CONJ[site]


def _int_valuation(g: GaussianInt, site: PrimeSite) -> int:
    pi = site.generator
    pib = pi.conj()
    n = site.residue_norm
    v = 0
    while True:
        t = g * pib
        if t.re % n or t.im % n:
            return v
        g = GaussianInt(t.re // n, t.im // n)
        v += 1


def valuation(q: GaussianRational | GaussianInt | int, site: PrimeSite) -> int:
    """Exponent of the site's prime in q.  Additive: v(qr) = v(q) + v(r)."""
    qq = _coerce(q)
    if qq is None:
        raise TypeError(f"cannot take a valuation of {type(q)!r}")
    if not qq:
        raise ValueError("valuation of zero undefined")
    v = _int_valuation(qq.num, site)
    d, p = qq.den, site.residue_norm
    while d % p == 0:
        d //= p
        v -= 1
    return v


def abs_at(q, site: PrimeSite) -> Fraction:
    """Normalized absolute value residue_norm**(-valuation); multiplicative."""
    return Fraction(site.residue_norm) ** (-valuation(q, site))


THETA5 = GaussianRational(P5.generator) / GaussianRational(P5BAR.generator)
THETA13 = GaussianRational(P13.generator) / GaussianRational(P13BAR.generator)


def theta_power(r: int, s: int) -> GaussianRational:
    """The rotation THETA5**r * THETA13**s (any integer exponents)."""
    return THETA5**r * THETA13**s


def theta_set(N: int) -> list[GaussianRational]:
    """All (N+1)**2 rotations with exponents 0..N in each generator."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    powers5 = [THETA5**r for r in range(N + 1)]
    powers13 = [THETA13**s for s in range(N + 1)]
    return [p5 * p13 for p5 in powers5 for p13 in powers13]


def min_period_multiplier(N: int) -> GaussianInt:
    """Smallest D with D*theta in Z[i] for every theta in theta_set(N)."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    return (P5BAR.generator * P13BAR.generator) ** N


def unit_circle_elements(t_max: int) -> list[GaussianRational]:
    """All unit-modulus elements of Q(i) with reduced denominator <= t_max.

    Enumerates primitive g = u+vi (gcd(u,v)=1, u+v odd, norm <= t_max) and
    takes g**2/norm(g), closed under the four units.  Every returned
    denominator is odd.
    """
    if t_max < 1:
        raise ValueError("t_max must be >= 1")
    units = (
        GaussianRational(1),
        GaussianRational(GaussianInt(0, 1)),
        GaussianRational(-1),
        GaussianRational(GaussianInt(0, -1)),
    )
    seen: set[GaussianRational] = set()
    for u in range(1, isqrt(t_max) + 1):
        vmax = isqrt(t_max - u * u)
        for v in range(vmax + 1):
            if (u + v) % 2 == 0 or gcd(u, v) != 1:
                continue
            g = GaussianInt(u, v)
            q = GaussianRational(g * g, g.norm())
            for unit in units:
                seen.add(q * unit)
    return sorted(seen, key=lambda q: (q.den, q.re, q.im))


def in_A(q: GaussianRational | GaussianInt | int) -> bool:
    """Membership in the ring A = Z[i][1/P5bar.generator, 1/P13bar.generator]:
    denominator supported on {5, 13} and nonnegative valuation at the two
    unbarred sites."""
    qq = _coerce(q)
    if qq is None:
        raise TypeError(f"cannot test A-membership of {type(q)!r}")
    if not qq:
        return True
    d = qq.den
    for p in (5, 13):
        while d % p == 0:
            d //= p
    if d != 1:
        return False
    return valuation(qq, P5) >= 0 and valuation(qq, P13) >= 0


def a_clearing_denominator(q: GaussianRational) -> GaussianInt:
    """Smallest product of barred-site generators d with q*d in Z[i].
    Raises ValueError when q is not in A."""
    qq = _coerce(q)
    if qq is None or not in_A(qq):
        raise ValueError(f"{q} is not in A")
    if not qq:
        return GaussianInt(1, 0)
    e = max(0, -valuation(qq, P5BAR))
    f = max(0, -valuation(qq, P13BAR))
    return P5BAR.generator**e * P13BAR.generator**f


def unit_group_order(n: int) -> int:
    """Order of the unit group of Z[i]/n for a positive rational integer n."""
    if n < 1:
        raise ValueError("modulus must be positive")
    if n == 1:
        return 1
    return sum(
        1
        for a in range(n)
        for b in range(n)
        if gcd(a * a + b * b, n) == 1
    )


def gaussian_ints_of_norm(n: int) -> list[GaussianInt]:
    """All Gaussian integers of norm exactly n, sorted by (re, im)."""
    if n < 0:
        raise ValueError("norm is nonnegative")
    if n == 0:
        return [GaussianInt(0, 0)]
    found: set[GaussianInt] = set()
    for a in range(isqrt(n) + 1):
        b2 = n - a * a
        b = isqrt(b2)
        if b * b != b2:
            continue
        for g in (
            GaussianInt(a, b),
            GaussianInt(a, -b),
            GaussianInt(-a, b),
            GaussianInt(-a, -b),
            GaussianInt(b, a),
            GaussianInt(b, -a),
            GaussianInt(-b, a),
            GaussianInt(-b, -a),
        ):
            found.add(g)
    return sorted(found, key=lambda g: (g.re, g.im))


def is_sum_of_two_squares(n: int) -> bool:
    if n < 0:
        return False
    return any(isqrt(n - a * a) ** 2 == n - a * a for a in range(isqrt(n) + 1))


def nearest_gaussian_int(q: GaussianRational) -> GaussianInt:
    """Componentwise rounding to the nearest Gaussian integer
    (ties round up, deterministically)."""
    d = q.den
    a = (2 * q.num.re + d) // (2 * d)
    b = (2 * q.num.im + d) // (2 * d)
    return GaussianInt(a, b)


# --- arithmetic in Z[i]/n for a rational integer modulus n -----------------


def mod_reduce(g: GaussianInt, n: int) -> GaussianInt:
    return GaussianInt(g.re % n, g.im % n)


def mod_mul(g: GaussianInt, h: GaussianInt, n: int) -> GaussianInt:
    return mod_reduce(g * h, n)


def mod_pow(g: GaussianInt, e: int, n: int) -> GaussianInt:
    if e < 0:
        return mod_pow(mod_inv(g, n), -e, n)
    out = GaussianInt(1 % n, 0)
    base = mod_reduce(g, n)
    while e:
        if e & 1:
            out = mod_mul(out, base, n)
        base = mod_mul(base, base, n)
        e >>= 1
    return out


def mod_inv(g: GaussianInt, n: int) -> GaussianInt:
    """Inverse in Z[i]/n via the conjugate; ValueError if not a unit."""
    t = g.norm() % n
    if gcd(t, n) != 1:
        raise ValueError(f"{g} is not invertible mod {n}")
    s = pow(t, -1, n)
    return mod_reduce(g.conj() * s, n)


def mod_from_rational(q: GaussianRational, n: int) -> GaussianInt:
    """Reduce q mod n; requires gcd(den, n) = 1."""
    if gcd(q.den, n) != 1:
        raise ValueError(f"denominator of {q} is not invertible mod {n}")
    s = pow(q.den, -1, n)
    return mod_reduce(q.num * s, n)


def mod_order(g: GaussianInt, n: int, cap: int) -> int:
    """Multiplicative order of g in Z[i]/n; ValueError if it exceeds cap."""
    one = GaussianInt(1 % n, 0)
    acc = mod_reduce(g, n)
    for e in range(1, cap + 1):
        if acc == one:
            return e
        acc = mod_mul(acc, g, n)
    raise ValueError(f"order of {g} mod {n} exceeds cap {cap}")
