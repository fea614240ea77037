"""Finite-precision arithmetic in the 5-adic and 13-adic fields.

Values carry an integer valuation plus a unit part stored modulo p**k
(``PadicNumber``), with a distinguished zero marker that remembers the
absolute precision at which a cancellation happened.  The module also owns
the canonical Hensel lifts of sqrt(-1) (one per prime, sign fixed so the
barred prime site becomes the non-unit under embedding), the embedding of
Q(i) into each field, exact p-adic fractional parts, log/exp, and
multiplicative closure indices.
"""

from __future__ import annotations

import re as _re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .gaussian import (
    P5BAR,
    P13BAR,
    GaussianInt,
    GaussianRational,
    valuation,
)

__all__ = [
    "PrecisionError",
    "TorsionUnitError",
    "PadicContext",
    "CanonicalRoot",
    "PadicNumber",
    "sqrt_neg1",
    "embed",
    "gauss_frac_part",
    "plog",
    "pexp",
    "closure_index",
]

_SUPPORTED = (5, 13)


class PrecisionError(ArithmeticError):
    """The requested quantity is not determined at the stored precision."""


class TorsionUnitError(ValueError):
    """The unit is a root of unity at the tested precision; its generated
    subgroup does not have finite index."""


@dataclass(frozen=True, slots=True)
class PadicContext:
    p: int
    precision_k: int

    def __post_init__(self):
        if self.p not in _SUPPORTED:
            raise ValueError(f"unsupported prime {self.p}; expected one of {_SUPPORTED}")
        if self.precision_k < 1:
            raise ValueError("precision_k must be >= 1")


@dataclass(frozen=True, slots=True)
class CanonicalRoot:
    p: int
    precision_k: int
    digits: int


@lru_cache(maxsize=None)
def sqrt_neg1(p: int, k: int) -> CanonicalRoot:
    """The canonical root of -1 mod p**k, lifted by Newton iteration.

    The sign is fixed by requiring that the barred generator above p maps
    to a non-unit: for the generator g = re + im*i this is the root x with
    re + im*x = 0 mod p.
    """
    if p not in _SUPPORTED:
        raise ValueError(f"unsupported prime {p}")
    if k < 1:
        raise ValueError("precision must be >= 1")
    bar = P5BAR if p == 5 else P13BAR
    g = bar.generator
    x = next(
        x
        for x in range(p)
        if (x * x + 1) % p == 0 and (g.re + g.im * x) % p == 0
    )
    m = 1
    while m < k:
        m = min(2 * m, k)
        mod = p**m
        x = (x - (x * x + 1) * pow(2 * x, -1, mod)) % mod
    assert (x * x + 1) % p**k == 0
    return CanonicalRoot(p, k, x)


@dataclass(frozen=True, slots=True)
class PadicNumber:
    """p**valuation * unit_digits, with unit_digits correct mod p**precision_k.

    Zero is carried as a marker: ``valuation is None``.  ``zero_abs = n``
    records that the value is O(p**n) (all that survived a cancellation);
    ``zero_abs is None`` means exactly zero.
    """

    context: PadicContext
    valuation: int | None
    unit_digits: int
    zero_abs: int | None = None

    def __post_init__(self):
        p, k = self.context.p, self.context.precision_k
        if self.valuation is None:
            if self.unit_digits != 0:
                raise ValueError("zero marker must carry unit_digits 0")
        else:
            u = self.unit_digits
            if not (1 <= u < p**k) or u % p == 0:
                raise ValueError(f"unit digits {u} invalid mod {p}^{k}")
            if self.zero_abs is not None:
                raise ValueError("zero_abs only applies to the zero marker")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, p: int, k: int, abs_prec: int | None = None) -> "PadicNumber":
        return cls(PadicContext(p, k), None, 0, abs_prec)

    @classmethod
    def from_unit(cls, p: int, k: int, valuation: int, unit: int) -> "PadicNumber":
        u = unit % p**k
        if u == 0 or u % p == 0:
            raise ValueError(f"{unit} is not a unit mod {p}^{k}")
        return cls(PadicContext(p, k), valuation, u)

    @classmethod
    def from_rational(cls, x: Fraction | int, p: int, k: int) -> "PadicNumber":
        x = Fraction(x)
        if x == 0:
            return cls.zero(p, k)
        num, den = x.numerator, x.denominator
        v = 0
        while num % p == 0:
            num //= p
            v += 1
        while den % p == 0:
            den //= p
            v -= 1
        u = num * pow(den, -1, p**k) % p**k
        return cls(PadicContext(p, k), v, u)

    # -- basic queries -------------------------------------------------------

    @property
    def p(self) -> int:
        return self.context.p

    @property
    def precision_k(self) -> int:
        return self.context.precision_k

    @property
    def is_zero(self) -> bool:
        return self.valuation is None

    def abs_bound(self) -> Fraction:
        """An upper bound for the p-adic absolute value (exact for nonzero
        values, p**(-zero_abs) for the zero marker, 0 for exact zero)."""
        if self.valuation is not None:
            return Fraction(self.p) ** (-self.valuation)
        if self.zero_abs is None:
            return Fraction(0)
        return Fraction(self.p) ** (-self.zero_abs)

    def agrees(self, other: "PadicNumber") -> bool:
        """True when self - other vanishes at the comparable precision."""
        return (self - other).is_zero

    # -- arithmetic ---------------------------------------------------------

    def _require_same_p(self, other: "PadicNumber") -> None:
        if self.p != other.p:
            raise ValueError(f"mixed primes {self.p} and {other.p}")

    def __neg__(self) -> "PadicNumber":
        if self.is_zero:
            return self
        p, k = self.p, self.precision_k
        return PadicNumber(self.context, self.valuation, (-self.unit_digits) % p**k)

    def __add__(self, other: "PadicNumber") -> "PadicNumber":
        if not isinstance(other, PadicNumber):
            return NotImplemented
        self._require_same_p(other)
        p = self.p
        if self.is_zero and other.is_zero:
            if self.zero_abs is None:
                return other
            if other.zero_abs is None:
                return self
            n = min(self.zero_abs, other.zero_abs)
            return PadicNumber.zero(p, min(self.precision_k, other.precision_k), n)
        if self.is_zero or other.is_zero:
            z, x = (self, other) if self.is_zero else (other, self)
            if z.zero_abs is None:
                return x
            # x known mod p^(v+k); the O(p^n) term blurs digits from n up
            digits = min(z.zero_abs, x.valuation + x.precision_k) - x.valuation
            if digits < 1:
                # x drowns in the marker's uncertainty: the sum is O(p^n)
                return PadicNumber.zero(
                    p, min(self.precision_k, other.precision_k), z.zero_abs
                )
            return PadicNumber(
                PadicContext(p, digits), x.valuation, x.unit_digits % p**digits
            )
        lo, hi = (self, other) if self.valuation <= other.valuation else (other, self)
        shift = hi.valuation - lo.valuation
        digits = min(lo.precision_k, shift + hi.precision_k)
        mod = p**digits
        t = (lo.unit_digits + hi.unit_digits * p**shift) % mod
        if t == 0:
            return PadicNumber.zero(p, min(self.precision_k, other.precision_k),
                                    lo.valuation + digits)
        c = 0
        while t % p == 0:
            t //= p
            c += 1
        return PadicNumber(PadicContext(p, digits - c), lo.valuation + c, t % p**(digits - c))

    def __sub__(self, other: "PadicNumber") -> "PadicNumber":
        if not isinstance(other, PadicNumber):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: "PadicNumber") -> "PadicNumber":
        if not isinstance(other, PadicNumber):
            return NotImplemented
        self._require_same_p(other)
        p = self.p
        k = min(self.precision_k, other.precision_k)
        if self.is_zero or other.is_zero:
            bounds = []
            for z, x in ((self, other), (other, self)):
                if not z.is_zero:
                    continue
                if z.zero_abs is None:
                    return PadicNumber.zero(p, k)
                shift = x.valuation if not x.is_zero else (
                    x.zero_abs if x.zero_abs is not None else None
                )
                if shift is None:
                    return PadicNumber.zero(p, k)
                bounds.append(z.zero_abs + shift)
            return PadicNumber.zero(p, k, min(bounds))
        u = self.unit_digits * other.unit_digits % p**k
        return PadicNumber(PadicContext(p, k), self.valuation + other.valuation, u)

    def __truediv__(self, other: "PadicNumber") -> "PadicNumber":
        if not isinstance(other, PadicNumber):
            return NotImplemented
        self._require_same_p(other)
        if other.is_zero:
            if other.zero_abs is None:
                raise ZeroDivisionError("p-adic division by exact zero")
            raise PrecisionError(
                f"division by O({other.p}^{other.zero_abs}): divisor may be zero"
            )
        p = self.p
        k = min(self.precision_k, other.precision_k)
        if self.is_zero:
            if self.zero_abs is None:
                return PadicNumber.zero(p, k)
            return PadicNumber.zero(p, k, self.zero_abs - other.valuation)
        u = self.unit_digits * pow(other.unit_digits, -1, p**k) % p**k
        return PadicNumber(PadicContext(p, k), self.valuation - other.valuation, u)

    def __pow__(self, e: int) -> "PadicNumber":
        if self.is_zero:
            if e > 0:
                if self.zero_abs is None:
                    return self
                return PadicNumber.zero(self.p, self.precision_k, self.zero_abs * e)
            raise ZeroDivisionError("nonpositive power of p-adic zero")
        p, k = self.p, self.precision_k
        u = pow(self.unit_digits, e, p**k)
        return PadicNumber(self.context, self.valuation * e, u)

    # -- fractional part ----------------------------------------------------

    def frac_part(self) -> Fraction:
        """The unique rational in [0,1) with p-power denominator whose
        difference from this value is a p-adic integer."""
        p = self.p
        if self.is_zero:
            if self.zero_abs is None or self.zero_abs >= 0:
                return Fraction(0)
            raise PrecisionError(
                f"fractional part of O({p}^{self.zero_abs}) is undetermined"
            )
        v = self.valuation
        if v >= 0:
            return Fraction(0)
        if -v > self.precision_k:
            raise PrecisionError(
                f"fractional part needs {-v} digits, only {self.precision_k} stored"
            )
        c = self.unit_digits % p ** (-v)
        return Fraction(c, p ** (-v))

    # -- serialization ------------------------------------------------------

    def __str__(self) -> str:
        p, k = self.p, self.precision_k
        if self.is_zero:
            if self.zero_abs is None:
                return "0"
            return f"0 mod {p}^{self.zero_abs}"
        return f"{p}^{self.valuation} * {self.unit_digits} mod {p}^{k}"

    _FORM = _re.compile(
        r"^(\d+)\^(-?\d+) \* (\d+) mod (\d+)\^(\d+)$"
    )
    _ZERO_FORM = _re.compile(r"^0 mod (\d+)\^(-?\d+)$")

    @classmethod
    def parse(cls, text: str, *, p: int | None = None, precision: int | None = None) -> "PadicNumber":
        s = text.strip()
        if s == "0":
            if p is None or precision is None:
                raise ValueError("parsing exact zero requires p and precision")
            return cls.zero(p, precision)
        m = cls._ZERO_FORM.match(s)
        if m:
            pp, n = int(m.group(1)), int(m.group(2))
            return cls.zero(pp, precision or max(1, n), n)
        m = cls._FORM.match(s)
        if m is None:
            raise ValueError(f"cannot parse p-adic literal {text!r}")
        p1, v, u, p2, k = (int(g) for g in m.groups())
        if p1 != p2:
            raise ValueError(f"mismatched primes in {text!r}")
        return cls(PadicContext(p1, k), v, u)


def embed(q: GaussianRational | GaussianInt | int, p: int, k: int) -> PadicNumber:
    """The field embedding of Q(i) determined by the canonical sqrt(-1):
    the absolute value of the image equals abs_at(q, barred site)."""
    if isinstance(q, (int, GaussianInt)):
        q = GaussianRational(q)
    if not q:
        return PadicNumber.zero(p, k)
    bar = P5BAR if p == 5 else P13BAR
    v = valuation(q, bar)
    d = q.den
    s = 0
    while d % p == 0:
        d //= p
        s += 1
    vn = v + s  # valuation of the numerator a + b*i_p
    root = sqrt_neg1(p, vn + k).digits
    mod = p ** (vn + k)
    n = (q.num.re + q.num.im * root) % mod
    assert n % p**vn == 0, "numerator valuation disagrees with trial division"
    u = (n // p**vn) * pow(d, -1, p**k) % p**k
    return PadicNumber(PadicContext(p, k), v, u)


def gauss_frac_part(q: GaussianRational | GaussianInt | int, p: int) -> Fraction:
    """Exact p-adic fractional part of the embedding of q, computed without
    constructing a PadicNumber."""
    if isinstance(q, (int, GaussianInt)):
        q = GaussianRational(q)
    if not q:
        return Fraction(0)
    bar = P5BAR if p == 5 else P13BAR
    j = max(0, -valuation(q, bar))
    if j == 0:
        return Fraction(0)
    d = q.den
    s = 0
    while d % p == 0:
        d //= p
        s += 1
    # the numerator has p-adic valuation s - j >= 0; divide it out exactly
    root = sqrt_neg1(p, s + j).digits
    n = (q.num.re + q.num.im * root) % p ** (s + j)
    assert n % p ** (s - j) == 0
    c = (n // p ** (s - j)) * pow(d, -1, p**j) % p**j
    return Fraction(c, p**j)


def _series_terms_log(k: int) -> int:
    # v_p(t^n / n) >= n - log_p(n) >= k once n >= k + 6 for p >= 5, k <= 120
    return k + 6


def _series_terms_exp(k: int) -> int:
    # v_p(t^n / n!) >= n(p-2)/(p-1) >= 3n/4 for p >= 5
    return (4 * (k + 1)) // 3 + 2


def _truncate_absolute(x: Fraction, p: int, k: int) -> PadicNumber:
    """x as a PadicNumber claiming correctness mod p**k and no more."""
    if x == 0:
        return PadicNumber.zero(p, k, k)
    num, den, v = x.numerator, x.denominator, 0
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    if v >= k:
        return PadicNumber.zero(p, k, k)
    digits = k - v
    u = num * pow(den, -1, p**digits) % p**digits
    return PadicNumber(PadicContext(p, digits), v, u)


def plog(u: PadicNumber) -> PadicNumber:
    """p-adic logarithm on 1 + pZ_p, by exact series evaluation.

    The result is correct modulo p**k for the input's stored precision k
    (absolute), and claims exactly that much.
    """
    p, k = u.p, u.precision_k
    if u.is_zero or u.valuation != 0 or u.unit_digits % p != 1:
        raise ValueError("plog domain: need a unit congruent to 1 mod p")
    t = u.unit_digits - 1
    total = Fraction(0)
    power = 1
    for n in range(1, _series_terms_log(k) + 1):
        power *= t
        term = Fraction(power, n)
        total += term if n % 2 else -term
    return _truncate_absolute(total, p, k)


def pexp(x: PadicNumber) -> PadicNumber:
    """p-adic exponential on pZ_p, by exact series evaluation.

    Correct modulo p**n where n is the input's absolute precision
    (valuation + stored digits)."""
    p = x.p
    if x.is_zero:
        if x.zero_abs is None:
            return PadicNumber.from_unit(p, x.precision_k, 0, 1)
        if x.zero_abs < 1:
            raise PrecisionError("pexp argument not known to lie in pZ_p")
        return PadicNumber(PadicContext(p, x.zero_abs), 0, 1)
    if x.valuation < 1:
        raise ValueError("pexp domain: need valuation >= 1")
    k = x.valuation + x.precision_k
    t = p**x.valuation * x.unit_digits
    total = Fraction(1)
    power = 1
    fact = 1
    for n in range(1, _series_terms_exp(k) + 1):
        power *= t
        fact *= n
        total += Fraction(power, fact)
    return _truncate_absolute(total, p, k)


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def closure_index(u: PadicNumber, k: int | None = None) -> int:
    """Index in (Z/p**k)* of the subgroup generated by u's unit part.

    Stabilization of the result as k grows is the caller's concern; a root
    of unity raises TorsionUnitError ("index not finite at this precision").
    """
    if u.is_zero or u.valuation != 0:
        raise ValueError("closure_index needs a unit (valuation 0)")
    p = u.p
    if k is None:
        k = u.precision_k
    if k > u.precision_k:
        raise PrecisionError(f"need {k} digits, only {u.precision_k} stored")
    mod = p**k
    U = u.unit_digits % mod
    if pow(U, p - 1, mod) == 1:
        raise TorsionUnitError(
            f"{U} mod {p}^{k} is a root of unity: index not finite at this precision"
        )
    group_order = p ** (k - 1) * (p - 1)
    order = group_order
    for prime, mult in _factorize(group_order).items():
        for _ in range(mult):
            if pow(U, order // prime, mod) == 1:
                order //= prime
            else:
                break
    return group_order // order
