"""Planar stripe-covering machinery: exact uncovered-region certificates over
a period lattice, obstruction tuples and their margins, the near-degenerate
irrational rotation triple, certified disk coverage on a grid, lattice
snapping, and the rationality experiment.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt

import numpy as np

from .gaussian import (
    GaussianInt,
    GaussianRational,
    P5BAR,
    P13BAR,
    as_gaussian_rational,
    gaussian_ints_of_norm,
    is_sum_of_two_squares,
    nearest_gaussian_int,
    theta_power,
    theta_set,
    try_exact_div,
)
from .polygon import ConvexPolygon

__all__ = [
    "CoveringConfig",
    "CoverReport",
    "DiskCoverReport",
    "RationalityReport",
    "uncovered_region",
    "verify_obstruction",
    "obstruction_catalog",
    "irrational_triple",
    "theta_prime",
    "certified_disk_cover",
    "snap_to_lattice",
    "rationality_check",
]


def _to_complex(q: GaussianRational) -> complex:
    return complex(float(q.re), float(q.im))


class CoveringConfig:
    """A stripe configuration: unit-modulus rotations, a stripe half-width
    epsilon in (0, 1/2), and a Gaussian-integer period multiplier compatible
    with every exact rotation."""

    __slots__ = ("_rotations", "_epsilon", "_period")

    def __init__(self, rotations, epsilon, period=GaussianInt(1, 0)):
        rots = []
        exact = True
        for t in rotations:
            q = as_gaussian_rational(t)
            if q is not None:
                rots.append(q)
            elif isinstance(t, (complex, float)):
                rots.append(complex(t))
                exact = False
            else:
                raise TypeError(f"cannot use {type(t)!r} as a rotation")
        if not rots:
            raise ValueError("at least one rotation is required")
        if exact:
            for q in rots:
                if q.abs2() != 1:
                    raise ValueError(f"rotation {q} does not have unit modulus")
        else:
            if any(isinstance(t, GaussianRational) for t in rots):
                raise ValueError("rotations must be all exact or all floating")
            for t in rots:
                if abs(abs(t) - 1.0) > 1e-9:
                    raise ValueError(f"rotation {t} does not have unit modulus")
        if isinstance(epsilon, float):
            eps: Fraction | float = epsilon
        else:
            eps = Fraction(epsilon)
        if not 0 < eps < Fraction(1, 2):
            raise ValueError("stripe half-width must lie in (0, 1/2)")
        if isinstance(period, int):
            period = GaussianInt(period, 0)
        if not isinstance(period, GaussianInt) or not period:
            raise TypeError("period multiplier must be a nonzero Gaussian integer")
        if exact:
            for q in rots:
                if not (GaussianRational(period) * q).is_gaussian_int():
                    raise ValueError(
                        f"period multiplier {period} is incompatible with rotation {q}"
                    )
        object.__setattr__(self, "_rotations", tuple(rots))
        object.__setattr__(self, "_epsilon", eps)
        object.__setattr__(self, "_period", period)

    def __setattr__(self, name, value):
        raise AttributeError("CoveringConfig is immutable")

    @property
    def rotations(self) -> tuple:
        return self._rotations

    @property
    def epsilon(self) -> Fraction | float:
        return self._epsilon

    @property
    def period(self) -> GaussianInt:
        return self._period

    @property
    def exact_mode(self) -> bool:
        return isinstance(self._epsilon, Fraction) and all(
            isinstance(t, GaussianRational) for t in self._rotations
        )

    def __repr__(self) -> str:
        return (
            f"CoveringConfig({list(self._rotations)!r}, {self._epsilon!r}, "
            f"{self._period!r})"
        )


@dataclass(frozen=True)
class CoverReport:
    """Exact certificate for the uncovered part of one period parallelogram."""

    config: CoveringConfig
    uncovered: tuple[ConvexPolygon, ...]
    total_uncovered_area: Fraction
    obstruction_matches: tuple[tuple[tuple[int, int, int], Fraction], ...]

    def _bucket_index(self) -> dict:
        """Unit-grid spatial hash of the pieces, built lazily: bucket (i, j)
        lists every piece whose bounding box meets [i, i+1) x [j, j+1)."""
        cached = self.__dict__.get("_buckets")
        if cached is not None:
            return cached
        buckets: dict[tuple[int, int], list[ConvexPolygon]] = {}
        for poly in self.uncovered:
            xmin, xmax, ymin, ymax = poly.bounding_box()
            for ix in range(math.floor(xmin), math.floor(xmax) + 1):
                for iy in range(math.floor(ymin), math.floor(ymax) + 1):
                    buckets.setdefault((ix, iy), []).append(poly)
        object.__setattr__(self, "_buckets", buckets)
        return buckets

    def contains(self, z) -> bool:
        """Exact membership of a complex point in the (periodic) uncovered set."""
        q = as_gaussian_rational(z)
        if q is None:
            raise TypeError("membership checks need an exact point")
        buckets = self._bucket_index()
        D = GaussianRational(self.config.period)
        w = q / D
        frac = GaussianRational.from_fractions(w.re % 1, w.im % 1)
        base = frac * D
        for j in (0, -1, 1):
            for k in (0, -1, 1):
                shift = D * GaussianRational(GaussianInt(j, k))
                p = (base.re + shift.re, base.im + shift.im)
                cell = (math.floor(p[0]), math.floor(p[1]))
                for poly in buckets.get(cell, ()):
                    xmin, xmax, ymin, ymax = poly.bounding_box()
                    if not (xmin <= p[0] <= xmax and ymin <= p[1] <= ymax):
                        continue
                    if poly.contains(p):
                        return True
        return False

    def distance_sq_to_uncovered(self, z) -> Fraction | None:
        """Exact squared distance from a point to the periodic uncovered set,
        or None when the uncovered set is empty."""
        if not self.uncovered:
            return None
        q = as_gaussian_rational(z)
        if q is None:
            raise TypeError("distance checks need an exact point")
        D = GaussianRational(self.config.period)
        w = q / D
        frac = GaussianRational.from_fractions(w.re % 1, w.im % 1)
        base = frac * D
        best: Fraction | None = None
        for j in (0, -1, 1):
            for k in (0, -1, 1):
                shift = D * GaussianRational(GaussianInt(j, k))
                p = (base.re + shift.re, base.im + shift.im)
                for poly in self.uncovered:
                    d = poly.dist_sq_to_point(p)
                    if best is None or d < best:
                        best = d
        return best

    def report_lines(self) -> list[str]:
        """Structured-text serialization (versioned, exact)."""
        cfg = self.config
        lines = [
            "pyjama-report v1",
            "kind=cover",
            f"epsilon={cfg.epsilon}",
            f"period={cfg.period}",
            f"period_norm={cfg.period.norm()}",
            f"rotations={';'.join(str(t) for t in cfg.rotations)}",
            f"uncovered_count={len(self.uncovered)}",
            f"total_uncovered_area={self.total_uncovered_area}",
        ]
        for i, poly in enumerate(self.uncovered):
            verts = ";".join(f"{x},{y}" for x, y in poly.vertices)
            lines.append(f"polygon {i} kind={poly.kind} vertices={verts}")
        for (a, b, m), dist_sq in self.obstruction_matches:
            lines.append(f"obstruction a={a} b={b} m={m} distance_sq={dist_sq}")
        return lines


def _domain_parallelogram(D: GaussianInt) -> ConvexPolygon:
    zero = Fraction(0)
    re, im = Fraction(D.re), Fraction(D.im)
    return ConvexPolygon(
        [(zero, zero), (re, im), (re - im, im + re), (-im, re)]
    )


def _subtract_stripes(
    pieces: list[ConvexPolygon], rotation: GaussianRational, eps: Fraction
) -> list[ConvexPolygon]:
    tr, ti = rotation.re, rotation.im
    out: list[ConvexPolygon] = []
    for piece in pieces:
        fvals = [tr * x - ti * y for x, y in piece.vertices]
        fmin, fmax = min(fvals), max(fvals)
        cur: ConvexPolygon | None = piece
        for k in range(math.ceil(fmin - eps), math.floor(fmax + eps) + 1):
            left = cur.clip_halfplane(tr, -ti, k - eps)
            if left is not None:
                out.append(left)
            cur = cur.clip_halfplane(-tr, ti, -(k + eps))
            if cur is None:
                break
        if cur is not None:
            out.append(cur)
    return out


def uncovered_region(config: CoveringConfig, obstruction_m_max: int = 3) -> CoverReport:
    """The closed subset of one period parallelogram missed by every open
    stripe, as exact convex pieces, with matching obstruction tuples."""
    if not config.exact_mode:
        raise ValueError("the uncovered-region certificate requires exact mode")
    pieces = [_domain_parallelogram(config.period)]
    for rotation in config.rotations:
        pieces = _subtract_stripes(pieces, rotation, config.epsilon)
        if not pieces:
            break
    area = sum((p.area() for p in pieces), Fraction(0))
    matches = []
    report = CoverReport(config, tuple(pieces), area, ())
    normD = config.period.norm()
    for (a, b, m), _margin in obstruction_catalog(
        config.epsilon, obstruction_m_max, normD
    ):
        point = GaussianRational(GaussianInt(a, b), m) * GaussianRational(config.period)
        dist_sq = report.distance_sq_to_uncovered(point)
        if dist_sq is not None:
            matches.append(((a, b, m), dist_sq))
    return CoverReport(config, tuple(pieces), area, tuple(matches))


# ---------------------------------------------------------------------------
# obstruction certificates
# ---------------------------------------------------------------------------


def verify_obstruction(
    a: int, b: int, m: int, normD: int, epsilon
) -> tuple[bool, Fraction]:
    """Whether the point (a + b*i)/m times any norm-normD period multiplier
    stays at circle-distance >= epsilon from the integer stripes; returns the
    verdict together with the exact minimal distance (the margin)."""
    if m < 1:
        raise ValueError("denominator m must be positive")
    if gcd(gcd(a, b), m) != 1:
        raise ValueError(f"({a}, {b}, {m}) is not gcd-normalized")
    if not is_sum_of_two_squares(normD):
        raise ValueError(f"no Gaussian integers have norm {normD}")
    eps = Fraction(epsilon)
    margin: Fraction | None = None
    for g in gaussian_ints_of_norm(normD):
        v = Fraction(g.re * a - g.im * b, m) % 1
        dist = min(v, 1 - v)
        if margin is None or dist < margin:
            margin = dist
    return margin >= eps, margin


def obstruction_catalog(
    epsilon, m_max: int, normD: int
) -> list[tuple[tuple[int, int, int], Fraction]]:
    """All gcd-normalized tuples (a, b, m) with m <= m_max whose obstruction
    margin meets epsilon, sorted by margin descending."""
    eps = Fraction(epsilon)
    if not 0 < eps < Fraction(1, 2):
        raise ValueError("stripe half-width must lie in (0, 1/2)")
    if m_max < 1:
        raise ValueError("m_max must be positive")
    found = []
    for m in range(1, m_max + 1):
        for a in range(m):
            for b in range(m):
                if gcd(gcd(a, b), m) != 1:
                    continue
                ok, margin = verify_obstruction(a, b, m, normD, eps)
                if ok:
                    found.append(((a, b, m), margin))
    found.sort(key=lambda item: (-item[1], item[0]))
    return found


# ---------------------------------------------------------------------------
# the irrational rotation triple
# ---------------------------------------------------------------------------


def irrational_triple(n: int) -> tuple[complex, complex, complex]:
    """Unit complex numbers (z1, z2, 1) with n*(z1 + z2) = 1: the degenerate
    triangle trick that forces irrational rotation angles."""
    if n < 1:
        raise ValueError("triangle parameter must be positive")
    re = 1.0 / (2 * n)
    im = math.sqrt(1.0 - re * re)
    z1 = complex(re, im)
    return z1, z1.conjugate(), complex(1.0, 0.0)


def theta_prime(n: int, N: int) -> list[complex]:
    """The three rotated copies of the rational rotation grid: 3*(N+1)**2
    floating unit complexes (duplicates kept)."""
    if n < 1 or N < 0:
        raise ValueError("need n >= 1 and N >= 0")
    zetas = irrational_triple(n)
    grid = [_to_complex(t) for t in theta_set(N)]
    return [zeta * t for zeta in zetas for t in grid]


# ---------------------------------------------------------------------------
# certified disk coverage
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DiskCoverReport:
    """Outcome of a grid certification run over a disk."""

    certified: bool
    radius: float
    pitch: float
    rounds_used: int
    cells_checked: int
    failing_cells: tuple[tuple[float, float], ...] = field(repr=False)


def _coverage_mask(
    xs: np.ndarray, ys: np.ndarray, rotations: list[complex], slack: float
) -> np.ndarray:
    covered = np.zeros(xs.shape, dtype=bool)
    for t in rotations:
        values = t.real * xs - t.imag * ys
        covered |= np.abs(values - np.rint(values)) < slack
    return covered


def certified_disk_cover(
    rotations, epsilon, radius, pitch, refine_rounds: int = 0
) -> DiskCoverReport:
    """Certify that the open stripes of the given rotations cover the disk of
    the given radius: a grid cell is certified when some rotation holds its
    center deeper inside a stripe than the cell's own reach (half-diagonal,
    by 1-Lipschitz continuity of the stripe coordinate)."""
    rots = []
    for t in rotations:
        q = as_gaussian_rational(t)
        rots.append(_to_complex(q) if q is not None else complex(t))
    if not rots:
        raise ValueError("at least one rotation is required")
    eps = float(epsilon)
    R = float(radius)
    h = float(pitch)
    if R <= 0 or h <= 0:
        raise ValueError("radius and pitch must be positive")
    half_diag = h * math.sqrt(2) / 2
    if eps - half_diag <= 0:
        raise ValueError("pitch too coarse for this stripe half-width")
    n = max(1, math.ceil(2 * R / h))
    centers = -R + h * (np.arange(n) + 0.5)
    xs, ys = np.meshgrid(centers, centers)
    xs, ys = xs.ravel(), ys.ravel()
    keep = xs * xs + ys * ys <= (R + half_diag) ** 2
    xs, ys = xs[keep], ys[keep]
    checked = xs.size
    covered = _coverage_mask(xs, ys, rots, eps - half_diag)
    fx, fy = xs[~covered], ys[~covered]
    rounds_used = 0
    cur_h = h
    for _ in range(refine_rounds):
        if fx.size == 0:
            break
        cur_h /= 2
        off = cur_h / 2
        cx = np.concatenate([fx - off, fx + off, fx - off, fx + off])
        cy = np.concatenate([fy - off, fy - off, fy + off, fy + off])
        half_diag = cur_h * math.sqrt(2) / 2
        keep = cx * cx + cy * cy <= (R + half_diag) ** 2
        cx, cy = cx[keep], cy[keep]
        checked += cx.size
        covered = _coverage_mask(cx, cy, rots, eps - half_diag)
        fx, fy = cx[~covered], cy[~covered]
        rounds_used += 1
    failing = tuple(sorted((float(x), float(y)) for x, y in zip(fx, fy)))
    return DiskCoverReport(
        certified=not failing,
        radius=R,
        pitch=cur_h,
        rounds_used=rounds_used,
        cells_checked=int(checked),
        failing_cells=failing,
    )


# ---------------------------------------------------------------------------
# lattice snapping and the rationality experiment
# ---------------------------------------------------------------------------


def snap_to_lattice(x, a: int, b: int, eta) -> GaussianRational:
    """Recover the period-lattice point within eta of x, given that every
    rotation in the (a, b) exponent box keeps x within eta of the integer
    lattice (checked exactly; the snap then lands on the sublattice)."""
    q = as_gaussian_rational(x)
    if q is None:
        raise TypeError("snap needs an exact point")
    if a < 0 or b < 0:
        raise ValueError("exponent bounds must be nonnegative")
    eta = Fraction(eta)
    if not 0 < eta <= Fraction(1, 100):
        raise ValueError("snap tolerance must lie in (0, 1/100]")
    eta_sq = eta * eta
    for r in range(a + 1):
        for s in range(b + 1):
            w = theta_power(r, s) * q
            diff = w - nearest_gaussian_int(w)
            if diff.abs2() > eta_sq:
                raise ValueError(
                    "not uniformly close to the integer lattice: rotation "
                    f"exponents ({r}, {s}) give squared distance {diff.abs2()}"
                )
    y = nearest_gaussian_int(q)
    D = P5BAR.generator**a * P13BAR.generator**b
    if try_exact_div(y, D) is None:
        raise RuntimeError(
            "snap certificate violated: nearest integer point is not a "
            "period-lattice multiple"
        )
    return GaussianRational(y)


@dataclass(frozen=True)
class RationalityReport:
    """How close every uncovered piece sits to refined non-period lattice
    points, plus the period-size threshold bookkeeping."""

    refinement: int
    polygon_count: int
    distances_sq: tuple[Fraction, ...]
    max_distance_sq: Fraction
    within_bound: bool
    period_norm: int
    threshold: int
    period_exceeds_threshold: bool


def _refined_lattice_dist_sq(
    poly: ConvexPolygon, D: GaussianInt, n: int
) -> Fraction:
    xmin, xmax, ymin, ymax = poly.bounding_box()
    pad = Fraction(2 * (isqrt(D.norm()) + 1), n)
    corners = [
        (xmin - pad, ymin - pad),
        (xmax + pad, ymin - pad),
        (xmax + pad, ymax + pad),
        (xmin - pad, ymax + pad),
    ]
    scale = GaussianRational(GaussianInt(n, 0)) / GaussianRational(D)
    images = [GaussianRational.from_fractions(cx, cy) * scale for cx, cy in corners]
    jmin = math.floor(min(w.re for w in images)) - 1
    jmax = math.ceil(max(w.re for w in images)) + 1
    kmin = math.floor(min(w.im for w in images)) - 1
    kmax = math.ceil(max(w.im for w in images)) + 1
    best: Fraction | None = None
    for j in range(jmin, jmax + 1):
        for k in range(kmin, kmax + 1):
            if j % n == 0 and k % n == 0:
                continue
            px = Fraction(D.re * j - D.im * k, n)
            py = Fraction(D.im * j + D.re * k, n)
            d = poly.dist_sq_to_point((px, py))
            if best is None or d < best:
                best = d
    assert best is not None, "candidate window missed the refined lattice"
    return best


def rationality_check(config: CoveringConfig, n: int) -> RationalityReport:
    """Exact distances from every uncovered piece to the nearest refined
    lattice point that is not itself a period point, with the max compared
    against the fixed bound 20 and the period norm against 40n^2 + 20n."""
    if n < 2:
        raise ValueError("refinement index must be at least 2")
    report = uncovered_region(config)
    D = config.period
    distances = tuple(
        _refined_lattice_dist_sq(poly, D, n) for poly in report.uncovered
    )
    max_d = max(distances, default=Fraction(0))
    threshold = 40 * n * n + 20 * n
    return RationalityReport(
        refinement=n,
        polygon_count=len(report.uncovered),
        distances_sq=distances,
        max_distance_sq=max_d,
        within_bound=max_d <= 400,
        period_norm=D.norm(),
        threshold=threshold,
        period_exceeds_threshold=D.norm() > threshold * threshold,
    )
