"""Shared helpers for the seeded randomized tests."""

from __future__ import annotations

import random

from pyjama.gaussian import P5BAR, P13BAR, GaussianInt, GaussianRational


def rng(seed: int = 0) -> random.Random:
    return random.Random(seed)


def random_gaussian_int(r: random.Random, max_coeff: int = 30) -> GaussianInt:
    return GaussianInt(r.randint(-max_coeff, max_coeff), r.randint(-max_coeff, max_coeff))


def random_gaussian_rational(
    r: random.Random,
    max_coeff: int = 30,
    max_den: int = 30,
    nonzero: bool = False,
) -> GaussianRational:
    while True:
        q = GaussianRational(random_gaussian_int(r, max_coeff), r.randint(1, max_den))
        if q or not nonzero:
            return q


def random_a_element(
    r: random.Random,
    max_coeff: int = 20,
    max_exp: int = 4,
    nonzero: bool = False,
) -> GaussianRational:
    """Random element of the ring A: Gaussian-integer numerator over a
    product of barred-site generators."""
    while True:
        g = random_gaussian_int(r, max_coeff)
        den = P5BAR.generator ** r.randint(0, max_exp) * P13BAR.generator ** r.randint(0, max_exp)
        q = GaussianRational(g) / GaussianRational(den)
        if q or not nonzero:
            return q
