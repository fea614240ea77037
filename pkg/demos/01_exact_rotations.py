"""
Exact rotation arithmetic on the unit circle
============================================

The package works in the field of Gaussian rationals a/d + (b/d)i with
exact integer arithmetic throughout.  Two distinguished unit-modulus
rotations generate everything the other demos use.
"""

from fractions import Fraction

from pyjama import (
    THETA5,
    THETA13,
    GaussianInt,
    GaussianRational,
    theta_power,
    theta_set,
    unit_circle_elements,
)

# The two generating rotations.  Both have modulus exactly 1, which the
# exact arithmetic can certify without any floating point.
print("theta5  =", THETA5, " |theta5|^2  =", THETA5.abs2())
print("theta13 =", THETA13, " |theta13|^2 =", THETA13.abs2())

# Arbitrary signed powers stay on the unit circle and stay exact.
w = theta_power(3, -2)
print("theta5^3 * theta13^-2 =", w, " modulus^2 =", w.abs2())

# theta_set(N) collects the (N+1)^2 nonnegative power combinations; these
# are the rotation families the covering demos feed to stripe configs.
family = theta_set(2)
print("theta_set(2) has", len(family), "rotations; first three:", family[:3])

# Unit-modulus elements of the field are heavily constrained: enumerate
# every one with reduced denominator up to 100 and observe that all the
# denominators are odd.  (This parity fact is what later forces stripe
# configurations to miss the half-odd lattice points.)
elements = unit_circle_elements(100)
dens = sorted({q.den for q in elements})
print(len(elements), "unit-circle elements with denominator <= 100")
print("denominators seen:", dens)
assert all(d % 2 == 1 for d in dens)

# Exact parsing and printing round-trip, so configuration files can carry
# exact rotations as plain text.
parsed = GaussianRational.parse(str(THETA5))
assert parsed == THETA5
print("round-trip of", str(THETA5), "is exact")

# Rational points can be cleared to Gaussian integers exactly.
q = GaussianRational(GaussianInt(3, -1), 2)
print("q =", q, " 2*q =", q * GaussianRational(2), " norm of 2q =", (q * GaussianRational(2)).abs2())
assert (q * GaussianRational(2)).abs2() == Fraction(10)
