"""
Stripe coverings and the parity obstruction
===========================================

A covering configuration is a finite set of unit rotations, a stripe
half-width epsilon, and a Gaussian-integer period D.  Each rotation theta
contributes the periodic stripe family {z : Re(z * conj(theta)) within
epsilon of an integer}.  The package computes the uncovered remainder of
one period cell exactly, matches it against congruence-class obstructions,
and renders the picture to SVG.
"""

from fractions import Fraction

from pyjama import (
    THETA5,
    CoveringConfig,
    GaussianInt,
    GaussianRational,
    obstruction_catalog,
    render_svg,
    uncovered_region,
    verify_obstruction,
)

# The reference two-rotation configuration: stripes in directions 1 and
# theta5, half-width 1/4, period 1-2i (norm 5).
config = CoveringConfig([GaussianRational(1), THETA5], Fraction(1, 4), GaussianInt(1, -2))
report = uncovered_region(config)

print("period norm:", config.period.norm())
print("uncovered pieces:", len(report.uncovered))
print("uncovered area:", report.total_uncovered_area)

# The half-odd point (1+i)/2 * D survives every stripe: its pairing value
# against any odd-denominator rotation sits exactly 1/2 away from the
# integers, the worst possible.
half_odd = GaussianRational(GaussianInt(1, 1), 2) * GaussianRational(config.period)
print("uncovered contains (1+i)/2 * D =", half_odd, ":", report.contains(half_odd))

# verify_obstruction checks that congruence class (a + b i)/m * D misses
# every admissible stripe by a computable margin.  The class (1, 1, 2) has
# margin exactly 1/2 for every odd period norm.
for norm_d in (5, 13, 25, 65, 169):
    ok, margin = verify_obstruction(1, 1, 2, norm_d, Fraction(1, 4))
    print(f"class (1,1,2) at period norm {norm_d}: verified={ok} margin={margin}")

# The catalog enumerates all small congruence classes whose margin beats
# the stripe half-width; each entry is ((a, b, m), margin).
catalog = obstruction_catalog(Fraction(1, 4), 3, 5)
print("obstruction catalog at epsilon=1/4, m<=3, norm 5:")
for (a, b, m), margin in catalog:
    print(f"  class ({a},{b},{m}) margin {margin}")

# Render the cell: gray stripe families, uncovered pieces, obstruction
# dots.  The output is byte-deterministic.
svg = render_svg(report)
with open("stripe_cover.svg", "w") as fh:
    fh.write(svg)
print("wrote stripe_cover.svg,", len(svg), "bytes")
