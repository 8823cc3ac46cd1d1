"""
Counting spheres in the Cayley graph
====================================

Breadth-first search over the eight finite generators, using canonical
diagram keys to spot repeats.
"""

from fractions import Fraction

from bvgroup import ball, divergence_spotcheck
from bvgroup.oracle import caret_length_consistency

b = ball(3)
for r in range(b.radius + 1):
    print(f"sphere {r}: {len(b.sphere(r))}")

# carets against word length over the ball
print(caret_length_consistency(3).summary())

# every pair on the sphere of radius 2 joins up outside the excluded ball
print(divergence_spotcheck(2, Fraction(1, 3)).summary())
