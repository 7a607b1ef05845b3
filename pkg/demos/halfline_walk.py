"""
Walks on {0, 1, 2, ...} with one barrier
========================================

Only the barrier at 0 remains; to the right the walk is unbounded.  The
closed forms become geometric in the smaller characteristic root, and a
new quantity appears: the defective mean time m_ij, the expected
absorption time restricted to paths that get absorbed at j.  Summing
m_ij over j recovers the overall mean time -- the partial sums converge
geometrically, which is how the library bounds its own truncation error.

The oracle here is a finite chain wide enough that the mass beyond the
edge is below 1e-12.
"""

import numpy as np

from pqrswalk import (
    HalfLineWalkSpec,
    build_chain,
    exact_absorption,
    exact_visits,
    halfline_absorption_time,
    halfline_arrival_probability,
    halfline_arrivals,
    halfline_defective_time,
    left_barrier,
    pqrs,
    roots_at,
)

spec = HalfLineWalkSpec(
    interior=pqrs(p=0.3, q=0.25, r=0.25, s=0.2),
    left=left_barrier(fwd=0.6, hold=0.2, absorb=0.2),
)
i0 = 3

# -- arrivals decay geometrically in xi2 ----------------------------------------

profile = halfline_arrivals(spec, i0)
print(f"expected arrivals from {i0} (note the xi2-geometric tail):")
for n in range(0, 9):
    print(f"  state {n}: {profile.at(n):.12f}")
xi2 = roots_at(spec.interior, 1.0).xi2
print(f"ratio x_8/x_7 = {profile.at(8) / profile.at(7):.12f}  vs xi2 = {xi2:.12f}")

# -- mean and defective times ----------------------------------------------------

m = halfline_absorption_time(spec, i0)
print(f"\nmean time to absorption from {i0}: {m:.12f}")
print("defective times m_ij (absorption at j):")
for j in range(0, 7):
    print(f"  j = {j}: {halfline_defective_time(spec, i0, j):.12f}")

# partial sums reach m with a geometric tail bound term/(1 - xi2)
total, j = 0.0, 0
while j <= i0 or halfline_defective_time(spec, i0, j) >= 1e-14:
    total += halfline_defective_time(spec, i0, j)
    j += 1
bound = halfline_defective_time(spec, i0, j) / (1.0 - xi2)
print(f"sum over {j} terms = {total:.12f}  (tail bound {bound:.2e})")

# -- reach probabilities and the windowed oracle ---------------------------------

print(f"\nf({i0} -> 0) = {halfline_arrival_probability(spec, i0, 0):.12f}")
print(f"f({i0} -> 9) = {halfline_arrival_probability(spec, i0, 9):.12f}")

chain = build_chain(spec, window="auto", start=i0)
visits = exact_visits(chain, i0)
exact = exact_absorption(chain, i0)
print(f"\noracle window: states 0..{chain.hi}")
worst = max(abs(profile.at(n) - visits[n]) for n in range(i0 + 41))
print(f"worst absolute gap vs oracle: {worst:.3e}")
print(f"mean-time gap: {abs(m - exact.mean_time):.3e}")
