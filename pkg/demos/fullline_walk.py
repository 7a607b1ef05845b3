"""
Free walks on all the integers
==============================

No barriers at all: the walk must absorb from the interior (s > 0), and
everything becomes translation invariant.  The mean time to absorption
is (1-s)/s from anywhere; arrivals depend only on the displacement
n - i0, through powers of the characteristic roots; the return
probability has a closed form in zeta = 1/sqrt((1-r)^2 - 4pq).

The uniform walk p = q = r = s = 1/4 makes nice constants:
zeta = 4/sqrt(5), return probability 1 - sqrt(5)/4 -- printed below,
then checked against the truncated oracle.
"""

import numpy as np

from pqrswalk import (
    FullLineWalkSpec,
    build_chain,
    exact_absorption,
    exact_visits,
    fullline_absorption,
    fullline_arrival_probability,
    fullline_arrivals,
    fullline_defective_time,
    fullline_return,
    pqrs,
    roots_at,
)

uniform = FullLineWalkSpec(interior=pqrs(0.25, 0.25, 0.25, 0.25))

# -- the uniform walk's constants ------------------------------------------------

rt = roots_at(uniform.interior, 1.0)
print(f"zeta              = {rt.zeta:.12f}  (4/sqrt(5) = {4 / np.sqrt(5):.12f})")
print(f"return probability = {fullline_return(uniform):.12f}"
      f"  (1 - sqrt(5)/4 = {1 - np.sqrt(5) / 4:.12f})")
print(f"mean time          = {fullline_absorption(uniform):.12f}  ((1-s)/s = 3)")

# -- arrivals and defective times depend only on displacement --------------------

spec = FullLineWalkSpec(interior=pqrs(p=0.35, q=0.2, r=0.25, s=0.2))
print("\ndrifty walk, arrivals by displacement k = n - i0:")
for k in range(-4, 5):
    print(f"  k = {k:+d}: {fullline_arrivals(spec, 0, k):.12f}")
shifted = fullline_arrivals(spec, 10, 13)
print(f"translation check: x(10 -> 13) = {shifted:.12f} equals k = +3 above")

print("\ndefective times m_{0j}:")
for k in range(-3, 4):
    print(f"  k = {k:+d}: {fullline_defective_time(spec, k):.12f}")

print(f"\nreturn probability f_ii = {fullline_return(spec):.12f}")
print(f"f(0 -> +5) = {fullline_arrival_probability(spec, 0, 5):.12f}")
print(f"f(0 -> -5) = {fullline_arrival_probability(spec, 0, -5):.12f}")

# -- against the truncated oracle -------------------------------------------------

chain = build_chain(spec, window="auto", start=0)
visits = exact_visits(chain, 0)
exact = exact_absorption(chain, 0)
worst = max(
    abs(fullline_arrivals(spec, 0, n) - visits[n - chain.lo])
    for n in range(-30, 31)
)
print(f"\noracle window {chain.lo}..{chain.hi}; worst arrivals gap {worst:.3e}")
print(f"mean-time gap: {abs(fullline_absorption(spec) - exact.mean_time):.3e}")
