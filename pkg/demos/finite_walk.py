"""
Walks on {0, ..., N} with partially absorbing barriers
======================================================

The walker lives on a finite stretch of integers.  Interior states step
right/left/hold/absorb with [p, q, r, s]; the barrier at 0 can only step
inward, hold or absorb, and likewise at N.  The library returns, in
closed form: the expected number of arrivals at each state, the
probability of being absorbed at each state, the probability of ever
reaching a state, and the expected time to absorption.

Every value is cross-checked here against a dense fundamental-matrix
solve of the same chain.
"""

import numpy as np

from pqrswalk import (
    FiniteWalkSpec,
    build_chain,
    exact_absorption,
    exact_visits,
    finite_absorption,
    finite_arrival_probability,
    finite_arrivals,
    left_barrier,
    pqrs,
    right_barrier,
    validate,
)

spec = FiniteWalkSpec(
    N=5,
    interior=pqrs(p=0.3, q=0.25, r=0.25, s=0.2),
    left=left_barrier(fwd=0.5, hold=0.3, absorb=0.2),
    right=right_barrier(bwd=0.4, hold=0.35, absorb=0.25),
)
print(validate(spec))
i0 = 2

# -- expected arrivals x_{i0, n} -----------------------------------------------

profile = finite_arrivals(spec, i0)
print(f"\nexpected arrivals starting from {i0}:")
for n, x in profile.values.items():
    print(f"  state {n}: {x:.12f}")

# -- absorption: where and when ------------------------------------------------

summary = finite_absorption(spec, i0)
print("\nabsorption probabilities:")
for n, prob in summary.probabilities.items():
    print(f"  at state {n}: {prob:.12f}")
print(f"sum = {sum(summary.probabilities.values()):.15f}")
print(f"mean time to absorption = {summary.mean_time:.12f}")

# the two identities every spec satisfies:
#   sum_n s_n * x_n = 1          (absorption happens exactly once)
#   sum_n x_n = mean time + 1    (each epoch is an arrival somewhere)
total = sum(profile.values.values())
print(f"arrival total - 1       = {total - 1:.12f}")

# -- probability of ever reaching state j --------------------------------------

print("\nreach probabilities from 2:")
for j in range(spec.N + 1):
    print(f"  f(2 -> {j}) = {finite_arrival_probability(spec, i0, j):.12f}")

# -- everything again, from the dense oracle ------------------------------------

chain = build_chain(spec)
visits = exact_visits(chain, i0)
exact = exact_absorption(chain, i0)
worst = max(
    abs(profile.values[n] - visits[n]) / visits[n] for n in range(spec.N + 1)
)
print(f"\nworst relative gap, closed form vs dense solve: {worst:.3e}")
print(f"mean-time gap: {abs(summary.mean_time - exact.mean_time):.3e}")
