"""
Escape to infinity, and deterministic simulation
================================================

Drop interior absorption (s = 0 on both sides of the origin) and give
the origin itself the only absorbing exit.  With drift pointing outward
the walker faces a three-way outcome: absorbed at the origin, escape to
+infinity, or escape to -infinity.  The trio has a closed form; no
finite matrix can check it, so the oracle is a Monte Carlo run.

The simulator is counter-based: replica r always consumes the same
random stream regardless of how many workers share the job, so results
are bit-identical across worker counts and exactly reproducible from
(seed, replicas).
"""

import math

from pqrswalk import (
    ModifiedFullLineSpec,
    display_escape,
    mc_run,
    mfullline_escape,
    mid_barrier,
    pqrs,
)

spec = ModifiedFullLineSpec(
    pos_regime=pqrs(p=0.5, q=0.3, r=0.2, s=0.0),
    neg_regime=pqrs(p=0.3, q=0.5, r=0.2, s=0.0),
    origin=mid_barrier(fwd=0.25, bwd=0.25, hold=0.3, absorb=0.2),
)

# -- the closed-form trio ----------------------------------------------------------

for i0 in (0, 2, -2):
    absorbed, plus, minus = mfullline_escape(spec, i0)
    print(
        f"from {i0:+d}: absorbed {absorbed:.12f}, "
        f"escape+ {plus:.12f}, escape- {minus:.12f}, "
        f"sum {absorbed + plus + minus:.15f}"
    )
print(f"display form agrees: {display_escape(spec, 0)}")

# -- Monte Carlo with counter-based streams -----------------------------------------

replicas, seed = 200_000, 11
run = mc_run(spec, 0, replicas=replicas, seed=seed)
trio = mfullline_escape(spec, 0)
print(f"\n{replicas} replicas, seed {seed}:")
for key, want in zip(("absorbed", "plus", "minus"), trio):
    est = run.escape[key]
    floor = math.sqrt(want * (1.0 - want) / replicas)
    sigmas = abs(est.mean - want) / max(est.se, floor)
    print(f"  {key:>8}: {est.mean:.6f} +- {est.se:.6f}  exact {want:.6f}"
          f"  ({sigmas:.2f} sigma)")

# same seed, different worker counts: identical to the last bit
lone = mc_run(spec, 0, replicas=replicas, seed=seed, workers=1)
team = mc_run(spec, 0, replicas=replicas, seed=seed, workers=8)
assert lone.escape == team.escape
print("\n1 worker and 8 workers produced identical estimates, bit for bit")

# absorbing walks get mean times and absorption sites the same way
from pqrswalk import FiniteWalkSpec, finite_absorption, left_barrier, right_barrier

fin = FiniteWalkSpec(
    N=5,
    interior=pqrs(0.3, 0.25, 0.25, 0.2),
    left=left_barrier(fwd=0.5, hold=0.3, absorb=0.2),
    right=right_barrier(bwd=0.4, hold=0.35, absorb=0.25),
)
frun = mc_run(fin, 2, replicas=100_000, seed=3)
want = finite_absorption(fin, 2).mean_time
est = frun.mean_time
print(f"\nfinite walk mean time: simulated {est.mean:.4f} +- {est.se:.4f},"
      f" exact {want:.4f}")
