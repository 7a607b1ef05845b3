"""
Two-regime walks with a mid barrier
===================================

Here the line carries a distinguished state M with its own four-way
barrier probabilities, different [p, q, r, s] regimes on each side, and
partially absorbing barriers at the ends.  Closed forms still exist, but
they come from small linear systems: explicit unknowns at the barriers
and the start, geometric two-coefficient patterns on the interior runs.

This script solves those systems directly, shows the labeled unknowns,
then compares the transcribed closed-form displays against them, and
both against the dense oracle.
"""

import numpy as np

from pqrswalk import (
    ModifiedFiniteSpec,
    ModifiedHalfLineSpec,
    build_chain,
    display_mfinite_arrivals,
    display_mhalfline_time,
    display_symmetric_arrivals,
    exact_visits,
    left_barrier,
    mfinite_arrivals,
    mfinite_absorption_probabilities,
    mfinite_system,
    mhalfline_absorption_time,
    mhalfline_arrivals,
    mhalfline_time_system,
    mid_barrier,
    pqrs,
    right_barrier,
)

spec = ModifiedFiniteSpec(
    N=9,
    M=3,
    right_regime=pqrs(p=0.3, q=0.25, r=0.25, s=0.2),
    left_regime=pqrs(p=0.35, q=0.3, r=0.15, s=0.2),
    barrier0=left_barrier(fwd=0.5, hold=0.25, absorb=0.25),
    barrierM=mid_barrier(fwd=0.3, bwd=0.3, hold=0.2, absorb=0.2),
    barrierN=right_barrier(bwd=0.5, hold=0.25, absorb=0.25),
)
i0 = 6

# -- the boundary system behind the closed form ----------------------------------

sol = mfinite_system(spec, i0)
print("labeled unknowns (barrier states, start, run coefficients):")
for name, value in sol.unknowns.items():
    print(f"  {name:>4} = {value: .12f}")
print(f"system residual: {sol.residual:.3e}")

# -- closed display vs system vs oracle -------------------------------------------

disp = display_mfinite_arrivals(spec, i0, lead="lambda")
chain = build_chain(spec)
visits = exact_visits(chain, i0)
print("\narrivals three ways (display | system | oracle):")
for n in (0, spec.M, i0, spec.N):
    print(f"  state {n}: {disp[n]:.12f} | {sol.at(n):.12f} | {visits[n]:.12f}")

# starts left of M go through a reflection of the spec
left_start = 1
profile = mfinite_arrivals(spec, left_start)
lv = exact_visits(chain, left_start)
gap = max(abs(v - lv[n]) for n, v in profile.values.items())
print(f"\nreflected start {left_start}: worst gap vs oracle {gap:.3e}")

probs = mfinite_absorption_probabilities(spec, i0)
print(f"absorption sum from {i0}: {sum(probs.values()):.15f}")

# -- the symmetric special case: p = q, s = 0 keeps the walk alive between
#    absorbing barriers, and the arrival profile becomes piecewise linear

sym = ModifiedFiniteSpec(
    N=9,
    M=4,
    right_regime=pqrs(0.5, 0.5, 0.0, 0.0),
    left_regime=pqrs(0.5, 0.5, 0.0, 0.0),
    barrier0=left_barrier(fwd=0.4, hold=0.3, absorb=0.3),
    barrierM=mid_barrier(fwd=0.25, bwd=0.35, hold=0.2, absorb=0.2),
    barrierN=right_barrier(bwd=0.5, hold=0.2, absorb=0.3),
)
sdisp = display_symmetric_arrivals(sym, 6)
schain = build_chain(sym)
svisits = exact_visits(schain, 6)
sgap = max(abs(sdisp[n] - svisits[n]) for n in sdisp)
print(f"\nsymmetric special case: worst display-vs-oracle gap {sgap:.3e}")

# -- mid barrier on a half line: mean times from the reduced system ---------------

hspec = ModifiedHalfLineSpec(
    M=2,
    right_regime=pqrs(p=0.3, q=0.25, r=0.25, s=0.2),
    left_regime=pqrs(p=0.35, q=0.3, r=0.15, s=0.2),
    barrier0=left_barrier(fwd=0.5, hold=0.2, absorb=0.3),
    barrierM=mid_barrier(fwd=0.35, bwd=0.35, hold=0.2, absorb=0.1),
)
tsol = mhalfline_time_system(hspec)
print("\nhalf-line mean times (system | closed display):")
for i in range(0, 6):
    closed = display_mhalfline_time(hspec, i, "reduced-system")
    print(f"  m_{i} = {tsol.at(i):.12f} | {closed:.12f}")
print(f"one call does it all: {mhalfline_absorption_time(hspec, 4):.12f}")

hprof = mhalfline_arrivals(hspec, 4)
print(f"arrivals at M from 4: {hprof.at(hspec.M):.12f}")
