"""
Characteristic roots and n-step displacement distributions
==========================================================

A walker on the integers moves right with probability p, left with q,
holds with r and is absorbed with s at every epoch.  Everything the
library computes flows through the two roots of

    q z xi^2 - (1 - r z) xi + p z = 0,

so this script starts there, then builds the distribution of the
position after n steps three independent ways and checks they agree.
"""

import numpy as np

from pqrswalk import (
    dp_nstep,
    nstep_combinatorial,
    nstep_pgf,
    pqrs,
    root_derivatives,
    roots_at,
)

params = pqrs(p=0.3, q=0.25, r=0.25, s=0.2)

# -- the roots at z = 1 and along the disc ------------------------------------

rt = roots_at(params, 1.0)
print(f"xi1 = {rt.xi1:.12f}")
print(f"xi2 = {rt.xi2:.12f}")
print(f"product p/q = {params.p / params.q:.12f} (Vieta: xi1*xi2)")
print(f"zeta = {rt.zeta:.12f}  lam = {rt.lam:.12f}  zeta*lam = {rt.zeta * rt.lam}")

# derivatives at z = 1 drive every mean-time formula
dv = root_derivatives(params)
print(f"dxi1/dz = {dv.dxi1:.12f}  dxi2/dz = {dv.dxi2:.12f}")

for z in (0.9, 0.5, 0.1):
    r = roots_at(params, z)
    print(f"z = {z}: xi1 = {r.xi1:.6f}, xi2 = {r.xi2:.6f}")

# -- the n-step distribution, three ways --------------------------------------
# combinatorial: count lattice paths with w up-down pairs and h holds.
# root form: extract the coefficient of z^n from the generating function.
# convolution: literally step the distribution forward n times.

n = 7
steps = dp_nstep(params, n)
dist = steps[n]
print(f"\nP(position = k after {n} steps), three ways:")
print(f"{'k':>3} {'combinatorial':>16} {'root form':>16} {'convolution':>16}")
for k in range(-n, n + 1):
    comb = nstep_combinatorial(params, k, n)
    pgf = nstep_pgf(params, k, n)
    if comb > 1e-12:
        print(f"{k:>3} {comb:>16.12f} {pgf:>16.12f} {dist.probs[k]:>16.12f}")

# the walker survives n epochs with probability (1-s)^n
mass = sum(dist.probs.values())
print(f"\ntotal mass = {mass:.15f}")
print(f"(1-s)^{n}   = {(1 - params.s) ** n:.15f}")

# exact rational arithmetic is available for small cases
exact = nstep_combinatorial(params, 0, 2, exact=True)
print(f"\nexact P(back at start after 2 steps) = {exact} = 2pq + r^2")

# with r^2 < 4pq the roots go complex along the disc, but the assembled
# probability is still real; the root form certifies its imaginary
# residual stays below 1e-10
loud = pqrs(p=0.4, q=0.35, r=0.05, s=0.2)
assert loud.r**2 < 4 * loud.p * loud.q
print(f"\ncomplex-root regime: P(k=2 after 6 steps) = {nstep_pgf(loud, 2, 6):.12f}")
print(f"same by convolution:                        "
      f"{dp_nstep(loud, 6)[6].probs[2]:.12f}")
