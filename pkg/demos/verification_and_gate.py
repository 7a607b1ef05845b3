"""
Self-verification and the fast-path gate
========================================

The library distrusts its own algebra on principle.  Every closed form
can be replayed against an independent oracle -- dense linear solves on
finite chains, wide truncated windows on infinite ones, convolution for
step distributions, Monte Carlo for escape -- over randomized specs.

Transcribed closed-form displays go one step further: a gate compares
each display variant against its boundary system over a random suite and
enables it only on exact agreement.  Variants that disagree stay
disabled, with the worst discrepancy logged per spec; the solver output
is authoritative either way.
"""

import numpy as np

from pqrswalk import gate_fast_paths, run_random_suite, verify_spec
from pqrswalk.verify import random_mfinite_spec, verify_nstep, random_params

# -- one spec, all checks -----------------------------------------------------------

rng = np.random.default_rng(5)
spec = random_mfinite_spec(rng)
print(f"random spec: N={spec.N}, M={spec.M}")
for check in verify_spec(spec, tol=1e-10, rng=rng):
    print(f"  {check.quantity:<20} err {check.err:.3e}  ok={check.ok}")

# -- a randomized suite, tagged per spec ----------------------------------------------

report = run_random_suite(28, which="dense", tol=1e-8, seed=42)
print(f"\ndense suite: ok={report.ok}, {len(report.checks)} checks")
families = sorted({c.spec_kind.split('#')[0] for c in report.checks})
print(f"families covered: {', '.join(families)}")

report = run_random_suite(10, which="dp", tol=1e-10, seed=42)
print(f"step-distribution suite: ok={report.ok}, {len(report.checks)} checks")

# -- the gate ---------------------------------------------------------------------------

print("\nfast-path gate over 40 random specs per display:")
for line in sorted(r.line() for r in gate_fast_paths(specs_per_display=40, seed=20)):
    print(f"  {line}")
print("\nDISABLED variants are transcription defects caught by the gate;")
print("the boundary-system solvers remain the source of truth for them.")
