"""Shared walk specs used across the test modules.

All expected values asserted against these fixtures were frozen from the
independent oracles (banded fundamental-matrix solves, DP convolution,
Monte Carlo) before the closed forms were written.
"""

from pqrswalk import (
    FiniteWalkSpec,
    FullLineWalkSpec,
    HalfLineWalkSpec,
    ModifiedFiniteSpec,
    ModifiedFullLineSpec,
    ModifiedHalfLineSpec,
    left_barrier,
    mid_barrier,
    pqrs,
    right_barrier,
)

# Plain walk on [0, 5] with distinct boundary behaviour at the two ends.
FIN = FiniteWalkSpec(
    N=5,
    interior=pqrs(0.3, 0.25, 0.25, 0.2),
    left=left_barrier(0.5, 0.3, 0.2),
    right=right_barrier(0.4, 0.35, 0.25),
)

# Uniform walk on [0, 4]; every state absorbs with probability 1/4.
FIN_UNIFORM = FiniteWalkSpec(
    N=4,
    interior=pqrs(0.25, 0.25, 0.25, 0.25),
    left=left_barrier(0.5, 0.25, 0.25),
    right=right_barrier(0.5, 0.25, 0.25),
)

# Half line with uniform absorption rate (s = barrier absorb = 0.2).
HL = HalfLineWalkSpec(
    interior=pqrs(0.3, 0.25, 0.25, 0.2),
    left=left_barrier(0.6, 0.2, 0.2),
)

# Half line where the barrier absorbs faster than the interior.
HL2 = HalfLineWalkSpec(
    interior=pqrs(0.3, 0.25, 0.25, 0.2),
    left=left_barrier(0.5, 0.2, 0.3),
)

# Full lines: uniform quarter weights and a drifting variant.
FL_UNIFORM = FullLineWalkSpec(interior=pqrs(0.25, 0.25, 0.25, 0.25))
FL2 = FullLineWalkSpec(interior=pqrs(0.35, 0.2, 0.25, 0.2))

# Two-regime walk on [0, 9] with a multiple-function barrier at M = 3.
MFIN = ModifiedFiniteSpec(
    N=9,
    M=3,
    right_regime=pqrs(0.3, 0.25, 0.25, 0.2),
    left_regime=pqrs(0.35, 0.3, 0.15, 0.2),
    barrier0=left_barrier(0.5, 0.25, 0.25),
    barrierM=mid_barrier(0.3, 0.3, 0.2, 0.2),
    barrierN=right_barrier(0.5, 0.25, 0.25),
)

# Two-regime half line with the barrier at M = 2.
MHL = ModifiedHalfLineSpec(
    M=2,
    right_regime=pqrs(0.3, 0.25, 0.25, 0.2),
    left_regime=pqrs(0.35, 0.3, 0.15, 0.2),
    barrier0=left_barrier(0.5, 0.2, 0.3),
    barrierM=mid_barrier(0.35, 0.35, 0.2, 0.1),
)

# Two-regime full line with a multiple-function barrier at the origin.
MFL = ModifiedFullLineSpec(
    pos_regime=pqrs(0.3, 0.25, 0.25, 0.2),
    neg_regime=pqrs(0.35, 0.3, 0.15, 0.2),
    origin=mid_barrier(0.35, 0.35, 0.2, 0.1),
)

# Escape setups: absorption only at the origin, drift carries mass away.
# ESC1 drifts right on both sides; ESC2 drifts away from 0 on both sides.
ESC1 = ModifiedFullLineSpec(
    pos_regime=pqrs(0.5, 0.3, 0.2, 0.0),
    neg_regime=pqrs(0.5, 0.3, 0.2, 0.0),
    origin=mid_barrier(0.3, 0.3, 0.2, 0.2),
)
ESC2 = ModifiedFullLineSpec(
    pos_regime=pqrs(0.5, 0.3, 0.2, 0.0),
    neg_regime=pqrs(0.3, 0.5, 0.2, 0.0),
    origin=mid_barrier(0.25, 0.25, 0.3, 0.2),
)
