"""Closed-form analytics for [pqrs] random walks with absorption.

A [pqrs] walk moves forward with probability p, backward with q, holds
with r and is absorbed with s at every epoch; barriers override the step
law at boundary states, and modified walks switch regime at a barrier M.
The package computes expected arrivals, arrival probabilities, absorption
probabilities and expected absorption times on [0, N], [0, inf) and the
full line, all in closed form, and cross-checks every formula against
independent exact and Monte Carlo engines.
"""

from .characteristic import (
    CharacteristicRoots,
    RootDerivatives,
    discriminant,
    root_derivatives,
    roots_at,
)
from .errors import (
    ConsistencyError,
    DegenerateRoots,
    NonTerminating,
    NotAbsorbing,
    SpecError,
    UnsupportedCase,
    WalkError,
)
from .homogeneous import (
    AbsorptionSummary,
    ArrivalProfile,
    BoundaryFactors,
    StepDistribution,
    boundary_factors,
    finite_absorption,
    finite_arrival_probability,
    finite_arrivals,
    fullline_absorption,
    fullline_arrival_probability,
    fullline_arrivals,
    fullline_defective_time,
    fullline_return,
    halfline_absorption_time,
    halfline_arrival_probability,
    halfline_arrivals,
    halfline_defective_time,
    nstep_combinatorial,
    nstep_pgf,
    pgf_evaluate,
)
from .model import (
    FiniteWalkSpec,
    FullLineWalkSpec,
    HalfLineWalkSpec,
    MfbParams,
    ModifiedFiniteSpec,
    ModifiedFullLineSpec,
    ModifiedHalfLineSpec,
    PqrsParams,
    ValidationReport,
    left_barrier,
    mid_barrier,
    pqrs,
    reflect_origin,
    reflect_translate,
    require_valid,
    right_barrier,
    step_probs,
    validate,
)
from .modified import (
    ModifiedFiniteIntermediates,
    ModifiedFullLineIntermediates,
    ModifiedHalfLineIntermediates,
    ProofSystemSolution,
    SymmetricSpecialIntermediates,
    display_escape,
    display_mfinite_arrivals,
    display_mfullline_arrivals,
    display_mfullline_time,
    display_mhalfline_time,
    display_symmetric_arrivals,
    mfinite_absorption_probabilities,
    mfinite_arrivals,
    mfinite_asymmetric,
    mfinite_intermediates,
    mfinite_symmetric,
    mfinite_system,
    mfullline_absorption_time,
    mfullline_arrivals,
    mfullline_escape,
    mfullline_intermediates,
    mfullline_system,
    mfullline_time_system,
    mhalfline_absorption_time,
    mhalfline_arrivals,
    mhalfline_intermediates,
    mhalfline_system,
    mhalfline_time_system,
    symmetric_intermediates,
)
from .oracle import (
    ExactAbsorption,
    McEstimate,
    McRunResult,
    TransientChain,
    build_chain,
    dp_nstep,
    exact_absorption,
    exact_visits,
    mc_run,
)
from .verify import (
    CheckResult,
    FastPathReport,
    SuiteReport,
    gate_fast_paths,
    run_degenerate_suite,
    run_random_suite,
    verify_spec,
)

__version__ = "0.1.0"
