"""Two-regime walks: boundary systems, closed displays, escape probabilities."""

import numpy as np
import pytest

import specs
from pqrswalk import (
    ConsistencyError,
    ModifiedFiniteSpec,
    ModifiedHalfLineSpec,
    UnsupportedCase,
    build_chain,
    display_escape,
    display_mfinite_arrivals,
    display_mfullline_arrivals,
    display_mfullline_time,
    display_mhalfline_time,
    display_symmetric_arrivals,
    exact_absorption,
    exact_visits,
    left_barrier,
    mfinite_absorption_probabilities,
    mfinite_arrivals,
    mfinite_asymmetric,
    mfinite_intermediates,
    mfinite_symmetric,
    mfinite_system,
    mfullline_absorption_time,
    mfullline_arrivals,
    mfullline_escape,
    mfullline_time_system,
    mhalfline_absorption_time,
    mhalfline_arrivals,
    mhalfline_time_system,
    mid_barrier,
    pqrs,
    right_barrier,
    step_probs,
    symmetric_intermediates,
)

# ---------------------------------------------------------------------------
# finite domain with interior barrier

MFIN_X_FROM_6 = [0.009519058388846481, 0.0237976459721162, 0.05156156627291845,
                 0.1183271841391334, 0.3064607964631409, 0.7773897684224628,
                 1.964416349511619, 0.9603813264279026, 0.5238443598697652,
                 0.2095377439479061]
MFIN_X_FROM_1 = [0.8014342047972528, 2.003585511993132, 1.007768609318453,
                 0.517827962410296, 0.2461734266671132, 0.1171267251089844,
                 0.05597206332641731, 0.02736411984847069, 0.01492588355371128,
                 0.005970353421484513]
MFIN_MEAN_FROM_6 = 3.945235799415812


def test_mfinite_arrivals_match_frozen_profile():
    profile = mfinite_arrivals(specs.MFIN, 6)
    got = [profile.at(n) for n in range(10)]
    assert got == pytest.approx(MFIN_X_FROM_6, rel=1e-12)


def test_mfinite_start_left_of_barrier_reflects():
    profile = mfinite_arrivals(specs.MFIN, 1)
    got = [profile.at(n) for n in range(10)]
    assert got == pytest.approx(MFIN_X_FROM_1, rel=1e-12)


@pytest.mark.parametrize("i0", range(10))
def test_mfinite_system_agrees_with_banded_solve(i0):
    chain = build_chain(specs.MFIN)
    visits = exact_visits(chain, i0)
    profile = mfinite_arrivals(specs.MFIN, i0)
    for n in range(10):
        assert profile.at(n) == pytest.approx(visits[n], rel=1e-10, abs=1e-13)


def test_mfinite_absorption_probabilities_sum_to_one():
    probs = mfinite_absorption_probabilities(specs.MFIN, 6)
    ex = exact_absorption(build_chain(specs.MFIN), 6)
    for n in range(10):
        assert probs[n] == pytest.approx(ex.absorb_probs[n], rel=1e-10)
    assert sum(probs.values()) == pytest.approx(1.0, rel=1e-12)
    assert ex.mean_time == pytest.approx(MFIN_MEAN_FROM_6, rel=1e-12)


def test_mfinite_system_exposes_labeled_unknowns_and_residual():
    sol = mfinite_system(specs.MFIN, 6)
    assert sorted(sol.unknowns) == ["a", "b", "c", "d", "h1", "h2",
                                    "x_0", "x_3", "x_6", "x_9"]
    assert sol.residual < 1e-12
    assert sol["x_6"] == pytest.approx(MFIN_X_FROM_6[6], rel=1e-12)
    assert sol.at(4) == pytest.approx(MFIN_X_FROM_6[4], rel=1e-12)
    assert len(sol.equations) == len(sol.unknowns)


def test_mean_time_systems_use_segment_coefficients():
    wide = ModifiedHalfLineSpec(
        M=6,
        right_regime=pqrs(0.3, 0.25, 0.25, 0.2),
        left_regime=pqrs(0.35, 0.3, 0.15, 0.2),
        barrier0=left_barrier(0.5, 0.2, 0.3),
        barrierM=mid_barrier(0.35, 0.35, 0.2, 0.1),
    )
    sol = mhalfline_time_system(wide)
    assert sorted(sol.unknowns) == ["a1", "a2", "b2", "m_0", "m_6"]
    assert sol.residual < 1e-12
    assert sol["m_0"] == pytest.approx(mhalfline_absorption_time(wide, 0),
                                       rel=1e-12)

    solm = mfullline_time_system(specs.MFL)
    assert sorted(solm.unknowns) == ["a1", "b2", "m_0"]
    assert solm["m_0"] == pytest.approx(5.028025206219892, rel=1e-12)


# ---------------------------------------------------------------------------
# symmetric and asymmetric special cases (r = s = 0 interiors)

SYM = ModifiedFiniteSpec(
    N=9,
    M=4,
    right_regime=pqrs(0.5, 0.5, 0.0, 0.0),
    left_regime=pqrs(0.5, 0.5, 0.0, 0.0),
    barrier0=left_barrier(0.4, 0.3, 0.3),
    barrierM=mid_barrier(0.25, 0.35, 0.2, 0.2),
    barrierN=right_barrier(0.5, 0.2, 0.3),
)
SYM_X_FROM_6 = [0.5051546391752579, 0.7072164948453611, 1.010309278350516,
                1.31340206185567, 2.309278350515464, 2.381443298969072,
                3.608247422680412, 2.835051546391751, 2.061855670103092,
                1.288659793814432]
ASYM = ModifiedFiniteSpec(
    N=8,
    M=3,
    right_regime=pqrs(0.55, 0.45, 0.0, 0.0),
    left_regime=pqrs(0.55, 0.45, 0.0, 0.0),
    barrier0=left_barrier(0.4, 0.3, 0.3),
    barrierM=mid_barrier(0.25, 0.35, 0.2, 0.2),
    barrierN=right_barrier(0.5, 0.2, 0.3),
)
ASYM_X_FROM_5 = [0.363738966789194, 0.5658161705609683, 0.9340457418784239,
                 1.779562423056832, 2.022055067582962, 3.504809915152785,
                 3.094843617738125, 2.593773698675762, 1.783219417839586]


@pytest.mark.parametrize("i0", range(10))
def test_symmetric_special_case_matches_banded_solve(i0):
    chain = build_chain(SYM)
    visits = exact_visits(chain, i0)
    profile = mfinite_symmetric(SYM, i0)
    for n in range(10):
        assert profile.at(n) == pytest.approx(visits[n], rel=1e-12)


def test_symmetric_display_and_absorption_conservation():
    disp = display_symmetric_arrivals(SYM, 6)
    assert [disp[n] for n in range(10)] == pytest.approx(SYM_X_FROM_6, rel=1e-12)
    absorbed = sum(step_probs(SYM, n)[3] * disp[n] for n in range(10))
    assert absorbed == pytest.approx(1.0, abs=1e-12)


def test_symmetric_intermediates_make_k_affine():
    inter = symmetric_intermediates(SYM)
    bM = SYM.barrierM
    assert inter.k(SYM.M) == pytest.approx(bM.fwd, rel=1e-14)
    # affine in the state: equal second differences vanish
    second = inter.k(6) - 2.0 * inter.k(7) + inter.k(8)
    assert second == pytest.approx(0.0, abs=1e-14)
    bN = SYM.barrierN
    assert inter.Omega == pytest.approx(SYM.N + bN.bwd / bN.absorb, rel=1e-12)


def test_asymmetric_special_case_matches_banded_solve():
    profile = mfinite_asymmetric(ASYM, 5)
    got = [profile.at(n) for n in range(9)]
    assert got == pytest.approx(ASYM_X_FROM_5, rel=1e-12)
    # starts left of the barrier work through reflection as well
    chain = build_chain(ASYM)
    for i0 in (1, 2):
        visits = exact_visits(chain, i0)
        profile = mfinite_asymmetric(ASYM, i0)
        for n in range(9):
            assert profile.at(n) == pytest.approx(visits[n], rel=1e-11)


def test_asymmetric_rejects_equal_step_probabilities():
    with pytest.raises(UnsupportedCase, match="use mfinite_symmetric"):
        mfinite_asymmetric(SYM, 6)


def test_special_cases_agree_near_the_symmetric_boundary():
    eps = 1e-6
    near = ModifiedFiniteSpec(
        N=9,
        M=4,
        right_regime=pqrs(0.5 + eps, 0.5 - eps, 0.0, 0.0),
        left_regime=pqrs(0.5 + eps, 0.5 - eps, 0.0, 0.0),
        barrier0=SYM.barrier0,
        barrierM=SYM.barrierM,
        barrierN=SYM.barrierN,
    )
    sym = mfinite_symmetric(SYM, 6)
    asym = mfinite_asymmetric(near, 6)
    for n in range(10):
        assert asym.at(n) == pytest.approx(sym.at(n), abs=1e-4)


# ---------------------------------------------------------------------------
# half line with interior barrier

MHL_X_FROM_4 = [0.06523275348804596, 0.1739540093014559, 0.3292700890348987,
                0.8101286718896378, 1.969407891020055, 0.9360692667925995,
                0.4449183311537325]
MHL_MEANS = {0: 3.475966400102645, 2: 4.841498240310869, 5: 4.052290935644959}


def test_mhalfline_arrivals_match_frozen_profile():
    profile = mhalfline_arrivals(specs.MHL, 4)
    got = [profile.at(n) for n in range(7)]
    assert got == pytest.approx(MHL_X_FROM_4, rel=1e-12)


def test_mhalfline_mean_times_match_frozen_values():
    for i, expected in MHL_MEANS.items():
        assert mhalfline_absorption_time(specs.MHL, i) == pytest.approx(
            expected, rel=1e-12
        )


@pytest.mark.parametrize("i0", [0, 1, 2, 5])
def test_mhalfline_agrees_with_truncated_solve(i0):
    chain = build_chain(specs.MHL, window="auto", start=i0)
    visits = exact_visits(chain, i0)
    ex = exact_absorption(chain, i0)
    profile = mhalfline_arrivals(specs.MHL, i0)
    for n in range(i0 + 25):
        assert abs(profile.at(n) - visits[n]) < 1e-11
    assert abs(mhalfline_absorption_time(specs.MHL, i0) - ex.mean_time) < 1e-11


# ---------------------------------------------------------------------------
# full line with origin barrier

MFL_X_FROM_1 = [0.1745090863927744, 0.407187868249807, 0.8143757364996139,
                2.035939341249035, 0.9676919926476444, 0.4599487684440916]
MFL_MEANS = {-1: 4.514012603109947, 0: 5.028025206219892, 2: 4.161281998774609}


def test_mfullline_arrivals_match_frozen_profile():
    profile = mfullline_arrivals(specs.MFL, 1)
    got = [profile.at(n) for n in range(-2, 4)]
    assert got == pytest.approx(MFL_X_FROM_1, rel=1e-12)


def test_mfullline_mean_times_match_frozen_values():
    for i, expected in MFL_MEANS.items():
        assert mfullline_absorption_time(specs.MFL, i) == pytest.approx(
            expected, rel=1e-12
        )


@pytest.mark.parametrize("i0", [-3, -1, 0, 2])
def test_mfullline_agrees_with_truncated_solve(i0):
    chain = build_chain(specs.MFL, window="auto", start=i0)
    visits = exact_visits(chain, i0)
    ex = exact_absorption(chain, i0)
    profile = mfullline_arrivals(specs.MFL, i0)
    for n in range(-20, 21):
        assert abs(profile.at(n) - visits[n - chain.lo]) < 1e-11
    assert abs(mfullline_absorption_time(specs.MFL, i0) - ex.mean_time) < 1e-11


# ---------------------------------------------------------------------------
# escape probabilities (no interior absorption)

ESC1_TRIO = (0.375, 0.625, 0.0)
ESC2_TRIOS = {0: (0.5, 0.25, 0.25), 2: (0.18, 0.73, 0.09),
              -2: (0.18, 0.09, 0.73)}


def test_escape_trio_drift_right_both_sides():
    got = mfullline_escape(specs.ESC1, 1)
    assert got == pytest.approx(ESC1_TRIO, abs=1e-12)
    assert sum(got) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("i0", sorted(ESC2_TRIOS))
def test_escape_trio_drift_away_both_sides(i0):
    got = mfullline_escape(specs.ESC2, i0)
    assert got == pytest.approx(ESC2_TRIOS[i0], rel=1e-12)
    assert sum(got) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("i0", [0, 1, 2])
def test_escape_display_matches_system_readout(i0):
    for spec in (specs.ESC1, specs.ESC2):
        disp = display_escape(spec, i0)
        sys_ = mfullline_escape(spec, i0)
        assert disp == pytest.approx(sys_, abs=1e-12)


def test_escape_untreated_drift_raises():
    # reflecting ESC1 to a negative start lands in an untreated drift case
    with pytest.raises(UnsupportedCase, match="p > q right of the origin"):
        mfullline_escape(specs.ESC1, -2)


# ---------------------------------------------------------------------------
# transcribed displays against the solved boundary systems

def test_mfinite_display_matches_system_with_lambda_lead():
    profile = mfinite_arrivals(specs.MFIN, 6)
    disp = display_mfinite_arrivals(specs.MFIN, 6, lead="lambda")
    for n in range(10):
        assert disp[n] == pytest.approx(profile.at(n), rel=1e-10)
    wrong = display_mfinite_arrivals(specs.MFIN, 6, lead="inverse-lambda")
    assert max(abs(wrong[n] - profile.at(n)) for n in range(10)) > 0.1


def test_mfinite_intermediates_satisfy_their_recurrences():
    inter = mfinite_intermediates(specs.MFIN, 6)
    l, r = specs.MFIN.left_regime, specs.MFIN.right_regime
    for n in (1, 2):
        residual = (l.q * inter.phi(n + 1) - (1.0 - l.r) * inter.phi(n)
                    + l.p * inter.phi(n - 1))
        assert residual == pytest.approx(0.0, abs=1e-12)
    for n in (5, 7):
        residual = (r.q * inter.beta(n + 1) - (1.0 - r.r) * inter.beta(n)
                    + r.p * inter.beta(n - 1))
        assert residual == pytest.approx(0.0, abs=1e-12)
    assert inter.beta(6) == pytest.approx(1.0, rel=1e-14)  # normalized at i0


def test_mhalfline_time_display_only_reduced_variant_matches():
    reduced = [display_mhalfline_time(specs.MHL, i, variant="reduced-system")
               for i in range(6)]
    system = [mhalfline_absorption_time(specs.MHL, i) for i in range(6)]
    assert reduced == pytest.approx(system, rel=1e-10)
    for variant in ("printed", "alpha-inverse"):
        off = [display_mhalfline_time(specs.MHL, i, variant=variant)
               for i in range(6)]
        assert max(abs(a - b) for a, b in zip(off, system)) > 0.01


def test_mfullline_display_matches_system():
    profile = mfullline_arrivals(specs.MFL, 1)
    for n in range(-5, 6):
        assert display_mfullline_arrivals(specs.MFL, 1, n) == pytest.approx(
            profile.at(n), rel=1e-10
        )

    corrected = [display_mfullline_time(specs.MFL, i, variant="corrected")
                 for i in range(-4, 5)]
    system = [mfullline_absorption_time(specs.MFL, i) for i in range(-4, 5)]
    assert corrected == pytest.approx(system, rel=1e-10)
    printed = [display_mfullline_time(specs.MFL, i, variant="printed")
               for i in range(-4, 5)]
    assert max(abs(a - b) for a, b in zip(printed, system)) > 0.01
