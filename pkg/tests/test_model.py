"""Spec containers, validation, reflection maps, per-state step probabilities."""

import dataclasses

import pytest
from hypothesis import given
from hypothesis import strategies as st

import specs
from pqrswalk import (
    FiniteWalkSpec,
    FullLineWalkSpec,
    HalfLineWalkSpec,
    MfbParams,
    ModifiedFiniteSpec,
    ModifiedFullLineSpec,
    ModifiedHalfLineSpec,
    SpecError,
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

ALL_SPECS = [
    specs.FIN,
    specs.FIN_UNIFORM,
    specs.HL,
    specs.HL2,
    specs.FL_UNIFORM,
    specs.FL2,
    specs.MFIN,
    specs.MHL,
    specs.MFL,
    specs.ESC1,
    specs.ESC2,
]


def test_constructors_fill_roles_and_structural_zeros():
    params = pqrs(0.3, 0.25, 0.25, 0.2)
    assert params.as_tuple() == (0.3, 0.25, 0.25, 0.2)
    assert params.flipped().as_tuple() == (0.25, 0.3, 0.25, 0.2)

    left = left_barrier(0.5, 0.3, 0.2)
    assert left.role == "left"
    assert left.bwd == 0.0
    right = right_barrier(0.4, 0.35, 0.25)
    assert right.role == "right"
    assert right.fwd == 0.0
    mid = mid_barrier(0.3, 0.3, 0.2, 0.2)
    assert mid.role == "interior"

    assert left.flipped().role == "right"
    assert left.flipped().bwd == 0.5
    assert right.flipped().role == "left"
    assert mid.flipped().as_tuple() == (0.3, 0.3, 0.2, 0.2)


@pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: type(s).__name__)
def test_fixture_specs_validate(spec):
    report = validate(spec)
    assert report.ok, report.violations
    assert bool(report)
    require_valid(spec)  # does not raise


@pytest.mark.parametrize(
    "spec, fragment",
    [
        (
            FiniteWalkSpec(
                N=4,
                interior=pqrs(0.5, 0.5, 0.1, 0.1),
                left=left_barrier(0.5, 0.25, 0.25),
                right=right_barrier(0.5, 0.25, 0.25),
            ),
            "interior: probabilities sum to",
        ),
        (
            FiniteWalkSpec(
                N=4,
                interior=pqrs(0.5, 0.7, -0.3, 0.1),
                left=left_barrier(0.5, 0.25, 0.25),
                right=right_barrier(0.5, 0.25, 0.25),
            ),
            "interior.r: -0.3 outside [0, 1]",
        ),
        (
            FiniteWalkSpec(
                N=1,
                interior=pqrs(0.25, 0.25, 0.25, 0.25),
                left=left_barrier(0.5, 0.25, 0.25),
                right=right_barrier(0.5, 0.25, 0.25),
            ),
            "N: 1 not an integer",
        ),
        (
            FiniteWalkSpec(
                N=4,
                interior=pqrs(0.25, 0.25, 0.25, 0.25),
                left=MfbParams(0.5, 0.1, 0.2, 0.2, "left"),
                right=right_barrier(0.5, 0.25, 0.25),
            ),
            "left.bwd: must be 0",
        ),
        (
            FiniteWalkSpec(
                N=4,
                interior=pqrs(0.25, 0.25, 0.25, 0.25),
                left=mid_barrier(0.5, 0.0, 0.25, 0.25),
                right=right_barrier(0.5, 0.25, 0.25),
            ),
            "left.role: 'interior', expected 'left'",
        ),
        (
            FiniteWalkSpec(
                N=4,
                interior=pqrs(0.5, 0.4, 0.1, 0.0),
                left=left_barrier(0.5, 0.5, 0.0),
                right=right_barrier(0.5, 0.5, 0.0),
            ),
            "absorption not certain",
        ),
        (
            HalfLineWalkSpec(
                interior=pqrs(0.5, 0.3, 0.2, 0.0),
                left=left_barrier(0.6, 0.2, 0.2),
            ),
            "interior: p*q*s > 0 required",
        ),
        (
            HalfLineWalkSpec(
                interior=pqrs(0.3, 0.25, 0.25, 0.2),
                left=left_barrier(0.0, 0.8, 0.2),
            ),
            "left: fwd*absorb > 0 required",
        ),
        (
            FullLineWalkSpec(interior=pqrs(0.55, 0.0, 0.25, 0.2)),
            "interior: p*q*s > 0 required",
        ),
        (
            ModifiedFiniteSpec(
                N=3,
                M=3,
                right_regime=pqrs(0.3, 0.25, 0.25, 0.2),
                left_regime=pqrs(0.35, 0.3, 0.15, 0.2),
                barrier0=left_barrier(0.5, 0.25, 0.25),
                barrierM=mid_barrier(0.3, 0.3, 0.2, 0.2),
                barrierN=right_barrier(0.5, 0.25, 0.25),
            ),
            "require 0 < M < N",
        ),
        (
            ModifiedHalfLineSpec(
                M=2,
                right_regime=pqrs(0.3, 0.25, 0.25, 0.2),
                left_regime=pqrs(0.35, 0.3, 0.35, 0.0),
                barrier0=left_barrier(0.5, 0.2, 0.3),
                barrierM=mid_barrier(0.35, 0.35, 0.2, 0.1),
            ),
            "left_regime: p*q*s > 0 required",
        ),
        (
            ModifiedFullLineSpec(
                pos_regime=pqrs(0.3, 0.25, 0.25, 0.2),
                neg_regime=pqrs(0.4, 0.3, 0.3, 0.0),
                origin=mid_barrier(0.35, 0.35, 0.2, 0.1),
            ),
            "s must be positive on both sides or zero on both",
        ),
    ],
    ids=[
        "sum-over-1",
        "negative-component",
        "N-too-small",
        "left-bwd-nonzero",
        "left-wrong-role",
        "no-absorption",
        "halfline-s-zero",
        "halfline-dead-barrier",
        "fullline-q-zero",
        "M-not-below-N",
        "mhalfline-left-s-zero",
        "mixed-s-signs",
    ],
)
def test_validation_names_the_violated_rule(spec, fragment):
    report = validate(spec)
    assert not report.ok
    assert any(fragment in v for v in report.violations), report.violations
    with pytest.raises(SpecError):
        require_valid(spec)


def test_step_probs_selects_region():
    assert step_probs(specs.FIN, 0) == specs.FIN.left.as_tuple()
    assert step_probs(specs.FIN, 3) == specs.FIN.interior.as_tuple()
    assert step_probs(specs.FIN, 5) == specs.FIN.right.as_tuple()

    assert step_probs(specs.HL, 0) == specs.HL.left.as_tuple()
    assert step_probs(specs.HL, 7) == specs.HL.interior.as_tuple()

    assert step_probs(specs.MFIN, 0) == specs.MFIN.barrier0.as_tuple()
    assert step_probs(specs.MFIN, 1) == specs.MFIN.left_regime.as_tuple()
    assert step_probs(specs.MFIN, 3) == specs.MFIN.barrierM.as_tuple()
    assert step_probs(specs.MFIN, 4) == specs.MFIN.right_regime.as_tuple()
    assert step_probs(specs.MFIN, 9) == specs.MFIN.barrierN.as_tuple()

    assert step_probs(specs.MFL, -3) == specs.MFL.neg_regime.as_tuple()
    assert step_probs(specs.MFL, 0) == specs.MFL.origin.as_tuple()
    assert step_probs(specs.MFL, 2) == specs.MFL.pos_regime.as_tuple()


def test_reflect_translate_swaps_regimes_and_maps_states():
    reflected, j0, back = reflect_translate(specs.MFIN, 1)
    assert j0 == specs.MFIN.N - 1
    assert reflected.M == specs.MFIN.N - specs.MFIN.M
    assert reflected.right_regime == specs.MFIN.left_regime.flipped()
    assert reflected.left_regime == specs.MFIN.right_regime.flipped()
    assert validate(reflected).ok
    # the map is an involution pairing original and reflected labels
    for n in range(specs.MFIN.N + 1):
        assert back(back(n)) == n
        assert step_probs(reflected, back(n)) == tuple(
            step_probs(specs.MFIN, n)[k] for k in (1, 0, 2, 3)
        )


@pytest.mark.parametrize("i0", [0, 3, 7])
def test_reflect_translate_rejects_starts_not_left_of_barrier(i0):
    with pytest.raises(ValueError):
        reflect_translate(specs.MFIN, i0)


def test_reflect_origin_mirrors_the_line():
    reflected, back = reflect_origin(specs.MFL)
    assert reflected.pos_regime == specs.MFL.neg_regime.flipped()
    assert reflected.neg_regime == specs.MFL.pos_regime.flipped()
    assert validate(reflected).ok
    for n in (-4, -1, 0, 1, 4):
        assert back(n) == -n
        assert step_probs(reflected, -n) == tuple(
            step_probs(specs.MFL, n)[k] for k in (1, 0, 2, 3)
        )


def test_specs_are_frozen():
    with pytest.raises(dataclasses.FrozenInstanceError):
        specs.FIN.N = 7


weights = st.lists(
    st.floats(min_value=0.01, max_value=1.0, allow_nan=False), min_size=4, max_size=4
)


@given(weights)
def test_random_normalized_pqrs_validates_and_double_flip_is_identity(raw):
    total = sum(raw)
    params = pqrs(*(w / total for w in raw))
    spec = FullLineWalkSpec(interior=params)
    assert validate(spec).ok
    assert params.flipped().flipped() == params
