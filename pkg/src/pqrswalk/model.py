"""Walk specifications: parameter containers, validation, reflection maps.

A [pqrs] walk moves forward (p), backward (q), holds (r) or is absorbed (s)
each epoch. Barrier states carry their own four probabilities (fwd, bwd,
hold, absorb) and may reflect, transmit, hold or absorb. Modified walks
change regime across an interior barrier M.
"""

from dataclasses import dataclass

SUM_TOL = 1e-12
STATE_CAP = 1_000_000


@dataclass(frozen=True)
class PqrsParams:
    """Interior regime: forward / backward / hold / absorb per epoch."""

    p: float
    q: float
    r: float
    s: float

    def as_tuple(self):
        return (self.p, self.q, self.r, self.s)

    def flipped(self):
        """Mirror image: forward and backward exchanged."""
        return PqrsParams(self.q, self.p, self.r, self.s)


@dataclass(frozen=True)
class MfbParams:
    """Multiple-function barrier: its own step/hold/absorb probabilities.

    role is "left" (backward impossible), "right" (forward impossible) or
    "interior" (all four entries may be positive).
    """

    fwd: float
    bwd: float
    hold: float
    absorb: float
    role: str = "interior"

    def as_tuple(self):
        return (self.fwd, self.bwd, self.hold, self.absorb)

    def flipped(self):
        """Mirror image: fwd/bwd exchanged, left/right roles swapped."""
        role = {"left": "right", "right": "left"}.get(self.role, self.role)
        return MfbParams(self.bwd, self.fwd, self.hold, self.absorb, role)


def pqrs(p, q, r, s):
    return PqrsParams(float(p), float(q), float(r), float(s))


def left_barrier(fwd, hold, absorb):
    return MfbParams(float(fwd), 0.0, float(hold), float(absorb), "left")


def right_barrier(bwd, hold, absorb):
    return MfbParams(0.0, float(bwd), float(hold), float(absorb), "right")


def mid_barrier(fwd, bwd, hold, absorb):
    return MfbParams(float(fwd), float(bwd), float(hold), float(absorb), "interior")


@dataclass(frozen=True)
class FiniteWalkSpec:
    """[pqrs] walk on [0, N]: interior regime on 1..N-1, barriers at the ends."""

    N: int
    interior: PqrsParams
    left: MfbParams
    right: MfbParams


@dataclass(frozen=True)
class HalfLineWalkSpec:
    """[pqrs] walk on [0, inf): interior regime on 1.., barrier at 0."""

    interior: PqrsParams
    left: MfbParams


@dataclass(frozen=True)
class FullLineWalkSpec:
    """[pqrs] walk on the integers, no barriers."""

    interior: PqrsParams


@dataclass(frozen=True)
class ModifiedFiniteSpec:
    """M[pqrs] walk on [0, N]: left regime on (0,M), right regime on (M,N),
    barriers at 0, M and N."""

    N: int
    M: int
    right_regime: PqrsParams
    left_regime: PqrsParams
    barrier0: MfbParams
    barrierM: MfbParams
    barrierN: MfbParams


@dataclass(frozen=True)
class ModifiedHalfLineSpec:
    """M[pqrs] walk on [0, inf): left regime on (0,M), right regime beyond M."""

    M: int
    right_regime: PqrsParams
    left_regime: PqrsParams
    barrier0: MfbParams
    barrierM: MfbParams


@dataclass(frozen=True)
class ModifiedFullLineSpec:
    """M[pqrs] walk on the integers with a barrier at the origin."""

    pos_regime: PqrsParams
    neg_regime: PqrsParams
    origin: MfbParams


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple

    def __bool__(self):
        return self.ok


def _check_probs(values, path, out):
    for name, value in values:
        if not (0.0 <= value <= 1.0):
            out.append(f"{path}.{name}: {value!r} outside [0, 1]")
    total = sum(v for _, v in values)
    if abs(total - 1.0) > SUM_TOL:
        out.append(f"{path}: probabilities sum to {total!r}, not 1")


def _check_pqrs(params, path, out):
    _check_probs(list(zip("pqrs", params.as_tuple())), path, out)


def _check_mfb(barrier, path, out, role):
    _check_probs(
        list(zip(("fwd", "bwd", "hold", "absorb"), barrier.as_tuple())), path, out
    )
    if barrier.role != role:
        out.append(f"{path}.role: {barrier.role!r}, expected {role!r}")
    if role == "left" and barrier.bwd != 0.0:
        out.append(f"{path}.bwd: must be 0 at the left end")
    if role == "right" and barrier.fwd != 0.0:
        out.append(f"{path}.fwd: must be 0 at the right end")


def _require_pqs(params, path, out):
    if not (params.p > 0 and params.q > 0 and params.s > 0):
        out.append(f"{path}: p*q*s > 0 required")


def validate(spec):
    """Total check of a walk spec; returns a report, never raises."""
    out = []
    if isinstance(spec, FiniteWalkSpec):
        if not (isinstance(spec.N, int) and 2 <= spec.N <= STATE_CAP):
            out.append(f"N: {spec.N!r} not an integer in [2, {STATE_CAP}]")
        _check_pqrs(spec.interior, "interior", out)
        _check_mfb(spec.left, "left", out, "left")
        _check_mfb(spec.right, "right", out, "right")
        if not out and not _finite_absorption_certain(spec):
            out.append("absorption not certain: no reachable absorbing state")
    elif isinstance(spec, HalfLineWalkSpec):
        _check_pqrs(spec.interior, "interior", out)
        _check_mfb(spec.left, "left", out, "left")
        if not out:
            _require_pqs(spec.interior, "interior", out)
            if not spec.left.fwd * spec.left.absorb > 0:
                out.append("left: fwd*absorb > 0 required")
    elif isinstance(spec, FullLineWalkSpec):
        _check_pqrs(spec.interior, "interior", out)
        if not out:
            _require_pqs(spec.interior, "interior", out)
    elif isinstance(spec, ModifiedFiniteSpec):
        if not (isinstance(spec.N, int) and isinstance(spec.M, int)):
            out.append("N, M must be integers")
        elif not (0 < spec.M < spec.N <= STATE_CAP):
            out.append(f"require 0 < M < N <= {STATE_CAP}; got M={spec.M}, N={spec.N}")
        _check_pqrs(spec.right_regime, "right_regime", out)
        _check_pqrs(spec.left_regime, "left_regime", out)
        _check_mfb(spec.barrier0, "barrier0", out, "left")
        _check_mfb(spec.barrierM, "barrierM", out, "interior")
        _check_mfb(spec.barrierN, "barrierN", out, "right")
        if not out and not _mfinite_absorption_certain(spec):
            out.append("absorption not certain: no reachable absorbing state")
    elif isinstance(spec, ModifiedHalfLineSpec):
        if not (isinstance(spec.M, int) and 1 <= spec.M <= STATE_CAP):
            out.append(f"M: {spec.M!r} not an integer in [1, {STATE_CAP}]")
        _check_pqrs(spec.right_regime, "right_regime", out)
        _check_pqrs(spec.left_regime, "left_regime", out)
        _check_mfb(spec.barrier0, "barrier0", out, "left")
        _check_mfb(spec.barrierM, "barrierM", out, "interior")
        if not out:
            _require_pqs(spec.right_regime, "right_regime", out)
            _require_pqs(spec.left_regime, "left_regime", out)
    elif isinstance(spec, ModifiedFullLineSpec):
        _check_pqrs(spec.pos_regime, "pos_regime", out)
        _check_pqrs(spec.neg_regime, "neg_regime", out)
        _check_mfb(spec.origin, "origin", out, "interior")
        if not out:
            s1, s2 = spec.pos_regime.s, spec.neg_regime.s
            if s1 > 0 and s2 > 0:
                _require_pqs(spec.pos_regime, "pos_regime", out)
                _require_pqs(spec.neg_regime, "neg_regime", out)
            elif s1 == 0 and s2 == 0:
                # escape special case: absorption only at the origin
                for params, path in (
                    (spec.pos_regime, "pos_regime"),
                    (spec.neg_regime, "neg_regime"),
                ):
                    if not (params.p > 0 and params.q > 0):
                        out.append(f"{path}: p*q > 0 required")
            else:
                out.append("regimes: s must be positive on both sides or zero on both")
    else:
        out.append(f"unknown spec type {type(spec).__name__}")
    return ValidationReport(not out, tuple(out))


def _finite_absorption_certain(spec):
    it = spec.interior
    if it.s > 0:
        return True
    reach_left = it.q > 0 or (it.p == 0 and it.r < 1)
    reach_right = it.p > 0
    return (spec.left.absorb > 0 and reach_left) or (
        spec.right.absorb > 0 and reach_right
    )


def _mfinite_absorption_certain(spec):
    if spec.right_regime.s > 0 or spec.left_regime.s > 0:
        return True
    absorbs = (
        spec.barrier0.absorb > 0,
        spec.barrierM.absorb > 0,
        spec.barrierN.absorb > 0,
    )
    # with any sideways motion at all, an absorbing barrier is reachable
    moving = (
        spec.left_regime.p + spec.left_regime.q > 0
        or spec.right_regime.p + spec.right_regime.q > 0
        or spec.M == 1
        or spec.N == spec.M + 1
    )
    return any(absorbs) and moving


def require_valid(spec):
    """Raise SpecError when the spec does not validate."""
    report = validate(spec)
    if not report.ok:
        from .errors import SpecError

        raise SpecError(report.violations)


@dataclass(frozen=True)
class IndexMap:
    """State relabeling n -> pivot - n (an involution)."""

    pivot: int

    def __call__(self, state):
        return self.pivot - state


def reflect_translate(spec, i0):
    """Mirror a modified finite spec so a start left of M lands right of M'.

    Maps states x -> N - x, exchanging forward/backward everywhere. Returns
    (reflected spec, reflected start, index map back to original labels).
    """
    assert isinstance(spec, ModifiedFiniteSpec)
    if not 0 < i0 < spec.M:
        raise ValueError(f"reflect_translate requires 0 < i0 < M, got i0={i0}, M={spec.M}")
    n = spec.N
    reflected = ModifiedFiniteSpec(
        N=n,
        M=n - spec.M,
        right_regime=spec.left_regime.flipped(),
        left_regime=spec.right_regime.flipped(),
        barrier0=spec.barrierN.flipped(),
        barrierM=spec.barrierM.flipped(),
        barrierN=spec.barrier0.flipped(),
    )
    return reflected, n - i0, IndexMap(n)


def reflect_origin(spec):
    """Mirror a modified full-line spec about the origin (x -> -x)."""
    assert isinstance(spec, ModifiedFullLineSpec)
    reflected = ModifiedFullLineSpec(
        pos_regime=spec.neg_regime.flipped(),
        neg_regime=spec.pos_regime.flipped(),
        origin=spec.origin.flipped(),
    )
    return reflected, IndexMap(0)


def step_probs(spec, state):
    """(fwd, bwd, hold, absorb) governing a given state of any spec."""
    if isinstance(spec, FiniteWalkSpec):
        if state == 0:
            return spec.left.as_tuple()
        if state == spec.N:
            return spec.right.as_tuple()
        assert 0 < state < spec.N
        return spec.interior.as_tuple()
    if isinstance(spec, HalfLineWalkSpec):
        assert state >= 0
        return spec.left.as_tuple() if state == 0 else spec.interior.as_tuple()
    if isinstance(spec, FullLineWalkSpec):
        return spec.interior.as_tuple()
    if isinstance(spec, ModifiedFiniteSpec):
        assert 0 <= state <= spec.N
        if state == 0:
            return spec.barrier0.as_tuple()
        if state == spec.M:
            return spec.barrierM.as_tuple()
        if state == spec.N:
            return spec.barrierN.as_tuple()
        regime = spec.left_regime if state < spec.M else spec.right_regime
        return regime.as_tuple()
    if isinstance(spec, ModifiedHalfLineSpec):
        assert state >= 0
        if state == 0:
            return spec.barrier0.as_tuple()
        if state == spec.M:
            return spec.barrierM.as_tuple()
        regime = spec.left_regime if state < spec.M else spec.right_regime
        return regime.as_tuple()
    if isinstance(spec, ModifiedFullLineSpec):
        if state == 0:
            return spec.origin.as_tuple()
        return (spec.pos_regime if state > 0 else spec.neg_regime).as_tuple()
    raise TypeError(f"unknown spec type {type(spec).__name__}")
