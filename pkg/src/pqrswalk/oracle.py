"""Independent ground-truth engines for walk quantities.

Everything here works directly on the absorbing-Markov-chain encoding of a
walk spec (no characteristic roots, no closed forms): banded fundamental-
matrix solves for expected visits / absorption, dynamic-programming step
distributions, and a deterministic counter-based Monte Carlo simulator.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_banded

from . import model
from .errors import NonTerminating, NotAbsorbing, UnsupportedCase
from .homogeneous import StepDistribution

EDGE_OCCUPANCY_TOL = 1e-12
BLOCK_SIZE = 8192
_COUNTER_STRIDE = 1 << 128
_STEP_CAP = 5_000_000


@dataclass(frozen=True)
class TransientChain:
    """Tridiagonal sub-stochastic chain over a contiguous state window.

    Arrays are indexed by state - lo. For truncated windows on infinite
    domains, mass stepping out of the window is folded into `absorb` at the
    edge states so that up + down + hold + absorb = 1 per state; AUTO
    windows keep edge occupancy below 1e-12 so the folded mass never
    matters at reported tolerances.
    """

    lo: int
    up: np.ndarray
    down: np.ndarray
    hold: np.ndarray
    absorb: np.ndarray

    @property
    def hi(self):
        return self.lo + len(self.up) - 1

    @property
    def states(self):
        return range(self.lo, self.hi + 1)

    def index(self, state):
        assert self.lo <= state <= self.hi, f"state {state} outside window"
        return state - self.lo


def _chain_over(spec, lo, hi):
    n = hi - lo + 1
    up = np.zeros(n)
    down = np.zeros(n)
    hold = np.zeros(n)
    absorb = np.zeros(n)
    for k, state in enumerate(range(lo, hi + 1)):
        fwd, bwd, stay, die = model.step_probs(spec, state)
        hold[k] = stay
        absorb[k] = die
        if state + 1 <= hi:
            up[k] = fwd
        else:
            absorb[k] += fwd  # fold window exit into absorption
        if state - 1 >= lo:
            down[k] = bwd
        else:
            absorb[k] += bwd
    return TransientChain(lo=lo, up=up, down=down, hold=hold, absorb=absorb)


def _natural_bounds(spec):
    """(lo, hi) with None marking an unbounded side."""
    if isinstance(spec, (model.FiniteWalkSpec, model.ModifiedFiniteSpec)):
        return 0, spec.N
    if isinstance(spec, (model.HalfLineWalkSpec, model.ModifiedHalfLineSpec)):
        return 0, None
    if isinstance(spec, (model.FullLineWalkSpec, model.ModifiedFullLineSpec)):
        return None, None
    raise TypeError(f"unknown spec type {type(spec).__name__}")


def build_chain(spec, window="auto", start=None):
    """Encode a walk spec as a TransientChain.

    Finite specs ignore `window`. Infinite specs take window=(lo, hi) or
    "auto"; AUTO doubles the window until the solved occupancy at the
    window edges falls below 1e-12, which requires the start state and a
    tail that actually decays (interior absorption).
    """
    nat_lo, nat_hi = _natural_bounds(spec)
    if nat_lo is not None and nat_hi is not None:
        return _chain_over(spec, nat_lo, nat_hi)

    if window != "auto":
        lo, hi = window
        lo = nat_lo if nat_lo is not None else lo
        if start is not None and not lo <= start <= hi:
            raise ValueError(f"window [{lo}, {hi}] does not contain start {start}")
        return _chain_over(spec, lo, hi)

    assert start is not None, "AUTO windowing needs the start state"
    if isinstance(spec, model.ModifiedFullLineSpec) and (
        spec.pos_regime.s == 0 or spec.neg_regime.s == 0
    ):
        raise UnsupportedCase(
            "AUTO window undefined without interior absorption (escape regime); "
            "pass an explicit window or use Monte Carlo"
        )

    anchor = max(abs(start), getattr(spec, "M", 0))
    half = 64
    while True:
        hi = anchor + half
        lo = nat_lo if nat_lo is not None else -anchor - half
        chain = _chain_over(spec, lo, hi)
        visits = exact_visits(chain, start)
        edge = visits[-1] if nat_lo is not None else max(visits[0], visits[-1])
        if edge < EDGE_OCCUPANCY_TOL:
            return chain
        half *= 2
        if half > model.STATE_CAP:
            raise UnsupportedCase("occupancy does not decay; no finite window works")


def _solve_transposed(chain, rhs):
    """Solve (I - Q)^T y = rhs with the tridiagonal structure."""
    n = len(chain.up)
    ab = np.zeros((3, n))
    ab[1] = 1.0 - chain.hold
    ab[0, 1:] = -chain.down[1:]  # (I-Q)^T superdiagonal
    ab[2, :-1] = -chain.up[:-1]  # (I-Q)^T subdiagonal
    try:
        return solve_banded((1, 1), ab, rhs)
    except np.linalg.LinAlgError as err:
        raise NotAbsorbing(f"fundamental-matrix solve failed: {err}") from err


def exact_visits(chain, i0):
    """Expected occupancy epochs per state: row i0 of (I - Q)^{-1}."""
    rhs = np.zeros(len(chain.up))
    rhs[chain.index(i0)] = 1.0
    visits = _solve_transposed(chain, rhs)
    if not np.all(np.isfinite(visits)):
        raise NotAbsorbing("fundamental-matrix solve returned non-finite values")
    return visits


@dataclass(frozen=True)
class ExactAbsorption:
    """Absorption summary from the fundamental matrix, aligned to chain.lo."""

    lo: int
    absorb_probs: np.ndarray
    mean_time: float
    defective_times: np.ndarray


def exact_absorption(chain, i0):
    """Per-state absorption probabilities, mean time, defective times.

    absorb_j = absorb(j) * visits_j; m = sum(visits) - 1; the defective
    times come from row i0 of Q (I - Q)^{-2} (two banded solves), scaled by
    the absorption probability at the target state.
    """
    visits = exact_visits(chain, i0)
    probs = chain.absorb * visits
    total = probs.sum()
    if abs(total - 1.0) > 1e-8:
        raise NotAbsorbing(f"absorption mass {total!r} != 1")
    second = _solve_transposed(chain, visits)  # row of (I-Q)^{-2}
    row_q = np.zeros_like(second)  # row of Q (I-Q)^{-2}
    row_q += second * chain.hold
    row_q[1:] += second[:-1] * chain.up[:-1]
    row_q[:-1] += second[1:] * chain.down[1:]
    defective = chain.absorb * row_q
    return ExactAbsorption(
        lo=chain.lo,
        absorb_probs=probs,
        mean_time=float(visits.sum() - 1.0),
        defective_times=defective,
    )


def dp_nstep(params, n_max):
    """Step distributions by iterated convolution of {+1: p, -1: q, 0: r}.

    The kernel has mass 1 - s, so total mass after n steps is (1-s)^n.
    """
    assert n_max >= 0
    p, q, r, s = params.as_tuple()
    size = 2 * n_max + 1  # displacements -n_max..n_max at offset n_max
    cur = np.zeros(size)
    cur[n_max] = 1.0
    out = [StepDistribution(n=0, probs={0: 1.0}, absorbed=0.0)]
    for n in range(1, n_max + 1):
        nxt = r * cur
        nxt[1:] += p * cur[:-1]
        nxt[:-1] += q * cur[1:]
        cur = nxt
        ks = range(-n, n + 1)
        probs = {k: float(cur[n_max + k]) for k in ks}
        out.append(StepDistribution(n=n, probs=probs, absorbed=1.0 - (1.0 - s) ** n))
    return out


@dataclass(frozen=True)
class McEstimate:
    mean: float
    se: float
    replicas: int
    seed: int


@dataclass(frozen=True)
class McRunResult:
    """Per-quantity estimates from one deterministic Monte Carlo run."""

    absorb: dict
    mean_time: McEstimate
    escape: dict
    visits: dict
    replicas: int
    seed: int
    horizon: int


def _threshold_fn(spec):
    """Vectorized state -> cumulative thresholds (p, p+q, p+q+r)."""
    lo, hi = _natural_bounds(spec)
    if lo is not None and hi is not None:
        table = np.array([model.step_probs(spec, n) for n in range(lo, hi + 1)])
        t1 = table[:, 0]
        t2 = t1 + table[:, 1]
        t3 = t2 + table[:, 2]

        def thresholds(pos):
            idx = pos - lo
            return t1[idx], t2[idx], t3[idx]

        return thresholds

    # infinite domains: small row table + cheap state classification
    if isinstance(spec, model.HalfLineWalkSpec):
        rows = [spec.left.as_tuple(), spec.interior.as_tuple()]

        def classify(pos):
            return (pos > 0).astype(np.intp)

    elif isinstance(spec, model.ModifiedHalfLineSpec):
        rows = [
            spec.barrier0.as_tuple(),
            spec.left_regime.as_tuple(),
            spec.barrierM.as_tuple(),
            spec.right_regime.as_tuple(),
        ]
        m = spec.M

        def classify(pos):
            return (pos > 0).astype(np.intp) + (pos >= m) + (pos > m)

    elif isinstance(spec, model.FullLineWalkSpec):
        rows = [spec.interior.as_tuple()]

        def classify(pos):
            return np.zeros(pos.shape, dtype=np.intp)

    elif isinstance(spec, model.ModifiedFullLineSpec):
        rows = [
            spec.neg_regime.as_tuple(),
            spec.origin.as_tuple(),
            spec.pos_regime.as_tuple(),
        ]

        def classify(pos):
            return (pos > 0).astype(np.intp) + (pos >= 0)

    else:
        raise TypeError(type(spec).__name__)

    table = np.array(rows)
    t1 = table[:, 0]
    t2 = t1 + table[:, 1]
    t3 = t2 + table[:, 2]

    def thresholds(pos):
        idx = classify(pos)
        return t1[idx], t2[idx], t3[idx]

    return thresholds


def _has_absorption(spec):
    probs = []
    if isinstance(spec, model.FiniteWalkSpec):
        probs = [spec.interior.s, spec.left.absorb, spec.right.absorb]
    elif isinstance(spec, model.HalfLineWalkSpec):
        probs = [spec.interior.s, spec.left.absorb]
    elif isinstance(spec, model.FullLineWalkSpec):
        probs = [spec.interior.s]
    elif isinstance(spec, model.ModifiedFiniteSpec):
        probs = [
            spec.left_regime.s,
            spec.right_regime.s,
            spec.barrier0.absorb,
            spec.barrierM.absorb,
            spec.barrierN.absorb,
        ]
    elif isinstance(spec, model.ModifiedHalfLineSpec):
        probs = [
            spec.left_regime.s,
            spec.right_regime.s,
            spec.barrier0.absorb,
            spec.barrierM.absorb,
        ]
    elif isinstance(spec, model.ModifiedFullLineSpec):
        probs = [spec.pos_regime.s, spec.neg_regime.s, spec.origin.absorb]
    return any(v > 0 for v in probs)


def _run_block(thresholds, i0, seed, block, rows_used, escape, track):
    """Simulate one block of BLOCK_SIZE replica rows.

    Every epoch draws one uniform vector of width BLOCK_SIZE from
    Philox(key=seed, counter=block * 2^128); replica r (global index
    block*BLOCK_SIZE + row) always consumes row entries of that stream, so
    the result depends only on (seed, replica index).
    """
    gen = np.random.Generator(np.random.Philox(key=seed, counter=block * _COUNTER_STRIDE))
    B = BLOCK_SIZE
    pos = np.full(B, i0, dtype=np.int64)
    active = np.zeros(B, dtype=bool)
    active[:rows_used] = True
    absorbed = np.zeros(B, dtype=bool)
    times = np.zeros(B, dtype=np.int64)
    esc_plus = np.zeros(B, dtype=bool)
    esc_minus = np.zeros(B, dtype=bool)
    if track is not None:
        track_lo, track_hi = track
        width = track_hi - track_lo + 1
        visit = np.zeros((B, width), dtype=np.int64)
    step = 0
    while active.any():
        if track is not None:
            offset = pos - track_lo
            mask = active & (offset >= 0) & (offset < width)
            visit[np.nonzero(mask)[0], offset[mask]] += 1
        u = gen.random(B)
        t1, t2, t3 = thresholds(pos)
        fwd = active & (u < t1)
        bwd = active & (u >= t1) & (u < t2)
        die = active & (u >= t3)
        absorbed |= die
        times[die] = step
        active &= ~die
        pos += fwd.astype(np.int64) - bwd.astype(np.int64)
        if escape is not None:
            esc_lo, esc_hi = escape
            plus = active & (pos >= esc_hi)
            minus = active & (pos <= esc_lo)
            esc_plus |= plus
            esc_minus |= minus
            active &= ~(plus | minus)
        step += 1
        if step > _STEP_CAP:
            raise NonTerminating(f"simulation exceeded {_STEP_CAP} epochs per block")
    sites, counts = np.unique(pos[absorbed], return_counts=True)
    t_abs = times[absorbed]
    partial = {
        "n_absorbed": int(absorbed.sum()),
        "sites": {int(s): int(c) for s, c in zip(sites, counts)},
        "time_sum": int(t_abs.sum()),
        "time_sq": int((t_abs * t_abs).sum()),
        "esc_plus": int(esc_plus.sum()),
        "esc_minus": int(esc_minus.sum()),
    }
    if track is not None:
        partial["visit_sum"] = visit[:rows_used].sum(axis=0)
        partial["visit_sq"] = (visit[:rows_used] ** 2).sum(axis=0)
    return partial


def _freq_estimate(count, replicas, seed):
    mean = count / replicas
    se = math.sqrt(mean * (1.0 - mean) / (replicas - 1)) if replicas > 1 else 0.0
    return McEstimate(mean=mean, se=se, replicas=replicas, seed=seed)


def _moment_estimate(total, total_sq, count, seed):
    if count == 0:
        return McEstimate(mean=float("nan"), se=float("nan"), replicas=0, seed=seed)
    mean = total / count
    if count > 1:
        var = max(total_sq - count * mean * mean, 0.0) / (count - 1)
        se = math.sqrt(var / count)
    else:
        se = 0.0
    return McEstimate(mean=mean, se=se, replicas=count, seed=seed)


def _simulate(spec, i0, replicas, seed, escape, track, workers):
    thresholds = _threshold_fn(spec)
    blocks = (replicas + BLOCK_SIZE - 1) // BLOCK_SIZE

    def task(block):
        rows = min(BLOCK_SIZE, replicas - block * BLOCK_SIZE)
        return _run_block(thresholds, i0, seed, block, rows, escape, track)

    if workers > 1 and blocks > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(task, range(blocks)))
    else:
        partials = [task(block) for block in range(blocks)]

    merged = {
        "n_absorbed": 0,
        "sites": {},
        "time_sum": 0,
        "time_sq": 0,
        "esc_plus": 0,
        "esc_minus": 0,
    }
    if track is not None:
        width = track[1] - track[0] + 1
        merged["visit_sum"] = np.zeros(width, dtype=np.int64)
        merged["visit_sq"] = np.zeros(width, dtype=np.int64)
    for part in partials:  # fixed block order
        for key in ("n_absorbed", "time_sum", "time_sq", "esc_plus", "esc_minus"):
            merged[key] += part[key]
        for site, count in part["sites"].items():
            merged["sites"][site] = merged["sites"].get(site, 0) + count
        if track is not None:
            merged["visit_sum"] += part["visit_sum"]
            merged["visit_sq"] += part["visit_sq"]
    return merged


def _escape_bounds(i0, horizon):
    return (i0 - horizon, i0 + horizon)


def _initial_horizon(spec):
    drift = max(
        abs(spec.pos_regime.p - spec.pos_regime.q),
        abs(spec.neg_regime.q - spec.neg_regime.p),
        0.05,
    )
    return math.ceil(1000.0 * drift)


def mc_run(spec, i0, replicas, seed, horizon_policy=None, workers=1, track_states=None):
    """Deterministic Monte Carlo estimates for a walk spec.

    Fixed (seed, replicas) gives bit-identical output for any worker count:
    replica streams are derived from (seed, replica index) via per-block
    Philox counters and partial sums are merged in block order.

    horizon_policy: None picks escape thresholding automatically for
    zero-interior-absorption full-line specs (initial horizon from 10^3
    steps of drift, doubled until all three classification frequencies move
    by < 3 sigma); an integer forces a fixed escape horizon.
    """
    assert replicas >= 1
    seed = int(seed)
    needs_escape = (
        isinstance(spec, model.ModifiedFullLineSpec)
        and spec.pos_regime.s == 0
        and spec.neg_regime.s == 0
    )
    if not needs_escape and not isinstance(horizon_policy, int):
        if not _has_absorption(spec):
            raise NonTerminating("no absorption anywhere and no escape policy")
        horizon = 0
        merged = _simulate(spec, i0, replicas, seed, None, track_states, workers)
    else:
        if isinstance(horizon_policy, int):
            horizon = horizon_policy
            merged = _simulate(
                spec, i0, replicas, seed, _escape_bounds(i0, horizon), track_states, workers
            )
        else:
            horizon = _initial_horizon(spec)
            merged = _simulate(
                spec, i0, replicas, seed, _escape_bounds(i0, horizon), track_states, workers
            )
            for _ in range(20):
                doubled = 2 * horizon
                nxt = _simulate(
                    spec, i0, replicas, seed, _escape_bounds(i0, doubled), track_states, workers
                )
                stable = True
                for key in ("n_absorbed", "esc_plus", "esc_minus"):
                    prev_f = merged[key] / replicas
                    cur = _freq_estimate(nxt[key], replicas, seed)
                    if abs(cur.mean - prev_f) > 3.0 * cur.se + 1e-12:
                        stable = False
                merged, horizon = nxt, doubled
                if stable:
                    break
            else:
                raise NonTerminating("escape classification never stabilized")

    absorb = {
        site: _freq_estimate(count, replicas, seed)
        for site, count in sorted(merged["sites"].items())
    }
    mean_time = _moment_estimate(
        merged["time_sum"], merged["time_sq"], merged["n_absorbed"], seed
    )
    escape = None
    if needs_escape or isinstance(horizon_policy, int):
        escape = {
            "absorbed": _freq_estimate(merged["n_absorbed"], replicas, seed),
            "plus": _freq_estimate(merged["esc_plus"], replicas, seed),
            "minus": _freq_estimate(merged["esc_minus"], replicas, seed),
        }
    visits = None
    if track_states is not None:
        lo = track_states[0]
        visits = {}
        for k in range(track_states[1] - lo + 1):
            visits[lo + k] = _moment_estimate(
                float(merged["visit_sum"][k]),
                float(merged["visit_sq"][k]),
                replicas,
                seed,
            )
    return McRunResult(
        absorb=absorb,
        mean_time=mean_time,
        escape=escape,
        visits=visits,
        replicas=replicas,
        seed=seed,
        horizon=horizon,
    )
