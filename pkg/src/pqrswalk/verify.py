"""Verification suites: random specs, closed-form vs oracle, fast-path gate.

Random specs draw probabilities from a floored normalized-uniform scheme
(every component >= 0.02, every interior s >= 0.05) so the characteristic
roots stay well separated; degenerate regimes get their own dedicated
suite. The fast-path gate compares every transcribed display formula
against its boundary-system reference across many random specs and reports
which variants are safe to enable.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import homogeneous as hg
from . import model, modified as md, oracle
from .characteristic import roots_at
from .errors import UnsupportedCase

FLOOR = 0.02
S_FLOOR = 0.05


# --- random spec generation --------------------------------------------------


def _floored(rng, floors):
    """Random probabilities summing to 1 with per-component lower bounds."""
    w = rng.uniform(0.0, 1.0, len(floors))
    w = w / w.sum()
    slack = 1.0 - sum(floors)
    assert slack > 0
    return tuple(f + slack * x for f, x in zip(floors, w))


def random_params(rng):
    return model.pqrs(*_floored(rng, (FLOOR, FLOOR, FLOOR, S_FLOOR)))


def random_left_barrier(rng):
    return model.left_barrier(*_floored(rng, (S_FLOOR, FLOOR, S_FLOOR)))


def random_right_barrier(rng):
    return model.right_barrier(*_floored(rng, (S_FLOOR, FLOOR, S_FLOOR)))


def random_mid_barrier(rng):
    return model.mid_barrier(*_floored(rng, (S_FLOOR, S_FLOOR, FLOOR, FLOOR)))


def random_finite_spec(rng, n_max=50):
    return model.FiniteWalkSpec(
        N=int(rng.integers(3, n_max + 1)),
        interior=random_params(rng),
        left=random_left_barrier(rng),
        right=random_right_barrier(rng),
    )


def random_halfline_spec(rng):
    return model.HalfLineWalkSpec(
        interior=random_params(rng), left=random_left_barrier(rng)
    )


def random_fullline_spec(rng):
    return model.FullLineWalkSpec(interior=random_params(rng))


def random_mfinite_spec(rng):
    m = int(rng.integers(2, 8))
    return model.ModifiedFiniteSpec(
        N=m + int(rng.integers(3, 11)),
        M=m,
        right_regime=random_params(rng),
        left_regime=random_params(rng),
        barrier0=random_left_barrier(rng),
        barrierM=random_mid_barrier(rng),
        barrierN=random_right_barrier(rng),
    )


def random_mhalfline_spec(rng):
    return model.ModifiedHalfLineSpec(
        M=int(rng.integers(1, 7)),
        right_regime=random_params(rng),
        left_regime=random_params(rng),
        barrier0=random_left_barrier(rng),
        barrierM=random_mid_barrier(rng),
    )


def random_mfullline_spec(rng):
    return model.ModifiedFullLineSpec(
        pos_regime=random_params(rng),
        neg_regime=random_params(rng),
        origin=random_mid_barrier(rng),
    )


def random_escape_spec(rng, case=None):
    """Zero-interior-absorption spec; case 1 drifts outward on both sides,
    case 2 drifts toward the origin on the left."""
    if case is None:
        case = 1 if rng.integers(2) == 0 else 2

    def drifting(sign):
        # p - q at least 0.1 so escape converges briskly
        gap = rng.uniform(0.1, 0.5)
        r = rng.uniform(FLOOR, 1.0 - gap - 2 * FLOOR)
        q = (1.0 - r - gap) / 2.0
        p = q + gap
        if sign < 0:
            p, q = q, p
        return model.pqrs(p, q, r, 0.0)

    return model.ModifiedFullLineSpec(
        pos_regime=drifting(+1),
        neg_regime=drifting(+1 if case == 1 else -1),
        origin=random_mid_barrier(rng),
    )


def random_symmetric_spec(rng):
    sym = model.pqrs(0.5, 0.5, 0.0, 0.0)
    m = int(rng.integers(2, 8))
    return model.ModifiedFiniteSpec(
        N=m + int(rng.integers(3, 11)),
        M=m,
        right_regime=sym,
        left_regime=sym,
        barrier0=random_left_barrier(rng),
        barrierM=random_mid_barrier(rng),
        barrierN=random_right_barrier(rng),
    )


def random_asymmetric_spec(rng):
    gap = rng.uniform(0.05, 0.5)
    q = (1.0 - gap) / 2.0
    params = model.pqrs(q + gap, q, 0.0, 0.0)
    if rng.integers(2):
        params = params.flipped()
    m = int(rng.integers(2, 8))
    return model.ModifiedFiniteSpec(
        N=m + int(rng.integers(3, 11)),
        M=m,
        right_regime=params,
        left_regime=params,
        barrier0=random_left_barrier(rng),
        barrierM=random_mid_barrier(rng),
        barrierN=random_right_barrier(rng),
    )


# --- comparison plumbing -----------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    spec_kind: str
    quantity: str
    err: float
    tol: float
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class SuiteReport:
    ok: bool
    checks: tuple
    failures: tuple

    def summary(self):
        return (
            f"{len(self.checks)} checks, {len(self.failures)} failures"
            if self.checks
            else "no checks ran"
        )


def _rel(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1e-30)


def _record(out, kind, quantity, err, tol, detail=""):
    err = float(err)
    out.append(
        CheckResult(
            spec_kind=kind,
            quantity=quantity,
            err=err,
            tol=tol,
            ok=err <= tol,
            detail=detail,
        )
    )


def _profile_err(values, reference, lo):
    return max(_rel(v, reference[n - lo]) for n, v in values.items())


# --- per-family dense verification -------------------------------------------


def _verify_finite(spec, tol, out):
    chain = oracle.build_chain(spec)
    diag = np.array(
        [oracle.exact_visits(chain, j)[j] for j in range(spec.N + 1)]
    )
    worst_x = worst_m = worst_p = worst_cons = worst_rowsum = worst_f = 0.0
    for i0 in range(spec.N + 1):
        visits = oracle.exact_visits(chain, i0)
        exact = oracle.exact_absorption(chain, i0)
        profile = hg.finite_arrivals(spec, i0)
        summary = hg.finite_absorption(spec, i0)
        worst_x = max(worst_x, _profile_err(profile.values, visits, 0))
        worst_m = max(worst_m, _rel(summary.mean_time, exact.mean_time))
        worst_p = max(
            worst_p,
            max(
                _rel(summary.probabilities[n], exact.absorb_probs[n])
                for n in range(spec.N + 1)
            ),
        )
        worst_cons = max(worst_cons, abs(sum(summary.probabilities.values()) - 1.0))
        worst_rowsum = max(
            worst_rowsum,
            _rel(sum(profile.values.values()) - 1.0, summary.mean_time),
        )
        f_row = visits / diag
        for j in range(spec.N + 1):
            want = 1.0 - 1.0 / visits[i0] if j == i0 else f_row[j]
            got = hg.finite_arrival_probability(spec, i0, j)
            worst_f = max(worst_f, _rel(got, want))
    _record(out, "finite", "arrivals", worst_x, tol)
    _record(out, "finite", "absorption probabilities", worst_p, tol)
    _record(out, "finite", "mean time", worst_m, tol)
    _record(out, "finite", "arrival probability", worst_f, tol)
    _record(out, "finite", "conservation", worst_cons, tol)
    _record(out, "finite", "row-sum identity", worst_rowsum, tol)


def _verify_halfline(spec, tol, out, rng):
    # truncated oracle (edge occupancy < 1e-12), so compare absolutely
    i0 = int(rng.integers(0, 26))
    hi = i0 + 40
    chain = oracle.build_chain(spec, window="auto", start=i0)
    visits = oracle.exact_visits(chain, i0)
    exact = oracle.exact_absorption(chain, i0)
    profile = hg.halfline_arrivals(spec, i0)
    err_x = max(abs(profile.at(n) - visits[n]) for n in range(hi + 1))
    _record(out, "halfline", "arrivals", err_x, tol, f"i0={i0}")
    err_m = abs(hg.halfline_absorption_time(spec, i0) - exact.mean_time)
    _record(out, "halfline", "mean time", err_m, tol)
    err_f = 0.0
    for j in (0, 1, max(1, i0 // 2), i0, i0 + 5, i0 + 17):
        want = (
            1.0 - 1.0 / visits[i0]
            if j == i0
            else visits[j] / oracle.exact_visits(chain, j)[j]
        )
        err_f = max(err_f, abs(hg.halfline_arrival_probability(spec, i0, j) - want))
    _record(out, "halfline", "arrival probability", err_f, tol)
    err_mij = max(
        abs(hg.halfline_defective_time(spec, i0, j) - exact.defective_times[j])
        for j in range(hi + 1)
    )
    _record(out, "halfline", "defective times", err_mij, tol)
    # partial sums of m_ij converge to m_i; once terms pass below 1e-14 the
    # remainder is geometric with ratio xi2 < 1, bounded by term/(1 - xi2)
    xi2 = roots_at(spec.interior, 1.0).xi2
    total, j = 0.0, 0
    while j <= i0 or hg.halfline_defective_time(spec, i0, j) >= 1e-14:
        total += hg.halfline_defective_time(spec, i0, j)
        j += 1
        assert j < 100_000, "defective-time tail refuses to decay"
    tail_bound = hg.halfline_defective_time(spec, i0, j) / (1.0 - xi2)
    err_sum = abs(total - hg.halfline_absorption_time(spec, i0)) + tail_bound
    _record(out, "halfline", "defective-time sum", err_sum, tol)


def _verify_fullline(spec, tol, out, rng):
    i0 = int(rng.integers(-10, 11))
    chain = oracle.build_chain(spec, window="auto", start=i0)
    visits = oracle.exact_visits(chain, i0)
    exact = oracle.exact_absorption(chain, i0)
    err_x = max(
        abs(hg.fullline_arrivals(spec, i0, n) - visits[n - chain.lo])
        for n in range(i0 - 40, i0 + 41)
    )
    _record(out, "fullline", "arrivals", err_x, tol)
    err_f = 0.0
    for j in (i0 - 13, i0 - 1, i0, i0 + 4, i0 + 21):
        want = (
            1.0 - 1.0 / visits[i0 - chain.lo]
            if j == i0
            else visits[j - chain.lo] / oracle.exact_visits(chain, j)[j - chain.lo]
        )
        err_f = max(err_f, abs(hg.fullline_arrival_probability(spec, i0, j) - want))
    _record(out, "fullline", "arrival probability", err_f, tol)
    _record(
        out,
        "fullline",
        "mean time",
        abs(hg.fullline_absorption(spec) - exact.mean_time),
        tol,
    )
    err_mj = max(
        abs(
            hg.fullline_defective_time(spec, j - i0)
            - exact.defective_times[j - chain.lo]
        )
        for j in range(i0 - 30, i0 + 31)
    )
    _record(out, "fullline", "defective times", err_mj, tol)


def _verify_mfinite(spec, tol, out):
    chain = oracle.build_chain(spec)
    worst_x = worst_sum = worst_res = 0.0
    for i0 in range(spec.N + 1):
        visits = oracle.exact_visits(chain, i0)
        profile = md.mfinite_arrivals(spec, i0)
        worst_x = max(worst_x, _profile_err(profile.values, visits, 0))
        probs = md.mfinite_absorption_probabilities(spec, i0)
        worst_sum = max(worst_sum, abs(sum(probs.values()) - 1.0))
        if not 0 < i0 < spec.M:
            worst_res = max(worst_res, md.mfinite_system(spec, i0).residual)
    _record(out, "mfinite", "arrivals", worst_x, tol)
    _record(out, "mfinite", "absorption sum", worst_sum, tol)
    _record(out, "mfinite", "system residual", worst_res, tol)


def _verify_mhalfline(spec, tol, out, rng):
    i0 = int(rng.integers(0, spec.M + 15))
    chain = oracle.build_chain(spec, window="auto", start=i0)
    visits = oracle.exact_visits(chain, i0)
    profile = md.mhalfline_arrivals(spec, i0)
    err_x = max(
        abs(profile.at(n) - visits[n]) for n in range(max(i0, spec.M) + 30)
    )
    _record(out, "mhalfline", "arrivals", err_x, tol, f"i0={i0}")
    err_m = 0.0
    for i in range(0, spec.M + 20):
        exact = oracle.exact_absorption(chain, i)
        err_m = max(
            err_m, abs(md.mhalfline_absorption_time(spec, i) - exact.mean_time)
        )
    _record(out, "mhalfline", "mean time", err_m, tol)
    _record(
        out,
        "mhalfline",
        "system residual",
        max(
            md.mhalfline_system(spec, i0).residual,
            md.mhalfline_time_system(spec).residual,
        ),
        tol,
    )


def _verify_mfullline(spec, tol, out, rng):
    i0 = int(rng.integers(-8, 9))
    chain = oracle.build_chain(spec, window="auto", start=i0)
    visits = oracle.exact_visits(chain, i0)
    profile = md.mfullline_arrivals(spec, i0)
    err_x = max(
        abs(profile.at(n) - visits[n - chain.lo]) for n in range(-20, 21)
    )
    _record(out, "mfullline", "arrivals", err_x, tol, f"i0={i0}")
    err_m = 0.0
    for i in range(-12, 13):
        exact = oracle.exact_absorption(chain, i)
        err_m = max(
            err_m, abs(md.mfullline_absorption_time(spec, i) - exact.mean_time)
        )
    _record(out, "mfullline", "mean time", err_m, tol)
    _record(
        out,
        "mfullline",
        "system residual",
        max(
            md.mfullline_system(spec, i0).residual,
            md.mfullline_time_system(spec).residual,
        ),
        tol,
    )


def _verify_escape(spec, tol, out, rng):
    i0 = int(rng.integers(0, 6))
    trio = md.mfullline_escape(spec, i0)
    _record(out, "escape", "probability sum", abs(sum(trio) - 1.0), tol)
    # folded window: edge states swallow outward flux, so their absorption
    # mass approximates the escape probabilities geometrically well
    K = 250
    chain = oracle.build_chain(spec, window=(i0 - K, i0 + K))
    exact = oracle.exact_absorption(chain, i0)
    p_absorb = exact.absorb_probs[-chain.lo]
    p_plus = exact.absorb_probs[-1]
    p_minus = exact.absorb_probs[0]
    err = max(
        abs(trio[0] - p_absorb), abs(trio[1] - p_plus), abs(trio[2] - p_minus)
    )
    _record(out, "escape", "three-way split vs folded window", err, max(tol, 1e-8))


def verify_spec(spec, tol=1e-10, rng=None, kind=None):
    """All applicable closed-form vs oracle checks for one spec."""
    rng = rng or np.random.default_rng(0)
    out = []
    if isinstance(spec, model.FiniteWalkSpec):
        _verify_finite(spec, tol, out)
    elif isinstance(spec, model.HalfLineWalkSpec):
        _verify_halfline(spec, tol, out, rng)
    elif isinstance(spec, model.FullLineWalkSpec):
        _verify_fullline(spec, tol, out, rng)
    elif isinstance(spec, model.ModifiedFiniteSpec):
        _verify_mfinite(spec, tol, out)
    elif isinstance(spec, model.ModifiedHalfLineSpec):
        _verify_mhalfline(spec, tol, out, rng)
    elif isinstance(spec, model.ModifiedFullLineSpec):
        if spec.pos_regime.s == 0:
            _verify_escape(spec, tol, out, rng)
        else:
            _verify_mfullline(spec, tol, out, rng)
    else:
        raise TypeError(f"unknown spec type {type(spec).__name__}")
    if kind is not None:
        out = [
            CheckResult(kind, c.quantity, c.err, c.tol, c.ok, c.detail) for c in out
        ]
    return out


def _verify_nstep(params, tol, out, n_max=30):
    steps = oracle.dp_nstep(params, n_max)
    worst = worst_mass = 0.0
    for dist in steps:
        n = dist.n
        for k in range(-n, n + 1):
            comb = hg.nstep_combinatorial(params, k, n)
            pgf = hg.nstep_pgf(params, k, n)
            worst = max(worst, abs(comb - dist.probs[k]), abs(pgf - dist.probs[k]))
        worst_mass = max(
            worst_mass,
            abs(sum(dist.probs.values()) - (1.0 - params.s) ** n),
        )
    _record(out, "nstep", "three-way agreement", worst, tol)
    _record(out, "nstep", "survival mass", worst_mass, max(tol, 1e-12))


def _sigma_gap(estimate, want, replicas):
    """|mc - exact| in standard errors, floored by the binomial se at the
    exact probability so never-observed rare events do not divide by zero."""
    floor = math.sqrt(max(want * (1.0 - want), 0.0) / replicas)
    return abs(estimate.mean - want) / max(estimate.se, floor, 1e-12)


def _verify_mc(spec, tol_sigma, out, rng, replicas):
    seed = int(rng.integers(0, 2**63))
    if isinstance(spec, model.FiniteWalkSpec):
        i0 = int(rng.integers(0, spec.N + 1))
        run = oracle.mc_run(spec, i0, replicas=replicas, seed=seed)
        summary = hg.finite_absorption(spec, i0)
        zero = oracle.McEstimate(mean=0.0, se=0.0, replicas=replicas, seed=seed)
        worst = max(
            _sigma_gap(run.absorb.get(n, zero), want, replicas)
            for n, want in summary.probabilities.items()
        )
        _record(out, "finite", "absorption frequencies (sigmas)", worst, tol_sigma)
        est = run.mean_time
        _record(
            out,
            "finite",
            "mean time (sigmas)",
            abs(est.mean - summary.mean_time) / max(est.se, 1e-12),
            tol_sigma,
        )
    elif isinstance(spec, model.FullLineWalkSpec):
        run = oracle.mc_run(spec, 0, replicas=replicas, seed=seed)
        est = run.mean_time
        _record(
            out,
            "fullline",
            "mean time (sigmas)",
            abs(est.mean - hg.fullline_absorption(spec)) / max(est.se, 1e-12),
            tol_sigma,
        )
    elif isinstance(spec, model.ModifiedFullLineSpec) and spec.pos_regime.s == 0:
        i0 = int(rng.integers(0, 4))
        run = oracle.mc_run(spec, i0, replicas=replicas, seed=seed)
        trio = md.mfullline_escape(spec, i0)
        worst = max(
            _sigma_gap(run.escape[key], want, replicas)
            for key, want in zip(("absorbed", "plus", "minus"), trio)
        )
        _record(out, "escape", "three-way split (sigmas)", worst, tol_sigma)
    else:
        raise UnsupportedCase(
            "mc verification covers finite, fullline and escape specs"
        )


def verify_nstep(params, tol=1e-10, n_max=30):
    """Three-way n-step agreement checks for one parameter set."""
    out = []
    _verify_nstep(params, tol, out, n_max=n_max)
    return out


def verify_mc(spec, sigma=4.0, seed=0, replicas=100_000):
    """Monte Carlo agreement checks (in standard errors) for one spec."""
    out = []
    _verify_mc(spec, sigma, out, np.random.default_rng(seed), replicas)
    return out


# --- suites ------------------------------------------------------------------

_DENSE_ROTATION = (
    ("finite", random_finite_spec),
    ("halfline", random_halfline_spec),
    ("fullline", random_fullline_spec),
    ("mfinite", random_mfinite_spec),
    ("mhalfline", random_mhalfline_spec),
    ("mfullline", random_mfullline_spec),
    ("escape", random_escape_spec),
)


def _retag(checks, kind):
    return [
        CheckResult(kind, c.quantity, c.err, c.tol, c.ok, c.detail) for c in checks
    ]


def run_random_suite(count, which="dense", tol=1e-8, seed=0, replicas=100_000):
    """Floored random-spec suite; `which` picks the oracle family.

    dense: closed forms against fundamental-matrix solves (finite domains
    compare relatively, truncated infinite domains absolutely).
    dp: n-step displacement three-way agreement.
    mc: Monte Carlo agreement in standard errors (tol is the sigma budget).
    """
    rng = np.random.default_rng(seed)
    checks = []
    if which == "dense":
        for index in range(count):
            kind, make = _DENSE_ROTATION[index % len(_DENSE_ROTATION)]
            spec = make(rng)
            checks.extend(verify_spec(spec, tol=tol, rng=rng, kind=f"{kind}#{index}"))
    elif which == "dp":
        for index in range(count):
            fresh = []
            _verify_nstep(random_params(rng), tol, fresh)
            checks.extend(_retag(fresh, f"nstep#{index}"))
    elif which == "mc":
        sigma = tol if tol > 1.0 else 4.0
        makers = (
            ("finite", random_finite_spec),
            ("fullline", random_fullline_spec),
            ("escape", random_escape_spec),
        )
        for index in range(count):
            kind, make = makers[index % len(makers)]
            fresh = []
            _verify_mc(make(rng), sigma, fresh, rng, replicas)
            checks.extend(_retag(fresh, f"{kind}#{index}"))
    else:
        raise ValueError(f"unknown oracle {which!r}")
    failures = tuple(c for c in checks if not c.ok)
    return SuiteReport(ok=not failures, checks=tuple(checks), failures=failures)


def run_degenerate_suite(count=40, tol=1e-10, seed=1):
    """Dedicated coverage for degenerate-root regimes (p = q, s = 0)."""
    rng = np.random.default_rng(seed)
    checks = []
    for index in range(count):
        if index % 3 == 0:
            spec = random_symmetric_spec(rng)
            checks.extend(verify_spec(spec, tol=tol, rng=rng, kind="symmetric"))
            i0 = int(rng.integers(spec.M + 1, spec.N))
            chain = oracle.build_chain(spec)
            visits = oracle.exact_visits(chain, i0)
            profile = md.mfinite_symmetric(spec, i0)
            _record(
                checks,
                "symmetric",
                "linear-profile display",
                _profile_err(profile.values, visits, 0),
                tol,
            )
        elif index % 3 == 1:
            spec = random_asymmetric_spec(rng)
            i0 = int(rng.integers(0, spec.N + 1))
            chain = oracle.build_chain(spec)
            visits = oracle.exact_visits(chain, i0)
            profile = md.mfinite_asymmetric(spec, i0)
            _record(
                checks,
                "asymmetric",
                "arrivals",
                _profile_err(profile.values, visits, 0),
                tol,
            )
        else:
            # degenerate regime with holding: p = q, r > 0, s = 0
            p = rng.uniform(0.1, 0.45)
            params = model.pqrs(p, p, 1.0 - 2 * p, 0.0)
            spec = model.ModifiedFiniteSpec(
                N=int(rng.integers(6, 14)),
                M=int(rng.integers(2, 5)),
                right_regime=params,
                left_regime=params,
                barrier0=random_left_barrier(rng),
                barrierM=random_mid_barrier(rng),
                barrierN=random_right_barrier(rng),
            )
            checks.extend(verify_spec(spec, tol=tol, rng=rng, kind="degenerate-hold"))
    failures = tuple(c for c in checks if not c.ok)
    return SuiteReport(ok=not failures, checks=tuple(checks), failures=failures)


# --- fast-path gate ----------------------------------------------------------


@dataclass(frozen=True)
class FastPathReport:
    display: str
    variant: str
    enabled: bool
    specs_tested: int
    max_err: float
    failures: tuple

    def line(self):
        state = "ENABLED " if self.enabled else "DISABLED"
        return (
            f"{state} {self.display} [{self.variant}] "
            f"max err {self.max_err:.3e} over {self.specs_tested} specs"
        )


def _scaled(a, b):
    """Relative error for O(1)-and-larger values, absolute near zero."""
    return abs(a - b) / max(abs(a), abs(b), 1.0)


def _gate(display, variant, pairs, tol):
    # one discrepancy entry per failing spec (its worst value)
    worst = 0.0
    per_spec = {}
    for label, got, want in pairs:
        err = _scaled(got, want)
        worst = max(worst, err)
        spec_id = label.split(" ")[0]
        per_spec[spec_id] = max(per_spec.get(spec_id, 0.0), err)
    failures = tuple(
        f"{spec_id}: err {err:.3e}"
        for spec_id, err in per_spec.items()
        if err > tol
    )
    return FastPathReport(
        display=display,
        variant=variant,
        enabled=worst <= tol,
        specs_tested=len(per_spec),
        max_err=worst,
        failures=failures,
    )


def gate_fast_paths(specs_per_display=200, seed=20, tol=1e-10):
    """Compare every transcribed display against its boundary system.

    Returns one report per (display, variant); a variant is enabled only
    when it matches the system to `tol` relative on every sampled value.
    """
    rng = np.random.default_rng(seed)
    reports = []

    finite_pairs = {"lambda": [], "inverse-lambda": []}
    symmetric_pairs = []
    for index in range(specs_per_display):
        spec = random_mfinite_spec(rng)
        i0 = int(rng.integers(spec.M + 1, spec.N))
        sol = md.mfinite_system(spec, i0)
        for lead, pairs in finite_pairs.items():
            disp = md.display_mfinite_arrivals(spec, i0, lead=lead)
            pairs.extend(
                (f"spec{index} x_{n}", disp[n], sol.at(n)) for n in disp
            )
        sym = random_symmetric_spec(rng)
        s_i0 = int(rng.integers(sym.M + 1, sym.N))
        s_sol = md.mfinite_system(sym, s_i0)
        disp = md.display_symmetric_arrivals(sym, s_i0)
        symmetric_pairs.extend(
            (f"spec{index} x_{n}", disp[n], s_sol.at(n)) for n in disp
        )
    for lead, pairs in finite_pairs.items():
        reports.append(_gate("finite-barrier arrivals", lead, pairs, tol))
    reports.append(_gate("symmetric special case", "linear", symmetric_pairs, tol))

    time_pairs = {"printed": [], "alpha-inverse": [], "reduced-system": []}
    for index in range(specs_per_display):
        spec = random_mhalfline_spec(rng)
        sol = md.mhalfline_time_system(spec)
        for i in range(0, spec.M + 6):
            want = sol.at(i)
            for variant, pairs in time_pairs.items():
                pairs.append(
                    (
                        f"spec{index} m_{i}",
                        md.display_mhalfline_time(spec, i, variant),
                        want,
                    )
                )
    for variant, pairs in time_pairs.items():
        reports.append(_gate("half-line mean time", variant, pairs, tol))

    arrivals_pairs = []
    escape_pairs = []
    for index in range(specs_per_display):
        spec = random_mfullline_spec(rng)
        i0 = int(rng.integers(0, 7))
        sol = md.mfullline_system(spec, i0)
        arrivals_pairs.extend(
            (
                f"spec{index} x_{n}",
                md.display_mfullline_arrivals(spec, i0, n),
                sol.at(n),
            )
            for n in range(-6, i0 + 7)
        )
        esc = random_escape_spec(rng)
        e_i0 = int(rng.integers(0, 6))
        want = md.mfullline_escape(esc, e_i0)
        got = md.display_escape(esc, e_i0)
        escape_pairs.extend(
            (f"spec{index} {name}", g, w)
            for name, g, w in zip(("absorbed", "escape+", "escape-"), got, want)
        )
    reports.append(_gate("full-line arrivals", "tau", arrivals_pairs, tol))
    reports.append(_gate("escape probabilities", "two-case", escape_pairs, tol))

    full_time_pairs = {"printed": [], "corrected": []}
    for index in range(specs_per_display):
        spec = random_mfullline_spec(rng)
        sol = md.mfullline_time_system(spec)
        for i in range(-6, 7):
            want = sol.at(i)
            for variant, pairs in full_time_pairs.items():
                pairs.append(
                    (
                        f"spec{index} m_{i}",
                        md.display_mfullline_time(spec, i, variant),
                        want,
                    )
                )
    for variant, pairs in full_time_pairs.items():
        reports.append(_gate("full-line mean time", variant, pairs, tol))

    return reports
