"""Closed forms and proof-side linear systems for M[pqrs] walks.

The primary computation path solves the boundary linear system directly:
the state space is split into explicit states (barriers, the start, any
length-1 gap) and runs of regime states, each run carrying a two-term root
basis (or a single bounded term on unbounded tails, or the {1, slope} basis
when the regime's roots are degenerate). Balance equations at explicit
states and run endpoints close the system; run interiors are satisfied by
construction. Transcribed display formulas are provided separately as fast
paths whose equivalence to the systems is gated in `verify`.

All bases are scaled so every evaluated power has magnitude <= 1; the
systems stay well-conditioned at any domain size.
"""

from dataclasses import dataclass, field

import numpy as np

from . import model
from .characteristic import roots_at
from .errors import ConsistencyError, DegenerateRoots, UnsupportedCase
from .homogeneous import ArrivalProfile

RESIDUAL_TOL = 1e-8


@dataclass(frozen=True)
class ProofSystemSolution:
    """Solved boundary system: labeled unknowns, residual, row labels.

    `at` evaluates the reconstructed quantity (x_n or m_n) at any state of
    the spec's domain.
    """

    unknowns: dict
    residual: float
    equations: tuple
    at: callable = field(repr=False, default=None)

    def __getitem__(self, label):
        return self.unknowns[label]


@dataclass(frozen=True)
class _Run:
    lo: object  # int, or None for an unbounded lower end
    hi: object  # int, or None for an unbounded upper end
    params: model.PqrsParams
    kind: str  # "pair" | "slope" | "tail_up" | "tail_down"
    names: tuple

    def contains(self, n):
        return (self.lo is None or n >= self.lo) and (
            self.hi is None or n <= self.hi
        )


_X_POOL = (("a", "b"), ("c", "d"), ("h1", "h2"), ("g1", "g2"))
_X_POOL_FULL = (("a1", "b1"), ("c", "d"), ("h1", "h2"), ("g1", "g2"))
_M_POOL = (("a2", "b2"), ("a1", "b1"), ("a0", "b0"))


def _domain_of(spec):
    """(anchor states, lower bound or None, upper bound or None)."""
    if isinstance(spec, model.ModifiedFiniteSpec):
        return {0, spec.M, spec.N}, 0, spec.N
    if isinstance(spec, model.ModifiedHalfLineSpec):
        return {0, spec.M}, 0, None
    if isinstance(spec, model.ModifiedFullLineSpec):
        return {0}, None, None
    raise TypeError(f"not a modified spec: {type(spec).__name__}")


def _regime_at(spec, state):
    f, b, h, s = model.step_probs(spec, state)
    return model.pqrs(f, b, h, s)


def _decompose(spec, extra_states, pool, time_system):
    """Split the domain into explicit states and runs with named bases."""
    anchors, dom_lo, dom_hi = _domain_of(spec)
    explicit = set(anchors) | set(extra_states)
    states = sorted(explicit)
    for left, right in zip(states, states[1:]):
        if right - left == 2:  # length-1 gap becomes an explicit state
            explicit.add(left + 1)
    states = sorted(explicit)

    spans = []
    if dom_lo is None:
        spans.append((None, states[0] - 1))
    for left, right in zip(states, states[1:]):
        if right - left >= 3:
            spans.append((left + 1, right - 1))
    if dom_hi is None:
        spans.append((states[-1] + 1, None))

    runs = []
    pool = list(pool)
    for lo, hi in spans:
        params = _regime_at(spec, lo if lo is not None else hi)
        names = pool.pop(0) if pool else (f"c{len(runs)}a", f"c{len(runs)}b")
        if lo is None:
            kind = "tail_down"
        elif hi is None:
            kind = "tail_up"
        else:
            kind = "pair"
        try:
            roots_at(params, 1.0)
        except DegenerateRoots:
            if kind != "pair":
                raise UnsupportedCase(
                    "degenerate regime on an unbounded tail: occupancy is "
                    "not summable (recurrent without absorption)"
                )
            if time_system:
                raise UnsupportedCase(
                    "degenerate regime has s = 0: mean absorption time "
                    "needs every regime's s > 0"
                )
            kind = "slope"
        if time_system and params.s <= 0:
            raise UnsupportedCase(
                "mean absorption time needs every regime's s > 0"
            )
        runs.append(_Run(lo=lo, hi=hi, params=params, kind=kind, names=names))
    return states, runs


def _run_terms_x(run):
    """(name, basis function) pairs for the occupancy system."""
    if run.kind == "slope":
        span = run.hi - run.lo
        return [
            (run.names[0], lambda n: 1.0),
            (run.names[1], lambda n, lo=run.lo, d=span: (n - lo) / d),
        ]
    rt = roots_at(run.params, 1.0)
    if run.kind == "pair":
        return [
            (run.names[0], lambda n, g=rt.xi1, hi=run.hi: g ** (n - hi)),
            (run.names[1], lambda n, g=rt.xi2, lo=run.lo: g ** (n - lo)),
        ]
    if run.kind == "tail_up":  # keep the decaying (small) root
        return [(run.names[1], lambda n, g=rt.xi2, lo=run.lo: g ** (n - lo))]
    # tail_down: keep the root bounded toward -inf (the large one)
    return [(run.names[0], lambda n, g=rt.xi1, hi=run.hi: g ** (n - hi))]


def _run_terms_m(run):
    """(constant, (name, basis) pairs) for the mean-time system."""
    sigma = (1.0 - run.params.s) / run.params.s
    rt = roots_at(run.params, 1.0)
    if run.kind == "pair":
        terms = [
            (run.names[0], lambda n, g=rt.xi1, lo=run.lo: g ** (lo - n)),
            (run.names[1], lambda n, g=rt.xi2, hi=run.hi: g ** (hi - n)),
        ]
    elif run.kind == "tail_up":  # xi1^{-n} decays as n -> inf
        terms = [(run.names[0], lambda n, g=rt.xi1, lo=run.lo: g ** (lo - n))]
    else:  # tail_down: xi2^{-n} decays as n -> -inf
        terms = [(run.names[1], lambda n, g=rt.xi2, hi=run.hi: g ** (hi - n))]
    return sigma, terms


class _Assembler:
    """Affine expressions over the system unknowns, plus the solver."""

    def __init__(self, spec, states, runs, time_system):
        self.spec = spec
        self.time_system = time_system
        prefix = "m" if time_system else "x"
        self.labels = [f"{prefix}_{n}" for n in states]
        self.state_col = {n: i for i, n in enumerate(states)}
        self.runs = []
        for run in runs:
            if time_system:
                const, terms = _run_terms_m(run)
            else:
                const, terms = 0.0, _run_terms_x(run)
            cols = []
            for name, fn in terms:
                cols.append((len(self.labels), fn))
                self.labels.append(name)
            self.runs.append((run, const, cols))
        self.size = len(self.labels)

    def expr(self, n):
        """(constant, [(column, coefficient)]) representing the value at n."""
        if n in self.state_col:
            return 0.0, [(self.state_col[n], 1.0)]
        for run, const, cols in self.runs:
            if run.contains(n):
                return const, [(col, fn(n)) for col, fn in cols]
        raise AssertionError(f"state {n} outside the decomposed domain")

    def balance_row(self, n, start):
        """Occupancy balance: x_n - inflow(n) = [n == start]."""
        row = np.zeros(self.size)
        rhs = 1.0 if n == start else 0.0
        hold_n = model.step_probs(self.spec, n)[2]
        fwd_prev = model.step_probs(self.spec, n - 1)[0] if self._inside(n - 1) else 0.0
        bwd_next = model.step_probs(self.spec, n + 1)[1] if self._inside(n + 1) else 0.0
        for weight, state in ((1.0 - hold_n, n), (-fwd_prev, n - 1), (-bwd_next, n + 1)):
            if weight == 0.0:
                continue
            const, terms = self.expr(state)
            rhs -= weight * const
            for col, coeff in terms:
                row[col] += weight * coeff
        return row, rhs

    def time_row(self, n):
        """First-step identity: m_n - fwd m_{n+1} - bwd m_{n-1} - hold m_n = 1 - s_n."""
        fwd, bwd, hold, absorb = model.step_probs(self.spec, n)
        row = np.zeros(self.size)
        rhs = 1.0 - absorb
        for weight, state in ((1.0 - hold, n), (-fwd, n + 1), (-bwd, n - 1)):
            if weight == 0.0:
                continue
            const, terms = self.expr(state)
            rhs -= weight * const
            for col, coeff in terms:
                row[col] += weight * coeff
        return row, rhs

    def _inside(self, n):
        _, dom_lo, dom_hi = _domain_of(self.spec)
        return (dom_lo is None or n >= dom_lo) and (dom_hi is None or n <= dom_hi)


def _solve_system(spec, extra_states, pool, time_system, start=None):
    states, runs = _decompose(spec, extra_states, pool, time_system)
    asm = _Assembler(spec, states, runs, time_system)

    rows, rhs, eq_labels = [], [], []

    def add(n):
        if time_system:
            row, b = asm.time_row(n)
        else:
            row, b = asm.balance_row(n, start)
        rows.append(row)
        rhs.append(b)
        eq_labels.append(f"{'time' if time_system else 'balance'}@{n}")

    for n in states:
        add(n)
    for run, _, _ in asm.runs:
        if run.lo is not None and run.lo not in asm.state_col:
            add(run.lo)
        if run.hi is not None and run.hi != run.lo and run.hi not in asm.state_col:
            add(run.hi)

    A = np.array(rows)
    b = np.array(rhs)
    assert A.shape == (asm.size, asm.size), "system must be square"
    try:
        u = np.linalg.solve(A, b)
    except np.linalg.LinAlgError:
        u = np.linalg.lstsq(A, b, rcond=None)[0]
    residual = float(np.max(np.abs(A @ u - b)))
    if residual > RESIDUAL_TOL:
        raise ConsistencyError(f"boundary system residual {residual:.3e}")

    def at(n):
        const, terms = asm.expr(int(n))
        return const + sum(u[col] * coeff for col, coeff in terms)

    unknowns = dict(zip(asm.labels, (float(v) for v in u)))
    return ProofSystemSolution(
        unknowns=unknowns, residual=residual, equations=tuple(eq_labels), at=at
    )


def _require_moving_regimes(spec):
    for name in ("right_regime", "left_regime", "pos_regime", "neg_regime"):
        params = getattr(spec, name, None)
        if params is not None:
            assert params.p > 0 and params.q > 0, f"{name} needs p, q > 0"


# --- occupancy systems -----------------------------------------------------


def mfinite_system(spec, i0):
    """Boundary system for expected arrivals on [0, N] with barrier M."""
    model.require_valid(spec)
    _require_moving_regimes(spec)
    assert 0 <= i0 <= spec.N
    return _solve_system(spec, {i0}, _X_POOL, time_system=False, start=i0)


def mhalfline_system(spec, i0):
    """Boundary system for expected arrivals on [0, inf) with barrier M."""
    model.require_valid(spec)
    assert i0 >= 0
    return _solve_system(spec, {i0}, _X_POOL, time_system=False, start=i0)


def mfullline_system(spec, i0):
    """Boundary system for expected arrivals on the line with an origin barrier."""
    model.require_valid(spec)
    return _solve_system(spec, {i0}, _X_POOL_FULL, time_system=False, start=i0)


def mhalfline_time_system(spec):
    """Mean-time system on [0, inf): unknowns m_0, m_M and segment coefficients."""
    model.require_valid(spec)
    return _solve_system(spec, set(), _M_POOL, time_system=True)


def mfullline_time_system(spec):
    """Mean-time system on the line: m_0 and one coefficient per tail."""
    model.require_valid(spec)
    return _solve_system(spec, set(), _M_POOL, time_system=True)


# --- operations ------------------------------------------------------------


def mfinite_arrivals(spec, i0):
    """Expected arrivals per state on [0, N] with barrier M, from i0.

    Starts strictly left of M are mapped through reflect_translate so the
    system is always solved with the start in the right-hand regime.
    """
    model.require_valid(spec)
    assert 0 <= i0 <= spec.N
    if 0 < i0 < spec.M:
        reflected, ri0, back = model.reflect_translate(spec, i0)
        inner = mfinite_arrivals(reflected, ri0)
        values = {back(n): v for n, v in inner.values.items()}
        return ArrivalProfile(start=i0, domain="finite", values=values)
    sol = mfinite_system(spec, i0)
    values = {n: sol.at(n) for n in range(spec.N + 1)}
    return ArrivalProfile(start=i0, domain="finite", values=values)


def mfinite_absorption_probabilities(spec, i0):
    """P(absorbed at each state) = per-state absorb probability times x."""
    profile = mfinite_arrivals(spec, i0)
    return {
        n: model.step_probs(spec, n)[3] * x for n, x in profile.values.items()
    }


def mfinite_asymmetric(spec, i0):
    """Arrivals for the drifting no-hold special case (regimes p, q, 0, 0).

    Requires equal regimes with p != q and all absorption at the barriers;
    the characteristic roots degenerate to {p/q, 1} on both sides.
    """
    model.require_valid(spec)
    r1, r2 = spec.right_regime, spec.left_regime
    assert r1 == r2, "both regimes must be equal"
    assert r1.r == 0 and r1.s == 0, "regimes must be (p, q, 0, 0)"
    if r1.p == r1.q:
        raise UnsupportedCase("p = q: use mfinite_symmetric")
    return mfinite_arrivals(spec, i0)


def mfinite_symmetric(spec, i0):
    """Arrivals for the symmetric no-hold special case (regimes 1/2, 1/2, 0, 0).

    Uses the closed linear-in-n profile for interior starts M < i0 < N;
    starts in (0, M) reflect first; barrier starts fall back to the system
    (the regimes are degenerate, so runs take the {1, slope} basis).
    """
    model.require_valid(spec)
    for params in (spec.right_regime, spec.left_regime):
        assert (
            abs(params.p - 0.5) < 1e-12
            and abs(params.q - 0.5) < 1e-12
            and params.r == 0
            and params.s == 0
        ), "regimes must be (1/2, 1/2, 0, 0)"
    assert spec.barrier0.absorb > 0 and spec.barrierN.absorb > 0, (
        "the end barriers must absorb"
    )
    assert 0 <= i0 <= spec.N
    if 0 < i0 < spec.M:
        reflected, ri0, back = model.reflect_translate(spec, i0)
        inner = mfinite_symmetric(reflected, ri0)
        values = {back(n): v for n, v in inner.values.items()}
        return ArrivalProfile(start=i0, domain="finite", values=values)
    if i0 in (0, spec.M, spec.N):
        return mfinite_arrivals(spec, i0)
    values = {n: _symmetric_value(spec, i0, n) for n in range(spec.N + 1)}
    return ArrivalProfile(start=i0, domain="finite", values=values)


@dataclass(frozen=True)
class SymmetricSpecialIntermediates:
    """Quantities of the symmetric special case: Omega, theta, affine k."""

    Omega: float
    theta: float
    k: callable = field(repr=False, default=None)


def symmetric_intermediates(spec):
    b0, bM, bN = spec.barrier0, spec.barrierM, spec.barrierN
    assert b0.absorb > 0 and bN.absorb > 0
    omega = spec.N + bN.bwd / bN.absorb
    theta = bM.absorb + bM.bwd / (spec.M + b0.fwd / b0.absorb)
    return SymmetricSpecialIntermediates(
        Omega=omega, theta=theta, k=lambda z: bM.fwd + theta * (z - spec.M)
    )


def _symmetric_value(spec, i0, n):
    M, N = spec.M, spec.N
    b0, bM, bN = spec.barrier0, spec.barrierM, spec.barrierN
    inter = symmetric_intermediates(spec)
    omega, k = inter.Omega, inter.k
    if n == 0:
        return bM.bwd * (omega - i0) / ((b0.fwd + M * b0.absorb) * k(omega))
    if n < M:
        return (
            2.0
            * bM.bwd
            * (n + b0.fwd / b0.absorb)
            * (omega - i0)
            / ((M + b0.fwd / b0.absorb) * k(omega))
        )
    if n == M:
        return (omega - i0) / k(omega)
    if n <= i0:
        return 2.0 * (omega - i0) * k(n) / k(omega)
    if n < N:
        return 2.0 * (omega - n) * k(i0) / k(omega)
    return k(i0) / (bN.absorb * k(omega))


def mhalfline_arrivals(spec, i0):
    """Expected arrivals on [0, inf) with barrier M, from i0 (lazy profile)."""
    sol = mhalfline_system(spec, i0)
    return ArrivalProfile(start=i0, domain="halfline", _evaluate=sol.at)


def mhalfline_absorption_time(spec, i):
    """Mean time before absorption from i on [0, inf) with barrier M."""
    assert i >= 0
    return mhalfline_time_system(spec).at(i)


def mfullline_arrivals(spec, i0):
    """Expected arrivals on the line with an origin barrier, from i0.

    Negative starts are handled by mirroring the spec about the origin.
    """
    model.require_valid(spec)
    if i0 < 0:
        reflected, back = model.reflect_origin(spec)
        inner = mfullline_arrivals(reflected, -i0)
        return ArrivalProfile(
            start=i0, domain="fullline", _evaluate=lambda n: inner.at(back(n))
        )
    sol = mfullline_system(spec, i0)
    return ArrivalProfile(start=i0, domain="fullline", _evaluate=sol.at)


def mfullline_escape(spec, i0):
    """(P(absorbed at origin), P(escape to +inf), P(escape to -inf)).

    Requires the pure-escape shape: regime s = 0 on both sides, absorbing
    origin. Only the drifting cases p1 > q1 with p2 != q2 are covered.
    Probabilities are read off the solved occupancy system: absorption as
    s_0 x_0 and each escape as the stationary outward flux in the tail.
    """
    model.require_valid(spec)
    assert spec.pos_regime.s == 0 and spec.neg_regime.s == 0, (
        "escape analysis needs s = 0 in both regimes"
    )
    assert spec.origin.absorb > 0, "origin must absorb"
    if i0 < 0:
        reflected, _ = model.reflect_origin(spec)
        p_absorb, p_plus, p_minus = mfullline_escape(reflected, -i0)
        return p_absorb, p_minus, p_plus
    pos, neg = spec.pos_regime, spec.neg_regime
    if pos.p <= pos.q:
        raise UnsupportedCase(
            "escape case not treated: needs p > q right of the origin "
            f"(got p1={pos.p}, q1={pos.q})"
        )
    if neg.p == neg.q:
        raise UnsupportedCase(
            "escape case not treated: p = q left of the origin is the "
            "driftless boundary between the two covered sign patterns"
        )
    sol = mfullline_system(spec, i0)
    p_absorb = spec.origin.absorb * sol.at(0)
    hi = max(i0, 0) + 1
    p_plus = pos.p * sol.at(hi) - pos.q * sol.at(hi + 1)
    p_minus = neg.q * sol.at(-1) - neg.p * sol.at(-2)
    return p_absorb, p_plus, p_minus


def mfullline_absorption_time(spec, i):
    """Mean time before absorption from i on the line with an origin barrier."""
    return mfullline_time_system(spec).at(i)


# --- transcribed displays (gated fast paths) -------------------------------


@dataclass(frozen=True)
class ModifiedFiniteIntermediates:
    """Root and boundary quantities of the finite-barrier closed form."""

    lambda1: float
    lambda2: float
    eta1: float
    eta2: float
    xi1: float
    xi2: float
    t1: float
    t2: float
    t: float
    u1: float
    u2: float
    u: float
    gamma1: float
    gamma2: float
    mu1: float
    mu2: float
    phi: callable = field(repr=False, default=None)
    beta: callable = field(repr=False, default=None)


def mfinite_intermediates(spec, i0):
    """Intermediates of the finite-barrier display (start right of M)."""
    right, left = spec.right_regime, spec.left_regime
    b0, bM, bN = spec.barrier0, spec.barrierM, spec.barrierN
    rt1 = roots_at(right, 1.0)
    rt2 = roots_at(left, 1.0)
    lam1, lam2 = rt1.lam, rt2.lam
    xi1, xi2 = rt1.xi1, rt1.xi2
    eta1, eta2 = rt2.xi1, rt2.xi2
    t1 = left.p * (1.0 - b0.hold) - b0.fwd * left.q * eta1
    t2 = left.p * (1.0 - b0.hold) - b0.fwd * left.q * eta2
    t = t1 / t2

    def u_of(xi):
        return xi ** (spec.N - 1) * (
            right.q * (1.0 - bN.hold) * xi - right.p * bN.bwd
        )

    u1, u2 = u_of(xi1), u_of(xi2)
    u = u1 / u2

    def phi(n):
        return eta1**n - t * eta2**n

    def beta(n):
        return (xi1**n - u * xi2**n) / (xi1**i0 - u * xi2**i0)

    def gamma_of(xi):
        return xi ** (-i0) * (
            right.r - 1.0 + right.q * (beta(i0 + 1) + xi)
        )

    ratio = left.p * bM.bwd * phi(spec.M - 1) / (left.q * phi(spec.M))

    def mu_of(xi):
        return xi ** (-spec.M) * (1.0 - bM.hold - bM.fwd / xi - ratio)

    return ModifiedFiniteIntermediates(
        lambda1=lam1,
        lambda2=lam2,
        eta1=eta1,
        eta2=eta2,
        xi1=xi1,
        xi2=xi2,
        t1=t1,
        t2=t2,
        t=t,
        u1=u1,
        u2=u2,
        u=u,
        gamma1=gamma_of(xi1),
        gamma2=gamma_of(xi2),
        mu1=mu_of(xi1),
        mu2=mu_of(xi2),
        phi=phi,
        beta=beta,
    )


def display_mfinite_arrivals(spec, i0, lead="lambda"):
    """Six-case display for arrivals on [0, N], start strictly inside (M, N).

    `lead` picks the contested prefactor of the x_M case: "lambda" uses
    lambda1 as printed, "inverse-lambda" uses 1/lambda1. Returns a dict over
    all states.
    """
    assert spec.M < i0 < spec.N, "display covers interior starts right of M"
    right, left = spec.right_regime, spec.left_regime
    inter = mfinite_intermediates(spec, i0)
    den = inter.gamma1 * inter.mu2 - inter.gamma2 * inter.mu1
    ratio = (right.q / right.p) ** i0
    lead_factor = inter.lambda1 if lead == "lambda" else 1.0 / inter.lambda1
    x_M = lead_factor * ratio / den
    x_i0 = ratio * (
        inter.mu1 * inter.xi1**i0 - inter.mu2 * inter.xi2**i0
    ) / den
    values = {}
    for n in range(spec.N + 1):
        if n == 0:
            values[n] = (
                left.p
                * spec.barrierM.bwd
                * inter.phi(0)
                / (spec.barrier0.fwd * left.q * inter.phi(spec.M))
                * x_M
            )
        elif n < spec.M:
            values[n] = (
                spec.barrierM.bwd
                * inter.phi(n)
                / (left.q * inter.phi(spec.M))
                * x_M
            )
        elif n == spec.M:
            values[n] = x_M
        elif n <= i0:
            values[n] = ratio * (
                inter.mu1 * inter.xi1**n - inter.mu2 * inter.xi2**n
            ) / den
        elif n < spec.N:
            values[n] = inter.beta(n) * x_i0
        else:
            values[n] = right.q / spec.barrierN.bwd * inter.beta(spec.N) * x_i0
    return values


def display_symmetric_arrivals(spec, i0):
    """Linear-in-n display for the symmetric special case, M < i0 < N."""
    assert spec.M < i0 < spec.N
    return {n: _symmetric_value(spec, i0, n) for n in range(spec.N + 1)}


@dataclass(frozen=True)
class ModifiedHalfLineIntermediates:
    """Quantities of the half-line mean-time display.

    alphaM is transcribed as printed (exponent M on the right-regime root);
    the display variants substitute their own candidate where they disagree.
    """

    sigma1: float
    sigma2: float
    alphaM: float
    v1: float
    v2: float


def mhalfline_intermediates(spec):
    right, left = spec.right_regime, spec.left_regime
    b0, bM = spec.barrier0, spec.barrierM
    xi1 = roots_at(right, 1.0).xi1
    rt2 = roots_at(left, 1.0)
    return ModifiedHalfLineIntermediates(
        sigma1=(1.0 - right.s) / right.s,
        sigma2=(1.0 - left.s) / left.s,
        alphaM=1.0 - bM.hold - bM.fwd * xi1**spec.M,
        v1=b0.fwd - (1.0 - b0.hold) * rt2.xi1,
        v2=b0.fwd - (1.0 - b0.hold) * rt2.xi2,
    )


def display_mhalfline_time(spec, i, variant="printed"):
    """Transcribed mean-time display for 0 <= i, barrier at M.

    variant "printed": the long formula as printed, unsubscripted p, q
    resolved as the left regime's, segment roots as the left regime's, and
    alpha_M carrying the printed exponent M on the right root.
    variant "alpha-inverse": same with alpha_M = 1 - r_M - p_M/xi1 and the
    matching (1 - 1/xi1) factor replacing (1 - xi1^M).
    variant "reduced-system": the two-coefficient solution of the reduced
    boundary pair (continuity at M eliminated analytically).
    """
    model.require_valid(spec)
    right, left = spec.right_regime, spec.left_regime
    b0, bM = spec.barrier0, spec.barrierM
    M = spec.M
    xi1 = roots_at(right, 1.0).xi1
    rt2 = roots_at(left, 1.0)
    e1, e2 = rt2.xi1, rt2.xi2
    sigma1 = (1.0 - right.s) / right.s
    sigma2 = (1.0 - left.s) / left.s
    v1 = b0.fwd - (1.0 - b0.hold) * e1
    v2 = b0.fwd - (1.0 - b0.hold) * e2

    if variant == "reduced-system":
        alpha = 1.0 - bM.hold - bM.fwd / xi1
        a11, a12 = -v1 / e1, -v2 / e2
        b1 = 1.0 - b0.absorb / left.s
        a21 = e1 ** (-M) * (alpha - bM.bwd * e1)
        a22 = e2 ** (-M) * (alpha - bM.bwd * e2)
        b2 = (
            1.0
            - bM.absorb / left.s
            + bM.fwd * (sigma1 - sigma2) * (1.0 - 1.0 / xi1)
        )
        det = a11 * a22 - a12 * a21
        a_2 = (b1 * a22 - a12 * b2) / det
        b_2 = (a11 * b2 - b1 * a21) / det

        def branch(j):
            return sigma2 + a_2 * e1 ** (-j) + b_2 * e2 ** (-j)

    else:
        if variant == "printed":
            alpha = 1.0 - bM.hold - bM.fwd * xi1**M
            relax = 1.0 - xi1**M
        elif variant == "alpha-inverse":
            alpha = 1.0 - bM.hold - bM.fwd / xi1
            relax = 1.0 - 1.0 / xi1
        else:
            raise ValueError(f"unknown variant {variant!r}")
        one_minus_r0 = b0.fwd + b0.absorb

        def branch(j):
            num = left.q * (1.0 - (1.0 + sigma2) * b0.absorb) * (
                left.q / left.p
            ) ** (j - 1) * (
                alpha * (e1 ** (j - M) - e2 ** (j - M))
                - bM.bwd * (e1 ** (j - M + 1) - e2 ** (j - M + 1))
            ) + left.q * (
                1.0
                - (1.0 + sigma2) * bM.absorb
                + bM.fwd * (sigma1 - sigma2) * relax
            ) * (v1 * e2 ** (1 - j) - v2 * e1 ** (1 - j))
            den = (
                left.p * one_minus_r0 * alpha * (e1 ** (-M) - e2 ** (-M))
                + left.q
                * (b0.fwd * alpha + one_minus_r0 * bM.bwd)
                * (e1 ** (1 - M) - e2 ** (1 - M))
                + left.q * b0.fwd * bM.bwd * (e1 ** (2 - M) - e2 ** (2 - M))
            )
            return sigma2 + num / den

    if i >= M:
        return sigma1 + (branch(M) - sigma1) * xi1 ** (M - i)
    assert i >= 0
    return branch(i)


@dataclass(frozen=True)
class ModifiedFullLineIntermediates:
    """tau factors of the full-line arrivals display."""

    tau: callable = field(repr=False, default=None)


def mfullline_intermediates(spec):
    pos, neg = spec.pos_regime, spec.neg_regime
    org = spec.origin
    rt1 = roots_at(pos, 1.0)
    eta1 = roots_at(neg, 1.0).xi1
    xis = (rt1.xi1, rt1.xi2)

    def tau(i, n):
        xi = xis[i - 1]
        return (
            1.0
            - org.hold
            - neg.p * org.bwd / (neg.q * eta1)
            - org.fwd / xi
        ) * xi**n

    return ModifiedFullLineIntermediates(tau=tau)


def display_mfullline_arrivals(spec, i0, n):
    """Four-case display for arrivals on the line, start i0 >= 0.

    The i0 = 0 start uses the simpler display with the same tau factor.
    """
    assert i0 >= 0
    pos, neg = spec.pos_regime, spec.neg_regime
    org = spec.origin
    rt1 = roots_at(pos, 1.0)
    eta1 = roots_at(neg, 1.0).xi1
    tau = mfullline_intermediates(spec).tau
    if i0 == 0:
        if n < 0:
            return org.bwd * eta1**n / (neg.q * tau(1, 0))
        if n == 0:
            return 1.0 / tau(1, 0)
        return org.fwd * rt1.xi2**n / (pos.p * tau(1, 0))
    if n < 0:
        return org.bwd * eta1**n / (neg.q * tau(1, i0))
    if n == 0:
        return 1.0 / tau(1, i0)
    if n <= i0:
        return (rt1.xi1 ** (n - i0) - tau(2, n) / tau(1, i0)) / rt1.lam
    return rt1.xi2 ** (n - i0) * (1.0 - tau(2, i0) / tau(1, i0)) / rt1.lam


def display_escape(spec, i0):
    """Escape/absorption display for the zero-interior-absorption case."""
    assert i0 >= 0
    pos, neg = spec.pos_regime, spec.neg_regime
    org = spec.origin
    if pos.p <= pos.q:
        raise UnsupportedCase("display covers p1 > q1 only")
    growth = (pos.p / pos.q) ** i0
    right_loss = org.fwd * (1.0 - pos.q / pos.p)
    if neg.p > neg.q:
        den = (org.absorb + right_loss) * growth
        p_absorb = org.absorb / den
        return p_absorb, 1.0 - org.absorb / den, 0.0
    if neg.p < neg.q:
        left_loss = org.bwd * (1.0 - neg.p / neg.q)
        den = (org.absorb + right_loss + left_loss) * growth
        return (
            org.absorb / den,
            1.0 - (org.absorb + left_loss) / den,
            left_loss / den,
        )
    raise UnsupportedCase("display covers p2 != q2 only")


def display_mfullline_time(spec, i, variant="printed"):
    """Two-branch mean-time display on the line.

    variant "printed": coefficients as printed. variant "corrected": the
    coefficients that solve the three-equation boundary system exactly.
    """
    model.require_valid(spec)
    pos, neg = spec.pos_regime, spec.neg_regime
    org = spec.origin
    xi1 = roots_at(pos, 1.0).xi1
    eta2 = roots_at(neg, 1.0).xi2
    sigma1 = (1.0 - pos.s) / pos.s
    sigma2 = (1.0 - neg.s) / neg.s
    den = (
        org.absorb
        + org.fwd * (1.0 - 1.0 / xi1)
        + org.bwd * (1.0 - eta2)
    )
    if variant == "printed":
        a = ((sigma2 - sigma1) * org.bwd * (1.0 - eta2) - sigma1 * org.absorb) / den
        b = ((sigma2 - sigma1) * org.fwd * (1.0 - 1.0 / xi1) - sigma2 * org.absorb) / den
    elif variant == "corrected":
        a = (
            1.0
            - org.absorb / pos.s
            + (sigma2 - sigma1) * org.bwd * (1.0 - eta2)
        ) / den
        b = (
            1.0
            - org.absorb / neg.s
            + (sigma1 - sigma2) * org.fwd * (1.0 - 1.0 / xi1)
        ) / den
    else:
        raise ValueError(f"unknown variant {variant!r}")
    if i >= 0:
        return sigma1 + a * xi1 ** (-i)
    return sigma2 + b * eta2 ** (-i)
