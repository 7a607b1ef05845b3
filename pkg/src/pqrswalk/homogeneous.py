"""Closed forms for plain [pqrs] walks.

Expected arrivals (occupancy epochs), arrival probabilities, absorption
probabilities, expected and defective absorption times, and n-step
displacement probabilities, on [0, N], [0, inf) and the full line.

Formulas are evaluated in normalized form: everything is written in powers
of rho = xi2/xi1 <= 1 and in root powers with bounded exponents, so values
stay finite for N up to 10^6.
"""

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import model
from .characteristic import root_derivatives, roots_at
from .errors import ConsistencyError, UnsupportedCase


@dataclass(frozen=True)
class BoundaryFactors:
    """Barrier couplings v_i = p0 - (1-r0) xi_i and w_i = qN - (1-rN)/xi_i."""

    v1: float
    v2: float
    w1: float
    w2: float


def boundary_factors(rt, left=None, right=None):
    v1 = v2 = w1 = w2 = float("nan")
    if left is not None:
        one_minus_r0 = left.fwd + left.absorb  # 1 - r0 with bwd = 0
        v1 = left.fwd - one_minus_r0 * rt.xi1
        v2 = left.fwd - one_minus_r0 * rt.xi2
    if right is not None:
        one_minus_rN = right.bwd + right.absorb  # 1 - rN with fwd = 0
        w1 = right.bwd - one_minus_rN / rt.xi1
        w2 = right.bwd - one_minus_rN / rt.xi2
    return BoundaryFactors(v1=v1, v2=v2, w1=w1, w2=w2)


@dataclass
class ArrivalProfile:
    """Expected occupancy epochs per state, from a fixed start.

    `values` caches computed states; profiles on infinite domains evaluate
    lazily through `at`.
    """

    start: int
    domain: str  # "finite" | "halfline" | "fullline"
    values: dict = field(default_factory=dict)
    _evaluate: callable = None

    def at(self, n):
        if n not in self.values:
            assert self._evaluate is not None, f"state {n} outside computed range"
            self.values[n] = self._evaluate(n)
        return self.values[n]

    def window(self, lo, hi):
        return {n: self.at(n) for n in range(lo, hi + 1)}


@dataclass(frozen=True)
class AbsorptionSummary:
    """Absorption probabilities by site, mean time, optional defective times."""

    start: int
    probabilities: dict
    mean_time: float
    defective: dict = None


@dataclass(frozen=True)
class StepDistribution:
    """Displacement distribution after n steps; mass absorbed so far."""

    n: int
    probs: dict
    absorbed: float

    def survival(self):
        return 1.0 - self.absorbed


def _finite_parts(spec):
    model.require_valid(spec)
    it = spec.interior
    assert it.p > 0 and it.q > 0, "finite closed forms need interior p, q > 0"
    rt = roots_at(it, 1.0)
    bf = boundary_factors(rt, left=spec.left, right=spec.right)
    rho = rt.xi2 / rt.xi1
    # common denominator, normalized by xi1^(N-2)
    den = rho ** (spec.N - 2) * bf.v2 * bf.w1 - bf.v1 * bf.w2
    return rt, bf, rho, den


def _finite_value(spec, rt, bf, rho, den, i0, n):
    N = spec.N
    if n == 0:
        return rt.xi1 ** (1 - i0) * (bf.w2 - rho ** (N - 1 - i0) * bf.w1) / den
    if n == N:
        return (
            rt.xi2 ** (N - 1 - i0)
            * (bf.v1 - rho ** (i0 - 1) * bf.v2)
            / den
        )
    if n <= i0:
        return (
            rt.zeta
            * rt.xi1 ** (n - i0)
            * (rho ** (N - 1 - i0) * bf.w1 - bf.w2)
            * (bf.v1 - rho ** (n - 1) * bf.v2)
            / den
        )
    return (
        rt.zeta
        * rt.xi2 ** (n - i0)
        * (rho ** (N - 1 - n) * bf.w1 - bf.w2)
        * (bf.v1 - rho ** (i0 - 1) * bf.v2)
        / den
    )


def finite_arrivals(spec, i0):
    """Expected arrivals x_0..x_N on [0, N] from start i0 (closed form)."""
    assert 0 <= i0 <= spec.N
    rt, bf, rho, den = _finite_parts(spec)
    values = {
        n: _finite_value(spec, rt, bf, rho, den, i0, n) for n in range(spec.N + 1)
    }
    return ArrivalProfile(start=i0, domain="finite", values=values)


def finite_arrival_probability(spec, i, j):
    """Probability of ever occupying j from i on [0, N]."""
    assert 0 <= i <= spec.N and 0 <= j <= spec.N
    rt, bf, rho, den = _finite_parts(spec)
    N = spec.N
    if i < j:
        return (
            rt.xi2 ** (j - i)
            * (bf.v1 - rho ** (i - 1) * bf.v2)
            / (bf.v1 - rho ** (j - 1) * bf.v2)
        )
    if j < i:
        return (
            rt.xi1 ** (j - i)
            * (rho ** (N - 1 - i) * bf.w1 - bf.w2)
            / (rho ** (N - 1 - j) * bf.w1 - bf.w2)
        )
    x_ii = _finite_value(spec, rt, bf, rho, den, i, i)
    return 1.0 - 1.0 / x_ii


def finite_absorption(spec, i0):
    """Absorption probabilities s_j x_j and mean time before absorption."""
    profile = finite_arrivals(spec, i0)
    probabilities = {}
    for n, x in profile.values.items():
        s_n = model.step_probs(spec, n)[3]
        probabilities[n] = s_n * x
    s = spec.interior.s
    if s <= 0:
        raise UnsupportedCase("mean absorption time needs interior s > 0")
    rt, bf, rho, _ = _finite_parts(spec)
    N = spec.N
    sigma = (1.0 - s) / s
    c0 = 1.0 - spec.left.absorb / s
    cN = 1.0 - spec.right.absorb / s
    den = bf.v1 * bf.w2 - rho ** (N - 2) * bf.v2 * bf.w1
    num = c0 * rt.xi1 ** (1 - i0) * (
        rho ** (N - 1 - i0) * bf.w1 - bf.w2
    ) - cN * rt.xi2 ** (N - 1 - i0) * (bf.v1 - rho ** (i0 - 1) * bf.v2)
    return AbsorptionSummary(
        start=i0, probabilities=probabilities, mean_time=sigma + num / den
    )


def _halfline_parts(spec):
    model.require_valid(spec)
    rt = roots_at(spec.interior, 1.0)
    bf = boundary_factors(rt, left=spec.left)
    return rt, bf, rt.xi2 / rt.xi1


def _halfline_value(rt, bf, rho, i0, n):
    if n == 0:
        return -rt.xi1 ** (1 - i0) / bf.v1
    if n <= i0:
        return (
            rt.zeta
            * rt.xi1 ** (n - i0)
            * (bf.v1 - rho ** (n - 1) * bf.v2)
            / bf.v1
        )
    return (
        rt.zeta
        * rt.xi2 ** (n - i0)
        * (bf.v1 - rho ** (i0 - 1) * bf.v2)
        / bf.v1
    )


def halfline_arrivals(spec, i0):
    """Expected arrivals on [0, inf) from i0; lazy profile."""
    assert i0 >= 0
    rt, bf, rho = _halfline_parts(spec)
    return ArrivalProfile(
        start=i0,
        domain="halfline",
        _evaluate=lambda n: _halfline_value(rt, bf, rho, i0, n),
    )


def halfline_arrival_probability(spec, i, j):
    """Probability of ever occupying j from i on [0, inf)."""
    assert i >= 0 and j >= 0
    rt, bf, rho = _halfline_parts(spec)
    if j < i:
        return rt.xi1 ** (j - i)
    if i < j:
        return (
            rt.xi2 ** (j - i)
            * (bf.v1 - rho ** (i - 1) * bf.v2)
            / (bf.v1 - rho ** (j - 1) * bf.v2)
        )
    return 1.0 - 1.0 / _halfline_value(rt, bf, rho, i, i)


def halfline_absorption_time(spec, i):
    """Mean time before absorption from i on [0, inf)."""
    assert i >= 0
    rt, bf, _ = _halfline_parts(spec)
    s = spec.interior.s
    sigma = (1.0 - s) / s
    return sigma - (1.0 - spec.left.absorb / s) * rt.xi1 ** (1 - i) / bf.v1


def _halfline_pgf_parts(spec, z):
    rt = roots_at(spec.interior, z)
    p0 = spec.left.fwd
    r0 = spec.left.hold
    tv1 = p0 * z - (1.0 - r0 * z) * rt.xi1
    tv2 = p0 * z - (1.0 - r0 * z) * rt.xi2
    return rt, tv1, tv2


def _halfline_pgf(spec, i, j, z):
    rt, tv1, tv2 = _halfline_pgf_parts(spec, z)
    if j == 0:
        return -rt.xi1 ** (1 - i) / tv1
    lead = rt.xi1 ** (j - i) if j <= i else rt.xi2 ** (j - i)
    cross = rt.xi1 ** (1 - i) * rt.xi2 ** (j - 1)
    return rt.zeta * (lead - cross * tv2 / tv1)


def halfline_defective_time(spec, i, j):
    """Defective expectation E[T; absorbed at j] from start i on [0, inf).

    Computed as s_j times the z-derivative at 1 of the occupancy generating
    function X_ij(z), differentiated analytically in log-derivative form so
    every term stays bounded for all i, j.
    """
    assert i >= 0 and j >= 0
    model.require_valid(spec)
    it = spec.interior
    rt = roots_at(it, 1.0)
    dv = root_derivatives(it)
    p0, r0 = spec.left.fwd, spec.left.hold
    tv1 = p0 - (1.0 - r0) * rt.xi1
    tv2 = p0 - (1.0 - r0) * rt.xi2
    dtv1 = p0 + r0 * rt.xi1 - (1.0 - r0) * dv.dxi1
    dtv2 = p0 + r0 * rt.xi2 - (1.0 - r0) * dv.dxi2
    if j == 0:
        power = rt.xi1 ** (1 - i)
        dpower = (1 - i) * power * (dv.dxi1 / rt.xi1)
        dx = -dpower / tv1 + power * dtv1 / tv1**2
        return spec.left.absorb * dx
    if j <= i:
        lead = rt.xi1 ** (j - i)
        dlead = (j - i) * lead * (dv.dxi1 / rt.xi1)
    else:
        lead = rt.xi2 ** (j - i)
        dlead = (j - i) * lead * (dv.dxi2 / rt.xi2)
    cross = rt.xi1 ** (1 - i) * rt.xi2 ** (j - 1)
    dcross = cross * ((1 - i) * dv.dxi1 / rt.xi1 + (j - 1) * dv.dxi2 / rt.xi2)
    ratio = tv2 / tv1
    dratio = (dtv2 * tv1 - tv2 * dtv1) / tv1**2
    body = lead - cross * ratio
    dbody = dlead - dcross * ratio - cross * dratio
    dx = dv.dzeta * body + rt.zeta * dbody
    return it.s * dx


def _fullline_roots(spec):
    model.require_valid(spec)
    return roots_at(spec.interior, 1.0)


def fullline_arrivals(spec, i0, n):
    """Expected arrivals in n from i0 on the full line."""
    rt = _fullline_roots(spec)
    if n <= i0:
        return rt.zeta * rt.xi1 ** (n - i0)
    return rt.zeta * rt.xi2 ** (n - i0)


def fullline_arrival_probability(spec, i, j):
    """Probability of ever occupying j from i on the full line."""
    rt = _fullline_roots(spec)
    if j < i:
        return rt.xi1 ** (j - i)
    if j > i:
        return rt.xi2 ** (j - i)
    return fullline_return(spec)


def fullline_return(spec):
    """Return probability f_ii = 1 - lambda."""
    rt = _fullline_roots(spec)
    return 1.0 - rt.lam


def fullline_absorption(spec):
    """Mean time before absorption (position-independent): (1-s)/s."""
    model.require_valid(spec)
    s = spec.interior.s
    return (1.0 - s) / s


def fullline_defective_time(spec, j):
    """Defective expectation E[T; absorbed at displacement j from start]."""
    rt = _fullline_roots(spec)
    it = spec.interior
    kappa = it.r * (1.0 - it.r) + 4.0 * it.p * it.q
    if j <= 0:
        return it.s * rt.zeta**2 * rt.xi1**j * (rt.zeta * kappa - j)
    return it.s * rt.zeta**2 * rt.xi2**j * (rt.zeta * kappa + j)


def pgf_evaluate(spec, i, j, z):
    """Occupancy generating function X_ij(z) = sum_k p_ij^(k) z^k."""
    assert 0.0 < z <= 1.0
    if isinstance(spec, model.HalfLineWalkSpec):
        assert i >= 0 and j >= 0
        return _halfline_pgf(spec, i, j, z)
    if isinstance(spec, model.FullLineWalkSpec):
        rt = roots_at(spec.interior, z)
        power = rt.xi1 ** (j - i) if j <= i else rt.xi2 ** (j - i)
        return rt.zeta * power
    raise TypeError("pgf_evaluate covers half-line and full-line specs")


def nstep_combinatorial(params, k, n, exact=False):
    """n-step displacement probability via the multinomial path count.

    Sums over the number of holds n_r (same parity as n - k):
    C(n, n_r) C(n - n_r, n_p) p^n_p q^n_q r^n_r with n_p - n_q = k.
    With exact=True the sum is done in rational arithmetic.
    """
    assert n >= 0
    if abs(k) > n:
        return 0.0
    p, q, r, _ = params.as_tuple()
    if exact:
        p, q, r = Fraction(p), Fraction(q), Fraction(r)
    total = 0 * p
    for n_r in range((n - k) % 2, n - abs(k) + 1, 2):
        n_p = (n + k - n_r) // 2
        n_q = (n - k - n_r) // 2
        coef = math.comb(n, n_r) * math.comb(n - n_r, n_p)
        total += coef * p**n_p * q**n_q * r**n_r
    return total if exact else float(total)


def nstep_pgf(params, k, n):
    """n-step displacement probability via characteristic-function roots.

    Uses the roots z_{1,2} of p z^2 + r z + q (complex conjugates when
    r^2 < 4pq); the imaginary part of the assembled sum must cancel.
    """
    assert n >= 0
    if abs(k) > n:
        return 0.0
    p, q, r, _ = params.as_tuple()
    if not (p > 0 and q > 0):
        raise ValueError("root form needs p > 0 and q > 0")
    root = cmath.sqrt(r * r - 4.0 * p * q)
    z1 = (-r + root) / (2.0 * p)
    z2 = (-r - root) / (2.0 * p)
    ratio = z2 / z1
    total = 0j
    for m in range(max(0, k), min(n, n + k) + 1):
        total += math.comb(n, m) * math.comb(n, m - k) * ratio**m
    value = q**n * (-z2) ** (-(k + n)) * total
    if abs(value.imag) > 1e-10:
        raise ConsistencyError(
            f"imaginary residual {value.imag!r} in n-step root form"
        )
    return value.real
