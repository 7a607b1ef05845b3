"""Characteristic roots, normalizer, degeneracy detection, z-derivatives."""

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from pqrswalk import (
    DegenerateRoots,
    discriminant,
    pqrs,
    root_derivatives,
    roots_at,
)

UNIFORM = pqrs(0.25, 0.25, 0.25, 0.25)
DRIFTY = pqrs(0.3, 0.25, 0.25, 0.2)
BACKWARD = pqrs(0.15, 0.35, 0.3, 0.2)

# Expected roots/derivatives frozen from numpy.roots and finite differences.
FROZEN = {
    UNIFORM: (2.618033988749895, 0.3819660112501052, 1.788854381999832,
              0.5590169943749475),
    DRIFTY: (2.52469507659596, 0.4753049234040401, 1.951800145897066,
             0.51234753829798),
    BACKWARD: (1.755928946018454, 0.2440710539815455, 1.889822365046136,
               0.5291502622129181),
}
FROZEN_DERIVS = {
    UNIFORM: (-4.683281572999747, 0.6832815729997476, 2.504396134799764),
    DRIFTY: (-4.9277002188456, 0.9277002188455993, 3.624771699523122),
    BACKWARD: (-3.318393793617565, 0.4612509364747076, 2.834733547569205),
}


@pytest.mark.parametrize("params", list(FROZEN), ids=["uniform", "drifty", "backward"])
def test_roots_match_frozen_values(params):
    rt = roots_at(params)
    xi1, xi2, zeta, lam = FROZEN[params]
    assert rt.xi1 == pytest.approx(xi1, rel=1e-14)
    assert rt.xi2 == pytest.approx(xi2, rel=1e-14)
    assert rt.zeta == pytest.approx(zeta, rel=1e-14)
    assert rt.lam == pytest.approx(lam, rel=1e-14)
    assert rt.z == 1.0


@pytest.mark.parametrize("params", list(FROZEN), ids=["uniform", "drifty", "backward"])
@pytest.mark.parametrize("z", [1.0, 0.9, 0.5, 0.1])
def test_roots_agree_with_numpy_roots(params, z):
    p, q, r, s = params.as_tuple()
    rt = roots_at(params, z)
    expected = sorted(np.roots([q * z, -(1.0 - r * z), p * z]), reverse=True)
    assert rt.xi1 == pytest.approx(expected[0], rel=1e-12)
    assert rt.xi2 == pytest.approx(expected[1], rel=1e-12)


def test_roots_at_interior_z_frozen():
    rt = roots_at(UNIFORM, 0.8)
    assert rt.xi1 == pytest.approx(3.732050807568877, rel=1e-14)
    assert rt.xi2 == pytest.approx(0.2679491924311227, rel=1e-14)
    assert rt.zeta == pytest.approx(1.0 / np.sqrt(discriminant(UNIFORM, 0.8)),
                                    rel=1e-14)


@pytest.mark.parametrize("params", list(FROZEN), ids=["uniform", "drifty", "backward"])
def test_derivatives_match_frozen_and_finite_differences(params):
    dv = root_derivatives(params)
    frozen = FROZEN_DERIVS[params]
    assert dv.dxi1 == pytest.approx(frozen[0], rel=1e-12)
    assert dv.dxi2 == pytest.approx(frozen[1], rel=1e-12)
    assert dv.dzeta == pytest.approx(frozen[2], rel=1e-12)

    h = 1e-5
    for got, pick in ((dv.dxi1, lambda rt: rt.xi1),
                      (dv.dxi2, lambda rt: rt.xi2),
                      (dv.dzeta, lambda rt: rt.zeta)):
        stencil = (3.0 * pick(roots_at(params, 1.0))
                   - 4.0 * pick(roots_at(params, 1.0 - h))
                   + pick(roots_at(params, 1.0 - 2.0 * h))) / (2.0 * h)
        assert got == pytest.approx(stencil, rel=1e-6)


@pytest.mark.parametrize(
    "params",
    [pqrs(0.5, 0.5, 0.0, 0.0), pqrs(0.25, 0.25, 0.5, 0.0)],
    ids=["simple-symmetric", "holding-symmetric"],
)
def test_degenerate_roots_raise(params):
    assert discriminant(params) == pytest.approx(0.0, abs=1e-15)
    with pytest.raises(DegenerateRoots) as info:
        roots_at(params)
    assert info.value.discriminant == pytest.approx(0.0, abs=1e-14)


def test_near_degenerate_is_still_accepted():
    # with s = 0 and p > q the roots are exactly p/q and 1
    p, q = 0.5 + 1e-6, 0.5 - 1e-6
    rt = roots_at(pqrs(p, q, 0.0, 0.0))
    assert rt.xi1 == pytest.approx(p / q, rel=1e-9)
    assert rt.xi2 == pytest.approx(1.0, rel=1e-9)


components = st.lists(
    st.floats(min_value=0.02, max_value=1.0, allow_nan=False), min_size=4, max_size=4
)


@given(components)
def test_root_identities_hold_for_random_parameters(raw):
    total = sum(raw)
    p, q, r, s = (w / total for w in raw)
    params = pqrs(p, q, r, s)
    assume(discriminant(params) > 1e-8)
    rt = roots_at(params)
    # product and sum of the roots (Vieta), both roots solve the quadratic
    assert rt.xi1 * rt.xi2 == pytest.approx(p / q, rel=1e-9)
    assert rt.xi1 + rt.xi2 == pytest.approx((1.0 - r) / q, rel=1e-9)
    for xi in (rt.xi1, rt.xi2):
        assert q * xi * xi - (1.0 - r) * xi + p == pytest.approx(0.0, abs=1e-12)
    assert rt.zeta * rt.lam == pytest.approx(1.0, rel=1e-12)
    assert rt.zeta == pytest.approx(discriminant(params) ** -0.5, rel=1e-12)
