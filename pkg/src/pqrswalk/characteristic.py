"""Characteristic roots of the walk's generating-function recurrence.

The occupancy generating functions satisfy X_n = pz X_{n-1} + qz X_{n+1}
+ rz X_n away from boundaries, so the geometric basis is built from the
roots of qz xi^2 - (1 - rz) xi + pz = 0.
"""

import math
from dataclasses import dataclass

from .errors import DegenerateRoots

DEGENERACY_THRESHOLD = 1e-14


@dataclass(frozen=True)
class CharacteristicRoots:
    """Roots and normalizer at evaluation point z.

    xi1 >= xi2 are the two roots; zeta = [(1-rz)^2 - 4pq z^2]^{-1/2};
    lam = sqrt((1-r)^2 - 4pq) is the z=1 discriminant root (lam = 1/zeta
    at z = 1).
    """

    xi1: float
    xi2: float
    zeta: float
    lam: float
    z: float


@dataclass(frozen=True)
class RootDerivatives:
    """d(xi1)/dz, d(xi2)/dz and d(zeta)/dz at z = 1."""

    dxi1: float
    dxi2: float
    dzeta: float


def discriminant(params, z=1.0):
    return (1.0 - params.r * z) ** 2 - 4.0 * params.p * params.q * z * z


def roots_at(params, z=1.0):
    """Both characteristic roots, the zeta normalizer, and lambda.

    Solved in the cancellation-free form: the quadratic's linear
    coefficient (1 - rz) is positive throughout (0, 1], so the larger root
    comes from the '+' branch and the smaller one from the Vieta product
    pz/(qz) = p/q.
    """
    p, q, r, _ = params.as_tuple()
    assert q > 0, "characteristic roots need q > 0"
    assert 0.0 < z <= 1.0, "z restricted to (0, 1]"
    disc = discriminant(params, z)
    if disc < DEGENERACY_THRESHOLD:
        raise DegenerateRoots(disc)
    root = math.sqrt(disc)
    xi1 = ((1.0 - r * z) + root) / (2.0 * q * z)
    xi2 = p / (q * xi1)
    zeta = 1.0 / root
    disc1 = discriminant(params, 1.0)
    lam = math.sqrt(disc1) if disc1 > 0.0 else 0.0
    return CharacteristicRoots(xi1=xi1, xi2=xi2, zeta=zeta, lam=lam, z=z)


def root_derivatives(params):
    """z-derivatives at z = 1: dxi_i = (-1)^i zeta1 xi_i and
    dzeta = zeta1^3 [r(1-r) + 4pq]."""
    rt = roots_at(params, 1.0)
    p, q, r, _ = params.as_tuple()
    dzeta = rt.zeta**3 * (r * (1.0 - r) + 4.0 * p * q)
    return RootDerivatives(
        dxi1=-rt.zeta * rt.xi1, dxi2=rt.zeta * rt.xi2, dzeta=dzeta
    )
