from __future__ import annotations

import random

import pytest

from enrwall.lattice_core import MukaiVector, default_surface, mukai_square, u_surface
from enrwall.hyperbolic_cones import LatticeError, build_sublattice, canonical_orientation


@pytest.fixture
def u_model():
    return u_surface(nodal=[(1, 1)])


@pytest.fixture
def u_model_unnodal():
    return u_surface()


@pytest.fixture
def full_model():
    return default_surface(nodal=[(1, 1, 0, 0, 0, 0, 0, 0, 0, 0)])


def random_vector(rng: random.Random, rho: int, span: int = 4) -> MukaiVector:
    r = rng.randint(-span, span)
    c1 = tuple(rng.randint(-span, span) for _ in range(rho))
    k = rng.randint(-span, span)
    return MukaiVector(r, c1, r + 2 * k)


def random_wall_instances(surface, count, rng, disc_bound=40, vsq_bound=20, span=3):
    """Generated (lattice, v, orientation) triples at desk scale."""
    out = []
    while len(out) < count:
        v = random_vector(rng, surface.rho, span)
        w = random_vector(rng, surface.rho, span)
        if v.is_zero() or w.is_zero():
            continue
        vsq = mukai_square(v, surface)
        if not (0 < vsq <= vsq_bound):
            continue
        try:
            lattice = build_sublattice(v, w, surface)
        except LatticeError:
            continue
        if abs(lattice.disc) > disc_bound:
            continue
        orient = canonical_orientation(lattice, v)
        out.append((lattice, v, orient))
    return out
