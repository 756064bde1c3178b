from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from enrwall.lattice_core import (
    LatticeError,
    MukaiVector,
    ParityClass,
    SurfaceModel,
    default_surface,
    det_parities,
    ell,
    extended_gram,
    from_coords,
    is_primitive,
    mukai_pair,
    mukai_square,
    signature,
    to_coords,
    u_surface,
)


def mv(r, c1, s):
    return MukaiVector(r, tuple(c1), s)


# ---------------------------------------------------------------------------
# pairing


def test_structure_sheaf_class_squares_to_minus_one(u_model):
    v = mv(1, (0, 0), 1)  # (1, 0, 1/2)
    assert mukai_square(v, u_model) == -1


def test_point_class_is_isotropic(u_model):
    assert mukai_square(mv(0, (0, 0), 2), u_model) == 0


def test_rank_one_against_point_class(u_model):
    # <(1,0,1/2-n),(0,0,1)> = -1 for every n
    for n in range(5):
        a = mv(1, (0, 0), 1 - 2 * n)
        assert mukai_pair(a, mv(0, (0, 0), 2), u_model) == -1


def _oracle_pair(a, b, surface):
    """Independent evaluation through the explicit extended Gram matrix."""
    g = extended_gram(surface)
    x, y = to_coords(a), to_coords(b)
    return sum(x[i] * g[i][j] * y[j] for i in range(len(x)) for j in range(len(y)))


def test_pairing_agrees_with_extended_gram_product(full_model):
    rng = random.Random(7)
    from conftest import random_vector

    for _ in range(200):
        a = random_vector(rng, full_model.rho)
        b = random_vector(rng, full_model.rho)
        assert mukai_pair(a, b, full_model) == _oracle_pair(a, b, full_model)


@settings(max_examples=200)
@given(
    data=st.tuples(
        st.integers(-30, 30),
        st.integers(-30, 30),
        st.integers(-30, 30),
        st.integers(-30, 30),
        st.integers(-30, 30),
        st.integers(-30, 30),
        st.integers(-30, 30),
        st.integers(-30, 30),
        st.integers(-30, 30),
    )
)
def test_pairing_symmetric_and_bilinear(data):
    surface = u_surface()
    r1, a1, b1, k1, r2, a2, b2, k2, lam = data
    x = mv(r1, (a1, b1), r1 + 2 * k1)
    y = mv(r2, (a2, b2), r2 + 2 * k2)
    assert mukai_pair(x, y, surface) == mukai_pair(y, x, surface)
    z = mv(0, (1, 0), 2)
    lhs = mukai_pair(x + lam * z, y, surface)
    assert lhs == mukai_pair(x, y, surface) + lam * mukai_pair(z, y, surface)


def test_pairing_dimension_mismatch(u_model, full_model):
    a = mv(1, (0, 0), 1)
    b = mv(1, tuple([0] * 10), 1)
    with pytest.raises(LatticeError):
        mukai_pair(a, b, full_model)


def test_extended_gram_signature(u_model, full_model):
    for surface in (u_model, full_model):
        pos, neg, zero = signature(extended_gram(surface))
        assert (pos, neg, zero) == (2, surface.rho, 0)


# ---------------------------------------------------------------------------
# primitivity and covering divisibility


def test_primitivity_examples():
    assert is_primitive(mv(1, (0, 0), -1))
    assert not is_primitive(mv(2, (0, 0), -2))
    assert is_primitive(mv(0, (0, 0), 2))


def test_zero_vector_has_no_primitivity():
    with pytest.raises(LatticeError):
        is_primitive(mv(0, (0, 0), 0))


def test_ell_examples():
    assert ell(mv(0, (0, 0), 2)) == 2
    assert ell(mv(1, (0, 0), -1)) == 1
    with pytest.raises(LatticeError):
        ell(mv(2, (2, 0), 2))  # gcd(2, (2,0), 2) = 2: not primitive


def test_ell_oracle_is_plain_gcd():
    from math import gcd

    rng = random.Random(3)
    from conftest import random_vector

    hits = 0
    while hits < 50:
        v = random_vector(rng, 2)
        if v.is_zero() or not is_primitive(v):
            continue
        hits += 1
        expect = gcd(gcd(v.r, v.s), *v.c1)
        assert ell(v) == expect
        if expect == 2:
            assert (v.r + v.s) % 4 == 2
            assert all(a % 2 == 0 for a in v.c1)
        else:
            assert v.r % 2 == 1 or any(a % 2 == 1 for a in v.c1)


# ---------------------------------------------------------------------------
# parities


def test_det_parities_examples():
    p0, p1 = det_parities(mv(2, (0, 0), -2))
    assert p0 == ParityClass((0, 0), 0)
    assert p1 == ParityClass((0, 0), 1)
    q0, q1 = det_parities(mv(1, (1, 0), 1))
    assert q0.eps == (1, 0) and q1.eps == (1, 0)
    assert (q0.kappa, q1.kappa) == (0, 1)


def test_det_parities_differ_exactly_in_kappa():
    rng = random.Random(11)
    from conftest import random_vector

    for _ in range(50):
        v = random_vector(rng, 2)
        p0, p1 = det_parities(v)
        assert p0.eps == p1.eps
        assert p0.kappa != p1.kappa


# ---------------------------------------------------------------------------
# surface model validation and serialization


def test_default_surface_shape(full_model):
    assert full_model.rho == 10
    assert signature(full_model.gram) == (1, 9, 0)


def test_surface_rejects_bad_grams():
    with pytest.raises(LatticeError):
        SurfaceModel(gram=((0, 1), (2, 0)), nodal=frozenset())
    with pytest.raises(LatticeError):
        SurfaceModel(gram=((1, 0), (0, -1)), nodal=frozenset())  # odd diagonal
    with pytest.raises(LatticeError):
        SurfaceModel(gram=((0, 2), (2, 0)), nodal=frozenset())  # det -4
    with pytest.raises(LatticeError):
        SurfaceModel(gram=((2, 1), (1, 2)), nodal=frozenset())  # definite


def test_surface_json_round_trip(u_model, tmp_path):
    doc = u_model.to_json()
    back = SurfaceModel.from_json(doc)
    assert back == u_model
    path = tmp_path / "surface.json"
    import json

    path.write_text(json.dumps(doc))
    assert SurfaceModel.from_path(path) == u_model


def test_vector_json_round_trip():
    v = mv(3, (1, -2), -5)
    doc = v.to_json()
    assert doc["s2"] == "-5/2"
    assert MukaiVector.from_json(doc) == v


def test_vector_parity_enforced():
    with pytest.raises(LatticeError):
        mv(1, (0, 0), 0)


def test_coords_round_trip():
    rng = random.Random(5)
    from conftest import random_vector

    for _ in range(50):
        v = random_vector(rng, 2)
        assert from_coords(to_coords(v), 2) == v
