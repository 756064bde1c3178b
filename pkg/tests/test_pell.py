from __future__ import annotations

from fractions import Fraction
from math import isqrt

import pytest

from enrwall.lattice_core import LatticeError, MukaiVector, mukai_pair, mukai_square, u_surface
from enrwall.pell import (
    PellSolution,
    _Surd,
    compose,
    is_square,
    mixed_sequence,
    pell_fundamental,
    root_sequence,
)
from enrwall.weyl import reflect_root


def brute_pell(D: int, N: int, y_max: int):
    """Oracle: exhaustive search over y."""
    for y in range(1, y_max + 1):
        t = N + D * y * y
        if t >= 0 and isqrt(t) ** 2 == t:
            return (isqrt(t), y)
    return None


def test_fundamental_d3_matches_brute_force():
    assert brute_pell(3, 1, 10**4) == (2, 1)
    sol = pell_fundamental(3, 1)
    assert (sol.x, sol.y) == (2, 1)


def test_fundamental_n2_d2_matches_brute_force():
    assert brute_pell(2, 2, 10**4) == (2, 1)
    sol = pell_fundamental(2, 2)
    assert (sol.x, sol.y) == (2, 1)


def test_square_discriminant_rejected():
    with pytest.raises(LatticeError):
        pell_fundamental(4, 1)
    with pytest.raises(LatticeError):
        pell_fundamental(0, 1)


def test_insoluble_n2_returns_none():
    assert pell_fundamental(3, 2) is None  # x^2 = 2 mod 3 has no solution


def test_fundamental_matches_brute_force_small_d():
    for D in range(2, 50):
        if is_square(D):
            continue
        sol = pell_fundamental(D, 1)
        expect = brute_pell(D, 1, max(sol.y + 1, 10))
        assert (sol.x, sol.y) == expect
        sol2 = pell_fundamental(D, 2)
        expect2 = brute_pell(D, 2, sol.y + 2)
        if sol2 is None:
            assert expect2 is None
        else:
            assert (sol2.x, sol2.y) == expect2


def test_group_law_composition():
    for D in (2, 3, 7, 13):
        base = pell_fundamental(D, 1)
        cur = base
        for _ in range(3):
            cur = compose(cur, base)
            assert cur.N == 1  # PellSolution validates the equation exactly


def test_solution_invariant_enforced():
    with pytest.raises(LatticeError):
        PellSolution(3, 1, 5, 1)


# ---------------------------------------------------------------------------
# root sequences


def _basis_d3(surface):
    w0 = MukaiVector(1, (0, 0), 1)
    z = MukaiVector(1, (1, 1), -1)  # z^2 = 3, orthogonal to w0
    assert mukai_pair(w0, z, surface) == 0
    assert mukai_square(z, surface) == 3
    return w0, z


def test_root_sequence_middle_term_is_w0():
    surface = u_surface()
    w0, z = _basis_d3(surface)
    seq = root_sequence(w0, z, surface, 2)
    assert seq[2] == w0


def test_root_sequence_squares_and_brute_force_match():
    surface = u_surface()
    w0, z = _basis_d3(surface)
    seq = root_sequence(w0, z, surface, 3)
    assert len(seq) == 7
    coords = set()
    for w in seq:
        assert mukai_square(w, surface) == -1
        # recover (p, q) with w = p*w0 + q*z
        p = w.r - Fraction(w.r + w.s, 0 + 2) + 0  # placeholder, replaced below
    # oracle: p^2 - 3 q^2 = 1 enumerated within a box must reproduce the
    # sequence members falling in the box
    brute = set()
    for p in range(-50, 51):
        for q in range(-50, 51):
            if p * p - 3 * q * q == 1:
                brute.add((p, q))
    got = set()
    for w in seq:
        # w = p*w0 + q*z with w0=(1,0,0;1), z=(1,(1,1),-1): q = c1[0], p = r - q
        q = w.c1[0]
        p = w.r - q
        got.add((p, q))
        assert p * p - 3 * q * q == 1
    assert got <= brute


def test_root_sequence_reflection_recursion():
    surface = u_surface()
    w0, z = _basis_d3(surface)
    seq = root_sequence(w0, z, surface, 4)
    mid = 4
    for n in range(2, 4):
        w_prev, w_cur, w_next = seq[mid + n - 1], seq[mid + n], seq[mid + n + 1]
        assert w_next == -reflect_root(w_prev, w_cur, surface)


def test_root_sequence_precondition_errors():
    surface = u_surface()
    w0, z = _basis_d3(surface)
    with pytest.raises(LatticeError):
        root_sequence(z, w0, surface, 1)  # z^2 != -1
    bad_z = MukaiVector(0, (1, 0), 0)  # isotropic
    with pytest.raises(LatticeError):
        root_sequence(w0, bad_z, surface, 1)


# ---------------------------------------------------------------------------
# mixed sequences


def _basis_d2(surface):
    w0 = MukaiVector(1, (0, 0), 1)
    z = MukaiVector(0, (1, 1), 0)  # z^2 = 2
    return w0, z


def test_mixed_sequence_center_and_parities():
    surface = u_surface(nodal=[(1, 1)])
    w0, z = _basis_d2(surface)
    seq = mixed_sequence(w0, z, surface, 3)
    assert seq[3][0] == w0 and seq[3][1] == -1
    for n, (w, sq) in zip(range(-3, 4), seq):
        expected = -1 if n % 2 == 0 else -2
        assert sq == expected
        assert mukai_square(w, surface) == expected  # direct squaring oracle


def test_mixed_sequence_insoluble_errors():
    surface = u_surface()
    w0 = MukaiVector(1, (0, 0), 1)
    z = MukaiVector(1, (1, 1), -1)  # z^2 = 3; x^2-3y^2=2 insoluble
    with pytest.raises(LatticeError):
        mixed_sequence(w0, z, surface, 1)


def test_mixed_sequence_conjugation_relation():
    """Every norm-2 element of the odd subsequence is +-alpha^(2n+1)/2^n."""
    surface = u_surface(nodal=[(1, 1)])
    w0, z = _basis_d2(surface)
    seq = mixed_sequence(w0, z, surface, 5)
    D = 2
    sol2 = pell_fundamental(D, 2)
    alpha = _Surd(-sol2.x, sol2.y, D)
    # collect all odd-index coefficients as exact surds
    odd = []
    for n, (w, sq) in zip(range(-5, 6), seq):
        if n % 2 != 0:
            q = Fraction(w.c1[0])
            s = Fraction(w.r)
            odd.append(_Surd(s, q, D))
    for gamma in odd:
        assert gamma.norm() == 2
        ok = False
        for n in range(-6, 7):
            if n >= 0:
                val = alpha ** (2 * n + 1) / 2**n
            else:
                val = alpha ** (2 * n + 1) * 2 ** (-n)
            for sign in (1, -1):
                if (val.x * sign, val.y * sign) == (gamma.x, gamma.y):
                    ok = True
        assert ok, (gamma.x, gamma.y)


def test_mixed_sequence_recursion():
    surface = u_surface(nodal=[(1, 1)])
    w0, z = _basis_d2(surface)
    seq = [w for w, _sq in mixed_sequence(w0, z, surface, 4)]
    mid = 4
    assert seq[mid + 2] == reflect_root(seq[mid], seq[mid + 1], surface)
    assert seq[mid - 1] == reflect_root(seq[mid + 1], seq[mid], surface)
    for n in range(2, 4):
        assert seq[mid + n + 1] == -reflect_root(seq[mid + n - 1], seq[mid + n], surface)
