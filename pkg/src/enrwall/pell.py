"""Pell equations x^2 - D y^2 = 1, 2 and the root sequences they generate in
rank-2 hyperbolic lattices.

All arithmetic is exact.  Fundamental solutions for N=1 come from the
continued-fraction expansion of sqrt(D); the N=2 equation, when soluble, has
its minimal solution (a, b) locked to the N=1 fundamental (x1, y1) by
(a + b*sqrt(D))^2 = 2*(x1 + y1*sqrt(D)), which bounds b <= y1/2 and makes a
direct bounded search complete.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .lattice_core import LatticeError, MukaiVector, SurfaceModel, mukai_pair, mukai_square


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


@dataclass(frozen=True)
class PellSolution:
    x: int
    y: int
    D: int
    N: int

    def __post_init__(self):
        if self.x * self.x - self.D * self.y * self.y != self.N:
            raise LatticeError(f"not a solution of x^2-{self.D}y^2={self.N}: {self}")


def compose(a: PellSolution, b: PellSolution) -> PellSolution:
    """Brahmagupta composition; norms multiply."""
    if a.D != b.D:
        raise LatticeError("cannot compose solutions for different D")
    return PellSolution(a.x * b.x + a.D * a.y * b.y, a.x * b.y + a.y * b.x, a.D, a.N * b.N)


def _cf_fundamental(D: int) -> tuple[int, int]:
    """Minimal (x, y), x, y > 0, with x^2 - D y^2 = 1, via continued fractions."""
    a0 = isqrt(D)
    p, q, a = 0, 1, a0
    h_prev, h = 1, a0
    k_prev, k = 0, 1
    while True:
        p = a * q - p
        q = (D - p * p) // q
        a = (a0 + p) // q
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
        if q == 1:
            # at the period end the previous convergent solves x^2-Dy^2 = +-1
            x, y = h_prev, k_prev
            break
    if x * x - D * y * y == 1:
        return x, y
    # negative Pell solution: square it
    return x * x + D * y * y, 2 * x * y


def pell_fundamental(D: int, N: int):
    """Fundamental solution of x^2 - D y^2 = N for N in {1, 2}.

    Returns the minimal solution with x, y > 0, or None when N=2 is insoluble.
    Raises if D is not a positive nonsquare.
    """
    if N not in (1, 2):
        raise LatticeError(f"only N in (1, 2) supported, got {N}")
    if D <= 0:
        raise LatticeError(f"D must be positive, got {D}")
    if is_square(D):
        raise LatticeError(f"D={D} is a perfect square; sqrt(D) must be irrational")
    x1, y1 = _cf_fundamental(D)
    if N == 1:
        return PellSolution(x1, y1, D, 1)
    # minimal N=2 solution (a,b) satisfies a*b = y1, so b <= y1 // 2 (a >= 2)
    for b in range(1, y1 // 2 + 2):
        t = 2 + D * b * b
        if is_square(t):
            return PellSolution(isqrt(t), b, D, 2)
    return None


class _Surd:
    """Exact element x + y*sqrt(D) with rational x, y."""

    __slots__ = ("x", "y", "D")

    def __init__(self, x, y, D: int):
        self.x = Fraction(x)
        self.y = Fraction(y)
        self.D = D

    def __mul__(self, other):
        if isinstance(other, _Surd):
            return _Surd(
                self.x * other.x + self.D * self.y * other.y,
                self.x * other.y + self.y * other.x,
                self.D,
            )
        return _Surd(self.x * other, self.y * other, self.D)

    def __truediv__(self, k):
        return _Surd(self.x / k, self.y / k, self.D)

    def __neg__(self):
        return _Surd(-self.x, -self.y, self.D)

    def __pow__(self, n: int):
        if n < 0:
            return self.conj_inverse() ** (-n)
        out = _Surd(1, 0, self.D)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conj_inverse(self):
        """Inverse, valid for norm +-1 or +-2 elements."""
        nrm = self.norm()
        return _Surd(self.x / nrm, -self.y / nrm, self.D)

    def norm(self):
        return self.x * self.x - self.D * self.y * self.y

    def int_pair(self) -> tuple[int, int]:
        if self.x.denominator != 1 or self.y.denominator != 1:
            raise LatticeError(f"expected integral surd, got {self.x}+{self.y}*sqrt({self.D})")
        return int(self.x), int(self.y)


def _sequence_setup(w0: MukaiVector, z: MukaiVector, surface: SurfaceModel) -> int:
    if mukai_pair(w0, z, surface) != 0:
        raise LatticeError("w0 and z must be orthogonal")
    if mukai_square(w0, surface) != -1:
        raise LatticeError("w0 must square to -1")
    D = mukai_square(z, surface)
    if D <= 0 or is_square(D):
        raise LatticeError(f"z^2 must be a positive nonsquare, got {D}")
    return D


def root_sequence(w0: MukaiVector, z: MukaiVector, surface: SurfaceModel, count: int):
    """Vectors w_n = p_n*w0 + q_n*z for |n| <= count, all of square -1.

    (p_1, q_1) is the fundamental Pell solution normalized with p_1 < 0 and
    q_1 > 0, and p_n + q_n*sqrt(D) = -(-p_1 - q_1*sqrt(D))^n for n > 0, the
    n <= 0 branch using the plain power.
    """
    if count < 0:
        raise LatticeError("count must be nonnegative")
    D = _sequence_setup(w0, z, surface)
    x1, y1 = _cf_fundamental(D)
    unit = _Surd(x1, -y1, D)  # -p_1 - q_1*sqrt(D), norm 1, in (0, 1)
    out = []
    for n in range(-count, count + 1):
        pw = unit**n
        if n > 0:
            pw = -pw
        p, q = pw.int_pair()
        w = p * w0 + q * z
        assert mukai_square(w, surface) == -1
        out.append(w)
    return out


def mixed_sequence(w0: MukaiVector, z: MukaiVector, surface: SurfaceModel, count: int):
    """Vectors w_n = s_n*w0 + t_n*z with square -1 for even n and -2 for odd n.

    Requires x^2 - D y^2 = 2 soluble.  The generator alpha = s_1 + t_1*sqrt(D)
    is normalized by N(alpha) = 2, s_1 < 0, t_1 > 0 and beta = -alpha^2/2; the
    minimal |s_1| choice is taken (the minimal positive N=2 solution negated),
    which pins beta to the fundamental unit.
    """
    if count < 0:
        raise LatticeError("count must be nonnegative")
    D = _sequence_setup(w0, z, surface)
    sol2 = pell_fundamental(D, 2)
    if sol2 is None:
        raise LatticeError(f"x^2-{D}y^2=2 has no integral solution")
    x1, y1 = _cf_fundamental(D)
    alpha = _Surd(-sol2.x, sol2.y, D)
    beta = _Surd(-x1, y1, D)
    mb = -(alpha * alpha) / 2
    assert (mb.x, mb.y) == (beta.x, beta.y), "minimal N=2 solution must halve the fundamental unit"

    def coeffs(n: int) -> tuple[int, int]:
        if n == 0:
            return 1, 0
        m = abs(n)
        if m % 2 == 0:
            k = m // 2
            val = beta**k * ((-1) ** (k + 1))
        else:
            k = (m + 1) // 2
            val = alpha ** (2 * k - 1) / 2 ** (k - 1)
        s, t = val.int_pair()
        if n < 0:
            s = -s
        return s, t

    out = []
    for n in range(-count, count + 1):
        s, t = coeffs(n)
        w = s * w0 + t * z
        sq = mukai_square(w, surface)
        expected = -1 if n % 2 == 0 else -2
        assert sq == expected, (n, sq)
        out.append((w, sq))
    return out
