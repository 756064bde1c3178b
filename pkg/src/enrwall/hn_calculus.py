"""Stack-dimension rules, the filtration dimension formula, codimensions and
the exhaustive decomposition oracle.

Dimension of the moduli stack of class a = m*b, b primitive:
  b^2 > 0   ->  a^2
  b^2 = 0   ->  floor(m*ell(b)/2)
  b^2 = -2  ->  -m^2
  b^2 = -1  ->  -m^2/2 for even m, -(m^2+1)/2 for odd m
The isotropic value is an upper bound adopted as the value; every codimension
estimate consumed downstream substitutes exactly this bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .lattice_core import (
    LatticeError,
    MukaiVector,
    SurfaceModel,
    ell,
    mukai_pair,
    mukai_square,
    primitive_part,
)
from .hyperbolic_cones import (
    ConeOrientation,
    RankTwoLattice,
    effective_cone,
    find_isotropic,
    is_effective,
    lattice_case,
    NO_NEGATIVES,
)


def stack_dim(a: MukaiVector, surface: SurfaceModel, lattice: RankTwoLattice | None = None,
              orient: ConeOrientation | None = None) -> int:
    """Dimension of the stack of semistable objects of class a."""
    if lattice is not None and orient is not None:
        if not is_effective(a, lattice, surface, orient):
            raise LatticeError(f"{a} is not an effective class on this wall")
    m, b = primitive_part(a)
    bsq = mukai_square(b, surface)
    if bsq > 0:
        return mukai_square(a, surface)
    if bsq == 0:
        return (m * ell(b)) // 2
    if bsq == -2:
        return -m * m
    if bsq == -1:
        return -(m * m) // 2 if m % 2 == 0 else -(m * m + 1) // 2
    raise LatticeError(f"class {a} has no semistable objects (primitive square {bsq})")


@dataclass(frozen=True)
class Decomposition:
    """Unordered decomposition of a class into effective summands."""

    parts: tuple
    total: MukaiVector

    def __post_init__(self):
        acc = self.parts[0]
        for p in self.parts[1:]:
            acc = acc + p
        if acc != self.total:
            raise LatticeError("decomposition parts do not sum to the total")

    def has_large_isotropic_part(self, surface: SurfaceModel) -> bool:
        """True when some isotropic part has multiplicity >= 3, where the
        dimension rule is only an upper bound."""
        for p in self.parts:
            m, b = primitive_part(p)
            if mukai_square(b, surface) == 0 and m >= 3:
                return True
        return False

    def to_json(self) -> dict:
        return {"parts": [p.to_json() for p in self.parts], "total": self.total.to_json()}


def filtration_dim(dec: Decomposition, surface: SurfaceModel) -> int:
    """Sum of the part stack dimensions plus all cross pairings."""
    parts = dec.parts
    total = sum(stack_dim(p, surface) for p in parts)
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            total += mukai_pair(parts[i], parts[j], surface)
    return total


def codim(dec: Decomposition, surface: SurfaceModel) -> int:
    """total^2 minus the filtration dimension."""
    vsq = mukai_square(dec.total, surface)
    if vsq <= 0:
        raise LatticeError("codimension requires total^2 > 0")
    return vsq - filtration_dim(dec, surface)


# ---------------------------------------------------------------------------
# enumeration of decompositions


def _frac_range(lo: Fraction, hi: Fraction):
    start = math.ceil(lo)
    stop = math.floor(hi)
    return range(start, stop + 1)


def _cone_region_points(v: MukaiVector, lattice: RankTwoLattice, surface: SurfaceModel,
                        orient: ConeOrientation):
    """Integer classes a with a and v-a both inside the effective cone.

    With integral cone generators g1, g2 the region is the parallelogram
    0 <= alpha <= A, 0 <= beta <= B where v = A g1 + B g2.
    """
    g1, g2 = effective_cone(lattice, surface, orient)
    c1 = lattice.coords_of(g1)
    c2 = lattice.coords_of(g2)
    vc = lattice.coords_of(v)
    det = c1[0] * c2[1] - c1[1] * c2[0]
    assert det != 0

    def cone_coords(mn):
        al = Fraction(mn[0] * c2[1] - mn[1] * c2[0], det)
        be = Fraction(c1[0] * mn[1] - c1[1] * mn[0], det)
        return al, be

    va, vb = cone_coords(vc)
    assert va >= 0 and vb >= 0
    corners = [(Fraction(0), Fraction(0)), (va, Fraction(0)), (Fraction(0), vb), (va, vb)]
    ms = [al * c1[0] + be * c2[0] for al, be in corners]
    ns = [al * c1[1] + be * c2[1] for al, be in corners]
    out = []
    for m in _frac_range(min(ms), max(ms)):
        for n in _frac_range(min(ns), max(ns)):
            al, be = cone_coords((m, n))
            if 0 <= al <= va and 0 <= be <= vb:
                out.append((m, n))
    return out


def _positive_region_points(v: MukaiVector, lattice: RankTwoLattice, surface: SurfaceModel,
                            orient: ConeOrientation):
    """Integer classes a with a, v-a effective on a root-free non-isotropic
    lattice, where every effective class has positive square.

    Enumerated level by level in L = <a, v>: each level is a line whose
    direction d spans v-perp, and a^2 is a concave quadratic in the line
    parameter, so each level meets the region in a bounded segment.
    """
    vc = lattice.coords_of(v)
    vsq = lattice.q(*vc)
    g = lattice.gram2
    t1 = g[0][0] * vc[0] + g[0][1] * vc[1]
    t2 = g[0][1] * vc[0] + g[1][1] * vc[1]
    # primitive direction of v-perp
    dd = gcd(t1, t2)
    d = (-t2 // dd, t1 // dd)
    dsq = lattice.q(*d)
    assert dsq < 0
    gg = gcd(t1, t2)
    out = []
    for level in range(1, vsq):
        if level % gg != 0:
            continue
        # particular solution of t1*m + t2*n = level
        a0 = _solve_linear(t1, t2, level)
        pd = lattice.pair_coords(a0, d)
        base = lattice.q(*a0)
        # q(a0 + k d) = base + 2k*pd + k^2*dsq >= 1
        disc = pd * pd - dsq * (base - 1)
        if disc < 0:
            continue
        lo = Fraction(-pd - _isqrt_frac(disc), dsq)
        hi = Fraction(-pd + _isqrt_frac(disc), dsq)
        if lo > hi:
            lo, hi = hi, lo
        for k in _frac_range(lo, hi):
            mn = (a0[0] + k * d[0], a0[1] + k * d[1])
            if lattice.q(*mn) >= 1:
                out.append(mn)
    return out


def _solve_linear(t1: int, t2: int, level: int):
    """Some integer (m, n) with t1*m + t2*n = level."""
    old_r, r = t1, t2
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    assert level % old_r == 0
    f = level // old_r
    return (old_s * f, old_t * f)


def _isqrt_frac(n: int) -> Fraction:
    """Upper rational bound for sqrt(n), tight enough for integer ranges."""
    r = math.isqrt(n)
    return Fraction(r if r * r == n else r + 1)


def _summand_region(v: MukaiVector, lattice: RankTwoLattice, surface: SurfaceModel,
                    orient: ConeOrientation):
    case = lattice_case(lattice, surface, orient)
    if case.tag == NO_NEGATIVES and find_isotropic(lattice) is None:
        return _positive_region_points(v, lattice, surface, orient)
    return _cone_region_points(v, lattice, surface, orient)


def candidate_parts(v: MukaiVector, lattice: RankTwoLattice, surface: SurfaceModel,
                    orient: ConeOrientation):
    """Effective classes a with v - a still inside the region of summands."""
    out = []
    vc = lattice.coords_of(v)
    for mn in _summand_region(v, lattice, surface, orient):
        if mn == (0, 0) or mn == vc:
            continue
        a = lattice.vector(*mn)
        if is_effective(a, lattice, surface, orient):
            out.append(a)
    return out


def enumerate_decompositions(v: MukaiVector, lattice: RankTwoLattice, surface: SurfaceModel,
                             orient: ConeOrientation):
    """All unordered multisets of >= 2 effective classes summing to v.

    Partial remainders need not themselves be effective, only stay inside the
    summand region, so the recursion prunes with region membership alone.
    """
    if mukai_square(v, surface) <= 0:
        raise LatticeError("decompositions are enumerated for v^2 > 0")
    region = set(_summand_region(v, lattice, surface, orient))
    pool = candidate_parts(v, lattice, surface, orient)
    pool.sort(key=lambda a: (a.r, a.c1, a.s))
    vc = lattice.coords_of(v)
    results = []

    def rec(rest, start: int, acc):
        for i in range(start, len(pool)):
            p = pool[i]
            pc = lattice.coords_of(p)
            nxt = (rest[0] - pc[0], rest[1] - pc[1])
            if nxt == (0, 0):
                parts = tuple(acc + [p])
                if len(parts) >= 2:
                    results.append(Decomposition(parts=parts, total=v))
                continue
            if nxt in region:
                rec(nxt, i, acc + [p])

    rec(vc, 0, [])
    return results


def min_codim(v: MukaiVector, lattice: RankTwoLattice, surface: SurfaceModel,
              orient: ConeOrientation):
    """Minimum codimension over all decompositions; (inf, None) when none exist."""
    best = math.inf
    witness = None
    for dec in enumerate_decompositions(v, lattice, surface, orient):
        c = codim(dec, surface)
        if c < best:
            best = c
            witness = dec
    return best, witness
