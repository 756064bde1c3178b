"""Cohomological reflection actions: root reflections, orbit minimization with
recorded words, chamber indices, and the isotropic-wall reflection operators.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .lattice_core import (
    LatticeError,
    MukaiVector,
    QMukai,
    SurfaceModel,
    ell,
    is_primitive,
    mukai_pair,
    mukai_square,
)
from .hyperbolic_cones import (
    EXCEPTIONAL,
    NO_NEGATIVES,
    ONE_EXCEPTIONAL,
    ONE_SPHERICAL,
    SPHERICAL,
    ConeOrientation,
    RankTwoLattice,
    extreme_root_pair,
    lattice_case,
)

MAX_MINIMIZE_STEPS = 10**6


def reflect_root(v, w: MukaiVector, surface: SurfaceModel):
    """Reflection in a root: v + 2<v,w>w for w^2=-1, v + <v,w>w for w^2=-2."""
    sq = mukai_square(w, surface)
    if sq == -1:
        c = 2
    elif sq == -2:
        c = 1
    else:
        raise LatticeError(f"reflection root must square to -1 or -2, got {sq}")
    if isinstance(v, QMukai):
        return v + mukai_pair(v, w, surface) * (c * QMukai.of(w))
    return v + (c * mukai_pair(v, w, surface)) * w


@dataclass(frozen=True)
class ReflectionWord:
    """An ordered reflection sequence carrying source and target; applying the
    steps left to right to the source reproduces the target."""

    steps: tuple
    source: MukaiVector
    target: MukaiVector

    def apply(self, x, surface: SurfaceModel):
        for root, _kind in self.steps:
            x = reflect_root(x, root, surface)
        return x

    def to_json(self) -> dict:
        return {
            "steps": [{"root": r.to_json(), "kind": k} for r, k in self.steps],
            "source": self.source.to_json(),
            "target": self.target.to_json(),
        }


class RootChain:
    """The bi-infinite sequence w_n of effective roots of a wall lattice.

    w_0 and w_1 are the extreme effective roots bounding the effective cone
    (w_0 the exceptional one when kinds mix), and the rest follow from
    w_2 = R_{w_1}(w_0), w_{-1} = R_{w_0}(w_1), and the two-sided recursion
    w_{n+1} = -R_{w_n}(w_{n-1}) (n >= 2), w_{n-1} = -R_{w_n}(w_{n+1}) (n <= -1).

    Lattices with a single effective root expose it as w_0 with no neighbors.
    """

    def __init__(self, lattice: RankTwoLattice, surface: SurfaceModel, orient: ConeOrientation):
        self.lattice = lattice
        self.surface = surface
        self.orient = orient
        case = lattice_case(lattice, surface, orient)
        self.case_tag = case.tag
        self._w: dict[int, MukaiVector] = {}
        if case.tag == NO_NEGATIVES:
            return
        if case.tag in (ONE_EXCEPTIONAL, ONE_SPHERICAL):
            self._w[0] = case.witnesses[0][0]
            return
        (wa, ka), (wb, kb) = extreme_root_pair(lattice, surface, orient)
        if ka != kb:
            w0, w1 = (wa, wb) if ka == EXCEPTIONAL else (wb, wa)
        else:
            w0, w1 = sorted((wa, wb), key=lambda w: (w.r, w.c1, w.s))
        self._w[0], self._w[1] = w0, w1

    @property
    def finite(self) -> bool:
        return 1 not in self._w

    @property
    def empty(self) -> bool:
        return 0 not in self._w

    def kind(self, n: int) -> str:
        return EXCEPTIONAL if mukai_square(self.w(n), self.surface) == -1 else SPHERICAL

    def w(self, n: int) -> MukaiVector:
        if self.empty or (self.finite and n != 0):
            raise LatticeError("root chain index out of range for this lattice")
        while n not in self._w:
            if n > 1:
                top = max(self._w)
                if top == 1:
                    self._w[2] = self._check(reflect_root(self._w[0], self._w[1], self.surface))
                else:
                    nxt = -reflect_root(self._w[top - 1], self._w[top], self.surface)
                    self._w[top + 1] = self._check(nxt)
            else:
                bot = min(self._w)
                if bot == 0:
                    self._w[-1] = self._check(reflect_root(self._w[1], self._w[0], self.surface))
                else:
                    nxt = -reflect_root(self._w[bot + 1], self._w[bot], self.surface)
                    self._w[bot - 1] = self._check(nxt)
        return self._w[n]

    def _check(self, w: MukaiVector) -> MukaiVector:
        sq = mukai_square(w, self.surface)
        if sq == -2 and not self.surface.is_nodal_residue(tuple(a % 2 for a in w.c1)):
            raise LatticeError("nodal residue set is inconsistent with the root recursion")
        assert sq in (-1, -2)
        return w

    def effective_roots_pairing_at_most(self, v: MukaiVector, threshold):
        """All (n, w_n, <v,w_n>) with pairing <= threshold, for v pairing
        nonnegatively with w_0 and w_1.

        The pairing sequence obeys u_{n+1} = c*m*u_n - u_{n-1} with c*m >= 2,
        so once two consecutive values exceed the threshold and increase, all
        later ones do.
        """
        if self.empty:
            return []
        out = []
        if self.finite:
            t = mukai_pair(v, self.w(0), self.surface)
            if t <= threshold:
                out.append((0, self.w(0), t))
            return out
        for direction in (1, -1):
            n = 0 if direction == 1 else 1
            prev = None
            guard = 0
            while True:
                t = mukai_pair(v, self.w(n), self.surface)
                if t <= threshold:
                    out.append((n, self.w(n), t))
                if prev is not None and t > threshold and t > prev > threshold:
                    break
                prev = t
                n += direction
                guard += 1
                if guard > 10000:
                    raise LatticeError("root chain scan did not terminate")
        seen = set()
        uniq = []
        for n, w, t in sorted(out):
            if n not in seen:
                seen.add(n)
                uniq.append((n, w, t))
        return uniq


def minimalize(v: MukaiVector, lattice: RankTwoLattice, surface: SurfaceModel, orient: ConeOrientation):
    """The minimal representative of the reflection-group orbit of v, with the
    word taking v to it.

    Steepest descent: reflect in the extreme effective root pairing most
    negatively until both extreme pairings are nonnegative; every other
    effective root is a nonnegative combination of the extremes, so this is
    the full minimality condition.
    """
    if mukai_square(v, surface) <= 0:
        raise LatticeError("minimalize needs v^2 > 0")
    mn = lattice.coords_of(v)
    if not orient.is_positive(mn):
        raise LatticeError("v must lie in the positive cone")
    chain = RootChain(lattice, surface, orient)
    steps = []
    cur = v
    if not chain.empty:
        roots = [chain.w(0)] if chain.finite else [chain.w(0), chain.w(1)]
        kinds = [chain.kind(0)] if chain.finite else [chain.kind(0), chain.kind(1)]
        for _ in range(MAX_MINIMIZE_STEPS):
            pairings = [mukai_pair(cur, w, surface) for w in roots]
            worst = min(range(len(roots)), key=lambda i: pairings[i])
            if pairings[worst] >= 0:
                break
            cur = reflect_root(cur, roots[worst], surface)
            steps.append((roots[worst], kinds[worst]))
        else:
            raise LatticeError("orbit minimization exceeded the iteration cap")
    word = ReflectionWord(steps=tuple(steps), source=v, target=cur)
    assert word.apply(v, surface) == cur
    return cur, word


@dataclass(frozen=True)
class ChamberIndex:
    n: int
    boundary: bool

    def to_json(self):
        return {"n": self.n, "boundary": self.boundary}


def chamber_index(v: MukaiVector, lattice: RankTwoLattice, surface: SurfaceModel, orient: ConeOrientation) -> ChamberIndex:
    """The index n with v in the chamber between w_n-perp and w_{n+1}-perp,
    or boundary(n) when v is orthogonal to w_n.

    On lattices with a single root the two chambers are indexed 0 and -1.
    """
    sq = mukai_square(v, surface)
    mn = lattice.coords_of(v)
    if sq < 0 or not orient.is_positive(mn):
        raise LatticeError("chamber index needs v in the positive cone")
    chain = RootChain(lattice, surface, orient)
    if chain.empty:
        return ChamberIndex(0, False)
    if chain.finite:
        t = mukai_pair(v, chain.w(0), surface)
        if t == 0:
            return ChamberIndex(0, True)
        return ChamberIndex(0 if t > 0 else -1, False)
    t0 = mukai_pair(v, chain.w(0), surface)
    t1 = mukai_pair(v, chain.w(1), surface)
    if t0 == 0:
        return ChamberIndex(0, True)
    if t1 == 0:
        return ChamberIndex(1, True)
    if t0 > 0 and t1 > 0:
        return ChamberIndex(0, False)
    guard = 0
    if t1 < 0:
        n = 1
        while True:
            tn1 = mukai_pair(v, chain.w(n + 1), surface)
            if tn1 == 0:
                return ChamberIndex(n + 1, True)
            if tn1 > 0:
                return ChamberIndex(n, False)
            n += 1
            guard += 1
            if guard > 100000:
                raise LatticeError("chamber walk did not terminate")
    n = 0
    while True:
        tn = mukai_pair(v, chain.w(n - 1), surface)
        if tn == 0:
            return ChamberIndex(n - 1, True)
        if tn > 0:
            return ChamberIndex(n - 1, False)
        n -= 1
        guard += 1
        if guard > 100000:
            raise LatticeError("chamber walk did not terminate")


# ---------------------------------------------------------------------------
# reflection operators attached to isotropic walls


def ilgu_reflection(x, v0: MukaiVector, u0: MukaiVector, surface: SurfaceModel):
    """-(x + 2 v0^2 <x,u0> u0 - 2 <x,v0> u0 - 2 <x,u0> v0).

    Fixes the span of u0 and v0 pointwise and negates its orthogonal
    complement; requires u0 primitive isotropic with <u0,v0> = 1 and ell = 1.
    """
    if mukai_square(u0, surface) != 0:
        raise LatticeError("u0 must be isotropic")
    if not is_primitive(u0) or ell(u0) != 1:
        raise LatticeError("u0 must be primitive with ell(u0) = 1")
    if mukai_pair(u0, v0, surface) != 1:
        raise LatticeError("<u0, v0> must equal 1")
    v0sq = mukai_square(v0, surface)
    pu = mukai_pair(x, u0, surface)
    pv = mukai_pair(x, v0, surface)
    if isinstance(x, QMukai):
        return -(x + (2 * v0sq * pu) * QMukai.of(u0) - (2 * pv) * QMukai.of(u0) - (2 * pu) * QMukai.of(v0))
    return -(x + (2 * v0sq * pu) * u0 - (2 * pv) * u0 - (2 * pu) * v0)


def theta_transport(x, v: MukaiVector, u: MukaiVector, surface: SurfaceModel):
    """x + 2 v^2 <x,u> u - 2 <x,v> u - 2 <x,u> v; the cohomological map
    relating the two determinant morphisms across an isotropic wall."""
    if mukai_square(u, surface) != 0:
        raise LatticeError("u must be isotropic")
    if mukai_pair(v, u, surface) != 1:
        raise LatticeError("<v, u> must equal 1")
    vsq = mukai_square(v, surface)
    pu = mukai_pair(x, u, surface)
    pv = mukai_pair(x, v, surface)
    if isinstance(x, QMukai):
        return x + (2 * vsq * pu) * QMukai.of(u) - (2 * pv) * QMukai.of(u) - (2 * pu) * QMukai.of(v)
    return x + (2 * vsq * pu) * u - (2 * pv) * u - (2 * pu) * v


def reflect_in_d(z, d: MukaiVector, surface: SurfaceModel):
    """Reflection of z in the hyperplane orthogonal to d.

    Returns exact rationals when the reflected vector is not integral; the
    reflection is unchanged under rescaling of d.
    """
    dsq = mukai_square(d, surface)
    if dsq == 0:
        raise LatticeError("cannot reflect in an isotropic vector")
    zq = QMukai.of(z)
    coeff = Fraction(2) * Fraction(mukai_pair(zq, d, surface)) / Fraction(dsq)
    out = zq - coeff * QMukai.of(d)
    if isinstance(z, MukaiVector) and out.is_integral():
        return out.to_mukai()
    return out
