"""Rank-2 hyperbolic sublattices of the Mukai lattice: saturation, isotropic
rays, root inventories, positive/effective cones and the six-way case split.

Root finding is complete, not heuristic.  Solutions of Q(m,n) = -1, -2 on a
non-isotropic lattice are located with a bounded search justified by the
classical reduction of indefinite binary forms: every solution class under
the fundamental automorphism contains a representative (X, Y) of
X^2 - D'Y^2 = M with |Y| <= sqrt(|M|)*(eps+1)/(2*sqrt(D')), eps the
fundamental unit.  Box enumeration (enumerate_roots) is kept as the
independent cross-check route.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .lattice_core import (
    LatticeError,
    MukaiVector,
    SurfaceModel,
    ell,
    from_coords,
    mukai_pair,
    mukai_square,
    to_coords,
)
from .pell import _cf_fundamental, is_square

EXCEPTIONAL = "Exceptional"
SPHERICAL = "Spherical"

NO_NEGATIVES = "NoNegatives"
ONE_EXCEPTIONAL = "OneExceptional"
ONE_SPHERICAL = "OneSpherical"
TWO_SPHERICAL = "TwoSpherical"
TWO_EXCEPTIONAL = "TwoExceptional"
MIXED = "MixedSphericalExceptional"


# ---------------------------------------------------------------------------
# integer linear algebra (column echelon, kernels, saturation)


def _column_echelon(mat):
    """Column echelon form over Z with the unimodular transform.

    Returns (E, U) with E = mat * U and U unimodular.
    """
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    e = [list(row) for row in mat]
    u = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def col_op(j, k, a, b, c, d):
        # (col_j, col_k) <- (a*col_j + b*col_k, c*col_j + d*col_k)
        for i in range(rows):
            e[i][j], e[i][k] = a * e[i][j] + b * e[i][k], c * e[i][j] + d * e[i][k]
        for i in range(cols):
            u[i][j], u[i][k] = a * u[i][j] + b * u[i][k], c * u[i][j] + d * u[i][k]

    pivot_col = 0
    for r in range(rows):
        j = next((j for j in range(pivot_col, cols) if e[r][j] != 0), None)
        if j is None:
            continue
        if j != pivot_col:
            col_op(pivot_col, j, 0, 1, 1, 0)
        for k in range(pivot_col + 1, cols):
            while e[r][k] != 0:
                q = e[r][pivot_col] // e[r][k]
                col_op(pivot_col, k, 1, -q, 0, 1)
                col_op(pivot_col, k, 0, 1, 1, 0)
        pivot_col += 1
    return e, u


def _int_kernel(mat):
    """Basis (list of integer vectors) of the right kernel of an integer matrix.

    The kernel of an integer matrix is automatically saturated.
    """
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    if rows == 0:
        return [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]
    e, u = _column_echelon(mat)
    out = []
    for j in range(cols):
        if all(e[i][j] == 0 for i in range(rows)):
            out.append([u[i][j] for i in range(cols)])
    return out


def saturate_rows(mat):
    """Basis of the saturation of the row span of an integer matrix.

    The saturation is the integer kernel of the transpose of the kernel, and
    integer kernels are saturated, so two kernel computations suffice."""
    k = _int_kernel(mat)
    if not k:
        n = len(mat[0])
        return [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    return _int_kernel(k)


def _hnf_rows(mat):
    """Row Hermite normal form (canonical basis of a row lattice)."""
    m = [list(r) for r in mat]
    rows, cols = len(m), len(m[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, rows):
            while m[i][c] != 0:
                q = m[r][c] // m[i][c]
                m[r], m[i] = m[i], [a - q * b for a, b in zip(m[r], m[i])]
        if m[r][c] < 0:
            m[r] = [-a for a in m[r]]
        for i in range(r):
            q = m[i][c] // m[r][c]
            if q:
                m[i] = [a - q * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == rows:
            break
    return m


# ---------------------------------------------------------------------------
# the sublattice type


@dataclass(frozen=True)
class RankTwoLattice:
    """Saturated rank-2 signature-(1,1) sublattice of the Mukai lattice."""

    basis: tuple
    gram2: tuple
    ambient: SurfaceModel
    saturated: bool = True

    @property
    def disc(self) -> int:
        g = self.gram2
        return g[0][0] * g[1][1] - g[0][1] * g[0][1]

    def q(self, m: int, n: int):
        g = self.gram2
        return g[0][0] * m * m + 2 * g[0][1] * m * n + g[1][1] * n * n

    def pair_coords(self, x, y):
        g = self.gram2
        return g[0][0] * x[0] * y[0] + g[0][1] * (x[0] * y[1] + x[1] * y[0]) + g[1][1] * x[1] * y[1]

    def vector(self, m: int, n: int) -> MukaiVector:
        b1, b2 = self.basis
        return m * b1 + n * b2

    def coords_of(self, a: MukaiVector) -> tuple[int, int]:
        """Coordinates of a in the basis; error if a is not in the lattice."""
        rho = self.ambient.rho
        b1, b2 = (to_coords(b) for b in self.basis)
        target = to_coords(a)
        cols = None
        for i in range(len(b1)):
            for j in range(i + 1, len(b1)):
                if b1[i] * b2[j] - b1[j] * b2[i] != 0:
                    cols = (i, j)
                    break
            if cols:
                break
        assert cols is not None
        i, j = cols
        det = b1[i] * b2[j] - b1[j] * b2[i]
        m = Fraction(target[i] * b2[j] - target[j] * b2[i], det)
        n = Fraction(b1[i] * target[j] - b1[j] * target[i], det)
        if m.denominator != 1 or n.denominator != 1:
            raise LatticeError(f"{a} is not in the sublattice")
        m, n = int(m), int(n)
        if self.vector(m, n) != a:
            raise LatticeError(f"{a} is not in the sublattice")
        del rho
        return m, n

    def contains(self, a: MukaiVector) -> bool:
        try:
            self.coords_of(a)
            return True
        except LatticeError:
            return False

    def residue(self, m: int, n: int) -> tuple:
        b1, b2 = self.basis
        return tuple((m * x + n * y) % 2 for x, y in zip(b1.c1, b2.c1))

    def to_json(self) -> dict:
        return {
            "basis": [b.to_json() for b in self.basis],
            "gram2": [[str(x) for x in row] for row in self.gram2],
            "disc": str(self.disc),
            "saturated": self.saturated,
        }


def build_sublattice(v: MukaiVector, w: MukaiVector, surface: SurfaceModel) -> RankTwoLattice:
    """Saturation of Zv + Zw inside the Mukai lattice, with a canonical basis."""
    mat = [list(to_coords(v)), list(to_coords(w))]
    ker = _int_kernel(mat)
    n = len(mat[0])
    if len(ker) != n - 2:
        raise LatticeError("generators must be linearly independent")
    sat = _hnf_rows(saturate_rows(mat))
    if len(sat) != 2:
        raise LatticeError("saturation did not have rank two")
    rho = surface.rho
    b1 = from_coords(tuple(sat[0]), rho)
    b2 = from_coords(tuple(sat[1]), rho)
    gram2 = (
        (mukai_square(b1, surface), mukai_pair(b1, b2, surface)),
        (mukai_pair(b1, b2, surface), mukai_square(b2, surface)),
    )
    disc = gram2[0][0] * gram2[1][1] - gram2[0][1] ** 2
    if disc >= 0:
        raise LatticeError(f"span is not hyperbolic (disc={disc})")
    lat = RankTwoLattice(basis=(b1, b2), gram2=gram2, ambient=surface)
    lat.coords_of(v)
    lat.coords_of(w)
    return lat


# ---------------------------------------------------------------------------
# orientation


def _lex_positive(mn) -> bool:
    m, n = mn
    return m > 0 or (m == 0 and n > 0)


@dataclass(frozen=True)
class ConeOrientation:
    """Selection of the effective half-plane of a wall lattice.

    Carries the exact values of a rational linear functional on the basis; the
    positive side is the effective one.  A lexicographic tie-break handles
    classes the functional cannot separate (only ever needed for roots
    orthogonal to v, where every classification predicate is sign-blind).
    """

    lattice: RankTwoLattice
    lam1: Fraction
    lam2: Fraction
    v: MukaiVector
    source: str = "canonical"

    def value(self, mn) -> Fraction:
        return self.lam1 * mn[0] + self.lam2 * mn[1]

    def is_positive(self, mn) -> bool:
        t = self.value(mn)
        if t != 0:
            return t > 0
        return _lex_positive(mn)

    def effective_sign(self, mn) -> tuple[int, int]:
        return mn if self.is_positive(mn) else (-mn[0], -mn[1])


def canonical_orientation(lattice: RankTwoLattice, v: MukaiVector) -> ConeOrientation:
    """Orientation pairing positively with v; v must be a positive class."""
    if mukai_square(v, lattice.ambient) <= 0:
        raise LatticeError("canonical orientation needs v^2 > 0")
    mv = lattice.coords_of(v)
    g = lattice.gram2
    lam1 = Fraction(g[0][0] * mv[0] + g[0][1] * mv[1])
    lam2 = Fraction(g[0][1] * mv[0] + g[1][1] * mv[1])
    ori = ConeOrientation(lattice, lam1, lam2, v)
    assert ori.is_positive(mv)
    return ori


def orientation_from_generators(
    lattice: RankTwoLattice, v: MukaiVector, g1: MukaiVector, g2: MukaiVector
) -> ConeOrientation:
    """Orientation whose positive side is the half-plane spanned by the cone
    generated by g1, g2 (which must contain v strictly)."""
    c1 = lattice.coords_of(g1)
    c2 = lattice.coords_of(g2)
    if c1[0] * c2[1] - c1[1] * c2[0] < 0:
        c1, c2 = c2, c1
    if c1[0] * c2[1] - c1[1] * c2[0] == 0:
        raise LatticeError("cone generators must be independent")
    lam1 = Fraction(-c1[1] + c2[1])
    lam2 = Fraction(c1[0] - c2[0])
    ori = ConeOrientation(lattice, lam1, lam2, v, source="generators")
    if not (ori.value(c1) >= 0 and ori.value(c2) >= 0 and ori.is_positive(lattice.coords_of(v))):
        raise LatticeError("orientation does not place v inside the cone")
    return ori


# ---------------------------------------------------------------------------
# isotropic rays


def _primitive_pair(m: int, n: int) -> tuple[int, int]:
    g = gcd(m, n)
    m, n = m // g, n // g
    if not _lex_positive((m, n)):
        m, n = -m, -n
    return m, n


def find_isotropic(lattice: RankTwoLattice):
    """Both primitive isotropic rays (canonically signed), or None."""
    a, b = lattice.gram2[0][0], lattice.gram2[0][1]
    c = lattice.gram2[1][1]
    dprime = b * b - a * c
    assert dprime > 0
    if not is_square(dprime):
        return None
    k = isqrt(dprime)
    if a == 0:
        r1 = (1, 0)
        r2 = _primitive_pair(-c, 2 * b)
    else:
        r1 = _primitive_pair(-b + k, a)
        r2 = _primitive_pair(-b - k, a)
    if r1 == r2:
        raise LatticeError("degenerate isotropic structure")
    u1, u2 = (lattice.vector(*r) for r in sorted((r1, r2)))
    assert mukai_square(u1, lattice.ambient) == 0
    assert mukai_square(u2, lattice.ambient) == 0
    return u1, u2


# ---------------------------------------------------------------------------
# complete solution of Q(m, n) = k for k < 0


def _unit_action(lattice: RankTwoLattice):
    """Matrix of the fundamental automorphism on basis coordinates."""
    a, b = lattice.gram2[0][0], lattice.gram2[0][1]
    c = lattice.gram2[1][1]
    dprime = b * b - a * c
    x1, y1 = _cf_fundamental(dprime)
    return ((x1 - b * y1, -c * y1), (a * y1, x1 + b * y1))


def _apply(mat, mn):
    return (mat[0][0] * mn[0] + mat[0][1] * mn[1], mat[1][0] * mn[0] + mat[1][1] * mn[1])


def _represent_isotropic(lattice: RankTwoLattice, k: int):
    """All (m, n) with Q(m, n) = k on an isotropic lattice (a finite set)."""
    a, b = lattice.gram2[0][0], lattice.gram2[0][1]
    c = lattice.gram2[1][1]
    sols = set()
    iso = find_isotropic(lattice)
    assert iso is not None
    u1c = lattice.coords_of(iso[0])
    # change to a basis whose first vector is isotropic: Q(p, q) = q*(e*p + f*q)
    w2c = _complete_unimodular(u1c)
    e = 2 * lattice.pair_coords(u1c, w2c)
    f = lattice.pair_coords(w2c, w2c)
    assert e != 0
    for q in _divisors_signed(k):
        rem = k // q - f * q
        if rem % e == 0:
            p = rem // e
            mn = (p * u1c[0] + q * w2c[0], p * u1c[1] + q * w2c[1])
            assert lattice.q(*mn) == k
            sols.add(mn)
    return sorted(sols)


def _divisors_signed(k: int):
    out = []
    for d in range(1, abs(k) + 1):
        if k % d == 0:
            out.extend([d, -d])
    return out


def _complete_unimodular(mn):
    """A vector forming a determinant-one basis with the primitive mn."""
    m, n = mn
    assert gcd(m, n) == 1
    # extended Euclid: find (x, y) with m*y - n*x = 1
    old_r, r = m, n
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        quo = old_r // r
        old_r, r = r, old_r - quo * r
        old_s, s = s, old_s - quo * s
        old_t, t = t, old_t - quo * t
    # old_s*m + old_t*n = old_r = +-gcd = +-1
    sign = old_r
    x, y = -old_t * sign, old_s * sign
    assert m * y - n * x == 1
    return (x, y)


def _represent_nonisotropic(lattice: RankTwoLattice, k: int):
    """Representatives of every solution class of Q(m, n) = k, complete up to
    the fundamental automorphism; may contain several members per class."""
    a, b = lattice.gram2[0][0], lattice.gram2[0][1]
    c = lattice.gram2[1][1]
    dprime = b * b - a * c
    assert a != 0, "non-isotropic lattice cannot have an isotropic basis vector"
    x1, y1 = _cf_fundamental(dprime)
    m_const = k * a
    if m_const == 0:
        return []
    eps_bound = x1 + y1 * (isqrt(dprime) + 1) + 1
    y_max = isqrt((abs(m_const) * eps_bound * eps_bound) // (4 * dprime)) + 2
    amod = abs(a)
    found = set()

    def lift(seed, j):
        # fast power of the automorphism matrix [[x1, D*y1], [y1, x1]]
        m00, m01, m10, m11 = 1, 0, 0, 1
        a00, a01, a10, a11 = x1, dprime * y1, y1, x1
        e = j
        while e:
            if e & 1:
                m00, m01, m10, m11 = (
                    m00 * a00 + m01 * a10,
                    m00 * a01 + m01 * a11,
                    m10 * a00 + m11 * a10,
                    m10 * a01 + m11 * a11,
                )
            a00, a01, a10, a11 = (
                a00 * a00 + a01 * a10,
                a00 * a01 + a01 * a11,
                a10 * a00 + a11 * a10,
                a10 * a01 + a11 * a11,
            )
            e >>= 1
        return (m00 * seed[0] + m01 * seed[1], m10 * seed[0] + m11 * seed[1])

    for yy in range(0, y_max + 1):
        t = m_const + dprime * yy * yy
        if t < 0 or not is_square(t):
            continue
        xx = isqrt(t)
        seeds = {(xx, yy), (-xx, yy), (xx, -yy), (-xx, -yy)}
        for sx, sy in seeds:
            # walk the automorphism orbit mod |a| until the congruence
            # x = b*y (mod a) holds, then lift that power exactly
            cx, cy = sx % amod, sy % amod
            seen = set()
            j = 0
            while (cx, cy) not in seen:
                seen.add((cx, cy))
                if (cx - b * cy) % a == 0:
                    ex, ey = lift((sx, sy), j)
                    mn = ((ex - b * ey) // a, ey)
                    assert lattice.q(*mn) == k
                    found.add(mn)
                    break
                cx, cy = (x1 * cx + dprime * y1 * cy) % amod, (y1 * cx + x1 * cy) % amod
                j += 1
    return sorted(found)


def represent_square(lattice: RankTwoLattice, k: int):
    """Solutions of Q(m, n) = k (k < 0) as basis coordinates.

    Isotropic lattices: the full finite solution set.  Non-isotropic: at least
    one member of every class under the fundamental automorphism; empty iff
    the equation is insoluble.
    """
    assert k < 0
    if find_isotropic(lattice) is not None:
        return _represent_isotropic(lattice, k)
    return _represent_nonisotropic(lattice, k)


def _orbit_with_residue(lattice: RankTwoLattice, mn, surface: SurfaceModel):
    """Search the automorphism orbit of a (-2)-solution for a nodal residue."""
    if surface.is_nodal_residue(lattice.residue(*mn)):
        return mn
    if find_isotropic(lattice) is not None:
        return None
    t = _unit_action(lattice)
    cur = mn
    seen = set()
    while (cur[0] % 2, cur[1] % 2) not in seen:
        seen.add((cur[0] % 2, cur[1] % 2))
        cur = _apply(t, cur)
        if surface.is_nodal_residue(lattice.residue(*cur)):
            return cur
    return None


def exceptional_witness(lattice: RankTwoLattice):
    sols = represent_square(lattice, -1)
    return sols[0] if sols else None


def spherical_witness(lattice: RankTwoLattice, surface: SurfaceModel):
    for mn in represent_square(lattice, -2):
        hit = _orbit_with_residue(lattice, mn, surface)
        if hit is not None:
            return hit
    return None


# ---------------------------------------------------------------------------
# roots: box enumeration (the independent route)


def enumerate_roots(lattice: RankTwoLattice, surface: SurfaceModel, bound: int = 1000):
    """All roots with basis coordinates |m|, |n| <= bound, with their kinds."""
    out = []
    for m in range(-bound, bound + 1):
        for n in range(-bound, bound + 1):
            if m == 0 and n == 0:
                continue
            q = lattice.q(m, n)
            if q == -1:
                out.append((lattice.vector(m, n), EXCEPTIONAL))
            elif q == -2 and surface.is_nodal_residue(lattice.residue(m, n)):
                out.append((lattice.vector(m, n), SPHERICAL))
    return out


# ---------------------------------------------------------------------------
# effective roots, extreme pair, lattice case


def _cross(p, q):
    return p[0] * q[1] - p[1] * q[0]


def _root_kind(lattice, mn):
    return EXCEPTIONAL if lattice.q(*mn) == -1 else SPHERICAL


def _all_root_seeds(lattice: RankTwoLattice, surface: SurfaceModel):
    """Effective-signed seed roots, one or more per solution class."""
    seeds = []
    for mn in represent_square(lattice, -1):
        seeds.append(mn)
    for mn in represent_square(lattice, -2):
        hit = _orbit_with_residue(lattice, mn, surface)
        if hit is not None:
            seeds.append(hit)
    return seeds


def _root_window(lattice, surface, orient, seeds, j_max):
    """Effective reps of seed orbits under the fundamental automorphism."""
    t = _unit_action(lattice)
    tinv = ((t[1][1], -t[0][1]), (-t[1][0], t[0][0]))  # det 1
    roots = set()
    for mn in seeds:
        for mat in (t, tinv):
            cur = mn
            for _ in range(j_max):
                q = lattice.q(*cur)
                if q == -1 or (q == -2 and surface.is_nodal_residue(lattice.residue(*cur))):
                    roots.add(orient.effective_sign(cur))
                cur = _apply(mat, cur)
    return sorted(roots)


def _no_root_in_gap(lattice, surface, a_mn, b_mn):
    """True when no root lies strictly inside the cone spanned by -B and A.

    That sector avoids the light cone, so Q <= -(alpha^2+beta^2) there and the
    search box is tiny.
    """
    amax = max(abs(a_mn[0]), abs(a_mn[1]))
    bmax = max(abs(b_mn[0]), abs(b_mn[1]))
    lim = 2 * (amax + bmax) + 2
    nb = (-b_mn[0], -b_mn[1])
    for m in range(-lim, lim + 1):
        for n in range(-lim, lim + 1):
            mn = (m, n)
            if mn == (0, 0):
                continue
            q = lattice.q(m, n)
            if q not in (-1, -2):
                continue
            if q == -2 and not surface.is_nodal_residue(lattice.residue(m, n)):
                continue
            if _cross(nb, mn) > 0 and _cross(mn, a_mn) > 0:
                return False
    return True


def extreme_root_pair(lattice: RankTwoLattice, surface: SurfaceModel, orient: ConeOrientation):
    """The two extreme effective roots bounding the effective cone.

    Only meaningful when the lattice has infinitely many roots (non-isotropic
    with at least one root).
    """
    seeds = _all_root_seeds(lattice, surface)
    if not seeds:
        raise LatticeError("lattice has no roots")
    if find_isotropic(lattice) is not None:
        raise LatticeError("extreme pair is for non-isotropic lattices")
    j_max = 4
    for _ in range(12):
        window = _root_window(lattice, surface, orient, seeds, j_max)
        order = sorted(window, key=_AngleKey)
        a_mn, b_mn = order[0], order[-1]
        vc = lattice.coords_of(orient.v)
        if _cross(a_mn, vc) > 0 and _cross(vc, b_mn) > 0 and _no_root_in_gap(lattice, surface, a_mn, b_mn):
            return (
                (lattice.vector(*a_mn), _root_kind(lattice, a_mn)),
                (lattice.vector(*b_mn), _root_kind(lattice, b_mn)),
            )
        j_max *= 2
    raise LatticeError("extreme root search did not stabilize")


class _AngleKey:
    """Exact angular order on an open half-plane via cross products."""

    __slots__ = ("mn",)

    def __init__(self, mn):
        self.mn = mn

    def __lt__(self, other):
        return _cross(self.mn, other.mn) > 0


@dataclass(frozen=True)
class LatticeCase:
    tag: str
    witnesses: tuple

    def to_json(self):
        return {"tag": self.tag, "witnesses": [w.to_json() for w, _kind in self.witnesses]}


def lattice_case(lattice: RankTwoLattice, surface: SurfaceModel, orient: ConeOrientation) -> LatticeCase:
    """The case split: no roots / one effective root (isotropic) / infinitely
    many roots of the given kinds (non-isotropic)."""
    iso = find_isotropic(lattice)
    exc = exceptional_witness(lattice)
    sph = spherical_witness(lattice, surface)
    if iso is not None:
        assert not (exc is not None and sph is not None), "odd and even lattice at once"
        if exc is not None:
            w = lattice.vector(*orient.effective_sign(exc))
            return LatticeCase(ONE_EXCEPTIONAL, ((w, EXCEPTIONAL),))
        if sph is not None:
            w = lattice.vector(*orient.effective_sign(sph))
            return LatticeCase(ONE_SPHERICAL, ((w, SPHERICAL),))
        return LatticeCase(NO_NEGATIVES, ())
    if exc is None and sph is None:
        return LatticeCase(NO_NEGATIVES, ())
    pair = extreme_root_pair(lattice, surface, orient)
    kinds = {k for _w, k in pair}
    # consecutive roots alternate kinds, so the extreme pair sees every kind
    assert (exc is not None) == (EXCEPTIONAL in kinds)
    assert (sph is not None) == (SPHERICAL in kinds)
    if kinds == {EXCEPTIONAL}:
        tag = TWO_EXCEPTIONAL
    elif kinds == {SPHERICAL}:
        tag = TWO_SPHERICAL
    else:
        tag = MIXED
    return LatticeCase(tag, pair)


def oriented_isotropics(lattice: RankTwoLattice, surface: SurfaceModel, orient: ConeOrientation):
    """Effective primitive isotropic classes (u1, u2), ell(u1) >= ell(u2),
    ties broken by the pairing with v."""
    iso = find_isotropic(lattice)
    if iso is None:
        return None
    out = []
    for u in iso:
        mn = lattice.coords_of(u)
        out.append(lattice.vector(*orient.effective_sign(mn)))
    v = orient.v
    out.sort(key=lambda u: (ell(u), mukai_pair(v, u, surface)), reverse=True)
    u1, u2 = out
    assert mukai_pair(v, u1, surface) >= 0 and mukai_pair(v, u2, surface) >= 0
    return u1, u2


def effective_cone(lattice: RankTwoLattice, surface: SurfaceModel, orient: ConeOrientation):
    """Extremal generators of the effective cone.

    Isotropic, no roots: the two isotropic rays.  Isotropic with a root: the
    extremal isotropic class together with the root.  Non-isotropic with
    roots: the two extreme roots.  Non-isotropic without roots the cone has
    irrational edges and no integral generators exist.
    """
    case = lattice_case(lattice, surface, orient)
    iso = oriented_isotropics(lattice, surface, orient)
    if case.tag == NO_NEGATIVES:
        if iso is None:
            raise LatticeError("effective cone of a root-free non-isotropic lattice has no integral generators")
        return iso
    if case.tag in (ONE_EXCEPTIONAL, ONE_SPHERICAL):
        w = case.witnesses[0][0]
        u_ext = next(u for u in iso if mukai_pair(u, w, surface) > 0)
        return (u_ext, w)
    (w_a, _ka), (w_b, _kb) = case.witnesses
    return (w_a, w_b)


def is_effective(a: MukaiVector, lattice: RankTwoLattice, surface: SurfaceModel, orient: ConeOrientation) -> bool:
    """Whether a class supports semistable objects on the wall.

    Positive or isotropic primitive parts on the positive side qualify with
    any multiplicity; exceptional parts likewise; spherical parts need a nodal
    residue.  Everything else is empty.
    """
    mn = lattice.coords_of(a)
    if mn == (0, 0):
        return False
    if not orient.is_positive(mn):
        return False
    g = gcd(mn[0], mn[1])
    bm, bn = mn[0] // g, mn[1] // g
    q = lattice.q(bm, bn)
    if q >= 0:
        return True
    if q == -1:
        return True
    if q == -2:
        return surface.is_nodal_residue(lattice.residue(bm, bn))
    return False
