"""Exact arithmetic for the numerical lattice of an Enriques surface and its
algebraic Mukai lattice.

Vectors are integer triples (r, c1, s) where c1 lives in a fixed basis of the
numerical lattice and the *displayed* third component of the Mukai vector is
s/2; storing twice the displayed value keeps every pairing an integer.  The
canonical-class torsion is never a coordinate: it only ever enters through a
single parity bit on determinant classes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd


class LatticeError(ValueError):
    """Raised for malformed lattice data or violated preconditions."""


# ---------------------------------------------------------------------------
# integer / rational matrix helpers


def signature(gram) -> tuple[int, int, int]:
    """Signature (positive, negative, zero) of a symmetric rational matrix.

    Exact congruence diagonalization over Q; no floating point.
    """
    n = len(gram)
    m = [[Fraction(x) for x in row] for row in gram]
    pos = neg = zero = 0
    idx = list(range(n))
    for k in range(n):
        # find a usable pivot on the diagonal, symmetrically swapping if needed
        piv = next((j for j in range(k, n) if m[j][j] != 0), None)
        if piv is None:
            piv2 = next(
                ((i, j) for i in range(k, n) for j in range(i + 1, n) if m[i][j] != 0),
                None,
            )
            if piv2 is None:
                zero += n - k
                break
            i, j = piv2
            # a_ii = a_jj = 0, a_ij != 0: add row/col j to i to create a pivot
            for t in range(n):
                m[i][t] += m[j][t]
            for t in range(n):
                m[t][i] += m[t][j]
            piv = i
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            for row in m:
                row[k], row[piv] = row[piv], row[k]
        d = m[k][k]
        if d > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            f = m[i][k] / d
            if f == 0:
                continue
            for t in range(n):
                m[i][t] -= f * m[k][t]
            for t in range(n):
                m[t][i] -= f * m[t][k]
    del idx
    return pos, neg, zero


def det_int(gram) -> int:
    """Determinant of an integer matrix, exact (fraction-free not needed here)."""
    n = len(gram)
    m = [[Fraction(x) for x in row] for row in gram]
    det = Fraction(1)
    for k in range(n):
        piv = next((j for j in range(k, n) if m[j][k] != 0), None)
        if piv is None:
            return 0
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        det *= m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            for t in range(k, n):
                m[i][t] -= f * m[k][t]
    assert det.denominator == 1
    return int(det)


# ---------------------------------------------------------------------------
# surface model


U_GRAM = ((0, 1), (1, 0))

# E8 Cartan matrix negated (nodes 0-6 a chain, node 7 attached to node 4)
_E8_EDGES = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)]


def _e8_minus_gram():
    g = [[0] * 8 for _ in range(8)]
    for i in range(8):
        g[i][i] = -2
    for i, j in _E8_EDGES:
        g[i][j] = g[j][i] = 1
    return tuple(tuple(row) for row in g)


def _block_diag(a, b):
    na, nb = len(a), len(b)
    g = [[0] * (na + nb) for _ in range(na + nb)]
    for i in range(na):
        for j in range(na):
            g[i][j] = a[i][j]
    for i in range(nb):
        for j in range(nb):
            g[na + i][na + j] = b[i][j]
    return tuple(tuple(row) for row in g)


@dataclass(frozen=True)
class SurfaceModel:
    """Numerical data of an Enriques surface: Gram matrix of Num(X) plus the
    mod-2 residues of nodal cycles.  Empty residue set means unnodal."""

    gram: tuple
    nodal: frozenset
    name: str = "surface"

    def __post_init__(self):
        g = tuple(tuple(int(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", g)
        n = len(g)
        if any(len(row) != n for row in g):
            raise LatticeError("gram matrix must be square")
        if any(g[i][j] != g[j][i] for i in range(n) for j in range(n)):
            raise LatticeError("gram matrix must be symmetric")
        if any(g[i][i] % 2 != 0 for i in range(n)):
            raise LatticeError("gram matrix must be even on the diagonal")
        if det_int(g) not in (1, -1):
            raise LatticeError("gram matrix must be unimodular")
        pos, neg, zero = signature(g)
        if (pos, neg, zero) != (1, n - 1, 0):
            raise LatticeError(f"gram signature must be (1,{n - 1}), got ({pos},{neg})")
        res = frozenset(tuple(int(b) % 2 for b in r) for r in self.nodal)
        if any(len(r) != n for r in res):
            raise LatticeError("nodal residues must have length rho")
        object.__setattr__(self, "nodal", res)

    @property
    def rho(self) -> int:
        return len(self.gram)

    def ns_pair(self, c, d):
        """Intersection pairing on Num(X)."""
        if len(c) != self.rho or len(d) != self.rho:
            raise LatticeError("divisor coordinate length does not match rho")
        return sum(c[i] * self.gram[i][j] * d[j] for i in range(self.rho) for j in range(self.rho))

    def is_nodal_residue(self, c) -> bool:
        return tuple(x % 2 for x in c) in self.nodal

    def to_json(self) -> dict:
        return {
            "gram": [[str(x) for x in row] for row in self.gram],
            "nodal": [list(r) for r in sorted(self.nodal)],
            "name": self.name,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "SurfaceModel":
        gram = tuple(tuple(int(x) for x in row) for row in doc["gram"])
        nodal = frozenset(tuple(int(b) for b in r) for r in doc.get("nodal", []))
        return cls(gram=gram, nodal=nodal, name=doc.get("name", "surface"))

    @classmethod
    def from_path(cls, path) -> "SurfaceModel":
        with open(path) as fh:
            return cls.from_json(json.load(fh))


def default_surface(nodal=()) -> SurfaceModel:
    """The numerical lattice shared by all Enriques surfaces: U + E8(-1)."""
    return SurfaceModel(
        gram=_block_diag(U_GRAM, _e8_minus_gram()),
        nodal=frozenset(tuple(r) for r in nodal),
        name="U+E8(-1)",
    )


def u_surface(nodal=()) -> SurfaceModel:
    """Rank-2 test model using the hyperbolic block alone."""
    return SurfaceModel(gram=U_GRAM, nodal=frozenset(tuple(r) for r in nodal), name="U")


# ---------------------------------------------------------------------------
# Mukai vectors


@dataclass(frozen=True)
class MukaiVector:
    """Integer Mukai vector (r, c1, s) with displayed third component s/2."""

    r: int
    c1: tuple
    s: int

    def __post_init__(self):
        object.__setattr__(self, "c1", tuple(int(x) for x in self.c1))
        object.__setattr__(self, "r", int(self.r))
        object.__setattr__(self, "s", int(self.s))
        if (self.r - self.s) % 2 != 0:
            raise LatticeError(f"rank and s must have equal parity: {self}")

    def __add__(self, other):
        return MukaiVector(self.r + other.r, tuple(a + b for a, b in zip(self.c1, other.c1)), self.s + other.s)

    def __sub__(self, other):
        return MukaiVector(self.r - other.r, tuple(a - b for a, b in zip(self.c1, other.c1)), self.s - other.s)

    def __neg__(self):
        return MukaiVector(-self.r, tuple(-a for a in self.c1), -self.s)

    def __rmul__(self, k: int):
        return MukaiVector(k * self.r, tuple(k * a for a in self.c1), k * self.s)

    def is_zero(self) -> bool:
        return self.r == 0 and self.s == 0 and all(a == 0 for a in self.c1)

    def content(self) -> int:
        """gcd of the coordinates in an integral basis of the Mukai lattice."""
        return gcd(gcd(self.r, (self.s - self.r) // 2), *self.c1) if self.c1 else gcd(self.r, (self.s - self.r) // 2)

    def to_json(self) -> dict:
        return {"r": str(self.r), "c1": [str(x) for x in self.c1], "s2": f"{self.s}/2"}

    @classmethod
    def from_json(cls, doc: dict) -> "MukaiVector":
        s2 = str(doc["s2"])
        if s2.endswith("/2"):
            s = int(s2[:-2])
        else:
            s = 2 * int(s2)
        return cls(int(doc["r"]), tuple(int(x) for x in doc["c1"]), s)


@dataclass(frozen=True)
class QMukai:
    """Rational Mukai vector; output type of operations that may leave the
    integral lattice (e.g. reflections with non-integral coefficients)."""

    r: Fraction
    c1: tuple
    s: Fraction

    def __post_init__(self):
        object.__setattr__(self, "r", Fraction(self.r))
        object.__setattr__(self, "c1", tuple(Fraction(x) for x in self.c1))
        object.__setattr__(self, "s", Fraction(self.s))

    @classmethod
    def of(cls, v) -> "QMukai":
        if isinstance(v, QMukai):
            return v
        return cls(Fraction(v.r), tuple(Fraction(x) for x in v.c1), Fraction(v.s))

    def __add__(self, other):
        o = QMukai.of(other)
        return QMukai(self.r + o.r, tuple(a + b for a, b in zip(self.c1, o.c1)), self.s + o.s)

    def __sub__(self, other):
        o = QMukai.of(other)
        return QMukai(self.r - o.r, tuple(a - b for a, b in zip(self.c1, o.c1)), self.s - o.s)

    def __neg__(self):
        return QMukai(-self.r, tuple(-a for a in self.c1), -self.s)

    def __rmul__(self, k):
        k = Fraction(k)
        return QMukai(k * self.r, tuple(k * a for a in self.c1), k * self.s)

    def is_integral(self) -> bool:
        return (
            self.r.denominator == 1
            and self.s.denominator == 1
            and all(a.denominator == 1 for a in self.c1)
            and (self.r.numerator - self.s.numerator) % 2 == 0
        )

    def to_mukai(self) -> MukaiVector:
        if not self.is_integral():
            raise LatticeError(f"not an integral Mukai vector: {self}")
        return MukaiVector(int(self.r), tuple(int(a) for a in self.c1), int(self.s))


def mukai_pair(a, b, surface: SurfaceModel):
    """Mukai pairing <(r,c,s),(r',c',s')> = (c,c') - rs' - r's.

    With the stored doubled third components this is
    (c,c') - (r*s'_int + r'*s_int)/2, always an integer on integral vectors.
    """
    num = 2 * surface.ns_pair(a.c1, b.c1) - (a.r * b.s + b.r * a.s)
    if isinstance(a, MukaiVector) and isinstance(b, MukaiVector):
        assert num % 2 == 0
        return num // 2
    return Fraction(num, 2)


def mukai_square(a, surface: SurfaceModel):
    return mukai_pair(a, a, surface)


def is_primitive(v: MukaiVector) -> bool:
    """A vector is primitive iff gcd(r, c1, (r+s)/2) = 1."""
    if v.is_zero():
        raise LatticeError("zero vector has no primitivity")
    return gcd(gcd(v.r, (v.r + v.s) // 2), *v.c1) == 1 if v.c1 else gcd(v.r, (v.r + v.s) // 2) == 1


def primitive_part(v: MukaiVector) -> tuple[int, MukaiVector]:
    """Write v = m*b with b primitive, m > 0."""
    if v.is_zero():
        raise LatticeError("zero vector has no primitive part")
    m = v.content()
    b = MukaiVector(v.r // m, tuple(a // m for a in v.c1), v.s // m)
    return m, b


def ell(v: MukaiVector) -> int:
    """Divisibility of the pull-back to the covering K3: gcd(r, c1, s) in {1,2}."""
    if not is_primitive(v):
        raise LatticeError(f"ell is defined for primitive vectors only: {v}")
    g = gcd(gcd(v.r, v.s), *v.c1) if v.c1 else gcd(v.r, v.s)
    assert g in (1, 2), g
    if g == 2:
        assert (v.r + v.s) % 4 == 2, "ell=2 forces r+s = 2 mod 4"
        assert all(a % 2 == 0 for a in v.c1)
    else:
        assert v.r % 2 == 1 or any(a % 2 == 1 for a in v.c1)
    return g


@dataclass(frozen=True)
class ParityClass:
    """Determinant parity: c1 mod 2 together with the torsion bit kappa."""

    eps: tuple
    kappa: int

    def __post_init__(self):
        object.__setattr__(self, "eps", tuple(int(x) % 2 for x in self.eps))
        object.__setattr__(self, "kappa", int(self.kappa) % 2)

    def to_json(self) -> dict:
        return {"eps": list(self.eps), "kappa": self.kappa}

    @classmethod
    def from_json(cls, doc: dict) -> "ParityClass":
        return cls(tuple(doc["eps"]), doc["kappa"])


def det_parities(v: MukaiVector) -> tuple[ParityClass, ParityClass]:
    """The two determinant parities L and L+K_X compatible with c1(v)."""
    eps = tuple(a % 2 for a in v.c1)
    return ParityClass(eps, 0), ParityClass(eps, 1)


# ---------------------------------------------------------------------------
# integral coordinates on the Mukai lattice

# The Mukai lattice {(r, D, s/2) : r = s mod 2} has the integral basis
#   a = (1, 0, 1/2),  e_i = (0, e_i, 0),  u = (0, 0, 1),
# giving coordinates (r, c1, (s_int - r)/2).


def to_coords(v: MukaiVector) -> tuple:
    return (v.r, *v.c1, (v.s - v.r) // 2)


def from_coords(coords, rho: int) -> MukaiVector:
    r = coords[0]
    c1 = tuple(coords[1 : 1 + rho])
    k = coords[1 + rho]
    return MukaiVector(r, c1, r + 2 * k)


def extended_gram(surface: SurfaceModel):
    """Gram matrix of the full Mukai lattice in the integral basis above."""
    rho = surface.rho
    n = rho + 2
    basis = [from_coords(tuple(1 if i == j else 0 for j in range(n)), rho) for i in range(n)]
    return tuple(
        tuple(mukai_pair(basis[i], basis[j], surface) for j in range(n)) for i in range(n)
    )
