"""Geometric stability data on the (s, t) slice: central charges, wall loci,
the orthogonal polarization class, and orientation extraction.

The slice is one-dimensional in the numerical lattice: beta = s*A and
omega = t*A for a fixed integral class A with (A^2) > 0 and t > 0.  All
arithmetic is exact rational so that "on the wall" is decidable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .lattice_core import (
    LatticeError,
    MukaiVector,
    QMukai,
    SurfaceModel,
    mukai_pair,
)
from .hyperbolic_cones import ConeOrientation, RankTwoLattice


@dataclass(frozen=True)
class SlicePoint:
    s: Fraction
    t: Fraction
    ample: tuple

    def __post_init__(self):
        object.__setattr__(self, "s", Fraction(self.s))
        object.__setattr__(self, "t", Fraction(self.t))
        object.__setattr__(self, "ample", tuple(int(a) for a in self.ample))
        if self.t <= 0:
            raise LatticeError("slice points need t > 0")

    def to_json(self) -> dict:
        return {"s": str(self.s), "t": str(self.t), "ample": [str(a) for a in self.ample]}


def _ample_data(ample, x: MukaiVector, surface: SurfaceModel):
    g = surface.ns_pair(ample, ample)
    if g <= 0:
        raise LatticeError("the slice class must have positive square")
    return g, surface.ns_pair(ample, x.c1)


def central_charge(x: MukaiVector, p: SlicePoint, surface: SurfaceModel):
    """Exact (Re, Im) of the central charge at the slice point.

    Re = s*(A.c1) - s_int/2 - r*(s^2 - t^2)*(A^2)/2
    Im = t*(A.c1) - r*s*t*(A^2)
    """
    g, alpha = _ample_data(p.ample, x, surface)
    s, t = p.s, p.t
    re = s * alpha - Fraction(x.s, 2) - Fraction(x.r, 1) * (s * s - t * t) * g / 2
    im = t * alpha - x.r * s * t * g
    return re, im


@dataclass(frozen=True)
class WallLocus:
    """Solution set of Im(Z(w)/Z(v)) = 0 in the upper half (s, t) plane."""

    kind: str  # circle | vertical_line | empty | everywhere
    center_s: Fraction | None = None
    radius2: Fraction | None = None
    line_s: Fraction | None = None

    def contains(self, s, t) -> bool:
        s, t = Fraction(s), Fraction(t)
        if t <= 0:
            return False
        if self.kind == "circle":
            return (s - self.center_s) ** 2 + t * t == self.radius2
        if self.kind == "vertical_line":
            return s == self.line_s
        return self.kind == "everywhere"

    def sample_points(self, count: int):
        """Rational points on the locus; may be empty for circles whose
        radius squared is not a rational square."""
        pts = []
        if self.kind == "vertical_line":
            for k in range(1, count + 1):
                pts.append((self.line_s, Fraction(k, count)))
        elif self.kind == "circle":
            r2 = self.radius2
            num, den = r2.numerator, r2.denominator
            from math import isqrt

            if isqrt(num * den) ** 2 == num * den:
                rho = Fraction(isqrt(num * den), den)
                for k in range(1, count + 1):
                    tau = Fraction(k, count + k)
                    s = self.center_s + rho * (1 - tau * tau) / (1 + tau * tau)
                    t = rho * 2 * tau / (1 + tau * tau)
                    pts.append((s, t))
        return pts

    def to_json(self) -> dict:
        doc = {"kind": self.kind}
        if self.kind == "circle":
            doc["center_s"] = str(self.center_s)
            doc["radius2"] = str(self.radius2)
        if self.kind == "vertical_line":
            doc["line_s"] = str(self.line_s)
        return doc


def wall_locus(v: MukaiVector, w: MukaiVector, ample, surface: SurfaceModel) -> WallLocus:
    """Locus where the charges of v and w align, reduced to exact parameters.

    The equation is g*P*(s^2 + t^2) - g*Q*s + R = 0 with
    P = r_v*(A.c_w) - r_w*(A.c_v), Q = s_w*r_v - s_v*r_w (internal s), and
    R = s_w*(A.c_v) - s_v*(A.c_w).
    """
    g, alpha_v = _ample_data(ample, v, surface)
    _, alpha_w = _ample_data(ample, w, surface)
    p = v.r * alpha_w - w.r * alpha_v
    q = w.s * v.r - v.s * w.r
    r = w.s * alpha_v - v.s * alpha_w
    if p != 0:
        center = Fraction(q, 2 * p)
        radius2 = center * center - Fraction(r, g * p)
        if radius2 > 0:
            return WallLocus("circle", center_s=center, radius2=radius2)
        return WallLocus("empty")
    if q != 0:
        return WallLocus("vertical_line", line_s=Fraction(r, g * q))
    return WallLocus("everywhere" if r == 0 else "empty")


def xi(v: MukaiVector, p: SlicePoint, surface: SurfaceModel) -> QMukai:
    """The v-orthogonal class Im(charge-vector / Z(v)), exact.

    Writing the charge vector as P + iQ and Z(v) = a + ib, this is
    (a*Q - b*P)/(a^2 + b^2); the pairing with v vanishes identically.
    """
    g = surface.ns_pair(p.ample, p.ample)
    s, t = p.s, p.t
    amp = tuple(Fraction(x) for x in p.ample)
    pvec = QMukai(Fraction(1), tuple(s * x for x in amp), (s * s - t * t) * g)
    qvec = QMukai(Fraction(0), tuple(t * x for x in amp), 2 * s * t * g)
    a = mukai_pair(pvec, QMukai.of(v), surface)
    b = mukai_pair(qvec, QMukai.of(v), surface)
    if a == 0 and b == 0:
        raise LatticeError("v is massless at this slice point")
    denom = a * a + b * b
    out = (a / denom) * qvec - (b / denom) * pvec
    assert mukai_pair(out, QMukai.of(v), surface) == 0
    return out


def orientation_from_point(v: MukaiVector, lattice: RankTwoLattice, p: SlicePoint,
                           surface: SurfaceModel) -> ConeOrientation:
    """Orientation selecting the Re(Z(u)/Z(v)) > 0 half-plane at a wall point.

    The point must lie on the wall of the lattice: both basis charges must be
    real multiples of Z(v)."""
    re_v, im_v = central_charge(v, p, surface)
    if re_v == 0 and im_v == 0:
        raise LatticeError("v is massless at this slice point")
    lams = []
    for b in lattice.basis:
        re_b, im_b = central_charge(b, p, surface)
        if re_b * im_v - re_v * im_b != 0:
            raise LatticeError("slice point does not lie on the wall of this lattice")
        lams.append(re_b * re_v + im_b * im_v)
    ori = ConeOrientation(lattice, lams[0], lams[1], v, source="slice")
    assert ori.is_positive(lattice.coords_of(v))
    return ori
