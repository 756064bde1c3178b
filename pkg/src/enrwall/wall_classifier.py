"""The wall classification decision procedure.

Maps (v, determinant parity, wall lattice, nodal data, orientation) to a full
report: totally-semistable tags, contraction type per determinant, minimal
orbit data, non-normality flags, and the decomposition oracle used for
cross-validation.

Determinant-sensitive predicates take the torsion part of nodal-cycle lifts
to be zero; the surface model only carries numerical residues.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .lattice_core import (
    LatticeError,
    MukaiVector,
    ParityClass,
    SurfaceModel,
    det_parities,
    ell,
    is_primitive,
    mukai_pair,
    mukai_square,
    primitive_part,
)
from .hyperbolic_cones import (
    SPHERICAL,
    ConeOrientation,
    RankTwoLattice,
    is_effective,
    lattice_case,
    oriented_isotropics,
    represent_square,
)
from .weyl import ReflectionWord, RootChain, minimalize
from .hn_calculus import Decomposition, min_codim, _summand_region

TSS1 = "TSS1"
TSS2 = "TSS2"
TSS3 = "TSS3"
TSS4 = "TSS4"

BRILL_NOETHER = "DivisorialBrillNoether"
HILBERT_CHOW = "DivisorialHilbertChow"
LGU = "DivisorialLGU"
ILGU = "DivisorialInducedLGU"
P1_EXC = "P1FibrationExceptional"
P1_SPH = "P1FibrationSpherical"
FAKE_OR_NO_WALL = "FakeOrNoWall"
OUTSIDE = "OutsideTheoremHypotheses"

FLOP_SUM = "SumPositive"
FLOP_EXC1 = "ExceptionalFlop1"
FLOP_EXC2 = "ExceptionalFlop2"
FLOP_SPH1 = "SphericalFlop1"
FLOP_SPH2 = "SphericalFlop2"

NN_TWO_V0 = "TwoV0SquareOne"
NN_SQUARE_TWO = "SquareTwoNodal"

_CONTRACTION_ORDER = [BRILL_NOETHER, HILBERT_CHOW, LGU, ILGU, P1_EXC, P1_SPH]


@dataclass(frozen=True)
class DeterminantReport:
    parity: ParityClass
    tss: tuple
    contraction: tuple
    non_normal: tuple
    notes: tuple

    def to_json(self) -> dict:
        return {
            "parity": self.parity.to_json(),
            "tss": list(self.tss),
            "contraction": list(self.contraction),
            "non_normal": list(self.non_normal),
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class WallReport:
    v: MukaiVector
    headline: ParityClass
    case: object
    minimal: MukaiVector
    word: ReflectionWord
    isotropics: tuple | None
    per_determinant: tuple
    oracle_min_codim: object
    oracle_witness: Decomposition | None
    context: tuple

    def det_report(self, parity: ParityClass) -> DeterminantReport:
        for rep in self.per_determinant:
            if rep.parity == parity:
                return rep
        raise LatticeError("no report for that determinant parity")

    @property
    def tss(self):
        return self.det_report(self.headline).tss

    @property
    def contraction(self):
        return self.det_report(self.headline).contraction

    @property
    def non_normal_flags(self):
        return self.det_report(self.headline).non_normal

    def to_json(self) -> dict:
        return {
            "v": self.v.to_json(),
            "headline": self.headline.to_json(),
            "lattice_case": self.case.to_json(),
            "minimal": self.minimal.to_json(),
            "word": self.word.to_json(),
            "isotropics": [u.to_json() for u in self.isotropics] if self.isotropics else None,
            "per_determinant": [rep.to_json() for rep in self.per_determinant],
            "oracle_min_codim": "inf" if self.oracle_min_codim == math.inf else str(self.oracle_min_codim),
            "oracle_witness": self.oracle_witness.to_json() if self.oracle_witness else None,
            "context": list(self.context),
        }


def _sph_parity_matches(parity: ParityClass, v: MukaiVector, surface: SurfaceModel) -> bool:
    """L = D + (r/2)K_X mod 2 for a nodal cycle D, torsion lift of D taken 0.

    Defined false for odd rank."""
    if v.r % 2 != 0:
        return False
    if not surface.is_nodal_residue(v.c1):
        return False
    return parity.kappa == (v.r // 2) % 2


def _canonical_parity_matches(parity: ParityClass, v: MukaiVector) -> bool:
    """L = K_X mod 2."""
    return all(e == 0 for e in parity.eps) and parity.kappa == 1


def _half_canonical_matches(parity: ParityClass, v: MukaiVector) -> bool:
    """L = (r/2)K_X mod 2, defined false for odd rank."""
    if v.r % 2 != 0:
        return False
    return parity.kappa == (v.r // 2) % 2


def _two_positive_splits(v: MukaiVector, lattice: RankTwoLattice, surface: SurfaceModel,
                         orient: ConeOrientation):
    """Splittings v = a1 + a2 with both parts in the positive cone."""
    vc = lattice.coords_of(v)
    seen = set()
    out = []
    for mn in _summand_region(v, lattice, surface, orient):
        if mn == (0, 0) or mn == vc:
            continue
        rest = (vc[0] - mn[0], vc[1] - mn[1])
        key = tuple(sorted((mn, rest)))
        if key in seen:
            continue
        seen.add(key)
        if lattice.q(*mn) < 0 or lattice.q(*rest) < 0:
            continue
        a1 = lattice.vector(*mn)
        a2 = lattice.vector(*rest)
        if mukai_pair(v, a1, surface) <= 0 or mukai_pair(v, a2, surface) <= 0:
            continue
        out.append((a1, a2))
    return out


def _split_is_ell2_isotropic(split, surface: SurfaceModel) -> bool:
    for a in split:
        m, b = primitive_part(a)
        if mukai_square(b, surface) != 0 or ell(b) != 2:
            return False
    return True


def classify(v: MukaiVector, parity: ParityClass, lattice: RankTwoLattice,
             surface: SurfaceModel, orient: ConeOrientation) -> WallReport:
    """Evaluate every wall predicate for v on this wall, per determinant."""
    vsq = mukai_square(v, surface)
    if vsq <= 0:
        raise LatticeError("classification needs v^2 > 0")
    if tuple(a % 2 for a in v.c1) != parity.eps:
        raise LatticeError("determinant parity does not match c1(v) mod 2")
    if not orient.is_positive(lattice.coords_of(v)):
        raise LatticeError("orientation does not make v effective")

    v0, word = minimalize(v, lattice, surface, orient)
    case = lattice_case(lattice, surface, orient)
    chain = RootChain(lattice, surface, orient)
    iso = oriented_isotropics(lattice, surface, orient)

    # orthogonal effective roots; for minimal v0 only the chain ends can vanish
    sph_orth = None
    exc_orth = None
    if not chain.empty:
        ends = [0] if chain.finite else [0, 1]
        for n in ends:
            w = chain.w(n)
            if mukai_pair(v0, w, surface) == 0:
                if chain.kind(n) == SPHERICAL:
                    sph_orth = w
                else:
                    exc_orth = w

    iso_data = []
    if iso is not None:
        for u in iso:
            iso_data.append((u, ell(u), mukai_pair(v0, u, surface)))

    has_root = not chain.empty
    root_nonorth = has_root and sph_orth is None and exc_orth is None

    context = []
    if is_primitive(v):
        if vsq % 2 == 1:
            context.append(
                f"primitive odd-square class: moduli birational to the Hilbert scheme of {(vsq + 1) // 2} points"
            )
        elif ell(v) == 1 and vsq >= 2:
            context.append(
                "primitive even-square class of covering divisibility one: "
                "moduli birational to torsion sheaves on a hyperelliptic curve"
            )
    notes_common = []
    if iso is not None and chain.empty and represent_square(lattice, -2):
        notes_common.append(
            "square minus-two classes exist but none is a root; treated as non-effective"
        )

    def det_report(par: ParityClass) -> DeterminantReport:
        tss = []
        if word.steps:
            tss.append(TSS1)
        if any(e == 2 and p == 1 for _u, e, p in iso_data):
            tss.append(TSS2)
        sph_det = _sph_parity_matches(par, v, surface)
        if sph_orth is not None and any(p == e for _u, e, p in iso_data) and sph_det:
            tss.append(TSS3)
        exc_det = _canonical_parity_matches(par, v)
        if exc_orth is not None and any(e == 2 and p == 2 for _u, e, p in iso_data) and exc_det:
            tss.append(TSS4)

        tags = []
        # Brill-Noether: spherical orthogonal root; on isotropic walls the
        # isotropic pairings must exceed the divisibility
        if sph_orth is not None and (iso is None or any(p > e for _u, e, p in iso_data)):
            tags.append(BRILL_NOETHER)
        # Brill-Noether, exceptional flavor: v0 - 2w spherical on the matching
        # determinant only
        if exc_orth is not None:
            cand = v0 - 2 * exc_orth
            if (
                mukai_square(cand, surface) == -2
                and surface.is_nodal_residue(cand.c1)
                and is_effective(cand, lattice, surface, orient)
                and sph_det
            ):
                tags.append(BRILL_NOETHER)
        if any(e == 2 and p == 1 for _u, e, p in iso_data) and vsq > 1:
            tags.append(HILBERT_CHOW)
        if any(e == 2 and p == 2 for _u, e, p in iso_data):
            if (has_root and root_nonorth) or (not has_root and vsq >= 4):
                tags.append(LGU)
        if any(e == 1 and p == 1 for _u, e, p in iso_data) and vsq >= 3:
            if (has_root and root_nonorth) or not has_root:
                tags.append(ILGU)
        if exc_orth is not None and any(e == 2 and p == 2 for _u, e, p in iso_data) and exc_det:
            tags.append(P1_EXC)
        if sph_orth is not None and any(p == e for _u, e, p in iso_data) and sph_det:
            tags.append(P1_SPH)

        tags = [t for t in _CONTRACTION_ORDER if t in tags]

        if not tags:
            if not is_primitive(v):
                tags = [OUTSIDE]
            else:
                flops = []
                if vsq >= 3:
                    for split in _two_positive_splits(v0, lattice, surface, orient):
                        if _split_is_ell2_isotropic(split, surface):
                            if _half_canonical_matches(par, v):
                                flops.append(FLOP_SUM)
                                break
                        else:
                            flops.append(FLOP_SUM)
                            break
                half = Fraction(vsq, 2)
                if not chain.empty:
                    for _n, w, t in chain.effective_roots_pairing_at_most(v0, half):
                        if mukai_square(w, surface) == -1:
                            if 0 < t <= half:
                                flops.append(FLOP_EXC1)
                            if t == 0 and vsq >= 3:
                                flops.append(FLOP_EXC2)
                        else:
                            if 0 < t < half:
                                flops.append(FLOP_SPH1)
                            if t == half:
                                rem = v0 - w
                                if mukai_square(rem, surface) == -2 and surface.is_nodal_residue(rem.c1):
                                    flops.append(FLOP_SPH2)
                flops = sorted(set(flops), key=[FLOP_SUM, FLOP_EXC1, FLOP_EXC2, FLOP_SPH1, FLOP_SPH2].index)
                if flops:
                    tags = [f"Flopping({sub})" for sub in flops]
                else:
                    tags = [FAKE_OR_NO_WALL]

        non_normal = []
        m, b = primitive_part(v)
        if m == 2 and mukai_square(b, surface) == 1 and _half_canonical_matches(par, v):
            non_normal.append(NN_TWO_V0)
        if vsq == 2 and _sph_parity_matches(par, v, surface):
            non_normal.append(NN_SQUARE_TWO)

        return DeterminantReport(
            parity=par,
            tss=tuple(tss),
            contraction=tuple(tags),
            non_normal=tuple(non_normal),
            notes=tuple(notes_common),
        )

    p0, p1 = det_parities(v)
    reports = (det_report(p0), det_report(p1))
    mc, witness = min_codim(v, lattice, surface, orient)
    extra_context = list(context)
    if witness is not None and witness.has_large_isotropic_part(surface):
        extra_context.append(
            "oracle witness has an isotropic part of multiplicity >= 3; its dimension rule is an upper bound"
        )
    return WallReport(
        v=v,
        headline=parity,
        case=case,
        minimal=v0,
        word=word,
        isotropics=iso,
        per_determinant=reports,
        oracle_min_codim=mc,
        oracle_witness=witness,
        context=tuple(extra_context),
    )


def cross_validate(report: WallReport, v: MukaiVector, lattice: RankTwoLattice,
                   surface: SurfaceModel, orient: ConeOrientation):
    """Oracle consistency checks; the decomposition calculus is parity-blind,
    so totally-semistable detection is compared against the union of the two
    determinant reports."""
    checks = []
    mc = report.oracle_min_codim
    tss_any = any(rep.tss for rep in report.per_determinant)
    checks.append(("tss_iff_min_codim_zero", tss_any == (mc == 0)))
    div_tags = set(_CONTRACTION_ORDER)
    div_any = any(t in div_tags for rep in report.per_determinant for t in rep.contraction)
    checks.append(("divisorial_or_fibration_implies_codim_le_1", (not div_any) or mc <= 1))
    fake_only = all(
        set(rep.contraction) <= {FAKE_OR_NO_WALL, OUTSIDE} and not rep.tss
        for rep in report.per_determinant
    )
    from .hn_calculus import enumerate_decompositions

    decs = enumerate_decompositions(v, lattice, surface, orient)
    checks.append(("fake_with_empty_list_is_no_wall", not (fake_only and not decs) or mc == math.inf))
    hc = any(HILBERT_CHOW in rep.contraction for rep in report.per_determinant)
    if hc:
        v0 = report.minimal
        vsq = mukai_square(v0, surface)
        ok = vsq % 2 == 1
        if ok:
            u = next((u for u, e, p in _iso_triples(report, lattice, surface) if e == 2 and p == 1), None)
            ok = u is not None and mukai_square(v0 - ((vsq + 1) // 2) * u, surface) == -1
        checks.append(("hilbert_chow_square_odd_with_exceptional_witness", ok))
    return checks


def _iso_triples(report: WallReport, lattice: RankTwoLattice, surface: SurfaceModel):
    if report.isotropics is None:
        return []
    return [(u, ell(u), mukai_pair(report.minimal, u, surface)) for u in report.isotropics]
