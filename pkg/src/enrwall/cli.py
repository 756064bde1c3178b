"""Command line interface: classify, walls, orbit, decompose, slice-plot.

Config may come from a JSON document (--config) and/or flags; flags win.
All integers in emitted JSON are decimal strings so round-trips are lossless
at arbitrary precision.  Exit codes: 0 success, 1 config error, 2 outside
theorem hypotheses, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from itertools import combinations

from .lattice_core import (
    LatticeError,
    MukaiVector,
    SurfaceModel,
    default_surface,
    det_parities,
    mukai_square,
    to_coords,
    u_surface,
)
from .hyperbolic_cones import RankTwoLattice, build_sublattice, canonical_orientation
from .weyl import minimalize
from .hn_calculus import codim, enumerate_decompositions, min_codim
from .wall_classifier import OUTSIDE, classify, cross_validate
from .stab_slice import SlicePoint, orientation_from_point, wall_locus

CONFIG_VERSION = 1


class ConfigError(ValueError):
    pass


def _load_config(args) -> dict:
    doc = {}
    if getattr(args, "config", None):
        with open(args.config) as fh:
            doc = json.load(fh)
        if str(doc.get("version", CONFIG_VERSION)) != str(CONFIG_VERSION):
            raise ConfigError(f"unsupported config version {doc.get('version')}")
    for key in ("surface", "v", "w", "det", "bound", "ample", "out", "format", "s", "t"):
        val = getattr(args, key.replace("-", "_"), None)
        if val is not None:
            doc[key] = val
    return doc


def _surface_from(doc) -> SurfaceModel:
    spec = doc.get("surface")
    nodal = doc.get("nodal", [])
    if spec in (None, "default", "U+E8"):
        return default_surface(nodal=[tuple(int(b) for b in r) for r in nodal])
    if spec == "U":
        return u_surface(nodal=[tuple(int(b) for b in r) for r in nodal])
    if isinstance(spec, str):
        return SurfaceModel.from_path(spec)
    return SurfaceModel.from_json(spec)


def _vector_from(doc, key: str) -> MukaiVector:
    raw = doc.get(key)
    if raw is None:
        raise ConfigError(f"missing vector {key!r}")
    if isinstance(raw, str):
        raw = json.loads(raw)
    return MukaiVector.from_json(raw)


def _parity_from(doc, v: MukaiVector):
    det = doc.get("det", "L")
    if det not in ("L", "LK"):
        raise ConfigError("det must be 'L' or 'LK'")
    p0, p1 = det_parities(v)
    return p0 if det == "L" else p1


def _ample_from(doc):
    raw = doc.get("ample")
    if raw is None:
        return None
    if isinstance(raw, str):
        raw = json.loads(raw)
    return tuple(int(a) for a in raw)


def _orientation(doc, v, lattice, surface):
    amp = _ample_from(doc)
    if amp is not None and doc.get("s") is not None and doc.get("t") is not None:
        point = SlicePoint(Fraction(str(doc["s"])), Fraction(str(doc["t"])), amp)
        return orientation_from_point(v, lattice, point, surface)
    return canonical_orientation(lattice, v)


def _emit(doc, out_path, fmt: str):
    if fmt == "json":
        text = json.dumps(doc, indent=2, sort_keys=True)
    elif fmt == "text":
        text = _as_text(doc)
    elif fmt == "csv":
        text = _as_csv(doc)
    else:
        raise ConfigError(f"format {fmt!r} not supported for this command")
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _as_text(doc, indent=0) -> str:
    pad = "  " * indent
    if isinstance(doc, dict):
        return "\n".join(f"{pad}{k}: " + ("\n" + _as_text(v, indent + 1) if isinstance(v, (dict, list)) else str(v)) for k, v in doc.items())
    if isinstance(doc, list):
        return "\n".join(_as_text(v, indent) for v in doc)
    return pad + str(doc)


def _as_csv(doc) -> str:
    rows = doc if isinstance(doc, list) else doc.get("walls", [doc])
    lines = ["kind,center_s,radius2,line_s,w"]
    for row in rows:
        locus = row.get("locus", {})
        lines.append(
            ",".join(
                [
                    locus.get("kind", ""),
                    locus.get("center_s", ""),
                    locus.get("radius2", ""),
                    locus.get("line_s", ""),
                    json.dumps(row.get("w", {})).replace(",", ";"),
                ]
            )
        )
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# commands


def cmd_classify(args) -> int:
    doc = _load_config(args)
    surface = _surface_from(doc)
    v = _vector_from(doc, "v")
    w = _vector_from(doc, "w")
    lattice = build_sublattice(v, w, surface)
    orient = _orientation(doc, v, lattice, surface)
    parity = _parity_from(doc, v)
    report = classify(v, parity, lattice, surface, orient)
    checks = cross_validate(report, v, lattice, surface, orient)
    payload = report.to_json()
    payload["lattice"] = lattice.to_json()
    payload["checks"] = [{"name": n, "pass": ok} for n, ok in checks]
    _emit(payload, doc.get("out"), doc.get("format", "json"))
    if not all(ok for _n, ok in checks):
        return 3
    if OUTSIDE in report.det_report(parity).contraction:
        return 2
    return 0


def _sweep_candidates(v: MukaiVector, surface: SurfaceModel, bound: int):
    """Second generators with small support: at most two numerical
    coordinates in {-1, 0, 1}, rank and s-slots up to the bound."""
    rho = surface.rho
    rb = min(bound, 2)
    supports = [()] + [(i,) for i in range(rho)] + list(combinations(range(rho), 2))
    for r in range(-rb, rb + 1):
        for k in range(-rb, rb + 1):
            for sup in supports:
                for signs in _sign_tuples(len(sup)):
                    c1 = [0] * rho
                    for idx, sg in zip(sup, signs):
                        c1[idx] = sg
                    yield MukaiVector(r, tuple(c1), r + 2 * k)


def _sign_tuples(n: int):
    if n == 0:
        yield ()
        return
    for rest in _sign_tuples(n - 1):
        yield (1, *rest)
        yield (-1, *rest)


def cmd_walls(args) -> int:
    doc = _load_config(args)
    surface = _surface_from(doc)
    v = _vector_from(doc, "v")
    bound = int(doc.get("bound", 10))
    amp = _ample_from(doc)
    parity = _parity_from(doc, v)
    seen = {}
    for w in _sweep_candidates(v, surface, bound):
        if w.is_zero():
            continue
        try:
            lattice = build_sublattice(v, w, surface)
        except LatticeError:
            continue
        if abs(lattice.disc) > bound or abs(mukai_pair(v, w, surface)) > bound:
            continue
        key = tuple(tuple(to_coords(b)) for b in lattice.basis)
        if key not in seen:
            seen[key] = (lattice, w)

    def classify_one(item):
        lattice, w = item
        orient = canonical_orientation(lattice, v)
        report = classify(v, parity, lattice, surface, orient)
        row = {"w": w.to_json(), "lattice": lattice.to_json(), "report": report.to_json()}
        if amp is not None:
            other = next(b for b in lattice.basis if to_coords(b) != to_coords(v))
            row["locus"] = wall_locus(v, other, amp, surface).to_json()
        return row

    workers = int(os.environ.get("EW_THREADS", "1"))
    items = list(seen.values())
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(classify_one, items))
    else:
        rows = [classify_one(item) for item in items]
    payload = {"v": v.to_json(), "walls": rows}
    _emit(payload, doc.get("out"), doc.get("format", "json"))
    return 0


def cmd_orbit(args) -> int:
    doc = _load_config(args)
    surface = _surface_from(doc)
    v = _vector_from(doc, "v")
    w = _vector_from(doc, "w")
    lattice = build_sublattice(v, w, surface)
    orient = _orientation(doc, v, lattice, surface)
    v0, word = minimalize(v, lattice, surface, orient)
    payload = {"v": v.to_json(), "minimal": v0.to_json(), "word": word.to_json()}
    _emit(payload, doc.get("out"), doc.get("format", "json"))
    return 0


def cmd_decompose(args) -> int:
    doc = _load_config(args)
    surface = _surface_from(doc)
    v = _vector_from(doc, "v")
    w = _vector_from(doc, "w")
    lattice = build_sublattice(v, w, surface)
    orient = _orientation(doc, v, lattice, surface)
    decs = enumerate_decompositions(v, lattice, surface, orient)
    rows = [{"decomposition": d.to_json(), "codim": str(codim(d, surface))} for d in decs]
    mc, _wit = min_codim(v, lattice, surface, orient)
    payload = {
        "v": v.to_json(),
        "decompositions": rows,
        "min_codim": "inf" if mc == math.inf else str(mc),
    }
    _emit(payload, doc.get("out"), doc.get("format", "json"))
    return 0


_STROKES = {
    "DivisorialBrillNoether": "#c0392b",
    "DivisorialHilbertChow": "#8e44ad",
    "DivisorialLGU": "#2980b9",
    "DivisorialInducedLGU": "#16a085",
    "P1FibrationExceptional": "#d35400",
    "P1FibrationSpherical": "#f39c12",
    "FakeOrNoWall": "#7f8c8d",
    "OutsideTheoremHypotheses": "#2c3e50",
}


def _svg_walls(rows, width=640, height=320, s_min=-3.0, s_max=3.0):
    scale = width / (s_max - s_min)

    def sx(s):
        return (float(s) - s_min) * scale

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f'<line x1="0" y1="{height - 10}" x2="{width}" y2="{height - 10}" stroke="black"/>',
    ]
    for row in rows:
        locus = row.get("locus")
        if not locus:
            continue
        tags = row["report"]["per_determinant"][0]["contraction"]
        color = _STROKES.get(tags[0].split("(")[0] if tags else "", "#7f8c8d")
        if "Flopping" in (tags[0] if tags else ""):
            color = "#27ae60"
        if locus["kind"] == "circle":
            c = float(Fraction(locus["center_s"]))
            r = math.sqrt(float(Fraction(locus["radius2"])))
            parts.append(
                f'<path d="M {sx(c - r):.2f} {height - 10} A {r * scale:.2f} {r * scale:.2f} 0 0 1 '
                f'{sx(c + r):.2f} {height - 10}" fill="none" stroke="{color}" stroke-width="2"/>'
            )
        elif locus["kind"] == "vertical_line":
            x = sx(Fraction(locus["line_s"]))
            parts.append(f'<line x1="{x:.2f}" y1="10" x2="{x:.2f}" y2="{height - 10}" stroke="{color}" stroke-width="2"/>')
    parts.append("</svg>")
    return "\n".join(parts)


def cmd_slice_plot(args) -> int:
    doc = _load_config(args)
    if _ample_from(doc) is None:
        raise ConfigError("slice-plot needs an ample class")
    rc = cmd_walls_payload(doc)
    svg = _svg_walls(rc["walls"])
    out = doc.get("out")
    if out:
        with open(out, "w") as fh:
            fh.write(svg + "\n")
    else:
        sys.stdout.write(svg + "\n")
    return 0


def cmd_walls_payload(doc) -> dict:
    """Walls sweep reused by slice-plot; same semantics as cmd_walls."""

    class _Args:
        config = None

    args = _Args()
    for k, val in doc.items():
        setattr(args, k, val)
    import io
    from contextlib import redirect_stdout

    buf = io.StringIO()
    doc2 = dict(doc)
    doc2.pop("out", None)
    doc2["format"] = "json"

    class _A:
        config = None

    a = _A()
    for k, val in doc2.items():
        setattr(a, k, val)
    with redirect_stdout(buf):
        cmd_walls(a)
    return json.loads(buf.getvalue())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="enrwall", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn in [
        ("classify", cmd_classify),
        ("walls", cmd_walls),
        ("orbit", cmd_orbit),
        ("decompose", cmd_decompose),
        ("slice-plot", cmd_slice_plot),
    ]:
        p = sub.add_parser(name)
        p.add_argument("--config")
        p.add_argument("--surface")
        p.add_argument("--v")
        p.add_argument("--w")
        p.add_argument("--det", choices=["L", "LK"])
        p.add_argument("--bound", type=int)
        p.add_argument("--ample")
        p.add_argument("--s")
        p.add_argument("--t")
        p.add_argument("--out")
        p.add_argument("--format", choices=["json", "csv", "svg", "text"])
        p.set_defaults(fn=fn)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ConfigError, LatticeError, FileNotFoundError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
