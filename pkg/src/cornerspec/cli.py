"""Command-line front end.

Subcommands: validate, spectrum, threshold, fredholm, compactness,
betti, oracle.  Outputs are deterministic given (input, flags,
version); every run records its defaults in `#`-prefixed header lines
so results are self-describing.  Exit codes: 0 success, 1 invalid
input/complex, 2 numerical failure, 3 unsupported query.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from importlib.resources import files

from cornerspec import __version__
from cornerspec import spectrum as sc
from cornerspec.corner_complex import (hyperfaces, load_complex,
                                       minimal_faces, validate_complex)
from cornerspec.dec.cochain import build_cochain_complex
from cornerspec.dec.solve import (ResolutionSettings, betti, betti_integer,
                                  eigenvalue_table_csv, laplacian_spectrum,
                                  mesh_for_geometry)
from cornerspec.errors import (DomainError, NumericalError, ResourceError,
                               ValidationError)
from cornerspec.oracle import CylinderModel, cylinder_ground_energy
from cornerspec.recursion import (LaplacianShift, RecursionEngine,
                                  RecursionOptions, ResolventPower,
                                  full_spectrum, is_compact, is_fredholm)

BUNDLED = ("square.json", "interval.json", "cyl_s2.json", "cyl_s3.json",
           "torus_closed.json", "cube_corner.json")


def bundled_input(name: str) -> str:
    """Path of a bundled example complex."""
    return str(files("cornerspec").joinpath("data", name))


def _resolve_input(path: str) -> str:
    import os
    if os.path.exists(path):
        return path
    if path in BUNDLED:
        return bundled_input(path)
    raise ValidationError(f"input file not found: {path}")


_NUM = r"(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?"


def parse_shift(text: str) -> complex:
    """Parse 'a', 'a+bi' or 'a-bi' with a locale-independent decimal point."""
    m = re.fullmatch(rf"([-+]?{_NUM})(?:([-+]{_NUM})i)?",
                     text.strip().replace(" ", ""))
    if not m:
        raise ValidationError(
            f"cannot parse shift {text!r}: expected 'a', 'a+bi' or 'a-bi'")
    re_part = float(m.group(1))
    im_part = float(m.group(2)) if m.group(2) else 0.0
    return complex(re_part, im_part)


def _fmt(v) -> str:
    if v is None:
        return "EMPTY"
    if v == int(v):
        return str(int(v))
    return repr(v)


def load_bound_states(path: str) -> dict:
    """JSON map {face_id: {degree: [values]}} -> {(face, p): tuple}."""
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot read bound states {path}: {exc}")
    out = {}
    for face, per_degree in doc.items():
        for p, vals in per_degree.items():
            out[(str(face), int(p))] = tuple(float(v) for v in vals)
    return out


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        sys.exit(1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cornerspec", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, need_degree=False):
        p.add_argument("--input", required=True,
                       help="complex JSON file (bundled names resolve too)")
        p.add_argument("--p", type=int, required=need_degree, default=None,
                       help="form degree")
        p.add_argument("--format", choices=("table", "csv"), default="table")
        p.add_argument("--certified", action="store_true",
                       help="annotate uncertified (upper-bound) values")
        p.add_argument("--bound-states", default=None,
                       help="JSON map face/degree -> eigenvalue list")
        p.add_argument("--mode", choices=("catalog", "dec"), default="catalog",
                       help="base-face spectra from catalogs or DEC meshes")
        p.add_argument("--cutoff", type=float, default=100.0,
                       help="catalog eigenvalue cutoff")
        p.add_argument("--subdiv", type=int, default=3,
                       help="sphere mesh subdivisions (DEC mode)")
        p.add_argument("--grid", type=int, default=16,
                       help="torus/circle mesh density (DEC mode)")

    common(sub.add_parser("validate", help="check complex invariants"))
    common(sub.add_parser("threshold", help="essential-spectrum onset"),
           need_degree=True)
    common(sub.add_parser("spectrum", help="full spectrum description"),
           need_degree=True)
    fred = sub.add_parser("fredholm", help="Fredholm check for Delta_p - z")
    common(fred, need_degree=True)
    fred.add_argument("--z", required=True, help="shift: 'a', 'a+bi', 'a-bi'")
    comp = sub.add_parser("compactness",
                          help="compactness of (1+Delta_p)^(-s)")
    common(comp, need_degree=True)
    comp.add_argument("--s", type=float, default=1.0, help="resolvent power")
    common(sub.add_parser("betti", help="Betti numbers of minimal faces"))
    orc = sub.add_parser("oracle", help="truncated-cylinder convergence table")
    common(orc, need_degree=True)
    orc.add_argument("--length", default="5,10,20",
                     help="comma-separated cylinder lengths")
    orc.add_argument("--oracle-grid", type=int, default=400,
                     help="interior grid points of the 1-D Dirichlet factor")
    return parser


def _settings(args) -> ResolutionSettings:
    return ResolutionSettings(mode=args.mode, cutoff=args.cutoff,
                              circle_segments=max(args.grid, 3),
                              torus_grid=max(args.grid, 3),
                              sphere_subdivisions=args.subdiv)


def _options(args) -> RecursionOptions:
    bounds = load_bound_states(args.bound_states) if args.bound_states else {}
    return RecursionOptions(bound_state_data=bounds,
                            base_resolution=_settings(args),
                            certified_only=args.certified)


def _header(args, out):
    s = _settings(args)
    print(f"# cornerspec {__version__}", file=out)
    print(f"# command: {args.command}", file=out)
    print(f"# input: {args.input}", file=out)
    if args.p is not None:
        print(f"# p: {args.p}", file=out)
    print(f"# resolution: mode={s.mode} cutoff={s.cutoff} "
          f"grid={s.torus_grid} subdiv={s.sphere_subdivisions}", file=out)
    print(f"# tolerances: eigen_tol={s.eigen_tol} "
          f"jacobi_size_limit={s.jacobi_size_limit}", file=out)
    print(f"# certified_only: {str(args.certified).lower()}", file=out)


def cmd_validate(args, cc, out):
    report = validate_complex(cc)
    if not report:
        print("valid", file=out)
        return 0
    for v in report:
        print(str(v), file=out)
    return 1


def cmd_threshold(args, cc, out):
    engine = RecursionEngine(cc, _options(args))
    m = engine.essential_threshold(args.p)
    certified = engine.threshold_certified(args.p)
    if args.format == "csv":
        print("p,threshold,certified", file=out)
        print(f"{args.p},{'' if m is None else repr(m)},"
              f"{str(certified).lower()}", file=out)
    else:
        if m is None:
            print("essential threshold: EMPTY (closed manifold, "
                  "no essential spectrum)", file=out)
        else:
            print(f"essential threshold: {_fmt(m)}", file=out)
        if args.certified and not certified:
            print("note: value is an upper bound for the true threshold "
                  "(possible uncounted bound states on non-minimal faces); "
                  "assert them via --bound-states to certify", file=out)
    return 0


def cmd_spectrum(args, cc, out):
    desc = full_spectrum(cc, args.p, _options(args))
    kernel = sum(1 for v in desc.discrete if v == 0.0)
    if args.format == "csv":
        print(f"# kernel_dim: {kernel}", file=out)
        print("discrete,essential_threshold", file=out)
        print(sc.to_csv_row(desc), file=out)
    else:
        print(f"spectrum: {desc.to_text()}", file=out)
        print(f"kernel_dim: {kernel}", file=out)
    return 0


def cmd_fredholm(args, cc, out):
    z = parse_shift(args.z)
    verdict, cert = is_fredholm(
        LaplacianShift(cc, args.p, z), _options(args))
    if args.format == "csv":
        out.write(cert.to_csv())
    else:
        print(f"operator: Delta_{args.p} - z, z = {z}", file=out)
        print(f"fredholm: {str(verdict).lower()}", file=out)
        for e in cert.entries:
            print(f"  hyperface {e.hyperface}: indicial spectrum "
                  f"{e.indicial.to_text()} -> {e.verdict}", file=out)
    return 0


def cmd_compactness(args, cc, out):
    verdict, cert = is_compact(
        ResolventPower(cc, args.p, args.s), _options(args))
    if args.format == "csv":
        out.write(cert.to_csv())
    else:
        print(f"operator: (1 + Delta_{args.p})^(-{args.s})", file=out)
        print(f"compact: {str(verdict).lower()}", file=out)
        for e in cert.entries:
            print(f"  hyperface {e.hyperface}: {e.verdict}", file=out)
    return 0


def cmd_betti(args, cc, out):
    settings = _settings(args)
    rows = []
    for fid in minimal_faces(cc):
        face = cc.face(fid)
        mesh = mesh_for_geometry(face.geometry, settings)
        if mesh is None:
            continue  # analytic-catalog-only geometry
        cx = build_cochain_complex(mesh)
        degrees = ([args.p] if args.p is not None
                   else list(range(cx.dim + 1)))
        for p in degrees:
            rows.append((fid, p, betti(cx, p), betti_integer(cx, p),
                         cx, mesh))
    if not rows:
        raise DomainError("no minimal face with a meshable geometry")
    if args.format == "csv":
        print("face,p,betti,betti_integer", file=out)
        for fid, p, b, bi, _, _ in rows:
            print(f"{fid},{p},{b},{bi}", file=out)
    else:
        for fid, p, b, bi, cx, _ in rows:
            agree = "" if b == bi else "  (DISAGREES with integer rank!)"
            print(f"face {fid}  b_{p} = {b}  [integer-rank check: {bi}]"
                  f"{agree}", file=out)
    return 0


def cmd_oracle(args, cc, out):
    opts = _options(args)
    engine = RecursionEngine(cc, opts)
    hfs = hyperfaces(cc)
    if not hfs:
        raise DomainError("oracle needs a complex with boundary")
    lengths = [float(v) for v in args.length.split(",") if v.strip()]
    emitted = False
    for h in hfs:
        face = cc.face(h)
        if face.geometry.kind == "none" or cc.below(face):
            continue  # cross-section spectrum needs a closed (minimal) face
        pred = sc.min_spectrum(engine.indicial(cc, h, args.p))
        print(f"# hyperface: {h} ({face.geometry.kind})", file=out)
        print("L,grid_n,ground_energy,predicted_threshold,gap", file=out)
        for L in lengths:
            blocks = [q for q in {args.p, args.p - 1}
                      if 0 <= q <= face.dim]
            ground = min(
                cylinder_ground_energy(CylinderModel(
                    face.geometry, q, L, args.oracle_grid,
                    resolution=opts.base_resolution))
                for q in blocks)
            print(f"{L!r},{args.oracle_grid},{ground!r},{pred!r},"
                  f"{ground - pred!r}", file=out)
        emitted = True
    if not emitted:
        raise DomainError(
            "no hyperface with a closed analytic cross-section geometry")
    return 0


COMMANDS = {
    "validate": cmd_validate,
    "threshold": cmd_threshold,
    "spectrum": cmd_spectrum,
    "fredholm": cmd_fredholm,
    "compactness": cmd_compactness,
    "betti": cmd_betti,
    "oracle": cmd_oracle,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = sys.stdout
    try:
        args.input = _resolve_input(args.input)
        cc = load_complex(args.input)
        _header(args, out)
        code = COMMANDS[args.command](args, cc, out)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (NumericalError, ResourceError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"unsupported query: {exc}", file=sys.stderr)
        return 3
    return code


if __name__ == "__main__":
    sys.exit(main())
