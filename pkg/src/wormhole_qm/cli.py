"""
Command-line front end.

    wormhole-qm geometry  --shape gaussian --b0 1 --lmax 3 --n 601 --extrema
    wormhole-qm potential --shape gaussian --L 1 --format json
    wormhole-qm spectrum  --shape constant --L 0 --k 5
    wormhole-qm resonance --shape gaussian --L 1 --boxes 8,10,12,14,16
    wormhole-qm verify

Every flag may also be given in a ``--config`` file of ``key = value`` lines
(``#`` starts a comment); flags on the command line win. Exit codes: 0 success,
1 usage error, 2 computation failure, 3 verification failure.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import os
import sys
import tempfile

import numpy as np

from . import verify as verification
from .errors import (ConvergenceFailure, InsufficientScan, InvalidShape, SingularPoint,
                     WormholeError)
from .geometry import ShapeFunction, radial_factor, stretch_extrema
from .grid import Grid
from .potential import UNITS, PotentialProfile, barrier_analysis, centrifugal, v_eff_general
from .resonance import detect_plateaus, stabilization_scan
from .solver import convergence_check, lowest_states

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_COMPUTE = 2
EXIT_VERIFY = 3

COMMANDS = ("geometry", "potential", "spectrum", "resonance", "verify")
DEFAULT_FORMAT = {"geometry": "csv", "potential": "csv", "spectrum": "json",
                  "resonance": "json", "verify": "csv"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def num(x) -> str:
    """12 significant digits, locale independent."""
    s = "%.12g" % float(x)
    return "0" if s == "-0" else s


def jnum(x):
    return float(num(x))


def _common(p: argparse.ArgumentParser):
    p.add_argument("--shape", choices=("zero", "constant", "gaussian"), default="gaussian")
    p.add_argument("--b0", type=float, default=1.0)
    p.add_argument("--L", type=int, default=0)
    p.add_argument("--lmax", type=float, default=None, help="half-width of the grid (default 12*b0)")
    p.add_argument("--n", type=int, default=6001, help="number of grid nodes (odd)")
    p.add_argument("--format", choices=("csv", "json"), default=None)
    p.add_argument("--out", default=None, help="output file (default: stdout)")
    p.add_argument("--config", default=None, help="key=value configuration file")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wormhole-qm", description="Quantum mechanics on a wormhole spatial slice.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("geometry", help="shape function b(l) and sphere radius f(l)")
    _common(p)
    p.add_argument("--extrema", action="store_true", help="append the stationary points of f")

    p = sub.add_parser("potential", help="effective, centrifugal and total potential")
    _common(p)

    p = sub.add_parser("spectrum", help="low-lying spectrum and bound states")
    _common(p)
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--selfcheck", choices=("box", "harmonic"), default=None)
    p.add_argument("--wavefunctions", default=None, help="CSV file for the computed eigenfunctions")

    p = sub.add_parser("resonance", help="stabilization scan for metastable states")
    _common(p)
    p.add_argument("--k", type=int, default=40)
    p.add_argument("--boxes", default=None, help="comma separated box half-widths (default 8,10,...,16 times b0)")
    p.add_argument("--rel-tol", type=float, default=0.05)
    p.add_argument("--min-localization", type=float, default=2.0)
    p.add_argument("--selfcheck", choices=("free",), default=None)
    p.add_argument("--scan-csv", default=None, help="CSV file for the full scan table")

    p = sub.add_parser("verify", help="run the identity and solver self-check suite")
    _common(p)
    return parser


def read_config(path: str) -> list[str]:
    """Turn a key=value file into command-line tokens."""
    tokens = []
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path!r}: {exc}") from None
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        flag = "--" + key.replace("_", "-")
        if key.lower() == "l":
            flag = "--L"
        if value.lower() in ("true", "yes", "on"):
            tokens.append(flag)
        elif value.lower() in ("false", "no", "off"):
            continue
        else:
            tokens += [flag, value]
    return tokens


def parse_args(argv) -> argparse.Namespace:
    argv = list(argv)
    parser = build_parser()
    if argv and argv[0] in COMMANDS and "--config" in argv:
        i = argv.index("--config")
        if i + 1 >= len(argv):
            raise UsageError("--config needs a path")
        argv = [argv[0]] + read_config(argv[i + 1]) + argv[1:]
    args = parser.parse_args(argv)
    if args.n % 2 == 0 or args.n < 5:
        raise UsageError(f"--n must be an odd integer >= 5, got {args.n}")
    if args.shape != "zero" and not (math.isfinite(args.b0) and args.b0 > 0):
        raise UsageError(f"--b0 must be positive, got {args.b0}")
    if args.L < 0:
        raise UsageError(f"--L must be non-negative, got {args.L}")
    if args.lmax is None:
        args.lmax = 12.0 * (args.b0 if args.shape != "zero" else 1.0)
    if not args.lmax > 0:
        raise UsageError(f"--lmax must be positive, got {args.lmax}")
    if getattr(args, "k", 1) < 1:
        raise UsageError("--k must be at least 1")
    if args.format is None:
        args.format = DEFAULT_FORMAT[args.command]
    return args


def make_shape(args) -> ShapeFunction:
    if args.shape == "zero":
        return ShapeFunction.zero()
    if args.shape == "constant":
        return ShapeFunction.constant(args.b0)
    return ShapeFunction.gaussian(args.b0)


def _csv(header, columns) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in zip(*columns):
        buf.write(",".join(v if isinstance(v, str) else num(v) for v in row) + "\n")
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def write_atomic(path: str | None, text: str) -> None:
    """Write ``text`` to ``path`` via a temporary file and rename, or to stdout."""
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".wormhole-qm-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _grid_json(grid: Grid) -> dict:
    return {"l_max": jnum(grid.l_max), "n": grid.n, "h": jnum(grid.h)}


def _shape_json(args) -> dict:
    return {"kind": args.shape, "b0": jnum(args.b0)}


def cmd_geometry(args) -> tuple[str, int]:
    sf = make_shape(args)
    grid = Grid(args.lmax, args.n)
    geo = radial_factor(sf, grid.nodes)
    extrema = stretch_extrema(sf, (-grid.l_max, grid.l_max)) if args.extrema else []
    if args.format == "csv":
        text = _csv(("l", "b", "f"), (grid.nodes, geo.b, geo.f))
        for e in extrema:
            text += f"# extremum,l={num(e.l)},f={num(e.f)},kind={e.kind}\n"
        return text, EXIT_OK
    obj = {"units": UNITS, "command": "geometry", "shape": _shape_json(args), "grid": _grid_json(grid),
           "l": [jnum(x) for x in grid.nodes], "b": [jnum(x) for x in geo.b], "f": [jnum(x) for x in geo.f]}
    if args.extrema:
        obj["extrema"] = [{"l": jnum(e.l), "f": jnum(e.f), "kind": e.kind} for e in extrema]
    return _json(obj), EXIT_OK


def cmd_potential(args) -> tuple[str, int]:
    sf = make_shape(args)
    if sf.kind == "zero":
        raise UsageError("potential: the flat shape is singular at l = 0; choose constant or gaussian")
    grid = Grid(args.lmax, args.n)
    l = grid.nodes
    veff = v_eff_general(sf, l)
    vcen = centrifugal(sf, args.L, l)
    vtot = veff + vcen
    if args.format == "csv":
        return _csv(("l", "v_eff", "v_centrifugal", "v_total"), (l, veff, vcen, vtot)), EXIT_OK
    rep = barrier_analysis(PotentialProfile(grid, vtot, args.L, sf.descriptor, True, veff, vcen))
    obj = {"units": UNITS, "command": "potential", "shape": _shape_json(args), "L": args.L,
           "grid": _grid_json(grid),
           "barrier": {"v_origin": jnum(rep.v_origin), "v_barrier_max": jnum(rep.v_barrier_max),
                       "l_barrier": jnum(rep.l_barrier), "v_asymptotic": jnum(rep.v_asymptotic),
                       "classification": rep.classification},
           "l": [jnum(x) for x in l], "v_eff": [jnum(x) for x in veff],
           "v_centrifugal": [jnum(x) for x in vcen], "v_total": [jnum(x) for x in vtot]}
    return _json(obj), EXIT_OK


def _oracle_potential(kind):
    if kind == "harmonic":
        def harmonic(l):
            return l * l
        return harmonic

    def box(l):
        return np.zeros_like(l)
    return box


def _oracle_levels(kind, count, l_max):
    if kind == "harmonic":
        return [2.0 * j + 1.0 for j in range(count)]
    return [((j + 1) * math.pi / (2.0 * l_max)) ** 2 for j in range(count)]


def cmd_spectrum(args) -> tuple[str, int]:
    grid = Grid(args.lmax, args.n)
    if args.selfcheck:
        source = _oracle_potential(args.selfcheck)
        shape = {"kind": args.selfcheck}
    else:
        source = make_shape(args)
        if source.kind == "zero":
            raise UsageError("spectrum: the flat shape is singular at l = 0; choose constant or gaussian")
        shape = _shape_json(args)
    full = lowest_states(source, args.L, grid, args.k)
    bound = full.energies < full.v_asymptotic
    conv = convergence_check(source, args.L, grid.l_max, grid.n)
    code = EXIT_OK
    obj = {"units": UNITS, "command": "spectrum", "shape": shape, "L": args.L, "grid": _grid_json(grid),
           "v_asymptotic": jnum(full.v_asymptotic),
           "energies": [jnum(e) for e in full.energies[bound]],
           "bound_count": int(np.count_nonzero(bound)),
           "lowest": [jnum(e) for e in full.energies],
           "convergence": {"E_coarse": jnum(conv.E_coarse), "E_fine": jnum(conv.E_fine),
                           "richardson": jnum(conv.richardson_estimate), "converged": conv.converged}}
    if args.selfcheck:
        exact = _oracle_levels(args.selfcheck, len(full.energies), grid.l_max)
        err = max(abs(e - x) / x for e, x in zip(full.energies, exact))
        tol = 1e-4 if args.selfcheck == "harmonic" else 1e-3
        obj["selfcheck"] = {"kind": args.selfcheck, "exact": [jnum(x) for x in exact],
                            "max_rel_error": jnum(err), "tolerance": tol, "passed": bool(err < tol)}
        if err >= tol:
            code = EXIT_VERIFY
    if args.wavefunctions:
        cols = [grid.nodes] + list(full.wavefunctions)
        header = ["l"] + [f"phi_{j}" for j in range(len(full.wavefunctions))]
        write_atomic(args.wavefunctions, _csv(header, cols))
    if args.format == "csv":
        flags = ["true" if b else "false" for b in bound]
        return _csv(("index", "energy", "bound"), (range(len(full.energies)), full.energies, flags)), code
    return _json(obj), code


def cmd_resonance(args) -> tuple[str, int]:
    scale = args.b0 if args.shape != "zero" else 1.0
    if args.boxes is None:
        boxes = [8.0 * scale, 10.0 * scale, 12.0 * scale, 14.0 * scale, 16.0 * scale]
    else:
        try:
            boxes = [float(x) for x in args.boxes.split(",") if x.strip()]
        except ValueError:
            raise UsageError(f"--boxes must be comma separated numbers, got {args.boxes!r}") from None
    if len(boxes) < 4:
        raise UsageError(f"resonance: need at least 4 box sizes, got {len(boxes)}")
    if args.selfcheck:
        source = _oracle_potential("box")
        shape = {"kind": "free"}
    else:
        source = make_shape(args)
        if source.kind == "zero":
            raise UsageError("resonance: the flat shape is singular at l = 0; choose constant or gaussian")
        shape = _shape_json(args)
    spacing = 2.0 * args.lmax / (args.n - 1)
    scan = stabilization_scan(source, args.L, boxes, spacing=spacing, k=args.k)
    found = detect_plateaus(scan, rel_tol=args.rel_tol, min_localization=args.min_localization)
    if args.scan_csv:
        rows = [(num(b), str(j), num(e), num(loc))
                for b, E, Ls in zip(scan.box_sizes, scan.trajectories, scan.localization)
                for j, (e, loc) in enumerate(zip(E, Ls))]
        write_atomic(args.scan_csv, _csv(("box", "index", "energy", "localization"), list(zip(*rows)) or [[]] * 4))
    if args.format == "csv":
        cols = list(zip(*[(r.energy, r.spread, r.plateau_range[0], r.plateau_range[1],
                           "true" if r.inside_well else "false", r.localization) for r in found])) or [[]] * 6
        return _csv(("energy", "spread", "plateau_min", "plateau_max", "inside_well", "localization"), cols), EXIT_OK
    obj = {"units": UNITS, "command": "resonance", "shape": shape, "L": args.L,
           "boxes": [jnum(b) for b in scan.box_sizes], "spacing": jnum(scan.spacing), "k": args.k,
           "rel_tol": args.rel_tol, "min_localization": args.min_localization,
           "window": {"v_origin": jnum(scan.v_origin), "v_barrier_max": jnum(scan.v_barrier_max)},
           "resonances": [{"energy": jnum(r.energy), "spread": jnum(r.spread),
                           "plateau_range": [jnum(r.plateau_range[0]), jnum(r.plateau_range[1])],
                           "inside_well": r.inside_well, "localization": jnum(r.localization)}
                          for r in found]}
    return _json(obj), EXIT_OK


def cmd_verify(args) -> tuple[str, int]:
    results = verification.run_all()
    ok = all(r.passed for r in results)
    if args.format == "json":
        obj = {"units": UNITS, "command": "verify", "passed": ok,
               "checks": [{"name": r.name, "value": jnum(r.value), "tolerance": jnum(r.tolerance),
                           "passed": r.passed} for r in results]}
        text = _json(obj)
    else:
        text = _csv(("check", "value", "tolerance", "passed"),
                    ([r.name for r in results], [r.value for r in results],
                     [r.tolerance for r in results], ["PASS" if r.passed else "FAIL" for r in results]))
    return text, EXIT_OK if ok else EXIT_VERIFY


HANDLERS = {"geometry": cmd_geometry, "potential": cmd_potential, "spectrum": cmd_spectrum,
            "resonance": cmd_resonance, "verify": cmd_verify}


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        args = parse_args(argv)
        text, code = HANDLERS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InvalidShape, InsufficientScan) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SingularPoint as exc:
        print(f"data error: singular point at l = {exc.l!r}", file=sys.stderr)
        return EXIT_COMPUTE
    except ConvergenceFailure as exc:
        print(f"convergence failure: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except WormholeError as exc:
        print(f"computation failed: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    write_atomic(args.out, text)
    return code


if __name__ == "__main__":
    sys.exit(main())
