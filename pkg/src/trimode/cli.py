"""Command-line front end emitting reproducible CSV/JSON artifacts.

Subcommands: spectrum, spacings, ground-sweep, classical, phase-diagram,
polariton.  Grids are written start:stop:count (inclusive endpoints, count
not step, to avoid floating-point drift).  Outputs are written atomically
and embed a header with the full parameter set; numbers carry 17
significant digits so a re-parse reproduces them exactly.

Exit codes: 64 unknown command, 65 invalid parameters, 70 compute failure,
74 I/O failure.
"""

import argparse
import datetime
import json
import os
import sys
import tempfile

import numpy as np

from . import classical, phasediagram, polariton
from .exceptions import ComputationError, InvalidParameterError
from .groundstate import coupling_sweep
from .model import ModelParams, build_hamiltonian
from .spectral import classify_states, diagonalize, mode_populations, spacings

ARTIFACT_VERSION = "1"

EXIT_OK = 0
EXIT_USAGE = 64
EXIT_PARAMS = 65
EXIT_COMPUTE = 70
EXIT_IO = 74

COMMANDS = (
    "spectrum",
    "spacings",
    "ground-sweep",
    "classical",
    "phase-diagram",
    "polariton",
)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _fmt(value):
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def parse_grid(spec):
    """Parse start:stop:count into an inclusive, evenly spaced grid."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise InvalidParameterError(
            f"grid must be start:stop:count, got {spec!r}"
        )
    try:
        start, stop = float(parts[0]), float(parts[1])
        count = int(parts[2])
    except ValueError as exc:
        raise InvalidParameterError(f"malformed grid {spec!r}: {exc}") from exc
    if count < 1:
        raise InvalidParameterError(f"grid count must be >= 1, got {count}")
    if count == 1:
        return np.array([start])
    return np.linspace(start, stop, count)


def _float_list(spec):
    try:
        return [float(s) for s in spec.split(",") if s != ""]
    except ValueError as exc:
        raise InvalidParameterError(f"malformed list {spec!r}: {exc}") from exc


class Table:
    """Column-oriented result with metadata, ready for CSV or JSON."""

    def __init__(self, meta, columns, rows):
        self.meta = meta
        self.columns = columns
        self.rows = rows


def _write_atomic(path, text):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".trimode-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def render_csv(table, timestamp):
    lines = [f"# trimode artifact v{ARTIFACT_VERSION}"]
    for key, value in table.meta.items():
        lines.append(f"# {key} = {_fmt(value)}")
    if timestamp:
        lines.append(f"# written = {datetime.datetime.now().isoformat()}")
    lines.append(",".join(table.columns))
    for row in table.rows:
        lines.append(",".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def _json_value(v):
    if isinstance(v, (str, bool)):
        return v
    if isinstance(v, np.bool_):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    v = float(v)
    return None if np.isnan(v) else v


def render_json(table, timestamp):
    meta = {k: _json_value(v) for k, v in table.meta.items()}
    meta["artifact_version"] = ARTIFACT_VERSION
    if timestamp:
        meta["written"] = datetime.datetime.now().isoformat()
    cols = {
        name: [_json_value(row[j]) for row in table.rows]
        for j, name in enumerate(table.columns)
    }
    return json.dumps({"meta": meta, "rows": cols}, indent=1) + "\n"


def _model_from_args(args):
    n = args.n
    if n is None or args.g is None:
        raise InvalidParameterError("--n and --g are required")
    return n, args.g


def cmd_spectrum(args):
    n, g = _model_from_args(args)
    if args.G is None:
        raise InvalidParameterError("--G is required")
    params = ModelParams(n, g, args.G)
    spec = diagonalize(build_hamiltonian(params))
    labels, _, _ = classify_states(spec, params)
    rows = []
    for i, e in enumerate(spec.eigenvalues):
        n0, n1, n2 = mode_populations(spec, i)
        rows.append((i + 1, e, n0, n1, n2, labels[i].value))
    meta = {"command": "spectrum", "n_total": n, "g_ratio": g, "big_g_ratio": args.G}
    return Table(meta, ("index", "energy", "n0_mean", "n1_mean", "n2_mean", "label"), rows)


def cmd_spacings(args):
    n, g = _model_from_args(args)
    if args.G is None:
        raise InvalidParameterError("--G is required")
    params = ModelParams(n, g, args.G)
    profile = spacings(diagonalize(build_hamiltonian(params)))
    minima = set(profile.minima_indices)
    rows = [
        (i + 1, s, i in minima)
        for i, s in enumerate(profile.spacings)
    ]
    meta = {"command": "spacings", "n_total": n, "g_ratio": g, "big_g_ratio": args.G}
    return Table(meta, ("index", "spacing", "is_local_minimum"), rows)


def cmd_ground_sweep(args):
    n, g = _model_from_args(args)
    if args.G_grid is None:
        raise InvalidParameterError("--G-grid is required")
    grid = parse_grid(args.G_grid)
    table = coupling_sweep(n, g, grid)
    rows = list(
        zip(table.couplings, table.energy, table.n0_mean, table.linear_entropy)
    )
    meta = {"command": "ground-sweep", "n_total": n, "g_ratio": g,
            "grid": args.G_grid}
    return Table(meta, ("big_g_ratio", "energy", "n0_mean", "linear_entropy"), rows)


def cmd_classical(args):
    if args.gp is None or args.Gp is None:
        raise InvalidParameterError("--gp and --Gp are required")
    cp = classical.ClassicalParams(args.gp, args.Gp)
    meta = {"command": "classical", "what": args.what, "gp": args.gp, "Gp": args.Gp}
    if args.what == "critical-points":
        cps = classical.critical_points(cp)
        rows = []
        for family, pt in (("interior", cps.interior[0]),
                           ("interior", cps.interior[1]),
                           ("boundary", cps.boundary_saddles[0]),
                           ("boundary", cps.boundary_saddles[1])):
            rows.append((family, pt.kind, pt.exists, pt.phi, pt.jz, pt.energy))
        return Table(meta, ("family", "kind", "exists", "phi", "jz", "energy"), rows)
    if args.what == "thresholds":
        lower, upper = classical.separatrix_thresholds(args.gp)
        return Table(meta, ("Gp_lower", "Gp_upper"), [(lower, upper)])
    if args.what == "fractions":
        rows = [
            (cls.value, classical.region_fraction(cp, cls, args.resolution))
            for cls in classical.OrbitClass
        ]
        meta["resolution"] = args.resolution
        return Table(meta, ("orbit_class", "fraction"), rows)
    if args.what == "level-set":
        if args.energy is None:
            raise InvalidParameterError("--energy is required for level-set")
        result = classical.level_set(args.energy, cp, args.samples)
        meta["energy"] = args.energy
        meta["degenerate"] = result.degenerate
        rows = []
        for ci, curve in enumerate(result.curves):
            for jz, phi in curve.points:
                rows.append((ci, curve.closed, jz, phi))
        return Table(meta, ("curve", "closed", "jz", "phi"), rows)
    raise InvalidParameterError(f"unknown classical output {args.what!r}")


def cmd_phase_diagram(args):
    if args.n is None or args.g_list is None or args.G_grid is None:
        raise InvalidParameterError("--n, --g, and --G-grid are required")
    grid = parse_grid(args.G_grid)
    rows = []
    for g in args.g_list:
        diagram = phasediagram.boundary_curves(args.n, g, grid)
        for k in range(len(diagram)):
            rows.append(
                (g, diagram.couplings[k], diagram.frac_below[k], diagram.frac_above[k])
            )
    meta = {"command": "phase-diagram", "n_total": args.n,
            "g_ratios": ",".join(_fmt(g) for g in args.g_list), "grid": args.G_grid}
    return Table(meta, ("g_ratio", "big_g_ratio", "frac_below", "frac_above"), rows)


def cmd_polariton(args):
    if args.config is None:
        mc = polariton.default_microcavity()
    else:
        mc = polariton.load_microcavity_config(args.config)
    if args.delta_grid is None or args.n is None:
        raise InvalidParameterError("--delta-grid and --n are required")
    grid = parse_grid(args.delta_grid)
    sweep = polariton.detuning_sweep(mc, grid, args.n, freeze_kp=args.freeze_kp)
    rows = [
        (sweep.delta0[k], sweep.big_g_ratio[k], bool(sweep.supercritical[k]),
         bool(sweep.valid[k]))
        for k in range(len(sweep))
    ]
    meta = {"command": "polariton", "n_total": args.n, "grid": args.delta_grid,
            "e_exc": mc.e_exc, "rabi": mc.rabi,
            "cavity_curvature": mc.cavity_curvature, "freeze_kp": args.freeze_kp}
    return Table(meta, ("delta0", "big_g_ratio", "supercritical", "valid"), rows)


def build_parser():
    parser = _Parser(prog="trimode", description=__doc__)
    sub = parser.add_subparsers(dest="command")

    def add_common(p):
        p.add_argument("--out", required=True, help="output file path")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--no-timestamp", action="store_true",
                       help="omit the header timestamp for byte-identical reruns")

    p = sub.add_parser("spectrum", help="eigenvalues, populations, labels")
    p.add_argument("--n", type=int)
    p.add_argument("--g", type=float)
    p.add_argument("--G", type=float)
    add_common(p)

    p = sub.add_parser("spacings", help="adjacent level differences")
    p.add_argument("--n", type=int)
    p.add_argument("--g", type=float)
    p.add_argument("--G", type=float)
    add_common(p)

    p = sub.add_parser("ground-sweep", help="ground-state observables vs G/d")
    p.add_argument("--n", type=int)
    p.add_argument("--g", type=float)
    p.add_argument("--G-grid", dest="G_grid", help="start:stop:count")
    add_common(p)

    p = sub.add_parser("classical", help="phase-space analysis")
    p.add_argument("--gp", type=float)
    p.add_argument("--Gp", type=float)
    p.add_argument("--what", choices=("critical-points", "thresholds",
                                      "fractions", "level-set"),
                   default="critical-points")
    p.add_argument("--resolution", type=int, default=256)
    p.add_argument("--energy", type=float)
    p.add_argument("--samples", type=int, default=256)
    add_common(p)

    p = sub.add_parser("phase-diagram", help="boundary curves for several g/d")
    p.add_argument("--n", type=int)
    p.add_argument("--g", dest="g_list", type=_float_list,
                   help="comma-separated g/d values")
    p.add_argument("--G-grid", dest="G_grid", help="start:stop:count")
    add_common(p)

    p = sub.add_parser("polariton", help="detuning sweep of G/d")
    p.add_argument("--config", help="key = value microcavity file")
    p.add_argument("--n", type=int, help="total boson number for the threshold")
    p.add_argument("--delta-grid", dest="delta_grid", help="start:stop:count")
    p.add_argument("--freeze-kp", action="store_true",
                   help="solve the pump wavevector once and reuse it")
    add_common(p)
    return parser


_DISPATCH = {
    "spectrum": cmd_spectrum,
    "spacings": cmd_spacings,
    "ground-sweep": cmd_ground_sweep,
    "classical": cmd_classical,
    "phase-diagram": cmd_phase_diagram,
    "polariton": cmd_polariton,
}


def _fail(code, message):
    text = " ".join(str(message).split())
    sys.stderr.write(f"trimode: error: code={code}: {text}\n")
    return code


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and not argv[0].startswith("-") and argv[0] not in COMMANDS:
        return _fail(EXIT_USAGE, f"unknown command {argv[0]!r}")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        return _fail(EXIT_PARAMS, str(exc))
    if args.command is None:
        return _fail(EXIT_USAGE, "no command given; see trimode --help")
    try:
        table = _DISPATCH[args.command](args)
    except InvalidParameterError as exc:
        return _fail(EXIT_PARAMS, str(exc))
    except ComputationError as exc:
        return _fail(EXIT_COMPUTE, str(exc))
    except OSError as exc:
        return _fail(EXIT_IO, str(exc))
    renderer = render_json if args.format == "json" else render_csv
    try:
        _write_atomic(args.out, renderer(table, timestamp=not args.no_timestamp))
    except OSError as exc:
        return _fail(EXIT_IO, str(exc))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
