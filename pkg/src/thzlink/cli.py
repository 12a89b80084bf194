"""Command-line entry point.

Exit codes: 0 success, 1 input/parse error, 2 domain error, 3 I/O error.
Failures print one ``thzlink: error: code=<n> kind=<Name>: <message>``
line to stderr and nothing to stdout.
"""
import argparse
import math
import sys

from . import __version__
from .atmosphere import demo_table, find_windows, load_attenuation_table
from .capacity import PAPER_SNR_DB, SweepGrid, capacity_from_link, capacity_sweep, path_loss_grid, shannon_capacity
from .channel import CombinationMode, los_response, nlos_response, total_response, trace_specular_paths
from .errors import ParseError, ThzError
from .geometry import PathKind
from .io import atomic_write, format_number, load_scenario, to_csv, to_json
from .linkbudget import TABLE1_BUDGET, LinkBudget, friis_received_power, fspl_db


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(f"usage: {message}")


def _table(args):
    if args.table is None:
        return demo_table()
    try:
        return load_attenuation_table(args.table)
    except OSError as exc:
        raise _IOFailure(f"cannot read table {args.table!r}: {exc.strerror}") from None


class _IOFailure(ThzError):
    exit_code = 3


def _budget(args):
    return LinkBudget(
        tx_power=args.tx_power_dbm,
        tx_gain=args.tx_gain_dbi,
        rx_gain=args.rx_gain_dbi,
        distance=args.distance,
        frequency=args.frequency,
        noise_figure=args.noise_figure_db,
        noise_temperature=args.noise_temperature_k,
    )


def cmd_pathloss(args):
    return ["path_loss_db"], [[fspl_db(args.distance, args.frequency)]], ()


def cmd_friis(args):
    r = friis_received_power(_budget(args), args.bandwidth)
    cols = ["path_loss_db", "received_power_dbm", "noise_power_dbm", "snr_db"]
    return cols, [[r.path_loss, r.received_power, r.noise_power, r.snr]], ()


_PATH_COLS = ["kind", "reflector_index", "leg1_m", "leg2_m", "incidence_angle_rad", "magnitude", "magnitude_db"]


def _path_row(path, mag):
    mag_db = 20.0 * math.log10(mag) if mag > 0 else -math.inf
    return [path.kind, path.reflector_index, path.leg1, path.leg2, path.incidence_angle, mag, mag_db]


def cmd_los(args):
    scenario = load_scenario(args.scenario, _table(args))
    path, mag = los_response(scenario, args.frequency)
    return _PATH_COLS, [_path_row(path, mag)], _warnings(scenario)


def cmd_nlos(args):
    scenario = load_scenario(args.scenario, _table(args))
    rows = []
    for path in trace_specular_paths(scenario):
        if path.kind == PathKind.NLOS:
            rows.append(_path_row(path, nlos_response(scenario, path, args.frequency)))
    if args.combine:
        resp = total_response(scenario, args.frequency, args.combine)
        rows.append(["TOTAL", None, None, None, None, resp.combined_magnitude,
                     20.0 * math.log10(resp.combined_magnitude)])
    return _PATH_COLS, rows, _warnings(scenario)


def _warnings(scenario):
    msg = scenario.attenuation.state_warning(scenario.atmosphere)
    return (msg,) if msg else ()


def cmd_capacity(args):
    if args.snr_db is not None:
        return ["snr_db", "capacity_bps"], [[args.snr_db, shannon_capacity(args.bandwidth, args.snr_db)]], ()
    result, cap = capacity_from_link(_budget(args), args.bandwidth)
    return ["snr_db", "capacity_bps"], [[result.snr, cap]], ()


def cmd_sweep(args):
    d0, d1, dn = args.distance_range
    f0, f1, fn = args.frequency_range
    grid = SweepGrid.from_ranges(d0, d1, int(dn), f0, f1, int(fn))
    if args.quantity == "pathloss":
        rows = path_loss_grid(grid)
        return ["distance_m", "frequency_hz", "path_loss_db"], [list(r) for r in rows], ()
    snr = None if args.derive_snr else args.snr_db
    rows = capacity_sweep(_budget(args), grid, args.bandwidth, snr)
    return ["distance_m", "frequency_hz", "capacity_bps"], [list(r) for r in rows], ()


def cmd_windows(args):
    wins = find_windows(_table(args), args.threshold)
    cols = ["low_hz", "high_hz", "center_hz", "min_attenuation_db_per_km"]
    return cols, [[w.low, w.high, w.center, w.min_attenuation] for w in wins], ()


def _add_link_flags(p, distance=True):
    p.add_argument("--tx-power-dbm", type=float, default=TABLE1_BUDGET.tx_power)
    p.add_argument("--tx-gain-dbi", type=float, default=TABLE1_BUDGET.tx_gain)
    p.add_argument("--rx-gain-dbi", type=float, default=TABLE1_BUDGET.rx_gain)
    if distance:
        p.add_argument("--distance", type=float, default=TABLE1_BUDGET.distance, help="meters")
        p.add_argument("--frequency", type=float, default=TABLE1_BUDGET.frequency, help="Hz")
    p.add_argument("--noise-figure-db", type=float, default=0.0)
    p.add_argument("--noise-temperature-k", type=float, default=290.0)
    p.add_argument("--bandwidth", type=float, default=40e9, help="Hz")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--table", help="attenuation CSV (default: bundled synthetic demo table)")
    common.add_argument("--output", help="output file (default: stdout)")
    common.add_argument("--format", choices=["text", "csv", "json"], default="text")

    parser = _Parser(prog="thzlink", description="THz link budget and channel model")
    parser.add_argument("--version", action="version", version=f"thzlink {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("pathloss", parents=[common], help="free-space path loss (dB)")
    p.add_argument("--distance", type=float, required=True, help="meters")
    p.add_argument("--frequency", type=float, required=True, help="Hz")
    p.set_defaults(func=cmd_pathloss)

    p = sub.add_parser("friis", parents=[common], help="received power, noise and SNR")
    _add_link_flags(p)
    p.set_defaults(func=cmd_friis)

    for name, func, doc in (("los", cmd_los, "line-of-sight magnitude"), ("nlos", cmd_nlos, "reflected path magnitudes")):
        p = sub.add_parser(name, parents=[common], help=doc)
        p.add_argument("--scenario", required=True, help="scenario JSON file")
        p.add_argument("--frequency", type=float, required=True, help="Hz")
        if name == "nlos":
            p.add_argument("--combine", choices=[m.value for m in CombinationMode],
                           help="append a TOTAL row combining LOS and NLOS paths")
        p.set_defaults(func=func)

    p = sub.add_parser("capacity", parents=[common], help="Shannon capacity (bit/s)")
    p.add_argument("--snr-db", type=float, help="fixed SNR; omit to derive it from the link flags")
    _add_link_flags(p)
    p.set_defaults(func=cmd_capacity)

    p = sub.add_parser("sweep", parents=[common], help="path-loss or capacity grid")
    p.add_argument("--quantity", choices=["pathloss", "capacity"], default="pathloss")
    p.add_argument("--distance-range", type=float, nargs=3, metavar=("START", "STOP", "NUM"),
                   default=[0.1, 10.0, 21], help="log-spaced, meters")
    p.add_argument("--frequency-range", type=float, nargs=3, metavar=("START", "STOP", "NUM"),
                   default=[280e9, 320e9, 9], help="linear, Hz")
    p.add_argument("--snr-db", type=float, default=PAPER_SNR_DB)
    p.add_argument("--derive-snr", action="store_true", help="derive SNR per cell from the link flags")
    _add_link_flags(p, distance=False)
    p.set_defaults(func=cmd_sweep, distance=1.0, frequency=300e9)

    p = sub.add_parser("windows", parents=[common], help="low-absorption transmission windows")
    p.add_argument("--threshold", type=float, required=True, help="dB/km")
    p.set_defaults(func=cmd_windows)
    return parser


# column printed alone by ``--format text`` for single-row results
HEADLINE = {
    "pathloss": "path_loss_db",
    "friis": "received_power_dbm",
    "los": "magnitude",
    "capacity": "capacity_bps",
}


def render(columns, rows, fmt, warnings=(), headline=None):
    """Serialise a result table. Text format is the bare headline value for
    single-row results and CSV otherwise."""
    if fmt == "json":
        return to_json(columns, rows, warnings)
    if fmt == "text" and headline in columns and len(rows) == 1:
        return format_number(rows[0][columns.index(headline)]) + "\n"
    return to_csv(columns, rows)


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        columns, rows, warnings = args.func(args)
        text = render(columns, rows, args.format, warnings, HEADLINE.get(args.command))
        if args.output:
            try:
                atomic_write(args.output, text)
            except OSError as exc:
                raise _IOFailure(f"cannot write {args.output!r}: {exc.strerror}") from None
        else:
            sys.stdout.write(text)
        for w in warnings:
            print(f"thzlink: warning: {w}", file=sys.stderr)
        return 0
    except ThzError as exc:
        print(f"thzlink: error: code={exc.exit_code} kind={type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
