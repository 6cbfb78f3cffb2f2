"""Command-line front end: ``cavlink <command> [options]``.

Commands
--------
collect           P1 versus cavity length at fixed finesse for several radii.
receiver-curves   Receiver efficiency and infidelity versus cooperativity.
advantage         DIT/CPF success-probability advantage over type-II on an (R, L_B) grid.
rates             Heralded success rates versus bad loss for a timing scenario.
oracle            Analytic-versus-integration checks (JSON report).
optimize          Role-optimal cavity construction (JSON).
transitions       The bundled transition registry.

Every command accepts ``--config FILE`` (TOML, one table per command),
repeatable ``--set KEY=VALUE`` overrides (dotted keys address axis fields,
e.g. ``--set R_um.count=10``), ``--output PATH`` (stdout if omitted) and
``--jobs N``.  CSV outputs start with ``#``-prefixed metadata lines (tool
version, config hash, column units, bin-width convention) followed by a header
row.  Rates in configuration keys and outputs are quoted as frequencies
(``_MHz`` = rate/2π).

Exit codes: 0 success, 2 configuration error, 3 oracle tolerance failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import __version__, _toml
from .errors import CavlinkError, ConfigurationError
from .sweeps import COLUMN_UNITS, COMMANDS, RUNNERS, Table, config_hash, resolve_config

EXIT_OK, EXIT_CONFIG, EXIT_ORACLE = 0, 2, 3

_HELP = {
    "collect": "P1 versus length at fixed finesse (keys: R_mm, finesse, h_ion_um, wavelength_nm, "
               "dipole_ea0, linewidth_MHz, left_fraction, n_points)",
    "receiver-curves": "P_t, P_r and infidelities versus cooperativity (keys: C, include_C)",
    "advantage": "advantage map over R_um x loss_bad_ppm (keys: protocol, modality, F_min, h_ion_um, "
                 "R_um, loss_bad_ppm, p_ex, p_half, p_det, xi)",
    "rates": "success rates versus loss_bad_ppm (keys: scenario, modalities, protocols, F_min, R_um, "
             "h_ion_um, loss_bad_ppm, bin_convention, bandwidth_pad, p_ex, p_half, p_det, xi)",
    "oracle": "time-domain oracle report (keys: n_points, seed, sampling, rate_min_MHz, rate_max_MHz, "
              "s_over_K, tolerance_P1, scatter, scatter_detunings_MHz, sigma_over_kappa, band_sigmas, "
              "n_freq, tolerance_coeff)",
    "optimize": "role-optimal construction as JSON (keys: role, modality, transition, loss_bad_ppm, "
                "R_min_um, h_ion_um, F_min, bandwidth_pad, length_policy)",
    "transitions": "list the transition registry",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cavlink", description=__doc__.split("\n")[0],
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=f"cavlink {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    for name in COMMANDS:
        p = sub.add_parser(name, help=_HELP[name], description=_HELP[name])
        p.add_argument("--config", metavar="FILE", help="TOML configuration file")
        p.add_argument("--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE",
                       help="override one configuration key (repeatable)")
        p.add_argument("--output", "-o", metavar="PATH", help="output file (default: stdout)")
        p.add_argument("--jobs", "-j", type=int, default=1, metavar="N",
                       help="worker processes for grid evaluation (row order is unaffected)")
    return parser


def _cell(value) -> str:
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return ""
    if isinstance(value, float):
        return "nan" if math.isnan(value) else repr(value)
    return str(value)


def format_csv(command: str, config: dict, table: Table) -> str:
    """Render a table with its metadata header."""
    buf = io.StringIO()
    buf.write(f"# cavlink {__version__} {command}\n")
    buf.write(f"# config_sha256: {config_hash(command, config)}\n")
    units = "; ".join(f"{c}={COLUMN_UNITS[c]}" for c in table.columns if c in COLUMN_UNITS)
    buf.write(f"# units: {units or 'dimensionless'}; rates quoted as rate/2pi\n")
    buf.write(f"# s_o_convention: {config.get('bin_convention', 'K')}\n")
    for note in table.notes:
        buf.write(f"# note: {note}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(table.columns)
    for row in table.rows:
        w.writerow([_cell(v) for v in row])
    return buf.getvalue()


def _json_default(obj):
    if isinstance(obj, np.generic):
        return obj.item()
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _load_document(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            return _toml.loads(fh.read())
    except OSError as exc:
        raise ConfigurationError(f"cannot read config {path!r}: {exc}") from None
    except _toml.TOMLDecodeError as exc:
        raise ConfigurationError(f"invalid TOML in {path!r}: {exc}") from None


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.jobs < 1:
            raise ConfigurationError("--jobs must be ≥ 1")
        config = resolve_config(args.command, _load_document(args.config), args.overrides)
        result = RUNNERS[args.command](config, jobs=args.jobs)
    except (ConfigurationError, CavlinkError, KeyError) as exc:
        print(f"cavlink {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    if args.command == "oracle":
        report = {"version": __version__, "config_sha256": config_hash("oracle", config), **result}
        _emit(json.dumps(report, indent=2, sort_keys=True, default=_json_default) + "\n", args.output)
        if not result["pass"]:
            print(f"cavlink oracle: {result['n_fail']} point(s) outside tolerance "
                  f"(max |dP1| = {result['max_dev_P1']:.3g}, max coefficient deviation = "
                  f"{result['max_dev_coeff']:.3g})", file=sys.stderr)
            return EXIT_ORACLE
        return EXIT_OK
    if args.command == "optimize":
        _emit(result.to_json(indent=2, sort_keys=True, default=_json_default) + "\n", args.output)
        return EXIT_OK
    _emit(format_csv(args.command, config, result), args.output)
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
