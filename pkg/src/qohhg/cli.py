"""Command-line front end.

Usage:
    qohhg modes                              # mode count for the default experiment
    qohhg dress --omega-ev 1.5 --p-eps 1e-19
    qohhg dmatrix --k 1 --n 0 --gamma 0.5
    qohhg superpose --alpha 1.2 --beta 1.0 --gamma 0.4 --m 2
    qohhg lattice --radius 3 --dim 8
    qohhg potential --n1 399 --n0 400 > profiles.csv
    qohhg spectrum --max-order 25 > spectrum.csv
    qohhg selftest

Every subcommand also reads ``--config file.json``, whose keys are the
long option names with dashes replaced by underscores; flags given on the
command line win.  JSON documents carry ``schema`` and the resolved
``config``; CSV output starts with one ``#`` line holding the same record.

Exit codes: 0 success, 1 invalid arguments, 2 numerical-domain error,
3 selftest failure.  Errors print one JSON line on stderr.
"""

import argparse
import csv
import io
import json
import math
import sys
import warnings

import numpy as np

from . import __version__
from .exceptions import NumericalDomainError

SCHEMA = "qohhg-cli/1"
JSON_DIGITS = 12
CSV_DIGITS = 9

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_SELFTEST = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _round(x, digits=JSON_DIGITS):
    if x == 0 or not math.isfinite(x):
        return x
    return float(f"{x:.{digits}g}")


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        if not math.isfinite(v):
            return None
        return _round(v)
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": _round(float(obj.real)), "im": _round(float(obj.imag))}
    return obj


def _dump_json(command, config, result):
    doc = {"schema": SCHEMA, "version": __version__, "command": command,
           "config": config, "result": result}
    return json.dumps(_jsonable(doc), indent=2) + "\n"


def _fmt_csv(v):
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    if isinstance(v, str):
        return v
    return f"{float(v):.{CSV_DIGITS}g}"


def _dump_csv(command, config, header, rows, notes=None):
    buf = io.StringIO()
    meta = {"schema": SCHEMA, "version": __version__, "command": command, "config": config}
    if notes:
        meta["warnings"] = list(notes)
    buf.write("# " + json.dumps(_jsonable(meta), separators=(",", ":")) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt_csv(v) for v in row])
    return buf.getvalue()


def _complex(text):
    try:
        return complex(str(text).replace(" ", "").replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}")


# defaults per subcommand; the resolved config is these, then the file, then flags
DEFAULTS = {
    "modes": {"intensity": 3e13, "wavelength": 0.8, "pulse_duration": 35.0,
              "electron_density": 1e18, "target_area": 0.5e-2, "solid_angle": 1.24e-3},
    "dress": {"omega_ev": 1.5, "electron_density": 1e18, "p_eps": 0.0, "intensity": 3e13,
              "harmonic_order": 1, "matrix_check": True},
    "dmatrix": {"k": 1, "n": 0, "gamma": "0.5", "check": False},
    "superpose": {"alpha": "1.0", "beta": "1.0", "gamma": "0.0", "m": 0, "nodes": None},
    "lattice": {"radius": 2, "dim": 8},
    "potential": {"box_half_width": 60.0, "n_points": 1200, "softening": 1.0, "n1": 399,
                  "n0": 400, "scale": None, "alpha0": None, "phase": math.pi / 2,
                  "envelope": 1.0},
    "spectrum": {"box_half_width": 60.0, "n_points": 1200, "softening": 1.0, "n0": 400,
                 "max_order": 25, "omega_tilde": None, "scale": None, "gamma_width": 0.005,
                 "initial_state": 0, "final_state": 0, "format": "csv", "diagnostics": False},
    "selftest": {"quick": False},
}


def _add_common(p):
    p.add_argument("--config", help="JSON file with parameter values")
    p.add_argument("--output", "-o", help="write to this file instead of stdout")


def build_parser():
    parser = _Parser(prog="qohhg", description="Quantized-field high-harmonic numerics.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("modes", help="spatial and temporal mode counts")
    _add_common(p)
    p.add_argument("--intensity", type=float, help="W/cm^2")
    p.add_argument("--wavelength", type=float, help="microns")
    p.add_argument("--pulse-duration", type=float, help="fs")
    p.add_argument("--electron-density", type=float, help="cm^-3")
    p.add_argument("--target-area", type=float, help="cm^2")
    p.add_argument("--solid-angle", type=float, help="sr")

    p = sub.add_parser("dress", help="dressed parameters of one mode")
    _add_common(p)
    p.add_argument("--omega-ev", type=float, help="photon energy, eV")
    p.add_argument("--electron-density", type=float, help="cm^-3")
    p.add_argument("--p-eps", type=float, help="momentum along polarization, g cm/s")
    p.add_argument("--intensity", type=float, help="W/cm^2")
    p.add_argument("--harmonic-order", type=int, help="order for the blue-shift figure")
    p.add_argument("--matrix-check", action=argparse.BooleanOptionalAction, default=None)

    p = sub.add_parser("dmatrix", help="single element <k|D(gamma)|n>")
    _add_common(p)
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--gamma", type=str, help="complex, e.g. 0.5+0.3j")
    p.add_argument("--check", action=argparse.BooleanOptionalAction, default=None,
                   help="compare against the truncated matrix exponential")

    p = sub.add_parser("superpose", help="coherent superposition by three routes")
    _add_common(p)
    p.add_argument("--alpha", type=str)
    p.add_argument("--beta", type=str)
    p.add_argument("--gamma", type=str)
    p.add_argument("--m", type=int)
    p.add_argument("--nodes", type=int)

    p = sub.add_parser("lattice", help="von Neumann lattice frame")
    _add_common(p)
    p.add_argument("--radius", type=int)
    p.add_argument("--dim", type=int)

    for name, helptext in (("potential", "effective-potential profiles (CSV)"),
                           ("spectrum", "harmonic spectrum")):
        p = sub.add_parser(name, help=helptext)
        _add_common(p)
        p.add_argument("--box-half-width", type=float, help="a.u.")
        p.add_argument("--n-points", type=int)
        p.add_argument("--softening", type=float, help="a.u.")
        p.add_argument("--n0", type=int)
        p.add_argument("--scale", type=float, help="displacement scale s, a.u.")
    pot = sub.choices["potential"]
    pot.add_argument("--n1", type=int)
    pot.add_argument("--alpha0", type=float, help="classical amplitude, a.u.")
    pot.add_argument("--phase", type=float, help="rad")
    pot.add_argument("--envelope", type=float)
    spectrum_p = sub.choices["spectrum"]
    spectrum_p.add_argument("--max-order", type=int)
    spectrum_p.add_argument("--omega-tilde", type=float, help="dressed laser frequency, a.u.")
    spectrum_p.add_argument("--gamma-width", type=float, help="continuum width, a.u.")
    spectrum_p.add_argument("--initial-state", type=int)
    spectrum_p.add_argument("--final-state", type=int)
    spectrum_p.add_argument("--format", choices=["csv", "json"])
    spectrum_p.add_argument("--diagnostics", action=argparse.BooleanOptionalAction, default=None)

    p = sub.add_parser("selftest", help="run the oracle-equivalence checks")
    _add_common(p)
    p.add_argument("--quick", action=argparse.BooleanOptionalAction, default=None)
    return parser


def resolve_config(command, args):
    cfg = dict(DEFAULTS[command])
    if args.config:
        try:
            with open(args.config) as fh:
                loaded = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}")
        unknown = set(loaded) - set(cfg)
        if unknown:
            raise UsageError(f"unknown config keys for {command}: {sorted(unknown)}")
        cfg.update(loaded)
    for key in cfg:
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    return cfg


def _cmd_modes(cfg):
    from .dressing import FieldConfig, mode_count
    from . import units
    try:
        fc = FieldConfig(**cfg)
    except ValueError as exc:
        raise UsageError(str(exc))
    counts = mode_count(fc)
    lam = fc.wavelength * units.MICRON_CM
    return {"spatial": counts.spatial, "temporal": counts.temporal,
            "spatial_unrounded": fc.target_area / lam ** 2 * fc.solid_angle,
            "cycles": fc.pulse_duration * units.FS * units.C_LIGHT / lam}


def _cmd_dress(cfg):
    from . import dressing, units
    if not cfg["omega_ev"] > 0:
        raise UsageError("omega_ev must be positive")
    omega = units.omega_from_ev(cfg["omega_ev"])
    mode, diag = dressing.diagonalize_mode(omega, cfg["electron_density"], cfg["p_eps"],
                                           cfg["intensity"], matrix_check=cfg["matrix_check"])
    return {
        "mode": mode.to_dict(),
        "plasmon_energy_ev": units.ev_from_omega(dressing.plasma_frequency(cfg["electron_density"])),
        "relative_shift": mode.omega_tilde / mode.omega - 1.0,
        "harmonic_blue_shift_ev": dressing.harmonic_blue_shift(omega, mode.beta,
                                                               cfg["harmonic_order"]),
        "ponderomotive_shift_ev": dressing.ponderomotive_shift(mode.mu),
        "alpha0_bohr": units.cm_to_au(mode.alpha0),
        "diagnostics": diag,
    }


def _cmd_dmatrix(cfg):
    from .displacement import displacement_element
    from .fock import default_dim, displacement_matrix
    k, n = cfg["k"], cfg["n"]
    if k < 0 or n < 0:
        raise UsageError("k and n must be non-negative")
    gamma = _complex(cfg["gamma"])
    val = displacement_element(k, n, gamma)
    out = {"value": val, "abs": abs(val)}
    if cfg["check"]:
        dim = max(default_dim(gamma), k + 1, n + 1) + 32
        ref = complex(displacement_matrix(gamma, dim).entries[k, n])
        out["matrix_exponential"] = ref
        out["abs_difference"] = abs(ref - val)
    return out


def _cmd_superpose(cfg):
    from .displacement import (SuperpositionQuery, fourier_trajectory_element, overlap_prefactor,
                               superposition_bruteforce, superposition_closed)
    q = SuperpositionQuery(_complex(cfg["alpha"]), _complex(cfg["beta"]),
                           _complex(cfg["gamma"]), cfg["m"])
    brute = superposition_bruteforce(q)
    closed = superposition_closed(q)
    pref = overlap_prefactor(q.alpha, q.beta, q.gamma)
    traj = pref * fourier_trajectory_element(q, q.m, cfg["nodes"])
    return {"bruteforce": brute, "closed": closed, "trajectory": traj,
            "max_pairwise_difference": max(abs(brute - closed), abs(brute - traj),
                                           abs(closed - traj))}


def _cmd_lattice(cfg):
    from .lattice import build_frame, completeness_residual, overlap_magnitudes
    try:
        frame = build_frame(cfg["radius"])
    except ValueError as exc:
        if isinstance(exc, NumericalDomainError):
            raise
        raise UsageError(str(exc))
    if not 1 <= cfg["dim"] <= 40:
        raise UsageError("dim must be in [1, 40]")
    return {
        "indices": [list(ix) for ix in frame.indices],
        "points": frame.points,
        "gram": frame.gram,
        "dual": frame.dual,
        "eig_range": list(frame.eig_range),
        "biorthogonality": frame.biorthogonality,
        "completeness_residual": completeness_residual(frame, cfg["dim"]),
        "nearest_neighbour": overlap_magnitudes(1, 0),
        "next_nearest_neighbour": overlap_magnitudes(1, 1),
    }


def _atom(cfg):
    from .potential import build_model_atom
    try:
        return build_model_atom(cfg["box_half_width"], cfg["n_points"], cfg["softening"])
    except ValueError as exc:
        if isinstance(exc, NumericalDomainError):
            raise
        raise UsageError(str(exc))


def _cmd_potential(cfg):
    from .kh import DEFAULT_ALPHA0
    from .potential import photon_sector_potential, scale_from_amplitude, semiclassical_veff
    atom = _atom(cfg)
    alpha0 = cfg["alpha0"] if cfg["alpha0"] is not None else DEFAULT_ALPHA0
    scale = cfg["scale"] if cfg["scale"] is not None else scale_from_amplitude(alpha0, cfg["n0"])
    cfg["alpha0"], cfg["scale"] = alpha0, scale
    sector = photon_sector_potential(atom, cfg["n1"], cfg["n0"], scale).values
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        semi = semiclassical_veff(atom, alpha0, cfg["phase"], cfg["envelope"])
    rows = [("sector", x, v.real, v.imag) for x, v in zip(atom.x, sector)]
    rows += [("semiclassical", x, v, 0.0) for x, v in zip(atom.x, semi)]
    return ["profile", "x", "real", "imag"], rows, [str(w.message) for w in caught]


def _cmd_spectrum(cfg):
    from .kh import DEFAULT_OMEGA_TILDE, DEFAULT_SCALE, KHQuery, hhg_spectrum
    atom = _atom(cfg)
    if cfg["omega_tilde"] is None:
        cfg["omega_tilde"] = DEFAULT_OMEGA_TILDE
    if cfg["scale"] is None:
        cfg["scale"] = DEFAULT_SCALE
    try:
        q = KHQuery(atom, n0=cfg["n0"], n1=cfg["n0"] - 1, laser_omega_tilde=cfg["omega_tilde"],
                    scale=cfg["scale"], gamma_width=cfg["gamma_width"],
                    initial_state_index=cfg["initial_state"], final_state_index=cfg["final_state"])
    except ValueError as exc:
        raise UsageError(str(exc))
    out = hhg_spectrum(q, cfg["max_order"], diagnostics=cfg["diagnostics"])
    rows, diags = (out if cfg["diagnostics"] else (out, None))
    return rows, diags


def run(argv=None, stdout=None, stderr=None):
    """Execute one CLI invocation and return the exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        command = args.command
        cfg = resolve_config(command, args)
        if command == "selftest":
            from .selftest import run_selftest
            ok = run_selftest(quick=cfg["quick"], stream=stdout)
            return EXIT_OK if ok else EXIT_SELFTEST
        if command == "potential":
            header, rows, notes = _cmd_potential(cfg)
            text = _dump_csv(command, cfg, header, rows, notes)
        elif command == "spectrum":
            rows, diags = _cmd_spectrum(cfg)
            if cfg["format"] == "json":
                result = {"rows": [r.as_dict() for r in rows]}
                if diags is not None:
                    result["diagnostics"] = diags
                text = _dump_json(command, cfg, result)
            else:
                header = ["order", "omega_prime", "reA", "imA", "reB", "imB", "intensity"]
                body = [[r.as_dict()[h] for h in header] for r in rows]
                text = _dump_csv(command, cfg, header, body)
        else:
            handler = {"modes": _cmd_modes, "dress": _cmd_dress, "dmatrix": _cmd_dmatrix,
                       "superpose": _cmd_superpose, "lattice": _cmd_lattice}[command]
            try:
                result = handler(cfg)
            except (TypeError, KeyError) as exc:
                raise UsageError(f"bad parameter: {exc}")
            text = _dump_json(command, cfg, result)
        if args.output:
            with open(args.output, "w") as fh:
                fh.write(text)
        else:
            stdout.write(text)
        return EXIT_OK
    except UsageError as exc:
        stderr.write(json.dumps({"error": "usage", "message": str(exc), "exit_code": EXIT_USAGE})
                     + "\n")
        return EXIT_USAGE
    except argparse.ArgumentTypeError as exc:
        stderr.write(json.dumps({"error": "usage", "message": str(exc), "exit_code": EXIT_USAGE})
                     + "\n")
        return EXIT_USAGE
    except NumericalDomainError as exc:
        stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc),
                                 "exit_code": EXIT_DOMAIN}) + "\n")
        return EXIT_DOMAIN
    except ValueError as exc:
        stderr.write(json.dumps({"error": "usage", "message": str(exc), "exit_code": EXIT_USAGE})
                     + "\n")
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
