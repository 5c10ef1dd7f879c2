"""Command-line front end.

Subcommands: spectrum, dynamics, landscape, husimi, hom.  A run is
configured by an optional JSON file (--config) plus flag overrides (flags
win), validated up front with field-path diagnostics.  Data is emitted as
deterministic CSV ('#' comment header, 17-significant-digit floats) or
JSON; when writing to a file, a matplotlib rendering of the same table is
saved alongside unless --no-plot is given.

Exit codes: 0 success, 2 configuration error, 3 size/oracle bound exceeded.
"""

import argparse
import copy
import json
import os
import sys

import numpy as np

from . import __version__
from .core import (
    ModelParams,
    energy_level,
    gap_to_ground,
    ground_index,
    level_values,
    m1_offset,
    neighbor_gap,
    quasi_ground_set,
    spectrum,
)
from .dynamics import extract_period, overlap_exact, overlap_series
from .errors import (
    ConfigError,
    DomainError,
    InsufficientDataError,
    RegimeError,
    ResourceLimitError,
    StateValidationError,
)
from .hom import (
    DEFAULT_SIZE_BOUND,
    apply_hom,
    compose,
    parity_distribution,
    sample_shots,
)
from .meanfield import landscape_grid, minimum_locus
from .phasespace import husimi
from .report import render_csv, render_json, write_report
from .states import (
    double_gaussian_state,
    sx_eigenbasis,
    to_fock,
    two_level_state,
)
from .dynamics import evolve_phase

QUASI_DELTA = 0.25  # manifold half-width exponent used by the spectrum report

DEFAULT_CONFIG = {
    "model": {"n": None, "gamma": None},
    "state": {"kind": "double_gaussian", "sigma": 1.0, "m1_offset": None,
              "log_base": None},
    "time": {"t_max": None, "samples": None},
    "grid": {"nq": 200, "np": 200},
    "hom": {"shots": 10000, "seed": 1234},
    "husimi": {"level_offset": 0},
    "output": {"path": "-", "format": "csv"},
    "threads": None,
}


def _deep_update(base, extra):
    for key, val in extra.items():
        if isinstance(val, dict) and isinstance(base.get(key), dict):
            _deep_update(base[key], val)
        else:
            base[key] = val


def _require(cond, field, message):
    if not cond:
        raise ConfigError(field, message)


def resolve_config(args):
    """Merge defaults, config file, and flag overrides into one dict."""
    cfg = copy.deepcopy(DEFAULT_CONFIG)
    if args.config:
        try:
            with open(args.config) as fh:
                loaded = json.load(fh)
        except OSError as exc:
            raise ConfigError("config", f"cannot read {args.config}: {exc}")
        except json.JSONDecodeError as exc:
            raise ConfigError("config", f"{args.config} is not valid JSON: {exc}")
        if not isinstance(loaded, dict):
            raise ConfigError("config", "top level must be a JSON object")
        for key in loaded:
            if key not in cfg:
                raise ConfigError(key, "unknown configuration section")
        _deep_update(cfg, loaded)

    overrides = {
        ("model", "n"): args.n,
        ("model", "gamma"): args.gamma,
        ("state", "kind"): args.kind,
        ("state", "sigma"): args.sigma,
        ("state", "m1_offset"): args.offset,
        ("state", "log_base"): args.log_base,
        ("time", "t_max"): args.t_max,
        ("time", "samples"): args.samples,
        ("grid", "nq"): args.nq,
        ("grid", "np"): args.np_,
        ("hom", "shots"): args.shots,
        ("hom", "seed"): args.seed,
        ("husimi", "level_offset"): args.level_offset,
        ("output", "path"): args.out,
        ("output", "format"): args.format,
    }
    for (section, key), val in overrides.items():
        if val is not None:
            cfg[section][key] = val

    threads = args.threads
    if threads is None:
        env = os.environ.get("LOGCRYSTAL_THREADS")
        if env is not None:
            try:
                threads = int(env)
            except ValueError:
                raise ConfigError("threads", f"LOGCRYSTAL_THREADS={env!r} is not an integer")
    cfg["threads"] = 1 if threads is None else threads
    cfg["plot"] = {"on": True, "off": False, "auto": cfg["output"]["path"] != "-"}[args.plot]
    return cfg


def validate_config(cfg, command):
    """Check every module precondition the command will rely on."""
    mdl = cfg["model"]
    _require(mdl["n"] is not None, "model.n", "required (or --n)")
    _require(mdl["gamma"] is not None, "model.gamma", "required (or --gamma)")
    _require(isinstance(mdl["n"], int) and mdl["n"] >= 2, "model.n",
             f"must be an integer >= 2, got {mdl['n']!r}")
    _require(isinstance(mdl["gamma"], (int, float)) and mdl["gamma"] > 0,
             "model.gamma", f"must be > 0, got {mdl['gamma']!r}")
    params = ModelParams(mdl["n"], float(mdl["gamma"]))

    out = cfg["output"]
    _require(out["format"] in ("csv", "json"), "output.format",
             f"must be 'csv' or 'json', got {out['format']!r}")
    _require(isinstance(out["path"], str) and out["path"], "output.path",
             "must be a non-empty string ('-' for stdout)")
    _require(isinstance(cfg["threads"], int) and cfg["threads"] >= 1,
             "threads", f"must be an integer >= 1, got {cfg['threads']!r}")

    if command in ("dynamics", "hom"):
        st = cfg["state"]
        _require(st["kind"] in ("two_level", "double_gaussian"), "state.kind",
                 f"must be 'two_level' or 'double_gaussian', got {st['kind']!r}")
        if st["m1_offset"] is None:
            st["m1_offset"] = m1_offset(params, st["log_base"])
        _require(isinstance(st["m1_offset"], int) and st["m1_offset"] != 0,
                 "state.m1_offset", "must be a nonzero integer")
        m1 = ground_index(params) - st["m1_offset"]
        _require(abs(m1) <= params.spin, "state.m1_offset",
                 f"puts the partner level m1={m1} outside the spectrum")
        if st["kind"] == "double_gaussian":
            _require(st["sigma"] > 0, "state.sigma", "must be > 0")
            _require(st["sigma"] <= abs(st["m1_offset"]) / 3.0, "state.sigma",
                     f"must be <= |offset|/3 = {abs(st['m1_offset'])/3.0:g}")
            if command == "dynamics":
                _require(params.degenerate, "model.gamma",
                         "closed-form columns need gamma > 1/2")
        tm = cfg["time"]
        nominal = 2.0 * np.pi / max(gap_to_ground(params, m1), 1e-300)
        if tm["t_max"] is None:
            tm["t_max"] = 10.0 * nominal
        if tm["samples"] is None:
            tm["samples"] = int(np.ceil(256.0 * tm["t_max"] / nominal)) + 1
        _require(tm["t_max"] > 0, "time.t_max", "must be > 0")
        _require(isinstance(tm["samples"], int) and tm["samples"] >= 2,
                 "time.samples", "must be an integer >= 2")

    if command in ("landscape", "husimi"):
        grid = cfg["grid"]
        for key in ("nq", "np"):
            _require(isinstance(grid[key], int) and grid[key] >= 16,
                     f"grid.{key}", "must be an integer >= 16")

    if command == "husimi":
        off = cfg["husimi"]["level_offset"]
        _require(isinstance(off, int), "husimi.level_offset", "must be an integer")
        m = ground_index(params) - off
        _require(abs(m) <= params.spin, "husimi.level_offset",
                 f"level m={m} outside the spectrum")

    if command == "hom":
        hm = cfg["hom"]
        _require(isinstance(hm["shots"], int) and hm["shots"] >= 1,
                 "hom.shots", "must be an integer >= 1")
        _require(isinstance(hm["seed"], int), "hom.seed", "must be an integer")
        if params.n_particles > DEFAULT_SIZE_BOUND:
            raise ResourceLimitError(
                f"model.n={params.n_particles} exceeds the exact two-copy bound "
                f"{DEFAULT_SIZE_BOUND}; the composite state needs (N+1)^2 amplitudes "
                "and per-sector mixing tables up to dimension 2N+1. Reduce n.")
    return params


def _header_lines(command, cfg):
    shown = {k: v for k, v in cfg.items() if k != "plot"}
    return [
        f"logcrystal {__version__}",
        f"command: {command}",
        "config: " + json.dumps(shown, sort_keys=True),
    ]


def _emit(cfg, command, columns, rows, footer=None):
    header = _header_lines(command, cfg)
    if cfg["output"]["format"] == "csv":
        text = render_csv(columns, rows, header, footer)
    else:
        text = render_json(columns, rows, header, footer)
    write_report(cfg["output"]["path"], text)


def _figure_path(cfg):
    path = cfg["output"]["path"]
    if not cfg["plot"] or path == "-":
        return None
    stem, _ = os.path.splitext(path)
    return stem + ".png"


# ---------------------------------------------------------------- commands

def cmd_spectrum(cfg, params):
    spec = spectrum(params)
    if params.degenerate:
        quasi = quasi_ground_set(params, QUASI_DELTA)
    else:
        quasi = {spec.m0}
    rows = []
    for m, e in zip(spec.m, spec.energies):
        gap = neighbor_gap(params, m) if m > -params.spin else float("nan")
        rows.append((
            float(m), float(e), gap,
            float(e - energy_level(params, spec.m0)),
            bool(m in quasi),
        ))
    _emit(cfg, "spectrum", ["m", "E_m", "neighbor_gap", "gap_to_ground", "in_quasi_set"], rows)
    fig = _figure_path(cfg)
    if fig:
        from .figures import save_spectrum_figure
        save_spectrum_figure(fig, spec.m, spec.energies,
                             [m in quasi for m in spec.m], spec.m0)
    return 0


def cmd_dynamics(cfg, params):
    st, tm = cfg["state"], cfg["time"]
    times = np.linspace(0.0, float(tm["t_max"]), tm["samples"])
    series = overlap_series(params, times, kind=st["kind"], sigma=st["sigma"],
                            m1_offset_=st["m1_offset"], threads=cfg["threads"])
    rows = []
    for i, t in enumerate(series.t):
        ex, cf = series.exact[i], series.closed_form[i]
        rows.append((
            float(t), ex.real, ex.imag, abs(ex) ** 2,
            cf.real, cf.imag, abs(cf) ** 2,
            float(series.period[i]), float(series.width[i]),
            abs(series.amplitude[i]),
        ))
    footer = {}
    try:
        footer["period"] = extract_period(series)
    except InsufficientDataError as exc:
        footer["period"] = None
        footer["warning"] = str(exc)
        print(f"warning: {exc}", file=sys.stderr)
    columns = ["t", "re_exact", "im_exact", "abs2_exact", "re_cf", "im_cf",
               "abs2_cf", "T_of_t", "Sigma_of_t", "absA"]
    _emit(cfg, "dynamics", columns, rows, footer)
    fig = _figure_path(cfg)
    if fig:
        from .figures import save_dynamics_figure
        save_dynamics_figure(fig, series.t, np.abs(series.exact) ** 2,
                             np.abs(series.closed_form) ** 2, footer.get("period"))
    return 0


def cmd_landscape(cfg, params):
    grid = landscape_grid(params.gamma, cfg["grid"]["nq"], cfg["grid"]["np"])
    rows = [(float(q), float(p), float(grid.values[i, j]))
            for i, q in enumerate(grid.q) for j, p in enumerate(grid.p)]
    _emit(cfg, "landscape", ["Q", "P", "value"], rows)
    fig = _figure_path(cfg)
    if fig:
        from .figures import save_heatmap_figure
        locus = minimum_locus(params.gamma, 512) if params.degenerate else None
        save_heatmap_figure(fig, grid.q, grid.p, grid.values, locus, "$H(Q,P)$")
    return 0


def cmd_husimi(cfg, params):
    m = ground_index(params) - cfg["husimi"]["level_offset"]
    transform = sx_eigenbasis(params)
    grid = husimi(params, m, transform, cfg["grid"]["nq"], cfg["grid"]["np"])
    rows = [(float(q), float(p), float(grid.values[i, j]))
            for i, q in enumerate(grid.q) for j, p in enumerate(grid.p)]
    _emit(cfg, "husimi", ["Q", "P", "value"], rows)
    locus = minimum_locus(params.gamma, 2 * max(cfg["grid"]["nq"], cfg["grid"]["np"]))
    path = cfg["output"]["path"]
    if path != "-":
        stem, ext = os.path.splitext(path)
        companion = stem + "_locus" + (ext or ".csv")
        text = render_csv(["Q", "P"], [(pt.q, pt.p) for pt in locus],
                          _header_lines("husimi-locus", cfg))
        write_report(companion, text)
    else:
        print("warning: locus companion file skipped for stdout output", file=sys.stderr)
    fig = _figure_path(cfg)
    if fig:
        from .figures import save_heatmap_figure
        save_heatmap_figure(fig, grid.q, grid.p, grid.values, locus,
                            r"$|\langle Q,P|m\rangle|^2$")
    return 0


def cmd_hom(cfg, params):
    st, tm, hm = cfg["state"], cfg["time"], cfg["hom"]
    if st["kind"] == "two_level":
        psi0 = two_level_state(params, st["m1_offset"])
    else:
        psi0 = double_gaussian_state(params, st["sigma"], st["m1_offset"])
    transform = sx_eigenbasis(params)
    fock0 = to_fock(psi0, transform)
    times = np.linspace(0.0, float(tm["t_max"]), tm["samples"])
    overlaps = overlap_exact(psi0, times, threads=cfg["threads"])
    rows = []
    for i, t in enumerate(times):
        fock_t = to_fock(evolve_phase(psi0, float(t)), transform)
        mixed = apply_hom(compose(fock0, fock_t))
        exact_v = 2.0 * parity_distribution(mixed) - 1.0
        est = sample_shots(mixed, hm["shots"], hm["seed"] + i)
        rows.append((float(t), exact_v, est.mean, est.std_error,
                     abs(overlaps[i]) ** 2))
    _emit(cfg, "hom", ["t", "exact_V", "mc_mean", "mc_stderr", "abs2_overlap"], rows)
    fig = _figure_path(cfg)
    if fig:
        from .figures import save_hom_figure
        arr = np.array(rows)
        save_hom_figure(fig, arr[:, 0], arr[:, 1], arr[:, 2], arr[:, 3])
    return 0


COMMANDS = {
    "spectrum": cmd_spectrum,
    "dynamics": cmd_dynamics,
    "landscape": cmd_landscape,
    "husimi": cmd_husimi,
    "hom": cmd_hom,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="logcrystal",
        description="Two-mode boson model: spectra, log-periodic overlap "
                    "dynamics, phase-space portraits, and the two-copy "
                    "swap-measurement experiment.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, blurb in [
        ("spectrum", "energy levels, gaps, and the quasi-ground manifold"),
        ("dynamics", "exact and closed-form survival overlap vs time"),
        ("landscape", "classical energy landscape over (Q, P)"),
        ("husimi", "phase-space portrait of one eigenstate"),
        ("hom", "two-copy interference + parity readout of the overlap"),
    ]:
        p = sub.add_parser(name, help=blurb)
        p.add_argument("--config", help="JSON config file; flags override it")
        p.add_argument("--n", type=int, help="total boson number N")
        p.add_argument("--gamma", type=float, help="dimensionless coupling")
        p.add_argument("--kind", choices=["two_level", "double_gaussian"],
                       help="initial state family")
        p.add_argument("--sigma", type=float, help="Gaussian packet width")
        p.add_argument("--offset", type=int, dest="offset",
                       help="partner-level offset m0 - m1")
        p.add_argument("--log-base", type=float, dest="log_base",
                       help="log base for the default offset (natural if unset)")
        p.add_argument("--t-max", type=float, dest="t_max", help="time span")
        p.add_argument("--samples", type=int, help="number of time samples")
        p.add_argument("--nq", type=int, help="grid resolution along Q")
        p.add_argument("--np", type=int, dest="np_", help="grid resolution along P")
        p.add_argument("--level-offset", type=int, dest="level_offset",
                       help="husimi level as offset below m0")
        p.add_argument("--shots", type=int, help="Monte Carlo shots per sample")
        p.add_argument("--seed", type=int, help="base seed for parity sampling")
        p.add_argument("--out", help="output path ('-' = stdout)")
        p.add_argument("--format", choices=["csv", "json"], help="output format")
        p.add_argument("--threads", type=int,
                       help="worker threads (fallback: LOGCRYSTAL_THREADS)")
        p.add_argument("--plot", action="store_const", const="on", default="auto",
                       help="force figure rendering next to the output file")
        p.add_argument("--no-plot", action="store_const", const="off", dest="plot",
                       help="suppress figure rendering")
    return parser


def run(argv=None):
    args = build_parser().parse_args(argv)
    cfg = resolve_config(args)
    params = validate_config(cfg, args.command)
    return COMMANDS[args.command](cfg, params)


def main(argv=None):
    try:
        return run(argv)
    except (ConfigError, DomainError, RegimeError, StateValidationError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
