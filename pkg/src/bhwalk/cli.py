"""
Command-line driver: ``bhwalk {spectrum,deviation,evolve,projections,delta,symmetry}``.

Every command writes long-format CSV (one value per row) or a JSON bundle into
``--out``.  Warnings go to stderr through :mod:`logging`, never into data files.
A ``--config`` file of ``key = value`` lines may supply any flag; command-line
flags take precedence.
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .dynamics import (
    DEFAULT_TAU_MAX,
    DEFAULT_TAU_STEPS,
    StateSpec,
    correlation_map,
    evolve_series,
    normalize_correlations,
    prepare_state,
    seam_density,
    site_density,
    time_grid,
)
from .entanglement import Bipartition, entanglement_of_particles
from .errors import BHWalkError, InvalidLatticeError, SymmetryUndefinedError, UnsupportedError
from .lattice import LatticeConfig, TwoParticleState
from .projections import coefficient_table, delta_of_v
from .spectrum import assign_quasimomenta, solve, spectrum_deviation
from .symmetry import (
    check_boost_relation,
    check_correlation_mirror,
    check_invariance_theorem,
    correlation_observables,
    density_observables,
)

log = logging.getLogger("bhwalk")

SCHEMA_VERSION = 1
SEAM_WARN = 1e-3
DEFAULT_DELTA_GRID = (2.0, 4.0, 8.0, 12.0, 16.0, 20.0)

EXIT_ERROR = 1
EXIT_INVALID = 3
EXIT_SYMMETRY = 4
EXIT_UNSUPPORTED = 5


@dataclass
class RunConfig:
    command: str
    N: list = field(default_factory=lambda: [30])
    J: float = 1.0
    V: list = None
    state: str = None
    tau_max: float = DEFAULT_TAU_MAX
    tau_steps: int = DEFAULT_TAU_STEPS
    partition: str = None
    out: Path = Path(".")
    format: str = "csv"

    @property
    def n(self) -> int:
        if len(self.N) != 1:
            raise InvalidLatticeError(f"'{self.command}' takes a single --n, got {self.N}")
        return self.N[0]

    def v_values(self, default):
        return list(self.V) if self.V else list(default)

    def bipartition(self, N):
        return Bipartition.parse(self.partition, N) if self.partition else Bipartition.halves(N)

    def state_spec(self, N, default=None):
        text = self.state or default
        if text is None:
            raise InvalidLatticeError(f"'{self.command}' needs --state")
        return StateSpec.parse(text, N)

    def params(self):
        return {
            "N": self.N, "J": self.J, "V": self.V, "state": self.state, "tau_max": self.tau_max,
            "tau_steps": self.tau_steps, "partition": self.partition,
        }


def _num(x):
    return float(x)


def _cell(x):
    return repr(x) if isinstance(x, float) else x


def _write_csv(path: Path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows([_cell(x) for x in row] for row in rows)
    return path


def _write_json(path: Path, cfg: RunConfig, payload):
    bundle = {"schema_version": SCHEMA_VERSION, "command": cfg.command, "version": __version__,
              "params": cfg.params(), **payload}
    with open(path, "w") as fh:
        json.dump(bundle, fh, indent=1, sort_keys=True)
        fh.write("\n")
    return path


def _emit(cfg: RunConfig, tables: dict, extra=None):
    """``tables`` maps a stem to ``(header, rows)``."""
    cfg.out.mkdir(parents=True, exist_ok=True)
    if cfg.format == "json":
        payload = {stem: [dict(zip(h, r)) for r in rows] for stem, (h, rows) in tables.items()}
        payload.update(extra or {})
        return [_write_json(cfg.out / f"{cfg.command}.json", cfg, payload)]
    written = [_write_csv(cfg.out / f"{stem}.csv", h, rows) for stem, (h, rows) in tables.items()]
    if extra:
        written.append(_write_json(cfg.out / f"{cfg.command}_summary.json", cfg, extra))
    return written


def _sign_label(s):
    return "+" if s > 0 else "-"


def cmd_spectrum(cfg: RunConfig):
    N = cfg.n
    rows = []
    for V in cfg.v_values([8.0]):
        for sign in (1, -1):
            lat = LatticeConfig(N, cfg.J, sign * abs(V))
            bands = assign_quasimomenta(solve(lat))
            for msg in bands.warnings:
                log.warning(msg)
            for p in sorted(bands.points, key=lambda p: (p.nu, p.omega)):
                rows.append([_num(abs(V)), _sign_label(sign), p.nu, _num(p.K), _num(p.omega), p.band])
    return _emit(cfg, {"spectrum": (["V", "sign", "nu", "K", "omega", "band"], rows)})


def cmd_deviation(cfg: RunConfig):
    rows = [[N, _num(V), _num(spectrum_deviation(N, cfg.J, V))]
            for V in cfg.v_values([8.0]) for N in cfg.N]
    return _emit(cfg, {"deviation": (["N", "V", "D_V"], rows)})


def cmd_evolve(cfg: RunConfig):
    N = cfg.n
    spec = cfg.state_spec(N)
    state = prepare_state(spec)
    part = cfg.bipartition(N)
    taus = time_grid(cfg.tau_max, cfg.tau_steps)
    corr, dens, ent, diff = [], [], [], []
    iu, ju = np.triu_indices(N)

    for V in cfg.v_values([8.0]):
        series = {}
        for sign in (1, -1):
            dec = solve(LatticeConfig(N, cfg.J, sign * abs(V)))
            amps = evolve_series(state, dec, taus)
            g_list, ep_list = [], []
            seam = 0.0
            for tau, a in zip(taus, amps):
                s = TwoParticleState(state.basis, a)
                g = normalize_correlations(correlation_map(s, tau)).gamma
                n = site_density(s, tau)
                rec = entanglement_of_particles(s, part, tau)
                seam = max(seam, seam_density(n))
                lab = _sign_label(sign)
                corr.extend([_num(abs(V)), lab, _num(tau), i + 1, j + 1, _num(g[i, j])] for i, j in zip(iu, ju))
                dens.extend([_num(abs(V)), lab, _num(tau), i + 1, _num(x)] for i, x in enumerate(n.n))
                ent.append([_num(abs(V)), lab, _num(tau), _num(rec.E_P), _num(rec.P11)])
                g_list.append(g)
                ep_list.append(rec.E_P)
            if seam > SEAM_WARN:
                log.warning("V=%s%g: density %.3g reaches the periodic seam; boundary interference likely",
                            _sign_label(sign), abs(V), seam)
            series[sign] = (g_list, ep_list)
        for k, tau in enumerate(taus):
            gd = np.abs(series[1][0][k] - series[-1][0][k]).max()
            ed = abs(series[1][1][k] - series[-1][1][k])
            diff.append([_num(abs(V)), _num(tau), _num(gd), _num(ed)])

    return _emit(cfg, {
        "correlations": (["V", "sign", "tau", "i", "j", "gamma_norm"], corr),
        "density": (["V", "sign", "tau", "i", "n"], dens),
        "entanglement": (["V", "sign", "tau", "E_P", "P11"], ent),
        "differences": (["V", "tau", "max_gamma_norm_diff", "E_P_diff"], diff),
    })


def cmd_projections(cfg: RunConfig):
    N = cfg.n
    if cfg.state:
        pairs = [(i, j) for i, j, _ in cfg.state_spec(N).terms]
    else:
        pairs = [(1, j) for j in range(1, N // 2 + 2)]
    rows, residuals = [], {}
    for V in cfg.v_values([8.0]):
        table = coefficient_table(pairs, N, cfg.J, V)
        residuals[repr(float(abs(V)))] = table.alignment_residual
        rows.extend([_num(abs(V)), f"{r.state[0]}-{r.state[1]}", r.index, _num(r.omega_plus),
                     _num(r.c_plus), _num(r.c_minus)] for r in table.rows)
    return _emit(cfg, {"coefficients": (["V", "state", "i", "omega_plus", "Cplus", "Cminus"], rows)},
                 {"alignment_residual": residuals})


def cmd_delta(cfg: RunConfig):
    N = cfg.n
    if N % 2:
        raise UnsupportedError(f"delta needs an even ring to pair H(+V) and H(-V) levels, got N={N}")
    spec = cfg.state_spec(N, default="psi6")
    curve = delta_of_v(spec, N, cfg.J, cfg.v_values(DEFAULT_DELTA_GRID))
    return _emit(cfg, {"delta": (["V", "delta"], [[_num(v), _num(d)] for v, d in curve])})


def cmd_symmetry(cfg: RunConfig):
    N = cfg.n
    if N % 2:
        raise SymmetryUndefinedError(f"boost is not single-valued on an odd ring (N={N})")
    spec = cfg.state_spec(N, default="psi4")
    taus = time_grid(cfg.tau_max, min(cfg.tau_steps, 41))
    observables = density_observables(N) + correlation_observables(N)
    report = {"boost": [], "invariance": [], "mirror": []}
    for V in cfg.v_values([8.0]):
        report["boost"].append(vars(check_boost_relation(N, cfg.J, V)))
        inv = check_invariance_theorem(spec, observables, N, cfg.J, V, taus).to_dict()
        inv["V"] = V
        report["invariance"].append(inv)
        try:
            mir = check_correlation_mirror(spec, N, cfg.J, V, taus, cfg.bipartition(N)).to_dict()
            mir["V"] = V
            report["mirror"].append(mir)
        except ValueError as exc:
            log.warning("mirror check skipped: %s", exc)
    report["passed"] = all(r["passed"] for group in report.values() for r in group)
    cfg.out.mkdir(parents=True, exist_ok=True)
    return [_write_json(cfg.out / "symmetry.json", cfg, report)]


COMMANDS = {
    "spectrum": cmd_spectrum,
    "deviation": cmd_deviation,
    "evolve": cmd_evolve,
    "projections": cmd_projections,
    "delta": cmd_delta,
    "symmetry": cmd_symmetry,
}


def read_config_file(path) -> dict:
    """``key = value`` lines; ``#`` starts a comment; lists are comma separated."""
    values = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise InvalidLatticeError(f"config line without '=': {raw!r}")
        values[key.strip().lower().replace("-", "_")] = value.strip()
    return values


def _config_defaults(values: dict) -> dict:
    conv = {
        "n": ("N", lambda s: [int(x) for x in s.split(",")]),
        "j": ("J", float),
        "v": ("V", lambda s: [float(x) for x in s.split(",")]),
        "state": ("state", str),
        "tau_max": ("tau_max", float),
        "tau_steps": ("tau_steps", int),
        "partition": ("partition", str),
        "out": ("out", Path),
        "format": ("format", str),
    }
    out = {}
    for key, value in values.items():
        if key not in conv:
            raise InvalidLatticeError(f"unknown config key {key!r}")
        dest, fn = conv[key]
        out[dest] = fn(value)
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="key = value file supplying defaults for these flags")
    common.add_argument("--n", dest="N", type=int, action="append", help="ring size (repeatable for deviation)")
    common.add_argument("--j", dest="J", type=float, help="hopping amplitude (default 1)")
    common.add_argument("--v", dest="V", type=float, action="append", help="interaction strength |V| (repeatable)")
    common.add_argument("--state", help="preset psi1..psi6 or 'i,j[:amp]; ...'")
    common.add_argument("--tau-max", dest="tau_max", type=float)
    common.add_argument("--tau-steps", dest="tau_steps", type=int)
    common.add_argument("--partition", help="sites of region A, e.g. '1..15'")
    common.add_argument("--out", type=Path, help="output directory")
    common.add_argument("--format", choices=("csv", "json"))

    parser = argparse.ArgumentParser(prog="bhwalk", description=__doc__.strip().splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def parse_config(argv=None) -> RunConfig:
    args = build_parser().parse_args(argv)
    merged = {}
    if args.config is not None:
        merged.update(_config_defaults(read_config_file(args.config)))
    for key, value in vars(args).items():
        if key not in ("config", "command") and value is not None:
            merged[key] = value
    cfg = RunConfig(args.command, **merged)
    cfg.out = Path(cfg.out)
    if cfg.format not in ("csv", "json"):
        raise InvalidLatticeError(f"unknown format {cfg.format!r}")
    if cfg.tau_steps < 1:
        raise InvalidLatticeError("--tau-steps must be at least 1")
    return cfg


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        cfg = parse_config(argv)
        written = COMMANDS[cfg.command](cfg)
    except SymmetryUndefinedError as exc:
        log.error("%s", exc)
        return EXIT_SYMMETRY
    except UnsupportedError as exc:
        log.error("%s", exc)
        return EXIT_UNSUPPORTED
    except (InvalidLatticeError, KeyError, ValueError) as exc:
        log.error("%s", exc)
        return EXIT_INVALID
    except BHWalkError as exc:
        log.error("%s", exc)
        return EXIT_ERROR
    for path in written:
        log.info("wrote %s", path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
