"""Command-line front end: ``relctx {boost,contextuality,sweep,discriminate}``.

Every option may also come from a flat ``key = value`` file given with
``--config``; options on the command line override the file.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from dataclasses import dataclass, fields

import numpy as np

from .contextuality import (
    build_dual_frame,
    gram_rank,
    is_noncontextual_pure,
    random_projective_povms,
    singular_values,
    verify_ontological_model,
)
from .discrimination import DiscriminationProblem, helstrom, min_error_sdp, sweep_rapidity
from .errors import InvalidInputError, SingularFrameError
from .kinematics import MAX_RAPIDITY
from .quadrature import QuadratureGrid, default_grid
from .reduced_states import (
    LABELS,
    PaperSetup,
    boost_integrals,
    boosted_reduced_density,
    ensemble_mix,
    purity,
    rest_reduced_density,
)

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_IO = 0, 1, 2, 3
CSV_HEADER = "zeta,p_success_four,p_helstrom_two,min_singular_value,status"


class ConfigError(InvalidInputError):
    def __init__(self, field_name, message):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


@dataclass(frozen=True)
class RunConfig:
    mass: float = 1.0
    epsilon: float = 0.1
    sigma_up: float = 2.0
    sigma_down: float = 4.0
    sigma_plus: float = 3.0
    sigma_minus: float = 6.0
    zeta: float = 1.0
    zeta_min: float = 0.0
    zeta_max: float = 3.0
    zeta_steps: int = 31
    zetas: tuple | None = None
    p_nodes: int = 64
    theta_nodes: int = 64
    phi_nodes: int = 32
    p_max: float | None = None
    priors: tuple | None = None
    tol: float = 1e-6
    seed: int = 0
    povms: int = 100
    out: str | None = None

    def __post_init__(self):
        if not self.mass > 0:
            raise ConfigError("mass", "must be positive")
        if not 0 <= self.epsilon < 1:
            raise ConfigError("epsilon", "must lie in [0, 1)")
        for name in ("sigma_up", "sigma_down", "sigma_plus", "sigma_minus"):
            if not getattr(self, name) > 0:
                raise ConfigError(name, "must be positive")
        if self.zeta_steps < 1:
            raise ConfigError("zeta_steps", "must be >= 1")
        for name in ("p_nodes", "theta_nodes", "phi_nodes"):
            if getattr(self, name) < 2:
                raise ConfigError(name, "must be >= 2")
        if self.p_max is not None and not self.p_max > 0:
            raise ConfigError("p_max", "must be positive")
        for name, value in [("zeta", self.zeta), ("zeta_min", self.zeta_min), ("zeta_max", self.zeta_max)]:
            if abs(value) > MAX_RAPIDITY:
                raise ConfigError(name, f"magnitude must not exceed {MAX_RAPIDITY}")
        if self.zeta_max < self.zeta_min:
            raise ConfigError("zeta_max", "must be >= zeta_min")
        if self.priors is not None:
            pr = np.asarray(self.priors, dtype=float)
            if len(pr) != 4 or np.any(pr < 0) or abs(pr.sum() - 1) > 1e-12:
                raise ConfigError("priors", "need four non-negative values summing to 1")
        if not self.tol > 0:
            raise ConfigError("tol", "must be positive")
        if self.povms < 1:
            raise ConfigError("povms", "must be >= 1")

    @property
    def setup(self) -> PaperSetup:
        return PaperSetup(
            self.mass, self.epsilon, self.sigma_up, self.sigma_down, self.sigma_plus, self.sigma_minus
        )

    @property
    def grid(self) -> QuadratureGrid:
        if self.p_max is None:
            base = default_grid(self.mass, self.setup.sigmas.values())
        else:
            base = QuadratureGrid(self.p_max)
        return dataclasses.replace(
            base, p_nodes=self.p_nodes, theta_nodes=self.theta_nodes, phi_nodes=self.phi_nodes
        )

    @property
    def zeta_grid(self) -> list:
        if self.zetas is not None:
            return list(self.zetas)
        if self.zeta_steps == 1:
            return [self.zeta_min]
        return [float(z) for z in np.linspace(self.zeta_min, self.zeta_max, self.zeta_steps)]

    def echo(self) -> list:
        """Resolved configuration as ``key = value`` lines (grid cutoff included)."""
        lines = []
        for f in fields(self):
            if f.name == "out":
                continue
            value = getattr(self, f.name)
            if f.name == "p_max":
                value = self.grid.p_max
            lines.append(f"{f.name} = {_fmt_value(value)}")
        return lines


def _fmt_value(value):
    if isinstance(value, (tuple, list)):
        return ",".join(repr(float(v)) for v in value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _float_list(text):
    return tuple(float(t) for t in str(text).split(",") if t.strip())


_CONVERTERS = {f.name: f.type for f in fields(RunConfig)}


def _convert(name, raw):
    kind = _CONVERTERS[name]
    try:
        if name in ("zetas", "priors"):
            return _float_list(raw)
        if name == "p_max":
            return None if str(raw).lower() == "none" else float(raw)
        if name == "out":
            return str(raw)
        if kind == "int":
            return int(raw)
        return float(raw)
    except ValueError as exc:
        raise ConfigError(name, f"cannot parse {raw!r}") from exc


def read_config_file(path) -> dict:
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError("config", f"line {lineno}: expected key = value")
            key, raw = (s.strip() for s in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in _CONVERTERS:
                raise ConfigError(key, "unknown configuration key")
            values[key] = _convert(key, raw)
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="relctx", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("boost", "rest and boosted reduced spin states of the four states"),
        ("contextuality", "rank tests, dual frame and ontological-model check"),
        ("sweep", "rapidity sweep of both discrimination tasks, written as CSV"),
        ("discriminate", "four-state SDP and two-ensemble Helstrom value at one rapidity"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="flat key = value file supplying any option")
        for f in fields(RunConfig):
            p.add_argument("--" + f.name.replace("_", "-"), dest=f.name, default=None)
    return parser


def resolve_config(args) -> RunConfig:
    values = read_config_file(args.config) if args.config else {}
    for f in fields(RunConfig):
        raw = getattr(args, f.name)
        if raw is not None:
            values[f.name] = _convert(f.name, raw)
    return RunConfig(**values)


def _fmt_matrix(m):
    def c(z):
        return f"{z.real:.10g}{z.imag:+.10g}j"

    return f"[[{c(m[0, 0])}, {c(m[0, 1])}], [{c(m[1, 0])}, {c(m[1, 1])}]]"


def _matrix_json(m):
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def cmd_boost(cfg: RunConfig):
    grid = cfg.grid
    states = cfg.setup.states(grid)
    report = {"config": cfg.echo(), "zeta": cfg.zeta, "states": {}}
    lines = []
    for label in LABELS:
        rho = rest_reduced_density(states[label], grid, cfg.mass)
        tau = boosted_reduced_density(states[label], cfg.zeta, grid, cfg.mass)
        ints = boost_integrals(states[label].profile_up, cfg.zeta, grid, cfg.mass)
        entry = {
            "rho": _matrix_json(rho),
            "tau": _matrix_json(tau),
            "purity_rho": purity(rho),
            "purity_tau": purity(tau),
            "trace_tau": float(np.trace(tau).real),
            "min_eig_tau": float(np.linalg.eigvalsh(tau).min()),
            "hermiticity_error": float(np.max(np.abs(tau - tau.conj().T))),
            "integrals": {k: [float(np.real(v)), float(np.imag(v))] for k, v in dataclasses.asdict(ints).items()},
        }
        report["states"][label] = entry
        lines += [
            f"state {label}",
            f"  rho = {_fmt_matrix(rho)}",
            f"  tau = {_fmt_matrix(tau)}",
            f"  purity rho = {entry['purity_rho']:.6f}  purity tau = {entry['purity_tau']:.6f}",
            f"  trace tau = {entry['trace_tau']:.10g}  min eig tau = {entry['min_eig_tau']:.10g}"
            f"  hermiticity error = {entry['hermiticity_error']:.3g}",
            "  I1 = {:.10g}  I2 = {:.10g}  I3 = {:.10g}  I4 = {:.10g}".format(
                ints.I1, ints.I2, ints.I3, ints.I4
            ),
        ]
    return report, lines


def _verdict(states, pure):
    rank = gram_rank(states)
    sv = singular_values(states)
    if pure:
        nc = is_noncontextual_pure(states)
        basis = "pure-state rank test"
    else:
        nc = rank == len(states)
        basis = "linear independence" if nc else "linearly dependent mixed set"
    return {
        "rank": rank,
        "size": len(states),
        "singular_values": [float(s) for s in sv],
        "verdict": "non-contextual" if nc else "contextual",
        "basis": basis,
    }


def cmd_contextuality(cfg: RunConfig):
    grid = cfg.grid
    states = cfg.setup.states(grid)
    rhos = [rest_reduced_density(states[k], grid, cfg.mass) for k in LABELS]
    taus = [boosted_reduced_density(states[k], cfg.zeta, grid, cfg.mass) for k in LABELS]
    boosted_pure = all(purity(t) > 1 - 1e-8 for t in taus)
    report = {
        "config": cfg.echo(),
        "zeta": cfg.zeta,
        "rest": _verdict(rhos, True),
        "boosted": _verdict(taus, boosted_pure),
    }
    try:
        frame = build_dual_frame(taus)
    except SingularFrameError as exc:
        report["frame"] = {"status": "singular", "detail": str(exc)}
    else:
        check = verify_ontological_model(taus, frame, random_projective_povms(cfg.povms, cfg.seed))
        report["frame"] = {
            "status": "ok",
            "residual": frame.residual,
            "condition": frame.condition,
            "params": frame.params.tolist(),
            "ontological_max_violation": check.max_violation,
            "min_weight": check.min_weight,
            "max_normalization_error": check.max_normalization_error,
        }
    lines = []
    for key in ("rest", "boosted"):
        v = report[key]
        lines.append(
            f"{key}: {v['verdict']} (rank {v['rank']} of {v['size']}; {v['basis']}); "
            f"smallest singular value {v['singular_values'][-1]:.3e}"
        )
    fr = report["frame"]
    if fr["status"] == "ok":
        lines.append(
            f"dual frame: residual {fr['residual']:.3e}, condition {fr['condition']:.3e}, "
            f"ontological-model violation {fr['ontological_max_violation']:.3e} over {cfg.povms} POVMs"
        )
    else:
        lines.append(f"dual frame: none ({fr['detail']})")
    return report, lines


def cmd_discriminate(cfg: RunConfig):
    grid = cfg.grid
    taus = [boosted_reduced_density(s, cfg.zeta, grid, cfg.mass) for s in cfg.setup.states(grid).values()]
    priors = cfg.priors if cfg.priors is not None else (0.25,) * 4
    res = min_error_sdp(DiscriminationProblem(tuple(taus), tuple(priors)), cfg.tol)
    two = helstrom(ensemble_mix(taus[:2], [0.5, 0.5]), ensemble_mix(taus[2:], [0.5, 0.5]))
    report = {
        "config": cfg.echo(),
        "zeta": cfg.zeta,
        "p_success_four": res.p_success,
        "duality_gap": res.duality_gap,
        "povm": [_matrix_json(m) for m in res.povm],
        "p_helstrom_two": two,
    }
    lines = [
        f"zeta = {cfg.zeta:.6f}",
        f"p_success_four = {res.p_success:.6f} (duality gap {res.duality_gap:.3e})",
        f"p_helstrom_two = {two:.6f}",
    ]
    return report, lines


def sweep_csv(cfg: RunConfig):
    rows = sweep_rapidity(cfg.setup, cfg.zeta_grid, cfg.grid, cfg.tol, cfg.priors)
    out = ["# " + line for line in cfg.echo()]
    out.append(CSV_HEADER)
    for r in rows:
        out.append(
            f"{r.zeta:.6f},{r.p_success_four:.6f},{r.p_helstrom_two:.6f},"
            f"{r.min_singular_value:.10g},{r.status.replace(',', ';')}"
        )
    return "\n".join(out) + "\n", rows


def _write(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
    except InvalidInputError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO

    try:
        if args.command == "sweep":
            text, rows = sweep_csv(cfg)
            if cfg.out:
                _write(cfg.out, text)
            else:
                sys.stdout.write(text)
            return EXIT_NUMERIC if any(r.status != "ok" for r in rows) else EXIT_OK
        handler = {"boost": cmd_boost, "contextuality": cmd_contextuality, "discriminate": cmd_discriminate}
        report, lines = handler[args.command](cfg)
        print("\n".join(lines))
        if cfg.out:
            _write(cfg.out, json.dumps(report, indent=2) + "\n")
    except InvalidInputError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ArithmeticError, ValueError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
