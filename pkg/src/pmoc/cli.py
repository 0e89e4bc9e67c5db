"""Benchmark harness: configure, run, compare schemes and export trajectories.

Usage::

    pmoc run --system acrobot --scheme pmoc --basis chebyshev --n 64 \\
        --tf-min 1 --tf-max 10 --seeds 4 --out results/
    pmoc compare --system acrobot --scheme pmoc --scheme dae-el --scheme ode-el
    pmoc verify --study all

Exit codes: 0 success, 2 infeasible (or iteration limit), 3 numerical
failure, 64 bad usage.  ``PMOC_OUTPUT_DIR`` sets the default output
directory.
"""

import argparse
import csv
import hashlib
import json
import logging
import math
import os
import sys
from dataclasses import asdict, dataclass, field, fields, replace

import numpy as np

from . import geomcheck
from .mechsys import ModelError, SimulationError, make_model
from .nlp import (
    FEASIBLE,
    INFEASIBLE,
    ITER_LIMIT,
    NUMERICAL_FAILURE,
    OPTIMAL,
    InitialGuessSpec,
    NlpError,
    SolveOptions,
    assemble,
    interpolated_guess,
    multistart,
    solve_sqp,
)
from .polybasis import BasisError, make_basis
from .scheme import SCHEMES, BoundaryConditions, TimeScaling, build_problem

__all__ = [
    "EXIT_OK",
    "EXIT_INFEASIBLE",
    "EXIT_NUMERICAL",
    "EXIT_USAGE",
    "OUTPUT_ENV",
    "SYSTEMS",
    "BASES",
    "ConfigError",
    "ReportError",
    "RunConfig",
    "RunRecord",
    "BenchmarkReport",
    "load_config",
    "swing_up_conditions",
    "build_from_config",
    "run",
    "compare",
    "format_table",
    "export_trajectory",
    "dumps_report",
    "loads_report",
    "exit_code",
    "main",
]

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INFEASIBLE = 2
EXIT_NUMERICAL = 3
EXIT_USAGE = 64
OUTPUT_ENV = "PMOC_OUTPUT_DIR"
SYSTEMS = ("acrobot", "3crobot", "pointmass", "pendulum")
BASES = ("chebyshev", "legendre")
SAMPLES = 512

# published figures for the same experiments, kept for side-by-side reading
REFERENCE = {
    ("acrobot", "pmoc", False): {"major_iterations": 218, "cost": 0.63},
    ("acrobot", "dae-el", False): {"status": "no feasible solution"},
    ("acrobot", "ode-el", False): {"major_iterations": 688, "cost": 0.80},
    ("3crobot", "pmoc", False): {"major_iterations": 498, "cost": 0.61},
    ("3crobot", "pmoc", True): {"major_iterations": 358, "cost": 0.31, "l2": 0.3, "l3": 0.7},
}


class ConfigError(ValueError):
    """Invalid configuration (maps to exit code 64)."""


class ReportError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    """Every field has a default; ``t_f=None`` means a free horizon in the bounds.

    ``guess_strategy=None`` picks ``constant_pd`` for the 3crobot and
    ``sinusoidal`` otherwise.  ``coarse_N`` turns on continuation: each
    start is first solved on a grid of that size and its interpolant seeds
    the solve at ``N``.
    """

    system: str = "acrobot"
    scheme: str = "pmoc"
    basis: str = "chebyshev"
    N: int = 64
    coarse_N: int = None
    tf_min: float = 1.0
    tf_max: float = 10.0
    t_f: float = None
    tf_guess: float = 5.0
    optimize_lengths: bool = False
    guess_strategy: str = None
    amplitude: float = 1.0
    frequency: float = 1.0
    phase: float = 0.0
    torque: float = 0.5
    kp: float = 5.0
    kd: float = 1.0
    seeds: int = 1
    feas_tol: float = 1e-6
    opt_tol: float = 1e-5
    max_major: int = 2000
    out: str = None

    def validate(self):
        if self.system not in SYSTEMS:
            raise ConfigError(f"unknown system {self.system!r}; choose from {SYSTEMS}")
        if self.scheme not in SCHEMES:
            raise ConfigError(f"unknown scheme {self.scheme!r}; choose from {SCHEMES}")
        if self.basis not in BASES:
            raise ConfigError(f"unknown basis {self.basis!r}; choose from {BASES}")
        if int(self.N) < 2:
            raise ConfigError("N must be at least 2")
        if self.coarse_N is not None and not 2 <= int(self.coarse_N) < int(self.N):
            raise ConfigError("coarse_N must satisfy 2 <= coarse_N < N")
        if not 0 < self.tf_min <= self.tf_max:
            raise ConfigError(f"invalid horizon bounds [{self.tf_min}, {self.tf_max}]")
        if self.t_f is not None and self.t_f <= 0:
            raise ConfigError("t_f must be positive")
        if int(self.seeds) < 1:
            raise ConfigError("seeds must be at least 1")
        if self.optimize_lengths and self.system != "3crobot":
            raise ConfigError("length optimization is only defined for the 3crobot")
        if self.guess_strategy not in (None, "sinusoidal", "constant_pd"):
            raise ConfigError(f"unknown guess strategy {self.guess_strategy!r}")
        return self

    @property
    def strategy(self):
        if self.guess_strategy:
            return self.guess_strategy
        return "constant_pd" if self.system == "3crobot" else "sinusoidal"

    def guess(self):
        return InitialGuessSpec(
            strategy=self.strategy,
            amplitude=self.amplitude,
            frequency=self.frequency,
            phase=self.phase,
            torque=self.torque,
            kp=self.kp,
            kd=self.kd,
            t_f=self.t_f if self.t_f is not None else self.tf_guess,
        )

    def options(self):
        return SolveOptions(feas_tol=self.feas_tol, opt_tol=self.opt_tol, max_major=int(self.max_major))

    def digest(self):
        """Hash of every field that can change the numbers (not the output path)."""
        data = asdict(self)
        data.pop("out")
        data["guess_strategy"] = self.strategy
        text = json.dumps(data, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(text.encode()).hexdigest()[:16]


_FIELD_TYPES = {f.name: f.type for f in fields(RunConfig)}


def _coerce(name, value):
    if value is None:
        return None
    kind = {"N": int, "coarse_N": int, "seeds": int, "max_major": int, "optimize_lengths": bool}.get(name)
    if kind is None and name in ("system", "scheme", "basis", "guess_strategy", "out"):
        kind = str
    kind = kind or float
    try:
        return kind(value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad value for {name}: {value!r}") from exc


def load_config(path=None, **overrides):
    """Defaults, then the JSON file at ``path``, then non-``None`` overrides."""
    values = {}
    if path:
        try:
            with open(path) as fh:
                values = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(values, dict):
            raise ConfigError("config file must hold a JSON object")
    values.update({k: v for k, v in overrides.items() if v is not None})
    unknown = set(values) - set(_FIELD_TYPES)
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    values = {k: _coerce(k, v) for k, v in values.items()}
    return RunConfig(**values).validate()


def swing_up_conditions(system, d):
    """Rest-to-rest transfer: point mass 0 -> 1, chains hanging -> inverted."""
    if system == "pointmass":
        return BoundaryConditions(q_init=np.zeros(d), v_init=np.zeros(d), q_final=np.ones(d),
                                  v_final=np.zeros(d))
    target = np.zeros(d)
    target[0] = np.pi
    return BoundaryConditions(q_init=np.zeros(d), v_init=np.zeros(d), q_final=target,
                              v_final=np.zeros(d), wrap_final=(0,))


def build_from_config(config, N=None):
    if config.system == "3crobot":
        model = make_model("3crobot", optimize_lengths=config.optimize_lengths)
    else:
        model = make_model(config.system)
    basis = make_basis(int(config.N if N is None else N), config.basis)
    if config.t_f is None:
        scaling = TimeScaling(t_f=float(np.clip(config.tf_guess, config.tf_min, config.tf_max)),
                              free=True, bounds=(config.tf_min, config.tf_max))
    else:
        scaling = TimeScaling(t_f=config.t_f)
    bc = swing_up_conditions(config.system, model.dim_q)
    return build_problem(config.scheme, model, basis, bc, scaling)


def _finite(x):
    x = float(x)
    return x if math.isfinite(x) else None


@dataclass
class RunRecord:
    config_digest: str
    system: str
    scheme: str
    status: str
    major_iterations: int = 0
    cost: float = None
    feasibility: float = None
    optimality: float = None
    t_f: float = None
    design: dict = field(default_factory=dict)
    wall_time: float = 0.0
    message: str = ""
    start_status: list = field(default_factory=list)
    continuation: list = field(default_factory=list)
    reference: dict = field(default_factory=dict)

    @property
    def feasible(self):
        return self.status in (OPTIMAL, FEASIBLE)


@dataclass
class BenchmarkReport:
    """Run records plus resampled trajectories (``None`` for failed runs)."""

    records: list = field(default_factory=list)
    trajectories: list = field(default_factory=list)
    config: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "format": "pmoc-benchmark-report",
            "version": 1,
            "config": self.config,
            "records": [asdict(r) for r in self.records],
            "trajectories": self.trajectories,
        }

    @classmethod
    def from_dict(cls, doc):
        if doc.get("format") != "pmoc-benchmark-report":
            raise ReportError("not a benchmark report")
        return cls(records=[RunRecord(**r) for r in doc["records"]],
                   trajectories=doc["trajectories"], config=doc.get("config", {}))


def _fmt(x):
    if x is None or isinstance(x, bool):
        return json.dumps(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            return "null"
        text = f"{x:.17g}"
        return text if any(c in text for c in ".en") else text + ".0"
    if isinstance(x, (int, str)):
        return json.dumps(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


def _dump(obj, indent, out):
    pad = " " * indent
    if isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        items = list(obj.items())
        for i, (k, v) in enumerate(items):
            out.append(f"{pad}  {json.dumps(str(k))}: ")
            _dump(v, indent + 2, out)
            out.append(",\n" if i < len(items) - 1 else "\n")
        out.append(pad + "}")
    elif isinstance(obj, (list, tuple)):
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            # scalar arrays on one line keep the file line-oriented
            out.append("[" + ", ".join(_fmt(v) for v in obj) + "]")
            return
        out.append("[\n")
        for i, v in enumerate(obj):
            out.append(pad + "  ")
            _dump(v, indent + 2, out)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(pad + "]")
    else:
        out.append(_fmt(obj))


def dumps_report(report):
    """JSON text with floats at 17 significant digits."""
    out = []
    _dump(report.to_dict(), 0, out)
    return "".join(out) + "\n"


def loads_report(text):
    return BenchmarkReport.from_dict(json.loads(text))


def _trajectory(problem, x, t_f):
    times = np.linspace(0.0, t_f, SAMPLES)
    q, v, u, p = problem.resample(x, times)
    return {
        "t": times.tolist(),
        "q": q.tolist(),
        "v": v.tolist(),
        "u": u.tolist(),
        "p": p.tolist(),
    }


def _failure_record(config, status, message):
    return RunRecord(config_digest=config.digest(), system=config.system, scheme=config.scheme,
                     status=status, message=message,
                     reference=REFERENCE.get((config.system, config.scheme, config.optimize_lengths), {}))


def run(config):
    """Build, solve (multistart when ``seeds > 1``) and report one configuration."""
    config.validate()
    try:
        problem = build_from_config(config)
        coarse = build_from_config(config, N=config.coarse_N) if config.coarse_N else None
    except (ModelError, BasisError, ValueError) as exc:
        rec = _failure_record(config, NUMERICAL_FAILURE, f"setup failed: {exc}")
        return BenchmarkReport(records=[rec], trajectories=[None], config=asdict(config))
    guess = config.guess()
    stages = []

    def make_instance(seed):
        start = guess.perturbed(seed)
        try:
            if coarse is not None:
                rc = solve_sqp(assemble(coarse, start), config.options())
                stages.append({"seed": seed, "N": int(config.coarse_N), "status": rc.status,
                               "major_iterations": int(rc.major_iterations),
                               "feasibility": _finite(rc.feasibility)})
                start = interpolated_guess(coarse, rc.x_star, problem.basis)
            return assemble(problem, start)
        except (ModelError, SimulationError, BasisError) as exc:
            raise NlpError(str(exc)) from exc

    try:
        rep = multistart(make_instance, int(config.seeds), config.options())
    except (NlpError, ModelError, SimulationError, BasisError, np.linalg.LinAlgError) as exc:
        rec = _failure_record(config, NUMERICAL_FAILURE, str(exc))
        return BenchmarkReport(records=[rec], trajectories=[None], config=asdict(config))

    lay = problem.layout
    design = {}
    t_f = problem.scaling.t_f
    if rep.x_star.size == lay.size:
        _, _, _, t_f, params = problem.unpack(rep.x_star)
        if params is not None:
            design = {name: float(v) for name, v in zip(problem.model.param_names, params)}
    rec = RunRecord(
        config_digest=config.digest(),
        system=config.system,
        scheme=config.scheme,
        status=rep.status,
        major_iterations=int(rep.major_iterations),
        cost=_finite(rep.final_cost),
        feasibility=_finite(rep.feasibility),
        optimality=_finite(rep.optimality),
        t_f=_finite(t_f),
        design=design,
        wall_time=float(sum(s.wall_time for s in rep.starts) if rep.starts else rep.wall_time),
        message=rep.message,
        start_status=[s.status for s in rep.starts],
        continuation=stages,
        reference=REFERENCE.get((config.system, config.scheme, config.optimize_lengths), {}),
    )
    traj = _trajectory(problem, rep.x_star, float(t_f)) if rec.feasible else None
    return BenchmarkReport(records=[rec], trajectories=[traj], config=asdict(config))


def compare(configs):
    """Run configurations differing in scheme; rows ordered pmoc, dae-el, ode-el.

    Failures of any kind become rows with a structured status.
    """
    if len(configs) < 1:
        raise ConfigError("compare needs at least one configuration")
    order = {s: i for i, s in enumerate(SCHEMES)}
    indexed = sorted(enumerate(configs), key=lambda ic: (order[ic[1].scheme], ic[0]))
    records, trajs = [], []
    for _, cfg in indexed:
        try:
            rep = run(cfg)
            rec, traj = rep.records[0], rep.trajectories[0]
        except Exception as exc:  # containment: a crash becomes a row
            log.exception("run failed")
            rec, traj = _failure_record(cfg, NUMERICAL_FAILURE, f"{type(exc).__name__}: {exc}"), None
        records.append(rec)
        trajs.append(traj)
    return BenchmarkReport(records=records, trajectories=trajs,
                           config={"compare": [asdict(c) for _, c in indexed]})


def format_table(report):
    """Plain-text table: one row per record."""
    head = f"{'scheme':<8} {'status':<17} {'majors':>7} {'cost':>12} {'feasibility':>12} {'t_f':>8}"
    lines = [head, "-" * len(head)]
    for r in report.records:
        cost = f"{r.cost:.6g}" if r.cost is not None and r.feasible else "-"
        feas = f"{r.feasibility:.2e}" if r.feasibility is not None else "-"
        tf = f"{r.t_f:.4g}" if r.t_f is not None else "-"
        lines.append(f"{r.scheme:<8} {r.status:<17} {r.major_iterations:>7} {cost:>12} {feas:>12} {tf:>8}")
    return "\n".join(lines)


def export_trajectory(report, path, index=0):
    """CSV ``t,q1..qd,v1..vd,u1..um,p1..pd`` on the 512 resampled times."""
    rec = report.records[index]
    traj = report.trajectories[index]
    if not rec.feasible or traj is None:
        raise ReportError(f"refusing to export a {rec.status} run: {rec.message}".strip())
    q, v, u, p = (np.asarray(traj[k], dtype=float) for k in ("q", "v", "u", "p"))
    d, m = q.shape[0], u.shape[0]
    header = (["t"] + [f"q{i + 1}" for i in range(d)] + [f"v{i + 1}" for i in range(d)]
              + [f"u{i + 1}" for i in range(m)] + [f"p{i + 1}" for i in range(d)])
    table = np.column_stack([np.asarray(traj["t"]), q.T, v.T, u.T, p.T])
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in table:
            w.writerow([f"{x:.17g}" for x in row])
    return path


def exit_code(status):
    if status in (OPTIMAL, FEASIBLE):
        return EXIT_OK
    if status in (INFEASIBLE, ITER_LIMIT):
        return EXIT_INFEASIBLE
    return EXIT_NUMERICAL


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_run_flags(p, multi_scheme=False):
    p.add_argument("--system", choices=SYSTEMS)
    if multi_scheme:
        p.add_argument("--scheme", action="append", choices=SCHEMES,
                       help="repeat to add rows (default: all three)")
    else:
        p.add_argument("--scheme", choices=SCHEMES)
    p.add_argument("--basis", choices=BASES)
    p.add_argument("--n", dest="N", type=int)
    p.add_argument("--coarse-n", dest="coarse_N", type=int,
                   help="solve on this grid first and refine (continuation)")
    p.add_argument("--tf-min", dest="tf_min", type=float)
    p.add_argument("--tf-max", dest="tf_max", type=float)
    p.add_argument("--tf", dest="t_f", type=float, help="fix the horizon instead of optimizing it")
    p.add_argument("--optimize-lengths", dest="optimize_lengths", action="store_true", default=None)
    p.add_argument("--seeds", type=int)
    p.add_argument("--guess", dest="guess_strategy", choices=("sinusoidal", "constant_pd"))
    p.add_argument("--max-major", dest="max_major", type=int)
    p.add_argument("--feas-tol", dest="feas_tol", type=float)
    p.add_argument("--opt-tol", dest="opt_tol", type=float)
    p.add_argument("--config", help="JSON file with RunConfig fields")
    p.add_argument("--out", help=f"output directory (default ${OUTPUT_ENV} or ./pmoc-output)")


def _parser():
    parser = _Parser(prog="pmoc", description=__doc__.split("\n\n")[0])
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    _add_run_flags(sub.add_parser("run", help="solve one configuration"))
    _add_run_flags(sub.add_parser("compare", help="table over schemes"), multi_scheme=True)
    ver = sub.add_parser("verify", help="geometric and convergence studies")
    ver.add_argument("--study", choices=("convergence", "symplectic", "momentum", "all"), default="all")
    ver.add_argument("--n", dest="N_list", type=int, nargs="+", default=[8, 12, 16, 20, 24])
    ver.add_argument("--out")
    return parser


def _output_dir(out):
    path = out or os.environ.get(OUTPUT_ENV) or "pmoc-output"
    os.makedirs(path, exist_ok=True)
    return path


def _flag_values(args, names):
    return {k: getattr(args, k) for k in names if getattr(args, k, None) is not None}


_CONFIG_FLAGS = ("system", "basis", "N", "coarse_N", "tf_min", "tf_max", "t_f", "optimize_lengths", "seeds",
                 "guess_strategy", "max_major", "feas_tol", "opt_tol", "out")


def _write_report(report, out_dir, stem):
    path = os.path.join(out_dir, f"{stem}.json")
    with open(path, "w") as fh:
        fh.write(dumps_report(report))
    return path


def _cmd_run(args):
    cfg = load_config(args.config, scheme=args.scheme, **_flag_values(args, _CONFIG_FLAGS))
    out_dir = _output_dir(cfg.out)
    report = run(cfg)
    rec = report.records[0]
    stem = f"{cfg.system}-{cfg.scheme}-{cfg.digest()}"
    print(format_table(report))
    print(f"report: {_write_report(report, out_dir, stem)}")
    if rec.feasible:
        print(f"trajectory: {export_trajectory(report, os.path.join(out_dir, stem + '.csv'))}")
    elif rec.message:
        print(f"message: {rec.message}", file=sys.stderr)
    return exit_code(rec.status)


def _cmd_compare(args):
    base = load_config(args.config, **_flag_values(args, _CONFIG_FLAGS))
    schemes = args.scheme or list(SCHEMES)
    configs = [replace(base, scheme=s).validate() for s in schemes]
    out_dir = _output_dir(base.out)
    report = compare(configs)
    print(format_table(report))
    print(f"report: {_write_report(report, out_dir, f'compare-{base.system}-{base.digest()}')}")
    return EXIT_OK


def _cmd_verify(args):
    out_dir = _output_dir(args.out)
    pend = make_model("pendulum")
    rows = {N: geomcheck.StudyRow(N=N, residual=np.nan) for N in args.N_list}
    if args.study in ("convergence", "all"):
        for r in geomcheck.convergence_study(pend, "pmoc", args.N_list):
            rows[r.N].residual = r.residual
    if args.study in ("symplectic", "all"):
        for N in args.N_list:
            basis = make_basis(N)
            probe = geomcheck.FlowMapProbe(pend, basis, np.zeros((1, N)), np.array([1.5]),
                                           np.array([0.0]), 3.0)
            try:
                rows[N].defect = geomcheck.symplectic_defect(probe).defect
            except geomcheck.FlowError as exc:
                log.warning("N=%d: %s", N, exc)
    if args.study in ("momentum", "all"):
        acro = make_model("acrobot", gravity=0.0)
        for N in args.N_list:
            try:
                rows[N].drift = _free_acrobot_drift(acro, N)
            except geomcheck.FlowError as exc:
                log.warning("N=%d: %s", N, exc)
    ordered = [rows[N] for N in args.N_list]
    path = os.path.join(out_dir, "verify.csv")
    geomcheck.write_study_csv(ordered, path)
    print(f"{'N':>4} {'residual':>12} {'defect':>12} {'drift':>12}")
    for r in ordered:
        print(f"{r.N:>4} {r.residual:>12.3e} {r.defect:>12.3e} {r.drift:>12.3e}")
    print(f"table: {path}")
    return EXIT_OK


def _free_acrobot_drift(model, N, t_f=3.0):
    """Drift of the total angular momentum on a PMOC-feasible unforced swing."""
    bc = BoundaryConditions(q_init=[0.3, 0.5], v_init=[0.8, -0.9])
    problem = build_problem("pmoc", model, make_basis(N), bc, TimeScaling(t_f))
    x0 = assemble(problem, InitialGuessSpec(amplitude=0.0)).x0
    x, _ = geomcheck.restore_feasibility(problem, x0)
    q = problem.unpack(x)[0]
    return geomcheck.momentum_drift(model, problem.basis, q, 0, t_f=t_f)


def main(argv=None):
    parser = _parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(name)s: %(message)s")
    handlers = {"run": _cmd_run, "compare": _cmd_compare, "verify": _cmd_verify}
    try:
        return handlers[args.command](args)
    except ConfigError as exc:
        print(f"pmoc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
