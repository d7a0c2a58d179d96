"""Command-line runner: single runs, convergence sweeps and run manifests.

Exit status: 0 success, 2 configuration error, 3 numerical failure,
4 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Sequence

from wenodiff import __version__
from wenodiff.config import CONVECTION_VARIANTS, SchemeConfig
from wenodiff.diagnostics import ErrorReport, error_report, reference_solution, with_orders
from wenodiff.diffusion import SCHEMES
from wenodiff.integrator import NumericalBlowup, SolutionField, StepLimitExceeded, TimeLoopConfig, advance
from wenodiff.mesh import MIN_CELLS, GridSpec
from wenodiff.problems import ALIASES, CATALOG, ProblemDefinition, problem

logger = logging.getLogger("wenodiff")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4

TABLE_HEADER = ["N", "L1", "order_L1", "L2", "order_L2", "Linf", "order_Linf", "min", "runtime_s"]


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    problem: str
    scheme: str = "cweno-dz"
    convection: str = "js"
    ns: tuple[int, ...] = ()
    sweep: bool = False
    m: float | None = None
    cfl: float = 0.4
    tfinal: float | None = None
    dt: float | None = None
    eps: float | None = None
    p: int = 1
    workers: int = 1
    reference: int | None = None
    out: str = "out"
    extra: dict = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        if any(n < MIN_CELLS for n in self.ns):
            raise ConfigError(f"every N must be >= {MIN_CELLS}, got {list(self.ns)}")
        if any(b <= a for a, b in zip(self.ns, self.ns[1:])):
            raise ConfigError(f"sweep sizes must be strictly increasing, got {list(self.ns)}")
        if self.reference is not None and self.reference < 2:
            raise ConfigError(f"reference refinement must be >= 2, got {self.reference}")

    def scheme_config(self) -> SchemeConfig:
        return SchemeConfig(self.scheme, self.convection, self.eps, self.p, self.cfl, self.workers)

    def manifest(self) -> dict:
        d = asdict(self)
        d.pop("extra")
        d["ns"] = list(self.ns)
        return d


# {{{ argument handling


def build_parser() -> argparse.ArgumentParser:
    names = sorted(CATALOG) + sorted(ALIASES)
    ap = argparse.ArgumentParser(
        prog="wenodiff",
        description="Sixth-order WENO solvers for degenerate parabolic and convection-diffusion problems.",
    )
    ap.add_argument("--problem", choices=names, help="benchmark problem")
    ap.add_argument("--scheme", choices=SCHEMES, help="diffusion scheme (default cweno-dz)")
    ap.add_argument("--convection", choices=CONVECTION_VARIANTS, help="convection scheme (default js)")
    ap.add_argument("--n", type=int, help="cells per axis for a single run")
    ap.add_argument("--sweep", help="comma-separated cell counts for a convergence sweep")
    ap.add_argument("--m", type=float, help="porous medium exponent (barenblatt only)")
    ap.add_argument("--cfl", type=float, help="CFL number (default 0.4)")
    ap.add_argument("--tfinal", type=float, help="final time (default: the problem's)")
    ap.add_argument("--dt", type=float, help="override the problem's time step")
    ap.add_argument("--eps", type=float, help="weight regularization of the diffusion scheme")
    ap.add_argument("--p", type=int, help="exponent of the CWENO-DZ weights (default 1)")
    ap.add_argument("--reference", type=int, metavar="K",
                    help="also dump a reference run on a K-times finer grid, subsampled")
    ap.add_argument("--out", help="output directory (default ./out)")
    ap.add_argument("--workers", type=int, help="threads for 2D sweeps (default 1)")
    ap.add_argument("--manifest", help="JSON config (e.g. a previous run's manifest); flags win")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def _parse_sweep(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(s) for s in text.split(",") if s.strip())
    except ValueError as exc:
        raise ConfigError(f"invalid sweep list {text!r}") from exc


def resolve_config(args: argparse.Namespace) -> RunConfig:
    file_cfg: dict = {}
    if args.manifest:
        try:
            file_cfg = json.loads(Path(args.manifest).read_text())
        except json.JSONDecodeError as exc:
            raise ConfigError(f"malformed config file {args.manifest}: {exc}") from exc
        if not isinstance(file_cfg, dict):
            raise ConfigError(f"config file {args.manifest} must hold a JSON object")

    def pick(key, default=None):
        value = getattr(args, key, None)
        if value is not None:
            return value
        return file_cfg.get(key, default)

    name = pick("problem")
    if name is None:
        raise ConfigError("--problem is required")
    name = ALIASES.get(name, name)
    if name not in CATALOG:
        raise ConfigError(f"unknown problem {name!r}")

    if args.sweep is not None and args.n is not None:
        raise ConfigError("--n and --sweep are mutually exclusive")
    if args.sweep is not None:
        ns, sweep = _parse_sweep(args.sweep), True
    elif args.n is not None:
        ns, sweep = (args.n,), False
    elif file_cfg.get("ns"):
        ns, sweep = tuple(int(n) for n in file_cfg["ns"]), bool(file_cfg.get("sweep", False))
    else:
        ns, sweep = (problem(name, m=pick("m")).default_n,), False

    return RunConfig(
        problem=name,
        scheme=pick("scheme", "cweno-dz"),
        convection=pick("convection", "js"),
        ns=ns,
        sweep=sweep,
        m=pick("m"),
        cfl=pick("cfl", 0.4),
        tfinal=pick("tfinal"),
        dt=pick("dt"),
        eps=pick("eps"),
        p=pick("p", 1),
        workers=pick("workers", 1),
        reference=pick("reference"),
        out=pick("out", "out"),
    )


# }}}


# {{{ output


def _fmt(v: float | None) -> str:
    return "" if v is None else f"{v:.17g}"


def solution_csv(sol: SolutionField) -> str:
    buf = io.StringIO()
    if sol.grid.dimension == 1:
        buf.write("x,u\n")
        (x,) = sol.coordinates
        for xi, ui in zip(x, sol.values):
            buf.write(f"{xi:.17g},{ui:.17g}\n")
    else:
        buf.write("x,y,u\n")
        X, Y = sol.coordinates
        # arrays are [y, x]: row-major by y then x
        for xi, yi, ui in zip(X.ravel(), Y.ravel(), sol.values.ravel()):
            buf.write(f"{xi:.17g},{yi:.17g},{ui:.17g}\n")
    return buf.getvalue()


def error_table_csv(reports: Sequence[ErrorReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(TABLE_HEADER)
    for r in reports:
        w.writerow([r.n, _fmt(r.l1), _fmt(r.order_l1), _fmt(r.l2), _fmt(r.order_l2), _fmt(r.linf),
                    _fmt(r.order_linf), _fmt(r.min_value), f"{r.runtime_seconds:.3f}"])
    return buf.getvalue()


def _stem(cfg: RunConfig, prob: ProblemDefinition) -> str:
    stem = prob.name
    if "m" in prob.params and prob.name == "barenblatt_pme":
        stem += f"_m{prob.params['m']:g}"
    return f"{stem}_{cfg.scheme}"


# }}}


def run(cfg: RunConfig) -> list[Path]:
    """Execute *cfg* and return the files written.

    Raises :class:`ConfigError`, :class:`NumericalBlowup`,
    :class:`StepLimitExceeded` or :class:`OSError`.
    """
    try:
        prob = problem(cfg.problem, m=cfg.m)
        scheme = cfg.scheme_config()
        tfinal = prob.final_time if cfg.tfinal is None else cfg.tfinal
        loop = TimeLoopConfig(tfinal, cfl=cfg.cfl, dt=cfg.dt)
        if tfinal < prob.start_time:
            raise ValueError(f"{prob.name} starts at t = {prob.start_time}; --tfinal {tfinal} is earlier")
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    stem = _stem(cfg, prob)
    written: list[Path] = []

    reports = []
    for n in cfg.ns:
        grid = GridSpec.uniform(prob.domain, n)
        sol = advance(prob, grid, scheme, loop)
        logger.info("%s N=%d: %d steps, %.2fs", prob.name, n, sol.steps, sol.runtime_seconds)
        path = out / f"solution_{stem}_N{n}.csv"
        path.write_text(solution_csv(sol))
        written.append(path)
        if prob.exact is not None:
            reports.append(error_report(prob, sol))
        if cfg.reference:
            ref = reference_solution(prob, n, cfg.reference, loop=loop)
            path = out / f"reference_{prob.name}_N{n}x{cfg.reference}.csv"
            path.write_text(solution_csv(ref))
            written.append(path)

    if reports:
        table = error_table_csv(with_orders(reports))
        path = out / f"errors_{stem}.csv"
        path.write_text(table)
        written.append(path)
        sys.stdout.write(table)

    manifest = {"version": __version__, **cfg.manifest(), "outputs": [p.name for p in written]}
    path = out / "manifest.json"
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    written.append(path)
    return written


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = resolve_config(args)
        run(cfg)
    except (NumericalBlowup, StepLimitExceeded) as exc:
        print(f"wenodiff: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"wenodiff: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, TypeError) as exc:
        # ConfigError plus validation failures of the scheme/problem objects
        print(f"wenodiff: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
