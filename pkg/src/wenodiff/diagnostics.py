"""Error norms, observed orders and solution-quality metrics."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from wenodiff.config import SchemeConfig
from wenodiff.integrator import SolutionField, TimeLoopConfig, advance
from wenodiff.mesh import GridSpec
from wenodiff.problems import ProblemDefinition


@dataclass(frozen=True)
class ErrorReport:
    n: int
    l1: float
    l2: float
    linf: float
    min_value: float
    runtime_seconds: float
    order_l1: float | None = None
    order_l2: float | None = None
    order_linf: float | None = None


def error_norms(numeric, exact) -> tuple[float, float, float]:
    """Mean absolute, root-mean-square and maximum pointwise error.

    The averages run over every node, so a 2D field is normalized by
    ``(Nx + 1)(Ny + 1)``.
    """
    numeric = np.asarray(numeric, dtype=np.float64)
    exact = np.asarray(exact, dtype=np.float64)
    if numeric.shape != exact.shape:
        raise ValueError(f"shape mismatch: {numeric.shape} vs {exact.shape}")
    if numeric.size == 0:
        raise ValueError("empty fields")
    e = np.abs(numeric - exact).ravel()
    linf = float(np.max(e))
    # scale by the max so squaring neither underflows nor overflows
    l2 = linf * float(np.sqrt(np.mean((e / linf) ** 2))) if linf > 0 else 0.0
    return float(np.mean(e)), l2, linf


def convergence_orders(errors: Sequence[float], ns: Sequence[int]) -> list[float | None]:
    """``log2(e_coarse / e_fine)`` for successive grid doublings.

    The first entry is always ``None``, as is any order with a zero error.
    """
    if len(errors) != len(ns):
        raise ValueError("errors and ns must have the same length")
    for a, b in zip(ns, ns[1:]):
        if b != 2 * a:
            raise ValueError(f"grid sizes must double, got {a} -> {b}")
    orders: list[float | None] = [None]
    for coarse, fine in zip(errors, errors[1:]):
        if coarse > 0 and fine > 0:
            orders.append(math.log2(coarse / fine))
        else:
            orders.append(None)
    return orders


def min_value(field) -> float:
    field = np.asarray(field)
    if field.size == 0:
        raise ValueError("empty field")
    return float(np.min(field))


def exact_field(problem: ProblemDefinition, sol: SolutionField) -> np.ndarray:
    if problem.exact is None:
        raise ValueError(f"{problem.name} has no exact solution")
    return np.asarray(problem.exact(sol.time, *sol.coordinates), dtype=np.float64)


def error_report(problem: ProblemDefinition, sol: SolutionField) -> ErrorReport:
    l1, l2, linf = error_norms(sol.values, exact_field(problem, sol))
    return ErrorReport(sol.grid.axes[0].n, l1, l2, linf, min_value(sol.values), sol.runtime_seconds)


def with_orders(reports: Sequence[ErrorReport]) -> list[ErrorReport]:
    """Attach observed orders; rows not preceded by a halved grid get none."""
    out = list(reports[:1])
    for prev, cur in zip(reports, reports[1:]):
        if cur.n != 2 * prev.n:
            out.append(cur)
            continue
        o = [convergence_orders([getattr(prev, k), getattr(cur, k)], [prev.n, cur.n])[1]
             for k in ("l1", "l2", "linf")]
        out.append(replace(cur, order_l1=o[0], order_l2=o[1], order_linf=o[2]))
    return out


def convergence_study(problem: ProblemDefinition, ns: Sequence[int], cfg: SchemeConfig,
                      loop: TimeLoopConfig | None = None) -> tuple[list[ErrorReport], list[SolutionField]]:
    """Run *problem* on each ``N`` (``N x N`` in 2D) and tabulate errors."""
    reports, solutions = [], []
    for n in ns:
        grid = GridSpec.uniform(problem.domain, n)
        sol = advance(problem, grid, cfg, loop)
        solutions.append(sol)
        reports.append(error_report(problem, sol))
    return with_orders(reports), solutions


def reference_solution(problem: ProblemDefinition, n: int, refinement: int,
                       cfg: SchemeConfig | None = None,
                       loop: TimeLoopConfig | None = None) -> SolutionField:
    """High-resolution self-run, point-subsampled onto the ``n``-cell grid.

    Stands in for an exact solution where none is known; by default it
    uses MWENO for diffusion and WENO-M for convection.
    """
    if refinement < 1:
        raise ValueError(f"refinement must be >= 1, got {refinement}")
    cfg = cfg or SchemeConfig(diffusion="mweno", convection="m")
    fine = advance(problem, GridSpec.uniform(problem.domain, n * refinement), cfg, loop)
    sub = (slice(None, None, refinement),) * problem.dimension
    return SolutionField(GridSpec.uniform(problem.domain, n), fine.values[sub], fine.time,
                         fine.steps, fine.runtime_seconds, fine.dt)
