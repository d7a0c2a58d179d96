"""Benchmark problems: degenerate parabolic and convection-diffusion equations.

Each problem is ``u_t + sum_d f_d(u)_{x_d} = sum_d b(u)_{x_d x_d}`` on a
box, with initial and boundary data, an optional exact solution and the
time-step rule used for it. ``b`` is the diffusion map (``g`` in the
convection-diffusion examples, built from ``eps * nu(u)``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from wenodiff.mesh import BoundaryCondition

Array = Any
Func = Callable[[Array], Array]


@dataclass(frozen=True)
class ProblemDefinition:
    name: str
    domain: tuple[tuple[float, float], ...]
    diffusion: Func
    initial: Callable[..., Array]
    bcs: tuple[BoundaryCondition, ...]
    final_time: float
    dt_rule: Callable[[tuple[float, ...], float], float]
    default_n: int
    flux: tuple[Func, ...] | None = None
    flux_prime: tuple[Func, ...] | None = None
    nu: Func | None = None
    exact: Callable[..., Array] | None = None
    params: dict[str, float] = field(default_factory=dict)
    start_time: float = 0.0

    @property
    def dimension(self) -> int:
        return len(self.domain)

    def time_step(self, spacings: tuple[float, ...], cfl: float) -> float:
        return self.dt_rule(spacings, cfl)


# {{{ Barenblatt


def barenblatt(x: Array, t: float, m: float) -> Array:
    """Barenblatt-Pattle profile ``B_m(x, t)`` of ``u_t = (u^m)_xx``."""
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")
    if not m > 1:
        raise ValueError(f"m must exceed 1, got {m}")
    q = 1 / (m + 1)
    s = 1 - q * (m - 1) / (2 * m) * np.asarray(x, dtype=np.float64) ** 2 / t ** (2 * q)
    return t ** (-q) * np.maximum(s, 0.0) ** (1 / (m - 1))


def barenblatt_radius(t: float, m: float) -> float:
    q = 1 / (m + 1)
    return float(np.sqrt(2 * m / (q * (m - 1))) * t**q)


# }}}


# {{{ coefficient functions


def power_map(m: float) -> Func:
    return lambda u: u**m


def identity(u: Array) -> Array:
    return u


def bl_flux(u: Array) -> Array:
    return u**2 / (u**2 + (1 - u) ** 2)


def bl_flux_prime(u: Array) -> Array:
    return 2 * u * (1 - u) / (u**2 + (1 - u) ** 2) ** 2


def bl_gravity_flux(u: Array) -> Array:
    return bl_flux(u) * (1 - 5 * (1 - u) ** 2)


def bl_gravity_flux_prime(u: Array) -> Array:
    return bl_flux_prime(u) * (1 - 5 * (1 - u) ** 2) + 10 * bl_flux(u) * (1 - u)


def burgers_flux(u: Array) -> Array:
    return u**2


def burgers_flux_prime(u: Array) -> Array:
    return 2 * u


def bl_nu(u: Array) -> Array:
    u = np.asarray(u, dtype=np.float64)
    return np.where((u >= 0) & (u <= 1), 4 * u * (1 - u), 0.0)


def bl_diffusion(eps: float) -> Func:
    """``g`` with ``g' = eps * 4u(1-u)`` on ``[0, 1]``, constant outside."""

    def g(u):
        u = np.asarray(u, dtype=np.float64)
        c = np.clip(u, 0.0, 1.0)
        return eps * (-4 / 3 * c**3 + 2 * c**2)

    return g


def sdp_nu(u: Array) -> Array:
    return np.where(np.abs(np.asarray(u, dtype=np.float64)) > 0.25, 1.0, 0.0)


def sdp_diffusion(eps: float) -> Func:
    """``g`` with ``g' = eps`` for ``|u| > 0.25`` and zero otherwise."""

    def g(u):
        u = np.asarray(u, dtype=np.float64)
        return eps * (np.maximum(u - 0.25, 0.0) + np.minimum(u + 0.25, 0.0))

    return g


# }}}


# {{{ time-step rules


def _dt_diffusive(scale: float = 1.0) -> Callable[[tuple[float, ...], float], float]:
    return lambda h, cfl: cfl * min(h) ** 2 / scale


def _dt_fixed_heat_2d(h: tuple[float, ...], cfl: float) -> float:
    # the 2D heat run uses a fixed factor 0.2 whatever the CFL number
    return 0.2 * min(h) ** 2


def _dt_pme_2d(h: tuple[float, ...], cfl: float) -> float:
    return cfl * min(h) ** 4 / 2


# }}}


# {{{ catalog


def heat_1d() -> ProblemDefinition:
    return ProblemDefinition(
        name="heat_1d",
        domain=((-np.pi, np.pi),),
        diffusion=identity,
        initial=lambda x: np.sin(x),
        bcs=(BoundaryCondition.periodic(),),
        final_time=2.0,
        dt_rule=_dt_diffusive(),
        default_n=80,
        exact=lambda t, x: np.exp(-t) * np.sin(x),
    )


def heat_2d() -> ProblemDefinition:
    return ProblemDefinition(
        name="heat_2d",
        domain=((-np.pi, np.pi), (-np.pi, np.pi)),
        diffusion=identity,
        initial=lambda x, y: np.sin(x + y),
        bcs=(BoundaryCondition.periodic(), BoundaryCondition.periodic()),
        final_time=2.0,
        dt_rule=_dt_fixed_heat_2d,
        default_n=40,
        exact=lambda t, x, y: np.exp(-2 * t) * np.sin(x + y),
    )


def barenblatt_pme(m: float = 5) -> ProblemDefinition:
    if not m > 1:
        raise ValueError(f"the porous medium exponent must exceed 1, got {m}")
    # times are those of the Barenblatt profile: the run starts from
    # B_m(., 1) at t = 1 and stops at t = 2
    return ProblemDefinition(
        name="barenblatt_pme",
        domain=((-6.0, 6.0),),
        diffusion=power_map(m),
        initial=lambda x: barenblatt(x, 1.0, m),
        bcs=(BoundaryCondition.dirichlet(0.0, 0.0),),
        final_time=2.0,
        dt_rule=_dt_diffusive(m),
        default_n=160,
        exact=lambda t, x: barenblatt(x, t, m),
        params={"m": m},
        start_time=1.0,
    )


def two_box_equal() -> ProblemDefinition:
    m = 5

    def u0(x):
        return np.where(((x > -3.7) & (x < -0.7)) | ((x > 0.7) & (x < 3.7)), 1.0, 0.0)

    return ProblemDefinition(
        name="two_box_equal",
        domain=((-5.5, 5.5),),
        diffusion=power_map(m),
        initial=u0,
        bcs=(BoundaryCondition.dirichlet(0.0, 0.0),),
        final_time=1.5,
        dt_rule=_dt_diffusive(m),
        default_n=220,
        params={"m": m},
    )


def two_box_unequal() -> ProblemDefinition:
    m = 6

    def u0(x):
        return np.where((x > -4) & (x < -1), 1.0, np.where((x > 0) & (x < 3), 2.0, 0.0))

    return ProblemDefinition(
        name="two_box_unequal",
        domain=((-6.0, 6.0),),
        diffusion=power_map(m),
        initial=u0,
        bcs=(BoundaryCondition.dirichlet(0.0, 0.0),),
        final_time=0.15,
        dt_rule=_dt_diffusive(m * 2 ** (m - 1)),
        default_n=240,
        params={"m": m},
    )


def buckley_leverett() -> ProblemDefinition:
    eps = 0.01
    return ProblemDefinition(
        name="buckley_leverett",
        domain=((0.0, 1.0),),
        diffusion=bl_diffusion(eps),
        initial=lambda x: np.where(x <= 1 / 3, 1 - 3 * x, 0.0),
        bcs=(BoundaryCondition("dirichlet", "extrapolate", left_value=1.0),),
        final_time=0.2,
        dt_rule=_dt_diffusive(),
        default_n=100,
        flux=(bl_flux,),
        flux_prime=(bl_flux_prime,),
        nu=bl_nu,
        params={"eps": eps},
    )


def buckley_leverett_gravity() -> ProblemDefinition:
    eps = 0.01
    return ProblemDefinition(
        name="buckley_leverett_gravity",
        domain=((0.0, 1.0),),
        diffusion=bl_diffusion(eps),
        initial=lambda x: np.where(x < 1 - 1 / np.sqrt(2), 0.0, 1.0),
        bcs=(BoundaryCondition.extrapolate(),),
        final_time=0.2,
        dt_rule=_dt_diffusive(),
        default_n=100,
        flux=(bl_gravity_flux,),
        flux_prime=(bl_gravity_flux_prime,),
        nu=bl_nu,
        params={"eps": eps},
    )


def sdp_1d() -> ProblemDefinition:
    eps = 0.1
    c = 1 / np.sqrt(2)

    def u0(x):
        return np.where(np.abs(x + c) < 0.4, 1.0, np.where(np.abs(x - c) < 0.4, -1.0, 0.0))

    return ProblemDefinition(
        name="sdp_1d",
        domain=((-2.0, 2.0),),
        diffusion=sdp_diffusion(eps),
        initial=u0,
        bcs=(BoundaryCondition.dirichlet(0.0, 0.0),),
        final_time=0.7,
        dt_rule=_dt_diffusive(),
        default_n=200,
        flux=(burgers_flux,),
        flux_prime=(burgers_flux_prime,),
        nu=sdp_nu,
        params={"eps": eps},
    )


def pme_2d() -> ProblemDefinition:
    def bump(r2):
        inside = r2 < 6
        return np.where(inside, np.exp(-1 / np.where(inside, 6 - r2, 1.0)), 0.0)

    def u0(x, y):
        r1 = (x - 2) ** 2 + (y + 2) ** 2
        r2 = (x + 2) ** 2 + (y - 2) ** 2
        return np.where(r1 < 6, bump(r1), bump(r2))

    return ProblemDefinition(
        name="pme_2d",
        domain=((-10.0, 10.0), (-10.0, 10.0)),
        diffusion=power_map(2),
        initial=u0,
        bcs=(BoundaryCondition.periodic(), BoundaryCondition.periodic()),
        final_time=1.0,
        dt_rule=_dt_pme_2d,
        default_n=80,
        params={"m": 2},
    )


def buckley_leverett_2d() -> ProblemDefinition:
    eps = 0.01
    return ProblemDefinition(
        name="buckley_leverett_2d",
        domain=((-1.5, 1.5), (-1.5, 1.5)),
        diffusion=lambda u: eps * u,
        initial=lambda x, y: np.where(x**2 + y**2 < 0.5, 1.0, 0.0),
        bcs=(BoundaryCondition.dirichlet(0.0, 0.0), BoundaryCondition.dirichlet(0.0, 0.0)),
        final_time=0.5,
        dt_rule=_dt_diffusive(),
        default_n=120,
        flux=(bl_flux, bl_gravity_flux),
        flux_prime=(bl_flux_prime, bl_gravity_flux_prime),
        params={"eps": eps},
    )


def sdp_2d() -> ProblemDefinition:
    eps = 0.1

    def u0(x, y):
        return np.where(
            (x + 0.5) ** 2 + (y + 0.5) ** 2 < 0.16,
            1.0,
            np.where((x - 0.5) ** 2 + (y - 0.5) ** 2 < 0.16, -1.0, 0.0),
        )

    return ProblemDefinition(
        name="sdp_2d",
        domain=((-1.5, 1.5), (-1.5, 1.5)),
        diffusion=sdp_diffusion(eps),
        initial=u0,
        bcs=(BoundaryCondition.dirichlet(0.0, 0.0), BoundaryCondition.dirichlet(0.0, 0.0)),
        final_time=0.5,
        dt_rule=_dt_diffusive(),
        default_n=120,
        flux=(burgers_flux, burgers_flux),
        flux_prime=(burgers_flux_prime, burgers_flux_prime),
        nu=sdp_nu,
        params={"eps": eps},
    )


CATALOG: dict[str, Callable[..., ProblemDefinition]] = {
    "heat_1d": heat_1d,
    "heat_2d": heat_2d,
    "barenblatt_pme": barenblatt_pme,
    "two_box_equal": two_box_equal,
    "two_box_unequal": two_box_unequal,
    "buckley_leverett": buckley_leverett,
    "buckley_leverett_gravity": buckley_leverett_gravity,
    "sdp_1d": sdp_1d,
    "pme_2d": pme_2d,
    "buckley_leverett_2d": buckley_leverett_2d,
    "sdp_2d": sdp_2d,
}

ALIASES = {"barenblatt": "barenblatt_pme"}


def problem(name: str, **params) -> ProblemDefinition:
    """Build a catalog problem; only ``barenblatt_pme`` takes a parameter (``m``)."""
    key = ALIASES.get(name, name)
    if key not in CATALOG:
        raise ValueError(f"unknown problem {name!r}; expected one of {sorted(CATALOG)}")
    params = {k: v for k, v in params.items() if v is not None}
    if key != "barenblatt_pme" and params:
        raise ValueError(f"problem {key!r} takes no parameters, got {sorted(params)}")
    return CATALOG[key](**params)


# }}}
