from __future__ import annotations

from dataclasses import dataclass

from wenodiff.diffusion import DEFAULT_EPS, SCHEMES

CONVECTION_VARIANTS = ("js", "m")


@dataclass(frozen=True)
class SchemeConfig:
    """Scheme selection shared by the kernels, the integrator and the CLI.

    ``eps`` is the weight regularization of the diffusion scheme; ``None``
    picks the scheme's default.
    """

    diffusion: str = "cweno-dz"
    convection: str = "js"
    eps: float | None = None
    p: int = 1
    cfl: float = 0.4
    workers: int = 1

    def __post_init__(self) -> None:
        if self.diffusion not in SCHEMES:
            raise ValueError(f"unknown diffusion scheme {self.diffusion!r}; expected one of {SCHEMES}")
        if self.convection not in CONVECTION_VARIANTS:
            raise ValueError(
                f"unknown convection scheme {self.convection!r}; expected one of {CONVECTION_VARIANTS}"
            )
        if self.eps is not None and not self.eps > 0:
            raise ValueError(f"eps must be positive, got {self.eps}")
        if self.p < 1:
            raise ValueError(f"p must be >= 1, got {self.p}")
        if not self.cfl > 0:
            raise ValueError(f"cfl must be positive, got {self.cfl}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")

    @property
    def diffusion_eps(self) -> float:
        return DEFAULT_EPS[self.diffusion] if self.eps is None else self.eps
