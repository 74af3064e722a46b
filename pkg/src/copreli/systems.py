"""Series/parallel system lifetimes under dependent or independent components.

A series system fails at the first component failure, a parallel system at
the last.  With dependence described by a copula family, the survival
function of the series system is the family formula applied to the marginal
survival values (the formula acting in its survival-copula role), and the
distribution function of the parallel system is the formula applied to the
marginal distribution values.  Under the independence assumption both
collapse to plain products.

All aging functions (hazard, reversed hazard, mean residual life, aging
intensity) are computed numerically from the survival function, since no
closed-form densities exist for general families.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad

from .copulas import Copula
from .exceptions import CopreliError, DomainError, IntegrationError, SingularityError
from .marginals import Marginal
from .numerics import central_log_derivative

__all__ = ["System", "ReliabilityCurve", "CURVE_COLUMNS"]

CURVE_COLUMNS = ("sf", "hr", "rhr", "mrl", "ai")

_SF_FLOOR = 1e-12


@dataclass(frozen=True)
class System:
    """A series or parallel system over ``marginals`` with copula dependence.

    ``mode='independent'`` ignores the copula entirely (``copula`` may be
    None).  A single-component system is allowed and degenerates to its
    marginal in either structure.
    """

    marginals: tuple[Marginal, ...]
    structure: str  # "series" | "parallel"
    mode: str = "independent"  # "dependent" | "independent"
    copula: Copula | None = None

    def __post_init__(self):
        object.__setattr__(self, "marginals", tuple(self.marginals))
        if self.structure not in ("series", "parallel"):
            raise DomainError(f"structure must be series or parallel, got {self.structure!r}")
        if self.mode not in ("dependent", "independent"):
            raise DomainError(f"mode must be dependent or independent, got {self.mode!r}")
        if not self.marginals:
            raise DomainError("a system needs at least one component")
        n = len(self.marginals)
        if self.mode == "dependent" and n > 1:
            if self.copula is None:
                raise DomainError("dependent mode needs a copula")
            if self.copula.dim != n:
                raise DomainError(
                    f"copula dimension {self.copula.dim} != component count {n}"
                )
            bad = self.copula.param_violations()
            if bad:
                raise DomainError("invalid copula parameters: " + "; ".join(bad))

    @property
    def n(self) -> int:
        return len(self.marginals)

    def _u(self, t: float) -> np.ndarray:
        return np.array([m.cdf(t) for m in self.marginals])

    def _uhat(self, t: float) -> np.ndarray:
        return np.array([m.sf(t) for m in self.marginals])

    def sf(self, t: float) -> float:
        """Survival probability of the system lifetime at t."""
        if t < 0:
            raise DomainError("t must be >= 0")
        if self.n == 1:
            m = self.marginals[0]
            return m.sf(t)
        if self.structure == "series":
            uhat = self._uhat(t)
            if self.mode == "independent":
                return float(np.prod(uhat))
            return float(self.copula.value(uhat))
        u = self._u(t)
        if self.mode == "independent":
            return float(1.0 - np.prod(u))
        return float(1.0 - self.copula.value(u))

    def cdf(self, t: float) -> float:
        if t < 0:
            raise DomainError("t must be >= 0")
        if self.n > 1 and self.structure == "parallel":
            u = self._u(t)
            if self.mode == "independent":
                return float(np.prod(u))
            return float(self.copula.value(u))
        return 1.0 - self.sf(t)

    def hazard(self, t: float, h: float | None = None) -> float:
        """-d/dt ln sf(t) by central differences with an adaptive step."""
        if self.sf(t) <= _SF_FLOOR:
            raise SingularityError("survival function vanished", t=t)
        return -central_log_derivative(self.sf, t, h=h)

    def reversed_hazard(self, t: float, h: float | None = None) -> float:
        """+d/dt ln cdf(t) by central differences with an adaptive step."""
        if self.cdf(t) <= _SF_FLOOR:
            raise SingularityError("distribution function vanished", t=t)
        return central_log_derivative(self.cdf, t, h=h)

    def mrl(self, t: float) -> float:
        """Mean residual life: integral of sf over (t, inf) divided by sf(t)."""
        sft = self.sf(t)
        if sft <= _SF_FLOOR:
            raise SingularityError("survival function vanished", t=t)
        scale = max(m.mean() for m in self.marginals)
        cap = t + 50.0 * scale
        upper = t + scale
        while upper < cap and self.sf(upper) > 1e-12 * sft:
            upper = min(cap, t + 2.0 * (upper - t))
        if self.sf(upper) > 1e-6 * sft:
            raise IntegrationError(
                f"survival function is not decaying on ({t}, {upper}); refusing to truncate"
            )
        integral, _err = quad(self.sf, t, upper, epsrel=1e-8, epsabs=1e-14, limit=200)
        return integral / sft

    def ai(self, t: float) -> float:
        """Aging intensity: t times the hazard over the cumulative hazard -ln sf(t)."""
        if t <= 0:
            raise DomainError("aging intensity needs t > 0")
        sft = self.sf(t)
        if not (_SF_FLOOR < sft < 1.0 - 1e-15):
            raise SingularityError("aging intensity undefined where sf is 0 or 1", t=t)
        return t * self.hazard(t) / (-math.log(sft))

    def independent_twin(self) -> "System":
        """The same components with the independence assumption imposed."""
        return System(marginals=self.marginals, structure=self.structure, mode="independent")

    def curve(self, grid) -> "ReliabilityCurve":
        return ReliabilityCurve.build(self, grid)


@dataclass(frozen=True)
class ReliabilityCurve:
    """Grid evaluation of all aging functions for one system.

    Cells that are undefined at a grid point (singularities at the support
    edges) hold NaN and carry an entry in ``flags`` instead of a silent zero.
    """

    grid: np.ndarray
    sf: np.ndarray
    hr: np.ndarray
    rhr: np.ndarray
    mrl: np.ndarray
    ai: np.ndarray
    flags: tuple[tuple[int, str, str], ...] = field(default_factory=tuple)

    @staticmethod
    def build(system: System, grid) -> "ReliabilityCurve":
        grid = np.asarray(grid, dtype=float)
        if grid.ndim != 1:
            raise DomainError("grid must be one-dimensional")
        if grid.size and (np.any(np.diff(grid) <= 0) or grid[0] < 0):
            raise DomainError("grid must be strictly increasing and nonnegative")
        cols = {name: np.full(grid.shape, np.nan) for name in CURVE_COLUMNS}
        flags: list[tuple[int, str, str]] = []
        calls = {"sf": system.sf, "hr": system.hazard, "rhr": system.reversed_hazard,
                 "mrl": system.mrl, "ai": system.ai}
        for i, t in enumerate(grid):
            for name in CURVE_COLUMNS:
                try:
                    cols[name][i] = calls[name](float(t))
                except CopreliError as exc:
                    flags.append((i, name, str(exc)))
        return ReliabilityCurve(grid=grid, flags=tuple(flags), **cols)

    def to_csv(self) -> str:
        out = io.StringIO()
        out.write("t,sf,hr,rhr,mrl,ai\n")
        for i in range(self.grid.size):
            row = [self.grid[i], self.sf[i], self.hr[i], self.rhr[i], self.mrl[i], self.ai[i]]
            out.write(",".join(repr(float(x)) for x in row) + "\n")
        return out.getvalue()

    def to_json(self) -> str:
        def col(values):
            return [None if math.isnan(v) else float(v) for v in values]

        record = {
            "t": [float(x) for x in self.grid],
            "sf": col(self.sf),
            "hr": col(self.hr),
            "rhr": col(self.rhr),
            "mrl": col(self.mrl),
            "ai": col(self.ai),
            "flags": [{"row": i, "column": c, "reason": r} for i, c, r in self.flags],
        }
        return json.dumps(record, indent=2)
