"""Error measures for wrongly assuming independent components, with OA/UA verdicts.

All errors are signed ``dependent minus independent``; a negative value is an
over-assessment (OA) of the function in question, a positive value an
under-assessment (UA).  Survival-function errors have closed forms in the
copula; hazard and reversed-hazard errors are log-derivatives of the
corresponding ratios and are evaluated by the same central stencil as the
system hazards, which keeps the two routes consistent to rounding.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass

import numpy as np

from .copulas import Copula
from .exceptions import DomainError, SingularityError
from .marginals import Marginal
from .numerics import central_log_derivative
from .systems import System

__all__ = [
    "SystemPair",
    "ErrorReport",
    "VERDICT_TOL",
    "classify_assessment",
]

VERDICT_TOL = 1e-10

MEASURES = ("sf", "hr", "rhr", "mrl")


@dataclass(frozen=True)
class SystemPair:
    """A dependent system and its independence-assumption twin."""

    copula: Copula
    marginals: tuple[Marginal, ...]
    structure: str

    def __post_init__(self):
        object.__setattr__(self, "marginals", tuple(self.marginals))
        if self.structure not in ("series", "parallel"):
            raise DomainError(f"structure must be series or parallel, got {self.structure!r}")

    @property
    def dependent(self) -> System:
        return System(marginals=self.marginals, structure=self.structure,
                      mode="dependent", copula=self.copula)

    @property
    def independent(self) -> System:
        return System(marginals=self.marginals, structure=self.structure, mode="independent")

    # --- survival function -------------------------------------------------

    def sf_error(self, t: float) -> tuple[float, float]:
        """(raw, relative) survival-function error at t."""
        dep = self.dependent.sf(t)
        ind = self.independent.sf(t)
        raw = dep - ind
        if ind <= 1e-12:
            raise SingularityError("independent-counterpart survival vanished", t=t)
        return raw, raw / ind

    # --- hazard-type errors (log-ratio derivatives) ------------------------

    def _ratio_sf(self, t: float) -> float:
        return self.dependent.sf(t) / self.independent.sf(t)

    def _ratio_cdf(self, t: float) -> float:
        return self.dependent.cdf(t) / self.independent.cdf(t)

    def hr_error(self, t: float, h: float | None = None) -> float:
        """Hazard-rate error: -d/dt ln( sf_dep / sf_ind )."""
        return -central_log_derivative(self._ratio_sf, t, h=h)

    def rhr_error(self, t: float, h: float | None = None) -> float:
        """Reversed-hazard error: +d/dt ln( cdf_dep / cdf_ind )."""
        return central_log_derivative(self._ratio_cdf, t, h=h)

    def mrl_error(self, t: float) -> tuple[float, float]:
        dep = self.dependent.mrl(t)
        ind = self.independent.mrl(t)
        raw = dep - ind
        return raw, raw / ind

    def error_report(self, grid, measure: str = "sf") -> "ErrorReport":
        """Evaluate one error measure over a grid, with per-point OA/UA verdicts."""
        if measure not in MEASURES:
            raise DomainError(f"measure must be one of {MEASURES}, got {measure!r}")
        grid = np.asarray(grid, dtype=float)
        raw = np.full(grid.shape, np.nan)
        rel = np.full(grid.shape, np.nan)
        flags: list[tuple[int, str]] = []
        for i, t in enumerate(grid):
            t = float(t)
            try:
                if measure == "sf":
                    raw[i], rel[i] = self.sf_error(t)
                elif measure == "mrl":
                    raw[i], rel[i] = self.mrl_error(t)
                elif measure == "hr":
                    raw[i] = self.hr_error(t)
                    rel[i] = raw[i] / self.independent.hazard(t)
                else:
                    raw[i] = self.rhr_error(t)
                    rel[i] = raw[i] / self.independent.reversed_hazard(t)
            except SingularityError as exc:
                flags.append((i, str(exc)))
        return ErrorReport(grid=grid, raw=raw, relative=rel, measure=measure,
                           structure=self.structure, flags=tuple(flags))


def _verdict(raw: float) -> str:
    if np.isnan(raw):
        return "undefined"
    if raw < -VERDICT_TOL:
        return "OA"
    if raw > VERDICT_TOL:
        return "UA"
    return "zero"


@dataclass(frozen=True)
class ErrorReport:
    """Signed error of one measure on a grid, dependent minus independent."""

    grid: np.ndarray
    raw: np.ndarray
    relative: np.ndarray
    measure: str
    structure: str
    flags: tuple[tuple[int, str], ...] = ()

    @property
    def verdict_per_t(self) -> list[str]:
        return [_verdict(x) for x in self.raw]

    def to_csv(self) -> str:
        out = io.StringIO()
        out.write("t,raw,relative,verdict\n")
        for t, raw, rel, v in zip(self.grid, self.raw, self.relative, self.verdict_per_t):
            out.write(f"{float(t)!r},{float(raw)!r},{float(rel)!r},{v}\n")
        return out.getvalue()

    def to_json(self) -> str:
        def col(values):
            return [None if np.isnan(v) else float(v) for v in values]

        return json.dumps({
            "measure": self.measure,
            "structure": self.structure,
            "t": [float(x) for x in self.grid],
            "raw": col(self.raw),
            "relative": col(self.relative),
            "verdict": self.verdict_per_t,
            "classification": classify_assessment(self),
            "flags": [{"row": i, "reason": r} for i, r in self.flags],
        }, indent=2)


def classify_assessment(report: ErrorReport) -> str:
    """Collapse per-point verdicts: uniform OA, uniform UA, zero, or mixed."""
    verdicts = {v for v in report.verdict_per_t if v != "undefined"}
    if not verdicts:
        raise DomainError("error report has no defined grid points")
    if verdicts == {"zero"}:
        return "zero"
    if verdicts <= {"OA", "zero"}:
        return "uniform OA" if "OA" in verdicts else "zero"
    if verdicts <= {"UA", "zero"}:
        return "uniform UA"
    return "mixed"
