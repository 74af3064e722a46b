"""Copula families and their survival counterparts.

Twelve families ship: the independence product, Farlie-Gumbel-Morgenstern,
Fischer-Kock, Clayton, Gumbel-Hougaard, Gumbel-Barnet, Nelsen's tenth
family, Marshall-Olkin, Ali-Mikhail-Haq, Fischer-Hinzmann, an n-variate
extension of the Rodriguez-Lallena / Ubeda-Flores perturbation, and the
bivariate linear Spearman copula.

Every family evaluates at points of the unit hypercube (vectorised over a
trailing axis of length ``dim``).  ``survival_value`` returns the survival
copula: families flagged radially symmetric substitute the survival
coordinates straight into the same formula, all others go through the
inclusion-exclusion conversion ``poincare_survival``.

Spec strings look like ``fgm:alpha=0.5`` or
``marshall_olkin:alpha1=0.5,alpha2=1.5``; ``parse_copula`` and
``format_copula`` round-trip bit-exactly.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, fields
from typing import ClassVar

import numpy as np

from .exceptions import CapacityError, ConfigError, DomainError

__all__ = [
    "Copula",
    "Independence",
    "Fgm",
    "FischerKock",
    "Clayton",
    "GumbelHougaard",
    "GumbelBarnet",
    "NelsenTen",
    "MarshallOlkin",
    "Amh",
    "FischerHinzmann",
    "RluExtended",
    "LinearSpearman",
    "poincare_survival",
    "parse_copula",
    "format_copula",
    "FAMILIES",
    "MAX_POINCARE_DIM",
]

MAX_POINCARE_DIM = 20


def _as_points(u, dim: int) -> np.ndarray:
    pts = np.asarray(u, dtype=float)
    if pts.shape[-1:] != (dim,):
        raise DomainError(
            f"point has {pts.shape[-1] if pts.ndim else 0} coordinates, copula has dimension {dim}"
        )
    if np.any((pts < 0.0) | (pts > 1.0)):
        raise DomainError("copula arguments must lie in the unit hypercube")
    return pts


def _scalar_like(x, template):
    if np.ndim(template) == 1:
        return float(x)
    return x


class Copula:
    """Common machinery for all families; concrete families are frozen dataclasses."""

    family: ClassVar[str]
    radially_symmetric: ClassVar[bool] = False

    dim: int

    @property
    def margin_axiom_exempt(self) -> bool:
        return False

    def param_violations(self) -> list[str]:
        """Total validation: a list of human-readable violations, empty when ok."""
        raise NotImplementedError

    def _raw(self, pts: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def value(self, u):
        """Copula value C(u); raises DomainError on invalid parameters or points."""
        bad = self.param_violations()
        if bad:
            raise DomainError(f"invalid {self.family} parameters: " + "; ".join(bad))
        pts = _as_points(u, self.dim)
        return _scalar_like(self._raw(pts), pts)

    def survival_value(self, uhat):
        """Survival copula at uhat.

        Radially symmetric families reuse the copula formula on the survival
        coordinates; for the rest the value is derived from the copula by
        inclusion-exclusion over coordinate subsets.
        """
        if self.radially_symmetric:
            return self.value(uhat)
        pts = _as_points(uhat, self.dim)
        return _scalar_like(poincare_survival(self, 1.0 - pts), pts)

    def spec_string(self) -> str:
        parts = []
        for f in fields(self):
            v = getattr(self, f.name)
            if f.name == "dim":
                if v != 2:
                    parts.append(f"dim={v}")
            elif isinstance(v, tuple):
                parts.extend(f"{f.name}{i + 1}={x!r}" for i, x in enumerate(v))
            elif isinstance(v, bool):
                if v:
                    parts.append(f"{f.name}=true")
            else:
                parts.append(f"{f.name}={v!r}")
        if not parts:
            return self.family
        return self.family + ":" + ",".join(parts)

    def __str__(self) -> str:
        return self.spec_string()


def poincare_survival(copula: Copula, u) -> float | np.ndarray:
    """Joint survival value 1 - S1 + S2 - ... from copula values at ``u``.

    ``S_k`` sums the copula over all k-subsets of coordinates, with the
    remaining coordinates marginalised by setting them to 1.  For the
    independence copula this reduces to prod(1 - u_i).
    """
    pts = _as_points(u, copula.dim)
    n = copula.dim
    if n > MAX_POINCARE_DIM:
        raise CapacityError(
            f"inclusion-exclusion over {n} coordinates needs 2^{n} copula evaluations"
        )
    total = np.ones(pts.shape[:-1], dtype=float)
    for k in range(1, n + 1):
        sign = (-1.0) ** k
        for subset in itertools.combinations(range(n), k):
            coords = np.ones_like(pts)
            coords[..., subset] = pts[..., subset]
            total = total + sign * copula._raw(coords)
    return _scalar_like(total, pts)


def _interval_violation(name: str, value: float, lo, hi, lo_open=False, hi_open=False) -> str | None:
    ok = True
    if not math.isfinite(value):
        ok = False
    if lo is not None and (value < lo or (lo_open and value == lo)):
        ok = False
    if hi is not None and (value > hi or (hi_open and value == hi)):
        ok = False
    if ok:
        return None
    lo_s = "(" if lo_open else "["
    hi_s = ")" if hi_open else "]"
    lo_v = "-inf" if lo is None else repr(lo)
    hi_v = "inf" if hi is None else repr(hi)
    return f"{name}={value!r} outside {lo_s}{lo_v}, {hi_v}{hi_s}"


def _dim_violation(dim: int) -> str | None:
    if not isinstance(dim, int) or dim < 2:
        return f"dim={dim!r} must be an integer >= 2"
    return None


@dataclass(frozen=True)
class Independence(Copula):
    """Product copula: C(u) = prod u_i."""

    dim: int = 2
    family: ClassVar[str] = "independence"

    def param_violations(self):
        v = _dim_violation(self.dim)
        return [v] if v else []

    def _raw(self, pts):
        return np.prod(pts, axis=-1)


@dataclass(frozen=True)
class Fgm(Copula):
    """Farlie-Gumbel-Morgenstern: (prod u_i) (1 + alpha prod (1 - u_i)), alpha in [-1, 1].

    The one genuinely radially symmetric family here.
    """

    alpha: float
    dim: int = 2
    family: ClassVar[str] = "fgm"
    radially_symmetric: ClassVar[bool] = True

    def param_violations(self):
        out = [_interval_violation("alpha", self.alpha, -1.0, 1.0), _dim_violation(self.dim)]
        return [v for v in out if v]

    def _raw(self, pts):
        return np.prod(pts, axis=-1) * (1.0 + self.alpha * np.prod(1.0 - pts, axis=-1))


@dataclass(frozen=True)
class FischerKock(Copula):
    """Fischer-Kock: (prod u_i) (1 + alpha prod (1 - u_i^(1/r)))^r, r >= 1, alpha in [-1, 1].

    Coincides with FGM at r = 1.  Treated as radially symmetric following the
    source material's usage; the substitution identity is exact only at r = 1.
    """

    r: float
    alpha: float
    dim: int = 2
    family: ClassVar[str] = "fischer_kock"
    radially_symmetric: ClassVar[bool] = True

    def param_violations(self):
        out = [
            _interval_violation("r", self.r, 1.0, None),
            _interval_violation("alpha", self.alpha, -1.0, 1.0),
            _dim_violation(self.dim),
        ]
        return [v for v in out if v]

    def _raw(self, pts):
        inner = 1.0 + self.alpha * np.prod(1.0 - pts ** (1.0 / self.r), axis=-1)
        return np.prod(pts, axis=-1) * inner**self.r


@dataclass(frozen=True)
class Clayton(Copula):
    """Clayton: (sum u_i^(-alpha) - (n - 1))^(-1/alpha), alpha > 0.

    The -(n-1) constant keeps uniform margins in every dimension and matches
    the bivariate -1 form.
    """

    alpha: float
    dim: int = 2
    family: ClassVar[str] = "clayton"

    def param_violations(self):
        out = [_interval_violation("alpha", self.alpha, 0.0, None, lo_open=True),
               _dim_violation(self.dim)]
        return [v for v in out if v]

    def _raw(self, pts):
        n = self.dim
        m = np.min(pts, axis=-1, keepdims=True)
        out = np.zeros(pts.shape[:-1], dtype=float)
        pos = np.squeeze(m, axis=-1) > 0.0
        if np.any(pos):
            # factor out min(u)^(-alpha) so no intermediate overflows
            ratios = np.where(pts > 0, m / np.where(pts > 0, pts, 1.0), 1.0)
            inner = np.sum(ratios**self.alpha, axis=-1) - (n - 1) * np.squeeze(m, -1) ** self.alpha
            vals = np.squeeze(m, -1) * inner ** (-1.0 / self.alpha)
            out = np.where(pos, vals, 0.0)
        return out


@dataclass(frozen=True)
class GumbelHougaard(Copula):
    """Gumbel-Hougaard: exp(-(sum (-ln u_i)^alpha)^(1/alpha)), alpha >= 1."""

    alpha: float
    dim: int = 2
    family: ClassVar[str] = "gumbel_hougaard"

    def param_violations(self):
        out = [_interval_violation("alpha", self.alpha, 1.0, None), _dim_violation(self.dim)]
        return [v for v in out if v]

    def _raw(self, pts):
        with np.errstate(divide="ignore", invalid="ignore"):
            x = -np.log(pts)
            big = np.max(x, axis=-1)
            out = np.zeros(pts.shape[:-1], dtype=float)
            interior = np.isfinite(big) & (big > 0)
            if np.any(interior):
                scale = np.where(interior, big, 1.0)[..., None]
                ratios = np.where(np.isfinite(x), x, 0.0) / scale
                s = scale[..., 0] * np.sum(ratios**self.alpha, axis=-1) ** (1.0 / self.alpha)
                out = np.where(interior, np.exp(-s), out)
            out = np.where(big == 0.0, 1.0, out)  # all coordinates at 1
        return out


@dataclass(frozen=True)
class GumbelBarnet(Copula):
    """Gumbel-Barnet: (prod u_i) exp(-alpha prod ln u_i), alpha in [0, 1].

    The log product changes sign with dimension parity; only the bivariate
    form observes the min(u_i) upper bound, so dimensions above 2 are for
    exploratory use.
    """

    alpha: float
    dim: int = 2
    family: ClassVar[str] = "gumbel_barnet"

    def param_violations(self):
        out = [_interval_violation("alpha", self.alpha, 0.0, 1.0), _dim_violation(self.dim)]
        return [v for v in out if v]

    def _raw(self, pts):
        grounded = np.any(pts == 0.0, axis=-1)
        safe = np.where(pts > 0, pts, 0.5)
        val = np.prod(safe, axis=-1) * np.exp(-self.alpha * np.prod(np.log(safe), axis=-1))
        return np.where(grounded, 0.0, val)


@dataclass(frozen=True)
class NelsenTen(Copula):
    """Nelsen's family ten: prod u_i / (1 + prod (1 - u_i^alpha))^(1/alpha), alpha in (0, 1]."""

    alpha: float
    dim: int = 2
    family: ClassVar[str] = "nelsen_ten"

    def param_violations(self):
        out = [_interval_violation("alpha", self.alpha, 0.0, 1.0, lo_open=True),
               _dim_violation(self.dim)]
        return [v for v in out if v]

    def _raw(self, pts):
        prod_term = np.prod(1.0 - pts**self.alpha, axis=-1)
        return np.prod(pts, axis=-1) * np.exp(-np.log1p(prod_term) / self.alpha)


@dataclass(frozen=True)
class MarshallOlkin(Copula):
    """Marshall-Olkin (as used here): (prod u_i) min_i u_i^(alpha_i), alpha_i > 0.

    This literal form does not have uniform margins, so it is exempted from
    the margin axiom; its survival counterpart substitutes survival
    coordinates directly, again following the source usage.
    """

    alpha: tuple[float, ...]
    dim: int = 2
    family: ClassVar[str] = "marshall_olkin"
    radially_symmetric: ClassVar[bool] = True

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(float(a) for a in np.atleast_1d(self.alpha)))
        if len(self.alpha) != self.dim and _dim_violation(self.dim) is None:
            object.__setattr__(self, "dim", len(self.alpha))

    @property
    def margin_axiom_exempt(self) -> bool:
        return True

    def param_violations(self):
        out = [_dim_violation(self.dim)]
        if len(self.alpha) != self.dim:
            out.append(f"alpha has {len(self.alpha)} entries for dimension {self.dim}")
        out.extend(
            _interval_violation(f"alpha{i + 1}", a, 0.0, None, lo_open=True)
            for i, a in enumerate(self.alpha)
        )
        return [v for v in out if v]

    def _raw(self, pts):
        powered = pts ** np.asarray(self.alpha)
        return np.prod(pts, axis=-1) * np.min(powered, axis=-1)


@dataclass(frozen=True)
class Amh(Copula):
    """Ali-Mikhail-Haq: (1 - alpha) / (prod ((1 - alpha)/u_i + alpha) - alpha), alpha in [-1, 1].

    Evaluated in the cleared-denominator form; alpha = 1 uses its limit,
    (sum 1/u_i - (n - 1))^(-1).
    """

    alpha: float
    dim: int = 2
    family: ClassVar[str] = "amh"

    def param_violations(self):
        out = [_interval_violation("alpha", self.alpha, -1.0, 1.0), _dim_violation(self.dim)]
        return [v for v in out if v]

    def _raw(self, pts):
        grounded = np.any(pts == 0.0, axis=-1)
        safe = np.where(pts > 0, pts, 0.5)
        if self.alpha == 1.0:
            val = 1.0 / (np.sum(1.0 / safe, axis=-1) - (self.dim - 1))
        else:
            a = self.alpha
            prod_u = np.prod(safe, axis=-1)
            denom = np.prod(1.0 - a + a * safe, axis=-1) - a * prod_u
            val = (1.0 - a) * prod_u / denom
        return np.where(grounded, 0.0, val)


@dataclass(frozen=True)
class FischerHinzmann(Copula):
    """Fischer-Hinzmann: [ (alpha min_i u_i)^m + ((1-alpha) prod u_i)^m ]^(1/m).

    m >= 1, alpha in [0, 1].  The literal form above scales margins by
    (alpha^m + (1-alpha)^m)^(1/m) and is therefore margin-exempt; with
    ``corrected=True`` the weights sit outside the power,
    [ alpha (min u)^m + (1-alpha) (prod u)^m ]^(1/m), which restores uniform
    margins.
    """

    m: float
    alpha: float
    dim: int = 2
    corrected: bool = False
    family: ClassVar[str] = "fischer_hinzmann"
    radially_symmetric: ClassVar[bool] = True

    @property
    def margin_axiom_exempt(self) -> bool:
        return not self.corrected

    def param_violations(self):
        out = [
            _interval_violation("m", self.m, 1.0, None),
            _interval_violation("alpha", self.alpha, 0.0, 1.0),
            _dim_violation(self.dim),
        ]
        return [v for v in out if v]

    def _raw(self, pts):
        least = np.min(pts, axis=-1)
        prod_u = np.prod(pts, axis=-1)
        # factor out the dominant term before taking m-th powers so large m
        # cannot underflow the sum
        if self.corrected:
            x = least * self.alpha ** (1.0 / self.m)
            y = prod_u * (1.0 - self.alpha) ** (1.0 / self.m)
        else:
            x = self.alpha * least
            y = (1.0 - self.alpha) * prod_u
        big = np.maximum(x, y)
        small = np.minimum(x, y)
        safe = np.where(big > 0, big, 1.0)
        return big * (1.0 + (small / safe) ** self.m) ** (1.0 / self.m)


@dataclass(frozen=True)
class RluExtended(Copula):
    """n-variate Rodriguez-Lallena / Ubeda-Flores perturbation of independence.

    C(u) = prod u_i + alpha prod u_i^(a_i) (1 - u_i)^(b_i), a_i, b_i >= 1,
    alpha in [0, 1].  The perturbation peaks where u_i = a_i/(a_i + b_i),
    which is what makes the ratio against the product copula non-monotone.
    """

    a: tuple[float, ...]
    b: tuple[float, ...]
    alpha: float
    dim: int = 2
    family: ClassVar[str] = "rlu_extended"

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(float(x) for x in np.atleast_1d(self.a)))
        object.__setattr__(self, "b", tuple(float(x) for x in np.atleast_1d(self.b)))
        if len(self.a) == len(self.b) and len(self.a) != self.dim and _dim_violation(self.dim) is None:
            object.__setattr__(self, "dim", len(self.a))

    def param_violations(self):
        out = [_dim_violation(self.dim),
               _interval_violation("alpha", self.alpha, 0.0, 1.0)]
        if len(self.a) != self.dim:
            out.append(f"a has {len(self.a)} entries for dimension {self.dim}")
        if len(self.b) != self.dim:
            out.append(f"b has {len(self.b)} entries for dimension {self.dim}")
        out.extend(_interval_violation(f"a{i + 1}", x, 1.0, None) for i, x in enumerate(self.a))
        out.extend(_interval_violation(f"b{i + 1}", x, 1.0, None) for i, x in enumerate(self.b))
        return [v for v in out if v]

    def _raw(self, pts):
        bump = np.prod(pts ** np.asarray(self.a) * (1.0 - pts) ** np.asarray(self.b), axis=-1)
        return np.prod(pts, axis=-1) + self.alpha * bump

    def ratio_thresholds(self) -> tuple[float, ...]:
        """k_i = (a_i - 1)/(a_i + b_i - 1): where the i-th bump factor peaks on the u scale."""
        return tuple((ai - 1.0) / (ai + bi - 1.0) for ai, bi in zip(self.a, self.b))


@dataclass(frozen=True)
class LinearSpearman(Copula):
    """Bivariate linear Spearman copula, theta in [-1, 1].

    theta >= 0: u1 u2 + theta min(u1, u2) (1 - max(u1, u2));
    theta <  0: (1 + theta) u1 u2 on u1 + u2 < 1,
                u1 u2 + theta (1 - u1)(1 - u2) elsewhere.
    Carries a singular component of mass |theta| on the diagonal.
    """

    theta: float
    dim: int = 2
    family: ClassVar[str] = "linear_spearman"

    def param_violations(self):
        out = [_interval_violation("theta", self.theta, -1.0, 1.0)]
        if self.dim != 2:
            out.append(f"dim={self.dim!r} must be 2 for linear_spearman")
        return [v for v in out if v]

    def _raw(self, pts):
        u1 = pts[..., 0]
        u2 = pts[..., 1]
        base = u1 * u2
        if self.theta >= 0.0:
            lo = np.minimum(u1, u2)
            hi = np.maximum(u1, u2)
            return base + self.theta * lo * (1.0 - hi)
        return np.where(
            u1 + u2 < 1.0,
            (1.0 + self.theta) * base,
            base + self.theta * (1.0 - u1) * (1.0 - u2),
        )


FAMILIES: dict[str, type[Copula]] = {
    cls.family: cls
    for cls in (
        Independence,
        Fgm,
        FischerKock,
        Clayton,
        GumbelHougaard,
        GumbelBarnet,
        NelsenTen,
        MarshallOlkin,
        Amh,
        FischerHinzmann,
        RluExtended,
        LinearSpearman,
    )
}


def format_copula(c: Copula) -> str:
    return c.spec_string()


def parse_copula(spec: str) -> Copula:
    """Parse ``family:key=value,...`` into a copula instance.

    Vector parameters use indexed keys (``alpha1=...,alpha2=...``); the
    dimension is inferred from them, or given explicitly as ``dim=N``.
    """
    text = spec.strip()
    name, sep, rest = text.partition(":")
    name = name.strip().lower()
    if name not in FAMILIES:
        raise ConfigError(
            f"unknown copula family {name!r} (known: {', '.join(sorted(FAMILIES))})", token=name
        )
    kv: dict[str, str] = {}
    if sep and rest.strip():
        for item in rest.split(","):
            key, eq, value = item.partition("=")
            key = key.strip().lower()
            value = value.strip()
            if not eq or not key or not value:
                raise ConfigError(f"copula spec {spec!r}: expected key=value, got {item!r}",
                                  token=item.strip())
            if key in kv:
                raise ConfigError(f"copula spec {spec!r}: duplicate key {key!r}", token=key)
            kv[key] = value
    elif sep:
        raise ConfigError(f"copula spec {spec!r}: empty parameter list", token=text)

    def take_float(key: str) -> float:
        if key not in kv:
            raise ConfigError(f"copula spec {spec!r}: missing parameter {key!r}", token=key)
        return _parse_float(spec, key, kv.pop(key))

    def take_vector(key: str) -> tuple[float, ...]:
        idx = 1
        out = []
        while f"{key}{idx}" in kv:
            out.append(_parse_float(spec, f"{key}{idx}", kv.pop(f"{key}{idx}")))
            idx += 1
        if not out:
            raise ConfigError(
                f"copula spec {spec!r}: missing vector parameter {key}1, {key}2, ...", token=key
            )
        return tuple(out)

    dim = None
    if "dim" in kv:
        raw_dim = kv.pop("dim")
        try:
            dim = int(raw_dim)
        except ValueError:
            raise ConfigError(f"copula spec {spec!r}: dim={raw_dim!r} is not an integer",
                              token=raw_dim) from None

    try:
        if name == "independence":
            cop = Independence(dim=dim or 2)
        elif name == "fgm":
            cop = Fgm(alpha=take_float("alpha"), dim=dim or 2)
        elif name == "fischer_kock":
            cop = FischerKock(r=take_float("r"), alpha=take_float("alpha"), dim=dim or 2)
        elif name == "clayton":
            cop = Clayton(alpha=take_float("alpha"), dim=dim or 2)
        elif name == "gumbel_hougaard":
            cop = GumbelHougaard(alpha=take_float("alpha"), dim=dim or 2)
        elif name == "gumbel_barnet":
            cop = GumbelBarnet(alpha=take_float("alpha"), dim=dim or 2)
        elif name == "nelsen_ten":
            cop = NelsenTen(alpha=take_float("alpha"), dim=dim or 2)
        elif name == "marshall_olkin":
            alpha = take_vector("alpha")
            cop = MarshallOlkin(alpha=alpha, dim=dim or len(alpha))
        elif name == "amh":
            cop = Amh(alpha=take_float("alpha"), dim=dim or 2)
        elif name == "fischer_hinzmann":
            corrected = kv.pop("corrected", "false").lower() in ("true", "1", "yes")
            cop = FischerHinzmann(m=take_float("m"), alpha=take_float("alpha"),
                                  dim=dim or 2, corrected=corrected)
        elif name == "rlu_extended":
            a = take_vector("a")
            b = take_vector("b")
            cop = RluExtended(a=a, b=b, alpha=take_float("alpha"), dim=dim or len(a))
        else:  # linear_spearman
            cop = LinearSpearman(theta=take_float("theta"), dim=dim or 2)
    except ConfigError:
        raise
    if kv:
        extra = ", ".join(sorted(kv))
        raise ConfigError(f"copula spec {spec!r}: unknown parameter(s) {extra}", token=extra)
    return cop


def _parse_float(spec: str, key: str, raw: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"copula spec {spec!r}: {key}={raw!r} is not a number",
                          token=raw) from None
