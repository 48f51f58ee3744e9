"""Declarative sources on the disk, boundary functions on the circle, and
the catalog of the fifteen standard figure cases.

A :class:`SourceFunction` describes an integrand over the unit disk as a
weighted sum of pieces, each supported on one polar rectangle and smooth
there except for an optional integrable radial factor (1 - rho)^(-beta)
at the boundary.  Transforms consume sources through :meth:`pieces`,
which hands the quadrature layer one smooth function per rectangle and
the singular exponent separately.

A :class:`BoundaryFunction` plays the same role on the unit circle and is
consumed through :meth:`arcs`; arcs are pre-split at interior kinks and
singular points so adaptive panels see clean endpoints.

Everything is immutable after construction and serializes to a small
JSON document (see :func:`parse_source_config`).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    SourceParseError,
    SourceValidationError,
    UnknownFigureError,
    NonFiniteError,
)
from .geometry import PolarPoint, PolarRectangle
from .kernels import KernelId

_PI = math.pi


def _shape_of(rho, phi):
    return np.broadcast_shapes(np.shape(rho), np.shape(phi))


def _ones_like(rho, phi):
    return np.ones(_shape_of(rho, phi))


def _check_arc(a, b):
    if not (-_PI <= a < b <= _PI + 1e-15):
        raise SourceValidationError(f"arc must satisfy -pi <= a < b <= pi, got [{a}, {b}]")


# ---------------------------------------------------------------------------
# Radial and angular factors of separable sources
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PowerOfOneMinusRho:
    """(1 - rho)^(-beta); beta < 1/2 keeps the square integrable."""

    beta: float

    def __post_init__(self):
        if not 0.0 < self.beta < 0.5:
            raise SourceValidationError(
                f"singular exponent beta must lie in (0, 1/2), got {self.beta}"
            )

    def __call__(self, rho):
        return (1.0 - np.asarray(rho, dtype=float)) ** (-self.beta)

    def to_config(self):
        return {"pow_one_minus_rho": self.beta}


@dataclass(frozen=True)
class RhoPower:
    k: float

    def __post_init__(self):
        if self.k < 0:
            raise SourceValidationError(f"rho power must be >= 0, got {self.k}")

    def __call__(self, rho):
        return np.asarray(rho, dtype=float) ** self.k

    def to_config(self):
        return {"rho_power": self.k}


@dataclass(frozen=True)
class GaussianBump:
    """amp * exp(-width * (rho - center)^2)."""

    amp: float
    center: float
    width: float

    def __post_init__(self):
        if self.width <= 0:
            raise SourceValidationError(f"bump width must be positive, got {self.width}")

    def __call__(self, rho):
        d = np.asarray(rho, dtype=float) - self.center
        return self.amp * np.exp(-self.width * d * d)

    def to_config(self):
        return {"gaussian_bump": {"amp": self.amp, "center": self.center, "width": self.width}}


@dataclass(frozen=True)
class RadialOne:
    def __call__(self, rho):
        return np.ones(np.shape(rho))

    def to_config(self):
        return "one"


@dataclass(frozen=True)
class AngularCos:
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise SourceValidationError(f"cosine order must be >= 0, got {self.n}")

    def __call__(self, phi):
        return np.cos(self.n * np.asarray(phi, dtype=float))

    def to_config(self):
        return {"cos": self.n}


@dataclass(frozen=True)
class AngularSin:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise SourceValidationError(f"sine order must be >= 1, got {self.n}")

    def __call__(self, phi):
        return np.sin(self.n * np.asarray(phi, dtype=float))

    def to_config(self):
        return {"sin": self.n}


@dataclass(frozen=True)
class AbsPhi:
    def __call__(self, phi):
        return np.abs(np.asarray(phi, dtype=float))

    def to_config(self):
        return "abs_phi"


@dataclass(frozen=True)
class PhiSquared:
    def __call__(self, phi):
        return np.asarray(phi, dtype=float) ** 2

    def to_config(self):
        return "phi_squared"


@dataclass(frozen=True)
class AbsLogAbsPhi:
    """|ln|phi||; integrable singularity at phi = 0."""

    def __call__(self, phi):
        a = np.abs(np.asarray(phi, dtype=float))
        with np.errstate(divide="ignore"):
            return np.abs(np.log(a))

    def to_config(self):
        return "abs_log_abs_phi"


@dataclass(frozen=True)
class AngularOne:
    def __call__(self, phi):
        return np.ones(np.shape(phi))

    def to_config(self):
        return "one"


# ---------------------------------------------------------------------------
# Boundary functions on the circle
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundaryArc:
    """One smooth piece of a boundary function: fn on [lo, hi], 0 elsewhere."""

    lo: float
    hi: float
    fn: object  # callable(phi) -> array


class BoundaryFunction:
    """Base class; subclasses provide __call__, arcs() and to_config()."""

    def arcs(self) -> list[BoundaryArc]:
        raise NotImplementedError

    def to_config(self) -> dict:
        raise NotImplementedError

    def __call__(self, theta):
        raise NotImplementedError


@dataclass(frozen=True)
class CharacteristicArc(BoundaryFunction):
    a: float
    b: float

    def __post_init__(self):
        _check_arc(self.a, self.b)

    def __call__(self, theta):
        t = np.asarray(theta, dtype=float)
        return ((t >= self.a) & (t <= self.b)).astype(float)

    def arcs(self):
        return [BoundaryArc(self.a, self.b, lambda phi: np.ones(np.shape(phi)))]

    def to_config(self):
        return {"type": "char_arc", "arc": [self.a, self.b]}


@dataclass(frozen=True)
class AbsTheta(BoundaryFunction):
    def __call__(self, theta):
        return np.abs(np.asarray(theta, dtype=float))

    def arcs(self):
        fn = lambda phi: np.abs(np.asarray(phi, dtype=float))
        return [BoundaryArc(-_PI, 0.0, fn), BoundaryArc(0.0, _PI, fn)]

    def to_config(self):
        return {"type": "abs_theta"}


@dataclass(frozen=True)
class ThetaSquaredOnArc(BoundaryFunction):
    a: float
    b: float

    def __post_init__(self):
        _check_arc(self.a, self.b)

    def __call__(self, theta):
        t = np.asarray(theta, dtype=float)
        return np.where((t >= self.a) & (t <= self.b), t * t, 0.0)

    def arcs(self):
        return [BoundaryArc(self.a, self.b, lambda phi: np.asarray(phi) ** 2)]

    def to_config(self):
        return {"type": "theta_squared_on_arc", "arc": [self.a, self.b]}


@dataclass(frozen=True)
class SinOnArc(BoundaryFunction):
    a: float
    b: float

    def __post_init__(self):
        _check_arc(self.a, self.b)

    def __call__(self, theta):
        t = np.asarray(theta, dtype=float)
        return np.where((t >= self.a) & (t <= self.b), np.sin(t), 0.0)

    def arcs(self):
        return [BoundaryArc(self.a, self.b, np.sin)]

    def to_config(self):
        return {"type": "sin_on_arc", "arc": [self.a, self.b]}


@dataclass(frozen=True)
class AbsLogAbsOnArc(BoundaryFunction):
    """|ln|theta|| on [a, b]; singular at 0, corner at |theta| = 1."""

    a: float
    b: float

    def __post_init__(self):
        _check_arc(self.a, self.b)

    def __call__(self, theta):
        t = np.asarray(theta, dtype=float)
        with np.errstate(divide="ignore"):
            vals = np.abs(np.log(np.abs(t)))
        return np.where((t >= self.a) & (t <= self.b), vals, 0.0)

    def arcs(self):
        fn = AbsLogAbsPhi()
        breaks = [p for p in (-1.0, 0.0, 1.0) if self.a < p < self.b]
        edges = [self.a] + breaks + [self.b]
        return [BoundaryArc(lo, hi, fn) for lo, hi in zip(edges[:-1], edges[1:])]

    def to_config(self):
        return {"type": "abs_log_abs_on_arc", "arc": [self.a, self.b]}


@dataclass(frozen=True)
class Cosine(BoundaryFunction):
    """cos(n * theta) on the full circle."""

    n: int

    def __post_init__(self):
        if self.n < 0:
            raise SourceValidationError(f"cosine order must be >= 0, got {self.n}")

    def __call__(self, theta):
        return np.cos(self.n * np.asarray(theta, dtype=float))

    def arcs(self):
        return [BoundaryArc(-_PI, _PI, lambda phi: np.cos(self.n * np.asarray(phi)))]

    def to_config(self):
        return {"type": "cos", "n": self.n}


@dataclass(frozen=True)
class ConstantOne(BoundaryFunction):
    def __call__(self, theta):
        return np.ones(np.shape(theta))

    def arcs(self):
        return [BoundaryArc(-_PI, _PI, lambda phi: np.ones(np.shape(phi)))]

    def to_config(self):
        return {"type": "one"}


@dataclass(frozen=True)
class BoundarySum(BoundaryFunction):
    terms: tuple  # of (coef, BoundaryFunction)

    def __post_init__(self):
        if not self.terms:
            raise SourceValidationError("weighted sum needs at least one term")

    def __call__(self, theta):
        return sum(c * f(theta) for c, f in self.terms)

    def arcs(self):
        out = []
        for coef, f in self.terms:
            for arc in f.arcs():
                inner = arc.fn
                out.append(BoundaryArc(arc.lo, arc.hi, _scale_fn(coef, inner)))
        return out

    def to_config(self):
        return {
            "type": "weighted_sum",
            "terms": [{"coef": c, "term": f.to_config()} for c, f in self.terms],
        }


def _scale_fn(coef, fn):
    return lambda *args: coef * fn(*args)


# ---------------------------------------------------------------------------
# Source functions on the disk
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SourcePiece:
    """One rectangle of a source: value = coef * fn(rho, phi) * (1-rho)^(-beta).

    ``fn`` is the smooth part; ``beta`` is None when the piece is regular.
    """

    coef: float
    rect: PolarRectangle
    fn: object  # callable(rho, phi) -> array (broadcasting)
    beta: float | None = None


class SourceFunction:
    """Base class; subclasses provide values(), pieces() and to_config()."""

    def values(self, rho, phi):
        """Vectorized pointwise values (may return inf on singular sets)."""
        raise NotImplementedError

    def pieces(self) -> list[SourcePiece]:
        raise NotImplementedError

    def to_config(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class CharacteristicDisk(SourceFunction):
    radius: float

    def __post_init__(self):
        if not 0.0 < self.radius <= 1.0:
            raise SourceValidationError(f"disk radius must lie in (0, 1], got {self.radius}")

    def values(self, rho, phi):
        r = np.asarray(rho, dtype=float)
        inside = (r <= self.radius).astype(float)
        return np.broadcast_to(inside, _shape_of(rho, phi)).copy()

    def pieces(self):
        rect = PolarRectangle(0.0, self.radius, -_PI, _PI)
        return [SourcePiece(1.0, rect, _ones_like)]

    def to_config(self):
        return {"type": "char_disk", "radius": self.radius}


@dataclass(frozen=True)
class CharacteristicRect(SourceFunction):
    rect: PolarRectangle

    def values(self, rho, phi):
        return self.rect.contains(rho, phi).astype(float)

    def pieces(self):
        return [SourcePiece(1.0, self.rect, _ones_like)]

    def to_config(self):
        return {
            "type": "char_rect",
            "r": [self.rect.r_lo, self.rect.r_hi],
            "theta": [self.rect.theta_lo, self.rect.theta_hi],
        }


@dataclass(frozen=True)
class SeparableOnRect(SourceFunction):
    radial: object
    angular: object
    rect: PolarRectangle

    def values(self, rho, phi):
        inside = self.rect.contains(rho, phi)
        with np.errstate(divide="ignore", invalid="ignore"):
            vals = self.radial(rho) * self.angular(phi)
        return np.where(inside, np.broadcast_to(vals, inside.shape), 0.0)

    def pieces(self):
        radial, angular = self.radial, self.angular
        if isinstance(radial, PowerOfOneMinusRho) and self.rect.r_hi == 1.0:
            # singular factor handled by substitution; fn keeps the rest
            fn = lambda rho, phi: np.broadcast_to(
                angular(phi), _shape_of(rho, phi)
            ).astype(float)
            return [SourcePiece(1.0, self.rect, fn, beta=radial.beta)]
        fn = lambda rho, phi: np.asarray(radial(rho)) * np.asarray(angular(phi))
        return [SourcePiece(1.0, self.rect, fn)]

    def to_config(self):
        return {
            "type": "separable",
            "radial": self.radial.to_config(),
            "angular": self.angular.to_config(),
            "rect": {
                "r": [self.rect.r_lo, self.rect.r_hi],
                "theta": [self.rect.theta_lo, self.rect.theta_hi],
            },
        }


@dataclass(frozen=True)
class SourceSum(SourceFunction):
    terms: tuple  # of (coef, SourceFunction)

    def __post_init__(self):
        if not self.terms:
            raise SourceValidationError("weighted sum needs at least one term")

    def values(self, rho, phi):
        return sum(c * s.values(rho, phi) for c, s in self.terms)

    def pieces(self):
        out = []
        for coef, s in self.terms:
            for p in s.pieces():
                out.append(SourcePiece(coef * p.coef, p.rect, p.fn, p.beta))
        return out

    def to_config(self):
        return {
            "type": "weighted_sum",
            "terms": [{"coef": c, "term": s.to_config()} for c, s in self.terms],
        }


def evaluate_source(source: SourceFunction, point: PolarPoint) -> float:
    """Pointwise value of a source at an interior point.

    Raises NonFiniteError on the (measure-zero) singular sets of the
    singular radial factors.
    """
    if point.r >= 1.0:
        raise NonFiniteError(f"point r={point.r} is not inside the disk")
    value = float(np.asarray(source.values(point.r, point.theta)))
    if not math.isfinite(value):
        raise NonFiniteError(f"source is singular at (r={point.r}, theta={point.theta})")
    return value


def evaluate_boundary(f: BoundaryFunction, theta: float) -> float:
    return float(np.asarray(f(theta)))


# ---------------------------------------------------------------------------
# Config parsing / serialization
# ---------------------------------------------------------------------------

_RADIAL_KEYS = {"pow_one_minus_rho", "rho_power", "gaussian_bump"}
_ANGULAR_KEYS = {"cos", "sin"}
_ANGULAR_NAMES = {"abs_phi": AbsPhi, "phi_squared": PhiSquared,
                  "abs_log_abs_phi": AbsLogAbsPhi, "one": AngularOne}


def _require_keys(doc, keys, context):
    extra = set(doc) - set(keys)
    missing = {k for k in keys if k not in doc}
    if extra:
        raise SourceParseError(f"{context}: unknown field(s) {sorted(extra)}")
    if missing:
        raise SourceParseError(f"{context}: missing field(s) {sorted(missing)}")


def _parse_pair(value, context):
    if (not isinstance(value, (list, tuple))) or len(value) != 2:
        raise SourceParseError(f"{context}: expected a pair [lo, hi], got {value!r}")
    try:
        return float(value[0]), float(value[1])
    except (TypeError, ValueError) as exc:
        raise SourceParseError(f"{context}: non-numeric bounds {value!r}") from exc


def _parse_rect(doc, context):
    if not isinstance(doc, dict):
        raise SourceParseError(f"{context}: rect must be an object with 'r' and 'theta'")
    _require_keys(doc, ("r", "theta"), context)
    r_lo, r_hi = _parse_pair(doc["r"], f"{context}.r")
    t_lo, t_hi = _parse_pair(doc["theta"], f"{context}.theta")
    try:
        return PolarRectangle(r_lo, r_hi, t_lo, t_hi)
    except Exception as exc:
        raise SourceValidationError(f"{context}: {exc}") from exc


def _parse_radial(doc, context):
    if doc == "one":
        return RadialOne()
    if not isinstance(doc, dict) or len(doc) != 1:
        raise SourceParseError(f"{context}: radial factor must be 'one' or a single-key object")
    key, val = next(iter(doc.items()))
    if key == "pow_one_minus_rho":
        return PowerOfOneMinusRho(float(val))
    if key == "rho_power":
        return RhoPower(float(val))
    if key == "gaussian_bump":
        _require_keys(val, ("amp", "center", "width"), f"{context}.gaussian_bump")
        return GaussianBump(float(val["amp"]), float(val["center"]), float(val["width"]))
    raise SourceParseError(f"{context}: unknown radial factor {key!r}")


def _parse_angular(doc, context):
    if isinstance(doc, str):
        if doc in _ANGULAR_NAMES:
            return _ANGULAR_NAMES[doc]()
        raise SourceParseError(f"{context}: unknown angular factor {doc!r}")
    if not isinstance(doc, dict) or len(doc) != 1:
        raise SourceParseError(f"{context}: angular factor must be a name or single-key object")
    key, val = next(iter(doc.items()))
    if key == "cos":
        return AngularCos(int(val))
    if key == "sin":
        return AngularSin(int(val))
    raise SourceParseError(f"{context}: unknown angular factor {key!r}")


def _parse_doc(doc, context="source"):
    if not isinstance(doc, dict):
        raise SourceParseError(f"{context}: expected an object, got {type(doc).__name__}")
    if "type" not in doc:
        raise SourceParseError(f"{context}: missing 'type' field")
    kind = doc["type"]

    if kind == "char_disk":
        _require_keys(doc, ("type", "radius"), context)
        return CharacteristicDisk(float(doc["radius"]))
    if kind == "char_rect":
        _require_keys(doc, ("type", "r", "theta"), context)
        return CharacteristicRect(
            _parse_rect({"r": doc["r"], "theta": doc["theta"]}, context)
        )
    if kind == "separable":
        _require_keys(doc, ("type", "radial", "angular", "rect"), context)
        return SeparableOnRect(
            _parse_radial(doc["radial"], f"{context}.radial"),
            _parse_angular(doc["angular"], f"{context}.angular"),
            _parse_rect(doc["rect"], f"{context}.rect"),
        )
    if kind == "char_arc":
        _require_keys(doc, ("type", "arc"), context)
        a, b = _parse_pair(doc["arc"], f"{context}.arc")
        return CharacteristicArc(a, b)
    if kind == "abs_theta":
        _require_keys(doc, ("type",), context)
        return AbsTheta()
    if kind == "theta_squared_on_arc":
        _require_keys(doc, ("type", "arc"), context)
        a, b = _parse_pair(doc["arc"], f"{context}.arc")
        return ThetaSquaredOnArc(a, b)
    if kind == "sin_on_arc":
        _require_keys(doc, ("type", "arc"), context)
        a, b = _parse_pair(doc["arc"], f"{context}.arc")
        return SinOnArc(a, b)
    if kind == "abs_log_abs_on_arc":
        _require_keys(doc, ("type", "arc"), context)
        a, b = _parse_pair(doc["arc"], f"{context}.arc")
        return AbsLogAbsOnArc(a, b)
    if kind == "cos":
        _require_keys(doc, ("type", "n"), context)
        return Cosine(int(doc["n"]))
    if kind == "one":
        _require_keys(doc, ("type",), context)
        return ConstantOne()
    if kind == "weighted_sum":
        _require_keys(doc, ("type", "terms"), context)
        if not isinstance(doc["terms"], list) or not doc["terms"]:
            raise SourceParseError(f"{context}.terms: expected a non-empty list")
        parsed = []
        for i, item in enumerate(doc["terms"]):
            if not isinstance(item, dict):
                raise SourceParseError(f"{context}.terms[{i}]: expected an object")
            _require_keys(item, ("coef", "term"), f"{context}.terms[{i}]")
            parsed.append(
                (float(item["coef"]), _parse_doc(item["term"], f"{context}.terms[{i}].term"))
            )
        kinds = {isinstance(t, SourceFunction) for _, t in parsed}
        if len(kinds) != 1:
            raise SourceValidationError(
                f"{context}: cannot mix disk sources and boundary functions in one sum"
            )
        if isinstance(parsed[0][1], SourceFunction):
            return SourceSum(tuple(parsed))
        return BoundarySum(tuple(parsed))
    raise SourceParseError(f"{context}: unknown type {kind!r}")


def parse_source_config(text):
    """Parse a JSON config document into a SourceFunction or BoundaryFunction.

    Accepts a JSON string or an already-decoded dict.  Raises
    SourceParseError for malformed documents and SourceValidationError
    for documents that violate invariants (inverted bounds, beta >= 1/2,
    bad arcs).
    """
    if isinstance(text, (str, bytes)):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SourceParseError(f"invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    else:
        doc = text
    return _parse_doc(doc)


def serialize_config(obj) -> str:
    """Canonical JSON text for a source or boundary function."""
    return json.dumps(obj.to_config(), sort_keys=True)


# ---------------------------------------------------------------------------
# Figure catalog
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KernelPlot:
    kernel: KernelId
    radii: tuple


@dataclass(frozen=True)
class PoissonCase:
    boundary: BoundaryFunction
    arc: tuple  # angular support (lo, hi) of the boundary data


@dataclass(frozen=True)
class QCase:
    source: SourceFunction
    prefactor: float


@dataclass(frozen=True)
class PairedCase:
    poisson: PoissonCase
    q: QCase


@dataclass(frozen=True)
class FigureCase:
    id: int
    description: str
    payload: object


TWO_OVER_PI = 2.0 / _PI

_ANNULUS = (0.9, 1.0)


def _annulus_rect(theta_lo, theta_hi):
    return PolarRectangle(_ANNULUS[0], _ANNULUS[1], theta_lo, theta_hi)


def _build_catalog():
    fig6_source = SeparableOnRect(
        PowerOfOneMinusRho(0.25), AngularCos(1), PolarRectangle(0.75, 1.0, -_PI / 6, _PI / 6)
    )
    fig7_second = SeparableOnRect(
        PowerOfOneMinusRho(0.375), AngularCos(1), PolarRectangle(0.875, 1.0, 5 * _PI / 6, _PI)
    )
    rect_a = CharacteristicRect(PolarRectangle(0.25, 0.5, 0.0, _PI / 4))
    rect_b = CharacteristicRect(PolarRectangle(0.6, 0.8, 5 * _PI / 6, _PI))

    cases = {
        1: FigureCase(
            1,
            "boundary kernel profiles at r = 0.5, 0.75, 0.85",
            KernelPlot(KernelId("poisson"), (0.5, 0.75, 0.85)),
        ),
        2: FigureCase(
            2,
            "area kernel profiles at r = 0.5, 0.75",
            KernelPlot(KernelId("q"), (0.5, 0.75)),
        ),
        3: FigureCase(
            3,
            "matched reconstructions of r^2 cos(2 theta) from boundary and area data",
            PairedCase(
                PoissonCase(Cosine(2), (-_PI, _PI)),
                QCase(
                    SeparableOnRect(RhoPower(2), AngularCos(2), PolarRectangle.full_disk()),
                    TWO_OVER_PI,
                ),
            ),
        ),
        4: FigureCase(
            4,
            "area transform of the characteristic function of the disk r <= 1/4",
            QCase(CharacteristicDisk(0.25), 1.0),
        ),
        5: FigureCase(
            5,
            "area transform of the sum of two polar-rectangle indicators",
            QCase(SourceSum(((1.0, rect_a), (1.0, rect_b))), 1.0),
        ),
        6: FigureCase(
            6,
            "area transform of cos(phi)/(1-rho)^(1/4) on [3/4,1]x[-pi/6,pi/6]",
            QCase(fig6_source, 1.0),
        ),
        7: FigureCase(
            7,
            "area transform combining the previous source with an opposite-side "
            "cos(phi)/(1-rho)^(3/8) term on [7/8,1]x[5pi/6,pi]",
            QCase(SourceSum(((1.0, fig6_source), (1.0, fig7_second))), 1.0),
        ),
        8: FigureCase(
            8,
            "harmonic measure of the arc [-pi/6, pi/6]",
            PoissonCase(CharacteristicArc(-_PI / 6, _PI / 6), (-_PI / 6, _PI / 6)),
        ),
        9: FigureCase(
            9,
            "area transform of the indicator of the boundary layer "
            "[0.9,1]x[-pi/6,pi/6], scaled by 2/pi",
            QCase(CharacteristicRect(_annulus_rect(-_PI / 6, _PI / 6)), TWO_OVER_PI),
        ),
        10: FigureCase(
            10,
            "boundary integral of |theta|",
            PoissonCase(AbsTheta(), (-_PI, _PI)),
        ),
        11: FigureCase(
            11,
            "area transform of |phi| rho on the boundary layer [0.9,1]x[-pi,pi]",
            QCase(
                SeparableOnRect(RhoPower(1), AbsPhi(), _annulus_rect(-_PI, _PI)),
                TWO_OVER_PI,
            ),
        ),
        12: FigureCase(
            12,
            "theta^2 boundary data on [-pi/6,pi/6] vs the matching boundary-layer "
            "area transform",
            PairedCase(
                PoissonCase(ThetaSquaredOnArc(-_PI / 6, _PI / 6), (-_PI / 6, _PI / 6)),
                QCase(
                    SeparableOnRect(RhoPower(1), PhiSquared(), _annulus_rect(-_PI / 6, _PI / 6)),
                    TWO_OVER_PI,
                ),
            ),
        ),
        13: FigureCase(
            13,
            "sin(theta) boundary data on [0,pi] vs the matching boundary-layer "
            "area transform",
            PairedCase(
                PoissonCase(SinOnArc(0.0, _PI), (0.0, _PI)),
                QCase(
                    SeparableOnRect(RhoPower(1), AngularSin(1), _annulus_rect(0.0, _PI)),
                    TWO_OVER_PI,
                ),
            ),
        ),
        14: FigureCase(
            14,
            "|ln|theta|| boundary data on [0,pi] vs the matching boundary-layer "
            "area transform",
            PairedCase(
                PoissonCase(AbsLogAbsOnArc(0.0, _PI), (0.0, _PI)),
                QCase(
                    SeparableOnRect(RhoPower(1), AbsLogAbsPhi(), _annulus_rect(0.0, _PI)),
                    TWO_OVER_PI,
                ),
            ),
        ),
        15: FigureCase(
            15,
            "area transform of the interior bump 10 exp(-10 (rho-1/2)^2) cos(phi) "
            "on [0.3,0.7]x[-pi/6,pi/6]",
            QCase(
                SeparableOnRect(
                    GaussianBump(10.0, 0.5, 10.0),
                    AngularCos(1),
                    PolarRectangle(0.3, 0.7, -_PI / 6, _PI / 6),
                ),
                1.0,
            ),
        ),
    }
    return cases


_CATALOG = _build_catalog()

# Figures whose area-transform field is compared against another figure's
# boundary-integral field (pointwise ratio output).
CROSS_PAIRED_FIGURES = {9: 8, 11: 10}


def figure_case(fig_id: int) -> FigureCase:
    """Catalog entry for figure ids 1..15."""
    if fig_id not in _CATALOG:
        raise UnknownFigureError(f"figure id must lie in 1..15, got {fig_id}")
    return _CATALOG[fig_id]


def catalog_q_sources() -> dict[int, QCase]:
    """All area-transform cases in the catalog, keyed by figure id."""
    out = {}
    for fig_id, case in _CATALOG.items():
        if isinstance(case.payload, QCase):
            out[fig_id] = case.payload
        elif isinstance(case.payload, PairedCase):
            out[fig_id] = case.payload.q
    return out


def catalog_boundary_functions() -> dict[int, PoissonCase]:
    """All boundary-integral cases in the catalog, keyed by figure id."""
    out = {}
    for fig_id, case in _CATALOG.items():
        if isinstance(case.payload, PoissonCase):
            out[fig_id] = case.payload
        elif isinstance(case.payload, PairedCase):
            out[fig_id] = case.payload.poisson
    return out
