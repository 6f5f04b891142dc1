"""Charts on flat Minkowski spacetime, observer frames and rotation fields.

Coordinate order is fixed: index 0 is always the time coordinate t; the
azimuthal coordinate sits at index 2 (cylindrical theta) or index 3
(spherical phi). Positive orientation is the listed coordinate order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from . import dual
from .dual import real
from .fields import Event, ScalarField, sin
from .forms import (
    ChartMismatchError,
    DiagonalMetric,
    DifferentialForm,
    DomainError,
    VectorField4,
    lower_index,
)


class LightConeError(ValueError):
    """Rigid rotation evaluated at or beyond the light cylinder."""


@dataclass(frozen=True, eq=False)
class Chart:
    """A named coordinate chart with its metric and valid domain."""

    name: str
    coords: tuple[str, str, str, str]
    metric: DiagonalMetric
    domain: Callable[[Event], bool]
    light_speed: float

    def contains(self, event: Event) -> bool:
        return bool(self.domain(tuple(float(x) for x in event)))

    def require_valid(self, event: Event) -> None:
        if not self.contains(event):
            raise DomainError(
                f"event {tuple(float(x) for x in event)} outside {self.name} chart domain"
            )


def _require_positive_c(c: float) -> float:
    c = float(c)
    if c <= 0.0:
        raise ValueError(f"speed of light must be positive, got {c}")
    return c


def cartesian_chart(c: float) -> Chart:
    """(t, x, y, z) with metric diag(-c^2, 1, 1, 1)."""
    c = _require_positive_c(c)
    metric = DiagonalMetric((ScalarField.constant(-c * c), 1.0, 1.0, 1.0))
    return Chart("cartesian", ("t", "x", "y", "z"), metric, lambda ev: True, c)


def cylindrical_chart(c: float) -> Chart:
    """(t, r, theta, z) with metric diag(-c^2, 1, r^2, 1), domain r > 0."""
    c = _require_positive_c(c)
    r = ScalarField.coordinate(1)
    metric = DiagonalMetric((ScalarField.constant(-c * c), 1.0, r * r, 1.0))
    return Chart(
        "cylindrical",
        ("t", "r", "theta", "z"),
        metric,
        lambda ev: ev[1] > 0.0,
        c,
    )


def spherical_chart(c: float) -> Chart:
    """(t, r, theta, phi), metric diag(-c^2, 1, r^2, r^2 sin^2 theta).

    Domain r > 0 and 0 < theta < pi; the axis is excluded because the
    metric degenerates there.
    """
    c = _require_positive_c(c)
    r = ScalarField.coordinate(1)
    rs = r * sin(ScalarField.coordinate(2))
    metric = DiagonalMetric((ScalarField.constant(-c * c), 1.0, r * r, rs * rs))
    return Chart(
        "spherical",
        ("t", "r", "theta", "phi"),
        metric,
        lambda ev: ev[1] > 0.0 and 0.0 < ev[2] < math.pi,
        c,
    )


def lab_frame(chart: Chart) -> VectorField4:
    """Inertial laboratory observer (1/c) d/dt; unit timelike."""
    inv_c = ScalarField.constant(1.0 / chart.light_speed)
    zero = ScalarField.zero()
    return VectorField4((inv_c, zero, zero, zero), chart.name)


def rotating_velocity(chart: Chart, omega: float, azimuth_axis: int) -> VectorField4:
    """Unit 4-velocity of rigid rotation about the chart's axis.

    ``(d/dt + omega d/d<azimuth>) / sqrt(c^2 - g_aa omega^2)``. Evaluation
    where the rotation speed reaches c raises :class:`LightConeError`.
    """
    if azimuth_axis not in (1, 2, 3):
        raise ValueError(f"azimuth axis must be spatial (1..3), got {azimuth_axis}")
    omega = float(omega)
    if omega == 0.0:
        return lab_frame(chart)
    c = chart.light_speed
    g_az = chart.metric.diag[azimuth_axis]

    def root(event):
        arg = c * c - g_az(event) * (omega * omega)
        if real(arg) <= 0.0:
            raise LightConeError(
                f"rotation reaches light speed at event {tuple(real(x) for x in event)}"
            )
        return dual.sqrt(arg)

    comps = [ScalarField.zero()] * 4
    comps[0] = ScalarField(lambda ev: 1.0 / root(ev))
    comps[azimuth_axis] = ScalarField(lambda ev: omega / root(ev))
    return VectorField4(tuple(comps), chart.name)


def metric_dual(chart: Chart, v: VectorField4) -> DifferentialForm:
    """Index-lowering map: the 1-form X -> g(v, X)."""
    if v.chart != chart.name:
        raise ChartMismatchError(f"vector on {v.chart!r}, chart is {chart.name!r}")
    return lower_index(chart.metric, v)
