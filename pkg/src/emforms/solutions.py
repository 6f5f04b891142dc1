"""Matched field solutions and their Maxwell-residual verification."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .forms import (
    DifferentialForm,
    VectorField4,
    component_max,
    exterior_derivative,
    hodge_star,
)
from .junction import Interface
from .spacetime import Chart

EXACT_RESIDUAL_TOL = 1e-10
# Dimensionless ceiling on (residual / expansion_parameter^2) accepted for
# solutions truncated at first order in the rotation rate.
FIRST_ORDER_K_CAP = 10.0


class MatchingError(RuntimeError):
    """The junction matching system failed or disagreed with closed forms."""


@dataclass(frozen=True)
class CylinderConstants:
    """Integration constants of the rotating-shell interior family."""

    c1: float
    c2: float


@dataclass(frozen=True)
class SphereConstants:
    """Multipole amplitudes of the rotating-sphere potentials."""

    k0: float
    k1: float
    p0: float
    p1: float


MatchingConstants = CylinderConstants | SphereConstants


@dataclass(frozen=True, eq=False)
class Region:
    """A named spacetime region with a pseudorandom event sampler."""

    name: str
    interior: bool
    sample: Callable[[np.random.Generator], tuple[float, float, float, float]]


@dataclass(frozen=True, eq=False)
class FieldSolution:
    """Matched (F, G) pair on interior and exterior regions.

    ``order`` is "exact" or "first-order"; for first-order solutions
    ``expansion_parameter`` holds the peripheral speed over c, and the
    excitation residual scales with its square.
    """

    chart: Chart
    f_in: DifferentialForm
    g_in: DifferentialForm
    f_out: DifferentialForm
    g_out: DifferentialForm
    interfaces: tuple[Interface, ...]
    medium_velocity: VectorField4
    order: str
    in_medium: Callable[[tuple], bool]
    regions: tuple[Region, ...]
    length_scale: float
    expansion_parameter: float = 0.0


@dataclass
class MaxwellReport:
    """Per-region residuals of dF = 0 and d star G = 0."""

    order: str
    expansion_parameter: float
    samples_per_region: int
    regions: dict[str, dict[str, float]]
    tolerance_f: float
    tolerance_g: float
    passed: bool

    def to_json_dict(self) -> dict:
        return {
            "order": self.order,
            "expansion_parameter": self.expansion_parameter,
            "samples_per_region": self.samples_per_region,
            "regions": self.regions,
            "tolerance_f": self.tolerance_f,
            "tolerance_g": self.tolerance_g,
            "passed": self.passed,
        }


def verify_solution(
    sol: FieldSolution,
    samples_per_region: int = 200,
    seed: int = 0,
) -> MaxwellReport:
    """Sample dF and d star G residuals over every region of a solution.

    Residuals are made dimensionless by normalising with the sampled
    field scale and the solution's length scale. Exact solutions must
    sit below ``EXACT_RESIDUAL_TOL``; first-order solutions must keep
    residual / expansion_parameter^2 below ``FIRST_ORDER_K_CAP`` for the
    excitation equation.
    """
    metric = sol.chart.metric
    rng = np.random.default_rng(seed)
    tol_f = EXACT_RESIDUAL_TOL
    if sol.order == "exact":
        tol_g = EXACT_RESIDUAL_TOL
    else:
        tol_g = FIRST_ORDER_K_CAP * sol.expansion_parameter**2

    pairs = {
        True: (sol.f_in, sol.g_in),
        False: (sol.f_out, sol.g_out),
    }
    derivatives = {
        interior: (exterior_derivative(f), exterior_derivative(hodge_star(metric, g)))
        for interior, (f, g) in pairs.items()
    }
    star_g = {
        interior: hodge_star(metric, g) for interior, (_, g) in pairs.items()
    }

    regions: dict[str, dict[str, float]] = {}
    passed = True
    for region in sol.regions:
        f_form, _ = pairs[region.interior]
        df, dsg = derivatives[region.interior]
        sg = star_g[region.interior]
        max_df = max_f = max_dsg = max_sg = 0.0
        for _ in range(samples_per_region):
            ev = region.sample(rng)
            max_df = max(max_df, component_max(df, ev))
            max_f = max(max_f, component_max(f_form, ev))
            max_dsg = max(max_dsg, component_max(dsg, ev))
            max_sg = max(max_sg, component_max(sg, ev))
        rel_df = sol.length_scale * max_df / max(max_f, 1e-300)
        rel_dsg = sol.length_scale * max_dsg / max(max_sg, 1e-300)
        entry = {
            "df_max_abs": max_df,
            "df_max_rel": rel_df,
            "dstar_g_max_abs": max_dsg,
            "dstar_g_max_rel": rel_dsg,
        }
        if sol.order != "exact" and sol.expansion_parameter > 0.0:
            entry["dstar_g_rel_over_eps2"] = rel_dsg / sol.expansion_parameter**2
        regions[region.name] = entry
        if rel_df > tol_f or rel_dsg > max(tol_g, EXACT_RESIDUAL_TOL):
            passed = False
    return MaxwellReport(
        order=sol.order,
        expansion_parameter=sol.expansion_parameter,
        samples_per_region=samples_per_region,
        regions=regions,
        tolerance_f=tol_f,
        tolerance_g=tol_g,
        passed=passed,
    )
