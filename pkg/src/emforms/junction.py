"""Junction conditions on moving interfaces between media.

An interface is the zero set of a spacetime function Phi; the side with
Phi < 0 is labelled "inside". The covariant matching conditions are

    [F] ^ dPhi |_{Phi=0} = 0        [star G] ^ dPhi |_{Phi=0} = 0

and this module evaluates their residuals at sampled interface events.
The equivalent 3-vector (Gibbs) relations

    N . [d] = 0        v_N [d] + N x [h] = 0
    N . [b] = 0        v_N [b] - N x [e] = 0

are computed independently in the orthonormal spatial frame of a
lab-aligned observer as a cross-check, with N the outward unit normal
(pointing from Phi < 0 to Phi > 0) and v_N the normal interface speed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .fields import Event, ScalarField, coerce
from .forms import (
    DiagonalMetric,
    DifferentialForm,
    GradeMismatchError,
    VectorField4,
    component_max,
    evaluate,
    exterior_derivative,
    hodge_star,
    subtract,
    wedge,
)

ON_INTERFACE_TOL = 1e-12

# Handedness of the spatial cross product in the 3-vector relations.
# Fixed so that the four relations vanish exactly whenever the covariant
# conditions do under the (t, x1, x2, x3) chart orientation; the
# light-front regression test pins this value.
_CROSS_SIGN = -1.0

_SCALE_FLOOR = 1e-300


class InterfaceSampleError(ValueError):
    """A sample event does not lie on the interface."""


class DegenerateInterfaceError(ValueError):
    """dPhi vanishes or is purely temporal at a sample event."""


@dataclass(frozen=True, eq=False)
class Interface:
    """Hypersurface Phi = 0; the Phi < 0 side is the medium interior."""

    phi: ScalarField
    chart: str
    name: str = "interface"

    def __post_init__(self):
        object.__setattr__(self, "phi", coerce(self.phi))

    def gradient(self) -> DifferentialForm:
        return exterior_derivative(DifferentialForm(0, {(): self.phi}, self.chart))


@dataclass
class JumpReport:
    """Sampled junction-condition residuals on one interface."""

    interface: str
    samples: list[tuple[float, float, float, float]]
    residuals: dict[str, list[float]]
    residuals_rel: dict[str, list[float]]

    @property
    def max_abs(self) -> float:
        return max((max(v) for v in self.residuals.values() if v), default=0.0)

    @property
    def max_rel(self) -> float:
        return max((max(v) for v in self.residuals_rel.values() if v), default=0.0)

    def to_json_dict(self) -> dict:
        return {
            "interface": self.interface,
            "samples": [list(ev) for ev in self.samples],
            "residuals": self.residuals,
            "residuals_rel": self.residuals_rel,
            "max_abs": self.max_abs,
            "max_rel": self.max_rel,
        }


def _check_on_interface(iface: Interface, event) -> tuple[float, ...]:
    ev = tuple(float(x) for x in event)
    value = iface.phi.eval(ev)
    if abs(value) > ON_INTERFACE_TOL:
        raise InterfaceSampleError(
            f"event {ev} is off interface {iface.name!r}: Phi = {value:.3e}"
        )
    return ev


def interface_normal_velocity(
    iface: Interface,
    frame: VectorField4,
    g: DiagonalMetric,
    event: Event,
) -> tuple[tuple[float, float, float, float], float]:
    """Unit spatial normal 1-form (coordinate components) and normal speed.

    N is the frame-orthogonal projection of dPhi, normalised in the
    induced spatial metric; v_N = -(i_U dPhi) c / |projection| is positive
    for an interface moving toward the Phi > 0 side.
    """
    ev = tuple(float(x) for x in event)
    dphi = evaluate(iface.gradient(), ev)
    dphi_vec = [dphi[(a,)] for a in range(4)]
    u_vec = [frame.components[a].eval(ev) for a in range(4)]
    g_vec = [g.diag[a].eval(ev) for a in range(4)]
    scale_dphi = max(abs(x) for x in dphi_vec)
    if scale_dphi <= 0.0:
        raise DegenerateInterfaceError(f"dPhi vanishes at {ev}")
    contracted = sum(d * u for d, u in zip(dphi_vec, u_vec))
    u_flat = [gv * uv for gv, uv in zip(g_vec, u_vec)]
    projected = [d + contracted * uf for d, uf in zip(dphi_vec, u_flat)]
    norm_sq = sum(p * p / gv for p, gv in zip(projected, g_vec))
    if norm_sq <= (1e-14 * scale_dphi) ** 2:
        raise DegenerateInterfaceError(f"dPhi is purely temporal at {ev}")
    norm = norm_sq**0.5
    c = (-g_vec[0]) ** 0.5
    normal = tuple(p / norm for p in projected)
    v_n = -contracted * c / norm
    return normal, v_n


def covariant_jump_residual(
    f_in: DifferentialForm,
    f_out: DifferentialForm,
    g_in: DifferentialForm,
    g_out: DifferentialForm,
    iface: Interface,
    metric: DiagonalMetric,
    samples: Sequence[Event],
) -> JumpReport:
    """Residuals of [F] ^ dPhi and [star G] ^ dPhi at interface events.

    Relative residuals are normalised per condition by the exterior-field
    scale at each sample: |F_out| |dPhi| for the first condition and
    |star G_out| |dPhi| for the second.
    """
    for f in (f_in, f_out, g_in, g_out):
        if f.grade != 2:
            raise GradeMismatchError("junction conditions expect grade-2 forms")
    dphi = iface.gradient()
    jump_f = wedge(subtract(f_out, f_in), dphi)
    star_g_out = hodge_star(metric, g_out)
    jump_g = wedge(subtract(star_g_out, hodge_star(metric, g_in)), dphi)

    events, abs_f, abs_g, rel_f, rel_g = [], [], [], [], []
    for event in samples:
        ev = _check_on_interface(iface, event)
        dphi_scale = component_max(dphi, ev)
        if dphi_scale <= 0.0:
            raise DegenerateInterfaceError(f"dPhi vanishes at {ev}")
        rf = component_max(jump_f, ev)
        rg = component_max(jump_g, ev)
        sf = component_max(f_out, ev) * dphi_scale
        sg = component_max(star_g_out, ev) * dphi_scale
        events.append(ev)
        abs_f.append(rf)
        abs_g.append(rg)
        rel_f.append(rf / max(sf, _SCALE_FLOOR))
        rel_g.append(rg / max(sg, _SCALE_FLOOR))
    return JumpReport(
        interface=iface.name,
        samples=events,
        residuals={"f_jump": abs_f, "star_g_jump": abs_g},
        residuals_rel={"f_jump": rel_f, "star_g_jump": rel_g},
    )


def _require_lab_aligned(frame: VectorField4, event) -> None:
    comps = [frame.components[a].eval(event) for a in range(4)]
    if max(abs(c) for c in comps[1:]) > 1e-12 * abs(comps[0]):
        raise ValueError("Gibbs residuals are implemented for lab-aligned frames only")


def _orthonormal_spatial(one_form: DifferentialForm, event, g_vec) -> list[float]:
    vals = evaluate(one_form, event)
    return [vals[(i,)] / g_vec[i] ** 0.5 for i in (1, 2, 3)]


def _cross(x: Sequence[float], y: Sequence[float]) -> list[float]:
    rh = [
        x[1] * y[2] - x[2] * y[1],
        x[2] * y[0] - x[0] * y[2],
        x[0] * y[1] - x[1] * y[0],
    ]
    return [_CROSS_SIGN * v for v in rh]


def gibbs_jump_residual(
    dec_in,
    dec_out,
    iface: Interface,
    frame: VectorField4,
    g: DiagonalMetric,
    samples: Sequence[Event],
) -> JumpReport:
    """3-vector jump relations evaluated in the observer's spatial frame.

    Both decompositions must use the same lab-aligned frame. Relative
    residuals are normalised per condition by the larger of the two
    sides' field scales at the sample.
    """
    events = [_check_on_interface(iface, ev) for ev in samples]
    if events:
        _require_lab_aligned(frame, events[0])
    names = ("normal_d", "tangential_h", "normal_b", "tangential_e")
    abs_res = {n: [] for n in names}
    rel_res = {n: [] for n in names}
    for ev in events:
        g_vec = [g.diag[a].eval(ev) for a in range(4)]
        c = (-g_vec[0]) ** 0.5
        normal, v_n = interface_normal_velocity(iface, frame, g, ev)
        n_hat = [normal[i] / g_vec[i] ** 0.5 for i in (1, 2, 3)]

        def jump_and_scale(attr):
            a = _orthonormal_spatial(getattr(dec_in, attr), ev, g_vec)
            b = _orthonormal_spatial(getattr(dec_out, attr), ev, g_vec)
            jump = [bv - av for av, bv in zip(a, b)]
            scale = max(max(abs(v) for v in a), max(abs(v) for v in b))
            return jump, scale

        je, se = jump_and_scale("e")
        jb, sb = jump_and_scale("b")
        jd, sd = jump_and_scale("d")
        jh, sh = jump_and_scale("h")

        normal_d = abs(sum(n * v for n, v in zip(n_hat, jd)))
        tang_h = max(
            abs(v_n * dv + cv) for dv, cv in zip(jd, _cross(n_hat, jh))
        )
        normal_b = abs(sum(n * v for n, v in zip(n_hat, jb)))
        tang_e = max(
            abs(v_n * bv - cv) for bv, cv in zip(jb, _cross(n_hat, je))
        )

        # Unified field-pair scales: d and h/c share units, so do e and c b.
        # Normalising per condition against the pair keeps the relative
        # residual meaningful when one field vanishes identically.
        scale_g = max(sd, sh / c)
        scale_f = max(se, c * sb)
        abs_res["normal_d"].append(normal_d)
        abs_res["tangential_h"].append(tang_h)
        abs_res["normal_b"].append(normal_b)
        abs_res["tangential_e"].append(tang_e)
        rel_res["normal_d"].append(normal_d / max(scale_g, _SCALE_FLOOR))
        rel_res["tangential_h"].append(tang_h / max(c * scale_g, _SCALE_FLOOR))
        rel_res["normal_b"].append(normal_b / max(scale_f / c, _SCALE_FLOOR))
        rel_res["tangential_e"].append(tang_e / max(scale_f, _SCALE_FLOOR))
    return JumpReport(
        interface=iface.name,
        samples=events,
        residuals=abs_res,
        residuals_rel=rel_res,
    )
