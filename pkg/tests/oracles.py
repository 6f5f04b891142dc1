"""Independent numerical oracles used to pin expected values.

Everything here deliberately avoids the package's production code paths:
finite differences instead of dual numbers, the full Levi-Civita
permutation sum instead of the closed-form diagonal Hodge rule, and
plain componentwise arithmetic for metric contractions.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from emforms.fields import ScalarField
from emforms.forms import DifferentialForm, basis_indices


def central_difference_partials(field: ScalarField, event) -> tuple[float, ...]:
    """Second-order central differences with coordinate-scaled steps."""
    out = []
    for axis in range(4):
        h = 1e-6 * max(1.0, abs(event[axis]))
        plus = list(event)
        minus = list(event)
        plus[axis] += h
        minus[axis] -= h
        out.append((field.eval(plus) - field.eval(minus)) / (2.0 * h))
    return tuple(out)


def levi_civita_symbol() -> np.ndarray:
    eps = np.zeros((4, 4, 4, 4))
    for perm in itertools.permutations(range(4)):
        sign = 1
        p = list(perm)
        for i in range(4):
            for j in range(i + 1, 4):
                if p[i] > p[j]:
                    sign = -sign
        eps[perm] = sign
    return eps


_EPS4 = levi_civita_symbol()


def hodge_star_oracle(metric, form: DifferentialForm, event) -> dict:
    """Brute-force Hodge dual via the full permutation sum.

    Builds the antisymmetric component tensor, raises all indices with
    the inverse diagonal metric, contracts against the Levi-Civita
    symbol (reordered to the metric's orientation) and re-reads the
    increasing components of the result.
    """
    p = form.grade
    q = 4 - p
    g_vals = np.array([metric.diag[i].eval(event) for i in range(4)])
    det = float(np.prod(g_vals))
    root = math.sqrt(abs(det))

    eps = _EPS4
    if tuple(metric.orientation) != (0, 1, 2, 3):
        perm = list(metric.orientation)
        eps = np.transpose(_EPS4, perm)  # orientation order carries +1

    tensor = np.zeros((4,) * p) if p else np.array(form.component(()).eval(event))
    if p:
        for idx in basis_indices(p):
            value = form.component(idx).eval(event)
            if value == 0.0:
                continue
            for perm in itertools.permutations(range(p)):
                sign = 1
                pl = list(perm)
                for i in range(p):
                    for j in range(i + 1, p):
                        if pl[i] > pl[j]:
                            sign = -sign
                tensor[tuple(idx[k] for k in perm)] = sign * value

    # raise indices with the inverse diagonal metric
    raised = np.array(tensor, dtype=float)
    for axis in range(p):
        shape = [1] * p
        shape[axis] = 4
        raised = raised / g_vals.reshape(shape)

    out = {}
    for jdx in basis_indices(q):
        total = 0.0
        if p == 0:
            total = float(raised) * eps[(Ellipsis,) + jdx] if q == 4 else 0.0
            if q == 4:
                total = float(raised) * eps[jdx]
        else:
            for idx in itertools.product(range(4), repeat=p):
                total += raised[idx] * eps[idx + jdx]
            total /= math.factorial(p)
        out[jdx] = root * total
    return out


def metric_contraction(metric, u, v, event) -> float:
    """g(u, v) for two 4-vectors by direct componentwise summation."""
    total = 0.0
    for a in range(4):
        total += (
            metric.diag[a].eval(event)
            * u.components[a].eval(event)
            * v.components[a].eval(event)
        )
    return total


def lowered_components(metric, v, event) -> tuple[float, ...]:
    return tuple(
        metric.diag[a].eval(event) * v.components[a].eval(event) for a in range(4)
    )


# -- random smooth fields and forms --------------------------------------


def random_poly_trig_field(rng: np.random.Generator) -> ScalarField:
    """Low-order polynomial plus trigonometric terms in all coordinates."""
    x = [ScalarField.coordinate(a) for a in range(4)]
    from emforms.fields import cos, sin

    f = ScalarField.constant(float(rng.uniform(-1.0, 1.0)))
    for _ in range(int(rng.integers(2, 5))):
        c0 = float(rng.uniform(-2.0, 2.0))
        kind = int(rng.integers(0, 3))
        i, j = int(rng.integers(0, 4)), int(rng.integers(0, 4))
        if kind == 0:
            f = f + c0 * x[i] ** int(rng.integers(1, 3)) * x[j] ** int(rng.integers(0, 3))
        elif kind == 1:
            f = f + c0 * sin(float(rng.uniform(0.5, 2.0)) * x[i] + float(rng.uniform(0, 3)))
        else:
            f = f + c0 * x[i] * cos(float(rng.uniform(0.5, 2.0)) * x[j])
    return f


def random_form(rng: np.random.Generator, grade: int, chart: str) -> DifferentialForm:
    comps = {idx: random_poly_trig_field(rng) for idx in basis_indices(grade)}
    return DifferentialForm(grade, comps, chart)


def random_event(rng: np.random.Generator) -> tuple[float, float, float, float]:
    """Events inside the common valid box of all three charts."""
    return (
        float(rng.uniform(0.0, 1.0)),
        float(rng.uniform(0.5, 2.0)),
        float(rng.uniform(0.4, 2.7)),
        float(rng.uniform(-1.0, 1.0)),
    )
