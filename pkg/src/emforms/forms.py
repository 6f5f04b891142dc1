"""Grade-graded exterior algebra over scalar fields on a 4D chart.

Conventions
-----------
* Components live on strictly increasing multi-indices; an absent index
  is zero. Grade-0 forms use the empty index ``()``.
* The metric is diagonal with signature ``(-, +, +, +)``. Its
  ``orientation`` tuple fixes the positive volume form
  ``sqrt(|det g|) dx^{o0} ^ dx^{o1} ^ dx^{o2} ^ dx^{o3}``.
* Hodge dual of a basis form:
  ``star(dx^I) = sgn(sigma) * sqrt(|det g|) / prod_{i in I} g_ii * dx^J``
  with ``J`` the increasing complement of ``I`` and ``sigma`` the
  permutation ``(I, J)`` relative to the orientation order. The test
  suite checks this closed form against a brute-force Levi-Civita sum.
* Degenerate grades stay total: wedges past grade 4, the exterior
  derivative of a 4-form and the interior product of a 0-form all return
  the appropriate zero form.

Structurally zero components (zero-constant coefficient fields) are
dropped from the component map; numeric zeros discovered by sampling are
never dropped.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .dual import real
from .dual import sqrt as dual_sqrt
from .fields import Event, ScalarField, absolute, coerce, sqrt

DIM = 4

MultiIndex = tuple[int, ...]

_METRIC_FLOOR = 1e-30


class ChartMismatchError(ValueError):
    """Operands live on different charts."""


class GradeMismatchError(ValueError):
    """Operands have incompatible grades."""


class DomainError(ValueError):
    """Event lies outside the chart's valid domain."""


class DegenerateMetricError(ValueError):
    """A diagonal metric component vanished at an evaluation event."""


def basis_indices(grade: int) -> tuple[MultiIndex, ...]:
    return tuple(itertools.combinations(range(DIM), grade))


@dataclass(frozen=True, eq=False)
class DifferentialForm:
    """Antisymmetric grade-p field stored over increasing multi-indices."""

    grade: int
    components: Mapping[MultiIndex, ScalarField]
    chart: str

    def __post_init__(self):
        if not 0 <= self.grade <= DIM:
            raise GradeMismatchError(f"grade must be 0..{DIM}, got {self.grade}")
        cleaned: dict[MultiIndex, ScalarField] = {}
        for idx, f in self.components.items():
            idx = tuple(int(i) for i in idx)
            if len(idx) != self.grade:
                raise GradeMismatchError(
                    f"index {idx} has length {len(idx)}, expected grade {self.grade}"
                )
            if any(not 0 <= i < DIM for i in idx):
                raise GradeMismatchError(f"index {idx} out of range 0..{DIM - 1}")
            if any(idx[k] >= idx[k + 1] for k in range(len(idx) - 1)):
                raise GradeMismatchError(f"index {idx} is not strictly increasing")
            f = coerce(f)
            if not f.is_zero:
                cleaned[idx] = f
        object.__setattr__(self, "components", cleaned)

    @property
    def is_structurally_zero(self) -> bool:
        return not self.components

    def component(self, idx: MultiIndex) -> ScalarField:
        return self.components.get(tuple(idx), ScalarField.zero())


@dataclass(frozen=True, eq=False)
class VectorField4:
    """Contravariant 4-vector field in the chart's coordinate basis."""

    components: tuple[ScalarField, ScalarField, ScalarField, ScalarField]
    chart: str

    def __post_init__(self):
        comps = tuple(coerce(c) for c in self.components)
        if len(comps) != DIM:
            raise GradeMismatchError("a 4-vector needs exactly 4 components")
        object.__setattr__(self, "components", comps)


@dataclass(frozen=True, eq=False)
class DiagonalMetric:
    """Diagonal spacetime metric, signature (-, +, +, +)."""

    diag: tuple[ScalarField, ScalarField, ScalarField, ScalarField]
    orientation: tuple[int, int, int, int] = (0, 1, 2, 3)

    def __post_init__(self):
        diag = tuple(coerce(g) for g in self.diag)
        if len(diag) != DIM:
            raise GradeMismatchError("a diagonal 4-metric needs 4 components")
        if sorted(self.orientation) != list(range(DIM)):
            raise ValueError(f"orientation must permute 0..3, got {self.orientation}")
        object.__setattr__(self, "diag", diag)
        object.__setattr__(self, "orientation", tuple(self.orientation))


def form(grade: int, chart: str, components: Mapping[MultiIndex, object]) -> DifferentialForm:
    """Build a form, coercing numeric component values to constants."""
    return DifferentialForm(grade, {tuple(k): coerce(v) for k, v in components.items()}, chart)


def zero_form(grade: int, chart: str) -> DifferentialForm:
    return DifferentialForm(grade, {}, chart)


def _same_chart(a, b) -> str:
    if a.chart != b.chart:
        raise ChartMismatchError(f"chart mismatch: {a.chart!r} vs {b.chart!r}")
    return a.chart


def _accumulate(comps: dict, idx: MultiIndex, term: ScalarField) -> None:
    if idx in comps:
        comps[idx] = comps[idx] + term
    else:
        comps[idx] = term


def _merge_sign(ia: MultiIndex, ib: MultiIndex) -> int:
    inversions = sum(1 for x in ia for y in ib if x > y)
    return -1 if inversions % 2 else 1


def perm_parity(seq: Sequence[int], reference: Sequence[int]) -> int:
    """Sign of the permutation taking ``reference`` order to ``seq``."""
    pos = [reference.index(s) for s in seq]
    inversions = sum(
        1 for i in range(len(pos)) for j in range(i + 1, len(pos)) if pos[i] > pos[j]
    )
    return -1 if inversions % 2 else 1


# -- operations ---------------------------------------------------------


def wedge(a: DifferentialForm, b: DifferentialForm) -> DifferentialForm:
    """Graded-antisymmetric product; grades past 4 collapse to zero.

    Per-component terms are summed in a canonical order independent of
    operand order, so graded commutativity holds exactly in floating
    point, not merely to rounding.
    """
    chart = _same_chart(a, b)
    total = a.grade + b.grade
    if total > DIM:
        return zero_form(DIM, chart)
    gathered: dict[MultiIndex, dict] = {}
    for ia, fa in a.components.items():
        for ib, fb in b.components.items():
            if set(ia) & set(ib):
                continue
            merged = tuple(sorted(ia + ib))
            term = fa * fb
            if _merge_sign(ia, ib) < 0:
                term = -term
            # Contributions from (ia, ib) and (ib, ia) are exact mirror
            # terms; group them under an unordered token and sum inside
            # the group first (two-float addition commutes exactly),
            # then fold groups in token order.
            token = (min(ia, ib), max(ia, ib))
            groups = gathered.setdefault(merged, {})
            groups[token] = term if token not in groups else groups[token] + term
    comps: dict[MultiIndex, ScalarField] = {}
    for key, groups in gathered.items():
        total_field = None
        for token in sorted(groups):
            total_field = groups[token] if total_field is None else total_field + groups[token]
        comps[key] = total_field
    return DifferentialForm(total, comps, chart)


def exterior_derivative(a: DifferentialForm) -> DifferentialForm:
    """d: grade p -> p+1; the derivative of a 4-form is the zero 4-form."""
    if a.grade >= DIM:
        return zero_form(DIM, a.chart)
    comps: dict[MultiIndex, ScalarField] = {}
    for idx, f in a.components.items():
        for axis in range(DIM):
            if axis in idx:
                continue
            df = f.partial_field(axis)
            if df.is_zero:
                continue
            passed = sum(1 for i in idx if i < axis)
            merged = tuple(sorted(idx + (axis,)))
            _accumulate(comps, merged, df if passed % 2 == 0 else -df)
    return DifferentialForm(a.grade + 1, comps, a.chart)


def interior_product(v: VectorField4, a: DifferentialForm) -> DifferentialForm:
    """Contraction i_v: grade p -> p-1; nilpotent, graded Leibniz."""
    chart = _same_chart(v, a)
    if a.grade == 0:
        return zero_form(0, chart)
    comps: dict[MultiIndex, ScalarField] = {}
    for idx, f in a.components.items():
        for pos, k in enumerate(idx):
            vk = v.components[k]
            if vk.is_zero:
                continue
            rest = idx[:pos] + idx[pos + 1 :]
            term = vk * f
            _accumulate(comps, rest, term if pos % 2 == 0 else -term)
    return DifferentialForm(a.grade - 1, comps, chart)


def _hodge_coefficient(g: DiagonalMetric, idx: MultiIndex) -> ScalarField:
    """sqrt(|det g|) / prod_{i in idx} g_ii, guarded against degeneracy."""
    diag = g.diag

    def fn(event):
        vals = [diag[i](event) for i in range(DIM)]
        for i, v in enumerate(vals):
            if abs(real(v)) < _METRIC_FLOOR:
                raise DegenerateMetricError(
                    f"metric component g_{i}{i} vanishes at event "
                    f"{tuple(real(x) for x in event)}"
                )
        det = vals[0] * vals[1] * vals[2] * vals[3]
        out = dual_sqrt(abs(det))
        for i in idx:
            out = out / vals[i]
        return out

    return ScalarField(fn)


def hodge_star(g: DiagonalMetric, a: DifferentialForm) -> DifferentialForm:
    """Hodge dual for the stored orientation; grade p -> 4-p."""
    comps: dict[MultiIndex, ScalarField] = {}
    for idx, f in a.components.items():
        comp = tuple(i for i in range(DIM) if i not in idx)
        sign = perm_parity(idx + comp, g.orientation)
        term = _hodge_coefficient(g, idx) * f
        _accumulate(comps, comp, term if sign > 0 else -term)
    return DifferentialForm(DIM - a.grade, comps, a.chart)


def linear_combine(coeffs: Sequence[float], forms: Sequence[DifferentialForm]) -> DifferentialForm:
    """Pointwise linear combination of same-grade, same-chart forms."""
    if not forms or len(coeffs) != len(forms):
        raise GradeMismatchError("need matching, non-empty coefficient and form lists")
    grade, chart = forms[0].grade, forms[0].chart
    comps: dict[MultiIndex, ScalarField] = {}
    for c, a in zip(coeffs, forms):
        if a.grade != grade:
            raise GradeMismatchError(f"grade mismatch: {a.grade} vs {grade}")
        if a.chart != chart:
            raise ChartMismatchError(f"chart mismatch: {a.chart!r} vs {chart!r}")
        c = coerce(c)
        if c.is_zero:
            continue
        for idx, f in a.components.items():
            _accumulate(comps, idx, c * f)
    return DifferentialForm(grade, comps, chart)


def scale(coeff, a: DifferentialForm) -> DifferentialForm:
    """Multiply every component by a number or a scalar field."""
    c = coerce(coeff)
    if c.is_zero:
        return zero_form(a.grade, a.chart)
    return DifferentialForm(a.grade, {idx: c * f for idx, f in a.components.items()}, a.chart)


def add(a: DifferentialForm, b: DifferentialForm) -> DifferentialForm:
    return linear_combine([1.0, 1.0], [a, b])


def subtract(a: DifferentialForm, b: DifferentialForm) -> DifferentialForm:
    return linear_combine([1.0, -1.0], [a, b])


def evaluate(
    a: DifferentialForm,
    event: Event,
    domain: Callable[[Event], bool] | None = None,
) -> dict[MultiIndex, float]:
    """Numeric component values at one event, zeros for absent indices."""
    ev = tuple(float(x) for x in event)
    if domain is not None and not domain(ev):
        raise DomainError(f"event {ev} is outside the chart's valid domain")
    out: dict[MultiIndex, float] = {}
    for idx in basis_indices(a.grade):
        f = a.components.get(idx)
        out[idx] = 0.0 if f is None else f.eval(ev)
    return out


def component_max(a: DifferentialForm, event: Event) -> float:
    """Largest absolute component value at one event."""
    if not a.components:
        return 0.0
    ev = tuple(float(x) for x in event)
    return max(abs(f.eval(ev)) for f in a.components.values())


def lower_index(g: DiagonalMetric, v: VectorField4) -> DifferentialForm:
    """Metric dual of a vector field: component a is g_aa * v^a."""
    comps = {}
    for i in range(DIM):
        comps[(i,)] = g.diag[i] * v.components[i]
    return DifferentialForm(1, comps, v.chart)


def volume_scale(g: DiagonalMetric) -> ScalarField:
    """sqrt(|det g|) as a scalar field."""
    det = g.diag[0] * g.diag[1] * g.diag[2] * g.diag[3]
    return sqrt(absolute(det))
