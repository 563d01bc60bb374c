"""Discrete measures on a finite space, and transport plans on its square.

Measures are dense weight vectors (point sizes here are desk scale, so dense
keeps the exact arithmetic simple).  The zero measure is legal everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import SpaceMismatch, TargetIndexOutOfRange
from .scalars import Scalar, coerce
from .spaces import FiniteGroupAction, FiniteMetricSpace, QuotientResult

# Absolute slack for float-mode pointwise comparisons between weights.
FLOAT_WEIGHT_ATOL = 1e-12


@dataclass(frozen=True)
class DiscreteMeasure:
    """A nonnegative weight vector over the points of a space."""

    space: FiniteMetricSpace
    weights: tuple[Scalar, ...]

    def __post_init__(self):
        if len(self.weights) != self.space.n:
            raise ValueError("one weight per point required")
        for i, w in enumerate(self.weights):
            if w < 0:
                raise ValueError(f"negative weight at point {i}")

    @property
    def mass(self) -> Scalar:
        return sum(self.weights)

    def __add__(self, other: "DiscreteMeasure") -> "DiscreteMeasure":
        require_same_space(self, other)
        return DiscreteMeasure(self.space, tuple(a + b for a, b in zip(self.weights, other.weights)))

    def scale(self, c: Scalar) -> "DiscreteMeasure":
        if c < 0:
            raise ValueError("scaling factor must be nonnegative")
        return DiscreteMeasure(self.space, tuple(c * w for w in self.weights))

    def as_float(self, space: FiniteMetricSpace | None = None) -> "DiscreteMeasure":
        return DiscreteMeasure(space or self.space.as_float(), tuple(float(w) for w in self.weights))


def measure(space: FiniteMetricSpace, weights) -> DiscreteMeasure:
    """Build a measure, coercing the weights into the space's arithmetic mode."""
    return DiscreteMeasure(space, tuple(coerce(w, space.exact) for w in weights))


def zero_measure(space: FiniteMetricSpace) -> DiscreteMeasure:
    return measure(space, [0] * space.n)


def dirac(space: FiniteMetricSpace, point: int, mass: Scalar = 1) -> DiscreteMeasure:
    w = [0] * space.n
    w[point] = mass
    return measure(space, w)


def require_same_space(a, b) -> None:
    if a.space is b.space:
        return
    if a.space != b.space:
        raise SpaceMismatch("objects live on different spaces")


@dataclass(frozen=True)
class Decomposition:
    """Lebesgue decomposition of one measure against another on finite support.

    Reconstruction: sigma[i] = density[i] * tau[i] + singular[i], with the
    singular part supported where tau vanishes.
    """

    density: tuple[Scalar, ...]
    singular: DiscreteMeasure


def is_submeasure(sigma: DiscreteMeasure, tau: DiscreteMeasure) -> bool:
    """Pointwise sigma <= tau (exact, or within 1e-12 absolute in float mode)."""
    require_same_space(sigma, tau)
    slack = 0 if sigma.space.exact else FLOAT_WEIGHT_ATOL
    return all(s <= t + slack for s, t in zip(sigma.weights, tau.weights))


def lebesgue_decompose(sigma: DiscreteMeasure, tau: DiscreteMeasure) -> Decomposition:
    """Split sigma into a part with a density against tau and a singular part."""
    require_same_space(sigma, tau)
    zero = coerce(0, sigma.space.exact)
    density = []
    singular = []
    for s, t in zip(sigma.weights, tau.weights):
        if t > 0:
            density.append(s / t)
            singular.append(zero)
        else:
            density.append(zero)
            singular.append(s)
    return Decomposition(density=tuple(density), singular=DiscreteMeasure(sigma.space, tuple(singular)))


def pushforward(mapping, mu: DiscreteMeasure, target: FiniteMetricSpace | None = None) -> DiscreteMeasure:
    """Push mu forward along a total point map; total mass is preserved."""
    target = target or mu.space
    mapping = list(mapping)
    if len(mapping) != mu.space.n:
        raise ValueError("the map must be total on the source points")
    out = [coerce(0, target.exact)] * target.n
    for i, j in enumerate(mapping):
        if not 0 <= j < target.n:
            raise TargetIndexOutOfRange(f"point {i} maps to {j}, outside the target space")
        out[j] += mu.weights[i]
    return DiscreteMeasure(target, tuple(out))


def symmetrize(action: FiniteGroupAction, mu: DiscreteMeasure) -> DiscreteMeasure:
    """Uniform average of the group translates of mu; the result is invariant.

    Finite groups are unimodular, so the averaging weight is 1/|G|.
    """
    require_same_space(action, mu)
    n = mu.space.n
    acc = [coerce(0, mu.space.exact)] * n
    for g in action.elements:
        for i in range(n):
            acc[g[i]] += mu.weights[i]
    share = Fraction(1, action.order) if mu.space.exact else 1.0 / action.order
    return DiscreteMeasure(mu.space, tuple(share * w for w in acc))


def is_invariant(action: FiniteGroupAction, mu: DiscreteMeasure, atol: float = FLOAT_WEIGHT_ATOL):
    """None if mu is invariant under every element, else a witness (point, element).

    Exact comparison in exact mode, absolute tolerance in float mode:
    invariance is a hypothesis, so near misses must fail loudly.
    """
    require_same_space(action, mu)
    slack = 0 if mu.space.exact else atol
    for gi, g in enumerate(action.elements):
        for i in range(mu.space.n):
            if abs(mu.weights[g[i]] - mu.weights[i]) > slack:
                return (i, action.labels[gi])
    return None


def invariant_lift(
    action: FiniteGroupAction, quotient: QuotientResult, nu_star: DiscreteMeasure
) -> DiscreteMeasure:
    """Spread each quotient atom uniformly over its orbit.

    The result is invariant and pushes forward along the projection back to
    ``nu_star`` exactly: this is the right inverse of the quotient pushforward.
    """
    if nu_star.space != quotient.quotient:
        raise SpaceMismatch("the measure must live on the quotient space")
    exact = action.space.exact
    out = [coerce(0, exact)] * action.space.n
    for k, orbit in enumerate(quotient.orbits):
        share = (
            Fraction(nu_star.weights[k], len(orbit))
            if exact
            else nu_star.weights[k] / len(orbit)
        )
        for i in orbit:
            out[i] = share
    return DiscreteMeasure(action.space, tuple(out))


@dataclass(frozen=True)
class TransportPlan:
    """A nonnegative matrix on X x X; rows/columns are the sub-marginals."""

    space: FiniteMetricSpace
    gamma: tuple[tuple[Scalar, ...], ...]

    def __post_init__(self):
        n = self.space.n
        if len(self.gamma) != n or any(len(row) != n for row in self.gamma):
            raise ValueError("plan must be n x n for the space")
        for row in self.gamma:
            for x in row:
                if x < 0:
                    raise ValueError("plan entries must be nonnegative")

    @property
    def total(self) -> Scalar:
        return sum(sum(row) for row in self.gamma)

    def row_sums(self) -> tuple[Scalar, ...]:
        return tuple(sum(row) for row in self.gamma)

    def col_sums(self) -> tuple[Scalar, ...]:
        n = self.space.n
        return tuple(sum(self.gamma[i][j] for i in range(n)) for j in range(n))

    def marginals(self) -> tuple[DiscreteMeasure, DiscreteMeasure]:
        return (
            DiscreteMeasure(self.space, self.row_sums()),
            DiscreteMeasure(self.space, self.col_sums()),
        )

    def is_submarginal(self, mu: DiscreteMeasure, nu: DiscreteMeasure, atol=None) -> bool:
        """Row sums <= mu and column sums <= nu (the feasibility check on attach)."""
        slack = atol if atol is not None else (0 if self.space.exact else FLOAT_WEIGHT_ATOL)
        rows, cols = self.row_sums(), self.col_sums()
        return all(r <= m + slack for r, m in zip(rows, mu.weights)) and all(
            c <= v + slack for c, v in zip(cols, nu.weights)
        )


def plan(space: FiniteMetricSpace, gamma) -> TransportPlan:
    return TransportPlan(space, tuple(tuple(coerce(x, space.exact) for x in row) for row in gamma))


def zero_plan(space: FiniteMetricSpace) -> TransportPlan:
    z = coerce(0, space.exact)
    return TransportPlan(space, tuple(tuple(z for _ in range(space.n)) for _ in range(space.n)))
