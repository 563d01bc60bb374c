"""General-order solver: equal-mass transport cost, the parametric
transported-mass curve, and the unbalanced value by breakpoint scan.

The accumulated cost T(m) of the cheapest plan shipping mass m (with
sub-marginal constraints) is piecewise linear and convex; successive
shortest paths produce exactly its breakpoints.  The unbalanced value is
    min over m of  V(m) = a(|mu| + |nu| - 2m) + b T(m)^(1/p).
On each linear segment of T, V is concave (an increasing concave root of a
linear function plus a linear term), so the minimum over the segment sits at
an endpoint: scanning breakpoints is exact, no interior search is needed.
The same scan justifies the brute-force oracle's restriction to polytope
vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidParams, MassMismatch
from .flow import solve_transport
from .measures import DiscreteMeasure, TransportPlan, require_same_space
from .params import EntropyParams
from .scalars import Scalar, coerce
from .solver_w1 import SolveReport, solve_w1
from .spaces import FiniteMetricSpace

MASS_RTOL = 1e-12


@dataclass(frozen=True)
class ParametricCurve:
    """Breakpoints (m_k, T_k) of the parametric min-cost transport value.

    m_0 = 0, T_0 = 0, the masses increase strictly, and the slopes
    (T_{k+1}-T_k)/(m_{k+1}-m_k) are nondecreasing (convexity).
    """

    breakpoints: tuple[tuple[Scalar, Scalar], ...]

    def __post_init__(self):
        pts = self.breakpoints
        if not pts or pts[0][0] != 0 or pts[0][1] != 0:
            raise ValueError("curve must start at (0, 0)")
        prev_slope = None
        for (m0, t0), (m1, t1) in zip(pts, pts[1:]):
            if not m1 > m0:
                raise ValueError("breakpoint masses must increase strictly")
            if t1 < t0:
                raise ValueError("accumulated cost cannot decrease")
            slope = (t1 - t0) / (m1 - m0)
            if prev_slope is not None and slope < prev_slope:
                raise ValueError("curve slopes must be nondecreasing")
            prev_slope = slope

    @property
    def max_mass(self) -> Scalar:
        return self.breakpoints[-1][0]

    def value_at(self, m: Scalar) -> Scalar:
        """Piecewise-linear interpolation of T at mass m."""
        pts = self.breakpoints
        if m < 0 or m > self.max_mass:
            raise ValueError("mass outside the curve's range")
        for (m0, t0), (m1, t1) in zip(pts, pts[1:]):
            if m <= m1:
                return t0 + (t1 - t0) * (m - m0) / (m1 - m0)
        return pts[-1][1]


def _power_costs(space: FiniteMetricSpace, p) -> list[list[Scalar]]:
    # Integer exponents keep rational distances exact; fractional p forces floats.
    if space.exact and p == int(p):
        k = int(p)
        return [[Fraction(d) ** k for d in row] for row in space.dist]
    q = float(p)
    return [[float(d) ** q for d in row] for row in space.dist]


def _root(t: Scalar, p) -> Scalar:
    # The p-th root is irrational in general, so it is evaluated in floats
    # even in exact mode for p > 1; p = 1 stays exact.
    if p == 1:
        return t
    return float(t) ** (1.0 / float(p))


def wasserstein_p(
    space: FiniteMetricSpace, mu: DiscreteMeasure, nu: DiscreteMeasure, p
) -> Scalar:
    """Equal-mass transport cost of order p.

    Computed as the p-th root of the cheapest unnormalized plan with exact
    marginals; this matches the normalized definition because scaling the
    plan by the total mass scales the integral accordingly.
    """
    require_same_space(mu, nu)
    if p < 1:
        raise InvalidParams(f"p must be at least 1, got {p}")
    slack = 0 if space.exact else MASS_RTOL * (1.0 + max(float(mu.mass), float(nu.mass)))
    if abs(mu.mass - nu.mass) > slack:
        raise MassMismatch(f"|mu| = {mu.mass} differs from |nu| = {nu.mass}")
    if mu.mass == 0:
        return coerce(0, space.exact) if p == 1 else 0.0
    sol = solve_transport(_power_costs(space, p), list(mu.weights), list(nu.weights))
    return _root(sol.cost, p)


def parametric_transport_curve(
    space: FiniteMetricSpace, mu: DiscreteMeasure, nu: DiscreteMeasure, p
) -> ParametricCurve:
    """Breakpoints of m -> min { sum d^p gamma : rows <= mu, cols <= nu, sum gamma = m }."""
    require_same_space(mu, nu)
    if p < 1:
        raise InvalidParams(f"p must be at least 1, got {p}")
    sol = solve_transport(_power_costs(space, p), list(mu.weights), list(nu.weights))
    return ParametricCurve(breakpoints=tuple(sol.breakpoints))


def solve_wp(
    space: FiniteMetricSpace, mu: DiscreteMeasure, nu: DiscreteMeasure, params: EntropyParams
) -> SolveReport:
    """Unbalanced value of order p by scanning the parametric curve.

    Returns the attaining plan (the flow at the chosen breakpoint) whose
    marginals are the optimal reduced measures.  For p = 1 the report also
    carries dual potentials (produced by the p = 1 dual construction) and the
    certificate; the breakpoint-scan value must close the gap against them.
    For p > 1 no duality theory is claimed: potentials, gap and certificate
    are absent.
    """
    require_same_space(mu, nu)
    a = coerce(params.a, space.exact)
    b = coerce(params.b, space.exact)
    p = params.p

    sol = solve_transport(
        _power_costs(space, p), list(mu.weights), list(nu.weights), record_plans=True
    )

    best_idx = 0
    best_value = None
    for k, (m, t) in enumerate(sol.breakpoints):
        v = a * (mu.mass + nu.mass - 2 * m) + b * _root(t, p)
        # ties keep the smaller transported mass (first hit wins)
        if best_value is None or v < best_value:
            best_value = v
            best_idx = k

    chosen = sol.plans[best_idx]
    plan = TransportPlan(space, tuple(tuple(row) for row in chosen))
    m_star = sol.breakpoints[best_idx][0]

    report = SolveReport(
        value=best_value,
        plan=plan,
        potentials=None,
        transported_mass=m_star,
        destroyed_mass=mu.mass - m_star,
        created_mass=nu.mass - m_star,
        duality_gap=None,
        conditions=None,
        curve=list(sol.breakpoints),
    )
    if p == 1:
        w1 = solve_w1(space, mu, nu, params)
        gap = best_value - (w1.value - w1.duality_gap)
        report = SolveReport(
            value=best_value,
            plan=plan,
            potentials=w1.potentials,
            transported_mass=m_star,
            destroyed_mass=mu.mass - m_star,
            created_mass=nu.mass - m_star,
            duality_gap=gap,
            conditions=w1.conditions,
            curve=list(sol.breakpoints),
        )
    return report


def solve(
    space: FiniteMetricSpace, mu: DiscreteMeasure, nu: DiscreteMeasure, params: EntropyParams
) -> SolveReport:
    """Dispatch on the order: the dedicated p = 1 solver or the curve scan."""
    if params.p == 1:
        return solve_w1(space, mu, nu, params)
    return solve_wp(space, mu, nu, params)
