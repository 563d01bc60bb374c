"""Dual-side machinery for the order-1 problem: truncated dual objective,
feasibility of potential pairs, capped c-transforms, the flat-metric LP, and
the four-condition optimality certificate.

Strong duality holds for p = 1: the primal value equals the best dual
objective over potential pairs bounded below by -a and coupled by
phi1(x) + phi2(y) <= b d(x,y).  The dual objective truncates each potential
through I(phi) = inf_{s>=0} (s phi + a|1-s|), which is phi on [-a, a], a
above, and minus infinity below.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import simplex
from .errors import InfeasibleInputs, SpaceMismatch
from .measures import DiscreteMeasure, TransportPlan, require_same_space
from .params import EntropyParams
from .scalars import NEG_INF, Scalar, coerce
from .spaces import FiniteMetricSpace

# Feasibility slack for float-mode potential checks, scaled by a + b*diam.
FLOAT_DUAL_RTOL = 1e-12


@dataclass(frozen=True)
class DualPotentials:
    """A potential pair (phi1, phi2) with its cost parameters.

    Feasible pairs satisfy phi_i >= -a everywhere and the coupling
    phi1[x] + phi2[y] <= b d[x][y] for every pair of points.
    """

    phi1: tuple[Scalar, ...]
    phi2: tuple[Scalar, ...]
    params: EntropyParams


@dataclass(frozen=True)
class FlatWitness:
    """A witness function for the flat metric: |f| <= a and f is b-Lipschitz."""

    f: tuple[Scalar, ...]


@dataclass(frozen=True)
class OptimalityCertificate:
    """Outcome of the four optimality conditions for a (plan, potentials) pair.

    a1/a2 are the canonical support sets; each condition flag comes with the
    list of witnesses that violated it (empty when the condition holds).
    """

    a1: tuple[int, ...]
    a2: tuple[int, ...]
    support_ok: bool
    tight_on_plan: bool
    density_complementarity: bool
    saturated_on_destroyed: bool
    violations: tuple[tuple[str, tuple], ...]

    @property
    def passed(self) -> bool:
        return (
            self.support_ok
            and self.tight_on_plan
            and self.density_complementarity
            and self.saturated_on_destroyed
        )

    def conditions(self) -> dict[str, bool]:
        return {
            "i": self.support_ok,
            "ii": self.tight_on_plan,
            "iii": self.density_complementarity,
            "iv": self.saturated_on_destroyed,
        }


def truncate_potential(phi: Scalar, a: Scalar) -> Scalar:
    """The dual-objective truncation: a above a, identity on [-a, a],
    minus infinity below -a (returned as the float -inf sentinel)."""
    if phi > a:
        return a
    if phi >= -a:
        return phi
    return NEG_INF


def feasibility_slack(space: FiniteMetricSpace, params: EntropyParams) -> Scalar:
    if space.exact:
        return 0
    return FLOAT_DUAL_RTOL * (1.0 + float(params.a) + float(params.b) * float(space.diameter))


def is_feasible_pair(space: FiniteMetricSpace, potentials: DualPotentials, slack=None) -> bool:
    a, b = potentials.params.a, potentials.params.b
    if slack is None:
        slack = feasibility_slack(space, potentials.params)
    phi1, phi2 = potentials.phi1, potentials.phi2
    if any(v < -a - slack for v in phi1) or any(v < -a - slack for v in phi2):
        return False
    for i in range(space.n):
        for j in range(space.n):
            if phi1[i] + phi2[j] > b * space.dist[i][j] + slack:
                return False
    return True


def evaluate_dual(
    potentials: DualPotentials, mu: DiscreteMeasure, nu: DiscreteMeasure
) -> tuple[bool, Scalar]:
    """Feasibility of the pair plus its truncated dual objective.

    A potential below -a meeting positive mass short-circuits the objective
    to -inf, so the sentinel never enters ordinary arithmetic.
    """
    require_same_space(mu, nu)
    space = mu.space
    if len(potentials.phi1) != space.n or len(potentials.phi2) != space.n:
        raise SpaceMismatch("potential vectors do not match the space")
    a = potentials.params.a
    feasible = is_feasible_pair(space, potentials)

    total = coerce(0, space.exact)
    for phi, m in ((potentials.phi1, mu), (potentials.phi2, nu)):
        for v, w in zip(phi, m.weights):
            if w == 0:
                continue
            t = truncate_potential(v, a)
            if t == NEG_INF:
                return feasible, NEG_INF
            total += t * w
    return feasible, total


def c_transform(space: FiniteMetricSpace, phi, params: EntropyParams, side: int = 2) -> tuple[Scalar, ...]:
    """The capped transform  x -> min( min_y (b d[x][y] - phi[y]), a ).

    ``side`` names which potential is being transformed away (the distance
    matrix is symmetric, so both sides use the same kernel).  The output is
    always b-Lipschitz, and stays in [-a, a] whenever the input does.
    """
    if side not in (1, 2):
        raise ValueError("side must be 1 or 2")
    if len(phi) != space.n:
        raise SpaceMismatch("potential vector does not match the space")
    a, b = params.a, params.b
    out = []
    for x in range(space.n):
        best = min(b * space.dist[x][y] - phi[y] for y in range(space.n))
        out.append(best if best < a else a)
    return tuple(out)


def solve_flat(
    space: FiniteMetricSpace, mu: DiscreteMeasure, nu: DiscreteMeasure, params: EntropyParams
) -> tuple[Scalar, FlatWitness]:
    """Maximize  sum f (mu - nu)  over |f| <= a, b-Lipschitz f.

    Solved as an explicit LP by the exact rational simplex with all O(n^2)
    Lipschitz constraints materialized; the route is deliberately independent
    of the flow solver so agreement between the two is a genuine cross-check.
    Substituting x = f + a (so x >= 0) makes the slack basis feasible.
    """
    require_same_space(mu, nu)
    n = space.n
    a = Fraction(params.a)
    b = Fraction(params.b)
    c = [Fraction(mu.weights[i]) - Fraction(nu.weights[i]) for i in range(n)]

    rows = []
    rhs = []
    for i in range(n):
        row = [Fraction(0)] * n
        row[i] = Fraction(1)
        rows.append(row)
        rhs.append(2 * a)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            row = [Fraction(0)] * n
            row[i] = Fraction(1)
            row[j] = Fraction(-1)
            rows.append(row)
            rhs.append(b * Fraction(space.dist[i][j]))

    shifted, x = simplex.maximize(c, rows, rhs)
    value = shifted - a * sum(c)
    f = tuple(xi - a for xi in x)
    if not space.exact:
        value = float(value)
        f = tuple(float(v) for v in f)
    return value, FlatWitness(f=f)


def verify_optimality(
    space: FiniteMetricSpace,
    mu: DiscreteMeasure,
    nu: DiscreteMeasure,
    params: EntropyParams,
    plan: TransportPlan,
    potentials: DualPotentials,
    tol: Scalar | None = None,
) -> OptimalityCertificate:
    """Check the four optimality conditions of a (plan, potentials) pair.

    With gamma_i the plan marginals and mu_i = g_i gamma_i + sing_i the
    finite-support Lebesgue decomposition, the canonical sets are
    A_i = support(gamma_i) union {mu_i = 0}; the conditions are
      (i)   gamma_i puts no mass outside A_i and sing_i none inside,
      (ii)  phi1[x] + phi2[y] = b d[x][y] wherever the plan ships,
      (iii) (a - phi_i[x]) (1 - f_i[x]) = 0 on A_i against mu_i, where f_i is
            the density of gamma_i with respect to mu_i,
      (iv)  phi_i = a wherever mass is destroyed outright (singular part).
    Optimality only requires SOME admissible sets to exist; the canonical
    choice is fixed for determinism.
    """
    require_same_space(mu, nu)
    if plan.space != space:
        raise SpaceMismatch("plan lives on a different space")
    if tol is None:
        tol = 0 if space.exact else 1e-9

    if not plan.is_submarginal(mu, nu, atol=tol if not space.exact else None):
        raise InfeasibleInputs("plan marginals exceed the problem measures")
    if not is_feasible_pair(space, potentials, slack=max(tol, feasibility_slack(space, params))):
        raise InfeasibleInputs("potentials violate the dual constraints")

    a, b = params.a, params.b
    n = space.n
    gamma1, gamma2 = plan.row_sums(), plan.col_sums()
    phi = (potentials.phi1, potentials.phi2)
    marg = (gamma1, gamma2)
    prob = (mu.weights, nu.weights)

    sets = []
    for side in (0, 1):
        sets.append(tuple(x for x in range(n) if marg[side][x] > 0 or prob[side][x] == 0))

    violations: list[tuple[str, tuple]] = []

    support_ok = True
    for side in (0, 1):
        inside = set(sets[side])
        for x in range(n):
            if x not in inside and marg[side][x] > tol:
                support_ok = False
                violations.append(("i", (side + 1, x)))
            # singular mass sits where gamma vanishes but mu does not; by
            # construction those points are outside A_i, so mass inside A_i
            # with zero gamma would be a defect of the canonical choice
            if x in inside and marg[side][x] == 0 and prob[side][x] > tol:
                support_ok = False
                violations.append(("i", (side + 1, x)))

    tight_on_plan = True
    for i in range(n):
        for j in range(n):
            if plan.gamma[i][j] > tol:
                gap = b * space.dist[i][j] - phi[0][i] - phi[1][j]
                if abs(gap) > tol:
                    tight_on_plan = False
                    violations.append(("ii", (i, j)))

    density_complementarity = True
    for side in (0, 1):
        for x in sets[side]:
            if prob[side][x] <= 0:
                continue
            f_x = marg[side][x] / prob[side][x]
            if abs((a - phi[side][x]) * (1 - f_x)) > tol:
                density_complementarity = False
                violations.append(("iii", (side + 1, x)))

    saturated_on_destroyed = True
    for side in (0, 1):
        inside = set(sets[side])
        for x in range(n):
            if x in inside:
                continue
            singular = prob[side][x]  # gamma vanishes here, all mass is singular
            if singular > tol and abs(phi[side][x] - a) > tol:
                saturated_on_destroyed = False
                violations.append(("iv", (side + 1, x)))

    return OptimalityCertificate(
        a1=sets[0],
        a2=sets[1],
        support_ok=support_ok,
        tight_on_plan=tight_on_plan,
        density_complementarity=density_complementarity,
        saturated_on_destroyed=saturated_on_destroyed,
        violations=tuple(violations),
    )
