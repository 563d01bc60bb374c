"""Independent brute-force reference solver over integer-mass instances.

Why exhaustive integer enumeration is exact for every order p >= 1: the
objective  a(|mu| + |nu| - 2 sum gamma) + b (sum d^p gamma)^(1/p)  is concave
in gamma (a linear term plus an increasing concave function of a linear map),
so its minimum over the feasible polytope {gamma >= 0, rows <= mu, cols <= nu}
is attained at a vertex.  That polytope has transportation structure, hence
integral vertices whenever mu and nu are integral; enumerating all integer
sub-marginal matrices therefore covers every vertex.  Rational masses are
rescaled to integers by callers before invoking the oracle.

This module is deliberately slow and simple: it exists to cross-check the
flow and simplex solvers, not to be used for solving.
"""

from __future__ import annotations

from typing import Iterator

from .errors import TooLarge
from .measures import DiscreteMeasure, TransportPlan, require_same_space
from .params import EntropyParams
from .scalars import Scalar
from .spaces import FiniteMetricSpace

DEFAULT_PLAN_CAP = 10_000_000


def enumerate_integer_plans(
    mu: DiscreteMeasure, nu: DiscreteMeasure, cap: int = DEFAULT_PLAN_CAP
) -> Iterator[TransportPlan]:
    """Yield every integer matrix gamma >= 0 with rows <= mu and cols <= nu,
    each exactly once (row-major odometer with residual-capacity pruning)."""
    require_same_space(mu, nu)
    mu_w = _integer_weights(mu)
    nu_w = _integer_weights(nu)
    n = len(mu_w)

    bound_product = 1
    for i in range(n):
        for j in range(n):
            bound_product *= min(mu_w[i], nu_w[j]) + 1
            if bound_product > cap:
                raise TooLarge(f"plan enumeration bound exceeds the cap of {cap}")

    space = mu.space
    cells = [(i, j) for i in range(n) for j in range(n)]
    gamma = [[0] * n for _ in range(n)]
    row_left = list(mu_w)
    col_left = list(nu_w)

    def rec(k: int) -> Iterator[TransportPlan]:
        if k == len(cells):
            yield TransportPlan(space, tuple(tuple(row) for row in gamma))
            return
        i, j = cells[k]
        top = min(row_left[i], col_left[j])
        for v in range(top + 1):
            gamma[i][j] = v
            row_left[i] -= v
            col_left[j] -= v
            yield from rec(k + 1)
            row_left[i] += v
            col_left[j] += v
        gamma[i][j] = 0

    yield from rec(0)


def brute_force_value(
    space: FiniteMetricSpace,
    mu: DiscreteMeasure,
    nu: DiscreteMeasure,
    params: EntropyParams,
    cap: int = DEFAULT_PLAN_CAP,
) -> Scalar:
    """Minimum objective over every enumerated integer plan.

    Exact (rational) for p = 1; for p > 1 the root is evaluated in floats.
    """
    require_same_space(mu, nu)
    a, b, p = params.a, params.b, params.p
    exponent = int(p) if p == int(p) else float(p)
    total = mu.mass + nu.mass
    inv_p = 1.0 / float(p)

    mu_w = _integer_weights(mu)
    nu_w = _integer_weights(nu)
    n = len(mu_w)
    bound_product = 1
    for i in range(n):
        for j in range(n):
            bound_product *= min(mu_w[i], nu_w[j]) + 1
            if bound_product > cap:
                raise TooLarge(f"plan enumeration bound exceeds the cap of {cap}")

    powered = [[space.dist[i][j] ** exponent for j in range(n)] for i in range(n)]
    cells = [(i, j) for i in range(n) for j in range(n)]
    row_left = list(mu_w)
    col_left = list(nu_w)
    best = None

    # Same odometer as enumerate_integer_plans, but carrying the running
    # shipped mass and accumulated d^p cost so each leaf costs O(1).
    def rec(k: int, m: int, t):
        nonlocal best
        if k == len(cells):
            if p == 1:
                value = a * (total - 2 * m) + b * t
            else:
                value = a * (total - 2 * m) + b * float(t) ** inv_p
            if best is None or value < best:
                best = value
            return
        i, j = cells[k]
        top = min(row_left[i], col_left[j])
        cost = powered[i][j]
        for v in range(top + 1):
            row_left[i] -= v
            col_left[j] -= v
            rec(k + 1, m + v, t + cost * v)
            row_left[i] += v
            col_left[j] += v

    rec(0, 0, 0)
    return best


def _integer_weights(m: DiscreteMeasure) -> list[int]:
    out = []
    for i, w in enumerate(m.weights):
        if w != int(w):
            raise ValueError(f"oracle needs integer masses, got {w} at point {i}")
        out.append(int(w))
    return out
