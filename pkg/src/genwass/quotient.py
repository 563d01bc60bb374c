"""End-to-end checks that the quotient pushforward contracts the unbalanced
distance on arbitrary measures and preserves it exactly on invariant ones.

On a finite space every finite measure has all moments, so no moment
restriction appears anywhere: the full measure space is the right domain.
"""

from __future__ import annotations

from .errors import NotInvariant
from .measures import DiscreteMeasure, is_invariant, pushforward, require_same_space
from .params import EntropyParams
from .scalars import Scalar
from .solver_wp import solve
from .spaces import FiniteGroupAction, QuotientResult, build_quotient


def project_measure(quotient: QuotientResult, mu: DiscreteMeasure) -> DiscreteMeasure:
    return pushforward(quotient.projection, mu, quotient.quotient)


def check_quotient_contraction(
    action: FiniteGroupAction,
    mu: DiscreteMeasure,
    nu: DiscreteMeasure,
    params: EntropyParams,
) -> tuple[Scalar, Scalar]:
    """Distance upstairs vs. downstairs; invariance is NOT required and the
    caller asserts downstairs <= upstairs."""
    require_same_space(action, mu)
    require_same_space(mu, nu)
    quotient = build_quotient(action)
    upstairs = solve(action.space, mu, nu, params).value
    downstairs = solve(
        quotient.quotient, project_measure(quotient, mu), project_measure(quotient, nu), params
    ).value
    return upstairs, downstairs


def check_quotient_isometry(
    action: FiniteGroupAction,
    mu: DiscreteMeasure,
    nu: DiscreteMeasure,
    params: EntropyParams,
) -> tuple[Scalar, Scalar]:
    """Both distances for invariant measures; the caller asserts equality.

    Invariance is a hypothesis of the isometry, so near misses fail loudly.
    """
    require_same_space(action, mu)
    require_same_space(mu, nu)
    for name, m in (("mu", mu), ("nu", nu)):
        witness = is_invariant(action, m)
        if witness is not None:
            point, element = witness
            raise NotInvariant(name, point, element)
    return check_quotient_contraction(action, mu, nu, params)
