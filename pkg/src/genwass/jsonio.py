"""Problem-file parsing and report serialization.

One JSON file captures a whole problem (space, optional group, measures,
cost parameters), so a run is reproducible from a single artifact.  Numbers
may be ints, floats, or "p/q" strings; the default arithmetic mode is exact
when every number in the file is an int or a rational string.
"""

from __future__ import annotations

from dataclasses import dataclass

from .duality import DualPotentials, OptimalityCertificate
from .measures import DiscreteMeasure, TransportPlan, measure
from .params import EntropyParams
from .scalars import Scalar, coerce, is_exact, parse_scalar, scalar_to_json
from .solver_w1 import SolveReport
from .spaces import FiniteGroupAction, FiniteMetricSpace, validate_action, validate_metric


@dataclass
class Problem:
    space: FiniteMetricSpace
    mu: DiscreteMeasure
    nu: DiscreteMeasure
    params: EntropyParams
    action: FiniteGroupAction | None = None
    eta: DiscreteMeasure | None = None
    seed: int = 0


def load_problem(doc: dict, mode: str | None = None) -> Problem:
    if not isinstance(doc, dict):
        raise ValueError("problem file must be a JSON object")
    for key in ("space", "mu", "nu", "params"):
        if key not in doc:
            raise ValueError(f"problem file is missing the {key!r} field")

    mode = mode or doc.get("mode")
    if mode is None:
        exact = _all_exact(doc)
    elif mode in ("exact", "float"):
        exact = mode == "exact"
    else:
        raise ValueError(f"mode must be 'exact' or 'float', got {mode!r}")

    space = parse_space(doc["space"], exact=exact)
    mu = parse_measure(doc["mu"], space, "mu")
    nu = parse_measure(doc["nu"], space, "nu")
    eta = parse_measure(doc["eta"], space, "eta") if "eta" in doc else None
    params = parse_params(doc["params"], exact=exact)
    action = parse_action(doc["group"], space) if "group" in doc else None
    seed = int(doc.get("seed", 0))
    return Problem(space=space, mu=mu, nu=nu, params=params, action=action, eta=eta, seed=seed)


def parse_space(doc: dict, exact: bool | None = None) -> FiniteMetricSpace:
    if not isinstance(doc, dict) or "points" not in doc or "d" not in doc:
        raise ValueError('space must be {"points": [...], "d": [[...]]}')
    matrix = [[parse_scalar(x) for x in row] for row in doc["d"]]
    return validate_metric(doc["points"], matrix, exact=exact)


def parse_measure(doc: dict, space: FiniteMetricSpace, name: str) -> DiscreteMeasure:
    if not isinstance(doc, dict):
        raise ValueError(f"{name} must map point labels to weights")
    weights = [0] * space.n
    for label, w in doc.items():
        if label not in space.labels:
            raise ValueError(f"{name} references undeclared point {label!r}")
        weights[space.index(label)] = parse_scalar(w)
    return measure(space, weights)


def parse_params(doc: dict, exact: bool) -> EntropyParams:
    if not isinstance(doc, dict) or "a" not in doc or "b" not in doc:
        raise ValueError('params must supply at least {"a": ..., "b": ...}')
    a = coerce(parse_scalar(doc["a"]), exact)
    b = coerce(parse_scalar(doc["b"]), exact)
    p_raw = parse_scalar(doc.get("p", 1))
    # keep an integral order as an int so exact cost powers stay rational
    p = int(p_raw) if p_raw == int(p_raw) else float(p_raw)
    return EntropyParams(a=a, b=b, p=p)


def parse_action(doc, space: FiniteMetricSpace) -> FiniteGroupAction:
    perms = doc["group"] if isinstance(doc, dict) else doc
    return validate_action(space, perms)


def _all_exact(doc) -> bool:
    scalars = []
    space = doc.get("space", {})
    for row in space.get("d", []):
        scalars.extend(row)
    for key in ("mu", "nu", "eta"):
        if key in doc and isinstance(doc[key], dict):
            scalars.extend(doc[key].values())
    params = doc.get("params", {})
    for key in ("a", "b", "p"):
        if key in params:
            scalars.append(params[key])
    try:
        return all(is_exact(parse_scalar(x)) for x in scalars)
    except ValueError:
        return False


def report_to_json(report: SolveReport) -> dict:
    doc = {
        "value": scalar_to_json(report.value),
        "plan": [[scalar_to_json(x) for x in row] for row in report.plan.gamma],
        "m": scalar_to_json(report.transported_mass),
        "destroyed": scalar_to_json(report.destroyed_mass),
        "created": scalar_to_json(report.created_mass),
    }
    if report.potentials is not None:
        doc["phi1"] = [scalar_to_json(x) for x in report.potentials.phi1]
        doc["phi2"] = [scalar_to_json(x) for x in report.potentials.phi2]
    if report.duality_gap is not None:
        doc["gap"] = scalar_to_json(report.duality_gap)
    if report.conditions is not None:
        doc["conditions"] = certificate_to_json(report.conditions)["conditions"]
    else:
        doc["conditions"] = "not-applicable"
    if report.curve is not None:
        doc["curve"] = [[scalar_to_json(m), scalar_to_json(t)] for m, t in report.curve]
    return doc


def certificate_to_json(cert: OptimalityCertificate) -> dict:
    return {
        "conditions": cert.conditions(),
        "violations": [[name, list(witness)] for name, witness in cert.violations],
        "A1": list(cert.a1),
        "A2": list(cert.a2),
    }


def parse_plan(doc, space: FiniteMetricSpace) -> TransportPlan:
    gamma = [[coerce(parse_scalar(x), space.exact) for x in row] for row in doc]
    return TransportPlan(space, tuple(tuple(row) for row in gamma))


def parse_potentials(phi1, phi2, space: FiniteMetricSpace, params: EntropyParams) -> DualPotentials:
    one = [coerce(parse_scalar(x), space.exact) for x in phi1]
    two = [coerce(parse_scalar(x), space.exact) for x in phi2]
    if len(one) != space.n or len(two) != space.n:
        raise ValueError("potential vectors must match the space size")
    return DualPotentials(phi1=tuple(one), phi2=tuple(two), params=params)
