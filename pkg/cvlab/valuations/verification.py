"""
Randomized exact checks of the valuation identity
Z(f ∨ h) + Z(f ∧ h) = Z(f) + Z(h).

Pairs with a convex minimum come from cutting a random body K ⊂ R^{n+1} by a
hyperplane through its vertex centroid: h_{K1} ∨ h_{K2} = h_K and
h_{K1} ∧ h_{K2} = h_{K1 ∩ K2}.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from tqdm import tqdm

from ..config import get_config
from ..convex import NOT_CONVEX, ConeSpec, conjugate, lift_HA, pointwise_max, pointwise_min_checked
from ..duality import DualConeSpec
from ..errors import ImproperFunctionError, PreconditionError
from ..generators import centroid, cut_body, random_body, random_normal
from ..geometry import Polyhedron
from ..geometry.vectors import Vector, dot, format_scalar, vadd
from .base import Valuation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IdentityViolation:
    trial: int
    lhs: Vector
    rhs: Vector
    reproducer: Dict[str, Any]


@dataclass(frozen=True)
class IdentityReport:
    kind: str
    trials: int
    seed: int
    violations: Tuple[IdentityViolation, ...]
    skipped: Tuple[Tuple[int, str], ...] = field(default=())

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def checked(self) -> int:
        """Trials whose identity was actually evaluated."""
        return self.trials - len(self.skipped)


def _primal_cone(Z: Valuation) -> Tuple[ConeSpec, bool]:
    if isinstance(Z.cone, ConeSpec):
        return Z.cone, False
    if isinstance(Z.cone, DualConeSpec) and isinstance(Z.cone.primal, ConeSpec):
        return Z.cone.primal, True
    raise PreconditionError("Identity checks support (A, O)-cones and their duals", code="invalid cone")


def _reproducer(seed: int, trial: int, body: Polyhedron, normal: Vector, offset: Fraction) -> Dict[str, Any]:
    return {
        "seed": seed,
        "trial": trial,
        "body": {"dim": body.dim, "vertices": [[format_scalar(x) for x in v] for v in body.vertices], "rays": []},
        "normal": [format_scalar(x) for x in normal],
        "offset": format_scalar(offset),
    }


def _run_trial(Z: Valuation, seed: int, trial: int):
    cone, dual = _primal_cone(Z)
    rng = np.random.default_rng([seed, trial])
    body = random_body(Z.n + 1, rng)
    normal = random_normal(Z.n + 1, rng, vertical_part=dual)
    offset = dot(normal, centroid(body))
    first, second = cut_body(body, normal, offset)
    f, h = lift_HA(first, cone), lift_HA(second, cone)
    if dual:
        f, h = conjugate(f), conjugate(h)
    try:
        join = pointwise_max(f, h)
        meet = pointwise_min_checked(f, h)
    except ImproperFunctionError as e:
        return trial, None, str(e)
    if meet is NOT_CONVEX:
        return trial, None, "minimum is not convex"
    lhs = vadd(Z.evaluate(join), Z.evaluate(meet))
    rhs = vadd(Z.evaluate(f), Z.evaluate(h))
    if lhs == rhs:
        return trial, None, None
    return trial, IdentityViolation(trial, lhs, rhs, _reproducer(seed, trial, body, normal, offset)), None


def verify_valuation_identity(Z: Valuation, trials: int, seed: Optional[int] = None) -> IdentityReport:
    """
    Check the valuation identity on ``trials`` random cut-body pairs.

    Trials run on ``LabConfig.workers`` threads; each trial draws from its own
    generator seeded by (seed, trial), so results do not depend on scheduling.

    Args:
        Z (Valuation): Valuation on an (A, O)-cone or on the dual of one
        trials (int): Number of pairs
        seed (Optional[int]): Generator seed, defaults to the configured seed

    Returns:
        IdentityReport: Violations with reproducers, in trial order
    """
    config = get_config()
    seed = config.seed if seed is None else seed
    with ThreadPoolExecutor(max_workers=config.workers) as executor:
        futures = [executor.submit(_run_trial, Z, seed, trial) for trial in range(trials)]
        outcomes = [
            future.result()
            for future in tqdm(futures, desc=f"identity {Z.kind}", disable=not config.show_progress)
        ]
    violations: List[IdentityViolation] = []
    skipped: List[Tuple[int, str]] = []
    for trial, violation, reason in sorted(outcomes, key=lambda o: o[0]):
        if violation is not None:
            violations.append(violation)
        if reason is not None:
            skipped.append((trial, reason))
    if violations:
        logger.warning(f"verify_valuation_identity: {len(violations)} violations for {Z.kind}")
    logger.info(f"verify_valuation_identity: {trials} trials, {len(skipped)} skipped")
    return IdentityReport(Z.kind, trials, seed, tuple(violations), tuple(skipped))
