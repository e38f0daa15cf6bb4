"""
Named acceptance suites.

Each suite draws its inputs from ``numpy.random.default_rng`` seeded by the
configured seed, checks a handful of exact properties and returns a report
with one entry per criterion. ``run_suite("all")`` runs every suite in order.
"""

import logging
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional

import numpy as np
from tqdm import tqdm

from .config import get_config
from .convex import (
    NOT_CONVEX,
    AffineForm,
    ConeSpec,
    PolyConvexFunction,
    add,
    add_affine,
    affine_function,
    cell_vertices,
    conjugate,
    epi_translate,
    functions_equal,
    indicator,
    max_affine,
    pointwise_max,
    pointwise_min_checked,
    support_function,
    support_lift,
)
from .duality import inf_conv
from .errors import ImproperFunctionError, PreconditionError
from .generators import cut_body, random_body, random_fraction, random_function, random_normal
from .geometry import Polyhedron
from .geometry.vectors import vadd
from .hessian import PiecewisePolyDensity, bump_pair, theta0
from .valuations import (
    DirichletValuation,
    MaxProbeValuation,
    TopDegreeValuation,
    Valuation,
    affine_poly_fit,
    check_component_homogeneity,
    decompose_homogeneous,
    dualize_valuation,
    epi_translation_fit,
    extend_valuation,
    gw_evaluate,
    l1_cone_function,
    polarize,
    reconstruct_density,
    support_estimate,
    verify_valuation_identity,
)

logger = logging.getLogger(__name__)


@dataclass
class Criterion:
    id: str
    description: str
    passed: bool
    details: Dict[str, Any] = field(default_factory=dict)


def _rng(*salt: int) -> np.random.Generator:
    return np.random.default_rng([get_config().seed, *salt])


def _progress(iterable, desc: str):
    return tqdm(iterable, desc=desc, disable=not get_config().show_progress)


def _top_degree(n: int, d: int) -> TopDegreeValuation:
    y_exp = (d,) + (0,) * (n - 1)
    return TopDegreeValuation(PiecewisePolyDensity.tent((0,) * n, 1, y_exp=y_exp), ConeSpec.full(n))


def _dirichlet(n: int) -> DirichletValuation:
    return DirichletValuation(Polyhedron.cube(n, 1), ConeSpec.full(n))


def _builtins() -> List[Valuation]:
    found: List[Valuation] = [_top_degree(n, d) for n in (1, 2) for d in (0, 1, 2)]
    return found + [_dirichlet(1), _dirichlet(2)]


def _label(Z: Valuation) -> str:
    return f"{Z.kind}(n={Z.n}, d={Z.d})"


# -- conjugation ---------------------------------------------------------------------


def conjugation_suite(trials: Optional[int] = None) -> List[Criterion]:
    trials = 70 if trials is None else trials
    criteria = []
    for n in (1, 2, 3):
        rng = _rng(1, n)
        failures = []
        for trial in _progress(range(trials), f"conjugation n={n}"):
            f = random_function(n, rng, max_pieces=3)
            if not functions_equal(conjugate(conjugate(f)), f):
                failures.append(trial)
        criteria.append(
            Criterion(
                f"conjugation-involution-n{n}",
                f"(f*)* = f on {trials} functions in R^{n}",
                not failures,
                {"failures": failures},
            )
        )
    box = indicator(Polyhedron.box([-1], [1]))
    absolute = max_affine([AffineForm.of([1], 0), AffineForm.of([-1], 0)])
    criteria.append(Criterion("conjugation-abs", "|x|* = I_[-1,1]", functions_equal(conjugate(absolute), box)))
    return criteria


# -- duality identities ----------------------------------------------------------------


def _check_trials(trials: int, desc: str, check: Callable[[int], Optional[bool]]) -> Dict[str, Any]:
    failures, skipped = [], []
    for trial in _progress(range(trials), desc):
        try:
            ok = check(trial)
        except ImproperFunctionError:
            ok = None
        if ok is None:
            skipped.append(trial)
        elif not ok:
            failures.append(trial)
    return {"checked": trials - len(skipped), "required": trials, "failures": failures, "skipped": skipped}


def _gate(details: Dict[str, Any]) -> bool:
    """A criterion passes only without failures and with every required trial checked."""
    return not details["failures"] and details["checked"] >= details["required"]


def duality_suite(trials: Optional[int] = None) -> List[Criterion]:
    trials = 100 if trials is None else trials

    def lattice(trial: int) -> Optional[bool]:
        rng = _rng(2, 1, trial)
        n = 1 + trial % 2
        body = random_body(n + 1, rng)
        first, second = cut_body(body, random_normal(n + 1, rng, vertical_part=True))
        f, g = support_lift(first), support_lift(second)
        meet = pointwise_min_checked(f, g)
        dual_meet = pointwise_min_checked(conjugate(f), conjugate(g))
        if meet is NOT_CONVEX or dual_meet is NOT_CONVEX:
            return None
        return functions_equal(conjugate(meet), pointwise_max(conjugate(f), conjugate(g))) and functions_equal(
            conjugate(pointwise_max(f, g)), dual_meet
        )

    def sums(trial: int) -> bool:
        rng = _rng(2, 2, trial)
        n = 1 + trial % 2
        f = random_function(n, rng, max_pieces=3, bounded_domain=True)
        g = random_function(n, rng, max_pieces=3, bounded_domain=True)
        f_star, g_star = conjugate(f), conjugate(g)
        return functions_equal(conjugate(inf_conv(f, g)), add(f_star, g_star)) and functions_equal(
            conjugate(add(f, g)), inf_conv(f_star, g_star)
        )

    def translation(trial: int) -> bool:
        rng = _rng(2, 3, trial)
        n = 1 + trial % 2
        f = random_function(n, rng, max_pieces=3)
        x = tuple(random_fraction(rng) for _ in range(n))
        t = random_fraction(rng)
        return functions_equal(conjugate(epi_translate(f, x + (t,))), add_affine(conjugate(f), AffineForm(x, -t)))

    def support(trial: int) -> bool:
        rng = _rng(2, 4, trial)
        body = random_body(1 + trial % 2, rng)
        return functions_equal(conjugate(support_function(body)), indicator(body))

    checks = [
        ("duality-lattice", "(f ∧ g)* = f* ∨ g* and (f ∨ g)* = f* ∧ g* on cut bodies", lattice),
        ("duality-sum", "(f □ g)* = f* + g* and (f + g)* = f* □ g*", sums),
        ("duality-translation", "(τ_(x,t) f)* = f* + <x, ·> - t", translation),
        ("duality-support", "(h_K)* = I_K", support),
    ]
    criteria = []
    for cid, description, check in checks:
        details = _check_trials(trials, cid, check)
        criteria.append(Criterion(cid, description, _gate(details), details))
    return criteria


# -- valuation identity ------------------------------------------------------------------


def _max_probe_counterexample() -> bool:
    """K = [-1, 1]^2 cut at x = 0 gives 3 on the left and 4 on the right."""
    Z = MaxProbeValuation([(-1,), (1,)], ConeSpec.full(1))
    f = max_affine([AffineForm.of([-1], 1), AffineForm.of([0], 1)])
    h = max_affine([AffineForm.of([1], 1), AffineForm.of([0], 1)])
    lhs = vadd(Z(pointwise_max(f, h)), Z(pointwise_min_checked(f, h)))
    return lhs != vadd(Z(f), Z(h))


def valuation_identity_suite(trials: Optional[int] = None) -> List[Criterion]:
    trials = 200 if trials is None else trials
    criteria = []
    for Z in _builtins() + [dualize_valuation(_dirichlet(1))]:
        result = verify_valuation_identity(Z, trials)
        criteria.append(
            Criterion(
                f"identity-{Z.kind}-n{Z.n}-d{Z.d}",
                f"Z(f ∨ h) + Z(f ∧ h) = Z(f) + Z(h) for {_label(Z)}",
                result.passed and result.checked >= trials,
                {
                    "trials": trials,
                    "checked": result.checked,
                    "skipped": len(result.skipped),
                    "violations": [v.reproducer for v in result.violations],
                },
            )
        )
    # at least 20 control cuts
    control = verify_valuation_identity(MaxProbeValuation([(-1,), (1,)], ConeSpec.full(1)), max(trials, 20))
    criteria.append(
        Criterion(
            "identity-negative-control",
            "the max-probe kernel violates the identity, by hand and on random cuts",
            _max_probe_counterexample() and bool(control.violations),
            {"random_violations": len(control.violations)},
        )
    )
    return criteria


# -- decomposition ----------------------------------------------------------------------


def decomposition_suite(trials: Optional[int] = None) -> List[Criterion]:
    trials = 100 if trials is None else trials
    valuations = [_top_degree(1, 1), _dirichlet(1), _top_degree(2, 0)]
    sums_fail, top_fail, homogeneity_fail = [], [], []
    for trial in _progress(range(trials), "decomposition"):
        Z = valuations[trial % len(valuations)]
        rng = _rng(4, trial)
        f = support_lift(random_body(Z.n + 1, rng))
        result = decompose_homogeneous(Z, f)
        if not result.sums_to_value:
            sums_fail.append(trial)
        if not result.top_slot_zero:
            top_fail.append(trial)
        if not all(check.ok for check in check_component_homogeneity(Z, f, base=result)):
            homogeneity_fail.append(trial)
    return [
        Criterion("decomposition-sum", "Σ_k Z_k(f) = Z(f)", not sums_fail, {"failures": sums_fail}),
        Criterion("decomposition-top-slot", "Z_{n+d+1}(f) = 0", not top_fail, {"failures": top_fail}),
        Criterion(
            "decomposition-homogeneity",
            "Z_k(t·f) = t^k Z_k(f) for t in {2, 3, 5}",
            not homogeneity_fail,
            {"failures": homogeneity_fail},
        ),
    ]


# -- polynomiality ---------------------------------------------------------------------


def polynomiality_suite(trials: Optional[int] = None) -> List[Criterion]:
    trials = 4 if trials is None else trials
    criteria = []
    for index, Z in enumerate(_builtins()):
        rng = _rng(5, index)
        violations = []
        for _ in range(trials):
            fit = affine_poly_fit(Z, support_lift(random_body(Z.n + 1, rng)))
            violations.extend(fit.violations)
        criteria.append(
            Criterion(
                f"polynomial-{Z.kind}-n{Z.n}-d{Z.d}",
                f"ℓ ↦ Z(f + ℓ) is a polynomial of degree <= {Z.d} for {_label(Z)}",
                not violations,
                {"violations": violations},
            )
        )
    fit = affine_poly_fit(_dirichlet(1), l1_cone_function((0,), 1))
    expected = {(0, 0): (Fraction(2),), (2, 0): (Fraction(2),)}
    criteria.append(
        Criterion(
            "polynomial-dirichlet-abs",
            "Dirichlet energy of |x| + yx + c on [-1, 1] is 2 + 2y²",
            fit.exact and fit.coefficients == expected,
            {"coefficients": {str(k): [str(x) for x in v] for k, v in fit.coefficients.items()}},
        )
    )
    dual_fit = epi_translation_fit(dualize_valuation(_dirichlet(1)), indicator(Polyhedron.box([-1], [1])))
    criteria.append(
        Criterion(
            "polynomial-dual-epi-translation",
            "X ↦ Z~(τ_X f) is a polynomial of degree <= 2 for the dual Dirichlet energy",
            dual_fit.exact,
            {"violations": list(dual_fit.violations)},
        )
    )
    return criteria


# -- Hessian measure ---------------------------------------------------------------------


def tangent_sample(count: int) -> PolyConvexFunction:
    """max_k of the tangents of x²/2 at a_k = -1 + (2k + 1)/count."""
    forms = []
    for k in range(count):
        a = Fraction(-1) + Fraction(2 * k + 1, count)
        forms.append(AffineForm((a,), -a * a / 2))
    return max_affine(forms)


def hessian_suite(trials: Optional[int] = None) -> List[Criterion]:
    trials = 20 if trials is None else trials
    criteria = []
    for n in (1, 2, 3):
        mass = theta0(l1_cone_function((0,) * n, 1), Polyhedron.cube(n, 1)).total_mass
        criteria.append(
            Criterion(f"theta0-l1-n{n}", f"Θ0 mass of |x|_1 near 0 is 2^{n}", mass == 2**n, {"mass": str(mass)})
        )
    rng = _rng(6)
    nonzero = []
    for trial in range(trials):
        n = 1 + trial % 3
        f = affine_function([random_fraction(rng) for _ in range(n)], random_fraction(rng))
        if theta0(f, Polyhedron.cube(n, 1)).total_mass != 0:
            nonzero.append(trial)
    criteria.append(
        Criterion("theta0-affine", "affine functions carry no Θ0 mass", not nonzero, {"failures": nonzero})
    )
    eps = Fraction(1, 5)
    region = Polyhedron.cube(1, 1 - eps)
    masses = {}
    ok = True
    for count in (8, 16, 32):
        mass = float(theta0(tangent_sample(count), region).total_mass)
        masses[str(count)] = mass
        ok = ok and abs(mass - float(2 - 2 * eps)) <= 2 / count
    criteria.append(
        Criterion(
            "theta0-smooth-consistency",
            "tangent samples of x²/2 have mass within 2/N of 2 - 2ε",
            ok,
            {"masses": masses, "float": True},
        )
    )
    return criteria


# -- Goodey-Weil ------------------------------------------------------------------------


def goodey_weil_suite(trials: Optional[int] = None) -> List[Criterion]:
    trials = 20 if trials is None else trials
    Z = _dirichlet(1)
    rng = _rng(7)
    asymmetric, nonlinear, shifted = [], [], []
    for trial in _progress(range(trials), "goodey-weil"):
        f1, f2, f3, r = (random_function(1, rng, max_pieces=3, bounded_domain=False) for _ in range(4))
        if polarize(Z, [f1, f2]) != polarize(Z, [f2, f1]):
            asymmetric.append(trial)
        if polarize(Z, [add(f1, f3), f2]) != vadd(polarize(Z, [f1, f2]), polarize(Z, [f3, f2])):
            nonlinear.append(trial)
        pair = bump_pair((random_fraction(rng, 1, 4),), Fraction(1, 4))
        if gw_evaluate(Z, [pair, pair]) != gw_evaluate(Z, [pair.shifted(r), pair]):
            shifted.append(trial)
    quarter = Fraction(1, 4)
    disjoint = gw_evaluate(Z, [bump_pair((Fraction(-1, 2),), quarter), bump_pair((Fraction(1, 2),), quarter)])
    bumps = {}
    for delta in (Fraction(1, 4), Fraction(1, 8)):
        pair = bump_pair((0,), delta)
        bumps[str(delta)] = gw_evaluate(Z, [pair, pair]) == (2 / delta,)
    return [
        Criterion("gw-symmetry", "Z̄(f1, f2) = Z̄(f2, f1)", not asymmetric, {"failures": asymmetric}),
        Criterion(
            "gw-multilinearity", "Z̄(f1 + f3, f2) = Z̄(f1, f2) + Z̄(f3, f2)", not nonlinear, {"failures": nonlinear}
        ),
        Criterion(
            "gw-disjoint",
            "bumps with disjoint supports pair to 0",
            not any(disjoint),
            {"value": [str(x) for x in disjoint]},
        ),
        Criterion("gw-dirichlet-bump", "the Dirichlet bump pairing is 2/δ", all(bumps.values()), {"deltas": bumps}),
        Criterion(
            "gw-dc-independence", "the pairing ignores convex shifts of a DC pair", not shifted, {"failures": shifted}
        ),
    ]


# -- support and extension ---------------------------------------------------------------


def _shifted_outside(f, rng: np.random.Generator):
    """max(f, L(x - 2) + m) with m = min f on [-2, 2]: equal to f on (-inf, 2]."""
    low = min(f.value_at(v) for v in cell_vertices(f, Polyhedron.cube(1, 2)))
    slope = Fraction(int(rng.integers(1, 6)))
    return pointwise_max(f, affine_function([slope], low - 2 * slope))


def support_extension_suite(trials: Optional[int] = None) -> List[Criterion]:
    trials = 50 if trials is None else trials
    Z = _top_degree(1, 0)
    estimate = support_estimate(Z, [(-2,), (0,), (2,)], Fraction(1, 4))
    flagged = [tuple(str(x) for x in c) for c in estimate.flagged]
    region = Polyhedron.cube(1, 1)
    target = ConeSpec(1, Polyhedron.universe(1), Polyhedron.cube(1, 2))
    wide = extend_valuation(Z, region, target, Fraction(1, 2))
    narrow = extend_valuation(Z, region, target, Fraction(1, 4))
    box = indicator(Polyhedron.cube(1, 2))
    restricted = ConeSpec.uniform(Polyhedron.cube(1, 2))
    restriction = extend_valuation(Z, region, restricted, Fraction(1, 2))
    disagree, round_trip, nonlocal_ = [], [], []
    for trial in _progress(range(trials), "support-extension"):
        rng = _rng(8, trial)
        f = random_function(1, rng, max_pieces=4, bounded_domain=False)
        g = add(f, box)
        if wide(g) != narrow(g):
            disagree.append(trial)
        lift = support_lift(random_body(2, rng))
        if restriction(add(lift, box)) != Z(lift):
            round_trip.append(trial)
        if wide(_shifted_outside(f, rng)) != wide(f):
            nonlocal_.append(trial)
    return [
        Criterion(
            "support-flags",
            "bump probes at -2, 0, 2 flag exactly the probe inside the density support",
            flagged == [("0",)],
            {"flagged": flagged, "label": estimate.label},
        ),
        Criterion("extension-eps", "the extension agrees for eps in {1/4, 1/2}", not disagree, {"failures": disagree}),
        Criterion(
            "extension-restriction", "Z~(f + I_A) = Z(f) on lifted bodies", not round_trip, {"failures": round_trip}
        ),
        Criterion(
            "extension-locality",
            "changing f outside the support leaves Z~(f) unchanged",
            not nonlocal_,
            {"failures": nonlocal_},
        ),
    ]


# -- uniqueness -----------------------------------------------------------------------------


def uniqueness_suite(trials: Optional[int] = None) -> List[Criterion]:
    cases = [
        (
            PiecewisePolyDensity.tent((0,), 2, y_exp=(1,)),
            [(-1,), (Fraction(-1, 2),), (0,), (Fraction(1, 2),), (1,)],
        ),
        (
            PiecewisePolyDensity.tent((0, 0), 2),
            [(0, 0), (Fraction(1, 2), 0), (0, Fraction(1, 2)), (Fraction(-1, 2), Fraction(1, 2)), (1, 1)],
        ),
    ]
    criteria = []
    for phi, points in cases:
        Z = TopDegreeValuation(phi, ConeSpec.full(phi.n))
        mismatches = [
            [str(x) for x in point] for point in points if reconstruct_density(Z, point) != phi.coefficients_at(point)
        ]
        criteria.append(
            Criterion(
                f"uniqueness-n{phi.n}-d{phi.d}",
                "reconstructing φ from the top coefficient matches the density",
                not mismatches,
                {"mismatches": mismatches},
            )
        )
    return criteria


SUITES: Dict[str, Callable[[Optional[int]], List[Criterion]]] = {
    "conjugation": conjugation_suite,
    "duality": duality_suite,
    "valuation_identity": valuation_identity_suite,
    "decomposition": decomposition_suite,
    "polynomiality": polynomiality_suite,
    "hessian": hessian_suite,
    "goodey_weil": goodey_weil_suite,
    "support_extension": support_extension_suite,
    "uniqueness": uniqueness_suite,
}


def _suite_report(name: str, trials: Optional[int]) -> Dict[str, Any]:
    logger.info(f"Running suite {name}")
    criteria = SUITES[name](trials)
    passed = all(c.passed for c in criteria)
    if not passed:
        logger.warning(f"Suite {name}: {sum(not c.passed for c in criteria)} criteria failed")
    return {"suite": name, "passed": passed, "criteria": [asdict(c) for c in criteria]}


def run_suite(name: str, trials: Optional[int] = None) -> Dict[str, Any]:
    """
    Run one named suite, or every suite for ``"all"``.

    Args:
        name: Suite name from ``SUITES`` or "all"
        trials: Optional override of each suite's trial count

    Returns:
        Dict: Report with per-criterion results and a ``falsified`` flag
    """
    if name != "all" and name not in SUITES:
        raise PreconditionError(f"Unknown suite {name}", code="unknown suite", details={"suites": list(SUITES)})
    seed = get_config().seed
    if name == "all":
        reports = [_suite_report(suite, trials) for suite in SUITES]
        passed = all(r["passed"] for r in reports)
        return {"suite": "all", "seed": seed, "passed": passed, "suites": reports, "falsified": not passed}
    report = _suite_report(name, trials)
    return {**report, "seed": seed, "falsified": not report["passed"]}
