"""
Valuation subcommands: ``val make|eval|fit|decompose|polarize|gw|support|extend|verify|density``.
"""

from typing import Any, ClassVar, Dict, List, Sequence

from ..convex import ConeSpec
from ..errors import PreconditionError
from ..serialization import (
    cone_from_json,
    dc_pair_from_json,
    density_from_json,
    function_from_json,
    polyhedron_from_json,
    polyhedron_to_json,
    scalar_to_json,
    valuation_from_json,
    valuation_to_json,
    vector_to_json,
)
from ..valuations import (
    MaxProbeValuation,
    affine_poly_fit,
    decompose_homogeneous,
    epi_translation_fit,
    extend_valuation,
    gw_evaluate,
    make_dirichlet,
    make_top_degree,
    polarize,
    reconstruct_density,
    support_estimate,
    verify_valuation_identity,
)
from .base import LabTool, parse_point, parse_points


def _key(exponents) -> str:
    return ",".join(str(e) for e in exponents)


class ValuationTool(LabTool):
    """Tool for building, evaluating and checking valuations."""

    name: str = "val"
    description: str = """Build valuations, evaluate them, fit polynomials, decompose, polarize,
    pair with DC test functions, probe supports, extend and verify the valuation identity.
    """
    actions: ClassVar[Sequence[str]] = (
        "make",
        "eval",
        "fit",
        "decompose",
        "polarize",
        "gw",
        "support",
        "extend",
        "verify",
        "density",
    )

    def do_make(self, inputs: List[Any], options: Dict[str, Any]) -> Dict:
        kind = self.option(options, "kind")
        if kind == "max_probe":
            self.expect(inputs, 1, "cone.json")
            cone = cone_from_json(inputs[0])
            probes = parse_points(self.option(options, "probes"))
            return {"valuation": valuation_to_json(MaxProbeValuation(probes, cone))}
        self.expect(inputs, 1, "phi.json|B.json [cone.json]")
        if kind == "top_degree":
            phi = density_from_json(inputs[0])
            cone = cone_from_json(inputs[1], phi.n) if len(inputs) > 1 else ConeSpec.full(phi.n)
            return {"valuation": valuation_to_json(make_top_degree(phi, cone))}
        if kind == "dirichlet":
            B = polyhedron_from_json(inputs[0])
            cone = cone_from_json(inputs[1], B.dim) if len(inputs) > 1 else ConeSpec.full(B.dim)
            return {"valuation": valuation_to_json(make_dirichlet(B, cone))}
        raise PreconditionError(f"Unknown valuation kind {kind}", code="usage")

    def do_eval(self, inputs: List[Any], options: Dict[str, Any]) -> Dict:
        self.expect(inputs, 2, "Z.json f.json")
        Z = valuation_from_json(inputs[0])
        return {"value": vector_to_json(Z.evaluate(function_from_json(inputs[1])))}

    def do_fit(self, inputs: List[Any], options: Dict[str, Any]) -> Dict:
        self.expect(inputs, 2, "Z.json f.json")
        Z, f = valuation_from_json(inputs[0]), function_from_json(inputs[1])
        fit = epi_translation_fit(Z, f) if Z.kind == "dualized" else affine_poly_fit(Z, f)
        return {
            "variables": list(fit.variables),
            "coefficients": {_key(e): vector_to_json(c) for e, c in sorted(fit.coefficients.items())},
            "exact": fit.exact,
            "violations": list(fit.violations),
            "falsified": not fit.exact,
        }

    def do_decompose(self, inputs: List[Any], options: Dict[str, Any]) -> Dict:
        self.expect(inputs, 2, "Z.json f.json")
        Z, f = valuation_from_json(inputs[0]), function_from_json(inputs[1])
        nodes = options.get("nodes")
        result = decompose_homogeneous(Z, f, parse_point(nodes) if nodes else None)
        payload = {
            "components": {str(k): vector_to_json(v) for k, v in result.components},
            "nodes": vector_to_json(result.nodes),
            "value": vector_to_json(result.value),
            "top_slot_zero": result.top_slot_zero,
            "sums_to_value": result.sums_to_value,
            "exact": result.exact,
            "falsified": not (result.top_slot_zero and result.sums_to_value),
        }
        if result.residual is not None:
            payload["residual"] = result.residual
        return payload

    def do_polarize(self, inputs: List[Any], options: Dict[str, Any]) -> Dict:
        self.expect(inputs, 2, "Z.json f1.json ...")
        Z = valuation_from_json(inputs[0])
        return {"value": vector_to_json(polarize(Z, [function_from_json(data) for data in inputs[1:]]))}

    def do_gw(self, inputs: List[Any], options: Dict[str, Any]) -> Dict:
        self.expect(inputs, 2, "Z.json phi1.json ...")
        Z = valuation_from_json(inputs[0])
        return {"value": vector_to_json(gw_evaluate(Z, [dc_pair_from_json(data) for data in inputs[1:]]))}

    def do_support(self, inputs: List[Any], options: Dict[str, Any]) -> Dict:
        self.expect(inputs, 1, "Z.json")
        Z = valuation_from_json(inputs[0])
        estimate = support_estimate(Z, parse_points(self.option(options, "centers")), self.option(options, "delta"))
        return {
            "label": estimate.label,
            "delta": scalar_to_json(estimate.delta),
            "probes": [
                {
                    "center": vector_to_json(p.center),
                    "certificates": {str(k): vector_to_json(v) for k, v in p.certificates},
                    "flagged": p.flagged,
                }
                for p in estimate.probes
            ],
            "flagged": [vector_to_json(c) for c in estimate.flagged],
        }

    def do_extend(self, inputs: List[Any], options: Dict[str, Any]) -> Dict:
        # without A.json the region is the widened hull of the flagged probe cells
        if options.get("centers") is not None:
            self.expect(inputs, 2, "Z.json cone.json [f.json] --centers ... --delta ...")
            Z = valuation_from_json(inputs[0])
            estimate = support_estimate(Z, parse_points(options["centers"]), self.option(options, "delta"))
            region, rest = estimate.region(), inputs[1:]
        else:
            self.expect(inputs, 3, "Z.json A.json cone.json [f.json]")
            Z = valuation_from_json(inputs[0])
            region, rest = polyhedron_from_json(inputs[1]), inputs[2:]
        extended = extend_valuation(Z, region, cone_from_json(rest[0], Z.n), self.option(options, "eps"))
        payload = {"valuation": valuation_to_json(extended), "region": polyhedron_to_json(region)}
        if len(rest) > 1:
            payload["value"] = vector_to_json(extended.evaluate(function_from_json(rest[1])))
        return payload

    def do_verify(self, inputs: List[Any], options: Dict[str, Any]) -> Dict:
        self.expect(inputs, 1, "Z.json")
        Z = valuation_from_json(inputs[0])
        result = verify_valuation_identity(Z, int(self.option(options, "trials", 200)), options.get("seed"))
        return {
            "kind": result.kind,
            "trials": result.trials,
            "seed": result.seed,
            "skipped": [{"trial": t, "reason": r} for t, r in result.skipped],
            "violations": [
                {
                    "trial": v.trial,
                    "lhs": vector_to_json(v.lhs),
                    "rhs": vector_to_json(v.rhs),
                    "reproducer": v.reproducer,
                }
                for v in result.violations
            ],
            "falsified": not result.passed,
        }

    def do_density(self, inputs: List[Any], options: Dict[str, Any]) -> Dict:
        self.expect(inputs, 1, "Z.json")
        Z = valuation_from_json(inputs[0])
        center = parse_point(self.option(options, "point"))
        found = reconstruct_density(Z, center, options.get("radius") or 1)
        return {
            "point": vector_to_json(center),
            "terms": [
                {"y_exp": list(y_exp), "s_exp": s_exp, "coeff": vector_to_json(coeff)}
                for (y_exp, s_exp), coeff in sorted(found.items())
            ],
        }
