"""
Body subcommands: ``body lift|floor|replace|perturb|hull|halfspaces``.
"""

from typing import Any, ClassVar, Dict, List, Sequence

from ..convex import NOT_CONVEX, floor_body, lift_HA, perturb_bounded, replace_by_body, support_lift
from ..geometry import to_halfspaces, volume
from ..serialization import (
    cone_from_json,
    dc_pair_from_json,
    function_from_json,
    function_to_json,
    halfspaces_to_json,
    polyhedron_from_json,
    polyhedron_to_json,
    scalar_to_json,
)
from .base import LabTool


class BodyTool(LabTool):
    """Tool for moving between convex bodies in R^{n+1} and functions on R^n."""

    name: str = "body"
    description: str = """Lift bodies to support functions, take floors, and replace functions by bodies.
    Bodies are polyhedron JSON files {"dim", "vertices", "rays"}.
    """
    actions: ClassVar[Sequence[str]] = ("lift", "floor", "replace", "perturb", "hull", "halfspaces")

    def do_lift(self, inputs: List[Any], options: Dict[str, Any]) -> Dict:
        self.expect(inputs, 1, "K.json [cone.json]")
        body = polyhedron_from_json(inputs[0])
        if len(inputs) > 1:
            return {"function": function_to_json(lift_HA(body, cone_from_json(inputs[1], body.dim - 1)))}
        return {"function": function_to_json(support_lift(body))}

    def do_floor(self, inputs: List[Any], options: Dict[str, Any]) -> Dict:
        self.expect(inputs, 1, "K.json")
        return {"function": function_to_json(floor_body(polyhedron_from_json(inputs[0])))}

    def do_replace(self, inputs: List[Any], options: Dict[str, Any]) -> Dict:
        self.expect(inputs, 2, "f.json A.json")
        f, region = function_from_json(inputs[0]), polyhedron_from_json(inputs[1])
        return {"body": polyhedron_to_json(replace_by_body(f, region, self.option(options, "eps")))}

    def do_perturb(self, inputs: List[Any], options: Dict[str, Any]) -> Dict:
        self.expect(inputs, 2, "K.json phi.json")
        result = perturb_bounded(polyhedron_from_json(inputs[0]), dc_pair_from_json(inputs[1]))
        if result is NOT_CONVEX:
            return {"result": NOT_CONVEX.value}
        return {"function": function_to_json(result.function), "body": polyhedron_to_json(result.body)}

    def do_hull(self, inputs: List[Any], options: Dict[str, Any]) -> Dict:
        self.expect(inputs, 1, "P.json")
        polytope = polyhedron_from_json(inputs[0])
        payload = {"polyhedron": polyhedron_to_json(polytope)}
        if polytope.is_bounded:
            payload["volume"] = scalar_to_json(volume(polytope))
        return payload

    def do_halfspaces(self, inputs: List[Any], options: Dict[str, Any]) -> Dict:
        self.expect(inputs, 1, "P.json")
        return {"halfspaces": halfspaces_to_json(to_halfspaces(polyhedron_from_json(inputs[0])))}
