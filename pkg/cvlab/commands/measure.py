"""
Measure subcommands: ``measure subdiff|theta0|integrate``.
"""

from typing import Any, ClassVar, Dict, List, Sequence

from ..hessian import integrate_against_theta0, subdifferential, theta0
from ..serialization import (
    density_from_json,
    function_from_json,
    polyhedron_from_json,
    polyhedron_to_json,
    theta0_to_json,
    vector_to_json,
)
from .base import LabTool, parse_point


class MeasureTool(LabTool):
    """Tool for subdifferentials and the order-zero Hessian measure."""

    name: str = "measure"
    description: str = """Subdifferentials, Θ0 atoms over a region and integrals of densities against Θ0."""
    actions: ClassVar[Sequence[str]] = ("subdiff", "theta0", "integrate")

    def do_subdiff(self, inputs: List[Any], options: Dict[str, Any]) -> Dict:
        self.expect(inputs, 1, "f.json")
        f = function_from_json(inputs[0])
        return {"subdifferential": polyhedron_to_json(subdifferential(f, parse_point(self.option(options, "point"))))}

    def do_theta0(self, inputs: List[Any], options: Dict[str, Any]) -> Dict:
        self.expect(inputs, 2, "f.json region.json")
        return theta0_to_json(theta0(function_from_json(inputs[0]), polyhedron_from_json(inputs[1])))

    def do_integrate(self, inputs: List[Any], options: Dict[str, Any]) -> Dict:
        self.expect(inputs, 3, "f.json phi.json region.json")
        f, phi, region = function_from_json(inputs[0]), density_from_json(inputs[1]), polyhedron_from_json(inputs[2])
        return {"value": vector_to_json(integrate_against_theta0(f, phi, region))}
