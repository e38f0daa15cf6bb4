"""
Dual subcommands: ``dual conj|infconv|epimult|dist|dualize|recession``.
"""

from typing import Any, ClassVar, Dict, List, Sequence

from ..convex import conjugate, recession_function
from ..duality import epi_distance, epi_mult, inf_conv
from ..serialization import (
    function_from_json,
    function_to_json,
    scalar_to_json,
    valuation_from_json,
    valuation_to_json,
)
from ..valuations import dualize_valuation
from .base import LabTool


class DualTool(LabTool):
    """Tool for the epi-calculus and for dual valuations."""

    name: str = "dual"
    description: str = """Infimal convolution, epi-multiplication, truncated epigraph distance and dual valuations."""
    actions: ClassVar[Sequence[str]] = ("conj", "infconv", "epimult", "dist", "dualize", "recession")

    def do_conj(self, inputs: List[Any], options: Dict[str, Any]) -> Dict:
        self.expect(inputs, 1, "f.json")
        return {"function": function_to_json(conjugate(function_from_json(inputs[0])))}

    def do_infconv(self, inputs: List[Any], options: Dict[str, Any]) -> Dict:
        self.expect(inputs, 2, "f.json g.json")
        return {"function": function_to_json(inf_conv(function_from_json(inputs[0]), function_from_json(inputs[1])))}

    def do_epimult(self, inputs: List[Any], options: Dict[str, Any]) -> Dict:
        self.expect(inputs, 1, "f.json")
        f = function_from_json(inputs[0])
        return {"function": function_to_json(epi_mult(f, self.option(options, "factor")))}

    def do_dist(self, inputs: List[Any], options: Dict[str, Any]) -> Dict:
        self.expect(inputs, 2, "f.json g.json")
        f, g = function_from_json(inputs[0]), function_from_json(inputs[1])
        distance = epi_distance(f, g, self.option(options, "rho"))
        return {"distance": scalar_to_json(distance), "float": True}

    def do_dualize(self, inputs: List[Any], options: Dict[str, Any]) -> Dict:
        self.expect(inputs, 1, "Z.json")
        return {"valuation": valuation_to_json(dualize_valuation(valuation_from_json(inputs[0])))}

    def do_recession(self, inputs: List[Any], options: Dict[str, Any]) -> Dict:
        self.expect(inputs, 1, "f.json")
        return {"function": function_to_json(recession_function(function_from_json(inputs[0])))}
