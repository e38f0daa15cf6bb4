"""
Function subcommands: ``fn eval|max|min|add|scale|conj|translate|equal``.
"""

from typing import Any, ClassVar, Dict, List, Sequence

from ..convex import (
    NOT_CONVEX,
    add,
    conjugate,
    epi_translate,
    evaluate,
    functions_equal,
    pointwise_max,
    pointwise_min_checked,
    scale,
)
from ..serialization import function_from_json, function_to_json, scalar_to_json
from .base import LabTool, parse_point


class FunctionTool(LabTool):
    """Tool for evaluating and combining piecewise-linear convex functions."""

    name: str = "fn"
    description: str = """Evaluate, combine and conjugate PL convex functions.
    Inputs are function JSON files {"n", "pieces": [{"y", "c"}], "domain"}.
    """
    actions: ClassVar[Sequence[str]] = ("eval", "max", "min", "add", "scale", "conj", "translate", "equal")

    def _two(self, inputs: List[Any]):
        self.expect(inputs, 2, "f.json g.json")
        return function_from_json(inputs[0]), function_from_json(inputs[1])

    def do_eval(self, inputs: List[Any], options: Dict[str, Any]) -> Dict:
        self.expect(inputs, 1, "f.json")
        f = function_from_json(inputs[0])
        return {"value": scalar_to_json(evaluate(f, parse_point(self.option(options, "point"))))}

    def do_max(self, inputs: List[Any], options: Dict[str, Any]) -> Dict:
        f, g = self._two(inputs)
        return {"function": function_to_json(pointwise_max(f, g))}

    def do_min(self, inputs: List[Any], options: Dict[str, Any]) -> Dict:
        f, g = self._two(inputs)
        result = pointwise_min_checked(f, g)
        if result is NOT_CONVEX:
            return {"result": NOT_CONVEX.value}
        return {"function": function_to_json(result)}

    def do_add(self, inputs: List[Any], options: Dict[str, Any]) -> Dict:
        f, g = self._two(inputs)
        return {"function": function_to_json(add(f, g))}

    def do_scale(self, inputs: List[Any], options: Dict[str, Any]) -> Dict:
        self.expect(inputs, 1, "f.json")
        f = function_from_json(inputs[0])
        return {"function": function_to_json(scale(f, self.option(options, "factor")))}

    def do_conj(self, inputs: List[Any], options: Dict[str, Any]) -> Dict:
        self.expect(inputs, 1, "f.json")
        return {"function": function_to_json(conjugate(function_from_json(inputs[0])))}

    def do_translate(self, inputs: List[Any], options: Dict[str, Any]) -> Dict:
        self.expect(inputs, 1, "f.json")
        f = function_from_json(inputs[0])
        return {"function": function_to_json(epi_translate(f, parse_point(self.option(options, "point"))))}

    def do_equal(self, inputs: List[Any], options: Dict[str, Any]) -> Dict:
        f, g = self._two(inputs)
        return {"equal": functions_equal(f, g)}
