"""
Suite subcommand: ``suite run <name>``.
"""

from typing import Any, ClassVar, Dict, List, Sequence

from ..errors import PreconditionError
from ..suites import SUITES, run_suite
from .base import LabTool


class SuiteTool(LabTool):
    """Tool for running the named acceptance suites."""

    name: str = "suite"
    description: str = f"""Run a named acceptance suite: {", ".join(SUITES)} or all."""
    actions: ClassVar[Sequence[str]] = ("run", "list")

    def do_run(self, inputs: List[Any], options: Dict[str, Any]) -> Dict:
        name = options.get("name")
        if not name:
            raise PreconditionError("suite run needs a suite name", code="usage")
        trials = options.get("trials")
        return run_suite(name, int(trials) if trials is not None else None)

    def do_list(self, inputs: List[Any], options: Dict[str, Any]) -> Dict:
        return {"suites": list(SUITES) + ["all"]}
