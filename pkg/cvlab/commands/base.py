"""
Base class for command families.

Each family is a pydantic tool with a name, a description and a ``run`` method
taking a query dict ``{"action": ..., "inputs": [...], "options": {...}}``.
"""

from typing import Any, ClassVar, Dict, List, Optional, Sequence

from pydantic import BaseModel

from ..errors import PreconditionError
from ..geometry.vectors import Point, to_point


class CommandInput(BaseModel):
    action: str
    inputs: List[Any] = []
    options: Dict[str, Any] = {}


class LabTool(BaseModel):
    """A family of subcommands dispatched to ``do_<action>`` methods."""

    name: str = "tool"
    description: str = ""
    actions: ClassVar[Sequence[str]] = ()

    def run(self, query: Dict) -> Dict:
        """
        Run one action of this family.

        Args:
            query: Dict containing:
                - action: str, one of ``actions``
                - inputs: List, parsed JSON documents in command-line order
                - options: Dict, command-line options

        Returns:
            Dict: JSON-ready result; ``"falsified": True`` marks a failed property
        """
        command = CommandInput.model_validate(query)
        if command.action not in self.actions:
            raise PreconditionError(f"Unknown action {self.name} {command.action}", code="usage")
        handler = getattr(self, f"do_{command.action}")
        return handler(command.inputs, command.options)

    @staticmethod
    def expect(inputs: List[Any], count: int, what: str) -> None:
        if len(inputs) < count:
            raise PreconditionError(f"Expected {count} input files: {what}", code="usage")

    @staticmethod
    def option(options: Dict[str, Any], key: str, default: Optional[Any] = None) -> Any:
        value = options.get(key)
        if value is None:
            if default is None:
                raise PreconditionError(f"Missing option --{key.replace('_', '-')}", code="usage")
            return default
        return value


def parse_point(text: str) -> Point:
    """Parse "1/2,3" into an exact point."""
    return to_point(part for part in text.split(",") if part.strip())


def parse_points(text: str) -> List[Point]:
    """Parse "0;1/2,1" into a list of points."""
    return [parse_point(chunk) for chunk in text.split(";") if chunk.strip()]
