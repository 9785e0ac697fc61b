import json
import logging
import os
from typing import Any, Dict, List, Optional, Type

from pydantic import BaseModel, Field, TypeAdapter, ValidationError

from ..utils.types import VerifyPayload

logger = logging.getLogger(__name__)


def _color_default() -> bool:
    return "NO_COLOR" not in os.environ


class JsonConfig(BaseModel):
    """Configuration for JSON output."""
    indent: Optional[int] = 2
    ensure_ascii: bool = False
    sort_keys: bool = True


class PrettyConfig(BaseModel):
    """Configuration for human-readable output."""
    color: bool = Field(default_factory=_color_default)
    width: int = 80
    indent: int = 2
    pass_mark: str = "PASS"
    fail_mark: str = "FAIL"


class RenderConfig(BaseModel):
    """General configuration for rendering."""
    pretty: bool = False
    json_output: JsonConfig = Field(default_factory=JsonConfig)
    text: PrettyConfig = Field(default_factory=PrettyConfig)


class RenderAgent:
    """Agent for validating command payloads and turning them into text."""

    def __init__(self, config: Optional[RenderConfig] = None):
        """
        Initializes the agent with rendering configuration.

        Args:
            config: Rendering configuration. If None, default values are used
        """
        self.config = config or RenderConfig()
        logger.debug("RenderAgent successfully initialized")

    def render(self, payload: Dict[str, Any], schema: Type[Any]) -> str:
        """
        Validates a payload against its schema and renders it.

        Args:
            payload: Command output built from domain records
            schema: TypedDict describing the payload

        Returns:
            str: One JSON document, or the pretty text with --pretty

        Raises:
            ValueError: If the payload does not match its schema
        """
        try:
            TypeAdapter(schema).validate_python(payload, strict=True)
        except ValidationError as e:
            logger.error(f"Payload does not match {schema.__name__}: {str(e)}")
            raise ValueError(f"Payload does not match {schema.__name__}: {str(e)}")

        if not self.config.pretty:
            return json.dumps(
                payload,
                indent=self.config.json_output.indent,
                ensure_ascii=self.config.json_output.ensure_ascii,
                sort_keys=self.config.json_output.sort_keys,
            )
        if self._is_verify_data(payload):
            return self._render_scenarios(payload)  # type: ignore[arg-type]
        return "\n".join(self._render_tree(payload, 0))

    def _is_verify_data(self, payload: Dict[str, Any]) -> bool:
        """Checks if the payload is a scenario report."""
        return isinstance(payload.get("scenarios"), list) and "exit_code" in payload

    def _style(self, text: str, code: str) -> str:
        if not self.config.text.color:
            return text
        return f"\033[{code}m{text}\033[0m"

    def _render_tree(self, value: Any, depth: int) -> List[str]:
        """Nested key: value lines; short lists stay on one line."""
        pad = " " * (self.config.text.indent * depth)
        lines = []
        if isinstance(value, dict):
            for key, item in value.items():
                label = self._style(str(key), "1")
                if isinstance(item, (dict, list)) and not self._is_flat_list(item):
                    lines.append(f"{pad}{label}:")
                    lines.extend(self._render_tree(item, depth + 1))
                else:
                    lines.append(f"{pad}{label}: {self._scalar(item)}")
        elif isinstance(value, list):
            if not value:
                lines.append(f"{pad}(none)")
            for i, item in enumerate(value, 1):
                if isinstance(item, (dict, list)) and not self._is_flat_list(item):
                    lines.append(f"{pad}{i}.")
                    lines.extend(self._render_tree(item, depth + 1))
                else:
                    lines.append(f"{pad}{i}. {self._scalar(item)}")
        else:
            lines.append(f"{pad}{self._scalar(value)}")
        return lines

    def _is_flat_list(self, value: Any) -> bool:
        return isinstance(value, list) and all(not isinstance(x, (dict, list)) for x in value)

    def _scalar(self, value: Any) -> str:
        if isinstance(value, list):
            return "[" + ", ".join(self._scalar(x) for x in value) + "]"
        if value is None:
            return "-"
        if isinstance(value, bool):
            return "yes" if value else "no"
        return str(value)

    def _render_scenarios(self, payload: VerifyPayload) -> str:
        """Renders the scenario suite as one status line per scenario."""
        width = self.config.text.width
        lines = ["=" * width, "VERIFY-PAPER", "=" * width]
        for scenario in payload["scenarios"]:
            if scenario["status"] == "pass":
                mark = self._style(self.config.text.pass_mark, "32")
            else:
                mark = self._style(self.config.text.fail_mark, "31")
            lines.append(f"[{mark}] criterion {scenario['criterion']}: {scenario['name']}")
            if scenario["status"] != "pass":
                for key, expected in scenario["expected"].items():
                    computed = scenario["computed"].get(key)
                    if computed != expected:
                        lines.append(f"    {key}: expected {expected}, computed {computed}")
                if scenario["error"]:
                    lines.append(f"    error: {scenario['error']}")
        lines.append("-" * width)
        passed = sum(1 for s in payload["scenarios"] if s["status"] == "pass")
        lines.append(f"{passed}/{len(payload['scenarios'])} scenarios passed, exit code {payload['exit_code']}")
        return "\n".join(lines)
