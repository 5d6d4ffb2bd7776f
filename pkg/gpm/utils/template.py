"""Template rendering of configuration values using Jinja2"""

import os
from datetime import date, datetime
from typing import Any, Dict, Optional

from jinja2 import BaseLoader, Environment, StrictUndefined


class TemplateRenderer:
    """Jinja2 renderer with var(), env_var(), today() and now()"""

    def __init__(self):
        self.env = Environment(loader=BaseLoader(), undefined=StrictUndefined)
        self.current_variables: Dict[str, Any] = {}
        self._add_custom_functions()

    def _add_custom_functions(self) -> None:
        def var(key: str, default: Any = None) -> Any:
            """Variable from the config's `vars` section (or --var overrides)"""
            return self.current_variables.get(key, default)

        def env_var(key: str, default: str = "") -> str:
            return os.getenv(key, default)

        def today() -> str:
            return date.today().isoformat()

        def now() -> str:
            return datetime.now().isoformat()

        self.env.globals.update({
            "var": var,
            "env_var": env_var,
            "today": today,
            "now": now,
        })

    def render(self, template: str, variables: Optional[Dict[str, Any]] = None) -> str:
        self.current_variables = variables or {}
        return self.env.from_string(template).render(**(variables or {}))

    def render_config(self, config: Any, variables: Optional[Dict[str, Any]] = None) -> Any:
        """Recursively render every templated string in a nested config"""

        def render_value(value: Any) -> Any:
            if isinstance(value, str):
                return self.render(value, variables) if "{{" in value or "{%" in value else value
            if isinstance(value, dict):
                return {k: render_value(v) for k, v in value.items()}
            if isinstance(value, list):
                return [render_value(item) for item in value]
            return value

        return render_value(config)
