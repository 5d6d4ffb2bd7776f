"""Logging and templating helpers"""

from .logging import ExperimentLogger, setup_logging
from .template import TemplateRenderer

__all__ = ["ExperimentLogger", "setup_logging", "TemplateRenderer"]
