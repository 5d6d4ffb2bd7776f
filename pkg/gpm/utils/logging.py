"""Logging configuration for GPM"""

import logging
import os
import sys
from datetime import datetime
from pathlib import Path
from typing import Optional

from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape

DEFAULT_LOG_DIR = ".gpm/logs"
FILE_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def setup_logging(
    level: str = "INFO",
    log_file: Optional[str] = None,
    log_dir: Optional[str] = None,
) -> None:
    """Rich console logging plus an optional plain file log"""
    numeric_level = getattr(logging, level.upper(), None)
    if not isinstance(numeric_level, int):
        raise ValueError(f"Unknown log level: {level}")

    if log_dir:
        Path(log_dir).mkdir(parents=True, exist_ok=True)
        if not log_file:
            log_file = f"{log_dir}/gpm_{datetime.now().strftime('%Y%m%d')}.log"

    handlers = [
        RichHandler(
            console=Console(stderr=True),
            show_time=True,
            show_path=False,
            rich_tracebacks=True,
            markup=False,
            show_level=False,
        )
    ]
    if log_file:
        file_handler = logging.FileHandler(log_file)
        file_handler.setFormatter(logging.Formatter(FILE_FORMAT))
        handlers.append(file_handler)

    logging.basicConfig(level=numeric_level, format="%(message)s", handlers=handlers, force=True)
    logging.getLogger("gpm").setLevel(numeric_level)


class ExperimentLogger:
    """dbt-style progress lines for an experiment run, mirrored to a file log"""

    def __init__(self, experiment_name: str, log_dir: str = DEFAULT_LOG_DIR, console: Optional[Console] = None):
        self.experiment_name = experiment_name
        self.logger = logging.getLogger(f"gpm.experiment.{experiment_name}")
        # file only; the console gets the progress lines below
        self.logger.propagate = False
        log_file = os.path.abspath(Path(log_dir) / f"{experiment_name}.log")
        if not any(getattr(h, "baseFilename", None) == log_file for h in self.logger.handlers):
            for handler in list(self.logger.handlers):
                self.logger.removeHandler(handler)
                handler.close()
            Path(log_dir).mkdir(parents=True, exist_ok=True)
            file_handler = logging.FileHandler(log_file)
            file_handler.setFormatter(logging.Formatter(FILE_FORMAT))
            self.logger.addHandler(file_handler)
            self.logger.setLevel(logging.INFO)

        self.console = console or Console(file=sys.stdout, highlight=False)
        self.total_cells = 0
        self.completed_cells = 0

    def log_experiment_start(self, kind: str, cells: int, replicas: int, workers: int) -> None:
        self.total_cells = cells
        self.completed_cells = 0
        self.console.print(
            f"Running {kind} experiment '{self.experiment_name}': "
            f"{cells} cells x {replicas} replicas on {workers} worker(s)"
        )
        self.console.print("")
        self.logger.info(f"Started {kind}: {cells} cells, {replicas} replicas, {workers} workers")

    def log_cell_complete(self, label: str, rows: int, seconds: float) -> None:
        self.completed_cells += 1
        self.console.print(
            f"{self.completed_cells:3d} of {self.total_cells:3d} {escape(label)} "
            f"[bold green]OK[/bold green] {rows:,} rows in {seconds:.2f}s"
        )
        self.logger.info(f"Cell {label}: {rows} rows in {seconds:.2f}s")

    def log_cell_error(self, label: str, error: str) -> None:
        self.completed_cells += 1
        self.console.print(f"{self.completed_cells:3d} of {self.total_cells:3d} {escape(label)} [bold red]ERROR[/bold red]")
        self.console.print(f"  {escape(error)}")
        self.logger.error(f"Cell {label} failed: {error}")

    def log_experiment_complete(self, rows: int, output_path: str, success: bool) -> None:
        if success:
            self.console.print(f"\n[bold green]Completed successfully[/bold green]: {rows:,} rows written to {escape(output_path)}")
        else:
            self.console.print("\n[bold red]Completed with errors[/bold red]")
        self.logger.info(f"Finished: success={success}, rows={rows}, output={output_path}")
