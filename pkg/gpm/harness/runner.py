"""Experiment execution runner"""

import logging
import multiprocessing
import os
import time
from collections import Counter
from typing import Any, Dict, List, Optional, Tuple

from ..core.base import ResultPacket
from ..core.config import Cell, ExperimentConfig, OptionsSection
from ..core.enums import ExperimentKind
from ..endpoints import create_result_endpoint
from ..generator.streams import derive_seed
from ..utils.logging import DEFAULT_LOG_DIR, ExperimentLogger
from .experiments import ExperimentFactory

RESULT_FORMAT_VERSION = 1

Task = Tuple[Cell, int, int]


def _run_task(args: Tuple[ExperimentKind, OptionsSection, Task]) -> Tuple[int, Optional[Dict[str, Any]], Optional[str]]:
    """Module-level worker; the pool pickles its arguments. Returns (cell, row, error)."""
    kind, options, (cell, replica, seed) = args
    # Errors travel back as strings, not exceptions
    try:
        experiment = ExperimentFactory.create(kind, options)
        return cell.index, experiment.run_replica(cell, replica, seed), None
    except Exception as e:
        return cell.index, None, f"replica {replica} (seed {seed}): {type(e).__name__}: {e}"


def _cell_label(cell: Cell) -> str:
    return f"cell {cell.index} (d={cell.d} m={cell.m} delta={cell.delta} p={cell.p} n={cell.n})"


class ExperimentRunner:
    """Runs every (cell, replica) task of an experiment and writes the sorted rows"""

    def __init__(self, log_dir: str = DEFAULT_LOG_DIR):
        self.log_dir = log_dir
        self.logger = logging.getLogger("gpm.harness.runner")

    def build_tasks(self, config: ExperimentConfig) -> Tuple[List[Cell], List[Task]]:
        """Cells of the grid and their seeded replica tasks; rejects unsupported cells"""
        experiment = ExperimentFactory.create(config.kind, config.options)
        cells = config.cells()

        # Fail before any graph is generated
        for cell in cells:
            try:
                experiment.validate_cell(cell)
            except ValueError as e:
                raise ValueError(f"{_cell_label(cell)}: {e}")

        # Seeds depend on (master seed, cell, replica) only, never on scheduling
        tasks = [
            (cell, replica, derive_seed(config.run.master_seed, cell.index, replica))
            for cell in cells
            for replica in range(config.run.replicas)
        ]
        return cells, tasks

    def collect_rows(
        self,
        config: ExperimentConfig,
        workers: Optional[int] = None,
        experiment_logger: Optional[ExperimentLogger] = None,
    ) -> List[Dict[str, Any]]:
        """Execute all tasks and return rows in canonical (cell, replica) order"""
        cells, tasks = self.build_tasks(config)

        # CLI value, then config, then CPU count; never more workers than tasks
        workers = max(1, min(workers or config.run.workers or os.cpu_count() or 1, len(tasks)))
        if experiment_logger:
            experiment_logger.log_experiment_start(config.kind.value, len(cells), config.run.replicas, workers)

        payloads = [(config.kind, config.options, task) for task in tasks]

        # Replicas still outstanding per cell, for the progress lines
        pending = Counter(cell.index for cell, _, _ in tasks)
        by_index = {cell.index: cell for cell in cells}
        started = time.perf_counter()
        rows: List[Dict[str, Any]] = []
        errors: Dict[int, str] = {}

        def completed(result: Tuple[int, Optional[Dict[str, Any]], Optional[str]]) -> None:
            index, row, error = result
            pending[index] -= 1
            # Report only the first failure of a cell
            if error is not None:
                if index not in errors and experiment_logger:
                    experiment_logger.log_cell_error(_cell_label(by_index[index]), error)
                errors.setdefault(index, error)
                return
            rows.append(row)
            if pending[index] == 0 and index not in errors and experiment_logger:
                experiment_logger.log_cell_complete(
                    _cell_label(by_index[index]), config.run.replicas, time.perf_counter() - started
                )

        # Serial path runs in this process
        if workers == 1:
            for payload in payloads:
                completed(_run_task(payload))
        else:
            with multiprocessing.Pool(workers) as pool:
                for result in pool.imap_unordered(_run_task, payloads):
                    completed(result)

        if errors:
            index = min(errors)
            raise RuntimeError(
                f"{len(errors)} cell(s) failed; first: {_cell_label(by_index[index])}: {errors[index]}"
            )
        # Completion order varies with the pool; the file order must not
        rows.sort(key=lambda row: (row["cell"], row["replica"]))
        self.logger.debug(f"Collected {len(rows)} rows in {time.perf_counter() - started:.2f}s")
        return rows

    def run_experiment(
        self,
        config: ExperimentConfig,
        workers: Optional[int] = None,
        output_path: Optional[str] = None,
        quiet: bool = False,
    ) -> List[Dict[str, Any]]:
        """Run the experiment, write the result file and return its rows"""
        experiment_logger = None if quiet else ExperimentLogger(config.experiment.name, log_dir=self.log_dir)
        path = output_path or config.output.path

        try:
            rows = self.collect_rows(config, workers, experiment_logger)
        except Exception as e:
            self.logger.error(f"Experiment {config.experiment.name} failed: {e}")
            if experiment_logger:
                experiment_logger.log_experiment_complete(0, path, success=False)
            raise

        # Metadata ends up in the result file header
        packet = ResultPacket.from_dict_list(
            rows,
            format_version=RESULT_FORMAT_VERSION,
            config_hash=config.config_hash(),
        )
        # Save results
        endpoint = create_result_endpoint(config.output.format, {"file_path": path})
        try:
            endpoint.load(packet)
        except RuntimeError:
            if experiment_logger:
                experiment_logger.log_experiment_complete(len(rows), path, success=False)
            raise

        if experiment_logger:
            experiment_logger.log_experiment_complete(len(rows), path, success=True)
        self.logger.info(f"Wrote {len(rows)} rows ({packet.size_mb:.2f} MB) to {path}")
        return rows


def run_experiment(config: ExperimentConfig, workers: Optional[int] = None, quiet: bool = True) -> List[Dict[str, Any]]:
    return ExperimentRunner().run_experiment(config, workers=workers, quiet=quiet)
