"""Readers for experiment result files written by the harness"""

import json
from pathlib import Path
from typing import Any, Dict

import pyarrow.csv as pa_csv

from ..core.base import ResultPacket, ResultSource


def _parse_metadata(comment: str) -> Dict[str, Any]:
    metadata: Dict[str, Any] = {}
    for item in comment.lstrip("#").split():
        key, _, value = item.partition("=")
        metadata[key] = int(value) if value.isdigit() else value
    return metadata


class CSVResultSource(ResultSource):
    """
    CSV result file with an optional leading `# key=value ...` metadata line

    Required config:
        file_path (str): Path to the CSV file
    """

    def extract(self) -> ResultPacket:
        file_path = self.get_config("file_path")
        if not file_path:
            raise ValueError("file_path is required for CSV result source")
        path = Path(file_path)
        if not path.exists():
            raise FileNotFoundError(f"Result file not found: {path}")

        with open(path, "r", encoding="utf-8") as handle:
            first = handle.readline()
        metadata = _parse_metadata(first) if first.startswith("#") else {}
        skip = 1 if first.startswith("#") else 0
        table = pa_csv.read_csv(str(path), read_options=pa_csv.ReadOptions(skip_rows=skip))
        return ResultPacket(data=table, metadata=metadata)


class JSONLResultSource(ResultSource):
    """
    Line-delimited JSON result file; the first object holds the metadata

    Required config:
        file_path (str): Path to the JSONL file
    """

    def extract(self) -> ResultPacket:
        file_path = self.get_config("file_path")
        if not file_path:
            raise ValueError("file_path is required for JSONL result source")
        path = Path(file_path)
        if not path.exists():
            raise FileNotFoundError(f"Result file not found: {path}")

        with open(path, "r", encoding="utf-8") as handle:
            records = [json.loads(line) for line in handle if line.strip()]
        if not records:
            return ResultPacket.from_dict_list([])
        metadata, rows = records[0], records[1:]
        return ResultPacket.from_dict_list(rows, **metadata)


def read_results(file_path: str) -> ResultPacket:
    """Read a result file, choosing the reader by extension"""
    source = JSONLResultSource if Path(file_path).suffix.lower() in (".jsonl", ".json") else CSVResultSource
    return source({"file_path": file_path}).extract()
