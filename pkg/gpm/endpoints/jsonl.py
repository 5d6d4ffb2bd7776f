"""Line-delimited JSON result endpoint"""

import json
from pathlib import Path

from ..core.base import ResultEndpoint, ResultPacket


class JSONLEndpoint(ResultEndpoint):
    """
    One JSON object per row, preceded by a metadata object
    ({"format_version": 1, "config_hash": ...}).

    Required config:
        file_path (str): Path to the output file
    """

    def load(self, packet: ResultPacket) -> bool:
        file_path = self.get_config("file_path")
        if not file_path:
            raise ValueError("file_path is required for JSONL endpoint")

        try:
            Path(file_path).parent.mkdir(parents=True, exist_ok=True)
            with open(file_path, "w", encoding="utf-8", newline="\n") as handle:
                handle.write(json.dumps(packet.metadata, separators=(",", ":")) + "\n")
                for row in packet.to_dict_list():
                    handle.write(json.dumps(row, separators=(",", ":")) + "\n")
            return True
        except Exception as e:
            raise RuntimeError(f"Failed to save JSONL file {file_path}: {e}")
