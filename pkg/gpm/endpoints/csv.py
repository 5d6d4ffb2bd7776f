"""CSV result endpoint"""

from pathlib import Path

import pyarrow.csv as pa_csv

from ..core.base import ResultEndpoint, ResultPacket


class CSVEndpoint(ResultEndpoint):
    """
    CSV result file, preceded by one comment line with the packet metadata:

        # format_version=1 config_hash=<sha256>

    Required config:
        file_path (str): Path to the CSV file
    """

    def load(self, packet: ResultPacket) -> bool:
        file_path = self.get_config("file_path")
        if not file_path:
            raise ValueError("file_path is required for CSV endpoint")

        # Metadata goes into a single leading comment line
        comment = " ".join(f"{key}={value}" for key, value in packet.metadata.items())
        try:
            # Create directory if it doesn't exist
            Path(file_path).parent.mkdir(parents=True, exist_ok=True)

            # Replace any existing file
            with open(file_path, "wb") as handle:
                if comment:
                    handle.write(f"# {comment}\n".encode("utf-8"))
                # pyarrow writes the header row and quotes fields per RFC 4180
                if packet.row_count:
                    pa_csv.write_csv(packet.data, handle)
            return True
        except Exception as e:
            raise RuntimeError(f"Failed to save CSV file {file_path}: {e}")
