"""Base classes for graph readers and result writers"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from datetime import datetime
from typing import Any, Dict, List, Optional, Tuple

import pyarrow as pa

from .records import GenerationTrace, GraphRecord


@dataclass
class ResultPacket:
    """Experiment rows as an Arrow table plus provenance metadata"""

    data: pa.Table
    metadata: Dict[str, Any] = field(default_factory=dict)
    timestamp: datetime = field(default_factory=datetime.now)

    @property
    def row_count(self) -> int:
        return len(self.data) if self.data is not None else 0

    @property
    def column_names(self) -> List[str]:
        return self.data.column_names if self.data is not None else []

    @property
    def size_mb(self) -> float:
        if self.data is None:
            return 0.0
        return self.data.nbytes / (1024 * 1024)

    def to_dict_list(self) -> List[Dict[str, Any]]:
        return self.data.to_pylist() if self.data is not None else []

    @classmethod
    def from_dict_list(cls, rows: List[Dict[str, Any]], **metadata: Any) -> "ResultPacket":
        """Build from row dicts; the first row fixes the column order"""
        if not rows:
            return cls(data=pa.table({}), metadata=metadata)
        columns = list(rows[0].keys())
        for row in rows[1:]:
            for key in row:
                if key not in columns:
                    columns.append(key)
        table = pa.table({name: [row.get(name) for row in rows] for name in columns})
        return cls(data=table, metadata=metadata)


class GraphSource(ABC):
    """Base class for graph readers"""

    def __init__(self, config: Dict[str, Any]):
        self.config = config

    @abstractmethod
    def extract(self) -> Tuple[GraphRecord, Optional[GenerationTrace]]:
        """Read a graph and, when present, its generation trace"""
        pass

    def get_config(self, key: str, default: Any = None) -> Any:
        return self.config.get(key, default)


class ResultSource(ABC):
    """Base class for experiment result readers"""

    def __init__(self, config: Dict[str, Any]):
        self.config = config

    @abstractmethod
    def extract(self) -> ResultPacket:
        """Read result rows and their metadata"""
        pass

    def get_config(self, key: str, default: Any = None) -> Any:
        return self.config.get(key, default)


class GraphEndpoint(ABC):
    """Base class for graph writers"""

    def __init__(self, config: Dict[str, Any]):
        self.config = config

    @abstractmethod
    def load(self, graph: GraphRecord, trace: Optional[GenerationTrace] = None) -> bool:
        """Write a graph and optionally its trace"""
        pass

    def get_config(self, key: str, default: Any = None) -> Any:
        return self.config.get(key, default)


class ResultEndpoint(ABC):
    """Base class for experiment result writers"""

    def __init__(self, config: Dict[str, Any]):
        self.config = config

    @abstractmethod
    def load(self, packet: ResultPacket) -> bool:
        """Write all rows of the packet"""
        pass

    def get_config(self, key: str, default: Any = None) -> Any:
        return self.config.get(key, default)
