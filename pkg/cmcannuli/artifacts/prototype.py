"""
Prototype for mesh file formats
"""

from pathlib import Path
from typing import Protocol

import numpy as np


class ProvidesMeshFormat(Protocol):
    suffix: str

    def write(self, vertices: np.ndarray, faces: np.ndarray, path: Path) -> None:
        """
        Write a triangle mesh. Vertices are (V, 3) floats and faces (F, 3)
        zero-based indices; output is deterministic for equal input.
        """
        ...

    def read(self, path: Path) -> tuple[np.ndarray, np.ndarray]:
        """
        Read a triangle mesh back as (vertices, zero-based faces).
        """
        ...
