"""
ASCII Wavefront OBJ: ``v`` and ``f`` records only, 1-based indices.
"""

from pathlib import Path

import numpy as np

from cmcannuli import __version__
from cmcannuli.artifacts.prototype import ProvidesMeshFormat
from cmcannuli.models.exceptions import MeshException


class ObjMeshFormat(ProvidesMeshFormat):
    suffix = ".obj"

    def write(self, vertices: np.ndarray, faces: np.ndarray, path: Path) -> None:
        lines = [f"# cmcannuli {__version__}"]
        # repr gives the shortest string that reads back to the same double.
        lines.extend(f"v {x!r} {y!r} {z!r}" for x, y, z in vertices.astype(float).tolist())
        lines.extend(f"f {a} {b} {c}" for a, b, c in (faces + 1).tolist())

        Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")

    def read(self, path: Path) -> tuple[np.ndarray, np.ndarray]:
        vertices, faces = [], []

        for number, line in enumerate(Path(path).read_text().splitlines(), start=1):
            fields = line.split()

            if not fields or fields[0].startswith("#"):
                continue

            if fields[0] == "v":
                vertices.append([float(f) for f in fields[1:4]])
            elif fields[0] == "f":
                # Keep only the vertex index of v/vt/vn references.
                if len(fields) != 4:
                    raise MeshException(f"{path}:{number}: only triangles are supported")
                faces.append([int(f.split("/")[0]) - 1 for f in fields[1:]])

        if not vertices:
            raise MeshException(f"No vertices in {path}")

        return np.array(vertices, dtype=float), np.array(faces, dtype=np.int64).reshape(-1, 3)
