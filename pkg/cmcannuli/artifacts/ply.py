"""
Binary little-endian PLY with double-precision vertices.
"""

from pathlib import Path

import numpy as np

from cmcannuli import __version__
from cmcannuli.artifacts.prototype import ProvidesMeshFormat
from cmcannuli.models.exceptions import MeshException

VERTEX = np.dtype([("x", "<f8"), ("y", "<f8"), ("z", "<f8")])
FACE = np.dtype([("count", "u1"), ("indices", "<i4", (3,))])


class PlyMeshFormat(ProvidesMeshFormat):
    suffix = ".ply"

    def header(self, vertex_count: int, face_count: int) -> bytes:
        return (
            "ply\n"
            "format binary_little_endian 1.0\n"
            f"comment cmcannuli {__version__}\n"
            f"element vertex {vertex_count}\n"
            "property double x\n"
            "property double y\n"
            "property double z\n"
            f"element face {face_count}\n"
            "property list uchar int vertex_indices\n"
            "end_header\n"
        ).encode("ascii")

    def write(self, vertices: np.ndarray, faces: np.ndarray, path: Path) -> None:
        vertex_data = np.empty(len(vertices), dtype=VERTEX)
        vertex_data["x"], vertex_data["y"], vertex_data["z"] = vertices.astype(float).T

        face_data = np.empty(len(faces), dtype=FACE)
        face_data["count"] = 3
        face_data["indices"] = faces

        with open(path, "wb") as handle:
            handle.write(self.header(len(vertices), len(faces)))
            handle.write(vertex_data.tobytes())
            handle.write(face_data.tobytes())

    def read(self, path: Path) -> tuple[np.ndarray, np.ndarray]:
        content = Path(path).read_bytes()
        end = content.find(b"end_header\n")

        if not content.startswith(b"ply\n") or end < 0:
            raise MeshException(f"{path} is not a PLY file")

        counts = {}
        for line in content[:end].decode("ascii").splitlines():
            fields = line.split()
            if fields[:1] == ["format"] and fields[1] != "binary_little_endian":
                raise MeshException(f"Unsupported PLY format {fields[1]} in {path}")
            if fields[:1] == ["element"]:
                counts[fields[1]] = int(fields[2])

        body = end + len(b"end_header\n")
        vertex_count, face_count = counts.get("vertex", 0), counts.get("face", 0)

        vertex_data = np.frombuffer(content, dtype=VERTEX, count=vertex_count, offset=body)
        face_data = np.frombuffer(
            content,
            dtype=FACE,
            count=face_count,
            offset=body + vertex_count * VERTEX.itemsize,
        )

        if np.any(face_data["count"] != 3):
            raise MeshException(f"Only triangles are supported, in {path}")

        vertices = np.stack([vertex_data["x"], vertex_data["y"], vertex_data["z"]], axis=-1)

        return vertices, face_data["indices"].astype(np.int64)
