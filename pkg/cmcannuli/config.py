"""
Configuration for cmcannuli.
"""

from typing import Literal

from pydantic_settings import BaseSettings, SettingsConfigDict


def get_mesh_format(format: str):
    """
    Get a mesh format implementation by name.
    """
    if format == "obj":
        from cmcannuli.artifacts.obj import ObjMeshFormat

        return ObjMeshFormat()
    elif format == "ply":
        from cmcannuli.artifacts.ply import PlyMeshFormat

        return PlyMeshFormat()
    else:
        raise ValueError(f"Unknown mesh format: {format}")


class Settings(BaseSettings):
    tol_ode: float = 1e-11
    tol_root: float = 1e-12
    tol_quad: float = 1e-13
    tol_geom: float = 1e-6
    tol_symmetry: float = 1e-5
    tol_discrete: float = 0.02
    tol_sinh_gordon: float = 1e-5
    tol_turning: float = 1e-4

    u_samples: int = 257
    v_samples_per_n: int = 512
    orthonormalize_every: int = 8

    u_window_factor: float = 1.2
    beta_scan_points: int = 24
    max_halvings: int = 3

    symmetry_seed: int = 1729

    mesh_format: Literal["obj", "ply"] = "obj"

    model_config = SettingsConfigDict(env_prefix="CMCAF_")

    def v_samples(self, n: int) -> int:
        return self.v_samples_per_n * n

    @property
    def mesh_writer(self):
        return get_mesh_format(self.mesh_format)


settings = Settings()
