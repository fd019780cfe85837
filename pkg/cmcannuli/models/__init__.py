from .dynamics import STPath, STState, YZState, YZTrajectory
from .exceptions import (
    BracketException,
    CMCAnnuliException,
    ConsistencyException,
    DomainException,
    FrameDriftException,
    IntegrationException,
    MeshException,
    NumericException,
    QuadratureException,
    SearchWindowException,
)
from .family import AnnulusModel, FamilyBranch, FamilyPoint
from .parameters import CubicData, DerivedConstants, ParamPoint, QuarticData, RegionMembership
from .periods import PeriodData, STPeriods
from .report import AnnulusReport, FamilyReport, SweepRow, Verdict
from .surface import (
    FrameCurve,
    FramePoint,
    OmegaField,
    ProfileSamples,
    SphereData,
    SurfacePatch,
)

__all__ = [
    "AnnulusModel",
    "AnnulusReport",
    "BracketException",
    "CMCAnnuliException",
    "ConsistencyException",
    "CubicData",
    "DerivedConstants",
    "DomainException",
    "FamilyBranch",
    "FamilyPoint",
    "FamilyReport",
    "FrameCurve",
    "FrameDriftException",
    "FramePoint",
    "IntegrationException",
    "MeshException",
    "NumericException",
    "OmegaField",
    "ParamPoint",
    "PeriodData",
    "ProfileSamples",
    "QuadratureException",
    "QuarticData",
    "RegionMembership",
    "STPath",
    "STPeriods",
    "STState",
    "SearchWindowException",
    "SphereData",
    "SurfacePatch",
    "SweepRow",
    "Verdict",
    "YZState",
    "YZTrajectory",
]
