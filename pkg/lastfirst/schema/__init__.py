from lastfirst.schema.models import (
    CoverKind,
    CvMode,
    Direction,
    GeneratorName,
    Procedure,
    RankVariant,
    SeedRule,
    SphereMode,
    TieRule,
    WeightKind,
)
from lastfirst.schema.schema import (
    BumpyCircleParams,
    CvPlan,
    Extension,
    LandmarkReport,
    LandmarkResult,
    LandmarkStep,
    NecklaceParams,
    RunManifest,
    SamplerConfig,
    SphereSampleParams,
    WeightingScheme,
)

__all__ = [
    "BumpyCircleParams",
    "CoverKind",
    "CvMode",
    "CvPlan",
    "Direction",
    "Extension",
    "GeneratorName",
    "LandmarkReport",
    "LandmarkResult",
    "LandmarkStep",
    "NecklaceParams",
    "Procedure",
    "RankVariant",
    "RunManifest",
    "SamplerConfig",
    "SeedRule",
    "SphereMode",
    "SphereSampleParams",
    "TieRule",
    "WeightKind",
    "WeightingScheme",
]
