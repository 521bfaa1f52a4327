import math
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, model_validator

from lastfirst.schema.models import (
    CoverKind,
    CvMode,
    Procedure,
    RankVariant,
    SeedRule,
    SphereMode,
    TieRule,
    WeightKind,
)


class SamplerConfig(BaseModel):
    """Parameters of one landmark sampling run."""

    model_config = ConfigDict(frozen=True)

    procedure: Procedure = Field(
        description="Landmark procedure.",
        default=Procedure.MAXMIN,
        examples=[Procedure.LASTFIRST],
    )
    num_landmarks: int | None = Field(
        description="Number of landmarks n.",
        default=None,
        ge=1,
        examples=[12],
    )
    radius: float | None = Field(
        description="Ball radius the maxmin cover must reach.",
        default=None,
        ge=0,
    )
    cardinality: int | None = Field(
        description="Rank bound the lastfirst neighborhood cover must reach.",
        default=None,
        ge=0,
    )
    seed_rule: SeedRule = Field(
        description="How the first landmark is chosen.",
        default=SeedRule.FIRST_INDEX,
    )
    tie_rule: TieRule = Field(
        description="Selection procedure among tied candidates.",
        default=TieRule.FIRST_INDEX,
    )
    rng_seed: int = Field(
        description="Seed for the RANDOM seed and tie rules and the random procedure.",
        default=0,
    )
    rank_variant: RankVariant = Field(
        description="Tie handling of relative ranks (lastfirst).",
        default=RankVariant.CHECK,
    )

    @model_validator(mode="after")
    def check_stopping_parameters(self) -> "SamplerConfig":
        match self.procedure:
            case Procedure.MAXMIN:
                if self.num_landmarks is None and self.radius is None:
                    raise ValueError("maxmin needs num_landmarks or radius")
            case Procedure.LASTFIRST:
                if self.num_landmarks is None and self.cardinality is None:
                    raise ValueError("lastfirst needs num_landmarks or cardinality")
            case Procedure.RANDOM:
                if self.num_landmarks is None:
                    raise ValueError("random sampling needs num_landmarks")
        return self


class LandmarkStep(BaseModel):
    model_config = ConfigDict(frozen=True)

    landmark: int
    cover_param: int | float = Field(
        description="Covering radius (maxmin, random) or covering cardinality (lastfirst) "
                    "of the prefix ending at this landmark.",
    )


class LandmarkResult(BaseModel):
    """Ordered landmarks with the cover parameter of each prefix."""

    model_config = ConfigDict(frozen=True)

    procedure: Procedure
    space_size: int
    landmarks: list[int]
    per_step: list[LandmarkStep]
    final_radius: float | None = None
    final_cardinality: int | None = None
    rank_variant: RankVariant = RankVariant.CHECK

    def prefix(self, m: int) -> "LandmarkResult":
        """The result the same run would have reported after ``m`` landmarks."""
        steps = self.per_step[:m]
        last = steps[-1].cover_param
        is_rank = self.procedure == Procedure.LASTFIRST
        return LandmarkResult(
            procedure=self.procedure,
            space_size=self.space_size,
            landmarks=self.landmarks[:m],
            per_step=steps,
            final_radius=None if is_rank else last,
            final_cardinality=int(last) if is_rank else None,
            rank_variant=self.rank_variant,
        )


class Extension(BaseModel):
    mult: float = Field(default=0.0, ge=0)
    add: float = Field(default=0.0, ge=0)


class LandmarkReport(BaseModel):
    """JSON document written by the ``landmarks`` command."""

    procedure: Procedure
    seed_rule: SeedRule
    tie_rule: TieRule
    rng_seed: int
    rank_variant: RankVariant
    cover_kind: CoverKind
    landmarks: list[int]
    per_step: list[LandmarkStep]
    ext: Extension
    sets: list[list[int]]


class WeightingScheme(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: WeightKind = WeightKind.INVERSE_DISTANCE
    bandwidth: float | None = Field(
        description="Gaussian bandwidth; the median landmark distance when unset.",
        default=None,
        gt=0,
    )


class CvPlan(BaseModel):
    model_config = ConfigDict(frozen=True)

    mode: CvMode = CvMode.NESTED
    outer_folds: int = Field(default=6, ge=2)
    inner_folds: int = Field(default=6, ge=2)
    parts: int = Field(
        description="Random parts each evaluation period is split into (temporal).",
        default=6,
        ge=2,
    )
    window_keys: list[str] | None = Field(
        description="Ordered period labels (temporal); sorted labels when unset.",
        default=None,
    )
    rng_seed: int = 0

    @model_validator(mode="after")
    def check_windows(self) -> "CvPlan":
        if self.window_keys is not None and len(set(self.window_keys)) != len(self.window_keys):
            raise ValueError("window_keys must be distinct")
        return self


class BumpyCircleParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int = Field(default=60, ge=1)
    w0: float = Field(description="Weight of the uniform component.", default=0.05)
    mu2: float = Field(description="Angular offset of the second Gaussian.", default=math.pi)
    sigma: float = Field(description="Common Gaussian sd (radians).", default=math.pi / 6)
    ratio: float = Field(description="w1 / w2.", default=10.0)
    rng_seed: int = 0

    @property
    def w1(self) -> float:
        return (1.0 - self.w0) * self.ratio / (1.0 + self.ratio)

    @property
    def w2(self) -> float:
        return (1.0 - self.w0) / (1.0 + self.ratio)


class NecklaceParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    n_string: int = Field(default=60, ge=0)
    n_beads: int = Field(description="Points per bead.", default=90, ge=0)
    bead_count: int = 6
    string_radius: float = 1.0
    bead_radius: float = 0.15
    rng_seed: int = 0


class SphereSampleParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int = Field(default=540, ge=1)
    mode: SphereMode = SphereMode.UNIFORM
    alpha: float = Field(description="Rejection skew exponent.", default=None, gt=0)
    beta: float = Field(description="Boosting skew exponent.", default=None, gt=0)
    boost_pool_fraction: float = Field(default=1 / 6, gt=0, le=1)
    rng_seed: int = 0

    @model_validator(mode="before")
    @classmethod
    def default_exponents(cls, data: Any) -> Any:
        if isinstance(data, dict):
            combined = data.get("mode") in (SphereMode.SKEWED_BOOSTED, "skewed-boosted")
            default = 2.0 if combined else 4.0
            data = dict(data)
            if data.get("alpha") is None:
                data["alpha"] = default
            if data.get("beta") is None:
                data["beta"] = default
        return data


class RunManifest(BaseModel):
    """Everything needed to reproduce one CLI output."""

    command: str
    argv: list[str]
    parameters: dict[str, Any]
    rng_seeds: list[int]
    input_digests: dict[str, str]
    version: str
