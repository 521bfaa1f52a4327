try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        """Backport of enum.StrEnum: members are str and format as their value."""

        __str__ = str.__str__
        __format__ = str.__format__

        @staticmethod
        def _generate_next_value_(name, start, count, last_values):
            return name.lower()


class RankVariant(StrEnum):
    """Tie handling for relative ranks: strict-less count or less-or-equal count."""

    CHECK = "check"
    HAT = "hat"


class Direction(StrEnum):
    OUT = "out"
    IN = "in"


class Procedure(StrEnum):
    MAXMIN = "maxmin"
    LASTFIRST = "lastfirst"
    RANDOM = "random"


class SeedRule(StrEnum):
    FIRST_INDEX = "first"
    RANDOM = "random"
    CHEBYSHEV = "chebyshev"


class TieRule(StrEnum):
    FIRST_INDEX = "first"
    RANDOM = "random"
    ITERATIVE_REFINEMENT = "refine"


class CoverKind(StrEnum):
    BALL = "ball"
    NEIGHBORHOOD = "neighborhood"


class WeightKind(StrEnum):
    INVERSE_DISTANCE = "inverse"
    TRIANGLE = "triangle"
    GAUSSIAN = "gaussian"
    RANK = "rank"


class CvMode(StrEnum):
    NESTED = "nested"
    TEMPORAL = "temporal"


class SphereMode(StrEnum):
    UNIFORM = "uniform"
    SKEWED = "skewed"
    UNIFORM_BOOSTED = "uniform-boosted"
    SKEWED_BOOSTED = "skewed-boosted"


class GeneratorName(StrEnum):
    BUMPY_CIRCLE = "bumpy-circle"
    NOISY_CIRCLE = "noisy-circle"
    NECKLACE = "necklace"
    SPHERE = "sphere"
    LATTICE = "lattice"
