import numpy as np
import pytest
from pydantic import ValidationError

from lastfirst.core.utils import (
    ConfigError,
    EmptyCandidatesError,
    EmptyInputError,
    MismatchedSpaceError,
    TooManyRequestedError,
)
from lastfirst.landmark import (
    build_cover,
    covering_cardinality,
    covering_radius,
    extended_cardinality,
    extended_radius,
    landmark_sets,
    lastfirst_landmarks,
    lastfirst_set,
    maxmin_landmarks,
    maxmin_landmarks_balls,
    maxmin_set,
    random_landmarks,
    sample_landmarks,
    seed,
    select,
)
from lastfirst.schema import CoverKind, Procedure, RankVariant, SamplerConfig, SeedRule, TieRule
from lastfirst.space import build_space, euclidean_space, rank_matrix, shortest_path_space
from tests.conftest import A, B, C, D, brute_lastfirst, brute_maxmin

MAXMIN, LASTFIRST, RANDOM = Procedure.MAXMIN, Procedure.LASTFIRST, Procedure.RANDOM


def exhaustive(procedure: Procedure, **kwargs) -> SamplerConfig:
    if procedure == MAXMIN:
        return SamplerConfig(procedure=MAXMIN, radius=0.0, **kwargs)
    return SamplerConfig(procedure=LASTFIRST, cardinality=0, **kwargs)


@pytest.fixture
def cycle4():
    """Directed 4-cycle: d(i, j) = (j - i) mod 4."""
    adjacency = np.zeros((4, 4))
    for i in range(4):
        adjacency[i, (i + 1) % 4] = 1.0
    return shortest_path_space(adjacency)


class TestCoveringParameters:
    def test_radius(self, line4):
        assert covering_radius(line4, [A]) == 3.0
        assert covering_radius(line4, [C]) == 3.0
        assert covering_radius(line4, [A, B, C, D]) == 0.0

    def test_cardinality(self, line4):
        assert covering_cardinality(line4, [C]) == 3
        assert covering_cardinality(line4, [A]) == 2
        assert covering_cardinality(line4, [A, B, C, D]) == 0

    def test_empty_landmarks(self, line4):
        with pytest.raises(EmptyInputError):
            covering_radius(line4, [])


class TestCoveringSets:
    def test_maxmin_set(self, line4):
        assert maxmin_set(line4, [A]).tolist() == [C, D]
        assert maxmin_set(line4, [C]).tolist() == [A]
        assert maxmin_set(line4, [A, B, C, D]).tolist() == []

    def test_lastfirst_set(self, line4):
        assert lastfirst_set(line4, [C]).tolist() == [A]
        assert lastfirst_set(line4, [A]).tolist() == [C, D]
        assert lastfirst_set(line4, [A, B, C, D]).tolist() == []

    def test_closure_is_excluded(self, line4):
        # d is co-located with c, so it is never a candidate once c is chosen
        assert D not in maxmin_set(line4, [A, C]).tolist()
        assert D not in lastfirst_set(line4, [A, C]).tolist()


class TestSelect:
    def test_first_index(self, line4):
        assert select(TieRule.FIRST_INDEX, [D, C], [A], line4) == C

    def test_singleton(self, line4):
        assert select(TieRule.RANDOM, [B], [A], line4, rng=7) == B

    def test_empty(self, line4):
        with pytest.raises(EmptyCandidatesError):
            select(TieRule.FIRST_INDEX, [], [A], line4)

    def test_random_is_reproducible(self, line4):
        picks = {select(TieRule.RANDOM, [B, C, D], [A], line4, rng=3) for _ in range(5)}
        assert len(picks) == 1
        assert picks <= {B, C, D}

    def test_refinement_looks_past_the_nearest_landmark(self):
        space = euclidean_space([[0.0], [5.0], [10.0], [1.0], [-5.0]])
        assert maxmin_set(space, [0, 2]).tolist() == [1, 4]
        assert select(TieRule.FIRST_INDEX, [1, 4], [0, 2], space) == 1
        # (5, 5) against (5, 15): the second-nearest landmark decides
        assert select(TieRule.ITERATIVE_REFINEMENT, [1, 4], [0, 2], space) == 4


class TestSeed:
    def test_first_index(self, line4):
        assert seed(line4, SeedRule.FIRST_INDEX) == A

    def test_chebyshev_distance(self, line4):
        assert seed(line4, SeedRule.CHEBYSHEV, MAXMIN) == B

    def test_chebyshev_rank(self, line4):
        assert seed(line4, SeedRule.CHEBYSHEV, LASTFIRST) == C

    def test_random(self, line4):
        assert seed(line4, SeedRule.RANDOM, rng=11) == seed(line4, SeedRule.RANDOM, rng=11)

    def test_singleton(self):
        space = build_space([[0.0]])
        for rule in SeedRule:
            assert seed(space, rule, LASTFIRST, rng=0) == 0


class TestMaxmin:
    def test_two_landmarks(self, line4):
        result = maxmin_landmarks(line4, SamplerConfig(procedure=MAXMIN, num_landmarks=2))
        assert result.landmarks == [A, C]
        assert result.final_radius == 1.0

    def test_one_landmark_reports_eccentricity(self, line4):
        result = maxmin_landmarks(line4, SamplerConfig(procedure=MAXMIN, num_landmarks=1))
        assert result.landmarks == [A]
        assert result.final_radius == 3.0

    def test_stops_at_closure(self, line4):
        result = maxmin_landmarks(line4, SamplerConfig(procedure=MAXMIN, num_landmarks=4))
        assert result.landmarks == [A, C, B]
        assert result.final_radius == 0.0

    def test_radius_target(self, line4):
        result = maxmin_landmarks(line4, SamplerConfig(procedure=MAXMIN, radius=1.5))
        assert result.landmarks == [A, C]

    def test_matches_brute_force(self, random_spaces):
        for space in random_spaces:
            result = maxmin_landmarks(space, exhaustive(MAXMIN))
            assert result.landmarks == brute_maxmin(space)

    def test_ball_statement_agrees(self, random_spaces):
        for space in random_spaces:
            config = exhaustive(MAXMIN)
            assert maxmin_landmarks_balls(space, config) == maxmin_landmarks(space, config)

    def test_directed_distances_read_outward(self, cycle4):
        result = maxmin_landmarks(cycle4, exhaustive(MAXMIN))
        assert result.landmarks == [0, 3, 2, 1]
        assert [s.cover_param for s in result.per_step] == [3.0, 2.0, 1.0, 0.0]


class TestLastfirst:
    def test_exhaustive_from_chebyshev_center(self, line4):
        result = lastfirst_landmarks(line4, exhaustive(LASTFIRST, seed_rule=SeedRule.CHEBYSHEV))
        assert result.landmarks == [C, A, B]
        assert [s.cover_param for s in result.per_step] == [3, 1, 0]
        assert result.final_cardinality == 0

    def test_count_target(self, line4):
        result = lastfirst_landmarks(line4, SamplerConfig(procedure=LASTFIRST, num_landmarks=2))
        assert result.landmarks == [A, C]
        assert result.final_cardinality == 1

    def test_matches_brute_force(self, random_spaces):
        for space in random_spaces:
            result = lastfirst_landmarks(space, exhaustive(LASTFIRST))
            assert result.landmarks == brute_lastfirst(space)

    def test_is_maxmin_on_ranks(self, random_spaces):
        for space in random_spaces[:40]:
            ranks = build_space(rank_matrix(space), symmetric=False)
            by_rank = maxmin_landmarks(ranks, exhaustive(MAXMIN, tie_rule=TieRule.ITERATIVE_REFINEMENT))
            result = lastfirst_landmarks(space, exhaustive(LASTFIRST))
            assert result.landmarks == by_rank.landmarks
            assert [s.cover_param for s in result.per_step] == [int(s.cover_param) for s in by_rank.per_step]

    def test_directed_ranks_read_outward(self, cycle4):
        result = lastfirst_landmarks(cycle4, exhaustive(LASTFIRST))
        assert result.landmarks == [0, 3, 2, 1]
        assert [s.cover_param for s in result.per_step] == [3, 2, 1, 0]

    def test_hat_ranks(self, line4):
        result = lastfirst_landmarks(line4, exhaustive(LASTFIRST, rank_variant=RankVariant.HAT))
        params = [s.cover_param for s in result.per_step]
        assert params == sorted(params, reverse=True)
        cover = build_cover(line4, result, CoverKind.NEIGHBORHOOD)
        assert cover.incidence().any(axis=1).all()


class TestSequenceProperties:
    @pytest.mark.parametrize("procedure", [MAXMIN, LASTFIRST])
    def test_landmarks_are_never_colocated(self, random_spaces, procedure):
        for space in random_spaces:
            result = sample_landmarks(space, exhaustive(procedure))
            classes = space.partition.class_of[result.landmarks]
            assert len(set(classes.tolist())) == len(classes)
            assert len(result.landmarks) == space.partition.uniq

    def test_prefix_parameters_are_minimal(self, random_spaces):
        for space in random_spaces:
            m = min(5, space.partition.uniq)
            radii = maxmin_landmarks(space, SamplerConfig(procedure=MAXMIN, num_landmarks=m))
            for i, step in enumerate(radii.per_step):
                assert step.cover_param == covering_radius(space, radii.landmarks[: i + 1])
            ranks = lastfirst_landmarks(space, SamplerConfig(procedure=LASTFIRST, num_landmarks=m))
            for i, step in enumerate(ranks.per_step):
                assert step.cover_param == covering_cardinality(space, ranks.landmarks[: i + 1])

    @pytest.mark.parametrize("procedure", [MAXMIN, LASTFIRST])
    def test_parameters_do_not_increase(self, random_spaces, procedure):
        for space in random_spaces:
            params = [s.cover_param for s in sample_landmarks(space, exhaustive(procedure)).per_step]
            assert params == sorted(params, reverse=True)

    @pytest.mark.parametrize("procedure", [MAXMIN, LASTFIRST])
    def test_random_rules_are_reproducible(self, random_spaces, procedure):
        for space in random_spaces[:20]:
            config = exhaustive(procedure, seed_rule=SeedRule.RANDOM, tie_rule=TieRule.RANDOM, rng_seed=5)
            assert sample_landmarks(space, config) == sample_landmarks(space, config)

    def test_prefix(self, line4):
        result = lastfirst_landmarks(line4, exhaustive(LASTFIRST, seed_rule=SeedRule.CHEBYSHEV))
        head = result.prefix(2)
        assert head.landmarks == [C, A]
        assert head.final_cardinality == 1
        assert head.final_radius is None


class TestRandomLandmarks:
    def test_all_classes(self, line4):
        result = random_landmarks(line4, SamplerConfig(procedure=RANDOM, num_landmarks=3, rng_seed=1))
        assert sorted(result.landmarks) == [A, B, C]

    def test_too_many(self, line4):
        with pytest.raises(TooManyRequestedError):
            random_landmarks(line4, SamplerConfig(procedure=RANDOM, num_landmarks=4))

    def test_reproducible(self, random_spaces):
        space = random_spaces[10]
        config = SamplerConfig(procedure=RANDOM, num_landmarks=2, rng_seed=9)
        assert random_landmarks(space, config) == random_landmarks(space, config)

    def test_radii_match_prefixes(self, random_spaces):
        space = random_spaces[4]
        result = random_landmarks(space, SamplerConfig(procedure=RANDOM, num_landmarks=2))
        assert result.final_radius == covering_radius(space, result.landmarks)


class TestConfig:
    def test_missing_stopping_parameter(self):
        with pytest.raises(ValidationError):
            SamplerConfig(procedure=MAXMIN)
        with pytest.raises(ValidationError):
            SamplerConfig(procedure=LASTFIRST, radius=1.0)
        with pytest.raises(ValidationError):
            SamplerConfig(procedure=RANDOM, radius=1.0)

    def test_wrong_procedure(self, line4):
        with pytest.raises(ConfigError):
            maxmin_landmarks(line4, SamplerConfig(procedure=LASTFIRST, num_landmarks=2))


class TestCover:
    def test_extension_arithmetic(self):
        assert extended_radius(2.0, 0.5, 0.1) == pytest.approx(3.1)
        assert extended_cardinality(10, 1.0, 0) == 20
        assert extended_cardinality(1, 0.5, 0) == 2

    def test_ball_cover(self, line4):
        result = maxmin_landmarks(line4, SamplerConfig(procedure=MAXMIN, num_landmarks=2))
        assert landmark_sets(line4, result) == [[A, B], [C, D]]
        cover = build_cover(line4, result, ext_mult=1.0)
        assert cover.param == 2.0
        assert cover.set_lists() == [[A, B], [B, C, D]]
        assert cover.membership[B].tolist() == [0.5, 0.5]

    def test_neighborhood_cover(self, line4):
        result = lastfirst_landmarks(line4, exhaustive(LASTFIRST, seed_rule=SeedRule.CHEBYSHEV))
        cover = build_cover(line4, result, CoverKind.NEIGHBORHOOD)
        assert cover.set_lists() == [[C, D], [A], [B]]
        assert cover.landmarks == (C, A, B)

    @pytest.mark.parametrize("procedure", [MAXMIN, LASTFIRST])
    def test_unextended_cover_covers(self, random_spaces, procedure):
        kind = CoverKind.BALL if procedure == MAXMIN else CoverKind.NEIGHBORHOOD
        for space in random_spaces:
            m = min(4, space.partition.uniq)
            result = sample_landmarks(space, SamplerConfig(procedure=procedure, num_landmarks=m))
            cover = build_cover(space, result, kind)
            assert np.allclose(cover.membership.sum(axis=1), 1.0)

    @pytest.mark.parametrize("ext", [{"ext_mult": -0.5}, {"ext_add": -1.0}])
    def test_negative_extension(self, line4, ext):
        result = maxmin_landmarks(line4, SamplerConfig(procedure=MAXMIN, num_landmarks=2))
        with pytest.raises(ConfigError):
            build_cover(line4, result, **ext)

    def test_mismatched_space(self, line4):
        result = maxmin_landmarks(line4, SamplerConfig(procedure=MAXMIN, num_landmarks=2))
        with pytest.raises(MismatchedSpaceError):
            build_cover(euclidean_space([[0.0], [1.0], [2.0]]), result)
