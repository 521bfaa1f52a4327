from collections import defaultdict

import numpy as np
import pandas as pd
import pytest

from lastfirst.core.rng import make_rng
from lastfirst.core.utils import (
    ConfigError,
    DegenerateFoldError,
    DegenerateLabelsError,
    InsufficientTrainingError,
    LengthMismatchError,
    NoLandmarksError,
    SinglePeriodError,
    SingleSetError,
)
from lastfirst.evalmetrics import (
    auroc,
    auroc_columns,
    cover_evaluation,
    cover_risk_scores,
    fold_indices,
    inn_predict,
    inn_predict_table,
    knn_predict,
    knn_profile,
    landmark_knn_profile,
    landmark_weights,
    mpc,
    nested_cv,
    temporal_cv,
)
from lastfirst.landmark import Cover
from lastfirst.schema import CvMode, CvPlan, Procedure, SamplerConfig, SeedRule, WeightingScheme, WeightKind
from lastfirst.space import euclidean_space

INVERSE = WeightingScheme(kind=WeightKind.INVERSE_DISTANCE)


def brute_auroc(scores, labels) -> float:
    pos = [s for s, y in zip(scores, labels) if y]
    neg = [s for s, y in zip(scores, labels) if not y]
    wins = sum((p > n) + 0.5 * (p == n) for p in pos for n in neg)
    return wins / (len(pos) * len(neg))


def planted(n: int, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Points in the unit square whose outcome is 1 exactly right of x = 0.5."""
    points = make_rng(seed).uniform(size=(n, 2))
    return points, (points[:, 0] > 0.5).astype(int)


class TestPartitionCoefficient:
    def test_crisp(self):
        assert mpc(Cover.from_sets([[0, 1], [2, 3]], 4)) == pytest.approx(1.0, abs=1e-12)

    def test_all_shared(self):
        assert mpc(Cover.from_sets([[0, 1, 2], [0, 1, 2]], 3)) == pytest.approx(0.0, abs=1e-12)

    def test_one_crisp_one_split(self):
        assert mpc(Cover.from_sets([[0, 1], [1]], 2)) == pytest.approx(0.5, abs=1e-12)

    def test_single_set(self):
        with pytest.raises(SingleSetError):
            mpc(Cover.from_sets([[0, 1]], 2))


class TestCoverRisk:
    def test_split_point_averages_its_sets(self):
        cover = Cover.from_sets([[0, 1, 2, 3, 4], [0, 5, 6, 7, 8]], 9)
        outcomes = np.array([0, 1, 0, 0, 0, 1, 1, 1, 0])
        scores = cover_risk_scores(cover, outcomes)
        assert scores[0] == pytest.approx(0.4)
        assert scores[1] == pytest.approx(0.2)
        assert scores[8] == pytest.approx(0.6)

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatchError):
            cover_risk_scores(Cover.from_sets([[0], [1]], 2), np.array([0, 1, 1]))


class TestAuroc:
    def test_constant_scores(self):
        assert auroc(np.ones(6), np.array([0, 1, 0, 1, 1, 0])) == 0.5

    def test_perfect_and_reversed(self):
        labels = np.array([0, 0, 1, 1])
        assert auroc(np.array([0.1, 0.2, 0.8, 0.9]), labels) == 1.0
        assert auroc(np.array([0.9, 0.8, 0.2, 0.1]), labels) == 0.0

    def test_matches_pairwise_count(self):
        rng = make_rng(3)
        for _ in range(30):
            n = int(rng.integers(2, 40))
            labels = np.r_[0, 1, rng.integers(0, 2, size=n - 2)]
            scores = rng.integers(0, 5, size=n).astype(float)
            assert auroc(scores, labels) == pytest.approx(brute_auroc(scores, labels))

    def test_columns(self):
        rng = make_rng(4)
        labels = np.r_[0, 1, rng.integers(0, 2, size=18)]
        table = rng.uniform(size=(20, 3))
        expected = [auroc(table[:, j], labels) for j in range(3)]
        assert auroc_columns(table, labels) == pytest.approx(expected)

    def test_one_class(self):
        with pytest.raises(DegenerateLabelsError):
            auroc(np.array([0.1, 0.2]), np.array([1, 1]))

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatchError):
            auroc(np.array([0.1, 0.2, 0.3]), np.array([0, 1]))


class TestNeighborProfiles:
    def test_matches_definition(self, random_spaces):
        rng = make_rng(5)
        for space in random_spaces[:30]:
            y = rng.integers(0, 2, size=space.size)
            k_max = min(4, space.size)
            profile = knn_profile(space, np.arange(space.size), np.arange(space.size), y, k_max)
            for i in range(space.size):
                ordered = np.sort(space.dissim[i])
                for k in range(1, k_max + 1):
                    ball = space.dissim[i] <= ordered[k - 1]
                    assert profile[i, k - 1] == pytest.approx(y[ball].mean())

    def test_boundary_ties_included(self):
        space = euclidean_space([[0.0], [1.0], [-1.0], [5.0]])
        profile = knn_profile(space, [0], [1, 2, 3], np.array([0, 1, 0, 1]), 1)
        assert profile[0, 0] == 0.5

    def test_training_subset(self):
        space = euclidean_space([[0.0], [1.0], [2.0], [3.0]])
        y = np.array([1, 1, 0, 0])
        assert knn_predict(space, [0], [2, 3], y, 1)[0] == 0.0
        assert landmark_knn_profile(space, [0], y, 2).tolist() == [[1.0, 1.0]]

    def test_insufficient_training(self, line4):
        with pytest.raises(InsufficientTrainingError):
            knn_profile(line4, [0], [1, 2], np.zeros(4), 3)

    def test_no_landmarks(self, line4):
        with pytest.raises(NoLandmarksError):
            landmark_knn_profile(line4, [], np.zeros(4), 1)


class TestInterpolation:
    @pytest.fixture
    def three(self):
        # x = 0, landmarks at 1 and -3
        return euclidean_space([[0.0], [1.0], [-3.0]])

    def test_inverse_distance(self, three):
        profile = np.array([[0.0], [1.0]])
        assert inn_predict(0, [1, 2], profile, 1, INVERSE, three) == pytest.approx(0.25)

    @pytest.mark.parametrize("kind", list(WeightKind))
    def test_equidistant_landmarks_average(self, kind):
        space = euclidean_space([[0.0], [1.0], [-1.0]])
        profile = np.array([[0.2], [0.6]])
        assert inn_predict(0, [1, 2], profile, 1, WeightingScheme(kind=kind), space) == pytest.approx(0.4)

    @pytest.mark.parametrize("kind", list(WeightKind))
    def test_colocated_query_takes_landmark_profile(self, kind):
        space = euclidean_space([[0.0], [0.0], [5.0]])
        profile = np.array([[0.9], [0.1]])
        assert inn_predict(0, [1, 2], profile, 1, WeightingScheme(kind=kind), space) == pytest.approx(0.9)

    def test_predictions_lie_in_profile_range(self, random_spaces):
        rng = make_rng(6)
        for space in random_spaces[:20]:
            m = min(3, space.size)
            landmarks = np.arange(m)
            profile = rng.uniform(size=(m, 2))
            for kind in WeightKind:
                table = inn_predict_table(space, np.arange(space.size), landmarks, profile, WeightingScheme(kind=kind))
                assert np.all(table >= profile.min(axis=0) - 1e-12)
                assert np.all(table <= profile.max(axis=0) + 1e-12)

    def test_rank_weights(self):
        w = landmark_weights(np.array([1.0, 3.0, 2.0]), WeightingScheme(kind=WeightKind.RANK))
        assert w[0].tolist() == pytest.approx([1.0, 1 / 3, 1 / 2])

    def test_gaussian_bandwidth(self):
        w = landmark_weights(np.array([0.0, 1.0]), WeightingScheme(kind=WeightKind.GAUSSIAN, bandwidth=1.0))
        assert w[0, 1] / w[0, 0] == pytest.approx(np.exp(-0.5))

    def test_triangle_vanishes_at_farthest(self):
        w = landmark_weights(np.array([1.0, 2.0, 4.0]), WeightingScheme(kind=WeightKind.TRIANGLE))
        assert w[0].tolist() == pytest.approx([0.75, 0.5, 0.0])

    def test_no_landmarks(self, three):
        with pytest.raises(NoLandmarksError):
            inn_predict(0, [], np.zeros((0, 1)), 1, INVERSE, three)

    def test_k_out_of_range(self, three):
        with pytest.raises(ConfigError):
            inn_predict(0, [1, 2], np.zeros((2, 1)), 2, INVERSE, three)


class TestFolds:
    def test_sizes_and_partition(self):
        folds = fold_indices(np.arange(23), 5, make_rng(0))
        sizes = sorted(f.size for f in folds)
        assert sizes[-1] - sizes[0] <= 1
        assert np.array_equal(np.sort(np.concatenate(folds)), np.arange(23))

    def test_stratified(self):
        labels = np.array([0] * 15 + [1] * 5)
        folds = fold_indices(np.arange(20), 5, make_rng(1), labels)
        for fold in folds:
            assert fold.size == 4
            assert labels[fold].sum() == 1

    def test_reproducible(self):
        a = fold_indices(np.arange(30), 3, make_rng(2))
        b = fold_indices(np.arange(30), 3, make_rng(2))
        assert all(np.array_equal(x, y) for x, y in zip(a, b))


class TestNestedCv:
    @pytest.fixture(scope="class")
    def data(self):
        points, y = planted(60, 0)
        return euclidean_space(points), y

    def test_no_leakage(self, data):
        space, y = data
        seen = defaultdict(dict)

        def observer(stage, indices, outer, inner):
            seen[outer, inner][stage] = set(np.asarray(indices).tolist())

        config = SamplerConfig(procedure=Procedure.LASTFIRST, num_landmarks=1)
        plan = CvPlan(outer_folds=3, inner_folds=2)
        frame = nested_cv(space, y, config, plan, [5], neighborhood_size=8, observer=observer)
        assert len(frame) == 6
        for stages in seen.values():
            train, test, val = stages["train"], stages["evaluate"], stages["tune"]
            assert not train & test
            assert not train & val
            assert not val & test
            assert stages["landmarks"] <= train
            assert train | val | test == set(range(space.size))

    def test_rows(self, data):
        space, y = data
        config = SamplerConfig(procedure=Procedure.MAXMIN, num_landmarks=1)
        plan = CvPlan(outer_folds=2, inner_folds=2)
        frame = nested_cv(space, y, config, plan, [4, 6], neighborhood_size=8, include_knn=True)
        assert len(frame) == 2 * 2 * 3
        assert set(frame["procedure"]) == {"maxmin", "knn"}
        assert frame["auroc"].between(0, 1).all()
        assert frame["k"].between(1, 8).all()

    def test_reproducible(self, data):
        space, y = data
        config = SamplerConfig(procedure=Procedure.RANDOM, num_landmarks=4, rng_seed=3)
        plan = CvPlan(outer_folds=2, inner_folds=2, rng_seed=8)
        first = nested_cv(space, y, config, plan, [4], neighborhood_size=6)
        second = nested_cv(space, y, config, plan, [4], neighborhood_size=6)
        pd.testing.assert_frame_equal(first, second)

    def test_single_class_fold(self, data):
        space, _ = data
        y = np.zeros(space.size, dtype=int)
        y[0] = 1
        config = SamplerConfig(procedure=Procedure.MAXMIN, num_landmarks=1)
        with pytest.raises(DegenerateFoldError):
            nested_cv(space, y, config, CvPlan(outer_folds=2, inner_folds=2), [3])

    def test_length_mismatch(self, data):
        space, y = data
        config = SamplerConfig(procedure=Procedure.MAXMIN, num_landmarks=1)
        with pytest.raises(LengthMismatchError):
            nested_cv(space, y[:-1], config, CvPlan(), [3])

    @pytest.mark.slow
    @pytest.mark.parametrize("procedure", list(Procedure))
    def test_planted_signal(self, procedure):
        points, y = planted(180, 1)
        config = SamplerConfig(procedure=procedure, num_landmarks=1, seed_rule=SeedRule.RANDOM)
        plan = CvPlan(outer_folds=3, inner_folds=3)
        frame = nested_cv(euclidean_space(points), y, config, plan, [36], neighborhood_size=20)
        assert frame["auroc"].mean() > 0.8

    @pytest.mark.slow
    def test_shuffled_labels(self):
        means = []
        for seed in range(20):
            points, y = planted(90, seed)
            y = make_rng(seed + 100).permutation(y)
            config = SamplerConfig(procedure=Procedure.MAXMIN, num_landmarks=1)
            plan = CvPlan(outer_folds=3, inner_folds=3, rng_seed=seed)
            frame = nested_cv(euclidean_space(points), y, config, plan, [12], neighborhood_size=10)
            means.append(frame["auroc"].mean())
        assert 0.45 <= np.mean(means) <= 0.55


class TestTemporalCv:
    @pytest.fixture
    def periods(self):
        points, y = planted(90, 2)
        labels = np.repeat(["2019", "2020", "2021"], 30)
        return euclidean_space(points), y, labels

    def test_rows_per_part(self, periods):
        space, y, labels = periods
        config = SamplerConfig(procedure=Procedure.LASTFIRST, num_landmarks=1)
        plan = CvPlan(mode=CvMode.TEMPORAL, parts=2)
        frame = temporal_cv(space, y, labels, config, plan, [6], neighborhood_size=5)
        assert len(frame) == 4
        assert frame["period"].tolist() == ["2020", "2020", "2021", "2021"]
        assert frame["part"].tolist() == [0, 1, 0, 1]

    def test_window_order(self, periods):
        space, y, labels = periods
        config = SamplerConfig(procedure=Procedure.MAXMIN, num_landmarks=1)
        plan = CvPlan(mode=CvMode.TEMPORAL, parts=2, window_keys=["2021", "2019"])
        frame = temporal_cv(space, y, labels, config, plan, [4], neighborhood_size=5)
        assert set(frame["period"]) == {"2019"}

    def test_single_period(self, periods):
        space, y, _ = periods
        config = SamplerConfig(procedure=Procedure.MAXMIN, num_landmarks=1)
        with pytest.raises(SinglePeriodError):
            temporal_cv(space, y, np.repeat("2019", space.size), config, CvPlan(parts=2), [4])

    def test_one_class_period(self, periods):
        space, y, labels = periods
        y = y.copy()
        y[labels == "2020"] = 0
        config = SamplerConfig(procedure=Procedure.MAXMIN, num_landmarks=1)
        with pytest.raises(DegenerateFoldError):
            temporal_cv(space, y, labels, config, CvPlan(parts=2), [4], neighborhood_size=5)


class TestCoverEvaluation:
    def test_extension_grows_overlap(self):
        points, y = planted(50, 3)
        config = SamplerConfig(procedure=Procedure.MAXMIN, num_landmarks=1)
        frame = cover_evaluation(euclidean_space(points), y, config, [6], ext_mults=[0.0, 1.0])
        assert frame["n_landmarks"].tolist() == [6, 6]
        assert frame["simplices_1"].is_monotonic_increasing
        assert frame["simplices_2"].is_monotonic_increasing
        assert frame["mpc"].is_monotonic_decreasing
        assert frame["auroc"].between(0, 1).all()
