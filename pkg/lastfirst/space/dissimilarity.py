import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from typing import Literal

import numpy as np
import pandas as pd
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, shortest_path
from scipy.spatial.distance import pdist, squareform
from scipy.stats import rankdata

from lastfirst.core.utils import (
    AsymmetryUnderSymmetricFlagError,
    ConfigError,
    EmptyInputError,
    IndexOutOfBoundsError,
    MixedTypeColumnError,
    NegativeEntryError,
    NonSquareError,
    ParseError,
    RelativeRankViolationError,
    ZeroRangeError,
    ZeroVectorError,
)
from lastfirst.schema import RankVariant

logger = logging.getLogger(__name__)

ColumnType = Literal["num", "cat"]


@dataclass(frozen=True)
class ColocationPartition:
    """Classes of indistinguishable points, ordered by smallest member."""

    classes: tuple[tuple[int, ...], ...]
    class_of: np.ndarray

    @property
    def uniq(self) -> int:
        return len(self.classes)

    def closure(self, indices: Sequence[int] | np.ndarray) -> np.ndarray:
        """Boolean mask of cl(Y): Y together with everything co-located with it."""
        mask = np.zeros(self.class_of.shape[0], dtype=bool)
        if len(indices) == 0:
            return mask
        hit = np.unique(self.class_of[np.asarray(indices, dtype=int)])
        return np.isin(self.class_of, hit)

    def representatives(self) -> np.ndarray:
        return np.array([members[0] for members in self.classes], dtype=int)


@dataclass(frozen=True, eq=False)
class DissimilaritySpace:
    """
    A finite set of points with a nonnegative, possibly asymmetric dissimilarity.

    The matrix is stored read-only; rank rows are computed on first request and
    cached per (source, variant), so the space can be shared between workers.
    """

    dissim: np.ndarray
    symmetric: bool = True
    colocation_tolerance: float = 0.0
    _rank_rows: dict = field(default_factory=dict, init=False, repr=False)

    @property
    def size(self) -> int:
        return self.dissim.shape[0]

    def d(self, i: int, j: int) -> float:
        self.check_index(i)
        self.check_index(j)
        return float(self.dissim[i, j])

    def check_index(self, i: int) -> None:
        if not 0 <= int(i) < self.size:
            raise IndexOutOfBoundsError(f"index {i} outside [0, {self.size})")

    def rank_row(self, x: int, variant: RankVariant = RankVariant.CHECK) -> np.ndarray:
        """Out-ranks q(x, .) of every point from ``x``."""
        self.check_index(x)
        key = (int(x), RankVariant(variant))
        row = self._rank_rows.get(key)
        if row is None:
            method = "min" if key[1] == RankVariant.CHECK else "max"
            # rankdata is 1-based: "min" - 1 counts strictly nearer points,
            # "max" counts points at least as near (the point itself included)
            row = rankdata(self.dissim[x], method=method).astype(np.int64)
            if key[1] == RankVariant.CHECK:
                row -= 1
            row.setflags(write=False)
            self._rank_rows[key] = row
        return row

    @cached_property
    def partition(self) -> ColocationPartition:
        return colocation(self)

    def subspace(self, indices: Sequence[int] | np.ndarray) -> "DissimilaritySpace":
        idx = np.asarray(indices, dtype=int)
        return build_space(
            self.dissim[np.ix_(idx, idx)],
            symmetric=self.symmetric,
            tolerance=self.colocation_tolerance,
        )


def build_space(
    matrix: Sequence[Sequence[float]] | np.ndarray,
    symmetric: bool = True,
    tolerance: float = 0.0,
) -> DissimilaritySpace:
    """Validate a dissimilarity matrix and wrap it as a space."""
    m = np.array(matrix, dtype=float, copy=True)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NonSquareError(f"dissimilarity matrix must be square, got shape {m.shape}")
    if m.shape[0] == 0:
        raise EmptyInputError("dissimilarity matrix is empty")
    if not np.all(np.isfinite(m)):
        raise ParseError("dissimilarity matrix has non-finite entries")
    if np.any(m < 0):
        i, j = np.argwhere(m < 0)[0]
        raise NegativeEntryError(f"negative dissimilarity at ({i}, {j})", {"row": int(i), "col": int(j)})
    violations = np.flatnonzero(np.diag(m) > m.min(axis=1))
    if violations.size:
        raise RelativeRankViolationError(
            f"d(x, x) exceeds some d(x, y) for x = {int(violations[0])}",
            {"rows": violations.tolist()},
        )
    if symmetric and not np.array_equal(m, m.T):
        raise AsymmetryUnderSymmetricFlagError("matrix flagged symmetric is not symmetric")
    if tolerance < 0:
        raise ConfigError("co-location tolerance must be nonnegative")
    m.setflags(write=False)
    return DissimilaritySpace(dissim=m, symmetric=symmetric, colocation_tolerance=float(tolerance))


def _as_points(points: Sequence[Sequence[float]] | np.ndarray) -> np.ndarray:
    x = np.asarray(points, dtype=float)
    if x.ndim == 1:
        x = x.reshape(-1, 1)
    if x.ndim != 2 or x.shape[0] == 0:
        raise EmptyInputError("no points given")
    if not np.all(np.isfinite(x)):
        raise ParseError("coordinates must be finite")
    return x


def euclidean_space(points: Sequence[Sequence[float]] | np.ndarray, tolerance: float = 0.0) -> DissimilaritySpace:
    x = _as_points(points)
    return build_space(squareform(pdist(x, metric="euclidean")), symmetric=True, tolerance=tolerance)


def cosine_distance_space(points: Sequence[Sequence[float]] | np.ndarray, tolerance: float = 0.0) -> DissimilaritySpace:
    """One minus cosine similarity."""
    x = _as_points(points)
    zero = np.flatnonzero(~np.any(x != 0, axis=1))
    if zero.size:
        raise ZeroVectorError(f"row {int(zero[0])} is the zero vector", {"rows": zero.tolist()})
    d = np.clip(squareform(pdist(x, metric="cosine")), 0.0, 2.0)
    # parallel vectors leave rounding residue instead of an exact zero
    d[d < 8 * np.finfo(float).eps] = 0.0
    return build_space(d, symmetric=True, tolerance=tolerance)


def _column_type(name: str, column: pd.Series) -> ColumnType:
    if pd.api.types.is_bool_dtype(column):
        return "cat"
    if pd.api.types.is_numeric_dtype(column):
        return "num"
    kinds = {isinstance(v, (int, float, np.number)) and not isinstance(v, bool) for v in column}
    if len(kinds) > 1:
        raise MixedTypeColumnError(f"column {name!r} mixes numeric and non-numeric values")
    return "cat"


def gower_distance_space(
    table: pd.DataFrame,
    types: Mapping[str, ColumnType] | None = None,
    ranges: Mapping[str, float] | None = None,
    tolerance: float = 0.0,
) -> DissimilaritySpace:
    """
    Gower dissimilarity of mixed records: the mean over variables of
    |x_i - x_j| / range for numeric variables and of inequality for categorical ones.
    """
    if table.shape[0] == 0 or table.shape[1] == 0:
        raise EmptyInputError("empty table")
    types = dict(types or {})
    ranges = dict(ranges or {})
    n = table.shape[0]
    total = np.zeros((n, n))
    for name in table.columns:
        column = table[name]
        kind = types.get(name) or _column_type(name, column)
        if kind == "num":
            try:
                values = pd.to_numeric(column, errors="raise").to_numpy(dtype=float)
            except (ValueError, TypeError) as e:
                raise MixedTypeColumnError(f"column {name!r} declared numeric: {e}")
            span = ranges.get(name, float(np.max(values) - np.min(values)))
            if not span > 0:
                raise ZeroRangeError(f"numeric column {name!r} has zero range", {"column": name})
            total += np.clip(np.abs(values[:, None] - values[None, :]) / span, 0.0, 1.0)
        elif kind == "cat":
            values = column.to_numpy()
            total += values[:, None] != values[None, :]
        else:
            raise ConfigError(f"unknown column type {kind!r} for {name!r}")
    logger.debug(f"Gower distance over {table.shape[1]} variables and {n} records")
    return build_space(total / table.shape[1], symmetric=True, tolerance=tolerance)


def shortest_path_space(adjacency: np.ndarray, directed: bool = True) -> DissimilaritySpace:
    """Path-length dissimilarity of a weighted (directed) graph; zero entries are non-edges."""
    graph = csr_matrix(np.asarray(adjacency, dtype=float))
    if graph.shape[0] != graph.shape[1]:
        raise NonSquareError(f"adjacency matrix must be square, got shape {graph.shape}")
    paths = shortest_path(graph, directed=directed)
    if not np.all(np.isfinite(paths)):
        raise ParseError("graph is not strongly connected")
    return build_space(paths, symmetric=not directed)


def colocation(space: DissimilaritySpace) -> ColocationPartition:
    """
    Partition points into co-location classes: i ~ j when both d(i, j) and d(j, i)
    are within tolerance, closed transitively when the tolerance is positive.
    """
    m = space.dissim
    close = (m <= space.colocation_tolerance) & (m.T <= space.colocation_tolerance)
    _, labels = connected_components(csr_matrix(close), directed=False)
    # relabel so classes are ordered by their smallest member
    order: dict[int, int] = {}
    for label in labels:
        order.setdefault(label, len(order))
    class_of = np.array([order[label] for label in labels], dtype=int)
    classes: list[list[int]] = [[] for _ in order]
    for i, c in enumerate(class_of):
        classes[c].append(i)
    class_of.setflags(write=False)
    return ColocationPartition(classes=tuple(tuple(c) for c in classes), class_of=class_of)
