import numpy as np
from scipy.stats import rankdata

from lastfirst.core.utils import DegenerateLabelsError, LengthMismatchError


def _split_labels(labels: np.ndarray) -> tuple[np.ndarray, int, int]:
    y = np.asarray(labels).astype(bool)
    n_pos = int(y.sum())
    n_neg = y.size - n_pos
    if n_pos == 0 or n_neg == 0:
        raise DegenerateLabelsError("AUROC needs both outcome classes", {"positives": n_pos, "negatives": n_neg})
    return y, n_pos, n_neg


def auroc(scores: np.ndarray, labels: np.ndarray) -> float:
    """Mann-Whitney concordance P(s+ > s-) + P(s+ = s-) / 2."""
    s = np.asarray(scores, dtype=float)
    if s.shape != np.shape(labels):
        raise LengthMismatchError(f"{s.size} scores for {np.size(labels)} labels")
    y, n_pos, n_neg = _split_labels(labels)
    ranks = rankdata(s)
    return float((ranks[y].sum() - n_pos * (n_pos + 1) / 2) / (n_pos * n_neg))


def auroc_columns(scores: np.ndarray, labels: np.ndarray) -> np.ndarray:
    """AUROC of every column of an (n, c) score matrix against the same labels."""
    s = np.asarray(scores, dtype=float)
    if s.ndim != 2 or s.shape[0] != np.size(labels):
        raise LengthMismatchError(f"score matrix {s.shape} does not match {np.size(labels)} labels")
    y, n_pos, n_neg = _split_labels(labels)
    ranks = rankdata(s, axis=0)
    return (ranks[y].sum(axis=0) - n_pos * (n_pos + 1) / 2) / (n_pos * n_neg)
