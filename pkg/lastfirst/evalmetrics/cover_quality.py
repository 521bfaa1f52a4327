import numpy as np

from lastfirst.core.utils import LengthMismatchError, SingleSetError
from lastfirst.landmark import Cover


def mpc(cover: Cover) -> float:
    """
    Modified partition coefficient 1 - k/(k-1) (1 - mean_i sum_j u_ij^2):
    1 on crisp partitions, 0 when every point is shared by all k sets.
    """
    k = cover.num_sets
    if k < 2:
        raise SingleSetError("partition coefficient needs at least two cover sets")
    u = cover.membership
    pc = float(np.mean(np.sum(u ** 2, axis=1)))
    return 1.0 - k / (k - 1) * (1.0 - pc)


def cover_risk_scores(cover: Cover, outcomes: np.ndarray) -> np.ndarray:
    """
    q_i = sum_j u_ij p_j, where p_j is the outcome incidence of cover set j.
    """
    y = np.asarray(outcomes, dtype=float)
    if y.shape != (cover.num_points,):
        raise LengthMismatchError(f"{y.size} outcomes for a cover of {cover.num_points} points")
    incidence = cover.incidence()
    sizes = incidence.sum(axis=0)
    rates = np.divide(y @ incidence, sizes, out=np.zeros(cover.num_sets), where=sizes > 0)
    return cover.membership @ rates
