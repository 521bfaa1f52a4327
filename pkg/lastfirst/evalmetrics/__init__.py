from lastfirst.evalmetrics.auroc import auroc, auroc_columns
from lastfirst.evalmetrics.cover_quality import cover_risk_scores, mpc
from lastfirst.evalmetrics.cv import cover_evaluation, fold_indices, nested_cv, temporal_cv
from lastfirst.evalmetrics.inn import (
    inn_predict,
    inn_predict_table,
    knn_predict,
    knn_profile,
    landmark_knn_profile,
    landmark_weights,
)

__all__ = [
    "auroc",
    "auroc_columns",
    "cover_evaluation",
    "cover_risk_scores",
    "fold_indices",
    "inn_predict",
    "inn_predict_table",
    "knn_predict",
    "knn_profile",
    "landmark_knn_profile",
    "landmark_weights",
    "mpc",
    "nested_cv",
    "temporal_cv",
]
