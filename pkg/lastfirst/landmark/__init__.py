from lastfirst.landmark.cover import Cover, build_cover, extended_cardinality, extended_radius, landmark_sets
from lastfirst.landmark.covering import (
    covering_cardinality,
    covering_radius,
    lastfirst_set,
    maxmin_set,
)
from lastfirst.landmark.samplers import (
    lastfirst_landmarks,
    maxmin_landmarks,
    maxmin_landmarks_balls,
    random_landmarks,
    sample_landmarks,
)
from lastfirst.landmark.selection import seed, select

__all__ = [
    "Cover",
    "build_cover",
    "covering_cardinality",
    "covering_radius",
    "extended_cardinality",
    "extended_radius",
    "landmark_sets",
    "lastfirst_landmarks",
    "lastfirst_set",
    "maxmin_landmarks",
    "maxmin_landmarks_balls",
    "maxmin_set",
    "random_landmarks",
    "sample_landmarks",
    "seed",
    "select",
]
