import json
import logging
from pathlib import Path

import numpy as np
import pandas as pd

from lastfirst.core.utils import (
    ConfigError,
    EmptyInputError,
    LengthMismatchError,
    MixedTypeColumnError,
    ParseError,
)
from lastfirst.space.dissimilarity import (
    ColumnType,
    DissimilaritySpace,
    build_space,
    euclidean_space,
    gower_distance_space,
)

logger = logging.getLogger(__name__)

INPUT_FORMATS = ("coords", "matrix", "mixed")


def _read_csv(path: str | Path, **kwargs) -> pd.DataFrame:
    try:
        frame = pd.read_csv(path, **kwargs)
    except FileNotFoundError as e:
        raise ParseError(f"no such file: {path}") from e
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
        raise ParseError(f"cannot parse {path}: {e}") from e
    if frame.shape[0] == 0:
        raise EmptyInputError(f"{path} has no rows")
    return frame


def load_coordinates(path: str | Path) -> np.ndarray:
    """Coordinate table with a header row, one point per line."""
    frame = _read_csv(path)
    try:
        return frame.apply(pd.to_numeric, errors="raise").to_numpy(dtype=float)
    except (ValueError, TypeError) as e:
        raise ParseError(f"non-numeric coordinate in {path}: {e}") from e


def read_symmetry_flag(path: str | Path) -> bool | None:
    """The ``symmetric`` flag of the ``<file>.meta.json`` sidecar, if there is one."""
    sidecar = Path(f"{path}.meta.json")
    if not sidecar.exists():
        return None
    try:
        meta = json.loads(sidecar.read_text())
    except json.JSONDecodeError as e:
        raise ParseError(f"malformed sidecar {sidecar}: {e}") from e
    flag = meta.get("symmetric")
    if not isinstance(flag, bool):
        raise ParseError(f"sidecar {sidecar} needs a boolean 'symmetric' entry")
    return flag


def load_matrix(path: str | Path, symmetric: bool | None = None, tolerance: float = 0.0) -> DissimilaritySpace:
    """
    Square dissimilarity matrix without header. The symmetry flag comes from the
    argument, else from the sidecar, else from the matrix itself.
    """
    frame = _read_csv(path, header=None)
    try:
        matrix = frame.apply(pd.to_numeric, errors="raise").to_numpy(dtype=float)
    except (ValueError, TypeError) as e:
        raise ParseError(f"non-numeric entry in {path}: {e}") from e
    if symmetric is None:
        symmetric = read_symmetry_flag(path)
    if symmetric is None:
        symmetric = matrix.shape[0] == matrix.shape[1] and bool(np.array_equal(matrix, matrix.T))
        logger.info(f"No symmetry flag for {path}; treating matrix as {'symmetric' if symmetric else 'asymmetric'}")
    return build_space(matrix, symmetric=symmetric, tolerance=tolerance)


def load_mixed_table(
    path: str | Path,
    types: dict[str, ColumnType] | None = None,
) -> tuple[pd.DataFrame, dict[str, ColumnType]]:
    """
    Mixed numeric/categorical records. Column types come from ``types`` or from
    ``num:``/``cat:`` prefixes in the header; unprefixed columns are inferred.
    """
    frame = _read_csv(path, dtype=str, keep_default_na=False)
    declared: dict[str, ColumnType] = {}
    renamed = {}
    for column in frame.columns:
        prefix, _, name = str(column).partition(":")
        if name and prefix in ("num", "cat"):
            renamed[column] = name
            declared[name] = prefix
    frame = frame.rename(columns=renamed)
    declared.update(types or {})
    for name, kind in declared.items():
        if name not in frame.columns:
            raise ConfigError(f"type declared for unknown column {name!r}")
        if kind == "num":
            frame[name] = pd.to_numeric(frame[name], errors="coerce")
            if frame[name].isna().any():
                raise MixedTypeColumnError(f"column {name!r} declared numeric holds non-numeric values")
    for name in frame.columns:
        if name not in declared:
            converted = pd.to_numeric(frame[name], errors="coerce")
            if converted.notna().all():
                frame[name] = converted
                declared[name] = "num"
            elif converted.notna().any():
                raise MixedTypeColumnError(f"column {name!r} mixes numeric and non-numeric values")
            else:
                declared[name] = "cat"
    return frame, declared


def load_space(
    path: str | Path,
    fmt: str = "coords",
    symmetric: bool | None = None,
    types: dict[str, ColumnType] | None = None,
    tolerance: float = 0.0,
) -> DissimilaritySpace:
    match fmt:
        case "coords":
            return euclidean_space(load_coordinates(path), tolerance=tolerance)
        case "matrix":
            return load_matrix(path, symmetric=symmetric, tolerance=tolerance)
        case "mixed":
            frame, declared = load_mixed_table(path, types)
            return gower_distance_space(frame, types=declared, tolerance=tolerance)
        case _:
            raise ConfigError(f"unknown input format {fmt!r}; expected one of {INPUT_FORMATS}")


def load_outcomes(path: str | Path, size: int | None = None) -> pd.DataFrame:
    """
    Outcome table ``point_id,outcome[,period]`` sorted by point id. Outcomes must
    be 0/1 and, when ``size`` is given, the ids must be exactly 0 .. size-1.
    """
    frame = _read_csv(path)
    missing = {"point_id", "outcome"} - set(frame.columns)
    if missing:
        raise ParseError(f"{path} lacks columns {sorted(missing)}")
    frame = frame.sort_values("point_id").reset_index(drop=True)
    if not frame["outcome"].isin([0, 1]).all():
        raise ParseError(f"outcomes in {path} must be 0 or 1")
    if size is not None and not np.array_equal(frame["point_id"].to_numpy(), np.arange(size)):
        raise LengthMismatchError(f"{path} must list outcomes for point ids 0..{size - 1}")
    frame["outcome"] = frame["outcome"].astype(int)
    if "period" in frame.columns:
        frame["period"] = frame["period"].astype(str)
    return frame
