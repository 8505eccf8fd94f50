"""
Loaders and writers for complexes, group actions and reports.

Loader errors carry the file path and, for JSON syntax errors, the line.
"""
import csv
import json
from pathlib import Path
from typing import Type, TypeVar, Union

from pydantic import BaseModel
from pydantic import ValidationError as PydanticValidationError

from rlab.complexes.complex import SimplicialComplex, build_complex
from rlab.complexes.groups import GroupAction
from rlab.errors import FileFormatError, ValidationError
from rlab.logging_config import get_logger
from rlab.models import ComplexFile, GroupActionFile, Report, REPORT_DECIMALS

logger = get_logger("io")

PathLike = Union[str, Path]
Model = TypeVar("Model", bound=BaseModel)


def read_model(path: PathLike, model: Type[Model]) -> Model:
    """Parse a JSON file into ``model``."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise FileFormatError(path, f"cannot read file: {e}") from e
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise FileFormatError(path, e.msg, line=e.lineno) from e
    try:
        return model.model_validate(data)
    except PydanticValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(part) for part in first["loc"])
        raise FileFormatError(path, f"{where}: {first['msg']}") from e


def write_json(path: PathLike, payload: dict) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n")
    return path


def with_context(path: PathLike, error: ValidationError) -> ValidationError:
    """Prefix the message of a domain error with the file it came from."""
    error.args = (f"{path}: {error.args[0] if error.args else error}",)
    return error


def load_complex(path: PathLike, *, require_connected: bool = True) -> SimplicialComplex:
    payload = read_model(path, ComplexFile)
    try:
        return build_complex(payload.maximal_cells, require_connected=require_connected)
    except ValidationError as e:
        raise with_context(path, e)


def complex_payload(X: SimplicialComplex) -> dict:
    return {"maximal_cells": [list(c) for c in X.maximal_cells()]}


def save_complex(X: SimplicialComplex, path: PathLike) -> Path:
    path = write_json(path, complex_payload(X))
    logger.info(f"Wrote complex with f-vector {X.f_vector} to {path}")
    return path


def load_group_action(path: PathLike) -> GroupAction:
    return GroupAction.of(read_model(path, GroupActionFile).generators)


def write_report(report: Report, path: PathLike) -> Path:
    """JSON report with sorted keys; floats were rounded when the report was built."""
    path = write_json(path, report.model_dump(mode="json"))
    logger.info(f"Wrote report to {path}")
    return path


def write_spectrum_csv(report: Report, path: PathLike) -> Path:
    """One row per spectral point: index, operator, multiplicity, class, distance, then re/im per coordinate."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    arity = max((len(row.point) for row in report.spectrum), default=0)
    header = ["index", "operator", "multiplicity", "classification", "distance"]
    for k in range(arity):
        header += [f"re_{k}", f"im_{k}"]
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        for row in report.spectrum:
            values = [row.index, row.operator or "", row.multiplicity, row.classification or "", "" if row.distance is None else row.distance]
            for re, im in row.point:
                values += [f"{re:.{REPORT_DECIMALS}f}", f"{im:.{REPORT_DECIMALS}f}"]
            writer.writerow(values)
    logger.info(f"Wrote {len(report.spectrum)} spectral points to {path}")
    return path
