"""
MatrixMarket export of chain operators with JSON basis manifests.
"""
import json
from pathlib import Path
from typing import Tuple, Union

import scipy.io
import scipy.sparse as sp

from rlab.errors import FileFormatError
from rlab.logging_config import get_logger
from rlab.operators.chains import BasisKind, ChainBasis, ChainOperator

logger = get_logger("operators.export")

PathLike = Union[str, Path]


def _sidecar(path: Path) -> Path:
    return path.with_suffix(".basis.json")


def export_operator(op: ChainOperator, path: PathLike) -> Tuple[Path, Path]:
    """
    Write ``op`` as a MatrixMarket coordinate file plus a ``.basis.json`` sidecar.

    Returns:
        The matrix path and the manifest path.
    """
    path = Path(path).with_suffix(".mtx")
    path.parent.mkdir(parents=True, exist_ok=True)
    scipy.io.mmwrite(str(path), op.matrix.tocoo(), field="complex")
    manifest = {"label": op.label, "source": op.source.manifest(), "target": op.target.manifest()}
    sidecar = _sidecar(path)
    sidecar.write_text(json.dumps(manifest, sort_keys=True, ensure_ascii=False, indent=1))
    logger.info(f"Exported {op.label} ({op.shape[0]}x{op.shape[1]}) to {path}")
    return path, sidecar


def _basis_from_manifest(entry: dict) -> ChainBasis:
    cells = tuple(tuple(item["cell"]) for item in entry["basis"] if item["orientation"] > 0)
    return ChainBasis(BasisKind(entry["kind"]), int(entry["dim"]), cells)


def load_operator(path: PathLike) -> ChainOperator:
    """Read an operator written by ``export_operator``."""
    path = Path(path).with_suffix(".mtx")
    try:
        matrix = sp.csr_matrix(scipy.io.mmread(str(path)))
        manifest = json.loads(_sidecar(path).read_text())
        source = _basis_from_manifest(manifest["source"])
        target = _basis_from_manifest(manifest["target"])
    except (OSError, ValueError, KeyError) as e:
        raise FileFormatError(path, f"cannot read exported operator: {e}") from e
    return ChainOperator(source, target, matrix, manifest.get("label", ""))
