"""
Pydantic models for file formats, run configuration and reports.
"""
import hashlib
import json
from typing import Dict, List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from config import RLAB_DETERMINISTIC, RLAB_SEED, RLAB_THREADS, VERDICT_TOL

REPORT_DECIMALS = 10


class ComplexFile(BaseModel):
    """A complex or colored complex as stored on disk."""

    model_config = ConfigDict(extra="forbid")

    maximal_cells: List[List[int]] = Field(..., description="Generating cells; the complex is their downward closure.")
    d: Optional[int] = Field(None, description="Color modulus of a colored complex.")
    vertex_colors: Optional[List[int]] = Field(None, description="Color of each vertex in Z/d.")
    edge_colors: Optional[List[Tuple[int, int, int]]] = Field(
        None, description="Directed edge colors as [u, v, color] triples."
    )
    radius: Optional[int] = Field(None, description="Radius of a generated ball.")
    distance: Optional[List[int]] = Field(None, description="Distance of each vertex from the ball center.")
    projection: Optional[List[int]] = Field(None, description="Vertex map onto the base complex of a cover.")
    truncation: Optional[int] = Field(None, description="Series truncation degree used for a building ball.")

    @field_validator("maximal_cells")
    @classmethod
    def _nonempty(cls, value: List[List[int]]) -> List[List[int]]:
        if not value:
            raise ValueError("maximal_cells must be nonempty")
        return value


class GroupActionFile(BaseModel):
    """Vertex permutations in one-line notation."""

    model_config = ConfigDict(extra="forbid")

    generators: List[List[int]] = Field(default_factory=list)


class RunConfig(BaseModel):
    """Parameters of one CLI invocation; the seed fixes every random choice."""

    command: str
    input: Optional[str] = None
    output: Optional[str] = None
    generator: Optional[str] = None
    n: Optional[int] = None
    m: Optional[int] = None
    k: Optional[int] = None
    q: Optional[int] = None
    d: Optional[int] = None
    r: int = 1
    radius: Optional[int] = None
    degree: Optional[int] = None
    dim: int = 0
    operator: str = "adjacency"
    reference: Optional[str] = None
    shifts: List[int] = Field(default_factory=list)
    sizes: List[int] = Field(default_factory=list)
    top: Optional[int] = None
    seed: int = RLAB_SEED
    tol: float = VERDICT_TOL
    threads: int = RLAB_THREADS
    deterministic: bool = RLAB_DETERMINISTIC

    @model_validator(mode="after")
    def _fresh_seed(self) -> "RunConfig":
        # without a pinned seed, non-deterministic runs draw one; it is recorded in the metadata
        if not self.deterministic and "seed" not in self.model_fields_set:
            self.seed = int(np.random.SeedSequence().entropy % 2**31)
        return self

    def config_hash(self) -> str:
        """SHA-256 of the canonical JSON form of the configuration."""
        payload = json.dumps(self.model_dump(mode="json"), sort_keys=True)
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()


class SpectrumRow(BaseModel):
    """One joint eigenvalue tuple with multiplicity."""

    index: int
    operator: Optional[str] = Field(None, description="Operator label when spectra are reported per operator.")
    point: List[Tuple[float, float]] = Field(..., description="(real, imaginary) per coordinate.")
    multiplicity: int
    classification: Optional[Literal["trivial", "covered", "violating"]] = None
    distance: Optional[float] = Field(None, description="Distance to the reference when not trivial.")


class VerdictSummary(BaseModel):
    ramanujan: bool
    tolerance: float
    counts: Dict[str, int]
    reference: str
    trivial_source: str
    empirical_reference: bool = False


class ScanRow(BaseModel):
    n_vertices: int
    girth: Optional[int]
    injectivity_radius: int
    covering_radius: float
    spectrum_size: int


class Report(BaseModel):
    """Everything a run emits; identical configs give identical bodies."""

    metadata: Dict[str, str]
    config: RunConfig
    operators: List[str] = Field(default_factory=list)
    spectrum: List[SpectrumRow] = Field(default_factory=list)
    trivial: List[List[Tuple[float, float]]] = Field(default_factory=list)
    verdict: Optional[VerdictSummary] = None
    scan: List[ScanRow] = Field(default_factory=list)
    warnings: List[str] = Field(default_factory=list)


def round_value(value: float) -> float:
    rounded = round(float(value), REPORT_DECIMALS)
    return 0.0 if rounded == 0 else rounded


def complex_pair(z: complex) -> Tuple[float, float]:
    z = complex(z)
    return round_value(z.real), round_value(z.imag)
