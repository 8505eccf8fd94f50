"""
Spectra of universal covers: trees and buildings.

Tree references are intervals. The building reference is the image of the
torus {z ∈ ℂ^d : |z_m| = 1, Π z_m = 1} under
λ_k = q^{k(d−k)/2} e_k(z), k = 1 … d−1. Membership of a point is decided
by its distance to that image: a dense angle grid gives a certified
rejection through a Lipschitz bound, otherwise least squares on the torus
angles runs from the nearest grid points.
"""
from dataclasses import dataclass, field
from functools import cached_property
from math import comb, sqrt
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import least_squares
from scipy.spatial import cKDTree

from config import TORUS_ACCEPT, TORUS_GRID, TORUS_ITERATIONS, TORUS_STARTS, VERDICT_TOL
from rlab.building.lattice import gaussian_binomial
from rlab.errors import InvalidParams, UnsupportedKind
from rlab.logging_config import get_logger

logger = get_logger("spectra.reference")

KINDS = ("tree", "tree-edges", "building", "explicit", "direct-sum")


def elementary_symmetric(z: np.ndarray) -> np.ndarray:
    """e_0 … e_d of the last axis of ``z``; returns shape (..., d + 1)."""
    z = np.asarray(z, dtype=np.complex128)
    d = z.shape[-1]
    e = np.zeros(z.shape[:-1] + (d + 1,), dtype=np.complex128)
    e[..., 0] = 1
    for m in range(d):
        e[..., 1 : m + 2] = e[..., 1 : m + 2] + z[..., m : m + 1] * e[..., 0 : m + 1]
    return e


class TorusImage:
    """Membership oracle for the building reference spectrum of PGL_d over a field with q elements."""

    def __init__(self, q: int, d: int, grid: int = TORUS_GRID):
        if d < 2:
            raise InvalidParams(f"d = {d} must be at least 2")
        self.q = q
        self.d = d
        self.scales = np.array([q ** (k * (d - k) / 2) for k in range(1, d)])
        self.per_axis = max(8, int(round(grid ** (2 / (d - 1))))) if d > 2 else grid
        step = 2 * np.pi / self.per_axis
        self.radius = step / 2 * sqrt(d - 1)
        self.lipschitz = float(
            np.sqrt(sum((s * 2 * comb(d - 1, k - 1) * sqrt(d - 1)) ** 2 for k, s in enumerate(self.scales, start=1)))
        )

    def evaluate(self, angles: np.ndarray) -> np.ndarray:
        """λ(θ) for angles of shape (..., d − 1)."""
        angles = np.asarray(angles, dtype=float)
        last = -np.sum(angles, axis=-1, keepdims=True)
        z = np.exp(1j * np.concatenate([angles, last], axis=-1))
        return elementary_symmetric(z)[..., 1 : self.d] * self.scales

    @cached_property
    def _grid(self) -> Tuple[np.ndarray, np.ndarray, cKDTree]:
        axis = np.arange(self.per_axis) * (2 * np.pi / self.per_axis)
        mesh = np.stack(np.meshgrid(*([axis] * (self.d - 1)), indexing="ij"), axis=-1).reshape(-1, self.d - 1)
        values = self.evaluate(mesh)
        tree = cKDTree(np.concatenate([values.real, values.imag], axis=1))
        logger.debug(f"Torus grid with {len(mesh)} points, Lipschitz radius {self.lipschitz * self.radius:.3f}")
        return mesh, values, tree

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        """Images of n uniformly random torus points, shape (n, d − 1)."""
        return self.evaluate(rng.uniform(0, 2 * np.pi, size=(n, self.d - 1)))

    def distance(self, point: Sequence[complex], tol: float = TORUS_ACCEPT) -> float:
        """
        Distance from ``point`` to the torus image, exact up to the optimizer.

        Returns a lower bound when the grid certifies the point is farther
        than ``tol``; otherwise the best distance found by local least
        squares (at most ``tol`` on acceptance).
        """
        target = np.asarray(point, dtype=np.complex128).reshape(-1)
        if target.shape[0] != self.d - 1:
            raise InvalidParams(f"expected {self.d - 1} coordinates, got {target.shape[0]}")
        mesh, _, tree = self._grid
        flat = np.concatenate([target.real, target.imag])
        starts = min(TORUS_STARTS, len(mesh))
        nearest, indices = tree.query(flat, k=starts)
        nearest = np.atleast_1d(nearest)
        indices = np.atleast_1d(indices)
        bound = float(nearest[0]) - self.lipschitz * self.radius
        if bound > tol:
            return bound

        def residual(theta):
            diff = self.evaluate(theta) - target
            return np.concatenate([diff.real, diff.imag])

        best = float(nearest[0])
        for index in indices:
            fit = least_squares(residual, mesh[index], max_nfev=TORUS_ITERATIONS, xtol=1e-15, ftol=1e-15, gtol=1e-15)
            best = min(best, float(np.linalg.norm(fit.fun)))
            if best <= tol:
                break
        return best


def sample_torus_points(q: int, d: int, n: int, rng: Optional[np.random.Generator] = None) -> np.ndarray:
    """n points of the building reference drawn uniformly in the torus angles, shape (n, d − 1)."""
    return TorusImage(q, d).sample(n, rng or np.random.default_rng(0))


@dataclass
class ReferenceSpectrum:
    """
    A universal-cover spectrum with a deterministic membership test.

    Attributes:
        kind: One of ``tree``, ``tree-edges``, ``building``, ``explicit``, ``direct-sum``.
        params: Integer parameters (k for trees, q and d for buildings).
        points: The cloud of an ``explicit`` reference.
        parts: The two summands of a ``direct-sum`` reference.
        empirical: The reference is a sampled spectrum, not a closed form.
    """

    kind: str
    params: Dict[str, int] = field(default_factory=dict)
    points: Optional[np.ndarray] = None
    parts: Tuple["ReferenceSpectrum", ...] = ()
    empirical: bool = False

    def __post_init__(self):
        if self.kind not in KINDS:
            raise UnsupportedKind(self.kind)
        if self.kind in ("tree", "tree-edges") and self.params.get("k", 0) < 2:
            raise InvalidParams("tree references need k >= 2")
        if self.kind == "building":
            if self.params.get("d", 0) < 2 or self.params.get("q", 0) < 2:
                raise InvalidParams("building references need q >= 2 and d >= 2")
        if self.kind == "explicit":
            if self.points is None:
                raise InvalidParams("explicit references need points")
            cloud = np.asarray(self.points, dtype=np.complex128)
            self.points = cloud[:, None] if cloud.ndim == 1 else cloud
        if self.kind == "direct-sum" and len(self.parts) != 2:
            raise InvalidParams("direct-sum references need two parts")

    @classmethod
    def tree(cls, k: int) -> "ReferenceSpectrum":
        return cls("tree", {"k": k})

    @classmethod
    def tree_edges(cls, k: int) -> "ReferenceSpectrum":
        return cls("tree-edges", {"k": k})

    @classmethod
    def building(cls, q: int, d: int) -> "ReferenceSpectrum":
        return cls("building", {"q": q, "d": d})

    @classmethod
    def explicit(cls, points, empirical: bool = True) -> "ReferenceSpectrum":
        return cls("explicit", points=np.asarray(points), empirical=empirical)

    @classmethod
    def direct_sum(cls, first: "ReferenceSpectrum", second: "ReferenceSpectrum") -> "ReferenceSpectrum":
        return cls("direct-sum", parts=(first, second), empirical=first.empirical or second.empirical)

    @property
    def arity(self) -> int:
        if self.kind == "building":
            return self.params["d"] - 1
        if self.kind == "explicit":
            return self.points.shape[1]
        if self.kind == "direct-sum":
            return self.parts[0].arity + self.parts[1].arity
        return 1

    def describe(self) -> str:
        if self.kind == "direct-sum":
            return f"{self.parts[0].describe()} + {self.parts[1].describe()}"
        if self.kind == "explicit":
            return f"explicit:{len(self.points)} points"
        return f"{self.kind}:" + ",".join(f"{key}={value}" for key, value in sorted(self.params.items()))

    def intervals(self) -> List[Tuple[float, float]]:
        """Real intervals (possibly degenerate) making up a one-dimensional reference."""
        if self.kind == "tree":
            radius = 2 * sqrt(self.params["k"] - 1)
            return [(-radius, radius)]
        if self.kind == "tree-edges":
            k = self.params["k"]
            radius = 2 * sqrt(k - 1)
            return [(k - 2 - radius, k - 2 + radius), (-2.0, -2.0)]
        if self.kind == "building" and self.params["d"] == 2:
            radius = 2 * sqrt(self.params["q"])
            return [(-radius, radius)]
        raise InvalidParams(f"{self.describe()} is not a union of intervals")

    @cached_property
    def _torus(self) -> TorusImage:
        return TorusImage(self.params["q"], self.params["d"])

    def distance(self, point: Sequence[complex], tol: float = TORUS_ACCEPT) -> float:
        """Distance from ``point`` to the reference set."""
        target = np.asarray(point, dtype=np.complex128).reshape(-1)
        if self.kind == "direct-sum":
            first, second = self.parts
            head, tail = target[: first.arity], target[first.arity :]
            via_first = max(first.distance(head, tol), float(np.max(np.abs(tail), initial=0.0)))
            via_second = max(float(np.max(np.abs(head), initial=0.0)), second.distance(tail, tol))
            return min(via_first, via_second)
        if self.kind == "explicit":
            return float(np.min(np.max(np.abs(self.points - target[None, :]), axis=1)))
        if self.kind == "building" and self.params["d"] > 2:
            return self._torus.distance(target, tol)
        z = complex(target[0])
        gaps = []
        for low, high in self.intervals():
            gaps.append(float(np.hypot(max(low - z.real, 0.0, z.real - high), z.imag)))
        return min(gaps)

    def contains(self, point: Sequence[complex], tol: float = VERDICT_TOL) -> bool:
        return self.distance(point, tol) <= tol

    def sample(self, n: int, rng: Optional[np.random.Generator] = None) -> np.ndarray:
        """Points of the reference, shape (n, arity): evenly spaced on intervals, random on tori."""
        if self.kind == "explicit":
            return self.points
        if self.kind == "building" and self.params["d"] > 2:
            return self._torus.sample(n, rng or np.random.default_rng(0))
        if self.kind == "direct-sum":
            first = self.parts[0].sample(n, rng)
            second = self.parts[1].sample(n, rng)
            left = np.hstack([first, np.zeros((len(first), self.parts[1].arity))])
            right = np.hstack([np.zeros((len(second), self.parts[0].arity)), second])
            return np.vstack([left, right])
        low, high = self.intervals()[0]
        return np.linspace(low, high, n).astype(np.complex128)[:, None]


def reference_trivial_points(reference: ReferenceSpectrum) -> np.ndarray:
    """
    Trivial points of the universal cover itself: {±k} on the k-regular tree,
    (G_k ζ^{jk})_k for j in Z/d on the building, G_k the Gaussian binomials.
    """
    if reference.kind == "tree":
        k = reference.params["k"]
        return np.array([[k], [-k]], dtype=np.complex128)
    if reference.kind == "tree-edges":
        k = reference.params["k"]
        return np.array([[2 * k - 2]], dtype=np.complex128)
    if reference.kind == "building":
        q, d = reference.params["q"], reference.params["d"]
        zeta = np.exp(2j * np.pi / d)
        return np.array(
            [[gaussian_binomial(d, k, q) * zeta ** (j * k) for k in range(1, d)] for j in range(d)],
            dtype=np.complex128,
        )
    if reference.kind == "direct-sum":
        first, second = (reference_trivial_points(part) for part in reference.parts)
        left = np.hstack([first, np.zeros((len(first), reference.parts[1].arity))])
        right = np.hstack([np.zeros((len(second), reference.parts[0].arity)), second])
        return np.vstack([left, right])
    return np.zeros((0, reference.arity), dtype=np.complex128)


def reference_spectrum(kind: str, params: Optional[Dict[str, int]] = None, points=None) -> ReferenceSpectrum:
    """
    Reference spectrum of a universal cover by kind.

    ``tree`` and ``tree-edges`` take ``k``; ``building`` takes ``q``, ``d`` and
    optionally ``r`` (d = 2 only, giving the (q^r + 1)-regular tree);
    ``explicit`` takes a point cloud.

    Raises:
        UnsupportedKind: unknown kind.
        InvalidParams: missing or invalid parameters.
    """
    params = dict(params or {})
    if kind == "explicit":
        return ReferenceSpectrum.explicit(points)
    if kind not in ("tree", "tree-edges", "building"):
        raise UnsupportedKind(kind)
    r = params.pop("r", 1)
    if kind == "building" and r > 1:
        if params.get("d") != 2:
            raise InvalidParams("r > 1 is only supported for d = 2")
        return ReferenceSpectrum.tree(params.get("q", 0) ** r + 1)
    return ReferenceSpectrum(kind, params)


def parse_reference(text: str) -> ReferenceSpectrum:
    """
    Parse ``tree:k=3``, ``tree-edges:k=3`` or ``building:q=2,d=3``.

    Raises:
        UnsupportedKind: unknown kind.
        InvalidParams: malformed parameters.
    """
    kind, _, rest = text.strip().partition(":")
    if kind not in ("tree", "tree-edges", "building"):
        raise UnsupportedKind(kind)
    params: Dict[str, int] = {}
    for item in filter(None, rest.split(",")):
        key, eq, value = item.partition("=")
        if not eq:
            raise InvalidParams(f"malformed reference parameter {item!r}")
        try:
            params[key.strip()] = int(value)
        except ValueError as e:
            raise InvalidParams(f"reference parameter {key} must be an integer") from e
    return reference_spectrum(kind, params)


def empirical_reference(operator, interior_cells: Sequence[int]) -> ReferenceSpectrum:
    """
    Spectrum cloud of an operator on a generated ball, restricted to rows and
    columns of cells away from the frontier.
    """
    rows = np.asarray(sorted(interior_cells))
    if rows.size == 0:
        raise InvalidParams("no interior cells to sample a reference from")
    block = operator.dense()[np.ix_(rows, rows)]
    values = np.linalg.eigvals(block)
    logger.warning(f"Using an empirical reference of {len(values)} points")
    return ReferenceSpectrum.explicit(values[:, None], empirical=True)
