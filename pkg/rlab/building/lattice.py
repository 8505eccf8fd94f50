"""
Homothety classes of lattices in F^d for F = F_q((t)).

A lattice L = M·O^d (O = F_q[[t]]) is stored by its column Hermite form:
an upper triangular basis with diagonal t^{a_i} and off-diagonal entries
h_ij (i < j) of t-degree below a_i. Scaling by a power of t is removed by
dividing out t while every basis entry is divisible by it.

All series arithmetic is truncated at t^N. Every lattice handled at
truncation N contains t^N·O^d, which makes the truncated Hermite form exact:
a row whose explicit columns all vanish mod t^N gets the implicit pivot
t^N e_i.
"""
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations, product
from typing import Iterator, List, Sequence, Tuple, Union

import galois
import numpy as np

from rlab.complexes.covers import permutation_sign
from rlab.errors import InvalidParams, SingularMatrix
from rlab.logging_config import get_logger

logger = get_logger("building.lattice")

Polynomial = Union[int, Sequence[int]]


@dataclass(frozen=True)
class LocalFieldParams:
    """
    Residue field size q, matrix size d and division-algebra degree r.

    r > 1 is only supported for d = 2, where the building is the
    (q^r + 1)-regular tree.
    """

    q: int
    d: int
    r: int = 1

    def __post_init__(self):
        if not galois.is_prime_power(self.q):
            raise InvalidParams(f"q = {self.q} is not a prime power")
        if self.d < 2:
            raise InvalidParams(f"d = {self.d} must be at least 2")
        if self.r < 1:
            raise InvalidParams(f"r = {self.r} must be positive")
        if self.r > 1 and self.d != 2:
            raise InvalidParams("division algebras of degree r > 1 are only supported for d = 2")

    @property
    def field(self):
        return galois.GF(self.q)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n."""
    if not 0 <= k <= n:
        return 0
    numerator = denominator = 1
    for m in range(k):
        numerator *= q ** (n - m) - 1
        denominator *= q ** (m + 1) - 1
    return numerator // denominator


def interior_degree(params: LocalFieldParams) -> int:
    """Vertex degree of the building."""
    if params.r > 1:
        return params.q ** params.r + 1
    return sum(gaussian_binomial(params.d, k, params.q) for k in range(1, params.d))


@lru_cache(maxsize=None)
def _subspace_bases(q: int, d: int, k: int) -> Tuple[np.ndarray, ...]:
    """Column bases (d×k) of all k-dim subspaces of F_q^d, from reduced row echelon forms."""
    bases = []
    for pivots in combinations(range(d), k):
        slots = [(r, c) for r, p in enumerate(pivots) for c in range(p + 1, d) if c not in pivots]
        for values in product(range(q), repeat=len(slots)):
            rref = np.zeros((k, d), dtype=np.int64)
            for r, p in enumerate(pivots):
                rref[r, p] = 1
            for (r, c), value in zip(slots, values):
                rref[r, c] = value
            bases.append(rref.T.copy())
    return tuple(bases)


def subspaces(GF, d: int, k: int) -> List:
    """All k-dimensional subspaces of GF^d as d×k FieldArrays."""
    return [GF(basis) for basis in _subspace_bases(GF.order, d, k)]


# truncated power series: FieldArrays of length N, coefficient of t^n at index n

def _valuation(series) -> int:
    nonzero = np.flatnonzero(series.view(np.ndarray))
    return int(nonzero[0]) if nonzero.size else len(series)


def _mul(a, b):
    return np.convolve(a, b)[: len(a)]


def _shift_down(series, v: int):
    out = type(series).Zeros(len(series))
    out[: len(series) - v] = series[v:]
    return out


def _unit_inverse(unit):
    """Inverse of a unit power series by the recursive coefficient formula."""
    GF = type(unit)
    n = len(unit)
    inverse = GF.Zeros(n)
    inverse[0] = unit[0] ** -1
    for k in range(1, n):
        acc = np.sum(unit[1 : k + 1] * inverse[k - 1 :: -1][:k])
        inverse[k] = -inverse[0] * acc
    return inverse


def _column_axpy(target, scale, column) -> None:
    """target -= scale * column, row by row."""
    for row in range(target.shape[0]):
        target[row] -= _mul(scale, column[row])


def _hermite_form(generators) -> Tuple[Tuple[int, ...], Tuple[Tuple[int, ...], ...]]:
    """
    Hermite form of the lattice spanned by the columns of ``generators`` plus t^N·O^d.

    Args:
        generators: FieldArray of shape (d, m, N).

    Returns:
        Exponents a_i and the reduced upper-triangle entries (row-major, i < j).
    """
    GF = type(generators)
    d, m, N = generators.shape
    columns = [generators[:, c, :].copy() for c in range(m)]
    basis = GF.Zeros((d, d, N))
    exponents = [N] * d

    for i in reversed(range(d)):
        valuations = [_valuation(c[i]) for c in columns]
        if not columns or min(valuations) >= N:
            continue
        best = int(np.argmin(valuations))
        v = valuations[best]
        pivot = columns.pop(best)
        inverse = _unit_inverse(_shift_down(pivot[i], v))
        pivot = GF(np.stack([_mul(inverse, pivot[row]) for row in range(d)]))
        pivot[i] = 0
        pivot[i, v] = 1
        for c in columns:
            scale = _shift_down(c[i], v)
            if np.any(scale.view(np.ndarray)):
                _column_axpy(c, scale, pivot)
            c[i] = 0
        basis[:, i, :] = pivot
        exponents[i] = v

    for j in range(d):
        if exponents[j] >= N:
            basis[:, j, :] = 0
            continue
        for i in range(j - 1, -1, -1):
            a = exponents[i]
            if a >= N:
                continue
            quotient = _shift_down(basis[i, j], a)
            if np.any(quotient.view(np.ndarray)):
                column = basis[:, j, :].copy()
                _column_axpy(column, quotient, basis[:, i, :])
                basis[:, j, :] = column

    entries = tuple(
        tuple(int(x) for x in basis[i, j, : exponents[i]]) for i in range(d) for j in range(i + 1, d)
    )
    return tuple(exponents), entries


def _normalize(exponents: Tuple[int, ...], entries: Tuple[Tuple[int, ...], ...]):
    """Divide by t while the whole basis is divisible by t; returns (exponents, entries, shifts)."""
    shifts = 0
    while all(a >= 1 for a in exponents) and all(h[0] == 0 for h in entries):
        exponents = tuple(a - 1 for a in exponents)
        entries = tuple(h[1:] for h in entries)
        shifts += 1
    return exponents, entries, shifts


@dataclass(frozen=True)
class LatticeClass:
    """
    Canonical representative of a homothety class of lattices.

    Attributes:
        d: Matrix size.
        exponents: Diagonal t-exponents a_i of the Hermite form.
        entries: Off-diagonal entries h_ij for i < j in row-major order, as
            coefficient tuples of length a_i.
        offset: The input lattice equals t^offset times this representative.
    """

    d: int
    exponents: Tuple[int, ...]
    entries: Tuple[Tuple[int, ...], ...]
    offset: int = field(default=0, compare=False)

    @classmethod
    def base(cls, d: int) -> "LatticeClass":
        return cls(d, (0,) * d, tuple(() for _ in range(d * (d - 1) // 2)))

    @property
    def color(self) -> int:
        """Determinant valuation mod d."""
        return sum(self.exponents) % self.d

    @property
    def key(self) -> Tuple:
        return self.exponents, self.entries

    def matrix(self, GF, N: int):
        """The Hermite basis truncated at t^N, shape (d, d, N)."""
        basis = GF.Zeros((self.d, self.d, N))
        pairs = [(i, j) for i in range(self.d) for j in range(i + 1, self.d)]
        for (i, j), h in zip(pairs, self.entries):
            if h:
                basis[i, j, : min(len(h), N)] = GF(list(h[:N]))
        for i, a in enumerate(self.exponents):
            if a < N:
                basis[i, i, a] = 1
        return basis


def _element(GF, c: int):
    """
    Field element of an integer coefficient.

    Prime fields reduce any integer mod q. Otherwise c must be the integer
    representation of an element, or its negative.
    """
    c = int(c)
    if GF.order == GF.characteristic:
        return GF(c % GF.order)
    if abs(c) >= GF.order:
        raise InvalidParams(f"{c} does not represent an element of GF({GF.order})")
    return -GF(-c) if c < 0 else GF(c)


def _as_series(GF, value: Polynomial, N: int):
    coefficients = [value] if isinstance(value, (int, np.integer)) else list(value)
    series = GF.Zeros(N)
    for n, c in enumerate(coefficients[:N]):
        series[n] = _element(GF, c)
    return series


def _determinant(GF, rows: Sequence[Sequence[Polynomial]]) -> galois.Poly:
    """Leibniz expansion over F_q[t]."""
    d = len(rows)
    total = galois.Poly.Zero(GF)
    for sigma in permutations(range(d)):
        term = galois.Poly.One(GF)
        for i in range(d):
            value = rows[i][sigma[i]]
            coefficients = [value] if isinstance(value, (int, np.integer)) else list(value)
            if not coefficients:
                coefficients = [0]
            term *= galois.Poly(GF([int(_element(GF, c)) for c in coefficients]), order="asc")
        total = total + term if permutation_sign(sigma) > 0 else total - term
    return total


def canonicalize(matrix: Sequence[Sequence[Polynomial]], params: LocalFieldParams, shift: int = 0) -> LatticeClass:
    """
    Canonical class of the lattice t^shift · M · O^d.

    Args:
        matrix: d×d entries, each a constant or a coefficient list of a
            polynomial in t (lowest degree first), over GF(q) with field
            elements given by their integer representation.
        params: Field parameters.
        shift: Power of t multiplying the matrix (Laurent entries).

    Raises:
        SingularMatrix: the determinant vanishes.
        InvalidParams: the matrix is not d×d.
    """
    d = params.d
    if len(matrix) != d or any(len(row) != d for row in matrix):
        raise InvalidParams(f"expected a {d}x{d} matrix")
    GF = params.field
    det = _determinant(GF, matrix)
    if det == galois.Poly.Zero(GF):
        raise SingularMatrix()
    valuation = int(min(det.nonzero_degrees))
    N = valuation + 1
    generators = GF.Zeros((d, d, N))
    for i in range(d):
        for j in range(d):
            generators[i, j] = _as_series(GF, matrix[i][j], N)
    exponents, entries = _hermite_form(generators)
    exponents, entries, shifts = _normalize(exponents, entries)
    return LatticeClass(d, exponents, entries, offset=shift + shifts)


def neighbors(vertex: LatticeClass, params: LocalFieldParams, N: int) -> Iterator[Tuple[LatticeClass, int]]:
    """
    Lattices tL ⊊ L′ ⊊ L, one per proper nonzero subspace W of L/tL.

    L′ is spanned by H·S and t·H where H is the Hermite basis of L and S a
    basis of W. Yields each neighbour with dim W; the neighbour's color is
    the vertex color plus d − dim W.
    """
    GF = params.field
    d = params.d
    H = vertex.matrix(GF, N)
    scaled = GF.Zeros((d, d, N))
    scaled[:, :, 1:] = H[:, :, : N - 1]
    for k in range(1, d):
        for S in subspaces(GF, d, k):
            generators = GF.Zeros((d, k + d, N))
            for c in range(k):
                for r in np.flatnonzero(S[:, c].view(np.ndarray)):
                    generators[:, c, :] += H[:, r, :] * S[r, c]
            generators[:, k:, :] = scaled
            exponents, entries = _hermite_form(generators)
            exponents, entries, _ = _normalize(exponents, entries)
            yield LatticeClass(d, exponents, entries), k
