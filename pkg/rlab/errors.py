"""
Exception hierarchy for rlab.

``ValidationError`` subclasses signal bad input (CLI exit code 2);
``NumericalError`` subclasses signal a failed numerical contract (exit code 3).
"""
from typing import Any, Optional, Tuple


class RlabError(Exception):
    """Base class for all rlab errors."""

    exit_code = 1


class ValidationError(RlabError, ValueError):
    exit_code = 2


class NumericalError(RlabError, ArithmeticError):
    exit_code = 3


# complex-core

class DisconnectedInput(ValidationError):
    def __init__(self, components: int):
        self.components = components
        super().__init__(f"complex is not connected ({components} components)")


class MalformedCell(ValidationError):
    def __init__(self, cell: Any, reason: str = "repeated vertices"):
        self.cell = cell
        super().__init__(f"malformed cell {cell!r}: {reason}")


class CellNotFound(ValidationError):
    def __init__(self, cell: Any):
        self.cell = cell
        super().__init__(f"cell {cell!r} is not in the complex")


class NotAnAutomorphism(ValidationError):
    def __init__(self, generator: int, cell: Any):
        self.generator = generator
        self.cell = cell
        super().__init__(f"generator {generator} does not map cell {cell!r} to a cell")


class GroupTooLarge(ValidationError):
    def __init__(self, cap: int):
        self.cap = cap
        super().__init__(f"group enumeration exceeded {cap} elements")


class NotAdmissible(ValidationError):
    def __init__(self, condition: str, detail: str):
        self.condition = condition
        super().__init__(f"action is not admissible ({condition}): {detail}")


class NotACover(ValidationError):
    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(f"not a cover map: {reason}")


# operators

class DimensionOutOfRange(ValidationError):
    def __init__(self, requested: int, dimension: int):
        self.requested = requested
        self.dimension = dimension
        super().__init__(f"dimension {requested} out of range for a {dimension}-dimensional complex")


class IndexConstraintViolated(ValidationError):
    def __init__(self, i: int, j: int):
        self.i, self.j = i, j
        super().__init__(f"a_{{{i};{j}}} requires 0 <= i < j <= 2i+1")


# building

class BudgetExceeded(ValidationError):
    def __init__(self, estimate: int, budget: int):
        self.estimate = estimate
        self.budget = budget
        super().__init__(f"estimated {estimate} vertices exceeds budget {budget}")


class ColoringInconsistent(ValidationError):
    def __init__(self, edge: Tuple[int, int], detail: str):
        self.edge = edge
        super().__init__(f"inconsistent coloring on edge {edge}: {detail}")


class SingularMatrix(NumericalError):
    def __init__(self):
        super().__init__("lattice matrix is singular over the Laurent field")


# spectra

class NotCommuting(NumericalError):
    def __init__(self, pair: Tuple[int, int], defect: float):
        self.pair = pair
        self.defect = defect
        super().__init__(f"operators {pair} do not commute (defect {defect:.3e})")


class NotNormal(NumericalError):
    def __init__(self, index: int, defect: float):
        self.index = index
        self.defect = defect
        super().__init__(f"operator {index} is not normal (defect {defect:.3e})")


class ReconstructionFailed(NumericalError):
    def __init__(self, index: int, residual: float):
        self.index = index
        self.residual = residual
        super().__init__(f"diagonalization residual {residual:.3e} for operator {index}")


class NotEquitable(ValidationError):
    def __init__(self, classes: Tuple[int, int], operator: int = 0):
        self.classes = classes
        self.operator = operator
        super().__init__(f"color partition is not equitable for operator {operator} between classes {classes}")


class UnsupportedKind(ValidationError):
    def __init__(self, kind: str):
        self.kind = kind
        super().__init__(f"unsupported kind {kind!r}")


class ArityMismatch(ValidationError):
    def __init__(self, expected: int, got: int):
        self.expected, self.got = expected, got
        super().__init__(f"spectral points have arity {got}, expected {expected}")


class DimensionUnsupported(ValidationError):
    def __init__(self, dimension: int):
        self.dimension = dimension
        super().__init__(f"operation supports graphs only, got dimension {dimension}")


# cli-io

class InvalidParams(ValidationError):
    pass


class FileFormatError(ValidationError):
    def __init__(self, path: Any, detail: str, line: Optional[int] = None):
        self.path = path
        self.line = line
        where = f"{path}:{line}" if line is not None else f"{path}"
        super().__init__(f"{where}: {detail}")
