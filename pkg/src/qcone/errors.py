"""Exception types shared across the package."""

from __future__ import annotations


class QconeError(Exception):
    """Base class for all domain errors raised by this package."""


class ShapeError(QconeError):
    """Operands have incompatible dimensions."""


class ChainConditionError(QconeError):
    """A double boundary is nonzero somewhere.

    Carries the degree at which the violation occurs, the index and label
    of a witness basis element whose double boundary is nonzero, and the
    row index of one nonzero component of that double boundary.
    """

    def __init__(self, degree: int, witness_col: int, witness_label=None,
                 nonzero_row: int | None = None, message: str | None = None):
        self.degree = degree
        self.witness_col = witness_col
        self.witness_label = witness_label
        self.nonzero_row = nonzero_row
        if message is None:
            message = (f"dd != 0 at degree {degree}: basis element "
                       f"{witness_label if witness_label is not None else witness_col} "
                       f"has nonzero double boundary (row {nonzero_row})")
        super().__init__(message)


class ConeAssemblyError(ChainConditionError):
    """Chain condition fails in an assembled cone; names the level pair."""

    def __init__(self, degree, witness_col, witness_label, nonzero_row,
                 source_level, target_level):
        self.source_level = source_level
        self.target_level = target_level
        message = (f"cone chain condition fails: level pair "
                   f"({target_level}, {source_level}) at degree {degree}, "
                   f"witness cell {witness_label}")
        super().__init__(degree, witness_col, witness_label, nonzero_row, message)


class NotACycleError(QconeError):
    """A vector handed to a quotient map has nonzero boundary."""

    def __init__(self, degree: int, boundary: int):
        self.degree = degree
        self.boundary = boundary
        super().__init__(f"vector at degree {degree} is not a cycle "
                         f"(boundary mask {bin(boundary)})")


class ContainmentError(QconeError):
    """Subspace inclusion fails; carries the index of a witness column."""

    def __init__(self, witness_col: int):
        self.witness_col = witness_col
        super().__init__(f"column {witness_col} is not contained in the ambient span")


class RegularityError(QconeError):
    """A cone fails its regularity requirement."""

    def __init__(self, failures):
        self.failures = list(failures)
        super().__init__(f"regularity fails at (level, degree, dim): {self.failures}")


class MalformedSpecError(QconeError):
    """Cone block data is inconsistent with the commuting-square conditions."""


class IsomorphismError(QconeError):
    """A map that should be an isomorphism is non-square or singular."""


class CommutationError(QconeError):
    """X and Z generators anticommute; carries a witness pair."""

    def __init__(self, x_gen: int, z_gen: int):
        self.x_gen = x_gen
        self.z_gen = z_gen
        super().__init__(f"X generator {x_gen} and Z generator {z_gen} "
                         f"overlap on an odd number of qubits")


class DistanceCapExceeded(QconeError):
    """The exhaustive search space is larger than the configured cap."""

    def __init__(self, kernel_dim: int, cap: int):
        self.kernel_dim = kernel_dim
        self.cap = cap
        super().__init__(f"kernel dimension {kernel_dim} exceeds enumeration cap {cap}")


class ConstructionError(QconeError):
    """A named construction failed one of its defining checks.

    ``transcript`` holds one line per check performed.
    """

    def __init__(self, message: str, transcript=()):
        self.transcript = list(transcript)
        text = message
        if self.transcript:
            text += "\n" + "\n".join(self.transcript)
        super().__init__(text)
