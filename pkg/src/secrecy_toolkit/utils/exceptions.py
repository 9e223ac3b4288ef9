"""Custom exceptions for the secrecy toolkit."""

from pathlib import Path
from typing import Optional, Sequence


class SecrecyToolkitError(Exception):
    """Base exception for all secrecy toolkit errors."""

    pass


# ===== Distribution Errors =====


class DistributionError(SecrecyToolkitError):
    """Base exception for probability bookkeeping errors."""

    pass


class InvalidDistributionError(DistributionError):
    """Raised when a pmf has a negative entry or does not sum to one."""

    def __init__(self, name: str, reason: str):
        super().__init__(f"Invalid distribution '{name}': {reason}")
        self.name = name
        self.reason = reason


class DimensionMismatchError(DistributionError):
    """Raised when factors or tables do not chain dimensionally."""

    def __init__(self, context: str, expected: object, actual: object):
        super().__init__(
            f"Dimension mismatch in {context}: expected {expected}, got {actual}"
        )
        self.context = context
        self.expected = expected
        self.actual = actual


class UnknownVariableError(DistributionError):
    """Raised when a variable name is not part of a joint distribution."""

    def __init__(self, names: Sequence[str]):
        super().__init__(f"Unknown variable(s): {', '.join(sorted(names))}")
        self.names = tuple(names)


class OverlappingVariablesError(DistributionError):
    """Raised when information-measure arguments share variables."""

    def __init__(self, names: Sequence[str]):
        super().__init__(
            f"Variable sets must be pairwise disjoint; shared: {', '.join(sorted(names))}"
        )
        self.names = tuple(names)


# ===== Channel Errors =====


class ChannelError(SecrecyToolkitError):
    """Base exception for channel-related errors."""

    pass


class ChannelPreconditionError(ChannelError):
    """Raised when a channel does not satisfy a theorem's hypotheses."""

    def __init__(self, check: str, reason: str):
        super().__init__(f"Channel check '{check}' failed: {reason}")
        self.check = check
        self.reason = reason


# ===== Polyhedral Errors =====


class PolyhedralError(SecrecyToolkitError):
    """Base exception for linear-system errors."""

    pass


class UnboundedRegionError(PolyhedralError):
    """Raised when a projected rate region is unbounded."""

    def __init__(self, direction: tuple):
        super().__init__(
            f"Projected region is unbounded along direction {direction}; "
            f"include entropy bounds or nonnegativity constraints"
        )
        self.direction = direction


class InequalityParseError(PolyhedralError):
    """Raised when a plain-text inequality cannot be parsed."""

    def __init__(self, line_no: int, text: str, reason: str):
        super().__init__(f"Line {line_no}: cannot parse '{text}': {reason}")
        self.line_no = line_no
        self.text = text
        self.reason = reason


class LinearProgramError(PolyhedralError):
    """Raised when the exact simplex cannot complete."""

    def __init__(self, reason: str):
        super().__init__(f"Linear program failed: {reason}")
        self.reason = reason


# ===== Spec File Errors =====


class SpecFileError(SecrecyToolkitError):
    """Base exception for input file errors."""

    pass


class SpecParseError(SpecFileError):
    """Raised when an input file is not valid TOML."""

    def __init__(
        self,
        path: Path | str,
        reason: str,
        line: Optional[int] = None,
        column: Optional[int] = None,
    ):
        where = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(f"Cannot parse '{path}'{where}: {reason}")
        self.path = str(path)
        self.line = line
        self.column = column
        self.reason = reason


class SpecFieldError(SpecFileError):
    """Raised when a parsed input file violates its schema."""

    def __init__(self, path: Path | str, field: str, reason: str):
        super().__init__(f"Invalid field '{field}' in '{path}': {reason}")
        self.path = str(path)
        self.field = field
        self.reason = reason


# ===== Simulation Errors =====


class SimulationError(SecrecyToolkitError):
    """Base exception for coding-scheme simulation errors."""

    pass


class SimulationConfigError(SimulationError):
    """Raised when simulation parameters violate a required bound."""

    def __init__(self, bound: str, reason: str):
        super().__init__(f"Simulation bound '{bound}' violated: {reason}")
        self.bound = bound
        self.reason = reason


class IndexRangeError(SimulationError):
    """Raised when a message or codebook index is out of range."""

    def __init__(self, name: str, value: int, size: int):
        super().__init__(f"Index {name}={value} outside [0, {size})")
        self.name = name
        self.value = value
        self.size = size


# ===== Output Errors =====


class OutputError(SecrecyToolkitError):
    """Base exception for output-related errors."""

    pass


class OutputWriteError(OutputError):
    """Raised when an output file cannot be written."""

    def __init__(self, path: Path | str, reason: str):
        super().__init__(f"Failed to write '{path}': {reason}")
        self.path = str(path)
        self.reason = reason
