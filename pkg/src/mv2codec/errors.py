"""Exception hierarchy.

ContractError and CapacityError are caller mistakes (the CLI reports them as
usage errors, exit 1); DataError and its subclasses are malformed or corrupted
input data (exit 2).
"""


class Mv2Error(Exception):
    """Base class for every error raised by this package."""


class ContractError(Mv2Error, ValueError):
    """A precondition on arguments was violated."""


class CapacityError(Mv2Error):
    """An alphabet enumeration would exceed the configured cap."""


class DegenerateRatioError(Mv2Error, ZeroDivisionError):
    """Growth closed form evaluated at ratio 1, where it divides by zero."""


class DataError(Mv2Error):
    """Base class for malformed input data and corrupted streams."""


class InvalidDigitError(DataError):
    """A byte in a digit-format file is not a valid pit for the radix."""

    def __init__(self, offset: int, value: int, p: int):
        super().__init__(f"byte {value} at offset {offset} is not a radix-{p} digit")
        self.offset = offset
        self.value = value
        self.p = p


class CorruptionError(DataError):
    """A stream contains values impossible for a well-formed encoding."""


class UnknownCodeError(CorruptionError):
    """A (length, value) pair is not assigned in the codebook."""


class TruncationError(DataError):
    """A stream or container section ended before its declared content."""


class LengthMismatchError(DataError):
    """Streams were not consumed exactly, or produced the wrong pit count."""


class ContainerError(DataError):
    """A container field holds an impossible value."""


class BadMagicError(ContainerError):
    """The input does not start with the container magic."""


class UnsupportedVersionError(ContainerError):
    """The container declares a format version this build cannot read."""


class ChecksumError(ContainerError):
    """The container checksum does not match its content."""
