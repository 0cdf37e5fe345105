"""Domain errors.

Every error that group arithmetic or the decomposition engine can raise on
bad input derives from DomainError.  The class name doubles as the machine
readable error code emitted by the command line interface, so names here are
part of the wire format and must stay stable.
"""

from __future__ import annotations


class DomainError(Exception):
    """A precondition of an operation was violated by otherwise well-formed input."""

    @property
    def name(self) -> str:
        return type(self).__name__


class ContextMismatch(DomainError):
    """Operands live in groups of different rank or class."""


class IndexOutOfRange(DomainError):
    """A generator index is outside 1..rank."""


class BadClass(DomainError):
    """A truncation or lift targets an invalid nilpotency class."""


class NotCentral(DomainError):
    """Element is not in the last lower-central-series term."""


class NotLieElement(DomainError):
    """Homogeneous polynomial is not a Lie ring element."""


class NotAutomorphism(DomainError):
    """Endomorphism is not invertible (abelianization determinant is not +-1)."""


class NotInGamma2(DomainError):
    """Assigned offset is not in the commutator subgroup."""


class PermutationInvalid(DomainError):
    """Mapping is not a bijection of 1..rank."""


class PartitionInvalid(DomainError):
    """Blocks do not partition the generator set as required."""


class BlockConstraintViolated(DomainError):
    """A blockwise piece leaves its prescribed sub-basis."""


class CertificateInvalid(DomainError):
    """A moiety certificate does not hold for the map it accompanies."""


class NotUnimodular(DomainError):
    """Integer matrix does not have determinant +-1."""


class DoesNotFixD(DomainError):
    """Map moves a generator it was required to fix."""


class RankTooSmall(DomainError):
    """Not enough free generators outside the fixed set for the construction."""


class NotCentralIA(DomainError):
    """Map does not induce the identity one class down."""


class MalformedInput(DomainError):
    """Input payload does not match the documented JSON schema."""
