"""Exception taxonomy shared across the toolkit.

Every error raised by grcrypt derives from GrcError so callers can catch
the whole family with one clause.  Subclasses are grouped by the layer
that raises them; nothing here carries state beyond the message except
ParseError, which records the 1-based line number of the offending line.
"""

from __future__ import annotations


class GrcError(Exception):
    """Base class for all toolkit errors."""


# --- field / linear algebra layer ---------------------------------------

class ModulusMismatchError(GrcError):
    """Two operands carry different moduli; mixing is never promoted."""


class DimensionMismatchError(GrcError):
    """Shapes are incompatible for the requested operation."""


class SingularMatrixError(GrcError):
    """An inverse or determinant-based step met a rank-deficient matrix."""


class ZeroInverseError(GrcError, ZeroDivisionError):
    """Multiplicative inverse of zero was requested."""


# --- group ring layer -----------------------------------------------------

class GroupMismatchError(GrcError):
    """Operands live over different groups (or differently listed ones)."""


class NotInvertibleError(GrcError):
    """A ring element or matrix required to be a unit is not one."""


# --- transform layer ------------------------------------------------------

class BadLengthError(GrcError):
    """Input length does not fit the requested transform."""


class PlanMismatchError(GrcError):
    """A transform plan was applied to operands it was not built for."""


class NoSuitableModulusError(GrcError):
    """No auxiliary prime modulus below the search bound fits the lift."""


# --- idempotent layer -----------------------------------------------------

class NoRootOfUnityError(GrcError):
    """The base field has no primitive root of unity of the needed order."""


class BadSplitError(GrcError):
    """A key split needs a proper, non-empty subset of the idempotent set."""


# --- coding layer -----------------------------------------------------------

class NotADivisorError(GrcError):
    """The generator polynomial does not divide x^n - 1 over the field."""


class DecodeFailure(GrcError):
    """Error weight exceeded the correction radius of the code."""


# --- protocol layer ---------------------------------------------------------

class KernelTooSmallError(GrcError):
    """Payload completion has too small a kernel to hide the plaintext."""


class CommutativityError(GrcError):
    """Matrices that the scheme requires to commute do not."""


class CombinerSingularError(GrcError):
    """The combined key element stayed singular after bounded retries."""


class TamperDetectedError(GrcError):
    """Re-encryption consistency check failed on a received ciphertext."""


class AuthFailure(GrcError):
    """Challenge-response value did not match the expected one."""


class BlockErrorGroup(GrcError):
    """One or more blocks of a multi-block run failed.

    Carries (block_index, exception) pairs in .failures.
    """

    def __init__(self, failures: list[tuple[int, Exception]]):
        self.failures = failures
        parts = ", ".join(f"block {i}: {e!r}" for i, e in failures)
        super().__init__(f"multi-block run failed in {parts}")


# --- serialization layer ------------------------------------------------------

class ParseError(GrcError):
    """Malformed GRC1 text; .line is the 1-based offending line number."""

    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")
