"""Typed domain errors with stable names for CLI serialization."""


class FirwbError(Exception):
    """Base class for all domain errors raised by this package."""

    #: stable identifier used in JSON error output
    name = "Error"


class ZeroDenominator(FirwbError):
    name = "ZeroDenominator"


class NonInjectiveMap(FirwbError):
    name = "NonInjectiveMap"


class DenominatorVanishes(FirwbError):
    name = "DenominatorVanishes"


class ObjectMismatch(FirwbError):
    name = "ObjectMismatch"


class InvalidLabel(FirwbError):
    name = "InvalidLabel"


class InvalidGeneratorImage(FirwbError):
    name = "InvalidGeneratorImage"


class LevelTooSmall(FirwbError):
    name = "LevelTooSmall"


class DescentFailure(FirwbError):
    name = "DescentFailure"


class NotACocycle(FirwbError):
    name = "NotACocycle"


class NoGoodPoint(FirwbError):
    name = "NoGoodPoint"


class NonZeroObstruction(FirwbError):
    name = "NonZeroObstruction"


class InconsistentFit(FirwbError):
    name = "InconsistentFit"


class DependentBasis(FirwbError):
    name = "DependentBasis"


class CertificateFailure(FirwbError):
    name = "CertificateFailure"


class DegreeBoundExceeded(FirwbError):
    name = "DegreeBoundExceeded"


class SyzygySearchExhausted(FirwbError):
    name = "SyzygySearchExhausted"


class ParseError(FirwbError):
    name = "ParseError"
