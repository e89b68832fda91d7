"""Exception hierarchy shared by all modules."""


class Nil7Error(Exception):
    """Base class for all package-specific errors."""


class FieldError(Nil7Error):
    """Invalid field construction or element operation."""


class NotASquareError(FieldError):
    """A square root was requested for a non-square element."""


class SquarefreeBoundExceeded(FieldError):
    """Integer factorization needed a prime beyond the trial-division bound."""


class LinAlgError(Nil7Error):
    """Matrix shape mismatch, singular system, or inconsistent solve."""


class FormError(Nil7Error):
    """Invalid exterior form operation or unparsable form expression."""


class AlgebraError(Nil7Error):
    """Structurally invalid algebra or presentation input."""


class NotFlatError(AlgebraError):
    """Differential does not square to zero (Jacobi identity fails)."""


class NotMinimalError(AlgebraError):
    """Input is not a length-2 minimal algebra generated in degree 1."""


class ClassificationError(Nil7Error):
    """Internal inconsistency detected during classification."""


class WrongDimension(AlgebraError):
    """Classification input is not 7-dimensional."""


class WrongLength(NotMinimalError):
    """Characteristic filtration length differs from 2."""


class DependentPencil(ClassificationError):
    """The two (5,2) differentials are linearly dependent."""


class DependentNet(ClassificationError):
    """The three (4,3) differentials are linearly dependent."""


class ZeroBivector(ClassificationError):
    """The single (6,1) differential vanishes."""


class UnexpectedGcdDegree(ClassificationError):
    """Pencil invariant gcd has degree 1, which no valid input can produce."""


class CertificateError(Nil7Error):
    """A constructed isomorphism certificate failed verification."""


class PointSearchExceeded(Nil7Error):
    """Rational point search on a conic exhausted its height bound."""


class InputError(Nil7Error):
    """Malformed JSON input or CLI arguments."""
