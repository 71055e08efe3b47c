"""Exception types shared across the engine."""


class QweylError(Exception):
    """Base class for all engine errors."""


class NonUnit(QweylError):
    """Inversion of a scalar that is not a monomial unit."""


class NotDivisible(QweylError):
    """Series division with a numerator below the divisor's valuation."""


class OrderMismatch(QweylError):
    """Arithmetic between truncated series of different orders."""


class StepLimit(QweylError):
    """Rewriting exceeded the configured reduction-step bound."""


class NoStar(QweylError):
    """Star operation requested on a presentation without a star structure."""


class BadRule(QweylError):
    """Rewrite rule whose right-hand side is not smaller than its left-hand side."""


class BadK(QweylError):
    """Inconsistent dilation-exponent map for a q-difference algebra."""


class BadParams(QweylError):
    """Representation parameters outside their admissible range."""


class ValidationFailed(QweylError):
    """Structural validation of R-matrix data failed."""


class DegenerateEigenvalues(ValidationFailed):
    """Spectral decomposition requested at a point where eigenvalues collide."""


class NotRankOne(QweylError):
    """Trace projector does not factor as a rank-one matrix."""


class NoSolution(QweylError):
    """Linear system for an inner derivation is inconsistent within the bound."""


class ExprSyntax(QweylError):
    """Expression parse error, with byte offset and the expected token set."""

    def __init__(self, message, offset, expected=()):
        super().__init__(f"{message} at offset {offset}" +
                         (f" (expected {', '.join(sorted(expected))})" if expected else ""))
        self.offset = offset
        self.expected = frozenset(expected)
