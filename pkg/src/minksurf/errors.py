"""Exception hierarchy for minksurf."""


class MinksurfError(Exception):
    """Base class for all library errors."""


class DomainError(MinksurfError):
    """Parameter value outside an evaluator's open domain (or too close to its edge)."""


class CausalityError(MinksurfError):
    """A vector or tangent plane has the wrong causal character for the requested operation."""


class WrongFrameError(MinksurfError):
    """The requested moving frame does not apply to this curve (use the other frame kind)."""


class DegenerateCurveError(MinksurfError):
    """Curvature vanishes: the curve is locally a straight line and carries no frame."""


class PlanarCurveError(MinksurfError):
    """Operation requires a non-planar curve (torsion is zero within tolerance)."""


class ParameterError(MinksurfError):
    """A constructor parameter violates its constraint; the message names the constraint."""


class PreconditionError(MinksurfError):
    """A documented operation precondition does not hold for the given input."""


class RegularityError(MinksurfError):
    """The surface parametrization is degenerate at the requested point."""


class ConfigError(MinksurfError):
    """Malformed verification or CLI configuration."""
