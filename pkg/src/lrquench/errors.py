"""Exception hierarchy. Numerical failures are distinct from bad input so the
CLI can map them to distinct exit codes."""


class LrquenchError(Exception):
    """Base class for all package errors."""


class ConfigError(LrquenchError):
    """Invalid experiment configuration (exit code 2 in the CLI)."""


class NumericalError(LrquenchError):
    """Numerical failure in the pipeline (exit code 3 in the CLI)."""


class DegenerateBlock(NumericalError):
    """A momentum block has an exact level crossing; the ground-state
    projector is ill-defined. Perturb the parameters."""


class GaplessBlock(NumericalError):
    """A momentum block is gapless; Bogoliubov angles are undefined."""


class OddDimension(NumericalError):
    """Pfaffian of an odd-dimensional matrix requested."""


class NotSkew(NumericalError):
    """Antisymmetrization correction exceeded tolerance."""


class PositivityViolation(NumericalError):
    """A reduced density matrix has a significantly negative eigenvalue,
    signalling an upstream correlator error."""


class InsufficientData(NumericalError):
    """Too few usable points for a scaling fit."""


class AllBelowFloor(NumericalError):
    """Every profile point sits below the noise floor."""


class MixedModels(NumericalError):
    """A finite-size sweep mixes algebraic and exponential profiles."""


class InconclusiveVerdict(NumericalError):
    """A scaling verdict was inconclusive where a decision is required."""


class TooLarge(LrquenchError):
    """Dense reference requested beyond its size bound."""
