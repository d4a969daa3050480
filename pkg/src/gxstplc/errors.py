"""Exception types shared across the library."""


class GxstplcError(Exception):
    """Base class for all library-specific failures."""


class DuplicateNodes(GxstplcError):
    """Evaluation points that must be distinct collide."""


class SingularMatrix(GxstplcError):
    """A square system has no unique solution."""


class Infeasible(GxstplcError):
    """The linear program has no feasible point."""


class Unbounded(GxstplcError):
    """The linear program's objective is unbounded below."""


class ScaleExceeded(GxstplcError):
    """An exhaustive procedure was asked to enumerate too large a space."""


class DegeneratePattern(GxstplcError):
    """A storage pattern cannot support the requested thresholds."""


class DegenerateInput(GxstplcError):
    """Augmentation was given a degenerate capacity result."""


class DegenerateConfig(GxstplcError):
    """A scheme configuration admits no retrievable message symbols."""


class FieldTooSmall(GxstplcError):
    """The requested field cannot hold enough distinct evaluation points."""


class DimensionMismatch(GxstplcError):
    """Banks or vectors disagree with the configuration's shapes."""


class UnknownDemo(GxstplcError):
    """No built-in demo is registered under the requested name."""
