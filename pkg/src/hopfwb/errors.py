"""Exception types shared across the workbench."""


class PresentationError(ValueError):
    """Malformed or non-homogeneous presentation input."""


class LevelOverflowError(ValueError):
    """An operation needs words longer than the computed truncation level."""


class ResourceLimitError(RuntimeError):
    """Word count per level exceeds the configured bound."""


class DegenerateGeneratorsError(ValueError):
    """Generator classes collapse or vanish at level one."""
