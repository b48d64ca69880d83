class CeerLabWarning(UserWarning):
    """Base warning: a result is still produced but deserves attention."""

    pass


class ConvergenceWarning(CeerLabWarning):
    """A restriction surjection has not converged on queried inputs."""

    pass


class ClassGrowthWarning(CeerLabWarning):
    """A class outgrew the cap; the ceer may not have only finite classes."""

    pass


class SubalgebraStalledWarning(CeerLabWarning):
    """Generation stalled: the next level adds no new class (finite subalgebra evidence)."""

    pass


class PropertyViolationWarning(CeerLabWarning):
    """A stage-wise property that must always hold failed. This is a bug."""

    pass


class TruncationWarning(CeerLabWarning):
    """A breadth-first closure hit its cap; the result is a lower approximation."""

    pass
