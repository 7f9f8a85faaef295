"""Exception hierarchy for the ductwave package."""


class DuctwaveError(Exception):
    """Base class for all ductwave errors."""


class InvalidStateError(DuctwaveError):
    """A gas state violates positivity of density or internal energy.

    Carries optional node/step context so blow-ups can be located.
    """

    def __init__(self, message, node=None, step=None):
        if node is not None:
            message = f"{message} (node {node})"
        if step is not None:
            message = f"{message} (step {step})"
        super().__init__(message)
        self.node = node
        self.step = step


class InvalidCharacteristicsError(DuctwaveError):
    """Characteristic triple with r_plus <= r_minus (non-positive sound speed)."""


class BlowUpError(DuctwaveError):
    """The time integration produced an invalid state.

    Attributes step and node identify where positivity first failed.
    """

    def __init__(self, message, step, node):
        super().__init__(f"{message} (step {step}, node {node})")
        self.step = step
        self.node = node


class UnsupportedRegimeError(DuctwaveError):
    """Boundary state left the subsonic regime the characteristic update assumes."""


class ShockRegimeError(DuctwaveError):
    """Simple-wave oracle evaluated at or beyond the shock-formation distance."""


class OutOfValidityError(DuctwaveError):
    """Wide-tube dispersion correction outside its validity range."""


class MisalignedWindowError(DuctwaveError):
    """Signal window does not cover an integer number of periods."""


class UndefinedReferenceError(DuctwaveError):
    """Relative error requested against a zero-norm reference."""


class SignalRangeError(DuctwaveError):
    """Sampled inflow signal evaluated beyond its tabulated range."""


class ConfigError(DuctwaveError):
    """Configuration document could not be parsed or validated.

    line_no is 1-based when the error is attached to a specific line.
    """

    def __init__(self, message, line_no=None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no
