"""Exception types shared by the engine."""


class HurwitzRingError(Exception):
    """Base class for engine errors."""


class CapExceeded(HurwitzRingError):
    """A configured size cap was hit; ``cap`` names it, ``limit`` gives its value."""

    def __init__(self, cap: str, limit: int, detail: str = ""):
        self.cap = cap
        self.limit = limit
        self.detail = detail
        msg = f"{cap} exceeded (limit {limit})"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class NotAMember(HurwitzRingError, ValueError):
    pass


class InvalidInput(HurwitzRingError, ValueError):
    pass


class InsufficientData(HurwitzRingError):
    """Raised when a table window is too small to support a conclusion."""


class SettingViolated(HurwitzRingError, ValueError):
    pass


class OmegaUndefined(HurwitzRingError, ValueError):
    pass
