"""Exception types shared across the package."""


class FlowpolyError(Exception):
    """Base class for all library errors."""


class ValidationError(FlowpolyError, ValueError):
    """Input violates a structural invariant."""


class EnumerationCapError(FlowpolyError, RuntimeError):
    """An explicit enumeration would exceed the configured cap."""

    def __init__(self, needed, cap):
        super().__init__(f"enumeration of {needed} objects exceeds cap {cap}")
        self.needed = needed
        self.cap = cap
