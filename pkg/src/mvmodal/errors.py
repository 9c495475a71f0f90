"""Shared exception types."""


class ResolutionMismatch(ValueError):
    """Two truth values (or a value and a model) disagree on the number of truth values."""


class FormulaSyntaxError(ValueError):
    """Raised by the parser; carries the offending position in the input text."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class VariantMismatch(ValueError):
    """Formula or model is not admissible for the requested semantics variant."""


class UnknownWorld(ValueError):
    """World id not present in the model."""


class UnknownAtom(ValueError):
    """Atom not declared in the model or assignment."""


class CapExceeded(RuntimeError):
    """An enumeration would exceed the configured model-count cap."""
