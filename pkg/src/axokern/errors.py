"""Exception types raised by the kernel, the model and the CLI."""


class AxoError(Exception):
    """Base class for recoverable kernel and document errors."""

    code = "Error"


class DegenerateVector(AxoError):
    code = "DegenerateVector"


class DegenerateInput(AxoError):
    code = "DegenerateInput"


class NotCollinear(AxoError):
    code = "NotCollinear"


class NotAxisAligned(AxoError):
    code = "NotAxisAligned"


class InvalidScale(AxoError):
    code = "InvalidScale"


class InvalidPlane(AxoError):
    code = "InvalidPlane"


class UnknownPipe(AxoError):
    code = "UnknownPipe"


class AmbiguousInverse(AxoError):
    code = "AmbiguousInverse"


class InvalidOrientation(AxoError):
    code = "InvalidOrientation"


class InvalidAttachment(AxoError):
    code = "InvalidAttachment"


class OverlappingBlocks(AxoError):
    code = "OverlappingBlocks"

    def __init__(self, message, ids=()):
        super().__init__(message)
        self.ids = tuple(ids)


class CutOutOfRange(AxoError):
    code = "CutOutOfRange"


class InvalidRun(AxoError):
    code = "InvalidRun"


class ParseError(AxoError):
    code = "ParseError"


class ValidationFailed(AxoError):
    """The document parsed but violates model invariants."""

    code = "ValidationFailed"

    def __init__(self, diagnostics, schematic=None):
        self.diagnostics = list(diagnostics)
        self.schematic = schematic
        lines = "; ".join(d.format() for d in self.diagnostics)
        super().__init__(f"{len(self.diagnostics)} diagnostic(s): {lines}")


class DegenerateProjection(AxoError):
    code = "DegenerateProjection"

    def __init__(self, message, diagnostics=()):
        super().__init__(message)
        self.diagnostics = list(diagnostics)
