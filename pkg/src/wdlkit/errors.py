"""Exception hierarchy for wdlkit."""


class WdlError(Exception):
    """Base class for every error raised by this package."""


class FormatError(WdlError):
    """Malformed input file (.lat, .cxt or closure/kernel system)."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NotALattice(WdlError):
    def __init__(self, x, y, reason):
        self.x = x
        self.y = y
        self.reason = reason
        super().__init__(f"{x}, {y}: {reason}")


class NotBounded(WdlError):
    pass


class CycleDetected(WdlError):
    def __init__(self, x, y):
        self.x = x
        self.y = y
        super().__init__(f"cyclic order: {x} <= {y} <= {x}")


class OutOfRange(WdlError):
    pass


class GeneratorSetTooSmall(WdlError):
    def __init__(self, side, missing):
        self.side = side
        self.missing = missing
        super().__init__(f"{side} generator set misses irreducible {missing}")


class NotBoolean(WdlError):
    pass


class AxiomViolation(WdlError):
    def __init__(self, report):
        self.report = report
        first = next((r for r in report.results if not r.passed), None)
        super().__init__(first.to_line() if first else "axiom violation")


class TheoremViolation(WdlError):
    """A finite instance of a published result failed. Must never fire."""


class InternalContradiction(TheoremViolation):
    pass


class NotAnIsomorphism(WdlError):
    def __init__(self, a, b, reason):
        self.a = a
        self.b = b
        super().__init__(f"{a}, {b}: {reason}")


class NotWithNegation(WdlError):
    pass


class SizeCapExceeded(WdlError):
    pass


class UnknownProperty(WdlError):
    pass
