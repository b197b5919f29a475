class ProbcalcError(Exception):
    """Base class for every error raised by the package."""


class ParseError(ProbcalcError):
    def __init__(self, message: str, position: int, expected: list[str]):
        super().__init__(f"{message} at position {position}")
        self.position = position
        self.expected = expected


class SortError(ProbcalcError):
    def __init__(self, node, expected, found, message: str | None = None):
        if message is None:
            message = f"{node!r}: expected {getattr(expected, 'value', expected)}, " \
                      f"found {getattr(found, 'value', found)}"
        super().__init__(message)
        self.node = node
        self.expected = expected
        self.found = found
        self.position: int | None = None


class SchemeError(ProbcalcError):
    pass


class ImpureFormulaError(ProbcalcError):
    """A '!' or '?' node reached an operation that only handles one sort."""


class ProofFormatError(ProbcalcError):
    pass


class ShapeError(ProbcalcError):
    pass


class ModelError(ProbcalcError):
    pass


class GroupoidError(ProbcalcError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class ResourceLimitError(ProbcalcError):
    pass


class FixtureError(ProbcalcError):
    pass
