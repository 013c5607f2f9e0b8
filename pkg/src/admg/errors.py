"""Exception types raised across the package."""


class AdmgError(ValueError):
    """Base class for all errors raised by :mod:`admg`."""


class DuplicateVertex(AdmgError):
    pass


class SelfLoop(AdmgError):
    pass


class DirectedCycle(AdmgError):
    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__("directed cycle " + " -> ".join(map(str, self.cycle)))


class UnknownVertex(AdmgError):
    pass


class DuplicateEdge(AdmgError):
    pass


class TooLarge(AdmgError):
    pass


class EmptySet(AdmgError):
    pass


class NotAHead(AdmgError):
    pass


class DisjointHeads(AdmgError):
    pass


class NotPartitionSuitable(AdmgError):
    pass


class NotStrictOrder(AdmgError):
    pass


class OverlappingSets(AdmgError):
    pass


class NotAncestral(AdmgError):
    pass


class NotBarren(AdmgError):
    pass


class NotTopological(AdmgError):
    pass


class MissingSlot(AdmgError):
    pass


class NonPositiveTable(AdmgError):
    pass


# file formats

class ParseError(AdmgError):
    """Malformed input text; carries a 1-based ``line`` and ``column``."""

    def __init__(self, line, column, expected):
        self.line = line
        self.column = column
        self.expected = expected
        super().__init__(f"line {line}, column {column}: expected {expected}")


class MissingRow(AdmgError):
    pass


class DuplicateRow(AdmgError):
    pass


class SumNotOne(AdmgError):
    pass


class SlotMismatch(AdmgError):
    pass
