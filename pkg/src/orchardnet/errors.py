"""Exception hierarchy shared by every module in the package."""


class NetworkError(Exception):
    """Base class for all errors raised by orchardnet."""


class InvalidNetwork(NetworkError):
    """A vertex/arc structure violates the binary phylogenetic network axioms."""

    def __init__(self, report):
        self.report = report
        super().__init__("invalid network: " + "; ".join(str(v) for v in report.violations))


class UnknownVertex(NetworkError, KeyError):
    pass


class UnknownLabel(NetworkError, KeyError):
    pass


class NotACherry(NetworkError, ValueError):
    """The named pair is not a cherry (or reticulated cherry) of the network."""


class NotOrchardInput(NetworkError):
    """A trinet collection cannot be the trinet set of an orchard network."""


class NoReduciblePair(NotOrchardInput):
    pass


class MalformedTrinet(NotOrchardInput):
    pass


class NoIsomorphism(NotOrchardInput):
    pass


class ENewickError(NetworkError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)


class ENewickSyntaxError(ENewickError):
    category = "syntax"


class ENewickSemanticError(ENewickError):
    category = "semantic"
