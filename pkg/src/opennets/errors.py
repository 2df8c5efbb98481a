"""Exception types raised across the package."""


class OpenNetsError(Exception):
    """Base class for all errors raised by :mod:`opennets`."""


class CarrierMismatch(OpenNetsError, ValueError):
    def __init__(self, left, right):
        self.left = frozenset(left)
        self.right = frozenset(right)
        super().__init__(
            f"carrier mismatch: {sorted(self.left)} vs {sorted(self.right)}"
        )


class InvalidNet(OpenNetsError, ValueError):
    """A Petri net or open Petri net failed validation."""


class MorphismError(OpenNetsError, ValueError):
    """A map of nets does not make the required squares commute.

    ``element`` names the offending transition or boundary point and
    ``side`` says which square failed (``"source"``, ``"target"``,
    ``"input"``, ``"output"``), when known.
    """

    def __init__(self, message, element=None, side=None):
        self.element = element
        self.side = side
        super().__init__(message)


class CoherenceError(OpenNetsError, ValueError):
    """A coherence witness does not match how its endpoints were built."""


class ProcessError(OpenNetsError, ValueError):
    """A process term is ill-formed or two processes cannot be combined."""


class SearchAborted(OpenNetsError, RuntimeError):
    """A backtracking search exceeded its configured size bound."""


class ParseError(OpenNetsError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        self.message = message
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", col {column}"
            where += ": "
        super().__init__(where + message)


class DisabledTransition(OpenNetsError, ValueError):
    def __init__(self, transition, marking):
        self.transition = transition
        self.marking = marking
        super().__init__(f"transition {transition!r} is not enabled at {marking}")
