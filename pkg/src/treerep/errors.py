"""Exception types shared across the package."""


class TreeRepError(Exception):
    """Base class for all package errors."""


class UnknownEdge(TreeRepError):
    pass


class NotChordal(TreeRepError):
    pass


class NotConnected(TreeRepError):
    pass


class NotCompact(TreeRepError):
    pass


class NotProper(TreeRepError):
    pass


class NotOnChain(TreeRepError):
    pass


class InvariantBroken(TreeRepError):
    """An internal law the algorithms rely on failed; never resolved silently."""


class BudgetExceeded(TreeRepError):
    pass


class GenerationFailed(TreeRepError):
    pass


class DomainMismatch(TreeRepError):
    pass


class InvalidCertificate(TreeRepError):
    pass


class NotAGadgetRepresentation(TreeRepError):
    pass


class Unresolved(TreeRepError):
    """Search exhausted its configured budget without an answer."""


class InputFormatError(TreeRepError):
    """Malformed text input; message carries line information."""
