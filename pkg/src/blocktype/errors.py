"""Exception hierarchy shared by the library and the CLI."""


class BlockTypeError(Exception):
    """Base class for every error raised by this package."""


class InvalidElementError(BlockTypeError):
    """An element is not valid for the algebra it is used in (e.g. a central
    component in the centerless algebra)."""


class ElementParseError(BlockTypeError):
    def __init__(self, message, text, position):
        super().__init__(message)
        self.message = message
        self.text = text
        self.position = position

    def annotated(self):
        return "%s at position %d\n  %s\n  %s^" % (
            self.message, self.position, self.text, " " * self.position)


class NoMinimalTermError(BlockTypeError):
    pass


class PreconditionError(BlockTypeError):
    pass


class WindowTooSmallError(PreconditionError):
    pass


class InternalError(BlockTypeError):
    """A check that must hold for every B(q) has failed, so this is a bug."""
