"""Exception hierarchy shared by every component."""


class OdometerError(Exception):
    """Root of all errors raised by this package"""


# semigroup

class RankMismatch(OdometerError, ValueError):
    def __init__(self, left: int, right: int):
        super().__init__(f"Rank mismatch: {left} != {right}")
        self.left = left
        self.right = right


class BadDigit(OdometerError, ValueError):
    pass


class WordSyntaxError(OdometerError, ValueError):
    pass


# representations

class UnknownBuiltin(OdometerError, ValueError):
    pass


class MissingParam(OdometerError, ValueError):
    pass


class BadRank(OdometerError, ValueError):
    pass


class BadParam(OdometerError, ValueError):
    pass


class NoCarryTarget(OdometerError):
    pass


class AddressCycleAllN(OdometerError):
    pass


class HintViolation(OdometerError):
    pass


class RepSyntaxError(OdometerError, ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class PresentationError(OdometerError, ValueError):
    def __init__(self, kind: str, message: str, line: int):
        super().__init__(f"line {line}: {kind}: {message}")
        self.kind = kind
        self.line = line


# wold / oracle / cli

class RankNotOne(OdometerError, ValueError):
    pass


class WindowTooLarge(OdometerError):
    pass


class DepthExceedsMargin(OdometerError, ValueError):
    pass


class UsageError(OdometerError):
    pass
