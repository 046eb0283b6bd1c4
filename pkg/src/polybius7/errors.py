"""Exception hierarchy shared by the codec modules."""

from __future__ import annotations


class Polybius7Error(Exception):
    """Base class for every error raised by this package."""


class UnknownCharacter(Polybius7Error):
    """A character of the input text has no token in the alphabet."""

    def __init__(self, char: str, index: int):
        self.char = char
        self.index = index
        codepoints = " ".join(f"U+{ord(c):04X}" for c in char)
        super().__init__(f"index {index}: unknown character {char!r} ({codepoints})")


class InvalidTokenStream(Polybius7Error):
    """A token list breaks the UPPER-must-precede-a-letter rule."""

    def __init__(self, index: int, reason: str):
        self.index = index
        self.reason = reason
        super().__init__(f"index {index}: {reason}")


class MalformedNumber(Polybius7Error):
    """A cipher-text lexeme is not exactly two decimal digits."""

    def __init__(self, lexeme: str, index: int):
        self.lexeme = lexeme
        self.index = index
        super().__init__(f"index {index}: MALFORMED_NUMBER {lexeme!r} is not a two-digit number")


class NotAdmissible(Polybius7Error):
    """Strict decoding was asked for a sequence that fails validation."""

    def __init__(self, report):
        self.report = report
        lines = [str(v) for v in report.violations]
        super().__init__("sequence is not admissible:\n" + "\n".join(lines))


class InvalidSquare(Polybius7Error, ValueError):
    """A proposed layout is not a bijection between tokens and cells."""


class DuplicateToken(InvalidSquare):
    def __init__(self, token):
        self.token = token
        super().__init__(f"duplicate token {token.label}")


class MissingToken(InvalidSquare):
    def __init__(self, token):
        self.token = token
        super().__init__(f"missing token {token.label}")


class WrongLength(InvalidSquare):
    def __init__(self, actual: int):
        self.actual = actual
        super().__init__(f"a square needs exactly 49 tokens, got {actual}")


class SquareFileError(Polybius7Error):
    """A square file could not be parsed; ``line`` is 1-based."""

    def __init__(self, message: str, line: int):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}")
