"""The 49-token alphabet, the 7x7 square, and the text <-> token boundary.

Tokens are declared in canonical row-major order, so ``list(Token)`` is the
layout of the canonical square::

    L1  a b c d e f g
    L2  h i j k l m n
    L3  o p q r s t u
    L4  v w x y z ă î
    L5  â ș ț UPPER SPACE NEWLINE COMMA
    L6  HYPHEN QUESTION EXCLAM QUOTE_OPEN QUOTE_CLOSE SEMICOLON DASH
    L7  PERIOD COLON APOSTROPHE PAREN_OPEN PAREN_CLOSE AMPERSAND AT
"""

from __future__ import annotations

import enum
import unicodedata
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .errors import (
    DuplicateToken,
    InvalidTokenStream,
    SquareFileError,
    UnknownCharacter,
    WrongLength,
)

SIZE = 7
CELLS = SIZE * SIZE


class Token(enum.Enum):
    """One element of the alphabet.

    The value is the token's label: the literal lowercase character for
    letters, the upper-case symbol name otherwise.
    """

    A = "a"
    B = "b"
    C = "c"
    D = "d"
    E = "e"
    F = "f"
    G = "g"
    H = "h"
    I = "i"  # noqa: E741
    J = "j"
    K = "k"
    L = "l"
    M = "m"
    N = "n"
    O = "o"  # noqa: E741
    P = "p"
    Q = "q"
    R = "r"
    S = "s"
    T = "t"
    U = "u"
    V = "v"
    W = "w"
    X = "x"
    Y = "y"
    Z = "z"
    A_BREVE = "ă"
    I_CIRC = "î"
    A_CIRC = "â"
    S_COMMA = "ș"
    T_COMMA = "ț"
    UPPER = "UPPER"
    SPACE = "SPACE"
    NEWLINE = "NEWLINE"
    COMMA = "COMMA"
    HYPHEN = "HYPHEN"
    QUESTION = "QUESTION"
    EXCLAM = "EXCLAM"
    QUOTE_OPEN = "QUOTE_OPEN"
    QUOTE_CLOSE = "QUOTE_CLOSE"
    SEMICOLON = "SEMICOLON"
    DASH = "DASH"
    PERIOD = "PERIOD"
    COLON = "COLON"
    APOSTROPHE = "APOSTROPHE"
    PAREN_OPEN = "PAREN_OPEN"
    PAREN_CLOSE = "PAREN_CLOSE"
    AMPERSAND = "AMPERSAND"
    AT = "AT"

    # members are singletons compared by identity; Enum's own __hash__ is
    # pure Python and dominates dict lookups on the hot path
    __hash__ = object.__hash__

    @property
    def label(self) -> str:
        return self.value

    @property
    def is_letter(self) -> bool:
        return self in LETTERS

    @classmethod
    def from_label(cls, label: str) -> "Token":
        try:
            return cls(label)
        except ValueError:
            raise ValueError(f"unknown token label {label!r}") from None

    def __repr__(self) -> str:
        return f"Token.{self.name}"


CANONICAL_ORDER: tuple[Token, ...] = tuple(Token)
LETTERS: frozenset[Token] = frozenset(CANONICAL_ORDER[:31])
SYMBOLS: frozenset[Token] = frozenset(CANONICAL_ORDER[31:])


@dataclass(frozen=True, order=True)
class Position:
    """A cell of the square, 1-based ``(row, col)``."""

    row: int
    col: int

    def __post_init__(self):
        for name in ("row", "col"):
            v = getattr(self, name)
            if type(v) is not int or not 1 <= v <= SIZE:
                raise ValueError(f"{name} must be an integer in 1..{SIZE}, got {v!r}")

    @property
    def code(self) -> int:
        return 10 * self.row + self.col

    @property
    def index(self) -> int:
        """Row-major 0-based index of the cell."""
        return (self.row - 1) * SIZE + (self.col - 1)

    @classmethod
    def from_index(cls, k: int) -> "Position":
        if not 0 <= k < CELLS:
            raise ValueError(f"cell index must be in 0..{CELLS - 1}, got {k}")
        return cls(k // SIZE + 1, k % SIZE + 1)

    @classmethod
    def from_code(cls, code: int) -> "Position":
        if not is_valid_code(code):
            raise ValueError(f"{code!r} is not a code with both digits in 1..{SIZE}")
        return cls(code // 10, code % 10)

    def __str__(self) -> str:
        return f"({self.row},{self.col})"


VALID_CODES: tuple[int, ...] = tuple(10 * r + c for r in range(1, 8) for c in range(1, 8))
_VALID_CODE_SET = frozenset(VALID_CODES)


def is_valid_code(value) -> bool:
    """True iff ``value`` is an int whose tens and units digits are both in 1..7."""
    return type(value) is int and value in _VALID_CODE_SET


class Square:
    """Immutable bijection between the 49 tokens and the 49 cells."""

    __slots__ = ("_layout", "_code_of", "_token_of")

    def __init__(self, layout: Iterable[Token]):
        layout = tuple(layout)
        if len(layout) != CELLS:
            raise WrongLength(len(layout))
        seen: set[Token] = set()
        for t in layout:
            if not isinstance(t, Token):
                raise TypeError(f"square cells must hold Token values, got {t!r}")
            if t in seen:
                raise DuplicateToken(t)
            seen.add(t)
        object.__setattr__(self, "_layout", layout)
        object.__setattr__(self, "_code_of", {t: VALID_CODES[k] for k, t in enumerate(layout)})
        object.__setattr__(self, "_token_of", {VALID_CODES[k]: t for k, t in enumerate(layout)})

    def __setattr__(self, name, value):
        raise AttributeError("Square is immutable")

    @property
    def layout(self) -> tuple[Token, ...]:
        """Tokens in row-major order."""
        return self._layout

    def rows(self) -> list[tuple[Token, ...]]:
        return [self._layout[r * SIZE:(r + 1) * SIZE] for r in range(SIZE)]

    def position_of(self, token: Token) -> Position:
        return Position.from_code(self._code_of[token])

    def token_at(self, position: Position) -> Token:
        return self._layout[position.index]

    def code_of(self, token: Token) -> int:
        return self._code_of[token]

    def token_for_code(self, code: int) -> Token:
        """Inverse of :meth:`code_of`; raises ``KeyError`` for invalid codes."""
        return self._token_of[code]

    @property
    def upper_code(self) -> int:
        return self._code_of[Token.UPPER]

    @property
    def code_table(self) -> dict[Token, int]:
        return dict(self._code_of)

    def __eq__(self, other):
        if not isinstance(other, Square):
            return NotImplemented
        return self._layout == other._layout

    def __hash__(self):
        return hash(self._layout)

    def __repr__(self):
        if self._layout == CANONICAL_ORDER:
            return "Square(<canonical>)"
        return f"Square({' '.join(t.label for t in self._layout)})"

    def __reduce__(self):
        return (Square, (self._layout,))


_CANONICAL = Square(CANONICAL_ORDER)


def canonical_square() -> Square:
    return _CANONICAL


def position_of(square: Square, token: Token) -> Position:
    return square.position_of(token)


def token_at(square: Square, position: Position) -> Token:
    return square.token_at(position)


# -- normalization ---------------------------------------------------------


class OnUnknown(enum.Enum):
    ERROR = "error"
    SKIP = "skip"
    REPLACE = "replace"


@dataclass(frozen=True)
class NormalizationPolicy:
    """What :func:`normalize` does with characters outside the alphabet."""

    on_unknown: OnUnknown = OnUnknown.ERROR
    replacement: Optional[Token] = None

    def __post_init__(self):
        if self.on_unknown is OnUnknown.REPLACE:
            if not isinstance(self.replacement, Token):
                raise ValueError("REPLACE policy needs a replacement token")
            if self.replacement is Token.UPPER:
                raise ValueError("UPPER cannot be used as a replacement token")
        elif self.replacement is not None:
            raise ValueError(f"{self.on_unknown.name} policy takes no replacement token")

    @classmethod
    def error(cls) -> "NormalizationPolicy":
        return cls(OnUnknown.ERROR)

    @classmethod
    def skip(cls) -> "NormalizationPolicy":
        return cls(OnUnknown.SKIP)

    @classmethod
    def replace(cls, token: Token) -> "NormalizationPolicy":
        return cls(OnUnknown.REPLACE, token)

    @classmethod
    def parse(cls, text: str) -> "NormalizationPolicy":
        """Parse ``error``, ``skip`` or ``replace=TOKEN``."""
        head, sep, arg = text.partition("=")
        head = head.strip().lower()
        if head == "replace" and sep:
            return cls.replace(Token.from_label(arg.strip()))
        if not sep and head in ("error", "skip"):
            return cls(OnUnknown(head))
        raise ValueError(f"invalid policy {text!r}; expected error, skip or replace=TOKEN")


_CEDILLA_TO_COMMA = {"ş": "ș", "Ş": "Ș", "ţ": "ț", "Ţ": "Ț"}

_RENDER: dict[Token, str] = {t: t.label for t in LETTERS}
_RENDER.update({
    Token.SPACE: " ",
    Token.NEWLINE: "\n",
    Token.COMMA: ",",
    Token.HYPHEN: "-",
    Token.QUESTION: "?",
    Token.EXCLAM: "!",
    Token.QUOTE_OPEN: "„",
    Token.QUOTE_CLOSE: "”",
    Token.SEMICOLON: ";",
    Token.DASH: "–",
    Token.PERIOD: ".",
    Token.COLON: ":",
    Token.APOSTROPHE: "’",
    Token.PAREN_OPEN: "(",
    Token.PAREN_CLOSE: ")",
    Token.AMPERSAND: "&",
    Token.AT: "@",
})
_RENDER_UPPER: dict[Token, str] = {t: t.label.upper() for t in LETTERS}


def _build_char_table() -> dict[str, tuple[Token, ...]]:
    table: dict[str, tuple[Token, ...]] = {ch: (t,) for t, ch in _RENDER.items()}
    for t, ch in _RENDER_UPPER.items():
        table[ch] = (Token.UPPER, t)
    for src, dst in _CEDILLA_TO_COMMA.items():
        table[src] = table[dst]
    table.update({
        "\t": (Token.SPACE,),
        "/": (Token.NEWLINE,),
        "‐": (Token.HYPHEN,),
        "‑": (Token.HYPHEN,),
        "—": (Token.DASH,),
        "“": (Token.QUOTE_OPEN,),
        "«": (Token.QUOTE_OPEN,),
        "»": (Token.QUOTE_CLOSE,),
        "'": (Token.APOSTROPHE,),
    })
    return table


_CHAR_TOKENS = _build_char_table()


def _is_combining(ch: str) -> bool:
    return unicodedata.combining(ch) != 0


class Normalizer:
    """Incremental text -> token converter.

    ``feed`` may be called with arbitrary slices of the input; the final
    base character is held back until more text (or :meth:`finish`) shows
    whether combining marks or an LF follow it.  Indices in errors refer to
    code points of the whole input seen so far.
    """

    def __init__(self, policy: Optional[NormalizationPolicy] = None):
        self.policy = policy or NormalizationPolicy()
        self.skipped = 0
        self.replaced = 0
        self._pending = ""
        self._offset = 0
        self._quote_open = False

    def feed(self, text: str) -> list[Token]:
        buf = self._pending + text
        if not buf:
            return []
        cut = len(buf) - 1
        while cut > 0 and _is_combining(buf[cut]):
            cut -= 1
        if cut > 0 and buf[cut - 1] == "\r":
            cut -= 1
        self._pending = buf[cut:]
        out = self._convert(buf[:cut], self._offset)
        self._offset += cut
        return out

    def finish(self) -> list[Token]:
        buf, self._pending = self._pending, ""
        out = self._convert(buf, self._offset)
        self._offset += len(buf)
        return out

    def _convert(self, segment: str, base: int) -> list[Token]:
        out: list[Token] = []
        if not segment:
            return out
        if unicodedata.is_normalized("NFC", segment):
            self._emit(segment, range(base, base + len(segment)), out)
            return out
        # Map each composed character back to the start of its source cluster.
        start = 0
        chars: list[str] = []
        origins: list[int] = []
        n = len(segment)
        while start < n:
            end = start + 1
            while end < n and _is_combining(segment[end]):
                end += 1
            for ch in unicodedata.normalize("NFC", segment[start:end]):
                chars.append(ch)
                origins.append(base + start)
            start = end
        self._emit("".join(chars), origins, out)
        return out

    def _emit(self, text: str, origins: Sequence[int], out: list[Token]) -> None:
        table = _CHAR_TOKENS
        extend = out.extend
        after_cr = False
        for i, ch in enumerate(text):
            toks = table.get(ch)
            if toks is not None:
                if after_cr and ch == "\n":
                    after_cr = False
                    continue
                extend(toks)
                after_cr = False
                continue
            after_cr = False
            if ch == '"':
                out.append(Token.QUOTE_CLOSE if self._quote_open else Token.QUOTE_OPEN)
                self._quote_open = not self._quote_open
            elif ch == "\r":
                out.append(Token.NEWLINE)
                after_cr = True
            elif ch.isspace():
                out.append(Token.SPACE)
            else:
                self._unknown(ch, origins[i], out)

    def _unknown(self, ch: str, index: int, out: list[Token]) -> None:
        policy = self.policy
        if policy.on_unknown is OnUnknown.ERROR:
            raise UnknownCharacter(ch, index)
        if policy.on_unknown is OnUnknown.SKIP:
            self.skipped += 1
        else:
            self.replaced += 1
            out.append(policy.replacement)


def normalize(text: str, policy: Optional[NormalizationPolicy] = None) -> list[Token]:
    """Convert Unicode text to a token stream.

    Capitals expand to ``[UPPER, letter]``; cedilla ş/ţ fold to comma-below
    ș/ț after NFC composition; LF, CRLF and CR each give one NEWLINE.
    Characters outside the alphabet follow ``policy`` (default: raise
    :class:`UnknownCharacter`).
    """
    n = Normalizer(policy)
    out = n.feed(text)
    out.extend(n.finish())
    return out


# -- rendering -------------------------------------------------------------


def check_word(tokens: Sequence[Token]) -> None:
    """Raise :class:`InvalidTokenStream` unless every UPPER precedes a letter."""
    upper = Token.UPPER
    prev_upper = False
    for i, t in enumerate(tokens):
        if prev_upper and t not in LETTERS:
            raise InvalidTokenStream(i, f"UPPER must be followed by a letter, got {t.label}")
        prev_upper = t is upper
    if prev_upper:
        raise InvalidTokenStream(len(tokens) - 1, "token stream ends with UPPER")


def render(tokens: Sequence[Token]) -> str:
    """Inverse of :func:`normalize` for valid token streams."""
    parts: list[str] = []
    append = parts.append
    upper = Token.UPPER
    pending = False
    for i, t in enumerate(tokens):
        if pending:
            ch = _RENDER_UPPER.get(t)
            if ch is None:
                raise InvalidTokenStream(i, f"UPPER must be followed by a letter, got {t.label}")
            append(ch)
            pending = False
        elif t is upper:
            pending = True
        else:
            append(_RENDER[t])
    if pending:
        raise InvalidTokenStream(len(tokens) - 1, "token stream ends with UPPER")
    return "".join(parts)


def render_token(token: Token, upper: bool = False) -> str:
    """Rendered form of a single non-UPPER token."""
    if upper:
        return _RENDER_UPPER[token]
    return _RENDER[token]


# -- square file -----------------------------------------------------------


def dump_square(square: Square) -> str:
    """Serialize ``square`` as 49 label lines."""
    return "".join(t.label + "\n" for t in square.layout)


def _numbered_entries(text: str) -> Iterator[tuple[int, str]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        entry = unicodedata.normalize("NFC", raw.strip())
        if not entry or entry.startswith("#"):
            continue
        yield lineno, _CEDILLA_TO_COMMA.get(entry, entry)


def load_square(text: str) -> Square:
    """Parse the 49-line square file format.

    Blank lines and ``#`` comments are ignored.  Unknown labels, duplicates,
    a 50th entry, and omissions raise :class:`SquareFileError` naming the
    line (for omissions, the line after the last one read).
    """
    layout: list[Token] = []
    seen: dict[Token, int] = {}
    last_line = 0
    for lineno, entry in _numbered_entries(text):
        last_line = lineno
        try:
            token = Token.from_label(entry)
        except ValueError:
            raise SquareFileError(f"unknown token {entry!r}", lineno) from None
        if token in seen:
            raise SquareFileError(
                f"duplicate token {token.label} (first on line {seen[token]})", lineno
            )
        if len(layout) == CELLS:
            raise SquareFileError(f"more than {CELLS} entries", lineno)
        seen[token] = lineno
        layout.append(token)
    if len(layout) < CELLS:
        missing = [t for t in CANONICAL_ORDER if t not in seen]
        raise SquareFileError(
            f"only {len(layout)} of {CELLS} entries; missing {', '.join(t.label for t in missing)}",
            last_line + 1,
        )
    return Square(layout)
