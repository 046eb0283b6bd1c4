"""Encoding, decoding and validation of two-digit code sequences.

A cipher sequence is a plain ``list[int]``.  Codes are ``10 * row + col``
of a token's cell; a capital letter is the UPPER code followed by the code
of its lowercase letter.  This is a classroom substitution cipher and offers
no secrecy against anyone who can count symbols.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .alphabet import (
    LETTERS,
    VALID_CODES,
    NormalizationPolicy,
    Square,
    Token,
    canonical_square,
    check_word,
    normalize,
    render,
    render_token,
)
from .errors import MalformedNumber, NotAdmissible

_VALID_CODE_SET = frozenset(VALID_CODES)


def encode_token(square: Square, token: Token) -> int:
    return square.code_of(token)


def encode(square: Square, word: Sequence[Token]) -> list[int]:
    """Concatenate the codes of ``word``.

    The result has one code per token, i.e. ``n + q`` codes for a text of
    ``n`` characters containing ``q`` capitals.
    """
    check_word(word)
    table = square._code_of
    return [table[t] for t in word]


class Rule(str, enum.Enum):
    TRAILING_UPPER = "TRAILING_UPPER"
    BAD_UPPER_TARGET = "BAD_UPPER_TARGET"
    BAD_DIGITS = "BAD_DIGITS"


@dataclass(frozen=True)
class Violation:
    index: int
    rule: Rule
    detail: str

    def __str__(self) -> str:
        return f"index {self.index}: {self.rule.value} {self.detail}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def _code_repr(code) -> str:
    if type(code) is int and 0 <= code <= 99:
        return f"{code:02d}"
    return repr(code)


class SequenceChecker:
    """Single-pass admissibility checker that can be fed in chunks."""

    def __init__(self, square: Square):
        self.square = square
        self.index = 0
        self._upper = square.upper_code
        self._letter_codes = frozenset(square.code_of(t) for t in LETTERS)
        self._after_upper = False

    def check(self, codes: Iterable[int]) -> list[Violation]:
        """Check the next codes; return the violations they introduce."""
        found: list[Violation] = []
        valid = _VALID_CODE_SET
        letters = self._letter_codes
        up = self._upper
        i = self.index
        after = self._after_upper
        for code in codes:
            if code not in valid or type(code) is not int:
                found.append(Violation(
                    i, Rule.BAD_DIGITS, f"{_code_repr(code)} needs both digits in 1..7"
                ))
            elif after and code not in letters:
                label = self.square.token_for_code(code).label
                found.append(Violation(
                    i, Rule.BAD_UPPER_TARGET,
                    f"{_code_repr(code)} ({label}) follows {up} but is not a letter",
                ))
            after = code == up
            i += 1
        self.index = i
        self._after_upper = after
        return found

    def finish(self) -> list[Violation]:
        if self._after_upper:
            return [Violation(self.index - 1, Rule.TRAILING_UPPER, f"sequence ends with {self._upper}")]
        return []


def validate(square: Square, codes: Iterable[int]) -> ValidationReport:
    """Collect every admissibility violation of ``codes`` in one pass."""
    checker = SequenceChecker(square)
    found = checker.check(codes)
    found.extend(checker.finish())
    return ValidationReport(tuple(found))


def decode(square: Square, codes: Sequence[int]) -> list[Token]:
    report = validate(square, codes)
    if not report.ok:
        raise NotAdmissible(report)
    table = square._token_of
    return [table[c] for c in codes]


_LEXEMES = {f"{v:02d}": v for v in range(100)}
_TEXTS = tuple(_LEXEMES)


class CipherParser:
    """Incremental whitespace-separated lexer for cipher text."""

    def __init__(self):
        self.index = 0
        self._pending = ""

    def feed(self, text: str) -> list[int]:
        buf = self._pending + text
        lexemes = buf.split()
        if lexemes and not buf[-1].isspace():
            self._pending = lexemes.pop()
        else:
            self._pending = ""
        return self._convert(lexemes)

    def finish(self) -> list[int]:
        buf, self._pending = self._pending, ""
        return self._convert(buf.split())

    def _convert(self, lexemes: list[str]) -> list[int]:
        table = _LEXEMES
        try:
            out = [table[lex] for lex in lexemes]
        except KeyError:
            for k, lex in enumerate(lexemes):
                if lex not in table:
                    raise MalformedNumber(lex, self.index + k) from None
            raise
        self.index += len(out)
        return out


def parse_cipher_text(text: str) -> list[int]:
    """Split on whitespace runs; every lexeme must be exactly two ASCII digits.

    Digit ranges are not checked here (see :func:`validate`).
    """
    parser = CipherParser()
    out = parser.feed(text)
    out.extend(parser.finish())
    return out


class CipherFormatter:
    """Stateful joiner that breaks the line after every ``wrap`` numbers."""

    def __init__(self, wrap: int = 0):
        if wrap < 0:
            raise ValueError("wrap must be non-negative")
        self.wrap = wrap
        self.count = 0

    def format(self, codes: Iterable[int]) -> str:
        texts = _TEXTS
        items = [texts[c] if 0 <= c < 100 else f"{c:02d}" for c in codes]
        if not items:
            return ""
        n = self.count
        self.count += len(items)
        wrap = self.wrap
        if not wrap:
            joined = " ".join(items)
            return " " + joined if n else joined
        pieces: list[str] = []
        i = 0
        while i < len(items):
            if n:
                pieces.append(" " if n % wrap else "\n")
            room = wrap - n % wrap
            line = items[i:i + room]
            pieces.append(" ".join(line))
            i += len(line)
            n += len(line)
        return "".join(pieces)


def format_cipher_text(codes: Sequence[int], wrap: int = 0) -> str:
    return CipherFormatter(wrap).format(codes)


class StreamDecoder:
    """Decode a code stream chunk by chunk.

    Output stops just before the first violation; checking continues so
    that :attr:`violations` lists every problem once :meth:`finish` has run.
    A trailing UPPER code is the only state carried between chunks.
    """

    def __init__(self, square: Square):
        self.square = square
        self.violations: list[Violation] = []
        self._checker = SequenceChecker(square)
        self._upper = square.upper_code
        self._lower_text = {}
        self._upper_text = {}
        for t in Token:
            code = square.code_of(t)
            if t is not Token.UPPER:
                self._lower_text[code] = render_token(t)
            if t in LETTERS:
                self._upper_text[code] = render_token(t, upper=True)
        self._pending_upper = False

    def feed(self, codes: Sequence[int]) -> str:
        clean = not self.violations
        start = self._checker.index
        found = self._checker.check(codes)
        self.violations.extend(found)
        if not clean:
            return ""
        if found:
            codes = codes[:found[0].index - start]
        parts: list[str] = []
        lower, upper = self._lower_text, self._upper_text
        up = self._upper
        pending = self._pending_upper
        for code in codes:
            if pending:
                parts.append(upper[code])
                pending = False
            elif code == up:
                pending = True
            else:
                parts.append(lower[code])
        self._pending_upper = pending
        return "".join(parts)

    def finish(self) -> str:
        self.violations.extend(self._checker.finish())
        return ""

    @property
    def ok(self) -> bool:
        return not self.violations


def encode_text(
    text: str,
    square: Optional[Square] = None,
    policy: Optional[NormalizationPolicy] = None,
) -> list[int]:
    """Normalize ``text`` and encode it."""
    square = square or canonical_square()
    return encode(square, normalize(text, policy))


def decode_text(cipher: str, square: Optional[Square] = None) -> str:
    """Parse, strictly decode and render cipher text."""
    square = square or canonical_square()
    return render(decode(square, parse_cipher_text(cipher)))
