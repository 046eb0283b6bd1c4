"""Keyed squares: the same 49 tokens in a different arrangement."""

from __future__ import annotations

from typing import Sequence

from .alphabet import CANONICAL_ORDER, LETTERS, NormalizationPolicy, Square, Token, normalize


def keyword_letters(keyword: str) -> list[Token]:
    """Distinct letters of ``keyword`` in first-occurrence order.

    Case is folded, cedilla forms fold to comma-below, and everything that
    is not one of the 31 letters is ignored.
    """
    seen: set[Token] = set()
    out: list[Token] = []
    for t in normalize(keyword, NormalizationPolicy.skip()):
        if t in LETTERS and t not in seen:
            seen.add(t)
            out.append(t)
    return out


def square_from_keyword(keyword: str) -> Square:
    """Keyword letters first, then every other token in canonical order.

    Symbols never move, since keywords contribute letters only; the empty
    keyword gives the canonical square.
    """
    head = keyword_letters(keyword)
    used = set(head)
    return Square(head + [t for t in CANONICAL_ORDER if t not in used])


def square_from_permutation(tokens: Sequence[Token]) -> Square:
    """Square with ``tokens[k]`` at row ``k // 7 + 1``, column ``k % 7 + 1``.

    Raises :class:`~polybius7.errors.WrongLength` or
    :class:`~polybius7.errors.DuplicateToken`.
    """
    return Square(tokens)
