"""Extended 7x7 Polybius square codec for faithful encoding of Romanian text."""

from .alphabet import (
    CANONICAL_ORDER,
    LETTERS,
    SYMBOLS,
    VALID_CODES,
    NormalizationPolicy,
    Normalizer,
    OnUnknown,
    Position,
    Square,
    Token,
    canonical_square,
    dump_square,
    is_valid_code,
    load_square,
    normalize,
    position_of,
    render,
    token_at,
)
from .codec import (
    Rule,
    ValidationReport,
    Violation,
    decode,
    decode_text,
    encode,
    encode_text,
    encode_token,
    format_cipher_text,
    parse_cipher_text,
    validate,
)
from .errors import (
    DuplicateToken,
    InvalidSquare,
    InvalidTokenStream,
    MalformedNumber,
    MissingToken,
    NotAdmissible,
    Polybius7Error,
    SquareFileError,
    UnknownCharacter,
    WrongLength,
)
from .keying import square_from_keyword, square_from_permutation

__version__ = "0.1.0"
