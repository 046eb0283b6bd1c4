"""Acceptance gate.

Each test carries a ``criterion`` marker; ``conftest.py`` prints one
PASS/FAIL line per criterion at the end of the run.  Random suites use the
fixed seed ``SEED`` so failures reproduce exactly.
"""

import os
import random
import subprocess
import sys
import time
from pathlib import Path

import pytest

from polybius7 import (
    CANONICAL_ORDER,
    LETTERS,
    VALID_CODES,
    NormalizationPolicy,
    Square,
    Token,
    canonical_square,
    decode,
    dump_square,
    encode,
    format_cipher_text,
    load_square,
    normalize,
    parse_cipher_text,
    render,
    validate,
)
from polybius7.errors import SquareFileError
from polybius7.keying import square_from_keyword

from . import golden

SEED = 20161016
CASES = 10_000
SQ = canonical_square()
SRC = Path(__file__).resolve().parents[1] / "src"

criterion = pytest.mark.criterion


def enc(text, square=SQ):
    return encode(square, normalize(text))


def dec(codes, square=SQ):
    return render(decode(square, codes))


# -- 1. golden vectors -----------------------------------------------------


@criterion("1.1", "golden: România <-> 54 34 31 26 51 27 22 11, both directions")
def test_romania():
    text, codes = golden.ROMANIA
    assert enc(text) == codes
    assert format_cipher_text(enc(text)) == "54 34 31 26 51 27 22 11"
    assert dec(parse_cipher_text("54 34 31 26 51 27 22 11")) == text


@criterion("1.2", "golden: 'teorema lui Pitagora', 20 characters -> 21 codes")
def test_pitagora():
    text, codes = golden.PITAGORA
    assert len(text) == 20
    assert enc(text) == codes and len(codes) == 21
    assert dec(codes) == text


@criterion("1.3", "golden: Thales sentence, 39 characters -> the 41 listed codes")
def test_thales():
    text, codes = golden.THALES
    assert len(text) == 39
    assert len(codes) == 41
    assert enc(text) == codes


@criterion("1.4", "golden: 14 codes -> 'sorin@e-uvt.ro'; 19 codes -> 'binomul lui Newton' (18 chars)")
def test_email_and_newton():
    text, codes = golden.EMAIL
    assert len(codes) == 14 and dec(codes) == text
    text, codes = golden.NEWTON
    assert len(codes) == 19 and len(text) == 18 and dec(codes) == text


@criterion("1.5", "golden: Arghezi quotation, 52-code block decodes and re-encodes (corrected block documented)")
def test_arghezi():
    printed_text, printed = golden.ARGHEZI_PRINTED
    assert len(printed) == 52
    assert dec(printed) == printed_text
    assert enc(printed_text) == printed
    # the full quotation re-derives to 56 codes: the 52 above plus "bun " at index 44
    full_text, corrected = golden.ARGHEZI_QUOTE
    assert enc(full_text) == corrected and len(corrected) == 56
    assert dec(corrected) == full_text
    assert corrected[44:48] == enc("bun ")


@criterion("1.6", "golden: Barbu strophe, 134 codes with NEWLINE/quotes/hyphen/colon/exclam, both directions")
def test_barbu():
    text, codes = golden.BARBU_STROPHE
    assert len(codes) == 134
    assert dec(codes) == text
    assert enc(text) == codes
    for needed in (56, 64, 65, 61, 72, 63):
        assert needed in codes
    assert text.count("\n") == codes.count(56) == 3


@criterion("1.7", "golden: Barbilian quotation, 93-code block decodes to the 92-character text")
def test_barbilian():
    text, codes = golden.BARBILIAN_QUOTE
    assert len(codes) == 93 and len(text) == 92
    assert dec(codes) == text
    assert enc(text) == codes


@criterion("1.8", "golden: whole golden suite runs in under 1 second")
def test_golden_runtime():
    start = time.perf_counter()
    for text, codes in (golden.ROMANIA, golden.PITAGORA, golden.BARBILIAN_QUOTE, golden.THALES,
                        golden.EMAIL, golden.NEWTON, golden.ARGHEZI_PRINTED, golden.ARGHEZI_QUOTE,
                        golden.BARBU_STROPHE):
        assert enc(text) == codes
        assert dec(parse_cipher_text(format_cipher_text(codes, 16))) == text
    assert validate(SQ, golden.ADMISSIBLE_7).ok
    assert not validate(SQ, golden.NOT_ADMISSIBLE).ok
    assert time.perf_counter() - start < 1.0


# -- 2. property suites ----------------------------------------------------

NON_UPPER = [t for t in CANONICAL_ORDER if t is not Token.UPPER]
LETTER_TOKENS = [t for t in CANONICAL_ORDER if t in LETTERS]
ENCODABLE = [render([t]) for t in NON_UPPER] + [render([Token.UPPER, t]) for t in LETTER_TOKENS]
KEY_CHARS = "abcdefghijklmnopqrstuvwxyzăîâșțşţ" + "ABCDEFGHIJKLMNOPQRSTUVWXYZĂÎÂȘȚŞŢ" + " -.,!0123456789"


def random_message(rng, max_len=30):
    return "".join(rng.choice(ENCODABLE) for _ in range(rng.randint(0, max_len)))


def random_keyword(rng, max_len=20):
    return "".join(rng.choice(KEY_CHARS) for _ in range(rng.randint(0, max_len)))


def random_admissible(rng, square, min_units=0, max_units=30):
    """Grammatical sequence: UPPER only ever followed by a letter code."""
    plain = [square.code_of(t) for t in NON_UPPER]
    letters = [square.code_of(t) for t in LETTER_TOKENS]
    up = square.upper_code
    out = []
    for _ in range(rng.randint(min_units, max_units)):
        if rng.random() < 0.25:
            out += [up, rng.choice(letters)]
        else:
            out.append(rng.choice(plain))
    return out


@criterion("2.1", "property: render.decode.encode.normalize = identity, canonical + 100 keyword squares")
def test_message_round_trip():
    rng = random.Random(SEED)
    for _ in range(CASES):
        m = random_message(rng)
        assert dec(enc(m)) == m
    squares = [square_from_keyword(random_keyword(rng)) for _ in range(100)]
    assert len(set(squares)) > 90
    for sq in squares:
        for _ in range(CASES // 100):
            m = random_message(rng)
            assert dec(enc(m, sq), sq) == m


@criterion("2.2", "property: encode.decode = identity on random admissible sequences")
def test_cipher_round_trip():
    rng = random.Random(SEED + 1)
    for _ in range(CASES):
        s = random_admissible(rng, SQ)
        assert validate(SQ, s).ok
        assert encode(SQ, decode(SQ, s)) == s


@criterion("2.3", "property: |encode(w)| = n + q on every generated word")
def test_length_law():
    rng = random.Random(SEED + 2)
    for _ in range(CASES):
        m = random_message(rng)
        n = len(m)
        q = sum(ch.isupper() for ch in m)
        codes = enc(m)
        assert len(codes) == n + q
        assert len(dec(codes)) == len(codes) - codes.count(54)


@criterion("2.4", "property: validator flags a tail 54 or a symbol after 54 at exactly that index")
def test_validator_completeness():
    rng = random.Random(SEED + 3)
    symbols = [SQ.code_of(t) for t in NON_UPPER if t not in LETTERS]
    for _ in range(CASES):
        s = random_admissible(rng, SQ, min_units=1)
        while 54 not in s:
            s = random_admissible(rng, SQ, min_units=1)

        tail = list(s)
        tail[-1] = 54
        report = validate(SQ, tail)
        assert not report.ok
        assert {v.index for v in report.violations} == {len(s) - 1}

        k = rng.choice([i for i, c in enumerate(s) if c == 54])
        bad = list(s)
        bad[k + 1] = rng.choice(symbols)
        report = validate(SQ, bad)
        assert not report.ok
        assert {v.index for v in report.violations} == {k + 1}


def dedup_variant(rng, keyword):
    """Another keyword with the same deduplicated letter sequence."""
    letters = []
    for t in normalize(keyword, NormalizationPolicy.skip()):
        if t in LETTERS and t not in letters:
            letters.append(t)
    out = []
    for i, t in enumerate(letters):
        ch = render([t])
        out.append(ch.upper() if rng.random() < 0.5 else ch)
        for _ in range(rng.randint(0, 2)):
            seen = render([rng.choice(letters[:i + 1])])
            out.append(rng.choice([seen, seen.upper(), " ", "7", "-", "!"]))
    return "".join(out)


@criterion("2.5", "property: keyword squares are bijections; equal deduped keywords give equal squares")
def test_keying_properties():
    rng = random.Random(SEED + 4)
    all_tokens = set(Token)
    for _ in range(CASES):
        kw = random_keyword(rng)
        sq = square_from_keyword(kw)
        assert isinstance(sq, Square)
        assert set(sq.layout) == all_tokens and len(sq.layout) == 49
        assert sorted(sq.code_of(t) for t in Token) == list(VALID_CODES)
        assert all(sq.token_for_code(sq.code_of(t)) is t for t in Token)
        assert square_from_keyword(dedup_variant(rng, kw)) == sq
    assert square_from_keyword("anna") == square_from_keyword("an")


# -- 3. CLI integration ----------------------------------------------------

WORDS = (
    "există undeva în domeniul înalt al geometriei un loc luminos unde se întâlnește cu poezia "
    "pe când ne-nvâltoream cu jocul șopteai încercuie-mi mijlocul și-acum ți-aș împlini dorința "
    "dar nu-ți cuprind circumferința teorema reciprocă a teoremei lui thales binomul lui newton "
    "nu este destul să fii bun trebuie la ceva românia țară școală pădure râu munte oraș "
    "ţară şcoală oraş"
).split()
SEPARATORS = [" "] * 30 + [", ", ". ", "! ", "? ", "; ", ": ", " – ", " — ", "\n", "\r\n", "\t",
                           ' "', '" ', "„", "” ", "'", "’", " (", ") ", " & ", "@", "/", "  "]


def make_corpus(rng, size):
    parts = []
    total = 0
    while total < size:
        w = rng.choice(WORDS)
        r = rng.random()
        if r < 0.1:
            w = w.capitalize()
        elif r < 0.12:
            w = w.upper()
        piece = w + rng.choice(SEPARATORS)
        parts.append(piece)
        total += len(piece.encode("utf-8"))
    return "".join(parts)


def p7_command():
    return f'"{sys.executable}" -m polybius7'


def pipeline_env():
    env = dict(os.environ)
    env["PYTHONPATH"] = str(SRC) + os.pathsep + env.get("PYTHONPATH", "")
    return env


@pytest.fixture(scope="module")
def corpus(tmp_path_factory):
    text = make_corpus(random.Random(SEED + 5), 1_000_000)
    path = tmp_path_factory.mktemp("corpus") / "message.txt"
    path.write_bytes(text.encode("utf-8"))
    return path


@criterion("3.1", "CLI: encode | decode reproduces the canonical re-rendering of a 1 MB corpus in < 2 s")
def test_pipeline_1mb(corpus, tmp_path):
    raw = corpus.read_bytes()
    assert len(raw) >= 1_000_000
    expected = render(normalize(raw.decode("utf-8"))).encode("utf-8")
    out = tmp_path / "back.txt"
    cmd = f'{p7_command()} encode < "{corpus}" | {p7_command()} decode > "{out}"'
    start = time.perf_counter()
    proc = subprocess.run(cmd, shell=True, env=pipeline_env(), capture_output=True)
    elapsed = time.perf_counter() - start
    assert proc.returncode == 0, proc.stderr
    assert out.read_bytes() == expected
    print(f"1 MB pipeline: {elapsed:.2f} s")
    assert elapsed < 2.0


@criterion("3.2", "CLI: encode | decode identity holds for --key values")
@pytest.mark.parametrize("key", ["matematica", "ZEBRA", "Polybius 7x7", "ţară şi ăîâ"])
def test_pipeline_keyed(key, tmp_path):
    text = make_corpus(random.Random(SEED + 6), 50_000)
    src = tmp_path / "m.txt"
    src.write_bytes(text.encode("utf-8"))
    cmd = f'{p7_command()} encode --key "{key}" < "{src}" | {p7_command()} decode --key "{key}"'
    proc = subprocess.run(cmd, shell=True, env=pipeline_env(), capture_output=True)
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout == render(normalize(text)).encode("utf-8")


@criterion("3.3", "CLI: exit codes 0 / 1 / 2 per the interface table")
@pytest.mark.parametrize("args, stdin, code", [
    (["encode"], "România", 0),
    (["decode"], "54 34 31 26 51 27 22 11", 0),
    (["validate"], "54 15 37 13 25 22 14", 0),
    (["square"], "", 0),
    (["square", "--emit"], "", 0),
    (["encode"], "20%", 1),
    (["decode"], "11 54 62 27 11", 1),
    (["decode"], "11 5", 1),
    (["validate"], "11 54", 1),
    (["validate"], "11 08", 1),
    (["encode", "--wrap", "-1"], "", 2),
    (["encode", "--key", "a", "--square-file", "x"], "", 2),
    (["decode", "/nonexistent/in.txt"], "", 2),
    (["square", "--square-file", "/nonexistent/sq.txt"], "", 2),
    (["bogus"], "", 2),
])
def test_exit_codes(args, stdin, code):
    proc = subprocess.run([sys.executable, "-m", "polybius7", *args], input=stdin.encode("utf-8"),
                          env=pipeline_env(), capture_output=True)
    assert proc.returncode == code, proc.stderr
    if code == 0 and args[0] == "validate":
        assert proc.stdout == b"" and proc.stderr == b""
    if code == 1 and args == ["decode"] and stdin.startswith("11 54"):
        assert b"index 2: BAD_UPPER_TARGET" in proc.stderr
    if code == 0 and args == ["encode"]:
        assert proc.stdout == b"54 34 31 26 51 27 22 11\n"


# -- 4. square-file loader -------------------------------------------------


@criterion("4.1", "square file: loading the emitted canonical file reproduces canonical_square()")
def test_emitted_square_loads(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "polybius7", "square", "--emit"],
                          env=pipeline_env(), capture_output=True, check=True)
    assert load_square(proc.stdout.decode("utf-8")) == canonical_square()
    assert load_square(dump_square(canonical_square())) == canonical_square()


@criterion("4.2", "square file: duplicate / missing / 48-line files fail with the error and line number")
@pytest.mark.parametrize("name, mutate, line, fragment", [
    ("duplicate", lambda ls: ls[:20] + ["b"] + ls[21:], 21, "duplicate token b"),
    ("missing", lambda ls: ls[:33] + ["# removed"] + ls[34:], 50, "missing NEWLINE"),
    ("48 lines", lambda ls: ls[:48], 49, "only 48 of 49 entries"),
])
def test_corrupted_square_files(name, mutate, line, fragment, tmp_path):
    lines = mutate(dump_square(canonical_square()).splitlines())
    text = "\n".join(lines) + "\n"
    with pytest.raises(SquareFileError) as e:
        load_square(text)
    assert e.value.line == line
    assert fragment in str(e.value)

    path = tmp_path / "bad.txt"
    path.write_text(text, encoding="utf-8")
    proc = subprocess.run([sys.executable, "-m", "polybius7", "encode", "--square-file", str(path)],
                          input=b"x", env=pipeline_env(), capture_output=True)
    assert proc.returncode == 2
    assert f"line {line}".encode() in proc.stderr
