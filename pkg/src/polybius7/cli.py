"""``p7``: command-line frontend.

Exit codes: 0 success, 1 data error, 2 usage error.
"""

from __future__ import annotations

import argparse
import io
import sys
from typing import BinaryIO, Optional, Sequence, TextIO

from .alphabet import (
    SIZE,
    NormalizationPolicy,
    Normalizer,
    OnUnknown,
    Square,
    canonical_square,
    dump_square,
    load_square,
)
from .codec import CipherFormatter, CipherParser, StreamDecoder
from .errors import MalformedNumber, SquareFileError, UnknownCharacter
from .keying import square_from_keyword

PROG = "p7"
CHUNK = 1 << 16

EXIT_OK = 0
EXIT_DATA = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _policy(text: str) -> NormalizationPolicy:
    try:
        return NormalizationPolicy.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _wrap(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        n = -1
    if n < 0:
        raise argparse.ArgumentTypeError(f"wrap must be a non-negative integer, got {text!r}")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog=PROG, description="Extended 7x7 Polybius square codec for Romanian text.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def keyed(p):
        group = p.add_mutually_exclusive_group()
        group.add_argument("--key", metavar="K", help="build the square from keyword K")
        group.add_argument("--square-file", metavar="PATH", help="load a 49-line square file")

    p = sub.add_parser("encode", help="text -> two-digit codes")
    keyed(p)
    p.add_argument("--on-unknown", type=_policy, default=NormalizationPolicy(),
                   metavar="error|skip|replace=TOKEN",
                   help="what to do with characters outside the alphabet (default: error)")
    p.add_argument("--wrap", type=_wrap, default=16, metavar="N",
                   help="numbers per output line, 0 for a single line (default: 16)")
    p.add_argument("-o", "--output", metavar="OUT")
    p.add_argument("input", nargs="?", metavar="IN")

    p = sub.add_parser("decode", help="two-digit codes -> text")
    keyed(p)
    p.add_argument("-o", "--output", metavar="OUT")
    p.add_argument("input", nargs="?", metavar="IN")

    p = sub.add_parser("validate", help="check that a code sequence is admissible")
    keyed(p)
    p.add_argument("input", nargs="?", metavar="IN")

    p = sub.add_parser("square", help="show the square in use")
    keyed(p)
    p.add_argument("--emit", action="store_true", help="print the 49-line square file instead")
    return parser


def _resolve_square(args) -> Square:
    if args.key is not None:
        return square_from_keyword(args.key)
    if args.square_file is not None:
        try:
            with open(args.square_file, encoding="utf-8") as f:
                text = f.read()
        except (OSError, UnicodeDecodeError) as e:
            raise UsageError(f"{PROG}: cannot read square file {args.square_file}: {e}") from None
        try:
            return load_square(text)
        except SquareFileError as e:
            raise UsageError(f"{PROG}: {args.square_file}: {e}") from None
    return canonical_square()


def format_grid(square: Square) -> str:
    width = max(len(t.label) for t in square.layout)
    header = "    " + " ".join(f"C{j}".ljust(width) for j in range(1, SIZE + 1))
    lines = [header.rstrip()]
    for i, row in enumerate(square.rows(), start=1):
        cells = " ".join(t.label.ljust(width) for t in row)
        lines.append(f"L{i}  {cells}".rstrip())
    return "\n".join(lines) + "\n"


def _read_chunks(stream: BinaryIO):
    text = io.TextIOWrapper(stream, encoding="utf-8", errors="strict", newline="")
    try:
        while True:
            chunk = text.read(CHUNK)
            if not chunk:
                break
            yield chunk
    finally:
        text.detach()


def _encode(args, square: Square, src: BinaryIO, dst: BinaryIO, err: TextIO) -> int:
    normalizer = Normalizer(args.on_unknown)
    fmt = CipherFormatter(args.wrap)
    table = square.code_table
    try:
        for chunk in _read_chunks(src):
            codes = [table[t] for t in normalizer.feed(chunk)]
            dst.write(fmt.format(codes).encode("utf-8"))
        codes = [table[t] for t in normalizer.finish()]
        dst.write(fmt.format(codes).encode("utf-8") + b"\n")
    except UnknownCharacter as e:
        err.write(f"{PROG}: encode: {e}\n")
        return EXIT_DATA
    except UnicodeDecodeError as e:
        err.write(f"{PROG}: encode: input is not valid UTF-8: {e}\n")
        return EXIT_DATA
    policy = args.on_unknown
    if policy.on_unknown is OnUnknown.SKIP:
        err.write(f"{PROG}: encode: skipped {normalizer.skipped} unmappable character(s)\n")
    elif policy.on_unknown is OnUnknown.REPLACE:
        err.write(
            f"{PROG}: encode: replaced {normalizer.replaced} unmappable character(s)"
            f" with {policy.replacement.label}\n"
        )
    return EXIT_OK


def _decode(args, square: Square, src: BinaryIO, dst: Optional[BinaryIO], err: TextIO) -> int:
    """Shared by ``decode`` and ``validate`` (``dst`` is None for the latter)."""
    parser = CipherParser()
    decoder = StreamDecoder(square)
    try:
        for chunk in _read_chunks(src):
            out = decoder.feed(parser.feed(chunk))
            if dst is not None and out:
                dst.write(out.encode("utf-8"))
        out = decoder.feed(parser.finish())
        if dst is not None and out:
            dst.write(out.encode("utf-8"))
        decoder.finish()
    except MalformedNumber as e:
        err.write(f"{e}\n")
        return EXIT_DATA
    except UnicodeDecodeError as e:
        err.write(f"{PROG}: {args.command}: input is not valid UTF-8: {e}\n")
        return EXIT_DATA
    for v in decoder.violations:
        err.write(f"{v}\n")
    return EXIT_OK if decoder.ok else EXIT_DATA


def run(
    argv: Optional[Sequence[str]] = None,
    stdin: Optional[BinaryIO] = None,
    stdout: Optional[BinaryIO] = None,
    stderr: Optional[TextIO] = None,
) -> int:
    """Run the CLI against the given byte streams and return the exit code."""
    stdin = stdin if stdin is not None else sys.stdin.buffer
    stdout = stdout if stdout is not None else sys.stdout.buffer
    stderr = stderr if stderr is not None else sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        stderr.write(f"{e}\n")
        return EXIT_USAGE
    except SystemExit as e:  # --help
        return e.code if isinstance(e.code, int) else EXIT_OK

    opened = []
    try:
        square = _resolve_square(args)
        if args.command == "square":
            text = dump_square(square) if args.emit else format_grid(square)
            stdout.write(text.encode("utf-8"))
            return EXIT_OK

        src = stdin
        if args.input is not None:
            try:
                src = open(args.input, "rb")
            except OSError as e:
                raise UsageError(f"{PROG}: cannot read {args.input}: {e.strerror}") from None
            opened.append(src)
        dst = stdout
        if getattr(args, "output", None) is not None:
            try:
                dst = open(args.output, "wb")
            except OSError as e:
                raise UsageError(f"{PROG}: cannot write {args.output}: {e.strerror}") from None
            opened.append(dst)

        if args.command == "encode":
            return _encode(args, square, src, dst, stderr)
        if args.command == "decode":
            return _decode(args, square, src, dst, stderr)
        return _decode(args, square, src, None, stderr)
    except UsageError as e:
        stderr.write(f"{e}\n")
        return EXIT_USAGE
    finally:
        for f in opened:
            f.close()
        try:
            stdout.flush()
        except (OSError, ValueError):
            pass


def main() -> None:
    try:
        code = run()
    except BrokenPipeError:
        code = EXIT_DATA
    sys.exit(code)


if __name__ == "__main__":
    main()
