"""
Digraph Text Format
Strict line-oriented reader and writer: `n <int>`, `arc <u> <v>`, `set Y <v...>`
"""

import logging
import sys
from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, List, Optional

from ..exceptions import CyclabilityError, DigraphFormatError
from .digraph import Digraph, DigraphBuilder

logger = logging.getLogger(__name__)


@dataclass
class DigraphDocument:
    """Parsed digraph file: the digraph, the optional Y set, comment text"""
    digraph: Digraph
    y_set: Optional[FrozenSet[int]] = None
    comments: List[str] = field(default_factory=list)

    def y_or_all(self) -> FrozenSet[int]:
        """The file's Y set, or every vertex when the file has none"""
        if self.y_set is None:
            return frozenset(self.digraph.vertices())
        return self.y_set


def _parse_int(token: str, line_number: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise DigraphFormatError(f"{what} must be an integer, got {token!r}", line_number)


def parse_digraph(text: str) -> DigraphDocument:
    """
    Parse the digraph text format

    Comment lines (first non-blank character `#`) and blank lines are
    skipped; every other line must be well formed.

    Args:
        text: Whole document, including its trailing newline

    Returns:
        DigraphDocument

    Raises:
        DigraphFormatError: with the offending 1-based line number
    """
    if not text:
        raise DigraphFormatError("empty document")
    if not text.isascii():
        position = next(i for i, c in enumerate(text) if not c.isascii())
        raise DigraphFormatError(f"non-ASCII character {text[position]!r}",
                                 text.count("\n", 0, position) + 1)
    if not text.endswith("\n"):
        raise DigraphFormatError("missing trailing newline", text.count("\n") + 1)

    builder: Optional[DigraphBuilder] = None
    y_set: Optional[FrozenSet[int]] = None
    comments: List[str] = []

    for line_number, raw in enumerate(text[:-1].split("\n"), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            comments.append(line[1:].strip())
            continue

        tokens = line.split()
        keyword = tokens[0]

        if builder is None:
            if keyword != "n":
                raise DigraphFormatError(
                    f"expected 'n <int>' before any other line, got {keyword!r}", line_number
                )
            if len(tokens) != 2:
                raise DigraphFormatError("'n' takes exactly one integer", line_number)
            order = _parse_int(tokens[1], line_number, "order")
            if order < 1:
                raise DigraphFormatError(f"order must be >= 1, got {order}", line_number)
            builder = DigraphBuilder(order)
            continue

        if keyword == "arc":
            if len(tokens) != 3:
                raise DigraphFormatError("'arc' takes exactly two vertices", line_number)
            u = _parse_int(tokens[1], line_number, "vertex")
            v = _parse_int(tokens[2], line_number, "vertex")
            try:
                builder.add_arc(u, v)
            except CyclabilityError as e:
                raise DigraphFormatError(str(e), line_number) from e

        elif keyword == "set":
            if y_set is not None:
                raise DigraphFormatError("only one 'set Y' line is allowed", line_number)
            if len(tokens) < 3 or tokens[1] != "Y":
                raise DigraphFormatError("expected 'set Y <v...>'", line_number)
            vertices = [_parse_int(t, line_number, "vertex") for t in tokens[2:]]
            for v in vertices:
                if not 0 <= v < builder.n:
                    raise DigraphFormatError(f"vertex {v} not in 0..{builder.n - 1}", line_number)
            if len(set(vertices)) != len(vertices):
                raise DigraphFormatError("repeated vertex in 'set Y'", line_number)
            y_set = frozenset(vertices)

        elif keyword == "n":
            raise DigraphFormatError("order given twice", line_number)

        else:
            raise DigraphFormatError(f"unknown keyword {keyword!r}", line_number)

    if builder is None:
        raise DigraphFormatError("no 'n <int>' line")

    document = DigraphDocument(builder.freeze(), y_set, comments)
    logger.debug(f"Parsed digraph: n={document.digraph.n}, arcs={document.digraph.arc_count}, "
                 f"Y={'all' if y_set is None else sorted(y_set)}")
    return document


def format_digraph(
    digraph: Digraph,
    y_set: Optional[Iterable[int]] = None,
    comments: Iterable[str] = ()
) -> str:
    """Render a digraph (and optional Y) in the text format, arcs sorted"""
    lines = [f"# {comment}" for comment in comments]
    lines.append(f"n {digraph.n}")
    lines.extend(f"arc {u} {v}" for u, v in digraph.arcs())
    if y_set is not None:
        vertices = sorted(digraph.check_vertex(v) for v in y_set)
        if vertices:
            lines.append("set Y " + " ".join(str(v) for v in vertices))
    return "\n".join(lines) + "\n"


def _decode(data: bytes) -> str:
    try:
        return data.decode("ascii")
    except UnicodeDecodeError as e:
        raise DigraphFormatError(f"non-ASCII byte 0x{data[e.start]:02x}",
                                 data.count(b"\n", 0, e.start) + 1) from e


def read_document(source: str) -> DigraphDocument:
    """Parse a file path, or stdin when source is '-'"""
    if source == "-":
        buffer = getattr(sys.stdin, "buffer", None)
        text = _decode(buffer.read()) if buffer is not None else sys.stdin.read()
        return parse_digraph(text)
    with open(source, "rb") as handle:
        return parse_digraph(_decode(handle.read()))


def write_text(target: str, text: str) -> None:
    """Write to a file path, or stdout when target is '-'"""
    if target == "-":
        sys.stdout.write(text)
        return
    with open(target, "w", encoding="ascii") as handle:
        handle.write(text)
