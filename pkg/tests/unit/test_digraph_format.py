"""
Unit tests for the digraph text format reader and writer
"""

import io

import pytest

from digraph_cyclability.exceptions import DigraphFormatError
from digraph_cyclability.modules.digraph import Digraph
from digraph_cyclability.modules.digraph_format import (
    format_digraph,
    parse_digraph,
    read_document,
    write_text,
)


# ============================================================================
# PARSING
# ============================================================================

@pytest.mark.unit
def test_parse_minimal():
    """Test a small document with comments and a Y line"""
    text = "# demo\nn 3\narc 0 1\narc 1 2\n\narc 2 0\nset Y 0 2\n"
    document = parse_digraph(text)

    assert document.digraph.n == 3
    assert list(document.digraph.arcs()) == [(0, 1), (1, 2), (2, 0)]
    assert document.y_set == frozenset({0, 2})
    assert document.comments == ["demo"]


@pytest.mark.unit
def test_missing_y_means_all():
    """Test y_or_all falls back to every vertex"""
    document = parse_digraph("n 2\narc 0 1\n")
    assert document.y_set is None
    assert document.y_or_all() == frozenset({0, 1})


@pytest.mark.unit
@pytest.mark.parametrize("text, line_number", [
    ("n 3\narc 0 3\n", 2),
    ("n 3\narc 0 0\n", 2),
    ("n 3\narc 0 1\narc 0 1\n", 3),
    ("n 3\nset Y 0 0\n", 2),
    ("n 3\nset Y 0\nset Y 1\n", 3),
    ("n 3\nset X 0\n", 2),
    ("n 3\nedge 0 1\n", 2),
    ("n 3\nn 3\n", 2),
    ("arc 0 1\n", 1),
    ("n 0\n", 1),
    ("n x\n", 1),
    ("n 3\narc 0\n", 2),
])
def test_malformed_lines(text, line_number):
    """Test every malformed line is reported with its line number"""
    with pytest.raises(DigraphFormatError) as excinfo:
        parse_digraph(text)
    assert excinfo.value.line_number == line_number
    assert str(excinfo.value).startswith(f"line {line_number}: ")


@pytest.mark.unit
def test_missing_trailing_newline():
    """Test the document must end with a newline"""
    with pytest.raises(DigraphFormatError):
        parse_digraph("n 2\narc 0 1")


@pytest.mark.unit
def test_empty_document():
    """Test empty and comment-only documents are refused"""
    with pytest.raises(DigraphFormatError):
        parse_digraph("")
    with pytest.raises(DigraphFormatError):
        parse_digraph("# nothing here\n")


# ============================================================================
# WRITING
# ============================================================================

@pytest.mark.unit
def test_format_sorted_arcs():
    """Test the writer emits comments, order, sorted arcs and Y"""
    digraph = Digraph.from_arcs(3, [(2, 0), (0, 1)])
    text = format_digraph(digraph, {2, 0}, comments=["family: demo"])
    assert text == "# family: demo\nn 3\narc 0 1\narc 2 0\nset Y 0 2\n"


@pytest.mark.unit
def test_format_then_parse(c4):
    """Test a written document parses back to the same digraph"""
    document = parse_digraph(format_digraph(c4, [1, 3]))
    assert document.digraph == c4
    assert document.y_set == frozenset({1, 3})


@pytest.mark.unit
def test_stdin_and_stdout(monkeypatch, capsys):
    """Test '-' reads stdin and writes stdout"""
    monkeypatch.setattr("sys.stdin", io.StringIO("n 2\narc 1 0\n"))
    document = read_document("-")
    assert list(document.digraph.arcs()) == [(1, 0)]

    write_text("-", "hello\n")
    assert capsys.readouterr().out == "hello\n"


@pytest.mark.unit
def test_file_round_trip(tmp_path, d6):
    """Test write_text and read_document on a real file"""
    target = tmp_path / "d6.txt"
    write_text(str(target), format_digraph(d6))
    assert read_document(str(target)).digraph == d6


@pytest.mark.unit
def test_non_ascii_file(tmp_path):
    """Test a non-ASCII byte, even inside a comment, is a format error on its line"""
    target = tmp_path / "accent.txt"
    target.write_bytes("n 3\n# café\narc 0 1\n".encode("utf-8"))
    with pytest.raises(DigraphFormatError) as excinfo:
        read_document(str(target))
    assert excinfo.value.line_number == 2


@pytest.mark.unit
def test_non_ascii_stdin(monkeypatch):
    """Test non-ASCII text from stdin reports its line"""
    monkeypatch.setattr("sys.stdin", io.StringIO("n 3\narc 0 1\narc 1 2 é\n"))
    with pytest.raises(DigraphFormatError) as excinfo:
        read_document("-")
    assert excinfo.value.line_number == 3


@pytest.mark.unit
def test_non_ascii_stdin_bytes(monkeypatch):
    """Test raw stdin bytes are decoded as ASCII"""
    stdin = io.TextIOWrapper(io.BytesIO(b"n 2\n\xff\n"), encoding="latin-1")
    monkeypatch.setattr("sys.stdin", stdin)
    with pytest.raises(DigraphFormatError) as excinfo:
        read_document("-")
    assert excinfo.value.line_number == 2
