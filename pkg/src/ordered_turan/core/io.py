"""Ordered-graph text format and ``p/q`` rational strings."""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Union

from ordered_turan.core.graph import OrderedGraph
from ordered_turan.errors import GraphFormatError, PreconditionError

HEADER = "ordgraph 1"


def format_rational(value: Union[Fraction, int]) -> str:
    """Always ``p/q``, integers included (``3/1``)."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: Union[str, int, Fraction]) -> Fraction:
    """Parse ``p/q`` or an integer; decimals and floats are rejected."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    raw = str(text).strip()
    try:
        if "/" in raw:
            num, den = raw.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(raw))
    except (ValueError, ZeroDivisionError) as exc:
        raise PreconditionError(f"expected a rational 'p/q' or an integer, got {text!r}") from exc


def dumps_graph(graph: OrderedGraph) -> str:
    lines = [HEADER, f"n {graph.n}"]
    lines.extend(f"e {u} {v}" for u, v in graph.sorted_edges)
    return "\n".join(lines) + "\n"


def _vertex(token: str) -> int | None:
    # ASCII digits only; str.isdigit also accepts superscripts that int() rejects
    if token.isascii() and token.isdecimal():
        return int(token)
    return None


def loads_graph(text: str) -> OrderedGraph:
    lines = [line.strip() for line in text.splitlines()]
    while lines and not lines[-1]:
        lines.pop()
    if not lines or lines[0] != HEADER:
        raise GraphFormatError(f"expected header {HEADER!r}", line=1)
    if len(lines) < 2:
        raise GraphFormatError("missing vertex count line", line=2)

    parts = lines[1].split()
    count = _vertex(parts[1]) if len(parts) == 2 and parts[0] == "n" else None
    if count is None:
        raise GraphFormatError(f"expected 'n <N>', got {lines[1]!r}", line=2)
    n = count
    if n < 1:
        raise GraphFormatError("vertex count must be positive", line=2)

    edges: list[tuple[int, int]] = []
    previous: tuple[int, int] | None = None
    for lineno, line in enumerate(lines[2:], start=3):
        parts = line.split()
        u = _vertex(parts[1]) if len(parts) == 3 and parts[0] == "e" else None
        v = _vertex(parts[2]) if u is not None else None
        if u is None or v is None:
            raise GraphFormatError(f"expected 'e <u> <v>', got {line!r}", line=lineno)
        edge = (u, v)
        if not 1 <= edge[0] < edge[1] <= n:
            raise GraphFormatError(f"edge {edge} is not an ascending pair in [1, {n}]", line=lineno)
        if previous is not None:
            if edge == previous:
                raise GraphFormatError(f"duplicate edge {edge}", line=lineno)
            if edge < previous:
                raise GraphFormatError(f"edge {edge} is out of lexicographic order", line=lineno)
        edges.append(edge)
        previous = edge
    return OrderedGraph(n, frozenset(edges))


def write_graph(graph: OrderedGraph, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_text(dumps_graph(graph), encoding="utf-8")
    return path


def read_graph(path: Union[str, Path]) -> OrderedGraph:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise GraphFormatError(f"{path} is not UTF-8 text (byte offset {exc.start})") from exc
    except OSError as exc:
        raise PreconditionError(
            f"cannot read graph file {path}: {exc.strerror or exc}", reason="io"
        ) from exc
    return loads_graph(text)
