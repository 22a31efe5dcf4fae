"""Text formats: the canonical edge list and DOT export.

Edge list::

    # comments run to end of line
    n 5 8          # vertex count, optional arc count; the 'n' may be omitted
    1 2
    2 3
    ...
"""

from __future__ import annotations

from pathlib import Path

from .digraph import Digraph, GraphError

__all__ = ["EdgeListError", "parse_edgelist", "format_edgelist", "read_edgelist", "to_dot"]


class EdgeListError(GraphError):
    """Malformed edge-list text; the message names line and column."""


def _tokens(line: str) -> list[tuple[int, str]]:
    """Whitespace-separated tokens with their 1-based columns."""
    out = []
    col = 0
    while col < len(line):
        if line[col].isspace():
            col += 1
            continue
        start = col
        while col < len(line) and not line[col].isspace():
            col += 1
        out.append((start + 1, line[start:col]))
    return out


def _int(tok: tuple[int, str], lineno: int) -> int:
    col, text = tok
    try:
        return int(text)
    except ValueError:
        raise EdgeListError(f"line {lineno}, column {col}: expected an integer, got {text!r}") from None


def _first_col(line: str) -> int:
    return len(line) - len(line.lstrip()) + 1


def parse_edgelist(text: str) -> Digraph:
    n = None
    declared_arcs = None
    arcs: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = _tokens(raw.split("#", 1)[0])
        if not toks:
            continue
        if n is None:
            if toks[0][1] == "n":  # the leading 'n' is optional
                toks = toks[1:]
            if len(toks) not in (1, 2):
                raise EdgeListError(
                    f"line {lineno}, column {_first_col(raw)}: header must be '[n] <count> [<arcs>]'"
                )
            n = _int(toks[0], lineno)
            if n < 1:
                raise EdgeListError(f"line {lineno}, column {toks[0][0]}: vertex count must be positive")
            if len(toks) == 2:
                declared_arcs = _int(toks[1], lineno)
            continue
        if len(toks) != 2:
            col = toks[2][0] if len(toks) > 2 else toks[-1][0] + len(toks[-1][1])
            raise EdgeListError(f"line {lineno}, column {col}: expected exactly two labels 'u v'")
        u, v = _int(toks[0], lineno), _int(toks[1], lineno)
        for col, w in ((toks[0][0], u), (toks[1][0], v)):
            if not 1 <= w <= n:
                raise EdgeListError(f"line {lineno}, column {col}: label {w} outside 1..{n}")
        if u == v:
            raise EdgeListError(f"line {lineno}, column {toks[0][0]}: loop ({u}, {v})")
        arcs.append((u, v))
    if n is None:
        raise EdgeListError("line 1, column 1: missing 'n <count>' header")
    D = Digraph(n, arcs)
    if declared_arcs is not None and declared_arcs != D.arc_count:
        raise EdgeListError(
            f"header declares {declared_arcs} arcs but {D.arc_count} distinct arcs follow"
        )
    return D


def read_edgelist(path: str | Path) -> Digraph:
    return parse_edgelist(Path(path).read_text(encoding="utf-8"))


def format_edgelist(D: Digraph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    if D.names:
        lines.append("# " + " ".join(f"{v}={D.name(v)}" for v in D.vertices))
    lines.append(f"n {D.n} {D.arc_count}")
    lines.extend(f"{u} {v}" for u, v in D.arcs())
    return "\n".join(lines) + "\n"


def _dot_id(D: Digraph, v: int) -> str:
    return f'"{D.name(v)}"'


def to_dot(D: Digraph, name: str = "D") -> str:
    lines = [f"digraph {name} {{"]
    lines.extend(f"  {_dot_id(D, v)};" for v in D.vertices)
    lines.extend(f"  {_dot_id(D, u)} -> {_dot_id(D, v)};" for u, v in D.arcs())
    lines.append("}")
    return "\n".join(lines) + "\n"
