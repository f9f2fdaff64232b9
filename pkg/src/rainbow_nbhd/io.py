"""Readers and writers for graph6, DIMACS ``.col`` and plain edge lists.

DIMACS input is 1-indexed on disk and converted to 0-indexed at this boundary.
"""

from __future__ import annotations

import warnings

from rainbow_nbhd.graph import Graph

GRAPH6_HEADER = ">>graph6<<"


class GraphFormatError(ValueError):
    """Malformed graph input. ``offset`` is a byte offset (graph6) or line number."""

    def __init__(self, message: str, offset: int | None = None) -> None:
        if offset is not None:
            message = f"{message} (at offset {offset})"
        super().__init__(message)
        self.offset = offset


def _decode_size(data: bytes) -> tuple[int, int]:
    """Return ``(n, bytes consumed)`` for the graph6 size prefix."""
    for i, b in enumerate(data[:8]):
        if not 63 <= b <= 126:
            raise GraphFormatError(f"byte {b!r} outside graph6 range 63..126", i)
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise GraphFormatError("truncated 8-byte size header", len(data))
        n = 0
        for b in data[2:8]:
            n = (n << 6) | (b - 63)
        return n, 8
    if len(data) < 4:
        raise GraphFormatError("truncated 4-byte size header", len(data))
    n = 0
    for b in data[1:4]:
        n = (n << 6) | (b - 63)
    return n, 4


def parse_graph6(text: str | bytes) -> Graph:
    """Decode one graph6 line (optionally prefixed with ``>>graph6<<``)."""
    data = text.encode("ascii", errors="replace") if isinstance(text, str) else bytes(text)
    data = data.strip()
    base = 0
    if data.startswith(GRAPH6_HEADER.encode()):
        base = len(GRAPH6_HEADER)
        data = data[base:]
    if not data:
        raise GraphFormatError("empty input")
    n, pos = _decode_size(data)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = data[pos:]
    if len(body) < nbytes:
        raise GraphFormatError(
            f"truncated bit-vector: expected {nbytes} bytes, got {len(body)}",
            base + pos + len(body),
        )
    if len(body) > nbytes:
        raise GraphFormatError("trailing data after bit-vector", base + pos + nbytes)
    for i, b in enumerate(body):
        if not 63 <= b <= 126:
            raise GraphFormatError(f"byte {b!r} outside graph6 range 63..126", base + pos + i)

    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (body[k // 6] - 63) >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    return Graph.from_edges(n, edges)


def emit_graph6(g: Graph) -> str:
    """Canonical graph6 encoding (zero padding bits, shortest size header)."""
    n = g.n
    if n <= 62:
        out = [n + 63]
    elif n <= 258047:
        out = [126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)]
    else:
        out = [126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)]
    acc = 0
    nacc = 0
    for j in range(1, n):
        for i in range(j):
            acc = (acc << 1) | (g.adj[i] >> j & 1)
            nacc += 1
            if nacc == 6:
                out.append(acc + 63)
                acc = nacc = 0
    if nacc:
        out.append((acc << (6 - nacc)) + 63)
    return bytes(out).decode("ascii")


def _int_token(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise GraphFormatError(f"non-integer token {token!r}", lineno) from None


def parse_dimacs(text: str) -> Graph:
    """Parse the DIMACS ``.col`` subset: ``c`` comments, one ``p`` line, ``e`` lines.

    Duplicate edges are ignored. A declared edge count that disagrees with the
    number of distinct edges only produces a warning.
    """
    n: int | None = None
    declared_m = 0
    edges: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        tag = parts[0]
        if tag == "p":
            if n is not None:
                raise GraphFormatError("duplicate problem line", lineno)
            if len(parts) != 4:
                raise GraphFormatError("problem line must be 'p edge n m'", lineno)
            n = _int_token(parts[2], lineno)
            declared_m = _int_token(parts[3], lineno)
            if n < 0:
                raise GraphFormatError("negative vertex count", lineno)
        elif tag == "e":
            if n is None:
                raise GraphFormatError("edge line before problem line", lineno)
            if len(parts) != 3:
                raise GraphFormatError("edge line must be 'e u v'", lineno)
            u, v = (_int_token(t, lineno) - 1 for t in parts[1:])
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"vertex index out of range 1..{n}", lineno)
            if u == v:
                raise GraphFormatError("self-loop", lineno)
            edges.add((min(u, v), max(u, v)))
        else:
            raise GraphFormatError(f"unknown line type {tag!r}", lineno)
    if n is None:
        raise GraphFormatError("missing problem line")
    if declared_m != len(edges):
        warnings.warn(
            f"DIMACS header declares {declared_m} edges, found {len(edges)} distinct",
            stacklevel=2,
        )
    return Graph.from_edges(n, sorted(edges))


def parse_edge_list(text: str) -> Graph:
    """Parse ``n`` followed by whitespace-separated 0-indexed ``u v`` pairs."""
    tokens = text.split()
    if not tokens:
        raise GraphFormatError("empty input")
    n = _int_token(tokens[0], 0)
    if n < 0:
        raise GraphFormatError("negative vertex count", 0)
    rest = [_int_token(t, i) for i, t in enumerate(tokens[1:], start=1)]
    if len(rest) % 2:
        raise GraphFormatError("odd number of endpoint tokens")
    edges = []
    for i in range(0, len(rest), 2):
        u, v = rest[i], rest[i + 1]
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"index out of range: edge ({u}, {v}) with n={n}", i + 1)
        if u == v:
            raise GraphFormatError(f"self-loop at {u}", i + 1)
        edges.append((u, v))
    return Graph.from_edges(n, edges)


def emit_edge_list(g: Graph) -> str:
    return "\n".join([str(g.n)] + [f"{u} {v}" for u, v in g.edges()]) + "\n"


def emit_dimacs(g: Graph) -> str:
    lines = [f"p edge {g.n} {g.m}"] + [f"e {u + 1} {v + 1}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def detect_format(text: str) -> str:
    """Guess ``dimacs``, ``edges`` or ``graph6`` from the first meaningful line."""
    for line in text.splitlines():
        parts = line.split()
        if not parts:
            continue
        if parts[0] in ("c", "p", "e"):
            return "dimacs"
        # graph6 bytes are 63..126, so a decimal token cannot be graph6
        if parts[0].lstrip("-").isdigit():
            return "edges"
        return "graph6"
    raise GraphFormatError("empty input")


def read_graphs(text: str, fmt: str = "auto") -> list[Graph]:
    """Parse a document; graph6 documents may hold one graph per line."""
    if fmt == "auto":
        fmt = detect_format(text)
    if fmt == "dimacs":
        return [parse_dimacs(text)]
    if fmt == "edges":
        return [parse_edge_list(text)]
    if fmt == "graph6":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise GraphFormatError("empty input")
        return [parse_graph6(ln) for ln in lines]
    raise ValueError(f"unknown format {fmt!r}")
