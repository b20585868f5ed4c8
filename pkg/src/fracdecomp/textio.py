"""Plain-text formats for graphs, partitions and certificates.

Graph::

    n m
    u v            (plain)   or   u v p/q   (weighted)

Partition: one line per part, space-separated vertices.

Decomposition certificate::

    fractional-decomposition
    template <name> <n> <m>
    u v p/q        (m lines)
    copies <k>
    copy <name> <alpha> <v_0> ... <v_{n-1}>

Edge-bipartition certificate::

    edge-bipartition
    direction internal-heavy|crossing-light
    rho p/q
    template <name> <n> <m>
    u v p/q
    parts <k>
    <vertices of part 0>
    ...
    g0 <count>
    g1 <count>
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Iterator

from .core import (
    AnyGraph,
    Graph,
    ScaledCopy,
    WeightedGraph,
    as_weighted,
    complete_graph,
    complete_multipartite_graph,
    cycle_graph,
    path_graph,
    weighted_triangle,
)
from .extremal import EdgeBipartitionCertificate


class FormatError(ValueError):
    """Malformed input text."""


def _lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line.split()


def _int(tok: str, no: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"line {no}: expected an integer, got {tok!r}") from None


def parse_rational(tok: str, no: int = 0) -> Fraction:
    if not re.fullmatch(r"[+-]?\d+(/\d+)?", tok):
        raise FormatError(f"line {no}: expected a rational p/q, got {tok!r}")
    try:
        return Fraction(tok)
    except ZeroDivisionError:
        raise FormatError(f"line {no}: zero denominator in {tok!r}") from None


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _read_edges(it: Iterator[tuple[int, list[str]]], n: int, m: int, force_weighted: bool = False) -> AnyGraph:
    edges, weights = [], {}
    weighted = force_weighted
    for _ in range(m):
        try:
            no, toks = next(it)
        except StopIteration:
            raise FormatError(f"expected {m} edge lines") from None
        if len(toks) not in (2, 3):
            raise FormatError(f"line {no}: expected 'u v' or 'u v p/q'")
        u, v = _int(toks[0], no), _int(toks[1], no)
        if len(toks) == 3:
            weighted = True
            weights[(u, v)] = parse_rational(toks[2], no)
        else:
            weights[(u, v)] = Fraction(1)
        edges.append((u, v))
    try:
        if weighted:
            return WeightedGraph(n, weights)
        return Graph(n, edges)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def read_graph(text: str) -> AnyGraph:
    it = _lines(text)
    try:
        no, toks = next(it)
    except StopIteration:
        raise FormatError("empty graph file") from None
    if len(toks) != 2:
        raise FormatError(f"line {no}: header must be 'n m'")
    n, m = _int(toks[0], no), _int(toks[1], no)
    G = _read_edges(it, n, m)
    extra = next(it, None)
    if extra is not None:
        raise FormatError(f"line {extra[0]}: unexpected trailing content")
    return G


def _edge_lines(G: AnyGraph, weighted: bool) -> list[str]:
    if isinstance(G, Graph) and not weighted:
        return [f"{u} {v}" for u, v in G.sorted_edges]
    W = as_weighted(G)
    return [f"{u} {v} {format_rational(w)}" for (u, v), w in W.weights.items()]


def write_graph(G: AnyGraph) -> str:
    m = G.num_edges()
    lines = [f"{G.n} {m}"] + _edge_lines(G, isinstance(G, WeightedGraph))
    return "\n".join(lines) + "\n"


def read_partition(text: str) -> list[list[int]]:
    return [[_int(t, no) for t in toks] for no, toks in _lines(text)]


def write_partition(parts: Iterable[Iterable[int]]) -> str:
    return "".join(" ".join(str(v) for v in p) + "\n" for p in parts)


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------

def write_decomposition(copies: Iterable[ScaledCopy]) -> str:
    copies = list(copies)
    templates: dict[str, WeightedGraph] = {}
    for c in copies:
        name = c.name or "W"
        if name in templates and templates[name] != c.template:
            raise ValueError(f"two different templates share the name {name!r}")
        templates[name] = c.template
    out = ["fractional-decomposition"]
    for name, T in templates.items():
        out.append(f"template {name} {T.n} {T.num_edges()}")
        out.extend(_edge_lines(T, True))
    out.append(f"copies {len(copies)}")
    for c in copies:
        verts = " ".join(str(v) for v in c.embedding)
        out.append(f"copy {c.name or 'W'} {format_rational(c.alpha)} {verts}")
    return "\n".join(out) + "\n"


def _expect(it, keyword: str, nargs: int | None = None) -> tuple[int, list[str]]:
    try:
        no, toks = next(it)
    except StopIteration:
        raise FormatError(f"expected '{keyword}' line, reached end of input") from None
    if toks[0] != keyword or (nargs is not None and len(toks) != nargs + 1):
        raise FormatError(f"line {no}: expected '{keyword}' with {nargs} fields")
    return no, toks


def read_decomposition(text: str) -> list[ScaledCopy]:
    it = _lines(text)
    no, toks = next(it, (0, [""]))
    if toks != ["fractional-decomposition"]:
        raise FormatError("not a fractional-decomposition certificate")
    templates: dict[str, WeightedGraph] = {}
    while True:
        no, toks = next(it, (0, [""]))
        if toks[0] == "template" and len(toks) == 4:
            n, m = _int(toks[2], no), _int(toks[3], no)
            templates[toks[1]] = as_weighted(_read_edges(it, n, m, force_weighted=True))
        elif toks[0] == "copies" and len(toks) == 2:
            k = _int(toks[1], no)
            break
        else:
            raise FormatError(f"line {no}: expected 'template' or 'copies'")
    copies = []
    for _ in range(k):
        no, toks = _expect(it, "copy")
        if len(toks) < 3 or toks[1] not in templates:
            raise FormatError(f"line {no}: unknown template in copy line")
        T = templates[toks[1]]
        emb = tuple(_int(t, no) for t in toks[3:])
        try:
            copies.append(ScaledCopy(T, emb, parse_rational(toks[2], no), toks[1]))
        except ValueError as exc:
            raise FormatError(f"line {no}: {exc}") from None
    if next(it, None) is not None:
        raise FormatError("unexpected trailing content after copies")
    return copies


@dataclass(frozen=True)
class BipartitionCertificateText:
    direction: str
    rho: Fraction
    template_name: str
    template: WeightedGraph
    parts: tuple[tuple[int, ...], ...]
    g0: int
    g1: int


def write_bipartition_certificate(cert: EdgeBipartitionCertificate, W: AnyGraph, name: str) -> str:
    W = as_weighted(W)
    out = [
        "edge-bipartition",
        f"direction {cert.direction}",
        f"rho {format_rational(cert.rho)}",
        f"template {name} {W.n} {W.num_edges()}",
        *_edge_lines(W, True),
        f"parts {len(cert.parts)}",
        *(" ".join(str(v) for v in p) for p in cert.parts),
        f"g0 {len(cert.g0)}",
        f"g1 {len(cert.g1)}",
    ]
    return "\n".join(out) + "\n"


def read_bipartition_certificate(text: str) -> BipartitionCertificateText:
    it = _lines(text)
    no, toks = next(it, (0, [""]))
    if toks != ["edge-bipartition"]:
        raise FormatError("not an edge-bipartition certificate")
    _, toks = _expect(it, "direction", 1)
    direction = toks[1]
    no, toks = _expect(it, "rho", 1)
    rho = parse_rational(toks[1], no)
    no, toks = _expect(it, "template", 3)
    name = toks[1]
    W = as_weighted(_read_edges(it, _int(toks[2], no), _int(toks[3], no), force_weighted=True))
    no, toks = _expect(it, "parts", 1)
    parts = []
    for _ in range(_int(toks[1], no)):
        no, toks = next(it, (0, []))
        if not toks:
            raise FormatError("missing part line")
        parts.append(tuple(_int(t, no) for t in toks))
    no, toks = _expect(it, "g0", 1)
    g0 = _int(toks[1], no)
    no, toks = _expect(it, "g1", 1)
    g1 = _int(toks[1], no)
    return BipartitionCertificateText(direction, rho, name, W, tuple(parts), g0, g1)


def certificate_kind(text: str) -> str:
    first = next(_lines(text), (0, [""]))[1]
    return first[0] if first else ""


# ---------------------------------------------------------------------------
# Named graphs
# ---------------------------------------------------------------------------

def parse_named_graph(spec: str) -> AnyGraph:
    """``C<l>``, ``P<n>``, ``K<n>`` (single digit), ``K<a>,<b>,...`` or compact ``K<digits>``
    for complete multipartite graphs, ``T<e1>,<e2>,<e3>`` for weighted triangles, or a file path.
    """
    if m := re.fullmatch(r"C(\d+)", spec):
        return cycle_graph(int(m.group(1)))
    if m := re.fullmatch(r"P(\d+)", spec):
        return path_graph(int(m.group(1)))
    if m := re.fullmatch(r"K(\d+(?:,\d+)+)", spec):
        return complete_multipartite_graph(*(int(x) for x in m.group(1).split(",")))
    if m := re.fullmatch(r"K(\d)", spec):
        return complete_graph(int(m.group(1)))
    if m := re.fullmatch(r"K(\d{2,})", spec):
        return complete_multipartite_graph(*(int(c) for c in m.group(1)))
    if m := re.fullmatch(r"T([^,]+),([^,]+),([^,]+)", spec):
        e = [parse_rational(x) for x in m.groups()]
        if any(x <= 0 for x in e):
            raise FormatError("triangle weights must be positive")
        return weighted_triangle(*e)
    path = Path(spec)
    if path.is_file():
        return read_graph(path.read_text(encoding="utf-8"))
    raise FormatError(f"unrecognised graph {spec!r}: not a named graph or readable file")
