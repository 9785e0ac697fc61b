"""Plumbing graphs: the .plumb text format, intersection forms, boundaries, C_{p,q} search.

The format has one directive per line::

    # comment
    vertex <id> <weight> <genus>
    edge <id> <id>
    chain <w1> <w2> ...

Weights are self-intersection numbers (negative for the spheres of a
C_{p,q}); ``chain`` declares fresh vertices v1, v2, ... joined in a path.
"""
import logging
import re
from typing import Dict, List, Tuple

import networkx as nx
from pydantic import BaseModel, ConfigDict, model_validator

from ..utils.errors import (
    BadWeight,
    DSLSyntaxError,
    DuplicateId,
    NotAllRational,
    NotLinearChain,
    UnknownId,
    WeightOutOfRange,
)
from .exactmath import SymMatrix, inertia
from .hj import HJString, LensSpace, cpq_string, lens_of_chain

logger = logging.getLogger(__name__)

_ID_RE = re.compile(r"^[A-Za-z0-9]+$")
_INT_RE = re.compile(r"^[+-]?\d+$")
_TOKEN_RE = re.compile(r"\S+")


class Vertex(BaseModel):
    """Disk bundle of Euler number ``weight`` over a surface of genus ``genus``."""

    model_config = ConfigDict(frozen=True)

    id: str
    weight: int
    genus: int = 0


class PlumbingGraph(BaseModel):
    """Weighted graph with a multiset of edges; vertex order is declaration order."""

    model_config = ConfigDict(frozen=True)

    vertices: Tuple[Vertex, ...]
    edges: Tuple[Tuple[str, str], ...] = ()

    @model_validator(mode="after")
    def _check(self) -> "PlumbingGraph":
        ids = [v.id for v in self.vertices]
        if len(set(ids)) != len(ids):
            raise ValueError(f"vertex ids are not unique: {ids}")
        known = set(ids)
        for u, v in self.edges:
            if u not in known or v not in known:
                raise ValueError(f"edge ({u}, {v}) references an unknown vertex")
            if u == v:
                raise ValueError(f"self-loop at {u}")
        if any(v.genus < 0 for v in self.vertices):
            raise ValueError("genus must be nonnegative")
        return self

    @classmethod
    def chain(cls, weights: List[int]) -> "PlumbingGraph":
        vertices = tuple(Vertex(id=f"v{i + 1}", weight=w) for i, w in enumerate(weights))
        edges = tuple((vertices[i].id, vertices[i + 1].id) for i in range(len(vertices) - 1))
        return cls(vertices=vertices, edges=edges)

    def to_networkx(self) -> nx.MultiGraph:
        graph = nx.MultiGraph()
        for v in self.vertices:
            graph.add_node(v.id, weight=v.weight, genus=v.genus)
        graph.add_edges_from(self.edges)
        return graph

    def canonical(self) -> Tuple[Tuple[Tuple[str, int, int], ...], Tuple[Tuple[str, str], ...]]:
        """Comparison key independent of declaration order."""
        vertices = tuple(sorted((v.id, v.weight, v.genus) for v in self.vertices))
        edges = tuple(sorted(tuple(sorted(e)) for e in self.edges))
        return vertices, edges


class ConfigurationMatch(BaseModel):
    """A C_{p,q} chain found inside a plumbing graph, vertex ids in chain order."""

    model_config = ConfigDict(frozen=True)

    p: int
    q: int
    vertex_ids: Tuple[str, ...]
    # chain order runs against declaration order
    reversed: bool


def _parse_int(token: str, what: str, line: int, column: int) -> int:
    if not _INT_RE.match(token):
        raise BadWeight(f"line {line}, column {column}: {what} must be an integer, got {token!r}")
    return int(token)


def parse(text: str) -> PlumbingGraph:
    """
    Parses a .plumb description.

    Raises:
        DSLSyntaxError: Unknown directive or wrong number of arguments
        DuplicateId: A vertex id is declared twice
        UnknownId: An edge names an undeclared vertex
        BadWeight: Non-integer weight or negative genus
    """
    vertices: Dict[str, Vertex] = {}
    edges: List[Tuple[str, str]] = []
    chain_counter = 0

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = [(m.group(), m.start() + 1) for m in _TOKEN_RE.finditer(line)]
        if not tokens:
            continue
        directive, column = tokens[0]
        args = tokens[1:]

        if directive == "vertex":
            if len(args) != 3:
                raise DSLSyntaxError("vertex takes <id> <weight> <genus>", line_no, column)
            (vid, id_col), (weight, w_col), (genus, g_col) = args
            if not _ID_RE.match(vid):
                raise DSLSyntaxError(f"id {vid!r} is not alphanumeric", line_no, id_col)
            if vid in vertices:
                logger.error(f"Duplicate vertex id {vid} on line {line_no}")
                raise DuplicateId(f"line {line_no}: vertex {vid!r} already declared")
            genus_value = _parse_int(genus, "genus", line_no, g_col)
            if genus_value < 0:
                raise BadWeight(f"line {line_no}, column {g_col}: genus must be nonnegative")
            vertices[vid] = Vertex(id=vid, weight=_parse_int(weight, "weight", line_no, w_col), genus=genus_value)

        elif directive == "edge":
            if len(args) != 2:
                raise DSLSyntaxError("edge takes <id> <id>", line_no, column)
            (u, u_col), (v, v_col) = args
            for vid, col in ((u, u_col), (v, v_col)):
                if vid not in vertices:
                    logger.error(f"Edge on line {line_no} names unknown vertex {vid}")
                    raise UnknownId(f"line {line_no}, column {col}: unknown vertex {vid!r}")
            if u == v:
                raise DSLSyntaxError(f"self-loop at {u!r}", line_no, v_col)
            edges.append((u, v))

        elif directive == "chain":
            if not args:
                raise DSLSyntaxError("chain needs at least one weight", line_no, column)
            previous = None
            for weight, w_col in args:
                chain_counter += 1
                vid = f"v{chain_counter}"
                if vid in vertices:
                    raise DuplicateId(f"line {line_no}: generated id {vid!r} is already declared")
                vertices[vid] = Vertex(id=vid, weight=_parse_int(weight, "weight", line_no, w_col))
                if previous is not None:
                    edges.append((previous, vid))
                previous = vid

        else:
            raise DSLSyntaxError(f"unknown directive {directive!r}", line_no, column)

    if not vertices:
        raise DSLSyntaxError("no vertices declared", 1, 1)

    graph = PlumbingGraph(vertices=tuple(vertices.values()), edges=tuple(edges))
    logger.debug(f"Parsed plumbing graph with {len(graph.vertices)} vertices and {len(graph.edges)} edges")
    return graph


def print_graph(g: PlumbingGraph) -> str:
    """Writes g in the explicit vertex/edge form accepted by parse()."""
    lines = [f"vertex {v.id} {v.weight} {v.genus}" for v in g.vertices]
    lines += [f"edge {u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def intersection_matrix(g: PlumbingGraph) -> SymMatrix:
    index = {v.id: i for i, v in enumerate(g.vertices)}
    n = len(g.vertices)
    rows = [[0] * n for _ in range(n)]
    for i, v in enumerate(g.vertices):
        rows[i][i] = v.weight
    for u, v in g.edges:
        i, j = index[u], index[v]
        rows[i][j] += 1
        rows[j][i] += 1
    return SymMatrix(rows)


def is_negative_definite(g: PlumbingGraph) -> bool:
    _, n_zero, n_plus = inertia(intersection_matrix(g))
    return n_zero == 0 and n_plus == 0


def _chain_order(g: PlumbingGraph) -> List[Vertex]:
    graph = g.to_networkx()
    simple = nx.Graph(graph)
    is_path = (
        nx.is_connected(simple)
        and simple.number_of_edges() == graph.number_of_edges() == len(g.vertices) - 1
        and all(d <= 2 for _, d in simple.degree())
    )
    if not is_path:
        raise NotLinearChain("the plumbing graph is not a linear chain")
    by_id = {v.id: v for v in g.vertices}
    if len(g.vertices) == 1:
        return list(g.vertices)
    start = next(v.id for v in g.vertices if simple.degree(v.id) == 1)
    end = next(v.id for v in reversed(g.vertices) if simple.degree(v.id) == 1 and v.id != start)
    return [by_id[vid] for vid in nx.shortest_path(simple, start, end)]


def chain_string(g: PlumbingGraph) -> HJString:
    """
    The HJ string of a linear chain of spheres, read from its first declared end.

    Raises:
        NotLinearChain: If g is not a path
        NotAllRational: If some vertex has positive genus
        WeightOutOfRange: If some weight is greater than -2
    """
    order = _chain_order(g)
    if any(v.genus > 0 for v in order):
        raise NotAllRational("every vertex of the chain must be a sphere")
    if any(v.weight > -2 for v in order):
        raise WeightOutOfRange(f"chain weights must be <= -2, got {[v.weight for v in order]}")
    return HJString(terms=tuple(-v.weight for v in order))


def boundary_lens(g: PlumbingGraph) -> LensSpace:
    return lens_of_chain(chain_string(g))


def find_cpq(g: PlumbingGraph, p: int, q: int) -> List[ConfigurationMatch]:
    """
    All embedded C_{p,q} configurations, counted up to reversal.

    A match is an induced path of spheres whose weights read -cpq_string(p, q)
    in either direction; interior vertices carry no edges besides the chain.
    """
    target = [-b for b in cpq_string(p, q).terms]
    graph = g.to_networkx()
    weight = {v.id: v.weight for v in g.vertices}
    genus = {v.id: v.genus for v in g.vertices}
    k = len(target)

    def is_configuration(path: List[str]) -> bool:
        for i, u in enumerate(path):
            for j in range(i + 1, len(path)):
                expected = 1 if j == i + 1 else 0
                if graph.number_of_edges(u, path[j]) != expected:
                    return False
        return all(graph.degree(u) == 2 for u in path[1:-1])

    def extend(path: List[str], sequence: List[int]) -> List[List[str]]:
        if len(path) == k:
            return [path]
        found = []
        for nxt in sorted(set(graph.neighbors(path[-1]))):
            if nxt not in path and genus[nxt] == 0 and weight[nxt] == sequence[len(path)]:
                found.extend(extend(path + [nxt], sequence))
        return found

    # a path read backwards is the same configuration, so only the forward string is searched
    order = {v.id: i for i, v in enumerate(g.vertices)}
    matches: Dict[Tuple[str, ...], ConfigurationMatch] = {}
    for v in g.vertices:
        if v.genus != 0 or v.weight != target[0]:
            continue
        for path in extend([v.id], target):
            if not is_configuration(path):
                continue
            key = min(tuple(path), tuple(reversed(path)))
            if key not in matches:
                matches[key] = ConfigurationMatch(
                    p=p, q=q, vertex_ids=tuple(path), reversed=order[path[0]] > order[path[-1]]
                )

    logger.debug(f"Found {len(matches)} C_({p},{q}) configurations")
    return sorted(matches.values(), key=lambda m: m.vertex_ids)
