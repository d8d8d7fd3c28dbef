"""Hashtag co-occurrence networks: build, prune, and seed-neighborhood views.

Co-occurrence is counted within one post: every unordered pair of distinct
hashtags in a post increments that edge by one. Node prevalence is the total
occurrence count of the hashtag and drives render sizing downstream.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .corpus import Post
from .errors import NotFoundError

Edge = tuple[str, str]


def _canonical(a: str, b: str) -> Edge:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class CooccurrenceGraph:
    nodes: dict[str, int]  # hashtag -> prevalence
    edges: dict[Edge, int]  # (a, b) with a < b -> co-occurrence count
    window: tuple[str, str] | None = None
    seed_term: str | None = None

    def __post_init__(self):
        for (a, b), w in self.edges.items():
            assert a < b, "edge pairs must be stored in canonical order"
            assert a in self.nodes and b in self.nodes, "edge endpoints must be nodes"
            assert w >= 1

    def weight(self, a: str, b: str) -> int:
        return self.edges.get(_canonical(a, b), 0)

    def neighbors(self, node: str) -> set[str]:
        out = set()
        for a, b in self.edges:
            if a == node:
                out.add(b)
            elif b == node:
                out.add(a)
        return out


def build_graph(
    posts: list[Post],
    window: tuple[str, str] | None = None,
    seed_term: str | None = None,
) -> CooccurrenceGraph:
    nodes: dict[str, int] = {}
    edges: dict[Edge, int] = {}
    for post in posts:
        tags = post.hashtags
        for tag in tags:
            nodes[tag] = nodes.get(tag, 0) + 1
        for a, b in combinations(sorted(set(tags)), 2):
            edges[(a, b)] = edges.get((a, b), 0) + 1
    return CooccurrenceGraph(nodes, edges, window, seed_term)


def merge_graphs(left: CooccurrenceGraph, right: CooccurrenceGraph) -> CooccurrenceGraph:
    """Associative, commutative merge; supports sharded construction."""
    nodes = dict(left.nodes)
    for tag, prev in right.nodes.items():
        nodes[tag] = nodes.get(tag, 0) + prev
    edges = dict(left.edges)
    for pair, w in right.edges.items():
        edges[pair] = edges.get(pair, 0) + w
    return CooccurrenceGraph(nodes, edges, left.window or right.window, left.seed_term or right.seed_term)


def prune(graph: CooccurrenceGraph, min_weight: int) -> CooccurrenceGraph:
    """Keep edges with weight strictly greater than min_weight; drop nodes
    left isolated, except the seed term."""
    edges = {pair: w for pair, w in graph.edges.items() if w > min_weight}
    touched = {node for pair in edges for node in pair}
    if graph.seed_term is not None and graph.seed_term in graph.nodes:
        touched.add(graph.seed_term)
    nodes = {tag: prev for tag, prev in graph.nodes.items() if tag in touched}
    return CooccurrenceGraph(nodes, edges, graph.window, graph.seed_term)


def neighborhood(graph: CooccurrenceGraph, seed: str, depth: int) -> CooccurrenceGraph:
    """Induced subgraph of nodes within depth hops of the seed (BFS)."""
    if seed not in graph.nodes:
        raise NotFoundError(f"seed hashtag {seed!r} not in graph")
    reach = {seed: 0}
    queue = deque([seed])
    adjacency: dict[str, set[str]] = {}
    for a, b in graph.edges:
        adjacency.setdefault(a, set()).add(b)
        adjacency.setdefault(b, set()).add(a)
    while queue:
        node = queue.popleft()
        if reach[node] == depth:
            continue
        for nxt in adjacency.get(node, ()):
            if nxt not in reach:
                reach[nxt] = reach[node] + 1
                queue.append(nxt)
    nodes = {tag: prev for tag, prev in graph.nodes.items() if tag in reach}
    edges = {pair: w for pair, w in graph.edges.items() if pair[0] in reach and pair[1] in reach}
    return CooccurrenceGraph(nodes, edges, graph.window, seed)


def to_json(graph: CooccurrenceGraph) -> dict:
    return {
        "nodes": [{"id": tag, "prevalence": prev} for tag, prev in sorted(graph.nodes.items())],
        "edges": [{"a": a, "b": b, "w": w} for (a, b), w in sorted(graph.edges.items())],
        "seed": graph.seed_term,
        "window": list(graph.window) if graph.window else None,
    }


def to_dot(graph: CooccurrenceGraph) -> str:
    lines = ["graph cooccurrence {"]
    for tag, prev in sorted(graph.nodes.items()):
        lines.append(f'  "{tag}" [prevalence={prev}];')
    for (a, b), w in sorted(graph.edges.items()):
        lines.append(f'  "{a}" -- "{b}" [weight={w}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def from_json(payload: dict) -> CooccurrenceGraph:
    nodes = {n["id"]: n["prevalence"] for n in payload["nodes"]}
    edges = {_canonical(e["a"], e["b"]): e["w"] for e in payload["edges"]}
    window = tuple(payload["window"]) if payload.get("window") else None
    return CooccurrenceGraph(nodes, edges, window, payload.get("seed"))
