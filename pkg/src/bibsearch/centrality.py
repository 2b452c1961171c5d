"""Co-author graph construction and betweenness-based document re-ranking.

Every pair of authors on a result-set document becomes an undirected edge;
edge weights count co-authored documents but play no role in path lengths.
Betweenness is computed with the standard single-source accumulation scheme
and normalized per connected component, so "sits on every shortest path of
its community" scores 1.0 regardless of how large the rest of the graph is.
Documents are then reordered by the centrality of their best-placed author.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

from .corpus import Corpus
from .index import ResultSet, ordinal_hits

AGGREGATIONS: dict[str, Callable[[list[float]], float]] = {
    "max": max,
    "mean": lambda values: sum(values) / len(values),
    "sum": sum,
}


@dataclass
class CoAuthorGraph:
    """Undirected weighted co-authorship graph, adjacency-mapped.

    Kept deterministic: vertices and neighbor maps are sorted by name.
    """

    adjacency: dict[str, dict[str, int]] = field(default_factory=dict)

    @property
    def vertices(self) -> list[str]:
        return list(self.adjacency)

    def edges(self) -> list[tuple[str, str, int]]:
        out = []
        for a, neighbors in self.adjacency.items():
            for b, weight in neighbors.items():
                if a < b:
                    out.append((a, b, weight))
        return out

    def vertex_count(self) -> int:
        return len(self.adjacency)

    def edge_count(self) -> int:
        return len(self.edges())


def build_graph(result_set: ResultSet, corpus: Corpus) -> CoAuthorGraph:
    """Build the co-author graph of exactly the result set's documents.

    A k-author document contributes all C(k,2) pairs; a single-author
    document contributes an isolated vertex.
    """
    adjacency: dict[str, dict[str, int]] = {}
    for hit in result_set.hits:
        authors = corpus.get_record(hit.record_id).authors
        for author in authors:
            adjacency.setdefault(author, {})
        for a, b in combinations(authors, 2):
            adjacency[a][b] = adjacency[a].get(b, 0) + 1
            adjacency[b][a] = adjacency[b].get(a, 0) + 1
    ordered = {v: dict(sorted(adjacency[v].items())) for v in sorted(adjacency)}
    return CoAuthorGraph(adjacency=ordered)


def _components(adjacency: dict[str, dict[str, int]]) -> list[list[str]]:
    seen: set[str] = set()
    components = []
    for start in adjacency:
        if start in seen:
            continue
        queue = deque([start])
        seen.add(start)
        component = []
        while queue:
            v = queue.popleft()
            component.append(v)
            for w in adjacency[v]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        components.append(component)
    return components


def betweenness(graph: CoAuthorGraph) -> dict[str, float]:
    """Normalized shortest-path betweenness per author, in [0, 1].

    Path lengths ignore edge weights.  Accumulation follows the
    predecessor-stack scheme (one BFS per source); the raw pair sums are
    divided by (n-1)(n-2)/2 within each connected component of size n >= 3,
    and smaller components score 0.
    """
    adjacency = graph.adjacency
    accumulated = {v: 0.0 for v in adjacency}

    for source in adjacency:
        stack: list[str] = []
        predecessors: dict[str, list[str]] = {v: [] for v in adjacency}
        sigma = dict.fromkeys(adjacency, 0.0)
        sigma[source] = 1.0
        distance = dict.fromkeys(adjacency, -1)
        distance[source] = 0
        queue = deque([source])
        while queue:
            v = queue.popleft()
            stack.append(v)
            for w in adjacency[v]:
                if distance[w] < 0:
                    distance[w] = distance[v] + 1
                    queue.append(w)
                if distance[w] == distance[v] + 1:
                    sigma[w] += sigma[v]
                    predecessors[w].append(v)
        dependency = dict.fromkeys(adjacency, 0.0)
        while stack:
            w = stack.pop()
            for v in predecessors[w]:
                dependency[v] += sigma[v] / sigma[w] * (1.0 + dependency[w])
            if w != source:
                accumulated[w] += dependency[w]

    scores: dict[str, float] = {}
    for component in _components(adjacency):
        n = len(component)
        if n < 3:
            for v in component:
                scores[v] = 0.0
            continue
        # accumulation visits each unordered pair from both endpoints,
        # so the per-component divisor is 2 * (n-1)(n-2)/2
        divisor = (n - 1) * (n - 2)
        for v in component:
            scores[v] = accumulated[v] / divisor
    return {v: scores[v] for v in adjacency}


def document_centrality(
    authors: tuple[str, ...], scores: dict[str, float], aggregation: str = "max"
) -> float:
    """Aggregate author centralities to one document score (0 if no authors)."""
    if not authors:
        return 0.0
    values = [scores.get(author, 0.0) for author in authors]
    return AGGREGATIONS[aggregation](values)


def centrality_rerank(result_set: ResultSet, corpus: Corpus, aggregation: str = "max") -> ResultSet:
    """Reorder documents by the betweenness of their authors.

    Sort keys: aggregated author centrality descending, then the incoming
    score descending, then record id.  The hit set is unchanged and scores
    become 1/position ordinals.
    """
    scores = betweenness(build_graph(result_set, corpus))
    keyed = [
        (
            -document_centrality(corpus.get_record(hit.record_id).authors, scores, aggregation),
            -hit.score,
            hit.record_id,
        )
        for hit in result_set.hits
    ]
    keyed.sort()
    return ResultSet(
        query=result_set.query,
        hits=ordinal_hits([rid for _, _, rid in keyed]),
        ranking_provenance=result_set.ranking_provenance + ["centrality"],
    )


def to_node_link(graph: CoAuthorGraph, scores: dict[str, float] | None = None) -> dict:
    """Node-link JSON export with per-author betweenness attached."""
    if scores is None:
        scores = betweenness(graph)
    return {
        "nodes": [{"id": v, "betweenness": scores.get(v, 0.0)} for v in graph.vertices],
        "links": [{"source": a, "target": b, "weight": w} for a, b, w in graph.edges()],
    }
