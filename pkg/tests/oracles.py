"""Independent reference computations the implementation is checked against.

Everything here is deliberately written along a different route than the
package code: betweenness by Floyd-Warshall distances plus explicit
enumeration of shortest paths, G² by the entropy-style formula, tf-idf by a
direct pass over raw record dicts, bradfordizing by a one-shot composite
sort key.
"""

from __future__ import annotations

import math
from collections import Counter

INF = float("inf")


# -- betweenness -------------------------------------------------------


def _floyd_warshall(adjacency: dict[str, set[str]]) -> dict[str, dict[str, float]]:
    vertices = list(adjacency)
    dist = {u: {v: (0 if u == v else INF) for v in vertices} for u in vertices}
    for u in vertices:
        for v in adjacency[u]:
            dist[u][v] = 1
    for k in vertices:
        for i in vertices:
            dik = dist[i][k]
            if dik == INF:
                continue
            for j in vertices:
                if dik + dist[k][j] < dist[i][j]:
                    dist[i][j] = dik + dist[k][j]
    return dist


def _all_shortest_paths(s, t, adjacency, dist):
    """Every shortest s-t path, as explicit vertex tuples."""
    paths = []

    def extend(path):
        head = path[-1]
        if head == t:
            paths.append(tuple(path))
            return
        for w in adjacency[head]:
            # stay on a shortest route: one step forward, remainder optimal
            if dist[s][w] == dist[s][head] + 1 and dist[w][t] == dist[head][t] - 1:
                extend(path + [w])

    extend([s])
    return paths


def brute_force_betweenness(adjacency: dict[str, set[str]]) -> dict[str, float]:
    """Betweenness via literal path counting, normalized per component."""
    vertices = list(adjacency)
    dist = _floyd_warshall(adjacency)
    raw = {v: 0.0 for v in vertices}
    for i, s in enumerate(vertices):
        for t in vertices[i + 1 :]:
            if dist[s][t] == INF:
                continue
            paths = _all_shortest_paths(s, t, adjacency, dist)
            sigma = len(paths)
            through: Counter[str] = Counter()
            for path in paths:
                for v in path[1:-1]:
                    through[v] += 1
            for v, count in through.items():
                raw[v] += count / sigma

    scores = {}
    seen: set[str] = set()
    for v in vertices:
        if v in seen:
            continue
        component = [u for u in vertices if dist[v][u] < INF]
        seen.update(component)
        n = len(component)
        for u in component:
            scores[u] = raw[u] / ((n - 1) * (n - 2) / 2) if n >= 3 else 0.0
    return scores


# -- log-likelihood ratio ----------------------------------------------


def direct_llr(k11: int, k12: int, k21: int, k22: int) -> float:
    """G² via the entropy-style expansion 2(ΣO lnO − Σrow lnrow − Σcol lncol + N lnN)."""

    def xlnx(x: float) -> float:
        return x * math.log(x) if x > 0 else 0.0

    n = k11 + k12 + k21 + k22
    return 2.0 * (
        xlnx(k11)
        + xlnx(k12)
        + xlnx(k21)
        + xlnx(k22)
        - xlnx(k11 + k12)
        - xlnx(k21 + k22)
        - xlnx(k11 + k21)
        - xlnx(k12 + k22)
        + xlnx(n)
    )


# -- baseline ranking ---------------------------------------------------


def _tokens(text: str) -> list[str]:
    out = []
    current = []
    for ch in text.lower():
        if ch.isalnum() and ch != "_":
            current.append(ch)
        else:
            if current:
                out.append("".join(current))
            current = []
    if current:
        out.append("".join(current))
    return [t for t in out if len(t) >= 2]


def tfidf_oracle(records: list[dict], query_text: str) -> dict[str, float]:
    """Recompute baseline free-text scores straight from raw record dicts."""
    n = len(records)
    query_tokens = set(_tokens(query_text))
    scores: dict[str, float] = {}
    for token in query_tokens:
        df = sum(
            1
            for rec in records
            if token in _tokens(rec.get("title", "")) or token in _tokens(rec.get("abstract", ""))
        )
        if df == 0:
            continue
        idf = math.log((1 + n) / (1 + df)) + 1.0
        for rec in records:
            tf = _tokens(rec.get("title", "")).count(token) + _tokens(rec.get("abstract", "")).count(token)
            if tf:
                scores[rec["id"]] = scores.get(rec["id"], 0.0) + (1.0 + math.log(tf)) * idf
    return scores


# -- bradfordizing ------------------------------------------------------


def bradford_sort_oracle(hits: list[tuple[str, float]], journal_of: dict[str, str | None]) -> list[str]:
    """Expected bradfordize order via one composite sort over the input."""
    counts = Counter(journal_of[rid] for rid, _ in hits if journal_of[rid] is not None)
    with_journal = [(rid, score) for rid, score in hits if journal_of[rid] is not None]
    without_journal = [rid for rid, _ in hits if journal_of[rid] is None]
    with_journal.sort(
        key=lambda item: (-counts[journal_of[item[0]]], journal_of[item[0]], -item[1], item[0])
    )
    return [rid for rid, _ in with_journal] + without_journal


def bradford_zones_oracle(counts: list[int]) -> list[list[int]]:
    """Greedy minimal-prefix three-way split of a descending count list."""
    total = sum(counts)
    zones: list[list[int]] = [[], [], []]
    zone = 0
    for count in counts:
        zones[zone].append(count)
        if zone < 2 and sum(zones[zone]) * 3 >= total:
            zone += 1
    return zones
