"""Full search loop: expansion, per-database search, merge, re-ranking.

The pipeline wires the other modules into the federated flow: translate the
chosen controlled terms into every vocabulary, run one baseline search per
database, merge the lists, then apply one of six re-ranking modes.  The two
bibliometric signals can run alone, filter each other in either order, or be
intersected; the filter orders genuinely differ because reducing to core
journals first can drop the very authors that dominate the full network.

Term recommendation stays outside execute(): it feeds the human's term
choice before a search, it is not applied silently.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from . import bradford, centrality
from .corpus import Corpus
from .errors import DataError
from .heterogeneity import CrossConcordanceStore, RelationKind
from .index import Hit, Query, ResultSet, SearchIndex, ordinal_hits, sort_hits

DEFAULT_CENTRALITY_THRESHOLD = 0.25
DEFAULT_EXPANSION_KINDS = frozenset({RelationKind.EQ})
TOP_AUTHOR_COUNT = 10


class RerankMode(enum.Enum):
    NONE = "none"
    BRADFORD = "bradford"
    CENTRALITY = "centrality"
    BRADFORD_THEN_CENTRALITY = "bradford_then_centrality"
    CENTRALITY_THEN_BRADFORD = "centrality_then_bradford"
    INTERSECTION = "intersection"


@dataclass
class SearchRequest:
    free_text: str = ""
    chosen_controlled: list[tuple[str, str]] = field(default_factory=list)
    databases: set[str] = field(default_factory=set)
    expand: bool = False
    expansion_kinds: set[RelationKind] = field(default_factory=lambda: set(DEFAULT_EXPANSION_KINDS))
    rerank: RerankMode = RerankMode.NONE
    centrality_threshold: float = DEFAULT_CENTRALITY_THRESHOLD
    nucleus_only: bool = False
    limit: int | None = None

    def __post_init__(self) -> None:
        if not 0.0 <= self.centrality_threshold <= 1.0:
            raise ValueError("centrality_threshold must be within [0, 1]")
        if not self.free_text and not self.chosen_controlled:
            raise ValueError("request needs free text or at least one controlled term")
        if self.limit is not None and self.limit < 0:
            raise ValueError("limit must be non-negative")


@dataclass
class CoAuthorSummary:
    vertices: int
    edges: int
    top_authors: list[tuple[str, float]]

    def to_json_dict(self) -> dict:
        return {
            "vertices": self.vertices,
            "edges": self.edges,
            "top_authors": [{"author": a, "betweenness": b} for a, b in self.top_authors],
        }


@dataclass
class SearchResponse:
    result_set: ResultSet
    bradford_partition: bradford.BradfordPartition | None
    coauthor_summary: CoAuthorSummary | None
    applied_expansions: dict[str, set[str]]

    def to_json_dict(self) -> dict:
        return {
            "result_set": self.result_set.to_json_dict(),
            "bradford_partition": (
                self.bradford_partition.to_json_dict() if self.bradford_partition else None
            ),
            "coauthor_summary": (
                self.coauthor_summary.to_json_dict() if self.coauthor_summary else None
            ),
            "applied_expansions": {
                vocab: sorted(terms) for vocab, terms in sorted(self.applied_expansions.items())
            },
        }


def merge_result_sets(sets: list[ResultSet]) -> ResultSet:
    """Union per-database hit lists into one; shared records keep their best score."""
    if not sets:
        raise ValueError("nothing to merge")
    scores: dict[str, float] = {}
    for result_set in sets:
        for hit in result_set.hits:
            if hit.record_id not in scores or hit.score > scores[hit.record_id]:
                scores[hit.record_id] = hit.score
    return ResultSet(query=sets[0].query, hits=sort_hits(scores), ranking_provenance=["baseline", "merged"])


def _reduce_hits(result_set: ResultSet, keep: set[str], stage: str) -> ResultSet:
    return ResultSet(
        query=result_set.query,
        hits=[hit for hit in result_set.hits if hit.record_id in keep],
        ranking_provenance=result_set.ranking_provenance + [stage],
    )


def combine_bradford_then_centrality(result_set: ResultSet, corpus: Corpus) -> ResultSet:
    """Core journals as a filter for the author network.

    The set is first cut down to nucleus documents; the co-author graph and
    centralities are then computed on that reduced set only.
    """
    nucleus = set(bradford.nucleus_documents(result_set, corpus))
    reduced = _reduce_hits(result_set, nucleus, "bradford_filter")
    return centrality.centrality_rerank(reduced, corpus)


def combine_centrality_then_bradford(
    result_set: ResultSet, corpus: Corpus, threshold: float
) -> ResultSet:
    """Author centrality as a filter before core journals are evaluated.

    Centrality is computed on the full result-set graph; documents whose
    best author falls below the threshold are dropped, and the survivors
    are bradfordized (journal productivity re-counted on the reduced set).
    """
    if not 0.0 <= threshold <= 1.0:
        raise ValueError("threshold must be within [0, 1]")
    scores = centrality.betweenness(centrality.build_graph(result_set, corpus))
    central = {
        hit.record_id
        for hit in result_set.hits
        if centrality.document_centrality(corpus.get_record(hit.record_id).authors, scores) >= threshold
    }
    reduced = _reduce_hits(result_set, central, "centrality_filter")
    return bradford.bradfordize(reduced, corpus)


def combine_intersection(result_set: ResultSet, corpus: Corpus, threshold: float) -> ResultSet:
    """Keep only documents that are in a core journal AND have central authors.

    Both criteria are evaluated independently on the full result set; the
    intersection is ordered by author centrality, then journal rank, then id.
    """
    if not 0.0 <= threshold <= 1.0:
        raise ValueError("threshold must be within [0, 1]")
    nucleus = set(bradford.nucleus_documents(result_set, corpus))
    scores = centrality.betweenness(centrality.build_graph(result_set, corpus))
    doc_centrality = {
        hit.record_id: centrality.document_centrality(
            corpus.get_record(hit.record_id).authors, scores
        )
        for hit in result_set.hits
    }
    rank_of = {jr.journal: jr.rank for jr in bradford.rank_journals(result_set, corpus)}

    kept = [
        rid
        for rid in (hit.record_id for hit in result_set.hits)
        if rid in nucleus and doc_centrality[rid] >= threshold
    ]
    kept.sort(key=lambda rid: (-doc_centrality[rid], rank_of[corpus.get_record(rid).journal], rid))
    return ResultSet(
        query=result_set.query,
        hits=ordinal_hits(kept),
        ranking_provenance=result_set.ranking_provenance + ["intersection"],
    )


class SearchPipeline:
    """Executes search requests against a frozen corpus, index and crosswalk store."""

    def __init__(self, corpus: Corpus, index: SearchIndex, store: CrossConcordanceStore | None = None):
        self.corpus = corpus
        self.index = index
        self.store = store

    def _expand(self, request: SearchRequest) -> tuple[list[tuple[str, str]], dict[str, set[str]]]:
        chosen = list(request.chosen_controlled)
        if not request.expand or self.store is None or not chosen:
            return chosen, {}
        kinds = request.expansion_kinds or set(DEFAULT_EXPANSION_KINDS)
        targets = set(self.corpus.vocabularies) | {vocab for vocab, _ in chosen}
        expanded = self.store.expand_query_terms(chosen, targets, kinds)
        atoms = sorted(
            (vocab, term) for vocab, terms in expanded.items() for term in terms
        )
        original: dict[str, set[str]] = {}
        for vocab, term in chosen:
            original.setdefault(vocab, set()).add(term)
        applied = {
            vocab: terms - original.get(vocab, set())
            for vocab, terms in expanded.items()
            if terms - original.get(vocab, set())
        }
        return atoms, applied

    def execute(self, request: SearchRequest) -> SearchResponse:
        """Run the staged search loop and assemble the response.

        Stages: cross-vocabulary expansion (optional), one baseline search
        per database, merge, re-rank per mode, optional nucleus filter and
        truncation.  The partition / co-author summary blocks describe the
        set each signal was actually evaluated on.
        """
        atoms, applied = self._expand(request)
        databases = sorted(request.databases) if request.databases else sorted(self.corpus.databases)

        per_database = [
            self.index.search(Query(request.free_text, tuple(atoms), frozenset({db})))
            for db in databases
        ]
        merged_query = Query(request.free_text, tuple(atoms), frozenset(request.databases)) if (
            request.free_text or atoms
        ) else None
        if per_database:
            merged = merge_result_sets(per_database)
            merged.query = merged_query
        else:
            merged = ResultSet(query=merged_query, hits=[], ranking_provenance=["baseline", "merged"])

        partition: bradford.BradfordPartition | None = None
        summary: CoAuthorSummary | None = None
        mode = request.rerank

        if mode is RerankMode.NONE:
            result = merged
        elif mode is RerankMode.BRADFORD:
            result = bradford.bradfordize(merged, self.corpus)
            partition = self._partition(merged)
        elif mode is RerankMode.CENTRALITY:
            result = centrality.centrality_rerank(merged, self.corpus)
            summary = self._summary(merged)
        elif mode is RerankMode.BRADFORD_THEN_CENTRALITY:
            result = combine_bradford_then_centrality(merged, self.corpus)
            partition = self._partition(merged)
            nucleus = set(bradford.nucleus_documents(merged, self.corpus))
            summary = self._summary(_reduce_hits(merged, nucleus, "bradford_filter"))
        elif mode is RerankMode.CENTRALITY_THEN_BRADFORD:
            result = combine_centrality_then_bradford(merged, self.corpus, request.centrality_threshold)
            summary = self._summary(merged)
            reduced_ids = set(result.ids())
            partition = self._partition(_reduce_hits(merged, reduced_ids, "centrality_filter"))
        elif mode is RerankMode.INTERSECTION:
            result = combine_intersection(merged, self.corpus, request.centrality_threshold)
            partition = self._partition(merged)
            summary = self._summary(merged)
        else:  # pragma: no cover - closed enum
            raise DataError(f"unsupported rerank mode: {mode}")

        if request.nucleus_only:
            if partition is None:
                partition = self._partition(result)
            nucleus_ids = bradford.nucleus_documents(result, self.corpus)
            result = ResultSet(
                query=result.query,
                hits=ordinal_hits(nucleus_ids),
                ranking_provenance=result.ranking_provenance + ["nucleus"],
            )

        if request.limit is not None and len(result.hits) > request.limit:
            result = ResultSet(
                query=result.query,
                hits=result.hits[: request.limit],
                ranking_provenance=result.ranking_provenance,
            )

        return SearchResponse(
            result_set=result,
            bradford_partition=partition,
            coauthor_summary=summary,
            applied_expansions=applied,
        )

    def _partition(self, result_set: ResultSet) -> bradford.BradfordPartition | None:
        if not bradford.rank_journals(result_set, self.corpus):
            return None
        return bradford.partition_result_set(result_set, self.corpus)

    def _summary(self, result_set: ResultSet) -> CoAuthorSummary:
        graph = centrality.build_graph(result_set, self.corpus)
        scores = centrality.betweenness(graph)
        top = sorted(scores.items(), key=lambda kv: (-kv[1], kv[0]))[:TOP_AUTHOR_COUNT]
        return CoAuthorSummary(
            vertices=graph.vertex_count(),
            edges=graph.edge_count(),
            top_authors=top,
        )
