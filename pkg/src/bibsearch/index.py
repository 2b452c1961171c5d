"""Inverted index and baseline ranking over one or more databases.

This is the substrate the re-rankers permute: an OR-combining tf-idf index
over title/abstract tokens plus exact-match postings for controlled terms.
Controlled-term matches carry a fixed weight high enough to outrank any
incidental free-text match, so a vocabulary-driven query stays
vocabulary-driven after merging.
"""

from __future__ import annotations

import math
import pickle
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import NamedTuple

from .corpus import Corpus
from .errors import DataError
from .recommender import tokenize

INDEX_FORMAT = "bibsearch-index"
INDEX_VERSION = 1

TEXT_FIELDS = ("title", "abstract")


class Posting(NamedTuple):
    record_id: str
    field: str  # "title" | "abstract" | "controlled_term"
    term_frequency: int


class Hit(NamedTuple):
    record_id: str
    score: float


@dataclass
class Query:
    """OR-combination of free-text tokens and exact controlled terms."""

    free_text: str = ""
    controlled: tuple[tuple[str, str], ...] = ()
    databases: frozenset[str] = frozenset()
    combination: str = "OR"

    def __post_init__(self) -> None:
        self.controlled = tuple((v, t) for v, t in self.controlled)
        self.databases = frozenset(self.databases)
        if not self.free_text and not self.controlled:
            raise ValueError("query needs free text or at least one controlled term")
        if self.combination != "OR":
            raise ValueError("only OR combination is supported")

    def to_json_dict(self) -> dict:
        return {
            "free_text": self.free_text,
            "controlled": [{"vocab": v, "term": t} for v, t in sorted(self.controlled)],
            "databases": sorted(self.databases),
            "combination": self.combination,
        }


@dataclass
class ResultSet:
    """Ordered, scored record ids plus the trail of ranking stages applied."""

    query: Query | None
    hits: list[Hit]
    ranking_provenance: list[str] = field(default_factory=lambda: ["baseline"])

    def ids(self) -> list[str]:
        return [h.record_id for h in self.hits]

    def __len__(self) -> int:
        return len(self.hits)

    def to_json_dict(self) -> dict:
        return {
            "query": self.query.to_json_dict() if self.query else None,
            "hits": [{"id": h.record_id, "score": h.score} for h in self.hits],
            "ranking_provenance": list(self.ranking_provenance),
        }


def sort_hits(scored: dict[str, float]) -> list[Hit]:
    """Canonical hit order: score descending, ties by record id ascending."""
    return [Hit(rid, score) for rid, score in sorted(scored.items(), key=lambda kv: (-kv[1], kv[0]))]


def ordinal_hits(ordered_ids: list[str]) -> list[Hit]:
    """Replace scores with 1/position so any ordering satisfies the sort invariant."""
    return [Hit(rid, 1.0 / pos) for pos, rid in enumerate(ordered_ids, start=1)]


class SearchIndex:
    """Immutable postings built once from a frozen corpus."""

    def __init__(self) -> None:
        self.n_records = 0
        self.text_postings: dict[str, list[Posting]] = {}
        self.controlled_postings: dict[tuple[str, str], list[Posting]] = {}
        self.document_frequency: dict[str, int] = {}
        self.record_database: dict[str, str] = {}
        self.w_cv = 2.0

    @classmethod
    def build(cls, corpus: Corpus) -> "SearchIndex":
        if not corpus.frozen:
            raise DataError("corpus must be frozen before indexing")
        index = cls()
        index.n_records = len(corpus)
        text: dict[str, list[Posting]] = defaultdict(list)
        controlled: dict[tuple[str, str], list[Posting]] = defaultdict(list)
        df: dict[str, set[str]] = defaultdict(set)

        for record in corpus:
            index.record_database[record.id] = record.database_id
            for field_name in TEXT_FIELDS:
                counts: dict[str, int] = {}
                for token in tokenize(getattr(record, field_name)):
                    counts[token] = counts.get(token, 0) + 1
                for token, tf in sorted(counts.items()):
                    text[token].append(Posting(record.id, field_name, tf))
                    df[token].add(record.id)
            term_counts: dict[tuple[str, str], int] = {}
            for pair in record.controlled_terms:
                term_counts[pair] = term_counts.get(pair, 0) + 1
            for pair, tf in sorted(term_counts.items()):
                controlled[pair].append(Posting(record.id, "controlled_term", tf))

        index.text_postings = dict(sorted(text.items()))
        index.controlled_postings = dict(sorted(controlled.items()))
        index.document_frequency = {token: len(ids) for token, ids in sorted(df.items())}
        if index.document_frequency:
            index.w_cv = 2.0 * max(index.idf(t) for t in index.document_frequency)
        return index

    def idf(self, token: str) -> float:
        """Smoothed inverse document frequency, strictly positive for df >= 1."""
        df = self.document_frequency.get(token, 0)
        return math.log((1 + self.n_records) / (1 + df)) + 1.0

    def search(self, query: Query) -> ResultSet:
        """Baseline-ranked OR search.

        Score = Σ over matched distinct free-text tokens of (1+ln tf)·idf,
        with tf summed across title and abstract, plus w_cv per matched
        controlled term; restricted to query.databases when set.
        """
        scores: dict[str, float] = defaultdict(float)

        for token in sorted(set(tokenize(query.free_text))):
            postings = self.text_postings.get(token)
            if not postings:
                continue
            tf_by_record: dict[str, int] = defaultdict(int)
            for posting in postings:
                tf_by_record[posting.record_id] += posting.term_frequency
            weight = self.idf(token)
            for rid, tf in tf_by_record.items():
                scores[rid] += (1.0 + math.log(tf)) * weight

        for atom in sorted(set(query.controlled)):
            for posting in self.controlled_postings.get(atom, []):
                scores[posting.record_id] += self.w_cv

        if query.databases:
            scores = {
                rid: score
                for rid, score in scores.items()
                if self.record_database.get(rid) in query.databases
            }

        return ResultSet(query=query, hits=sort_hits(dict(scores)), ranking_provenance=["baseline"])

    def save(self, path: str | Path) -> None:
        payload = {
            "format": INDEX_FORMAT,
            "version": INDEX_VERSION,
            "n_records": self.n_records,
            "text_postings": self.text_postings,
            "controlled_postings": self.controlled_postings,
            "document_frequency": self.document_frequency,
            "record_database": self.record_database,
            "w_cv": self.w_cv,
        }
        with open(path, "wb") as fh:
            pickle.dump(payload, fh)

    @classmethod
    def load(cls, path: str | Path) -> "SearchIndex":
        with open(path, "rb") as fh:
            payload = pickle.load(fh)
        if payload.get("format") != INDEX_FORMAT or payload.get("version") != INDEX_VERSION:
            raise DataError(f"not a readable index file: {path}")
        index = cls()
        index.n_records = payload["n_records"]
        index.text_postings = payload["text_postings"]
        index.controlled_postings = payload["controlled_postings"]
        index.document_frequency = payload["document_frequency"]
        index.record_database = payload["record_database"]
        index.w_cv = payload["w_cv"]
        return index
