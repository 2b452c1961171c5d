"""Cross-concordance storage and cross-vocabulary query translation.

Crosswalks between controlled vocabularies are loaded from CSV files and kept
as directed term-to-term relations.  Lookups are single-hop only: relations
are never chained through an intermediate vocabulary, because every crosswalk
is a pairwise intellectual product and chaining would compound translation
error.  The reverse direction of a relation exists only if a reverse crosswalk
was loaded, so asymmetric mapping sets stay asymmetric.
"""

from __future__ import annotations

import csv
import enum
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

from .corpus import Corpus
from .errors import DataError


class RelationKind(enum.Enum):
    """Closed set of crosswalk relation types.

    Hierarchy relations are encoded from the source term's point of view:
    BT maps to a broader target term, NT to a narrower one.
    """

    EQ = "EQ"
    BT = "BT"
    NT = "NT"
    RT = "RT"


#: result ordering: equivalence first, association last
KIND_PRECEDENCE = {kind: i for i, kind in enumerate(RelationKind)}


class MalformedRelation(DataError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"crosswalk line {line}: {reason}")
        self.line = line
        self.reason = reason


class UnknownVocabulary(DataError):
    def __init__(self, vocab_id: str):
        super().__init__(f"unknown vocabulary: {vocab_id!r}")
        self.vocab_id = vocab_id


@dataclass(frozen=True)
class TermRelation:
    """One directed crosswalk edge between terms of two vocabularies."""

    source_vocab: str
    source_term: str
    kind: RelationKind
    target_vocab: str
    target_term: str


CSV_HEADER = ["source_vocab", "source_term", "kind", "target_vocab", "target_term"]


class CrossConcordanceStore:
    """Relation store indexed for source-term and vocabulary-pair lookup."""

    def __init__(self, corpus: Corpus):
        self._corpus = corpus
        self._relations: set[TermRelation] = set()
        self._by_source: dict[tuple[str, str], list[TermRelation]] = {}
        self._by_vocab_pair: dict[tuple[str, str], list[TermRelation]] = {}

    def __len__(self) -> int:
        return len(self._relations)

    @property
    def relations(self) -> set[TermRelation]:
        return self._relations

    def _check_vocab(self, vocab_id: str) -> None:
        if vocab_id not in self._corpus.vocabularies:
            raise UnknownVocabulary(vocab_id)

    def add(self, relation: TermRelation) -> bool:
        """Add one relation; returns False if it was already stored."""
        self._check_vocab(relation.source_vocab)
        self._check_vocab(relation.target_vocab)
        if relation in self._relations:
            return False
        self._relations.add(relation)
        self._by_source.setdefault((relation.source_vocab, relation.source_term), []).append(relation)
        self._by_vocab_pair.setdefault((relation.source_vocab, relation.target_vocab), []).append(relation)
        return True

    def relations_between(self, source_vocab: str, target_vocab: str) -> list[TermRelation]:
        """All loaded relations of one directed crosswalk, deterministically ordered."""
        found = list(self._by_vocab_pair.get((source_vocab, target_vocab), []))
        found.sort(key=lambda r: (r.source_term, KIND_PRECEDENCE[r.kind], r.target_term))
        return found

    def load_crosswalk(self, path: str | Path) -> int:
        """Load a crosswalk CSV; atomic, duplicates silently dropped.

        Returns the number of distinct relations that were new to the store.
        A zero-byte file loads zero relations; otherwise the exact header
        ``source_vocab,source_term,kind,target_vocab,target_term`` is required.
        """
        with open(path, encoding="utf-8", newline="") as fh:
            rows = list(csv.reader(fh))
        if not rows:
            return 0
        if rows[0] != CSV_HEADER:
            raise MalformedRelation(1, f"expected header {','.join(CSV_HEADER)}")

        parsed: list[TermRelation] = []
        for line_no, row in enumerate(rows[1:], start=2):
            if not row:
                continue
            if len(row) != 5:
                raise MalformedRelation(line_no, f"expected 5 fields, got {len(row)}")
            source_vocab, source_term, kind_name, target_vocab, target_term = row
            if not all((source_vocab, source_term, kind_name, target_vocab, target_term)):
                raise MalformedRelation(line_no, "empty field")
            try:
                kind = RelationKind(kind_name)
            except ValueError:
                raise MalformedRelation(line_no, f"unknown relation kind: {kind_name!r}") from None
            if source_vocab == target_vocab:
                raise MalformedRelation(line_no, "source and target vocabulary are identical")
            self._check_vocab(source_vocab)
            self._check_vocab(target_vocab)
            parsed.append(TermRelation(source_vocab, source_term, kind, target_vocab, target_term))

        added = 0
        for relation in parsed:
            if self.add(relation):
                added += 1
        return added

    def map_term(
        self,
        term: str,
        source_vocab: str,
        target_vocab: str,
        kinds: Iterable[RelationKind],
    ) -> list[tuple[str, RelationKind]]:
        """Translate one term into one target vocabulary, single hop.

        Results are ordered EQ, BT, NT, RT, ties alphabetically by target
        term; an unmapped term yields an empty list.
        """
        wanted = set(kinds)
        matches = [
            rel
            for rel in self._by_source.get((source_vocab, term), [])
            if rel.target_vocab == target_vocab and rel.kind in wanted
        ]
        matches.sort(key=lambda rel: (KIND_PRECEDENCE[rel.kind], rel.target_term))
        return [(rel.target_term, rel.kind) for rel in matches]

    def expand_query_terms(
        self,
        terms: Iterable[tuple[str, str]],
        target_vocabs: Iterable[str],
        kinds: Iterable[RelationKind],
    ) -> dict[str, set[str]]:
        """Expand query terms into every target vocabulary.

        Each target vocabulary maps to the union of single-hop translations
        of all input terms, plus any input term that already belongs to it.
        Every requested target appears as a key, possibly with an empty set.
        """
        term_list = list(terms)
        kind_set = set(kinds)
        expanded: dict[str, set[str]] = {vocab: set() for vocab in target_vocabs}
        for source_vocab, term in term_list:
            if source_vocab in expanded:
                expanded[source_vocab].add(term)
            for target_vocab in expanded:
                if target_vocab == source_vocab:
                    continue
                for target_term, _ in self.map_term(term, source_vocab, target_vocab, kind_set):
                    expanded[target_vocab].add(target_term)
        return expanded


def write_crosswalk(relations: Iterable[TermRelation], path: str | Path) -> None:
    """Write relations back out in the crosswalk CSV schema (sorted)."""
    ordered = sorted(
        relations,
        key=lambda r: (r.source_vocab, r.source_term, KIND_PRECEDENCE[r.kind], r.target_vocab, r.target_term),
    )
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER)
        for rel in ordered:
            writer.writerow([rel.source_vocab, rel.source_term, rel.kind.value, rel.target_vocab, rel.target_term])


def parse_kinds(spec: str | None, default: Iterable[RelationKind]) -> set[RelationKind]:
    """Parse a comma-separated kinds flag like ``EQ,BT``; None means default."""
    if spec is None:
        return set(default)
    kinds: set[RelationKind] = set()
    for chunk in spec.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            kinds.add(RelationKind(chunk))
        except ValueError:
            raise DataError(f"unknown relation kind: {chunk!r}") from None
    if not kinds:
        raise DataError("no relation kinds given")
    return kinds


# Mapping used when deserializing search requests.
KIND_BY_NAME: Mapping[str, RelationKind] = {kind.value: kind for kind in RelationKind}
