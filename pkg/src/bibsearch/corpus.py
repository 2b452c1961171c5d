"""Bibliographic record model and multi-database corpus container.

A corpus holds metadata records from one or more source databases plus a
registry of the controlled vocabularies those records are tagged with.
Ingest is batch-oriented and all-or-nothing; once built, a corpus is frozen
and shared read-only by the index, recommender and re-ranking stages.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

from .errors import DataError

_WHITESPACE = re.compile(r"\s+")

#: keys a record object may carry; the first set is mandatory
REQUIRED_RECORD_KEYS = {"id", "database_id", "title", "authors", "controlled_terms"}
OPTIONAL_RECORD_KEYS = {"abstract", "journal", "year"}


class MalformedRecord(DataError):
    """A record line failed validation; the whole ingest is rolled back."""

    def __init__(self, line: int, reason: str):
        super().__init__(f"record on line {line}: {reason}")
        self.line = line
        self.reason = reason


class DuplicateId(DataError):
    def __init__(self, record_id: str):
        super().__init__(f"duplicate record id: {record_id!r}")
        self.record_id = record_id


class DuplicateVocabulary(DataError):
    def __init__(self, vocab_id: str):
        super().__init__(f"vocabulary already registered: {vocab_id!r}")
        self.vocab_id = vocab_id


class NotFound(DataError):
    def __init__(self, record_id: str):
        super().__init__(f"no record with id {record_id!r}")
        self.record_id = record_id


class CorpusFrozen(DataError):
    def __init__(self) -> None:
        super().__init__("corpus is frozen; ingest and registration are closed")


def normalize_author(name: str) -> str:
    """Trim and collapse internal whitespace; this is the author identity."""
    return _WHITESPACE.sub(" ", name.strip())


@dataclass(frozen=True)
class Record:
    """One bibliographic metadata item.

    ``journal`` is None for monographs and other non-serial items; such
    records are kept and handled downstream, never rejected.  ``authors``
    holds normalized names with duplicates removed, first occurrence wins.
    """

    id: str
    database_id: str
    title: str
    authors: tuple[str, ...]
    controlled_terms: tuple[tuple[str, str], ...]
    abstract: str = ""
    journal: str | None = None
    year: int | None = None

    def to_json_dict(self) -> dict:
        out: dict = {
            "id": self.id,
            "database_id": self.database_id,
            "title": self.title,
            "abstract": self.abstract,
            "authors": list(self.authors),
            "controlled_terms": [{"vocab": v, "term": t} for v, t in self.controlled_terms],
        }
        if self.journal is not None:
            out["journal"] = self.journal
        if self.year is not None:
            out["year"] = self.year
        return out


@dataclass(frozen=True)
class Vocabulary:
    """A registered controlled vocabulary (thesaurus, classification, ...)."""

    vocab_id: str
    name: str
    terms: frozenset[str]


def _parse_record(obj: object, line: int, known_vocabs: Iterable[str]) -> Record:
    if not isinstance(obj, dict):
        raise MalformedRecord(line, "record must be a JSON object")
    unknown = set(obj) - REQUIRED_RECORD_KEYS - OPTIONAL_RECORD_KEYS
    if unknown:
        raise MalformedRecord(line, f"unknown keys: {sorted(unknown)}")
    for key in sorted(REQUIRED_RECORD_KEYS):
        if key not in obj:
            raise MalformedRecord(line, f"missing {key}")

    rid = obj["id"]
    if not isinstance(rid, str) or not rid:
        raise MalformedRecord(line, "id must be a non-empty string")
    database_id = obj["database_id"]
    if not isinstance(database_id, str) or not database_id:
        raise MalformedRecord(line, "database_id must be a non-empty string")
    title = obj["title"]
    if not isinstance(title, str):
        raise MalformedRecord(line, "title must be a string")
    abstract = obj.get("abstract", "")
    if not isinstance(abstract, str):
        raise MalformedRecord(line, "abstract must be a string")

    raw_authors = obj["authors"]
    if not isinstance(raw_authors, list) or any(not isinstance(a, str) for a in raw_authors):
        raise MalformedRecord(line, "authors must be a list of strings")
    authors: list[str] = []
    for raw in raw_authors:
        name = normalize_author(raw)
        if not name:
            raise MalformedRecord(line, "author name must be non-empty")
        if name not in authors:
            authors.append(name)

    journal = obj.get("journal")
    if journal is not None and (not isinstance(journal, str) or not journal):
        raise MalformedRecord(line, "journal must be a non-empty string when present")
    year = obj.get("year")
    if year is not None and (isinstance(year, bool) or not isinstance(year, int)):
        raise MalformedRecord(line, "year must be an integer when present")

    raw_terms = obj["controlled_terms"]
    if not isinstance(raw_terms, list):
        raise MalformedRecord(line, "controlled_terms must be a list")
    vocabs = set(known_vocabs)
    terms: list[tuple[str, str]] = []
    for entry in raw_terms:
        if (
            not isinstance(entry, dict)
            or set(entry) != {"vocab", "term"}
            or not isinstance(entry.get("vocab"), str)
            or not isinstance(entry.get("term"), str)
            or not entry["term"]
        ):
            raise MalformedRecord(line, "controlled term entries must be {vocab, term} objects")
        if entry["vocab"] not in vocabs:
            raise MalformedRecord(line, f"unregistered vocabulary: {entry['vocab']!r}")
        terms.append((entry["vocab"], entry["term"]))

    return Record(
        id=rid,
        database_id=database_id,
        title=title,
        authors=tuple(authors),
        controlled_terms=tuple(terms),
        abstract=abstract,
        journal=journal,
        year=year,
    )


class Corpus:
    """Id-addressable record store plus vocabulary registry.

    Mutable only through :meth:`ingest_records` / :meth:`ingest_objects` and
    :meth:`register_vocabulary`; call :meth:`freeze` once loading is done.
    A frozen corpus is safe for unlimited concurrent readers.
    """

    def __init__(self) -> None:
        self._records: dict[str, Record] = {}
        self._vocabularies: dict[str, Vocabulary] = {}
        self._frozen = False

    @property
    def records(self) -> dict[str, Record]:
        return self._records

    @property
    def vocabularies(self) -> dict[str, Vocabulary]:
        return self._vocabularies

    @property
    def databases(self) -> set[str]:
        return {r.database_id for r in self._records.values()}

    @property
    def frozen(self) -> bool:
        return self._frozen

    def __len__(self) -> int:
        return len(self._records)

    def __iter__(self) -> Iterator[Record]:
        return iter(self._records.values())

    def freeze(self) -> "Corpus":
        self._frozen = True
        return self

    def register_vocabulary(self, vocab: Vocabulary) -> None:
        if self._frozen:
            raise CorpusFrozen()
        if vocab.vocab_id in self._vocabularies:
            raise DuplicateVocabulary(vocab.vocab_id)
        if not vocab.vocab_id:
            raise DataError("vocab_id must be non-empty")
        if any(not isinstance(t, str) or not t for t in vocab.terms):
            raise DataError(f"vocabulary {vocab.vocab_id!r} contains empty terms")
        self._vocabularies[vocab.vocab_id] = vocab

    def ingest_objects(self, objects: Iterable[object]) -> int:
        """Validate and add already-parsed record objects, all-or-nothing.

        Line numbers in errors are 1-based positions within ``objects``.
        """
        if self._frozen:
            raise CorpusFrozen()
        staged: dict[str, Record] = {}
        for line, obj in enumerate(objects, start=1):
            record = _parse_record(obj, line, self._vocabularies)
            if record.id in self._records or record.id in staged:
                raise DuplicateId(record.id)
            staged[record.id] = record
        self._records.update(staged)
        return len(staged)

    def ingest_records(self, path: str | Path, format: str = "jsonl") -> int:
        """Ingest a JSONL file (one record object per line); atomic."""
        if format != "jsonl":
            raise DataError(f"unsupported ingest format: {format!r}")
        if self._frozen:
            raise CorpusFrozen()
        objects: list[object] = []
        lines: list[int] = []
        with open(path, encoding="utf-8") as fh:
            for line_no, raw in enumerate(fh, start=1):
                if not raw.strip():
                    continue
                try:
                    objects.append(json.loads(raw))
                except json.JSONDecodeError as exc:
                    raise MalformedRecord(line_no, f"invalid JSON: {exc.msg}") from exc
                lines.append(line_no)

        staged: dict[str, Record] = {}
        for line_no, obj in zip(lines, objects):
            record = _parse_record(obj, line_no, self._vocabularies)
            if record.id in self._records or record.id in staged:
                raise DuplicateId(record.id)
            staged[record.id] = record
        self._records.update(staged)
        return len(staged)

    def get_record(self, record_id: str) -> Record:
        try:
            return self._records[record_id]
        except KeyError:
            raise NotFound(record_id) from None
