"""Search term recommender: free text in, controlled vocabulary terms out.

The recommender closes the gap between whatever words a searcher types and
the indexing terms actually assigned to records.  It is built offline from a
corpus: every natural-language token from titles and abstracts is paired with
every controlled term assigned to the same record, the pair's document-level
contingency table is counted over the whole corpus, and the pair is scored
with the G² log-likelihood ratio.  At query time the per-token scores are
summed per controlled term and the top terms are suggested.
"""

from __future__ import annotations

import json
import math
import re
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from .corpus import Corpus
from .errors import DataError
from .heterogeneity import UnknownVocabulary

TOKENIZATION_VERSION = "v1"

# word characters minus underscore: unicode letters and digits
_TOKEN = re.compile(r"[^\W_]+", re.UNICODE)
_MIN_TOKEN_LEN = 2

DICTIONARY_FORMAT = "str-dictionary"
DICTIONARY_VERSION = 1


def tokenize(text: str) -> list[str]:
    """Lowercase, split on non-alphanumerics, drop tokens shorter than 2.

    No stemming; order of appearance is preserved.
    """
    return [t for t in _TOKEN.findall(text.lower()) if len(t) >= _MIN_TOKEN_LEN]


@dataclass(frozen=True)
class ContingencyTable:
    """Document-level 2x2 co-occurrence counts for one (token, term) pair.

    k11 counts records containing both, k12 token only, k21 term only,
    k22 neither; the four cells sum to the corpus size used for the build.
    """

    k11: int
    k12: int
    k21: int
    k22: int

    def __post_init__(self) -> None:
        if min(self.k11, self.k12, self.k21, self.k22) < 0:
            raise ValueError("contingency counts must be non-negative")

    @property
    def total(self) -> int:
        return self.k11 + self.k12 + self.k21 + self.k22


def llr(table: ContingencyTable) -> float:
    """G² log-likelihood ratio statistic of a 2x2 table.

    G² = 2·Σ O·ln(O/E) with E the independence expectation and 0·ln(0/E)
    taken as 0.  Degenerate tables (a whole row or column zero) score 0 by
    convention, which agrees with the formula's limit.  Tiny negative
    rounding residue is clamped to 0.
    """
    k11, k12, k21, k22 = table.k11, table.k12, table.k21, table.k22
    row1, row2 = k11 + k12, k21 + k22
    col1, col2 = k11 + k21, k12 + k22
    if 0 in (row1, row2, col1, col2):
        return 0.0
    total = table.total
    g2 = 0.0
    for observed, row, col in (
        (k11, row1, col1),
        (k12, row1, col2),
        (k21, row2, col1),
        (k22, row2, col2),
    ):
        if observed:
            expected = row * col / total
            g2 += observed * math.log(observed / expected)
    return max(0.0, 2.0 * g2)


@dataclass(frozen=True)
class AssociationEntry:
    """One scored link from a natural-language token to a controlled term."""

    nl_term: str
    vocab_id: str
    cv_term: str
    score: float
    table: ContingencyTable


@dataclass
class AssociationDictionary:
    """All association entries for one vocabulary, indexed by token."""

    vocab_id: str
    corpus_size: int
    min_cooccurrence: int
    tokenization: str = TOKENIZATION_VERSION
    entries: dict[str, list[AssociationEntry]] = field(default_factory=dict)

    def lookup(self, nl_term: str) -> list[AssociationEntry]:
        return self.entries.get(nl_term, [])

    def __len__(self) -> int:
        return sum(len(v) for v in self.entries.values())

    def all_entries(self) -> list[AssociationEntry]:
        out: list[AssociationEntry] = []
        for token in sorted(self.entries):
            out.extend(self.entries[token])
        return out


def build_dictionary(corpus: Corpus, vocab_id: str, min_cooccurrence: int = 2) -> AssociationDictionary:
    """Count token/term co-occurrence over the whole corpus and score it.

    The co-occurrence unit is the record: a token counts once per record no
    matter how often it repeats, and only pairs seen together in at least
    ``min_cooccurrence`` records are kept.
    """
    if vocab_id not in corpus.vocabularies:
        raise UnknownVocabulary(vocab_id)
    if not corpus.frozen:
        raise DataError("corpus must be frozen before a dictionary build")

    token_counts: Counter[str] = Counter()
    term_counts: Counter[str] = Counter()
    pair_counts: Counter[tuple[str, str]] = Counter()
    total = len(corpus)

    for record in corpus:
        tokens = set(tokenize(record.title)) | set(tokenize(record.abstract))
        terms = {term for vocab, term in record.controlled_terms if vocab == vocab_id}
        token_counts.update(tokens)
        term_counts.update(terms)
        for token in tokens:
            for term in terms:
                pair_counts[(token, term)] += 1

    dictionary = AssociationDictionary(
        vocab_id=vocab_id, corpus_size=total, min_cooccurrence=min_cooccurrence
    )
    for (token, term), k11 in sorted(pair_counts.items()):
        if k11 < min_cooccurrence:
            continue
        k12 = token_counts[token] - k11
        k21 = term_counts[term] - k11
        k22 = total - k11 - k12 - k21
        table = ContingencyTable(k11, k12, k21, k22)
        entry = AssociationEntry(token, vocab_id, term, llr(table), table)
        dictionary.entries.setdefault(token, []).append(entry)
    return dictionary


def recommend(dictionary: AssociationDictionary, query_text: str, k: int = 10) -> list[tuple[str, float]]:
    """Suggest the top-k controlled terms for a free-text query.

    Per term, scores of the query's distinct tokens are summed; terms whose
    aggregate is zero are dropped.  Ordering is score descending, ties
    alphabetical by term.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    aggregate: dict[str, float] = {}
    for token in sorted(set(tokenize(query_text))):
        for entry in dictionary.lookup(token):
            aggregate[entry.cv_term] = aggregate.get(entry.cv_term, 0.0) + entry.score
    ranked = sorted(
        ((term, score) for term, score in aggregate.items() if score > 0.0),
        key=lambda item: (-item[1], item[0]),
    )
    return ranked[:k]


def _round_score(score: float) -> float:
    # 12 significant decimal digits: stable under save/load/save round trips
    return float(f"{score:.12g}")


def save_dictionary(dictionary: AssociationDictionary, path: str | Path) -> None:
    """Persist as JSONL: one metadata header line, then one line per entry."""
    header = {
        "format": DICTIONARY_FORMAT,
        "version": DICTIONARY_VERSION,
        "vocab_id": dictionary.vocab_id,
        "corpus_size": dictionary.corpus_size,
        "min_cooccurrence": dictionary.min_cooccurrence,
        "tokenization": dictionary.tokenization,
    }
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(header, sort_keys=True) + "\n")
        for entry in dictionary.all_entries():
            row = {
                "nl_term": entry.nl_term,
                "vocab": entry.vocab_id,
                "cv_term": entry.cv_term,
                "score": _round_score(entry.score),
                "k11": entry.table.k11,
                "k12": entry.table.k12,
                "k21": entry.table.k21,
                "k22": entry.table.k22,
            }
            fh.write(json.dumps(row, sort_keys=True) + "\n")


def load_dictionary(path: str | Path) -> AssociationDictionary:
    with open(path, encoding="utf-8") as fh:
        lines = [line for line in fh if line.strip()]
    if not lines:
        raise DataError(f"empty dictionary file: {path}")
    header = json.loads(lines[0])
    if header.get("format") != DICTIONARY_FORMAT or header.get("version") != DICTIONARY_VERSION:
        raise DataError(f"not a dictionary file: {path}")
    dictionary = AssociationDictionary(
        vocab_id=header["vocab_id"],
        corpus_size=header["corpus_size"],
        min_cooccurrence=header["min_cooccurrence"],
        tokenization=header["tokenization"],
    )
    for line in lines[1:]:
        row = json.loads(line)
        table = ContingencyTable(row["k11"], row["k12"], row["k21"], row["k22"])
        entry = AssociationEntry(row["nl_term"], row["vocab"], row["cv_term"], float(row["score"]), table)
        dictionary.entries.setdefault(entry.nl_term, []).append(entry)
    return dictionary
