"""On-disk layout of a built search workspace.

All builds happen through the CLI and write plain files into one data
directory; the HTTP service and the query commands load those artifacts
read-only.  Layout:

    records.jsonl       accumulated corpus, one record per line
    vocabularies.json   registered vocabularies, sorted list
    crosswalk.csv       accumulated cross-concordance relations
    index.bin           version-tagged search index
    str_<vocab>.jsonl   association dictionary per vocabulary
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .corpus import Corpus, Vocabulary
from .errors import DataError
from .heterogeneity import CrossConcordanceStore, write_crosswalk
from .index import SearchIndex
from .pipeline import SearchPipeline
from .recommender import AssociationDictionary, load_dictionary

RECORDS_FILE = "records.jsonl"
VOCABULARIES_FILE = "vocabularies.json"
CROSSWALK_FILE = "crosswalk.csv"
INDEX_FILE = "index.bin"
DICTIONARY_PREFIX = "str_"


def dictionary_path(data_dir: Path, vocab_id: str) -> Path:
    return data_dir / f"{DICTIONARY_PREFIX}{vocab_id}.jsonl"


def parse_vocabulary_file(path: str | Path) -> list[Vocabulary]:
    """Read one vocabulary object or a list of them from a JSON file."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    objs = data if isinstance(data, list) else [data]
    vocabularies = []
    for obj in objs:
        if not isinstance(obj, dict) or not {"vocab_id", "name", "terms"} <= set(obj):
            raise DataError(f"vocabulary entries need vocab_id, name and terms: {path}")
        vocabularies.append(
            Vocabulary(vocab_id=obj["vocab_id"], name=obj["name"], terms=frozenset(obj["terms"]))
        )
    return vocabularies


@dataclass
class Workspace:
    data_dir: Path
    corpus: Corpus
    store: CrossConcordanceStore
    index: SearchIndex | None = None
    dictionaries: dict[str, AssociationDictionary] = field(default_factory=dict)

    @classmethod
    def load(cls, data_dir: str | Path, frozen: bool = True) -> "Workspace":
        """Load whatever artifacts exist; missing ones leave empty components."""
        data_dir = Path(data_dir)
        corpus = Corpus()

        vocab_file = data_dir / VOCABULARIES_FILE
        if vocab_file.exists():
            for vocab in parse_vocabulary_file(vocab_file):
                corpus.register_vocabulary(vocab)
        records_file = data_dir / RECORDS_FILE
        if records_file.exists():
            corpus.ingest_records(records_file)

        store = CrossConcordanceStore(corpus)
        crosswalk_file = data_dir / CROSSWALK_FILE
        if crosswalk_file.exists():
            store.load_crosswalk(crosswalk_file)

        index = None
        index_file = data_dir / INDEX_FILE
        if index_file.exists():
            index = SearchIndex.load(index_file)

        dictionaries = {}
        for path in sorted(data_dir.glob(f"{DICTIONARY_PREFIX}*.jsonl")):
            dictionary = load_dictionary(path)
            dictionaries[dictionary.vocab_id] = dictionary

        if frozen:
            corpus.freeze()
        return cls(data_dir=data_dir, corpus=corpus, store=store, index=index, dictionaries=dictionaries)

    def save_corpus(self) -> None:
        self.data_dir.mkdir(parents=True, exist_ok=True)
        with open(self.data_dir / RECORDS_FILE, "w", encoding="utf-8") as fh:
            for record in self.corpus:
                fh.write(json.dumps(record.to_json_dict(), sort_keys=True) + "\n")
        vocabularies = [
            {"vocab_id": v.vocab_id, "name": v.name, "terms": sorted(v.terms)}
            for v in sorted(self.corpus.vocabularies.values(), key=lambda v: v.vocab_id)
        ]
        with open(self.data_dir / VOCABULARIES_FILE, "w", encoding="utf-8") as fh:
            json.dump(vocabularies, fh, indent=2, sort_keys=True)
            fh.write("\n")

    def save_crosswalk(self) -> None:
        self.data_dir.mkdir(parents=True, exist_ok=True)
        write_crosswalk(self.store.relations, self.data_dir / CROSSWALK_FILE)

    def require_index(self) -> SearchIndex:
        if self.index is None:
            raise DataError("no index built yet (run build-index first)")
        return self.index

    def require_dictionary(self, vocab_id: str) -> AssociationDictionary:
        try:
            return self.dictionaries[vocab_id]
        except KeyError:
            raise DataError(
                f"no dictionary built for vocabulary {vocab_id!r} (run build-str)"
            ) from None

    def pipeline(self) -> SearchPipeline:
        return SearchPipeline(self.corpus, self.require_index(), self.store)
