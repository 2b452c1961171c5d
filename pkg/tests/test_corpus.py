import json

import pytest
from hypothesis import given, strategies as st

from bibsearch.corpus import (
    Corpus,
    CorpusFrozen,
    DuplicateId,
    DuplicateVocabulary,
    MalformedRecord,
    NotFound,
    Vocabulary,
    normalize_author,
)
from conftest import make_corpus, simple_record


def write_jsonl(path, objects):
    with open(path, "w", encoding="utf-8") as fh:
        for obj in objects:
            fh.write(json.dumps(obj) + "\n")


def test_ingest_counts_records(tmp_path):
    path = tmp_path / "records.jsonl"
    write_jsonl(path, [simple_record(f"d{i}") for i in range(3)])
    corpus = Corpus()
    assert corpus.ingest_records(path) == 3
    assert len(corpus) == 3


def test_ingest_empty_file(tmp_path):
    path = tmp_path / "records.jsonl"
    path.write_text("")
    assert Corpus().ingest_records(path) == 0


def test_missing_id_aborts_whole_ingest(tmp_path):
    bad = simple_record("d2")
    del bad["id"]
    path = tmp_path / "records.jsonl"
    write_jsonl(path, [simple_record("d1"), bad, simple_record("d3")])
    corpus = Corpus()
    with pytest.raises(MalformedRecord) as exc:
        corpus.ingest_records(path)
    assert exc.value.line == 2
    assert "missing id" in exc.value.reason
    assert len(corpus) == 0


def test_invalid_json_line_reports_line_number(tmp_path):
    path = tmp_path / "records.jsonl"
    path.write_text(json.dumps(simple_record("d1")) + "\n{not json\n")
    with pytest.raises(MalformedRecord) as exc:
        Corpus().ingest_records(path)
    assert exc.value.line == 2


def test_registered_vocab_allows_tagged_record():
    corpus = Corpus()
    corpus.register_vocabulary(Vocabulary("TheSoz", "TheSoz", frozenset({"unemployment", "migration"})))
    count = corpus.ingest_objects([simple_record("d1", terms=[("TheSoz", "migration")])])
    assert count == 1


def test_unregistered_vocab_rejected():
    corpus = Corpus()
    with pytest.raises(MalformedRecord):
        corpus.ingest_objects([simple_record("d1", terms=[("X", "anything")])])


def test_duplicate_vocabulary():
    corpus = Corpus()
    corpus.register_vocabulary(Vocabulary("V", "V", frozenset({"t"})))
    with pytest.raises(DuplicateVocabulary):
        corpus.register_vocabulary(Vocabulary("V", "other", frozenset({"u"})))


def test_duplicate_id_within_file_is_atomic():
    corpus = Corpus()
    with pytest.raises(DuplicateId):
        corpus.ingest_objects([simple_record("d1"), simple_record("d1")])
    assert len(corpus) == 0


def test_duplicate_id_against_existing_corpus():
    corpus = Corpus()
    corpus.ingest_objects([simple_record("d1")])
    with pytest.raises(DuplicateId):
        corpus.ingest_objects([simple_record("d1")])
    assert len(corpus) == 1


def test_get_record_roundtrip_for_all_ids():
    records = [simple_record(f"d{i}", title=f"title {i}") for i in range(10)]
    corpus = make_corpus(records)
    for rec in records:
        assert corpus.get_record(rec["id"]).title == rec["title"]


def test_get_record_unknown_id():
    with pytest.raises(NotFound):
        make_corpus([]).get_record("zz")


def test_roundtrip_is_field_identical():
    record = simple_record(
        "d1", title="A title", authors=["Jane Roe", "Max Power"],
        journal="Some Journal", abstract="An abstract.", year=2001,
        terms=[("V", "term")],
    )
    corpus = make_corpus([record], vocabularies={"V": ["term"]})
    assert corpus.get_record("d1").to_json_dict() == record


def test_author_normalization_and_dedup():
    record = simple_record("d1", authors=["  Jane   Roe ", "Jane Roe", "Max Power"])
    corpus = make_corpus([record])
    assert corpus.get_record("d1").authors == ("Jane Roe", "Max Power")


def test_empty_author_rejected():
    with pytest.raises(MalformedRecord):
        make_corpus([simple_record("d1", authors=["   "])])


def test_unknown_key_rejected():
    record = simple_record("d1")
    record["extra"] = 1
    with pytest.raises(MalformedRecord):
        make_corpus([record])


def test_boolean_year_rejected():
    record = simple_record("d1")
    record["year"] = True
    with pytest.raises(MalformedRecord):
        make_corpus([record])


def test_frozen_corpus_rejects_mutation():
    corpus = make_corpus([simple_record("d1")])
    with pytest.raises(CorpusFrozen):
        corpus.ingest_objects([simple_record("d2")])
    with pytest.raises(CorpusFrozen):
        corpus.register_vocabulary(Vocabulary("V", "V", frozenset({"t"})))


def test_databases_derived_from_records():
    corpus = make_corpus([
        simple_record("d1", database="solis"),
        simple_record("d2", database="econlit"),
        simple_record("d3", database="solis"),
    ])
    assert corpus.databases == {"solis", "econlit"}


@given(st.lists(st.text(alphabet="ab \t", min_size=1, max_size=8), min_size=1, max_size=6))
def test_author_lists_never_expose_duplicates(raw_names):
    normalized = [normalize_author(n) for n in raw_names]
    if any(not n for n in normalized):
        return  # blank names are rejected, covered elsewhere
    corpus = Corpus()
    corpus.ingest_objects([simple_record("d1", authors=raw_names)])
    authors = corpus.get_record("d1").authors
    assert len(authors) == len(set(authors))
    assert all(a == normalize_author(a) for a in authors)
