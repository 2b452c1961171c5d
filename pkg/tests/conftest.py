from __future__ import annotations

import contextlib
import io
import random
import threading

import pytest

from bibsearch.corpus import Corpus, Vocabulary
from bibsearch.demo import build_demo_workspace
from bibsearch.index import Hit, Query, ResultSet, sort_hits
from bibsearch.service import make_server
from bibsearch.workspace import Workspace
from bibsearch import cli


def make_corpus(records: list[dict], vocabularies: dict[str, list[str]] | None = None) -> Corpus:
    """In-memory corpus from raw record dicts; frozen and ready to query."""
    corpus = Corpus()
    for vocab_id, terms in (vocabularies or {}).items():
        corpus.register_vocabulary(Vocabulary(vocab_id, vocab_id, frozenset(terms)))
    corpus.ingest_objects(records)
    return corpus.freeze()


def simple_record(rid: str, *, title: str = "a study", authors: list[str] | None = None,
                  journal: str | None = None, abstract: str = "", database: str = "db1",
                  terms: list[tuple[str, str]] | None = None, year: int | None = None) -> dict:
    record: dict = {
        "id": rid,
        "database_id": database,
        "title": title,
        "authors": authors if authors is not None else [f"Author {rid}"],
        "controlled_terms": [{"vocab": v, "term": t} for v, t in (terms or [])],
    }
    if abstract:
        record["abstract"] = abstract
    if journal is not None:
        record["journal"] = journal
    if year is not None:
        record["year"] = year
    return record


def result_set_over(corpus: Corpus, scores: dict[str, float] | None = None) -> ResultSet:
    """A baseline-shaped result set covering every record of the corpus."""
    if scores is None:
        scores = {rid: 1.0 for rid in corpus.records}
    return ResultSet(query=None, hits=sort_hits(scores), ranking_provenance=["baseline"])


def random_corpus_and_results(rng: random.Random, size: int) -> tuple[Corpus, ResultSet]:
    """Random journals/authors/scores for re-ranking property tests."""
    journals = [f"Journal {chr(65 + i)}" for i in range(rng.randint(1, 6))] + [None, None]
    author_pool = [f"Writer {i}" for i in range(10)]
    records = []
    for i in range(size):
        records.append(
            simple_record(
                f"r{i:03d}",
                title=f"paper number {i}",
                journal=rng.choice(journals),
                authors=rng.sample(author_pool, rng.randint(1, 3)),
            )
        )
    corpus = make_corpus(records)
    scores = {rec["id"]: round(rng.uniform(0.1, 5.0), 3) for rec in records}
    return corpus, result_set_over(corpus, scores)


def run_cli(argv: list[str]) -> tuple[int, str, str]:
    """Invoke the CLI in-process, capturing exit code, stdout and stderr."""
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = cli.main(argv)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture(scope="session")
def demo_data_dir(tmp_path_factory):
    data_dir = tmp_path_factory.mktemp("demo-data")
    build_demo_workspace(data_dir)
    return data_dir


@pytest.fixture(scope="session")
def demo_workspace(demo_data_dir) -> Workspace:
    return Workspace.load(demo_data_dir, frozen=True)


@pytest.fixture(scope="session")
def labor_results(demo_workspace) -> ResultSet:
    """The 30-document merged result set every combination test builds on."""
    from bibsearch.pipeline import SearchRequest

    response = demo_workspace.pipeline().execute(SearchRequest(free_text="labor"))
    return response.result_set


@pytest.fixture(scope="session")
def api_base_url(demo_data_dir):
    workspace = Workspace.load(demo_data_dir, frozen=True)
    server = make_server(workspace, port=0)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{server.server_address[1]}"
    server.shutdown()


def hit_ids(result_set: ResultSet) -> list[str]:
    return [h.record_id for h in result_set.hits]


__all__ = [
    "make_corpus",
    "simple_record",
    "result_set_over",
    "random_corpus_and_results",
    "run_cli",
    "hit_ids",
    "Hit",
    "Query",
]
