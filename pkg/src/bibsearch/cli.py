"""Command-line interface: batch builds, lookups, search and the server.

Everything mutating lives here — ingest, vocabulary registration, crosswalk
loading, index and dictionary builds all write plain files into a data
directory that the query commands and the HTTP service then read.  Output on
stdout is machine-readable JSON; errors go to stderr with exit code 1 for
usage problems and 2 for data problems.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import DataError
from .heterogeneity import RelationKind, parse_kinds
from .index import SearchIndex
from .pipeline import RerankMode, SearchRequest
from .recommender import build_dictionary, recommend, save_dictionary
from .service import canonical_json, run_search, serve
from .workspace import INDEX_FILE, Workspace, dictionary_path, parse_vocabulary_file


class UsageError(Exception):
    pass


def _emit(payload: object) -> None:
    print(canonical_json(payload))


def cmd_ingest(args: argparse.Namespace) -> int:
    workspace = Workspace.load(args.data_dir, frozen=False)
    count = workspace.corpus.ingest_records(args.records)
    workspace.save_corpus()
    _emit({"ingested": count})
    return 0


def cmd_register_vocab(args: argparse.Namespace) -> int:
    workspace = Workspace.load(args.data_dir, frozen=False)
    registered = []
    for vocab in parse_vocabulary_file(args.file):
        workspace.corpus.register_vocabulary(vocab)
        registered.append(vocab.vocab_id)
    workspace.save_corpus()
    _emit({"registered": registered})
    return 0


def cmd_load_crosswalk(args: argparse.Namespace) -> int:
    workspace = Workspace.load(args.data_dir, frozen=True)
    count = workspace.store.load_crosswalk(args.file)
    workspace.save_crosswalk()
    _emit({"loaded": count})
    return 0


def cmd_build_index(args: argparse.Namespace) -> int:
    workspace = Workspace.load(args.data_dir, frozen=True)
    index = SearchIndex.build(workspace.corpus)
    Path(args.data_dir).mkdir(parents=True, exist_ok=True)
    index.save(Path(args.data_dir) / INDEX_FILE)
    _emit({"indexed_records": index.n_records, "text_terms": len(index.text_postings)})
    return 0


def cmd_build_str(args: argparse.Namespace) -> int:
    workspace = Workspace.load(args.data_dir, frozen=True)
    dictionary = build_dictionary(workspace.corpus, args.vocab, args.min_cooccurrence)
    save_dictionary(dictionary, dictionary_path(Path(args.data_dir), args.vocab))
    _emit({"vocab": args.vocab, "entries": len(dictionary)})
    return 0


def cmd_map(args: argparse.Namespace) -> int:
    workspace = Workspace.load(args.data_dir, frozen=True)
    try:
        kinds = parse_kinds(args.kinds, default=set(RelationKind))
    except DataError as exc:
        raise UsageError(str(exc)) from None
    matches = workspace.store.map_term(args.term, args.source, args.target, kinds)
    _emit([[term, kind.value] for term, kind in matches])
    return 0


def cmd_recommend(args: argparse.Namespace) -> int:
    workspace = Workspace.load(args.data_dir, frozen=True)
    dictionary = workspace.require_dictionary(args.vocab)
    _emit([[term, score] for term, score in recommend(dictionary, args.query, args.top)])
    return 0


def _parse_controlled(values: list[str]) -> list[tuple[str, str]]:
    controlled = []
    for value in values:
        if ":" not in value:
            raise UsageError(f"--controlled expects VOCAB:TERM, got {value!r}")
        vocab, term = value.split(":", 1)
        controlled.append((vocab, term))
    return controlled


def cmd_search(args: argparse.Namespace) -> int:
    workspace = Workspace.load(args.data_dir, frozen=True)
    try:
        kinds = parse_kinds(args.kinds, default={RelationKind.EQ})
        request = SearchRequest(
            free_text=args.query or "",
            chosen_controlled=_parse_controlled(args.controlled or []),
            databases=set(args.databases.split(",")) if args.databases else set(),
            expand=args.expand,
            expansion_kinds=kinds,
            rerank=RerankMode(args.rerank),
            centrality_threshold=args.threshold,
            nucleus_only=args.nucleus_only,
            limit=args.limit,
        )
    except (ValueError, DataError) as exc:
        raise UsageError(str(exc)) from None
    workspace.require_index()
    _emit(run_search(workspace, request))
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    ui_dir = Path(args.ui_dir).resolve() if args.ui_dir else None
    try:
        serve(args.port, args.data_dir, host=args.host, ui_dir=ui_dir)
    except KeyboardInterrupt:
        return 0
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bibsearch",
        description="Federated bibliographic search with crosswalk expansion, "
        "term recommendation and bibliometric re-ranking.",
    )
    parser.add_argument("--data-dir", default="data", help="workspace directory (default: ./data)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="ingest a JSONL record file into the corpus")
    p.add_argument("--records", required=True, help="path to records JSONL")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("register-vocab", help="register controlled vocabularies from a JSON file")
    p.add_argument("--file", required=True)
    p.set_defaults(func=cmd_register_vocab)

    p = sub.add_parser("load-crosswalk", help="load a cross-concordance CSV")
    p.add_argument("--file", required=True)
    p.set_defaults(func=cmd_load_crosswalk)

    p = sub.add_parser("build-index", help="build the search index over the ingested corpus")
    p.set_defaults(func=cmd_build_index)

    p = sub.add_parser("build-str", help="build the term association dictionary for one vocabulary")
    p.add_argument("--vocab", required=True)
    p.add_argument("--min-cooccurrence", type=int, default=2)
    p.set_defaults(func=cmd_build_str)

    p = sub.add_parser("map", help="translate one term into another vocabulary")
    p.add_argument("--term", required=True)
    p.add_argument("--from", dest="source", required=True, metavar="VOCAB")
    p.add_argument("--to", dest="target", required=True, metavar="VOCAB")
    p.add_argument("--kinds", help="comma-separated relation kinds (default: all)")
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("recommend", help="suggest controlled terms for a free-text query")
    p.add_argument("--query", required=True)
    p.add_argument("--vocab", required=True)
    p.add_argument("--top", type=int, default=10)
    p.set_defaults(func=cmd_recommend)

    p = sub.add_parser("search", help="run the full search pipeline")
    p.add_argument("--query", default="", help="free-text query")
    p.add_argument("--controlled", action="append", metavar="VOCAB:TERM")
    p.add_argument("--databases", help="comma-separated database ids (default: all)")
    p.add_argument("--expand", action="store_true", help="expand controlled terms via crosswalks")
    p.add_argument("--kinds", help="relation kinds for expansion (default: EQ)")
    p.add_argument("--rerank", default="none", choices=[mode.value for mode in RerankMode])
    p.add_argument("--threshold", type=float, default=0.25, help="centrality threshold in [0,1]")
    p.add_argument("--nucleus-only", action="store_true", help="keep only Bradford nucleus documents")
    p.add_argument("--limit", type=int)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("serve", help="serve the HTTP JSON API over a built workspace")
    p.add_argument("--port", type=int, required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--ui-dir", help="optional directory of workbench static files to serve at /")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed usage/help
        return 0 if exc.code in (0, None) else 1
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as exc:
        print(f"error: invalid JSON input: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
