#!/usr/bin/env python3
"""Run one query through every re-rank mode and compare the orderings.

Usage:
    python3 scripts/compare_rerank_modes.py [--query TEXT] [--threshold X]

Builds the demo workspace in a temporary directory, executes the query under
all six modes, and prints the resulting document orders side by side together
with the Bradford partition and the most central co-authors.  A quick way to
see how core-journal filtering and author-centrality filtering disagree.
"""

import argparse
import tempfile

from bibsearch.centrality import betweenness, build_graph
from bibsearch.demo import COMMON_QUERY, build_demo_workspace
from bibsearch.pipeline import RerankMode, SearchRequest


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--query", default=COMMON_QUERY)
    parser.add_argument("--threshold", type=float, default=0.25)
    args = parser.parse_args()

    with tempfile.TemporaryDirectory() as tmp:
        workspace = build_demo_workspace(tmp)
        pipeline = workspace.pipeline()

        orders = {}
        partition = None
        for mode in RerankMode:
            response = pipeline.execute(
                SearchRequest(free_text=args.query, rerank=mode, centrality_threshold=args.threshold)
            )
            orders[mode.value] = [h.record_id for h in response.result_set.hits]
            if mode is RerankMode.BRADFORD:
                partition = response.bradford_partition

        width = max(len(name) for name in orders)
        depth = max(len(ids) for ids in orders.values())
        print(f"query: {args.query!r}   centrality threshold: {args.threshold}")
        print()
        header = "  ".join(name.ljust(width) for name in orders)
        print(header)
        print("-" * len(header))
        for i in range(depth):
            row = []
            for ids in orders.values():
                row.append((ids[i] if i < len(ids) else "").ljust(width))
            print("  ".join(row))

        if partition is not None:
            print("\nBradford zones (journals: articles):")
            for zi, (zone, articles) in enumerate(
                zip(partition.zones, partition.zone_article_counts), start=1
            ):
                journals = ", ".join(f"{jr.journal} ({jr.article_count})" for jr in zone)
                print(f"  zone {zi}: {articles} articles -- {journals}")
            print(f"  multiplier estimates: {partition.multiplier_estimates}")

        base = pipeline.execute(SearchRequest(free_text=args.query))
        scores = betweenness(build_graph(base.result_set, workspace.corpus))
        top = sorted(scores.items(), key=lambda kv: (-kv[1], kv[0]))[:5]
        print("\nmost central co-authors:")
        for author, score in top:
            print(f"  {score:0.3f}  {author}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
