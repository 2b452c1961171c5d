#!/usr/bin/env python3
"""Build the bundled demo dataset into a workspace directory.

Usage:
    python3 scripts/make_demo_data.py [DATA_DIR]

Writes the raw source files (records.jsonl, vocabularies.json, crosswalk.csv)
under DATA_DIR/source and runs the full batch build (corpus, crosswalk store,
index, association dictionary), leaving a directory the `search`, `recommend`,
`map` and `serve` commands can use directly.  Defaults to ./data.
"""

import sys
from pathlib import Path

from bibsearch.demo import build_demo_workspace


def main() -> int:
    data_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("data")
    workspace = build_demo_workspace(data_dir)
    print(f"workspace built in {data_dir}")
    print(f"  records:      {len(workspace.corpus)}")
    print(f"  vocabularies: {', '.join(sorted(workspace.corpus.vocabularies))}")
    print(f"  relations:    {len(workspace.store)}")
    print(f"  dictionaries: {', '.join(sorted(workspace.dictionaries))}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
