import assert from "node:assert/strict";
import { test } from "node:test";

import type { ApiClient } from "../src/api.js";
import { WorkbenchSession } from "../src/session.js";
import { needsThreshold } from "../src/types.js";
import type {
  RecordBody,
  SearchRequestBody,
  SearchResponseBody,
  Suggestion,
  VocabularyBody,
} from "../src/types.js";

function sleep(ms: number): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}

function response(partial: Partial<SearchResponseBody> = {}): SearchResponseBody {
  return {
    result_set: { query: null, hits: [], ranking_provenance: ["baseline", "merged"] },
    bradford_partition: null,
    coauthor_summary: null,
    applied_expansions: {},
    ...partial,
  };
}

class StubClient {
  vocabList = ["SOC", "ECON"];
  recommendResults = new Map<string, Suggestion[]>();
  recordMap = new Map<string, RecordBody>();
  searchResult: SearchResponseBody = response();
  failSearch = false;
  searchCalls: SearchRequestBody[] = [];
  recommendCalls: Array<[string, string]> = [];

  async vocabularies(): Promise<VocabularyBody[]> {
    return this.vocabList.map((v) => ({ vocab_id: v, name: v, size: 1 }));
  }

  async recommend(query: string, vocab: string): Promise<Suggestion[]> {
    this.recommendCalls.push([query, vocab]);
    return this.recommendResults.get(vocab) ?? [];
  }

  async record(id: string): Promise<RecordBody> {
    const record = this.recordMap.get(id);
    if (!record) throw new Error(`no record ${id}`);
    return record;
  }

  async search(body: SearchRequestBody): Promise<SearchResponseBody> {
    this.searchCalls.push(body);
    if (this.failSearch) throw new Error("service unreachable");
    return this.searchResult;
  }
}

function makeSession(stub: StubClient, debounceMs = 0): WorkbenchSession {
  return new WorkbenchSession(stub as unknown as ApiClient, { debounceMs });
}

function rec(id: string, journal: string | undefined, authors: string[]): RecordBody {
  return {
    id,
    database_id: "solis",
    title: `title ${id}`,
    abstract: "",
    authors,
    controlled_terms: [],
    ...(journal ? { journal } : {}),
  };
}

test("empty query clears the suggestion panel", async () => {
  const stub = new StubClient();
  stub.recommendResults.set("SOC", [["Arbeitslosigkeit", 3.0]]);
  const session = makeSession(stub);
  session.setQueryText("unemployment");
  await session.refreshSuggestions();
  assert.equal(session.suggestions.length, 1);
  session.setQueryText("");
  assert.deepEqual(session.suggestions, []);
});

test("suggestions merge across vocabularies, best score first", async () => {
  const stub = new StubClient();
  stub.recommendResults.set("SOC", [["Arbeitslosigkeit", 3.0], ["Migration", 1.0]]);
  stub.recommendResults.set("ECON", [["joblessness", 2.0]]);
  const session = makeSession(stub);
  session.setQueryText("unemployment");
  await session.refreshSuggestions();
  assert.deepEqual(
    session.suggestions.map((s) => [s.vocab, s.term]),
    [["SOC", "Arbeitslosigkeit"], ["ECON", "joblessness"], ["SOC", "Migration"]],
  );
});

test("debounce coalesces rapid keystrokes into one refresh", async () => {
  const stub = new StubClient();
  stub.recommendResults.set("SOC", [["Arbeitslosigkeit", 3.0]]);
  const session = makeSession(stub, 20);
  session.setQueryText("u");
  session.setQueryText("un");
  session.setQueryText("unemployment");
  await sleep(80);
  const queries = stub.recommendCalls.map(([q]) => q);
  assert.ok(queries.every((q) => q === "unemployment"), `got ${queries}`);
  assert.equal(session.suggestions.length, 1);
});

test("picking a suggestion adds a unique chip and runs the search", async () => {
  const stub = new StubClient();
  stub.searchResult = response({
    result_set: { query: null, hits: [{ id: "a", score: 1 }], ranking_provenance: ["baseline"] },
  });
  stub.recordMap.set("a", rec("a", "J1", ["X"]));
  const session = makeSession(stub);
  session.setQueryText("unemployment");
  await session.pickSuggestion("SOC", "Arbeitslosigkeit");
  await session.pickSuggestion("SOC", "Arbeitslosigkeit");
  assert.deepEqual(session.selectedTerms, [{ vocab: "SOC", term: "Arbeitslosigkeit" }]);
  assert.equal(session.searchRan, true);
  assert.equal(stub.searchCalls.length, 2);
  assert.deepEqual(stub.searchCalls[0].controlled, [{ vocab: "SOC", term: "Arbeitslosigkeit" }]);
});

test("rows mirror the API hit order exactly and read badges from the response", async () => {
  const stub = new StubClient();
  stub.searchResult = response({
    result_set: {
      query: null,
      hits: [
        { id: "b", score: 1.0 },
        { id: "a", score: 0.5 },
      ],
      ranking_provenance: ["baseline", "merged", "bradford"],
    },
    bradford_partition: {
      zones: [
        { journals: [{ title: "J1", count: 2 }], articles: 2 },
        { journals: [], articles: 0 },
        { journals: [], articles: 0 },
      ],
      multipliers: [0, 0],
    },
    coauthor_summary: { vertices: 2, edges: 1, top_authors: [{ author: "X", betweenness: 1.0 }] },
  });
  stub.recordMap.set("a", rec("a", "J1", ["X"]));
  stub.recordMap.set("b", rec("b", undefined, ["Y"]));
  const session = makeSession(stub);
  session.setQueryText("anything");
  await session.runSearch();

  assert.deepEqual(session.rows.map((r) => r.id), ["b", "a"]); // never reordered
  const [rowB, rowA] = session.rows;
  assert.equal(rowB.zone, null); // journal-less: no zone band
  assert.equal(rowA.zone, 1);
  assert.equal(rowA.centrality, 1.0); // X is in the summary
  assert.equal(rowB.centrality, null); // Y is not
});

test("a failing search raises the banner but keeps previous results", async () => {
  const stub = new StubClient();
  stub.searchResult = response({
    result_set: { query: null, hits: [{ id: "a", score: 1 }], ranking_provenance: ["baseline"] },
  });
  stub.recordMap.set("a", rec("a", "J1", ["X"]));
  const session = makeSession(stub);
  session.setQueryText("anything");
  await session.runSearch();
  assert.equal(session.rows.length, 1);

  stub.failSearch = true;
  await session.runSearch();
  assert.ok(session.error);
  assert.equal(session.rows.length, 1); // state preserved
  assert.equal(session.rows[0].id, "a");
});

test("stale search responses are dropped (latest wins)", async () => {
  const stub = new StubClient();
  const session = makeSession(stub);
  session.setQueryText("anything");

  const resolvers: Array<(r: SearchResponseBody) => void> = [];
  (stub as unknown as { search: (b: SearchRequestBody) => Promise<SearchResponseBody> }).search =
    () => new Promise((resolve) => resolvers.push(resolve));

  const first = session.runSearch();
  const second = session.runSearch();
  const newer = response({
    result_set: { query: null, hits: [{ id: "new", score: 1 }], ranking_provenance: ["baseline"] },
  });
  const older = response({
    result_set: { query: null, hits: [{ id: "old", score: 1 }], ranking_provenance: ["baseline"] },
  });
  resolvers[1](newer);
  await second;
  resolvers[0](older);
  await first;
  assert.deepEqual(session.rows.map((r) => r.id), ["new"]);
});

test("threshold slider only applies to the two filter modes", () => {
  assert.equal(needsThreshold("centrality_then_bradford"), true);
  assert.equal(needsThreshold("intersection"), true);
  assert.equal(needsThreshold("none"), false);
  assert.equal(needsThreshold("bradford"), false);
  assert.equal(needsThreshold("centrality"), false);
  assert.equal(needsThreshold("bradford_then_centrality"), false);
});

test("empty intersection is flagged for the empty-state message", async () => {
  const stub = new StubClient();
  stub.searchResult = response({
    result_set: { query: null, hits: [], ranking_provenance: ["baseline", "merged", "intersection"] },
  });
  const session = makeSession(stub);
  session.setQueryText("anything");
  await session.setRerankMode("intersection", 1.0);
  await session.runSearch();
  assert.equal(session.emptyIntersection, true);
  assert.deepEqual(stub.searchCalls.at(-1)?.rerank, "intersection");
  assert.equal(stub.searchCalls.at(-1)?.centrality_threshold, 1.0);
});

test("mode switch re-runs the search only after one has run", async () => {
  const stub = new StubClient();
  const session = makeSession(stub);
  await session.setRerankMode("bradford");
  assert.equal(stub.searchCalls.length, 0); // no search yet: nothing to re-run
  session.setQueryText("anything");
  await session.runSearch();
  await session.setRerankMode("centrality");
  assert.equal(stub.searchCalls.length, 2);
  assert.equal(stub.searchCalls.at(-1)?.rerank, "centrality");
});
