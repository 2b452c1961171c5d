import { ApiClient } from "./api.js";
import type {
  ControlledTerm,
  RecordBody,
  RerankMode,
  SearchResponseBody,
  Suggestion,
} from "./types.js";
import { needsThreshold } from "./types.js";

export interface VocabSuggestion {
  vocab: string;
  term: string;
  score: number;
}

/** One displayed result row; every badge value comes out of the response. */
export interface ResultRow {
  id: string;
  score: number;
  record: RecordBody | null;
  zone: 1 | 2 | 3 | null;
  centrality: number | null;
}

export interface SessionOptions {
  debounceMs?: number;
  suggestionCount?: number;
  onChange?: () => void;
}

const DEFAULT_DEBOUNCE_MS = 200;

/**
 * Workbench state machine, free of DOM concerns.
 *
 * The render layer paints whatever this object holds; all transitions are
 * driven by user intents (typing, picking a suggestion, switching modes).
 * In-flight requests are superseded by newer ones: every fetch records a
 * sequence number and a response is dropped unless it is still the latest.
 * The displayed row order is exactly the API's hit order, never re-sorted
 * client-side.
 */
export class WorkbenchSession {
  queryText = "";
  selectedTerms: ControlledTerm[] = [];
  mode: RerankMode = "none";
  threshold = 0.25;
  expand = false;

  suggestions: VocabSuggestion[] = [];
  lastResponse: SearchResponseBody | null = null;
  rows: ResultRow[] = [];
  error: string | null = null;
  searchRan = false;

  private vocabIds: string[] | null = null;
  private recordCache = new Map<string, RecordBody>();
  private debounceMs: number;
  private suggestionCount: number;
  private onChange: () => void;
  private debounceHandle: ReturnType<typeof setTimeout> | null = null;
  private suggestionSeq = 0;
  private searchSeq = 0;

  constructor(private client: ApiClient, options: SessionOptions = {}) {
    this.debounceMs = options.debounceMs ?? DEFAULT_DEBOUNCE_MS;
    this.suggestionCount = options.suggestionCount ?? 8;
    this.onChange = options.onChange ?? (() => {});
  }

  get thresholdVisible(): boolean {
    return needsThreshold(this.mode);
  }

  /** True when the intersection mode found nothing satisfying both criteria. */
  get emptyIntersection(): boolean {
    return (
      this.searchRan &&
      this.mode === "intersection" &&
      this.lastResponse !== null &&
      this.lastResponse.result_set.hits.length === 0
    );
  }

  /** Typing handler: schedules a debounced suggestion refresh. */
  setQueryText(text: string): void {
    this.queryText = text;
    if (this.debounceHandle !== null) clearTimeout(this.debounceHandle);
    if (!text.trim()) {
      this.suggestionSeq += 1; // invalidate anything in flight
      this.suggestions = [];
      this.onChange();
      return;
    }
    this.debounceHandle = setTimeout(() => {
      void this.refreshSuggestions();
    }, this.debounceMs);
    this.onChange();
  }

  /** Ask every vocabulary for suggestions and merge them, best first. */
  async refreshSuggestions(): Promise<void> {
    if (this.debounceHandle !== null) {
      clearTimeout(this.debounceHandle); // this call supersedes the scheduled one
      this.debounceHandle = null;
    }
    const seq = ++this.suggestionSeq;
    const query = this.queryText;
    if (!query.trim()) {
      this.suggestions = [];
      this.onChange();
      return;
    }
    try {
      const vocabIds = await this.loadVocabIds();
      const perVocab = await Promise.all(
        vocabIds.map(async (vocab): Promise<VocabSuggestion[]> => {
          try {
            const got: Suggestion[] = await this.client.recommend(query, vocab, this.suggestionCount);
            return got.map(([term, score]) => ({ vocab, term, score }));
          } catch {
            return []; // vocabularies without a dictionary simply contribute nothing
          }
        }),
      );
      if (seq !== this.suggestionSeq) return; // a newer request superseded us
      this.suggestions = perVocab
        .flat()
        .sort((a, b) => b.score - a.score || a.term.localeCompare(b.term))
        .slice(0, this.suggestionCount);
      this.error = null;
    } catch (err) {
      if (seq !== this.suggestionSeq) return;
      this.error = describeError(err);
    }
    this.onChange();
  }

  /** Click handler: the suggestion becomes a chip and the search re-runs. */
  async pickSuggestion(vocab: string, term: string): Promise<void> {
    if (!this.selectedTerms.some((t) => t.vocab === vocab && t.term === term)) {
      this.selectedTerms = [...this.selectedTerms, { vocab, term }];
    }
    await this.runSearch();
  }

  async removeTerm(vocab: string, term: string): Promise<void> {
    this.selectedTerms = this.selectedTerms.filter(
      (t) => !(t.vocab === vocab && t.term === term),
    );
    await this.runSearch();
  }

  async setRerankMode(mode: RerankMode, threshold?: number): Promise<void> {
    this.mode = mode;
    if (threshold !== undefined) this.threshold = threshold;
    if (this.searchRan) await this.runSearch();
    else this.onChange();
  }

  async setExpand(expand: boolean): Promise<void> {
    this.expand = expand;
    if (this.searchRan) await this.runSearch();
    else this.onChange();
  }

  async runSearch(): Promise<void> {
    if (!this.queryText.trim() && this.selectedTerms.length === 0) {
      return; // nothing to ask for yet
    }
    const seq = ++this.searchSeq;
    try {
      const response = await this.client.search({
        free_text: this.queryText,
        controlled: this.selectedTerms,
        expand: this.expand,
        rerank: this.mode,
        centrality_threshold: this.threshold,
      });
      if (seq !== this.searchSeq) return; // superseded by a newer search
      const rows = await this.buildRows(response);
      if (seq !== this.searchSeq) return;
      this.lastResponse = response;
      this.rows = rows;
      this.searchRan = true;
      this.error = null;
    } catch (err) {
      if (seq !== this.searchSeq) return;
      this.error = describeError(err); // banner only; previous results stay up
    }
    this.onChange();
  }

  /** Rows mirror the hit order 1:1; zone and centrality come from the response. */
  private async buildRows(response: SearchResponseBody): Promise<ResultRow[]> {
    const zoneOf = journalZones(response);
    const centralityOf = authorCentralities(response);
    return Promise.all(
      response.result_set.hits.map(async (hit) => {
        const record = await this.loadRecord(hit.id);
        const journal = record?.journal ?? null;
        const zone = journal !== null ? zoneOf.get(journal) ?? null : null;
        let centrality: number | null = null;
        for (const author of record?.authors ?? []) {
          const value = centralityOf.get(author);
          if (value !== undefined && (centrality === null || value > centrality)) {
            centrality = value;
          }
        }
        return { id: hit.id, score: hit.score, record, zone, centrality };
      }),
    );
  }

  private async loadRecord(id: string): Promise<RecordBody | null> {
    const cached = this.recordCache.get(id);
    if (cached) return cached;
    try {
      const record = await this.client.record(id);
      this.recordCache.set(id, record);
      return record;
    } catch {
      return null;
    }
  }

  private async loadVocabIds(): Promise<string[]> {
    if (this.vocabIds === null) {
      const vocabularies = await this.client.vocabularies();
      this.vocabIds = vocabularies.map((v) => v.vocab_id);
    }
    return this.vocabIds;
  }
}

function describeError(err: unknown): string {
  if (err instanceof Error) return err.message;
  return String(err);
}

/** Journal title -> Bradford zone number, from the partition block. */
export function journalZones(response: SearchResponseBody): Map<string, 1 | 2 | 3> {
  const zones = new Map<string, 1 | 2 | 3>();
  const partition = response.bradford_partition;
  if (!partition) return zones;
  partition.zones.forEach((zone, index) => {
    for (const journal of zone.journals) {
      zones.set(journal.title, (index + 1) as 1 | 2 | 3);
    }
  });
  return zones;
}

/** Author -> betweenness, from the co-author summary block. */
export function authorCentralities(response: SearchResponseBody): Map<string, number> {
  const centralities = new Map<string, number>();
  for (const entry of response.coauthor_summary?.top_authors ?? []) {
    centralities.set(entry.author, entry.betweenness);
  }
  return centralities;
}
