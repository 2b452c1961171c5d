// Wire types mirroring the service's JSON API.

export type RerankMode =
  | "none"
  | "bradford"
  | "centrality"
  | "bradford_then_centrality"
  | "centrality_then_bradford"
  | "intersection";

export const RERANK_MODES: RerankMode[] = [
  "none",
  "bradford",
  "centrality",
  "bradford_then_centrality",
  "centrality_then_bradford",
  "intersection",
];

/** Modes whose behaviour depends on the centrality threshold. */
export function needsThreshold(mode: RerankMode): boolean {
  return mode === "centrality_then_bradford" || mode === "intersection";
}

export type RelationKind = "EQ" | "BT" | "NT" | "RT";

export interface ControlledTerm {
  vocab: string;
  term: string;
}

export interface SearchRequestBody {
  free_text?: string;
  controlled?: ControlledTerm[];
  databases?: string[];
  expand?: boolean;
  expansion_kinds?: RelationKind[];
  rerank?: RerankMode;
  centrality_threshold?: number;
  nucleus_only?: boolean;
  limit?: number;
}

export interface HitBody {
  id: string;
  score: number;
}

export interface ResultSetBody {
  query: unknown;
  hits: HitBody[];
  ranking_provenance: string[];
}

export interface JournalBody {
  title: string;
  count: number;
}

export interface ZoneBody {
  journals: JournalBody[];
  articles: number;
}

export interface PartitionBody {
  zones: ZoneBody[];
  multipliers: number[];
}

export interface TopAuthorBody {
  author: string;
  betweenness: number;
}

export interface CoauthorSummaryBody {
  vertices: number;
  edges: number;
  top_authors: TopAuthorBody[];
}

export interface SearchResponseBody {
  result_set: ResultSetBody;
  bradford_partition: PartitionBody | null;
  coauthor_summary: CoauthorSummaryBody | null;
  applied_expansions: Record<string, string[]>;
}

export interface RecordBody {
  id: string;
  database_id: string;
  title: string;
  abstract: string;
  authors: string[];
  journal?: string;
  year?: number;
  controlled_terms: ControlledTerm[];
}

export interface VocabularyBody {
  vocab_id: string;
  name: string;
  size: number;
}

/** [term, score] pairs as returned by /api/recommend. */
export type Suggestion = [string, number];

export interface ApiErrorBody {
  code: "bad_request" | "not_found" | "conflict" | "internal";
  message: string;
}
