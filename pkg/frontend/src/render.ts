import type { WorkbenchSession } from "./session.js";
import { RERANK_MODES } from "./types.js";
import type { RerankMode } from "./types.js";

const MODE_LABELS: Record<RerankMode, string> = {
  none: "Baseline",
  bradford: "Core journals",
  centrality: "Central authors",
  bradford_then_centrality: "Core journals → centrality",
  centrality_then_bradford: "Centrality → core journals",
  intersection: "Intersection",
};

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function slot(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node;
}

export function renderAll(session: WorkbenchSession): void {
  renderErrorBanner(session);
  renderSuggestions(session);
  renderChips(session);
  renderModeBar(session);
  renderResults(session);
  renderPartitionPanel(session);
  renderCoauthorPanel(session);
}

function renderErrorBanner(session: WorkbenchSession): void {
  const banner = slot("error-banner");
  banner.textContent = session.error ?? "";
  banner.classList.toggle("hidden", session.error === null);
}

function renderSuggestions(session: WorkbenchSession): void {
  const panel = slot("suggestions");
  panel.replaceChildren();
  for (const suggestion of session.suggestions) {
    const button = el("button", "suggestion");
    button.append(
      el("span", "suggestion-term", suggestion.term),
      el("span", "suggestion-meta", `${suggestion.vocab} · ${suggestion.score.toFixed(2)}`),
    );
    button.addEventListener("click", () => {
      void session.pickSuggestion(suggestion.vocab, suggestion.term);
    });
    panel.append(button);
  }
}

function renderChips(session: WorkbenchSession): void {
  const container = slot("chips");
  container.replaceChildren();
  for (const { vocab, term } of session.selectedTerms) {
    const chip = el("span", "chip", `${vocab}: ${term}`);
    const remove = el("button", "chip-remove", "×");
    remove.addEventListener("click", () => {
      void session.removeTerm(vocab, term);
    });
    chip.append(remove);
    container.append(chip);
  }
}

function renderModeBar(session: WorkbenchSession): void {
  const bar = slot("mode-bar");
  bar.replaceChildren();
  for (const mode of RERANK_MODES) {
    const button = el("button", "mode", MODE_LABELS[mode]);
    button.classList.toggle("active", session.mode === mode);
    button.addEventListener("click", () => {
      void session.setRerankMode(mode);
    });
    bar.append(button);
  }
  const sliderBox = slot("threshold-box");
  sliderBox.classList.toggle("hidden", !session.thresholdVisible);
  const value = slot("threshold-value");
  value.textContent = session.threshold.toFixed(2);
  const slider = slot("threshold") as HTMLInputElement;
  slider.value = String(session.threshold);
}

function renderResults(session: WorkbenchSession): void {
  const list = slot("results");
  list.replaceChildren();
  if (session.emptyIntersection) {
    list.append(el("p", "empty-state", "No documents satisfy both criteria."));
    return;
  }
  if (!session.searchRan) {
    list.append(el("p", "empty-state", "Type a query or pick a suggested term to search."));
    return;
  }
  if (session.rows.length === 0) {
    list.append(el("p", "empty-state", "No results."));
    return;
  }
  session.rows.forEach((row, index) => {
    const item = el("article", "result");
    const title = row.record?.title ?? row.id;
    item.append(el("h3", "result-title", `${index + 1}. ${title}`));

    const meta = el("div", "result-meta");
    meta.append(el("span", "authors", (row.record?.authors ?? []).join(", ") || "(no authors)"));
    meta.append(el("span", "journal", row.record?.journal ?? "(no journal)"));
    if (row.zone !== null) meta.append(el("span", `badge zone-${row.zone}`, `zone ${row.zone}`));
    else if (session.lastResponse?.bradford_partition) meta.append(el("span", "badge zone-none", "zone –"));
    if (row.centrality !== null) {
      meta.append(el("span", "badge centrality", `centrality ${row.centrality.toFixed(2)}`));
    }
    item.append(meta);
    list.append(item);
  });

  const provenance = session.lastResponse?.result_set.ranking_provenance ?? [];
  slot("provenance").textContent = provenance.length ? `ranking: ${provenance.join(" → ")}` : "";
}

function renderPartitionPanel(session: WorkbenchSession): void {
  const panel = slot("partition-panel");
  panel.replaceChildren();
  const partition = session.lastResponse?.bradford_partition;
  if (!partition) {
    panel.classList.add("hidden");
    return;
  }
  panel.classList.remove("hidden");
  panel.append(el("h2", undefined, "Bradford zones"));
  partition.zones.forEach((zone, index) => {
    const head = el("p", "zone-head", `zone ${index + 1}: ${zone.articles} articles, ${zone.journals.length} journals`);
    panel.append(head);
    if (zone.journals.length) {
      const ul = el("ul", "zone-journals");
      for (const journal of zone.journals) {
        ul.append(el("li", undefined, `${journal.title} (${journal.count})`));
      }
      panel.append(ul);
    }
  });
  panel.append(el("p", "multipliers", `multipliers: ${partition.multipliers.map((m) => m.toFixed(2)).join(", ")}`));
}

function renderCoauthorPanel(session: WorkbenchSession): void {
  const panel = slot("coauthor-panel");
  panel.replaceChildren();
  const summary = session.lastResponse?.coauthor_summary;
  if (!summary) {
    panel.classList.add("hidden");
    return;
  }
  panel.classList.remove("hidden");
  panel.append(el("h2", undefined, "Co-author network"));
  panel.append(el("p", undefined, `${summary.vertices} authors, ${summary.edges} collaborations`));
  const table = el("table", "top-authors");
  for (const entry of summary.top_authors) {
    const tr = el("tr");
    tr.append(el("td", undefined, entry.author), el("td", undefined, entry.betweenness.toFixed(3)));
    table.append(tr);
  }
  panel.append(table);
}
