import { ApiClient } from "./api.js";
import { renderAll } from "./render.js";
import { WorkbenchSession } from "./session.js";

// Served from the same origin by default (`serve --ui-dir`); override with
// ?api=http://host:port when the workbench is opened from elsewhere.
const apiBase = new URLSearchParams(window.location.search).get("api") ?? "";

const client = new ApiClient(apiBase);
const session = new WorkbenchSession(client, {
  onChange: () => renderAll(session),
});

const queryInput = document.getElementById("query") as HTMLInputElement;
queryInput.addEventListener("input", () => {
  session.setQueryText(queryInput.value);
});
queryInput.addEventListener("keydown", (event) => {
  if (event.key === "Enter") void session.runSearch();
});

(document.getElementById("search-button") as HTMLButtonElement).addEventListener("click", () => {
  void session.runSearch();
});

const expandToggle = document.getElementById("expand") as HTMLInputElement;
expandToggle.addEventListener("change", () => {
  void session.setExpand(expandToggle.checked);
});

const threshold = document.getElementById("threshold") as HTMLInputElement;
threshold.addEventListener("change", () => {
  void session.setRerankMode(session.mode, Number(threshold.value));
});

renderAll(session);
