// Page wiring: upload view first, then the chart for the chosen mode
// plus the live search table underneath.

import { ApiClient, SessionSummary } from "./api.js";
import { HeatmapView } from "./heatmap.js";
import { SpectrogramView } from "./spectrogram.js";
import { TableView } from "./table.js";
import { UploadView } from "./upload.js";

const api = new ApiClient();

function mountResultView(root: HTMLElement, session: SessionSummary): void {
  root.replaceChildren();

  const summary = document.createElement("p");
  summary.className = "session-summary";
  summary.textContent =
    `${session.records} records, ${session.references} cited references (${session.mode} mode)`;
  root.appendChild(summary);

  const chart = document.createElement("div");
  const tableHost = document.createElement("div");
  root.append(chart, tableHost);

  if (session.mode === "standard") {
    api
      .spectrogram(session.id)
      .then((data) => new SpectrogramView(chart, data))
      .catch((err) => showError(chart, err));
  } else {
    api
      .heatmap(session.id)
      .then((data) => new HeatmapView(chart, data))
      .catch((err) => showError(chart, err));
  }
  new TableView(tableHost, api, session.id, session.mode);
}

function showError(host: HTMLElement, err: unknown): void {
  const p = document.createElement("p");
  p.className = "view-error";
  p.textContent = err instanceof Error ? err.message : String(err);
  host.appendChild(p);
}

const root = document.getElementById("app");
if (root) {
  new UploadView(root, api, (session) => mountResultView(root, session));
}
