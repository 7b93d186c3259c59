// Rank heatmap: citing publication years (CPY) on the y-axis,
// reference publication years (RPY) on the x-axis, cell color from the
// per-row normalized rank of the deviation.

import { Heatmap, HeatmapCell } from "./api.js";
import { formatDeviation } from "./spectrogram.js";
import { rankColor } from "./scale.js";

export class HeatmapView {
  private tooltip: HTMLDivElement;

  constructor(
    private container: HTMLElement,
    private data: Heatmap,
  ) {
    this.container.classList.add("chart-container");
    this.tooltip = document.createElement("div");
    this.tooltip.className = "tooltip";
    this.tooltip.hidden = true;
    this.container.appendChild(this.tooltip);
    this.render();
  }

  private render(): void {
    const byKey = new Map<string, HeatmapCell>();
    for (const cell of this.data.rows) {
      byKey.set(`${cell.cpy}:${cell.rpy}`, cell);
    }

    const table = document.createElement("table");
    table.className = "heatmap";

    const header = document.createElement("tr");
    header.appendChild(document.createElement("th"));
    const { from, to } = this.data.range;
    for (let rpy = from; rpy <= to; rpy++) {
      const th = document.createElement("th");
      if (rpy % 10 === 0) th.textContent = String(rpy);
      header.appendChild(th);
    }
    table.appendChild(header);

    for (const cpy of this.data.cpys) {
      const tr = document.createElement("tr");
      const th = document.createElement("th");
      th.textContent = String(cpy);
      tr.appendChild(th);
      for (let rpy = from; rpy <= to; rpy++) {
        const cell = byKey.get(`${cpy}:${rpy}`);
        const td = document.createElement("td");
        td.className = "heatmap-cell";
        if (cell) {
          td.style.backgroundColor = rankColor(cell.rank);
          td.dataset.cpy = String(cell.cpy);
          td.dataset.rpy = String(cell.rpy);
          td.dataset.rank = String(cell.rank);
          td.addEventListener("mouseenter", (ev) => this.showTooltip(cell, ev));
          td.addEventListener("mouseleave", () => this.hideTooltip());
        }
        tr.appendChild(td);
      }
      table.appendChild(tr);
    }
    this.container.appendChild(table);
  }

  private showTooltip(cell: HeatmapCell, ev: MouseEvent): void {
    this.tooltip.textContent =
      `CPY ${cell.cpy}, RPY ${cell.rpy}: count ${cell.count}, ` +
      `deviation ${formatDeviation(cell.deviation)}, rank ${cell.rank.toFixed(3)}`;
    this.tooltip.style.left = `${ev.clientX + 12}px`;
    this.tooltip.style.top = `${ev.clientY - 12}px`;
    this.tooltip.hidden = false;
  }

  private hideTooltip(): void {
    this.tooltip.hidden = true;
  }
}
