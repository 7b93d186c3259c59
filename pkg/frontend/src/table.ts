// Live search table: debounced per-keystroke queries, header-click
// sorting, at most 40 rendered rows, DOI / Google Scholar links.

import { ApiClient, TableResult, TableRow } from "./api.js";
import { debounce } from "./debounce.js";

const MAX_ROWS = 40;

interface Column {
  key: string;
  label: string;
  sortable: boolean;
}

function columnsFor(mode: "standard" | "multi"): Column[] {
  const cols: Column[] = [
    { key: "author", label: "Author(s)", sortable: true },
    { key: "rpy", label: "RPY", sortable: true },
    { key: "source", label: "Source", sortable: true },
    { key: "times", label: "Times Referenced", sortable: true },
  ];
  if (mode === "multi") cols.push({ key: "cpy", label: "CPY", sortable: true });
  cols.push({ key: "link", label: "Link", sortable: false });
  return cols;
}

export class TableView {
  private sortKey = "times";
  private sortDir: "asc" | "desc" = "desc";
  // the default sort is not a user choice: the first click on any
  // header (including "Times Referenced") starts at descending
  private userSorted = false;
  private input: HTMLInputElement;
  private body: HTMLTableSectionElement;
  private status: HTMLDivElement;
  private scheduleQuery: () => void;

  constructor(
    private container: HTMLElement,
    private api: ApiClient,
    private sessionId: string,
    private mode: "standard" | "multi",
  ) {
    this.input = document.createElement("input");
    this.input.type = "search";
    this.input.placeholder = "Search (e.g. RPY1980 fra)";
    this.input.className = "table-search";

    this.status = document.createElement("div");
    this.status.className = "table-status";

    const table = document.createElement("table");
    table.className = "reference-table";
    const head = document.createElement("thead");
    const headRow = document.createElement("tr");
    for (const col of columnsFor(mode)) {
      const th = document.createElement("th");
      th.textContent = col.label;
      th.dataset.key = col.key;
      if (col.sortable) {
        th.classList.add("sortable");
        th.addEventListener("click", () => this.toggleSort(col.key));
      }
      headRow.appendChild(th);
    }
    head.appendChild(headRow);
    table.appendChild(head);
    this.body = document.createElement("tbody");
    table.appendChild(this.body);

    this.container.append(this.input, this.status, table);

    this.scheduleQuery = debounce(() => void this.runQuery(), 150);
    this.input.addEventListener("input", () => this.scheduleQuery());
    void this.runQuery();
  }

  private toggleSort(key: string): void {
    if (this.userSorted && this.sortKey === key) {
      this.sortDir = this.sortDir === "desc" ? "asc" : "desc";
    } else {
      this.sortKey = key;
      this.sortDir = "desc";
    }
    this.userSorted = true;
    void this.runQuery();
  }

  async runQuery(): Promise<void> {
    const result = await this.api.table(this.sessionId, {
      q: this.input.value,
      sort: this.sortKey,
      dir: this.sortDir,
      limit: MAX_ROWS,
    });
    if (result === null) return; // superseded by a newer keystroke
    this.renderRows(result);
  }

  private renderRows(result: TableResult): void {
    this.body.replaceChildren();
    for (const row of result.rows.slice(0, MAX_ROWS)) {
      this.body.appendChild(this.renderRow(row));
    }
    const shown = Math.min(result.rows.length, MAX_ROWS);
    this.status.textContent =
      result.total_matches > shown
        ? `Showing ${shown} of ${result.total_matches} matches`
        : `${result.total_matches} matches`;
  }

  private renderRow(row: TableRow): HTMLTableRowElement {
    const tr = document.createElement("tr");
    const cells: Array<string | null> = [row.author, row.rpy, row.source, String(row.times)];
    if (this.mode === "multi") cells.push(row.cpy ?? "");
    for (const text of cells) {
      const td = document.createElement("td");
      td.textContent = text ?? "";
      tr.appendChild(td);
    }
    const linkCell = document.createElement("td");
    const a = document.createElement("a");
    a.href = row.link.url;
    a.target = "_blank";
    a.rel = "noopener";
    a.textContent = row.link.kind === "doi" ? "Article Link" : "Try Google Scholar";
    linkCell.appendChild(a);
    tr.appendChild(linkCell);
    return tr;
  }

  get rowCount(): number {
    return this.body.children.length;
  }
}
