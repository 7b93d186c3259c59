// Dual-axis spectrogram: grey columns (counts, left axis) and a red
// spline (deviations, right axis), with hover tooltips, click-drag
// zoom, and PNG/SVG export. All values come from the API.

import { Spectrogram, SpectrogramRow } from "./api.js";
import { linearScale } from "./scale.js";

const SVG_NS = "http://www.w3.org/2000/svg";

const WIDTH = 900;
const HEIGHT = 420;
const MARGIN = { top: 24, right: 56, bottom: 40, left: 56 };

export interface ZoomWindow {
  from: number;
  to: number;
}

export class SpectrogramView {
  private zoom: ZoomWindow;
  private readonly initial: ZoomWindow;
  private svg: SVGSVGElement | null = null;
  private tooltip: HTMLDivElement;
  private resetButton: HTMLButtonElement;

  constructor(
    private container: HTMLElement,
    private data: Spectrogram,
  ) {
    this.initial = { from: data.range.from, to: data.range.to };
    this.zoom = { ...this.initial };

    this.container.classList.add("chart-container");

    const toolbar = document.createElement("div");
    toolbar.className = "chart-toolbar";

    this.resetButton = document.createElement("button");
    this.resetButton.textContent = "Reset zoom";
    this.resetButton.className = "reset-zoom";
    this.resetButton.hidden = true;
    this.resetButton.addEventListener("click", () => this.resetZoom());
    toolbar.appendChild(this.resetButton);
    toolbar.appendChild(this.exportMenu());
    this.container.appendChild(toolbar);

    this.tooltip = document.createElement("div");
    this.tooltip.className = "tooltip";
    this.tooltip.hidden = true;
    this.container.appendChild(this.tooltip);

    this.render();
  }

  get zoomWindow(): ZoomWindow {
    return { ...this.zoom };
  }

  setZoom(from: number, to: number): void {
    const lo = Math.max(this.initial.from, Math.min(from, to));
    const hi = Math.min(this.initial.to, Math.max(from, to));
    if (lo >= hi) return;
    this.zoom = { from: lo, to: hi };
    this.resetButton.hidden = false;
    this.render();
  }

  resetZoom(): void {
    this.zoom = { ...this.initial };
    this.resetButton.hidden = true;
    this.render();
  }

  private visibleRows(): SpectrogramRow[] {
    return this.data.rows.filter(
      (r) => r.year >= this.zoom.from && r.year <= this.zoom.to,
    );
  }

  private render(): void {
    this.svg?.remove();
    const svg = document.createElementNS(SVG_NS, "svg");
    svg.setAttribute("viewBox", `0 0 ${WIDTH} ${HEIGHT}`);
    svg.setAttribute("width", String(WIDTH));
    svg.setAttribute("height", String(HEIGHT));
    svg.classList.add("spectrogram");
    this.svg = svg;

    const rows = this.visibleRows();
    const plotW = WIDTH - MARGIN.left - MARGIN.right;
    const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;

    const x = linearScale(
      [this.zoom.from - 0.5, this.zoom.to + 0.5],
      [MARGIN.left, MARGIN.left + plotW],
    );
    const maxCount = Math.max(1, ...rows.map((r) => r.count));
    const yCount = linearScale([0, maxCount], [MARGIN.top + plotH, MARGIN.top]);
    const devLo = Math.min(0, ...rows.map((r) => r.deviation));
    const devHi = Math.max(1, ...rows.map((r) => r.deviation));
    const yDev = linearScale([devLo, devHi], [MARGIN.top + plotH, MARGIN.top]);

    const barWidth = Math.max(1, (plotW / Math.max(1, rows.length)) * 0.8);

    for (const row of rows) {
      const rect = document.createElementNS(SVG_NS, "rect");
      rect.setAttribute("class", "count-bar");
      rect.setAttribute("x", String(x(row.year) - barWidth / 2));
      rect.setAttribute("y", String(yCount(row.count)));
      rect.setAttribute("width", String(barWidth));
      rect.setAttribute("height", String(yCount(0) - yCount(row.count)));
      rect.setAttribute("fill", "#9e9e9e");
      rect.setAttribute("data-year", String(row.year));
      rect.setAttribute("data-count", String(row.count));
      rect.setAttribute("data-deviation", String(row.deviation));
      rect.addEventListener("mouseenter", (ev) => this.showTooltip(row, ev));
      rect.addEventListener("mouseleave", () => this.hideTooltip());
      svg.appendChild(rect);
    }

    if (rows.length > 1) {
      const path = document.createElementNS(SVG_NS, "path");
      path.setAttribute("class", "deviation-spline");
      path.setAttribute("d", splinePath(rows.map((r) => [x(r.year), yDev(r.deviation)])));
      path.setAttribute("fill", "none");
      path.setAttribute("stroke", "#d32f2f");
      path.setAttribute("stroke-width", "2");
      svg.appendChild(path);
    }

    this.drawAxes(svg, x, yCount, yDev, plotH);
    this.attachZoom(svg, x);
    this.container.appendChild(svg);
  }

  private drawAxes(
    svg: SVGSVGElement,
    x: (v: number) => number,
    yCount: (v: number) => number,
    yDev: (v: number) => number,
    plotH: number,
  ): void {
    const axis = (x1: number, y1: number, x2: number, y2: number) => {
      const line = document.createElementNS(SVG_NS, "line");
      line.setAttribute("x1", String(x1));
      line.setAttribute("y1", String(y1));
      line.setAttribute("x2", String(x2));
      line.setAttribute("y2", String(y2));
      line.setAttribute("stroke", "#444");
      svg.appendChild(line);
    };
    const label = (text: string, px: number, py: number, cls: string) => {
      const t = document.createElementNS(SVG_NS, "text");
      t.textContent = text;
      t.setAttribute("x", String(px));
      t.setAttribute("y", String(py));
      t.setAttribute("class", cls);
      t.setAttribute("font-size", "11");
      svg.appendChild(t);
    };

    const bottom = MARGIN.top + plotH;
    axis(MARGIN.left, bottom, WIDTH - MARGIN.right, bottom);
    axis(MARGIN.left, MARGIN.top, MARGIN.left, bottom);
    axis(WIDTH - MARGIN.right, MARGIN.top, WIDTH - MARGIN.right, bottom);

    const span = this.zoom.to - this.zoom.from;
    const step = span > 50 ? 10 : span > 20 ? 5 : 1;
    for (let year = Math.ceil(this.zoom.from / step) * step; year <= this.zoom.to; year += step) {
      label(String(year), x(year) - 14, bottom + 16, "x-tick");
    }
    label("Cited references", MARGIN.left - 46, MARGIN.top - 8, "axis-title");
    label("Deviation from 5-year median", WIDTH - MARGIN.right - 60, MARGIN.top - 8, "axis-title");
    void yCount;
    void yDev;
  }

  private attachZoom(svg: SVGSVGElement, x: { invert(px: number): number }): void {
    let dragStart: number | null = null;
    let band: SVGRectElement | null = null;

    const pxOf = (ev: MouseEvent): number => {
      const rect = svg.getBoundingClientRect();
      return ((ev.clientX - rect.left) / (rect.width || WIDTH)) * WIDTH;
    };

    svg.addEventListener("mousedown", (ev) => {
      dragStart = pxOf(ev);
      band = document.createElementNS(SVG_NS, "rect");
      band.setAttribute("class", "zoom-band");
      band.setAttribute("y", String(MARGIN.top));
      band.setAttribute("height", String(HEIGHT - MARGIN.top - MARGIN.bottom));
      band.setAttribute("fill", "rgba(33, 150, 243, 0.2)");
      svg.appendChild(band);
    });
    svg.addEventListener("mousemove", (ev) => {
      if (dragStart === null || !band) return;
      const px = pxOf(ev);
      band.setAttribute("x", String(Math.min(dragStart, px)));
      band.setAttribute("width", String(Math.abs(px - dragStart)));
    });
    svg.addEventListener("mouseup", (ev) => {
      if (dragStart === null) return;
      const from = Math.round(x.invert(Math.min(dragStart, pxOf(ev))));
      const to = Math.round(x.invert(Math.max(dragStart, pxOf(ev))));
      band?.remove();
      band = null;
      dragStart = null;
      if (to > from) this.setZoom(from, to);
    });
  }

  private showTooltip(row: SpectrogramRow, ev: MouseEvent): void {
    this.tooltip.textContent =
      `${row.year}: ${row.count} / ${formatDeviation(row.deviation)}`;
    this.tooltip.style.left = `${ev.clientX + 12}px`;
    this.tooltip.style.top = `${ev.clientY - 12}px`;
    this.tooltip.hidden = false;
  }

  private hideTooltip(): void {
    this.tooltip.hidden = true;
  }

  private exportMenu(): HTMLElement {
    const menu = document.createElement("div");
    menu.className = "export-menu";
    const svgButton = document.createElement("button");
    svgButton.textContent = "Download SVG";
    svgButton.addEventListener("click", () => this.exportSvg());
    const pngButton = document.createElement("button");
    pngButton.textContent = "Download PNG";
    pngButton.addEventListener("click", () => void this.exportPng());
    menu.append(svgButton, pngButton);
    return menu;
  }

  serializeSvg(): string {
    if (!this.svg) return "";
    const clone = this.svg.cloneNode(true) as SVGSVGElement;
    clone.setAttribute("xmlns", SVG_NS);
    return new XMLSerializer().serializeToString(clone);
  }

  private exportSvg(): void {
    const blob = new Blob([this.serializeSvg()], { type: "image/svg+xml" });
    triggerDownload(blob, "spectrogram.svg");
  }

  private async exportPng(): Promise<void> {
    const url = URL.createObjectURL(
      new Blob([this.serializeSvg()], { type: "image/svg+xml" }),
    );
    try {
      const img = new Image();
      await new Promise<void>((resolve, reject) => {
        img.onload = () => resolve();
        img.onerror = () => reject(new Error("could not rasterize chart"));
        img.src = url;
      });
      const canvas = document.createElement("canvas");
      canvas.width = WIDTH * 2;
      canvas.height = HEIGHT * 2;
      const ctx = canvas.getContext("2d");
      if (!ctx) return;
      ctx.fillStyle = "#ffffff";
      ctx.fillRect(0, 0, canvas.width, canvas.height);
      ctx.drawImage(img, 0, 0, canvas.width, canvas.height);
      canvas.toBlob((blob) => {
        if (blob) triggerDownload(blob, "spectrogram.png");
      }, "image/png");
    } finally {
      URL.revokeObjectURL(url);
    }
  }
}

export function formatDeviation(value: number): string {
  return Number.isInteger(value) ? String(value) : value.toFixed(1);
}

/** Catmull-Rom spline through the points, emitted as cubic Beziers. */
export function splinePath(points: Array<[number, number]>): string {
  if (points.length === 0) return "";
  if (points.length === 1) return `M ${points[0][0]} ${points[0][1]}`;
  const parts = [`M ${points[0][0]} ${points[0][1]}`];
  for (let i = 0; i < points.length - 1; i++) {
    const p0 = points[Math.max(0, i - 1)];
    const p1 = points[i];
    const p2 = points[i + 1];
    const p3 = points[Math.min(points.length - 1, i + 2)];
    const c1: [number, number] = [
      p1[0] + (p2[0] - p0[0]) / 6,
      p1[1] + (p2[1] - p0[1]) / 6,
    ];
    const c2: [number, number] = [
      p2[0] - (p3[0] - p1[0]) / 6,
      p2[1] - (p3[1] - p1[1]) / 6,
    ];
    parts.push(`C ${c1[0]} ${c1[1]}, ${c2[0]} ${c2[1]}, ${p2[0]} ${p2[1]}`);
  }
  return parts.join(" ");
}

function triggerDownload(blob: Blob, filename: string): void {
  const url = URL.createObjectURL(blob);
  const a = document.createElement("a");
  a.href = url;
  a.download = filename;
  a.click();
  URL.revokeObjectURL(url);
}
