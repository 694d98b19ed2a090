// Browser rendering sink. Pure presentation: takes a finished view and
// writes it into the page; the only outbound wiring is the two answer
// buttons handed in by main.ts.

import { describeStatus, formatBound, type SessionView } from "./view.js";
import type { ViewSink } from "./controller.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

export class DomSink implements ViewSink {
  private readonly status = el<HTMLElement>("status");
  private readonly bounds = el<HTMLElement>("bounds");
  private readonly meta = el<HTMLElement>("meta");
  private readonly errorBanner = el<HTMLElement>("error");
  private readonly queryCard = el<HTMLElement>("query-card");
  private readonly queryTable = el<HTMLTableElement>("query-table");
  private readonly queryCaption = el<HTMLElement>("query-caption");
  private readonly yesButton = el<HTMLButtonElement>("answer-yes");
  private readonly noButton = el<HTMLButtonElement>("answer-no");
  private readonly learnedList = el<HTMLUListElement>("learned");
  private readonly chart = el<HTMLCanvasElement>("chart");
  private readonly finalPanel = el<HTMLElement>("final");

  render(view: SessionView): void {
    this.status.textContent = describeStatus(view);
    this.status.dataset.status = view.status;

    this.bounds.textContent =
      `lb = ${formatBound(view.lb)}   ub = ${formatBound(view.ub)}` +
      `   gap = ${formatBound(view.gap)} (target <= ${view.epsilon})`;
    this.meta.textContent =
      `iteration ${view.iteration} | queries ${view.queriesAsked} | ` +
      `candidates left ${view.basisSize}`;

    this.errorBanner.textContent = view.error ?? "";
    this.errorBanner.style.display = view.error ? "block" : "none";

    this.renderQuery(view);
    this.renderLearned(view);
    drawBoundChart(this.chart, view);
    this.renderFinal(view);
  }

  private renderQuery(view: SessionView): void {
    const pending = view.pending;
    this.yesButton.disabled = !view.answersEnabled;
    this.noButton.disabled = !view.answersEnabled;
    if (!pending) {
      this.queryCard.style.display = view.terminal ? "none" : "block";
      this.queryTable.innerHTML = "";
      this.queryCaption.textContent = view.terminal ? "" : "solver working...";
      return;
    }
    this.queryCard.style.display = "block";
    this.queryCaption.textContent = pending.partial
      ? "Partial example: blank variables are not part of the question. " +
        "Answer yes when nothing among the shown values is forbidden."
      : "Is this assignment acceptable?";
    const header = "<tr>" + pending.rows.map((r) => `<th>${r.variable}</th>`).join("") + "</tr>";
    const cells =
      "<tr>" +
      pending.rows
        .map((r) =>
          r.value === null
            ? `<td class="blank" title="not asked">&mdash;</td>`
            : `<td>${r.value}</td>`,
        )
        .join("") +
      "</tr>";
    this.queryTable.innerHTML = header + cells;
  }

  private renderLearned(view: SessionView): void {
    this.learnedList.innerHTML = "";
    for (const text of view.learned) {
      const item = document.createElement("li");
      item.textContent = text;
      this.learnedList.appendChild(item);
    }
  }

  private renderFinal(view: SessionView): void {
    if (!view.terminal) {
      this.finalPanel.style.display = "none";
      return;
    }
    this.finalPanel.style.display = "block";
    this.finalPanel.textContent =
      `finished: ${view.status}` +
      (view.reason ? ` (${view.reason})` : "") +
      ` with lb = ${formatBound(view.lb)}, ub = ${formatBound(view.ub)}, ` +
      `${view.learned.length} learned constraint(s) after ${view.queriesAsked} queries`;
  }
}

/** Step chart of the two bound series over iterations. */
export function drawBoundChart(canvas: HTMLCanvasElement, view: SessionView): void {
  const ctx = canvas.getContext("2d");
  if (!ctx) {
    return;
  }
  const { width, height } = canvas;
  ctx.clearRect(0, 0, width, height);
  const points = view.trace;
  if (points.length === 0) {
    return;
  }
  const values = points.flatMap((p) => [p.lb, p.ub]);
  const lo = Math.min(...values);
  const hi = Math.max(...values);
  const span = hi === lo ? 1 : hi - lo;
  const left = 34;
  const bottom = height - 18;
  const plotW = width - left - 8;
  const plotH = bottom - 8;
  const x = (i: number) => left + (points.length === 1 ? 0 : (i / (points.length - 1)) * plotW);
  const y = (v: number) => bottom - ((v - lo) / span) * plotH;

  ctx.strokeStyle = "#999";
  ctx.beginPath();
  ctx.moveTo(left, 8);
  ctx.lineTo(left, bottom);
  ctx.lineTo(width - 8, bottom);
  ctx.stroke();
  ctx.fillStyle = "#555";
  ctx.font = "10px sans-serif";
  ctx.fillText(String(hi), 2, y(hi) + 3);
  ctx.fillText(String(lo), 2, y(lo) + 3);

  const series: Array<["lb" | "ub", string]> = [
    ["lb", "#1668c9"],
    ["ub", "#c93516"],
  ];
  for (const [key, color] of series) {
    ctx.strokeStyle = color;
    ctx.lineWidth = 2;
    ctx.beginPath();
    points.forEach((p, i) => {
      const vy = y(p[key]);
      if (i === 0) {
        ctx.moveTo(x(i), vy);
      } else {
        ctx.lineTo(x(i), y(points[i - 1]![key]));
        ctx.lineTo(x(i), vy);
      }
    });
    ctx.stroke();
  }
}
