/** Pure view builders: service JSON in, HTML/SVG strings out.
 *
 * No domain math happens here beyond plotting geometry; every displayed
 * number is read straight off the service payload.
 */
import type { AllocationDoc, RankingDoc, ScriPoint, ScriSweepRow } from "./types.js";

const esc = (s: string) =>
  s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");

export function renderRankingTable(doc: RankingDoc): string {
  const rows = doc.scores
    .map((s, i) => {
      const normalized = doc.normalized_closeness[i];
      return `<tr${s.rank === 1 ? ' class="best"' : ""}>` +
        `<td>${esc(s.supplier)}</td><td>${s.d_plus}</td><td>${s.d_minus}</td>` +
        `<td>${s.closeness}</td><td>${s.rank}</td><td>${normalized}</td></tr>`;
    })
    .join("");
  return `<table class="ranking" data-variant="${esc(doc.variant)}">` +
    `<thead><tr><th>supplier</th><th>d+</th><th>d-</th><th>closeness</th>` +
    `<th>rank</th><th>normalized</th></tr></thead><tbody>${rows}</tbody></table>`;
}

export function renderScriReadout(point: ScriPoint): string {
  const entries = Object.entries(point.scri)
    .map(([supplier, value]) =>
      `<li${supplier === point.argmax ? ' class="argmax"' : ""}>` +
      `${esc(supplier)}: <span class="value">${value}</span></li>`)
    .join("");
  return `<div class="scri-readout" data-alpha="${point.alpha}" ` +
    `data-etag="${esc(point.etag)}"><ul>${entries}</ul>` +
    `<p>argmax: <strong>${esc(point.argmax)}</strong></p></div>`;
}

export function renderScriCurves(rows: ScriSweepRow[], highlightAlpha: number,
                                 crossovers: number[],
                                 width = 560, height = 240): string {
  const suppliers = [...new Set(rows.map((r) => r.supplier))];
  const alphas = [...new Set(rows.map((r) => r.alpha))].sort((a, b) => a - b);
  const values = rows.map((r) => r.scri);
  const lo = Math.min(...values);
  const hi = Math.max(...values);
  const x = (alpha: number) => ((alpha - alphas[0]!) / (alphas[alphas.length - 1]! - alphas[0]!)) * (width - 40) + 30;
  const y = (v: number) => height - 20 - ((v - lo) / (hi - lo || 1)) * (height - 40);

  const polylines = suppliers.map((supplier, idx) => {
    const pts = rows
      .filter((r) => r.supplier === supplier)
      .sort((a, b) => a.alpha - b.alpha)
      .map((r) => `${x(r.alpha).toFixed(1)},${y(r.scri).toFixed(1)}`)
      .join(" ");
    return `<polyline fill="none" class="curve curve-${idx}" ` +
      `data-supplier="${esc(supplier)}" points="${pts}"/>`;
  }).join("");

  const markers = crossovers.map((alpha) =>
    `<line class="crossover" data-alpha="${alpha}" x1="${x(alpha).toFixed(1)}" ` +
    `y1="20" x2="${x(alpha).toFixed(1)}" y2="${height - 20}"/>`).join("");
  const cursor = `<line class="cursor" x1="${x(highlightAlpha).toFixed(1)}" y1="20" ` +
    `x2="${x(highlightAlpha).toFixed(1)}" y2="${height - 20}"/>`;

  return `<svg class="scri-curves" viewBox="0 0 ${width} ${height}">` +
    `${polylines}${markers}${cursor}</svg>`;
}

export function renderAllocationBars(doc: AllocationDoc,
                                     width = 560, barHeight = 26): string {
  const warning = doc.solver_status !== "optimal"
    ? `<p class="warning">solver status: ${esc(doc.solver_status)}</p>` : "";
  const entries = Object.entries(doc.quantities);
  const total = entries.reduce((acc, [, q]) => acc + q, 0);
  let offset = 30;
  const segments = entries.map(([supplier, qty], idx) => {
    const w = total > 0 ? (qty / total) * (width - 60) : 0;
    const seg = `<rect class="bar bar-${idx}" data-supplier="${esc(supplier)}" ` +
      `data-qty="${qty}" x="${offset.toFixed(1)}" y="8" width="${w.toFixed(1)}" ` +
      `height="${barHeight}"/>`;
    offset += w;
    return seg;
  }).join("");
  const legend = entries
    .map(([supplier, qty]) => `<li>${esc(supplier)}: <span class="qty">${qty}</span></li>`)
    .join("");
  const deviations = Object.entries(doc.deviations)
    .filter(([name]) => !name.startsWith("y"))
    .map(([name, v]) => `<li>${esc(name)}: <span class="dev">${v}</span></li>`)
    .join("");
  return `<div class="allocation" data-status="${esc(doc.solver_status)}">${warning}` +
    `<svg viewBox="0 0 ${width} ${barHeight + 16}">${segments}</svg>` +
    `<ul class="legend">${legend}</ul>` +
    `<p>objective: <span class="objective">${doc.objective}</span></p>` +
    `<ul class="deviations">${deviations}</ul></div>`;
}
