import { describe, expect, it } from "vitest";

import { crossoverAlphas } from "../src/controller.js";
import { renderAllocationBars, renderRankingTable, renderScriCurves,
         renderScriReadout } from "../src/render.js";
import type { AllocationDoc, RankingDoc, ScriPoint, ScriSweepRow } from "../src/types.js";
import { fixture } from "./helpers.js";

describe("ranking table", () => {
  const doc = fixture<RankingDoc>("service_ranking.json");

  it("renders one row per supplier with the best highlighted", () => {
    const html = renderRankingTable(doc);
    expect(html.match(/<tr(?:[^>]*)>/g)!.length).toBe(1 + doc.scores.length);
    expect(html).toContain('class="best"');
    const best = doc.scores.find((s) => s.rank === 1)!;
    expect(best.supplier).toBe("S3");
  });

  it("escapes markup in supplier names", () => {
    const hostile: RankingDoc = {
      ...doc,
      scores: [{ ...doc.scores[0]!, supplier: "<img>" }],
      normalized_closeness: [doc.normalized_closeness[0]!],
    };
    const html = renderRankingTable(hostile);
    expect(html).not.toContain("<img>");
    expect(html).toContain("&lt;img&gt;");
  });
});

describe("scri views", () => {
  const point = fixture<ScriPoint>("service_scri_02.json");
  const sweep = fixture<ScriSweepRow[]>("service_scri_sweep.json");

  it("readout highlights the argmax supplier", () => {
    const html = renderScriReadout(point);
    expect(html).toContain(`<li class="argmax">${point.argmax}:`);
    expect(html).toContain(`data-alpha="${point.alpha}"`);
    expect(html).toContain(`data-etag="${point.etag}"`);
  });

  it("curve chart draws one polyline per supplier plus markers and cursor", () => {
    const html = renderScriCurves(sweep, 0.5, crossoverAlphas(sweep));
    expect(html.match(/<polyline/g)!.length).toBe(5);
    expect(html.match(/class="crossover"/g)!.length).toBe(2);
    expect(html).toContain('class="cursor"');
    for (const supplier of ["S1", "S2", "S3", "S4", "S5"]) {
      expect(html).toContain(`data-supplier="${supplier}"`);
    }
  });
});

describe("allocation bars", () => {
  const doc = fixture<AllocationDoc>("service_allocation_tvp260.json");

  it("draws one segment per supplier with wire quantities", () => {
    const html = renderAllocationBars(doc);
    expect(html.match(/<rect/g)!.length).toBe(Object.keys(doc.quantities).length);
    expect(html).toContain(`data-status="optimal"`);
    expect(html).not.toContain('class="warning"');
    expect(html).toContain(`<span class="objective">${doc.objective}</span>`);
  });

  it("lists the deviation breakdown", () => {
    const html = renderAllocationBars(doc);
    for (const name of ["d1-", "d3+", "e2+"]) {
      expect(html).toContain(`${name}: <span class="dev">${doc.deviations[name]}</span>`);
    }
  });

  it("renders a warning state for non-optimal statuses", () => {
    const broken: AllocationDoc = { ...doc, solver_status: "infeasible" };
    const html = renderAllocationBars(broken);
    expect(html).toContain('class="warning"');
    expect(html).toContain("infeasible");
  });
});
