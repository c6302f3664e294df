/** Browser bootstrap: wire the controller to the page. */
import { baseUrlFromEnvironment, Client } from "./api.js";
import { ConsoleController, crossoverAlphas } from "./controller.js";
import { renderAllocationBars, renderRankingTable, renderScriCurves,
         renderScriReadout } from "./render.js";

const PERFORMANCE_TERMS = ["VB", "B", "MB", "M", "MG", "G", "VG", "VVG", "EG"];

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

function renderAll(controller: ConsoleController): void {
  const s = controller.state;
  el("etag").textContent = s.etag;
  el("stale").hidden = !s.stale;
  el("reload").hidden = !s.reloadRequired;
  el("error").textContent = s.lastError ?? "";
  if (s.ranking) {
    el("ranking").innerHTML = renderRankingTable(s.ranking.value);
  }
  if (s.scri) {
    el("scri-readout").innerHTML = renderScriReadout(s.scri.value);
  }
  if (s.scriSweep) {
    el("scri-curves").innerHTML = renderScriCurves(
      s.scriSweep.value, s.alpha, crossoverAlphas(s.scriSweep.value));
  }
  if (s.allocation) {
    el("allocation").innerHTML = renderAllocationBars(s.allocation.value);
  }
}

async function boot(): Promise<void> {
  const api = new Client(baseUrlFromEnvironment());
  const documentInput = el<HTMLTextAreaElement>("dataset-document");
  const controller: { current: ConsoleController | null } = { current: null };

  el("create").addEventListener("click", () => {
    void (async () => {
      const payload = JSON.parse(documentInput.value);
      const created = await api.createSession(payload);
      const c = new ConsoleController(api, created.value.id, created.value.etag,
                                      () => renderAll(c));
      controller.current = c;
      await c.refresh();
    })();
  });

  el<HTMLInputElement>("alpha").addEventListener("input", (event) => {
    const alpha = Number((event.target as HTMLInputElement).value);
    el("alpha-value").textContent = String(alpha);
    void controller.current?.setAlpha(alpha);
  });

  el<HTMLInputElement>("tvp").addEventListener("input", (event) => {
    const tvp = Number((event.target as HTMLInputElement).value);
    el("tvp-value").textContent = String(tvp);
    void controller.current?.setTvp(tvp);
  });

  el("stage").addEventListener("click", () => {
    const term = el<HTMLSelectElement>("term").value;
    if (!PERFORMANCE_TERMS.includes(term)) {
      return;
    }
    controller.current?.stageAppraisal({
      supplier: el<HTMLInputElement>("supplier").value,
      attribute: el<HTMLInputElement>("attribute").value,
      dm: el<HTMLInputElement>("dm").value,
      term,
    });
  });

  el("commit").addEventListener("click", () => {
    void controller.current?.commit();
  });
}

document.addEventListener("DOMContentLoaded", () => {
  void boot();
});
