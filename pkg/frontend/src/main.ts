/** Wires the explorer model to the DOM: tabs, parameter form, mode
 *  checkboxes, series selector, plot, table and log viewers. */
import { ApiClient, ApiError, SeriesPayload } from "./api.js";
import { ExplorerModel } from "./model.js";
import { NearestHit } from "./nearest.js";
import { Plot } from "./plot.js";
import { variantColor } from "./colors.js";

const NUMERIC_FIELDS = ["n", "eta", "kf", "rhof", "anus", "viscosity",
                        "permeabil"] as const;

const model = new ExplorerModel(new ApiClient());
const $ = <T extends HTMLElement>(id: string): T =>
  document.getElementById(id) as T;

const plot = new Plot($("plot") as unknown as HTMLCanvasElement, showReadout);

function showReadout(hit: NearestHit | null): void {
  const bar = $("status");
  if (!hit) {
    bar.textContent = model.status || "move the cursor over a curve";
    return;
  }
  bar.textContent =
    `${hit.ident} · ${hit.label}: x= ${hit.x}  y= ${hit.y}`;
}

function flash(message: string): void {
  model.status = message;
  $("status").textContent = message;
}

function renderTabs(): void {
  const bar = $("tabs");
  bar.replaceChildren();
  model.tabs.forEach((tab, i) => {
    const btn = document.createElement("button");
    btn.className = "tab" + (model.selected === i ? " active" : "");
    btn.style.borderBottomColor = variantColor(i);
    btn.textContent = tab.listing.ident + (tab.dirty ? " *" : "");
    btn.addEventListener("click", () => model.select(i));
    bar.appendChild(btn);
  });
}

function renderForm(): void {
  const i = model.selected;
  const form = $("form");
  const tab = i === null ? undefined : model.tabs[i];
  form.style.visibility = tab ? "visible" : "hidden";
  if (!tab || i === null) return;
  ($("f-ident") as HTMLInputElement).value = tab.listing.ident;
  ($("f-comment") as HTMLInputElement).value = tab.listing.comment;
  for (const name of NUMERIC_FIELDS) {
    ($(`f-${name}`) as HTMLInputElement).value = String(tab.listing[name]);
  }
  ($("f-i_sealed") as HTMLInputElement).checked = tab.listing.i_sealed === 1;
  ($("f-i_seepage") as HTMLInputElement).checked = tab.listing.i_seepage === 1;
  ($("f-i_eta") as HTMLSelectElement).value = String(tab.listing.i_eta || 1);
  ($("f-draw") as HTMLInputElement).checked = tab.draw;
  ($("btn-viewlog") as HTMLButtonElement).disabled = tab.log === null;
}

function renderSeriesPanel(): void {
  const panel = $("series");
  panel.replaceChildren();
  for (const name of model.tableNames()) {
    const label = document.createElement("label");
    const radio = document.createElement("input");
    radio.type = "radio";
    radio.name = "table";
    radio.checked = name === model.activeTable;
    radio.addEventListener("change", () => model.setActiveTable(name));
    label.append(radio, ` file ${name}.out`);
    panel.appendChild(label);
    if (name === model.activeTable) {
      for (const col of model.columnsOf(name)) {
        const cl = document.createElement("label");
        cl.className = "col";
        const box = document.createElement("input");
        box.type = "checkbox";
        box.checked = model.activeColumns.has(col);
        box.addEventListener("change", () =>
          model.toggleColumn(col, box.checked));
        cl.append(box, ` ${col}`);
        panel.appendChild(cl);
      }
    }
  }
}

function renderTableViewer(): void {
  const host = $("tableview");
  host.replaceChildren();
  const i = model.selected;
  const tab = i === null ? undefined : model.tabs[i];
  const payload = tab?.tables.get(model.activeTable);
  if (!payload) {
    host.textContent = "no table yet: recalc this variant";
    return;
  }
  host.appendChild(renderSeriesTable(payload));
}

function renderSeriesTable(payload: SeriesPayload): HTMLTableElement {
  const table = document.createElement("table");
  const head = table.createTHead().insertRow();
  for (const col of payload.columns) {
    const th = document.createElement("th");
    th.textContent = col.label;
    head.appendChild(th);
  }
  const body = table.createTBody();
  for (let r = 0; r < payload.n_rows; r++) {
    const row = body.insertRow();
    for (const col of payload.columns) {
      const v = col.values[r];
      row.insertCell().textContent = v === null || v === undefined ?
        "" : String(v);
    }
  }
  return table;
}

function render(): void {
  renderTabs();
  renderForm();
  renderSeriesPanel();
  renderTableViewer();
  plot.setCurves(model.plotCurves());
}

function bindForm(): void {
  const commit = async (name: string, raw: string | number) => {
    if (model.selected === null) return;
    try {
      await model.edit(model.selected, { [name]: raw });
      flash(`${name} updated; plot is stale until recalc`);
    } catch (err) {
      if (err instanceof ApiError && err.validation) {
        flash(`rejected: ${err.validation.violations.join("; ")}`);
      } else {
        flash(`edit failed: ${err}`);
      }
      render(); // restore the last valid value
    }
  };
  ($("f-ident") as HTMLInputElement).addEventListener("change", (ev) =>
    commit("ident", (ev.target as HTMLInputElement).value));
  ($("f-comment") as HTMLInputElement).addEventListener("change", (ev) =>
    commit("comment", (ev.target as HTMLInputElement).value));
  for (const name of NUMERIC_FIELDS) {
    ($(`f-${name}`) as HTMLInputElement).addEventListener("change", (ev) =>
      commit(name, Number((ev.target as HTMLInputElement).value)));
  }
  ($("f-i_sealed") as HTMLInputElement).addEventListener("change", (ev) =>
    commit("i_sealed", (ev.target as HTMLInputElement).checked ? 1 : 0));
  ($("f-i_seepage") as HTMLInputElement).addEventListener("change", (ev) =>
    commit("i_seepage", (ev.target as HTMLInputElement).checked ? 1 : 0));
  ($("f-i_eta") as HTMLSelectElement).addEventListener("change", (ev) =>
    commit("i_eta", Number((ev.target as HTMLSelectElement).value)));
  ($("f-draw") as HTMLInputElement).addEventListener("change", (ev) => {
    if (model.selected !== null) {
      model.toggleDraw(model.selected, (ev.target as HTMLInputElement).checked);
    }
  });
}

function bindActions(): void {
  $("btn-recalc").addEventListener("click", async () => {
    if (model.selected === null) return;
    flash("computing…");
    try {
      await model.recalc(model.selected);
      flash("done");
    } catch (err) {
      flash(`compute failed: ${err}`);
    }
  });
  $("btn-clone").addEventListener("click", () => {
    if (model.selected !== null) void model.clone(model.selected);
  });
  $("btn-delete").addEventListener("click", () => {
    if (model.selected !== null) void model.remove(model.selected);
  });
  $("btn-viewlog").addEventListener("click", () => {
    const tab = model.selected === null ? undefined : model.tabs[model.selected];
    if (tab?.log) {
      ($("logview") as HTMLElement).textContent = tab.log;
      ($("logdialog") as HTMLDialogElement).showModal();
    }
  });
  $("btn-download").addEventListener("click", async () => {
    try {
      const text = await model.downloadDatText();
      const blob = new Blob([text], { type: "text/plain" });
      const a = document.createElement("a");
      a.href = URL.createObjectURL(blob);
      a.download = "variants.dat";
      a.click();
      URL.revokeObjectURL(a.href);
    } catch (err) {
      flash(`download failed: ${err}`);
    }
  });
  $("btn-png").addEventListener("click", () => plot.downloadPng("plot.png"));
  ($("f-incidence") as HTMLSelectElement).addEventListener("change", (ev) => {
    model.incidence = (ev.target as HTMLSelectElement).value as "P" | "SV";
  });
  // right-click on the plot jumps to the series panel, a nod to the
  // original popup menu
  $("plot").addEventListener("contextmenu", (ev) => {
    ev.preventDefault();
    $("series").scrollIntoView({ behavior: "smooth" });
  });
  window.addEventListener("beforeunload", (ev) => {
    if (model.shouldConfirmClose()) {
      ev.preventDefault();
      ev.returnValue = "";
    }
  });
}

model.subscribe(render);
bindForm();
bindActions();
void model.refresh().catch((err) => flash(`load failed: ${err}`));
