/** Explorer state: variant tabs, dirty tracking, cached runs, series
 *  selection. All numbers come from the API; edits go straight back to it.
 *
 *  Dirty propagation mirrors the desktop tool: editing any parameter marks
 *  the variant dirty and drops its cached plot series, so stale curves can
 *  never be drawn; a recalc clears the flag.
 */
import { ApiClient, SeriesPayload, VariantFields, VariantListing } from "./api.js";
import { variantColor, seriesDash } from "./colors.js";
import { Curve } from "./nearest.js";

export interface TabState {
  listing: VariantListing;
  dirty: boolean;
  draw: boolean;
  runId: string | null;
  tables: Map<string, SeriesPayload>;
  log: string | null;
}

export type Listener = () => void;

export class ExplorerModel {
  tabs: TabState[] = [];
  selected: number | null = null;
  serverModified = false;
  activeTable = "cofec1";
  activeColumns = new Set<string>(["coefPf", "coefPs", "coefSh"]);
  incidence: "P" | "SV" = "P";
  status = "";

  private listeners: Listener[] = [];

  constructor(readonly api: ApiClient) {}

  subscribe(fn: Listener): void {
    this.listeners.push(fn);
  }

  private notify(): void {
    for (const fn of this.listeners) fn();
  }

  private freshTab(listing: VariantListing): TabState {
    return { listing, dirty: false, draw: listing.iDrawGraph === 1,
             runId: null, tables: new Map(), log: null };
  }

  async refresh(): Promise<void> {
    const payload = await this.api.listVariants();
    const old = this.tabs;
    this.tabs = payload.variants.map((listing, i) => {
      const prev = old[i];
      if (prev && sameFields(prev.listing, listing)) {
        return { ...prev, listing };
      }
      return this.freshTab(listing);
    });
    this.serverModified = payload.modified;
    if (this.selected === null || this.selected >= this.tabs.length) {
      this.selected = payload.selected;
    }
    this.notify();
  }

  select(i: number): void {
    if (i >= 0 && i < this.tabs.length) {
      this.selected = i;
      this.notify();
    }
  }

  /** Edit one field; on success the variant is dirty and its run is gone. */
  async edit(i: number, patch: Partial<VariantFields>): Promise<void> {
    const tab = this.tabs[i];
    if (!tab) return;
    const listing = await this.api.editVariant(i, patch);
    tab.listing = { ...listing, index: i };
    tab.dirty = true;
    tab.runId = null;
    tab.tables.clear();
    tab.log = null;
    this.serverModified = true;
    this.notify();
  }

  /** Draw flag is UI state; it is pushed to the server only when the set
   *  is downloaded, so toggling it never invalidates a run. */
  toggleDraw(i: number, on: boolean): void {
    const tab = this.tabs[i];
    if (!tab) return;
    tab.draw = on;
    this.notify();
  }

  async clone(i: number): Promise<void> {
    await this.api.cloneVariant(i);
    await this.refresh();
    this.selected = this.tabs.length - 1;
    this.serverModified = true;
    this.notify();
  }

  async remove(i: number): Promise<void> {
    const payload = await this.api.deleteVariant(i);
    this.tabs.splice(i, 1);
    this.tabs.forEach((tab, k) => (tab.listing.index = k));
    this.selected = payload.selected;
    this.serverModified = payload.modified;
    this.notify();
  }

  /** Recalc & draw: compute on the server, then fetch every table plus the
   *  log for the new run. Clears the dirty flag. */
  async recalc(i: number): Promise<void> {
    const tab = this.tabs[i];
    if (!tab) return;
    const resp = await this.api.compute(i, this.incidence);
    tab.runId = resp.run_id;
    tab.tables.clear();
    for (const name of resp.tables) {
      tab.tables.set(name, await this.api.table(resp.run_id, name));
    }
    tab.log = await this.api.log(resp.run_id);
    tab.dirty = false;
    tab.draw = true;
    this.serverModified = resp.unsaved_changes;
    this.notify();
  }

  setActiveTable(name: string): void {
    if (name !== this.activeTable) {
      this.activeTable = name;
      this.activeColumns = new Set(this.columnsOf(name));
      this.notify();
    }
  }

  toggleColumn(label: string, on: boolean): void {
    if (on) this.activeColumns.add(label);
    else this.activeColumns.delete(label);
    this.notify();
  }

  /** Series labels of a table, taken from whichever tab has it cached; the
   *  stresses menu follows the run's i_eta through the server's columns. */
  columnsOf(table: string): string[] {
    for (const tab of this.tabs) {
      const payload = tab.tables.get(table);
      if (payload) return payload.columns.slice(1).map((c) => c.label);
    }
    return [];
  }

  tableNames(): string[] {
    const names = new Set<string>();
    for (const tab of this.tabs) {
      for (const name of tab.tables.keys()) names.add(name);
    }
    return [...names].sort();
  }

  /** Curves to draw: every non-dirty variant with the draw flag and a
   *  fresh run contributes its selected series. */
  plotCurves(): Curve[] {
    const curves: Curve[] = [];
    this.tabs.forEach((tab, ti) => {
      if (!tab.draw || tab.dirty || tab.runId === null) return;
      const payload = tab.tables.get(this.activeTable);
      if (!payload) return;
      const xcol = payload.columns[0];
      if (!xcol) return;
      const x = xcol.values.map((v) => (v === null ? NaN : v));
      payload.columns.slice(1).forEach((col, si) => {
        if (!this.activeColumns.has(col.label)) return;
        curves.push({
          ident: tab.listing.ident,
          label: col.label,
          color: variantColor(ti),
          dash: seriesDash(si),
          x,
          y: col.values,
        });
      });
    });
    return curves;
  }

  shouldConfirmClose(): boolean {
    return this.serverModified || this.tabs.some((t) => t.dirty);
  }

  /** Download text of the current set, syncing draw flags first so the
   *  file carries them like the desktop tool did. */
  async downloadDatText(): Promise<string> {
    for (let i = 0; i < this.tabs.length; i++) {
      const tab = this.tabs[i];
      if (tab && tab.draw !== (tab.listing.iDrawGraph === 1)) {
        const listing = await this.api.editVariant(i, {
          iDrawGraph: tab.draw ? 1 : 0,
        });
        tab.listing = { ...listing, index: i };
        this.serverModified = true;
      }
    }
    return this.api.downloadDat();
  }
}

function sameFields(a: VariantFields, b: VariantFields): boolean {
  return (
    a.ident === b.ident && a.comment === b.comment && a.n === b.n &&
    a.eta === b.eta && a.kf === b.kf && a.rhof === b.rhof &&
    a.anus === b.anus && a.viscosity === b.viscosity &&
    a.permeabil === b.permeabil && a.i_sealed === b.i_sealed &&
    a.i_seepage === b.i_seepage && a.i_eta === b.i_eta &&
    a.iDrawGraph === b.iDrawGraph
  );
}
