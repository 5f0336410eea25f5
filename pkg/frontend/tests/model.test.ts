import { beforeEach, describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";
import { ExplorerModel } from "../src/model.js";
import { nearestPoint } from "../src/nearest.js";
import { FakeServer } from "./fakeapi.js";

let server: FakeServer;
let model: ExplorerModel;

beforeEach(async () => {
  server = new FakeServer();
  model = new ExplorerModel(new ApiClient(server.fetch));
  await model.refresh();
});

describe("variant tabs", () => {
  it("loading the sample set shows two tabs", () => {
    expect(model.tabs.map((t) => t.listing.ident))
      .toEqual(["VariantA", "VariantB"]);
    expect(model.shouldConfirmClose()).toBe(false);
  });

  it("clone appends a ~Clone tab and selects it", async () => {
    await model.clone(0);
    expect(model.tabs.map((t) => t.listing.ident))
      .toEqual(["VariantA", "VariantB", "VariantA~Clone"]);
    expect(model.selected).toBe(2);
  });

  it("delete clamps the selection like the variant store", async () => {
    model.select(1);
    await model.remove(1);
    expect(model.tabs.map((t) => t.listing.ident)).toEqual(["VariantA"]);
    expect(model.selected).toBe(0);
  });
});

describe("recalc and draw", () => {
  it("draws two distinguishable curves for two variants", async () => {
    await model.recalc(0);
    await model.recalc(1);
    const curves = model.plotCurves();
    const idents = new Set(curves.map((c) => c.ident));
    expect(idents).toEqual(new Set(["VariantA", "VariantB"]));
    const colorsA = curves.filter((c) => c.ident === "VariantA")[0]!.color;
    const colorsB = curves.filter((c) => c.ident === "VariantB")[0]!.color;
    expect(colorsA).not.toBe(colorsB);
    // the curves carry genuinely different data, not just different colors
    const a = curves.find((c) => c.ident === "VariantA" && c.label === "coefPf")!;
    const b = curves.find((c) => c.ident === "VariantB" && c.label === "coefPf")!;
    expect(a.y).not.toEqual(b.y);
  });

  it("stresses menu follows the run's i_eta through server columns", async () => {
    await model.recalc(0); // i_eta = 1
    expect(model.columnsOf("stresses"))
      .toEqual(["cabs(tau_zz)", "cabs(tau_xz)", "cabs(tau_xx)", "cabs(sigma)"]);
    await model.recalc(1); // i_eta = 2 wins only for its own tab
    model.tabs[0]!.tables.clear();
    expect(model.columnsOf("stresses"))
      .toEqual(["cabs(tau_xx)", "cabs(sigma)", "cabs(tau_xz)"]);
  });

  it("fetches the log for the computed run", async () => {
    await model.recalc(0);
    expect(model.tabs[0]!.log).toContain("Log: VariantA");
  });
});

describe("cursor readout", () => {
  it("returns exactly the backing table row values", async () => {
    await model.recalc(0);
    const curves = model.plotCurves();
    const table = model.tabs[0]!.tables.get("cofec1")!;
    const hit = nearestPoint(curves, (x) => x, (y) => y,
                             3.02, table.columns[1]!.values[2]! + 0.001);
    expect(hit).not.toBeNull();
    expect(hit!.x).toBe(table.columns[0]!.values[hit!.pointIndex]);
    const col = table.columns.find((c) => c.label === hit!.label)!;
    expect(hit!.y).toBe(col.values[hit!.pointIndex]);
    expect(hit!.ident).toBe("VariantA");
  });

  it("has no dead zone: far cursor still snaps to the nearest curve", async () => {
    await model.recalc(0);
    const hit = nearestPoint(model.plotCurves(), (x) => x, (y) => y, 1e6, -1e6);
    expect(hit).not.toBeNull();
  });
});

describe("dirty propagation", () => {
  it("editing a field marks the variant dirty and stales its plot", async () => {
    await model.recalc(0);
    expect(model.plotCurves().some((c) => c.ident === "VariantA")).toBe(true);
    await model.edit(0, { kf: 2.0 });
    const tab = model.tabs[0]!;
    expect(tab.dirty).toBe(true);
    expect(tab.runId).toBeNull();
    expect(tab.tables.size).toBe(0);
    expect(model.plotCurves().some((c) => c.ident === "VariantA")).toBe(false);
  });

  it("recalc clears the dirty flag and restores the curves", async () => {
    await model.edit(0, { kf: 2.0 });
    await model.recalc(0);
    expect(model.tabs[0]!.dirty).toBe(false);
    expect(model.plotCurves().some((c) => c.ident === "VariantA")).toBe(true);
  });

  it("a rejected edit surfaces the validation report and changes nothing",
     async () => {
    await expect(model.edit(0, { anus: 0.5 })).rejects.toSatisfy((err) =>
      err instanceof ApiError && err.status === 400 &&
      err.validation!.violations[0]!.includes("Poisson"));
    expect(model.tabs[0]!.listing.anus).toBe(0.35);
    expect(model.tabs[0]!.dirty).toBe(false);
  });

  it("server-side invalidation matches: stale table fetch 404s", async () => {
    await model.recalc(0);
    const runId = model.tabs[0]!.runId!;
    await model.edit(0, { kf: 3.0 });
    await expect(model.api.table(runId, "cofec1"))
      .rejects.toMatchObject({ status: 404 });
  });
});

describe("close prompt and download", () => {
  it("prompts after any unsaved change", async () => {
    expect(model.shouldConfirmClose()).toBe(false);
    await model.edit(1, { eta: 3.0 });
    expect(model.shouldConfirmClose()).toBe(true);
  });

  it("download syncs draw flags so the file carries them", async () => {
    model.toggleDraw(0, false);
    const text = await model.downloadDatText();
    expect(server.putLog.some((p) =>
      p.index === 0 && p.patch.iDrawGraph === 0)).toBe(true);
    expect(text).toContain("VariantIdent=VariantA");
    expect(text).toContain("iDrawGraph=0");
  });

  it("download without flag changes performs no edits", async () => {
    await model.downloadDatText();
    expect(server.putLog).toEqual([]);
  });
});
