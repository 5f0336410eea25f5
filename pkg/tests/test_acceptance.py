"""Acceptance gate: one test per release criterion, at its stated tolerance.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one pass/fail
line per criterion.
"""
import math
import time
from dataclasses import replace

import numpy as np
import pytest
from fastapi.testclient import TestClient

from conftest import ELASTIC, PARITY, random_variant
from oracles import elastic_free_surface_coefficients
from wm import (InputVariant, VariantSet, biot_constants, bulk_wavenumbers,
                compute_run, density_matrix, dissipation_b, effective_densities,
                emit_legacy_input, parse_variants, read_table,
                serialize_variants, solve_reflection, write_run_outputs)
from wm.run import RunConfig, default_samples_dir
from wm.service import create_app


def _report(name: str, ok: bool, detail: str) -> None:
    print(f"[acceptance] {name}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"{name}: {detail}"


def test_criterion_1_legacy_log_parity():
    t0 = time.perf_counter()
    bc = biot_constants(PARITY)
    dm = density_matrix(PARITY)
    got = {"Q": bc.Q, "R": bc.R, "rho11": dm.rho11, "rho12": dm.rho12,
           "rho22": dm.rho22, "P": bc.P}
    ref = {"Q": 0.7000000, "R": 0.3000000, "rho11": 0.8050000,
           "rho12": -0.1050000, "rho22": 0.1950000, "P": 5.966666}
    worst = max(abs(got[k] - ref[k]) / abs(ref[k]) for k in ref)
    elapsed = time.perf_counter() - t0
    _report("legacy-log-parity", worst <= 1e-6 and elapsed < 1.0,
            f"worst rel err {worst:.3e}, {elapsed * 1e3:.1f} ms")


def test_criterion_2_elastic_limit_oracle():
    t0 = time.perf_counter()
    lam = 2.0 * ELASTIC.anus / (1.0 - 2.0 * ELASTIC.anus)
    rho = 1.0 - ELASTIC.n
    vp = math.sqrt((lam + 2.0) / rho)
    vs = math.sqrt(1.0 / rho)
    worst = 0.0
    for incidence in ("P", "SV"):
        for angle in np.arange(1.0, 90.0, 1.0):
            sol = solve_reflection(ELASTIC, incidence, float(angle))
            c_p, c_s = elastic_free_surface_coefficients(vp, vs, incidence,
                                                         float(angle))
            worst = max(worst, abs(sol.c_ref_Pf - c_p), abs(sol.c_ref_S - c_s))
    elapsed = time.perf_counter() - t0
    _report("elastic-limit-oracle", worst < 1e-8 and elapsed < 1.0,
            f"max abs diff {worst:.3e}, {elapsed:.2f} s")


def test_criterion_3_energy_balance():
    t0 = time.perf_counter()
    rng = np.random.default_rng(31415)
    worst = 0.0
    for k in range(500):
        v = random_variant(rng, lossless=True)
        incidence = "P" if k % 2 == 0 else "SV"
        angles = rng.uniform(0.5, 89.5, size=5)
        for drainage_flag in (0, 1):
            vd = replace(v, i_sealed=drainage_flag)
            for angle in angles:
                sol = solve_reflection(vd, incidence, float(angle))
                worst = max(worst, abs(sol.flux_report.imbalance_rel))
    elapsed = time.perf_counter() - t0
    _report("energy-balance", worst < 1e-6 and elapsed < 30.0,
            f"worst rel imbalance {worst:.3e} over 500x5x2, {elapsed:.1f} s")


def test_criterion_4_dispersion_residual():
    t0 = time.perf_counter()
    rng = np.random.default_rng(27182)
    worst = 0.0
    ordering_ok = True
    for _ in range(10_000):
        v = random_variant(rng)
        bc = biot_constants(v)
        cd = effective_densities(density_matrix(v), dissipation_b(v),
                                 float(v.eta))
        ws = bulk_wavenumbers(bc, cd)
        ordering_ok &= abs(ws.omega / ws.l_f) >= abs(ws.omega / ws.l_s)
        w2 = cd.omega ** 2
        a2 = bc.P * bc.R - bc.Q ** 2
        a1 = -w2 * (bc.P * cd.cr22 + bc.R * cd.cr11 - 2 * bc.Q * cd.cr12)
        a0 = w2 * w2 * (cd.cr11 * cd.cr22 - cd.cr12 ** 2)
        for l in (ws.l_f, ws.l_s):
            x = l * l
            resid = abs(a2 * x * x + a1 * x + a0)
            scale = abs(a2 * x * x) + abs(a1 * x) + abs(a0)
            worst = max(worst, resid / scale)
    elapsed = time.perf_counter() - t0
    _report("dispersion-residual", worst < 1e-10 and ordering_ok
            and elapsed < 10.0,
            f"worst rel residual {worst:.3e} over 1e4, {elapsed:.1f} s")


def test_criterion_5_normal_incidence_decoupling():
    rng = np.random.default_rng(16180)
    worst = 0.0
    for _ in range(1000):
        v = random_variant(rng)
        sol = solve_reflection(v, "P", 0.0)
        worst = max(worst, abs(sol.c_ref_S))
    _report("normal-incidence-decoupling", worst < 1e-12,
            f"max |c_ref_S| {worst:.3e} over 1000")


def _random_float(rng) -> float:
    kind = rng.integers(0, 4)
    if kind == 0:
        return float(rng.uniform(-10, 10))
    if kind == 1:
        return float(np.sign(rng.uniform(-1, 1)) * 10.0 ** rng.uniform(-30, 30))
    if kind == 2:
        return float(rng.integers(-1000, 1000))
    return float(rng.choice([0.0, 1e-300, -1e300, 0.1, 2.0 / 3.0]))


def test_criterion_6_format_fidelity(tmp_path):
    rng = np.random.default_rng(14142)
    # parse . serialize identity over 1000 randomized sets
    for _ in range(1000):
        variants = []
        for j in range(int(rng.integers(1, 5))):
            variants.append(InputVariant(
                ident=f"V{int(rng.integers(10 ** 6))}",
                comment="" if rng.random() < 0.3 else f"case {j}",
                n=_random_float(rng), eta=_random_float(rng),
                kf=_random_float(rng), rhof=_random_float(rng),
                anus=_random_float(rng), viscosity=_random_float(rng),
                permeabil=_random_float(rng),
                i_sealed=int(rng.integers(0, 2)),
                i_seepage=int(rng.integers(0, 2)),
                i_eta=int(rng.integers(0, 3)),
                iDrawGraph=int(rng.integers(0, 2))))
        assert parse_variants(serialize_variants(variants)) == variants

    # tolerant-grammar corpus
    corpus = ("orphan=1\n"
              "/ top comment\n"
              "VariantIdent=First\n"
              "   // indented comment\n"
              "kf=2.5\n"
              "unknownKey=9\n"
              "eta junk = 4\n"
              "n=0.25trailing\n"
              "rhof=notanumber\n"
              "\n"
              "VariantIdent=Second\n"
              "VariantComment=with = sign\n"
              "i_eta=2\n")
    first, second = parse_variants(corpus)
    assert first.kf == 2.5 and first.eta == 4.0 and first.n == 0.25
    assert first.rhof == 0.3  # failed parse keeps the default
    assert second.comment == "with = sign" and second.i_eta == 2

    # backup rotation: two-save test
    target = tmp_path / "QQ.dat"
    vs = VariantSet(variants=[InputVariant(ident="A", kf=1.0)])
    vs.save(target)
    first_bytes = target.read_bytes()
    vs.replace_variant(0, replace(vs.variants[0], kf=2.0))
    vs.save(target)
    assert (tmp_path / "QQ.bak").read_bytes() == first_bytes

    # legacy emitter layouts (field order and line structure)
    m1 = emit_legacy_input(InputVariant(ident="A"), 1).splitlines()
    m2 = emit_legacy_input(InputVariant(ident="A"), 2).splitlines()
    assert [len(l.split()) for l in m1[:2]] == [4, 4]
    assert [len(l.split()) for l in m2[:3]] == [5, 2, 3]
    assert m1[2:4] == ["", ""] and m2[3:5] == ["", ""]
    assert m1[4:] == ["// n, kf, rhof, anus", "// viscosity, j",
                      "// i_sealed, i_seepage, i_eta"]
    assert m2[5:] == ["// n, eta, kf, rhof, anus", "// viscosity, permeabil",
                      "// i_sealed, i_seepage, i_eta"]
    _report("format-fidelity", True,
            "1000 round-trips, grammar corpus, bak rotation, legacy layouts")


def test_criterion_7_output_contract(tmp_path):
    cfg = RunConfig(angle_grid=tuple(np.arange(1.0, 90.0, 1.0)),
                    eta_grid=tuple(np.geomspace(0.01, 100, 40)))
    expected_files = {"check.out", "cofec1.out", "freq_cof.out",
                      "freq_disp.out", "stresses.out", "displace.out",
                      "QQ~Log.txt", "manifest.txt"}
    worst_rt = 0.0
    for i_eta, n_series in ((1, 4), (2, 3)):
        v = replace(PARITY, i_eta=i_eta)
        folder = tmp_path / f"ieta{i_eta}"
        run = compute_run(v, cfg, stem="QQ")
        write_run_outputs(run, folder)
        names = {p.name for p in folder.iterdir()}
        assert names == expected_files, names
        assert len(run.stresses.columns) - 1 == n_series
        for name, table in run.tables().items():
            back = read_table(folder / f"{name}.out", table.labels)
            for label in table.labels:
                a, b = back.column(label), table.column(label)
                mask = ~np.isnan(b)
                worst_rt = max(worst_rt, float(np.max(np.abs(a[mask] - b[mask]),
                                                      initial=0.0)))
        again = tmp_path / f"again{i_eta}"
        write_run_outputs(compute_run(v, cfg, stem="QQ"), again)
        for p in folder.iterdir():
            assert p.read_bytes() == (again / p.name).read_bytes()
    _report("output-contract", worst_rt <= 1e-12,
            f"6 .out + log per run, series counts 4/3, round-trip {worst_rt:.1e}, "
            "reruns byte-identical")


def test_criterion_8_cli_api_equivalence():
    cfg = RunConfig(angle_grid=tuple(np.arange(1.0, 90.0, 1.0)),
                    eta_grid=tuple(np.geomspace(0.1, 10, 9)))
    sample = default_samples_dir() / "QQ.dat"
    variants = parse_variants(sample.read_text())
    app = create_app(samples_path=sample)
    worst = 0.0
    with TestClient(app) as client:
        for idx in range(2):
            from wm import normalize_variant

            v, _ = normalize_variant(variants[idx])
            local = compute_run(v, cfg, stem="QQ")
            r = client.post("/api/compute",
                            json={"variant": idx, "angles": "1:89:1",
                                  "etas": "LOG:0.1:10:9"})
            rid = r.json()["run_id"]
            for name, table in local.tables().items():
                remote = client.get(f"/api/runs/{rid}/tables/{name}").json()
                for (label, values), rcol in zip(table.columns,
                                                 remote["columns"]):
                    got = np.array([np.nan if x is None else x
                                    for x in rcol["values"]])
                    mask = ~np.isnan(values)
                    assert np.array_equal(mask, ~np.isnan(got))
                    scale = np.maximum(np.abs(values[mask]), 1e-300)
                    worst = max(worst, float(np.max(
                        np.abs(got[mask] - values[mask]) / scale, initial=0.0)))
    _report("cli-api-equivalence", worst <= 1e-15,
            f"max rel difference {worst:.3e}")
