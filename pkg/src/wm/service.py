"""HTTP facade over the variant store and the reflection engine.

Sessions are in-memory and keyed by the ``X-Session`` header (default
``"default"``); each holds one variant set plus its computed runs. A run
stays retrievable only while the owning variant is bitwise unchanged:
editing or deleting the variant invalidates it (GET then returns 404),
mirroring the legacy GUI dropping cached results on any field change.
Mutations are linearized per session by a lock.
"""
from __future__ import annotations

import threading
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse, PlainTextResponse

from .errors import WmError
from .run import RunConfig, compute_run, default_samples_dir, parse_angle_spec, \
    parse_eta_spec
from .report import RunOutputs
from .store import VariantSet, parse_variants, serialize_variants, variants_from_json
from .variant import InputVariant, normalize_variant, validate_variant, ALL_FIELDS

MAX_SERIES_POINTS = 100_000


def _variant_key(v: InputVariant) -> tuple:
    return tuple(getattr(v, name) for name in ALL_FIELDS)


@dataclass
class RunRecord:
    run_id: str
    variant_index: int
    variant_key: tuple
    outputs: RunOutputs


@dataclass
class Session:
    vs: VariantSet
    lock: threading.Lock = field(default_factory=threading.Lock)
    runs: dict[str, RunRecord] = field(default_factory=dict)
    run_counter: int = 0


def create_app(samples_path: str | Path | None = None,
               ui_dir: str | Path | None = None) -> FastAPI:
    """Build the service; new sessions start from the bundled sample set."""
    app = FastAPI(title="wm", version="0.1.0")
    sessions: dict[str, Session] = {}
    sessions_lock = threading.Lock()
    if samples_path is None:
        candidate = default_samples_dir() / "QQ.dat"
        samples_path = candidate if candidate.exists() else None

    def get_session(request: Request) -> Session:
        token = request.headers.get("x-session", "default")
        with sessions_lock:
            if token not in sessions:
                if samples_path is not None:
                    vs = VariantSet.load(samples_path)
                else:
                    vs = VariantSet()
                sessions[token] = Session(vs=vs)
            return sessions[token]

    def variant_payload(i: int, v: InputVariant) -> dict:
        d = asdict(v)
        d["index"] = i
        return d

    def set_payload(vs: VariantSet) -> dict:
        return {
            "path": str(vs.path) if vs.path else None,
            "selected": vs.selected,
            "modified": vs.modified,
            "variants": [variant_payload(i, v) for i, v in enumerate(vs.variants)],
        }

    def check_index(vs: VariantSet, i: int) -> JSONResponse | None:
        if not 0 <= i < len(vs.variants):
            return JSONResponse({"error": f"variant index {i} out of range"},
                                status_code=404)
        return None

    @app.exception_handler(WmError)
    async def wm_error_handler(_request, exc: WmError):
        return JSONResponse({"error": str(exc)}, status_code=400)

    @app.get("/api/variants")
    def list_variants(request: Request):
        s = get_session(request)
        with s.lock:
            return set_payload(s.vs)

    @app.post("/api/variants")
    async def load_variants(request: Request):
        s = get_session(request)
        ctype = request.headers.get("content-type", "")
        body = await request.body()
        text = body.decode("utf-8")
        if "json" in ctype:
            try:
                variants = variants_from_json(text)
            except (ValueError, KeyError, TypeError) as exc:
                return JSONResponse({"error": f"bad JSON variant payload: {exc}"},
                                    status_code=400)
        else:
            variants = parse_variants(text)
        with s.lock:
            s.vs = VariantSet(path=None, variants=variants,
                              selected=len(variants) - 1 if variants else None,
                              modified=False)
            s.runs.clear()
            return set_payload(s.vs)

    @app.put("/api/variants/{i}")
    async def edit_variant(i: int, request: Request):
        s = get_session(request)
        patch = await request.json()
        with s.lock:
            if (resp := check_index(s.vs, i)) is not None:
                return resp
            fields = {k: v for k, v in patch.items() if k in ALL_FIELDS}
            updated = replace(s.vs.variants[i], **fields)
            report = validate_variant(updated)
            if not report.ok:
                return JSONResponse({"violations": list(report.violations),
                                     "warnings": list(report.warnings)},
                                    status_code=400)
            s.vs.replace_variant(i, updated)
            return variant_payload(i, updated)

    @app.post("/api/variants/{i}/clone")
    def clone_variant(i: int, request: Request):
        s = get_session(request)
        with s.lock:
            if (resp := check_index(s.vs, i)) is not None:
                return resp
            dup = s.vs.clone(i)
            return variant_payload(len(s.vs.variants) - 1, dup)

    @app.delete("/api/variants/{i}")
    def delete_variant(i: int, request: Request):
        s = get_session(request)
        with s.lock:
            if (resp := check_index(s.vs, i)) is not None:
                return resp
            s.vs.delete(i)
            return set_payload(s.vs)

    @app.post("/api/compute")
    async def compute(request: Request):
        s = get_session(request)
        body = await request.json()
        i = int(body.get("variant", 0))
        with s.lock:
            if (resp := check_index(s.vs, i)) is not None:
                return resp
            raw = s.vs.variants[i]
            v, _ = normalize_variant(raw)
            report = validate_variant(v)
            if not report.ok:
                return JSONResponse({"violations": list(report.violations),
                                     "warnings": list(report.warnings)},
                                    status_code=400)
            defaults = RunConfig()
            cfg = RunConfig(
                incidence=body.get("incidence", "P"),
                angle_grid=parse_angle_spec(body["angles"])
                if "angles" in body else defaults.angle_grid,
                eta_grid=parse_eta_spec(body["etas"])
                if "etas" in body else defaults.eta_grid,
                log_angle_deg=float(body.get("angle_deg", defaults.log_angle_deg)),
            )
            outputs = compute_run(v, cfg, stem=s.vs.path.stem if s.vs.path else "run")
            s.run_counter += 1
            run_id = f"r{s.run_counter}"
            s.runs[run_id] = RunRecord(run_id=run_id, variant_index=i,
                                       variant_key=_variant_key(raw),
                                       outputs=outputs)
            return {"run_id": run_id, "variant": i, "ident": raw.ident,
                    "unsaved_changes": s.vs.modified,
                    "tables": sorted(outputs.tables()),
                    "i_eta": v.i_eta}

    def fresh_run(s: Session, run_id: str) -> RunRecord | None:
        rec = s.runs.get(run_id)
        if rec is None:
            return None
        if rec.variant_index >= len(s.vs.variants):
            return None
        if _variant_key(s.vs.variants[rec.variant_index]) != rec.variant_key:
            return None
        return rec

    @app.get("/api/runs/{run_id}/tables/{name}")
    def run_table(run_id: str, name: str, request: Request,
                  offset: int = 0, limit: int | None = None):
        s = get_session(request)
        with s.lock:
            rec = fresh_run(s, run_id)
            if rec is None:
                return JSONResponse({"error": f"unknown or stale run {run_id!r}"},
                                    status_code=404)
            tables = rec.outputs.tables()
            if name not in tables:
                return JSONResponse({"error": f"unknown table {name!r}"},
                                    status_code=404)
            t = tables[name]
            offset = max(0, offset)
            stop = t.n_rows if limit is None else min(t.n_rows, offset + limit)
            stop = min(stop, offset + MAX_SERIES_POINTS)
            return {
                "name": t.name,
                "x_label": t.x_label,
                "n_rows": t.n_rows,
                "offset": offset,
                "columns": [{"label": label,
                             "values": [None if v != v else v
                                        for v in values[offset:stop].tolist()]}
                            for label, values in t.columns],
            }

    @app.get("/api/runs/{run_id}/log")
    def run_log(run_id: str, request: Request):
        s = get_session(request)
        with s.lock:
            rec = fresh_run(s, run_id)
            if rec is None:
                return JSONResponse({"error": f"unknown or stale run {run_id!r}"},
                                    status_code=404)
            return PlainTextResponse(rec.outputs.log_text)

    @app.get("/api/files/dat")
    def download_dat(request: Request):
        s = get_session(request)
        with s.lock:
            text = serialize_variants(s.vs.variants)
            name = s.vs.path.name if s.vs.path else "variants.dat"
            return Response(text, media_type="text/plain",
                            headers={"Content-Disposition":
                                     f'attachment; filename="{name}"'})

    if ui_dir is not None and Path(ui_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
