"""Versioned HTTP API over the store and analytics facade.

Reads serve consistent snapshots; writes (ingest, watchlist, labels) are
serialized through one lock. All payloads are JSON; timestamps RFC-3339 UTC.
"""

from __future__ import annotations

import threading

from fastapi import FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from . import cooccur, signatures
from .audit import LabelValue, tally_to_csv
from .config import Config
from .corpus import Granularity, Kind
from .errors import DomainError, NotFoundError
from .service import Analytics
from .store import Store
from .tracking import watchlist_update


class WatchlistRequest(BaseModel):
    term: str
    granularity: str = "month"
    action: str = "add"
    actor: str = "api"


class LabelsRequest(BaseModel):
    pair_id: str  # response id; unique even when several bots answer one prompt
    labels: list[str]


def create_app(config: Config | None = None) -> FastAPI:
    config = config or Config()
    store = Store(config.data_dir, salt=config.salt)
    analytics = Analytics(store, config)
    write_lock = threading.Lock()
    app = FastAPI(title="ctrkit", version="1")

    @app.exception_handler(DomainError)
    async def domain_error_handler(request: Request, exc: DomainError):
        status = 404 if isinstance(exc, NotFoundError) else 400
        return JSONResponse(status_code=status, content={"error": str(exc)})

    @app.exception_handler(RequestValidationError)
    async def validation_error_handler(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"error": "malformed request", "detail": exc.errors()})

    @app.get("/v1/keyness")
    def keyness(period: str, n: int = 10, min_freq: int | None = None):
        results = analytics.keyness(period, n=n, min_freq=min_freq)
        return {"period": period, "results": signatures.keyness_to_json(results)}

    @app.get("/v1/tfidf")
    def tfidf(kind: str = "any", n: int = 30, post_kind: str | None = None):
        pk = Kind(post_kind) if post_kind else None
        results = analytics.tfidf(term_kind=kind, n=n, post_kind=pk)
        return {"kind": kind, "results": signatures.tfidf_to_json(results)}

    @app.get("/v1/graph")
    def graph(
        seed: str | None = None,
        min_weight: int | None = Query(default=None),
        depth: int | None = None,
    ):
        return cooccur.to_json(analytics.graph(seed=seed, min_weight=min_weight, depth=depth))

    @app.get("/v1/series/{term}")
    def series(term: str, granularity: str | None = None):
        gran = Granularity(granularity) if granularity else None
        result = analytics.series(term, gran)
        return {
            "term": result.term,
            "granularity": result.granularity.value,
            "points": [
                {"bucket_start": b.start.strftime("%Y-%m-%dT%H:%M:%SZ"), "count": c}
                for b, c in result.points
            ],
        }

    @app.get("/v1/excursions")
    def excursions(term: str | None = None, granularity: str | None = None):
        gran = Granularity(granularity) if granularity else None
        found = analytics.excursions(term, gran)
        return {
            "excursions": [
                {
                    "term": e.term,
                    "bucket_start": e.bucket.start.strftime("%Y-%m-%dT%H:%M:%SZ"),
                    "count": e.count,
                    "baseline": e.baseline_mean,
                    "ratio": e.ratio if e.baseline_mean > 0 else None,
                    "rule": e.rule_fired.value,
                }
                for e in found
            ]
        }

    @app.get("/v1/watchlist")
    def get_watchlist():
        watchlist = store.watchlist()
        return {
            "entries": [
                {
                    "term": e.term,
                    "granularity": e.granularity.value,
                    "added_by": e.added_by,
                    "added_at": e.added_at.strftime("%Y-%m-%dT%H:%M:%SZ"),
                    "active": e.active,
                }
                for e in watchlist.entries
            ]
        }

    @app.post("/v1/watchlist")
    def post_watchlist(request: WatchlistRequest):
        with write_lock:
            updated = watchlist_update(
                store.watchlist(),
                request.action,
                request.term,
                Granularity(request.granularity),
                request.actor,
            )
            store.save_watchlist(updated)
        return {"ok": True, "revision": store.revision}

    @app.post("/v1/ingest")
    async def ingest(request: Request):
        body = (await request.body()).decode("utf-8")
        with write_lock:
            summary = store.ingest_lines(body.splitlines())
        return summary.as_dict()

    @app.get("/v1/audit/tally")
    def audit_tally(bot: str, format: str = "json"):
        report = analytics.audit_tally(bot)
        if format == "csv":
            return JSONResponse(content={"csv": tally_to_csv(report)})
        return {
            "bot": report.bot_name,
            "denominator": report.denominator,
            "counts": report.counts,
        }

    @app.post("/v1/audit/labels")
    def post_labels(request: LabelsRequest):
        try:
            values = [LabelValue(v) for v in request.labels]
        except ValueError as exc:
            raise DomainError(f"unknown label: {exc}") from exc
        known = {p.response.id for p in store.pairs()}
        if request.pair_id not in known:
            raise NotFoundError(f"no pair with id {request.pair_id!r}")
        with write_lock:
            store.set_manual_labels(request.pair_id, values)
        return {"ok": True, "revision": store.revision}

    return app
