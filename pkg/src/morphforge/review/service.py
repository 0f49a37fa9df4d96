"""HTTP review service for the manual morph-inspection stage.

Endpoints (JSON unless noted):
    GET  /candidates?status=&page=&page_size=   paginated review queue
    GET  /image/{id}                            PNG/JPEG bytes, read-only
    POST /decision                              {attack_id, verdict, reason?, reviewer?}
    GET  /manifest/summary                      status counts

Single-operator tool: binds loopback by default, no auth.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, HTTPException, Query
from fastapi.responses import FileResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from ..errors import InvalidTransition, UnknownAttackId
from .store import ReviewDecision, ReviewStore

MEDIA_TYPES = {".png": "image/png", ".jpg": "image/jpeg", ".jpeg": "image/jpeg", ".bmp": "image/bmp"}


class DecisionRequest(BaseModel):
    attack_id: str
    verdict: str
    reason: str | None = None
    reviewer: str = "anonymous"


def create_app(store: ReviewStore, ui_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="morphforge review service")

    @app.get("/candidates")
    def candidates(
        status: str | None = None,
        page: int = Query(default=0, ge=0),
        page_size: int = Query(default=25, ge=1, le=500),
    ):
        try:
            records = store.candidates(status)
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        start = page * page_size
        items = records[start : start + page_size]
        return {
            "items": [
                {
                    **record,
                    "morph_url": f"/image/{record['attack_id']}",
                    "source_a_url": f"/image/{record['key_id']}",
                    "source_b_url": f"/image/{record['partner_id']}",
                }
                for record in items
            ],
            "page": page,
            "page_size": page_size,
            "total": len(records),
            "pages": (len(records) + page_size - 1) // page_size,
        }

    @app.get("/image/{image_id}")
    def image(image_id: str):
        try:
            path = store.image_path(image_id)
        except UnknownAttackId:
            raise HTTPException(status_code=404, detail=f"no image for id {image_id!r}")
        media = MEDIA_TYPES.get(path.suffix.lower(), "application/octet-stream")
        return FileResponse(path, media_type=media)

    @app.post("/decision")
    def decision(request: DecisionRequest):
        try:
            return store.submit(
                ReviewDecision(
                    attack_id=request.attack_id,
                    verdict=request.verdict,
                    reason=request.reason,
                    reviewer=request.reviewer,
                )
            )
        except UnknownAttackId as exc:
            raise HTTPException(status_code=404, detail=f"unknown attack id {exc}")
        except InvalidTransition as exc:
            raise HTTPException(status_code=409, detail=str(exc))

    @app.get("/manifest/summary")
    def summary():
        return store.summary()

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")
    return app


def serve(
    manifest_path: str | Path,
    host: str = "127.0.0.1",
    port: int = 8765,
    ui_dir: str | Path | None = None,
) -> None:
    import uvicorn

    store = ReviewStore(manifest_path)
    app = create_app(store, ui_dir)
    uvicorn.run(app, host=host, port=port, log_level="info")
