"""FastAPI front end over the corotational-rate handlers."""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import __version__
from . import handlers, schemas


def create_app() -> FastAPI:
    app = FastAPI(title="corotate", version=__version__,
                  description="Corotational rate classification service")

    def _wrap(fn, req):
        try:
            return fn(req)
        except (ValueError, RuntimeError) as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/classify", response_model=schemas.ClassifyResponse)
    def classify(req: schemas.ClassifyRequest):
        return _wrap(handlers.classify_handler, req)

    @app.post("/ztable", response_model=schemas.ZTableResponse)
    def ztable(req: schemas.ZTableRequest):
        return _wrap(handlers.ztable_handler, req)

    @app.post("/sweeps/gbar", response_model=schemas.SweepResponse)
    def gbar_sweep(req: schemas.GbarSweepRequest):
        return _wrap(handlers.gbar_sweep_handler, req)

    @app.post("/sweeps/scale", response_model=schemas.SweepResponse)
    def scale_sweep(req: schemas.ScaleSweepRequest):
        return _wrap(handlers.scale_sweep_handler, req)

    @app.post("/sweeps/pairing", response_model=schemas.PairingSweepResponse)
    def pairing_sweep(req: schemas.PairingSweepRequest):
        return _wrap(handlers.pairing_sweep_handler, req)

    @app.post("/verify", response_model=schemas.VerifyResponse)
    def verify_suite(req: schemas.VerifyRequest):
        return _wrap(handlers.verify_handler, req)

    @app.post("/reports/a44", response_model=schemas.A44ReportResponse)
    def a44(req: schemas.A44ReportRequest):
        return _wrap(handlers.a44_report_handler, req)

    @app.post("/motion/state", response_model=schemas.MotionStateResponse)
    def motion_state(req: schemas.MotionStateRequest):
        return _wrap(handlers.motion_state_handler, req)

    @app.post("/rates/evaluate", response_model=schemas.RateResponse)
    def rate(req: schemas.RateRequest):
        return _wrap(handlers.rate_handler, req)

    return app


app = create_app()
