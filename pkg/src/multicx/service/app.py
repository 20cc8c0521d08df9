"""FastAPI wrapper around the handler layer.

Run with:  uvicorn multicx.service.app:app
"""

from fastapi import FastAPI, HTTPException

from ..errors import (MulticxError, NotStabilized, ParseError, ValidationError,
                      WindowTooSmall)
from . import handlers
from . import schemas as S

app = FastAPI(
    title="multicx",
    description="Exact computations with multicomplexes: spectral-sequence "
                "pages, lifting problems, representing objects, scalar "
                "changes and truncations.",
    version="0.1.0",
)


def _guard(fn, req):
    try:
        return fn(req)
    except (ParseError, ValidationError) as e:
        raise HTTPException(status_code=400, detail=str(e))
    except (WindowTooSmall, NotStabilized) as e:
        raise HTTPException(status_code=422, detail=str(e))
    except MulticxError as e:
        raise HTTPException(status_code=422, detail=str(e))


@app.get("/health")
def health():
    return {"status": "ok"}


@app.post("/validate", response_model=S.ValidateResponse)
def validate(req: S.ValidateRequest):
    return _guard(handlers.handle_validate, req)


@app.post("/page", response_model=S.PageResponse)
def page(req: S.PageRequest):
    return _guard(handlers.handle_page, req)


@app.post("/pagemap", response_model=S.PageMapResponse)
def pagemap(req: S.PageMapRequest):
    return _guard(handlers.handle_pagemap, req)


@app.post("/weq", response_model=S.PredicateResponse)
def weq(req: S.WeqRequest):
    return _guard(handlers.handle_weq, req)


@app.post("/fib", response_model=S.PredicateResponse)
def fib(req: S.FibRequest):
    return _guard(handlers.handle_fib, req)


@app.post("/lift", response_model=S.LiftResponse)
def lift(req: S.LiftRequest):
    return _guard(handlers.handle_lift, req)


@app.post("/build", response_model=S.BuildResponse)
def build(req: S.BuildRequest):
    return _guard(handlers.handle_build, req)


@app.post("/tensor", response_model=S.DocumentResponse)
def tensor(req: S.BinaryOpRequest):
    return _guard(handlers.handle_tensor, req)


@app.post("/dsum", response_model=S.DocumentResponse)
def dsum(req: S.BinaryOpRequest):
    return _guard(handlers.handle_dsum, req)


@app.post("/pushout", response_model=S.PushoutResponse)
def pushout(req: S.PushoutRequest):
    return _guard(handlers.handle_pushout, req)


@app.post("/extend", response_model=S.DocumentResponse)
def extend(req: S.ExtendRequest):
    return _guard(handlers.handle_extend, req)


@app.post("/restrict", response_model=S.DocumentResponse)
def restrict(req: S.ExtendRequest):
    return _guard(handlers.handle_restrict, req)


@app.post("/truncate", response_model=S.DocumentResponse)
def truncate(req: S.TruncateRequest):
    return _guard(handlers.handle_truncate, req)


@app.post("/cn", response_model=S.CnCheckResponse)
def cn(req: S.CnCheckRequest):
    return _guard(handlers.handle_cn_check, req)
