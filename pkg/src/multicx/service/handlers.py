"""Pure request -> response handlers; the FastAPI app and the CLI both call
these, so the two surfaces cannot drift apart."""

from ..cnalgebra import (check_dg_identities, extend_scalars, restrict_scalars,
                         truncate_left_halfplane, truncate_upper_halfplane)
from ..docs import parse_document, serialize
from ..errors import ParseError, WindowTooSmall
from ..fields import field_from_name
from ..graded import INF, Window
from ..modelcat import (LiftingProblem, cone, cone_infinity, is_fibration,
                        is_trivial_fibration, path_object, solve_lift)
from ..multicomplex import (MCMorphism, Multicomplex, direct_sum, pushout,
                            tensor_product, validate_morphism,
                            validate_multicomplex)
from ..represent import bw_object, disk, zw_infinity_object, zw_object
from ..spectral import (compute_page, induced_page_map, is_er_quasi_iso,
                        relevant_bidegrees)
from . import schemas as S


def _parse_n(text):
    if text == "inf":
        return INF
    try:
        n = int(text)
    except ValueError:
        raise ParseError(f"bad bound {text!r}")
    if n < 1:
        raise ParseError(f"bad bound {text!r}")
    return n


def _need_multicomplex(doc):
    obj = parse_document(doc)
    if not isinstance(obj, Multicomplex):
        raise ParseError("expected a multicomplex document")
    return obj


def _need_morphism(doc):
    obj = parse_document(doc)
    if not isinstance(obj, MCMorphism):
        raise ParseError("expected a morphism document")
    return obj


def handle_validate(req: S.ValidateRequest) -> S.ValidateResponse:
    obj = parse_document(req.document, validate=False)
    if isinstance(obj, MCMorphism):
        reports = [validate_multicomplex(obj.source),
                   validate_multicomplex(obj.target),
                   validate_morphism(obj)]
        violations = [v for rep in reports for v in rep.violations]
        checked = sum(rep.checked for rep in reports)
        kind = "morphism"
    else:
        rep = validate_multicomplex(obj)
        violations, checked, kind = list(rep.violations), rep.checked, "multicomplex"
    return S.ValidateResponse(
        ok=not violations, kind=kind, checked=checked,
        violations=[S.ViolationOut(l=v.l, p=v.bidegree[0], q=v.bidegree[1])
                    for v in violations])


def handle_page(req: S.PageRequest) -> S.PageResponse:
    A = _need_multicomplex(req.document)
    entries = []
    if req.at is not None:
        ats = [tuple(req.at)]
    else:
        ats = relevant_bidegrees(A, A, req.r)
    for at in ats:
        d = compute_page(A, req.r, at, req.method).dim
        if d or req.at is not None:
            entries.append(S.PageEntry(p=at[0], q=at[1], dim=d))
    entries.sort(key=lambda e: (-e.q, e.p))
    return S.PageResponse(r=req.r, method=req.method, entries=entries)


def handle_pagemap(req: S.PageMapRequest) -> S.PageMapResponse:
    fm = _need_morphism(req.document)
    pm = induced_page_map(fm, req.r, tuple(req.at), req.method)
    field = fm.field
    return S.PageMapResponse(
        r=req.r, at=tuple(req.at), source_dim=pm.source.dim,
        target_dim=pm.target.dim,
        matrix=[[field.to_text(v) for v in row] for row in pm.matrix.rows],
        iso=pm.is_iso, surjective=pm.is_surjective)


def handle_weq(req: S.WeqRequest) -> S.PredicateResponse:
    fm = _need_morphism(req.document)
    ok, failing = is_er_quasi_iso(fm, req.r, skip_uncomputable=True)
    return S.PredicateResponse(result=ok, failing=failing)


def handle_fib(req: S.FibRequest) -> S.PredicateResponse:
    fm = _need_morphism(req.document)
    if req.trivial:
        ok, failing = is_trivial_fibration(fm, req.r, req.style)
    else:
        ok, failing = is_fibration(fm, req.r, req.style)
    return S.PredicateResponse(result=ok, failing=failing)


def handle_lift(req: S.LiftRequest) -> S.LiftResponse:
    prob = LiftingProblem(_need_morphism(req.i), _need_morphism(req.p),
                          _need_morphism(req.top), _need_morphism(req.bottom))
    res = solve_lift(prob)
    return S.LiftResponse(
        exists=res.exists,
        lift=serialize(res.lift) if res.exists else None,
        certificate=res.certificate)


def handle_build(req: S.BuildRequest) -> S.BuildResponse:
    field = field_from_name(req.field)
    n = _parse_n(req.n)
    kind = req.kind
    window = Window(*req.window) if req.window is not None else None
    if kind in ("disk", "zw", "bw", "zwinf") and window is None:
        raise WindowTooSmall(
            "a window is required for infinite-support builds "
            "(--window pmin,pmax,qmin,qmax)")
    meta = {}
    if kind == "disk":
        obj = disk(field, n, req.p, req.q, window).mc
    elif kind == "zw":
        obj = zw_object(field, n, req.r, req.p, req.q, window).mc
    elif kind == "bw":
        obj = bw_object(field, n, req.r, req.p, req.q, window).mc
    elif kind == "zwinf":
        real, proj, stage = zw_infinity_object(field, n, req.p, req.q, window,
                                               req.s_max)
        obj = real.mc
        meta["stable_stage"] = stage
        meta["projection"] = serialize(proj)
    elif kind == "cone":
        obj = cone(field, req.r, n)
    elif kind == "coneinf":
        obj, h = cone_infinity(field, req.r)
        meta["homotopy_blocks"] = {
            str(m): {f"{bd}": [[field.to_text(v) for v in row] for row in blk.rows]
                     for bd, blk in blocks.items()}
            for m, blocks in h.maps.items()}
    elif kind == "path":
        if not req.document:
            raise ParseError("path build needs an input multicomplex document")
        A = _need_multicomplex(req.document)
        po = path_object(A, req.r)
        obj = po.obj
        meta["into"] = serialize(po.into)
        meta["onto"] = serialize(po.onto)
    else:
        raise ParseError(f"unknown build kind {kind!r}")
    return S.BuildResponse(document=serialize(obj), meta=meta)


def handle_tensor(req: S.BinaryOpRequest) -> S.DocumentResponse:
    A = _need_multicomplex(req.left)
    B = _need_multicomplex(req.right)
    return S.DocumentResponse(document=serialize(tensor_product(A, B)))


def handle_dsum(req: S.BinaryOpRequest) -> S.DocumentResponse:
    A = _need_multicomplex(req.left)
    B = _need_multicomplex(req.right)
    return S.DocumentResponse(document=serialize(direct_sum(A, B).sum))


def handle_pushout(req: S.PushoutRequest) -> S.PushoutResponse:
    fm = _need_morphism(req.f)
    gm = _need_morphism(req.g)
    po = pushout(fm, gm)
    return S.PushoutResponse(document=serialize(po.obj),
                             leg_left=serialize(po.leg_b),
                             leg_right=serialize(po.leg_c))


def handle_extend(req: S.ExtendRequest) -> S.DocumentResponse:
    A = _need_multicomplex(req.document)
    Q, _unit = extend_scalars(A, _parse_n(req.to))
    return S.DocumentResponse(document=serialize(Q))


def handle_restrict(req: S.ExtendRequest) -> S.DocumentResponse:
    A = _need_multicomplex(req.document)
    return S.DocumentResponse(document=serialize(restrict_scalars(A, _parse_n(req.to))))


def handle_truncate(req: S.TruncateRequest) -> S.DocumentResponse:
    A = _need_multicomplex(req.document)
    if req.mode == "left":
        Q, _ = truncate_left_halfplane(A)
    elif req.mode == "upper":
        Q, _ = truncate_upper_halfplane(A)
    else:
        raise ParseError(f"unknown truncation mode {req.mode!r}")
    return S.DocumentResponse(document=serialize(Q))


def handle_cn_check(req: S.CnCheckRequest) -> S.CnCheckResponse:
    field = field_from_name(req.field)
    rep = check_dg_identities(field, req.max_weight)
    return S.CnCheckResponse(
        ok=rep["ok"], words_checked=rep["words_checked"],
        max_weight=rep["max_weight"],
        failures=[(tag, list(w)) for tag, w in rep["failures"]])
