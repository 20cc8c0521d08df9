"""Line-oriented JSON document format for multicomplexes and morphisms.

A document is one JSON object per line.  The first line is the header:

    {"format": "multicx/1", "kind": "multicomplex", "field": "gf2", "n": 2}

with n either an integer or the string "inf".  Body lines carry a tag
"t".  For kind "multicomplex":

    {"t": "support", "p": 0, "q": 0, "dim": 2}
    {"t": "map", "i": 1, "p": 0, "q": 0, "row": 0, "col": 1, "v": "3"}
    {"t": "window", "pmin": -4, "pmax": 0, "qmin": -4, "qmax": 0}

For kind "morphism" the same support/map lines appear with an extra
"obj" field ("source" or "target"), plus morphism blocks:

    {"t": "block", "p": 0, "q": 0, "row": 0, "col": 0, "v": "1"}

Scalars are strings: integers for prime fields, "a/b" (or "a") for the
rationals.  Serialization is canonical (sorted, zero entries omitted),
so parse . serialize is the identity on canonical documents.
"""

import json

from .errors import ParseError, ValidationError
from .fields import field_from_name
from .graded import INF, Window, bd_add, shift_of
from .linalg import Matrix
from .multicomplex import (MCMorphism, Multicomplex, validate_morphism,
                           validate_multicomplex)

FORMAT = "multicx/1"


def _n_to_json(n):
    return "inf" if n == INF else n


def _n_from_json(v, line):
    if v == "inf":
        return INF
    if isinstance(v, int) and v >= 1:
        return v
    raise ParseError(f"bad bound {v!r}", line)


def serialize_multicomplex(A):
    lines = [json.dumps({"format": FORMAT, "kind": "multicomplex",
                         "field": A.field.name, "n": _n_to_json(A.n)})]
    if A.window is not None:
        w = A.window
        lines.append(json.dumps({"t": "window", "pmin": w.pmin, "pmax": w.pmax,
                                 "qmin": w.qmin, "qmax": w.qmax}))
    for (p, q) in sorted(A.dims):
        lines.append(json.dumps({"t": "support", "p": p, "q": q,
                                 "dim": A.dims[(p, q)]}))
    for i in sorted(A.maps):
        for (p, q) in sorted(A.maps[i]):
            m = A.maps[i][(p, q)]
            for r, row in enumerate(m.rows):
                for c, v in enumerate(row):
                    if v != A.field.zero:
                        lines.append(json.dumps(
                            {"t": "map", "i": i, "p": p, "q": q, "row": r,
                             "col": c, "v": A.field.to_text(v)}))
    return "\n".join(lines) + "\n"


def serialize_morphism(fm):
    A, B = fm.source, fm.target
    lines = [json.dumps({"format": FORMAT, "kind": "morphism",
                         "field": A.field.name, "n": _n_to_json(A.n)})]

    def emit_obj(obj, tag):
        out = []
        if obj.window is not None:
            w = obj.window
            out.append(json.dumps({"t": "window", "obj": tag, "pmin": w.pmin,
                                   "pmax": w.pmax, "qmin": w.qmin, "qmax": w.qmax}))
        for (p, q) in sorted(obj.dims):
            out.append(json.dumps({"t": "support", "obj": tag, "p": p, "q": q,
                                   "dim": obj.dims[(p, q)]}))
        for i in sorted(obj.maps):
            for (p, q) in sorted(obj.maps[i]):
                m = obj.maps[i][(p, q)]
                for r, row in enumerate(m.rows):
                    for c, v in enumerate(row):
                        if v != obj.field.zero:
                            out.append(json.dumps(
                                {"t": "map", "obj": tag, "i": i, "p": p, "q": q,
                                 "row": r, "col": c, "v": obj.field.to_text(v)}))
        return out

    lines.extend(emit_obj(A, "source"))
    lines.extend(emit_obj(B, "target"))
    for (p, q) in sorted(fm.blocks):
        m = fm.blocks[(p, q)]
        for r, row in enumerate(m.rows):
            for c, v in enumerate(row):
                if v != A.field.zero:
                    lines.append(json.dumps({"t": "block", "p": p, "q": q,
                                             "row": r, "col": c,
                                             "v": A.field.to_text(v)}))
    return "\n".join(lines) + "\n"


def _collect(records, field):
    dims = {}
    window = None
    entries = {}
    for rec, ln in records:
        t = rec.get("t")
        if t == "support":
            dims[(rec["p"], rec["q"])] = rec["dim"]
        elif t == "window":
            window = Window(rec["pmin"], rec["pmax"], rec["qmin"], rec["qmax"])
        elif t == "map":
            key = (rec["i"], (rec["p"], rec["q"]))
            entries.setdefault(key, {})[(rec["row"], rec["col"])] = \
                field.parse(str(rec["v"]))
        else:
            raise ParseError(f"unknown record tag {t!r}", ln)
    return dims, window, entries


def _build_maps(dims, entries, field):
    maps = {}
    for (i, bd), cells in entries.items():
        tgt = bd_add(bd, shift_of(i))
        nr, nc = dims.get(tgt, 0), dims.get(bd, 0)
        for (r, c) in cells:
            if r >= nr or c >= nc:
                raise ParseError(
                    f"map entry out of range at d_{i} {bd}: ({r},{c}) vs {nr}x{nc}")
        maps.setdefault(i, {})[bd] = Matrix.from_entries(field, nr, nc, cells)
    return maps


def parse_document(text, validate=True):
    """Parse a document into a Multicomplex or MCMorphism (validated)."""
    lines = [ln for ln in text.splitlines()]
    if not lines:
        raise ParseError("empty document", 1)
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as e:
        raise ParseError(f"bad JSON: {e.msg}", 1)
    if header.get("format") != FORMAT:
        raise ParseError(f"unknown format {header.get('format')!r}", 1)
    field = field_from_name(header.get("field", "gf2"))
    n = _n_from_json(header.get("n", "inf"), 1)
    kind = header.get("kind")
    records = []
    for idx, ln in enumerate(lines[1:], start=2):
        if not ln.strip():
            continue
        try:
            records.append((json.loads(ln), idx))
        except json.JSONDecodeError as e:
            raise ParseError(f"bad JSON: {e.msg}", idx)

    if kind == "multicomplex":
        dims, window, entries = _collect(records, field)
        A = Multicomplex(field, n, dims, _build_maps(dims, entries, field),
                         window)
        if validate:
            report = validate_multicomplex(A)
            if not report.ok:
                v = report.violations[0]
                raise ValidationError(
                    f"relation failure at l={v.l}, bidegree {v.bidegree}",
                    report.violations)
        return A

    if kind == "morphism":
        src_recs = [(r, ln) for r, ln in records if r.get("obj") == "source"]
        tgt_recs = [(r, ln) for r, ln in records if r.get("obj") == "target"]
        blk_recs = [(r, ln) for r, ln in records
                    if r.get("t") == "block"]
        sdims, swin, sentries = _collect(src_recs, field)
        tdims, twin, tentries = _collect(tgt_recs, field)
        A = Multicomplex(field, n, sdims, _build_maps(sdims, sentries, field), swin)
        B = Multicomplex(field, n, tdims, _build_maps(tdims, tentries, field), twin)
        blocks = {}
        cells_by_bd = {}
        for rec, ln in blk_recs:
            bd = (rec["p"], rec["q"])
            cells_by_bd.setdefault(bd, {})[(rec["row"], rec["col"])] = \
                field.parse(str(rec["v"]))
        for bd, cells in cells_by_bd.items():
            nr, nc = B.dims.get(bd, 0), A.dims.get(bd, 0)
            for (r, c) in cells:
                if r >= nr or c >= nc:
                    raise ParseError(
                        f"block entry out of range at {bd}: ({r},{c}) vs {nr}x{nc}")
            blocks[bd] = Matrix.from_entries(field, nr, nc, cells)
        fm = MCMorphism(A, B, blocks)
        if validate:
            for obj, name in ((A, "source"), (B, "target")):
                report = validate_multicomplex(obj)
                if not report.ok:
                    v = report.violations[0]
                    raise ValidationError(
                        f"{name} relation failure at l={v.l}, bidegree {v.bidegree}",
                        report.violations)
            report = validate_morphism(fm)
            if not report.ok:
                v = report.violations[0]
                raise ValidationError(
                    f"morphism fails to commute with d_{v.l} at {v.bidegree}",
                    report.violations)
        return fm

    raise ParseError(f"unknown document kind {kind!r}", 1)


def serialize(obj):
    if isinstance(obj, MCMorphism):
        return serialize_morphism(obj)
    return serialize_multicomplex(obj)
