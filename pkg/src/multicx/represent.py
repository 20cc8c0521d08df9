"""Representing objects: free disks, the recursive tuple representers built
from them by iterated pushouts, their boundary companions, and the Yoneda
correspondence between morphisms out of them and witness tuples.

Every realized object keeps, per bidegree, a spanning table of raw
entries (generator, d_0-exponent, word in d_1, d_2, ...) together with
the coordinates of its canonical basis over that table.  This is what
lets a witness tuple in any target be turned into an honest morphism:
each basis vector is a combination of words applied to generators, and
words act on the target through its own structure maps.
"""

from dataclasses import dataclass, field as dc_field

from . import linalg
from .errors import InvalidWitness, NotStabilized, WindowTooSmall
from .graded import INF, Window, bd_add, shift_of
from .linalg import Matrix
from .multicomplex import (MCMorphism, Multicomplex, compose, direct_sum,
                           pushout, single_cell, zero_morphism,
                           zero_multicomplex)
from .spectral import w_on_entries, witness_residuals
from .words import CnSpace

_SPACES = {}


def cn_space(field, n):
    key = (field.name, n)
    if key not in _SPACES:
        _SPACES[key] = CnSpace(field, n)
    return _SPACES[key]


@dataclass
class RealizedObject:
    kind: str
    n: object
    r: int
    at: tuple
    window: Window
    mc: Multicomplex
    generators: dict          # name -> (bidegree, vector in mc basis)
    gen_order: tuple          # generator names in tuple order
    raw_basis: dict           # bidegree -> tuple of (gen, eps, word)
    coords: dict              # bidegree -> Matrix, mc basis over raw entries
    summands: dict = dc_field(default_factory=dict)  # name -> (incl, proj)

    def raw_at(self, bd):
        return self.raw_basis.get(bd, ())

    def coords_at(self, bd):
        m = self.coords.get(bd)
        if m is not None:
            return m
        return Matrix.zero(self.mc.field, self.mc.dims.get(bd, 0),
                           len(self.raw_at(bd)))


def eval_word(T, word, eps, vec, src_bd):
    """Apply d_0^eps then the word letters (innermost first) to vec inside T."""
    f = T.field
    order = ([0] if eps else []) + list(reversed(word))
    final = src_bd
    for letter in order:
        final = bd_add(final, shift_of(letter))
    cur, bd = tuple(vec), src_bd
    for letter in order:
        if not any(v != f.zero for v in cur):
            return linalg.zero_vector(f, T.dim_at(final))
        cur = T.block(letter, bd).apply(cur)
        bd = bd_add(bd, shift_of(letter))
    return cur


def realized_morphism(obj, target, images):
    """The unique structure-compatible map sending each generator of a
    realized object to the prescribed element of the target."""
    f = obj.mc.field
    blocks = {}
    for bd, d in obj.mc.dims.items():
        raws = obj.raw_at(bd)
        co = obj.coords_at(bd)
        cache = {}
        cols = []
        for k in range(d):
            acc = list(linalg.zero_vector(f, target.dim_at(bd)))
            for coeff, entry in zip(co.rows[k], raws):
                if coeff == f.zero:
                    continue
                if entry not in cache:
                    gname, eps, word = entry
                    gbd = obj.generators[gname][0]
                    cache[entry] = eval_word(target, word, eps,
                                             images[gname], gbd)
                img = cache[entry]
                for t, v in enumerate(img):
                    if v != f.zero:
                        acc[t] = f.add(acc[t], f.mul(coeff, v))
            cols.append(tuple(acc))
        m = Matrix.from_rows(f, cols).transpose() if cols else \
            Matrix.zero(f, target.dim_at(bd), 0)
        if not m.is_zero():
            blocks[bd] = m
    return MCMorphism(obj.mc, target, blocks)


def _word_reach(n, window):
    # letters larger than the window width can never map two in-window
    # bidegrees to each other
    width = window.pmax - window.pmin
    return width if n == INF else min(n - 1, width)


# -- disks -------------------------------------------------------------------

def disk(field, n, p, q, window, gen_name="x"):
    """The free object on one generator at (p, q), realized on the window.

    Component by component this is two copies of the word algebra (one
    for the generator, one for its vertical image); for finite bounds
    the word-algebra components already carry the relation quotient, so
    the listed normal-form spanning entries need not be independent.
    """
    if not window.contains((p, q)):
        raise WindowTooSmall(f"window must contain the generator bidegree {(p, q)}",
                             needed=(p, q))
    cn = cn_space(field, n)
    f = field
    dims, raw, coords = {}, {}, {}
    comps = {}
    for bd in window.iter_bidegrees():
        cx = (bd[0] - p, bd[1] - q)
        cdx = (cx[0], cx[1] - 1)
        compx = cn.component(*cx)
        compdx = cn.component(*cdx)
        comps[bd] = (cx, cdx, compx, compdx)
        d = compx.dim + compdx.dim
        raw[bd] = tuple((gen_name, 0, w) for w in compx.words) + \
            tuple((gen_name, 1, w) for w in compdx.words)
        coords[bd] = linalg.block_diag(f, [compx.sub.reps, compdx.sub.reps])
        if d:
            dims[bd] = d
    maps = {}
    letters = range(1, _word_reach(n, window) + 1)
    for bd, (cx, cdx, compx, compdx) in comps.items():
        if dims.get(bd, 0) == 0:
            continue
        # vertical map: differential on each word copy plus the shift of
        # the generator copy onto the d_0 x copy with the Koszul sign
        tgt = bd_add(bd, (0, 1))
        if window.contains(tgt):
            dx = cn.delta_matrix(*cx)
            ddx = cn.delta_matrix(*cdx)
            sign = f.one if (cx[1] % 2 == 0) else f.neg(f.one)
            entries = {}
            for i2 in range(dx.nrows):
                for j2 in range(dx.ncols):
                    v = dx.rows[i2][j2]
                    if v != f.zero:
                        entries[(i2, j2)] = v
            for k in range(compx.dim):
                entries[(dx.nrows + k, k)] = sign
            for i2 in range(ddx.nrows):
                for j2 in range(ddx.ncols):
                    v = ddx.rows[i2][j2]
                    if v != f.zero:
                        entries[(dx.nrows + i2, dx.ncols + j2)] = v
            m = Matrix.from_entries(f, dims.get(tgt, 0), dims[bd], entries)
            if not m.is_zero():
                maps.setdefault(0, {})[bd] = m
        for i in letters:
            tgt = bd_add(bd, shift_of(i))
            if not window.contains(tgt) or dims.get(tgt, 0) == 0:
                continue
            mx = cn.left_mult_matrix(i, *cx)
            mdx = cn.left_mult_matrix(i, *cdx)
            m = linalg.block_diag(f, [mx, mdx])
            if not m.is_zero():
                maps.setdefault(i, {})[bd] = m
    mc = Multicomplex(f, n, dims, maps, window)
    gen_vec = linalg.unit_vector(f, dims[(p, q)], 0)
    return RealizedObject("disk", n, 0, (p, q), window, mc,
                          {gen_name: ((p, q), gen_vec)}, (gen_name,),
                          raw, coords)


# -- threading presentations through colimits --------------------------------

def _thread_pushout(po, left, right):
    f = po.obj.field
    raw, coords = {}, {}
    for bd in po.obj.dims:
        raws = left.raw_at(bd) + right.raw_at(bd)
        raw[bd] = raws
        dB = left.mc.dims.get(bd, 0)
        rows = []
        for rep in po._subs[bd].reps.rows:
            vb = linalg.vecmat(f, rep[:dB], left.coords_at(bd))
            vc = linalg.vecmat(f, rep[dB:], right.coords_at(bd))
            rows.append(vb + vc)
        coords[bd] = Matrix(f, len(rows), len(raws), rows)
    return raw, coords


def _thread_sum(ds, left, right):
    f = ds.sum.field
    raw, coords = {}, {}
    for bd in ds.sum.dims:
        raw[bd] = left.raw_at(bd) + right.raw_at(bd)
        coords[bd] = linalg.block_diag(
            f, [left.coords_at(bd), right.coords_at(bd)])
    return raw, coords


def _map_generators(gens, order, leg):
    out = {}
    for name in order:
        bd, vec = gens[name]
        out[name] = (bd, leg.apply(bd, vec))
    return out


# -- the recursive representers ----------------------------------------------

def _check_zw_window(window, r, p, q):
    need = []
    for j in range(max(r, 1)):
        need.extend([(p - j, q - j), (p - j, q - j + 1)])
    missing = [bd for bd in need if not window.contains(bd)]
    if missing:
        raise WindowTooSmall(
            f"window must cover the attachment strip; missing {missing}",
            needed=missing[0])


def _restrict_realized(obj, window):
    from .multicomplex import restrict_to_window
    mc = restrict_to_window(obj.mc, window)
    raw = {bd: entries for bd, entries in obj.raw_basis.items()
           if window.contains(bd)}
    coords = {bd: m for bd, m in obj.coords.items() if window.contains(bd)}
    return RealizedObject(obj.kind, obj.n, obj.r, obj.at, mc.window, mc,
                          obj.generators, obj.gen_order, raw, coords,
                          obj.summands)


def zw_object(field, n, r, p, q, window, prefix="a"):
    """The stage-r tuple representer at (p, q), built by r pushouts.

    Stage s glues a fresh disk along the relation
    d_0 a_{s-1} = sum_{i=1}^{s-1} (-1)^(i+1) d_i a_{s-1-i}; the recorded
    generator handles a_0 ... a_{r-1} realize the tautological witness.
    The gluing walks one row above each attached disk, so stages are
    built on a window inflated upward by one and restricted at the end.
    """
    _check_zw_window(window, r, p, q)
    user_window = window
    window = Window(window.pmin, window.pmax, window.qmin, window.qmax + 1)
    f = field
    obj = disk(field, n, p, q, window, gen_name=f"{prefix}0")
    obj = RealizedObject("zw", n, 0, (p, q), window, obj.mc, obj.generators,
                         obj.gen_order, obj.raw_basis, obj.coords)
    for s in range(1, r + 1):
        corner_at = (p - s + 1, q - s + 2)
        corner_obj = disk(field, n, *corner_at, window, gen_name="x")
        if s == 1:
            gbd, gvec = obj.generators[f"{prefix}0"]
            img_g = obj.mc.block(0, gbd).apply(gvec)
            fmap = realized_morphism(corner_obj, obj.mc, {"x": img_g})
            gmap = zero_morphism(corner_obj.mc, zero_multicomplex(f, n))
            po = pushout(fmap, gmap)
            left, right = obj, _zero_realized(f, n, window)
            new_gens = _map_generators(obj.generators, obj.gen_order, po.leg_b)
            order = obj.gen_order
        else:
            new_disk = disk(field, n, p - s + 1, q - s + 1, window,
                            gen_name=f"{prefix}{s - 1}")
            gbd, gvec = new_disk.generators[f"{prefix}{s - 1}"]
            img_f = new_disk.mc.block(0, gbd).apply(gvec)
            acc = list(linalg.zero_vector(f, obj.mc.dim_at(corner_at)))
            for i in range(1, s):
                name = f"{prefix}{s - 1 - i}"
                bdi, vi = obj.generators[name]
                img = obj.mc.block(i, bdi).apply(vi)
                for t, v in enumerate(img):
                    if v != f.zero:
                        acc[t] = f.add(acc[t], v) if i % 2 == 1 else f.sub(acc[t], v)
            fmap = realized_morphism(corner_obj, new_disk.mc, {"x": img_f})
            gmap = realized_morphism(corner_obj, obj.mc, {"x": tuple(acc)})
            po = pushout(fmap, gmap)
            left, right = new_disk, obj
            new_gens = _map_generators(obj.generators, obj.gen_order, po.leg_c)
            new_gens.update(_map_generators(new_disk.generators,
                                            new_disk.gen_order, po.leg_b))
            order = obj.gen_order + new_disk.gen_order
        raw, coords = _thread_pushout(po, left, right)
        obj = RealizedObject("zw", n, s, (p, q), window, po.obj, new_gens,
                             order, raw, coords)
    return _restrict_realized(obj, user_window)


def _zero_realized(field, n, window):
    return RealizedObject("zero", n, 0, (0, 0), window,
                          zero_multicomplex(field, n), {}, (), {}, {})


def bw_object(field, n, r, p, q, window):
    """The boundary companion feeding the stage-r representer at (p, q);
    it lives at (p, q-1) and is a three-term direct sum for r >= 2."""
    f = field
    if r == 0:
        return _zero_realized(f, n, window)
    if r == 1:
        d = disk(field, n, p, q - 1, window, gen_name="a")
        obj = RealizedObject("bw", n, 1, (p, q - 1), window, d.mc,
                             d.generators, d.gen_order, d.raw_basis, d.coords)
        return obj
    zb = zw_object(field, n, r - 1, p + r - 1, q + r - 2, window, prefix="b")
    dk = disk(field, n, p, q - 1, window, gen_name="a")
    zc = zw_object(field, n, r - 1, p - 1, q - 1, window, prefix="c")
    ds1 = direct_sum(zb.mc, dk.mc)
    mid = RealizedObject("bw", n, r, (p, q - 1), window, ds1.sum,
                         {**_map_generators(zb.generators, zb.gen_order, ds1.incl_a),
                          **_map_generators(dk.generators, dk.gen_order, ds1.incl_b)},
                         zb.gen_order + dk.gen_order,
                         *_thread_sum(ds1, zb, dk))
    ds2 = direct_sum(mid.mc, zc.mc)
    obj = RealizedObject("bw", n, r, (p, q - 1), window, ds2.sum,
                         {**_map_generators(mid.generators, mid.gen_order, ds2.incl_a),
                          **_map_generators(zc.generators, zc.gen_order, ds2.incl_b)},
                         mid.gen_order + zc.gen_order,
                         *_thread_sum(ds2, mid, zc))
    obj.summands = {
        "b": (compose(ds1.incl_a, ds2.incl_a), compose(ds2.proj_a, ds1.proj_a)),
        "mid": (compose(ds1.incl_b, ds2.incl_a), compose(ds2.proj_a, ds1.proj_b)),
        "c": (ds2.incl_b, ds2.proj_b),
    }
    return obj


# -- the Yoneda correspondence ------------------------------------------------

def morphism_from_witness(obj, target, entries):
    """Morphism out of a stage-r representer classified by a witness tuple."""
    entries = [tuple(e) for e in entries]
    expected = obj.r if obj.r >= 1 else 1
    if len(entries) != expected:
        raise InvalidWitness(f"expected {expected} entries, got {len(entries)}")
    if obj.r >= 1:
        res = witness_residuals(target, obj.at, entries)
        f = target.field
        if any(any(v != f.zero for v in vec) for vec in res):
            raise InvalidWitness("entries fail the staircase relations")
    images = {name: entries[j] for j, name in enumerate(obj.gen_order)}
    return realized_morphism(obj, target, images)


def witness_of_morphism(obj, fm):
    """Evaluate a morphism at the generator handles: the inverse of
    morphism_from_witness."""
    out = []
    for name in obj.gen_order:
        bd, vec = obj.generators[name]
        out.append(fm.apply(bd, vec))
    return out


def generating_morphism_iota(field, n, r, p, q, window):
    """The universal comparison from the stage-r representer into its
    boundary companion (classified by the w map)."""
    zw = zw_object(field, n, r, p, q, window)
    bw = bw_object(field, n, r, p, q, window)
    if r == 0:
        return zero_morphism(zw.mc, bw.mc), zw, bw
    b_entries = [bw.generators[f"b{t}"][1] for t in range(r - 1)] if r >= 2 else []
    a_vec = bw.generators["a"][1]
    c_entries = [bw.generators[f"c{t}"][1] for t in range(r - 1)] if r >= 2 else []
    entries = w_on_entries(bw.mc, r, (p, q), b_entries, a_vec, c_entries)
    return morphism_from_witness(zw, bw.mc, entries), zw, bw


# -- the colimit over stages ---------------------------------------------------

def zw_infinity_object(field, n, p, q, window, s_max=None):
    """Stable window value of the chain of stage representers, plus the
    projection onto the single cell at (p, q)."""
    # build on a margin so stages attaching just below or left of the
    # requested box still deposit their in-box cells before stabilization
    window = Window(window.pmin - 2, window.pmax, window.qmin - 2, window.qmax)
    if s_max is None:
        s_max = (p - window.pmin) + 2

    def finish(stage_obj):
        K = single_cell(field, p, q, n)
        entries = [linalg.unit_vector(field, 1, 0)] + \
            [() for _ in range(max(stage_obj.r, 1) - 1)]
        proj = morphism_from_witness(stage_obj, K, entries)
        obj = RealizedObject("zw_infinity", n, stage_obj.r, (p, q), window,
                             stage_obj.mc, stage_obj.generators,
                             stage_obj.gen_order, stage_obj.raw_basis,
                             stage_obj.coords)
        return obj, proj, stage_obj.r

    prev = None
    for s in range(0, s_max + 1):
        # once the attached cell falls below or left of the window, every
        # later stage only adds material outside it
        if prev is not None and (p - s + 1 < window.pmin
                                 or q - s + 2 < window.qmin):
            return finish(prev)
        try:
            cur = zw_object(field, n, s, p, q, window)
        except WindowTooSmall:
            if prev is not None:
                return finish(prev)
            raise
        if prev is not None and prev.mc.dims == cur.mc.dims \
                and prev.mc.maps == cur.mc.maps:
            return finish(prev)
        prev = cur
    raise NotStabilized(
        f"window content still changing after stage {s_max}; enlarge s_max "
        f"or note that the window cuts the attachment strip")
