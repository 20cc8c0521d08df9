"""Multicomplexes, strict morphisms and the colimit constructions on them.

A multicomplex carries structure maps d_0, d_1, ... where d_i has bidegree
(-i, 1-i) and for every l >= 0 the alternating sum of the composites
d_i d_j over i + j = l vanishes.  An n-multicomplex additionally has
d_i = 0 for i >= n; n = 2 recovers bicomplexes (with d_0 d_1 = d_1 d_0)
and n = INF places no bound.

Objects are immutable after construction.  A `window` of None means the
object is complete: components outside the recorded support are genuinely
zero.  Otherwise only bidegrees inside the window are known and queries
outside it raise WindowTooSmall.
"""

from dataclasses import dataclass

from . import linalg
from .errors import (FieldMismatch, IllDefined, ShapeMismatch, WindowTooSmall)
from .graded import INF, GradedMap, Window, bd_add, bd_sub, shift_of
from .linalg import Matrix


class Multicomplex:

    def __init__(self, field, n, dims, maps, window=None):
        if n != INF and (not isinstance(n, int) or n < 1):
            raise ValueError(f"bound must be a positive integer or INF, got {n}")
        self.field = field
        self.n = n
        self.window = window
        self.dims = {bd: d for bd, d in dims.items() if d > 0
                     and (window is None or window.contains(bd))}
        self.maps = {}
        for i, blocks in maps.items():
            if n != INF and i >= n:
                raise ShapeMismatch(f"map index {i} not allowed for bound {n}")
            kept = {}
            for bd, m in blocks.items():
                tgt = bd_add(bd, shift_of(i))
                if window is not None and not (window.contains(bd) and window.contains(tgt)):
                    continue
                nr, nc = self.dims.get(tgt, 0), self.dims.get(bd, 0)
                if m.is_zero():
                    continue
                if (m.nrows, m.ncols) != (nr, nc):
                    raise ShapeMismatch(
                        f"d_{i} block at {bd}: got {m.nrows}x{m.ncols}, expected {nr}x{nc}")
                kept[bd] = m
            if kept:
                self.maps[i] = kept
        self._cache = {}

    # -- component access -------------------------------------------------

    def dim_at(self, bd):
        if bd in self.dims:
            return self.dims[bd]
        if self.window is None or self.window.contains(bd):
            return 0
        raise WindowTooSmall(f"bidegree {bd} is outside the materialized window",
                             needed=bd)

    def block(self, i, bd):
        """Matrix of d_i on the component at bd (zero matrix if absent)."""
        m = self.maps.get(i, {}).get(bd)
        if m is not None:
            return m
        tgt = bd_add(bd, shift_of(i))
        return Matrix.zero(self.field, self.dim_at(tgt), self.dim_at(bd))

    def support(self):
        return tuple(sorted(self.dims))

    def support_box(self):
        if not self.dims:
            return None
        ps = [bd[0] for bd in self.dims]
        qs = [bd[1] for bd in self.dims]
        return Window(min(ps), max(ps), min(qs), max(qs))

    def max_map_index(self):
        return max(self.maps, default=-1)

    def map_indices(self):
        return tuple(sorted(self.maps))

    @property
    def is_complete(self):
        return self.window is None

    def graded_map(self, i):
        return GradedMap(self.field, shift_of(i), self.dims, self.dims,
                         self.maps.get(i, {}))

    def total_dim(self):
        return sum(self.dims.values())

    def __repr__(self):
        return (f"Multicomplex(field={self.field.name}, n={self.n}, "
                f"support={len(self.dims)} bidegrees, total dim {self.total_dim()})")


def zero_multicomplex(field, n=INF):
    return Multicomplex(field, n, {}, {})


def single_cell(field, p, q, n=INF):
    """The ground field concentrated in bidegree (p, q)."""
    return Multicomplex(field, n, {(p, q): 1}, {})


# -- validation -----------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    l: int
    bidegree: tuple
    matrix: Matrix


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple
    checked: int

    @property
    def ok(self):
        return not self.violations


def validate_multicomplex(A):
    """Check the defining relations everywhere they are determined.

    For windowed objects a relation instance is only checked when every
    bidegree it touches lies inside the window; on complete objects the
    check is exhaustive (composites of indices above the largest stored
    map vanish identically).
    """
    f = A.field
    maxi = A.max_map_index()
    violations = []
    checked = 0
    for bd in sorted(A.dims):
        for l in range(0, 2 * maxi + 1):
            target = bd_add(bd, (-l, 2 - l))
            needed = [target]
            terms = []
            for i in range(0, l + 1):
                j = l - i
                if i not in A.maps and j not in A.maps:
                    continue
                mid = bd_add(bd, shift_of(j))
                needed.append(mid)
                terms.append((i, j, mid))
            if A.window is not None and not all(A.window.contains(x) for x in needed):
                continue
            if not terms:
                continue
            nr, nc = A.dims.get(target, 0), A.dims[bd]
            if nr == 0:
                continue
            acc = Matrix.zero(f, nr, nc)
            for i, j, mid in terms:
                left = A.block(i, mid)
                right = A.block(j, bd)
                if left.is_zero() or right.is_zero():
                    continue
                term = left * right
                acc = acc + (term if i % 2 == 0 else -term)
            checked += 1
            if not acc.is_zero():
                violations.append(Violation(l, bd, acc))
    return ValidationReport(tuple(violations), checked)


# -- morphisms ------------------------------------------------------------

class MCMorphism:
    """Bidegree (0,0) map commuting with every structure map."""

    def __init__(self, source, target, blocks):
        if source.field != target.field:
            raise FieldMismatch("morphism endpoints over different fields")
        if source.n != target.n:
            raise ShapeMismatch(
                f"morphism endpoints with different bounds {source.n} != {target.n}")
        self.source = source
        self.target = target
        self.blocks = {}
        for bd, m in blocks.items():
            if m.is_zero():
                continue
            nr = target.dims.get(bd, 0)
            nc = source.dims.get(bd, 0)
            if (m.nrows, m.ncols) != (nr, nc):
                raise ShapeMismatch(
                    f"morphism block at {bd}: got {m.nrows}x{m.ncols}, expected {nr}x{nc}")
            self.blocks[bd] = m

    @property
    def field(self):
        return self.source.field

    def block_at(self, bd):
        m = self.blocks.get(bd)
        if m is not None:
            return m
        return Matrix.zero(self.field, self.target.dim_at(bd), self.source.dim_at(bd))

    def apply(self, bd, vec):
        return self.block_at(bd).apply(vec)

    def defined_window(self):
        w = self.source.window
        if self.target.window is not None:
            w = self.target.window if w is None else w.intersect(self.target.window)
        return w

    def __repr__(self):
        return f"MCMorphism({len(self.blocks)} nonzero blocks)"


def validate_morphism(fm):
    """Commutation report for d_i f = f d_i at every checkable bidegree."""
    A, B = fm.source, fm.target
    window = fm.defined_window()
    violations = []
    checked = 0
    indices = sorted(set(A.maps) | set(B.maps))
    bds = sorted(set(A.dims) | set(B.dims))
    for bd in bds:
        for i in indices:
            tgt = bd_add(bd, shift_of(i))
            if window is not None and not (window.contains(bd) and window.contains(tgt)):
                continue
            lhs = B.block(i, bd) * fm.block_at(bd)
            rhs = fm.block_at(tgt) * A.block(i, bd)
            checked += 1
            if lhs != rhs:
                violations.append(Violation(i, bd, lhs - rhs))
    return ValidationReport(tuple(violations), checked)


def identity_morphism(A):
    return MCMorphism(A, A, {bd: Matrix.identity(A.field, d)
                             for bd, d in A.dims.items()})


def zero_morphism(A, B):
    return MCMorphism(A, B, {})


def compose(f, g):
    """Composite g . f  (apply f first, then g)."""
    if f.target is not g.source and f.target.dims != g.source.dims:
        raise ShapeMismatch("composition endpoints do not match")
    blocks = {}
    for bd in f.source.dims:
        m = g.block_at(bd) * f.block_at(bd)
        if not m.is_zero():
            blocks[bd] = m
    return MCMorphism(f.source, g.target, blocks)


def morphisms_equal(f, g):
    if f.source.dims != g.source.dims or f.target.dims != g.target.dims:
        return False
    bds = set(f.blocks) | set(g.blocks)
    return all(f.block_at(bd) == g.block_at(bd) for bd in bds)


# -- tensor product -------------------------------------------------------

def tensor_layout(A, B, bd):
    """Ordered decomposition of the tensor component at bd.

    Returns a list of (bdA, bdB, dimA, dimB, offset); within a pair the
    basis is a-major: index = a * dimB + b.
    """
    out = []
    offset = 0
    for bdA in sorted(A.dims):
        bdB = bd_sub(bd, bdA)
        dB = B.dims.get(bdB, 0)
        if dB == 0:
            continue
        dA = A.dims[bdA]
        out.append((bdA, bdB, dA, dB, offset))
        offset += dA * dB
    return out


def _tensor_window(A, B):
    """Region where the tensor components are exactly determined.

    With a complete factor this is the erosion of the other factor's
    window by the complete support box; with two windowed factors the
    same formula is a conservative choice suited to cone-supported
    operands.
    """
    if A.window is None and B.window is None:
        return None
    win = None
    for first, second in ((A, B), (B, A)):
        if first.window is None:
            continue
        other = second.window if second.window is not None else second.support_box()
        if other is None:
            return None  # the complete factor is zero, so is the tensor
        w = Window(first.window.pmin + other.pmax, first.window.pmax + other.pmin,
                   first.window.qmin + other.qmax, first.window.qmax + other.qmin) \
            if (first.window.pmin + other.pmax <= first.window.pmax + other.pmin
                and first.window.qmin + other.qmax <= first.window.qmax + other.qmin) \
            else None
        if w is None:
            raise WindowTooSmall("tensor window is empty")
        win = w if win is None else win.intersect(w)
    return win


def tensor_product(A, B):
    """A (x) B with structure maps d_i (x) 1 + (Koszul sign) 1 (x) d_i.

    The sign on the second summand is (-1)^(i*p + (1-i)*q) for a left
    factor of bidegree (p, q); this is the unique diagonal-form sign
    making the defining relations hold, and the validator enforces it on
    every constructed product.
    """
    if A.field != B.field:
        raise FieldMismatch("tensor factors over different fields")
    f = A.field
    n = min(A.n, B.n)
    window = _tensor_window(A, B)

    bds = set()
    for bdA in A.dims:
        for bdB in B.dims:
            w = bd_add(bdA, bdB)
            if window is None or window.contains(w):
                bds.add(w)
    dims = {}
    layouts = {}
    for bd in bds:
        lay = tensor_layout(A, B, bd)
        d = sum(dA * dB for _, _, dA, dB, _ in lay)
        if d:
            dims[bd] = d
            layouts[bd] = lay

    indices = sorted(set(A.maps) | set(B.maps))
    maps = {}
    for i in indices:
        sh = shift_of(i)
        blocks = {}
        for bd, lay in layouts.items():
            tgt = bd_add(bd, sh)
            if tgt not in dims:
                continue
            tlay = {(bdA, bdB): (dA, dB, off)
                    for bdA, bdB, dA, dB, off in layouts[tgt]}
            entries = {}
            for bdA, bdB, dA, dB, off in lay:
                mA = A.maps.get(i, {}).get(bdA)
                if mA is not None:
                    t = tlay.get((bd_add(bdA, sh), bdB))
                    if t is not None:
                        _, _, toff = t
                        for a2 in range(mA.nrows):
                            for a in range(dA):
                                v = mA.rows[a2][a]
                                if v != f.zero:
                                    for b in range(dB):
                                        entries[(toff + a2 * dB + b, off + a * dB + b)] = v
                mB = B.maps.get(i, {}).get(bdB)
                if mB is not None:
                    t = tlay.get((bdA, bd_add(bdB, sh)))
                    if t is not None:
                        _, dB2, toff = t
                        sign = (i * bdA[0] + (1 - i) * bdA[1]) % 2
                        for b2 in range(mB.nrows):
                            for b in range(dB):
                                v = mB.rows[b2][b]
                                if v != f.zero:
                                    if sign:
                                        v = f.neg(v)
                                    for a in range(dA):
                                        key = (toff + a * dB2 + b2, off + a * dB + b)
                                        entries[key] = f.add(entries.get(key, f.zero), v)
            if entries:
                blocks[bd] = Matrix.from_entries(f, dims[tgt], dims[bd], entries)
        if blocks:
            maps[i] = blocks
    return Multicomplex(f, n, dims, maps, window)


def swap_morphism(A, B):
    """The symmetry A (x) B -> B (x) A, a (x) b -> (-1)^(a.b) b (x) a."""
    T1 = tensor_product(A, B)
    T2 = tensor_product(B, A)
    f = A.field
    blocks = {}
    for bd in T1.dims:
        lay1 = tensor_layout(A, B, bd)
        lay2 = {(bdB, bdA): off for bdB, bdA, _, _, off in tensor_layout(B, A, bd)}
        entries = {}
        for bdA, bdB, dA, dB, off in lay1:
            toff = lay2[(bdB, bdA)]
            sign = (bdA[0] * bdB[0] + bdA[1] * bdB[1]) % 2
            val = f.neg(f.one) if sign else f.one
            for a in range(dA):
                for b in range(dB):
                    entries[(toff + b * dA + a, off + a * dB + b)] = val
        blocks[bd] = Matrix.from_entries(f, T2.dims.get(bd, 0), T1.dims[bd], entries)
    return MCMorphism(T1, T2, blocks)


def tensor_morphism(fm, gm):
    """f (x) g between the corresponding tensor products."""
    S = tensor_product(fm.source, gm.source)
    T = tensor_product(fm.target, gm.target)
    f = S.field
    blocks = {}
    for bd in S.dims:
        lay_s = tensor_layout(fm.source, gm.source, bd)
        lay_t = {(bdA, bdB): (dA, dB, off)
                 for bdA, bdB, dA, dB, off in tensor_layout(fm.target, gm.target, bd)}
        entries = {}
        for bdA, bdB, dA, dB, off in lay_s:
            mA = fm.block_at(bdA)
            mB = gm.block_at(bdB)
            if mA.is_zero() or mB.is_zero():
                continue
            t = lay_t.get((bdA, bdB))
            if t is None:
                continue
            dA2, dB2, toff = t
            for a2 in range(dA2):
                for a in range(dA):
                    va = mA.rows[a2][a]
                    if va == f.zero:
                        continue
                    for b2 in range(dB2):
                        for b in range(dB):
                            vb = mB.rows[b2][b]
                            if vb != f.zero:
                                entries[(toff + a2 * dB2 + b2, off + a * dB + b)] = \
                                    f.mul(va, vb)
        if entries:
            blocks[bd] = Matrix.from_entries(f, T.dims.get(bd, 0), S.dims[bd], entries)
    return MCMorphism(S, T, blocks)


# -- direct sum -----------------------------------------------------------

@dataclass
class DirectSum:
    sum: Multicomplex
    incl_a: MCMorphism
    incl_b: MCMorphism
    proj_a: MCMorphism
    proj_b: MCMorphism


def direct_sum(A, B):
    """Blockwise sum with canonical inclusions and projections (A first)."""
    if A.field != B.field:
        raise FieldMismatch("direct sum over different fields")
    if A.n != B.n:
        raise ShapeMismatch("direct sum with different bounds")
    f = A.field
    window = A.window
    if B.window is not None:
        window = B.window if window is None else window.intersect(B.window)
    dims = {}
    for bd in set(A.dims) | set(B.dims):
        if window is None or window.contains(bd):
            dims[bd] = A.dims.get(bd, 0) + B.dims.get(bd, 0)
    maps = {}
    for i in sorted(set(A.maps) | set(B.maps)):
        blocks = {}
        for bd in dims:
            tgt = bd_add(bd, shift_of(i))
            if tgt not in dims:
                continue
            m = linalg.block_diag(f, [A.block(i, bd), B.block(i, bd)])
            if not m.is_zero():
                blocks[bd] = m
        if blocks:
            maps[i] = blocks
    S = Multicomplex(f, A.n, dims, maps, window)

    ia, ib, pa, pb = {}, {}, {}, {}
    for bd, d in S.dims.items():
        dA, dB = A.dims.get(bd, 0), B.dims.get(bd, 0)
        if dA:
            ia[bd] = Matrix.from_entries(f, d, dA, {(k, k): f.one for k in range(dA)})
            pa[bd] = Matrix.from_entries(f, dA, d, {(k, k): f.one for k in range(dA)})
        if dB:
            ib[bd] = Matrix.from_entries(f, d, dB, {(dA + k, k): f.one for k in range(dB)})
            pb[bd] = Matrix.from_entries(f, dB, d, {(k, dA + k): f.one for k in range(dB)})
    return DirectSum(S, MCMorphism(A, S, ia), MCMorphism(B, S, ib),
                     MCMorphism(S, A, pa), MCMorphism(S, B, pb))


# -- quotients and pushouts ----------------------------------------------

def quotient_by_subspaces(M, subspaces):
    """Quotient of M by per-bidegree subspaces that are closed under d_i.

    subspaces maps bidegree -> Matrix whose rows span the part to kill.
    Returns (Q, projection, subs) where subs[bd] is the Subquotient
    presentation.  Raises IllDefined if the subspaces are not stable
    under the structure maps.
    """
    f = M.field
    subs = {}
    for bd, d in M.dims.items():
        rows = subspaces.get(bd)
        if rows is None:
            rows = Matrix.zero(f, 0, d)
        subs[bd] = linalg.subquotient(f, d, Matrix.identity(f, d), rows)
    # stability check
    for bd, rows in subspaces.items():
        if bd not in M.dims:
            continue
        for i in M.map_indices():
            tgt = bd_add(bd, shift_of(i))
            blk = M.maps.get(i, {}).get(bd)
            if blk is None:
                continue
            tsub = subs.get(tgt)
            for row in rows.rows:
                img = blk.apply(row)
                if any(v != f.zero for v in img):
                    if tsub is None or not tsub.contains_in_boundaries(img):
                        raise IllDefined(
                            f"subspace at {bd} not stable under d_{i}")
    dims = {bd: s.dim for bd, s in subs.items() if s.dim > 0}
    maps = {}
    for i in M.map_indices():
        blocks = {}
        for bd in dims:
            tgt = bd_add(bd, shift_of(i))
            if tgt not in dims:
                continue
            blk = M.maps.get(i, {}).get(bd)
            if blk is None:
                continue
            cols = []
            for row in subs[bd].reps.rows:
                img = blk.apply(row)
                cols.append(subs[tgt].project(img))
            m = Matrix.from_rows(f, cols).transpose() if cols else \
                Matrix.zero(f, dims[tgt], 0)
            if not m.is_zero():
                blocks[bd] = m
        if blocks:
            maps[i] = blocks
    Q = Multicomplex(f, M.n, dims, maps, M.window)
    proj = MCMorphism(M, Q, {
        bd: Matrix.from_rows(f, [subs[bd].project(linalg.unit_vector(f, M.dims[bd], k))
                                 for k in range(M.dims[bd])]).transpose()
        for bd in M.dims if subs[bd].dim > 0})
    return Q, proj, subs


def saturate(M, seeds):
    """Smallest per-bidegree family of subspaces containing `seeds` that is
    closed under every structure map (windowed maps: images leaving the
    window are dropped)."""
    f = M.field
    current = {}
    for bd, rows in seeds.items():
        if bd in M.dims and rows.nrows:
            current[bd] = linalg.row_space(rows)
    frontier = dict(current)
    while frontier:
        new_frontier = {}
        for bd, rows in sorted(frontier.items()):
            for i in M.map_indices():
                blk = M.maps.get(i, {}).get(bd)
                if blk is None:
                    continue
                tgt = bd_add(bd, shift_of(i))
                imgs = [blk.apply(row) for row in rows.rows]
                imgs = [v for v in imgs if any(x != f.zero for x in v)]
                if not imgs:
                    continue
                old = current.get(tgt, Matrix.zero(f, 0, M.dims[tgt]))
                stacked = linalg.vstack([old, Matrix.from_rows(f, imgs)])
                new = linalg.row_space(stacked)
                if new.nrows > old.nrows:
                    current[tgt] = new
                    prev = new_frontier.get(tgt, Matrix.zero(f, 0, M.dims[tgt]))
                    new_frontier[tgt] = linalg.row_space(
                        linalg.vstack([prev, Matrix.from_rows(f, imgs)]))
        frontier = new_frontier
    return current


@dataclass
class PushoutResult:
    obj: Multicomplex
    leg_b: MCMorphism
    leg_c: MCMorphism
    _dsum: DirectSum
    _subs: dict

    def induced(self, u, v):
        """The universal map out of the pushout for a cocone (u, v)."""
        f = self.obj.field
        blocks = {}
        for bd, d in self.obj.dims.items():
            sub = self._subs[bd]
            dA = self._dsum.incl_a.source.dims.get(bd, 0)
            cols = []
            for row in sub.reps.rows:
                bpart, cpart = row[:dA], row[dA:]
                img = u.apply(bd, bpart)
                img2 = v.apply(bd, cpart)
                cols.append(tuple(f.add(a, b) for a, b in zip(img, img2)))
            m = Matrix.from_rows(f, cols).transpose()
            if not m.is_zero():
                blocks[bd] = m
        return MCMorphism(self.obj, u.target, blocks)


def pushout(fm, gm):
    """Pushout of B <-f- A -g-> C, computed bidegree-wise.

    Returns the object together with the legs B -> P and C -> P; the
    universal property is available through PushoutResult.induced.
    """
    if fm.source.dims != gm.source.dims:
        raise ShapeMismatch("pushout legs must share their source")
    A, B, C = fm.source, fm.target, gm.target
    if B.field != C.field:
        raise FieldMismatch("pushout over different fields")
    f = B.field
    ds = direct_sum(B, C)
    D = ds.sum
    relations = {}
    for bd, dA in A.dims.items():
        if bd not in D.dims:
            continue
        rows = []
        for k in range(dA):
            e = linalg.unit_vector(f, dA, k)
            fv = fm.apply(bd, e)
            gv = gm.apply(bd, e)
            rows.append(tuple(fv) + tuple(f.neg(x) for x in gv))
        if rows:
            relations[bd] = Matrix.from_rows(f, rows)
    Q, proj, subs = quotient_by_subspaces(D, relations)
    return PushoutResult(Q, compose(ds.incl_a, proj), compose(ds.incl_b, proj),
                         ds, subs)


# -- misc constructions ----------------------------------------------------

def with_bound(A, n):
    """Reinterpret A with a (larger) declared bound; data unchanged."""
    if n < max(A.max_map_index() + 1, 1):
        raise ShapeMismatch(f"bound {n} too small for stored maps")
    return Multicomplex(A.field, n, A.dims, A.maps, A.window)


def shift_multicomplex(A, delta):
    """Translate every bidegree by delta; structure maps are unchanged."""
    dims = {bd_add(bd, delta): d for bd, d in A.dims.items()}
    maps = {i: {bd_add(bd, delta): m for bd, m in blocks.items()}
            for i, blocks in A.maps.items()}
    window = A.window.shift(delta) if A.window is not None else None
    return Multicomplex(A.field, A.n, dims, maps, window)


def restrict_to_window(A, window):
    """Truncate A to a window; the result is complete only when the
    support already fits inside it."""
    dims = {bd: d for bd, d in A.dims.items() if window.contains(bd)}
    maps = {i: {bd: m for bd, m in blocks.items()
                if window.contains(bd) and window.contains(bd_add(bd, shift_of(i)))}
            for i, blocks in A.maps.items()}
    if A.window is None and len(dims) == len(A.dims):
        return Multicomplex(A.field, A.n, dims, maps, None)
    eff = window if A.window is None else window.intersect(A.window)
    return Multicomplex(A.field, A.n, dims, maps, eff)


def equal_dims(A, B, window=None):
    """Bidegree-wise dimension comparison, optionally restricted to a window."""
    keys = set(A.dims) | set(B.dims)
    if window is not None:
        keys = {bd for bd in keys if window.contains(bd)}
    return all(A.dims.get(bd, 0) == B.dims.get(bd, 0) for bd in keys)


# -- hom spaces ------------------------------------------------------------

def hom_space(A, B):
    """Basis of the space of strict morphisms A -> B.

    Exact for complete objects; for windowed ones the commutation
    constraints are imposed on the common window.
    """
    if A.field != B.field:
        raise FieldMismatch("hom over different fields")
    f = A.field
    window = A.window
    if B.window is not None:
        window = B.window if window is None else window.intersect(B.window)
    var_bds = sorted(bd for bd in A.dims if B.dims.get(bd, 0) > 0
                     and (window is None or window.contains(bd)))
    var_index = {}
    for bd in var_bds:
        dA, dB = A.dims[bd], B.dims[bd]
        for r in range(dB):
            for c in range(dA):
                var_index[(bd, r, c)] = len(var_index)
    nvars = len(var_index)
    rows = []
    indices = sorted(set(A.maps) | set(B.maps))
    # constraints B.d_i f(bd) = f(tgt) A.d_i run over every source bidegree
    # of A, including those where f is forced to vanish
    for bd in sorted(A.dims):
        if window is not None and not window.contains(bd):
            continue
        for i in indices:
            tgt = bd_add(bd, shift_of(i))
            if window is not None and not window.contains(tgt):
                continue
            dA = A.dims[bd]
            dB = B.dims.get(bd, 0)
            dAt, dBt = A.dims.get(tgt, 0), B.dims.get(tgt, 0)
            if dBt == 0 or not (bd in var_bds or tgt in var_bds):
                continue
            mA = A.block(i, bd)
            mB = B.block(i, bd)
            for r in range(dBt):
                for c in range(dA):
                    row = [f.zero] * nvars
                    if bd in var_bds:
                        for k in range(dB):
                            v = mB.rows[r][k]
                            if v != f.zero:
                                idx = var_index[(bd, k, c)]
                                row[idx] = f.add(row[idx], v)
                    if tgt in var_bds:
                        for k in range(dAt):
                            v = mA.rows[k][c]
                            if v != f.zero:
                                idx = var_index[(tgt, r, k)]
                                row[idx] = f.sub(row[idx], v)
                    if any(v != f.zero for v in row):
                        rows.append(tuple(row))
    system = Matrix.from_rows(f, rows) if rows else Matrix.zero(f, 0, nvars)
    basis = linalg.kernel(system)
    out = []
    for vec in basis.rows:
        blocks = {}
        for bd in var_bds:
            dA, dB = A.dims[bd], B.dims[bd]
            entries = {}
            for r in range(dB):
                for c in range(dA):
                    v = vec[var_index[(bd, r, c)]]
                    if v != f.zero:
                        entries[(r, c)] = v
            if entries:
                blocks[bd] = Matrix.from_entries(f, dB, dA, entries)
        out.append(MCMorphism(A, B, blocks))
    return out


def hom_dim(A, B):
    return len(hom_space(A, B))


def random_morphism(A, B, rng):
    """Random element of Hom(A, B) (zero when the hom space is trivial)."""
    basis = hom_space(A, B)
    f = A.field
    blocks = {}
    for fm in basis:
        c = f.random(rng)
        if f.is_zero(c):
            continue
        for bd, m in fm.blocks.items():
            sc = m.scale(c)
            blocks[bd] = blocks[bd] + sc if bd in blocks else sc
    return MCMorphism(A, B, {bd: m for bd, m in blocks.items() if not m.is_zero()})
