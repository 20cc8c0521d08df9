"""The spectral sequence of a multicomplex, computed by two independent routes.

Direct route: the r-cycles at (p, q) are the elements a_0 admitting a
staircase tuple (a_0, ..., a_{r-1}), a_j in A^{p-j, q-j}, with
sum_{i+j=l} (-1)^i d_i a_j = 0 for l < r; the r-boundaries are the values
sum_{i=0}^{r-1} (-1)^i d_i b_{r-1-i} over tuples whose leading r-1 entries
again satisfy the staircase relations one stage down.  The page is the
subquotient of the (p, q) component.

Witness route: the page is the full tuple space ZW_r modulo the image of
the explicit map w_r out of the boundary-witness space
BW_r = ZW_{r-1}(shifted up-right) + A^{p,q-1} + ZW_{r-1}(shifted down-left).

Both routes present the same page up to canonical isomorphism; the test
suite exploits the redundancy for differential testing.
"""

from dataclasses import dataclass

from . import linalg
from .errors import IllDefined, InvalidWitness
from .graded import Window
from .linalg import Matrix
from .multicomplex import Multicomplex


# -- witness tuple spaces ---------------------------------------------------

@dataclass
class WitnessSpace:
    """Solution space of the staircase system at one bidegree.

    Stacked coordinates run over the components A^{p-j, q-j} for
    0 <= j < max(r, 1), j ascending; `basis` rows form the canonical
    echelon basis of the solution space.
    """

    r: int
    at: tuple
    comps: tuple
    offsets: tuple
    total: int
    basis: Matrix

    @property
    def dim(self):
        return self.basis.nrows

    def split(self, vec):
        """Cut a stacked vector into its per-entry components."""
        out = []
        for j, d in enumerate(self.comps):
            o = self.offsets[j]
            out.append(tuple(vec[o:o + d]))
        return out


def _staircase_rows(A, at, comps, offsets, r):
    """Rows of the staircase system for l = 0 .. r-1 over stacked tuples."""
    f = A.field
    p, q = at
    total = offsets[-1] + comps[-1] if comps else 0
    rows = []
    for l in range(r):
        tgt = (p - l, q + 1 - l)
        nr = A.dim_at(tgt)
        if nr == 0:
            continue
        # row block: sum_j (-1)^(l-j) d_{l-j} on the a_j column block
        block_rows = [[f.zero] * total for _ in range(nr)]
        touched = False
        for j in range(min(l, len(comps) - 1) + 1):
            i = l - j
            blk = A.maps.get(i, {}).get((p - j, q - j))
            if blk is None or comps[j] == 0:
                continue
            touched = True
            sign = i % 2
            for rr in range(nr):
                for cc in range(comps[j]):
                    v = blk.rows[rr][cc]
                    if v != f.zero:
                        if sign:
                            v = f.neg(v)
                        block_rows[rr][offsets[j] + cc] = f.add(
                            block_rows[rr][offsets[j] + cc], v)
        if touched:
            rows.extend(tuple(rw) for rw in block_rows)
    return rows


def witness_cycles(A, r, at):
    """The space ZW_r at the bidegree `at` (r = 0 gives the raw component)."""
    key = ("zw", r, at)
    if key in A._cache:
        return A._cache[key]
    f = A.field
    p, q = at
    jrange = max(r, 1)
    comps = tuple(A.dim_at((p - j, q - j)) for j in range(jrange))
    offsets = []
    o = 0
    for d in comps:
        offsets.append(o)
        o += d
    total = o
    if r == 0:
        basis = Matrix.identity(f, total)
    else:
        rows = _staircase_rows(A, at, comps, offsets, r)
        system = Matrix.from_rows(f, rows) if rows else Matrix.zero(f, 0, total)
        basis = linalg.kernel(system)
    ws = WitnessSpace(r, at, comps, tuple(offsets), total, basis)
    A._cache[key] = ws
    return ws


def witness_residuals(A, at, entries):
    """Residuals of the staircase relations for explicit tuple entries."""
    f = A.field
    p, q = at
    r = len(entries)
    out = []
    for l in range(r):
        tgt = (p - l, q + 1 - l)
        acc = linalg.zero_vector(f, A.dim_at(tgt))
        for j in range(min(l, r - 1) + 1):
            i = l - j
            blk = A.maps.get(i, {}).get((p - j, q - j))
            if blk is None or not entries[j]:
                continue
            img = blk.apply(entries[j])
            if i % 2:
                img = tuple(f.neg(v) for v in img)
            acc = tuple(f.add(a, b) for a, b in zip(acc, img))
        out.append(acc)
    return out


@dataclass
class BoundaryWitnessSpace:
    """BW_r feeding ZW_r at `at`: two shifted stage-(r-1) witness spaces
    around a free middle component (degenerating for r <= 1)."""

    r: int
    at: tuple
    part_b: WitnessSpace
    mid_dim: int
    mid_at: tuple
    part_c: WitnessSpace
    basis: Matrix
    total: int

    @property
    def dim(self):
        return self.basis.nrows

    def split(self, vec):
        nb = self.part_b.total if self.part_b else 0
        return (vec[:nb], vec[nb:nb + self.mid_dim], vec[nb + self.mid_dim:])


def witness_boundaries(A, r, at):
    """The boundary-witness space whose w_r image presents the page at `at`."""
    key = ("bw", r, at)
    if key in A._cache:
        return A._cache[key]
    f = A.field
    p, q = at
    mid_at = (p, q - 1)
    if r == 0:
        bw = BoundaryWitnessSpace(0, at, None, 0, mid_at, None,
                                  Matrix.zero(f, 0, 0), 0)
    elif r == 1:
        d = A.dim_at(mid_at)
        bw = BoundaryWitnessSpace(1, at, None, d, mid_at, None,
                                  Matrix.identity(f, d), d)
    else:
        zb = witness_cycles(A, r - 1, (p + r - 1, q + r - 2))
        zc = witness_cycles(A, r - 1, (p - 1, q - 1))
        d = A.dim_at(mid_at)
        basis = linalg.block_diag(
            f, [zb.basis, Matrix.identity(f, d), zc.basis])
        bw = BoundaryWitnessSpace(r, at, zb, d, mid_at, zc, basis,
                                  zb.total + d + zc.total)
    A._cache[key] = bw
    return bw


def w_on_entries(A, r, at, b_entries, a_vec, c_entries):
    """Evaluate w_r on explicit element data.

    b_entries are the components of a stage-(r-1) tuple at
    (p+r-1, q+r-2), a_vec lives at (p, q-1) and c_entries at (p-1, q-1);
    the result is the list of r output entries, entry j at (p-j, q-j).
    """
    f = A.field
    p, q = at
    out = []
    for j in range(r):
        dj = A.dim_at((p - j, q - j))
        acc = list(linalg.zero_vector(f, dj))

        def add(vec):
            for t, v in enumerate(vec):
                if v != f.zero:
                    acc[t] = f.add(acc[t], v)

        # alpha_j = (-1)^j sum_{k=j+1}^{r+j-1} (-1)^k d_k b_{r+j-1-k}
        for k in range(j + 1, r + j):
            t = r + j - 1 - k
            if t < 0 or t >= len(b_entries):
                continue
            blk = A.maps.get(k, {}).get((p + r - 1 - t, q + r - 2 - t))
            if blk is None or not b_entries[t]:
                continue
            img = blk.apply(b_entries[t])
            if (j + k) % 2:
                img = tuple(f.neg(v) for v in img)
            add(img)
        if a_vec:
            blk = A.maps.get(j, {}).get((p, q - 1))
            if blk is not None:
                add(blk.apply(a_vec))
        if j >= 1 and j - 1 < len(c_entries) and c_entries[j - 1]:
            add(c_entries[j - 1])
        out.append(tuple(acc))
    return out


def _w_apply(A, r, at, b_vec, a_vec, c_vec, bw):
    """Evaluate w_r on split boundary-witness coordinates; returns the
    stacked image in the ZW_r ambient."""
    b_entries = bw.part_b.split(b_vec) if bw.part_b is not None else []
    c_entries = bw.part_c.split(c_vec) if bw.part_c is not None else []
    pieces = w_on_entries(A, r, at, b_entries, a_vec, c_entries)
    return tuple(v for vec in pieces for v in vec)


@dataclass
class WMap:
    """w_r as explicit data: images of the BW basis inside the ZW ambient."""

    r: int
    at: tuple
    bw: BoundaryWitnessSpace
    zw: WitnessSpace
    images: Matrix          # rows: image of each BW basis vector, stacked
    matrix: Matrix          # same images in ZW basis coordinates
    kernel_dim: int


def w_map(A, r, at):
    key = ("w", r, at)
    if key in A._cache:
        return A._cache[key]
    f = A.field
    zw = witness_cycles(A, r, at)
    bw = witness_boundaries(A, r, at)
    img_rows = []
    for row in bw.basis.rows:
        b_vec, a_vec, c_vec = bw.split(row)
        img = _w_apply(A, r, at, b_vec, a_vec, c_vec, bw)
        img_rows.append(img)
    images = Matrix.from_rows(f, img_rows) if img_rows else \
        Matrix.zero(f, 0, zw.total)
    # image must land in the witness-cycle span
    zw_rref, zw_piv = linalg.rref(zw.basis)
    coord_rows = []
    for img in images.rows:
        if not linalg.in_span(zw_rref, zw_piv, img):
            raise IllDefined(f"w_{r} image leaves the witness-cycle span at {at}")
        sol = linalg.solve(zw.basis.transpose(), img)
        coord_rows.append(sol)
    matrix = (Matrix.from_rows(f, coord_rows).transpose()
              if coord_rows else Matrix.zero(f, zw.dim, 0))
    kdim = linalg.kernel(images.transpose()).nrows if bw.dim else 0
    wm = WMap(r, at, bw, zw, images, matrix, kdim)
    A._cache[key] = wm
    return wm


# -- pages ------------------------------------------------------------------

@dataclass
class Page:
    """One spectral-sequence entry as an explicit subquotient."""

    parent: Multicomplex
    r: int
    at: tuple
    method: str
    sub: linalg.Subquotient
    witness: WitnessSpace | None = None

    @property
    def dim(self):
        return self.sub.dim

    def reps(self):
        return self.sub.reps.rows

    def project(self, vec):
        return self.sub.project(vec)


def compute_page(A, r, at, method="witness"):
    """E_r at `at`, presented by the chosen route ("witness" or "direct")."""
    if method not in ("witness", "direct"):
        raise ValueError(f"unknown page method {method!r}")
    key = ("page", r, at, method)
    if key in A._cache:
        return A._cache[key]
    f = A.field
    p, q = at
    if method == "witness":
        zw = witness_cycles(A, r, at)
        wm = w_map(A, r, at)
        sub = linalg.subquotient(f, zw.total, zw.basis, wm.images)
        page = Page(A, r, at, "witness", sub, zw)
    else:
        d = A.dim_at(at)
        if r == 0:
            cycles = Matrix.identity(f, d)
            boundaries = Matrix.zero(f, 0, d)
        else:
            zw = witness_cycles(A, r, at)
            a0_rows = [row[:d] for row in zw.basis.rows]
            cycles = linalg.row_space(Matrix.from_rows(f, a0_rows)) \
                if a0_rows else Matrix.zero(f, 0, d)
            bnd_rows = []
            mid_at = (p, q - 1)
            blk0 = A.maps.get(0, {}).get(mid_at)
            for k in range(A.dim_at(mid_at)):
                if blk0 is None:
                    break
                bnd_rows.append(blk0.apply(linalg.unit_vector(f, A.dim_at(mid_at), k)))
            if r >= 2:
                zb = witness_cycles(A, r - 1, (p + r - 1, q + r - 2))
                for row in zb.basis.rows:
                    bs = zb.split(row)
                    acc = list(linalg.zero_vector(f, d))
                    for i in range(1, r):
                        t = r - 1 - i
                        if t >= len(bs) or not bs[t]:
                            continue
                        blk = A.maps.get(i, {}).get(
                            (p + r - 1 - t, q + r - 2 - t))
                        if blk is None:
                            continue
                        img = blk.apply(bs[t])
                        for u, v in enumerate(img):
                            if v != f.zero:
                                acc[u] = f.add(acc[u], v) if i % 2 == 0 \
                                    else f.sub(acc[u], v)
                    bnd_rows.append(tuple(acc))
            boundaries = Matrix.from_rows(f, bnd_rows) if bnd_rows else \
                Matrix.zero(f, 0, d)
        sub = linalg.subquotient(f, d, cycles, boundaries)
        page = Page(A, r, at, "direct", sub)
    A._cache[key] = page
    return page


def page_dim(A, r, at, method="witness"):
    return compute_page(A, r, at, method).dim


def lift_to_witness(A, r, at, a0):
    """Complete a direct-route cycle a0 into a full staircase tuple."""
    f = A.field
    zw = witness_cycles(A, r, at)
    d = A.dim_at(at)
    if r == 0:
        return (tuple(a0),)
    sol = linalg.solve(
        Matrix.from_rows(f, [row[:d] for row in zw.basis.rows]).transpose()
        if zw.dim else Matrix.zero(f, d, 0),
        tuple(a0))
    if sol is None:
        raise InvalidWitness(f"element at {at} is not an r-cycle")
    stacked = linalg.zero_vector(f, zw.total)
    out = list(stacked)
    for coef, row in zip(sol, zw.basis.rows):
        if coef != f.zero:
            out = [f.add(a, f.mul(coef, b)) for a, b in zip(out, row)]
    return zw.split(out)


def _delta_target(at, r):
    return (at[0] - r, at[1] + 1 - r)


def _delta_entries(A, r, at, entries):
    """Entries of the page differential applied to a staircase tuple."""
    f = A.field
    p, q = at
    tp, tq = _delta_target(at, r)
    if r == 0:
        blk = A.maps.get(0, {}).get(at)
        img = blk.apply(entries[0]) if blk is not None else \
            linalg.zero_vector(f, A.dim_at((p, q + 1)))
        return [img]
    out = []
    for j in range(r):
        dj = A.dim_at((tp - j, tq - j))
        acc = list(linalg.zero_vector(f, dj))
        for i in range(1, r + 1):
            src = (p - (r - i), q - (r - i))
            blk = A.maps.get(i + j, {}).get(src)
            if blk is None or not entries[r - i]:
                continue
            img = blk.apply(entries[r - i])
            for t, v in enumerate(img):
                if v != f.zero:
                    acc[t] = f.add(acc[t], v) if i % 2 == 0 else f.sub(acc[t], v)
        out.append(tuple(acc))
    return out


@dataclass
class PageMap:
    source: Page
    target: Page
    matrix: Matrix

    @property
    def is_iso(self):
        return (self.source.dim == self.target.dim
                and linalg.rank(self.matrix) == self.source.dim)

    @property
    def is_surjective(self):
        return linalg.rank(self.matrix) == self.target.dim


def page_differential(page):
    """The differential out of a page, with its representative matrix.

    Raises IllDefined if a boundary fails to map to a boundary, which
    would indicate an internal inconsistency rather than bad user input.
    """
    A, r, at = page.parent, page.r, page.at
    f = A.field
    target = compute_page(A, r, _delta_target(at, r), page.method)
    cols = []
    for rep in page.reps():
        if page.method == "witness":
            entries = page.witness.split(rep)
        else:
            entries = lift_to_witness(A, r, at, rep)
        out_entries = _delta_entries(A, r, at, entries)
        if page.method == "witness":
            if r >= 1:
                res = witness_residuals(A, _delta_target(at, r), out_entries)
                if any(any(v != f.zero for v in vec) for vec in res):
                    raise IllDefined(f"delta_{r} image is not a witness tuple at {at}")
            img = tuple(v for vec in out_entries for v in vec)
        else:
            img = out_entries[0]
        cols.append(target.project(img))
    # boundaries must die in the target page
    for brow in page.sub.boundary_basis.rows:
        if page.method == "witness":
            entries = page.witness.split(brow)
            img = tuple(v for vec in _delta_entries(A, r, at, entries) for v in vec)
        else:
            entries = lift_to_witness(A, r, at, brow)
            img = _delta_entries(A, r, at, entries)[0]
        if not target.sub.contains_in_boundaries(img):
            raise IllDefined(f"delta_{r} does not descend to the page at {at}")
    matrix = Matrix.from_rows(f, cols).transpose() if cols else \
        Matrix.zero(f, target.dim, 0)
    return PageMap(page, target, matrix)


def induced_page_map(fm, r, at, method="witness"):
    """E_r(f) at one bidegree, in the canonical page bases."""
    A, B = fm.source, fm.target
    f = fm.field
    src = compute_page(A, r, at, method)
    tgt = compute_page(B, r, at, method)
    p, q = at
    cols = []
    for rep in src.reps():
        if method == "witness":
            entries = src.witness.split(rep)
            mapped = []
            for j, e in enumerate(entries):
                mapped.append(fm.apply((p - j, q - j), e))
            img = tuple(v for vec in mapped for v in vec)
        else:
            img = fm.apply(at, rep)
        cols.append(tgt.project(img))
    for brow in src.sub.boundary_basis.rows:
        if method == "witness":
            entries = src.witness.split(brow)
            img = tuple(v for j, e in enumerate(entries)
                        for v in fm.apply((p - j, q - j), e))
        else:
            img = fm.apply(at, brow)
        if not tgt.sub.contains_in_boundaries(img):
            raise IllDefined(f"induced map fails to send boundaries to boundaries at {at}")
    matrix = Matrix.from_rows(f, cols).transpose() if cols else \
        Matrix.zero(f, tgt.dim, 0)
    return PageMap(src, tgt, matrix)


def page_comparison(A, r, at):
    """The canonical isomorphism from the witness page to the direct page."""
    f = A.field
    wpage = compute_page(A, r, at, "witness")
    dpage = compute_page(A, r, at, "direct")
    d = A.dim_at(at)
    cols = [dpage.project(rep[:d] if r >= 1 else rep) for rep in wpage.reps()]
    matrix = Matrix.from_rows(f, cols).transpose() if cols else \
        Matrix.zero(f, dpage.dim, 0)
    return PageMap(wpage, dpage, matrix)


# -- bidegree enumeration and whole-map predicates --------------------------

def relevant_bidegrees(A, B, r):
    """Bidegrees where stage-r data of either object can be nonzero."""
    bds = set()
    for M in (A, B):
        for (p, q) in M.dims:
            for j in range(max(r, 1)):
                bds.add((p + j, q + j))
    return sorted(bds)


def _computable(M, r, at):
    if M.window is None:
        return True
    p, q = at
    need = 2 * r + 1
    return M.window.contains_box(Window(p - need, p + need, q - need, q + need))


def is_er_quasi_iso(fm, r, skip_uncomputable=False):
    """True when E_{r+1}(f) is bijective wherever either side is nonzero.

    Windowed endpoints are checked on the region where the page data is
    determined (set skip_uncomputable to tolerate margin loss).
    """
    A, B = fm.source, fm.target
    for at in relevant_bidegrees(A, B, r + 2):
        if skip_uncomputable and not (_computable(A, r + 1, at)
                                      and _computable(B, r + 1, at)):
            continue
        pm = induced_page_map(fm, r + 1, at, "witness")
        if pm.source.dim == 0 and pm.target.dim == 0:
            continue
        if not pm.is_iso:
            return False, at
    return True, None


def zw_surjective(fm, r, at):
    """Is ZW_r(f) onto at `at`?  The induced images always lie in the
    target witness space, so this is a rank comparison."""
    A, B = fm.source, fm.target
    f = fm.field
    src = witness_cycles(A, r, at)
    tgt = witness_cycles(B, r, at)
    if tgt.dim == 0:
        return True
    p, q = at
    rows = []
    for rep in src.basis.rows:
        entries = src.split(rep)
        img = tuple(v for j, e in enumerate(entries)
                    for v in fm.apply((p - j, q - j), e))
        rows.append(img)
    mapped = Matrix.from_rows(f, rows) if rows else Matrix.zero(f, 0, tgt.total)
    return linalg.rank(mapped) == tgt.dim
