"""Executable model-structure apparatus.

Two fibration notions are first-class: the "witness" style asks that a
morphism and its induced map on stage-r tuple spaces are surjective in
every bidegree, while the "page" style asks surjectivity of every page
map up to stage r.  Weak equivalences at stage r are maps inducing an
isomorphism on the (r+1)-st page.  A lifting problem is solved exactly
as one sparse linear system in the unknown blocks of the lift, returning
either a validated lift or a rank certificate of infeasibility.
"""

from dataclasses import dataclass

from . import linalg
from .errors import ShapeMismatch
from .graded import INF, bd_add, shift_of
from .linalg import Matrix
from .multicomplex import (MCMorphism, Multicomplex, compose, direct_sum,
                           morphisms_equal, tensor_layout, tensor_product,
                           validate_morphism, with_bound, zero_morphism,
                           zero_multicomplex)
from .spectral import (induced_page_map, is_er_quasi_iso, relevant_bidegrees,
                       zw_surjective)
from .corpus import staircase
from .represent import generating_morphism_iota, zw_object


# -- fibrations ---------------------------------------------------------------

def _onto_everywhere(fm):
    B = fm.target
    for bd, d in sorted(B.dims.items()):
        if linalg.rank(fm.block_at(bd)) < d:
            return False, bd
    return True, None


def is_fibration(fm, r, style="page"):
    """Stage-r fibration test; returns (bool, failing bidegree or None)."""
    if style == "witness":
        ok, bad = _onto_everywhere(fm)
        if not ok:
            return False, bad
        for at in relevant_bidegrees(fm.source, fm.target, r):
            if not zw_surjective(fm, r, at):
                return False, at
        return True, None
    if style == "page":
        for i in range(r + 1):
            for at in relevant_bidegrees(fm.source, fm.target, i + 1):
                pm = induced_page_map(fm, i, at, "witness")
                if not pm.is_surjective:
                    return False, at
        return True, None
    raise ValueError(f"unknown fibration style {style!r}")


def is_trivial_fibration(fm, r, style="page"):
    ok, bad = is_fibration(fm, r, style)
    if not ok:
        return False, bad
    return is_er_quasi_iso(fm, r)


# -- lifting ------------------------------------------------------------------

@dataclass
class LiftingProblem:
    """Commuting square i down the left, p down the right."""

    i: MCMorphism
    p: MCMorphism
    top: MCMorphism
    bottom: MCMorphism

    def __post_init__(self):
        def same(X, Y):
            return X is Y or (X.field == Y.field and X.n == Y.n
                              and X.dims == Y.dims and X.maps == Y.maps)

        if not (same(self.top.source, self.i.source)
                and same(self.bottom.source, self.i.target)
                and same(self.top.target, self.p.source)
                and same(self.bottom.target, self.p.target)):
            raise ShapeMismatch("lifting square endpoints do not line up")
        if not morphisms_equal(compose(self.top, self.p),
                               compose(self.i, self.bottom)):
            raise ShapeMismatch("lifting square does not commute")


@dataclass
class LiftResult:
    lift: MCMorphism | None
    certificate: dict | None

    @property
    def exists(self):
        return self.lift is not None


def solve_lift(problem):
    """Find l: B -> X with l i = top, p l = bottom, commuting with all d_k.

    All constraints form one exact linear system in the entries of l; on
    failure the returned certificate carries the rank jump showing the
    system is infeasible.
    """
    A, B = problem.i.source, problem.i.target
    X, Y = problem.p.source, problem.p.target
    f = B.field
    var_bds = sorted(bd for bd in B.dims if X.dims.get(bd, 0) > 0)
    var_index = {}
    for bd in var_bds:
        for rr in range(X.dims[bd]):
            for cc in range(B.dims[bd]):
                var_index[(bd, rr, cc)] = len(var_index)
    nvars = len(var_index)
    rows, rhs = [], []

    def new_row():
        return [f.zero] * nvars

    # l i = top
    for bd in sorted(A.dims):
        dA = A.dims[bd]
        dX = X.dims.get(bd, 0)
        if dX == 0:
            continue
        iblk = problem.i.block_at(bd)
        tblk = problem.top.block_at(bd)
        for rr in range(dX):
            for cc in range(dA):
                row = new_row()
                for k in range(B.dims.get(bd, 0)):
                    v = iblk.rows[k][cc]
                    if v != f.zero:
                        row[var_index[(bd, rr, k)]] = f.add(
                            row[var_index[(bd, rr, k)]], v)
                rows.append(tuple(row))
                rhs.append(tblk.rows[rr][cc])
    # p l = bottom (also at bidegrees where the lift has no variables,
    # where it degenerates to 0 = bottom)
    for bd in sorted(B.dims):
        dB = B.dims[bd]
        dY = Y.dims.get(bd, 0)
        if dY == 0:
            continue
        dX = X.dims.get(bd, 0)
        pblk = problem.p.block_at(bd)
        bblk = problem.bottom.block_at(bd)
        for rr in range(dY):
            for cc in range(dB):
                row = new_row()
                if dX and bd in var_bds:
                    for k in range(dX):
                        v = pblk.rows[rr][k]
                        if v != f.zero:
                            row[var_index[(bd, k, cc)]] = f.add(
                                row[var_index[(bd, k, cc)]], v)
                rows.append(tuple(row))
                rhs.append(bblk.rows[rr][cc])
    # d_k l = l d_k
    indices = sorted(set(B.maps) | set(X.maps))
    for bd in sorted(B.dims):
        for i in indices:
            tgt = bd_add(bd, shift_of(i))
            dB = B.dims[bd]
            dXt = X.dims.get(tgt, 0)
            if dXt == 0:
                continue
            if bd not in var_bds and tgt not in var_bds:
                continue
            mB = B.block(i, bd)
            mX = X.block(i, bd)
            for rr in range(dXt):
                for cc in range(dB):
                    row = new_row()
                    if bd in var_bds:
                        for k in range(X.dims[bd]):
                            v = mX.rows[rr][k]
                            if v != f.zero:
                                row[var_index[(bd, k, cc)]] = f.add(
                                    row[var_index[(bd, k, cc)]], v)
                    if tgt in var_bds:
                        for k in range(B.dims.get(tgt, 0)):
                            v = mB.rows[k][cc]
                            if v != f.zero:
                                row[var_index[(tgt, rr, k)]] = f.sub(
                                    row[var_index[(tgt, rr, k)]], v)
                    if any(v != f.zero for v in row):
                        rows.append(tuple(row))
                        rhs.append(f.zero)
    system = Matrix.from_rows(f, rows) if rows else Matrix.zero(f, 0, nvars)
    sol, cert = linalg.solve_certified(system, tuple(rhs))
    if sol is None:
        return LiftResult(None, cert)
    blocks = {}
    for bd in var_bds:
        dB, dX = B.dims[bd], X.dims[bd]
        entries = {}
        for rr in range(dX):
            for cc in range(dB):
                v = sol[var_index[(bd, rr, cc)]]
                if v != f.zero:
                    entries[(rr, cc)] = v
        if entries:
            blocks[bd] = Matrix.from_entries(f, dX, dB, entries)
    lift = MCMorphism(B, X, blocks)
    assert validate_morphism(lift).ok
    assert morphisms_equal(compose(problem.i, lift), problem.top)
    assert morphisms_equal(compose(lift, problem.p), problem.bottom)
    return LiftResult(lift, None)


# -- cones --------------------------------------------------------------------

def cone(field, r, n=2):
    """The 2r-cell staircase used to kill the (r+1)-st page (a square for r=0)."""
    return with_bound(staircase(field, r), n)


def cone_projection(A, r):
    """The morphism cone (x) A -> A collapsing onto the top-corner line."""
    f = A.field
    C = cone(f, r, A.n)
    T = tensor_product(C, A)
    blocks = {}
    for bd in T.dims:
        lay = tensor_layout(C, A, bd)
        dA = A.dims.get(bd, 0)
        if dA == 0:
            continue
        entries = {}
        for bdC, bdA, dC, dA2, off in lay:
            if bdC == (0, 0):
                for a in range(dA2):
                    entries[(a, off + 0 * dA2 + a)] = f.one
        if entries:
            blocks[bd] = Matrix.from_entries(f, dA, T.dims[bd], entries)
    return MCMorphism(T, A, blocks)


def cone_infinity(field, r):
    """Two cells joined by the single map of index r, plus the homotopy
    that contracts it at stage r."""
    if r < 0:
        raise ValueError("the two-cell cone needs r >= 0")
    bot = (-r, 1 - r)
    mc = Multicomplex(field, INF, {(0, 0): 1, bot: 1},
                      {r: {(0, 0): Matrix.identity(field, 1)}})
    h = Homotopy(r, {0: {bot: Matrix.identity(field, 1)}})
    return mc, h


# -- homotopies ----------------------------------------------------------------

@dataclass
class Homotopy:
    """Family h_m of bidegree (r-m, r-m-1) blocks, m >= 0."""

    r: int
    maps: dict  # m -> {bidegree: Matrix}

    def block(self, fm_source, fm_target, m, bd):
        blk = self.maps.get(m, {}).get(bd)
        if blk is not None:
            return blk
        sh = (self.r - m, self.r - m - 1)
        return Matrix.zero(fm_source.field,
                           fm_target.dim_at(bd_add(bd, sh)),
                           fm_source.dim_at(bd))


def verify_r_homotopy(fm, gm, h, r):
    """Check sum_{i+j=m} (-1)^(i+r) d_i h_j + (-1)^i h_i d_j = (g-f or 0).

    Returns (bool, first failing (m, bidegree) or None).  The sweep stops
    past the largest m at which any term can be nonzero on the finite
    supports involved.
    """
    A, B = fm.source, fm.target
    f = A.field
    max_h = max(h.maps, default=0)
    max_d = max(A.max_map_index(), B.max_map_index(), 0)
    bound = max(r, max_h + max_d) + 1
    for m in range(bound + 1):
        sh = (r - m, r - m)
        for bd in sorted(A.dims):
            tgt = bd_add(bd, sh)
            nr = B.dims.get(tgt, 0)
            nc = A.dims[bd]
            if nr == 0:
                continue
            acc = Matrix.zero(f, nr, nc)
            for i in range(m + 1):
                j = m - i
                hj = h.block(A, B, j, bd)
                if not hj.is_zero():
                    term = B.block(i, bd_add(bd, (r - j, r - j - 1))) * hj
                    if (i + r) % 2:
                        term = -term
                    acc = acc + term
                dj = A.block(j, bd)
                if not dj.is_zero():
                    term = h.block(A, B, i, bd_add(bd, shift_of(j))) * dj
                    if i % 2:
                        term = -term
                    acc = acc + term
            want = Matrix.zero(f, nr, nc)
            if m == r:
                want = gm.block_at(bd) - fm.block_at(bd)
            if acc != want:
                return False, (m, bd)
    return True, None


def find_r_homotopy(fm, gm, r):
    """Linear solve for a stage-r homotopy from f to g, or None.

    This is a convenience search (the defining equations are linear in
    the unknown blocks); verify_r_homotopy re-checks any result.
    """
    A, B = fm.source, fm.target
    f = A.field
    boxA, boxB = A.support_box(), B.support_box()
    if boxA is None or boxB is None:
        return Homotopy(r, {})
    # h_m can only be nonzero when its shift connects the supports
    ms = []
    for m in range(0, 4 * (max(A.max_map_index(), B.max_map_index(), 1) + 1)
                   + r + (boxA.pmax - boxA.pmin) + (boxB.pmax - boxB.pmin) + 2):
        sh = (r - m, r - m - 1)
        if any(bd_add(bd, sh) in B.dims for bd in A.dims):
            ms.append(m)
    var_index = {}
    for m in ms:
        sh = (r - m, r - m - 1)
        for bd in sorted(A.dims):
            tgt = bd_add(bd, sh)
            dB = B.dims.get(tgt, 0)
            if dB == 0:
                continue
            for rr in range(dB):
                for cc in range(A.dims[bd]):
                    var_index[(m, bd, rr, cc)] = len(var_index)
    nvars = len(var_index)
    rows, rhs = [], []
    max_d = max(A.max_map_index(), B.max_map_index(), 0)
    bound = max([r] + [m + max_d for m in ms]) + 1 if ms else r + 1
    for m in range(bound + 1):
        sh = (r - m, r - m)
        for bd in sorted(A.dims):
            tgt = bd_add(bd, sh)
            nr = B.dims.get(tgt, 0)
            nc = A.dims[bd]
            if nr == 0:
                continue
            for rr in range(nr):
                for cc in range(nc):
                    row = [f.zero] * nvars
                    nz = False
                    for i in range(m + 1):
                        j = m - i
                        # (-1)^(i+r) d_i h_j term
                        mid = bd_add(bd, (r - j, r - j - 1))
                        dblk = B.maps.get(i, {}).get(mid)
                        if dblk is not None:
                            for k in range(B.dims.get(mid, 0)):
                                v = dblk.rows[rr][k]
                                if v != f.zero and (j, bd, k, cc) in var_index:
                                    val = f.neg(v) if (i + r) % 2 else v
                                    idx = var_index[(j, bd, k, cc)]
                                    row[idx] = f.add(row[idx], val)
                                    nz = True
                        # (-1)^i h_i d_j term
                        ablk = A.maps.get(j, {}).get(bd)
                        if ablk is not None:
                            src2 = bd_add(bd, shift_of(j))
                            for k in range(A.dims.get(src2, 0)):
                                v = ablk.rows[k][cc]
                                if v != f.zero and (i, src2, rr, k) in var_index:
                                    val = f.neg(v) if i % 2 else v
                                    idx = var_index[(i, src2, rr, k)]
                                    row[idx] = f.add(row[idx], val)
                                    nz = True
                    target = f.zero
                    if m == r:
                        gb = gm.block_at(bd)
                        fb = fm.block_at(bd)
                        target = f.sub(gb.rows[rr][cc], fb.rows[rr][cc])
                    if nz or target != f.zero:
                        rows.append(tuple(row))
                        rhs.append(target)
    system = Matrix.from_rows(f, rows) if rows else Matrix.zero(f, 0, nvars)
    sol = linalg.solve(system, tuple(rhs))
    if sol is None:
        return None
    maps = {}
    for (m, bd, rr, cc), idx in var_index.items():
        v = sol[idx]
        if v != f.zero:
            sh = (r - m, r - m - 1)
            dB = B.dims[bd_add(bd, sh)]
            blk = maps.setdefault(m, {}).setdefault(
                bd, [[f.zero] * A.dims[bd] for _ in range(dB)])
            blk[rr][cc] = v
    hm = Homotopy(r, {m: {bd: Matrix.from_rows(f, rows_)
                          for bd, rows_ in blocks.items()}
                      for m, blocks in maps.items()})
    ok, _ = verify_r_homotopy(fm, gm, hm, r)
    return hm if ok else None


def is_r_contractible(A, r):
    """Whether the identity is stage-r homotopic to zero."""
    from .multicomplex import identity_morphism
    idm = identity_morphism(A)
    zm = zero_morphism(A, A)
    return find_r_homotopy(zm, idm, r) is not None


# -- path objects --------------------------------------------------------------

def path_interval(field, r, n=2):
    """The stage-r interval: the staircase with a doubled top corner.

    The extra corner generator maps to the negative of the first step
    under d_1 (or of the vertical map when r = 0), so the two corner
    lines jointly split off the diagonal.
    """
    one = Matrix.identity(field, 1)
    f = field
    if r == 0:
        dims = {(0, 0): 2, (0, 1): 1}
        maps = {0: {(0, 0): Matrix(f, 1, 2, [(f.neg(f.one), f.one)])}}
        return with_bound(Multicomplex(f, 2, dims, maps), n)
    dims = {(0, 0): 2}
    d0, d1 = {}, {}
    d1[(0, 0)] = Matrix(f, 1, 2, [(f.neg(f.one), f.one)])
    for k in range(r):
        if k >= 1:
            dims[(-k, -k)] = 1
            d1[(-k, -k)] = one
            d0[(-k, -k)] = one
        dims[(-k - 1, -k)] = 1
    return with_bound(Multicomplex(f, 2, dims, {0: d0, 1: d1}), n)


@dataclass
class PathObject:
    obj: Multicomplex
    into: MCMorphism       # the equivalence A -> P_r(A)
    onto: MCMorphism       # the fibration P_r(A) -> A + A
    interval: Multicomplex
    pair: Multicomplex     # the direct sum A + A


def path_object(A, r):
    """Factor the diagonal of A through the stage-r interval tensor A."""
    f = A.field
    L = path_interval(f, r, A.n)
    P = tensor_product(L, A)
    ds = direct_sum(A, A)
    into_blocks, onto_blocks = {}, {}
    for bd in P.dims:
        lay = tensor_layout(L, A, bd)
        dA = A.dims.get(bd, 0)
        into_entries, onto_entries = {}, {}
        for bdL, bdA, dL, dA2, off in lay:
            if bdL == (0, 0):
                # interval basis there is (minus-corner, plus-corner)
                for a in range(dA2):
                    into_entries[(off + 0 * dA2 + a, a)] = f.one
                    into_entries[(off + 1 * dA2 + a, a)] = f.one
                    onto_entries[(a, off + 0 * dA2 + a)] = f.one
                    onto_entries[(dA2 + a, off + 1 * dA2 + a)] = f.one
        if dA and into_entries:
            into_blocks[bd] = Matrix.from_entries(f, P.dims[bd], dA, into_entries)
        if onto_entries:
            onto_blocks[bd] = Matrix.from_entries(
                f, ds.sum.dims.get(bd, 0), P.dims[bd], onto_entries)
    into = MCMorphism(A, P, into_blocks)
    onto = MCMorphism(P, ds.sum, onto_blocks)
    return PathObject(P, into, onto, L, ds.sum)


# -- generating sets -----------------------------------------------------------

@dataclass
class GeneratingSets:
    cofibrations: list
    trivial_cofibrations: list


def generating_sets(field, n, r, variant, window, pq_list):
    """Materialize the generating (trivial) cofibrations with generator
    bidegrees drawn from pq_list."""
    if variant not in ("Z", "E"):
        raise ValueError("variant must be 'Z' or 'E'")
    cof, triv = [], []

    def jmap(k, p, q):
        zw = zw_object(field, n, k, p, q, window)
        return {"kind": "J", "stage": k, "p": p, "q": q,
                "morphism": zero_morphism(zero_multicomplex(field, n), zw.mc)}

    def imap(k, p, q):
        iota, zw, bw = generating_morphism_iota(field, n, k, p, q, window)
        return {"kind": "I", "stage": k, "p": p, "q": q, "morphism": iota}

    for (p, q) in pq_list:
        if variant == "Z":
            cof.append(imap(r + 1, p, q))
            triv.append(jmap(0, p, q))
            if r > 0:
                triv.append(jmap(r, p, q))
        else:
            for k in range(1, r):
                cof.append(jmap(k, p, q))
            cof.append(imap(r + 1, p, q))
            for k in range(0, r + 1):
                triv.append(jmap(k, p, q))
    return GeneratingSets(cof, triv)
