"""Named example objects and a seeded generator of random valid multicomplexes.

The random generator composes elementary valid pieces (single cells,
single-arrow two-cell objects, corners, staircases and tensor products of
those) by shifting, direct-summing and conjugating with random invertible
basis changes.  Validity is preserved at every step, so the output always
passes the relation validator; the conjugation makes the matrices dense
and field-dependent.
"""

import random

from . import linalg
from .graded import INF, Window, bd_add, shift_of
from .linalg import Matrix
from .multicomplex import (Multicomplex, direct_sum, shift_multicomplex,
                           single_cell, tensor_product, validate_multicomplex,
                           with_bound, zero_multicomplex, MCMorphism)


def corner(field, p=0, q=0, n=2):
    """Three cells: generator at (p, q), its d_1 image at (p-1, q) and a
    cell at (p-1, q-1) mapping onto the same image under d_0."""
    one = Matrix.identity(field, 1)
    dims = {(p, q): 1, (p - 1, q): 1, (p - 1, q - 1): 1}
    maps = {0: {(p - 1, q - 1): one}, 1: {(p, q): one}}
    return Multicomplex(field, n, dims, maps)


def corner_projection(field, p=0, q=0, n=2):
    """The surjection from the corner onto the single cell at (p, q)."""
    C = corner(field, p, q, n)
    K = single_cell(field, p, q, n)
    return MCMorphism(C, K, {(p, q): Matrix.identity(field, 1)})


def staircase(field, s, p=0, q=0, n=2):
    """The 2s-cell staircase with top-right corner at (p, q).

    Corner generators sit at (p-k, q-k) and step generators at
    (p-k-1, q-k); d_1 walks left along each step and d_0 climbs up from
    each lower corner.  For s = 0 this degenerates to the free bicomplex
    square on one generator.
    """
    one = Matrix.identity(field, 1)
    if s == 0:
        dims = {(p, q): 1, (p, q + 1): 1, (p - 1, q): 1, (p - 1, q + 1): 1}
        maps = {0: {(p, q): one, (p - 1, q): one},
                1: {(p, q): one, (p, q + 1): one}}
        return with_bound(Multicomplex(field, 2, dims, maps), n)
    dims = {}
    d0 = {}
    d1 = {}
    for k in range(s):
        dims[(p - k, q - k)] = 1
        dims[(p - k - 1, q - k)] = 1
        d1[(p - k, q - k)] = one
        if k >= 1:
            d0[(p - k, q - k)] = one
    return with_bound(Multicomplex(field, 2, dims, {0: d0, 1: d1}), n)


def arrow(field, i, p=0, q=0, n=INF):
    """Two cells joined by a single identity structure map d_i."""
    if n != INF and i >= n:
        raise ValueError(f"arrow index {i} needs bound > {i}")
    tgt = bd_add((p, q), shift_of(i))
    dims = {(p, q): 1, tgt: 1}
    maps = {i: {(p, q): Matrix.identity(field, 1)}}
    return Multicomplex(field, n, dims, maps)


def two_cell(field, i, p=0, q=0, n=INF):
    return arrow(field, i, p, q, n)


def random_invertible(field, d, rng):
    while True:
        m = Matrix(field, d, d, [[field.random(rng) for _ in range(d)]
                                 for _ in range(d)])
        if linalg.rank(m) == d:
            return m


def conjugate(A, rng):
    """Random basis change on every component; the result is isomorphic to A."""
    f = A.field
    us = {bd: random_invertible(f, d, rng) for bd, d in A.dims.items()}
    uinvs = {}
    for bd, u in us.items():
        d = u.nrows
        cols = [linalg.solve(u, linalg.unit_vector(f, d, k)) for k in range(d)]
        uinvs[bd] = Matrix.from_rows(f, cols).transpose()
    maps = {}
    for i, blocks in A.maps.items():
        new = {}
        for bd, m in blocks.items():
            tgt = bd_add(bd, shift_of(i))
            new[bd] = us[tgt] * m * uinvs[bd]
        maps[i] = new
    return Multicomplex(f, A.n, A.dims, maps, A.window)


def _piece(field, n, rng, box):
    """One random elementary valid piece fitting inside the given box."""
    kinds = ["cell", "arrow", "corner", "stair"]
    if (n == INF or n >= 3) and box.pmax - box.pmin >= 3:
        kinds.append("tensor")
    kind = rng.choice(kinds)
    max_i = 4 if n == INF else n - 1

    def spot(margin_p, margin_q_down, margin_q_up=0):
        p = rng.randint(box.pmin + margin_p, box.pmax)
        q = rng.randint(box.qmin + margin_q_down, box.qmax - margin_q_up)
        return p, q

    if kind == "cell":
        p, q = spot(0, 0)
        return single_cell(field, p, q, n)
    if kind == "arrow":
        i = rng.randint(0, min(max_i, box.pmax - box.pmin))
        while i >= 1 and i - 1 > box.qmax - box.qmin:
            i = rng.randint(0, min(max_i, box.pmax - box.pmin))
        p = rng.randint(box.pmin + i, box.pmax)
        if i <= 1:
            q = rng.randint(box.qmin, box.qmax - (1 - i))
        else:
            q = rng.randint(box.qmin + (i - 1), box.qmax)
        return arrow(field, i, p, q, n)
    if kind == "corner":
        p, q = rng.randint(box.pmin + 1, box.pmax), rng.randint(box.qmin + 1, box.qmax)
        return with_bound(corner(field, p, q, 2), n)
    if kind == "stair":
        smax = min(2, box.pmax - box.pmin - 1)
        s = rng.randint(1, max(1, smax))
        p = rng.randint(box.pmin + s + 1, box.pmax)
        q = rng.randint(box.qmin + s, box.qmax)
        return with_bound(staircase(field, s, p, q, 2), n)
    # tensor of two small arrows
    i1 = rng.randint(1, min(max_i, 2))
    i2 = rng.randint(1, min(max_i, 2))
    a = arrow(field, i1, 0, 0, n)
    b = arrow(field, i2, 0, 0, n)
    t = tensor_product(a, b)
    p = rng.randint(box.pmin + i1 + i2, box.pmax)
    qlo = box.qmin + max(0, (i1 - 1) + (i2 - 1))
    q = rng.randint(qlo, box.qmax)
    return shift_multicomplex(t, (p, q))


def random_multicomplex(field, n, rng, box=None, max_dim=3, pieces=None):
    """Random valid n-multicomplex with support in `box` and component
    dimensions at most `max_dim`."""
    if box is None:
        box = Window(-4, 0, -4, 0)
    if pieces is None:
        pieces = rng.randint(1, 3)
    A = zero_multicomplex(field, n)
    for _ in range(pieces):
        piece = _piece(field, n, rng, box)
        cand = direct_sum(A, piece).sum if A.dims else piece
        if any(d > max_dim for d in cand.dims.values()):
            continue
        A = cand
    if not A.dims:
        A = single_cell(field, rng.randint(box.pmin, box.pmax),
                        rng.randint(box.qmin, box.qmax), n)
    A = conjugate(A, rng)
    report = validate_multicomplex(A)
    assert report.ok, "random generator produced an invalid multicomplex"
    return A


def corpus(field, n, count, seed, box=None, max_dim=3):
    rng = random.Random(seed)
    return [random_multicomplex(field, n, rng, box=box, max_dim=max_dim)
            for _ in range(count)]
