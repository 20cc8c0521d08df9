"""Bigraded bookkeeping: bidegrees, windows and graded maps.

Bidegrees are plain (p, q) integer tuples.  A structure map of index i has
shift (-i, 1-i): it sends the (p, q) component into (p-i, q+1-i).
"""

from . import linalg
from .errors import ShapeMismatch, WindowTooSmall
from .linalg import Matrix

INF = float("inf")


def shift_of(i):
    """Bidegree shift of the i-th structure map."""
    return (-i, 1 - i)


def bd_add(a, b):
    return (a[0] + b[0], a[1] + b[1])


def bd_sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


class Window:
    """Closed bidegree box [pmin, pmax] x [qmin, qmax]."""

    __slots__ = ("pmin", "pmax", "qmin", "qmax")

    def __init__(self, pmin, pmax, qmin, qmax):
        if pmin > pmax or qmin > qmax:
            raise ValueError("empty window")
        self.pmin, self.pmax, self.qmin, self.qmax = pmin, pmax, qmin, qmax

    def contains(self, bd):
        p, q = bd
        return self.pmin <= p <= self.pmax and self.qmin <= q <= self.qmax

    def contains_box(self, other):
        return (self.pmin <= other.pmin and other.pmax <= self.pmax
                and self.qmin <= other.qmin and other.qmax <= self.qmax)

    def inflate(self, m):
        return Window(self.pmin - m, self.pmax + m, self.qmin - m, self.qmax + m)

    def intersect(self, other):
        if other is None:
            return self
        pmin, pmax = max(self.pmin, other.pmin), min(self.pmax, other.pmax)
        qmin, qmax = max(self.qmin, other.qmin), min(self.qmax, other.qmax)
        if pmin > pmax or qmin > qmax:
            raise WindowTooSmall("window intersection is empty")
        return Window(pmin, pmax, qmin, qmax)

    def shift(self, bd):
        return Window(self.pmin + bd[0], self.pmax + bd[0],
                      self.qmin + bd[1], self.qmax + bd[1])

    def erode_by(self, bds):
        """Largest box W' with W' + bd inside self for every bd in bds."""
        bds = list(bds)
        if not bds:
            return self
        pmin = max(self.pmin - bd[0] for bd in bds)
        pmax = min(self.pmax - bd[0] for bd in bds)
        qmin = max(self.qmin - bd[1] for bd in bds)
        qmax = min(self.qmax - bd[1] for bd in bds)
        if pmin > pmax or qmin > qmax:
            raise WindowTooSmall("window erosion is empty")
        return Window(pmin, pmax, qmin, qmax)

    def iter_bidegrees(self):
        for q in range(self.qmax, self.qmin - 1, -1):
            for p in range(self.pmin, self.pmax + 1):
                yield (p, q)

    def as_tuple(self):
        return (self.pmin, self.pmax, self.qmin, self.qmax)

    def __eq__(self, other):
        return isinstance(other, Window) and self.as_tuple() == other.as_tuple()

    def __hash__(self):
        return hash(self.as_tuple())

    def __repr__(self):
        return f"Window(p=[{self.pmin},{self.pmax}], q=[{self.qmin},{self.qmax}])"


class GradedMap:
    """Bidegree-homogeneous linear map between two bigraded modules.

    blocks[bd] is the matrix of the component sent from source bidegree bd
    to bd + shift; missing blocks are zero.  Block shapes are validated
    against the dimension maps on construction.
    """

    def __init__(self, field, shift, source_dims, target_dims, blocks):
        self.field = field
        self.shift = shift
        self.source_dims = dict(source_dims)
        self.target_dims = dict(target_dims)
        self.blocks = {}
        for bd, m in blocks.items():
            if m.is_zero():
                continue
            nr = self.target_dims.get(bd_add(bd, shift), 0)
            nc = self.source_dims.get(bd, 0)
            if (m.nrows, m.ncols) != (nr, nc):
                raise ShapeMismatch(
                    f"block at {bd}: got {m.nrows}x{m.ncols}, expected {nr}x{nc}")
            self.blocks[bd] = m

    def block(self, bd):
        m = self.blocks.get(bd)
        if m is not None:
            return m
        nr = self.target_dims.get(bd_add(bd, self.shift), 0)
        nc = self.source_dims.get(bd, 0)
        return Matrix.zero(self.field, nr, nc)


def kernel_of(gmap, at):
    """Canonical echelon basis of the kernel of the block at `at` (rows)."""
    return linalg.kernel(gmap.block(at))


def image_of(gmap, at):
    """Canonical echelon basis of the image of the block at `at` (rows)."""
    return linalg.column_space(gmap.block(at))


def solve_at(gmap, target_bd, target_vec):
    """A preimage of target_vec (living at target_bd) under gmap, or None.

    On failure the returned certificate records the rank jump that proves
    target_vec is outside the column space.
    """
    src_bd = bd_sub(target_bd, gmap.shift)
    return linalg.solve_certified(gmap.block(src_bd), target_vec)
