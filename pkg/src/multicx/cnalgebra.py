"""The dg algebra of higher-differential symbols, scalar-change functors
between bounds, and the two half-plane truncation functors.

Elements are linear combinations of words in the letters d_1, d_2, ...;
the differential sends d_k to the alternating quadratic element
sum_{i+j=k} (-1)^(i+1) d_i d_j (zero for k = 1) and extends as a
derivation with the Koszul sign of the vertical degree.  For a finite
bound n, elements are kept in canonical form modulo the ideal generated
by the letters d_k and quadratic elements with k >= n.
"""

from . import linalg
from .errors import IllDefined, ShapeMismatch, WindowTooSmall
from .graded import INF, shift_of, bd_add
from .linalg import Matrix
from .multicomplex import (MCMorphism, Multicomplex, quotient_by_subspaces,
                           saturate, with_bound)
from .words import CnSpace, compositions, delta0_word, h_word, s_terms

_SPACES = {}


def _space(field, n):
    key = (field.name, n)
    if key not in _SPACES:
        _SPACES[key] = CnSpace(field, n)
    return _SPACES[key]


class CnElement:
    """Linear combination of words; the empty word is the unit."""

    __slots__ = ("field", "n", "terms")

    def __init__(self, field, terms, n=INF):
        self.field = field
        self.n = n
        clean = {w: c for w, c in terms.items() if c != field.zero}
        if n != INF:
            for w in clean:
                if any(x >= n for x in w):
                    raise ShapeMismatch(f"word {w} has letters above bound {n}")
            clean = _space(field, n).reduce(clean)
        self.terms = dict(sorted(clean.items()))

    @classmethod
    def zero(cls, field, n=INF):
        return cls(field, {}, n)

    @classmethod
    def unit(cls, field, n=INF):
        return cls(field, {(): field.one}, n)

    @classmethod
    def generator(cls, field, i, n=INF):
        return cls(field, {(i,): field.one}, n)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, CnElement) and self.field == other.field
                and self.n == other.n and self.terms == other.terms)

    def __hash__(self):
        return hash((self.field, self.n, tuple(self.terms.items())))

    def __add__(self, other):
        f = self.field
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = f.add(terms.get(w, f.zero), c)
        return CnElement(f, terms, self.n)

    def __neg__(self):
        f = self.field
        return CnElement(f, {w: f.neg(c) for w, c in self.terms.items()}, self.n)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        f = self.field
        return CnElement(f, {w: f.mul(c, v) for w, v in self.terms.items()}, self.n)

    def __mul__(self, other):
        f = self.field
        terms = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                terms[w] = f.add(terms.get(w, f.zero), f.mul(c1, c2))
        return CnElement(f, terms, self.n)

    def max_weight(self):
        return max((sum(w) for w in self.terms), default=0)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for w, c in self.terms.items():
            word = "".join(f"d{i}" for i in w) or "1"
            bits.append(f"{c}*{word}")
        return " + ".join(bits)


def s_element(field, k, n=INF):
    """The quadratic value of the differential on d_k (zero for k = 1)."""
    if k < 1:
        raise ValueError("index must be >= 1")
    terms = {}
    maxletter = INF if n == INF else n - 1
    for sgn, (i, j) in s_terms(k, maxletter):
        terms[(i, j)] = field.from_int(sgn)
    return CnElement(field, terms, n)


def delta0(x):
    """The differential, extended as a derivation over every term."""
    f = x.field
    terms = {}
    for w, c in x.terms.items():
        for w2, sgn in delta0_word(w).items():
            if x.n != INF and any(t >= x.n for t in w2):
                continue
            terms[w2] = f.add(terms.get(w2, f.zero), f.mul(c, f.from_int(sgn)))
    return CnElement(f, terms, x.n)


def contracting_h(x):
    """The contracting homotopy: chops a leading d_1 into the next letter."""
    if x.n != INF:
        raise ShapeMismatch("the contracting homotopy lives on the unbounded algebra")
    f = x.field
    terms = {}
    for w, c in x.terms.items():
        for w2, sgn in h_word(w).items():
            terms[w2] = f.add(terms.get(w2, f.zero), f.mul(c, f.from_int(sgn)))
    return CnElement(f, terms, INF)


def phi_quotient(x, n):
    """Project onto the bound-n quotient: kill high letters, reduce the rest."""
    if x.n != INF and x.n < n:
        raise ShapeMismatch(f"cannot lower the quotient from bound {x.n} to {n}")
    f = x.field
    kept = {w: c for w, c in x.terms.items() if all(t < n for t in w)}
    return CnElement(f, kept, n)


def in_ideal(x, n):
    """Membership of an unbounded element in the kernel of the bound-n quotient."""
    return phi_quotient(x, n).is_zero()


def iter_words(max_weight, maxletter=INF):
    """All nonempty words of weight up to the bound, in (weight, length, lex) order."""
    for s in range(1, max_weight + 1):
        for m in range(1, s + 1):
            yield from compositions(s, m, maxletter)


def check_dg_identities(field, max_weight=8):
    """Exhaustive weight-bounded verification of the homotopy equations.

    Returns a report dict; `ok` is True when the differential squares to
    zero and the homotopy contracts everything outside the span of the
    unit and d_1.
    """
    failures = []
    count = 0
    for w in iter_words(max_weight):
        count += 1
        x = CnElement(field, {w: field.one})
        if not delta0(delta0(x)).is_zero():
            failures.append(("delta0^2", w))
        hx = delta0(contracting_h(x)) + contracting_h(delta0(x))
        if w == (1,):
            if not hx.is_zero():
                failures.append(("homotopy-d1", w))
        elif not (hx - x).is_zero():
            failures.append(("homotopy", w))
    unit = CnElement.unit(field)
    if not (delta0(contracting_h(unit)) + contracting_h(delta0(unit))).is_zero():
        failures.append(("homotopy-unit", ()))
    return {"ok": not failures, "failures": failures,
            "words_checked": count + 1, "max_weight": max_weight}


# -- change of scalars between bounds ---------------------------------------

def restrict_scalars(M, l):
    """View an n-bounded multicomplex as l-bounded (l >= n); data unchanged."""
    if l != INF and (M.n == INF or l < M.n):
        raise ShapeMismatch(f"cannot restrict from bound {M.n} to smaller bound {l}")
    return with_bound(M, l)


def extend_scalars(M, n):
    """Push an l-bounded multicomplex down to bound n <= l.

    The result is the quotient of M by the smallest subcomplex (closed
    under every structure map, including d_0) containing the images of
    all d_k with k >= n.  Returns (quotient, unit) where unit is the
    natural projection M -> quotient viewed back at bound l.
    """
    if M.n != INF and n > M.n:
        raise ShapeMismatch(f"extension target {n} exceeds bound {M.n}")
    f = M.field
    seeds = {}
    for k in sorted(M.maps):
        if k < n:
            continue
        for bd, blk in M.maps[k].items():
            tgt = bd_add(bd, shift_of(k))
            rows = [blk.apply(linalg.unit_vector(f, blk.ncols, c))
                    for c in range(blk.ncols)]
            rows = [v for v in rows if any(x != f.zero for x in v)]
            if rows:
                prev = seeds.get(tgt)
                m = Matrix.from_rows(f, rows)
                seeds[tgt] = m if prev is None else linalg.vstack([prev, m])
    killed = saturate(M, seeds)
    Q, proj, _ = quotient_by_subspaces(M, killed)
    for i in Q.maps:
        if i >= n:
            raise IllDefined("a high structure map survived the extension quotient")
    Q2 = Multicomplex(f, n, Q.dims, Q.maps, Q.window)
    unit = MCMorphism(M, with_bound(Q2, M.n), proj.blocks)
    return Q2, unit


# -- half-plane truncations --------------------------------------------------

def truncate_left_halfplane(M):
    """Left adjoint to including multicomplexes supported in p <= 0.

    Quotients away the subcomplex generated by everything in p > 0;
    returns (truncation, projection).
    """
    f = M.field
    seeds = {bd: Matrix.identity(f, d)
             for bd, d in M.dims.items() if bd[0] > 0}
    killed = saturate(M, seeds)
    Q, proj, _ = quotient_by_subspaces(M, killed)
    if any(bd[0] > 0 for bd in Q.dims):
        raise IllDefined("left truncation left support in p > 0")
    return Q, proj


def truncate_upper_halfplane(A):
    """Left adjoint to including multicomplexes supported in q >= 0.

    Componentwise: unchanged for q > 0, the cokernel of the incoming
    vertical map for q = 0, zero below.  Returns (truncation, projection).
    """
    if A.window is not None:
        raise WindowTooSmall("upper truncation needs a complete object")
    f = A.field
    seeds = {}
    for bd, d in A.dims.items():
        if bd[1] < 0:
            seeds[bd] = Matrix.identity(f, d)
        elif bd[1] == 0:
            below = (bd[0], -1)
            blk = A.maps.get(0, {}).get(below)
            if blk is not None:
                rows = [blk.apply(linalg.unit_vector(f, blk.ncols, c))
                        for c in range(blk.ncols)]
                rows = [v for v in rows if any(x != f.zero for x in v)]
                if rows:
                    seeds[bd] = Matrix.from_rows(f, rows)
    Q, proj, _ = quotient_by_subspaces(A, seeds)
    if any(bd[1] < 0 for bd in Q.dims):
        raise IllDefined("upper truncation left support in q < 0")
    return Q, proj
