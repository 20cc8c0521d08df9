"""Per-bidegree linear presentations of the free dg algebra on d_1, d_2, ...

A word (i_1, ..., i_k) with every i_t >= 1 has bidegree
(-sum, k - sum).  At a fixed bidegree both the word length and the total
weight are determined, so each graded component is a concrete
finite-dimensional space.  For a finite bound n the component is
quotiented by the span of all two-sided translates of the quadratic
elements sum_{i+j=k} (-1)^(i+1) d_i d_j (with both letters below n) for
n <= k <= 2n-2, which presents the ideal generated by the relations and
the discarded high generators.
"""

from . import linalg
from .graded import INF
from .linalg import Matrix


def word_bidegree(word):
    s = sum(word)
    return (-s, len(word) - s)


def vertical_degree(word):
    return len(word) - sum(word)


def compositions(total, parts, maxpart):
    """All compositions of `total` into `parts` parts in [1, maxpart], lex order."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if total < parts or (maxpart != INF and total > parts * maxpart):
        return
    top = total - parts + 1 if maxpart == INF else min(maxpart, total - parts + 1)
    for first in range(1, top + 1):
        for rest in compositions(total - first, parts - 1, maxpart):
            yield (first,) + rest


def s_terms(k, maxletter=INF):
    """Signed letter pairs of the quadratic element for index k, skipping
    letters above maxletter; empty for k = 1."""
    out = []
    for i in range(1, k):
        j = k - i
        if maxletter != INF and (i > maxletter or j > maxletter):
            continue
        out.append((1 if i % 2 == 1 else -1, (i, j)))
    return out


def delta0_word(word):
    """Raw expansion of the differential on one word, as {word: int sign}.

    Each letter d_i is replaced by its quadratic value with the Koszul
    sign of the vertical degree of the prefix.
    """
    out = {}
    for t, it in enumerate(word):
        prefix, suffix = word[:t], word[t + 1:]
        pref_sign = -1 if vertical_degree(prefix) % 2 else 1
        for sgn, (a, b) in s_terms(it):
            w = prefix + (a, b) + suffix
            out[w] = out.get(w, 0) + pref_sign * sgn
    return {w: c for w, c in out.items() if c}


def h_word(word):
    """The contracting homotopy on one word: strips a leading 1-letter into
    the next letter, zero otherwise."""
    if len(word) <= 1 or word[0] != 1:
        return {}
    return {(word[1] + 1,) + word[2:]: 1}


class CnComponent:
    """One graded component of the (possibly truncated) word algebra."""

    def __init__(self, field, words, relations):
        self.field = field
        self.words = words
        self.index = {w: i for i, w in enumerate(words)}
        self.sub = linalg.subquotient(
            field, len(words), Matrix.identity(field, len(words)), relations)
        self.dim = self.sub.dim

    def vector_of(self, mapping):
        """Dense raw-word vector from a {word: scalar} mapping."""
        f = self.field
        v = [f.zero] * len(self.words)
        for w, c in mapping.items():
            v[self.index[w]] = f.add(v[self.index[w]], c)
        return tuple(v)

    def project(self, raw_vec):
        return self.sub.project(raw_vec)

    def rep_words(self, k):
        """Raw-word expansion of the k-th basis representative."""
        f = self.field
        return {w: c for w, c in zip(self.words, self.sub.reps.rows[k])
                if c != f.zero}


class CnSpace:
    """All graded components of the word algebra with bound n, cached."""

    def __init__(self, field, n):
        self.field = field
        self.n = n
        self.maxletter = INF if n == INF else n - 1
        self._comps = {}
        self._mult = {}
        self._delta = {}

    def words_at(self, c1, c2):
        s = -c1
        m = c2 - c1
        if s < 0 or m < 0:
            return ()
        return tuple(compositions(s, m, self.maxletter))

    def component(self, c1, c2):
        key = (c1, c2)
        if key in self._comps:
            return self._comps[key]
        f = self.field
        words = self.words_at(c1, c2)
        rel_rows = []
        if self.n != INF and self.n >= 2 and words:
            index = {w: i for i, w in enumerate(words)}
            m = len(words[0])
            s = -c1
            for k in range(self.n, 2 * self.n - 1):
                terms = s_terms(k, self.maxletter)
                if not terms:
                    continue
                for m1 in range(0, m - 1):
                    m2 = m - 2 - m1
                    for su in range(m1, s - k + 1):
                        sv = s - k - su
                        if sv < m2:
                            continue
                        for u in compositions(su, m1, self.maxletter):
                            for v in compositions(sv, m2, self.maxletter):
                                row = [f.zero] * len(words)
                                nz = False
                                for sgn, (a, b) in terms:
                                    w = u + (a, b) + v
                                    if w in index:
                                        val = f.one if sgn > 0 else f.neg(f.one)
                                        row[index[w]] = f.add(row[index[w]], val)
                                        nz = True
                                if nz:
                                    rel_rows.append(tuple(row))
        relations = Matrix.from_rows(f, rel_rows) if rel_rows else \
            Matrix.zero(f, 0, len(words))
        comp = CnComponent(f, words, relations)
        self._comps[key] = comp
        return comp

    def dim(self, c1, c2):
        return self.component(c1, c2).dim

    def reduce(self, mapping):
        """Canonical form of a {word: scalar} element modulo the ideal."""
        f = self.field
        by_bd = {}
        for w, c in mapping.items():
            if c == f.zero:
                continue
            by_bd.setdefault(word_bidegree(w), {})[w] = c
        out = {}
        for bd in sorted(by_bd):
            comp = self.component(*bd)
            coords = comp.project(comp.vector_of(by_bd[bd]))
            amb = comp.sub.lift(coords)
            for w, c in zip(comp.words, amb):
                if c != f.zero:
                    out[w] = c
        return out

    def left_mult_matrix(self, letter, c1, c2):
        """Matrix of left multiplication by d_letter between basis reps."""
        key = (letter, c1, c2)
        if key in self._mult:
            return self._mult[key]
        f = self.field
        src = self.component(c1, c2)
        tgt = self.component(c1 - letter, c2 + 1 - letter)
        cols = []
        for k in range(src.dim):
            mapped = {(letter,) + w: c for w, c in src.rep_words(k).items()}
            cols.append(tgt.project(tgt.vector_of(mapped)))
        m = (Matrix.from_rows(f, cols).transpose()
             if cols else Matrix.zero(f, tgt.dim, 0))
        self._mult[key] = m
        return m

    def _delta_raw(self, mapping):
        f = self.field
        out = {}
        for w, c in mapping.items():
            for w2, sgn in delta0_word(w).items():
                val = f.mul(c, f.from_int(sgn))
                out[w2] = f.add(out.get(w2, f.zero), val)
        return out

    def delta_matrix(self, c1, c2):
        """Matrix of the differential between basis reps (target = (c1, c2+1)).

        Also confirms the relation span is stable under the differential,
        so the matrix genuinely descends to the quotient.
        """
        key = (c1, c2)
        if key in self._delta:
            return self._delta[key]
        from .errors import IllDefined
        f = self.field
        src = self.component(c1, c2)
        tgt = self.component(c1, c2 + 1)
        for row in src.sub.boundary_basis.rows:
            mapping = {w: c for w, c in zip(src.words, row) if c != f.zero}
            img = tgt.vector_of(self._delta_raw(mapping))
            if not tgt.sub.contains_in_boundaries(img):
                raise IllDefined(
                    f"differential does not preserve the relation span at {key}")
        cols = []
        for k in range(src.dim):
            img = tgt.vector_of(self._delta_raw(src.rep_words(k)))
            cols.append(tgt.project(img))
        m = (Matrix.from_rows(f, cols).transpose()
             if cols else Matrix.zero(f, tgt.dim, 0))
        self._delta[key] = m
        return m
