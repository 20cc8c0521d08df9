"""Shared test utilities: independent oracles and corpus helpers."""

import itertools
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from multicx.graded import INF  # noqa: E402

FIXTURES = pathlib.Path(__file__).resolve().parents[1] / "fixtures"


def span_size(field, rows, p):
    """|span(rows)| over GF(p) by brute enumeration; rank = log_p of it."""
    vecs = {tuple(field.zero for _ in rows[0])} if rows else {()}
    if not rows:
        return 1
    vecs = set()
    for coeffs in itertools.product(range(p), repeat=len(rows)):
        acc = [field.zero] * len(rows[0])
        for c, row in zip(coeffs, rows):
            for k, v in enumerate(row):
                acc[k] = field.add(acc[k], field.mul(field.from_int(c), v))
        vecs.add(tuple(acc))
    return len(vecs)


def brute_rank(field, rows, p):
    size = span_size(field, rows, p)
    r = 0
    while p ** r < size:
        r += 1
    assert p ** r == size
    return r


def all_words_with_zero(s, k, maxletter):
    """All length-k sequences over {0, ..., maxletter} with the given sum."""
    if k == 0:
        if s == 0:
            yield ()
        return
    top = s if maxletter == INF else min(maxletter, s)
    for first in range(0, top + 1):
        for rest in all_words_with_zero(s - first, k - 1, maxletter):
            yield (first,) + rest


def brute_force_disk_dims(field, n, p, q, window):
    """Dimension table of the free one-generator object, computed the long
    way: all operator words (vertical letter included), modulo the span of
    every two-sided translate of the defining relations.

    Exponential in the window size; only usable on tiny windows.
    """
    from multicx import linalg
    from multicx.linalg import Matrix

    maxletter = window.pmax - window.pmin + window.qmax - window.qmin \
        if n == INF else n - 1
    dims = {}
    for bd in window.iter_bidegrees():
        s = p - bd[0]
        k = (bd[1] - q) + s
        if s < 0 or k < 0:
            continue
        words = [w for w in all_words_with_zero(s, k, maxletter)]
        if not words:
            continue
        index = {w: i for i, w in enumerate(words)}
        rel_rows = []
        # u * relation_l * w contexts of total length k and weight s
        for k1 in range(0, k - 1):
            k2 = k - 2 - k1
            for u in all_words_with_zero_range(k1, maxletter, s):
                su = sum(u)
                for l in range(0, s - su + 1):
                    s2 = s - su - l
                    for w in all_words_with_zero(s2, k2, maxletter):
                        row = [field.zero] * len(words)
                        nz = False
                        for i in range(0, l + 1):
                            j = l - i
                            if maxletter != INF and (i > maxletter or j > maxletter):
                                continue
                            full = u + (i, j) + w
                            if full in index:
                                val = field.one if i % 2 == 0 else field.neg(field.one)
                                row[index[full]] = field.add(row[index[full]], val)
                                nz = True
                        if nz:
                            rel_rows.append(tuple(row))
        rel = Matrix.from_rows(field, rel_rows) if rel_rows else \
            Matrix.zero(field, 0, len(words))
        d = len(words) - linalg.rank(rel)
        if d:
            dims[bd] = d
    return dims


def all_words_with_zero_range(k, maxletter, smax):
    for s in range(0, smax + 1):
        yield from all_words_with_zero(s, k, maxletter)


def diag_bidegrees(A, depth):
    """Support shifted up the diagonal: where stage data can be nonzero."""
    out = set()
    for (p, q) in A.dims:
        for j in range(depth):
            out.add((p + j, q + j))
    return sorted(out)
