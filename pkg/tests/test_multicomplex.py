"""Category-level operations: validation, tensor, sums, pushouts."""

import random

import pytest

from multicx.corpus import (arrow, corner, corner_projection, random_multicomplex,
                            staircase)
from multicx.errors import FieldMismatch
from multicx.fields import GF2, GF7, QQ
from multicx.graded import INF, Window
from multicx.linalg import Matrix
from multicx.multicomplex import (compose, direct_sum, equal_dims, hom_space,
                                  identity_morphism, morphisms_equal, pushout,
                                  random_morphism, single_cell, swap_morphism,
                                  tensor_product, validate_morphism,
                                  validate_multicomplex, zero_morphism,
                                  zero_multicomplex)
from multicx.represent import disk
from multicx.spectral import compute_page


def broken_corner(field):
    one = Matrix.identity(field, 1)
    dims = {(0, 0): 1, (-1, 0): 1, (-1, 1): 1}
    maps = {0: {(-1, 0): one}, 1: {(0, 0): one}}
    from multicx.multicomplex import Multicomplex
    return Multicomplex(field, 2, dims, maps)


def test_corner_satisfies_relations():
    for field in (GF2, GF7, QQ):
        assert validate_multicomplex(corner(field, 2, -1)).ok


def test_zero_multicomplex_validates():
    assert validate_multicomplex(zero_multicomplex(GF2)).ok


def test_deliberate_defect_reports_l1():
    rep = validate_multicomplex(broken_corner(GF7))
    assert not rep.ok
    assert [(v.l, v.bidegree) for v in rep.violations] == [(1, (0, 0))]
    assert not rep.violations[0].matrix.is_zero()


def test_morphism_validation():
    C = corner(GF7)
    assert validate_morphism(identity_morphism(C)).ok
    assert validate_morphism(zero_morphism(C, C)).ok
    assert validate_morphism(corner_projection(GF7)).ok


def test_tensor_unit():
    rng = random.Random(0)
    A = random_multicomplex(GF7, 3, rng)
    U = single_cell(GF7, 0, 0, 3)
    T = tensor_product(A, U)
    assert equal_dims(T, A)
    assert validate_multicomplex(T).ok
    for at in A.dims:
        assert compute_page(T, 1, at).dim == compute_page(A, 1, at).dim


def test_interval_tensor_dims_match_decomposition():
    from multicx.modelcat import path_interval
    rng = random.Random(1)
    A = random_multicomplex(GF2, 2, rng)
    for r in (1, 2, 3):
        L = path_interval(GF2, r, 2)
        T = tensor_product(L, A)
        for (p, q), d in T.dims.items():
            want = A.dims.get((p, q), 0)
            for i in range(r):
                want += A.dims.get((p + i, q + i), 0)
                want += A.dims.get((p + i + 1, q + i), 0)
            assert d == want


def test_disk_tensor_corner_validates_windowed():
    D = disk(GF2, 3, 0, 0, Window(-4, 0, -4, 1))
    T = tensor_product(D.mc, corner(GF2, 0, 0, 3))
    assert T.window is not None
    assert validate_multicomplex(T).ok


def test_tensor_sign_convention_on_random_products():
    rng = random.Random(4)
    for n in (2, 3, INF):
        A = random_multicomplex(GF7, n, rng)
        B = random_multicomplex(GF7, n, rng)
        T = tensor_product(A, B)
        assert validate_multicomplex(T).ok


def test_symmetry_is_an_involutive_morphism():
    rng = random.Random(8)
    for n in (2, 3, INF):
        A = random_multicomplex(GF7, n, rng)
        B = random_multicomplex(GF7, n, rng)
        sw = swap_morphism(A, B)
        assert validate_morphism(sw).ok
        back = swap_morphism(B, A)
        assert morphisms_equal(compose(sw, back), identity_morphism(sw.source))


def test_direct_sum_dims_and_unit():
    rng = random.Random(2)
    A = random_multicomplex(GF2, 2, rng)
    Z = zero_multicomplex(GF2, 2)
    assert equal_dims(direct_sum(A, Z).sum, A)
    B = random_multicomplex(GF2, 2, rng)
    S = direct_sum(A, B).sum
    for bd in set(A.dims) | set(B.dims):
        assert S.dims.get(bd, 0) == A.dims.get(bd, 0) + B.dims.get(bd, 0)


def test_direct_sum_pages_add():
    rng = random.Random(6)
    A = random_multicomplex(GF7, 2, rng)
    B = random_multicomplex(GF7, 2, rng)
    S = direct_sum(A, B).sum
    for r in (1, 2):
        for bd in set(A.dims) | set(B.dims):
            assert compute_page(S, r, bd).dim == \
                compute_page(A, r, bd).dim + compute_page(B, r, bd).dim


def test_field_mismatch_raises():
    with pytest.raises(FieldMismatch):
        tensor_product(corner(GF2), corner(GF7))
    with pytest.raises(FieldMismatch):
        direct_sum(corner(GF2), corner(QQ))


def test_pushout_along_identity_is_the_other_leg():
    rng = random.Random(11)
    A = random_multicomplex(GF7, 2, rng)
    B = random_multicomplex(GF7, 2, rng)
    f = random_morphism(A, B, rng)
    po = pushout(f, identity_morphism(A))
    assert equal_dims(po.obj, B)
    assert validate_multicomplex(po.obj).ok
    # leg from B is an isomorphism in every bidegree
    from multicx import linalg
    for bd, d in B.dims.items():
        assert linalg.rank(po.leg_b.block_at(bd)) == d


def test_pushout_universal_property_on_random_cocones():
    rng = random.Random(13)
    A = random_multicomplex(GF2, 2, rng)
    B = random_multicomplex(GF2, 2, rng)
    C = random_multicomplex(GF2, 2, rng)
    f = random_morphism(A, B, rng)
    g = random_morphism(A, C, rng)
    po = pushout(f, g)
    assert validate_multicomplex(po.obj).ok
    assert validate_morphism(po.leg_b).ok
    assert validate_morphism(po.leg_c).ok
    assert morphisms_equal(compose(f, po.leg_b), compose(g, po.leg_c))
    # any commuting cocone factors through the pushout
    for T in (random_multicomplex(GF2, 2, rng), direct_sum(B, C).sum):
        for u in hom_space(po.obj, T)[:2]:
            uu = compose(po.leg_b, u)
            vv = compose(po.leg_c, u)
            ind = po.induced(uu, vv)
            assert morphisms_equal(ind, u)


def test_staircase_is_valid_at_any_bound():
    for s in (1, 2, 3):
        S = staircase(GF7, s)
        assert validate_multicomplex(S).ok
        from multicx.multicomplex import with_bound
        assert validate_multicomplex(with_bound(S, INF)).ok


def test_arrow_pieces_validate():
    for i in (0, 1, 2, 3):
        assert validate_multicomplex(arrow(GF7, i, 0, 0, INF)).ok
