"""Word-algebra identities, quotients between bounds, half-plane truncations."""

import random

import pytest

from multicx.cnalgebra import (CnElement, check_dg_identities, contracting_h,
                               delta0, extend_scalars, in_ideal, iter_words,
                               phi_quotient, restrict_scalars, s_element,
                               truncate_left_halfplane,
                               truncate_upper_halfplane)
from multicx.corpus import arrow, corner, random_multicomplex, staircase
from multicx.errors import ShapeMismatch, WindowTooSmall
from multicx.fields import GF2, GF7, QQ
from multicx.graded import INF, Window
from multicx.multicomplex import (compose, equal_dims, hom_space,
                                  morphisms_equal, shift_multicomplex,
                                  validate_morphism, validate_multicomplex)
from multicx.represent import disk, zw_object
from multicx.spectral import compute_page


def test_quadratic_values():
    assert s_element(QQ, 1).is_zero()
    assert s_element(QQ, 2).terms == {(1, 1): QQ.one}
    assert s_element(QQ, 3).terms == {(1, 2): QQ.one, (2, 1): QQ.neg(QQ.one)}


def test_differential_on_generators():
    assert delta0(CnElement.generator(QQ, 1)).is_zero()
    assert delta0(CnElement.generator(QQ, 2)) == s_element(QQ, 2)
    for i in (3, 4, 5):
        assert delta0(CnElement.generator(QQ, i)) == s_element(QQ, i)


def test_differential_squares_to_zero_up_to_weight_eight():
    for w in iter_words(8):
        x = CnElement(QQ, {w: QQ.one})
        assert delta0(delta0(x)).is_zero(), w


def test_homotopy_on_short_words():
    d1 = CnElement.generator(QQ, 1)
    d2 = CnElement.generator(QQ, 2)
    assert contracting_h(d1 * d2).terms == {(3,): QQ.one}
    assert contracting_h(d2 * d1).is_zero()
    assert contracting_h(CnElement.unit(QQ)).is_zero()


def test_homotopy_contracts_everything_but_unit_and_first_letter():
    rep = check_dg_identities(QQ, max_weight=8)
    assert rep["ok"], rep["failures"][:5]
    rep7 = check_dg_identities(GF7, max_weight=6)
    assert rep7["ok"]


def test_quotient_kills_the_square_of_the_first_letter():
    d1 = CnElement.generator(QQ, 1)
    assert phi_quotient(d1 * d1, 2).is_zero()
    assert not phi_quotient(d1, 2).is_zero()
    assert phi_quotient(CnElement.generator(QQ, 4), 4).is_zero()


def test_quotient_commutes_with_differential():
    for n in (2, 3, 4):
        for w in iter_words(6):
            x = CnElement(QQ, {w: QQ.one})
            assert phi_quotient(delta0(x), n) == delta0(phi_quotient(x, n)), (n, w)


def test_homotopy_preserves_the_kernel_ideal():
    d1 = CnElement.generator(QQ, 1)
    d2 = CnElement.generator(QQ, 2)
    for n in (3, 4):
        smalls = [CnElement.unit(QQ), d1, d2, d1 * d1, d2 * d1,
                  CnElement.generator(QQ, 3)]
        for k in (n, n + 1, n + 2):
            dk = CnElement.generator(QQ, k)
            dk1 = CnElement.generator(QQ, k + 1)
            Sk = s_element(QQ, k)
            Sk1 = s_element(QQ, k + 1)
            for c in smalls:
                assert contracting_h(dk * c).is_zero()
                assert contracting_h(Sk * c) == dk * c
                assert contracting_h(d1 * dk * c) == dk1 * c
                assert contracting_h(d1 * Sk * c) == (-(Sk1 * c)) + (d1 * dk * c)
                for y in (Sk * c, d1 * dk * c, d1 * Sk * c):
                    assert in_ideal(y, n) and in_ideal(contracting_h(y), n)


def test_bounded_elements_are_kept_reduced():
    x = CnElement(GF7, {(1, 1): GF7.one}, n=2)
    assert x.is_zero()
    with pytest.raises(ShapeMismatch):
        CnElement(GF7, {(3,): GF7.one}, n=2)


def test_restriction_is_the_identity_on_data():
    C = corner(GF2, 0, 0, 2)
    R = restrict_scalars(C, INF)
    assert R.n == INF and R.dims == C.dims and R.maps == C.maps
    assert validate_multicomplex(R).ok
    with pytest.raises(ShapeMismatch):
        restrict_scalars(R, 2)


def test_extension_after_restriction_is_the_identity():
    rng = random.Random(0)
    for n in (2, 3):
        A = random_multicomplex(GF7, n, rng)
        R = restrict_scalars(A, INF)
        Q, unit = extend_scalars(R, n)
        assert equal_dims(Q, A)
        assert validate_multicomplex(Q).ok
        assert validate_morphism(unit).ok
        for r in (1, 2):
            for at in A.dims:
                assert compute_page(Q, r, at).dim == compute_page(A, r, at).dim


def test_extension_of_representers_gives_staircases():
    for n in (3, 4, INF):
        for s in (1, 2, 3):
            W = Window(-8, 1, -8, 2)
            Z = zw_object(GF2, n, s, 0, 0, W)
            Q, unit = extend_scalars(Z.mc, 2)
            assert validate_multicomplex(Q).ok
            inner = Window(-4, 0, -4, 1)
            assert equal_dims(Q, staircase(GF2, s), inner), (n, s)
            assert validate_morphism(unit).ok


def test_extension_of_disks_drops_to_lower_bound_disks():
    W = Window(-5, 0, -5, 1)
    for hi, lo in ((3, 2), (4, 2), (4, 3), (INF, 2), (INF, 3)):
        Dh = disk(GF2, hi, 0, 0, W)
        Q, _ = extend_scalars(Dh.mc, lo)
        Dl = disk(GF2, lo, 0, 0, W)
        inner = Window(-3, 0, -3, 1)
        assert equal_dims(Q, Dl.mc, inner), (hi, lo)


def test_left_truncation_hand_examples():
    # already left of the axis: unchanged
    M = random_multicomplex(GF7, 2, random.Random(1))
    T, proj = truncate_left_halfplane(M)
    assert T.dims == M.dims and validate_morphism(proj).ok
    # free object generated at p = 1 dies entirely
    D = disk(GF7, INF, 1, 0, Window(-4, 1, -4, 1))
    T2, _ = truncate_left_halfplane(D.mc)
    assert not T2.dims
    # corner with generator at p = 1: only the lower-left cell survives
    T3, _ = truncate_left_halfplane(corner(GF7, 1, 5, 2))
    assert T3.dims == {(0, 4): 1}
    assert validate_multicomplex(T3).ok


def test_upper_truncation_hand_examples():
    B = random_multicomplex(GF7, 2, random.Random(2))
    Bup = shift_multicomplex(B, (0, 8))
    U, proj = truncate_upper_halfplane(Bup)
    assert U.dims == Bup.dims and validate_morphism(proj).ok
    # a vertical identity arrow into the axis dies
    U2, _ = truncate_upper_halfplane(arrow(GF7, 0, 0, -1, 2))
    assert not U2.dims
    # corner on the axis keeps only its generator cell
    U3, _ = truncate_upper_halfplane(corner(GF7, 3, 0, 2))
    assert U3.dims == {(3, 0): 1}
    assert validate_multicomplex(U3).ok


def test_upper_truncation_requires_complete_support():
    D = disk(GF2, 2, 0, 0, Window(-3, 0, -3, 1))
    with pytest.raises(WindowTooSmall):
        truncate_upper_halfplane(D.mc)


def test_scalar_change_adjunction_counts():
    rng = random.Random(3)
    for _ in range(8):
        M = random_multicomplex(GF2, 3, rng)
        N = random_multicomplex(GF2, 2, rng)
        pM, _ = extend_scalars(M, 2)
        assert len(hom_space(pM, N)) == len(hom_space(M, restrict_scalars(N, 3)))


def test_truncation_adjunction_counts():
    rng = random.Random(4)
    for _ in range(8):
        M = random_multicomplex(GF2, 2, rng, box=Window(-3, 2, -3, 1))
        N = random_multicomplex(GF2, 2, rng, box=Window(-4, 0, -3, 1))
        tM, _ = truncate_left_halfplane(M)
        assert len(hom_space(tM, N)) == len(hom_space(M, N))
    for _ in range(8):
        M = random_multicomplex(GF2, 2, rng, box=Window(-3, 1, -2, 2))
        N = random_multicomplex(GF2, 2, rng, box=Window(-3, 1, 0, 3))
        tM, _ = truncate_upper_halfplane(M)
        assert len(hom_space(tM, N)) == len(hom_space(M, N))


def test_adjunction_unit_factorization():
    # every morphism to a left-half-plane object factors through the unit
    rng = random.Random(5)
    M = random_multicomplex(GF2, 2, rng, box=Window(-2, 2, -2, 1))
    N = random_multicomplex(GF2, 2, rng, box=Window(-3, 0, -2, 1))
    tM, proj = truncate_left_halfplane(M)
    for f in hom_space(M, N):
        fits = [g for g in hom_space(tM, N)
                if morphisms_equal(compose(proj, g), f)]
        assert len(fits) == 1
