import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from virtlink.errors import DimensionMismatch, NonSquare, NotUnimodular, OddDimension
from virtlink.poly import T, T1, T2, LaurentPoly, eq_up_to_units, specialize
from virtlink.seifert import (
    H,
    ACSeifertPair,
    BlockSeifert,
    alexander_ac,
    alexander_classical,
    det_bareiss,
    det_cofactor,
    det_exact,
    intersection_form,
    inverse_unimodular,
    lk_sigma,
    matmul,
    matsub,
    mvap,
    random_block_seifert,
    random_seifert_matrix,
    random_unimodular,
    thm31_check,
    transpose,
    trefoil_sum_seifert,
    vpm_from_block,
)

seeds = st.integers(0, 2**32)


def int_matrices(max_n=6, bound=5):
    return st.integers(0, max_n).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(-bound, bound), min_size=n, max_size=n), min_size=n, max_size=n
        )
    )


# -- determinants --------------------------------------------------------------

def test_det_examples():
    assert det_exact([]) == 1
    assert det_exact([[T, 1], [1, T]]) == T ** 2 - 1
    assert det_exact([[2, 3], [1, 4]]) == 5


def test_det_rejects_non_square():
    with pytest.raises(NonSquare):
        det_exact([[1, 2]])


@settings(max_examples=200)
@given(int_matrices())
def test_bareiss_matches_cofactor_on_integers(m):
    assert det_bareiss(m) == det_cofactor(m)


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(0, 5))
def test_bareiss_matches_cofactor_on_polynomials(seed, n):
    rng = random.Random(seed)

    def entry():
        return LaurentPoly({(rng.randint(-1, 2), rng.randint(0, 1)): rng.randint(-2, 2)
                            for _ in range(rng.randint(0, 2))}, 2)

    m = [[entry() for _ in range(n)] for _ in range(n)]
    assert det_bareiss(m) == det_cofactor(m)


def test_bareiss_handles_zero_pivots():
    m = [[0, 1, 2, 3, 4], [1, 0, 1, 1, 0], [2, 1, 0, 0, 1], [0, 0, 1, 0, 2], [1, 1, 1, 1, 0]]
    assert det_bareiss(m) == det_cofactor(m)
    assert det_bareiss([[0] * 5 for _ in range(5)]) == 0


def test_inverse_unimodular():
    assert inverse_unimodular(H) == [[-1, -1], [0, -1]]
    with pytest.raises(NotUnimodular):
        inverse_unimodular([[2, 0], [0, 1]])


@given(seeds)
def test_random_unimodular_inverts(seed):
    m = random_unimodular(4, random.Random(seed))
    assert abs(det_exact(m)) == 1
    assert matmul(m, inverse_unimodular(m)) == [[int(i == j) for j in range(4)] for i in range(4)]


# -- Alexander polynomials --------------------------------------------------------

def test_alexander_classical_examples():
    assert alexander_classical([]) == 1
    assert alexander_classical(H) == T ** 2 - T + 1
    assert alexander_classical([[1, 1], [0, -1]]) == -(T ** 2) + 3 * T - 1


def test_alexander_classical_errors():
    with pytest.raises(OddDimension):
        alexander_classical([[1]])
    with pytest.raises(NonSquare):
        alexander_classical([[1, 2]])


@pytest.mark.parametrize("g", [1, 2, 3])
def test_trefoil_sums_have_unit_alexander_at_one(g):
    assert abs(alexander_classical(trefoil_sum_seifert(g)).evaluate((1,))) == 1


def test_alexander_ac_examples():
    assert alexander_ac(ACSeifertPair([], [])) == 1
    assert alexander_ac(ACSeifertPair(H, H)) == (T - 1) ** 2
    with pytest.raises(DimensionMismatch):
        ACSeifertPair(H, [[1]])


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_alexander_ac_congruence_invariance(seed):
    rng = random.Random(seed)
    n = 2 * rng.randint(1, 2)
    vm = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
    vp = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
    m = random_unimodular(n, rng)
    mt = transpose(m)
    moved = ACSeifertPair(matmul(matmul(mt, vm), m), matmul(matmul(mt, vp), m))
    assert alexander_ac(moved) == alexander_ac(ACSeifertPair(vm, vp))


# -- block Seifert data -----------------------------------------------------------

@given(seeds, st.integers(0, 3))
def test_random_seifert_matrix_has_standard_form(seed, g):
    v = random_seifert_matrix(g, random.Random(seed))
    assert (matsub(v, transpose(v)) if v else []) == intersection_form(g)


def test_block_validation():
    with pytest.raises(OddDimension):
        BlockSeifert([[1]], [], [])
    with pytest.raises(DimensionMismatch):
        BlockSeifert(H, H, [[1, 0]])
    assert BlockSeifert(H, [], []).g2 == 0


def test_mvap_examples():
    assert mvap(BlockSeifert(H, [], [])) == T1 ** 2 - T1 + 1


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_mvap_at_t2_one_factors(seed):
    # at t2 = 1 the matrix AT - A^T is block triangular
    bs = random_block_seifert(random.Random(seed))
    a_j = [list(r) for r in bs.a_j]
    a_k = [list(r) for r in bs.a_k]
    assert specialize(mvap(bs), "t", 1) == alexander_classical(a_j) * det_exact(
        matsub(a_k, transpose(a_k)) if a_k else []
    )


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_mvap_torres_specializations(seed):
    bs = random_block_seifert(random.Random(seed), genuine=True)
    nabla = mvap(bs)
    assert eq_up_to_units(specialize(nabla, "t", 1), alexander_classical([list(r) for r in bs.a_j]))
    assert eq_up_to_units(specialize(nabla, 1, "t"), alexander_classical([list(r) for r in bs.a_k]))


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_mvap_symmetric_under_swapping_components(seed):
    bs = random_block_seifert(random.Random(seed))
    if not bs.a_k:
        return
    swapped = BlockSeifert(bs.a_k, bs.a_j, transpose([list(r) for r in bs.b]))
    p, q = mvap(bs), mvap(swapped)
    q_back = LaurentPoly({(b, a): c for (a, b), c in q.coeffs.items()}, 2)
    assert eq_up_to_units(p, q_back)


def test_vpm_examples():
    a_k = [[1, 2], [0, -1]]
    pair = vpm_from_block(BlockSeifert(H, a_k, [[0, 0], [0, 0]]))
    assert [list(r) for r in pair.v_minus] == a_k
    assert [list(r) for r in pair.v_plus] == transpose(a_k)
    pair = vpm_from_block(BlockSeifert(H, H, [[1, 0], [0, 0]]))
    assert [list(r) for r in pair.v_minus] == [[0, 1], [0, -1]]


def test_vpm_requires_unimodular_aj():
    with pytest.raises(NotUnimodular):
        vpm_from_block(BlockSeifert([[2, 0], [0, 1]], H, [[0, 0], [0, 0]]))


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_vpm_difference_is_ak_antisymmetrized(seed):
    bs = random_block_seifert(random.Random(seed))
    pair = vpm_from_block(bs)
    a_k = [list(r) for r in bs.a_k]
    diff = matsub([list(r) for r in pair.v_minus], [list(r) for r in pair.v_plus])
    assert diff == (matsub(a_k, transpose(a_k)) if a_k else [])


def test_lk_sigma_examples():
    assert lk_sigma(4, [0, 0], [1, 1], H) == 4
    assert lk_sigma(0, [1, 0], [0, 1], H) == 1
    assert lk_sigma(5, [1, 0], [1, 0], H) == 6
    with pytest.raises(DimensionMismatch):
        lk_sigma(0, [1], [1, 0], H)
    with pytest.raises(NotUnimodular):
        lk_sigma(0, [1, 0], [1, 0], [[2, 0], [0, 1]])


# -- the specialization identity ----------------------------------------------------

def test_thm31_examples():
    rep = thm31_check(BlockSeifert(H, [], []))
    assert rep.lhs == 1 and rep.rhs == 1 and rep.passed
    rep = thm31_check(BlockSeifert(H, H, [[0, 0], [0, 0]]))
    assert rep.lhs == T ** 2 - T + 1 and rep.passed and rep.sign == 1


def test_thm31_sign_follows_det_aj():
    a_j = [[1, 0], [-1, -1]]
    rep = thm31_check(BlockSeifert(a_j, H, [[1, 2], [0, 1]]))
    assert rep.sign == -1 and rep.passed


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_thm31_random(seed):
    assert thm31_check(random_block_seifert(random.Random(seed))).passed


def test_thm31_would_catch_a_sign_error():
    bs = random_block_seifert(random.Random(3))
    rep = thm31_check(bs)
    assert rep.lhs != -rep.rhs or rep.lhs.is_zero()


# -- fiber forms ----------------------------------------------------------------------

def test_intersection_form():
    assert intersection_form(0) == []
    assert intersection_form(1) == [[0, 1], [-1, 0]]
    f2 = intersection_form(2)
    assert f2[2][3] == 1 and f2[0][3] == 0
    for g in range(4):
        f = intersection_form(g)
        neg = [[-x for x in r] for r in f]
        assert transpose(f) == neg
        if g:
            assert inverse_unimodular(f) == neg


@pytest.mark.parametrize("g", [1, 2, 3])
def test_trefoil_sum_preserves_form(g):
    a = trefoil_sum_seifert(g)
    f = matsub(a, transpose(a))
    assert f == intersection_form(g)
    assert matmul(matmul(transpose(a), f), a) == f
