import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from virtlink.braid import BraidWord, closure_summary, parse_braid
from virtlink.errors import (
    BadComponentCount,
    DimensionMismatch,
    IndexOutOfRange,
    LetterClash,
    NotFramed,
    NotPure,
)
from virtlink.milnor import (
    LongitudeSet,
    MMData,
    Residue,
    artin_apply,
    derivative_class,
    exponent_sum,
    free_inverse,
    free_reduce,
    longitudes_from_pure_braid,
    m123_from_words,
    mellor_melvin,
    mu123_from_longitudes,
    mu123_of_closure,
    parse_mm_word,
    parse_word,
    t123_from_homology,
    thm41_check,
)
from virtlink.poly import magnus_expand
from virtlink.seifert import intersection_form, matvec

BORROMEAN = "1 -2 1 -2 1 -2"
FIGURE_EIGHT_TYPE = [[1, 0], [-1, -1]]

seeds = st.integers(0, 2**32)


def random_pure_braid(rng: random.Random, n: int) -> BraidWord:
    """Products of conjugated squares of generators (all pure)."""
    letters = []
    for _ in range(rng.randint(0, 5)):
        conj = [rng.choice((1, -1)) * rng.randint(1, n - 1) for _ in range(rng.randint(0, 3))]
        g = rng.choice((1, -1)) * rng.randint(1, n - 1)
        letters += conj + [g, g] + [-x for x in reversed(conj)]
    return BraidWord(n, tuple(letters))


# -- residues and words -------------------------------------------------------

def test_residue_normalization():
    assert Residue(-1, 3) == Residue(2, 3)
    assert Residue(-1, 0).value == -1
    assert str(Residue(7, 3)) == "1 (mod 3)"


def test_word_parsing():
    assert parse_word("m1 m2 m1^-1 m2^-1") == ((1, 1), (2, 1), (1, -1), (2, -1))
    assert parse_word("x3^2") == ((3, 1), (3, 1))
    assert parse_mm_word("1+ 2- 3+") == ((1, 1), (2, -1), (3, 1))


def test_free_reduce():
    assert free_reduce(((1, 1), (2, 1), (2, -1), (1, -1))) == ()
    assert free_reduce(((1, 1), (1, 1))) == ((1, 1), (1, 1))


# -- Artin action ---------------------------------------------------------------

def test_artin_examples():
    x1 = ((1, 1),)
    assert artin_apply(BraidWord(2, ()), x1) == x1
    assert artin_apply(parse_braid("1", 2), x1) == ((1, 1), (2, 1), (1, -1))
    assert artin_apply(parse_braid("1", 2), ((2, 1),)) == x1
    with pytest.raises(IndexOutOfRange):
        artin_apply(parse_braid("1", 2), ((3, 1),))


@given(seeds)
def test_artin_inverse_letters_cancel(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 4)
    w = tuple((rng.randint(1, n), rng.choice((1, -1))) for _ in range(rng.randint(0, 8)))
    i = rng.randint(1, n - 1)
    assert artin_apply(BraidWord(n, (i, -i)), w) == free_reduce(w)
    assert artin_apply(BraidWord(n, (-i, i)), w) == free_reduce(w)


@given(seeds)
def test_artin_is_a_homomorphism(seed):
    rng = random.Random(seed)
    n = 3
    beta = BraidWord(n, tuple(rng.choice((1, -1)) * rng.randint(1, 2) for _ in range(5)))
    u = tuple((rng.randint(1, n), rng.choice((1, -1))) for _ in range(4))
    v = tuple((rng.randint(1, n), rng.choice((1, -1))) for _ in range(4))
    assert artin_apply(beta, u + v) == free_reduce(artin_apply(beta, u) + artin_apply(beta, v))
    assert artin_apply(beta, free_inverse(u)) == free_inverse(artin_apply(beta, u))


@given(seeds)
def test_artin_fixes_product_of_generators(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 5)
    beta = BraidWord(n, tuple(rng.choice((1, -1)) * rng.randint(1, n - 1) for _ in range(8)))
    full = tuple((i, 1) for i in range(1, n + 1))
    assert artin_apply(beta, full) == full


# -- longitudes -----------------------------------------------------------------------

def test_longitude_examples():
    assert longitudes_from_pure_braid(BraidWord(3, ())).words == ((), (), ())
    ls = longitudes_from_pure_braid(parse_braid("1 1", 2))
    assert exponent_sum(ls.words[0], 2) == 1 and exponent_sum(ls.words[0], 1) == 0
    assert ls.words[0] == parse_word("m1 m2 m1^-1")
    with pytest.raises(NotPure):
        longitudes_from_pure_braid(parse_braid("1", 2))


def test_borromean_longitudes_have_zero_exponent_sums():
    ls = longitudes_from_pure_braid(parse_braid(BORROMEAN, 3))
    assert all(exponent_sum(w, j) == 0 for w in ls.words for j in (1, 2, 3))


def test_longitude_set_validation():
    with pytest.raises(NotFramed):
        LongitudeSet((parse_word("m1"), (), ()))
    with pytest.raises(IndexOutOfRange):
        LongitudeSet((parse_word("m4"), (), ()))


@settings(max_examples=100)
@given(seeds, st.integers(2, 4))
def test_longitude_exponent_sums_are_linking_numbers(seed, n):
    beta = random_pure_braid(random.Random(seed), n)
    ls = longitudes_from_pure_braid(beta)
    cs = closure_summary(beta)
    for i in range(n):
        for j in range(n):
            if i != j:
                assert exponent_sum(ls.words[i], j + 1) == cs.lk[i][j]


@settings(max_examples=100)
@given(seeds)
def test_degree_two_antisymmetry_when_unlinked(seed):
    beta = random_pure_braid(random.Random(seed), 3)
    cs = closure_summary(beta)
    if any(cs.lk[i][j] for i in range(3) for j in range(3)):
        return
    s = magnus_expand(longitudes_from_pure_braid(beta).words[2], 2)
    assert s.coeff((1, 2)) == -s.coeff((2, 1))


# -- triple linking from longitudes and braids ------------------------------------------

def test_mu_from_longitudes_examples():
    comm = LongitudeSet(((), (), parse_word("m1 m2 m1^-1 m2^-1")))
    assert mu123_from_longitudes(comm, 0) == Residue(1, 0)
    assert mu123_from_longitudes(LongitudeSet(((), (), ())), 0) == Residue(0, 0)
    assert mu123_from_longitudes(LongitudeSet(((), (), parse_word("m1 m2"))), 3) == Residue(1, 3)
    with pytest.raises(BadComponentCount):
        mu123_from_longitudes(LongitudeSet(((), ())), 0)


def test_mu_of_closure_examples():
    mu = mu123_of_closure(parse_braid(BORROMEAN, 3))
    assert abs(mu.value) == 1 and mu.modulus == 0
    assert mu123_of_closure(BraidWord(3, ())) == Residue(0, 0)
    assert mu123_of_closure(parse_braid("1 1", 3)) == Residue(0, 1)
    with pytest.raises(NotPure):
        mu123_of_closure(parse_braid("1", 3))
    with pytest.raises(BadComponentCount):
        mu123_of_closure(parse_braid("1 1", 4))


def test_mirror_and_reversal_of_borromean():
    # length-k invariants pick up (-1)^(k-1) under mirroring, (-1)^k under reversal
    base = mu123_of_closure(parse_braid(BORROMEAN, 3)).value
    mirror = parse_braid(" ".join(str(-int(x)) for x in BORROMEAN.split()), 3)
    reverse = parse_braid(" ".join(reversed(BORROMEAN.split())), 3)
    assert mu123_of_closure(mirror).value == base
    assert mu123_of_closure(reverse).value == -base


# -- intersection words ---------------------------------------------------------------

def test_m123_examples():
    assert m123_from_words((), parse_mm_word("3+ 3- 3+"), parse_mm_word("2- 2+")) == 0
    assert m123_from_words((), (), parse_mm_word("1+ 2+")) == 1
    assert m123_from_words((), (), ()) == 0
    with pytest.raises(LetterClash):
        m123_from_words(parse_mm_word("1+"), (), ())


@given(st.lists(st.sampled_from([(3, 1), (3, -1)]), max_size=6),
       st.lists(st.sampled_from([(2, 1), (2, -1)]), max_size=6))
def test_ssf_shaped_words_have_zero_m123(w2, w3):
    assert m123_from_words((), tuple(w2), tuple(w3)) == 0


def test_mellor_melvin_examples():
    ssf = MMData((), parse_mm_word("3+"), parse_mm_word("2-"), 1, (0, 0, 0))
    assert mellor_melvin(ssf) == Residue(-1, 0)
    example = MMData((), parse_mm_word("3+ 3-"), parse_mm_word("2+ 2-"), -1, (0, 0, 0))
    assert mellor_melvin(example) == Residue(1, 0)
    assert mellor_melvin(MMData((), (), (), 0, (0, 0, 0))) == Residue(0, 0)


@given(st.integers(-20, 20), st.integers(1, 6), st.integers(-3, 3))
def test_mellor_melvin_is_periodic_in_t123(t, lk, shift):
    base = MMData((), (), parse_mm_word("1+ 2+"), t, (lk, 0, 0))
    moved = MMData((), (), parse_mm_word("1+ 2+"), t + shift * lk, (lk, 0, 0))
    assert mellor_melvin(base) == mellor_melvin(moved)
    assert mellor_melvin(base).modulus == lk


def test_mm_json():
    d = MMData.from_json('{"w1": "", "w2": "3+", "w3": "2-", "t123": -1, "lk": [0, 0, 0]}')
    assert d.t123 == -1 and d.w2 == ((3, 1),)
    assert MMData.from_json(d.to_json()) == d


# -- homology on the fiber --------------------------------------------------------------

def test_t123_examples():
    assert t123_from_homology([1, 0], [0, 1], 1) == 1
    assert t123_from_homology([2, 3], [2, 3], 1) == 0
    assert t123_from_homology([1, 0, 0, 0], [0, 0, 0, 1], 2) == 0
    with pytest.raises(DimensionMismatch):
        t123_from_homology([1], [0, 1], 1)


def test_derivative_class_examples():
    assert derivative_class([0, 0], 1) == [0, 0]
    assert derivative_class([1, 0], 1) == [0, 1]


@given(st.integers(1, 4).flatmap(lambda g: st.tuples(
    st.just(g), st.lists(st.integers(-9, 9), min_size=2 * g, max_size=2 * g))))
def test_derivative_class_inverts_form(args):
    g, v = args
    assert matvec(intersection_form(g), derivative_class(v, g)) == v


def test_thm41_examples():
    rep = thm41_check([1, 0], [0, 1], 1)
    assert rep.passed and rep.index == rep.t123 == 1
    assert rep.mu123 == Residue(-1, 0)
    zero = thm41_check([0, 0], [3, -2], 1)
    assert zero.index == 0 and zero.passed
    assert thm41_check([1, 0], [0, 1], 1, lk23=2).mu123 == Residue(1, 2)


@settings(max_examples=200)
@given(st.integers(1, 4).flatmap(lambda g: st.tuples(
    st.just(g),
    st.lists(st.integers(-5, 5), min_size=2 * g, max_size=2 * g),
    st.lists(st.integers(-5, 5), min_size=2 * g, max_size=2 * g))))
def test_thm41_on_trefoil_sums(args):
    g, k2, k3 = args
    assert thm41_check(k2, k3, g).passed


def test_thm41_needs_the_trefoil_hypothesis():
    # a unimodular figure-eight-type matrix reverses the intersection form
    rep = thm41_check([1, 0], [0, 1], 1, a_j=FIGURE_EIGHT_TYPE)
    assert not rep.passed
    assert rep.t123 == -rep.index
