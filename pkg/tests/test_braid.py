import itertools
from functools import lru_cache

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from braidlab.braid import (
    NotPure,
    PureBraid,
    SigmaBraid,
    a_generator,
    artin_action,
    braid_is_trivial,
    braids_equal,
    commutator,
    delete_strand,
    double_strand,
    is_brunnian,
    is_qbrunnian,
    linking_matrix,
    permutation,
    projection_gcd,
    theta,
    theta_generator,
)
from braidlab.freelie import Alphabet
from braidlab.simplicial import face_fs1
from braidlab.words import FreeWord, GroupHom

from strategies import nontrivial_words, pure_braids, sigma_words, words

T = sympy.Symbol("t")


@lru_cache(maxsize=None)
def _burau_letter(n, i, e):
    M = sympy.eye(n)
    M[i - 1, i - 1], M[i - 1, i] = 1 - T, T
    M[i, i - 1], M[i, i] = 1, 0
    return M if e > 0 else M.inv().applyfunc(sympy.simplify)


def burau(b):
    """Unreduced Burau matrix; an independent equality oracle, faithful for n <= 3."""
    M = sympy.eye(b.n)
    for i, e in b.word:
        M = (M * _burau_letter(b.n, i, e)).applyfunc(sympy.expand)
    return M


def s(n, *letters):
    return SigmaBraid(n, tuple((abs(x), 1 if x > 0 else -1) for x in letters))


# -- basics -------------------------------------------------------------------


def test_permutation_examples():
    assert permutation(SigmaBraid(3)) == (1, 2, 3)
    assert permutation(s(2, 1)) == (2, 1)
    p = permutation(s(3, 1, 2))
    assert sorted(p) == [1, 2, 3] and all(p[k] != k + 1 for k in range(3))


def test_a_generator_examples():
    assert a_generator(1, 2, 2).word == ((1, 1), (1, 1))
    assert str(a_generator(1, 3, 3)) == "s2 s1 s1 s2^-1"
    assert str(a_generator(2, 3, 3)) == "s2 s2"
    with pytest.raises(IndexError):
        a_generator(2, 2, 3)


def test_pure_braid_checks_permutation():
    with pytest.raises(NotPure):
        PureBraid(2, ((1, 1),))
    with pytest.raises(IndexError):
        SigmaBraid(2, ((2, 1),))
    assert isinstance(a_generator(1, 2, 3) * a_generator(2, 3, 3), PureBraid)


def test_artin_action_examples():
    X2 = Alphabet("x", 2)
    assert artin_action(SigmaBraid(2)) == GroupHom.identity(X2)
    h = artin_action(s(2, 1))
    assert str(h.images[0]) == "x1 x2 x1^-1" and str(h.images[1]) == "x1"
    assert artin_action(s(2, 1, -1)) == GroupHom.identity(X2)


def test_triviality_examples():
    assert braid_is_trivial(s(3, 1, 2, 1, -2, -1, -2))
    assert not braid_is_trivial(s(2, 1, 1))
    assert braid_is_trivial(SigmaBraid(3))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_braid_relations_as_automorphisms(n):
    for i in range(1, n - 1):
        assert artin_action(s(n, i, i + 1, i)) == artin_action(s(n, i + 1, i, i + 1))
    for i, j in itertools.combinations(range(1, n), 2):
        if j - i > 1:
            assert artin_action(s(n, i, j)) == artin_action(s(n, j, i))


@given(sigma_words(4), sigma_words(4))
def test_action_is_a_homomorphism(a, b):
    assert artin_action(a * b) == artin_action(a).compose(artin_action(b))


@settings(deadline=None, max_examples=40)
@given(sigma_words(3, 8), sigma_words(3, 8))
def test_equality_agrees_with_burau_on_three_strands(a, b):
    assert braids_equal(a, b) == (burau(a) == burau(b))


@settings(deadline=None, max_examples=25)
@given(pure_braids(4, 3))
def test_trivial_braids_have_trivial_burau(b):
    if braid_is_trivial(b):
        assert burau(b) == sympy.eye(4)


# -- strand deletion and doubling ---------------------------------------------


def test_delete_examples():
    assert delete_strand(a_generator(1, 2, 2), 1) == PureBraid(1, ())
    assert delete_strand(a_generator(1, 3, 3), 3).word == ()
    assert delete_strand(a_generator(1, 3, 3), 2) == a_generator(1, 2, 2)
    with pytest.raises(IndexError):
        delete_strand(a_generator(1, 2, 2), 3)


def test_double_examples():
    A12 = a_generator(1, 2, 2)
    assert str(double_strand(A12, 2)) == "s1 s2 s2 s1"
    assert str(double_strand(A12, 1)) == "s2 s1 s1 s2"
    assert double_strand(PureBraid(3, ()), 2) == PureBraid(4, ())
    with pytest.raises(IndexError):
        double_strand(A12, 0)


@settings(deadline=None)
@given(pure_braids(4), st.integers(1, 4))
def test_deletion_takes_linking_minor(b, k):
    L = linking_matrix(b)
    keep = [i for i in range(4) if i != k - 1]
    assert np.array_equal(linking_matrix(delete_strand(b, k)), L[np.ix_(keep, keep)])


@settings(deadline=None)
@given(pure_braids(3), st.integers(1, 3))
def test_doubling_copies_linking_row(b, k):
    # both cable copies inherit strand k's linking numbers and do not link each other
    L = linking_matrix(double_strand(b, k))
    old = linking_matrix(b)
    src = list(range(k)) + list(range(k - 1, 3))
    expected = old[np.ix_(src, src)].copy()
    expected[k - 1, k] = expected[k, k - 1] = 0
    assert np.array_equal(L, expected)


@settings(deadline=None)
@given(pure_braids(3), st.integers(1, 3))
def test_deleting_either_copy_undoes_doubling(b, k):
    d = double_strand(b, k)
    assert braids_equal(delete_strand(d, k), b)
    assert braids_equal(delete_strand(d, k + 1), b)


@settings(deadline=None)
@given(sigma_words(4), st.integers(1, 4))
def test_deletion_preserves_purity_pattern(b, k):
    # deleting a strand drops it from the permutation
    p = permutation(b)
    q = permutation(delete_strand(b, k))
    expected = [x - (x > p[k - 1]) for i, x in enumerate(p) if i != k - 1]
    assert list(q) == expected


# -- linking numbers ----------------------------------------------------------


def test_linking_examples():
    L = linking_matrix(a_generator(1, 3, 3))
    assert L.tolist() == [[0, 0, 1], [0, 0, 0], [1, 0, 0]]
    L = linking_matrix(double_strand(a_generator(1, 2, 2), 2))
    assert (L[0, 1], L[0, 2], L[1, 2]) == (1, 1, 0)
    assert not linking_matrix(PureBraid(3, ())).any()
    with pytest.raises(NotPure):
        linking_matrix(s(2, 1))


@settings(deadline=None)
@given(st.lists(st.tuples(st.integers(0, 5), st.sampled_from((1, -1))), max_size=6))
def test_linking_is_exponent_sum(choices):
    pairs = list(itertools.combinations(range(1, 5), 2))
    b = PureBraid(4, ())
    expected = np.zeros((4, 4), dtype=int)
    for k, e in choices:
        i, j = pairs[k]
        b = b * (a_generator(i, j, 4) ** e)
        expected[i - 1, j - 1] += e
        expected[j - 1, i - 1] += e
    assert np.array_equal(linking_matrix(b), expected)


# -- the cabling map ----------------------------------------------------------


def test_theta_examples():
    Y1, Y2 = Alphabet("y", 1), Alphabet("y", 2)
    assert theta(1, FreeWord.generator(Y1, 1)) == a_generator(1, 2, 2)
    t2 = theta(2, FreeWord.generator(Y2, 2))
    assert str(t2) == "s1 s2 s2 s1"
    assert linking_matrix(t2)[0, 1] == linking_matrix(t2)[0, 2] == 1
    t1 = theta(2, FreeWord.generator(Y2, 1))
    assert str(t1) == "s2 s1 s1 s2"
    L = linking_matrix(t1)
    assert (L[0, 2], L[1, 2], L[0, 1]) == (1, 1, 0)


def test_theta_rank_mismatch():
    with pytest.raises(ValueError):
        theta(2, FreeWord.generator(Alphabet("y", 3), 1))


@pytest.mark.parametrize("n", range(1, 6))
def test_theta_linking_pattern(n):
    for q in range(1, n + 1):
        L = linking_matrix(theta_generator(n, q))
        for i, j in itertools.combinations(range(1, n + 2), 2):
            assert L[i - 1, j - 1] == int(i <= n - q + 1 < j)


@settings(deadline=None)
@given(words(3, 6, "y"), words(3, 6, "y"))
def test_theta_is_homomorphism(u, v):
    assert braids_equal(theta(3, u * v), theta(3, u) * theta(3, v))


@settings(deadline=None, max_examples=60)
@given(st.integers(2, 4).flatmap(lambda n: st.tuples(st.just(n), nontrivial_words(n, 8, "y"))))
def test_theta_faithful_on_random_words(nw):
    n, w = nw
    assert not braid_is_trivial(theta(n, w))


@settings(deadline=None, max_examples=40)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(st.just(n), words(n, 6, "y"), st.integers(0, n))))
def test_theta_commutes_with_faces(args):
    n, w, i = args
    lhs = delete_strand(theta(n, w), i + 1)
    image = face_fs1(n, i)(w)
    rhs = PureBraid(1, ()) if n == 1 else theta(n - 1, image)
    assert braids_equal(lhs, rhs)


@pytest.mark.parametrize("n", range(1, 5))
def test_projections_onto_two_strands_are_surjective(n):
    for pair in itertools.combinations(range(1, n + 2), 2):
        assert projection_gcd(n, pair) == 1


# -- Brunnian tests -------------------------------------------------------------


def test_brunnian_examples():
    A12, A13 = a_generator(1, 2, 3), a_generator(1, 3, 3)
    assert is_brunnian(commutator(A12, A13))
    assert not is_brunnian(A13)
    assert is_brunnian(PureBraid(3, ()))


def test_qbrunnian_examples():
    assert is_qbrunnian(a_generator(1, 2, 2))
    assert not is_qbrunnian(a_generator(1, 3, 3))
    assert is_qbrunnian(commutator(a_generator(1, 2, 3), a_generator(1, 3, 3)))


@settings(deadline=None)
@given(pure_braids(4, 3))
def test_brunnian_implies_qbrunnian(b):
    if is_brunnian(b):
        assert is_qbrunnian(b)
