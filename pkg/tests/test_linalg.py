import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homlts.linalg import (
    SignedPermutation,
    format_rational,
    identity,
    kernel_basis,
    matrix,
    permutation_sign,
    rank,
    rational,
    rref,
    solve,
    unshuffles,
    zeros,
)

from conftest import brute_rank

small_q = st.fractions(min_value=-4, max_value=4, max_denominator=4)


def matrices(rows=st.integers(1, 4), cols=st.integers(1, 5)):
    return st.tuples(rows, cols).flatmap(
        lambda rc: st.lists(st.lists(small_q, min_size=rc[1], max_size=rc[1]), min_size=rc[0], max_size=rc[0])
    )


def test_rational_parsing():
    assert rational("3") == 3 and type(rational("3")) is int
    assert rational("-2/5") == Fraction(-2, 5)
    assert rational("4/2") == 2 and type(rational("4/2")) is int
    assert rational(Fraction(6, 3)) == 2
    for bad in (0.5, True, "x", "1/0"):
        with pytest.raises((TypeError, ValueError, ZeroDivisionError)):
            rational(bad)


def test_format_rational():
    assert format_rational(Fraction(-3, 6)) == "-1/2"
    assert format_rational(4) == "4"


def test_rref_pivot_rule():
    m = matrix([[0, 2, 4], [1, 1, 1], [2, 4, 6]])
    red, piv = rref(m)
    assert piv == [0, 1]
    assert red.tolist() == [[1, 0, -1], [0, 1, 2], [0, 0, 0]]


def test_kernel_basis_shape():
    m = matrix([[1, 2, 3]])
    ker = kernel_basis(m)
    assert [v.tolist() for v in ker] == [[-2, 1, 0], [-3, 0, 1]]
    assert len(kernel_basis(zeros(0, 3))) == 3


def test_solve_particular_and_inconsistent():
    m = matrix([[1, 1], [2, 2]])
    assert solve(m, [3, 6]).tolist() == [3, 0]
    assert solve(m, [3, 5]) is None


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_nullity_and_kernel(rows):
    m = matrix(rows)
    assert rank(m) == brute_rank(rows)
    ker = kernel_basis(m)
    assert len(ker) + rank(m) == m.shape[1]
    for v in ker:
        assert not np.any(m.dot(v) != 0)


@settings(max_examples=60, deadline=None)
@given(matrices(), st.data())
def test_solve_roundtrip(rows, data):
    m = matrix(rows)
    x0 = [data.draw(small_q) for _ in range(m.shape[1])]
    b = m.dot(np.array(x0, dtype=object))
    x = solve(m, b)
    assert x is not None
    assert np.all(m.dot(x) == b)


def test_unshuffle_21_signs():
    # oracle: filter all of S3 for increasing blocks
    want = []
    for perm in itertools.permutations(range(3)):
        if perm[0] < perm[1]:
            inv = sum(1 for i in range(3) for j in range(i + 1, 3) if perm[i] > perm[j])
            want.append((perm, (-1) ** inv))
    got = [(u.image, u.sign) for u in unshuffles(2, 1)]
    assert got == sorted(want)
    assert [s for _, s in got] == [1, -1, 1]


@pytest.mark.parametrize("p,q", [(0, 3), (1, 1), (2, 2), (1, 3), (3, 2)])
def test_unshuffle_counts_and_blocks(p, q):
    us = unshuffles(p, q)
    assert len(us) == len(set(u.image for u in us))
    from math import comb

    assert len(us) == comb(p + q, p)
    for u in us:
        assert list(u.image[:p]) == sorted(u.image[:p])
        assert list(u.image[p:]) == sorted(u.image[p:])


def test_signed_permutation_validation():
    with pytest.raises(ValueError):
        SignedPermutation((0, 0, 1), 1)
    with pytest.raises(ValueError):
        SignedPermutation((1, 0), 1)
    assert permutation_sign((2, 0, 1)) == 1


def test_identity_rank():
    assert rank(identity(4)) == 4
