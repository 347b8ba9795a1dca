from __future__ import annotations

import numpy as np
import pytest
from sympy import GF
from sympy.polys.matrices import DomainMatrix
from hypothesis import given, settings
from hypothesis import strategies as st

from glitlab.exactlin import FieldSpec


def mats(p, max_side=6):
    return st.integers(1, max_side).flatmap(
        lambda r: st.integers(1, max_side).flatmap(
            lambda c: st.lists(st.lists(st.integers(0, p - 1), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def test_rank_examples(f5):
    f = FieldSpec()
    assert f.rank(f.eye(2)) == 2
    assert f.rank(f.zeros(3, 3)) == 0
    assert f5.rank(f5.mat([[1, 2], [2, 4]])) == 1


def test_kernel_examples(f5):
    f = FieldSpec()
    assert f.kernel_basis(f.eye(3)) == []
    assert len(f.kernel_basis(f.zeros(2, 3))) == 3
    m = f5.mat([[1, 2]])
    (v,) = f5.kernel_basis(m)
    assert not f5.mul(m, v.reshape(-1, 1)).any()
    # (3, 1) up to scalar
    assert (v[0] * 1 - v[1] * 3) % 5 == 0


def test_solve_examples():
    f = FieldSpec()
    b = f.vec([4, 7, 9])
    assert np.array_equal(f.solve(f.eye(3), b).ravel(), b.ravel())
    assert f.solve(f.zeros(2, 2), f.vec([1, 0])) is None
    f3 = FieldSpec(3)
    assert list(f3.solve(f3.mat([[1, 1], [0, 1]]), f3.vec([2, 1])).ravel()) == [1, 1]


def test_rejects_non_prime_and_large():
    with pytest.raises(ValueError):
        FieldSpec(100)
    with pytest.raises(ValueError):
        FieldSpec(2**31 - 1)


@settings(max_examples=60, deadline=None)
@given(mats(7))
def test_rank_matches_sympy(rows):
    f = FieldSpec(7)
    dm = DomainMatrix([[GF(7)(e) for e in r] for r in rows], (len(rows), len(rows[0])), GF(7))
    assert f.rank(f.mat(rows)) == dm.rank()


@settings(max_examples=60, deadline=None)
@given(mats(11))
def test_rank_nullity(rows):
    f = FieldSpec(11)
    m = f.mat(rows)
    ker = f.kernel_basis(m)
    assert f.rank(m) + len(ker) == m.shape[1]
    for v in ker:
        assert not f.mul(m, v.reshape(-1, 1)).any()


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(st.integers(0, 12), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_inverse(rows):
    f = FieldSpec(13)
    m = f.mat(rows)
    inv = f.inverse(m)
    if f.rank(m) < m.shape[0]:
        assert inv is None
    else:
        assert np.array_equal(f.mul(m, inv), f.eye(m.shape[0]))


def test_float_and_integer_products_agree():
    rng = np.random.default_rng(1)
    for p in (101, 1048573):
        f = FieldSpec(p)
        a = rng.integers(0, p, (40, 9000 if p > 2**19 else 50))
        b = rng.integers(0, p, (a.shape[1], 3))
        ref = np.array([[sum(int(x) * int(y) for x, y in zip(r, c)) % p for c in b.T] for r in a])
        assert np.array_equal(f.mul(a, b), ref)


def test_charpoly_and_factor():
    f = FieldSpec(101)
    m = f.mat([[2, 1], [0, 2]])
    cp = f.charpoly(m)
    # (x - 2)^2 with some coefficient order; the factorisation must reflect it
    fac = f.factor(cp)
    assert [e for _, e in fac] == [2]
