from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from glitlab.algebra import (
    AdmissibilityError,
    ParseError,
    Quiver,
    parse_algebra,
    path_algebra,
    projective_module,
    radical_power_quotient,
    same_algebra,
    serialize_algebra,
)
from glitlab.fixtures import dual_numbers
from glitlab.randgen import random_algebra


def test_example_algebra_basis(T):
    assert T.dim == 6
    assert T.basis_labels() == ["e_1", "e_2", "e_3", "a", "b", "c"]
    assert T.check_associative()


def test_small_dimensions():
    assert parse_algebra("vertices 1\n").dim == 1
    assert path_algebra(Quiver(["1", "2"], [("b", "1", "2")])).dim == 3
    assert dual_numbers().dim == 2


def test_length_two_products_vanish(T):
    # arrows are indexed a=0, b=1, c=2 in declaration order
    a, b, c = (T.basis_index[(T.vertex(s), (k,))] for s, k in [("1", 0), ("1", 1), ("2", 2)])
    assert not T.mul_basis(a, b).any()
    assert not T.mul_basis(b, c).any()
    assert not T.mul_basis(a, a).any()


def test_path_algebra_counts_paths():
    q = Quiver(["1", "2", "3", "4"], [("x", "1", "2"), ("y", "2", "3"), ("z", "3", "4"), ("w", "1", "3")])
    alg = path_algebra(q)
    assert alg.dim == sum(q.path_counts().values())


def test_commutative_square():
    text = """
    vertices 1 2 3 4
    arrow a 1 2
    arrow b 1 3
    arrow c 2 4
    arrow d 3 4
    relations
    a*c - b*d
    """
    alg = parse_algebra(text)
    assert alg.dim == 9
    assert list(alg.projective(0).dims) == [1, 1, 1, 1]


def test_projectives(T):
    assert list(projective_module(T, "1").dims) == [2, 1, 0]
    assert list(T.projective("3").dims) == [0, 0, 1]
    assert list(dual_numbers().projective(0).dims) == [2]
    assert sum(sum(T.projective(v).dims) for v in range(3)) == T.dim


@pytest.mark.parametrize(
    "text, exc",
    [
        ("vertices 1\narrow a 1 1\nnilpotency 2\n", AdmissibilityError),
        ("vertices 1 2\narrow a 1 2\nrelations\na\n", ParseError),
        ("arrow a 1 2\n", ParseError),
        ("vertices 1 2\narrow a 1 3\n", ParseError),
        ("vertices 1\narrow a 1 1\n", ParseError),
        ("vertices 1 2\narrow a 1 2\narrow b 2 1\nnilpotency 2\nrelations\na*b\nb*c\n", ParseError),
        ("vertices 1 2\nfrobnicate\n", ParseError),
    ],
)
def test_parse_errors(text, exc):
    with pytest.raises(exc):
        parse_algebra(text, source="bad.alg")


def test_parse_error_carries_line():
    with pytest.raises(ParseError) as info:
        parse_algebra("vertices 1 2\narrow a 1 2\n\narrow a 2 1\n", source="dup.alg")
    assert "4" in str(info.value) and "dup.alg" in str(info.value)


def test_serialize_round_trip(T):
    again = parse_algebra(serialize_algebra(T))
    assert same_algebra(again, T)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_random_algebras_are_valid(seed):
    alg = random_algebra(np.random.default_rng(seed))
    assert alg.check_associative()
    assert sum(sum(alg.projective(v).dims) for v in range(alg.n_vertices)) == alg.dim
    assert same_algebra(parse_algebra(serialize_algebra(alg)), alg)


def test_radical_power_quotient():
    q = Quiver(["1"], [("x", "1", "1")])
    assert radical_power_quotient(q, 3).dim == 3
