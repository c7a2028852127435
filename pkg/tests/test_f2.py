import random

import pytest
from hypothesis import given, strategies as hst

from extseq import f2
from extseq.f2 import EchelonSpan, F2Matrix, F2Vector


def random_matrix(rng, nrows, ncols):
    return F2Matrix(tuple(rng.getrandbits(ncols) for _ in range(nrows)), ncols)


def test_vector_basics():
    v = F2Vector.from_entries([1, 0, 1, 1])
    assert v.length == 4
    assert v.support() == [0, 2, 3]
    assert v.to_entries() == [1, 0, 1, 1]
    assert (v ^ v).is_zero()
    w = F2Vector.unit(2, 4)
    assert v.dot(w) == 1
    assert v.dot(F2Vector.unit(1, 4)) == 0


def test_vector_padding_rejected():
    with pytest.raises(ValueError):
        F2Vector(0b100, 2)


def test_identity_and_mul():
    rng = random.Random(7)
    for _ in range(20):
        m = random_matrix(rng, 6, 5)
        assert F2Matrix.identity(6).mul(m) == m
        assert m.mul(F2Matrix.identity(5)) == m


def test_mul_matches_entrywise():
    rng = random.Random(11)
    for _ in range(30):
        a = random_matrix(rng, 4, 6)
        b = random_matrix(rng, 6, 5)
        c = a.mul(b)
        for i in range(4):
            for j in range(5):
                expect = sum(a.row(i)[k] * (b.rows[k] >> j & 1) for k in range(6)) & 1
                assert c.row(i)[j] == expect


def test_transpose_involution():
    rng = random.Random(3)
    m = random_matrix(rng, 5, 9)
    assert m.transpose().transpose() == m


def test_rref_pivots_deterministic():
    m = F2Matrix.from_rows([[0, 1, 1], [1, 1, 0], [1, 0, 1]])
    rank1, pivots1, red1 = f2.rref(m)
    rank2, pivots2, red2 = f2.rref(m)
    assert (rank1, pivots1, red1) == (rank2, pivots2, red2)
    assert rank1 == 2
    assert pivots1 == [0, 1]


def test_rank_nullity():
    rng = random.Random(23)
    for _ in range(40):
        m = random_matrix(rng, rng.randrange(1, 8), rng.randrange(1, 8))
        ker = f2.kernel_basis(m)
        assert f2.rank(m) + len(ker) == m.ncols
        for v in ker:
            assert m.mul_vec(v).is_zero()


def test_solve_roundtrip():
    rng = random.Random(5)
    for _ in range(40):
        m = random_matrix(rng, 6, 5)
        x = F2Vector(rng.getrandbits(5), 5)
        b = m.mul_vec(x)
        sol = f2.solve(m, b)
        assert sol is not None
        assert m.mul_vec(sol) == b


def test_solve_infeasible():
    m = F2Matrix.from_rows([[1, 0], [1, 0]], ncols=2)
    assert f2.solve(m, F2Vector.from_entries([1, 0])) is None


def test_solve_dimension_mismatch():
    m = F2Matrix.from_rows([[1, 0]], ncols=2)
    with pytest.raises(ValueError):
        f2.solve(m, F2Vector.from_entries([1, 1]))


def test_span_contains():
    rows = [0b011, 0b101]
    assert f2.span_contains(rows, 3, 0b110)
    assert not f2.span_contains(rows, 3, 0b001)


@given(hst.lists(hst.integers(min_value=0, max_value=2 ** 10 - 1), max_size=12))
def test_echelon_span_membership(vectors):
    span = EchelonSpan(10)
    brute: list[int] = []
    for v in vectors:
        added = span.add(v)
        if added:
            brute.append(v)
    assert span.dim == f2.rank(F2Matrix(tuple(brute), 10)) if brute else span.dim == 0
    # every input reduces to zero against the final span
    for v in vectors:
        assert span.contains(v)


def test_echelon_span_canonical():
    # same subspace from different generating sets gives identical rows
    a = EchelonSpan(4)
    for v in (0b0011, 0b0101, 0b0110):
        a.add(v)
    b = EchelonSpan(4)
    for v in (0b0110, 0b0011, 0b1001 ^ 0b1010):
        b.add(v)
    assert a.rows == b.rows
    assert a.pivots == b.pivots
