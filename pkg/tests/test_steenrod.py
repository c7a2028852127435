import pytest
from hypothesis import given, settings, strategies as hst

import oracle_milnor
from extseq import steenrod as st
from extseq.steenrod import (
    A1,
    A2,
    SteenrodElement,
    SubalgebraId,
    adem_reduce,
    admissible_monomials,
    binom2,
    conjugate,
    element_diagonal,
    format_element,
    parse_element,
    product,
    sq,
    subalgebra_basis,
    subalgebra_dims,
    subalgebra_table,
)


def to_milnor(x):
    acc = frozenset()
    for word in x.sorted_terms():
        acc = acc ^ oracle_milnor.word_to_milnor(word)
    return acc


def test_binom2_matches_pascal():
    rows = [[1]]
    for n in range(1, 16):
        prev = rows[-1]
        rows.append(
            [1] + [(prev[k - 1] + prev[k]) & 1 for k in range(1, n)] + [1]
        )
    for n in range(16):
        for k in range(n + 1):
            assert binom2(n, k) == rows[n][k]


def test_binom2_negative_reflection():
    # binom(-1, k) is odd for every k >= 0
    for k in range(10):
        assert binom2(-1, k) == 1
    assert binom2(-2, 1) == 0
    assert binom2(-2, 2) == 1


def test_adem_known_relations():
    assert adem_reduce((1, 1)).is_zero()
    assert adem_reduce((1, 2)) == sq(3)
    assert adem_reduce((2, 2)) == SteenrodElement.monomial((3, 1))
    assert adem_reduce((3, 2)).is_zero()
    assert adem_reduce((2, 3)) == SteenrodElement.from_terms([(5,), (4, 1)])


def test_adem_output_admissible():
    for a in range(1, 13):
        for b in range(1, 13):
            for word in adem_reduce((a, b)).terms:
                assert st.is_admissible(word)
                assert st.degree(word) == a + b


def test_adem_pairs_against_milnor_oracle():
    # every Adem rewrite up to total degree 20, checked against an
    # independent Milnor-basis product
    for a in range(1, 20):
        for b in range(1, 20 - a + 1):
            lhs = to_milnor(adem_reduce((a, b)))
            rhs = oracle_milnor.product(oracle_milnor.sq(a), oracle_milnor.sq(b))
            assert lhs == rhs, (a, b)


def test_triple_products_against_milnor_oracle():
    for a in range(1, 7):
        for b in range(1, 7):
            for c in range(1, 7):
                x = product(product(sq(a), sq(b)), sq(c))
                assert to_milnor(x) == oracle_milnor.word_to_milnor((a, b, c))


def test_product_associative():
    els = [sq(1), sq(2), sq(3) + SteenrodElement.monomial((2, 1)), SteenrodElement.monomial((4, 2))]
    for a in els:
        for b in els:
            for c in els:
                assert product(product(a, b), c) == product(a, product(b, c))


def test_admissible_monomial_counts():
    # admissible count per degree must match the Milnor basis count:
    # tuples (r1, r2, ...) with sum r_i (2^i - 1) = d
    def milnor_count(d, i=1):
        if d == 0:
            return 1
        w = 2 ** i - 1
        if w > d:
            return 0
        return sum(milnor_count(d - k * w, i + 1) for k in range(d // w + 1))

    for d in range(16):
        assert len(admissible_monomials(d)) == milnor_count(d), d


def test_conjugate_small_values():
    assert conjugate(sq(1)) == sq(1)
    assert conjugate(sq(2)) == sq(2)
    assert conjugate(sq(3)) == SteenrodElement.monomial((2, 1))


def test_conjugate_involution():
    for d in range(13):
        for word in admissible_monomials(d):
            x = SteenrodElement.monomial(word)
            assert conjugate(conjugate(x)) == x


def test_conjugate_antihomomorphism():
    for a in range(1, 6):
        for b in range(1, 10 - a + 1):
            lhs = conjugate(product(sq(a), sq(b)))
            rhs = product(conjugate(sq(b)), conjugate(sq(a)))
            assert lhs == rhs, (a, b)


def test_conjugate_defining_recursion():
    # sum_i Sq^i chi(Sq^{k-i}) = 0 for k > 0
    for k in range(1, 13):
        acc = SteenrodElement.zero()
        for i in range(0, k + 1):
            acc = acc + product(sq(i), conjugate(sq(k - i)))
        assert acc.is_zero(), k


def test_cartan_diagonal_multiplicative():
    # coproduct of a product equals convolution of coproducts
    for a in range(1, 9):
        for b in range(1, 9 - a + 1):
            lhs = set(element_diagonal(product(sq(a), sq(b))))
            rhs: set = set()
            for la, ra in st.diagonal((a,)):
                for lb, rb in st.diagonal((b,)):
                    left = product(
                        SteenrodElement.from_terms([la]),
                        SteenrodElement.from_terms([lb]),
                    )
                    right = product(
                        SteenrodElement.from_terms([ra]),
                        SteenrodElement.from_terms([rb]),
                    )
                    for lw in left.terms:
                        for rw in right.terms:
                            rhs ^= {(lw, rw)}
            assert lhs == rhs, (a, b)


def test_coproduct_of_sq_k():
    for k in range(9):
        pairs = st.coproduct(k)
        assert len(pairs) == k + 1
        for left, right in pairs:
            assert len(left.terms) == 1 and len(right.terms) == 1


def test_subalgebra_dims_a1():
    dims = subalgebra_dims(A1, 7)
    assert dims == [1, 1, 1, 2, 1, 1, 1, 0]
    assert subalgebra_table(1).total_dim() == 8


def test_subalgebra_dims_a2():
    t = subalgebra_table(2)
    assert t.top_degree == 23
    assert t.total_dim() == 64
    # Poincare symmetry of the finite Hopf algebra
    for d in range(24):
        assert t.dim(d) == t.dim(23 - d)


def test_subalgebra_dims_a0():
    assert subalgebra_dims(SubalgebraId(0), 3) == [1, 1, 0, 0]


def test_a1_degree5_is_not_a_single_monomial():
    basis = subalgebra_basis(A1, 5)
    assert len(basis) == 1
    assert basis[0] == SteenrodElement.from_terms([(5,), (4, 1)])


def test_subalgebra_membership():
    t = subalgebra_table(2)
    assert t.contains(sq(4))
    assert t.contains(product(sq(4), sq(2)))
    assert not t.contains(sq(8))
    # degree 5 of the full algebra lies entirely inside A(2)
    assert t.contains(SteenrodElement.from_terms([(5,), (4, 1)]))


def test_word_decompose_roundtrip():
    import random

    rng = random.Random(1)
    t = subalgebra_table(2)
    for _ in range(30):
        d = rng.randrange(0, t.top_degree + 1)
        basis = t.basis(d)
        if not basis:
            continue
        el = SteenrodElement.zero()
        for b in basis:
            if rng.random() < 0.5:
                el = el + b
        if el.is_zero():
            continue
        acc = SteenrodElement.zero()
        for word in t.word_decompose(el):
            term = SteenrodElement.unit()
            for g in reversed(word):
                term = product(sq(g), term)
            acc = acc + term
        assert acc == el


def test_word_decompose_outside_raises():
    t = subalgebra_table(1)
    with pytest.raises(ValueError):
        t.word_decompose(sq(4))


def test_structure_constants_match_products():
    t = subalgebra_table(1)
    for d1 in range(7):
        for i, x in enumerate(t.basis(d1)):
            for d2 in range(7 - d1):
                for j, y in enumerate(t.basis(d2)):
                    bits = t.multiply(d1, i, d2, j)
                    acc = SteenrodElement.zero()
                    for k, z in enumerate(t.basis(d1 + d2)):
                        if (bits >> k) & 1:
                            acc = acc + z
                    assert acc == product(x, y)


@given(hst.lists(hst.integers(min_value=1, max_value=8), min_size=1, max_size=4))
@settings(max_examples=60, deadline=None)
def test_reduce_matches_milnor(word):
    assert to_milnor(adem_reduce(tuple(word))) == oracle_milnor.word_to_milnor(
        tuple(word)
    )


def test_parse_format_roundtrip():
    for text in ["Sq(3,1)", "Sq(5) + Sq(4,1)", "Sq()", "0", "Sq(7,2,1)"]:
        el = parse_element(text)
        assert parse_element(format_element(el)) == el
