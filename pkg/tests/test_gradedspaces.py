import pytest

from extseq import gradedspaces as gs
from extseq.gradedspaces import (
    EMSpaceSpec,
    GeneratorSet,
    GradedDims,
    InconsistencyReport,
    SWPolynomial,
    em_dims,
    ext_alg_dims,
    k1_dims,
    poly_dims,
    script_k_dims,
    serre_generators,
    series_quotient,
    tensor_dims,
    wu_action,
)


def test_graded_dims_bounds():
    d = GradedDims((1, 0, 2))
    assert d[0] == 1 and d[2] == 2
    assert d[-3] == 0
    with pytest.raises(IndexError):
        d[3]
    with pytest.raises(ValueError):
        GradedDims((1, -1))


def test_graded_dims_json_roundtrip():
    d = GradedDims((1, 0, 2, 5))
    assert GradedDims.from_json(d.to_json()) == d


def test_poly_dims_one_generator():
    g = GeneratorSet.from_degrees([2])
    assert poly_dims(g, 7).dims == (1, 0, 1, 0, 1, 0, 1, 0)


def test_poly_dims_two_generators():
    g = GeneratorSet.from_degrees([2, 3])
    # monomials x^a y^b with 2a + 3b = d
    assert poly_dims(g, 8).dims == (1, 0, 1, 1, 1, 1, 2, 1, 2)


def test_ext_alg_dims():
    basis = GradedDims.from_map({1: 1, 2: 1}, 3)
    # exterior on x1, y2: 1, x, y, xy
    assert ext_alg_dims(basis, 3).dims == (1, 1, 1, 1)


def test_tensor_unit():
    a = GradedDims((1, 2, 3))
    assert tensor_dims(a, GradedDims.unit(2), 2) == a


def test_series_quotient_exact():
    sub = poly_dims(GeneratorSet.from_degrees([2]), 8)
    quot = poly_dims(GeneratorSet.from_degrees([3]), 8)
    total = tensor_dims(sub, quot, 8)
    assert series_quotient(total, sub, 8) == quot


def test_series_quotient_inconsistent():
    total = GradedDims((1, 0, 0))
    sub = GradedDims((1, 1, 0))
    out = series_quotient(total, sub, 2)
    assert isinstance(out, InconsistencyReport)
    assert out.degree == 1
    assert out.deficit == 1


def test_serre_generators_k_z2_2():
    gens = serre_generators(EMSpaceSpec("Z2", 2), 10)
    assert gens.degrees() == [2, 3, 5, 9]


def test_serre_generators_k_z_8():
    gens = serre_generators(EMSpaceSpec("Z", 8), 11)
    # Sq^1 iota dies for integral coefficients
    assert gens.degrees() == [8, 10, 11]


def test_serre_generators_k_z2_1():
    # only the fundamental class has excess below 1
    gens = serre_generators(EMSpaceSpec("Z2", 1), 6)
    assert gens.degrees() == [1]


def test_em_dims_k_z2_1_is_polynomial_on_one_class():
    # H*(K(Z2,1)) is F2[x]: one class in every degree
    dims = em_dims(EMSpaceSpec("Z2", 1), 8)
    assert dims.dims == (1,) * 9


def test_k1_dims_low_degrees():
    dims = k1_dims(11)
    assert dims[0] == 1
    assert dims.dims[1] == 0
    assert dims[2] == 1
    assert (dims[9], dims[10], dims[11]) == (8, 9, 13)


def test_script_k_dims_low_degrees():
    dims = script_k_dims(11)
    assert dims.dims[:8] == (1, 0, 0, 0, 0, 0, 0, 0)
    assert (dims[8], dims[9], dims[10], dims[11]) == (1, 0, 2, 2)


def test_wu_formula_base_cases():
    w2 = SWPolynomial.w(2)
    assert str(wu_action(1, w2)) == str(SWPolynomial.w(1) * w2 + SWPolynomial.w(3))
    assert wu_action(2, w2) == w2 * w2
    assert wu_action(3, w2).is_zero()


def test_wu_cartan_consistency():
    p = SWPolynomial.w(2) * SWPolynomial.w(3)
    total = SWPolynomial.zero()
    for a in range(6):
        left = wu_action(a, SWPolynomial.w(2))
        right = wu_action(5 - a, SWPolynomial.w(3))
        total = total + left * right
    assert wu_action(5, p) == total


def test_wu_squares_top():
    # Sq^n on a degree-n class is its square
    for n in (1, 2, 3, 4):
        w = SWPolynomial.w(n)
        assert wu_action(n, w) == w * w
