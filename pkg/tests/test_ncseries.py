import random
from fractions import Fraction

import pytest

from hodgerr.ncseries import (
    NCPoly,
    NilpotentMatrix,
    ad_series_apply,
    dexp_coefficients,
    dexp_identity_check,
    dexp_lhs,
    evaluate,
    matrix_dexp_check,
    matrix_dexp_sides,
    nc_exp,
    random_nilpotent,
)


def W(N, words):
    """W(3, {"XY": 1, "eps*Y": 2}) builds a polynomial from word strings."""
    out = NCPoly(N)
    for word, c in words.items():
        eps = word.startswith("eps*")
        out = out + NCPoly.word(N, word[4:] if eps else word, c, int(eps))
    return out


def test_arith_examples():
    x, y = NCPoly.x(2), NCPoly.y(2)
    assert (x + y) * (x + y) == W(2, {"XX": 1, "XY": 1, "YX": 1, "YY": 1})
    assert (NCPoly.x(1) * NCPoly.y(1)).is_zero()
    ey = NCPoly.y(3).times_eps()
    assert (ey * ey).is_zero()
    with pytest.raises(ValueError):
        NCPoly.x(2) + NCPoly.x(3)


def test_exp_examples():
    assert nc_exp(NCPoly.x(2)) == W(2, {"": 1, "X": 1, "XX": Fraction(1, 2)})
    x = NCPoly.x(6)
    assert nc_exp(x) * nc_exp(-x) == 1
    with pytest.raises(ValueError):
        nc_exp(1 + NCPoly.x(3))


def test_ad_series_examples():
    # Y - 1/2 [X,Y] + 1/6 [X,[X,Y]] expanded by hand
    expected = W(3, {"Y": 1, "XY": Fraction(-1, 2), "YX": Fraction(1, 2),
                     "XXY": Fraction(1, 6), "XYX": Fraction(-1, 3), "YXX": Fraction(1, 6)})
    assert ad_series_apply(dexp_coefficients(2), 3) == expected
    assert ad_series_apply([1], 4) == NCPoly.y(4)
    assert ad_series_apply([0, 1], 4) == W(4, {"XY": 1, "YX": -1})


def test_dexp_coefficients():
    assert dexp_coefficients(5) == [1, Fraction(-1, 2), Fraction(1, 6), Fraction(-1, 24),
                                    Fraction(1, 120), Fraction(-1, 720)]


@pytest.mark.parametrize("N", range(1, 7))
def test_dexp_identity(N):
    assert dexp_identity_check(N).is_zero()


def test_dexp_negative_control():
    f = dexp_coefficients(6)
    f[1] = Fraction(1, 2)
    r = dexp_identity_check(6, f)
    assert r
    # residual: -eps*(1/2 - (-1/2)) [X, Y] in degree 2
    assert r.degree_part(2) == W(6, {"eps*XY": -1, "eps*YX": 1})


def test_matrix_examples():
    X = NilpotentMatrix.elementary(3, 0, 1)
    Y = NilpotentMatrix.elementary(3, 1, 2)
    assert matrix_dexp_check(X, Y)
    zero = NilpotentMatrix([[0] * 3] * 3)
    lhs, rhs = matrix_dexp_sides(zero, Y)
    assert lhs == rhs and lhs[1] == Y.entries
    rng = random.Random(7)
    assert matrix_dexp_check(random_nilpotent(4, rng), random_nilpotent(4, rng))
    with pytest.raises(ValueError):
        NilpotentMatrix([[1, 0], [0, 0]])


def test_matrix_detects_wrong_identity():
    # e^{-X} e^{X+eps Y} has eps-part Y - 1/2[X,Y] here, not Y
    X = NilpotentMatrix.elementary(3, 0, 1)
    Y = NilpotentMatrix.elementary(3, 1, 2)
    lhs, _ = matrix_dexp_sides(X, Y)
    assert lhs[1] != Y.entries


def test_words_evaluate_to_matrix_lhs():
    # products of s strictly upper triangular s x s matrices vanish, so a
    # series truncated at N >= s - 1 evaluates to the exact matrix value
    rng = random.Random(11)
    words = dexp_lhs(6)
    for size in (2, 3, 4, 5):
        for _ in range(5):
            A, B = random_nilpotent(size, rng), random_nilpotent(size, rng)
            lhs, _ = matrix_dexp_sides(A, B)
            assert evaluate(words, A, B) == lhs
            assert evaluate(dexp_identity_check(6), A, B) == evaluate(NCPoly(6), A, B)
