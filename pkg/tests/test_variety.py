import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hodgerr.cohring import GradedElement, PresentationMismatchError
from hodgerr.variety import (
    BundleData,
    MorphismModel,
    bundle_combine,
    hodge_diagonal_dims,
    line_bundle,
    linear_embedding,
    multiprojective,
    point,
    projection_morphism,
)

from strategies import elements


def poly(X, *coeffs):
    return GradedElement(X.presentation, {(i,): c for i, c in enumerate(coeffs)})


def test_multiprojective_tangents():
    P1 = multiprojective([1])
    assert P1.dimension == 1 and P1.tangent.total_chern == poly(P1, 1, 2)
    P2 = multiprojective([2])
    assert P2.tangent.total_chern == poly(P2, 1, 3, 3)
    Q = multiprojective([1, 1])
    expected = GradedElement(Q.presentation, {(0, 0): 1, (1, 0): 2, (0, 1): 2, (1, 1): 4})
    assert Q.tangent.total_chern == expected and Q.tangent.rank == 2


def test_point():
    pt = point()
    assert pt.dimension == 0 and pt.tangent.total_chern == 1
    assert hodge_diagonal_dims(pt) == [1]


def test_line_bundles():
    P3 = multiprojective([3])
    assert line_bundle(P3, [4]) == BundleData(1, poly(P3, 1, 4))
    Q = multiprojective([1, 1])
    L = line_bundle(Q, [2, -5])
    assert L.total_chern == 1 + Q.gens()[0].scale(2) - Q.gens()[1].scale(5)
    assert line_bundle(P3, [0]).total_chern == 1
    with pytest.raises(ValueError):
        line_bundle(Q, [1])


def test_bundle_combine_examples():
    P1 = multiprojective([1])
    s = line_bundle(P1, [1]) + line_bundle(P1, [-1])
    assert s.rank == 2 and s.total_chern == 1
    assert line_bundle(P1, [3]).dual() == line_bundle(P1, [-3])
    P2 = multiprojective([2])
    E = BundleData(2, poly(P2, 1, 5, 7))
    assert E.dual().total_chern == poly(P2, 1, -5, 7)
    with pytest.raises(PresentationMismatchError):
        line_bundle(P1, [1]) + line_bundle(P2, [1])


def test_hodge_dims():
    assert hodge_diagonal_dims(multiprojective([2])) == [1, 1, 1]
    assert hodge_diagonal_dims(multiprojective([1, 1])) == [1, 2, 1]
    for n in range(1, 6):
        dims = hodge_diagonal_dims(multiprojective([n]))
        assert dims == [1] * (n + 1) and sum(dims) == n + 1


def test_projection_examples():
    X = multiprojective([1, 1])
    p1 = projection_morphism(X, [0])
    h1, h2 = X.gens()
    (h,) = p1.target.gens()
    assert p1.pushforward(h1 * h2) == h
    assert p1.pushforward(h2) == 1
    assert p1.pushforward(X.one()).is_zero()
    assert p1.pullback(h) == h1
    assert p1.pushforward((1 + h2) * p1.pullback(h)) == h


def test_projection_bad_index():
    X = multiprojective([1, 2])
    for keep in ([], [2], [0, 0]):
        with pytest.raises(ValueError):
            projection_morphism(X, keep)


def test_linear_embedding_examples():
    P2 = multiprojective([2])
    j = linear_embedding(1, P2)
    (hF,) = j.source.gens()
    (h,) = P2.gens()
    assert j.pushforward(j.source.one()) == h
    assert j.pushforward(hF) == h * h
    assert j.pullback(h * h).is_zero()
    P1 = multiprojective([1])
    j0 = linear_embedding(0, P1)
    assert j0.pushforward(j0.source.one()) == P1.gens()[0]
    with pytest.raises(ValueError):
        linear_embedding(3, P2)


def test_pushforward_matrix_shape():
    X = multiprojective([1, 2])
    f = projection_morphism(X, [1])
    M = f.pushforward_matrix()
    assert len(M) == 3 and len(M[0]) == 6
    # only monomials with full h_1 exponent survive
    assert sum(1 for row in M for v in row if v) == 3


def test_pullback_must_respect_relations():
    P1 = multiprojective([1])
    P2 = multiprojective([2])
    with pytest.raises(ValueError):
        MorphismModel(P2, P1, [P2.gens()[0]], {})


MORPHISMS = [
    projection_morphism(multiprojective([1, 1]), [0]),
    projection_morphism(multiprojective([1, 1]), [1]),
    projection_morphism(multiprojective([1, 2]), [0]),
    projection_morphism(multiprojective([1, 2]), [1]),
    projection_morphism(multiprojective([1, 2]), [0, 1]),
    projection_morphism(multiprojective([2, 1, 1]), [0, 2]),
    linear_embedding(0, multiprojective([1])),
    linear_embedding(1, multiprojective([2])),
    linear_embedding(1, multiprojective([3])),
    linear_embedding(2, multiprojective([3])),
    linear_embedding(3, multiprojective([3])),
]


@settings(max_examples=120)
@given(st.sampled_from(MORPHISMS), st.data())
def test_projection_formula(f, data):
    x = data.draw(elements(f.source.presentation))
    y = data.draw(elements(f.target.presentation))
    assert f.pushforward(x * f.pullback(y)) == f.pushforward(x) * y


@settings(max_examples=120)
@given(st.sampled_from(MORPHISMS), st.data())
def test_pushforward_pullback_adjunction(f, data):
    x = data.draw(elements(f.source.presentation))
    y = data.draw(elements(f.target.presentation))
    assert (f.pushforward(x) * y).integrate() == (x * f.pullback(y)).integrate()


@settings(max_examples=120)
@given(st.integers(0, 2 ** 32))
def test_bundle_sum_commutative_associative(seed):
    rng = random.Random(seed)
    X = multiprojective(rng.choice([[1], [2], [1, 1], [1, 2]]))

    def rand_bundle():
        terms = {e: Fraction(rng.randint(-3, 3)) for e in X.presentation.monomials() if sum(e)}
        terms[(0,) * len(X.factors)] = 1
        return BundleData(rng.randint(-2, 4), GradedElement(X.presentation, terms))

    a, b, c = rand_bundle(), rand_bundle(), rand_bundle()
    assert bundle_combine(a, b, "sum") == bundle_combine(b, a, "sum")
    assert (a + b) + c == a + (b + c)
