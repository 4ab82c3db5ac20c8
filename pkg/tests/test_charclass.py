"""Characteristic classes, with sympy series expansions as the independent oracle."""
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from hodgerr.charclass import (
    SeriesSpec,
    chern_character,
    mult_class,
    named_series,
    power_sums,
    series_inverse,
    series_log,
    split_mult_class,
    tangent_roots,
    todd_class,
)
from hodgerr.cohring import GradedElement
from hodgerr.variety import BundleData, line_bundle, multiprojective, split_bundle

VARIETIES = [[], [1], [2], [3], [1, 1], [1, 2], [2, 2], [1, 1, 1]]
t = sympy.Symbol("t")


def sympy_coeffs(expr, d):
    s = sympy.series(expr, t, 0, d + 1).removeO()
    return [Fraction(str(sympy.Poly(s, t).coeff_monomial(t ** k))) for k in range(d + 1)]


def to_graded(X, sym_expr, symbols):
    """Expand a sympy polynomial in h_1..h_r into X's ring (truncating)."""
    p = sympy.Poly(sympy.expand(sym_expr), *symbols) if symbols else None
    if p is None:
        return GradedElement.constant(X.presentation, Fraction(str(sym_expr)))
    return GradedElement(X.presentation, {m: Fraction(str(c)) for m, c in p.terms()})


def sympy_todd(factors):
    """prod_i (h_i / (1 - e^-h_i))^(n_i+1), expanded with sympy and truncated."""
    hs = sympy.symbols(f"h1:{len(factors) + 1}")
    expr = sympy.Integer(1)
    for h, n in zip(hs, factors):
        s = sympy.series(h / (1 - sympy.exp(-h)), h, 0, n + 1).removeO()
        expr = sympy.expand(expr * sympy.expand(s ** (n + 1)))
    return expr, hs


def test_named_series_against_sympy():
    assert named_series("exp", 6) == sympy_coeffs(sympy.exp(t), 6)
    assert named_series("inv_todd", 6) == sympy_coeffs((1 - sympy.exp(-t)) / t, 6)
    assert named_series("todd", 6) == sympy_coeffs(t / (1 - sympy.exp(-t)), 6)
    assert named_series("inv_todd", 3) == [1, Fraction(-1, 2), Fraction(1, 6), Fraction(-1, 24)]


def test_series_helpers_against_sympy():
    f = [1, 2, -1, Fraction(1, 3), 5]
    expr = sum(sympy.Rational(str(c)) * t ** i for i, c in enumerate(f))
    assert series_log(f, 4) == sympy_coeffs(sympy.log(expr), 4)
    assert series_inverse(f, 4) == sympy_coeffs(1 / expr, 4)


@pytest.mark.parametrize("factors", VARIETIES)
def test_todd_against_sympy(factors):
    X = multiprojective(factors)
    expr, hs = sympy_todd(factors)
    assert todd_class(X) == to_graded(X, expr, hs)


def test_todd_examples():
    P1, P2 = multiprojective([1]), multiprojective([2])
    assert todd_class(P1) == 1 + P1.gens()[0]
    h = P2.gens()[0]
    assert todd_class(P2) == 1 + h.scale(Fraction(3, 2)) + h * h
    assert todd_class(multiprojective([])) == 1


def test_power_sums_examples():
    P2 = multiprojective([2])
    (h,) = P2.gens()
    E = line_bundle(P2, [1]) + line_bundle(P2, [1])
    assert E.total_chern == 1 + h.scale(2) + h * h
    assert power_sums(E, 2) == [h.scale(2), (h * h).scale(2)]
    P4 = multiprojective([4])
    (g,) = P4.gens()
    assert power_sums(line_bundle(P4, [3]), 4) == [g.scale(3) ** j for j in range(1, 5)]
    zero = BundleData(0, P4.one())
    assert all(p.is_zero() for p in power_sums(zero, 4))


def direct_power_sums(roots, X, N):
    """sum_j m_j x_j^k from explicit roots, no Newton identities."""
    out = []
    for k in range(1, N + 1):
        acc = X.presentation.zero()
        for m, x in roots:
            acc = acc + (x ** k).scale(m)
        out.append(acc)
    return out


def random_roots(rng, X, count):
    roots = []
    for _ in range(count):
        x = GradedElement.linear(X.presentation, [rng.randint(-3, 3) for _ in X.factors])
        roots.append((rng.randint(1, 2), x))
    return roots


@settings(max_examples=100)
@given(st.integers(0, 2 ** 32))
def test_newton_matches_direct_power_sums(seed):
    rng = random.Random(seed)
    X = multiprojective(rng.choice(VARIETIES[1:]))
    roots = random_roots(rng, X, rng.randint(0, 4))
    E = split_bundle(roots, X.presentation)
    assert power_sums(E, X.dimension) == direct_power_sums(roots, X, X.dimension)


def test_chern_character_examples():
    P2 = multiprojective([2])
    (h,) = P2.gens()
    assert chern_character(line_bundle(P2, [5])) == 1 + h.scale(5) + (h * h).scale(Fraction(25, 2))
    P1 = multiprojective([1])
    assert chern_character(P1.tangent) == 1 + P1.gens()[0].scale(2)
    assert chern_character(line_bundle(P1, [1]) + line_bundle(P1, [-1])) == 2


def test_mult_class_examples():
    P2 = multiprojective([2])
    assert mult_class([1, 1], P2.tangent) == P2.tangent.total_chern
    P1 = multiprojective([1])
    assert mult_class(SeriesSpec.named("todd"), P1.tangent) == 1 + P1.gens()[0]
    assert mult_class([1, 7, 3], BundleData(0, P2.one())) == 1
    with pytest.raises(ValueError):
        mult_class([2, 1], P2.tangent)


def test_split_mult_class_examples():
    P1 = multiprojective([1])
    (h,) = P1.gens()
    assert split_mult_class("todd", [(2, h)]) == todd_class(P1)
    Q = multiprojective([1, 1])
    h1, h2 = Q.gens()
    a, b = h1.scale(3), h2.scale(-2)
    assert split_mult_class([1, 1], [(1, a), (1, b)]) == (1 + a) * (1 + b)
    assert split_mult_class([1, 1], [], Q.presentation) == 1
    with pytest.raises(ValueError):
        split_mult_class([1, 1], [(1, h1 * h2)])
    with pytest.raises(ValueError):
        split_mult_class([1, 1], [(1, 1 + h1)])


@pytest.mark.parametrize("factors", VARIETIES)
def test_todd_two_paths(factors):
    X = multiprojective(factors)
    assert todd_class(X) == split_mult_class("todd", tangent_roots(X), X.presentation)


@settings(max_examples=120)
@given(st.integers(0, 2 ** 32))
def test_ch_additive_and_multiplicative(seed):
    rng = random.Random(seed)
    X = multiprojective(rng.choice(VARIETIES[1:]))
    E = split_bundle(random_roots(rng, X, rng.randint(0, 3)), X.presentation)
    F = split_bundle(random_roots(rng, X, rng.randint(0, 3)), X.presentation)
    assert chern_character(E + F) == chern_character(E) + chern_character(F)
    a = [rng.randint(-4, 4) for _ in X.factors]
    b = [rng.randint(-4, 4) for _ in X.factors]
    ab = [x + y for x, y in zip(a, b)]
    assert chern_character(line_bundle(X, a)) * chern_character(line_bundle(X, b)) == \
        chern_character(line_bundle(X, ab))
    assert chern_character(E).constant_term() == E.rank


@settings(max_examples=120)
@given(st.integers(0, 2 ** 32))
def test_mult_class_multiplicative_and_split(seed):
    rng = random.Random(seed)
    X = multiprojective(rng.choice(VARIETIES[1:]))
    d = X.dimension
    f = [Fraction(1)] + [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(d)]
    rE = random_roots(rng, X, rng.randint(0, 3))
    rF = random_roots(rng, X, rng.randint(0, 3))
    E = split_bundle(rE, X.presentation)
    F = split_bundle(rF, X.presentation)
    assert mult_class(f, E + F) == mult_class(f, E) * mult_class(f, F)
    assert mult_class(f, E) == split_mult_class(f, rE, X.presentation)


def test_series_spec_json():
    s = SeriesSpec.from_json({"coeffs": ["1", "1/2"]})
    assert s.coeffs(3) == [1, Fraction(1, 2), 0, 0]
    assert SeriesSpec.from_json({"name": "todd"}).coeffs(2) == named_series("todd", 2)
    with pytest.raises(ValueError):
        SeriesSpec.from_json({"name": "sine"})
