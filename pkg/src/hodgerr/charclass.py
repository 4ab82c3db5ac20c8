"""Chern character, multiplicative classes and the Todd class.

Everything here depends only on a bundle's rank and total Chern class.  The
main path goes through power sums of Chern roots (Newton's identities); the
``split_mult_class`` path multiplies explicit roots together instead and
serves as an independent cross-check.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .cohring import GradedElement, exp_coefficients
from .exactnum import parse_rational
from .variety import BundleData, VarietyModel

__all__ = [
    "SeriesSpec",
    "chern_character",
    "mult_class",
    "named_series",
    "power_sums",
    "series_inverse",
    "series_log",
    "series_mul",
    "split_mult_class",
    "tangent_roots",
    "todd_class",
]


# truncated univariate series over Q, as coefficient lists -------------------

def series_mul(a: Sequence[Fraction], b: Sequence[Fraction], d: int) -> list:
    out = [Fraction(0)] * (d + 1)
    for i, x in enumerate(a[: d + 1]):
        if not x:
            continue
        for j, y in enumerate(b[: d + 1 - i]):
            out[i + j] += x * y
    return out


def series_inverse(a: Sequence[Fraction], d: int) -> list:
    a = [Fraction(x) for x in a] + [Fraction(0)] * (d + 1 - len(a))
    if a[0] == 0:
        raise ZeroDivisionError("series with zero constant term is not invertible")
    inv0 = 1 / a[0]
    # 1/a = inv0 * sum_j u^j with u = 1 - inv0 * a
    u = [Fraction(0)] + [-inv0 * x for x in a[1 : d + 1]]
    total = [Fraction(1)] + [Fraction(0)] * d
    power = list(total)
    for _ in range(d):
        power = series_mul(power, u, d)
        total = [s + p for s, p in zip(total, power)]
    return [inv0 * x for x in total]


def series_log(f: Sequence[Fraction], d: int) -> list:
    """log f for f_0 = 1, by composing log(1 + u) = sum (-1)^(j+1) u^j / j with u = f - 1."""
    f = [Fraction(x) for x in f] + [Fraction(0)] * (d + 1 - len(f))
    if f[0] != 1:
        raise ValueError("log needs a series with constant term 1")
    u = [Fraction(0)] + f[1 : d + 1]
    out = [Fraction(0)] * (d + 1)
    power = [Fraction(1)] + [Fraction(0)] * d
    for j in range(1, d + 1):
        power = series_mul(power, u, d)
        sign = 1 if j % 2 else -1
        out = [o + Fraction(sign, j) * p for o, p in zip(out, power)]
    return out


def named_series(name: str, d: int) -> list:
    """Coefficients 0..d of ``exp``, ``inv_todd`` = (1 - e^-t)/t or ``todd`` = t/(1 - e^-t)."""
    if name == "exp":
        return exp_coefficients(d)
    inv_todd = [Fraction((-1) ** n, factorial(n + 1)) for n in range(d + 1)]
    if name == "inv_todd":
        return inv_todd
    if name == "todd":
        return series_inverse(inv_todd, d)
    raise ValueError(f"unknown series {name!r}")


@dataclass(frozen=True)
class SeriesSpec:
    """A power series f, either named (expanded on demand) or explicit."""

    name: str
    coefficients: tuple = ()

    @classmethod
    def named(cls, name: str) -> "SeriesSpec":
        named_series(name, 0)  # validates the name
        return cls(name)

    @classmethod
    def explicit(cls, coeffs: Sequence, name: str = "custom") -> "SeriesSpec":
        return cls(name, tuple(parse_rational(c) for c in coeffs))

    def coeffs(self, d: int) -> list:
        if not self.coefficients:
            return named_series(self.name, d)
        c = list(self.coefficients[: d + 1])
        return c + [Fraction(0)] * (d + 1 - len(c))

    @classmethod
    def from_json(cls, data) -> "SeriesSpec":
        if "coeffs" in data:
            return cls.explicit(data["coeffs"], data.get("name", "custom"))
        return cls.named(data["name"])

    def to_json(self) -> dict:
        if not self.coefficients:
            return {"name": self.name}
        return {"name": self.name, "coeffs": [str(c) for c in self.coefficients]}


def _coeffs(f, d: int) -> list:
    if isinstance(f, SeriesSpec):
        return f.coeffs(d)
    if isinstance(f, str):
        return named_series(f, d)
    c = [parse_rational(x) for x in f][: d + 1]
    return c + [Fraction(0)] * (d + 1 - len(c))


# characteristic classes ----------------------------------------------------

def power_sums(E: BundleData, N: int | None = None) -> list:
    """[p_1, ..., p_N] of the Chern roots, from Newton's identities."""
    pres = E.presentation
    N = pres.dimension if N is None else N
    c = [E.chern_class(i) for i in range(N + 1)]
    p = [pres.scalar(E.rank) * pres.one()]
    for k in range(1, N + 1):
        acc = c[k].scale((-1) ** (k - 1) * k)
        for i in range(1, k):
            term = c[i] * p[k - i]
            acc = acc + (term if i % 2 else -term)
        p.append(acc)
    return p[1:]


def chern_character(E: BundleData) -> GradedElement:
    pres = E.presentation
    d = pres.dimension
    ch = GradedElement.constant(pres, E.rank)
    for k, pk in enumerate(power_sums(E, d), start=1):
        ch = ch + pk.scale(Fraction(1, factorial(k)))
    return ch


def mult_class(f, E: BundleData) -> GradedElement:
    """prod_i f(x_i) over the Chern roots of E, as exp(sum_k g_k p_k) with g = log f."""
    d = E.presentation.dimension
    fc = _coeffs(f, d)
    if fc[0] != 1:
        raise ValueError("multiplicative classes need f(0) = 1")
    g = series_log(fc, d)
    s = E.presentation.zero()
    for k, pk in enumerate(power_sums(E, d), start=1):
        if g[k]:
            s = s + pk.scale(g[k])
    return s.series_apply(exp_coefficients(d))


def split_mult_class(f, roots: Sequence, presentation=None) -> GradedElement:
    """prod_j f(x_j)^(m_j) over explicit roots ``(m_j, x_j)`` of degree exactly 1."""
    roots = list(roots)
    if presentation is None:
        if not roots:
            raise ValueError("an empty root list needs an explicit presentation")
        presentation = roots[0][1].presentation
    d = presentation.dimension
    fc = _coeffs(f, d)
    if fc[0] != 1:
        raise ValueError("multiplicative classes need f(0) = 1")
    out = presentation.one()
    for root in roots:
        try:
            mult, x = root
        except (TypeError, ValueError):
            raise ValueError(f"malformed root {root!r}") from None
        if not isinstance(x, GradedElement) or x.presentation != presentation:
            raise ValueError(f"root {x!r} is not an element of the ambient ring")
        if not isinstance(mult, int) or any(sum(e) != 1 for e in x.terms):
            raise ValueError(f"malformed root {root!r}: need (int, pure degree-1 element)")
        out = out * x.series_apply(fc) ** mult
    return out


def tangent_roots(X: VarietyModel) -> list:
    """Chern roots of T_X from the Euler sequence: (n_i+1) copies of h_i, minus r trivial roots."""
    pres = X.presentation
    roots = [(n + 1, pres.gen(i)) for i, n in enumerate(X.factors)]
    if roots:
        roots.append((-len(roots), pres.zero()))
    return roots


def todd_class(X: VarietyModel) -> GradedElement:
    return mult_class(SeriesSpec.named("todd"), X.tangent)
