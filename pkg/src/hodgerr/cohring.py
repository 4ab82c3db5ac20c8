"""Truncated polynomial rings Q[h_1..h_r]/(h_i^(n_i+1)).

These are the diagonal Hodge rings of products of projective spaces.  Every
relation is monomial, so multiplication is ordinary polynomial multiplication
followed by dropping any monomial with an exponent above its bound.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Mapping, Sequence

from .exactnum import RATIONALS, Scalar, as_scalar, parse_rational

__all__ = [
    "GradedElement",
    "NotAUnitError",
    "PresentationMismatchError",
    "RingPresentation",
    "exp_coefficients",
]


class PresentationMismatchError(ValueError):
    pass


class NotAUnitError(ArithmeticError):
    pass


@dataclass(frozen=True)
class RingPresentation:
    """``bounds[i]`` is n_i, the top exponent of h_i (so h_i^(n_i+1) = 0)."""

    bounds: tuple = ()
    modulus: tuple = RATIONALS

    def __post_init__(self):
        bounds = tuple(int(n) for n in self.bounds)
        if any(n < 0 for n in bounds):
            raise ValueError(f"exponent bounds must be >= 0, got {bounds}")
        object.__setattr__(self, "bounds", bounds)

    @property
    def generator_count(self) -> int:
        return len(self.bounds)

    @property
    def nilpotency_orders(self) -> tuple:
        return tuple(n + 1 for n in self.bounds)

    @property
    def dimension(self) -> int:
        return sum(self.bounds)

    @property
    def top(self) -> tuple:
        return self.bounds

    def monomials(self) -> list:
        """All admissible exponent vectors, sorted by degree then lexicographically."""
        exps = product(*(range(n + 1) for n in self.bounds))
        return sorted(exps, key=lambda e: (sum(e), e))

    def scalar(self, value) -> Scalar:
        return as_scalar(value, self.modulus)

    def one(self) -> "GradedElement":
        return GradedElement.constant(self, 1)

    def zero(self) -> "GradedElement":
        return GradedElement(self, {})

    def gen(self, i: int) -> "GradedElement":
        if not 0 <= i < len(self.bounds):
            raise IndexError(f"generator index {i} out of range")
        exps = tuple(1 if j == i else 0 for j in range(len(self.bounds)))
        return GradedElement.monomial(self, exps)

    def gens(self) -> list:
        return [self.gen(i) for i in range(len(self.bounds))]


class GradedElement:
    """Sparse element of a :class:`RingPresentation`; immutable."""

    __slots__ = ("presentation", "terms")

    def __init__(self, presentation: RingPresentation, terms: Mapping = (), *, _checked=False):
        self.presentation = presentation
        if _checked:
            self.terms = terms
            return
        bounds = presentation.bounds
        clean = {}
        for exps, coeff in dict(terms).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(bounds):
                raise ValueError(
                    f"exponent vector {exps} has wrong length for {len(bounds)} generators"
                )
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            if any(e > n for e, n in zip(exps, bounds)):
                continue
            c = presentation.scalar(coeff)
            if c:
                clean[exps] = clean.get(exps, 0) + c
        self.terms = {k: v for k, v in clean.items() if v}

    # constructors -------------------------------------------------------

    @classmethod
    def constant(cls, presentation: RingPresentation, value) -> "GradedElement":
        zero = (0,) * presentation.generator_count
        return cls(presentation, {zero: value})

    @classmethod
    def monomial(cls, presentation: RingPresentation, exps: Sequence[int], coeff=1):
        return cls(presentation, {tuple(exps): coeff})

    @classmethod
    def linear(cls, presentation: RingPresentation, coeffs: Sequence) -> "GradedElement":
        """``sum_i coeffs[i] * h_i``."""
        if len(coeffs) != presentation.generator_count:
            raise ValueError(
                f"expected {presentation.generator_count} coefficients, got {len(coeffs)}"
            )
        r = presentation.generator_count
        return cls(
            presentation,
            {tuple(1 if j == i else 0 for j in range(r)): c for i, c in enumerate(coeffs)},
        )

    # queries ------------------------------------------------------------

    def _check(self, other: "GradedElement"):
        if not isinstance(other, GradedElement):
            raise TypeError(f"expected GradedElement, got {type(other).__name__}")
        if other.presentation != self.presentation:
            raise PresentationMismatchError(
                f"{self.presentation} vs {other.presentation}"
            )

    def coefficient(self, exps: Sequence[int]) -> Scalar:
        return self.terms.get(tuple(exps), self.presentation.scalar(0))

    def constant_term(self) -> Scalar:
        return self.coefficient((0,) * self.presentation.generator_count)

    def degree_part(self, p: int) -> "GradedElement":
        return GradedElement(
            self.presentation,
            {e: c for e, c in self.terms.items() if sum(e) == p},
            _checked=True,
        )

    def max_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    # arithmetic ---------------------------------------------------------

    def _lift(self, other):
        if isinstance(other, GradedElement):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, Scalar)) and not isinstance(other, bool):
            return GradedElement.constant(self.presentation, other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e)
            s = c if s is None else s + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return GradedElement(self.presentation, terms, _checked=True)

    __radd__ = __add__

    def __neg__(self):
        return GradedElement(
            self.presentation, {e: -c for e, c in self.terms.items()}, _checked=True
        )

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c) -> "GradedElement":
        c = self.presentation.scalar(c)
        if not c:
            return self.presentation.zero()
        return GradedElement(
            self.presentation, {e: v * c for e, v in self.terms.items()}, _checked=True
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, GradedElement):
            return NotImplemented
        self._check(other)
        bounds = self.presentation.bounds
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if any(x > n for x, n in zip(e, bounds)):
                    continue
                s = out.get(e)
                out[e] = c1 * c2 if s is None else s + c1 * c2
        return GradedElement(
            self.presentation, {e: c for e, c in out.items() if c}, _checked=True
        )

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, GradedElement):
            return self * other.invert_unit()
        if isinstance(other, (int, Fraction, Scalar)) and not isinstance(other, bool):
            return self.scale(1 / self.presentation.scalar(other))
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or isinstance(n, bool):
            return NotImplemented
        if n < 0:
            return self.invert_unit() ** (-n)
        result = self.presentation.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def integrate(self) -> Scalar:
        """Coefficient of the top monomial h_1^n_1 ... h_r^n_r."""
        return self.coefficient(self.presentation.top)

    def poincare_pair(self, other: "GradedElement") -> Scalar:
        self._check(other)
        return (self * other).integrate()

    def series_apply(self, coeffs: Sequence) -> "GradedElement":
        """``sum_k coeffs[k] * self**k`` for an element with zero constant term.

        Terms with k above the ring dimension vanish and are skipped; missing
        coefficients count as zero.
        """
        if self.constant_term():
            raise ValueError("series_apply needs an element with zero constant term")
        pres = self.presentation
        d = pres.dimension
        result = pres.zero()
        power = pres.one()
        for k, f in enumerate(coeffs):
            if k > d or not power:
                break
            if f:
                result = result + power.scale(f)
            power = power * self
        return result

    def invert_unit(self) -> "GradedElement":
        a0 = self.constant_term()
        if not a0:
            raise NotAUnitError(f"{self} has zero constant term")
        try:
            inv0 = a0.inverse()
        except ZeroDivisionError as exc:
            raise NotAUnitError(f"constant term {a0} is not invertible") from exc
        # a = a0 (1 - u) with u nilpotent, so a^-1 = a0^-1 (1 + u + u^2 + ...)
        u = self.presentation.one() - self.scale(inv0)
        geom = u.series_apply([1] * (self.presentation.dimension + 1))
        return geom.scale(inv0)

    # equality / serialization -------------------------------------------

    def __eq__(self, other):
        if isinstance(other, GradedElement):
            return self.presentation == other.presentation and self.terms == other.terms
        if isinstance(other, (int, Fraction, Scalar)) and not isinstance(other, bool):
            try:
                return self == GradedElement.constant(self.presentation, other)
            except ValueError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.presentation, frozenset(self.terms.items())))

    def to_json(self) -> dict:
        return {
            "terms": [
                {"exps": list(e), "coeff": self.terms[e].to_json()}
                for e in sorted(self.terms)
            ]
        }

    @classmethod
    def from_json(cls, presentation: RingPresentation, data) -> "GradedElement":
        if not isinstance(data, dict) or "terms" not in data:
            raise ValueError("GradedElement JSON must be an object with 'terms'")
        terms = {}
        for t in data["terms"]:
            exps = tuple(t["exps"])
            coeff = t["coeff"]
            if isinstance(coeff, dict):
                c = Scalar.from_json(coeff)
            else:
                c = parse_rational(coeff)
            c = as_scalar(c, presentation.modulus)
            if exps in terms:
                raise ValueError(f"duplicate exponent vector {list(exps)}")
            terms[exps] = c
        return cls(presentation, terms)

    def __repr__(self):
        return f"GradedElement({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda e: (sum(e), e)):
            c = self.terms[e]
            mono = "*".join(
                (f"h{i + 1}" if len(e) > 1 else "h") + (f"^{x}" if x > 1 else "")
                for i, x in enumerate(e)
                if x
            )
            cs = str(c)
            if not c.is_rational():
                cs = f"({cs})"
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def exp_coefficients(d: int) -> list:
    """1/k! for k = 0..d."""
    out = [Fraction(1)]
    for k in range(1, d + 1):
        out.append(out[-1] / k)
    return out
