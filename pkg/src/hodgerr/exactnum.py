"""Exact scalars: rationals and elements of simple extensions Q[z]/(p(z)).

Rationals are plain :class:`fractions.Fraction`.  A :class:`Scalar` carries its
modulus as a tuple of Fractions in ascending powers, leading coefficient 1
included, so ``z**2 + 1`` is ``(1, 0, 1)``.  The default modulus ``z - 1``
makes a Scalar behave exactly like a rational number.

Irreducibility of a modulus is never checked.  Inverting a residue that shares
a factor with the modulus raises :class:`NoInverseError`.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence, Union

__all__ = [
    "Rational",
    "Scalar",
    "RATIONALS",
    "ModulusMismatchError",
    "NoInverseError",
    "cyclotomic_modulus",
    "parse_rational",
    "root_of_unity",
]

Rational = Fraction
Modulus = tuple  # tuple[Fraction, ...], ascending, monic

RATIONALS: Modulus = (Fraction(-1), Fraction(1))


class ModulusMismatchError(ValueError):
    pass


class NoInverseError(ZeroDivisionError):
    pass


def parse_rational(value) -> Fraction:
    """Parse ``3``, ``"3"``, ``"-5/7"`` or a Fraction into a Fraction."""
    if isinstance(value, bool):
        raise TypeError(f"not a rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"not a rational: {value!r}")


def _trim(coeffs: list) -> list:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _poly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _poly_divmod(a: Sequence[Fraction], b: Sequence[Fraction]):
    a = _trim([Fraction(x) for x in a])
    b = _trim([Fraction(x) for x in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], a
    quot = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        c = a[-1] / lead
        quot[shift] = c
        for j, y in enumerate(b):
            a[shift + j] -= c * y
        _trim(a)
    return _trim(quot), a


def _normalize_modulus(modulus: Iterable) -> Modulus:
    mod = _trim([parse_rational(c) for c in modulus])
    if len(mod) < 2:
        raise ValueError("modulus must have degree >= 1")
    if mod[-1] != 1:
        raise ValueError("modulus must be monic")
    return tuple(mod)


def _reduce(coeffs: list, modulus: Modulus) -> tuple:
    d = len(modulus) - 1
    c = list(coeffs)
    # eliminate z^k for k >= d using z^d = -(m_0 + ... + m_{d-1} z^{d-1})
    for k in range(len(c) - 1, d - 1, -1):
        top = c[k]
        if top == 0:
            continue
        c[k] = Fraction(0)
        for j in range(d):
            if modulus[j]:
                c[k - d + j] -= top * modulus[j]
    c = c[:d] + [Fraction(0)] * (d - len(c))
    return tuple(c)


class Scalar:
    """Element of Q[z]/(p(z)), stored as a reduced coefficient tuple."""

    __slots__ = ("modulus", "coeffs", "_hash")

    def __init__(self, coeffs=0, modulus: Iterable = RATIONALS):
        if modulus is not RATIONALS:
            modulus = _normalize_modulus(modulus)
            if modulus == RATIONALS:
                modulus = RATIONALS
        if isinstance(coeffs, Scalar):
            if coeffs.modulus != modulus:
                coeffs = coeffs.to_fraction()
            else:
                coeffs = coeffs.coeffs
        if isinstance(coeffs, (int, Fraction, str)) and not isinstance(coeffs, bool):
            coeffs = [parse_rational(coeffs)]
        else:
            coeffs = [parse_rational(c) for c in coeffs]
        self.modulus = modulus
        self.coeffs = _reduce(coeffs, modulus)
        self._hash = None

    @classmethod
    def _raw(cls, coeffs: tuple, modulus: Modulus) -> "Scalar":
        obj = cls.__new__(cls)
        obj.modulus = modulus
        obj.coeffs = coeffs
        obj._hash = None
        return obj

    @classmethod
    def generator(cls, modulus: Iterable) -> "Scalar":
        """The class of ``z`` itself."""
        return cls([0, 1], modulus)

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def lift(self, modulus: Iterable) -> "Scalar":
        """Embed a rational Scalar into another field."""
        modulus = _normalize_modulus(modulus)
        if modulus == self.modulus:
            return self
        return Scalar(self.to_fraction(), modulus)

    # arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.modulus != self.modulus:
                raise ModulusMismatchError(
                    f"moduli differ: {list(map(str, self.modulus))} vs "
                    f"{list(map(str, other.modulus))}"
                )
            return other
        if isinstance(other, (int, _RationalABC)) and not isinstance(other, bool):
            return Scalar._raw(
                _reduce([Fraction(other)], self.modulus), self.modulus
            )
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Scalar._raw(
            tuple(x + y for x, y in zip(self.coeffs, other.coeffs)), self.modulus
        )

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(tuple(-x for x in self.coeffs), self.modulus)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Scalar._raw(
            tuple(x - y for x, y in zip(self.coeffs, other.coeffs)), self.modulus
        )

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(self.coeffs) == 1:
            return Scalar._raw((self.coeffs[0] * other.coeffs[0],), self.modulus)
        prod = _poly_mul(self.coeffs, other.coeffs)
        return Scalar._raw(_reduce(prod, self.modulus), self.modulus)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero Scalar")
        if len(self.coeffs) == 1:
            return Scalar._raw((1 / self.coeffs[0],), self.modulus)
        # extended Euclid: track s with s*a == r (mod p)
        r0, r1 = list(self.modulus), _trim(list(self.coeffs))
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            qs = _poly_mul(q, s1)
            n = max(len(s0), len(qs))
            s_next = _trim(
                [
                    (s0[i] if i < len(s0) else 0) - (qs[i] if i < len(qs) else 0)
                    for i in range(n)
                ]
            )
            r0, r1 = r1, r
            s0, s1 = s1, s_next
            if not r1:
                raise NoInverseError(
                    f"{self} is not invertible: it shares a factor with the modulus"
                )
        c = r1[0]
        return Scalar._raw(
            _reduce([x / c for x in s1], self.modulus), self.modulus
        )

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = Scalar._raw(_reduce([Fraction(1)], self.modulus), self.modulus)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # comparison / hashing -------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.modulus == other.modulus and self.coeffs == other.coeffs
        if isinstance(other, (int, _RationalABC)) and not isinstance(other, bool):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.coeffs[0])
            else:
                self._hash = hash((self.modulus, self.coeffs))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    # serialization ----------------------------------------------------------

    def to_json(self):
        if self.modulus == RATIONALS:
            return str(self.coeffs[0])
        return {
            "modulus": [str(c) for c in self.modulus],
            "coeffs": [str(c) for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, data) -> "Scalar":
        if isinstance(data, dict):
            try:
                modulus = data["modulus"]
                coeffs = data["coeffs"]
            except KeyError as exc:
                raise ValueError(f"Scalar object missing key {exc}") from None
            modulus = _normalize_modulus(modulus)
            if len(coeffs) != len(modulus) - 1:
                raise ValueError(
                    f"Scalar needs {len(modulus) - 1} coefficients, got {len(coeffs)}"
                )
            return cls(coeffs, modulus)
        return cls(parse_rational(data))

    def __repr__(self):
        if self.modulus == RATIONALS:
            return f"Scalar({str(self.coeffs[0])!r})"
        return f"Scalar({[str(c) for c in self.coeffs]}, mod={[str(c) for c in self.modulus]})"

    def __str__(self):
        if self.modulus == RATIONALS:
            return str(self.coeffs[0])
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if mono and c == 1:
                parts.append(mono)
            elif mono and c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}{'*' + mono if mono else ''}")
        return " + ".join(parts).replace("+ -", "- ") or "0"


@lru_cache(maxsize=None)
def _cyclotomic(m: int) -> tuple:
    num = [Fraction(-1)] + [Fraction(0)] * (m - 1) + [Fraction(1)]
    for d in range(1, m):
        if m % d == 0:
            num, rem = _poly_divmod(num, _cyclotomic(d))
            assert not rem
    return tuple(num)


def cyclotomic_modulus(m: int) -> Modulus:
    """The m-th cyclotomic polynomial, ascending coefficients, for 1 <= m <= 30."""
    if not isinstance(m, int) or isinstance(m, bool) or not 1 <= m <= 30:
        raise ValueError(f"cyclotomic order must be an integer in [1, 30], got {m!r}")
    return _cyclotomic(m)


def root_of_unity(order: int, field_order: int | None = None) -> Scalar:
    """A primitive ``order``-th root of unity inside Q(zeta_field_order).

    ``field_order`` defaults to ``order`` and must be a multiple of it; the
    returned element is ``z**(field_order // order)``.
    """
    field_order = order if field_order is None else field_order
    if field_order % order:
        raise ValueError(f"{order} does not divide {field_order}")
    return Scalar.generator(cyclotomic_modulus(field_order)) ** (field_order // order)


ScalarLike = Union[Scalar, int, Fraction]


def as_scalar(value, modulus: Modulus = RATIONALS) -> Scalar:
    """Coerce ints, Fractions, strings and rational Scalars into ``modulus``."""
    if isinstance(value, Scalar):
        if value.modulus == modulus:
            return value
        return value.lift(modulus)
    return Scalar(parse_rational(value), modulus)
