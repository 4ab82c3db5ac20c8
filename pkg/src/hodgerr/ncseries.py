"""Truncated noncommutative series in X, Y over Q[eps]/(eps^2).

Words are tuples over {0, 1} (0 = X, 1 = Y).  Each term also carries an
eps-flag; eps is central, has degree 0 and squares to zero, so it is tracked
separately from the word length.  Words longer than the truncation N are
dropped.

Also here: the same identity checked exactly on strictly upper triangular
matrices, where every series terminates.
"""
from __future__ import annotations

import random
from fractions import Fraction
from math import factorial
from typing import Mapping, Sequence

__all__ = [
    "NCPoly",
    "NilpotentMatrix",
    "ad_series_apply",
    "dexp_coefficients",
    "dexp_identity_check",
    "dexp_lhs",
    "evaluate",
    "matrix_dexp_check",
    "matrix_dexp_sides",
    "nc_exp",
    "random_nilpotent",
]

X, Y = 0, 1
_LETTERS = "XY"
MAX_TRUNCATION = 9


class NCPoly:
    __slots__ = ("N", "terms")

    def __init__(self, N: int, terms: Mapping = ()):
        if not 1 <= N <= MAX_TRUNCATION:
            raise ValueError(f"truncation must be in [1, {MAX_TRUNCATION}], got {N}")
        self.N = N
        clean = {}
        for (word, eps), c in dict(terms).items():
            word = tuple(word)
            if len(word) > N or eps not in (0, 1):
                continue
            c = Fraction(c)
            if c:
                clean[(word, eps)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, N, terms):
        obj = cls.__new__(cls)
        obj.N = N
        obj.terms = terms
        return obj

    @classmethod
    def one(cls, N: int) -> "NCPoly":
        return cls(N, {((), 0): 1})

    @classmethod
    def word(cls, N: int, letters: str, coeff=1, eps: int = 0) -> "NCPoly":
        return cls(N, {(tuple(_LETTERS.index(ch) for ch in letters), eps): coeff})

    @classmethod
    def x(cls, N: int) -> "NCPoly":
        return cls.word(N, "X")

    @classmethod
    def y(cls, N: int) -> "NCPoly":
        return cls.word(N, "Y")

    def _check(self, other: "NCPoly"):
        if not isinstance(other, NCPoly):
            raise TypeError(f"expected NCPoly, got {type(other).__name__}")
        if other.N != self.N:
            raise ValueError(f"truncation mismatch: {self.N} vs {other.N}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = NCPoly.one(self.N).scale(other)
        self._check(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            s = terms.get(k, 0) + c
            if s:
                terms[k] = s
            else:
                terms.pop(k, None)
        return NCPoly._raw(self.N, terms)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly._raw(self.N, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = NCPoly.one(self.N).scale(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "NCPoly":
        c = Fraction(c)
        if not c:
            return NCPoly._raw(self.N, {})
        return NCPoly._raw(self.N, {k: v * c for k, v in self.terms.items()})

    def times_eps(self) -> "NCPoly":
        return NCPoly._raw(
            self.N, {(w, 1): c for (w, e), c in self.terms.items() if e == 0}
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        N = self.N
        out: dict = {}
        for (w1, e1), c1 in self.terms.items():
            for (w2, e2), c2 in other.terms.items():
                if e1 + e2 > 1 or len(w1) + len(w2) > N:
                    continue
                key = (w1 + w2, e1 + e2)
                out[key] = out.get(key, 0) + c1 * c2
        return NCPoly._raw(N, {k: c for k, c in out.items() if c})

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def commutator(self, other: "NCPoly") -> "NCPoly":
        return self * other - other * self

    def constant_term(self) -> Fraction:
        return self.terms.get(((), 0), Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree_part(self, d: int) -> "NCPoly":
        return NCPoly._raw(self.N, {k: c for k, c in self.terms.items() if len(k[0]) == d})

    def __eq__(self, other):
        if isinstance(other, NCPoly):
            return self.N == other.N and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == NCPoly.one(self.N).scale(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.N, frozenset(self.terms.items())))

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda kv: (kv[0][1], len(kv[0][0]), kv[0][0]))

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "terms": [
                {"word": "".join(_LETTERS[i] for i in w), "eps": e, "coeff": str(c)}
                for (w, e), c in self.sorted_terms()
            ],
        }

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (w, e), c in self.sorted_terms():
            mono = ("eps*" if e else "") + ("".join(_LETTERS[i] for i in w) or "")
            mono = mono.rstrip("*") or "1"
            if mono == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


def nc_exp(a: NCPoly) -> NCPoly:
    """sum_j a^j / j!, for ``a`` without an eps-free constant term."""
    if a.constant_term():
        raise ValueError("nc_exp needs zero constant term")
    out = NCPoly.one(a.N)
    power = NCPoly.one(a.N)
    # an eps-constant alone can contribute (eps*c)^1 only, so N + 1 powers suffice
    for j in range(1, a.N + 2):
        power = power * a
        if not power:
            break
        out = out + power.scale(Fraction(1, factorial(j)))
    return out


def dexp_coefficients(n: int) -> list:
    """Coefficients (-1)^j/(j+1)! of (1 - e^-t)/t for j = 0..n."""
    return [Fraction((-1) ** j, factorial(j + 1)) for j in range(n + 1)]


def ad_series_apply(f: Sequence, N: int) -> NCPoly:
    """f(ad_X)(Y) = sum_j f_j [X, [X, ... [X, Y]]], truncated at word length N."""
    x = NCPoly.x(N)
    term = NCPoly.y(N)
    out = NCPoly(N)
    for j, fj in enumerate(f):
        if j + 1 > N or not term:
            break
        if fj:
            out = out + term.scale(fj)
        term = x.commutator(term)
    return out


def dexp_lhs(N: int) -> NCPoly:
    x = NCPoly.x(N)
    y_eps = NCPoly.y(N).times_eps()
    return nc_exp(-x) * nc_exp(x + y_eps)


def dexp_identity_check(N: int, f: Sequence | None = None) -> NCPoly:
    """Residual e^-X e^(X + eps Y) - 1 - eps f(ad_X)(Y); zero for the true f."""
    if N < 1:
        raise ValueError("N must be >= 1")
    f = dexp_coefficients(N) if f is None else [Fraction(c) for c in f]
    rhs = NCPoly.one(N) + ad_series_apply(f, N).times_eps()
    return dexp_lhs(N) - rhs


# exact matrix specialization ------------------------------------------------

Matrix = list  # list of lists of Fraction


def _zeros(n):
    return [[Fraction(0)] * n for _ in range(n)]


def _identity(n):
    m = _zeros(n)
    for i in range(n):
        m[i][i] = Fraction(1)
    return m


def _mul(a, b):
    n = len(a)
    return [
        [sum((a[i][k] * b[k][j] for k in range(n) if a[i][k]), Fraction(0)) for j in range(n)]
        for i in range(n)
    ]


def _add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _scale(a, c):
    return [[x * c for x in row] for row in a]


def _is_zero(a):
    return not any(any(row) for row in a)


class NilpotentMatrix:
    """Strictly upper triangular square matrix over Q."""

    __slots__ = ("size", "entries")

    def __init__(self, entries: Sequence[Sequence]):
        rows = [[Fraction(x) for x in row] for row in entries]
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("matrix must be square and non-empty")
        for i in range(n):
            for j in range(i + 1):
                if rows[i][j]:
                    raise ValueError(
                        f"entry ({i}, {j}) = {rows[i][j]} is on or below the diagonal"
                    )
        self.size = n
        self.entries = rows

    @classmethod
    def elementary(cls, n: int, i: int, j: int) -> "NilpotentMatrix":
        m = _zeros(n)
        m[i][j] = Fraction(1)
        return cls(m)

    def __eq__(self, other):
        return isinstance(other, NilpotentMatrix) and self.entries == other.entries

    def to_json(self):
        return [[str(x) for x in row] for row in self.entries]


# dual numbers A + eps*B over matrices are pairs (A, B)

def _dual_mul(p, q):
    return _mul(p[0], q[0]), _add(_mul(p[0], q[1]), _mul(p[1], q[0]))


def _dual_exp(p):
    n = len(p[0])
    out = (_identity(n), _zeros(n))
    power = out
    for j in range(1, 2 * n + 2):
        power = _dual_mul(power, p)
        if _is_zero(power[0]) and _is_zero(power[1]):
            break
        c = Fraction(1, factorial(j))
        out = (_add(out[0], _scale(power[0], c)), _add(out[1], _scale(power[1], c)))
    return out


def matrix_dexp_sides(Xm: NilpotentMatrix, Ym: NilpotentMatrix):
    """Both sides of the identity as dual-number matrices (A, B) meaning A + eps*B."""
    if not isinstance(Xm, NilpotentMatrix) or not isinstance(Ym, NilpotentMatrix):
        raise TypeError("matrix_dexp_check needs NilpotentMatrix inputs")
    if Xm.size != Ym.size:
        raise ValueError("matrices must have the same size")
    n = Xm.size
    x, y = Xm.entries, Ym.entries
    lhs = _dual_mul(_dual_exp((_scale(x, -1), _zeros(n))), _dual_exp((x, y)))
    # ad_X is nilpotent of order <= 2n - 1 on strictly upper triangular matrices
    f = dexp_coefficients(2 * n)
    acc = _zeros(n)
    term = y
    for j in range(2 * n):
        if _is_zero(term):
            break
        acc = _add(acc, _scale(term, f[j]))
        term = _add(_mul(x, term), _scale(_mul(term, x), -1))
    rhs = (_identity(n), acc)
    return lhs, rhs


def matrix_dexp_check(Xm: NilpotentMatrix, Ym: NilpotentMatrix) -> bool:
    lhs, rhs = matrix_dexp_sides(Xm, Ym)
    return lhs == rhs


def random_nilpotent(n: int, rng: random.Random, low: int = -2, high: int = 2) -> NilpotentMatrix:
    m = _zeros(n)
    for i in range(n):
        for j in range(i + 1, n):
            m[i][j] = Fraction(rng.randint(low, high))
    return NilpotentMatrix(m)


def evaluate(p: NCPoly, A: NilpotentMatrix, B: NilpotentMatrix):
    """Substitute X -> A, Y -> B; returns the dual-number matrix (eps^0 part, eps^1 part)."""
    if A.size != B.size:
        raise ValueError("matrices must have the same size")
    n = A.size
    mats = (A.entries, B.entries)
    out = [_zeros(n), _zeros(n)]
    for (word, eps), c in p.terms.items():
        m = _identity(n)
        for letter in word:
            m = _mul(m, mats[letter])
        out[eps] = _add(out[eps], _scale(m, c))
    return out[0], out[1]
