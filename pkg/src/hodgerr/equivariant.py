"""Fixed-locus data for an automorphism g, equivariant Chern characters and Euler classes.

Everything on a fixed component F is eigen-split: a bundle is a sum of line
bundles, each with a first Chern class in H^2(F) and the eigenvalue by which
the equivariant structure acts on it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .cohring import GradedElement, exp_coefficients
from .exactnum import RATIONALS, Scalar, as_scalar
from .variety import VarietyModel, multiprojective

__all__ = [
    "EigenLine",
    "EigenLineSum",
    "EquivariantBundle",
    "FixedComponent",
    "LocalizationError",
    "diagonal_pn_fixed_data",
    "equivariant_ch",
    "equivariant_euler",
    "exterior_power",
    "common_modulus",
    "conormal_determinant",
    "localization_invertible",
]


class LocalizationError(ArithmeticError):
    """det(1 - g^* on the conormal bundle) vanishes on some fixed component."""


@dataclass(frozen=True)
class EigenLine:
    eigenvalue: Scalar
    c1: GradedElement
    mult: int = 1

    def __post_init__(self):
        if not self.eigenvalue:
            raise ValueError("eigenvalues must be nonzero")
        if any(sum(e) > 1 for e in self.c1.terms):
            raise ValueError("c1 of an eigen-line must have degree <= 1")
        if self.mult < 1:
            raise ValueError("multiplicity must be positive")


@dataclass(frozen=True)
class EigenLineSum:
    summands: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "summands", tuple(self.summands))

    @property
    def rank(self) -> int:
        return sum(s.mult for s in self.summands)

    def eigenvalues(self) -> list:
        return [s.eigenvalue for s in self.summands]

    def lines(self) -> list:
        """Summands expanded by multiplicity into single lines."""
        return [s for s in self.summands for _ in range(s.mult)]


@dataclass(frozen=True)
class FixedComponent:
    F: VarietyModel
    conormal: EigenLineSum = field(default_factory=EigenLineSum)
    ambient_dimension: int | None = None

    def __post_init__(self):
        for s in self.conormal.summands:
            if s.c1.presentation != self.F.presentation:
                raise ValueError("conormal summand lives on another ring")
        if (
            self.ambient_dimension is not None
            and self.conormal.rank != self.ambient_dimension - self.F.dimension
        ):
            raise ValueError("conormal rank must equal the codimension")


@dataclass(frozen=True)
class EquivariantBundle:
    on: FixedComponent
    lines: EigenLineSum

    def __post_init__(self):
        for s in self.lines.summands:
            if s.c1.presentation != self.on.F.presentation:
                raise ValueError("bundle summand lives on another ring")

    @property
    def rank(self) -> int:
        return self.lines.rank


def _exp(x: GradedElement) -> GradedElement:
    return x.series_apply(exp_coefficients(x.presentation.dimension))


def equivariant_ch(B: EquivariantBundle) -> GradedElement:
    """sum_j m_j mu_j exp(x_j)."""
    out = B.on.F.presentation.zero()
    for s in B.lines.summands:
        out = out + _exp(s.c1).scale(s.eigenvalue * s.mult)
    return out


def equivariant_euler(C: FixedComponent) -> GradedElement:
    """prod_j (1 - lambda_j exp(y_j))^(m_j) over the conormal summands."""
    one = C.F.presentation.one()
    out = one
    for s in C.conormal.summands:
        out = out * (one - _exp(s.c1).scale(s.eigenvalue)) ** s.mult
    return out


def localization_invertible(C: FixedComponent) -> bool:
    return all(s.eigenvalue != 1 for s in C.conormal.summands)


def conormal_determinant(C: FixedComponent) -> Scalar:
    """det(1 - g^*) on the conormal fibre, i.e. prod_j (1 - lambda_j)^(m_j)."""
    det = C.F.presentation.scalar(1)
    for s in C.conormal.summands:
        det = det * (1 - s.eigenvalue) ** s.mult
    return det


def exterior_power(L: EigenLineSum, a: int, presentation) -> list:
    """Lambda^a of an eigen-split bundle as a list of (eigenvalue, c1) lines."""
    out = []
    for subset in combinations(L.lines(), a):
        mu = presentation.scalar(1)
        c1 = presentation.zero()
        for s in subset:
            mu = mu * s.eigenvalue
            c1 = c1 + s.c1
        out.append((mu, c1))
    return out


def common_modulus(values) -> tuple:
    """The one non-trivial modulus among ``values``; rationals embed anywhere."""
    moduli = {
        v.modulus for v in values if isinstance(v, Scalar) and v.modulus != RATIONALS
    }
    if len(moduli) > 1:
        raise ValueError("eigenvalues come from different number fields")
    return moduli.pop() if moduli else RATIONALS


def diagonal_pn_fixed_data(n: int, blocks: Sequence, k: int) -> list:
    """Fixed components of g = diag(alpha_0 I_m0, alpha_1 I_m1, ...) on P^n, with E = O(k).

    ``blocks`` is a sequence of ``(alpha, multiplicity)``.  Component i is
    P^(m_i - 1), its conormal bundle is O(-1) with eigenvalue alpha_j/alpha_i
    for each other block j (with multiplicity m_j), and O(k) restricts to
    O(k) with fibre eigenvalue alpha_i^k.  Returns ``[(FixedComponent,
    EquivariantBundle), ...]`` in block order.
    """
    blocks = [(a, int(m)) for a, m in blocks]
    if not blocks:
        raise ValueError("need at least one block")
    if any(m < 1 for _, m in blocks):
        raise ValueError("block multiplicities must be positive")
    if sum(m for _, m in blocks) != n + 1:
        raise ValueError(f"block multiplicities must sum to n+1 = {n + 1}")
    modulus = common_modulus(a for a, _ in blocks)
    alphas = [as_scalar(a, modulus) for a, _ in blocks]
    for i, a in enumerate(alphas):
        if not a:
            raise ValueError("eigenvalues must be nonzero")
        if a in alphas[:i]:
            raise LocalizationError(
                f"localization criterion failed: eigenvalue {a} repeats across blocks, "
                "so some conormal eigenvalue is 1"
            )
    out = []
    for i, (alpha, m) in enumerate(zip(alphas, (m for _, m in blocks))):
        F = multiprojective([m - 1] if m > 1 else [], modulus)
        pres = F.presentation
        h = pres.gen(0) if m > 1 else pres.zero()
        conormal = EigenLineSum(
            EigenLine(other / alpha, -h, mj)
            for j, (other, (_, mj)) in enumerate(zip(alphas, blocks))
            if j != i
        )
        comp = FixedComponent(F, conormal, ambient_dimension=n)
        bundle = EquivariantBundle(comp, EigenLineSum([EigenLine(alpha ** k, h.scale(k), 1)]))
        out.append((comp, bundle))
    return out
