"""Multiprojective spaces, bundles given by (rank, total Chern class), morphisms."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .cohring import GradedElement, PresentationMismatchError, RingPresentation
from .exactnum import RATIONALS

__all__ = [
    "BundleData",
    "MorphismModel",
    "VarietyModel",
    "bundle_combine",
    "direct_sum",
    "hodge_diagonal_dims",
    "line_bundle",
    "linear_embedding",
    "multiprojective",
    "point",
    "projection_morphism",
    "split_bundle",
]


@dataclass(frozen=True, eq=False)
class BundleData:
    rank: int
    total_chern: GradedElement

    def __post_init__(self):
        if self.total_chern.constant_term() != 1:
            raise ValueError("total Chern class must have constant term 1")

    @property
    def presentation(self) -> RingPresentation:
        return self.total_chern.presentation

    def chern_class(self, k: int) -> GradedElement:
        return self.total_chern.degree_part(k)

    def __eq__(self, other):
        if not isinstance(other, BundleData):
            return NotImplemented
        return self.rank == other.rank and self.total_chern == other.total_chern

    def __hash__(self):
        return hash((self.rank, self.total_chern))

    def __add__(self, other: "BundleData") -> "BundleData":
        return bundle_combine(self, other, "sum")

    def dual(self) -> "BundleData":
        return bundle_combine(self, None, "dual")

    def to_json(self) -> dict:
        return {"rank": self.rank, "chern": self.total_chern.to_json()}


@dataclass(frozen=True, eq=False)
class VarietyModel:
    name: str
    presentation: RingPresentation
    tangent: BundleData

    def __post_init__(self):
        if self.tangent.rank != self.dimension:
            raise ValueError("tangent rank must equal the dimension")
        if self.tangent.presentation != self.presentation:
            raise PresentationMismatchError("tangent bundle lives on another ring")

    @property
    def dimension(self) -> int:
        return self.presentation.dimension

    @property
    def factors(self) -> tuple:
        return self.presentation.bounds

    @property
    def modulus(self):
        return self.presentation.modulus

    def one(self) -> GradedElement:
        return self.presentation.one()

    def gens(self) -> list:
        return self.presentation.gens()

    def __eq__(self, other):
        if not isinstance(other, VarietyModel):
            return NotImplemented
        return self.presentation == other.presentation and self.tangent == other.tangent

    def __hash__(self):
        return hash(self.presentation)

    def to_json(self) -> dict:
        out = {"factors": list(self.factors)}
        if self.modulus != RATIONALS:
            out["modulus"] = [str(c) for c in self.modulus]
        return out


def _name(factors: Sequence[int]) -> str:
    if not factors:
        return "pt"
    return "x".join(f"P{n}" for n in factors)


def multiprojective(factors: Sequence[int] = (), modulus=RATIONALS) -> VarietyModel:
    """P^n_1 x ... x P^n_r; an empty factor list gives the point."""
    factors = tuple(int(n) for n in factors)
    if any(n < 1 for n in factors):
        raise ValueError(f"projective factors need dimension >= 1, got {factors}")
    pres = RingPresentation(factors, tuple(modulus))
    # Euler sequence: c(T) = prod_i (1 + h_i)^(n_i + 1)
    c = pres.one()
    for i, n in enumerate(factors):
        c = c * (pres.one() + pres.gen(i)) ** (n + 1)
    return VarietyModel(_name(factors), pres, BundleData(sum(factors), c))


def point(modulus=RATIONALS) -> VarietyModel:
    return multiprojective((), modulus)


def line_bundle(X: VarietyModel, degrees: Sequence[int]) -> BundleData:
    degrees = list(degrees)
    if len(degrees) != X.presentation.generator_count:
        raise ValueError(
            f"{X.name} has {X.presentation.generator_count} factors, got degrees {degrees}"
        )
    c1 = GradedElement.linear(X.presentation, degrees)
    return BundleData(1, X.one() + c1)


def bundle_combine(a: BundleData, b: BundleData | None, op: str) -> BundleData:
    if op == "sum":
        if a.presentation != b.presentation:
            raise PresentationMismatchError("bundles live on different rings")
        return BundleData(a.rank + b.rank, a.total_chern * b.total_chern)
    if op == "dual":
        c = a.total_chern
        terms = {e: (v if sum(e) % 2 == 0 else -v) for e, v in c.terms.items()}
        return BundleData(a.rank, GradedElement(c.presentation, terms, _checked=True))
    raise ValueError(f"unknown bundle operation {op!r}")


def direct_sum(bundles: Sequence[BundleData], presentation: RingPresentation) -> BundleData:
    out = BundleData(0, presentation.one())
    for b in bundles:
        out = bundle_combine(out, b, "sum")
    return out


def split_bundle(roots: Sequence, presentation: RingPresentation) -> BundleData:
    """Bundle with Chern roots given as ``(multiplicity, degree-1 element)`` pairs.

    Negative multiplicities give virtual bundles.
    """
    rank = 0
    c = presentation.one()
    for mult, x in roots:
        rank += mult
        c = c * (presentation.one() + x) ** mult
    return BundleData(rank, c)


def hodge_diagonal_dims(X: VarietyModel) -> list:
    dims = [0] * (X.dimension + 1)
    for e in X.presentation.monomials():
        dims[sum(e)] += 1
    return dims


class MorphismModel:
    """A map f: source -> target given by f^* on generators and f_* on monomials.

    ``pushforward_images`` maps every source exponent vector to the image of
    that monomial in the target ring; together these columns are the
    pushforward matrix.
    """

    def __init__(self, source: VarietyModel, target: VarietyModel,
                 pullback_images: Sequence[GradedElement], pushforward_images: dict,
                 name: str = "f"):
        if len(pullback_images) != target.presentation.generator_count:
            raise ValueError("need one pullback image per target generator")
        for img in pullback_images:
            if img.presentation != source.presentation:
                raise PresentationMismatchError("pullback image outside the source ring")
        for n, img in zip(target.factors, pullback_images):
            if img ** (n + 1):
                raise ValueError("pullback images violate the target relations")
        self.source = source
        self.target = target
        self.pullback_images = tuple(pullback_images)
        self.pushforward_images = dict(pushforward_images)
        self.name = name

    def pullback(self, y: GradedElement) -> GradedElement:
        if y.presentation != self.target.presentation:
            raise PresentationMismatchError("pullback argument not on the target")
        src = self.source.presentation
        out = src.zero()
        for exps, c in y.terms.items():
            term = src.one()
            for img, e in zip(self.pullback_images, exps):
                if e:
                    term = term * img ** e
            out = out + term.scale(c)
        return out

    def pushforward(self, x: GradedElement) -> GradedElement:
        if x.presentation != self.source.presentation:
            raise PresentationMismatchError("pushforward argument not on the source")
        out = self.target.presentation.zero()
        for exps, c in x.terms.items():
            img = self.pushforward_images.get(exps)
            if img is not None:
                out = out + img.scale(c)
        return out

    def pushforward_matrix(self) -> list:
        """Rows indexed by target monomials, columns by source monomials."""
        rows = self.target.presentation.monomials()
        cols = self.source.presentation.monomials()
        zero = self.target.presentation.scalar(0)
        return [
            [
                self.pushforward_images[c].coefficient(r) if c in self.pushforward_images else zero
                for c in cols
            ]
            for r in rows
        ]

    def __repr__(self):
        return f"MorphismModel({self.name}: {self.source.name} -> {self.target.name})"


def projection_morphism(X: VarietyModel, keep: Sequence[int]) -> MorphismModel:
    keep = list(keep)
    r = X.presentation.generator_count
    if not keep or len(set(keep)) != len(keep) or any(not 0 <= i < r for i in keep):
        raise ValueError(f"invalid factor subset {keep} for {X.name}")
    keep = sorted(keep)
    dropped = [i for i in range(r) if i not in keep]
    Y = multiprojective([X.factors[i] for i in keep], X.modulus)
    pullback = [X.presentation.gen(i) for i in keep]
    push = {}
    for e in X.presentation.monomials():
        if all(e[i] == X.factors[i] for i in dropped):
            push[e] = GradedElement.monomial(Y.presentation, [e[i] for i in keep])
    name = "p_" + "".join(str(i + 1) for i in keep)
    return MorphismModel(X, Y, pullback, push, name)


def linear_embedding(m: int, X: VarietyModel) -> MorphismModel:
    """A linear P^m inside the projective space X = P^n."""
    if X.presentation.generator_count != 1:
        raise ValueError("linear_embedding needs a single projective space")
    n = X.factors[0]
    if not 0 <= m <= n:
        raise ValueError(f"need 0 <= m <= n, got m={m}, n={n}")
    F = multiprojective([m] if m else [], X.modulus)
    if m:
        pullback = [F.presentation.gen(0)]
        push = {
            (a,): GradedElement.monomial(X.presentation, (a + n - m,))
            for a in range(m + 1)
        }
    else:
        pullback = [F.presentation.zero()]
        push = {(): GradedElement.monomial(X.presentation, (n,))}
    return MorphismModel(F, X, pullback, push, f"j_{m},{n}")

