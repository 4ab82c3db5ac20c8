"""Both sides of the Riemann-Roch type identities, compared against independent oracles.

The right-hand sides never touch characteristic classes: Euler characteristics
come from binomial polynomials, section traces from enumerating monomials,
pushforward K-classes from the Koszul resolution.  Sides are compared after
canonical JSON serialization, so equality is exact.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, product
from math import comb, factorial
from typing import Sequence

from . import ncseries
from .charclass import (
    SeriesSpec,
    chern_character,
    mult_class,
    split_mult_class,
    tangent_roots,
    todd_class,
)
from .cohring import GradedElement
from .equivariant import (
    EigenLine,
    EigenLineSum,
    FixedComponent,
    LocalizationError,
    common_modulus,
    conormal_determinant,
    diagonal_pn_fixed_data,
    equivariant_ch,
    equivariant_euler,
    exterior_power,
    localization_invertible,
)
from .exactnum import Scalar, as_scalar, root_of_unity
from .jsonio import ScenarioError, parse_blocks, parse_line_summands, parse_scalar, parse_variety
from .variety import (
    VarietyModel,
    direct_sum,
    line_bundle,
    linear_embedding,
    multiprojective,
    projection_morphism,
)

__all__ = [
    "KINDS",
    "Report",
    "ScenarioError",
    "atiyah_bott_check",
    "binomial_poly",
    "dexp_check",
    "equivariant_grr_check",
    "equivariant_hrr_check",
    "euler_char_oracle",
    "grr_embedding_check",
    "grr_projection_check",
    "hrr_check",
    "run_scenario",
    "section_trace_oracle",
    "standard_grid",
    "summarize",
    "todd_consistency_check",
    "todd_distribution_check",
]

KINDS = (
    "hrr",
    "grr_projection",
    "grr_embedding",
    "atiyah_bott",
    "equivariant_hrr",
    "equivariant_grr",
    "dexp",
    "todd_consistency",
)


def canonical(value) -> str:
    return json.dumps(value, sort_keys=True, separators=(",", ":"))


@dataclass
class Report:
    id: str
    kind: str
    lhs: object
    rhs: object
    equal: bool = field(init=False)
    notes: list = field(default_factory=list)
    errored: bool = False

    def __post_init__(self):
        self.equal = (not self.errored) and canonical(self.lhs) == canonical(self.rhs)

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "kind": self.kind,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "equal": self.equal,
            "notes": list(self.notes),
        }


def _ser(x):
    if isinstance(x, (Scalar, GradedElement, ncseries.NCPoly)):
        return x.to_json()
    if isinstance(x, (list, tuple)):
        return [_ser(v) for v in x]
    return x


# oracles -------------------------------------------------------------------

def binomial_poly(k: int, n: int) -> Fraction:
    """binom(n + k, n) as the polynomial (k+1)(k+2)...(k+n)/n!, for any integer k."""
    num = 1
    for i in range(1, n + 1):
        num *= k + i
    return Fraction(num, factorial(n))


def euler_char_oracle(X: VarietyModel, summands: Sequence[Sequence[int]]) -> Scalar:
    """chi(X, sum of O(k)) for X a product of projective spaces."""
    total = Fraction(0)
    for degrees in summands:
        if len(degrees) != len(X.factors):
            raise ScenarioError(f"line bundle {list(degrees)} does not fit {X.name}")
        term = Fraction(1)
        for n, k in zip(X.factors, degrees):
            term *= binomial_poly(k, n)
        total += term
    return X.presentation.scalar(total)


def section_trace_oracle(n: int, blocks: Sequence, k: int) -> Scalar:
    """Trace of diag(alpha) on the monomial basis of H^0(P^n, O(k))."""
    if k < 0:
        raise ValueError("section traces are only defined here for k >= 0")
    modulus = common_modulus(a for a, _ in blocks)
    weights = []
    for a, m in blocks:
        weights.extend([as_scalar(a, modulus)] * int(m))
    if len(weights) != n + 1:
        raise ValueError(f"block multiplicities must sum to n+1 = {n + 1}")
    total = Scalar(0, modulus)
    # a degree-k monomial is a multiset of k coordinates
    for choice in combinations_with_replacement(range(n + 1), k):
        w = Scalar(1, modulus)
        for c in choice:
            w = w * weights[c]
        total = total + w
    return total


def koszul_class(m: int, n: int, k: int) -> list:
    """[j_* O_{P^m}(k)] = sum_a (-1)^a binom(n-m, a) [O_{P^n}(k - a)], as (coeff, twist) pairs."""
    return [((-1) ** a * comb(n - m, a), k - a) for a in range(n - m + 1)]


# checks ----------------------------------------------------------------------

@lru_cache(maxsize=None)
def _todd(X: VarietyModel) -> GradedElement:
    return todd_class(X)


def hrr_check(X: VarietyModel, summands: Sequence[Sequence[int]], *,
              todd_series: SeriesSpec | None = None, id: str = "hrr") -> Report:
    E = direct_sum([line_bundle(X, d) for d in summands], X.presentation)
    td = _todd(X) if todd_series is None else mult_class(todd_series, X.tangent)
    lhs = (chern_character(E) * td).integrate()
    rhs = euler_char_oracle(X, summands)
    return Report(id, "hrr", lhs.to_json(), rhs.to_json())


def grr_projection_check(X: VarietyModel, keep: Sequence[int], degrees: Sequence[int],
                         *, id: str = "grr_projection") -> Report:
    f = projection_morphism(X, keep)
    Y = f.target
    E = line_bundle(X, degrees)
    lhs = f.pushforward(chern_character(E) * _todd(X))
    kept = sorted(keep)
    dropped = [i for i in range(len(X.factors)) if i not in kept]
    chi = Fraction(1)
    for i in dropped:
        chi *= binomial_poly(degrees[i], X.factors[i])
    rhs = chern_character(line_bundle(Y, [degrees[i] for i in kept])) * _todd(Y)
    rhs = rhs.scale(chi)
    return Report(id, "grr_projection", lhs.to_json(), rhs.to_json(),
                  notes=[f"{f.name}: {X.name} -> {Y.name}"])


def grr_embedding_check(m: int, n: int, k: int, *, id: str = "grr_embedding") -> Report:
    Pn = multiprojective([n] if n else [])
    if n == 0:
        raise ScenarioError("grr_embedding needs n >= 1")
    j = linear_embedding(m, Pn)
    F = j.source
    lhs = j.pushforward(chern_character(line_bundle(F, [k] if m else [])) * _todd(F))
    ch_class = Pn.presentation.zero()
    for coeff, twist in koszul_class(m, n, k):
        ch_class = ch_class + chern_character(line_bundle(Pn, [twist])).scale(coeff)
    rhs = ch_class * _todd(Pn)
    return Report(id, "grr_embedding", lhs.to_json(), rhs.to_json())


def isolated_fixed_points(n: int, alphas: Sequence, k: int) -> list:
    """Fixed points of diag(alpha_0, ..., alpha_n) on P^n as (component, fibre eigenvalue).

    Repeated eigenvalues are allowed here; they show up as a conormal
    eigenvalue equal to 1.
    """
    modulus = common_modulus(alphas)
    alphas = [as_scalar(a, modulus) for a in alphas]
    if len(alphas) != n + 1:
        raise ScenarioError(f"need n+1 = {n + 1} eigenvalues, got {len(alphas)}")
    pt = multiprojective([], modulus)
    zero = pt.presentation.zero()
    out = []
    for i, ai in enumerate(alphas):
        if not ai:
            raise ScenarioError("eigenvalues must be nonzero")
        conormal = EigenLineSum(
            EigenLine(aj / ai, zero, 1) for j, aj in enumerate(alphas) if j != i
        )
        out.append((FixedComponent(pt, conormal, ambient_dimension=n), ai ** k))
    return out


def atiyah_bott_check(n: int, alphas: Sequence, k: int, *, id: str = "atiyah_bott") -> Report:
    points = isolated_fixed_points(n, alphas, k)
    lhs = None
    for i, (C, fibre) in enumerate(points):
        if not localization_invertible(C):
            raise LocalizationError(
                f"localization criterion failed: det(1 - d_x g) = 0 at fixed point {i}"
            )
        term = fibre / conormal_determinant(C)
        lhs = term if lhs is None else lhs + term
    blocks = [(a, 1) for a in alphas]
    rhs = section_trace_oracle(n, blocks, k)
    return Report(id, "atiyah_bott", lhs.to_json(), rhs.to_json())


def _fixed_data(n, blocks, k):
    data = diagonal_pn_fixed_data(n, blocks, k)
    for i, (C, _) in enumerate(data):
        if not localization_invertible(C):
            raise LocalizationError(
                f"localization criterion failed on fixed component {i}"
            )
    return data


def equivariant_hrr_check(n: int, blocks: Sequence, k: int, *,
                          id: str = "equivariant_hrr") -> Report:
    lhs = None
    for C, B in _fixed_data(n, blocks, k):
        integrand = equivariant_ch(B) * _todd(C.F) * equivariant_euler(C).invert_unit()
        term = integrand.integrate()
        lhs = term if lhs is None else lhs + term
    rhs = section_trace_oracle(n, blocks, k)
    return Report(id, "equivariant_hrr", lhs.to_json(), rhs.to_json())


def koszul_euler(C: FixedComponent) -> GradedElement:
    """sum_a (-1)^a ch(Lambda^a conormal) by enumerating exterior powers line by line."""
    pres = C.F.presentation
    out = pres.zero()
    for a in range(C.conormal.rank + 1):
        for mu, c1 in exterior_power(C.conormal, a, pres):
            term = c1.series_apply(_exp_coeffs(pres.dimension)).scale(mu)
            out = out + (term if a % 2 == 0 else -term)
    return out


def _exp_coeffs(d):
    return [Fraction(1, factorial(i)) for i in range(d + 1)]


def equivariant_grr_check(n: int, blocks: Sequence, component: int, twist: int = 0,
                          weight=1, *, id: str = "equivariant_grr") -> Report:
    """Equivariant GRR for the inclusion j of fixed component ``component`` into P^n.

    The source carries the trivial action and the sheaf O(twist) with fibre
    eigenvalue ``weight``.  Both sides are listed component by component on
    the fixed locus of P^n; ch(j_* E) restricted to the fixed locus comes from
    the equivariant Koszul resolution.
    """
    data = _fixed_data(n, blocks, 0)
    if not 0 <= component < len(data):
        raise ScenarioError(f"component index {component} out of range")
    lhs, rhs = [], []
    for l, (C, _) in enumerate(data):
        pres = C.F.presentation
        if l != component:
            lhs.append(pres.zero())
            rhs.append(pres.zero())
            continue
        h = pres.gen(0) if pres.generator_count else pres.zero()
        mu = as_scalar(weight, pres.modulus)
        ch_e = h.scale(twist).series_apply(_exp_coeffs(pres.dimension)).scale(mu)
        # source X = F has trivial action: its own Euler class is 1
        lhs.append(ch_e * _todd(C.F))
        ch_push = koszul_euler(C) * ch_e
        rhs.append(ch_push * _todd(C.F) * equivariant_euler(C).invert_unit())
    return Report(id, "equivariant_grr", _ser(lhs), _ser(rhs))


def todd_distribution_check(C: FixedComponent) -> bool:
    """e_g * (td_F / e_g) = td_F, with e_g on the left from the exterior-power sum."""
    td_g = _todd(C.F) * equivariant_euler(C).invert_unit()
    return koszul_euler(C) * td_g == _todd(C.F)


def todd_consistency_check(X: VarietyModel, *, id: str = "todd_consistency") -> Report:
    lhs = todd_class(X)
    rhs = split_mult_class(SeriesSpec.named("todd"), tangent_roots(X), X.presentation)
    return Report(id, "todd_consistency", lhs.to_json(), rhs.to_json(), notes=[X.name])


def dexp_check(N: int | None = None, matrix: dict | None = None, *, id: str = "dexp") -> Report:
    if matrix is not None:
        A = ncseries.NilpotentMatrix(matrix["X"])
        B = ncseries.NilpotentMatrix(matrix["Y"])
        if "size" in matrix and int(matrix["size"]) != A.size:
            raise ScenarioError("matrix size does not match the entries")
        lhs, rhs = ncseries.matrix_dexp_sides(A, B)
        ser = lambda p: [[[str(x) for x in row] for row in m] for m in p]  # noqa: E731
        return Report(id, "dexp", ser(lhs), ser(rhs))
    residual = ncseries.dexp_identity_check(N)
    return Report(id, "dexp", residual.to_json(), ncseries.NCPoly(N).to_json())


# scenario plumbing -----------------------------------------------------------

def _get(payload, key, kind):
    try:
        return payload[key]
    except KeyError:
        raise ScenarioError(f"{kind} scenario is missing {key!r}") from None


def _morphism(payload, kind, expected):
    """Optional {morphism: {kind, ...}} block; flat keys are accepted as well."""
    m = payload.get("morphism", {})
    if not isinstance(m, dict) or m.get("kind", expected) != expected:
        raise ScenarioError(f"{kind} scenario needs a {expected!r} morphism")
    return m


def run_scenario(scenario: dict, default_id: str = "0") -> Report:
    """Evaluate one scenario object; raises ScenarioError or LocalizationError."""
    if not isinstance(scenario, dict):
        raise ScenarioError("a scenario must be a JSON object")
    kind = scenario.get("kind")
    sid = str(scenario.get("id", default_id))
    if kind not in KINDS:
        raise ScenarioError(f"unknown scenario kind {kind!r}")
    p = scenario
    try:
        if kind == "hrr":
            X = parse_variety(_get(p, "variety", kind))
            return hrr_check(X, parse_line_summands(_get(p, "bundle", kind)), id=sid)
        if kind == "grr_projection":
            X = parse_variety(_get(p, "variety", kind))
            (degrees,) = parse_line_summands(_get(p, "bundle", kind))
            keep = _morphism(p, kind, "projection").get("keep", p.get("keep"))
            if keep is None:
                raise ScenarioError("grr_projection scenario is missing 'keep'")
            return grr_projection_check(X, [int(i) for i in keep], degrees, id=sid)
        if kind == "grr_embedding":
            m = _morphism(p, kind, "linear_embedding").get("m", p.get("m"))
            if "variety" in p:
                factors = parse_variety(p["variety"]).factors
                if len(factors) != 1:
                    raise ScenarioError("linear embeddings need a single projective space")
                n = factors[0]
            else:
                n = _get(p, "n", kind)
            if m is None:
                raise ScenarioError("grr_embedding scenario is missing 'm'")
            return grr_embedding_check(int(m), int(n), int(p.get("k", 0)), id=sid)
        if kind in ("atiyah_bott", "equivariant_hrr", "equivariant_grr"):
            n = int(_get(p, "n", kind))
            blocks = parse_blocks(_get(p, "blocks", kind))
            if kind == "atiyah_bott":
                alphas = []
                for a, m in blocks:
                    alphas.extend([a] * m)
                return atiyah_bott_check(n, alphas, int(p.get("k", 0)), id=sid)
            if kind == "equivariant_hrr":
                return equivariant_hrr_check(n, blocks, int(p.get("k", 0)), id=sid)
            return equivariant_grr_check(
                n, blocks, int(_get(p, "component", kind)), int(p.get("k", 0)),
                parse_scalar(p.get("weight", 1)), id=sid,
            )
        if kind == "dexp":
            if "matrix" in p:
                return dexp_check(matrix=p["matrix"], id=sid)
            return dexp_check(int(p.get("N", 6)), id=sid)
        if kind == "todd_consistency":
            return todd_consistency_check(parse_variety(_get(p, "variety", kind)), id=sid)
    except (ScenarioError, LocalizationError):
        raise
    except (TypeError, ValueError, KeyError, IndexError) as exc:
        raise ScenarioError(f"malformed {kind} scenario: {exc}") from exc
    raise AssertionError("unreachable")  # pragma: no cover


def error_report(scenario: dict, default_id: str, exc: Exception) -> Report:
    kind = scenario.get("kind", "?") if isinstance(scenario, dict) else "?"
    sid = str(scenario.get("id", default_id)) if isinstance(scenario, dict) else default_id
    return Report(sid, kind, None, None, notes=[str(exc)], errored=True)


def summarize(reports: Sequence[Report]) -> dict:
    errored = sum(1 for r in reports if r.errored)
    passed = sum(1 for r in reports if r.equal)
    return {"passed": passed, "failed": len(reports) - passed - errored, "errored": errored}


# the standard scenario grid ----------------------------------------------------

GRID_FIELD = 12  # Q(zeta_12) holds zeta_3 = z^4 and zeta_4 = z^3


def _scalar_json(x) -> object:
    return x.to_json() if isinstance(x, Scalar) else str(x)


def eigenvalue_pool() -> list:
    mod = root_of_unity(GRID_FIELD).modulus
    return [
        Scalar(2, mod),
        Scalar(3, mod),
        Scalar(Fraction(1, 2), mod),
        root_of_unity(3, GRID_FIELD),
        root_of_unity(4, GRID_FIELD),
    ]


def compositions(total: int) -> list:
    """Ordered tuples of positive integers summing to ``total``."""
    if total == 0:
        return [()]
    return [(first,) + rest for first in range(1, total + 1) for rest in compositions(total - first)]


def standard_grid(seed: int = 2024) -> list:
    grid = []
    varieties = [[1], [2], [3], [1, 1], [1, 2]]
    for factors in varieties:
        for degrees in product(range(-4, 5), repeat=len(factors)):
            grid.append({"kind": "hrr", "variety": {"factors": factors},
                         "bundle": {"line": list(degrees)}})
    for factors in ([1, 1], [1, 2]):
        for r in range(1, len(factors) + 1):
            for keep in combinations(range(len(factors)), r):
                for degrees in product(range(-3, 4), repeat=len(factors)):
                    grid.append({"kind": "grr_projection", "variety": {"factors": factors},
                                 "keep": list(keep), "bundle": {"line": list(degrees)}})
    for n in range(1, 4):
        for m in range(n):
            for k in range(-3, 4):
                grid.append({"kind": "grr_embedding", "m": m, "n": n, "k": k})
    pool = eigenvalue_pool()
    for n in range(1, 4):
        for alphas in combinations(pool, n + 1):
            for k in range(5):
                grid.append({"kind": "atiyah_bott", "n": n, "k": k,
                             "blocks": [{"alpha": a.to_json(), "mult": 1} for a in alphas]})
    pools = [[1, 2, Fraction(1, 2), 3], [pool[3], 2, pool[4], Fraction(1, 2)]]
    for n in range(1, 4):
        for pattern in compositions(n + 1):
            for alphas in pools:
                for k in range(4):
                    grid.append({"kind": "equivariant_hrr", "n": n, "k": k, "blocks": [
                        {"alpha": _scalar_json(a), "mult": m}
                        for a, m in zip(alphas, pattern)
                    ]})
    for n in range(1, 4):
        for pattern in compositions(n + 1):
            for comp in range(len(pattern)):
                for k in (-1, 0, 2):
                    grid.append({"kind": "equivariant_grr", "n": n, "k": k, "component": comp,
                                 "blocks": [{"alpha": str(a), "mult": m}
                                            for a, m in zip([1, 2, Fraction(1, 2), 3], pattern)]})
    for factors in ([], [1], [2], [3], [1, 1], [1, 2], [2, 2], [1, 1, 1]):
        grid.append({"kind": "todd_consistency", "variety": {"factors": factors}})
    for N in range(1, 7):
        grid.append({"kind": "dexp", "N": N})
    rng = random.Random(seed)
    for size in (3, 4, 5):
        A = ncseries.random_nilpotent(size, rng)
        B = ncseries.random_nilpotent(size, rng)
        grid.append({"kind": "dexp", "matrix": {"size": size, "X": A.to_json(), "Y": B.to_json()}})
    for i, s in enumerate(grid):
        s["id"] = f"{s['kind']}-{i:04d}"
    return grid
