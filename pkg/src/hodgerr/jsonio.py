"""JSON readers for scalars, varieties, bundles, series and fixed-locus data."""
from __future__ import annotations

from .charclass import SeriesSpec
from .cohring import GradedElement, RingPresentation
from .equivariant import EigenLine, EigenLineSum, EquivariantBundle, FixedComponent
from .exactnum import RATIONALS, Scalar, as_scalar, parse_rational
from .variety import BundleData, VarietyModel, direct_sum, line_bundle, multiprojective

__all__ = [
    "ScenarioError",
    "parse_blocks",
    "parse_bundle",
    "parse_equivariant_bundle",
    "parse_fixed_component",
    "parse_graded",
    "parse_line_summands",
    "parse_scalar",
    "parse_series",
    "parse_variety",
]


class ScenarioError(ValueError):
    """Malformed input or an unknown scenario kind."""


def parse_scalar(data, modulus=RATIONALS) -> Scalar:
    try:
        if isinstance(data, dict):
            s = Scalar.from_json(data)
            return s if modulus == RATIONALS else as_scalar(s, modulus)
        return as_scalar(parse_rational(data), modulus)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ScenarioError(f"bad scalar {data!r}: {exc}") from None


def parse_variety(data) -> VarietyModel:
    """{factors: [n_1, ...], modulus: [...]?}"""
    if not isinstance(data, dict) or "factors" not in data:
        raise ScenarioError("variety must be an object with 'factors'")
    modulus = data.get("modulus")
    try:
        if modulus is None:
            return multiprojective(data["factors"])
        return multiprojective(data["factors"], tuple(parse_rational(c) for c in modulus))
    except (TypeError, ValueError) as exc:
        raise ScenarioError(f"bad variety {data!r}: {exc}") from None


def parse_graded(pres: RingPresentation, data) -> GradedElement:
    """GradedElement JSON, or a plain list [a_1, ...] meaning sum a_i h_i."""
    try:
        if isinstance(data, list):
            return GradedElement.linear(pres, [parse_scalar(c, pres.modulus) for c in data])
        return GradedElement.from_json(pres, data)
    except (TypeError, ValueError, KeyError) as exc:
        raise ScenarioError(f"bad graded element {data!r}: {exc}") from None


def parse_bundle(X: VarietyModel, data) -> BundleData:
    """{rank, chern}, {line: [...]}, or a list of those (direct sum)."""
    if isinstance(data, list):
        return direct_sum([parse_bundle(X, b) for b in data], X.presentation)
    if not isinstance(data, dict):
        raise ScenarioError(f"bad bundle {data!r}")
    try:
        if "line" in data:
            return line_bundle(X, [int(k) for k in data["line"]])
        return BundleData(int(data["rank"]), parse_graded(X.presentation, data["chern"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ScenarioError(f"bad bundle {data!r}: {exc}") from None


def parse_line_summands(data) -> list:
    """Bundle JSON restricted to sums of line bundles, as a list of degree vectors."""
    if isinstance(data, dict):
        data = [data]
    out = []
    for b in data:
        if not isinstance(b, dict) or "line" not in b:
            raise ScenarioError("this check needs bundles given as {line: [k_1, ...]}")
        out.append([int(k) for k in b["line"]])
    return out


def parse_blocks(data) -> list:
    """[{alpha: Scalar, mult: int}, ...] -> [(Scalar, int), ...]"""
    if not isinstance(data, list) or not data:
        raise ScenarioError("blocks must be a non-empty list")
    blocks = []
    for b in data:
        try:
            blocks.append((parse_scalar(b["alpha"]), int(b.get("mult", 1))))
        except (KeyError, TypeError, AttributeError) as exc:
            raise ScenarioError(f"bad block {b!r}") from exc
    return blocks


def _eigen_lines(F: VarietyModel, entries, key: str) -> EigenLineSum:
    lines = []
    for item in entries:
        try:
            value = item.get(key, item.get("eigenvalue"))
            if value is None:
                raise KeyError(key)
            lines.append(
                EigenLine(
                    parse_scalar(value, F.modulus),
                    parse_graded(F.presentation, item.get("c1", {"terms": []})),
                    int(item.get("mult", 1)),
                )
            )
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise ScenarioError(f"bad eigen-line {item!r}: {exc}") from None
    return EigenLineSum(lines)


def parse_fixed_component(data) -> FixedComponent:
    """{factors, modulus?, conormal: [{lambda, c1, mult}, ...]}"""
    F = parse_variety(data)
    return FixedComponent(F, _eigen_lines(F, data.get("conormal", []), "lambda"))


def parse_equivariant_bundle(data) -> EquivariantBundle:
    """{factors, modulus?, conormal?, lines: [{mu, c1, mult}, ...]}"""
    C = parse_fixed_component(data)
    return EquivariantBundle(C, _eigen_lines(C.F, data.get("lines", []), "mu"))


def parse_series(data) -> SeriesSpec:
    """{name: "exp" | "todd" | "inv_todd"} or {coeffs: [...]}"""
    try:
        return SeriesSpec.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise ScenarioError(f"bad series {data!r}: {exc}") from None
