"""Ehrhart counts, h*-polynomials, dominance and the dominance conjecture check."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import ValidationError
from .flows import kostant, unit_netflow
from .graphmat import SpinalGraph, is_non_nested
from .polynomial import IntPolynomial


def ehrhart_values(g: SpinalGraph, tmax: int) -> list[int]:
    """L(0), ..., L(tmax): lattice points in the t-th dilate of F_G."""
    if tmax < 0:
        raise ValidationError("tmax must be nonnegative")
    return [kostant(g, unit_netflow(g, t)) for t in range(tmax + 1)]


def hstar_from_values(values, dim: int) -> IntPolynomial:
    """h* from L(0..dim) by the alternating binomial transform."""
    if len(values) < dim + 1:
        raise ValidationError(f"need {dim + 1} Ehrhart values, got {len(values)}")
    return IntPolynomial(
        sum((-1) ** i * comb(dim + 1, i) * values[j - i] for i in range(j + 1))
        for j in range(dim + 1)
    )


def hstar_polynomial(g: SpinalGraph) -> IntPolynomial:
    dim = g.d
    return hstar_from_values(ehrhart_values(g, dim), dim)


def finite_difference(values, order: int) -> list[int]:
    vals = list(values)
    for _ in range(order):
        vals = [b - a for a, b in zip(vals, vals[1:])]
    return vals


def ehrhart_normalized_leading(g: SpinalGraph) -> int:
    """dim! times the leading Ehrhart coefficient, via the dim-th finite difference."""
    dim = g.d
    vals = ehrhart_values(g, dim + 1)
    top = finite_difference(vals, dim)
    if top[0] != top[1]:
        raise AssertionError(f"Ehrhart values are not polynomial of degree {dim}: {vals}")
    return top[0]


def hstar_via_descents(g: SpinalGraph) -> IntPolynomial:
    """Descent generating function of the upper G-cyclic orders (non-nested g only)."""
    from .cyclic import descent_polynomial, enumerate_orders

    if not is_non_nested(g):
        raise ValidationError("descent formula for h* requires a non-nested graph")
    return descent_polynomial(enumerate_orders(g, "upper"))


def dominance_violation(a: IntPolynomial, b: IntPolynomial) -> int | None:
    """First index where a prefix sum of a exceeds that of b, if any."""
    length = max(len(a.coefficients), len(b.coefficients))
    for i, (x, y) in enumerate(zip(a.prefix_sums(length), b.prefix_sums(length))):
        if x > y:
            return i
    return None


def dominates(a: IntPolynomial, b: IntPolynomial) -> bool:
    """True when a is dominated by b: every prefix sum of a is at most that of b."""
    return dominance_violation(a, b) is None


@dataclass(frozen=True)
class ConjectureReport:
    lower: IntPolynomial
    hstar: IntPolynomial
    upper: IntPolynomial
    lower_violation: int | None
    upper_violation: int | None

    @property
    def passed(self) -> bool:
        return self.lower_violation is None and self.upper_violation is None

    def to_dict(self) -> dict:
        return {
            "lower": [str(c) for c in self.lower.coefficients],
            "hstar": [str(c) for c in self.hstar.coefficients],
            "upper": [str(c) for c in self.upper.coefficients],
            "lower_le_hstar": self.lower_violation is None,
            "hstar_le_upper": self.upper_violation is None,
            "lower_violation_index": self.lower_violation,
            "upper_violation_index": self.upper_violation,
            "passed": self.passed,
        }


def check_conjecture(g: SpinalGraph) -> ConjectureReport:
    """Compare P_lower, h* and P_upper under prefix-sum dominance."""
    from .cyclic import descent_polynomial, enumerate_orders

    lower = descent_polynomial(enumerate_orders(g, "lower"))
    upper = descent_polynomial(enumerate_orders(g, "upper"))
    h = hstar_polynomial(g)
    return ConjectureReport(lower, h, upper, dominance_violation(lower, h), dominance_violation(h, upper))
