from __future__ import annotations

from typing import Iterable


class IntPolynomial:
    """Univariate polynomial with exact integer coefficients, lowest degree first."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable[int] = ()):
        coeffs = [int(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coefficients = tuple(coeffs)

    @classmethod
    def from_counts(cls, exponents: Iterable[int]) -> "IntPolynomial":
        """Sum of z**e over the given exponents."""
        counts: list[int] = []
        for e in exponents:
            if e >= len(counts):
                counts.extend([0] * (e + 1 - len(counts)))
            counts[e] += 1
        return cls(counts)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, i: int) -> int:
        return self.coefficients[i] if 0 <= i < len(self.coefficients) else 0

    def __call__(self, z: int) -> int:
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * z + c
        return acc

    def __eq__(self, other) -> bool:
        if isinstance(other, IntPolynomial):
            return self.coefficients == other.coefficients
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coefficients)

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        m = max(len(self.coefficients), len(other.coefficients))
        return IntPolynomial(self[i] + other[i] for i in range(m))

    def prefix_sums(self, length: int | None = None) -> list[int]:
        length = len(self.coefficients) if length is None else length
        out, acc = [], 0
        for i in range(length):
            acc += self[i]
            out.append(acc)
        return out

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coefficients)})"

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        terms = []
        for i, c in enumerate(self.coefficients):
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                power = "z" if i == 1 else f"z^{i}"
                body = power if mag == 1 else f"{mag}{power}"
            terms.append(("-" if c < 0 else "+", body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out
