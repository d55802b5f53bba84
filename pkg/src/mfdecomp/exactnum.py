"""Exact arithmetic foundation.

Arbitrary-precision rationals come from ``fractions.Fraction``.  On top of
that we implement elements of the 2-power cyclotomic fields Q(zeta_{2^m}),
their field norms and the extended 2-adic valuation
v_2(x) = v_2(N(x)) / [Q(zeta) : Q].

Only 2-power orders are supported: the minimal polynomial is then the
single binomial x^{2^{m-1}} + 1, so reduction never needs more than the
rule zeta^{2^{m-1}} = -1.  All values are immutable and all operations are
pure functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

__all__ = [
    "CyclotomicElement",
    "ExtendedValuation",
    "INFINITE_VALUATION",
    "two_adic_valuation_rational",
    "zeta",
]

#: Valuations are exact rationals, except for the zero element which gets
#: +infinity (``math.inf`` compares above every Fraction).
ExtendedValuation = Union[Fraction, float]

INFINITE_VALUATION: float = math.inf


def _v2_int(n: int) -> int:
    if n == 0:
        raise ValueError("valuation of zero integer")
    return (n & -n).bit_length() - 1


def two_adic_valuation_rational(x: Fraction) -> ExtendedValuation:
    """Ordinary 2-adic valuation of a rational number (+inf for 0)."""
    if x == 0:
        return INFINITE_VALUATION
    return Fraction(_v2_int(x.numerator) - _v2_int(x.denominator))


def _is_two_power(n: int) -> bool:
    return n >= 2 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class CyclotomicElement:
    """Element of Q(zeta_{2^m}) in the power basis 1, zeta, ..., zeta^{2^{m-1}-1}.

    ``order`` is 2^m with m >= 1; ``coords`` has length 2^{m-1} (the field
    degree).  For order 2 the field is Q itself (zeta_2 = -1).
    """

    order: int
    coords: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not _is_two_power(self.order):
            raise ValueError(f"order must be a power of two >= 2, got {self.order}")
        if len(self.coords) != self.degree:
            raise ValueError(
                f"need {self.degree} coordinates for order {self.order}, "
                f"got {len(self.coords)}"
            )

    @property
    def degree(self) -> int:
        return self.order // 2

    @classmethod
    def from_rational(cls, order: int, value) -> "CyclotomicElement":
        coords = [Fraction(0)] * (order // 2)
        coords[0] = Fraction(value)
        return cls(order, tuple(coords))

    @classmethod
    def zeta_power(cls, order: int, exponent: int) -> "CyclotomicElement":
        """zeta_{order}^exponent, reduced into the power basis."""
        degree = order // 2
        exponent %= order
        coords = [Fraction(0)] * degree
        if exponent < degree:
            coords[exponent] = Fraction(1)
        else:
            coords[exponent - degree] = Fraction(-1)
        return cls(order, tuple(coords))

    def _check_same_field(self, other: "CyclotomicElement") -> None:
        if self.order != other.order:
            raise ValueError(
                f"mixed cyclotomic orders {self.order} and {other.order}"
            )

    def __add__(self, other: "CyclotomicElement") -> "CyclotomicElement":
        self._check_same_field(other)
        return CyclotomicElement(
            self.order, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    def __sub__(self, other: "CyclotomicElement") -> "CyclotomicElement":
        self._check_same_field(other)
        return CyclotomicElement(
            self.order, tuple(a - b for a, b in zip(self.coords, other.coords))
        )

    def __neg__(self) -> "CyclotomicElement":
        return CyclotomicElement(self.order, tuple(-a for a in self.coords))

    def __mul__(self, other: "CyclotomicElement") -> "CyclotomicElement":
        self._check_same_field(other)
        degree = self.degree
        acc = [Fraction(0)] * degree
        for i, a in enumerate(self.coords):
            if a == 0:
                continue
            for j, b in enumerate(other.coords):
                if b == 0:
                    continue
                k = i + j
                if k < degree:
                    acc[k] += a * b
                else:
                    acc[k - degree] -= a * b  # zeta^degree = -1
        return CyclotomicElement(self.order, tuple(acc))

    def scale(self, factor) -> "CyclotomicElement":
        f = Fraction(factor)
        return CyclotomicElement(self.order, tuple(f * a for a in self.coords))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords)

    def is_rational(self) -> bool:
        return all(a == 0 for a in self.coords[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coords[0]

    def galois(self, k: int) -> "CyclotomicElement":
        """Apply the automorphism zeta -> zeta^k (k odd)."""
        if k % 2 == 0:
            raise ValueError("Galois exponent must be odd")
        acc = CyclotomicElement.from_rational(self.order, 0)
        for i, a in enumerate(self.coords):
            if a == 0:
                continue
            acc = acc + CyclotomicElement.zeta_power(self.order, i * k).scale(a)
        return acc

    def conjugates(self) -> list["CyclotomicElement"]:
        return [self.galois(k) for k in range(1, self.order, 2)]

    def norm(self) -> Fraction:
        """Field norm down to Q: the product of all Galois conjugates."""
        prod = CyclotomicElement.from_rational(self.order, 1)
        for conj in self.conjugates():
            prod = prod * conj
        return prod.rational_value()

    def two_adic_valuation(self) -> ExtendedValuation:
        """Extended 2-adic valuation v_2(x) = v_2(N(x)) / degree; +inf at 0."""
        if self.is_zero():
            return INFINITE_VALUATION
        nrm = self.norm()
        return two_adic_valuation_rational(nrm) / self.degree


def zeta(order: int) -> CyclotomicElement:
    """The distinguished primitive root of unity zeta_{order}."""
    return CyclotomicElement.zeta_power(order, 1)


def norm(x: CyclotomicElement) -> Fraction:
    return x.norm()


def two_adic_valuation(x: CyclotomicElement) -> ExtendedValuation:
    return x.two_adic_valuation()
