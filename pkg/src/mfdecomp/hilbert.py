"""Line bundles on weighted projective lines and Hilbert-function tools.

h0/h1 of O(m) on P(a,b) are lattice-point counts, computed by direct
enumeration rather than floor-function closed forms (slower, but immune to
off-by-one mistakes at the degrees we care about).  ``deconvolve`` is the
engine that recovers the multiset of twists of a split bundle from its
Hilbert function: greedy division of formal power series with a
nonnegativity constraint, then exact re-convolution over a verification
window.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator

__all__ = [
    "DeconvolutionError",
    "HilbertFunction",
    "NegativeMultiplicity",
    "ResidualMismatch",
    "SerreDualityReport",
    "TwistMultiset",
    "WeightedLine",
    "deconvolve",
    "default_verify_through",
    "h0_dim",
    "h1_dim",
    "serre_duality_check",
]


@dataclass(frozen=True)
class WeightedLine:
    """The weighted projective line P(a, b)."""

    a: int
    b: int

    def __post_init__(self) -> None:
        if self.a < 1 or self.b < 1:
            raise ValueError(f"weights must be positive, got ({self.a}, {self.b})")


def h0_dim(line: WeightedLine, m: int) -> int:
    """dim H^0(P(a,b); O(m)): pairs (lam, mu) >= 0 with lam*a + mu*b = m."""
    if m < 0:
        return 0
    count = 0
    for lam in range(m // line.a + 1):
        if (m - lam * line.a) % line.b == 0:
            count += 1
    return count


def h1_dim(line: WeightedLine, m: int) -> int:
    """dim H^1(P(a,b); O(m)): pairs (lam, mu) < 0 with lam*a + mu*b = m."""
    if m >= 0:
        return 0
    count = 0
    lam = -1
    while lam * line.a > m:
        rest = m - lam * line.a
        if rest % line.b == 0 and rest // line.b <= -1:
            count += 1
        lam -= 1
    # lam*a == m (mu would be 0, not negative) or below: nothing more.
    return count


@dataclass(frozen=True)
class SerreDualityReport:
    line: WeightedLine
    lo: int
    hi: int
    ok: bool
    first_violation: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def serre_duality_check(line: WeightedLine, lo: int, hi: int) -> SerreDualityReport:
    """Check h0(m) = h1(-m - a - b) for every m in [lo, hi]."""
    shift = line.a + line.b
    for m in range(lo, hi + 1):
        if h0_dim(line, m) != h1_dim(line, -m - shift):
            return SerreDualityReport(line, lo, hi, False, m)
    return SerreDualityReport(line, lo, hi, True)


class HilbertFunction:
    """Nonnegative integer function of the degree, zero below ``min_degree``.

    Wraps either an explicit list of values (extended by zero above its
    support only if ``finite``) or a callable evaluated on demand.
    """

    def __init__(
        self,
        source: Callable[[int], int] | list[int] | tuple[int, ...],
        min_degree: int = 0,
        finite: bool = False,
    ) -> None:
        self.min_degree = min_degree
        if callable(source):
            if finite:
                raise ValueError("finite=True needs an explicit value list")
            self._func: Callable[[int], int] | None = source
            self._values: tuple[int, ...] | None = None
        else:
            self._func = None
            self._values = tuple(source)
        self.finite = finite

    @classmethod
    def from_values(cls, values, min_degree: int = 0) -> "HilbertFunction":
        """A finitely supported function (zero outside the listed window)."""
        return cls(list(values), min_degree=min_degree, finite=True)

    def __call__(self, k: int) -> int:
        if k < self.min_degree:
            return 0
        if self._values is not None:
            i = k - self.min_degree
            if i < len(self._values):
                return self._values[i]
            if self.finite:
                return 0
            raise IndexError(f"degree {k} beyond tabulated range")
        assert self._func is not None
        return self._func(k)

    def values(self, lo: int, hi: int) -> list[int]:
        return [self(k) for k in range(lo, hi + 1)]


@dataclass(frozen=True)
class TwistMultiset:
    """Multiplicities of shifts: mult[i] summands twisted by -i."""

    multiplicities: dict[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        cleaned = {i: c for i, c in self.multiplicities.items() if c != 0}
        if any(c < 0 for c in cleaned.values()):
            raise ValueError("multiplicities must be >= 0")
        object.__setattr__(self, "multiplicities", cleaned)

    def __getitem__(self, i: int) -> int:
        return self.multiplicities.get(i, 0)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self.multiplicities.items()))

    def total(self) -> int:
        return sum(self.multiplicities.values())

    def max_shift(self) -> int:
        return max(self.multiplicities, default=0)

    def as_list(self, length: int | None = None) -> list[int]:
        n = (self.max_shift() + 1) if length is None else length
        return [self[i] for i in range(n)]

    def convolve(self, block: HilbertFunction, k: int) -> int:
        return sum(c * block(k - i) for i, c in self.multiplicities.items())


class DeconvolutionError(ValueError):
    pass


class NegativeMultiplicity(DeconvolutionError):
    def __init__(self, shift: int, value: int) -> None:
        super().__init__(f"multiplicity at shift {shift} would be {value} < 0")
        self.shift = shift
        self.value = value


class ResidualMismatch(DeconvolutionError):
    def __init__(self, degree: int, expected: int, got: int) -> None:
        super().__init__(
            f"convolution check failed at degree {degree}: "
            f"target {expected}, reconstruction {got}"
        )
        self.degree = degree
        self.expected = expected
        self.got = got


def default_verify_through(max_shift: int, a: int, b: int) -> int:
    """Verification horizon for blocks with Hilbert denominator (1-t^a)(1-t^b).

    One full denominator period past the support forces equality of the
    rational generating functions.
    """
    return max_shift + a * b + max(a, b)


def deconvolve(
    target: HilbertFunction,
    block: HilbertFunction,
    max_shift: int,
    verify_through: int,
) -> TwistMultiset:
    """Write target = sum_i c_i * block(. - i) with c_i >= 0, or raise.

    Greedy: c_i = target(i) - sum_{j>=1} block(j) c_{i-j} for i = 0..max_shift,
    then the reconstruction is checked exactly for all degrees <= verify_through.
    """
    if block(0) != 1:
        raise ValueError("block Hilbert function must be normalized: block(0) = 1")
    coeffs: list[int] = []
    for i in range(max_shift + 1):
        c = target(i) - sum(block(i - j) * coeffs[j] for j in range(i))
        if c < 0:
            raise NegativeMultiplicity(i, c)
        coeffs.append(c)
    result = TwistMultiset({i: c for i, c in enumerate(coeffs)})
    for k in range(verify_through + 1):
        got = result.convolve(block, k)
        if got != target(k):
            raise ResidualMismatch(k, target(k), got)
    return result
