"""Graded polynomial algebras over Q and F_p, with exact linear algebra.

Supports exactly what the verification work needs: two-variable weighted
polynomial rings, homogeneous elements, free-basis certificates for module
structures over two-generator subrings, regular-sequence checks, and the
Weierstrass identity c4^3 - c6^2 = 1728*Delta.

Polynomials are dicts from exponent vectors to coefficients; coefficients
are ``Fraction`` in characteristic 0 and ints in [0, p) in characteristic
p.  Rank computations use fraction-free (Bareiss) elimination on integer
matrices over Q and plain elimination over F_p, so everything is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm

__all__ = [
    "BasisCertificate",
    "GradedAlgebra",
    "InhomogeneousInput",
    "Polynomial",
    "PRESETS",
    "RegularSequenceVerdict",
    "SubringSpec",
    "graded_component",
    "matrix_rank",
    "parse_polynomial",
    "preset_certificate",
    "verify_free_basis",
    "verify_regular_sequence",
    "weierstrass_identity_check",
]


class InhomogeneousInput(ValueError):
    pass


@dataclass(frozen=True)
class GradedAlgebra:
    """Free graded polynomial algebra: coefficient field Q (char 0) or F_p."""

    char: int
    variables: tuple[tuple[str, int], ...]

    def __post_init__(self) -> None:
        if self.char < 0 or self.char == 1:
            raise ValueError(f"characteristic must be 0 or a prime, got {self.char}")
        if any(deg <= 0 for _, deg in self.variables):
            raise ValueError("variable degrees must be positive")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.variables)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(deg for _, deg in self.variables)

    def coeff(self, value) -> "Fraction | int":
        if self.char == 0:
            return Fraction(value)
        f = Fraction(value)
        den_inv = pow(f.denominator % self.char, -1, self.char)
        return f.numerator * den_inv % self.char


def _monomials(degrees: tuple[int, ...], d: int) -> list[tuple[int, ...]]:
    if not degrees:
        return [()] if d == 0 else []
    head, rest = degrees[0], degrees[1:]
    out = []
    for e in range(d // head + 1):
        for tail in _monomials(rest, d - e * head):
            out.append((e, *tail))
    return out


@lru_cache(maxsize=None)
def _graded_monomials(degrees: tuple[int, ...], d: int) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(_monomials(degrees, d), reverse=True))


def graded_component(algebra: GradedAlgebra, d: int) -> list[tuple[int, ...]]:
    """Exponent vectors of weighted degree d, descending lexicographic order."""
    if d < 0:
        return []
    return list(_graded_monomials(algebra.degrees, d))


@dataclass(frozen=True)
class Polynomial:
    algebra: GradedAlgebra
    terms: dict[tuple[int, ...], "Fraction | int"] = field(default_factory=dict)

    def __post_init__(self) -> None:
        cleaned = {
            mono: c
            for mono, c in ((m, self.algebra.coeff(c)) for m, c in self.terms.items())
            if c != 0
        }
        object.__setattr__(self, "terms", cleaned)

    def is_zero(self) -> bool:
        return not self.terms

    def degree_of(self, mono: tuple[int, ...]) -> int:
        return sum(e * d for e, d in zip(mono, self.algebra.degrees))

    def homogeneous_degree(self) -> int:
        """Common degree of all terms; raises for 0 or mixed degrees."""
        degs = {self.degree_of(m) for m in self.terms}
        if len(degs) != 1:
            raise InhomogeneousInput(
                f"expected a nonzero homogeneous polynomial, degrees {sorted(degs)}"
            )
        return degs.pop()

    def _check_same(self, other: "Polynomial") -> None:
        if self.algebra != other.algebra:
            raise ValueError("mixed algebras")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check_same(other)
        acc = dict(self.terms)
        for m, c in other.terms.items():
            acc[m] = acc.get(m, 0) + c
        return Polynomial(self.algebra, acc)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + other.scale(-1)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check_same(other)
        acc: dict[tuple[int, ...], Fraction | int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                acc[m] = acc.get(m, 0) + c1 * c2
        return Polynomial(self.algebra, acc)

    def scale(self, factor) -> "Polynomial":
        return Polynomial(
            self.algebra, {m: c * self.algebra.coeff(factor) for m, c in self.terms.items()}
        )

    def power(self, n: int) -> "Polynomial":
        result = Polynomial.constant(self.algebra, 1)
        for _ in range(n):
            result = result * self
        return result

    def coordinates(self, basis: list[tuple[int, ...]]) -> list["Fraction | int"]:
        extra = set(self.terms) - set(basis)
        if extra:
            raise ValueError(f"terms outside the given monomial basis: {extra}")
        return [self.terms.get(m, self.algebra.coeff(0)) for m in basis]

    @classmethod
    def constant(cls, algebra: GradedAlgebra, value) -> "Polynomial":
        return cls(algebra, {(0,) * len(algebra.variables): value})

    @classmethod
    def variable(cls, algebra: GradedAlgebra, name: str) -> "Polynomial":
        i = algebra.names.index(name)
        mono = tuple(1 if j == i else 0 for j in range(len(algebra.variables)))
        return cls(algebra, {mono: 1})


def parse_polynomial(algebra: GradedAlgebra, text: str) -> Polynomial:
    """Parse ``1/4*b2^2*b4^2 - 8*b4^3`` style input (no parentheses).

    Terms are separated by top-level + or -, each term is a '*'-joined
    product of rational constants and ``var`` / ``var^exp`` factors.
    """
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    # split into signed terms
    terms: list[tuple[int, str]] = []
    sign, start = 1, 0
    if s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        start = 1
    cur = start
    result = Polynomial(algebra, {})
    i = start
    while True:
        if i == len(s) or s[i] in "+-":
            term = s[cur:i]
            if not term:
                raise ValueError(f"malformed polynomial {text!r}")
            terms.append((sign, term))
            if i == len(s):
                break
            sign = -1 if s[i] == "-" else 1
            cur = i + 1
        i += 1
    for sign, term in terms:
        coeff = Fraction(sign)
        mono = [0] * len(algebra.variables)
        for factor in term.split("*"):
            name, _, exp = factor.partition("^")
            if name in algebra.names:
                e = int(exp) if exp else 1
                if e < 0:
                    raise ValueError(f"negative exponent in {factor!r}")
                mono[algebra.names.index(name)] += e
            else:
                if exp:
                    raise ValueError(f"unknown variable {name!r}")
                coeff *= Fraction(name)
        result = result + Polynomial(algebra, {tuple(mono): coeff})
    return result


# ---------------------------------------------------------------------------
# Exact rank computation


def _rank_mod_p(rows: list[list[int]], p: int) -> int:
    m = [[x % p for x in row] for row in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    for col in range(cols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = pow(m[rank][col], -1, p)
        m[rank] = [x * inv % p for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                f = m[r][col]
                m[r] = [(x - f * y) % p for x, y in zip(m[r], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank


def _rank_bareiss(rows: list[list[int]]) -> int:
    """Fraction-free Gaussian elimination (Bareiss) over the integers."""
    m = [list(row) for row in rows]
    if not m or not m[0]:
        return 0
    rank = 0
    prev = 1
    cols = len(m[0])
    for col in range(cols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        pv = m[rank][col]
        for r in range(rank + 1, len(m)):
            for c in range(cols):
                if c == col:
                    continue
                m[r][c] = (pv * m[r][c] - m[r][col] * m[rank][c]) // prev
            m[r][col] = 0
        prev = pv
        rank += 1
        if rank == len(m):
            break
    return rank


def matrix_rank(algebra: GradedAlgebra, rows: list[list["Fraction | int"]]) -> int:
    if not rows:
        return 0
    if algebra.char:
        return _rank_mod_p([[int(x) for x in row] for row in rows], algebra.char)
    scale = lcm(*(Fraction(x).denominator for row in rows for x in row), 1)
    return _rank_bareiss([[int(Fraction(x) * scale) for x in row] for row in rows])


# ---------------------------------------------------------------------------
# Free-basis certificates


@dataclass(frozen=True)
class SubringSpec:
    """Two generators of the ambient algebra, each homogeneous."""

    generators: tuple[tuple[str, Polynomial], ...]

    def __post_init__(self) -> None:
        for _, g in self.generators:
            g.homogeneous_degree()

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(g.homogeneous_degree() for _, g in self.generators)


@dataclass(frozen=True)
class BasisCertificate:
    ambient: GradedAlgebra
    subring: SubringSpec
    basis_degrees: tuple[int, ...]
    bound: int
    verdict: str  # "free" or "not free"
    failing_degree: int | None = None
    failure_kind: str | None = None  # "independence" or "spanning"

    @property
    def free(self) -> bool:
        return self.verdict == "free"


def _subring_monomials(spec: SubringSpec, d: int) -> list[tuple[int, ...]]:
    return _monomials(spec.degrees, d)


def verify_free_basis(
    ambient: GradedAlgebra,
    subring: SubringSpec,
    basis: list[Polynomial],
    bound: int,
) -> BasisCertificate:
    """Certify that ``basis`` is a free module basis of ``ambient`` over the
    subring generated by ``subring``, degree by degree up to ``bound``.

    In each degree d the products (subring monomial) * (basis element) must
    be exactly dim(ambient_d) many and linearly independent; this is also the
    Hilbert-series identity H_ambient = H_subring * sum t^deg(basis).
    """
    basis_degrees = tuple(b.homogeneous_degree() for b in basis)
    gen_polys = [g for _, g in subring.generators]
    gen_degrees = subring.degrees

    @lru_cache(maxsize=None)
    def gen_power(i: int, e: int) -> Polynomial:
        if e == 0:
            return Polynomial.constant(ambient, 1)
        return gen_power(i, e - 1) * gen_polys[i]

    for d in range(bound + 1):
        component = graded_component(ambient, d)
        products = []
        for b, bd in zip(basis, basis_degrees):
            for expo in _monomials(gen_degrees, d - bd):
                p = b
                for i, e in enumerate(expo):
                    p = p * gen_power(i, e)
                products.append(p)
        if len(products) != len(component):
            return BasisCertificate(
                ambient, subring, basis_degrees, bound, "not free", d,
                "spanning" if len(products) < len(component) else "independence",
            )
        if not component:
            continue
        rows = [p.coordinates(component) for p in products]
        if matrix_rank(ambient, rows) != len(component):
            return BasisCertificate(
                ambient, subring, basis_degrees, bound, "not free", d, "independence"
            )
    return BasisCertificate(ambient, subring, basis_degrees, bound, "free")


# ---------------------------------------------------------------------------
# Regular sequences


@dataclass(frozen=True)
class RegularSequenceVerdict:
    regular: bool
    bound: int
    failing_index: int | None = None
    failing_degree: int | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.regular


def _component_span_rank(
    algebra: GradedAlgebra,
    ideal: list[Polynomial],
    d: int,
    component: list[tuple[int, ...]],
) -> tuple[list[list["Fraction | int"]], int]:
    """Rows spanning the degree-d piece of the ideal (f_1, ..) and their rank."""
    rows = []
    for f in ideal:
        fd = f.homogeneous_degree()
        for mono in graded_component(algebra, d - fd):
            rows.append((f * Polynomial(algebra, {mono: 1})).coordinates(component))
    return rows, matrix_rank(algebra, rows)


def verify_regular_sequence(
    algebra: GradedAlgebra,
    elements: list[Polynomial],
    bound: int | None = None,
) -> RegularSequenceVerdict:
    """Check that ``elements`` is a regular sequence, two ways at once.

    (1) For each prefix, multiplication by the next element is injective on
    every graded component of the quotient up to the degree bound (exact
    rank computation of the kernel condition f*x in ideal).
    (2) The quotient Hilbert function matches H_A(t) * prod(1 - t^deg(f_i))
    through the bound.
    """
    degrees = [f.homogeneous_degree() for f in elements]
    if bound is None:
        bound = 2 * sum(degrees)

    for k, f in enumerate(elements):
        prior = elements[:k]
        e = degrees[k]
        for d in range(0, bound - e + 1):
            comp_d = graded_component(algebra, d)
            comp_up = graded_component(algebra, d + e)
            _, rank_ideal_d = _component_span_rank(algebra, prior, d, comp_d)
            rows_up, rank_ideal_up = _component_span_rank(
                algebra, prior, d + e, comp_up
            )
            # dim{x in A_d : f x in ideal_{d+e}} = dim A_d - rank[T | M] + rank M
            mult_rows = [
                (f * Polynomial(algebra, {mono: 1})).coordinates(comp_up)
                for mono in comp_d
            ]
            combined_rank = matrix_rank(algebra, mult_rows + rows_up)
            kernel_dim = len(comp_d) - combined_rank + rank_ideal_up
            if kernel_dim != rank_ideal_d:
                return RegularSequenceVerdict(
                    False, bound, k, d,
                    f"multiplication by element {k} has a nontrivial kernel in "
                    f"degree {d} of the quotient",
                )

    # Hilbert-series confirmation for the full quotient.
    series = _quotient_hilbert_series(algebra.degrees, degrees, bound)
    for d in range(bound + 1):
        comp = graded_component(algebra, d)
        _, rank_ideal = _component_span_rank(algebra, elements, d, comp)
        if len(comp) - rank_ideal != series[d]:
            return RegularSequenceVerdict(
                False, bound, len(elements) - 1, d,
                f"quotient dimension {len(comp) - rank_ideal} in degree {d} "
                f"differs from the regular-sequence Hilbert series value {series[d]}",
            )
    return RegularSequenceVerdict(True, bound)


def _quotient_hilbert_series(
    var_degrees: tuple[int, ...], elt_degrees: list[int], bound: int
) -> list[int]:
    """Coefficients through ``bound`` of H_A(t) * prod(1 - t^e_i)."""
    series = [len(_graded_monomials(var_degrees, d)) for d in range(bound + 1)]
    for e in elt_degrees:
        series = [
            series[d] - (series[d - e] if d >= e else 0) for d in range(bound + 1)
        ]
    return series


# ---------------------------------------------------------------------------
# Weierstrass identity and presets


def weierstrass_identity_check(
    c4: Polynomial, c6: Polynomial, delta: Polynomial
) -> bool:
    """c4^3 - c6^2 = 1728 * Delta, as an exact polynomial identity."""
    return (c4.power(3) - c6.power(2) - delta.scale(1728)).is_zero()


def _preset(char, variables, gens, basis_texts, bound=48):
    algebra = GradedAlgebra(char, variables)
    spec = SubringSpec(
        tuple((name, parse_polynomial(algebra, text)) for name, text in gens)
    )
    basis = [parse_polynomial(algebra, text) for text in basis_texts]
    return algebra, spec, basis, bound


#: The four module-structure presets: (characteristic, variables,
#: subring generators, module basis, certified degree bound).
PRESETS = {
    # F_2[a1, a3] free of rank 4 over F_2[a1, Delta]
    "f2-rank4": _preset(
        2,
        (("a1", 1), ("a3", 3)),
        (("a1", "a1"), ("delta", "a3^4 + a1^3*a3^3")),
        ("1", "a3", "a3^2", "a3^3"),
    ),
    # F_3[b2, b4] free of rank 3 over F_3[b2, Delta]
    "f3-rank3": _preset(
        3,
        (("b2", 2), ("b4", 4)),
        (("b2", "b2"), ("delta", "b2^2*b4^2 - b4^3")),
        ("1", "b4", "b4^2"),
    ),
    # Q[b2, b4] free of rank 6 over Q[c4, Delta]
    "q-rank6": _preset(
        0,
        (("b2", 2), ("b4", 4)),
        (("c4", "b2^2 - 24*b4"), ("delta", "1/4*b2^2*b4^2 - 8*b4^3")),
        ("1", "b2", "b4", "b2*b4", "b4^2", "b2*b4^2"),
    ),
    # Q[a1, a3] free of rank 16 over Q[c4, Delta]
    "q-rank16": _preset(
        0,
        (("a1", 1), ("a3", 3)),
        (("c4", "a1^4 - 24*a1*a3"), ("delta", "a1^3*a3^3 - 27*a3^4")),
        tuple(f"a1^{i}*a3^{j}" for i in range(4) for j in range(4)),
    ),
}

#: Weierstrass-quantity presentations; identity-checked convention.
WEIERSTRASS_PRESENTATIONS = {
    "level2": (
        GradedAlgebra(0, (("b2", 2), ("b4", 4))),
        "b2^2 - 24*b4",
        "-1*b2^3 + 36*b2*b4",
        "1/4*b2^2*b4^2 - 8*b4^3",
    ),
    "level3": (
        GradedAlgebra(0, (("a1", 1), ("a3", 3))),
        "a1^4 - 24*a1*a3",
        "-1*a1^6 + 36*a1^3*a3 - 216*a3^2",
        "a1^3*a3^3 - 27*a3^4",
    ),
}

#: Regular-sequence checks: reductions of (c4, Delta) in characteristic 2/3,
#: plus a deliberately non-regular control.
REGULAR_SEQUENCE_CASES = {
    "f2-c4-delta": (2, (("a1", 1), ("a3", 3)), ("a1^4", "a3^4 + a1^3*a3^3"), True),
    "f3-c4-delta": (3, (("b2", 2), ("b4", 4)), ("b2^2", "b2^2*b4^2 - b4^3"), True),
    "f3-negative-control": (3, (("b2", 2), ("b4", 4)), ("b2^2", "b2^3"), False),
}


def preset_certificate(name: str) -> BasisCertificate:
    algebra, spec, basis, bound = PRESETS[name]
    return verify_free_basis(algebra, spec, basis, bound)
