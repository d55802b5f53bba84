from fractions import Fraction

import pytest

from mfdecomp.ringalg import (
    GradedAlgebra,
    InhomogeneousInput,
    PRESETS,
    Polynomial,
    REGULAR_SEQUENCE_CASES,
    SubringSpec,
    WEIERSTRASS_PRESENTATIONS,
    graded_component,
    matrix_rank,
    parse_polynomial,
    preset_certificate,
    verify_free_basis,
    verify_regular_sequence,
    weierstrass_identity_check,
)

F2_A = GradedAlgebra(2, (("a1", 1), ("a3", 3)))
F3_B = GradedAlgebra(3, (("b2", 2), ("b4", 4)))
Q_B = GradedAlgebra(0, (("b2", 2), ("b4", 4)))
Q_A = GradedAlgebra(0, (("a1", 1), ("a3", 3)))
Q_T = GradedAlgebra(0, (("t0", 4), ("t1", 6)))


def test_graded_component_examples():
    assert graded_component(F2_A, 3) == [(3, 0), (0, 1)]
    assert graded_component(F3_B, 4) == [(2, 0), (0, 1)]
    assert graded_component(Q_T, 12) == [(3, 0), (0, 2)]
    assert graded_component(Q_T, 2) == []
    assert graded_component(Q_T, -1) == []
    assert graded_component(Q_T, 0) == [(0, 0)]


def test_parser():
    p = parse_polynomial(Q_B, "b2^2 - 24*b4")
    assert p.terms == {(2, 0): 1, (0, 1): -24}
    p = parse_polynomial(Q_B, "1/4*b2^2*b4^2 - 8*b4^3")
    assert p.terms == {(2, 2): Fraction(1, 4), (0, 3): -8}
    p = parse_polynomial(F2_A, "a3^4 + a1^3*a3^3")
    assert p.terms == {(0, 4): 1, (3, 3): 1}
    assert parse_polynomial(Q_B, "-b2 + b2").is_zero()
    assert parse_polynomial(Q_B, "1").terms == {(0, 0): 1}
    assert parse_polynomial(Q_A, "a1^0*a3^0").terms == {(0, 0): 1}
    # characteristic folds coefficients
    assert parse_polynomial(F3_B, "3*b2").is_zero()
    assert parse_polynomial(F3_B, "-b4").terms == {(0, 1): 2}
    with pytest.raises(ValueError):
        parse_polynomial(Q_B, "b7")
    with pytest.raises(ValueError):
        parse_polynomial(Q_B, "")


def test_polynomial_arithmetic():
    b2 = Polynomial.variable(Q_B, "b2")
    b4 = Polynomial.variable(Q_B, "b4")
    assert (b2 * b2 - b2.power(2)).is_zero()
    with pytest.raises(InhomogeneousInput):
        (b2 + b4).homogeneous_degree()
    assert b2.power(2).homogeneous_degree() == 4
    with pytest.raises(InhomogeneousInput):
        Polynomial(Q_B, {}).homogeneous_degree()


def test_matrix_rank_exact():
    assert matrix_rank(Q_B, [[1, 2], [2, 4]]) == 1
    assert matrix_rank(Q_B, [[Fraction(1, 3), 0], [0, Fraction(2, 7)]]) == 2
    assert matrix_rank(Q_B, []) == 0
    # mod 2: [[1,1],[1,1]] has rank 1; over Q, [[1,1],[1,-1]] has rank 2
    assert matrix_rank(F2_A, [[1, 1], [1, 1]]) == 1
    assert matrix_rank(F2_A, [[1, 1], [1, -1]]) == 1  # -1 = 1 mod 2
    assert matrix_rank(Q_B, [[1, 1], [1, -1]]) == 2
    # a case where naive integer elimination without pivot care would break
    assert matrix_rank(Q_B, [[2, 4, 6], [3, 6, 9], [1, 0, 1]]) == 2


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_presets_certify_free(name):
    cert = preset_certificate(name)
    assert cert.free, (cert.failing_degree, cert.failure_kind)
    assert cert.bound == 48


def test_preset_ranks():
    assert len(PRESETS["f2-rank4"][2]) == 4
    assert len(PRESETS["f3-rank3"][2]) == 3
    assert len(PRESETS["q-rank6"][2]) == 6
    assert len(PRESETS["q-rank16"][2]) == 16
    # rank bookkeeping: product of generator degrees over variable degrees
    for name in PRESETS:
        algebra, spec, basis, _ = PRESETS[name]
        d1, d2 = spec.degrees
        v1, v2 = algebra.degrees
        assert d1 * d2 == 48 or name.startswith("f")  # Q cases: deg c4 * deg Delta
        assert (d1 * d2) // (v1 * v2) == len(basis)


def test_wrong_basis_not_free():
    algebra, spec, basis, bound = PRESETS["f3-rank3"]
    cert = verify_free_basis(algebra, spec, basis[:-1], bound)
    assert not cert.free
    assert cert.failure_kind == "spanning"
    b4 = Polynomial.variable(algebra, "b4")
    cert = verify_free_basis(algebra, spec, basis + [b4.power(3)], bound)
    assert not cert.free


def test_hilbert_series_freeness_f2():
    # dim F_2[a1,a3]_d equals sum over basis degrees 0,3,6,9 of
    # dim F_2[a1(1), Delta(12)]_{d - j} through degree 60
    sub = GradedAlgebra(2, (("a1", 1), ("delta", 12)))
    for d in range(61):
        lhs = len(graded_component(F2_A, d))
        rhs = sum(len(graded_component(sub, d - j)) for j in (0, 3, 6, 9))
        assert lhs == rhs


def test_hilbert_series_freeness_f3():
    sub = GradedAlgebra(3, (("b2", 2), ("delta", 12)))
    for d in range(61):
        lhs = len(graded_component(F3_B, d))
        rhs = sum(len(graded_component(sub, d - j)) for j in (0, 4, 8))
        assert lhs == rhs


@pytest.mark.parametrize("name", sorted(REGULAR_SEQUENCE_CASES))
def test_regular_sequence_cases(name):
    char, variables, exprs, expected = REGULAR_SEQUENCE_CASES[name]
    algebra = GradedAlgebra(char, variables)
    elems = [parse_polynomial(algebra, e) for e in exprs]
    assert verify_regular_sequence(algebra, elems).regular == expected


def test_regular_sequence_order_and_errors():
    # (b2^2, b4^3) is regular over Q
    elems = [parse_polynomial(Q_B, "b2^2"), parse_polynomial(Q_B, "b4^3")]
    assert verify_regular_sequence(Q_B, elems).regular
    with pytest.raises(InhomogeneousInput):
        verify_regular_sequence(Q_B, [parse_polynomial(Q_B, "b2 + b4")])


@pytest.mark.parametrize("name", sorted(WEIERSTRASS_PRESENTATIONS))
def test_weierstrass_identities(name):
    algebra, c4, c6, delta = WEIERSTRASS_PRESENTATIONS[name]
    assert weierstrass_identity_check(
        parse_polynomial(algebra, c4),
        parse_polynomial(algebra, c6),
        parse_polynomial(algebra, delta),
    )


def test_weierstrass_perturbation_fails():
    algebra, c4, c6, _ = WEIERSTRASS_PRESENTATIONS["level3"]
    perturbed = parse_polynomial(algebra, "a1^3*a3^3 - 26*a3^4")
    assert not weierstrass_identity_check(
        parse_polynomial(algebra, c4), parse_polynomial(algebra, c6), perturbed
    )


def test_weierstrass_identity_against_sympy():
    sympy = pytest.importorskip("sympy")
    for name, (algebra, c4, c6, delta) in WEIERSTRASS_PRESENTATIONS.items():
        syms = sympy.symbols(" ".join(algebra.names))
        lookup = dict(zip(algebra.names, syms if len(algebra.names) > 1 else [syms]))

        def to_sympy(text):
            return sympy.sympify(text.replace("^", "**"), locals=lookup)

        expr = to_sympy(c4) ** 3 - to_sympy(c6) ** 2 - 1728 * to_sympy(delta)
        assert sympy.expand(expr) == 0


def test_freeness_against_sympy_groebner_free_rank():
    # independent spot check: in Q[b2,b4] the products of the rank-6 basis
    # with c4^i * Delta^j monomials of total degree 24 span a space of the
    # right dimension according to sympy's rank computation
    sympy = pytest.importorskip("sympy")
    b2, b4 = sympy.symbols("b2 b4")
    c4 = b2**2 - 24 * b4
    delta = sympy.Rational(1, 4) * b2**2 * b4**2 - 8 * b4**3
    basis = [1, b2, b4, b2 * b4, b4**2, b2 * b4**2]
    basis_degrees = [0, 2, 4, 6, 8, 10]
    d = 24
    monos = [(i, j) for i in range(13) for j in range(7) if 2 * i + 4 * j == d]
    products = []
    for b, bd in zip(basis, basis_degrees):
        for e1 in range(13):
            for e2 in range(3):
                if 4 * e1 + 12 * e2 == d - bd:
                    products.append(sympy.expand(b * c4**e1 * delta**e2))
    rows = []
    for prod in products:
        poly = sympy.Poly(prod, b2, b4)
        rows.append([poly.coeff_monomial((i, j)) for i, j in monos])
    mat = sympy.Matrix(rows)
    assert len(products) == len(monos) == mat.rank()
