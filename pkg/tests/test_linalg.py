import random
from fractions import Fraction

import pytest
import sympy

from vhess.families import generic_matrix, perazzo, skew_matrix
from vhess.hessian import hessian_matrix
from vhess.linalg import (
    MatrixError,
    PolyMatrix,
    ScalarMatrix,
    adjugate,
    all_minors,
    binary_discriminant,
    binary_resultant,
    cofactor_determinant,
    determinant,
    jacobian,
    pfaffian,
    pfaffian_mod_p,
    rational_determinant,
    sylvester_matrix,
)
from vhess.ring import Poly, PolyError, VarSet, parse

VS = VarSet(["x", "y", "z"])


def _random_matrix(rng, n):
    def entry():
        terms = {}
        for _ in range(rng.randint(0, 2)):
            e = tuple(rng.randint(0, 1) for _ in range(3))
            terms[e] = rng.randint(-3, 3)
        return Poly(VS, terms)
    return PolyMatrix([[entry() for _ in range(n)] for _ in range(n)], VS)


@pytest.mark.parametrize("seed", range(50))
def test_bareiss_matches_cofactor_expansion(seed):
    rng = random.Random(seed)
    M = _random_matrix(rng, rng.randint(1, 4))
    assert determinant(M) == cofactor_determinant(M)


def test_determinant_against_sympy():
    X = generic_matrix(3)
    ours = determinant(X)
    syms = {n: sympy.Symbol(n) for n in X.vars.names}
    S = sympy.Matrix(3, 3, lambda i, j: syms[f"x{i}_{j}"])
    ref = sympy.Poly(S.det(), *syms.values())
    assert len(ours) == len(ref.terms()) == 6
    for mono, c in ref.terms():
        assert ours.coefficient(mono) == c


def test_zero_pivot_column_gives_zero():
    z = Poly.zero(VS)
    x = Poly.var(VS, "x")
    assert determinant(PolyMatrix([[z, x], [z, x]], VS)).is_zero()


def test_non_square_rejected():
    x = Poly.var(VS, "x")
    with pytest.raises(MatrixError):
        determinant(PolyMatrix([[x, x]], VS))


@pytest.mark.parametrize("size", [2, 3, 4])
def test_adjugate_product(size):
    X = generic_matrix(size)
    d = determinant(X)
    assert X @ adjugate(X) == PolyMatrix.identity(size, X.vars).scale(d)


@pytest.mark.parametrize("size", [2, 4, 6])
def test_pfaffian_squares_to_determinant(size):
    A = skew_matrix(size)
    assert pfaffian(A) ** 2 == determinant(A)


def test_pfaffian_4x4_formula():
    A = skew_matrix(4)
    assert pfaffian(A) == parse("a0_1*a2_3 - a0_2*a1_3 + a0_3*a1_2", A.vars)


def test_pfaffian_mod_p_matches_symbolic():
    A = skew_matrix(6)
    rng = random.Random(3)
    p = 1000003
    pt = [rng.randrange(p) for _ in A.vars.names]
    rows = A.evaluate(pt, p).entries
    assert pfaffian_mod_p(rows, p) == pfaffian(A).reduce_mod_prime(p).evaluate(pt)


def test_pfaffian_rejects_odd_and_nonskew():
    with pytest.raises(MatrixError):
        pfaffian(generic_matrix(2))
    with pytest.raises(MatrixError):
        pfaffian(PolyMatrix([[Poly.zero(VS)] * 3] * 3, VS))


RS = VarSet(["s", "t"])


def test_resultant_linear_forms():
    assert binary_resultant(parse("s + t", RS), parse("s - t", RS)).constant_term() == -2


def test_resultant_common_root_vanishes():
    f = parse("s - t", RS) * parse("s + 2*t", RS)
    g = parse("s - t", RS) * parse("3*s + t", RS)
    assert binary_resultant(f, g).is_zero()


def test_resultant_against_sympy():
    f = parse("2*s^2 + 3*s*t - t^2", RS)
    g = parse("s^3 - 4*t^3 + s*t^2", RS)
    s = sympy.Symbol("s")
    ref = sympy.resultant(2 * s**2 + 3 * s - 1, s**3 - 4 + s, s)
    assert binary_resultant(f, g).constant_term() == ref


def test_sylvester_shape():
    f = parse("s^2 + t^2", RS)
    g = parse("s^3 + t^3", RS)
    M = sylvester_matrix(f, g)
    assert (M.rows, M.cols) == (5, 5)


def test_discriminant_of_quadratic():
    vs = VarSet(["c0", "c1", "c2", "s", "t"])
    f = parse("c0*s^2 + c1*s*t + c2*t^2", vs)
    disc = binary_discriminant(f)
    classic = parse("c1^2 - 4*c0*c2", vs)
    assert disc == -classic


def test_discriminant_needs_degree_two():
    with pytest.raises(PolyError):
        binary_discriminant(parse("s + t", RS))


def test_jacobian():
    J = jacobian([parse("x*y", VS), parse("z^2", VS)])
    assert J[0, 1] == parse("x", VS)
    assert J[1, 2] == parse("2*z", VS)


def test_scalar_rank_and_det():
    M = ScalarMatrix([[1, 2, 3], [2, 4, 6], [1, 0, 1]], 101)
    assert M.rank() == 2
    assert M.det() == 0


def test_rational_determinant():
    assert rational_determinant([[Fraction(1, 2), 1], [3, 4]]) == -1
    assert rational_determinant([[2, 1], [4, 2]]) == 0


def test_perazzo_hessian_rank_four_by_minor_oracle():
    H = hessian_matrix(perazzo().poly)
    assert determinant(H).is_zero()
    assert any(m for _, _, m in all_minors(H, 4, principal=True))


def test_compiled_matrix_symmetric_evaluation():
    H = hessian_matrix(perazzo().poly)
    p = 1000003
    cm = H.compile(p)
    pt = [3, 1, 4, 1, 5]
    assert cm.evaluate_rows(pt) == H.evaluate(pt, p).entries
    assert cm.det_at(pt) == 0
