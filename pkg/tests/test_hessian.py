import pytest
import sympy
from sympy.polys.matrices import DomainMatrix

from vhess.families import cauchy_schwartz, generic_det, p7_fermat, perazzo, sym_slice
from vhess.hessian import (
    HessianDeterminant,
    PolyPower,
    RankModError,
    check_gradient_relations,
    generic_rank,
    hess_is_zero,
    hessian_matrix,
    is_cone,
    polar_gradient,
    profile,
    random_linear_change,
    rank_mod_f,
    sample_point_on_hypersurface,
    verify_identity,
    verify_proportionality,
)
from vhess.linalg import determinant
from vhess.ring import PolyError, VarSet, parse
from vhess.sampling import PRIME_1MOD4, SampleConfig, stream

CFG = SampleConfig()
VS = VarSet(["x", "y", "z"])


def test_hessian_matrix_is_symmetric():
    H = hessian_matrix(parse("x^3 + x*y*z", VS))
    assert H.is_symmetric()
    assert H[0, 0] == parse("6*x", VS)
    assert H[1, 2] == parse("x", VS)


def test_polar_gradient_needs_degree_two():
    with pytest.raises(PolyError):
        polar_gradient(parse("x + y", VS))


def test_fermat_cubic_has_nonzero_hessian():
    f = parse("x^3 + y^3 + z^3", VS)
    assert hess_is_zero(f, CFG, "exact")[0] is False
    assert hess_is_zero(f, CFG, "sample")[0] is False


def test_perazzo_hessian_vanishes_both_ways():
    f = perazzo().poly
    assert hess_is_zero(f, CFG, "exact") == (True, "exact", "0")
    zero, cert, bound = hess_is_zero(f, CFG, "sample")
    assert zero and cert == "probabilistic" and float(bound) < 1e-100


def test_vacuous_bound_refused():
    f = p7_fermat().poly
    with pytest.raises(ValueError):
        hess_is_zero(f, SampleConfig(prime=13), "sample")


def test_generic_rank_of_perazzo():
    assert generic_rank(hessian_matrix(perazzo().poly), CFG) == 4


def test_rank_mod_f_exact_and_sampled_agree():
    inst = p7_fermat()
    H = hessian_matrix(inst.poly)
    cfg = SampleConfig(prime=PRIME_1MOD4)
    assert rank_mod_f(H, inst.poly, "exact", cfg) == (5, "exact-divisibility")
    assert rank_mod_f(H, inst.poly, "sample", cfg) == (5, "on-hypersurface-sampling")


def test_rank_mod_f_budget():
    f = parse("x^5 + y^5 + z^5", VS)
    with pytest.raises(RankModError):
        rank_mod_f(hessian_matrix(f), f, "exact", CFG)


def test_rank_mod_f_smooth_conic():
    # a smooth plane conic is self-dual up to projectivity: dim X* = 1
    f = parse("x*z - y^2", VS)
    assert rank_mod_f(hessian_matrix(f), f, "exact", CFG)[0] == 3


def test_points_lie_on_hypersurface():
    f = p7_fermat().poly
    p = PRIME_1MOD4
    pt = sample_point_on_hypersurface(f, SampleConfig(prime=p), stream(0, "t", 0))
    assert f.reduce_mod_prime(p).evaluate(pt) == 0


def test_is_cone_detects_missing_variable_direction():
    f = parse("x^2 + 2*x*y + y^2 + z^2", VS)
    cone, basis = is_cone(f)
    assert cone and len(basis) == 1
    grad = f.gradient()
    rel = sum((g.scale(c) for g, c in zip(grad, basis[0])), grad[0].scale(0))
    assert rel.is_zero()
    assert is_cone(parse("x^2 + y^2 + z^2", VS)) == (False, [])


def test_profile_of_perazzo():
    pr = profile(perazzo().poly, CFG)
    assert pr.numeric() == {"n_vars": 5, "degree": 3, "hess_is_zero": True, "generic_rank": 4,
                            "rank_mod_f": 4, "dim_polar_image": 3, "dim_dual": 2,
                            "codim_dual_in_polar": 1, "is_cone": False}
    assert pr.chain_holds()


def test_profile_of_sym_slice():
    pr = profile(sym_slice(2).poly, CFG)
    assert (pr.generic_rank, pr.rank_mod_f, pr.codim_dual_in_polar) == (4, 4, 1)


def test_profile_rejects_inhomogeneous():
    with pytest.raises(PolyError):
        profile(parse("x^2 + y", VS), CFG)


def test_verify_identity_modes():
    a = parse("x^2 - y^2", VS)
    b = parse("x + y", VS) * parse("x - y", VS)
    assert verify_identity(a, b, CFG, mode="exact").passed
    rep = verify_identity(a, b, CFG)
    assert rep.passed and rep.method == "schwartz-zippel" and rep.degree_bound == 2
    bad = verify_identity(a, b + parse("x*y*z", VS), CFG)
    assert not bad.passed and "first_failing_trial" in bad.details


def test_proportionality_reports_constant():
    f = parse("x*y + z^2", VS)
    rep = verify_proportionality(f.scale(-7), f, CFG, expected=-7)
    assert rep.passed and rep.constant == "-7" and rep.convention_match
    rep = verify_proportionality(f, parse("x*y", VS), CFG)
    assert not rep.passed


def test_proportionality_over_fp_reports_residue():
    p = 1000003
    f = parse("x*y + z^2", VS, modulus=p)
    rep = verify_proportionality(f.scale(3), f, SampleConfig(prime=p), expected=3)
    assert rep.passed and rep.constant is None and rep.constant_residue == 3


def test_gradient_relations_fail_off_pencil():
    f = parse("x^2*y + y*z^2", VS)
    assert not check_gradient_relations(f, [["x", "y"], ["y", "z"]]).passed


def test_hess_proportional_to_power_for_generic_det():
    f = generic_det(2).poly
    hess = determinant(hessian_matrix(f))
    assert hess == (f ** 3).scale(-2)


def test_cauchy_schwartz_constant_against_sympy():
    inst = cauchy_schwartz(1)
    syms = sympy.symbols(inst.poly.vars.names)
    a, b = syms[:3], syms[3:]
    f = (sum(x * x for x in a) * sum(y * y for y in b)) - sum(x * y for x, y in zip(a, b)) ** 2
    ring = sympy.ZZ[syms]
    H = DomainMatrix.from_Matrix(sympy.hessian(f, syms)).convert_to(ring)
    q, r = sympy.div(ring.to_sympy(H.det()), sympy.expand(f ** 3), *syms)
    assert r == 0 and q.is_number and q != 0
    rep = verify_proportionality(HessianDeterminant(inst.poly), PolyPower(inst.poly, 3), CFG)
    assert rep.passed and rep.constant == str(q)


@pytest.mark.parametrize("seed", range(3))
def test_profile_invariant_under_linear_change(seed):
    f = perazzo().poly
    g, A = random_linear_change(f, stream(seed, "lc", 0))
    assert profile(g, CFG).numeric() == profile(f, CFG).numeric()
    h, _ = random_linear_change(f, stream(seed, "lc", 1), sparse=True)
    assert profile(h, CFG).numeric() == profile(f, CFG).numeric()
