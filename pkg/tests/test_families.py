import json

import pytest

from vhess import families as fam
from vhess.hessian import check_gradient_relations, hess_is_zero, is_cone, profile
from vhess.linalg import PolyMatrix, determinant
from vhess.ring import Poly, parse
from vhess.sampling import PRIME_1MOD4, SampleConfig

CFG = SampleConfig(prime=PRIME_1MOD4)

SMALL = [
    fam.perazzo(),
    fam.perazzo_ext(6),
    fam.p5_example(),
    fam.p7_fermat(),
    fam.pencil("z1^3 + z2^3 + z3^3"),
    fam.scroll_dual(1, 2),
    fam.scroll_dual(2, 3),
    fam.scroll_dual_closed(2),
    fam.scroll_dual_closed(3),
    fam.generic_det(2),
    fam.symmetric_det(2),
    fam.pfaffian_form(2),
    fam.det_slice(2),
    fam.sym_slice(2),
    fam.pf_slice(2),
    fam.cauchy_schwartz(1),
    fam.dual_cayley(parse("z0*z2 - z1^2"), 2, 4),
]


@pytest.mark.parametrize("inst", SMALL, ids=lambda i: i.name)
def test_degree_matches_construction(inst):
    assert inst.poly.is_homogeneous() == inst.expected["degree"]


@pytest.mark.parametrize("inst", [i for i in SMALL if "hess_is_zero" in i.expected],
                         ids=lambda i: i.name)
def test_expected_hessian_vanishing(inst):
    assert hess_is_zero(inst.poly, CFG)[0] is inst.expected["hess_is_zero"]


@pytest.mark.parametrize("inst", [i for i in SMALL if "is_cone" in i.expected],
                         ids=lambda i: i.name)
def test_expected_not_cone(inst):
    assert is_cone(inst.poly)[0] is inst.expected["is_cone"]


@pytest.mark.parametrize("inst", [i for i in SMALL if "relation_grid" in i.blocks],
                         ids=lambda i: i.name)
def test_structural_gradient_relations(inst):
    assert check_gradient_relations(inst.poly, inst.blocks["relation_grid"]).passed


PROFILED = ["perazzo", "p7-fermat", "pencil", "det-slice", "sym-slice", "pf-slice",
            "generic-det", "symmetric-det"]


@pytest.mark.parametrize("inst", [i for i in SMALL if i.id in PROFILED], ids=lambda i: i.name)
def test_measured_profile_matches_expected_fields(inst):
    pr = profile(inst.poly, CFG, rank_mod="sample" if len(inst.poly.vars) > 9 else None)
    got = pr.numeric()
    for k, v in inst.expected.items():
        if k in got:
            assert got[k] == v, k
    if pr.hess_is_zero:
        assert pr.chain_holds()


def test_variable_counts():
    assert len(fam.generic_det(2).poly.vars) == 9
    assert len(fam.symmetric_det(3).poly.vars) == 10
    assert len(fam.pfaffian_form(2).poly.vars) == 15
    assert len(fam.det_slice(2).poly.vars) == 8
    assert len(fam.sym_slice(2).poly.vars) == 5
    assert len(fam.pf_slice(2).poly.vars) == 14
    assert len(fam.cauchy_schwartz(2).poly.vars) == 8
    assert len(fam.scroll_dual(2, 3).poly.vars) == 7


def test_pencil_naming():
    f = fam.p7_fermat().poly
    assert f.vars.names == ("u", "v", "x1", "x2", "x3", "y1", "y2", "y3")


def test_pencil_rejects_cones():
    with pytest.raises(fam.FamilyError, match="cone"):
        fam.pencil("z1^2 + z2^2 + 0*z3")


def test_pencil_rejects_low_degree():
    with pytest.raises(fam.FamilyError):
        fam.pencil("z1 + z2")


def test_dual_cayley_minors_are_determinants():
    vs, minors, _ = fam.dual_cayley_minors(2, 4)
    for j, m in enumerate(minors):
        rows = [[vs.gen(f"a{i}_{j}")] + [vs.gen(f"b{i}_{k}") for k in (1, 2)] for i in range(3)]
        assert m == determinant(PolyMatrix(rows, vs))


@pytest.mark.parametrize("g", ["z0^2 + z1^2 + z2^2", "z0^3 + z1^3 + z2^3 + z3^3", "z0*z1*z2 + z0^3 + z1^3"])
def test_dual_cayley_r1_is_the_pencil(g):
    gp = parse(g)
    n = len(gp.vars)
    dc = fam.dual_cayley(gp, 1, n)
    pe = fam.pencil(gp, check_cone=False)
    assert dc.poly.rename(fam.dual_cayley_pencil_renaming(n), pe.poly.vars) == pe.poly


def test_dual_cayley_shape_errors():
    with pytest.raises(fam.FamilyError):
        fam.dual_cayley(parse("z0*z2 - z1^2"), 2, 5)
    with pytest.raises(fam.FamilyError):
        fam.dual_cayley(parse("z0*z2 - z1^2"), 0, 2)


@pytest.mark.parametrize("b", [1, 2, 3, 4, 5])
def test_closed_scroll_matches_resultant_up_to_sign(b):
    res = fam.scroll_dual(1, b).poly
    closed = fam.scroll_dual_closed(b).poly
    assert res == closed or res == -closed


def test_scroll_degrees():
    f = fam.scroll_dual(2, 3).poly
    assert f.degree_in(["w0", "w1", "w2"]) == 3
    assert f.degree_in(["z0", "z1", "z2", "z3"]) == 2


def test_segre_constants():
    assert [fam.segre_alpha(n) for n in (2, 3, 4)] == [-2, -3, 4]
    assert [fam.segre_beta(n) for n in (2, 3)] == [-16, -192]
    assert [fam.segre_gamma(m) for m in (2, 3)] == [2, -3]


def test_lagrange_sides_agree():
    lhs, rhs = fam.lagrange_sides(2)
    assert lhs == rhs


def test_build_and_catalog():
    assert fam.build("perazzo").poly == fam.perazzo().poly
    assert fam.build("generic-det", n=2).params == {"n": 2}
    with pytest.raises(fam.FamilyError):
        fam.build("nope")
    with pytest.raises(fam.FamilyError):
        fam.build("generic-det")
    manifest = fam.catalog_manifest()
    assert {m["id"] for m in manifest} == set(fam.CATALOG)
    json.dumps(manifest)


def test_instance_json_round_trip():
    inst = fam.pencil("z1^2 + z2^2 + z3^2")
    obj = json.loads(json.dumps(inst.to_json()))
    assert Poly.from_json(obj["polynomial"]) == inst.poly
    assert obj["params"]["g"] == "z1^2 + z2^2 + z3^2"
    assert obj["expected"]["codim_dual_in_polar"] == 2


def test_instances_are_reproducible():
    a = json.dumps(fam.pf_slice(2).to_json(), sort_keys=True)
    b = json.dumps(fam.pf_slice(2).to_json(), sort_keys=True)
    assert a == b
