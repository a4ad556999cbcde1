from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vhess.ring import (
    BadPrime,
    ParseError,
    Poly,
    PolyError,
    VarSet,
    VarSetMismatch,
    divides,
    euler_check,
    format_poly,
    parse,
)

VS = VarSet(["x", "y", "z"])
P = 1000003

coefs = st.one_of(st.integers(-9, 9), st.fractions(min_value=-5, max_value=5, max_denominator=4))
monos = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
polys = st.dictionaries(monos, coefs, max_size=6).map(lambda d: Poly(VS, d))
points = st.lists(st.integers(-5, 5), min_size=3, max_size=3)


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == Poly.zero(VS)


@settings(max_examples=60, deadline=None)
@given(polys, polys, points)
def test_evaluation_is_a_homomorphism(a, b, pt):
    assert (a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt)
    assert (a + b).evaluate(pt) == a.evaluate(pt) + b.evaluate(pt)


@settings(max_examples=40, deadline=None)
@given(polys, points)
def test_reduce_commutes_with_evaluate(a, pt):
    v = Fraction(a.evaluate(pt))
    red = a.reduce_mod_prime(P)
    assert red.evaluate(pt) == v.numerator * pow(v.denominator, -1, P) % P


@settings(max_examples=40, deadline=None)
@given(polys, polys, polys)
def test_substitution_is_a_homomorphism(a, b, img):
    s = {"x": img, "y": Poly.var(VS, "z"), "z": Poly.var(VS, "x")}
    assert (a * b).substitute(s) == a.substitute(s) * b.substitute(s)


@settings(max_examples=60, deadline=None)
@given(polys)
def test_format_parse_round_trip(a):
    assert parse(format_poly(a), VS) == a


@settings(max_examples=40, deadline=None)
@given(polys, polys.filter(lambda p: not p.is_zero()))
def test_divides_products(a, b):
    q = divides(b, a * b)
    assert q is not None and q * b == a * b


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 4), polys)
def test_euler_on_homogeneous_parts(d, a):
    part = Poly(VS, {e: c for e, c in a.terms.items() if sum(e) == d})
    assert euler_check(part)


def test_parse_examples():
    f = parse("x^2*y - 3/2*z + 2")
    assert f.vars.names == ("x", "y", "z")
    assert f.coefficient((2, 1, 0)) == 1
    assert f.coefficient((0, 0, 1)) == Fraction(-3, 2)
    assert f.constant_term() == 2


def test_parse_natural_order():
    assert parse("x10 + x2 + x1").vars.names == ("x1", "x2", "x10")


@pytest.mark.parametrize("text,col", [("x + * y", 5), ("x^", 3), ("2x", 2), ("x + (y)", 5)])
def test_parse_errors_report_position(text, col):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.column == col


def test_unknown_variable_rejected():
    with pytest.raises(ParseError):
        parse("w", VS)


def test_mismatched_varsets():
    a = parse("x", VarSet(["x"]))
    with pytest.raises(VarSetMismatch):
        a + Poly.var(VS, "x")


def test_bad_prime_on_denominator():
    with pytest.raises(BadPrime):
        Poly(VS, {(1, 0, 0): Fraction(1, 7)}, modulus=7)


def test_mod_p_arithmetic():
    f = parse("x + y", VS, modulus=5)
    assert (f ** 5) == parse("x^5 + y^5", VS, modulus=5)


def test_degrees_and_homogeneity():
    f = parse("x^2*y + z^3", VS)
    assert f.total_degree() == 3
    assert f.is_homogeneous() == 3
    assert parse("x + 1", VS).is_homogeneous() is None
    assert f.degree_in(["x"]) == 2
    assert Poly.zero(VS).total_degree() == -1


def test_diff_and_gradient():
    f = parse("x^3*y + 2*y*z", VS)
    assert f.diff("x") == parse("3*x^2*y", VS)
    assert f.gradient()[2] == parse("2*y", VS)


def test_divides_negative():
    assert divides(parse("x + y", VS), parse("x^2 + y^2", VS)) is None
    with pytest.raises(PolyError):
        divides(Poly.zero(VS), parse("x", VS))


def test_euler_rejects_nonhomogeneous():
    with pytest.raises(PolyError):
        euler_check(parse("x^2 + y", VS))


def test_euler_partial_sum():
    f = parse("x^2*y + y*z^2", VS)
    assert euler_check(f, ["x"]) == parse("2*x^2*y", VS)


def test_json_round_trip():
    f = parse("3/2*x^2 - y*z + 7", VS)
    assert Poly.from_json(f.to_json()) == f
    g = parse("x + 4*y", VS, modulus=11)
    assert Poly.from_json(g.to_json()) == g


def test_project_and_embed():
    f = parse("x*y", VS)
    small = VarSet(["x", "y"])
    assert f.project(small).embed(VS) == f
    with pytest.raises(PolyError):
        parse("x*z", VS).project(small)


def test_rename():
    f = parse("x^2 + y", VS)
    tgt = VarSet(["a", "b", "c"])
    assert f.rename({"x": "b", "y": "a", "z": "c"}, tgt) == parse("b^2 + a", tgt)
