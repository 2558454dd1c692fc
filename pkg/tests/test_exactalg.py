import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hnlab.exactalg import (
    Poly,
    PolyParseError,
    RatMatrix,
    apply_matrix,
    parse_poly,
    projector_onto,
    rank,
    solve_nullspace,
    to_rational,
)

AB = ("a", "b")

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
monomials = st.tuples(st.integers(0, 3), st.integers(0, 3))
polys = st.dictionaries(monomials, rationals, max_size=5).map(lambda t: Poly(AB, t))
points = st.fixed_dictionaries({"a": rationals, "b": rationals})


@given(polys, polys, polys)
@settings(max_examples=60, deadline=None)
def test_ring_laws(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == 0
    assert p * 1 == p and p + 0 == p


@given(polys, polys, points)
@settings(max_examples=60, deadline=None)
def test_evaluation_is_a_ring_homomorphism(p, q, pt):
    assert (p + q).evaluate(pt) == p.evaluate(pt) + q.evaluate(pt)
    assert (p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt)
    assert (p ** 2).evaluate(pt) == p.evaluate(pt) ** 2


@given(polys)
@settings(max_examples=60, deadline=None)
def test_canonical_string_round_trips(p):
    assert parse_poly(str(p), AB) == p


def test_canonical_order_and_syntax():
    a, b = Poly.gens(AB)
    tau = (a ** 2 + b ** 2 + a * b + a + b + 1) * 2
    assert str(tau) == "2*a^2 + 2*a*b + 2*b^2 + 2*a + 2*b + 2"
    assert str(-(a ** 2 + b ** 2 + 1)) == "-a^2 - b^2 - 1"
    assert str(Poly.zero(AB)) == "0"
    assert str(a / 2 - Fraction(1, 3)) == "1/2*a - 1/3"
    assert tau.evaluate({"a": 1, "b": 1}) == 12


def test_parser_accepts_usual_forms():
    assert parse_poly("2*(a+b)") == parse_poly("2*a + 2*b")
    assert parse_poly("a**2 - (a+b)^2") == parse_poly("-2*a*b - b^2")
    assert parse_poly("-(a + b + 2)") == parse_poly("-a - b - 2")
    assert parse_poly("a/2") == Poly.var("a", AB) / 2
    with pytest.raises(PolyParseError):
        parse_poly("1/a")
    with pytest.raises(PolyParseError):
        parse_poly("c + 1")
    with pytest.raises(PolyParseError):
        parse_poly("a +")
    with pytest.raises(PolyParseError):
        parse_poly("2(a+b)")  # multiplication is always explicit


def test_evaluate_requires_every_variable():
    with pytest.raises(KeyError):
        parse_poly("a + b").evaluate({"a": 1})


def test_mismatched_variable_sets_are_rejected():
    with pytest.raises(ValueError):
        Poly.var("a", ("a",)) + Poly.var("a", AB)
    # constants embed anywhere
    assert Poly.const(3) + Poly.var("a", AB) == parse_poly("a + 3")


def test_primitive_normalizes_scalar_multiples():
    assert parse_poly("-4*a - 6*b^2").primitive() == parse_poly("3*b^2 + 2*a")
    assert parse_poly("a/2 + 1/3").primitive() == parse_poly("3*a + 2")


@pytest.mark.parametrize(
    "text, value",
    [("3", Fraction(3)), ("-2/6", Fraction(-1, 3)), ("0.25", Fraction(1, 4)), ("-1.5", Fraction(-3, 2)), (".5", Fraction(1, 2))],
)
def test_to_rational_is_exact(text, value):
    assert to_rational(text) == value


@pytest.mark.parametrize("bad", ["1e3", "abc", "1/0x", "", "nan"])
def test_to_rational_rejects_inexact_input(bad):
    with pytest.raises(ValueError):
        to_rational(bad)


def test_to_rational_rejects_floats_and_bools():
    with pytest.raises(TypeError):
        to_rational(0.5)
    with pytest.raises(TypeError):
        to_rational(True)


small = st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=4)


@given(small)
@settings(max_examples=80, deadline=None)
def test_nullspace_round_trip(rows):
    m = RatMatrix(rows, 4)
    kernel = solve_nullspace(m)
    assert len(kernel) == 4 - m.rank()
    for v in kernel:
        assert all(x == 0 for x in m @ list(v))
    if kernel:
        assert rank(kernel) == len(kernel)


def test_nullspace_of_identity_is_trivial():
    assert solve_nullspace(RatMatrix.identity(3)) == []


def test_inverse_and_singularity():
    m = RatMatrix([[2, 1], [1, 1]])
    assert m @ m.inverse() == RatMatrix.identity(2)
    with pytest.raises(ZeroDivisionError):
        RatMatrix([[1, 2], [2, 4]]).inverse()


@given(st.integers(1, 3), st.integers(0, 10_000))
@settings(max_examples=40, deadline=None)
def test_projector_algebra(k, seed):
    rnd = random.Random(seed)
    n = 4
    while True:
        vecs = [[Fraction(rnd.randint(-3, 3)) for _ in range(n)] for _ in range(n)]
        if rank(vecs) == n:
            break
    U, V = vecs[:k], vecs[k:]
    P = projector_onto(U, V)
    Q = projector_onto(V, U)
    assert P @ P == P
    assert P @ Q == RatMatrix.zeros(n, n)
    assert P + Q == RatMatrix.identity(n)
    for u in U:
        assert list(P @ u) == list(u)
    for v in V:
        assert all(x == 0 for x in P @ v)


def test_projector_rejects_dependent_pieces():
    with pytest.raises(ValueError):
        projector_onto([[1, 0]], [[2, 0]])


def test_apply_matrix_to_polynomial_vector():
    a, b = Poly.gens(AB)
    m = RatMatrix([[1, 1], [0, 2]])
    assert apply_matrix(m, [a, b]) == [a + b, b * 2]
