import pytest

from hnlab.exactalg import Poly, parse_poly
from hnlab.liealg import (
    AlgebraError,
    DomainError,
    JacobiError,
    UnknownAlgebraError,
    bracket,
    catalog_add,
    catalog_get,
    catalog_names,
    jacobi_check,
    load_algebra,
    serialize_algebra,
    structure_from_brackets,
)

AB = ("a", "b")
P = lambda s: parse_poly(s, AB)  # noqa: E731


def test_catalog_lists_builtins():
    assert catalog_names()[:2] == ["g4_5", "g4_6"]


def test_g45_brackets_and_domain():
    alg = catalog_get("g4_5")
    assert alg.bracket_strings() == ["[e1,e4] = e1", "[e2,e4] = a*e2", "[e3,e4] = b*e3"]
    assert [str(c) for c in alg.constraints] == ["a != 0", "b != 0"]


def test_g46_brackets_and_domain():
    alg = catalog_get("g4_6")
    assert alg.bracket_strings() == ["[e1,e4] = a*e1", "[e2,e4] = b*e2 - e3", "[e3,e4] = e2 + b*e3"]
    assert [str(c) for c in alg.constraints] == ["a != 0", "b >= 0"]


@pytest.mark.parametrize("name", ["g4_5", "g4_6"])
def test_catalog_algebras_satisfy_jacobi(name):
    assert jacobi_check(catalog_get(name)) == []


def test_structure_is_antisymmetric(alg):
    for i in range(4):
        for j in range(4):
            assert all((x + y).is_zero() for x, y in zip(alg.structure[i][j], alg.structure[j][i]))


def test_bracket_is_bilinear_and_antisymmetric(alg):
    x = [P("1"), P("a"), P("0"), P("2")]
    y = [P("b"), P("-1"), P("3"), P("1/2")]
    xy, yx = bracket(alg, x, y), bracket(alg, y, x)
    assert all((u + v).is_zero() for u, v in zip(xy, yx))
    x2 = [p * 3 for p in x]
    assert bracket(alg, x2, y) == tuple(p * 3 for p in xy)


def test_extra_bracket_breaks_jacobi():
    one, z = Poly.const(1, AB), Poly.zero(AB)
    a, b = Poly.gens(AB)
    structure = structure_from_brackets(
        AB,
        {(1, 4): (one, z, z, z), (2, 4): (z, a, z, z), (3, 4): (z, z, b, z), (1, 2): (z, z, one, z)},
    )
    from hnlab.liealg import LieAlgebraSpec

    bad = LieAlgebraSpec("g4_5_modified", AB, structure, ())
    violations = jacobi_check(bad)
    assert violations
    assert (0, 1, 3) in [v.triple for v in violations]


def test_domain_checks():
    alg = catalog_get("g4_5")
    with pytest.raises(DomainError, match="a != 0"):
        alg.check_point({"a": 0, "b": 1})
    with pytest.raises(DomainError):
        catalog_get("g4_6").check_point({"a": 1, "b": "-1/2"})
    assert catalog_get("g4_6").check_point({"a": "3/2", "b": 0}) == {"a": 1.5, "b": 0}
    with pytest.raises(DomainError):
        alg.check_point({"a": 1})


def test_specialization_is_numeric():
    alg = catalog_get("g4_6").at({"a": 2, "b": "1/2"})
    assert alg.params == ()
    assert alg.bracket_strings() == ["[e1,e4] = 2*e1", "[e2,e4] = 1/2*e2 - e3", "[e3,e4] = e2 + 1/2*e3"]


def test_unknown_name_lists_available():
    with pytest.raises(UnknownAlgebraError, match="g4_5"):
        catalog_get("g9_9")


G45_DOC = """
name: g4_5
params: [a, b]
constraints: ["a != 0", "b != 0"]
brackets:
  - {i: 1, j: 4, coeffs: [1, 0, 0, 0]}
  - {i: 2, j: 4, coeffs: [0, a, 0, 0]}
  - {i: 4, j: 3, coeffs: [0, 0, -b, 0]}
"""


def test_document_encoding_of_g45_equals_catalog_entry():
    spec = load_algebra(G45_DOC)
    ref = catalog_get("g4_5")
    assert spec.structure == ref.structure and spec.constraints == ref.constraints


def test_serialization_round_trips(alg):
    again = load_algebra(serialize_algebra(alg))
    assert again == alg


def test_json_documents_are_accepted():
    spec = load_algebra('{"name": "h", "brackets": [{"i": 1, "j": 2, "coeffs": [0, 0, 1, 0]}]}')
    assert spec.bracket_strings() == ["[e1,e2] = e3"]


@pytest.mark.parametrize(
    "doc, message",
    [
        ("name: x\nbrackets:\n  - {i: 1, j: 2, coeffs: [1, 0, 0]}", "4 polynomials"),
        ("name: x\nbrackets:\n  - {i: 1, j: 5, coeffs: [1, 0, 0, 0]}", "1..4"),
        ("name: x\nbrackets:\n  - {i: 1, j: 1, coeffs: [1, 0, 0, 0]}", "antisymmetry"),
        (
            "name: x\nbrackets:\n  - {i: 1, j: 2, coeffs: [0, 0, 1, 0]}\n  - {i: 2, j: 1, coeffs: [0, 0, 1, 0]}",
            "antisymmetry",
        ),
        ("name: x\nparams: [a]\nbrackets:\n  - {i: 1, j: 2, coeffs: [c, 0, 0, 0]}", "unknown variable"),
        ("name: x\nshape: 4\n", "unknown field"),
        ("- 1\n- 2\n", "mapping"),
        ("brackets: []\n", "name"),
        ("name: x\nparams: [a]\nconstraints: ['a > 1']\n", "constraint"),
    ],
)
def test_malformed_documents(doc, message):
    with pytest.raises(AlgebraError, match=message):
        load_algebra(doc)


def test_jacobi_failure_names_the_triple():
    doc = """
name: broken
brackets:
  - {i: 1, j: 4, coeffs: [1, 0, 0, 0]}
  - {i: 2, j: 4, coeffs: [0, 1, 0, 0]}
  - {i: 1, j: 2, coeffs: [0, 0, 1, 0]}
"""
    with pytest.raises(JacobiError, match=r"\(e1, e2, e4\)"):
        load_algebra(doc)


def test_registry_round_trip(isolated_registry):
    doc = "name: my_algebra\nparams: [p]\nconstraints: ['p != 0']\nbrackets:\n  - {i: 1, j: 4, coeffs: [p, 0, 0, 0]}\n"
    spec = catalog_add(doc)
    assert "my_algebra" in catalog_names()
    assert (isolated_registry / "my_algebra.yaml").is_file()
    assert catalog_get("my_algebra") == spec
    with pytest.raises(AlgebraError, match="already"):
        catalog_add(doc)
    with pytest.raises(AlgebraError, match="already"):
        catalog_add(G45_DOC)
