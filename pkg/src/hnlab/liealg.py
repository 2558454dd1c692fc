"""Four-dimensional real Lie algebras given by symbolic structure constants."""
from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Mapping, Sequence

import yaml

from .exactalg import Poly, PolyParseError, parse_poly, to_rational

DIM = 4

Vector = tuple  # four Poly components in the frame e1..e4


class AlgebraError(ValueError):
    """Malformed algebra definition."""


class JacobiError(AlgebraError):
    def __init__(self, name: str, violations: list[JacobiViolation]):
        self.violations = violations
        first = violations[0]
        i, j, k = (x + 1 for x in first.triple)
        super().__init__(
            f"algebra {name!r} violates the Jacobi identity for (e{i}, e{j}, e{k}): "
            f"residual {[str(p) for p in first.residual]}"
        )


class DomainError(ValueError):
    """A parameter assignment violates a domain constraint."""


class UnknownAlgebraError(KeyError):
    def __str__(self) -> str:
        return str(self.args[0])


@dataclass(frozen=True)
class Constraint:
    """``poly != 0`` or ``param >= 0``."""

    kind: str  # "nonzero" | "nonneg"
    poly: Poly

    @classmethod
    def parse(cls, text: str, params: Sequence[str]) -> Constraint:
        m = re.fullmatch(r"\s*(.+?)\s*(!=|>=)\s*0\s*", text)
        if not m:
            raise AlgebraError(f"constraint must read '<poly> != 0' or '<param> >= 0': {text!r}")
        try:
            p = parse_poly(m.group(1), params)
        except PolyParseError as exc:
            raise AlgebraError(str(exc)) from exc
        if m.group(2) == ">=":
            if len(p.terms) != 1 or p.degree() != 1 or p.leading_coefficient() != 1:
                raise AlgebraError(f"'>= 0' constraints apply to a single parameter: {text!r}")
            return cls("nonneg", p)
        return cls("nonzero", p)

    def holds(self, assignment: Mapping[str, object]) -> bool:
        value = self.poly.evaluate(assignment)
        return value != 0 if self.kind == "nonzero" else value >= 0

    def __str__(self) -> str:
        return f"{self.poly} {'!=' if self.kind == 'nonzero' else '>='} 0"


@dataclass(frozen=True)
class LieAlgebraSpec:
    name: str
    params: tuple[str, ...]
    # structure[i][j][k]: coefficient of e_k in [e_i, e_j], 0-based
    structure: tuple
    constraints: tuple[Constraint, ...] = ()
    assignment: tuple = field(default=(), compare=False)

    dim = DIM

    def __post_init__(self):
        c = self.structure
        if len(c) != DIM or any(len(r) != DIM or any(len(v) != DIM for v in r) for r in c):
            raise AlgebraError("structure constants must be a 4x4x4 array")
        for i in range(DIM):
            for j in range(DIM):
                for k in range(DIM):
                    if c[i][j][k] != -c[j][i][k]:
                        raise AlgebraError(f"structure constants not antisymmetric at ({i + 1},{j + 1},{k + 1})")

    def zero(self) -> Poly:
        return Poly.zero(self.params)

    def basis(self, i: int) -> Vector:
        return tuple(Poly.const(int(k == i), self.params) for k in range(DIM))

    def bracket_basis(self, i: int, j: int) -> Vector:
        return tuple(self.structure[i][j])

    def nonzero_brackets(self):
        """Yield ``(i, j, coeffs)`` with 1-based ``i < j`` for every nonzero bracket."""
        for i in range(DIM):
            for j in range(i + 1, DIM):
                v = self.structure[i][j]
                if any(not p.is_zero() for p in v):
                    yield i + 1, j + 1, v

    def bracket_strings(self) -> list[str]:
        out = []
        for i, j, v in self.nonzero_brackets():
            out.append(f"[e{i},e{j}] = {format_vector(v)}")
        return out

    def check_point(self, assignment: Mapping[str, object]) -> dict[str, Fraction]:
        """Validate an assignment against the parameters and domain constraints."""
        missing = [p for p in self.params if p not in assignment]
        if missing:
            raise DomainError(f"no value given for parameter(s) {', '.join(missing)}")
        values = {p: to_rational(assignment[p]) for p in self.params}
        for c in self.constraints:
            if not c.holds(values):
                raise DomainError(f"{self.name}: constraint {c} violated at {format_point(values)}")
        return values

    def at(self, assignment: Mapping[str, object]) -> LieAlgebraSpec:
        """Specialize every parameter; the result has numeric structure constants."""
        values = self.check_point(assignment)
        structure = tuple(
            tuple(tuple(Poly.const(p.evaluate(values)) for p in v) for v in row) for row in self.structure
        )
        return LieAlgebraSpec(self.name, (), structure, (), tuple(sorted(values.items())))


def format_point(values: Mapping[str, object]) -> str:
    return ", ".join(f"{k}={v}" for k, v in values.items())


def format_vector(v: Sequence[Poly]) -> str:
    parts = []
    for k, p in enumerate(v):
        if p.is_zero():
            continue
        s = str(p)
        coeff = "" if p == 1 else "-" if p == -1 else (f"({s})*" if len(p.terms) > 1 else f"{s}*")
        parts.append(f"{coeff}e{k + 1}")
    if not parts:
        return "0"
    return " + ".join(parts).replace("+ -", "- ")


def structure_from_brackets(params: Sequence[str], brackets: Mapping[tuple[int, int], Sequence[Poly]]) -> tuple:
    """Dense antisymmetric 4x4x4 table from 1-based ``{(i, j): coeffs}`` with ``i < j``."""
    params = tuple(params)
    zero = Poly.zero(params)
    c = [[[zero] * DIM for _ in range(DIM)] for _ in range(DIM)]
    for (i, j), coeffs in brackets.items():
        coeffs = [p if isinstance(p, Poly) else Poly.const(p, params) for p in coeffs]
        c[i - 1][j - 1] = list(coeffs)
        c[j - 1][i - 1] = [-p for p in coeffs]
    return tuple(tuple(tuple(v) for v in row) for row in c)


def bracket(alg: LieAlgebraSpec, x: Sequence, y: Sequence) -> Vector:
    """Bilinear extension of the structure constants."""
    zero = alg.zero()
    out = [zero] * DIM
    for i in range(DIM):
        if x[i] == 0:
            continue
        for j in range(DIM):
            if i == j or y[j] == 0:
                continue
            xy = x[i] * y[j]
            for k, c in enumerate(alg.structure[i][j]):
                if not c.is_zero():
                    out[k] = out[k] + xy * c
    return tuple(out)


@dataclass(frozen=True)
class JacobiViolation:
    triple: tuple[int, int, int]  # 0-based
    residual: Vector


def jacobi_check(alg: LieAlgebraSpec) -> list[JacobiViolation]:
    violations = []
    e = [alg.basis(i) for i in range(DIM)]
    for i in range(DIM):
        for j in range(i + 1, DIM):
            for k in range(j + 1, DIM):
                terms = (
                    bracket(alg, bracket(alg, e[i], e[j]), e[k]),
                    bracket(alg, bracket(alg, e[j], e[k]), e[i]),
                    bracket(alg, bracket(alg, e[k], e[i]), e[j]),
                )
                residual = tuple(sum(t, alg.zero()) for t in zip(*terms))
                if any(not p.is_zero() for p in residual):
                    violations.append(JacobiViolation((i, j, k), residual))
    return violations


# catalog ----------------------------------------------------------------

_AB = ("a", "b")


def _g4_5() -> LieAlgebraSpec:
    a, b = Poly.gens(_AB)
    z = Poly.zero(_AB)
    one = Poly.const(1, _AB)
    structure = structure_from_brackets(
        _AB,
        {(1, 4): (one, z, z, z), (2, 4): (z, a, z, z), (3, 4): (z, z, b, z)},
    )
    return LieAlgebraSpec("g4_5", _AB, structure, (Constraint("nonzero", a), Constraint("nonzero", b)))


def _g4_6() -> LieAlgebraSpec:
    a, b = Poly.gens(_AB)
    z = Poly.zero(_AB)
    one = Poly.const(1, _AB)
    structure = structure_from_brackets(
        _AB,
        {(1, 4): (a, z, z, z), (2, 4): (z, b, -one, z), (3, 4): (z, one, b, z)},
    )
    return LieAlgebraSpec("g4_6", _AB, structure, (Constraint("nonzero", a), Constraint("nonneg", b)))


BUILTIN = {"g4_5": _g4_5, "g4_6": _g4_6}


def registry_dir() -> Path:
    return Path(os.environ.get("HNLAB_REGISTRY", Path.home() / ".hnlab" / "registry"))


def _registered() -> dict[str, Path]:
    d = registry_dir()
    if not d.is_dir():
        return {}
    return {p.stem: p for p in sorted(d.glob("*.yaml"))}


def catalog_names() -> list[str]:
    return list(BUILTIN) + [n for n in _registered() if n not in BUILTIN]


def catalog_get(name: str) -> LieAlgebraSpec:
    if name in BUILTIN:
        return BUILTIN[name]()
    reg = _registered()
    if name in reg:
        return load_algebra(reg[name].read_text(encoding="utf-8"))
    raise UnknownAlgebraError(f"unknown algebra {name!r}; available: {', '.join(catalog_names())}")


def catalog_add(text: str) -> LieAlgebraSpec:
    """Validate a definition document and store it in the registry directory."""
    spec = load_algebra(text)
    if spec.name in catalog_names():
        raise AlgebraError(f"algebra {spec.name!r} is already in the catalog")
    d = registry_dir()
    d.mkdir(parents=True, exist_ok=True)
    (d / f"{spec.name}.yaml").write_text(serialize_algebra(spec), encoding="utf-8")
    return spec


# file format --------------------------------------------------------------


def load_algebra(source: str) -> LieAlgebraSpec:
    """Parse an algebra definition document (YAML; JSON is accepted as a subset).

    Only ``i < j`` brackets are required; the antisymmetric half is filled in.
    Raises :class:`JacobiError` if the table is not a Lie algebra.
    """
    try:
        doc = yaml.safe_load(source)
    except yaml.YAMLError as exc:
        raise AlgebraError(f"cannot parse algebra document: {exc}") from exc
    if not isinstance(doc, dict):
        raise AlgebraError("algebra document must be a mapping")
    unknown = set(doc) - {"name", "params", "constraints", "brackets"}
    if unknown:
        raise AlgebraError(f"unknown field(s): {', '.join(sorted(unknown))}")
    name = doc.get("name")
    if not isinstance(name, str) or not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_.-]*", name):
        raise AlgebraError(f"missing or invalid name: {name!r}")
    params = tuple(str(p) for p in (doc.get("params") or []))
    for p in params:
        if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", p):
            raise AlgebraError(f"invalid parameter name {p!r}")
    if len(set(params)) != len(params):
        raise AlgebraError("repeated parameter name")
    constraints = tuple(Constraint.parse(str(c), params) for c in (doc.get("constraints") or []))

    def poly(x) -> Poly:
        try:
            return parse_poly(str(x), params)
        except PolyParseError as exc:
            raise AlgebraError(str(exc)) from exc

    table: dict[tuple[int, int], tuple[Poly, ...]] = {}
    for entry in doc.get("brackets") or []:
        if not isinstance(entry, dict) or set(entry) != {"i", "j", "coeffs"}:
            raise AlgebraError(f"bracket entry must have exactly i, j, coeffs: {entry!r}")
        i, j, coeffs = entry["i"], entry["j"], entry["coeffs"]
        if not (isinstance(i, int) and isinstance(j, int) and 1 <= i <= DIM and 1 <= j <= DIM):
            raise AlgebraError(f"bracket indices must be integers in 1..4: {entry!r}")
        if not isinstance(coeffs, list) or len(coeffs) != DIM:
            raise AlgebraError(f"coeffs must list 4 polynomials: {entry!r}")
        vec = tuple(poly(c) for c in coeffs)
        if i == j:
            if any(not p.is_zero() for p in vec):
                raise AlgebraError(f"antisymmetry conflict: [e{i},e{i}] must vanish")
            continue
        if i > j:
            i, j, vec = j, i, tuple(-p for p in vec)
        if (i, j) in table and table[(i, j)] != vec:
            raise AlgebraError(f"antisymmetry conflict: [e{i},e{j}] given inconsistently")
        table[(i, j)] = vec

    spec = LieAlgebraSpec(name, params, structure_from_brackets(params, table), constraints)
    violations = jacobi_check(spec)
    if violations:
        raise JacobiError(name, violations)
    return spec


def serialize_algebra(spec: LieAlgebraSpec) -> str:
    doc = {
        "name": spec.name,
        "params": list(spec.params),
        "constraints": [str(c) for c in spec.constraints],
        "brackets": [
            {"i": i, "j": j, "coeffs": [str(p) for p in v]} for i, j, v in spec.nonzero_brackets()
        ],
    }
    return yaml.safe_dump(doc, sort_keys=False, default_flow_style=None)
