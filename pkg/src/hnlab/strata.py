"""Loci cut out by vanishing conditions, and the stratification they induce.

A :class:`Cell` is the common zero set of a list of polynomials. Linear
equations are kept in reduced row echelon form, so two cells given by linear
systems compare equal exactly when they are the same affine subspace. Any
nonlinear equation that survives substitution of the linear part is kept as a
residual and is not solved.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .curvature import is_positive_definite
from .exactalg import Poly, rref
from .liealg import Constraint


def _linear_row(p: Poly) -> list[Fraction]:
    n = len(p.variables)
    row = [Fraction(0)] * (n + 1)
    for exps, c in p.terms.items():
        if sum(exps) == 0:
            row[n] = c
        else:
            row[exps.index(1)] = c
    return row


@dataclass(frozen=True)
class Cell:
    variables: tuple[str, ...]
    linear: tuple[tuple[Fraction, ...], ...]  # RREF rows [coeffs..., constant]
    residual: frozenset  # primitive nonlinear polynomials
    empty: bool = False

    @classmethod
    def whole(cls, variables: Sequence[str]) -> Cell:
        return cls(tuple(variables), (), frozenset())

    @classmethod
    def from_equations(cls, variables: Sequence[str], polys: Iterable[Poly]) -> Cell:
        variables = tuple(variables)
        lin: list[list[Fraction]] = []
        pending = [p.with_variables(variables) for p in polys]
        while True:
            cell = cls._reduce(variables, lin)
            if cell is None:
                return cls(variables, (), frozenset(), True)
            subs = cell.solution()
            residual, promoted = [], False
            for p in pending:
                q = p.subs(subs) if subs else p
                if q.is_zero():
                    continue
                if q.is_constant():
                    return cls(variables, (), frozenset(), True)
                if q.degree() == 1:
                    lin.append(_linear_row(q))
                    promoted = True
                else:
                    residual.append(q.primitive())
            if promoted:
                pending = residual
                continue
            if any(is_positive_definite(r) or is_positive_definite(-r) for r in residual):
                return cls(variables, (), frozenset(), True)
            return cls(variables, cell.linear, frozenset(residual))

    @classmethod
    def _reduce(cls, variables, rows) -> Cell | None:
        n = len(variables)
        if not rows:
            return cls(variables, (), frozenset())
        red, pivots = rref(rows, n + 1)
        if n in pivots:
            return None
        red = [tuple(r) for r in red[: len(pivots)]]
        return cls(variables, tuple(red), frozenset())

    def pivots(self) -> list[int]:
        return [next(k for k, x in enumerate(r) if x != 0) for r in self.linear]

    def solution(self) -> dict[str, Poly]:
        """Pivot variables expressed in the free ones."""
        n = len(self.variables)
        out = {}
        for row, pv in zip(self.linear, self.pivots()):
            expr = Poly.const(-row[n], self.variables)
            for k in range(n):
                if k != pv and row[k]:
                    expr = expr - Poly.var(self.variables[k], self.variables) * row[k]
            out[self.variables[pv]] = expr
        return out

    def equations(self) -> list[Poly]:
        n = len(self.variables)
        eqs = []
        for row in self.linear:
            p = Poly.const(row[n], self.variables)
            for k in range(n):
                if row[k]:
                    p = p + Poly.var(self.variables[k], self.variables) * row[k]
            eqs.append(p.primitive())
        return eqs + sorted(self.residual, key=str)

    def intersect(self, other: Cell) -> Cell:
        if self.empty or other.empty:
            return Cell(self.variables, (), frozenset(), True)
        return Cell.from_equations(self.variables, self.equations() + other.equations())

    def contains(self, other: Cell) -> bool:
        """``other`` is a subset of ``self``."""
        if other.empty:
            return True
        return self.intersect(other) == other

    def reduce_poly(self, p: Poly) -> Poly:
        sol = self.solution()
        return p.with_variables(self.variables).subs(sol) if sol else p

    def lies_in(self, polys: Sequence[Poly]) -> bool:
        """Every polynomial vanishes identically on this cell."""
        return Cell.from_equations(self.variables, polys).contains(self)

    def point(self) -> dict[str, Fraction] | None:
        if self.residual or len(self.linear) != len(self.variables):
            return None
        return {v: p.constant_value() for v, p in self.solution().items()}

    def free_variables(self) -> list[str]:
        piv = {self.variables[k] for k in self.pivots()}
        return [v for v in self.variables if v not in piv]

    def in_domain(self, constraints: Sequence[Constraint]) -> bool:
        """False when some constraint fails on the whole cell."""
        if self.empty:
            return False
        for c in constraints:
            p = self.reduce_poly(c.poly)
            if c.kind == "nonzero":
                if p.is_zero() or (p.primitive() in self.residual):
                    return False
            elif p.is_constant() and p.constant_value() < 0:
                return False
        return True

    def dimension(self) -> int:
        return len(self.variables) - len(self.linear) - (1 if self.residual else 0)

    def describe(self) -> str:
        if self.empty:
            return "empty"
        if not self.linear and not self.residual:
            return "generic"
        return ", ".join(solved_form(p) for p in self.equations())


def solved_form(p: Poly) -> str:
    """Readable ``var = expression`` for a polynomial linear in its leading variable."""
    for k, v in enumerate(p.variables):
        coeffs = [(e, c) for e, c in p.terms.items() if e[k]]
        if len(coeffs) == 1 and coeffs[0][0][k] == 1 and sum(coeffs[0][0]) == 1:
            c = coeffs[0][1]
            rest = (p - Poly.var(v, p.variables) * c) / (-c)
            return f"{v} = {rest}"
    return f"{p} = 0"


def _exclusion(parent: Cell, child: Cell) -> str:
    """How ``child`` is excluded from ``parent``, phrased in parent's free variables."""
    if not parent.linear and not parent.residual:
        eqs = child.equations()
        if len(eqs) == 1:
            return f"{eqs[0]} != 0"
        pt = child.point()
        if pt is not None:
            return f"({', '.join(parent.variables)}) != ({', '.join(str(pt[v]) for v in parent.variables)})"
        return "not (" + ", ".join(f"{e} = 0" for e in eqs) + ")"
    free = parent.free_variables()
    pt = child.point()
    if pt is not None and len(free) == 1:
        return f"{free[0]} != {pt[free[0]]}"
    return "not (" + child.describe() + ")"


@dataclass
class Stratum:
    cell: Cell
    excluded: list[Cell]
    classes: dict[int, str]

    @property
    def predicate(self) -> str:
        parts = [] if not (self.cell.linear or self.cell.residual) else [self.cell.describe()]
        parts += [_exclusion(self.cell, c) for c in self.excluded]
        return "; ".join(parts) if parts else "generic"


def stratify(
    variables: Sequence[str],
    loci: Sequence[Sequence[Poly]],
    constraints: Sequence[Constraint] = (),
) -> list[Cell]:
    """All distinct nonempty in-domain intersections of the given loci, plus the whole space.

    Ordered by dimension (largest first), then by description.
    """
    base = [Cell.from_equations(variables, eqs) for eqs in loci]
    base = [c for c in base if c.in_domain(constraints)]
    found: dict[Cell, None] = {Cell.whole(variables): None}
    frontier = list(dict.fromkeys(base))
    for c in frontier:
        found.setdefault(c, None)
    while frontier:
        new = []
        for c1, c2 in combinations(list(found), 2):
            c = c1.intersect(c2)
            if c.in_domain(constraints) and c not in found and c not in new:
                new.append(c)
        for c in new:
            found[c] = None
        frontier = new
    return sorted(found, key=lambda c: (-c.dimension(), c.describe()))


def maximal_subcells(cell: Cell, cells: Sequence[Cell]) -> list[Cell]:
    proper = [c for c in cells if c != cell and cell.contains(c)]
    return [c for c in proper if not any(d != c and d.contains(c) for d in proper)]
