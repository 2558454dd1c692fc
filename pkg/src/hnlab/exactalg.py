"""Exact scalars: rationals, multivariate polynomials over Q, and rational linear algebra.

Rationals are :class:`fractions.Fraction`. Polynomials are immutable maps from
exponent vectors to nonzero coefficients over a fixed, ordered tuple of
parameter names. Monomials are ordered graded-lexicographically with earlier
variables ranking higher, so ``a^2 > a*b > b^2 > a > b > 1``.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

Rational = Fraction

__all__ = [
    "Rational",
    "Poly",
    "PolyParseError",
    "RatMatrix",
    "to_rational",
    "parse_poly",
    "solve_nullspace",
    "rank",
    "projector_onto",
    "left_inverse",
    "apply_matrix",
    "rref",
]


def to_rational(value) -> Fraction:
    """Convert ``int``, ``Fraction`` or a ``"p/q"`` / finite decimal string exactly."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not re.fullmatch(r"[+-]?(\d+(/\d+)?|\d*\.\d+|\d+\.\d*)", text):
            raise ValueError(f"not an exact rational: {value!r}")
        q = Fraction(text)
        return q
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def _monomial_key(exps: tuple[int, ...]) -> tuple:
    return (sum(exps), exps)


class Poly:
    """Polynomial with rational coefficients in an ordered set of variables."""

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple[int, ...], object] | None = None):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"repeated variable in {variables}")
        clean: dict[tuple[int, ...], Fraction] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != len(variables) or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps} for variables {variables}")
            c = Fraction(coeff)
            if c:
                clean[exps] = clean.get(exps, Fraction(0)) + c
                if not clean[exps]:
                    del clean[exps]
        self.variables = variables
        self.terms = clean
        self._hash = None

    # construction -------------------------------------------------------

    @classmethod
    def const(cls, value, variables: Sequence[str] = ()) -> Poly:
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): Fraction(value)})

    @classmethod
    def var(cls, name: str, variables: Sequence[str]) -> Poly:
        variables = tuple(variables)
        if name not in variables:
            raise ValueError(f"{name!r} is not one of {variables}")
        exps = tuple(int(v == name) for v in variables)
        return cls(variables, {exps: 1})

    @classmethod
    def zero(cls, variables: Sequence[str] = ()) -> Poly:
        return cls(variables)

    @classmethod
    def gens(cls, variables: Sequence[str]) -> tuple[Poly, ...]:
        return tuple(cls.var(v, variables) for v in variables)

    # inspection ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get((0,) * len(self.variables), Fraction(0))

    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self.terms.items(), key=lambda t: _monomial_key(t[0]), reverse=True)

    def leading_coefficient(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        return self.sorted_terms()[0][1]

    def used_variables(self) -> tuple[str, ...]:
        return tuple(v for i, v in enumerate(self.variables) if any(e[i] for e in self.terms))

    # arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.variables != self.variables:
                # Constants carry no variables and embed anywhere.
                if not other.variables and other.is_constant():
                    return Poly.const(other.constant_value(), self.variables)
                if not self.variables and self.is_constant():
                    raise _Promote(other.variables)
                raise ValueError(f"variable sets differ: {self.variables} vs {other.variables}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Poly.const(other, self.variables)
        raise TypeError(f"cannot combine Poly with {type(other).__name__}")

    def _binary(self, other, op):
        try:
            o = self._coerce(other)
            s = self
        except _Promote as p:
            s = Poly.const(self.constant_value(), p.variables)
            o = other
        return op(s, o)

    def __add__(self, other):
        if not isinstance(other, (Poly, int, Fraction)):
            return NotImplemented

        def add(p, q):
            terms = dict(p.terms)
            for e, c in q.terms.items():
                terms[e] = terms.get(e, 0) + c
            return Poly(p.variables, terms)

        return self._binary(other, add)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly(self.variables, {e: -c for e, c in self.terms.items()})

    def __pos__(self) -> Poly:
        return self

    def __sub__(self, other):
        if not isinstance(other, (Poly, int, Fraction)):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        if not isinstance(other, (Poly, int, Fraction)):
            return NotImplemented
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, (Poly, int, Fraction)):
            return NotImplemented
        if isinstance(other, (int, Fraction)):
            return Poly(self.variables, {e: c * other for e, c in self.terms.items()})

        def mul(p, q):
            terms: dict[tuple[int, ...], Fraction] = {}
            for e1, c1 in p.terms.items():
                for e2, c2 in q.terms.items():
                    e = tuple(x + y for x, y in zip(e1, e2))
                    terms[e] = terms.get(e, 0) + c1 * c2
            return Poly(p.variables, terms)

        return self._binary(other, mul)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Poly):
            if not other.is_constant():
                raise ZeroDivisionError("division by a non-constant polynomial")
            other = other.constant_value()
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        if other == 0:
            raise ZeroDivisionError("division by zero")
        return self * (Fraction(1) / other)

    def __pow__(self, n: int) -> Poly:
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Poly.const(1, self.variables)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # equality -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.is_constant() and self.constant_value() == other
        if isinstance(other, Poly):
            if other.variables != self.variables:
                if self.is_constant() and other.is_constant():
                    return self.constant_value() == other.constant_value()
                return False
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    # evaluation ---------------------------------------------------------

    def evaluate(self, assignment: Mapping[str, object]) -> Fraction:
        """Exact value at a point; every variable that occurs must be assigned."""
        values = []
        for i, v in enumerate(self.variables):
            if v in assignment:
                values.append(to_rational(assignment[v]))
            elif any(e[i] for e in self.terms):
                raise KeyError(f"no value for variable {v!r}")
            else:
                values.append(Fraction(0))
        total = Fraction(0)
        for exps, c in self.terms.items():
            term = c
            for x, e in zip(values, exps):
                if e:
                    term *= x**e
            total += term
        return total

    def subs(self, mapping: Mapping[str, object], variables: Sequence[str] | None = None) -> Poly:
        """Substitute polynomials or rationals for some variables.

        The result lives over ``variables`` (default: the unchanged variable set).
        """
        variables = self.variables if variables is None else tuple(variables)
        images = []
        for v in self.variables:
            if v in mapping:
                img = mapping[v]
                images.append(img if isinstance(img, Poly) else Poly.const(to_rational(img), variables))
            else:
                images.append(Poly.var(v, variables))
        out = Poly.zero(variables)
        for exps, c in self.terms.items():
            term = Poly.const(c, variables)
            for img, e in zip(images, exps):
                if e:
                    term = term * img**e
            out = out + term
        return out

    def with_variables(self, variables: Sequence[str]) -> Poly:
        """Re-embed into another variable set containing every used variable."""
        variables = tuple(variables)
        missing = set(self.used_variables()) - set(variables)
        if missing:
            raise ValueError(f"variables {sorted(missing)} not in {variables}")
        idx = {v: i for i, v in enumerate(self.variables)}
        terms = {}
        for exps, c in self.terms.items():
            terms[tuple(exps[idx[v]] if v in idx else 0 for v in variables)] = c
        return Poly(variables, terms)

    def primitive(self) -> Poly:
        """Integer-coefficient multiple with content 1 and positive leading coefficient."""
        if not self.terms:
            return self
        den = reduce(lcm, (c.denominator for c in self.terms.values()), 1)
        nums = [int(c * den) for c in self.terms.values()]
        g = reduce(gcd, nums, 0)
        scale = Fraction(den, g)
        if self.leading_coefficient() < 0:
            scale = -scale
        return self * scale

    # printing -----------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for k, (exps, c) in enumerate(self.sorted_terms()):
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self.variables, exps) if e
            )
            mag = abs(c)
            if mono:
                body = mono if mag == 1 else f"{_fmt_rational(mag)}*{mono}"
            else:
                body = _fmt_rational(mag)
            if k == 0:
                pieces.append(("-" if c < 0 else "") + body)
            else:
                pieces.append(("- " if c < 0 else "+ ") + body)
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"Poly({str(self)!r}, variables={self.variables})"


class _Promote(Exception):
    def __init__(self, variables):
        self.variables = variables


def _fmt_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# parsing ----------------------------------------------------------------


class PolyParseError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(?:(\d+\.\d*|\.\d+|\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise PolyParseError(f"unexpected character at {pos} in {text!r}")
        num, name, op = m.groups()
        if num is not None:
            tokens.append(("num", num))
        elif name is not None:
            tokens.append(("name", name))
        else:
            tokens.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return tokens


def parse_poly(text: str, variables: Sequence[str] = ("a", "b")) -> Poly:
    """Parse ``"2*a^2 + a*b - 1/2"``-style input over the given variables."""
    variables = tuple(variables)
    tokens = _tokenize(str(text))
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else ("end", "")

    def take():
        nonlocal pos
        tok = peek()
        pos += 1
        return tok

    def expr():
        node = term()
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            rhs = term()
            node = node + rhs if op == "+" else node - rhs
        return node

    def term():
        node = unary()
        while peek() in (("op", "*"), ("op", "/")):
            op = take()[1]
            rhs = unary()
            if op == "*":
                node = node * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    raise PolyParseError(f"division by non-constant or zero in {text!r}")
                node = node / rhs.constant_value()
        return node

    def unary():
        if peek() == ("op", "-"):
            take()
            return -unary()
        if peek() == ("op", "+"):
            take()
            return unary()
        return power()

    def power():
        base = atom()
        if peek() == ("op", "^"):
            take()
            kind, val = take()
            if kind != "num" or not val.isdigit():
                raise PolyParseError(f"exponent must be a non-negative integer in {text!r}")
            return base ** int(val)
        return base

    def atom():
        kind, val = take()
        if kind == "num":
            return Poly.const(Fraction(val), variables)
        if kind == "name":
            if val not in variables:
                raise PolyParseError(f"unknown variable {val!r}; expected one of {variables}")
            return Poly.var(val, variables)
        if (kind, val) == ("op", "("):
            node = expr()
            if take() != ("op", ")"):
                raise PolyParseError(f"missing ')' in {text!r}")
            return node
        raise PolyParseError(f"unexpected token {val!r} in {text!r}")

    if not tokens:
        raise PolyParseError("empty polynomial string")
    result = expr()
    if pos != len(tokens):
        raise PolyParseError(f"trailing input in {text!r}")
    return result


# linear algebra -----------------------------------------------------------


class RatMatrix:
    """Dense immutable matrix of rationals."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable[object]], cols: int | None = None):
        grid = tuple(tuple(Fraction(x) for x in row) for row in entries)
        if cols is None:
            cols = len(grid[0]) if grid else 0
        if any(len(r) != cols for r in grid):
            raise ValueError("ragged matrix")
        self.rows = len(grid)
        self.cols = cols
        self.entries = grid

    @classmethod
    def identity(cls, n: int) -> RatMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> RatMatrix:
        return cls([[0] * cols for _ in range(rows)], cols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[object]], rows: int | None = None) -> RatMatrix:
        if not columns:
            return cls.zeros(rows or 0, 0)
        n = len(columns[0])
        return cls([[col[i] for col in columns] for i in range(n)], len(columns))

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i][j]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list[tuple[Fraction, ...]]:
        return [self.column(j) for j in range(self.cols)]

    @property
    def T(self) -> RatMatrix:
        return RatMatrix(zip(*self.entries), self.rows) if self.rows else RatMatrix.zeros(self.cols, 0)

    def __matmul__(self, other):
        if isinstance(other, RatMatrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            ot = other.T.entries
            return RatMatrix(
                [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in ot] for row in self.entries],
                other.cols,
            )
        vec = tuple(other)
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum((x * y for x, y in zip(row, vec)), Fraction(0)) for row in self.entries)

    def __add__(self, other: RatMatrix) -> RatMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return RatMatrix(
            [[x + y for x, y in zip(r, s)] for r, s in zip(self.entries, other.entries)], self.cols
        )

    def __sub__(self, other: RatMatrix) -> RatMatrix:
        return self + other * -1

    def __mul__(self, scalar) -> RatMatrix:
        return RatMatrix([[x * scalar for x in r] for r in self.entries], self.cols)

    __rmul__ = __mul__

    def __neg__(self) -> RatMatrix:
        return self * -1

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.shape, self.entries))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.entries for x in r)

    def rank(self) -> int:
        return len(rref(self.entries, self.cols)[1])

    def inverse(self) -> RatMatrix:
        n = self.rows
        if n != self.cols:
            raise ValueError("inverse of a non-square matrix")
        aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self.entries)]
        red, pivots = rref(aug, 2 * n)
        if pivots[:n] != list(range(n)):
            raise ZeroDivisionError("singular matrix")
        return RatMatrix([row[n:] for row in red[:n]], n)

    def __repr__(self) -> str:
        return f"RatMatrix({[[_fmt_rational(x) for x in r] for r in self.entries]})"


def rref(rows, ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form with exact pivots; returns (rows, pivot columns)."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][c]
        if pv != 1:
            m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def solve_nullspace(m: RatMatrix) -> list[tuple[Fraction, ...]]:
    """Basis of ``{v : m v = 0}``; one vector per free column, empty when trivial."""
    red, pivots = rref(m.entries, m.cols)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(tuple(v))
    return basis


def rank(vectors: Sequence[Sequence[object]]) -> int:
    if not vectors:
        return 0
    return RatMatrix(vectors).rank()


def left_inverse(columns: Sequence[Sequence[object]]) -> RatMatrix:
    """``L`` with ``L @ B = I`` for ``B`` whose columns are the given independent vectors."""
    b = RatMatrix.from_columns(columns)
    gram = b.T @ b
    return gram.inverse() @ b.T


def projector_onto(subspace: Sequence[Sequence[object]], complement: Sequence[Sequence[object]]) -> RatMatrix:
    """Projection onto ``span(subspace)`` along ``span(complement)``.

    If the two spans do not fill the ambient space, the complement is padded
    with standard basis vectors, so the projector also kills those directions.
    """
    vecs = [tuple(Fraction(x) for x in v) for v in list(subspace) + list(complement)]
    if not vecs:
        raise ValueError("empty decomposition")
    n = len(vecs[0])
    if rank(vecs) != len(vecs):
        raise ValueError("subspace and complement vectors are not jointly independent")
    comp = [tuple(Fraction(x) for x in v) for v in complement]
    for k in range(n):
        if len(vecs) == n:
            break
        e = tuple(Fraction(int(i == k)) for i in range(n))
        if rank(vecs + [e]) > len(vecs):
            vecs.append(e)
            comp.append(e)
    basis = RatMatrix.from_columns(vecs)
    d = len(subspace)
    select = RatMatrix([[int(i == j and i < d) for j in range(n)] for i in range(n)], n)
    return basis @ select @ basis.inverse()


def apply_matrix(m: RatMatrix, vec: Sequence) -> list:
    """Multiply a rational matrix into a vector of ``Poly`` (or rationals)."""
    if len(vec) != m.cols:
        raise ValueError("vector length mismatch")
    out = []
    for row in m.entries:
        acc = 0
        for x, v in zip(row, vec):
            if x:
                acc = v * x + acc
        out.append(acc)
    return out
