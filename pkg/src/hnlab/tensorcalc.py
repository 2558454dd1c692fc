"""Levi-Civita connection of the invariant metric and the tensors built from it."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable, Iterator, Mapping

import numpy as np

from .exactalg import Poly, RatMatrix
from .hnstruct import DIM, HNFrame
from .liealg import LieAlgebraSpec


def _rat_array(m: RatMatrix) -> np.ndarray:
    return np.array(m.entries, dtype=object)


class ComponentTensor:
    """Dense array of ``Poly`` components in the frame; indexing is 0-based.

    ``at(1, 1, 3)`` reads a component with the 1-based labels used in print.
    """

    __slots__ = ("array", "params")

    def __init__(self, array: np.ndarray, params: tuple[str, ...]):
        array = np.asarray(array, dtype=object)
        if array.shape != (DIM,) * array.ndim or not 1 <= array.ndim <= 4:
            raise ValueError(f"bad component array shape {array.shape}")
        out = np.empty(array.shape, dtype=object)
        for idx in np.ndindex(array.shape):
            v = array[idx]
            out[idx] = v if isinstance(v, Poly) else Poly.const(v, params)
        self.array = out
        self.params = tuple(params)

    @classmethod
    def zeros(cls, rank: int, params: tuple[str, ...]) -> ComponentTensor:
        return cls(np.full((DIM,) * rank, 0, dtype=object), params)

    @property
    def rank(self) -> int:
        return self.array.ndim

    def __getitem__(self, idx):
        return self.array[idx]

    def at(self, *labels: int) -> Poly:
        return self.array[tuple(i - 1 for i in labels)]

    def indices(self) -> Iterator[tuple[int, ...]]:
        return np.ndindex(self.array.shape)

    def nonzero(self) -> list[tuple[tuple[int, ...], Poly]]:
        """``(1-based labels, value)`` for every nonzero component."""
        return [
            (tuple(i + 1 for i in idx), self.array[idx]) for idx in self.indices() if not self.array[idx].is_zero()
        ]

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.array.flat)

    def evaluate(self, assignment: Mapping[str, object]) -> np.ndarray:
        out = np.empty(self.array.shape, dtype=object)
        for idx in self.indices():
            out[idx] = self.array[idx].evaluate(assignment)
        return out

    def flat(self) -> list[Poly]:
        return list(self.array.flat)

    def __add__(self, other: ComponentTensor) -> ComponentTensor:
        return ComponentTensor(self.array + other.array, self.params)

    def __sub__(self, other: ComponentTensor) -> ComponentTensor:
        return ComponentTensor(self.array - other.array, self.params)

    def __neg__(self) -> ComponentTensor:
        return ComponentTensor(-self.array, self.params)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ComponentTensor):
            return NotImplemented
        return self.array.shape == other.array.shape and all(
            x == y for x, y in zip(self.array.flat, other.array.flat)
        )

    __hash__ = None

    def __repr__(self) -> str:
        body = ", ".join(f"{''.join(map(str, k))}: {v}" for k, v in self.nonzero())
        return f"ComponentTensor(rank={self.rank}, {{{body}}})"


@dataclass(frozen=True)
class Connection:
    """``gamma[i, j, k]``: coefficient of e_k in nabla_{e_i} e_j."""

    gamma: np.ndarray
    params: tuple[str, ...]

    def matrix(self, i: int) -> np.ndarray:
        """nabla_{e_i} as a matrix acting on component columns: ``A[k, j] = gamma[i, j, k]``."""
        return self.gamma[i].T

    def along(self, x) -> np.ndarray:
        """nabla_x as a matrix, for a component vector ``x``."""
        out = np.full((DIM, DIM), Poly.zero(self.params), dtype=object)
        for i in range(DIM):
            if x[i] != 0:
                out = out + self.matrix(i) * x[i]
        return out

    def covariant(self, x, y) -> np.ndarray:
        return self.along(x).dot(np.asarray(y, dtype=object))


def levi_civita(alg: LieAlgebraSpec, frame: HNFrame) -> Connection:
    """Koszul formula for invariant fields, where g(e_i, e_j) is constant:

    2 g(nabla_x y, z) = g([x, y], z) + g([z, x], y) + g([z, y], x)
    """
    c = np.array(alg.structure, dtype=object)  # c[i, j, k]
    g = _rat_array(frame.g)
    g_inv = _rat_array(frame.g_inv)
    # lowered structure constants: cl[i, j, m] = g([e_i, e_j], e_m)
    cl = np.einsum("ijk,km->ijm", c, g)
    # koszul[i, j, m] = 2 g(nabla_{e_i} e_j, e_m)
    koszul = cl + np.einsum("mij->ijm", cl) + np.einsum("mji->ijm", cl)
    gamma = np.einsum("ijm,mk->ijk", koszul, g_inv) * Fraction(1, 2)
    gamma = ComponentTensor(gamma, alg.params).array
    return Connection(gamma, alg.params)


def nabla_J(conn: Connection, frame: HNFrame, alpha: int, x) -> np.ndarray:
    """(nabla_x J_alpha) as a matrix: [nabla_x, J_alpha]."""
    A = conn.along(x)
    J = _rat_array(frame.j(alpha))
    return A.dot(J) - J.dot(A)


def _unit(i: int) -> list[int]:
    return [int(k == i) for k in range(DIM)]


def fundamental_tensor(conn: Connection, frame: HNFrame, alpha: int) -> ComponentTensor:
    """F_alpha(e_i, e_j, e_k) = g((nabla_{e_i} J_alpha) e_j, e_k)."""
    g = _rat_array(frame.g)
    out = np.empty((DIM,) * 3, dtype=object)
    for i in range(DIM):
        D = nabla_J(conn, frame, alpha, _unit(i))
        # D[m, j] is the e_m component of (nabla_{e_i} J) e_j
        out[i] = np.einsum("mj,mk->jk", D, g)
    return ComponentTensor(out, conn.params)


def lee_form(F: ComponentTensor, frame: HNFrame) -> ComponentTensor:
    """theta(e_i) = g^{kl} F(e_k, e_l, e_i)."""
    g_inv = _rat_array(frame.g_inv)
    return ComponentTensor(np.einsum("kl,kli->i", g_inv, F.array), F.params)


def nijenhuis(conn: Connection, frame: HNFrame, alpha: int) -> ComponentTensor:
    """Nijenhuis tensor of J_alpha from nabla J, lowered: N(e_i, e_j, e_k) = g(N(e_i, e_j), e_k)."""
    J = _rat_array(frame.j(alpha))
    g = _rat_array(frame.g)
    D = [nabla_J(conn, frame, alpha, _unit(i)) for i in range(DIM)]
    DJ = [nabla_J(conn, frame, alpha, J[:, i]) for i in range(DIM)]  # nabla_{J e_i} J
    out = np.empty((DIM,) * 3, dtype=object)
    for i, j in product(range(DIM), repeat=2):
        ej, ei = np.array(_unit(j), dtype=object), np.array(_unit(i), dtype=object)
        vec = D[i].dot(J.dot(ej)) - D[j].dot(J.dot(ei)) + DJ[i].dot(ej) - DJ[j].dot(ei)
        out[i, j] = g.T.dot(vec)
    return ComponentTensor(out, conn.params)


def nijenhuis_brackets(alg: LieAlgebraSpec, frame: HNFrame, alpha: int) -> ComponentTensor:
    """Nijenhuis tensor from the bracket alone, lowered with g:

    N(x, y) = [Jx, Jy] - J[Jx, y] - J[x, Jy] - [x, y]
    """
    J = _rat_array(frame.j(alpha))
    g = _rat_array(frame.g)
    c = np.array(alg.structure, dtype=object)

    def br(x, y):
        return np.einsum("i,j,ijk->k", x, y, c)

    out = np.empty((DIM,) * 3, dtype=object)
    for i, j in product(range(DIM), repeat=2):
        ei, ej = np.array(_unit(i), dtype=object), np.array(_unit(j), dtype=object)
        Jei, Jej = J.dot(ei), J.dot(ej)
        vec = br(Jei, Jej) - J.dot(br(Jei, ej)) - J.dot(br(ei, Jej)) - br(ei, ej)
        out[i, j] = g.T.dot(vec)
    return ComponentTensor(out, alg.params)


# symmetry folding -------------------------------------------------------------
#
# A move maps a component index to (sign, other index) with
# T[other] = sign * T[index]; the frame J_alpha permute the basis up to sign,
# so every symmetry below is of this form.

def _signed_image(J, i):
    """J e_i = s e_m as (s, m), 0-based."""
    for m in range(DIM):
        if J[m, i]:
            return J[m, i], m
    raise ValueError("J must permute the frame up to sign")


def complete_orbits(seed: dict, moves: Callable) -> tuple[dict, bool]:
    """Close a partial component table under sign-permutation moves.

    Returns the completed table and whether it stayed consistent.
    """
    table = dict(seed)
    consistent = True
    frontier = list(seed)
    while frontier:
        idx = frontier.pop()
        for sign, other in moves(idx):
            val = table[idx] * sign
            if other in table:
                if table[other] != val:
                    consistent = False
            else:
                table[other] = val
                frontier.append(other)
    return table, consistent


def f_moves(frame: HNFrame, alpha: int):
    eps = frame.epsilon(alpha)
    J = frame.j(alpha)

    def moves(idx):
        x, y, z = idx
        sy, my = _signed_image(J, y)
        sz, mz = _signed_image(J, z)
        # F(x,z,y) = -eps F(x,y,z); F(x,Jy,Jz) = -eps F(x,y,z)
        return [(-eps, (x, z, y)), (-eps * sy * sz, (x, my, mz))]

    return moves


def n_moves(frame: HNFrame, alpha: int):
    J = frame.j(alpha)

    def moves(idx):
        x, y, z = idx
        sx, mx = _signed_image(J, x)
        sy, my = _signed_image(J, y)
        # N(y,x,z) = -N(x,y,z); N(Jx,Jy,z) = -N(x,y,z)
        return [(-1, (y, x, z)), (-sx * sy, (mx, my, z))]

    return moves


def r_moves(idx):
    i, j, k, l = idx
    return [(-1, (j, i, k, l)), (-1, (i, j, l, k)), (1, (k, l, i, j))]


F_SYMMETRY = "F(x,y,z) = -eps F(x,z,y) = -eps F(x,Jy,Jz)"
N_SYMMETRY = "N(x,y,z) = -N(y,x,z) = -N(Jx,Jy,z)"
R_SYMMETRY = "R(x,y,z,w) = -R(y,x,z,w) = -R(x,y,w,z) = R(z,w,x,y)"


def fold(tensor: ComponentTensor, moves) -> list[tuple[tuple[int, ...], Poly]]:
    """One ``(1-based labels, value)`` per orbit of nonzero components, first in index order."""
    seen: set = set()
    out = []
    for idx in tensor.indices():
        if idx in seen or tensor[idx].is_zero():
            continue
        orbit, _ = complete_orbits({idx: tensor[idx]}, moves)
        seen.update(orbit)
        out.append((tuple(i + 1 for i in idx), tensor[idx]))
    return out
