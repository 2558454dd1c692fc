"""The standard hypercomplex triple with its neutral metric and associated forms."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .exactalg import RatMatrix, rank

DIM = 4
ALPHAS = (1, 2, 3)

HOLOMORPHIC = "holomorphic"
TOTALLY_REAL = "totally_real"
GENERIC = "generic"


class FrameError(ValueError):
    pass


def _from_images(images: dict[int, tuple[int, int]]) -> RatMatrix:
    """Matrix with ``J e_i = sign * e_k`` for ``images[i] = (sign, k)``, 1-based."""
    m = [[0] * DIM for _ in range(DIM)]
    for i, (sign, k) in images.items():
        m[k - 1][i - 1] = sign
    return RatMatrix(m, DIM)


@dataclass(frozen=True)
class HNFrame:
    J: tuple[RatMatrix, RatMatrix, RatMatrix]
    eps: tuple[int, int, int]
    g: RatMatrix
    g_assoc: tuple[RatMatrix, RatMatrix, RatMatrix]
    g_inv: RatMatrix

    def j(self, alpha: int) -> RatMatrix:
        return self.J[alpha - 1]

    def epsilon(self, alpha: int) -> int:
        return self.eps[alpha - 1]

    def metric(self, x, y):
        """g(x, y) for component vectors (rationals or Poly)."""
        return sum(
            (x[i] * y[j] * self.g[i, j] for i in range(DIM) for j in range(DIM) if self.g[i, j]),
            0,
        )


def verify_frame(frame: HNFrame) -> list[str]:
    """Return every failed structural identity (empty when the frame is sound)."""
    failures = []
    ident = RatMatrix.identity(DIM)
    J = frame.J
    for a in ALPHAS:
        if J[a - 1] @ J[a - 1] != -ident:
            failures.append(f"J{a}^2 != -I")
    for a, b, c in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
        if J[b - 1] @ J[c - 1] != J[a - 1]:
            failures.append(f"J{b}J{c} != J{a}")
        if J[c - 1] @ J[b - 1] != -J[a - 1]:
            failures.append(f"J{c}J{b} != -J{a}")
    g = frame.g
    for a in ALPHAS:
        Ja, e = J[a - 1], frame.eps[a - 1]
        if Ja.T @ g @ Ja != g * e:
            failures.append(f"g(J{a}x, J{a}y) != eps{a} g(x, y)")
        # (g_a)_{ij} = g(J e_i, e_j) = -eps g(e_i, J e_j)
        if frame.g_assoc[a - 1] != Ja.T @ g or frame.g_assoc[a - 1] != (g @ Ja) * -e:
            failures.append(f"g{a} inconsistent with J{a}")
    if frame.g_inv @ g != ident:
        failures.append("g_inv g != I")
    return failures


@lru_cache(maxsize=None)
def standard_frame() -> HNFrame:
    J1 = _from_images({1: (1, 2), 2: (-1, 1), 3: (-1, 4), 4: (1, 3)})
    J2 = _from_images({1: (1, 3), 2: (1, 4), 3: (-1, 1), 4: (-1, 2)})
    J3 = _from_images({1: (-1, 4), 2: (1, 3), 3: (-1, 2), 4: (1, 1)})
    g = RatMatrix([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]])
    J = (J1, J2, J3)
    frame = HNFrame(
        J=J,
        eps=(1, -1, -1),
        g=g,
        g_assoc=tuple(Ja.T @ g for Ja in J),
        g_inv=g.inverse(),
    )
    failures = verify_frame(frame)
    if failures:
        raise FrameError("; ".join(failures))
    return frame


def assoc_metric(frame: HNFrame, alpha: int) -> RatMatrix:
    """``(g_alpha)_{ij} = g(J_alpha e_i, e_j)``: the Kähler form for 1, Norden metrics for 2, 3."""
    if alpha not in ALPHAS:
        raise ValueError(f"alpha must be 1, 2 or 3, got {alpha}")
    return frame.g_assoc[alpha - 1]


@dataclass(frozen=True)
class Plane:
    """Basic coordinate plane span{e_i, e_j}, 1-based with i < j."""

    i: int
    j: int

    def __post_init__(self):
        if not (1 <= self.i < self.j <= DIM):
            raise ValueError(f"plane indices must satisfy 1 <= i < j <= 4, got ({self.i}, {self.j})")

    def __str__(self) -> str:
        return f"{self.i}{self.j}"


BASIC_PLANES = tuple(Plane(i, j) for i in range(1, DIM + 1) for j in range(i + 1, DIM + 1))


def _unit(i: int) -> tuple[int, ...]:
    return tuple(int(k == i - 1) for k in range(DIM))


def gram_determinant(frame: HNFrame, plane: Plane):
    x, y = _unit(plane.i), _unit(plane.j)
    return frame.metric(x, x) * frame.metric(y, y) - frame.metric(x, y) ** 2


def plane_type(frame: HNFrame, plane: Plane, alpha: int) -> str:
    if gram_determinant(frame, plane) == 0:
        raise FrameError(f"plane e{plane.i}e{plane.j} is degenerate")
    Ja = frame.j(alpha)
    span = [_unit(plane.i), _unit(plane.j)]
    image = [Ja @ v for v in span]
    if rank(span + image) == 2:
        return HOLOMORPHIC
    if all(frame.metric(u, v) == 0 for u in span for v in image):
        return TOTALLY_REAL
    return GENERIC


def planes_of_type(frame: HNFrame, alpha: int, kind: str) -> list[Plane]:
    return [p for p in BASIC_PLANES if plane_type(frame, p, alpha) == kind]
