"""Decomposition of fundamental tensors into the basic classes of dimension 4.

J_1 is Hermitian (classes W2, W4); J_2 and J_3 are Norden (classes W1, W2, W3).
Each class is a linear subspace of the space of tensors with the symmetries of
F_alpha, and a tensor belongs to a sum of classes exactly when its projections
onto the remaining classes vanish.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Mapping, Sequence

from .exactalg import Poly, RatMatrix, apply_matrix, left_inverse, projector_onto, rank, solve_nullspace
from .hnstruct import ALPHAS, DIM, HNFrame, standard_frame
from .liealg import LieAlgebraSpec
from .strata import Stratum, maximal_subcells, stratify
from .tensorcalc import ComponentTensor, fundamental_tensor, levi_civita

N3 = DIM**3
KAHLER = "K"

HERMITIAN = "hermitian"
NORDEN = "norden"
CLASSES = {HERMITIAN: ("W2", "W4"), NORDEN: ("W1", "W2", "W3")}


class DecompositionError(RuntimeError):
    """The class subspaces do not form a direct sum of the admissible space."""


class NotAdmissibleError(ValueError):
    """A tensor lacks the symmetries of a fundamental tensor."""


def flat_index(i: int, j: int, k: int) -> int:
    return (i * DIM + j) * DIM + k


def kind_of(alpha: int) -> str:
    return HERMITIAN if alpha == 1 else NORDEN


# linear maps on the 64-dimensional tensor space -----------------------------


def _map_matrix(rows: list[dict[int, Fraction]]) -> RatMatrix:
    out = []
    for row in rows:
        dense = [Fraction(0)] * N3
        for idx, c in row.items():
            dense[idx] += c
        out.append(dense)
    return RatMatrix(out, N3)


def _jj_row(J: RatMatrix, x: int, y: int, z: int) -> dict[int, Fraction]:
    """Coefficients of F(x, J y, J z) in the components of F."""
    row: dict[int, Fraction] = {}
    for m, n in product(range(DIM), repeat=2):
        c = J[m, y] * J[n, z]
        if c:
            row[flat_index(x, m, n)] = row.get(flat_index(x, m, n), 0) + c
    return row


def symmetry_constraints(frame: HNFrame, alpha: int) -> RatMatrix:
    """Rows of F(x,y,z) + eps F(x,z,y) = 0 and F(x,y,z) + eps F(x,Jy,Jz) = 0."""
    eps = frame.epsilon(alpha)
    J = frame.j(alpha)
    rows = []
    for x, y, z in product(range(DIM), repeat=3):
        r = {flat_index(x, y, z): Fraction(1)}
        r[flat_index(x, z, y)] = r.get(flat_index(x, z, y), 0) + eps
        rows.append(r)
        r = {flat_index(x, y, z): Fraction(1)}
        for idx, c in _jj_row(J, x, y, z).items():
            r[idx] = r.get(idx, 0) + eps * c
        rows.append(r)
    return _map_matrix(rows)


def cyclic_sum_map(frame: HNFrame, alpha: int | None = None) -> RatMatrix:
    """S(x,y,z) = sum over cyclic (x,y,z) of F(x,y,z), or of F(x,y,J z) when ``alpha`` is given."""
    rows = []
    for x, y, z in product(range(DIM), repeat=3):
        row: dict[int, Fraction] = {}
        for p, q, r in ((x, y, z), (y, z, x), (z, x, y)):
            if alpha is None:
                row[flat_index(p, q, r)] = row.get(flat_index(p, q, r), 0) + 1
            else:
                J = frame.j(alpha)
                for m in range(DIM):
                    if J[m, r]:
                        row[flat_index(p, q, m)] = row.get(flat_index(p, q, m), 0) + J[m, r]
        rows.append(row)
    return _map_matrix(rows)


def trace_map(frame: HNFrame) -> RatMatrix:
    """theta(e_i) = g^{kl} F(e_k, e_l, e_i) as a 4 x 64 matrix."""
    rows = []
    for i in range(DIM):
        rows.append(
            {flat_index(k, l, i): frame.g_inv[k, l] for k, l in product(range(DIM), repeat=2) if frame.g_inv[k, l]}
        )
    return _map_matrix(rows)


def lee_image_tensor(frame: HNFrame, alpha: int, theta: Sequence) -> list:
    """The tensor built from a covector by the W4 (Hermitian) or W1 (Norden) formula."""
    J, g = frame.j(alpha), frame.g

    def gJ(i, j):  # g(e_i, J e_j)
        return sum((J[m, j] * g[i, m] for m in range(DIM)), Fraction(0))

    def thJ(k):  # theta(J e_k)
        return sum((J[m, k] * theta[m] for m in range(DIM)), 0)

    out = [0] * N3
    for x, y, z in product(range(DIM), repeat=3):
        if alpha == 1:
            v = (g[x, y] * theta[z] - gJ(x, y) * thJ(z) - g[x, z] * theta[y] + gJ(x, z) * thJ(y)) * Fraction(1, 2)
        else:
            v = (g[x, y] * theta[z] + gJ(x, y) * thJ(z) + g[x, z] * theta[y] + gJ(x, z) * thJ(y)) * Fraction(1, 4)
        out[flat_index(x, y, z)] = v
    return out


# admissible space and class subspaces -------------------------------------


@dataclass(frozen=True)
class AdmissibleSpace:
    kind: str
    alpha: int
    basis: tuple[tuple[Fraction, ...], ...]  # flat 64-vectors
    coords: RatMatrix  # left inverse: flat tensor -> admissible coordinates

    @property
    def dim(self) -> int:
        return len(self.basis)

    def basis_matrix(self) -> RatMatrix:
        return RatMatrix.from_columns(self.basis)

    def coordinates(self, flat: Sequence) -> list:
        """Coordinates of a flat tensor; raises if it is not in the space."""
        c = apply_matrix(self.coords, flat)
        back = apply_matrix(self.basis_matrix(), c)
        residual = [f - b for f, b in zip(flat, back)]
        if any(r != 0 for r in residual):
            raise NotAdmissibleError(f"tensor is not in the {self.kind} admissible space for J{self.alpha}")
        return c

    def contains(self, flat: Sequence) -> bool:
        try:
            self.coordinates(flat)
        except NotAdmissibleError:
            return False
        return True


def admissible_space(frame: HNFrame, alpha: int) -> AdmissibleSpace:
    basis = solve_nullspace(symmetry_constraints(frame, alpha))
    return AdmissibleSpace(kind_of(alpha), alpha, tuple(basis), left_inverse(basis))


@dataclass(frozen=True)
class ClassSubspaces:
    space: AdmissibleSpace
    names: tuple[str, ...]
    bases: dict  # name -> list of coordinate vectors in the admissible space
    projectors: dict  # name -> RatMatrix on admissible coordinates


def _matrix_in_coords(m: RatMatrix, space: AdmissibleSpace) -> RatMatrix:
    return m @ space.basis_matrix()


def class_subspaces(space: AdmissibleSpace, frame: HNFrame, alpha: int) -> ClassSubspaces:
    bases: dict[str, list] = {}
    image = []
    for l in range(DIM):
        theta = [Fraction(int(m == l)) for m in range(DIM)]
        image.append(tuple(space.coordinates(lee_image_tensor(frame, alpha, theta))))
    if rank(image) != DIM:
        raise DecompositionError("covector-to-tensor map is not injective")
    if space.kind == HERMITIAN:
        bases["W4"] = image
        bases["W2"] = solve_nullspace(_matrix_in_coords(cyclic_sum_map(frame), space))
    else:
        bases["W1"] = image
        w2 = RatMatrix(cyclic_sum_map(frame, alpha).entries + trace_map(frame).entries, N3)
        bases["W2"] = solve_nullspace(_matrix_in_coords(w2, space))
        bases["W3"] = solve_nullspace(_matrix_in_coords(cyclic_sum_map(frame), space))
    names = CLASSES[space.kind]
    everything = [v for n in names for v in bases[n]]
    if len(everything) != space.dim or rank(everything) != space.dim:
        dims = {n: len(bases[n]) for n in names}
        raise DecompositionError(
            f"{space.kind} classes {dims} do not decompose the {space.dim}-dimensional admissible space"
        )
    projectors = {
        n: projector_onto(bases[n], [v for m in names if m != n for v in bases[m]]) for n in names
    }
    return ClassSubspaces(space, names, bases, projectors)


@lru_cache(maxsize=None)
def subspaces_for(alpha: int, frame: HNFrame | None = None) -> ClassSubspaces:
    frame = frame or standard_frame()
    return class_subspaces(admissible_space(frame, alpha), frame, alpha)


# decomposition ------------------------------------------------------------


def class_label(classes: Sequence[str]) -> str:
    """``"K"`` for the zero tensor, otherwise e.g. ``"W1+W2"``."""
    return "+".join(classes) if classes else KAHLER


def condition_set(polys) -> list[Poly]:
    """Distinct nonzero polynomials up to scalar multiples, in a stable order.

    A set containing a nonzero constant collapses to ``[1]``.
    """
    seen: dict[Poly, None] = {}
    for p in polys:
        if isinstance(p, Poly) and not p.is_zero():
            seen.setdefault(p.primitive(), None)
        elif not isinstance(p, Poly) and p != 0:
            seen.setdefault(Poly.const(1), None)
    if any(p.is_constant() for p in seen):
        # a nonzero constant among the conditions: the component never vanishes
        return [next(p for p in seen if p.is_constant())]
    return sorted(seen, key=lambda p: (p.degree(), len(p.terms), str(p)))


@dataclass
class ClassReport:
    alpha: int
    kind: str
    coordinates: dict  # class -> list of Poly coordinates in the admissible basis
    components: dict  # class -> ComponentTensor
    conditions: dict  # class -> list[Poly] that must all vanish for a zero component
    minimal_class: str
    point: dict | None = field(default=None)

    def nonzero_classes(self) -> list[str]:
        return [] if self.minimal_class == KAHLER else self.minimal_class.split("+")


def _as_poly(v, params) -> Poly:
    return v if isinstance(v, Poly) else Poly.const(v, params)


def decompose(F: ComponentTensor, subspaces: ClassSubspaces, at: Mapping[str, object] | None = None) -> ClassReport:
    """Split F into class components; with ``at`` the minimal class is taken at that point."""
    space = subspaces.space
    flat = F.flat()
    coords = space.coordinates(flat)
    basis = space.basis_matrix()
    coordinates, components, conditions = {}, {}, {}
    nonzero = []
    for name in subspaces.names:
        c = [_as_poly(v, F.params) for v in apply_matrix(subspaces.projectors[name], coords)]
        coordinates[name] = c
        full = apply_matrix(basis, c)
        arr = ComponentTensor.zeros(3, F.params).array
        for (i, j, k) in product(range(DIM), repeat=3):
            arr[i, j, k] = _as_poly(full[flat_index(i, j, k)], F.params)
        components[name] = ComponentTensor(arr, F.params)
        conditions[name] = condition_set(c)
        if at is None:
            vanishes = all(p.is_zero() for p in c)
        else:
            vanishes = all(p.evaluate(at) == 0 for p in c)
        if not vanishes:
            nonzero.append(name)
    return ClassReport(
        alpha=space.alpha,
        kind=space.kind,
        coordinates=coordinates,
        components=components,
        conditions=conditions,
        minimal_class=class_label(nonzero),
        point=dict(at) if at is not None else None,
    )


def classify_algebra(alg: LieAlgebraSpec, frame: HNFrame | None = None, at=None) -> dict[int, ClassReport]:
    frame = frame or standard_frame()
    conn = levi_civita(alg, frame)
    values = alg.check_point(at) if at is not None else None
    return {
        a: decompose(fundamental_tensor(conn, frame, a), subspaces_for(a, frame), values) for a in ALPHAS
    }


def minimal_class_direct(F_at_point: Sequence, frame: HNFrame, alpha: int) -> str:
    """Minimal class of a numeric tensor by solving membership in each sum of classes.

    Independent of the projectors: a sum of classes contains F exactly when
    the linear system ``F = sum of basis vectors`` of those classes is solvable.
    """
    subs = subspaces_for(alpha, frame)
    space = subs.space
    coords = space.coordinates([Fraction(v) for v in F_at_point])
    target = tuple(Fraction(v) for v in coords)
    best = None
    names = subs.names
    for mask in range(1 << len(names)):
        chosen = [n for k, n in enumerate(names) if mask >> k & 1]
        vecs = [tuple(v) for n in chosen for v in subs.bases[n]]
        if not vecs:
            ok = all(t == 0 for t in target)
        else:
            ok = rank(vecs + [target]) == rank(vecs)
        if ok and (best is None or len(chosen) < len(best)):
            best = chosen
    return class_label(best)


def classification_table(alg: LieAlgebraSpec, frame: HNFrame | None = None) -> list[Stratum]:
    """Strata of the parameter domain with the minimal class for each J_alpha.

    The loci are the vanishing sets of every class component for every alpha;
    each stratum is one of their intersections minus its proper sub-intersections.
    """
    reports = classify_algebra(alg, frame)
    loci = [
        r.conditions[name]
        for r in reports.values()
        for name in CLASSES[r.kind]
        if r.conditions[name]
    ]
    cells = stratify(alg.params, loci, alg.constraints)
    strata = []
    for cell in cells:
        classes = {}
        for a, r in reports.items():
            nonzero = [n for n in CLASSES[r.kind] if not cell.lies_in(r.conditions[n])]
            classes[a] = class_label(nonzero)
        strata.append(Stratum(cell, maximal_subcells(cell, cells), classes))
    return strata
