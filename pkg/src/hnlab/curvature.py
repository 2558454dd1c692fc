"""Curvature tensor, Ricci-type tensors, scalar curvatures and basic sectional curvatures."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

import numpy as np

from .exactalg import Poly, RatMatrix
from .hnstruct import (
    ALPHAS,
    BASIC_PLANES,
    DIM,
    HOLOMORPHIC,
    TOTALLY_REAL,
    FrameError,
    HNFrame,
    Plane,
    gram_determinant,
    plane_type,
)
from .liealg import Constraint, LieAlgebraSpec
from .tensorcalc import ComponentTensor, Connection, _rat_array, levi_civita


@dataclass(frozen=True)
class CurvatureBundle:
    R: ComponentTensor
    rho: ComponentTensor
    rho_star: tuple[ComponentTensor, ComponentTensor, ComponentTensor]
    tau: Poly
    tau_star: tuple[Poly, Poly, Poly]
    tau_star_star: tuple[Poly, Poly, Poly]


def riemann(conn: Connection, alg: LieAlgebraSpec, frame: HNFrame) -> ComponentTensor:
    """R(e_i, e_j, e_k, e_l) = g(R(e_i, e_j) e_k, e_l) with R = [nabla, nabla] - nabla_[,]."""
    A = [conn.matrix(i) for i in range(DIM)]
    g = _rat_array(frame.g)
    out = np.empty((DIM,) * 4, dtype=object)
    for i in range(DIM):
        for j in range(DIM):
            Rij = A[i].dot(A[j]) - A[j].dot(A[i])
            for m, c in enumerate(alg.structure[i][j]):
                if not c.is_zero():
                    Rij = Rij - A[m] * c
            # Rij[m, k] is the e_m component of R(e_i, e_j) e_k
            out[i, j] = np.einsum("mk,ml->kl", Rij, g)
    return ComponentTensor(out, conn.params)


def ricci_and_scalars(R: ComponentTensor, frame: HNFrame) -> CurvatureBundle:
    g_inv = _rat_array(frame.g_inv)
    rho = np.einsum("ij,iyzj->yz", g_inv, R.array)
    tau = np.einsum("ij,ij->", g_inv, rho)
    rho_stars, tau_stars, tau_star_stars = [], [], []
    for alpha in ALPHAS:
        J = _rat_array(frame.j(alpha))
        # R(e_i, y, z, J e_j) = sum_m J[m, j] R_{iyzm}
        RJ = np.einsum("iyzm,mj->iyzj", R.array, J)
        rs = np.einsum("ij,iyzj->yz", g_inv, RJ)
        rho_stars.append(ComponentTensor(rs, R.params))
        tau_stars.append(np.einsum("ij,ij->", g_inv, rs))
        # rho*(e_i, J e_j) = sum_m J[m, j] rho*_{im}
        tau_star_stars.append(np.einsum("ij,im,mj->", g_inv, rs, J))
    as_poly = lambda v: v if isinstance(v, Poly) else Poly.const(v, R.params)  # noqa: E731
    return CurvatureBundle(
        R=R,
        rho=ComponentTensor(rho, R.params),
        rho_star=tuple(rho_stars),
        tau=as_poly(tau),
        tau_star=tuple(as_poly(t) for t in tau_stars),
        tau_star_star=tuple(as_poly(t) for t in tau_star_stars),
    )


def sectional(R: ComponentTensor, frame: HNFrame, plane: Plane) -> Poly:
    """k(span{e_i, e_j}) = R(e_i, e_j, e_j, e_i) / (g_ii g_jj - g_ij^2)."""
    det = gram_determinant(frame, plane)
    if det == 0:
        raise FrameError(f"plane e{plane.i}e{plane.j} is degenerate")
    i, j = plane.i - 1, plane.j - 1
    return R[i, j, j, i] / Fraction(det)


def sectional_table(R: ComponentTensor, frame: HNFrame) -> dict[Plane, Poly]:
    return {p: sectional(R, frame, p) for p in BASIC_PLANES}


# sign reasoning -----------------------------------------------------------


def sign(q: Fraction) -> int:
    return (q > 0) - (q < 0)


def is_positive_definite(p: Poly) -> bool:
    """Sufficient test for ``p > 0`` on all of R^n.

    Either every monomial is an even power with positive coefficient and the
    constant term is positive, or ``p`` is a quadratic whose augmented Gram
    matrix is positive definite (Sylvester's criterion, exact).
    """
    if p.is_zero():
        return False
    const = p.terms.get((0,) * len(p.variables), Fraction(0))
    if const > 0 and all(c > 0 and all(e % 2 == 0 for e in exps) for exps, c in p.terms.items()):
        return True
    if p.degree() == 2:
        return all(m > 0 for m in _leading_minors(quadratic_gram(p)))
    return False


def quadratic_gram(p: Poly) -> RatMatrix:
    """Symmetric M with p(x) = [x, 1]^T M [x, 1] for a polynomial of degree <= 2."""
    n = len(p.variables)
    M = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
    for exps, c in p.terms.items():
        idx = [i for i, e in enumerate(exps) for _ in range(e)]
        if len(idx) == 0:
            M[n][n] += c
        elif len(idx) == 1:
            M[idx[0]][n] += c / 2
            M[n][idx[0]] += c / 2
        elif len(idx) == 2:
            i, j = idx
            if i == j:
                M[i][i] += c
            else:
                M[i][j] += c / 2
                M[j][i] += c / 2
        else:
            raise ValueError(f"{p} is not quadratic")
    return RatMatrix(M, n + 1)


def _leading_minors(M: RatMatrix) -> list[Fraction]:
    out = []
    for k in range(1, M.rows + 1):
        sub = RatMatrix([row[:k] for row in M.entries[:k]], k)
        out.append(_det(sub))
    return out


def _det(M: RatMatrix) -> Fraction:
    m = [list(r) for r in M.entries]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return det


def quadratic_minimum(p: Poly) -> tuple[dict[str, Fraction], Fraction]:
    """Exact minimizer and minimum of a quadratic with positive definite Hessian."""
    n = len(p.variables)
    M = quadratic_gram(p)
    Q = RatMatrix([row[:n] for row in M.entries[:n]], n)
    lin = [M[i, n] for i in range(n)]
    x = Q.inverse() @ [-v for v in lin]
    point = dict(zip(p.variables, x))
    return point, p.evaluate(point)


def nonvanishing_on_domain(p: Poly, constraints: tuple[Constraint, ...] = ()) -> bool:
    """Sufficient test that ``p`` has no zero satisfying the constraints.

    Accepts nonzero constants, positive definite polynomials, and monomials
    in parameters that the constraints force to be nonzero.
    """
    if p.is_zero():
        return False
    if p.is_constant() or is_positive_definite(p):
        return True
    if len(p.terms) == 1:
        nonzero = {c.poly.used_variables()[0] for c in constraints if c.kind == "nonzero" and len(c.poly.terms) == 1 and c.poly.degree() == 1}
        return set(p.used_variables()) <= nonzero
    return False


def common_zero_excluded(polys: list[Poly], constraints: tuple[Constraint, ...] = ()) -> bool:
    """True when the polynomials have no common zero inside the domain."""
    return any(nonvanishing_on_domain(p, constraints) for p in polys)


# reports ------------------------------------------------------------------


def curvature_data(alg: LieAlgebraSpec, frame: HNFrame) -> tuple[Connection, CurvatureBundle, dict[Plane, Poly]]:
    conn = levi_civita(alg, frame)
    R = riemann(conn, alg, frame)
    return conn, ricci_and_scalars(R, frame), sectional_table(R, frame)


def _sign_word(values: list[Fraction]) -> str:
    signs = {sign(v) for v in values}
    if signs == {1}:
        return "positive"
    if signs == {-1}:
        return "negative"
    if signs == {0}:
        return "zero"
    return "mixed"


def _scalar_entry(p: Poly, constraints, at: Mapping | None) -> dict:
    entry: dict = {"value": str(p)}
    if at is not None:
        v = p.evaluate(at)
        entry.update(value=str(v), sign=sign(v))
    else:
        entry["identically_zero"] = p.is_zero()
        entry["vanishing_condition"] = [] if p.is_zero() else [str(p.primitive())]
        entry["never_zero_on_domain"] = nonvanishing_on_domain(p, constraints)
        entry["positive_everywhere"] = is_positive_definite(p)
    return entry


def curvature_report(alg: LieAlgebraSpec, frame: HNFrame, at: Mapping[str, object] | None = None) -> dict:
    """Flatness, scalar curvatures and sectional signs, at a point or symbolically."""
    values = alg.check_point(at) if at is not None else None
    _, bundle, table = curvature_data(alg, frame)
    components = [p for p in bundle.R.flat() if not p.is_zero()]
    if values is not None:
        flat = all(p.evaluate(values) == 0 for p in components)
        flatness = {"flat": flat}
    else:
        flatness = {
            "identically_flat": not components,
            "non_flat_on_domain": common_zero_excluded(components, alg.constraints),
        }
    report = {
        "algebra": alg.name,
        "point": {k: str(v) for k, v in values.items()} if values is not None else None,
        "flatness": flatness,
        "tau": _scalar_entry(bundle.tau, alg.constraints, values),
        "tau_star": {str(a): _scalar_entry(bundle.tau_star[a - 1], alg.constraints, values) for a in ALPHAS},
        "tau_star_star": {
            str(a): _scalar_entry(bundle.tau_star_star[a - 1], alg.constraints, values) for a in ALPHAS
        },
        "sectional": {},
        "plane_classes": {},
    }
    for plane, k in table.items():
        types = {str(a): plane_type(frame, plane, a) for a in ALPHAS}
        entry = {"k": str(k), "types": types}
        if values is not None:
            kv = k.evaluate(values)
            entry.update(k=str(kv), sign=sign(kv))
        report["sectional"][str(plane)] = entry
    for a in ALPHAS:
        for kind in (HOLOMORPHIC, TOTALLY_REAL):
            planes = [p for p in BASIC_PLANES if plane_type(frame, p, a) == kind]
            entry = {"planes": [str(p) for p in planes], "k": [str(table[p]) for p in planes]}
            if values is not None:
                entry["sign"] = _sign_word([table[p].evaluate(values) for p in planes])
            report["plane_classes"][f"{kind}_J{a}"] = entry
    return report
