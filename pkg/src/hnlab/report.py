"""Analysis reports: the full set of computed quantities as a JSON-ready dict, and its text rendering."""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .classify import CLASSES, classification_table, classify_algebra
from .curvature import curvature_data, curvature_report, sign
from .hnstruct import ALPHAS, DIM, HNFrame, standard_frame
from .liealg import BUILTIN, LieAlgebraSpec, format_vector
from .reference import discrepancies
from .tensorcalc import (
    F_SYMMETRY,
    N_SYMMETRY,
    R_SYMMETRY,
    f_moves,
    fold,
    fundamental_tensor,
    lee_form,
    n_moves,
    nijenhuis,
    r_moves,
)

SCHEMA_KEYS = (
    "algebra",
    "params",
    "connection",
    "F",
    "theta",
    "nijenhuis",
    "riemann",
    "ricci",
    "scalars",
    "sectional",
    "classes",
    "discrepancies",
)


def _label(labels) -> str:
    return "".join(map(str, labels))


def _components(pairs) -> dict[str, str]:
    return {_label(k): str(v) for k, v in pairs}


def is_reference_algebra(alg: LieAlgebraSpec) -> bool:
    """A catalog algebra with published values to compare against."""
    return alg.name in BUILTIN and BUILTIN[alg.name]().structure == alg.structure


def build_report(alg: LieAlgebraSpec, at: Mapping[str, object] | None = None, frame: HNFrame | None = None) -> dict:
    """Every computed quantity, symbolically or at a point of the domain.

    In point mode the algebra is specialized first, so all component strings
    are rationals; domain constraints are enforced (``DomainError``).
    """
    frame = frame or standard_frame()
    values = alg.check_point(at) if at is not None else None
    work = alg.at(values) if values is not None else alg
    conn, bundle, table = curvature_data(work, frame)

    connection = {}
    for i in range(DIM):
        for j in range(DIM):
            v = conn.gamma[i, j]
            if any(not p.is_zero() for p in v):
                connection[f"e{i + 1},e{j + 1}"] = format_vector(v)

    F, theta, N = {}, {}, {}
    for a in ALPHAS:
        Fa = fundamental_tensor(conn, frame, a)
        F[str(a)] = {"symmetry": F_SYMMETRY, "components": _components(fold(Fa, f_moves(frame, a)))}
        theta[str(a)] = _components(lee_form(Fa, frame).nonzero())
        Na = nijenhuis(conn, frame, a)
        N[str(a)] = {"symmetry": N_SYMMETRY, "components": _components(fold(Na, n_moves(frame, a)))}

    rho = {k: v for k, v in _components(bundle.rho.nonzero()).items() if k[0] <= k[1]}
    ricci = {
        "rho": {"symmetry": "rho(x,y) = rho(y,x)", "components": rho},
        "rho_star": {str(a): _components(bundle.rho_star[a - 1].nonzero()) for a in ALPHAS},
    }

    curv = curvature_report(alg, frame, values)
    scalars = {
        "flatness": curv["flatness"],
        "tau": curv["tau"],
        "tau_star": curv["tau_star"],
        "tau_star_star": curv["tau_star_star"],
    }
    sectional = {"planes": curv["sectional"], "by_type": curv["plane_classes"]}

    classes: dict = {}
    for a, r in classify_algebra(work, frame).items():
        entry = {"kind": r.kind, "minimal_class": r.minimal_class}
        if values is None:
            entry["vanishing_conditions"] = {n: [str(p) for p in r.conditions[n]] for n in CLASSES[r.kind]}
        entry["components"] = {n: _components(fold(r.components[n], f_moves(frame, a))) for n in CLASSES[r.kind]}
        classes[str(a)] = entry
    if values is None and len(alg.params) <= 2:
        classes["table"] = [
            {"condition": s.predicate, "classes": {str(a): s.classes[a] for a in ALPHAS}}
            for s in classification_table(alg, frame)
        ]

    return {
        "algebra": {
            "name": alg.name,
            "brackets": alg.bracket_strings(),
            "constraints": [str(c) for c in alg.constraints],
        },
        "params": {
            "variables": list(alg.params),
            "mode": "symbolic" if values is None else "point",
            "values": None if values is None else {k: str(v) for k, v in values.items()},
        },
        "connection": connection,
        "F": F,
        "theta": theta,
        "nijenhuis": N,
        "riemann": {"symmetry": R_SYMMETRY, "components": _components(fold(bundle.R, r_moves))},
        "ricci": ricci,
        "scalars": scalars,
        "sectional": sectional,
        "classes": classes,
        "discrepancies": discrepancies(alg.name, values) if is_reference_algebra(alg) else [],
    }


# sweeps -----------------------------------------------------------------------

SIGN_CHAR = {1: "+", 0: "0", -1: "-"}


def sweep_point(alg: LieAlgebraSpec, values: Mapping[str, Fraction]) -> dict:
    """Signs of the scalar and basic sectional curvatures and minimal classes at one point."""
    frame = standard_frame()
    work = alg.at(values)
    _, bundle, table = curvature_data(work, frame)
    reports = classify_algebra(work, frame)
    const = lambda p: p.constant_value()  # noqa: E731
    return {
        "point": {k: str(v) for k, v in values.items()},
        "tau": sign(const(bundle.tau)),
        "tau_star_star": {str(a): sign(const(bundle.tau_star_star[a - 1])) for a in ALPHAS},
        "sectional": {str(p): sign(const(k)) for p, k in table.items()},
        "classes": {str(a): reports[a].minimal_class for a in ALPHAS},
    }


# text rendering ----------------------------------------------------------------


def _block(title: str, items: Mapping[str, str], prefix: str = "", note: str | None = None) -> list[str]:
    lines = [title]
    if not items:
        lines.append("  (all zero)")
    for k, v in items.items():
        lines.append(f"  {prefix}{k} = {v}")
    if note:
        lines.append(f"  the rest follow from {note}")
    return lines


def render_text(report: dict) -> str:
    alg = report["algebra"]
    params = report["params"]
    out = [f"algebra {alg['name']}"]
    out += [f"  {b}" for b in alg["brackets"]]
    if alg["constraints"]:
        out.append("  domain: " + ", ".join(alg["constraints"]))
    if params["mode"] == "point":
        out.append("  at " + ", ".join(f"{k} = {v}" for k, v in params["values"].items()))
    out.append("")
    out += _block("connection (nabla_x y)", report["connection"])
    for a in ALPHAS:
        s = str(a)
        out.append("")
        out += _block(f"F{a}", report["F"][s]["components"], note=report["F"][s]["symmetry"])
        out += _block(f"theta{a}", report["theta"][s])
        out += _block(f"N{a}", report["nijenhuis"][s]["components"], note=report["nijenhuis"][s]["symmetry"])
    out.append("")
    out += _block("R", report["riemann"]["components"], note=report["riemann"]["symmetry"])
    out += _block("rho", report["ricci"]["rho"]["components"], note=report["ricci"]["rho"]["symmetry"])
    for a in ALPHAS:
        out += _block(f"rho*{a}", report["ricci"]["rho_star"][str(a)])
    sc = report["scalars"]
    out.append("")
    out.append("scalar curvatures")
    out.append(f"  tau = {sc['tau']['value']}")
    for a in ALPHAS:
        out.append(f"  tau*{a} = {sc['tau_star'][str(a)]['value']}")
    for a in ALPHAS:
        out.append(f"  tau**{a} = {sc['tau_star_star'][str(a)]['value']}")
    flat = sc["flatness"]
    if "flat" in flat:
        out.append("  flat" if flat["flat"] else "  not flat")
    else:
        out.append("  not flat anywhere on the domain" if flat["non_flat_on_domain"] else "  flatness undecided")
    out.append("")
    out.append("basic sectional curvatures")
    for plane, e in report["sectional"]["planes"].items():
        kinds = ", ".join(f"J{a} {t}" for a, t in e["types"].items())
        out.append(f"  k{plane} = {e['k']}    ({kinds})")
    for key, e in report["sectional"]["by_type"].items():
        if "sign" in e:
            out.append(f"  {key.replace('_', ' ')}: {e['sign']}")
    out.append("")
    out.append("classes")
    for a in ALPHAS:
        e = report["classes"][str(a)]
        out.append(f"  J{a} ({e['kind']}): {e['minimal_class']}")
        for n, conds in e.get("vanishing_conditions", {}).items():
            text = "never" if conds == ["1"] else "identically" if not conds else ", ".join(f"{c} = 0" for c in conds)
            out.append(f"    {n} component vanishes: {text}")
    if "table" in report["classes"]:
        out.append("")
        out.append("classification by parameter region (J1 | J2 | J3)")
        for row in report["classes"]["table"]:
            cls = " | ".join(row["classes"][str(a)] for a in ALPHAS)
            out.append(f"  {row['condition']}: {cls}")
    if report["discrepancies"]:
        out.append("")
        out.append("differences from published values")
        for d in report["discrepancies"]:
            out.append(f"  {d['check']}: published {d['printed']}, computed {d['computed']}")
    return "\n".join(out) + "\n"

