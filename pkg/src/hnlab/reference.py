"""Published component values and theorem statements for g4_5 and g4_6, with checks.

Every displayed value is pinned as printed. ``run_checks`` recomputes each one
and returns one :class:`Check` per value or claim; mismatches carry both sides
plus, where available, the identity that ties the printed value to other
printed values.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable

from .classify import (
    classification_table,
    classify_algebra,
    minimal_class_direct,
    subspaces_for,
)
from .curvature import (
    common_zero_excluded,
    curvature_data,
    is_positive_definite,
    quadratic_minimum,
    sectional,
)
from .exactalg import Poly, parse_poly, rank
from .hnstruct import ALPHAS, BASIC_PLANES, DIM, HOLOMORPHIC, TOTALLY_REAL, HNFrame, planes_of_type, standard_frame
from .liealg import LieAlgebraSpec, catalog_get
from .strata import Cell
from .tensorcalc import (
    ComponentTensor,
    complete_orbits,
    f_moves,
    fundamental_tensor,
    lee_form,
    levi_civita,
    n_moves,
    nijenhuis,
    nijenhuis_brackets,
    r_moves,
)

AB = ("a", "b")


def P(text: str) -> Poly:
    return parse_poly(text, AB)


# pinned values: (label, indices (1-based), printed value) ------------------

G45_F = {
    1: [((1, 1, 3), "1"), ((2, 1, 4), "-a")],
    2: [((1, 1, 2), "1"), ((2, 2, 2), "2*a"), ((3, 1, 4), "b")],
    3: [((1, 1, 1), "-2"), ((2, 1, 2), "-a"), ((3, 1, 3), "b")],
}
G45_THETA = {1: [((3,), "a + 1")], 2: [((2,), "2*a + b + 1")], 3: [((1,), "-(a + b + 2)")]}
G45_N = {
    1: [((1, 3, 2), "1 - a"), ((2, 3, 1), "1 - a")],
    2: [((1, 2, 3), "1 - b"), ((2, 3, 1), "1 - b")],
    3: [((1, 2, 3), "a - b"), ((1, 3, 2), "a - b")],
}
G45_R = [
    ((1, 2, 2, 1), "a"),
    ((1, 3, 1, 3), "b"),
    ((1, 4, 1, 4), "1"),
    ((2, 3, 2, 3), "a*b"),
    ((2, 4, 2, 4), "a^2"),
    ((3, 4, 4, 3), "b^2"),
]
G45_RHO = [((1, 1), "a + b + 1"), ((2, 2), "a*(a + b + 1)"), ((3, 3), "-b*(a + b + 1)"), ((4, 4), "-(a^2 + b^2 + 1)")]
G45_RHO_STAR = {1: [((1, 2), "a"), ((3, 4), "b^2")], 2: [((1, 3), "b"), ((2, 4), "a^2")], 3: [((1, 4), "-1"), ((2, 3), "a*b")]}
G45_TAU = "2*(a^2 + b^2 + a*b + a + b + 1)"
G45_TAU_STAR = {1: "0", 2: "0", 3: "0"}
G45_TAU_STAR_STAR = {1: "2*(a + b^2)", 2: "2*(a^2 + b)", 3: "2*(a*b + 1)"}
G45_K = {(1, 2): "a", (1, 3): "b", (1, 4): "1", (2, 3): "a*b", (2, 4): "a^2", (3, 4): "b^2"}

G46_F = {
    1: [((3, 2, 3), "1"), ((2, 2, 3), "b"), ((1, 1, 3), "a")],
    2: [((2, 2, 3), "1"), ((3, 2, 2), "2"), ((3, 1, 4), "b"), ((2, 2, 2), "2*b"), ((1, 1, 2), "a")],
    3: [((2, 1, 3), "-1"), ((3, 3, 4), "1"), ((2, 3, 4), "b"), ((3, 1, 3), "b"), ((1, 1, 1), "-2*a")],
}
G46_THETA = {
    1: [((2,), "1"), ((3,), "a + b")],
    2: [((3,), "1"), ((2,), "a + 3*b")],
    3: [((4,), "-2"), ((1,), "-2*(a + b)")],
}
G46_N = {
    1: [((1, 3, 2), "a - b"), ((2, 3, 1), "a - b"), ((1, 3, 3), "-1"), ((2, 3, 4), "-1")],
    2: [((1, 2, 3), "a - b"), ((2, 3, 1), "a - b"), ((1, 2, 2), "1"), ((1, 4, 4), "1")],
    3: [],
}
G46_R = [
    ((1, 2, 2, 1), "a*b"),
    ((1, 3, 1, 3), "a*b"),
    ((1, 2, 3, 1), "a"),
    ((1, 4, 1, 4), "a^2"),
    ((2, 3, 2, 3), "b^2 + 1"),
    ((2, 4, 2, 4), "b^2 - 1"),
    ((2, 4, 3, 4), "2*b"),
    ((3, 4, 4, 3), "2 - b^2"),
]
G46_RHO = [
    ((1, 1), "a*(a + 2*b)"),
    ((2, 2), "b*(a + 2*b)"),
    ((3, 3), "-b*(a + 2*b)"),
    ((2, 3), "a + 2*b"),
    ((4, 4), "-(a^2 + 2*b^2 - 2)"),
]
G46_RHO_STAR = {
    1: [((1, 3), "a"), ((2, 4), "-2*b"), ((1, 2), "a*b"), ((3, 4), "b^2 - 1")],
    2: [((1, 2), "-a"), ((3, 4), "2*b"), ((1, 3), "a*b"), ((2, 4), "b^2 - 1")],
    3: [((1, 1), "2*a"), ((4, 4), "-4*b"), ((2, 3), "b^2 + 1"), ((1, 4), "-a^2")],
}
G46_TAU = "2*(a^2 + 3*b^2 + 2*a*b - 1)"
G46_TAU_STAR = {1: "0", 2: "0", 3: "2*(a + 2*b)"}
G46_TAU_STAR_STAR = {1: "2*(b^2 + a*b - 1)", 2: "2*(b^2 + a*b - 1)", 3: "2*(a^2 + b^2 + 1)"}
G46_K = {(1, 2): "a*b", (1, 3): "a*b", (1, 4): "a^2", (2, 3): "b^2 + 1", (2, 4): "b^2 - 1", (3, 4): "b^2 - 1"}

# Class table for g4_5: (equations, exclusions, (J1, J2, J3)).
G45_TABLE = [
    (["a + 1", "b - 1"], [], ("W2", "W2", "W1+W2+W3")),
    (["a + 1", "b + 1"], [], ("W2", "W1+W2+W3", "W2")),
    (["a + 1"], ["b - 1", "b + 1"], ("W2", "W1+W2+W3", "W1+W2+W3")),
    (["a - 1", "b - 1"], [], ("W4", "W1", "W1+W2")),
    (["a - 1", "b + 3"], [], ("W4", "W2+W3", "W2+W3")),
    (["a - 1"], ["b - 1", "b + 3"], ("W4", "W1+W2+W3", "W1+W2+W3")),
    (["b - 1"], ["a - 1", "a + 1"], ("W2+W4", "W1+W2", "W1+W2+W3")),
    (["3*a + 1", "3*b + 1"], [], ("W2+W4", "W2+W3", "W1+W2")),
    (["2*a + b + 1"], ["b + 3", "3*b + 1"], ("W2+W4", "W2+W3", "W1+W2+W3")),
    (["a - b"], ["b - 1", "b + 1", "3*b + 1"], ("W2+W4", "W1+W2+W3", "W1+W2")),
    (["a + b + 2"], ["b + 1", "b + 3"], ("W2+W4", "W1+W2+W3", "W2+W3")),
    ([], [], ("W2+W4", "W1+W2+W3", "W1+W2+W3")),
]
G46_CLASSES = ("W2+W4", "W1+W2+W3", "W1+W2")
G46_EXCLUDED = {1: ["W2", "W4"], 2: ["W1", "W2", "W3", "W1+W2", "W1+W3", "W2+W3"], 3: ["W1", "W2"]}


# checks -------------------------------------------------------------------


@dataclass
class Check:
    group: str
    name: str
    expected: str
    computed: str
    ok: bool
    note: str = ""
    raw: tuple = field(default=(None, None), repr=False, compare=False)

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        text = f"[{status}] {self.group}: {self.name}"
        if not self.ok:
            text += f"  printed={self.expected}  computed={self.computed}"
            if self.note:
                text += f"  ({self.note})"
        return text


@dataclass
class Results:
    checks: list[Check] = field(default_factory=list)

    def add(self, group, name, expected, computed, ok=None, note="") -> Check:
        if ok is None:
            ok = expected == computed
        c = Check(group, name, str(expected), str(computed), bool(ok), note, (expected, computed))
        self.checks.append(c)
        return c

    @property
    def passed(self) -> int:
        return sum(c.ok for c in self.checks)

    @property
    def failed(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]


def _idx(labels) -> str:
    return "".join(map(str, labels))


@dataclass
class Computed:
    alg: LieAlgebraSpec
    frame: HNFrame
    F: dict
    theta: dict
    N: dict
    bundle: object
    k: dict

    @classmethod
    def of(cls, alg: LieAlgebraSpec, frame: HNFrame | None = None) -> Computed:
        frame = frame or standard_frame()
        conn, bundle, k = curvature_data(alg, frame)
        F = {a: fundamental_tensor(conn, frame, a) for a in ALPHAS}
        return cls(
            alg,
            frame,
            F,
            {a: lee_form(F[a], frame) for a in ALPHAS},
            {a: nijenhuis(conn, frame, a) for a in ALPHAS},
            bundle,
            {(p.i, p.j): v for p, v in k.items()},
        )


# orbit completion of printed components under the tensor symmetries ----------


def _orbit_check(res: Results, group: str, name: str, printed: list, tensor: ComponentTensor, moves) -> None:
    seed = {tuple(i - 1 for i in labels): P(v) for labels, v in printed}
    table, consistent = complete_orbits(seed, moves)
    mismatched = []
    for idx in tensor.indices():
        want = table.get(idx, Poly.zero(AB))
        if tensor[idx] != want:
            mismatched.append(_idx(i + 1 for i in idx))
    ok = consistent and not mismatched
    res.add(
        group,
        name,
        "listed components generate the tensor",
        "yes" if ok else f"differs at {', '.join(mismatched[:8])}",
        ok,
    )


# witness grids --------------------------------------------------------------

GRID = [Fraction(x) for x in ("-3", "-2", "-1", "-1/2", "-1/10", "0", "1/10", "1/2", "9/10", "1", "11/10", "2", "3")]


def domain_points(alg: LieAlgebraSpec):
    for a, b in product(GRID, repeat=2):
        pt = {"a": a, "b": b}
        if all(c.holds(pt) for c in alg.constraints):
            yield pt


def _signs_at(polys, pt) -> str:
    vals = [p.evaluate(pt) for p in polys]
    if all(v > 0 for v in vals):
        return "positive"
    if all(v < 0 for v in vals):
        return "negative"
    return "other"


def _region_check(res, group, name, alg, polys, claims: dict[str, Callable]) -> None:
    """Each claimed sign holds exactly on its region, at every grid point of the domain.

    ``claims`` maps a sign word ("positive" or "negative") to the region where
    the printed statement says it occurs; outside that region the sign word
    must differ.
    """
    bad = []
    count = 0
    for pt in domain_points(alg):
        count += 1
        word = _signs_at(polys, pt)
        for claimed, region in claims.items():
            if region(pt["a"], pt["b"]) != (word == claimed):
                bad.append(f"({pt['a']},{pt['b']}): {word}")
    res.add(group, name, f"sign region claim at {count} witness points", "holds" if not bad else "; ".join(bad[:4]), not bad)


# the suites -------------------------------------------------------------------


def _component_checks(res: Results, group: str, tensor: ComponentTensor, printed, label: str, notes=None) -> None:
    for labels, value in printed:
        name = f"{label}_{_idx(labels)}"
        res.add(group, name, P(value), tensor.at(*labels), note=(notes or {}).get(name, ""))


def _notes(c: Computed) -> dict[str, str]:
    """Printed values contradicted by other printed values, keyed by check name."""
    notes = {}
    for a in ALPHAS:
        Nb = nijenhuis_brackets(c.alg, c.frame, a)
        for idx in Nb.indices():
            labels = _idx(i + 1 for i in idx)
            notes[f"N{a}_{labels}"] = f"bracket formula gives N{a}_{labels} = {Nb[idx]}"
    for (i, j), ktext in (G46_K.items() if c.alg.name == "g4_6" else G45_K.items()):
        # k_ij = R_ijji / (g_ii g_jj); with g = diag(1,1,-1,-1) the denominator is +-1
        denom = c.frame.g[i - 1, i - 1] * c.frame.g[j - 1, j - 1]
        notes[f"R_{i}{j}{j}{i}"] = f"printed k_{i}{j} = {P(ktext)} implies R_{i}{j}{j}{i} = {P(ktext) * denom}"
    return notes


def check_g45(res: Results) -> None:
    alg = catalog_get("g4_5")
    c = Computed.of(alg)
    fr = c.frame
    grp = "g4_5"
    notes = _notes(c)
    for a in ALPHAS:
        _component_checks(res, grp, c.F[a], G45_F[a], f"F{a}")
        _orbit_check(res, grp, f"F{a} nonzero components", G45_F[a], c.F[a], f_moves(fr, a))
    for a in ALPHAS:
        _component_checks(res, grp, c.theta[a], G45_THETA[a], f"theta{a}")
        seed = {labels: P(v) for labels, v in G45_THETA[a]}
        others = [lab for lab, v in c.theta[a].nonzero() if lab not in seed]
        res.add(grp, f"theta{a} has no other nonzero component", "[]", str(others))
    for a in ALPHAS:
        _component_checks(res, grp, c.N[a], G45_N[a], f"N{a}", notes)
        _orbit_check(res, grp, f"N{a} nonzero components", G45_N[a], c.N[a], n_moves(fr, a))
    for labels, v in G45_R:
        k = f"R_{_idx(labels)}"
        res.add(grp, k, P(v), c.bundle.R.at(*labels), note=notes.get(k, ""))
    _orbit_check(res, grp, "R nonzero components", G45_R, c.bundle.R, r_moves)
    _scalar_suite(res, grp, c, G45_RHO, G45_RHO_STAR, G45_TAU, G45_TAU_STAR, G45_TAU_STAR_STAR, G45_K)
    _g45_table(res, alg)
    _g45_theorem(res, alg, c)


def _scalar_suite(res, grp, c: Computed, rho, rho_star, tau, tau_star, tau_star_star, k) -> None:
    B = c.bundle
    for labels, v in rho:
        res.add(grp, f"rho_{_idx(labels)}", P(v), B.rho.at(*labels))
    seed = {lab for lab, _ in rho} | {(j, i) for (i, j), _ in rho}
    extra = [lab for lab, _ in B.rho.nonzero() if lab not in seed]
    res.add(grp, "rho has no other nonzero component", "[]", str(extra))
    for a in ALPHAS:
        for labels, v in rho_star[a]:
            res.add(grp, f"rho*{a}_{_idx(labels)}", P(v), B.rho_star[a - 1].at(*labels))
    res.add(grp, "tau", P(tau), B.tau)
    for a in ALPHAS:
        res.add(grp, f"tau*{a}", P(tau_star[a]), B.tau_star[a - 1])
    for a in ALPHAS:
        res.add(grp, f"tau**{a}", P(tau_star_star[a]), B.tau_star_star[a - 1])
    for (i, j), v in k.items():
        res.add(grp, f"k_{i}{j}", P(v), c.k[(i, j)])


def _match_stratum(strata, equations):
    cell = Cell.from_equations(AB, [P(e) for e in equations])
    for s in strata:
        if s.cell == cell:
            return s
    return None


def _g45_table(res: Results, alg: LieAlgebraSpec) -> None:
    strata = classification_table(alg)
    for eqs, excl, classes in G45_TABLE:
        row = ", ".join(f"{e} = 0" for e in eqs) or "generic"
        s = _match_stratum(strata, eqs)
        if s is None:
            res.add("g4_5 table", f"row [{row}] exists as a stratum", "stratum", "none", False)
            continue
        missing = [e for e in excl if s.cell.intersect(Cell.from_equations(AB, [P(e)])) not in s.excluded]
        res.add("g4_5 table", f"row [{row}] exclusions", sorted(excl), "covered" if not missing else f"missing {missing}", not missing)
        for a in ALPHAS:
            expected, got = classes[a - 1], s.classes[a]
            note = ""
            if expected != got:
                note = f"{got} is contained in {expected}" if set(got.split("+")) <= set(expected.split("+")) else ""
            res.add("g4_5 table", f"row [{row}] J{a}", expected, got, note=note)


def _g45_theorem(res: Results, alg: LieAlgebraSpec, c: Computed) -> None:
    grp = "g4_5 theorem"
    fr = c.frame
    B = c.bundle
    n_comps = [p for a in ALPHAS for p in c.N[a].flat() if not p.is_zero()]
    res.add(grp, "1 N vanishes iff a = b = 1", Cell.from_equations(AB, [P("a - 1"), P("b - 1")]).describe(), Cell.from_equations(AB, n_comps).describe())
    r_comps = [p for p in B.R.flat() if not p.is_zero()]
    res.add(grp, "2 non-flat", True, common_zero_excluded(r_comps, alg.constraints))
    point, minimum = quadratic_minimum(B.tau / 2)
    res.add(grp, "3 tau > 0 (positive definite)", True, is_positive_definite(B.tau))
    res.add(grp, "3 min tau/2", "2/3 at a=-1/3, b=-1/3", f"{minimum} at a={point['a']}, b={point['b']}")
    grid = [{"a": Fraction(x), "b": Fraction(y)} for x in range(-5, 6) for y in range(-5, 6) if x and y]
    res.add(grp, f"3 tau > 0 at {len(grid)} grid points", True, all(B.tau.evaluate(pt) > 0 for pt in grid))
    res.add(grp, "4 tau* = 0 for all J", True, all(t.is_zero() for t in B.tau_star))
    for a, cond in zip(ALPHAS, ("a + b^2", "b + a^2", "a*b + 1")):
        res.add(grp, f"{4 + a} tau**{a} vanishing condition", P(cond).primitive(), B.tau_star_star[a - 1].primitive())
    holo = {a: [c.k[(p.i, p.j)] for p in planes_of_type(fr, a, HOLOMORPHIC)] for a in ALPHAS}
    real = {a: [c.k[(p.i, p.j)] for p in planes_of_type(fr, a, TOTALLY_REAL)] for a in ALPHAS}
    claims = {
        1: lambda a, b: a > 0,
        2: lambda a, b: b > 0,
        3: lambda a, b: a * b > 0,
    }
    for a in ALPHAS:
        _region_check(res, grp, f"{7 + a} holomorphic J{a} positive", alg, holo[a],
                      {"positive": claims[a]})
    for a in ALPHAS:
        _region_check(res, grp, f"11 totally real J{a} positive", alg, real[a],
                      {"positive": lambda x, y: x > 0 and y > 0})


def check_g46(res: Results) -> None:
    alg = catalog_get("g4_6")
    c = Computed.of(alg)
    fr = c.frame
    grp = "g4_6"
    notes = _notes(c)
    for a in ALPHAS:
        _component_checks(res, grp, c.F[a], G46_F[a], f"F{a}")
        _orbit_check(res, grp, f"F{a} nonzero components", G46_F[a], c.F[a], f_moves(fr, a))
    for a in ALPHAS:
        _component_checks(res, grp, c.theta[a], G46_THETA[a], f"theta{a}")
    for a in ALPHAS:
        _component_checks(res, grp, c.N[a], G46_N[a], f"N{a}", notes)
        _orbit_check(res, grp, f"N{a} nonzero components", G46_N[a], c.N[a], n_moves(fr, a))
    for labels, v in G46_R:
        k = f"R_{_idx(labels)}"
        res.add(grp, k, P(v), c.bundle.R.at(*labels), note=notes.get(k, ""))
    _orbit_check(res, grp, "R nonzero components", G46_R, c.bundle.R, r_moves)
    _scalar_suite(res, grp, c, G46_RHO, G46_RHO_STAR, G46_TAU, G46_TAU_STAR, G46_TAU_STAR_STAR, G46_K)
    _g46_classes(res, alg, c)
    _g46_theorem(res, alg, c)


G46_SAMPLES = [
    ("1", "0"), ("-1", "0"), ("1", "1"), ("-2", "1/2"), ("1/3", "5"),
    ("-7/2", "2"), ("2", "1/3"), ("5", "3/2"), ("-1/5", "1"), ("3", "7"), ("-1", "1/10"),
]


def belongs_to(F_point, frame: HNFrame, alpha: int, label: str) -> bool:
    """Membership of a numeric tensor in a sum of classes by a direct rank test."""
    subs = subspaces_for(alpha, frame)
    target = tuple(subs.space.coordinates([Fraction(v) for v in F_point]))
    vecs = [tuple(v) for n in label.split("+") for v in subs.bases[n]]
    return rank(vecs + [target]) == rank(vecs)


def _g46_classes(res: Results, alg: LieAlgebraSpec, c: Computed) -> None:
    grp = "g4_6 classes"
    strata = classification_table(alg)
    res.add(grp, "single stratum on the domain", 1, len(strata))
    res.add(grp, "generic minimal classes", G46_CLASSES, tuple(strata[0].classes[a] for a in ALPHAS))
    for a_txt, b_txt in G46_SAMPLES:
        pt = {"a": Fraction(a_txt), "b": Fraction(b_txt)}
        point_alg = alg.at(pt)
        conn = levi_civita(point_alg, c.frame)
        got, excluded_hits = [], []
        for a in ALPHAS:
            F = [p.constant_value() for p in fundamental_tensor(conn, c.frame, a).flat()]
            got.append(minimal_class_direct(F, c.frame, a))
            excluded_hits += [f"J{a}:{x}" for x in G46_EXCLUDED[a] if belongs_to(F, c.frame, a, x)]
        res.add(grp, f"minimal classes at a={a_txt}, b={b_txt}", G46_CLASSES, tuple(got))
        res.add(grp, f"exclusions at a={a_txt}, b={b_txt}", "[]", str(excluded_hits))


def _g46_theorem(res: Results, alg: LieAlgebraSpec, c: Computed) -> None:
    grp = "g4_6 theorem"
    fr = c.frame
    B = c.bundle
    res.add(grp, "1 N3 vanishes identically", True, c.N[3].is_zero())
    r_comps = [p for p in B.R.flat() if not p.is_zero()]
    res.add(grp, "2 non-flat", True, common_zero_excluded(r_comps, alg.constraints))
    # a = -b +- sqrt(1 - 2 b^2)  <=>  (a + b)^2 - (1 - 2 b^2) = 0
    res.add(grp, "3 scalar flat condition", (P("(a + b)^2 - (1 - 2*b^2)")).primitive(), B.tau.primitive())
    res.add(grp, "4 tau*1 = tau*2 = 0", True, B.tau_star[0].is_zero() and B.tau_star[1].is_zero())
    res.add(grp, "5 tau*3 vanishing condition", P("a + 2*b"), B.tau_star[2].primitive())
    # a = 1/b - b  <=>  a*b + b^2 - 1 = 0 for b != 0
    res.add(grp, "6 tau**1 = tau**2", True, B.tau_star_star[0] == B.tau_star_star[1])
    res.add(grp, "6 tau**1 vanishing condition", P("a*b + b^2 - 1"), B.tau_star_star[0].primitive())
    res.add(grp, "7 tau**3 > 0", True, is_positive_definite(B.tau_star_star[2]))
    holo = {a: [c.k[(p.i, p.j)] for p in planes_of_type(fr, a, HOLOMORPHIC)] for a in ALPHAS}
    real = {a: [c.k[(p.i, p.j)] for p in planes_of_type(fr, a, TOTALLY_REAL)] for a in ALPHAS}
    pos = lambda a, b: a > 0 and b > 1  # noqa: E731
    neg = lambda a, b: a < 0 and 0 < b < 1  # noqa: E731
    for a in (1, 2):
        _region_check(res, grp, f"8 holomorphic J{a} positive/negative", alg, holo[a], {"positive": pos, "negative": neg})
    _region_check(res, grp, "9 holomorphic J3 positive", alg, holo[3], {"positive": lambda a, b: True})
    for a in (1, 2):
        _region_check(res, grp, f"10 totally real J{a} positive", alg, real[a], {"positive": pos})
    _region_check(res, grp, "11 totally real J3 positive/negative", alg, real[3], {"positive": pos, "negative": neg})


SUITES = {"g4_5": check_g45, "g4_6": check_g46}


def run_checks(names=None) -> Results:
    res = Results()
    for name in names or SUITES:
        SUITES[name](res)
    return res


def discrepancies(name: str, at=None) -> list[dict]:
    """Pinned values that disagree with the computation, optionally at a point."""
    if name not in SUITES:
        return []
    out = []
    for c in run_checks([name]).failed:
        printed, computed = c.raw
        if at is not None:
            if not (isinstance(printed, Poly) and isinstance(computed, Poly)):
                continue
            printed, computed = printed.evaluate(at), computed.evaluate(at)
            if printed == computed:
                continue
        out.append({"check": f"{c.group}: {c.name}", "printed": str(printed), "computed": str(computed), "note": c.note})
    return out
