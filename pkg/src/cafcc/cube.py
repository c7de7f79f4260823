"""The face-centered cube: 14 centered equations and the six-step check.

The cube carries six face vertices (x, y, z_n, z_s, z_e, z_w) and eight
corner vertices (x_a..x_d, y_a..y_d).  Fourteen equations are centered on
them; three two-component parameters live on the three lattice directions,
with the third direction's components exchanged wherever two faces meet
orthogonally.  From six initial values the remaining eight are determined
and the system is consistent exactly when the six-step run below closes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, Optional, Sequence, Union

from .catalogue import (
    ADMISSIBLE_DELTAS,
    DeltaTuple,
    FaceEquation,
    Family,
    ParamPair,
    deltas,
    evaluate_raw,
    equation_label,
    make_equation,
    parse_equation,
)
from .errors import (
    DegenerateSlot,
    DegenerateSolve,
    DomainViolation,
    InadmissibleConfig,
)
from .exactnum import ONE, Scalar, ZERO, format_scalar


class Vertex(str, Enum):
    X = "x"
    XA = "x_a"
    XB = "x_b"
    XC = "x_c"
    XD = "x_d"
    Y = "y"
    YA = "y_a"
    YB = "y_b"
    YC = "y_c"
    YD = "y_d"
    ZN = "z_n"
    ZS = "z_s"
    ZE = "z_e"
    ZW = "z_w"


FACE_VERTICES = (Vertex.X, Vertex.Y, Vertex.ZN, Vertex.ZS, Vertex.ZE, Vertex.ZW)
CORNER_VERTICES = (Vertex.XA, Vertex.XB, Vertex.XC, Vertex.XD,
                   Vertex.YA, Vertex.YB, Vertex.YC, Vertex.YD)
INITIAL_VERTICES = (Vertex.X, Vertex.XA, Vertex.XB, Vertex.XC, Vertex.ZN, Vertex.ZW)

PARAM_KEYS = ("a1", "a2", "b1", "b2", "g1", "g2")

SLOTS = ("a", "b", "c", "d")

# (index, center, (a, b, c, d), alpha component keys, beta component keys)
CUBE_WIRING = (
    (1, Vertex.X, (Vertex.XA, Vertex.XB, Vertex.XC, Vertex.XD), ("a1", "a2"), ("b1", "b2")),
    (2, Vertex.ZW, (Vertex.YA, Vertex.XA, Vertex.YC, Vertex.XC), ("a1", "a2"), ("g1", "g2")),
    (3, Vertex.ZN, (Vertex.YA, Vertex.YB, Vertex.XA, Vertex.XB), ("g1", "g2"), ("b1", "b2")),
    (4, Vertex.Y, (Vertex.YA, Vertex.YB, Vertex.YC, Vertex.YD), ("a1", "a2"), ("b1", "b2")),
    (5, Vertex.ZE, (Vertex.YB, Vertex.XB, Vertex.YD, Vertex.XD), ("a1", "a2"), ("g1", "g2")),
    (6, Vertex.ZS, (Vertex.YC, Vertex.YD, Vertex.XC, Vertex.XD), ("g1", "g2"), ("b1", "b2")),
    (7, Vertex.XA, (Vertex.ZW, Vertex.YA, Vertex.X, Vertex.ZN), ("b1", "g2"), ("a2", "g1")),
    (8, Vertex.XB, (Vertex.ZE, Vertex.YB, Vertex.X, Vertex.ZN), ("b2", "g2"), ("a2", "g1")),
    (9, Vertex.XC, (Vertex.ZW, Vertex.YC, Vertex.X, Vertex.ZS), ("b1", "g2"), ("a1", "g1")),
    (10, Vertex.XD, (Vertex.ZE, Vertex.YD, Vertex.X, Vertex.ZS), ("b2", "g2"), ("a1", "g1")),
    (11, Vertex.YA, (Vertex.ZW, Vertex.XA, Vertex.Y, Vertex.ZN), ("b1", "g1"), ("a2", "g2")),
    (12, Vertex.YB, (Vertex.ZE, Vertex.XB, Vertex.Y, Vertex.ZN), ("b2", "g1"), ("a2", "g2")),
    (13, Vertex.YC, (Vertex.ZW, Vertex.XC, Vertex.Y, Vertex.ZS), ("b1", "g1"), ("a1", "g2")),
    (14, Vertex.YD, (Vertex.ZE, Vertex.XD, Vertex.Y, Vertex.ZS), ("b2", "g1"), ("a1", "g2")),
)

FACE_EQ_INDICES = (1, 2, 3, 4, 5, 6)
CORNER_EQ_INDICES = (7, 8, 9, 10, 11, 12, 13, 14)
A_FACE_INDICES = (2, 5)          # the faces carrying alpha-gamma parameters
B_FACE_INDICES = (1, 3, 4, 6)


@dataclass(frozen=True)
class CenteredEquation:
    index: int
    center: Vertex
    args: tuple          # (a, b, c, d) vertex labels
    alpha_keys: tuple    # parameter component keys for the alpha pair
    beta_keys: tuple
    equation: FaceEquation


@dataclass(frozen=True)
class SystemConfig:
    """Either a single-polynomial system or an A/B/C triple."""

    a: FaceEquation
    b: Optional[FaceEquation] = None
    c: Optional[FaceEquation] = None

    @property
    def is_single(self) -> bool:
        return self.b is None

    @property
    def label(self) -> str:
        if self.is_single:
            return self.a.label
        if self.c.family is Family.C1:
            return "ABC:A2,D1,C1"
        tail = str(self.c.deltas)
        return f"ABC:{self.a.family.value},{self.b.family.value},{self.c.family.value}:{tail}"


def type_a_config(family: Family, delta: DeltaTuple) -> SystemConfig:
    if family not in (Family.A3, Family.A2) or delta not in ADMISSIBLE_DELTAS[family]:
        raise InadmissibleConfig(f"no single-polynomial system {family.value} ({delta})")
    return SystemConfig(a=make_equation(family, delta))


def abc_config(a_family: Family, b_family: Family, c_family: Family,
               triple: DeltaTuple) -> SystemConfig:
    """An A/B/C triple; the type-A regime is derived from the shared triple."""
    if (a_family, b_family, c_family) == (Family.A3, Family.B3, Family.C3):
        if triple not in ADMISSIBLE_DELTAS[Family.B3]:
            raise InadmissibleConfig(f"B3/C3 do not admit deltas ({triple})")
        a_eq = make_equation(Family.A3, deltas(2 * triple.d2))
    elif (a_family, b_family, c_family) == (Family.A2, Family.B2, Family.C2):
        if triple not in ADMISSIBLE_DELTAS[Family.B2]:
            raise InadmissibleConfig(f"B2/C2 do not admit deltas ({triple})")
        a_eq = make_equation(Family.A2, deltas(triple.d1, triple.d2))
    elif (a_family, b_family, c_family) == (Family.A2, Family.D1, Family.C1):
        if triple != deltas():
            raise InadmissibleConfig("the A2/D1/C1 system carries no deltas")
        a_eq = make_equation(Family.A2, deltas(0, 0))
    else:
        raise InadmissibleConfig(
            f"no system combines {a_family.value}, {b_family.value}, {c_family.value}")
    return SystemConfig(a=a_eq,
                        b=make_equation(b_family, triple),
                        c=make_equation(c_family, triple))


def all_system_configs() -> tuple:
    """Every admissible system: 5 single-polynomial + 9 triples."""
    configs = [type_a_config(Family.A3, d) for d in ADMISSIBLE_DELTAS[Family.A3]]
    configs += [type_a_config(Family.A2, d) for d in ADMISSIBLE_DELTAS[Family.A2]]
    configs += [abc_config(Family.A3, Family.B3, Family.C3, t)
                for t in ADMISSIBLE_DELTAS[Family.B3]]
    configs += [abc_config(Family.A2, Family.B2, Family.C2, t)
                for t in ADMISSIBLE_DELTAS[Family.B2]]
    configs.append(abc_config(Family.A2, Family.D1, Family.C1, deltas()))
    return tuple(configs)


def parse_config(label: str) -> SystemConfig:
    """Parse "A3:d=0" or "ABC:A2,B2,C2:1,0,1" style system labels."""
    if not label.startswith("ABC:"):
        eq = parse_equation(label)
        return type_a_config(eq.family, eq.deltas)
    rest = label[4:]
    fams, _, tail = rest.partition(":")
    names = fams.split(",")
    if len(names) != 3:
        raise InadmissibleConfig(f"bad system label {label!r}")
    try:
        a_f, b_f, c_f = (Family(n) for n in names)
    except ValueError:
        raise InadmissibleConfig(f"bad system label {label!r}") from None
    if not tail:
        return abc_config(a_f, b_f, c_f, deltas())
    parts = [p for p in tail.split(",")]
    from .exactnum import scalar
    vals = [scalar(p) for p in parts] + [ZERO] * (3 - len(parts))
    return abc_config(a_f, b_f, c_f, DeltaTuple(*vals))


@dataclass(frozen=True)
class EquationSystem:
    config: SystemConfig
    equations: tuple  # 14 CenteredEquation, index order

    @property
    def label(self) -> str:
        return self.config.label

    def by_center(self, center: Vertex) -> CenteredEquation:
        return self._center_map[center]

    @property
    def _center_map(self):
        return {e.center: e for e in self.equations}

    @property
    def corner_equation(self) -> FaceEquation:
        return self.equations[6].equation

    @property
    def face_a_equation(self) -> FaceEquation:
        return self.equations[1].equation

    @property
    def face_b_equation(self) -> FaceEquation:
        return self.equations[2].equation


def assemble_system(config: SystemConfig) -> EquationSystem:
    """The 14 centered equations with their vertex and parameter wiring."""
    records = []
    for index, center, args, akeys, bkeys in CUBE_WIRING:
        if config.is_single:
            eq = config.a
        elif index in A_FACE_INDICES:
            eq = config.a
        elif index in B_FACE_INDICES:
            eq = config.b
        else:
            eq = config.c
        records.append(CenteredEquation(index, center, args, akeys, bkeys, eq))
    return EquationSystem(config=config, equations=tuple(records))


def inject_fault(system: EquationSystem, index: int) -> EquationSystem:
    """Swap the beta-pair components of one centered equation (test hook)."""
    records = list(system.equations)
    old = records[index - 1]
    records[index - 1] = CenteredEquation(
        old.index, old.center, old.args, old.alpha_keys,
        (old.beta_keys[1], old.beta_keys[0]), old.equation)
    return EquationSystem(config=system.config, equations=tuple(records))


# ---------------------------------------------------------------------------
# Solving
# ---------------------------------------------------------------------------

def solve_corner(eq: FaceEquation, slot: str, x: Scalar,
                 known: Mapping[str, Scalar], alpha: ParamPair,
                 beta: ParamPair) -> Scalar:
    """Solve equation = 0 for one corner slot, exactly.

    The equation is affine in each corner, so the solution is
    -f(0) / (f(1) - f(0)) with f the evaluation as a function of that slot.
    """
    if slot not in SLOTS:
        raise ValueError(f"slot must be one of {SLOTS}, got {slot!r}")
    vals = {s: known[s] for s in SLOTS if s != slot}

    def at(v):
        vals[slot] = v
        return evaluate_raw(eq, x, vals["a"], vals["b"], vals["c"], vals["d"],
                            alpha.first, alpha.second, beta.first, beta.second)

    f0 = at(ZERO)
    coeff = at(ONE) - f0
    if coeff == 0:
        raise DegenerateSlot(f"{eq.label}: slot {slot} has zero linear coefficient")
    return -f0 / coeff


def _resolve_pair(keys, params: Mapping[str, Scalar]) -> ParamPair:
    return ParamPair(params[keys[0]], params[keys[1]])


def _solve_centered(rec: CenteredEquation, unknown: Vertex,
                    values: Mapping[Vertex, Scalar],
                    params: Mapping[str, Scalar], step: int) -> Scalar:
    slot = SLOTS[rec.args.index(unknown)]
    known = {SLOTS[i]: values[v] for i, v in enumerate(rec.args) if v is not unknown}
    try:
        return solve_corner(rec.equation, slot, values[rec.center], known,
                            _resolve_pair(rec.alpha_keys, params),
                            _resolve_pair(rec.beta_keys, params))
    except (DegenerateSlot, DomainViolation) as exc:
        raise DegenerateSolve(step, rec.index, str(exc)) from exc


def _evaluate_centered(rec: CenteredEquation, values, params) -> Scalar:
    alpha = _resolve_pair(rec.alpha_keys, params)
    beta = _resolve_pair(rec.beta_keys, params)
    a, b, c, d = (values[v] for v in rec.args)
    return evaluate_raw(rec.equation, values[rec.center], a, b, c, d,
                        alpha.first, alpha.second, beta.first, beta.second)


# ---------------------------------------------------------------------------
# The six-step consistency run
# ---------------------------------------------------------------------------

@dataclass
class CafccReport:
    """Outcome of one six-step consistency run."""

    system: str
    seed: int
    solved: dict = field(default_factory=dict)   # Vertex -> Scalar
    step3_agree: bool = False
    step4_agree: bool = False
    step5_values: tuple = ()
    step5_agree: bool = False
    step6_residual: Scalar = ZERO
    pass_: bool = False

    def to_json_dict(self) -> dict:
        return {
            "system": self.system,
            "seed": self.seed,
            "solved": {v.value: format_scalar(s) for v, s in sorted(
                self.solved.items(), key=lambda kv: kv[0].value)},
            "step3_agree": self.step3_agree,
            "step4_agree": self.step4_agree,
            "step5_values": [format_scalar(s) for s in self.step5_values],
            "step5_agree": self.step5_agree,
            "step6_residual": format_scalar(self.step6_residual),
            "pass": self.pass_,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def run_cafcc(system: EquationSystem, init: Mapping[Vertex, Scalar],
              params: Mapping[str, Scalar], seed: int = 0) -> CafccReport:
    """Execute the six-step consistency check from six initial values.

    Step 1 determines y_a and x_d, step 2 determines y_c, y_b and y.  Steps
    3 and 4 each solve one vertex (z_e, then z_s) from two different
    equations and compare.  Step 5 solves y_d from four equations and
    compares, step 6 evaluates the one remaining equation.  All comparisons
    are exact rational equalities.  Raises DegenerateSolve when a linear
    coefficient vanishes; the caller is expected to resample.
    """
    vals: dict = {v: init[v] for v in INITIAL_VERTICES}
    by_center = {rec.center: rec for rec in system.equations}

    def solve(center: Vertex, unknown: Vertex, step: int):
        vals[unknown] = _solve_centered(by_center[center], unknown, vals, params, step)

    # step 1
    solve(Vertex.XA, Vertex.YA, 1)
    solve(Vertex.X, Vertex.XD, 1)
    # step 2
    solve(Vertex.ZW, Vertex.YC, 2)
    solve(Vertex.ZN, Vertex.YB, 2)
    solve(Vertex.YA, Vertex.Y, 2)

    # step 3: z_e two ways
    ze_1 = _solve_centered(by_center[Vertex.XB], Vertex.ZE, vals, params, 3)
    ze_2 = _solve_centered(by_center[Vertex.YB], Vertex.ZE, vals, params, 3)
    vals[Vertex.ZE] = ze_1
    # step 4: z_s two ways
    zs_1 = _solve_centered(by_center[Vertex.YC], Vertex.ZS, vals, params, 4)
    zs_2 = _solve_centered(by_center[Vertex.XC], Vertex.ZS, vals, params, 4)
    vals[Vertex.ZS] = zs_1

    # step 5: y_d four ways (equations centered at z_e, y, z_s, x_d)
    yd_vals = tuple(_solve_centered(by_center[c], Vertex.YD, vals, params, 5)
                    for c in (Vertex.ZE, Vertex.Y, Vertex.ZS, Vertex.XD))
    vals[Vertex.YD] = yd_vals[0]

    # step 6: the remaining equation, centered at y_d
    residual = _evaluate_centered(by_center[Vertex.YD], vals, params)

    report = CafccReport(system=system.label, seed=seed)
    report.solved = dict(vals)
    report.step3_agree = ze_1 == ze_2
    report.step4_agree = zs_1 == zs_2
    report.step5_values = yd_vals
    report.step5_agree = all(v == yd_vals[0] for v in yd_vals[1:])
    report.step6_residual = residual
    report.pass_ = (report.step3_agree and report.step4_agree
                    and report.step5_agree and residual == 0)
    return report
