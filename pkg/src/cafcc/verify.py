"""Seeded sampling and the property suites.

Each suite bundles one family of exact identities into a runnable check
over deterministically sampled rational points.  A failure record carries
the sub-seed and a snapshot sufficient to reproduce the failing check in
isolation.  Negative expectations (identities that must fail off the
solution set, symmetries that only some families enjoy) are suites too:
they assert non-vanishing at generic points and resample accidental zeros.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional, Sequence, Union

from .catalogue import (
    ADMISSIBLE_DELTAS,
    FaceEquation,
    FacePoint,
    Family,
    LegRole,
    ParamPair,
    TYPE_A,
    TYPE_B,
    TYPE_C,
    all_equations,
    evaluate_raw,
    fourleg_residual,
    leg,
    leg_spec,
    make_equation,
)
from .cube import (
    CUBE_WIRING,
    INITIAL_VERTICES,
    PARAM_KEYS,
    EquationSystem,
    Vertex,
    all_system_configs,
    assemble_system,
    inject_fault,
    run_cafcc,
    solve_corner,
)
from .errors import (
    DegenerateSlot,
    DegenerateSolve,
    DomainViolation,
    EmptyScope,
    MissingSurd,
    RetriesExhausted,
    SingularMatrix,
)
from .exactnum import (
    ONE,
    Scalar,
    SurdKind,
    SurdParam,
    ZERO,
    format_scalar,
    make_surd,
    plain_value,
    scalar,
)
from . import lax
from .lax import (
    LAX_CASES,
    NormalizationRule,
    PropId,
    QUAD_VERTICES,
    SPECTRAL_KEY,
    assemble_quadruple,
    build_lax_A,
    build_lax_B,
    builder_equation,
    catalogue_builder_factor,
    catalogue_coefficients,
    catalogue_det,
    catalogue_lax,
    central_value,
    invert,
    normalization,
    proof_residual,
    residual,
    solve_central,
)

import random


def _mix(*parts: int) -> int:
    """SplitMix64-style mixing of seed components into one 64-bit value."""
    acc = 0x9E3779B97F4A7C15
    for p in parts:
        acc = (acc ^ (p & 0xFFFFFFFFFFFFFFFF)) * 0xBF58476D1CE4E5B9 % (1 << 64)
        acc ^= acc >> 31
        acc = acc * 0x94D049BB133111EB % (1 << 64)
        acc ^= acc >> 29
    return acc


@dataclass(frozen=True)
class SamplerConfig:
    seed: int = 0
    height_bound: int = 12
    nonzero_slots: frozenset = frozenset()
    surd_slots: Mapping = None
    max_retries: int = 32

    def sub(self, *parts: int) -> "SamplerConfig":
        """Config with a seed derived by counter mixing (parallel-safe)."""
        return SamplerConfig(_mix(self.seed, *parts), self.height_bound,
                             self.nonzero_slots, self.surd_slots,
                             self.max_retries)


def sample_point(cfg: SamplerConfig, shape: Sequence) -> dict:
    """Deterministic assignment of rationals (and surds) to labels.

    All ``nonzero_slots`` never receive zero; ``surd_slots`` receive a
    SurdParam of the requested kind with a nonzero seed (and |seed| != 1
    for hyperbolic kind, keeping the root nonzero).
    """
    rng = random.Random(_mix(cfg.seed))
    h = cfg.height_bound
    surds = cfg.surd_slots or {}

    def draw(nonzero):
        while True:
            v = scalar(rng.randint(-h, h), rng.randint(1, h))
            if not nonzero or v != 0:
                return v

    out = {}
    for label in shape:
        if label in surds:
            kind = surds[label]
            while True:
                t = draw(True)
                if kind is SurdKind.HYPERBOLIC and abs(t) == 1:
                    continue
                break
            out[label] = make_surd(kind, t)
        else:
            out[label] = draw(label in cfg.nonzero_slots)
    return out


@dataclass
class SuiteReport:
    suite: str
    trials: int
    failures: list = field(default_factory=list)
    pass_: bool = True
    wall_time: float = 0.0
    seed: int = 0
    cases: int = 0

    def record(self, case: str, seed: int, detail: str):
        self.failures.append({"case": case, "seed": seed, "detail": detail})
        self.pass_ = False

    def to_json_dict(self, include_timing: bool = False) -> dict:
        d = {
            "schema": "1",
            "suite": self.suite,
            "seed": self.seed,
            "trials": self.trials,
            "cases": self.cases,
            "failures": self.failures,
            "pass": self.pass_,
        }
        if include_timing:
            d["wall_time"] = self.wall_time
        return d

    def to_json(self, include_timing: bool = False) -> str:
        return json.dumps(self.to_json_dict(include_timing), sort_keys=True)


@dataclass(frozen=True)
class Scope:
    """Filters for a suite run; empty tuples mean 'everything'."""

    systems: tuple = ()
    equations: tuple = ()   # equation labels like "B3:1/2,0,1/2"
    props: tuple = ()       # "P4.1".."P4.8"
    kind: str = ""          # symmetry kind filter
    variants: tuple = ()    # normalization variant filter
    epsilons: tuple = ()    # sign/branch filter

    def match_system(self, label: str) -> bool:
        return not self.systems or label in self.systems

    def match_equation(self, label: str) -> bool:
        return not self.equations or label in self.equations

    def match_prop(self, prop: PropId) -> bool:
        return not self.props or prop.value in self.props


DEFAULT_TRIALS = {
    "cafcc": 100,
    "symmetry": 50,
    "fourleg": 50,
    "lax_compat": 50,
    "lax_offshell": 20,
    "det": 50,
    "builder_vs_catalogue": 50,
    "proof_oracle": 50,
    "leg_unit": 50,
    "inverse_law": 50,
    "spectral_sweep": 10,
}


def _snapshot(values: Mapping) -> str:
    parts = []
    for k in sorted(values, key=str):
        v = values[k]
        name = k.value if isinstance(k, Vertex) else str(k)
        if isinstance(v, SurdParam):
            parts.append(f"{name}={v.kind.value}({format_scalar(v.seed)})")
        else:
            parts.append(f"{name}={format_scalar(v)}")
    return " ".join(parts)


# ---------------------------------------------------------------------------
# cafcc
# ---------------------------------------------------------------------------

def _sample_cafcc_inputs(cfg: SamplerConfig):
    labels = list(INITIAL_VERTICES) + list(PARAM_KEYS)
    vals = sample_point(
        SamplerConfig(cfg.seed, cfg.height_bound,
                      frozenset(labels), None, cfg.max_retries), labels)
    init = {v: vals[v] for v in INITIAL_VERTICES}
    params = {k: vals[k] for k in PARAM_KEYS}
    return init, params


def run_cafcc_trial(system: EquationSystem, cfg: SamplerConfig, seed: int):
    """One consistency run with bounded resampling of degenerate points."""
    for attempt in range(cfg.max_retries):
        sub = cfg.sub(seed, attempt)
        init, params = _sample_cafcc_inputs(sub)
        try:
            return run_cafcc(system, init, params, seed=sub.seed)
        except (DegenerateSolve, DomainViolation):
            continue
    raise RetriesExhausted(
        f"no non-degenerate initial data for {system.label} at seed {seed}")


def _suite_cafcc(scope: Scope, trials: int, cfg: SamplerConfig,
                 report: SuiteReport, fault: int = 0):
    systems = [assemble_system(c) for c in all_system_configs()
               if scope.match_system(c.label)]
    if not systems:
        raise EmptyScope("no systems in scope")
    for si, system in enumerate(systems):
        if fault:
            system = inject_fault(system, fault)
        report.cases += 1
        for t in range(trials):
            rep = run_cafcc_trial(system, cfg.sub(si), t)
            if not rep.pass_:
                report.record(system.label, rep.seed,
                              f"residual {format_scalar(rep.step6_residual)}"
                              f" {_snapshot(rep.solved)}")


# ---------------------------------------------------------------------------
# symmetry
# ---------------------------------------------------------------------------

def _reflections(eq: FaceEquation):
    """(kind, expected) pairs: expected is the cofactor for identities that
    hold (+1/-1), or None when the family must violate the identity."""
    fam = eq.family
    beta_sign = ONE if fam is Family.C1 else -ONE
    out = [("beta", beta_sign)]
    out.append(("alpha", -ONE if fam in TYPE_A | TYPE_B else None))
    out.append(("diagonal", -ONE if fam in TYPE_A else None))
    return out


def _apply_reflection(kind: str, vals: dict) -> dict:
    q = dict(vals)
    if kind == "beta":
        q["xa"], q["xb"], q["xc"], q["xd"] = vals["xb"], vals["xa"], vals["xd"], vals["xc"]
        q["b1"], q["b2"] = vals["b2"], vals["b1"]
    elif kind == "alpha":
        q["xa"], q["xc"], q["xb"], q["xd"] = vals["xc"], vals["xa"], vals["xd"], vals["xb"]
        q["a1"], q["a2"] = vals["a2"], vals["a1"]
    else:
        q["xa"], q["xd"] = vals["xd"], vals["xa"]
        q["a1"], q["a2"], q["b1"], q["b2"] = vals["b1"], vals["b2"], vals["a1"], vals["a2"]
    return q


_EQ_LABELS = ("x", "xa", "xb", "xc", "xd", "a1", "a2", "b1", "b2")


def _eval_labels(eq: FaceEquation, vals: Mapping) -> Scalar:
    return evaluate_raw(eq, vals["x"], vals["xa"], vals["xb"], vals["xc"],
                        vals["xd"], vals["a1"], vals["a2"], vals["b1"], vals["b2"])


def _suite_symmetry(scope: Scope, trials: int, cfg: SamplerConfig,
                    report: SuiteReport):
    ran = False
    kind_index = {"beta": 0, "alpha": 1, "diagonal": 2}
    for ei, eq in enumerate(all_equations()):
        if not scope.match_equation(eq.label):
            continue
        for kind, expected in _reflections(eq):
            if scope.kind and kind != scope.kind:
                continue
            ran = True
            report.cases += 1
            for t in range(trials):
                sub = cfg.sub(ei, kind_index[kind], t)
                for attempt in range(cfg.max_retries):
                    vals = sample_point(
                        SamplerConfig(_mix(sub.seed, attempt), cfg.height_bound,
                                      frozenset(_EQ_LABELS)), _EQ_LABELS)
                    v = _eval_labels(eq, vals)
                    w = _eval_labels(eq, _apply_reflection(kind, vals))
                    if expected is not None:
                        if w != expected * v:
                            report.record(f"{eq.label}:{kind}", sub.seed,
                                          f"cofactor violated at {_snapshot(vals)}")
                        break
                    # negative expectation: the sign identity must fail at a
                    # generic point (accidental zeros of v + w are resampled)
                    if w != -v:
                        break
                    if attempt == cfg.max_retries - 1:
                        report.record(f"{eq.label}:{kind}", sub.seed,
                                      "identity unexpectedly holds")
    if not ran:
        raise EmptyScope("no symmetry checks in scope")


# ---------------------------------------------------------------------------
# fourleg
# ---------------------------------------------------------------------------

def _fourleg_surd(eq: FaceEquation) -> Optional[SurdKind]:
    if eq.family in TYPE_C:
        roles = (LegRole.A_LEG, LegRole.C_LEG)
    elif eq.family in TYPE_B:
        roles = (LegRole.B_LEG,)
    else:
        roles = (LegRole.A_LEG,)
    for r in roles:
        kind = leg_spec(eq.family, eq.deltas, r).surd
        if kind is not None:
            return kind
    return None


def _sample_face_point(cfg: SamplerConfig, surd: Optional[SurdKind]):
    labels = list(_EQ_LABELS)
    surds = {"x": surd} if surd else None
    vals = sample_point(
        SamplerConfig(cfg.seed, cfg.height_bound, frozenset(labels), surds),
        labels)
    center = vals["x"]
    p = FacePoint(plain_value(center), vals["xa"], vals["xb"], vals["xc"],
                  vals["xd"], ParamPair(vals["a1"], vals["a2"]),
                  ParamPair(vals["b1"], vals["b2"]))
    return p, center


def _suite_fourleg(scope: Scope, trials: int, cfg: SamplerConfig,
                   report: SuiteReport):
    ran = False
    for ei, eq in enumerate(all_equations()):
        if not scope.match_equation(eq.label):
            continue
        ran = True
        report.cases += 1
        surd = _fourleg_surd(eq)
        for t in range(trials):
            sub = cfg.sub(ei, t)
            for attempt in range(cfg.max_retries):
                try:
                    p, center = _sample_face_point(sub.sub(attempt), surd)
                    xd = solve_corner(eq, "d", p.x,
                                      {"a": p.xa, "b": p.xb, "c": p.xc},
                                      p.alpha, p.beta)
                    on = FacePoint(p.x, p.xa, p.xb, p.xc, xd, p.alpha, p.beta)
                    r = fourleg_residual(eq, on, x=center)
                    if r != 0:
                        report.record(eq.label, sub.seed,
                                      f"on-shell residual {format_scalar(r)}")
                    if isinstance(center, SurdParam):
                        r2 = fourleg_residual(eq, on, x=center.flip_branch())
                        if r2 != 0:
                            report.record(eq.label, sub.seed,
                                          "on-shell residual nonzero on flipped branch")
                    off = FacePoint(p.x, p.xa, p.xb, p.xc, xd + 1, p.alpha, p.beta)
                    roff = fourleg_residual(eq, off, x=center)
                    if roff == 0:
                        continue  # accidental zero off-shell: resample
                    break
                except (DegenerateSlot, DomainViolation):
                    continue
            else:
                report.record(eq.label, sub.seed, "off-shell residual kept vanishing")


# ---------------------------------------------------------------------------
# lax suites
# ---------------------------------------------------------------------------

def lax_combinations(scope: Scope):
    """Every (rule, builder-regime) combination of the compatibility cases."""
    for prop, case in LAX_CASES.items():
        if not scope.match_prop(prop):
            continue
        for regime in case.regimes:
            for variant in case.variants:
                if scope.variants and variant not in scope.variants:
                    continue
                for eps in case.epsilons:
                    if scope.epsilons and eps not in scope.epsilons:
                        continue
                    yield NormalizationRule(prop, variant, eps), regime


def system_for_case(case, regime) -> EquationSystem:
    from .cube import abc_config, type_a_config
    if case.prop is PropId.P4_1:
        return assemble_system(type_a_config(Family.A3, regime))
    if case.prop is PropId.P4_5:
        return assemble_system(type_a_config(Family.A2, regime))
    if case.builder_family is Family.C3:
        return assemble_system(abc_config(Family.A3, Family.B3, Family.C3, regime))
    if case.builder_family is Family.C2:
        return assemble_system(abc_config(Family.A2, Family.B2, Family.C2, regime))
    return assemble_system(abc_config(Family.A2, Family.D1, Family.C1, regime))


def sample_quad_point(case, regime, cfg: SamplerConfig):
    verts = QUAD_VERTICES[case.approach]
    surds = None
    if case.surd_kind is not None and regime in case.surd_regimes:
        surds = {Vertex.ZN: case.surd_kind}
    vals = sample_point(
        SamplerConfig(cfg.seed, cfg.height_bound,
                      frozenset(list(verts) + list(PARAM_KEYS)), surds),
        list(verts) + list(PARAM_KEYS))
    point = {v: vals[v] for v in verts}
    params = {k: vals[k] for k in PARAM_KEYS}
    return point, params


def _case_tag(rule: NormalizationRule, regime) -> str:
    return f"{rule.prop.value}[{regime}] v{rule.variant} e{rule.epsilon:+d}"


def _suite_lax_compat(scope: Scope, trials: int, cfg: SamplerConfig,
                      report: SuiteReport):
    ran = False
    for ci, (rule, regime) in enumerate(lax_combinations(scope)):
        ran = True
        report.cases += 1
        case = rule.case
        system = system_for_case(case, regime)
        for t in range(trials):
            sub = cfg.sub(ci, t)
            for attempt in range(cfg.max_retries):
                try:
                    point, params = sample_quad_point(case, regime, sub.sub(attempt))
                    on = solve_central(system, case.approach, point, params)
                    q = assemble_quadruple(system, case.approach, on, params, rule)
                    r = residual(q)
                    if not r.is_zero():
                        report.record(_case_tag(rule, regime), sub.seed,
                                      f"on-shell residual {r.to_lists()}"
                                      f" at {_snapshot(on)}")
                    break
                except (DegenerateSlot, DomainViolation, SingularMatrix):
                    continue
            else:
                report.record(_case_tag(rule, regime), sub.seed,
                              "retries exhausted")
    if not ran:
        raise EmptyScope("no lax cases in scope")


def _suite_lax_offshell(scope: Scope, trials: int, cfg: SamplerConfig,
                        report: SuiteReport):
    ran = False
    for ci, (rule, regime) in enumerate(lax_combinations(scope)):
        ran = True
        report.cases += 1
        case = rule.case
        system = system_for_case(case, regime)
        for t in range(trials):
            sub = cfg.sub(ci, t)
            for attempt in range(cfg.max_retries):
                try:
                    point, params = sample_quad_point(case, regime, sub.sub(attempt))
                    if central_value(system, case.approach, point, params) == 0:
                        continue  # accidentally on-shell
                    q = assemble_quadruple(system, case.approach, point, params, rule)
                    if residual(q).is_zero():
                        continue  # accidental zero of the cofactor matrix
                    break
                except (DegenerateSlot, DomainViolation, SingularMatrix):
                    continue
            else:
                report.record(_case_tag(rule, regime), sub.seed,
                              "off-shell residual kept vanishing")
    if not ran:
        raise EmptyScope("no lax cases in scope")


_BLOCK_ENTRIES = (
    (Family.A3, "A"), (Family.C3, "A"), (Family.A2, "A"), (Family.C2, "A"),
    (Family.C3, "B"), (Family.C2, "B"), (Family.C1, "A"), (Family.C1, "B"),
)
_CLOSED_RULES = {(Family.C1, "A"): PropId.P4_3, (Family.C1, "B"): PropId.P4_7}
_BUILDER_LABELS = ("x", "xa", "xl", "a1", "a2", "b1", "b2")


def _sample_builder_args(cfg: SamplerConfig):
    vals = sample_point(
        SamplerConfig(cfg.seed, cfg.height_bound, frozenset(_BUILDER_LABELS)),
        _BUILDER_LABELS)
    return (vals["x"], vals["xa"], vals["xl"],
            ParamPair(vals["a1"], vals["a2"]), ParamPair(vals["b1"], vals["b2"]))


def _build(eq: FaceEquation, approach: str, x, xa, xl, alpha, beta):
    if approach == "A":
        return build_lax_A(eq, x, xa, xl, alpha, beta)
    return build_lax_B(eq, x, xa, xl, alpha, beta)


def _suite_builder_vs_catalogue(scope: Scope, trials: int, cfg: SamplerConfig,
                                report: SuiteReport):
    ran = False
    for bi, (family, approach) in enumerate(_BLOCK_ENTRIES):
        for di, d in enumerate(ADMISSIBLE_DELTAS[family]):
            eq = make_equation(family, d)
            label = f"{eq.label} via {approach}"
            if not scope.match_equation(eq.label):
                continue
            ran = True
            report.cases += 1
            for t in range(trials):
                sub = cfg.sub(bi, di, t)
                for attempt in range(cfg.max_retries):
                    try:
                        x, xa, xl, alpha, beta = _sample_builder_args(sub.sub(attempt))
                        m = _build(eq, approach, x, xa, xl, alpha, beta)
                        if (family, approach) in _CLOSED_RULES:
                            rule = NormalizationRule(_CLOSED_RULES[(family, approach)])
                            m = m.scale(normalization(rule, eq, x, xa, xl, alpha, beta))
                            c = catalogue_lax(family, d, approach, x, xa, xl, alpha, beta)
                            if m.entries() != c.entries():
                                report.record(label, sub.seed, "closed form differs")
                            break
                        k = catalogue_builder_factor(family, d, approach, alpha, beta)
                        c = catalogue_lax(family, d, approach, x, xa, xl, alpha, beta)
                        if m.scale(k).entries() != c.entries():
                            report.record(label, sub.seed, "assembled matrix differs")
                            break
                        # coefficient-level: interpolate the builder in x at
                        # three points and compare with the catalogued blocks
                        coeffs = _interpolate_builder(eq, approach, xa, xl, alpha, beta)
                        blocks = catalogue_coefficients(family, d, approach,
                                                        xa, xl, alpha, beta)
                        for got, want in zip(coeffs, blocks):
                            if got.scale(k).entries() != want.entries():
                                report.record(label, sub.seed,
                                              "coefficient matrix differs")
                                break
                        break
                    except (DomainViolation, DegenerateSlot):
                        continue
                else:
                    report.record(label, sub.seed, "retries exhausted")
    if not ran:
        raise EmptyScope("no catalogue entries in scope")


def _interpolate_builder(eq, approach, xa, xl, alpha, beta):
    """Exact quadratic interpolation of the builder output in the face
    variable (three distinct sample values)."""
    xs = (ONE, scalar(2), scalar(3))
    ms = [_build(eq, approach, xv, xa, xl, alpha, beta) for xv in xs]
    out = []
    for power in (2, 1, 0):
        entries = []
        for idx in range(4):
            ys = [m.entries()[idx] for m in ms]
            entries.append(_lagrange_coeff(xs, ys, power))
        out.append(lax.Matrix2(*entries))
    return tuple(out)


def _lagrange_coeff(xs, ys, power: int) -> Scalar:
    # coefficient of x^power in the unique quadratic through (xs, ys)
    x0, x1, x2 = xs
    y0, y1, y2 = ys
    d0 = (x0 - x1) * (x0 - x2)
    d1 = (x1 - x0) * (x1 - x2)
    d2 = (x2 - x0) * (x2 - x1)
    if power == 2:
        return y0 / d0 + y1 / d1 + y2 / d2
    if power == 1:
        return (-y0 * (x1 + x2) / d0 - y1 * (x0 + x2) / d1 - y2 * (x0 + x1) / d2)
    return (y0 * x1 * x2 / d0 + y1 * x0 * x2 / d1 + y2 * x0 * x1 / d2)


def _suite_det(scope: Scope, trials: int, cfg: SamplerConfig,
               report: SuiteReport):
    ran = False
    for bi, (family, approach) in enumerate(_BLOCK_ENTRIES):
        if (family, approach) in _CLOSED_RULES:
            continue  # no catalogued determinant for the closed forms
        for di, d in enumerate(ADMISSIBLE_DELTAS[family]):
            eq = make_equation(family, d)
            if not scope.match_equation(eq.label):
                continue
            ran = True
            report.cases += 1
            for t in range(trials):
                sub = cfg.sub(bi, di, t)
                for attempt in range(cfg.max_retries):
                    try:
                        x, xa, xl, alpha, beta = _sample_builder_args(sub.sub(attempt))
                        m = _build(eq, approach, x, xa, xl, alpha, beta)
                        k = catalogue_builder_factor(family, d, approach, alpha, beta)
                        want = catalogue_det(family, d, approach, x, xa, xl,
                                             alpha, beta)
                        if m.scale(k).det() != want:
                            report.record(f"{eq.label} via {approach}", sub.seed,
                                          "determinant formula differs")
                        break
                    except (DomainViolation, DegenerateSlot):
                        continue
                else:
                    report.record(f"{eq.label} via {approach}", sub.seed,
                                  "retries exhausted")
    if not ran:
        raise EmptyScope("no determinant entries in scope")


def _suite_proof_oracle(scope: Scope, trials: int, cfg: SamplerConfig,
                        report: SuiteReport):
    ran = False
    for ci, (rule, regime) in enumerate(lax_combinations(scope)):
        ran = True
        report.cases += 1
        case = rule.case
        system = system_for_case(case, regime)
        for t in range(trials):
            sub = cfg.sub(ci, t)
            for attempt in range(cfg.max_retries):
                try:
                    point, params = sample_quad_point(case, regime, sub.sub(attempt))
                    if t % 2 == 0:  # alternate between off- and on-shell points
                        point = solve_central(system, case.approach, point, params)
                    q = assemble_quadruple(system, case.approach, point, params, rule)
                    r = residual(q)
                    pr = proof_residual(rule, system, point, params)
                    if r.entries() != pr.entries():
                        report.record(_case_tag(rule, regime), sub.seed,
                                      f"oracle differs at {_snapshot(point)}")
                    break
                except (DegenerateSlot, DomainViolation, SingularMatrix):
                    continue
            else:
                report.record(_case_tag(rule, regime), sub.seed, "retries exhausted")
    if not ran:
        raise EmptyScope("no lax cases in scope")


def _suite_leg_unit(scope: Scope, trials: int, cfg: SamplerConfig,
                    report: SuiteReport):
    ran = False
    rows = [eq for eq in all_equations() if eq.family in TYPE_A
            and not leg_spec(eq.family, eq.deltas, LegRole.A_LEG).additive]
    for ei, eq in enumerate(rows):
        if not scope.match_equation(eq.label):
            continue
        ran = True
        report.cases += 1
        spec = leg_spec(eq.family, eq.deltas, LegRole.A_LEG)
        for t in range(trials):
            sub = cfg.sub(ei, t)
            for attempt in range(cfg.max_retries):
                try:
                    vals = sample_point(
                        SamplerConfig(_mix(sub.seed, attempt), cfg.height_bound,
                                      frozenset(("x", "y", "a", "b")),
                                      {"x": spec.surd} if spec.surd else None),
                        ("x", "y", "a", "b"))
                    u = leg(eq.family, eq.deltas, LegRole.A_LEG,
                            vals["x"], vals["y"], vals["a"], vals["b"])
                    v = leg(eq.family, eq.deltas, LegRole.A_LEG,
                            vals["x"], vals["y"], vals["b"], vals["a"])
                    if u * v != 1:
                        report.record(eq.label, sub.seed,
                                      f"unit relation violated at {_snapshot(vals)}")
                    break
                except (DomainViolation, MissingSurd):
                    continue
            else:
                report.record(eq.label, sub.seed, "retries exhausted")
    if not ran:
        raise EmptyScope("no multiplicative type-A rows in scope")


def _suite_inverse_law(scope: Scope, trials: int, cfg: SamplerConfig,
                       report: SuiteReport):
    ran = False
    targets = [eq for eq in all_equations() if eq.family not in TYPE_B]
    for ei, eq in enumerate(targets):
        if not scope.match_equation(eq.label):
            continue
        ran = True
        report.cases += 1
        for t in range(trials):
            sub = cfg.sub(ei, t)
            for attempt in range(cfg.max_retries):
                try:
                    x, xa, xl, alpha, beta = _sample_builder_args(sub.sub(attempt))
                    m = build_lax_A(eq, x, xa, xl, alpha, beta)
                    if m.det() == 0:
                        continue  # degenerate sample (parameter coincidence)
                    w = build_lax_A(eq, x, xl, xa, alpha, beta.hat())
                    prod = w * m
                    if not (prod.e12 == 0 and prod.e21 == 0
                            and prod.e11 == prod.e22 and prod.e11 != 0):
                        report.record(eq.label, sub.seed,
                                      "reflected product is not scalar")
                        break
                    if eq.family in TYPE_C:
                        mb = build_lax_B(eq, x, xa, xl, alpha, beta)
                        if (invert(mb) * mb).entries() != (ONE, ZERO, ZERO, ONE):
                            report.record(eq.label, sub.seed,
                                          "inverse does not compose to identity")
                    break
                except (DomainViolation, SingularMatrix):
                    continue
            else:
                report.record(eq.label, sub.seed, "retries exhausted")
    if not ran:
        raise EmptyScope("no equations in scope")


def _suite_spectral_sweep(scope: Scope, trials: int, cfg: SamplerConfig,
                          report: SuiteReport):
    ran = False
    for ci, (rule, regime) in enumerate(lax_combinations(scope)):
        ran = True
        report.cases += 1
        case = rule.case
        system = system_for_case(case, regime)
        sub = cfg.sub(ci)
        for attempt in range(cfg.max_retries):
            try:
                point, params = sample_quad_point(case, regime, sub.sub(attempt))
                on = solve_central(system, case.approach, point, params)
                q = assemble_quadruple(system, case.approach, on, params, rule)
                if not residual(q).is_zero():
                    report.record(_case_tag(rule, regime), sub.seed,
                                  "baseline residual nonzero")
                    break
                done = 0
                k = 0
                while done < max(trials, 10) and k < 40 * max(trials, 10):
                    k += 1
                    pv = sample_point(
                        SamplerConfig(_mix(sub.seed, 1000 + k), cfg.height_bound,
                                      frozenset(("s",))), ("s",))["s"]
                    p2 = dict(params)
                    p2[SPECTRAL_KEY[case.approach]] = pv
                    try:
                        q2 = assemble_quadruple(system, case.approach, on, p2, rule)
                    except (DomainViolation, SingularMatrix):
                        continue
                    if not residual(q2).is_zero():
                        report.record(_case_tag(rule, regime), sub.seed,
                                      f"residual nonzero at spectral value"
                                      f" {format_scalar(pv)}")
                        break
                    done += 1
                break
            except (DegenerateSlot, DomainViolation, SingularMatrix):
                continue
        else:
            report.record(_case_tag(rule, regime), sub.seed, "retries exhausted")
    if not ran:
        raise EmptyScope("no lax cases in scope")


_SUITES: dict[str, Callable] = {
    "cafcc": _suite_cafcc,
    "symmetry": _suite_symmetry,
    "fourleg": _suite_fourleg,
    "lax_compat": _suite_lax_compat,
    "lax_offshell": _suite_lax_offshell,
    "det": _suite_det,
    "builder_vs_catalogue": _suite_builder_vs_catalogue,
    "proof_oracle": _suite_proof_oracle,
    "leg_unit": _suite_leg_unit,
    "inverse_law": _suite_inverse_law,
    "spectral_sweep": _suite_spectral_sweep,
}

SUITE_NAMES = tuple(_SUITES)


def run_suite(name: str, scope: Optional[Scope] = None,
              trials: Optional[int] = None,
              cfg: Optional[SamplerConfig] = None, **kwargs) -> SuiteReport:
    """Execute one named property suite and return its report."""
    if name not in _SUITES:
        raise EmptyScope(f"unknown suite {name!r}; choose from {SUITE_NAMES}")
    scope = scope or Scope()
    cfg = cfg or SamplerConfig()
    trials = trials if trials is not None else DEFAULT_TRIALS[name]
    report = SuiteReport(suite=name, trials=trials, seed=cfg.seed)
    t0 = time.perf_counter()
    _SUITES[name](scope, trials, cfg, report, **kwargs)
    report.wall_time = time.perf_counter() - t0
    return report


def run_all(scope: Optional[Scope] = None, cfg: Optional[SamplerConfig] = None,
            trials: Optional[int] = None, fault: int = 0) -> list:
    """The full battery; ``fault`` corrupts one centered equation in every
    consistency system (negative-control hook)."""
    reports = []
    for name in SUITE_NAMES:
        kwargs = {"fault": fault} if name == "cafcc" and fault else {}
        reports.append(run_suite(name, scope, trials, cfg, **kwargs))
    return reports
