"""Acceptance battery.

Each test drives one criterion at full strength and prints a single
pass/fail line.  Every comparison is exact rational equality; there are no
tolerances anywhere.
"""

import time

import pytest

from cafcc.catalogue import Family, deltas, make_equation
from cafcc.cube import assemble_system, inject_fault, parse_config
from cafcc.errors import DegenerateSlot, DomainViolation, SingularMatrix
from cafcc.exactnum import scalar
from cafcc.lax import (
    LAX_CASES,
    NormalizationRule,
    PropId,
    assemble_quadruple,
    build_lax_A,
    build_lax_B,
    catalogue_builder_factor,
    central_value,
    invert,
    normalization,
    residual,
    solve_central,
)
from cafcc.verify import (
    SamplerConfig,
    Scope,
    lax_combinations,
    run_suite,
    sample_quad_point,
    system_for_case,
)

SEED = 2026
CFG = SamplerConfig(seed=SEED)


def _report(name, ok, extra=""):
    line = f"ACCEPTANCE {name}: {'PASS' if ok else 'FAIL'}"
    if extra:
        line += f" ({extra})"
    print(line)
    assert ok


def test_criterion_1_consistency_battery():
    t0 = time.perf_counter()
    rep = run_suite("cafcc", trials=100, cfg=CFG)
    dt = time.perf_counter() - t0
    _report("1 consistency battery",
            rep.pass_ and rep.cases == 14 and dt < 120,
            f"{rep.cases} systems x 100 seeds in {dt:.1f}s")


def test_criterion_2_compatibility():
    on = run_suite("lax_compat", trials=50, cfg=CFG)
    off = run_suite("lax_offshell", trials=20, cfg=CFG)
    _report("2 zero curvature on-shell / nonzero off-shell",
            on.pass_ and off.pass_,
            f"{on.cases} case variants, 50 on + 20 off points each")


def test_criterion_3_proof_oracles():
    rep = run_suite("proof_oracle", trials=50, cfg=CFG)
    _report("3 residual equals closed form entrywise",
            rep.pass_, f"{rep.cases} case variants x 50 points")


def test_criterion_4_builder_catalogue_and_determinants():
    blocks = run_suite("builder_vs_catalogue", trials=50, cfg=CFG)
    dets = run_suite("det", trials=50, cfg=CFG)
    _report("4 builders reproduce catalogued matrices and determinants",
            blocks.pass_ and dets.pass_,
            f"{blocks.cases} matrix entries, {dets.cases} determinants")


def test_criterion_5_structural_identities():
    reports = [run_suite(name, trials=50, cfg=CFG)
               for name in ("symmetry", "fourleg", "leg_unit", "inverse_law")]
    # affine linearity and the cleared face degree are covered per family in
    # the catalogue tests; rerun them here through the library entry points
    from test_catalogue import (
        test_affine_linearity_second_difference,
        test_face_degree_at_most_two_after_clearing,
    )
    test_affine_linearity_second_difference()
    test_face_degree_at_most_two_after_clearing()
    _report("5 structural identities",
            all(r.pass_ for r in reports),
            "symmetries, four-leg forms, leg units, inverse law, affinity")


def test_criterion_6_spectral_sweep():
    rep = run_suite("spectral_sweep", trials=10, cfg=CFG)
    _report("6 residual stays zero across spectral values",
            rep.pass_, f"{rep.cases} case variants x 10 values")


def _mixed_normalization_fails(rule_good, rule_bad, regime) -> bool:
    """Normalize three matrices with one rule and the fourth with another;
    the on-shell residual must become exactly nonzero at a generic point."""
    case = rule_good.case
    system = system_for_case(case, regime)
    eq = system.corner_equation
    from cafcc.lax import WIRING_A, WIRING_B, Matrix2
    wiring = WIRING_A if case.approach == "A" else WIRING_B

    class Pair:
        def __init__(self, a, b):
            self.first, self.second = a, b

    for attempt in range(200):
        point, params = sample_quad_point(case, regime, CFG.sub(77, attempt))
        try:
            point = solve_central(system, case.approach, point, params)
            mats = []
            for i, (xv, xav, xlv, ak, bk) in enumerate(wiring):
                alpha = Pair(params[ak[0]], params[ak[1]])
                beta = Pair(params[bk[0]], params[bk[1]])
                from cafcc.exactnum import plain_value
                args = (plain_value(point[xv]), plain_value(point[xav]),
                        plain_value(point[xlv]), alpha, beta)
                m = (build_lax_A(eq, *args) if case.approach == "A"
                     else build_lax_B(eq, *args))
                rule = rule_bad if i == 3 else rule_good
                k = catalogue_builder_factor(eq.family, eq.deltas,
                                             case.approach, alpha, beta)
                if rule is None:
                    m = m.scale(k)
                else:
                    m = m.scale(k * normalization(rule, eq, point[xv],
                                                  point[xav], point[xlv],
                                                  alpha, beta))
                if case.approach == "B" and i >= 2:
                    m = invert(m)
                mats.append(m)
            r = mats[3] * mats[1] - mats[2] * mats[0]
            if r.is_zero():
                continue  # accidental cancellation; resample
            return True
        except (DegenerateSlot, DomainViolation, SingularMatrix):
            continue
    return False


def test_criterion_7_negative_controls():
    # single-equation faults break the consistency run
    fault_ok = True
    for label in ("A3:d=1", "ABC:A3,B3,C3:1/2,0,1/2", "ABC:A2,B2,C2:1,1,0",
                  "ABC:A2,D1,C1"):
        rep = run_suite("cafcc", Scope(systems=(label,)), trials=10,
                        cfg=CFG, fault=14)
        fault_ok = fault_ok and not rep.pass_

    # a wrong normalization variant on one matrix breaks compatibility
    mixes = [
        (NormalizationRule(PropId.P4_1, 1, 1), NormalizationRule(PropId.P4_1, 2, 1), deltas(0)),
        (NormalizationRule(PropId.P4_1, 1, 1), NormalizationRule(PropId.P4_1, 1, -1), deltas(0)),
        (NormalizationRule(PropId.P4_2, 1), NormalizationRule(PropId.P4_2, 2), deltas(1, 0, 0)),
        (NormalizationRule(PropId.P4_4, 1, 1), NormalizationRule(PropId.P4_4, 1, -1), deltas(1, 0, 0)),
        (NormalizationRule(PropId.P4_5, 1, 1), NormalizationRule(PropId.P4_5, 2, 1), deltas(1, 0)),
        (NormalizationRule(PropId.P4_6, 1, 1), NormalizationRule(PropId.P4_6, 1, -1),
         deltas(scalar(1, 2), 0, scalar(1, 2))),
        (NormalizationRule(PropId.P4_3), None, deltas(0, 0, 0)),
        (NormalizationRule(PropId.P4_7), None, deltas(0, 0, 0)),
        (NormalizationRule(PropId.P4_8, 1, 1), NormalizationRule(PropId.P4_8, 1, -1),
         deltas(1, 0, 1)),
    ]
    norm_ok = all(_mixed_normalization_fails(good, bad, regime)
                  for good, bad, regime in mixes)
    _report("7 negative controls", fault_ok and norm_ok,
            "equation faults and normalization mismatches both detected")
