import random

import pytest

from cafcc.catalogue import (
    ADMISSIBLE_DELTAS,
    Family,
    ParamPair,
    deltas,
    make_equation,
)
from cafcc.cube import Vertex, assemble_system, parse_config, solve_corner
from cafcc.errors import (
    DomainViolation,
    NoCatalogueEntry,
    NotTypeC,
    RegimeMismatch,
    SingularMatrix,
    TypeBNotAllowed,
)
from cafcc.exactnum import HALF, SurdKind, make_surd, scalar
from cafcc.lax import (
    LAX_CASES,
    MAT_IDENTITY,
    Matrix2,
    NormalizationRule,
    PropId,
    QUAD_VERTICES,
    SPECTRAL_KEY,
    assemble_quadruple,
    build_lax_A,
    build_lax_B,
    catalogue_builder_factor,
    catalogue_det,
    catalogue_lax,
    central_value,
    invert,
    normalization,
    proof_residual,
    residual,
    solve_central,
)
from cafcc.verify import (
    SamplerConfig,
    lax_combinations,
    sample_quad_point,
    system_for_case,
    Scope,
)


def rnd(rng):
    while True:
        v = scalar(rng.randint(-9, 9), rng.randint(1, 9))
        if v != 0:
            return v


def pair(rng):
    return ParamPair(rnd(rng), rnd(rng))


# ---------------------------------------------------------------------------
# matrix algebra
# ---------------------------------------------------------------------------

def test_invert():
    assert invert(MAT_IDENTITY).entries() == MAT_IDENTITY.entries()
    m = Matrix2(scalar(1), scalar(2), scalar(3), scalar(4))
    assert invert(m).entries() == (scalar(-2), scalar(1), scalar(3, 2),
                                   scalar(-1, 2))
    assert (invert(m) * m).entries() == MAT_IDENTITY.entries()
    with pytest.raises(SingularMatrix):
        invert(Matrix2(scalar(1), scalar(2), scalar(2), scalar(4)))


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------

def test_type_constraints():
    b3 = make_equation(Family.B3, deltas(0, 0, 0))
    a3 = make_equation(Family.A3, deltas(0))
    rng = random.Random(1)
    args = (rnd(rng), rnd(rng), rnd(rng), pair(rng), pair(rng))
    with pytest.raises(TypeBNotAllowed):
        build_lax_A(b3, *args)
    with pytest.raises(NotTypeC):
        build_lax_B(a3, *args)


def test_corner_transport_is_projective():
    # applying the matrix to (xc, 1) gives a vector parallel to (xd, 1)
    rng = random.Random(3)
    for fam, d in ((Family.A3, deltas(0)), (Family.C2, deltas(1, 0, 0)),
                   (Family.A2, deltas(1, 1)), (Family.C1, deltas())):
        eq = make_equation(fam, d)
        done = 0
        while done < 4:
            x, xa, xb, xc = (rnd(rng) for _ in range(4))
            alpha, beta = pair(rng), pair(rng)
            try:
                xd = solve_corner(eq, "d", x, {"a": xa, "b": xb, "c": xc},
                                  alpha, beta)
                m = build_lax_A(eq, x, xa, xb, alpha, beta)
            except Exception:
                continue
            f, g = m.apply(xc, scalar(1))
            if g == 0:
                continue
            assert f / g == xd
            done += 1


def test_face_transport_is_projective():
    rng = random.Random(5)
    for fam, d in ((Family.C2, deltas(1, 0, 0)), (Family.C3, deltas(1, 0, 0)),
                   (Family.C1, deltas())):
        eq = make_equation(fam, d)
        done = 0
        while done < 4:
            x, xa, xc, xd = (rnd(rng) for _ in range(4))
            alpha, beta = pair(rng), pair(rng)
            try:
                xb = solve_corner(eq, "b", x, {"a": xa, "c": xc, "d": xd},
                                  alpha, beta)
                m = build_lax_B(eq, x, xa, xc, alpha, beta)
            except Exception:
                continue
            f, g = m.apply(xd, scalar(1))
            if g == 0:
                continue
            assert f / g == xb
            done += 1


def test_reflected_builder_inverts():
    rng = random.Random(7)
    eq = make_equation(Family.A3, deltas(0))
    done = 0
    while done < 5:
        x, xa, xb = rnd(rng), rnd(rng), rnd(rng)
        alpha, beta = pair(rng), pair(rng)
        try:
            m = build_lax_A(eq, x, xa, xb, alpha, beta)
            if m.det() == 0:
                continue
            w = build_lax_A(eq, x, xb, xa, alpha, beta.hat())
        except DomainViolation:
            continue
        prod = w * m
        assert prod.e12 == 0 and prod.e21 == 0
        assert prod.e11 == prod.e22 != 0
        done += 1


# ---------------------------------------------------------------------------
# hard-coded catalogue
# ---------------------------------------------------------------------------

def test_catalogue_block_matches_scaled_builder():
    rng = random.Random(11)
    entries = [(Family.A3, "A"), (Family.C3, "A"), (Family.A2, "A"),
               (Family.C2, "A"), (Family.C3, "B"), (Family.C2, "B")]
    for fam, approach in entries:
        for d in ADMISSIBLE_DELTAS[fam]:
            eq = make_equation(fam, d)
            done = 0
            while done < 3:
                x, xa, xl = rnd(rng), rnd(rng), rnd(rng)
                alpha, beta = pair(rng), pair(rng)
                try:
                    if approach == "A":
                        m = build_lax_A(eq, x, xa, xl, alpha, beta)
                    else:
                        m = build_lax_B(eq, x, xa, xl, alpha, beta)
                    c = catalogue_lax(fam, d, approach, x, xa, xl, alpha, beta)
                except DomainViolation:
                    continue
                k = catalogue_builder_factor(fam, d, approach, alpha, beta)
                assert c.entries() == m.scale(k).entries()
                want = catalogue_det(fam, d, approach, x, xa, xl, alpha, beta)
                assert m.scale(k).det() == want
                done += 1


def test_x_squared_coefficient_entry():
    # the top-left quadratic coefficient of the first catalogued block
    alpha = ParamPair(scalar(2), scalar(3))
    beta = ParamPair(scalar(5), scalar(7))
    from cafcc.lax import catalogue_coefficients
    m2, _, _ = catalogue_coefficients(Family.A3, deltas(0), "A",
                                      scalar(1), scalar(1), alpha, beta)
    assert m2.e11 == 1764  # 4*2*3*5*7*(5/2 - 2/5)


def test_closed_forms_match_normalized_builders():
    rng = random.Random(13)
    eq = make_equation(Family.C1, deltas())
    for approach, prop in (("A", PropId.P4_3), ("B", PropId.P4_7)):
        rule = NormalizationRule(prop)
        done = 0
        while done < 3:
            x, xa, xl = rnd(rng), rnd(rng), rnd(rng)
            alpha, beta = pair(rng), pair(rng)
            try:
                if approach == "A":
                    m = build_lax_A(eq, x, xa, xl, alpha, beta)
                else:
                    m = build_lax_B(eq, x, xa, xl, alpha, beta)
                m = m.scale(normalization(rule, eq, x, xa, xl, alpha, beta))
                c = catalogue_lax(Family.C1, deltas(), approach, x, xa, xl,
                                  alpha, beta)
            except DomainViolation:
                continue
            assert m.entries() == c.entries()
            done += 1


def test_no_catalogue_entry():
    rng = random.Random(17)
    with pytest.raises(NoCatalogueEntry):
        catalogue_lax(Family.B3, deltas(0, 0, 0), "A", rnd(rng), rnd(rng),
                      rnd(rng), pair(rng), pair(rng))
    with pytest.raises(NoCatalogueEntry):
        catalogue_det(Family.C1, deltas(), "A", rnd(rng), rnd(rng), rnd(rng),
                      pair(rng), pair(rng))


def test_surd_factorization_of_face_transport_determinant():
    # at the half/0/half regime the last determinant factor splits over the
    # two square-root branches of the xc variable
    rng = random.Random(19)
    d = deltas(HALF, 0, HALF)
    done = 0
    while done < 5:
        seed = rnd(rng)
        if abs(seed) == 1:
            continue
        xc = make_surd(SurdKind.HYPERBOLIC, seed)
        x, xa = rnd(rng), rnd(rng)
        alpha, beta = pair(rng), pair(rng)
        a1, b1 = alpha.first, beta.first
        lhs = ((b1 * x - a1 * (xc.value - xc.root))
               * (b1 * x - a1 * (xc.value + xc.root)))
        rhs = -2 * a1 * b1 * (x * xc.value - HALF * a1 / b1
                              - HALF * (b1 / a1) * x * x)
        assert lhs == rhs
        # and the split factor is the last factor of the catalogued form
        det = catalogue_det(Family.C3, d, "B", x, xa, xc.value, alpha, beta)
        other = ((alpha.second ** 2 - beta.second ** 2)
                 * ((alpha.second * x - b1 * xa) * (alpha.second * xa - b1 * x)))
        assert det * (-2 * a1 * b1) == other * lhs
        done += 1


# ---------------------------------------------------------------------------
# normalization rules
# ---------------------------------------------------------------------------

def test_catalogued_normalization_value():
    rule = NormalizationRule(PropId.P4_1, variant=1, epsilon=1)
    eq = make_equation(Family.A3, deltas(0))
    val = normalization(rule, eq, scalar(1), scalar(2), scalar(3),
                        ParamPair(scalar(2), scalar(3)),
                        ParamPair(scalar(5), scalar(7)))
    assert val == scalar(1) / ((2 - 5) * (2 + 7) * (3 * 1 - 5 * 2)
                               * (7 * 1 - 3 * 3))


def test_regime_mismatch():
    rule = NormalizationRule(PropId.P4_4)
    eq = make_equation(Family.C2, deltas(1, 1, 0))
    rng = random.Random(23)
    with pytest.raises(RegimeMismatch):
        normalization(rule, eq, rnd(rng), rnd(rng), rnd(rng), pair(rng),
                      pair(rng))
    with pytest.raises(RegimeMismatch):
        NormalizationRule(PropId.P4_4, variant=2)


def test_exponent_zero_gives_unit_factor():
    rule = NormalizationRule(PropId.P4_6)
    eq = make_equation(Family.C3, deltas(1, 0, 0))
    rng = random.Random(29)
    assert normalization(rule, eq, rnd(rng), rnd(rng), rnd(rng), pair(rng),
                         pair(rng)) == 1


# ---------------------------------------------------------------------------
# quadruples
# ---------------------------------------------------------------------------

def _clean_quad(case, regime, cfg, rule=None, onshell=True):
    system = system_for_case(case, regime)
    for attempt in range(100):
        point, params = sample_quad_point(case, regime, cfg.sub(attempt))
        try:
            if onshell:
                point = solve_central(system, case.approach, point, params)
            q = assemble_quadruple(system, case.approach, point, params, rule)
            return system, point, params, q
        except Exception:
            continue
    raise AssertionError("no clean sample")


def test_every_case_compatible_and_oracle_exact():
    cfg = SamplerConfig(seed=101)
    for ci, (rule, regime) in enumerate(lax_combinations(Scope())):
        case = rule.case
        system, point, params, q = _clean_quad(case, regime, cfg.sub(ci), rule)
        r = residual(q)
        assert r.is_zero(), f"{rule.prop.value} {regime}"
        assert r.entries() == proof_residual(rule, system, point, params).entries()
        # off-shell the residual is nonzero and still matches the oracle
        system, point, params, q = _clean_quad(case, regime, cfg.sub(ci, 1),
                                               rule, onshell=False)
        if central_value(system, case.approach, point, params) != 0:
            r = residual(q)
            assert r.entries() == proof_residual(rule, system, point,
                                                 params).entries()
            if rule.prop is not PropId.P4_7:
                assert r.det() == 0  # cofactor matrices have rank at most one


def test_approach_b_requires_corner_type_c():
    system = assemble_system(parse_config("A3:d=0"))
    rng = random.Random(31)
    point = {v: rnd(rng) for v in QUAD_VERTICES["B"]}
    params = {k: rnd(rng) for k in
              ("a1", "a2", "b1", "b2", "g1", "g2")}
    with pytest.raises(NotTypeC):
        assemble_quadruple(system, "B", point, params)


def test_spectral_parameter_absent_from_central_equation():
    cfg = SamplerConfig(seed=7)
    case = LAX_CASES[PropId.P4_6]
    regime = deltas(1, 0, 0)
    system, point, params, q = _clean_quad(case, regime, cfg,
                                           NormalizationRule(PropId.P4_6))
    base = central_value(system, "B", point, params)
    p2 = dict(params)
    p2[SPECTRAL_KEY["B"]] = params[SPECTRAL_KEY["B"]] + 1
    assert central_value(system, "B", point, p2) == base
    q2 = assemble_quadruple(system, "B", point, p2,
                            NormalizationRule(PropId.P4_6))
    assert residual(q2).is_zero()
