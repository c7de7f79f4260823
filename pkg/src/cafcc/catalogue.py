"""The catalogue of face-centered quad equations and their leg functions.

Eight families are encoded: A3, A2 (type A), B3, B2, D1 (type B) and C3, C2,
C1 (type C).  Each is stored as an exact evaluation procedure over rationals,
not as an expanded coefficient table.  Every equation is affine-linear in the
four corner variables xa, xb, xc, xd; B3 is Laurent in the face variable x
(one power of x clears it), all others are polynomial of degree <= 2 in x.

Delta regimes select variants inside a family.  Exponent-style deltas only
ever take integer values; the one-half deltas of the 3-families appear only
as multiplicative coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Union

from .errors import DomainViolation, InadmissibleDeltas, MissingSurd
from .exactnum import (
    HALF,
    ONE,
    Scalar,
    SurdKind,
    SurdParam,
    ZERO,
    plain_value,
    scalar,
)


class Family(str, Enum):
    A3 = "A3"
    A2 = "A2"
    B3 = "B3"
    B2 = "B2"
    C3 = "C3"
    C2 = "C2"
    C1 = "C1"
    D1 = "D1"

    @property
    def kind(self) -> str:
        """Classification letter: face equations are 'A' or 'B', corner 'C'."""
        return _KIND[self]


_KIND = {
    Family.A3: "A", Family.A2: "A",
    Family.B3: "B", Family.B2: "B", Family.D1: "B",
    Family.C3: "C", Family.C2: "C", Family.C1: "C",
}

TYPE_A = frozenset({Family.A3, Family.A2})
TYPE_B = frozenset({Family.B3, Family.B2, Family.D1})
TYPE_C = frozenset({Family.C3, Family.C2, Family.C1})

#: Families whose parameters enter multiplicatively (nonzero required).
MULTIPLICATIVE_PARAM_FAMILIES = frozenset({Family.A3, Family.B3, Family.C3})


@dataclass(frozen=True, order=True)
class DeltaTuple:
    """Three delta slots; unused slots are fixed to 0."""

    d1: Scalar = ZERO
    d2: Scalar = ZERO
    d3: Scalar = ZERO

    def as_tuple(self):
        return (self.d1, self.d2, self.d3)

    def __str__(self):
        return ",".join(str(d) for d in self.as_tuple())


def deltas(d1=0, d2=0, d3=0) -> DeltaTuple:
    return DeltaTuple(scalar(d1), scalar(d2), scalar(d3))


_D3_SET = (deltas(0, 0, 0), deltas(1, 0, 0), deltas(HALF, 0, HALF), deltas(HALF, HALF, 0))
_D2_SET = (deltas(0, 0, 0), deltas(1, 0, 0), deltas(1, 0, 1), deltas(1, 1, 0))

ADMISSIBLE_DELTAS = {
    Family.A3: (deltas(0), deltas(1)),
    Family.A2: (deltas(0, 0), deltas(1, 0), deltas(1, 1)),
    Family.B3: _D3_SET,
    Family.C3: _D3_SET,
    Family.B2: _D2_SET,
    Family.C2: _D2_SET,
    Family.C1: (deltas(0, 0, 0),),
    Family.D1: (deltas(0, 0, 0),),
}

#: Number of delta slots that are meaningful per family (for labels/parsing).
DELTA_ARITY = {
    Family.A3: 1, Family.A2: 2,
    Family.B3: 3, Family.C3: 3, Family.B2: 3, Family.C2: 3,
    Family.C1: 0, Family.D1: 0,
}


@dataclass(frozen=True)
class ParamPair:
    """A two-component edge parameter."""

    first: Scalar
    second: Scalar

    def hat(self) -> "ParamPair":
        return ParamPair(self.second, self.first)


def param_pair(first, second) -> ParamPair:
    return ParamPair(scalar(first), scalar(second))


@dataclass(frozen=True)
class FacePoint:
    """A full argument set for one face-centered quad equation."""

    x: Scalar
    xa: Scalar
    xb: Scalar
    xc: Scalar
    xd: Scalar
    alpha: ParamPair
    beta: ParamPair


@dataclass(frozen=True)
class FaceEquation:
    """An evaluable face-centered quad polynomial (family + delta regime)."""

    family: Family
    deltas: DeltaTuple

    @property
    def laurent_offset(self) -> int:
        """Power of x clearing all 1/x terms (1 for B3, 0 otherwise)."""
        return 1 if self.family is Family.B3 else 0

    @property
    def label(self) -> str:
        return equation_label(self.family, self.deltas)

    def __call__(self, x, xa, xb, xc, xd, a1, a2, b1, b2) -> Scalar:
        return evaluate_raw(self, x, xa, xb, xc, xd, a1, a2, b1, b2)


def make_equation(family: Family, delta: DeltaTuple) -> FaceEquation:
    if delta not in ADMISSIBLE_DELTAS[family]:
        raise InadmissibleDeltas(f"{family.value} does not admit deltas ({delta})")
    return FaceEquation(family, delta)


def equation_label(family: Family, delta: DeltaTuple) -> str:
    arity = DELTA_ARITY[family]
    if arity == 0:
        return family.value
    if family is Family.A3:
        return f"A3:d={delta.d1}"
    parts = [str(d) for d in delta.as_tuple()[:arity]]
    return f"{family.value}:{','.join(parts)}"


def parse_equation(label: str) -> FaceEquation:
    """Inverse of :func:`equation_label` ("A3:d=1", "B3:1/2,0,1/2", "C1")."""
    name, _, rest = label.partition(":")
    try:
        family = Family(name)
    except ValueError:
        raise InadmissibleDeltas(f"unknown family {name!r}") from None
    if not rest:
        return make_equation(family, deltas())
    if family is Family.A3:
        if not rest.startswith("d="):
            raise InadmissibleDeltas(f"A3 regime must look like 'd=0', got {rest!r}")
        return make_equation(family, deltas(scalar(rest[2:])))
    parts = [scalar(p) for p in rest.split(",")]
    parts += [ZERO] * (3 - len(parts))
    return make_equation(family, DeltaTuple(*parts))


def all_equations():
    """Every admissible (family, deltas) pair, in catalogue order."""
    for family in Family:
        for delta in ADMISSIBLE_DELTAS[family]:
            yield make_equation(family, delta)


# ---------------------------------------------------------------------------
# Equation evaluators
# ---------------------------------------------------------------------------

def _pw(base: Scalar, flag: Scalar) -> Scalar:
    # (expr)^flag with flag in {0, 1}: a selector, not a numeric power
    return base if flag else ONE


def _ratdiff(u: Scalar, v: Scalar) -> Scalar:
    # u/v - v/u
    return u / v - v / u


def _eval_a3(d: DeltaTuple, x, xa, xb, xc, xd, a1, a2, b1, b2):
    dd = d.d1
    f = _ratdiff
    big = a1 * a2 / (b1 * b2) - b1 * b2 / (a1 * a2)
    acc = x * (f(b1, b2) * (xa * xb - xc * xd)
               + f(a1, a2) * (xa * xc - xb * xd)
               - big * (xa * xd - xb * xc))
    x2 = x * x
    acc += (f(a2, b1) * (xa * x2 - xb * xc * xd)
            - f(a2, b2) * (xb * x2 - xa * xc * xd)
            - f(a1, b1) * (xc * x2 - xa * xb * xd)
            + f(a1, b2) * (xd * x2 - xa * xb * xc))
    if dd:
        quarter = dd / 4
        acc -= quarter * f(a1, a2) * f(b1, b2) * big * x
        acc += quarter * (f(a1, b1) * f(a2, b2) * (f(a1, b2) * xa + f(a2, b1) * xd)
                          - f(a1, b2) * f(a2, b1) * (f(a1, b1) * xb + f(a2, b2) * xc))
    return acc


def _eval_b3(d: DeltaTuple, x, xa, xb, xc, xd, a1, a2, b1, b2):
    d1, d2, d3 = d.as_tuple()
    acc = xb * xc - xa * xd
    if d2:
        acc += d2 / 2 * _ratdiff(a2, a1) * _ratdiff(b1, b2)
        acc += d2 * (a1 / b2 * xa - a1 / b1 * xb - a2 / b2 * xc + a2 / b1 * xd) * x
    if d1:
        acc += d1 * (b2 / a1 * xa - b1 / a1 * xb - b2 / a2 * xc + b1 / a2 * xd) / x
    if d3:
        acc += d3 * (xa * xb * a2 * (xd / b2 - xc / b1)
                     + xc * xd * a1 * (xa / b1 - xb / b2)) / x
    return acc


def _eval_c3(d: DeltaTuple, x, xa, xb, xc, xd, a1, a2, b1, b2):
    d1, d2, d3 = d.as_tuple()
    coef2 = a2 * (b1 * xd - b2 * xc)
    if d3:
        coef2 -= d3 * (a2 * a2 * (b1 * xb - b2 * xa) + b1 * b2 * (b1 * xa - b2 * xb)) / a1
    inner = d1 * a1
    if d3:
        inner -= d3 * (b1 * b2 / a1) * xa * xb
    if d2:
        inner += d2 * (b1 * b2 / a1) * xc * xd
    coef1 = (a2 * a2 * (xb * xc - xa * xd) + b1 * b2 * (xa * xc - xb * xd)
             + a2 * _ratdiff(b2, b1) * inner)
    acc = coef2 * x * x + coef1 * x + a2 * xa * xb * (b2 * xd - b1 * xc)
    if d1:
        acc += d1 * a1 * (b1 * xb - b2 * xa + a2 * a2 * (xa / b2 - xb / b1))
    if d2:
        acc += d2 * ((a2 * a2 - b1 * b1) * (a2 * a2 - b2 * b2) / (2 * a2 * b1 * b2)
                     * (b2 * xd - b1 * xc)
                     + (xc * xd / a1) * (b1 * b2 * (b1 * xb - b2 * xa)
                                         + a2 * a2 * (b1 * xa - b2 * xb)))
    return acc


def _thetas(a1, a2, b1, b2):
    # pairwise differences of (a1, a2, b1, b2)
    return a1 - a2, a1 - b1, a1 - b2, a2 - b1, a2 - b2, b1 - b2


def _eval_a2(d: DeltaTuple, x, xa, xb, xc, xd, a1, a2, b1, b2):
    d1, d2, _ = d.as_tuple()
    t12, t13, t14, t23, t24, t34 = _thetas(a1, a2, b1, b2)
    x2 = x * x
    acc = (t23 * (xa * x2 - xb * xc * xd) - t24 * (xb * x2 - xa * xc * xd)
           - t13 * (xc * x2 - xa * xb * xd) + t14 * (xd * x2 - xa * xb * xc))
    acc += (t34 * (xa * xb - xc * xd) + t12 * (xa * xc - xb * xd)
            - (t13 + t24) * (xa * xd - xb * xc)) * x
    if d1:
        acc += d1 * (t14 * t23 * (t13 * xb + t24 * xc) * _pw(2 * x - t12 * t34, d2)
                     - t13 * t24 * (t14 * xa + t23 * xd) * _pw(2 * x + t12 * t34, d2))
        acc += d1 * x * t12 * t34 * (t13 + t24) * _pw(
            x + xa + xb + xc + xd - t12 * t12 - t13 * t23 - t14 * t24, d2)
    if d2:
        prod_t = t12 * t13 * t14 * t23 * t24 * t34
        acc += d2 * (xa * t13 * t14 * (t24 * t14 * t14 - t34 * xb)
                     - xb * t13 * t23 * (t14 * t13 * t13 - t12 * xd)
                     - xc * t14 * t24 * (t23 * t24 * t24 + t12 * xa)
                     + xd * t23 * t24 * (t13 * t23 * t23 + t34 * xc)
                     + (xa * xd * t13 * (-t24) + xb * xc * t23 * t14 + prod_t)
                     * (t13 + t24))
    return acc


def _eval_b2(d: DeltaTuple, x, xa, xb, xc, xd, a1, a2, b1, b2):
    d1, d2, d3 = d.as_tuple()
    t12, t13, t14, t23, t24, t34 = _thetas(a1, a2, b1, b2)
    e = 1 + int(d2)
    acc = ZERO
    if d1:
        acc += d1 * (t12 * (-t34) * _pw(t12 * t12 - t13 * t14 - t23 * t24, d2)
                     * _pw(-xa - xb - xc - xd, d3)
                     + xa * (x + t14 * _pw(-t14, d3)) ** e
                     - xb * (x + t13 * _pw(-t13, d3)) ** e
                     - xc * (x + t24 * _pw(-t24, d3)) ** e
                     + xd * (x + t23 * _pw(-t23, d3)) ** e)
    if d3:
        acc -= d3 * ((xa * xc - xb * xd) * t12 + (xa * xb - xc * xd) * t34
                     - xb * xc * (xa + xd) + xa * xd * (xb + xc))
    if d2:
        acc += 2 * d2 * t12 * t34 * x * x
    acc += (2 * d2 * x + d3) * t12 * t34 * (t13 + t24)
    sign = -ONE if d2 else ONE
    acc += (xa * xd - xb * xc) * _pw(-(t13 + t24), d3) * sign
    return acc


def _eval_c2(d: DeltaTuple, x, xa, xb, xc, xd, a1, a2, b1, b2):
    d1, d2, d3 = d.as_tuple()
    t12, t13, t14, t23, t24, t34 = _thetas(a1, a2, b1, b2)
    acc = (xd - xc) * (x * x + xa * xb)
    acc += t34 * (x * x - xa * xb) * _pw(t13 + t14, d3)
    if d3:
        acc += 2 * d3 * (t23 * xa - t24 * xb) * x * x
    mid = (xa + xb + 2 * d2 * t23 * t24) * (xc - xd)
    mid -= (xa - xb) * (t23 + t24) * _pw(t13 + t14, d3)
    if d3:
        mid += 2 * d3 * t34 * xa * xb
    acc += mid * x
    if d1:
        e = 1 + int(d2) + int(d3)
        acc += d1 * (xa * t24 - xb * t23 + t34 * (d2 * t23 * t24 - x)) * (
            t13 ** e + t14 ** e + 2 * d2 * xc * xd - (xc + xd) * _pw(t13 + t14, d2))
        acc += d1 * t23 * t24 * (xc - xd + t34 * _pw(t13 + t14 - 2 * x, d3)) * _pw(
            xa + xb - t34 * t34 - t23 * t24, d2)
    return acc


def _eval_c1(d: DeltaTuple, x, xa, xb, xc, xd, a1, a2, b1, b2):
    s = xc + xd
    return (s * x * x
            + (2 * (b1 + b2 - 2 * a2) - (xa + xb) * s) * x
            + 2 * (a2 * (xa + xb) - b2 * xa - b1 * xb)
            + xa * xb * s)


def _eval_d1(d: DeltaTuple, x, xa, xb, xc, xd, a1, a2, b1, b2):
    return xa - xb - xc + xd


_EVALUATORS: dict[Family, Callable] = {
    Family.A3: _eval_a3,
    Family.A2: _eval_a2,
    Family.B3: _eval_b3,
    Family.B2: _eval_b2,
    Family.C3: _eval_c3,
    Family.C2: _eval_c2,
    Family.C1: _eval_c1,
    Family.D1: _eval_d1,
}


def check_domain(eq: FaceEquation, x, a1, a2, b1, b2) -> None:
    if eq.family in MULTIPLICATIVE_PARAM_FAMILIES:
        if a1 == 0 or a2 == 0 or b1 == 0 or b2 == 0:
            raise DomainViolation(f"{eq.label} needs nonzero parameter components")
    if eq.family is Family.B3 and x == 0:
        raise DomainViolation("B3 needs a nonzero face value")


def evaluate_raw(eq: FaceEquation, x, xa, xb, xc, xd, a1, a2, b1, b2) -> Scalar:
    """Exact value of the equation polynomial at plain rational arguments."""
    check_domain(eq, x, a1, a2, b1, b2)
    return _EVALUATORS[eq.family](eq.deltas, x, xa, xb, xc, xd, a1, a2, b1, b2)


def evaluate(eq: FaceEquation, p: FacePoint) -> Scalar:
    return evaluate_raw(eq, p.x, p.xa, p.xb, p.xc, p.xd,
                        p.alpha.first, p.alpha.second, p.beta.first, p.beta.second)


# ---------------------------------------------------------------------------
# Leg functions
# ---------------------------------------------------------------------------

class LegRole(Enum):
    A_LEG = "a"
    B_LEG = "b"
    C_LEG = "c"


@dataclass(frozen=True)
class LegSpec:
    additive: bool
    surd: Optional[SurdKind]
    fn: Callable


def _safe_div(num, den):
    if den == 0:
        raise DomainViolation("leg denominator vanishes")
    return num / den


# Type-A legs ---------------------------------------------------------------

def _leg_a3_d1(x: SurdParam, y, a, b):
    xb_ = x.bar
    return _safe_div(a * a + b * b * xb_ * xb_ - 2 * a * b * xb_ * y,
                     b * b + a * a * xb_ * xb_ - 2 * a * b * xb_ * y)


def _leg_a3_d0(x, y, a, b):
    return _safe_div(b * x - a * y, a * x - b * y)


def _leg_a2_11(x: SurdParam, y, a, b):
    r = x.root
    return _safe_div((r + a - b) ** 2 - y, (r - a + b) ** 2 - y)


def _leg_a2_10(x, y, a, b):
    return _safe_div(-x + y + a - b, x - y + a - b)


def _leg_a2_00(x, y, a, b):
    return _safe_div(a - b, x - y)


# Type-B legs ---------------------------------------------------------------

def _leg_b3_hh0(x, y, a, b):
    return b * b + a * a * x * x - 2 * a * b * x * y


def _leg_b3_h0h(x: SurdParam, y, a, b):
    xb_ = x.bar
    return _safe_div(a * y - b * xb_, a * xb_ * y - b)


def _leg_b3_100(x, y, a, b):
    return b - a * x * y


def _leg_identity(x, y, a, b):
    return y


def _leg_b2_110(x, y, a, b):
    return (x + a - b) ** 2 - y


def _leg_b2_101(x: SurdParam, y, a, b):
    r = x.root
    return _safe_div(r + y + a - b, -r + y + a - b)


def _leg_b2_100(x, y, a, b):
    return x + y + a - b


# Type-C legs ---------------------------------------------------------------

def _leg_c3_hh0(x: SurdParam, y, a, b):
    xb_ = x.bar
    return _safe_div(a - b * xb_ * y, a * xb_ - b * y)


def _leg_c3_h0h(x, y, a, b):
    return _safe_div(a * a, b) + b * x * x - 2 * a * x * y


def _leg_c3_100(x, y, a, b):
    return x * y - _safe_div(a, b)


def _leg_c2_110(x: SurdParam, y, a, b):
    r = x.root
    return _safe_div(-r + y - a + b, r + y - a + b)


def _leg_c2_101(x, y, a, b):
    return (x - a + b) ** 2 - y


def _leg_c2_100(x, y, a, b):
    return x + y - a + b


def _leg_c2_000(x, y, a, b):
    return _safe_div(-(y + b), 2 * x)


_LEG_TABLE: dict[tuple[Family, DeltaTuple], LegSpec] = {
    (Family.A3, deltas(1)): LegSpec(False, SurdKind.HYPERBOLIC, _leg_a3_d1),
    (Family.A3, deltas(0)): LegSpec(False, None, _leg_a3_d0),
    (Family.A2, deltas(1, 1)): LegSpec(False, SurdKind.SQUARE, _leg_a2_11),
    (Family.A2, deltas(1, 0)): LegSpec(False, None, _leg_a2_10),
    (Family.A2, deltas(0, 0)): LegSpec(True, None, _leg_a2_00),
    (Family.B3, deltas(HALF, HALF, 0)): LegSpec(False, None, _leg_b3_hh0),
    (Family.B3, deltas(HALF, 0, HALF)): LegSpec(False, SurdKind.HYPERBOLIC, _leg_b3_h0h),
    (Family.B3, deltas(1, 0, 0)): LegSpec(False, None, _leg_b3_100),
    (Family.B3, deltas(0, 0, 0)): LegSpec(False, None, _leg_identity),
    (Family.B2, deltas(1, 1, 0)): LegSpec(False, None, _leg_b2_110),
    (Family.B2, deltas(1, 0, 1)): LegSpec(False, SurdKind.SQUARE, _leg_b2_101),
    (Family.B2, deltas(1, 0, 0)): LegSpec(False, None, _leg_b2_100),
    (Family.B2, deltas(0, 0, 0)): LegSpec(False, None, _leg_identity),
    (Family.D1, deltas(0, 0, 0)): LegSpec(True, None, _leg_identity),
    (Family.C3, deltas(HALF, HALF, 0)): LegSpec(False, SurdKind.HYPERBOLIC, _leg_c3_hh0),
    (Family.C3, deltas(HALF, 0, HALF)): LegSpec(False, None, _leg_c3_h0h),
    (Family.C3, deltas(1, 0, 0)): LegSpec(False, None, _leg_c3_100),
    (Family.C3, deltas(0, 0, 0)): LegSpec(False, None, _leg_identity),
    (Family.C2, deltas(1, 1, 0)): LegSpec(False, SurdKind.SQUARE, _leg_c2_110),
    (Family.C2, deltas(1, 0, 1)): LegSpec(False, None, _leg_c2_101),
    (Family.C2, deltas(1, 0, 0)): LegSpec(False, None, _leg_c2_100),
    (Family.C2, deltas(0, 0, 0)): LegSpec(True, None, _leg_c2_000),
    (Family.C1, deltas(0, 0, 0)): LegSpec(True, None, _leg_identity),
}


def paired_a_equation(eq: FaceEquation) -> FaceEquation:
    """The type-A partner whose a-legs a type-C equation borrows."""
    if eq.family is Family.C3:
        return make_equation(Family.A3, deltas(2 * eq.deltas.d2))
    if eq.family is Family.C2:
        return make_equation(Family.A2, deltas(eq.deltas.d1, eq.deltas.d2))
    if eq.family is Family.C1:
        return make_equation(Family.A2, deltas(0, 0))
    raise InadmissibleDeltas(f"{eq.label} has no paired type-A equation")


def leg_spec(family: Family, delta: DeltaTuple, role: LegRole) -> LegSpec:
    """Leg row for (family, regime); role must match the family's type,
    except type-C families which also expose their borrowed a-legs."""
    eq = make_equation(family, delta)
    if role is LegRole.A_LEG and family in TYPE_C:
        partner = paired_a_equation(eq)
        return _LEG_TABLE[(partner.family, partner.deltas)]
    expected = {"A": LegRole.A_LEG, "B": LegRole.B_LEG, "C": LegRole.C_LEG}[family.kind]
    if role is not expected:
        raise InadmissibleDeltas(
            f"{family.value} provides {expected.value}-legs, not {role.value}-legs")
    return _LEG_TABLE[(family, delta)]


def leg(family: Family, delta: DeltaTuple, role: LegRole,
        x: Union[Scalar, SurdParam], y, a, b) -> Scalar:
    """Exact value of one two-point leg function."""
    spec = leg_spec(family, delta, role)
    if spec.surd is not None:
        if not isinstance(x, SurdParam) or x.kind is not spec.surd:
            raise MissingSurd(
                f"{family.value} ({delta}) {role.value}-leg needs a "
                f"{spec.surd.value} surd in the first slot")
        return spec.fn(x, y, a, b)
    return spec.fn(plain_value(x), y, a, b)


def fourleg_residual(eq: FaceEquation, p: FacePoint,
                     x: Union[Scalar, SurdParam, None] = None) -> Scalar:
    """Residual of the four-leg form around the center vertex.

    Multiplicative families give (leg product) - 1, additive families the
    signed leg sum.  The slot assignment pairs (alpha2, beta1) and
    (alpha1, beta2) legs over (alpha2, beta2) and (alpha1, beta1) legs.
    Surd-bearing rows need the center supplied as a SurdParam (either via
    ``p.x`` holding the value with ``x`` giving the surd, or ``x`` alone).
    """
    center = x if x is not None else p.x
    a1, a2 = p.alpha.first, p.alpha.second
    b1, b2 = p.beta.first, p.beta.second
    fam, d = eq.family, eq.deltas
    if fam in TYPE_C:
        roles = (LegRole.A_LEG, LegRole.A_LEG, LegRole.C_LEG, LegRole.C_LEG)
    elif fam in TYPE_B:
        roles = (LegRole.B_LEG,) * 4
    else:
        roles = (LegRole.A_LEG,) * 4
    la = leg(fam, d, roles[0], center, p.xa, a2, b1)
    lb = leg(fam, d, roles[1], center, p.xb, a2, b2)
    lc = leg(fam, d, roles[2], center, p.xc, a1, b1)
    ld = leg(fam, d, roles[3], center, p.xd, a1, b2)
    if fam is Family.C1:
        # C1's own combination: the polynomial is (x-xa)(x-xb) times this;
        # the generic signed sum does not vanish on its solutions.
        return lc + ld - 2 * (la + lb)
    additive = leg_spec(fam, d, roles[2]).additive
    if additive:
        return la + ld - lb - lc
    if lb == 0 or lc == 0:
        raise DomainViolation("four-leg denominator vanishes")
    return la * ld / (lb * lc) - ONE
