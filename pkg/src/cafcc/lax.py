"""2x2 transition matrices and their compatibility machinery.

Two generic constructions turn a face-centered quad equation into a 2x2
matrix: the corner-transport form (solve for the d corner as a function of
the c corner) and, for type-C equations, the face-transport form (solve for
the b corner as a function of the d corner).  Four such matrices wired
around the cube satisfy L4 L2 - L3 L1 = 0 exactly on solutions of a central
face equation, once each matrix is rescaled by the right normalization
factor.  This module also hard-codes a catalogue of coefficient matrices,
closed-form determinants, and closed-form residual expressions that serve
as independent oracles for the generic builders.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Optional, Union

from .catalogue import (
    DeltaTuple,
    FaceEquation,
    Family,
    TYPE_B,
    TYPE_C,
    deltas,
    evaluate_raw,
    make_equation,
)
from .cube import EquationSystem, Vertex, solve_corner
from .errors import (
    DegenerateSlot,
    DomainViolation,
    MissingSurd,
    NoCatalogueEntry,
    NotTypeC,
    RegimeMismatch,
    SingularMatrix,
    TypeBNotAllowed,
)
from .exactnum import (
    HALF,
    ONE,
    Scalar,
    SurdKind,
    SurdParam,
    ZERO,
    format_scalar,
    plain_value,
    scalar,
)


@dataclass(frozen=True)
class Matrix2:
    e11: Scalar
    e12: Scalar
    e21: Scalar
    e22: Scalar

    def __mul__(self, other: "Matrix2") -> "Matrix2":
        return Matrix2(
            self.e11 * other.e11 + self.e12 * other.e21,
            self.e11 * other.e12 + self.e12 * other.e22,
            self.e21 * other.e11 + self.e22 * other.e21,
            self.e21 * other.e12 + self.e22 * other.e22,
        )

    def __sub__(self, other: "Matrix2") -> "Matrix2":
        return Matrix2(self.e11 - other.e11, self.e12 - other.e12,
                       self.e21 - other.e21, self.e22 - other.e22)

    def scale(self, k: Scalar) -> "Matrix2":
        return Matrix2(k * self.e11, k * self.e12, k * self.e21, k * self.e22)

    def det(self) -> Scalar:
        return self.e11 * self.e22 - self.e12 * self.e21

    def is_zero(self) -> bool:
        return self.e11 == 0 and self.e12 == 0 and self.e21 == 0 and self.e22 == 0

    def entries(self):
        return (self.e11, self.e12, self.e21, self.e22)

    def apply(self, f: Scalar, g: Scalar):
        """Image of the projective vector (f, g)."""
        return (self.e11 * f + self.e12 * g, self.e21 * f + self.e22 * g)

    def to_lists(self):
        return [[format_scalar(self.e11), format_scalar(self.e12)],
                [format_scalar(self.e21), format_scalar(self.e22)]]


MAT_ZERO = Matrix2(ZERO, ZERO, ZERO, ZERO)
MAT_IDENTITY = Matrix2(ONE, ZERO, ZERO, ONE)


def mat(rows) -> Matrix2:
    (a, b), (c, d) = rows
    return Matrix2(scalar(a), scalar(b), scalar(c), scalar(d))


def outer(u, v) -> Matrix2:
    return Matrix2(u[0] * v[0], u[0] * v[1], u[1] * v[0], u[1] * v[1])


def invert(m: Matrix2) -> Matrix2:
    d = m.det()
    if d == 0:
        raise SingularMatrix("determinant is zero")
    return Matrix2(m.e22 / d, -m.e12 / d, -m.e21 / d, m.e11 / d)


# ---------------------------------------------------------------------------
# Generic builders
# ---------------------------------------------------------------------------

def build_lax_A(eq: FaceEquation, x, xa, xb, alpha, beta) -> Matrix2:
    """Corner-transport matrix: maps the c-corner vector to the d-corner
    vector of ``eq`` (unnormalized).  Valid for type-A and type-C equations."""
    if eq.family in TYPE_B:
        raise TypeBNotAllowed(f"{eq.label} is type-B")
    a1, a2, b1, b2 = alpha.first, alpha.second, beta.first, beta.second

    def f(c, d):
        return evaluate_raw(eq, x, xa, xb, c, d, a1, a2, b1, b2)

    f00 = f(ZERO, ZERO)
    f10 = f(ONE, ZERO)
    f01 = f(ZERO, ONE)
    f11 = f(ONE, ONE)
    return Matrix2(f10 - f00, f00, f10 - f00 + f01 - f11, f00 - f01)


def build_lax_B(eq: FaceEquation, x, xa, xc, alpha, beta) -> Matrix2:
    """Face-transport matrix: maps the d-corner vector to the b-corner
    vector of a type-C equation (unnormalized)."""
    if eq.family not in TYPE_C:
        raise NotTypeC(f"{eq.label} is not type-C")
    a1, a2, b1, b2 = alpha.first, alpha.second, beta.first, beta.second

    def g(b, d):
        return evaluate_raw(eq, x, xa, b, xc, d, a1, a2, b1, b2)

    g00 = g(ZERO, ZERO)
    g10 = g(ONE, ZERO)
    g01 = g(ZERO, ONE)
    g11 = g(ONE, ONE)
    return Matrix2(g01 - g00, g00, g10 - g00 + g01 - g11, g00 - g10)


# ---------------------------------------------------------------------------
# The compatibility cases
# ---------------------------------------------------------------------------

class PropId(str, Enum):
    P4_1 = "P4.1"   # A3 central, matrices from A3 itself
    P4_2 = "P4.2"   # A3 central, matrices from C3
    P4_3 = "P4.3"   # A2(0,0) central, matrices from C1 (closed form)
    P4_4 = "P4.4"   # A2 central, matrices from C2
    P4_5 = "P4.5"   # A2 central, matrices from A2 itself
    P4_6 = "P4.6"   # B3 central, matrices from C3
    P4_7 = "P4.7"   # D1 central, matrices from C1 (closed form)
    P4_8 = "P4.8"   # B2 central, matrices from C2


@dataclass(frozen=True)
class LaxCase:
    prop: PropId
    approach: str                 # "A" or "B"
    builder_family: Family
    central_family: Family
    regimes: tuple                # admissible builder-equation delta tuples
    variants: tuple
    epsilons: tuple
    surd_kind: Optional[SurdKind]  # needed on the shared third slot, if any
    surd_regimes: tuple = ()       # regimes that actually use the surd


_D3_NORM = (deltas(0, 0, 0), deltas(1, 0, 0), deltas(HALF, 0, HALF))
_D2_NORM = (deltas(0, 0, 0), deltas(1, 0, 0), deltas(1, 0, 1))

LAX_CASES: dict[PropId, LaxCase] = {
    PropId.P4_1: LaxCase(PropId.P4_1, "A", Family.A3, Family.A3,
                         (deltas(0),), (1, 2), (1, -1), None),
    PropId.P4_2: LaxCase(PropId.P4_2, "A", Family.C3, Family.A3,
                         _D3_NORM, (1, 2), (1,), None),
    PropId.P4_3: LaxCase(PropId.P4_3, "A", Family.C1, Family.A2,
                         (deltas(0, 0, 0),), (1,), (1,), None),
    PropId.P4_4: LaxCase(PropId.P4_4, "A", Family.C2, Family.A2,
                         _D2_NORM, (1,), (1, -1), None),
    PropId.P4_5: LaxCase(PropId.P4_5, "A", Family.A2, Family.A2,
                         (deltas(0, 0), deltas(1, 0)), (1, 2), (1, -1), None),
    PropId.P4_6: LaxCase(PropId.P4_6, "B", Family.C3, Family.B3,
                         _D3_NORM, (1,), (1, -1), SurdKind.HYPERBOLIC,
                         (deltas(HALF, 0, HALF),)),
    PropId.P4_7: LaxCase(PropId.P4_7, "B", Family.C1, Family.D1,
                         (deltas(0, 0, 0),), (1,), (1,), None),
    PropId.P4_8: LaxCase(PropId.P4_8, "B", Family.C2, Family.B2,
                         _D2_NORM, (1,), (1, -1), SurdKind.SQUARE,
                         (deltas(1, 0, 1),)),
}


@dataclass(frozen=True)
class NormalizationRule:
    """Which catalogued normalization to apply: case id, variant, and the
    sign/branch selector where the case admits one."""

    prop: PropId
    variant: int = 1
    epsilon: int = 1

    def __post_init__(self):
        case = LAX_CASES[self.prop]
        if self.variant not in case.variants:
            raise RegimeMismatch(f"{self.prop.value} has no variant {self.variant}")
        if self.epsilon not in (1, -1):
            raise RegimeMismatch("epsilon must be +1 or -1")

    @property
    def case(self) -> LaxCase:
        return LAX_CASES[self.prop]


def _surd_bar(v, kind: SurdKind, epsilon: int, what: str) -> Scalar:
    if not isinstance(v, SurdParam) or v.kind is not kind:
        raise MissingSurd(f"{what} needs a {kind.value} surd parameter")
    return v.value + epsilon * v.root


def normalization(rule: NormalizationRule, eq: FaceEquation, x, xa, xlast,
                  alpha, beta) -> Scalar:
    """The scalar factor for one matrix with the given builder arguments.

    ``xlast`` is the b-slot argument for corner-transport cases and the
    c-slot argument for face-transport cases; it carries the surd for the
    rules that need one.
    """
    case = rule.case
    if eq.family is not case.builder_family or eq.deltas not in case.regimes:
        raise RegimeMismatch(
            f"{rule.prop.value} does not cover {eq.label}")
    a1, a2, b1, b2 = alpha.first, alpha.second, beta.first, beta.second
    e = rule.epsilon
    xv = plain_value(x)
    xav = plain_value(xa)
    xlv = plain_value(xlast)
    d1, d2, d3 = eq.deltas.as_tuple()

    if rule.prop is PropId.P4_1:
        head = (a1 - e * b1) * (a1 + e * b2)
        if rule.variant == 1:
            den = head * (a2 * xv - b1 * xav) * (b2 * xv - a2 * xlv)
        else:
            den = head * (a2 * xv - b2 * xlv) * (b1 * xv - a2 * xav)
    elif rule.prop is PropId.P4_2:
        if rule.variant == 1:
            den = (b1 * xv - a2 * xav) * (b2 * xlv - a2 * xv)
        else:
            den = (b1 * xav - a2 * xv) * (b2 * xv - a2 * xlv)
    elif rule.prop is PropId.P4_3:
        den = (xv - xav) * (xv - xlv)
    elif rule.prop is PropId.P4_4:
        den = (xv - xav - e * d1 * (a2 - b1)) * (xv - xlv + e * d1 * (a2 - b2))
    elif rule.prop is PropId.P4_5:
        e1 = 1 if rule.variant == 1 else -1
        head = a1 + scalar(e1 - 1, 2) * b1 - scalar(e1 + 1, 2) * b2
        den = head * (xav - xv - e * d1 * (a2 - b1)) * (xlv - xv + e * d1 * (a2 - b2))
    elif rule.prop is PropId.P4_6:
        if d3 == 0:
            return ONE
        bar = _surd_bar(xlast, SurdKind.HYPERBOLIC, e, f"{rule.prop.value} normalization")
        den = (b1 * xv - a1 * bar) ** int(2 * d3)
    elif rule.prop is PropId.P4_7:
        den = xv - xav
    elif rule.prop is PropId.P4_8:
        if d3 == 0:
            return ONE
        if not isinstance(xlast, SurdParam) or xlast.kind is not SurdKind.SQUARE:
            raise MissingSurd(f"{rule.prop.value} normalization needs a square surd")
        den = (xv + b1 - a1 + e * xlast.root) ** int(d3)
    else:  # pragma: no cover
        raise RegimeMismatch(f"unknown rule {rule.prop}")
    if den == 0:
        raise DomainViolation(f"{rule.prop.value} normalization factor is singular")
    return ONE / den


# ---------------------------------------------------------------------------
# Quadruple assembly
# ---------------------------------------------------------------------------

#: Builder arguments per matrix: (x, xa, xlast, alpha keys, beta keys).
WIRING_A = (
    (Vertex.XA, Vertex.ZW, Vertex.YA, ("b1", "g2"), ("a2", "g1")),
    (Vertex.XC, Vertex.ZW, Vertex.YC, ("b1", "g2"), ("a1", "g1")),
    (Vertex.YA, Vertex.XA, Vertex.ZW, ("b1", "g1"), ("g2", "a2")),
    (Vertex.YC, Vertex.XC, Vertex.ZW, ("b1", "g1"), ("g2", "a1")),
)
WIRING_B = (
    (Vertex.XB, Vertex.YB, Vertex.ZN, ("b2", "g2"), ("g1", "a2")),
    (Vertex.XA, Vertex.YA, Vertex.ZN, ("b1", "g2"), ("g1", "a2")),
    (Vertex.YB, Vertex.XB, Vertex.ZN, ("b2", "g1"), ("g2", "a2")),
    (Vertex.YA, Vertex.XA, Vertex.ZN, ("b1", "g1"), ("g2", "a2")),
)

QUAD_VERTICES = {
    "A": (Vertex.ZW, Vertex.XA, Vertex.XC, Vertex.YA, Vertex.YC),
    "B": (Vertex.ZN, Vertex.XA, Vertex.XB, Vertex.YA, Vertex.YB),
}

#: Central equation per approach: center vertex, its argument vertices, and
#: which parameter components it carries.
CENTRAL = {
    "A": (Vertex.ZW, (Vertex.YA, Vertex.XA, Vertex.YC, Vertex.XC), ("a1", "a2"), ("g1", "g2")),
    "B": (Vertex.ZN, (Vertex.YA, Vertex.YB, Vertex.XA, Vertex.XB), ("g1", "g2"), ("b1", "b2")),
}

SPECTRAL_KEY = {"A": "b1", "B": "a2"}


@dataclass(frozen=True)
class LaxQuadruple:
    L1: Matrix2
    L2: Matrix2
    L3: Matrix2
    L4: Matrix2
    approach: str
    system: str
    central: FaceEquation
    spectral: Scalar


class _Pair:
    __slots__ = ("first", "second")

    def __init__(self, first, second):
        self.first = first
        self.second = second


def builder_equation(system: EquationSystem, approach: str) -> FaceEquation:
    eq = system.corner_equation
    if approach == "B" and eq.family not in TYPE_C:
        raise NotTypeC("face-transport assembly needs type-C corner equations")
    return eq


def central_equation(system: EquationSystem, approach: str) -> FaceEquation:
    center = CENTRAL[approach][0]
    return system.by_center(center).equation


def assemble_quadruple(system: EquationSystem, approach: str,
                       point: Mapping[Vertex, Union[Scalar, SurdParam]],
                       params: Mapping[str, Scalar],
                       norm: Optional[NormalizationRule] = None) -> LaxQuadruple:
    """The four transition matrices around the cube, optionally normalized.

    ``point`` assigns the five vertices of ``QUAD_VERTICES[approach]``;
    surd-carrying values stay as SurdParam so normalizations can see the
    root.  ``params`` assigns the six parameter components; the spectral one
    (b1 for corner transport, a2 for face transport) only enters the
    matrices, never the central equation.
    """
    if approach not in ("A", "B"):
        raise ValueError("approach must be 'A' or 'B'")
    eq = builder_equation(system, approach)
    wiring = WIRING_A if approach == "A" else WIRING_B
    mats = []
    for i, (xv, xav, xlv, akeys, bkeys) in enumerate(wiring):
        alpha = _Pair(params[akeys[0]], params[akeys[1]])
        beta = _Pair(params[bkeys[0]], params[bkeys[1]])
        x = plain_value(point[xv])
        xa = plain_value(point[xav])
        xl = plain_value(point[xlv])
        if approach == "A":
            m = build_lax_A(eq, x, xa, xl, alpha, beta)
        else:
            m = build_lax_B(eq, x, xa, xl, alpha, beta)
        if norm is not None:
            # the catalogued factors rescale the catalogued coefficient
            # matrices; bridge from the raw builder output first
            k = catalogue_builder_factor(eq.family, eq.deltas, approach,
                                         alpha, beta)
            m = m.scale(k * normalization(norm, eq, point[xv], point[xav],
                                          point[xlv], alpha, beta))
        if approach == "B" and i >= 2:
            m = invert(m)
        mats.append(m)
    return LaxQuadruple(mats[0], mats[1], mats[2], mats[3], approach,
                        system.label, central_equation(system, approach),
                        params[SPECTRAL_KEY[approach]])


def residual(q: LaxQuadruple) -> Matrix2:
    """L4 L2 - L3 L1; the zero matrix exactly on central solutions."""
    return q.L4 * q.L2 - q.L3 * q.L1


def central_value(system: EquationSystem, approach: str,
                  point: Mapping[Vertex, Union[Scalar, SurdParam]],
                  params: Mapping[str, Scalar]) -> Scalar:
    center, args, akeys, bkeys = CENTRAL[approach]
    eq = central_equation(system, approach)
    a, b, c, d = (plain_value(point[v]) for v in args)
    return evaluate_raw(eq, plain_value(point[center]), a, b, c, d,
                        params[akeys[0]], params[akeys[1]],
                        params[bkeys[0]], params[bkeys[1]])


def solve_central(system: EquationSystem, approach: str, point: dict,
                  params: Mapping[str, Scalar]) -> dict:
    """Return a copy of ``point`` with the central equation's d-slot vertex
    replaced by the exact solution (the on-shell point)."""
    center, args, akeys, bkeys = CENTRAL[approach]
    eq = central_equation(system, approach)
    known = {s: plain_value(point[v]) for s, v in zip(("a", "b", "c"), args[:3])}
    target = args[3]
    sol = solve_corner(eq, "d", plain_value(point[center]), known,
                       _Pair(params[akeys[0]], params[akeys[1]]),
                       _Pair(params[bkeys[0]], params[bkeys[1]]))
    shifted = dict(point)
    shifted[target] = sol
    return shifted


# ---------------------------------------------------------------------------
# Closed-form residual oracles
# ---------------------------------------------------------------------------

def proof_residual(rule: NormalizationRule, system: EquationSystem,
                   point: Mapping[Vertex, Union[Scalar, SurdParam]],
                   params: Mapping[str, Scalar]) -> Matrix2:
    """The closed form for L4 L2 - L3 L1 under ``rule``.

    Valid on- and off-shell: the central-equation value appears as an
    overall factor, so the expression vanishes exactly on solutions.  Signs
    are normalized so this equals residual() exactly under the conventions
    of assemble_quadruple.
    """
    case = rule.case
    eq = builder_equation(system, case.approach)
    if eq.family is not case.builder_family or eq.deltas not in case.regimes:
        raise RegimeMismatch(f"{rule.prop.value} does not cover {eq.label}")
    d1, d2, d3 = eq.deltas.as_tuple()
    a1, a2 = params["a1"], params["a2"]
    b1, b2 = params["b1"], params["b2"]
    g1, g2 = params["g1"], params["g2"]
    e = rule.epsilon
    cval = central_value(system, case.approach, point, params)

    if case.approach == "A":
        zw = plain_value(point[Vertex.ZW])
        xa = plain_value(point[Vertex.XA])
        xc = plain_value(point[Vertex.XC])
        ya = plain_value(point[Vertex.YA])
        yc = plain_value(point[Vertex.YC])
    else:
        zn = point[Vertex.ZN]
        znv = plain_value(zn)
        xa = plain_value(point[Vertex.XA])
        xb = plain_value(point[Vertex.XB])
        ya = plain_value(point[Vertex.YA])
        yb = plain_value(point[Vertex.YB])

    if rule.prop is PropId.P4_1:
        pref = 16 * a1 * a2 * g1 * g2 / ((b1 + e * g1) * (b1 - e * g2))
        if rule.variant == 1:
            m = Matrix2(-g1 * g2 * zw, b1 * g1 * zw * zw, -b1 * g2, b1 * b1 * zw)
            den = ((a1 * zw - g2 * xc) * (a2 * zw - g2 * xa)
                   * (g1 * zw - a2 * ya) * (g1 * zw - a1 * yc))
        else:
            m = Matrix2(-b1 * b1 * zw, b1 * g2 * zw * zw, -b1 * g1, g1 * g2 * zw)
            den = ((a1 * zw - g1 * yc) * (a2 * zw - g1 * ya)
                   * (g2 * zw - a2 * xa) * (g2 * zw - a1 * xc))
        return m.scale(-pref * cval / den)

    if rule.prop is PropId.P4_2:
        pref = a1 * a2 * g1 * g2
        if rule.variant == 1:
            m = Matrix2(-zw, d1 * b1 / g2 + d3 * (g2 / b1) * zw * zw, ZERO, ZERO)
            den = ((a1 * zw - g1 * yc) * (a2 * zw - g1 * ya)
                   * (g2 * zw - a2 * xa) * (g2 * zw - a1 * xc))
        else:
            m = Matrix2(ZERO, d1 * b1 / g1 + d3 * (g1 / b1) * zw * zw, ZERO, zw)
            den = ((a1 * zw - g2 * xc) * (a2 * zw - g2 * xa)
                   * (g1 * zw - a2 * ya) * (g1 * zw - a1 * yc))
        return m.scale(-pref * cval / den)

    if rule.prop is PropId.P4_3:
        den = (zw - xa) * (zw - xc) * (zw - ya) * (zw - yc)
        return Matrix2(ZERO, ONE, ZERO, ZERO).scale(-2 * cval / den)

    if rule.prop is PropId.P4_4:
        m = Matrix2(-d1 * scalar(1 + e, 2),
                    ((b1 + scalar(e - 1, 2) * g1 - scalar(e + 1, 2) * g2) * d1 - zw)
                    ** (1 + int(d3)),
                    ZERO, d1 * scalar(1 - e, 2))
        den = ((zw - xa + (g2 - a2) * d1 * e) * (zw - xc + (g2 - a1) * d1 * e)
               * (zw - ya + (a2 - g1) * d1 * e) * (zw - yc + (a1 - g1) * d1 * e))
        return m.scale(-2 * cval / den)

    if rule.prop is PropId.P4_5:
        e1 = 1 if rule.variant == 1 else -1
        head = b1 - scalar(e1 + 1, 2) * g1 + scalar(e1 - 1, 2) * g2
        den1 = head * (zw - xa + d1 * e * (a2 - g2)) * (zw - xc + d1 * e * (a1 - g2))
        den2 = (zw - ya + d1 * e * (g1 - a2)) * (zw - yc + d1 * e * (g1 - a1))
        u = (d1 * e * (g1 - b1) + zw, ONE)
        v = (ONE, d1 * e * (g2 - b1) - zw)
        return outer(u, v).scale(cval / (den1 * den2))

    if rule.prop is PropId.P4_6:
        if d3 == 0:
            den = (znv * (a2 * a2 - g1 * g1)
                   * (ya - d1 * b1 / (g2 * znv)) * (yb - d1 * b2 / (g2 * znv)))
            m = outer((g2 * znv, a2), (-g1, a2 * znv))
            return m.scale(-cval / den)
        zbar = _surd_bar(zn, SurdKind.HYPERBOLIC, e, f"{rule.prop.value} oracle")
        pref = b1 * b2 * a2 * g2 * znv * cval
        den = ((a2 * a2 - g1 * g1) * (g1 * xa - b1 * zbar) * (g1 * xb - b2 * zbar)
               * (b1 * b1 + g2 * g2 * ya * ya - 2 * b1 * g2 * ya * znv)
               * (b2 * b2 + g2 * g2 * yb * yb - 2 * b2 * g2 * yb * znv))
        yy = ya * yb * g2 * g2 - b1 * b2
        sy = g2 * (b2 * ya + b1 * yb) - 2 * b1 * b2 * znv
        e11 = (2 * g1 / a2) * ((zbar * (a2 * a2 - g2 * g2) - 2 * a2 * a2 * znv) * yy
                               + sy * (g2 * g2 * zbar * zbar + a2 * a2))
        e12 = ((a2 * a2 + g1 * g1 * g2 * g2 / (a2 * a2))
               * (g2 * ya - b1 * zbar) * (g2 * yb - b2 * zbar)
               + g1 * g1 * ((b1 - 2 * g2 * ya * znv) * (b2 - 2 * g2 * yb * znv)
                            - 2 * ya * yb * g2 * g2)
               + g2 * zbar * ((g1 * g1 - g2 * g2 * zbar * zbar) * (b2 * ya + b1 * yb)
                              + g2 * (g2 * g2 - g1 * g1) * ya * yb * zbar
                              + b1 * b2 * g2 * zbar ** 3))
        e21 = 4 * g1 * g2 * (b1 * b2 + g2 * ya * (b2 * zbar - g2 * yb)
                             + b1 * zbar * (g2 * yb - 2 * b2 * znv))
        e22 = (2 * g2 / a2) * ((zbar * (a2 * a2 - g1 * g1) + 2 * g1 * g1 * znv) * yy
                               - sy * (a2 * a2 * zbar * zbar + g1 * g1))
        return Matrix2(e11, e12, e21, e22).scale(-pref / den)

    if rule.prop is PropId.P4_7:
        m = Matrix2(-znv,
                    8 * (g1 - g2) ** 2 / ((xa - ya) * (xb - yb)) - znv * znv,
                    ONE, znv)
        return m.scale(cval / (2 * (g1 - a2)))

    if rule.prop is PropId.P4_8:
        if d3 == 0:
            zsel = znv
            den2 = 2 * (a2 - g1)
        else:
            if not isinstance(zn, SurdParam) or zn.kind is not SurdKind.SQUARE:
                raise MissingSurd(f"{rule.prop.value} oracle needs a square surd")
            zbar = -e * zn.root
            zsel = zbar
            den2 = (2 * (a2 - g1) * (xa + g1 - b1 - zbar) ** int(d3)
                    * (xb + g1 - b2 - zbar) ** int(d3))
        den1 = ((ya + d1 * (g2 - b1 + zsel)) * (yb + d1 * (g2 - b2 + zsel)))
        u = ((g2 - a2 + zsel) ** (1 + int(d3)), ONE)
        v = (ONE, -((a2 - g1 + zsel) ** (1 + int(d3))))
        return outer(u, v).scale(-cval / (den1 * den2))

    raise RegimeMismatch(f"no oracle for {rule.prop}")  # pragma: no cover


# ---------------------------------------------------------------------------
# Hard-coded coefficient-matrix catalogue
# ---------------------------------------------------------------------------

def _rd(u, v):
    return u / v - v / u


def _blocks_a3_A(d: DeltaTuple, xa, xb, a1, a2, b1, b2):
    c4 = 4 * a1 * a2 * b1 * b2
    big = a1 * a2 / (b1 * b2) - b1 * b2 / (a1 * a2)
    l2 = Matrix2(_rd(b1, a1), _rd(a2, b1) * xa + _rd(b2, a2) * xb,
                 ZERO, _rd(b2, a1)).scale(c4)
    l1 = Matrix2(_rd(a1, a2) * xa + big * xb, _rd(b1, b2) * xa * xb,
                 _rd(b1, b2), big * xa + _rd(a1, a2) * xb).scale(c4)
    l0 = Matrix2(_rd(b2, a1) * xa * xb, ZERO,
                 _rd(b2, a2) * xa + _rd(a2, b1) * xb,
                 _rd(b1, a1) * xa * xb).scale(c4)
    dl2 = MAT_ZERO
    dl1 = Matrix2(ZERO, (a2 * a2 - a1 * a1) * (b1 * b1 - b2 * b2) * big, ZERO, ZERO)
    dl0 = Matrix2(
        (a2 * a2 - b1 * b1) * (a2 * a2 - b2 * b2) * (b2 * b2 - a1 * a1) / (a2 * b2),
        (a1 * a1 - b1 * b1) * (a1 * a1 - b2 * b2)
        * (b1 * (a2 * a2 - b2 * b2) * xa + b2 * (b1 * b1 - a2 * a2) * xb)
        / (a1 * b1 * b2),
        ZERO,
        (a2 * a2 - b1 * b1) * (b1 * b1 - a1 * a1) * (a2 * a2 - b2 * b2) / (a2 * b1))
    return (l2, l1, l0), (dl2, dl1, dl0), d.d1


def _blocks_c3_A(d: DeltaTuple, xa, xb, a1, a2, b1, b2):
    d1, d2, d3 = d.as_tuple()
    l2 = Matrix2(-a2 * b2, ZERO, ZERO, -a2 * b1)
    l1 = Matrix2(b1 * b2 * xa + a2 * a2 * xb, ZERO, ZERO,
                 a2 * a2 * xa + b1 * b2 * xb)
    l0 = Matrix2(-a2 * xa * xb * b1, ZERO, ZERO, -a2 * xa * xb * b2)
    dl2 = Matrix2(ZERO, (2 * d3 * b1 * b2 / a1)
                  * (a2 * a2 * (xa / b1 - xb / b2) + (b2 * xb - b1 * xa)),
                  ZERO, ZERO)
    f = 2 * (b1 * b1 - b2 * b2) * a2 / a1
    dl1 = Matrix2(ZERO, f * (d3 * xa * xb - a1 * a1 / (2 * b1 * b2)),
                  f * d2, ZERO)
    dl0 = Matrix2(
        -d2 * (a2 * a2 - b1 * b1) * (a2 / b2 - b2 / a2),
        a1 * (b1 * xb - b2 * xa + a2 * a2 * (xa / b2 - xb / b1)),
        (2 * d2 / a1) * (b1 * b2 * (b2 * xa - b1 * xb) + a2 * a2 * (b2 * xb - b1 * xa)),
        -d2 * (a2 / b1 - b1 / a2) * (a2 * a2 - b2 * b2))
    return (l2, l1, l0), (dl2, dl1, dl0), d1


def _pw(base, flag):
    return base if flag else ONE


def _blocks_a2_A(d: DeltaTuple, xa, xb, a1, a2, b1, b2):
    d1, d2, _ = d.as_tuple()
    t12, t13, t14 = a1 - a2, a1 - b1, a1 - b2
    t23, t24, t34 = a2 - b1, a2 - b2, b1 - b2
    l2 = Matrix2(-t13, t23 * xa - t24 * xb, ZERO, -t14)
    l1 = Matrix2(xa * t12 + xb * (t13 + t24), t34 * xa * xb,
                 t34, xb * t12 + xa * (t13 + t24))
    l0 = Matrix2(xa * xb * (-t14), ZERO, xa * (-t24) + xb * t23, xa * xb * (-t13))
    dl2 = Matrix2(ZERO, d2 * t12 * t34 * (t13 + t24), ZERO, ZERO)
    dl1 = Matrix2(
        d2 * (2 * t13 * t24 * t24 + t12 * t34 * (t12 - t34)),
        t12 * t34 * (t13 + t24)
        * _pw(xa + xb - t13 * t13 - t24 * t24 - t12 * t34, d2)
        - 2 * d2 * t13 * t14 * (xa * t24 + xb * (-t23)),
        ZERO,
        d2 * (2 * t14 * t23 * t23 - t12 * t34 * (t12 + t34)))
    dl0 = Matrix2(
        t14 * t23 * t24 * _pw(xb - t12 * t34 - t24 * t24, d2)
        - d2 * t14 * (xa * t12 * t24 - xb * t23 * t13),
        t13 * t14 * (xb * t23 * _pw(t12 * (-t34) - t13 * t13, d2)
                     - xa * t24 * _pw(t12 * t34 - t14 * t14, d2)
                     - d2 * t34 * (xa * xb - (t13 + t24) * t12 * t23 * t24)),
        d2 * t23 * t24 * (-t34),
        t13 * t23 * t24 * _pw(xa + t12 * t34 - t23 * t23, d2)
        + d2 * t13 * (xa * t14 * t24 - xb * t12 * t23))
    return (l2, l1, l0), (dl2, dl1, dl0), d1


def _blocks_c2_A(d: DeltaTuple, xa, xb, a1, a2, b1, b2):
    d1, d2, d3 = d.as_tuple()
    t12, t13, t14 = a1 - a2, a1 - b1, a1 - b2
    t23, t24, t34 = a2 - b1, a2 - b2, b1 - b2
    e123 = 1 + int(d2) + int(d3)
    l2 = Matrix2(-ONE, -(-t34), ZERO, -ONE)
    l1 = Matrix2(xa + xb, (t23 + t24) * (xb - xa), ZERO, xa + xb)
    l0 = Matrix2(-xa * xb, -xa * xb * t34, ZERO, -xa * xb)
    dl2 = Matrix2(ZERO, d3 * (t34 * (t13 + t14 - 1) + 2 * (xa * t23 - xb * t24)),
                  ZERO, ZERO)
    dl1 = Matrix2(
        t34 * _pw(2 * t13, d2) + d2 * (t23 * t23 + t24 * t24),
        (-t34) * (t13 ** e123 + t14 ** e123 + 2 * d3 * (t23 * t24 - xa * xb))
        - d3 * (t13 + t14 - 1) * (t23 + t24) * (xa - xb),
        2 * d2 * t34,
        (-t34) * _pw(2 * t14, d2) + d2 * (t23 * t23 + t24 * t24))
    dl0 = Matrix2(
        t23 * t24 * _pw(xb - 2 * t14 * t34 - t23 * t24, d2)
        - xa * t24 * _pw(t12 + t14, d2) + xb * t23 * _pw(t13 + t14, d2),
        t23 * t24 * t34 * _pw(2 * t13 * t14 - t23 * t24 + xa + xb, d2)
        * _pw(t13 + t14, d3)
        + (t13 ** e123 + t14 ** e123) * (xa * t24 - xb * t23)
        + d3 * t34 * (1 - t13 - t14) * xa * xb,
        2 * d2 * ((-t24) * xa + t23 * xb - t23 * t24 * t34),
        t23 * t24 * _pw(xa + 2 * t13 * t34 - t23 * t24, d2)
        + xa * t24 * _pw(t13 + t14, d2) - xb * t23 * _pw(t12 + t13, d2))
    return (l2, l1, l0), (dl2, dl1, dl0), d1


def _blocks_c3_B(d: DeltaTuple, xa, xc, a1, a2, b1, b2):
    d1, d2, d3 = d.as_tuple()
    l2 = Matrix2(-a2 * b1, a2 * b2 * xc, ZERO, ZERO)
    l1 = Matrix2(a2 * a2 * xa, -b1 * b2 * xa * xc, -b1 * b2, a2 * a2 * xc)
    l0 = Matrix2(ZERO, ZERO, a2 * xa * b2, -a2 * xa * b1 * xc)
    dl2 = Matrix2(ZERO, (2 * d3 / a1) * (b1 * b1 - a2 * a2) * b2 * xa,
                  ZERO, (2 * d3 / a1) * (b2 * b2 - a2 * a2) * b1)
    f = a2 * (b1 * b1 - b2 * b2) / a1
    dl1 = Matrix2(f * 2 * d2 * xc, f * a1 * a1 / (b1 * b2), ZERO, f * 2 * d3 * xa)
    dl0 = Matrix2(
        -d2 * (a2 * a2 - b2 * b2)
        * (a1 * (a2 * a2 - b1 * b1) + 2 * a2 * b1 * b1 * xa * xc) / (a1 * a2 * b1),
        (b2 - a2 * a2 / b2) * (a1 * xa - d2 * (a2 - b1 * b1 / a2) * xc),
        2 * d2 * (b1 * b1 - a2 * a2) * xc * b2 / a1,
        a1 * (b1 - a2 * a2 / b1))
    return (l2, l1, l0), (dl2, dl1, dl0), d1


def _blocks_c2_B(d: DeltaTuple, xa, xc, a1, a2, b1, b2):
    d1, d2, d3 = d.as_tuple()
    t12, t13, t14 = a1 - a2, a1 - b1, a1 - b2
    t23, t24, t34 = a2 - b1, a2 - b2, b1 - b2
    sgn3 = -ONE if d3 else ONE
    e12 = 1 + int(d2)
    e123 = 1 + int(d2) + int(d3)
    l2 = Matrix2(ONE, t34 - xc, ZERO, ZERO)
    l1 = Matrix2(-xa, -xa * (t23 + t24 - xc), ONE, -(t23 + t24 + xc))
    l0 = Matrix2(ZERO, ZERO, -xa, xa * (xc + t34))
    dl2 = Matrix2(
        -2 * (d2 + d3),
        2 * d2 * (xc - t34) + d3 * (2 * (xc - xa * t23) - t34 * (t13 + t14 + 1)),
        ZERO, -2 * d3 * t24)
    dl1 = Matrix2(
        t34 * _pw(2 * (xc - t14), d2) * sgn3 + (d2 + d3) * 2 * xa
        + d2 * (t23 * t23 + t24 * t24),
        (t34 + d3 * xa) * (xc * _pw(-t13 - t14, d2) * sgn3 + 2 * d3 * t12 * t12
                           + ((-t13) ** e12 + (-t14) ** e12)
                           * _pw(-t23 - t24, d3))
        + 2 * d2 * (xa * (t24 - xc) + t23 * (xa - xc * t24))
        - d3 * xa * (xc + 2 * t12 * t12 - (t23 + t24)),
        -2 * (d2 + d3),
        2 * (d2 + d3) * xc + 2 * d3 * xa * t34
        + (2 * d2 + d3) * (t23 + t24) * _pw(t13 + t14 + 1, d3))
    dl0 = Matrix2(
        (-t24) * (t23 * _pw((-t34) * (t12 + t13 - 2 * xc) + t23 * t23 - xa, d2)
                  + xa * _pw(2 * xc - t13 - t14, d2)) * sgn3,
        (-t24) * (t23 * ((-t34) * _pw(t23 * t24 - 2 * t13 * t14, d2)
                         * _pw(-t13 - t14, d3)
                         - xc * _pw(2 * t14 * t34 + t23 * t24, d2) * sgn3)
                  + xa * ((-t13 - t14) ** e123 + d2 * t23 * t34
                          - (d2 + d3) * 2 * t13 * t14
                          + xc * _pw(-t12 - t14, d2) * sgn3)),
        (-t23) * _pw(2 * xc - t12 - t13, d2) * sgn3 + (d2 + d3) * 2 * xa,
        t23 * (-((-t13) ** e123 + (-t14) ** e123)
               - xc * _pw(-2 * t14 - t23, d2) * sgn3 + d2 * t24 * t34)
        - (2 * d2 + d3) * (xc + t34) * xa
        - d3 * (xc + t34 * (t13 + t14)) * xa)
    return (l2, l1, l0), (dl2, dl1, dl0), d1


_BLOCKS = {
    (Family.A3, "A"): _blocks_a3_A,
    (Family.C3, "A"): _blocks_c3_A,
    (Family.A2, "A"): _blocks_a2_A,
    (Family.C2, "A"): _blocks_c2_A,
    (Family.C3, "B"): _blocks_c3_B,
    (Family.C2, "B"): _blocks_c2_B,
}

#: Entries whose catalogued matrix already includes its normalization factor.
CLOSED_FORM_ENTRIES = ((Family.C1, "A"), (Family.C1, "B"))


def catalogue_builder_factor(family: Family, d: DeltaTuple, approach: str,
                             alpha, beta) -> Scalar:
    """Scalar k with catalogued block == k * builder output.

    The catalogued coefficient matrices clear the A3 equation's parameter
    denominators (k = 4 a1 a2 b1 b2) and flip an overall sign for the
    face-transport blocks (always for the 3-family one, for the delta2 or
    delta3 regimes of the 2-family one); everywhere else k = 1.
    """
    if (family, approach) == (Family.A3, "A"):
        return 4 * alpha.first * alpha.second * beta.first * beta.second
    if (family, approach) == (Family.C3, "B"):
        return -ONE
    if (family, approach) == (Family.C2, "B") and (d.d2 or d.d3):
        return -ONE
    return ONE


def catalogue_coefficients(family: Family, d: DeltaTuple, approach: str,
                           xa, xlast, alpha, beta):
    """The catalogued coefficient matrices, combined per power of the face
    variable: returns (M_x2, M_x1, M_x0) with M_xi = L_xi + delta * D_xi."""
    key = (family, approach)
    if key not in _BLOCKS:
        raise NoCatalogueEntry(f"no catalogued coefficient block for {family.value}"
                               f" via approach {approach}")
    a1, a2, b1, b2 = alpha.first, alpha.second, beta.first, beta.second
    (l2, l1, l0), (dl2, dl1, dl0), dpref = _BLOCKS[key](d, xa, xlast, a1, a2, b1, b2)
    if not dpref:
        return (l2, l1, l0)
    return tuple(
        Matrix2(*(a + dpref * b for a, b in zip(lm.entries(), dm.entries())))
        for lm, dm in ((l2, dl2), (l1, dl1), (l0, dl0)))


def catalogue_lax(family: Family, d: DeltaTuple, approach: str,
                  x, xa, xlast, alpha, beta) -> Matrix2:
    """The catalogued matrix at a point.

    Coefficient-block entries are assembled as x^2 M2 + x M1 + M0 with the
    normalization factor equal to one; the two closed-form entries (C1 via
    either transport) come out already normalized.
    """
    a1, a2, b1, b2 = alpha.first, alpha.second, beta.first, beta.second
    if (family, approach) in CLOSED_FORM_ENTRIES:
        if family is not Family.C1:
            raise NoCatalogueEntry("unexpected closed-form request")
        if approach == "A":
            xb = xlast
            p = (x - xa) * (x - xb)
            if p == 0:
                raise DomainViolation("closed form singular: x equals a corner")
            q = 2 * (b2 * (x - xa) + b1 * (x - xb) + a2 * (xa + xb - 2 * x))
            return Matrix2(ONE, q / p, ZERO, -ONE)
        xc = xlast
        if x == xa:
            raise DomainViolation("closed form singular: x equals the a corner")
        return Matrix2(x * (x - xa) / (x - xa),
                       ((x - xa) * x * xc - 2 * b2 * xa + 2 * (b1 + b2) * x
                        + 2 * a2 * (xa - 2 * x)) / (x - xa),
                       (x - xa) / (x - xa),
                       ((x - xa) * xc + 2 * (b1 - a2)) / (x - xa))
    m2, m1, m0 = catalogue_coefficients(family, d, approach, xa, xlast, alpha, beta)
    xx = x * x
    return Matrix2(*(xx * p + x * q + r for p, q, r in
                     zip(m2.entries(), m1.entries(), m0.entries())))


def catalogue_det(family: Family, d: DeltaTuple, approach: str,
                  x, xa, xlast, alpha, beta) -> Scalar:
    """The catalogued closed-form determinant (normalization factor one)."""
    a1, a2, b1, b2 = alpha.first, alpha.second, beta.first, beta.second
    d1, d2, d3 = d.as_tuple()
    key = (family, approach)
    if key == (Family.A3, "A"):
        xb = xlast
        return (16 * (a1 + b1) * (a1 - b1)
                * ((b1 * x - a2 * xa) * (b1 * xa - a2 * x)
                   - d1 * (a2 * b1 / 4) * _rd(a2, b1) ** 2)
                * (a1 + b2) * (a1 - b2)
                * ((b2 * x - a2 * xb) * (b2 * xb - a2 * x)
                   - d1 * (a2 * b2 / 4) * _rd(a2, b2) ** 2))
    if key == (Family.C3, "A"):
        xb = xlast
        return (((b1 * x - a2 * xa) * (b1 * xa - a2 * x)
                 - d2 * (a2 * b1 / 2) * _rd(a2, b1) ** 2)
                * ((b2 * x - a2 * xb) * (b2 * xb - a2 * x)
                   - d2 * (a2 * b2 / 2) * _rd(a2, b2) ** 2))
    if key in ((Family.A2, "A"), (Family.C2, "A")):
        xb = xlast
        t13, t14 = a1 - b1, a1 - b2
        t23, t24 = a2 - b1, a2 - b2
        body = (((x - xa) ** 2 - d1 * t23 * t23 * _pw(2 * (x + xa) - t23 * t23, d2))
                * ((x - xb) ** 2 - d1 * t24 * t24 * _pw(2 * (x + xb) - t24 * t24, d2)))
        return t13 * t14 * body if key[0] is Family.A2 else body
    if key == (Family.C3, "B"):
        xc = xlast
        return ((a2 * a2 - b2 * b2)
                * ((a2 * x - b1 * xa) * (a2 * xa - b1 * x)
                   - d2 * (a2 * b1 / 2) * _rd(a2, b1) ** 2)
                * (x * xc - d1 * a1 / b1 - d2 * (b1 / a1) * xc * xc
                   - d3 * (b1 / a1) * x * x))
    if key == (Family.C2, "B"):
        xc = xlast
        t13 = a1 - b1
        t23, t24 = a2 - b1, a2 - b2
        e123 = 1 + int(d2) + int(d3)
        return (2 * t24
                * (x * _pw(2 * t13 - x, d3) + d1 * xc * _pw(2 * t13 - xc, d2)
                   - d1 * t13 ** e123)
                * (d1 * t23 * t23 * _pw(2 * (x + xa) - t23 * t23, d2)
                   - (x - xa) ** 2))
    raise NoCatalogueEntry(f"no catalogued determinant for {family.value}"
                           f" via approach {approach}")
