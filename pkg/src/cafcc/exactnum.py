"""Exact rational scalars and rational parametrization of surds.

Every quantity in this package is an arbitrary-precision rational in lowest
terms with positive denominator.  The backend is gmpy2.mpq when available
(about 2x faster on the deep solve chains) and fractions.Fraction otherwise;
both are exact and share the canonical text form "p/q" (denominator omitted
when 1, sign on the numerator).

Variables that carry a square root are never represented as field
extensions.  Instead they are sampled through :class:`SurdParam`, which picks
the variable so that both the value and its root are rational:

* Hyperbolic: value = (t + 1/t)/2, root = (t - 1/t)/2, so root^2 = value^2 - 1
  and value + root = t.
* Square: value = s^2, root = s, so root^2 = value.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Union

from .errors import ZeroSeed

try:
    from gmpy2 import mpq as _mpq
except ImportError:  # pragma: no cover - gmpy2 is normally installed
    _mpq = None

if _mpq is not None:
    _RAT = _mpq
    SCALAR_TYPES = (int, Fraction, type(_mpq(0)))
else:  # pragma: no cover
    _RAT = Fraction
    SCALAR_TYPES = (int, Fraction)

Scalar = Union[SCALAR_TYPES]
ScalarLike = Union[Scalar, str]


def scalar(num: ScalarLike = 0, den: ScalarLike | None = None) -> Scalar:
    """Build a canonical exact rational from ints, strings or rationals."""
    if den is None:
        if isinstance(num, str):
            return _RAT(num.strip())
        return _RAT(num)
    return _RAT(num) / _RAT(den)


def parse_scalar(text: str) -> Scalar:
    """Parse the canonical "p/q" text form (q omitted when 1)."""
    return scalar(text)


def format_scalar(value: Scalar) -> str:
    """Canonical text form; inverse of :func:`parse_scalar`."""
    return str(_RAT(value))


ZERO = scalar(0)
ONE = scalar(1)
TWO = scalar(2)
HALF = scalar(1, 2)


def is_scalar(value) -> bool:
    return isinstance(value, SCALAR_TYPES)


class SurdKind(Enum):
    HYPERBOLIC = "hyperbolic"
    SQUARE = "square"


@dataclass(frozen=True)
class SurdParam:
    """A variable together with a rational branch of its square root.

    ``value`` is the variable itself, ``root`` the chosen branch: for
    Hyperbolic parameters root^2 = value^2 - 1, for Square parameters
    root^2 = value.  ``seed`` regenerates the parameter.
    """

    kind: SurdKind
    seed: Scalar
    value: Scalar
    root: Scalar

    @property
    def bar(self) -> Scalar:
        """value + root, the combination the leg tables are written in."""
        return self.value + self.root

    def flip_branch(self) -> "SurdParam":
        """Negate the root (t -> 1/t for Hyperbolic, s -> -s for Square)."""
        if self.kind is SurdKind.HYPERBOLIC:
            return make_surd(self.kind, ONE / self.seed)
        return make_surd(self.kind, -self.seed)


def make_surd(kind: SurdKind, seed: ScalarLike) -> SurdParam:
    """Construct a surd-carrying variable from its free rational seed."""
    t = scalar(seed)
    if t == 0:
        raise ZeroSeed(f"{kind.value} surd parameter needs a nonzero seed")
    if kind is SurdKind.HYPERBOLIC:
        value = (t + ONE / t) / 2
        root = (t - ONE / t) / 2
    else:
        value = t * t
        root = t
    return SurdParam(kind=kind, seed=t, value=value, root=root)


def plain_value(v: Union[Scalar, SurdParam]) -> Scalar:
    """The rational value of either a scalar or a surd-carrying variable."""
    return v.value if isinstance(v, SurdParam) else v
