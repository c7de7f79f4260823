"""Exact-arithmetic catalogue, consistency checker and Lax-matrix builders
for face-centered quad equations."""

from .exactnum import (
    Scalar, SurdKind, SurdParam, make_surd, parse_scalar, format_scalar, scalar,
)
from .catalogue import (
    DeltaTuple, FaceEquation, FacePoint, Family, LegRole, ParamPair,
    deltas, equation_label, evaluate, fourleg_residual, leg, make_equation,
    param_pair, parse_equation,
)
from .cube import (
    CafccReport, EquationSystem, SystemConfig, Vertex,
    abc_config, all_system_configs, assemble_system, inject_fault,
    parse_config, run_cafcc, solve_corner, type_a_config,
)
from .lax import (
    LaxQuadruple, Matrix2, NormalizationRule, PropId,
    assemble_quadruple, build_lax_A, build_lax_B, catalogue_det,
    catalogue_lax, invert, normalization, proof_residual, residual,
)
from .verify import (
    SamplerConfig, Scope, SuiteReport, run_all, run_suite, sample_point,
)

__version__ = "0.1.0"
