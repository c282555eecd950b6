"""Energy-preserving continuous-stage integrators for Poisson systems."""

from .integrator import (
    ConvergenceError,
    IntegrationError,
    MethodSpec,
    RunRecord,
    StageSolution,
    adjoint_roundtrip,
    integrate,
    step_cohen_hairer,
    step_enhanced_cs,
)
from .legendre import PolynomialBasis, eval_antiderivative, eval_legendre, xi
from .quadrature import QuadratureRule, gauss_rule, integrate as quad_integrate, interpolatory_weights
from .systems import (
    DomainError,
    PoissonSystem,
    ReferenceSolution,
    canonical_oscillator,
    check_system,
    euler_rigid_body,
    lotka_volterra_2d,
    lotka_volterra_3d,
    reference_solution_euler,
    rk4_reference,
)
from .tableau import (
    MethodCoefficients,
    check_casimir_node_identity,
    check_energy_condition,
    check_simplifying_assumptions,
    check_symmetry_condition,
    coeff_a,
    coeff_a_tilde,
    coeff_b,
)

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError",
    "IntegrationError",
    "MethodSpec",
    "RunRecord",
    "StageSolution",
    "adjoint_roundtrip",
    "integrate",
    "step_cohen_hairer",
    "step_enhanced_cs",
    "PolynomialBasis",
    "eval_antiderivative",
    "eval_legendre",
    "xi",
    "QuadratureRule",
    "gauss_rule",
    "quad_integrate",
    "interpolatory_weights",
    "DomainError",
    "PoissonSystem",
    "ReferenceSolution",
    "canonical_oscillator",
    "check_system",
    "euler_rigid_body",
    "lotka_volterra_2d",
    "lotka_volterra_3d",
    "reference_solution_euler",
    "rk4_reference",
    "MethodCoefficients",
    "check_casimir_node_identity",
    "check_energy_condition",
    "check_simplifying_assumptions",
    "check_symmetry_condition",
    "coeff_a",
    "coeff_a_tilde",
    "coeff_b",
    "__version__",
]
