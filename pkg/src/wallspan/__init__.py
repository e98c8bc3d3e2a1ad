"""wallspan: a verification lab for the projective span of Wall manifolds Q(m, n).

The package checks, from several independent directions, that Q(m, n)
admits exactly 2*nu(n+1) + m + 1 linearly independent tangent line fields:

* `invariants` -- the exact closed forms and classical bounds;
* `clifford` -- exact construction and verification of the anticommuting
  skew-Hermitian automorphisms of C^(n+1) behind the lower bound;
* `fields` -- numerical evaluation of the quasi-invariant vector fields on
  CP^n x S^m x S^1 (tangency, sign tables, linear independence);
* `f2cohomology` -- exact mod-2 cohomology rings and the virtual
  Stiefel-Whitney obstruction giving upper bounds;
* `harness` / `acceptance` / `cli` -- deterministic campaigns, the
  acceptance suite and the command-line front end.
"""

from .acceptance import AcceptanceResult, CriterionResult, run_acceptance
from .clifford import (
    CliffordFamily,
    FamilyReport,
    GaussMatrix,
    beta,
    build_family,
    generator_2x2,
    kronecker,
    predicted_sign,
    spin_generator,
    tensor_power,
    verify_family,
)
from .f2cohomology import (
    GradedF2Poly,
    MultisetWitness,
    RingPresentation,
    RuleOutResult,
    VirtualSwSearch,
    cpn_presentation,
    dold_presentation,
    fiber_restriction,
    make_presentation,
    sw_upper_bound,
    total_sw_cpn,
    total_sw_wall,
    unit_inverse,
    virtual_sw_rules_out,
    wall_presentation,
)
from .fields import (
    AmbientTangent,
    IndependenceReport,
    InvolutionKind,
    TotalSpacePoint,
    apply_differential,
    apply_involution,
    check_well_defined,
    evaluate_field,
    expected_quasi_sign,
    independence_report,
    quasi_invariance_sign,
    sample_point,
    stream,
    tangency_residuals,
    xi_high,
    xi_low,
)
from .harness import CampaignConfig, CampaignResult, Tolerances, run_campaign
from .invariants import (
    WallParams,
    flag_lower_bound,
    hurwitz_radon,
    nu,
    pspan_wall,
    sspan_cpn,
    upper_bound_fibration,
)

__version__ = "0.1.0"
