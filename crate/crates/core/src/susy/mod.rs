//! Supersymmetric structure of the reduced problems.
//!
//! A superpotential `W` defines the partner pair `V∓ = W² ∓ W'`, factorized
//! as `H₋ = Â†Â`, `H₊ = ÂÂ†` with `Â = d/dx + W`. Four families are provided,
//! all built on the trigonometric Pöschl–Teller core `A cot x + B csc x`:
//!
//! | family        | tail added to `W`          |
//! |---------------|----------------------------|
//! | `PureTrigPt`  | none                       |
//! | `RationalSin` | `λ sin x / R`              |
//! | `BetaTail`    | `G / R`, `G` via incomplete beta |
//! | `AppellTail`  | `(G + λ sin x) / R`, `G` via Appell `F1` |

mod conditions;
mod eigenfunctions;
mod ladder;
mod potentials;
mod spectrum;

pub use conditions::{
    appell_functional, rational_numerator_minus, rational_numerator_plus, solve_appell_conditions,
    solve_equal_radii_conditions, AppellReading, AppellSolution, Branch, EqualRadiiSolution,
};
pub use eigenfunctions::{
    component2_eigenfunction, component2_potential_minus, component2_report, eigenfunction_minus, eigenfunction_plus, eigenfunction_plus_at,
    integrability_probe, l2_normalize, node_count, schrodinger_residual, spinor_psi1, spinor_psi2, Component2Report,
    IntegrabilityProbe, JacobiOrder,
};
pub use ladder::{cosine_similarity, ladder_apply, Direction};
pub use potentials::{
    appell_tail_g, beta_tail_h, partner_potentials, superpotential_derivative, superpotential_eval, susy_residual,
    DerivativeMode, PTCoefficients, PtParams, SuperpotentialSpec,
};
pub use spectrum::{analytic_spectrum, LevelEnergies, SpectrumFormula};
