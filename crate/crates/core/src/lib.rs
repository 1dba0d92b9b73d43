//! Exactly solvable and rationally extended trigonometric Pöschl–Teller
//! potentials from the massless Dirac equation on a torus.
//!
//! The crate is organized bottom-up:
//!
//! - [`special`]: Jacobi polynomials, incomplete beta, Appell `F1`, finite differences.
//! - [`geometry`]: torus profile, Christoffel symbols, the point canonical
//!   transformation and the Fermi-velocity profile it induces.
//! - [`susy`]: superpotential families, partner potentials, cancellation
//!   conditions, spectra, eigenfunctions and ladder operators.
//! - [`oracle`]: a finite-difference Sturm–Liouville eigensolver used as ground truth.
//! - [`algebra`]: the modified `iso(2,1)` realization and its Casimir potential.
//! - [`verify`] and [`errata`]: machine-checked reports built on the above.
//! - [`cli`]: the `torus-susy` command-line front end.
//!
//! ```
//! use torus_susy::susy::{PtParams, SuperpotentialSpec, partner_potentials};
//!
//! let spec = SuperpotentialSpec::PureTrigPt(PtParams::new(-2.0, 0.5));
//! let (v_minus, v_plus) = partner_potentials(&spec, std::f64::consts::FRAC_PI_2).unwrap();
//! assert!((v_minus + 1.75).abs() < 1e-12);
//! assert!((v_plus - 2.25).abs() < 1e-12);
//! ```

pub mod algebra;
pub mod cli;
pub mod errata;
pub mod error;
pub mod geometry;
pub mod oracle;
pub mod reference;
pub mod special;
pub mod susy;
pub mod verify;

pub use error::{Error, Result};
