//! Exact evaluation of Fourier-Dedekind sums
//!
//! ```text
//! s_n(a_1,...,a_d; b) = 1/b * sum_{k=1}^{b-1} xi^{kn} / prod_j (1 - xi^{k a_j}),   xi = exp(2 pi i / b)
//! ```
//!
//! The fast path writes the sum as a constant term, turns that constant term into the
//! lattice-point generating function of a rational simplicial cone, expands the cone as a
//! signed sum of unimodular cones (Barvinok decomposition with LLL short vectors), and
//! takes the limit of the resulting short rational function at `z = (1,...,1)` with a
//! truncated Laurent series in one parameter. Cost is polynomial in `log b` for fixed `d`.
//!
//! Two reference evaluators, at least linear in `b`, are included for cross-checking: exact
//! arithmetic in the cyclotomic field `Q[x]/(Phi_b)` and plain floating-point summation.
//!
//! ```
//! use fdsum::{compute, validate, Method};
//!
//! let inst = validate(4, &[4, 3, 5], 7).unwrap();
//! let res = compute(&inst, Method::Barvinok).unwrap();
//! assert_eq!(res.value.to_string(), "1/7");
//! ```

pub mod api;
pub mod barvinok;
pub mod cli;
pub mod cone;
pub mod error;
pub mod lattice;
pub mod limit;
pub mod numeric;
pub mod oracle;
pub mod srf;

pub use api::{
    compute, compute_with, validate, FDResult, Method, PhaseTimings, PipelineOptions, Value,
};
pub use cone::{build_cone, ExponentMap, FDInstance, SimplicialCone};
pub use error::{Error, InstanceError, Result};
pub use numeric::{Integer, Rational};
pub use srf::{SRFTerm, Srf};
