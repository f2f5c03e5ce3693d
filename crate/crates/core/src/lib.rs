//! Computer algebra for classical and quantum dynamical r-matrices attached to
//! Levi decompositions of low-rank semisimple Lie algebras.
//!
//! The crate is organized bottom-up:
//!
//! * [`scalar`] — exact scalar domains: rationals, multivariate rational
//!   functions, truncated (Laurent) series, and floats behind one trait.
//! * [`linalg`] — exact dense row reduction, kernels, and solves over the
//!   rationals.
//! * [`liealg`] — root systems, structure constants, Levi splittings, and the
//!   Drinfeld double for ranks 1 and 2.
//! * [`tensor`] — sparse tensors over a scalar domain with the bracket
//!   calculus (classical Yang–Baxter operator, alternation, invariance
//!   residuals, quotient projections).
//! * [`classical`] — the dynamical r-matrices themselves: torus and group
//!   inverse-form constructions, spectral-calculus families, composition and
//!   restriction, and the dynamical Yang–Baxter verifier.
//! * [`moduli`] — the coefficient-system classification of the relevant
//!   homogeneous Poisson structures, its torus-parameter chart, and the
//!   rigidity (tangent-space) solver.
//! * [`quantum`] — the rank ≤ 2 quantized enveloping algebra with its PBW and
//!   coideal calculus, Shapovalov pairings, and the dynamical twist machinery.
//! * [`homogspace`] — matrix-coefficient models of the quantized function
//!   algebras and the associated star products.
//! * [`verma`] — generalized Verma modules over the classical enveloping
//!   algebra with deformation-parameter scalars and the quantization of the
//!   orbit embedding.
//! * [`report`] — the uniform check-report structure shared with the CLI.

pub mod classical;
pub mod homogspace;
pub mod liealg;
pub mod linalg;
pub mod moduli;
pub mod quantum;
pub mod report;
pub mod scalar;
pub mod tensor;
pub mod verma;
