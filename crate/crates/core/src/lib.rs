//! Spectral toolkit for nonlocal semilinear profile equations
//! `p(D)u = f + F(u)` with polyhomogeneous Fourier multipliers `p(D)`:
//! represent and classify symbols, apply multipliers and their inverses on
//! periodic grids, solve for solitary-wave profiles by stabilized spectral
//! iteration, verify the exactly solvable catalog built from half-integer
//! Bessel functions, measure algebraic tail decay and weighted-norm growth,
//! and numerically certify the weight-commutator identities that connect a
//! symbol's singularity at the origin to the decay of solutions.

pub mod besselwave;
pub mod commutators;
pub mod decayometer;
pub mod error;
pub mod grid;
pub mod multiplier;
pub mod solver;
pub mod symbols;

pub use error::{Error, Result};
pub use grid::{Domain, Field, GridSpec};
pub use multiplier::{CutoffSpec, SobolevIndex};
pub use solver::{Nonlinearity, SolveConfig, SolveResult};
pub use symbols::{
    Ellipticity, HomogeneousTerm, PolyhomogeneousSymbol, Profile, SymbolDerivativeSpec,
};

pub use num_complex::Complex64;
