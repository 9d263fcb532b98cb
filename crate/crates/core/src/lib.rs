//! Radii of convexity, starlikeness and close-to-convexity of order β for
//! sections of functions in the class G(α), together with the bound
//! sequences used to estimate them and grid-based verification suites.
//!
//! A function in G(α) is a normalized analytic function on the unit disk
//! with `Re(1 + z f''(z)/f'(z)) < 1 + α/2`. Its n-th section is the
//! polynomial truncation `s_n(z) = z + a_2 z^2 + ... + a_n z^n`.
//!
//! Modules, bottom-up:
//!
//! - [`series`]: truncated complex power series, the carrier for every
//!   function, section and tail.
//! - [`classg`]: extremal functions, random class members, membership checks.
//! - [`radii`]: the three radius indicators, the proof curves ψ₁..ψ₁₁ and the
//!   least-positive-root solver.
//! - [`bounds`]: tail majorants, the S₁/S₂ sequences and the C/E/F threshold
//!   machinery.
//! - [`verify`]: disk-grid sweeps that check every claim numerically.

pub mod bounds;
pub mod classg;
mod error;
pub mod grid;
pub mod radii;
pub mod seeds;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use grid::DiskGrid;
pub use series::{ComplexSeries, NormalizedSeries};

pub use num_complex::Complex64;

/// Truncation degree used when no explicit degree is requested.
pub const DEFAULT_ORDER: usize = 64;
