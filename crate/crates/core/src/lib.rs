//! Symmetric quandle colorings of ch-diagrams of surface-links.
//!
//! The crate covers the whole pipeline from operation tables to ribbon
//! concordance obstructions:
//!
//! - [`algebra`]: finite quandles, good involutions, (X,ρ)-sets.
//! - [`diagram`]: the `.chd` format, smoothings, faces, Euler characteristic.
//! - [`simplify`]: Reidemeister simplification and unlink detection,
//!   used for the admissibility check.
//! - [`coloring`]: constraint generation, a propagating backtracking
//!   solver and an exhaustive oracle.
//! - [`invariant`]: triple-point weights and the weight multiset.
//! - [`concordance`]: obstruction verdicts.
//! - [`catalog`]: bundled diagrams.
//!
//! ```
//! use symquandle::{algebra::SymmetricQuandle, catalog, coloring};
//!
//! let sq = SymmetricQuandle::dihedral_antipodal(4).unwrap();
//! let d = catalog::load("10_1^{-1,-1}").unwrap();
//! assert_eq!(coloring::count_colorings(&d, &sq, None), 0);
//! ```

pub mod algebra;
pub mod catalog;
pub mod coloring;
pub mod concordance;
pub mod diagram;
pub mod invariant;
pub mod par;
pub mod simplify;

pub use par::Exec;
