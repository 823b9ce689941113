//! Pop-stack sorting dynamics on Tamari and ν-Tamari lattices.
//!
//! Elements of a ν-Tamari lattice are lattice paths weakly above a fixed
//! reference path ν ([`path`]). They are encoded as ν-bracket vectors
//! ([`bracket`]), on which meets are termwise minima and the Pop operator
//! has a closed form ([`pop`]). The permutation realization of the Tamari
//! lattice as 312-avoiding permutations under the right weak order lives in
//! [`perm`], exact Catalan/Motzkin numbers and truncated power series in
//! [`series`], a small finite-poset toolkit used as a ground-truth oracle in
//! [`poset`], and the exhaustive verification suites in [`verify`].

pub mod bracket;
pub mod error;
pub mod limits;
pub mod path;
pub mod perm;
pub mod pop;
pub mod poset;
pub mod series;
pub mod verify;

pub use bracket::BracketVector;
pub use error::{Error, Result};
pub use limits::Limits;
pub use path::{GridPoint, LatticePath, NuContext, Step};
pub use perm::{Pattern, PermStats, Permutation};
pub use pop::{PopPolynomial, PopTrajectory, SortabilityCensus};
pub use series::IntSeries;
