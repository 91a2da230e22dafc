//! Exact symbolic algebra for twist-deformed Hopf algebras, their module
//! algebras, smash products and bialgebroids, truncated in a formal parameter `h`.

pub mod algebroid;
pub mod error;
pub mod hopf;
pub mod modalg;
pub mod ncpoly;
pub mod registry;
pub mod residual;
pub mod scalars;
pub mod smash;

pub use error::{Error, Result};
pub use hopf::{Bialgebra, Coproduct, Twist};
pub use modalg::{GenAction, ModuleAlgebra, PolyCoord, RepData};
pub use ncpoly::{Gen, NCPoly, RewriteSystem, Sort, Word};
pub use residual::{CheckEntry, Status};
pub use scalars::{GaussRational, TruncSeries};
pub use smash::SmashElem;
pub use algebroid::{Bialgebroid, TensorOverA};
pub use registry::{preset, preset_spec, PresetSpec, Setup};
