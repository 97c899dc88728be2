pub mod error;
pub mod deformation;
pub mod exactring;
pub mod frontend;
pub mod geomres;
pub mod initsolve;
pub mod lifting;
pub mod linalg;
pub mod mpoly;
pub mod optimizer;
pub mod problem;
pub mod realalg;
pub mod ring;
pub mod slp;

pub use error::{Error, Result};
pub use exactring::{Rat, Series, TruncSeries, UPoly};
