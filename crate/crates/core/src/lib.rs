pub mod basis;
pub mod cocycle;
pub mod coeff;
pub mod current;
pub mod error;
pub mod frontend;
pub mod poly;
pub mod random;
pub mod numcheck;
pub mod report;
pub mod spinor;
pub mod verify;

pub use basis::{BasisIndex, Expansion, Sign};
pub use coeff::{Gq, Rational};
pub use current::{CurrentElement, ExtendedElement, ScalarMatrix, SimpleAlgebra, WeightLabel};
pub use error::{Error, Result};
pub use poly::{FieldOp, Monomial, Partial, Poly};
pub use report::{Report, Status};
pub use spinor::{DiracOp, Involution, Space, Spinor};
