//! Disordered vectors and a map-backed sparse multivariate polynomial engine.

pub mod disord;
pub mod error;
pub mod format;
pub mod fuzz;
pub mod mvp;
pub mod mvp_text;
pub mod provenance;
pub mod script;
pub mod storage;
pub mod value;

pub use disord::{BinaryOp, Disord, Operand, Reduction};
pub use mvp::{Monomial, Mvp};
pub use mvp_text::{parse_mvp, print_mvp};
pub use error::{Error, ParseError, Result};
pub use provenance::ProvenanceHash;
pub use storage::StorageOrder;
pub use value::{Kind, Value};
