pub mod character;
pub mod cyclotomic;
pub mod error;
pub mod higher_rank;
pub mod iwasawa;
pub mod lfun;
pub mod linalg;
pub mod measure;
pub mod modsym;
pub mod padic;
pub mod polygon;
pub mod serial;
pub mod series;
pub mod util;
pub mod weight;

pub use error::{Error, Result};
pub use padic::{teichmuller, PadicNumber};
