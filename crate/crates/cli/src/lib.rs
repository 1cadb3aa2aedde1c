//! Instance files, example families, reports and the randomized
//! verification harness around `voltage-core`.

pub mod app;
pub mod families;
pub mod format;
pub mod fuzz;
pub mod output;
pub mod verify;

pub use families::{generate, ExampleFamily, Family, FamilyError, FamilyRecord};
pub use format::{parse, InstanceFile, ParseError};
pub use fuzz::{fuzz, FuzzReport};
