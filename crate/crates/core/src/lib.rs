//! Modular construction of Boolean networks.
//!
//! * [`boolfn`]: truth-table functions, canalizing variables, the layered
//!   form of a function and its layer structure.
//! * [`extend`]: restrictions and extensions of functions, with exact
//!   extension counts for general and nested canalizing functions.
//! * [`network`]: networks, wiring diagrams, decomposition into strongly
//!   connected simple networks, graphical parametrizations and assembly of
//!   networks from simple building blocks.
//! * [`io`]: the rule-expression and truth-table formats, DOT and JSON output.
//! * [`verify`]: formula-versus-enumeration checks at desk scale.

pub mod boolfn;
pub mod error;
pub mod extend;
pub mod io;
pub mod network;
pub mod verify;

pub use boolfn::{BooleanFunction, CanalizationReport, LayerStructure};
pub use error::{Error, Result};
pub use extend::{ExtensionCount, NcfPlacement};
pub use network::{BooleanNetwork, Decomposition};
