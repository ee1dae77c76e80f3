//! Enumeration of minimal dominating sets in P7-free and P8-free chordal
//! graphs, split into redundant parts and irredundant extensions.

pub mod bench;
pub mod dom_enum;
pub mod error;
pub mod generators;
pub mod graph;
pub mod ir_ext;
pub mod oracle;
pub mod recognition;
pub mod redundancy;
pub mod rn_enum;
pub mod sat;

pub use dom_enum::{enumerate_dom, is_minimal_dominating, verify_class, DomStream};
pub use error::{Error, ParseErrorKind, Result};
pub use graph::{parse_graph, Graph, VertexSet};
pub use ir_ext::{enumerate_dir, DirStream};
pub use redundancy::{classify, Classification};
pub use rn_enum::{enumerate_rn, Mode, Prepared, RnStream};
