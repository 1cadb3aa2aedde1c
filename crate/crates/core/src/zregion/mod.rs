//! z-regions of derived surfaces and z-graphs.

mod analysis;
mod report;
mod zgraph;

pub use analysis::{compare_zgraphs, CircleAnalysis, CircleKind, FiberCircleSet, LiftedCircle, ZRegions};
pub use report::{Assertion, CheckReport, Status};
pub use zgraph::{CosetTag, EndTag, ZEdge, ZEdgeLabel, ZEnd, ZGraph, ZVertexLabel};
