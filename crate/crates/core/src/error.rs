use alloc::string::String;
use core::fmt;

/// Errors raised by constructors and checked operations in this crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A group table or group constructor was malformed.
    InvalidGroup(String),
    /// An element index was out of range for its group.
    ElementOutOfRange { element: usize, order: usize },
    /// A configured size cap was exceeded.
    SizeCap { what: &'static str, size: usize, cap: usize },
    /// A coset partition was requested for a superset whose size is not a
    /// multiple of the subgroup order.
    NotCosetUnion { superset: usize, subgroup: usize },
    /// The rotation system does not describe a valid embedded graph.
    InvalidRotation(String),
    /// A vertex, edge, dart or face index was out of range.
    IndexOutOfRange { kind: &'static str, index: usize, len: usize },
    /// A graph or subgraph that must be connected is not.
    Disconnected(&'static str),
    /// An edge chain does not induce a circle.
    NotACircle(String),
    /// A set of circles violates property Δ (vertex-disjoint, orientation-preserving).
    PropertyDelta(String),
    /// A walk's darts do not concatenate.
    InvalidWalk(String),
    /// The voltage assignment violates α(d⁻¹) = α(d)⁻¹.
    VoltageInvolution { edge: usize },
    /// A voltage assignment references a different group or has the wrong length.
    InvalidVoltage(String),
    /// An operation's stated hypothesis is not met by its input.
    Hypothesis(String),
    /// An internal cross-check between a prediction and brute force failed.
    Mismatch(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidGroup(msg) => write!(f, "invalid group: {msg}"),
            Error::ElementOutOfRange { element, order } => {
                write!(f, "element {element} out of range for group of order {order}")
            }
            Error::SizeCap { what, size, cap } => {
                write!(f, "{what} size {size} exceeds cap {cap}")
            }
            Error::NotCosetUnion { superset, subgroup } => write!(
                f,
                "superset of size {superset} is not a union of cosets of a subgroup of order {subgroup}"
            ),
            Error::InvalidRotation(msg) => write!(f, "invalid rotation system: {msg}"),
            Error::IndexOutOfRange { kind, index, len } => {
                write!(f, "{kind} index {index} out of range (len {len})")
            }
            Error::Disconnected(what) => write!(f, "{what} is not connected"),
            Error::NotACircle(msg) => write!(f, "not a circle: {msg}"),
            Error::PropertyDelta(msg) => write!(f, "property Δ violated: {msg}"),
            Error::InvalidWalk(msg) => write!(f, "invalid walk: {msg}"),
            Error::VoltageInvolution { edge } => {
                write!(f, "voltage of edge {edge} violates alpha(d^-1) = alpha(d)^-1")
            }
            Error::InvalidVoltage(msg) => write!(f, "invalid voltage assignment: {msg}"),
            Error::Hypothesis(msg) => write!(f, "hypothesis not met: {msg}"),
            Error::Mismatch(msg) => write!(f, "cross-check mismatch: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
