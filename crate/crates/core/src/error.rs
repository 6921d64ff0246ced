use thiserror::Error;

use crate::geometry::{GridPoint, Point};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("polyomino has no pixels")]
    EmptyPolyomino,
    #[error("polyomino is not edge-connected")]
    Disconnected,
    #[error("no cutter placement fits inside the region")]
    EmptyOffset,
    #[error("offset region is not connected; the cutter cannot move between its parts")]
    OffsetDisconnected,
    #[error("pixel {0:?} cannot be swept by any cutter placement inside the region")]
    NarrowCorridor(GridPoint),
    #[error("boundary loop {loop_index} carries an odd number ({count}) of strip endpoints")]
    ParityViolation { loop_index: usize, count: usize },
    #[error("vertex has odd degree in the tour graph")]
    OddDegree,
    #[error("tour graph is not connected")]
    DisconnectedGraph,
    #[error("scan set does not cover the region; uncovered point {0:?}")]
    NotCovering(Point),
    #[error("region has holes; the boundary identity only applies to hole-free regions")]
    HolesUnsupported,
    #[error("inward offset at depth {depth} collapses")]
    OffsetCollapse { depth: f64 },
    #[error("inward offset at depth {depth} changes topology")]
    TopologyChange { depth: f64 },
    #[error("instance too large for the exact solver: {0}")]
    InstanceTooLarge(String),
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("scan point {0:?} is not a vertex of the tour")]
    ScanOffTour(Point),
}
