//! Approximation algorithms and exact baselines for the myopic watchman
//! problem with discrete vision: cover a region with limited-range scans taken
//! at stops of a closed tour, minimising `c · #scans + tour length`.

pub mod circular_general;
pub mod circular_grid;
pub mod coverage;
pub mod error;
pub mod euler;
pub mod geometry;
pub mod milling;
pub mod oracle;
pub mod rect_polygon;
pub mod rect_tour;
pub mod scan_cover;

pub use error::{Error, Result};
pub use geometry::{CostModel, GridPoint, Mode, Pixel, PixelSet, Point, Polyomino, ScanMetric, Solution, TourMetric};
