use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Widths must be strictly positive. Positions are 1-based.
    #[error("element {position} has non-positive width {width}")]
    NonPositiveWidth { position: usize, width: f64 },
    /// The width is positive but vanishes when added to the running total.
    #[error("width of element {position} is too small to advance the cumulative width")]
    WidthAbsorbed { position: usize },
    #[error("element {position} is not finite")]
    NonFinite { position: usize },
    #[error("invalid length bounds L = {lower}, U = {upper} (need 0 < L <= U)")]
    InvalidBounds { lower: f64, upper: f64 },
    #[error("bounds L = {lower}, U = {upper} out of range for n = {n} (need 1 <= L <= U <= n)")]
    BoundsOutOfRange { n: usize, lower: u64, upper: u64 },
    #[error("no feasible segment")]
    NoFeasibleSegment,
    #[error("k must be at least 1")]
    ZeroK,
    #[error("x-span of a slope is zero")]
    DegenerateSpan,
    #[error("point with x = {x} does not extend the hull monotonically")]
    NonMonotoneX { x: f64 },
    #[error("hull is empty")]
    EmptyHull,
    #[error("hull position {pos} is out of range")]
    InvalidHullPosition { pos: usize },
    #[error("row range {r1}..={r2} is invalid for {rows} rows")]
    RowRangeInvalid { r1: usize, r2: usize, rows: usize },
    #[error("matrix is ragged or empty")]
    InvalidMatrix,
    #[error("density threshold denominator must be positive and finite")]
    InvalidThreshold,
}
