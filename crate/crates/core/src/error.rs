use thiserror::Error;

/// Errors produced by the library and the experiment harness.
#[derive(Debug, Error)]
pub enum Error {
    /// Resolution outside the supported range `1..=MAX_RESOLUTION`.
    #[error("resolution N={0} out of range 1..={max}", max = crate::dyadic::MAX_RESOLUTION)]
    InvalidResolution(u32),

    /// A subcube level exceeds the resolution it is used at, or a base point
    /// has bits at or above the subcube level.
    #[error("invalid subcube: level {level} with base {base} at resolution {resolution}")]
    InvalidSubcube {
        level: u32,
        base: u64,
        resolution: u32,
    },

    /// Step-function value vector has the wrong length for its resolution.
    #[error("value vector of length {got} does not match 2^{resolution}")]
    ValueLength { got: usize, resolution: u32 },

    /// An order `n` outside `1..=2^N` (or beyond the table that backs it).
    #[error("order n={n} out of range 1..={max}")]
    OrderOutOfRange { n: u64, max: u64 },

    /// A kernel or counterexample needs more resolved coordinates than N provides.
    #[error("resolution N={resolution} too coarse: need at least {needed} coordinates")]
    ResolutionTooCoarse { resolution: u32, needed: u32 },

    /// Cesaro coefficients A_n^alpha are undefined for alpha <= -1.
    #[error("Cesaro coefficients undefined for alpha={0} (requires alpha > -1)")]
    UndefinedCesaroCoefficients(f64),

    /// Alpha outside the domain an operation supports.
    #[error("alpha={alpha} outside supported range {domain}")]
    InvalidAlpha { alpha: f64, domain: &'static str },

    /// Exponent p outside the domain an operation supports.
    #[error("exponent p={p} outside supported range {domain}")]
    InvalidExponent { p: f64, domain: &'static str },

    /// The coefficient-table cross check `sum_k A_k^(a-1) = A_n^a` failed.
    #[error("coefficient identity violated at n={n}: relative deviation {deviation:e}")]
    CoefficientIdentity { n: u64, deviation: f64 },

    /// Atom generation kept producing an all-zero draw after mean subtraction.
    #[error("degenerate atom draw for seed {seed} after {retries} retries")]
    DegenerateAtom { seed: u64, retries: u32 },

    /// A grid does not satisfy the preconditions of the requested experiment.
    #[error("invalid grid for {experiment}: {reason}")]
    InvalidGrid {
        experiment: &'static str,
        reason: String,
    },

    /// A measured quantity came out non-finite.
    #[error("non-finite value for {context}")]
    NonFinite { context: String },

    /// Report serialization or file output failed.
    #[error("report output failed: {0}")]
    Io(#[from] std::io::Error),

    /// JSON (de)serialization failed.
    #[error("serialization failed: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
