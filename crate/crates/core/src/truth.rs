//! Exact arithmetic on the finite Łukasiewicz chain `{0, 1/(m-1), ..., 1}`.
//!
//! Every value carries its scale `m`; combining values of different scales
//! is an error rather than a silent rescale. No floating point is involved.

use std::fmt;

use num_rational::Ratio;
use thiserror::Error;

/// Errors from truth-value arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TruthError {
    #[error("scale must be at least 2, got {0}")]
    InvalidScale(u32),
    #[error("numerator {numerator} out of range for scale {scale}")]
    OutOfRange { numerator: u32, scale: u32 },
    #[error("scale mismatch: {left} vs {right}")]
    ScaleMismatch { left: u32, right: u32 },
    #[error("n(a) is defined only for 1/2 <= a < 1, got {0}")]
    NValueDomain(TruthValue),
    #[error("index {index} is not representable with scale {scale}")]
    Unrepresentable { index: Index, scale: u32 },
    #[error("malformed index {numerator}/{denominator}")]
    MalformedIndex { numerator: u64, denominator: u64 },
    #[error("cannot read `{0}` as an index; expected k/d, 0 or 1")]
    IndexSyntax(String),
}

/// An element `numerator / (scale - 1)` of the m-valued chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TruthValue {
    numerator: u32,
    scale: u32,
}

/// The binary MV operations beyond `→`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinaryOp {
    Meet,
    Join,
    OPlus,
    OTimes,
    OMinus,
}

impl TruthValue {
    pub fn new(numerator: u32, scale: u32) -> Result<Self, TruthError> {
        if scale < 2 {
            return Err(TruthError::InvalidScale(scale));
        }
        if numerator > scale - 1 {
            return Err(TruthError::OutOfRange { numerator, scale });
        }
        Ok(TruthValue { numerator, scale })
    }

    pub fn zero(scale: u32) -> Result<Self, TruthError> {
        Self::new(0, scale)
    }

    pub fn one(scale: u32) -> Result<Self, TruthError> {
        Self::new(scale.saturating_sub(1), scale)
    }

    /// All values of the chain in ascending order.
    pub fn chain(scale: u32) -> Result<Vec<TruthValue>, TruthError> {
        if scale < 2 {
            return Err(TruthError::InvalidScale(scale));
        }
        Ok((0..scale)
            .map(|numerator| TruthValue { numerator, scale })
            .collect())
    }

    pub fn numerator(self) -> u32 {
        self.numerator
    }

    pub fn scale(self) -> u32 {
        self.scale
    }

    /// The denominator `m - 1`.
    pub fn top(self) -> u32 {
        self.scale - 1
    }

    pub fn is_one(self) -> bool {
        self.numerator == self.top()
    }

    pub fn is_zero(self) -> bool {
        self.numerator == 0
    }

    fn with(self, numerator: u32) -> TruthValue {
        TruthValue {
            numerator,
            scale: self.scale,
        }
    }

    fn same_scale(self, other: TruthValue) -> Result<(), TruthError> {
        if self.scale != other.scale {
            Err(TruthError::ScaleMismatch {
                left: self.scale,
                right: other.scale,
            })
        } else {
            Ok(())
        }
    }

    /// `∼a = 1 - a`
    pub fn neg(self) -> TruthValue {
        self.with(self.top() - self.numerator)
    }

    /// `a → b = min{1, 1 - a + b}`
    pub fn imp(self, other: TruthValue) -> Result<TruthValue, TruthError> {
        self.same_scale(other)?;
        let top = self.top();
        Ok(self.with(top.min(top - self.numerator + other.numerator)))
    }

    pub fn binary(self, op: BinaryOp, other: TruthValue) -> Result<TruthValue, TruthError> {
        self.same_scale(other)?;
        let (a, b, top) = (self.numerator, other.numerator, self.top());
        let n = match op {
            BinaryOp::Meet => a.min(b),
            BinaryOp::Join => a.max(b),
            BinaryOp::OPlus => top.min(a + b),
            BinaryOp::OTimes => (a + b).saturating_sub(top),
            BinaryOp::OMinus => a.saturating_sub(b),
        };
        Ok(self.with(n))
    }

    pub fn meet(self, other: TruthValue) -> Result<TruthValue, TruthError> {
        self.binary(BinaryOp::Meet, other)
    }

    pub fn join(self, other: TruthValue) -> Result<TruthValue, TruthError> {
        self.binary(BinaryOp::Join, other)
    }

    pub fn oplus(self, other: TruthValue) -> Result<TruthValue, TruthError> {
        self.binary(BinaryOp::OPlus, other)
    }

    pub fn otimes(self, other: TruthValue) -> Result<TruthValue, TruthError> {
        self.binary(BinaryOp::OTimes, other)
    }

    pub fn ominus(self, other: TruthValue) -> Result<TruthValue, TruthError> {
        self.binary(BinaryOp::OMinus, other)
    }

    /// `a ↔ b = min(a → b, b → a)`, i.e. `1 - |a - b|`.
    pub fn iff(self, other: TruthValue) -> Result<TruthValue, TruthError> {
        self.same_scale(other)?;
        Ok(self.with(self.top() - self.numerator.abs_diff(other.numerator)))
    }

    /// Largest `k` with `k·(1 - a) < 1`, defined for `1/2 <= a < 1`.
    pub fn n_value(self) -> Result<u32, TruthError> {
        let top = self.top();
        if 2 * self.numerator < top || self.numerator == top {
            return Err(TruthError::NValueDomain(self));
        }
        // k·d < top  <=>  k·d <= top - 1
        let d = top - self.numerator;
        Ok((top - 1) / d)
    }

    /// The exact rational this value denotes.
    pub fn to_index(self) -> Index {
        Index(Ratio::new(self.numerator as u64, self.top() as u64))
    }

    /// Converts an exact rational to a value of the given scale.
    pub fn from_index(index: Index, scale: u32) -> Result<TruthValue, TruthError> {
        if scale < 2 {
            return Err(TruthError::InvalidScale(scale));
        }
        let top = (scale - 1) as u64;
        let scaled = index.0 * Ratio::from_integer(top);
        if !scaled.is_integer() {
            return Err(TruthError::Unrepresentable { index, scale });
        }
        Self::new(scaled.to_integer() as u32, scale)
    }

    /// Unreduced rendering `i/(m-1)`, e.g. `2/4`.
    pub fn unreduced(self) -> String {
        format!("{}/{}", self.numerator, self.top())
    }

    /// Reduced rendering, e.g. `1/2`, `0`, `1`.
    pub fn reduced(self) -> String {
        let r = Ratio::new(self.numerator, self.top());
        if r.is_integer() {
            r.to_integer().to_string()
        } else {
            format!("{}/{}", r.numer(), r.denom())
        }
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.unreduced())
    }
}

/// An exact rational in `[0, 1]`, used as the index of `J` and `I`.
///
/// Stored in lowest terms, so `2/4` and `1/2` are the same index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Index(Ratio<u64>);

impl Index {
    pub fn new(numerator: u64, denominator: u64) -> Result<Index, TruthError> {
        if denominator == 0 || numerator > denominator {
            return Err(TruthError::MalformedIndex {
                numerator,
                denominator,
            });
        }
        Ok(Index(Ratio::new(numerator, denominator)))
    }

    pub fn zero() -> Index {
        Index(Ratio::from_integer(0))
    }

    pub fn one() -> Index {
        Index(Ratio::from_integer(1))
    }

    pub fn numer(&self) -> u64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> u64 {
        *self.0.denom()
    }
}

impl std::str::FromStr for Index {
    type Err = TruthError;

    /// Accepts `k/d` as well as the bare endpoints `0` and `1`.
    fn from_str(s: &str) -> Result<Index, TruthError> {
        let bad = || TruthError::IndexSyntax(s.to_string());
        let (k, d) = match s.trim().split_once('/') {
            Some((k, d)) => (k.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let k = k.parse().map_err(|_| bad())?;
        let d = d.parse().map_err(|_| bad())?;
        Index::new(k, d)
    }
}

impl fmt::Display for Index {
    /// Always `k/d`, so `0/1` and `1/1` for the endpoints.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}
