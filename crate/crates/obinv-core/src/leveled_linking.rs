//! Linking numbers of leveled page curves in the embedded open book.
//!
//! Parallel copies of the page stack vertically in the tight 3-sphere; a
//! curve pushed to the copy with shift `t` is written `K(t)`. Only the
//! relative order of levels matters. For the basis curves the linking numbers
//! are:
//!
//! * `lk(α_i(t), α_j(s)) = lk(β_i(t), β_j(s)) = −δ_ij`,
//! * `lk(α_i(t), β_j(s)) = −1` exactly when `i = j` and `t < s`, else `0`,
//!
//! and general curves link by bilinear extension over their homology
//! decompositions. Pushing a curve off to a nearby level computes its
//! page-framed Thurston–Bennequin invariant, which collapses to an explicit
//! negative semi-definite quadratic form in the class coefficients.

use crate::page_model::HomologyClassVector;
use num_bigint::BigInt;
use num_rational::Rational64;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinkError {
    #[error("linking number of leveled curves needs distinct levels")]
    EqualLevels,
}

/// A basis curve `α_i` or `β_i` (1-based index).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisCurve {
    Alpha(usize),
    Beta(usize),
}

/// A page curve class pushed to the page copy at `level`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeveledCurve {
    pub klass: HomologyClassVector,
    pub level: Rational64,
}

impl LeveledCurve {
    pub fn new(klass: HomologyClassVector, level: Rational64) -> Self {
        Self { klass, level }
    }
}

/// Linking number of two basis curves at distinct levels, symmetric in its
/// arguments.
pub fn basis_linking(
    c1: BasisCurve,
    t: Rational64,
    c2: BasisCurve,
    s: Rational64,
) -> Result<i64, LinkError> {
    if t == s {
        return Err(LinkError::EqualLevels);
    }
    use BasisCurve::*;
    Ok(match (c1, c2) {
        (Alpha(i), Alpha(j)) | (Beta(i), Beta(j)) => {
            if i == j {
                -1
            } else {
                0
            }
        }
        (Alpha(i), Beta(j)) => {
            if i == j && t < s {
                -1
            } else {
                0
            }
        }
        (Beta(i), Alpha(j)) => {
            if i == j && s < t {
                -1
            } else {
                0
            }
        }
    })
}

/// Linking number of two leveled curves: the bilinear extension of
/// [`basis_linking`] over both homology decompositions. With `lo` the curve
/// at the smaller level and `hi` the other one this is
/// `−Σ_k (lo.a_k hi.a_k + lo.a_k hi.b_k + lo.b_k hi.b_k)`.
pub fn linking_number(k1: &LeveledCurve, k2: &LeveledCurve) -> Result<BigInt, LinkError> {
    if k1.level == k2.level {
        return Err(LinkError::EqualLevels);
    }
    let (lo, hi) = if k1.level < k2.level {
        (k1, k2)
    } else {
        (k2, k1)
    };
    Ok(cross_linking(&lo.klass, &hi.klass))
}

/// `lk(lo(t), hi(s))` for `t < s`, directly from the classes.
pub fn cross_linking(lo: &HomologyClassVector, hi: &HomologyClassVector) -> BigInt {
    let n = lo.b_coeffs.len().max(hi.b_coeffs.len());
    let mut acc = BigInt::from(0);
    for k in 0..n {
        let term = i128::from(lo.a(k)) * i128::from(hi.a(k))
            + i128::from(lo.a(k)) * i128::from(hi.b(k))
            + i128::from(lo.b(k)) * i128::from(hi.b(k));
        acc -= BigInt::from(term);
    }
    acc
}

/// Page-framed Thurston–Bennequin invariant of a page curve: the linking
/// number with its own push-off to a nearby level,
/// `−Σ_k ((K•a_k)² + (K•a_k)(K•b_k) + (K•b_k)²)`.
pub fn page_framed_tb(klass: &HomologyClassVector) -> BigInt {
    cross_linking(klass, klass)
}
