//! The combinatorial rotation count `r(L)` of a curve word.
//!
//! A curve on the page of the standard embedded open book of the tight
//! 3-sphere has a front projection whose signed vertical tangencies determine
//! its rotation number. Those tangencies can be counted straight from the
//! curve word: same-index inverse pairs seed the counts, and every index
//! change contributes through four fixed marker rules. The result
//! `r = ρ₊ − λ₊` is the rotation number of the Legendrian realization,
//! provided the word comes from an embedded curve in the canonical position;
//! for other words the number is still computed but carries no promise.
//!
//! Planar pages with boundary-parallel positive monodromy admit a shortcut:
//! a knot enclosing holes with unit coefficients rotates by the (signed)
//! number of holes minus one.

use crate::page_model::{CurveWord, Family, Letter, Sign};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PlanarError {
    #[error("planar shortcut needs all coefficients in {{-1, 0, +1}}, found {0}")]
    OutOfUnitRange(i64),
    #[error("planar shortcut needs all non-zero coefficients of one sign")]
    MixedSigns,
    #[error("planar shortcut is undefined for the zero class")]
    AllZero,
}

/// The two tangency counters of the word scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TangencyCount {
    pub lambda_plus: usize,
    pub rho_plus: usize,
}

/// A word symbol after marker insertion: a letter, or an index-change marker
/// `r_u` (index increases) / `r_d` (index decreases).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarkedSymbol {
    Letter(Letter),
    IndexUp,
    IndexDown,
}

impl fmt::Display for MarkedSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MarkedSymbol::Letter(l) => write!(f, "{l}"),
            MarkedSymbol::IndexUp => write!(f, "r_u"),
            MarkedSymbol::IndexDown => write!(f, "r_d"),
        }
    }
}

/// Renders a marked word as a spaced string, e.g. `"a1 r_u b2"`.
pub fn marked_word_string(symbols: &[MarkedSymbol]) -> String {
    symbols
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Inserts `r_u` / `r_d` markers between cyclically adjacent letters whose
/// indices differ, including after the last letter when its index differs
/// from the first letter's.
pub fn index_change_markers(word: &CurveWord) -> Vec<MarkedSymbol> {
    let mut out = Vec::with_capacity(word.len() * 2);
    for (x, y) in word.cyclic_pairs() {
        out.push(MarkedSymbol::Letter(x));
        if y.index > x.index {
            out.push(MarkedSymbol::IndexUp);
        } else if y.index < x.index {
            out.push(MarkedSymbol::IndexDown);
        }
    }
    out
}

fn is_alpha_inverse(l: Letter) -> bool {
    l.family == Family::Alpha && l.exponent == Sign::Negative
}

fn is_beta_inverse(l: Letter) -> bool {
    l.family == Family::Beta && l.exponent == Sign::Negative
}

fn is_beta_plain(l: Letter) -> bool {
    l.family == Family::Beta && l.exponent == Sign::Positive
}

fn is_alpha_plain(l: Letter) -> bool {
    l.family == Family::Alpha && l.exponent == Sign::Positive
}

/// Scans the cyclic word and returns the tangency counters together with
/// `r = ρ₊ − λ₊`.
///
/// Seed values: λ₊ counts the cyclic adjacencies (β_i⁻¹, α_i⁻¹) of equal
/// index, ρ₊ the adjacencies (α_i⁻¹, β_i⁻¹) of equal index. Each index-change
/// marker then contributes by exactly four rules: λ₊ increases for a β⁻¹
/// followed by `r_u` and for `r_d` followed by an α⁻¹; ρ₊ increases for an
/// α⁻¹ followed by `r_d` and for a β followed by `r_d`.
pub fn rotation_word_count(word: &CurveWord) -> (TangencyCount, i64) {
    let mut count = TangencyCount::default();
    for (x, y) in word.cyclic_pairs() {
        if x.index == y.index {
            if is_beta_inverse(x) && is_alpha_inverse(y) {
                count.lambda_plus += 1;
            }
            if is_alpha_inverse(x) && is_beta_inverse(y) {
                count.rho_plus += 1;
            }
        } else if y.index > x.index {
            // gap carries r_u
            if is_beta_inverse(x) {
                count.lambda_plus += 1;
            }
        } else {
            // gap carries r_d
            if is_alpha_inverse(x) || is_beta_plain(x) {
                count.rho_plus += 1;
            }
            if is_alpha_inverse(y) {
                count.lambda_plus += 1;
            }
        }
    }
    let r = count.rho_plus as i64 - count.lambda_plus as i64;
    (count, r)
}

/// The dual counters λ₋, ρ₋ of the same tangency picture, offered as a
/// diagnostic only. The word calculus pins complete marker rules just for
/// λ₊/ρ₊; the rules used here cover the cases that occur in practice but are
/// not exhaustive, so `λ₋ − ρ₋` need not reproduce `r` on arbitrary words.
pub fn dual_tangency_count(word: &CurveWord) -> (usize, usize) {
    let mut lambda_minus = 0usize;
    let mut rho_minus = 0usize;
    for (x, y) in word.cyclic_pairs() {
        if x.index == y.index {
            if is_alpha_plain(x) && is_beta_plain(y) {
                lambda_minus += 1;
            }
            if is_beta_plain(x) && is_alpha_plain(y) {
                rho_minus += 1;
            }
        } else if y.index > x.index {
            if is_alpha_plain(x) {
                lambda_minus += 1;
            }
            if is_alpha_plain(y) {
                rho_minus += 1;
            }
        } else {
            if is_beta_plain(y) {
                lambda_minus += 1;
            }
        }
    }
    (lambda_minus, rho_minus)
}

/// Rotation number of a knot on the planar page of the disc-with-holes open
/// book with boundary-parallel positive monodromy: `Σ b_i − sign(Σ b_i)`.
///
/// Demands the shape such a knot class must have: all coefficients in
/// {−1, 0, +1}, all non-zero ones of a single sign, and at least one
/// non-zero.
pub fn planar_rotation(b_coeffs: &[i64]) -> Result<i64, PlanarError> {
    let mut pos = false;
    let mut neg = false;
    for &b in b_coeffs {
        if b.abs() > 1 {
            return Err(PlanarError::OutOfUnitRange(b));
        }
        pos |= b == 1;
        neg |= b == -1;
    }
    if pos && neg {
        return Err(PlanarError::MixedSigns);
    }
    if !pos && !neg {
        return Err(PlanarError::AllZero);
    }
    let sum: i64 = b_coeffs.iter().sum();
    Ok(sum - sum.signum())
}
