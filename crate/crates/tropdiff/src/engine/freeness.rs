//! Windowed monomial-freeness for linear initial ideals: build the
//! initials of shifted generators, stratify by value, and row-reduce each
//! stratum over Q looking for a row supported on a single variable.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::coefficients::{Rational, RationalFunction};
use crate::diffpoly::{DerivVar, DiffMonomial, DiffPolynomial};
use crate::tropical::{initial, val_poly, MonomialOrder, SupportProfile};

use super::EngineError;

/// One entry of a monomial-found certificate: multiply the initial of
/// `d^shift(generators[generator])` by `multiplier` and sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateEntry {
    pub generator: usize,
    pub shift: u32,
    pub multiplier: Rational,
}

/// Result of the windowed search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonomialFreenessReport {
    /// A pure monomial lies in the span of equal-value initials. The
    /// certificate combination reproduces a scalar multiple of the witness.
    MonomialFound {
        witness: DiffMonomial,
        value: i64,
        certificate: Vec<CertificateEntry>,
    },
    /// No monomial in the span of initials of shifts up to the window.
    /// Window-relative only; not a completeness statement.
    NoneInWindow { window: u32 },
}

struct Row {
    generator: usize,
    shift: u32,
    /// Rational coefficient per column; the t-power is determined by the
    /// stratum value and the column variable, so Q-elimination suffices.
    entries: Vec<Rational>,
}

/// Search the initials of `d^i g` for `g` in `generators`, `0 <= i <=
/// window`, for a monomial witness. Sound when it finds one; a negative
/// answer is relative to the window.
pub fn monomial_free_window(
    generators: &[DiffPolynomial],
    profile: &SupportProfile,
    ord: MonomialOrder,
    window: u32,
) -> Result<MonomialFreenessReport, EngineError> {
    let _ = ord;
    for g in generators {
        if g.is_zero() || !g.classify().linear {
            return Err(EngineError::NonLinearGenerator);
        }
    }

    // strata: value -> (columns in first-seen order, rows)
    let mut strata: BTreeMap<i64, (Vec<DerivVar>, Vec<Row>)> = BTreeMap::new();
    for (gi, g) in generators.iter().enumerate() {
        let mut shifted = g.clone();
        for shift in 0..=window {
            if shift > 0 {
                shifted = shifted.differentiate();
            }
            let Some(v) = val_poly(profile, &shifted)
                .ok()
                .and_then(|v| v.finite())
            else {
                continue;
            };
            let ini = initial(profile, &shifted).expect("finite value has an initial");
            let mut sparse: BTreeMap<DerivVar, Rational> = BTreeMap::new();
            for (m, c) in ini.iter() {
                let (var, _) = m.iter().next().expect("linear monomial");
                let (coeff, _) = c.bar().expect("nonzero initial coefficient");
                sparse.insert(*var, coeff);
            }
            let (columns, rows) = strata.entry(v).or_default();
            for var in sparse.keys() {
                if !columns.contains(var) {
                    columns.push(*var);
                }
            }
            let entries = columns
                .iter()
                .map(|v| sparse.get(v).cloned().unwrap_or_else(Rational::zero))
                .collect();
            rows.push(Row {
                generator: gi,
                shift,
                entries,
            });
        }
    }

    for (value, (columns, mut rows)) in strata {
        // columns only ever append, so older rows pad with zeros
        for row in rows.iter_mut() {
            row.entries.resize(columns.len(), Rational::zero());
        }
        if let Some((witness_col, combo)) = rref_unit_row(&rows, columns.len()) {
            let witness = DiffMonomial::var(columns[witness_col]);
            let certificate = combo
                .into_iter()
                .filter(|(_, mult)| !mult.is_zero())
                .map(|(ri, mult)| CertificateEntry {
                    generator: rows[ri].generator,
                    shift: rows[ri].shift,
                    multiplier: mult,
                })
                .collect();
            return Ok(MonomialFreenessReport::MonomialFound {
                witness,
                value,
                certificate,
            });
        }
    }
    Ok(MonomialFreenessReport::NoneInWindow { window })
}

/// Reduced row echelon form with combination tracking. Returns the column
/// of the first row supported on a single column, together with that row's
/// expression in the original rows.
fn rref_unit_row(rows: &[Row], ncols: usize) -> Option<(usize, Vec<(usize, Rational)>)> {
    let nrows = rows.len();
    let mut matrix: Vec<Vec<Rational>> = rows.iter().map(|r| r.entries.clone()).collect();
    let mut combo: Vec<Vec<Rational>> = (0..nrows)
        .map(|i| {
            (0..nrows)
                .map(|j| {
                    if i == j {
                        Rational::from_integer(1.into())
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();

    let mut pivot_row = 0;
    for col in 0..ncols {
        let Some(src) = (pivot_row..nrows).find(|&r| !matrix[r][col].is_zero()) else {
            continue;
        };
        matrix.swap(pivot_row, src);
        combo.swap(pivot_row, src);
        let inv = matrix[pivot_row][col].clone().recip();
        for entry in matrix[pivot_row].iter_mut() {
            *entry = entry.clone() * inv.clone();
        }
        for entry in combo[pivot_row].iter_mut() {
            *entry = entry.clone() * inv.clone();
        }
        let pivot_matrix = matrix[pivot_row].clone();
        let pivot_combo = combo[pivot_row].clone();
        for r in 0..nrows {
            if r == pivot_row || matrix[r][col].is_zero() {
                continue;
            }
            let factor = matrix[r][col].clone();
            for (entry, p) in matrix[r].iter_mut().zip(&pivot_matrix) {
                *entry = entry.clone() - factor.clone() * p.clone();
            }
            for (entry, p) in combo[r].iter_mut().zip(&pivot_combo) {
                *entry = entry.clone() - factor.clone() * p.clone();
            }
        }
        pivot_row += 1;
        if pivot_row == nrows {
            break;
        }
    }

    for (r, row) in matrix.iter().enumerate() {
        let nonzero: Vec<usize> = (0..ncols).filter(|&c| !row[c].is_zero()).collect();
        if nonzero.len() == 1 {
            let combination = (0..nrows).map(|j| (j, combo[r][j].clone())).collect();
            return Some((nonzero[0], combination));
        }
    }
    None
}

/// Replay a certificate: the stated combination of initials must be a
/// single term whose monomial is the witness.
pub fn verify_monomial_certificate(
    generators: &[DiffPolynomial],
    profile: &SupportProfile,
    _ord: MonomialOrder,
    witness: &DiffMonomial,
    certificate: &[CertificateEntry],
) -> bool {
    let mut acc = DiffPolynomial::zero();
    for entry in certificate {
        let shifted = generators[entry.generator].differentiate_n(entry.shift);
        let Ok(ini) = initial(profile, &shifted) else {
            return false;
        };
        acc = &acc + &ini.scale(&RationalFunction::constant(entry.multiplier.clone()));
    }
    if acc.num_terms() != 1 {
        return false;
    }
    let found = acc.monomials().next() == Some(witness);
    found
}
