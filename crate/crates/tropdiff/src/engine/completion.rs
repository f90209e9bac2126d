//! Pair-queue completion: the complete algorithm for linear
//! constant-coefficient systems over progression supports, the bounded
//! Buchberger-style criterion, and the round-based partial completion for
//! general homogeneous systems.

use std::collections::{BTreeSet, VecDeque};

use crate::diffpoly::DiffPolynomial;
use crate::reduction::{s_polynomial_with_cofactors, CofactorTerm, ReductionStatus, ShiftTable};
use crate::tropical::{MonomialOrder, SupportProfile};

use super::{
    normalize_element, spread_and_q, validate_linear_const_progression, EngineError, GbParams,
    GbResult, GbStatus, Provenance, SPairTrace, INTERNAL_CAP,
};

/// An unordered pair of shifted basis elements, stored with the
/// lexicographically smaller (generator, shift) first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct PairKey {
    g1: usize,
    s1: u32,
    g2: usize,
    s2: u32,
}

impl PairKey {
    fn new(a: (usize, u32), b: (usize, u32)) -> PairKey {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        PairKey {
            g1: lo.0,
            s1: lo.1,
            g2: hi.0,
            s2: hi.1,
        }
    }
}

/// Enqueue, in (g1, g2, s1, s2) order, every unseen pair within the window
/// whose shifted leading monomials are defined and share a factor. Pairs
/// with coprime leading monomials reduce to zero and are skipped outright.
fn enqueue_pairs(
    queue: &mut VecDeque<PairKey>,
    seen: &mut BTreeSet<PairKey>,
    table: &mut ShiftTable,
    shifts: u32,
) {
    let basis_len = table.len();
    for g1 in 0..basis_len {
        for g2 in g1..basis_len {
            for s1 in 0..shifts {
                let start = if g1 == g2 { s1 + 1 } else { 0 };
                for s2 in start..shifts {
                    let key = PairKey::new((g1, s1), (g2, s2));
                    if seen.contains(&key) {
                        continue;
                    }
                    seen.insert(key);
                    let Some(lm1) = table.lead(g1, s1).map(|l| l.lm.clone()) else {
                        continue;
                    };
                    let Some(l2) = table.lead(g2, s2) else {
                        continue;
                    };
                    if lm1.is_coprime(&l2.lm) {
                        continue;
                    }
                    queue.push_back(key);
                }
            }
        }
    }
}

/// S-polynomial of a queued pair, from the shared shift table.
fn pair_s_polynomial(
    table: &mut ShiftTable,
    profile: &SupportProfile,
    ord: MonomialOrder,
    pair: PairKey,
) -> Result<(DiffPolynomial, CofactorTerm, CofactorTerm), EngineError> {
    let a = table.shifted(pair.g1, pair.s1).clone();
    let b = table.shifted(pair.g2, pair.s2).clone();
    Ok(s_polynomial_with_cofactors(profile, ord, &a, &b)?)
}

/// Complete basis computation for linear homogeneous constant-coefficient
/// systems over pure progression supports. Terminating by the periodicity
/// of shifted leading monomials; the returned basis satisfies the bounded
/// pair criterion over the final window.
pub fn groebner_basis(
    generators: &[DiffPolynomial],
    profile: &SupportProfile,
    ord: MonomialOrder,
) -> Result<GbResult, EngineError> {
    let progressions = validate_linear_const_progression(generators, profile)?;
    if generators.is_empty() {
        return Err(EngineError::PreconditionViolated {
            requirement: "nonempty generator list",
            element: String::new(),
        });
    }
    let period = progressions
        .iter()
        .fold(1u64, |acc, (_, m)| num_integer::lcm(acc, *m));

    let mut basis: Vec<DiffPolynomial> = Vec::new();
    let mut provenance = Vec::new();
    for (i, g) in generators.iter().enumerate() {
        if !basis.contains(g) {
            basis.push(g.clone());
            provenance.push(Provenance::Input(i));
        }
    }

    let mut table = ShiftTable::new(profile, ord, &basis)?;
    let mut queue = VecDeque::new();
    let mut seen = BTreeSet::new();
    let (mut spread, mut q) = spread_and_q(&basis, period);
    let mut shifts = ((q + 1) * period) as u32;
    enqueue_pairs(&mut queue, &mut seen, &mut table, shifts);

    let mut pairs_processed = 0u64;
    let mut reductions_to_zero = 0u64;

    while let Some(pair) = queue.pop_front() {
        pairs_processed += 1;
        let (sp, uf, ug) = pair_s_polynomial(&mut table, profile, ord, pair)?;
        if sp.is_zero() {
            reductions_to_zero += 1;
            continue;
        }
        let trace = table.reduce(&sp, INTERNAL_CAP)?;
        if trace.status == ReductionStatus::CapReached {
            return Err(EngineError::ReductionCap);
        }
        if trace.remainder.is_zero() {
            reductions_to_zero += 1;
            continue;
        }
        let (element, scale) = normalize_element(profile, ord, &trace.remainder)?;
        provenance.push(Provenance::SPair(Box::new(SPairTrace {
            g1: pair.g1,
            s1: pair.s1,
            g2: pair.g2,
            s2: pair.s2,
            uf,
            ug,
            quotients: trace.quotients,
            scale,
        })));
        basis.push(element.clone());
        table.push_generator(element);
        let sq = spread_and_q(&basis, period);
        spread = sq.0;
        q = sq.1;
        shifts = ((q + 1) * period) as u32;
        enqueue_pairs(&mut queue, &mut seen, &mut table, shifts);
    }

    Ok(GbResult {
        basis,
        status: GbStatus::CertifiedComplete,
        pairs_processed,
        reductions_to_zero,
        params: Some(GbParams { period, spread, q }),
        provenance,
    })
}

/// Mode of the bounded criterion check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMode {
    /// Decision procedure for the linear constant-coefficient progression
    /// class, over the window derived from the basis.
    LinearConstProgression,
    /// Check all shift pairs up to an explicit bound. Can refute, never
    /// certify: the criterion quantifies over all shifts.
    ExplicitBound(u32),
}

/// Outcome of the bounded criterion check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckOutcome {
    Certified,
    Refuted {
        pair: ((usize, u32), (usize, u32)),
        remainder: DiffPolynomial,
    },
    Inconclusive,
}

/// Run the pair criterion over a shift window: every S-polynomial of
/// shifted basis elements must differentially reduce to zero.
pub fn check_basis(
    basis: &[DiffPolynomial],
    profile: &SupportProfile,
    ord: MonomialOrder,
    mode: CheckMode,
) -> Result<CheckOutcome, EngineError> {
    if basis.is_empty() || basis.iter().any(|g| g.is_zero()) {
        return Err(EngineError::PreconditionViolated {
            requirement: "nonempty, nonzero basis",
            element: String::new(),
        });
    }
    for g in basis {
        if !g.classify().homogeneous {
            return Err(EngineError::PreconditionViolated {
                requirement: "homogeneous",
                element: g.to_string(),
            });
        }
    }
    let (shifts, decisive) = match mode {
        CheckMode::LinearConstProgression => {
            let progressions = validate_linear_const_progression(basis, profile)?;
            let period = progressions
                .iter()
                .fold(1u64, |acc, (_, m)| num_integer::lcm(acc, *m));
            let (_, q) = spread_and_q(basis, period);
            (((q + 1) * period) as u32, true)
        }
        CheckMode::ExplicitBound(b) => (b + 1, false),
    };

    let mut table = ShiftTable::new(profile, ord, basis)?;
    let mut hit_cap = false;
    for g1 in 0..basis.len() {
        for g2 in g1..basis.len() {
            for s1 in 0..shifts {
                let start = if g1 == g2 { s1 + 1 } else { 0 };
                for s2 in start..shifts {
                    let Some(lm1) = table.lead(g1, s1).map(|l| l.lm.clone()) else {
                        continue;
                    };
                    let Some(l2) = table.lead(g2, s2) else {
                        continue;
                    };
                    if lm1.is_coprime(&l2.lm) {
                        continue;
                    }
                    let pair = PairKey::new((g1, s1), (g2, s2));
                    let (sp, _, _) = pair_s_polynomial(&mut table, profile, ord, pair)?;
                    if sp.is_zero() {
                        continue;
                    }
                    let trace = table.reduce(&sp, INTERNAL_CAP)?;
                    if trace.status == ReductionStatus::CapReached {
                        hit_cap = true;
                        continue;
                    }
                    if !trace.remainder.is_zero() {
                        return Ok(CheckOutcome::Refuted {
                            pair: ((g1, s1), (g2, s2)),
                            remainder: trace.remainder,
                        });
                    }
                }
            }
        }
    }
    if decisive && !hit_cap {
        Ok(CheckOutcome::Certified)
    } else {
        Ok(CheckOutcome::Inconclusive)
    }
}

/// Round-based partial completion for general systems. Each round extends
/// the derivative closure by the lower bound `d` and saturates the S-pairs
/// inside it with cap-limited reduction. New nonzero remainders join the
/// basis. The completeness statements behind the certificate assume
/// homogeneous inputs; the mechanics accept any nonzero system, and the
/// run certifies only through the linear constant-coefficient decision.
/// Otherwise it reports `BoundedOnly` when a round adds nothing, or
/// `Failed` after the round budget (or when any reduction hit the cap, so
/// saturation cannot be trusted).
pub fn buchberger_rounds(
    generators: &[DiffPolynomial],
    profile: &SupportProfile,
    ord: MonomialOrder,
    rounds: u32,
    cap: u64,
) -> Result<GbResult, EngineError> {
    if generators.is_empty() {
        return Err(EngineError::PreconditionViolated {
            requirement: "nonempty generator list",
            element: String::new(),
        });
    }
    for g in generators {
        if g.is_zero() {
            return Err(EngineError::PreconditionViolated {
                requirement: "nonzero",
                element: g.to_string(),
            });
        }
        if let Some(v) = g.max_var() {
            if v as usize > profile.n() {
                return Err(EngineError::PreconditionViolated {
                    requirement: "variable index within profile arity",
                    element: g.to_string(),
                });
            }
        }
    }
    let d = super::lower_bound(generators, profile)? as u32;

    let mut basis: Vec<DiffPolynomial> = Vec::new();
    let mut provenance = Vec::new();
    for (i, g) in generators.iter().enumerate() {
        if !basis.contains(g) {
            basis.push(g.clone());
            provenance.push(Provenance::Input(i));
        }
    }

    let mut table = ShiftTable::new(profile, ord, &basis)?;
    let mut queue = VecDeque::new();
    let mut seen = BTreeSet::new();
    let mut pairs_processed = 0u64;
    let mut reductions_to_zero = 0u64;
    let mut hit_cap = false;
    let mut saturated = false;

    for round in 1..=rounds {
        let shifts = round * d + 1;
        enqueue_pairs(&mut queue, &mut seen, &mut table, shifts);

        let mut added_this_round = 0usize;
        while let Some(pair) = queue.pop_front() {
            pairs_processed += 1;
            let (sp, uf, ug) = pair_s_polynomial(&mut table, profile, ord, pair)?;
            if sp.is_zero() {
                reductions_to_zero += 1;
                continue;
            }
            let trace = table.reduce(&sp, cap)?;
            if trace.status == ReductionStatus::CapReached {
                hit_cap = true;
                continue;
            }
            if trace.remainder.is_zero() {
                reductions_to_zero += 1;
                continue;
            }
            let (element, scale) = normalize_element(profile, ord, &trace.remainder)?;
            provenance.push(Provenance::SPair(Box::new(SPairTrace {
                g1: pair.g1,
                s1: pair.s1,
                g2: pair.g2,
                s2: pair.s2,
                uf,
                ug,
                quotients: trace.quotients,
                scale,
            })));
            basis.push(element.clone());
            table.push_generator(element);
            added_this_round += 1;
            enqueue_pairs(&mut queue, &mut seen, &mut table, shifts);
        }

        if added_this_round == 0 && !hit_cap {
            saturated = true;
            break;
        }
    }

    let status = if hit_cap {
        GbStatus::Failed
    } else if saturated {
        let linear_ok = validate_linear_const_progression(&basis, profile).is_ok();
        if linear_ok
            && matches!(
                check_basis(&basis, profile, ord, CheckMode::LinearConstProgression)?,
                CheckOutcome::Certified
            )
        {
            GbStatus::CertifiedComplete
        } else {
            GbStatus::BoundedOnly
        }
    } else {
        GbStatus::Failed
    };

    let params = profile.period_lcm().map(|period| {
        let (spread, q) = spread_and_q(&basis, period);
        GbParams { period, spread, q }
    });

    Ok(GbResult {
        basis,
        status,
        pairs_processed,
        reductions_to_zero,
        params,
        provenance,
    })
}
