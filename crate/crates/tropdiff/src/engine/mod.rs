//! Completion algorithms and certificates: the complete basis algorithm for
//! linear constant-coefficient systems over progression supports, a bounded
//! Buchberger-style criterion and completion for general homogeneous
//! systems, interreduction, ideal membership, the single-generator
//! certificate, the differentiation lower bound, and windowed monomial
//! freeness for linear initial ideals.

mod completion;
mod freeness;

pub use completion::{buchberger_rounds, check_basis, groebner_basis, CheckMode, CheckOutcome};
pub use freeness::{
    monomial_free_window, verify_monomial_certificate, CertificateEntry, MonomialFreenessReport,
};

use std::fmt;

use num_traits::Signed;

use crate::coefficients::{rational_gcd, Rational, RationalFunction};
use crate::diffpoly::{DiffMonomial, DiffPolynomial};
use crate::reduction::{
    is_diff_reduced, reduce, CofactorTerm, QuotientTerm, ReductionError, ReductionStatus,
    ReductionTrace,
};
use crate::tropical::{gap, leading, MonomialOrder, SupportProfile, TropicalError};

/// Cap for reductions whose termination is guaranteed by the theory
/// (constant coefficients over gap-bounded supports). Hitting it indicates
/// an instance far outside desk scale and surfaces as an explicit error or
/// an inconclusive outcome, never a wrong certificate.
pub(crate) const INTERNAL_CAP: u64 = 1_000_000;

/// Errors from engine operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EngineError {
    /// An input violates the operation's entry class.
    PreconditionViolated {
        requirement: &'static str,
        element: String,
    },
    /// The operation requires a certified basis.
    NotCertified,
    /// The bound needs every support set infinite.
    FiniteSupport,
    /// The t-degree bound needs polynomial coefficients.
    NonPolynomialCoefficient,
    /// Monomial freeness is implemented for linear generators only.
    NonLinearGenerator,
    /// A theoretically terminating reduction exceeded the internal cap.
    ReductionCap,
    /// Propagated reduction failure.
    Reduction(ReductionError),
}

impl fmt::Display for EngineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EngineError::PreconditionViolated {
                requirement,
                element,
            } => write!(f, "precondition violated ({}): {}", requirement, element),
            EngineError::NotCertified => write!(f, "basis is not certified complete"),
            EngineError::FiniteSupport => write!(f, "support set is finite"),
            EngineError::NonPolynomialCoefficient => {
                write!(f, "coefficient is not polynomial in t")
            }
            EngineError::NonLinearGenerator => write!(f, "generator is not linear"),
            EngineError::ReductionCap => {
                write!(f, "internal reduction cap exceeded")
            }
            EngineError::Reduction(e) => write!(f, "{}", e),
        }
    }
}

impl std::error::Error for EngineError {}

impl From<ReductionError> for EngineError {
    fn from(e: ReductionError) -> Self {
        EngineError::Reduction(e)
    }
}

impl From<TropicalError> for EngineError {
    fn from(e: TropicalError) -> Self {
        EngineError::Reduction(ReductionError::Tropical(e))
    }
}

/// Certification level of a computed basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GbStatus {
    CertifiedComplete,
    BoundedOnly,
    Failed,
}

/// Window parameters of the completion run over progression supports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GbParams {
    /// lcm of the progression periods.
    pub period: u64,
    /// Final order spread max ord(h1) - min minorder(h2).
    pub spread: u64,
    /// Final window multiplier; shifts run in [0, (q+1)*period - 1].
    pub q: u64,
}

/// Where a basis element came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    /// Input generator, by position in the input list.
    Input(usize),
    /// Normalized remainder of an S-pair reduction.
    SPair(Box<SPairTrace>),
}

/// Ancestry of an appended basis element. The element equals
/// `scale * (uf * d^s1(basis[g1]) - ug * d^s2(basis[g2])
///  - sum of quotient products)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SPairTrace {
    pub g1: usize,
    pub s1: u32,
    pub g2: usize,
    pub s2: u32,
    pub uf: CofactorTerm,
    pub ug: CofactorTerm,
    pub quotients: Vec<QuotientTerm>,
    pub scale: RationalFunction,
}

/// A computed basis with certification status, per-element provenance, and
/// run counters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GbResult {
    pub basis: Vec<DiffPolynomial>,
    pub status: GbStatus,
    pub pairs_processed: u64,
    pub reductions_to_zero: u64,
    pub params: Option<GbParams>,
    pub provenance: Vec<Provenance>,
}

impl GbResult {
    /// Replay one element's provenance against the basis; reproduces the
    /// element exactly.
    pub fn replay(&self, index: usize) -> DiffPolynomial {
        match &self.provenance[index] {
            Provenance::Input(_) => self.basis[index].clone(),
            Provenance::SPair(trace) => {
                let a = self.basis[trace.g1]
                    .differentiate_n(trace.s1)
                    .mul_term(&trace.uf.0, &trace.uf.1);
                let b = self.basis[trace.g2]
                    .differentiate_n(trace.s2)
                    .mul_term(&trace.ug.0, &trace.ug.1);
                let mut acc = &a - &b;
                for q in &trace.quotients {
                    let shifted = self.basis[q.generator].differentiate_n(q.shift);
                    acc = &acc - &shifted.mul_term(&q.coeff, &q.monomial);
                }
                acc.scale(&trace.scale)
            }
        }
    }
}

/// Verdict of an ideal-membership test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MembershipVerdict {
    Member(ReductionTrace),
    NotMember(DiffPolynomial),
    Inconclusive(u64),
}

/// Scale a nonzero polynomial so the leading Laurent coefficients of its
/// terms are content-free integers and the tropical leading one is
/// positive. Basis comparison up to scalars becomes structural equality.
pub fn normalize_element(
    profile: &SupportProfile,
    ord: MonomialOrder,
    f: &DiffPolynomial,
) -> Result<(DiffPolynomial, RationalFunction), EngineError> {
    let lead = leading(profile, ord, f)?;
    let mut content = Rational::from_integer(0.into());
    for (_, c) in f.iter() {
        let lc = c.leading_rat().expect("stored coefficients are nonzero");
        content = rational_gcd(&content, &lc.abs());
    }
    let lead_sign = lead.lc.leading_rat().expect("nonzero leading coefficient");
    let scale = if lead_sign.is_negative() {
        -content
    } else {
        content
    };
    let factor = RationalFunction::constant(scale.recip());
    Ok((f.scale(&factor), factor))
}

fn poly_text(f: &DiffPolynomial) -> String {
    f.to_string()
}

/// Entry-class validation for the linear constant-coefficient pipeline.
pub(crate) fn validate_linear_const_progression(
    generators: &[DiffPolynomial],
    profile: &SupportProfile,
) -> Result<Vec<(u64, u64)>, EngineError> {
    for g in generators {
        if g.is_zero() {
            return Err(EngineError::PreconditionViolated {
                requirement: "nonzero",
                element: "0".into(),
            });
        }
        let class = g.classify();
        if !class.linear {
            return Err(EngineError::PreconditionViolated {
                requirement: "linear",
                element: poly_text(g),
            });
        }
        if !class.homogeneous {
            return Err(EngineError::PreconditionViolated {
                requirement: "homogeneous",
                element: poly_text(g),
            });
        }
        if !class.constant_coefficients {
            return Err(EngineError::PreconditionViolated {
                requirement: "constant coefficients",
                element: poly_text(g),
            });
        }
        if let Some(v) = g.max_var() {
            if v as usize > profile.n() {
                return Err(EngineError::PreconditionViolated {
                    requirement: "variable index within profile arity",
                    element: poly_text(g),
                });
            }
        }
    }
    profile
        .progressions()
        .ok_or(EngineError::PreconditionViolated {
            requirement: "progression supports",
            element: profile.to_string(),
        })
}

/// Order spread max ord(h1) - min minorder(h2) over the basis, and the
/// window multiplier q with spread = (q-1)*period + r, 0 <= r < period.
pub(crate) fn spread_and_q(basis: &[DiffPolynomial], period: u64) -> (u64, u64) {
    let max_ord = basis
        .iter()
        .filter_map(|g| g.order())
        .max()
        .unwrap_or(0) as u64;
    let min_minord = basis
        .iter()
        .filter_map(|g| g.min_order().ok())
        .min()
        .unwrap_or(0) as u64;
    let spread = max_ord.saturating_sub(min_minord);
    let q = spread / period + 1;
    (spread, q)
}

/// The differentiation lower bound
/// max(n, deg_t + max ord - min minorder + 2*gap).
pub fn lower_bound(
    generators: &[DiffPolynomial],
    profile: &SupportProfile,
) -> Result<u64, EngineError> {
    let g = gap(profile).map_err(|_| EngineError::FiniteSupport)?;
    let mut max_deg = 0u64;
    let mut max_ord = None;
    let mut min_minord = None;
    for f in generators {
        if f.is_zero() || f.order().is_none() {
            return Err(EngineError::PreconditionViolated {
                requirement: "nonzero with at least one derivative variable",
                element: poly_text(f),
            });
        }
        for (_, c) in f.iter() {
            if !c.den().is_constant() {
                return Err(EngineError::NonPolynomialCoefficient);
            }
            max_deg = max_deg.max(c.num().degree().unwrap_or(0) as u64);
        }
        max_ord = max_ord.max(f.order());
        let mo = f.min_order().expect("has derivative variables");
        min_minord = Some(min_minord.map_or(mo, |m: u32| m.min(mo)));
    }
    let spread = max_ord.unwrap() as u64 - min_minord.unwrap() as u64;
    Ok((profile.n() as u64).max(max_deg + spread + 2 * g))
}

/// Decide whether a single linear homogeneous generator with polynomial
/// coefficients is already a complete basis for the full-support profile.
/// Decomposing f = f_0 + t f_1 + ... + t^d f_d, the certificate is
/// ord(f_0) > ord(f_i) - i for every nonzero f_i with i >= 1.
pub fn single_generator_certificate(
    f: &DiffPolynomial,
    _ord: MonomialOrder,
) -> Result<bool, EngineError> {
    let class = f.classify();
    if f.is_zero() || !class.linear || !class.homogeneous {
        return Err(EngineError::PreconditionViolated {
            requirement: "nonzero linear homogeneous",
            element: poly_text(f),
        });
    }
    let mut layers: std::collections::BTreeMap<u32, DiffPolynomial> = Default::default();
    for (m, c) in f.iter() {
        if !c.den().is_constant() {
            return Err(EngineError::NonPolynomialCoefficient);
        }
        let den = c.den().coeff(0);
        for (deg, num) in c.num().iter() {
            let co = RationalFunction::constant(num.clone() / den.clone());
            layers
                .entry(*deg)
                .or_insert_with(DiffPolynomial::zero)
                .add_term(&co, m);
        }
    }
    let Some(f0) = layers.get(&0).filter(|p| !p.is_zero()) else {
        return Ok(false);
    };
    let ord0 = f0.order().expect("linear layer has variables") as i64;
    for (i, fi) in layers.iter() {
        if *i == 0 || fi.is_zero() {
            continue;
        }
        let oi = fi.order().expect("linear layer has variables") as i64;
        if ord0 <= oi - *i as i64 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Interreduce a certified basis: drop every element whose tropical
/// leading monomial is a period-multiple shift of another element's and
/// which reduces to zero by the rest. Output keeps the input order.
pub fn reduce_basis(
    result: &GbResult,
    profile: &SupportProfile,
    ord: MonomialOrder,
) -> Result<Vec<DiffPolynomial>, EngineError> {
    if result.status != GbStatus::CertifiedComplete {
        return Err(EngineError::NotCertified);
    }
    validate_linear_const_progression(&result.basis, profile)?;
    let period = profile.period_lcm().expect("validated progressions");

    let mut leads = Vec::with_capacity(result.basis.len());
    for g in &result.basis {
        leads.push(leading(profile, ord, g)?);
    }
    // process in descending leading-monomial order, ties by input position
    let mut order: Vec<usize> = (0..result.basis.len()).collect();
    order.sort_by(|&a, &b| leads[b].lm.cmp(&leads[a].lm).then(a.cmp(&b)));

    let mut kept = vec![true; result.basis.len()];
    for &idx in &order {
        let lm = &leads[idx].lm;
        let (var, ord_p) = single_var(lm);
        // redundant when the leading monomial is a period shift (k >= 0)
        // of another kept element's; equal leading monomials drop the
        // element processed first
        let redundant = (0..result.basis.len()).any(|j| {
            if j == idx || !kept[j] {
                return false;
            }
            let (var_q, ord_q) = single_var(&leads[j].lm);
            var == var_q && ord_p >= ord_q && (ord_p - ord_q) % period == 0
        });
        if !redundant {
            continue;
        }
        let others: Vec<DiffPolynomial> = (0..result.basis.len())
            .filter(|&j| j != idx && kept[j])
            .map(|j| result.basis[j].clone())
            .collect();
        let trace = reduce(profile, ord, &others, &result.basis[idx], INTERNAL_CAP)?;
        if trace.status == ReductionStatus::Reduced && trace.remainder.is_zero() {
            kept[idx] = false;
        }
    }
    Ok((0..result.basis.len())
        .filter(|&i| kept[i])
        .map(|i| result.basis[i].clone())
        .collect())
}

/// (variable index, derivative order) of a degree-one monomial.
fn single_var(m: &DiffMonomial) -> (u32, u64) {
    debug_assert_eq!(m.degree(), 1, "linear leading monomial expected");
    let (v, _) = m.iter().next().expect("degree-one monomial");
    (v.var, v.order as u64)
}

/// Reduce `f` against a certified basis and classify the outcome.
pub fn membership(
    result: &GbResult,
    f: &DiffPolynomial,
    profile: &SupportProfile,
    ord: MonomialOrder,
    cap: u64,
) -> Result<MembershipVerdict, EngineError> {
    if result.status != GbStatus::CertifiedComplete {
        return Err(EngineError::NotCertified);
    }
    if f.is_zero() {
        return Ok(MembershipVerdict::Member(ReductionTrace {
            quotients: Vec::new(),
            remainder: DiffPolynomial::zero(),
            steps: 0,
            status: ReductionStatus::Reduced,
        }));
    }
    let trace = reduce(profile, ord, &result.basis, f, cap)?;
    Ok(match trace.status {
        ReductionStatus::CapReached => MembershipVerdict::Inconclusive(cap),
        ReductionStatus::Reduced if trace.remainder.is_zero() => MembershipVerdict::Member(trace),
        ReductionStatus::Reduced => MembershipVerdict::NotMember(trace.remainder),
    })
}

/// Every monomial of `f` is divisible by no shifted leading monomial of
/// any generator: convenience re-export used by the interreduction tests.
pub fn diff_reduced_all(
    profile: &SupportProfile,
    ord: MonomialOrder,
    f: &DiffPolynomial,
    generators: &[DiffPolynomial],
) -> Result<bool, EngineError> {
    for g in generators {
        if !is_diff_reduced(profile, ord, f, g)? {
            return Ok(false);
        }
    }
    Ok(true)
}
