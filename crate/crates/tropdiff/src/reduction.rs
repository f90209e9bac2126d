//! Tropical S-polynomials, reducer search over derivative shifts, and the
//! capped differential reduction algorithm with a full quotient trace.

use std::fmt;

use crate::coefficients::RationalFunction;
use crate::diffpoly::{DiffMonomial, DiffPolynomial};
use crate::tropical::{leading, MonomialOrder, SupportProfile, TropicalError, TropicalLead};

/// Errors from reduction operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionError {
    /// Monomial quotient requested where divisibility fails.
    NotDivisible,
    /// The generator list is empty or contains the zero polynomial.
    InvalidGenerators,
    /// Leading data of an input polynomial is undefined.
    Tropical(TropicalError),
}

impl fmt::Display for ReductionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionError::NotDivisible => write!(f, "monomial does not divide"),
            ReductionError::InvalidGenerators => {
                write!(f, "generator list must be nonempty with nonzero elements")
            }
            ReductionError::Tropical(e) => write!(f, "{}", e),
        }
    }
}

impl std::error::Error for ReductionError {}

impl From<TropicalError> for ReductionError {
    fn from(e: TropicalError) -> Self {
        ReductionError::Tropical(e)
    }
}

/// Exact monomial quotient `num / den`.
pub fn quotient_term(num: &DiffMonomial, den: &DiffMonomial) -> Result<DiffMonomial, ReductionError> {
    den.try_div_into(num).ok_or(ReductionError::NotDivisible)
}

/// One recorded cancellation: `coeff * monomial * d^shift(generators[generator])`
/// was subtracted from the running remainder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientTerm {
    pub generator: usize,
    pub shift: u32,
    pub coeff: RationalFunction,
    pub monomial: DiffMonomial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionStatus {
    Reduced,
    CapReached,
}

/// Output of differential reduction. The input decomposes exactly as the
/// sum of the recorded quotient products plus the remainder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    pub quotients: Vec<QuotientTerm>,
    pub remainder: DiffPolynomial,
    pub steps: u64,
    pub status: ReductionStatus,
}

impl ReductionTrace {
    /// Recompute the input from the trace and the generators it refers to.
    pub fn reassemble(&self, generators: &[DiffPolynomial]) -> DiffPolynomial {
        let mut acc = self.remainder.clone();
        for q in &self.quotients {
            let shifted = generators[q.generator].differentiate_n(q.shift);
            acc = &acc + &shifted.mul_term(&q.coeff, &q.monomial);
        }
        acc
    }

    /// Remainders after each recorded step, ending at the final remainder.
    pub fn partial_remainders(
        &self,
        generators: &[DiffPolynomial],
        input: &DiffPolynomial,
    ) -> Vec<DiffPolynomial> {
        let mut out = Vec::with_capacity(self.quotients.len());
        let mut acc = input.clone();
        for q in &self.quotients {
            let shifted = generators[q.generator].differentiate_n(q.shift);
            acc = &acc - &shifted.mul_term(&q.coeff, &q.monomial);
            out.push(acc.clone());
        }
        out
    }
}

/// A single term used as a multiplier: coefficient and monomial.
pub type CofactorTerm = (RationalFunction, DiffMonomial);

/// The lcm-matched cancellation combination of the tropical leading terms.
pub fn s_polynomial(
    profile: &SupportProfile,
    ord: MonomialOrder,
    f: &DiffPolynomial,
    g: &DiffPolynomial,
) -> Result<DiffPolynomial, ReductionError> {
    Ok(s_polynomial_with_cofactors(profile, ord, f, g)?.0)
}

/// S-polynomial together with the two cofactor terms (u, v) such that the
/// result equals u*f - v*g.
pub fn s_polynomial_with_cofactors(
    profile: &SupportProfile,
    ord: MonomialOrder,
    f: &DiffPolynomial,
    g: &DiffPolynomial,
) -> Result<(DiffPolynomial, CofactorTerm, CofactorTerm), ReductionError> {
    let lf = leading(profile, ord, f)?;
    let lg = leading(profile, ord, g)?;
    let lcm = lf.lm.lcm(&lg.lm);
    let uf = (lg.lc.clone(), quotient_term(&lcm, &lf.lm)?);
    let ug = (lf.lc.clone(), quotient_term(&lcm, &lg.lm)?);
    let sp = &f.mul_term(&uf.0, &uf.1) - &g.mul_term(&ug.0, &ug.1);
    Ok((sp, uf, ug))
}

/// Lazily computed derivative shifts of a generator set together with
/// their tropical leading data. Leading data is `None` where undefined
/// (every term infinite-valued). The table owns its generators so callers
/// can keep extending it while their basis grows.
pub(crate) struct ShiftTable {
    profile: SupportProfile,
    ord: MonomialOrder,
    generators: Vec<DiffPolynomial>,
    shifts: Vec<Vec<DiffPolynomial>>,
    leads: Vec<Vec<Option<TropicalLead>>>,
}

impl ShiftTable {
    pub(crate) fn new(
        profile: &SupportProfile,
        ord: MonomialOrder,
        generators: &[DiffPolynomial],
    ) -> Result<Self, ReductionError> {
        if generators.is_empty() || generators.iter().any(|g| g.is_zero()) {
            return Err(ReductionError::InvalidGenerators);
        }
        Ok(ShiftTable {
            profile: profile.clone(),
            ord,
            generators: generators.to_vec(),
            shifts: vec![Vec::new(); generators.len()],
            leads: vec![Vec::new(); generators.len()],
        })
    }

    pub(crate) fn push_generator(&mut self, g: DiffPolynomial) {
        debug_assert!(!g.is_zero());
        self.generators.push(g);
        self.shifts.push(Vec::new());
        self.leads.push(Vec::new());
    }

    pub(crate) fn len(&self) -> usize {
        self.generators.len()
    }

    fn ensure(&mut self, gen: usize, shift: u32) {
        let shifts = &mut self.shifts[gen];
        let leads = &mut self.leads[gen];
        while shifts.len() <= shift as usize {
            let next = match shifts.last() {
                None => self.generators[gen].clone(),
                Some(prev) => prev.differentiate(),
            };
            leads.push(leading(&self.profile, self.ord, &next).ok());
            shifts.push(next);
        }
    }

    pub(crate) fn shifted(&mut self, gen: usize, shift: u32) -> &DiffPolynomial {
        self.ensure(gen, shift);
        &self.shifts[gen][shift as usize]
    }

    pub(crate) fn lead(&mut self, gen: usize, shift: u32) -> Option<&TropicalLead> {
        self.ensure(gen, shift);
        self.leads[gen][shift as usize].as_ref()
    }

    /// Shift-search ceiling for divisors of `m` among shifts of generator
    /// `gen`. For a linear generator the bound is exact: a shift by j moves
    /// every order up by j, so the leading monomial of the shift has order
    /// at least j plus the generator's minimal order. For nonlinear
    /// generators the maximal order of `m` is used as a conservative
    /// ceiling; completeness in that case is a documented caveat.
    fn search_bound(&self, gen: usize, m: &DiffMonomial) -> Option<u32> {
        let max_order = m.max_order()?;
        let g = &self.generators[gen];
        if g.classify().linear {
            let min_order = g.min_order().ok()?;
            if max_order < min_order {
                None
            } else {
                Some(max_order - min_order)
            }
        } else {
            Some(max_order)
        }
    }

    /// Differential reduction against this table's generators; see
    /// [`reduce`]. Reusing one table across many reductions avoids
    /// recomputing shifted generators and their leading data.
    pub(crate) fn reduce(
        &mut self,
        f: &DiffPolynomial,
        cap: u64,
    ) -> Result<ReductionTrace, ReductionError> {
        let mut active = f.clone();
        let mut finished = DiffPolynomial::zero();
        let mut quotients: Vec<QuotientTerm> = Vec::new();
        let mut steps = 0u64;

        let status = loop {
            if active.is_zero() {
                break ReductionStatus::Reduced;
            }
            match leading(&self.profile, self.ord, &active) {
                Err(TropicalError::AllTermsInfinite) => {
                    finished = &finished + &active;
                    active = DiffPolynomial::zero();
                }
                Err(TropicalError::ZeroPolynomial) => unreachable!("active is nonzero"),
                Err(e) => return Err(e.into()),
                Ok(lead) => match self.find_reducer(&lead.lm) {
                    None => {
                        // final term: move it out of the active remainder
                        let c = active.remove_term(&lead.lm).expect("lm occurs in active");
                        finished.add_term(&c, &lead.lm);
                    }
                    Some((gen, shift)) => {
                        if steps == cap {
                            break ReductionStatus::CapReached;
                        }
                        let glead = self.lead(gen, shift).expect("reducer has leading data");
                        let monomial = quotient_term(&lead.lm, &glead.lm)?;
                        let coeff = lead
                            .lc
                            .checked_div(&glead.lc)
                            .expect("leading coefficients are nonzero");
                        active = &active - &self.shifted(gen, shift).mul_term(&coeff, &monomial);
                        quotients.push(QuotientTerm {
                            generator: gen,
                            shift,
                            coeff,
                            monomial,
                        });
                        steps += 1;
                    }
                },
            }
        };

        Ok(ReductionTrace {
            quotients,
            remainder: &finished + &active,
            steps,
            status,
        })
    }

    /// First (generator, shift) whose shifted leading monomial divides `m`,
    /// generators in list order first, then smallest shift.
    pub(crate) fn find_reducer(&mut self, m: &DiffMonomial) -> Option<(usize, u32)> {
        for gen in 0..self.generators.len() {
            if m.is_one() {
                if let Some(lead) = self.lead(gen, 0) {
                    if lead.lm.is_one() {
                        return Some((gen, 0));
                    }
                }
                continue;
            }
            let Some(bound) = self.search_bound(gen, m) else {
                continue;
            };
            for shift in 0..=bound {
                if let Some(lead) = self.lead(gen, shift) {
                    if lead.lm.divides(m) {
                        return Some((gen, shift));
                    }
                }
            }
        }
        None
    }
}

/// Search for a (generator index, shift) pair whose shifted tropical
/// leading monomial divides `m`. Generators are tried in list order and
/// shifts from zero up to the per-generator bound.
pub fn find_reducer(
    profile: &SupportProfile,
    ord: MonomialOrder,
    generators: &[DiffPolynomial],
    m: &DiffMonomial,
) -> Result<Option<(usize, u32)>, ReductionError> {
    let mut table = ShiftTable::new(profile, ord, generators)?;
    Ok(table.find_reducer(m))
}

/// Differential reduction of `f` by the generator set, capped at `cap`
/// cancellation steps.
///
/// Each step cancels the tropical leading term of the running remainder
/// against a shifted generator. A leading term with no reducer is final:
/// it is set aside and reduction continues on the rest. Terms of infinite
/// value are never touched; they cannot be cancelled without breaking the
/// trace ordering contract.
pub fn reduce(
    profile: &SupportProfile,
    ord: MonomialOrder,
    generators: &[DiffPolynomial],
    f: &DiffPolynomial,
    cap: u64,
) -> Result<ReductionTrace, ReductionError> {
    let mut table = ShiftTable::new(profile, ord, generators)?;
    table.reduce(f, cap)
}

/// No monomial of `f` is a multiple of the tropical leading monomial of `g`.
pub fn is_reduced(
    profile: &SupportProfile,
    ord: MonomialOrder,
    f: &DiffPolynomial,
    g: &DiffPolynomial,
) -> Result<bool, ReductionError> {
    let lg = leading(profile, ord, g)?;
    Ok(f.monomials().all(|m| !lg.lm.divides(m)))
}

/// No monomial of `f` is a multiple of the leading monomial of any
/// derivative shift of `g` within the reducer-search bound.
pub fn is_diff_reduced(
    profile: &SupportProfile,
    ord: MonomialOrder,
    f: &DiffPolynomial,
    g: &DiffPolynomial,
) -> Result<bool, ReductionError> {
    let generators = std::slice::from_ref(g);
    let mut table = ShiftTable::new(profile, ord, generators)?;
    for m in f.monomials() {
        if table.find_reducer(m).is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `f` is differentially reduced with respect to every generator.
pub fn is_diff_reduced_all(
    profile: &SupportProfile,
    ord: MonomialOrder,
    f: &DiffPolynomial,
    generators: &[DiffPolynomial],
) -> Result<bool, ReductionError> {
    for g in generators {
        if !is_diff_reduced(profile, ord, f, g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::{rat, RationalFunction};
    use crate::diffpoly::{DerivVar, DiffMonomial, DiffPolynomial};
    use crate::tropical::{SupportProfile, SupportSet};

    fn dv(order: u32) -> DerivVar {
        DerivVar::new(1, order)
    }

    fn y(order: u32) -> DiffPolynomial {
        DiffPolynomial::variable(dv(order))
    }

    fn c(n: i64) -> RationalFunction {
        RationalFunction::constant(rat(n))
    }

    fn s4() -> SupportProfile {
        SupportProfile::new(vec![SupportSet::progression(0, 4)])
    }

    fn ord() -> MonomialOrder {
        MonomialOrder::DOrderDegLex
    }

    fn example_f() -> DiffPolynomial {
        &(&y(4) + &y(2)) + &y(1)
    }

    fn example_b1() -> DiffPolynomial {
        &(&(&y(6) - &y(2).scale(&c(2))) - &y(5)) - &y(1)
    }

    fn example_b2() -> DiffPolynomial {
        &(&y(2).scale(&c(3)) + &y(9)) + &y(1).scale(&c(2))
    }

    #[test]
    fn s_polynomial_examples() {
        let f = example_f();
        // tr-S(f, f''') = f - f'''
        let f3 = f.differentiate_n(3);
        let sp = s_polynomial(&s4(), ord(), &f, &f3).unwrap();
        assert_eq!(sp, &f - &f3);

        // tr-S(b1, d^4 b2) = 3*b1 - d^4 b2
        let b1 = example_b1();
        let db2 = example_b2().differentiate_n(4);
        let sp = s_polynomial(&s4(), ord(), &b1, &db2).unwrap();
        assert_eq!(sp, &b1.scale(&c(3)) - &db2);

        // tr-S(f, f) = 0
        assert!(s_polynomial(&s4(), ord(), &f, &f).unwrap().is_zero());
    }

    #[test]
    fn s_polynomial_cancels_leading_terms() {
        let f = example_f();
        let g = example_b2();
        let (sp, uf, ug) = s_polynomial_with_cofactors(&s4(), ord(), &f, &g).unwrap();
        assert_eq!(sp, &f.mul_term(&uf.0, &uf.1) - &g.mul_term(&ug.0, &ug.1));
        let lf = leading(&s4(), ord(), &f).unwrap();
        let lg = leading(&s4(), ord(), &g).unwrap();
        let lcm = lf.lm.lcm(&lg.lm);
        // the matched product of leading terms is absent from the result
        let coeff = sp.coeff(&lcm);
        assert!(coeff.is_none() || coeff.unwrap() != &(&lf.lc * &lg.lc));
    }

    #[test]
    fn divisibility_examples() {
        let y1 = DiffMonomial::var(dv(1));
        let y2 = DiffMonomial::var(dv(2));
        let prod = y1.mul(&y2);
        assert!(y1.divides(&prod));
        assert!(!y2.divides(&y1));
        assert_eq!(quotient_term(&prod, &y1).unwrap(), y2);
        assert_eq!(quotient_term(&y1, &y2), Err(ReductionError::NotDivisible));
    }

    #[test]
    fn find_reducer_examples() {
        let f = example_f();
        let gens = [f.clone()];

        // lm(d f) = y''' reduces y'''
        let m = DiffMonomial::var(dv(3));
        assert_eq!(find_reducer(&s4(), ord(), &gens, &m).unwrap(), Some((0, 1)));

        // nothing reduces y': the shifted leading monomials have orders
        // 4, 3, 4, 4, 8, 7, ... (enumerated in the oracle below)
        let m = DiffMonomial::var(dv(1));
        assert_eq!(find_reducer(&s4(), ord(), &gens, &m).unwrap(), None);
        for shift in 0..=12u32 {
            let lead = leading(&s4(), ord(), &f.differentiate_n(shift)).unwrap();
            assert_ne!(lead.lm, m, "shift {} unexpectedly leads with y'", shift);
        }

        // the monomial 1 is never reducible by these generators
        assert_eq!(
            find_reducer(&s4(), ord(), &gens, &DiffMonomial::one()).unwrap(),
            None
        );

        // a generator whose leading monomial is 1 reduces it at shift zero
        let constant = DiffPolynomial::constant(c(3));
        assert_eq!(
            find_reducer(&s4(), ord(), &[constant], &DiffMonomial::one()).unwrap(),
            Some((0, 0))
        );
    }

    #[test]
    fn reduce_one_step_to_b1() {
        // tr-S(f, f'') reduces in one step to -b1
        let f = example_f();
        let sp = s_polynomial(&s4(), ord(), &f, &f.differentiate_n(2)).unwrap();
        let trace = reduce(&s4(), ord(), std::slice::from_ref(&f), &sp, 10_000).unwrap();
        assert_eq!(trace.status, ReductionStatus::Reduced);
        assert_eq!(trace.steps, 1);
        assert_eq!(trace.remainder, -&example_b1());
        assert_eq!(trace.reassemble(&[f]), sp);
    }

    #[test]
    fn reduce_self_to_zero() {
        let f = example_f();
        let trace = reduce(&s4(), ord(), std::slice::from_ref(&f), &f, 10_000).unwrap();
        assert_eq!(trace.status, ReductionStatus::Reduced);
        assert_eq!(trace.steps, 1);
        assert!(trace.remainder.is_zero());
    }

    #[test]
    fn nonterminating_reduction_hits_cap() {
        // over S = N with g = y + t y', reducing y + t^2 y' never stops
        let profile = SupportProfile::new(vec![SupportSet::naturals()]);
        let g = &y(0) + &y(1).scale(&RationalFunction::t());
        let f = &y(0) + &y(1).scale(&RationalFunction::t_pow(2));
        let trace = reduce(&profile, ord(), std::slice::from_ref(&g), &f, 2).unwrap();
        assert_eq!(trace.status, ReductionStatus::CapReached);
        assert_eq!(trace.steps, 2);
        // remainder after two steps: -(1/2)(t-1)t^2 y''
        let tm1 = &RationalFunction::t() - &RationalFunction::one();
        let expect = y(2).scale(
            &(&(&tm1 * &RationalFunction::t_pow(2))
                * &RationalFunction::constant(rat(-1) / rat(2))),
        );
        assert_eq!(trace.remainder, expect);
        assert_eq!(trace.reassemble(&[g]), f);
    }

    #[test]
    fn is_diff_reduced_examples() {
        let f = example_f();
        // y' is differentially reduced w.r.t. f
        assert!(is_diff_reduced(&s4(), ord(), &y(1), &f).unwrap());
        // D8(y) is not: lm(d^4 f) = D8(y)
        assert!(!is_diff_reduced(&s4(), ord(), &y(8), &f).unwrap());
        let lead4 = leading(&s4(), ord(), &f.differentiate_n(4)).unwrap();
        assert_eq!(lead4.lm, DiffMonomial::var(dv(8)));
        // zero is reduced
        assert!(is_diff_reduced(&s4(), ord(), &DiffPolynomial::zero(), &f).unwrap());
        // is_reduced looks only at the unshifted leading monomial
        assert!(is_reduced(&s4(), ord(), &y(8), &f).unwrap());
        assert!(!is_reduced(&s4(), ord(), &y(4), &f).unwrap());
    }

    #[test]
    fn invalid_generators_rejected() {
        let f = example_f();
        assert_eq!(
            reduce(&s4(), ord(), &[], &f, 10).unwrap_err(),
            ReductionError::InvalidGenerators
        );
        assert_eq!(
            reduce(&s4(), ord(), &[DiffPolynomial::zero()], &f, 10).unwrap_err(),
            ReductionError::InvalidGenerators
        );
    }
}
