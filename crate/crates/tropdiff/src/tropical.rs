//! Support profiles, the tropical valuation of monomials and polynomials,
//! initials, and the admissible monomial ordering with its leading data.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;

use crate::coefficients::{RationalFunction, Valuation};
use crate::diffpoly::{DiffMonomial, DiffPolynomial};

/// Errors from tropical-data computations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TropicalError {
    /// The zero polynomial has no valuation data.
    ZeroPolynomial,
    /// Every term has infinite value, so the initial is undefined.
    AllTermsInfinite,
    /// The gap is undefined because some support set is finite.
    FiniteSupport,
}

impl fmt::Display for TropicalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropicalError::ZeroPolynomial => write!(f, "zero polynomial"),
            TropicalError::AllTermsInfinite => {
                write!(f, "initial undefined: every term has infinite value")
            }
            TropicalError::FiniteSupport => {
                write!(f, "gap undefined: support set is finite")
            }
        }
    }
}

impl std::error::Error for TropicalError {}

/// A subset of the naturals: a finite part together with an optional
/// arithmetic progression l + m*N. Normalized so that finite elements
/// belonging to the progression are absorbed and the progression is
/// extended downward through the finite part, giving a unique
/// representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportSet {
    finite: BTreeSet<u64>,
    progression: Option<(u64, u64)>,
}

impl SupportSet {
    pub fn finite(elems: impl IntoIterator<Item = u64>) -> Self {
        SupportSet {
            finite: elems.into_iter().collect(),
            progression: None,
        }
        .normalized()
    }

    /// The progression l + m*N. Panics if `m == 0`; parse-time validation
    /// reports that as a `ZeroPeriod` error instead.
    pub fn progression(l: u64, m: u64) -> Self {
        assert!(m >= 1, "progression period must be positive");
        SupportSet {
            finite: BTreeSet::new(),
            progression: Some((l, m)),
        }
    }

    pub fn union(finite: impl IntoIterator<Item = u64>, l: u64, m: u64) -> Self {
        assert!(m >= 1, "progression period must be positive");
        SupportSet {
            finite: finite.into_iter().collect(),
            progression: Some((l, m)),
        }
        .normalized()
    }

    /// The full set of naturals.
    pub fn naturals() -> Self {
        SupportSet::progression(0, 1)
    }

    fn normalized(mut self) -> Self {
        if let Some((mut l, m)) = self.progression {
            self.finite
                .retain(|&x| !(x >= l && (x - l).is_multiple_of(m)));
            while l >= m && self.finite.contains(&(l - m)) {
                l -= m;
                self.finite.remove(&l);
            }
            self.progression = Some((l, m));
        }
        self
    }

    pub fn is_empty(&self) -> bool {
        self.finite.is_empty() && self.progression.is_none()
    }

    pub fn is_infinite(&self) -> bool {
        self.progression.is_some()
    }

    /// The progression part (l, m) when the set is an infinite tail.
    pub fn progression_part(&self) -> Option<(u64, u64)> {
        self.progression
    }

    /// True when the set is exactly l + m*N with no extra finite points.
    pub fn is_pure_progression(&self) -> bool {
        self.finite.is_empty() && self.progression.is_some()
    }

    pub fn contains(&self, x: u64) -> bool {
        if self.finite.contains(&x) {
            return true;
        }
        match self.progression {
            Some((l, m)) => x >= l && (x - l).is_multiple_of(m),
            None => false,
        }
    }

    /// Smallest element >= j, if any.
    pub fn next_at_least(&self, j: u64) -> Option<u64> {
        let from_finite = self.finite.range(j..).next().copied();
        let from_prog = self.progression.map(|(l, m)| {
            if j <= l {
                l
            } else {
                l + (j - l).div_ceil(m) * m
            }
        });
        match (from_finite, from_prog) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    /// Distance from j up to the next support element, or infinity.
    pub fn val_at(&self, j: u64) -> Valuation {
        match self.next_at_least(j) {
            Some(s) => Valuation::Finite((s - j) as i64),
            None => Valuation::Infinite,
        }
    }

    /// Largest difference between consecutive elements. Defined only for
    /// infinite sets.
    pub fn max_gap(&self) -> Result<u64, TropicalError> {
        let (l, m) = self.progression.ok_or(TropicalError::FiniteSupport)?;
        let max_finite = self.finite.iter().next_back().copied();
        let horizon = max_finite.map(|f| f.max(l)).unwrap_or(l) + 2 * m;
        let mut elems: Vec<u64> = self.finite.iter().copied().collect();
        let mut x = l;
        while x <= horizon {
            elems.push(x);
            x += m;
        }
        elems.sort_unstable();
        let tail_gap = m;
        let max_consecutive = elems
            .windows(2)
            .map(|w| w[1] - w[0])
            .max()
            .unwrap_or(tail_gap);
        Ok(max_consecutive.max(tail_gap))
    }
}

impl fmt::Display for SupportSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prog = |f: &mut fmt::Formatter<'_>, l: u64, m: u64| {
            if l == 0 {
                if m == 1 {
                    write!(f, "N")
                } else {
                    write!(f, "{}N", m)
                }
            } else {
                write!(f, "{}+{}N", l, m)
            }
        };
        match (&self.finite, self.progression) {
            (fin, None) => {
                write!(f, "{{")?;
                for (i, x) in fin.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{}", x)?;
                }
                write!(f, "}}")
            }
            (fin, Some((l, m))) if fin.is_empty() => prog(f, l, m),
            (fin, Some((l, m))) => {
                write!(f, "{{")?;
                for (i, x) in fin.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{}", x)?;
                }
                write!(f, "}} u ")?;
                prog(f, l, m)
            }
        }
    }
}

/// One support set per differential indeterminate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportProfile {
    sets: Vec<SupportSet>,
}

impl SupportProfile {
    pub fn new(sets: Vec<SupportSet>) -> Self {
        assert!(!sets.is_empty(), "profile needs at least one set");
        SupportProfile { sets }
    }

    pub fn uniform(set: SupportSet, n: usize) -> Self {
        SupportProfile::new(vec![set; n])
    }

    pub fn n(&self) -> usize {
        self.sets.len()
    }

    pub fn set(&self, var: u32) -> &SupportSet {
        &self.sets[(var - 1) as usize]
    }

    pub fn sets(&self) -> &[SupportSet] {
        &self.sets
    }

    /// The progression pairs (l_i, m_i) when every set is a pure
    /// progression.
    pub fn progressions(&self) -> Option<Vec<(u64, u64)>> {
        self.sets
            .iter()
            .map(|s| {
                if s.is_pure_progression() {
                    s.progression_part()
                } else {
                    None
                }
            })
            .collect()
    }

    /// lcm of the progression periods.
    pub fn period_lcm(&self) -> Option<u64> {
        self.progressions()
            .map(|ps| ps.iter().fold(1u64, |acc, (_, m)| acc.lcm(m)))
    }
}

impl fmt::Display for SupportProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.sets.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", s)?;
        }
        Ok(())
    }
}

/// The shipped admissible monomial ordering. Kept as an enum so further
/// orderings can be added without changing signatures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MonomialOrder {
    /// Total degree first, then lexicographic with variables ranked by
    /// (derivative order, variable index), higher rank first.
    #[default]
    DOrderDegLex,
}

/// Compare monomials under the given ordering.
pub fn cmp_monomials(ord: MonomialOrder, a: &DiffMonomial, b: &DiffMonomial) -> Ordering {
    match ord {
        MonomialOrder::DOrderDegLex => a.cmp(b),
    }
}

/// Tropical leading data of a polynomial: the leading monomial of the
/// initial, its full coefficient in the original polynomial, and the
/// polynomial's value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropicalLead {
    pub lm: DiffMonomial,
    pub lc: RationalFunction,
    pub val: Valuation,
}

/// Distance from derivative order j up to the next support element.
pub fn val_support(s: &SupportSet, j: u64) -> Valuation {
    s.val_at(j)
}

/// Sum of factor values with multiplicity; the monomial 1 has value 0.
pub fn val_monomial(profile: &SupportProfile, m: &DiffMonomial) -> Valuation {
    let mut total: i64 = 0;
    for (v, e) in m.iter() {
        match profile.set(v.var).val_at(v.order as u64) {
            Valuation::Infinite => return Valuation::Infinite,
            Valuation::Finite(x) => total += x * (*e as i64),
        }
    }
    Valuation::Finite(total)
}

/// Value of one term: coefficient valuation plus monomial value.
fn term_value(profile: &SupportProfile, c: &RationalFunction, m: &DiffMonomial) -> Valuation {
    c.val() + val_monomial(profile, m)
}

/// Minimum term value of a nonzero polynomial.
pub fn val_poly(profile: &SupportProfile, f: &DiffPolynomial) -> Result<Valuation, TropicalError> {
    if f.is_zero() {
        return Err(TropicalError::ZeroPolynomial);
    }
    Ok(f.iter()
        .map(|(m, c)| term_value(profile, c, m))
        .min()
        .unwrap())
}

/// The initial: all terms achieving the minimum value, with each
/// coefficient truncated to its lowest Laurent term.
pub fn initial(
    profile: &SupportProfile,
    f: &DiffPolynomial,
) -> Result<DiffPolynomial, TropicalError> {
    let v = val_poly(profile, f)?;
    if !v.is_finite() {
        return Err(TropicalError::AllTermsInfinite);
    }
    let mut out = DiffPolynomial::zero();
    for (m, c) in f.iter() {
        if term_value(profile, c, m) == v {
            let bar = c.bar_element().expect("nonzero stored coefficient");
            out.add_term(&bar, m);
        }
    }
    Ok(out)
}

/// Largest difference between consecutive support elements across the
/// profile. Defined only when every set is infinite.
pub fn gap(profile: &SupportProfile) -> Result<u64, TropicalError> {
    let mut best = 0;
    for s in profile.sets() {
        best = best.max(s.max_gap()?);
    }
    Ok(best)
}

/// Tropical leading data; errors propagate from `initial`.
pub fn leading(
    profile: &SupportProfile,
    ord: MonomialOrder,
    f: &DiffPolynomial,
) -> Result<TropicalLead, TropicalError> {
    let v = val_poly(profile, f)?;
    if !v.is_finite() {
        return Err(TropicalError::AllTermsInfinite);
    }
    let lm = f
        .iter()
        .filter(|(m, c)| term_value(profile, c, m) == v)
        .map(|(m, _)| m)
        .max_by(|a, b| cmp_monomials(ord, a, b))
        .expect("initial of a nonzero polynomial is nonzero")
        .clone();
    let lc = f.coeff(&lm).expect("leading monomial occurs in f").clone();
    Ok(TropicalLead { lm, lc, val: v })
}

/// Result of the tropical comparison of two polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TropicalCmp {
    Lt,
    EqClass,
    Gt,
}

/// Compare two polynomials tropically: smaller value first; at equal value
/// the larger leading monomial comes first. Zero is the maximum element;
/// `EqClass` means equal value and equal leading monomial.
pub fn cmp_tropical(
    profile: &SupportProfile,
    ord: MonomialOrder,
    f: &DiffPolynomial,
    g: &DiffPolynomial,
) -> TropicalCmp {
    match (f.is_zero(), g.is_zero()) {
        (true, true) => return TropicalCmp::EqClass,
        (false, true) => return TropicalCmp::Lt,
        (true, false) => return TropicalCmp::Gt,
        (false, false) => {}
    }
    let vf = val_poly(profile, f).unwrap();
    let vg = val_poly(profile, g).unwrap();
    match vf.cmp(&vg) {
        Ordering::Less => TropicalCmp::Lt,
        Ordering::Greater => TropicalCmp::Gt,
        Ordering::Equal => {
            if !vf.is_finite() {
                return TropicalCmp::EqClass;
            }
            let lf = leading(profile, ord, f).unwrap();
            let lg = leading(profile, ord, g).unwrap();
            match cmp_monomials(ord, &lg.lm, &lf.lm) {
                Ordering::Less => TropicalCmp::Lt,
                Ordering::Greater => TropicalCmp::Gt,
                Ordering::Equal => TropicalCmp::EqClass,
            }
        }
    }
}

/// True when `f` is at or before `g` in the tropical order (f precedes g or
/// shares its class). The reduction contracts are stated with this.
pub fn tropically_le(
    profile: &SupportProfile,
    ord: MonomialOrder,
    f: &DiffPolynomial,
    g: &DiffPolynomial,
) -> bool {
    !matches!(cmp_tropical(profile, ord, f, g), TropicalCmp::Gt)
}
