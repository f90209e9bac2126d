//! Differential monomials and polynomials in y_1, ..., y_n and their formal
//! derivatives, with the derivation acting by d/dt on coefficients and by
//! order-shift plus Leibniz rule on monomials.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::coefficients::{rat, RationalFunction};

/// A single derivative variable: the `order`-th derivative of y_`var`.
/// `var` is 1-based. The derived `Ord` ranks by (order, var), which is the
/// variable ranking used by the shipped monomial ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DerivVar {
    pub order: u32,
    pub var: u32,
}

impl DerivVar {
    pub fn new(var: u32, order: u32) -> Self {
        assert!(var >= 1, "variable indices are 1-based");
        DerivVar { order, var }
    }

    /// The derivative of this variable.
    pub fn bump(self, k: u32) -> Self {
        DerivVar {
            order: self.order + k,
            var: self.var,
        }
    }
}

impl fmt::Display for DerivVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.order == 0 {
            write!(f, "y{}", self.var)
        } else {
            write!(f, "D{}(y{})", self.order, self.var)
        }
    }
}

/// Errors from differential-polynomial operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiffPolyError {
    /// Minimum derivative order requested on a polynomial with no variables.
    NoVariables,
}

impl fmt::Display for DiffPolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiffPolyError::NoVariables => {
                write!(f, "polynomial contains no derivative variables")
            }
        }
    }
}

impl std::error::Error for DiffPolyError {}

/// A power product of derivative variables. The empty product is 1.
/// No zero exponents are stored; iteration is (order, var) ascending.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct DiffMonomial {
    exps: BTreeMap<DerivVar, u32>,
}

impl DiffMonomial {
    pub fn one() -> Self {
        DiffMonomial::default()
    }

    pub fn var(v: DerivVar) -> Self {
        let mut exps = BTreeMap::new();
        exps.insert(v, 1);
        DiffMonomial { exps }
    }

    pub fn from_powers(powers: impl IntoIterator<Item = (DerivVar, u32)>) -> Self {
        let mut exps = BTreeMap::new();
        for (v, e) in powers {
            if e > 0 {
                *exps.entry(v).or_insert(0) += e;
            }
        }
        DiffMonomial { exps }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.exps.values().sum()
    }

    /// Highest derivative order among the factors.
    pub fn max_order(&self) -> Option<u32> {
        self.exps.keys().map(|v| v.order).max()
    }

    pub fn min_order(&self) -> Option<u32> {
        self.exps.keys().map(|v| v.order).min()
    }

    pub fn max_var(&self) -> Option<u32> {
        self.exps.keys().map(|v| v.var).max()
    }

    pub fn exponent(&self, v: &DerivVar) -> u32 {
        self.exps.get(v).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&DerivVar, &u32)> {
        self.exps.iter()
    }

    pub fn mul(&self, other: &DiffMonomial) -> DiffMonomial {
        let mut exps = self.exps.clone();
        for (v, e) in &other.exps {
            *exps.entry(*v).or_insert(0) += e;
        }
        DiffMonomial { exps }
    }

    pub fn divides(&self, other: &DiffMonomial) -> bool {
        self.exps.iter().all(|(v, e)| other.exponent(v) >= *e)
    }

    /// other / self, when self divides other.
    pub fn try_div_into(&self, other: &DiffMonomial) -> Option<DiffMonomial> {
        if !self.divides(other) {
            return None;
        }
        let mut exps = BTreeMap::new();
        for (v, e) in &other.exps {
            let q = e - self.exponent(v);
            if q > 0 {
                exps.insert(*v, q);
            }
        }
        Some(DiffMonomial { exps })
    }

    pub fn gcd(&self, other: &DiffMonomial) -> DiffMonomial {
        let mut exps = BTreeMap::new();
        for (v, e) in &self.exps {
            let m = (*e).min(other.exponent(v));
            if m > 0 {
                exps.insert(*v, m);
            }
        }
        DiffMonomial { exps }
    }

    pub fn lcm(&self, other: &DiffMonomial) -> DiffMonomial {
        let mut exps = self.exps.clone();
        for (v, e) in &other.exps {
            let entry = exps.entry(*v).or_insert(0);
            *entry = (*entry).max(*e);
        }
        DiffMonomial { exps }
    }

    pub fn is_coprime(&self, other: &DiffMonomial) -> bool {
        self.gcd(other).is_one()
    }

    /// Leibniz expansion of the derivative: a list of (multiplicity,
    /// monomial) terms, one per distinct factor.
    pub fn derivative_terms(&self) -> Vec<(u32, DiffMonomial)> {
        let mut out = Vec::new();
        for (v, e) in &self.exps {
            let mut exps = self.exps.clone();
            if *e == 1 {
                exps.remove(v);
            } else {
                exps.insert(*v, e - 1);
            }
            *exps.entry(v.bump(1)).or_insert(0) += 1;
            out.push((*e, DiffMonomial { exps }));
        }
        out
    }
}

impl PartialOrd for DiffMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DiffMonomial {
    /// Degree first, then lexicographic on exponents with variables ranked
    /// by (order, var), higher rank first. This is the shipped admissible
    /// ordering; see `tropical::cmp_monomials`.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let mut a = self.exps.iter().rev();
        let mut b = other.exps.iter().rev();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    Ordering::Greater => return Ordering::Greater,
                    Ordering::Less => return Ordering::Less,
                    Ordering::Equal => match ea.cmp(eb) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    },
                },
            }
        }
    }
}

impl fmt::Display for DiffMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in &self.exps {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{}", v)?;
            } else {
                write!(f, "{}^{}", v, e)?;
            }
        }
        Ok(())
    }
}

/// Classification flags for a differential polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolyClass {
    pub homogeneous: bool,
    pub linear: bool,
    pub constant_coefficients: bool,
}

/// Finite sum of (coefficient, monomial) terms with nonzero coefficients.
/// The zero polynomial is the empty map.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DiffPolynomial {
    terms: BTreeMap<DiffMonomial, RationalFunction>,
}

impl DiffPolynomial {
    pub fn zero() -> Self {
        DiffPolynomial::default()
    }

    pub fn constant(c: RationalFunction) -> Self {
        DiffPolynomial::from_term(c, DiffMonomial::one())
    }

    pub fn monomial(m: DiffMonomial) -> Self {
        DiffPolynomial::from_term(RationalFunction::one(), m)
    }

    pub fn variable(v: DerivVar) -> Self {
        DiffPolynomial::monomial(DiffMonomial::var(v))
    }

    pub fn from_term(c: RationalFunction, m: DiffMonomial) -> Self {
        let mut p = DiffPolynomial::zero();
        p.add_term(&c, &m);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (RationalFunction, DiffMonomial)>) -> Self {
        let mut p = DiffPolynomial::zero();
        for (c, m) in terms {
            p.add_term(&c, &m);
        }
        p
    }

    pub fn add_term(&mut self, c: &RationalFunction, m: &DiffMonomial) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m.clone()) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&DiffMonomial, &RationalFunction)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &DiffMonomial> {
        self.terms.keys()
    }

    pub fn coeff(&self, m: &DiffMonomial) -> Option<&RationalFunction> {
        self.terms.get(m)
    }

    /// Remove and return the coefficient of `m`, if present.
    pub fn remove_term(&mut self, m: &DiffMonomial) -> Option<RationalFunction> {
        self.terms.remove(m)
    }

    /// Largest variable index occurring, for ambient-arity validation.
    pub fn max_var(&self) -> Option<u32> {
        self.terms.keys().filter_map(|m| m.max_var()).max()
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        if c.is_zero() {
            return DiffPolynomial::zero();
        }
        DiffPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    /// Multiply by a single term (c, m).
    pub fn mul_term(&self, c: &RationalFunction, m: &DiffMonomial) -> Self {
        if c.is_zero() {
            return DiffPolynomial::zero();
        }
        DiffPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(mm, a)| (mm.mul(m), a * c))
                .collect(),
        }
    }

    /// One application of the derivation: coefficients differentiate by
    /// d/dt, monomials expand by the Leibniz rule.
    pub fn differentiate(&self) -> Self {
        let mut out = DiffPolynomial::zero();
        for (m, c) in &self.terms {
            out.add_term(&c.derivative(), m);
            for (mult, dm) in m.derivative_terms() {
                let k = c * &RationalFunction::constant(rat(mult as i64));
                out.add_term(&k, &dm);
            }
        }
        out
    }

    pub fn differentiate_n(&self, k: u32) -> Self {
        let mut p = self.clone();
        for _ in 0..k {
            p = p.differentiate();
        }
        p
    }

    /// Maximal derivative order of y_`var` occurring, None when absent.
    pub fn order_in(&self, var: u32) -> Option<u32> {
        self.terms
            .keys()
            .flat_map(|m| m.iter())
            .filter(|(v, _)| v.var == var)
            .map(|(v, _)| v.order)
            .max()
    }

    /// Maximal derivative order over all variables, None for constants.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().filter_map(|m| m.max_order()).max()
    }

    /// Minimal derivative order occurring in the polynomial.
    pub fn min_order(&self) -> Result<u32, DiffPolyError> {
        self.terms
            .keys()
            .filter_map(|m| m.min_order())
            .min()
            .ok_or(DiffPolyError::NoVariables)
    }

    pub fn classify(&self) -> PolyClass {
        let mut degrees = self.terms.keys().map(|m| m.degree());
        let homogeneous = match degrees.next() {
            None => true,
            Some(d0) => degrees.all(|d| d == d0),
        };
        let linear = self.terms.keys().all(|m| m.degree() == 1);
        let constant_coefficients = self.terms.values().all(|c| c.is_constant());
        PolyClass {
            homogeneous: homogeneous && !self.is_zero(),
            linear: linear && !self.is_zero(),
            constant_coefficients,
        }
    }

    /// The plain leading monomial under the structural (deglex) order.
    pub fn max_monomial(&self) -> Option<&DiffMonomial> {
        self.terms.keys().next_back()
    }
}

impl std::ops::Add for &DiffPolynomial {
    type Output = DiffPolynomial;

    fn add(self, rhs: &DiffPolynomial) -> DiffPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(c, m);
        }
        out
    }
}

impl std::ops::Sub for &DiffPolynomial {
    type Output = DiffPolynomial;

    fn sub(self, rhs: &DiffPolynomial) -> DiffPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(&-c, m);
        }
        out
    }
}

impl std::ops::Mul for &DiffPolynomial {
    type Output = DiffPolynomial;

    fn mul(self, rhs: &DiffPolynomial) -> DiffPolynomial {
        let mut out = DiffPolynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(&(c1 * c2), &m1.mul(m2));
            }
        }
        out
    }
}

impl std::ops::Neg for &DiffPolynomial {
    type Output = DiffPolynomial;

    fn neg(self) -> DiffPolynomial {
        DiffPolynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

/// Format one coefficient for use inside a term: parenthesized when the
/// integer-normalized numerator has several terms.
fn fmt_coeff_in_term(c: &RationalFunction) -> String {
    let s = c.to_string();
    if c.num().iter().count() > 1 && !s.starts_with('(') {
        format!("({})", s)
    } else {
        s
    }
}

impl fmt::Display for DiffPolynomial {
    /// Terms in descending monomial order, signs pulled out, unit
    /// coefficients omitted. The output re-parses to an equal value.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.display_sign_negative();
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{}", fmt_coeff_in_term(&mag))?;
            } else if mag.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", fmt_coeff_in_term(&mag), m)?;
            }
        }
        Ok(())
    }
}
