//! Exact arithmetic in Q(t) with the t-adic valuation.
//!
//! Elements of the coefficient field are rational functions in a single
//! transcendental `t` over arbitrary-precision rationals, kept in canonical
//! form (reduced fraction, monic denominator) so that equality is
//! structural. The valuation of a nonzero element is the order of vanishing
//! at t = 0; it is an integer, possibly negative for proper quotients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational number, always in reduced form with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for the fraction n/d. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// gcd on nonnegative rationals: gcd of numerators over lcm of denominators.
/// Used to extract the content of a coefficient list.
pub fn rational_gcd(a: &Rational, b: &Rational) -> Rational {
    if a.is_zero() {
        return b.abs();
    }
    if b.is_zero() {
        return a.abs();
    }
    let n = a.numer().gcd(b.numer());
    let d = a.denom().lcm(b.denom());
    Rational::new(n, d)
}

/// Errors from coefficient-field operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoeffError {
    /// Division by the zero element of Q(t).
    DivisionByZero,
    /// The operation is undefined on the zero element.
    ZeroElement,
}

impl fmt::Display for CoeffError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffError::DivisionByZero => write!(f, "division by zero in Q(t)"),
            CoeffError::ZeroElement => write!(f, "operation undefined on the zero element"),
        }
    }
}

impl std::error::Error for CoeffError {}

/// Value of the t-adic valuation: an integer or +infinity (only for zero).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn is_finite(&self) -> bool {
        matches!(self, Valuation::Finite(_))
    }

    pub fn finite(&self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(*v),
            Valuation::Infinite => None,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinite) => Ordering::Less,
            (Valuation::Infinite, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
        }
    }
}

impl std::ops::Add for Valuation {
    type Output = Valuation;

    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{}", v),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// Sparse polynomial in t over Q. No zero coefficients are stored; the zero
/// polynomial is the empty map.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TPolynomial {
    coeffs: BTreeMap<u32, Rational>,
}

impl TPolynomial {
    pub fn zero() -> Self {
        TPolynomial::default()
    }

    pub fn one() -> Self {
        TPolynomial::constant(rat(1))
    }

    pub fn constant(c: Rational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(0, c);
        }
        TPolynomial { coeffs }
    }

    /// The polynomial t.
    pub fn t() -> Self {
        TPolynomial::term(1, rat(1))
    }

    /// The single term c * t^deg.
    pub fn term(deg: u32, c: Rational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(deg, c);
        }
        TPolynomial { coeffs }
    }

    pub fn from_coeffs(pairs: impl IntoIterator<Item = (u32, Rational)>) -> Self {
        let mut p = TPolynomial::zero();
        for (d, c) in pairs {
            p.add_term(d, c);
        }
        p
    }

    fn add_term(&mut self, deg: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(deg) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.keys().all(|&d| d == 0)
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Smallest degree with a nonzero coefficient (the t-adic valuation).
    pub fn min_degree(&self) -> Option<u32> {
        self.coeffs.keys().next().copied()
    }

    pub fn coeff(&self, deg: u32) -> Rational {
        self.coeffs.get(&deg).cloned().unwrap_or_else(|| rat(0))
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.values().next_back()
    }

    pub fn trailing_coeff(&self) -> Option<&Rational> {
        self.coeffs.values().next()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&u32, &Rational)> {
        self.coeffs.iter()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return TPolynomial::zero();
        }
        TPolynomial {
            coeffs: self
                .coeffs
                .iter()
                .map(|(d, a)| (*d, a.clone() * c.clone()))
                .collect(),
        }
    }

    /// Multiply by t^k.
    pub fn shift(&self, k: u32) -> Self {
        TPolynomial {
            coeffs: self.coeffs.iter().map(|(d, a)| (d + k, a.clone())).collect(),
        }
    }

    pub fn derivative(&self) -> Self {
        let mut p = TPolynomial::zero();
        for (d, c) in &self.coeffs {
            if *d > 0 {
                p.add_term(d - 1, c.clone() * rat(*d as i64));
            }
        }
        p
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        // Horner over the sparse representation.
        let mut acc = rat(0);
        let mut last_deg = None;
        for (d, c) in self.coeffs.iter().rev() {
            if let Some(prev) = last_deg {
                let gap: u32 = prev - d;
                for _ in 0..gap {
                    acc *= x.clone();
                }
            }
            acc += c.clone();
            last_deg = Some(*d);
        }
        if let Some(d) = last_deg {
            for _ in 0..d {
                acc *= x.clone();
            }
        }
        acc
    }

    /// Scale so the leading coefficient is 1. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => TPolynomial::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Euclidean division: self = q * d + r with deg r < deg d.
    pub fn divrem(&self, d: &TPolynomial) -> (TPolynomial, TPolynomial) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut q = TPolynomial::zero();
        let mut r = self.clone();
        let dd = d.degree().unwrap();
        let dlc = d.leading_coeff().unwrap().clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let factor = r.leading_coeff().unwrap().clone() / dlc.clone();
            let shift = rd - dd;
            q.add_term(shift, factor.clone());
            let sub = d.shift(shift).scale(&factor);
            r = &r - &sub;
        }
        (q, r)
    }

    /// Monic gcd in Q[t]; gcd(0, 0) = 0.
    pub fn gcd(a: &TPolynomial, b: &TPolynomial) -> TPolynomial {
        let mut a = a.monic();
        let mut b = b.monic();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.monic();
        }
        a
    }
}

impl std::ops::Add for &TPolynomial {
    type Output = TPolynomial;

    fn add(self, rhs: &TPolynomial) -> TPolynomial {
        let mut out = self.clone();
        for (d, c) in &rhs.coeffs {
            out.add_term(*d, c.clone());
        }
        out
    }
}

impl std::ops::Sub for &TPolynomial {
    type Output = TPolynomial;

    fn sub(self, rhs: &TPolynomial) -> TPolynomial {
        let mut out = self.clone();
        for (d, c) in &rhs.coeffs {
            out.add_term(*d, -c.clone());
        }
        out
    }
}

impl std::ops::Mul for &TPolynomial {
    type Output = TPolynomial;

    fn mul(self, rhs: &TPolynomial) -> TPolynomial {
        let mut out = TPolynomial::zero();
        for (d1, c1) in &self.coeffs {
            for (d2, c2) in &rhs.coeffs {
                out.add_term(d1 + d2, c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl std::ops::Neg for &TPolynomial {
    type Output = TPolynomial;

    fn neg(self) -> TPolynomial {
        TPolynomial {
            coeffs: self.coeffs.iter().map(|(d, c)| (*d, -c.clone())).collect(),
        }
    }
}

fn fmt_rat(c: &Rational) -> String {
    if c.denom().is_one() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for TPolynomial {
    /// Descending powers, explicit `*` and `^` so the output re-parses.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
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
            let unit = mag.is_one();
            match (*d, unit) {
                (0, _) => write!(f, "{}", fmt_rat(&mag))?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{}*t", fmt_rat(&mag))?,
                (_, true) => write!(f, "t^{}", d)?,
                (_, false) => write!(f, "{}*t^{}", fmt_rat(&mag), d)?,
            }
        }
        Ok(())
    }
}

/// Element of Q(t) in canonical form: gcd(num, den) = 1 and den monic.
/// Zero is 0/1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: TPolynomial,
    den: TPolynomial,
}

impl RationalFunction {
    pub fn new(num: TPolynomial, den: TPolynomial) -> Result<Self, CoeffError> {
        if den.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: TPolynomial, den: TPolynomial) -> Self {
        if num.is_zero() {
            return RationalFunction {
                num: TPolynomial::zero(),
                den: TPolynomial::one(),
            };
        }
        let g = TPolynomial::gcd(&num, &den);
        let (num, _) = num.divrem(&g);
        let (den, _) = den.divrem(&g);
        let lc = den.leading_coeff().expect("nonzero denominator").clone();
        let inv = lc.recip();
        RationalFunction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: TPolynomial::zero(),
            den: TPolynomial::one(),
        }
    }

    pub fn one() -> Self {
        RationalFunction::constant(rat(1))
    }

    pub fn constant(c: Rational) -> Self {
        RationalFunction {
            num: TPolynomial::constant(c),
            den: TPolynomial::one(),
        }
    }

    pub fn from_poly(p: TPolynomial) -> Self {
        RationalFunction {
            num: p,
            den: TPolynomial::one(),
        }
    }

    pub fn t() -> Self {
        RationalFunction::from_poly(TPolynomial::t())
    }

    /// t^k, with negative k giving 1/t^(-k).
    pub fn t_pow(k: i64) -> Self {
        if k >= 0 {
            RationalFunction::from_poly(TPolynomial::term(k as u32, rat(1)))
        } else {
            RationalFunction {
                num: TPolynomial::one(),
                den: TPolynomial::term((-k) as u32, rat(1)),
            }
        }
    }

    pub fn num(&self) -> &TPolynomial {
        &self.num
    }

    pub fn den(&self) -> &TPolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == TPolynomial::one() && self.den == TPolynomial::one()
    }

    /// True when the element lies in the constant field Q.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    /// t-adic valuation; +infinity exactly for zero.
    pub fn val(&self) -> Valuation {
        match self.num.min_degree() {
            None => Valuation::Infinite,
            Some(n) => {
                let d = self.den.min_degree().expect("nonzero denominator");
                Valuation::Finite(n as i64 - d as i64)
            }
        }
    }

    /// Leading Laurent datum (c, s) with self = c*t^s + higher order terms.
    pub fn bar(&self) -> Result<(Rational, i64), CoeffError> {
        if self.is_zero() {
            return Err(CoeffError::ZeroElement);
        }
        let c = self.num.trailing_coeff().unwrap().clone()
            / self.den.trailing_coeff().unwrap().clone();
        let v = self.val().finite().unwrap();
        Ok((c, v))
    }

    /// The pure term c*t^s matching the leading Laurent datum.
    pub fn bar_element(&self) -> Result<RationalFunction, CoeffError> {
        let (c, s) = self.bar()?;
        Ok(&RationalFunction::constant(c) * &RationalFunction::t_pow(s))
    }

    /// Leading Laurent coefficient.
    pub fn leading_rat(&self) -> Result<Rational, CoeffError> {
        Ok(self.bar()?.0)
    }

    /// Derivative d/dt via the quotient rule.
    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        let d = &self.den * &self.den;
        Self::reduced(n, d)
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, CoeffError> {
        if rhs.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(Self::reduced(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn recip(&self) -> Result<Self, CoeffError> {
        RationalFunction::one().checked_div(self)
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational, CoeffError> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(self.num.eval(x) / d)
    }

    /// Scale num and den to a primitive integer-coefficient pair for display.
    fn integer_normalized(&self) -> (TPolynomial, TPolynomial) {
        let mut denom_lcm = BigInt::one();
        for (_, c) in self.num.iter().chain(self.den.iter()) {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let scale = Rational::from_integer(denom_lcm);
        let num = self.num.scale(&scale);
        let den = self.den.scale(&scale);
        let mut content = BigInt::zero();
        for (_, c) in num.iter().chain(den.iter()) {
            content = content.gcd(c.numer());
        }
        if content.is_zero() || content.is_one() {
            return (num, den);
        }
        let inv = Rational::from_integer(content).recip();
        (num.scale(&inv), den.scale(&inv))
    }

    /// Sign used by the term formatter: sign of the leading numerator
    /// coefficient (the denominator is kept positive).
    pub fn display_sign_negative(&self) -> bool {
        self.num
            .leading_coeff()
            .map(|c| c.is_negative())
            .unwrap_or(false)
    }
}

impl std::ops::Add for &RationalFunction {
    type Output = RationalFunction;

    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        let n = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::reduced(n, &self.den * &rhs.den)
    }
}

impl std::ops::Sub for &RationalFunction {
    type Output = RationalFunction;

    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        let n = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        RationalFunction::reduced(n, &self.den * &rhs.den)
    }
}

impl std::ops::Mul for &RationalFunction {
    type Output = RationalFunction;

    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::reduced(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl std::ops::Neg for &RationalFunction {
    type Output = RationalFunction;

    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, den) = self.integer_normalized();
        if den == TPolynomial::one() {
            return write!(f, "{}", num);
        }
        let num_str = num.to_string();
        let den_str = den.to_string();
        // '/' binds one atom on each side in the term grammar, so the
        // denominator takes parentheses unless it prints as one atom
        let num_atomic = num.coeffs.len() <= 1;
        let den_atomic = !den_str.contains('*') && !den_str.contains(' ');
        match (num_atomic, den_atomic) {
            (true, true) => write!(f, "{}/{}", num_str, den_str),
            (true, false) => write!(f, "{}/({})", num_str, den_str),
            (false, true) => write!(f, "({})/{}", num_str, den_str),
            (false, false) => write!(f, "({})/({})", num_str, den_str),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(pairs: &[(u32, i64)]) -> TPolynomial {
        TPolynomial::from_coeffs(pairs.iter().map(|&(d, c)| (d, rat(c))))
    }

    fn rf(num: &[(u32, i64)], den: &[(u32, i64)]) -> RationalFunction {
        RationalFunction::new(poly(num), poly(den)).unwrap()
    }

    /// Laurent coefficient of t^k in num/den, by ascending long division.
    /// Independent of bar()/val(): used as an oracle.
    fn series_coeff(x: &RationalFunction, k: i64) -> Rational {
        let shift = x.den().min_degree().unwrap() as i64;
        // x = num / (t^shift * u) with u(0) != 0; expand num/u as a power
        // series and read off the coefficient of t^(k + shift).
        let u = TPolynomial::from_coeffs(
            x.den()
                .iter()
                .map(|(d, c)| (d - shift as u32, c.clone())),
        );
        let want = k + shift;
        if want < 0 {
            return rat(0);
        }
        let u0 = u.coeff(0);
        let mut series: Vec<Rational> = Vec::new();
        for j in 0..=want as u32 {
            let mut acc = x.num().coeff(j);
            for (i, s) in series.iter().enumerate() {
                acc -= u.coeff(j - i as u32) * s.clone();
            }
            series.push(acc / u0.clone());
        }
        series[want as usize].clone()
    }

    #[test]
    fn field_ops_canonical() {
        // t * (1/t) = 1
        let t = RationalFunction::t();
        let inv_t = RationalFunction::t_pow(-1);
        assert!((&t * &inv_t).is_one());

        // (t-1)*t - (t^2-t)/2 * 2 = 0, cross-checked by evaluation at t=7
        let a = &rf(&[(1, 1), (0, -1)], &[(0, 1)]) * &RationalFunction::t();
        let b = &rf(&[(2, 1), (1, -1)], &[(0, 2)]) * &RationalFunction::constant(rat(2));
        let diff = &a - &b;
        assert!(diff.is_zero());
        let seven = rat(7);
        assert_eq!(a.eval(&seven).unwrap(), b.eval(&seven).unwrap());
        assert_eq!(a.eval(&seven).unwrap(), rat(42));

        // (t^2-1)/(t+1) canonicalizes to t-1
        let c = rf(&[(2, 1), (0, -1)], &[(1, 1), (0, 1)]);
        assert_eq!(c, rf(&[(1, 1), (0, -1)], &[(0, 1)]));
        assert_eq!(c.to_string(), "t - 1");
    }

    #[test]
    fn division_errors() {
        let t = RationalFunction::t();
        assert_eq!(
            t.checked_div(&RationalFunction::zero()),
            Err(CoeffError::DivisionByZero)
        );
        assert_eq!(
            RationalFunction::new(TPolynomial::one(), TPolynomial::zero()),
            Err(CoeffError::DivisionByZero)
        );
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(RationalFunction::zero().val(), Valuation::Infinite);

        // (t-1)*t has valuation 1
        let a = &rf(&[(1, 1), (0, -1)], &[(0, 1)]) * &RationalFunction::t();
        assert_eq!(a.val(), Valuation::Finite(1));

        // (t^2+t^3)/t has valuation 1
        let b = rf(&[(2, 1), (3, 1)], &[(1, 1)]);
        assert_eq!(b.val(), Valuation::Finite(1));

        // negative valuation on a proper quotient
        assert_eq!(RationalFunction::t_pow(-3).val(), Valuation::Finite(-3));
    }

    #[test]
    fn bar_examples() {
        // 3t^2 + t^5 -> (3, 2)
        let a = rf(&[(2, 3), (5, 1)], &[(0, 1)]);
        assert_eq!(a.bar().unwrap(), (rat(3), 2));

        // t - 1 -> (-1, 0)
        let b = rf(&[(1, 1), (0, -1)], &[(0, 1)]);
        assert_eq!(b.bar().unwrap(), (rat(-1), 0));

        // (2t^2+2t)/(t+1) cancels to 2t -> (2, 1); series oracle agrees
        let c = rf(&[(2, 2), (1, 2)], &[(1, 1), (0, 1)]);
        assert_eq!(c.bar().unwrap(), (rat(2), 1));
        assert_eq!(series_coeff(&c, 0), rat(0));
        assert_eq!(series_coeff(&c, 1), rat(2));

        assert_eq!(
            RationalFunction::zero().bar(),
            Err(CoeffError::ZeroElement)
        );
    }

    #[test]
    fn bar_matches_series_oracle() {
        let samples = [
            rf(&[(1, 2), (3, -5)], &[(0, 1), (1, 1)]),
            rf(&[(0, 1)], &[(2, 3), (4, 1)]),
            rf(&[(2, 7)], &[(0, 2), (1, -1)]),
        ];
        for x in &samples {
            let (c, s) = x.bar().unwrap();
            assert_eq!(series_coeff(x, s), c, "bar coefficient for {}", x);
            if s > i64::MIN {
                assert!(series_coeff(x, s - 1).is_zero());
            }
        }
    }

    #[test]
    fn derivative_examples() {
        // (t^2)' = 2t
        let t2 = rf(&[(2, 1)], &[(0, 1)]);
        assert_eq!(t2.derivative(), rf(&[(1, 2)], &[(0, 1)]));

        // constants vanish
        assert!(RationalFunction::constant(rat(5)).derivative().is_zero());

        // (1/t)' = -1/t^2
        let inv = RationalFunction::t_pow(-1);
        assert_eq!(inv.derivative(), rf(&[(0, -1)], &[(2, 1)]));
    }

    #[test]
    fn display_forms() {
        assert_eq!(RationalFunction::zero().to_string(), "0");
        assert_eq!(RationalFunction::constant(ratio(3, 2)).to_string(), "3/2");
        assert_eq!(RationalFunction::t().to_string(), "t");
        let q = rf(&[(2, 1), (0, -1)], &[(1, 1), (0, 2)]);
        assert_eq!(q.to_string(), "(t^2 - 1)/(t + 2)");
        // half-integer coefficients scale to a primitive integer pair
        let h = rf(&[(1, 1)], &[(0, 2)]);
        assert_eq!(h.to_string(), "t/2");
    }

    #[test]
    fn gcd_and_divrem() {
        let a = poly(&[(3, 1), (0, -1)]);
        let b = poly(&[(1, 1), (0, -1)]);
        let (q, r) = a.divrem(&b);
        assert!(r.is_zero());
        assert_eq!(&q * &b, a);
        assert_eq!(TPolynomial::gcd(&a, &b), b.monic());
    }

    #[test]
    fn rational_gcd_content() {
        assert_eq!(rational_gcd(&rat(6), &rat(4)), rat(2));
        assert_eq!(rational_gcd(&ratio(1, 3), &ratio(2, 3)), ratio(1, 3));
        assert_eq!(rational_gcd(&rat(1), &ratio(1, 3)), ratio(1, 3));
        assert_eq!(rational_gcd(&rat(0), &rat(-5)), rat(5));
    }
}
