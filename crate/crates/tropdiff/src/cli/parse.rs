//! Text grammars for polynomials, supports, and basis files.
//!
//! Polynomial grammar (whitespace insignificant):
//!   poly   := [+|-] term { (+|-) term }
//!   term   := unit { '*' unit }
//!   unit   := factor | coefficient atom
//!   factor := ( 'D' nat '(' 'y' nat ')' | 'y' nat | 'y' ) primes ['^' nat]
//!   coefficient atoms: integers, 't' ['^' nat], parenthesized sums,
//!   with '/' between atoms for quotients; sums always take parentheses.
//! Primes are accepted as derivative sugar in single-variable sessions.
//!
//! Support grammar, one entry per variable, comma separated:
//!   entry := 'N' | nat 'N' | nat '+' nat 'N' | '{' nat-list '}' ['u' progression]

use std::fmt;

use num_bigint::BigInt;

use crate::coefficients::{rat, Rational, RationalFunction, TPolynomial};
use crate::diffpoly::{DerivVar, DiffMonomial, DiffPolynomial};
use crate::tropical::{SupportProfile, SupportSet};

/// Byte span of an offending token.
pub type Span = (usize, usize);

/// Parse errors with source spans.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    Syntax { span: Span, message: String },
    IndexOutOfRange { span: Span, var: u32, arity: usize },
    ZeroDenominator { span: Span },
    ZeroPeriod { span: Span },
    ArityMismatch { expected: usize, found: usize },
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax { span, message } => {
                write!(f, "syntax error at {}..{}: {}", span.0, span.1, message)
            }
            ParseError::IndexOutOfRange { span, var, arity } => write!(
                f,
                "variable index y{} out of range for {} variable(s) at {}..{}",
                var, arity, span.0, span.1
            ),
            ParseError::ZeroDenominator { span } => {
                write!(f, "zero denominator at {}..{}", span.0, span.1)
            }
            ParseError::ZeroPeriod { span } => {
                write!(f, "progression period must be positive at {}..{}", span.0, span.1)
            }
            ParseError::ArityMismatch { expected, found } => write!(
                f,
                "support profile has {} entries but the session declares {} variable(s)",
                found, expected
            ),
        }
    }
}

impl std::error::Error for ParseError {}

impl ParseError {
    pub fn code(&self) -> &'static str {
        match self {
            ParseError::Syntax { .. } => "syntax",
            ParseError::IndexOutOfRange { .. } => "index-out-of-range",
            ParseError::ZeroDenominator { .. } => "zero-denominator",
            ParseError::ZeroPeriod { .. } => "zero-period",
            ParseError::ArityMismatch { .. } => "arity-mismatch",
        }
    }
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn error(&mut self, message: &str) -> ParseError {
        self.skip_ws();
        let end = (self.pos + 1).min(self.src.len()).max(self.pos);
        ParseError::Syntax {
            span: (self.pos, end),
            message: message.to_string(),
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn natural(&mut self) -> Result<(u64, Span), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut value: u64 = 0;
        let mut any = false;
        while let Some(c) = self.src.get(self.pos) {
            if !c.is_ascii_digit() {
                break;
            }
            any = true;
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add((c - b'0') as u64))
                .ok_or_else(|| ParseError::Syntax {
                    span: (start, self.pos + 1),
                    message: "number too large".into(),
                })?;
            self.pos += 1;
        }
        if !any {
            return Err(self.error("expected a number"));
        }
        Ok((value, (start, self.pos)))
    }

    fn big_natural(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.src.get(self.pos) {
            if !c.is_ascii_digit() {
                break;
            }
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected a number"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(text.parse().unwrap())
    }
}

/// Parse a differential polynomial over n variables.
pub fn parse_polynomial(text: &str, n: usize) -> Result<DiffPolynomial, ParseError> {
    let mut cur = Cursor::new(text);
    let poly = parse_poly_inner(&mut cur, n)?;
    if !cur.at_end() {
        return Err(cur.error("trailing input"));
    }
    Ok(poly)
}

fn parse_poly_inner(cur: &mut Cursor, n: usize) -> Result<DiffPolynomial, ParseError> {
    let mut out = DiffPolynomial::zero();
    let mut negate = false;
    if cur.eat(b'-') {
        negate = true;
    } else {
        cur.eat(b'+');
    }
    loop {
        let (coeff, mono) = parse_term(cur, n)?;
        let signed = if negate { -&coeff } else { coeff };
        out.add_term(&signed, &mono);
        match cur.peek() {
            Some(b'+') => {
                cur.bump();
                negate = false;
            }
            Some(b'-') => {
                cur.bump();
                negate = true;
            }
            _ => break,
        }
    }
    Ok(out)
}

fn parse_term(cur: &mut Cursor, n: usize) -> Result<(RationalFunction, DiffMonomial), ParseError> {
    let mut coeff = RationalFunction::one();
    let mut mono = DiffMonomial::one();
    let mut any = false;
    loop {
        match cur.peek() {
            Some(b'y') | Some(b'D') => {
                let (var, exp) = parse_factor(cur, n)?;
                mono = mono.mul(&DiffMonomial::from_powers([(var, exp)]));
                any = true;
            }
            Some(c) if c.is_ascii_digit() || c == b't' || c == b'(' => {
                let atom = parse_coeff_chain(cur)?;
                coeff = &coeff * &atom;
                any = true;
            }
            _ => {
                if !any {
                    return Err(cur.error("expected a term"));
                }
                break;
            }
        }
        if !cur.eat(b'*') {
            break;
        }
    }
    Ok((coeff, mono))
}

fn parse_factor(cur: &mut Cursor, n: usize) -> Result<(DerivVar, u32), ParseError> {
    cur.skip_ws();
    let start = cur.pos;
    let mut order: u64 = 0;
    let c = cur.bump().ok_or_else(|| ParseError::Syntax {
        span: (start, start + 1),
        message: "expected a factor".into(),
    })?;
    let var;
    if c == b'D' {
        let (ord, _) = cur.natural()?;
        order = ord;
        cur.expect(b'(')?;
        if !cur.eat(b'y') {
            return Err(cur.error("expected 'y'"));
        }
        match cur.peek() {
            Some(d) if d.is_ascii_digit() => {
                let (v, span) = cur.natural()?;
                var = check_var(v, span, n)?;
            }
            _ => {
                if n != 1 {
                    return Err(ParseError::Syntax {
                        span: (start, cur.pos),
                        message: "bare 'y' needs a single-variable session".into(),
                    });
                }
                var = 1;
            }
        }
        cur.expect(b')')?;
    } else {
        // bare y or indexed y
        match cur.peek() {
            Some(d) if d.is_ascii_digit() => {
                let (v, span) = cur.natural()?;
                var = check_var(v, span, n)?;
            }
            _ => {
                if n != 1 {
                    return Err(ParseError::Syntax {
                        span: (start, cur.pos),
                        message: "bare 'y' needs a single-variable session".into(),
                    });
                }
                var = 1;
            }
        }
    }
    // prime sugar, single-variable sessions only
    let mut primes = 0u64;
    while cur.peek() == Some(b'\'') {
        cur.bump();
        primes += 1;
    }
    if primes > 0 {
        if n != 1 {
            return Err(ParseError::Syntax {
                span: (start, cur.pos),
                message: "prime notation needs a single-variable session".into(),
            });
        }
        order += primes;
    }
    let mut exp = 1u64;
    if cur.eat(b'^') {
        let (e, span) = cur.natural()?;
        if e == 0 {
            return Err(ParseError::Syntax {
                span,
                message: "zero exponent".into(),
            });
        }
        exp = e;
    }
    Ok((DerivVar::new(var, order as u32), exp as u32))
}

fn check_var(v: u64, span: Span, n: usize) -> Result<u32, ParseError> {
    if v == 0 || v as usize > n {
        return Err(ParseError::IndexOutOfRange {
            span,
            var: v as u32,
            arity: n,
        });
    }
    Ok(v as u32)
}

/// A chain of coefficient atoms joined by '/', e.g. `(t^2-1)/(t+2)` or `3/2`.
fn parse_coeff_chain(cur: &mut Cursor) -> Result<RationalFunction, ParseError> {
    let mut value = parse_coeff_atom(cur)?;
    while cur.eat(b'/') {
        cur.skip_ws();
        let start = cur.pos;
        let rhs = parse_coeff_atom(cur)?;
        value = value
            .checked_div(&rhs)
            .map_err(|_| ParseError::ZeroDenominator {
                span: (start, cur.pos),
            })?;
    }
    Ok(value)
}

fn parse_coeff_atom(cur: &mut Cursor) -> Result<RationalFunction, ParseError> {
    match cur.peek() {
        Some(c) if c.is_ascii_digit() => {
            let n = cur.big_natural()?;
            Ok(RationalFunction::constant(Rational::from_integer(n)))
        }
        Some(b't') => {
            cur.bump();
            let deg = if cur.eat(b'^') {
                let (d, span) = cur.natural()?;
                u32::try_from(d).map_err(|_| ParseError::Syntax {
                    span,
                    message: "exponent too large".into(),
                })?
            } else {
                1
            };
            Ok(RationalFunction::from_poly(TPolynomial::term(deg, rat(1))))
        }
        Some(b'(') => {
            cur.bump();
            let inner = parse_coeff_sum(cur)?;
            cur.expect(b')')?;
            if cur.eat(b'^') {
                let (d, _) = cur.natural()?;
                let mut acc = RationalFunction::one();
                for _ in 0..d {
                    acc = &acc * &inner;
                }
                Ok(acc)
            } else {
                Ok(inner)
            }
        }
        _ => Err(cur.error("expected a coefficient")),
    }
}

/// Sum of coefficient products inside parentheses.
fn parse_coeff_sum(cur: &mut Cursor) -> Result<RationalFunction, ParseError> {
    let mut acc = RationalFunction::zero();
    let mut negate = false;
    if cur.eat(b'-') {
        negate = true;
    } else {
        cur.eat(b'+');
    }
    loop {
        let mut prod = parse_coeff_chain(cur)?;
        while cur.eat(b'*') {
            let rhs = parse_coeff_chain(cur)?;
            prod = &prod * &rhs;
        }
        if negate {
            prod = -&prod;
        }
        acc = &acc + &prod;
        match cur.peek() {
            Some(b'+') => {
                cur.bump();
                negate = false;
            }
            Some(b'-') => {
                cur.bump();
                negate = true;
            }
            _ => break,
        }
    }
    Ok(acc)
}

/// Parse a rational-function coefficient on its own, e.g. for seeds and
/// fuzzing. Accepts sums at top level.
pub fn parse_rational_function(text: &str) -> Result<RationalFunction, ParseError> {
    let mut cur = Cursor::new(text);
    let value = parse_coeff_sum(&mut cur)?;
    if !cur.at_end() {
        return Err(cur.error("trailing input"));
    }
    Ok(value)
}

/// Parse a support profile: n comma-separated entries.
pub fn parse_support(text: &str, n: usize) -> Result<SupportProfile, ParseError> {
    let mut cur = Cursor::new(text);
    let mut sets = Vec::new();
    loop {
        sets.push(parse_support_entry(&mut cur)?);
        if !cur.eat(b',') {
            break;
        }
    }
    if !cur.at_end() {
        return Err(cur.error("trailing input"));
    }
    if sets.len() != n {
        return Err(ParseError::ArityMismatch {
            expected: n,
            found: sets.len(),
        });
    }
    Ok(SupportProfile::new(sets))
}

fn parse_support_entry(cur: &mut Cursor) -> Result<SupportSet, ParseError> {
    match cur.peek() {
        Some(b'{') => {
            cur.bump();
            let mut elems = Vec::new();
            if cur.peek() != Some(b'}') {
                loop {
                    let (x, _) = cur.natural()?;
                    elems.push(x);
                    if !cur.eat(b',') {
                        break;
                    }
                }
            }
            cur.expect(b'}')?;
            if cur.eat(b'u') {
                let (l, m) = parse_progression(cur)?;
                Ok(SupportSet::union(elems, l, m))
            } else {
                Ok(SupportSet::finite(elems))
            }
        }
        _ => {
            let (l, m) = parse_progression(cur)?;
            Ok(if l == 0 && m == 1 {
                SupportSet::naturals()
            } else {
                SupportSet::progression(l, m)
            })
        }
    }
}

fn parse_progression(cur: &mut Cursor) -> Result<(u64, u64), ParseError> {
    match cur.peek() {
        Some(b'N') => {
            cur.bump();
            Ok((0, 1))
        }
        Some(c) if c.is_ascii_digit() => {
            let (first, span) = cur.natural()?;
            match cur.peek() {
                Some(b'N') => {
                    cur.bump();
                    if first == 0 {
                        return Err(ParseError::ZeroPeriod { span });
                    }
                    Ok((0, first))
                }
                Some(b'+') => {
                    cur.bump();
                    let (m, mspan) = cur.natural()?;
                    cur.expect(b'N')?;
                    if m == 0 {
                        return Err(ParseError::ZeroPeriod { span: mspan });
                    }
                    Ok((first, m))
                }
                _ => Err(cur.error("expected 'N' or '+'")),
            }
        }
        _ => Err(cur.error("expected a support entry")),
    }
}

/// Parse a basis file: newline-separated polynomial texts, '#' comments.
pub fn parse_basis(text: &str, n: usize) -> Result<Vec<DiffPolynomial>, ParseError> {
    let mut out = Vec::new();
    for line in text.lines() {
        let line = match line.find('#') {
            Some(i) => &line[..i],
            None => line,
        };
        if line.trim().is_empty() {
            continue;
        }
        out.push(parse_polynomial(line, n)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::{rat, RationalFunction};
    use crate::diffpoly::DiffPolynomial;

    fn y(order: u32) -> DiffPolynomial {
        DiffPolynomial::variable(DerivVar::new(1, order))
    }

    #[test]
    fn polynomial_examples() {
        let f = parse_polynomial("D4(y) + D2(y) + D1(y)", 1).unwrap();
        assert_eq!(f, &(&y(4) + &y(2)) + &y(1));

        let g = parse_polynomial("y + t*D1(y)", 1).unwrap();
        assert_eq!(g, &y(0) + &y(1).scale(&RationalFunction::t()));

        let h = parse_polynomial("y1*D2(y1) + D1(y1)", 1).unwrap();
        let m = DiffMonomial::from_powers([(DerivVar::new(1, 0), 1), (DerivVar::new(1, 2), 1)]);
        assert_eq!(h, &DiffPolynomial::monomial(m) + &y(1));
    }

    #[test]
    fn prime_sugar_single_variable_only() {
        assert_eq!(parse_polynomial("y''", 1).unwrap(), y(2));
        assert_eq!(parse_polynomial("y1'", 1).unwrap(), y(1));
        assert!(matches!(
            parse_polynomial("y1'", 2),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_polynomial("y", 2),
            Err(ParseError::Syntax { .. })
        ));
    }

    #[test]
    fn coefficient_grammar() {
        let p = parse_polynomial("(t^2-1)/(t+2)*y1", 1).unwrap();
        let c = p.iter().next().unwrap().1.clone();
        assert_eq!(c.to_string(), "(t^2 - 1)/(t + 2)");

        let q = parse_polynomial("3/2*y - 1/2*y", 1).unwrap();
        assert_eq!(q, y(0).scale(&RationalFunction::constant(rat(1))));

        // constant-only terms fold into the monomial 1
        let r = parse_polynomial("t*y' - 3", 1).unwrap();
        assert_eq!(r.num_terms(), 2);
        assert_eq!(parse_polynomial("2^3", 1).unwrap_err().code(), "syntax");
    }

    #[test]
    fn polynomial_errors() {
        assert!(matches!(
            parse_polynomial("y3 + y1", 2),
            Err(ParseError::IndexOutOfRange { var: 3, .. })
        ));
        assert!(matches!(
            parse_polynomial("1/(t-t)*y", 1),
            Err(ParseError::ZeroDenominator { .. })
        ));
        assert!(matches!(
            parse_polynomial("", 1),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_polynomial("y +", 1),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_polynomial("y y", 1),
            Err(ParseError::Syntax { .. })
        ));
    }

    #[test]
    fn support_examples() {
        let s = parse_support("4N", 1).unwrap();
        assert_eq!(s.set(1), &SupportSet::progression(0, 4));

        let s = parse_support("1+2N", 1).unwrap();
        assert_eq!(s.set(1), &SupportSet::progression(1, 2));

        let s = parse_support("{0,2,4}", 1).unwrap();
        assert_eq!(s.set(1), &SupportSet::finite([0, 2, 4]));

        let s = parse_support("{0,1} u 3+5N", 1).unwrap();
        assert_eq!(s.set(1), &SupportSet::union([0, 1], 3, 5));

        let s = parse_support("N, 1+2N", 2).unwrap();
        assert_eq!(s.n(), 2);
        assert_eq!(s.set(1), &SupportSet::naturals());
    }

    #[test]
    fn support_errors() {
        assert!(matches!(
            parse_support("0N", 1),
            Err(ParseError::ZeroPeriod { .. })
        ));
        assert!(matches!(
            parse_support("1+0N", 1),
            Err(ParseError::ZeroPeriod { .. })
        ));
        assert!(matches!(
            parse_support("N, N", 1),
            Err(ParseError::ArityMismatch {
                expected: 1,
                found: 2
            })
        ));
        assert!(matches!(
            parse_support("4M", 1),
            Err(ParseError::Syntax { .. })
        ));
    }

    #[test]
    fn basis_file_format() {
        let text = "# comment line\nD4(y)+D2(y)+D1(y)\n\n3*D2(y) + D9(y) + 2*D1(y) # inline\n";
        let basis = parse_basis(text, 1).unwrap();
        assert_eq!(basis.len(), 2);
        assert_eq!(basis[0], &(&y(4) + &y(2)) + &y(1));
    }

    #[test]
    fn display_reparses() {
        let samples = [
            "D4(y) + D2(y) + D1(y)",
            "y + t*D1(y)",
            "y1*D2(y1) + D1(y1)",
            "(t^2-1)/(t+2)*y1 - 3/2",
            "D6(y) - 2*D2(y) - D5(y) - D1(y)",
        ];
        for text in samples {
            let p = parse_polynomial(text, 1).unwrap();
            let shown = p.to_string();
            let again = parse_polynomial(&shown, 1).unwrap();
            assert_eq!(p, again, "round trip failed for {:?} -> {:?}", text, shown);
        }
    }
}
