//! Exact arithmetic in the golden field Q(τ), τ = (1 + √5)/2.
//!
//! Every window coordinate, plane height and area coefficient in this crate is
//! a [`GoldenScalar`]; floats only appear at output boundaries. Coefficients are
//! arbitrary-precision rationals so long Fibonacci iterations cannot overflow.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The element `a + b·τ` of Q(τ), with `τ² = τ + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GoldenScalar {
    a: BigRational,
    b: BigRational,
}

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn rational_sign(x: &BigRational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

impl GoldenScalar {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        GoldenScalar { a, b }
    }

    /// `a_num/a_den + (b_num/b_den)·τ`. Panics on a zero denominator.
    pub fn from_ratios(a_num: i64, a_den: i64, b_num: i64, b_den: i64) -> Self {
        GoldenScalar::new(ratio(a_num, a_den), ratio(b_num, b_den))
    }

    pub fn from_int(a: i64) -> Self {
        GoldenScalar::new(BigRational::from_integer(a.into()), BigRational::zero())
    }

    /// `a + b·τ` with integer coefficients.
    pub fn from_ints(a: i64, b: i64) -> Self {
        GoldenScalar::new(
            BigRational::from_integer(a.into()),
            BigRational::from_integer(b.into()),
        )
    }

    pub fn zero() -> Self {
        GoldenScalar::default()
    }

    pub fn one() -> Self {
        GoldenScalar::from_int(1)
    }

    pub fn tau() -> Self {
        GoldenScalar::from_ints(0, 1)
    }

    /// Rational coefficient of 1.
    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    /// Rational coefficient of τ.
    pub fn tau_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Galois conjugate τ ↦ 1 − τ, i.e. `(a + b, −b)`.
    pub fn conj(&self) -> Self {
        GoldenScalar::new(&self.a + &self.b, -&self.b)
    }

    /// `x · conj(x) = a² + ab − b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a + &self.a * &self.b - &self.b * &self.b
    }

    /// Exact sign of `a + b·τ`, decided in rational arithmetic.
    ///
    /// Writing the value as `p + q·√5` with `p = a + b/2`, `q = b/2`, the sign
    /// is obvious unless `p` and `q` disagree, in which case `p²` vs `5q²`
    /// decides which term dominates (they cannot be equal for rational p, q ≠ 0).
    pub fn sign(&self) -> i8 {
        let q = &self.b / BigInt::from(2);
        let p = &self.a + &q;
        let sp = rational_sign(&p);
        let sq = rational_sign(&q);
        if sq == 0 {
            return sp;
        }
        if sp == 0 || sp == sq {
            return sq;
        }
        let p2 = &p * &p;
        let q2 = &q * &q * BigInt::from(5);
        if p2 > q2 {
            sp
        } else {
            sq
        }
    }

    pub fn abs(&self) -> Self {
        if self.sign() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn checked_div(&self, rhs: &GoldenScalar) -> Result<GoldenScalar> {
        let n = rhs.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let num = self * &rhs.conj();
        Ok(GoldenScalar::new(num.a / &n, num.b / &n))
    }

    pub fn recip(&self) -> Result<GoldenScalar> {
        GoldenScalar::one().checked_div(self)
    }

    /// Integer power; negative exponents go through [`GoldenScalar::recip`].
    pub fn pow(&self, exp: i32) -> Result<GoldenScalar> {
        let base = if exp < 0 { self.recip()? } else { self.clone() };
        let mut out = GoldenScalar::one();
        for _ in 0..exp.unsigned_abs() {
            out = &out * &base;
        }
        Ok(out)
    }

    /// `τⁿ` for any integer `n`.
    pub fn tau_pow(n: i32) -> GoldenScalar {
        GoldenScalar::tau().pow(n).expect("tau is a unit")
    }

    /// Nearest double. Output paths only.
    pub fn to_f64(&self) -> f64 {
        let q = &self.b / BigInt::from(2);
        let p = &self.a + &q;
        let p = p.to_f64().unwrap_or(f64::NAN);
        let q = q.to_f64().unwrap_or(f64::NAN);
        p + q * 5f64.sqrt()
    }

    pub fn min(self, other: GoldenScalar) -> GoldenScalar {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: GoldenScalar) -> GoldenScalar {
        if self >= other {
            self
        } else {
            other
        }
    }
}

impl PartialOrd for GoldenScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GoldenScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).sign().cmp(&0)
    }
}

impl From<i64> for GoldenScalar {
    fn from(a: i64) -> Self {
        GoldenScalar::from_int(a)
    }
}

impl<'a> Add<&'a GoldenScalar> for &'a GoldenScalar {
    type Output = GoldenScalar;
    fn add(self, rhs: &GoldenScalar) -> GoldenScalar {
        GoldenScalar::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl<'a> Sub<&'a GoldenScalar> for &'a GoldenScalar {
    type Output = GoldenScalar;
    fn sub(self, rhs: &GoldenScalar) -> GoldenScalar {
        GoldenScalar::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl<'a> Mul<&'a GoldenScalar> for &'a GoldenScalar {
    type Output = GoldenScalar;
    fn mul(self, rhs: &GoldenScalar) -> GoldenScalar {
        // (a + bτ)(c + dτ) = ac + bd + (ad + bc + bd)τ
        let bd = &self.b * &rhs.b;
        GoldenScalar::new(
            &self.a * &rhs.a + &bd,
            &self.a * &rhs.b + &self.b * &rhs.a + bd,
        )
    }
}

/// Panics on a zero divisor, like integer division; use
/// [`GoldenScalar::checked_div`] when the divisor is not known to be nonzero.
impl<'a> Div<&'a GoldenScalar> for &'a GoldenScalar {
    type Output = GoldenScalar;
    fn div(self, rhs: &GoldenScalar) -> GoldenScalar {
        self.checked_div(rhs)
            .expect("GoldenScalar division by zero")
    }
}

impl Neg for &GoldenScalar {
    type Output = GoldenScalar;
    fn neg(self) -> GoldenScalar {
        GoldenScalar::new(-&self.a, -&self.b)
    }
}

impl Neg for GoldenScalar {
    type Output = GoldenScalar;
    fn neg(self) -> GoldenScalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<GoldenScalar> for GoldenScalar {
            type Output = GoldenScalar;
            fn $m(self, rhs: GoldenScalar) -> GoldenScalar { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a GoldenScalar> for GoldenScalar {
            type Output = GoldenScalar;
            fn $m(self, rhs: &GoldenScalar) -> GoldenScalar { (&self).$m(rhs) }
        }
        impl<'a> $tr<GoldenScalar> for &'a GoldenScalar {
            type Output = GoldenScalar;
            fn $m(self, rhs: GoldenScalar) -> GoldenScalar { self.$m(&rhs) }
        }
        impl $tr<i64> for GoldenScalar {
            type Output = GoldenScalar;
            fn $m(self, rhs: i64) -> GoldenScalar { (&self).$m(&GoldenScalar::from_int(rhs)) }
        }
        impl<'a> $tr<i64> for &'a GoldenScalar {
            type Output = GoldenScalar;
            fn $m(self, rhs: i64) -> GoldenScalar { self.$m(&GoldenScalar::from_int(rhs)) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&GoldenScalar> for GoldenScalar {
    fn add_assign(&mut self, rhs: &GoldenScalar) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl SubAssign<&GoldenScalar> for GoldenScalar {
    fn sub_assign(&mut self, rhs: &GoldenScalar) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}

impl fmt::Display for GoldenScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "({})tau", self.b),
            (false, false) => write!(f, "{} + ({})tau", self.a, self.b),
        }
    }
}

/// Parses expressions over integers, `tau`, `+ - * /` and parentheses,
/// e.g. `-1/(tau*(tau+2))`. Decimal literals are rejected.
impl FromStr for GoldenScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parser = ExprParser {
            input: s,
            tokens: tokenize(s)?,
            pos: 0,
        };
        let value = parser.expr()?;
        if parser.pos != parser.tokens.len() {
            return Err(parser.error("trailing input"));
        }
        Ok(value)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Tau,
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let err = |reason: String| Error::Parse {
        input: s.to_string(),
        reason,
    };
    let mut out = Vec::new();
    let mut chars = s.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '0'..='9' => {
                let mut end = i;
                while let Some(&(j, d)) = chars.peek() {
                    if d.is_ascii_digit() {
                        end = j + d.len_utf8();
                        chars.next();
                    } else {
                        break;
                    }
                }
                if let Some(&(_, '.')) = chars.peek() {
                    return Err(err("decimal literals are not exact; use a fraction".into()));
                }
                out.push(Token::Int(s[i..end].parse().expect("digits")));
            }
            'τ' => {
                chars.next();
                out.push(Token::Tau);
            }
            'a'..='z' | 'A'..='Z' => {
                let mut end = i;
                while let Some(&(j, d)) = chars.peek() {
                    if d.is_ascii_alphabetic() {
                        end = j + d.len_utf8();
                        chars.next();
                    } else {
                        break;
                    }
                }
                match &s[i..end] {
                    "tau" | "TAU" | "Tau" => out.push(Token::Tau),
                    other => return Err(err(format!("unknown identifier {other:?}"))),
                }
            }
            _ => {
                chars.next();
                out.push(match c {
                    '+' => Token::Plus,
                    '-' | '−' => Token::Minus,
                    '*' | '·' => Token::Star,
                    '/' => Token::Slash,
                    '(' => Token::LParen,
                    ')' => Token::RParen,
                    '.' => {
                        return Err(err("decimal literals are not exact; use a fraction".into()))
                    }
                    other => return Err(err(format!("unexpected character {other:?}"))),
                });
            }
        }
    }
    Ok(out)
}

struct ExprParser<'s> {
    input: &'s str,
    tokens: Vec<Token>,
    pos: usize,
}

impl ExprParser<'_> {
    fn error(&self, reason: &str) -> Error {
        Error::Parse {
            input: self.input.to_string(),
            reason: format!("{reason} at token {}", self.pos),
        }
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn expr(&mut self) -> Result<GoldenScalar> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<GoldenScalar> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    acc = acc * self.factor()?;
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    acc = acc.checked_div(&rhs)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<GoldenScalar> {
        match self.peek().cloned() {
            Some(Token::Minus) => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(Token::Plus) => {
                self.pos += 1;
                self.factor()
            }
            Some(Token::Int(n)) => {
                self.pos += 1;
                Ok(GoldenScalar::new(
                    BigRational::from_integer(n),
                    BigRational::zero(),
                ))
            }
            Some(Token::Tau) => {
                self.pos += 1;
                Ok(GoldenScalar::tau())
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Token::RParen) {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(self.error("expected a number, tau or '('")),
        }
    }
}

/// Frequently used exact constants.
pub mod consts {
    use super::GoldenScalar;

    pub fn tau() -> GoldenScalar {
        GoldenScalar::tau()
    }

    /// `τ + 2 = √5·τ`.
    pub fn tau_plus_two() -> GoldenScalar {
        GoldenScalar::from_ints(2, 1)
    }

    /// `1/(τ + 2)`.
    pub fn inv_tau_plus_two() -> GoldenScalar {
        GoldenScalar::one() / tau_plus_two()
    }

    /// `τ³ = 2τ + 1`.
    pub fn tau_cubed() -> GoldenScalar {
        GoldenScalar::from_ints(1, 2)
    }

    pub fn half() -> GoldenScalar {
        GoldenScalar::from_ratios(1, 2, 0, 1)
    }
}
