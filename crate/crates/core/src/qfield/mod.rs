//! Exact arithmetic in the field of rational functions of the deformation
//! parameter `q`.
//!
//! Every value is kept as a reduced fraction `num / den` of polynomials with
//! arbitrary-precision rational coefficients, with a monic denominator. Two
//! equal rational functions therefore have identical representations, so the
//! derived `PartialEq` is mathematical equality.

mod poly;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::expr::{parse_expr, Expr, ExprKind, SyntaxError};

pub use poly::Poly;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum QFieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at q = {0}")]
    Pole(BigRational),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("`{0}` is not a scalar (only `q` and numbers are allowed)")]
    NotScalar(String),
}

/// A rational function of `q`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QRational {
    num: Poly,
    den: Poly,
}

impl QRational {
    /// Builds `num / den` in canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<Self, QFieldError> {
        if den.is_zero() {
            return Err(QFieldError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return QRational::zero();
        }
        let (num, den) = if den.degree() == Some(0) {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_rem(&g).0, den.div_rem(&g).0)
            }
        };
        let lead = den.leading().expect("nonzero denominator").clone();
        if lead.is_one() {
            QRational { num, den }
        } else {
            let s = lead.recip();
            QRational {
                num: num.scale(&s),
                den: den.scale(&s),
            }
        }
    }

    pub fn zero() -> Self {
        QRational {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        QRational {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    /// The deformation parameter itself.
    pub fn q() -> Self {
        QRational::q_pow(1)
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i64) -> Self {
        let mono = Poly::monomial(BigRational::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            QRational {
                num: mono,
                den: Poly::one(),
            }
        } else {
            QRational {
                num: Poly::one(),
                den: mono,
            }
        }
    }

    pub fn from_integer(n: i64) -> Self {
        QRational::constant(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn constant(c: BigRational) -> Self {
        if c.is_zero() {
            return QRational::zero();
        }
        QRational {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        QRational {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Constant value, if this does not depend on `q`.
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.den.is_one() && self.num.degree().unwrap_or(0) == 0 {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    /// `Some(k)` when the value is exactly `q^k`.
    pub fn as_q_power(&self) -> Option<i64> {
        let is_unit_mono = |p: &Poly| p.term_count() == 1 && p.leading().is_some_and(One::is_one);
        if !is_unit_mono(&self.num) || !is_unit_mono(&self.den) {
            return None;
        }
        Some(self.num.degree()? as i64 - self.den.degree()? as i64)
    }

    /// Sign of the numerator's leading coefficient; used when printing sums.
    pub fn is_negative(&self) -> bool {
        self.num.leading().is_some_and(Signed::is_negative)
    }

    pub fn inv(&self) -> Result<Self, QFieldError> {
        if self.is_zero() {
            return Err(QFieldError::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, QFieldError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self, QFieldError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = u32::try_from(e.unsigned_abs()).expect("exponent fits in u32");
        Ok(QRational {
            num: base.num.pow(k),
            den: base.den.pow(k),
        })
    }

    /// Exact evaluation at `q = v`.
    pub fn eval_at(&self, v: &BigRational) -> Result<BigRational, QFieldError> {
        let d = self.den.eval(v);
        if d.is_zero() {
            return Err(QFieldError::Pole(v.clone()));
        }
        Ok(self.num.eval(v) / d)
    }

    /// Renders in LaTeX math mode.
    pub fn to_latex(&self) -> String {
        let num = latex_poly(&self.num);
        if self.den.is_one() {
            num
        } else {
            format!("\\frac{{{num}}}{{{}}}", latex_poly(&self.den))
        }
    }

    /// Renders with Unicode superscripts, e.g. `(q² - 1)/(q)`.
    pub fn to_unicode(&self) -> String {
        let num = unicode_poly(&self.num);
        if self.den.is_one() {
            format!("({num})")
        } else {
            format!("({num})/({})", unicode_poly(&self.den))
        }
    }

    /// Evaluates a parsed scalar expression, with `q` the only identifier.
    pub fn from_expr(e: &Expr) -> Result<Self, QFieldError> {
        Ok(match &e.kind {
            ExprKind::Int(n) => QRational::constant(BigRational::from_integer(n.clone())),
            ExprKind::Ident(s) if s == "q" => QRational::q(),
            ExprKind::Ident(s) => return Err(QFieldError::NotScalar(s.clone())),
            ExprKind::Neg(a) => -QRational::from_expr(a)?,
            ExprKind::Add(a, b) => QRational::from_expr(a)? + QRational::from_expr(b)?,
            ExprKind::Sub(a, b) => QRational::from_expr(a)? - QRational::from_expr(b)?,
            ExprKind::Mul(a, b) => QRational::from_expr(a)? * QRational::from_expr(b)?,
            ExprKind::Div(a, b) => {
                QRational::from_expr(a)?.checked_div(&QRational::from_expr(b)?)?
            }
            ExprKind::Pow(a, k) => QRational::from_expr(a)?.pow(*k)?,
        })
    }
}

fn latex_poly(p: &Poly) -> String {
    let s = p.to_string();
    // q^12 -> q^{12}, 1/2*q -> \tfrac{1}{2} q
    let mut out = String::new();
    for term in s.split(' ') {
        if !out.is_empty() {
            out.push(' ');
        }
        let term = term.replace('*', " ");
        let term = match term.split_once('^') {
            Some((b, e)) => format!("{b}^{{{e}}}"),
            None => term,
        };
        let term = match term.split_once('/') {
            Some((n, rest)) => {
                let (d, tail) = rest.split_once(' ').map_or((rest, ""), |(d, t)| (d, t));
                let sep = if tail.is_empty() { "" } else { " " };
                format!("\\tfrac{{{n}}}{{{d}}}{sep}{tail}")
            }
            None => term,
        };
        out.push_str(&term);
    }
    out
}

pub(crate) fn superscript(n: i64) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    let mut s = String::new();
    if n < 0 {
        s.push('⁻');
    }
    for ch in n.unsigned_abs().to_string().chars() {
        s.push(DIGITS[ch.to_digit(10).unwrap() as usize]);
    }
    s
}

fn unicode_poly(p: &Poly) -> String {
    let s = p.to_string();
    let mut out = String::new();
    let mut chars = s.chars().peekable();
    while let Some(ch) = chars.next() {
        match ch {
            '^' => {
                let mut digits = String::new();
                while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    digits.push(*d);
                    chars.next();
                }
                out.push_str(&superscript(digits.parse().unwrap()));
            }
            '*' => out.push('·'),
            _ => out.push(ch),
        }
    }
    out
}

/// `[n]_{q^k} = (1 - q^{2kn}) / (1 - q^{2k})`.
///
/// The denominator always divides the numerator, so the result is the
/// polynomial `1 + q^{2k} + ... + q^{2k(n-1)}`.
pub fn qnum(n: u32, k: u32) -> QRational {
    assert!(k >= 1, "qnum base exponent must be at least 1");
    let one = Poly::one();
    let top = one.sub(&Poly::monomial(BigRational::one(), (2 * k * n) as usize));
    let bottom = one.sub(&Poly::monomial(BigRational::one(), (2 * k) as usize));
    QRational::new(top, bottom).expect("1 - q^2k is nonzero")
}

impl Default for QRational {
    fn default() -> Self {
        QRational::zero()
    }
}

impl From<i64> for QRational {
    fn from(n: i64) -> Self {
        QRational::from_integer(n)
    }
}

impl From<BigRational> for QRational {
    fn from(c: BigRational) -> Self {
        QRational::constant(c)
    }
}

impl FromStr for QRational {
    type Err = QFieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        QRational::from_expr(&parse_expr(s)?)
    }
}

/// Canonical text: `(<numerator>)/(<denominator>)`, or `(<numerator>)` when
/// the denominator is 1.
impl fmt::Display for QRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        self.num.write_terms(f, "q")?;
        f.write_str(")")?;
        if !self.den.is_one() {
            f.write_str("/(")?;
            self.den.write_terms(f, "q")?;
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl PartialOrd for QRational {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Structural order, only for deterministic sorting.
impl Ord for QRational {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.den
            .cmp_canonical(&other.den)
            .then_with(|| self.num.cmp_canonical(&other.num))
    }
}

impl<'a> Add<&'a QRational> for &'a QRational {
    type Output = QRational;
    fn add(self, rhs: &QRational) -> QRational {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return QRational::reduce(self.num.add(&rhs.num), self.den.clone());
        }
        QRational::reduce(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
}

impl<'a> Mul<&'a QRational> for &'a QRational {
    type Output = QRational;
    fn mul(self, rhs: &QRational) -> QRational {
        if self.is_zero() || rhs.is_zero() {
            return QRational::zero();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        QRational::reduce(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

impl Neg for &QRational {
    type Output = QRational;
    fn neg(self) -> QRational {
        QRational {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Neg for QRational {
    type Output = QRational;
    fn neg(self) -> QRational {
        -&self
    }
}

impl<'a> Sub<&'a QRational> for &'a QRational {
    type Output = QRational;
    fn sub(self, rhs: &QRational) -> QRational {
        self + &(-rhs)
    }
}

/// Panics on division by zero; use [`QRational::checked_div`] otherwise.
impl<'a> Div<&'a QRational> for &'a QRational {
    type Output = QRational;
    fn div(self, rhs: &QRational) -> QRational {
        self.checked_div(rhs).expect("division by zero in Q(q)")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<QRational> for QRational {
            type Output = QRational;
            fn $m(self, rhs: QRational) -> QRational { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a QRational> for QRational {
            type Output = QRational;
            fn $m(self, rhs: &QRational) -> QRational { (&self).$m(rhs) }
        }
        impl<'a> $tr<QRational> for &'a QRational {
            type Output = QRational;
            fn $m(self, rhs: QRational) -> QRational { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);
