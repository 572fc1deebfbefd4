use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::qfield::{superscript, QRational};

use super::monomial::Monomial;
use super::normal::{add_term, terms_times_terms, terms_times_word, Terms};
use super::presentation::{AlgebraPresentation, Parity};
use super::AlgebraError;

/// Shared handle to a presentation. Elements keep one so that mixing
/// algebras is detected.
pub type Algebra = Arc<AlgebraPresentation>;

pub(crate) fn same_algebra(a: &Algebra, b: &Algebra) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Finite linear combination of normal-ordered monomials.
#[derive(Clone)]
pub struct Element {
    alg: Algebra,
    terms: Terms,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.alg, &other.alg) && self.terms == other.terms
    }
}

impl Eq for Element {}

/// How generator names and coefficients are printed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RenderStyle {
    /// Parseable ASCII, e.g. `b*c + (q)*alpha*delta`.
    #[default]
    Ascii,
    Unicode,
    /// LaTeX math mode, no delimiters.
    Latex,
}

impl Element {
    pub fn zero(alg: &Algebra) -> Self {
        Element {
            alg: alg.clone(),
            terms: Terms::new(),
        }
    }

    pub fn one(alg: &Algebra) -> Self {
        Element::scalar(alg, QRational::one())
    }

    pub fn scalar(alg: &Algebra, c: QRational) -> Self {
        let mut terms = Terms::new();
        add_term(&mut terms, Monomial::one(alg.len()), c);
        Element {
            alg: alg.clone(),
            terms,
        }
    }

    /// A single generator by name.
    pub fn generator(alg: &Algebra, name: &str) -> Result<Self, AlgebraError> {
        let g = alg.index_of(name)?;
        normal_form(alg, &[(g, 1)], QRational::one())
    }

    /// Normal form of `coeff * g_1^{e_1} ... g_k^{e_k}` with generators given
    /// by name.
    pub fn word(
        alg: &Algebra,
        word: &[(&str, i32)],
        coeff: QRational,
    ) -> Result<Self, AlgebraError> {
        let idx = word
            .iter()
            .map(|(n, e)| Ok((alg.index_of(n)?, *e)))
            .collect::<Result<Vec<_>, AlgebraError>>()?;
        normal_form(alg, &idx, coeff)
    }

    pub(crate) fn from_terms(alg: &Algebra, terms: Terms) -> Self {
        Element {
            alg: alg.clone(),
            terms,
        }
    }

    pub fn from_monomial(alg: &Algebra, m: Monomial, c: QRational) -> Self {
        let mut terms = Terms::new();
        add_term(&mut terms, m, c);
        Element {
            alg: alg.clone(),
            terms,
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &QRational)> {
        self.terms.iter()
    }

    /// Number of terms; `is_zero` is the emptiness test.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn coefficient(&self, m: &Monomial) -> QRational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Scalar value, if the element is a multiple of 1.
    pub fn as_scalar(&self) -> Option<QRational> {
        match self.terms.len() {
            0 => Some(QRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Grading of a homogeneous element; `None` for zero or mixed parity.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(|m| m.parity(&self.alg));
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    pub(crate) fn check_same(&self, other: &Element) -> Result<(), AlgebraError> {
        if same_algebra(&self.alg, &other.alg) {
            Ok(())
        } else {
            Err(AlgebraError::AlgebraMismatch {
                left: self.alg.name().to_string(),
                right: other.alg.name().to_string(),
            })
        }
    }

    pub fn try_add(&self, other: &Element) -> Result<Element, AlgebraError> {
        self.check_same(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_term(&mut terms, m.clone(), c.clone());
        }
        Ok(Element {
            alg: self.alg.clone(),
            terms,
        })
    }

    pub fn try_sub(&self, other: &Element) -> Result<Element, AlgebraError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Element) -> Result<Element, AlgebraError> {
        self.check_same(other)?;
        let terms = terms_times_terms(&self.alg, &self.terms, &other.terms)?;
        Ok(Element {
            alg: self.alg.clone(),
            terms,
        })
    }

    pub fn scale(&self, c: &QRational) -> Element {
        if c.is_zero() {
            return Element::zero(&self.alg);
        }
        let terms = self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect();
        Element {
            alg: self.alg.clone(),
            terms,
        }
    }

    /// `x^n`; negative powers go through [`invert_quasi_unit`](Self::invert_quasi_unit).
    pub fn pow(&self, n: i64) -> Result<Element, AlgebraError> {
        let base = if n < 0 {
            self.invert_quasi_unit()?
        } else {
            self.clone()
        };
        let mut acc = Element::one(&self.alg);
        for _ in 0..n.unsigned_abs() {
            acc = acc.try_mul(&base)?;
        }
        Ok(acc)
    }

    /// Inverse of `u + v`, where `u` is a nonzero multiple of a monomial in
    /// invertible generators and every term of `v` contains an odd generator.
    /// The series `u^-1 - u^-1 v u^-1 + ...` stops once a term vanishes.
    pub fn invert_quasi_unit(&self) -> Result<Element, AlgebraError> {
        let alg = &self.alg;
        let not_quasi = |why: &str| Err(AlgebraError::NotQuasiUnit(format!("{self}: {why}")));
        let mut unit = None;
        let mut nilpotent = Terms::new();
        for (m, c) in &self.terms {
            if m.odd_degree(alg) == 0 {
                if unit.is_some() {
                    return not_quasi("even part is not a single monomial");
                }
                unit = Some((m.clone(), c.clone()));
            } else {
                nilpotent.insert(m.clone(), c.clone());
            }
        }
        let Some((um, uc)) = unit else {
            return not_quasi("no even part");
        };
        if !um.is_invertible(alg) {
            return not_quasi("even part contains a non-invertible generator");
        }
        let uc_inv = uc.inv().expect("stored coefficients are nonzero");
        let u_inv = normal_form(alg, &um.inverse_word(), uc_inv)?;
        let step = u_inv
            .try_mul(&Element::from_terms(alg, nilpotent))?
            .scale(&QRational::from_integer(-1));
        let mut term = u_inv.clone();
        let mut total = u_inv;
        for _ in 0..=alg.odd_count() {
            term = step.try_mul(&term)?;
            if term.is_zero() {
                return Ok(total);
            }
            total = total.try_add(&term)?;
        }
        not_quasi("odd part is not nilpotent")
    }

    /// `x y - s y x`.
    pub fn twisted_commutator(
        &self,
        other: &Element,
        s: &QRational,
    ) -> Result<Element, AlgebraError> {
        self.try_mul(other)?.try_sub(&other.try_mul(self)?.scale(s))
    }

    /// True when `x g = g x` for every `g` in `against`.
    pub fn is_central(&self, against: &[Element]) -> Result<bool, AlgebraError> {
        for g in against {
            if !self.twisted_commutator(g, &QRational::one())?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn render(&self, style: RenderStyle) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let mag = if negative { -c } else { c.clone() };
            match (i, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let mono = render_monomial(&self.alg, m, style);
            let coeff = match style {
                RenderStyle::Ascii => mag.to_string(),
                RenderStyle::Unicode => mag.to_unicode(),
                RenderStyle::Latex => {
                    let s = mag.to_latex();
                    if mag.denominator().is_one() && mag.numerator().term_count() > 1 {
                        format!("\\left({s}\\right)")
                    } else {
                        s
                    }
                }
            };
            let sep = match style {
                RenderStyle::Ascii => "*",
                RenderStyle::Unicode => "·",
                RenderStyle::Latex => " ",
            };
            match (mag.is_one(), m.is_one()) {
                (true, true) => out.push('1'),
                (true, false) => out.push_str(&mono),
                (false, true) => out.push_str(&coeff),
                (false, false) => {
                    out.push_str(&coeff);
                    out.push_str(sep);
                    out.push_str(&mono);
                }
            }
        }
        out
    }
}

fn greek(name: &str) -> Option<(char, &'static str)> {
    Some(match name {
        "alpha" => ('α', "\\alpha"),
        "beta" => ('β', "\\beta"),
        "gamma" => ('γ', "\\gamma"),
        "delta" => ('δ', "\\delta"),
        "xi" => ('ξ', "\\xi"),
        "eta" => ('η', "\\eta"),
        _ => return None,
    })
}

fn render_name(name: &str, style: RenderStyle) -> String {
    if style == RenderStyle::Ascii {
        return name.to_string();
    }
    let base = name.trim_end_matches(|c: char| c.is_ascii_digit());
    let suffix = &name[base.len()..];
    let head = match (greek(base), style) {
        (Some((u, _)), RenderStyle::Unicode) => u.to_string(),
        (Some((_, l)), _) => l.to_string(),
        (None, _) => base.to_string(),
    };
    if suffix.is_empty() {
        return head;
    }
    match style {
        RenderStyle::Unicode => {
            let sub: String = suffix
                .chars()
                .map(|d| char::from_u32(0x2080 + d.to_digit(10).unwrap()).unwrap())
                .collect();
            format!("{head}{sub}")
        }
        _ => format!("{head}_{{{suffix}}}"),
    }
}

fn render_monomial(p: &AlgebraPresentation, m: &Monomial, style: RenderStyle) -> String {
    let mut parts = Vec::new();
    for (g, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        let name = render_name(&p.generator(g).name, style);
        parts.push(match (e, style) {
            (1, _) => name,
            (_, RenderStyle::Ascii) => format!("{name}^{e}"),
            (_, RenderStyle::Unicode) => format!("{name}{}", superscript(e as i64)),
            (_, RenderStyle::Latex) => format!("{name}^{{{e}}}"),
        });
    }
    let sep = match style {
        RenderStyle::Ascii => "*",
        RenderStyle::Unicode => "",
        RenderStyle::Latex => " ",
    };
    parts.join(sep)
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Element[{}]({})",
            self.alg.name(),
            self.render(RenderStyle::Ascii)
        )
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(RenderStyle::Ascii))
    }
}

/// Normal form of `coeff * g_1^{e_1} ... g_k^{e_k}`, generators by index.
pub fn normal_form(
    alg: &Algebra,
    word: &[(usize, i32)],
    coeff: QRational,
) -> Result<Element, AlgebraError> {
    let mut letters = Vec::new();
    for &(g, e) in word {
        if g >= alg.len() {
            return Err(AlgebraError::UnknownGenerator(format!("#{g}")));
        }
        letters.extend(alg.letters_for(g, e)?);
    }
    let mut start = Terms::new();
    add_term(&mut start, Monomial::one(alg.len()), coeff);
    Ok(Element::from_terms(
        alg,
        terms_times_word(alg, &start, &letters)?,
    ))
}

impl<'a> Add<&'a Element> for &'a Element {
    type Output = Element;
    /// Panics if the operands live in different algebras.
    fn add(self, rhs: &Element) -> Element {
        self.try_add(rhs).expect("element addition")
    }
}

impl<'a> Sub<&'a Element> for &'a Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self.try_sub(rhs).expect("element subtraction")
    }
}

impl<'a> Mul<&'a Element> for &'a Element {
    type Output = Element;
    /// Panics on algebra mismatch or an incomplete presentation.
    fn mul(self, rhs: &Element) -> Element {
        self.try_mul(rhs).expect("element multiplication")
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        Element {
            alg: self.alg.clone(),
            terms,
        }
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Element> for Element {
            type Output = Element;
            fn $m(self, rhs: Element) -> Element { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Element> for Element {
            type Output = Element;
            fn $m(self, rhs: &Element) -> Element { (&self).$m(rhs) }
        }
        impl<'a> $tr<Element> for &'a Element {
            type Output = Element;
            fn $m(self, rhs: Element) -> Element { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);
