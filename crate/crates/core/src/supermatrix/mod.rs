//! 2x2 supermatrices with entries in a presented algebra.
//!
//! Products are plain row-by-column with entries multiplied left to right;
//! every sign lives in the entry algebra.

mod patterns;

use std::fmt;

use crate::qfield::{qnum, QRational};
use crate::superalgebra::{Algebra, AlgebraError, Element, Parity, RenderStyle};

pub use patterns::{
    check_dual_pattern, check_gl_pattern, transform_plane, BracketOrdering, CheckOutcome,
    PlaneKind, Relation,
};

/// Parity pattern of the entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    /// Even diagonal, odd off-diagonal.
    Gl,
    /// Odd diagonal, even off-diagonal.
    Dual,
    Untagged,
}

impl Format {
    fn entry_parity(self, i: usize, j: usize) -> Option<Parity> {
        match self {
            Format::Gl => Some(if i == j { Parity::Even } else { Parity::Odd }),
            Format::Dual => Some(if i == j { Parity::Odd } else { Parity::Even }),
            Format::Untagged => None,
        }
    }

    fn product(self, other: Format) -> Format {
        match (self, other) {
            (Format::Untagged, _) | (_, Format::Untagged) => Format::Untagged,
            (a, b) if a == b => Format::Gl,
            _ => Format::Dual,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuperMatrix {
    e: [[Element; 2]; 2],
    format: Format,
}

/// Entrywise; the format tag is bookkeeping and does not take part.
impl PartialEq for SuperMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.e == other.e
    }
}

impl Eq for SuperMatrix {}

impl SuperMatrix {
    /// Builds a matrix, checking that the entries share an algebra and match
    /// the format's parity pattern where homogeneous.
    pub fn new(
        e11: Element,
        e12: Element,
        e21: Element,
        e22: Element,
        format: Format,
    ) -> Result<Self, AlgebraError> {
        for x in [&e12, &e21, &e22] {
            e11.check_same(x)?;
        }
        let e = [[e11, e12], [e21, e22]];
        for (i, row) in e.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if let (Some(want), Some(got)) = (format.entry_parity(i, j), x.parity()) {
                    if want != got {
                        return Err(AlgebraError::InvalidPresentation(format!(
                            "entry ({}, {}) has parity {got:?}, format {format:?} needs {want:?}",
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
        }
        Ok(SuperMatrix { e, format })
    }

    pub fn identity(alg: &Algebra) -> Self {
        let (one, zero) = (Element::one(alg), Element::zero(alg));
        SuperMatrix {
            e: [[one.clone(), zero.clone()], [zero, one]],
            format: Format::Gl,
        }
    }

    /// `[[alpha, b], [c, delta]]`, names taking an optional suffix such as `2`.
    pub fn dual_generic(alg: &Algebra, suffix: &str) -> Result<Self, AlgebraError> {
        let g = |n: &str| Element::generator(alg, &format!("{n}{suffix}"));
        SuperMatrix::new(g("alpha")?, g("b")?, g("c")?, g("delta")?, Format::Dual)
    }

    /// `[[a, beta], [gamma, d]]`.
    pub fn gl_generic(alg: &Algebra, suffix: &str) -> Result<Self, AlgebraError> {
        let g = |n: &str| Element::generator(alg, &format!("{n}{suffix}"));
        SuperMatrix::new(g("a")?, g("beta")?, g("gamma")?, g("d")?, Format::Gl)
    }

    pub fn algebra(&self) -> &Algebra {
        self.e[0][0].algebra()
    }

    pub fn format(&self) -> Format {
        self.format
    }

    /// Entry `(i, j)`, zero-based.
    pub fn entry(&self, i: usize, j: usize) -> &Element {
        &self.e[i][j]
    }

    pub fn a(&self) -> &Element {
        &self.e[0][0]
    }

    pub fn b(&self) -> &Element {
        &self.e[0][1]
    }

    pub fn c(&self) -> &Element {
        &self.e[1][0]
    }

    pub fn d(&self) -> &Element {
        &self.e[1][1]
    }

    pub fn entries(&self) -> impl Iterator<Item = &Element> {
        self.e.iter().flatten()
    }

    pub fn matmul(&self, rhs: &SuperMatrix) -> Result<SuperMatrix, AlgebraError> {
        let cell = |i: usize, j: usize| -> Result<Element, AlgebraError> {
            self.e[i][0]
                .try_mul(&rhs.e[0][j])?
                .try_add(&self.e[i][1].try_mul(&rhs.e[1][j])?)
        };
        Ok(SuperMatrix {
            e: [[cell(0, 0)?, cell(0, 1)?], [cell(1, 0)?, cell(1, 1)?]],
            format: self.format.product(rhs.format),
        })
    }

    /// `self^n` by repeated right multiplication; `n = 0` gives the identity.
    pub fn power(&self, n: u32) -> Result<SuperMatrix, AlgebraError> {
        let mut acc = self.clone();
        if n == 0 {
            return Ok(SuperMatrix::identity(self.algebra()));
        }
        for _ in 1..n {
            acc = acc.matmul(self)?;
        }
        Ok(acc)
    }

    /// All powers `self^1 ..= self^n`.
    pub fn powers(&self, n: u32) -> Result<Vec<SuperMatrix>, AlgebraError> {
        let mut out = Vec::with_capacity(n as usize);
        let mut acc = self.clone();
        for k in 1..=n {
            if k > 1 {
                acc = acc.matmul(self)?;
            }
            out.push(acc.clone());
        }
        Ok(out)
    }

    pub fn map(
        &self,
        f: impl Fn(&Element) -> Result<Element, AlgebraError>,
    ) -> Result<SuperMatrix, AlgebraError> {
        Ok(SuperMatrix {
            e: [
                [f(&self.e[0][0])?, f(&self.e[0][1])?],
                [f(&self.e[1][0])?, f(&self.e[1][1])?],
            ],
            format: self.format,
        })
    }

    /// Entrywise difference, untagged.
    pub fn difference(&self, other: &SuperMatrix) -> Result<SuperMatrix, AlgebraError> {
        let d = |i: usize, j: usize| self.e[i][j].try_sub(&other.e[i][j]);
        Ok(SuperMatrix {
            e: [[d(0, 0)?, d(0, 1)?], [d(1, 0)?, d(1, 1)?]],
            format: Format::Untagged,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.e[0][0].is_one()
            && self.e[1][1].is_one()
            && self.e[0][1].is_zero()
            && self.e[1][0].is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.entries().all(Element::is_zero)
    }

    pub fn render(&self, style: RenderStyle) -> String {
        let mut out = String::new();
        for (i, row) in self.e.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if !out.is_empty() {
                    out.push('\n');
                }
                out.push_str(&format!("e{}{} = {}", i + 1, j + 1, x.render(style)));
            }
        }
        out
    }

    /// `Delta_1 = B C - q D A`.
    pub fn delta1(&self) -> Result<Element, AlgebraError> {
        let q = QRational::q();
        self.b()
            .try_mul(self.c())?
            .try_sub(&self.d().try_mul(self.a())?.scale(&q))
    }

    /// `Delta_2 = C B - q A D`.
    pub fn delta2(&self) -> Result<Element, AlgebraError> {
        let q = QRational::q();
        self.c()
            .try_mul(self.b())?
            .try_sub(&self.a().try_mul(self.d())?.scale(&q))
    }

    /// `[[-q D1^-1 D, D1^-1 B], [D2^-1 C, -q D2^-1 A]]`.
    pub fn left_inverse(&self) -> Result<SuperMatrix, AlgebraError> {
        let mq = -QRational::q();
        let d1 = self.delta1()?.invert_quasi_unit()?;
        let d2 = self.delta2()?.invert_quasi_unit()?;
        Ok(SuperMatrix {
            e: [
                [d1.try_mul(self.d())?.scale(&mq), d1.try_mul(self.b())?],
                [d2.try_mul(self.c())?, d2.try_mul(self.a())?.scale(&mq)],
            ],
            format: Format::Dual,
        })
    }

    /// The factors `L U` with `L = [[A, B - A C^-1 D], [C, 0]]` and
    /// `U = [[1, C^-1 D], [0, 1]]`.
    pub fn decomposition(&self) -> Result<(SuperMatrix, SuperMatrix), AlgebraError> {
        let alg = self.algebra();
        let c_inv = self.c().invert_quasi_unit()?;
        let c_inv_d = c_inv.try_mul(self.d())?;
        let lower = SuperMatrix {
            e: [
                [
                    self.a().clone(),
                    self.b().try_sub(&self.a().try_mul(&c_inv_d)?)?,
                ],
                [self.c().clone(), Element::zero(alg)],
            ],
            format: Format::Untagged,
        };
        let upper = SuperMatrix {
            e: [
                [Element::one(alg), c_inv_d],
                [Element::zero(alg), Element::one(alg)],
            ],
            format: Format::Untagged,
        };
        Ok((lower, upper))
    }

    /// `U^-1 L^-1` from [`decomposition`](Self::decomposition), with
    /// `L^-1 = [[0, C^-1], [E^-1, -E^-1 A C^-1]]`, `E = B - A C^-1 D`.
    pub fn inverse_via_decomposition(&self) -> Result<SuperMatrix, AlgebraError> {
        let alg = self.algebra();
        let (lower, upper) = self.decomposition()?;
        let c_inv = self.c().invert_quasi_unit()?;
        let e_inv = lower.b().invert_quasi_unit()?;
        let lower_inv = SuperMatrix {
            e: [
                [Element::zero(alg), c_inv.clone()],
                [e_inv.clone(), -e_inv.try_mul(self.a())?.try_mul(&c_inv)?],
            ],
            format: Format::Untagged,
        };
        let upper_inv = SuperMatrix {
            e: [
                [Element::one(alg), -upper.b().clone()],
                [Element::zero(alg), Element::one(alg)],
            ],
            format: Format::Untagged,
        };
        let mut inv = upper_inv.matmul(&lower_inv)?;
        inv.format = Format::Dual;
        Ok(inv)
    }

    /// `[[-C^-1 D C^-1, B^-1], [C^-1, -B^-1 A B^-1]] * diag(C^2 D2^-1, B^2 D1^-1)`.
    pub fn factorized_inverse(&self) -> Result<SuperMatrix, AlgebraError> {
        let alg = self.algebra();
        let b_inv = self.b().invert_quasi_unit()?;
        let c_inv = self.c().invert_quasi_unit()?;
        let left = SuperMatrix {
            e: [
                [-c_inv.try_mul(self.d())?.try_mul(&c_inv)?, b_inv.clone()],
                [c_inv.clone(), -b_inv.try_mul(self.a())?.try_mul(&b_inv)?],
            ],
            format: Format::Untagged,
        };
        let diag = SuperMatrix {
            e: [
                [self.sdet_second()?, Element::zero(alg)],
                [Element::zero(alg), self.sdet()?],
            ],
            format: Format::Untagged,
        };
        let mut inv = left.matmul(&diag)?;
        inv.format = Format::Dual;
        Ok(inv)
    }

    /// Dual superdeterminant `B^2 D1^-1`.
    pub fn sdet(&self) -> Result<Element, AlgebraError> {
        self.b()
            .pow(2)?
            .try_mul(&self.delta1()?.invert_quasi_unit()?)
    }

    /// The companion `C^2 D2^-1`.
    pub fn sdet_second(&self) -> Result<Element, AlgebraError> {
        self.c()
            .pow(2)?
            .try_mul(&self.delta2()?.invert_quasi_unit()?)
    }
}

impl fmt::Display for SuperMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(RenderStyle::Ascii))
    }
}

fn gen(alg: &Algebra, name: &str) -> Result<Element, AlgebraError> {
    Element::generator(alg, name)
}

/// Predicted `M^(2n-1)` for the generic dual matrix:
///
/// ```text
/// A = ([n] alpha + q [n-1] delta) (bc)^(n-1)
/// B = (bc + q [n-1]_{q^2} alpha delta) (bc)^(n-2) b
/// C = (cb + q [n-1]_{q^2} delta alpha) (cb)^(n-2) c
/// D = ([n] delta + q [n-1] alpha) (cb)^(n-1)
/// ```
///
/// At `n = 1` the factor `(bc)^-1` comes from quasi-unit inversion, so the
/// algebra needs inverse rules.
pub fn closed_form_odd(alg: &Algebra, n: u32) -> Result<SuperMatrix, AlgebraError> {
    assert!(n >= 1, "closed_form_odd needs n >= 1");
    let (alpha, delta, b, c) = (
        gen(alg, "alpha")?,
        gen(alg, "delta")?,
        gen(alg, "b")?,
        gen(alg, "c")?,
    );
    let q = QRational::q();
    let (nq, nq1, nq1sq) = (qnum(n, 1), qnum(n - 1, 1), qnum(n - 1, 2));
    let bc = b.try_mul(&c)?;
    let cb = c.try_mul(&b)?;
    let k = (n - 1) as i64;
    let a_ = alpha
        .scale(&nq)
        .try_add(&delta.scale(&(&q * &nq1)))?
        .try_mul(&bc.pow(k)?)?;
    let b_ = bc
        .try_add(&alpha.try_mul(&delta)?.scale(&(&q * &nq1sq)))?
        .try_mul(&bc.pow(k - 1)?)?
        .try_mul(&b)?;
    let c_ = cb
        .try_add(&delta.try_mul(&alpha)?.scale(&(&q * &nq1sq)))?
        .try_mul(&cb.pow(k - 1)?)?
        .try_mul(&c)?;
    let d_ = delta
        .scale(&nq)
        .try_add(&alpha.scale(&(&q * &nq1)))?
        .try_mul(&cb.pow(k)?)?;
    SuperMatrix::new(a_, b_, c_, d_, Format::Dual)
}

/// `q (1 - q^2)/(1 + q^2) [n] [n-1]`.
pub fn even_coefficient(n: u32) -> QRational {
    let q2 = QRational::q_pow(2);
    let frac = (QRational::one() - &q2) / (QRational::one() + &q2);
    QRational::q() * frac * qnum(n, 1) * qnum(n - 1, 1)
}

/// Predicted `M^(2n)` for the generic dual matrix, taken literally:
///
/// ```text
/// A = (bc + K alpha delta) (bc)^(n-1)
/// B = [n] (alpha + q delta) b (cb)^(n-1)
/// C = [n] (delta + q alpha) c (bc)^(n-1)
/// D = (bc + K delta alpha) (cb)^(n-1)
/// ```
///
/// with `K` from [`even_coefficient`].
pub fn closed_form_even(alg: &Algebra, n: u32) -> Result<SuperMatrix, AlgebraError> {
    even_form(alg, n, false)
}

/// [`closed_form_even`] with the leading `bc` of `D` replaced by `cb`.
pub fn closed_form_even_cb(alg: &Algebra, n: u32) -> Result<SuperMatrix, AlgebraError> {
    even_form(alg, n, true)
}

fn even_form(alg: &Algebra, n: u32, d_leads_with_cb: bool) -> Result<SuperMatrix, AlgebraError> {
    assert!(n >= 1, "closed_form_even needs n >= 1");
    let (alpha, delta, b, c) = (
        gen(alg, "alpha")?,
        gen(alg, "delta")?,
        gen(alg, "b")?,
        gen(alg, "c")?,
    );
    let q = QRational::q();
    let nq = qnum(n, 1);
    let k = even_coefficient(n);
    let bc = b.try_mul(&c)?;
    let cb = c.try_mul(&b)?;
    let e = (n - 1) as i64;
    let a_ = bc
        .try_add(&alpha.try_mul(&delta)?.scale(&k))?
        .try_mul(&bc.pow(e)?)?;
    let b_ = alpha
        .try_add(&delta.scale(&q))?
        .try_mul(&b)?
        .try_mul(&cb.pow(e)?)?
        .scale(&nq);
    let c_ = delta
        .try_add(&alpha.scale(&q))?
        .try_mul(&c)?
        .try_mul(&bc.pow(e)?)?
        .scale(&nq);
    let lead = if d_leads_with_cb { &cb } else { &bc };
    let d_ = lead
        .try_add(&delta.try_mul(&alpha)?.scale(&k))?
        .try_mul(&cb.pow(e)?)?;
    SuperMatrix::new(a_, b_, c_, d_, Format::Gl)
}

#[cfg(test)]
mod tests;
