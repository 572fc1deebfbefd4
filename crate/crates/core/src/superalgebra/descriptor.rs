//! Presentation descriptor files (TOML).
//!
//! ```toml
//! name = "dual"
//!
//! [[generator]]
//! name = "alpha"
//! parity = "odd"
//! rank = 0
//!
//! [[generator]]
//! name = "b"
//! parity = "even"
//! invertible = true
//! rank = 2
//!
//! [[rule]]
//! lhs = "c*b"
//! lambda = "(1)"
//! correction = "(-q^2 + 1)/(q)*delta*alpha"
//! ```
//!
//! Each rule reads `lhs = lambda * (lhs reversed) + correction`. Coefficients
//! use the `Q(q)` text form. Square rules for odd generators are implicit and
//! inverse-letter rules are derived on load.

use serde::{Deserialize, Serialize};

use crate::expr::{parse_expr, Expr, ExprKind};
use crate::qfield::QRational;

use super::presentation::{AlgebraPresentation, GeneratorSpec, Parity, PresentationBuilder};
use super::AlgebraError;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Descriptor {
    pub name: String,
    #[serde(rename = "generator")]
    pub generators: Vec<GeneratorEntry>,
    #[serde(rename = "rule", default)]
    pub rules: Vec<RuleEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorEntry {
    pub name: String,
    pub parity: ParityEntry,
    #[serde(default)]
    pub invertible: bool,
    pub rank: u32,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParityEntry {
    Even,
    Odd,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleEntry {
    pub lhs: String,
    pub lambda: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub correction: String,
}

type FreeTerm = (QRational, Vec<(String, i32)>);

fn bad(msg: impl Into<String>) -> AlgebraError {
    AlgebraError::Descriptor(msg.into())
}

/// Expands an expression in the free algebra, keeping word order and
/// collecting equal words.
fn flatten(e: &Expr) -> Result<Vec<FreeTerm>, AlgebraError> {
    let mut out: Vec<FreeTerm> = Vec::new();
    for (c, w) in flatten_raw(e)? {
        match out.iter_mut().find(|(_, v)| *v == w) {
            Some((acc, _)) => *acc = &*acc + &c,
            None => out.push((c, w)),
        }
    }
    out.retain(|(c, _)| !c.is_zero());
    Ok(out)
}

fn flatten_raw(e: &Expr) -> Result<Vec<FreeTerm>, AlgebraError> {
    Ok(match &e.kind {
        ExprKind::Int(_) => vec![(
            QRational::from_expr(e).map_err(|x| bad(x.to_string()))?,
            vec![],
        )],
        ExprKind::Ident(s) if s == "q" => vec![(QRational::q(), vec![])],
        ExprKind::Ident(s) => vec![(QRational::one(), vec![(s.clone(), 1)])],
        ExprKind::Neg(a) => flatten(a)?.into_iter().map(|(c, w)| (-c, w)).collect(),
        ExprKind::Add(a, b) => [flatten(a)?, flatten(b)?].concat(),
        ExprKind::Sub(a, b) => {
            let mut out = flatten(a)?;
            out.extend(flatten(b)?.into_iter().map(|(c, w)| (-c, w)));
            out
        }
        ExprKind::Mul(a, b) => {
            let (fa, fb) = (flatten(a)?, flatten(b)?);
            let mut out = Vec::new();
            for (ca, wa) in &fa {
                for (cb, wb) in &fb {
                    out.push((ca * cb, [wa.clone(), wb.clone()].concat()));
                }
            }
            out
        }
        ExprKind::Div(a, b) => {
            let d = QRational::from_expr(b)
                .map_err(|x| bad(format!("divisor must be a scalar: {x}")))?;
            let d = d.inv().map_err(|x| bad(x.to_string()))?;
            flatten(a)?.into_iter().map(|(c, w)| (c * &d, w)).collect()
        }
        ExprKind::Pow(a, k) => {
            let fa = flatten(a)?;
            match fa.as_slice() {
                [(c, w)] if w.is_empty() => {
                    vec![(c.pow(*k).map_err(|x| bad(x.to_string()))?, vec![])]
                }
                [(c, w)] if c.is_one() && w.len() == 1 => {
                    vec![(QRational::one(), vec![(w[0].0.clone(), w[0].1 * *k as i32)])]
                }
                _ if *k >= 0 => {
                    let mut acc = vec![(QRational::one(), vec![])];
                    for _ in 0..*k {
                        let mut next = Vec::new();
                        for (ca, wa) in &acc {
                            for (cb, wb) in &fa {
                                next.push((ca * cb, [wa.clone(), wb.clone()].concat()));
                            }
                        }
                        acc = next;
                    }
                    acc
                }
                _ => return Err(bad("negative power of a compound expression")),
            }
        }
    })
}

impl Descriptor {
    pub fn from_toml(text: &str) -> Result<Self, AlgebraError> {
        toml::from_str(text).map_err(|e| bad(e.to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("descriptor serializes")
    }

    /// Builds the stated presentation (no derived rules).
    pub fn build(&self) -> Result<AlgebraPresentation, AlgebraError> {
        let mut b = PresentationBuilder::new(self.name.clone());
        for g in &self.generators {
            b = b.generator_spec(GeneratorSpec {
                name: g.name.clone(),
                parity: match g.parity {
                    ParityEntry::Even => Parity::Even,
                    ParityEntry::Odd => Parity::Odd,
                },
                invertible: g.invertible,
                rank: g.rank,
            });
        }
        for r in &self.rules {
            let ctx = |e: AlgebraError| bad(format!("rule `{}`: {e}", r.lhs));
            let lhs = flatten(&parse_expr(&r.lhs).map_err(|e| ctx(bad(e.to_string())))?)?;
            let (left, right) = match lhs.as_slice() {
                [(c, w)] if c.is_one() && w.len() == 2 && w.iter().all(|(_, e)| *e == 1) => {
                    (w[0].0.clone(), w[1].0.clone())
                }
                _ => return Err(ctx(bad("lhs must be a product of two generators"))),
            };
            let lambda: QRational = r
                .lambda
                .parse()
                .map_err(|e: crate::qfield::QFieldError| ctx(bad(e.to_string())))?;
            let correction = if r.correction.trim().is_empty() {
                Vec::new()
            } else {
                flatten(&parse_expr(&r.correction).map_err(|e| ctx(bad(e.to_string())))?)?
            };
            let borrowed: Vec<(QRational, Vec<(&str, i32)>)> = correction
                .iter()
                .map(|(c, w)| (c.clone(), w.iter().map(|(n, e)| (n.as_str(), *e)).collect()))
                .collect();
            let refs: Vec<(QRational, &[(&str, i32)])> = borrowed
                .iter()
                .map(|(c, w)| (c.clone(), w.as_slice()))
                .collect();
            b = b.rule(&left, &right, lambda, &refs);
        }
        b.build()
    }

    /// Stated (non-derived) rules of `p` as a descriptor.
    pub fn from_presentation(p: &AlgebraPresentation) -> Self {
        let generators = p
            .generators()
            .iter()
            .map(|g| GeneratorEntry {
                name: g.name.clone(),
                parity: match g.parity {
                    Parity::Even => ParityEntry::Even,
                    Parity::Odd => ParityEntry::Odd,
                },
                invertible: g.invertible,
                rank: g.rank,
            })
            .collect();
        let rules = p
            .rules()
            .filter(|r| !r.derived)
            .map(|r| RuleEntry {
                lhs: format!("{}*{}", p.letter_name(r.left), p.letter_name(r.right)),
                lambda: r.lambda.to_string(),
                correction: r
                    .correction
                    .iter()
                    .enumerate()
                    .map(|(i, (c, w))| {
                        let word: Vec<String> = w.iter().map(|l| p.letter_name(*l)).collect();
                        let sep = if i == 0 { "" } else { " + " };
                        format!("{sep}{c}*{}", word.join("*"))
                    })
                    .collect(),
            })
            .collect();
        Descriptor {
            name: p.name().to_string(),
            generators,
            rules,
        }
    }
}

/// Loads a descriptor file's text and derives the inverse-letter rules.
pub fn load_presentation(text: &str) -> Result<AlgebraPresentation, AlgebraError> {
    Ok(Descriptor::from_toml(text)?.build()?.derive_inverse_rules())
}
