//! The rewriting engine.
//!
//! Elements are kept as sums of normal-ordered monomials. Multiplying a
//! monomial on the right by one letter walks the letter leftwards: if the
//! monomial ends in a higher-ranked letter `y`, the rule
//! `y x = l x y + C` turns `m' y x` into `l (m' x) y + m' C`, and both pieces
//! are reduced recursively. Equal neighbours merge on the spot: `g g^-1`
//! cancels and an odd square vanishes.

use std::collections::BTreeMap;

use crate::qfield::QRational;

use super::monomial::Monomial;
use super::presentation::{AlgebraPresentation, Letter, Parity};
use super::AlgebraError;

pub(crate) type Terms = BTreeMap<Monomial, QRational>;

pub(crate) fn add_term(terms: &mut Terms, m: Monomial, c: QRational) {
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let sum = o.get() + &c;
            if sum.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = sum;
            }
        }
    }
}

fn add_scaled(acc: &mut Terms, terms: Terms, scale: &QRational) {
    for (m, c) in terms {
        add_term(acc, m, &c * scale);
    }
}

/// `m * x` in normal form.
pub(crate) fn monomial_times_letter(
    p: &AlgebraPresentation,
    m: &Monomial,
    x: Letter,
) -> Result<Terms, AlgebraError> {
    let spec = p.generator(x.gen);
    if x.inverse && !spec.invertible {
        return Err(AlgebraError::NegativeExponent(spec.name.clone()));
    }
    let mut out = Terms::new();
    match m.last_gen() {
        Some(k) if k > x.gen => {
            let e = m.exponents()[k];
            let y = Letter {
                gen: k,
                inverse: e < 0,
            };
            let rule = p.rule(y, x).ok_or_else(|| AlgebraError::MissingRule {
                left: p.letter_name(y),
                right: p.letter_name(x),
            })?;
            let mut rest = m.clone();
            rest.exponents_mut()[k] -= y.exponent();
            // l * (m' x) y
            let moved = monomial_times_letter(p, &rest, x)?;
            let moved = terms_times_letter(p, &moved, y)?;
            add_scaled(&mut out, moved, &rule.lambda);
            // m' C
            for (c, w) in &rule.correction {
                let single = Terms::from([(rest.clone(), QRational::one())]);
                add_scaled(&mut out, terms_times_word(p, &single, w)?, c);
            }
        }
        Some(k) if k == x.gen => {
            if spec.parity == Parity::Odd {
                return Ok(out);
            }
            let mut next = m.clone();
            next.exponents_mut()[k] += x.exponent();
            out.insert(next, QRational::one());
        }
        _ => {
            let mut next = m.clone();
            next.exponents_mut()[x.gen] = x.exponent();
            out.insert(next, QRational::one());
        }
    }
    Ok(out)
}

pub(crate) fn terms_times_letter(
    p: &AlgebraPresentation,
    terms: &Terms,
    x: Letter,
) -> Result<Terms, AlgebraError> {
    let mut out = Terms::new();
    for (m, c) in terms {
        add_scaled(&mut out, monomial_times_letter(p, m, x)?, c);
    }
    Ok(out)
}

pub(crate) fn terms_times_word(
    p: &AlgebraPresentation,
    terms: &Terms,
    word: &[Letter],
) -> Result<Terms, AlgebraError> {
    let mut acc = terms.clone();
    for &x in word {
        if acc.is_empty() {
            break;
        }
        acc = terms_times_letter(p, &acc, x)?;
    }
    Ok(acc)
}

/// Product of two normal-form sums.
pub(crate) fn terms_times_terms(
    p: &AlgebraPresentation,
    lhs: &Terms,
    rhs: &Terms,
) -> Result<Terms, AlgebraError> {
    let mut out = Terms::new();
    for (m, c) in rhs {
        add_scaled(&mut out, terms_times_word(p, lhs, &m.letters())?, c);
    }
    Ok(out)
}
