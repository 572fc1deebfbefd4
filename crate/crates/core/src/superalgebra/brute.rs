//! Confluence oracle: rewrites words of letters by applying rules at
//! pseudo-randomly chosen words and positions until nothing applies. It shares
//! only the rule table with the main engine.
//!
//! Within a word, steps without correction terms (pure swaps, cancellations,
//! odd squares) are taken before steps that add corrections. Derived inverse
//! rules can have corrections with more even letters than their left-hand
//! side, so an unrestricted order need not terminate; with this priority the
//! odd letters a correction introduces reach the front and annihilate first.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::qfield::QRational;

use super::element::{Algebra, Element};
use super::monomial::Monomial;
use super::presentation::{AlgebraPresentation, Letter, Parity, Word};
use super::AlgebraError;

const STEP_LIMIT: usize = 2_000_000;

fn reducible_at(p: &AlgebraPresentation, w: &[Letter], i: usize) -> bool {
    let (a, b) = (w[i], w[i + 1]);
    if a.gen == b.gen {
        p.generator(a.gen).parity == Parity::Odd || a.inverse != b.inverse
    } else {
        a.gen > b.gen
    }
}

fn has_correction(p: &AlgebraPresentation, w: &[Letter], i: usize) -> bool {
    p.rule(w[i], w[i + 1])
        .is_some_and(|r| !r.correction.is_empty())
}

fn accumulate(state: &mut BTreeMap<Word, QRational>, w: Word, c: QRational) {
    if c.is_zero() {
        return;
    }
    let slot = state.entry(w.clone()).or_insert_with(QRational::zero);
    *slot = &*slot + &c;
    if slot.is_zero() {
        state.remove(&w);
    }
}

/// Reduces `coeff * word` by random-order rewriting driven by `seed`.
pub fn brute_force_nf(
    alg: &Algebra,
    word: &[(usize, i32)],
    coeff: QRational,
    seed: u64,
) -> Result<Element, AlgebraError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut letters = Vec::new();
    for &(g, e) in word {
        letters.extend(alg.letters_for(g, e)?);
    }
    let mut pending = BTreeMap::new();
    let mut done: BTreeMap<Word, QRational> = BTreeMap::new();
    accumulate(&mut pending, letters, coeff);
    for _ in 0..STEP_LIMIT {
        if pending.is_empty() {
            let mut out = Element::zero(alg);
            for (w, c) in done {
                let mut exps = vec![0; alg.len()];
                for l in &w {
                    exps[l.gen] += l.exponent();
                }
                out = out.try_add(&Element::from_monomial(
                    alg,
                    Monomial::from_exponents(exps),
                    c,
                ))?;
            }
            return Ok(out);
        }
        let pick = rng.gen_range(0..pending.len());
        let w: Word = pending.keys().nth(pick).expect("index in range").clone();
        let c = pending.remove(&w).expect("chosen word is present");
        let positions: Vec<usize> = (0..w.len().saturating_sub(1))
            .filter(|&i| reducible_at(alg, &w, i))
            .collect();
        let (free, correcting): (Vec<usize>, Vec<usize>) = positions
            .into_iter()
            .partition(|&i| !has_correction(alg, &w, i));
        let Some(&i) = free
            .choose(&mut rng)
            .or_else(|| correcting.choose(&mut rng))
        else {
            accumulate(&mut done, w, c);
            continue;
        };
        let (a, b) = (w[i], w[i + 1]);
        let (prefix, suffix) = (&w[..i], &w[i + 2..]);
        let splice =
            |mid: &[Letter]| -> Word { prefix.iter().chain(mid).chain(suffix).copied().collect() };
        if a.gen == b.gen {
            if a.inverse != b.inverse && alg.generator(a.gen).parity == Parity::Even {
                accumulate(&mut pending, splice(&[]), c);
            }
            // odd square: the word vanishes
            continue;
        }
        let rule = alg.rule(a, b).ok_or_else(|| AlgebraError::MissingRule {
            left: alg.letter_name(a),
            right: alg.letter_name(b),
        })?;
        accumulate(&mut pending, splice(&[b, a]), &c * &rule.lambda);
        for (k, cw) in &rule.correction {
            accumulate(&mut pending, splice(cw), &c * k);
        }
    }
    Err(AlgebraError::NoTermination(STEP_LIMIT))
}

/// Random word of length `1..=max_len`. Invertible generators get exponents
/// in `{-2, -1, 1, 2}`, other even ones `{1, 2}`, odd ones `1`.
pub fn random_word<R: Rng>(
    p: &AlgebraPresentation,
    rng: &mut R,
    max_len: usize,
) -> Vec<(usize, i32)> {
    let len = rng.gen_range(1..=max_len);
    (0..len)
        .map(|_| {
            let g = rng.gen_range(0..p.len());
            let spec = p.generator(g);
            let e = if spec.parity == Parity::Odd {
                1
            } else if spec.invertible {
                *[-2, -1, 1, 2].choose(rng).unwrap()
            } else {
                rng.gen_range(1..=2)
            };
            (g, e)
        })
        .collect()
}
