use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::ops::Add;

use crate::qfield::QRational;

use super::AlgebraError;

/// Z2 grading of a generator or homogeneous element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub name: String,
    pub parity: Parity,
    pub invertible: bool,
    /// Position in the normal order; smaller ranks stand further left.
    pub rank: u32,
}

/// A generator or its inverse. `gen` indexes the presentation's generators,
/// which are stored sorted by rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize) -> Self {
        Letter {
            gen,
            inverse: false,
        }
    }

    pub fn inv(gen: usize) -> Self {
        Letter { gen, inverse: true }
    }

    pub fn flipped(self) -> Self {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    pub fn exponent(self) -> i32 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

pub type Word = Vec<Letter>;

/// `left * right = lambda * right * left + sum(coeff * word)`, where `left`
/// outranks `right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExchangeRule {
    pub left: Letter,
    pub right: Letter,
    pub lambda: QRational,
    pub correction: Vec<(QRational, Word)>,
    /// Obtained by `derive_inverse_rules` rather than stated.
    pub derived: bool,
}

/// A finitely presented Z2-graded algebra over Q(q).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraPresentation {
    name: String,
    generators: Vec<GeneratorSpec>,
    rules: BTreeMap<(Letter, Letter), ExchangeRule>,
}

/// Collects generators and stated rules by name; [`build`](Self::build)
/// validates them.
#[derive(Clone, Debug, Default)]
pub struct PresentationBuilder {
    name: String,
    generators: Vec<GeneratorSpec>,
    rules: Vec<RawRule>,
}

#[derive(Clone, Debug)]
struct RawRule {
    left: String,
    right: String,
    lambda: QRational,
    correction: Vec<(QRational, Vec<(String, i32)>)>,
}

impl PresentationBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        PresentationBuilder {
            name: name.into(),
            ..Default::default()
        }
    }

    /// Adds a generator ranked after all previous ones.
    pub fn generator(mut self, name: &str, parity: Parity, invertible: bool) -> Self {
        let rank = self.generators.len() as u32;
        self.generators.push(GeneratorSpec {
            name: name.into(),
            parity,
            invertible,
            rank,
        });
        self
    }

    pub fn generator_spec(mut self, spec: GeneratorSpec) -> Self {
        self.generators.push(spec);
        self
    }

    /// `left * right = lambda * right * left + correction`; correction words
    /// are lists of `(generator, exponent)`.
    pub fn rule(
        mut self,
        left: &str,
        right: &str,
        lambda: QRational,
        correction: &[(QRational, &[(&str, i32)])],
    ) -> Self {
        self.rules.push(RawRule {
            left: left.into(),
            right: right.into(),
            lambda,
            correction: correction
                .iter()
                .map(|(c, w)| {
                    (
                        c.clone(),
                        w.iter().map(|(g, e)| (g.to_string(), *e)).collect(),
                    )
                })
                .collect(),
        });
        self
    }

    pub fn build(self) -> Result<AlgebraPresentation, AlgebraError> {
        let invalid = |msg: String| Err(AlgebraError::InvalidPresentation(msg));
        let mut generators = self.generators;
        generators.sort_by_key(|g| g.rank);
        let mut names = HashSet::new();
        for (i, g) in generators.iter().enumerate() {
            if g.name.is_empty()
                || !g
                    .name
                    .chars()
                    .all(|c| c.is_ascii_alphanumeric() || c == '_')
            {
                return invalid(format!("invalid generator name `{}`", g.name));
            }
            if g.name == "q" {
                return invalid("`q` is reserved for the deformation parameter".into());
            }
            if !names.insert(g.name.clone()) {
                return invalid(format!("duplicate generator `{}`", g.name));
            }
            if i > 0 && generators[i - 1].rank == g.rank {
                return invalid(format!(
                    "generators `{}` and `{}` share rank {}",
                    generators[i - 1].name,
                    g.name,
                    g.rank
                ));
            }
            if g.parity == Parity::Odd && g.invertible {
                return invalid(format!("odd generator `{}` cannot be invertible", g.name));
            }
        }
        let mut p = AlgebraPresentation {
            name: self.name,
            generators,
            rules: BTreeMap::new(),
        };
        for raw in self.rules {
            let left = Letter::new(p.index_of(&raw.left)?);
            let right = Letter::new(p.index_of(&raw.right)?);
            let mut correction = Vec::new();
            for (c, w) in raw.correction {
                let mut word = Vec::new();
                for (g, e) in w {
                    word.extend(p.letters_for(p.index_of(&g)?, e)?);
                }
                if !c.is_zero() {
                    correction.push((c, word));
                }
            }
            let rule = ExchangeRule {
                left,
                right,
                lambda: raw.lambda,
                correction,
                derived: false,
            };
            p.check_stated_rule(&rule)?;
            if p.rules.insert((left, right), rule).is_some() {
                return invalid(format!("duplicate rule for {}*{}", raw.left, raw.right));
            }
        }
        for j in 0..p.generators.len() {
            for i in 0..j {
                if !p.rules.contains_key(&(Letter::new(j), Letter::new(i))) {
                    return invalid(format!(
                        "missing exchange rule for {}*{}",
                        p.generators[j].name, p.generators[i].name
                    ));
                }
            }
        }
        Ok(p)
    }
}

/// Sort key for the termination order: total even degree, then exponents
/// compared from the highest rank down.
fn order_key(p: &AlgebraPresentation, exps: &[i32]) -> (u32, Vec<i32>) {
    let even: u32 = exps
        .iter()
        .zip(&p.generators)
        .filter(|(_, g)| g.parity == Parity::Even)
        .map(|(e, _)| e.unsigned_abs())
        .sum();
    (even, exps.iter().rev().copied().collect())
}

impl AlgebraPresentation {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> &[GeneratorSpec] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generator(&self, index: usize) -> &GeneratorSpec {
        &self.generators[index]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn index_of(&self, name: &str) -> Result<usize, AlgebraError> {
        self.index(name)
            .ok_or_else(|| AlgebraError::UnknownGenerator(name.to_string()))
    }

    pub fn rules(&self) -> impl Iterator<Item = &ExchangeRule> {
        self.rules.values()
    }

    pub fn rule(&self, left: Letter, right: Letter) -> Option<&ExchangeRule> {
        self.rules.get(&(left, right))
    }

    /// Odd generators, each of which squares to zero.
    pub fn square_rules(&self) -> impl Iterator<Item = &GeneratorSpec> {
        self.generators.iter().filter(|g| g.parity == Parity::Odd)
    }

    pub fn odd_count(&self) -> usize {
        self.square_rules().count()
    }

    /// True when some rule moves an inverse letter.
    pub fn has_inverse_rules(&self) -> bool {
        self.rules.keys().any(|(l, r)| l.inverse || r.inverse)
    }

    /// Expands `g^e` into unit letters, rejecting negative powers of
    /// non-invertible generators.
    pub fn letters_for(&self, gen: usize, e: i32) -> Result<Vec<Letter>, AlgebraError> {
        let spec = &self.generators[gen];
        if e < 0 && !spec.invertible {
            return Err(AlgebraError::NegativeExponent(spec.name.clone()));
        }
        let letter = Letter {
            gen,
            inverse: e < 0,
        };
        Ok(vec![letter; e.unsigned_abs() as usize])
    }

    pub fn letter_name(&self, l: Letter) -> String {
        let n = &self.generators[l.gen].name;
        if l.inverse {
            format!("{n}^-1")
        } else {
            n.clone()
        }
    }

    pub fn word_parity(&self, w: &[Letter]) -> Parity {
        w.iter()
            .fold(Parity::Even, |acc, l| acc + self.generators[l.gen].parity)
    }

    fn check_stated_rule(&self, r: &ExchangeRule) -> Result<(), AlgebraError> {
        let (lname, rname) = (self.letter_name(r.left), self.letter_name(r.right));
        let invalid = |msg: String| {
            Err(AlgebraError::InvalidPresentation(format!(
                "rule {lname}*{rname}: {msg}"
            )))
        };
        if r.left.gen <= r.right.gen {
            return invalid("left generator must outrank the right one".into());
        }
        if r.lambda.is_zero() {
            return invalid("exchange coefficient is zero".into());
        }
        let lhs_parity = self.word_parity(&[r.left, r.right]);
        let mut lhs_exps = vec![0; self.len()];
        lhs_exps[r.left.gen] += 1;
        lhs_exps[r.right.gen] += 1;
        let lhs_key = order_key(self, &lhs_exps);
        for (_, w) in &r.correction {
            if self.word_parity(w) != lhs_parity {
                return invalid("correction term has the wrong parity".into());
            }
            let mut exps = vec![0; self.len()];
            for l in w {
                exps[l.gen] += l.exponent();
            }
            if order_key(self, &exps) >= lhs_key {
                return invalid("correction term is not smaller than the left-hand side".into());
            }
        }
        Ok(())
    }

    /// Adds, for every invertible generator, the exchange rules of its
    /// inverse letter implied by the stated rules:
    ///
    /// from `y x = l x y + C`,
    /// `y x^-1 = l^-1 x^-1 y - l^-1 x^-1 C x^-1` and
    /// `y^-1 x = l^-1 x y^-1 - l^-1 y^-1 C y^-1`.
    ///
    /// Applied until no rule is missing, so `y^-1 x^-1` is covered too.
    pub fn derive_inverse_rules(&self) -> AlgebraPresentation {
        let mut out = self.clone();
        loop {
            let mut fresh = Vec::new();
            for r in out.rules.values() {
                let lambda_inv = r.lambda.inv().expect("exchange coefficients are nonzero");
                let sandwich = |g: Letter| -> Vec<(QRational, Word)> {
                    r.correction
                        .iter()
                        .map(|(c, w)| {
                            let mut word = Vec::with_capacity(w.len() + 2);
                            word.push(g);
                            word.extend_from_slice(w);
                            word.push(g);
                            (-(&lambda_inv * c), word)
                        })
                        .collect()
                };
                if self.generators[r.right.gen].invertible {
                    let right = r.right.flipped();
                    if !out.rules.contains_key(&(r.left, right)) {
                        fresh.push(ExchangeRule {
                            left: r.left,
                            right,
                            lambda: lambda_inv.clone(),
                            correction: sandwich(right),
                            derived: true,
                        });
                    }
                }
                if self.generators[r.left.gen].invertible {
                    let left = r.left.flipped();
                    if !out.rules.contains_key(&(left, r.right)) {
                        fresh.push(ExchangeRule {
                            left,
                            right: r.right,
                            lambda: lambda_inv.clone(),
                            correction: sandwich(left),
                            derived: true,
                        });
                    }
                }
            }
            if fresh.is_empty() {
                break;
            }
            for r in fresh {
                out.rules.entry((r.left, r.right)).or_insert(r);
            }
        }
        let keys: Vec<_> = out
            .rules
            .iter()
            .filter(|(_, r)| r.derived)
            .map(|(k, _)| *k)
            .collect();
        for key in keys {
            let correction = out.rules[&key]
                .correction
                .iter()
                .filter_map(|(c, w)| out.partial_normalize(c, w))
                .collect();
            out.rules.get_mut(&key).unwrap().correction = correction;
        }
        out
    }

    /// Moves `word` towards normal order using only correction-free rules,
    /// cancellations and odd squares. Returns `None` if the word vanishes.
    ///
    /// Applied to derived corrections so their odd letters come first; a
    /// correction that reintroduces its own left-hand side is then killed by
    /// the odd letters before it can recurse.
    pub fn partial_normalize(
        &self,
        coeff: &QRational,
        word: &[Letter],
    ) -> Option<(QRational, Word)> {
        let mut coeff = coeff.clone();
        let mut w = word.to_vec();
        'outer: loop {
            for i in 0..w.len().saturating_sub(1) {
                let (a, b) = (w[i], w[i + 1]);
                if a.gen == b.gen {
                    if self.generators[a.gen].parity == Parity::Odd {
                        return None;
                    }
                    if a.inverse != b.inverse {
                        w.drain(i..i + 2);
                        continue 'outer;
                    }
                } else if a.gen > b.gen {
                    if let Some(r) = self.rules.get(&(a, b)).filter(|r| r.correction.is_empty()) {
                        coeff = &coeff * &r.lambda;
                        w.swap(i, i + 1);
                        continue 'outer;
                    }
                }
            }
            return Some((coeff, w));
        }
    }

    /// Super tensor product: generators of `self` rank before those of
    /// `other`, and across the factors `g_b g_a = (-1)^{|g_a||g_b|} g_a g_b`.
    pub fn tensor(&self, other: &AlgebraPresentation) -> Result<AlgebraPresentation, AlgebraError> {
        for g in &other.generators {
            if self.index(&g.name).is_some() {
                return Err(AlgebraError::NameCollision(g.name.clone()));
            }
        }
        let offset = self.len();
        let top_rank = self.generators.last().map_or(0, |g| g.rank + 1);
        let mut generators = self.generators.clone();
        generators.extend(other.generators.iter().map(|g| GeneratorSpec {
            rank: g.rank + top_rank,
            ..g.clone()
        }));
        let shift = |l: Letter| Letter {
            gen: l.gen + offset,
            inverse: l.inverse,
        };
        let mut rules = self.rules.clone();
        for r in other.rules.values() {
            let moved = ExchangeRule {
                left: shift(r.left),
                right: shift(r.right),
                lambda: r.lambda.clone(),
                correction: r
                    .correction
                    .iter()
                    .map(|(c, w)| (c.clone(), w.iter().copied().map(shift).collect()))
                    .collect(),
                derived: r.derived,
            };
            rules.insert((moved.left, moved.right), moved);
        }
        for (j, gb) in other.generators.iter().enumerate() {
            for (i, ga) in self.generators.iter().enumerate() {
                let sign = if ga.parity == Parity::Odd && gb.parity == Parity::Odd {
                    -1
                } else {
                    1
                };
                let (left, right) = (Letter::new(j + offset), Letter::new(i));
                rules.insert(
                    (left, right),
                    ExchangeRule {
                        left,
                        right,
                        lambda: QRational::from_integer(sign),
                        correction: Vec::new(),
                        derived: false,
                    },
                );
            }
        }
        let out = AlgebraPresentation {
            name: format!("{}x{}", self.name, other.name),
            generators,
            rules,
        };
        Ok(if self.has_inverse_rules() || other.has_inverse_rules() {
            out.derive_inverse_rules()
        } else {
            out
        })
    }

    /// Copy with every generator name suffixed, e.g. `alpha` -> `alpha2`.
    pub fn renamed(&self, suffix: &str) -> AlgebraPresentation {
        let mut out = self.clone();
        for g in &mut out.generators {
            g.name.push_str(suffix);
        }
        out.name.push_str(suffix);
        out
    }
}
