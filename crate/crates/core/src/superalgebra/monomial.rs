use super::presentation::{AlgebraPresentation, Letter, Parity};

/// Normal-ordered monomial `g_0^{e_0} g_1^{e_1} ...` stored as its exponent
/// vector, one slot per generator in rank order. Odd exponents are 0 or 1;
/// only invertible generators carry negative exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<i32>);

impl Monomial {
    pub fn one(len: usize) -> Self {
        Monomial(vec![0; len])
    }

    pub fn from_exponents(exps: Vec<i32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[i32] {
        &self.0
    }

    pub(crate) fn exponents_mut(&mut self) -> &mut [i32] {
        &mut self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Index of the highest-ranked generator present.
    pub fn last_gen(&self) -> Option<usize> {
        self.0.iter().rposition(|&e| e != 0)
    }

    pub fn odd_degree(&self, p: &AlgebraPresentation) -> usize {
        self.0
            .iter()
            .zip(p.generators())
            .filter(|(&e, g)| e != 0 && g.parity == Parity::Odd)
            .count()
    }

    pub fn parity(&self, p: &AlgebraPresentation) -> Parity {
        if self.odd_degree(p) % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    /// True when every generator present is invertible.
    pub fn is_invertible(&self, p: &AlgebraPresentation) -> bool {
        self.0
            .iter()
            .zip(p.generators())
            .all(|(&e, g)| e == 0 || g.invertible)
    }

    /// Unit letters of the normal-ordered word.
    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        for (gen, &e) in self.0.iter().enumerate() {
            let l = Letter {
                gen,
                inverse: e < 0,
            };
            out.extend(std::iter::repeat_n(l, e.unsigned_abs() as usize));
        }
        out
    }

    /// The word of `self^-1`: the inverse letters in reverse order.
    pub fn inverse_word(&self) -> Vec<(usize, i32)> {
        self.0
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &e)| e != 0)
            .map(|(g, &e)| (g, -e))
            .collect()
    }
}
