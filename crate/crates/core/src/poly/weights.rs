use num_integer::Integer;

use crate::error::{Error, Result};

use super::Monomial;

/// Positive integer weights of the variables, without common divisor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightSystem {
    weights: Vec<u32>,
    sum: i64,
}

impl WeightSystem {
    pub fn new(weights: &[u32]) -> Result<Self> {
        if !(2..=3).contains(&weights.len()) {
            return Err(Error::InvalidWeights(format!(
                "expected 2 or 3 weights, got {}",
                weights.len()
            )));
        }
        if weights.iter().any(|&w| w == 0) {
            return Err(Error::InvalidWeights("weights must be positive".into()));
        }
        let g = weights.iter().fold(0u32, |g, &w| g.gcd(&w));
        if g != 1 {
            return Err(Error::InvalidWeights(format!(
                "weights {weights:?} share the common divisor {g}"
            )));
        }
        Ok(WeightSystem {
            weights: weights.to_vec(),
            sum: weights.iter().map(|&w| w as i64).sum(),
        })
    }

    /// All weights equal to one.
    pub fn standard(arity: usize) -> Self {
        WeightSystem::new(&vec![1; arity]).expect("unit weights are valid")
    }

    pub fn arity(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn weight(&self, index: usize) -> i64 {
        self.weights[index] as i64
    }

    /// `|w|`, the sum of the weights.
    pub fn weight_sum(&self) -> i64 {
        self.sum
    }

    pub fn degree(&self, m: &Monomial) -> i64 {
        m.weighted_degree(&self.weights)
    }

    /// Every monomial of weighted degree exactly `degree`, in ascending
    /// exponent order.
    pub fn monomials_of_degree(&self, degree: i64) -> Vec<Monomial> {
        let mut out = Vec::new();
        if degree < 0 {
            return out;
        }
        let mut exps = vec![0u32; self.arity()];
        self.fill(0, degree, &mut exps, &mut out);
        out.sort();
        out
    }

    fn fill(&self, index: usize, remaining: i64, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        let w = self.weight(index);
        if index + 1 == self.arity() {
            if remaining % w == 0 {
                exps[index] = (remaining / w) as u32;
                if let Ok(m) = Monomial::new(exps) {
                    out.push(m);
                }
            }
            return;
        }
        for e in 0..=(remaining / w) {
            exps[index] = e as u32;
            self.fill(index + 1, remaining - e * w, exps, out);
        }
    }
}
