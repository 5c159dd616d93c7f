//! Sparse polynomials over GF(2), kept symbolically. Used to check the
//! subset sieve against exact monomial bookkeeping.

use std::collections::BTreeSet;

use rand::Rng;

use super::field::{ff_pow, FieldElem};

/// A set of monomials (coefficients in GF(2)); each monomial is an
/// exponent vector.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly {
    pub vars: usize,
    pub terms: BTreeSet<Vec<u8>>,
}

fn support(m: &[u8]) -> u64 {
    m.iter().enumerate().filter(|(_, &e)| e > 0).fold(0, |s, (i, _)| s | 1 << i)
}

impl Poly {
    pub fn zero(vars: usize) -> Self {
        Poly { vars, terms: BTreeSet::new() }
    }

    pub fn random(rng: &mut impl Rng, vars: usize, terms: usize, max_exp: u8) -> Self {
        let mut p = Poly::zero(vars);
        for _ in 0..terms {
            let m: Vec<u8> = (0..vars)
                .map(|_| if rng.gen_bool(0.4) { rng.gen_range(1..=max_exp) } else { 0 })
                .collect();
            p.toggle(m);
        }
        p
    }

    /// Adds one monomial (mod 2).
    pub fn toggle(&mut self, m: Vec<u8>) {
        assert_eq!(m.len(), self.vars);
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for m in &o.terms {
            out.toggle(m.clone());
        }
        out
    }

    /// The polynomial with every variable in `mask` set to zero.
    pub fn zeroed(&self, mask: u64) -> Poly {
        Poly {
            vars: self.vars,
            terms: self.terms.iter().filter(|m| support(m) & mask == 0).cloned().collect(),
        }
    }

    /// The monomials divisible by the product of the variables in `mask`.
    pub fn divisible_by(&self, mask: u64) -> Poly {
        Poly {
            vars: self.vars,
            terms: self.terms.iter().filter(|m| support(m) & mask == mask).cloned().collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> usize {
        self.terms.iter().map(|m| m.iter().map(|&e| e as usize).sum()).max().unwrap_or(0)
    }

    pub fn eval(&self, point: &[FieldElem]) -> FieldElem {
        self.terms.iter().fold(FieldElem::ZERO, |acc, m| {
            acc + m
                .iter()
                .zip(point)
                .fold(FieldElem::ONE, |t, (&e, &x)| t * ff_pow(x, e as u128))
        })
    }

    /// The symbolic sieve: sum of `self` with the variables of each
    /// `I ⊆ mask` zeroed.
    pub fn sieve(&self, mask: u64) -> Poly {
        let mut acc = Poly::zero(self.vars);
        let mut i = mask;
        loop {
            acc = acc.add(&self.zeroed(i));
            if i == 0 {
                break;
            }
            i = (i - 1) & mask;
        }
        acc
    }
}
