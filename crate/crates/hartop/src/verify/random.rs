//! Seed-controlled random inputs for the verification suites.
//!
//! Symbols are small by design: supports in [−3,3]ⁿ, at most 12 terms,
//! coefficients p/q with |p|, q ≤ 20. That is large enough to exercise
//! every truncation branch and small enough that exact arithmetic stays
//! cheap. The same seed always reproduces the same stream.

use crate::coeff::{coeff, rat, Coeff};
use crate::error::Result;
use crate::lattice::{enumerate_window, from_polydisc, exponent_pullback, MultiIndex, SpaceKind};
use crate::symbol::LaurentSymbol;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct SymbolSampler {
    rng: ChaCha8Rng,
    n: usize,
}

impl SymbolSampler {
    pub fn new(n: usize, seed: u64) -> SymbolSampler {
        SymbolSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            n,
        }
    }

    fn coefficient(&mut self) -> Coeff {
        let pr = self.rng.gen_range(-20i64..=20);
        let qr = self.rng.gen_range(1i64..=20);
        let pi = self.rng.gen_range(-20i64..=20);
        let qi = self.rng.gen_range(1i64..=20);
        coeff(rat(pr, qr), rat(pi, qi))
    }

    fn build(&mut self, exponents: Vec<MultiIndex>) -> Result<LaurentSymbol> {
        let mut terms = Vec::with_capacity(exponents.len());
        for gamma in exponents {
            let c = self.coefficient();
            terms.push((gamma, c));
        }
        // duplicates collapse through a map rather than erroring
        let mut map = std::collections::BTreeMap::new();
        for (g, c) in terms {
            map.insert(g, c);
        }
        LaurentSymbol::from_terms(self.n, map.into_iter().collect())
    }

    /// A general Laurent symbol with support in [−3,3]ⁿ.
    pub fn symbol(&mut self) -> Result<LaurentSymbol> {
        let count = self.rng.gen_range(1usize..=12);
        let mut exponents = Vec::with_capacity(count);
        for _ in 0..count {
            let entries = (0..self.n)
                .map(|_| self.rng.gen_range(-3i64..=3))
                .collect();
            exponents.push(MultiIndex::new(entries)?);
        }
        self.build(exponents)
    }

    /// A symbol supported in the analytic cone A (a triangle
    /// multiplier): pullbacks of nonnegative exponents.
    pub fn cone_symbol(&mut self) -> Result<LaurentSymbol> {
        let count = self.rng.gen_range(1usize..=6);
        let mut exponents = Vec::with_capacity(count);
        for _ in 0..count {
            let entries: Vec<i64> = (0..self.n)
                .map(|_| self.rng.gen_range(0i64..=3))
                .collect();
            exponents.push(exponent_pullback(&MultiIndex::new(entries)?));
        }
        self.build(exponents)
    }

    /// A symbol supported in the Hartogs basis lattice 𝓘 (an element
    /// of H²(△ₙ)): inverse-bijection images of nonnegative exponents.
    pub fn hardy_symbol(&mut self) -> Result<LaurentSymbol> {
        let count = self.rng.gen_range(1usize..=8);
        let mut exponents = Vec::with_capacity(count);
        for _ in 0..count {
            let entries: Vec<i64> = (0..self.n)
                .map(|_| self.rng.gen_range(0i64..=5))
                .collect();
            exponents.push(from_polydisc(&MultiIndex::new(entries)?)?);
        }
        self.build(exponents)
    }

    /// A uniformly drawn basis label from the window.
    pub fn window_vector(&mut self, m: &MultiIndex, space: SpaceKind) -> Result<MultiIndex> {
        let window = enumerate_window(m, space)?;
        let i = self.rng.gen_range(0..window.len());
        Ok(window[i].clone())
    }
}
