//! Trigonometric-polynomial symbols on the distinguished boundary 𝕋ⁿ.
//!
//! A symbol is a finite Laurent polynomial Σ c_γ z^γ with exact complex
//! rational coefficients. Symbols form a commutative *-ring under
//! pointwise operations; the biholomorphism between the triangle and
//! the polydisc acts on them by reindexing exponents.

use crate::coeff::{coeff_conj, coeff_is_zero, coeff_norm_sq, rat_from_str, rat_one, rat_to_string, Coeff};
use crate::error::{Error, Result};
use crate::lattice::{
    exponent_pullback, exponent_pushforward, in_analytic_cone, in_hartogs_basis, MultiIndex,
};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A finite Laurent polynomial on 𝕋ⁿ with exact coefficients.
///
/// Zero coefficients are never stored; the term map is keyed by
/// exponent in lexicographic order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentSymbol {
    n: usize,
    terms: BTreeMap<MultiIndex, Coeff>,
}

/// Structural classification flags of a symbol.
///
/// The four flags are independent containment tests on the support
/// (plus a unimodularity test for `inner_monomial`); each is decided
/// exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymbolClass {
    /// Support contained in ℤ₊ⁿ: extends holomorphically to 𝔻ⁿ.
    pub polydisc_analytic: bool,
    /// Support contained in the analytic cone A: bounded holomorphic
    /// on the triangle, hence a multiplier of its Hardy space.
    pub triangle_analytic: bool,
    /// Support contained in the Hartogs basis lattice 𝓘: lies in
    /// H²(△ₙ) itself (possibly unbounded, like z̄₂).
    pub triangle_hardy: bool,
    /// A single term c·z^γ with |c| = 1 exactly and γ in the analytic
    /// cone: a monomial inner function on the triangle.
    pub inner_monomial: bool,
}

impl LaurentSymbol {
    /// The zero symbol in dimension n.
    pub fn zero(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!(
                "symbol dimension must be at least 2, got {n}"
            )));
        }
        Ok(LaurentSymbol {
            n,
            terms: BTreeMap::new(),
        })
    }

    /// The constant symbol c.
    pub fn constant(n: usize, c: Coeff) -> Result<Self> {
        let mut s = Self::zero(n)?;
        if !coeff_is_zero(&c) {
            s.terms.insert(MultiIndex::zero(n)?, c);
        }
        Ok(s)
    }

    /// The single-term symbol c·z^γ.
    pub fn monomial(gamma: MultiIndex, c: Coeff) -> Result<Self> {
        let mut s = Self::zero(gamma.dim())?;
        if !coeff_is_zero(&c) {
            s.terms.insert(gamma, c);
        }
        Ok(s)
    }

    /// Builds a symbol from a term list, rejecting duplicate exponents
    /// and dropping zero coefficients.
    pub fn from_terms(n: usize, terms: Vec<(MultiIndex, Coeff)>) -> Result<Self> {
        let mut s = Self::zero(n)?;
        for (gamma, c) in terms {
            if gamma.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: gamma.dim(),
                });
            }
            if s.terms.contains_key(&gamma) {
                return Err(Error::DuplicateExponent(gamma.entries().to_vec()));
            }
            if !coeff_is_zero(&c) {
                s.terms.insert(gamma, c);
            }
        }
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// The coefficient at exponent γ (zero if absent).
    pub fn coefficient(&self, gamma: &MultiIndex) -> Coeff {
        self.terms
            .get(gamma)
            .cloned()
            .unwrap_or_else(crate::coeff::coeff_zero)
    }

    /// Terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Coeff)> {
        self.terms.iter()
    }

    /// Support exponents in lexicographic order.
    pub fn support(&self) -> impl Iterator<Item = &MultiIndex> {
        self.terms.keys()
    }

    fn check_dim(&self, other: &LaurentSymbol) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        Ok(())
    }

    /// Coefficientwise sum.
    pub fn add(&self, other: &LaurentSymbol) -> Result<LaurentSymbol> {
        self.check_dim(other)?;
        let mut terms = self.terms.clone();
        for (gamma, c) in &other.terms {
            let entry = terms.entry(gamma.clone()).or_insert_with(crate::coeff::coeff_zero);
            *entry = entry.clone() + c.clone();
            if coeff_is_zero(entry) {
                terms.remove(gamma);
            }
        }
        Ok(LaurentSymbol { n: self.n, terms })
    }

    /// Pointwise product, realized as exact support convolution.
    pub fn multiply(&self, other: &LaurentSymbol) -> Result<LaurentSymbol> {
        self.check_dim(other)?;
        let mut terms: BTreeMap<MultiIndex, Coeff> = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let gamma = a.add(b)?;
                let entry = terms.entry(gamma.clone()).or_insert_with(crate::coeff::coeff_zero);
                *entry = entry.clone() + ca.clone() * cb.clone();
                if coeff_is_zero(entry) {
                    terms.remove(&gamma);
                }
            }
        }
        Ok(LaurentSymbol { n: self.n, terms })
    }

    /// Multiplies every coefficient by c.
    pub fn scale(&self, c: &Coeff) -> LaurentSymbol {
        if coeff_is_zero(c) {
            return LaurentSymbol {
                n: self.n,
                terms: BTreeMap::new(),
            };
        }
        LaurentSymbol {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(g, v)| (g.clone(), v.clone() * c.clone()))
                .collect(),
        }
    }

    /// Complex conjugate on 𝕋ⁿ: coefficient at γ becomes the conjugate
    /// of the coefficient at −γ.
    pub fn conjugate(&self) -> LaurentSymbol {
        let terms = self
            .terms
            .iter()
            .map(|(gamma, c)| {
                let neg = MultiIndex::new(gamma.entries().iter().map(|e| -e).collect())
                    .expect("negation preserves dimension");
                (neg, coeff_conj(c))
            })
            .collect();
        LaurentSymbol { n: self.n, terms }
    }

    /// Reindexes the support through the exponent pushforward
    /// (composition with the inverse biholomorphism); coefficients
    /// are unchanged.
    pub fn pushforward(&self) -> LaurentSymbol {
        let terms = self
            .terms
            .iter()
            .map(|(gamma, c)| (exponent_pushforward(gamma), c.clone()))
            .collect();
        LaurentSymbol { n: self.n, terms }
    }

    /// Inverse of [`LaurentSymbol::pushforward`].
    pub fn pullback(&self) -> LaurentSymbol {
        let terms = self
            .terms
            .iter()
            .map(|(gamma, c)| (exponent_pullback(gamma), c.clone()))
            .collect();
        LaurentSymbol { n: self.n, terms }
    }

    /// Computes the four structural flags, each exactly.
    pub fn classify(&self) -> SymbolClass {
        let polydisc_analytic = self.terms.keys().all(|g| g.is_nonnegative());
        let triangle_analytic = self.terms.keys().all(in_analytic_cone);
        let triangle_hardy = self.terms.keys().all(in_hartogs_basis);
        let inner_monomial = self.terms.len() == 1 && {
            let (gamma, c) = self.terms.iter().next().expect("one term");
            in_analytic_cone(gamma) && coeff_norm_sq(c) == rat_one()
        };
        SymbolClass {
            polydisc_analytic,
            triangle_analytic,
            triangle_hardy,
            inner_monomial,
        }
    }

    /// Parses the canonical JSON form. Zero-coefficient terms are
    /// tolerated and dropped; duplicate exponents are rejected.
    pub fn parse(text: &str) -> Result<LaurentSymbol> {
        let doc: SymbolDoc = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let mut s = Self::zero(doc.n)?;
        for term in doc.terms {
            let gamma = MultiIndex::new(term.exp.clone())?;
            if gamma.dim() != doc.n {
                return Err(Error::DimensionMismatch {
                    expected: doc.n,
                    got: gamma.dim(),
                });
            }
            if s.terms.contains_key(&gamma) {
                return Err(Error::DuplicateExponent(term.exp));
            }
            let c = Coeff::new(rat_from_str(&term.re)?, rat_from_str(&term.im)?);
            if !coeff_is_zero(&c) {
                s.terms.insert(gamma, c);
            }
        }
        Ok(s)
    }

    /// Canonical serialization: terms in lexicographic exponent order,
    /// rationals as reduced `p/q` strings, no zero terms.
    pub fn serialize(&self) -> String {
        let doc = SymbolDoc {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(gamma, c)| TermDoc {
                    exp: gamma.entries().to_vec(),
                    re: rat_to_string(&c.re),
                    im: rat_to_string(&c.im),
                })
                .collect(),
        };
        serde_json::to_string(&doc).expect("symbol document serializes")
    }
}

#[derive(Serialize, Deserialize)]
struct SymbolDoc {
    n: usize,
    terms: Vec<TermDoc>,
}

#[derive(Serialize, Deserialize)]
struct TermDoc {
    exp: Vec<i64>,
    re: String,
    im: String,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{coeff, coeff_int, coeff_one, rat, rat_int};
    use proptest::prelude::*;

    fn mi(entries: &[i64]) -> MultiIndex {
        MultiIndex::new(entries.to_vec()).unwrap()
    }

    fn mono(entries: &[i64]) -> LaurentSymbol {
        LaurentSymbol::monomial(mi(entries), coeff_one()).unwrap()
    }

    #[test]
    fn add_examples() {
        let z1 = mono(&[1, 0]);
        let neg_z1 = z1.scale(&coeff_int(-1));
        assert!(z1.add(&neg_z1).unwrap().is_zero());

        let sum = z1.add(&mono(&[0, -1])).unwrap();
        assert_eq!(sum.term_count(), 2);
        assert_eq!(sum.coefficient(&mi(&[1, 0])), coeff_one());
        assert_eq!(sum.coefficient(&mi(&[0, -1])), coeff_one());

        let zero = LaurentSymbol::zero(2).unwrap();
        assert_eq!(z1.add(&zero).unwrap(), z1);
        assert!(z1.add(&mono(&[1, 0, 0])).is_err());
    }

    #[test]
    fn multiply_examples() {
        let z1 = mono(&[1, 0]);
        let z1bar = mono(&[-1, 0]);
        assert_eq!(
            z1.multiply(&z1bar).unwrap(),
            LaurentSymbol::constant(2, coeff_one()).unwrap()
        );

        let one = LaurentSymbol::constant(2, coeff_one()).unwrap();
        let lhs = one.add(&z1).unwrap();
        let rhs = one.add(&z1.scale(&coeff_int(-1))).unwrap();
        let prod = lhs.multiply(&rhs).unwrap();
        let expect = one
            .add(&mono(&[2, 0]).scale(&coeff_int(-1)))
            .unwrap();
        assert_eq!(prod, expect);

        let zero = LaurentSymbol::zero(2).unwrap();
        assert!(z1.multiply(&zero).unwrap().is_zero());
    }

    #[test]
    fn conjugate_examples() {
        // z₁ z̄₂³ has exponent (1,−3)
        let s = mono(&[1, -3]);
        assert_eq!(s.conjugate(), mono(&[-1, 3]));
        assert_eq!(s.conjugate().conjugate(), s);
        let two = LaurentSymbol::constant(2, coeff_int(2)).unwrap();
        assert_eq!(two.conjugate(), two);
        let i_z1 = LaurentSymbol::monomial(mi(&[1, 0]), coeff(rat_int(0), rat_int(1))).unwrap();
        assert_eq!(
            i_z1.conjugate().coefficient(&mi(&[-1, 0])),
            coeff(rat_int(0), rat_int(-1))
        );
    }

    #[test]
    fn pushforward_examples() {
        assert_eq!(mono(&[1, -1]).pushforward(), mono(&[1, 0]));
        assert_eq!(mono(&[-1, 3]).pushforward(), mono(&[-1, 2]));
        let c = LaurentSymbol::constant(2, coeff_int(5)).unwrap();
        assert_eq!(c.pushforward(), c);
    }

    #[test]
    fn pullback_examples() {
        assert_eq!(mono(&[1, 0]).pullback(), mono(&[1, -1]));
        assert_eq!(mono(&[0, 1]).pullback(), mono(&[0, 1]));
        let f = mono(&[2, -1]).add(&mono(&[0, 3])).unwrap();
        assert_eq!(f.pushforward().pullback(), f);
    }

    #[test]
    fn classify_examples() {
        let ztilde1 = mono(&[1, -1]);
        let c = ztilde1.classify();
        assert!(c.triangle_analytic && c.inner_monomial && c.triangle_hardy);
        assert!(!c.polydisc_analytic);

        let z2bar = mono(&[0, -1]);
        let c = z2bar.classify();
        assert!(c.triangle_hardy && !c.triangle_analytic);
        assert!(!c.polydisc_analytic && !c.inner_monomial);

        let one = LaurentSymbol::constant(2, coeff_one()).unwrap();
        let c = one.classify();
        assert!(c.polydisc_analytic && c.triangle_analytic && c.triangle_hardy && c.inner_monomial);

        // two-term symbols are never inner monomials
        let c = one.add(&ztilde1).unwrap().classify();
        assert!(!c.inner_monomial);

        // coefficient of non-unit modulus fails the inner test
        let half = LaurentSymbol::monomial(mi(&[1, -1]), coeff(rat(1, 2), rat_int(0))).unwrap();
        assert!(!half.classify().inner_monomial);

        // |3/5 + 4i/5| = 1 exactly
        let unim = LaurentSymbol::monomial(mi(&[1, -1]), coeff(rat(3, 5), rat(4, 5))).unwrap();
        assert!(unim.classify().inner_monomial);
    }

    #[test]
    fn parse_serialize_examples() {
        let text = r#"{"n":2,"terms":[{"exp":[1,-1],"re":"1","im":"0"}]}"#;
        let s = LaurentSymbol::parse(text).unwrap();
        assert_eq!(s, mono(&[1, -1]));
        assert_eq!(s.serialize(), text);

        let dup = r#"{"n":2,"terms":[{"exp":[1,0],"re":"1","im":"0"},{"exp":[1,0],"re":"2","im":"0"}]}"#;
        assert!(matches!(
            LaurentSymbol::parse(dup),
            Err(Error::DuplicateExponent(_))
        ));

        let zero_term = r#"{"n":2,"terms":[{"exp":[1,0],"re":"0","im":"0"}]}"#;
        assert!(LaurentSymbol::parse(zero_term).unwrap().is_zero());

        let syntax = LaurentSymbol::parse("{\"n\":2,");
        assert!(matches!(syntax, Err(Error::Parse { .. })));

        let wrong_dim = r#"{"n":2,"terms":[{"exp":[1,0,0],"re":"1","im":"0"}]}"#;
        assert!(LaurentSymbol::parse(wrong_dim).is_err());
    }

    fn arb_coeff() -> impl Strategy<Value = Coeff> {
        (-4i64..=4, 1i64..=3, -4i64..=4, 1i64..=3)
            .prop_map(|(pr, qr, pi, qi)| coeff(rat(pr, qr), rat(pi, qi)))
    }

    fn arb_symbol(n: usize) -> impl Strategy<Value = LaurentSymbol> {
        prop::collection::btree_map(
            prop::collection::vec(-3i64..=3, n..=n).prop_map(|v| MultiIndex::new(v).unwrap()),
            arb_coeff(),
            0..5,
        )
        .prop_map(move |m| LaurentSymbol::from_terms(n, m.into_iter().collect()).unwrap())
    }

    proptest! {
        #[test]
        fn ring_laws(f in arb_symbol(2), g in arb_symbol(2), h in arb_symbol(2)) {
            prop_assert_eq!(f.add(&g).unwrap(), g.add(&f).unwrap());
            prop_assert_eq!(
                f.add(&g).unwrap().add(&h).unwrap(),
                f.add(&g.add(&h).unwrap()).unwrap()
            );
            prop_assert_eq!(f.multiply(&g).unwrap(), g.multiply(&f).unwrap());
            prop_assert_eq!(
                f.multiply(&g).unwrap().multiply(&h).unwrap(),
                f.multiply(&g.multiply(&h).unwrap()).unwrap()
            );
            prop_assert_eq!(
                f.multiply(&g.add(&h).unwrap()).unwrap(),
                f.multiply(&g).unwrap().add(&f.multiply(&h).unwrap()).unwrap()
            );
        }

        #[test]
        fn conjugate_is_ring_antihomomorphism(f in arb_symbol(2), g in arb_symbol(2)) {
            prop_assert_eq!(
                f.multiply(&g).unwrap().conjugate(),
                f.conjugate().multiply(&g.conjugate()).unwrap()
            );
            prop_assert_eq!(
                f.add(&g).unwrap().conjugate(),
                f.conjugate().add(&g.conjugate()).unwrap()
            );
        }

        #[test]
        fn pushforward_is_ring_isomorphism(f in arb_symbol(3), g in arb_symbol(3)) {
            prop_assert_eq!(
                f.multiply(&g).unwrap().pushforward(),
                f.pushforward().multiply(&g.pushforward()).unwrap()
            );
            prop_assert_eq!(
                f.add(&g).unwrap().pushforward(),
                f.pushforward().add(&g.pushforward()).unwrap()
            );
            prop_assert_eq!(f.pushforward().pullback(), f.clone());
            prop_assert_eq!(f.pullback().pushforward(), f);
        }

        #[test]
        fn analytic_cone_classification_coherence(f in arb_symbol(2)) {
            let c = f.classify();
            if c.triangle_analytic {
                // A ⊆ 𝓘, so cone support forces Hardy support
                prop_assert!(c.triangle_hardy);
            }
            prop_assert_eq!(c.polydisc_analytic, f.pullback().classify().triangle_analytic);
        }

        #[test]
        fn serialization_roundtrip(f in arb_symbol(2)) {
            let text = f.serialize();
            let back = LaurentSymbol::parse(&text).unwrap();
            prop_assert_eq!(&back, &f);
            prop_assert_eq!(back.serialize(), text);
        }
    }
}
