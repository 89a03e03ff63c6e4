//! Exponent-lattice combinatorics for the Hartogs triangle and the polydisc.
//!
//! Monomials on the distinguished boundary 𝕋ⁿ are indexed by integer
//! exponent tuples. Two sublattices of ℤⁿ matter here:
//!
//! * the Hartogs index set 𝓘 = {α : s_k(α) + k − 1 ≥ 0 for k = 1..n},
//!   where s_k(α) = α₁ + … + α_k, which indexes the orthonormal monomial
//!   basis of H²(△ₙ);
//! * the analytic cone A = {α : s_k(α) ≥ 0 for all k}, the exponents of
//!   monomials bounded on △ₙ. A is closed under addition and A + 𝓘 ⊆ 𝓘,
//!   so cone monomials multiply the Hardy space into itself.
//!
//! The biholomorphism between △ₙ and 𝔻 × 𝔻ⁿ⁻¹ acts on monomials as an
//! affine reindexing of exponents: composition one way sends γ to its
//! partial-sum vector, the other way takes consecutive differences. The
//! basis bijection 𝓘 → ℤ₊ⁿ is the partial-sum map shifted by (0,1,…,n−1).

use crate::error::{Error, Result};
use std::fmt;

/// An integer exponent tuple of dimension n ≥ 2.
///
/// The same type serves as monomial exponent, basis label and window
/// bound. Ordering is lexicographic.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex {
    entries: Vec<i64>,
}

impl MultiIndex {
    /// Builds a multi-index, rejecting dimension n < 2.
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.len() < 2 {
            return Err(Error::Domain(format!(
                "multi-index dimension must be at least 2, got {}",
                entries.len()
            )));
        }
        Ok(MultiIndex { entries })
    }

    /// The zero exponent in dimension n.
    pub fn zero(n: usize) -> Result<Self> {
        Self::new(vec![0; n])
    }

    /// The j-th unit exponent ε_j (1-based) in dimension n.
    pub fn unit(n: usize, j: usize) -> Result<Self> {
        if j == 0 || j > n {
            return Err(Error::Domain(format!(
                "coordinate index {j} out of range 1..={n}"
            )));
        }
        let mut entries = vec![0; n];
        entries[j - 1] = 1;
        Self::new(entries)
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    /// Sum of all entries (the n-th partial sum).
    pub fn total(&self) -> i64 {
        self.entries.iter().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|&e| e >= 0)
    }

    fn check_dim(&self, other: &MultiIndex) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &MultiIndex) -> Result<MultiIndex> {
        self.check_dim(other)?;
        Ok(MultiIndex {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &MultiIndex) -> Result<MultiIndex> {
        self.check_dim(other)?;
        Ok(MultiIndex {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// α + ε_j for a 1-based coordinate j.
    pub fn shift_up(&self, j: usize) -> Result<MultiIndex> {
        let mut entries = self.entries.clone();
        if j == 0 || j > entries.len() {
            return Err(Error::Domain(format!(
                "coordinate index {j} out of range 1..={}",
                entries.len()
            )));
        }
        entries[j - 1] += 1;
        Ok(MultiIndex { entries })
    }

    /// α − ε_j for a 1-based coordinate j.
    pub fn shift_down(&self, j: usize) -> Result<MultiIndex> {
        let mut entries = self.entries.clone();
        if j == 0 || j > entries.len() {
            return Err(Error::Domain(format!(
                "coordinate index {j} out of range 1..={}",
                entries.len()
            )));
        }
        entries[j - 1] -= 1;
        Ok(MultiIndex { entries })
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Running sums s_k = Σ_{j≤k} α_j of a multi-index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialSums {
    sums: Vec<i64>,
}

impl PartialSums {
    pub fn sums(&self) -> &[i64] {
        &self.sums
    }
}

/// The running-sum sequence of α, in exact integer arithmetic.
pub fn partial_sums(alpha: &MultiIndex) -> PartialSums {
    let mut acc = 0i64;
    let sums = alpha
        .entries()
        .iter()
        .map(|&e| {
            acc += e;
            acc
        })
        .collect();
    PartialSums { sums }
}

/// Membership in the Hartogs basis lattice 𝓘: s_k(α) + k − 1 ≥ 0 for all k.
pub fn in_hartogs_basis(alpha: &MultiIndex) -> bool {
    partial_sums(alpha)
        .sums()
        .iter()
        .enumerate()
        .all(|(k0, &s)| s + k0 as i64 >= 0)
}

/// Membership in the analytic cone A: s_k(α) ≥ 0 for all k.
///
/// Cone exponents are exactly those whose pushforward lies in ℤ₊ⁿ,
/// i.e. the monomials bounded on the triangle.
pub fn in_analytic_cone(alpha: &MultiIndex) -> bool {
    partial_sums(alpha).sums().iter().all(|&s| s >= 0)
}

/// The basis bijection 𝓘 → ℤ₊ⁿ evaluated without the membership guard.
///
/// B(α)_k = s_k(α) + k − 1. Used internally so the membership criterion
/// and the bijection can be cross-checked as independent code paths.
fn to_polydisc_formal(alpha: &MultiIndex) -> MultiIndex {
    let entries = partial_sums(alpha)
        .sums()
        .iter()
        .enumerate()
        .map(|(k0, &s)| s + k0 as i64)
        .collect();
    MultiIndex { entries }
}

/// The basis bijection 𝓘 → ℤ₊ⁿ, β_k = s_k(α) + k − 1.
///
/// This is where the unitary between the two Hardy spaces sends the
/// monomial basis vector labelled α.
pub fn to_polydisc(alpha: &MultiIndex) -> Result<MultiIndex> {
    if !in_hartogs_basis(alpha) {
        return Err(Error::Domain(format!(
            "{alpha} is not in the Hartogs basis lattice"
        )));
    }
    Ok(to_polydisc_formal(alpha))
}

/// Inverse basis bijection ℤ₊ⁿ → 𝓘: α₁ = β₁, α_k = β_k − β_{k−1} − 1.
pub fn from_polydisc(beta: &MultiIndex) -> Result<MultiIndex> {
    if !beta.is_nonnegative() {
        return Err(Error::Domain(format!(
            "{beta} is not in the polydisc basis lattice"
        )));
    }
    let b = beta.entries();
    let mut entries = Vec::with_capacity(b.len());
    entries.push(b[0]);
    for k in 1..b.len() {
        entries.push(b[k] - b[k - 1] - 1);
    }
    Ok(MultiIndex { entries })
}

/// Exponent map induced by composing a monomial with the inverse
/// biholomorphism: δ_k = s_k(γ). Linear and bijective on ℤⁿ.
pub fn exponent_pushforward(gamma: &MultiIndex) -> MultiIndex {
    MultiIndex {
        entries: partial_sums(gamma).sums.clone(),
    }
}

/// Inverse of [`exponent_pushforward`]: γ_k = δ_k − δ_{k−1} with δ₀ = 0.
pub fn exponent_pullback(delta: &MultiIndex) -> MultiIndex {
    let d = delta.entries();
    let mut entries = Vec::with_capacity(d.len());
    let mut prev = 0i64;
    for &v in d {
        entries.push(v - prev);
        prev = v;
    }
    MultiIndex { entries }
}

/// Which Hardy space an operator acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HardyKind {
    /// H² of the n-dimensional Hartogs triangle, basis lattice 𝓘.
    Triangle,
    /// H² of the unit polydisc, basis lattice ℤ₊ⁿ.
    Polydisc,
}

/// A Hardy space tag: which domain, and the ambient dimension n ≥ 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SpaceKind {
    kind: HardyKind,
    n: usize,
}

impl SpaceKind {
    pub fn new(kind: HardyKind, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!(
                "Hardy space dimension must be at least 2, got {n}"
            )));
        }
        Ok(SpaceKind { kind, n })
    }

    pub fn triangle(n: usize) -> Result<Self> {
        Self::new(HardyKind::Triangle, n)
    }

    pub fn polydisc(n: usize) -> Result<Self> {
        Self::new(HardyKind::Polydisc, n)
    }

    pub fn kind(&self) -> HardyKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Whether the monomial with exponent α belongs to this space's
    /// orthonormal basis.
    pub fn contains(&self, alpha: &MultiIndex) -> bool {
        if alpha.dim() != self.n {
            return false;
        }
        match self.kind {
            HardyKind::Triangle => in_hartogs_basis(alpha),
            HardyKind::Polydisc => alpha.is_nonnegative(),
        }
    }
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            HardyKind::Triangle => write!(f, "triangle(n={})", self.n),
            HardyKind::Polydisc => write!(f, "polydisc(n={})", self.n),
        }
    }
}

/// Enumerates the window basis below the bound m.
///
/// For the polydisc: all β with 0 ≤ β_k ≤ m_k, graded order (total degree,
/// then lexicographic). For the triangle: the image of that list under
/// [`from_polydisc`], in matching order, so that the basis bijection maps
/// the k-th triangle window vector to the k-th polydisc window vector.
pub fn enumerate_window(m: &MultiIndex, space: SpaceKind) -> Result<Vec<MultiIndex>> {
    if m.dim() != space.n() {
        return Err(Error::DimensionMismatch {
            expected: space.n(),
            got: m.dim(),
        });
    }
    if !m.is_nonnegative() {
        return Err(Error::Domain(format!("window bound {m} has a negative entry")));
    }
    let mut boxed = Vec::new();
    let mut cursor = vec![0i64; m.dim()];
    loop {
        boxed.push(MultiIndex {
            entries: cursor.clone(),
        });
        // mixed-radix increment over the box
        let mut k = m.dim();
        loop {
            if k == 0 {
                break;
            }
            k -= 1;
            if cursor[k] < m.entries()[k] {
                cursor[k] += 1;
                for c in cursor.iter_mut().skip(k + 1) {
                    *c = 0;
                }
                break;
            }
            if k == 0 {
                let order = |a: &MultiIndex, b: &MultiIndex| {
                    (a.total(), a.entries()).cmp(&(b.total(), b.entries()))
                };
                boxed.sort_by(order);
                return match space.kind() {
                    HardyKind::Polydisc => Ok(boxed),
                    HardyKind::Triangle => boxed.iter().map(from_polydisc).collect(),
                };
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mi(entries: &[i64]) -> MultiIndex {
        MultiIndex::new(entries.to_vec()).unwrap()
    }

    #[test]
    fn partial_sums_examples() {
        assert_eq!(partial_sums(&mi(&[0, -1])).sums(), &[0, -1]);
        assert_eq!(partial_sums(&mi(&[1, -1, 0])).sums(), &[1, 0, 0]);
        assert_eq!(partial_sums(&mi(&[0, 0])).sums(), &[0, 0]);
    }

    #[test]
    fn hartogs_membership_examples() {
        assert!(in_hartogs_basis(&mi(&[0, -1])));
        assert!(!in_hartogs_basis(&mi(&[-1, 0])));
        assert!(in_hartogs_basis(&mi(&[1, -1])));
    }

    #[test]
    fn analytic_cone_examples() {
        assert!(in_analytic_cone(&mi(&[1, -1])));
        assert!(!in_analytic_cone(&mi(&[0, -1])));
        assert!(in_analytic_cone(&mi(&[0, 0])));
        assert!(in_analytic_cone(&mi(&[0, 0, 0])));
    }

    #[test]
    fn to_polydisc_examples() {
        assert_eq!(to_polydisc(&mi(&[0, -1])).unwrap(), mi(&[0, 0]));
        assert_eq!(to_polydisc(&mi(&[1, -1, 0])).unwrap(), mi(&[1, 1, 2]));
        assert_eq!(to_polydisc(&mi(&[0, 0])).unwrap(), mi(&[0, 1]));
        assert_eq!(to_polydisc(&mi(&[0, 0, 0])).unwrap(), mi(&[0, 1, 2]));
        assert!(to_polydisc(&mi(&[-1, 0])).is_err());
    }

    #[test]
    fn from_polydisc_examples() {
        assert_eq!(from_polydisc(&mi(&[0, 0])).unwrap(), mi(&[0, -1]));
        assert_eq!(from_polydisc(&mi(&[1, 1, 2])).unwrap(), mi(&[1, -1, 0]));
        assert_eq!(from_polydisc(&mi(&[0, 1])).unwrap(), mi(&[0, 0]));
        assert!(from_polydisc(&mi(&[0, -1])).is_err());
    }

    #[test]
    fn pushforward_examples() {
        assert_eq!(exponent_pushforward(&mi(&[1, -1])), mi(&[1, 0]));
        assert_eq!(exponent_pushforward(&mi(&[-1, 3])), mi(&[-1, 2]));
        assert_eq!(exponent_pushforward(&mi(&[0, 0])), mi(&[0, 0]));
    }

    #[test]
    fn pullback_examples() {
        assert_eq!(exponent_pullback(&mi(&[1, 0])), mi(&[1, -1]));
        assert_eq!(exponent_pullback(&mi(&[0, 1])), mi(&[0, 1]));
        assert_eq!(exponent_pullback(&mi(&[0, 0])), mi(&[0, 0]));
    }

    #[test]
    fn window_examples() {
        let poly = SpaceKind::polydisc(2).unwrap();
        let tri = SpaceKind::triangle(2).unwrap();
        assert_eq!(
            enumerate_window(&mi(&[1, 0]), poly).unwrap(),
            vec![mi(&[0, 0]), mi(&[1, 0])]
        );
        assert_eq!(
            enumerate_window(&mi(&[1, 0]), tri).unwrap(),
            vec![mi(&[0, -1]), mi(&[1, -2])]
        );
        assert_eq!(enumerate_window(&mi(&[0, 0]), poly).unwrap().len(), 1);
        assert_eq!(enumerate_window(&mi(&[0, 0]), tri).unwrap().len(), 1);
        assert!(enumerate_window(&mi(&[-1, 0]), poly).is_err());
    }

    #[test]
    fn window_is_graded_then_lex() {
        let poly = SpaceKind::polydisc(2).unwrap();
        let w = enumerate_window(&mi(&[1, 1]), poly).unwrap();
        assert_eq!(w, vec![mi(&[0, 0]), mi(&[0, 1]), mi(&[1, 0]), mi(&[1, 1])]);
    }

    #[test]
    fn dimension_below_two_rejected() {
        assert!(MultiIndex::new(vec![3]).is_err());
        assert!(MultiIndex::new(vec![]).is_err());
        assert!(SpaceKind::triangle(1).is_err());
    }

    prop_compose! {
        fn arb_exponent(n: usize)(entries in prop::collection::vec(-6i64..=6, n..=n)) -> MultiIndex {
            MultiIndex::new(entries).unwrap()
        }
    }

    prop_compose! {
        fn arb_basis_label(n: usize)(entries in prop::collection::vec(0i64..=8, n..=n)) -> MultiIndex {
            // a Hartogs basis label, produced through the inverse bijection
            from_polydisc(&MultiIndex::new(entries).unwrap()).unwrap()
        }
    }

    proptest! {
        #[test]
        fn membership_equals_formal_image_nonnegative(alpha in arb_exponent(3)) {
            prop_assert_eq!(
                in_hartogs_basis(&alpha),
                to_polydisc_formal(&alpha).is_nonnegative()
            );
        }

        #[test]
        fn basis_bijection_roundtrip(alpha in arb_basis_label(3)) {
            let beta = to_polydisc(&alpha).unwrap();
            prop_assert!(beta.is_nonnegative());
            prop_assert_eq!(from_polydisc(&beta).unwrap(), alpha);
        }

        #[test]
        fn polydisc_roundtrip(beta in prop::collection::vec(0i64..=8, 2..=4)) {
            let beta = MultiIndex::new(beta).unwrap();
            let alpha = from_polydisc(&beta).unwrap();
            prop_assert!(in_hartogs_basis(&alpha));
            prop_assert_eq!(to_polydisc(&alpha).unwrap(), beta);
        }

        #[test]
        fn pushforward_pullback_are_inverse_additive(
            a in arb_exponent(3),
            b in arb_exponent(3),
        ) {
            let fa = exponent_pushforward(&a);
            let fb = exponent_pushforward(&b);
            prop_assert_eq!(exponent_pullback(&fa), a.clone());
            prop_assert_eq!(
                exponent_pushforward(&a.add(&b).unwrap()),
                fa.add(&fb).unwrap()
            );
            let zero = MultiIndex::zero(3).unwrap();
            prop_assert_eq!(exponent_pushforward(&zero), MultiIndex::zero(3).unwrap());
            prop_assert_eq!(exponent_pullback(&exponent_pushforward(&b)), b);
        }

        #[test]
        fn shift_closure_and_image(alpha in arb_basis_label(3), j in 1usize..=3) {
            let shifted = alpha.shift_up(j).unwrap();
            prop_assert!(in_hartogs_basis(&shifted));
            // to_polydisc(α+ε_j) = to_polydisc(α) + Σ_{k≥j} ε_k
            let mut expect = to_polydisc(&alpha).unwrap();
            for k in j..=3 {
                expect = expect.shift_up(k).unwrap();
            }
            prop_assert_eq!(to_polydisc(&shifted).unwrap(), expect);
        }

        #[test]
        fn cone_is_additive_and_multiplies_basis(
            d1 in prop::collection::vec(0i64..=5, 3..=3),
            d2 in prop::collection::vec(0i64..=5, 3..=3),
            alpha in arb_basis_label(3),
        ) {
            // cone elements are exactly pullbacks of nonnegative exponents
            let g1 = exponent_pullback(&MultiIndex::new(d1).unwrap());
            let g2 = exponent_pullback(&MultiIndex::new(d2).unwrap());
            prop_assert!(in_analytic_cone(&g1));
            prop_assert!(in_analytic_cone(&g2));
            prop_assert!(in_analytic_cone(&g1.add(&g2).unwrap()));
            prop_assert!(in_hartogs_basis(&g1.add(&alpha).unwrap()));
        }

        #[test]
        fn cone_is_contained_in_hartogs_lattice(alpha in arb_exponent(3)) {
            if in_analytic_cone(&alpha) {
                prop_assert!(in_hartogs_basis(&alpha));
            }
        }

        #[test]
        fn window_enumeration_deterministic_and_matched(
            m in prop::collection::vec(0i64..=3, 2..=3),
        ) {
            let n = m.len();
            let m = MultiIndex::new(m).unwrap();
            let poly = SpaceKind::polydisc(n).unwrap();
            let tri = SpaceKind::triangle(n).unwrap();
            let w1 = enumerate_window(&m, poly).unwrap();
            let w2 = enumerate_window(&m, poly).unwrap();
            prop_assert_eq!(&w1, &w2);
            let wt = enumerate_window(&m, tri).unwrap();
            prop_assert_eq!(w1.len(), wt.len());
            for (b, a) in w1.iter().zip(&wt) {
                prop_assert_eq!(&to_polydisc(a).unwrap(), b);
                prop_assert!(tri.contains(a));
                prop_assert!(poly.contains(b));
            }
        }
    }
}
