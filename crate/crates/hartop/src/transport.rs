//! The unitary between the two Hardy spaces, acting on exponents.
//!
//! The biholomorphism φ(z) = (z₁/z₂, …, z_{n−1}/z_n, z_n) from the
//! triangle to 𝔻 × 𝔻ⁿ⁻¹ induces a unitary of Hardy spaces
//! Ψ(f) = J_{φ⁻¹} · f∘φ⁻¹, where the Jacobian factor is the monomial
//! J_{φ⁻¹} = Π_{j=2}^n z_j^{j−1}. On a boundary monomial z^γ this is
//! pure exponent bookkeeping: pushforward plus the Jacobian offset
//! (0, 1, …, n−1). Ψ extends to all of L²(𝕋ⁿ) as an exponent
//! bijection, intertwines the two orthogonal projections, and maps the
//! triangle basis bijectively onto the polydisc basis.
//!
//! Conjugating a Toeplitz operator by Ψ replaces its symbol by the
//! symbol's pushforward; the Jacobian offsets cancel and never appear.

use crate::error::{Error, Result};
use crate::lattice::{
    exponent_pullback, exponent_pushforward, in_hartogs_basis, MultiIndex,
};
use crate::symbol::LaurentSymbol;
use crate::verify::report::{CheckReport, Counterexample};
use std::collections::BTreeMap;

/// The unitary Ψ: H²(∂△ₙ) → H²(∂𝔻ⁿ) as an exponent bijection of ℤⁿ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiMap {
    n: usize,
    offset: MultiIndex,
}

impl PsiMap {
    pub fn new(n: usize) -> Result<Self> {
        let offset = MultiIndex::new((0..n as i64).collect())?;
        Ok(PsiMap { n, offset })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Exponent of the Jacobian monomial J_{φ⁻¹}: entry k is k−1.
    pub fn jacobian_offset(&self) -> &MultiIndex {
        &self.offset
    }

    fn check_dim(&self, gamma: &MultiIndex) -> Result<()> {
        if gamma.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: gamma.dim(),
            });
        }
        Ok(())
    }

    /// Where Ψ sends the monomial z^γ: pushforward(γ) + offset.
    /// A bijection of ℤⁿ restricting to the basis bijection on 𝓘.
    pub fn psi_monomial(&self, gamma: &MultiIndex) -> Result<MultiIndex> {
        self.check_dim(gamma)?;
        exponent_pushforward(gamma).add(&self.offset)
    }

    /// Inverse bijection: pullback(δ − offset).
    pub fn psi_inverse_monomial(&self, delta: &MultiIndex) -> Result<MultiIndex> {
        self.check_dim(delta)?;
        Ok(exponent_pullback(&delta.sub(&self.offset)?))
    }

    /// The L² extension of Ψ on a finite combination: every exponent
    /// moves through [`PsiMap::psi_monomial`], coefficients unchanged.
    /// Unitary because the exponent map is a bijection of ℤⁿ.
    pub fn transport(&self, v: &crate::operators::LinearCombination) -> Result<crate::operators::LinearCombination> {
        let terms = v
            .terms()
            .map(|(g, c)| Ok((self.psi_monomial(g)?, c.clone())))
            .collect::<Result<Vec<_>>>()?;
        crate::operators::LinearCombination::from_terms(self.n, terms)
    }

    /// The L² extension of Ψ⁻¹ on a finite combination.
    pub fn transport_inverse(&self, v: &crate::operators::LinearCombination) -> Result<crate::operators::LinearCombination> {
        let terms = v
            .terms()
            .map(|(g, c)| Ok((self.psi_inverse_monomial(g)?, c.clone())))
            .collect::<Result<Vec<_>>>()?;
        crate::operators::LinearCombination::from_terms(self.n, terms)
    }

    /// The polydisc symbol whose Toeplitz operator is the Ψ-conjugate
    /// of the triangle one: the symbol's pushforward. The Jacobian
    /// offsets from Ψ and Ψ⁻¹ cancel, so no offset appears here.
    pub fn conjugated_symbol(&self, phi: &LaurentSymbol) -> Result<LaurentSymbol> {
        if phi.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: phi.n(),
            });
        }
        Ok(phi.pushforward())
    }

    /// Verifies Ψ P_triangle Ψ⁻¹ = P_polydisc on every monomial z^γ
    /// with |γ_k| ≤ bound_k, exactly: γ survives the triangle
    /// projection iff its Ψ-image survives the polydisc projection.
    pub fn check_projection_relation(&self, bound: &MultiIndex) -> Result<CheckReport> {
        self.check_dim(bound)?;
        if !bound.is_nonnegative() {
            return Err(Error::Domain(format!(
                "projection bound {bound} has a negative entry"
            )));
        }
        let mut params = BTreeMap::new();
        params.insert("n".to_string(), self.n.to_string());
        params.insert("bound".to_string(), bound.to_string());

        let mut cases = 0u64;
        let mut cursor: Vec<i64> = bound.entries().iter().map(|b| -b).collect();
        loop {
            let gamma = MultiIndex::new(cursor.clone())?;
            cases += 1;
            let kept_triangle = in_hartogs_basis(&gamma);
            let image = self.psi_monomial(&gamma)?;
            let kept_polydisc = image.is_nonnegative();
            if kept_triangle != kept_polydisc {
                return Ok(CheckReport::fail(
                    "projection-relation",
                    params,
                    cases,
                    Counterexample {
                        input: format!("monomial exponent {gamma}"),
                        expected: format!(
                            "triangle projection verdict {kept_triangle} on both sides"
                        ),
                        actual: format!(
                            "polydisc projection verdict {kept_polydisc} at image {image}"
                        ),
                    },
                ));
            }
            // advance the box counter
            let mut k = self.n;
            loop {
                if k == 0 {
                    params.insert("monomials".to_string(), cases.to_string());
                    return Ok(CheckReport::pass("projection-relation", params, cases));
                }
                k -= 1;
                if cursor[k] < bound.entries()[k] {
                    cursor[k] += 1;
                    for (c, b) in cursor.iter_mut().zip(bound.entries()).skip(k + 1) {
                        *c = -b;
                    }
                    break;
                }
                if k == 0 {
                    params.insert("monomials".to_string(), cases.to_string());
                    return Ok(CheckReport::pass("projection-relation", params, cases));
                }
            }
        }
    }
}
