//! Exact operators on Hardy spaces of the triangle and the polydisc.
//!
//! Toeplitz, Hankel and coordinate-multiplication operators act on
//! finite linear combinations of boundary monomials, always exactly and
//! always lazily: identities are checked on basis vectors through the
//! genuine infinite-dimensional action (finite symbols have finite
//! bandwidth, so each image is a finite combination), never through
//! finite sections. Window compressions exist separately for matrix
//! export and adjoint cross-checks.
//!
//! Adjoints are evaluated through the defining inner-product relation,
//! not through symbol conjugation, so adjoint identities compare two
//! independent computations.

use crate::coeff::{coeff_conj, coeff_is_zero, coeff_zero, Coeff};
use crate::error::{Error, Result};
use crate::lattice::{enumerate_window, MultiIndex, SpaceKind};
use crate::symbol::LaurentSymbol;
use std::collections::BTreeMap;
use std::fmt;

/// A finite combination Σ c_γ e_γ of boundary monomials of L²(𝕋ⁿ).
///
/// Supports may lie inside a Hardy basis lattice, in its complement,
/// or across both; projections and operator actions sort that out.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearCombination {
    n: usize,
    terms: BTreeMap<MultiIndex, Coeff>,
}

impl LinearCombination {
    pub fn zero(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!(
                "combination dimension must be at least 2, got {n}"
            )));
        }
        Ok(LinearCombination {
            n,
            terms: BTreeMap::new(),
        })
    }

    /// The single basis monomial e_α.
    pub fn basis_vector(alpha: MultiIndex) -> Self {
        let n = alpha.dim();
        let mut terms = BTreeMap::new();
        terms.insert(alpha, crate::coeff::coeff_one());
        LinearCombination { n, terms }
    }

    pub fn from_terms(n: usize, terms: Vec<(MultiIndex, Coeff)>) -> Result<Self> {
        let mut v = Self::zero(n)?;
        for (gamma, c) in terms {
            if gamma.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: gamma.dim(),
                });
            }
            let entry = v.terms.entry(gamma.clone()).or_insert_with(coeff_zero);
            *entry = entry.clone() + c;
            if coeff_is_zero(entry) {
                v.terms.remove(&gamma);
            }
        }
        Ok(v)
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

    pub fn coefficient(&self, gamma: &MultiIndex) -> Coeff {
        self.terms.get(gamma).cloned().unwrap_or_else(coeff_zero)
    }

    /// Terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Coeff)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &MultiIndex> {
        self.terms.keys()
    }

    /// Whether every support exponent lies in the space's basis.
    pub fn supported_in(&self, space: SpaceKind) -> bool {
        self.terms.keys().all(|g| space.contains(g))
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        if self.n != n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: n,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &LinearCombination) -> Result<LinearCombination> {
        self.check_dim(other.n)?;
        let mut terms = self.terms.clone();
        for (gamma, c) in &other.terms {
            let entry = terms.entry(gamma.clone()).or_insert_with(coeff_zero);
            *entry = entry.clone() + c.clone();
            if coeff_is_zero(entry) {
                terms.remove(gamma);
            }
        }
        Ok(LinearCombination { n: self.n, terms })
    }

    pub fn sub(&self, other: &LinearCombination) -> Result<LinearCombination> {
        self.add(&other.scale(&crate::coeff::coeff_int(-1)))
    }

    pub fn scale(&self, c: &Coeff) -> LinearCombination {
        if coeff_is_zero(c) {
            return LinearCombination {
                n: self.n,
                terms: BTreeMap::new(),
            };
        }
        LinearCombination {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(g, v)| (g.clone(), v.clone() * c.clone()))
                .collect(),
        }
    }

    /// Hermitian inner product ⟨self, other⟩ = Σ_γ self_γ · conj(other_γ),
    /// linear in the first slot.
    pub fn inner(&self, other: &LinearCombination) -> Result<Coeff> {
        self.check_dim(other.n)?;
        let mut acc = coeff_zero();
        // iterate the sparser side
        let (small, big) = if self.terms.len() <= other.terms.len() {
            (&self.terms, &other.terms)
        } else {
            (&other.terms, &self.terms)
        };
        for gamma in small.keys() {
            if let Some(c_other) = big.get(gamma) {
                let (a, b) = if std::ptr::eq(small, &self.terms) {
                    (small[gamma].clone(), c_other.clone())
                } else {
                    (c_other.clone(), small[gamma].clone())
                };
                acc += a * coeff_conj(&b);
            }
        }
        Ok(acc)
    }

    /// Pointwise product of the boundary function φ with this
    /// combination: exact support convolution, landing anywhere in ℤⁿ.
    pub fn multiply_symbol(&self, phi: &LaurentSymbol) -> Result<LinearCombination> {
        self.check_dim(phi.n())?;
        let mut terms: BTreeMap<MultiIndex, Coeff> = BTreeMap::new();
        for (gamma, cg) in phi.terms() {
            for (delta, cd) in &self.terms {
                let target = gamma.add(delta)?;
                let entry = terms.entry(target.clone()).or_insert_with(coeff_zero);
                *entry = entry.clone() + cg.clone() * cd.clone();
                if coeff_is_zero(entry) {
                    terms.remove(&target);
                }
            }
        }
        Ok(LinearCombination { n: self.n, terms })
    }
}

impl fmt::Display for LinearCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (gamma, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let re = crate::coeff::rat_to_string(&c.re);
            let im = crate::coeff::rat_to_string(&c.im);
            write!(f, "({re}, {im})*e{gamma}")?;
        }
        Ok(())
    }
}

/// Orthogonal projection of L²(𝕋ⁿ) onto the space's Hardy subspace:
/// keeps exactly the terms whose exponent lies in the basis lattice.
pub fn project(v: &LinearCombination, space: SpaceKind) -> LinearCombination {
    debug_assert_eq!(v.n(), space.n());
    LinearCombination {
        n: v.n,
        terms: v
            .terms
            .iter()
            .filter(|(g, _)| space.contains(g))
            .map(|(g, c)| (g.clone(), c.clone()))
            .collect(),
    }
}

fn require_basis(space: SpaceKind, alpha: &MultiIndex) -> Result<()> {
    if !space.contains(alpha) {
        return Err(Error::Domain(format!(
            "{alpha} is not a basis exponent of {space}"
        )));
    }
    Ok(())
}

/// T_φ e_α = P(φ·e_α): the symbol's translates clipped to the basis.
pub fn toeplitz_apply(
    phi: &LaurentSymbol,
    space: SpaceKind,
    alpha: &MultiIndex,
) -> Result<LinearCombination> {
    require_basis(space, alpha)?;
    let product = LinearCombination::basis_vector(alpha.clone()).multiply_symbol(phi)?;
    Ok(project(&product, space))
}

/// Matrix element ⟨T_φ e_α, e_β⟩ = φ^(β−α).
pub fn toeplitz_entry(
    phi: &LaurentSymbol,
    space: SpaceKind,
    alpha: &MultiIndex,
    beta: &MultiIndex,
) -> Result<Coeff> {
    require_basis(space, alpha)?;
    require_basis(space, beta)?;
    Ok(phi.coefficient(&beta.sub(alpha)?))
}

/// H_φ e_α = (I−P)(φ·e_α): the part of the translate outside the basis.
pub fn hankel_apply(
    phi: &LaurentSymbol,
    space: SpaceKind,
    alpha: &MultiIndex,
) -> Result<LinearCombination> {
    require_basis(space, alpha)?;
    let product = LinearCombination::basis_vector(alpha.clone()).multiply_symbol(phi)?;
    product.sub(&project(&product, space))
}

/// Coordinate multiplication e_α ↦ e_{α+ε_j}; both basis lattices are
/// closed under upward shifts, so no projection is needed.
pub fn mult_apply(j: usize, space: SpaceKind, alpha: &MultiIndex) -> Result<LinearCombination> {
    require_basis(space, alpha)?;
    if j == 0 || j > space.n() {
        return Err(Error::Domain(format!(
            "coordinate index {j} out of range 1..={}",
            space.n()
        )));
    }
    let shifted = alpha.shift_up(j)?;
    debug_assert!(space.contains(&shifted));
    Ok(LinearCombination::basis_vector(shifted))
}

/// Which side of the Hardy decomposition L² = H² ⊕ (H²)^⊥ an operator
/// input or output lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Hardy,
    Complement,
}

/// (domain, codomain) sides of an expression; scalars are polymorphic
/// and carry no signature.
pub type Signature = (Side, Side);

#[derive(Clone, Debug)]
enum Node {
    Toeplitz(LaurentSymbol, SpaceKind),
    Hankel(LaurentSymbol, SpaceKind),
    Mult(usize, SpaceKind),
    Identity(SpaceKind),
    Scalar(Coeff),
    Adjoint(Box<Node>),
    /// Factors compose right-to-left: the last factor acts first.
    Product(Vec<Node>),
    Sum(Vec<Node>),
}

/// A symbolic operator: compositions, sums, scalings and adjoints of
/// Toeplitz, Hankel, coordinate-multiplication and identity leaves.
///
/// Construction validates that all leaves share one space and that
/// domain and codomain sides match along every product and sum, so an
/// ill-typed composition (a Toeplitz operator directly after a Hankel
/// operator, say) is rejected before it can be applied.
#[derive(Clone, Debug)]
pub struct OperatorExpr {
    node: Node,
    space: Option<SpaceKind>,
    signature: Option<Signature>,
}

impl OperatorExpr {
    pub fn toeplitz(phi: LaurentSymbol, space: SpaceKind) -> Result<Self> {
        if phi.n() != space.n() {
            return Err(Error::DimensionMismatch {
                expected: space.n(),
                got: phi.n(),
            });
        }
        Ok(OperatorExpr {
            node: Node::Toeplitz(phi, space),
            space: Some(space),
            signature: Some((Side::Hardy, Side::Hardy)),
        })
    }

    pub fn hankel(phi: LaurentSymbol, space: SpaceKind) -> Result<Self> {
        if phi.n() != space.n() {
            return Err(Error::DimensionMismatch {
                expected: space.n(),
                got: phi.n(),
            });
        }
        Ok(OperatorExpr {
            node: Node::Hankel(phi, space),
            space: Some(space),
            signature: Some((Side::Hardy, Side::Complement)),
        })
    }

    pub fn mult(j: usize, space: SpaceKind) -> Result<Self> {
        if j == 0 || j > space.n() {
            return Err(Error::Domain(format!(
                "coordinate index {j} out of range 1..={}",
                space.n()
            )));
        }
        Ok(OperatorExpr {
            node: Node::Mult(j, space),
            space: Some(space),
            signature: Some((Side::Hardy, Side::Hardy)),
        })
    }

    pub fn identity(space: SpaceKind) -> Self {
        OperatorExpr {
            node: Node::Identity(space),
            space: Some(space),
            signature: Some((Side::Hardy, Side::Hardy)),
        }
    }

    pub fn scalar(c: Coeff) -> Self {
        OperatorExpr {
            node: Node::Scalar(c),
            space: None,
            signature: None,
        }
    }

    pub fn adjoint(self) -> Self {
        OperatorExpr {
            node: Node::Adjoint(Box::new(self.node)),
            space: self.space,
            signature: self.signature.map(|(d, c)| (c, d)),
        }
    }

    /// Composition: factors act right-to-left (the last factor first).
    pub fn product(factors: Vec<OperatorExpr>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::IllFormedExpression(
                "product of zero factors".into(),
            ));
        }
        let space = unify_spaces(factors.iter().map(|f| f.space))?;
        let mut signature: Option<Signature> = None;
        for f in factors.iter().rev() {
            signature = match (f.signature, signature) {
                (None, acc) => acc,
                (sig, None) => sig,
                (Some((fd, fc)), Some((ad, ac))) => {
                    if fd != ac {
                        return Err(Error::IllFormedExpression(format!(
                            "composition mismatch: factor expects {fd:?} input but receives {ac:?}"
                        )));
                    }
                    Some((ad, fc))
                }
            };
        }
        Ok(OperatorExpr {
            node: Node::Product(factors.into_iter().map(|f| f.node).collect()),
            space,
            signature,
        })
    }

    pub fn sum(terms: Vec<OperatorExpr>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::IllFormedExpression("sum of zero terms".into()));
        }
        let space = unify_spaces(terms.iter().map(|t| t.space))?;
        let mut signature: Option<Signature> = None;
        for t in &terms {
            signature = match (t.signature, signature) {
                (None, acc) => acc,
                (sig, None) => sig,
                (Some(s), Some(a)) => {
                    if s != a {
                        return Err(Error::IllFormedExpression(format!(
                            "sum of mismatched signatures {s:?} and {a:?}"
                        )));
                    }
                    Some(s)
                }
            };
        }
        Ok(OperatorExpr {
            node: Node::Sum(terms.into_iter().map(|t| t.node).collect()),
            space,
            signature,
        })
    }

    /// self composed k times; k = 0 gives the identity on the
    /// expression's space.
    pub fn power(&self, k: usize) -> Result<Self> {
        if k == 0 {
            let space = self.space.ok_or_else(|| {
                Error::IllFormedExpression("zeroth power of a scalar expression".into())
            })?;
            return Ok(Self::identity(space));
        }
        Self::product(vec![self.clone(); k])
    }

    /// Difference self − other.
    pub fn minus(self, other: OperatorExpr) -> Result<Self> {
        let negated = Self::product(vec![Self::scalar(crate::coeff::coeff_int(-1)), other])?;
        Self::sum(vec![self, negated])
    }

    /// The common space of the leaves (None for purely scalar trees).
    pub fn space(&self) -> Option<SpaceKind> {
        self.space
    }

    /// (domain, codomain) sides (None for purely scalar trees).
    pub fn signature(&self) -> Option<Signature> {
        self.signature
    }

    /// Applies the operator to the basis vector e_α.
    pub fn apply(&self, alpha: &MultiIndex) -> Result<LinearCombination> {
        let space = self.space.ok_or_else(|| {
            Error::IllFormedExpression("cannot apply a purely scalar expression".into())
        })?;
        if self.signature.map(|(d, _)| d) == Some(Side::Complement) {
            return Err(Error::IllFormedExpression(
                "expression expects input from the orthocomplement, not a basis vector".into(),
            ));
        }
        require_basis(space, alpha)?;
        eval(&self.node, &LinearCombination::basis_vector(alpha.clone()))
    }

    /// Applies the operator to a finite combination.
    pub fn apply_to(&self, v: &LinearCombination) -> Result<LinearCombination> {
        if let Some(space) = self.space {
            if v.n() != space.n() {
                return Err(Error::DimensionMismatch {
                    expected: space.n(),
                    got: v.n(),
                });
            }
        }
        eval(&self.node, v)
    }

    /// Finite-section compression P_W self P_W over the window basis:
    /// entry (r, c) is ⟨self e_{labels[c]}, e_{labels[r]}⟩, exactly.
    pub fn window_matrix(&self, m: &MultiIndex) -> Result<WindowMatrix> {
        let space = self.space.ok_or_else(|| {
            Error::IllFormedExpression("cannot compress a purely scalar expression".into())
        })?;
        match self.signature {
            None | Some((Side::Hardy, Side::Hardy)) => {}
            Some(sig) => {
                return Err(Error::IllFormedExpression(format!(
                    "window compression needs a Hardy-to-Hardy expression, got {sig:?}"
                )));
            }
        }
        let labels = enumerate_window(m, space)?;
        let dim = labels.len();
        let mut entries = vec![vec![coeff_zero(); dim]; dim];
        for (c, alpha) in labels.iter().enumerate() {
            let image = self.apply(alpha)?;
            for (r, beta) in labels.iter().enumerate() {
                entries[r][c] = image.coefficient(beta);
            }
        }
        Ok(WindowMatrix { labels, entries })
    }
}

fn unify_spaces<I: Iterator<Item = Option<SpaceKind>>>(spaces: I) -> Result<Option<SpaceKind>> {
    let mut acc: Option<SpaceKind> = None;
    for s in spaces {
        acc = match (acc, s) {
            (None, s) => s,
            (a, None) => a,
            (Some(a), Some(b)) => {
                if a != b {
                    return Err(Error::IllFormedExpression(format!(
                        "mixed spaces {a} and {b} in one expression"
                    )));
                }
                Some(a)
            }
        };
    }
    Ok(acc)
}

fn eval(node: &Node, v: &LinearCombination) -> Result<LinearCombination> {
    match node {
        Node::Identity(space) => {
            debug_assert_eq!(space.n(), v.n());
            Ok(v.clone())
        }
        Node::Scalar(c) => Ok(v.scale(c)),
        Node::Toeplitz(phi, space) => {
            let product = v.multiply_symbol(phi)?;
            Ok(project(&product, *space))
        }
        Node::Hankel(phi, space) => {
            let product = v.multiply_symbol(phi)?;
            product.sub(&project(&product, *space))
        }
        Node::Mult(j, _) => {
            let terms = v
                .terms()
                .map(|(g, c)| Ok((g.shift_up(*j)?, c.clone())))
                .collect::<Result<Vec<_>>>()?;
            LinearCombination::from_terms(v.n(), terms)
        }
        Node::Adjoint(inner) => eval_adjoint(inner, v),
        Node::Product(factors) => {
            let mut acc = v.clone();
            for f in factors.iter().rev() {
                acc = eval(f, &acc)?;
            }
            Ok(acc)
        }
        Node::Sum(terms) => {
            let mut acc = LinearCombination::zero(v.n())?;
            for t in terms {
                acc = acc.add(&eval(t, v)?)?;
            }
            Ok(acc)
        }
    }
}

/// Applies the adjoint of `node` to v.
///
/// Toeplitz and Hankel adjoints go through the defining relation
/// ⟨A* v, e_β⟩ = ⟨v, A e_β⟩ over the finite candidate set
/// {δ − γ : δ ∈ supp v, γ ∈ supp φ} ∩ basis; this is deliberately a
/// different code path from symbol conjugation, so adjoint identities
/// compare independent computations. Multiplication adjoints co-shift
/// and drop exponents that leave the basis.
fn eval_adjoint(node: &Node, v: &LinearCombination) -> Result<LinearCombination> {
    match node {
        Node::Identity(_) => Ok(v.clone()),
        Node::Scalar(c) => Ok(v.scale(&coeff_conj(c))),
        Node::Toeplitz(phi, space) => adjoint_by_inner_products(phi, *space, v, false),
        Node::Hankel(phi, space) => adjoint_by_inner_products(phi, *space, v, true),
        Node::Mult(j, space) => {
            let terms = v
                .terms()
                .filter_map(|(g, c)| match g.shift_down(*j) {
                    Ok(down) if space.contains(&down) => Some(Ok((down, c.clone()))),
                    Ok(_) => None,
                    Err(e) => Some(Err(e)),
                })
                .collect::<Result<Vec<_>>>()?;
            LinearCombination::from_terms(v.n(), terms)
        }
        Node::Adjoint(inner) => eval(inner, v),
        Node::Product(factors) => {
            // (A∘B)* = B*∘A*: take adjoints in original factor order
            let mut acc = v.clone();
            for f in factors {
                acc = eval_adjoint(f, &acc)?;
            }
            Ok(acc)
        }
        Node::Sum(terms) => {
            let mut acc = LinearCombination::zero(v.n())?;
            for t in terms {
                acc = acc.add(&eval_adjoint(t, v)?)?;
            }
            Ok(acc)
        }
    }
}

fn adjoint_by_inner_products(
    phi: &LaurentSymbol,
    space: SpaceKind,
    v: &LinearCombination,
    hankel: bool,
) -> Result<LinearCombination> {
    let mut candidates = std::collections::BTreeSet::new();
    for delta in v.support() {
        for gamma in phi.support() {
            let beta = delta.sub(gamma)?;
            if space.contains(&beta) {
                candidates.insert(beta);
            }
        }
    }
    let mut terms = Vec::new();
    for beta in candidates {
        let image = if hankel {
            hankel_apply(phi, space, &beta)?
        } else {
            toeplitz_apply(phi, space, &beta)?
        };
        let c = v.inner(&image)?;
        if !coeff_is_zero(&c) {
            terms.push((beta, c));
        }
    }
    LinearCombination::from_terms(v.n(), terms)
}

/// An exact finite-section matrix together with its basis labels.
///
/// Row and column labels coincide (one window, both sides); entry
/// (r, c) is ⟨A e_{labels[c]}, e_{labels[r]}⟩.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowMatrix {
    labels: Vec<MultiIndex>,
    entries: Vec<Vec<Coeff>>,
}

impl WindowMatrix {
    pub fn labels(&self) -> &[MultiIndex] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> &Coeff {
        &self.entries[row][col]
    }

    pub fn rows(&self) -> &[Vec<Coeff>] {
        &self.entries
    }

    pub fn conjugate_transpose(&self) -> WindowMatrix {
        let dim = self.dim();
        let mut entries = vec![vec![coeff_zero(); dim]; dim];
        for (r, row) in self.entries.iter().enumerate() {
            for (c, val) in row.iter().enumerate() {
                entries[c][r] = coeff_conj(val);
            }
        }
        WindowMatrix {
            labels: self.labels.clone(),
            entries,
        }
    }
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

    fn e(entries: &[i64]) -> LinearCombination {
        LinearCombination::basis_vector(mi(entries))
    }

    fn tri(n: usize) -> SpaceKind {
        SpaceKind::triangle(n).unwrap()
    }

    fn poly(n: usize) -> SpaceKind {
        SpaceKind::polydisc(n).unwrap()
    }

    #[test]
    fn project_examples() {
        // z̄₁z₂³ is orthogonal to the triangle Hardy space
        assert!(project(&e(&[-1, 3]), tri(2)).is_zero());
        assert_eq!(project(&e(&[0, -1]), tri(2)), e(&[0, -1]));
        assert!(project(&e(&[-1, 0]), poly(2)).is_zero());
    }

    #[test]
    fn project_is_idempotent_and_symmetric() {
        let v = LinearCombination::from_terms(
            2,
            vec![
                (mi(&[0, -1]), coeff_int(2)),
                (mi(&[-1, 3]), coeff_int(5)),
                (mi(&[1, 1]), coeff(rat(1, 2), rat(1, 3))),
            ],
        )
        .unwrap();
        let w = LinearCombination::from_terms(
            2,
            vec![(mi(&[-1, 3]), coeff_int(1)), (mi(&[1, 1]), coeff_int(7))],
        )
        .unwrap();
        let p = project(&v, tri(2));
        assert_eq!(project(&p, tri(2)), p);
        assert_eq!(
            project(&v, tri(2)).inner(&w).unwrap(),
            v.inner(&project(&w, tri(2))).unwrap()
        );
    }

    #[test]
    fn toeplitz_apply_examples() {
        // φ = z̄₁z₂³ annihilates the constant on the triangle
        let phi = mono(&[-1, 3]);
        assert!(toeplitz_apply(&phi, tri(2), &mi(&[0, 0])).unwrap().is_zero());
        // and so does its conjugate
        assert!(toeplitz_apply(&phi.conjugate(), tri(2), &mi(&[0, 0]))
            .unwrap()
            .is_zero());

        let shift = mono(&[1, -1]);
        assert_eq!(
            toeplitz_apply(&shift, tri(2), &mi(&[0, 0])).unwrap(),
            e(&[1, -1])
        );

        let one = LaurentSymbol::constant(2, coeff_one()).unwrap();
        assert_eq!(
            toeplitz_apply(&one, tri(2), &mi(&[2, -1])).unwrap(),
            e(&[2, -1])
        );
        assert!(toeplitz_apply(&one, tri(2), &mi(&[-1, 0])).is_err());
    }

    #[test]
    fn toeplitz_entry_examples() {
        let shift = mono(&[1, -1]);
        assert_eq!(
            toeplitz_entry(&shift, tri(2), &mi(&[0, 0]), &mi(&[1, -1])).unwrap(),
            coeff_one()
        );
        assert_eq!(
            toeplitz_entry(&shift, tri(2), &mi(&[0, 0]), &mi(&[0, 0])).unwrap(),
            coeff_zero()
        );
        let c = LaurentSymbol::constant(2, coeff(rat(5, 2), rat_int(0))).unwrap();
        assert_eq!(
            toeplitz_entry(&c, tri(2), &mi(&[3, -2]), &mi(&[3, -2])).unwrap(),
            coeff(rat(5, 2), rat_int(0))
        );
    }

    #[test]
    fn hankel_apply_examples() {
        let phi = mono(&[-1, 3]);
        assert_eq!(
            hankel_apply(&phi, tri(2), &mi(&[0, 0])).unwrap(),
            e(&[-1, 3])
        );
        // analytic-cone monomials never leave the basis
        let cone = mono(&[1, -1]);
        for alpha in [mi(&[0, 0]), mi(&[0, -1]), mi(&[3, -2])] {
            assert!(hankel_apply(&cone, tri(2), &alpha).unwrap().is_zero());
        }
        let one = LaurentSymbol::constant(2, coeff_one()).unwrap();
        assert!(hankel_apply(&one, tri(2), &mi(&[0, -1])).unwrap().is_zero());
    }

    #[test]
    fn toeplitz_hankel_split_the_product() {
        let phi = LaurentSymbol::from_terms(
            2,
            vec![
                (mi(&[-1, 3]), coeff_int(2)),
                (mi(&[0, -1]), coeff(rat(1, 3), rat_int(1))),
                (mi(&[1, 0]), coeff_int(-1)),
            ],
        )
        .unwrap();
        let alpha = mi(&[0, -1]);
        let full = LinearCombination::basis_vector(alpha.clone())
            .multiply_symbol(&phi)
            .unwrap();
        let t = toeplitz_apply(&phi, tri(2), &alpha).unwrap();
        let h = hankel_apply(&phi, tri(2), &alpha).unwrap();
        assert_eq!(t.add(&h).unwrap(), full);
        assert!(t.supported_in(tri(2)));
        assert!(h.support().all(|g| !tri(2).contains(g)));
    }

    #[test]
    fn mult_apply_examples() {
        assert_eq!(mult_apply(2, tri(2), &mi(&[0, -1])).unwrap(), e(&[0, 0]));
        assert_eq!(mult_apply(1, poly(2), &mi(&[0, 0])).unwrap(), e(&[1, 0]));
        assert_eq!(mult_apply(1, tri(2), &mi(&[0, -1])).unwrap(), e(&[1, -1]));
        assert!(mult_apply(3, tri(2), &mi(&[0, -1])).is_err());
    }

    #[test]
    fn expression_apply_examples() {
        let sp = tri(2);
        let id = OperatorExpr::identity(sp);
        assert_eq!(id.apply(&mi(&[0, -1])).unwrap(), e(&[0, -1]));

        // 𝓜*₂ 𝓜₂ = I on the triangle
        let m2 = OperatorExpr::mult(2, sp).unwrap();
        let comp = OperatorExpr::product(vec![m2.clone().adjoint(), m2.clone()]).unwrap();
        assert_eq!(comp.apply(&mi(&[3, -2])).unwrap(), e(&[3, -2]));

        // I − 𝓜₂𝓜*₂ fixes the corner vector e_{(0,−1)}
        let t = OperatorExpr::identity(sp)
            .minus(OperatorExpr::product(vec![m2.clone(), m2.adjoint()]).unwrap())
            .unwrap();
        assert_eq!(t.apply(&mi(&[0, -1])).unwrap(), e(&[0, -1]));
        // and annihilates vectors whose co-shift stays inside
        assert!(t.apply(&mi(&[0, 0])).unwrap().is_zero());
    }

    #[test]
    fn scalar_expressions() {
        let sp = tri(2);
        let c = coeff(rat(1, 2), rat(1, 3));
        let scaled = OperatorExpr::product(vec![
            OperatorExpr::scalar(c.clone()),
            OperatorExpr::identity(sp),
        ])
        .unwrap();
        assert_eq!(
            scaled.apply(&mi(&[0, -1])).unwrap(),
            e(&[0, -1]).scale(&c)
        );
        // adjoint of a scalar conjugates it
        let adj = scaled.adjoint();
        assert_eq!(
            adj.apply(&mi(&[0, -1])).unwrap(),
            e(&[0, -1]).scale(&coeff_conj(&c))
        );
        // purely scalar expressions cannot be applied to basis vectors
        assert!(OperatorExpr::scalar(c).apply(&mi(&[0, -1])).is_err());
    }

    #[test]
    fn ill_typed_products_rejected() {
        let sp = tri(2);
        let t = OperatorExpr::toeplitz(mono(&[1, -1]), sp).unwrap();
        let h = OperatorExpr::hankel(mono(&[0, -1]), sp).unwrap();
        // Toeplitz after Hankel lands in the complement but expects H²
        assert!(OperatorExpr::product(vec![t.clone(), h.clone()]).is_err());
        // with the adjoint in between it typechecks
        let hadj = OperatorExpr::hankel(mono(&[0, -1]), sp).unwrap().adjoint();
        assert!(OperatorExpr::product(vec![t.clone(), hadj, h.clone()]).is_ok());
        // sums of mismatched signatures are rejected
        assert!(OperatorExpr::sum(vec![t, h.clone()]).is_err());
        // mixed spaces are rejected
        let tp = OperatorExpr::toeplitz(mono(&[1, 0]), poly(2)).unwrap();
        let tt = OperatorExpr::toeplitz(mono(&[1, -1]), tri(2)).unwrap();
        assert!(OperatorExpr::product(vec![tp, tt]).is_err());
        // Hankel expressions cannot be window-compressed
        assert!(h.window_matrix(&mi(&[1, 1])).is_err());
    }

    #[test]
    fn hankel_adjoint_satisfies_defining_relation() {
        let sp = tri(2);
        let psi = LaurentSymbol::from_terms(
            2,
            vec![
                (mi(&[-1, 3]), coeff_int(2)),
                (mi(&[0, -2]), coeff(rat(1, 2), rat(2, 3))),
            ],
        )
        .unwrap();
        let h = OperatorExpr::hankel(psi.clone(), sp).unwrap();
        let hadj = h.clone().adjoint();
        for alpha in enumerate_window(&mi(&[2, 2]), sp).unwrap() {
            let g = h.apply(&alpha).unwrap();
            for beta in enumerate_window(&mi(&[2, 2]), sp).unwrap() {
                let f = OperatorExpr::hankel(psi.clone(), sp)
                    .unwrap()
                    .apply(&beta)
                    .unwrap();
                // ⟨H*g, e_β⟩ = ⟨g, H e_β⟩
                let lhs = hadj.apply_to(&g).unwrap().coefficient(&beta);
                let rhs = g.inner(&f).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn window_matrix_examples() {
        let sp = tri(2);
        let id = OperatorExpr::identity(sp);
        let m = id.window_matrix(&mi(&[1, 1])).unwrap();
        assert_eq!(m.dim(), 4);
        for r in 0..4 {
            for c in 0..4 {
                let expect = if r == c { coeff_one() } else { coeff_zero() };
                assert_eq!(*m.entry(r, c), expect);
            }
        }

        // T_{z₁z̄₂} shifts e_{(0,−1)} to e_{(1,−2)}, the other window
        // vector; the image of e_{(1,−2)} leaves the window
        let t = OperatorExpr::toeplitz(mono(&[1, -1]), sp).unwrap();
        let m = t.window_matrix(&mi(&[1, 0])).unwrap();
        assert_eq!(m.dim(), 2);
        assert_eq!(m.labels(), &[mi(&[0, -1]), mi(&[1, -2])]);
        assert_eq!(*m.entry(1, 0), coeff_one());
        assert_eq!(*m.entry(0, 0), coeff_zero());
        assert_eq!(*m.entry(0, 1), coeff_zero());
        assert_eq!(*m.entry(1, 1), coeff_zero());

        let c = coeff(rat(2, 7), rat_int(3));
        let scaled = OperatorExpr::product(vec![
            OperatorExpr::scalar(c.clone()),
            OperatorExpr::identity(sp),
        ])
        .unwrap();
        let m = scaled.window_matrix(&mi(&[1, 1])).unwrap();
        for r in 0..m.dim() {
            for col in 0..m.dim() {
                let expect = if r == col { c.clone() } else { coeff_zero() };
                assert_eq!(*m.entry(r, col), expect);
            }
        }
    }

    fn arb_coeff() -> impl Strategy<Value = Coeff> {
        (-4i64..=4, 1i64..=3, -4i64..=4, 1i64..=3)
            .prop_map(|(pr, qr, pi, qi)| coeff(rat(pr, qr), rat(pi, qi)))
    }

    fn arb_symbol(n: usize) -> impl Strategy<Value = LaurentSymbol> {
        prop::collection::btree_map(
            prop::collection::vec(-3i64..=3, n..=n).prop_map(|v| MultiIndex::new(v).unwrap()),
            arb_coeff(),
            1..5,
        )
        .prop_map(move |m| LaurentSymbol::from_terms(n, m.into_iter().collect()).unwrap())
    }

    fn arb_basis_label(n: usize) -> impl Strategy<Value = MultiIndex> {
        prop::collection::vec(0i64..=5, n..=n).prop_map(|v| {
            crate::lattice::from_polydisc(&MultiIndex::new(v).unwrap()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn toeplitz_entry_depends_only_on_difference(
            phi in arb_symbol(2),
            a in arb_basis_label(2),
            b in arb_basis_label(2),
            shift in prop::collection::vec(0i64..=3, 2..=2),
        ) {
            let sp = tri(2);
            // shift both arguments by the same cone element
            let s = crate::lattice::exponent_pullback(&MultiIndex::new(shift).unwrap());
            let a2 = a.add(&s).unwrap();
            let b2 = b.add(&s).unwrap();
            prop_assert_eq!(
                toeplitz_entry(&phi, sp, &a, &b).unwrap(),
                toeplitz_entry(&phi, sp, &a2, &b2).unwrap()
            );
        }

        #[test]
        fn apply_splits_into_projection_parts(
            phi in arb_symbol(2),
            alpha in arb_basis_label(2),
        ) {
            let sp = tri(2);
            let full = LinearCombination::basis_vector(alpha.clone())
                .multiply_symbol(&phi).unwrap();
            let t = toeplitz_apply(&phi, sp, &alpha).unwrap();
            let h = hankel_apply(&phi, sp, &alpha).unwrap();
            prop_assert_eq!(t.add(&h).unwrap(), full);
            prop_assert!(t.supported_in(sp));
            prop_assert!(h.support().all(|g| !sp.contains(g)));
            prop_assert_eq!(project(&h, sp).is_zero(), true);
        }

        #[test]
        fn adjoint_window_matrix_is_conjugate_transpose(
            phi in arb_symbol(2),
            psi in arb_symbol(2),
            j in 1usize..=2,
        ) {
            let sp = tri(2);
            let m = mi(&[3, 3]);
            let t = OperatorExpr::toeplitz(phi, sp).unwrap();
            let mult = OperatorExpr::mult(j, sp).unwrap();
            let prod = OperatorExpr::product(vec![t.clone(), mult.clone()]).unwrap();
            let s = OperatorExpr::sum(vec![
                OperatorExpr::toeplitz(psi, sp).unwrap(),
                mult,
            ]).unwrap();
            for expr in [t, prod, s] {
                let direct = expr.clone().adjoint().window_matrix(&m).unwrap();
                let transposed = expr.window_matrix(&m).unwrap().conjugate_transpose();
                prop_assert_eq!(direct, transposed);
            }
        }

        #[test]
        fn mult_is_injective_isometry_on_window(
            j in 1usize..=2,
            m in prop::collection::vec(0i64..=3, 2..=2),
        ) {
            let sp = tri(2);
            let m = MultiIndex::new(m).unwrap();
            let mult = OperatorExpr::mult(j, sp).unwrap();
            let mut images = std::collections::BTreeSet::new();
            for alpha in enumerate_window(&m, sp).unwrap() {
                let image = mult.apply(&alpha).unwrap();
                prop_assert_eq!(image.term_count(), 1);
                let (target, c) = image.terms().next()
                    .map(|(g, c)| (g.clone(), c.clone())).unwrap();
                prop_assert!(sp.contains(&target));
                prop_assert_eq!(c, coeff_one());
                prop_assert!(images.insert(target));
            }
        }

        #[test]
        fn cone_monomial_toeplitz_is_pure_shift(
            d in prop::collection::vec(0i64..=4, 2..=2),
            alpha in arb_basis_label(2),
        ) {
            let sp = tri(2);
            let gamma = crate::lattice::exponent_pullback(&MultiIndex::new(d).unwrap());
            let t = toeplitz_apply(&mono(gamma.entries()), sp, &alpha).unwrap();
            prop_assert_eq!(t, LinearCombination::basis_vector(alpha.add(&gamma).unwrap()));
        }

        #[test]
        fn adjoint_of_adjoint_is_identity_action(
            phi in arb_symbol(2),
            alpha in arb_basis_label(2),
        ) {
            let sp = tri(2);
            let t = OperatorExpr::toeplitz(phi.clone(), sp).unwrap();
            let twice = t.clone().adjoint().adjoint();
            prop_assert_eq!(twice.apply(&alpha).unwrap(), t.apply(&alpha).unwrap());
        }
    }
}
