//! The modular group algebra F_p[G] of a finite p-group, dense over the
//! normal-form basis.
//!
//! Elements are coefficient vectors of length |G| indexed by the global
//! rank enumeration of normal forms (lexicographic on exponent vectors).
//! A multiplication table of basis ranks is built once per algebra, so
//! products are convolutions with table lookups. Ideal and subspace
//! computations live in `ideals`, quotient algebras (including the small
//! group algebra) in `quotient`, and normalized-unit machinery in
//! `units`.

mod ideals;
mod quotient;
mod units;

pub use ideals::JenningsCheck;
pub use quotient::{
    quotient_algebra, s0_algebra, small_group_algebra, GroupImage, QuotientAlgebra, QuotientKind,
    QUOTIENT_DIM_CAP,
};
pub use units::{
    a_subgroup_generators, unit_closure, unit_commutator_subgroup, ASubgroupGenerator, UnitStore,
    UNIT_CLOSURE_CAP,
};

use crate::error::{Error, Result};
use crate::linalg::{add_mod, inv_mod, mul_mod, sub_mod};
use crate::pcgroup::{GroupElement, PcGroup};

/// Default cap on |G| for building the dense algebra.
pub const ALGEBRA_DIM_CAP: u64 = 3000;

/// An element of FG as a dense coefficient vector over F_p, indexed by
/// element rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    coeffs: Vec<u32>,
}

impl AlgebraElement {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn support_size(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }
}

/// FG with a precomputed basis multiplication table.
pub struct GroupAlgebra {
    grp: PcGroup,
    dim: usize,
    table: Vec<u32>,
}

impl std::fmt::Debug for GroupAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroupAlgebra")
            .field("group", &self.grp.name())
            .field("dim", &self.dim)
            .finish_non_exhaustive()
    }
}

impl GroupAlgebra {
    /// Builds FG. The group order must not exceed `max_dim` (use
    /// [`ALGEBRA_DIM_CAP`] for the standard limit).
    pub fn new(grp: &PcGroup, max_dim: u64) -> Result<GroupAlgebra> {
        if grp.order() > max_dim {
            return Err(Error::Resource(format!(
                "group order {} exceeds algebra dimension cap {max_dim}",
                grp.order()
            )));
        }
        let dim = grp.order() as usize;
        let mut table = vec![0u32; dim * dim];
        let elements: Vec<GroupElement> = grp.elements().collect();
        for (a, x) in elements.iter().enumerate() {
            for (b, y) in elements.iter().enumerate() {
                let z = grp.try_multiply(x, y)?;
                table[a * dim + b] = grp.rank_of(&z) as u32;
            }
        }
        Ok(GroupAlgebra { grp: grp.clone(), dim, table })
    }

    pub fn group(&self) -> &PcGroup {
        &self.grp
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn p(&self) -> u32 {
        self.grp.p()
    }

    /// Rank of the product of two basis elements.
    pub(crate) fn basis_product(&self, a: usize, b: usize) -> usize {
        self.table[a * self.dim + b] as usize
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement { coeffs: vec![0; self.dim] }
    }

    /// The identity of FG (the group identity has rank 0).
    pub fn one(&self) -> AlgebraElement {
        self.basis_element(0)
    }

    pub fn basis_element(&self, rank: usize) -> AlgebraElement {
        assert!(rank < self.dim, "basis rank out of range");
        let mut coeffs = vec![0; self.dim];
        coeffs[rank] = 1;
        AlgebraElement { coeffs }
    }

    pub fn from_group_element(&self, x: &GroupElement) -> AlgebraElement {
        self.basis_element(self.grp.rank_of(x) as usize)
    }

    /// g − 1 for a group element g.
    pub fn group_element_minus_one(&self, x: &GroupElement) -> AlgebraElement {
        let mut a = self.from_group_element(x);
        a.coeffs[0] = sub_mod(a.coeffs[0], 1, self.p());
        a
    }

    pub fn from_coeffs(&self, coeffs: Vec<u32>) -> Result<AlgebraElement> {
        if coeffs.len() != self.dim {
            return Err(Error::Input(format!(
                "coefficient vector has length {}, algebra dimension is {}",
                coeffs.len(),
                self.dim
            )));
        }
        if let Some(c) = coeffs.iter().find(|&&c| c >= self.p()) {
            return Err(Error::Input(format!(
                "coefficient {c} is not reduced modulo {}",
                self.p()
            )));
        }
        Ok(AlgebraElement { coeffs })
    }

    pub fn add(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let p = self.p();
        AlgebraElement {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| add_mod(x, y, p)).collect(),
        }
    }

    pub fn sub(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let p = self.p();
        AlgebraElement {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| sub_mod(x, y, p)).collect(),
        }
    }

    pub fn scale(&self, c: u32, a: &AlgebraElement) -> AlgebraElement {
        let p = self.p();
        AlgebraElement { coeffs: a.coeffs.iter().map(|&x| mul_mod(c, x, p)).collect() }
    }

    pub fn multiply(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        AlgebraElement { coeffs: self.multiply_slices(&a.coeffs, &b.coeffs) }
    }

    pub(crate) fn multiply_slices(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let p = self.p();
        let mut out = vec![0u32; self.dim];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                let k = self.basis_product(i, j);
                out[k] = add_mod(out[k], mul_mod(ai, bj, p), p);
            }
        }
        out
    }

    /// Right multiplication by a single basis element: a permutation of
    /// coordinates, cheaper than a full convolution.
    pub(crate) fn mult_basis_right(&self, a: &[u32], g: usize) -> Vec<u32> {
        let mut out = vec![0u32; self.dim];
        for (i, &ai) in a.iter().enumerate() {
            if ai != 0 {
                out[self.basis_product(i, g)] = ai;
            }
        }
        out
    }

    pub(crate) fn mult_basis_left(&self, g: usize, a: &[u32]) -> Vec<u32> {
        let mut out = vec![0u32; self.dim];
        for (i, &ai) in a.iter().enumerate() {
            if ai != 0 {
                out[self.basis_product(g, i)] = ai;
            }
        }
        out
    }

    pub fn augmentation(&self, a: &AlgebraElement) -> u32 {
        let p = self.p();
        a.coeffs.iter().fold(0, |acc, &c| add_mod(acc, c, p))
    }

    pub fn power(&self, a: &AlgebraElement, k: u32) -> AlgebraElement {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.multiply(&acc, a);
        }
        acc
    }

    /// Inverse of a unit of FG. FG is local (G is a p-group over F_p), so
    /// a is a unit iff its augmentation is nonzero, and 1 − a/aug(a) is
    /// nilpotent, making the geometric series finite.
    pub fn inverse_unit(&self, a: &AlgebraElement) -> Result<AlgebraElement> {
        let p = self.p();
        let aug = self.augmentation(a);
        if aug == 0 {
            return Err(Error::Input("element has augmentation 0, not a unit".into()));
        }
        let ainv = inv_mod(aug, p);
        let normalized = self.scale(ainv, a);
        let mut w = self.sub(&self.one(), &normalized);
        let mut sum = self.one();
        let mut steps = 0usize;
        while !w.is_zero() {
            sum = self.add(&sum, &w);
            w = self.multiply(&w, &self.sub(&self.one(), &normalized));
            steps += 1;
            if steps > self.dim {
                return Err(Error::Invariant(
                    "geometric series did not terminate; augmentation ideal not nilpotent".into(),
                ));
            }
        }
        Ok(self.scale(ainv, &sum))
    }

}
