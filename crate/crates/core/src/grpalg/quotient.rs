//! Quotients FG/J by two-sided ideals, with precomputed structure
//! constants. Houses the small group algebra S = FG/I(G)I(γ₂(G)) and its
//! refinement S₀, whose unit groups carry the group-theoretic data the
//! isomorphism arguments consume.

use super::GroupAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{add_mod, inv_mod, mul_mod, sub_mod, Subspace};
use crate::pcgroup::{GroupElement, Subgroup};

/// Cap on the dimension of a quotient algebra (the structure-constant
/// table is cubic in it).
pub const QUOTIENT_DIM_CAP: usize = 300;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuotientKind {
    /// An arbitrary two-sided ideal quotient.
    General,
    /// S = FG/I(G)I(γ₂(G)); group elements land injectively modulo
    /// Φ(γ₂(G)).
    Small,
    /// S₀ = FG/(I(G)I(γ₂(G)) + I(γ₄(G))FG); kernel becomes γ₂(G)ᵖγ₄(G)
    /// for the groups of class at most 3 the theory targets.
    S0,
}

impl QuotientKind {
    pub fn as_str(self) -> &'static str {
        match self {
            QuotientKind::General => "general",
            QuotientKind::Small => "small-group-algebra",
            QuotientKind::S0 => "s0",
        }
    }
}

/// Images of the group basis inside a quotient algebra, together with the
/// kernel subgroup (elements mapping to the identity coset).
#[derive(Debug, Clone)]
pub struct GroupImage {
    pub images: Vec<Vec<u32>>,
    pub kernel: Subgroup,
    /// Whether the kernel equals the subgroup the construction predicts
    /// (Φ(γ₂(G)) for S, γ₂(G)ᵖγ₄(G) for S₀); None for general quotients.
    pub kernel_matches_expected: Option<bool>,
}

/// FG/J for a two-sided ideal J contained in the augmentation ideal.
/// The coset basis consists of the group basis elements at the non-pivot
/// coordinates of J's reduced row echelon form.
pub struct QuotientAlgebra<'a> {
    fga: &'a GroupAlgebra,
    modulus: Subspace,
    kind: QuotientKind,
    dim: usize,
    coset_ranks: Vec<usize>,
    basis_images: Vec<Vec<u32>>,
    sc: Vec<u8>,
    one_coords: Vec<u32>,
    expected_kernel: Option<Subgroup>,
}

impl std::fmt::Debug for QuotientAlgebra<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("QuotientAlgebra")
            .field("kind", &self.kind)
            .field("dim", &self.dim)
            .field("group", &self.fga.group().name())
            .finish_non_exhaustive()
    }
}

impl<'a> QuotientAlgebra<'a> {
    fn build(
        fga: &'a GroupAlgebra,
        modulus: Subspace,
        kind: QuotientKind,
        expected_kernel: Option<Subgroup>,
    ) -> Result<QuotientAlgebra<'a>> {
        let ambient = fga.dim();
        if modulus.ambient_dim() != ambient {
            return Err(Error::Input(
                "modulus ambient dimension does not match the algebra".to_string(),
            ));
        }
        let p = fga.p();
        for row in modulus.basis() {
            let aug = row.iter().fold(0, |acc, &c| add_mod(acc, c, p));
            if aug != 0 {
                return Err(Error::Precondition(
                    "modulus is not contained in the augmentation ideal".to_string(),
                ));
            }
        }
        let grp = fga.group();
        for row in modulus.basis() {
            for g in grp.generators() {
                let r = grp.rank_of(&g) as usize;
                if !modulus.contains(&fga.mult_basis_right(row, r))? {
                    return Err(Error::Precondition(
                        "modulus is not a right ideal".to_string(),
                    ));
                }
                if !modulus.contains(&fga.mult_basis_left(r, row))? {
                    return Err(Error::Precondition(
                        "modulus is not a left ideal".to_string(),
                    ));
                }
            }
        }
        let dim = ambient - modulus.dim();
        if dim > QUOTIENT_DIM_CAP {
            return Err(Error::Resource(format!(
                "quotient dimension {dim} exceeds the cap {QUOTIENT_DIM_CAP}"
            )));
        }
        let pivots = modulus.pivots();
        let mut is_pivot = vec![false; ambient];
        for &c in pivots {
            is_pivot[c] = true;
        }
        let coset_ranks: Vec<usize> = (0..ambient).filter(|&c| !is_pivot[c]).collect();
        // project every group basis element once: eliminate pivot
        // coordinates with the echelon rows of J, read off the rest
        let mut basis_images = Vec::with_capacity(ambient);
        for r in 0..ambient {
            let mut v = vec![0u32; ambient];
            v[r] = 1;
            for (row, &piv) in modulus.basis().iter().zip(pivots) {
                let c = v[piv];
                if c != 0 {
                    for (vi, &ri) in v.iter_mut().zip(row) {
                        *vi = sub_mod(*vi, mul_mod(c, ri, p), p);
                    }
                }
            }
            basis_images.push(coset_ranks.iter().map(|&c| v[c]).collect::<Vec<u32>>());
        }
        let mut sc = vec![0u8; dim * dim * dim];
        for (i, &bi) in coset_ranks.iter().enumerate() {
            for (j, &bj) in coset_ranks.iter().enumerate() {
                let prod = fga.basis_product(bi, bj);
                let img = &basis_images[prod];
                let base = (i * dim + j) * dim;
                for (k, &c) in img.iter().enumerate() {
                    sc[base + k] = c as u8;
                }
            }
        }
        let one_coords = basis_images[0].clone();
        Ok(QuotientAlgebra {
            fga,
            modulus,
            kind,
            dim,
            coset_ranks,
            basis_images,
            sc,
            one_coords,
            expected_kernel,
        })
    }

    pub fn algebra(&self) -> &GroupAlgebra {
        self.fga
    }

    pub fn modulus(&self) -> &Subspace {
        &self.modulus
    }

    pub fn kind(&self) -> QuotientKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn p(&self) -> u32 {
        self.fga.p()
    }

    /// Ranks of the group basis elements whose images form the coset
    /// basis.
    pub fn coset_ranks(&self) -> &[usize] {
        &self.coset_ranks
    }

    pub fn one(&self) -> Vec<u32> {
        self.one_coords.clone()
    }

    pub fn zero(&self) -> Vec<u32> {
        vec![0; self.dim]
    }

    /// Projects an FG coefficient vector to quotient coordinates.
    pub fn project(&self, coeffs: &[u32]) -> Result<Vec<u32>> {
        if coeffs.len() != self.fga.dim() {
            return Err(Error::Input(
                "coefficient vector length does not match the ambient algebra".to_string(),
            ));
        }
        let p = self.p();
        let mut out = vec![0u32; self.dim];
        for (r, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(&self.basis_images[r]) {
                *o = add_mod(*o, mul_mod(c, b, p), p);
            }
        }
        Ok(out)
    }

    pub fn project_group_element(&self, x: &GroupElement) -> Vec<u32> {
        self.basis_images[self.fga.group().rank_of(x) as usize].clone()
    }

    pub fn multiply(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let p = self.p();
        let d = self.dim;
        let mut out = vec![0u32; d];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                let coef = mul_mod(ai, bj, p);
                let base = (i * d + j) * d;
                for (k, o) in out.iter_mut().enumerate() {
                    let s = self.sc[base + k] as u32;
                    if s != 0 {
                        *o = add_mod(*o, mul_mod(coef, s, p), p);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let p = self.p();
        a.iter().zip(b).map(|(&x, &y)| add_mod(x, y, p)).collect()
    }

    pub fn sub(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let p = self.p();
        a.iter().zip(b).map(|(&x, &y)| sub_mod(x, y, p)).collect()
    }

    pub fn scale(&self, c: u32, a: &[u32]) -> Vec<u32> {
        let p = self.p();
        a.iter().map(|&x| mul_mod(c, x, p)).collect()
    }

    /// Augmentation on coordinates. Factors through the quotient because
    /// the modulus sits inside the augmentation ideal, and every coset
    /// basis vector is a group element with augmentation 1.
    pub fn augmentation(&self, a: &[u32]) -> u32 {
        let p = self.p();
        a.iter().fold(0, |acc, &c| add_mod(acc, c, p))
    }

    pub fn power(&self, a: &[u32], k: u32) -> Vec<u32> {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.multiply(&acc, a);
        }
        acc
    }

    /// Inverse of a unit. The quotient of a local algebra is local, so
    /// units are exactly the elements of nonzero augmentation and the
    /// geometric series terminates.
    pub fn inverse_unit(&self, a: &[u32]) -> Result<Vec<u32>> {
        let p = self.p();
        let aug = self.augmentation(a);
        if aug == 0 {
            return Err(Error::Input("element has augmentation 0, not a unit".into()));
        }
        let ainv = inv_mod(aug, p);
        let normalized = self.scale(ainv, a);
        let nilpotent = self.sub(&self.one(), &normalized);
        let mut w = nilpotent.clone();
        let mut sum = self.one();
        let mut steps = 0usize;
        while w.iter().any(|&c| c != 0) {
            sum = self.add(&sum, &w);
            w = self.multiply(&w, &nilpotent);
            steps += 1;
            if steps > self.dim {
                return Err(Error::Invariant(
                    "geometric series did not terminate in the quotient".into(),
                ));
            }
        }
        Ok(self.scale(ainv, &sum))
    }

    pub fn group_commutator(&self, a: &[u32], b: &[u32]) -> Result<Vec<u32>> {
        let ai = self.inverse_unit(a)?;
        let bi = self.inverse_unit(b)?;
        Ok(self.multiply(&self.multiply(&ai, &bi), &self.multiply(a, b)))
    }

    /// Images of all group elements with the kernel subgroup, checked
    /// against the predicted kernel when the quotient is S or S₀.
    pub fn group_image(&self) -> GroupImage {
        let grp = self.fga.group();
        let mut images = Vec::with_capacity(self.fga.dim());
        let mut kernel_members = Vec::new();
        for x in grp.elements() {
            let img = self.project_group_element(&x);
            if img == self.one_coords && !x.is_identity() {
                kernel_members.push(x.clone());
            }
            images.push(img);
        }
        let kernel = Subgroup::closure(grp, &kernel_members);
        let kernel_matches_expected =
            self.expected_kernel.as_ref().map(|expected| *expected == kernel);
        GroupImage { images, kernel, kernel_matches_expected }
    }
}

/// FG/J for an arbitrary two-sided ideal J inside I(G).
pub fn quotient_algebra<'a>(
    fga: &'a GroupAlgebra,
    modulus: Subspace,
) -> Result<QuotientAlgebra<'a>> {
    QuotientAlgebra::build(fga, modulus, QuotientKind::General, None)
}

/// S = FG/I(G)I(γ₂(G)), with kernel prediction Φ(γ₂(G)) installed.
pub fn small_group_algebra(fga: &GroupAlgebra) -> Result<QuotientAlgebra<'_>> {
    let grp = fga.group();
    let gamma2 = grp.derived_subgroup();
    let modulus =
        fga.ideal_product(&fga.augmentation_ideal(), &fga.relative_augmentation_ideal(&gamma2))?;
    let expected = grp.subgroup_frattini(&gamma2)?;
    QuotientAlgebra::build(fga, modulus, QuotientKind::Small, Some(expected))
}

/// S₀ = FG/(I(G)I(γ₂(G)) + I(γ₄(G))FG). Since γ₄(G) is a normal
/// subgroup of γ₂(G), the second summand equals the plain span of
/// γ₄(G) − 1 modulo the first; taking the relative augmentation ideal
/// keeps the modulus visibly two-sided.
pub fn s0_algebra(fga: &GroupAlgebra) -> Result<QuotientAlgebra<'_>> {
    let grp = fga.group();
    let lcs = grp.lower_central_series();
    let gamma2 = lcs.get(1).cloned().unwrap_or_else(|| Subgroup::trivial(grp));
    let gamma4 = lcs.get(3).cloned().unwrap_or_else(|| Subgroup::trivial(grp));
    let product =
        fga.ideal_product(&fga.augmentation_ideal(), &fga.relative_augmentation_ideal(&gamma2))?;
    let modulus = product.sum(&fga.relative_augmentation_ideal(&gamma4))?;
    let expected = grp.subgroup_product(&grp.subgroup_power_p(&gamma2)?, &gamma4)?;
    QuotientAlgebra::build(fga, modulus, QuotientKind::S0, Some(expected))
}
