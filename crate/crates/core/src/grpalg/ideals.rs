//! Augmentation-ideal machinery: the filtration of FG by powers of I(G),
//! relative augmentation ideals, the commutator subspace K(FG), the
//! center, and the algebra-side generator count.

use super::GroupAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{RrefBuilder, Subspace};
use crate::pcgroup::Subgroup;

/// Jennings cross-check data: dimensions of I^k/I^{k+1} as computed by
/// elimination against the prediction from the dimension subgroup series.
#[derive(Debug, Clone)]
pub struct JenningsCheck {
    pub predicted: Vec<usize>,
    pub actual: Vec<usize>,
    pub matches: bool,
}

#[derive(Clone, Copy)]
enum Side {
    Left,
    Right,
}

impl GroupAlgebra {
    /// I(G), the kernel of the augmentation map: span of g − 1 over g ≠ 1.
    pub fn augmentation_ideal(&self) -> Subspace {
        let p = self.p();
        let mut builder = RrefBuilder::new(p, self.dim());
        for r in 1..self.dim() {
            let mut row = vec![0u32; self.dim()];
            row[r] = 1;
            row[0] = p - 1;
            builder.insert(&row);
        }
        builder.into_subspace()
    }

    /// I(N)FG for a subgroup N: the right ideal generated by t − 1 over an
    /// induced generating sequence of N. Writing nm − 1 =
    /// (n − 1)m + (m − 1) shows the spanning set {(t − 1)g} with t running
    /// over the generating sequence already covers all (n − 1)g.
    pub fn relative_augmentation_ideal(&self, n: &Subgroup) -> Subspace {
        let grp = self.group();
        let p = self.p();
        let mut builder = RrefBuilder::new(p, self.dim());
        for t in n.igs() {
            for g in grp.elements() {
                let tg = grp.multiply(t, &g);
                let mut row = vec![0u32; self.dim()];
                row[grp.rank_of(&tg) as usize] = 1;
                let gr = grp.rank_of(&g) as usize;
                row[gr] = crate::linalg::sub_mod(row[gr], 1, p);
                builder.insert(&row);
            }
        }
        builder.into_subspace()
    }

    /// span{n − 1 : n ∈ N} without the FG-module closure. This differs
    /// from I(N)FG in general, but the two agree after adding
    /// I(γ₂(G))I(G) when N is a normal subgroup of γ₂(G).
    pub fn span_subgroup_minus_one(&self, n: &Subgroup) -> Result<Subspace> {
        let grp = self.group();
        let members = n.elements(grp, grp.order())?;
        let mut builder = RrefBuilder::new(self.p(), self.dim());
        for x in members {
            if x.is_identity() {
                continue;
            }
            builder.insert(self.group_element_minus_one(&x).coeffs());
        }
        Ok(builder.into_subspace())
    }

    /// Span of all pairwise products of basis vectors of U and V.
    pub fn ideal_product(&self, u: &Subspace, v: &Subspace) -> Result<Subspace> {
        if u.ambient_dim() != self.dim() || v.ambient_dim() != self.dim() {
            return Err(Error::Input(
                "subspace ambient dimension does not match the algebra".to_string(),
            ));
        }
        let mut builder = RrefBuilder::new(self.p(), self.dim());
        for a in u.basis() {
            for b in v.basis() {
                builder.insert(&self.multiply_slices(a, b));
            }
        }
        Ok(builder.into_subspace())
    }

    /// Closes the span of `seeds` under multiplication by group basis
    /// elements on one side. Each row that grows the span is multiplied
    /// by every pc generator in turn, which reaches every group element
    /// because normal forms are ascending generator products.
    fn module_closure(&self, seeds: Vec<Vec<u32>>, side: Side) -> Subspace {
        let grp = self.group();
        let gen_ranks: Vec<usize> =
            grp.generators().iter().map(|g| grp.rank_of(g) as usize).collect();
        let mut builder = RrefBuilder::new(self.p(), self.dim());
        let mut worklist: Vec<Vec<u32>> = Vec::new();
        for row in seeds {
            if builder.insert(&row) {
                worklist.push(row);
            }
        }
        while let Some(row) = worklist.pop() {
            for &g in &gen_ranks {
                let prod = match side {
                    Side::Right => self.mult_basis_right(&row, g),
                    Side::Left => self.mult_basis_left(g, &row),
                };
                if builder.insert(&prod) {
                    worklist.push(prod);
                }
            }
        }
        builder.into_subspace()
    }

    /// U·I(G). This is a right ideal generated by the products
    /// u(g_i − 1): expanding u(xg_i − 1) = u(x − 1)g_i + u(g_i − 1) gives
    /// all u(x − 1) by induction over the normal form of x.
    pub fn ideal_times_aug(&self, u: &Subspace) -> Subspace {
        let grp = self.group();
        let mut seeds = Vec::new();
        for row in u.basis() {
            for g in grp.generators() {
                let r = grp.rank_of(&g) as usize;
                let mut prod = self.mult_basis_right(row, r);
                let p = self.p();
                for (c, &orig) in prod.iter_mut().zip(row) {
                    *c = crate::linalg::sub_mod(*c, orig, p);
                }
                seeds.push(prod);
            }
        }
        self.module_closure(seeds, Side::Right)
    }

    /// FG·U, the left module closure of U.
    pub fn fg_times(&self, u: &Subspace) -> Subspace {
        self.module_closure(u.basis().to_vec(), Side::Left)
    }

    /// U·FG, the right module closure of U.
    pub fn times_fg(&self, u: &Subspace) -> Subspace {
        self.module_closure(u.basis().to_vec(), Side::Right)
    }

    /// The chain I ⊇ I² ⊇ …, ending with the zero subspace.
    pub fn ideal_power_chain(&self) -> Result<Vec<Subspace>> {
        let mut chain = vec![self.augmentation_ideal()];
        while chain.last().expect("nonempty").dim() > 0 {
            let next = self.ideal_times_aug(chain.last().expect("nonempty"));
            if next.dim() >= chain.last().expect("nonempty").dim() {
                return Err(Error::Invariant(
                    "augmentation ideal powers failed to descend".to_string(),
                ));
            }
            chain.push(next);
        }
        Ok(chain)
    }

    /// K(FG) = span{ab − ba}. Substituting x = ab turns ab − ba into
    /// x − x^y, and conjugation telescopes over generator products, so
    /// rows x − x^{g_i} over all x and pc generators g_i span K(FG).
    pub fn commutator_subspace(&self) -> Subspace {
        let grp = self.group();
        let p = self.p();
        let mut builder = RrefBuilder::new(p, self.dim());
        for x in grp.elements() {
            for g in grp.generators() {
                let conj = grp.conjugate(&x, &g);
                if conj == x {
                    continue;
                }
                let mut row = vec![0u32; self.dim()];
                row[grp.rank_of(&x) as usize] = 1;
                row[grp.rank_of(&conj) as usize] = p - 1;
                builder.insert(&row);
            }
        }
        builder.into_subspace()
    }

    /// Z(FG): the span of conjugacy class sums.
    pub fn algebra_center(&self) -> Result<Subspace> {
        let grp = self.group();
        let classes = grp.conjugacy_classes(grp.order())?;
        let mut builder = RrefBuilder::new(self.p(), self.dim());
        for class in classes {
            let mut row = vec![0u32; self.dim()];
            for r in class {
                row[r as usize] = 1;
            }
            builder.insert(&row);
        }
        Ok(builder.into_subspace())
    }

    /// F·Z(G): the span of the basis elements lying in the group center.
    pub fn center_span(&self) -> Result<Subspace> {
        let grp = self.group();
        let z = grp.center()?;
        let members = z.elements(grp, grp.order())?;
        let mut builder = RrefBuilder::new(self.p(), self.dim());
        for x in members {
            let mut row = vec![0u32; self.dim()];
            row[grp.rank_of(&x) as usize] = 1;
            builder.insert(&row);
        }
        Ok(builder.into_subspace())
    }

    /// The group elements g with g − 1 ∈ W, returned as a subgroup. For a
    /// two-sided ideal W inside I(G) this set is closed under products.
    pub fn one_plus_intersect_group(&self, w: &Subspace) -> Result<Subgroup> {
        let grp = self.group();
        let mut members = Vec::new();
        for x in grp.elements() {
            if x.is_identity() {
                continue;
            }
            if w.contains(self.group_element_minus_one(&x).coeffs())? {
                members.push(x);
            }
        }
        Ok(Subgroup::closure(grp, &members))
    }

    /// The minimal generator count read off the algebra:
    /// dim I(G) − dim(Z(FG) ∩ I(G) + I(G)²).
    pub fn compute_d_algebra(&self) -> Result<usize> {
        let aug = self.augmentation_ideal();
        let center = self.algebra_center()?;
        let zi = center.intersect(&aug)?;
        let i2 = self.ideal_times_aug(&aug);
        let denom = zi.sum(&i2)?;
        Ok(aug.dim() - denom.dim())
    }

    /// Compares dim I^k/I^{k+1} from elimination against the product
    /// formula over the dimension subgroup series: the generating
    /// function is Π_i (1 + t^i + … + t^{(p−1)i})^{d_i}.
    pub fn jennings_filtration_check(&self) -> Result<JenningsCheck> {
        let dims = self.group().jennings_dimensions()?;
        let p = self.p() as usize;
        let mut poly = vec![1i64];
        for (idx, &d) in dims.iter().enumerate() {
            let i = idx + 1;
            let mut factor = vec![0i64; (p - 1) * i + 1];
            for j in 0..p {
                factor[j * i] = 1;
            }
            for _ in 0..d {
                poly = poly_mul(&poly, &factor);
            }
        }
        let predicted: Vec<usize> = poly.iter().map(|&c| c as usize).collect();
        let chain = self.ideal_power_chain()?;
        let mut actual = vec![1usize];
        for w in chain.windows(2) {
            actual.push(w[0].dim() - w[1].dim());
        }
        let mut a = predicted.clone();
        let mut b = actual.clone();
        let len = a.len().max(b.len());
        a.resize(len, 0);
        b.resize(len, 0);
        Ok(JenningsCheck { matches: a == b, predicted, actual })
    }
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grpalg::ALGEBRA_DIM_CAP;
    use crate::pcgroup::{PcGroup, PcPresentation};
    use std::collections::BTreeMap;

    fn algebra(name: &str, p: u32, powers: Vec<Vec<(usize, u32)>>, comms: &[((usize, usize), Vec<(usize, u32)>)]) -> GroupAlgebra {
        let mut map = BTreeMap::new();
        for (k, w) in comms {
            map.insert(*k, w.clone());
        }
        let n = powers.len();
        let grp =
            PcGroup::new(PcPresentation::new(name, p, n, powers, map).unwrap()).unwrap();
        GroupAlgebra::new(&grp, ALGEBRA_DIM_CAP).unwrap()
    }

    fn heisenberg27() -> GroupAlgebra {
        algebra("h27", 3, vec![vec![], vec![], vec![]], &[((1, 0), vec![(2, 1)])])
    }

    fn modular27() -> GroupAlgebra {
        algebra("m27", 3, vec![vec![], vec![(2, 1)], vec![]], &[((1, 0), vec![(2, 1)])])
    }

    #[test]
    fn f3c3_power_chain() {
        let fg = algebra("c3", 3, vec![vec![]], &[]);
        let chain = fg.ideal_power_chain().unwrap();
        let dims: Vec<usize> = chain.iter().map(|s| s.dim()).collect();
        assert_eq!(dims, vec![2, 1, 0]);
    }

    #[test]
    fn heisenberg_ideal_dimensions() {
        let fg = heisenberg27();
        let aug = fg.augmentation_ideal();
        assert_eq!(aug.dim(), 26);
        let i2 = fg.ideal_times_aug(&aug);
        assert_eq!(i2.dim(), 24);
        let gamma2 = fg.group().derived_subgroup();
        assert_eq!(fg.relative_augmentation_ideal(&gamma2).dim(), 18);
        let modulus = fg
            .ideal_product(&aug, &fg.relative_augmentation_ideal(&gamma2))
            .unwrap();
        assert_eq!(modulus.dim(), 17);
    }

    #[test]
    fn ideal_times_aug_matches_spanwise_product() {
        for fg in [heisenberg27(), modular27()] {
            let aug = fg.augmentation_ideal();
            let spanwise = fg.ideal_product(&aug, &aug).unwrap();
            assert_eq!(fg.ideal_times_aug(&aug), spanwise);
        }
    }

    #[test]
    fn relative_augmentation_ideal_edge_cases() {
        let fg = heisenberg27();
        let trivial = Subgroup::trivial(fg.group());
        assert_eq!(fg.relative_augmentation_ideal(&trivial).dim(), 0);
        let full = Subgroup::full_group(fg.group());
        assert_eq!(fg.relative_augmentation_ideal(&full), fg.augmentation_ideal());
    }

    #[test]
    fn commutator_subspace_dimensions() {
        let fg = heisenberg27();
        let k = fg.commutator_subspace();
        // 27 minus 11 conjugacy classes
        assert_eq!(k.dim(), 16);
        let abelian = algebra("c9", 3, vec![vec![(1, 1)], vec![]], &[]);
        assert_eq!(abelian.commutator_subspace().dim(), 0);
    }

    #[test]
    fn commutator_subspace_contains_all_basis_pair_commutators() {
        let fg = modular27();
        let grp = fg.group();
        let k = fg.commutator_subspace();
        for x in grp.elements() {
            for y in grp.elements() {
                let a = fg.from_group_element(&x);
                let b = fg.from_group_element(&y);
                let diff = fg.sub(&fg.multiply(&a, &b), &fg.multiply(&b, &a));
                assert!(k.contains(diff.coeffs()).unwrap());
            }
        }
    }

    #[test]
    fn center_is_class_sums_and_decomposes() {
        for fg in [heisenberg27(), modular27()] {
            let z = fg.algebra_center().unwrap();
            assert_eq!(z.dim(), 11);
            // Z(FG) = F·Z(G) + Z(FG) ∩ K(FG)
            let fz = fg.center_span().unwrap();
            let zk = z.intersect(&fg.commutator_subspace()).unwrap();
            assert_eq!(fz.sum(&zk).unwrap(), z);
        }
    }

    #[test]
    fn center_multiplication_stays_central() {
        let fg = heisenberg27();
        let z = fg.algebra_center().unwrap();
        let a = fg.from_coeffs(z.basis()[3].to_vec()).unwrap();
        for x in fg.group().elements() {
            let b = fg.from_group_element(&x);
            assert_eq!(fg.multiply(&a, &b), fg.multiply(&b, &a));
        }
    }

    #[test]
    fn left_and_right_module_closures_of_k_agree() {
        // FG·K(FG) = K(FG)·FG = I(γ₂(G))FG
        for fg in [heisenberg27(), modular27()] {
            let k = fg.commutator_subspace();
            let left = fg.fg_times(&k);
            let right = fg.times_fg(&k);
            let gamma2 = fg.group().derived_subgroup();
            let target = fg.relative_augmentation_ideal(&gamma2);
            assert_eq!(left, target);
            assert_eq!(right, target);
        }
    }

    #[test]
    fn k_sits_between_derived_ideal_and_i_squared() {
        for fg in [heisenberg27(), modular27()] {
            let k = fg.commutator_subspace();
            let derived_ideal = fg.relative_augmentation_ideal(&fg.group().derived_subgroup());
            let aug = fg.augmentation_ideal();
            let i2 = fg.ideal_times_aug(&aug);
            assert!(derived_ideal.contains_subspace(&k).unwrap());
            assert!(i2.contains_subspace(&k).unwrap());
        }
    }

    #[test]
    fn frattini_matches_one_plus_i_squared() {
        for fg in [heisenberg27(), modular27()] {
            let aug = fg.augmentation_ideal();
            let i2 = fg.ideal_times_aug(&aug);
            let from_algebra = fg.one_plus_intersect_group(&i2).unwrap();
            assert_eq!(from_algebra, fg.group().frattini().unwrap());
        }
    }

    #[test]
    fn relative_ideal_from_span_for_normal_subgroups_of_gamma2() {
        // I(N)FG + I(γ₂)I(G) = span(N−1) + I(γ₂)I(G) for N ⊆ γ₂ normal
        for fg in [heisenberg27(), modular27()] {
            let gamma2 = fg.group().derived_subgroup();
            let prod = fg
                .ideal_product(&fg.relative_augmentation_ideal(&gamma2), &fg.augmentation_ideal())
                .unwrap();
            let lhs = fg.relative_augmentation_ideal(&gamma2).sum(&prod).unwrap();
            let rhs = fg.span_subgroup_minus_one(&gamma2).unwrap().sum(&prod).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn d_algebra_matches_group_side() {
        let fg = heisenberg27();
        assert_eq!(fg.compute_d_algebra().unwrap(), 2);
        let fm = modular27();
        assert_eq!(fm.compute_d_algebra().unwrap(), 2);
        let ab = algebra("c9", 3, vec![vec![(1, 1)], vec![]], &[]);
        assert_eq!(ab.compute_d_algebra().unwrap(), 0);
    }

    #[test]
    fn jennings_cross_check_on_small_groups() {
        let groups = [
            heisenberg27(),
            modular27(),
            algebra("c9", 3, vec![vec![(1, 1)], vec![]], &[]),
            algebra("c3xc3", 3, vec![vec![], vec![]], &[]),
        ];
        for fg in groups {
            let check = fg.jennings_filtration_check().unwrap();
            assert!(check.matches, "mismatch: {check:?}");
            let total: usize = check.actual.iter().sum();
            assert_eq!(total, fg.dim());
        }
    }
}
