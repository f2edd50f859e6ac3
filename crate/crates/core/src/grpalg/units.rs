//! Normalized units of quotient algebras: the auxiliary subgroup A
//! generated by 1 + ascending products of (g_i − 1), breadth-first
//! closures of unit sets, and commutator subgroups inside the closure.

use std::collections::HashMap;

use super::quotient::QuotientAlgebra;
use crate::error::{Error, Result};
use crate::pcgroup::GroupElement;

/// Default cap on unit closure size.
pub const UNIT_CLOSURE_CAP: u64 = 59_049;

/// One generator 1 + (g_1−1)^{k_1} ⋯ (g_m−1)^{k_m} of the subgroup A.
#[derive(Debug, Clone)]
pub struct ASubgroupGenerator {
    /// The exponent tuple (k_1, …, k_m).
    pub exponents: Vec<u32>,
    /// Coordinates of the unit in the quotient algebra.
    pub coords: Vec<u32>,
}

/// All nonzero units 1 + (g_1−1)^{k_1} ⋯ (g_m−1)^{k_m} with Σk_i ≥ 2,
/// factors taken in ascending generator order. `gens` are group elements
/// whose images generate the group image modulo its derived subgroup
/// independently. Enumeration stops at the first total degree where
/// every monomial vanishes (higher monomials are multiples of lower
/// ones, so they vanish too).
pub fn a_subgroup_generators(
    q: &QuotientAlgebra<'_>,
    gens: &[GroupElement],
) -> Vec<ASubgroupGenerator> {
    let m = gens.len();
    let one = q.one();
    let diffs: Vec<Vec<u32>> = gens
        .iter()
        .map(|g| q.sub(&q.project_group_element(g), &one))
        .collect();
    let mut out = Vec::new();
    let mut degree = 2u32;
    loop {
        let mut any_nonzero = false;
        for tuple in compositions(degree, m) {
            let mut mono = one.clone();
            for (i, &k) in tuple.iter().enumerate() {
                for _ in 0..k {
                    mono = q.multiply(&mono, &diffs[i]);
                }
            }
            if mono.iter().any(|&c| c != 0) {
                any_nonzero = true;
                out.push(ASubgroupGenerator {
                    exponents: tuple.clone(),
                    coords: q.add(&one, &mono),
                });
            }
        }
        if !any_nonzero || degree as usize > q.dim() {
            return out;
        }
        degree += 1;
    }
}

/// All tuples (k_1, …, k_m) of nonnegative integers summing to `total`,
/// in lexicographic order.
fn compositions(total: u32, m: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if m == 0 {
        return out;
    }
    let mut cur = vec![0u32; m];
    fn rec(out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>, pos: usize, left: u32) {
        if pos == cur.len() - 1 {
            cur[pos] = left;
            out.push(cur.clone());
            return;
        }
        for k in (0..=left).rev() {
            cur[pos] = k;
            rec(out, cur, pos + 1, left - k);
        }
    }
    rec(&mut out, &mut cur, 0, total);
    out
}

/// Elements reached by a breadth-first closure in the unit group, stored
/// by coordinate vector.
#[derive(Debug)]
pub struct UnitStore {
    elements: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl UnitStore {
    fn new() -> UnitStore {
        UnitStore { elements: Vec::new(), index: HashMap::new() }
    }

    fn insert(&mut self, coords: Vec<u32>) -> bool {
        if self.index.contains_key(&coords) {
            return false;
        }
        self.index.insert(coords.clone(), self.elements.len());
        self.elements.push(coords);
        true
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn contains(&self, coords: &[u32]) -> bool {
        self.index.contains_key(coords)
    }

    pub fn elements(&self) -> &[Vec<u32>] {
        &self.elements
    }

    pub fn same_elements(&self, other: &UnitStore) -> bool {
        self.elements.len() == other.elements.len()
            && self.elements.iter().all(|e| other.contains(e))
    }
}

/// Subgroup of the normalized units generated by `seeds`: breadth-first
/// closure under right multiplication, visiting seeds in the given order.
/// Every seed must have augmentation 1.
pub fn unit_closure(
    q: &QuotientAlgebra<'_>,
    seeds: &[Vec<u32>],
    cap: u64,
) -> Result<UnitStore> {
    for s in seeds {
        if q.augmentation(s) != 1 {
            return Err(Error::Input(
                "unit closure seeds must have augmentation 1".to_string(),
            ));
        }
    }
    let mut store = UnitStore::new();
    store.insert(q.one());
    let mut frontier = 0usize;
    while frontier < store.elements.len() {
        let x = store.elements[frontier].clone();
        frontier += 1;
        for s in seeds {
            let y = q.multiply(&x, s);
            if store.insert(y) && store.order() > cap {
                return Err(Error::Resource(format!(
                    "unit closure exceeded the cap of {cap} elements"
                )));
            }
        }
    }
    Ok(store)
}

/// The commutator subgroup of ⟨seeds⟩ inside the normalized units:
/// the closure of pairwise seed commutators, made invariant under
/// conjugation by the seeds.
pub fn unit_commutator_subgroup(
    q: &QuotientAlgebra<'_>,
    seeds: &[Vec<u32>],
    cap: u64,
) -> Result<UnitStore> {
    let mut gens: Vec<Vec<u32>> = Vec::new();
    for a in seeds {
        for b in seeds {
            let c = q.group_commutator(a, b)?;
            if c != q.one() && !gens.contains(&c) {
                gens.push(c);
            }
        }
    }
    loop {
        let store = unit_closure(q, &gens, cap)?;
        let mut grew = false;
        for x in store.elements() {
            for s in seeds {
                let sinv = q.inverse_unit(s)?;
                let conj = q.multiply(&q.multiply(&sinv, x), s);
                if !store.contains(&conj) {
                    gens.push(conj);
                    grew = true;
                }
            }
        }
        if !grew {
            return Ok(store);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grpalg::quotient::small_group_algebra;
    use crate::grpalg::{GroupAlgebra, ALGEBRA_DIM_CAP};
    use crate::pcgroup::{PcGroup, PcPresentation};
    use std::collections::BTreeMap;

    fn heisenberg27() -> PcGroup {
        let mut comms = BTreeMap::new();
        comms.insert((1, 0), vec![(2, 1)]);
        PcGroup::new(
            PcPresentation::new("h27", 3, 3, vec![vec![], vec![], vec![]], comms).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn closure_of_identity_alone_is_trivial() {
        let g = heisenberg27();
        let fg = GroupAlgebra::new(&g, ALGEBRA_DIM_CAP).unwrap();
        let s = small_group_algebra(&fg).unwrap();
        let store = unit_closure(&s, &[s.one()], UNIT_CLOSURE_CAP).unwrap();
        assert_eq!(store.order(), 1);
    }

    #[test]
    fn a_generators_on_heisenberg_include_degree_two_monomials() {
        let g = heisenberg27();
        let fg = GroupAlgebra::new(&g, ALGEBRA_DIM_CAP).unwrap();
        let s = small_group_algebra(&fg).unwrap();
        let basis = g.burnside_basis().unwrap();
        assert_eq!(basis.len(), 2);
        let gens = a_subgroup_generators(&s, &basis);
        let degree_two: Vec<&ASubgroupGenerator> =
            gens.iter().filter(|a| a.exponents.iter().sum::<u32>() == 2).collect();
        // (g1−1)², (g1−1)(g2−1), (g2−1)² all survive in S
        assert_eq!(degree_two.len(), 3);
        for a in &gens {
            assert_eq!(s.augmentation(&a.coords), 1);
            assert!(a.exponents.iter().sum::<u32>() >= 2);
        }
    }

    #[test]
    fn heisenberg_unit_group_of_s_has_order_3_to_9() {
        let g = heisenberg27();
        let fg = GroupAlgebra::new(&g, ALGEBRA_DIM_CAP).unwrap();
        let s = small_group_algebra(&fg).unwrap();
        let img = s.group_image();
        let mut seeds: Vec<Vec<u32>> = Vec::new();
        for im in &img.images {
            if !seeds.contains(im) {
                seeds.push(im.clone());
            }
        }
        for a in a_subgroup_generators(&s, &g.burnside_basis().unwrap()) {
            if !seeds.contains(&a.coords) {
                seeds.push(a.coords);
            }
        }
        let store = unit_closure(&s, &seeds, UNIT_CLOSURE_CAP).unwrap();
        // |V(S)| = p^{dim S − 1} = 3^9
        assert_eq!(store.order(), 19_683);
    }

    #[test]
    fn commutator_law_for_a_generators() {
        // [g, a] equals the left-normed commutator [g, g_1, …, g_1, g_2, …]
        // with g_i repeated k_i times
        let g = heisenberg27();
        let fg = GroupAlgebra::new(&g, ALGEBRA_DIM_CAP).unwrap();
        let s = small_group_algebra(&fg).unwrap();
        let basis = g.burnside_basis().unwrap();
        let basis_units: Vec<Vec<u32>> =
            basis.iter().map(|b| s.project_group_element(b)).collect();
        for a in a_subgroup_generators(&s, &basis) {
            for x in g.elements() {
                let gu = s.project_group_element(&x);
                let lhs = s.group_commutator(&gu, &a.coords).unwrap();
                let mut rhs = gu.clone();
                for (i, &k) in a.exponents.iter().enumerate() {
                    for _ in 0..k {
                        rhs = s.group_commutator(&rhs, &basis_units[i]).unwrap();
                    }
                }
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn unit_closure_cap_is_enforced() {
        let g = heisenberg27();
        let fg = GroupAlgebra::new(&g, ALGEBRA_DIM_CAP).unwrap();
        let s = small_group_algebra(&fg).unwrap();
        let img = s.group_image();
        let err = unit_closure(&s, &img.images, 10).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn commutator_subgroup_of_group_image_matches_derived_image()
    {
        let g = heisenberg27();
        let fg = GroupAlgebra::new(&g, ALGEBRA_DIM_CAP).unwrap();
        let s = small_group_algebra(&fg).unwrap();
        let img = s.group_image();
        let derived = unit_commutator_subgroup(&s, &img.images, UNIT_CLOSURE_CAP).unwrap();
        assert_eq!(derived.order(), 3);
        let g3 = s.project_group_element(&g.generator(2).unwrap());
        assert!(derived.contains(&g3));
    }
}
