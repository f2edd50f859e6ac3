//! Structural hypotheses under which the reduced group
//! G / gamma_2(G)^p gamma_4(G) is recoverable from the group algebra, and
//! small derived gadgets: the induced commutator bilinear map and the
//! reduction quotient itself.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mip::gamma_term;
use crate::pcgroup::{GroupElement, PcGroup, QuotientMap, Subgroup, ELEMENT_SCAN_CAP};

/// Result of [`check_theorem_b_hypotheses`].
///
/// `cond_a` asks that every p-th power lying in the derived subgroup
/// already lies in gamma_2(G)^p gamma_3(G); `cond_b` asks that
/// gamma_2(G) / gamma_2(G)^p gamma_3(G) has the maximal possible order
/// p^(d(d-1)/2) for the group's noncentral rank d.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TheoremBHypotheses {
    pub d: usize,
    pub cond_a: bool,
    pub cond_b: bool,
}

impl TheoremBHypotheses {
    pub fn satisfied(&self) -> bool {
        self.cond_a && self.cond_b
    }
}

/// Check both hypotheses. Never fails on consistent groups within the
/// element scan cap.
pub fn check_theorem_b_hypotheses(grp: &PcGroup) -> Result<TheoremBHypotheses> {
    let lcs = grp.lower_central_series();
    let gamma2 = gamma_term(grp, &lcs, 2);
    let gamma3 = gamma_term(grp, &lcs, 3);
    let kernel = grp.subgroup_product(&grp.subgroup_power_p(&gamma2)?, &gamma3)?;

    let center = grp.center()?;
    let phi = grp.frattini()?;
    let zphi = grp.subgroup_product(&center, &phi)?;
    let d = grp.ngens() - zphi.log_order();

    let agemo = grp.agemo()?;
    let mut cond_a = true;
    for x in agemo.elements(grp, ELEMENT_SCAN_CAP)? {
        if gamma2.contains(grp, &x) && !kernel.contains(grp, &x) {
            cond_a = false;
            break;
        }
    }

    let cond_b = gamma2.log_order() - kernel.log_order() == d * d.saturating_sub(1) / 2;

    Ok(TheoremBHypotheses { d, cond_a, cond_b })
}

/// The reduction quotient G / gamma_2(G)^p gamma_4(G) together with the
/// projection map. The kernel is chosen so that the quotient has class at
/// most 3 and an elementary abelian derived subgroup.
pub fn theorem_quotient(grp: &PcGroup) -> Result<(PcGroup, QuotientMap)> {
    let lcs = grp.lower_central_series();
    let gamma2 = gamma_term(grp, &lcs, 2);
    let gamma4 = gamma_term(grp, &lcs, 4);
    let kernel = grp.subgroup_product(&grp.subgroup_power_p(&gamma2)?, &gamma4)?;
    grp.quotient_presentation(&kernel)
}

/// Lexicographically least elements of `grp` that are successively
/// independent modulo Phi(G) Z(G). Their images form the canonical basis
/// of G / Phi(G) Z(G).
pub(crate) fn noncentral_basis(grp: &PcGroup, zphi: &Subgroup) -> Vec<GroupElement> {
    let d = grp.ngens() - zphi.log_order();
    let mut span = zphi.clone();
    let mut basis = Vec::with_capacity(d);
    for r in 0..grp.order() {
        if basis.len() == d {
            break;
        }
        let x = grp.unrank(r);
        if !span.contains(grp, &x) {
            let mut gens = span.igs().to_vec();
            gens.push(x.clone());
            span = Subgroup::closure(grp, &gens);
            basis.push(x);
        }
    }
    debug_assert_eq!(basis.len(), d);
    basis
}

/// The alternating bilinear map induced by the commutator on the canonical
/// noncentral basis, with values written in coordinates over
/// gamma_2(G) / gamma_2(G)^p gamma_3(G).
#[derive(Debug, Clone)]
pub struct CommutatorBilinearMap {
    /// Number of rows and columns.
    pub d: usize,
    /// The basis x_1, ..., x_d (elements of the original group).
    pub basis: Vec<GroupElement>,
    /// log_p of the order of the value module.
    pub value_rank: usize,
    /// table[i][j] holds the coordinates of [x_i, x_j].
    pub table: Vec<Vec<Vec<u32>>>,
}

/// Tabulate the commutator map on the canonical noncentral basis.
pub fn commutator_bilinear_map(grp: &PcGroup) -> Result<CommutatorBilinearMap> {
    let lcs = grp.lower_central_series();
    let gamma2 = gamma_term(grp, &lcs, 2);
    let gamma3 = gamma_term(grp, &lcs, 3);
    let kernel = grp.subgroup_product(&grp.subgroup_power_p(&gamma2)?, &gamma3)?;
    let (quot, map) = grp.quotient_presentation(&kernel)?;
    let value_module = quot.derived_subgroup();

    let center = grp.center()?;
    let phi = grp.frattini()?;
    let zphi = grp.subgroup_product(&center, &phi)?;
    let basis = noncentral_basis(grp, &zphi);
    let d = basis.len();

    let mut table = vec![vec![Vec::new(); d]; d];
    for i in 0..d {
        for j in 0..d {
            let c = grp.commutator(&basis[i], &basis[j]);
            let image = map.project(grp, &c);
            if !value_module.contains(&quot, &image) {
                return Err(Error::Invariant(
                    "commutator image escaped the derived subgroup of the quotient".to_string(),
                ));
            }
            table[i][j] = value_module.coordinates(&quot, &image)?;
        }
    }

    Ok(CommutatorBilinearMap { d, basis, value_rank: value_module.log_order(), table })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::linalg::neg_mod;

    fn group(name: &str, param: u64) -> PcGroup {
        catalog::builtin(name, param).expect("builtin").group().expect("consistent")
    }

    #[test]
    fn abelian_groups_satisfy_both_hypotheses_with_rank_zero() {
        for (name, param) in [("cyclic", 27), ("elem_abelian", 243), ("c_p2_x_cp", 3)] {
            let g = group(name, param);
            let hyp = check_theorem_b_hypotheses(&g).expect("check");
            assert_eq!(hyp.d, 0, "{name}");
            assert!(hyp.cond_a, "{name}");
            assert!(hyp.cond_b, "{name}");
        }
    }

    #[test]
    fn heisenberg_and_maxclass_satisfy_the_hypotheses() {
        for (name, param) in [("heisenberg", 3), ("heisenberg", 5), ("maxclass_p4", 3)] {
            let hyp = check_theorem_b_hypotheses(&group(name, param)).expect("check");
            assert_eq!(hyp.d, 2, "{name}");
            assert!(hyp.satisfied(), "{name}: {hyp:?}");
        }
    }

    #[test]
    fn modular_27_fails_the_power_condition() {
        // Here a^3 generates the derived subgroup, so cubes meet gamma_2
        // outside gamma_2^3 gamma_3 = 1.
        let hyp = check_theorem_b_hypotheses(&group("modular", 3)).expect("check");
        assert_eq!(hyp.d, 2);
        assert!(!hyp.cond_a);
        assert!(hyp.cond_b);
        assert!(!hyp.satisfied());
    }

    #[test]
    fn the_5_7_groups_satisfy_the_hypotheses() {
        for name in ["G5_7_1599", "G5_7_1734", "G5_7_1766"] {
            let hyp = check_theorem_b_hypotheses(&group(name, 5)).expect("check");
            assert_eq!(hyp.d, 2, "{name}");
            assert!(hyp.satisfied(), "{name}: {hyp:?}");
        }
    }

    #[test]
    fn theorem_quotient_is_trivial_reduction_for_small_examples() {
        // Heisenberg: gamma_2 is elementary abelian and gamma_4 = 1, so the
        // quotient is the group itself.
        let g = group("heisenberg", 3);
        let (q, _) = theorem_quotient(&g).expect("quotient");
        assert_eq!(q.order(), 27);

        // The modular group of order 27 also reduces trivially.
        let m = group("modular", 3);
        let (q, _) = theorem_quotient(&m).expect("quotient");
        assert_eq!(q.order(), 27);
    }

    #[test]
    fn theorem_quotient_collapses_deep_power_structure() {
        // For the cyclic group gamma_2 = 1, so nothing collapses.
        let c = group("cyclic", 243);
        let (q, _) = theorem_quotient(&c).expect("quotient");
        assert_eq!(q.order(), 243);

        // The 5^7 groups have elementary abelian gamma_2 and class 3, so
        // they reduce trivially too.
        let g = group("G5_7_1599", 5);
        let (q, _) = theorem_quotient(&g).expect("quotient");
        assert_eq!(q.order(), 78_125);
        assert_eq!(q.nilpotency_class(), 3);
    }

    #[test]
    fn heisenberg_bilinear_map_is_the_standard_symplectic_form() {
        let g = group("heisenberg", 3);
        let map = commutator_bilinear_map(&g).expect("map");
        assert_eq!(map.d, 2);
        assert_eq!(map.value_rank, 1);
        assert!(map.table[0][0].iter().all(|&c| c == 0));
        assert!(map.table[1][1].iter().all(|&c| c == 0));
        // The off-diagonal values are nonzero and opposite.
        let v01 = map.table[0][1][0];
        let v10 = map.table[1][0][0];
        assert_ne!(v01, 0);
        assert_eq!(v10, neg_mod(v01, 3));
    }

    #[test]
    fn bilinear_map_is_antisymmetric_across_the_roster() {
        for entry in catalog::standard_roster().expect("roster") {
            let g = entry.group().expect("consistent");
            if g.order() > 625 {
                continue;
            }
            let map = commutator_bilinear_map(&g).expect("map");
            let p = g.p();
            for i in 0..map.d {
                for j in 0..map.d {
                    assert_eq!(map.table[i][j].len(), map.value_rank);
                    for s in 0..map.value_rank {
                        assert_eq!(
                            map.table[i][j][s],
                            neg_mod(map.table[j][i][s], p),
                            "{} at ({i},{j},{s})",
                            entry.name()
                        );
                    }
                    if i == j {
                        assert!(map.table[i][j].iter().all(|&c| c == 0));
                    }
                }
            }
        }
    }
}
