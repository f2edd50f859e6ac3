//! End-to-end decision procedures.
//!
//! [`theorem_b_pipeline`] compares the reduced groups
//! G / gamma_2(G)^p gamma_4(G) of two inputs whose determined invariants
//! agree: it extracts the relation table from the first group and searches
//! the second reduced group for a generating tuple satisfying it.
//!
//! [`theorem_a_pipeline`] decides isomorphism outright for groups whose
//! center has index p^3: such a group has class 2 or 3 with elementary
//! abelian derived subgroup, the class-2 case is settled by its quotient
//! G / gamma_2(G)^p gamma_3(G) (which is the group itself and is determined
//! by the group algebra), and the class-3 case reduces to the relation
//! table search because the reduction quotient collapses nothing.

use crate::error::{Error, Result};
use crate::mip::hypotheses::{check_theorem_b_hypotheses, theorem_quotient, TheoremBHypotheses};
use crate::mip::verify::find_satisfying_tuple;
use crate::mip::{compare_fingerprints, extract_presentation, fingerprint, gamma_term, RData};
use crate::pcgroup::{is_isomorphic_bruteforce, GroupElement, PcGroup};

/// Witness that the reduced groups of two inputs are isomorphic: both
/// tuples satisfy the same relation table and generate their group, so
/// mapping one tuple onto the other extends to an isomorphism.
#[derive(Debug, Clone)]
pub struct QuotientIsoWitness {
    pub rdata: RData,
    pub g_quotient: PcGroup,
    pub g_tuple: Vec<GroupElement>,
    pub h_quotient: PcGroup,
    pub h_tuple: Vec<GroupElement>,
}

#[derive(Debug)]
pub enum TheoremBVerdict {
    /// A determined invariant differs, so the group algebras are not
    /// isomorphic and there is nothing to transfer.
    Distinguished { fields: Vec<String> },
    /// The first group does not satisfy the recovery hypotheses.
    HypothesesNotSatisfied(TheoremBHypotheses),
    /// The reduced groups are isomorphic, with an explicit witness.
    QuotientsIsomorphic(Box<QuotientIsoWitness>),
    /// The exhaustive search found no satisfying tuple: the reduced groups
    /// are not isomorphic. Under the checked hypotheses, isomorphic group
    /// algebras force isomorphic reduced groups, so this also certifies
    /// that the algebras differ.
    QuotientsNotIsomorphic,
}

/// Compare the reduced groups of `g` and `h`. `search_cap` bounds the
/// order of the group the tuple search runs in.
pub fn theorem_b_pipeline(
    g: &PcGroup,
    h: &PcGroup,
    search_cap: u64,
) -> Result<TheoremBVerdict> {
    let fg = fingerprint(g)?;
    let fh = fingerprint(h)?;
    let cmp = compare_fingerprints(&fg, &fh)?;
    let fields = cmp.determined_disagreements();
    if !fields.is_empty() {
        return Ok(TheoremBVerdict::Distinguished { fields });
    }
    let hyp = check_theorem_b_hypotheses(g)?;
    if !hyp.satisfied() {
        return Ok(TheoremBVerdict::HypothesesNotSatisfied(hyp));
    }
    let ext = extract_presentation(g)?;
    let (h_quotient, _) = theorem_quotient(h)?;
    match find_satisfying_tuple(&ext.rdata, &h_quotient, search_cap)? {
        Some(h_tuple) => {
            let g_tuple = ext.tuple();
            Ok(TheoremBVerdict::QuotientsIsomorphic(Box::new(QuotientIsoWitness {
                rdata: ext.rdata,
                g_quotient: ext.quotient,
                g_tuple,
                h_quotient,
                h_tuple,
            })))
        }
        None => Ok(TheoremBVerdict::QuotientsNotIsomorphic),
    }
}

/// Recomputed consequences of |G : Z(G)| = p^3. All three hold for every
/// such group; they are exposed separately so callers can audit them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CentralIndexStructure {
    pub class_at_most_3: bool,
    pub derived_elementary_abelian: bool,
    pub class_2_or_noncentral_rank_2: bool,
}

impl CentralIndexStructure {
    pub fn all_hold(&self) -> bool {
        self.class_at_most_3 && self.derived_elementary_abelian && self.class_2_or_noncentral_rank_2
    }
}

/// Recompute the structural facts forced on a group whose center has index
/// p^3. The caller is responsible for checking the index itself.
pub fn check_central_index_structure(grp: &PcGroup) -> Result<CentralIndexStructure> {
    let class = grp.nilpotency_class();
    let lcs = grp.lower_central_series();
    let gamma2 = gamma_term(grp, &lcs, 2);
    let center = grp.center()?;
    let phi = grp.frattini()?;
    let zphi = grp.subgroup_product(&center, &phi)?;
    let d = grp.ngens() - zphi.log_order();
    Ok(CentralIndexStructure {
        class_at_most_3: class <= 3,
        derived_elementary_abelian: gamma2.is_elementary_abelian(grp),
        class_2_or_noncentral_rank_2: class == 2 || d == 2,
    })
}

/// Witness for a whole-group isomorphism found by [`theorem_a_pipeline`].
#[derive(Debug)]
pub enum TheoremAWitness {
    /// Class-2 branch: an explicit isomorphism between the quotients
    /// G / gamma_2^p gamma_3, which equal the groups themselves here.
    /// `generator_images` maps the pc generators of `source` into `target`.
    SmallQuotientIsomorphism {
        source: PcGroup,
        target: PcGroup,
        generator_images: Vec<GroupElement>,
    },
    /// Class-3 branch: the reduction quotients equal the groups, so the
    /// relation-table witness is a direct isomorphism description.
    ReducedIsomorphism(Box<QuotientIsoWitness>),
}

#[derive(Debug)]
pub enum TheoremAVerdict {
    /// A determined invariant differs: the groups are not isomorphic and
    /// neither are their group algebras.
    Distinguished { fields: Vec<String> },
    Isomorphic(Box<TheoremAWitness>),
    /// Proven not isomorphic; for groups in this class the group algebra
    /// determines the group, so the algebras differ as well.
    NotIsomorphic,
}

/// Decide whether two groups with |G : Z(G)| = p^3 (p odd) are isomorphic.
/// `search_cap` bounds both the brute-force isomorphism search of the
/// class-2 branch and the tuple search of the class-3 branch.
pub fn theorem_a_pipeline(
    g: &PcGroup,
    h: &PcGroup,
    search_cap: u64,
) -> Result<TheoremAVerdict> {
    if g.p() != h.p() {
        return Err(Error::Input(format!(
            "cannot compare groups over different primes {} and {}",
            g.p(),
            h.p()
        )));
    }
    let p = g.p() as u64;
    for (side, grp) in [("first", g), ("second", h)] {
        let center = grp.center()?;
        let index = grp.order() / center.order(grp);
        if index != p * p * p {
            return Err(Error::Precondition(format!(
                "the {side} group has center index {index}, this decision procedure \
                 requires index {}",
                p * p * p
            )));
        }
        let structure = check_central_index_structure(grp)?;
        if !structure.all_hold() {
            return Err(Error::Invariant(format!(
                "the {side} group violates the structure forced by center index p^3: \
                 {structure:?}"
            )));
        }
    }

    let fg = fingerprint(g)?;
    let fh = fingerprint(h)?;
    let cmp = compare_fingerprints(&fg, &fh)?;
    let fields = cmp.determined_disagreements();
    if !fields.is_empty() {
        return Ok(TheoremAVerdict::Distinguished { fields });
    }

    if g.nilpotency_class() == 2 {
        // gamma_2 is elementary abelian and gamma_3 = 1, so the quotient
        // by gamma_2^p gamma_3 is the group itself; the quotient is
        // determined by the group algebra, so comparing the two quotients
        // decides both questions at once.
        let gs = small_quotient(g)?;
        let hs = small_quotient(h)?;
        return match is_isomorphic_bruteforce(&gs, &hs, search_cap)? {
            Some(generator_images) => {
                Ok(TheoremAVerdict::Isomorphic(Box::new(TheoremAWitness::SmallQuotientIsomorphism {
                    source: gs,
                    target: hs,
                    generator_images,
                })))
            }
            None => Ok(TheoremAVerdict::NotIsomorphic),
        };
    }

    // Class 3: the reduction kernel gamma_2^p gamma_4 is trivial, so the
    // reduced-group comparison decides the groups themselves.
    for (side, grp) in [("first", g), ("second", h)] {
        let (quot, _) = theorem_quotient(grp)?;
        if quot.order() != grp.order() {
            return Err(Error::Invariant(format!(
                "the {side} group has a nontrivial reduction kernel despite center \
                 index p^3 and class 3"
            )));
        }
    }
    match theorem_b_pipeline(g, h, search_cap)? {
        TheoremBVerdict::Distinguished { fields } => {
            Ok(TheoremAVerdict::Distinguished { fields })
        }
        TheoremBVerdict::HypothesesNotSatisfied(hyp) => Err(Error::Invariant(format!(
            "recovery hypotheses must hold for class-3 groups with center index p^3, \
             got {hyp:?}"
        ))),
        TheoremBVerdict::QuotientsIsomorphic(witness) => {
            Ok(TheoremAVerdict::Isomorphic(Box::new(TheoremAWitness::ReducedIsomorphism(witness))))
        }
        TheoremBVerdict::QuotientsNotIsomorphic => Ok(TheoremAVerdict::NotIsomorphic),
    }
}

/// The quotient G / gamma_2(G)^p gamma_3(G).
fn small_quotient(grp: &PcGroup) -> Result<PcGroup> {
    let lcs = grp.lower_central_series();
    let gamma2 = gamma_term(grp, &lcs, 2);
    let gamma3 = gamma_term(grp, &lcs, 3);
    let kernel = grp.subgroup_product(&grp.subgroup_power_p(&gamma2)?, &gamma3)?;
    Ok(grp.quotient_presentation(&kernel)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::mip::verify_relations;
    use crate::pcgroup::{presentation_on_pc_sequence, PcPresentation};
    use std::collections::BTreeMap;

    fn group(name: &str, param: u64) -> PcGroup {
        catalog::builtin(name, param).expect("builtin").group().expect("consistent")
    }

    /// Rebase a group on the pc sequence s_i = g_i g_{i+1} (s_n = g_n), a
    /// deterministic relabeling that keeps the group but scrambles the
    /// presentation.
    fn relabel(grp: &PcGroup) -> PcGroup {
        let n = grp.ngens();
        let seq: Vec<_> = (0..n)
            .map(|i| {
                let gi = grp.generator(i).expect("index in range");
                if i + 1 < n {
                    grp.multiply(&gi, &grp.generator(i + 1).expect("index in range"))
                } else {
                    gi
                }
            })
            .collect();
        presentation_on_pc_sequence(grp, &seq, format!("{}-relabeled", grp.name()))
            .expect("valid sequence")
            .0
    }

    #[test]
    fn reduced_groups_of_a_group_and_its_relabeling_are_isomorphic() {
        for (name, param) in [("heisenberg", 3), ("maxclass_p4", 3)] {
            let g = group(name, param);
            let h = relabel(&g);
            match theorem_b_pipeline(&g, &h, 729).expect("pipeline") {
                TheoremBVerdict::QuotientsIsomorphic(w) => {
                    assert!(verify_relations(&w.rdata, &w.g_quotient, &w.g_tuple).expect("verify"));
                    assert!(verify_relations(&w.rdata, &w.h_quotient, &w.h_tuple).expect("verify"));
                }
                other => panic!("{name}: expected isomorphic quotients, got {other:?}"),
            }
        }
    }

    #[test]
    fn determined_disagreement_short_circuits_theorem_b() {
        let g = group("heisenberg", 3);
        let h = group("modular", 3);
        match theorem_b_pipeline(&g, &h, 729).expect("pipeline") {
            TheoremBVerdict::Distinguished { fields } => {
                assert!(fields.contains(&"jennings_dimensions".to_string()), "{fields:?}");
            }
            other => panic!("expected distinguished, got {other:?}"),
        }
    }

    #[test]
    fn failed_hypotheses_are_reported_not_errored() {
        let m = group("modular", 3);
        match theorem_b_pipeline(&m, &m, 729).expect("pipeline") {
            TheoremBVerdict::HypothesesNotSatisfied(hyp) => {
                assert!(!hyp.cond_a);
                assert!(hyp.cond_b);
            }
            other => panic!("expected hypothesis failure, got {other:?}"),
        }
    }

    #[test]
    fn central_index_structure_holds_for_the_eligible_catalog_groups() {
        for (name, param) in
            [("maxclass_p4", 3), ("maxclass_p4", 5), ("G5_7_1599", 5), ("G5_7_1734", 5)]
        {
            let g = group(name, param);
            let structure = check_central_index_structure(&g).expect("check");
            assert!(structure.all_hold(), "{name}:{param}: {structure:?}");
        }
    }

    #[test]
    fn theorem_a_requires_center_index_p_cubed() {
        // Both order-27 nonabelian groups have center index 9.
        let g = group("heisenberg", 3);
        let h = group("modular", 3);
        match theorem_a_pipeline(&g, &h, 729) {
            Err(Error::Precondition(msg)) => {
                assert!(msg.contains("center index 9"), "{msg}");
            }
            other => panic!("expected precondition error, got {other:?}"),
        }
    }

    #[test]
    fn theorem_a_rejects_mixed_primes() {
        let g = group("maxclass_p4", 3);
        let h = group("maxclass_p4", 5);
        assert!(matches!(theorem_a_pipeline(&g, &h, 729), Err(Error::Input(_))));
    }

    #[test]
    fn theorem_a_decides_the_class_3_case() {
        let g = group("maxclass_p4", 3);
        let h = relabel(&g);
        match theorem_a_pipeline(&g, &h, 729).expect("pipeline") {
            TheoremAVerdict::Isomorphic(witness) => match *witness {
                TheoremAWitness::ReducedIsomorphism(w) => {
                    assert_eq!(w.g_quotient.order(), 81);
                    assert!(verify_relations(&w.rdata, &w.h_quotient, &w.h_tuple).expect("verify"));
                }
                other => panic!("expected the class-3 branch, got {other:?}"),
            },
            other => panic!("expected isomorphic, got {other:?}"),
        }
    }

    /// The relatively free class-2 exponent-p group on three generators:
    /// order p^6, center = derived subgroup of order p^3, center index p^3.
    fn free_class2_rank3(p: u32) -> PcGroup {
        let mut comms = BTreeMap::new();
        comms.insert((1, 0), vec![(3, 1)]);
        comms.insert((2, 0), vec![(4, 1)]);
        comms.insert((2, 1), vec![(5, 1)]);
        PcGroup::new(
            PcPresentation::new(format!("free-c2-r3-{p}"), p, 6, vec![vec![]; 6], comms)
                .expect("valid presentation"),
        )
        .expect("consistent")
    }

    #[test]
    fn theorem_a_decides_the_class_2_case() {
        let g = free_class2_rank3(3);
        assert_eq!(g.order(), 729);
        assert_eq!(g.nilpotency_class(), 2);
        let center = g.center().expect("center");
        assert_eq!(g.order() / center.order(&g), 27);

        let h = relabel(&g);
        match theorem_a_pipeline(&g, &h, 729).expect("pipeline") {
            TheoremAVerdict::Isomorphic(witness) => match *witness {
                TheoremAWitness::SmallQuotientIsomorphism { source, target, generator_images } => {
                    assert_eq!(source.order(), 729);
                    assert_eq!(target.order(), 729);
                    assert_eq!(generator_images.len(), 6);
                }
                other => panic!("expected the class-2 branch, got {other:?}"),
            },
            other => panic!("expected isomorphic, got {other:?}"),
        }
    }

    #[test]
    fn theorem_a_distinguishes_on_determined_fields() {
        // maxclass at p = 3 has exponent 9 and Jennings dimensions that
        // differ from an ad hoc exponent-3 competitor of the same order.
        let g = group("maxclass_p4", 3);
        // C3 x (free class-2 on 2 generators of order 27): order 81,
        // class 2, center C3 x C3 of index 9, so the precondition fails;
        // use instead the direct fingerprint comparison path through
        // theorem_b with a group of equal order: elementary abelian.
        let h = group("elem_abelian", 81);
        match theorem_b_pipeline(&g, &h, 729).expect("pipeline") {
            TheoremBVerdict::Distinguished { fields } => {
                assert!(fields.contains(&"abelianization".to_string()), "{fields:?}");
            }
            other => panic!("expected distinguished, got {other:?}"),
        }
    }

    #[test]
    fn the_5_7_stress_pair_hits_the_search_cap() {
        let g = group("G5_7_1599", 5);
        let h = group("G5_7_1734", 5);
        match theorem_a_pipeline(&g, &h, 729) {
            Err(Error::Resource(_)) => {}
            other => panic!("expected resource error at the default cap, got {other:?}"),
        }
    }
}
