//! Subgroups as induced generating sequences over the pc basis.
//!
//! A subgroup of a group of order p^n is stored as at most n elements with
//! strictly increasing leading indices (one slot per leading position),
//! leading exponent 1, and zero exponents at every other slot's leading
//! position. That canonical form is unique per subgroup, so equality of
//! subgroups is equality of the stored data. Membership, coset
//! representatives and closures all run by leading-term reduction, the
//! non-commutative analogue of Gaussian elimination.

use super::{GroupElement, PcGroup};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    igs: Vec<GroupElement>,
    leads: Vec<usize>,
}

/// Reduce x at the occupied slots (right-multiplying by slot powers) until
/// it is absorbed or stuck at an unoccupied leading index.
fn sift(grp: &PcGroup, slots: &[Option<GroupElement>], x: GroupElement) -> SiftOutcome {
    let p = grp.p();
    let mut cur = x;
    loop {
        let Some(l) = cur.leading_index() else {
            return SiftOutcome::Absorbed;
        };
        let Some(t) = &slots[l] else {
            return SiftOutcome::Stuck(cur, l);
        };
        let e = cur.exponents()[l];
        let cancel = grp.power(t, (p - e) as i64);
        cur = grp.multiply(&cur, &cancel);
        debug_assert_eq!(cur.exponents()[l], 0);
    }
}

enum SiftOutcome {
    Absorbed,
    Stuck(GroupElement, usize),
}

/// Sift and, if not absorbed, insert the normalized remainder at its
/// leading slot. Returns true if the span grew.
fn sift_insert(grp: &PcGroup, slots: &mut [Option<GroupElement>], x: GroupElement) -> bool {
    match sift(grp, slots, x) {
        SiftOutcome::Absorbed => false,
        SiftOutcome::Stuck(y, l) => {
            slots[l] = Some(grp.normalize_leading(&y));
            true
        }
    }
}

fn slots_to_canonical(grp: &PcGroup, mut slots: Vec<Option<GroupElement>>) -> Subgroup {
    let p = grp.p();
    let leads: Vec<usize> =
        (0..slots.len()).filter(|&l| slots[l].is_some()).collect();
    // back-reduce: zero each slot's exponents at the other leading
    // positions; ascending order is enough because right-multiplying by an
    // element of H_{l'} never disturbs exponents below l'
    for idx in 0..leads.len() {
        let l = leads[idx];
        let mut t = slots[l].take().expect("occupied slot");
        for &l2 in &leads[idx + 1..] {
            let e = t.exponents()[l2];
            if e != 0 {
                let u = slots[l2].as_ref().expect("occupied slot");
                let cancel = grp.power(u, (p - e) as i64);
                t = grp.multiply(&t, &cancel);
            }
            debug_assert_eq!(t.exponents()[l2], 0);
        }
        slots[l] = Some(t);
    }
    let igs: Vec<GroupElement> = leads.iter().map(|&l| slots[l].take().unwrap()).collect();
    Subgroup { igs, leads }
}

impl Subgroup {
    pub fn trivial(grp: &PcGroup) -> Subgroup {
        Subgroup::closure(grp, &[])
    }

    pub fn full_group(grp: &PcGroup) -> Subgroup {
        Subgroup::closure(grp, &grp.generators())
    }

    /// Subgroup generated by the given elements.
    ///
    /// Maintains one slot per leading index and keeps sifting products and
    /// p-th powers of slot entries until nothing new appears. At that
    /// fixpoint the ascending products of slot powers form the subgroup:
    /// by downward induction on the slots, each slot element normalizes
    /// the group generated by the later ones (its conjugation relation is
    /// exactly the absorbed product t*u), so the spans multiply out to
    /// order p^(number of slots).
    pub fn closure(grp: &PcGroup, gens: &[GroupElement]) -> Subgroup {
        let n = grp.ngens();
        let mut slots: Vec<Option<GroupElement>> = vec![None; n];
        for g in gens {
            sift_insert(grp, &mut slots, g.clone());
        }
        let mut changed = true;
        while changed {
            changed = false;
            let members: Vec<GroupElement> =
                slots.iter().flatten().cloned().collect();
            for a in &members {
                let ap = grp.power(a, grp.p() as i64);
                if sift_insert(grp, &mut slots, ap) {
                    changed = true;
                }
                for b in &members {
                    let ab = grp.multiply(a, b);
                    if sift_insert(grp, &mut slots, ab) {
                        changed = true;
                    }
                }
            }
        }
        slots_to_canonical(grp, slots)
    }

    /// Smallest subgroup containing the elements and closed under
    /// conjugation by the whole group.
    pub fn normal_closure(grp: &PcGroup, gens: &[GroupElement]) -> Subgroup {
        let mut sub = Subgroup::closure(grp, gens);
        loop {
            let mut extra: Vec<GroupElement> = Vec::new();
            for t in &sub.igs {
                for i in 0..grp.ngens() {
                    let gi = grp.generator(i).expect("index in range");
                    let c = grp.conjugate(t, &gi);
                    if !sub.contains(grp, &c) {
                        extra.push(c);
                    }
                }
            }
            if extra.is_empty() {
                return sub;
            }
            let mut gens2 = sub.igs.clone();
            gens2.extend(extra);
            sub = Subgroup::closure(grp, &gens2);
        }
    }

    pub fn igs(&self) -> &[GroupElement] {
        &self.igs
    }

    pub fn leads(&self) -> &[usize] {
        &self.leads
    }

    /// log_p of the order.
    pub fn log_order(&self) -> usize {
        self.igs.len()
    }

    pub fn order(&self, grp: &PcGroup) -> u64 {
        (grp.p() as u64).pow(self.igs.len() as u32)
    }

    pub fn is_trivial(&self) -> bool {
        self.igs.is_empty()
    }

    pub fn is_full_group(&self, grp: &PcGroup) -> bool {
        self.igs.len() == grp.ngens()
    }

    fn occupied_slots(&self, grp: &PcGroup) -> Vec<Option<GroupElement>> {
        let mut slots: Vec<Option<GroupElement>> = vec![None; grp.ngens()];
        for (t, &l) in self.igs.iter().zip(&self.leads) {
            slots[l] = Some(t.clone());
        }
        slots
    }

    pub fn contains(&self, grp: &PcGroup, x: &GroupElement) -> bool {
        let slots = self.occupied_slots(grp);
        matches!(sift(grp, &slots, x.clone()), SiftOutcome::Absorbed)
    }

    pub fn contains_subgroup(&self, grp: &PcGroup, other: &Subgroup) -> bool {
        other.igs.iter().all(|t| self.contains(grp, t))
    }

    /// Canonical representative of the coset x·S: the unique member of the
    /// coset whose exponents vanish at every slot's leading position.
    pub fn coset_rep(&self, grp: &PcGroup, x: &GroupElement) -> GroupElement {
        let p = grp.p();
        let mut cur = x.clone();
        for (t, &l) in self.igs.iter().zip(&self.leads) {
            let e = cur.exponents()[l];
            if e != 0 {
                let cancel = grp.power(t, (p - e) as i64);
                cur = grp.multiply(&cur, &cancel);
            }
            debug_assert_eq!(cur.exponents()[l], 0);
        }
        cur
    }

    /// All elements, ordered by the coefficient tuple over the igs
    /// (lexicographic, first generator most significant).
    pub fn elements(&self, grp: &PcGroup, cap: u64) -> Result<Vec<GroupElement>> {
        let count = self.order(grp);
        if count > cap {
            return Err(Error::Resource(format!(
                "subgroup of order {count} exceeds the enumeration cap {cap}"
            )));
        }
        let mut out = vec![grp.identity()];
        for t in &self.igs {
            let mut next = Vec::with_capacity(out.len() * grp.p() as usize);
            for x in &out {
                let mut cur = x.clone();
                for c in 0..grp.p() {
                    next.push(cur.clone());
                    if c + 1 < grp.p() {
                        cur = grp.multiply(&cur, t);
                    }
                }
            }
            out = next;
        }
        Ok(out)
    }

    /// Decompose a member as a coefficient tuple over the igs (by left
    /// division, since right-handed sifting reverses the factor order).
    pub fn coordinates(&self, grp: &PcGroup, x: &GroupElement) -> Result<Vec<u32>> {
        let mut cur = x.clone();
        let mut coords = Vec::with_capacity(self.igs.len());
        for (t, &l) in self.igs.iter().zip(&self.leads) {
            let e = cur.exponents()[l];
            coords.push(e);
            if e != 0 {
                let te_inv = grp.inverse(&grp.power(t, e as i64));
                cur = grp.multiply(&te_inv, &cur);
            }
        }
        if !cur.is_identity() {
            return Err(Error::Input(format!(
                "element {} is not a member of the subgroup",
                grp.format_element(x)
            )));
        }
        Ok(coords)
    }

    pub fn is_normal(&self, grp: &PcGroup) -> bool {
        for t in &self.igs {
            for i in 0..grp.ngens() {
                let gi = grp.generator(i).expect("index in range");
                if !self.contains(grp, &grp.conjugate(t, &gi)) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_abelian(&self, grp: &PcGroup) -> bool {
        for (a, t) in self.igs.iter().enumerate() {
            for u in &self.igs[a + 1..] {
                if !grp.commutator(t, u).is_identity() {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_central(&self, grp: &PcGroup) -> bool {
        self.igs.iter().all(|t| {
            (0..grp.ngens()).all(|i| {
                let gi = grp.generator(i).expect("index in range");
                grp.commutator(t, &gi).is_identity()
            })
        })
    }

    pub fn is_elementary_abelian(&self, grp: &PcGroup) -> bool {
        self.is_abelian(grp)
            && self.igs.iter().all(|t| grp.power(t, grp.p() as i64).is_identity())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcgroup::PcPresentation;
    use std::collections::BTreeMap;

    fn heisenberg3() -> PcGroup {
        let mut comms = BTreeMap::new();
        comms.insert((1, 0), vec![(2, 1)]);
        let pres =
            PcPresentation::new("heisenberg3", 3, 3, vec![vec![], vec![], vec![]], comms).unwrap();
        PcGroup::new(pres).unwrap()
    }

    fn modular27() -> PcGroup {
        let mut comms = BTreeMap::new();
        comms.insert((1, 0), vec![(2, 1)]);
        let pres =
            PcPresentation::new("modular27", 3, 3, vec![vec![], vec![(2, 1)], vec![]], comms)
                .unwrap();
        PcGroup::new(pres).unwrap()
    }

    /// Brute-force subgroup generated by `gens`, as a set of ranks.
    fn brute_span(grp: &PcGroup, gens: &[GroupElement]) -> std::collections::BTreeSet<u64> {
        let mut set = std::collections::BTreeSet::new();
        set.insert(grp.rank_of(&grp.identity()));
        let mut frontier = vec![grp.identity()];
        while let Some(x) = frontier.pop() {
            for g in gens {
                for y in [grp.multiply(&x, g), grp.multiply(g, &x)] {
                    if set.insert(grp.rank_of(&y)) {
                        frontier.push(y);
                    }
                }
            }
        }
        set
    }

    #[test]
    fn closure_matches_brute_force_on_heisenberg() {
        let g = heisenberg3();
        let all: Vec<GroupElement> = g.elements().collect();
        for a in &all {
            for b in &all {
                let sub = Subgroup::closure(&g, &[a.clone(), b.clone()]);
                let brute = brute_span(&g, &[a.clone(), b.clone()]);
                assert_eq!(sub.order(&g), brute.len() as u64);
                for x in &all {
                    assert_eq!(
                        sub.contains(&g, x),
                        brute.contains(&g.rank_of(x)),
                        "membership mismatch"
                    );
                }
            }
        }
    }

    #[test]
    fn closure_matches_brute_force_on_modular() {
        let g = modular27();
        let all: Vec<GroupElement> = g.elements().collect();
        for a in &all {
            let sub = Subgroup::closure(&g, std::slice::from_ref(a));
            let brute = brute_span(&g, std::slice::from_ref(a));
            assert_eq!(sub.order(&g), brute.len() as u64);
            assert_eq!(sub.order(&g), g.element_order(a));
        }
    }

    #[test]
    fn canonical_form_is_basis_independent() {
        let g = heisenberg3();
        let g1 = g.generator(0).unwrap();
        let g2 = g.generator(1).unwrap();
        let g3 = g.generator(2).unwrap();
        let s1 = Subgroup::closure(&g, &[g1.clone(), g2.clone()]);
        // same group from scrambled generators
        let a = g.multiply(&g1, &g.multiply(&g2, &g3));
        let b = g.multiply(&g2, &g3);
        let s2 = Subgroup::closure(&g, &[a, b]);
        assert_eq!(s1, s2);
        assert!(s1.is_full_group(&g));
    }

    #[test]
    fn center_of_heisenberg_by_hand() {
        let g = heisenberg3();
        let g3 = g.generator(2).unwrap();
        let z = Subgroup::closure(&g, &[g3]);
        assert_eq!(z.order(&g), 3);
        assert!(z.is_central(&g));
        assert!(z.is_normal(&g));
        assert!(z.is_elementary_abelian(&g));
    }

    #[test]
    fn coset_reps_are_constant_on_cosets() {
        let g = modular27();
        let a = g.generator(1).unwrap();
        let n = Subgroup::closure(&g, &[g.power(&a, 3)]);
        assert_eq!(n.order(&g), 3);
        let mut reps = std::collections::BTreeSet::new();
        for x in g.elements() {
            let r = n.coset_rep(&g, &x);
            // every member of the coset x·N reduces to the same rep
            for m in n.elements(&g, 100).unwrap() {
                let same = n.coset_rep(&g, &g.multiply(&x, &m));
                assert_eq!(same, r);
            }
            reps.insert(g.rank_of(&r));
        }
        assert_eq!(reps.len(), 9);
    }

    #[test]
    fn coordinates_reconstruct_elements() {
        let g = heisenberg3();
        let sub = Subgroup::full_group(&g);
        for x in g.elements() {
            let coords = sub.coordinates(&g, &x).unwrap();
            let mut acc = g.identity();
            for (t, &c) in sub.igs().iter().zip(&coords) {
                acc = g.multiply(&acc, &g.power(t, c as i64));
            }
            assert_eq!(acc, x);
        }
    }

    #[test]
    fn membership_error_for_outsiders() {
        let g = heisenberg3();
        let g3 = g.generator(2).unwrap();
        let z = Subgroup::closure(&g, &[g3]);
        let g1 = g.generator(0).unwrap();
        assert!(!z.contains(&g, &g1));
        assert!(z.coordinates(&g, &g1).is_err());
    }

    #[test]
    fn normal_closure_grows_to_invariant_subgroup() {
        let g = modular27();
        // <b> is not normal in the modular group; its normal closure picks
        // up the commutator [a, b] = a^{-3}... and lands on <b, a^3>
        let b = g.generator(0).unwrap();
        let plain = Subgroup::closure(&g, &[b.clone()]);
        assert!(!plain.is_normal(&g));
        let nc = Subgroup::normal_closure(&g, &[b]);
        assert!(nc.is_normal(&g));
        assert_eq!(nc.order(&g), 9);
    }
}
