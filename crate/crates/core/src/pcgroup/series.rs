//! Characteristic subgroups and series: center, lower central series,
//! agemo, Frattini, Jennings dimension series, abelian invariants,
//! Burnside bases, conjugacy classes and element-order statistics.

use std::collections::BTreeMap;

use super::{GroupElement, PcGroup, Subgroup};
use crate::error::{Error, Result};

/// center() scans every element against the pc generators; the largest
/// supported example groups have order 5^7, so the scan refuses anything
/// bigger rather than stall silently.
pub const CENTER_SCAN_CAP: u64 = 78_125;

/// Full-group scans (exponent, order histogram, conjugacy classes, agemo,
/// p-th power subgroups) share the same ceiling.
pub const ELEMENT_SCAN_CAP: u64 = 78_125;

impl PcGroup {
    /// Elements commuting with every pc generator; since the generators
    /// generate, this is exactly the center.
    pub fn center(&self) -> Result<Subgroup> {
        if self.order() > CENTER_SCAN_CAP {
            return Err(Error::Resource(format!(
                "center scan over {} elements exceeds the cap {}",
                self.order(),
                CENTER_SCAN_CAP
            )));
        }
        let gens = self.generators();
        let mut central = Vec::new();
        for x in self.elements() {
            if gens
                .iter()
                .all(|g| self.multiply(&x, g) == self.multiply(g, &x))
            {
                central.push(x);
            }
        }
        Ok(Subgroup::closure(self, &central))
    }

    /// [H, G] for a normal subgroup H: the normal closure of the
    /// commutators of H's igs against the pc generators.
    pub fn commutator_with_group(&self, h: &Subgroup) -> Subgroup {
        let mut gens = Vec::new();
        for t in h.igs() {
            for i in 0..self.ngens() {
                let gi = self.generator(i).expect("index in range");
                let c = self.commutator(t, &gi);
                if !c.is_identity() {
                    gens.push(c);
                }
            }
        }
        Subgroup::normal_closure(self, &gens)
    }

    /// Descending series G = γ_1 ⊇ γ_2 ⊇ ... ending with the trivial
    /// subgroup; γ_{i+1} = [γ_i, G].
    pub fn lower_central_series(&self) -> Vec<Subgroup> {
        let mut series = vec![Subgroup::full_group(self)];
        loop {
            let cur = series.last().expect("nonempty");
            if cur.is_trivial() {
                return series;
            }
            let next = self.commutator_with_group(cur);
            debug_assert!(
                next.log_order() < cur.log_order(),
                "lower central series of a p-group must descend strictly"
            );
            series.push(next);
        }
    }

    pub fn nilpotency_class(&self) -> usize {
        self.lower_central_series().len() - 1
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        self.commutator_with_group(&Subgroup::full_group(self))
    }

    /// G^p, the subgroup generated by all p-th powers.
    pub fn agemo(&self) -> Result<Subgroup> {
        if self.order() > ELEMENT_SCAN_CAP {
            return Err(Error::Resource(format!(
                "p-th power scan over {} elements exceeds the cap {}",
                self.order(),
                ELEMENT_SCAN_CAP
            )));
        }
        let powers: Vec<GroupElement> =
            self.elements().map(|x| self.power(&x, self.p() as i64)).collect();
        Ok(Subgroup::closure(self, &powers))
    }

    /// Φ(G) = G^p γ_2(G) for p-groups.
    pub fn frattini(&self) -> Result<Subgroup> {
        self.subgroup_product(&self.agemo()?, &self.derived_subgroup())
    }

    /// Product of two normal subgroups (their join).
    pub fn subgroup_product(&self, a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
        if !a.is_normal(self) || !b.is_normal(self) {
            return Err(Error::Precondition(
                "subgroup product requires both operands normal".to_string(),
            ));
        }
        let mut gens = a.igs().to_vec();
        gens.extend_from_slice(b.igs());
        Ok(Subgroup::closure(self, &gens))
    }

    /// The subgroup generated by the p-th powers of all members of s.
    pub fn subgroup_power_p(&self, s: &Subgroup) -> Result<Subgroup> {
        if s.is_full_group(self) {
            return self.agemo();
        }
        let members = s.elements(self, ELEMENT_SCAN_CAP)?;
        let powers: Vec<GroupElement> =
            members.iter().map(|x| self.power(x, self.p() as i64)).collect();
        Ok(Subgroup::closure(self, &powers))
    }

    /// [H, H] for a subgroup H: the closure of commutators of the
    /// generating sequence, made invariant under conjugation by H.
    pub fn subgroup_derived(&self, h: &Subgroup) -> Subgroup {
        let igs = h.igs();
        let mut gens = Vec::new();
        for a in igs {
            for b in igs {
                let c = self.commutator(a, b);
                if !c.is_identity() {
                    gens.push(c);
                }
            }
        }
        let mut derived = Subgroup::closure(self, &gens);
        loop {
            let mut extended = gens.clone();
            let mut grew = false;
            for x in derived.igs() {
                for t in igs {
                    let conj = self.conjugate(x, t);
                    if !derived.contains(self, &conj) {
                        extended.push(conj);
                        grew = true;
                    }
                }
            }
            if !grew {
                return derived;
            }
            gens = extended;
            derived = Subgroup::closure(self, &gens);
        }
    }

    /// Φ(H) = H^p [H, H] for a subgroup of a p-group.
    pub fn subgroup_frattini(&self, h: &Subgroup) -> Result<Subgroup> {
        let power = self.subgroup_power_p(h)?;
        let derived = self.subgroup_derived(h);
        let mut gens = power.igs().to_vec();
        gens.extend_from_slice(derived.igs());
        Ok(Subgroup::closure(self, &gens))
    }

    /// Dimension subgroup series D_1 = G, D_i = [D_{i-1}, G]·(D_{⌈i/p⌉})^p,
    /// down to (and including) the trivial subgroup.
    pub fn jennings_series(&self) -> Result<Vec<Subgroup>> {
        let mut series = vec![Subgroup::full_group(self)];
        let mut power_cache: Vec<(Subgroup, Subgroup)> = Vec::new();
        let mut i = 2usize;
        while !series.last().expect("nonempty").is_trivial() {
            if i > 10_000 {
                return Err(Error::Invariant(
                    "dimension subgroup series failed to terminate".to_string(),
                ));
            }
            let dprev = series[i - 2].clone();
            let dceil = series[i.div_ceil(self.p() as usize) - 1].clone();
            let comm = self.commutator_with_group(&dprev);
            let pow = match power_cache.iter().find(|(k, _)| *k == dceil) {
                Some((_, v)) => v.clone(),
                None => {
                    let v = self.subgroup_power_p(&dceil)?;
                    power_cache.push((dceil, v.clone()));
                    v
                }
            };
            series.push(self.subgroup_product(&comm, &pow)?);
            i += 1;
        }
        Ok(series)
    }

    /// log_p |D_i / D_{i+1}| for i = 1, 2, ...; the entries sum to
    /// log_p |G|.
    pub fn jennings_dimensions(&self) -> Result<Vec<usize>> {
        let series = self.jennings_series()?;
        Ok(series
            .windows(2)
            .map(|w| w[0].log_order() - w[1].log_order())
            .collect())
    }

    /// Elementary divisors of an abelian subgroup as p-powers, largest
    /// first, via the ranks of the iterated p-th power subgroups.
    pub fn abelian_invariants(&self, s: &Subgroup) -> Result<Vec<u64>> {
        if !s.is_abelian(self) {
            return Err(Error::Precondition(
                "abelian invariants of a non-abelian subgroup".to_string(),
            ));
        }
        let mut ranks = vec![s.log_order()];
        let mut cur = s.clone();
        while !cur.is_trivial() {
            cur = self.subgroup_power_p(&cur)?;
            ranks.push(cur.log_order());
        }
        let mut invariants = Vec::new();
        for k in 1..ranks.len() {
            let m_k = ranks[k - 1] - ranks[k];
            let m_next = if k + 1 < ranks.len() { ranks[k] - ranks[k + 1] } else { 0 };
            let exactly_k = m_k - m_next;
            let value = (self.p() as u64).pow(k as u32);
            for _ in 0..exactly_k {
                invariants.push(value);
            }
        }
        invariants.sort_unstable_by(|a, b| b.cmp(a));
        Ok(invariants)
    }

    /// Minimal generating set: the lowest-index pc generators that are
    /// successively independent modulo the Frattini subgroup.
    pub fn burnside_basis(&self) -> Result<Vec<GroupElement>> {
        let phi = self.frattini()?;
        let mut span = phi;
        let mut basis = Vec::new();
        for i in 0..self.ngens() {
            let gi = self.generator(i).expect("index in range");
            if !span.contains(self, &gi) {
                let mut gens = span.igs().to_vec();
                gens.push(gi.clone());
                span = Subgroup::closure(self, &gens);
                basis.push(gi);
            }
        }
        debug_assert!(span.is_full_group(self));
        Ok(basis)
    }

    /// Number of Burnside basis members, i.e. log_p |G/Φ(G)|.
    pub fn minimal_generator_count(&self) -> Result<usize> {
        Ok(self.ngens() - self.frattini()?.log_order())
    }

    /// Conjugacy classes as sorted rank lists, ordered by smallest member.
    pub fn conjugacy_classes(&self, cap: u64) -> Result<Vec<Vec<u64>>> {
        if self.order() > cap {
            return Err(Error::Resource(format!(
                "conjugacy class scan over {} elements exceeds the cap {cap}",
                self.order()
            )));
        }
        let gens = self.generators();
        let mut visited = vec![false; self.order() as usize];
        let mut classes = Vec::new();
        for r in 0..self.order() {
            if visited[r as usize] {
                continue;
            }
            let mut class = vec![r];
            visited[r as usize] = true;
            let mut frontier = vec![self.unrank(r)];
            while let Some(x) = frontier.pop() {
                for g in &gens {
                    let y = self.conjugate(&x, g);
                    let yr = self.rank_of(&y);
                    if !visited[yr as usize] {
                        visited[yr as usize] = true;
                        class.push(yr);
                        frontier.push(y);
                    }
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        Ok(classes)
    }

    /// Count of elements of each order.
    pub fn element_order_histogram(&self, cap: u64) -> Result<BTreeMap<u64, u64>> {
        if self.order() > cap {
            return Err(Error::Resource(format!(
                "order histogram over {} elements exceeds the cap {cap}",
                self.order()
            )));
        }
        let mut hist = BTreeMap::new();
        for x in self.elements() {
            *hist.entry(self.element_order(&x)).or_insert(0u64) += 1;
        }
        Ok(hist)
    }

    pub fn exponent(&self, cap: u64) -> Result<u64> {
        let hist = self.element_order_histogram(cap)?;
        Ok(hist.keys().copied().max().unwrap_or(1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcgroup::PcPresentation;

    fn group(name: &str, p: u32, powers: Vec<Vec<(usize, u32)>>, comms: &[((usize, usize), Vec<(usize, u32)>)]) -> PcGroup {
        let map: BTreeMap<(usize, usize), Vec<(usize, u32)>> =
            comms.iter().cloned().collect();
        PcGroup::new(PcPresentation::new(name, p, powers.len(), powers, map).unwrap()).unwrap()
    }

    fn heisenberg3() -> PcGroup {
        group("heisenberg3", 3, vec![vec![], vec![], vec![]], &[((1, 0), vec![(2, 1)])])
    }

    fn modular27() -> PcGroup {
        group("modular27", 3, vec![vec![], vec![(2, 1)], vec![]], &[((1, 0), vec![(2, 1)])])
    }

    fn cyclic9() -> PcGroup {
        group("cyclic9", 3, vec![vec![(1, 1)], vec![]], &[])
    }

    #[test]
    fn heisenberg_center_frattini_derived_coincide() {
        let g = heisenberg3();
        let z = g.center().unwrap();
        let phi = g.frattini().unwrap();
        let der = g.derived_subgroup();
        assert_eq!(z.order(&g), 3);
        assert_eq!(z, phi);
        assert_eq!(z, der);
        assert_eq!(z.leads(), &[2]);
    }

    #[test]
    fn heisenberg_lower_central_series() {
        let g = heisenberg3();
        let lcs = g.lower_central_series();
        let orders: Vec<u64> = lcs.iter().map(|s| s.order(&g)).collect();
        assert_eq!(orders, vec![27, 3, 1]);
        assert_eq!(g.nilpotency_class(), 2);
    }

    #[test]
    fn modular_center_is_cube_subgroup() {
        let g = modular27();
        let z = g.center().unwrap();
        assert_eq!(z.order(&g), 3);
        let a3 = g.generator(2).unwrap();
        assert!(z.contains(&g, &a3));
        // agemo equals the center here
        let ag = g.agemo().unwrap();
        assert_eq!(ag, z);
        assert_eq!(g.frattini().unwrap(), z);
    }

    #[test]
    fn jennings_dimensions_match_hand_computations() {
        assert_eq!(heisenberg3().jennings_dimensions().unwrap(), vec![2, 1]);
        assert_eq!(cyclic9().jennings_dimensions().unwrap(), vec![1, 0, 1]);
        assert_eq!(modular27().jennings_dimensions().unwrap(), vec![2, 0, 1]);
    }

    #[test]
    fn cyclic9_jennings_series_stalls_then_drops() {
        let g = cyclic9();
        let series = g.jennings_series().unwrap();
        let orders: Vec<u64> = series.iter().map(|s| s.order(&g)).collect();
        assert_eq!(orders, vec![9, 3, 3, 1]);
        assert_eq!(series[1], series[2]);
    }

    #[test]
    fn abelian_invariants_examples() {
        let c9 = cyclic9();
        let full = Subgroup::full_group(&c9);
        assert_eq!(c9.abelian_invariants(&full).unwrap(), vec![9]);

        let ea = group("c3c3", 3, vec![vec![], vec![]], &[]);
        let full = Subgroup::full_group(&ea);
        assert_eq!(ea.abelian_invariants(&full).unwrap(), vec![3, 3]);

        let h = heisenberg3();
        let z = h.center().unwrap();
        assert_eq!(h.abelian_invariants(&z).unwrap(), vec![3]);
        let nonabelian = Subgroup::full_group(&h);
        assert!(h.abelian_invariants(&nonabelian).is_err());
    }

    #[test]
    fn burnside_basis_picks_low_generators() {
        let g = heisenberg3();
        let basis = g.burnside_basis().unwrap();
        assert_eq!(basis.len(), 2);
        assert_eq!(basis[0], g.generator(0).unwrap());
        assert_eq!(basis[1], g.generator(1).unwrap());
        assert_eq!(g.minimal_generator_count().unwrap(), 2);

        let c9 = cyclic9();
        assert_eq!(c9.burnside_basis().unwrap().len(), 1);
    }

    #[test]
    fn heisenberg_has_eleven_conjugacy_classes() {
        let g = heisenberg3();
        let classes = g.conjugacy_classes(100_000).unwrap();
        assert_eq!(classes.len(), 11);
        let mut sizes: Vec<usize> = classes.iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 1, 3, 3, 3, 3, 3, 3, 3, 3]);
    }

    #[test]
    fn order_histogram_and_exponent() {
        let g = modular27();
        let hist = g.element_order_histogram(100_000).unwrap();
        // identity, 8 elements of order 3 + ... modular group of order 27
        // has 1 + 8 elements of order ≤ 3 and 18 of order 9
        assert_eq!(hist[&1], 1);
        assert_eq!(hist[&3], 8);
        assert_eq!(hist[&9], 18);
        assert_eq!(g.exponent(100_000).unwrap(), 9);

        let h = heisenberg3();
        assert_eq!(h.exponent(100_000).unwrap(), 3);
    }

    #[test]
    fn subgroup_product_requires_normality() {
        let g = modular27();
        let b = g.generator(0).unwrap();
        let not_normal = Subgroup::closure(&g, &[b]);
        let z = g.center().unwrap();
        assert!(g.subgroup_product(&not_normal, &z).is_err());
        let ok = g.subgroup_product(&z, &g.derived_subgroup()).unwrap();
        assert_eq!(ok.order(&g), 3);
    }

    #[test]
    fn subgroup_derived_and_frattini_agree_with_whole_group_versions() {
        let g = modular27();
        let full = Subgroup::full_group(&g);
        assert_eq!(g.subgroup_derived(&full), g.derived_subgroup());
        assert_eq!(g.subgroup_frattini(&full).unwrap(), g.frattini().unwrap());
        // the derived subgroup of the abelian maximal subgroup <a> is trivial
        let a = Subgroup::closure(&g, &[g.generator(1).unwrap()]);
        assert!(g.subgroup_derived(&a).is_trivial());
        assert_eq!(g.subgroup_frattini(&a).unwrap().order(&g), 3);
    }

    #[test]
    fn center_cap_is_enforced() {
        // 3^11 = 177147 exceeds the element scan cap
        let big = group(
            "big",
            3,
            (0..11).map(|_| vec![]).collect(),
            &[],
        );
        assert!(big.center().is_err());
        assert!(big.agemo().is_err());
    }
}
