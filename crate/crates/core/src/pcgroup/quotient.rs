//! Quotient presentations and pc-basis changes.
//!
//! Both constructions produce a fresh consistent presentation together
//! with a translation map. Quotients use the canonical coset transversal
//! of the normal subgroup (exponent vectors vanishing at the subgroup's
//! leading positions); basis changes re-express the group on a supplied
//! pc sequence by reading off coordinates through left division.

use std::collections::BTreeMap;

use super::{GroupElement, PcGroup, PcPresentation, Subgroup, Word};
use crate::error::{Error, Result};

/// Translation between a group and one of its quotients G/N.
///
/// `kept` lists the ambient generator positions that survive; quotient
/// generator q corresponds to ambient generator kept[q].
#[derive(Debug, Clone)]
pub struct QuotientMap {
    kept: Vec<usize>,
    nsub: Subgroup,
}

impl QuotientMap {
    pub fn kept_positions(&self) -> &[usize] {
        &self.kept
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.nsub
    }

    /// Image of an ambient element in the quotient.
    pub fn project(&self, ambient: &PcGroup, x: &GroupElement) -> GroupElement {
        let rep = self.nsub.coset_rep(ambient, x);
        let exps: Vec<u32> = self.kept.iter().map(|&c| rep.exponents()[c]).collect();
        GroupElement::from_exps(exps)
    }

    /// Canonical lift: the coset representative itself.
    pub fn lift(&self, ambient: &PcGroup, q: &GroupElement) -> GroupElement {
        let mut exps = vec![0u32; ambient.ngens()];
        for (pos, &c) in self.kept.iter().enumerate() {
            exps[c] = q.exponents()[pos];
        }
        GroupElement::from_exps(exps)
    }
}

impl PcGroup {
    /// Presentation of G/N on the generators of G that fall outside N's
    /// leading positions, plus the projection map. N must be normal.
    pub fn quotient_presentation(&self, n: &Subgroup) -> Result<(PcGroup, QuotientMap)> {
        if !n.is_normal(self) {
            return Err(Error::Precondition(
                "quotient by a non-normal subgroup".to_string(),
            ));
        }
        let kept: Vec<usize> =
            (0..self.ngens()).filter(|i| !n.leads().contains(i)).collect();
        let map = QuotientMap { kept: kept.clone(), nsub: n.clone() };
        let q = kept.len();

        let to_word = |x: &GroupElement, above: usize| -> Result<Word> {
            let rep = map.nsub.coset_rep(self, x);
            let mut word = Word::new();
            for (pos, &c) in kept.iter().enumerate() {
                let e = rep.exponents()[c];
                if e != 0 {
                    if pos <= above {
                        return Err(Error::Invariant(format!(
                            "quotient relation word escapes below its generator: {}",
                            self.format_element(&rep)
                        )));
                    }
                    word.push((pos, e));
                }
            }
            Ok(word)
        };

        let mut powers = Vec::with_capacity(q);
        for (pos, &c) in kept.iter().enumerate() {
            let gc = self.generator(c)?;
            powers.push(to_word(&self.power(&gc, self.p() as i64), pos)?);
        }
        let mut comms: BTreeMap<(usize, usize), Word> = BTreeMap::new();
        for (pi, &ci) in kept.iter().enumerate() {
            for (pj, &cj) in kept.iter().enumerate().skip(pi + 1) {
                let gi = self.generator(ci)?;
                let gj = self.generator(cj)?;
                let w = to_word(&self.commutator(&gj, &gi), pi)?;
                if !w.is_empty() {
                    comms.insert((pj, pi), w);
                }
            }
        }
        let pres = PcPresentation::new(
            format!("{}/N", self.name()),
            self.p(),
            q,
            powers,
            comms,
        )?;
        Ok((PcGroup::new(pres)?, map))
    }
}

/// Re-present the whole group on a pc sequence: seq[i] must have leading
/// index i (after normalization its leading exponent is 1). Returns the
/// new presentation and the images of its generators in the old group.
///
/// The sequence need not be the canonical igs; any triangular system
/// works, which is what makes deterministic relabelings possible.
pub fn presentation_on_pc_sequence(
    grp: &PcGroup,
    seq: &[GroupElement],
    name: impl Into<String>,
) -> Result<(PcGroup, Vec<GroupElement>)> {
    let n = grp.ngens();
    if seq.len() != n {
        return Err(Error::Input(format!(
            "pc sequence has {} entries, group needs {n}",
            seq.len()
        )));
    }
    let mut basis = Vec::with_capacity(n);
    for (i, x) in seq.iter().enumerate() {
        if x.leading_index() != Some(i) {
            return Err(Error::Input(format!(
                "pc sequence entry {} must have leading index {}",
                i + 1,
                i + 1
            )));
        }
        basis.push(grp.normalize_leading(x));
    }

    // coordinates over the sequence by left division; the leading-index
    // structure makes the decomposition triangular
    let coords = |x: &GroupElement, above: usize| -> Result<Word> {
        let mut cur = x.clone();
        let mut word = Word::new();
        for (i, t) in basis.iter().enumerate() {
            let e = cur.exponents()[i];
            if e != 0 {
                if i <= above {
                    return Err(Error::Invariant(format!(
                        "relation word escapes below its generator: {}",
                        grp.format_element(x)
                    )));
                }
                word.push((i, e));
                let te_inv = grp.inverse(&grp.power(t, e as i64));
                cur = grp.multiply(&te_inv, &cur);
            }
        }
        if !cur.is_identity() {
            return Err(Error::Invariant(
                "pc sequence does not span the group".to_string(),
            ));
        }
        Ok(word)
    };

    let mut powers = Vec::with_capacity(n);
    for (i, t) in basis.iter().enumerate() {
        powers.push(coords(&grp.power(t, grp.p() as i64), i)?);
    }
    let mut comms: BTreeMap<(usize, usize), Word> = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let w = coords(&grp.commutator(&basis[j], &basis[i]), i)?;
            if !w.is_empty() {
                comms.insert((j, i), w);
            }
        }
    }
    let pres = PcPresentation::new(name, grp.p(), n, powers, comms)?;
    Ok((PcGroup::new(pres)?, basis))
}
