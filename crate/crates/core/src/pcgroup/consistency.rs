//! Associativity checking for pc presentations, and the class-≤3
//! power-commutator identity.
//!
//! A syntactically valid presentation defines a group iff collection is
//! associative, which pins the normal forms to exactly p^n distinct
//! elements. Small groups get the full triple check through a
//! multiplication table; larger ones get the classical overlap triples
//! (g_k g_j g_i associations and power overlaps) plus a seeded random
//! sample, reported as a probabilistic pass.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{GroupElement, PcGroup};
use crate::error::{Error, Result};

/// Largest order that still gets the exhaustive triple check.
pub const EXHAUSTIVE_CONSISTENCY_CAP: u64 = 243;

/// Random triples drawn in sampled mode.
pub const SAMPLED_CONSISTENCY_TRIPLES: u64 = 100_000;

/// Largest order whose pair identities are checked exhaustively.
pub const EXHAUSTIVE_PAIR_CAP: u64 = 625;

/// Random pairs drawn when the pair identity is sampled.
pub const SAMPLED_IDENTITY_PAIRS: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConsistencyMode {
    Exhaustive,
    Probabilistic,
}

impl ConsistencyMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ConsistencyMode::Exhaustive => "exhaustive",
            ConsistencyMode::Probabilistic => "probabilistic",
        }
    }
}

/// Outcome of a consistency or identity sweep. For associativity the
/// witness is a failing triple (a, b, c); for the power-commutator
/// identity it is a failing pair (x, y).
#[derive(Debug, Clone)]
pub struct ConsistencyReport {
    pub mode: ConsistencyMode,
    pub passed: bool,
    pub checked: u64,
    pub witness: Option<Vec<GroupElement>>,
}

fn exhaustive_consistency(grp: &PcGroup) -> ConsistencyReport {
    let order = grp.order() as usize;
    let elements: Vec<GroupElement> = grp.elements().collect();
    // multiplication table as ranks; a collection blowup counts as an
    // inconsistency witness immediately
    let mut table = vec![0u64; order * order];
    for (a, x) in elements.iter().enumerate() {
        for (b, y) in elements.iter().enumerate() {
            match grp.try_multiply(x, y) {
                Ok(z) => table[a * order + b] = grp.rank_of(&z),
                Err(_) => {
                    return ConsistencyReport {
                        mode: ConsistencyMode::Exhaustive,
                        passed: false,
                        checked: (a * order + b) as u64,
                        witness: Some(vec![x.clone(), y.clone(), grp.identity()]),
                    }
                }
            }
        }
    }
    let mut checked = 0u64;
    for a in 0..order {
        for b in 0..order {
            let ab = table[a * order + b] as usize;
            for c in 0..order {
                checked += 1;
                let bc = table[b * order + c] as usize;
                if table[ab * order + c] != table[a * order + bc] {
                    return ConsistencyReport {
                        mode: ConsistencyMode::Exhaustive,
                        passed: false,
                        checked,
                        witness: Some(vec![
                            elements[a].clone(),
                            elements[b].clone(),
                            elements[c].clone(),
                        ]),
                    };
                }
            }
        }
    }
    ConsistencyReport { mode: ConsistencyMode::Exhaustive, passed: true, checked, witness: None }
}

fn associates(grp: &PcGroup, a: &GroupElement, b: &GroupElement, c: &GroupElement) -> bool {
    let left = grp.try_multiply(a, b).and_then(|ab| grp.try_multiply(&ab, c));
    let right = grp.try_multiply(b, c).and_then(|bc| grp.try_multiply(a, &bc));
    matches!((left, right), (Ok(l), Ok(r)) if l == r)
}

fn overlap_triples(grp: &PcGroup) -> Vec<[GroupElement; 3]> {
    let n = grp.ngens();
    let p = grp.p() as i64;
    let mut triples = Vec::new();
    let gen = |i: usize| grp.generator(i).expect("index in range");
    for i in 0..n {
        // (g_i^{p-1} g_i) g_i pattern exercises the power relation
        triples.push([grp.power(&gen(i), p - 1), gen(i), gen(i)]);
        for j in i + 1..n {
            triples.push([grp.power(&gen(j), p - 1), gen(j), gen(i)]);
            triples.push([gen(j), grp.power(&gen(i), p - 1), gen(i)]);
            for k in j + 1..n {
                triples.push([gen(k), gen(j), gen(i)]);
            }
        }
    }
    triples
}

fn sampled_consistency(grp: &PcGroup, seed: u64) -> ConsistencyReport {
    let mut checked = 0u64;
    for t in overlap_triples(grp) {
        checked += 1;
        if !associates(grp, &t[0], &t[1], &t[2]) {
            return ConsistencyReport {
                mode: ConsistencyMode::Probabilistic,
                passed: false,
                checked,
                witness: Some(t.to_vec()),
            };
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SAMPLED_CONSISTENCY_TRIPLES {
        let a = grp.unrank(rng.gen_range(0..grp.order()));
        let b = grp.unrank(rng.gen_range(0..grp.order()));
        let c = grp.unrank(rng.gen_range(0..grp.order()));
        checked += 1;
        if !associates(grp, &a, &b, &c) {
            return ConsistencyReport {
                mode: ConsistencyMode::Probabilistic,
                passed: false,
                checked,
                witness: Some(vec![a, b, c]),
            };
        }
    }
    ConsistencyReport {
        mode: ConsistencyMode::Probabilistic,
        passed: true,
        checked,
        witness: None,
    }
}

/// Associativity sweep: exhaustive for |G| ≤ 243, otherwise overlap
/// triples plus a seeded random sample.
pub fn consistency_check(grp: &PcGroup, seed: u64) -> ConsistencyReport {
    if grp.order() <= EXHAUSTIVE_CONSISTENCY_CAP {
        exhaustive_consistency(grp)
    } else {
        sampled_consistency(grp, seed)
    }
}

/// The two class-≤3 identities
/// [x^p, y] = [x,y]^p [[x,y],x]^{p(p-1)/2} and
/// [x, y^p] = [x,y]^p [[x,y],y]^{p(p-1)/2},
/// checked over pairs (exhaustively for |G| ≤ 625, sampled otherwise).
/// Errors if the group has nilpotency class above 3.
pub fn verify_power_commutator_identity(grp: &PcGroup, seed: u64) -> Result<ConsistencyReport> {
    let class = grp.nilpotency_class();
    if class > 3 {
        return Err(Error::Precondition(format!(
            "power-commutator identity needs class at most 3, group has class {class}"
        )));
    }
    let p = grp.p() as i64;
    let binom = p * (p - 1) / 2;
    let holds = |x: &GroupElement, y: &GroupElement| -> bool {
        let c = grp.commutator(x, y);
        let cp = grp.power(&c, p);
        let xp = grp.power(x, p);
        let yp = grp.power(y, p);
        let lhs1 = grp.commutator(&xp, y);
        let rhs1 = grp.multiply(&cp, &grp.power(&grp.commutator(&c, x), binom));
        if lhs1 != rhs1 {
            return false;
        }
        let lhs2 = grp.commutator(x, &yp);
        let rhs2 = grp.multiply(&cp, &grp.power(&grp.commutator(&c, y), binom));
        lhs2 == rhs2
    };
    if grp.order() <= EXHAUSTIVE_PAIR_CAP {
        let mut checked = 0u64;
        for x in grp.elements() {
            for y in grp.elements() {
                checked += 1;
                if !holds(&x, &y) {
                    return Ok(ConsistencyReport {
                        mode: ConsistencyMode::Exhaustive,
                        passed: false,
                        checked,
                        witness: Some(vec![x, y]),
                    });
                }
            }
        }
        Ok(ConsistencyReport {
            mode: ConsistencyMode::Exhaustive,
            passed: true,
            checked,
            witness: None,
        })
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut checked = 0u64;
        for _ in 0..SAMPLED_IDENTITY_PAIRS {
            let x = grp.unrank(rng.gen_range(0..grp.order()));
            let y = grp.unrank(rng.gen_range(0..grp.order()));
            checked += 1;
            if !holds(&x, &y) {
                return Ok(ConsistencyReport {
                    mode: ConsistencyMode::Probabilistic,
                    passed: false,
                    checked,
                    witness: Some(vec![x, y]),
                });
            }
        }
        Ok(ConsistencyReport {
            mode: ConsistencyMode::Probabilistic,
            passed: true,
            checked,
            witness: None,
        })
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
        PcGroup::new(
            PcPresentation::new("heisenberg3", 3, 3, vec![vec![], vec![], vec![]], comms).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn heisenberg_is_consistent_exhaustively() {
        let g = heisenberg3();
        let rep = consistency_check(&g, 0);
        assert!(rep.passed);
        assert_eq!(rep.mode, ConsistencyMode::Exhaustive);
        assert_eq!(rep.checked, 27 * 27 * 27);
    }

    #[test]
    fn corrupted_heisenberg_fails() {
        // add [g3, g1] = g2: now g3 no longer commutes into the tail and
        // the presentation stops being consistent
        let mut comms = BTreeMap::new();
        comms.insert((1, 0), vec![(2, 1)]);
        comms.insert((2, 0), vec![(1, 1)]);
        let g = PcGroup::new(
            PcPresentation::new("corrupt", 3, 3, vec![vec![], vec![], vec![]], comms).unwrap(),
        )
        .unwrap();
        let rep = consistency_check(&g, 0);
        assert!(!rep.passed);
        assert!(rep.witness.is_some());
    }

    #[test]
    fn large_group_reports_probabilistic_mode() {
        // cyclic 3^6 via a six-generator chain
        let powers =
            vec![vec![(1, 1)], vec![(2, 1)], vec![(3, 1)], vec![(4, 1)], vec![(5, 1)], vec![]];
        let g = PcGroup::new(
            PcPresentation::new("c729", 3, 6, powers, BTreeMap::new()).unwrap(),
        )
        .unwrap();
        let rep = consistency_check(&g, 7);
        assert!(rep.passed);
        assert_eq!(rep.mode, ConsistencyMode::Probabilistic);
        assert!(rep.checked > SAMPLED_CONSISTENCY_TRIPLES);
    }

    #[test]
    fn identity_holds_on_class_two_group() {
        let g = heisenberg3();
        let rep = verify_power_commutator_identity(&g, 0).unwrap();
        assert!(rep.passed);
        assert_eq!(rep.mode, ConsistencyMode::Exhaustive);
        assert_eq!(rep.checked, 27 * 27);
    }

    #[test]
    fn identity_rejects_high_class_groups() {
        // maximal-class 3^5 group: [g2,g1]=g3, [g3,g1]=g4, [g4,g1]=g5 has
        // class 4
        let mut comms = BTreeMap::new();
        comms.insert((1, 0), vec![(2, 1)]);
        comms.insert((2, 0), vec![(3, 1)]);
        comms.insert((3, 0), vec![(4, 1)]);
        let g = PcGroup::new(
            PcPresentation::new(
                "maxclass243",
                3,
                5,
                vec![vec![], vec![], vec![], vec![], vec![]],
                comms,
            )
            .unwrap(),
        )
        .unwrap();
        assert_eq!(g.nilpotency_class(), 4);
        assert!(verify_power_commutator_identity(&g, 0).is_err());
    }
}
