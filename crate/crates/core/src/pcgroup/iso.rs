//! Brute-force isomorphism testing for small pc groups.
//!
//! Images for the pc generators of G are chosen inside H from the highest
//! index downwards, so relations of G (whose tails live strictly above
//! their lowest generator) can be checked the moment their lowest
//! generator receives an image. A candidate map that satisfies every
//! relation extends to a homomorphism, and forcing the span of the images
//! to grow by a factor of p at each step makes it bijective.

use super::subgroup::Subgroup;
use super::{GroupElement, PcGroup, Word};
use crate::error::{Error, Result};

/// Default order cap for the exhaustive search.
pub const DEFAULT_ISO_CAP: u64 = 729;

fn order_histogram_differs(g: &PcGroup, h: &PcGroup) -> bool {
    let cap = g.order();
    let hg = g.element_order_histogram(cap);
    let hh = h.element_order_histogram(cap);
    match (hg, hh) {
        (Ok(a), Ok(b)) => a != b,
        _ => false,
    }
}

fn eval_word(h: &PcGroup, images: &[Option<GroupElement>], word: &Word) -> GroupElement {
    let mut acc = h.identity();
    for &(idx, exp) in word {
        let img = images[idx].as_ref().expect("word only uses assigned generators");
        acc = h.multiply(&acc, &h.power(img, exp as i64));
    }
    acc
}

/// Checks every relation of `g` whose lowest generator is `i`, under the
/// partial assignment `images` (defined for indices ≥ i).
fn relations_hold(g: &PcGroup, h: &PcGroup, images: &[Option<GroupElement>], i: usize) -> bool {
    let p = g.p() as i64;
    let xi = images[i].as_ref().expect("g_i image assigned");
    let lhs = h.power(xi, p);
    let rhs = eval_word(h, images, g.power_word(i));
    if lhs != rhs {
        return false;
    }
    for j in i + 1..g.ngens() {
        let xj = images[j].as_ref().expect("higher images assigned");
        let lhs = h.commutator(xj, xi);
        let rhs = match g.commutator_word(j, i) {
            Some(w) => eval_word(h, images, w),
            None => h.identity(),
        };
        if lhs != rhs {
            return false;
        }
    }
    true
}

fn extend(
    g: &PcGroup,
    h: &PcGroup,
    i: usize,
    images: &mut Vec<Option<GroupElement>>,
    span: &Subgroup,
    gen_orders: &[u64],
) -> Option<Vec<GroupElement>> {
    let idx = i - 1;
    let target_log = g.ngens() - idx;
    for r in 0..h.order() {
        let x = h.unrank(r);
        if h.element_order(&x) != gen_orders[idx] {
            continue;
        }
        if span.contains(h, &x) {
            continue;
        }
        let mut gens: Vec<GroupElement> = span.igs().to_vec();
        gens.push(x.clone());
        let new_span = Subgroup::closure(h, &gens);
        if new_span.log_order() != target_log {
            continue;
        }
        images[idx] = Some(x);
        if relations_hold(g, h, images, idx) {
            if idx == 0 {
                return Some(
                    images.iter().map(|im| im.clone().expect("all assigned")).collect(),
                );
            }
            if let Some(found) = extend(g, h, idx, images, &new_span, gen_orders) {
                return Some(found);
            }
        }
        images[idx] = None;
    }
    None
}

/// Exhaustive isomorphism search. Returns images for the pc generators of
/// `g` inside `h` (a witness), or None if no isomorphism exists. Among
/// all witnesses the returned one is minimal when images are compared
/// from the last generator backwards, candidates being tried in rank
/// order, so the result is deterministic. Orders above `cap` are
/// rejected with a resource error.
pub fn is_isomorphic_bruteforce(
    g: &PcGroup,
    h: &PcGroup,
    cap: u64,
) -> Result<Option<Vec<GroupElement>>> {
    if g.order() != h.order() {
        return Ok(None);
    }
    if g.order() > cap {
        return Err(Error::Resource(format!(
            "isomorphism search capped at order {cap}, groups have order {}",
            g.order()
        )));
    }
    if g.ngens() == 0 {
        return Ok(Some(Vec::new()));
    }
    if g.p() != h.p() {
        return Ok(None);
    }
    if order_histogram_differs(g, h) {
        return Ok(None);
    }
    let gen_orders: Vec<u64> =
        g.generators().iter().map(|x| g.element_order(x)).collect();
    let mut images: Vec<Option<GroupElement>> = vec![None; g.ngens()];
    Ok(extend(g, h, g.ngens(), &mut images, &Subgroup::trivial(h), &gen_orders))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcgroup::{presentation_on_pc_sequence, PcPresentation};
    use std::collections::BTreeMap;

    fn heisenberg3() -> PcGroup {
        let mut comms = BTreeMap::new();
        comms.insert((1, 0), vec![(2, 1)]);
        PcGroup::new(
            PcPresentation::new("h27", 3, 3, vec![vec![], vec![], vec![]], comms).unwrap(),
        )
        .unwrap()
    }

    fn modular27() -> PcGroup {
        let mut comms = BTreeMap::new();
        comms.insert((1, 0), vec![(2, 1)]);
        PcGroup::new(
            PcPresentation::new("m27", 3, 3, vec![vec![], vec![(2, 1)], vec![]], comms).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn heisenberg_not_isomorphic_to_modular() {
        let g = heisenberg3();
        let h = modular27();
        assert!(is_isomorphic_bruteforce(&g, &h, DEFAULT_ISO_CAP).unwrap().is_none());
    }

    #[test]
    fn heisenberg_self_isomorphism_is_identity_map() {
        let g = heisenberg3();
        let w = is_isomorphic_bruteforce(&g, &g, DEFAULT_ISO_CAP).unwrap().unwrap();
        assert_eq!(w, g.generators());
    }

    #[test]
    fn witness_is_a_homomorphism_on_all_pairs() {
        let g = modular27();
        // rebase the modular group on a skew generating sequence and ask
        // for an isomorphism back to the standard copy
        let seq = vec![
            g.element(&[1, 1, 0]).unwrap(),
            g.element(&[0, 1, 2]).unwrap(),
            g.element(&[0, 0, 1]).unwrap(),
        ];
        let (h, _) = presentation_on_pc_sequence(&g, &seq, "m27-rebased").unwrap();
        let w = is_isomorphic_bruteforce(&h, &g, DEFAULT_ISO_CAP).unwrap().unwrap();
        let phi = |x: &crate::pcgroup::GroupElement| {
            let mut acc = g.identity();
            for (i, &e) in x.exponents().iter().enumerate() {
                acc = g.multiply(&acc, &g.power(&w[i], e as i64));
            }
            acc
        };
        for a in h.elements() {
            for b in h.elements() {
                assert_eq!(phi(&h.multiply(&a, &b)), g.multiply(&phi(&a), &phi(&b)));
            }
        }
    }

    #[test]
    fn different_orders_short_circuit() {
        let g = heisenberg3();
        let c9 = PcGroup::new(
            PcPresentation::new("c9", 3, 2, vec![vec![(1, 1)], vec![]], BTreeMap::new()).unwrap(),
        )
        .unwrap();
        assert!(is_isomorphic_bruteforce(&g, &c9, DEFAULT_ISO_CAP).unwrap().is_none());
    }

    #[test]
    fn cap_is_enforced() {
        let powers =
            vec![vec![(1, 1)], vec![(2, 1)], vec![(3, 1)], vec![(4, 1)], vec![(5, 1)], vec![(6, 1)]];
        let big = PcGroup::new(
            PcPresentation::new("c2187", 3, 7, {
                let mut p = powers;
                p.push(vec![]);
                p
            }, BTreeMap::new())
            .unwrap(),
        )
        .unwrap();
        let err = is_isomorphic_bruteforce(&big, &big, DEFAULT_ISO_CAP).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }
}
