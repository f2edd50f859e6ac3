//! Collection from the left, the rewriting engine behind every product.
//!
//! State is a collected prefix `acc` (a normal form) plus a stack of
//! letters still to be multiplied on the right; the represented element is
//! always nf(acc) * stack(top to bottom). Each step pops one letter g_i^e
//! and looks at the letters of `acc` sitting beyond index i:
//!
//! - if g_i commutes past all of them, the exponent merges at slot i; on
//!   overflow the power word g_i^p is spliced in right after slot i, so
//!   the displaced block is pushed back first;
//! - otherwise the rightmost blocking letter g_j is swapped past one copy
//!   of g_i via g_j g_i = g_i g_j [g_j, g_i], and all displaced letters
//!   return to the stack.
//!
//! A step cap converts runaway collection on an inconsistent presentation
//! into an error instead of a hang; consistent desk-scale presentations
//! finish any single product in a few thousand steps at most.

use super::{PcGroup, Word};
use crate::error::{Error, Result};

pub(crate) const COLLECT_STEP_CAP: u64 = 100_000_000;

pub(crate) fn collect_word(grp: &PcGroup, acc: &mut [u32], word: &Word) -> Result<()> {
    let p = grp.p();
    let n = grp.ngens();
    let mut stack: Vec<(usize, u32)> = Vec::with_capacity(word.len() + 8);
    for &(i, e) in word.iter().rev() {
        debug_assert!(e >= 1 && e < p && i < n);
        stack.push((i, e));
    }
    let mut steps: u64 = 0;
    while let Some((i, e)) = stack.pop() {
        steps += 1;
        if steps > COLLECT_STEP_CAP {
            return Err(Error::Invariant(format!(
                "collection exceeded {COLLECT_STEP_CAP} steps; presentation is likely inconsistent"
            )));
        }
        let mut blocker: Option<usize> = None;
        for j in (i + 1..n).rev() {
            if acc[j] != 0 && !grp.commutes(j, i) {
                blocker = Some(j);
                break;
            }
        }
        match blocker {
            None => {
                let s = acc[i] + e;
                if s < p {
                    acc[i] = s;
                } else {
                    acc[i] = s - p;
                    let w = grp.power_word(i);
                    if !w.is_empty() {
                        // acc(<=i) g_i^p TAIL: the power word lands between
                        // slot i and the tail, so the tail is re-collected
                        for j in (i + 1..n).rev() {
                            if acc[j] != 0 {
                                stack.push((j, acc[j]));
                                acc[j] = 0;
                            }
                        }
                        for &(k, c) in w.iter().rev() {
                            stack.push((k, c));
                        }
                    }
                }
            }
            Some(jb) => {
                // acc(<jb) g_jb^b K g_i^e -> acc(<jb) g_jb^{b-1} g_i g_jb c g_i^{e-1} K
                // where c = [g_jb, g_i] and the block K beyond jb commutes
                // with g_i by the choice of jb
                let b = acc[jb];
                for j in (jb + 1..n).rev() {
                    if acc[j] != 0 {
                        stack.push((j, acc[j]));
                        acc[j] = 0;
                    }
                }
                acc[jb] = 0;
                if e > 1 {
                    stack.push((i, e - 1));
                }
                let c = grp
                    .commutator_word(jb, i)
                    .expect("blocking letter must have a nontrivial commutator");
                for &(k, cexp) in c.iter().rev() {
                    stack.push((k, cexp));
                }
                stack.push((jb, 1));
                stack.push((i, 1));
                if b > 1 {
                    stack.push((jb, b - 1));
                }
            }
        }
    }
    Ok(())
}
