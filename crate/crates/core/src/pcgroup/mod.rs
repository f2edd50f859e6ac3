//! Finite p-groups presented by power-commutator relations.
//!
//! A group of order p^n is carried by pc generators g_1, ..., g_n with
//! power relations g_i^p = (word in generators of index > i) and, for
//! j > i, commutator relations [g_j, g_i] = (word in generators of index
//! > i), where [a, b] = a^{-1}b^{-1}ab. Every element has a unique normal
//! form g_1^{e_1}···g_n^{e_n} with exponents in [0, p); products are
//! brought back to normal form by collection from the left.
//!
//! Generator indices are 0-based throughout the crate; the 1-based names
//! g1, g2, ... appear only in rendered output and serialized files.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{inv_mod, is_prime};

mod collect;
mod consistency;
mod iso;
mod quotient;
mod series;
mod subgroup;

pub use consistency::{
    consistency_check, verify_power_commutator_identity, ConsistencyMode, ConsistencyReport,
};
pub use iso::{is_isomorphic_bruteforce, DEFAULT_ISO_CAP};
pub use quotient::{presentation_on_pc_sequence, QuotientMap};
pub use series::{CENTER_SCAN_CAP, ELEMENT_SCAN_CAP};
pub use subgroup::Subgroup;

/// Relation word: factors (generator index, exponent) with strictly
/// increasing 0-based indices and exponents in [1, p).
pub type Word = Vec<(usize, u32)>;

fn validate_word(
    word: &Word,
    p: u32,
    ngens: usize,
    min_exclusive: Option<usize>,
    what: &str,
) -> Result<()> {
    let mut prev: Option<usize> = None;
    for &(idx, exp) in word {
        if idx >= ngens {
            return Err(Error::Input(format!(
                "{what}: generator index {} out of range (ngens = {ngens})",
                idx + 1
            )));
        }
        if let Some(m) = min_exclusive {
            if idx <= m {
                return Err(Error::Input(format!(
                    "{what}: generator index {} not above {}",
                    idx + 1,
                    m + 1
                )));
            }
        }
        if exp == 0 || exp >= p {
            return Err(Error::Input(format!(
                "{what}: exponent {exp} outside [1, {p})"
            )));
        }
        if let Some(q) = prev {
            if idx <= q {
                return Err(Error::Input(format!(
                    "{what}: generator indices not strictly increasing"
                )));
            }
        }
        prev = Some(idx);
    }
    Ok(())
}

/// Power-commutator presentation of a group of order p^ngens.
///
/// Relation words obey the loose weight convention: the word for
/// [g_j, g_i] uses only generators of index > i. All built-in catalog
/// data additionally satisfies the strict convention (index > j).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PcPresentation {
    name: String,
    p: u32,
    ngens: usize,
    powers: Vec<Word>,
    commutators: BTreeMap<(usize, usize), Word>,
}

impl PcPresentation {
    pub fn new(
        name: impl Into<String>,
        p: u32,
        ngens: usize,
        powers: Vec<Word>,
        mut commutators: BTreeMap<(usize, usize), Word>,
    ) -> Result<Self> {
        commutators.retain(|_, w| !w.is_empty());
        let pres = PcPresentation { name: name.into(), p, ngens, powers, commutators };
        pres.validate()?;
        Ok(pres)
    }

    fn validate(&self) -> Result<()> {
        if self.p == 2 || !is_prime(self.p) {
            return Err(Error::Input(format!("{} is not an odd prime", self.p)));
        }
        if self.powers.len() != self.ngens {
            return Err(Error::Input(format!(
                "{} power relations for {} generators",
                self.powers.len(),
                self.ngens
            )));
        }
        for (i, w) in self.powers.iter().enumerate() {
            validate_word(w, self.p, self.ngens, Some(i), &format!("power word of g{}", i + 1))?;
        }
        for (&(j, i), w) in &self.commutators {
            if j <= i || j >= self.ngens {
                return Err(Error::Input(format!(
                    "commutator pair [g{}, g{}] malformed (need ngens >= j > i)",
                    j + 1,
                    i + 1
                )));
            }
            validate_word(
                w,
                self.p,
                self.ngens,
                Some(i),
                &format!("word of [g{}, g{}]", j + 1, i + 1),
            )?;
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn power_word(&self, i: usize) -> &Word {
        &self.powers[i]
    }

    /// The word for [g_j, g_i], j > i; None means the generators commute.
    pub fn commutator_word(&self, j: usize, i: usize) -> Option<&Word> {
        self.commutators.get(&(j, i))
    }

    pub fn commutator_entries(&self) -> impl Iterator<Item = (usize, usize, &Word)> {
        self.commutators.iter().map(|(&(j, i), w)| (j, i, w))
    }

    /// True if every commutator word uses only generators of index > j,
    /// the stronger of the two admissible weight conventions.
    pub fn uses_strict_convention(&self) -> bool {
        self.commutators
            .iter()
            .all(|(&(j, _), w)| w.iter().all(|&(idx, _)| idx > j))
    }
}

/// Element in normal form; plain exponent data, tied to its group only by
/// length. The derived ordering is lexicographic on exponent vectors,
/// which is the canonical enumeration order everywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    exps: Vec<u32>,
}

impl GroupElement {
    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_identity(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Index of the first nonzero exponent.
    pub fn leading_index(&self) -> Option<usize> {
        self.exps.iter().position(|&e| e != 0)
    }

    pub(crate) fn from_exps(exps: Vec<u32>) -> Self {
        GroupElement { exps }
    }

}

/// A pc presentation together with the lookup tables collection needs.
/// All arithmetic lives here; elements are passive exponent vectors.
#[derive(Debug, Clone)]
pub struct PcGroup {
    pres: PcPresentation,
    p: u32,
    n: usize,
    order: u64,
    /// commutes[j * n + i]: whether g_j and g_i commute as a relation
    /// (symmetric, true on the diagonal)
    commutes_table: Vec<bool>,
}

impl PcGroup {
    pub fn new(pres: PcPresentation) -> Result<Self> {
        pres.validate()?;
        let n = pres.ngens;
        let p = pres.p;
        let mut order: u64 = 1;
        for _ in 0..n {
            order = order
                .checked_mul(p as u64)
                .filter(|&o| o < (1 << 62))
                .ok_or_else(|| {
                    Error::Input(format!("group order {p}^{n} exceeds the supported range"))
                })?;
        }
        let mut commutes_table = vec![true; n * n];
        for (&(j, i), _) in &pres.commutators {
            commutes_table[j * n + i] = false;
            commutes_table[i * n + j] = false;
        }
        Ok(PcGroup { pres, p, n, order, commutes_table })
    }

    pub fn presentation(&self) -> &PcPresentation {
        &self.pres
    }

    pub fn name(&self) -> &str {
        self.pres.name()
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn ngens(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub(crate) fn commutes(&self, j: usize, i: usize) -> bool {
        self.commutes_table[j * self.n + i]
    }

    pub(crate) fn power_word(&self, i: usize) -> &Word {
        self.pres.power_word(i)
    }

    pub(crate) fn commutator_word(&self, j: usize, i: usize) -> Option<&Word> {
        self.pres.commutator_word(j, i)
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { exps: vec![0; self.n] }
    }

    pub fn generator(&self, i: usize) -> Result<GroupElement> {
        if i >= self.n {
            return Err(Error::Input(format!(
                "generator index {} out of range (ngens = {})",
                i + 1,
                self.n
            )));
        }
        let mut exps = vec![0; self.n];
        exps[i] = 1;
        Ok(GroupElement { exps })
    }

    pub fn generators(&self) -> Vec<GroupElement> {
        (0..self.n).map(|i| self.generator(i).expect("index in range")).collect()
    }

    pub fn element(&self, exps: &[u32]) -> Result<GroupElement> {
        if exps.len() != self.n {
            return Err(Error::Input(format!(
                "exponent vector of length {}, expected {}",
                exps.len(),
                self.n
            )));
        }
        Ok(GroupElement { exps: exps.iter().map(|&e| e % self.p).collect() })
    }

    fn assert_member(&self, x: &GroupElement) {
        assert_eq!(
            x.exps.len(),
            self.n,
            "element of rank {} used with a group of rank {}",
            x.exps.len(),
            self.n
        );
    }

    /// Product in normal form. Panics if collection exceeds its step cap,
    /// which cannot happen for a presentation that passed
    /// consistency_check; use try_multiply on untrusted presentations.
    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.try_multiply(a, b)
            .expect("collection step cap exceeded; presentation not consistency-checked")
    }

    pub fn try_multiply(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.assert_member(a);
        self.assert_member(b);
        let mut acc = a.exps.clone();
        let word = self.word_of(b);
        collect::collect_word(self, &mut acc, &word)?;
        Ok(GroupElement { exps: acc })
    }

    /// Left-multiply by a single generator power: g_i^e * x.
    fn generator_times(&self, i: usize, e: u32, x: &GroupElement) -> GroupElement {
        let mut acc = vec![0; self.n];
        acc[i] = e;
        let word = self.word_of(x);
        collect::collect_word(self, &mut acc, &word)
            .expect("collection step cap exceeded; presentation not consistency-checked");
        GroupElement { exps: acc }
    }

    /// Inverse by peeling: strip leading generator powers from x while
    /// mirroring each step onto the identity. No element orders needed.
    pub fn inverse(&self, x: &GroupElement) -> GroupElement {
        self.assert_member(x);
        let mut t = x.clone();
        let mut inv = self.identity();
        for i in 0..self.n {
            let c = t.exps[i];
            if c != 0 {
                let f = self.p - c;
                t = self.generator_times(i, f, &t);
                inv = self.generator_times(i, f, &inv);
                debug_assert_eq!(t.exps[i], 0);
            }
        }
        debug_assert!(t.is_identity());
        inv
    }

    pub fn power(&self, x: &GroupElement, k: i64) -> GroupElement {
        self.assert_member(x);
        let mut e = k.unsigned_abs();
        let mut base = x.clone();
        let mut out = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                out = self.multiply(&out, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.multiply(&base, &base);
            }
        }
        if k < 0 {
            out = self.inverse(&out);
        }
        out
    }

    /// [x, y] = x^{-1} y^{-1} x y.
    pub fn commutator(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        let xi = self.inverse(x);
        let yi = self.inverse(y);
        self.multiply(&self.multiply(&self.multiply(&xi, &yi), x), y)
    }

    /// x^y = y^{-1} x y.
    pub fn conjugate(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        let yi = self.inverse(y);
        self.multiply(&self.multiply(&yi, x), y)
    }

    /// Least p-power t with x^t = e; this is the exact order since element
    /// orders in a p-group are p-powers.
    pub fn element_order(&self, x: &GroupElement) -> u64 {
        self.assert_member(x);
        let mut t = x.clone();
        let mut ord: u64 = 1;
        while !t.is_identity() {
            t = self.power(&t, self.p as i64);
            ord *= self.p as u64;
        }
        ord
    }

    /// Position of x in the canonical enumeration: mixed-radix value of
    /// the exponent vector, g_1 most significant.
    pub fn rank_of(&self, x: &GroupElement) -> u64 {
        self.assert_member(x);
        let mut r: u64 = 0;
        for &e in &x.exps {
            r = r * self.p as u64 + e as u64;
        }
        r
    }

    pub fn unrank(&self, mut r: u64) -> GroupElement {
        assert!(r < self.order, "rank {} out of range for group of order {}", r, self.order);
        let mut exps = vec![0u32; self.n];
        for i in (0..self.n).rev() {
            exps[i] = (r % self.p as u64) as u32;
            r /= self.p as u64;
        }
        GroupElement { exps }
    }

    /// All elements in canonical (rank) order. Callers enforce their own
    /// caps; this is an iterator precisely so scans stay lazy.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(move |r| self.unrank(r))
    }

    pub fn word_of(&self, x: &GroupElement) -> Word {
        x.exps
            .iter()
            .enumerate()
            .filter(|&(_, &e)| e != 0)
            .map(|(i, &e)| (i, e))
            .collect()
    }

    /// Evaluate a relation-style word (ascending indices) to an element.
    pub fn element_from_word(&self, w: &Word) -> Result<GroupElement> {
        validate_word(w, self.p, self.n, None, "word")?;
        let mut acc = vec![0; self.n];
        collect::collect_word(self, &mut acc, w)?;
        Ok(GroupElement { exps: acc })
    }

    /// Render like "g1*g2^2", identity as "e".
    pub fn format_element(&self, x: &GroupElement) -> String {
        if x.is_identity() {
            return "e".to_string();
        }
        x.exps
            .iter()
            .enumerate()
            .filter(|&(_, &e)| e != 0)
            .map(|(i, &e)| {
                if e == 1 {
                    format!("g{}", i + 1)
                } else {
                    format!("g{}^{}", i + 1, e)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Normalize x to leading exponent 1 by raising it to the inverse of
    /// its leading exponent mod p. Identity maps to identity.
    pub(crate) fn normalize_leading(&self, x: &GroupElement) -> GroupElement {
        match x.leading_index() {
            None => x.clone(),
            Some(l) => {
                let e = x.exps[l];
                if e == 1 {
                    x.clone()
                } else {
                    let t = inv_mod(e, self.p);
                    let y = self.power(x, t as i64);
                    debug_assert_eq!(y.exps[l], 1);
                    y
                }
            }
        }
    }
}
