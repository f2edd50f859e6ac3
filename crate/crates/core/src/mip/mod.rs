//! Deciding modular isomorphism questions for small p-groups.
//!
//! The entry points are [`fingerprint`] (a table of invariants of G, each
//! marked with whether it is known to be determined by the group algebra
//! F_p G alone), [`check_theorem_b_hypotheses`] and [`extract_presentation`]
//! (a power-commutator style presentation of the reduced group
//! G / gamma_2(G)^p gamma_4(G) whose data is recoverable from F_p G), the
//! tuple search [`find_satisfying_tuple`] that re-realizes such a
//! presentation inside a candidate group, and the two decision pipelines
//! [`theorem_b_pipeline`] and [`theorem_a_pipeline`] built on top of them.

mod extract;
mod hypotheses;
mod pipeline;
mod verify;

pub use extract::{extract_presentation, Extraction};
pub use hypotheses::{
    check_theorem_b_hypotheses, commutator_bilinear_map, theorem_quotient, CommutatorBilinearMap,
    TheoremBHypotheses,
};
pub use pipeline::{
    check_central_index_structure, theorem_a_pipeline, theorem_b_pipeline, CentralIndexStructure,
    QuotientIsoWitness, TheoremAVerdict, TheoremAWitness, TheoremBVerdict,
};
pub use verify::{find_satisfying_tuple, verify_relations, TUPLE_SEARCH_CAP};

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::RrefBuilder;
use crate::pcgroup::{PcGroup, Subgroup};

/// Largest group order [`fingerprint`] will process.
pub const FINGERPRINT_ORDER_CAP: u64 = 78_125;

/// Relation data for a group K of class at most 3 on generators
/// x_1, ..., x_k and central generators c_1, ..., c_m:
///
///   (1) x_i^(p^n_i) = prod_j c_j^alpha[i][j]
///   (2) [[x_i, x_j], x_l] = prod_s c_s^beta[(i,j,l)][s]   for i, j, l <= d
///   (3) [x_i, x_j]^p = 1
///   (4) x_i central for d < i <= k
///   (5) class at most 3
///
/// The first d generators carry the noncentral structure; the remaining
/// k - d are central. A group presented this way has order
/// p^(sum n_i + d(d-1)/2 + m), and the beta table must have full column
/// rank m so that the c_s are redundant generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RData {
    pub p: u32,
    pub k: usize,
    pub d: usize,
    pub m: usize,
    /// Exponents n_1, ..., n_k; generator x_i has order p^n_i modulo the
    /// derived subgroup.
    pub n: Vec<u32>,
    /// k rows of m residues mod p.
    pub alpha: Vec<Vec<u32>>,
    /// d^3 rows of m residues mod p, row (i, j, l) at index (i*d + j)*d + l.
    pub beta: Vec<Vec<u32>>,
}

impl RData {
    /// The beta row for the triple commutator [[x_i, x_j], x_l] (0-based).
    pub fn beta_row(&self, i: usize, j: usize, l: usize) -> &[u32] {
        &self.beta[(i * self.d + j) * self.d + l]
    }

    /// log_p of the order of the group the relations present.
    pub fn log_target_order(&self) -> usize {
        let sum_n: usize = self.n.iter().map(|&t| t as usize).sum();
        sum_n + self.d * self.d.saturating_sub(1) / 2 + self.m
    }

    /// The order of the presented group, if it fits in a u64.
    pub fn target_order(&self) -> Option<u64> {
        let mut order: u64 = 1;
        for _ in 0..self.log_target_order() {
            order = order.checked_mul(self.p as u64)?;
        }
        Some(order)
    }

    /// Check internal consistency: shapes, residue ranges, positive
    /// exponents, and full column rank of the beta table.
    pub fn validate(&self) -> Result<()> {
        if self.p < 3 || self.p % 2 == 0 || !is_prime(self.p) {
            return Err(Error::Input(format!("{} is not an odd prime", self.p)));
        }
        if self.d > self.k {
            return Err(Error::Input(format!(
                "noncentral rank {} exceeds generator count {}",
                self.d, self.k
            )));
        }
        if self.n.len() != self.k {
            return Err(Error::Input(format!(
                "expected {} exponents, found {}",
                self.k,
                self.n.len()
            )));
        }
        if self.n.iter().any(|&t| t == 0) {
            return Err(Error::Input("generator exponents must be positive".to_string()));
        }
        if self.alpha.len() != self.k {
            return Err(Error::Input(format!(
                "expected {} alpha rows, found {}",
                self.k,
                self.alpha.len()
            )));
        }
        let cube = self.d * self.d * self.d;
        if self.beta.len() != cube {
            return Err(Error::Input(format!(
                "expected {} beta rows, found {}",
                cube,
                self.beta.len()
            )));
        }
        for row in self.alpha.iter().chain(self.beta.iter()) {
            if row.len() != self.m {
                return Err(Error::Input(format!(
                    "expected rows of {} residues, found one of {}",
                    self.m,
                    row.len()
                )));
            }
            if row.iter().any(|&c| c >= self.p) {
                return Err(Error::Input(format!("residues must lie below {}", self.p)));
            }
        }
        if self.m > 0 {
            let mut rref = RrefBuilder::new(self.p, self.m);
            for row in &self.beta {
                rref.insert(row);
            }
            if rref.rank() != self.m {
                return Err(Error::Invariant(format!(
                    "beta table has rank {}, expected {}",
                    rref.rank(),
                    self.m
                )));
            }
        }
        Ok(())
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut q = 2u32;
    while q.saturating_mul(q) <= n {
        if n % q == 0 {
            return false;
        }
        q += 1;
    }
    true
}

/// Invariants of a finite p-group relevant to comparing modular group
/// algebras. Fields marked determined in [`FINGERPRINT_FIELDS`] are known
/// to be recoverable from F_p G alone, so a disagreement on one of them
/// certifies that the group algebras are not isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub order: u64,
    pub prime: u32,
    /// Minimal number of generators, log_p |G / Phi(G)|.
    pub generator_rank: usize,
    pub nilpotency_class: usize,
    pub exponent: u64,
    /// Abelian invariants of G / gamma_2(G), largest first.
    pub abelianization: Vec<u64>,
    /// Abelian invariants of the center, largest first.
    pub center_invariants: Vec<u64>,
    /// |G : Z(G)|.
    pub center_index: u64,
    /// log_p |G / Phi(G) Z(G)|, the number of generators needed outside
    /// the center.
    pub noncentral_rank: usize,
    /// Orders of the lower central series gamma_1, gamma_2, ..., ending at 1.
    pub lower_central_orders: Vec<u64>,
    pub jennings_dimensions: Vec<usize>,
    /// Order of the quotient G / gamma_2(G)^p gamma_3(G).
    pub sandling_order: u64,
    /// Abelian invariants of the abelianization of that quotient.
    pub sandling_invariants: Vec<u64>,
    /// |gamma_2(G) / gamma_2(G)^p gamma_3(G)|, the order of the derived
    /// subgroup of the Sandling quotient.
    pub sandling_derived_order: u64,
    /// Conjugacy class size -> number of classes of that size.
    pub class_sizes: BTreeMap<u64, u64>,
    /// Element order -> number of elements of that order.
    pub order_histogram: BTreeMap<u64, u64>,
}

/// Field names of [`Fingerprint`] in serialization order, each with a flag
/// telling whether the invariant is determined by the modular group algebra.
pub const FINGERPRINT_FIELDS: &[(&str, bool)] = &[
    ("order", true),
    ("prime", true),
    ("generator_rank", true),
    ("nilpotency_class", false),
    ("exponent", false),
    ("abelianization", true),
    ("center_invariants", false),
    ("center_index", false),
    ("noncentral_rank", true),
    ("lower_central_orders", false),
    ("jennings_dimensions", true),
    ("sandling_order", true),
    ("sandling_invariants", true),
    ("sandling_derived_order", true),
    ("class_sizes", false),
    ("order_histogram", false),
];

/// Compute the invariant table of a group of order at most 5^7.
pub fn fingerprint(grp: &PcGroup) -> Result<Fingerprint> {
    if grp.order() > FINGERPRINT_ORDER_CAP {
        return Err(Error::Resource(format!(
            "fingerprint computes element scans, capped at order {FINGERPRINT_ORDER_CAP}, got {}",
            grp.order()
        )));
    }
    let p = grp.p();
    let lcs = grp.lower_central_series();
    let gamma2 = gamma_term(grp, &lcs, 2);
    let gamma3 = gamma_term(grp, &lcs, 3);
    let center = grp.center()?;
    let phi = grp.frattini()?;
    let zphi = grp.subgroup_product(&center, &phi)?;

    let (abelianized, _) = grp.quotient_presentation(&gamma2)?;
    let abelianization =
        abelianized.abelian_invariants(&Subgroup::full_group(&abelianized))?;

    let sandling_kernel = grp.subgroup_product(&grp.subgroup_power_p(&gamma2)?, &gamma3)?;
    let (sandling, _) = grp.quotient_presentation(&sandling_kernel)?;
    let sandling_gamma2 = sandling.derived_subgroup();
    let (sandling_ab, _) = sandling.quotient_presentation(&sandling_gamma2)?;
    let sandling_invariants =
        sandling_ab.abelian_invariants(&Subgroup::full_group(&sandling_ab))?;

    let order_histogram = grp.element_order_histogram(grp.order())?;
    let exponent = order_histogram.keys().copied().max().unwrap_or(1);

    let mut class_sizes = BTreeMap::new();
    for class in grp.conjugacy_classes(grp.order())? {
        *class_sizes.entry(class.len() as u64).or_insert(0) += 1;
    }

    Ok(Fingerprint {
        order: grp.order(),
        prime: p,
        generator_rank: grp.minimal_generator_count()?,
        nilpotency_class: grp.nilpotency_class(),
        exponent,
        abelianization,
        center_invariants: grp.abelian_invariants(&center)?,
        center_index: grp.order() / center.order(grp),
        noncentral_rank: grp.ngens() - zphi.log_order(),
        lower_central_orders: lcs.iter().map(|s| s.order(grp)).collect(),
        jennings_dimensions: grp.jennings_dimensions()?,
        sandling_order: sandling.order(),
        sandling_invariants,
        sandling_derived_order: sandling_gamma2.order(&sandling),
        class_sizes,
        order_histogram,
    })
}

/// The gamma_i term of a precomputed lower central series, trivial once the
/// series has terminated.
pub(crate) fn gamma_term(grp: &PcGroup, lcs: &[Subgroup], i: usize) -> Subgroup {
    lcs.get(i - 1).cloned().unwrap_or_else(|| Subgroup::trivial(grp))
}

/// Outcome of comparing two fingerprints field by field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComparisonVerdict {
    Indistinguishable,
    Distinguished,
}

#[derive(Debug, Clone, Serialize)]
pub struct FieldDisagreement {
    pub field: String,
    pub determined: bool,
    pub left: serde_json::Value,
    pub right: serde_json::Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct FingerprintComparison {
    pub verdict: ComparisonVerdict,
    pub disagreements: Vec<FieldDisagreement>,
    /// True when a determined field disagrees: the modular group algebras
    /// of the two groups cannot be isomorphic.
    pub algebra_certificate: bool,
}

impl FingerprintComparison {
    /// Names of disagreeing fields that are determined by the algebra.
    pub fn determined_disagreements(&self) -> Vec<String> {
        self.disagreements
            .iter()
            .filter(|diff| diff.determined)
            .map(|diff| diff.field.clone())
            .collect()
    }
}

/// Compare two fingerprints over the same prime field by field.
pub fn compare_fingerprints(
    left: &Fingerprint,
    right: &Fingerprint,
) -> Result<FingerprintComparison> {
    if left.prime != right.prime {
        return Err(Error::Input(format!(
            "fingerprints over different primes {} and {} are not comparable",
            left.prime, right.prime
        )));
    }
    let left_map = field_map(left)?;
    let right_map = field_map(right)?;
    let mut disagreements = Vec::new();
    for &(field, determined) in FINGERPRINT_FIELDS {
        let lv = &left_map[field];
        let rv = &right_map[field];
        if lv != rv {
            disagreements.push(FieldDisagreement {
                field: field.to_string(),
                determined,
                left: lv.clone(),
                right: rv.clone(),
            });
        }
    }
    let algebra_certificate = disagreements.iter().any(|diff| diff.determined);
    let verdict = if disagreements.is_empty() {
        ComparisonVerdict::Indistinguishable
    } else {
        ComparisonVerdict::Distinguished
    };
    Ok(FingerprintComparison { verdict, disagreements, algebra_certificate })
}

fn field_map(fp: &Fingerprint) -> Result<serde_json::Map<String, serde_json::Value>> {
    match serde_json::to_value(fp) {
        Ok(serde_json::Value::Object(map)) => Ok(map),
        Ok(_) => Err(Error::Invariant("fingerprint did not serialize to a map".to_string())),
        Err(e) => Err(Error::Invariant(format!("fingerprint serialization failed: {e}"))),
    }
}
