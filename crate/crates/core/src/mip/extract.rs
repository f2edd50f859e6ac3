//! Extracting the canonical relation data of the reduced group
//! G / gamma_2(G)^p gamma_4(G).
//!
//! The choices below are deterministic so that two runs over isomorphic
//! inputs presented the same way produce identical tables: noncentral
//! generators are the lexicographically least elements independent modulo
//! Phi Z, central generators are the least members of the center
//! independent modulo Phi, and the c-basis is the canonical induced
//! generating sequence of gamma_3 of the quotient.

use crate::error::{Error, Result};
use crate::linalg::RrefBuilder;
use crate::mip::hypotheses::{check_theorem_b_hypotheses, noncentral_basis, theorem_quotient};
use crate::mip::{gamma_term, RData};
use crate::pcgroup::{GroupElement, PcGroup, QuotientMap, Subgroup, ELEMENT_SCAN_CAP};

/// The relation data of the reduced group together with the witnesses the
/// table was read from.
#[derive(Debug, Clone)]
pub struct Extraction {
    pub rdata: RData,
    /// The reduced group G / gamma_2(G)^p gamma_4(G).
    pub quotient: PcGroup,
    /// Projection from the input group onto the quotient.
    pub projection: QuotientMap,
    /// x_1, ..., x_k as elements of the quotient.
    pub generators: Vec<GroupElement>,
    /// c_1, ..., c_m: the canonical basis of gamma_3 of the quotient.
    pub gamma3_basis: Vec<GroupElement>,
}

impl Extraction {
    /// The full witness tuple (x_1, ..., x_k, c_1, ..., c_m).
    pub fn tuple(&self) -> Vec<GroupElement> {
        let mut t = self.generators.clone();
        t.extend_from_slice(&self.gamma3_basis);
        t
    }
}

/// Read the relation data of the reduced group off a group satisfying the
/// recovery hypotheses.
pub fn extract_presentation(grp: &PcGroup) -> Result<Extraction> {
    let hyp = check_theorem_b_hypotheses(grp)?;
    if !hyp.satisfied() {
        return Err(Error::Precondition(format!(
            "relation extraction requires both recovery hypotheses; got power condition {} \
             and commutator index condition {}",
            hyp.cond_a, hyp.cond_b
        )));
    }

    let (quot, projection) = theorem_quotient(grp)?;
    let p = quot.p();

    let lcs = quot.lower_central_series();
    if lcs.len() > 4 {
        return Err(Error::Invariant(format!(
            "reduced group has class {}, expected at most 3",
            lcs.len() - 1
        )));
    }
    let gamma2 = gamma_term(&quot, &lcs, 2);
    let gamma3 = gamma_term(&quot, &lcs, 3);
    if !quot.subgroup_power_p(&gamma2)?.is_trivial() {
        return Err(Error::Invariant(
            "derived subgroup of the reduced group is not elementary abelian".to_string(),
        ));
    }
    let m = gamma3.log_order();

    let center = quot.center()?;
    let phi = quot.frattini()?;
    let zphi = quot.subgroup_product(&center, &phi)?;
    let d = quot.ngens() - zphi.log_order();
    if d != hyp.d {
        return Err(Error::Invariant(format!(
            "noncentral rank changed under reduction from {} to {d}",
            hyp.d
        )));
    }
    let k = quot.minimal_generator_count()?;

    // x_1, ..., x_d: least lifts of a basis of the quotient mod Phi Z.
    let mut generators = noncentral_basis(&quot, &zphi);

    // x_{d+1}, ..., x_k: least central elements independent modulo Phi.
    let mut central_pool = center.elements(&quot, ELEMENT_SCAN_CAP)?;
    central_pool.sort_unstable();
    let mut span = phi.clone();
    for z in central_pool {
        if span.log_order() == zphi.log_order() {
            break;
        }
        if !span.contains(&quot, &z) {
            let mut gens = span.igs().to_vec();
            gens.push(z.clone());
            span = Subgroup::closure(&quot, &gens);
            generators.push(z);
        }
    }
    if generators.len() != k {
        return Err(Error::Invariant(format!(
            "picked {} generators, expected {k}",
            generators.len()
        )));
    }

    let gamma3_basis = gamma3.igs().to_vec();

    // Exponents and power relations: x_i^(p^n_i) is the first p-th power
    // iterate landing in gamma_2, and must land in gamma_3.
    let mut n = Vec::with_capacity(k);
    let mut alpha = Vec::with_capacity(k);
    for x in &generators {
        let mut y = x.clone();
        let mut t = 0u32;
        while !gamma2.contains(&quot, &y) {
            y = quot.power(&y, p as i64);
            t += 1;
        }
        if t == 0 {
            return Err(Error::Invariant(
                "a chosen generator lies in the derived subgroup".to_string(),
            ));
        }
        if !gamma3.contains(&quot, &y) {
            return Err(Error::Invariant(
                "a generator power lands in gamma_2 outside gamma_3".to_string(),
            ));
        }
        n.push(t);
        alpha.push(gamma3.coordinates(&quot, &y)?);
    }

    // Triple commutator table over the noncentral generators.
    let mut beta = Vec::with_capacity(d * d * d);
    for i in 0..d {
        for j in 0..d {
            for l in 0..d {
                let w = quot.commutator(&quot.commutator(&generators[i], &generators[j]), &generators[l]);
                if !gamma3.contains(&quot, &w) {
                    return Err(Error::Invariant(
                        "a triple commutator escaped gamma_3".to_string(),
                    ));
                }
                beta.push(gamma3.coordinates(&quot, &w)?);
            }
        }
    }
    if m > 0 {
        let mut rref = RrefBuilder::new(p, m);
        for row in &beta {
            rref.insert(row);
        }
        if rref.rank() != m {
            return Err(Error::Invariant(format!(
                "triple commutator table has rank {}, expected {m}",
                rref.rank()
            )));
        }
    }

    let rdata = RData { p, k, d, m, n, alpha, beta };
    rdata.validate()?;

    Ok(Extraction { rdata, quotient: quot, projection, generators, gamma3_basis })
}
