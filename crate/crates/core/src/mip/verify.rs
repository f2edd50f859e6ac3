//! Relation checking and the deterministic backtracking search that decides
//! whether a candidate group carries a generating tuple satisfying a given
//! relation table.

use crate::error::{Error, Result};
use crate::linalg::{inv_mod, mul_mod, sub_mod, RrefBuilder};
use crate::mip::{gamma_term, RData};
use crate::pcgroup::{GroupElement, PcGroup, Subgroup, ELEMENT_SCAN_CAP};

/// Default cap on the order of the group searched by
/// [`find_satisfying_tuple`].
pub const TUPLE_SEARCH_CAP: u64 = 729;

/// Check whether `tuple` = (x_1, ..., x_k, c_1, ..., c_m) satisfies every
/// relation family of `r` inside `grp`, generates `grp`, and `grp` has
/// class at most 3.
pub fn verify_relations(r: &RData, grp: &PcGroup, tuple: &[GroupElement]) -> Result<bool> {
    r.validate()?;
    if r.p != grp.p() {
        return Err(Error::Input(format!(
            "relation data over p = {} cannot be checked in a group over p = {}",
            r.p,
            grp.p()
        )));
    }
    if tuple.len() != r.k + r.m {
        return Err(Error::Input(format!(
            "expected a tuple of {} + {} elements, got {}",
            r.k,
            r.m,
            tuple.len()
        )));
    }
    if tuple.iter().any(|x| x.exponents().len() != grp.ngens()) {
        return Err(Error::Input(
            "tuple entries do not have the exponent width of the group".to_string(),
        ));
    }
    let p = r.p;
    let xs = &tuple[..r.k];
    let cs = &tuple[r.k..];

    // (1) x_i^(p^n_i) = prod c_j^alpha[i][j].
    for i in 0..r.k {
        let lhs = power_iterate(grp, &xs[i], r.n[i]);
        if lhs != word_over(grp, cs, &r.alpha[i]) {
            return Ok(false);
        }
    }
    // (2) [[x_i, x_j], x_l] = prod c_s^beta[(i,j,l)][s].
    for i in 0..r.d {
        for j in 0..r.d {
            for l in 0..r.d {
                let w = grp.commutator(&grp.commutator(&xs[i], &xs[j]), &xs[l]);
                if w != word_over(grp, cs, r.beta_row(i, j, l)) {
                    return Ok(false);
                }
            }
        }
    }
    // (3) [x_i, x_j]^p = 1.
    for i in 0..r.k {
        for j in 0..i {
            let c = grp.commutator(&xs[i], &xs[j]);
            if !grp.power(&c, p as i64).is_identity() {
                return Ok(false);
            }
        }
    }
    // (4) x_i is central for d < i <= k.
    let gens = grp.generators();
    for x in &xs[r.d..] {
        if gens.iter().any(|g| !grp.commutator(x, g).is_identity()) {
            return Ok(false);
        }
    }
    // (5) class at most 3, checked globally; the tuple must generate.
    if grp.nilpotency_class() > 3 {
        return Ok(false);
    }
    if !Subgroup::closure(grp, tuple).is_full_group(grp) {
        return Ok(false);
    }
    Ok(true)
}

/// Search `grp` for a generating tuple satisfying `r`, trying candidates in
/// normal-form order so the result is deterministic. Returns the first
/// tuple found, or None when no tuple exists (the search is exhaustive:
/// every pruning rule is a necessary condition).
pub fn find_satisfying_tuple(
    r: &RData,
    grp: &PcGroup,
    cap: u64,
) -> Result<Option<Vec<GroupElement>>> {
    r.validate()?;
    if r.p != grp.p() {
        return Err(Error::Input(format!(
            "relation data over p = {} cannot be searched in a group over p = {}",
            r.p,
            grp.p()
        )));
    }
    if grp.order() > cap {
        return Err(Error::Resource(format!(
            "tuple search capped at order {cap}, the group has order {}",
            grp.order()
        )));
    }
    // The relations present a group of a fixed order; a mismatch means no
    // generating tuple can satisfy them.
    if r.target_order() != Some(grp.order()) {
        return Ok(None);
    }
    if grp.nilpotency_class() > 3 {
        return Ok(None);
    }
    if grp.minimal_generator_count()? != r.k {
        return Ok(None);
    }
    let lcs = grp.lower_central_series();
    let gamma2 = gamma_term(grp, &lcs, 2);
    let gamma3 = gamma_term(grp, &lcs, 3);
    // A satisfying tuple forces gamma_3 = <c_1, ..., c_m> of order p^m and
    // an elementary abelian gamma_2 of order p^(d(d-1)/2 + m).
    if gamma3.log_order() != r.m {
        return Ok(None);
    }
    if gamma2.log_order() != r.d * r.d.saturating_sub(1) / 2 + r.m {
        return Ok(None);
    }
    if !grp.subgroup_power_p(&gamma2)?.is_trivial() {
        return Ok(None);
    }

    let phi = grp.frattini()?;
    let mut center_sorted = grp.center()?.elements(grp, ELEMENT_SCAN_CAP)?;
    center_sorted.sort_unstable();

    let search = Search { r, grp, gamma2, gamma3, center_sorted };
    let mut xs = Vec::with_capacity(r.k);
    search.pick_noncentral(&mut xs, phi)
}

struct Search<'a> {
    r: &'a RData,
    grp: &'a PcGroup,
    gamma2: Subgroup,
    gamma3: Subgroup,
    center_sorted: Vec<GroupElement>,
}

impl Search<'_> {
    /// Choose x_1, ..., x_d in normal-form order. `span` tracks
    /// <Phi(K), picks so far>; candidates inside it cannot extend to a
    /// generating set.
    fn pick_noncentral(
        &self,
        xs: &mut Vec<GroupElement>,
        span: Subgroup,
    ) -> Result<Option<Vec<GroupElement>>> {
        if xs.len() == self.r.d {
            return self.solve_centrals(xs, span);
        }
        let i = xs.len();
        for rank in 0..self.grp.order() {
            let x = self.grp.unrank(rank);
            if !self.power_profile_ok(&x, self.r.n[i]) {
                continue;
            }
            if span.contains(self.grp, &x) {
                continue;
            }
            if !xs.iter().all(|prev| self.pair_power_ok(prev, &x)) {
                continue;
            }
            let extended = extend_span(self.grp, &span, &x);
            xs.push(x);
            if let Some(hit) = self.pick_noncentral(xs, extended)? {
                return Ok(Some(hit));
            }
            xs.pop();
        }
        Ok(None)
    }

    /// A satisfying x_i has order exactly p^n_i modulo gamma_2, its
    /// p^n_i-th power lies in gamma_3 and dies after one more p-th power.
    fn power_profile_ok(&self, x: &GroupElement, n_i: u32) -> bool {
        let mut y = x.clone();
        let mut t = 0u32;
        while !self.gamma2.contains(self.grp, &y) {
            if t == n_i {
                return false;
            }
            y = self.grp.power(&y, self.grp.p() as i64);
            t += 1;
        }
        t == n_i
            && self.gamma3.contains(self.grp, &y)
            && self.grp.power(&y, self.grp.p() as i64).is_identity()
    }

    /// Relation (3) between two already chosen generators.
    fn pair_power_ok(&self, a: &GroupElement, b: &GroupElement) -> bool {
        let c = self.grp.commutator(a, b);
        self.grp.power(&c, self.grp.p() as i64).is_identity()
    }

    /// With the noncentral part fixed, the c_s are forced: their
    /// gamma_3-coordinates solve beta * gamma = v where v holds the triple
    /// commutator coordinates. Solve, then check the power relations and
    /// move on to the central generators.
    fn solve_centrals(
        &self,
        xs: &mut Vec<GroupElement>,
        span: Subgroup,
    ) -> Result<Option<Vec<GroupElement>>> {
        let r = self.r;
        let p = r.p;
        let mut v_rows = Vec::with_capacity(r.d * r.d * r.d);
        for i in 0..r.d {
            for j in 0..r.d {
                for l in 0..r.d {
                    let w = self
                        .grp
                        .commutator(&self.grp.commutator(&xs[i], &xs[j]), &xs[l]);
                    debug_assert!(self.gamma3.contains(self.grp, &w));
                    v_rows.push(self.gamma3.coordinates(self.grp, &w)?);
                }
            }
        }
        let gamma = match solve_rows(&r.beta, &v_rows, r.m, p) {
            Some(gamma) => gamma,
            None => return Ok(None),
        };
        // The c_s must span gamma_3, so their coordinate matrix must be
        // invertible.
        if r.m > 0 {
            let mut rref = RrefBuilder::new(p, r.m);
            for row in &gamma {
                rref.insert(row);
            }
            if rref.rank() != r.m {
                return Ok(None);
            }
        }
        let cs: Vec<GroupElement> =
            gamma.iter().map(|row| word_over(self.grp, self.gamma3.igs(), row)).collect();
        // Relation (1) for the noncentral generators is only checkable now.
        for i in 0..r.d {
            if power_iterate(self.grp, &xs[i], r.n[i]) != word_over(self.grp, &cs, &r.alpha[i]) {
                return Ok(None);
            }
        }
        self.pick_central(xs, span, &cs)
    }

    /// Choose x_{d+1}, ..., x_k from the center in normal-form order.
    fn pick_central(
        &self,
        xs: &mut Vec<GroupElement>,
        span: Subgroup,
        cs: &[GroupElement],
    ) -> Result<Option<Vec<GroupElement>>> {
        let r = self.r;
        if xs.len() == r.k {
            let mut tuple = xs.clone();
            tuple.extend_from_slice(cs);
            // The prunes are necessary conditions, not sufficient ones;
            // accept only tuples passing the full check.
            if verify_relations(r, self.grp, &tuple)? {
                return Ok(Some(tuple));
            }
            return Ok(None);
        }
        let i = xs.len();
        let target = word_over(self.grp, cs, &r.alpha[i]);
        for z in &self.center_sorted {
            if span.contains(self.grp, z) {
                continue;
            }
            if !self.central_powers_ok(z, r.n[i], &target) {
                continue;
            }
            let extended = extend_span(self.grp, &span, z);
            xs.push(z.clone());
            if let Some(hit) = self.pick_central(xs, extended, cs)? {
                return Ok(Some(hit));
            }
            xs.pop();
        }
        Ok(None)
    }

    /// A central candidate must keep order p^n_i modulo gamma_2 and its
    /// p^n_i-th power must hit the exact word required by relation (1).
    fn central_powers_ok(&self, z: &GroupElement, n_i: u32, target: &GroupElement) -> bool {
        let mut y = z.clone();
        for _ in 0..n_i {
            if self.gamma2.contains(self.grp, &y) {
                return false;
            }
            y = self.grp.power(&y, self.grp.p() as i64);
        }
        y == *target
    }
}

fn extend_span(grp: &PcGroup, span: &Subgroup, x: &GroupElement) -> Subgroup {
    let mut gens = span.igs().to_vec();
    gens.push(x.clone());
    Subgroup::closure(grp, gens.as_slice())
}

/// x^(p^t) by iterated p-th powers.
fn power_iterate(grp: &PcGroup, x: &GroupElement, t: u32) -> GroupElement {
    let mut y = x.clone();
    for _ in 0..t {
        y = grp.power(&y, grp.p() as i64);
    }
    y
}

/// prod basis[j]^row[j].
fn word_over(grp: &PcGroup, basis: &[GroupElement], row: &[u32]) -> GroupElement {
    debug_assert_eq!(basis.len(), row.len());
    let mut acc = grp.identity();
    for (b, &e) in basis.iter().zip(row) {
        if e != 0 {
            acc = grp.multiply(&acc, &grp.power(b, e as i64));
        }
    }
    acc
}

/// Solve B * X = V over F_p for the m x m matrix X, where B has full
/// column rank m. Returns None when the system is inconsistent. Rows of B
/// and V are matched by index.
fn solve_rows(b: &[Vec<u32>], v: &[Vec<u32>], m: usize, p: u32) -> Option<Vec<Vec<u32>>> {
    if m == 0 {
        return Some(Vec::new());
    }
    debug_assert_eq!(b.len(), v.len());
    let width = 2 * m;
    // Reduced row echelon form of the augmented matrix [B | V].
    let mut pivots: Vec<(usize, Vec<u32>)> = Vec::new();
    for (brow, vrow) in b.iter().zip(v) {
        let mut row: Vec<u32> = Vec::with_capacity(width);
        row.extend_from_slice(brow);
        row.extend_from_slice(vrow);
        for (col, prow) in &pivots {
            let c = row[*col];
            if c != 0 {
                for t in 0..width {
                    row[t] = sub_mod(row[t], mul_mod(c, prow[t], p), p);
                }
            }
        }
        let lead = match row.iter().position(|&c| c != 0) {
            Some(col) => col,
            None => continue,
        };
        if lead >= m {
            // A zero combination of relations demands a nonzero value.
            return None;
        }
        let inv = inv_mod(row[lead], p);
        for t in 0..width {
            row[t] = mul_mod(row[t], inv, p);
        }
        for (_, prow) in pivots.iter_mut() {
            let c = prow[lead];
            if c != 0 {
                for t in 0..width {
                    prow[t] = sub_mod(prow[t], mul_mod(c, row[t], p), p);
                }
            }
        }
        pivots.push((lead, row));
    }
    if pivots.len() != m {
        return None;
    }
    let mut gamma = vec![vec![0u32; m]; m];
    for (col, row) in &pivots {
        gamma[*col] = row[m..].to_vec();
    }
    Some(gamma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::mip::extract_presentation;

    fn group(name: &str, param: u64) -> PcGroup {
        catalog::builtin(name, param).expect("builtin").group().expect("consistent")
    }

    #[test]
    fn extraction_round_trips_through_verification() {
        for (name, param) in [
            ("cyclic", 27),
            ("cyclic", 243),
            ("elem_abelian", 243),
            ("c_p2_x_cp", 3),
            ("heisenberg", 3),
            ("maxclass_p4", 3),
        ] {
            let g = group(name, param);
            let ext = extract_presentation(&g).expect("extract");
            let ok = verify_relations(&ext.rdata, &ext.quotient, &ext.tuple()).expect("verify");
            assert!(ok, "{name}:{param} extraction does not satisfy its own relations");
        }
    }

    #[test]
    fn searching_the_home_group_finds_a_tuple() {
        for (name, param) in [("heisenberg", 3), ("maxclass_p4", 3), ("elem_abelian", 27)] {
            let g = group(name, param);
            let ext = extract_presentation(&g).expect("extract");
            let tuple = find_satisfying_tuple(&ext.rdata, &ext.quotient, TUPLE_SEARCH_CAP)
                .expect("search")
                .unwrap_or_else(|| panic!("{name}:{param} search found nothing"));
            assert!(verify_relations(&ext.rdata, &ext.quotient, &tuple).expect("verify"));
        }
    }

    #[test]
    fn search_is_deterministic() {
        let g = group("heisenberg", 3);
        let ext = extract_presentation(&g).expect("extract");
        let a = find_satisfying_tuple(&ext.rdata, &ext.quotient, TUPLE_SEARCH_CAP).expect("search");
        let b = find_satisfying_tuple(&ext.rdata, &ext.quotient, TUPLE_SEARCH_CAP).expect("search");
        assert_eq!(a, b);
    }

    #[test]
    fn heisenberg_relations_fail_in_the_wrong_groups() {
        let ext = extract_presentation(&group("heisenberg", 3)).expect("extract");
        // The cyclic group has the right order but one generator.
        let c27 = group("cyclic", 27);
        assert_eq!(
            find_satisfying_tuple(&ext.rdata, &c27, TUPLE_SEARCH_CAP).expect("search"),
            None
        );
        // The modular group has the right order and rank, but every
        // candidate with x^3 in gamma_3 = 1 lies in an abelian subgroup.
        let m27 = group("modular", 3);
        assert_eq!(
            find_satisfying_tuple(&ext.rdata, &m27, TUPLE_SEARCH_CAP).expect("search"),
            None
        );
        // An elementary abelian group is distinguished by its trivial
        // derived subgroup.
        let e27 = group("elem_abelian", 27);
        assert_eq!(
            find_satisfying_tuple(&ext.rdata, &e27, TUPLE_SEARCH_CAP).expect("search"),
            None
        );
    }

    #[test]
    fn verify_rejects_wrong_tuples_without_erroring() {
        let g = group("heisenberg", 3);
        let ext = extract_presentation(&g).expect("extract");
        let q = &ext.quotient;
        // Identity tuple: satisfies no generation requirement.
        let ids = vec![q.identity(); 2];
        assert!(!verify_relations(&ext.rdata, q, &ids).expect("verify"));
        // Swapped tuple: still satisfies the relations by antisymmetry of
        // this particular table (m = 0), and still generates.
        let mut swapped = ext.tuple();
        swapped.swap(0, 1);
        assert!(verify_relations(&ext.rdata, q, &swapped).expect("verify"));
    }

    #[test]
    fn verify_checks_tuple_shape() {
        let g = group("heisenberg", 3);
        let ext = extract_presentation(&g).expect("extract");
        let short = vec![ext.quotient.identity()];
        match verify_relations(&ext.rdata, &ext.quotient, &short) {
            Err(Error::Input(_)) => {}
            other => panic!("expected input error, got {other:?}"),
        }
    }

    #[test]
    fn search_cap_is_enforced() {
        let ext = extract_presentation(&group("heisenberg", 3)).expect("extract");
        let big = group("elem_abelian", 2187);
        match find_satisfying_tuple(&ext.rdata, &big, TUPLE_SEARCH_CAP) {
            Err(Error::Resource(_)) => {}
            other => panic!("expected resource error, got {other:?}"),
        }
    }

    #[test]
    fn order_mismatch_returns_none_before_searching() {
        let ext = extract_presentation(&group("heisenberg", 3)).expect("extract");
        let c9 = group("cyclic", 9);
        assert_eq!(
            find_satisfying_tuple(&ext.rdata, &c9, TUPLE_SEARCH_CAP).expect("search"),
            None
        );
    }

    #[test]
    fn cross_searching_the_5_7_tables_needs_a_raised_cap() {
        let ext = extract_presentation(&group("G5_7_1599", 5)).expect("extract");
        let other = group("G5_7_1734", 5);
        match find_satisfying_tuple(&ext.rdata, &other, TUPLE_SEARCH_CAP) {
            Err(Error::Resource(_)) => {}
            other => panic!("expected resource error, got {other:?}"),
        }
    }

    #[test]
    fn solve_rows_handles_unique_and_inconsistent_systems() {
        // B = [[1,0],[0,1],[1,1]], X unknown 2x2, V chosen from X = I.
        let b = vec![vec![1, 0], vec![0, 1], vec![1, 1]];
        let v = vec![vec![1, 0], vec![0, 1], vec![1, 1]];
        assert_eq!(solve_rows(&b, &v, 2, 3), Some(vec![vec![1, 0], vec![0, 1]]));
        // Inconsistent: the third row contradicts the first two.
        let v_bad = vec![vec![1, 0], vec![0, 1], vec![0, 0]];
        assert_eq!(solve_rows(&b, &v_bad, 2, 3), None);
    }
}
