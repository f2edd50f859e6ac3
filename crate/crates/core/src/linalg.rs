//! Exact dense linear algebra over the prime field F_p.
//!
//! Rows are plain `Vec<u32>` with entries reduced mod p. Subspaces are kept
//! in reduced row echelon form at all times, so two subspaces are equal as
//! sets of vectors iff their stored bases are equal as matrices. Pivoting is
//! deterministic (first nonzero column, topmost row), which makes every
//! basis this module hands out reproducible run to run.

use crate::error::{Error, Result};

#[inline]
pub fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn neg_mod(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

#[inline]
pub fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub fn pow_mod(mut base: u32, mut exp: u64, p: u32) -> u32 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Multiplicative inverse mod p (p prime, a not divisible by p).
pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0, "inverse of 0 mod {p}");
    pow_mod(a, p as u64 - 2, p)
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn check_prime(p: u32) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::Input(format!("{p} is not prime")))
    }
}

/// Dense matrix over F_p, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl FpMatrix {
    pub fn new(p: u32, rows: usize, cols: usize, entries: Vec<u32>) -> Result<Self> {
        check_prime(p)?;
        if entries.len() != rows * cols {
            return Err(Error::Input(format!(
                "matrix data has {} entries, expected {}x{}",
                entries.len(),
                rows,
                cols
            )));
        }
        let entries = entries.into_iter().map(|x| x % p).collect();
        Ok(FpMatrix { p, rows, cols, entries })
    }

    pub fn zero(p: u32, rows: usize, cols: usize) -> Result<Self> {
        FpMatrix::new(p, rows, cols, vec![0; rows * cols])
    }

    pub fn identity(p: u32, n: usize) -> Result<Self> {
        let mut m = FpMatrix::zero(p, n, n)?;
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        Ok(m)
    }

    pub fn from_rows(p: u32, cols: usize, rows: &[Vec<u32>]) -> Result<Self> {
        for r in rows {
            if r.len() != cols {
                return Err(Error::Input(format!(
                    "row has length {}, expected {}",
                    r.len(),
                    cols
                )));
            }
        }
        let entries = rows.iter().flatten().copied().collect();
        FpMatrix::new(p, rows.len(), cols, entries)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> u32 {
        self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn rows_vec(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Reduced row echelon form together with the rank.
    ///
    /// Scans columns left to right and picks the topmost available row as
    /// pivot; the result is the canonical RREF of the row space.
    pub fn rref(&self) -> (FpMatrix, usize) {
        let mut m = self.clone();
        let rank = rref_in_place(m.p, m.rows, m.cols, &mut m.entries);
        (m, rank)
    }
}

fn rref_in_place(p: u32, rows: usize, cols: usize, entries: &mut [u32]) -> usize {
    let mut pivot_row = 0usize;
    for col in 0..cols {
        if pivot_row >= rows {
            break;
        }
        let Some(src) = (pivot_row..rows).find(|&r| entries[r * cols + col] != 0) else {
            continue;
        };
        if src != pivot_row {
            for c in 0..cols {
                entries.swap(src * cols + c, pivot_row * cols + c);
            }
        }
        let inv = inv_mod(entries[pivot_row * cols + col], p);
        for c in col..cols {
            entries[pivot_row * cols + c] = mul_mod(entries[pivot_row * cols + c], inv, p);
        }
        for r in 0..rows {
            if r == pivot_row {
                continue;
            }
            let f = entries[r * cols + col];
            if f == 0 {
                continue;
            }
            for c in col..cols {
                let sub = mul_mod(f, entries[pivot_row * cols + c], p);
                entries[r * cols + c] = sub_mod(entries[r * cols + c], sub, p);
            }
        }
        pivot_row += 1;
    }
    pivot_row
}

/// Incremental RREF accumulator. Rows inserted one at a time; the stored
/// basis is in reduced row echelon form after every insertion.
#[derive(Debug, Clone)]
pub struct RrefBuilder {
    p: u32,
    dim: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl RrefBuilder {
    pub fn new(p: u32, dim: usize) -> Self {
        RrefBuilder { p, dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Reduce `row` against the current basis (in place); returns the column
    /// of its leading entry, or None if it reduced to zero.
    fn reduce(&self, row: &mut [u32]) -> Option<usize> {
        let p = self.p;
        for (r, &pc) in self.rows.iter().zip(self.pivots.iter()) {
            let f = row[pc];
            if f != 0 {
                for c in pc..self.dim {
                    let sub = mul_mod(f, r[c], p);
                    row[c] = sub_mod(row[c], sub, p);
                }
            }
        }
        row.iter().position(|&x| x != 0)
    }

    pub fn contains(&self, row: &[u32]) -> bool {
        let mut r = row.to_vec();
        self.reduce(&mut r).is_none()
    }

    /// Insert a row; returns true if it enlarged the span.
    pub fn insert(&mut self, row: &[u32]) -> bool {
        debug_assert_eq!(row.len(), self.dim);
        let mut r = row.to_vec();
        let Some(lead) = self.reduce(&mut r) else {
            return false;
        };
        let inv = inv_mod(r[lead], self.p);
        for c in lead..self.dim {
            r[c] = mul_mod(r[c], inv, self.p);
        }
        // back-substitute into existing rows, then insert keeping pivot order
        for (er, &pc) in self.rows.iter_mut().zip(self.pivots.iter()) {
            debug_assert!(pc != lead);
            let f = er[lead];
            if f != 0 {
                for c in lead..self.dim {
                    let sub = mul_mod(f, r[c], self.p);
                    er[c] = sub_mod(er[c], sub, self.p);
                }
            }
        }
        let pos = self.pivots.partition_point(|&c| c < lead);
        self.pivots.insert(pos, lead);
        self.rows.insert(pos, r);
        true
    }

    pub fn into_subspace(self) -> Subspace {
        Subspace { p: self.p, ambient: self.dim, basis: self.rows, pivots: self.pivots }
    }
}

/// Subspace of F_p^n, stored as a canonical RREF basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    p: u32,
    ambient: usize,
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(p: u32, ambient: usize) -> Result<Self> {
        check_prime(p)?;
        Ok(RrefBuilder::new(p, ambient).into_subspace())
    }

    pub fn full(p: u32, ambient: usize) -> Result<Self> {
        check_prime(p)?;
        let mut b = RrefBuilder::new(p, ambient);
        let mut row = vec![0u32; ambient];
        for i in 0..ambient {
            row[i] = 1;
            b.insert(&row);
            row[i] = 0;
        }
        Ok(b.into_subspace())
    }

    pub fn span(p: u32, ambient: usize, rows: &[Vec<u32>]) -> Result<Self> {
        check_prime(p)?;
        let mut b = RrefBuilder::new(p, ambient);
        for r in rows {
            if r.len() != ambient {
                return Err(Error::Input(format!(
                    "spanning vector has length {}, ambient dimension is {}",
                    r.len(),
                    ambient
                )));
            }
            let reduced: Vec<u32> = r.iter().map(|&x| x % p).collect();
            b.insert(&reduced);
        }
        Ok(b.into_subspace())
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn to_builder(&self) -> RrefBuilder {
        RrefBuilder {
            p: self.p,
            dim: self.ambient,
            rows: self.basis.clone(),
            pivots: self.pivots.clone(),
        }
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.p != other.p || self.ambient != other.ambient {
            return Err(Error::Input(format!(
                "subspace mismatch: F_{}^{} vs F_{}^{}",
                self.p, self.ambient, other.p, other.ambient
            )));
        }
        Ok(())
    }

    pub fn contains(&self, v: &[u32]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::Input(format!(
                "vector has length {}, ambient dimension is {}",
                v.len(),
                self.ambient
            )));
        }
        Ok(self.to_builder().contains(v))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        let b = self.to_builder();
        Ok(other.basis.iter().all(|r| b.contains(r)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let mut b = self.to_builder();
        for r in &other.basis {
            b.insert(r);
        }
        Ok(b.into_subspace())
    }

    /// Intersection via the Zassenhaus block trick: row reduce
    /// [U | U; V | 0]; rows whose left half vanished carry a basis of
    /// U ∩ V in the right half.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let n = self.ambient;
        let mut block: Vec<Vec<u32>> = Vec::with_capacity(self.dim() + other.dim());
        for r in &self.basis {
            let mut row = vec![0u32; 2 * n];
            row[..n].copy_from_slice(r);
            row[n..].copy_from_slice(r);
            block.push(row);
        }
        for r in &other.basis {
            let mut row = vec![0u32; 2 * n];
            row[..n].copy_from_slice(r);
            block.push(row);
        }
        let rows = block.len();
        let mut entries: Vec<u32> = block.into_iter().flatten().collect();
        rref_in_place(self.p, rows, 2 * n, &mut entries);
        let mut b = RrefBuilder::new(self.p, n);
        for r in 0..rows {
            let row = &entries[r * 2 * n..(r + 1) * 2 * n];
            if row[..n].iter().all(|&x| x == 0) {
                b.insert(&row[n..]);
            }
        }
        Ok(b.into_subspace())
    }

    /// All vectors of the subspace, in lexicographic order of coefficient
    /// tuples over the canonical basis. Refuses to enumerate more than
    /// `cap` vectors.
    pub fn enumerate(&self, cap: usize) -> Result<Vec<Vec<u32>>> {
        let count = (self.p as u128).checked_pow(self.dim() as u32);
        match count {
            Some(c) if c <= cap as u128 => {}
            _ => {
                return Err(Error::Resource(format!(
                    "subspace has {}^{} vectors, cap is {}",
                    self.p,
                    self.dim(),
                    cap
                )))
            }
        }
        let mut out = vec![vec![0u32; self.ambient]];
        for r in &self.basis {
            let mut next = Vec::with_capacity(out.len() * self.p as usize);
            for v in &out {
                let mut scaled = v.clone();
                for c in 0..self.p {
                    next.push(scaled.clone());
                    if c + 1 < self.p {
                        for (s, &b) in scaled.iter_mut().zip(r.iter()) {
                            *s = add_mod(*s, b, self.p);
                        }
                    }
                }
            }
            out = next;
        }
        Ok(out)
    }
}
