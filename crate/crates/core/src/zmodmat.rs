//! Exact linear algebra over the integers and over `Z/N`.
//!
//! Kernels and subgroup structures come from an integer Smith form computed
//! in arbitrary precision; row spans mod `N` are normalized to Howell form,
//! which is unique even when `N` is composite.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, VecDeque};
use std::fmt;

/// An integer matrix, optionally attached to a modulus `N`.
///
/// With a modulus every entry is stored reduced into `[0, N)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ZMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i64>,
    modulus: Option<u64>,
}

impl ZMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<i64>, modulus: Option<u64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!("{rows}x{cols} matrix")));
        }
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if modulus == Some(0) {
            return Err(Error::Usage("modulus must be positive".into()));
        }
        let mut m = ZMatrix { rows, cols, entries, modulus };
        m.normalize();
        Ok(m)
    }

    pub fn from_rows(rows: &[Vec<i64>], modulus: Option<u64>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        ZMatrix::new(r, c, rows.concat(), modulus)
    }

    pub fn identity(n: usize, modulus: Option<u64>) -> Self {
        let mut e = vec![0; n * n];
        for i in 0..n {
            e[i * n + i] = 1;
        }
        ZMatrix::new(n, n, e, modulus).expect("valid identity")
    }

    pub fn zeros(rows: usize, cols: usize, modulus: Option<u64>) -> Self {
        ZMatrix::new(rows, cols, vec![0; rows * cols], modulus).expect("valid zero matrix")
    }

    pub fn diagonal(diag: &[i64], modulus: Option<u64>) -> Self {
        let n = diag.len();
        let mut e = vec![0; n * n];
        for (i, d) in diag.iter().enumerate() {
            e[i * n + i] = *d;
        }
        ZMatrix::new(n, n, e, modulus).expect("valid diagonal")
    }

    /// The 2x2 block matrix `[[a, b], [c, d]]`.
    pub fn block2(a: &ZMatrix, b: &ZMatrix, c: &ZMatrix, d: &ZMatrix) -> Result<Self> {
        if a.rows != b.rows || c.rows != d.rows || a.cols != c.cols || b.cols != d.cols {
            return Err(Error::Dimension("incompatible blocks".into()));
        }
        let modulus = a.modulus;
        if [b, c, d].iter().any(|m| m.modulus != modulus) {
            return Err(Error::Usage("blocks carry different moduli".into()));
        }
        let rows = a.rows + c.rows;
        let cols = a.cols + b.cols;
        let mut e = Vec::with_capacity(rows * cols);
        for (left, right) in [(a, b), (c, d)] {
            for i in 0..left.rows {
                e.extend_from_slice(left.row(i));
                e.extend_from_slice(right.row(i));
            }
        }
        ZMatrix::new(rows, cols, e, modulus)
    }

    fn normalize(&mut self) {
        if let Some(n) = self.modulus {
            let n = n as i64;
            for x in &mut self.entries {
                *x = x.rem_euclid(n);
            }
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Reinterprets the entries modulo `n` (for `n | N` this is reduction of the map).
    pub fn reduce(&self, n: u64) -> Result<Self> {
        ZMatrix::new(self.rows, self.cols, self.entries.clone(), Some(n))
    }

    /// Drops the modulus, keeping the stored representatives.
    pub fn lift(&self) -> Self {
        ZMatrix { modulus: None, ..self.clone() }
    }

    /// Representatives in the symmetric range `(-N/2, N/2]`.
    pub fn symmetric_lift(&self) -> Self {
        let mut m = self.lift();
        if let Some(n) = self.modulus {
            let n = n as i64;
            for x in &mut m.entries {
                if 2 * *x > n {
                    *x -= n;
                }
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> Self {
        let mut e = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                e.push(self.get(i, j));
            }
        }
        ZMatrix::new(self.cols, self.rows, e, self.modulus).expect("same shape")
    }

    pub fn scale(&self, k: i64) -> Self {
        let e = self.entries.iter().map(|&x| mul_entry(x, k, self.modulus)).collect();
        ZMatrix::new(self.rows, self.cols, e, self.modulus).expect("same shape")
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn add(&self, other: &ZMatrix) -> Result<Self> {
        self.check_same_ring(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension("matrix sum of different shapes".into()));
        }
        let e = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        ZMatrix::new(self.rows, self.cols, e, self.modulus)
    }

    pub fn sub(&self, other: &ZMatrix) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &ZMatrix) -> Result<Self> {
        self.check_same_ring(other)?;
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut e = vec![0i64; self.rows * other.cols];
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc: i128 = 0;
                for k in 0..self.cols {
                    acc += self.get(i, k) as i128 * other.get(k, j) as i128;
                    if let Some(n) = self.modulus {
                        acc = acc.rem_euclid(n as i128);
                    }
                }
                e[i * other.cols + j] = i64::try_from(acc).expect("matrix product overflow");
            }
        }
        ZMatrix::new(self.rows, other.cols, e, self.modulus)
    }

    pub fn mul_vec(&self, x: &[i64]) -> Vec<i64> {
        assert_eq!(x.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                let acc: i128 = self.row(i).iter().zip(x).map(|(a, b)| *a as i128 * *b as i128).sum();
                match self.modulus {
                    Some(n) => acc.rem_euclid(n as i128) as i64,
                    None => i64::try_from(acc).expect("matrix-vector overflow"),
                }
            })
            .collect()
    }

    fn check_same_ring(&self, other: &ZMatrix) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::Usage(format!(
                "moduli differ: {:?} vs {:?}",
                self.modulus, other.modulus
            )));
        }
        Ok(())
    }

    /// Inverse modulo the attached modulus.
    pub fn inverse_mod(&self) -> Result<Self> {
        let n = self.require_modulus()?;
        if !self.is_square() {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let s = smith(&self.to_big(), self.rows, self.cols);
        let big_n = BigInt::from(n);
        let mut dinv = Vec::with_capacity(self.rows);
        for d in &s.diag {
            let d = d.mod_floor(&big_n).to_i64().expect("reduced");
            dinv.push(mod_inverse(d, n as i64).ok_or(Error::NotInvertible(n))?);
        }
        // A = U^-1 D V^-1, so A^-1 = V D^-1 U.
        let v = from_big(&s.v, Some(n));
        let u = from_big(&s.u, Some(n));
        let d = ZMatrix::diagonal(&dinv, Some(n));
        v.mul(&d)?.mul(&u)
    }

    /// Invariant factors of the integer matrix (diagonal of its Smith form, zeros included).
    pub fn smith_diagonal(&self) -> Vec<BigInt> {
        smith(&self.to_big(), self.rows, self.cols).diag
    }

    fn require_modulus(&self) -> Result<u64> {
        match self.modulus {
            Some(n) if n >= 2 => Ok(n),
            Some(n) => Err(Error::Usage(format!("modulus {n} must be at least 2"))),
            None => Err(Error::Usage("operation needs an attached modulus".into())),
        }
    }

    fn to_big(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|&x| BigInt::from(x)).collect()).collect()
    }
}

impl fmt::Display for ZMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            writeln!(f, "{:?}", self.row(i))?;
        }
        match self.modulus {
            Some(n) => write!(f, "(mod {n})"),
            None => write!(f, "(over Z)"),
        }
    }
}

fn mul_entry(x: i64, k: i64, modulus: Option<u64>) -> i64 {
    let p = x as i128 * k as i128;
    match modulus {
        Some(n) => p.rem_euclid(n as i128) as i64,
        None => i64::try_from(p).expect("scalar multiple overflow"),
    }
}

fn from_big(a: &[Vec<BigInt>], modulus: Option<u64>) -> ZMatrix {
    let rows: Vec<Vec<i64>> = a
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| match modulus {
                    Some(n) => x.mod_floor(&BigInt::from(n)).to_i64().expect("reduced"),
                    None => x.to_i64().expect("entry fits in i64"),
                })
                .collect()
        })
        .collect();
    ZMatrix::from_rows(&rows, modulus).expect("well-formed")
}

/// Inverse of `a` modulo `n`, if it exists.
pub fn mod_inverse(a: i64, n: i64) -> Option<i64> {
    let e = a.rem_euclid(n).extended_gcd(&n);
    (e.gcd == 1).then(|| e.x.rem_euclid(n))
}

// ---------------------------------------------------------------------------
// Smith form over Z

struct Smith {
    u: Vec<Vec<BigInt>>,
    diag: Vec<BigInt>,
    v: Vec<Vec<BigInt>>,
}

fn identity_big(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

fn row_axpy(m: &mut [Vec<BigInt>], target: usize, src: usize, q: &BigInt) {
    let (t, s) = if target < src {
        let (a, b) = m.split_at_mut(src);
        (&mut a[target], &b[0])
    } else {
        let (a, b) = m.split_at_mut(target);
        (&mut b[0], &a[src])
    };
    for (x, y) in t.iter_mut().zip(s.iter()) {
        *x += q * y;
    }
}

fn col_axpy(m: &mut [Vec<BigInt>], target: usize, src: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let y = row[src].clone();
        row[target] += q * y;
    }
}

fn swap_cols(m: &mut [Vec<BigInt>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// Smith form `U A V = diag(d_1, ..., d_r, 0, ...)` with `d_i | d_{i+1}` and `d_i >= 0`.
fn smith(a: &[Vec<BigInt>], rows: usize, cols: usize) -> Smith {
    let mut a = a.to_vec();
    let mut u = identity_big(rows);
    let mut v = identity_big(cols);
    let steps = rows.min(cols);
    for t in 0..steps {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return Smith { diag: diagonal_of(&a, steps), u, v };
            };
            a.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut a, t, pj);
            swap_cols(&mut v, t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = -a[i][t].div_floor(&a[t][t]);
                    row_axpy(&mut a, i, t, &q);
                    row_axpy(&mut u, i, t, &q);
                    clean &= a[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = -a[t][j].div_floor(&a[t][t]);
                    col_axpy(&mut a, j, t, &q);
                    col_axpy(&mut v, j, t, &q);
                    clean &= a[t][j].is_zero();
                }
            }
            if !clean {
                continue;
            }
            let pivot = a[t][t].clone();
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&pivot)));
            if let Some(i) = offender {
                row_axpy(&mut a, t, i, &BigInt::one());
                row_axpy(&mut u, t, i, &BigInt::one());
                continue;
            }
            break;
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
    }
    Smith { diag: diagonal_of(&a, steps), u, v }
}

fn diagonal_of(a: &[Vec<BigInt>], steps: usize) -> Vec<BigInt> {
    (0..steps).map(|i| a[i][i].clone()).collect()
}

// ---------------------------------------------------------------------------
// Subgroups of (Z/N)^k

/// A subgroup of `(Z/N)^k`: a canonical (Howell) generating set plus its
/// invariant factors, largest first, each dividing the one before.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupDescription {
    ambient_rank: usize,
    modulus: u64,
    generators: Vec<Vec<i64>>,
    invariant_factors: Vec<u64>,
}

impl SubgroupDescription {
    pub fn trivial(ambient_rank: usize, modulus: u64) -> Self {
        SubgroupDescription { ambient_rank, modulus, generators: Vec::new(), invariant_factors: Vec::new() }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Howell-form generators; every element is uniquely `sum c_i g_i` with
    /// `0 <= c_i < N / pivot_i`.
    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn order(&self) -> u128 {
        self.invariant_factors.iter().map(|&d| d as u128).product()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    /// Membership test by reduction against the Howell basis.
    pub fn contains(&self, x: &[i64]) -> bool {
        if x.len() != self.ambient_rank {
            return false;
        }
        let n = self.modulus as i64;
        let mut x: Vec<i64> = x.iter().map(|v| v.rem_euclid(n)).collect();
        for g in &self.generators {
            let j = pivot_col(g).expect("Howell rows are nonzero");
            if x[..j].iter().any(|&v| v != 0) {
                return false;
            }
            let p = g[j];
            if x[j] % p != 0 {
                return false;
            }
            let q = x[j] / p;
            for (xi, gi) in x.iter_mut().zip(g) {
                *xi = (*xi - q * gi).rem_euclid(n);
            }
        }
        x.iter().all(|&v| v == 0)
    }

    /// All elements, each listed once.
    pub fn elements(&self) -> Vec<Vec<i64>> {
        let n = self.modulus as i64;
        let mut out = vec![vec![0i64; self.ambient_rank]];
        for g in &self.generators {
            let j = pivot_col(g).expect("nonzero row");
            let mult = n / g[j];
            let mut next = Vec::with_capacity(out.len() * mult as usize);
            for base in &out {
                for c in 0..mult {
                    next.push(base.iter().zip(g).map(|(b, gi)| (b + c * gi).rem_euclid(n)).collect());
                }
            }
            out = next;
        }
        out
    }
}

fn pivot_col(row: &[i64]) -> Option<usize> {
    row.iter().position(|&x| x != 0)
}

/// `{x in (Z/N)^cols : M x = 0 mod N}`.
pub fn kernel_mod(m: &ZMatrix) -> Result<SubgroupDescription> {
    let n = m.require_modulus()?;
    let s = smith(&m.to_big(), m.rows, m.cols);
    let big_n = BigInt::from(n);
    let mut gens = Vec::new();
    let mut factors = Vec::new();
    for i in 0..m.cols {
        let d = s.diag.get(i).cloned().unwrap_or_else(BigInt::zero);
        let g = d.gcd(&big_n).to_u64().expect("divisor of N");
        if g > 1 {
            let scale = BigInt::from(n / g);
            let col: Vec<i64> = (0..m.cols)
                .map(|r| (&s.v[r][i] * &scale).mod_floor(&big_n).to_i64().expect("reduced"))
                .collect();
            gens.push(col);
            factors.push(g);
        }
    }
    factors.sort_unstable_by(|a, b| b.cmp(a));
    Ok(SubgroupDescription {
        ambient_rank: m.cols,
        modulus: n,
        generators: howell_rows(&gens, m.cols, n),
        invariant_factors: factors,
    })
}

/// Structure of the subgroup of `(Z/N)^k` generated by `generators`.
pub fn subgroup_structure(generators: &[Vec<i64>], k: usize, n: u64) -> Result<SubgroupDescription> {
    if n < 2 {
        return Err(Error::Usage(format!("modulus {n} must be at least 2")));
    }
    if let Some(g) = generators.iter().find(|g| g.len() != k) {
        return Err(Error::Dimension(format!("generator {g:?} is not in (Z/{n})^{k}")));
    }
    if k == 0 {
        return Err(Error::Dimension("ambient rank must be positive".into()));
    }
    // the Howell rows span the same subgroup and keep the Smith input small
    let howell = howell_rows(generators, k, n);
    let mut stacked: Vec<Vec<BigInt>> = howell.iter().map(|g| g.iter().map(|&x| BigInt::from(x)).collect()).collect();
    for i in 0..k {
        stacked.push((0..k).map(|j| if i == j { BigInt::from(n) } else { BigInt::zero() }).collect());
    }
    let rows = stacked.len();
    let s = smith(&stacked, rows, k);
    let mut factors: Vec<u64> = s
        .diag
        .iter()
        .map(|d| n / d.to_u64().expect("divisor of N"))
        .filter(|&f| f > 1)
        .collect();
    factors.sort_unstable_by(|a, b| b.cmp(a));
    Ok(SubgroupDescription {
        ambient_rank: k,
        modulus: n,
        generators: howell,
        invariant_factors: factors,
    })
}

/// Independent span enumeration by breadth-first closure under addition of
/// generators. Used to cross-check the Howell-based enumeration.
pub fn span_by_closure(generators: &[Vec<i64>], k: usize, n: u64) -> BTreeSet<Vec<i64>> {
    let ni = n as i64;
    let zero = vec![0i64; k];
    let mut seen = BTreeSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y: Vec<i64> = x.iter().zip(g).map(|(a, b)| (a + b).rem_euclid(ni)).collect();
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

// ---------------------------------------------------------------------------
// Canonical forms

/// Canonical row-span representative: Howell form over `Z/N`, Hermite form
/// over `Z`. The result always has `cols` rows, zero-padded, so two matrices
/// with the same number of columns have equal row spans iff their canonical
/// forms are equal.
pub fn canonical_form(m: &ZMatrix) -> ZMatrix {
    let rows = match m.modulus {
        Some(n) if n >= 2 => howell_rows(&m.to_rows(), m.cols, n),
        Some(_) => Vec::new(),
        None => hermite_rows(m),
    };
    let mut padded = rows;
    padded.resize(m.cols, vec![0; m.cols]);
    ZMatrix::from_rows(&padded, m.modulus).expect("square canonical form")
}

fn gcdex(a: i128, b: i128) -> (i128, i128, i128) {
    let e = a.extended_gcd(&b);
    (e.gcd, e.x, e.y)
}

/// A unit `u` mod `n` with `u * a = gcd(a, n)` mod `n`.
fn normalizing_unit(a: i128, n: i128) -> i128 {
    let g = a.gcd(&n);
    let (ap, np) = (a / g, n / g);
    if np == 1 {
        return 1;
    }
    let inv = ap.extended_gcd(&np).x.rem_euclid(np);
    let mut u = inv;
    while u.gcd(&n) != 1 {
        u += np;
    }
    u
}

fn howell_rows(input: &[Vec<i64>], cols: usize, n: u64) -> Vec<Vec<i64>> {
    let n = n as i128;
    let mut rows: Vec<Vec<i128>> = input
        .iter()
        .map(|r| r.iter().map(|&x| (x as i128).rem_euclid(n)).collect())
        .filter(|r: &Vec<i128>| r.iter().any(|&x| x != 0))
        .collect();
    let reduce = |row: &mut Vec<i128>| {
        for x in row.iter_mut() {
            *x = x.rem_euclid(n);
        }
    };
    let mut r = 0;
    for j in 0..cols {
        if r >= rows.len() {
            break;
        }
        for i in r + 1..rows.len() {
            let b = rows[i][j];
            if b == 0 {
                continue;
            }
            let a = rows[r][j];
            let (g, s, t) = gcdex(a, b);
            let (c, d) = (-b / g, a / g);
            let top: Vec<i128> = rows[r].iter().zip(&rows[i]).map(|(x, y)| s * x + t * y).collect();
            let bot: Vec<i128> = rows[r].iter().zip(&rows[i]).map(|(x, y)| c * x + d * y).collect();
            rows[r] = top;
            rows[i] = bot;
            reduce(&mut rows[r]);
            reduce(&mut rows[i]);
        }
        let a = rows[r][j];
        if a == 0 {
            continue;
        }
        let u = normalizing_unit(a, n);
        for x in rows[r].iter_mut() {
            *x *= u;
        }
        reduce(&mut rows[r]);
        let p = rows[r][j];
        for i in 0..r {
            let q = rows[i][j] / p;
            if q != 0 {
                let pr = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pr) {
                    *x -= q * y;
                }
                reduce(&mut rows[i]);
            }
        }
        let ann = n / p;
        let extra: Vec<i128> = rows[r].iter().map(|x| (x * ann).rem_euclid(n)).collect();
        if extra.iter().any(|&x| x != 0) {
            rows.push(extra);
        }
        r += 1;
    }
    rows.truncate(r);
    rows.into_iter().map(|row| row.into_iter().map(|x| x as i64).collect()).collect()
}

fn hermite_rows(m: &ZMatrix) -> Vec<Vec<i64>> {
    let mut a = m.to_big();
    let (rows, cols) = (m.rows, m.cols);
    let mut r = 0;
    for j in 0..cols {
        if r >= rows {
            break;
        }
        loop {
            let best = (r..rows)
                .filter(|&i| !a[i][j].is_zero())
                .min_by(|&x, &y| a[x][j].abs().cmp(&a[y][j].abs()));
            let Some(p) = best else { break };
            a.swap(r, p);
            let mut done = true;
            for i in r + 1..rows {
                if !a[i][j].is_zero() {
                    let q = -a[i][j].div_floor(&a[r][j]);
                    row_axpy(&mut a, i, r, &q);
                    done &= a[i][j].is_zero();
                }
            }
            if done {
                break;
            }
        }
        if a[r][j].is_zero() {
            continue;
        }
        if a[r][j].is_negative() {
            for x in a[r].iter_mut() {
                *x = -x.clone();
            }
        }
        for i in 0..r {
            let q = -a[i][j].div_floor(&a[r][j]);
            if !q.is_zero() {
                row_axpy(&mut a, i, r, &q);
            }
        }
        r += 1;
    }
    a.truncate(r);
    a.into_iter()
        .map(|row| row.into_iter().map(|x| x.to_i64().expect("Hermite entry fits in i64")).collect())
        .collect()
}
