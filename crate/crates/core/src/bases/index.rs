use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{Bidegree, Family, Monomial, VarId};

/// An `n × n` matrix of nonnegative exponents, stored row-major.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex {
    n: usize,
    entries: Vec<u32>,
}

impl MultiIndex {
    pub fn zero(n: usize) -> Self {
        MultiIndex { n, entries: vec![0; n * n] }
    }

    pub fn from_rows(rows: &[Vec<u32>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "multi-index must be square");
        MultiIndex { n, entries: rows.concat() }
    }

    pub fn from_flat(n: usize, entries: Vec<u32>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::InvalidInput(format!("expected {} entries, got {}", n * n, entries.len())));
        }
        Ok(MultiIndex { n, entries })
    }

    /// Unit matrix `e_ij` (1-based).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(n);
        m.entries[(i - 1) * n + (j - 1)] = 1;
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn flat(&self) -> &[u32] {
        &self.entries
    }

    /// Entry `ν_ij`, 1-based.
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.entries[(i - 1) * self.n + (j - 1)] = v;
    }

    pub fn degree(&self) -> u32 {
        self.entries.iter().sum()
    }

    pub fn diagonal_degree(&self) -> u32 {
        (1..=self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn row_sums(&self) -> Vec<u32> {
        self.entries.chunks(self.n).map(|r| r.iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<u32> {
        (1..=self.n).map(|j| (1..=self.n).map(|i| self.get(i, j)).sum()).collect()
    }

    pub fn bidegree(&self) -> Bidegree {
        Bidegree::new(self.row_sums(), self.col_sums())
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex { n: self.n, entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect() }
    }

    /// `ν − e_ij`, or `None` if `ν_ij = 0`.
    pub fn minus_unit(&self, i: usize, j: usize) -> Option<MultiIndex> {
        let v = self.get(i, j);
        (v > 0).then(|| {
            let mut m = self.clone();
            m.set(i, j, v - 1);
            m
        })
    }

    pub fn plus_unit(&self, i: usize, j: usize) -> MultiIndex {
        let mut m = self.clone();
        m.set(i, j, self.get(i, j) + 1);
        m
    }

    pub fn transposed(&self) -> MultiIndex {
        let mut m = Self::zero(self.n);
        for i in 1..=self.n {
            for j in 1..=self.n {
                m.set(j, i, self.get(i, j));
            }
        }
        m
    }

    /// Monomial `∏ v_ij^{ν_ij}` in the given matrix family.
    pub fn monomial_in(&self, fam: Family) -> Monomial {
        let n = self.n;
        Monomial::from_pairs(
            self.entries.iter().enumerate().map(|(k, &e)| (VarId::new(fam, (k / n + 1) as u16, (k % n + 1) as u16), e)),
        )
    }

    /// `T^ν`
    pub fn t_monomial(&self) -> Monomial {
        self.monomial_in(Family::T)
    }

    /// Inverse of [`MultiIndex::monomial_in`]; `None` if another family occurs.
    pub fn from_monomial(m: &Monomial, fam: Family, n: usize) -> Option<MultiIndex> {
        let mut out = Self::zero(n);
        for (v, e) in m.iter() {
            if v.family != fam || v.i as usize > n || v.j as usize > n {
                return None;
            }
            out.set(v.i as usize, v.j as usize, e);
        }
        Some(out)
    }

    /// `ν! = ∏ ν_ij!`
    pub fn factorial(&self) -> num_bigint::BigInt {
        self.entries.iter().map(|&e| crate::field::factorial(e)).product()
    }

    pub fn vanishes_on(&self, partition: &Partition) -> bool {
        partition.block_pairs().all(|(i, j)| self.get(i, j) == 0)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .chunks(self.n)
            .map(|r| r.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "[{}]", rows.join(";"))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Partition `n = n_1 + … + n_d` with non-increasing parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::InvalidInput("partition parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput("partition parts must be non-increasing".into()));
        }
        Ok(Partition { parts })
    }

    /// `(1, …, 1)`
    pub fn trivial(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.parts.iter().all(|&p| p == 1)
    }

    /// 1-based block number of index `i`.
    pub fn block_of(&self, i: usize) -> usize {
        let mut end = 0;
        for (b, &p) in self.parts.iter().enumerate() {
            end += p;
            if i <= end {
                return b + 1;
            }
        }
        panic!("index {i} outside partition of {}", self.n())
    }

    pub fn same_block(&self, i: usize, j: usize) -> bool {
        self.block_of(i) == self.block_of(j)
    }

    /// All `(i, j)` in the diagonal blocks, `I(𝐧)`.
    pub fn block_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n();
        (1..=n).flat_map(move |i| (1..=n).map(move |j| (i, j))).filter(|&(i, j)| self.same_block(i, j))
    }

    /// Block ranges as 1-based inclusive bounds.
    pub fn blocks(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut start = 1;
        for &p in &self.parts {
            out.push((start, start + p - 1));
            start += p;
        }
        out
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| Error::InvalidInput(format!("bad partition {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// Every `ν ∈ 𝒩(𝐚, 𝐛)`, row-major lexicographic.
pub fn enumerate_n(bd: &Bidegree) -> Vec<MultiIndex> {
    enumerate_with(bd, |_, _| true)
}

/// `𝒩₀^𝐧(𝐚, 𝐛)`: margins `(𝐚, 𝐛)` and zero on `I(𝐧)`.
pub fn enumerate_n0(bd: &Bidegree, partition: &Partition) -> Vec<MultiIndex> {
    assert_eq!(bd.n(), partition.n(), "bidegree and partition sizes differ");
    enumerate_with(bd, |i, j| !partition.same_block(i, j))
}

/// `𝒩₀(𝐚, 𝐛)`: zero diagonal.
pub fn enumerate_n0_trivial(bd: &Bidegree) -> Vec<MultiIndex> {
    enumerate_with(bd, |i, j| i != j)
}

fn enumerate_with(bd: &Bidegree, allowed: impl Fn(usize, usize) -> bool) -> Vec<MultiIndex> {
    let n = bd.n();
    if bd.a.iter().sum::<u32>() != bd.b.iter().sum::<u32>() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = MultiIndex::zero(n);
    let mut col_left = bd.b.clone();
    fill(0, n, bd, &allowed, &mut cur, &mut col_left, &mut out);
    out
}

// Row-major, ascending values: the output comes out lexicographically sorted.
fn fill(
    k: usize,
    n: usize,
    bd: &Bidegree,
    allowed: &impl Fn(usize, usize) -> bool,
    cur: &mut MultiIndex,
    col_left: &mut [u32],
    out: &mut Vec<MultiIndex>,
) {
    if k == n * n {
        if col_left.iter().all(|&c| c == 0) {
            out.push(cur.clone());
        }
        return;
    }
    let (i, j) = (k / n + 1, k % n + 1);
    let row_used: u32 = (1..j).map(|c| cur.get(i, c)).sum();
    let row_left = bd.a[i - 1] - row_used;
    // the last column absorbs whatever is left of the row
    let (lo, hi) = if j == n { (row_left, row_left) } else { (0, row_left) };
    let hi = if allowed(i, j) { hi.min(col_left[j - 1]) } else { 0 };
    for v in lo..=hi {
        cur.set(i, j, v);
        col_left[j - 1] -= v;
        fill(k + 1, n, bd, allowed, cur, col_left, out);
        col_left[j - 1] += v;
    }
    cur.set(i, j, 0);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bd(a: &[u32], b: &[u32]) -> Bidegree {
        Bidegree::new(a.to_vec(), b.to_vec())
    }

    /// Brute force over all matrices with entries ≤ max degree.
    fn brute(b: &Bidegree, allowed: impl Fn(usize, usize) -> bool) -> Vec<MultiIndex> {
        let n = b.n();
        let d: u32 = b.a.iter().sum();
        let mut out = Vec::new();
        let total = (d as usize + 1).pow((n * n) as u32);
        for code in 0..total {
            let mut c = code;
            let entries: Vec<u32> = (0..n * n)
                .map(|_| {
                    let v = (c % (d as usize + 1)) as u32;
                    c /= d as usize + 1;
                    v
                })
                .collect();
            let m = MultiIndex::from_flat(n, entries).unwrap();
            let ok = (1..=n).all(|i| (1..=n).all(|j| allowed(i, j) || m.get(i, j) == 0));
            if ok && m.row_sums() == b.a && m.col_sums() == b.b {
                out.push(m);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn n2_examples() {
        let p = Partition::trivial(2);
        assert_eq!(enumerate_n0(&bd(&[1, 1], &[1, 1]), &p), vec![MultiIndex::from_rows(&[vec![0, 1], vec![1, 0]])]);
        assert!(enumerate_n0(&bd(&[1, 0], &[1, 0]), &p).is_empty());
        let single = Partition::new(vec![2]).unwrap();
        assert!(enumerate_n0(&bd(&[1, 1], &[1, 1]), &single).is_empty());
    }

    #[test]
    fn matches_brute_force() {
        let cases = [bd(&[2, 1, 1], &[1, 2, 1]), bd(&[2, 2, 0], &[1, 1, 2]), bd(&[1, 1, 1], &[1, 1, 1])];
        for b in &cases {
            assert_eq!(enumerate_n(b), brute(b, |_, _| true));
            assert_eq!(enumerate_n0_trivial(b), brute(b, |i, j| i != j));
            let p = Partition::new(vec![2, 1]).unwrap();
            assert_eq!(enumerate_n0(b, &p), brute(b, |i, j| !p.same_block(i, j)));
        }
    }

    #[test]
    fn partition_blocks() {
        let p: Partition = "2,1".parse().unwrap();
        assert_eq!(p.blocks(), vec![(1, 2), (3, 3)]);
        assert_eq!(p.block_pairs().count(), 5);
        assert!("1,2".parse::<Partition>().is_err());
    }

    #[test]
    fn monomial_round_trip() {
        let m = MultiIndex::from_rows(&[vec![0, 2, 1], vec![1, 0, 0], vec![0, 3, 0]]);
        assert_eq!(MultiIndex::from_monomial(&m.t_monomial(), Family::T, 3).unwrap(), m);
        assert_eq!(m.transposed().get(2, 1), 2);
        assert_eq!(m.degree(), 7);
    }
}
