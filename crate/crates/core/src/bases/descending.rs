use std::collections::{BTreeMap, HashMap};

use super::{check_not_below_n, coordinates, enumerate_n0, enumerate_n0_trivial, monomial_basis, MultiIndex, Partition};
use crate::error::{Error, Result};
use crate::field::KappaRational;
use crate::genfun::{self, Seed};
use crate::linalg;
use crate::poly::{Ambient, Bidegree, Poly};
use crate::weyl::Weyl;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DescendingMethod {
    LinearSolve,
    GeneratingFunction,
}

impl std::str::FromStr for DescendingMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear_solve" | "linear-solve" => Ok(DescendingMethod::LinearSolve),
            "generating_function" | "generating-function" => Ok(DescendingMethod::GeneratingFunction),
            _ => Err(Error::InvalidInput(format!("unknown method {s:?}"))),
        }
    }
}

/// Per-bidegree data: the trivial-partition monomial basis.
struct Block {
    pm: Vec<Poly>,
}

/// Builds `P^D_ν` from the conditions `D_ij P = P^D_{ν−e_ij}` (i ≠ j), solved
/// for the `𝒩₀`-coordinates of `P`. Results and per-bidegree data are cached.
pub struct DescendingSolver<'w> {
    w: &'w Weyl,
    blocks: HashMap<Bidegree, Block>,
    cache: HashMap<MultiIndex, Poly>,
}

impl<'w> DescendingSolver<'w> {
    pub fn new(w: &'w Weyl) -> Result<Self> {
        check_not_below_n(w.mode(), w.n())?;
        Ok(DescendingSolver { w, blocks: HashMap::new(), cache: HashMap::new() })
    }

    fn block(&mut self, bd: &Bidegree) -> Result<&Block> {
        if !self.blocks.contains_key(bd) {
            let m = monomial_basis(self.w, bd, &Partition::trivial(self.w.n()))?;
            let pm = m.into_values().collect();
            self.blocks.insert(bd.clone(), Block { pm });
        }
        Ok(&self.blocks[bd])
    }

    pub fn get(&mut self, nu: &MultiIndex) -> Result<Poly> {
        if let Some(p) = self.cache.get(nu) {
            return Ok(p.clone());
        }
        let n = self.w.n();
        let amb = Ambient::new(n);
        if nu.degree() == 0 {
            return Ok(Poly::one(amb));
        }
        if nu.diagonal_degree() > 0 {
            return Err(Error::InvalidInput(format!("{nu} has a nonzero diagonal entry")));
        }
        let bd = nu.bidegree();
        let mut rows: Vec<Vec<KappaRational>> = Vec::new();
        let mut rhs: Vec<KappaRational> = Vec::new();
        for i in 1..=n {
            for j in (1..=n).filter(|&j| j != i) {
                if bd.a[i - 1] == 0 || bd.b[j - 1] == 0 {
                    continue;
                }
                let mut lower = bd.clone();
                lower.a[i - 1] -= 1;
                lower.b[j - 1] -= 1;
                let target_idx = enumerate_n0_trivial(&lower);
                if target_idx.is_empty() {
                    continue;
                }
                let target = match nu.minus_unit(i, j) {
                    Some(m) => coordinates(&self.get(&m)?, &target_idx),
                    None => vec![KappaRational::zero(); target_idx.len()],
                };
                let w = self.w;
                let block = self.block(&bd)?;
                let images: Vec<Vec<KappaRational>> =
                    block.pm.iter().map(|p| coordinates(&w.apply_d(i, j, p), &target_idx)).collect();
                for (r, t) in target.into_iter().enumerate() {
                    rows.push(images.iter().map(|col| col[r].clone()).collect());
                    rhs.push(t);
                }
            }
        }
        let x = linalg::solve(&rows, &rhs)?;
        let block = self.block(&bd)?;
        let mut p = Poly::zero(amb);
        for (c, q) in x.iter().zip(&block.pm) {
            p.add_scaled(q, c);
        }
        self.cache.insert(nu.clone(), p.clone());
        Ok(p)
    }
}

/// Descending basis of `𝒫^𝐧_{𝐚,𝐛}(κ)`, keyed by `ν ∈ 𝒩₀^𝐧(𝐚, 𝐛)`.
pub fn descending_basis(
    w: &Weyl,
    bd: &Bidegree,
    partition: &Partition,
    method: DescendingMethod,
) -> Result<BTreeMap<MultiIndex, Poly>> {
    check_not_below_n(w.mode(), w.n())?;
    let idx = enumerate_n0(bd, partition);
    match method {
        DescendingMethod::LinearSolve => {
            let mut s = DescendingSolver::new(w)?;
            idx.into_iter().map(|nu| s.get(&nu).map(|p| (nu, p))).collect()
        }
        DescendingMethod::GeneratingFunction => {
            let d = bd.degree();
            let extracted = genfun::descending_from_genfun(w.n(), partition, Seed::A, d, w.mode())?;
            Ok(idx.into_iter().map(|nu| {
                let p = extracted.get(&nu).cloned().unwrap_or_else(|| Poly::zero(Ambient::new(w.n())));
                (nu, p)
            }).collect())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::asc_poch;
    use crate::poly::t;

    #[test]
    fn degree_one_and_zero() {
        let w = Weyl::symbolic(3);
        let mut s = DescendingSolver::new(&w).unwrap();
        assert_eq!(s.get(&MultiIndex::zero(3)).unwrap(), Poly::one(Ambient::new(3)));
        assert_eq!(s.get(&MultiIndex::unit(3, 1, 2)).unwrap(), t(3, 1, 2).scale(&KappaRational::kappa().inv().unwrap()));
    }

    #[test]
    fn powers_of_a_single_entry() {
        // P^D_{d e12} = t12^d / (d! (κ)^{(d)})
        let w = Weyl::symbolic(2);
        let mut s = DescendingSolver::new(&w).unwrap();
        for d in 1..=3u32 {
            let mut nu = MultiIndex::zero(2);
            nu.set(1, 2, d);
            let c = KappaRational::from_bigint(crate::field::factorial(d)) * asc_poch(&KappaRational::kappa(), d);
            assert_eq!(s.get(&nu).unwrap(), t(2, 1, 2).pow(d).scale(&c.inv().unwrap()));
        }
    }

    #[test]
    fn descending_property_small() {
        let w = Weyl::symbolic(3);
        let mut s = DescendingSolver::new(&w).unwrap();
        let bd = Bidegree::new(vec![1, 1, 1], vec![1, 1, 1]);
        for nu in enumerate_n0_trivial(&bd) {
            let p = s.get(&nu).unwrap();
            for i in 1..=3 {
                for j in (1..=3).filter(|&j| j != i) {
                    let want = match nu.minus_unit(i, j) {
                        Some(m) => s.get(&m).unwrap(),
                        None => Poly::zero(Ambient::new(3)),
                    };
                    assert_eq!(w.apply_d(i, j, &p), want);
                }
                assert!(w.apply_d(i, i, &p).is_zero());
            }
        }
    }
}
