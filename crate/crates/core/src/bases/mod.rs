//! Index sets, the projection Π, the monomial and descending bases of the
//! pluriharmonic spaces, seed reconstruction and Gram matrices.

mod descending;
mod index;

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

pub use descending::{descending_basis, DescendingMethod, DescendingSolver};
pub use index::{enumerate_n, enumerate_n0, enumerate_n0_trivial, MultiIndex, Partition};

use crate::error::{Error, Result};
use crate::field::{desc_poch, factorial, KappaMode, KappaRational};
use crate::linalg;
use crate::poly::{Ambient, Bidegree, Monomial, Poly, VarId};
use crate::weyl::Weyl;

/// `Ξ = ℤ ∩ ⋃_i [2 − (a_i + b_i), 1 − max(a_i, b_i)]`
pub fn in_xi(bd: &Bidegree, kappa: i64) -> bool {
    bd.a.iter().zip(&bd.b).any(|(&a, &b)| {
        let lo = 2 - (a + b) as i64;
        let hi = 1 - a.max(b) as i64;
        (lo..=hi).contains(&kappa)
    })
}

/// Refuses a specialized κ in Ξ.
pub fn check_not_in_xi(mode: &KappaMode, bd: &Bidegree) -> Result<()> {
    if let Some(k) = mode.integer_value() {
        if in_xi(bd, k) {
            return Err(Error::PoleAtKappa(format!("kappa = {k} lies in the excluded set for bidegree {bd:?}")));
        }
    }
    Ok(())
}

/// Refuses a specialized κ in ℤ_{<n}.
pub fn check_not_below_n(mode: &KappaMode, n: usize) -> Result<()> {
    if let Some(k) = mode.integer_value() {
        if k < n as i64 {
            return Err(Error::PoleAtKappa(format!("kappa = {k} is an integer below n = {n}")));
        }
    }
    Ok(())
}

fn t_var(i: usize) -> VarId {
    VarId::t(i, i)
}

/// `Π = ∏_i Σ_{j ≤ min(a_i, b_i)} (−1)^j t_ii^j D_ii^j / (j! (a_i + b_i + κ − 2)_j)`, applied for
/// `i = n, …, 1`.
pub fn project_pi(w: &Weyl, p: &Poly, bd: &Bidegree) -> Result<Poly> {
    p.require_t()?;
    let mut cur = p.clone();
    for i in (1..=w.n()).rev() {
        let (a, b) = (bd.a[i - 1], bd.b[i - 1]);
        let shift = w.kappa() + &KappaRational::from_int((a + b) as i64 - 2);
        let mut acc = cur.clone();
        let mut dj = cur.clone();
        for j in 1..=a.min(b) {
            dj = w.apply_d(i, i, &dj);
            if dj.is_zero() {
                break;
            }
            let denom = &KappaRational::from_bigint(factorial(j)) * &desc_poch(&shift, j);
            let sign = KappaRational::from_int(if j % 2 == 0 { 1 } else { -1 });
            let c = sign.checked_div(&denom)?;
            acc.add_scaled(&dj.mul_monomial(&Monomial::var_pow(t_var(i), j), &KappaRational::one()), &c);
        }
        cur = acc;
    }
    Ok(cur)
}

/// The element of `𝒫_{𝐚,𝐛}(κ)` with the given coordinates on `𝒩₀(𝐚, 𝐛)`, built
/// from the `D_ii` recursion in increasing diagonal degree.
pub fn reconstruct_from_seed(w: &Weyl, seed: &BTreeMap<MultiIndex, KappaRational>, bd: &Bidegree) -> Result<Poly> {
    let n = w.n();
    check_not_in_xi(w.mode(), bd)?;
    let mut all = enumerate_n(bd);
    all.sort_by_key(MultiIndex::diagonal_degree);
    let mut coef: HashMap<MultiIndex, KappaRational> = HashMap::new();
    for nu in all {
        if nu.diagonal_degree() == 0 {
            if let Some(c) = seed.get(&nu) {
                coef.insert(nu, c.clone());
            }
            continue;
        }
        let i = (1..=n).find(|&i| nu.get(i, i) > 0).expect("diagonal entry");
        let mu = nu.minus_unit(i, i).expect("positive");
        // Σ_{k,l≠i} (μ_il + 1)(μ_ki + 1) c_{μ + e_il + e_ki − e_kl}
        let mut sum = KappaRational::zero();
        for k in (1..=n).filter(|&k| k != i) {
            for l in (1..=n).filter(|&l| l != i) {
                let Some(base) = mu.minus_unit(k, l) else { continue };
                let src = base.plus_unit(i, l).plus_unit(k, i);
                if let Some(c) = coef.get(&src) {
                    let f = ((mu.get(i, l) + 1) * (mu.get(k, i) + 1)) as i64;
                    sum = &sum + &(c * &KappaRational::from_int(f));
                }
            }
        }
        if sum.is_zero() {
            continue;
        }
        let ab = (bd.a[i - 1] + bd.b[i - 1]) as i64 - mu.get(i, i) as i64 - 2;
        let denom = &KappaRational::from_int(mu.get(i, i) as i64 + 1) * &(w.kappa() + &KappaRational::from_int(ab));
        coef.insert(nu, (-sum).checked_div(&denom)?);
    }
    Ok(Poly::from_terms(Ambient::new(n), coef.into_iter().map(|(nu, c)| (nu.t_monomial(), c))))
}

/// Coordinates of `p` on the index list (coefficients of `T^ν`).
pub fn coordinates(p: &Poly, idx: &[MultiIndex]) -> Vec<KappaRational> {
    idx.iter().map(|nu| p.coeff(&nu.t_monomial())).collect()
}

/// Monomial basis of `𝒫^𝐧_{𝐚,𝐛}(κ)`, keyed by `ν ∈ 𝒩₀^𝐧(𝐚, 𝐛)`.
pub fn monomial_basis(w: &Weyl, bd: &Bidegree, partition: &Partition) -> Result<BTreeMap<MultiIndex, Poly>> {
    check_not_in_xi(w.mode(), bd)?;
    let n0 = enumerate_n0_trivial(bd);
    let pm: Vec<Poly> = n0
        .par_iter()
        .map(|nu| project_pi(w, &Poly::term(Ambient::new(w.n()), nu.t_monomial(), KappaRational::one()), bd))
        .collect::<Result<_>>()?;
    if partition.is_trivial() {
        return Ok(n0.into_iter().zip(pm).collect());
    }
    check_not_below_n(w.mode(), w.n())?;
    let (inside, outside): (Vec<usize>, Vec<usize>) = (0..n0.len()).partition(|&k| n0[k].vanishes_on(partition));
    // Gram system on the complement 𝒩₀ ∖ 𝒩₀^𝐧
    let gram: Vec<Vec<KappaRational>> = outside
        .par_iter()
        .map(|&x| outside.iter().map(|&m| w.inner_product(&pm[x], &pm[m])).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let mut out = BTreeMap::new();
    for &v in &inside {
        let rhs: Vec<KappaRational> =
            outside.iter().map(|&x| w.inner_product(&pm[x], &pm[v]).map(|c| -c)).collect::<Result<_>>()?;
        let c = linalg::solve(&gram, &rhs).map_err(|e| match e {
            Error::SingularSystem(m) => Error::SingularGram(m),
            other => other,
        })?;
        let mut p = pm[v].clone();
        for (k, &m) in outside.iter().enumerate() {
            p.add_scaled(&pm[m], &c[k]);
        }
        out.insert(n0[v].clone(), p);
    }
    Ok(out)
}

/// `[(p_μ, q_ν)_κ]` over the two bases in key order.
pub fn gram_matrix(
    w: &Weyl,
    left: &BTreeMap<MultiIndex, Poly>,
    right: &BTreeMap<MultiIndex, Poly>,
) -> Result<Vec<Vec<KappaRational>>> {
    let l: Vec<&Poly> = left.values().collect();
    let r: Vec<&Poly> = right.values().collect();
    l.par_iter().map(|p| r.iter().map(|q| w.inner_product(p, q)).collect::<Result<Vec<_>>>()).collect()
}

/// `(P^M_μ, P^M_ν) = D^ν(P^M_μ)`: constant obtained by applying `∏ D_ij^{ν_ij}`.
pub fn gram_via_d(w: &Weyl, basis: &BTreeMap<MultiIndex, Poly>) -> Vec<Vec<KappaRational>> {
    basis
        .values()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|p| basis.keys().map(|nu| w.apply_d_monomial(&nu.t_monomial(), p).constant_term()).collect())
        .collect()
}

/// True when `D_ij p = 0` for every `(i, j)` in the diagonal blocks.
pub fn is_block_harmonic(w: &Weyl, p: &Poly, partition: &Partition) -> bool {
    partition.block_pairs().all(|(i, j)| w.apply_d(i, j, p).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::BigRational;
    use crate::poly::t;

    fn bd(a: &[u32], b: &[u32]) -> Bidegree {
        Bidegree::new(a.to_vec(), b.to_vec())
    }

    fn k() -> KappaRational {
        KappaRational::kappa()
    }

    #[test]
    fn xi_membership() {
        // a = b = (1,1): [0, 0]
        assert!(in_xi(&bd(&[1, 1], &[1, 1]), 0));
        assert!(!in_xi(&bd(&[1, 1], &[1, 1]), 1));
        assert!(in_xi(&bd(&[2, 2], &[2, 2]), -1));
    }

    #[test]
    fn project_examples() {
        let w = Weyl::symbolic(2);
        assert_eq!(project_pi(&w, &t(2, 1, 2), &bd(&[1, 0], &[0, 1])).unwrap(), t(2, 1, 2));
        let one = Poly::one(Ambient::new(2));
        assert_eq!(project_pi(&w, &one, &bd(&[0, 0], &[0, 0])).unwrap(), one);
        let got = project_pi(&w, &(&t(2, 1, 2) * &t(2, 2, 1)), &bd(&[1, 1], &[1, 1])).unwrap();
        let want = &(&t(2, 1, 2) * &t(2, 2, 1)) - &(&t(2, 1, 1) * &t(2, 2, 2)).scale(&k().inv().unwrap());
        assert_eq!(got, want);
    }

    #[test]
    fn reconstruct_examples() {
        let w = Weyl::symbolic(2);
        let nu = MultiIndex::from_rows(&[vec![0, 1], vec![1, 0]]);
        let seed = BTreeMap::from([(nu.clone(), KappaRational::one())]);
        let want = &(&t(2, 1, 2) * &t(2, 2, 1)) - &(&t(2, 1, 1) * &t(2, 2, 2)).scale(&k().inv().unwrap());
        assert_eq!(reconstruct_from_seed(&w, &seed, &nu.bidegree()).unwrap(), want);
        let e12 = MultiIndex::unit(2, 1, 2);
        let seed = BTreeMap::from([(e12.clone(), KappaRational::one())]);
        assert_eq!(reconstruct_from_seed(&w, &seed, &e12.bidegree()).unwrap(), t(2, 1, 2));
        assert!(reconstruct_from_seed(&w, &BTreeMap::new(), &e12.bidegree()).unwrap().is_zero());
    }

    #[test]
    fn projection_agrees_with_reconstruction_n3() {
        let w = Weyl::symbolic(3);
        let b = bd(&[2, 1, 1], &[1, 1, 2]);
        for nu in enumerate_n0_trivial(&b) {
            let p = project_pi(&w, &Poly::term(Ambient::new(3), nu.t_monomial(), KappaRational::one()), &b).unwrap();
            let seed = BTreeMap::from([(nu.clone(), KappaRational::one())]);
            assert_eq!(p, reconstruct_from_seed(&w, &seed, &b).unwrap(), "nu = {nu}");
            for i in 1..=3 {
                assert!(w.apply_d(i, i, &p).is_zero());
            }
        }
    }

    #[test]
    fn specialized_pole_is_refused() {
        let w = Weyl::new(2, &KappaMode::Specialized(BigRational::from_integer(0.into())));
        assert!(matches!(monomial_basis(&w, &bd(&[1, 1], &[1, 1]), &Partition::trivial(2)), Err(Error::PoleAtKappa(_))));
    }

    #[test]
    fn gram_examples() {
        let w = Weyl::symbolic(2);
        let one = BTreeMap::from([(MultiIndex::zero(2), Poly::one(Ambient::new(2)))]);
        assert_eq!(gram_matrix(&w, &one, &one).unwrap(), vec![vec![KappaRational::one()]]);
        let b = bd(&[1, 0], &[0, 1]);
        let m = monomial_basis(&w, &b, &Partition::trivial(2)).unwrap();
        assert_eq!(gram_matrix(&w, &m, &m).unwrap(), vec![vec![k()]]);
        assert_eq!(gram_via_d(&w, &m), vec![vec![k()]]);
    }

    #[test]
    fn partition_monomial_basis_is_block_harmonic() {
        let w = Weyl::symbolic(3);
        let p = Partition::new(vec![2, 1]).unwrap();
        let b = bd(&[1, 1, 2], &[2, 1, 1]);
        let basis = monomial_basis(&w, &b, &p).unwrap();
        assert_eq!(basis.len(), enumerate_n0(&b, &p).len());
        for (nu, q) in &basis {
            assert!(is_block_harmonic(&w, q, &p), "nu = {nu}");
            assert_eq!(q.coeff(&nu.t_monomial()), KappaRational::one());
        }
    }
}
