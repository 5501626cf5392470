//! Generating functions for the descending basis: the σ-substitution, the
//! `ℒ_p`/`ℳ_n`/`𝕁_ν` pipeline and the symmetric-power generator.

pub mod epsilon;
mod series;

use std::collections::{BTreeMap, HashMap};

pub use epsilon::{eps, eps_minus, eps_plus};
pub use series::{
    apply_j, apply_lp, apply_lp_poly, apply_lp_restricted, apply_lp_restricted_with, apply_lp_with, apply_mn, apply_mn_poly, binomial_series, build_g,
    g2_closed_form, g3_coefficient, Seed, TruncatedSeries,
};

use crate::bases::{check_not_below_n, MultiIndex, Partition};
use crate::error::Result;
use crate::field::{KappaMode, KappaRational};
use crate::poly::{Ambient, Family, Monomial, Poly, VarId};

/// Permutations of `0..k` with their signs.
fn permutations(k: usize) -> Vec<(Vec<usize>, i64)> {
    if k == 0 {
        return vec![(Vec::new(), 1)];
    }
    let mut out = Vec::new();
    for (p, sign) in permutations(k - 1) {
        // insert k-1 at position pos; each step to the left is one transposition
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            let flips = (p.len() - pos) as i64;
            out.push((q, if flips % 2 == 0 { sign } else { -sign }));
        }
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Entries of `M = X ᵗT`, `M_ab = Σ_c x_ac t_bc`. With a partition, the
/// entries `x_ij` inside its diagonal blocks are zero.
fn x_tt(n: usize, zero_blocks: Option<&Partition>) -> Vec<Vec<Poly>> {
    let amb = Ambient::new(n);
    (1..=n)
        .map(|a| {
            (1..=n)
                .map(|b| {
                    let mut p = Poly::zero(amb);
                    for c in 1..=n {
                        if zero_blocks.is_some_and(|pt| pt.same_block(a, c)) {
                            continue;
                        }
                        p.add_term(Monomial::from_pairs([(VarId::x(a, c), 1), (VarId::t(b, c), 1)]), KappaRational::one());
                    }
                    p
                })
                .collect()
        })
        .collect()
}

/// `σ_i(X ᵗT)`: the sum of the `i × i` principal minors of `X ᵗT`.
pub fn sigma(n: usize, i: usize, zero_blocks: Option<&Partition>) -> Poly {
    let m = x_tt(n, zero_blocks);
    sigma_from(&m, n, i)
}

fn sigma_from(m: &[Vec<Poly>], n: usize, i: usize) -> Poly {
    let amb = Ambient::new(n);
    let mut out = Poly::zero(amb);
    let perms = permutations(i);
    for s in subsets(n, i) {
        for (p, sign) in &perms {
            let mut term = Poly::one(amb);
            for (r, &c) in p.iter().enumerate() {
                term = &term * &m[s[r]][s[c]];
                if term.is_zero() {
                    break;
                }
            }
            out.add_scaled(&term, &KappaRational::from_int(*sign));
        }
    }
    out
}

/// Substitutes `s_a ↦ σ_a(X ᵗT)` (`s_a ↦ 0` for `a > n`) and reads off
/// `P_ν(T)`, the coefficient of `X^ν`, for `ν ∈ 𝒩₀^𝐧` with `|ν| ≤ max_degree`.
/// The result is unnormalized.
pub fn substitute_and_extract(
    g: &TruncatedSeries,
    n: usize,
    partition: &Partition,
    max_degree: u32,
) -> BTreeMap<MultiIndex, Poly> {
    let amb = Ambient::new(n);
    let m = x_tt(n, Some(partition));
    let mut assignment: HashMap<VarId, Poly> = HashMap::new();
    for a in 1..=max_degree as usize {
        let img = if a <= n { sigma_from(&m, n, a) } else { Poly::zero(amb) };
        assignment.insert(VarId::s(a), img);
    }
    let g = g.truncated(max_degree);
    let sub = g.poly().substitute_filtered(&assignment, amb, |mon| mon.family_degree(Family::X) <= max_degree);
    sub.collect_by_family(Family::X)
        .into_iter()
        .filter_map(|(xm, p)| MultiIndex::from_monomial(&xm, Family::X, n).map(|nu| (nu, p)))
        .filter(|(nu, p)| !p.is_zero() && nu.vanishes_on(partition))
        .collect()
}

/// Descending basis elements `P^D_ν = P_ν / c_{|ν|}` for all `ν ∈ 𝒩₀^𝐧`
/// with `|ν| ≤ max_degree`, extracted from `G^{(n)}` built on `seed`.
pub fn descending_from_genfun(
    n: usize,
    partition: &Partition,
    seed: Seed,
    max_degree: u32,
    mode: &KappaMode,
) -> Result<BTreeMap<MultiIndex, Poly>> {
    check_not_below_n(mode, n)?;
    let kappa = mode.kappa();
    let amb = Ambient::new(n);
    let g1 = seed.series(&kappa, amb, max_degree);
    let g = build_g(&kappa, n, &g1)?;
    let raw = substitute_and_extract(&g, n, partition, max_degree);
    let mut norms: HashMap<u32, KappaRational> = HashMap::new();
    let mut out = BTreeMap::new();
    for (nu, p) in raw {
        let d = nu.degree();
        let c = match norms.get(&d) {
            Some(c) => c.clone(),
            None => {
                let c = seed.normalization(&kappa, d).inv()?;
                norms.insert(d, c.clone());
                c
            }
        };
        out.insert(nu, p.scale(&c));
    }
    Ok(out)
}

/// `G^{(n_1,n_2)} = f^{−(κ−3/2)}` with
/// `f = 1 − τ₁₂ − τ₂₁ + ¼(τ₁₂−τ₂₁)² + τ₁₁τ₂₂`, truncated at total degree
/// `max_degree` in the U/V families.
pub fn build_symmetric_g(kappa: &KappaRational, n1: usize, n2: usize, max_degree: u32) -> Result<Poly> {
    let n = n1 + n2;
    let amb = Ambient::new(n);
    let bilinear = |fa: Family, fb: Family, rows: &[usize], cols: &[usize]| {
        let mut p = Poly::zero(amb);
        for (ai, &i) in rows.iter().enumerate() {
            for (bj, &j) in cols.iter().enumerate() {
                let m = Monomial::from_pairs([
                    (VarId::t(i, j), 1),
                    (VarId::vec(fa, ai + 1), 1),
                    (VarId::vec(fb, bj + 1), 1),
                ]);
                p.add_term(m, KappaRational::one());
            }
        }
        p
    };
    let first: Vec<usize> = (1..=n1).collect();
    let second: Vec<usize> = (n1 + 1..=n).collect();
    // τ11 = Σ t_ij u1_i u2_j, τ22 = Σ t_{n1+i,n1+j} v1_i v2_j,
    // τ12 = Σ t_{i,n1+j} u1_i v2_j, τ21 = Σ t_{n1+j,i} v1_j u2_i
    let tau11 = bilinear(Family::U1, Family::U2, &first, &first);
    let tau22 = bilinear(Family::V1, Family::V2, &second, &second);
    let tau12 = bilinear(Family::U1, Family::V2, &first, &second);
    let tau21 = bilinear(Family::V1, Family::U2, &second, &first);
    let diff = &tau12 - &tau21;
    let quarter = KappaRational::from_ratio(1, 4);
    let mut h = &(&diff * &diff).scale(&quarter) + &(&tau11 * &tau22);
    h = &(&h - &tau12) - &tau21;
    let uv_degree = |m: &Monomial| {
        [Family::U1, Family::U2, Family::V1, Family::V2].iter().map(|&f| m.family_degree(f)).sum::<u32>()
    };
    let keep = |m: &Monomial| uv_degree(m) <= max_degree;
    let h = h.filtered(keep);
    let alpha = kappa - &KappaRational::from_ratio(3, 2);
    binomial_series(&alpha, &h, keep, max_degree / 2)
}

/// Outcome of comparing `[ℒ_p, ℒ_q]` with `Σ_{a+b=p+q} ε⁻_{p,q}(b) ∂_a ℒ_b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutationReport {
    pub monomials: usize,
    /// `[ℒ_p,ℒ_q] = −R` on every monomial.
    pub as_printed: bool,
    /// `[ℒ_p,ℒ_q] = 2R` on every monomial.
    pub corrected: bool,
}

/// All monomials in `s_1, s_2, …` of weight at most `w`.
pub fn s_monomials(w: u32) -> Vec<Monomial> {
    fn go(a: usize, rem: u32, cur: &mut Vec<(VarId, u32)>, out: &mut Vec<Monomial>) {
        if a == 0 {
            out.push(Monomial::from_pairs(cur.iter().copied()));
            return;
        }
        for e in 0..=rem / a as u32 {
            cur.push((VarId::s(a), e));
            go(a - 1, rem - e * a as u32, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(w as usize, w, &mut Vec::new(), &mut out);
    out.sort();
    out
}

pub fn commutation_rhs(kappa: &KappaRational, p: usize, q: usize, f: &Poly) -> Poly {
    commutation_rhs_with(kappa, p, q, f, eps_plus)
}

fn commutation_rhs_with(kappa: &KappaRational, p: usize, q: usize, f: &Poly, ep: impl Fn(i64, i64, i64) -> i64 + Copy) -> Poly {
    let mut r = Poly::zero(f.ambient());
    for b in 1..p + q {
        let a = p + q - b;
        let sign = eps_minus(p as i64, q as i64, b as i64);
        if sign != 0 {
            r.add_scaled(&apply_lp_with(kappa, b, f, ep).partial(VarId::s(a)), &KappaRational::from_int(sign));
        }
    }
    r
}

pub fn check_commutation(kappa: &KappaRational, p: usize, q: usize, max_weight: u32) -> CommutationReport {
    check_commutation_with(kappa, p, q, max_weight, eps_plus)
}

/// [`check_commutation`] with `ℒ_p` built from the sign table `ep` in place of `ε⁺`.
pub fn check_commutation_with(
    kappa: &KappaRational,
    p: usize,
    q: usize,
    max_weight: u32,
    ep: impl Fn(i64, i64, i64) -> i64 + Copy,
) -> CommutationReport {
    let lp = |k: usize, f: &Poly| apply_lp_with(kappa, k, f, ep);
    let amb = Ambient::new(max_weight.max(1) as usize);
    let mons = s_monomials(max_weight);
    let mut as_printed = true;
    let mut corrected = true;
    for m in &mons {
        let f = Poly::term(amb, m.clone(), KappaRational::one());
        let lhs = &lp(p, &lp(q, &f)) - &lp(q, &lp(p, &f));
        let r = commutation_rhs_with(kappa, p, q, &f, ep);
        as_printed &= (&lhs + &r).is_zero();
        corrected &= lhs == r.scale(&KappaRational::from_int(2));
    }
    CommutationReport { monomials: mons.len(), as_printed, corrected }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::asc_poch;
    use crate::poly::t;

    fn k() -> KappaRational {
        KappaRational::kappa()
    }

    fn x(i: usize, j: usize) -> Poly {
        Poly::var(Ambient::new(3), VarId::x(i, j))
    }

    #[test]
    fn permutation_signs() {
        let perms = permutations(3);
        assert_eq!(perms.len(), 6);
        assert_eq!(perms.iter().map(|(_, s)| s).sum::<i64>(), 0);
        assert!(perms.contains(&(vec![0, 1, 2], 1)));
        assert!(perms.contains(&(vec![1, 0, 2], -1)));
        assert!(perms.contains(&(vec![1, 2, 0], 1)));
    }

    #[test]
    fn sigma_n3_table() {
        let pt = Partition::trivial(3);
        assert_eq!(sigma(3, 0, Some(&pt)), Poly::one(Ambient::new(3)));
        let mut s1 = Poly::zero(Ambient::new(3));
        for i in 1..=3 {
            for j in (1..=3).filter(|&j| j != i) {
                s1 = &s1 + &(&t(3, i, j) * &x(i, j));
            }
        }
        assert_eq!(sigma(3, 1, Some(&pt)), s1);
        let det_t = &(&(&(&t(3, 3, 3) * &t(3, 2, 2)) - &(&t(3, 3, 2) * &t(3, 2, 3))) * &t(3, 1, 1))
            + &(&(&(&(&t(3, 3, 1) * &t(3, 2, 3)) - &(&t(3, 3, 3) * &t(3, 2, 1))) * &t(3, 1, 2))
                + &(&(&(&t(3, 3, 2) * &t(3, 2, 1)) - &(&t(3, 3, 1) * &t(3, 2, 2))) * &t(3, 1, 3)));
        let det_x = &(&(&x(3, 1) * &x(2, 3)) * &x(1, 2)) + &(&(&x(3, 2) * &x(2, 1)) * &x(1, 3));
        assert_eq!(sigma(3, 3, Some(&pt)), &det_t * &det_x);
    }

    #[test]
    fn degree_one_extraction() {
        let pt = Partition::trivial(3);
        let g = build_g(&k(), 3, &Seed::A.series(&k(), Ambient::new(3), 2)).unwrap();
        let ex = substitute_and_extract(&g, 3, &pt, 2);
        assert_eq!(ex[&MultiIndex::zero(3)], Poly::one(Ambient::new(3)));
        assert_eq!(ex[&MultiIndex::unit(3, 1, 2)], t(3, 1, 2).scale(&KappaRational::kappa_plus(-1)));
    }

    #[test]
    fn genfun_descending_degree_one() {
        let d = descending_from_genfun(3, &Partition::trivial(3), Seed::A, 1, &KappaMode::Symbolic).unwrap();
        assert_eq!(d[&MultiIndex::unit(3, 2, 3)], t(3, 2, 3).scale(&k().inv().unwrap()));
        let d = descending_from_genfun(3, &Partition::trivial(3), Seed::B, 2, &KappaMode::Symbolic).unwrap();
        let mut nu = MultiIndex::zero(3);
        nu.set(1, 3, 2);
        let c = &asc_poch(&k(), 2) * &KappaRational::from_int(2);
        assert_eq!(d[&nu], t(3, 1, 3).pow(2).scale(&c.inv().unwrap()));
    }

    #[test]
    fn symmetric_g_low_degree() {
        let g = build_symmetric_g(&k(), 1, 1, 2).unwrap();
        assert_eq!(g.constant_term(), KappaRational::one());
        // degree-2 part is (κ−3/2)(τ12 + τ21)
        let alpha = &k() - &KappaRational::from_ratio(3, 2);
        let m = Monomial::from_pairs([(VarId::t(1, 2), 1), (VarId::vec(Family::U1, 1), 1), (VarId::vec(Family::V2, 1), 1)]);
        assert_eq!(g.coeff(&m), alpha);
        assert_eq!(g.len(), 3);
    }

    #[test]
    fn commutation_small() {
        let r = check_commutation(&k(), 2, 2, 4);
        assert!(r.as_printed && r.corrected);
        let r = check_commutation(&k(), 1, 2, 5);
        assert!(r.corrected);
    }

    #[test]
    fn s_monomial_count() {
        // partitions of 0..=4: 1+1+2+3+5
        assert_eq!(s_monomials(4).len(), 12);
    }
}
