use std::collections::HashMap;

use super::{phi_inverse, WeightPair};
use crate::error::{Error, Result};
use crate::field::KappaRational;
use crate::genfun::Seed;
use crate::poly::{Ambient, Family, Monomial, Poly, VarId};
use crate::weyl::Weyl;

fn det(rows: &[Vec<Poly>], amb: Ambient) -> Poly {
    // Laplace expansion along the first row; sizes here are tiny
    match rows.len() {
        0 => Poly::one(amb),
        1 => rows[0][0].clone(),
        n => {
            let mut out = Poly::zero(amb);
            for c in 0..n {
                let minor: Vec<Vec<Poly>> = rows[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(k, _)| k != c).map(|(_, p)| p.clone()).collect())
                    .collect();
                let sign = KappaRational::from_int(if c % 2 == 0 { 1 } else { -1 });
                out.add_scaled(&(&rows[0][c] * &det(&minor, amb)), &sign);
            }
            out
        }
    }
}

/// `ξ_𝐤 = ξ_1^{k_1−k_2} ξ_2^{k_2−k_3} ⋯` where `ξ_i` is the leading `i × i`
/// minor of the block `entry(r, c)`, `1 ≤ r, c ≤ m`.
pub fn bideterminant(weight: &[u32], amb: Ambient, entry: impl Fn(usize, usize) -> VarId) -> Poly {
    let mut out = Poly::one(amb);
    for (i, &k) in weight.iter().enumerate() {
        let next = weight.get(i + 1).copied().unwrap_or(0);
        let size = i + 1;
        let rows: Vec<Vec<Poly>> =
            (1..=size).map(|r| (1..=size).map(|c| Poly::var(amb, entry(r, c))).collect()).collect();
        out = &out * &det(&rows, amb).pow(k - next);
    }
    out
}

/// `P(T) = P_0(𝕌₁ T ᵗ𝕌₂)` where `φ_κ(P_0) = (S₁₂)_𝐤 (S₂₁)_𝐥` on `2m × 2m`
/// matrices and `𝕌_i = diag(U_i, V_i)`. `U_i` is `m × n₁` (families U1, U2),
/// `V_i` is `m × n₂` (V1, V2).
pub fn build_diff2_operator(kappa: &KappaRational, n1: usize, n2: usize, w: &WeightPair) -> Result<Poly> {
    if w.len_k() > n2 || w.len_l() > n2 {
        return Err(Error::InvalidInput(format!("weight lengths must be at most n2 = {n2}")));
    }
    let m = w.len_k().max(w.len_l()).max(1);
    let small = Ambient::new(2 * m);
    let q0 = &bideterminant(w.k_parts(), small, |r, c| VarId::t(r, m + c))
        * &bideterminant(w.l_parts(), small, |r, c| VarId::t(m + r, c));
    let p0 = phi_inverse(kappa, &q0, Seed::A)?;
    let n = n1 + n2;
    let amb = Ambient::new(n);
    // (𝕌_i)_{a,c}
    let big_u = |fu: Family, fv: Family, a: usize, c: usize| -> Option<VarId> {
        match (a <= m, c <= n1) {
            (true, true) => Some(VarId::new(fu, a as u16, c as u16)),
            (false, false) => Some(VarId::new(fv, (a - m) as u16, (c - n1) as u16)),
            _ => None,
        }
    };
    let mut assignment: HashMap<VarId, Poly> = HashMap::new();
    for a in 1..=2 * m {
        for b in 1..=2 * m {
            let mut img = Poly::zero(amb);
            for c in 1..=n {
                let Some(u1) = big_u(Family::U1, Family::V1, a, c) else { continue };
                for e in 1..=n {
                    let Some(u2) = big_u(Family::U2, Family::V2, b, e) else { continue };
                    img.add_term(Monomial::from_pairs([(u1, 1), (VarId::t(c, e), 1), (u2, 1)]), KappaRational::one());
                }
            }
            assignment.insert(VarId::t(a, b), img);
        }
    }
    Ok(p0.substitute(&assignment, amb))
}

/// `D_ij p = 0` whenever `i, j` lie in the same block of `(n₁, n₂)`.
pub fn is_block_pluriharmonic(w: &Weyl, p: &Poly, n1: usize) -> bool {
    let n = w.n();
    let same = |i: usize, j: usize| (i <= n1) == (j <= n1);
    (1..=n).all(|i| (1..=n).filter(|&j| same(i, j)).all(|j| w.apply_d(i, j, p).is_zero()))
}
