//! The correspondence `φ_κ` between polynomials in `T` and their images, its
//! inverse through the generating function, and the pullback constants.

mod constants;
mod diff2;

use std::collections::{BTreeSet, HashMap};

pub use constants::{
    c_mn, c_pullback, disk_integral_oracle, highest_weight_norm, OracleEstimate, PiSymbolic, PullbackConstant,
    WeightPair,
};
pub use diff2::{bideterminant, build_diff2_operator, is_block_pluriharmonic};

use crate::error::{Error, Result};
use crate::field::KappaRational;
use crate::genfun::{build_g, sigma, Seed};
use crate::poly::{Ambient, Family, Monomial, Poly, VarId};
use crate::weyl::Weyl;

fn homogeneous_t(p: &Poly) -> Result<u32> {
    p.require_t()?;
    if p.is_zero() {
        return Ok(0);
    }
    p.homogeneous_degree().ok_or_else(|| Error::NonHomogeneous(format!("{p}")))
}

/// `T^ν ↦ X^ν` style renaming of the T-part of a monomial.
fn rename_t(m: &Monomial, fam: Family) -> Monomial {
    m.map_vars(|v| if v.family == Family::T { VarId::new(fam, v.i, v.j) } else { v })
}

fn divides_some(targets: &BTreeSet<Monomial>, fam: Family) -> impl Fn(&Monomial) -> bool + '_ {
    move |m: &Monomial| {
        let (f, _) = m.split_family(fam);
        targets.iter().any(|t| f.divides(t))
    }
}

/// `det(I − W T)^{−κ} = exp(κ Σ_r tr((WT)^r)/r)`, keeping only terms whose
/// W-part divides one of `targets`.
fn det_power_series(kappa: &KappaRational, n: usize, targets: &BTreeSet<Monomial>) -> Poly {
    let amb = Ambient::new(n);
    let keep = divides_some(targets, Family::W);
    let d = targets.iter().map(|m| m.degree()).max().unwrap_or(0);
    let wt: Vec<Vec<Poly>> = (1..=n)
        .map(|a| {
            (1..=n)
                .map(|b| {
                    Poly::from_terms(
                        amb,
                        (1..=n).map(|c| (Monomial::from_pairs([(VarId::w(a, c), 1), (VarId::t(c, b), 1)]), KappaRational::one())),
                    )
                    .filtered(&keep)
                })
                .collect()
        })
        .collect();
    // log det(I − A)^{−1} = Σ_r tr(A^r)/r
    let mut log = Poly::zero(amb);
    let mut power = wt.clone();
    for r in 1..=d {
        if r > 1 {
            power = (0..n)
                .map(|a| {
                    (0..n)
                        .map(|b| {
                            let mut e = Poly::zero(amb);
                            for c in 0..n {
                                e.add_assign_ref(&power[a][c].mul_filtered(&wt[c][b], &keep));
                            }
                            e
                        })
                        .collect()
                })
                .collect();
        }
        let mut tr = Poly::zero(amb);
        for (a, row) in power.iter().enumerate() {
            tr.add_assign_ref(&row[a]);
        }
        log.add_scaled(&tr, &KappaRational::from_ratio(1, r as i64));
    }
    let log = log.scale(kappa);
    let mut out = Poly::one(amb);
    let mut term = Poly::one(amb);
    for k in 1..=d {
        term = term.mul_filtered(&log, &keep).scale(&KappaRational::from_ratio(1, k as i64));
        if term.is_zero() {
            break;
        }
        out.add_assign_ref(&term);
    }
    out
}

/// `φ_κ(P) = (−1)^d P(ᵗ∂_W) det(I − W ᵗT)^{−κ}|_{W=0}`, i.e. `t_ij` acts as
/// `∂/∂w_ji`; equivalently `φ_κ(T^ν) = (−1)^d ν! [W^ν] det(I − W T)^{−κ}`.
pub fn phi_kappa(kappa: &KappaRational, p: &Poly) -> Result<Poly> {
    let d = homogeneous_t(p)?;
    let amb = p.ambient();
    let targets: BTreeSet<Monomial> = p.terms().map(|(m, _)| rename_t(m, Family::W)).collect();
    let series = det_power_series(kappa, amb.n, &targets);
    let by_w = series.collect_by_family(Family::W);
    let sign = KappaRational::from_int(if d % 2 == 0 { 1 } else { -1 });
    let mut out = Poly::zero(amb);
    for (m, c) in p.terms() {
        let wm = rename_t(m, Family::W);
        if let Some(coef) = by_w.get(&wm) {
            let f = &(c * &KappaRational::from_bigint(m.factorial())) * &sign;
            out.add_scaled(coef, &f);
        }
    }
    Ok(out)
}

/// Inverse of [`phi_kappa`] through the full-X generating function:
/// `P(T) = ((−1)^d / c_d) Q(ᵗ∂_X) G̃(X, T)|_{X=0}`.
pub fn phi_inverse(kappa: &KappaRational, q: &Poly, seed: Seed) -> Result<Poly> {
    let d = homogeneous_t(q)?;
    let amb = q.ambient();
    let n = amb.n;
    if q.is_zero() {
        return Ok(q.clone());
    }
    // t_ij acts as ∂/∂x_ji
    let targets: BTreeSet<Monomial> =
        q.terms().map(|(m, _)| rename_t(m, Family::X).map_vars(VarId::transposed)).collect();
    let g = build_g(kappa, n, &seed.series(kappa, amb, d))?;
    let mut assignment: HashMap<VarId, Poly> = HashMap::new();
    for a in 1..=d as usize {
        let img = if a <= n { sigma(n, a, None) } else { Poly::zero(amb) };
        assignment.insert(VarId::s(a), img);
    }
    let gx = g.poly().substitute_filtered(&assignment, amb, divides_some(&targets, Family::X));
    let by_x = gx.collect_by_family(Family::X);
    let c_d = seed.normalization(kappa, d);
    let sign = KappaRational::from_int(if d % 2 == 0 { 1 } else { -1 });
    let scale = sign.checked_div(&c_d)?;
    let mut out = Poly::zero(amb);
    for (m, c) in q.terms() {
        let xm = rename_t(m, Family::X).map_vars(VarId::transposed);
        if let Some(coef) = by_x.get(&xm) {
            let f = &(c * &KappaRational::from_bigint(m.factorial())) * &scale;
            out.add_scaled(coef, &f);
        }
    }
    Ok(out)
}

/// `φ_κ(D_ij P) = −∂φ_κ(P)/∂t_ji`
pub fn check_phi_derivative_identity(w: &Weyl, p: &Poly, i: usize, j: usize) -> Result<bool> {
    let lhs = phi_kappa(w.kappa(), &w.apply_d(i, j, p))?;
    let rhs = phi_kappa(w.kappa(), p)?.partial(VarId::t(j, i)).scale(&KappaRational::from_int(-1));
    Ok(lhs == rhs)
}
