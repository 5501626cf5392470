//! Operators on ℂ[T]: the mixed Laplacians `D_ij`, the operators `E_ij`,
//! `E'_ij`, `F_ij`, the functional `𝐞_κ`, the inner product and the
//! compatibility of `D_ij` with the tilde map `P ↦ P(X ᵗY)`.

use std::collections::HashMap;
use std::sync::RwLock;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{BigRational, KappaMode, KappaRational};
use crate::poly::{Ambient, Family, Monomial, Poly, VarId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OpKind {
    D,
    E,
    Eprime,
    F,
}

impl std::str::FromStr for OpKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "D" => Ok(OpKind::D),
            "E" => Ok(OpKind::E),
            "Eprime" | "E'" => Ok(OpKind::Eprime),
            "F" => Ok(OpKind::F),
            _ => Err(Error::InvalidInput(format!("unknown operator kind {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OperatorSpec {
    pub kind: OpKind,
    pub i: usize,
    pub j: usize,
    pub n: usize,
}

impl OperatorSpec {
    pub fn new(kind: OpKind, i: usize, j: usize, n: usize) -> Result<Self> {
        if i == 0 || j == 0 || i > n || j > n {
            return Err(Error::InvalidInput(format!("operator indices ({i},{j}) outside 1..={n}")));
        }
        Ok(OperatorSpec { kind, i, j, n })
    }
}

/// Which variable of a monomial the 𝐞_κ rewrite peels off first.
#[derive(Clone, Copy, Debug)]
pub enum Strategy {
    Least,
    Greatest,
    Shuffled(u64),
}

/// Operator context for a fixed `n` and κ (symbolic or specialized).
/// Holds the 𝐞_κ memo table, so reuse one context across calls.
pub struct Weyl {
    n: usize,
    mode: KappaMode,
    kappa: KappaRational,
    half_kappa: KappaRational,
    memo: RwLock<HashMap<Monomial, KappaRational>>,
}

impl Weyl {
    pub fn new(n: usize, mode: &KappaMode) -> Self {
        let kappa = mode.kappa();
        let half_kappa = kappa.scale(&BigRational::new(1.into(), 2.into()));
        Weyl { n, mode: mode.clone(), kappa, half_kappa, memo: RwLock::new(HashMap::new()) }
    }

    pub fn symbolic(n: usize) -> Self {
        Self::new(n, &KappaMode::Symbolic)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kappa(&self) -> &KappaRational {
        &self.kappa
    }

    pub fn mode(&self) -> &KappaMode {
        &self.mode
    }

    fn ambient(&self) -> Ambient {
        Ambient::new(self.n)
    }

    /// `D_ij` on a single monomial, accumulated into `out` with factor `c`.
    fn d_monomial(&self, i: usize, j: usize, m: &Monomial, c: &KappaRational, out: &mut Poly) {
        let n = self.n;
        let tij = VarId::t(i, j);
        let e = m.exponent(tij);
        if e > 0 {
            let (_, rest) = m.lower(tij).expect("exponent positive");
            out.add_term(rest, &(c * &self.kappa) * &KappaRational::from_int(e as i64));
        }
        // Σ_{k,l} t_kl ∂_il ∂_kj
        for l in 1..=n {
            let Some((e1, m1)) = m.lower(VarId::t(i, l)) else { continue };
            for k in 1..=n {
                let Some((e2, m2)) = m1.lower(VarId::t(k, j)) else { continue };
                let mm = m2.mul(&Monomial::var(VarId::t(k, l)));
                out.add_term(mm, c * &KappaRational::from_int((e1 * e2) as i64));
            }
        }
    }

    pub fn apply_d(&self, i: usize, j: usize, p: &Poly) -> Poly {
        let mut out = Poly::zero(p.ambient());
        for (m, c) in p.terms() {
            self.d_monomial(i, j, m, c, &mut out);
        }
        out
    }

    /// `E_ij = Σ_s t_is ∂_js + (κ/2)δ_ij`
    pub fn apply_e(&self, i: usize, j: usize, p: &Poly) -> Poly {
        let mut out = Poly::zero(p.ambient());
        for s in 1..=self.n {
            out.add_assign_ref(&p.partial(VarId::t(j, s)).mul_monomial(&Monomial::var(VarId::t(i, s)), &KappaRational::one()));
        }
        if i == j {
            out.add_scaled(p, &self.half_kappa);
        }
        out
    }

    /// `E'_ij = Σ_s t_si ∂_sj + (κ/2)δ_ij`
    pub fn apply_eprime(&self, i: usize, j: usize, p: &Poly) -> Poly {
        let mut out = Poly::zero(p.ambient());
        for s in 1..=self.n {
            out.add_assign_ref(&p.partial(VarId::t(s, j)).mul_monomial(&Monomial::var(VarId::t(s, i)), &KappaRational::one()));
        }
        if i == j {
            out.add_scaled(p, &self.half_kappa);
        }
        out
    }

    /// `F_ij = t_ij`
    pub fn apply_f(&self, i: usize, j: usize, p: &Poly) -> Poly {
        p.mul_monomial(&Monomial::var(VarId::t(i, j)), &KappaRational::one())
    }

    pub fn apply(&self, op: OperatorSpec, p: &Poly) -> Poly {
        match op.kind {
            OpKind::D => self.apply_d(op.i, op.j, p),
            OpKind::E => self.apply_e(op.i, op.j, p),
            OpKind::Eprime => self.apply_eprime(op.i, op.j, p),
            OpKind::F => self.apply_f(op.i, op.j, p),
        }
    }

    /// `∏ D_ij^{ν_ij}` for a T-monomial `ν` (the D's commute).
    pub fn apply_d_monomial(&self, nu: &Monomial, p: &Poly) -> Poly {
        let mut acc = p.clone();
        for (v, e) in nu.iter() {
            for _ in 0..e {
                acc = self.apply_d(v.i as usize, v.j as usize, &acc);
            }
        }
        acc
    }

    /// `𝐞_κ(p) = (p, 1)_κ`, by the rewrite `𝐞(t_ij Q) = 𝐞((D_ji + κδ_ij) Q)`.
    pub fn e_kappa(&self, p: &Poly) -> KappaRational {
        let mut acc = KappaRational::zero();
        for (m, c) in p.terms() {
            let v = self.e_monomial(m);
            if !v.is_zero() {
                acc += &(c * &v);
            }
        }
        acc
    }

    fn e_monomial(&self, m: &Monomial) -> KappaRational {
        if m.is_one() {
            return KappaRational::one();
        }
        if !balanced(m, self.n) {
            return KappaRational::zero();
        }
        if let Some(v) = self.memo.read().expect("memo lock").get(m) {
            return v.clone();
        }
        let (v, _) = m.iter().next().expect("non-constant");
        let mut value = KappaRational::zero();
        for (mm, c) in self.rewrite_image(m, v).terms() {
            let e = self.e_monomial(mm);
            if !e.is_zero() {
                value += &(c * &e);
            }
        }
        self.memo.write().expect("memo lock").insert(m.clone(), value.clone());
        value
    }

    /// `(D_ji + κδ_ij) Q` where `m = t_ij Q` and `t_ij = v`.
    fn rewrite_image(&self, m: &Monomial, v: VarId) -> Poly {
        let (i, j) = (v.i as usize, v.j as usize);
        let (_, q) = m.lower(v).expect("variable present");
        let mut img = Poly::zero(self.ambient());
        self.d_monomial(j, i, &q, &KappaRational::one(), &mut img);
        if i == j {
            img.add_term(q, self.kappa.clone());
        }
        img
    }

    /// 𝐞_κ with an explicit choice of rewrite variable at every step; no shared memo.
    pub fn e_kappa_with(&self, p: &Poly, strategy: Strategy) -> KappaRational {
        let mut memo: HashMap<Monomial, KappaRational> = HashMap::new();
        let mut rng = match strategy {
            Strategy::Shuffled(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            _ => None,
        };
        let mut acc = KappaRational::zero();
        for (m, c) in p.terms() {
            acc += &(c * &self.e_strat(m, strategy, &mut rng, &mut memo));
        }
        acc
    }

    fn e_strat(
        &self,
        m: &Monomial,
        strategy: Strategy,
        rng: &mut Option<ChaCha8Rng>,
        memo: &mut HashMap<Monomial, KappaRational>,
    ) -> KappaRational {
        if m.is_one() {
            return KappaRational::one();
        }
        if let Some(v) = memo.get(m) {
            return v.clone();
        }
        let vars: Vec<VarId> = m.iter().map(|(v, _)| v).collect();
        let v = match strategy {
            Strategy::Least => vars[0],
            Strategy::Greatest => *vars.last().expect("non-constant"),
            Strategy::Shuffled(_) => *vars.choose(rng.as_mut().expect("rng")).expect("non-constant"),
        };
        let mut acc = KappaRational::zero();
        for (mm, c) in self.rewrite_image(m, v).terms() {
            let e = self.e_strat(mm, strategy, rng, memo);
            acc += &(c * &e);
        }
        memo.insert(m.clone(), acc.clone());
        acc
    }

    /// `(p, q)_κ = 𝐞_κ(p · θq)`; θ is T-index transposition since coefficients are real.
    pub fn inner_product(&self, p: &Poly, q: &Poly) -> Result<KappaRational> {
        p.require_t()?;
        q.require_t()?;
        Ok(self.e_kappa(&p.checked_mul(&q.transpose_t())?))
    }

    /// `Op*` applied to `q`, per the adjoint formulas.
    pub fn apply_adjoint(&self, op: OperatorSpec, q: &Poly) -> Poly {
        let (i, j) = (op.i, op.j);
        match op.kind {
            OpKind::D => {
                let mut out = self.apply_d(j, i, q);
                out = &out - &self.apply_e(i, j, q);
                out = &out - &self.apply_eprime(j, i, q);
                &out + &self.apply_f(i, j, q)
            }
            // E*_ij = F_ji − E'_ij and E'*_ij = F_ij − E_ij; swapping the
            // indices of E', E on the right only agrees when i = j
            OpKind::E => &self.apply_f(j, i, q) - &self.apply_eprime(i, j, q),
            OpKind::Eprime => &self.apply_f(i, j, q) - &self.apply_e(i, j, q),
            OpKind::F => self.apply_f(j, i, q),
        }
    }

    /// `(Op p, q)_κ = (p, Op* q)_κ`
    pub fn check_adjoint(&self, op: OperatorSpec, p: &Poly, q: &Poly) -> Result<bool> {
        let lhs = self.inner_product(&self.apply(op, p), q)?;
        let rhs = self.inner_product(p, &self.apply_adjoint(op, q))?;
        Ok(lhs == rhs)
    }
}

/// Row sums equal column sums; otherwise 𝐞_κ vanishes, since every rewrite
/// preserves `row sums − column sums`.
fn balanced(m: &Monomial, n: usize) -> bool {
    let mut diff = vec![0i64; n + 1];
    for (v, e) in m.iter() {
        diff[v.i as usize] += e as i64;
        diff[v.j as usize] -= e as i64;
    }
    diff.iter().all(|&d| d == 0)
}

/// `P̃(X, Y) = P(X ᵗY)` with X, Y of shape `n × cols`.
pub fn tilde(p: &Poly, cols: usize) -> Poly {
    let n = p.ambient().n;
    let amb = Ambient::with_cols(n, cols);
    let map: HashMap<VarId, Poly> = (1..=n)
        .flat_map(|i| (1..=n).map(move |j| (i, j)))
        .map(|(i, j)| {
            let img = Poly::from_terms(
                amb,
                (1..=cols).map(|s| (Monomial::from_pairs([(VarId::x(i, s), 1), (VarId::y(j, s), 1)]), KappaRational::one())),
            );
            (VarId::t(i, j), img)
        })
        .collect();
    p.substitute(&map, amb)
}

/// `Δ_ij = Σ_s ∂²/∂x_is ∂y_js`
pub fn mixed_laplacian(i: usize, j: usize, p: &Poly) -> Poly {
    let cols = p.ambient().kappa_cols.unwrap_or(0);
    let mut out = Poly::zero(p.ambient());
    for s in 1..=cols {
        out.add_assign_ref(&p.partial(VarId::x(i, s)).partial(VarId::y(j, s)));
    }
    out
}

/// `Δ_ij P̃ = (D_ij P)~` for all `(i, j)`, with κ specialized to `kappa_int`.
pub fn tilde_compat_check(p: &Poly, kappa_int: usize) -> Result<bool> {
    p.require_t()?;
    if kappa_int == 0 {
        return Err(Error::InvalidInput("kappa_int must be positive".into()));
    }
    let n = p.ambient().n;
    let q = BigRational::from_integer((kappa_int as i64).into());
    let p = p.specialize(&q)?;
    let w = Weyl::new(n, &KappaMode::Specialized(q));
    let pt = tilde(&p, kappa_int);
    for i in 1..=n {
        for j in 1..=n {
            if mixed_laplacian(i, j, &pt) != tilde(&w.apply_d(i, j, &p), kappa_int) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// True when `p` only involves T-variables.
pub fn is_t_poly(p: &Poly) -> bool {
    p.only_family(Family::T)
}
