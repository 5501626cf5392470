//! Golden check of the `n = 3` descending-basis table.

use std::collections::BTreeMap;

use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::bases::{DescendingSolver, MultiIndex, Partition};
use crate::error::{Error, Result};
use crate::field::{asc_poch, KappaRational};
use crate::genfun::{build_g, sigma, substitute_and_extract, Seed};
use crate::poly::{Ambient, Poly};
use crate::weyl::Weyl;

pub const GOLDEN_JSON: &str = include_str!("../../data/appendix_a.json");
pub const GOLDEN_SHA256: &str = include_str!("../../data/appendix_a.sha256");

/// Table order of the six off-diagonal entries.
pub const INDEX_ORDER: [(usize, usize); 6] = [(1, 2), (1, 3), (2, 3), (2, 1), (3, 1), (3, 2)];

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn nu_from_table(entries: &[u32]) -> Result<MultiIndex> {
    if entries.len() != 6 {
        return Err(Error::Parse(format!("table index needs 6 entries, got {}", entries.len())));
    }
    let mut nu = MultiIndex::zero(3);
    for (&(i, j), &e) in INDEX_ORDER.iter().zip(entries) {
        nu.set(i, j, e);
    }
    Ok(nu)
}

pub struct Golden {
    pub sigma: Vec<Poly>,
    pub entries: Vec<(MultiIndex, Poly)>,
    pub errata: BTreeMap<MultiIndex, (Poly, String)>,
}

fn parse_nu(v: &Value) -> Result<MultiIndex> {
    let arr = v.as_array().ok_or_else(|| Error::Parse("nu must be an array".into()))?;
    let e = arr
        .iter()
        .map(|x| x.as_u64().map(|x| x as u32).ok_or_else(|| Error::Parse("nu entry".into())))
        .collect::<Result<Vec<_>>>()?;
    nu_from_table(&e)
}

pub fn load_golden() -> Result<Golden> {
    let v: Value = serde_json::from_str(GOLDEN_JSON).map_err(|e| Error::Parse(e.to_string()))?;
    let sig = v.get("sigma").ok_or_else(|| Error::Parse("missing sigma".into()))?;
    let sigma = (1..=3)
        .map(|i| Poly::from_json(sig.get(i.to_string()).ok_or_else(|| Error::Parse(format!("missing sigma {i}")))?))
        .collect::<Result<Vec<_>>>()?;
    let mut entries = Vec::new();
    for e in v.get("entries").and_then(Value::as_array).ok_or_else(|| Error::Parse("missing entries".into()))? {
        let nu = parse_nu(e.get("nu").unwrap_or(&Value::Null))?;
        let p = Poly::from_json(e.get("printed").unwrap_or(&Value::Null))?;
        entries.push((nu, p));
    }
    let mut errata = BTreeMap::new();
    for e in v.get("errata").and_then(Value::as_array).map(Vec::as_slice).unwrap_or(&[]) {
        let nu = parse_nu(e.get("nu").unwrap_or(&Value::Null))?;
        let p = Poly::from_json(e.get("corrected").unwrap_or(&Value::Null))?;
        let reason = e.get("reason").and_then(Value::as_str).unwrap_or("").to_string();
        errata.insert(nu, (p, reason));
    }
    Ok(Golden { sigma, entries, errata })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EntryStatus {
    Verbatim,
    /// The printed polynomial is not in `𝒫_{𝐚,𝐛}(κ)` and the erratum equals the pipeline output.
    CertifiedMisprint,
    Mismatch,
}

#[derive(Clone, Debug)]
pub struct AppendixReport {
    pub checksum_ok: bool,
    pub entries: Vec<(MultiIndex, EntryStatus)>,
    /// `P_ν / ((κ)^{(d)}(κ−1)^{(d)})` equals the linear-solve `P^D_ν` for every entry.
    pub normalization_ok: bool,
}

impl AppendixReport {
    pub fn count(&self, s: &EntryStatus) -> usize {
        self.entries.iter().filter(|(_, e)| e == s).count()
    }

    pub fn passed(&self) -> bool {
        self.checksum_ok && self.normalization_ok && self.count(&EntryStatus::Mismatch) == 0
    }

    pub fn summary(&self) -> String {
        format!(
            "{}/{} entries verbatim, {} certified misprints, {} mismatches; checksum {}; normalization {}",
            self.count(&EntryStatus::Verbatim),
            self.entries.len(),
            self.count(&EntryStatus::CertifiedMisprint),
            self.count(&EntryStatus::Mismatch),
            if self.checksum_ok { "ok" } else { "BAD" },
            if self.normalization_ok { "ok" } else { "BAD" },
        )
    }
}

/// Not bihomogeneous of the bidegree of `nu`, or not killed by every `D_ii`.
fn certifiably_wrong(w: &Weyl, nu: &MultiIndex, p: &Poly) -> Result<bool> {
    let split = p.bidegree_split()?;
    if split.keys().any(|bd| bd != &nu.bidegree()) {
        return Ok(true);
    }
    Ok((1..=3).any(|i| !w.apply_d(i, i, p).is_zero()))
}

/// Pipeline output `P_ν` (seed A, `|ν| ≤ max_nu`), unnormalized.
pub fn appendix_pipeline(max_nu: u32) -> Result<BTreeMap<MultiIndex, Poly>> {
    let k = KappaRational::kappa();
    let g = build_g(&k, 3, &Seed::A.series(&k, Ambient::new(3), max_nu))?;
    Ok(substitute_and_extract(&g, 3, &Partition::trivial(3), max_nu))
}

pub fn verify_appendix(max_nu: u32) -> Result<AppendixReport> {
    let golden = load_golden()?;
    let checksum_ok = sha256_hex(GOLDEN_JSON.as_bytes()) == GOLDEN_SHA256.trim();
    let pipeline = appendix_pipeline(max_nu)?;
    let w = Weyl::symbolic(3);
    let mut solver = DescendingSolver::new(&w)?;
    let zero = Poly::zero(Ambient::new(3));
    let k = KappaRational::kappa();
    let km1 = KappaRational::kappa_plus(-1);
    let mut entries = Vec::new();
    let mut normalization_ok = true;
    for (nu, printed) in golden.entries.iter().filter(|(nu, _)| nu.degree() <= max_nu) {
        let ours = pipeline.get(nu).unwrap_or(&zero);
        let status = if ours == printed {
            EntryStatus::Verbatim
        } else {
            match golden.errata.get(nu) {
                Some((fixed, _)) if fixed == ours && certifiably_wrong(&w, nu, printed)? => EntryStatus::CertifiedMisprint,
                _ => EntryStatus::Mismatch,
            }
        };
        let d = nu.degree();
        let norm = &asc_poch(&k, d) * &asc_poch(&km1, d);
        normalization_ok &= ours.scale(&norm.inv()?) == solver.get(nu)?;
        entries.push((nu.clone(), status));
    }
    Ok(AppendixReport { checksum_ok, entries, normalization_ok })
}

/// `σ_1, σ_2, σ_3` for `n = 3` against the printed table.
pub fn verify_sigma_table() -> Result<bool> {
    let golden = load_golden()?;
    let pt = Partition::trivial(3);
    Ok(golden.sigma.iter().enumerate().all(|(i, s)| &sigma(3, i + 1, Some(&pt)) == s))
}
