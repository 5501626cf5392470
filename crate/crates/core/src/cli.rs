//! Command-line front end. `run` is the whole program minus process exit.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bases::{descending_basis, monomial_basis, DescendingMethod, MultiIndex, Partition};
use crate::error::{Error, Result};
use crate::field::{parse_rational, KappaMode, KappaRational};
use crate::genfun::{build_g, build_symmetric_g, descending_from_genfun, Seed};
use crate::poly::{Ambient, Bidegree, Poly};
use crate::pullback::{build_diff2_operator, c_mn, c_pullback, phi_inverse, phi_kappa, WeightPair};
use crate::verify::{appendix, verify_all, Scope};
use crate::weyl::{OpKind, OperatorSpec, Weyl};

#[derive(Parser, Debug)]
#[command(name = "plurikit", version, about = "Pluriharmonic polynomials, generating functions and pullback constants")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Clone)]
pub struct KappaArg {
    /// Specialize κ to this rational (e.g. `5/2`); symbolic when absent.
    #[arg(long)]
    pub kappa: Option<String>,
}

impl KappaArg {
    fn mode(&self) -> Result<KappaMode> {
        match &self.kappa {
            None => Ok(KappaMode::Symbolic),
            Some(s) => Ok(KappaMode::Specialized(parse_rational(s)?)),
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Apply D, E, E' or F (or its adjoint) to a polynomial.
    ApplyOp {
        #[arg(long, value_parser = parse_op_kind)]
        op: OpKind,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
        /// Polynomial JSON file, `-` for stdin.
        #[arg(long)]
        input: String,
        #[arg(long)]
        adjoint: bool,
        #[command(flatten)]
        kappa: KappaArg,
    },
    /// Monomial or descending basis of one bidegree.
    Basis {
        #[arg(long, value_enum)]
        kind: BasisKind,
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',')]
        row_sums: Vec<u32>,
        #[arg(long, value_delimiter = ',')]
        col_sums: Vec<u32>,
        /// Block sizes; defaults to `1,…,1`.
        #[arg(long, value_delimiter = ',')]
        partition: Option<Vec<usize>>,
        #[arg(long, value_enum, default_value_t = Method::LinearSolve)]
        method: Method,
        #[command(flatten)]
        kappa: KappaArg,
    },
    /// Generating function `G^{(n)}(s)`, or with `--extract-degree` the basis it produces.
    Genfun {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = SeedArg::A)]
        seed: SeedArg,
        #[arg(long, default_value_t = 4)]
        max_weight: u32,
        /// Extract `P^D_ν` for `|ν| ≤` this degree instead of printing the series.
        #[arg(long)]
        extract_degree: Option<u32>,
        #[arg(long, value_delimiter = ',')]
        partition: Option<Vec<usize>>,
        #[command(flatten)]
        kappa: KappaArg,
    },
    /// Symmetric generating function `G^{(n₁,n₂)}`, or the differential operator
    /// attached to a weight pair with `--k/--l`.
    Gensym {
        #[arg(long)]
        n1: usize,
        #[arg(long)]
        n2: usize,
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
        #[arg(long, value_delimiter = ',')]
        k: Option<Vec<u32>>,
        #[arg(long, value_delimiter = ',')]
        l: Option<Vec<u32>>,
        #[command(flatten)]
        kappa: KappaArg,
    },
    /// `φ_κ` of a homogeneous polynomial, or its inverse.
    Phi {
        #[arg(long)]
        input: String,
        #[arg(long)]
        inverse: bool,
        #[arg(long, value_enum, default_value_t = SeedArg::A)]
        seed: SeedArg,
        #[command(flatten)]
        kappa: KappaArg,
    },
    /// Archimedean constants.
    PullbackConstant {
        #[command(subcommand)]
        which: ConstantCmd,
    },
    /// `(p, q)_κ`
    InnerProduct {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[command(flatten)]
        kappa: KappaArg,
    },
    /// Compare the pipeline with the shipped `n = 3` table.
    VerifyAppendix {
        #[arg(long, default_value_t = 4)]
        max_nu: u32,
    },
    /// Run every acceptance criterion.
    VerifyAll {
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum ConstantCmd {
    /// `c(μ/2, ρ)` over `m` places; one `--weight K:L` per place (all zero if omitted).
    Pullback {
        #[arg(long)]
        mu: u32,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long)]
        n2: usize,
        #[arg(long = "weight", value_parser = parse_weight)]
        weights: Vec<WeightPair>,
    },
    /// `c_{m,n}(s, 𝐤, 𝐥)`; `s` stays formal when omitted.
    CMn {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: Option<String>,
        #[arg(long = "weight", value_parser = parse_weight)]
        weight: Option<WeightPair>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BasisKind {
    Monomial,
    Descending,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    LinearSolve,
    GeneratingFunction,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeedArg {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
}

impl From<SeedArg> for Seed {
    fn from(s: SeedArg) -> Seed {
        match s {
            SeedArg::A => Seed::A,
            SeedArg::B => Seed::B,
        }
    }
}

fn parse_op_kind(s: &str) -> std::result::Result<OpKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// `2,1:1` is `𝐤 = (2,1)`, `𝐥 = (1)`; either side may be empty.
pub fn parse_weight(s: &str) -> std::result::Result<WeightPair, String> {
    let (k, l) = s.split_once(':').ok_or_else(|| format!("weight {s:?} must look like K:L"))?;
    let parts = |x: &str| -> std::result::Result<Vec<u32>, String> {
        x.split(',').filter(|p| !p.trim().is_empty()).map(|p| p.trim().parse().map_err(|e| format!("{p:?}: {e}"))).collect()
    };
    WeightPair::new(parts(k)?, parts(l)?).map_err(|e| e.to_string())
}

fn read_input(path: &str, stdin: &mut dyn Read) -> Result<Poly> {
    let text = if path == "-" {
        let mut s = String::new();
        stdin.read_to_string(&mut s).map_err(|e| Error::InvalidInput(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{path}: {e}")))?
    };
    Poly::from_json_str(&text)
}

fn specialize_input(p: Poly, mode: &KappaMode) -> Result<Poly> {
    match mode.specialized() {
        Some(q) => p.specialize(q),
        None => Ok(p),
    }
}

fn partition_or_trivial(parts: Option<Vec<usize>>, n: usize) -> Result<Partition> {
    let p = match parts {
        Some(parts) => Partition::new(parts)?,
        None => Partition::trivial(n),
    };
    if p.n() != n {
        return Err(Error::InvalidInput(format!("partition sums to {}, expected n = {n}", p.n())));
    }
    Ok(p)
}

/// What a subcommand produced: a JSON value plus its text rendering.
struct Output {
    json: Value,
    text: String,
    ok: bool,
}

impl Output {
    fn new(json: Value, text: String) -> Self {
        Output { json, text, ok: true }
    }
}

fn basis_output(basis: &std::collections::BTreeMap<MultiIndex, Poly>, head: Value) -> Output {
    let items: Vec<Value> = basis.iter().map(|(nu, p)| json!({ "nu": nu.flat(), "poly": p.to_json() })).collect();
    let text = basis.iter().map(|(nu, p)| format!("{nu}: {p}")).collect::<Vec<_>>().join("\n");
    let mut json = head;
    json["basis"] = Value::Array(items);
    Output::new(json, text)
}

fn kappa_json(mode: &KappaMode) -> Value {
    match mode.specialized() {
        Some(q) => json!(crate::field::rational_to_string(q)),
        None => Value::Null,
    }
}

fn execute(cmd: Command, stdin: &mut dyn Read) -> Result<Output> {
    match cmd {
        Command::ApplyOp { op, i, j, input, adjoint, kappa } => {
            let mode = kappa.mode()?;
            let p = specialize_input(read_input(&input, stdin)?, &mode)?;
            p.require_t()?;
            let n = p.ambient().n;
            let spec = OperatorSpec::new(op, i, j, n)?;
            let w = Weyl::new(n, &mode);
            let r = if adjoint { w.apply_adjoint(spec, &p) } else { w.apply(spec, &p) };
            Ok(Output::new(json!({ "result": r.to_json() }), r.to_string()))
        }
        Command::Basis { kind, n, row_sums, col_sums, partition, method, kappa } => {
            if row_sums.len() != n || col_sums.len() != n {
                return Err(Error::InvalidInput(format!("row and column sums need {n} entries each")));
            }
            if row_sums.iter().sum::<u32>() != col_sums.iter().sum::<u32>() {
                return Err(Error::InvalidInput("row and column sums have different totals".into()));
            }
            let mode = kappa.mode()?;
            let pt = partition_or_trivial(partition, n)?;
            let w = Weyl::new(n, &mode);
            let bd = Bidegree::new(row_sums.clone(), col_sums.clone());
            let basis = match kind {
                BasisKind::Monomial => monomial_basis(&w, &bd, &pt)?,
                BasisKind::Descending => {
                    let m = match method {
                        Method::LinearSolve => DescendingMethod::LinearSolve,
                        Method::GeneratingFunction => DescendingMethod::GeneratingFunction,
                    };
                    descending_basis(&w, &bd, &pt, m)?
                }
            };
            let head = json!({
                "kind": format!("{kind:?}").to_lowercase(),
                "n": n,
                "row_sums": row_sums,
                "col_sums": col_sums,
                "partition": pt.parts(),
                "kappa": kappa_json(&mode),
            });
            Ok(basis_output(&basis, head))
        }
        Command::Genfun { n, seed, max_weight, extract_degree, partition, kappa } => {
            let mode = kappa.mode()?;
            let seed = Seed::from(seed);
            if n == 0 {
                return Err(Error::InvalidInput("n must be positive".into()));
            }
            match extract_degree {
                Some(d) => {
                    let pt = partition_or_trivial(partition, n)?;
                    let basis = descending_from_genfun(n, &pt, seed, d, &mode)?;
                    let head = json!({ "n": n, "seed": format!("{seed:?}"), "max_degree": d, "kappa": kappa_json(&mode) });
                    Ok(basis_output(&basis, head))
                }
                None => {
                    let k = mode.kappa();
                    let g = build_g(&k, n, &seed.series(&k, Ambient::new(n), max_weight))?;
                    let json = json!({
                        "n": n,
                        "seed": format!("{seed:?}"),
                        "max_weight": max_weight,
                        "kappa": kappa_json(&mode),
                        "series": g.poly().to_json(),
                    });
                    Ok(Output::new(json, g.poly().to_string()))
                }
            }
        }
        Command::Gensym { n1, n2, max_degree, k, l, kappa } => {
            let mode = kappa.mode()?;
            let kk = mode.kappa();
            let p = match (k, l) {
                (None, None) => build_symmetric_g(&kk, n1, n2, max_degree)?,
                (k, l) => {
                    let w = WeightPair::new(k.unwrap_or_default(), l.unwrap_or_default())?;
                    build_diff2_operator(&kk, n1, n2, &w)?
                }
            };
            Ok(Output::new(json!({ "n1": n1, "n2": n2, "kappa": kappa_json(&mode), "result": p.to_json() }), p.to_string()))
        }
        Command::Phi { input, inverse, seed, kappa } => {
            let mode = kappa.mode()?;
            let p = specialize_input(read_input(&input, stdin)?, &mode)?;
            let k = mode.kappa();
            let r = if inverse { phi_inverse(&k, &p, seed.into())? } else { phi_kappa(&k, &p)? };
            Ok(Output::new(json!({ "result": r.to_json() }), r.to_string()))
        }
        Command::PullbackConstant { which } => match which {
            ConstantCmd::Pullback { mu, m, n2, weights } => {
                let weights = if weights.is_empty() { vec![WeightPair::zero(); m] } else { weights };
                let c = c_pullback(mu, m, n2, &weights)?;
                let text = format!(
                    "2^{} * pi^{} * {}",
                    c.two_exp,
                    c.pi_exp,
                    crate::field::rational_to_string(&c.rational)
                );
                let mut json = c.to_json();
                json["approx"] = json!(c.to_f64());
                Ok(Output::new(json, text))
            }
            ConstantCmd::CMn { m, n, s, weight } => {
                let w = weight.unwrap_or_else(WeightPair::zero);
                let sv = match &s {
                    Some(s) => KappaRational::from_rational(parse_rational(s)?),
                    None => KappaRational::kappa(),
                };
                let c = c_mn(m, n, &sv, &w)?;
                let json = json!({
                    "rational": c.rational.to_json(),
                    "pi_power": c.pi_power,
                    "approx": c.to_f64(),
                });
                Ok(Output::new(json, c.to_string()))
            }
        },
        Command::InnerProduct { left, right, kappa } => {
            let mode = kappa.mode()?;
            let p = specialize_input(read_input(&left, stdin)?, &mode)?;
            let q = specialize_input(read_input(&right, stdin)?, &mode)?;
            if p.ambient().n != q.ambient().n {
                return Err(Error::AmbientMismatch(format!("n = {} vs n = {}", p.ambient().n, q.ambient().n)));
            }
            let v = Weyl::new(p.ambient().n, &mode).inner_product(&p, &q)?;
            Ok(Output::new(json!({ "value": v.to_json() }), v.to_string()))
        }
        Command::VerifyAppendix { max_nu } => {
            let r = appendix::verify_appendix(max_nu)?;
            let entries: Vec<Value> =
                r.entries.iter().map(|(nu, s)| json!({ "nu": nu.flat(), "status": format!("{s:?}") })).collect();
            let json = json!({
                "passed": r.passed(),
                "summary": r.summary(),
                "checksum_ok": r.checksum_ok,
                "normalization_ok": r.normalization_ok,
                "entries": entries,
            });
            let mut out = Output::new(json, r.summary());
            out.ok = r.passed();
            Ok(out)
        }
        Command::VerifyAll { quick } => {
            let reports = verify_all(if quick { Scope::Quick } else { Scope::Full });
            let ok = reports.iter().all(|r| r.passed);
            let json = Value::Array(
                reports
                    .iter()
                    .map(|r| {
                        json!({
                            "id": r.id,
                            "name": r.name,
                            "passed": r.passed,
                            "detail": r.detail,
                            "seconds": r.elapsed.as_secs_f64(),
                        })
                    })
                    .collect(),
            );
            let text = reports.iter().map(|r| r.line()).collect::<Vec<_>>().join("\n");
            Ok(Output { json, text, ok })
        }
    }
}

/// Usage-type errors exit with 2, domain errors with 1.
fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidInput(_) | Error::Parse(_) => 2,
        _ => 1,
    }
}

fn init_threads() {
    if let Some(n) = std::env::var("PLURIKIT_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // fails only if a pool already exists, which is fine for repeated in-process runs
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { write!(stdout, "{rendered}") } else { write!(stderr, "{rendered}") };
            return code;
        }
    };
    init_threads();
    let (format, out_path) = (cli.format, cli.out);
    match execute(cli.command, stdin) {
        Ok(out) => {
            let body = match format {
                Format::Json => serde_json::to_string_pretty(&out.json).expect("JSON values serialize"),
                Format::Text => out.text,
            };
            let written = match &out_path {
                Some(path) => std::fs::write(path, format!("{body}\n")),
                None => writeln!(stdout, "{body}"),
            };
            if let Err(e) = written {
                if e.kind() == std::io::ErrorKind::BrokenPipe {
                    return 0;
                }
                let err = Error::InvalidInput(format!("cannot write output: {e}"));
                let _ = writeln!(stderr, "{}", err.to_json());
                return 1;
            }
            if out.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "{}", e.to_json());
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv: Vec<&str> = std::iter::once("plurikit").chain(args.iter().copied()).collect();
        let code = run(argv, &mut std::io::empty(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn weight_parsing() {
        let w = parse_weight("2,1:1").unwrap();
        assert_eq!(w.k_parts(), &[2, 1]);
        assert_eq!(w.l_parts(), &[1]);
        assert_eq!(parse_weight(":").unwrap(), WeightPair::zero());
        assert!(parse_weight("1,2:0").is_err());
        assert!(parse_weight("3").is_err());
    }

    #[test]
    fn pole_exits_one() {
        let (code, _, err) =
            run_str(&["basis", "--kind", "descending", "--n", "3", "--row-sums", "1,1,0", "--col-sums", "0,1,1", "--kappa", "2"]);
        assert_eq!(code, 1);
        let v: Value = serde_json::from_str(err.trim()).unwrap();
        assert_eq!(v["error"], "PoleAtKappa");
    }

    #[test]
    fn usage_exits_two() {
        assert_eq!(run_str(&["basis", "--kind", "sideways"]).0, 2);
        assert_eq!(run_str(&["basis", "--kind", "monomial", "--n", "2", "--row-sums", "1", "--col-sums", "1,0"]).0, 2);
    }

    #[test]
    fn scalar_pullback_constant() {
        let (code, out, _) = run_str(&["pullback-constant", "pullback", "--mu", "4", "--n2", "1"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["two_exp"], 2);
        assert_eq!(v["rational"], "1/3");
    }
}
