//! `dahakit`: exact computations in extended affine Weyl groups, the
//! graded double affine Hecke algebra, and parahoric convolution
//! algebras.
//!
//! All results are emitted as a single JSON document on stdout;
//! diagnostics go to stderr. Exit codes: 0 on success, 1 when a
//! verification suite reports a failing check, 2 on usage or input
//! errors. Identical inputs and an identical `--seed` produce
//! byte-identical output; pass `--timing` to add wall-clock durations
//! (which breaks byte-identity and is therefore opt-in).

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::json;

use dahakit::convolution;
use dahakit::daha::{self, DahaDegree, DahaElt};
use dahakit::extweyl;
use dahakit::parahoric::{self, ParahoricType};
use dahakit::poly::AffPoly;
use dahakit::rat::rat_from_str;
use dahakit::rootsys::{CartanType, IsogenyFlavor, RootDatum};
use dahakit::verify;
use dahakit::wire::{self, WireDCosetFn, WireDahaElt, WireExtWeyl, WirePolyTerm};

#[derive(Parser)]
#[command(
    name = "dahakit",
    version,
    about = "Exact-arithmetic extended affine Weyl groups, graded DAHA, and double-coset convolution"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct DatumArgs {
    /// Cartan type letter A..G
    #[arg(long = "type", value_name = "LETTER")]
    cartan_type: char,
    /// Rank of the finite root system
    #[arg(long)]
    rank: usize,
    /// Use the adjoint isogeny flavor (default simply-connected)
    #[arg(long)]
    adjoint: bool,
}

impl DatumArgs {
    fn datum(&self) -> anyhow::Result<RootDatum> {
        let flavor = if self.adjoint {
            IsogenyFlavor::Adjoint
        } else {
            IsogenyFlavor::SimplyConnected
        };
        Ok(RootDatum::new(
            CartanType::from_letter(self.cartan_type)?,
            self.rank,
            flavor,
        )?)
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Finite root datum queries
    Rootsys {
        #[command(subcommand)]
        cmd: RootsysCmd,
    },
    /// Extended affine Weyl group operations
    Wext {
        #[command(subcommand)]
        cmd: WextCmd,
    },
    /// Graded double affine Hecke algebra operations
    Daha {
        #[command(subcommand)]
        cmd: DahaCmd,
    },
    /// Double-coset convolution algebra operations
    Conv {
        #[command(subcommand)]
        cmd: ConvCmd,
    },
    /// Standard parahoric type enumeration
    Parahoric {
        #[command(subcommand)]
        cmd: ParahoricCmd,
    },
    /// Run a verification suite and emit its report
    Verify {
        /// Suite name, or `all`
        #[arg(long, default_value = "all")]
        suite: String,
        /// Comma-separated type list such as `A1..A4,B2,G2`
        #[arg(long)]
        types: Option<String>,
        /// PRNG seed (ChaCha20); counterexamples replay across platforms
        #[arg(long, default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
        /// Include wall-clock durations in the report
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Subcommand)]
enum RootsysCmd {
    /// Emit the Cartan matrix, positive roots, highest (co)root, rho,
    /// dual Coxeter number, and the Killing Gram matrix
    Info {
        #[command(flatten)]
        datum: DatumArgs,
    },
}

#[derive(Subcommand)]
enum WextCmd {
    /// Multiply two elements; stdin: {"a": ELT, "b": ELT}
    Mul {
        #[command(flatten)]
        datum: DatumArgs,
    },
    /// Invert an element; stdin: {"a": ELT}
    Inv {
        #[command(flatten)]
        datum: DatumArgs,
    },
    /// Act on an affine (co)weight; stdin: {"a": ELT, "weight": W} or
    /// {"a": ELT, "coweight": C}
    Act {
        #[command(flatten)]
        datum: DatumArgs,
    },
    /// Reduced word and length-zero part; stdin: {"a": ELT}
    Word {
        #[command(flatten)]
        datum: DatumArgs,
    },
    /// Minimal double-coset representatives up to a length bound
    Cosets {
        #[command(flatten)]
        datum: DatumArgs,
        /// Left parahoric subset, comma-separated node indices
        #[arg(long, default_value = "")]
        p: String,
        /// Right parahoric subset
        #[arg(long, default_value = "")]
        q: String,
        #[arg(long = "max-length")]
        max_length: u64,
    },
}

#[derive(Subcommand)]
enum DahaCmd {
    /// Multiply two normal-form elements; stdin: {"a": ELT, "b": ELT}
    Mul {
        #[command(flatten)]
        datum: DatumArgs,
    },
    /// Normal form of an ordered product of factors; stdin:
    /// {"factors": [{"s": i} | {"omega": id} | {"group": G} |
    /// {"poly": TERMS} | {"u": exp} | {"scalar": "p/q"}]}
    Nf {
        #[command(flatten)]
        datum: DatumArgs,
    },
    /// Specialize at u = 0 and delta = 0; stdin: {"a": ELT}
    Specialize {
        #[command(flatten)]
        datum: DatumArgs,
    },
    /// Check the operator-model oracle on this datum
    Verify {
        #[command(flatten)]
        datum: DatumArgs,
        /// Oracle to check against (only `polyrep` exists)
        #[arg(long, default_value = "polyrep")]
        oracle: String,
        #[arg(long, default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum ConvCmd {
    /// Convolve two bi-invariant functions; stdin: [F1, F2]
    Mul {
        #[command(flatten)]
        datum: DatumArgs,
        /// Expected left invariance of the first factor
        #[arg(long = "P", default_value = "")]
        p: String,
        /// Expected middle type
        #[arg(long = "Q", default_value = "")]
        q: String,
        /// Expected right invariance of the second factor
        #[arg(long = "R", default_value = "")]
        r: String,
    },
}

#[derive(Subcommand)]
enum ParahoricCmd {
    /// List every standard parahoric type of the datum
    List {
        #[command(flatten)]
        datum: DatumArgs,
    },
}

fn read_stdin_json<T: serde::de::DeserializeOwned>() -> anyhow::Result<T> {
    let mut buf = String::new();
    std::io::stdin().read_to_string(&mut buf)?;
    Ok(serde_json::from_str(&buf).map_err(|e| dahakit::Error::Parse(e.to_string()))?)
}

fn parse_subset(datum: &RootDatum, s: &str) -> anyhow::Result<ParahoricType> {
    let mut set = std::collections::BTreeSet::new();
    for part in s.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let i: usize = part
            .parse()
            .map_err(|_| dahakit::Error::Parse(format!("bad node index `{part}`")))?;
        set.insert(i);
    }
    Ok(ParahoricType::new(datum, set)?)
}

fn emit(value: &serde_json::Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("serializable")
    );
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PairInput {
    a: WireExtWeyl,
    b: WireExtWeyl,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SingleInput {
    a: WireExtWeyl,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ActInput {
    a: WireExtWeyl,
    weight: Option<wire::WireAffWeight>,
    coweight: Option<wire::WireAffCoweight>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DahaPairInput {
    a: WireDahaElt,
    b: WireDahaElt,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DahaSingleInput {
    a: WireDahaElt,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FactorsInput {
    factors: Vec<Factor>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Factor {
    s: Option<usize>,
    omega: Option<usize>,
    group: Option<WireExtWeyl>,
    poly: Option<Vec<WirePolyTerm>>,
    u: Option<u8>,
    scalar: Option<String>,
}

impl Factor {
    fn to_elt(&self, datum: &RootDatum) -> anyhow::Result<DahaElt> {
        let fields = [
            self.s.is_some(),
            self.omega.is_some(),
            self.group.is_some(),
            self.poly.is_some(),
            self.u.is_some(),
            self.scalar.is_some(),
        ];
        if fields.iter().filter(|&&b| b).count() != 1 {
            return Err(dahakit::Error::Parse(
                "each factor must set exactly one of s, omega, group, poly, u, scalar".into(),
            )
            .into());
        }
        if let Some(i) = self.s {
            return Ok(DahaElt::from_group(
                datum,
                extweyl::simple_reflection(datum, i)?,
            ));
        }
        if let Some(id) = self.omega {
            let omegas = extweyl::omega_elements(datum);
            let omega = omegas
                .get(id)
                .cloned()
                .ok_or(dahakit::Error::IndexOutOfRange {
                    index: id,
                    max: omegas.len() - 1,
                })?;
            return Ok(DahaElt::from_group(datum, omega));
        }
        if let Some(g) = &self.group {
            return Ok(DahaElt::from_group(
                datum,
                wire::ext_weyl_from_wire(datum, g)?,
            ));
        }
        if let Some(terms) = &self.poly {
            return Ok(DahaElt::from_poly(
                datum,
                wire::poly_from_wire(datum, terms)?,
            ));
        }
        if let Some(e) = self.u {
            let mut p = AffPoly::one(dahakit::poly::nvars_for(datum));
            for _ in 0..e {
                p = p.mul_var(dahakit::poly::u_index(datum));
            }
            return Ok(DahaElt::from_poly(datum, p));
        }
        let s = self.scalar.as_ref().unwrap();
        Ok(DahaElt::scalar(datum, rat_from_str(s)?))
    }
}

fn degree_json(d: DahaDegree) -> serde_json::Value {
    match d {
        DahaDegree::NegInfinity => json!("-inf"),
        DahaDegree::Homogeneous(k) => json!(k),
        DahaDegree::Inhomogeneous(max) => json!({ "inhomogeneous": true, "max": max }),
    }
}

fn run() -> anyhow::Result<i32> {
    let cli = Cli::parse();
    if let Ok(threads) = std::env::var("DAHAKIT_THREADS") {
        // suites currently run their checks sequentially, which satisfies
        // any cap; reject garbage values so typos surface
        threads
            .parse::<usize>()
            .map_err(|_| dahakit::Error::Parse("DAHAKIT_THREADS must be an integer".into()))?;
    }
    match cli.cmd {
        Cmd::Rootsys {
            cmd: RootsysCmd::Info { datum },
        } => {
            let d = datum.datum()?;
            let (theta, theta_v) = d.highest_root();
            let positive: Vec<Vec<i64>> = d.roots()[..d.n_positive()]
                .iter()
                .map(|r| r.weight.clone())
                .collect();
            let theta_i: Vec<String> = wire::rats_to_strings(&theta.0);
            let theta_v_i: Vec<String> = wire::rats_to_strings(&theta_v.0);
            emit(&json!({
                "type": format!("{}{}", d.cartan_type().letter(), d.rank()),
                "flavor": d.flavor().tag(),
                "cartan_matrix": d.cartan_matrix_entries(),
                "positive_roots": positive,
                "theta": theta_i,
                "theta_dual": theta_v_i,
                "rho": wire::rats_to_strings(&d.rho().0),
                "h_dual": d.dual_coxeter_number(),
                "killing_gram": d.killing_gram(),
            }));
            Ok(0)
        }
        Cmd::Wext { cmd } => run_wext(cmd),
        Cmd::Daha { cmd } => run_daha(cmd),
        Cmd::Conv {
            cmd: ConvCmd::Mul { datum, p, q, r },
        } => {
            let d = datum.datum()?;
            let input: Vec<WireDCosetFn> = read_stdin_json()?;
            let [w1, w2]: [WireDCosetFn; 2] = input
                .try_into()
                .map_err(|_| dahakit::Error::Parse("expected exactly two functions".into()))?;
            let f1 = wire::dcoset_from_wire(&d, &w1)?;
            let f2 = wire::dcoset_from_wire(&d, &w2)?;
            let (tp, tq, tr) = (
                parse_subset(&d, &p)?,
                parse_subset(&d, &q)?,
                parse_subset(&d, &r)?,
            );
            if f1.p != tp || f1.q != tq || f2.p != tq || f2.q != tr {
                return Err(dahakit::Error::DatumMismatch(
                    "function types do not match --p/--q/--r".into(),
                )
                .into());
            }
            let out = convolution::convolve(&d, &f1, &f2)?;
            emit(&serde_json::to_value(wire::dcoset_to_wire(&d, &out)?)?);
            Ok(0)
        }
        Cmd::Parahoric {
            cmd: ParahoricCmd::List { datum },
        } => {
            let d = datum.datum()?;
            let mut rows = Vec::new();
            for p in parahoric::enumerate_standard(&d) {
                let classical = parahoric::to_classical_index(&d, &p).ok().map(|ix| ix.0);
                let order = p.levi_weyl_group(&d)?.len();
                rows.push(json!({
                    "subset": p.indices(),
                    "classical_index": classical,
                    "weyl_order": order,
                }));
            }
            emit(&serde_json::Value::Array(rows));
            Ok(0)
        }
        Cmd::Verify {
            suite,
            types,
            seed,
            timing,
        } => {
            let names: Vec<&str> = if suite == "all" {
                verify::ALL_SUITES.to_vec()
            } else {
                vec![suite.as_str()]
            };
            let mut reports = Vec::new();
            let mut all_pass = true;
            for name in names {
                let started = std::time::Instant::now();
                let mut report = verify::run_suite(name, types.as_deref(), seed)?;
                if timing {
                    report.duration_ms = Some(started.elapsed().as_millis() as u64);
                }
                all_pass &= report.pass;
                eprintln!(
                    "suite {name}: {}",
                    if report.pass { "pass" } else { "FAIL" }
                );
                reports.push(report);
            }
            let value = if reports.len() == 1 {
                serde_json::to_value(&reports[0])?
            } else {
                serde_json::to_value(&reports)?
            };
            emit(&value);
            Ok(if all_pass { 0 } else { 1 })
        }
    }
}

fn run_wext(cmd: WextCmd) -> anyhow::Result<i32> {
    match cmd {
        WextCmd::Mul { datum } => {
            let d = datum.datum()?;
            let input: PairInput = read_stdin_json()?;
            let a = wire::ext_weyl_from_wire(&d, &input.a)?;
            let b = wire::ext_weyl_from_wire(&d, &input.b)?;
            let out = extweyl::mul(&d, &a, &b);
            emit(&serde_json::to_value(wire::ext_weyl_to_wire(&d, &out)?)?);
        }
        WextCmd::Inv { datum } => {
            let d = datum.datum()?;
            let input: SingleInput = read_stdin_json()?;
            let a = wire::ext_weyl_from_wire(&d, &input.a)?;
            emit(&serde_json::to_value(wire::ext_weyl_to_wire(
                &d,
                &extweyl::inv(&d, &a),
            )?)?);
        }
        WextCmd::Act { datum } => {
            let d = datum.datum()?;
            let input: ActInput = read_stdin_json()?;
            let a = wire::ext_weyl_from_wire(&d, &input.a)?;
            match (&input.weight, &input.coweight) {
                (Some(w), None) => {
                    let xi = wire::aff_weight_from_wire(&d, w)?;
                    let out = extweyl::act_on_weight(&d, &a, &xi);
                    emit(&json!({ "weight": wire::aff_weight_to_wire(&out) }));
                }
                (None, Some(c)) => {
                    let eta = wire::aff_coweight_from_wire(&d, c)?;
                    let out = extweyl::act_on_coweight(&d, &a, &eta);
                    emit(&json!({ "coweight": wire::aff_coweight_to_wire(&out) }));
                }
                _ => {
                    return Err(dahakit::Error::Parse(
                        "provide exactly one of `weight` or `coweight`".into(),
                    )
                    .into())
                }
            }
        }
        WextCmd::Word { datum } => {
            let d = datum.datum()?;
            let input: SingleInput = read_stdin_json()?;
            let a = wire::ext_weyl_from_wire(&d, &input.a)?;
            let cox = extweyl::reduced_word(&d, &a);
            let wire_word = wire::cox_word_to_wire(&d, &cox)?;
            emit(&json!({
                "word": wire_word.word,
                "omega": wire_word.omega,
                "length": extweyl::length(&d, &a),
            }));
        }
        WextCmd::Cosets {
            datum,
            p,
            q,
            max_length,
        } => {
            let d = datum.datum()?;
            let tp = parse_subset(&d, &p)?;
            let tq = parse_subset(&d, &q)?;
            let reps = extweyl::double_cosets(&d, &tp.indices(), &tq.indices(), max_length);
            let rows = reps
                .iter()
                .map(|w| {
                    Ok(json!({
                        "rep": wire::ext_weyl_to_wire(&d, w)?,
                        "length": extweyl::length(&d, w),
                    }))
                })
                .collect::<anyhow::Result<Vec<_>>>()?;
            emit(&serde_json::Value::Array(rows));
        }
    }
    Ok(0)
}

fn run_daha(cmd: DahaCmd) -> anyhow::Result<i32> {
    match cmd {
        DahaCmd::Mul { datum } => {
            let d = datum.datum()?;
            let input: DahaPairInput = read_stdin_json()?;
            let a = wire::daha_from_wire(&d, &input.a)?;
            let b = wire::daha_from_wire(&d, &input.b)?;
            let out = daha::mul(&d, &a, &b);
            emit(&json!({
                "terms": wire::daha_to_wire(&d, &out)?,
                "degree": degree_json(out.degree()),
            }));
            Ok(0)
        }
        DahaCmd::Nf { datum } => {
            let d = datum.datum()?;
            let input: FactorsInput = read_stdin_json()?;
            let mut acc = DahaElt::one(&d);
            for f in &input.factors {
                acc = daha::mul(&d, &acc, &f.to_elt(&d)?);
            }
            emit(&json!({
                "terms": wire::daha_to_wire(&d, &acc)?,
                "degree": degree_json(acc.degree()),
            }));
            Ok(0)
        }
        DahaCmd::Specialize { datum } => {
            let d = datum.datum()?;
            let input: DahaSingleInput = read_stdin_json()?;
            let a = wire::daha_from_wire(&d, &input.a)?;
            let out = daha::specialize_degenerate(&d, &a);
            emit(&serde_json::to_value(wire::daha_to_wire(&d, &out)?)?);
            Ok(0)
        }
        DahaCmd::Verify {
            datum,
            oracle,
            seed,
        } => {
            if oracle != "polyrep" {
                return Err(dahakit::Error::Parse(format!(
                    "unknown oracle `{oracle}`; only `polyrep` is available"
                ))
                .into());
            }
            let d = datum.datum()?;
            let spec = format!("{}{}", d.cartan_type().letter(), d.rank());
            let mut report = verify::run_suite("polyrep", Some(&spec), seed)?;
            // the suite runs both flavors; keep the one that was asked for
            report.data.retain(|entry| entry.datum == d.descriptor());
            report.pass = report
                .data
                .iter()
                .all(|entry| entry.checks.iter().all(|c| c.pass));
            let pass = report.pass;
            emit(&serde_json::to_value(&report)?);
            Ok(if pass { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            // input and usage problems exit 2 with an error document on
            // stdout so callers always receive valid JSON
            emit(&json!({ "error": err.to_string() }));
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
