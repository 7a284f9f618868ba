//! Command line front end for the moonshine q-series library.
//!
//! Subcommands: expand, parity-check, sturm-verify, decompose,
//! conjecture-check, validate-data. All verification commands print the
//! verified range explicitly; only the sturm mode carries "for all m"
//! semantics. Exit codes: 0 all pass, 1 verification failure, 2 usage or
//! data error.

use std::collections::BTreeMap;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use moonshine_core::exponent::Exponent;
use moonshine_core::forms::load_cusp_forms;
use moonshine_core::m24::{
    check_conjectured_pairs, check_multiplicity_parity, check_pair_structure, decompose_grade,
    grade_on_support, CharacterTable,
};
use moonshine_core::mckay::{ClassId, McKayRegistry, ALL_CLASSES};
use moonshine_core::parity::{
    load_recipe_overrides, parity_scan, sturm_verify, ParityCertificate, TestRecipe,
};

/// Default data directory: MOONSHINE_DATA_DIR or ./data.
fn default_data_dir() -> PathBuf {
    std::env::var_os("MOONSHINE_DATA_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("data"))
}

#[derive(Parser)]
#[command(
    name = "moonshine",
    version,
    about = "Exact McKay-Thompson series, parity certificates and module decompositions for Mathieu moonshine"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Args)]
struct CommonOpts {
    /// Data directory with the character table and cusp-form files
    #[arg(long, global = true, default_value_os_t = default_data_dir())]
    data_dir: PathBuf,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    /// Write output to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the exact expansion of one McKay-Thompson series
    Expand {
        #[command(flatten)]
        common: CommonOpts,
        /// Class name (1A, 2A, ..., 23AB)
        #[arg(long)]
        class: String,
        /// Highest grade n to print (coefficient of q^{n/8})
        #[arg(long, default_value_t = 100)]
        order: i64,
        /// Reduce coefficients modulo M
        #[arg(long = "mod")]
        modulus: Option<u64>,
    },
    /// Empirical parity scan against the predicted odd sets
    ParityCheck {
        #[command(flatten)]
        common: CommonOpts,
        /// Class name, or all classes when omitted
        #[arg(long)]
        class: Option<String>,
        /// Scan grades n ≤ max-n
        #[arg(long = "max-n", default_value_t = 2000)]
        max_n: i64,
    },
    /// Sturm-certified congruence check (7AB, 14AB, 15AB, 21AB, 23AB, 11A)
    SturmVerify {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long)]
        class: String,
        /// JSON file with per-class recipe overrides
        #[arg(long = "recipe-file")]
        recipe_file: Option<PathBuf>,
    },
    /// Decompose graded module pieces K_n into M24 irreducibles
    Decompose {
        #[command(flatten)]
        common: CommonOpts,
        /// Single grade n
        #[arg(long, allow_hyphen_values = true, conflicts_with = "range")]
        n: Option<i64>,
        /// Inclusive grade range LO..HI, e.g. -1..63
        #[arg(long)]
        range: Option<String>,
    },
    /// Multiplicity-parity and conjectured-pair checks for n = ℓm² ≤ max-n
    ConjectureCheck {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long = "max-n", default_value_t = 1000)]
        max_n: i64,
    },
    /// Validate the data directory (character table, cusp forms)
    ValidateData {
        #[command(flatten)]
        common: CommonOpts,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(all_passed) => {
            if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

struct Output {
    format: Format,
    sink: Box<dyn std::io::Write>,
}

impl Output {
    fn new(common: &CommonOpts) -> Result<Self, String> {
        let sink: Box<dyn std::io::Write> = match &common.out {
            Some(path) => Box::new(
                std::fs::File::create(path)
                    .map_err(|e| format!("cannot create {}: {e}", path.display()))?,
            ),
            None => Box::new(std::io::stdout()),
        };
        Ok(Output {
            format: common.format,
            sink,
        })
    }

    fn emit_json<T: Serialize>(&mut self, value: &T) -> Result<(), String> {
        let text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
        writeln!(self.sink, "{text}").map_err(|e| e.to_string())
    }

    fn line(&mut self, text: &str) -> Result<(), String> {
        writeln!(self.sink, "{text}").map_err(|e| e.to_string())
    }
}

fn load_registry(data_dir: &Path) -> (McKayRegistry, Option<String>) {
    let cusp_path = data_dir.join("f23_cusp_forms.json");
    match load_cusp_forms(&cusp_path) {
        Ok(set) => (McKayRegistry::with_cusp_data(set), None),
        Err(e) => (
            McKayRegistry::new(),
            Some(format!("cusp-form data unavailable ({e}); 23AB is skipped")),
        ),
    }
}

fn load_table(data_dir: &Path) -> Result<CharacterTable, String> {
    CharacterTable::load(&data_dir.join("m24_character_table.json")).map_err(|e| e.to_string())
}

fn parse_class(name: &str) -> Result<ClassId, String> {
    name.parse::<ClassId>().map_err(|e| e.to_string())
}

fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Expand {
            common,
            class,
            order,
            modulus,
        } => {
            let class = parse_class(&class)?;
            let (registry, notice) = load_registry(&common.data_dir);
            let mut out = Output::new(&common)?;
            let series = registry
                .build(class, Exponent::from_eighths(order + 1))
                .map_err(|e| e.to_string())?;
            let _ = notice; // expand of non-23AB classes works without data
            #[derive(Serialize)]
            struct Term {
                n: i64,
                exponent: String,
                coefficient: String,
            }
            let mut terms = Vec::new();
            let mut n = -1i64;
            while n <= order {
                let e = Exponent::from_eighths(n);
                let c = series.coefficient_at(e).map_err(|x| x.to_string())?;
                let int = c.as_integer().expect("integral");
                let shown = match modulus {
                    Some(m) => {
                        let mm = moonshine_core::num::BigInt::from(m);
                        (((&int % &mm) + &mm) % &mm).to_string()
                    }
                    None => int.to_string(),
                };
                terms.push(Term {
                    n,
                    exponent: format!("{n}/8"),
                    coefficient: shown,
                });
                n = if n == -1 { 7 } else { n + 8 };
            }
            match out.format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct Expansion {
                        class: String,
                        order: i64,
                        modulus: Option<u64>,
                        terms: Vec<Term>,
                    }
                    out.emit_json(&Expansion {
                        class: class.name().into(),
                        order,
                        modulus,
                        terms,
                    })?;
                }
                Format::Csv => {
                    out.line("n,exponent,coefficient")?;
                    for t in terms {
                        out.line(&format!("{},{},{}", t.n, t.exponent, t.coefficient))?;
                    }
                }
                Format::Plain => {
                    out.line(&format!("Sigma_{class} through q^({order}/8):"))?;
                    for t in terms {
                        out.line(&format!("  q^({}): {}", t.exponent, t.coefficient))?;
                    }
                }
            }
            Ok(true)
        }

        Command::ParityCheck {
            common,
            class,
            max_n,
        } => {
            let (registry, notice) = load_registry(&common.data_dir);
            let mut out = Output::new(&common)?;
            let classes: Vec<ClassId> = match class {
                Some(name) => vec![parse_class(&name)?],
                None => ALL_CLASSES.to_vec(),
            };
            let mut certs: Vec<ParityCertificate> = Vec::new();
            let mut skipped: Vec<String> = Vec::new();
            for c in classes {
                if c == ClassId::C23AB && !registry.has_cusp_data() {
                    skipped.push(c.name().into());
                    continue;
                }
                certs.push(parity_scan(&registry, c, max_n).map_err(|e| e.to_string())?);
            }
            let all_passed = certs.iter().all(|c| c.passed());
            match out.format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct Report {
                        certificates: Vec<ParityCertificate>,
                        skipped: Vec<String>,
                    }
                    out.emit_json(&Report {
                        certificates: certs,
                        skipped,
                    })?;
                }
                Format::Csv => {
                    out.line("class,mode,modulus,checked_through,verdict,first_failure")?;
                    for c in &certs {
                        out.line(&format!(
                            "{},{},{},{},{},{}",
                            c.class,
                            c.mode,
                            c.modulus,
                            c.checked_through,
                            c.verdict,
                            c.first_failure.map(|f| f.to_string()).unwrap_or_default()
                        ))?;
                    }
                }
                Format::Plain => {
                    for c in &certs {
                        out.line(&format!(
                            "{}: {} (empirical scan, grades n <= {})",
                            c.class, c.verdict, c.checked_through
                        ))?;
                    }
                    for s in &skipped {
                        out.line(&format!(
                            "{s}: skipped ({})",
                            notice.as_deref().unwrap_or("no data")
                        ))?;
                    }
                }
            }
            Ok(all_passed)
        }

        Command::SturmVerify {
            common,
            class,
            recipe_file,
        } => {
            let class = parse_class(&class)?;
            let (registry, _) = load_registry(&common.data_dir);
            let overrides: Option<BTreeMap<ClassId, TestRecipe>> = match recipe_file {
                Some(path) => Some(load_recipe_overrides(&path).map_err(|e| e.to_string())?),
                None => None,
            };
            let mut out = Output::new(&common)?;
            let cert =
                sturm_verify(&registry, class, overrides.as_ref()).map_err(|e| e.to_string())?;
            match out.format {
                Format::Json => out.emit_json(&cert)?,
                Format::Csv => {
                    out.line("class,mode,modulus,level,weight,index,bound,verdict,first_failure")?;
                    out.line(&format!(
                        "{},{},{},{},{},{},{},{},{}",
                        cert.class,
                        cert.mode,
                        cert.modulus,
                        cert.level.unwrap_or_default(),
                        cert.weight.unwrap_or_default(),
                        cert.index.unwrap_or_default(),
                        cert.bound.unwrap_or_default(),
                        cert.verdict,
                        cert.first_failure
                            .map(|f| f.to_string())
                            .unwrap_or_default()
                    ))?;
                }
                Format::Plain => {
                    out.line(&format!(
                        "{}: {} (sturm mode: coefficients = 0 mod {} checked for m <= {}; \
                         level {}, index {}; holds for all m)",
                        cert.class,
                        cert.verdict,
                        cert.modulus,
                        cert.bound.unwrap_or_default(),
                        cert.level.unwrap_or_default(),
                        cert.index.unwrap_or_default()
                    ))?;
                }
            }
            Ok(cert.passed())
        }

        Command::Decompose { common, n, range } => {
            let (registry, notice) = load_registry(&common.data_dir);
            if let Some(msg) = &notice {
                eprintln!("warning: {msg}");
            }
            if !registry.has_cusp_data() {
                return Err(
                    "decomposition needs all 26 class traces; cusp-form data is required".into(),
                );
            }
            let table = load_table(&common.data_dir)?;
            let grades: Vec<i64> = match (n, range) {
                (Some(n), None) => vec![n],
                (None, Some(spec)) => {
                    let (lo, hi) = spec
                        .split_once("..")
                        .ok_or_else(|| format!("bad range {spec:?}; expected LO..HI"))?;
                    let lo: i64 = lo.parse().map_err(|_| format!("bad range start {lo:?}"))?;
                    let hi: i64 = hi.parse().map_err(|_| format!("bad range end {hi:?}"))?;
                    (lo..=hi).collect()
                }
                _ => return Err("pass exactly one of --n or --range".into()),
            };
            let mut out = Output::new(&common)?;
            #[derive(Serialize)]
            struct Row {
                n: i64,
                on_support: bool,
                multiplicities: Vec<String>,
                pair_structure_ok: bool,
            }
            let mut rows = Vec::new();
            let mut all_ok = true;
            for g in grades {
                if g < -1 {
                    return Err(format!("grade {g} out of range (need n = -1 or n >= 0)"));
                }
                let mv = decompose_grade(&registry, &table, g).map_err(|e| e.to_string())?;
                let rep = check_pair_structure(&table, &mv);
                all_ok &= rep.ok();
                rows.push(Row {
                    n: g,
                    on_support: grade_on_support(g),
                    multiplicities: mv.m.iter().map(|m| m.to_string()).collect(),
                    pair_structure_ok: rep.ok(),
                });
            }
            match out.format {
                Format::Json => out.emit_json(&rows)?,
                Format::Csv => {
                    out.line("n,chi,degree,multiplicity")?;
                    for row in &rows {
                        for (i, m) in row.multiplicities.iter().enumerate() {
                            if m != "0" {
                                out.line(&format!(
                                    "{},{},{},{}",
                                    row.n,
                                    i + 1,
                                    table.degree(i),
                                    m
                                ))?;
                            }
                        }
                    }
                }
                Format::Plain => {
                    for row in &rows {
                        if row.multiplicities.iter().all(|m| m == "0") {
                            out.line(&format!(
                                "K_{} = 0{}",
                                row.n,
                                if row.on_support {
                                    ""
                                } else {
                                    " (grade off support)"
                                }
                            ))?;
                            continue;
                        }
                        let parts: Vec<String> = row
                            .multiplicities
                            .iter()
                            .enumerate()
                            .filter(|(_, m)| m.as_str() != "0")
                            .map(|(i, m)| format!("{m}*chi{} (deg {})", i + 1, table.degree(i)))
                            .collect();
                        out.line(&format!("K_{} = {}", row.n, parts.join(" + ")))?;
                    }
                }
            }
            Ok(all_ok)
        }

        Command::ConjectureCheck { common, max_n } => {
            let (registry, notice) = load_registry(&common.data_dir);
            if let Some(msg) = &notice {
                eprintln!("warning: {msg}");
            }
            if !registry.has_cusp_data() {
                return Err(
                    "conjecture checks need all 26 class traces; cusp-form data is required".into(),
                );
            }
            let table = load_table(&common.data_dir)?;
            let mut out = Output::new(&common)?;
            #[derive(Serialize)]
            struct Check {
                n: i64,
                ell: i64,
                m: i64,
                parity_ok: bool,
                presence_ok: bool,
                detail: String,
            }
            let mut checks = Vec::new();
            let presence =
                check_conjectured_pairs(&registry, &table, max_n).map_err(|e| e.to_string())?;
            for p in presence {
                let mv = decompose_grade(&registry, &table, p.n).map_err(|e| e.to_string())?;
                let app = check_multiplicity_parity(&table, &mv).map_err(|e| e.to_string())?;
                checks.push(Check {
                    n: p.n,
                    ell: p.ell,
                    m: p.m,
                    parity_ok: app.ok(),
                    presence_ok: p.present,
                    detail: p.detail,
                });
            }
            let all_ok = checks.iter().all(|c| c.parity_ok && c.presence_ok);
            match out.format {
                Format::Json => out.emit_json(&checks)?,
                Format::Csv => {
                    out.line("n,ell,m,parity_ok,presence_ok")?;
                    for c in &checks {
                        out.line(&format!(
                            "{},{},{},{},{}",
                            c.n, c.ell, c.m, c.parity_ok, c.presence_ok
                        ))?;
                    }
                }
                Format::Plain => {
                    if checks.is_empty() {
                        out.line(&format!(
                            "no qualifying grades n = l*m^2 <= {max_n}; vacuous pass"
                        ))?;
                    }
                    for c in &checks {
                        out.line(&format!(
                            "n = {} (l = {}, m = {}): multiplicity parity {}, conjectured pair {} [{}]",
                            c.n,
                            c.ell,
                            c.m,
                            if c.parity_ok { "pass" } else { "FAIL" },
                            if c.presence_ok { "present" } else { "MISSING" },
                            c.detail
                        ))?;
                    }
                    out.line(&format!("checked all qualifying n <= {max_n}"))?;
                }
            }
            Ok(all_ok)
        }

        Command::ValidateData { common } => {
            let mut out = Output::new(&common)?;
            let mut ok = true;
            match load_table(&common.data_dir) {
                Ok(table) => {
                    out.line(&format!(
                        "character table: ok ({} classes, group order {}, exact orthogonality verified)",
                        table.classes.len(),
                        table.group_order
                    ))?;
                }
                Err(e) => {
                    out.line(&format!("character table: INVALID ({e})"))?;
                    ok = false;
                }
            }
            let cusp_path = common.data_dir.join("f23_cusp_forms.json");
            if !cusp_path.exists() {
                out.line("cusp forms: missing (warning: 23AB functionality unavailable)")?;
            } else {
                match load_cusp_forms(&cusp_path) {
                    Ok(set) => {
                        let names: Vec<&str> = set.names().collect();
                        out.line(&format!("cusp forms: ok ({})", names.join(", ")))?;
                        let registry = McKayRegistry::with_cusp_data(set);
                        match registry.build(ClassId::C23AB, Exponent::from_eighths(1608)) {
                            Ok(_) => {
                                out.line("23AB construction: ok (integral, leading -2 q^(-1/8))")?
                            }
                            Err(e) => {
                                out.line(&format!("23AB construction: FAILED ({e})"))?;
                                ok = false;
                            }
                        }
                    }
                    Err(e) => {
                        out.line(&format!("cusp forms: INVALID ({e})"))?;
                        ok = false;
                    }
                }
            }
            if ok {
                Ok(true)
            } else {
                Err("data validation failed".into())
            }
        }
    }
}
