//! Command-line front end. The binary only forwards `std::env::args` to
//! [`run`], which keeps every command testable in-process.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::codes::{
    canonical_generators, cardinality, dual, extract_generators, singleton_check_mixed, spanning_set,
    GeneratorMatrixCode, SingletonStatus,
};
use crate::distance::{
    codeword_count, min_distance_exact, min_distance_upper, WeightProfile, DEFAULT_BUDGET,
};
use crate::doc::{BuiltCode, CodeDefinition, MatrixDocument};
use crate::error::{Error, Result};
use crate::gf::{FieldTower, Level};
use crate::gray::{image_of, shift_invariance_check};
use crate::lcd::{hull, is_lcd, lcd_pipeline, LcdCertificate};
use crate::tables::{verify_all, TableId, VerificationReport, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "fqcodes", version, about = "Additive cyclic codes over F_q F_{q^2}")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Path to a JSON definition (or matrix) document.
    #[arg(long, conflicts_with = "def")]
    pub input: Option<PathBuf>,
    /// Inline JSON document.
    #[arg(long)]
    pub def: Option<String>,
    /// Maximum number of codewords enumerated by the exact distance engine.
    #[arg(long, default_value_t = DEFAULT_BUDGET, value_parser = parse_budget)]
    pub budget: u128,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Information-set samples used when the budget is exceeded.
    #[arg(long, default_value_t = 64)]
    pub samples: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Enforce only the divisibility conditions and work with the module
    /// closure of the given generators; other violated conditions are listed.
    #[arg(long)]
    pub relaxed: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Block length, dimension, cardinality, spanning set and distance.
    Params(Common),
    /// The dual code and its generators.
    Dual(Common),
    /// The Gray image, its parameters and structure.
    Gray(Common),
    /// LCD certificate for a raw generator matrix.
    Lcd(Common),
    /// Verify the reference tables.
    Tables {
        /// 1, 2, 3 or all.
        #[arg(long, default_value = "all")]
        id: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET, value_parser = parse_budget)]
        budget: u128,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 64)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Run the heavy rows (raises the budget to 3^18).
        #[arg(long)]
        long: bool,
        /// Write the report here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn parse_budget(s: &str) -> std::result::Result<u128, String> {
    match s.parse::<u128>() {
        Ok(0) => Err("budget must be at least 1".into()),
        Ok(b) => Ok(b),
        Err(e) => Err(e.to_string()),
    }
}

/// Outcome of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, stderr: String) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

enum Failure {
    Usage(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn load(common: &Common) -> std::result::Result<String, Failure> {
    match (&common.input, &common.def) {
        (Some(path), _) => {
            std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
        }
        (None, Some(text)) => Ok(text.clone()),
        (None, None) => Err(Failure::Usage("one of --input or --def is required".into())),
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::fail(EXIT_USAGE, text)
            } else {
                Outcome::ok(text)
            };
        }
    };
    let result = match &cli.command {
        Command::Params(c) => load(c).and_then(|t| Ok(cmd_params(&CodeDefinition::from_json(&t)?, c)?)),
        Command::Dual(c) => load(c).and_then(|t| Ok(cmd_dual(&CodeDefinition::from_json(&t)?, c)?)),
        Command::Gray(c) => load(c).and_then(|t| Ok(cmd_gray(&CodeDefinition::from_json(&t)?, c)?)),
        Command::Lcd(c) => load(c).and_then(|t| Ok(cmd_lcd(&MatrixDocument::from_json(&t)?, c)?)),
        Command::Tables {
            id,
            budget,
            seed,
            samples,
            format,
            long,
            output,
        } => {
            let opts = VerifyOptions {
                budget: *budget,
                seed: *seed,
                samples: *samples,
                long: *long,
            };
            return cmd_tables(id, &opts, *format, output.as_ref());
        }
    };
    match result {
        Ok(out) => Outcome::ok(out),
        Err(Failure::Usage(m)) => Outcome::fail(EXIT_USAGE, format!("error: {m}\n")),
        Err(Failure::Io(m)) => Outcome::fail(EXIT_IO, format!("error: {m}\n")),
    }
}

fn build(def: &CodeDefinition, relaxed: bool) -> Result<(BuiltCode, Vec<String>)> {
    if relaxed {
        def.build_relaxed()
    } else {
        Ok((def.build()?, Vec::new()))
    }
}

fn warnings(s: &mut String, violated: &[String]) {
    for v in violated {
        let _ = writeln!(s, "warning: generators are not canonical, condition fails: {v}");
    }
}

fn render_row(tower: &FieldTower, alpha: usize, beta: usize, row: &[u16]) -> String {
    let a: Vec<String> = row[..alpha].iter().map(|&x| tower.render(Level::Base, x)).collect();
    let b: Vec<String> = (0..beta)
        .map(|j| {
            let z = tower.compose(
                crate::gf::FqElem(row[alpha + 2 * j]),
                crate::gf::FqElem(row[alpha + 2 * j + 1]),
            );
            tower.render(Level::Ext, z)
        })
        .collect();
    match (alpha, beta) {
        (_, 0) => format!("({})", a.join(" ")),
        (0, _) => format!("({})", b.join(" ")),
        _ => format!("({} | {})", a.join(" "), b.join(" ")),
    }
}

fn render_matrix(code: &GeneratorMatrixCode) -> Vec<String> {
    code.matrix()
        .rows()
        .iter()
        .map(|r| render_row(code.tower(), code.alpha(), code.beta(), r))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceReport {
    pub value: Option<usize>,
    /// `exact`, `bound` or `undefined` (zero code).
    pub mode: String,
    pub seed: Option<u64>,
}

fn distance_report(code: &GeneratorMatrixCode, profile: &WeightProfile, c: &Common) -> Result<DistanceReport> {
    if code.rank() == 0 {
        return Ok(DistanceReport {
            value: None,
            mode: "undefined".into(),
            seed: None,
        });
    }
    let r = if codeword_count(code) <= c.budget {
        min_distance_exact(code, profile, c.budget)?
    } else {
        min_distance_upper(code, profile, c.samples, c.seed)?
    };
    Ok(DistanceReport {
        value: r.value,
        mode: if r.exact { "exact" } else { "bound" }.into(),
        seed: r.seed,
    })
}

fn show_distance(d: &DistanceReport) -> String {
    match (d.value, d.mode.as_str()) {
        (Some(v), "bound") => format!("<= {v} (bound, seed {})", d.seed.unwrap_or_default()),
        (Some(v), m) => format!("{v} ({m})"),
        (None, _) => "undefined (zero code)".into(),
    }
}

fn singleton_text(s: Result<SingletonStatus>) -> String {
    match s {
        Ok(SingletonStatus::Attains) => "attains".into(),
        Ok(SingletonStatus::Slack(k)) => format!("slack {k}"),
        Err(e) => format!("n/a ({e})"),
    }
}

fn csv_pairs(pairs: &[(&str, String)]) -> String {
    let esc = |s: &str| {
        if s.contains([',', '"', '\n']) {
            format!("\"{}\"", s.replace('"', "\"\""))
        } else {
            s.to_string()
        }
    };
    let head: Vec<String> = pairs.iter().map(|(k, _)| esc(k)).collect();
    let vals: Vec<String> = pairs.iter().map(|(_, v)| esc(v)).collect();
    format!("{}\n{}\n", head.join(","), vals.join(","))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsReport {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub conditions_violated: Vec<String>,
    pub q: usize,
    pub alpha: usize,
    pub beta: usize,
    pub dimension: usize,
    pub formula_exponent: usize,
    pub actual_exponent: usize,
    pub spanning_set_sizes: Vec<usize>,
    pub spans_ok: bool,
    /// Mixed weight: one per nonzero F_q or F_{q²} coordinate.
    pub distance: DistanceReport,
    /// Hamming distance of the Gray image `Φ(C)`.
    pub image_distance: DistanceReport,
    pub singleton: String,
}

pub fn params_report(def: &CodeDefinition, c: &Common) -> Result<ParamsReport> {
    let (built, conditions_violated) = build(def, c.relaxed)?;
    let closure = built.closure();
    let (formula_exponent, sizes, spans_ok) = match &built {
        BuiltCode::Mixed(m) => {
            let s = spanning_set(m);
            (cardinality(m).formula_exponent, s.sizes.to_vec(), s.spans_ok)
        }
        BuiltCode::Pure(p) => {
            let n = p.n();
            let sizes = vec![
                n - p.g().degree().unwrap_or(n),
                n - p.k().degree().unwrap_or(n),
            ];
            let f = p.formula_exponent();
            (f, sizes, f == closure.rank())
        }
    };
    let distance = distance_report(closure, &closure.mixed_profile(), c)?;
    let image = image_of(closure);
    let image_distance = distance_report(image.base(), &WeightProfile::singletons(image.length()), c)?;
    let singleton = match (distance.value, distance.mode.as_str()) {
        (Some(d), "exact") => singleton_text(singleton_check_mixed(def.alpha, def.beta, closure.rank(), d)),
        _ => "n/a".into(),
    };
    Ok(ParamsReport {
        conditions_violated,
        q: def.q,
        alpha: def.alpha,
        beta: def.beta,
        dimension: closure.rank(),
        formula_exponent,
        actual_exponent: closure.rank(),
        spanning_set_sizes: sizes,
        spans_ok,
        distance,
        image_distance,
        singleton,
    })
}

fn cmd_params(def: &CodeDefinition, c: &Common) -> Result<String> {
    let r = params_report(def, c)?;
    Ok(match c.format {
        Format::Json => serde_json::to_string_pretty(&r).expect("serializable") + "\n",
        Format::Csv => csv_pairs(&[
            ("q", r.q.to_string()),
            ("alpha", r.alpha.to_string()),
            ("beta", r.beta.to_string()),
            ("dimension", r.dimension.to_string()),
            ("formula_size", format!("{}^{}", r.q, r.formula_exponent)),
            ("actual_size", format!("{}^{}", r.q, r.actual_exponent)),
            ("spans_ok", r.spans_ok.to_string()),
            ("d", r.distance.value.map(|v| v.to_string()).unwrap_or_default()),
            ("d_mode", r.distance.mode.clone()),
            ("image_d", r.image_distance.value.map(|v| v.to_string()).unwrap_or_default()),
            ("image_d_mode", r.image_distance.mode.clone()),
            ("singleton", r.singleton.clone()),
            ("conditions_violated", r.conditions_violated.join("; ")),
        ]),
        Format::Text => {
            let mut s = String::new();
            warnings(&mut s, &r.conditions_violated);
            let _ = writeln!(s, "block length: ({}, {}) over q = {}", r.alpha, r.beta, r.q);
            let _ = writeln!(s, "dimension over F_{}: {}", r.q, r.dimension);
            let _ = writeln!(
                s,
                "cardinality: formula {}^{}, actual {}^{}{}",
                r.q,
                r.formula_exponent,
                r.q,
                r.actual_exponent,
                if r.formula_exponent == r.actual_exponent { "" } else { " (formula disagrees)" }
            );
            let _ = writeln!(s, "spanning set sizes: {:?}, spans: {}", r.spanning_set_sizes, r.spans_ok);
            let _ = writeln!(s, "minimum distance: {}", show_distance(&r.distance));
            let _ = writeln!(s, "Gray image distance: {}", show_distance(&r.image_distance));
            let _ = writeln!(s, "singleton: {}", r.singleton);
            s
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualReport {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub conditions_violated: Vec<String>,
    pub dimension: usize,
    pub cyclic: bool,
    /// `s, l, g, h, k` (mixed) or `g, h, k` (pure).
    pub generators: Vec<String>,
    pub matrix: Vec<String>,
}

pub fn dual_report(def: &CodeDefinition, relaxed: bool) -> Result<DualReport> {
    let (built, conditions_violated) = build(def, relaxed)?;
    let d = dual(built.closure());
    let tower = built.tower();
    let generators = if def.alpha == 0 {
        let (g, h, k) = canonical_generators(&d)?;
        vec![g.render(tower), h.render(tower), k.render(tower)]
    } else {
        extract_generators(&d)?.render(tower).to_vec()
    };
    Ok(DualReport {
        conditions_violated,
        dimension: d.rank(),
        cyclic: d.is_cyclic(),
        generators,
        matrix: render_matrix(&d),
    })
}

fn cmd_dual(def: &CodeDefinition, c: &Common) -> Result<String> {
    let r = dual_report(def, c.relaxed)?;
    let names: &[&str] = if def.alpha == 0 { &["g", "h", "k"] } else { &["s", "l", "g", "h", "k"] };
    Ok(match c.format {
        Format::Json => serde_json::to_string_pretty(&r).expect("serializable") + "\n",
        Format::Csv => {
            let mut pairs = vec![("dimension", r.dimension.to_string()), ("cyclic", r.cyclic.to_string())];
            pairs.extend(names.iter().copied().zip(r.generators.iter().cloned()));
            pairs.push(("conditions_violated", r.conditions_violated.join("; ")));
            csv_pairs(&pairs)
        }
        Format::Text => {
            let mut s = String::new();
            warnings(&mut s, &r.conditions_violated);
            let _ = writeln!(s, "dual dimension: {}", r.dimension);
            let _ = writeln!(s, "cyclic: {}", r.cyclic);
            for (n, g) in names.iter().zip(&r.generators) {
                let _ = writeln!(s, "{n}(x) = {g}");
            }
            let _ = writeln!(s, "generator matrix:");
            for row in &r.matrix {
                let _ = writeln!(s, "  {row}");
            }
            s
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrayReport {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub conditions_violated: Vec<String>,
    pub n: usize,
    pub k: usize,
    pub distance: DistanceReport,
    pub classification: String,
    pub sigma_invariant: bool,
    pub lcd: bool,
    pub matrix: Vec<String>,
}

pub fn gray_report(def: &CodeDefinition, c: &Common) -> Result<GrayReport> {
    let (built, conditions_violated) = build(def, c.relaxed)?;
    let image = image_of(built.closure());
    let base = image.base();
    Ok(GrayReport {
        conditions_violated,
        n: image.length(),
        k: image.dimension(),
        distance: distance_report(base, &WeightProfile::singletons(image.length()), c)?,
        classification: image.classification().to_string(),
        sigma_invariant: shift_invariance_check(&image),
        lcd: is_lcd(base),
        matrix: render_matrix(base),
    })
}

fn cmd_gray(def: &CodeDefinition, c: &Common) -> Result<String> {
    let r = gray_report(def, c)?;
    Ok(match c.format {
        Format::Json => serde_json::to_string_pretty(&r).expect("serializable") + "\n",
        Format::Csv => csv_pairs(&[
            ("n", r.n.to_string()),
            ("k", r.k.to_string()),
            ("d", r.distance.value.map(|v| v.to_string()).unwrap_or_default()),
            ("d_mode", r.distance.mode.clone()),
            ("classification", r.classification.clone()),
            ("sigma_invariant", r.sigma_invariant.to_string()),
            ("lcd", r.lcd.to_string()),
            ("conditions_violated", r.conditions_violated.join("; ")),
        ]),
        Format::Text => {
            let mut s = String::new();
            warnings(&mut s, &r.conditions_violated);
            let d = r.distance.value.map(|v| v.to_string()).unwrap_or_else(|| "-".into());
            let _ = writeln!(s, "Gray image: [{}, {}, {}] ({})", r.n, r.k, d, r.distance.mode);
            let _ = writeln!(s, "classification: {}", r.classification);
            let _ = writeln!(s, "sigma-invariant: {}", r.sigma_invariant);
            let _ = writeln!(s, "LCD: {}", r.lcd);
            let _ = writeln!(s, "generator matrix (rref):");
            for row in &r.matrix {
                let _ = writeln!(s, "  {row}");
            }
            s
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LcdReport {
    pub certificate: LcdCertificate,
    pub n: usize,
    pub k: usize,
    pub distance: DistanceReport,
    pub lcd: bool,
    pub hull_dimension: usize,
}

pub fn lcd_report(doc: &MatrixDocument, c: &Common) -> Result<LcdReport> {
    let tower = doc.tower()?;
    let words = doc.words(&tower)?;
    let certificate = lcd_pipeline(&tower, &words)?;
    let code = GeneratorMatrixCode::from_words(&tower, doc.alpha, doc.beta, &words)?;
    let image = image_of(&code);
    Ok(LcdReport {
        certificate,
        n: image.length(),
        k: image.dimension(),
        distance: distance_report(image.base(), &WeightProfile::singletons(image.length()), c)?,
        lcd: is_lcd(image.base()),
        hull_dimension: hull(image.base()).rank(),
    })
}

fn cmd_lcd(doc: &MatrixDocument, c: &Common) -> Result<String> {
    let r = lcd_report(doc, c)?;
    let cert = &r.certificate;
    let conclusion = match cert.conclusion {
        crate::lcd::LcdConclusion::LcdGuaranteed => "LCD guaranteed",
        crate::lcd::LcdConclusion::Inapplicable => "inapplicable",
    };
    Ok(match c.format {
        Format::Json => serde_json::to_string_pretty(&r).expect("serializable") + "\n",
        Format::Csv => csv_pairs(&[
            ("c_alpha_self_orthogonal", cert.c_alpha_self_orthogonal.to_string()),
            ("g_beta_rows_independent", cert.g_beta_rows_independent.to_string()),
            ("phi_c_beta_lcd", cert.phi_c_beta_lcd.to_string()),
            ("conclusion", conclusion.into()),
            ("hull_dimension", r.hull_dimension.to_string()),
            ("n", r.n.to_string()),
            ("k", r.k.to_string()),
            ("d", r.distance.value.map(|v| v.to_string()).unwrap_or_default()),
        ]),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "C_alpha self-orthogonal: {}", cert.c_alpha_self_orthogonal);
            let _ = writeln!(s, "G_beta rows independent over F_q: {}", cert.g_beta_rows_independent);
            let _ = writeln!(s, "phi(C_beta) LCD: {}", cert.phi_c_beta_lcd);
            let _ = writeln!(s, "conclusion: {conclusion}");
            let _ = writeln!(s, "observed hull dimension: {}", r.hull_dimension);
            let d = r.distance.value.map(|v| v.to_string()).unwrap_or_else(|| "-".into());
            let _ = writeln!(s, "Phi(C): [{}, {}, {}], LCD: {}", r.n, r.k, d, r.lcd);
            s
        }
    })
}

/// `0` when every exactly-checkable claim holds, `1` otherwise.
pub fn report_exit_code(report: &VerificationReport) -> i32 {
    if report.ok() {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    }
}

fn cmd_tables(id: &str, opts: &VerifyOptions, format: Format, output: Option<&PathBuf>) -> Outcome {
    let ids = match TableId::parse_list(id) {
        Ok(ids) => ids,
        Err(e) => return Outcome::fail(EXIT_USAGE, format!("error: {e} (expected 1, 2, 3 or all)\n")),
    };
    let report = verify_all(&ids, opts);
    let text = match format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json() + "\n",
        Format::Csv => report.to_csv(),
    };
    let code = report_exit_code(&report);
    match output {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Outcome {
                code,
                stdout: String::new(),
                stderr: String::new(),
            },
            Err(e) => Outcome::fail(EXIT_IO, format!("error: {}: {e}\n", path.display())),
        },
        None => Outcome {
            code,
            stdout: text,
            stderr: String::new(),
        },
    }
}
