//! `wflag`: command-line front end for the flag-variety combinatorics in
//! `wflag-core`.

mod cache;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use wflag_core::fibers::{
    euler_table_bruteforce, fiber_euler_parahoric_bruteforce, fiber_poincare_parahoric, fiber_table, multiplicities,
    multiplicities_via_inverse_kl,
};
use wflag_core::{
    demazure_fold, parse_word, DecompositionReport, DemazureMapSpec, Error, KlTable, ParabolicSubset, WeylElement,
    WeylGroup,
};

use cache::CacheHandle;

#[derive(Parser, Debug)]
#[command(name = "wflag", version, about = "Weyl group, Kazhdan-Lusztig and Demazure-map fiber computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(clap::Args, Debug)]
struct Opts {
    /// Group descriptor, e.g. A2, B3, G2~
    #[arg(long, global = true)]
    group: Option<String>,
    /// Comma-separated generator indices; 0 is the affine reflection
    #[arg(long, global = true, allow_hyphen_values = true)]
    word: Option<String>,
    #[arg(long, global = true)]
    u: Option<String>,
    #[arg(long, global = true)]
    w: Option<String>,
    /// Parahoric subset J as comma-separated indices
    #[arg(long, global = true)]
    para: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// KL cache file
    #[arg(long, global = true, env = "WFLAG_CACHE")]
    cache: Option<PathBuf>,
    /// Cross-validate against the independent oracles
    #[arg(long, global = true)]
    check: bool,
    /// Maximal element length for interval computations
    #[arg(long, global = true)]
    cap: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Root datum facts
    Info,
    /// Demazure product of a word
    Demazure,
    /// Kazhdan-Lusztig polynomial P_{u,w}
    Kl,
    /// Fiber polynomials of the Demazure map of a word
    Fibers,
    /// Decomposition multiplicities and their checks
    Decompose,
    /// Supports of the decomposition
    Supports,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Text,
}

enum Failure {
    Usage(String),
    Cap(String),
    Verification { output: Option<String>, reason: String },
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Cap(_) => 3,
            Failure::Verification { .. } => 4,
            Failure::Io(_) => 1,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } => Failure::Cap(e.to_string()),
            Error::Verification(_) => Failure::Verification {
                output: None,
                reason: e.to_string(),
            },
            _ => Failure::Usage(e.to_string()),
        }
    }
}

struct Ctx {
    group: WeylGroup,
    opts: Opts,
}

impl Ctx {
    fn word(&self) -> Result<Vec<usize>, Failure> {
        let raw = self.opts.word.as_deref().ok_or_else(|| Failure::Usage("--word is required".into()))?;
        Ok(parse_word(raw)?)
    }

    fn element(&self, raw: Option<&str>, flag: &str) -> Result<WeylElement, Failure> {
        let raw = raw.ok_or_else(|| Failure::Usage(format!("--{flag} is required")))?;
        Ok(self.group.parse(raw)?)
    }

    fn para(&self) -> Result<Option<ParabolicSubset>, Failure> {
        match self.opts.para.as_deref() {
            None => Ok(None),
            Some(raw) => Ok(Some(self.group.parabolic(parse_word(raw)?)?)),
        }
    }
}

fn render(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).unwrap();
    s.push('\n');
    s
}

fn sorted(group: &WeylGroup, elems: impl IntoIterator<Item = WeylElement>) -> Vec<WeylElement> {
    let mut v: Vec<WeylElement> = elems.into_iter().collect();
    group.sort_elements(&mut v);
    v
}

fn cmd_info(ctx: &Ctx) -> Result<String, Failure> {
    let g = &ctx.group;
    let d = g.datum();
    let omega = if d.is_affine() { d.fundamental_group_order() } else { 1 };
    let value = json!({
        "group": g.kind().to_string(),
        "rank": g.rank(),
        "affine": d.is_affine(),
        "positive_roots": d.num_positive_roots(),
        "generators": g.generators(),
        "omega_order": omega,
    });
    Ok(match ctx.opts.format {
        Format::Json => render(&value),
        Format::Csv => format!(
            "group,rank,affine,positive_roots,generators,omega_order\n{},{},{},{},\"{}\",{}\n",
            g.kind(),
            g.rank(),
            d.is_affine(),
            d.num_positive_roots(),
            wflag_core::format_word(&g.generators()),
            omega
        ),
        Format::Text => format!(
            "group {}\nrank {}\naffine {}\npositive roots {}\ngenerators {}\nomega order {}\n",
            g.kind(),
            g.rank(),
            d.is_affine(),
            d.num_positive_roots(),
            wflag_core::format_word(&g.generators()),
            omega
        ),
    })
}

fn cmd_demazure(ctx: &Ctx) -> Result<String, Failure> {
    let g = &ctx.group;
    let word = ctx.word()?;
    let product = demazure_fold(g, &word)?;
    if ctx.opts.check {
        let mut acc = g.identity();
        for &s in &word {
            let next = g.multiply(&acc, &g.simple_reflection(s)?)?;
            if g.length(&next) > g.length(&acc) {
                acc = next;
            }
        }
        if acc != product {
            return Err(Failure::Verification {
                output: None,
                reason: "letterwise 0-Hecke product disagrees with the fold".into(),
            });
        }
    }
    let w = g.word_string(&product);
    Ok(match ctx.opts.format {
        Format::Json => render(&json!({"product": w, "length": g.length(&product)})),
        Format::Csv => format!("product,length\n\"{}\",{}\n", w, g.length(&product)),
        Format::Text => format!("{w}\n"),
    })
}

fn cmd_kl(ctx: &Ctx, table: &KlTable) -> Result<String, Failure> {
    let u = ctx.element(ctx.opts.u.as_deref(), "u")?;
    let w = ctx.element(ctx.opts.w.as_deref(), "w")?;
    let p = table.kl_polynomial(&u, &w)?;
    let mut failure = None;
    if ctx.opts.check {
        let q = table.kl_polynomial_via_r(&u, &w)?;
        if q != p {
            failure = Some(format!("R-polynomial route gives {q}, recursion gives {p}"));
        }
    }
    let out = match ctx.opts.format {
        Format::Json => render(&serde_json::to_value(&p).unwrap()),
        Format::Csv => format!(
            "u,w,P,coeffs\n\"{}\",\"{}\",{},\"{}\"\n",
            ctx.group.word_string(&u),
            ctx.group.word_string(&w),
            p,
            p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
        ),
        Format::Text => format!("{p}\n"),
    };
    finish(out, failure)
}

fn finish(out: String, failure: Option<String>) -> Result<String, Failure> {
    match failure {
        None => Ok(out),
        Some(reason) => Err(Failure::Verification {
            output: Some(out),
            reason,
        }),
    }
}

fn cmd_fibers(ctx: &Ctx) -> Result<String, Failure> {
    let g = &ctx.group;
    let spec = DemazureMapSpec::new(g, &ctx.word()?)?;
    let table = fiber_table(g, &spec)?;
    let mut failure = None;
    let mut rows = Vec::new();
    let para = ctx.para()?;
    match &para {
        None => {
            let euler = if ctx.opts.check { Some(euler_table_bruteforce(g, &spec)?) } else { None };
            for v in sorted(g, table.keys().cloned()) {
                let f = table[&v].clone();
                if let Some(e) = &euler {
                    let count = e.get(&v).copied().unwrap_or(0);
                    if f.eval(1) != count as i64 {
                        failure = Some(format!("F({})(1) = {} but {} subwords", g.word_string(&v), f.eval(1), count));
                    }
                }
                rows.push((v, f));
            }
            if let Some(e) = &euler {
                if e.keys().any(|v| !table.contains_key(v)) {
                    failure = Some("subword product missing from the fiber table".into());
                }
            }
        }
        Some(p) => {
            let empty = ParabolicSubset::empty();
            let mut cosets = Vec::new();
            for v in table.keys() {
                cosets.push(g.min_double_coset_rep(&empty, v, p)?);
            }
            cosets.sort_by_key(|v| g.sort_key(v));
            cosets.dedup();
            for v in cosets {
                let f = fiber_poincare_parahoric(g, &spec, p, &v)?;
                if ctx.opts.check {
                    let count = fiber_euler_parahoric_bruteforce(g, &spec, p, &v)?;
                    if f.eval(1) != count as i64 {
                        failure = Some(format!("coset {} has F(1) = {} but {} subwords", g.word_string(&v), f.eval(1), count));
                    }
                }
                rows.push((v, f));
            }
        }
    }
    let out = match ctx.opts.format {
        Format::Json => {
            let fibers: BTreeMap<String, Value> = rows
                .iter()
                .map(|(v, f)| (g.word_string(v), serde_json::to_value(f).unwrap()))
                .collect();
            let mut value = json!({
                "word": spec.word(),
                "target": g.word_string(spec.target()),
                "F": fibers,
            });
            if let Some(p) = &para {
                value["parahoric"] = json!(p.to_vec());
            }
            render(&value)
        }
        Format::Csv => {
            let mut s = String::from("v,length,F,F(1)\n");
            for (v, f) in &rows {
                s.push_str(&format!("\"{}\",{},{},{}\n", g.word_string(v), g.length(v), f, f.eval(1)));
            }
            s
        }
        Format::Text => {
            let mut s = format!("target {}\n", g.word_string(spec.target()));
            for (v, f) in &rows {
                s.push_str(&format!("{:<12} {}\n", show(g, v), f));
            }
            s
        }
    };
    finish(out, failure)
}

fn show(g: &WeylGroup, v: &WeylElement) -> String {
    let w = g.word_string(v);
    if w.is_empty() {
        "e".into()
    } else {
        w
    }
}

/// Every cross-oracle available for a decomposition report.
fn verify_report(table: &KlTable, report: &DecompositionReport) -> Result<Option<String>, Failure> {
    let g = table.group();
    let spec = &report.spec;
    let failures = report.checks.failures();
    if !failures.is_empty() {
        return Ok(Some(format!("structural checks failed: {}", failures.join(", "))));
    }
    let euler = euler_table_bruteforce(g, spec)?;
    for row in &report.rows {
        let count = euler.get(&row.v).copied().unwrap_or(0);
        if row.fiber.eval(1) != count as i64 {
            return Ok(Some(format!("Euler count mismatch at {}", show(g, &row.v))));
        }
    }
    for x in report.rows.iter().map(|r| &r.v) {
        for y in report.rows.iter().map(|r| &r.v) {
            if g.length(x) <= g.length(y) && table.kl_polynomial(x, y)? != table.kl_polynomial_via_r(x, y)? {
                return Ok(Some(format!("KL mismatch at ({}, {})", show(g, x), show(g, y))));
            }
        }
    }
    let other = multiplicities_via_inverse_kl(table, spec)?;
    for row in &report.rows {
        if other.get(&row.v) != Some(&row.multiplicity) {
            return Ok(Some(format!("inverse-KL multiplicity mismatch at {}", show(g, &row.v))));
        }
    }
    Ok(None)
}

fn cmd_decompose(ctx: &Ctx, table: &KlTable, supports_only: bool) -> Result<String, Failure> {
    let g = &ctx.group;
    let spec = DemazureMapSpec::new(g, &ctx.word()?)?;
    let report = multiplicities(table, &spec)?;
    let failure = if ctx.opts.check { verify_report(table, &report)? } else { None };
    let out = if supports_only {
        let names: Vec<String> = report.supports.iter().map(|v| g.word_string(v)).collect();
        match ctx.opts.format {
            Format::Json => render(&json!({
                "word": spec.word(),
                "target": g.word_string(spec.target()),
                "supports": names,
            })),
            Format::Csv => {
                let mut s = String::from("v,length\n");
                for v in &report.supports {
                    s.push_str(&format!("\"{}\",{}\n", g.word_string(v), g.length(v)));
                }
                s
            }
            Format::Text => report.supports.iter().map(|v| show(g, v) + "\n").collect(),
        }
    } else {
        match ctx.opts.format {
            Format::Json => render(&report.to_json(g)),
            Format::Csv => report.to_csv(g),
            Format::Text => {
                let mut s = format!("target {}\n", show(g, spec.target()));
                s.push_str(&format!("{:<12} {:<24} {}\n", "v", "F", "M"));
                for row in &report.rows {
                    s.push_str(&format!(
                        "{:<12} {:<24} {}\n",
                        show(g, &row.v),
                        row.fiber.to_string(),
                        row.multiplicity
                    ));
                }
                let failed = report.checks.failures();
                if failed.is_empty() {
                    s.push_str("checks ok\n");
                } else {
                    s.push_str(&format!("checks failed: {}\n", failed.join(", ")));
                }
                s
            }
        }
    };
    finish(out, failure)
}

fn run(cli: Cli) -> Result<String, Failure> {
    let descriptor = cli.opts.group.clone().ok_or_else(|| Failure::Usage("--group is required".into()))?;
    let mut group = WeylGroup::new(&descriptor)?;
    if let Some(cap) = cli.opts.cap {
        group = group.with_cap(cap);
    }
    let ctx = Ctx { group, opts: cli.opts };
    let uses_kl = matches!(cli.command, Command::Kl | Command::Decompose | Command::Supports);
    let handle = match (&ctx.opts.cache, uses_kl) {
        (Some(path), true) => Some(
            CacheHandle::acquire(path, &ctx.group.kind().to_string()).map_err(|e| Failure::Io(e.to_string()))?,
        ),
        _ => None,
    };
    let table = KlTable::new(&ctx.group);
    let mut stored = handle.as_ref().map(|h| h.load());
    if let Some(c) = &stored {
        cache::seed_table(&table, c);
    }
    let result = match cli.command {
        Command::Info => cmd_info(&ctx),
        Command::Demazure => cmd_demazure(&ctx),
        Command::Kl => cmd_kl(&ctx, &table),
        Command::Fibers => cmd_fibers(&ctx),
        Command::Decompose => cmd_decompose(&ctx, &table, false),
        Command::Supports => cmd_decompose(&ctx, &table, true),
    };
    if let (Some(h), Some(c)) = (&handle, stored.as_mut()) {
        let before = c.entries.len();
        cache::collect_table(&ctx.group, &table, c);
        if c.entries.len() != before {
            h.save(c).map_err(|e| Failure::Io(e.to_string()))?;
        }
    }
    result
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            let code = f.code();
            match f {
                Failure::Usage(m) | Failure::Cap(m) | Failure::Io(m) => eprintln!("error: {m}"),
                Failure::Verification { output, reason } => {
                    if let Some(o) = output {
                        print!("{o}");
                    }
                    eprintln!("verification failed: {reason}");
                }
            }
            ExitCode::from(code)
        }
    }
}
