//! `ngroups`: enumerate, inspect and export NG-groups, and check claims about
//! their digraphs.
//!
//! Exit codes: 0 success, 1 unexpected divergence (or internal
//! inconsistency), 2 usage or parse error, 3 resource cap exceeded or output
//! not writable.

use std::collections::BTreeMap;
use std::fs;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ngroups::catalog::{self, find_by_id, to_dot, write_csv, write_jsonl, CatalogRecord, Inspection};
use ngroups::verify::{evaluate, Expectations, PropositionId, Verifier, VerifyOptions};
use ngroups::{
    build_digraph, connectivity, enumerate_ng_groups, eulerian_class, parse_set, EnumerateOptions,
    Error, Limits, LoopPolicy, NGGroup, Style,
};

#[derive(Parser)]
#[command(name = "ngroups", version, about = "Groups of non-permutation transformations and their digraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List every NG-group on n points.
    Enumerate(EnumerateArgs),
    /// Analyse a transformation set, or a group given by catalog id.
    Inspect(InspectArgs),
    /// Check claims over a sweep of arities.
    Verify(VerifyArgs),
    /// Write a catalog or a single group's digraph to a file.
    Export(ExportArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    /// One JSON record per line.
    Structured,
    Csv,
    Dot,
}

#[derive(Args, Clone)]
struct Common {
    /// Point notation for human-readable output.
    #[arg(long, default_value = "letter", value_parser = clap::value_parser!(Style))]
    style: Style,
    /// How loops count when testing bipartiteness.
    #[arg(long, default_value = "count-as-odd-cycle", value_parser = clap::value_parser!(LoopPolicy))]
    loop_policy: LoopPolicy,
    /// Largest arity accepted.
    #[arg(long, default_value_t = Limits::default().max_arity, value_parser = parse_positive)]
    max_arity: usize,
    /// Largest set a closure may grow to.
    #[arg(long, default_value_t = Limits::default().closure_limit, value_parser = parse_positive)]
    closure_limit: usize,
    /// Generator-subset size used inside each H-class.
    #[arg(long, default_value_t = Limits::default().max_generators, value_parser = parse_positive)]
    max_generators: usize,
    /// Write output here instead of stdout. The file is replaced whole.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn limits(&self) -> Limits {
        Limits {
            max_arity: self.max_arity,
            closure_limit: self.closure_limit,
            max_generators: self.max_generators,
        }
    }
}

#[derive(Args)]
struct EnumerateArgs {
    /// Arity `N`, or a range `A..B`.
    #[arg(long, value_parser = parse_range)]
    n: RangeInclusive<usize>,
    /// Keep only groups of this order.
    #[arg(long)]
    order: Option<usize>,
    /// Also list the one-element groups `{e}`.
    #[arg(long)]
    include_trivial: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct InspectArgs {
    /// Element tuples such as `(a,a,c) (c,c,a)`, or a 16-digit catalog id.
    #[arg(required = true, num_args = 1..)]
    spec: Vec<String>,
    /// Arity to search when the spec is a catalog id.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct VerifyArgs {
    /// Proposition ids to check.
    #[arg(long, num_args = 1.., required_unless_present = "all", conflicts_with = "all", value_parser = clap::value_parser!(PropositionId))]
    prop: Vec<PropositionId>,
    /// Check every proposition.
    #[arg(long)]
    all: bool,
    /// Arity `N`, or a range `A..B`.
    #[arg(long, value_parser = parse_range)]
    n: RangeInclusive<usize>,
    /// Seed for the random digraph families.
    #[arg(long, default_value_t = VerifyOptions::default().seed)]
    seed: u64,
    /// Size of each random digraph family.
    #[arg(long, default_value_t = VerifyOptions::default().random_count)]
    random_count: usize,
    /// Fail on any divergence, expected or not.
    #[arg(long)]
    strict: bool,
    /// JSON table of expected divergences replacing the built-in one.
    #[arg(long)]
    expectations: Option<PathBuf>,
    /// Report every counterexample instead of the first ten.
    #[arg(long)]
    full: bool,
    /// Include wall-clock times.
    #[arg(long)]
    timings: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct ExportArgs {
    /// Arity (or range) of the catalog to export.
    #[arg(long, value_parser = parse_range, required_unless_present = "group")]
    n: Option<RangeInclusive<usize>>,
    /// Export this group or set instead of a catalog.
    #[arg(long, conflicts_with_all = ["order", "include_trivial"])]
    group: Option<String>,
    #[arg(long)]
    order: Option<usize>,
    #[arg(long)]
    include_trivial: bool,
    #[arg(long, value_enum, default_value_t = Format::Structured)]
    format: Format,
    #[command(flatten)]
    common: Common,
}

fn parse_positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err(format!("expected a positive integer, got `{s}`")),
    }
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let bad = || format!("expected N or A..B, got `{s}`");
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let v = num(s)?;
            (v, v)
        }
    };
    if lo == 0 || lo > hi {
        return Err(bad());
    }
    Ok(lo..=hi)
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ResourceLimit { .. } => 3,
            Error::InvariantViolation(_) => 1,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

type Outcome = Result<ExitCode, Failure>;

fn emit(out: &Option<PathBuf>, bytes: &[u8]) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, bytes).map_err(|e| Failure {
            code: 3,
            message: format!("cannot write {}: {e}", path.display()),
        }),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(bytes).and_then(|_| stdout.flush()).map_err(|e| Failure {
                code: 3,
                message: format!("cannot write to stdout: {e}"),
            })
        }
    }
}

fn groups_for(range: &RangeInclusive<usize>, order: Option<usize>, include_trivial: bool, limits: Limits) -> Result<Vec<NGGroup>, Failure> {
    let opts = EnumerateOptions { order, include_trivial, limits };
    let mut all = Vec::new();
    for n in range.clone() {
        all.extend(enumerate_ng_groups(n, &opts)?);
    }
    Ok(all)
}

fn records(groups: &[NGGroup]) -> Result<Vec<CatalogRecord>, Failure> {
    Ok(groups.iter().map(CatalogRecord::from_group).collect::<Result<Vec<_>, _>>()?)
}

fn jsonl(records: &[CatalogRecord]) -> Result<Vec<u8>, Failure> {
    let mut buf = Vec::new();
    write_jsonl(records, &mut buf)?;
    Ok(buf)
}

fn csv(records: &[CatalogRecord]) -> Result<Vec<u8>, Failure> {
    let mut buf = Vec::new();
    write_csv(records, &mut buf)?;
    Ok(buf)
}

fn dot_all(groups: &[NGGroup]) -> Result<Vec<u8>, Failure> {
    let mut s = String::new();
    for g in groups {
        let d = build_digraph(g.elements())?;
        s.push_str(&to_dot(d.graph(), &catalog::group_id(g), Style::Letter));
    }
    Ok(s.into_bytes())
}

fn summary_line(g: &NGGroup, style: Style) -> Result<String, Failure> {
    let d = build_digraph(g.elements())?;
    let style = style.effective(g.arity());
    let c = connectivity(d.graph())?;
    let degrees: Vec<String> = d.degree_profile().total.iter().map(u32::to_string).collect();
    let (n, m) = d.size_pair();
    Ok(format!(
        "{}  order {}  rank {}  fix {}  size ({n},{m})  degrees {}  roots {}  {}",
        g.format(style),
        g.order(),
        g.rank(),
        g.ng_fix().format(style),
        degrees.join(","),
        c.roots.format(style),
        eulerian_class(d.graph()).as_str()
    ))
}

fn order_tally(groups: &[NGGroup]) -> String {
    let mut tally: BTreeMap<usize, usize> = BTreeMap::new();
    for g in groups {
        *tally.entry(g.order()).or_default() += 1;
    }
    let parts: Vec<String> = tally.iter().map(|(o, c)| format!("{o}: {c}")).collect();
    format!("{{{}}}", parts.join(", "))
}

fn cmd_enumerate(a: EnumerateArgs) -> Outcome {
    let limits = a.common.limits();
    let bytes = match a.format {
        Format::Text => {
            let mut s = String::new();
            for n in a.n.clone() {
                let groups = groups_for(&(n..=n), a.order, a.include_trivial, limits)?;
                s.push_str(&format!("# n={n}\n"));
                for g in &groups {
                    s.push_str(&summary_line(g, a.common.style)?);
                    s.push('\n');
                }
                s.push_str(&format!("n={n}: {} groups; orders {}\n", groups.len(), order_tally(&groups)));
            }
            s.into_bytes()
        }
        Format::Structured => jsonl(&records(&groups_for(&a.n, a.order, a.include_trivial, limits)?)?)?,
        Format::Csv => csv(&records(&groups_for(&a.n, a.order, a.include_trivial, limits)?)?)?,
        Format::Dot => dot_all(&groups_for(&a.n, a.order, a.include_trivial, limits)?)?,
    };
    emit(&a.common.out, &bytes)?;
    Ok(ExitCode::SUCCESS)
}

fn looks_like_id(s: &str) -> bool {
    s.len() == 16 && s.bytes().all(|b| b.is_ascii_hexdigit())
}

/// Resolves the positional spec to a transformation set.
fn resolve_set(spec: &[String], n: Option<usize>, limits: Limits) -> Result<Vec<ngroups::Transformation>, Failure> {
    let text = spec.join(" ");
    if looks_like_id(text.trim()) {
        let n = n.ok_or_else(|| Failure::usage("a catalog id needs --n"))?;
        let opts = EnumerateOptions { limits, ..Default::default() };
        return match find_by_id(n, text.trim(), &opts)? {
            Some(g) => Ok(g.elements().to_vec()),
            None => Err(Failure::usage(format!("no group with id {} on {n} points", text.trim()))),
        };
    }
    let set = parse_set(&text)?;
    if let Some(n) = n {
        if set[0].arity() != n {
            return Err(Error::ArityMismatch { expected: n, found: set[0].arity() }.into());
        }
    }
    limits.check_arity(set[0].arity())?;
    Ok(set)
}

fn cmd_inspect(a: InspectArgs) -> Outcome {
    let limits = a.common.limits();
    let set = resolve_set(&a.spec, a.n, limits)?;
    let inspection = Inspection::of(&set, a.common.loop_policy)?;
    let bytes = match a.format {
        Format::Text => inspection.render(a.common.style).into_bytes(),
        Format::Structured => {
            let mut line = serde_json::to_string(&inspection).map_err(|e| Failure::usage(e.to_string()))?;
            line.push('\n');
            line.into_bytes()
        }
        Format::Dot => {
            let d = build_digraph(&set)?;
            let name = inspection.group_id.clone().unwrap_or_else(|| "set".into());
            to_dot(d.graph(), &name, a.common.style).into_bytes()
        }
        Format::Csv => {
            if !inspection.is_ng_group {
                return Err(Failure::usage(format!("csv output needs an NG-group; {}", inspection.status)));
            }
            let g = NGGroup::from_elements(set)?;
            csv(&[CatalogRecord::from_group(&g)?])?
        }
    };
    emit(&a.common.out, &bytes)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(a: VerifyArgs) -> Outcome {
    let table = match &a.expectations {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
            Expectations::from_json(&text)?
        }
        None => Expectations::default(),
    };
    let options = VerifyOptions {
        seed: a.seed,
        random_count: a.random_count,
        full_dump: a.full,
        limits: a.common.limits(),
        ..VerifyOptions::default()
    };
    let mut verifier = Verifier::new(options);
    let props: Vec<PropositionId> = if a.all { PropositionId::ALL.to_vec() } else { a.prop.clone() };
    let reports = props
        .iter()
        .map(|&p| verifier.verify(p, a.n.clone()))
        .collect::<Result<Vec<_>, _>>()?;
    let eval = evaluate(&reports, &table, a.strict);

    let mut out = String::new();
    match a.format {
        Format::Structured => {
            for r in &reports {
                out.push_str(&r.to_json(a.timings).to_string());
                out.push('\n');
            }
        }
        Format::Text => {
            for r in &reports {
                out.push_str(&r.summary_line());
                if a.timings {
                    out.push_str(&format!("\n            elapsed {:.1} ms", r.elapsed.as_secs_f64() * 1e3));
                }
                out.push('\n');
            }
            for p in &eval.divergences {
                let known = !eval.mismatches.contains(p);
                out.push_str(&format!(
                    "note: {p} diverges from the claim ({})\n",
                    if known { "expected" } else { "UNEXPECTED" }
                ));
            }
            for p in eval.mismatches.iter().filter(|p| !eval.divergences.contains(p)) {
                out.push_str(&format!("note: {p} was expected to diverge but held (UNEXPECTED)\n"));
            }
            out.push_str(&format!(
                "{} propositions, {} divergent, {} unexpected{}\n",
                reports.len(),
                eval.divergences.len(),
                eval.mismatches.len(),
                if a.strict { ", strict" } else { "" }
            ));
        }
        Format::Csv | Format::Dot => return Err(Failure::usage("verify supports --format text or structured")),
    }
    emit(&a.common.out, out.as_bytes())?;
    Ok(if eval.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_export(a: ExportArgs) -> Outcome {
    let limits = a.common.limits();
    let bytes = match (&a.group, &a.n) {
        (Some(spec), _) => {
            let n = a.n.as_ref().map(|r| *r.start());
            let set = resolve_set(std::slice::from_ref(spec), n, limits)?;
            match a.format {
                Format::Dot | Format::Text => {
                    let d = build_digraph(&set)?;
                    let inspection = Inspection::of(&set, a.common.loop_policy)?;
                    let name = inspection.group_id.unwrap_or_else(|| "set".into());
                    to_dot(d.graph(), &name, a.common.style).into_bytes()
                }
                Format::Structured | Format::Csv => {
                    let g = NGGroup::from_elements(set)?;
                    let rec = [CatalogRecord::from_group(&g)?];
                    if a.format == Format::Csv { csv(&rec)? } else { jsonl(&rec)? }
                }
            }
        }
        (None, Some(range)) => {
            let groups = groups_for(range, a.order, a.include_trivial, limits)?;
            match a.format {
                Format::Structured | Format::Text => jsonl(&records(&groups)?)?,
                Format::Csv => csv(&records(&groups)?)?,
                Format::Dot => dot_all(&groups)?,
            }
        }
        (None, None) => return Err(Failure::usage("export needs --n or --group")),
    };
    emit(&a.common.out, &bytes)?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Enumerate(a) => cmd_enumerate(a),
        Command::Inspect(a) => cmd_inspect(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Export(a) => cmd_export(a),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("ngroups: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
