use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use oosys::corpus_io::{corpus, corpus_entry, parse_bundle, run_claim, serialize_bundle, Bundle, ClaimError, ClaimKind};
use oosys::derive::{derive, Construction, DeriveError};
use oosys::search::{cross_check, enumerate, SearchError, SearchSpec};
use oosys::structures::{EquationRole, Mode, Report, Verdict};

// Output that tolerates a closed pipe (`oosys corpus list | head`).
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = write!(std::io::stdout(), $($t)*);
    }};
}

macro_rules! outln {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

const HOLDS: u8 = 0;
const FAILS: u8 = 1;
const CONDITIONAL: u8 = 2;
const INPUT: u8 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(name = "oosys", version, about = "Verify, derive and search for curved O-operator systems and their relatives")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Suppress progress messages on stderr.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the claims of a bundle.
    Verify {
        /// Bundle file, or a corpus id.
        bundle: String,
        /// Check only this claim (index or kind name).
        #[arg(long)]
        claim: Option<String>,
        /// Print the constraint polynomials of non-holding verdicts.
        #[arg(long)]
        conditional: bool,
        /// Nonzero residual entries shown per failing equation.
        #[arg(long, default_value_t = 5)]
        max_residuals: usize,
        /// Report everything; only the main identities decide.
        #[arg(long)]
        audit: bool,
    },
    /// Build a derived structure and write the extended bundle.
    Derive {
        bundle: String,
        #[arg(long)]
        construction: String,
        /// Output file (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Index of the source claim (default: the first suitable one).
        #[arg(long)]
        source: Option<usize>,
        /// Skip the hypothesis checks.
        #[arg(long)]
        audit: bool,
        /// Do not re-verify the derived claims.
        #[arg(long)]
        no_verify: bool,
    },
    /// Enumerate unknown maps over a prime field.
    Search {
        #[arg(long)]
        field: u32,
        /// Template bundle file, or a corpus id.
        #[arg(long)]
        template: String,
        /// Comma-separated roles of the searched claim to enumerate.
        #[arg(long, default_value = "")]
        unknowns: String,
        /// Claim kind to search for.
        #[arg(long)]
        structure: String,
        /// Witnesses to print.
        #[arg(long, default_value_t = 10)]
        limit: usize,
        /// Also run the direct evaluator and compare witness sets.
        #[arg(long)]
        cross_check: bool,
    },
    /// The embedded corpus of examples.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// List ids, citations and expected verdicts.
    List,
    /// Write the bundle of one entry.
    Export {
        id: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct Ctx {
    format: Format,
    quiet: bool,
}

impl Ctx {
    fn progress(&self, msg: &str) {
        if !self.quiet {
            eprintln!("{msg}");
        }
    }
}

struct Fail(u8, String);

type Outcome = Result<u8, Fail>;

fn input(msg: impl ToString) -> Fail {
    Fail(INPUT, msg.to_string())
}

fn severity(v: &Verdict) -> u8 {
    match v {
        Verdict::Holds => HOLDS,
        Verdict::ConditionallyHolds(_) => CONDITIONAL,
        Verdict::Fails(_) => FAILS,
    }
}

/// Combines exit codes by verdict severity (holds < conditional < fails).
fn worst(a: u8, b: u8) -> u8 {
    let rank = |c| match c {
        HOLDS => 0,
        CONDITIONAL => 1,
        FAILS => 2,
        _ => 3,
    };
    if rank(b) > rank(a) {
        b
    } else {
        a
    }
}

fn load(spec: &str) -> Result<(String, Bundle), Fail> {
    let path = Path::new(spec);
    if path.exists() {
        let text = fs::read_to_string(path).map_err(|e| input(format!("{spec}: {e}")))?;
        let bundle = parse_bundle(&text).map_err(|e| input(format!("{spec}: {e}")))?;
        return Ok((spec.to_string(), bundle));
    }
    match corpus_entry(spec) {
        Some(e) => Ok((e.id.clone(), e.bundle.clone())),
        None => Err(input(format!("{spec}: no such file or corpus entry"))),
    }
}

fn write_out(out: Option<&Path>, text: &str) -> Result<(), Fail> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| input(format!("{}: {e}", p.display()))),
        None => {
            out!("{text}");
            Ok(())
        }
    }
}

fn verdict_json(v: &Verdict) -> Value {
    json!({ "status": v.label(), "constraints": v.constraints().iter().map(|p| p.to_string()).collect::<Vec<_>>() })
}

fn report_json(index: usize, bundle: &Bundle, r: &Report, max: usize) -> Value {
    let claim = &bundle.claims[index];
    let equations: Vec<Value> = r
        .equations
        .iter()
        .map(|eq| {
            let shown: Vec<Value> = eq
                .residuals
                .iter()
                .take(max)
                .map(|e| json!({ "inputs": e.inputs, "output": e.output, "value": e.value.to_string() }))
                .collect();
            json!({
                "tag": eq.tag,
                "role": format!("{:?}", eq.role).to_lowercase(),
                "status": Verdict::from_residuals(eq.residuals.iter().map(|e| &e.value)).label(),
                "nonzero": eq.residuals.len(),
                "residuals": shown,
            })
        })
        .collect();
    json!({
        "index": index,
        "claim": r.claim,
        "kind": claim.kind.name(),
        "mode": format!("{:?}", r.mode).to_lowercase(),
        "verdict": verdict_json(&r.verdict),
        "expected": claim.expect.as_ref().map(|e| e.label()),
        "matches_expected": claim.expect.as_ref().map(|e| e.matches(&r.verdict)),
        "halted": r.halted,
        "equations": equations,
    })
}

fn report_text(index: usize, bundle: &Bundle, r: &Report, max: usize, conditional: bool) -> String {
    let claim = &bundle.claims[index];
    let mut out = format!("claim {index} {}: {}", r.claim, r.verdict);
    if let Some(e) = &claim.expect {
        let m = if e.matches(&r.verdict) { "matches" } else { "MISMATCH" };
        out.push_str(&format!("  (expected {e}: {m})"));
    }
    out.push('\n');
    for eq in &r.equations {
        let v = Verdict::from_residuals(eq.residuals.iter().map(|e| &e.value));
        let role = match eq.role {
            EquationRole::Main => "",
            EquationRole::Hypothesis => " [hypothesis]",
            EquationRole::Auxiliary => " [auxiliary]",
        };
        out.push_str(&format!("  {:<18} {}{role}\n", eq.tag, v));
        if !eq.holds() {
            for e in eq.residuals.iter().take(max) {
                out.push_str(&format!("      ({}) -> {}: {}\n", e.inputs.join(", "), e.output, e.value));
            }
            if eq.residuals.len() > max {
                out.push_str(&format!("      ... {} more\n", eq.residuals.len() - max));
            }
        }
    }
    if let Some(h) = &r.halted {
        out.push_str(&format!("  halted: hypothesis {h} does not hold\n"));
    }
    if conditional && !r.verdict.is_holds() {
        out.push_str("  constraints:\n");
        for p in r.verdict.constraints() {
            out.push_str(&format!("    {p}\n"));
        }
    }
    out
}

fn select_claims(bundle: &Bundle, claim: Option<&str>) -> Result<Vec<usize>, Fail> {
    let Some(sel) = claim else {
        return Ok((0..bundle.claims.len()).collect());
    };
    if let Ok(i) = sel.parse::<usize>() {
        return if i < bundle.claims.len() { Ok(vec![i]) } else { Err(input(format!("no claim {i}"))) };
    }
    let kind: ClaimKind = sel.parse().map_err(input)?;
    let v: Vec<usize> = (0..bundle.claims.len()).filter(|&i| bundle.claims[i].kind == kind).collect();
    if v.is_empty() {
        return Err(input(format!("no `{kind}` claim")));
    }
    Ok(v)
}

/// Runs the given claims in parallel, reporting in declaration order.
fn check_claims(ctx: &Ctx, name: &str, bundle: &Bundle, which: &[usize], mode: Mode, max: usize, conditional: bool) -> Outcome {
    let results: Vec<Result<Report, ClaimError>> = which.par_iter().map(|&i| run_claim(bundle, i, mode)).collect();
    let mut code = HOLDS;
    let mut docs = Vec::new();
    let mut text = String::new();
    for (&i, res) in which.iter().zip(&results) {
        match res {
            Ok(r) => {
                code = worst(code, severity(&r.verdict));
                docs.push(report_json(i, bundle, r, max));
                text.push_str(&report_text(i, bundle, r, max, conditional));
            }
            Err(e) => return Err(input(e)),
        }
    }
    match ctx.format {
        Format::Text => {
            outln!("{name}");
            out!("{text}");
        }
        Format::Json => {
            let doc = json!({ "bundle": name, "exit": code, "claims": docs });
            outln!("{}", serde_json::to_string_pretty(&doc).expect("json"));
        }
    }
    Ok(code)
}

fn run(ctx: &Ctx, command: Command) -> Outcome {
    match command {
        Command::Verify { bundle, claim, conditional, max_residuals, audit } => {
            let (name, b) = load(&bundle)?;
            let which = select_claims(&b, claim.as_deref())?;
            let mode = if audit { Mode::Audit } else { Mode::Strict };
            check_claims(ctx, &name, &b, &which, mode, max_residuals, conditional)
        }
        Command::Derive { bundle, construction, out, source, audit, no_verify } => {
            let construction: Construction = construction.parse().map_err(input)?;
            let (name, b) = load(&bundle)?;
            let mode = if audit { Mode::Audit } else { Mode::Strict };
            let d = derive(&b, &name, construction, source, mode).map_err(|e| match e {
                DeriveError::Hypothesis { .. } | DeriveError::Refused(_) => Fail(FAILS, e.to_string()),
                _ => input(e),
            })?;
            ctx.progress(&format!("derived {} ({} new maps, {} new claims)", d.provenance, d.new_maps.len(), d.new_claims.len()));
            let text = serialize_bundle(&d.bundle);
            if out.is_some() || ctx.format == Format::Text {
                write_out(out.as_deref(), &text)?;
            }
            if no_verify {
                return Ok(HOLDS);
            }
            let label = out.as_ref().map_or_else(|| format!("{name} + {construction}"), |p| p.display().to_string());
            check_claims(ctx, &label, &d.bundle, &d.new_claims, Mode::Strict, 5, true)
        }
        Command::Search { field, template, unknowns, structure, limit, cross_check: dual } => {
            let (name, b) = load(&template)?;
            let structure: ClaimKind = structure.parse().map_err(input)?;
            let unknowns: Vec<String> =
                unknowns.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect();
            let spec = SearchSpec { template: b, prime: field, structure, unknowns, limit };
            ctx.progress(&format!("searching {structure} over F{field} from {name}"));
            let outcome = enumerate(&spec).map_err(search_fail)?;
            let check = if dual { Some(cross_check(&spec).map_err(search_fail)?) } else { None };
            let agree = check.as_ref().map(|c| c.agree());
            match ctx.format {
                Format::Text => {
                    outln!("candidates: {}", outcome.candidates);
                    outln!("witnesses: {}", outcome.count);
                    if let Some(c) = &check {
                        match c.first_difference() {
                            None => outln!("cross-check: agree ({} witnesses)", c.direct.len()),
                            Some(i) => outln!("cross-check: DISAGREE, first at candidate {i}"),
                        }
                    }
                    for w in &outcome.witnesses {
                        outln!("\n# witness (candidate {})", w.index);
                        out!("{}", serialize_bundle(&w.bundle));
                    }
                }
                Format::Json => {
                    let ws: Vec<Value> = outcome
                        .witnesses
                        .iter()
                        .map(|w| json!({ "index": w.index, "bundle": serialize_bundle(&w.bundle) }))
                        .collect();
                    let doc = json!({
                        "field": field,
                        "structure": structure.name(),
                        "candidates": outcome.candidates,
                        "count": outcome.count,
                        "cross_check": check.as_ref().map(|c| json!({ "agree": c.agree(), "first_difference": c.first_difference() })),
                        "witnesses": ws,
                    });
                    outln!("{}", serde_json::to_string_pretty(&doc).expect("json"));
                }
            }
            Ok(if agree == Some(false) { FAILS } else { HOLDS })
        }
        Command::Corpus { action: CorpusAction::List } => {
            match ctx.format {
                Format::Text => {
                    for e in corpus() {
                        let exp = e.expected().map_or("-", |x| x.label());
                        outln!("{:<16} {:<12} {}", e.id, exp, e.citation);
                    }
                }
                Format::Json => {
                    let v: Vec<Value> = corpus()
                        .iter()
                        .map(|e| {
                            let claims: Vec<Value> = e
                                .bundle
                                .claims
                                .iter()
                                .map(|c| json!({ "kind": c.kind.name(), "expected": c.expect.as_ref().map(|x| x.label()) }))
                                .collect();
                            json!({ "id": e.id, "citation": e.citation, "claims": claims })
                        })
                        .collect();
                    outln!("{}", serde_json::to_string_pretty(&v).expect("json"));
                }
            }
            Ok(HOLDS)
        }
        Command::Corpus { action: CorpusAction::Export { id, out } } => {
            let e = corpus_entry(&id).ok_or_else(|| input(format!("unknown corpus id `{id}`")))?;
            write_out(out.as_deref(), &serialize_bundle(&e.bundle))?;
            Ok(HOLDS)
        }
    }
}

fn search_fail(e: SearchError) -> Fail {
    match e {
        SearchError::Check { .. } => Fail(FAILS, e.to_string()),
        _ => input(e),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { INPUT } else { 0 });
        }
    };
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(INPUT);
        }
    }
    let ctx = Ctx { format: cli.format, quiet: cli.quiet };
    match run(&ctx, cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
