//! torlab: session-driven depth, Tor/Ext, and classification computations.
//!
//! Exit codes: 0 determinate success, 1 error, 2 indeterminate (budget-bound)
//! outcome. JSON output is byte-stable for a fixed session and flag set; text
//! output carries timing and no stability guarantee.

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;
use torlab::complex::{homology_at, koszul_cochain};
use torlab::depth::{full_profile, grade, grade_via_ext, DepthProfile};
use torlab::homalg::{ext, tor};
use torlab::module::PresentedModule;
use torlab::session::{parse_session, Session};
use torlab::torpairs::{
    class_membership, enumerate_phi, generator_set, is_order_preserving, recover_phi,
    regular_dual, rfd, rfd_small_lower, sequence_view, tor_oracle_membership, validate_phi,
    verify_main_oracle, verify_round_trip, RecoverInput,
};
use torlab::{Error, Limits, OutputFormat, PhiFilter, Verdict};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "torlab", version, about = "depth profiles and Tor-pair classification over finite prime tables")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FilterArg {
    None,
    OrderPreserving,
    BothDefinable,
}

#[derive(Parser)]
struct Common {
    /// Path to the session JSON document.
    #[arg(long)]
    session: PathBuf,
    /// Resolution length budget; defaults to the session value (vars + 4).
    #[arg(long)]
    max_resolution_length: Option<usize>,
    /// Output format; defaults to the session config.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Depth and grade profile of the ring at every table prime.
    Depth {
        #[command(flatten)]
        common: Common,
    },
    /// grade(p; M) by the Koszul and Ext routes.
    Grade {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        prime: String,
        #[arg(long)]
        module: Option<String>,
    },
    /// Koszul cohomology vanishing pattern H^i(p; M).
    Koszul {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        prime: String,
        #[arg(long)]
        module: Option<String>,
    },
    /// Tor_i(A, B) for two declared modules.
    Tor {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        first: String,
        #[arg(long)]
        second: String,
        #[arg(long)]
        degree: usize,
    },
    /// Ext^i(A, B) for two declared modules.
    Ext {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        first: String,
        #[arg(long)]
        second: String,
        #[arg(long)]
        degree: usize,
    },
    /// Validate the declared phi and describe its class data.
    Classify {
        #[command(flatten)]
        common: Common,
    },
    /// Membership of a module in the class of the declared phi, both routes.
    Membership {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        module: String,
        #[arg(long, default_value_t = 0)]
        shift: u64,
    },
    /// Main-oracle and round-trip suites over the session table.
    Verify {
        #[command(flatten)]
        common: Common,
    },
    /// Recover phi treating the session modules as a generator list.
    Recover {
        #[command(flatten)]
        common: Common,
    },
    /// Enumerate all depth-bounded functions on the table.
    Enumerate {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "none")]
        filter: FilterArg,
        #[arg(long, default_value_t = false)]
        allow_large_enumeration: bool,
    },
    /// Restricted flat dimension of a declared module.
    Rfd {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        module: String,
    },
    /// Regular dual psi = height - phi of the declared phi.
    Dual {
        #[command(flatten)]
        common: Common,
    },
}

impl Cmd {
    fn common(&self) -> &Common {
        match self {
            Cmd::Depth { common }
            | Cmd::Grade { common, .. }
            | Cmd::Koszul { common, .. }
            | Cmd::Tor { common, .. }
            | Cmd::Ext { common, .. }
            | Cmd::Classify { common }
            | Cmd::Membership { common, .. }
            | Cmd::Verify { common }
            | Cmd::Recover { common }
            | Cmd::Enumerate { common, .. }
            | Cmd::Rfd { common, .. }
            | Cmd::Dual { common } => common,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Cmd::Depth { .. } => "depth",
            Cmd::Grade { .. } => "grade",
            Cmd::Koszul { .. } => "koszul",
            Cmd::Tor { .. } => "tor",
            Cmd::Ext { .. } => "ext",
            Cmd::Classify { .. } => "classify",
            Cmd::Membership { .. } => "membership",
            Cmd::Verify { .. } => "verify",
            Cmd::Recover { .. } => "recover",
            Cmd::Enumerate { .. } => "enumerate",
            Cmd::Rfd { .. } => "rfd",
            Cmd::Dual { .. } => "dual",
        }
    }
}

/// One reported number with its computation path (koszul | ext | tor-oracle).
#[derive(Serialize)]
struct Entry {
    name: String,
    value: serde_json::Value,
    path: &'static str,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    indeterminate: bool,
}

impl Entry {
    fn new(name: impl Into<String>, value: impl Into<serde_json::Value>, path: &'static str) -> Self {
        Entry {
            name: name.into(),
            value: value.into(),
            path,
            indeterminate: false,
        }
    }

    fn indeterminate(mut self) -> Self {
        self.indeterminate = true;
        self
    }
}

#[derive(Serialize)]
struct ResultDocument {
    schema: u32,
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    session_digest: String,
    results: Vec<Entry>,
    indeterminate: bool,
}

fn digest(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(bytes);
    format!("{:x}", h.finalize())
}

fn module_of<'s>(session: &'s Session, name: &str) -> Result<&'s PresentedModule, Error> {
    session.module(name)
}

fn prime_index(session: &Session, name: &str) -> Result<usize, Error> {
    session
        .table
        .index_of(name)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown prime `{name}`")))
}

fn phi_of(session: &Session) -> Result<torlab::PhiFunction, Error> {
    session
        .phi
        .clone()
        .ok_or_else(|| Error::InvalidArgument("session declares no phi".into()))
}

fn profile_of(session: &Session, limits: &Limits) -> Result<DepthProfile, Error> {
    full_profile(
        &session.ring,
        &session.table,
        session.config.equidimensional,
        limits,
    )
}

fn verdict_entry(name: &str, v: &Verdict, path: &'static str) -> Entry {
    match v {
        Verdict::Member => Entry::new(name, "member", path),
        Verdict::NonMember { prime, detail } => Entry::new(
            name,
            serde_json::json!({"non-member": {"prime": prime, "detail": detail}}),
            path,
        ),
        Verdict::Indeterminate { prime, detail } => Entry::new(
            name,
            serde_json::json!({"indeterminate": {"prime": prime, "detail": detail}}),
            path,
        )
        .indeterminate(),
    }
}

fn run(cmd: &Cmd, session: &Session, limits: &Limits) -> Result<Vec<Entry>, Error> {
    let ring = &session.ring;
    let table = &session.table;
    let mut out = Vec::new();
    match cmd {
        Cmd::Depth { .. } => {
            let profile = profile_of(session, limits)?;
            for (i, p) in table.entries.iter().enumerate() {
                let d = &profile.depths[i];
                let mut e = Entry::new(
                    format!("depth({})", p.name),
                    d.to_string(),
                    "ext",
                );
                if d.exact().is_none() {
                    e = e.indeterminate();
                }
                out.push(e);
                out.push(Entry::new(
                    format!("grade({})", p.name),
                    profile.grades[i].to_string(),
                    "koszul",
                ));
                if let Some(h) = &profile.heights {
                    out.push(Entry::new(format!("height({})", p.name), h[i], "ext"));
                }
            }
        }
        Cmd::Grade { prime, module, .. } => {
            let idx = prime_index(session, prime)?;
            let gens = table.entries[idx].gens.clone();
            let free = PresentedModule::free(1);
            let m = match module {
                Some(name) => module_of(session, name)?,
                None => &free,
            };
            let koszul = grade(ring, &gens, m, limits)?;
            out.push(Entry::new("grade", koszul.to_string(), "koszul"));
            let via_ext = grade_via_ext(ring, &gens, m, limits)?;
            let mut e = Entry::new("grade", via_ext.to_string(), "ext");
            if via_ext.exact().is_none() {
                e = e.indeterminate();
            }
            out.push(e);
        }
        Cmd::Koszul { prime, module, .. } => {
            let idx = prime_index(session, prime)?;
            let gens = table.entries[idx].gens.clone();
            let free = PresentedModule::free(1);
            let m = match module {
                Some(name) => module_of(session, name)?,
                None => &free,
            };
            let cochain = koszul_cochain(ring, &gens, m.clone())?;
            for i in 0..=gens.len() {
                let h = homology_at(ring, &cochain, i, limits)?;
                out.push(Entry::new(
                    format!("H^{i}"),
                    if h.is_zero(ring, limits)? { "zero" } else { "nonzero" },
                    "koszul",
                ));
            }
        }
        Cmd::Tor { first, second, degree, .. } => {
            let a = module_of(session, first)?;
            let b = module_of(session, second)?;
            let t = tor(ring, a, b, *degree, limits)?;
            out.push(Entry::new(
                format!("Tor_{degree}({first}, {second})"),
                if t.is_zero(ring, limits)? { "zero" } else { "nonzero" },
                "tor-oracle",
            ));
        }
        Cmd::Ext { first, second, degree, .. } => {
            let a = module_of(session, first)?;
            let b = module_of(session, second)?;
            let e = ext(ring, a, b, *degree, limits)?;
            out.push(Entry::new(
                format!("Ext^{degree}({first}, {second})"),
                if e.is_zero(ring, limits)? { "zero" } else { "nonzero" },
                "ext",
            ));
        }
        Cmd::Classify { .. } => {
            let mut phi = phi_of(session)?;
            let profile = profile_of(session, limits)?;
            let violations = validate_phi(&mut phi, &profile)?;
            let names: Vec<&str> = violations
                .iter()
                .map(|&i| table.entries[i].name.as_str())
                .collect();
            out.push(Entry::new("depth-bounded", names.is_empty(), "ext"));
            if !names.is_empty() {
                out.push(Entry::new("violations", serde_json::json!(names), "ext"));
                return Ok(out);
            }
            out.push(Entry::new(
                "order-preserving",
                is_order_preserving(&phi, table),
                "ext",
            ));
            for g in generator_set(ring, &phi, table, limits)? {
                out.push(Entry::new(
                    format!("generator S_{}({})", g.level, table.entries[g.prime].name),
                    serde_json::json!({"generators": g.module.generators, "localized": g.localized}),
                    "koszul",
                ));
            }
            let chain = sequence_view(&phi);
            for (n, set) in chain.sets.iter().enumerate() {
                let names: Vec<&str> = set
                    .iter()
                    .map(|&i| table.entries[i].name.as_str())
                    .collect();
                out.push(Entry::new(format!("X_{n}"), serde_json::json!(names), "ext"));
            }
        }
        Cmd::Membership { module, shift, .. } => {
            let phi = phi_of(session)?;
            let mut phi = phi;
            let profile = profile_of(session, limits)?;
            if !validate_phi(&mut phi, &profile)?.is_empty() {
                return Err(Error::InvalidArgument(
                    "declared phi is not depth-bounded".into(),
                ));
            }
            let m = module_of(session, module)?;
            let by_depth = class_membership(ring, m, &phi, *shift, table, limits)?;
            out.push(verdict_entry("membership", &by_depth, "ext"));
            if *shift == 0 {
                let by_tor = tor_oracle_membership(ring, m, &phi, table, limits)?;
                out.push(verdict_entry("membership", &by_tor, "tor-oracle"));
            }
        }
        Cmd::Verify { .. } => {
            let profile = profile_of(session, limits)?;
            let rep = verify_main_oracle(ring, &session.modules, table, &profile, limits)?;
            let ok = rep.disagreements.is_empty();
            out.push(Entry::new(
                "main-oracle",
                serde_json::json!({
                    "pass": ok,
                    "cases": rep.cases,
                    "determinate": rep.determinate,
                    "indeterminate": rep.indeterminate,
                    "disagreements": rep.disagreements,
                }),
                "tor-oracle",
            ));
            let rt = verify_round_trip(ring, table, &profile, limits)?;
            out.push(Entry::new(
                "round-trip",
                serde_json::json!({
                    "pass": rt.mismatches.is_empty(),
                    "cases": rt.cases,
                    "mismatches": rt.mismatches,
                }),
                "tor-oracle",
            ));
            if !ok || !rt.mismatches.is_empty() {
                return Err(Error::Internal("verification suite failed".into()));
            }
        }
        Cmd::Recover { .. } => {
            let inputs: Vec<RecoverInput> = session
                .modules
                .iter()
                .map(|(name, m)| RecoverInput {
                    name: name.clone(),
                    module: m.clone(),
                    localize_at: None,
                })
                .collect();
            let recovered = recover_phi(ring, &inputs, table, limits)?;
            for (p, v) in table.entries.iter().zip(&recovered.values) {
                out.push(Entry::new(format!("phi({})", p.name), *v, "tor-oracle"));
            }
            if let Some(declared) = &session.phi {
                out.push(Entry::new(
                    "matches-declared-phi",
                    declared.values == recovered.values,
                    "tor-oracle",
                ));
            }
        }
        Cmd::Enumerate { filter, allow_large_enumeration, .. } => {
            let profile = profile_of(session, limits)?;
            let filter = match filter {
                FilterArg::None => PhiFilter::None,
                FilterArg::OrderPreserving => PhiFilter::OrderPreserving,
                FilterArg::BothDefinable => PhiFilter::BothDefinable,
            };
            let all = enumerate_phi(ring, &profile, table, filter, *allow_large_enumeration)?;
            out.push(Entry::new("count", all.len(), "ext"));
            for phi in &all {
                out.push(Entry::new(
                    "phi",
                    serde_json::json!(phi.values),
                    "ext",
                ));
            }
        }
        Cmd::Rfd { module, .. } => {
            let profile = profile_of(session, limits)?;
            let m = module_of(session, module)?;
            let large = rfd(ring, m, table, &profile, limits)?;
            out.push(Entry::new("rfd", large, "ext"));
            let testset: Vec<(String, PresentedModule)> = session
                .modules
                .iter()
                .filter(|(name, _)| name != module)
                .cloned()
                .collect();
            let (small, skipped) = rfd_small_lower(ring, m, &testset, limits)?;
            out.push(Entry::new("rfd-small-lower", small, "tor-oracle"));
            if !skipped.is_empty() {
                out.push(
                    Entry::new("uncertified-test-modules", serde_json::json!(skipped), "tor-oracle")
                        .indeterminate(),
                );
            }
        }
        Cmd::Dual { .. } => {
            let mut phi = phi_of(session)?;
            let profile = profile_of(session, limits)?;
            if !validate_phi(&mut phi, &profile)?.is_empty() {
                return Err(Error::InvalidArgument(
                    "declared phi is not depth-bounded".into(),
                ));
            }
            let heights = profile
                .heights
                .clone()
                .ok_or(Error::NotEquidimensional)?;
            let psi = regular_dual(ring, &phi, &heights, table)?;
            for (p, v) in table.entries.iter().zip(&psi.values) {
                out.push(Entry::new(format!("psi({})", p.name), *v, "ext"));
            }
            let double = regular_dual(ring, &psi, &heights, table)?;
            out.push(Entry::new(
                "double-dual-is-identity",
                double.values == phi.values,
                "ext",
            ));
        }
    }
    Ok(out)
}

fn emit(doc: &ResultDocument, format: OutputFormat, elapsed_ms: u128) {
    match format {
        OutputFormat::Json => {
            // No timing in json mode so identical runs are byte-identical.
            println!("{}", serde_json::to_string_pretty(doc).unwrap());
        }
        OutputFormat::Text => {
            println!("torlab {} :: {} :: session {}", doc.version, doc.command, &doc.session_digest[..12]);
            for e in &doc.results {
                let flag = if e.indeterminate { " [indeterminate]" } else { "" };
                let value = match &e.value {
                    serde_json::Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                println!("  {} = {} [{}]{}", e.name, value, e.path, flag);
            }
            println!("  ({elapsed_ms} ms)");
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = cli.cmd.common();
    let start = Instant::now();

    let bytes = match std::fs::read(&common.session) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error in session load: {e}");
            return ExitCode::from(1);
        }
    };
    let text = match String::from_utf8(bytes.clone()) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error in session load: {e}");
            return ExitCode::from(1);
        }
    };
    let session = match parse_session(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error in session parse: {e}");
            return ExitCode::from(1);
        }
    };
    let mut limits = session.config.limits();
    if let Some(n) = common.max_resolution_length {
        limits.max_resolution_length = n;
    }
    let format = match common.format {
        Some(FormatArg::Text) => OutputFormat::Text,
        Some(FormatArg::Json) => OutputFormat::Json,
        None => session.config.format,
    };

    match run(&cli.cmd, &session, &limits) {
        Ok(results) => {
            let indeterminate = results.iter().any(|e| e.indeterminate);
            let doc = ResultDocument {
                schema: SCHEMA_VERSION,
                tool: "torlab",
                version: env!("CARGO_PKG_VERSION"),
                command: cli.cmd.name(),
                session_digest: digest(&bytes),
                results,
                indeterminate,
            };
            emit(&doc, format, start.elapsed().as_millis());
            ExitCode::from(if indeterminate { 2 } else { 0 })
        }
        Err(
            e @ (Error::Indeterminate(_)
            | Error::BudgetExceeded(_)
            | Error::ResolutionTruncated { .. }
            | Error::Uncertified(_)),
        ) => {
            eprintln!("indeterminate in {}: {e}", cli.cmd.name());
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error in {}: {e}", cli.cmd.name());
            ExitCode::from(1)
        }
    }
}
