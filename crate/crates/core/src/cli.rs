//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification mismatch or engine defect, 2 input
//! or usage error.

use std::path::Path;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::catalog;
use crate::clifford::{Ambient, Triple};
use crate::counting::{self, GroupVerification, VerificationReport};
use crate::error::{Error, Result};
use crate::group::DEFAULT_ORDER_CAP;
use crate::groupfile::{GroupFile, LoadedGroup};
use crate::par::Execution;
use crate::report::{self, table, Format, Report};

/// Order cap applied with `--slow`.
pub const SLOW_ORDER_CAP: usize = 40320;

#[derive(Debug, Parser)]
#[command(name = "clifford-count", version, about = "Counts real characters over a normal subgroup and checks the counts against the character table")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Largest group order accepted.
    #[arg(long, global = true)]
    order_cap: Option<usize>,
    /// Include slow catalog fixtures and raise the order cap to at least 40320.
    #[arg(long, global = true)]
    slow: bool,
    /// Run on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct TripleArgs {
    /// Group file path or catalog name.
    file: String,
    /// Declared normal subgroup; `1` and `G` are always available.
    #[arg(long)]
    normal: String,
    /// Index into the character table of the normal subgroup (0 is trivial).
    #[arg(long)]
    theta: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the built-in groups.
    Catalog,
    /// Group order, classes and declared normal subgroups.
    Info { file: String },
    /// Character table.
    Chartab { file: String },
    /// Irreducible characters lying over theta.
    IrrOver(TripleArgs),
    /// Goodness and sigma for each class of G_theta/N.
    GoodClasses(TripleArgs),
    /// Number of real characters over theta.
    CountReal {
        #[command(flatten)]
        triple: TripleArgs,
        /// Compare with the character-table count.
        #[arg(long)]
        check: bool,
    },
    /// Frobenius-Schur indicator of theta induced to G.
    EpsilonInduced {
        #[command(flatten)]
        triple: TripleArgs,
        #[arg(long)]
        check: bool,
    },
    /// Gow indicators of the involutions of G*_theta/N.
    Gow(TripleArgs),
    /// Run every check on one group or on the catalog.
    Verify {
        #[arg(long, conflicts_with = "file")]
        catalog: bool,
        #[arg(required_unless_present = "catalog")]
        file: Option<String>,
    },
}

struct Ctx {
    cap: usize,
    slow: bool,
    exec: Execution,
    argv: Vec<String>,
}

/// Parses `argv` (program name first), runs the command and returns the
/// rendered output with its exit code.
pub fn run_command<S: AsRef<str>>(argv: &[S]) -> (String, i32) {
    let argv: Vec<String> = argv.iter().map(|s| s.as_ref().to_string()).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (e.render().to_string(), code);
        }
    };
    let mut cap = cli.order_cap.unwrap_or(DEFAULT_ORDER_CAP);
    if cli.slow {
        cap = cap.max(SLOW_ORDER_CAP);
    }
    let ctx = Ctx {
        cap,
        slow: cli.slow,
        exec: if cli.sequential { Execution::Sequential } else { Execution::default() },
        argv: argv.iter().skip(1).cloned().collect(),
    };
    match dispatch(&ctx, &cli.command) {
        Ok((report, code)) => (report.render(cli.format), code),
        Err(e) => {
            let code = if matches!(e, Error::Defect(_)) { 1 } else { 2 };
            (format!("error: {e}\n"), code)
        }
    }
}

/// A path if it exists, otherwise a catalog entry.
pub fn resolve(file: &str, cap: usize) -> Result<LoadedGroup> {
    let path = Path::new(file);
    let gf = if path.is_file() {
        GroupFile::read(path)?
    } else {
        catalog::lookup(file).ok_or_else(|| Error::Parse(format!("{file}: no such file or catalog group")))?
    };
    gf.load(cap)
}

fn dispatch(ctx: &Ctx, cmd: &Command) -> Result<(Report, i32)> {
    match cmd {
        Command::Catalog => Ok((catalog_list(ctx), 0)),
        Command::Info { file } => info(ctx, &resolve(file, ctx.cap)?).map(|r| (r, 0)),
        Command::Chartab { file } => chartab(ctx, &resolve(file, ctx.cap)?).map(|r| (r, 0)),
        Command::IrrOver(a) => irr_over(ctx, a).map(|r| (r, 0)),
        Command::GoodClasses(a) => good_classes(ctx, a).map(|r| (r, 0)),
        Command::CountReal { triple, check } => theorem(ctx, triple, *check, counting::count_real_theorem),
        Command::EpsilonInduced { triple, check } => theorem(ctx, triple, *check, counting::epsilon_induced_theorem),
        Command::Gow(a) => gow(ctx, a).map(|r| (r, 0)),
        Command::Verify { catalog, file } => verify(ctx, *catalog, file.as_deref()),
    }
}

fn report(ctx: &Ctx, group: Option<&LoadedGroup>, payload: Value, text: String) -> Report {
    Report { command: ctx.argv.clone(), group: group.map(report::group_json), payload, text }
}

fn catalog_list(ctx: &Ctx) -> Report {
    let files = catalog::catalog();
    let rows: Vec<Vec<String>> = files
        .iter()
        .map(|f| {
            let normals: Vec<&str> = f.normal_subgroups.iter().map(|n| n.name.as_str()).collect();
            vec![f.name.clone(), normals.join(" "), if f.slow { "slow".into() } else { String::new() }]
        })
        .collect();
    let payload: Vec<Value> = files
        .iter()
        .map(|f| json!({ "name": f.name, "slow": f.slow, "normal_subgroups": f.normal_subgroups.iter().map(|n| &n.name).collect::<Vec<_>>() }))
        .collect();
    report(ctx, None, json!({ "groups": payload }), table(&["group", "normal subgroups", "note"], &rows))
}

fn info(ctx: &Ctx, g: &LoadedGroup) -> Result<Report> {
    let t = &g.group;
    let cl = t.classes();
    let rows: Vec<Vec<String>> = (0..cl.len())
        .map(|c| {
            vec![
                c.to_string(),
                cl.element_order(c).to_string(),
                cl.size(c).to_string(),
                cl.centralizer_order(c).to_string(),
                cl.rep(c).to_string(),
                if cl.is_real(c) { "yes".into() } else { "no".into() },
            ]
        })
        .collect();
    let classes: Vec<Value> = (0..cl.len())
        .map(|c| {
            json!({
                "class": c, "order": cl.element_order(c), "size": cl.size(c),
                "centralizer": cl.centralizer_order(c), "rep": cl.rep(c), "real": cl.is_real(c),
            })
        })
        .collect();
    let mut text = table(&["class", "order", "size", "centralizer", "rep", "real"], &rows);
    text.push('\n');
    for (name, s) in &g.normals {
        text.push_str(&format!("normal {name}: order {}\n", s.order()));
    }
    Ok(report(ctx, Some(g), json!({ "classes": classes }), text))
}

fn chartab(ctx: &Ctx, g: &LoadedGroup) -> Result<Report> {
    let amb = Ambient::with_execution(g.group.clone(), ctx.exec);
    let chars = amb.irr_g()?;
    Ok(report(ctx, Some(g), report::chartab_json(&chars), report::chartab_text(&chars)))
}

fn load_triple(ctx: &Ctx, a: &TripleArgs) -> Result<(LoadedGroup, Triple)> {
    let g = resolve(&a.file, ctx.cap)?;
    let n = g.normal(&a.normal).ok_or_else(|| {
        let mut names = g.normal_names();
        names.extend(["1".to_string(), "G".to_string()]);
        Error::Parse(format!("unknown normal subgroup `{}`; declared: {}", a.normal, names.join(", ")))
    })?;
    let amb: Arc<Ambient> = Ambient::with_execution(g.group.clone(), ctx.exec);
    let n = amb.intern(n);
    let count = amb.irr(&n)?.len();
    if a.theta >= count {
        return Err(Error::Parse(format!("theta index {} out of range; {} has {count} irreducibles", a.theta, a.normal)));
    }
    let t = Triple::new(&amb, &n, a.theta)?.with_label(format!("{}|{}|theta{}", g.file.name, a.normal, a.theta));
    Ok((g, t))
}

fn theta_header(t: &Triple) -> (Value, String) {
    let inr = t.inertia();
    let v = json!({
        "normal": t.label(),
        "normal_order": t.normal().order(),
        "theta": report::theta_json(t.theta_index(), t.theta()),
        "theta_real": inr.theta_is_real,
        "inertia_order": inr.inertia.order(),
        "extended_inertia_order": inr.extended_inertia.order(),
        "dual_is_g_conjugate": inr.dual_is_g_conjugate,
    });
    let s = format!(
        "{}\n|N| = {}  |G_theta| = {}  |G*_theta| = {}  theta real: {}  dual G-conjugate: {}\n\n",
        report::theta_line(t.theta_index(), t.theta()),
        t.normal().order(),
        inr.inertia.order(),
        inr.extended_inertia.order(),
        inr.theta_is_real,
        inr.dual_is_g_conjugate,
    );
    (v, s)
}

fn irr_over(ctx: &Ctx, a: &TripleArgs) -> Result<Report> {
    let (g, t) = load_triple(ctx, a)?;
    let (mut payload, mut text) = theta_header(&t);
    let irr = t.ambient().irr_g()?;
    let rows = counting::irr_over_oracle(&t)?;
    let json_rows: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "index": r.index, "degree": r.degree, "multiplicity": r.multiplicity,
                "indicator": r.indicator, "real": r.real,
                "values": report::values_json(&irr.irreducibles()[r.index]),
            })
        })
        .collect();
    payload["characters"] = json!(json_rows);
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                format!("X.{}", r.index),
                r.degree.to_string(),
                r.multiplicity.to_string(),
                r.indicator.to_string(),
                if r.real { "yes".into() } else { "no".into() },
            ]
        })
        .collect();
    text.push_str(&table(&["chi", "degree", "mult", "indicator", "real"], &cells));
    text.push_str(&format!("\n{} characters over theta\n", rows.len()));
    Ok(report(ctx, Some(&g), payload, text))
}

fn good_classes(ctx: &Ctx, a: &TripleArgs) -> Result<Report> {
    let (g, t) = load_triple(ctx, a)?;
    let (mut payload, mut text) = theta_header(&t);
    let rep = t.sigma_report()?;
    payload["classes"] = serde_json::to_value(&rep.rows).expect("rows serialize");
    payload["good"] = json!(rep.good_count());
    payload["signed_count"] = json!(rep.signed_count());
    let cells: Vec<Vec<String>> = rep
        .rows
        .iter()
        .map(|r| {
            vec![
                r.class.to_string(),
                r.order.to_string(),
                r.size.to_string(),
                r.rep.to_string(),
                if r.real { "yes".into() } else { "no".into() },
                if r.good { "yes".into() } else { "no".into() },
                if r.good { format!("{:+}", r.sigma) } else { String::new() },
                r.witness.map(|w| w.to_string()).unwrap_or_default(),
            ]
        })
        .collect();
    text.push_str("classes of G_theta/N\n");
    text.push_str(&table(&["class", "order", "size", "rep", "real", "good", "sigma", "witness"], &cells));
    text.push_str(&format!("\ngood classes: {}  sigma+ minus sigma-: {}\n", rep.good_count(), rep.signed_count()));
    Ok(report(ctx, Some(&g), payload, text))
}

fn gow(ctx: &Ctx, a: &TripleArgs) -> Result<Report> {
    let (g, t) = load_triple(ctx, a)?;
    let (mut payload, mut text) = theta_header(&t);
    let rep = t.gow_report()?;
    payload["involutions"] = serde_json::to_value(&rep.rows).expect("rows serialize");
    payload["plus"] = json!(rep.plus());
    payload["minus"] = json!(rep.minus());
    let cells: Vec<Vec<String>> = rep
        .rows
        .iter()
        .map(|r| {
            vec![
                r.coset.to_string(),
                r.rep.to_string(),
                format!("{:+}", r.eps).replace("+0", "0"),
                if r.in_inertia { "yes".into() } else { "no".into() },
            ]
        })
        .collect();
    text.push_str("involutions of G*_theta/N\n");
    text.push_str(&table(&["coset", "rep", "eps", "in G_theta"], &cells));
    text.push_str(&format!("\n+1 type: {}  -1 type: {}\n", rep.plus(), rep.minus()));
    Ok(report(ctx, Some(&g), payload, text))
}

fn theorem(
    ctx: &Ctx,
    a: &TripleArgs,
    check: bool,
    f: fn(&Triple) -> Result<VerificationReport>,
) -> Result<(Report, i32)> {
    let (g, t) = load_triple(ctx, a)?;
    let (mut payload, mut text) = theta_header(&t);
    let r = f(&t)?;
    payload["theorem_value"] = json!(r.theorem_value);
    payload["witnesses"] = r.witnesses.clone();
    if let Some(flag) = r.witnesses.get("flag").and_then(Value::as_str) {
        text.push_str(&format!("note: {flag}\n"));
    }
    text.push_str(&format!("theorem: {}\n", r.theorem_value));
    let mut code = 0;
    if check {
        payload["oracle_value"] = json!(r.oracle_value);
        payload["pass"] = json!(r.pass);
        text.push_str(&format!("oracle:  {}\n{}\n", r.oracle_value, if r.pass { "PASS" } else { "MISMATCH" }));
        if !r.pass {
            code = 1;
        }
    }
    Ok((report(ctx, Some(&g), payload, text), code))
}

fn summary_row(v: &GroupVerification) -> Vec<String> {
    let ran = v.corollaries.iter().filter(|c| c.ran()).count();
    let checks: usize = v.structural.iter().map(|p| p.checked).sum();
    let coset = v.coset_norms.iter().filter(|c| c.ran()).count();
    vec![
        v.group.clone(),
        v.order.to_string(),
        v.triples.to_string(),
        v.theorems.iter().filter(|r| r.pass).count().to_string() + "/" + &v.theorems.len().to_string(),
        ran.to_string(),
        checks.to_string(),
        coset.to_string(),
        v.central_z.len().to_string(),
        if v.passed() { "pass".into() } else { "FAIL".into() },
    ]
}

fn verify(ctx: &Ctx, all: bool, file: Option<&str>) -> Result<(Report, i32)> {
    let groups: Vec<LoadedGroup> = if all {
        let files = if ctx.slow { catalog::catalog() } else { catalog::standard() };
        files.iter().map(|f| f.load(ctx.cap)).collect::<Result<_>>()?
    } else {
        vec![resolve(file.expect("clap requires FILE without --catalog"), ctx.cap)?]
    };
    let mut results = Vec::new();
    for g in &groups {
        results.push(counting::verify_group(g, ctx.exec, !g.file.slow)?);
    }
    let rows: Vec<Vec<String>> = results.iter().map(summary_row).collect();
    let mut text = table(
        &["group", "order", "triples", "theorems", "corollaries", "structural", "coset norms", "central Z", "result"],
        &rows,
    );
    let failures: Vec<String> = results.iter().flat_map(GroupVerification::failures).collect();
    for f in &failures {
        text.push_str(&format!("mismatch: {f}\n"));
    }
    let triples: usize = results.iter().map(|v| v.triples).sum();
    text.push_str(&format!(
        "\n{} groups, {} triples, {} mismatches\n",
        results.len(),
        triples,
        failures.len()
    ));
    let payload = json!({
        "groups": serde_json::to_value(&results).expect("results serialize"),
        "triples": triples,
        "mismatches": failures,
        "pass": failures.is_empty(),
    });
    let group = if all { None } else { groups.first() };
    Ok((report(ctx, group, payload, text), if failures.is_empty() { 0 } else { 1 }))
}
