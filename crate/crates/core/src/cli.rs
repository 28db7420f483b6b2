//! The `propr` command line: `graph`, `table`, `check` and `search`.
//!
//! Commands write to a caller-supplied sink so tests can capture output.
//! Exit code 1 means bad input, 2 means a structural invariant failed.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{catalog_specs, parse_group_spec, CatalogError, GroupSpec, Realizer};
use crate::error::GroupError;
use crate::graph::{build_graph, property_r, star_decomposition, PropertyRGraph, PropertyRVariant, PropertyRVerdict};
use crate::group::element_cap;
use crate::invariants::check_all;
use crate::io::{emit_dot, emit_json, GraphDocument};
use crate::signature::{parse_signature, SignatureError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    User(String),
    #[error("{0}")]
    Internal(String),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::User(_) | CliError::Io(_) => 1,
            CliError::Internal(_) => 2,
        }
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        if e.is_internal() {
            CliError::Internal(e.to_string())
        } else {
            CliError::User(e.to_string())
        }
    }
}

impl From<CatalogError> for CliError {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::Group(g) => g.into(),
            other => CliError::User(other.to_string()),
        }
    }
}

impl From<SignatureError> for CliError {
    fn from(e: SignatureError) -> Self {
        CliError::User(format!("signature: {e}"))
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "propr",
    version,
    about = "Normal-subgroup lattices and their Property R graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the graph of one group and emit it.
    Graph(GraphArgs),
    /// Signatures for a matrix family over several fields.
    Table(TableArgs),
    /// Run the invariant suite on groups.
    Check(CheckArgs),
    /// Find catalog groups with a given signature.
    Search(SearchArgs),
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// Group spec, e.g. `GL(2,7)` or `S3xC2`.
    pub spec: String,
    /// Write DOT to PATH (`-` for stdout).
    #[arg(long, value_name = "PATH")]
    pub dot: Option<PathBuf>,
    /// Write the JSON document to PATH (`-` for stdout).
    #[arg(long, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Print the star signature.
    #[arg(long)]
    pub signature: bool,
    /// Print the Property R verdict for one variant.
    #[arg(long, value_name = "VARIANT")]
    pub property_r: Option<PropertyRVariant>,
    /// Run the invariant suite.
    #[arg(long)]
    pub check: bool,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// GL, SL or PSL.
    pub family: String,
    /// Matrix dimension.
    pub n: u32,
    /// Field sizes.
    #[arg(required = true)]
    pub q: Vec<u32>,
    /// Emit rows as JSON.
    #[arg(long)]
    pub json: bool,
    /// Lift the element cap.
    #[arg(long)]
    pub allow_large: bool,
    /// Exit nonzero when a row is skipped.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Group specs to check.
    pub specs: Vec<String>,
    /// Also check every catalog group up to this order.
    #[arg(long, value_name = "MAX_ORDER")]
    pub catalog: Option<u128>,
    /// Largest number of factors in catalog products.
    #[arg(long, default_value_t = 2)]
    pub factors: usize,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Target signature, e.g. `S1` or `(S0 S2)^2`.
    pub signature: String,
    #[arg(long, default_value_t = 60)]
    pub max_order: u128,
    /// Largest number of factors in catalog products.
    #[arg(long, default_value_t = 2)]
    pub factors: usize,
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Graph(a) => cmd_graph(a, out),
        Command::Table(a) => cmd_table(a, out),
        Command::Check(a) => cmd_check(a, out),
        Command::Search(a) => cmd_search(a, out),
    }
}

fn graph_of(spec: &GroupSpec) -> Result<PropertyRGraph, CliError> {
    let g = Realizer::new(0).realize(spec)?;
    Ok(build_graph(&g)?)
}

fn write_artifact(path: &PathBuf, text: &str, out: &mut dyn Write) -> Result<(), CliError> {
    if path.as_os_str() == "-" {
        out.write_all(text.as_bytes())?;
    } else {
        fs::write(path, text)?;
    }
    Ok(())
}

fn verdict_line(t: &PropertyRGraph, variant: PropertyRVariant, v: PropertyRVerdict) -> String {
    match v.witness {
        Some(i) => format!(
            "property-r {variant}: {} (witness N{i} |{}|)",
            v.holds,
            t.lattice().node(i).order()
        ),
        None => format!("property-r {variant}: {}", v.holds),
    }
}

pub fn cmd_graph(a: &GraphArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let spec = parse_group_spec(&a.spec)?;
    let t = graph_of(&spec)?;
    let spec_text = spec.to_string();
    if let Some(path) = &a.dot {
        write_artifact(path, &emit_dot(&t), out)?;
    }
    if let Some(path) = &a.json {
        write_artifact(path, &emit_json(&GraphDocument::new(&spec_text, &t)?), out)?;
    }
    let summary = a.dot.is_none() && a.json.is_none() && !a.signature && a.property_r.is_none() && !a.check;
    if summary {
        writeln!(
            out,
            "{spec_text}: order {}, {} normal subgroups",
            t.group().order(),
            t.len()
        )?;
    }
    if a.signature || summary {
        writeln!(out, "{}", star_decomposition(&t)?)?;
    }
    let variants = match a.property_r {
        Some(v) => vec![v],
        None if summary => vec![PropertyRVariant::Strict, PropertyRVariant::Weak],
        None => vec![],
    };
    for v in variants {
        writeln!(out, "{}", verdict_line(&t, v, property_r(&t, v)))?;
    }
    if a.check {
        let violations = check_all(&t);
        for v in &violations {
            writeln!(out, "violation: {v}")?;
        }
        if !violations.is_empty() {
            return Err(CliError::Internal(format!(
                "{spec_text}: {} invariant violations",
                violations.len()
            )));
        }
        writeln!(out, "check: ok")?;
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub spec: String,
    pub order: u128,
    pub signature: Option<String>,
    pub skipped: Option<String>,
}

/// Rows for `family(n, q)` over each `q`, in the given order.
pub fn table_rows(family: &str, n: u32, qs: &[u32], cap: usize) -> Result<Vec<TableRow>, CliError> {
    let mut realizer = Realizer::new(0).with_cap(cap);
    let mut rows = Vec::with_capacity(qs.len());
    for &q in qs {
        let spec = parse_group_spec(&format!("{family}({n},{q})"))?;
        let mut row = TableRow {
            spec: spec.to_string(),
            order: spec.order(),
            signature: None,
            skipped: None,
        };
        match realizer.realize(&spec) {
            Ok(g) => row.signature = Some(star_decomposition(&build_graph(&g)?)?.to_string()),
            Err(CatalogError::Group(e @ GroupError::CapExceeded { .. })) => row.skipped = Some(e.to_string()),
            Err(e) => return Err(e.into()),
        }
        rows.push(row);
    }
    Ok(rows)
}

pub fn cmd_table(a: &TableArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let cap = if a.allow_large { usize::MAX } else { element_cap() };
    let rows = table_rows(&a.family, a.n, &a.q, cap)?;
    if a.json {
        let text = serde_json::to_string_pretty(&rows).map_err(|e| CliError::Internal(e.to_string()))?;
        writeln!(out, "{text}")?;
    } else {
        let width = rows.iter().map(|r| r.spec.len()).max().unwrap_or(0);
        for r in &rows {
            let last = match (&r.signature, &r.skipped) {
                (Some(s), _) => s.clone(),
                (None, Some(why)) => format!("skipped: {why}"),
                (None, None) => String::new(),
            };
            writeln!(out, "{:<width$}  {:>12}  {last}", r.spec, r.order)?;
        }
    }
    let skipped = rows.iter().filter(|r| r.skipped.is_some()).count();
    if a.strict && skipped > 0 {
        return Err(CliError::User(format!("{skipped} rows skipped")));
    }
    Ok(())
}

pub fn cmd_check(a: &CheckArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let mut specs = a
        .specs
        .iter()
        .map(|s| parse_group_spec(s))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(max) = a.catalog {
        specs.extend(catalog_specs(max, a.factors));
    }
    if specs.is_empty() {
        return Err(CliError::User("nothing to check: give specs or --catalog".into()));
    }
    let mut realizer = Realizer::new(512);
    let (mut passed, mut failed, mut skipped) = (0usize, 0usize, 0usize);
    for spec in &specs {
        let g = match realizer.realize(spec) {
            Ok(g) => g,
            Err(CatalogError::Group(e @ GroupError::CapExceeded { .. })) => {
                writeln!(out, "{spec}: skipped ({e})")?;
                skipped += 1;
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        let t = build_graph(&g)?;
        let violations = check_all(&t);
        if violations.is_empty() {
            passed += 1;
            if !a.specs.is_empty() && a.catalog.is_none() {
                writeln!(out, "{spec}: ok ({} vertices)", t.len())?;
            }
        } else {
            failed += 1;
            for v in &violations {
                writeln!(out, "{spec}: {v}")?;
            }
        }
    }
    writeln!(
        out,
        "checked {} groups: {passed} passed, {failed} failed, {skipped} skipped",
        specs.len()
    )?;
    if failed > 0 {
        return Err(CliError::Internal(format!("{failed} groups violate invariants")));
    }
    Ok(())
}

pub fn cmd_search(a: &SearchArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let target = parse_signature(&a.signature)?;
    if target.has_isolated_points() {
        writeln!(
            out,
            "{target}: unrealizable by any computed graph (Q(G, N) is defined for every N, so no vertex is isolated)"
        )?;
        writeln!(out, "0 matches")?;
        return Ok(());
    }
    let cap = element_cap();
    if a.max_order > cap as u128 {
        return Err(CliError::User(format!(
            "--max-order {} exceeds the element cap {cap}",
            a.max_order
        )));
    }
    let mut realizer = Realizer::new(a.max_order.min(512));
    let (mut matches, mut scanned) = (0usize, 0usize);
    for spec in catalog_specs(a.max_order, a.factors) {
        let g = realizer.realize(&spec)?;
        scanned += 1;
        if star_decomposition(&build_graph(&g)?)? == target {
            writeln!(out, "{spec}  order {}", g.order())?;
            matches += 1;
        }
    }
    writeln!(
        out,
        "{matches} matches among {scanned} groups of order at most {}",
        a.max_order
    )?;
    Ok(())
}
