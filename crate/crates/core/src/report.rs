//! Run configuration, report rendering and exit statuses for the driver.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::Result;
use crate::identities::CATALOG;
use crate::invariant::{catalog_model, catalog_names, identity_residual, HarmonicTable, InvariantComplex, LieModel};
use crate::jet::{verify_identity, MetricChart, DEFAULT_SEED, DEFAULT_TRIALS};
use crate::scalar::format_rational;
use crate::verify::{lookup_theorem, theorem_ids, verify, Context, Status, Verdict};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelSource {
    Catalog(String),
    File(PathBuf),
}

impl ModelSource {
    /// A catalog name, or a path when the argument is an existing file or ends in `.json`.
    pub fn parse(arg: &str) -> Self {
        if catalog_names().contains(&arg) {
            return ModelSource::Catalog(arg.to_string());
        }
        let path = Path::new(arg);
        if path.is_file() || arg.ends_with(".json") {
            ModelSource::File(path.to_path_buf())
        } else {
            ModelSource::Catalog(arg.to_string())
        }
    }

    pub fn load(&self) -> Result<LieModel> {
        match self {
            ModelSource::Catalog(name) => catalog_model(name),
            ModelSource::File(path) => LieModel::load(path),
        }
    }

    pub fn is_catalog(&self) -> bool {
        matches!(self, ModelSource::Catalog(_))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Tables,
    Theorems,
    All,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Text,
    Csv,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub source: ModelSource,
    pub suite: Suite,
    /// Empty means every theorem.
    pub theorems: Vec<String>,
    pub format: Format,
    pub seed: u64,
    /// Jet chart for the pointwise identity suite: a built-in name or a chart file.
    pub chart: Option<String>,
    pub explain: bool,
}

impl RunConfig {
    pub fn new(source: ModelSource, suite: Suite) -> Self {
        Self {
            source,
            suite,
            theorems: Vec::new(),
            format: Format::Text,
            seed: DEFAULT_SEED,
            chart: None,
            explain: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub status: i32,
    pub output: String,
}

/// One row of the harmonic table: `quantity,k,p,q,value`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub quantity: &'static str,
    pub k: Option<usize>,
    pub bidegree: Option<(usize, usize)>,
    pub value: i64,
}

/// Rows in degree-major order, then by `p`.
pub fn table_rows(t: &HarmonicTable) -> Vec<Row> {
    let mut rows = Vec::new();
    let row = |quantity, k, bidegree, value: usize| Row {
        quantity,
        k: Some(k),
        bidegree,
        value: value as i64,
    };
    for k in 0..=2 * t.n {
        rows.push(row("b", k, None, t.b(k)));
        rows.push(row("b_theta", k, None, t.b_theta(k)));
        rows.push(row("h_box", k, None, t.h_box_degree(k)));
        if let Some(s) = t.s(k).filter(|_| k < t.n) {
            rows.push(row("s", k, None, s));
        }
        for bd in t.bidegrees_of(k) {
            let pq = Some((bd.p, bd.q));
            rows.push(row("h", k, pq, t.h(bd.p, bd.q)));
            rows.push(row("h_box", k, pq, t.h_box(bd.p, bd.q)));
            if let Some(s) = t.s_pq(bd.p, bd.q).filter(|_| k < t.n) {
                rows.push(row("s", k, pq, s));
            }
        }
    }
    rows.push(Row {
        quantity: "chi",
        k: None,
        bidegree: None,
        value: t.euler_characteristic(),
    });
    rows
}

pub fn render_table_csv(t: &HarmonicTable) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["quantity", "k", "p", "q", "value"]).expect("in-memory write");
    for r in table_rows(t) {
        let opt = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_default();
        w.write_record([
            r.quantity.to_string(),
            opt(r.k),
            opt(r.bidegree.map(|b| b.0)),
            opt(r.bidegree.map(|b| b.1)),
            r.value.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

pub fn render_table_text(t: &HarmonicTable, catalog: bool) -> String {
    let mut out = String::new();
    let label = if catalog {
        "invariant-complex dimensions"
    } else {
        "invariant-complex dimensions (lower-bound certificate for kernel dimensions of the elliptic operator)"
    };
    let _ = writeln!(out, "{} (n = {}): {label}", t.model, t.n);
    let _ = writeln!(out, "{:<8} {:>2} {:>6} {:>5}", "quantity", "k", "(p,q)", "value");
    for r in table_rows(t) {
        let k = r.k.map(|k| k.to_string()).unwrap_or_else(|| "-".into());
        let pq = r.bidegree.map(|(p, q)| format!("({p},{q})")).unwrap_or_else(|| "-".into());
        let _ = writeln!(out, "{:<8} {:>2} {:>6} {:>5}", r.quantity, k, pq, r.value);
    }
    out
}

pub fn render_verdict(v: &Verdict, explain: bool) -> String {
    let mut out = format!("{:<8} {:<16} {:<4} {}", v.id, v.model, v.status.to_string(), v.summary);
    if let Some(h) = &v.hypothesis {
        let _ = write!(out, " [{h}]");
    }
    out = out.trim_end().to_string();
    out.push('\n');
    if explain {
        let _ = writeln!(out, "    statement: {}", v.statement);
        for c in &v.comparisons {
            let _ = writeln!(out, "    [{}] {}", if c.holds { "ok" } else { "FAIL" }, c.label);
        }
    } else {
        for c in v.failures() {
            let _ = writeln!(out, "    [FAIL] {}", c.label);
        }
    }
    out
}

pub fn render_verdicts_csv(verdicts: &[Verdict]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["theorem", "model", "status", "summary"]).expect("in-memory write");
    for v in verdicts {
        w.write_record([v.id, v.model.as_str(), &v.status.to_string(), v.summary.as_str()])
            .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

/// Matrix identity suite on the invariant complex; returns lines and whether all vanish.
pub fn identity_report(cx: &InvariantComplex) -> (String, bool) {
    let mut out = String::new();
    let mut ok = true;
    for id in CATALOG.iter() {
        let r = identity_residual(cx, id);
        let max = r.max_norm_sqr();
        let pass = r.is_zero();
        ok &= pass;
        let _ = writeln!(
            out,
            "{:<6} {:<16} {:<4} |residual|^2 max = {}  {}",
            id.id,
            cx.model().name(),
            if pass { "PASS" } else { "FAIL" },
            format_rational(&max),
            id
        );
    }
    (out, ok)
}

pub fn load_chart(arg: &str) -> Result<MetricChart> {
    if MetricChart::BUILTIN.contains(&arg) {
        MetricChart::builtin(arg)
    } else {
        MetricChart::load(Path::new(arg))
    }
}

/// Pointwise identity suite on a jet chart.
pub fn chart_report(chart: &MetricChart, seed: u64) -> Result<(String, bool)> {
    let ops = chart.operators()?;
    let mut out = String::new();
    let mut ok = true;
    for id in CATALOG.iter() {
        let r = verify_identity(chart, &ops, id, DEFAULT_TRIALS, seed)?;
        let pass = r.is_zero();
        ok &= pass;
        let _ = writeln!(
            out,
            "{:<6} chart={:<16} {:<4} forms={} trials={} seed={seed} max residual = {} (operator {})",
            id.id,
            chart.name(),
            if pass { "PASS" } else { "FAIL" },
            r.spanning_forms,
            r.trials,
            format_rational(&r.base_point),
            format_rational(&r.operator),
        );
    }
    Ok((out, ok))
}

fn selected_theorems(config: &RunConfig) -> Result<Vec<&'static str>> {
    if config.theorems.is_empty() {
        return Ok(theorem_ids());
    }
    config.theorems.iter().map(|t| lookup_theorem(t)).collect()
}

/// Executes a configuration. Input errors map to exit status 2.
pub fn run(config: &RunConfig) -> Outcome {
    match run_inner(config) {
        Ok(o) => o,
        Err(e) => Outcome {
            status: EXIT_INPUT,
            output: format!("error: {e}\n"),
        },
    }
}

fn run_inner(config: &RunConfig) -> Result<Outcome> {
    // reject bad input before computing anything
    let theorems = selected_theorems(config)?;
    let model = config.source.load()?;
    let chart = config.chart.as_deref().map(load_chart).transpose()?;
    let ctx = Context::new(&model)?;
    let mut out = String::new();
    let mut ok = true;
    let identities = matches!(config.suite, Suite::Identities | Suite::All);
    let tables = matches!(config.suite, Suite::Tables | Suite::All);
    let proving = matches!(config.suite, Suite::Theorems | Suite::All);
    if identities {
        let (text, pass) = identity_report(ctx.complex());
        out.push_str(&text);
        ok &= pass;
        if let Some(chart) = &chart {
            let (text, pass) = chart_report(chart, config.seed)?;
            out.push_str(&text);
            ok &= pass;
        }
    }
    if tables {
        let t = ctx.table();
        match config.format {
            Format::Csv => out.push_str(&render_table_csv(t)),
            Format::Text => out.push_str(&render_table_text(t, config.source.is_catalog())),
        }
    }
    if proving {
        let verdicts: Vec<Verdict> = theorems.iter().map(|id| verify(&ctx, id)).collect::<Result<_>>()?;
        ok &= verdicts.iter().all(|v| v.status != Status::Fail);
        match config.format {
            Format::Csv if !tables => out.push_str(&render_verdicts_csv(&verdicts)),
            _ => {
                for v in &verdicts {
                    out.push_str(&render_verdict(v, config.explain));
                }
            }
        }
    }
    Ok(Outcome {
        status: if ok { EXIT_PASS } else { EXIT_FAIL },
        output: out,
    })
}

pub fn catalog_listing() -> String {
    format!("{}\n", catalog_names().join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(model: &str, suite: Suite) -> RunConfig {
        RunConfig::new(ModelSource::parse(model), suite)
    }

    #[test]
    fn csv_rows_are_degree_major() {
        let mut c = cfg("hopf-surface", Suite::Tables);
        c.format = Format::Csv;
        let o = run(&c);
        assert_eq!(o.status, EXIT_PASS);
        let lines: Vec<&str> = o.output.lines().collect();
        assert_eq!(lines[0], "quantity,k,p,q,value");
        let b: Vec<&str> = lines.iter().filter(|l| l.starts_with("b,")).map(|l| l.rsplit(',').next().unwrap()).collect();
        assert_eq!(b, ["1", "1", "0", "1", "1"]);
        assert!(lines.iter().filter(|l| l.starts_with("h_box,")).all(|l| l.ends_with(",0")));
        assert_eq!(o.output, run(&c).output);
    }

    #[test]
    fn text_and_csv_carry_the_same_numbers() {
        let t = HarmonicTable::compute(&InvariantComplex::new(&catalog_model("kodaira-surface").unwrap()).unwrap());
        let from_csv: Vec<String> = render_table_csv(&t).lines().skip(1).map(|l| l.rsplit(',').next().unwrap().to_string()).collect();
        let from_text: Vec<String> = render_table_text(&t, true)
            .lines()
            .skip(2)
            .map(|l| l.split_whitespace().last().unwrap().to_string())
            .collect();
        assert_eq!(from_csv, from_text);
    }

    #[test]
    fn input_errors_exit_two() {
        assert_eq!(run(&cfg("no-such-model", Suite::All)).status, EXIT_INPUT);
        let mut c = cfg("torus4", Suite::Theorems);
        c.theorems = vec!["T99".into()];
        assert_eq!(run(&c).status, EXIT_INPUT);
        assert_eq!(run(&cfg("/nonexistent/model.json", Suite::Tables)).status, EXIT_INPUT);
    }

    #[test]
    fn torus_passes_everything() {
        assert_eq!(run(&cfg("torus4", Suite::All)).status, EXIT_PASS);
    }
}
