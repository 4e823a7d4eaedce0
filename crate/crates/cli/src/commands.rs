use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigUint;
use serde_json::{json, Value};

use fusionk::bratteli::{build_bratteli, export_dot};
use fusionk::conditions::{chain_group, check_c1, check_c2, check_c3, rebase_exponent};
use fusionk::table::verify_fusion_isomorphism;
use fusionk::{
    backend_from_spec, k_theory_of_fixed_point, parse_fusion_table, Error, Fusion, Label, Rep,
    TriState,
};

use crate::args::{Cli, Command, Format};

pub struct Output {
    pub text: String,
    pub exit: u8,
}

pub enum Failure {
    Usage(String),
    Domain(Error),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Domain(Error::C3Gate(_)) | Failure::Domain(Error::Validation(_)) => 2,
            _ => 1,
        }
    }

    pub fn code_and_message(&self) -> (&'static str, String) {
        match self {
            Failure::Usage(m) => ("usage", m.clone()),
            Failure::Domain(e) => (e.code(), e.to_string()),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Result<T> = std::result::Result<T, Failure>;

fn ok(text: String) -> Result<Output> {
    Ok(Output { text, exit: 0 })
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

fn load_backend(spec: &str) -> Result<Fusion> {
    match spec.strip_prefix("table:") {
        Some(path) => {
            let bytes = read(Path::new(path))?;
            Ok(parse_fusion_table(&bytes)?)
        }
        None => Ok(backend_from_spec(spec)?),
    }
}

fn read(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn alpha(cli: &Cli, fusion: &Fusion) -> Result<Rep> {
    match &cli.alpha {
        Some(text) => Ok(fusion.parse_rep(text)?),
        None => fusion.backend().default_alpha().ok_or_else(|| {
            Failure::Usage(format!("--alpha is required for backend {}", fusion.name()))
        }),
    }
}

fn require_format(cli: &Cli, allowed: &[Format]) -> Result<()> {
    if allowed.contains(&cli.format) {
        Ok(())
    } else {
        Err(Failure::Usage(
            format!("format {:?} is not available for this command", cli.format).to_lowercase(),
        ))
    }
}

fn rep_terms(r: &Rep) -> Value {
    r.iter()
        .map(|(l, m)| json!({"label": l.to_string(), "mult": m.to_string()}))
        .collect()
}

pub fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Decompose { levels } => decompose(cli, levels.unwrap_or(cli.max_level)),
        Command::Check => check(cli),
        Command::Bratteli { levels } => bratteli(cli, levels.unwrap_or(cli.max_level)),
        Command::Ktheory => ktheory(cli),
        Command::Validate { table } => validate(cli, table.as_deref()),
        Command::Isocheck {
            other,
            mapping,
            budget,
        } => isocheck(cli, other, mapping, budget.unwrap_or(16)),
    }
}

fn decompose(cli: &Cli, levels: usize) -> Result<Output> {
    require_format(cli, &[Format::Json, Format::Text])?;
    let fusion = load_backend(&cli.backend)?;
    let a = alpha(cli, &fusion)?;
    let powers = fusion.tensor_powers(&a, levels)?;
    let mut dims = Vec::with_capacity(powers.len());
    for p in &powers {
        dims.push(fusion.dim_rep(p)?);
    }
    if cli.format == Format::Json {
        let levels: Vec<Value> = powers
            .iter()
            .zip(&dims)
            .enumerate()
            .map(|(l, (p, d))| json!({"L": l, "rep": p.to_string(), "terms": rep_terms(p), "dim": d.to_string()}))
            .collect();
        return ok(pretty(
            &json!({"backend": fusion.name(), "alpha": a.to_string(), "levels": levels}),
        ));
    }
    let mut s = String::new();
    for (l, (p, d)) in powers.iter().zip(&dims).enumerate() {
        writeln!(s, "α^{l} = {p}    [dim {d}]").unwrap();
    }
    ok(s)
}

fn check(cli: &Cli) -> Result<Output> {
    require_format(cli, &[Format::Json, Format::Text])?;
    let fusion = load_backend(&cli.backend)?;
    let a = alpha(cli, &fusion)?;
    let budget = cli.max_level;
    let c1 = check_c1(&fusion, &a, budget)?;
    let c2 = check_c2(&a)?.map(|n: BigUint| n.to_string());
    let c3 = check_c3(&fusion, &a, budget)?;
    let seeds: Vec<Label> = a.support().cloned().collect();
    let cg = chain_group(&fusion, &seeds, budget)?;
    let rebase = rebase_exponent(&fusion, &a, budget)?;

    if cli.format == Format::Json {
        let c1_json: serde_json::Map<String, Value> = c1
            .iter()
            .map(|(l, s)| {
                (
                    l.to_string(),
                    s.clone().map(|w| w.to_string()).to_json(budget),
                )
            })
            .collect();
        let doc = json!({
            "backend": fusion.name(),
            "alpha": a.to_string(),
            "max_level": budget,
            "c1": c1_json,
            "c2": c2.to_json(budget),
            "c3": c3.to_json(budget),
            "chain_group": cg.to_json(),
            "rebase_M": rebase,
        });
        return ok(pretty(&doc));
    }
    let mut s = String::new();
    writeln!(s, "backend {}  α = {}  budget {budget}", fusion.name(), a).unwrap();
    writeln!(s, "C1:").unwrap();
    for (l, state) in &c1 {
        writeln!(s, "  {l}: {state}").unwrap();
    }
    writeln!(s, "C2: {c2}").unwrap();
    writeln!(s, "C3: {c3}").unwrap();
    writeln!(
        s,
        "chain group: {} classes, {} (complete: {})",
        cg.num_classes(),
        cg.iso_hint,
        cg.complete
    )
    .unwrap();
    match rebase {
        Some(m) => writeln!(s, "rebase exponent: {m}").unwrap(),
        None => writeln!(s, "rebase exponent: unknown").unwrap(),
    }
    ok(s)
}

fn bratteli(cli: &Cli, levels: usize) -> Result<Output> {
    let fusion = load_backend(&cli.backend)?;
    let a = alpha(cli, &fusion)?;
    let d = build_bratteli(&fusion, &a, levels)?;
    match cli.format {
        Format::Dot => ok(export_dot(&d)),
        Format::Json => ok(pretty(&d.to_json())),
        Format::Text => {
            let mut s = String::new();
            for (l, lvl) in d.levels.iter().enumerate() {
                let row: Vec<String> = lvl.iter().map(|(t, m)| format!("{t}^{m}")).collect();
                writeln!(s, "{l}: {}", row.join("  ")).unwrap();
            }
            ok(s)
        }
    }
}

fn ktheory(cli: &Cli) -> Result<Output> {
    require_format(cli, &[Format::Json, Format::Text])?;
    let fusion = load_backend(&cli.backend)?;
    let a = alpha(cli, &fusion)?;
    let r = k_theory_of_fixed_point(&fusion, &a, cli.max_level, cli.auto_rebase)?;
    if cli.format == Format::Json {
        return ok(pretty(&r.to_json()));
    }
    let mut s = String::new();
    writeln!(
        s,
        "α = {}  (rebase M = {}, C3 witness N = {})",
        r.rebased_alpha, r.rebase_m, r.c3_witness
    )
    .unwrap();
    for l in &r.per_level {
        let unit: Vec<String> = l.unit_class.iter().map(ToString::to_string).collect();
        writeln!(
            s,
            "  Q_{} = {}    [1] = ({})    ker rank {}",
            l.level,
            l.presentation,
            unit.join(", "),
            l.kernel_rank
        )
        .unwrap();
    }
    match r.stable_from {
        Some(l) => writeln!(s, "stabilized from L = {l}").unwrap(),
        None => writeln!(s, "no stabilization within budget").unwrap(),
    }
    if let Some(k0) = &r.verdict.k0 {
        writeln!(s, "K0 = {k0}").unwrap();
    }
    writeln!(s, "K1: {}", r.verdict.k1).unwrap();
    if let Some(m) = &r.verdict.model {
        writeln!(s, "invariants match {m}").unwrap();
    }
    ok(s)
}

fn validate(cli: &Cli, table: Option<&Path>) -> Result<Output> {
    require_format(cli, &[Format::Json, Format::Text])?;
    let path = match (table, cli.backend.strip_prefix("table:")) {
        (Some(p), _) => p.to_path_buf(),
        (None, Some(p)) => p.into(),
        (None, None) => {
            return Err(Failure::Usage(
                "validate needs --table or a table:<path> backend".into(),
            ))
        }
    };
    let fusion = parse_fusion_table(&read(&path)?)?;
    let labels = fusion.backend().sample_labels(usize::MAX).len();
    let report = fusionk::validate_backend(&fusion, labels);
    if cli.format == Format::Json {
        let doc = json!({
            "valid": report.passes(),
            "name": fusion.name(),
            "labels": labels,
            "skipped_products": report.skipped_products,
        });
        return ok(pretty(&doc));
    }
    ok(format!(
        "{}: valid ({labels} labels, {} undefined products skipped)\n",
        fusion.name(),
        report.skipped_products
    ))
}

fn isocheck(cli: &Cli, other: &str, mapping: &Path, budget: usize) -> Result<Output> {
    require_format(cli, &[Format::Json, Format::Text])?;
    let b1 = load_backend(&cli.backend)?;
    let b2 = load_backend(other)?;
    let raw: BTreeMap<String, String> = serde_json::from_slice(&read(mapping)?)
        .map_err(|e| Failure::Usage(format!("mapping file: {e}")))?;
    let mut map = BTreeMap::new();
    for (from, to) in &raw {
        map.insert(b1.parse_label(from)?, b2.parse_label(to)?);
    }
    let state = verify_fusion_isomorphism(&b1, &b2, &map, budget)?;
    let exit = if state.fails() { 2 } else { 0 };
    let text = if cli.format == Format::Json {
        pretty(&state.to_json(budget))
    } else {
        match &state {
            TriState::Holds(n) => format!("isomorphism holds on {n} pairs (budget {budget})\n"),
            other => format!("{other}\n"),
        }
    };
    Ok(Output { text, exit })
}
