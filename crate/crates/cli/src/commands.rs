use std::fs;

use serde_json::{json, Value};

use elliptica::catalog::{self, catalog, catalog_spec, ENTRIES};
use elliptica::dsl::{parse, serialize, Model};
use elliptica::invariants::{
    compare_models, dgl_invariants, dgl_ledger, sullivan_invariants, sullivan_ledger, DualityRow,
};
use elliptica::lie::{format_lie_element, TensorDisplay};
use elliptica::quillen::{whitehead_sequence_dgl, DGLModel, QuillenAnalysis};
use elliptica::sullivan::{whitehead_sequence, SullivanAnalysis, SullivanModel};
use elliptica::ExactnessFailure;

use crate::report::{model_info, render_table, Report, Status};

#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    pub max_degree: Option<u32>,
    pub verbose: bool,
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Reads and parses `path`, recording I/O and parse failures on `report`.
fn load(path: &str, report: &mut Report) -> Option<Model> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            report.fail(Status::IoError, json!({ "kind": "io", "path": path }), format!("{path}: {e}"));
            return None;
        }
    };
    match parse(&text) {
        Ok(m) => Some(m),
        Err(e) => {
            report.fail_parse(path, &e);
            None
        }
    }
}

fn load_one(path: &str) -> (Report, Option<Model>) {
    let mut report = Report::new();
    let model = load(path, &mut report);
    if let Some(m) = &model {
        report.model = model_info(m);
    }
    (report, model)
}

/// Sullivan verdicts always use at least the default elliptic window; a
/// larger `--max-degree` widens it, a smaller one only truncates tables.
fn sullivan_bounds(m: &SullivanModel, opts: Options) -> (u32, u32) {
    let default = m.default_bound();
    let verdict = opts.max_degree.map_or(default, |d| d.max(default));
    (verdict, opts.max_degree.unwrap_or(default))
}

fn quillen_bounds(m: &DGLModel, opts: Options) -> (u32, u32) {
    let default = m.eta_bound();
    let verdict = opts.max_degree.map_or(default, |d| d.max(default));
    (verdict, opts.max_degree.unwrap_or(default))
}

fn record_exactness(report: &mut Report, failure: &Option<ExactnessFailure>) {
    if let Some(f) = failure {
        report.fail_core(&elliptica::Error::Exactness(f.clone()));
    }
}

fn generator_rows(model: &Value) -> Vec<Vec<String>> {
    model["generators"]
        .as_array()
        .map(|gens| {
            gens.iter()
                .map(|g| {
                    vec![
                        g["name"].as_str().unwrap_or_default().to_string(),
                        g["degree"].to_string(),
                        g["differential"].as_str().unwrap_or_default().to_string(),
                    ]
                })
                .collect()
        })
        .unwrap_or_default()
}

pub fn check(path: &str) -> Report {
    let (mut report, model) = load_one(path);
    let Some(model) = model else { return report };
    let rows = generator_rows(&report.model);
    let nonzero = rows.iter().filter(|r| r[2] != "0").count();
    report.line(format!(
        "model {} ({}): {} generators, {nonzero} with nonzero differential",
        model.name(),
        model.kind().as_str(),
        rows.len()
    ));
    let d = match model {
        Model::Sullivan(_) => "d",
        Model::Quillen(_) => "δ",
    };
    report.lines(render_table(&["generator", "degree", d], &rows));
    report.line("valid: differential squares to zero, degrees and minimality checked");
    report.table("generators", report.model["generators"].clone());
    report
}

pub fn cohomology(path: &str, opts: Options) -> Report {
    let (mut report, model) = load_one(path);
    match model {
        Some(Model::Sullivan(m)) => sullivan_cohomology(&mut report, &m, opts),
        Some(Model::Quillen(m)) => quillen_homology(&mut report, &m, opts),
        None => {}
    }
    report
}

fn sullivan_cohomology(report: &mut Report, m: &SullivanModel, opts: Options) {
    let (bound, top) = sullivan_bounds(m, opts);
    report.bound = Some(bound);
    let analysis = match SullivanAnalysis::new(m, bound) {
        Ok(a) => a,
        Err(e) => return report.fail_core(&e),
    };
    let mut rows = Vec::new();
    let mut table = Vec::new();
    for d in 0..=top {
        let h = analysis.cohomology(d);
        let mut entry = json!({ "degree": d, "dim": h.dim() });
        let mut row = vec![d.to_string(), h.dim().to_string()];
        if opts.verbose {
            let reps: Vec<String> = h
                .representatives()
                .iter()
                .map(|e| e.display(m.generators()).to_string())
                .collect();
            row.push(reps.join(", "));
            entry["representatives"] = json!(reps);
        }
        rows.push(row);
        table.push(entry);
    }
    let mut headers = vec!["degree", "dim H^i"];
    if opts.verbose {
        headers.push("representatives");
    }
    report.line(format!("cohomology of {} through degree {top}", m.name()));
    report.lines(render_table(&headers, &rows));
    report.table("cohomology", table);
    match sullivan_invariants(m, Some(bound)) {
        Ok(r) => report.line(format!(
            "elliptic within bound {bound}: formal dimension {}",
            r.formal_dimension
        )),
        Err(e) => report.fail_core(&e),
    }
}

fn quillen_homology(report: &mut Report, m: &DGLModel, opts: Options) {
    let (bound, top) = quillen_bounds(m, opts);
    report.bound = Some(bound);
    let analysis = match QuillenAnalysis::new(m, bound) {
        Ok(a) => a,
        Err(e) => return report.fail_core(&e),
    };
    let mut rows = Vec::new();
    let mut table = Vec::new();
    for i in 1..=top {
        let h = analysis.homology(i);
        let mut entry = json!({ "degree": i, "dim": h.dim(), "homotopy_degree": i + 1 });
        let mut row = vec![i.to_string(), h.dim().to_string(), format!("pi_{}", i + 1)];
        if opts.verbose {
            let reps: Vec<String> = h
                .representatives()
                .iter()
                .map(|e| {
                    format_lie_element(m.generators(), e)
                        .unwrap_or_else(|_| TensorDisplay(m.generators(), e).to_string())
                })
                .collect();
            row.push(reps.join(", "));
            entry["representatives"] = json!(reps);
        }
        rows.push(row);
        table.push(entry);
    }
    let mut headers = vec!["degree", "dim H_i", "reads as"];
    if opts.verbose {
        headers.push("representatives");
    }
    report.line(format!("homology of the free Lie model {} through degree {top}", m.name()));
    report.line("H_i(L(W)) is the rational homotopy group pi_(i+1) of the modelled space");
    report.lines(render_table(&headers, &rows));
    report.table("homology", table);
    match analysis.eta() {
        Ok(_) => report.line(format!("homology vanishes in degrees {} and {bound}", bound - 1)),
        Err(e) => report.fail_core(&e),
    }
}

pub fn invariants(path: &str, opts: Options) -> Report {
    let (mut report, model) = load_one(path);
    match model {
        Some(Model::Sullivan(m)) => {
            let (bound, _) = sullivan_bounds(&m, opts);
            report.bound = Some(bound);
            match sullivan_invariants(&m, Some(bound)) {
                Ok(r) => {
                    let rows = vec![
                        vec!["chi_H".into(), r.chi_h.to_string()],
                        vec!["chi_V".into(), r.chi_v.to_string()],
                        vec!["rho".into(), r.rho.to_string()],
                        vec!["formal dimension".into(), r.formal_dimension.to_string()],
                        vec!["elliptic verified up to".into(), r.elliptic_verified_up_to.to_string()],
                        vec!["pure".into(), yes_no(r.pure).into()],
                        vec!["F0 (H^odd = 0)".into(), yes_no(r.f0).into()],
                        vec!["odd sphere".into(), yes_no(r.odd_sphere).into()],
                    ];
                    report.line(format!("invariants of {}", m.name()));
                    report.lines(render_table(&["invariant", "value"], &rows));
                    record_exactness(&mut report, &r.whitehead_failure);
                    report.table("invariants", &r);
                }
                Err(e) => report.fail_core(&e),
            }
        }
        Some(Model::Quillen(m)) => {
            report.bound = Some(m.eta_bound());
            match dgl_invariants(&m) {
                Ok(r) => {
                    let rows = vec![
                        vec!["eta (algebra grading)".into(), r.eta.to_string()],
                        vec!["eta (topological indexing)".into(), r.eta_topological_indexing.to_string()],
                        vec!["formal dimension".into(), r.formal_dimension.to_string()],
                        vec!["gamma certified up to".into(), r.bound.to_string()],
                    ];
                    report.line(format!("invariants of {}", m.name()));
                    report.lines(render_table(&["invariant", "value"], &rows));
                    let gamma: Vec<Vec<String>> = (1..=r.bound as usize)
                        .map(|i| {
                            vec![
                                i.to_string(),
                                r.dim_w[i].to_string(),
                                r.homology[i].to_string(),
                                r.truncated_homology[i].to_string(),
                                r.gamma[i].to_string(),
                            ]
                        })
                        .collect();
                    report.lines(render_table(&["degree", "W_i", "H_i", "H_i(trunc)", "Gamma_i"], &gamma));
                    record_exactness(&mut report, &r.whitehead_failure);
                    report.table("invariants", &r);
                }
                Err(e) => report.fail_core(&e),
            }
        }
        None => {}
    }
    report
}

pub fn whitehead(path: &str, opts: Options) -> Report {
    let (mut report, model) = load_one(path);
    match model {
        Some(Model::Sullivan(m)) => {
            let top = opts.max_degree.unwrap_or_else(|| m.default_bound());
            report.bound = Some(top);
            match whitehead_sequence(&m, top) {
                Ok(seq) => {
                    let rows: Vec<Vec<String>> = seq
                        .nodes
                        .iter()
                        .map(|n| {
                            [
                                n.degree as usize,
                                n.dim_h,
                                n.dim_v,
                                n.dim_l_next,
                                n.dim_h_next,
                                n.rank_projection,
                                n.rank_b,
                                n.rank_inclusion,
                            ]
                            .iter()
                            .map(usize::to_string)
                            .collect()
                        })
                        .collect();
                    report.line(format!("Whitehead sequence of {}: H^i -> V^i -> L^(i+1) -> H^(i+1)", m.name()));
                    report.lines(render_table(
                        &["i", "H^i", "V^i", "L^(i+1)", "H^(i+1)", "rk H->V", "rk b^i", "rk L->H"],
                        &rows,
                    ));
                    exactness_verdict(&mut report, &seq.first_failure);
                    report.table("nodes", &seq.nodes);
                }
                Err(e) => report.fail_core(&e),
            }
        }
        Some(Model::Quillen(m)) => {
            let top = opts.max_degree.unwrap_or_else(|| m.eta_bound());
            report.bound = Some(top);
            match whitehead_sequence_dgl(&m, top) {
                Ok(seq) => {
                    let rows: Vec<Vec<String>> = seq
                        .nodes
                        .iter()
                        .map(|n| {
                            [
                                n.degree as usize,
                                n.dim_w_next,
                                n.dim_gamma,
                                n.dim_h,
                                n.dim_w,
                                n.rank_b_next,
                                n.rank_inclusion,
                                n.rank_hurewicz,
                            ]
                            .iter()
                            .map(usize::to_string)
                            .collect()
                        })
                        .collect();
                    report.line(format!(
                        "Whitehead sequence of {}: W_(i+1) -> Gamma_i -> H_i -> W_i",
                        m.name()
                    ));
                    report.lines(render_table(
                        &["i", "W_(i+1)", "Gamma_i", "H_i", "W_i", "rk b_(i+1)", "rk Gamma->H", "rk H->W"],
                        &rows,
                    ));
                    exactness_verdict(&mut report, &seq.first_failure);
                    report.table("nodes", &seq.nodes);
                }
                Err(e) => report.fail_core(&e),
            }
        }
        None => {}
    }
    report
}

fn exactness_verdict(report: &mut Report, failure: &Option<ExactnessFailure>) {
    match failure {
        None => report.line("exact at every node"),
        Some(_) => {
            report.line("NOT exact");
            record_exactness(report, failure);
        }
    }
}

pub fn verify(path: &str, opts: Options) -> Report {
    let (mut report, model) = load_one(path);
    let ledger = match model {
        Some(Model::Sullivan(m)) => {
            let (bound, _) = sullivan_bounds(&m, opts);
            report.bound = Some(bound);
            sullivan_invariants(&m, Some(bound)).map(|r| {
                let ledger = sullivan_ledger(&r);
                report.table("invariants", &r);
                ledger
            })
        }
        Some(Model::Quillen(m)) => {
            report.bound = Some(m.eta_bound());
            dgl_invariants(&m).map(|r| {
                let ledger = dgl_ledger(&r);
                report.table("invariants", &r);
                ledger
            })
        }
        None => return report,
    };
    let ledger = match ledger {
        Ok(l) => l,
        Err(e) => {
            report.fail_core(&e);
            return report;
        }
    };
    let rows: Vec<Vec<String>> = ledger
        .entries
        .iter()
        .map(|e| vec![e.status.to_string(), e.claim.clone(), e.witness.clone()])
        .collect();
    report.lines(render_table(&["status", "claim", "witness"], &rows));
    if opts.verbose {
        for e in &ledger.entries {
            report.line(format!("{}: {}", e.claim, e.statement));
        }
    }
    let violated: Vec<String> = ledger.violations().map(|e| e.claim.clone()).collect();
    if violated.is_empty() {
        report.line(format!("all {} claims hold or do not apply", ledger.entries.len()));
    } else {
        report.fail(
            Status::InvariantBreach,
            json!({ "kind": "violated-claims", "claims": violated }),
            format!("violated claims: {}", violated.join(", ")),
        );
    }
    report.ledger = ledger.entries;
    report
}

fn duality_rows(rows: &[DualityRow]) -> Vec<Vec<String>> {
    rows.iter()
        .map(|r| {
            vec![
                r.degree.to_string(),
                r.left.to_string(),
                r.right.to_string(),
                if r.left == r.right { "" } else { "<-" }.into(),
            ]
        })
        .collect()
}

pub fn compare(first: &str, second: &str) -> Report {
    let mut report = Report::new();
    let a = load(first, &mut report);
    let b = load(second, &mut report);
    let (Some(a), Some(b)) = (a, b) else { return report };
    let (s, q) = match (a, b) {
        (Model::Sullivan(s), Model::Quillen(q)) | (Model::Quillen(q), Model::Sullivan(s)) => (s, q),
        (a, _) => {
            let kind = a.kind().as_str();
            report.fail(
                Status::UsageError,
                json!({ "kind": "usage" }),
                format!("compare needs one Sullivan and one Quillen model, got two {kind} models"),
            );
            return report;
        }
    };
    report.model = json!({
        "sullivan": model_info(&Model::Sullivan(s.clone())),
        "quillen": model_info(&Model::Quillen(q.clone())),
    });
    let d = match compare_models(&s, &q) {
        Ok(d) => d,
        Err(e) => {
            report.fail_core(&e);
            return report;
        }
    };
    report.bound = Some(d.bound);
    report.line(format!("{} against {}", s.name(), q.name()));
    report.line(format!("rho = {}, eta = {}", d.rho, d.eta));
    report.line("L^k against Gamma_(k-2):");
    report.lines(render_table(&["k", "L^k", "Gamma_(k-2)", ""], &duality_rows(&d.connecting)));
    report.line("V^i against H_(i-1)(L(W)):");
    report.lines(render_table(&["i", "V^i", "H_(i-1)", ""], &duality_rows(&d.homotopy)));
    report.line("H^i(ΛV) against W_(i-1):");
    report.lines(render_table(&["i", "H^i", "W_(i-1)", ""], &duality_rows(&d.homology)));
    report.table("connecting", &d.connecting);
    report.table("homotopy", &d.homotopy);
    report.table("homology", &d.homology);
    report.table("rho", d.rho);
    report.table("eta", d.eta);
    match &d.first_mismatch {
        None => report.line("all degrees match"),
        Some(m) => report.fail(
            Status::Mismatch,
            json!({ "kind": "mismatch", "check": m.check, "degree": m.degree, "left": m.left, "right": m.right }),
            format!("mismatch: {} differs in degree {} ({} vs {})", m.check, m.degree, m.left, m.right),
        ),
    }
    report
}

pub fn catalog_list() -> Report {
    let mut report = Report::new();
    let mut entries = Vec::new();
    for e in ENTRIES {
        let signature = if e.parameters.is_empty() {
            e.name.to_string()
        } else {
            format!("{}({})", e.name, e.parameters)
        };
        report.line(format!("# {signature} : {}  {}", e.kind, e.summary));
        entries.push(json!({ "name": e.name, "parameters": e.parameters, "kind": e.kind, "summary": e.summary }));
    }
    report.table("entries", entries);
    report
}

pub fn catalog_show(name: &str, params: &[u32]) -> Report {
    let mut report = Report::new();
    let model = if name.contains('(') {
        if params.is_empty() {
            catalog_spec(name)
        } else {
            Err(catalog::CatalogError::BadParameter {
                entry: name.into(),
                reason: "give parameters either inline or as arguments".into(),
            })
        }
    } else {
        catalog(name, params)
    };
    match model {
        Ok(m) => {
            let text = serialize(&m);
            report.model = model_info(&m);
            report.lines(text.lines().map(String::from));
            report.table("rhm", text);
        }
        Err(e) => report.fail(Status::UsageError, json!({ "kind": "catalog" }), format!("error: {e}")),
    }
    report
}
