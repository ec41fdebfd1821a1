//! The four verification pipelines behind the subcommands. Each returns a
//! machine-readable report plus pre-rendered human-readable sections, or an
//! input error (exit 2).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::path::Path;
use std::str::FromStr;

use csm_core::arrangements::{complement_report, parse_arrangement};
use csm_core::cells::{
    csm_cell_projective, emit_table, parse_table, ssm_cell_projective, tangent_chern_class,
    CsmTable, SsmTable,
};
use csm_core::constructible::{
    behrend_function, euler_characteristic, reconstruct, to_cc_coefficients, ConstructibleFn,
    LoadedPoset,
};
use csm_core::io::IngestError;
use csm_core::ring::{GradedClass, ModelKind, RingModel};
use csm_core::{fixtures, Partition};

use crate::render::{class_expression, class_table, model_labels, partition_label};
use crate::report::{ReportBuilder, RunReport};

pub struct InputError(pub String);

impl From<IngestError> for InputError {
    fn from(e: IngestError) -> Self {
        InputError(e.to_string())
    }
}

pub struct CommandOutput {
    pub report: RunReport,
    pub sections: Vec<String>,
}

fn read_input(rb: &mut ReportBuilder, path: &Path) -> Result<String, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))?;
    rb.hash_input(text.as_bytes());
    Ok(text)
}

fn table_value(table_model: &RingModel, matrix: &[Vec<BigInt>]) -> serde_json::Value {
    serde_json::from_str(&emit_table(table_model, matrix)).expect("emitted table is valid json")
}

fn describe_kind(kind: ModelKind) -> String {
    match kind {
        ModelKind::Projective { n } => format!("projective n={n}"),
        ModelKind::Grassmannian { k, n } => format!("grassmannian k={k} n={n}"),
    }
}

// ---------------------------------------------------------------------------
// shared check battery for SSM tables

fn unitriangular_witness(t: &SsmTable) -> Option<String> {
    let model = t.model();
    let labels = model_labels(model);
    for u in 0..t.len() {
        if !t.entry(u, u).is_one() {
            return Some(format!("diagonal entry at {} is {}", labels[u], t.entry(u, u)));
        }
        for w in 0..t.len() {
            if w != u && model.dim_of(w) >= model.dim_of(u) && !t.entry(u, w).is_zero() {
                return Some(format!(
                    "cell {} carries {} on {}, which does not have smaller dimension",
                    labels[u],
                    t.entry(u, w),
                    labels[w]
                ));
            }
        }
    }
    None
}

fn point_row_witness(t: &SsmTable) -> Option<String> {
    let labels = model_labels(t.model());
    for w in 0..t.len() {
        let want = if w == 0 { BigInt::one() } else { BigInt::zero() };
        if t.entry(0, w) != want {
            return Some(format!("point row has {} on {}", t.entry(0, w), labels[w]));
        }
    }
    None
}

fn unity_witness(csm: &CsmTable) -> Option<String> {
    let labels = model_labels(csm.model());
    let sum = csm.row_sum().to_dense();
    let want = tangent_chern_class(csm.model()).to_dense();
    for (p, (got, want)) in sum.iter().zip(&want).enumerate() {
        if got != want {
            return Some(format!("row sum has {got} on {}, tangent class has {want}", labels[p]));
        }
    }
    None
}

/// Unitriangularity, point-row purity, sign alternation, the csm round
/// trip, and the partition of unity against the tangent engine.
fn ssm_check_battery(rb: &mut ReportBuilder, ssm: &SsmTable) {
    let labels = model_labels(ssm.model());

    rb.check("unitriangular", ssm.is_unitriangular(), unitriangular_witness(ssm));
    rb.check("point-row-purity", ssm.point_row_is_pure(), point_row_witness(ssm));

    let violations = ssm.alternation_violations();
    let witness = violations.first().map(|v| {
        format!(
            "cell {}, class {}: coefficient {} breaks the dimension-gap sign",
            labels[v.cell], labels[v.class_pos], v.value
        )
    });
    rb.check("sign-alternation", violations.is_empty(), witness);

    let csm = ssm.to_csm();
    rb.check(
        "round-trip",
        csm.to_ssm() == *ssm,
        Some("csm conversion does not invert back to the input table".to_string()),
    );
    rb.check("partition-of-unity", csm.partition_of_unity_holds(), unity_witness(&csm));
}

// ---------------------------------------------------------------------------
// grassmannian

enum Source {
    Builtin,
    Builtin31,
    CsmFile(std::path::PathBuf),
    SsmFile(std::path::PathBuf),
    Generative,
}

pub fn cmd_grassmannian(
    k: u32,
    n: u32,
    fixture: Option<String>,
    csm_file: Option<std::path::PathBuf>,
    ssm_file: Option<std::path::PathBuf>,
) -> Result<CommandOutput, InputError> {
    if k == 0 || k >= n {
        return Err(InputError(format!("need 1 <= k < n, got k={k} n={n}")));
    }
    let given = usize::from(fixture.is_some())
        + usize::from(csm_file.is_some())
        + usize::from(ssm_file.is_some());
    if given > 1 {
        return Err(InputError(
            "choose at most one of --fixture, --csm-file, --ssm-file".to_string(),
        ));
    }
    let source = match (fixture, csm_file, ssm_file) {
        (Some(id), _, _) => match id.as_str() {
            "builtin" => Source::Builtin,
            "builtin-31" => Source::Builtin31,
            other => {
                return Err(InputError(format!(
                    "unknown fixture `{other}` (available: builtin, builtin-31)"
                )))
            }
        },
        (_, Some(p), _) => Source::CsmFile(p),
        (_, _, Some(p)) => Source::SsmFile(p),
        (None, None, None) => match (k, n) {
            (2, 5) => Source::Builtin,
            (2, 6) => Source::Builtin31,
            (1, _) => Source::Generative,
            _ => {
                return Err(InputError(format!(
                    "no builtin table covers k={k} n={n}; supply --csm-file or --ssm-file"
                )))
            }
        },
    };

    let mut echo = vec![
        "grassmannian".to_string(),
        "--k".to_string(),
        k.to_string(),
        "--n".to_string(),
        n.to_string(),
    ];
    match &source {
        Source::Builtin => echo.extend(["--fixture".to_string(), "builtin".to_string()]),
        Source::Builtin31 => echo.extend(["--fixture".to_string(), "builtin-31".to_string()]),
        Source::CsmFile(p) => {
            echo.extend(["--csm-file".to_string(), p.display().to_string()])
        }
        Source::SsmFile(p) => {
            echo.extend(["--ssm-file".to_string(), p.display().to_string()])
        }
        Source::Generative => {}
    }
    let mut rb = ReportBuilder::new(&echo);
    let mut sections = Vec::new();

    match source {
        Source::Builtin => {
            if (k, n) != (2, 5) {
                return Err(InputError(
                    "fixture `builtin` is the k=2 n=5 table; pass --k 2 --n 5".to_string(),
                ));
            }
            let builtin = fixtures::gr25();
            let table = builtin.table;
            rb.data("orientation", builtin.orientation.describe().into());
            ssm_check_battery(&mut rb, &table);

            let dual = table.rectangle_dual();
            rb.check(
                "dual-involution",
                dual.rectangle_dual() == table,
                Some("applying rectangle duality twice does not return the table".to_string()),
            );
            stability_check(&mut rb, &table);

            rb.data("model", model_value(table.model()));
            rb.data("ssm_table", table_value(table.model(), &table.to_matrix()));
            rb.data("dual_table", table_value(dual.model(), &dual.to_matrix()));
            sections.push(class_table("ssm classes of the Schubert cells", table.model(), table.rows()));
            sections.push(class_table(
                "the same table in codimension labels (rectangle dual)",
                dual.model(),
                dual.rows(),
            ));
        }
        Source::Builtin31 => {
            if (k, n) != (2, 6) {
                return Err(InputError(
                    "fixture `builtin-31` is the k=2 n=6 single-row table; pass --k 2 --n 6"
                        .to_string(),
                ));
            }
            let row = fixtures::gr26_ssm_row();
            let cell = fixtures::gr26_cell();
            row_checks(&mut rb, &row, &cell);
            stability_check(&mut rb, &fixtures::gr25().table);

            rb.data("model", model_value(row.model()));
            rb.data("cell", partition_label(cell.parts()).into());
            rb.data("row", class_value(&row));
            sections.push(format!(
                "ssm[{}] = {}",
                partition_label(cell.parts()),
                class_expression(&row)
            ));
        }
        Source::CsmFile(path) => {
            let text = read_input(&mut rb, &path)?;
            let (model, matrix) = parse_table(&text)?;
            expect_model(&model, k, n)?;
            let csm = CsmTable::from_matrix(&model, &matrix);
            let ssm = csm.to_ssm();
            ssm_check_battery(&mut rb, &ssm);
            rb.data("model", model_value(&model));
            rb.data("ssm_table", table_value(&model, &ssm.to_matrix()));
            sections.push(class_table("ssm classes derived from the csm input", &model, ssm.rows()));
        }
        Source::SsmFile(path) => {
            let text = read_input(&mut rb, &path)?;
            let (model, matrix) = parse_table(&text)?;
            expect_model(&model, k, n)?;
            let ssm = SsmTable::from_matrix(&model, &matrix);
            ssm_check_battery(&mut rb, &ssm);
            rb.data("model", model_value(&model));
            rb.data("ssm_table", table_value(&model, &ssm.to_matrix()));
            sections.push(class_table("ssm classes of the input table", &model, ssm.rows()));
        }
        Source::Generative => {
            // rank-one cells are the cells of P^{n-1}
            let model = RingModel::grassmannian(1, n);
            let pn = n - 1;
            let rows: Vec<Vec<BigInt>> =
                (0..=pn).map(|j| csm_cell_projective(j, pn).to_dense()).collect();
            let csm = CsmTable::from_matrix(&model, &rows);
            let ssm = csm.to_ssm();
            ssm_check_battery(&mut rb, &ssm);
            let agree = (0..=pn as usize)
                .find(|&j| ssm.row(j).to_dense() != ssm_cell_projective(j as u32, pn).to_dense());
            rb.check(
                "projective-agreement",
                agree.is_none(),
                agree.map(|j| format!("row {j} differs from the projective-cell pipeline")),
            );
            rb.data("model", model_value(&model));
            rb.data("ssm_table", table_value(&model, &ssm.to_matrix()));
            sections.push(class_table("ssm classes of the rank-one cells", &model, ssm.rows()));
        }
    }

    Ok(CommandOutput { report: rb.finish(), sections })
}

/// Sign alternation and the unit leading term for a single SSM row.
fn row_checks(rb: &mut ReportBuilder, row: &GradedClass, cell: &Partition) {
    let model = row.model();
    let labels = model_labels(model);
    let cell_pos = model
        .position(&csm_core::BasisElement::Schubert(cell.clone()))
        .expect("cell label fits the model");

    let unit = row.coeff(cell_pos).is_one() && row.top_dim() == Some(cell.weight());
    rb.check(
        "unit-leading-term",
        unit,
        Some(format!(
            "leading term is {} on {}, expected 1 on {}",
            row.coeff(cell_pos),
            row.top_dim().map(|d| d.to_string()).unwrap_or_else(|| "no".to_string()),
            labels[cell_pos]
        )),
    );

    let bad = row.terms().find(|(p, v)| {
        let gap = cell.weight() as i64 - model.dim_of(*p) as i64;
        let signed = if gap.rem_euclid(2) == 1 { -(*v).clone() } else { (*v).clone() };
        signed <= BigInt::zero()
    });
    rb.check(
        "sign-alternation",
        bad.is_none(),
        bad.map(|(p, v)| {
            format!("coefficient {} on {} breaks the dimension-gap sign", v, labels[p])
        }),
    );
}

/// The stable row of the shipped cell agrees between the two builtin models
/// after dualizing labels and restricting to the common rectangle.
fn stability_check(rb: &mut ReportBuilder, small: &SsmTable) {
    let large_model = RingModel::grassmannian(2, 6);
    let sigma = fixtures::gr26_cell()
        .dual_in_rectangle(large_model.rectangle().expect("grassmannian model"));
    let small_row = small.stable_row(&sigma);
    let large_row = fixtures::gr26_stable_row_restricted();
    let witness = small_row
        .iter()
        .find(|(lam, v)| large_row.get(*lam) != Some(*v))
        .map(|(lam, v)| {
            format!(
                "label {}: small model has {v}, large model has {}",
                partition_label(lam.parts()),
                large_row.get(lam).cloned().unwrap_or_else(BigInt::zero)
            )
        })
        .or_else(|| {
            large_row
                .keys()
                .find(|lam| !small_row.contains_key(*lam))
                .map(|lam| format!("label {} only in the large model", partition_label(lam.parts())))
        });
    rb.check("dual-stability", witness.is_none(), witness);
}

fn expect_model(model: &RingModel, k: u32, n: u32) -> Result<(), InputError> {
    let want = ModelKind::Grassmannian { k, n };
    if model.kind() != want {
        return Err(InputError(format!(
            "file model is {}, command asked for {}",
            describe_kind(model.kind()),
            describe_kind(want)
        )));
    }
    Ok(())
}

fn model_value(model: &RingModel) -> serde_json::Value {
    match model.kind() {
        ModelKind::Projective { n } => serde_json::json!({"kind": "projective", "n": n}),
        ModelKind::Grassmannian { k, n } => {
            serde_json::json!({"kind": "grassmannian", "k": k, "n": n})
        }
    }
}

fn class_value(c: &GradedClass) -> serde_json::Value {
    let labels = model_labels(c.model());
    let map: serde_json::Map<String, serde_json::Value> = c
        .terms()
        .map(|(p, v)| (labels[p].clone(), serde_json::Value::String(v.to_string())))
        .collect();
    serde_json::Value::Object(map)
}

// ---------------------------------------------------------------------------
// cells-pn

pub fn cmd_cells_pn(n: u32) -> Result<CommandOutput, InputError> {
    let echo = vec!["cells-pn".to_string(), "--n".to_string(), n.to_string()];
    let mut rb = ReportBuilder::new(&echo);

    let model = RingModel::projective(n);
    let rows: Vec<Vec<BigInt>> = (0..=n).map(|j| csm_cell_projective(j, n).to_dense()).collect();
    let csm = CsmTable::from_matrix(&model, &rows);
    let ssm = csm.to_ssm();

    ssm_check_battery(&mut rb, &ssm);

    let labels = model_labels(&model);
    let bad_top = (0..=n as usize).find(|&j| {
        let row = ssm.row(j);
        row.top_dim() != Some(j as u32) || !row.coeff(j).is_one()
    });
    rb.check(
        "top-terms",
        bad_top.is_none(),
        bad_top.map(|j| {
            format!(
                "row {} does not end in the unit closure term",
                labels[j]
            )
        }),
    );

    rb.data("model", model_value(&model));
    rb.data("csm_table", table_value(&model, &csm.to_matrix()));
    rb.data("ssm_table", table_value(&model, &ssm.to_matrix()));

    let sections = vec![
        class_table("csm classes of the affine cells", &model, csm.rows()),
        class_table("ssm classes of the affine cells", &model, ssm.rows()),
    ];
    Ok(CommandOutput { report: rb.finish(), sections })
}

// ---------------------------------------------------------------------------
// arrangement

fn polynomial_text(coeffs: &[BigInt]) -> String {
    let mut parts = Vec::new();
    for (kk, c) in coeffs.iter().enumerate() {
        if c.is_zero() && coeffs.len() > 1 {
            continue;
        }
        let coeff = if kk == 0 {
            c.to_string()
        } else if c.is_one() {
            String::new()
        } else if (-c).is_one() {
            "-".to_string()
        } else {
            c.to_string()
        };
        let body = match kk {
            0 => coeff,
            1 => format!("{coeff}t"),
            _ => format!("{coeff}t^{kk}"),
        };
        parts.push(body);
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

pub fn cmd_arrangement(path: &Path) -> Result<CommandOutput, InputError> {
    let echo = vec!["arrangement".to_string(), path.display().to_string()];
    let mut rb = ReportBuilder::new(&echo);
    let text = read_input(&mut rb, path)?;
    let arrangement = parse_arrangement(&text)?;

    let lattice = arrangement.lattice();
    let labels = model_labels(&RingModel::projective(arrangement.n()));

    let sums = lattice.mobius_sums_vanish();
    rb.check(
        "mobius-sums",
        sums,
        Some("a Möbius value does not cancel over its down-set".to_string()),
    );
    let alt = lattice.signs_alternate();
    let alt_witness = lattice
        .elements()
        .iter()
        .find(|e| {
            let signed =
                if e.codim() % 2 == 1 { -e.mobius().clone() } else { e.mobius().clone() };
            !signed.is_positive()
        })
        .map(|e| format!("codimension-{} element has Möbius value {}", e.codim(), e.mobius()));
    rb.check("mobius-alternation", alt, alt_witness);

    let report = complement_report(&arrangement);
    let pi = &report.poincare;
    let neg = pi.coeffs().iter().enumerate().find(|(_, c)| c.is_negative());
    rb.check(
        "poincare-nonnegative",
        pi.has_nonnegative_coefficients(),
        neg.map(|(kk, c)| format!("coefficient of t^{kk} is {c}")),
    );
    rb.check(
        "poincare-constant-term",
        pi.constant_term_is_one(),
        Some(format!("constant term is {}", pi.coeff(0))),
    );

    let ssm = &report.ssm_signed;
    let bad = (0..labels.len()).find(|&p| ssm.coeff(p).is_negative());
    rb.check(
        "ssm-effective",
        report.effective,
        bad.map(|p| format!("coefficient of {} is {}", labels[p], ssm.coeff(p)))
            .or_else(|| Some("the signed class is zero".to_string())),
    );

    rb.data(
        "report",
        serde_json::from_str(&report.to_json()).expect("report json is valid"),
    );
    rb.data("lattice_size", serde_json::json!(lattice.len()));
    rb.data("hyperplanes", serde_json::json!(arrangement.hyperplanes().len()));

    let sections = vec![
        format!(
            "arrangement of {} hyperplane(s) in P^{}; intersection lattice has {} elements",
            arrangement.hyperplanes().len(),
            arrangement.n(),
            lattice.len()
        ),
        format!("poincare polynomial: {}", polynomial_text(pi.coeffs())),
        format!("csm of the complement        = {}", class_expression(&report.csm)),
        format!("signed ssm of the complement = {}", class_expression(&report.ssm_signed)),
        format!(
            "euler characteristic of the complement: {}",
            report.euler_characteristic
        ),
        if report.effective {
            "the signed ssm class is effective".to_string()
        } else {
            "the signed ssm class is NOT effective".to_string()
        },
    ];
    Ok(CommandOutput { report: rb.finish(), sections })
}

// ---------------------------------------------------------------------------
// constructible

fn parse_assignments(spec: &str, what: &str) -> Result<Vec<(String, BigInt)>, InputError> {
    let mut out: Vec<(String, BigInt)> = Vec::new();
    for pair in spec.split(',') {
        let pair = pair.trim();
        if pair.is_empty() {
            continue;
        }
        let (name, value) = pair
            .split_once('=')
            .ok_or_else(|| InputError(format!("bad {what} entry `{pair}`, expected name=value")))?;
        let name = name.trim().to_string();
        let value = BigInt::from_str(value.trim())
            .map_err(|_| InputError(format!("bad {what} value in `{pair}`")))?;
        if out.iter().any(|(n, _)| *n == name) {
            return Err(InputError(format!("duplicate {what} entry for `{name}`")));
        }
        out.push((name, value));
    }
    if out.is_empty() {
        return Err(InputError(format!("empty {what} specification")));
    }
    Ok(out)
}

pub fn cmd_constructible(
    path: &Path,
    function: Option<String>,
    signed: bool,
    behrend: Option<String>,
) -> Result<CommandOutput, InputError> {
    let mut echo = vec!["constructible".to_string(), path.display().to_string()];
    if let Some(f) = &function {
        echo.extend(["--function".to_string(), f.clone()]);
    }
    if signed {
        echo.push("--signed".to_string());
    }
    if let Some(b) = &behrend {
        echo.extend(["--behrend".to_string(), b.clone()]);
    }
    let mut rb = ReportBuilder::new(&echo);
    let text = read_input(&mut rb, path)?;
    let LoadedPoset { space, euler, class_map } = csm_core::constructible::parse_poset(&text)?;

    if signed && function.is_none() {
        return Err(InputError("--signed modifies --function".to_string()));
    }
    let lookup = |name: &str| {
        space
            .index_of(name)
            .ok_or_else(|| InputError(format!("unknown stratum `{name}`")))
    };

    let mut sections = Vec::new();
    let mut behrend_components: Option<Vec<(usize, BigInt)>> = None;
    let phi = match (&function, &behrend) {
        (Some(_), Some(_)) => {
            return Err(InputError("choose one of --function, --behrend".to_string()))
        }
        (None, None) => {
            return Err(InputError("supply --function or --behrend".to_string()))
        }
        (Some(spec), None) => {
            if spec == "zero" {
                ConstructibleFn::zero(&space)
            } else {
                let mut values = vec![BigInt::zero(); space.len()];
                for (name, v) in parse_assignments(spec, "function")? {
                    values[lookup(&name)?] = v;
                }
                if signed {
                    for (s, v) in values.iter_mut().enumerate() {
                        if space.dim(s) % 2 == 1 {
                            *v = -v.clone();
                        }
                    }
                }
                ConstructibleFn::new(&space, values)
            }
        }
        (None, Some(spec)) => {
            let mut components = Vec::new();
            for (name, mult) in parse_assignments(spec, "behrend")? {
                components.push((lookup(&name)?, mult));
            }
            let nu = behrend_function(&euler, &components)?;
            behrend_components = Some(components);
            nu
        }
    };

    let cc = to_cc_coefficients(&phi, &euler);
    rb.check(
        "reconstruction",
        reconstruct(&cc, &euler) == phi,
        Some("the coefficient solve does not invert".to_string()),
    );

    if let Some(components) = &behrend_components {
        let bad = (0..space.len()).find(|&y| {
            let want = components
                .iter()
                .find(|(s, _)| *s == y)
                .map(|(_, m)| m.clone())
                .unwrap_or_else(BigInt::zero);
            *cc.coeff(y) != want
        });
        rb.check(
            "behrend-multiplicities",
            bad.is_none(),
            bad.map(|y| {
                format!("coefficient of `{}` is {}, not its multiplicity", space.name(y), cc.coeff(y))
            }),
        );
        let eff = cc.is_effective();
        let neg = (0..space.len()).find(|&y| cc.coeff(y).is_negative());
        rb.check(
            "cc-effective",
            eff,
            neg.map(|y| format!("coefficient of `{}` is {}", space.name(y), cc.coeff(y)))
                .or_else(|| Some("the cycle is empty".to_string())),
        );
    }

    let chi = euler_characteristic(&phi);

    // coefficient table: one row per stratum
    let rows: Vec<(String, Vec<String>)> = (0..space.len())
        .map(|s| {
            (
                space.name(s).to_string(),
                vec![space.dim(s).to_string(), phi.value(s).to_string(), cc.coeff(s).to_string()],
            )
        })
        .collect();
    sections.push(crate::render::aligned_table(
        "characteristic-cycle coefficients",
        "stratum",
        &["dim".to_string(), "value".to_string(), "coefficient".to_string()],
        &rows,
    ));
    sections.push(format!("euler characteristic: {chi}"));
    sections.push(if cc.coeffs().iter().all(|v| v.is_zero()) {
        "empty cycle, not effective".to_string()
    } else if cc.is_effective() {
        "the characteristic cycle is effective".to_string()
    } else {
        "the characteristic cycle is NOT effective".to_string()
    });

    let cc_map: serde_json::Map<String, serde_json::Value> = (0..space.len())
        .map(|s| {
            (space.name(s).to_string(), serde_json::Value::String(cc.coeff(s).to_string()))
        })
        .collect();
    rb.data("cc", serde_json::Value::Object(cc_map));
    rb.data("effective", serde_json::json!(cc.is_effective()));
    rb.data("euler_characteristic", serde_json::Value::String(chi.to_string()));

    if let Some(cm) = &class_map {
        let class = cm.class_of(&phi, &euler);
        rb.check(
            "class-degree",
            class.degree_of() == chi,
            Some(format!(
                "class degree {} differs from the euler characteristic {chi}",
                class.degree_of()
            )),
        );
        sections.push(format!("class = {}", class_expression(&class)));
        rb.data(
            "class",
            serde_json::Value::Array(
                class
                    .to_dense()
                    .iter()
                    .map(|v| serde_json::Value::String(v.to_string()))
                    .collect(),
            ),
        );
    }

    Ok(CommandOutput { report: rb.finish(), sections })
}
