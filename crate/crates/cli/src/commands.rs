//! Subcommand implementations: thin formatting layers over the library.

use crate::args::{values_or_grid, GridSpec};
use crate::output::{csv_meta_line, meta, num, Json};
use ergoswitch_core::ergotropy::{ControlMeasurement, DaemonicReport, ErgotropyReport};
use ergoswitch_core::scenarios::{
    self, closed_form, compare_discord_entanglement, definite_order_baseline,
    optimize_purification, region_map, run_classical_corr_switch, run_product_switch,
    run_purified_switch, PurificationParams, RegionKind, ScenarioPoint,
};
use ergoswitch_core::tol;
use ergoswitch_core::verify::{run_all, VerifyConfig};
use std::fmt::Write as _;
use std::io::Write as _;

pub type Result<T> = std::result::Result<T, Box<dyn std::error::Error>>;

/// Writes to the given path, or to stdout for "-".
pub fn emit(path: &str, contents: &str) -> Result<()> {
    if path == "-" {
        std::io::stdout().write_all(contents.as_bytes())?;
    } else {
        std::fs::write(path, contents).map_err(|e| format!("cannot write {path:?}: {e}"))?;
    }
    Ok(())
}

fn require(flag: &str, value: Option<f64>) -> Result<f64> {
    value.ok_or_else(|| format!("--{flag} is required for this kind").into())
}

// ---------------------------------------------------------------- point

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum PointKind {
    Product,
    Classical,
    Purified,
    Definite,
}

pub struct PointArgs {
    pub kind: PointKind,
    pub beta: Option<f64>,
    pub beta_in: Option<f64>,
    pub n: usize,
    pub alpha: Option<f64>,
    pub phi: Option<f64>,
    pub betas: Vec<f64>,
    pub weights: Vec<f64>,
    pub output: String,
}

pub fn cmd_point(args: &PointArgs) -> Result<()> {
    let body = match args.kind {
        PointKind::Product => scenario_json(&run_product_switch(
            require("beta-in", args.beta_in)?,
            require("beta", args.beta)?,
            args.n,
        )?),
        PointKind::Classical => scenario_json(&run_classical_corr_switch(
            require("beta-in", args.beta_in)?,
            require("beta", args.beta)?,
            None,
        )?),
        PointKind::Purified => {
            let params =
                PurificationParams::new(require("alpha", args.alpha)?, require("phi", args.phi)?)?;
            scenario_json(&run_purified_switch(
                require("beta-in", args.beta_in)?,
                require("beta", args.beta)?,
                &params,
            )?)
        }
        PointKind::Definite => {
            let report = definite_order_baseline(&args.betas, &args.weights)?;
            Json::Object(vec![
                ("kind", Json::str("definite_order")),
                (
                    "betas",
                    Json::Array(args.betas.iter().map(|&b| Json::num(b)).collect()),
                ),
                (
                    "weights",
                    Json::Array(args.weights.iter().map(|&w| Json::num(w)).collect()),
                ),
                ("ergotropy", ergotropy_json(&report)),
            ])
        }
    };
    let doc = Json::Object(vec![
        (
            "meta",
            meta("point", None, tol::STRUCTURAL, tol::OPTIMIZATION),
        ),
        ("point", body),
    ]);
    emit(&args.output, &doc.to_string_pretty())
}

fn ergotropy_json(report: &ErgotropyReport) -> Json {
    Json::Object(vec![
        ("total", Json::num(report.total)),
        ("incoherent", Json::num(report.incoherent)),
        ("coherent", Json::num(report.coherent)),
        (
            "achieving_permutation",
            Json::Array(
                report
                    .achieving_permutation
                    .iter()
                    .map(|&i| Json::usize(i))
                    .collect(),
            ),
        ),
    ])
}

fn measurement_json(measurement: &ControlMeasurement) -> Json {
    match measurement {
        ControlMeasurement::BlochAngles { theta, phi } => Json::Object(vec![
            ("type", Json::str("bloch_angles")),
            ("theta", Json::num(*theta)),
            ("phi", Json::num(*phi)),
        ]),
        ControlMeasurement::Projectors(projectors) => {
            let mats = projectors
                .iter()
                .map(|p| {
                    Json::Array(
                        (0..p.rows())
                            .map(|i| {
                                Json::Array(
                                    (0..p.cols())
                                        .map(|j| {
                                            let v = p.get(i, j);
                                            Json::Array(vec![Json::num(v.re), Json::num(v.im)])
                                        })
                                        .collect(),
                                )
                            })
                            .collect(),
                    )
                })
                .collect();
            Json::Object(vec![
                ("type", Json::str("projectors")),
                ("projectors", Json::Array(mats)),
            ])
        }
    }
}

fn report_json(report: &DaemonicReport) -> Vec<(&'static str, Json)> {
    vec![
        ("measurement", measurement_json(&report.measurement)),
        (
            "branches",
            Json::Array(
                report
                    .branches
                    .iter()
                    .map(|b| {
                        Json::Object(vec![
                            ("probability", Json::num(b.probability)),
                            ("ergotropy", ergotropy_json(&b.report)),
                        ])
                    })
                    .collect(),
            ),
        ),
    ]
}

fn scenario_json(point: &ScenarioPoint) -> Json {
    let mut fields = vec![
        ("kind", Json::str(point.input_kind.label())),
        ("beta", Json::num(point.beta)),
        ("beta_in", Json::num(point.beta_in)),
        ("n", Json::usize(point.n)),
    ];
    if let scenarios::InputKind::Purified { alpha, phi } = point.input_kind {
        fields.push(("alpha", Json::num(alpha)));
        fields.push(("phi", Json::num(phi)));
    }
    fields.push(("w_d_numeric", Json::num(point.w_d_numeric)));
    fields.push(("w_d_closed", Json::opt_num(point.w_d_closed)));
    fields.push(("w_d_incoherent", Json::num(point.w_d_incoherent)));
    fields.push(("w_d_coherent", Json::num(point.w_d_coherent)));
    fields.extend(report_json(&point.report));
    Json::Object(fields)
}

// ---------------------------------------------------------------- sweep

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SweepKind {
    Product,
    Classical,
    Purified,
    /// Purified input with the purification re-optimized at every point.
    PurifiedOpt,
}

pub struct SweepArgs {
    pub kind: SweepKind,
    pub betas: Vec<f64>,
    pub beta_grid: Option<GridSpec>,
    pub beta_ins: Vec<f64>,
    pub beta_in_grid: Option<GridSpec>,
    pub n: usize,
    pub alpha: f64,
    pub phi: f64,
    pub output: String,
}

pub fn cmd_sweep(args: &SweepArgs) -> Result<()> {
    let betas = values_or_grid(&args.betas, args.beta_grid, "beta")?;
    let beta_ins = values_or_grid(&args.beta_ins, args.beta_in_grid, "beta-in")?;

    let mut out = csv_meta_line(
        "sweep",
        &[
            ("kind", kind_label(args.kind).to_string()),
            ("n", args.n.to_string()),
            ("alpha", num(args.alpha)),
            ("phi", num(args.phi)),
        ],
    );
    out.push_str("beta_in,beta,n,kind,w_d_numeric,w_d_closed,w_d_incoherent,w_d_coherent\n");
    for &beta in &betas {
        for &beta_in in &beta_ins {
            let point = match args.kind {
                SweepKind::Product => run_product_switch(beta_in, beta, args.n)?,
                SweepKind::Classical => run_classical_corr_switch(beta_in, beta, None)?,
                SweepKind::Purified => {
                    let params = PurificationParams::new(args.alpha, args.phi)?;
                    run_purified_switch(beta_in, beta, &params)?
                }
                SweepKind::PurifiedOpt => optimize_purification(beta_in, beta)?.1,
            };
            let closed = point.w_d_closed.map(num).unwrap_or_default();
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                num(beta_in),
                num(beta),
                point.n,
                kind_label(args.kind),
                num(point.w_d_numeric),
                closed,
                num(point.w_d_incoherent),
                num(point.w_d_coherent),
            );
        }
    }
    emit(&args.output, &out)
}

fn kind_label(kind: SweepKind) -> &'static str {
    match kind {
        SweepKind::Product => "product",
        SweepKind::Classical => "classical_corr",
        SweepKind::Purified => "purified",
        SweepKind::PurifiedOpt => "purified_opt",
    }
}

// ---------------------------------------------------------------- region

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum RegionKindArg {
    Product,
    Classical,
    Purified,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

pub struct RegionArgs {
    pub kind: RegionKindArg,
    pub beta_grid: GridSpec,
    pub beta_in_grid: GridSpec,
    pub n: usize,
    pub seed: u64,
    pub format: Format,
    pub output: String,
}

pub fn cmd_region(args: &RegionArgs) -> Result<()> {
    let kind = match args.kind {
        RegionKindArg::Product => RegionKind::Product { n: args.n },
        RegionKindArg::Classical => RegionKind::ClassicalCorr,
        RegionKindArg::Purified => RegionKind::Purified,
    };
    let map = region_map(
        &args.beta_grid.values(),
        &args.beta_in_grid.values(),
        kind,
        args.seed,
    )?;
    let text = match args.format {
        Format::Csv => {
            let mut out = csv_meta_line(
                "region",
                &[
                    ("kind", kind.label().to_string()),
                    ("seed", args.seed.to_string()),
                    ("checked", map.checked.to_string()),
                    ("max_check_residual", num(map.max_check_residual)),
                ],
            );
            out.push_str("beta,beta_in,positive,w_d\n");
            for pt in &map.points {
                let _ = writeln!(
                    out,
                    "{},{},{},{}",
                    num(pt.beta),
                    num(pt.beta_in),
                    pt.positive,
                    num(pt.w_d)
                );
            }
            out
        }
        Format::Json => Json::Object(vec![
            (
                "meta",
                meta(
                    "region",
                    Some(args.seed),
                    tol::STRUCTURAL,
                    tol::OPTIMIZATION,
                ),
            ),
            ("kind", Json::str(kind.label())),
            ("checked", Json::usize(map.checked)),
            ("max_check_residual", Json::num(map.max_check_residual)),
            (
                "points",
                Json::Array(
                    map.points
                        .iter()
                        .map(|pt| {
                            Json::Object(vec![
                                ("beta", Json::num(pt.beta)),
                                ("beta_in", Json::num(pt.beta_in)),
                                ("positive", Json::bool(pt.positive)),
                                ("w_d", Json::num(pt.w_d)),
                            ])
                        })
                        .collect(),
                ),
            ),
        ])
        .to_string_pretty(),
    };
    emit(&args.output, &text)
}

// ---------------------------------------------------------------- verify

pub struct VerifyArgs {
    pub n_max: usize,
    pub tol_matrix: f64,
    pub tol_value: f64,
    pub seed: u64,
    pub only: Vec<String>,
    pub output: String,
}

/// Runs the oracle suite; returns false when any check fails. The emitted
/// report carries no wall-clock data, so reruns are byte-identical; the
/// per-check timings go to stderr.
pub fn cmd_verify(args: &VerifyArgs) -> Result<bool> {
    let cfg = VerifyConfig {
        matrix_tol: args.tol_matrix,
        value_tol: args.tol_value,
        n_max: args.n_max,
        seed: args.seed,
    };
    let results = if args.only.is_empty() {
        run_all(&cfg)
    } else {
        ergoswitch_core::verify::run_named(&cfg, &args.only)?
    };
    let mut out = csv_meta_line(
        "verify",
        &[
            ("n_max", args.n_max.to_string()),
            ("seed", args.seed.to_string()),
            ("tol_matrix", num(args.tol_matrix)),
            ("tol_value", num(args.tol_value)),
        ],
    );
    let mut passed = 0usize;
    for r in &results {
        let _ = writeln!(
            out,
            "{} {} max_residual={:.3e} ({})",
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.max_residual,
            r.detail
        );
        eprintln!("timing {} {:.2}s", r.name, r.seconds);
        if r.passed {
            passed += 1;
        }
    }
    let _ = writeln!(out, "# result: {passed}/{} checks passed", results.len());
    emit(&args.output, &out)?;
    Ok(passed == results.len())
}

// ---------------------------------------------------------------- optimize

pub struct OptimizeArgs {
    pub beta: f64,
    pub beta_in: f64,
    pub output: String,
}

pub fn cmd_optimize(args: &OptimizeArgs) -> Result<()> {
    let (params, point) = optimize_purification(args.beta_in, args.beta)?;
    let doc = Json::Object(vec![
        (
            "meta",
            meta("optimize", None, tol::STRUCTURAL, tol::OPTIMIZATION),
        ),
        ("alpha_opt", Json::num(params.alpha)),
        ("phi_opt", Json::num(params.phi)),
        ("point", scenario_json(&point)),
    ]);
    emit(&args.output, &doc.to_string_pretty())
}

// ---------------------------------------------------------------- compare

pub struct CompareArgs {
    pub beta: f64,
    pub beta_in: f64,
    pub samples: usize,
    pub seed: u64,
    pub output: String,
}

pub fn cmd_compare(args: &CompareArgs) -> Result<()> {
    let record = compare_discord_entanglement(args.beta_in, args.beta, args.samples, args.seed)?;
    let doc = Json::Object(vec![
        (
            "meta",
            meta(
                "compare",
                Some(args.seed),
                tol::STRUCTURAL,
                tol::OPTIMIZATION,
            ),
        ),
        ("beta", Json::num(record.beta)),
        ("beta_in", Json::num(record.beta_in)),
        ("samples", Json::usize(record.samples)),
        ("separable_max", Json::num(record.separable_max)),
        ("entangled_max", Json::num(record.entangled_max)),
        ("entangled_alpha", Json::num(record.entangled_alpha)),
        (
            "classical_closed_form",
            Json::num(record.classical_closed_form),
        ),
        (
            "product_closed_form",
            Json::num(closed_form::w_d_product(record.beta_in, record.beta, 2)),
        ),
    ]);
    emit(&args.output, &doc.to_string_pretty())
}
