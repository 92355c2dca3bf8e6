//! Convergence tables: exact prime counts at powers of ten set against the
//! succession-based log variants and the h-circle estimator, rendered as CSV
//! or markdown, plus a deviation report against a bundled reference table.

use std::fmt;
use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::exactnum::{ln_natural, pow10, ratio_from_natural, ratio_to_real, Natural, Ratio, Real64};
use crate::log_family::{
    eval_prime_family, eval_primorial_family, LogFamily, PrimeLogVariant, PrimorialLogVariant,
};
use crate::prime_engine::{CountMethod, PrimeEngine};
use crate::totative_estimator::estimator_bundle;

/// One convergence ratio per column, all of the form pi(x) divided by an
/// estimate of pi(x).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ColumnId {
    /// pi(x) / (x / ln x)
    XOverLn,
    /// pi(x) / (x / log_*(x)), the blended-succession log
    XOverLogStar,
    /// pi(x) / (x / log_diamond(x)), the primorial index log
    XOverLogDiamond,
    /// pi(x) / (h(x) / ln h(x)) with h the h-circle estimator
    HcircOverLnHcirc,
    /// pi(x) / (x / ln h(x))
    XOverLnHcirc,
}

impl ColumnId {
    /// Every column, in the order tables render them.
    pub const ALL: [ColumnId; 5] = [
        ColumnId::XOverLn,
        ColumnId::XOverLogStar,
        ColumnId::XOverLogDiamond,
        ColumnId::HcircOverLnHcirc,
        ColumnId::XOverLnHcirc,
    ];

    pub fn id(self) -> &'static str {
        match self {
            ColumnId::XOverLn => "x_over_ln",
            ColumnId::XOverLogStar => "x_over_log_star",
            ColumnId::XOverLogDiamond => "x_over_log_diamond",
            ColumnId::HcircOverLnHcirc => "hcirc_over_ln_hcirc",
            ColumnId::XOverLnHcirc => "x_over_ln_hcirc",
        }
    }
}

impl fmt::Display for ColumnId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl std::str::FromStr for ColumnId {
    type Err = Error;

    fn from_str(s: &str) -> Result<ColumnId> {
        ColumnId::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| Error::Parse(format!("unknown column {s:?}")))
    }
}

/// Output shape for `render`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Markdown,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<ReportFormat> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "md" | "markdown" => Ok(ReportFormat::Markdown),
            _ => Err(Error::Parse(format!(
                "unknown format {s:?} (expected csv or md)"
            ))),
        }
    }
}

/// One table row: x = 10^exponent, the exact count, and the requested
/// ratios in canonical column order. Ratios keep full f64 precision here;
/// rendering rounds them.
#[derive(Debug, Clone)]
pub struct TableRow {
    pub exponent: u32,
    pub x: Natural,
    pub pi_x: Natural,
    pub ratios: Vec<(ColumnId, Real64)>,
}

impl TableRow {
    pub fn ratio(&self, column: ColumnId) -> Option<Real64> {
        self.ratios
            .iter()
            .find(|(c, _)| *c == column)
            .map(|(_, v)| *v)
    }
}

/// Reference convergence ratios at x = 10^k for k = 1..25, in `ColumnId::ALL`
/// order, as bundled for the deviation report. The first two columns are
/// reproducible from the formulas in this crate to within one rounding step;
/// the diamond and h-circle columns track a slightly different variant in
/// the source that produced them, so they are compared against but never
/// scored.
pub const REFERENCE_RATIOS: [[Real64; 5]; 25] = [
    [0.921, 0.392, 0.702, 1.101, 0.787],
    [1.151, 0.683, 0.988, 1.327, 1.106],
    [1.161, 0.770, 1.018, 1.305, 1.137],
    [1.132, 0.820, 1.025, 1.236, 1.119],
    [1.104, 0.840, 1.014, 1.227, 1.093],
    [1.084, 0.858, 1.011, 1.180, 1.077],
    [1.071, 0.875, 1.013, 1.186, 1.064],
    [1.061, 0.881, 1.004, 1.145, 1.057],
    [1.054, 0.885, 0.997, 1.137, 1.050],
    [1.048, 0.893, 0.998, 1.103, 1.045],
    [1.043, 0.902, 0.998, 1.089, 1.041],
    [1.039, 0.905, 0.995, 1.102, 1.037],
    [1.036, 0.910, 0.996, 1.081, 1.034],
    [1.033, 0.914, 0.995, 1.069, 1.032],
    [1.031, 0.919, 0.996, 1.072, 1.030],
    [1.029, 0.924, 0.997, 1.061, 1.028],
    [1.027, 0.926, 0.996, 1.077, 1.026],
    [1.025, 0.929, 0.996, 1.076, 1.024],
    [1.024, 0.931, 0.995, 1.065, 1.023],
    [1.023, 0.933, 0.995, 1.061, 1.022],
    [1.022, 0.935, 0.995, 1.046, 1.021],
    [1.021, 0.938, 0.995, 1.049, 1.020],
    [1.020, 0.940, 0.996, 1.042, 1.019],
    [1.019, 0.941, 0.995, 1.054, 1.018],
    [1.018, 0.943, 0.996, 1.048, 1.017],
];

/// Reference-agreement tolerance for the column that is fully reproducible.
const REFERENCE_TOLERANCE: Real64 = 0.001;

/// Deduplicate a column request into canonical rendering order.
fn canonical_columns(requested: &[ColumnId]) -> Vec<ColumnId> {
    ColumnId::ALL
        .into_iter()
        .filter(|c| requested.contains(c))
        .collect()
}

fn build_row(
    engine: &PrimeEngine,
    k: u32,
    columns: &[ColumnId],
    family: LogFamily,
) -> Result<TableRow> {
    let x = pow10(k);
    let pi_x = engine.count_primes(&x, CountMethod::Auto)?;
    let pi_over_x = ratio_to_real(&Ratio::new(pi_x.clone().into(), x.clone().into()));

    let needs_star = columns.contains(&ColumnId::XOverLogStar);
    let needs_diamond = columns.contains(&ColumnId::XOverLogDiamond);
    let needs_h = columns
        .iter()
        .any(|c| matches!(c, ColumnId::HcircOverLnHcirc | ColumnId::XOverLnHcirc));

    let star = if needs_star {
        match family {
            LogFamily::Prime => eval_prime_family(engine, &x, &PrimeLogVariant::StarBlend)?,
            LogFamily::Primorial => {
                eval_primorial_family(engine, &x, &PrimorialLogVariant::StarBlend)?
            }
        }
    } else {
        0.0
    };
    // the diamond log is defined by the primorial index, so it has no
    // prime-family counterpart to switch to
    let diamond = if needs_diamond {
        eval_primorial_family(engine, &x, &PrimorialLogVariant::Diamond)?
    } else {
        0.0
    };
    let h = if needs_h {
        estimator_bundle(engine, &x)?.h_circ
    } else {
        0.0
    };

    let ratios = columns
        .iter()
        .map(|&c| {
            let v = match c {
                ColumnId::XOverLn => pi_over_x * ln_natural(&x)?,
                ColumnId::XOverLogStar => pi_over_x * star,
                ColumnId::XOverLogDiamond => pi_over_x * diamond,
                ColumnId::HcircOverLnHcirc => {
                    ratio_to_real(&ratio_from_natural(pi_x.clone())) * h.ln() / h
                }
                ColumnId::XOverLnHcirc => pi_over_x * h.ln(),
            };
            Ok((c, v))
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(TableRow {
        exponent: k,
        x,
        pi_x,
        ratios,
    })
}

/// Build one row per exponent in the range, with the requested ratio columns
/// (deduplicated into canonical order). Counts come from the engine's auto
/// method, so small exponents are computed and large ones fall back to the
/// embedded checkpoints.
pub fn build_table(
    engine: &PrimeEngine,
    exponents: RangeInclusive<u32>,
    columns: &[ColumnId],
    family: LogFamily,
) -> Result<Vec<TableRow>> {
    let (lo, hi) = (*exponents.start(), *exponents.end());
    if lo < 1 || hi > 25 || lo > hi {
        return Err(Error::Range(format!(
            "exponent range {lo}..{hi} must sit inside 1..25"
        )));
    }
    let columns = canonical_columns(columns);
    exponents
        .map(|k| build_row(engine, k, &columns, family))
        .collect()
}

/// Round to three decimals, half away from zero, and render with the
/// decimals always present.
fn format_ratio(v: Real64) -> String {
    let scaled = (v * 1000.0).round() as i64;
    let sign = if scaled < 0 { "-" } else { "" };
    format!("{sign}{}.{:03}", (scaled / 1000).abs(), (scaled % 1000).abs())
}

fn format_delta(v: Real64) -> String {
    let rendered = format_ratio(v);
    if rendered.starts_with('-') {
        rendered
    } else {
        format!("+{rendered}")
    }
}

/// Render rows as CSV (`x,pi,<column-ids>`, x as `1e<k>`, exact pi, ratios
/// at three decimals) or as a markdown table of the same cells. A table
/// whose rows carry no ratio columns degenerates to the header line.
pub fn render(rows: &[TableRow], format: ReportFormat) -> String {
    let columns: Vec<ColumnId> = rows
        .first()
        .map(|r| r.ratios.iter().map(|(c, _)| *c).collect())
        .unwrap_or_default();
    let mut out = String::new();
    match format {
        ReportFormat::Csv => {
            out.push_str("x,pi");
            for c in &columns {
                out.push(',');
                out.push_str(c.id());
            }
            out.push('\n');
            if columns.is_empty() {
                return out;
            }
            for row in rows {
                out.push_str(&format!("1e{},{}", row.exponent, row.pi_x));
                for (_, v) in &row.ratios {
                    out.push(',');
                    out.push_str(&format_ratio(*v));
                }
                out.push('\n');
            }
        }
        ReportFormat::Markdown => {
            out.push_str("| x | pi |");
            for c in &columns {
                out.push_str(&format!(" {} |", c.id()));
            }
            out.push('\n');
            out.push_str("| ---: | ---: |");
            for _ in &columns {
                out.push_str(" ---: |");
            }
            out.push('\n');
            if columns.is_empty() {
                return out;
            }
            for row in rows {
                out.push_str(&format!("| 1e{} | {} |", row.exponent, row.pi_x));
                for (_, v) in &row.ratios {
                    out.push_str(&format!(" {} |", format_ratio(*v)));
                }
                out.push('\n');
            }
        }
    }
    out
}

/// Compare the computed ratios against the bundled reference table over all
/// 25 exponents (primorial family) and lay out computed, reference, and
/// delta per row. Columns whose deltas stay within one rounding step are
/// marked as agreeing; the others get a note instead of a failure, since
/// their reference values are known to track a different variant.
pub fn deviation_report(engine: &PrimeEngine, columns: &[ColumnId]) -> Result<String> {
    let columns = canonical_columns(columns);
    let rows = build_table(engine, 1..=25, &columns, LogFamily::Primorial)?;
    let mut out = String::from("reference deviation (primorial family, x = 10^k)\n");
    for c in columns {
        let idx = ColumnId::ALL.iter().position(|a| *a == c).expect("canonical");
        let mut max_delta = 0.0f64;
        let mut body = String::new();
        for row in &rows {
            let computed = row.ratio(c).expect("requested column");
            let reference = REFERENCE_RATIOS[(row.exponent - 1) as usize][idx];
            let delta = computed - reference;
            max_delta = max_delta.max(delta.abs());
            body.push_str(&format!(
                "{:>4}  {:>8}  {:>9}  {:>7}\n",
                row.exponent,
                format_ratio(computed),
                format_ratio(reference),
                format_delta(delta)
            ));
        }
        out.push_str(&format!("\ncolumn {}\n", c.id()));
        if max_delta > REFERENCE_TOLERANCE {
            out.push_str(
                "  note: persistent offset against the reference column; \
                 deltas are recorded, not scored\n",
            );
        }
        out.push_str("   k  computed  reference    delta\n");
        out.push_str(&body);
        if max_delta <= REFERENCE_TOLERANCE {
            out.push_str(&format!(
                "  max |delta| {max_delta:.4} (within tolerance {REFERENCE_TOLERANCE})\n"
            ));
        } else {
            out.push_str(&format!("  max |delta| {max_delta:.4}\n"));
        }
    }
    Ok(out)
}
