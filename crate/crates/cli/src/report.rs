//! The full analysis workflow: classification, regularity index, degree
//! bound, certificate production, curve membership, and the consistency
//! verdict tying them together.

use std::fmt;

use pointreg::bounds::{threshold_check, ThresholdQuery};
use pointreg::castelnuovo::regularity_upper_bound;
use pointreg::generators::rnc_membership;
use pointreg::hilbert::hilbert_function;
use pointreg::position::classify_position;
use pointreg::{Classification, EnumLimits, Method, PointConfig, PositionError, SepError};

#[derive(Debug, Clone)]
pub enum AnalyzeError {
    Position(PositionError),
    Separator(SepError),
}

impl fmt::Display for AnalyzeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnalyzeError::Position(e) => write!(f, "{}", e),
            AnalyzeError::Separator(e) => write!(f, "{}", e),
        }
    }
}

impl std::error::Error for AnalyzeError {}

pub struct AnalysisReport {
    pub degree: usize,
    pub ambient: usize,
    pub field_char: u64,
    pub field_ext: u32,
    pub field_order: u64,
    pub classification: Classification,
    /// Least t with H_S(t) = d.
    pub index: usize,
    /// ceil((d - 1) / N).
    pub bound: usize,
    pub equality: bool,
    pub l_star: usize,
    pub method: Method,
    /// None when d < N + 3 (too few points to fit a curve).
    pub rnc_member: Option<bool>,
    /// Degree cutoff for the equality-implies-curve statement.
    pub threshold: usize,
    pub applicable: bool,
    /// Equality and threshold hold, yet no rational normal curve fits.
    pub discrepancy: bool,
}

pub fn analyze(config: &PointConfig) -> Result<AnalysisReport, AnalyzeError> {
    let d = config.len();
    let n = config.ambient_dim();
    let field = config.field();
    let classification =
        classify_position(config, None, &EnumLimits::default()).map_err(AnalyzeError::Position)?;
    let summary = hilbert_function(config, None);
    let bound = (d - 1).div_ceil(n);
    let equality = summary.i_of_s == bound;
    let upper = regularity_upper_bound(config).map_err(AnalyzeError::Separator)?;
    let rnc_member = if d >= n + 3 {
        // A set on a rational normal curve has every subset in general
        // position, so failing to find a usable frame is already a no.
        Some(rnc_membership(config).map_or(false, |(member, _)| member))
    } else {
        None
    };
    let applicable = threshold_check(&ThresholdQuery::Theorem23 {
        n: n as i64,
        d: d as i64,
    })
    .unwrap_or(false);
    let threshold = (n * n + 2 * n + 2).max(25);
    let discrepancy = equality && applicable && rnc_member == Some(false);
    Ok(AnalysisReport {
        degree: d,
        ambient: n,
        field_char: field.p(),
        field_ext: field.e(),
        field_order: field.order(),
        classification,
        index: summary.i_of_s,
        bound,
        equality,
        l_star: upper.l_star,
        method: upper.method,
        rnc_member,
        threshold,
        applicable,
        discrepancy,
    })
}

fn push_kv(out: &mut String, key: &str, value: impl fmt::Display) {
    out.push_str(&format!("{} {}\n", key, value));
}

pub fn render(report: &AnalysisReport) -> String {
    let mut out = String::new();
    push_kv(&mut out, "degree", report.degree);
    push_kv(&mut out, "ambient", report.ambient);
    push_kv(
        &mut out,
        "field",
        format!("{} {}", report.field_char, report.field_ext),
    );
    push_kv(&mut out, "order", report.field_order);
    let class = &report.classification;
    push_kv(&mut out, "semi_uniform", class.semi_uniform);
    push_kv(&mut out, "linear_general", class.linear_general);
    match class.uniform {
        Some(flag) => push_kv(&mut out, "uniform", flag),
        None => push_kv(&mut out, "uniform", "unknown"),
    }
    match &class.dichotomy {
        Some(case) => push_kv(&mut out, "dichotomy", case),
        None => push_kv(&mut out, "dichotomy", "none"),
    }
    if let Some(v) = &class.profile.v {
        let joined: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        push_kv(&mut out, "incidences", joined.join(" "));
    }
    if let Some((a, b)) = &class.profile.witness {
        push_kv(
            &mut out,
            "witness",
            format!("{} {} {}", a.dim, a.incident_count, b.incident_count),
        );
    }
    push_kv(&mut out, "index", report.index);
    push_kv(&mut out, "bound", report.bound);
    push_kv(&mut out, "equality", report.equality);
    push_kv(&mut out, "l_star", report.l_star);
    push_kv(&mut out, "method", report.method);
    match report.rnc_member {
        Some(flag) => push_kv(&mut out, "rnc_member", flag),
        None => push_kv(&mut out, "rnc_member", "skipped"),
    }
    push_kv(&mut out, "threshold", report.threshold);
    push_kv(&mut out, "applicable", report.applicable);
    push_kv(&mut out, "discrepancy", report.discrepancy);
    if report.discrepancy {
        out.push_str(
            "DISCREPANCY regularity index meets the curve bound above the \
             threshold, but no rational normal curve fits\n",
        );
    }
    out
}
