//! Hilbert functions of point configurations, h-vectors, the index of
//! regularity, and brute-force uniform-position checking.
//!
//! Everything here reduces to ranks of evaluation matrices: row per point,
//! column per degree-t monomial. i(S) is the least t where the rank reaches
//! d; stabilization at t = d-1 is guaranteed, so the walk always terminates.

use std::fmt;

use crate::exactalg::ExactMatrix;
use crate::geometry::PointConfig;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HilbertError {
    TooLarge,
}

impl fmt::Display for HilbertError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HilbertError::TooLarge => write!(f, "configuration exceeds the subset enumeration cap"),
        }
    }
}

impl std::error::Error for HilbertError {}

/// Hilbert data of a configuration up to stabilization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertSummary {
    /// H_S(0), H_S(1), ... at least up to the first t with H_S(t) = d.
    pub values: Vec<usize>,
    /// First differences of H_S with H_S(-1) = 0; ends at stabilization,
    /// so the entries sum to d.
    pub h_vector: Vec<usize>,
    /// Least t with H_S(t) = d.
    pub i_of_s: usize,
    /// i(S) + 1.
    pub reg: usize,
}

/// All degree-t monomials in N+1 variables as exponent vectors, in
/// graded-lexicographic order (exponent vectors lexicographically
/// descending). Count is C(N+t, N).
pub fn monomial_basis(n: usize, t: usize) -> Vec<Vec<u32>> {
    fn emit(out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>, pos: usize, rem: u32) {
        if pos + 1 == cur.len() {
            cur[pos] = rem;
            out.push(cur.clone());
            cur[pos] = 0;
            return;
        }
        for e in (0..=rem).rev() {
            cur[pos] = e;
            emit(out, cur, pos + 1, rem - e);
        }
        cur[pos] = 0;
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; n + 1];
    emit(&mut out, &mut cur, 0, t as u32);
    out
}

/// Evaluation matrix restricted to a subset of the points: row per listed
/// index (in the given order), column per degree-t monomial.
pub(crate) fn evaluation_matrix_subset(
    config: &PointConfig,
    t: usize,
    indices: &[usize],
) -> ExactMatrix {
    let f = config.field();
    let n = config.ambient_dim();
    let basis = monomial_basis(n, t);
    let mut rows = Vec::with_capacity(indices.len());
    for &i in indices {
        let coords = config.point(i).coords();
        // per-coordinate power tables keep this at one mul per matrix entry
        let mut pows = vec![vec![f.one(); t + 1]; n + 1];
        for (j, table) in pows.iter_mut().enumerate() {
            for e in 1..=t {
                table[e] = f.mul(table[e - 1], coords[j]);
            }
        }
        let row = basis
            .iter()
            .map(|m| {
                let mut acc = f.one();
                for (j, &e) in m.iter().enumerate() {
                    if e > 0 {
                        acc = f.mul(acc, pows[j][e as usize]);
                    }
                }
                acc
            })
            .collect();
        rows.push(row);
    }
    ExactMatrix::from_rows(f, &rows).expect("rows share a length")
}

/// The d x C(N+t, N) matrix of all degree-t monomials evaluated at every
/// configuration point, rows in configuration order.
pub fn evaluation_matrix(config: &PointConfig, t: usize) -> ExactMatrix {
    let all: Vec<usize> = (0..config.len()).collect();
    evaluation_matrix_subset(config, t, &all)
}

/// Compute H_S by rank until it stabilizes at d. With an explicit t_max the
/// value sequence is padded out to that degree (H_S is constant d there).
pub fn hilbert_function(config: &PointConfig, t_max: Option<usize>) -> HilbertSummary {
    let d = config.len();
    let mut values = vec![1usize];
    while *values.last().unwrap() < d {
        let t = values.len();
        debug_assert!(t < d, "H_S must stabilize by degree d - 1");
        values.push(evaluation_matrix(config, t).rank());
    }
    let i_of_s = values.len() - 1;
    let mut h_vector = Vec::with_capacity(values.len());
    let mut prev = 0usize;
    for &v in &values {
        h_vector.push(v - prev);
        prev = v;
    }
    if let Some(tm) = t_max {
        while values.len() <= tm {
            values.push(d);
        }
    }
    HilbertSummary {
        values,
        h_vector,
        i_of_s,
        reg: i_of_s + 1,
    }
}

/// Least t with H_S(t) = d.
pub fn index_of_regularity(config: &PointConfig) -> usize {
    hilbert_function(config, None).i_of_s
}

pub const DEFAULT_UNIFORM_CAP: usize = 12;

/// Brute-force uniform position test: every nonempty subset Z must satisfy
/// H_Z(t) = min(|Z|, H_S(t)) for all t <= i(S). Exponential in d, hence the
/// cap (default 12). On failure returns the witness subset and degree.
#[allow(clippy::type_complexity)]
pub fn uniform_position_check(
    config: &PointConfig,
    cap: Option<usize>,
) -> Result<(bool, Option<(Vec<usize>, usize)>), HilbertError> {
    let cap = cap.unwrap_or(DEFAULT_UNIFORM_CAP);
    let d = config.len();
    if d > cap {
        return Err(HilbertError::TooLarge);
    }
    let summary = hilbert_function(config, None);
    for mask in 1u64..(1u64 << d) {
        let subset: Vec<usize> = (0..d).filter(|&i| mask >> i & 1 == 1).collect();
        let z = subset.len();
        for t in 1..=summary.i_of_s {
            let hz = evaluation_matrix_subset(config, t, &subset).rank();
            let expected = z.min(summary.values[t]);
            if hz < expected {
                return Ok((false, Some((subset, t))));
            }
            if hz == z {
                break; // H_Z and the min are both constant from here on
            }
        }
    }
    Ok((true, None))
}
