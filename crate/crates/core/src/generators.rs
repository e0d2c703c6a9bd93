//! Deterministic families of point configurations: rational normal curve
//! points, F2-linear sets in characteristic 2, monomial curve sections, and
//! seeded random configurations; plus the rational-normal-curve membership
//! test with witness parameters.

use std::collections::HashSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactalg::{ExactMatrix, FieldElement, FieldSpec};
use crate::geometry::{make_config, GeomError, PointConfig};

/// Retry budget for every seeded generator loop.
pub const SEED_BUDGET: u64 = 1000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenError {
    BadParams(String),
    DuplicateParam,
    Degenerate,
    FieldTooSmall,
    RetriesExhausted,
    EmptySection,
    NotSpanning,
    /// Membership testing needs at least N + 3 points.
    TooFew,
    /// No N + 2 points of the configuration are in general position;
    /// cannot happen for valid spanning configs, reported defensively.
    FrameNotFound,
}

impl fmt::Display for GenError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenError::BadParams(msg) => write!(f, "bad parameters: {}", msg),
            GenError::DuplicateParam => write!(f, "parameters are not pairwise distinct"),
            GenError::Degenerate => write!(f, "points do not span the ambient space"),
            GenError::FieldTooSmall => write!(f, "field cannot embed the requested set"),
            GenError::RetriesExhausted => write!(f, "seed budget exhausted"),
            GenError::EmptySection => write!(f, "hyperplane misses the curve entirely"),
            GenError::NotSpanning => write!(f, "section does not span its ambient space"),
            GenError::TooFew => write!(f, "membership testing needs at least N + 3 points"),
            GenError::FrameNotFound => write!(f, "no projective frame found"),
        }
    }
}

impl std::error::Error for GenError {}

fn bad(msg: &str) -> GenError {
    GenError::BadParams(msg.to_string())
}

/// A parameter on the projective line: a field element or the point at
/// infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RncParam {
    Finite(FieldElement),
    Infinity,
}

impl fmt::Display for RncParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RncParam::Finite(x) => write!(f, "{}", x),
            RncParam::Infinity => write!(f, "inf"),
        }
    }
}

/// Points (1 : t : t^2 : ... : t^N) of the rational normal curve at the
/// given parameters; infinity maps to (0 : ... : 0 : 1).
pub fn gen_rnc(field: &FieldSpec, n: usize, params: &[RncParam]) -> Result<PointConfig, GenError> {
    if n < 1 {
        return Err(bad("ambient dimension must be at least 1"));
    }
    let mut seen = HashSet::new();
    for p in params {
        if !seen.insert(*p) {
            return Err(GenError::DuplicateParam);
        }
    }
    if params.len() < n + 1 {
        return Err(GenError::Degenerate);
    }
    let raw: Vec<Vec<FieldElement>> = params
        .iter()
        .map(|p| match p {
            RncParam::Finite(t) => (0..=n).map(|i| field.pow(*t, i as u64)).collect(),
            RncParam::Infinity => {
                let mut v = vec![field.zero(); n + 1];
                v[n] = field.one();
                v
            }
        })
        .collect();
    make_config(field, n, &raw).map_err(|e| match e {
        GeomError::Degenerate => GenError::Degenerate,
        other => GenError::BadParams(format!("curve points rejected: {}", other)),
    })
}

/// Embedding mode for [`gen_f2linear`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum F2Mode {
    /// 2^k affine points (1 : phi(u)) for a seeded injective F2-linear
    /// phi: F2^k -> GF(2^e)^N.
    Affine,
    /// The 2^(N+1) - 1 points of P^N with 0/1 coordinates; k and seed are
    /// ignored.
    Projective,
}

/// Characteristic-2 model configurations over GF(2^e).
///
/// Affine mode requires k > N and e*N >= k; it draws k x N matrices over
/// GF(2^e) from ChaCha8 seeded with seed, seed+1, ... until the 2^k images
/// are distinct and the points span, giving up after [`SEED_BUDGET`] tries.
pub fn gen_f2linear(
    e: u32,
    n: usize,
    k: u32,
    seed: u64,
    mode: F2Mode,
) -> Result<PointConfig, GenError> {
    if n < 1 {
        return Err(bad("ambient dimension must be at least 1"));
    }
    let field = FieldSpec::new(2, e).map_err(|err| GenError::BadParams(err.to_string()))?;
    match mode {
        F2Mode::Projective => {
            let raw: Vec<Vec<FieldElement>> = (1u64..1 << (n + 1))
                .map(|v| (0..=n).map(|i| field.elem((v >> i) & 1)).collect())
                .collect();
            make_config(&field, n, &raw)
                .map_err(|err| GenError::BadParams(format!("projective set rejected: {}", err)))
        }
        F2Mode::Affine => {
            if (k as usize) <= n {
                return Err(bad("affine mode needs k > N"));
            }
            if (e as usize) * n < k as usize {
                return Err(GenError::FieldTooSmall);
            }
            let q = field.order();
            for attempt in 0..SEED_BUDGET {
                let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt));
                let rows: Vec<Vec<FieldElement>> = (0..k)
                    .map(|_| (0..n).map(|_| field.elem(rng.gen_range(0..q))).collect())
                    .collect();
                let mut raw = Vec::with_capacity(1 << k);
                let mut distinct = HashSet::new();
                let mut ok = true;
                for u in 0u64..1 << k {
                    let mut img = vec![field.zero(); n];
                    for (bit, row) in rows.iter().enumerate() {
                        if (u >> bit) & 1 == 1 {
                            for (slot, &rv) in img.iter_mut().zip(row) {
                                *slot = field.add(*slot, rv);
                            }
                        }
                    }
                    if !distinct.insert(img.clone()) {
                        ok = false;
                        break;
                    }
                    let mut coords = Vec::with_capacity(n + 1);
                    coords.push(field.one());
                    coords.extend(img);
                    raw.push(coords);
                }
                if !ok {
                    continue;
                }
                match make_config(&field, n, &raw) {
                    Ok(config) => return Ok(config),
                    Err(GeomError::Degenerate) => continue,
                    Err(err) => {
                        return Err(GenError::BadParams(format!("affine set rejected: {}", err)))
                    }
                }
            }
            Err(GenError::RetriesExhausted)
        }
    }
}

/// A hyperplane section of the monomial curve
/// (1 : t^(a_1) : ... : t^(a_M)), projected into P^(M-1) by dropping the
/// first coordinate the hyperplane depends on.
#[derive(Debug, Clone)]
pub struct MonomialSection {
    pub config: PointConfig,
    /// Finite roots of the section polynomial, ascending by encoding,
    /// before removal of repeated projective points.
    pub roots: Vec<FieldElement>,
    /// Whether the curve point at infinity lies on the hyperplane.
    pub has_infinity: bool,
    /// Degree of the section polynomial sum of c_i t^(a_i).
    pub poly_degree: u64,
}

/// Exhaustively scan the field (plus infinity) for curve points on the
/// hyperplane. For M exponents the hyperplane has M + 1 coefficients:
/// c_0 pairs with the constant coordinate and c_i with t^(a_i), so the
/// section polynomial is c_0 + c_1 t^(a_1) + ... + c_M t^(a_M), and the
/// curve point at infinity lies on the hyperplane exactly when c_M = 0.
pub fn gen_monomial_curve_section(
    field: &FieldSpec,
    exponents: &[u64],
    hyperplane: &[FieldElement],
) -> Result<MonomialSection, GenError> {
    let m = exponents.len();
    if m < 2 {
        return Err(bad("need at least two exponents"));
    }
    if exponents[0] == 0 || exponents.windows(2).any(|w| w[0] >= w[1]) {
        return Err(bad("exponents must be positive and strictly increasing"));
    }
    if hyperplane.len() != m + 1 {
        return Err(bad("hyperplane needs one coefficient per curve coordinate"));
    }
    if hyperplane.iter().all(|c| c.0 == 0) {
        return Err(bad("hyperplane must be nonzero"));
    }
    if hyperplane.iter().any(|c| c.0 >= field.order()) {
        return Err(bad("hyperplane coefficient outside the field"));
    }

    let q = field.order();
    let mut roots = Vec::new();
    for enc in 0..q {
        let t = field.elem(enc);
        let mut val = hyperplane[0];
        for (i, &a) in exponents.iter().enumerate() {
            val = field.add(val, field.mul(hyperplane[i + 1], field.pow(t, a)));
        }
        if val.0 == 0 {
            roots.push(t);
        }
    }
    let has_infinity = hyperplane[m].0 == 0;
    let poly_degree = exponents
        .iter()
        .enumerate()
        .rev()
        .find(|&(i, _)| hyperplane[i + 1].0 != 0)
        .map_or(0, |(_, &a)| a);

    let mut section: Vec<Vec<FieldElement>> = Vec::new();
    for &t in &roots {
        let mut coords = Vec::with_capacity(m + 1);
        coords.push(field.one());
        for &a in exponents {
            coords.push(field.pow(t, a));
        }
        section.push(coords);
    }
    if has_infinity {
        let mut coords = vec![field.zero(); m + 1];
        coords[m] = field.one();
        section.push(coords);
    }
    if section.is_empty() {
        return Err(GenError::EmptySection);
    }

    // distinct parameters can repeat a projective point; keep first
    let pivot = hyperplane
        .iter()
        .position(|c| c.0 != 0)
        .expect("hyperplane is nonzero");
    let mut dropped: Vec<Vec<FieldElement>> = Vec::new();
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    for coords in &section {
        let v: Vec<FieldElement> = coords
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != pivot)
            .map(|(_, &x)| x)
            .collect();
        let key = crate::geometry::normalize_point(field, &v)
            .map_err(|e| GenError::BadParams(format!("section point rejected: {}", e)))?
            .coords()
            .iter()
            .map(|x| x.0)
            .collect::<Vec<u64>>();
        if seen.insert(key) {
            dropped.push(v);
        }
    }
    let config = make_config(field, m - 1, &dropped).map_err(|e| match e {
        GeomError::Degenerate => GenError::NotSpanning,
        other => GenError::BadParams(format!("section rejected: {}", other)),
    })?;
    Ok(MonomialSection {
        config,
        roots,
        has_infinity,
        poly_degree,
    })
}

/// Seeded rejection sampling: d distinct nonzero points, raw coordinates
/// uniform over the field from ChaCha8 seeded with seed, seed+1, ...
/// (one stream per spanning attempt), until the points span P^N.
pub fn gen_random(
    field: &FieldSpec,
    n: usize,
    d: usize,
    seed: u64,
) -> Result<PointConfig, GenError> {
    if n < 1 {
        return Err(bad("ambient dimension must be at least 1"));
    }
    if d <= n {
        return Err(GenError::Degenerate);
    }
    let q = field.order();
    // every draw rejected by zero or duplication consumes stream values,
    // so the emitted configuration documents the exact sampling order
    for attempt in 0..SEED_BUDGET {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt));
        let mut raw: Vec<Vec<FieldElement>> = Vec::with_capacity(d);
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        let mut stalled = false;
        while raw.len() < d {
            let mut tries = 0;
            loop {
                let coords: Vec<FieldElement> =
                    (0..=n).map(|_| field.elem(rng.gen_range(0..q))).collect();
                tries += 1;
                if coords.iter().all(|c| c.0 == 0) {
                    if tries >= SEED_BUDGET {
                        stalled = true;
                        break;
                    }
                    continue;
                }
                let key: Vec<u64> = crate::geometry::normalize_point(field, &coords)
                    .expect("nonzero vector")
                    .coords()
                    .iter()
                    .map(|x| x.0)
                    .collect();
                if seen.insert(key) {
                    raw.push(coords);
                    break;
                }
                if tries >= SEED_BUDGET {
                    stalled = true;
                    break;
                }
            }
            if stalled {
                break;
            }
        }
        if stalled {
            continue;
        }
        match make_config(field, n, &raw) {
            Ok(config) => return Ok(config),
            Err(GeomError::Degenerate) => continue,
            Err(e) => {
                return Err(GenError::BadParams(format!(
                    "sampled points rejected: {}",
                    e
                )))
            }
        }
    }
    Err(GenError::RetriesExhausted)
}

fn full_rank(field: &FieldSpec, rows: &[Vec<FieldElement>]) -> bool {
    let m = ExactMatrix::from_rows(field, rows).expect("equal lengths");
    m.rank() == rows.len()
}

/// Whether the configuration lies on a rational normal curve, with witness
/// parameters (in configuration order) when it does.
///
/// The first N + 2 points in general position become a projective frame;
/// in frame coordinates a curve through the frame reads
/// (1/(t - b_0) : ... : 1/(t - b_N)), the next point pins the b_i, and
/// every other point must solve for its own parameter. A frame whose pinned
/// point has a zero or repeated coordinate decides nothing and the scan
/// moves to the next frame.
pub fn rnc_membership(config: &PointConfig) -> Result<(bool, Option<Vec<RncParam>>), GenError> {
    let n = config.ambient_dim();
    let d = config.len();
    let f = config.field();
    if d < n + 3 {
        return Err(GenError::TooFew);
    }

    let mut frame_seen = false;
    let mut result: Option<(bool, Option<Vec<RncParam>>)> = None;
    crate::combo::for_each_subset(d, n + 2, |frame| {
        let rows: Vec<Vec<FieldElement>> = frame
            .iter()
            .map(|&i| config.point(i).coords().to_vec())
            .collect();
        // general position: every (N+1)-subset of the frame has full rank
        for skip in 0..frame.len() {
            let sub: Vec<Vec<FieldElement>> = rows
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != skip)
                .map(|(_, r)| r.clone())
                .collect();
            if !full_rank(f, &sub) {
                return true;
            }
        }
        frame_seen = true;

        // transform sending the frame to e_0, ..., e_N, (1 : ... : 1)
        let basis = ExactMatrix::from_rows(f, &rows[..n + 1]).expect("equal lengths");
        let basis_inv = match basis.inverse().expect("square") {
            Some(inv) => inv,
            None => return true, // defensive; full_rank already passed
        };
        let lambda = basis_inv
            .apply_row(&rows[n + 1])
            .expect("row length matches");
        if lambda.iter().any(|x| x.0 == 0) {
            return true; // defensive; general position forbids this
        }
        let mut scaled = Vec::with_capacity(n + 1);
        for (i, row) in rows[..n + 1].iter().enumerate() {
            scaled.push(row.iter().map(|&x| f.mul(lambda[i], x)).collect::<Vec<_>>());
        }
        let transform = ExactMatrix::from_rows(f, &scaled)
            .expect("equal lengths")
            .inverse()
            .expect("square")
            .expect("product of invertibles");

        // the next point off the frame pins the curve
        let c_idx = (0..d).find(|i| !frame.contains(i)).expect("d >= n + 3");
        let c_coords = transform
            .apply_row(config.point(c_idx).coords())
            .expect("row length matches");
        if c_coords.iter().any(|x| x.0 == 0) {
            return true; // unusable frame: zero coordinate
        }
        let mut distinct = HashSet::new();
        if !c_coords.iter().all(|x| distinct.insert(x.0)) {
            return true; // unusable frame: repeated coordinate
        }
        let b: Vec<FieldElement> = c_coords
            .iter()
            .map(|&x| f.neg(f.inv(x).expect("nonzero")))
            .collect();

        // curve point at parameter s with cleared denominators
        let curve_at = |s: FieldElement| -> Vec<FieldElement> {
            (0..=n)
                .map(|i| {
                    let mut acc = f.one();
                    for (j, &bj) in b.iter().enumerate() {
                        if j != i {
                            acc = f.mul(acc, f.sub(s, bj));
                        }
                    }
                    acc
                })
                .collect()
        };
        let proportional = |x: &[FieldElement], y: &[FieldElement]| -> bool {
            let lead = match x.iter().position(|v| v.0 != 0) {
                Some(i) => i,
                None => return false,
            };
            if y[lead].0 == 0 {
                return false;
            }
            let ratio = f.div(y[lead], x[lead]).expect("nonzero");
            x.iter().zip(y).all(|(&a, &c)| f.mul(a, ratio) == c)
        };

        let mut params: Vec<Option<RncParam>> = vec![None; d];
        for (slot, &idx) in frame.iter().take(n + 1).enumerate() {
            params[idx] = Some(RncParam::Finite(b[slot]));
        }
        params[frame[n + 1]] = Some(RncParam::Infinity);
        params[c_idx] = Some(RncParam::Finite(f.zero()));

        let pending: Vec<usize> = (0..d).filter(|i| params[*i].is_none()).collect();
        for q_idx in pending {
            let qc = transform
                .apply_row(config.point(q_idx).coords())
                .expect("row length matches");
            // rows (Q_i, -Q_i b_i, -1) must drop rank by exactly one
            let sys_rows: Vec<Vec<FieldElement>> = (0..=n)
                .map(|i| vec![qc[i], f.neg(f.mul(qc[i], b[i])), f.neg(f.one())])
                .collect();
            let sys = ExactMatrix::from_rows(f, &sys_rows).expect("equal lengths");
            if sys.rank() != 2 {
                result = Some((false, None));
                return false;
            }
            let kernel = sys.kernel_basis();
            debug_assert_eq!(kernel.len(), 1);
            let kv = &kernel[0];
            if kv[1].0 == 0 {
                result = Some((false, None));
                return false;
            }
            let s = f.div(kv[0], kv[1]).expect("nonzero");
            if !proportional(&curve_at(s), &qc) {
                result = Some((false, None));
                return false;
            }
            params[q_idx] = Some(RncParam::Finite(s));
        }
        let witness: Vec<RncParam> = params.into_iter().map(|p| p.expect("all set")).collect();
        result = Some((true, Some(witness)));
        false
    });

    match result {
        Some(r) => Ok(r),
        None if frame_seen => Ok((false, None)), // every frame was unusable
        None => Err(GenError::FrameNotFound),
    }
}
