//! Separator certificates: a product of hyperplanes, optionally times one
//! general form, that vanishes at every configuration point except one and
//! is nonzero there.
//!
//! Constructors, in increasing order of structure they exploit:
//!
//! * [`separator_linear_algebra`] - kernel of the evaluation matrix of
//!   S minus P at a chosen degree; works whenever the degree is at least
//!   i(S), carries no geometric content.
//! * [`separator_greedy`] - repeatedly passes a hyperplane through up to N
//!   uncovered points while avoiding P.
//! * [`separator_lemma_v1ge3`], [`separator_lemma_v1eq2`],
//!   [`separator_plane`] - the profile-specific chain constructions that
//!   save one degree off the generic bound when they close.
//!
//! All choices (which subset, which hyperplane, which pencil member) are
//! resolved in canonical enumeration order, so every constructor is a
//! deterministic function of its inputs.

use std::fmt;

use crate::combo::{binomial, for_each_subset};
use crate::exactalg::{FieldElement, FieldSpec};
use crate::geometry::{make_config, EnumLimits, GeomError, Hyperplane, PointConfig};
use crate::hilbert::{evaluation_matrix_subset, index_of_regularity, monomial_basis};
use crate::position::{position_profile, PositionProfile};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SepError {
    /// The configuration does not satisfy the construction's hypotheses.
    PreconditionFailed(String),
    /// A proof step found no witness in this finite configuration; the
    /// message names the step. Often curable over a field extension.
    ConstructionStuck(String),
    /// Invariant violation inside this crate; never expected.
    Internal(String),
    BadIndex,
}

impl fmt::Display for SepError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SepError::PreconditionFailed(msg) => write!(f, "precondition failed: {}", msg),
            SepError::ConstructionStuck(msg) => write!(f, "construction stuck: {}", msg),
            SepError::Internal(msg) => write!(f, "internal error: {}", msg),
            SepError::BadIndex => write!(f, "point index out of range"),
        }
    }
}

impl std::error::Error for SepError {}

fn stuck(msg: &str) -> SepError {
    SepError::ConstructionStuck(msg.to_string())
}

fn precondition(msg: &str) -> SepError {
    SepError::PreconditionFailed(msg.to_string())
}

/// How a certificate was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Linalg,
    Greedy,
    Lemma21,
    Lemma22N3,
    Lemma22N4,
    Lemma22N5,
    Lemma24,
    Lemma25,
    /// Parsed from a certificate file; provenance unknown.
    External,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Linalg => "linalg",
            Method::Greedy => "greedy",
            Method::Lemma21 => "lemma21",
            Method::Lemma22N3 => "lemma22_n3",
            Method::Lemma22N4 => "lemma22_n4",
            Method::Lemma22N5 => "lemma22_n5",
            Method::Lemma24 => "lemma24",
            Method::Lemma25 => "lemma25",
            Method::External => "external",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A form of the stated degree, one coefficient per monomial of the ambient
/// space in graded-lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralForm {
    pub degree: usize,
    pub coeffs: Vec<FieldElement>,
}

impl GeneralForm {
    pub fn eval(&self, field: &FieldSpec, n: usize, coords: &[FieldElement]) -> FieldElement {
        let basis = monomial_basis(n, self.degree);
        debug_assert_eq!(basis.len(), self.coeffs.len());
        let mut acc = field.zero();
        for (mono, &c) in basis.iter().zip(&self.coeffs) {
            if c.0 == 0 {
                continue;
            }
            let mut term = c;
            for (j, &e) in mono.iter().enumerate() {
                if e > 0 {
                    term = field.mul(term, field.pow(coords[j], e as u64));
                }
            }
            acc = field.add(acc, term);
        }
        acc
    }
}

/// A verified or verifiable witness that the point admits a degree-l
/// separator: degree = number of hyperplanes plus the general form degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatorCertificate {
    pub point_index: usize,
    pub degree: usize,
    pub hyperplanes: Vec<Hyperplane>,
    pub general_form: Option<GeneralForm>,
    pub method: Method,
}

/// Verification verdict, most specific failure first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertCheck {
    Valid,
    BadIndex,
    WrongLength,
    DegreeMismatch,
    VanishesAtP,
    Uncovered { index: usize },
}

impl fmt::Display for CertCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertCheck::Valid => write!(f, "valid"),
            CertCheck::BadIndex => write!(f, "bad_index"),
            CertCheck::WrongLength => write!(f, "wrong_length"),
            CertCheck::DegreeMismatch => write!(f, "degree_mismatch"),
            CertCheck::VanishesAtP => write!(f, "vanishes_at_p"),
            CertCheck::Uncovered { index } => write!(f, "uncovered {}", index),
        }
    }
}

/// Result of running the strongest applicable constructor for every point.
#[derive(Debug, Clone)]
pub struct RegularityBound {
    /// Max certificate degree over all points; i(S) <= l_star.
    pub l_star: usize,
    /// Method of the first certificate achieving l_star.
    pub method: Method,
    /// One certificate per point, in configuration order.
    pub certificates: Vec<SeparatorCertificate>,
}

fn product_eval(config: &PointConfig, cert: &SeparatorCertificate, idx: usize) -> FieldElement {
    let f = config.field();
    let pt = config.point(idx);
    let mut acc = f.one();
    for h in &cert.hyperplanes {
        acc = f.mul(acc, h.eval(f, pt));
    }
    if let Some(form) = &cert.general_form {
        acc = f.mul(acc, form.eval(f, config.ambient_dim(), pt.coords()));
    }
    acc
}

/// Check the separator property: shape errors first, then vanishing at P,
/// then the first uncovered point.
pub fn verify_certificate(config: &PointConfig, cert: &SeparatorCertificate) -> CertCheck {
    let n = config.ambient_dim();
    if cert.point_index >= config.len() {
        return CertCheck::BadIndex;
    }
    if cert.hyperplanes.iter().any(|h| h.coeffs.len() != n + 1) {
        return CertCheck::WrongLength;
    }
    if let Some(form) = &cert.general_form {
        if form.coeffs.len() != binomial(n + form.degree, n) {
            return CertCheck::WrongLength;
        }
    }
    let form_degree = cert.general_form.as_ref().map_or(0, |g| g.degree);
    if cert.hyperplanes.len() + form_degree != cert.degree {
        return CertCheck::DegreeMismatch;
    }
    if product_eval(config, cert, cert.point_index).0 == 0 {
        return CertCheck::VanishesAtP;
    }
    for i in 0..config.len() {
        if i == cert.point_index {
            continue;
        }
        if product_eval(config, cert, i).0 != 0 {
            return CertCheck::Uncovered { index: i };
        }
    }
    CertCheck::Valid
}

/// Definition-level separator: a degree-l form in the kernel of the
/// evaluation matrix of S minus P that does not vanish at P. Returns None
/// when no kernel element separates (that is, when l < the least separating
/// degree for this point).
pub fn separator_linear_algebra(
    config: &PointConfig,
    p: usize,
    l: usize,
) -> Option<SeparatorCertificate> {
    assert!(p < config.len(), "point index out of range");
    let others: Vec<usize> = (0..config.len()).filter(|&i| i != p).collect();
    let matrix = evaluation_matrix_subset(config, l, &others);
    let at_p = evaluation_matrix_subset(config, l, &[p]);
    let f = config.field();
    for vec in matrix.kernel_basis() {
        let mut val = f.zero();
        for (j, &c) in vec.iter().enumerate() {
            val = f.add(val, f.mul(c, at_p[[0, j]]));
        }
        if val.0 != 0 {
            return Some(SeparatorCertificate {
                point_index: p,
                degree: l,
                hyperplanes: Vec::new(),
                general_form: Some(GeneralForm {
                    degree: l,
                    coeffs: vec,
                }),
                method: Method::Linalg,
            });
        }
    }
    None
}

fn map_search_err(e: GeomError) -> SepError {
    match e {
        GeomError::Exhausted => stuck("no hyperplane over this field satisfies the constraints"),
        GeomError::TooLarge => stuck("hyperplane enumeration exceeded the candidate cap"),
        GeomError::BadConstraint => {
            stuck("the avoided point lies in the span of the target points")
        }
        other => SepError::Internal(format!("hyperplane search rejected valid input: {}", other)),
    }
}

/// Union of hyperplanes, each through up to N not-yet-covered points (lowest
/// indices first, skipping points that add nothing to the span or would drag
/// P into it) and avoiding P.
pub fn separator_greedy(config: &PointConfig, p: usize) -> Result<SeparatorCertificate, SepError> {
    if p >= config.len() {
        return Err(SepError::BadIndex);
    }
    let n = config.ambient_dim();
    let d = config.len();
    let mut covered = vec![false; d];
    covered[p] = true;
    let mut hyperplanes = Vec::new();
    while covered.iter().any(|c| !c) {
        let mut through: Vec<usize> = Vec::new();
        for q in (0..d).filter(|&q| !covered[q]) {
            if through.len() == n {
                break;
            }
            let mut ext = through.clone();
            ext.push(q);
            let rank_ext = config.span_dim(&ext).expect("indices in range") + 1;
            if rank_ext == through.len() {
                continue; // q already in the span
            }
            ext.push(p);
            let rank_with_p = config.span_dim(&ext).expect("indices in range") + 1;
            if rank_with_p == rank_ext {
                continue; // taking q would force the hyperplane through P
            }
            through.push(q);
        }
        debug_assert!(
            !through.is_empty(),
            "lowest uncovered point always qualifies"
        );
        let h = config
            .hyperplane_search(&through, &[p])
            .map_err(map_search_err)?;
        for (q, slot) in covered.iter_mut().enumerate() {
            if !*slot && h.contains(config.field(), config.point(q)) {
                *slot = true;
            }
        }
        hyperplanes.push(h);
    }
    Ok(SeparatorCertificate {
        point_index: p,
        degree: hyperplanes.len(),
        hyperplanes,
        general_form: None,
        method: Method::Greedy,
    })
}

/// The unique hyperplane spanned by the subset when it has full rank N,
/// None otherwise.
fn spanned_hyperplane(config: &PointConfig, subset: &[usize]) -> Option<Hyperplane> {
    let n = config.ambient_dim();
    debug_assert_eq!(subset.len(), n);
    let rows: Vec<Vec<FieldElement>> = subset
        .iter()
        .map(|&i| config.point(i).coords().to_vec())
        .collect();
    let m = crate::exactalg::ExactMatrix::from_rows(config.field(), &rows).expect("same lengths");
    let kernel = m.kernel_basis();
    if kernel.len() != 1 {
        return None;
    }
    Some(Hyperplane::new(config.field(), &kernel[0]).expect("kernel vector is nonzero"))
}

fn incidence_count(config: &PointConfig, h: &Hyperplane) -> usize {
    config
        .points()
        .iter()
        .filter(|pt| h.contains(config.field(), pt))
        .count()
}

fn cover_hyperplane(config: &PointConfig, h: &Hyperplane, covered: &mut [bool]) -> usize {
    let mut fresh = 0;
    for (q, slot) in covered.iter_mut().enumerate() {
        if !*slot && h.contains(config.field(), config.point(q)) {
            *slot = true;
            fresh += 1;
        }
    }
    fresh
}

fn remaining_count(covered: &[bool]) -> usize {
    covered.iter().filter(|c| !**c).count()
}

fn ceil_div(a: usize, b: usize) -> usize {
    a.div_ceil(b)
}

/// Restrict the configuration to the points on h, realize them in one lower
/// dimension by dropping the pivot coordinate of h, and find a degree-l
/// separator of the restricted point there by linear algebra. The returned
/// form is re-embedded into the ambient space (the dropped variable simply
/// does not occur), so on h it cuts exactly what the restricted form cuts.
fn inner_separator(
    config: &PointConfig,
    h: &Hyperplane,
    on_h: &[usize],
    p: usize,
    l: usize,
) -> Result<GeneralForm, SepError> {
    let n = config.ambient_dim();
    let f = config.field();
    let pivot = h
        .coeffs
        .iter()
        .position(|c| c.0 != 0)
        .expect("hyperplane has a nonzero coefficient");
    // dropping the pivot coordinate is injective on points of h, and never
    // produces the zero vector because the pivot axis point is off h
    let dropped: Vec<Vec<FieldElement>> = on_h
        .iter()
        .map(|&i| {
            let c = config.point(i).coords();
            c.iter()
                .enumerate()
                .filter(|&(j, _)| j != pivot)
                .map(|(_, &x)| x)
                .collect()
        })
        .collect();
    let mini = make_config(f, n - 1, &dropped)
        .map_err(|e| SepError::Internal(format!("restricted configuration invalid: {}", e)))?;
    let mini_p = on_h
        .iter()
        .position(|&i| i == p)
        .expect("separated point lies on the residual hyperplane");
    let cert = separator_linear_algebra(&mini, mini_p, l).ok_or_else(|| {
        stuck("no separator of the budgeted degree inside the residual hyperplane")
    })?;
    let small = cert
        .general_form
        .expect("linear algebra certificates carry a form");
    // re-embed: insert exponent 0 for the dropped variable
    let small_basis = monomial_basis(n - 1, l);
    let big_basis = monomial_basis(n, l);
    let mut coeffs = vec![f.zero(); big_basis.len()];
    for (mono, &c) in small_basis.iter().zip(&small.coeffs) {
        if c.0 == 0 {
            continue;
        }
        let mut full = Vec::with_capacity(n + 1);
        full.extend_from_slice(&mono[..pivot]);
        full.push(0);
        full.extend_from_slice(&mono[pivot..]);
        let pos = big_basis
            .iter()
            .position(|m| *m == full)
            .expect("embedded monomial exists");
        coeffs[pos] = c;
    }
    Ok(GeneralForm { degree: l, coeffs })
}

/// Shared skeleton of the two chain constructions: a hyperplane with v
/// points avoiding P, a codimension-2 flat L with w of them, a pencil of
/// hyperplanes through L eating v-w fresh points each, the residual
/// hyperplane G through L and P, and a separator inside G.
fn chain_construction(
    config: &PointConfig,
    p: usize,
    v: usize,
    w: usize,
    method: Method,
) -> Result<SeparatorCertificate, SepError> {
    let n = config.ambient_dim();
    let d = config.len();
    let f = config.field();

    // first hyperplane: lowest N-subset of the other points that spans a
    // hyperplane missing P
    let candidates: Vec<usize> = (0..d).filter(|&i| i != p).collect();
    let mut first: Option<Hyperplane> = None;
    for_each_subset(candidates.len(), n, |sub| {
        let subset: Vec<usize> = sub.iter().map(|&i| candidates[i]).collect();
        if let Some(h) = spanned_hyperplane(config, &subset) {
            if !h.contains(f, config.point(p)) {
                first = Some(h);
                return false;
            }
        }
        true
    });
    let h1 = first.ok_or_else(|| stuck("no spanned hyperplane misses the point"))?;
    if incidence_count(config, &h1) != v {
        return Err(stuck("first hyperplane does not carry v points"));
    }

    let mut covered = vec![false; d];
    covered[p] = true;
    cover_hyperplane(config, &h1, &mut covered);
    let on_h1: Vec<usize> = (0..d)
        .filter(|&i| i != p && h1.contains(f, config.point(i)))
        .collect();

    // codimension-2 flat inside the first hyperplane carrying w points
    let mut flat: Option<Vec<usize>> = None;
    for_each_subset(on_h1.len(), n - 1, |sub| {
        let subset: Vec<usize> = sub.iter().map(|&i| on_h1[i]).collect();
        let rank = config.span_dim(&subset).expect("indices in range") + 1;
        if rank != n - 1 {
            return true;
        }
        let on_flat = candidates
            .iter()
            .filter(|&&q| {
                let mut ext = subset.clone();
                ext.push(q);
                config.span_dim(&ext).expect("indices in range") + 1 == n - 1
            })
            .count();
        if on_flat == w {
            flat = Some(subset);
            return false;
        }
        true
    });
    let l_subset = flat.ok_or_else(|| stuck("no codimension-2 flat carries w points"))?;

    // pencil through the flat: each member must miss P and eat exactly v-w
    // fresh points
    let mut hyperplanes = vec![h1];
    while remaining_count(&covered) > v - w - 1 {
        let mut chosen: Option<Hyperplane> = None;
        for q in (0..d).filter(|&q| !covered[q]) {
            let mut span = l_subset.clone();
            span.push(q);
            let m = match spanned_hyperplane(config, &span) {
                Some(m) => m,
                None => continue,
            };
            if m.contains(f, config.point(p)) {
                continue;
            }
            let fresh = (0..d)
                .filter(|&i| !covered[i] && m.contains(f, config.point(i)))
                .count();
            if fresh == v - w {
                chosen = Some(m);
                break;
            }
        }
        let m = chosen.ok_or_else(|| stuck("pencil found no admissible hyperplane"))?;
        cover_hyperplane(config, &m, &mut covered);
        hyperplanes.push(m);
    }
    if remaining_count(&covered) != v - w - 1 {
        return Err(stuck("pencil did not close on v - w - 1 leftover points"));
    }

    // residual hyperplane through the flat and P
    let mut g_span = l_subset.clone();
    g_span.push(p);
    let g = spanned_hyperplane(config, &g_span)
        .ok_or_else(|| SepError::Internal("flat plus separated point must span".into()))?;
    if (0..d).any(|i| !covered[i] && !g.contains(f, config.point(i))) {
        return Err(stuck("a leftover point misses the residual hyperplane"));
    }
    if incidence_count(config, &g) != v {
        return Err(stuck("residual hyperplane does not carry v points"));
    }

    // separate P inside the residual hyperplane at the budgeted degree
    let on_g: Vec<usize> = (0..d).filter(|&i| g.contains(f, config.point(i))).collect();
    let l1 = hyperplanes.len();
    let l2 = ceil_div(v - 1, n - 1);
    let form = inner_separator(config, &g, &on_g, p, l2)?;

    let total = l1 + l2;
    if total + 1 > ceil_div(d - 1, n) {
        return Err(stuck("degree budget exceeded"));
    }
    Ok(SeparatorCertificate {
        point_index: p,
        degree: total,
        hyperplanes,
        general_form: Some(form),
        method,
    })
}

fn profile_values<'a>(profile: &'a PositionProfile) -> Result<&'a [usize], SepError> {
    profile
        .v
        .as_deref()
        .filter(|_| profile.semi_uniform)
        .ok_or_else(|| precondition("configuration is not in linear semi-uniform position"))
}

fn lemma21_with_profile(
    config: &PointConfig,
    p: usize,
    profile: &PositionProfile,
) -> Result<SeparatorCertificate, SepError> {
    let n = config.ambient_dim();
    let d = config.len();
    let v = profile_values(profile)?;
    if n < 3 {
        return Err(precondition("ambient dimension must be at least 3"));
    }
    if v[1] < 3 {
        return Err(precondition("v(1) must be at least 3"));
    }
    if d < 25 {
        return Err(precondition("degree must be at least 25"));
    }
    chain_construction(config, p, v[n - 1], v[n - 2], Method::Lemma21)
}

/// Chain construction for semi-uniform configurations with v(1) >= 3 in
/// dimension N >= 3 and d >= 25; lands one below the generic degree bound.
pub fn separator_lemma_v1ge3(
    config: &PointConfig,
    p: usize,
) -> Result<SeparatorCertificate, SepError> {
    if p >= config.len() {
        return Err(SepError::BadIndex);
    }
    let profile = compute_profile(config)?;
    lemma21_with_profile(config, p, &profile)
}

fn compute_profile(config: &PointConfig) -> Result<PositionProfile, SepError> {
    position_profile(config, &EnumLimits::default())
        .map_err(|e| precondition(&format!("profile unavailable: {}", e)))
}

// --- power-of-two profile constructions ---

fn lemma22_with_profile(
    config: &PointConfig,
    p: usize,
    profile: &PositionProfile,
) -> Result<SeparatorCertificate, SepError> {
    let n = config.ambient_dim();
    let d = config.len();
    let v = profile_values(profile)?;
    if n < 3 {
        return Err(precondition("ambient dimension must be at least 3"));
    }
    if v[1] != 2 {
        return Err(precondition("v(1) must equal 2"));
    }
    if v[2] < 4 {
        return Err(precondition("v(2) must be at least 4"));
    }
    if !d.is_power_of_two() {
        return Err(precondition("degree must be a power of two"));
    }
    if d < 23 {
        return Err(precondition("degree must be at least 23"));
    }
    match n {
        3 => lemma22_n3(config, p),
        4 => lemma22_n4(config, p),
        _ => chain_construction(config, p, v[n - 1], v[n - 2], Method::Lemma22N5),
    }
}

/// Power-of-two construction for semi-uniform configurations with v(1) = 2
/// and v(2) >= 4 in dimension N >= 3, d = 2^k >= 23; dispatches on N.
pub fn separator_lemma_v1eq2(
    config: &PointConfig,
    p: usize,
) -> Result<SeparatorCertificate, SepError> {
    if p >= config.len() {
        return Err(SepError::BadIndex);
    }
    let profile = compute_profile(config)?;
    lemma22_with_profile(config, p, &profile)
}

/// Lowest index subset of `pool` (lexicographic) passing `accept`.
fn first_subset<F>(pool: &[usize], size: usize, mut accept: F) -> Option<Vec<usize>>
where
    F: FnMut(&[usize]) -> bool,
{
    let mut found = None;
    for_each_subset(pool.len(), size, |sub| {
        let subset: Vec<usize> = sub.iter().map(|&i| pool[i]).collect();
        if accept(&subset) {
            found = Some(subset);
            return false;
        }
        true
    });
    found
}

fn uncovered_list(covered: &[bool]) -> Vec<usize> {
    (0..covered.len()).filter(|&i| !covered[i]).collect()
}

fn lemma22_n3(config: &PointConfig, p: usize) -> Result<SeparatorCertificate, SepError> {
    let d = config.len();
    let f = config.field();
    let k = d.trailing_zeros() as usize;
    let l1 = 1usize << (k - 3);
    let mut covered = vec![false; d];
    covered[p] = true;
    let mut planes: Vec<Hyperplane> = Vec::new();

    // phase one: exactly d/8 planes, each carrying four entirely fresh points
    for _ in 0..l1 {
        let pool = uncovered_list(&covered);
        let mut found: Option<Hyperplane> = None;
        first_subset(&pool, 3, |subset| {
            let h = match spanned_hyperplane(config, subset) {
                Some(h) => h,
                None => return false,
            };
            if h.contains(f, config.point(p)) {
                return false;
            }
            let on: Vec<usize> = (0..d).filter(|&i| h.contains(f, config.point(i))).collect();
            if on.len() == 4 && on.iter().all(|&i| !covered[i]) {
                found = Some(h);
                true
            } else {
                false
            }
        });
        let h = found.ok_or_else(|| stuck("phase one found no fresh four-point plane"))?;
        cover_hyperplane(config, &h, &mut covered);
        planes.push(h);
    }

    // phase two: planes through three fresh points, endgame below four
    while remaining_count(&covered) > 3 {
        let pool = uncovered_list(&covered);
        let mut found: Option<Hyperplane> = None;
        first_subset(&pool, 3, |subset| {
            match spanned_hyperplane(config, subset) {
                Some(h) if !h.contains(f, config.point(p)) => {
                    found = Some(h);
                    true
                }
                _ => false,
            }
        });
        let h =
            found.ok_or_else(|| stuck("phase two found no plane through three fresh points"))?;
        cover_hyperplane(config, &h, &mut covered);
        planes.push(h);
    }
    while remaining_count(&covered) > 0 {
        let pool = uncovered_list(&covered);
        let take = pool.len().min(2);
        let h = config
            .hyperplane_search(&pool[..take], &[p])
            .map_err(map_search_err)?;
        cover_hyperplane(config, &h, &mut covered);
        planes.push(h);
    }

    finish_plane_union(config, p, planes, Method::Lemma22N3)
}

fn lemma22_n4(config: &PointConfig, p: usize) -> Result<SeparatorCertificate, SepError> {
    let n = config.ambient_dim();
    let d = config.len();
    let f = config.field();
    let k = d.trailing_zeros() as usize;
    let mut covered = vec![false; d];
    covered[p] = true;
    let mut planes: Vec<Hyperplane> = Vec::new();

    // opening hyperplane: eight entirely fresh points, P avoided
    {
        let pool = uncovered_list(&covered);
        let mut found: Option<Hyperplane> = None;
        first_subset(&pool, 4, |subset| {
            let h = match spanned_hyperplane(config, subset) {
                Some(h) => h,
                None => return false,
            };
            if h.contains(f, config.point(p)) {
                return false;
            }
            let on: Vec<usize> = (0..d).filter(|&i| h.contains(f, config.point(i))).collect();
            if on.len() == 8 && on.iter().all(|&i| !covered[i]) {
                found = Some(h);
                true
            } else {
                false
            }
        });
        let h = found.ok_or_else(|| stuck("no opening hyperplane with eight fresh points"))?;
        cover_hyperplane(config, &h, &mut covered);
        planes.push(h);
    }

    // dense phase: at least seven fresh points per hyperplane while the
    // pool stays above 2^(k-1) + 3
    while remaining_count(&covered) >= (1usize << (k - 1)) + 4 {
        let pool = uncovered_list(&covered);
        let mut found: Option<Hyperplane> = None;
        first_subset(&pool, 4, |subset| {
            let h = match spanned_hyperplane(config, subset) {
                Some(h) => h,
                None => return false,
            };
            if h.contains(f, config.point(p)) {
                return false;
            }
            let fresh = (0..d)
                .filter(|&i| !covered[i] && h.contains(f, config.point(i)))
                .count();
            if fresh >= 7 {
                found = Some(h);
                true
            } else {
                false
            }
        });
        let h = found
            .ok_or_else(|| stuck("dense phase found no hyperplane with seven fresh points"))?;
        cover_hyperplane(config, &h, &mut covered);
        planes.push(h);
    }

    // sparse phase: four fresh points per hyperplane; a four-subset may span
    // only a plane (v(2) = 4), in which case any hyperplane through it works
    while remaining_count(&covered) > 6 {
        let pool = uncovered_list(&covered);
        let mut found: Option<Hyperplane> = None;
        first_subset(&pool, 4, |subset| {
            let rank = config.span_dim(subset).expect("indices in range") + 1;
            let h = if rank == n {
                match spanned_hyperplane(config, subset) {
                    Some(h) if !h.contains(f, config.point(p)) => h,
                    _ => return false,
                }
            } else {
                match config.hyperplane_search(subset, &[p]) {
                    Ok(h) => h,
                    Err(_) => return false,
                }
            };
            found = Some(h);
            true
        });
        let h = found
            .ok_or_else(|| stuck("sparse phase found no hyperplane through four fresh points"))?;
        cover_hyperplane(config, &h, &mut covered);
        planes.push(h);
    }

    // endgame: six leftovers pair off; three to five split ceil(r/2) then
    // the rest; one or two take a single hyperplane
    while remaining_count(&covered) > 0 {
        let pool = uncovered_list(&covered);
        let take = match pool.len() {
            6 => 2,
            3..=5 => (pool.len() + 1) / 2,
            _ => pool.len(),
        };
        let h = config
            .hyperplane_search(&pool[..take], &[p])
            .map_err(map_search_err)?;
        cover_hyperplane(config, &h, &mut covered);
        planes.push(h);
    }

    finish_plane_union(config, p, planes, Method::Lemma22N4)
}

/// Package a pure hyperplane union, enforcing the one-below-generic budget.
fn finish_plane_union(
    config: &PointConfig,
    p: usize,
    hyperplanes: Vec<Hyperplane>,
    method: Method,
) -> Result<SeparatorCertificate, SepError> {
    let bound = ceil_div(config.len() - 1, config.ambient_dim());
    if hyperplanes.len() + 1 > bound {
        return Err(stuck("degree budget exceeded"));
    }
    Ok(SeparatorCertificate {
        point_index: p,
        degree: hyperplanes.len(),
        hyperplanes,
        general_form: None,
        method,
    })
}

// --- plane constructions (N = 2) ---

fn plane_with_profile(
    config: &PointConfig,
    p: usize,
    profile: &PositionProfile,
) -> Result<SeparatorCertificate, SepError> {
    let n = config.ambient_dim();
    let d = config.len();
    let v = profile_values(profile)?;
    if n != 2 {
        return Err(precondition("ambient dimension must be 2"));
    }
    if v[1] >= 4 {
        plane_pencil(config, p, v[1])
    } else if v[1] == 3 && d >= 24 {
        plane_triple(config, p)
    } else {
        Err(precondition(
            "needs v(1) >= 4, or v(1) = 3 with degree at least 24",
        ))
    }
}

/// Line constructions in the plane: a pencil through a fixed point of the
/// first line when v(1) >= 4, or fresh three-point lines when v(1) = 3 and
/// d >= 24. Lands one below the generic degree bound.
pub fn separator_plane(config: &PointConfig, p: usize) -> Result<SeparatorCertificate, SepError> {
    if p >= config.len() {
        return Err(SepError::BadIndex);
    }
    let profile = compute_profile(config)?;
    plane_with_profile(config, p, &profile)
}

fn plane_pencil(
    config: &PointConfig,
    p: usize,
    v: usize,
) -> Result<SeparatorCertificate, SepError> {
    let d = config.len();
    let f = config.field();
    let candidates: Vec<usize> = (0..d).filter(|&i| i != p).collect();

    // first line: lowest pair spanning a line that misses P
    let mut first: Option<Hyperplane> = None;
    first_subset(&candidates, 2, |subset| {
        match spanned_hyperplane(config, subset) {
            Some(h) if !h.contains(f, config.point(p)) => {
                first = Some(h);
                true
            }
            _ => false,
        }
    });
    let line1 = first.ok_or_else(|| stuck("no spanned line misses the point"))?;
    if incidence_count(config, &line1) != v {
        return Err(stuck("first line does not carry v points"));
    }
    let mut covered = vec![false; d];
    covered[p] = true;
    cover_hyperplane(config, &line1, &mut covered);
    let q = (0..d)
        .find(|&i| i != p && line1.contains(f, config.point(i)))
        .expect("first line carries configuration points");
    let mut lines = vec![line1];

    // pencil through q: each line carries v points, misses P, and meets the
    // covered set only at q
    while remaining_count(&covered) > v - 2 {
        let mut chosen: Option<Hyperplane> = None;
        for r in (0..d).filter(|&r| !covered[r]) {
            let m = match spanned_hyperplane(config, &[q, r]) {
                Some(m) => m,
                None => continue,
            };
            if m.contains(f, config.point(p)) || incidence_count(config, &m) != v {
                continue;
            }
            let stale = (0..d)
                .filter(|&i| i != q && covered[i] && i != p && m.contains(f, config.point(i)))
                .count();
            if stale == 0 {
                chosen = Some(m);
                break;
            }
        }
        let m = chosen.ok_or_else(|| stuck("pencil found no admissible line"))?;
        cover_hyperplane(config, &m, &mut covered);
        lines.push(m);
    }

    // endgame: pair lines where the spanned line misses P, singletons where
    // it cannot
    while remaining_count(&covered) > 0 {
        let pool = uncovered_list(&covered);
        let h = if pool.len() >= 2 {
            let pair = [pool[0], pool[1]];
            match spanned_hyperplane(config, &pair) {
                Some(m) if !m.contains(f, config.point(p)) => m,
                _ => config
                    .hyperplane_search(&pair[..1], &[p])
                    .map_err(map_search_err)?,
            }
        } else {
            config
                .hyperplane_search(&pool[..1], &[p])
                .map_err(map_search_err)?
        };
        cover_hyperplane(config, &h, &mut covered);
        lines.push(h);
    }

    finish_plane_union(config, p, lines, Method::Lemma24)
}

fn plane_triple(config: &PointConfig, p: usize) -> Result<SeparatorCertificate, SepError> {
    let d = config.len();
    let f = config.field();
    let l1 = (d - 4) / 6 + 1;
    let mut covered = vec![false; d];
    covered[p] = true;
    let mut lines: Vec<Hyperplane> = Vec::new();

    // phase one: exactly l1 lines, each carrying three entirely fresh points
    for _ in 0..l1 {
        let pool = uncovered_list(&covered);
        let mut found: Option<Hyperplane> = None;
        first_subset(&pool, 2, |subset| {
            let h = match spanned_hyperplane(config, subset) {
                Some(h) => h,
                None => return false,
            };
            if h.contains(f, config.point(p)) {
                return false;
            }
            let on: Vec<usize> = (0..d).filter(|&i| h.contains(f, config.point(i))).collect();
            if on.len() == 3 && on.iter().all(|&i| !covered[i]) {
                found = Some(h);
                true
            } else {
                false
            }
        });
        let h = found.ok_or_else(|| stuck("phase one found no fresh three-point line"))?;
        cover_hyperplane(config, &h, &mut covered);
        lines.push(h);
    }

    // phase two: pair off what remains; the only bad partner for a point is
    // the third point of its line through P, so pairs exist while at least
    // three points remain
    while remaining_count(&covered) > 0 {
        let pool = uncovered_list(&covered);
        let mut h: Option<Hyperplane> = None;
        if pool.len() >= 2 {
            let a = pool[0];
            for &b in &pool[1..] {
                if let Some(m) = spanned_hyperplane(config, &[a, b]) {
                    if !m.contains(f, config.point(p)) {
                        h = Some(m);
                        break;
                    }
                }
            }
        }
        let h = match h {
            Some(h) => h,
            None => config
                .hyperplane_search(&pool[..1], &[p])
                .map_err(map_search_err)?,
        };
        cover_hyperplane(config, &h, &mut covered);
        lines.push(h);
    }

    finish_plane_union(config, p, lines, Method::Lemma25)
}

fn best_certificate(
    config: &PointConfig,
    p: usize,
    profile: Option<&PositionProfile>,
    i_s: usize,
) -> Result<SeparatorCertificate, SepError> {
    let d = config.len();
    let n = config.ambient_dim();
    let mut cert: Option<SeparatorCertificate> = None;
    if let Some(prof) = profile.filter(|pr| pr.semi_uniform) {
        let v = prof.v.as_deref().expect("semi-uniform profile has v");
        let attempt = if n >= 3 && v[1] >= 3 && d >= 25 {
            Some(lemma21_with_profile(config, p, prof))
        } else if n >= 3 && v[1] == 2 && v[2] >= 4 && d.is_power_of_two() && d >= 23 {
            Some(lemma22_with_profile(config, p, prof))
        } else if n == 2 && (v[1] >= 4 || (v[1] == 3 && d >= 24)) {
            Some(plane_with_profile(config, p, prof))
        } else {
            None
        };
        match attempt {
            Some(Ok(c)) => cert = Some(c),
            Some(Err(SepError::PreconditionFailed(_)))
            | Some(Err(SepError::ConstructionStuck(_)))
            | None => {}
            Some(Err(e)) => return Err(e),
        }
    }
    if cert.is_none() {
        match separator_greedy(config, p) {
            Ok(c) => cert = Some(c),
            Err(SepError::ConstructionStuck(_)) => {}
            Err(e) => return Err(e),
        }
    }
    match cert {
        Some(c) => Ok(c),
        None => separator_linear_algebra(config, p, i_s).ok_or_else(|| {
            SepError::Internal("no separator at i(S); Hilbert data inconsistent".into())
        }),
    }
}

/// Strongest applicable construction for one point: the profile-specific
/// chain when its hypotheses hold, else the greedy union, else linear
/// algebra at i(S).
pub fn separator_auto(config: &PointConfig, p: usize) -> Result<SeparatorCertificate, SepError> {
    if p >= config.len() {
        return Err(SepError::BadIndex);
    }
    let profile = position_profile(config, &EnumLimits::default()).ok();
    let i_s = index_of_regularity(config);
    best_certificate(config, p, profile.as_ref(), i_s)
}

/// Classify once, then for each point run the strongest applicable
/// construction, falling back to the greedy union and finally to linear
/// algebra at i(S): l_star is the max certificate degree.
pub fn regularity_upper_bound(config: &PointConfig) -> Result<RegularityBound, SepError> {
    let d = config.len();
    let profile = position_profile(config, &EnumLimits::default()).ok();
    let i_s = index_of_regularity(config);
    let mut certificates = Vec::with_capacity(d);
    for p in 0..d {
        certificates.push(best_certificate(config, p, profile.as_ref(), i_s)?);
    }
    let l_star = certificates.iter().map(|c| c.degree).max().expect("d >= 1");
    if l_star < i_s {
        return Err(SepError::Internal(
            "certificate degrees below i(S); verification invariant broken".into(),
        ));
    }
    let method = certificates
        .iter()
        .find(|c| c.degree == l_star)
        .expect("max is attained")
        .method;
    Ok(RegularityBound {
        l_star,
        method,
        certificates,
    })
}
