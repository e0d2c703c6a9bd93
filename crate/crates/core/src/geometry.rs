//! Projective points over finite fields, spans, flats, incidence counting,
//! and hyperplane search under through/avoid constraints.
//!
//! Points and hyperplane coefficient vectors are kept in canonical form:
//! first nonzero entry scaled to 1. That makes equality checks, sorting and
//! deduplication plain comparisons on the integer encodings.

use std::collections::BTreeMap;
use std::fmt;

use crate::combo::for_each_subset;
use crate::exactalg::{ExactMatrix, FieldElement, FieldSpec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeomError {
    ZeroVector,
    WrongLength { index: usize },
    DuplicatePoint { first: usize, second: usize },
    Degenerate,
    IndexOutOfRange,
    BadConstraint,
    Exhausted,
    TooLarge,
}

impl fmt::Display for GeomError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeomError::ZeroVector => write!(f, "all coordinates are zero"),
            GeomError::WrongLength { index } => {
                write!(f, "point {} has the wrong number of coordinates", index)
            }
            GeomError::DuplicatePoint { first, second } => {
                write!(f, "points {} and {} coincide", first, second)
            }
            GeomError::Degenerate => write!(f, "points do not span the ambient space"),
            GeomError::IndexOutOfRange => write!(f, "point index out of range"),
            GeomError::BadConstraint => {
                write!(f, "avoid point lies in the span of the through points")
            }
            GeomError::Exhausted => {
                write!(f, "no hyperplane over this field satisfies the constraints")
            }
            GeomError::TooLarge => write!(f, "enumeration exceeds the configured limits"),
        }
    }
}

impl std::error::Error for GeomError {}

/// A point of P^N in canonical scaling (first nonzero coordinate is 1).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjectivePoint {
    coords: Vec<FieldElement>,
}

impl ProjectivePoint {
    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }
}

/// Scale a coordinate vector so its first nonzero entry is 1.
pub fn normalize_point(
    field: &FieldSpec,
    raw: &[FieldElement],
) -> Result<ProjectivePoint, GeomError> {
    let lead = raw.iter().find(|c| c.0 != 0).ok_or(GeomError::ZeroVector)?;
    let inv = field.inv(*lead).expect("lead is nonzero");
    let coords = raw.iter().map(|&c| field.mul(c, inv)).collect();
    Ok(ProjectivePoint { coords })
}

/// A hyperplane of P^N, stored as the canonical coefficient vector of its
/// defining linear form. A point lies on it iff the dot product vanishes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hyperplane {
    pub coeffs: Vec<FieldElement>,
}

impl Hyperplane {
    pub fn new(field: &FieldSpec, raw: &[FieldElement]) -> Result<Hyperplane, GeomError> {
        let p = normalize_point(field, raw)?;
        Ok(Hyperplane { coeffs: p.coords })
    }

    pub fn eval(&self, field: &FieldSpec, point: &ProjectivePoint) -> FieldElement {
        dot(field, &self.coeffs, point.coords())
    }

    pub fn contains(&self, field: &FieldSpec, point: &ProjectivePoint) -> bool {
        self.eval(field, point).0 == 0
    }
}

fn dot(field: &FieldSpec, a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = field.zero();
    for (&x, &y) in a.iter().zip(b) {
        acc = field.add(acc, field.mul(x, y));
    }
    acc
}

/// An i-plane spanned by configuration points, keyed by the RREF of its
/// spanning rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flat {
    pub dim: usize,
    /// RREF rows, each of length N+1; dim + 1 of them.
    pub basis: Vec<Vec<FieldElement>>,
    /// Number of configuration points lying on the flat.
    pub incident_count: usize,
}

impl Flat {
    /// Membership test: the point reduces to zero against the basis rows.
    pub fn contains(&self, field: &FieldSpec, point: &ProjectivePoint) -> bool {
        reduces_to_zero(field, &self.basis, point.coords())
    }
}

/// Reduce v against RREF rows (pivot = first nonzero entry of each row,
/// already scaled to 1) and report whether the remainder is zero.
fn reduces_to_zero(field: &FieldSpec, rref_rows: &[Vec<FieldElement>], v: &[FieldElement]) -> bool {
    let mut w = v.to_vec();
    for row in rref_rows {
        let pc = match row.iter().position(|c| c.0 != 0) {
            Some(pc) => pc,
            None => continue,
        };
        let factor = w[pc];
        if factor.0 == 0 {
            continue;
        }
        for (wj, &rj) in w.iter_mut().zip(row) {
            *wj = field.sub(*wj, field.mul(factor, rj));
        }
    }
    w.iter().all(|c| c.0 == 0)
}

/// Guard rails for subset enumeration. The defaults cover the intended
/// desk-scale inputs; callers with bigger appetites can raise them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumLimits {
    pub max_points: usize,
    pub max_dim: usize,
}

impl Default for EnumLimits {
    fn default() -> Self {
        EnumLimits {
            max_points: 64,
            max_dim: 8,
        }
    }
}

/// Hard cap on hyperplane candidates tried in one search.
const SEARCH_CAP: u64 = 1 << 22;

/// A configuration of d distinct points spanning P^N.
#[derive(Debug, Clone, PartialEq)]
pub struct PointConfig {
    field: FieldSpec,
    n: usize,
    points: Vec<ProjectivePoint>,
}

/// Canonicalize, reject duplicates, require the points to span P^N.
pub fn make_config(
    field: &FieldSpec,
    n: usize,
    raw: &[Vec<FieldElement>],
) -> Result<PointConfig, GeomError> {
    let mut points = Vec::with_capacity(raw.len());
    for (i, r) in raw.iter().enumerate() {
        if r.len() != n + 1 {
            return Err(GeomError::WrongLength { index: i });
        }
        points.push(normalize_point(field, r)?);
    }
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[i] == points[j] {
                return Err(GeomError::DuplicatePoint {
                    first: i,
                    second: j,
                });
            }
        }
    }
    let config = PointConfig {
        field: field.clone(),
        n,
        points,
    };
    let all: Vec<usize> = (0..config.points.len()).collect();
    if config.points.is_empty() || config.span_dim(&all)? < n {
        return Err(GeomError::Degenerate);
    }
    Ok(config)
}

impl PointConfig {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// Ambient projective dimension N.
    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    /// Number of points d.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[ProjectivePoint] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &ProjectivePoint {
        &self.points[i]
    }

    fn subset_matrix(&self, subset: &[usize]) -> Result<ExactMatrix, GeomError> {
        let mut rows = Vec::with_capacity(subset.len());
        for &i in subset {
            let p = self.points.get(i).ok_or(GeomError::IndexOutOfRange)?;
            rows.push(p.coords().to_vec());
        }
        Ok(ExactMatrix::from_rows(&self.field, &rows).expect("rows share a length"))
    }

    /// Projective dimension of the span of a nonempty index subset:
    /// rank of the coordinate matrix minus one.
    pub fn span_dim(&self, subset: &[usize]) -> Result<usize, GeomError> {
        assert!(!subset.is_empty(), "span of an empty subset");
        Ok(self.subset_matrix(subset)?.rank() - 1)
    }

    /// All distinct i-planes spanned by independent (i+1)-subsets of the
    /// configuration, with exact incidence counts, sorted by the canonical
    /// encoding of their RREF basis.
    pub fn enumerate_flats(&self, i: usize, limits: &EnumLimits) -> Result<Vec<Flat>, GeomError> {
        assert!(
            i < self.n,
            "flat dimension must be below the ambient dimension"
        );
        if self.points.len() > limits.max_points || self.n > limits.max_dim {
            return Err(GeomError::TooLarge);
        }
        let mut seen: BTreeMap<Vec<u64>, Flat> = BTreeMap::new();
        for_each_subset(self.points.len(), i + 1, |subset| {
            let m = self
                .subset_matrix(subset)
                .expect("subset indices are in range");
            let red = m.rref();
            if red.rank() < i + 1 {
                return true; // dependent subset spans a smaller flat
            }
            let basis: Vec<Vec<FieldElement>> =
                (0..i + 1).map(|r| red.matrix.row(r).to_vec()).collect();
            let key: Vec<u64> = basis.iter().flatten().map(|c| c.0).collect();
            seen.entry(key).or_insert_with(|| {
                let incident_count = self
                    .points
                    .iter()
                    .filter(|p| reduces_to_zero(&self.field, &basis, p.coords()))
                    .count();
                Flat {
                    dim: i,
                    basis,
                    incident_count,
                }
            });
            true
        });
        Ok(seen.into_values().collect())
    }

    /// First hyperplane, in canonical enumeration order of the projectivized
    /// solution space of the through-constraints, that contains every through
    /// point and misses every avoid point.
    pub fn hyperplane_search(
        &self,
        through: &[usize],
        avoid: &[usize],
    ) -> Result<Hyperplane, GeomError> {
        for &i in through.iter().chain(avoid) {
            if i >= self.points.len() {
                return Err(GeomError::IndexOutOfRange);
            }
        }
        if avoid.iter().any(|a| through.contains(a)) {
            return Err(GeomError::BadConstraint);
        }
        let constraint = if through.is_empty() {
            ExactMatrix::zeros(&self.field, 0, self.n + 1)
        } else {
            self.subset_matrix(through)?
        };
        // an avoid point inside the span of the through points can never be
        // missed; detect it by rank
        if !through.is_empty() {
            let base_rank = constraint.rank();
            for &a in avoid {
                let mut rows: Vec<Vec<FieldElement>> = through
                    .iter()
                    .map(|&i| self.points[i].coords().to_vec())
                    .collect();
                rows.push(self.points[a].coords().to_vec());
                let m = ExactMatrix::from_rows(&self.field, &rows).expect("rows share a length");
                if m.rank() == base_rank {
                    return Err(GeomError::BadConstraint);
                }
            }
        }
        let kernel = constraint.kernel_basis();
        let m = kernel.len();
        if m == 0 {
            // the through points already span P^N; no hyperplane contains them
            return Err(GeomError::BadConstraint);
        }
        let q = self.field.order();
        let avoid_pts: Vec<&ProjectivePoint> = avoid.iter().map(|&a| &self.points[a]).collect();
        // walk lambda in F^m by ascending base-q encoding, leftmost digit most
        // significant, keeping only projective representatives (first nonzero
        // digit = 1); each solution-space hyperplane appears exactly once
        let total = (q as u128).checked_pow(m as u32);
        let mut enc: u128 = 1;
        let mut tried: u64 = 0;
        loop {
            match total {
                Some(t) if enc >= t => break,
                _ => {}
            }
            if tried >= SEARCH_CAP {
                return Err(GeomError::TooLarge);
            }
            let mut digits = vec![0u64; m];
            let mut rest = enc;
            for slot in digits.iter_mut().rev() {
                *slot = (rest % q as u128) as u64;
                rest /= q as u128;
            }
            let lead = digits.iter().find(|&&d| d != 0).copied().unwrap_or(0);
            if lead != 1 {
                enc += 1;
                continue;
            }
            tried += 1;
            let mut coeffs = vec![self.field.zero(); self.n + 1];
            for (li, &l) in digits.iter().enumerate() {
                if l == 0 {
                    continue;
                }
                let le = FieldElement(l);
                for (j, &kj) in kernel[li].iter().enumerate() {
                    coeffs[j] = self.field.add(coeffs[j], self.field.mul(le, kj));
                }
            }
            let h = Hyperplane::new(&self.field, &coeffs).expect("kernel rows are independent");
            if avoid_pts.iter().all(|p| !h.contains(&self.field, p)) {
                return Ok(h);
            }
            enc += 1;
        }
        Err(GeomError::Exhausted)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::new(p, 1).unwrap()
    }

    fn cfg(field: &FieldSpec, n: usize, pts: &[&[u64]]) -> PointConfig {
        let raw: Vec<Vec<FieldElement>> = pts
            .iter()
            .map(|p| p.iter().map(|&v| field.elem(v)).collect())
            .collect();
        make_config(field, n, &raw).unwrap()
    }

    #[test]
    fn normalization() {
        let f = gf(5);
        let p = normalize_point(&f, &[f.elem(0), f.elem(2), f.elem(4)]).unwrap();
        assert_eq!(p.coords(), &[f.elem(0), f.elem(1), f.elem(2)]);
        let id = normalize_point(&f, &[f.elem(1), f.elem(0), f.elem(0)]).unwrap();
        assert_eq!(id.coords(), &[f.elem(1), f.elem(0), f.elem(0)]);
        assert_eq!(
            normalize_point(&f, &[f.zero(), f.zero(), f.zero()]).unwrap_err(),
            GeomError::ZeroVector
        );
    }

    #[test]
    fn config_validation() {
        let f = gf(7);
        let c = cfg(&f, 2, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]);
        assert_eq!(c.len(), 4);

        let collinear: Vec<Vec<FieldElement>> = [[1, 0, 0], [0, 1, 0], [1, 1, 0]]
            .iter()
            .map(|p| p.iter().map(|&v| f.elem(v)).collect())
            .collect();
        assert_eq!(
            make_config(&f, 2, &collinear).unwrap_err(),
            GeomError::Degenerate
        );

        let dup: Vec<Vec<FieldElement>> = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [2, 0, 0]]
            .iter()
            .map(|p| p.iter().map(|&v| f.elem(v)).collect())
            .collect();
        assert_eq!(
            make_config(&f, 2, &dup).unwrap_err(),
            GeomError::DuplicatePoint {
                first: 0,
                second: 3
            }
        );
    }

    #[test]
    fn span_dims() {
        let f = gf(7);
        let c = cfg(
            &f,
            3,
            &[
                &[1, 0, 0, 0],
                &[0, 1, 0, 0],
                &[0, 0, 1, 0],
                &[0, 0, 0, 1],
                &[1, 1, 0, 0],
            ],
        );
        assert_eq!(c.span_dim(&[0]).unwrap(), 0);
        assert_eq!(c.span_dim(&[0, 1]).unwrap(), 1);
        assert_eq!(c.span_dim(&[0, 1, 4]).unwrap(), 1);
        assert_eq!(c.span_dim(&[0, 1, 2, 3]).unwrap(), 3);
        assert_eq!(c.span_dim(&[0, 9]).unwrap_err(), GeomError::IndexOutOfRange);
    }

    #[test]
    fn four_general_points_flats() {
        let f = gf(7);
        let c = cfg(&f, 2, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]);
        let lines = c.enumerate_flats(1, &EnumLimits::default()).unwrap();
        assert_eq!(lines.len(), 6);
        assert!(lines.iter().all(|l| l.incident_count == 2));
        let pts = c.enumerate_flats(0, &EnumLimits::default()).unwrap();
        assert_eq!(pts.len(), 4);
        assert!(pts.iter().all(|l| l.incident_count == 1));
    }

    #[test]
    fn fano_plane_flats() {
        // all 7 rational points of P^2 over GF(2): 7 lines of 3 points each
        let f = gf(2);
        let pts: Vec<Vec<FieldElement>> = (1u64..8)
            .map(|v| (0..3).map(|i| f.elem((v >> i) & 1)).collect())
            .collect();
        let c = make_config(&f, 2, &pts).unwrap();
        let lines = c.enumerate_flats(1, &EnumLimits::default()).unwrap();
        assert_eq!(lines.len(), 7);
        assert!(lines.iter().all(|l| l.incident_count == 3));
    }

    #[test]
    fn flat_limits() {
        let f = gf(2);
        let pts: Vec<Vec<FieldElement>> = (1u64..8)
            .map(|v| (0..3).map(|i| f.elem((v >> i) & 1)).collect())
            .collect();
        let c = make_config(&f, 2, &pts).unwrap();
        let tight = EnumLimits {
            max_points: 4,
            max_dim: 8,
        };
        assert_eq!(
            c.enumerate_flats(1, &tight).unwrap_err(),
            GeomError::TooLarge
        );
    }

    #[test]
    fn search_canonical_order() {
        // through (1:0:0), avoid (0:1:0): the first canonical candidate is
        // z = 0 which contains the avoid point, the next is y = 0
        let f = gf(5);
        let c = cfg(&f, 2, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let h = c.hyperplane_search(&[0], &[1]).unwrap();
        assert_eq!(h.coeffs, vec![f.elem(0), f.elem(1), f.elem(0)]);
        assert!(h.contains(&f, c.point(0)));
        assert!(!h.contains(&f, c.point(1)));
    }

    #[test]
    fn search_bad_constraint() {
        let f = gf(5);
        let c = cfg(&f, 2, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0], &[0, 0, 1]]);
        // (1:1:0) is on the line through e0 and e1
        assert_eq!(
            c.hyperplane_search(&[0, 1], &[2]).unwrap_err(),
            GeomError::BadConstraint
        );
        assert_eq!(
            c.hyperplane_search(&[0], &[0]).unwrap_err(),
            GeomError::BadConstraint
        );
    }

    #[test]
    fn search_exhausted() {
        // P^1 over GF(2) has 3 hyperplanes (single points in the dual);
        // avoiding all 3 rational points is impossible
        let f = gf(2);
        let c = cfg(&f, 1, &[&[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(
            c.hyperplane_search(&[], &[0, 1, 2]).unwrap_err(),
            GeomError::Exhausted
        );
    }

    #[test]
    fn search_post_conditions() {
        let f = gf(7);
        let c = cfg(
            &f,
            3,
            &[
                &[1, 0, 0, 0],
                &[0, 1, 0, 0],
                &[0, 0, 1, 0],
                &[0, 0, 0, 1],
                &[1, 1, 1, 1],
            ],
        );
        let h = c.hyperplane_search(&[0, 1], &[3, 4]).unwrap();
        assert!(h.contains(&f, c.point(0)));
        assert!(h.contains(&f, c.point(1)));
        assert!(!h.contains(&f, c.point(3)));
        assert!(!h.contains(&f, c.point(4)));
    }

    #[test]
    fn unique_hyperplane_through_n_points() {
        // N independent through points leave a 1-dimensional kernel: the
        // search returns the unique hyperplane they span
        let f = gf(5);
        let c = cfg(&f, 2, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let h = c.hyperplane_search(&[0, 1], &[]).unwrap();
        assert_eq!(h.coeffs, vec![f.elem(0), f.elem(0), f.elem(1)]);
    }
}
