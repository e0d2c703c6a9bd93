#![allow(dead_code)]

use pointreg::geometry::make_config;
use pointreg::{FieldElement, FieldSpec, PointConfig};

pub fn gf(p: u64) -> FieldSpec {
    FieldSpec::new(p, 1).unwrap()
}

pub fn cfg(field: &FieldSpec, n: usize, pts: &[Vec<u64>]) -> PointConfig {
    let raw: Vec<Vec<FieldElement>> = pts
        .iter()
        .map(|p| p.iter().map(|&v| field.elem(v)).collect())
        .collect();
    make_config(field, n, &raw).unwrap()
}

/// All points of P^n over GF(2) as 0/1 coordinate vectors.
pub fn pg2_points(n: usize) -> Vec<Vec<u64>> {
    (1u64..1 << (n + 1))
        .map(|v| (0..=n).map(|i| (v >> i) & 1).collect())
        .collect()
}

/// Canonical representatives of all points of P^2 over the given field:
/// (1 : a : b), (0 : 1 : c), (0 : 0 : 1).
pub fn plane_points(field: &FieldSpec) -> Vec<Vec<u64>> {
    let q = field.order();
    let mut pts = Vec::new();
    for a in 0..q {
        for b in 0..q {
            pts.push(vec![1, a, b]);
        }
    }
    for c in 0..q {
        pts.push(vec![0, 1, c]);
    }
    pts.push(vec![0, 0, 1]);
    pts
}
