//! Incidence statistics v(i) and position classification: uniform, linear
//! general, linear semi-uniform, or none of these.

use std::fmt;

use crate::geometry::{EnumLimits, Flat, GeomError, PointConfig};
use crate::hilbert::{uniform_position_check, HilbertError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PositionError {
    NotSemiUniform,
    TooLarge,
}

impl fmt::Display for PositionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PositionError::NotSemiUniform => {
                write!(f, "profile is not semi-uniform")
            }
            PositionError::TooLarge => write!(f, "enumeration exceeds the configured limits"),
        }
    }
}

impl std::error::Error for PositionError {}

/// Incidence profile of a configuration.
///
/// Semi-uniform means: for each i, every i-plane spanned by i+1 independent
/// configuration points carries the same number v(i) of configuration points.
#[derive(Debug, Clone, PartialEq)]
pub struct PositionProfile {
    pub semi_uniform: bool,
    /// v(0), ..., v(N-1) when semi-uniform.
    pub v: Option<Vec<usize>>,
    /// Two spanned flats of the same dimension with different incidence
    /// counts, when not semi-uniform.
    pub witness: Option<(Flat, Flat)>,
}

/// Which separator construction a semi-uniform, non-general profile feeds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DichotomyCase {
    /// v(1) >= 3: every spanned line carries at least three points.
    MultisecantLines,
    /// v(1) = 2 and v(2) >= 4: lines are plain secants, planes are rich.
    RichPlanes,
    /// Semi-uniform and not linear general, but matching neither pattern.
    Neither,
}

impl fmt::Display for DichotomyCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DichotomyCase::MultisecantLines => write!(f, "multisecant_lines"),
            DichotomyCase::RichPlanes => write!(f, "rich_planes"),
            DichotomyCase::Neither => write!(f, "neither"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    /// None when d exceeds the uniform brute-force cap (undecided).
    pub uniform: Option<bool>,
    pub linear_general: bool,
    pub semi_uniform: bool,
    /// Present exactly when semi-uniform and not linear general.
    pub dichotomy: Option<DichotomyCase>,
    pub profile: PositionProfile,
}

/// Count incidences of every spanned i-plane for each i < N.
pub fn position_profile(
    config: &PointConfig,
    limits: &EnumLimits,
) -> Result<PositionProfile, PositionError> {
    let n = config.ambient_dim();
    let mut v = Vec::with_capacity(n);
    for i in 0..n {
        let flats = config.enumerate_flats(i, limits).map_err(|e| match e {
            GeomError::TooLarge => PositionError::TooLarge,
            other => unreachable!("enumerate_flats on a valid config: {other}"),
        })?;
        let count = flats[0].incident_count;
        if let Some(odd) = flats.iter().find(|f| f.incident_count != count) {
            return Ok(PositionProfile {
                semi_uniform: false,
                v: None,
                witness: Some((flats[0].clone(), odd.clone())),
            });
        }
        v.push(count);
    }
    Ok(PositionProfile {
        semi_uniform: true,
        v: Some(v),
        witness: None,
    })
}

/// v(i+1) >= (v(1) - 1) v(i) + 1 for 0 <= i <= N-2.
pub fn growth_check(profile: &PositionProfile) -> Result<bool, PositionError> {
    let v = profile
        .v
        .as_ref()
        .filter(|_| profile.semi_uniform)
        .ok_or(PositionError::NotSemiUniform)?;
    if v.len() < 2 {
        return Ok(true);
    }
    let v1 = v[1];
    Ok(v.windows(2).all(|w| w[1] >= (v1 - 1) * w[0] + 1))
}

/// Full classification with the brute-force uniform check (only attempted
/// when d is at or below the cap; otherwise reported undecided).
pub fn classify_position(
    config: &PointConfig,
    uniform_cap: Option<usize>,
    limits: &EnumLimits,
) -> Result<Classification, PositionError> {
    let profile = position_profile(config, limits)?;
    let semi_uniform = profile.semi_uniform;
    let linear_general = match &profile.v {
        Some(v) => v.iter().enumerate().all(|(i, &vi)| vi == i + 1),
        None => false,
    };
    let dichotomy = if semi_uniform && !linear_general {
        let v = profile.v.as_ref().expect("semi-uniform profile has v");
        if v[1] >= 3 {
            Some(DichotomyCase::MultisecantLines)
        } else if v[1] == 2 && v.len() > 2 && v[2] >= 4 {
            Some(DichotomyCase::RichPlanes)
        } else {
            Some(DichotomyCase::Neither)
        }
    } else {
        None
    };
    let uniform = match uniform_position_check(config, uniform_cap) {
        Ok((flag, _)) => Some(flag),
        Err(HilbertError::TooLarge) => None,
    };
    Ok(Classification {
        uniform,
        linear_general,
        semi_uniform,
        dichotomy,
        profile,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{FieldElement, FieldSpec};
    use crate::geometry::make_config;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::new(p, 1).unwrap()
    }

    fn cfg(field: &FieldSpec, n: usize, pts: &[Vec<u64>]) -> PointConfig {
        let raw: Vec<Vec<FieldElement>> = pts
            .iter()
            .map(|p| p.iter().map(|&v| field.elem(v)).collect())
            .collect();
        make_config(field, n, &raw).unwrap()
    }

    fn pg_points(n: usize) -> Vec<Vec<u64>> {
        (1u64..1 << (n + 1))
            .map(|v| (0..=n).map(|i| (v >> i) & 1).collect())
            .collect()
    }

    #[test]
    fn four_general_points() {
        let f = gf(7);
        let c = cfg(
            &f,
            2,
            &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 1]],
        );
        let p = position_profile(&c, &EnumLimits::default()).unwrap();
        assert!(p.semi_uniform);
        assert_eq!(p.v, Some(vec![1, 2]));
        let cls = classify_position(&c, None, &EnumLimits::default()).unwrap();
        assert_eq!(cls.uniform, Some(true));
        assert!(cls.linear_general);
        assert!(cls.semi_uniform);
        assert_eq!(cls.dichotomy, None);
    }

    #[test]
    fn pg32_profile() {
        // all 15 rational points of P^3 over GF(2)
        let f = gf(2);
        let c = cfg(&f, 3, &pg_points(3));
        let p = position_profile(&c, &EnumLimits::default()).unwrap();
        assert_eq!(p.v, Some(vec![1, 3, 7]));
        let cls = classify_position(&c, None, &EnumLimits::default()).unwrap();
        assert!(!cls.linear_general);
        assert_eq!(cls.dichotomy, Some(DichotomyCase::MultisecantLines));
        assert_eq!(cls.uniform, None); // d = 15 above the brute-force cap
        assert!(growth_check(&p).unwrap());
    }

    #[test]
    fn mixed_line_counts() {
        let f = gf(7);
        // exactly one spanned line carries 3 points
        let c = cfg(
            &f,
            2,
            &[
                vec![1, 0, 0],
                vec![0, 1, 0],
                vec![1, 1, 0],
                vec![0, 0, 1],
                vec![1, 1, 1],
            ],
        );
        let p = position_profile(&c, &EnumLimits::default()).unwrap();
        assert!(!p.semi_uniform);
        let (a, b) = p.witness.clone().unwrap();
        assert_eq!(a.dim, b.dim);
        assert_ne!(a.incident_count, b.incident_count);
        let counts = {
            let mut c2 = [a.incident_count, b.incident_count];
            c2.sort();
            c2
        };
        assert_eq!(counts, [2, 3]);
        assert_eq!(growth_check(&p).unwrap_err(), PositionError::NotSemiUniform);
    }

    #[test]
    fn seven_conic_points_linear_general() {
        let f = gf(11);
        let pts: Vec<Vec<u64>> = (0..7u64).map(|t| vec![1, t, t * t % 11]).collect();
        let c = cfg(&f, 2, &pts);
        let cls = classify_position(&c, None, &EnumLimits::default()).unwrap();
        assert!(cls.linear_general);
        assert_eq!(cls.profile.v, Some(vec![1, 2]));
    }

    #[test]
    fn growth_examples() {
        let mk = |v: &[usize]| PositionProfile {
            semi_uniform: true,
            v: Some(v.to_vec()),
            witness: None,
        };
        assert!(growth_check(&mk(&[1, 2, 3, 4])).unwrap());
        assert!(growth_check(&mk(&[1, 3, 7, 15])).unwrap());
        assert!(!growth_check(&mk(&[1, 3, 5])).unwrap());
    }

    #[test]
    fn rich_planes_case() {
        // the 8 points (1 : a : b : a+b locked pattern) of an F2-linear set:
        // use {0,1}-combinations of two GF(4) generators to force v = (1,2,4)
        let f = FieldSpec::new(2, 2).unwrap();
        // phi(u) over F2^3 -> GF(4)^3 with rows (1,0,0), (0,1,0), (2,2,1)
        let rows: [[u64; 3]; 3] = [[1, 0, 0], [0, 1, 0], [2, 2, 1]];
        let mut pts = Vec::new();
        for u in 0u64..8 {
            let mut img = [0u64; 3];
            for (bit, row) in rows.iter().enumerate() {
                if (u >> bit) & 1 == 1 {
                    for (slot, &rv) in img.iter_mut().zip(row) {
                        *slot ^= rv; // char 2: field add is xor on encodings
                    }
                }
            }
            pts.push(vec![1, img[0], img[1], img[2]]);
        }
        let c = make_config(
            &f,
            3,
            &pts.iter()
                .map(|p| p.iter().map(|&v| f.elem(v)).collect())
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let cls = classify_position(&c, None, &EnumLimits::default()).unwrap();
        assert!(cls.semi_uniform);
        assert_eq!(cls.profile.v, Some(vec![1, 2, 4]));
        assert_eq!(cls.dichotomy, Some(DichotomyCase::RichPlanes));
    }

    #[test]
    fn implications_hold() {
        let f = gf(7);
        let configs = vec![
            cfg(
                &f,
                2,
                &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 1]],
            ),
            cfg(&gf(2), 2, &pg_points(2)),
        ];
        for c in &configs {
            let cls = classify_position(c, None, &EnumLimits::default()).unwrap();
            if cls.uniform == Some(true) {
                assert!(cls.linear_general);
            }
            if cls.linear_general {
                assert!(cls.semi_uniform);
            }
        }
    }
}
