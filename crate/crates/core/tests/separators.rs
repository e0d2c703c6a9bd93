mod common;

use common::{cfg, gf, pg2_points, plane_points};
use pointreg::castelnuovo::{
    regularity_upper_bound, separator_lemma_v1eq2, separator_lemma_v1ge3, separator_plane,
    verify_certificate,
};
use pointreg::generators::gen_f2linear;
use pointreg::geometry::make_config;
use pointreg::hilbert::hilbert_function;
use pointreg::position::position_profile;
use pointreg::{
    CertCheck, EnumLimits, F2Mode, FieldElement, FieldSpec, Method, PointConfig, SepError,
};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn degree_budget(config: &PointConfig) -> usize {
    (config.len() - 1).div_ceil(config.ambient_dim()) - 1
}

fn assert_budgeted_separator(
    config: &PointConfig,
    cert: &pointreg::SeparatorCertificate,
    method: Method,
) {
    assert_eq!(cert.method, method);
    assert_eq!(verify_certificate(config, cert), CertCheck::Valid);
    assert!(
        cert.degree <= degree_budget(config),
        "degree {} exceeds budget {}",
        cert.degree,
        degree_budget(config)
    );
}

/// Scan generator seeds until the affine image is in semi-uniform position
/// with incidences exactly 1, 2, 4, ..., 2^(N-1).
fn find_binary_profile(e: u32, n: usize, k: u32) -> PointConfig {
    for seed in 0..200 {
        let c = match gen_f2linear(e, n, k, seed, F2Mode::Affine) {
            Ok(c) => c,
            Err(_) => continue,
        };
        let profile = position_profile(&c, &EnumLimits::default()).unwrap();
        let want: Vec<usize> = (0..n).map(|i| 1 << i).collect();
        if profile.v.as_deref() == Some(&want[..]) {
            return c;
        }
    }
    panic!("no seed below 200 gives the doubling profile for e={e}, N={n}, k={k}");
}

/// The 2^5 points (1 : u1 : ... : u5) with 0/1 coordinates, viewed over
/// GF(4). Every flat spanned by such points is cut out by GF(2) equations,
/// so its trace on the set is a binary affine flat: the incidences are
/// exactly 1, 2, 4, 8, 16 with no seed search needed.
fn binary_cube_in_p5() -> PointConfig {
    let field = FieldSpec::new(2, 2).unwrap();
    let pts: Vec<Vec<FieldElement>> = (0u64..32)
        .map(|u| {
            let mut row = vec![field.one()];
            row.extend((0..5).map(|i| field.elem((u >> i) & 1)));
            row
        })
        .collect();
    make_config(&field, 5, &pts).unwrap()
}

#[test]
fn chain_separates_binary_fourspace() {
    // All 31 points of the binary projective 4-space: v = (1, 3, 7, 15),
    // so the pencil step needs floor(15/8) + 1 = 2 hyperplanes and the
    // residual factor has degree ceil(14/3) = 5, meeting the budget
    // ceil(30/4) - 1 = 7 exactly.
    let c = cfg(&gf(2), 4, &pg2_points(4));
    for p in [0, 7, 30] {
        let cert = separator_lemma_v1ge3(&c, p).unwrap();
        assert_eq!(cert.point_index, p);
        assert_eq!(cert.hyperplanes.len(), 2);
        let form = cert.general_form.as_ref().unwrap();
        assert_eq!(form.degree, 5);
        assert_eq!(cert.degree, 7);
        assert_budgeted_separator(&c, &cert, Method::Lemma21);
    }
}

#[test]
fn chain_is_deterministic() {
    let c = cfg(&gf(2), 4, &pg2_points(4));
    let a = separator_lemma_v1ge3(&c, 3).unwrap();
    let b = separator_lemma_v1ge3(&c, 3).unwrap();
    assert_eq!(a, b);
}

#[test]
fn upper_bound_covers_binary_fourspace() {
    let c = cfg(&gf(2), 4, &pg2_points(4));
    let bound = regularity_upper_bound(&c).unwrap();
    assert_eq!(bound.certificates.len(), 31);
    assert!(bound.l_star <= 7);
    let summary = hilbert_function(&c, None);
    assert!(bound.l_star >= summary.i_of_s);
    for cert in &bound.certificates {
        assert_eq!(verify_certificate(&c, cert), CertCheck::Valid);
    }
}

#[test]
fn plane_union_separates_binary_32_in_p3() {
    // 2^5 points in P^3 over GF(256) with doubling incidences; the union
    // uses 2^(5-3) = 4 disjoint full planes first and must stay within
    // ceil(31/3) - 1 = 10 hyperplanes in total.
    let c = find_binary_profile(8, 3, 5);
    let summary = hilbert_function(&c, None);
    for p in [0, 17] {
        let cert = separator_lemma_v1eq2(&c, p).unwrap();
        assert!(cert.general_form.is_none());
        assert_eq!(cert.hyperplanes.len(), cert.degree);
        assert!(cert.degree >= summary.i_of_s);
        assert_budgeted_separator(&c, &cert, Method::Lemma22N3);
    }
}

#[test]
fn plane_union_separates_binary_32_in_p4() {
    // Same doubling structure one dimension up (GF(64) coordinates), budget
    // ceil(31/4) - 1 = 7.
    let c = find_binary_profile(6, 4, 5);
    let cert = separator_lemma_v1eq2(&c, 0).unwrap();
    assert!(cert.general_form.is_none());
    assert_budgeted_separator(&c, &cert, Method::Lemma22N4);
}

#[test]
fn chain_separates_binary_cube_in_p5() {
    // d = 32, v = 16, w = 8: two pencil hyperplanes plus a residual factor
    // of degree ceil(15/4) = 4 land exactly on the budget
    // ceil(31/5) - 1 = 6.
    let c = binary_cube_in_p5();
    let profile = position_profile(&c, &EnumLimits::default()).unwrap();
    assert_eq!(profile.v.as_deref(), Some(&[1, 2, 4, 8, 16][..]));
    for p in [0, 31] {
        let cert = separator_lemma_v1eq2(&c, p).unwrap();
        assert_eq!(cert.hyperplanes.len(), 2);
        assert_eq!(cert.general_form.as_ref().unwrap().degree, 4);
        assert_eq!(cert.degree, 6);
        assert_budgeted_separator(&c, &cert, Method::Lemma22N5);
    }
}

fn subplane_over_gf9() -> PointConfig {
    // The thirteen points of the plane over GF(3), read inside GF(9):
    // every spanned line carries exactly its four subfield points.
    let field = FieldSpec::new(3, 2).unwrap();
    let mut pts = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            pts.push(vec![1, a, b]);
        }
    }
    for c in 0..3 {
        pts.push(vec![0, 1, c]);
    }
    pts.push(vec![0, 0, 1]);
    cfg(&field, 2, &pts)
}

#[test]
fn line_pencil_separates_subplane() {
    let c = subplane_over_gf9();
    let profile = position_profile(&c, &EnumLimits::default()).unwrap();
    assert_eq!(profile.v.as_deref(), Some(&[1, 4][..]));
    for p in [0, 6, 12] {
        let cert = separator_plane(&c, p).unwrap();
        assert_budgeted_separator(&c, &cert, Method::Lemma24);
    }
    let bound = regularity_upper_bound(&c).unwrap();
    assert!(bound.l_star <= 5);
}

#[test]
fn line_pencil_separates_unital() {
    // Zero set of x^4 + y^4 + z^4 over GF(9): 28 points, every secant line
    // carries exactly 4 of them.
    let field = FieldSpec::new(3, 2).unwrap();
    let pts: Vec<Vec<u64>> = plane_points(&field)
        .into_iter()
        .filter(|p| {
            let mut acc = field.zero();
            for &x in p {
                acc = field.add(acc, field.pow(field.elem(x), 4));
            }
            acc == field.zero()
        })
        .collect();
    assert_eq!(pts.len(), 28);
    let c = cfg(&field, 2, &pts);
    let profile = position_profile(&c, &EnumLimits::default()).unwrap();
    assert_eq!(profile.v.as_deref(), Some(&[1, 4][..]));
    let cert = separator_plane(&c, 0).unwrap();
    assert_budgeted_separator(&c, &cert, Method::Lemma24);
}

#[test]
fn line_triple_separates_ternary_affine() {
    // A ternary-linear injection of F_3^3 into the plane over GF(27):
    // 27 points with every spanned line carrying exactly 3, so the
    // three-point packing applies (d = 27 >= 24).
    let field = FieldSpec::new(3, 3).unwrap();
    let c = 'found: {
        for seed in 0..100u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let gens: Vec<[FieldElement; 2]> = (0..3)
                .map(|_| {
                    [
                        field.elem(rng.gen_range(0..27)),
                        field.elem(rng.gen_range(0..27)),
                    ]
                })
                .collect();
            let pts: Vec<Vec<FieldElement>> = (0u64..27)
                .map(|u| {
                    let digits = [u % 3, (u / 3) % 3, (u / 9) % 3];
                    let mut x = field.zero();
                    let mut y = field.zero();
                    for (j, g) in gens.iter().enumerate() {
                        let s = field.elem(digits[j]);
                        x = field.add(x, field.mul(s, g[0]));
                        y = field.add(y, field.mul(s, g[1]));
                    }
                    vec![field.one(), x, y]
                })
                .collect();
            let Ok(c) = make_config(&field, 2, &pts) else {
                continue;
            };
            let profile = position_profile(&c, &EnumLimits::default()).unwrap();
            if profile.v.as_deref() == Some(&[1, 3][..]) {
                break 'found c;
            }
        }
        panic!("no ternary-linear seed below 100 gives incidences (1, 3)");
    };
    for p in [0, 13] {
        let cert = separator_plane(&c, p).unwrap();
        assert_budgeted_separator(&c, &cert, Method::Lemma25);
    }
}

#[test]
fn small_plane_sets_are_rejected() {
    // Seven 0/1 points in the plane over GF(4): v(1) = 3 but d = 7 is far
    // below every entry threshold.
    let field = FieldSpec::new(2, 2).unwrap();
    let c = cfg(&field, 2, &pg2_points(2));
    assert!(matches!(
        separator_plane(&c, 0),
        Err(SepError::PreconditionFailed(_))
    ));
    assert!(matches!(
        separator_lemma_v1ge3(&c, 0),
        Err(SepError::PreconditionFailed(_))
    ));
    assert!(matches!(
        separator_lemma_v1eq2(&c, 0),
        Err(SepError::PreconditionFailed(_))
    ));
    assert!(matches!(separator_plane(&c, 99), Err(SepError::BadIndex)));
}

#[test]
fn tampered_chain_certificate_is_rejected() {
    let c = cfg(&gf(2), 4, &pg2_points(4));
    let cert = separator_lemma_v1ge3(&c, 0).unwrap();

    let mut wrong_point = cert.clone();
    wrong_point.point_index = 1;
    // Point 1 lies on one of the hyperplanes chosen to avoid point 0.
    assert_ne!(verify_certificate(&c, &wrong_point), CertCheck::Valid);

    let mut dropped = cert.clone();
    dropped.hyperplanes.pop();
    assert_eq!(verify_certificate(&c, &dropped), CertCheck::DegreeMismatch);

    let mut zeroed = cert.clone();
    zeroed
        .general_form
        .as_mut()
        .unwrap()
        .coeffs
        .fill(c.field().zero());
    assert_eq!(verify_certificate(&c, &zeroed), CertCheck::VanishesAtP);
}
