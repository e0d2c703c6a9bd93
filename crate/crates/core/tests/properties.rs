mod common;

use common::gf;
use pointreg::generators::{gen_random, gen_rnc, rnc_membership};
use pointreg::geometry::normalize_point;
use pointreg::hilbert::hilbert_function;
use pointreg::{ArithError, ExactMatrix, FieldElement, FieldSpec, RncParam};
use proptest::prelude::*;

fn test_fields() -> Vec<FieldSpec> {
    [
        (2, 1),
        (3, 1),
        (7, 1),
        (13, 1),
        (2, 2),
        (2, 3),
        (3, 2),
        (5, 2),
        (3, 3),
    ]
    .iter()
    .map(|&(p, e)| FieldSpec::new(p, e).unwrap())
    .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_ring_axioms(which in 0usize..9, a in 0u64..2187, b in 0u64..2187, c in 0u64..2187) {
        let f = &test_fields()[which];
        let q = f.order();
        let (a, b, c) = (f.elem(a % q), f.elem(b % q), f.elem(c % q));
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), f.zero());
        prop_assert_eq!(f.sub(a, b), f.add(a, f.neg(b)));
        prop_assert_eq!(f.mul(a, f.one()), a);
    }

    #[test]
    fn field_inverse_and_power(which in 0usize..9, a in 0u64..2187) {
        let f = &test_fields()[which];
        let q = f.order();
        let a = f.elem(a % q);
        // x^q = x for every element of GF(q).
        prop_assert_eq!(f.pow(a, q), a);
        if a != f.zero() {
            let inv = f.inv(a).unwrap();
            prop_assert_eq!(f.mul(a, inv), f.one());
            prop_assert_eq!(f.pow(a, q - 1), f.one());
        } else {
            prop_assert_eq!(f.inv(a), Err(ArithError::DivisionByZero));
        }
    }

    #[test]
    fn frobenius_is_additive(which in 0usize..9, a in 0u64..2187, b in 0u64..2187) {
        let f = &test_fields()[which];
        let q = f.order();
        let (a, b) = (f.elem(a % q), f.elem(b % q));
        prop_assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
        prop_assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
        prop_assert_eq!(f.frobenius(a), f.pow(a, f.p()));
    }

    #[test]
    fn rref_and_kernel_shape(rows in 1usize..5, cols in 1usize..5, entries in prop::collection::vec(0u64..7, 16)) {
        let f = gf(7);
        let data: Vec<Vec<FieldElement>> = (0..rows)
            .map(|r| (0..cols).map(|c| f.elem(entries[r * 4 + c])).collect())
            .collect();
        let m = ExactMatrix::from_rows(&f, &data).unwrap();
        let red = m.rref();
        // Pivot columns strictly increase and hold the only nonzero entry.
        prop_assert!(red.pivots.windows(2).all(|w| w[0] < w[1]));
        for (r, &pc) in red.pivots.iter().enumerate() {
            for rr in 0..rows {
                let want = if rr == r { f.one() } else { f.zero() };
                prop_assert_eq!(red.matrix[[rr, pc]], want);
            }
        }
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.len(), cols);
        for v in &kernel {
            let image = (0..rows).map(|r| {
                (0..cols).fold(f.zero(), |acc, c| f.add(acc, f.mul(m[[r, c]], v[c])))
            });
            prop_assert!(image.into_iter().all(|x| x == f.zero()));
        }
    }

    #[test]
    fn solve_finds_a_preimage(rows in 1usize..5, cols in 1usize..5, entries in prop::collection::vec(0u64..7, 16), xs in prop::collection::vec(0u64..7, 4)) {
        let f = gf(7);
        let data: Vec<Vec<FieldElement>> = (0..rows)
            .map(|r| (0..cols).map(|c| f.elem(entries[r * 4 + c])).collect())
            .collect();
        let m = ExactMatrix::from_rows(&f, &data).unwrap();
        let x: Vec<FieldElement> = (0..cols).map(|c| f.elem(xs[c])).collect();
        let b: Vec<FieldElement> = (0..rows)
            .map(|r| (0..cols).fold(f.zero(), |acc, c| f.add(acc, f.mul(m[[r, c]], x[c]))))
            .collect();
        let got = m.solve(&b).unwrap().expect("constructed system is consistent");
        for r in 0..rows {
            let lhs = (0..cols).fold(f.zero(), |acc, c| f.add(acc, f.mul(m[[r, c]], got[c])));
            prop_assert_eq!(lhs, b[r]);
        }
    }

    #[test]
    fn inverse_roundtrip(entries in prop::collection::vec(0u64..13, 9)) {
        let f = gf(13);
        let data: Vec<Vec<FieldElement>> = (0..3)
            .map(|r| (0..3).map(|c| f.elem(entries[r * 3 + c])).collect())
            .collect();
        let m = ExactMatrix::from_rows(&f, &data).unwrap();
        match m.inverse().unwrap() {
            Some(inv) => {
                let prod = m.mul(&inv).unwrap();
                let id = ExactMatrix::identity(&f, 3);
                for r in 0..3 {
                    for c in 0..3 {
                        prop_assert_eq!(prod[[r, c]], id[[r, c]]);
                    }
                }
            }
            None => prop_assert!(m.rank() < 3),
        }
    }

    #[test]
    fn normalization_kills_scaling(coords in prop::collection::vec(0u64..13, 4), scale in 1u64..13) {
        let f = gf(13);
        prop_assume!(coords.iter().any(|&c| c != 0));
        let raw: Vec<FieldElement> = coords.iter().map(|&c| f.elem(c)).collect();
        let scaled: Vec<FieldElement> = raw.iter().map(|&c| f.mul(c, f.elem(scale))).collect();
        let a = normalize_point(&f, &raw).unwrap();
        let b = normalize_point(&f, &scaled).unwrap();
        prop_assert_eq!(a.coords(), b.coords());
    }

    #[test]
    fn hilbert_summary_is_consistent(n in 2usize..4, extra in 0usize..8, seed in 0u64..500) {
        let f = gf(101);
        let d = n + 1 + extra;
        let c = gen_random(&f, n, d, seed).unwrap();
        let s = hilbert_function(&c, None);
        prop_assert_eq!(s.h_vector.iter().sum::<usize>(), d);
        prop_assert!(s.values.windows(2).all(|w| w[0] <= w[1]));
        prop_assert_eq!(s.values[s.i_of_s], d);
        prop_assert!(s.i_of_s == 0 || s.values[s.i_of_s - 1] < d);
        prop_assert!(s.i_of_s <= d - 1);
        prop_assert_eq!(s.reg, s.i_of_s + 1);
    }

    #[test]
    fn random_generator_is_reproducible(seed in 0u64..1000) {
        let f = gf(101);
        let a = gen_random(&f, 3, 9, seed).unwrap();
        let b = gen_random(&f, 3, 9, seed).unwrap();
        for (x, y) in a.points().iter().zip(b.points()) {
            prop_assert_eq!(x.coords(), y.coords());
        }
    }

    #[test]
    fn monomial_basis_counts_and_grades(n in 1usize..5, t in 0usize..7) {
        let basis = pointreg::hilbert::monomial_basis(n, t);
        let mut expected = 1usize;
        for i in 1..=n {
            expected = expected * (t + i) / i;
        }
        prop_assert_eq!(basis.len(), expected);
        prop_assert!(basis.iter().all(|m| m.iter().sum::<u32>() as usize == t));
        let mut seen = basis.clone();
        seen.dedup();
        prop_assert_eq!(seen.len(), basis.len());
    }
}

/// Cross-ratio of four distinct parameters on the projective line, with the
/// usual conventions at infinity.
fn cross_ratio(f: &FieldSpec, q: [RncParam; 4]) -> FieldElement {
    use RncParam::{Finite, Infinity};
    let sub = |a: FieldElement, b: FieldElement| f.sub(a, b);
    let [a, b, c, d] = q;
    let (num, den) = match (a, b, c, d) {
        (Infinity, Finite(b), Finite(c), Finite(d)) => (sub(b, d), sub(b, c)),
        (Finite(a), Infinity, Finite(c), Finite(d)) => (sub(a, c), sub(a, d)),
        (Finite(a), Finite(b), Infinity, Finite(d)) => (sub(b, d), sub(a, d)),
        (Finite(a), Finite(b), Finite(c), Infinity) => (sub(a, c), sub(b, c)),
        (Finite(a), Finite(b), Finite(c), Finite(d)) => {
            (f.mul(sub(a, c), sub(b, d)), f.mul(sub(a, d), sub(b, c)))
        }
        _ => unreachable!("at most one infinite parameter"),
    };
    f.div(num, den).expect("distinct parameters")
}

/// The recovered parametrization differs from the input by a Moebius
/// transformation, so cross-ratios of corresponding quadruples agree.
#[test]
fn membership_witness_preserves_cross_ratios() {
    let f = gf(13);
    let params: Vec<RncParam> = (0..6)
        .map(|t| RncParam::Finite(f.elem(t)))
        .chain([RncParam::Infinity])
        .collect();
    let c = gen_rnc(&f, 2, &params).unwrap();
    let (member, witness) = rnc_membership(&c).unwrap();
    assert!(member);
    let w = witness.unwrap();
    assert_eq!(w.len(), params.len());
    for quad in [[0, 1, 2, 3], [1, 3, 4, 6], [0, 2, 5, 6]] {
        let original = cross_ratio(&f, quad.map(|i| params[i]));
        let recovered = cross_ratio(&f, quad.map(|i| w[i]));
        assert_eq!(original, recovered, "cross-ratio drifted on {quad:?}");
    }
}
