mod common;

use common::measure;
use maxconv::transforms::{
    atom_at_zero_monotone_projections, bernoulli_h, cauchy_transform, monotone_additive_h,
    reciprocal_cauchy,
};
use maxconv::{Measure, UpperHalfPlanePoint};
use num_complex::Complex;
use proptest::prelude::*;

fn point() -> impl Strategy<Value = UpperHalfPlanePoint> {
    (-4.0f64..4.0, 0.05f64..4.0).prop_map(|(re, im)| UpperHalfPlanePoint::new(re, im).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn herglotz_signs(m in measure(8), z in point()) {
        let g = cauchy_transform(&m, z);
        prop_assert!(g.im < 0.0);
        // Im H(z) >= Im z for every probability measure
        let h = reciprocal_cauchy(&m, z);
        prop_assert!(h.im >= z.im() * (1.0 - 1e-12));
    }

    #[test]
    fn cauchy_matches_direct_sum(m in measure(8), z in point()) {
        let zc = z.to_complex();
        let direct: Complex<f64> = m.iter().map(|(x, w)| Complex::new(w, 0.0) / (zc - x)).sum();
        prop_assert!((cauchy_transform(&m, z) - direct).norm() <= 1e-12 * (1.0 + direct.norm()));
    }

    #[test]
    fn bernoulli_closed_form(p in 0.0f64..=1.0, z in point()) {
        let law = Measure::new([(0.0, p), (1.0, 1.0 - p)]).unwrap();
        let h = reciprocal_cauchy(&law, z);
        let closed = bernoulli_h(p, z).unwrap();
        prop_assert!((h - closed).norm() <= 1e-10 * (1.0 + h.norm()), "{} vs {}", h, closed);
    }

    #[test]
    fn monotone_composition_associates(a in measure(4), b in measure(4), c in measure(4), z in point()) {
        // H_a(H_{b |> c}(z)) and H_{a |> b}(H_c(z)) both equal H_a(H_b(H_c(z)))
        let inner = monotone_additive_h(&b, &c, z).unwrap();
        let left = reciprocal_cauchy(&a, UpperHalfPlanePoint::try_from(inner).unwrap());
        let hc = UpperHalfPlanePoint::try_from(reciprocal_cauchy(&c, z)).unwrap();
        let right = monotone_additive_h(&a, &b, hc).unwrap();
        prop_assert!((left - right).norm() <= 1e-9 * (1.0 + left.norm()));
    }
}

#[test]
fn atom_at_zero_on_grid() {
    let mut worst = 0.0f64;
    for i in 0..=20 {
        for j in 0..=20 {
            let (p, q) = (i as f64 / 20.0, j as f64 / 20.0);
            let r = atom_at_zero_monotone_projections(p, q).unwrap();
            worst = worst.max((r - p * q).abs());
        }
    }
    assert!(worst <= 1e-6, "worst error {worst}");
}
