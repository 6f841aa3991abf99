use super::*;
use crate::error::Error;
use proptest::prelude::*;
use ReducedSpaceKind::*;

fn kind(g: [f64; 3], at: MomentumLocation) -> ReducedSpaceKind {
    predict_reduced_space(&g, at).unwrap().kind
}

#[test]
fn prediction_examples() {
    assert_eq!(kind([1.0, 2.0, 3.0], MomentumLocation::InteriorRegular), SmoothSphere);
    assert_eq!(kind([1.0, 2.0, 3.0], MomentumLocation::A), Point);
    assert_eq!(kind([1.0, 1.0, 1.0], MomentumLocation::C(1)), PointedSphere(3));
    assert_eq!(kind([1.0, 2.0, 3.0], MomentumLocation::B), Point);
    assert_eq!(kind([1.0, 2.0, 3.0], MomentumLocation::Other), Unknown);
    assert_eq!(kind([1.0, 2.0, 3.0], MomentumLocation::C(4)), Unknown);
}

#[test]
fn rules_at_a() {
    assert_eq!(kind([1.0, 1.0, -1.0], MomentumLocation::A), PointedSphere(3));
    assert_eq!(kind([-1.0, 1.0, 1.0], MomentumLocation::A), PointedSphere(3));
    assert_eq!(kind([2.0, 1.0, -1.0], MomentumLocation::A), PointedSphere(2));
    assert_eq!(kind([1.0, 2.0, -3.0], MomentumLocation::A), Point);
    assert_eq!(kind([1.0, 2.0, -4.0], MomentumLocation::A), Point);
    assert_eq!(kind([1.0, 2.0, -2.5], MomentumLocation::A), PointedSphere(1));
}

#[test]
fn rules_at_c() {
    // c_1 coincides with a when the other two strengths cancel
    assert_eq!(kind([1.0, 1.0, -1.0], MomentumLocation::C(1)), PointedSphere(3));
    assert_eq!(kind([1.0, 1.0, 2.0], MomentumLocation::C(1)), PointedSphere(2));
    assert_eq!(kind([1.0, 1.0, 2.0], MomentumLocation::C(2)), PointedSphere(2));
    // gamma_3 = gamma_1 + gamma_2: c_3 sits on a wall
    assert_eq!(kind([1.0, 2.0, 3.0], MomentumLocation::C(3)), Point);
    assert_eq!(predict_reduced_space(&[1.0, 2.0, 3.0], MomentumLocation::C(3)).unwrap().basis, "c: on a wall");
}

#[test]
fn size_is_checked() {
    assert_eq!(
        predict_reduced_space(&[1.0, 2.0], MomentumLocation::B),
        Err(Error::UnsupportedSize { got: 2, supported: "{3}" })
    );
}

#[test]
fn display_names() {
    assert_eq!(alloc::format!("{}", PointedSphere(2)), "PointedSphere(2)");
    assert_eq!(alloc::format!("{}", SmoothSphere), "SmoothSphere");
}

proptest! {
    /// Definiteness of the slice form agrees with the sign of
    /// `det [[C, B], [B, A]] = (g_k g_q / g_p)(g_k - g_p - g_q)`.
    #[test]
    fn slice_form_matches_determinant_sign(g in prop::array::uniform3(-4.0f64..4.0), k in 0usize..3) {
        prop_assume!(g.iter().all(|x| x.abs() > 0.05));
        let (p, q) = ((k + 1) % 3, (k + 2) % 3);
        let det = g[k] * g[q] / g[p] * (g[k] - g[p] - g[q]);
        prop_assume!(det.abs() > 1e-6);
        let want = if det > 0.0 { Definiteness::Definite } else { Definiteness::Indefinite };
        prop_assert_eq!(slice_form_signature(&g, k), want);
    }

    #[test]
    fn generic_strengths_never_give_unknown(g in prop::array::uniform3(-4.0f64..4.0)) {
        prop_assume!(g.iter().all(|x| x.abs() > 0.05));
        for at in [MomentumLocation::A, MomentumLocation::B, MomentumLocation::C(1), MomentumLocation::C(2),
                   MomentumLocation::C(3), MomentumLocation::InteriorRegular] {
            let p = predict_reduced_space(&g, at).unwrap();
            prop_assert_ne!(p.kind, Unknown);
            if let PointedSphere(k) = p.kind {
                prop_assert!((1..=3).contains(&k));
            }
        }
    }
}
