mod common;

use common::planar_dataset;
use dealab::data::{BoundingBox, Dataset, Dmu};
use dealab::ppslab::{
    axiom_closure, membership_corollary, membership_corollary_identity, membership_real_vrs,
    real_integer_points, Axiom, AxiomOrder,
};
use proptest::prelude::*;

fn orders() -> Vec<AxiomOrder> {
    use Axiom::*;
    vec![
        AxiomOrder::single_pass(),
        AxiomOrder::single_pass_combination(),
        AxiomOrder::fixpoint(),
        AxiomOrder::new(vec![Inclusion, Disposal, Convexity], false).unwrap(),
        AxiomOrder::new(vec![Inclusion, Disposal, Convexity, Disposal], true).unwrap(),
    ]
}

/// Envelope oracle for one input and one output: the largest real output
/// reachable with input `x`, as a fraction `(num, den)`. Only single
/// observations and two-point mixes with input exactly `x` are needed.
fn max_output_at(data: &Dataset, x: i64) -> Option<(i64, i64)> {
    let pts: Vec<(i64, i64)> = data
        .dmus()
        .iter()
        .map(|d| {
            let p = d.point().to_lattice().unwrap();
            (p[0], p[1])
        })
        .collect();
    let mut best: Option<(i64, i64)> = None;
    let mut offer = |num: i64, den: i64| {
        if best.is_none_or(|(bn, bd)| num * bd > bn * den) {
            best = Some((num, den));
        }
    };
    for &(ax, ay) in &pts {
        if ax <= x {
            offer(ay, 1);
        }
        for &(bx, by) in &pts {
            if ax < x && x < bx {
                // λ a + (1-λ) b with input exactly x.
                offer(ay * (bx - x) + by * (x - ax), bx - ax);
            }
        }
    }
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn closures_are_sound(data in planar_dataset(4, 5)) {
        let bbox = BoundingBox::covering(&data).unwrap();
        let real = real_integer_points(&data, &bbox).unwrap();
        for order in orders() {
            let closure = axiom_closure(&data, &bbox, &order).unwrap();
            for dmu in data.dmus() {
                prop_assert!(closure.contains(&dmu.point()));
            }
            for p in &closure.points {
                prop_assert!(bbox.contains(p));
                prop_assert!(real.contains(p));
                prop_assert!(closure.provenance.contains_key(p));
            }
        }
    }

    #[test]
    fn single_pass_is_inside_fixpoint(data in planar_dataset(4, 5)) {
        let bbox = BoundingBox::covering(&data).unwrap();
        let single = axiom_closure(&data, &bbox, &AxiomOrder::single_pass()).unwrap();
        let full = axiom_closure(&data, &bbox, &AxiomOrder::fixpoint()).unwrap();
        prop_assert!(single.points.is_subset(&full.points));
    }

    #[test]
    fn real_points_match_envelope_oracle(data in planar_dataset(4, 6)) {
        let bbox = BoundingBox::covering(&data).unwrap();
        let real = real_integer_points(&data, &bbox).unwrap();
        for p in bbox.grid() {
            let c = p.to_lattice().unwrap();
            let expected = max_output_at(&data, c[0]).is_some_and(|(num, den)| c[1] * den <= num);
            prop_assert_eq!(real.contains(&p), expected, "point {}", p);
        }
    }

    #[test]
    fn corollary_identity_on_the_grid(data in planar_dataset(3, 5)) {
        let bbox = BoundingBox::covering(&data).unwrap();
        for p in bbox.grid() {
            prop_assert_eq!(
                membership_corollary(&data, &p, &bbox).unwrap(),
                membership_corollary_identity(&data, &p).unwrap(),
                "point {}", p
            );
        }
    }

    #[test]
    fn adding_an_observation_never_shrinks(data in planar_dataset(3, 5), extra in (1i64..=5, 0i64..=5)) {
        let added = Dmu::integer("extra", &[extra.0], &[extra.1]);
        let Ok(bigger) = data.with(added) else { return Ok(()); };
        let bbox = BoundingBox::new(vec![5], vec![5]);
        for order in orders() {
            let before = axiom_closure(&data, &bbox, &order).unwrap();
            let after = axiom_closure(&bigger, &bbox, &order).unwrap();
            prop_assert!(before.points.is_subset(&after.points));
        }
        let real_before = real_integer_points(&data, &bbox).unwrap();
        let real_after = real_integer_points(&bigger, &bbox).unwrap();
        prop_assert!(real_before.is_subset(&real_after));
    }
}

#[test]
fn order_sensitivity_on_two_points() {
    let data = Dataset::new(vec![Dmu::integer("A", &[5], &[9]), Dmu::integer("B", &[2], &[2])]).unwrap();
    let bbox = BoundingBox::covering(&data).unwrap();
    let single = axiom_closure(&data, &bbox, &AxiomOrder::single_pass()).unwrap();
    let full = axiom_closure(&data, &bbox, &AxiomOrder::fixpoint()).unwrap();
    assert!(single.points.is_subset(&full.points));
    assert!(single.points.len() < full.points.len());
}

#[test]
fn corollary_identity_with_two_inputs() {
    let data = Dataset::new(vec![
        Dmu::integer("A", &[2, 8], &[1]),
        Dmu::integer("B", &[9, 2], &[1]),
        Dmu::integer("C", &[6, 6], &[1]),
    ])
    .unwrap();
    let bbox = BoundingBox::covering(&data).unwrap();
    for p in bbox.grid() {
        assert_eq!(
            membership_corollary(&data, &p, &bbox).unwrap(),
            membership_real_vrs(&data, &p).unwrap().is_some(),
            "point {p}"
        );
    }
}
