//! Property-based and randomized invariants for the geometric primitives,
//! the cyclic solver, and the scalar functionals.

use proptest::prelude::*;

use isoperi::cyclic::{build_cyclic, circumradius_of_sides, cyclic_area, CenterLocation};
use isoperi::functionals::{self, identity_residuals, p_functional, pseudo_perimeter};
use isoperi::geometry::{heron_area, regular_polygon, shoelace_area, SideList, Tolerance};
use isoperi::lab::sample_cyclic;
use isoperi::rng::CounterRng;

fn raw_sides(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.05..1.0f64, n)
}

proptest! {
    /// The accept/reject verdict of side validation does not depend on the
    /// order of the sides.
    #[test]
    fn validation_is_permutation_invariant(
        mut raw in raw_sides(6),
        swap_a in 0usize..6,
        swap_b in 0usize..6,
    ) {
        let original = SideList::new(raw.clone()).is_ok();
        raw.swap(swap_a, swap_b);
        prop_assert_eq!(original, SideList::new(raw).is_ok());
    }

    /// Triangle area from side factors agrees with the semiperimeter form.
    #[test]
    fn heron_matches_semiperimeter_form(raw in raw_sides(3)) {
        if let Ok(sides) = SideList::new(raw.clone()) {
            let by_factors = heron_area(raw[0], raw[1], raw[2]).unwrap();
            let s = sides.perimeter() / 2.0;
            let by_semi = (s * (s - raw[0]) * (s - raw[1]) * (s - raw[2])).sqrt();
            prop_assert!((by_factors - by_semi).abs() <= 1e-12 * by_semi);
        }
    }

    /// Circumradius scales linearly with the sides.
    #[test]
    fn circumradius_is_scale_covariant(raw in raw_sides(5), scale in 0.01..100.0f64) {
        if let Ok(sides) = SideList::new(raw) {
            let tol = Tolerance::default();
            let (r, _) = circumradius_of_sides(&sides, &tol).unwrap();
            let scaled = sides.scaled(scale).unwrap();
            let (r_scaled, _) = circumradius_of_sides(&scaled, &tol).unwrap();
            prop_assert!((r_scaled - scale * r).abs() <= 1e-10 * r_scaled.abs());
        }
    }

    /// Circumradius and cyclic area ignore the side order.
    #[test]
    fn cyclic_solve_is_permutation_invariant(
        raw in raw_sides(6),
        rot in 1usize..6,
    ) {
        if let Ok(sides) = SideList::new(raw.clone()) {
            let mut rotated = raw;
            rotated.rotate_left(rot);
            let permuted = SideList::new(rotated).unwrap();
            let tol = Tolerance::default();
            let a = build_cyclic(&sides, &tol).unwrap();
            let b = build_cyclic(&permuted, &tol).unwrap();
            prop_assert!((a.circumradius() - b.circumradius()).abs() <= 1e-10 * a.circumradius());
            let (area_a, area_b) = (cyclic_area(&a), cyclic_area(&b));
            prop_assert!((area_a - area_b).abs() <= 1e-10 * area_a.max(area_b));
        }
    }

    /// phi, tau, nu, zeta are invariant under s -> c s, A -> c^2 A.
    #[test]
    fn functionals_are_scale_invariant(raw in raw_sides(5), scale in 0.02..50.0f64) {
        if let Ok(sides) = SideList::new(raw) {
            let tol = Tolerance::default();
            let area = cyclic_area(&build_cyclic(&sides, &tol).unwrap());
            let scaled = sides.scaled(scale).unwrap();
            let scaled_area = area * scale * scale;
            let pairs = [
                (functionals::phi(&sides, area).unwrap(), functionals::phi(&scaled, scaled_area).unwrap()),
                (functionals::tau(&sides, area).unwrap(), functionals::tau(&scaled, scaled_area).unwrap()),
                (functionals::nu(&sides), functionals::nu(&scaled)),
                (functionals::zeta(&sides, area).unwrap(), functionals::zeta(&scaled, scaled_area).unwrap()),
            ];
            for (plain, scaled) in pairs {
                prop_assert!((plain - scaled).abs() <= 1e-11 * plain.abs().max(1.0));
            }
        }
    }

    /// Cyclic quadrilaterals attain the four-sided area bound.
    #[test]
    fn cyclic_quadrilateral_attains_brahmagupta(raw in raw_sides(4)) {
        if let Ok(sides) = SideList::new(raw.clone()) {
            let tol = Tolerance::default();
            let area = cyclic_area(&build_cyclic(&sides, &tol).unwrap());
            let bound = isoperi::geometry::brahmagupta_bound(raw[0], raw[1], raw[2], raw[3]).unwrap();
            prop_assert!((area - bound).abs() <= 1e-10 * bound);
        }
    }
}

#[test]
fn heron_cross_form_on_thousand_random_triangles() {
    for trial in 0..1000u64 {
        let sides = sample_cyclic(3, 500_000 + trial);
        let a = sides.lengths();
        let by_factors = heron_area(a[0], a[1], a[2]).unwrap();
        let s = sides.perimeter() / 2.0;
        let by_semi = (s * (s - a[0]) * (s - a[1]) * (s - a[2])).sqrt();
        assert!(
            (by_factors - by_semi).abs() <= 1e-12 * by_semi,
            "trial {trial}: {by_factors} vs {by_semi}"
        );
    }
}

#[test]
fn factors_stay_in_unit_interval() {
    // Valid side lists keep every factor 1 - 2a/L strictly inside (0, 1),
    // so the product functional is real and positive.
    for seed in 0..200 {
        let n = 3 + (seed as usize % 10);
        let sides = sample_cyclic(n, 1000 + seed);
        let perimeter = sides.perimeter();
        for &a in sides.lengths() {
            let factor = 1.0 - 2.0 * a / perimeter;
            assert!(factor > 0.0 && factor < 1.0);
        }
        assert!(p_functional(&sides) > 0.0);
        assert!(pseudo_perimeter(&sides) <= perimeter * (1.0 + 1e-12));
    }
}

#[test]
fn shoelace_matches_regular_polygon_formula() {
    for n in 3..=64usize {
        let radius = 0.7;
        let polygon = regular_polygon(n, radius).unwrap();
        let area = shoelace_area(&polygon).unwrap();
        let expected =
            n as f64 / 2.0 * radius * radius * (2.0 * std::f64::consts::PI / n as f64).sin();
        assert!(
            (area - expected).abs() <= 1e-12 * expected,
            "n={n}: {area} vs {expected}"
        );
    }
}

#[test]
fn reconstruction_of_thousand_random_polygons() {
    // Sides recovered from the synthesized vertices match the inputs.
    let tol = Tolerance::default();
    let rng = CounterRng::new(0xFEED);
    for trial in 0..1000u64 {
        let n = 3 + (rng.u64_at(trial) % 10) as usize;
        let sides = sample_cyclic(n, trial);
        let polygon = build_cyclic(&sides, &tol).unwrap();
        let rebuilt = polygon.vertices().side_lengths();
        for (got, want) in rebuilt.iter().zip(sides.lengths()) {
            assert!(
                (got - want).abs() <= 1e-9 * want,
                "trial {trial} n={n}: side {got} vs {want}"
            );
        }
    }
}

#[test]
fn identity_residuals_on_thousand_random_cyclic_polygons() {
    let tol = Tolerance::default();
    for trial in 0..1000u64 {
        let n = 3 + (trial as usize % 10);
        let sides = sample_cyclic(n, 77_000 + trial);
        let area = cyclic_area(&build_cyclic(&sides, &tol).unwrap());
        let res = identity_residuals(&sides, area).unwrap();
        assert!(res.r10 < 1e-10, "trial {trial} r10 {}", res.r10);
        assert!(res.r14 < 1e-10, "trial {trial} r14 {}", res.r14);
        if let Some(r13) = res.r13 {
            assert!(r13 < 1e-10, "trial {trial} r13 {r13}");
        }
    }
}

#[test]
fn inside_residual_is_monotone_on_a_bracket() {
    // The center-inside angle equation decreases strictly in R, which is
    // what the bracketed solve relies on.
    let sides = sample_cyclic(7, 99);
    let a_max = sides
        .lengths()
        .iter()
        .cloned()
        .fold(0.0f64, f64::max);
    let sum_at = |r: f64| -> f64 {
        sides
            .lengths()
            .iter()
            .map(|&a| (a / (2.0 * r)).min(1.0).asin())
            .sum()
    };
    let mut previous = f64::INFINITY;
    let mut r = a_max / 2.0;
    for _ in 0..60 {
        let value = sum_at(r);
        assert!(value < previous);
        previous = value;
        r *= 1.17;
    }
    // Starts above pi in the inside case, tends to zero.
    assert!(sum_at(a_max / 2.0) > std::f64::consts::PI);
    assert!(sum_at(a_max * 1e6) < 1e-5);
}

#[test]
fn center_cases_cover_all_three_variants() {
    let tol = Tolerance::default();
    let inside = SideList::new(vec![1.0, 1.0, 1.0, 1.0]).unwrap();
    let boundary = SideList::new(vec![3.0, 4.0, 5.0]).unwrap();
    let outside = SideList::new(vec![1.0, 1.0, 1.9]).unwrap();
    assert_eq!(
        circumradius_of_sides(&inside, &tol).unwrap().1,
        CenterLocation::Inside
    );
    assert_eq!(
        circumradius_of_sides(&boundary, &tol).unwrap().1,
        CenterLocation::Boundary
    );
    assert_eq!(
        circumradius_of_sides(&outside, &tol).unwrap().1,
        CenterLocation::Outside(2)
    );
}
