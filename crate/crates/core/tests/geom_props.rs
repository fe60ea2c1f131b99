mod common;

use common::{chain, point, positive_qsqrt3, small_set};
use proptest::prelude::*;
use sechain::exact::QSqrt3;
use sechain::geom::{
    convex_hull, flatten, is_convexly_independent, is_south_east_chain, locate, midpoint_set, minkowski_sum,
    orientation, rotate60, slope, HullLocation, Point, PointSet,
};

fn dist2(a: &Point, b: &Point) -> QSqrt3 {
    let (dx, dy) = (&b.x - &a.x, &b.y - &a.y);
    &(&dx * &dx) + &(&dy * &dy)
}

proptest! {
    #[test]
    fn six_rotations_are_the_identity(p in point()) {
        let mut r = p.clone();
        for _ in 0..6 {
            r = rotate60(&r);
        }
        prop_assert_eq!(r, p.clone());
        let r3 = rotate60(&rotate60(&rotate60(&p)));
        prop_assert_eq!(r3, -&p);
    }

    #[test]
    fn rotation_is_an_isometry(a in point(), b in point()) {
        prop_assert_eq!(dist2(&rotate60(&a), &rotate60(&b)), dist2(&a, &b));
        prop_assert_eq!(dist2(&rotate60(&a), &a), dist2(&a, &Point::origin()));
    }

    #[test]
    fn orientation_is_antisymmetric(a in point(), b in point(), c in point()) {
        prop_assert_eq!(orientation(&a, &b, &c), -orientation(&a, &c, &b));
        prop_assert_eq!(orientation(&a, &b, &c), orientation(&b, &c, &a));
    }

    #[test]
    fn flatten_scales_slopes(pts in chain(2, 12), m in 1u32..20) {
        let eps = sechain::exact::dyadic(m);
        let flat: Vec<Point> = pts.iter().map(|p| flatten(p, &eps).unwrap()).collect();
        for k in 0..pts.len() - 1 {
            prop_assert_eq!(slope(&flat[k], &flat[k + 1]).unwrap(), slope(&pts[k], &pts[k + 1]).unwrap().scale(&eps));
        }
        prop_assert_eq!(is_south_east_chain(&flat), Ok(true));
    }

    #[test]
    fn chains_are_convexly_independent(pts in chain(2, 30)) {
        prop_assert_eq!(is_south_east_chain(&pts), Ok(true));
        let set: PointSet = pts.iter().collect();
        prop_assert!(is_convexly_independent(&set));
        let hull = convex_hull(&set);
        prop_assert!(pts.iter().all(|p| locate(&hull, p) == HullLocation::Vertex));
    }

    #[test]
    fn reversed_chain_is_not_a_chain(pts in chain(2, 10)) {
        let rev: Vec<Point> = pts.iter().rev().cloned().collect();
        prop_assert_eq!(is_south_east_chain(&rev), Ok(false));
    }

    #[test]
    fn hull_ignores_input_order(pts in prop::collection::vec(point(), 1..15), seed in any::<u64>()) {
        let set: PointSet = pts.iter().collect();
        let mut shuffled = pts.clone();
        let n = shuffled.len();
        for i in (1..n).rev() {
            shuffled.swap(i, (seed as usize ^ i.wrapping_mul(0x9e37)) % (i + 1));
        }
        let other: PointSet = shuffled.into_iter().collect();
        prop_assert_eq!(convex_hull(&set), convex_hull(&other));
    }

    #[test]
    fn hull_location_is_a_trichotomy(set in small_set(12), probe in prop_oneof![point(), common::grid_point(6)]) {
        let hull = convex_hull(&set);
        let loc = locate(&hull, &probe);
        if set.contains(&probe) {
            prop_assert_ne!(loc, HullLocation::Outside);
        }
        if hull.len() >= 3 && loc != HullLocation::Vertex {
            let signs: Vec<i8> = (0..hull.len()).map(|i| orientation(&hull[i], &hull[(i + 1) % hull.len()], &probe)).collect();
            let expected = if signs.iter().any(|&s| s < 0) {
                HullLocation::Outside
            } else if signs.contains(&0) {
                HullLocation::OnEdge
            } else {
                HullLocation::Inside
            };
            prop_assert_eq!(loc, expected);
        }
    }

    #[test]
    fn hull_vertices_turn_left(set in small_set(15)) {
        let hull = convex_hull(&set);
        if hull.len() >= 3 {
            let n = hull.len();
            prop_assert!((0..n).all(|i| orientation(&hull[i], &hull[(i + 1) % n], &hull[(i + 2) % n]) > 0));
            prop_assert!(set.iter().all(|p| locate(&hull, p) != HullLocation::Outside));
        }
    }

    #[test]
    fn midpoint_set_is_half_the_sum(a in small_set(6), b in small_set(6)) {
        let sum = minkowski_sum(&a, &b);
        let mid = midpoint_set(&a, &b);
        prop_assert_eq!(sum.len(), mid.len());
        prop_assert!(mid.len() <= a.len() * b.len());
        let halves: PointSet = sum.iter().map(Point::half).collect();
        prop_assert_eq!(halves, mid);
    }

    #[test]
    fn positive_translation_preserves_chains(pts in chain(2, 10), dx in positive_qsqrt3(), dy in positive_qsqrt3()) {
        let off = Point::new(dx, dy);
        let moved: Vec<Point> = pts.iter().map(|p| p + &off).collect();
        prop_assert_eq!(is_south_east_chain(&moved), Ok(true));
    }
}
