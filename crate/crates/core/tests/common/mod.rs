#![allow(dead_code)]

use proptest::prelude::*;
use sechain::exact::{QSqrt3, Rational};
use sechain::geom::{Point, PointSet};

pub fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(a, b)| QSqrt3::from_ratios(a, b, 0, 1).p().clone())
}

pub fn qsqrt3() -> impl Strategy<Value = QSqrt3> {
    (-40i64..=40, 1i64..=12, -40i64..=40, 1i64..=12).prop_map(|(a, b, c, d)| QSqrt3::from_ratios(a, b, c, d))
}

pub fn positive_qsqrt3() -> impl Strategy<Value = QSqrt3> {
    (0i64..=20, 1i64..=8, 0i64..=20, 1i64..=8)
        .prop_filter("non-zero", |&(a, _, c, _)| a != 0 || c != 0)
        .prop_map(|(a, b, c, d)| QSqrt3::from_ratios(a, b, c, d))
}

pub fn point() -> impl Strategy<Value = Point> {
    (qsqrt3(), qsqrt3()).prop_map(|(x, y)| Point::new(x, y))
}

pub fn grid_point(max: i64) -> impl Strategy<Value = Point> {
    (0..=max, 0..=max).prop_map(|(x, y)| Point::from_ints(x, y))
}

/// Small sets mixing integer grid points (degenerate) and Q(√3) points.
pub fn small_set(max_len: usize) -> impl Strategy<Value = PointSet> {
    prop_oneof![prop::collection::vec(grid_point(6), 1..=max_len), prop::collection::vec(point(), 1..=max_len),]
        .prop_map(|v| v.into_iter().collect())
}

/// A south-east chain built from a start point, positive run lengths and
/// strictly increasing positive slopes.
pub fn chain(min_len: usize, max_len: usize) -> impl Strategy<Value = Vec<Point>> {
    (point(), positive_qsqrt3(), prop::collection::vec((positive_qsqrt3(), positive_qsqrt3()), min_len - 1..max_len))
        .prop_map(|(start, s0, steps)| {
            let mut p = start;
            let mut s = s0;
            let mut out = vec![p.clone()];
            for (dx, ds) in steps {
                let dy = &s * &dx;
                p = Point::new(&p.x + &dx, &p.y + &dy);
                out.push(p.clone());
                s = &s + &ds;
            }
            out
        })
}
