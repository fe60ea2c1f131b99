//! Planar primitives over Q(√3).
//!
//! Points, slopes, the south-east chain predicate, the three linear maps the
//! doubling step is built from (60° rotation, flattening, translation),
//! Minkowski/midpoint sets and exact convex hulls.

use std::collections::BTreeSet;
use std::ops::{Add, Neg, Sub};

use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::exact::{QSqrt3, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeomError {
    #[error("slope undefined: points are not strictly left-to-right ({0:?} then {1:?})")]
    NotLeftToRight(Box<Point>, Box<Point>),
    #[error("a chain needs at least 2 points, got {0}")]
    TooShort(usize),
    #[error("flattening parameter must be positive, got {0}")]
    NonPositiveEpsilon(BigRational),
    #[error("sequence is not a south-east chain")]
    NotAChain,
}

/// A point in the plane with exact coordinates.
///
/// The derived ordering is lexicographic: by `x`, then by `y`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: QSqrt3,
    pub y: QSqrt3,
}

impl Point {
    pub fn new(x: QSqrt3, y: QSqrt3) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(x.into(), y.into())
    }

    pub fn from_rationals(x: Rational, y: Rational) -> Self {
        Point::new(x.into(), y.into())
    }

    pub fn origin() -> Self {
        Point::from_ints(0, 0)
    }

    pub fn scale(&self, r: &Rational) -> Point {
        Point::new(self.x.scale(r), self.y.scale(r))
    }

    pub fn half(&self) -> Point {
        Point::new(self.x.half(), self.y.half())
    }

    pub fn midpoint(&self, other: &Point) -> Point {
        (self + other).half()
    }

    /// Display-only floating coordinates.
    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

impl std::fmt::Debug for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl<'a> Add<&'a Point> for &'a Point {
    type Output = Point;
    fn add(self, rhs: &Point) -> Point {
        Point::new(&self.x + &rhs.x, &self.y + &rhs.y)
    }
}

impl<'a> Sub<&'a Point> for &'a Point {
    type Output = Point;
    fn sub(self, rhs: &Point) -> Point {
        Point::new(&self.x - &rhs.x, &self.y - &rhs.y)
    }
}

impl Neg for &Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-&self.x, -&self.y)
    }
}

/// `sl(a, b) = (b.y - a.y) / (b.x - a.x)`, defined only when `a.x < b.x`.
pub fn slope(a: &Point, b: &Point) -> Result<QSqrt3, GeomError> {
    let dx = &b.x - &a.x;
    if !dx.is_positive() {
        return Err(GeomError::NotLeftToRight(Box::new(a.clone()), Box::new(b.clone())));
    }
    Ok((&b.y - &a.y).checked_div(&dx).expect("dx is positive"))
}

/// Sign of the cross product `(a - o) × (b - o)`: `+1` for a left turn
/// `o → a → b`, `-1` for a right turn, `0` when collinear.
pub fn orientation(o: &Point, a: &Point, b: &Point) -> i8 {
    let lhs = (&a.x - &o.x) * (&b.y - &o.y);
    let rhs = (&a.y - &o.y) * (&b.x - &o.x);
    (lhs - rhs).signum()
}

/// Whether `points` is a south-east chain: both coordinates strictly
/// increase and consecutive slopes strictly increase.
pub fn is_south_east_chain(points: &[Point]) -> Result<bool, GeomError> {
    if points.len() < 2 {
        return Err(GeomError::TooShort(points.len()));
    }
    let steps: Vec<(QSqrt3, QSqrt3)> = points.windows(2).map(|w| (&w[1].x - &w[0].x, &w[1].y - &w[0].y)).collect();
    if steps.iter().any(|(dx, dy)| !dx.is_positive() || !dy.is_positive()) {
        return Ok(false);
    }
    // dy1/dx1 < dy2/dx2 with positive run lengths.
    Ok(steps.windows(2).all(|w| (&w[0].1 * &w[1].0) < (&w[1].1 * &w[0].0)))
}

/// A validated south-east chain.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chain(Vec<Point>);

impl Chain {
    pub fn new(points: Vec<Point>) -> Result<Self, GeomError> {
        if is_south_east_chain(&points)? {
            Ok(Chain(points))
        } else {
            Err(GeomError::NotAChain)
        }
    }

    pub fn points(&self) -> &[Point] {
        &self.0
    }

    pub fn into_points(self) -> Vec<Point> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&Point> {
        self.0.get(i)
    }

    pub fn slopes(&self) -> Vec<QSqrt3> {
        self.0.windows(2).map(|w| slope(&w[0], &w[1]).expect("chain is left-to-right")).collect()
    }

    /// Shifting by a vector keeps every slope, so the result is still a chain.
    pub fn translate(&self, offset: &Point) -> Chain {
        Chain(translate_points(&self.0, offset))
    }
}

impl AsRef<[Point]> for Chain {
    fn as_ref(&self) -> &[Point] {
        &self.0
    }
}

pub fn translate_points(points: &[Point], offset: &Point) -> Vec<Point> {
    points.iter().map(|p| p + offset).collect()
}

/// Counterclockwise rotation by 60° about the origin:
/// `(x, y) ↦ ((x - √3·y)/2, (√3·x + y)/2)`.
pub fn rotate60(p: &Point) -> Point {
    let s = QSqrt3::sqrt3();
    Point::new((&p.x - &(&s * &p.y)).half(), (&(&s * &p.x) + &p.y).half())
}

/// Flattening map `(x, y) ↦ (εx, ε²y)`.
pub fn flatten(p: &Point, eps: &Rational) -> Result<Point, GeomError> {
    if !eps.is_positive() {
        return Err(GeomError::NonPositiveEpsilon(eps.clone()));
    }
    Ok(flatten_unchecked(p, eps, &(eps * eps)))
}

fn flatten_unchecked(p: &Point, eps: &Rational, eps2: &Rational) -> Point {
    Point::new(p.x.scale(eps), p.y.scale(eps2))
}

/// The flattened sequence, its rotation, and the pointwise midpoints of the
/// two. None of them is validated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformedChains {
    pub flat: Vec<Point>,
    pub rotated: Vec<Point>,
    pub mid: Vec<Point>,
}

pub fn transform_chains(points: &[Point], eps: &Rational) -> Result<TransformedChains, GeomError> {
    if !eps.is_positive() {
        return Err(GeomError::NonPositiveEpsilon(eps.clone()));
    }
    let eps2 = eps * eps;
    let flat: Vec<Point> = points.iter().map(|p| flatten_unchecked(p, eps, &eps2)).collect();
    let rotated: Vec<Point> = flat.iter().map(rotate60).collect();
    let mid = flat.iter().zip(&rotated).map(|(a, b)| a.midpoint(b)).collect();
    Ok(TransformedChains { flat, rotated, mid })
}

/// A finite set of distinct points, iterated in lexicographic order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PointSet(BTreeSet<Point>);

impl PointSet {
    pub fn new() -> Self {
        PointSet::default()
    }

    pub fn insert(&mut self, p: Point) -> bool {
        self.0.insert(p)
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.0.contains(p)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &Point> + '_ {
        self.0.iter()
    }

    pub fn to_vec(&self) -> Vec<Point> {
        self.0.iter().cloned().collect()
    }
}

impl FromIterator<Point> for PointSet {
    fn from_iter<I: IntoIterator<Item = Point>>(iter: I) -> Self {
        PointSet(iter.into_iter().collect())
    }
}

impl<'a> FromIterator<&'a Point> for PointSet {
    fn from_iter<I: IntoIterator<Item = &'a Point>>(iter: I) -> Self {
        PointSet(iter.into_iter().cloned().collect())
    }
}

impl IntoIterator for PointSet {
    type Item = Point;
    type IntoIter = std::collections::btree_set::IntoIter<Point>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

/// `{p + q : p ∈ P, q ∈ Q}`.
pub fn minkowski_sum(p: &PointSet, q: &PointSet) -> PointSet {
    p.iter().flat_map(|a| q.iter().map(move |b| a + b)).collect()
}

/// `{(p + q)/2 : p ∈ P, q ∈ Q}`.
pub fn midpoint_set(p: &PointSet, q: &PointSet) -> PointSet {
    p.iter().flat_map(|a| q.iter().map(move |b| a.midpoint(b))).collect()
}

/// Strict vertices of the convex hull in counterclockwise order, starting
/// from the lexicographically smallest point. Points in the relative
/// interior of a hull edge are not vertices.
pub fn convex_hull(set: &PointSet) -> Vec<Point> {
    let pts = set.to_vec();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<Point> = Vec::with_capacity(pts.len());
    for p in &pts {
        while lower.len() >= 2 && orientation(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Point> = Vec::with_capacity(pts.len());
    for p in pts.iter().rev() {
        while upper.len() >= 2 && orientation(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Every point is a strict vertex of the hull. Sets of one or two points
/// qualify trivially.
pub fn is_convexly_independent(set: &PointSet) -> bool {
    set.len() <= 2 || convex_hull(set).len() == set.len()
}

/// Where a point sits relative to a convex polygon.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HullLocation {
    Vertex,
    OnEdge,
    Inside,
    Outside,
}

/// Locates `p` against a counterclockwise strict-vertex hull as returned by
/// [`convex_hull`].
pub fn locate(hull: &[Point], p: &Point) -> HullLocation {
    if hull.contains(p) {
        return HullLocation::Vertex;
    }
    match hull.len() {
        0 => return HullLocation::Outside,
        1 => return HullLocation::Outside,
        _ => {}
    }
    let mut on_boundary = false;
    let n = hull.len();
    for i in 0..n {
        let a = &hull[i];
        let b = &hull[(i + 1) % n];
        match orientation(a, b, p) {
            -1 => return HullLocation::Outside,
            0 => {
                if between(a, b, p) {
                    on_boundary = true;
                } else if n > 2 {
                    return HullLocation::Outside;
                }
            }
            _ => {}
        }
    }
    if on_boundary {
        HullLocation::OnEdge
    } else if n == 2 {
        HullLocation::Outside
    } else {
        HullLocation::Inside
    }
}

// p collinear with a, b: is it inside the closed segment?
fn between(a: &Point, b: &Point, p: &Point) -> bool {
    let d1 = p - a;
    let d2 = p - b;
    let dot = &d1.x * &d2.x + &d1.y * &d2.y;
    !dot.is_positive()
}
