//! Inductive doubling construction of the chain pairs `(P_k, Q_k)`.
//!
//! Starting from two 2-point chains whose midpoint set contains a 3-point
//! chain, each step flattens everything by `ε`, rotates copies by 60°,
//! translates the six pieces to fixed anchors and glues them. The result is
//! checked with exact predicates before it is accepted, so a [`Level`]
//! returned from this module is a certificate and not a promise.

use std::collections::HashSet;

use num_traits::{One, Signed};

use crate::exact::{dyadic, QSqrt3, Rational};
use crate::geom::{
    is_convexly_independent, is_south_east_chain, transform_chains, translate_points, Chain, GeomError, Point, PointSet,
};
use crate::report::Check;

/// Default cap on the exponent `m` of `ε = 2^-m` tried by the search.
pub const DEFAULT_MAX_EPS_EXPONENT: u32 = 256;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructError {
    #[error("level index must be at least 1")]
    InvalidLevel,
    #[error("epsilon must be positive")]
    NonPositiveEpsilon,
    #[error("no epsilon 2^-m with m <= {cap} passed verification")]
    EpsilonCapExceeded { cap: u32 },
    #[error("level invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// Translation anchors used when gluing the six transformed chains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepConstants {
    pub u: Point,
    pub v: Point,
    pub w: Point,
    pub t: Point,
    pub s: Point,
    pub z: Point,
}

impl StepConstants {
    pub fn new() -> Self {
        let r = |n: i64, d: i64| Rational::new(n.into(), d.into());
        StepConstants {
            u: Point::from_rationals(r(1, 1), r(5, 2)),
            v: Point::from_ints(0, 2),
            w: Point::from_ints(1, 1),
            t: Point::from_ints(0, 1),
            s: Point::from_rationals(r(1, 2), r(5, 4)),
            z: Point::from_rationals(r(1, 1), r(7, 4)),
        }
    }
}

impl Default for StepConstants {
    fn default() -> Self {
        StepConstants::new()
    }
}

/// One stage of the construction.
///
/// `witness` holds 0-based index pairs `(i, j)`; the witness chain is the
/// sequence of midpoints `(a[i] + b[j]) / 2` in that order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Level {
    pub k: u32,
    pub a: Chain,
    pub b: Chain,
    pub witness: Vec<(usize, usize)>,
    pub eps_history: Vec<Rational>,
}

/// Expected witness length `(k + 2)·2^(k-1)`.
pub fn witness_len(k: u32) -> usize {
    (k as usize + 2) << (k - 1)
}

impl Level {
    pub fn witness_points(&self) -> Vec<Point> {
        self.witness.iter().map(|&(i, j)| self.a.points()[i].midpoint(&self.b.points()[j])).collect()
    }

    /// Re-checks every invariant of the level with exact predicates.
    pub fn validate(&self) -> Result<(), ConstructError> {
        let report = check_level(self.k, self.a.points(), self.b.points(), &self.witness, None, &self.eps_history);
        match report.into_iter().find(|c| !c.passed) {
            None => Ok(()),
            Some(c) => Err(ConstructError::Invariant(format!("{}: {}", c.name, c.detail))),
        }
    }
}

pub(crate) fn chain_check(name: &'static str, points: &[Point]) -> Check {
    match is_south_east_chain(points) {
        Ok(true) => Check::new(name, true, format!("{} points", points.len())),
        Ok(false) => Check::new(name, false, "not a south-east chain"),
        Err(e) => Check::new(name, false, e.to_string()),
    }
}

pub(crate) fn convex_check(name: &'static str, points: &[Point]) -> Check {
    let set: PointSet = points.iter().collect();
    if set.len() != points.len() {
        return Check::new(name, false, "repeated points");
    }
    let ok = is_convexly_independent(&set);
    Check::new(name, ok, if ok { "all points are hull vertices" } else { "some point is not a hull vertex" })
}

fn is_dyadic_unit(eps: &Rational) -> bool {
    eps.is_positive() && eps.numer().is_one() && {
        let d = eps.denom();
        d > &num_bigint::BigInt::one() && (d & (d - 1u32)) == num_bigint::BigInt::from(0)
    }
}

/// Runs every level invariant on raw data, reporting each check separately.
///
/// `witness_points`, when given, is compared against the midpoints
/// re-derived from the index pairs.
pub fn check_level(
    k: u32,
    a: &[Point],
    b: &[Point],
    witness: &[(usize, usize)],
    witness_points: Option<&[Point]>,
    eps_history: &[Rational],
) -> Vec<Check> {
    let mut out = Vec::new();
    if k == 0 || k > 30 {
        out.push(Check::new("level-index", false, format!("k = {k} out of range")));
        return out;
    }
    let n = 1usize << k;
    out.push(Check::new("P-size", a.len() == n, format!("{} points, expected {n}", a.len())));
    out.push(Check::new("Q-size", b.len() == n, format!("{} points, expected {n}", b.len())));
    let m = witness_len(k);
    out.push(Check::new("witness-length", witness.len() == m, format!("{} pairs, expected {m}", witness.len())));
    out.push(Check::new(
        "eps-history",
        eps_history.len() == k as usize - 1 && eps_history.iter().all(is_dyadic_unit),
        format!("{} values, expected {} powers 2^-m", eps_history.len(), k - 1),
    ));

    out.push(chain_check("P-chain", a));
    out.push(chain_check("Q-chain", b));
    out.push(convex_check("P-convex", a));
    out.push(convex_check("Q-convex", b));

    let in_range = witness.iter().all(|&(i, j)| i < a.len() && j < b.len());
    out.push(Check::new("witness-indices", in_range, "pairs index into P and Q"));
    let distinct = witness.iter().collect::<HashSet<_>>().len() == witness.len();
    out.push(Check::new("witness-distinct-pairs", distinct, "no pair repeats"));
    if !in_range {
        return out;
    }
    let mids: Vec<Point> = witness.iter().map(|&(i, j)| a[i].midpoint(&b[j])).collect();
    if let Some(given) = witness_points {
        let ok = given == mids.as_slice();
        out.push(Check::new(
            "witness-containment",
            ok,
            if ok {
                "every witness point is the midpoint of its pair"
            } else {
                "witness point differs from its pair midpoint"
            },
        ));
    }
    out.push(chain_check("witness-chain", &mids));
    out.push(convex_check("witness-convex", &mids));
    out
}

/// The level for `k = 1`.
pub fn base_case() -> Level {
    let a = Chain::new(vec![Point::from_ints(0, 0), Point::from_ints(2, 1)]).expect("valid chain");
    let b = Chain::new(vec![Point::from_ints(0, 2), Point::from_ints(2, 4)]).expect("valid chain");
    Level { k: 1, a, b, witness: vec![(0, 0), (1, 0), (1, 1)], eps_history: Vec::new() }
}

/// Which glued sequences failed the chain predicate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rejection {
    pub a_failed: bool,
    pub b_failed: bool,
    pub witness_failed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepOutcome {
    Accepted(Level),
    /// `ε` was not small enough.
    Rejected(Rejection),
}

impl StepOutcome {
    pub fn accepted(self) -> Option<Level> {
        match self {
            StepOutcome::Accepted(l) => Some(l),
            StepOutcome::Rejected(_) => None,
        }
    }

    pub fn is_accepted(&self) -> bool {
        matches!(self, StepOutcome::Accepted(_))
    }
}

/// The unvalidated sequences produced by one doubling step.
#[derive(Debug, Clone)]
pub struct StepCandidate {
    pub a: Vec<Point>,
    pub b: Vec<Point>,
    pub witness: Vec<(usize, usize)>,
    pub witness_points: Vec<Point>,
}

/// Builds `Ā = (A_ε, w + B'_ε)`, `B̄ = (v + B_ε, u + A'_ε)` and the witness
/// `(t + C_ε, s + A''_ε, z + C'_ε)` without checking anything.
pub fn step_candidate(level: &Level, eps: &Rational) -> Result<StepCandidate, ConstructError> {
    if !eps.is_positive() {
        return Err(ConstructError::NonPositiveEpsilon);
    }
    let c = StepConstants::new();
    let n = level.a.len();
    let ta = transform_chains(level.a.points(), eps)?;
    let tb = transform_chains(level.b.points(), eps)?;
    let tc = transform_chains(&level.witness_points(), eps)?;

    let mut a = ta.flat;
    a.extend(translate_points(&tb.rotated, &c.w));
    let mut b = translate_points(&tb.flat, &c.v);
    b.extend(translate_points(&ta.rotated, &c.u));

    let mut witness_points = translate_points(&tc.flat, &c.t);
    witness_points.extend(translate_points(&ta.mid, &c.s));
    witness_points.extend(translate_points(&tc.rotated, &c.z));

    let mut witness = Vec::with_capacity(2 * level.witness.len() + n);
    witness.extend(level.witness.iter().copied());
    witness.extend((0..n).map(|i| (i, n + i)));
    witness.extend(level.witness.iter().map(|&(i, j)| (n + j, n + i)));

    Ok(StepCandidate { a, b, witness, witness_points })
}

/// One doubling step at a fixed `ε`, accepted only if all three glued
/// sequences are south-east chains.
pub fn step(level: &Level, eps: &Rational) -> Result<StepOutcome, ConstructError> {
    let cand = step_candidate(level, eps)?;
    let ((a_ok, b_ok), w_ok) = rayon::join(
        || {
            rayon::join(
                || is_south_east_chain(&cand.a).unwrap_or(false),
                || is_south_east_chain(&cand.b).unwrap_or(false),
            )
        },
        || is_south_east_chain(&cand.witness_points).unwrap_or(false),
    );
    if !(a_ok && b_ok && w_ok) {
        return Ok(StepOutcome::Rejected(Rejection { a_failed: !a_ok, b_failed: !b_ok, witness_failed: !w_ok }));
    }
    let mut eps_history = level.eps_history.clone();
    eps_history.push(eps.clone());
    Ok(StepOutcome::Accepted(Level {
        k: level.k + 1,
        a: Chain::new(cand.a)?,
        b: Chain::new(cand.b)?,
        witness: cand.witness,
        eps_history,
    }))
}

/// Search limits for [`find_epsilon`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EpsilonSearch {
    pub max_exponent: u32,
}

impl Default for EpsilonSearch {
    fn default() -> Self {
        EpsilonSearch { max_exponent: DEFAULT_MAX_EPS_EXPONENT }
    }
}

/// Finds the smallest `m` such that `ε = 2^-m` is accepted, together with the
/// resulting level.
///
/// `m` doubles from 1 until a step is accepted, then a binary search between
/// the last rejected and the first accepted exponent narrows it down. This
/// relies on acceptance being monotone in `m`.
pub fn find_step(level: &Level, search: &EpsilonSearch) -> Result<(u32, Level), ConstructError> {
    let cap = search.max_exponent.max(1);
    let try_m = |m: u32| step(level, &dyadic(m)).map(StepOutcome::accepted);

    let mut rejected = 0u32;
    let mut m = 1u32;
    let (mut best_m, mut best) = loop {
        if let Some(next) = try_m(m)? {
            break (m, next);
        }
        rejected = m;
        if m >= cap {
            return Err(ConstructError::EpsilonCapExceeded { cap });
        }
        m = (m * 2).min(cap);
    };
    while best_m - rejected > 1 {
        let mid = rejected + (best_m - rejected) / 2;
        match try_m(mid)? {
            Some(next) => {
                best_m = mid;
                best = next;
            }
            None => rejected = mid,
        }
    }
    Ok((best_m, best))
}

/// The largest accepted `ε` of the form `2^-m`.
pub fn find_epsilon(level: &Level, search: &EpsilonSearch) -> Result<Rational, ConstructError> {
    find_step(level, search).map(|(m, _)| dyadic(m))
}

pub fn build(k: u32) -> Result<Level, ConstructError> {
    build_with(k, &EpsilonSearch::default())
}

/// Base case followed by `k - 1` verified doubling steps.
pub fn build_with(k: u32, search: &EpsilonSearch) -> Result<Level, ConstructError> {
    if k == 0 {
        return Err(ConstructError::InvalidLevel);
    }
    let mut level = base_case();
    while level.k < k {
        level = find_step(&level, search)?.1;
    }
    level.validate()?;
    Ok(level)
}

/// Exact check that every consecutive slope of `points` is below `1/√3`.
pub fn slopes_below_inv_sqrt3(points: &[Point]) -> bool {
    let bound = QSqrt3::from_ratios(0, 1, 1, 3);
    points.windows(2).all(|w| {
        let dx = &w[1].x - &w[0].x;
        let dy = &w[1].y - &w[0].y;
        dx.is_positive() && dy < &bound * &dx
    })
}
