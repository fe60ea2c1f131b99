//! Largest convexly independent subset `ci(X)` of a planar point set.
//!
//! Two solvers with unrelated code paths: exhaustive subset search for tiny
//! inputs, and the classical cubic dynamic program over edges sorted by
//! direction. Witnesses are strictly convex: collinear triples never appear.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use rayon::prelude::*;

use crate::geom::{convex_hull, is_convexly_independent, Point, PointSet};

/// Largest input accepted by [`ci_bruteforce`].
pub const BRUTEFORCE_MAX_POINTS: usize = 20;
/// Largest input accepted by [`ci_dp`].
pub const DP_MAX_POINTS: usize = 2500;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CiError {
    #[error("{solver} accepts at most {cap} points, got {n}")]
    TooLarge { solver: &'static str, n: usize, cap: usize },
}

/// Size of a largest convexly independent subset and one such subset in
/// counterclockwise order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CiResult {
    pub size: usize,
    pub witness: Vec<Point>,
}

/// Exhaustive search over subsets, largest first.
///
/// Among maximum subsets the one whose lexicographically sorted point list
/// is smallest wins.
pub fn ci_bruteforce(set: &PointSet) -> Result<CiResult, CiError> {
    let n = set.len();
    if n > BRUTEFORCE_MAX_POINTS {
        return Err(CiError::TooLarge { solver: "brute force", n, cap: BRUTEFORCE_MAX_POINTS });
    }
    let pts = set.to_vec();
    for size in (1..=n).rev() {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let subset: PointSet = idx.iter().map(|&i| &pts[i]).collect();
            if is_convexly_independent(&subset) {
                return Ok(CiResult { size, witness: convex_hull(&subset) });
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
    }
    Ok(CiResult { size: 0, witness: Vec::new() })
}

// Advances to the next k-combination of 0..n in lexicographic order.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// `a + b√3` with integer parts.
#[derive(Debug, Clone, PartialEq, Eq)]
struct LatticeNum {
    a: BigInt,
    b: BigInt,
}

impl LatticeNum {
    fn sub(&self, o: &LatticeNum) -> LatticeNum {
        LatticeNum { a: &self.a - &o.a, b: &self.b - &o.b }
    }

    fn mul(&self, o: &LatticeNum) -> LatticeNum {
        LatticeNum { a: &self.a * &o.a + 3 * (&self.b * &o.b), b: &self.a * &o.b + &self.b * &o.a }
    }

    fn signum(&self) -> Ordering {
        let sa = self.a.sign_cmp();
        let sb = self.b.sign_cmp();
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        let a2 = &self.a * &self.a;
        let b2 = 3 * (&self.b * &self.b);
        if a2 > b2 {
            sa
        } else {
            sb
        }
    }
}

trait SignCmp {
    fn sign_cmp(&self) -> Ordering;
}

impl SignCmp for BigInt {
    fn sign_cmp(&self) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
}

/// Scales all coordinates by the common denominator so that every value is
/// `a + b√3` with integer `a`, `b`. Positive scaling preserves orientation.
fn to_lattice(pts: &[Point]) -> Vec<(LatticeNum, LatticeNum)> {
    let mut lcm = BigInt::one();
    for p in pts {
        for c in [&p.x, &p.y] {
            lcm = lcm.lcm(c.p().denom());
            lcm = lcm.lcm(c.q().denom());
        }
    }
    let conv = |c: &crate::exact::QSqrt3| LatticeNum {
        a: c.p().numer() * (&lcm / c.p().denom()),
        b: c.q().numer() * (&lcm / c.q().denom()),
    };
    pts.iter().map(|p| (conv(&p.x), conv(&p.y))).collect()
}

struct Edge {
    from: u32,
    to: u32,
    dx: LatticeNum,
    dy: LatticeNum,
    // 0 for directions in [0, π), 1 for [π, 2π).
    half: u8,
}

fn direction_cmp(e: &Edge, f: &Edge) -> Ordering {
    e.half.cmp(&f.half).then_with(|| {
        // e before f iff cross(e, f) > 0.
        let cross = e.dx.mul(&f.dy).sub(&e.dy.mul(&f.dx));
        cross.signum().reverse()
    })
}

const NONE: u32 = u32::MAX;

/// Largest convex polygon by dynamic programming, `O(n³)` after an
/// `O(n² log n)` sort of all directed edges by direction.
///
/// For every anchor (taken as the bottom-most, then left-most vertex of the
/// polygon) the edges are relaxed in increasing direction angle. A closed
/// walk with strictly increasing directions is a strictly convex polygon,
/// so edges sharing a direction are relaxed as a batch and never chained.
pub fn ci_dp(set: &PointSet) -> Result<CiResult, CiError> {
    let n = set.len();
    if n > DP_MAX_POINTS {
        return Err(CiError::TooLarge { solver: "dynamic program", n, cap: DP_MAX_POINTS });
    }
    let pts = set.to_vec();
    if n <= 2 {
        return Ok(CiResult { size: n, witness: pts });
    }

    let lat = to_lattice(&pts);
    let mut edges = Vec::with_capacity(n * (n - 1));
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            let dx = lat[v].0.sub(&lat[u].0);
            let dy = lat[v].1.sub(&lat[u].1);
            let up = match dy.signum() {
                Ordering::Greater => true,
                Ordering::Less => false,
                Ordering::Equal => dx.signum() == Ordering::Greater,
            };
            edges.push(Edge { from: u as u32, to: v as u32, dx, dy, half: if up { 0 } else { 1 } });
        }
    }
    edges.sort_by(direction_cmp);
    let mut groups = Vec::new();
    let mut start = 0;
    for i in 1..=edges.len() {
        if i == edges.len() || direction_cmp(&edges[i - 1], &edges[i]) != Ordering::Equal {
            groups.push((start, i));
            start = i;
        }
    }
    let pairs: Vec<(u32, u32)> = edges.iter().map(|e| (e.from, e.to)).collect();
    drop(edges);

    // Rank by (y, x): an anchor only uses points ranked above it.
    let mut by_height: Vec<usize> = (0..n).collect();
    by_height.sort_by(|&i, &j| pts[i].y.cmp(&pts[j].y).then_with(|| pts[i].x.cmp(&pts[j].x)));
    let mut rank = vec![0usize; n];
    for (r, &i) in by_height.iter().enumerate() {
        rank[i] = r;
    }

    let best = (0..n).into_par_iter().map(|anchor| solve_anchor(anchor, &rank, &pairs, &groups)).reduce(
        || None,
        |x: Option<(usize, usize, Vec<u32>)>, y| match (x, y) {
            (None, y) => y,
            (x, None) => x,
            (Some(x), Some(y)) => {
                Some(if (y.0, std::cmp::Reverse(y.1)) > (x.0, std::cmp::Reverse(x.1)) { y } else { x })
            }
        },
    );

    let (size, _, verts) = best.expect("n >= 3 always yields a polygon");
    Ok(CiResult { size, witness: verts.into_iter().map(|i| pts[i as usize].clone()).collect() })
}

/// Best polygon anchored at `anchor`: `(size, anchor, vertices ccw)`.
fn solve_anchor(
    anchor: usize,
    rank: &[usize],
    pairs: &[(u32, u32)],
    groups: &[(usize, usize)],
) -> Option<(usize, usize, Vec<u32>)> {
    let n = rank.len();
    let a = anchor as u32;
    let allowed = |x: u32| x == a || rank[x as usize] > rank[anchor];
    if rank[anchor] + 1 == n {
        return None;
    }

    let mut len = vec![0u32; n];
    let mut last_edge = vec![NONE; n];
    let mut pred = vec![NONE; pairs.len()];
    len[anchor] = 1;
    // (size, last edge of the open chain before closing)
    let mut best: Option<(u32, u32)> = None;
    let mut pending: Vec<(u32, u32, u32)> = Vec::new();

    for &(lo, hi) in groups {
        pending.clear();
        for e in lo..hi {
            let (u, v) = pairs[e];
            if v == a || !allowed(u) || !allowed(v) || len[u as usize] == 0 {
                continue;
            }
            pending.push((v, len[u as usize] + 1, e as u32));
            pred[e] = last_edge[u as usize];
        }
        // Closing edges read the same pre-batch state.
        for &(u, v) in &pairs[lo..hi] {
            if v != a || u == a || !allowed(u) || len[u as usize] == 0 {
                continue;
            }
            let size = len[u as usize];
            if best.is_none_or(|(s, _)| size > s) {
                best = Some((size, last_edge[u as usize]));
            }
        }
        for &(v, cand, e) in &pending {
            if cand > len[v as usize] {
                len[v as usize] = cand;
                last_edge[v as usize] = e;
            }
        }
    }

    let (size, mut e) = best?;
    let mut verts = Vec::with_capacity(size as usize);
    while e != NONE {
        verts.push(pairs[e as usize].1);
        e = pred[e as usize];
    }
    verts.push(a);
    verts.reverse();
    debug_assert_eq!(verts.len(), size as usize);
    Some((size as usize, anchor, verts))
}

/// Checks a solver result against its input: witness is a convexly
/// independent subset of `set` with the reported size.
pub fn witness_is_sound(set: &PointSet, res: &CiResult) -> bool {
    let w: PointSet = res.witness.iter().collect();
    w.len() == res.size && res.witness.iter().all(|p| set.contains(p)) && is_convexly_independent(&w)
}
