//! Exact four-point Gromov hyperbolicity and a bottleneck test for being
//! quasi-isometric to a tree.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::{FlagComplex, UNREACHABLE};
use crate::error::{Error, Result};
use crate::par;
use crate::verdict::{Verdict, Witness};

/// Four-point δ, kept exact as `2δ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaResult {
    /// Twice the four-point δ.
    pub doubled: u64,
    /// Lexicographically least quadruple `a < b < c < d` attaining the
    /// maximum; `None` with fewer than four vertices.
    pub witness: Option<[usize; 4]>,
}

impl DeltaResult {
    pub fn is_integer(&self) -> bool {
        self.doubled.is_multiple_of(2)
    }
}

/// δ as a decimal: `"1"` or `"1.5"`.
impl fmt::Display for DeltaResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.doubled / 2)
        } else {
            write!(f, "{}.5", self.doubled / 2)
        }
    }
}

/// Largest minus second largest of the three pair sums of a quadruple.
pub fn four_point_gap(d: impl Fn(usize, usize) -> u64, q: [usize; 4]) -> u64 {
    let [a, b, c, e] = q;
    let mut sums = [d(a, b) + d(c, e), d(a, c) + d(b, e), d(a, e) + d(b, c)];
    sums.sort_unstable();
    sums[2] - sums[1]
}

fn check_size(c: &FlagComplex, cap: usize) -> Result<()> {
    if c.vertex_count() > cap {
        return Err(Error::VertexCapExceeded { count: c.vertex_count(), cap });
    }
    if c.vertex_count() == 0 || !c.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

/// δ = max over quadruples of half the gap between the two largest of the
/// three pairwise distance sums.
pub fn delta_four_point(c: &FlagComplex, cap: usize) -> Result<DeltaResult> {
    check_size(c, cap)?;
    let n = c.vertex_count();
    let dm = c.distance_matrix();
    let best_per_a = par::map_range(n, |a| {
        let ra = dm.row(a);
        let mut best: Option<(u64, [usize; 4])> = None;
        for b in a + 1..n {
            let rb = dm.row(b);
            let ab = ra[b] as u64;
            for cc in b + 1..n {
                let rc = dm.row(cc);
                let (ac, bc) = (ra[cc] as u64, rb[cc] as u64);
                for d in cc + 1..n {
                    let s1 = ab + rc[d] as u64;
                    let s2 = ac + rb[d] as u64;
                    let s3 = ra[d] as u64 + bc;
                    let (hi, mid) = top_two(s1, s2, s3);
                    let gap = hi - mid;
                    if best.is_none_or(|(g, _)| gap > g) {
                        best = Some((gap, [a, b, cc, d]));
                    }
                }
            }
        }
        best
    });
    let mut result = DeltaResult { doubled: 0, witness: None };
    for (gap, q) in best_per_a.into_iter().flatten() {
        if result.witness.is_none() || gap > result.doubled {
            result = DeltaResult { doubled: gap, witness: Some(q) };
        }
    }
    Ok(result)
}

fn top_two(a: u64, b: u64, c: u64) -> (u64, u64) {
    let hi = a.max(b).max(c);
    let mid = if hi == a { b.max(c) } else if hi == b { a.max(c) } else { a.max(b) };
    (hi, mid)
}

/// Whether the pair `x, y` violates the bottleneck property at `radius`:
/// for every midpoint `m` (on a geodesic from `x` to `y` with
/// `|d(x, m) - d(x, y) / 2| <= 1/2`) some path from `x` to `y` avoids the
/// ball of radius `radius` around `m`.
pub fn pair_violates_bottleneck(c: &FlagComplex, x: usize, y: usize, radius: usize) -> bool {
    let dx = c.bfs_raw(x);
    let dy = c.bfs_raw(y);
    pair_violates(c, &dx, &dy, x, y, radius)
}

fn pair_violates(c: &FlagComplex, dx: &[u32], dy: &[u32], x: usize, y: usize, radius: usize) -> bool {
    let d = dx[y];
    if d == UNREACHABLE {
        return false;
    }
    for m in 0..c.vertex_count() {
        if dx[m] == UNREACHABLE || dx[m] + dy[m] != d {
            continue;
        }
        let twice = 2 * dx[m] as i64 - d as i64;
        if twice.abs() > 1 {
            continue;
        }
        let dm = c.bfs_raw(m);
        let inside = |v: usize| dm[v] != UNREACHABLE && dm[v] as usize <= radius;
        if inside(x) || inside(y) {
            return false;
        }
        let reach = c.bfs_restricted(x, |v| !inside(v));
        if reach[y] == UNREACHABLE {
            return false;
        }
    }
    true
}

/// Passes when every pair's connections all pass through the ball of
/// radius `radius` around one of its midpoints. Fails with the least pair.
pub fn bottleneck_check(c: &FlagComplex, radius: usize, cap: usize) -> Result<Verdict> {
    check_size(c, cap)?;
    let n = c.vertex_count();
    let rows = par::map_range(n, |v| c.bfs_raw(v));
    let found = par::map_range(n, |x| {
        (x + 1..n).find(|&y| pair_violates(c, &rows[x], &rows[y], x, y, radius)).map(|y| (x, y))
    });
    Ok(match found.into_iter().flatten().next() {
        Some((x, y)) => Verdict::fail(Witness::Bottleneck { x, y, radius }),
        None => Verdict::Pass,
    })
}
