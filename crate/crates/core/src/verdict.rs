//! Three-valued check outcomes and the witnesses that back a failure.

use serde::{Deserialize, Serialize};

use crate::complex::{Distance, FlagComplex};
use crate::loops::{in_one_ball, FillingCertificate, Filler, LoopPath};

/// Outcome of a check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum Verdict {
    Pass,
    Fail { witness: Witness },
    /// Loops the bounded search could not decide.
    Unknown { undecided: Vec<LoopPath> },
}

impl Verdict {
    pub fn fail(witness: Witness) -> Self {
        Verdict::Fail { witness }
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown { .. })
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Fail { witness } => Some(witness),
            _ => None,
        }
    }
}

/// The smallest offending object found by a check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Witness {
    /// Pairwise adjacent vertices that the explicit simplex list omits.
    MissingSimplex { clique: Vec<usize> },
    /// A full cycle shorter than the required girth.
    FullCycle { cycle: Vec<usize> },
    /// A full cycle in the link of `simplex`, in the complex's own indices.
    LinkCycle { simplex: Vec<usize>, cycle: Vec<usize> },
    /// A null-homotopic full cycle outside every 1-ball.
    UnfilledCycle { cycle: Vec<usize>, certificate: FillingCertificate },
    /// A closed walk that is nonzero in first homology.
    EssentialCycle { cycle: Vec<usize> },
    /// An edge of the sphere of radius `level + 1` whose link misses the
    /// ball of radius `level`.
    SdTriangle { origin: usize, level: usize, edge: [usize; 2] },
    /// A sphere vertex `vertex` with two ball neighbors `u`, `w` that no
    /// ball neighbor of `vertex` joins.
    SdVertex { origin: usize, level: usize, vertex: usize, u: usize, w: usize },
    /// Fan configuration around a sphere vertex whose lower witnesses are
    /// neither equal nor adjacent.
    FanConfiguration { origin: usize, depth: usize, v: usize, y: usize, z: usize, w: usize, u1: usize, u2: usize },
    /// Ladder configuration over a 2-path `v1 v2 v3` with adjacent upper
    /// witnesses and non-adjacent lower witnesses.
    LadderConfiguration {
        origin: usize,
        depth: usize,
        v1: usize,
        v2: usize,
        v3: usize,
        w1: usize,
        w2: usize,
        p1: usize,
        p2: usize,
    },
    /// A pair whose distance in a subcomplex differs from the ambient one.
    DistanceMismatch { u: usize, v: usize, sub_distance: Distance, ambient_distance: Distance },
    /// A certified vertex of a minimal set whose displacement, recomputed
    /// inside the set, is not minimal.
    Displacement { vertex: usize, expected: usize, found: Distance },
    /// Minimal-set vertices on no discovered axis. `proven_absent` is set
    /// when the geodesic enumeration behind the search was exhaustive.
    Uncovered { vertices: Vec<usize>, proven_absent: bool },
    /// A pair `x, y` whose connections all avoid every midpoint ball of the
    /// given radius.
    Bottleneck { x: usize, y: usize, radius: usize },
    /// The isometry fixes this simplex setwise.
    Elliptic { simplex: Vec<usize> },
}

impl Witness {
    /// Re-checks the witness against `c`. Returns `None` for witnesses that
    /// need more context than the complex (a subcomplex or a map).
    pub fn replay(&self, c: &FlagComplex) -> Option<bool> {
        let valid = |vs: &[usize]| vs.iter().all(|&v| v < c.vertex_count());
        match self {
            Witness::MissingSimplex { clique } => Some(valid(clique) && c.is_clique(clique)),
            Witness::FullCycle { cycle } => Some(valid(cycle) && is_full_cycle(c, cycle)),
            Witness::LinkCycle { simplex, cycle } => {
                if !valid(simplex) || !valid(cycle) || !c.is_clique(simplex) {
                    return Some(false);
                }
                let in_link = cycle.iter().all(|&v| !simplex.contains(&v) && simplex.iter().all(|&s| c.adjacent(s, v)));
                Some(in_link && is_full_cycle(c, cycle))
            }
            Witness::UnfilledCycle { cycle, certificate } => Some(
                valid(cycle)
                    && is_full_cycle(c, cycle)
                    && in_one_ball(c, cycle).is_none()
                    && certificate.is_null_homotopic()
                    && Filler::new(c, usize::MAX).verify(cycle, certificate),
            ),
            Witness::EssentialCycle { cycle } => Some(
                valid(cycle) && LoopPath::closed(c, cycle.clone()).is_ok() && !Filler::new(c, 1).is_null_homologous(cycle),
            ),
            Witness::SdTriangle { origin, level, edge } => {
                if !valid(&[*origin, edge[0], edge[1]]) {
                    return Some(false);
                }
                let d = c.bfs_raw(*origin);
                let (i, a, b) = (*level as u32, edge[0], edge[1]);
                Some(
                    c.adjacent(a, b)
                        && d[a] == i + 1
                        && d[b] == i + 1
                        && !c.common_neighbors(&[a, b]).iter().any(|&t| d[t] <= i),
                )
            }
            Witness::SdVertex { origin, level, vertex, u, w } => {
                if !valid(&[*origin, *vertex, *u, *w]) {
                    return Some(false);
                }
                let d = c.bfs_raw(*origin);
                let i = *level as u32;
                let lower = |x: usize| c.adjacent(*vertex, x) && d[x] <= i;
                Some(
                    d[*vertex] == i + 1
                        && lower(*u)
                        && lower(*w)
                        && !c.neighbors(*vertex)
                            .iter()
                            .any(|&t| lower(t) && c.adjacent_or_equal(t, *u) && c.adjacent_or_equal(t, *w)),
                )
            }
            Witness::FanConfiguration { origin, depth, v, y, z, w, u1, u2 } => {
                if !valid(&[*origin, *v, *y, *z, *w, *u1, *u2]) || *depth < 1 {
                    return Some(false);
                }
                let d = c.bfs_raw(*origin);
                let n = *depth as u32;
                let adj = |a: usize, b: usize| c.adjacent(a, b);
                Some(
                    d[*v] == n + 1
                        && d[*y] <= n
                        && d[*z] <= n
                        && adj(*v, *y)
                        && adj(*v, *z)
                        && c.distance(*y, *z).ok() == Some(Distance::Finite(2))
                        && d[*w] <= n
                        && adj(*w, *y)
                        && adj(*w, *v)
                        && adj(*w, *z)
                        && d[*u1] < n
                        && d[*u2] < n
                        && adj(*u1, *y)
                        && adj(*u1, *w)
                        && adj(*u2, *w)
                        && adj(*u2, *z)
                        && !c.adjacent_or_equal(*u1, *z)
                        && !c.adjacent_or_equal(*u2, *y)
                        && !c.adjacent_or_equal(*u1, *u2),
                )
            }
            Witness::LadderConfiguration { origin, depth, v1, v2, v3, w1, w2, p1, p2 } => {
                if !valid(&[*origin, *v1, *v2, *v3, *w1, *w2, *p1, *p2]) || *depth < 2 {
                    return Some(false);
                }
                let d = c.bfs_raw(*origin);
                let n = *depth as u32;
                let adj = |a: usize, b: usize| c.adjacent(a, b);
                Some(
                    [*v1, *v2, *v3].iter().all(|&x| d[x] == n - 1)
                        && v1 != v3
                        && adj(*v1, *v2)
                        && adj(*v2, *v3)
                        && d[*w1] <= n - 2
                        && d[*w2] <= n - 2
                        && adj(*w1, *v1)
                        && adj(*w1, *v2)
                        && adj(*w2, *v2)
                        && adj(*w2, *v3)
                        && d[*p1] == n
                        && d[*p2] == n
                        && adj(*p1, *v1)
                        && adj(*p1, *v2)
                        && adj(*p2, *v2)
                        && adj(*p2, *v3)
                        && c.adjacent_or_equal(*p1, *p2)
                        && !c.adjacent_or_equal(*w1, *w2),
                )
            }
            Witness::DistanceMismatch { u, v, ambient_distance, sub_distance } => Some(
                valid(&[*u, *v]) && c.distance(*u, *v).ok() == Some(*ambient_distance) && sub_distance != ambient_distance,
            ),
            Witness::Bottleneck { x, y, radius } => {
                Some(valid(&[*x, *y]) && crate::hyperbolicity::pair_violates_bottleneck(c, *x, *y, *radius))
            }
            Witness::Elliptic { simplex } => Some(valid(simplex) && c.is_clique(simplex)),
            Witness::Displacement { .. } | Witness::Uncovered { .. } => None,
        }
    }
}

fn is_full_cycle(c: &FlagComplex, cycle: &[usize]) -> bool {
    LoopPath::closed(c, cycle.to_vec()).map(|l| l.is_full(c)).unwrap_or(false)
}
