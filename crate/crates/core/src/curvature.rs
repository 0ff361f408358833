//! Local curvature conditions: k-largeness, m-location, the SD' conditions,
//! simple connectivity and the configuration lemmas built on them.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::complex::{FlagComplex, UNREACHABLE};
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::loops::{full_cycles_between, in_one_ball, FillingCertificate, Filler, LoopPath};
use crate::par;
use crate::verdict::{Verdict, Witness};

/// Checks an explicit simplex list for flagness.
pub fn check_flag(vertex_count: usize, simplices: &[Vec<usize>]) -> Result<Verdict> {
    match crate::complex::ingest_explicit(vertex_count, simplices) {
        Ok(_) => Ok(Verdict::Pass),
        Err(crate::complex::IngestError::NotFlag(v)) => Ok(Verdict::fail(Witness::MissingSimplex { clique: v.witness })),
        Err(crate::complex::IngestError::Invalid(e)) => Err(e),
    }
}

fn check_k(k: usize) -> Result<()> {
    if k < 4 {
        return Err(Error::InvalidParameter(format!("k = {k} < 4")));
    }
    Ok(())
}

/// No full cycle of length below `k`. Fails with the shortest
/// (then lexicographically least) full cycle.
pub fn is_k_large(c: &FlagComplex, k: usize, cycle_cap: usize) -> Result<Verdict> {
    check_k(k)?;
    if k - 1 > cycle_cap {
        return Err(Error::CycleCapExceeded { requested: k - 1, cap: cycle_cap });
    }
    Ok(shortest_full_cycle(c, k - 1).map_or(Verdict::Pass, |cycle| Verdict::fail(Witness::FullCycle { cycle })))
}

fn shortest_full_cycle(c: &FlagComplex, max_len: usize) -> Option<Vec<usize>> {
    (4..=max_len).find_map(|len| full_cycles_between(c, len, len).into_iter().next().map(|l| l.vertices().to_vec()))
}

/// Every link of a nonempty simplex is `k`-large.
pub fn is_locally_k_large(c: &FlagComplex, k: usize, limits: &Limits) -> Result<Verdict> {
    check_k(k)?;
    if k - 1 > limits.cycle_cap {
        return Err(Error::CycleCapExceeded { requested: k - 1, cap: limits.cycle_cap });
    }
    let simplices = c.simplices(limits.clique_cap)?;
    let found = par::find_map_first(&simplices, |s| {
        let link = c.link(s.vertices()).expect("enumerated simplex");
        if link.complex.vertex_count() < 4 {
            return None;
        }
        shortest_full_cycle(&link.complex, k - 1)
            .map(|cycle| Witness::LinkCycle { simplex: s.vertices().to_vec(), cycle: link.lift(&cycle) })
    });
    Ok(found.map_or(Verdict::Pass, Verdict::fail))
}

/// Every null-homotopic full cycle of length at most `m` lies in a 1-ball.
///
/// Cycles that are nonzero in first homology are exempt; cycles the
/// bounded search cannot decide make the verdict `Unknown`.
pub fn is_m_located(c: &FlagComplex, m: usize, limits: &Limits) -> Result<Verdict> {
    if m < 4 {
        return Err(Error::InvalidParameter(format!("m = {m} < 4")));
    }
    if m > limits.cycle_cap {
        return Err(Error::CycleCapExceeded { requested: m, cap: limits.cycle_cap });
    }
    if limits.area_budget == 0 {
        return Err(Error::InvalidParameter("area budget must be at least 1".into()));
    }
    let cycles = full_cycles_between(c, 4, m);
    let filler = Filler::new(c, limits.area_budget).with_node_limit(limits.node_limit);
    let outcomes = par::map(&cycles, |cycle| {
        if in_one_ball(c, cycle.vertices()).is_some() {
            return None;
        }
        Some(filler.fill(cycle.vertices()))
    });
    let mut undecided = Vec::new();
    for (cycle, outcome) in cycles.iter().zip(outcomes) {
        match outcome {
            Some(cert @ FillingCertificate::Diagram { .. }) => {
                return Ok(Verdict::fail(Witness::UnfilledCycle { cycle: cycle.vertices().to_vec(), certificate: cert }));
            }
            Some(FillingCertificate::Unknown { .. }) => undecided.push(cycle.clone()),
            _ => {}
        }
    }
    Ok(if undecided.is_empty() { Verdict::Pass } else { Verdict::Unknown { undecided } })
}

/// (T) failure: an edge of the sphere of radius `level + 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TriangleFailure {
    pub level: usize,
    pub edge: [usize; 2],
}

/// (V) failure at `vertex` for the pair `u < w`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexFailure {
    pub level: usize,
    pub vertex: usize,
    pub u: usize,
    pub w: usize,
}

/// All (T) and (V) failures of `SD'_n(O)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SdReport {
    pub origin: usize,
    pub depth: usize,
    pub triangle_failures: Vec<TriangleFailure>,
    pub vertex_failures: Vec<VertexFailure>,
}

impl SdReport {
    pub fn passes(&self) -> bool {
        self.triangle_failures.is_empty() && self.vertex_failures.is_empty()
    }

    /// The first failure as a witness.
    pub fn verdict(&self) -> Verdict {
        if let Some(f) = self.triangle_failures.first() {
            return Verdict::fail(Witness::SdTriangle { origin: self.origin, level: f.level, edge: f.edge });
        }
        if let Some(f) = self.vertex_failures.first() {
            return Verdict::fail(Witness::SdVertex {
                origin: self.origin,
                level: f.level,
                vertex: f.vertex,
                u: f.u,
                w: f.w,
            });
        }
        Verdict::Pass
    }
}

/// Checks (T) and (V) for every level `1..=n` around `origin`.
pub fn check_sd_n(c: &FlagComplex, origin: usize, n: usize) -> Result<SdReport> {
    c.check_vertex(origin)?;
    if n == 0 {
        return Err(Error::InvalidParameter("depth must be at least 1".into()));
    }
    let d = c.bfs_raw(origin);
    Ok(sd_from_distances(c, origin, n, &d))
}

fn sd_from_distances(c: &FlagComplex, origin: usize, n: usize, d: &[u32]) -> SdReport {
    let mut triangle_failures = Vec::new();
    let mut vertex_failures = Vec::new();
    let top = n.min(u32::MAX as usize - 2) as u32 + 1;
    for v in 0..c.vertex_count() {
        let dv = d[v];
        if dv < 2 || dv > top || dv == UNREACHABLE {
            continue;
        }
        let level = dv as usize - 1;
        let inner = dv - 1;
        // (T) for edges v < u inside the sphere.
        for &u in c.neighbors(v) {
            if u > v && d[u] == dv && !c.common_neighbors(&[v, u]).iter().any(|&t| d[t] <= inner) {
                triangle_failures.push(TriangleFailure { level, edge: [v, u] });
            }
        }
        // (V): ball neighbors of a sphere vertex sit on the previous sphere.
        let lower: Vec<usize> = c.neighbors(v).iter().copied().filter(|&x| d[x] <= inner).collect();
        for (a, &u) in lower.iter().enumerate() {
            for &w in &lower[a + 1..] {
                if !lower.iter().any(|&t| c.adjacent_or_equal(t, u) && c.adjacent_or_equal(t, w)) {
                    vertex_failures.push(VertexFailure { level, vertex: v, u, w });
                }
            }
        }
    }
    triangle_failures.sort();
    vertex_failures.sort();
    SdReport { origin, depth: n, triangle_failures, vertex_failures }
}

/// [`check_sd_n`] for every origin.
pub fn check_sd_all(c: &FlagComplex, n: usize) -> Result<BTreeMap<usize, SdReport>> {
    if n == 0 {
        return Err(Error::InvalidParameter("depth must be at least 1".into()));
    }
    let reports = par::map_range(c.vertex_count(), |o| sd_from_distances(c, o, n, &c.bfs_raw(o)));
    Ok(reports.into_iter().enumerate().collect())
}

/// Fills the fundamental cycle of every non-tree edge of a breadth-first
/// spanning tree. These cycles generate the fundamental group, so `Pass` is
/// sound; a cycle that is nonzero in homology gives `Fail`.
pub fn check_simple_connectivity(c: &FlagComplex, limits: &Limits) -> Result<Verdict> {
    if c.vertex_count() == 0 || !c.is_connected() {
        return Err(Error::Disconnected);
    }
    if limits.area_budget == 0 {
        return Err(Error::InvalidParameter("area budget must be at least 1".into()));
    }
    let cycles = fundamental_cycles(c);
    let filler = Filler::new(c, limits.area_budget).with_node_limit(limits.node_limit);
    let outcomes = par::map(&cycles, |cycle| filler.fill(cycle));
    let mut undecided = Vec::new();
    for (cycle, outcome) in cycles.into_iter().zip(outcomes) {
        match outcome {
            FillingCertificate::HomologyObstruction => return Ok(Verdict::fail(Witness::EssentialCycle { cycle })),
            FillingCertificate::Unknown { .. } => undecided.push(LoopPath::closed_unchecked(cycle)),
            _ => {}
        }
    }
    Ok(if undecided.is_empty() { Verdict::Pass } else { Verdict::Unknown { undecided } })
}

/// Fundamental cycles of the breadth-first tree rooted at vertex 0, one per
/// non-tree edge `u < v`, as simple closed walks `u .. lca .. v`.
pub fn fundamental_cycles(c: &FlagComplex) -> Vec<Vec<usize>> {
    let n = c.vertex_count();
    if n == 0 {
        return Vec::new();
    }
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![UNREACHABLE; n];
    let mut queue = std::collections::VecDeque::new();
    for root in 0..n {
        if depth[root] != UNREACHABLE {
            continue;
        }
        depth[root] = 0;
        parent[root] = root;
        queue.push_back(root);
        while let Some(x) = queue.pop_front() {
            for &y in c.neighbors(x) {
                if depth[y] == UNREACHABLE {
                    depth[y] = depth[x] + 1;
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
    }
    let mut cycles = Vec::new();
    for (u, v) in c.edges() {
        if parent[u] == v || parent[v] == u {
            continue;
        }
        let (mut a, mut b) = (u, v);
        let mut left = vec![a];
        let mut right = vec![b];
        while a != b {
            if depth[a] >= depth[b] {
                a = parent[a];
                left.push(a);
            } else {
                b = parent[b];
                right.push(b);
            }
        }
        right.pop();
        left.extend(right.into_iter().rev());
        cycles.push(left);
    }
    cycles
}

/// Outcome of the configuration scan around an origin.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub origin: usize,
    pub depth: usize,
    /// Whether `SD'_n(O)` holds, recorded as the scan's hypothesis.
    pub sd_holds: bool,
    /// Fan configurations scanned.
    pub fan_configurations: usize,
    /// Ladder configurations scanned.
    pub ladder_configurations: usize,
    /// Ladder configurations with adjacent lower witnesses but non-adjacent
    /// upper witnesses. Reported only: the scan checks the implication from
    /// upper to lower adjacency.
    pub ladder_converse_violations: usize,
    pub verdict: Verdict,
}

/// Scans every fan and ladder configuration at depth `n` around `origin`.
///
/// Fan: `v` on the sphere of radius `n + 1`; `y, z` in the ball of radius
/// `n` adjacent to `v` with `d(y, z) = 2`; `w` in that ball adjacent to
/// `y, v, z`; `u1, u2` in the ball of radius `n - 1` with `u1 ~ y, w` and
/// `u2 ~ w, z`. If `u1` is not adjacent to `z` and `u2` not to `y`, then
/// `u1` and `u2` must be equal or adjacent.
///
/// Ladder: a path `v1 ~ v2 ~ v3` (`v1 != v3`) on the sphere of radius
/// `n - 1`, lower witnesses `w1 ~ v1, v2` and `w2 ~ v2, v3` in the ball of
/// radius `n - 2`, upper witnesses `p1 ~ v1, v2` and `p2 ~ v2, v3` on the
/// sphere of radius `n`. If `p1` and `p2` are equal or adjacent then so
/// are `w1` and `w2`.
///
/// Every witness choice is scanned, not just one.
pub fn check_local_lemmas(c: &FlagComplex, origin: usize, n: usize) -> Result<LemmaReport> {
    c.check_vertex(origin)?;
    if n < 2 {
        return Err(Error::InvalidParameter(format!("depth {n} < 2")));
    }
    let d = c.bfs_raw(origin);
    let sd_holds = sd_from_distances(c, origin, n, &d).passes();
    let nn = n as u32;
    let within = |x: usize, r: u32| d[x] <= r;
    let common = |a: usize, b: usize, r: u32| -> Vec<usize> {
        c.common_neighbors(&[a, b]).into_iter().filter(|&x| within(x, r)).collect()
    };

    // Fan configurations, one batch per sphere vertex v.
    let fan: Vec<(usize, Option<Witness>)> = par::map_range(c.vertex_count(), |v| {
        if d[v] != nn + 1 {
            return (0, None);
        }
        let mut count = 0;
        let mut first = None;
        let lower: Vec<usize> = c.neighbors(v).iter().copied().filter(|&x| within(x, nn)).collect();
        for (i, &y) in lower.iter().enumerate() {
            for &z in &lower[i + 1..] {
                // Both are adjacent to v, so non-adjacency means distance 2.
                if c.adjacent(y, z) {
                    continue;
                }
                for &w in &lower {
                    if !(c.adjacent(w, y) && c.adjacent(w, z)) {
                        continue;
                    }
                    let u1s = common(y, w, nn - 1);
                    let u2s = common(w, z, nn - 1);
                    for &u1 in &u1s {
                        for &u2 in &u2s {
                            count += 1;
                            let hypothesis = !c.adjacent_or_equal(u1, z) && !c.adjacent_or_equal(u2, y);
                            if hypothesis && !c.adjacent_or_equal(u1, u2) && first.is_none() {
                                first = Some(Witness::FanConfiguration { origin, depth: n, v, y, z, w, u1, u2 });
                            }
                        }
                    }
                }
            }
        }
        (count, first)
    });

    // Ladder configurations, one batch per middle vertex v2.
    let ladder: Vec<(usize, usize, Option<Witness>)> = par::map_range(c.vertex_count(), |v2| {
        if d[v2] != nn - 1 {
            return (0, 0, None);
        }
        let mut count = 0;
        let mut converse = 0;
        let mut first = None;
        let side: Vec<usize> = c.neighbors(v2).iter().copied().filter(|&x| d[x] == nn - 1).collect();
        let upper = |a: usize, b: usize| -> Vec<usize> {
            c.common_neighbors(&[a, b]).into_iter().filter(|&x| d[x] == nn).collect()
        };
        for (i, &v1) in side.iter().enumerate() {
            for &v3 in &side[i + 1..] {
                let w1s = common(v1, v2, nn - 2);
                let w2s = common(v2, v3, nn - 2);
                let p1s = upper(v1, v2);
                let p2s = upper(v2, v3);
                for &w1 in &w1s {
                    for &w2 in &w2s {
                        let lower = c.adjacent_or_equal(w1, w2);
                        for &p1 in &p1s {
                            for &p2 in &p2s {
                                count += 1;
                                let upper = c.adjacent_or_equal(p1, p2);
                                if lower && !upper {
                                    converse += 1;
                                }
                                if upper && !lower && first.is_none() {
                                    first = Some(Witness::LadderConfiguration {
                                        origin,
                                        depth: n,
                                        v1,
                                        v2,
                                        v3,
                                        w1,
                                        w2,
                                        p1,
                                        p2,
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        (count, converse, first)
    });

    let fan_configurations = fan.iter().map(|f| f.0).sum();
    let ladder_configurations = ladder.iter().map(|l| l.0).sum();
    let ladder_converse_violations = ladder.iter().map(|l| l.1).sum();
    let witness = fan.into_iter().find_map(|f| f.1).or_else(|| ladder.into_iter().find_map(|l| l.2));
    Ok(LemmaReport {
        origin,
        depth: n,
        sd_holds,
        fan_configurations,
        ladder_configurations,
        ladder_converse_violations,
        verdict: witness.map_or(Verdict::Pass, Verdict::fail),
    })
}
