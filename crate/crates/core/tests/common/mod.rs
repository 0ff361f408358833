//! Naive reference implementations used as test oracles. Everything here is
//! written from the definitions with dense matrices and subset enumeration,
//! sharing no code with the library beyond reading the edge list.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeSet, VecDeque};

use flagcurv::generators::{generate, CorpusSpec};
use flagcurv::FlagComplex;

/// Adjacency as bitmasks; usable for up to 64 vertices.
#[derive(Debug, Clone)]
pub struct Graph {
    pub n: usize,
    pub adj: Vec<u64>,
}

impl Graph {
    pub fn of(c: &FlagComplex) -> Self {
        assert!(c.vertex_count() <= 64, "oracle graphs hold at most 64 vertices");
        let mut adj = vec![0u64; c.vertex_count()];
        for (u, v) in c.edges() {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Graph { n: c.vertex_count(), adj }
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n).flat_map(|u| (u + 1..self.n).filter(move |&v| self.adjacent(u, v)).map(move |v| (u, v))).collect()
    }
}

pub fn members(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

/// All-pairs distances for any graph size.
pub fn floyd_warshall(c: &FlagComplex) -> Vec<Vec<Option<usize>>> {
    let n = c.vertex_count();
    let mut d = vec![vec![None; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = Some(0);
    }
    for (u, v) in c.edges() {
        d[u][v] = Some(1);
        d[v][u] = Some(1);
    }
    for k in 0..n {
        for i in 0..n {
            let Some(ik) = d[i][k] else { continue };
            for j in 0..n {
                if let Some(kj) = d[k][j] {
                    if d[i][j].is_none_or(|ij| ik + kj < ij) {
                        d[i][j] = Some(ik + kj);
                    }
                }
            }
        }
    }
    d
}

/// Vertex sets of size at least 4 inducing a cycle. A full cycle is
/// determined by its vertex set.
pub fn induced_cycles(g: &Graph) -> Vec<u64> {
    (0u64..1 << g.n)
        .filter(|&s| s.count_ones() >= 4)
        .filter(|&s| members(s).iter().all(|&v| (g.adj[v] & s).count_ones() == 2) && connected_within(g, s))
        .collect()
}

fn connected_within(g: &Graph, s: u64) -> bool {
    let start = s.trailing_zeros() as usize;
    let mut seen = 1u64 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0;
        for v in members(frontier) {
            next |= g.adj[v] & s & !seen;
        }
        seen |= next;
        frontier = next;
    }
    seen == s
}

/// Nonempty cliques.
pub fn cliques(g: &Graph) -> Vec<u64> {
    (1u64..1 << g.n).filter(|&s| members(s).iter().all(|&v| s & !(g.adj[v] | 1 << v) == 0)).collect()
}

/// Vertices outside `sigma` adjacent to all of it.
pub fn link_mask(g: &Graph, sigma: u64) -> u64 {
    let all = if g.n == 64 { u64::MAX } else { (1 << g.n) - 1 };
    members(sigma).iter().fold(all, |m, &v| m & g.adj[v]) & !sigma
}

pub fn is_k_large(g: &Graph, k: usize) -> bool {
    induced_cycles(g).iter().all(|s| s.count_ones() as usize >= k)
}

pub fn is_locally_k_large(g: &Graph, k: usize) -> bool {
    let cycles = induced_cycles(g);
    cliques(g).iter().all(|&sigma| {
        let link = link_mask(g, sigma);
        cycles.iter().all(|&s| s & !link != 0 || s.count_ones() as usize >= k)
    })
}

/// `(hub, rim)` for every full `k`-cycle inside the neighborhood of a hub.
pub fn wheels(g: &Graph, k: usize) -> BTreeSet<(usize, u64)> {
    let cycles = induced_cycles(g);
    let mut out = BTreeSet::new();
    for hub in 0..g.n {
        for &s in &cycles {
            if s.count_ones() as usize == k && s & !g.adj[hub] == 0 {
                out.insert((hub, s));
            }
        }
    }
    out
}

pub fn in_one_ball(g: &Graph, s: u64) -> bool {
    (0..g.n).any(|v| s & !(g.adj[v] | 1 << v) == 0)
}

/// Whether the edge set of the cycle induced on `s` is a sum of triangle
/// boundaries over GF(2).
pub fn null_homologous(g: &Graph, s: u64) -> bool {
    let edges = g.edges();
    let index = |u: usize, v: usize| edges.iter().position(|&e| e == (u.min(v), u.max(v))).unwrap();
    let words = edges.len().div_ceil(64);
    let mut basis: Vec<Vec<u64>> = Vec::new();
    let reduce = |basis: &Vec<Vec<u64>>, mut x: Vec<u64>| {
        for b in basis {
            let lead = leading(b);
            if x[lead / 64] >> (lead % 64) & 1 == 1 {
                for (xi, bi) in x.iter_mut().zip(b) {
                    *xi ^= bi;
                }
            }
        }
        x
    };
    for a in 0..g.n {
        for b in a + 1..g.n {
            for c in b + 1..g.n {
                if g.adjacent(a, b) && g.adjacent(b, c) && g.adjacent(a, c) {
                    let mut x = vec![0u64; words];
                    for i in [index(a, b), index(b, c), index(a, c)] {
                        x[i / 64] ^= 1 << (i % 64);
                    }
                    let x = reduce(&basis, x);
                    if x.iter().any(|&w| w != 0) {
                        basis.push(x);
                        basis.sort_by_key(|b| std::cmp::Reverse(leading(b)));
                    }
                }
            }
        }
    }
    let mut z = vec![0u64; words];
    for (u, v) in edges.iter().copied() {
        if s >> u & 1 == 1 && s >> v & 1 == 1 {
            let i = index(u, v);
            z[i / 64] ^= 1 << (i % 64);
        }
    }
    // Reduce in order of decreasing leading bit.
    let z = reduce(&basis, z);
    z.iter().all(|&w| w == 0)
}

fn leading(x: &[u64]) -> usize {
    for (i, &w) in x.iter().enumerate().rev() {
        if w != 0 {
            return i * 64 + 63 - w.leading_zeros() as usize;
        }
    }
    usize::MAX
}

/// Full cycles of length `4..=m` that are null-homologous and outside every
/// 1-ball.
pub fn m_location_failures(g: &Graph, m: usize) -> Vec<u64> {
    induced_cycles(g)
        .into_iter()
        .filter(|s| (s.count_ones() as usize) <= m && !in_one_ball(g, *s) && null_homologous(g, *s))
        .collect()
}

pub type TriangleFailures = BTreeSet<(usize, usize, usize)>;
pub type VertexFailures = BTreeSet<(usize, usize, usize, usize)>;

/// Triangle failures `(i, a, b)` and vertex failures `(i, v, u, w)` of
/// `SD'_n(origin)`, straight from the definition.
pub fn sd_failures(
    g: &Graph,
    d: &[Vec<Option<usize>>],
    origin: usize,
    n: usize,
) -> (TriangleFailures, VertexFailures) {
    let dist = |v: usize| d[origin][v];
    let in_ball = |v: usize, i: usize| dist(v).is_some_and(|x| x <= i);
    let mut tri = BTreeSet::new();
    let mut ver = BTreeSet::new();
    for i in 1..=n {
        let sphere: Vec<usize> = (0..g.n).filter(|&v| dist(v) == Some(i + 1)).collect();
        for &a in &sphere {
            for &b in &sphere {
                if a < b && g.adjacent(a, b) && !(0..g.n).any(|t| g.adjacent(t, a) && g.adjacent(t, b) && in_ball(t, i)) {
                    tri.insert((i, a, b));
                }
            }
        }
        for &v in &sphere {
            let lower: Vec<usize> = (0..g.n).filter(|&x| g.adjacent(v, x) && in_ball(x, i)).collect();
            for &u in &lower {
                for &w in &lower {
                    if u < w
                        && !lower
                            .iter()
                            .any(|&t| (t == u || g.adjacent(t, u)) && (t == w || g.adjacent(t, w)))
                    {
                        ver.insert((i, v, u, w));
                    }
                }
            }
        }
    }
    (tri, ver)
}

/// Breadth-first reachability avoiding `blocked`.
pub fn reachable_avoiding(c: &FlagComplex, x: usize, y: usize, blocked: &[bool]) -> bool {
    if blocked[x] || blocked[y] {
        return false;
    }
    let mut seen = vec![false; c.vertex_count()];
    seen[x] = true;
    let mut queue = VecDeque::from([x]);
    while let Some(u) = queue.pop_front() {
        if u == y {
            return true;
        }
        for &v in c.neighbors(u) {
            if !seen[v] && !blocked[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    false
}

/// Four-point δ, doubled, over all ordered quadruples.
pub fn delta_doubled(d: &[Vec<Option<usize>>]) -> u64 {
    let n = d.len();
    let dd = |a: usize, b: usize| d[a][b].unwrap() as u64;
    let mut best = 0;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for e in 0..n {
                    let mut s = [dd(a, b) + dd(c, e), dd(a, c) + dd(b, e), dd(a, e) + dd(b, c)];
                    s.sort();
                    best = best.max(s[2] - s[1]);
                }
            }
        }
    }
    best
}

/// Every named complex with at most ten vertices.
pub fn small_corpus() -> Vec<CorpusSpec> {
    let mut specs = Vec::new();
    specs.extend((3..=10).map(CorpusSpec::Cycle));
    specs.extend((1..=10).map(CorpusSpec::Path));
    specs.extend((1..=7).map(CorpusSpec::Complete));
    specs.extend((4..=9).map(CorpusSpec::Wheel));
    specs.push(CorpusSpec::Octahedron);
    specs.push(CorpusSpec::Disk { degree: 6, radius: 1 });
    specs.push(CorpusSpec::Disk { degree: 7, radius: 1 });
    specs.push(CorpusSpec::Disk { degree: 8, radius: 1 });
    specs.extend((2..=5).map(|length| CorpusSpec::Strip { width: 2, length }));
    specs.extend((2..=3).map(|length| CorpusSpec::Strip { width: 3, length }));
    specs.push(CorpusSpec::Cylinder { circumference: 4, height: 2 });
    specs.push(CorpusSpec::Cylinder { circumference: 5, height: 2 });
    specs
}

/// Twenty-five seeded random complexes on 4 to 10 vertices.
pub fn random_corpus() -> Vec<CorpusSpec> {
    (0..25u64)
        .map(|seed| CorpusSpec::RandomFlag { n: 4 + (seed as usize % 7), p: [0.3, 0.45, 0.6][seed as usize % 3], seed })
        .collect()
}

pub fn build(spec: &CorpusSpec) -> FlagComplex {
    generate(spec).unwrap().complex
}
