//! Paths and cycles: full-cycle enumeration, tightening, 1-ball containment,
//! bounded null-homotopy search and wheel detection.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::complex::FlagComplex;
use crate::error::{Error, Result};
use crate::par;

/// A vertex sequence in the 1-skeleton, open or closed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LoopPath {
    vertices: Vec<usize>,
    closed: bool,
}

impl LoopPath {
    /// An open path: consecutive vertices adjacent. Repeats are allowed.
    pub fn open(c: &FlagComplex, vertices: Vec<usize>) -> Result<Self> {
        c.check_vertices(&vertices)?;
        if vertices.is_empty() {
            return Err(Error::InvalidLoop("empty path".into()));
        }
        if let Some(w) = vertices.windows(2).find(|w| !c.adjacent(w[0], w[1])) {
            return Err(Error::InvalidLoop(format!("{} and {} are not adjacent", w[0], w[1])));
        }
        Ok(LoopPath { vertices, closed: false })
    }

    /// A closed cycle: at least three distinct vertices, consecutive ones
    /// adjacent, last adjacent to first.
    pub fn closed(c: &FlagComplex, vertices: Vec<usize>) -> Result<Self> {
        c.check_vertices(&vertices)?;
        if vertices.len() < 3 {
            return Err(Error::InvalidLoop("a cycle needs at least 3 vertices".into()));
        }
        let distinct: HashSet<usize> = vertices.iter().copied().collect();
        if distinct.len() != vertices.len() {
            return Err(Error::InvalidLoop("cycle repeats a vertex".into()));
        }
        let n = vertices.len();
        if let Some(i) = (0..n).find(|&i| !c.adjacent(vertices[i], vertices[(i + 1) % n])) {
            return Err(Error::InvalidLoop(format!(
                "{} and {} are not adjacent",
                vertices[i],
                vertices[(i + 1) % n]
            )));
        }
        Ok(LoopPath { vertices, closed: true })
    }

    pub(crate) fn closed_unchecked(vertices: Vec<usize>) -> Self {
        LoopPath { vertices, closed: true }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        if self.closed {
            self.vertices.len()
        } else {
            self.vertices.len() - 1
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Concatenation of two open paths sharing the junction vertex.
    pub fn concat(&self, other: &LoopPath) -> Result<LoopPath> {
        if self.closed || other.closed {
            return Err(Error::InvalidLoop("only open paths concatenate".into()));
        }
        if self.vertices.last() != other.vertices.first() {
            return Err(Error::InvalidLoop("paths do not share an endpoint".into()));
        }
        let mut vertices = self.vertices.clone();
        vertices.extend_from_slice(&other.vertices[1..]);
        Ok(LoopPath { vertices, closed: false })
    }

    /// Edges traversed, each as `(min, max)`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.vertices.len();
        let count = if self.closed { n } else { n.saturating_sub(1) };
        (0..count)
            .map(|i| {
                let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
                (a.min(b), a.max(b))
            })
            .collect()
    }

    /// Whether the path is full: its vertex set spans exactly the path.
    pub fn is_full(&self, c: &FlagComplex) -> bool {
        let vs = &self.vertices;
        let n = vs.len();
        let distinct: HashSet<usize> = vs.iter().copied().collect();
        if distinct.len() != n {
            return false;
        }
        for i in 0..n {
            for j in i + 1..n {
                let consecutive = j == i + 1 || (self.closed && i == 0 && j == n - 1);
                if c.adjacent(vs[i], vs[j]) != consecutive {
                    return false;
                }
            }
        }
        // A closed triangle spans a 2-simplex, so it is never full.
        !(self.closed && n == 3)
    }
}

/// Rotation/reflection of a cycle that is lexicographically least.
pub fn canonical_cycle(vertices: &[usize]) -> Vec<usize> {
    let n = vertices.len();
    if n == 0 {
        return Vec::new();
    }
    let mut best: Option<Vec<usize>> = None;
    for start in 0..n {
        for dir in [1isize, -1] {
            let cand: Vec<usize> = (0..n as isize)
                .map(|k| vertices[((start as isize + dir * k).rem_euclid(n as isize)) as usize])
                .collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap()
}

/// Every full cycle of length at most `max_len`, once each, in canonical
/// form, sorted by length and then lexicographically.
///
/// `cycle_cap` bounds `max_len`; the smallest meaningful `max_len` is 3
/// (which always yields nothing, since 3-cycles span triangles).
pub fn enumerate_full_cycles(c: &FlagComplex, max_len: usize, cycle_cap: usize) -> Result<Vec<LoopPath>> {
    if !(3..=cycle_cap).contains(&max_len) {
        return Err(Error::CycleCapExceeded { requested: max_len, cap: cycle_cap });
    }
    Ok(full_cycles_between(c, 4, max_len))
}

pub(crate) fn full_cycles_between(c: &FlagComplex, min_len: usize, max_len: usize) -> Vec<LoopPath> {
    let mut cycles = par::flat_map_range(c.vertex_count(), |s| {
        let mut out = Vec::new();
        let mut path = vec![s];
        cycles_from(c, &mut path, min_len, max_len, &mut out);
        out
    });
    cycles.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    cycles.into_iter().map(LoopPath::closed_unchecked).collect()
}

/// Extends the induced path in `path` (whose first vertex is the minimum of
/// any cycle found) and records closing cycles in canonical orientation.
fn cycles_from(c: &FlagComplex, path: &mut Vec<usize>, min_len: usize, max_len: usize, out: &mut Vec<Vec<usize>>) {
    let s = path[0];
    let tip = *path.last().unwrap();
    let k = path.len() - 1;
    for &x in c.neighbors(tip) {
        if x <= s || path.contains(&x) {
            continue;
        }
        // No chords to the interior of the path.
        if k >= 2 && path[1..k].iter().any(|&p| c.adjacent(p, x)) {
            continue;
        }
        if k >= 1 && c.adjacent(s, x) {
            if k >= 2 && path.len() + 1 >= min_len && path[1] < x {
                let mut cycle = path.clone();
                cycle.push(x);
                out.push(cycle);
            }
            continue;
        }
        if path.len() + 2 <= max_len {
            path.push(x);
            cycles_from(c, path, min_len, max_len, out);
            path.pop();
        }
    }
}

/// Tightens an open path to a full path with the same endpoints.
///
/// Scans positions left to right; at the first position `i` with a later
/// vertex equal to it, or a non-consecutive later vertex adjacent to it, the
/// furthest such vertex is used and the vertices in between are dropped.
/// Earlier positions never gain new options, so one pass suffices.
pub fn tighten(c: &FlagComplex, path: &LoopPath) -> LoopPath {
    let mut vs = path.vertices.clone();
    let mut i = 0;
    while i < vs.len() {
        let v = vs[i];
        let target = (i + 1..vs.len()).rev().find(|&j| vs[j] == v || (j > i + 1 && c.adjacent(v, vs[j])));
        if let Some(j) = target {
            if vs[j] == v {
                vs.drain(i + 1..=j);
            } else {
                vs.drain(i + 1..j);
            }
        }
        i += 1;
    }
    LoopPath { vertices: vs, closed: false }
}

/// Smallest vertex whose closed neighborhood contains every loop vertex.
pub fn in_one_ball(c: &FlagComplex, vertices: &[usize]) -> Option<usize> {
    let (&first, _) = vertices.split_first()?;
    let mut candidates: Vec<usize> = c.neighbors(first).to_vec();
    candidates.push(first);
    candidates.sort_unstable();
    candidates.into_iter().find(|&x| vertices.iter().all(|&v| c.adjacent_or_equal(x, v)))
}

/// Evidence about whether a closed loop is null-homotopic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum FillingCertificate {
    /// Every loop vertex lies in the closed neighborhood of `apex`.
    OneBall { apex: usize },
    /// Triangles of a null-homotopy found by elementary moves.
    Diagram { triangles: Vec<[usize; 3]> },
    /// The loop is nonzero in first homology with two-element coefficients,
    /// hence not null-homotopic.
    HomologyObstruction,
    /// Search exhausted its budget without a decision.
    Unknown { budget: usize },
}

impl FillingCertificate {
    pub fn is_null_homotopic(&self) -> bool {
        matches!(self, FillingCertificate::OneBall { .. } | FillingCertificate::Diagram { .. })
    }

    /// Triangles of the filling: the cone for `OneBall`, the stored list for
    /// `Diagram`, nothing otherwise.
    pub fn triangles(&self, loop_vertices: &[usize]) -> Vec<[usize; 3]> {
        match self {
            FillingCertificate::OneBall { apex } => cone_triangles(*apex, loop_vertices),
            FillingCertificate::Diagram { triangles } => triangles.clone(),
            _ => Vec::new(),
        }
    }
}

fn sorted3(a: usize, b: usize, c: usize) -> [usize; 3] {
    let mut t = [a, b, c];
    t.sort_unstable();
    t
}

/// Cone from `apex` over a closed walk, skipping degenerate triangles.
pub fn cone_triangles(apex: usize, walk: &[usize]) -> Vec<[usize; 3]> {
    let n = walk.len();
    (0..n)
        .filter_map(|i| {
            let (a, b) = (walk[i], walk[(i + 1) % n]);
            (apex != a && apex != b && a != b).then(|| sorted3(apex, a, b))
        })
        .collect()
}

/// Mod-2 boundary of a triangle list equals the mod-2 edge set of the walk.
pub fn boundary_matches(c: &FlagComplex, triangles: &[[usize; 3]], walk: &[usize]) -> bool {
    let mut parity: HashMap<(usize, usize), bool> = HashMap::new();
    let mut flip = |a: usize, b: usize| {
        let e = (a.min(b), a.max(b));
        let entry = parity.entry(e).or_insert(false);
        *entry = !*entry;
    };
    for t in triangles {
        if !(c.adjacent(t[0], t[1]) && c.adjacent(t[1], t[2]) && c.adjacent(t[0], t[2])) {
            return false;
        }
        flip(t[0], t[1]);
        flip(t[1], t[2]);
        flip(t[0], t[2]);
    }
    let n = walk.len();
    if n >= 2 {
        for i in 0..n {
            let (a, b) = (walk[i], walk[(i + 1) % n]);
            if a != b {
                flip(a, b);
            }
        }
    }
    parity.values().all(|&odd| !odd)
}

/// Row-reduced basis of the image of the triangle boundary map over GF(2).
#[derive(Debug)]
struct CycleBasis {
    edge_index: HashMap<(usize, usize), usize>,
    words: usize,
    /// Basis row whose highest set bit is this edge.
    pivot: Vec<Option<Vec<u64>>>,
    rank: usize,
}

impl CycleBasis {
    fn new(c: &FlagComplex) -> Self {
        let edge_index: HashMap<(usize, usize), usize> = c.edges().enumerate().map(|(i, e)| (e, i)).collect();
        let words = edge_index.len().div_ceil(64).max(1);
        let mut basis = CycleBasis { edge_index, words, pivot: vec![None; c.edge_count()], rank: 0 };
        for (u, v) in c.edges() {
            for &w in c.neighbors(v) {
                if w > v && c.adjacent(u, w) {
                    let row = basis.vector(&[(u, v), (v, w), (u, w)]);
                    basis.insert(row);
                }
            }
        }
        basis
    }

    fn vector(&self, edges: &[(usize, usize)]) -> Vec<u64> {
        let mut row = vec![0u64; self.words];
        for &(a, b) in edges {
            let i = self.edge_index[&(a.min(b), a.max(b))];
            row[i / 64] ^= 1 << (i % 64);
        }
        row
    }

    fn highest(row: &[u64]) -> Option<usize> {
        row.iter().enumerate().rev().find(|(_, &w)| w != 0).map(|(i, &w)| i * 64 + 63 - w.leading_zeros() as usize)
    }

    fn reduce(&self, mut row: Vec<u64>) -> Vec<u64> {
        while let Some(h) = Self::highest(&row) {
            match &self.pivot[h] {
                Some(p) => row.iter_mut().zip(p).for_each(|(a, b)| *a ^= b),
                None => break,
            }
        }
        row
    }

    fn insert(&mut self, row: Vec<u64>) {
        let row = self.reduce(row);
        if let Some(h) = Self::highest(&row) {
            self.pivot[h] = Some(row);
            self.rank += 1;
        }
    }

    fn is_boundary(&self, walk_edges: &[(usize, usize)]) -> bool {
        Self::highest(&self.reduce(self.vector(walk_edges))).is_none()
    }
}

/// Rank of the first homology group with two-element coefficients.
pub fn h1_rank_mod2(c: &FlagComplex) -> usize {
    let cycle_rank = c.edge_count() + c.components().len() - c.vertex_count();
    cycle_rank - CycleBasis::new(c).rank
}

/// Default bound on the number of search states a single filling explores.
pub const DEFAULT_NODE_LIMIT: usize = 50_000;

/// Bounded null-homotopy search, reusable across many loops of one complex.
#[derive(Debug)]
pub struct Filler<'a> {
    complex: &'a FlagComplex,
    area_budget: usize,
    node_limit: usize,
    basis: OnceLock<CycleBasis>,
}

impl<'a> Filler<'a> {
    pub fn new(complex: &'a FlagComplex, area_budget: usize) -> Self {
        Filler { complex, area_budget, node_limit: DEFAULT_NODE_LIMIT, basis: OnceLock::new() }
    }

    pub fn with_node_limit(mut self, node_limit: usize) -> Self {
        self.node_limit = node_limit;
        self
    }

    pub fn complex(&self) -> &'a FlagComplex {
        self.complex
    }

    fn basis(&self) -> &CycleBasis {
        self.basis.get_or_init(|| CycleBasis::new(self.complex))
    }

    /// Whether the closed walk is a mod-2 boundary.
    pub fn is_null_homologous(&self, walk: &[usize]) -> bool {
        let edges: Vec<(usize, usize)> = closed_walk_edges(walk);
        self.basis().is_boundary(&edges)
    }

    /// Classifies a closed loop.
    pub fn fill(&self, walk: &[usize]) -> FillingCertificate {
        if let Some(apex) = in_one_ball(self.complex, walk) {
            return FillingCertificate::OneBall { apex };
        }
        if !self.is_null_homologous(walk) {
            return FillingCertificate::HomologyObstruction;
        }
        match self.search(walk) {
            Some(triangles) => FillingCertificate::Diagram { triangles },
            None => FillingCertificate::Unknown { budget: self.area_budget },
        }
    }

    /// Re-checks a certificate against the loop it claims to describe.
    pub fn verify(&self, walk: &[usize], cert: &FillingCertificate) -> bool {
        match cert {
            FillingCertificate::OneBall { apex } => walk.iter().all(|&v| self.complex.adjacent_or_equal(*apex, v)),
            FillingCertificate::Diagram { triangles } => {
                triangles.len() <= self.area_budget && boundary_matches(self.complex, triangles, walk)
            }
            FillingCertificate::HomologyObstruction => !self.is_null_homologous(walk),
            FillingCertificate::Unknown { .. } => true,
        }
    }

    /// Best-first search over closed walks using triangle moves. Returns the
    /// triangles of a null-homotopy within the area budget.
    ///
    /// Moves: drop a backtrack `a b a` (free); shortcut `a b c` to `a c` across
    /// a triangle (area 1); push `a b c` to `a t c` across two triangles
    /// (area 2); detour `a c` to `a t c` (area 1). A walk inside a 1-ball is
    /// finished by coning.
    pub(crate) fn search(&self, walk: &[usize]) -> Option<Vec<[usize; 3]>> {
        let c = self.complex;
        let max_len = walk.len() + 2;
        let mut start = walk.to_vec();
        let mut start_tris = Vec::new();
        normalize(c, &mut start, &mut start_tris);

        let mut heap = BinaryHeap::new();
        let mut arena: Vec<(Vec<usize>, Vec<[usize; 3]>)> = Vec::new();
        let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
        let push = |w: Vec<usize>, tris: Vec<[usize; 3]>, heap: &mut BinaryHeap<_>, arena: &mut Vec<_>, seen: &mut HashMap<Vec<usize>, usize>| {
            let area = tris.len();
            if area > self.area_budget {
                return;
            }
            let key = canonical_cycle(&w);
            if seen.get(&key).is_some_and(|&a| a <= area) {
                return;
            }
            seen.insert(key.clone(), area);
            let estimate = area + w.len().saturating_sub(2);
            heap.push(Reverse((estimate, area, key, arena.len())));
            arena.push((w, tris));
        };
        push(start, start_tris, &mut heap, &mut arena, &mut seen);

        let mut expanded = 0;
        while let Some(Reverse((_, area, _, idx))) = heap.pop() {
            let (w, tris) = arena[idx].clone();
            if seen.get(&canonical_cycle(&w)).is_some_and(|&a| a < area) {
                continue;
            }
            if w.len() <= 1 {
                return Some(finish(tris));
            }
            if let Some(apex) = in_one_ball(c, &w) {
                let mut all = tris;
                all.extend(cone_triangles(apex, &w));
                if all.len() <= self.area_budget {
                    return Some(finish(all));
                }
                continue;
            }
            expanded += 1;
            if expanded > self.node_limit {
                return None;
            }
            let n = w.len();
            for i in 0..n {
                let (a, b, d) = (w[(i + n - 1) % n], w[i], w[(i + 1) % n]);
                for t in c.common_neighbors(&[a, b, d]) {
                    let mut next = w.clone();
                    next[i] = t;
                    let mut nt = tris.clone();
                    nt.push(sorted3(a, b, t));
                    nt.push(sorted3(b, d, t));
                    normalize(c, &mut next, &mut nt);
                    push(next, nt, &mut heap, &mut arena, &mut seen);
                }
                if n < max_len {
                    for t in c.common_neighbors(&[b, d]) {
                        let mut next = w.clone();
                        next.insert(i + 1, t);
                        let mut nt = tris.clone();
                        nt.push(sorted3(b, d, t));
                        normalize(c, &mut next, &mut nt);
                        push(next, nt, &mut heap, &mut arena, &mut seen);
                    }
                }
            }
        }
        None
    }
}

fn finish(mut tris: Vec<[usize; 3]>) -> Vec<[usize; 3]> {
    tris.sort_unstable();
    tris
}

fn closed_walk_edges(walk: &[usize]) -> Vec<(usize, usize)> {
    let n = walk.len();
    if n < 2 {
        return Vec::new();
    }
    (0..n).map(|i| (walk[i], walk[(i + 1) % n])).filter(|(a, b)| a != b).collect()
}

/// Applies backtrack removals and triangle shortcuts until none applies.
fn normalize(c: &FlagComplex, w: &mut Vec<usize>, tris: &mut Vec<[usize; 3]>) {
    'outer: loop {
        let n = w.len();
        if n <= 1 {
            return;
        }
        if n == 2 {
            w.truncate(1);
            return;
        }
        for i in 0..n {
            let (prev, next) = (w[(i + n - 1) % n], w[(i + 1) % n]);
            if prev == next {
                // a b a -> a
                w.rotate_left((i + n - 1) % n);
                w.drain(1..3);
                continue 'outer;
            }
        }
        for i in 0..n {
            let (prev, cur, next) = (w[(i + n - 1) % n], w[i], w[(i + 1) % n]);
            if c.adjacent(prev, next) {
                tris.push(sorted3(prev, cur, next));
                w.remove(i);
                continue 'outer;
            }
        }
        return;
    }
}

/// Convenience wrapper around [`Filler::fill`] for a single loop.
pub fn fill(c: &FlagComplex, loop_path: &LoopPath, area_budget: usize) -> Result<FillingCertificate> {
    if !loop_path.is_closed() {
        return Err(Error::InvalidLoop("filling needs a closed loop".into()));
    }
    if area_budget == 0 {
        return Err(Error::InvalidParameter("area budget must be at least 1".into()));
    }
    Ok(Filler::new(c, area_budget).fill(loop_path.vertices()))
}

/// A hub adjacent to every vertex of a full cycle.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Wheel {
    pub hub: usize,
    pub rim: LoopPath,
}

/// All `k`-wheels, ordered by hub and then canonical rim.
pub fn find_wheels(c: &FlagComplex, k: usize, cycle_cap: usize) -> Result<Vec<Wheel>> {
    if k < 4 {
        return Err(Error::InvalidParameter(format!("wheel size {k} < 4")));
    }
    if k > cycle_cap {
        return Err(Error::CycleCapExceeded { requested: k, cap: cycle_cap });
    }
    Ok(par::flat_map_range(c.vertex_count(), |hub| {
        let link = c.link(&[hub]).expect("a vertex is a simplex");
        full_cycles_between(&link.complex, k, k)
            .into_iter()
            .map(|rim| Wheel { hub, rim: LoopPath::closed_unchecked(link.lift(rim.vertices())) })
            .collect()
    }))
}
