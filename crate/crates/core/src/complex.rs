//! Flag simplicial complexes stored as their 1-skeleton.
//!
//! A [`FlagComplex`] keeps only the adjacency relation; its simplices are the
//! cliques of the graph and are enumerated on demand. Vertex indices are
//! dense (`0..vertex_count`) and every set the module hands out is sorted.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par;

/// Combinatorial distance between two vertices.
///
/// `Unreachable` sorts after every finite value. Serialized as a number or
/// the string `"unreachable"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Distance {
    Finite(usize),
    Unreachable,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Unreachable => None,
        }
    }

    pub(crate) fn from_raw(raw: u32) -> Self {
        if raw == UNREACHABLE {
            Distance::Unreachable
        } else {
            Distance::Finite(raw as usize)
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(d) => s.serialize_u64(*d as u64),
            Distance::Unreachable => s.serialize_str("unreachable"),
        }
    }
}

impl<'de> Deserialize<'de> for Distance {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Finite(usize),
            Named(String),
        }
        match Repr::deserialize(d)? {
            Repr::Finite(v) => Ok(Distance::Finite(v)),
            Repr::Named(s) if s == "unreachable" => Ok(Distance::Unreachable),
            Repr::Named(s) => Err(serde::de::Error::custom(format!("unknown distance {s:?}"))),
        }
    }
}

impl Ord for Distance {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Distance::Finite(a), Distance::Finite(b)) => a.cmp(b),
            (Distance::Finite(_), Distance::Unreachable) => Ordering::Less,
            (Distance::Unreachable, Distance::Finite(_)) => Ordering::Greater,
            (Distance::Unreachable, Distance::Unreachable) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Distance {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Unreachable => f.write_str("unreachable"),
        }
    }
}

/// Raw BFS marker for "not reached".
pub(crate) const UNREACHABLE: u32 = u32::MAX;

/// A simplex: a strictly increasing list of pairwise adjacent vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    /// Normalizes `vertices` (sort + dedup) and checks it spans a simplex of `c`.
    pub fn new(c: &FlagComplex, mut vertices: Vec<usize>) -> Result<Self> {
        vertices.sort_unstable();
        vertices.dedup();
        c.check_vertices(&vertices)?;
        if vertices.is_empty() || !c.is_clique(&vertices) {
            return Err(Error::NotASimplex(vertices));
        }
        Ok(Simplex(vertices))
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn dimension(&self) -> usize {
        self.0.len() - 1
    }

    pub fn into_vertices(self) -> Vec<usize> {
        self.0
    }
}

/// Canonical order on simplices: by size, then lexicographically.
pub(crate) fn simplex_order(a: &[usize], b: &[usize]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// The flag complex determined by a simple graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagComplex {
    neighbors: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
    boundary: Vec<usize>,
}

impl FlagComplex {
    /// Builds the flag complex of the graph with the given edges.
    ///
    /// Edges may repeat and come in either orientation.
    pub fn new(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut neighbors = vec![Vec::new(); vertex_count];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(Error::VertexOutOfRange { vertex: w, count: vertex_count });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            neighbors[u].push(v);
            neighbors[v].push(u);
        }
        for list in &mut neighbors {
            list.sort_unstable();
            list.dedup();
        }
        Ok(FlagComplex { neighbors, labels: None, boundary: Vec::new() })
    }

    /// Attaches per-vertex labels.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.vertex_count() {
            return Err(Error::InvalidParameter(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.vertex_count()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Marks window-boundary vertices: vertices of a finite window that have
    /// neighbors outside the window in the complex it was cut from.
    ///
    /// An empty boundary means the complex is the whole space.
    pub fn with_boundary(mut self, mut boundary: Vec<usize>) -> Result<Self> {
        boundary.sort_unstable();
        boundary.dedup();
        self.check_vertices(&boundary)?;
        self.boundary = boundary;
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.neighbors.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn boundary(&self) -> &[usize] {
        &self.boundary
    }

    pub fn is_windowed(&self) -> bool {
        !self.boundary.is_empty()
    }

    /// `u ~ v` as an edge (irreflexive).
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.neighbors[u].binary_search(&v).is_ok()
    }

    /// `u ~ v` in the reflexive sense: equal or adjacent.
    pub fn adjacent_or_equal(&self, u: usize, v: usize) -> bool {
        u == v || self.adjacent(u, v)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.neighbors
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.vertex_count() {
            Err(Error::VertexOutOfRange { vertex: v, count: self.vertex_count() })
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_vertices(&self, vs: &[usize]) -> Result<()> {
        vs.iter().try_for_each(|&v| self.check_vertex(v))
    }

    /// True when the vertices are pairwise adjacent (duplicates not allowed).
    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(i, &u)| vs[i + 1..].iter().all(|&v| self.adjacent(u, v)))
    }

    /// Vertices adjacent to every vertex of `vs` and not in `vs`.
    pub fn common_neighbors(&self, vs: &[usize]) -> Vec<usize> {
        let Some((&first, rest)) = vs.split_first() else {
            return (0..self.vertex_count()).collect();
        };
        self.neighbors[first]
            .iter()
            .copied()
            .filter(|&w| rest.iter().all(|&v| self.adjacent(v, w)))
            .collect()
    }

    /// All simplices with at most `cap` vertices, in canonical order (size,
    /// then lexicographic). Fails if some clique is larger than `cap`.
    pub fn simplices(&self, cap: usize) -> Result<Vec<Simplex>> {
        self.collect_cliques(cap, true)
    }

    /// Like [`simplices`](Self::simplices) but silently drops cliques larger
    /// than `cap`.
    pub(crate) fn simplices_truncated(&self, cap: usize) -> Vec<Simplex> {
        self.collect_cliques(cap, false).expect("truncating enumeration cannot fail")
    }

    fn collect_cliques(&self, cap: usize, strict: bool) -> Result<Vec<Simplex>> {
        let per_vertex = par::map_range(self.vertex_count(), |v| {
            let mut out = Vec::new();
            let candidates: Vec<usize> =
                self.neighbors[v].iter().copied().filter(|&w| w > v).collect();
            self.extend_cliques(&mut vec![v], &candidates, cap, strict, &mut out)?;
            Ok(out)
        });
        let mut all = Vec::new();
        for part in per_vertex {
            all.extend(part?);
        }
        all.sort_by(|a: &Vec<usize>, b| simplex_order(a, b));
        Ok(all.into_iter().map(Simplex).collect())
    }

    fn extend_cliques(
        &self,
        clique: &mut Vec<usize>,
        candidates: &[usize],
        cap: usize,
        strict: bool,
        out: &mut Vec<Vec<usize>>,
    ) -> Result<()> {
        if clique.len() > cap {
            if strict {
                return Err(Error::CliqueCapExceeded { size: clique.len(), cap });
            }
            return Ok(());
        }
        out.push(clique.clone());
        for (i, &w) in candidates.iter().enumerate() {
            let next: Vec<usize> =
                candidates[i + 1..].iter().copied().filter(|&x| self.adjacent(w, x)).collect();
            clique.push(w);
            self.extend_cliques(clique, &next, cap, strict, out)?;
            clique.pop();
        }
        Ok(())
    }

    /// Maximal simplices (maximal cliques), sorted canonically.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut out = Vec::new();
        let all: Vec<usize> = (0..self.vertex_count()).collect();
        self.bron_kerbosch(&mut Vec::new(), all, Vec::new(), &mut out);
        for s in &mut out {
            s.sort_unstable();
        }
        out.sort_by(|a, b| simplex_order(a, b));
        out.into_iter().map(Simplex).collect()
    }

    fn bron_kerbosch(
        &self,
        r: &mut Vec<usize>,
        p: Vec<usize>,
        x: Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if p.is_empty() {
            if x.is_empty() {
                out.push(r.clone());
            }
            return;
        }
        let pivot = p
            .iter()
            .chain(&x)
            .copied()
            .max_by_key(|&u| p.iter().filter(|&&v| self.adjacent(u, v)).count())
            .expect("p is non-empty");
        let branch: Vec<usize> =
            p.iter().copied().filter(|&v| !self.adjacent(pivot, v)).collect();
        let mut p = p;
        let mut x = x;
        for v in branch {
            let np = p.iter().copied().filter(|&w| self.adjacent(v, w)).collect();
            let nx = x.iter().copied().filter(|&w| self.adjacent(v, w)).collect();
            r.push(v);
            self.bron_kerbosch(r, np, nx, out);
            r.pop();
            p.retain(|&w| w != v);
            x.push(v);
        }
    }

    /// The full subcomplex spanned by `vertices`.
    pub fn span(&self, vertices: &[usize]) -> Result<SubcomplexView<'_>> {
        self.check_vertices(vertices)?;
        Ok(SubcomplexView::new(self, vertices.to_vec()))
    }

    /// The link of a simplex: the full subcomplex on the vertices outside
    /// `simplex` that are adjacent to all of it.
    pub fn link(&self, simplex: &[usize]) -> Result<InducedComplex> {
        self.check_vertices(simplex)?;
        let mut s = simplex.to_vec();
        s.sort_unstable();
        s.dedup();
        if s.is_empty() || !self.is_clique(&s) {
            return Err(Error::NotASimplex(s));
        }
        Ok(self.induced(&self.common_neighbors(&s)))
    }

    /// Materializes the full subcomplex on a sorted vertex set.
    pub(crate) fn induced(&self, sorted: &[usize]) -> InducedComplex {
        let index = |v: usize| sorted.binary_search(&v).ok();
        let mut edges = Vec::new();
        for (i, &u) in sorted.iter().enumerate() {
            for &v in &self.neighbors[u] {
                if v > u {
                    if let Some(j) = index(v) {
                        edges.push((i, j));
                    }
                }
            }
        }
        let mut complex =
            FlagComplex::new(sorted.len(), &edges).expect("induced edges are in range");
        if let Some(labels) = &self.labels {
            complex.labels = Some(sorted.iter().map(|&v| labels[v].clone()).collect());
        }
        complex.boundary = sorted
            .iter()
            .enumerate()
            .filter(|(_, v)| self.boundary.binary_search(v).is_ok())
            .map(|(i, _)| i)
            .collect();
        InducedComplex { complex, to_parent: sorted.to_vec() }
    }

    /// Breadth-first distances from `source` (raw; `UNREACHABLE` marks other
    /// components).
    pub(crate) fn bfs_raw(&self, source: usize) -> Vec<u32> {
        self.bfs_restricted(source, |_| true)
    }

    pub(crate) fn bfs_restricted(&self, source: usize, allowed: impl Fn(usize) -> bool) -> Vec<u32> {
        let mut dist = vec![UNREACHABLE; self.vertex_count()];
        if !allowed(source) {
            return dist;
        }
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u];
            for &w in &self.neighbors[u] {
                if dist[w] == UNREACHABLE && allowed(w) {
                    dist[w] = du + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Distances from `source` to every vertex.
    pub fn distances_from(&self, source: usize) -> Result<Vec<Distance>> {
        self.check_vertex(source)?;
        Ok(self.bfs_raw(source).into_iter().map(Distance::from_raw).collect())
    }

    /// Shortest-path length in the 1-skeleton.
    pub fn distance(&self, u: usize, v: usize) -> Result<Distance> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(Distance::from_raw(self.bfs_raw(u)[v]))
    }

    /// Full subcomplex on the vertices at distance at most `radius` from `center`.
    pub fn ball(&self, center: usize, radius: usize) -> Result<SubcomplexView<'_>> {
        self.check_vertex(center)?;
        let dist = self.bfs_raw(center);
        let vs = (0..self.vertex_count()).filter(|&u| dist[u] as usize <= radius && dist[u] != UNREACHABLE);
        Ok(SubcomplexView::new(self, vs.collect()))
    }

    /// Full subcomplex on the vertices at distance exactly `radius` from `center`.
    pub fn sphere(&self, center: usize, radius: usize) -> Result<SubcomplexView<'_>> {
        self.check_vertex(center)?;
        let dist = self.bfs_raw(center);
        let vs = (0..self.vertex_count()).filter(|&u| dist[u] != UNREACHABLE && dist[u] as usize == radius);
        Ok(SubcomplexView::new(self, vs.collect()))
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.vertex_count()];
        let mut out = Vec::new();
        for s in 0..self.vertex_count() {
            if seen[s] {
                continue;
            }
            let dist = self.bfs_raw(s);
            let comp: Vec<usize> = (0..self.vertex_count()).filter(|&u| dist[u] != UNREACHABLE).collect();
            for &u in &comp {
                seen[u] = true;
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() <= 1 || self.bfs_raw(0).iter().all(|&d| d != UNREACHABLE)
    }

    /// Largest finite distance from `v`.
    pub fn eccentricity(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.bfs_raw(v).into_iter().filter(|&d| d != UNREACHABLE).max().unwrap_or(0) as usize)
    }

    /// All-pairs distances (one breadth-first search per vertex).
    pub fn distance_matrix(&self) -> DistanceMatrix {
        let rows = par::map_range(self.vertex_count(), |v| self.bfs_raw(v));
        DistanceMatrix { n: self.vertex_count(), data: rows.concat() }
    }

    /// Distance from each vertex to the window boundary.
    pub fn window(&self) -> Window {
        let mut dist = vec![UNREACHABLE; self.vertex_count()];
        let mut queue: VecDeque<usize> = self.boundary.iter().copied().collect();
        for &b in &self.boundary {
            dist[b] = 0;
        }
        while let Some(u) = queue.pop_front() {
            for &w in &self.neighbors[u] {
                if dist[w] == UNREACHABLE {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        Window { windowed: self.is_windowed(), to_boundary: dist }
    }
}

/// A full subcomplex given by its vertex set; adjacency comes from the parent.
#[derive(Debug, Clone)]
pub struct SubcomplexView<'a> {
    parent: &'a FlagComplex,
    vertices: Vec<usize>,
    member: Vec<bool>,
}

impl<'a> SubcomplexView<'a> {
    pub(crate) fn new(parent: &'a FlagComplex, mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        let mut member = vec![false; parent.vertex_count()];
        for &v in &vertices {
            member[v] = true;
        }
        SubcomplexView { parent, vertices, member }
    }

    pub fn parent(&self) -> &'a FlagComplex {
        self.parent
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.member.get(v).copied().unwrap_or(false)
    }

    /// Edges of the view, as parent-vertex pairs `(u, v)` with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.vertices
            .iter()
            .flat_map(|&u| {
                self.parent.neighbors(u).iter().filter(move |&&v| v > u && self.contains(v)).map(move |&v| (u, v))
            })
            .collect()
    }

    /// Breadth-first distances inside the view, indexed by parent vertex.
    pub(crate) fn bfs_raw(&self, source: usize) -> Vec<u32> {
        self.parent.bfs_restricted(source, |v| self.member[v])
    }

    /// Distance measured in the view's own 1-skeleton.
    pub fn distance(&self, u: usize, v: usize) -> Distance {
        if !self.contains(u) || !self.contains(v) {
            return Distance::Unreachable;
        }
        Distance::from_raw(self.bfs_raw(u)[v])
    }

    /// Copies the view out as a standalone complex.
    pub fn to_complex(&self) -> InducedComplex {
        self.parent.induced(&self.vertices)
    }
}

/// A full subcomplex materialized as its own complex, with the vertex map back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedComplex {
    pub complex: FlagComplex,
    /// `to_parent[i]` is the parent vertex of local vertex `i` (increasing).
    pub to_parent: Vec<usize>,
}

impl InducedComplex {
    pub fn local_index(&self, parent_vertex: usize) -> Option<usize> {
        self.to_parent.binary_search(&parent_vertex).ok()
    }

    pub fn lift(&self, local: &[usize]) -> Vec<usize> {
        local.iter().map(|&v| self.to_parent[v]).collect()
    }
}

/// Dense all-pairs distance table.
#[derive(Debug, Clone)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<u32>,
}

impl DistanceMatrix {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, u: usize, v: usize) -> Distance {
        Distance::from_raw(self.data[u * self.n + v])
    }

    pub(crate) fn raw(&self, u: usize, v: usize) -> u32 {
        self.data[u * self.n + v]
    }

    pub(crate) fn row(&self, u: usize) -> &[u32] {
        &self.data[u * self.n..(u + 1) * self.n]
    }

    pub fn is_connected(&self) -> bool {
        !self.data.contains(&UNREACHABLE)
    }
}

/// Distances to the window boundary, used to decide when a distance measured
/// inside a finite window equals the distance in the complex it came from.
#[derive(Debug, Clone)]
pub struct Window {
    windowed: bool,
    to_boundary: Vec<u32>,
}

impl Window {
    pub fn is_windowed(&self) -> bool {
        self.windowed
    }

    /// Window distance from `v` to the nearest boundary vertex.
    pub fn to_boundary(&self, v: usize) -> Distance {
        if self.windowed {
            Distance::from_raw(self.to_boundary[v])
        } else {
            Distance::Unreachable
        }
    }

    /// Whether a window distance `d` between `x` and `y` is exact in the
    /// ambient complex.
    ///
    /// A path that leaves the window exits at a boundary vertex and re-enters
    /// at one, so it has length at least `b(x) + b(y) + 2`; any window path no
    /// longer than that is already shortest.
    pub fn certifies(&self, x: usize, y: usize, d: Distance) -> bool {
        if !self.windowed {
            return true;
        }
        let Distance::Finite(d) = d else { return false };
        let (bx, by) = (self.to_boundary[x], self.to_boundary[y]);
        if bx == UNREACHABLE || by == UNREACHABLE {
            // Component without boundary vertices: nothing leaves it.
            return true;
        }
        d <= bx as usize + by as usize + 2
    }
}

/// Result of [`ingest_explicit`] when the simplex list is not flag.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error, Serialize, Deserialize)]
#[error("complex is not flag: {witness:?} is pairwise adjacent but not a simplex")]
pub struct FlagViolation {
    /// Smallest clique of the 1-skeleton missing from the simplex list.
    pub witness: Vec<usize>,
}

/// Failure modes of [`ingest_explicit`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IngestError {
    #[error(transparent)]
    Invalid(#[from] Error),
    #[error(transparent)]
    NotFlag(#[from] FlagViolation),
}

/// Accepts an explicit simplex list (closed under faces after normalization)
/// and returns its flag complex, or the smallest clique that the list misses.
pub fn ingest_explicit(
    vertex_count: usize,
    simplices: &[Vec<usize>],
) -> std::result::Result<FlagComplex, IngestError> {
    let mut faces: HashSet<Vec<usize>> = HashSet::new();
    let mut edges = Vec::new();
    for s in simplices {
        let mut s = s.clone();
        s.sort_unstable();
        s.dedup();
        if s.is_empty() {
            continue;
        }
        if let Some(&v) = s.iter().find(|&&v| v >= vertex_count) {
            return Err(Error::VertexOutOfRange { vertex: v, count: vertex_count }.into());
        }
        if s.len() > 24 {
            return Err(Error::CliqueCapExceeded { size: s.len(), cap: 24 }.into());
        }
        // Close under faces.
        for mask in 1u32..(1 << s.len()) {
            let face: Vec<usize> =
                s.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &v)| v).collect();
            if face.len() == 2 {
                edges.push((face[0], face[1]));
            }
            faces.insert(face);
        }
    }
    let complex = FlagComplex::new(vertex_count, &edges)?;
    let max_face = faces.iter().map(Vec::len).max().unwrap_or(1);
    // Any missing clique contains a missing clique of size at most
    // `max_face + 1`, so the smallest witness lies below that size.
    let cliques = complex.simplices_truncated(max_face + 1);
    if let Some(missing) = cliques.iter().find(|c| c.vertices().len() > 1 && !faces.contains(c.vertices())) {
        return Err(FlagViolation { witness: missing.vertices().to_vec() }.into());
    }
    Ok(complex)
}

/// Sorted, deduplicated vertex set.
pub(crate) fn sorted_set(vs: impl IntoIterator<Item = usize>) -> Vec<usize> {
    vs.into_iter().collect::<BTreeSet<_>>().into_iter().collect()
}
