//! Simplicial isometries: automorphisms and window-restricted partial maps,
//! displacement, minimal sets, invariant geodesics and the graph of axes.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::complex::{simplex_order, Distance, DistanceMatrix, FlagComplex, SubcomplexView, Window, UNREACHABLE};
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::par;
use crate::verdict::{Verdict, Witness};

/// A vertex map that preserves adjacency in both directions on its domain.
///
/// Total maps are automorphisms. Partial maps represent an isometry of a
/// larger (typically infinite, periodic) complex on a finite window.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Isometry {
    image: Vec<Option<usize>>,
}

/// Why a vertex map is not an isometry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum MapViolation {
    WrongLength { expected: usize, found: usize },
    OutOfRange { vertex: usize, image: usize },
    NotInjective { first: usize, second: usize, image: usize },
    /// `u ~ v` but the images are not adjacent.
    EdgeNotPreserved { u: usize, v: usize },
    /// The images are adjacent but `u`, `v` are not.
    NonEdgeNotPreserved { u: usize, v: usize },
    EmptyDomain,
    /// The domain spans a disconnected subcomplex; `vertex` is outside the
    /// component of the smallest domain vertex.
    DomainDisconnected { vertex: usize },
}

impl std::fmt::Display for MapViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MapViolation::WrongLength { expected, found } => write!(f, "map has {found} entries, expected {expected}"),
            MapViolation::OutOfRange { vertex, image } => write!(f, "vertex {vertex} maps to {image}, out of range"),
            MapViolation::NotInjective { first, second, image } => {
                write!(f, "vertices {first} and {second} both map to {image}")
            }
            MapViolation::EdgeNotPreserved { u, v } => write!(f, "edge {u}-{v} is not mapped to an edge"),
            MapViolation::NonEdgeNotPreserved { u, v } => write!(f, "non-edge {u}-{v} is mapped to an edge"),
            MapViolation::EmptyDomain => f.write_str("empty domain"),
            MapViolation::DomainDisconnected { vertex } => write!(f, "domain is disconnected at vertex {vertex}"),
        }
    }
}

/// Checks that a total map is a bijective, adjacency-preserving vertex map.
pub fn check_automorphism(c: &FlagComplex, map: &[usize]) -> std::result::Result<(), MapViolation> {
    let image: Vec<Option<usize>> = map.iter().map(|&v| Some(v)).collect();
    check_map(c, &image, false)
}

/// Checks a partial map: injective, adjacency-preserving both ways on its
/// domain, with an induced-connected domain.
pub fn check_partial_automorphism(c: &FlagComplex, map: &[Option<usize>]) -> std::result::Result<(), MapViolation> {
    check_map(c, map, true)
}

fn check_map(c: &FlagComplex, map: &[Option<usize>], partial: bool) -> std::result::Result<(), MapViolation> {
    let n = c.vertex_count();
    if map.len() != n {
        return Err(MapViolation::WrongLength { expected: n, found: map.len() });
    }
    let mut preimage: Vec<Option<usize>> = vec![None; n];
    let mut domain = Vec::new();
    for (v, &img) in map.iter().enumerate() {
        let Some(img) = img else { continue };
        if img >= n {
            return Err(MapViolation::OutOfRange { vertex: v, image: img });
        }
        if let Some(first) = preimage[img] {
            return Err(MapViolation::NotInjective { first, second: v, image: img });
        }
        preimage[img] = Some(v);
        domain.push(v);
    }
    if domain.is_empty() {
        return Err(MapViolation::EmptyDomain);
    }
    for &u in &domain {
        for &v in c.neighbors(u) {
            if u < v {
                if let Some(hv) = map[v] {
                    if !c.adjacent(map[u].unwrap(), hv) {
                        return Err(MapViolation::EdgeNotPreserved { u, v });
                    }
                }
            }
        }
    }
    for &u in &domain {
        let a = map[u].unwrap();
        for &b in c.neighbors(a) {
            if let Some(v) = preimage[b] {
                if !c.adjacent(u, v) {
                    return Err(MapViolation::NonEdgeNotPreserved { u: u.min(v), v: u.max(v) });
                }
            }
        }
    }
    if partial {
        let in_domain = |v: usize| map[v].is_some();
        let d = c.bfs_restricted(domain[0], in_domain);
        if let Some(&v) = domain.iter().find(|&&v| d[v] == UNREACHABLE) {
            return Err(MapViolation::DomainDisconnected { vertex: v });
        }
    }
    Ok(())
}

impl Isometry {
    /// Validates a map with `None` for vertices outside the domain. A map
    /// without `None` entries must be an automorphism.
    pub fn new(c: &FlagComplex, image: Vec<Option<usize>>) -> Result<Self> {
        let partial = image.iter().any(Option::is_none);
        check_map(c, &image, partial).map_err(|v| Error::InvalidMap(v.to_string()))?;
        Ok(Isometry { image })
    }

    /// Validates an automorphism.
    pub fn total(c: &FlagComplex, map: Vec<usize>) -> Result<Self> {
        check_automorphism(c, &map).map_err(|v| Error::InvalidMap(v.to_string()))?;
        Ok(Isometry::total_unchecked(map))
    }

    pub(crate) fn total_unchecked(map: Vec<usize>) -> Self {
        Isometry { image: map.into_iter().map(Some).collect() }
    }

    pub(crate) fn partial_unchecked(image: Vec<Option<usize>>) -> Self {
        Isometry { image }
    }

    pub fn identity(n: usize) -> Self {
        Isometry::total_unchecked((0..n).collect())
    }

    pub fn images(&self) -> &[Option<usize>] {
        &self.image
    }

    pub fn apply(&self, v: usize) -> Option<usize> {
        self.image.get(v).copied().flatten()
    }

    pub fn vertex_count(&self) -> usize {
        self.image.len()
    }

    pub fn is_total(&self) -> bool {
        self.image.iter().all(Option::is_some)
    }

    /// Sorted domain.
    pub fn domain(&self) -> Vec<usize> {
        (0..self.image.len()).filter(|&v| self.image[v].is_some()).collect()
    }

    pub fn inverse(&self) -> Isometry {
        let mut inv = vec![None; self.image.len()];
        for (v, img) in self.image.iter().enumerate() {
            if let Some(img) = *img {
                inv[img] = Some(v);
            }
        }
        Isometry { image: inv }
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        Isometry { image: other.image.iter().map(|img| img.and_then(|v| self.apply(v))).collect() }
    }

    /// The `n`-fold composite; negative powers use the inverse. The zeroth
    /// power exists only for total maps.
    pub fn power(&self, n: i64) -> Result<Isometry> {
        if n == 0 {
            if !self.is_total() {
                return Err(Error::InvalidParameter("zeroth power of a partial map".into()));
            }
            return Ok(Isometry::identity(self.image.len()));
        }
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut result = base.clone();
        for _ in 1..n.unsigned_abs() {
            result = base.compose(&result);
        }
        if result.image.iter().all(Option::is_none) {
            return Err(Error::EmptyDomain);
        }
        Ok(result)
    }

    /// The orbit of `v` when it closes up inside the domain.
    pub fn closed_orbit(&self, v: usize) -> Option<Vec<usize>> {
        let mut orbit = vec![v];
        let mut cur = self.apply(v)?;
        while cur != v {
            if orbit.len() > self.image.len() {
                return None;
            }
            orbit.push(cur);
            cur = self.apply(cur)?;
        }
        orbit.sort_unstable();
        Some(orbit)
    }
}

/// Elliptic maps fix a simplex setwise; all others are hyperbolic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Classification {
    /// `simplex` is the smallest invariant simplex (by size, then
    /// lexicographically).
    Elliptic { simplex: Vec<usize> },
    Hyperbolic,
}

/// An invariant simplex is a union of closed orbits, each of which is then
/// itself an invariant simplex, so it suffices to look for a closed orbit
/// that is a clique.
pub fn classify(c: &FlagComplex, h: &Isometry, clique_cap: usize) -> Result<Classification> {
    let n = c.vertex_count();
    let mut seen = vec![false; n];
    let mut best: Option<Vec<usize>> = None;
    for v in 0..n {
        if seen[v] {
            continue;
        }
        let Some(orbit) = h.closed_orbit(v) else { continue };
        for &u in &orbit {
            seen[u] = true;
        }
        if !c.is_clique(&orbit) {
            continue;
        }
        if orbit.len() > clique_cap {
            return Err(Error::CliqueCapExceeded { size: orbit.len(), cap: clique_cap });
        }
        if best.as_ref().is_none_or(|b| simplex_order(&orbit, b).is_lt()) {
            best = Some(orbit);
        }
    }
    Ok(best.map_or(Classification::Hyperbolic, |simplex| Classification::Elliptic { simplex }))
}

/// Displacement of one domain vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexDisplacement {
    pub vertex: usize,
    pub image: usize,
    pub displacement: Distance,
    /// Whether the window distance is guaranteed to equal the ambient one.
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisplacementReport {
    /// One entry per domain vertex, in vertex order.
    pub displacements: Vec<VertexDisplacement>,
    /// Minimum over certified displacements.
    pub translation_length: usize,
    /// Certified vertices attaining the minimum.
    pub min_vertices: Vec<usize>,
    pub classification: Classification,
}

fn check_len(c: &FlagComplex, h: &Isometry) -> Result<()> {
    if h.vertex_count() != c.vertex_count() {
        return Err(Error::InvalidMap(format!(
            "map has {} entries, expected {}",
            h.vertex_count(),
            c.vertex_count()
        )));
    }
    Ok(())
}

/// Breadth-first distance from `x` to `y`, stopping early.
fn bfs_distance(c: &FlagComplex, x: usize, y: usize) -> Distance {
    if x == y {
        return Distance::Finite(0);
    }
    let mut dist = vec![UNREACHABLE; c.vertex_count()];
    dist[x] = 0;
    let mut queue = VecDeque::from([x]);
    while let Some(u) = queue.pop_front() {
        for &v in c.neighbors(u) {
            if dist[v] == UNREACHABLE {
                dist[v] = dist[u] + 1;
                if v == y {
                    return Distance::Finite(dist[v] as usize);
                }
                queue.push_back(v);
            }
        }
    }
    Distance::Unreachable
}

/// Displacement of every domain vertex, translation length, minimal set and
/// classification.
pub fn displacement_profile(c: &FlagComplex, h: &Isometry, clique_cap: usize) -> Result<DisplacementReport> {
    check_len(c, h)?;
    let window = c.window();
    let domain = h.domain();
    let displacements = par::map(&domain, |&x| {
        let image = h.apply(x).expect("domain vertex");
        let displacement = bfs_distance(c, x, image);
        VertexDisplacement { vertex: x, image, displacement, certified: window.certifies(x, image, displacement) }
    });
    let translation_length = displacements
        .iter()
        .filter(|d| d.certified)
        .filter_map(|d| d.displacement.finite())
        .min()
        .ok_or(Error::NoCertifiedVertices)?;
    let min_vertices = displacements
        .iter()
        .filter(|d| d.certified && d.displacement == Distance::Finite(translation_length))
        .map(|d| d.vertex)
        .collect();
    let classification = classify(c, h, clique_cap)?;
    Ok(DisplacementReport { displacements, translation_length, min_vertices, classification })
}

/// The minimal displacement set and whether `h` maps it into itself.
#[derive(Debug, Clone)]
pub struct MinSet<'a> {
    pub view: SubcomplexView<'a>,
    /// Every minimal vertex whose image is defined and has a certified
    /// displacement maps into the set.
    pub h_invariant: bool,
}

pub fn min_set<'a>(c: &'a FlagComplex, h: &Isometry, report: &DisplacementReport) -> Result<MinSet<'a>> {
    let view = c.span(&report.min_vertices)?;
    let certified: HashMap<usize, bool> = report.displacements.iter().map(|d| (d.vertex, d.certified)).collect();
    let h_invariant = report.min_vertices.iter().all(|&x| match h.apply(x) {
        Some(y) if certified.get(&y).copied().unwrap_or(false) => view.contains(y),
        _ => true,
    });
    Ok(MinSet { view, h_invariant })
}

/// Distances inside `sub` equal distances in `c` for every pair whose
/// distance in `c` is certified. Fails with the first violating pair.
pub fn check_isometric_embedding(c: &FlagComplex, sub: &SubcomplexView<'_>) -> Result<Verdict> {
    if sub.is_empty() {
        return Err(Error::InvalidParameter("empty subcomplex".into()));
    }
    let window = c.window();
    let vs = sub.vertices();
    let found = par::map_range(vs.len(), |i| {
        let u = vs[i];
        let inner = sub.bfs_raw(u);
        let outer = c.bfs_raw(u);
        vs[i + 1..].iter().find_map(|&v| {
            let ambient = Distance::from_raw(outer[v]);
            if !window.certifies(u, v, ambient) {
                return None;
            }
            let within = Distance::from_raw(inner[v]);
            (within != ambient).then_some(Witness::DistanceMismatch { u, v, sub_distance: within, ambient_distance: ambient })
        })
    });
    Ok(found.into_iter().flatten().next().map_or(Verdict::Pass, Verdict::fail))
}

/// The minimal set as a complex in its own right, with its boundary marked
/// where it meets the window boundary or the rest of `c`.
pub fn min_set_complex(c: &FlagComplex, min_vertices: &[usize]) -> Result<crate::complex::InducedComplex> {
    c.check_vertices(min_vertices)?;
    let mut ind = c.induced(&crate::complex::sorted_set(min_vertices.iter().copied()));
    let window = c.window();
    let boundary: Vec<usize> = ind
        .to_parent
        .iter()
        .enumerate()
        .filter(|&(_, &y)| {
            window.to_boundary(y) == Distance::Finite(0)
                || c.neighbors(y).iter().any(|&z| ind.local_index(z).is_none())
        })
        .map(|(i, _)| i)
        .collect();
    ind.complex = ind.complex.clone().with_boundary(boundary)?;
    Ok(ind)
}

/// Recomputes displacement inside `Y = Min(h)`. Passes when `h` restricted
/// to `Y` has the same translation length and every certified vertex of
/// `Y` is minimal there.
pub fn min_idempotence(c: &FlagComplex, h: &Isometry, clique_cap: usize) -> Result<Verdict> {
    let report = displacement_profile(c, h, clique_cap)?;
    let y = min_set_complex(c, &report.min_vertices)?;
    let mut restricted = Vec::with_capacity(y.to_parent.len());
    for &v in &y.to_parent {
        restricted.push(match h.apply(v) {
            Some(img) => match y.local_index(img) {
                Some(local) => Some(local),
                None if h.is_total() => return Err(Error::DoesNotRestrict(v)),
                None => None,
            },
            None => None,
        });
    }
    let hy = Isometry::partial_unchecked(restricted);
    if hy.domain().is_empty() {
        return Err(Error::EmptyDomain);
    }
    let inner = displacement_profile(&y.complex, &hy, clique_cap)?;
    let expected = report.translation_length;
    let bad = inner
        .displacements
        .iter()
        .find(|d| d.certified && d.displacement != Distance::Finite(expected));
    Ok(match bad {
        Some(d) => Verdict::fail(Witness::Displacement { vertex: y.to_parent[d.vertex], expected, found: d.displacement }),
        None if inner.translation_length != expected => Verdict::fail(Witness::Displacement {
            vertex: y.to_parent[inner.min_vertices[0]],
            expected,
            found: Distance::Finite(inner.translation_length),
        }),
        None => Verdict::Pass,
    })
}

/// An invariant path: the concatenation of the images of one geodesic
/// segment under the powers of a map. Closed when the orbit returns to the
/// start.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Axis {
    pub vertices: Vec<usize>,
    pub closed: bool,
}

/// Geodesics from `x` to `y` in lexicographic order, at most `cap` of them.
/// The flag is true when every geodesic was listed.
pub fn geodesics_between(c: &FlagComplex, x: usize, y: usize, cap: usize) -> (Vec<Vec<usize>>, bool) {
    let to_y = c.bfs_raw(y);
    if to_y[x] == UNREACHABLE {
        return (Vec::new(), true);
    }
    let mut out = Vec::new();
    let mut path = vec![x];
    let complete = geodesic_dfs(c, &to_y, &mut path, cap, &mut out);
    (out, complete)
}

fn geodesic_dfs(c: &FlagComplex, to_y: &[u32], path: &mut Vec<usize>, cap: usize, out: &mut Vec<Vec<usize>>) -> bool {
    let u = *path.last().unwrap();
    if to_y[u] == 0 {
        if out.len() == cap {
            return false;
        }
        out.push(path.clone());
        return true;
    }
    for &v in c.neighbors(u) {
        if to_y[v] + 1 == to_y[u] {
            path.push(v);
            let complete = geodesic_dfs(c, to_y, path, cap, out);
            path.pop();
            if !complete {
                return false;
            }
        }
    }
    true
}

/// Concatenates `g^k(segment)` for every `k` for which the image is defined.
/// `segment` must run from some `x` to `g(x)`.
pub fn stitch(g: &Isometry, segment: &[usize]) -> Axis {
    let first = segment[0];
    let mut walk = segment.to_vec();
    let mut last: Vec<usize> = segment.to_vec();
    let mut closed = *segment.last().unwrap() == first;
    if closed {
        walk.pop();
    }
    let guard = g.vertex_count() + 1;
    let mut steps = 0;
    while !closed && steps < guard {
        let Some(next) = last.iter().map(|&v| g.apply(v)).collect::<Option<Vec<_>>>() else { break };
        walk.extend_from_slice(&next[1..]);
        if *walk.last().unwrap() == first {
            walk.pop();
            closed = true;
        }
        last = next;
        steps += 1;
    }
    if !closed {
        let inverse = g.inverse();
        let mut front: Vec<usize> = segment.to_vec();
        let mut steps = 0;
        while steps < guard {
            let Some(prev) = front.iter().map(|&v| inverse.apply(v)).collect::<Option<Vec<_>>>() else { break };
            let mut joined = prev[..prev.len() - 1].to_vec();
            joined.extend_from_slice(&walk);
            walk = joined;
            front = prev;
            steps += 1;
        }
    }
    Axis { vertices: walk, closed }
}

/// Whether every pair of walk positions at parameter distance `t <= k` is at
/// graph distance `t`. A closed walk is read periodically. Window distances
/// only over-estimate, so a shorter window distance is a definite failure.
pub fn is_locally_geodesic(dm: &DistanceMatrix, axis: &Axis, k: usize) -> bool {
    let w = &axis.vertices;
    let n = w.len();
    (0..n).all(|i| {
        (1..=k).all(|t| {
            let j = if axis.closed { (i + t) % n } else { i + t };
            if j >= n {
                return true;
            }
            dm.raw(w[i], w[j]) as usize >= t
        })
    })
}

/// Lexicographically least rotation.
fn least_rotation(vs: &[usize]) -> Vec<usize> {
    (0..vs.len()).map(|r| [&vs[r..], &vs[..r]].concat()).min().unwrap_or_default()
}

/// Merges two open axes that share a run of `span + 1` consecutive vertices
/// in the same order. Both being invariant under the same map, such a run
/// determines the whole axis.
fn merge_open(a: &[usize], b: &[usize], span: usize) -> Option<Vec<usize>> {
    let mut positions: HashMap<usize, Vec<usize>> = HashMap::new();
    for (j, &v) in a.iter().enumerate() {
        positions.entry(v).or_default().push(j);
    }
    for i in 0..b.len().saturating_sub(span) {
        for &j in positions.get(&b[i]).map(Vec::as_slice).unwrap_or(&[]) {
            if j + span < a.len() && a[j..=j + span] == b[i..=i + span] {
                let offset = j as isize - i as isize;
                let start = offset.min(0);
                let end = (a.len() as isize).max(b.len() as isize + offset);
                let mut merged = Vec::with_capacity((end - start) as usize);
                for p in start..end {
                    let from_a = (p >= 0 && (p as usize) < a.len()).then(|| a[p as usize]);
                    let q = p - offset;
                    let from_b = (q >= 0 && (q as usize) < b.len()).then(|| b[q as usize]);
                    match (from_a, from_b) {
                        (Some(x), Some(y)) if x != y => return None,
                        (Some(x), _) | (None, Some(x)) => merged.push(x),
                        (None, None) => unreachable!(),
                    }
                }
                return Some(merged);
            }
        }
    }
    None
}

fn dedupe_axes(mut axes: Vec<Axis>, span: usize) -> Vec<Axis> {
    for axis in &mut axes {
        if axis.closed {
            axis.vertices = least_rotation(&axis.vertices);
        }
    }
    axes.sort();
    axes.dedup();
    loop {
        let mut merged_any = false;
        'outer: for i in 0..axes.len() {
            for j in i + 1..axes.len() {
                if axes[i].closed || axes[j].closed {
                    continue;
                }
                if let Some(m) = merge_open(&axes[i].vertices, &axes[j].vertices, span)
                    .or_else(|| merge_open(&axes[j].vertices, &axes[i].vertices, span))
                {
                    axes[i].vertices = m;
                    axes.remove(j);
                    merged_any = true;
                    break 'outer;
                }
            }
        }
        if !merged_any {
            break;
        }
    }
    axes.sort();
    axes.dedup();
    axes
}

/// Result of the axis search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxesSearch {
    /// Smallest power `n` with an `h^n`-invariant locally geodesic path, if
    /// one was found.
    pub power: Option<usize>,
    /// `|h^n|` for the reported power (or for the last power tried).
    pub translation_length: usize,
    /// Local-geodesy scale used.
    pub scale: usize,
    pub axes: Vec<Axis>,
    /// Every geodesic from every seed was enumerated.
    pub exhaustive: bool,
}

/// Searches `n = 1..=max_power` for `h^n`-invariant paths that are
/// `K`-locally geodesic, `K = max(|h^n|, scale)`. For each vertex `x` of
/// `Min(h^n)` and each geodesic from `x` to `h^n(x)`, the images of the
/// geodesic are stitched together and kept when locally geodesic.
pub fn invariant_geodesics(
    c: &FlagComplex,
    h: &Isometry,
    max_power: usize,
    scale: Option<usize>,
    limits: &Limits,
) -> Result<AxesSearch> {
    if max_power == 0 {
        return Err(Error::InvalidParameter("max power must be at least 1".into()));
    }
    let base = displacement_profile(c, h, limits.clique_cap)?;
    if let Classification::Elliptic { simplex } = base.classification {
        return Err(Error::Elliptic(simplex));
    }
    let dm = c.distance_matrix();
    let mut last = AxesSearch { power: None, translation_length: 0, scale: 0, axes: Vec::new(), exhaustive: true };
    for n in 1..=max_power {
        let g = match h.power(n as i64) {
            Ok(g) => g,
            Err(Error::EmptyDomain) => break,
            Err(e) => return Err(e),
        };
        let profile = match displacement_profile(c, &g, limits.clique_cap) {
            Ok(p) => p,
            Err(Error::NoCertifiedVertices) => break,
            Err(e) => return Err(e),
        };
        let length = profile.translation_length;
        let k = length.max(scale.unwrap_or(0));
        last = AxesSearch { power: None, translation_length: length, scale: k, axes: Vec::new(), exhaustive: true };
        if length == 0 {
            continue;
        }
        let found = par::map(&profile.min_vertices, |&x| {
            let (geodesics, complete) = geodesics_between(c, x, g.apply(x).expect("domain vertex"), limits.geodesic_cap);
            let axes: Vec<Axis> =
                geodesics.iter().map(|p| stitch(&g, p)).filter(|a| is_locally_geodesic(&dm, a, k)).collect();
            (axes, complete)
        });
        let exhaustive = found.iter().all(|f| f.1);
        let axes = dedupe_axes(found.into_iter().flat_map(|f| f.0).collect(), length);
        if !axes.is_empty() {
            return Ok(AxesSearch { power: Some(n), translation_length: length, scale: k, axes, exhaustive });
        }
        last.exhaustive = exhaustive;
    }
    Ok(last)
}

/// Every certified vertex of `Min(h^n)` lies on a discovered axis, `n` being
/// the power the search settled on.
pub fn union_of_axes_check(c: &FlagComplex, h: &Isometry, search: &AxesSearch, limits: &Limits) -> Result<Verdict> {
    let Some(n) = search.power else {
        let report = displacement_profile(c, h, limits.clique_cap)?;
        return Ok(Verdict::fail(Witness::Uncovered { vertices: report.min_vertices, proven_absent: search.exhaustive }));
    };
    let g = h.power(n as i64)?;
    let report = displacement_profile(c, &g, limits.clique_cap)?;
    let mut covered = vec![false; c.vertex_count()];
    for axis in &search.axes {
        for &v in &axis.vertices {
            covered[v] = true;
        }
    }
    let uncovered: Vec<usize> = report.min_vertices.into_iter().filter(|&v| !covered[v]).collect();
    Ok(if uncovered.is_empty() {
        Verdict::Pass
    } else {
        Verdict::fail(Witness::Uncovered { vertices: uncovered, proven_absent: search.exhaustive })
    })
}

/// The graph of axes: one vertex per axis, an edge when two axes come
/// within distance 1 over certified pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxesGraph {
    pub axes: Vec<Axis>,
    /// Pairs `i < j` with `d_min <= 1`.
    pub edges: Vec<[usize; 2]>,
    /// `d_min` for every pair `i < j`, row-major, `None` when no pair of
    /// vertices has a certified distance.
    pub d_min: Vec<Vec<Option<usize>>>,
}

impl AxesGraph {
    pub fn to_complex(&self) -> FlagComplex {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        FlagComplex::new(self.axes.len(), &edges).expect("edges between listed axes")
    }
}

fn d_min(dm: &DistanceMatrix, window: &Window, a: &Axis, b: &Axis) -> Option<usize> {
    let mut best: Option<usize> = None;
    for &x in &a.vertices {
        for &y in &b.vertices {
            let d = dm.get(x, y);
            if window.certifies(x, y, d) {
                if let Distance::Finite(d) = d {
                    best = Some(best.map_or(d, |b| b.min(d)));
                }
            }
        }
    }
    best
}

pub fn graph_of_axes(c: &FlagComplex, search: &AxesSearch) -> AxesGraph {
    let dm = c.distance_matrix();
    let window = c.window();
    let axes = search.axes.clone();
    let k = axes.len();
    let d_min: Vec<Vec<Option<usize>>> =
        par::map_range(k, |i| (i + 1..k).map(|j| d_min(&dm, &window, &axes[i], &axes[j])).collect());
    let edges = (0..k)
        .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
        .filter(|&(i, j)| d_min[i][j - i - 1].is_some_and(|d| d <= 1))
        .map(|(i, j)| [i, j])
        .collect();
    AxesGraph { axes, edges, d_min }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{generate, strip_vertex, CorpusSpec};

    fn gen(spec: CorpusSpec) -> (FlagComplex, Isometry) {
        let g = generate(&spec).unwrap();
        (g.complex, g.automorphism.unwrap())
    }

    #[test]
    fn automorphism_checks() {
        let (c6, rot) = gen(CorpusSpec::Cycle(6));
        assert!(check_automorphism(&c6, &rot.images().iter().map(|v| v.unwrap()).collect::<Vec<_>>()).is_ok());
        let path = FlagComplex::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let err = check_automorphism(&path, &[1, 0, 2, 3]).unwrap_err();
        assert_eq!(err, MapViolation::EdgeNotPreserved { u: 1, v: 2 });
        let (oct, _) = gen(CorpusSpec::Octahedron);
        assert!(check_automorphism(&oct, &[1, 0, 3, 2, 5, 4]).is_ok());
        assert!(matches!(check_automorphism(&oct, &[0, 0, 2, 3, 4, 5]), Err(MapViolation::NotInjective { .. })));
    }

    #[test]
    fn partial_map_checks() {
        let (strip, shift) = gen(CorpusSpec::Strip { width: 2, length: 10 });
        assert!(check_partial_automorphism(&strip, shift.images()).is_ok());
        let mut holes = shift.images().to_vec();
        holes[6] = None;
        holes[7] = None;
        assert!(matches!(check_partial_automorphism(&strip, &holes), Err(MapViolation::DomainDisconnected { .. })));
    }

    #[test]
    fn powers() {
        let (c6, rot) = gen(CorpusSpec::Cycle(6));
        assert_eq!(rot.power(6).unwrap(), Isometry::identity(6));
        assert_eq!(rot.power(1).unwrap(), rot);
        assert_eq!(rot.power(-1).unwrap().compose(&rot), Isometry::identity(6));
        assert_eq!(rot.power(0).unwrap(), Isometry::identity(c6.vertex_count()));
        let (_, shift) = gen(CorpusSpec::Strip { width: 2, length: 10 });
        let s4 = shift.power(4).unwrap();
        assert_eq!(s4.domain(), (0..12).collect::<Vec<_>>());
        assert_eq!(s4.apply(strip_vertex(2, 3, 1)), Some(strip_vertex(2, 7, 1)));
        assert!(shift.power(0).is_err());
        assert_eq!(shift.power(10), Err(Error::EmptyDomain));
    }

    #[test]
    fn profile_examples() {
        let (c6, rot) = gen(CorpusSpec::Cycle(6));
        let r = displacement_profile(&c6, &rot, 16).unwrap();
        assert_eq!(r.translation_length, 1);
        assert_eq!(r.min_vertices, (0..6).collect::<Vec<_>>());
        assert_eq!(r.classification, Classification::Hyperbolic);

        let (oct, quarter) = gen(CorpusSpec::Octahedron);
        let r = displacement_profile(&oct, &quarter, 16).unwrap();
        assert_eq!(r.translation_length, 0);
        assert_eq!(r.min_vertices, vec![0, 1]);
        assert!(r.displacements[2..].iter().all(|d| d.displacement == Distance::Finite(1)));
        assert_eq!(r.classification, Classification::Elliptic { simplex: vec![0] });

        let (strip, shift) = gen(CorpusSpec::Strip { width: 2, length: 12 });
        let s4 = shift.power(4).unwrap();
        let r = displacement_profile(&strip, &s4, 16).unwrap();
        assert_eq!(r.translation_length, 4);
        assert!(r.displacements.iter().filter(|d| d.certified).all(|d| d.displacement == Distance::Finite(4)));
        assert_eq!(r.classification, Classification::Hyperbolic);
    }

    #[test]
    fn antipodal_map_is_hyperbolic() {
        let (oct, _) = gen(CorpusSpec::Octahedron);
        let anti = Isometry::total(&oct, vec![1, 0, 3, 2, 5, 4]).unwrap();
        let r = displacement_profile(&oct, &anti, 16).unwrap();
        assert_eq!(r.translation_length, 2);
        assert_eq!(r.classification, Classification::Hyperbolic);
        assert!(min_idempotence(&oct, &anti, 16).unwrap().is_pass());
    }

    #[test]
    fn min_set_examples() {
        let (c6, rot) = gen(CorpusSpec::Cycle(6));
        let r = displacement_profile(&c6, &rot, 16).unwrap();
        let m = min_set(&c6, &rot, &r).unwrap();
        assert_eq!(m.view.len(), 6);
        assert!(m.h_invariant);

        let (oct, quarter) = gen(CorpusSpec::Octahedron);
        let r = displacement_profile(&oct, &quarter, 16).unwrap();
        let m = min_set(&oct, &quarter, &r).unwrap();
        assert_eq!(m.view.vertices(), &[0, 1]);
        assert!(m.view.edges().is_empty());
        assert!(m.h_invariant);
    }

    #[test]
    fn embedding_examples() {
        let (c6, _) = gen(CorpusSpec::Cycle(6));
        assert!(check_isometric_embedding(&c6, &c6.span(&[0, 1, 2, 3, 4, 5]).unwrap()).unwrap().is_pass());
        assert!(check_isometric_embedding(&c6, &c6.span(&[0, 1, 2]).unwrap()).unwrap().is_pass());
        let v = check_isometric_embedding(&c6, &c6.span(&[0, 3]).unwrap()).unwrap();
        assert_eq!(
            v.witness(),
            Some(&Witness::DistanceMismatch {
                u: 0,
                v: 3,
                sub_distance: Distance::Unreachable,
                ambient_distance: Distance::Finite(3)
            })
        );
        assert_eq!(v.witness().unwrap().replay(&c6), Some(true));
    }

    #[test]
    fn idempotence_examples() {
        let (c6, rot) = gen(CorpusSpec::Cycle(6));
        assert!(min_idempotence(&c6, &rot, 16).unwrap().is_pass());
        let (strip, shift) = gen(CorpusSpec::Strip { width: 2, length: 20 });
        assert!(min_idempotence(&strip, &shift.power(4).unwrap(), 16).unwrap().is_pass());
    }

    #[test]
    fn axes_on_cycle() {
        let (c6, rot) = gen(CorpusSpec::Cycle(6));
        let s = invariant_geodesics(&c6, &rot, 3, Some(3), &Limits::default()).unwrap();
        assert_eq!(s.power, Some(1));
        assert_eq!(s.axes, vec![Axis { vertices: vec![0, 1, 2, 3, 4, 5], closed: true }]);
        assert!(union_of_axes_check(&c6, &rot, &s, &Limits::default()).unwrap().is_pass());
        let g = graph_of_axes(&c6, &s);
        assert_eq!((g.axes.len(), g.edges.len()), (1, 0));
    }

    #[test]
    fn axes_on_strips_are_rows() {
        for width in 1..=3 {
            let (strip, shift) = gen(CorpusSpec::Strip { width, length: 16 });
            let limits = Limits::default();
            let s = invariant_geodesics(&strip, &shift, 2, None, &limits).unwrap();
            assert_eq!(s.power, Some(1));
            let rows: Vec<Vec<usize>> =
                (0..width).map(|r| (0..16).map(|i| strip_vertex(width, i, r)).collect()).collect();
            let mut found: Vec<Vec<usize>> = s.axes.iter().map(|a| a.vertices.clone()).collect();
            found.sort();
            let mut rows_sorted = rows.clone();
            rows_sorted.sort();
            assert_eq!(found, rows_sorted, "width {width}");
            assert!(union_of_axes_check(&strip, &shift, &s, &limits).unwrap().is_pass());
            let g = graph_of_axes(&strip, &s);
            assert_eq!(g.edges.len(), width - 1);
        }
    }

    #[test]
    fn elliptic_has_no_axes() {
        let (oct, quarter) = gen(CorpusSpec::Octahedron);
        assert_eq!(
            invariant_geodesics(&oct, &quarter, 1, None, &Limits::default()),
            Err(Error::Elliptic(vec![0]))
        );
    }

    #[test]
    fn geodesic_enumeration() {
        let (c6, _) = gen(CorpusSpec::Cycle(6));
        let (g, complete) = geodesics_between(&c6, 0, 3, 10);
        assert_eq!(g, vec![vec![0, 1, 2, 3], vec![0, 5, 4, 3]]);
        assert!(complete);
        let (g, complete) = geodesics_between(&c6, 0, 3, 1);
        assert_eq!(g.len(), 1);
        assert!(!complete);
    }
}
