//! Deterministic corpus builders.
//!
//! Every builder is a pure function of its [`CorpusSpec`]. Where a complex
//! has an obvious symmetry (rotation of cycles, wheels, disks and cylinders,
//! the column shift of a strip) it is returned alongside.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::complex::FlagComplex;
use crate::error::{Error, Result};
use crate::isometry::Isometry;

/// Largest vertex count any builder will produce.
pub const MAX_GENERATED_VERTICES: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum CorpusSpec {
    Cycle(usize),
    Path(usize),
    Complete(usize),
    Wheel(usize),
    Octahedron,
    Icosahedron,
    /// Layered triangulated disk: every interior vertex has `degree`
    /// neighbors and a `degree`-cycle as link. Requires `degree >= 6`.
    Disk { degree: usize, radius: usize },
    /// `width` rows by `length` columns; `(i, r)` joins `(i+1, r)`,
    /// `(i, r+1)` and `(i+1, r+1)`.
    Strip { width: usize, length: usize },
    /// Strip pattern wrapped around: `circumference` columns, `height` rows.
    Cylinder { circumference: usize, height: usize },
    RandomFlag { n: usize, p: f64, seed: u64 },
}

/// A generated complex with its canonical symmetry, if any.
#[derive(Debug, Clone)]
pub struct Generated {
    pub spec: CorpusSpec,
    pub complex: FlagComplex,
    pub automorphism: Option<Isometry>,
}

pub fn generate(spec: &CorpusSpec) -> Result<Generated> {
    let (complex, automorphism) = match *spec {
        CorpusSpec::Cycle(n) => cycle(n)?,
        CorpusSpec::Path(n) => (path(n)?, None),
        CorpusSpec::Complete(n) => (complete(n)?, None),
        CorpusSpec::Wheel(k) => wheel(k)?,
        CorpusSpec::Octahedron => octahedron(),
        CorpusSpec::Icosahedron => icosahedron(),
        CorpusSpec::Disk { degree, radius } => disk(degree, radius)?,
        CorpusSpec::Strip { width, length } => strip(width, length)?,
        CorpusSpec::Cylinder { circumference, height } => cylinder(circumference, height)?,
        CorpusSpec::RandomFlag { n, p, seed } => (random_flag(n, p, seed)?, None),
    };
    Ok(Generated { spec: spec.clone(), complex, automorphism })
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_GENERATED_VERTICES {
        return Err(Error::VertexCapExceeded { count: n, cap: MAX_GENERATED_VERTICES });
    }
    Ok(())
}

fn invalid(msg: String) -> Error {
    Error::InvalidParameter(msg)
}

fn cycle(n: usize) -> Result<(FlagComplex, Option<Isometry>)> {
    if n < 3 {
        return Err(invalid(format!("cycle length {n} < 3")));
    }
    check_size(n)?;
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    let rotation = (0..n).map(|i| (i + 1) % n).collect();
    Ok((FlagComplex::new(n, &edges)?, Some(Isometry::total_unchecked(rotation))))
}

fn path(n: usize) -> Result<FlagComplex> {
    if n == 0 {
        return Err(invalid("path needs at least one vertex".into()));
    }
    check_size(n)?;
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    FlagComplex::new(n, &edges)
}

fn complete(n: usize) -> Result<FlagComplex> {
    if n == 0 {
        return Err(invalid("complete graph needs at least one vertex".into()));
    }
    check_size(n)?;
    let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    FlagComplex::new(n, &edges)
}

fn wheel(k: usize) -> Result<(FlagComplex, Option<Isometry>)> {
    if k < 4 {
        return Err(invalid(format!("wheel size {k} < 4")));
    }
    check_size(k + 1)?;
    let mut edges: Vec<_> = (1..=k).map(|i| (0, i)).collect();
    edges.extend((1..=k).map(|i| (i, i % k + 1)));
    let mut rotation: Vec<usize> = vec![0];
    rotation.extend((1..=k).map(|i| i % k + 1));
    Ok((FlagComplex::new(k + 1, &edges)?, Some(Isometry::total_unchecked(rotation))))
}

/// Vertices `x = 0, x' = 1, y = 2, y' = 3, z = 4, z' = 5`; antipodal pairs
/// are non-adjacent. The symmetry is the quarter turn about the `x x'` axis.
fn octahedron() -> (FlagComplex, Option<Isometry>) {
    let edges: Vec<_> = (0..6).flat_map(|u| (u + 1..6).map(move |v| (u, v))).filter(|&(u, v)| u / 2 != v / 2).collect();
    let quarter_turn = vec![0, 1, 4, 5, 3, 2];
    (FlagComplex::new(6, &edges).expect("static"), Some(Isometry::total_unchecked(quarter_turn)))
}

/// Top `0`, upper ring `1..=5`, lower ring `6..=10`, bottom `11`.
fn icosahedron() -> (FlagComplex, Option<Isometry>) {
    let mut edges = Vec::new();
    for j in 0..5 {
        let (up, up_next) = (1 + j, 1 + (j + 1) % 5);
        let (low, low_next) = (6 + j, 6 + (j + 1) % 5);
        edges.extend([(0, up), (up, up_next), (low, low_next), (low, 11), (up, low), (up, low_next)]);
    }
    let mut rotation = vec![0];
    rotation.extend((0..5).map(|j| 1 + (j + 1) % 5));
    rotation.extend((0..5).map(|j| 6 + (j + 1) % 5));
    rotation.push(11);
    (FlagComplex::new(12, &edges).expect("static"), Some(Isometry::total_unchecked(rotation)))
}

/// Number of vertices of `Disk { degree, radius }` without building it.
pub fn disk_vertex_count(degree: usize, radius: usize) -> usize {
    let layers = disk_layer_types(degree, radius);
    1 + layers.iter().map(Vec::len).sum::<usize>()
}

/// Parent counts of the vertices of each layer `1..=radius`.
fn disk_layer_types(degree: usize, radius: usize) -> Vec<Vec<u8>> {
    let mut layers: Vec<Vec<u8>> = Vec::new();
    if radius == 0 {
        return layers;
    }
    layers.push(vec![1; degree]);
    for _ in 1..radius {
        let cur = layers.last().unwrap();
        let mut next = Vec::new();
        for &parents in cur {
            let children = degree - (parents as usize + 2);
            next.extend(std::iter::repeat_n(1u8, children - 2));
            next.push(2);
        }
        layers.push(next);
    }
    layers
}

fn disk(degree: usize, radius: usize) -> Result<(FlagComplex, Option<Isometry>)> {
    if degree < 6 {
        return Err(invalid(format!("disk degree {degree} < 6")));
    }
    if radius == 0 {
        return Err(invalid("disk radius must be at least 1".into()));
    }
    // Layer sizes grow geometrically for degree > 6; check before building.
    let mut total = 1usize;
    let mut size = degree;
    for _ in 0..radius {
        total = total.saturating_add(size);
        if total > MAX_GENERATED_VERTICES {
            return Err(Error::VertexCapExceeded { count: total, cap: MAX_GENERATED_VERTICES });
        }
        size = size.saturating_mul(degree - 3);
    }

    let types = disk_layer_types(degree, radius);
    let mut edges = Vec::new();
    let mut next_id = 1;
    let mut layers: Vec<Vec<usize>> = vec![vec![0]];
    // Layer 1.
    let first: Vec<usize> = (next_id..next_id + degree).collect();
    next_id += degree;
    for (j, &v) in first.iter().enumerate() {
        edges.push((0, v));
        edges.push((v, first[(j + 1) % degree]));
    }
    layers.push(first);
    for k in 1..radius {
        let cur = layers[k].clone();
        let m = cur.len();
        let mut next = Vec::new();
        // shared[j] is the child joined to both cur[j] and cur[j+1].
        let mut shared = vec![0; m];
        let mut private: Vec<Vec<usize>> = vec![Vec::new(); m];
        for j in 0..m {
            let children = degree - (types[k - 1][j] as usize + 2);
            for _ in 0..children - 2 {
                private[j].push(next_id);
                next.push(next_id);
                next_id += 1;
            }
            shared[j] = next_id;
            next.push(next_id);
            next_id += 1;
        }
        for j in 0..m {
            let left = shared[(j + m - 1) % m];
            edges.push((cur[j], left));
            for &p in &private[j] {
                edges.push((cur[j], p));
            }
            edges.push((cur[j], shared[j]));
        }
        let len = next.len();
        for i in 0..len {
            edges.push((next[i], next[(i + 1) % len]));
        }
        layers.push(next);
    }
    let n = next_id;
    let mut rotation = vec![0; n];
    for layer in &layers[1..] {
        let step = layer.len() / degree;
        for (i, &v) in layer.iter().enumerate() {
            rotation[v] = layer[(i + step) % layer.len()];
        }
    }
    let boundary = layers.last().unwrap().clone();
    let complex = FlagComplex::new(n, &edges)?.with_boundary(boundary)?;
    Ok((complex, Some(Isometry::total_unchecked(rotation))))
}

/// Vertex index of column `i`, row `r` in a strip of the given width.
pub fn strip_vertex(width: usize, column: usize, row: usize) -> usize {
    column * width + row
}

fn strip(width: usize, length: usize) -> Result<(FlagComplex, Option<Isometry>)> {
    if width == 0 || length < 2 {
        return Err(invalid(format!("strip {width}x{length} needs width >= 1 and length >= 2")));
    }
    let n = width.checked_mul(length).ok_or_else(|| invalid("strip too large".into()))?;
    check_size(n)?;
    let at = |i, r| strip_vertex(width, i, r);
    let mut edges = Vec::new();
    for i in 0..length {
        for r in 0..width {
            if i + 1 < length {
                edges.push((at(i, r), at(i + 1, r)));
                if r + 1 < width {
                    edges.push((at(i, r), at(i + 1, r + 1)));
                }
            }
            if r + 1 < width {
                edges.push((at(i, r), at(i, r + 1)));
            }
        }
    }
    let shift = (0..n).map(|v| (v / width + 1 < length).then_some(v + width)).collect();
    let mut boundary: Vec<usize> = (0..width).map(|r| at(0, r)).collect();
    boundary.extend((0..width).map(|r| at(length - 1, r)));
    let complex = FlagComplex::new(n, &edges)?.with_boundary(boundary)?;
    Ok((complex, Some(Isometry::partial_unchecked(shift))))
}

fn cylinder(circumference: usize, height: usize) -> Result<(FlagComplex, Option<Isometry>)> {
    if circumference < 4 || height == 0 {
        return Err(invalid(format!("cylinder {circumference}x{height} needs circumference >= 4 and height >= 1")));
    }
    let c = circumference;
    let n = c.checked_mul(height).ok_or_else(|| invalid("cylinder too large".into()))?;
    check_size(n)?;
    let at = |i: usize, r: usize| r * c + i % c;
    let mut edges = Vec::new();
    for r in 0..height {
        for i in 0..c {
            edges.push((at(i, r), at(i + 1, r)));
            if r + 1 < height {
                edges.push((at(i, r), at(i, r + 1)));
                edges.push((at(i, r), at(i + 1, r + 1)));
            }
        }
    }
    let rotation = (0..n).map(|v| at(v % c + 1, v / c)).collect();
    Ok((FlagComplex::new(n, &edges)?, Some(Isometry::total_unchecked(rotation))))
}

/// SplitMix64: the fixed stream behind [`random_flag`].
#[derive(Debug, Clone)]
pub struct SplitMix64(u64);

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)` from the top 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// Each pair `(u, v)`, `u < v`, visited in lexicographic order, becomes an
/// edge when the next SplitMix64 draw (seeded with `seed`) is below `p`.
pub fn random_flag(n: usize, p: f64, seed: u64) -> Result<FlagComplex> {
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid(format!("edge probability {p} outside [0, 1]")));
    }
    check_size(n)?;
    let mut rng = SplitMix64::new(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.next_f64() < p {
                edges.push((u, v));
            }
        }
    }
    FlagComplex::new(n, &edges)
}

impl fmt::Display for CorpusSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CorpusSpec::Cycle(n) => write!(f, "cycle n={n}"),
            CorpusSpec::Path(n) => write!(f, "path n={n}"),
            CorpusSpec::Complete(n) => write!(f, "complete n={n}"),
            CorpusSpec::Wheel(k) => write!(f, "wheel k={k}"),
            CorpusSpec::Octahedron => f.write_str("octahedron"),
            CorpusSpec::Icosahedron => f.write_str("icosahedron"),
            CorpusSpec::Disk { degree, radius } => write!(f, "disk d={degree} r={radius}"),
            CorpusSpec::Strip { width, length } => write!(f, "strip w={width} l={length}"),
            CorpusSpec::Cylinder { circumference, height } => write!(f, "cylinder c={circumference} h={height}"),
            CorpusSpec::RandomFlag { n, p, seed } => write!(f, "random n={n} p={p} seed={seed}"),
        }
    }
}

/// Parses specs such as `disk d=7 r=3`, `strip w=2 l=10`, `cycle n=6` or
/// `random n=12 p=0.3 seed=42`.
impl FromStr for CorpusSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut words = s.split_whitespace();
        let kind = words.next().ok_or_else(|| invalid("empty spec".into()))?;
        let mut params: Vec<(&str, &str)> = Vec::new();
        for w in words {
            let (k, v) = w.split_once('=').ok_or_else(|| invalid(format!("expected key=value, got {w:?}")))?;
            if params.iter().any(|(seen, _)| *seen == k) {
                return Err(invalid(format!("parameter {k} given twice")));
            }
            params.push((k, v));
        }
        let mut take = |key: &str| -> Result<Option<&str>> {
            Ok(params.iter().position(|(k, _)| *k == key).map(|i| params.remove(i).1))
        };
        fn num<T: FromStr>(key: &str, v: Option<&str>) -> Result<T> {
            let v = v.ok_or_else(|| invalid(format!("missing parameter {key}")))?;
            v.parse().map_err(|_| invalid(format!("bad value for {key}: {v:?}")))
        }
        let spec = match kind {
            "cycle" => CorpusSpec::Cycle(num("n", take("n")?)?),
            "path" => CorpusSpec::Path(num("n", take("n")?)?),
            "complete" => CorpusSpec::Complete(num("n", take("n")?)?),
            "wheel" => CorpusSpec::Wheel(num("k", take("k")?)?),
            "octahedron" => CorpusSpec::Octahedron,
            "icosahedron" => CorpusSpec::Icosahedron,
            "disk" => CorpusSpec::Disk { degree: num("d", take("d")?)?, radius: num("r", take("r")?)? },
            "strip" => CorpusSpec::Strip { width: num("w", take("w")?)?, length: num("l", take("l")?)? },
            "cylinder" => CorpusSpec::Cylinder { circumference: num("c", take("c")?)?, height: num("h", take("h")?)? },
            "random" => CorpusSpec::RandomFlag {
                n: num("n", take("n")?)?,
                p: num("p", take("p")?)?,
                seed: num("seed", take("seed")?)?,
            },
            other => return Err(invalid(format!("unknown complex kind {other:?}"))),
        };
        if let Some((k, _)) = params.first() {
            return Err(invalid(format!("unknown parameter {k} for {kind}")));
        }
        Ok(spec)
    }
}
