//! Quivers, paths, dimension filtrations, staircase and separation quivers,
//! Dynkin recognition and the dimension counts of flagged representation spaces.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuiverError {
    #[error("duplicate vertex name {0:?}")]
    DuplicateVertex(String),
    #[error("duplicate arrow name {0:?}")]
    DuplicateArrow(String),
    #[error("arrow {arrow:?} refers to unknown vertex {vertex:?}")]
    UnknownVertex { arrow: String, vertex: String },
    #[error("dimension vector has {got} entries, quiver has {expected} vertices")]
    DimensionLength { expected: usize, got: usize },
    #[error("dimension filtration is not weakly increasing at vertex {vertex}, layer {layer}")]
    NotMonotone { vertex: usize, layer: usize },
    #[error("dimension filtration needs at least one layer")]
    EmptyFiltration,
    #[error("cannot parse dimension filtration {0:?}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite quiver with named vertices and arrows, kept in input order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// Builds a quiver from vertex names and (name, source, target) triples.
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S, S)]) -> Result<Quiver, QuiverError> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let index: BTreeMap<&str, usize> = vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let lookup = |arrow: &str, v: &str| {
            index.get(v).copied().ok_or_else(|| QuiverError::UnknownVertex {
                arrow: arrow.to_string(),
                vertex: v.to_string(),
            })
        };
        let mut built = Vec::with_capacity(arrows.len());
        for (name, s, t) in arrows {
            let name = name.as_ref();
            built.push(Arrow {
                name: name.to_string(),
                source: lookup(name, s.as_ref())?,
                target: lookup(name, t.as_ref())?,
            });
        }
        Quiver::from_parts(vertices, built)
    }

    pub fn from_parts(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Quiver, QuiverError> {
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(QuiverError::DuplicateVertex(v.clone()));
            }
        }
        let mut seen = BTreeSet::new();
        for a in &arrows {
            if !seen.insert(a.name.as_str()) {
                return Err(QuiverError::DuplicateArrow(a.name.clone()));
            }
            for v in [a.source, a.target] {
                if v >= vertices.len() {
                    return Err(QuiverError::UnknownVertex {
                        arrow: a.name.clone(),
                        vertex: v.to_string(),
                    });
                }
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows.iter().enumerate().filter(move |(_, a)| a.source == v).map(|(i, _)| i)
    }

    pub fn arrows_to(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows.iter().enumerate().filter(move |(_, a)| a.target == v).map(|(i, _)| i)
    }

    /// All paths of length at most `max_len`, by length and then in extension order.
    pub fn paths_up_to_length(&self, max_len: usize) -> Vec<Path> {
        let mut all: Vec<Path> = (0..self.n_vertices()).map(Path::trivial).collect();
        let mut frontier = all.clone();
        for _ in 0..max_len {
            let mut next = Vec::new();
            for p in &frontier {
                for a in self.arrows_from(p.target) {
                    next.push(p.then(a, self));
                }
            }
            all.extend(next.iter().cloned());
            frontier = next;
        }
        all
    }

    /// Vertex sets of the connected components of the underlying graph.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n_vertices();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for a in &self.arrows {
            let (x, y) = (find(&mut parent, a.source), find(&mut parent, a.target));
            if x != y {
                parent[x.max(y)] = x.min(y);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..n {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        groups.into_values().collect()
    }
}

/// Small quivers used across the library, its tests and examples.
pub mod catalog {
    use super::Quiver;

    /// x → y with arrow a.
    pub fn a2() -> Quiver {
        Quiver::new(&["x", "y"], &[("a", "x", "y")]).expect("valid quiver")
    }

    /// Linear orientation 1 → 2 → … → n.
    pub fn a_n(n: usize) -> Quiver {
        a_n_oriented(&vec![true; n.saturating_sub(1)])
    }

    /// Type A on vertices 1..=n; `forward[k]` orients the k-th edge as k+1 → k+2.
    pub fn a_n_oriented(forward: &[bool]) -> Quiver {
        let names: Vec<String> = (1..=forward.len() + 1).map(|i| i.to_string()).collect();
        let arrows: Vec<(String, String, String)> = forward
            .iter()
            .enumerate()
            .map(|(k, &f)| {
                let (s, t) = if f { (k, k + 1) } else { (k + 1, k) };
                (format!("a{}", k + 1), names[s].clone(), names[t].clone())
            })
            .collect();
        Quiver::new(&names, &arrows).expect("valid quiver")
    }

    /// One vertex with a loop a.
    pub fn jordan() -> Quiver {
        Quiver::new(&["1"], &[("a", "1", "1")]).expect("valid quiver")
    }

    /// Two parallel arrows a, b: 1 → 2.
    pub fn kronecker() -> Quiver {
        Quiver::new(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")]).expect("valid quiver")
    }

    /// Type D4 with the sink 3 in the middle.
    pub fn d4_sink() -> Quiver {
        Quiver::new(&["1", "2", "3", "4"], &[("a", "1", "3"), ("b", "2", "3"), ("c", "4", "3")]).expect("valid quiver")
    }

    /// 1 ← 2 → 3.
    pub fn two_arms() -> Quiver {
        Quiver::new(&["1", "2", "3"], &[("a", "2", "1"), ("b", "2", "3")]).expect("valid quiver")
    }

    /// 1 ⇄ 2 with a loop at 2, an arrow 2 → 3 and a loop at 3.
    pub fn loops_e6() -> Quiver {
        Quiver::new(
            &["1", "2", "3"],
            &[("a", "1", "2"), ("b", "2", "1"), ("c", "2", "2"), ("d", "2", "3"), ("e", "3", "3")],
        )
        .expect("valid quiver")
    }

    /// Oriented cycle 1 → 2 → … → n → 1.
    pub fn cycle(n: usize) -> Quiver {
        let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let arrows: Vec<(String, String, String)> = (0..n)
            .map(|k| (format!("c{}", k + 1), names[k].clone(), names[(k + 1) % n].clone()))
            .collect();
        Quiver::new(&names, &arrows).expect("valid quiver")
    }

    /// Disjoint union, with vertex and arrow names prefixed by the summand's position.
    pub fn disjoint_union(parts: &[Quiver]) -> Quiver {
        let mut vertices = Vec::new();
        let mut arrows = Vec::new();
        for (k, q) in parts.iter().enumerate() {
            for a in q.arrows() {
                arrows.push((
                    format!("{k}.{}", a.name),
                    format!("{k}.{}", q.vertices()[a.source]),
                    format!("{k}.{}", q.vertices()[a.target]),
                ));
            }
            vertices.extend(q.vertices().iter().map(|v| format!("{k}.{v}")));
        }
        Quiver::new(&vertices, &arrows).expect("valid quiver")
    }
}

/// A path given by its arrows in traversal order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Path {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Extends the path by one arrow leaving its target.
    pub fn then(&self, arrow: usize, q: &Quiver) -> Path {
        let a = &q.arrows()[arrow];
        assert_eq!(a.source, self.target, "arrow does not start at the path's end");
        let mut arrows = self.arrows.clone();
        arrows.push(arrow);
        Path {
            source: self.source,
            target: a.target,
            arrows,
        }
    }

    /// The path `self` followed by `other`.
    pub fn concat(&self, other: &Path) -> Path {
        assert_eq!(self.target, other.source, "paths do not compose");
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Path {
            source: self.source,
            target: other.target,
            arrows,
        }
    }

    /// Written right to left: the first arrow traversed is the rightmost factor.
    pub fn display(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            return format!("e({})", q.vertices()[self.source]);
        }
        self.arrows.iter().rev().map(|&a| q.arrows()[a].name.as_str()).collect::<Vec<_>>().join("·")
    }
}

/// A dimension vector indexed by the vertices of a quiver.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DimVector(pub Vec<usize>);

impl DimVector {
    pub fn zero(n: usize) -> DimVector {
        DimVector(vec![0; n])
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Σ d_i².
    pub fn self_dot(&self) -> i64 {
        self.0.iter().map(|&d| (d * d) as i64).sum()
    }

    pub fn le(&self, other: &DimVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Layers d^(1), …, d^(s). Also used as a dimension vector on staircase vertices,
/// in which case monotonicity is not required.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DimFiltration {
    layers: Vec<DimVector>,
}

impl DimFiltration {
    /// A weakly increasing filtration.
    pub fn new(layers: Vec<DimVector>) -> Result<DimFiltration, QuiverError> {
        let f = DimFiltration::layered(layers)?;
        f.check_monotone()?;
        Ok(f)
    }

    /// Layers of equal length with no monotonicity requirement.
    pub fn layered(layers: Vec<DimVector>) -> Result<DimFiltration, QuiverError> {
        let Some(first) = layers.first() else {
            return Err(QuiverError::EmptyFiltration);
        };
        let n = first.0.len();
        if let Some(bad) = layers.iter().find(|l| l.0.len() != n) {
            return Err(QuiverError::DimensionLength {
                expected: n,
                got: bad.0.len(),
            });
        }
        Ok(DimFiltration { layers })
    }

    pub fn from_rows(rows: &[&[usize]]) -> Result<DimFiltration, QuiverError> {
        DimFiltration::new(rows.iter().map(|r| DimVector(r.to_vec())).collect())
    }

    /// Parses `"0,1;1,1"` as ((0,1),(1,1)) without checking monotonicity.
    pub fn parse_layers(text: &str) -> Result<DimFiltration, QuiverError> {
        let err = || QuiverError::Parse(text.to_string());
        let layers = text
            .split(';')
            .map(|layer| {
                layer
                    .split(',')
                    .map(|x| x.trim().parse::<usize>().map_err(|_| err()))
                    .collect::<Result<Vec<_>, _>>()
                    .map(DimVector)
            })
            .collect::<Result<Vec<_>, _>>()?;
        DimFiltration::layered(layers)
    }

    pub fn check_monotone(&self) -> Result<(), QuiverError> {
        for t in 1..self.layers.len() {
            for (i, (a, b)) in self.layers[t - 1].0.iter().zip(&self.layers[t].0).enumerate() {
                if a > b {
                    return Err(QuiverError::NotMonotone {
                        vertex: i,
                        layer: t + 1,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn is_monotone(&self) -> bool {
        self.check_monotone().is_ok()
    }

    pub fn s(&self) -> usize {
        self.layers.len()
    }

    pub fn n_vertices(&self) -> usize {
        self.layers[0].0.len()
    }

    pub fn layers(&self) -> &[DimVector] {
        &self.layers
    }

    /// d_i^(t) with d^(0) = 0; `t` is 1-based.
    pub fn at(&self, i: usize, t: usize) -> usize {
        if t == 0 {
            0
        } else {
            self.layers[t - 1].0[i]
        }
    }

    pub fn top(&self) -> &DimVector {
        self.layers.last().expect("non-empty")
    }

    /// Entries in staircase vertex order: layer-major, then base vertex.
    pub fn to_staircase_vec(&self) -> Vec<usize> {
        self.layers.iter().flat_map(|l| l.0.iter().copied()).collect()
    }

    pub fn from_staircase_vec(n: usize, s: usize, v: &[usize]) -> DimFiltration {
        assert_eq!(v.len(), n * s, "staircase vector has the wrong length");
        DimFiltration {
            layers: (0..s).map(|t| DimVector(v[t * n..(t + 1) * n].to_vec())).collect(),
        }
    }

    pub fn le(&self, other: &DimFiltration) -> bool {
        self.layers.len() == other.layers.len() && self.layers.iter().zip(&other.layers).all(|(a, b)| a.le(b))
    }

    pub fn sub(&self, other: &DimFiltration) -> Option<DimFiltration> {
        if !other.le(self) {
            return None;
        }
        Some(DimFiltration {
            layers: self
                .layers
                .iter()
                .zip(&other.layers)
                .map(|(a, b)| DimVector(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect()))
                .collect(),
        })
    }

    /// Compact form, e.g. `0,1;1,1`.
    pub fn compact(&self) -> String {
        self.layers
            .iter()
            .map(|l| l.0.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join(";")
    }
}

impl fmt::Display for DimFiltration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.layers.iter().map(|l| l.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Every weakly increasing filtration with `s` layers ending in `d`, up to `cap`
/// entries; the flag reports whether the list was truncated.
pub fn filtrations_with_top(d: &DimVector, s: usize, cap: usize) -> (Vec<DimFiltration>, bool) {
    assert!(s >= 1, "a filtration needs at least one layer");
    // Per-vertex chains 0 ≤ c_1 ≤ … ≤ c_{s-1} ≤ d_i, then all combinations.
    fn chains(top: usize, len: usize) -> Vec<Vec<usize>> {
        if len == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for last in 0..=top {
            for mut c in chains(last, len - 1) {
                c.push(last);
                out.push(c);
            }
        }
        out
    }
    let per_vertex: Vec<Vec<Vec<usize>>> = d
        .0
        .iter()
        .map(|&di| {
            chains(di, s - 1)
                .into_iter()
                .map(|mut c| {
                    c.push(di);
                    c
                })
                .collect()
        })
        .collect();
    let n = d.0.len();
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        if out.len() == cap {
            return (out, true);
        }
        let layers = (0..s).map(|t| DimVector((0..n).map(|i| per_vertex[i][idx[i]][t]).collect())).collect();
        out.push(DimFiltration { layers });
        let mut k = 0;
        loop {
            if k == n {
                return (out, false);
            }
            idx[k] += 1;
            if idx[k] < per_vertex[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Classification of a staircase arrow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StairArrow {
    /// b(i_t): i_t → i_{t+1}
    Vertical { vertex: usize, layer: usize },
    /// a_t: i_t → j_{t-1}
    Diagonal { arrow: usize, layer: usize },
}

/// The staircase quiver Q^(s), with vertex i_t stored at index (t−1)·|Q_0| + i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StaircaseQuiver {
    base: Quiver,
    s: usize,
    quiver: Quiver,
    kinds: Vec<StairArrow>,
}

impl StaircaseQuiver {
    pub fn new(base: &Quiver, s: usize) -> StaircaseQuiver {
        assert!(s >= 1, "number of layers must be positive");
        let n = base.n_vertices();
        let mut vertices = Vec::with_capacity(n * s);
        for t in 1..=s {
            for v in base.vertices() {
                vertices.push(format!("{v}_{t}"));
            }
        }
        let mut arrows = Vec::new();
        let mut kinds = Vec::new();
        for t in 1..s {
            for i in 0..n {
                arrows.push(Arrow {
                    name: format!("b({}_{t})", base.vertices()[i]),
                    source: (t - 1) * n + i,
                    target: t * n + i,
                });
                kinds.push(StairArrow::Vertical { vertex: i, layer: t });
            }
        }
        for t in 2..=s {
            for (k, a) in base.arrows().iter().enumerate() {
                arrows.push(Arrow {
                    name: format!("{}_{t}", a.name),
                    source: (t - 1) * n + a.source,
                    target: (t - 2) * n + a.target,
                });
                kinds.push(StairArrow::Diagonal { arrow: k, layer: t });
            }
        }
        let quiver = Quiver::from_parts(vertices, arrows).expect("staircase names are unique");
        StaircaseQuiver {
            base: base.clone(),
            s,
            quiver,
            kinds,
        }
    }

    pub fn base(&self) -> &Quiver {
        &self.base
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn kinds(&self) -> &[StairArrow] {
        &self.kinds
    }

    pub fn kind(&self, arrow: usize) -> StairArrow {
        self.kinds[arrow]
    }

    /// Index of i_t (t is 1-based).
    pub fn vertex(&self, i: usize, t: usize) -> usize {
        assert!((1..=self.s).contains(&t) && i < self.base.n_vertices(), "vertex out of range");
        (t - 1) * self.base.n_vertices() + i
    }

    /// (i, t) for a staircase vertex index.
    pub fn split(&self, v: usize) -> (usize, usize) {
        let n = self.base.n_vertices();
        (v % n, v / n + 1)
    }

    pub fn layer(&self, v: usize) -> usize {
        self.split(v).1
    }

    /// Index of b(i_t), 1 ≤ t ≤ s−1.
    pub fn vertical(&self, i: usize, t: usize) -> usize {
        assert!(t >= 1 && t < self.s, "no vertical arrow at layer {t}");
        (t - 1) * self.base.n_vertices() + i
    }

    /// Index of a_t, 2 ≤ t ≤ s.
    pub fn diagonal(&self, a: usize, t: usize) -> usize {
        assert!(t >= 2 && t <= self.s, "no diagonal arrow at layer {t}");
        (self.s - 1) * self.base.n_vertices() + (t - 2) * self.base.n_arrows() + a
    }
}

/// Vertices Q_0 ⊔ Q_0* and one arrow a′: i → j* for every a: i → j.
pub fn separation_quiver(q: &Quiver) -> Quiver {
    let mut vertices: Vec<String> = q.vertices().to_vec();
    vertices.extend(q.vertices().iter().map(|v| format!("{v}*")));
    let n = q.n_vertices();
    let arrows = q
        .arrows()
        .iter()
        .map(|a| Arrow {
            name: format!("{}'", a.name),
            source: a.source,
            target: n + a.target,
        })
        .collect();
    Quiver::from_parts(vertices, arrows).expect("separation quiver names are unique")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A_{n}"),
            DynkinType::D(n) => write!(f, "D_{n}"),
            DynkinType::E6 => write!(f, "E_6"),
            DynkinType::E7 => write!(f, "E_7"),
            DynkinType::E8 => write!(f, "E_8"),
        }
    }
}

/// Outcome of classifying one connected component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComponentClass {
    Dynkin(DynkinType),
    NotDynkin(&'static str),
}

/// Classifies the underlying graph of every connected component.
pub fn classify_components(q: &Quiver) -> Vec<(Vec<usize>, ComponentClass)> {
    q.components()
        .into_iter()
        .map(|comp| {
            let class = classify_component(q, &comp);
            (comp, class)
        })
        .collect()
}

fn classify_component(q: &Quiver, comp: &[usize]) -> ComponentClass {
    let members: BTreeSet<usize> = comp.iter().copied().collect();
    let edges: Vec<(usize, usize)> = q
        .arrows()
        .iter()
        .filter(|a| members.contains(&a.source))
        .map(|a| (a.source.min(a.target), a.source.max(a.target)))
        .collect();
    if edges.iter().any(|(x, y)| x == y) {
        return ComponentClass::NotDynkin("loop");
    }
    let distinct: BTreeSet<(usize, usize)> = edges.iter().copied().collect();
    if distinct.len() != edges.len() {
        return ComponentClass::NotDynkin("multiple edge");
    }
    if edges.len() + 1 != comp.len() {
        return ComponentClass::NotDynkin("cycle in underlying graph");
    }
    let mut adj: BTreeMap<usize, Vec<usize>> = comp.iter().map(|&v| (v, Vec::new())).collect();
    for &(x, y) in &edges {
        adj.get_mut(&x).expect("member").push(y);
        adj.get_mut(&y).expect("member").push(x);
    }
    let branch: Vec<usize> = adj.iter().filter(|(_, n)| n.len() >= 3).map(|(&v, _)| v).collect();
    if branch.is_empty() {
        return ComponentClass::Dynkin(DynkinType::A(comp.len()));
    }
    if branch.len() > 1 || adj[&branch[0]].len() > 3 {
        return ComponentClass::NotDynkin("tree is not of type A, D or E");
    }
    let centre = branch[0];
    let mut arms: Vec<usize> = adj[&centre]
        .iter()
        .map(|&start| {
            let (mut prev, mut cur, mut len) = (centre, start, 1);
            loop {
                let next: Vec<usize> = adj[&cur].iter().copied().filter(|&w| w != prev).collect();
                match next.as_slice() {
                    [] => break len,
                    [w] => {
                        prev = cur;
                        cur = *w;
                        len += 1;
                    }
                    _ => unreachable!("only one branch vertex"),
                }
            }
        })
        .collect();
    arms.sort_unstable();
    match (arms[0], arms[1], arms[2]) {
        (1, 1, k) => ComponentClass::Dynkin(DynkinType::D(k + 3)),
        (1, 2, 2) => ComponentClass::Dynkin(DynkinType::E6),
        (1, 2, 3) => ComponentClass::Dynkin(DynkinType::E7),
        (1, 2, 4) => ComponentClass::Dynkin(DynkinType::E8),
        _ => ComponentClass::NotDynkin("tree is not of type A, D or E"),
    }
}

/// The ADE type of every component, or `None` if some component is not Dynkin.
pub fn is_dynkin(q: &Quiver) -> Option<Vec<DynkinType>> {
    classify_components(q)
        .into_iter()
        .map(|(_, c)| match c {
            ComponentClass::Dynkin(t) => Some(t),
            ComponentClass::NotDynkin(_) => None,
        })
        .collect()
}

/// Every vertex has exactly one incoming and one outgoing arrow.
pub fn is_union_of_oriented_cycles(q: &Quiver) -> bool {
    (0..q.n_vertices()).all(|v| q.arrows_from(v).count() == 1 && q.arrows_to(v).count() == 1)
}

/// Σ_{a: i→j} Σ_t d_j^(t−1) (d_i^(t) − d_i^(t−1)).
pub fn dim_repdd(q: &Quiver, dd: &DimFiltration) -> i64 {
    let mut total = 0i64;
    for a in q.arrows() {
        for t in 1..=dd.s() {
            total += (dd.at(a.target, t - 1) * (dd.at(a.source, t) - dd.at(a.source, t - 1))) as i64;
        }
    }
    total
}

/// dim rep_dd + dim GL_d/P_dd.
pub fn dim_rf(q: &Quiver, dd: &DimFiltration) -> i64 {
    let mut flag = 0i64;
    for i in 0..q.n_vertices() {
        for t in 1..=dd.s() {
            for r in t + 1..=dd.s() {
                let gr = (dd.at(i, r) - dd.at(i, r - 1)) as i64;
                let gt = (dd.at(i, t) - dd.at(i, t - 1)) as i64;
                flag += gr * gt;
            }
        }
    }
    dim_repdd(q, dd) + flag
}

/// d·d − dim RF.
pub fn euler_form_one(q: &Quiver, dd: &DimFiltration) -> i64 {
    dd.top().self_dot() - dim_rf(q, dd)
}
