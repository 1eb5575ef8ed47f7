//! Finite cube complexes given by corner maps, their hyperplanes, the link
//! condition and the special-complex pathologies.
//!
//! A `d`-cube lists its `2^d` corners in binary-counter order: corner `c`
//! sits at the point whose `k`-th coordinate is bit `k` of `c`. Faces are
//! implicit. Edges are identified by their unordered endpoint pair, so a
//! quotient is expressed by letting corners of different cubes (or of the
//! same cube) hit the same vertices.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("vertex id {0} declared twice")]
    DuplicateVertex(String),
    #[error("cube {cube}: {corners} corners is not a power of two")]
    CornerCount { cube: usize, corners: usize },
    #[error("cube {cube}: corner refers to missing vertex {vertex}")]
    UnknownVertex { cube: usize, vertex: usize },
    #[error("cube {cube}: edge along coordinate {coordinate} is a loop at {vertex}")]
    DegenerateEdge {
        cube: usize,
        coordinate: usize,
        vertex: String,
    },
    #[error("link computation supports dimension at most 4, complex has dimension {0}")]
    DimensionTooLarge(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cube {
    pub corners: Vec<usize>,
}

impl Cube {
    pub fn new(corners: Vec<usize>) -> Self {
        Self { corners }
    }

    pub fn dim(&self) -> usize {
        self.corners.len().trailing_zeros() as usize
    }

    /// The face fixing coordinates outside `free` to the bits of `base`.
    pub fn face(&self, free: &[usize], base: usize) -> Cube {
        let corners = (0..1usize << free.len())
            .map(|c| {
                let mut idx = base;
                for (k, &axis) in free.iter().enumerate() {
                    idx &= !(1 << axis);
                    if c >> k & 1 == 1 {
                        idx |= 1 << axis;
                    }
                }
                self.corners[idx]
            })
            .collect();
        Cube { corners }
    }

    /// Lexicographically least corner list over all symmetries of the cube.
    pub fn canonical(&self) -> Cube {
        let d = self.dim();
        let mut best: Option<Vec<usize>> = None;
        for flip in 0..1usize << d {
            let mut used = vec![false; d];
            self.least_extension(flip, &mut used, vec![0], &mut best);
        }
        Cube {
            corners: best.unwrap_or_else(|| self.corners.clone()),
        }
    }

    /// Extends a partial axis order. Position block `2^i..2^(i+1)` depends only
    /// on the first `i + 1` axes, so only axes giving the least block survive.
    fn least_extension(&self, flip: usize, used: &mut [bool], index: Vec<usize>, best: &mut Option<Vec<usize>>) {
        let seq: Vec<usize> = index.iter().map(|&i| self.corners[i ^ flip]).collect();
        if let Some(b) = best.as_ref() {
            if seq.as_slice() > &b[..seq.len()] {
                return;
            }
        }
        if index.len() == self.corners.len() {
            if best.as_ref().is_none_or(|b| seq < *b) {
                *best = Some(seq);
            }
            return;
        }
        let block = |axis: usize| -> Vec<usize> { index.iter().map(|&i| self.corners[(i | 1 << axis) ^ flip]).collect() };
        let free: Vec<usize> = (0..used.len()).filter(|&a| !used[a]).collect();
        let least = free.iter().map(|&a| block(a)).min().expect("a free axis remains");
        for a in free {
            if block(a) != least {
                continue;
            }
            used[a] = true;
            let mut next = index.clone();
            next.extend(index.iter().map(|&i| i | 1 << a));
            self.least_extension(flip, used, next, best);
            used[a] = false;
        }
    }
}

fn edge_key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeComplex {
    vertices: Vec<String>,
    cubes: Vec<Cube>,
    edges: Vec<(usize, usize)>,
    edge_index: HashMap<(usize, usize), usize>,
}

impl CubeComplex {
    pub fn new(vertices: Vec<String>, cubes: Vec<Cube>) -> Result<Self, ComplexError> {
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(ComplexError::DuplicateVertex(v.clone()));
            }
        }
        for (i, cube) in cubes.iter().enumerate() {
            let n = cube.corners.len();
            if !n.is_power_of_two() {
                return Err(ComplexError::CornerCount { cube: i, corners: n });
            }
            if let Some(&vertex) = cube.corners.iter().find(|&&v| v >= vertices.len()) {
                return Err(ComplexError::UnknownVertex { cube: i, vertex });
            }
            for c in 0..n {
                for k in 0..cube.dim() {
                    if cube.corners[c] == cube.corners[c ^ (1 << k)] {
                        return Err(ComplexError::DegenerateEdge {
                            cube: i,
                            coordinate: k,
                            vertex: vertices[cube.corners[c]].clone(),
                        });
                    }
                }
            }
        }
        let mut edge_set = BTreeSet::new();
        for cube in &cubes {
            for c in 0..cube.corners.len() {
                for k in 0..cube.dim() {
                    if c >> k & 1 == 0 {
                        edge_set.insert(edge_key(cube.corners[c], cube.corners[c | 1 << k]));
                    }
                }
            }
        }
        let edges: Vec<(usize, usize)> = edge_set.into_iter().collect();
        let edge_index = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        Ok(Self {
            vertices,
            cubes,
            edges,
            edge_index,
        })
    }

    /// The standard `k`-cube with vertices named by their bit strings.
    pub fn standard_cube(k: usize) -> Self {
        let vertices = (0..1usize << k)
            .map(|c| {
                let bits: String = (0..k).map(|b| if c >> b & 1 == 1 { '1' } else { '0' }).collect();
                format!("v{bits}")
            })
            .collect();
        let cubes = vec![Cube::new((0..1usize << k).collect())];
        Self::new(vertices, cubes).expect("standard cube is valid")
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn cubes(&self) -> &[Cube] {
        &self.cubes
    }

    /// Edges as sorted vertex pairs.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        self.edge_index.get(&edge_key(u, v)).copied()
    }

    pub fn vertex_id(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    /// Every cube, including faces, each listed once up to symmetry.
    pub fn all_cubes(&self) -> Vec<Cube> {
        let mut set = BTreeSet::new();
        for v in 0..self.vertices.len() {
            set.insert(Cube::new(vec![v]));
        }
        for cube in &self.cubes {
            let d = cube.dim();
            for mask in 1..1usize << d {
                let free: Vec<usize> = (0..d).filter(|k| mask >> k & 1 == 1).collect();
                for base in 0..1usize << d {
                    if base & mask == 0 {
                        set.insert(cube.face(&free, base).canonical());
                    }
                }
            }
        }
        set.into_iter().collect()
    }

    /// Distinct squares.
    pub fn squares(&self) -> Vec<Cube> {
        let mut set = BTreeSet::new();
        for cube in &self.cubes {
            let d = cube.dim();
            for i in 0..d {
                for j in i + 1..d {
                    let mask = 1 << i | 1 << j;
                    for base in (0..1usize << d).filter(|b| b & mask == 0) {
                        set.insert(cube.face(&[i, j], base).canonical());
                    }
                }
            }
        }
        set.into_iter().collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn dimension(&self) -> usize {
        let top = self.cubes.iter().map(Cube::dim).max().unwrap_or(0);
        if self.vertices.is_empty() {
            0
        } else {
            top
        }
    }

    /// Stored cubes not contained in another stored cube.
    pub fn maximal_cubes(&self) -> Vec<Cube> {
        let all_faces: BTreeSet<Cube> = self
            .cubes
            .iter()
            .flat_map(|cube| {
                let d = cube.dim();
                (1..(1usize << d) - 1).flat_map(move |mask| {
                    let free: Vec<usize> = (0..d).filter(|k| mask >> k & 1 == 1).collect();
                    (0..1usize << d)
                        .filter(move |base| base & mask == 0)
                        .map(move |base| cube.face(&free, base).canonical())
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        let mut seen = BTreeSet::new();
        self.cubes
            .iter()
            .filter(|c| {
                let canon = c.canonical();
                !all_faces.contains(&canon) && seen.insert(canon)
            })
            .cloned()
            .collect()
    }
}

impl fmt::Display for CubeComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut order: Vec<usize> = (0..self.vertices.len()).collect();
        order.sort_by(|&a, &b| self.vertices[a].cmp(&self.vertices[b]));
        for &v in &order {
            writeln!(f, "vertex {}", self.vertices[v])?;
        }
        let mut lines: Vec<String> = self
            .cubes
            .iter()
            .map(|c| {
                let names: Vec<&str> = c.corners.iter().map(|&v| self.vertices[v].as_str()).collect();
                format!("cube {} {}", c.dim(), names.join(" "))
            })
            .collect();
        lines.sort();
        for l in lines {
            writeln!(f, "{l}")?;
        }
        Ok(())
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperplane {
    pub id: usize,
    /// Dual edges as sorted vertex pairs.
    pub edges: Vec<(usize, usize)>,
    /// Positions `(cube index, coordinate)` among the stored cubes whose midcube lies in this hyperplane.
    pub midcubes: Vec<(usize, usize)>,
}

/// Edge classes and oriented edge classes of the square relation.
struct Parallelism {
    class: Vec<usize>,
    directed: UnionFind,
    count: usize,
}

impl Parallelism {
    /// Index of the directed edge `u -> v`.
    fn dir(c: &CubeComplex, u: usize, v: usize) -> usize {
        let e = c.edge_id(u, v).expect("edge exists");
        if u < v {
            2 * e
        } else {
            2 * e + 1
        }
    }

    fn new(c: &CubeComplex, squares: &[Cube]) -> Self {
        let mut undirected = UnionFind::new(c.edges.len());
        let mut directed = UnionFind::new(2 * c.edges.len());
        for s in squares {
            let [a, b, x, y] = [s.corners[0], s.corners[1], s.corners[2], s.corners[3]];
            let e = |u, v| c.edge_id(u, v).expect("edge exists");
            undirected.union(e(a, b), e(x, y));
            undirected.union(e(a, x), e(b, y));
            directed.union(Self::dir(c, a, b), Self::dir(c, x, y));
            directed.union(Self::dir(c, b, a), Self::dir(c, y, x));
            directed.union(Self::dir(c, a, x), Self::dir(c, b, y));
            directed.union(Self::dir(c, x, a), Self::dir(c, y, b));
        }
        let mut relabel = BTreeMap::new();
        let class = (0..c.edges.len())
            .map(|e| {
                let root = undirected.find(e);
                let next = relabel.len();
                *relabel.entry(root).or_insert(next)
            })
            .collect();
        Self {
            class,
            directed,
            count: relabel.len(),
        }
    }

    fn same_direction(&mut self, c: &CubeComplex, e1: (usize, usize), e2: (usize, usize)) -> bool {
        let (a, b) = (Self::dir(c, e1.0, e1.1), Self::dir(c, e2.0, e2.1));
        self.directed.find(a) == self.directed.find(b)
    }
}

/// Partition of the edges into parallelism classes.
pub fn hyperplanes(c: &CubeComplex) -> Vec<Hyperplane> {
    let par = Parallelism::new(c, &c.squares());
    let mut out: Vec<Hyperplane> = (0..par.count)
        .map(|id| Hyperplane {
            id,
            edges: Vec::new(),
            midcubes: Vec::new(),
        })
        .collect();
    for (e, &edge) in c.edges.iter().enumerate() {
        out[par.class[e]].edges.push(edge);
    }
    for (i, cube) in c.cubes.iter().enumerate() {
        for k in 0..cube.dim() {
            let e = c.edge_id(cube.corners[0], cube.corners[1 << k]).expect("edge exists");
            out[par.class[e]].midcubes.push((i, k));
        }
    }
    out
}

pub fn dimension(c: &CubeComplex) -> usize {
    c.dimension()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinkIssue {
    /// A cube corner whose edges at the vertex are not distinct.
    DegenerateCorner { vertex: usize, cube: Cube },
    /// Two cube corners at the vertex spanning the same edges.
    DuplicateSimplex { vertex: usize, edges: Vec<(usize, usize)> },
    /// Edges pairwise spanning squares, with every proper subset spanning a
    /// cube corner, but no cube corner on all of them.
    MissingSimplex { vertex: usize, edges: Vec<(usize, usize)> },
}

impl LinkIssue {
    pub fn describe(&self, c: &CubeComplex) -> String {
        let name = |v: usize| c.vertices[v].as_str();
        let list = |edges: &[(usize, usize)]| {
            edges
                .iter()
                .map(|&(a, b)| format!("{}-{}", name(a), name(b)))
                .collect::<Vec<_>>()
                .join(" ")
        };
        match self {
            LinkIssue::DegenerateCorner { vertex, cube } => {
                let corners: Vec<&str> = cube.corners.iter().map(|&v| name(v)).collect();
                format!("link of {}: degenerate corner of cube [{}]", name(*vertex), corners.join(" "))
            }
            LinkIssue::DuplicateSimplex { vertex, edges } => {
                format!("link of {}: not simplicial, two cubes span {}", name(*vertex), list(edges))
            }
            LinkIssue::MissingSimplex { vertex, edges } => {
                format!("link of {}: not flag, no cube spans {}", name(*vertex), list(edges))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinkReport {
    pub issues: Vec<LinkIssue>,
}

impl LinkReport {
    pub fn is_npc(&self) -> bool {
        self.issues.is_empty()
    }
}

/// Gromov's link condition: every vertex link is a flag simplicial complex.
pub fn check_npc(c: &CubeComplex) -> Result<LinkReport, ComplexError> {
    let dim = c.dimension();
    if dim > 4 {
        return Err(ComplexError::DimensionTooLarge(dim));
    }
    let mut issues = Vec::new();
    // per vertex: simplices as sets of edge ids
    let mut simplices: Vec<BTreeMap<Vec<usize>, usize>> = vec![BTreeMap::new(); c.vertices.len()];
    for cube in c.all_cubes().into_iter().filter(|q| q.dim() >= 2) {
        let d = cube.dim();
        for corner in 0..cube.corners.len() {
            let x = cube.corners[corner];
            let mut edges: Vec<usize> = (0..d)
                .map(|k| c.edge_id(x, cube.corners[corner ^ (1 << k)]).expect("edge exists"))
                .collect();
            edges.sort_unstable();
            edges.dedup();
            if edges.len() < d {
                issues.push(LinkIssue::DegenerateCorner {
                    vertex: x,
                    cube: cube.clone(),
                });
                continue;
            }
            *simplices[x].entry(edges).or_insert(0) += 1;
        }
    }
    for (x, simp) in simplices.iter().enumerate() {
        for (edges, &count) in simp {
            if count > 1 {
                issues.push(LinkIssue::DuplicateSimplex {
                    vertex: x,
                    edges: edges.iter().map(|&e| c.edges[e]).collect(),
                });
            }
        }
        let link_edges: BTreeSet<(usize, usize)> = simp
            .keys()
            .filter(|s| s.len() == 2)
            .map(|s| (s[0], s[1]))
            .collect();
        let link_vertices: Vec<usize> = (0..c.edges.len())
            .filter(|&e| c.edges[e].0 == x || c.edges[e].1 == x)
            .collect();
        let mut cliques: Vec<Vec<usize>> = link_edges.iter().map(|&(a, b)| vec![a, b]).collect();
        for size in 3..=5 {
            let mut next = Vec::new();
            for k in &cliques {
                let last = *k.last().expect("nonempty");
                for &v in link_vertices.iter().filter(|&&v| v > last) {
                    if k.iter().all(|&u| link_edges.contains(&(u, v))) {
                        let mut grown = k.clone();
                        grown.push(v);
                        next.push(grown);
                    }
                }
            }
            for k in &next {
                if simp.contains_key(k) {
                    continue;
                }
                let boundary_present = (0..size).all(|skip| {
                    let facet: Vec<usize> =
                        k.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &e)| e).collect();
                    simp.contains_key(&facet)
                });
                if boundary_present {
                    issues.push(LinkIssue::MissingSimplex {
                        vertex: x,
                        edges: k.iter().map(|&e| c.edges[e]).collect(),
                    });
                }
            }
            cliques = next;
        }
    }
    Ok(LinkReport { issues })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperplaneReport {
    pub id: usize,
    pub one_sided: bool,
    pub self_intersecting: bool,
    /// Direct self-osculation.
    pub self_osculating: bool,
    /// Indirect self-osculation; informational only.
    pub indirect_osculating: bool,
}

impl HyperplaneReport {
    pub fn is_clean(&self) -> bool {
        !(self.one_sided || self.self_intersecting || self.self_osculating)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pathology {
    OneSided,
    SelfIntersecting,
    SelfOsculating,
    InterOsculating,
}

impl fmt::Display for Pathology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pathology::OneSided => "one-sided",
            Pathology::SelfIntersecting => "self-intersecting",
            Pathology::SelfOsculating => "self-osculating",
            Pathology::InterOsculating => "inter-osculating",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathologyReport {
    pub hyperplanes: Vec<Hyperplane>,
    pub per_hyperplane: Vec<HyperplaneReport>,
    /// Pairs of hyperplane ids that both cross and osculate.
    pub inter_osculating: Vec<(usize, usize)>,
    pub special: bool,
}

impl PathologyReport {
    /// Pathology kinds present anywhere.
    pub fn pathologies(&self) -> BTreeSet<Pathology> {
        let mut out = BTreeSet::new();
        for h in &self.per_hyperplane {
            if h.one_sided {
                out.insert(Pathology::OneSided);
            }
            if h.self_intersecting {
                out.insert(Pathology::SelfIntersecting);
            }
            if h.self_osculating {
                out.insert(Pathology::SelfOsculating);
            }
        }
        if !self.inter_osculating.is_empty() {
            out.insert(Pathology::InterOsculating);
        }
        out
    }
}

/// Checks every hyperplane for the pathologies excluded from special complexes.
///
/// Osculation is only oriented for two-sided hyperplanes, so a one-sided
/// hyperplane is reported as one-sided and never as directly osculating.
pub fn specialness_report(c: &CubeComplex) -> PathologyReport {
    let squares = c.squares();
    let mut par = Parallelism::new(c, &squares);
    let hyps = hyperplanes(c);
    let n = par.count;

    let mut one_sided = vec![false; n];
    for (e, &(u, v)) in c.edges.iter().enumerate() {
        if par.same_direction(c, (u, v), (v, u)) {
            one_sided[par.class[e]] = true;
        }
    }

    let mut self_intersecting = vec![false; n];
    let mut crossing = BTreeSet::new();
    let mut spanned = BTreeSet::new();
    for s in &squares {
        let [a, b, x, y] = [s.corners[0], s.corners[1], s.corners[2], s.corners[3]];
        let e = |u, v| c.edge_id(u, v).expect("edge exists");
        let (h0, h1) = (par.class[e(a, b)], par.class[e(a, x)]);
        if h0 == h1 {
            self_intersecting[h0] = true;
        } else {
            crossing.insert((h0.min(h1), h0.max(h1)));
        }
        for (corner, n1, n2) in [(a, b, x), (b, a, y), (x, y, a), (y, x, b)] {
            let (p, q) = (e(corner, n1), e(corner, n2));
            spanned.insert((p.min(q), p.max(q)));
        }
    }

    let mut direct = vec![false; n];
    let mut indirect = vec![false; n];
    let mut osculating_pairs = BTreeSet::new();
    for x in 0..c.vertices.len() {
        let incident: Vec<(usize, usize)> = c
            .edges
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| a == x || b == x)
            .map(|(i, &(a, b))| (i, if a == x { b } else { a }))
            .collect();
        for (i, &(e1, y1)) in incident.iter().enumerate() {
            for &(e2, y2) in &incident[i + 1..] {
                if spanned.contains(&(e1.min(e2), e1.max(e2))) {
                    continue;
                }
                let (h1, h2) = (par.class[e1], par.class[e2]);
                if h1 != h2 {
                    osculating_pairs.insert((h1.min(h2), h1.max(h2)));
                } else if !one_sided[h1] {
                    if par.same_direction(c, (x, y1), (x, y2)) {
                        direct[h1] = true;
                    } else {
                        indirect[h1] = true;
                    }
                }
            }
        }
    }

    let per_hyperplane: Vec<HyperplaneReport> = (0..n)
        .map(|id| HyperplaneReport {
            id,
            one_sided: one_sided[id],
            self_intersecting: self_intersecting[id],
            self_osculating: direct[id],
            indirect_osculating: indirect[id],
        })
        .collect();
    let inter_osculating: Vec<(usize, usize)> =
        crossing.intersection(&osculating_pairs).copied().collect();
    let special = per_hyperplane.iter().all(HyperplaneReport::is_clean) && inter_osculating.is_empty();
    PathologyReport {
        hyperplanes: hyps,
        per_hyperplane,
        inter_osculating,
        special,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_canonical(cube: &Cube) -> Vec<usize> {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for i in 0..n {
                    let mut q = p.clone();
                    q.insert(i, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let d = cube.dim();
        let mut best: Option<Vec<usize>> = None;
        for perm in perms(d) {
            for flip in 0..1usize << d {
                let corners: Vec<usize> = (0..1usize << d)
                    .map(|c| {
                        let idx = (0..d).filter(|k| c >> k & 1 == 1).fold(0, |acc, k| acc | 1 << perm[k]);
                        cube.corners[idx ^ flip]
                    })
                    .collect();
                if best.as_ref().is_none_or(|b| corners < *b) {
                    best = Some(corners);
                }
            }
        }
        best.unwrap()
    }

    proptest! {
        #[test]
        fn canonical_matches_exhaustive_search(d in 0usize..=4, labels in proptest::collection::vec(0usize..4, 16)) {
            let cube = Cube::new(labels[..1 << d].to_vec());
            prop_assert_eq!(cube.canonical().corners, brute_canonical(&cube));
        }
    }

    fn complex(names: &[&str], cubes: &[&[&str]]) -> CubeComplex {
        let vertices: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let cubes = cubes
            .iter()
            .map(|c| Cube::new(c.iter().map(|v| names.iter().position(|n| n == v).unwrap()).collect()))
            .collect();
        CubeComplex::new(vertices, cubes).unwrap()
    }

    fn grid(n: usize) -> CubeComplex {
        let name = |i: usize, j: usize| format!("p{i}_{j}");
        let vertices: Vec<String> = (0..=n).flat_map(|i| (0..=n).map(move |j| name(i, j))).collect();
        let id = |i: usize, j: usize| i * (n + 1) + j;
        let cubes = (0..n)
            .flat_map(|i| (0..n).map(move |j| Cube::new(vec![id(i, j), id(i + 1, j), id(i, j + 1), id(i + 1, j + 1)])))
            .collect();
        CubeComplex::new(vertices, cubes).unwrap()
    }

    #[test]
    fn hyperplane_counts() {
        assert_eq!(hyperplanes(&CubeComplex::standard_cube(2)).len(), 2);
        for k in 1..=4 {
            assert_eq!(hyperplanes(&CubeComplex::standard_cube(k)).len(), k);
        }
        // a 3x3 grid has 4 grid lines in each direction, crossed by 3 dual hyperplanes each
        let g = grid(3);
        let hs = hyperplanes(&g);
        assert_eq!(hs.len(), 6);
        assert!(hs.iter().all(|h| h.edges.len() == 4));
    }

    #[test]
    fn dimensions() {
        let point = CubeComplex::new(vec!["x".into()], vec![Cube::new(vec![0])]).unwrap();
        assert_eq!(dimension(&point), 0);
        assert_eq!(dimension(&complex(&["a", "b"], &[&["a", "b"]])), 1);
        assert_eq!(dimension(&CubeComplex::standard_cube(3)), 3);
    }

    #[test]
    fn validation() {
        let err = CubeComplex::new(vec!["a".into(), "b".into()], vec![Cube::new(vec![0, 0])]);
        assert!(matches!(err, Err(ComplexError::DegenerateEdge { .. })));
        let err = CubeComplex::new(vec!["a".into()], vec![Cube::new(vec![0, 1, 2])]);
        assert!(matches!(err, Err(ComplexError::CornerCount { .. })));
        let err = CubeComplex::new(vec!["a".into(), "a".into()], vec![]);
        assert!(matches!(err, Err(ComplexError::DuplicateVertex(_))));
    }

    #[test]
    fn link_condition() {
        assert!(check_npc(&CubeComplex::standard_cube(2)).unwrap().is_npc());
        assert!(check_npc(&CubeComplex::standard_cube(3)).unwrap().is_npc());
        assert!(check_npc(&grid(3)).unwrap().is_npc());
        // three squares around a corner of a hollow cube
        let corner = complex(
            &["x", "a", "b", "c", "ab", "bc", "ac"],
            &[&["x", "a", "b", "ab"], &["x", "b", "c", "bc"], &["x", "a", "c", "ac"]],
        );
        let report = check_npc(&corner).unwrap();
        assert_eq!(report.issues.len(), 1);
        assert!(matches!(&report.issues[0], LinkIssue::MissingSimplex { vertex: 0, edges } if edges.len() == 3));
        assert_eq!(check_npc(&CubeComplex::standard_cube(5)), Err(ComplexError::DimensionTooLarge(5)));
    }

    #[test]
    fn cube_faces_are_deduplicated() {
        let c = CubeComplex::standard_cube(3);
        let all = c.all_cubes();
        let count = |d: usize| all.iter().filter(|q| q.dim() == d).count();
        assert_eq!((count(0), count(1), count(2), count(3)), (8, 12, 6, 1));
        assert_eq!(c.maximal_cubes().len(), 1);
    }

    #[test]
    fn standard_cubes_are_special() {
        for k in 1..=4 {
            let r = specialness_report(&CubeComplex::standard_cube(k));
            assert!(r.special, "{k}-cube");
        }
        assert!(specialness_report(&grid(3)).special);
    }

    #[test]
    fn square_with_all_edges_identified_self_intersects() {
        let c = complex(&["a", "b"], &[&["a", "b", "b", "a"]]);
        let r = specialness_report(&c);
        assert!(r.pathologies().contains(&Pathology::SelfIntersecting));
        assert_eq!(hyperplanes(&c).len(), 1);
    }

    #[test]
    fn moebius_strip_is_one_sided() {
        let c = complex(&["A", "B", "p", "q"], &[&["A", "p", "B", "q"], &["p", "B", "q", "A"]]);
        let r = specialness_report(&c);
        assert!(check_npc(&c).unwrap().is_npc());
        assert_eq!(r.pathologies(), BTreeSet::from([Pathology::OneSided]));
    }

    #[test]
    fn bent_strip_inter_osculates() {
        let c = complex(
            &["a", "b", "c", "d", "e", "f", "h"],
            &[&["a", "b", "c", "d"], &["b", "e", "d", "f"], &["c", "d", "f", "h"]],
        );
        assert!(check_npc(&c).unwrap().is_npc());
        assert_eq!(specialness_report(&c).pathologies(), BTreeSet::from([Pathology::InterOsculating]));
    }

    #[test]
    fn serialization_is_sorted() {
        let c = complex(&["b", "a"], &[&["b", "a"]]);
        assert_eq!(c.to_string(), "vertex a\nvertex b\ncube 1 b a\n");
    }
}
