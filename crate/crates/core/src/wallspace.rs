//! Finite wallspaces and their dual cube complexes.
//!
//! Vertices of the dual are consistent orientations: a choice of halfspace
//! for every wall such that any two chosen halfspaces meet. Orientations are
//! stored as `Vec<bool>` with `false` for the `U` side and `true` for `V`.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use thiserror::Error;

use crate::cube_complex::{Cube, CubeComplex};
use crate::manifold::Slope;

pub const DEFAULT_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WallspaceError {
    #[error("wallspace has no chambers")]
    NoChambers,
    #[error("wall id {0} used twice")]
    DuplicateWall(String),
    #[error("wall {wall}: chamber {chamber} out of range")]
    ChamberOutOfRange { wall: String, chamber: usize },
    #[error("wall {0}: halfspaces do not cover every chamber")]
    NotCovering(String),
    #[error("wall {0}: a halfspace is empty")]
    EmptyHalfspace(String),
    #[error("wall {0}: one halfspace contains the other")]
    Degenerate(String),
    #[error("walls {0} and {1} have the same halfspaces")]
    RepeatedWall(String, String),
    #[error("more than {reached} consistent orientations; budget exceeded")]
    BudgetExceeded { reached: usize },
    #[error("no slopes given")]
    NoSlopes,
    #[error("slope {0} repeated")]
    RepeatedSlope(Slope),
    #[error("window must be at least 1")]
    EmptyWindow,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wall {
    pub id: String,
    pub u: BTreeSet<usize>,
    pub v: BTreeSet<usize>,
}

impl Wall {
    pub fn new(id: impl Into<String>, u: impl IntoIterator<Item = usize>, v: impl IntoIterator<Item = usize>) -> Self {
        Self {
            id: id.into(),
            u: u.into_iter().collect(),
            v: v.into_iter().collect(),
        }
    }

    pub fn side(&self, v_side: bool) -> &BTreeSet<usize> {
        if v_side {
            &self.v
        } else {
            &self.u
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wallspace {
    chambers: usize,
    walls: Vec<Wall>,
}

impl Wallspace {
    pub fn new(chambers: usize, walls: Vec<Wall>) -> Result<Self, WallspaceError> {
        if chambers == 0 {
            return Err(WallspaceError::NoChambers);
        }
        let mut ids = BTreeSet::new();
        for w in &walls {
            if !ids.insert(w.id.as_str()) {
                return Err(WallspaceError::DuplicateWall(w.id.clone()));
            }
            if let Some(&chamber) = w.u.iter().chain(&w.v).find(|&&c| c >= chambers) {
                return Err(WallspaceError::ChamberOutOfRange {
                    wall: w.id.clone(),
                    chamber,
                });
            }
            if w.u.is_empty() || w.v.is_empty() {
                return Err(WallspaceError::EmptyHalfspace(w.id.clone()));
            }
            if w.u.union(&w.v).count() != chambers {
                return Err(WallspaceError::NotCovering(w.id.clone()));
            }
            if w.u.is_subset(&w.v) || w.v.is_subset(&w.u) {
                return Err(WallspaceError::Degenerate(w.id.clone()));
            }
        }
        for (i, a) in walls.iter().enumerate() {
            for b in &walls[i + 1..] {
                if (a.u == b.u && a.v == b.v) || (a.u == b.v && a.v == b.u) {
                    return Err(WallspaceError::RepeatedWall(a.id.clone(), b.id.clone()));
                }
            }
        }
        Ok(Self { chambers, walls })
    }

    pub fn chambers(&self) -> usize {
        self.chambers
    }

    pub fn walls(&self) -> &[Wall] {
        &self.walls
    }

    /// `compat[i][si][j][sj]`: side `si` of wall `i` meets side `sj` of wall `j`.
    fn compatibility(&self) -> Vec<Vec<[[bool; 2]; 2]>> {
        let n = self.walls.len();
        let mut table = vec![vec![[[true; 2]; 2]; n]; n];
        for i in 0..n {
            for j in 0..n {
                for si in [false, true] {
                    for sj in [false, true] {
                        let a = self.walls[i].side(si);
                        let b = self.walls[j].side(sj);
                        table[i][j][usize::from(si)][usize::from(sj)] = !a.is_disjoint(b);
                    }
                }
            }
        }
        table
    }

    pub fn is_consistent(&self, orientation: &[bool]) -> bool {
        let n = self.walls.len();
        (0..n).all(|i| {
            (i + 1..n).all(|j| !self.walls[i].side(orientation[i]).is_disjoint(self.walls[j].side(orientation[j])))
        })
    }
}

/// All four corner sets are nonempty; a wall never crosses itself.
pub fn walls_cross(w1: &Wall, w2: &Wall) -> bool {
    if w1 == w2 {
        return false;
    }
    [&w1.u, &w1.v]
        .iter()
        .all(|a| [&w2.u, &w2.v].iter().all(|b| !a.is_disjoint(b)))
}

fn crossing_graph(ws: &Wallspace) -> Vec<Vec<bool>> {
    let n = ws.walls.len();
    (0..n)
        .map(|i| (0..n).map(|j| i != j && walls_cross(&ws.walls[i], &ws.walls[j])).collect())
        .collect()
}

/// A largest family of pairwise crossing walls, by exact branch and bound.
pub fn max_crossing_family(ws: &Wallspace) -> (usize, Vec<usize>) {
    let adj = crossing_graph(ws);
    let mut best = Vec::new();
    let mut current = Vec::new();
    let candidates: Vec<usize> = (0..ws.walls.len()).collect();
    grow_clique(&adj, &mut current, candidates, &mut best);
    (best.len(), best)
}

fn grow_clique(adj: &[Vec<bool>], current: &mut Vec<usize>, candidates: Vec<usize>, best: &mut Vec<usize>) {
    if current.len() > best.len() {
        *best = current.clone();
    }
    for (pos, &v) in candidates.iter().enumerate() {
        if current.len() + candidates.len() - pos <= best.len() {
            return;
        }
        let next: Vec<usize> = candidates[pos + 1..].iter().copied().filter(|&u| adj[v][u]).collect();
        current.push(v);
        grow_clique(adj, current, next, best);
        current.pop();
    }
}

/// The dual cube complex with the data that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualComplex {
    pub orientations: Vec<Vec<bool>>,
    pub complex: CubeComplex,
    /// Walls spanning each cube of `complex`, in corner-bit order.
    pub cube_walls: Vec<Vec<usize>>,
}

impl DualComplex {
    pub fn vertex_of(&self, orientation: &[bool]) -> Option<usize> {
        self.orientations.iter().position(|o| o == orientation)
    }
}

pub fn consistent_orientations(ws: &Wallspace, budget: usize) -> Result<Vec<Vec<bool>>, WallspaceError> {
    let compat = ws.compatibility();
    let n = ws.walls.len();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    fn search(
        compat: &[Vec<[[bool; 2]; 2]>],
        n: usize,
        current: &mut Vec<bool>,
        out: &mut Vec<Vec<bool>>,
        budget: usize,
    ) -> Result<(), WallspaceError> {
        let i = current.len();
        if i == n {
            if out.len() == budget {
                return Err(WallspaceError::BudgetExceeded { reached: budget });
            }
            out.push(current.clone());
            return Ok(());
        }
        for side in [false, true] {
            let ok = current
                .iter()
                .enumerate()
                .all(|(j, &sj)| compat[i][j][usize::from(side)][usize::from(sj)]);
            if ok {
                current.push(side);
                search(compat, n, current, out, budget)?;
                current.pop();
            }
        }
        Ok(())
    }
    search(&compat, n, &mut current, &mut out, budget)?;
    Ok(out)
}

/// The dual cube complex: one vertex per consistent orientation and one cube
/// for every family of pairwise crossing walls that can be flipped together.
/// Only maximal cubes are stored.
pub fn dual_cube_complex(ws: &Wallspace) -> Result<DualComplex, WallspaceError> {
    dual_cube_complex_with_budget(ws, DEFAULT_BUDGET)
}

pub fn dual_cube_complex_with_budget(ws: &Wallspace, budget: usize) -> Result<DualComplex, WallspaceError> {
    let orientations = consistent_orientations(ws, budget)?;
    let index: HashMap<&[bool], usize> = orientations.iter().enumerate().map(|(i, o)| (o.as_slice(), i)).collect();
    let adj = crossing_graph(ws);
    let n = ws.walls.len();
    let flip = |o: &[bool], walls: &[usize]| {
        let mut f = o.to_vec();
        for &w in walls {
            f[w] = !f[w];
        }
        f
    };

    let mut cubes = Vec::new();
    let mut cube_walls = Vec::new();
    for o in &orientations {
        let flippable: Vec<usize> = (0..n).filter(|&w| index.contains_key(flip(o, &[w]).as_slice())).collect();
        let from_u: Vec<usize> = flippable.iter().copied().filter(|&w| !o[w]).collect();
        let mut families = Vec::new();
        let mut current = Vec::new();
        cliques(&adj, &mut current, &from_u, &mut families);
        for family in families {
            let extendable = flippable
                .iter()
                .any(|&w| !family.contains(&w) && family.iter().all(|&s| adj[w][s]));
            if extendable {
                continue;
            }
            let corners: Option<Vec<usize>> = (0..1usize << family.len())
                .map(|c| {
                    let subset: Vec<usize> =
                        family.iter().enumerate().filter(|(k, _)| c >> k & 1 == 1).map(|(_, &w)| w).collect();
                    index.get(flip(o, &subset).as_slice()).copied()
                })
                .collect();
            if let Some(corners) = corners {
                cubes.push(Cube::new(corners));
                cube_walls.push(family);
            }
        }
    }
    let names = (0..orientations.len()).map(|i| format!("v{i}")).collect();
    let complex = CubeComplex::new(names, cubes).expect("dual complexes are well formed");
    Ok(DualComplex {
        orientations,
        complex,
        cube_walls,
    })
}

/// Every clique (including the empty one) inside `pool`, walls in increasing order.
fn cliques(adj: &[Vec<bool>], current: &mut Vec<usize>, pool: &[usize], out: &mut Vec<Vec<usize>>) {
    out.push(current.clone());
    for (pos, &v) in pool.iter().enumerate() {
        if current.iter().all(|&u| adj[u][v]) {
            current.push(v);
            cliques(adj, current, &pool[pos + 1..], out);
            current.pop();
        }
    }
}

/// Majority vote per wall.
pub fn median(a: &[bool], b: &[bool], c: &[bool]) -> Vec<bool> {
    a.iter()
        .zip(b)
        .zip(c)
        .map(|((&x, &y), &z)| (x && y) || (y && z) || (x && z))
        .collect()
}

/// A line `x q - y p = c` of slope `(p, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Line {
    pub slope: Slope,
    pub offset: i64,
}

impl Line {
    fn eval(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x * BigInt::from(self.slope.q()) - y * BigInt::from(self.slope.p()) - BigInt::from(self.offset)
    }
}

/// Lines of a torus arrangement inside a box, with the chambers they cut out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusArrangement {
    pub lines: Vec<Line>,
    /// Half side of the box `[-r, r]^2`.
    pub radius: BigRational,
    /// A point inside each chamber.
    pub samples: Vec<(BigRational, BigRational)>,
    pub wallspace: Wallspace,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn intersection(l1: &Line, l2: &Line) -> Option<(BigRational, BigRational)> {
    let (p1, q1, c1) = (l1.slope.p(), l1.slope.q(), l1.offset);
    let (p2, q2, c2) = (l2.slope.p(), l2.slope.q(), l2.offset);
    let det = p1 * q2 - q1 * p2;
    if det == 0 {
        return None;
    }
    let x = BigRational::new((p1 * c2 - p2 * c1).into(), det.into());
    let y = BigRational::new((q1 * c2 - q2 * c1).into(), det.into());
    Some((x, y))
}

/// Lifts of closed curves of the given slopes to the plane, offsets
/// `-window..=window`, cut down to a box containing every crossing.
pub fn torus_line_wallspace(slopes: &[Slope], window: i64) -> Result<TorusArrangement, WallspaceError> {
    if slopes.is_empty() {
        return Err(WallspaceError::NoSlopes);
    }
    if window < 1 {
        return Err(WallspaceError::EmptyWindow);
    }
    let mut seen = BTreeSet::new();
    for s in slopes {
        if !seen.insert(*s) {
            return Err(WallspaceError::RepeatedSlope(*s));
        }
    }
    let lines: Vec<Line> = slopes
        .iter()
        .flat_map(|&slope| (-window..=window).map(move |offset| Line { slope, offset }))
        .collect();

    let mut extent = rat(window);
    let mut crossings_x = Vec::new();
    for (i, l1) in lines.iter().enumerate() {
        for l2 in &lines[i + 1..] {
            if let Some((x, y)) = intersection(l1, l2) {
                extent = extent.max(x.abs()).max(y.abs());
                crossings_x.push(x);
            }
        }
    }
    let r = extent.floor() + rat(1);

    let mut critical: BTreeSet<BigRational> = crossings_x.into_iter().collect();
    critical.insert(-r.clone());
    critical.insert(r.clone());
    for l in &lines {
        let (p, q, c) = (l.slope.p(), l.slope.q(), rat(l.offset));
        if q != 0 {
            // where the line meets y = -r and y = r
            for y in [-r.clone(), r.clone()] {
                let x = (c.clone() + y * BigInt::from(p)) / BigInt::from(q);
                if x.abs() < r {
                    critical.insert(x);
                }
            }
        }
    }
    let critical: Vec<BigRational> = critical.into_iter().collect();

    let two = rat(2);
    let mut samples = Vec::new();
    let mut signs: Vec<Vec<bool>> = Vec::new();
    let mut sign_index: HashMap<Vec<bool>, usize> = HashMap::new();
    for pair in critical.windows(2) {
        let xm = (&pair[0] + &pair[1]) / &two;
        let mut ys: Vec<BigRational> = lines
            .iter()
            .filter(|l| l.slope.p() != 0)
            .map(|l| (&xm * BigInt::from(l.slope.q()) - BigInt::from(l.offset)) / BigInt::from(l.slope.p()))
            .filter(|y| y.abs() < r)
            .collect();
        ys.push(-r.clone());
        ys.push(r.clone());
        ys.sort();
        ys.dedup();
        for w in ys.windows(2) {
            let ym = (&w[0] + &w[1]) / &two;
            let sign: Vec<bool> = lines.iter().map(|l| l.eval(&xm, &ym).is_positive()).collect();
            if !sign_index.contains_key(&sign) {
                sign_index.insert(sign.clone(), samples.len());
                samples.push((xm.clone(), ym));
                signs.push(sign);
            }
        }
    }

    let walls = lines
        .iter()
        .enumerate()
        .map(|(k, l)| {
            let (u, v): (Vec<usize>, Vec<usize>) = (0..signs.len()).partition(|&c| !signs[c][k]);
            Wall::new(format!("s{}_{}c{}", l.slope.p(), l.slope.q(), l.offset), u, v)
        })
        .collect();
    let wallspace = Wallspace::new(samples.len(), walls)?;
    Ok(TorusArrangement {
        lines,
        radius: r,
        samples,
        wallspace,
    })
}

/// `k` pairwise crossing walls on the `2^k` sign patterns.
pub fn crossing_walls(k: usize) -> Wallspace {
    let chambers = 1usize << k;
    let walls = (0..k)
        .map(|i| {
            let (u, v): (Vec<usize>, Vec<usize>) = (0..chambers).partition(|c| c >> i & 1 == 0);
            Wall::new(format!("w{i}"), u, v)
        })
        .collect();
    Wallspace::new(chambers, walls).expect("valid by construction")
}
