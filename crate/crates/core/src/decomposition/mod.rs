//! Graph-level decompositions of a [`ManifoldGraph`].

mod assembly;
mod helly;
mod modify;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::manifold::{Block, ManifoldGraph, TorusEnd};

pub use assembly::{plan_surface_assembly, AssemblyError, AssemblyPlan, TorusCounts};
pub use helly::{helly_intersection, HellyError, HellyOutcome, Tree};
pub use modify::{modify_jsj, modify_jsj_with, ModifyOptions};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockEdge {
    pub torus: String,
    pub a: TorusEnd,
    pub b: TorusEnd,
}

impl BlockEdge {
    pub fn is_loop(&self) -> bool {
        self.a.block == self.b.block
    }
}

/// Dual multigraph of a decomposition: blocks and the tori joining them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<BlockEdge>,
}

impl BlockGraph {
    /// Loops count twice.
    pub fn degree(&self, v: &str) -> usize {
        self.edges
            .iter()
            .map(|e| usize::from(e.a.block == v) + usize::from(e.b.block == v))
            .sum()
    }
}

pub fn jsj_graph(m: &ManifoldGraph) -> BlockGraph {
    BlockGraph {
        vertices: m.blocks.keys().cloned().collect(),
        edges: m
            .tori
            .iter()
            .map(|t| BlockEdge {
                torus: t.id.clone(),
                a: t.a.clone(),
                b: t.b.clone(),
            })
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error("torus {0} has hyperbolic blocks on both sides; apply modify_jsj first")]
    NotModified(String),
    #[error("boundary torus {0} lies on a hyperbolic block; apply modify_jsj first")]
    HyperbolicBoundary(TorusEnd),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClusterKind {
    Hyperbolic,
    GraphManifold,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cluster {
    pub kind: ClusterKind,
    pub blocks: Vec<String>,
    /// A graph manifold cluster made of a single thin block.
    pub thin: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterPartition {
    pub clusters: Vec<Cluster>,
    pub transitional: Vec<String>,
}

impl ClusterPartition {
    pub fn cluster_of(&self, block: &str) -> Option<usize> {
        self.clusters
            .iter()
            .position(|c| c.blocks.iter().any(|b| b == block))
    }
}

fn is_hyperbolic(m: &ManifoldGraph, id: &str) -> bool {
    m.block(id).is_some_and(Block::is_hyperbolic)
}

/// Cuts a modified decomposition along its transitional tori.
pub fn clusters(m: &ManifoldGraph) -> Result<ClusterPartition, DecompositionError> {
    let mut transitional = Vec::new();
    let mut parent: BTreeMap<&str, &str> = m.blocks.keys().map(|k| (k.as_str(), k.as_str())).collect();

    fn find<'a>(parent: &mut BTreeMap<&'a str, &'a str>, x: &'a str) -> &'a str {
        let mut root = x;
        while parent[root] != root {
            root = parent[root];
        }
        let mut cur = x;
        while parent[cur] != root {
            let next = parent[cur];
            parent.insert(cur, root);
            cur = next;
        }
        root
    }

    for t in &m.tori {
        let (ha, hb) = (is_hyperbolic(m, &t.a.block), is_hyperbolic(m, &t.b.block));
        if ha && hb {
            return Err(DecompositionError::NotModified(t.id.clone()));
        }
        if ha || hb {
            transitional.push(t.id.clone());
            continue;
        }
        let (ra, rb) = (find(&mut parent, &t.a.block), find(&mut parent, &t.b.block));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            parent.insert(hi, lo);
        }
    }
    if let Some(end) = m.boundary.iter().find(|e| is_hyperbolic(m, &e.block)) {
        return Err(DecompositionError::HyperbolicBoundary(end.clone()));
    }

    let mut groups: BTreeMap<&str, Vec<String>> = BTreeMap::new();
    let ids: Vec<&str> = m.blocks.keys().map(String::as_str).collect();
    for id in ids {
        let root = find(&mut parent, id);
        groups.entry(root).or_default().push(id.to_string());
    }
    let clusters = groups
        .into_values()
        .map(|blocks| {
            let hyperbolic = blocks.len() == 1 && is_hyperbolic(m, &blocks[0]);
            let thin = blocks.len() == 1
                && matches!(m.block(&blocks[0]), Some(Block::Seifert(s)) if s.is_thin);
            Cluster {
                kind: if hyperbolic {
                    ClusterKind::Hyperbolic
                } else {
                    ClusterKind::GraphManifold
                },
                blocks,
                thin,
            }
        })
        .collect();
    Ok(ClusterPartition {
        clusters,
        transitional,
    })
}

/// Seifert blocks with no boundary torus of the manifold and no hyperbolic neighbor.
pub fn interior_blocks(m: &ManifoldGraph) -> BTreeSet<String> {
    m.blocks
        .iter()
        .filter(|(id, block)| {
            !block.is_hyperbolic()
                && !m.boundary.iter().any(|e| &e.block == *id)
                && !m.neighbors(id).into_iter().any(|n| is_hyperbolic(m, n))
        })
        .map(|(id, _)| id.clone())
        .collect()
}

#[cfg(test)]
pub(crate) mod fixtures {
    use crate::manifold::{
        Block, GluingMatrix, HyperbolicBlockData, JsjTorus, ManifoldGraph, SeifertBlockData,
        TorusEnd,
    };

    pub fn seifert(nb: usize) -> Block {
        Block::Seifert(SeifertBlockData::new(0, nb, &[(2, 1)], 0))
    }

    pub fn hyperbolic(nb: usize) -> Block {
        Block::Hyperbolic(HyperbolicBlockData {
            num_boundary: nb,
            ..Default::default()
        })
    }

    pub fn torus(id: &str, a: (&str, usize), b: (&str, usize), glue: [[i64; 2]; 2]) -> JsjTorus {
        JsjTorus {
            id: id.into(),
            a: TorusEnd::new(a.0, a.1),
            b: TorusEnd::new(b.0, b.1),
            glue: GluingMatrix::new(glue).unwrap(),
        }
    }

    pub const SWAP: [[i64; 2]; 2] = [[0, 1], [1, 0]];

    pub fn graph(blocks: &[(&str, Block)], tori: Vec<JsjTorus>, boundary: &[(&str, usize)]) -> ManifoldGraph {
        ManifoldGraph {
            blocks: blocks.iter().map(|(k, b)| (k.to_string(), b.clone())).collect(),
            tori,
            boundary: boundary.iter().map(|&(b, i)| TorusEnd::new(b, i)).collect(),
            geometry: None,
        }
    }

    /// S1 - S2 - H, with S1 closed off except for the torus to S2.
    pub fn ssh_chain() -> ManifoldGraph {
        graph(
            &[("S1", seifert(1)), ("S2", seifert(2)), ("H", hyperbolic(1))],
            vec![
                torus("T1", ("S1", 0), ("S2", 0), SWAP),
                torus("T2", ("S2", 1), ("H", 0), SWAP),
            ],
            &[],
        )
    }
}
