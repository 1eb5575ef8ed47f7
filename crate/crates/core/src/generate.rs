//! Seeded random instances for property checks and demos.

use std::collections::BTreeSet;

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::decomposition::Tree;
use crate::manifold::{
    Block, GluingMatrix, JsjTorus, ManifoldGraph, SeifertBlockData, TorusEnd,
};
use crate::wallspace::{Wall, Wallspace};

/// Uniformly random parent attachment, relabelled by a random permutation.
pub fn random_tree<R: Rng>(rng: &mut R, n: usize) -> Tree {
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    let edges: Vec<(usize, usize)> = (1..n)
        .map(|v| (labels[rng.gen_range(0..v)], labels[v]))
        .collect();
    Tree::new(n, &edges).expect("attachment produces a tree")
}

/// A connected vertex set grown from `start` up to `size` vertices.
pub fn random_subtree<R: Rng>(rng: &mut R, tree: &Tree, start: usize, size: usize) -> BTreeSet<usize> {
    let mut set = BTreeSet::from([start]);
    let mut frontier: Vec<usize> = tree.neighbors(start).to_vec();
    while set.len() < size && !frontier.is_empty() {
        let v = frontier.swap_remove(rng.gen_range(0..frontier.len()));
        if set.insert(v) {
            frontier.extend(tree.neighbors(v).iter().filter(|u| !set.contains(u)));
        }
    }
    set
}

/// Random subtrees kept only when they meet every subtree kept so far.
pub fn random_intersecting_subtrees<R: Rng>(rng: &mut R, tree: &Tree, count: usize) -> Vec<BTreeSet<usize>> {
    let n = tree.len();
    let mut out: Vec<BTreeSet<usize>> = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < 50 * count {
        attempts += 1;
        let size = rng.gen_range(1..=n.max(1));
        let start = rng.gen_range(0..n);
        let s = random_subtree(rng, tree, start, size);
        if out.iter().all(|t| !t.is_disjoint(&s)) {
            out.push(s);
        }
    }
    out
}

/// Random walls on at most `max_chambers` chambers.
///
/// With `overlap` a chamber may land in both halfspaces of a wall. Fewer
/// walls are returned when distinct ones are hard to find.
pub fn random_wallspace<R: Rng>(rng: &mut R, max_walls: usize, max_chambers: usize, overlap: bool) -> Wallspace {
    let chambers = rng.gen_range(2..=max_chambers.max(2));
    let count = rng.gen_range(1..=max_walls.max(1));
    let mut walls = Vec::with_capacity(count);
    let mut attempts = 0;
    while walls.len() < count && (walls.is_empty() || attempts < 100 * count) {
        attempts += 1;
        let (mut u, mut v) = (BTreeSet::new(), BTreeSet::new());
        for c in 0..chambers {
            match rng.gen_range(0..if overlap { 5 } else { 4 }) {
                0 | 1 => {
                    u.insert(c);
                }
                2 | 3 => {
                    v.insert(c);
                }
                _ => {
                    u.insert(c);
                    v.insert(c);
                }
            }
        }
        if u.is_empty() || v.is_empty() || u.is_subset(&v) || v.is_subset(&u) {
            continue;
        }
        let repeated = walls
            .iter()
            .any(|w: &Wall| (w.u == u && w.v == v) || (w.u == v && w.v == u));
        if repeated {
            continue;
        }
        walls.push(Wall {
            id: format!("w{}", walls.len()),
            u,
            v,
        });
    }
    Wallspace::new(chambers, walls).expect("valid by construction")
}

/// A random matrix with determinant +1 or -1 and entries in `-bound..=bound`.
pub fn random_unimodular<R: Rng>(rng: &mut R, bound: i64) -> GluingMatrix {
    loop {
        let e = [
            [rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound)],
            [rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound)],
        ];
        if let Ok(g) = GluingMatrix::new(e) {
            return g;
        }
    }
}

/// A closed graph manifold with a Seifert block `B` glued to `ends` leaf
/// blocks, so that `B` is interior.
///
/// Seifert invariants are bounded by `entry` and gluing entries by `glue`.
pub fn random_interior_block<R: Rng>(rng: &mut R, ends: usize, entry: i64, glue: i64) -> ManifoldGraph {
    let exceptional: Vec<(i64, i64)> = (0..rng.gen_range(0..=2))
        .map(|_| loop {
            let a = rng.gen_range(2..=entry.max(2));
            let b = rng.gen_range(-entry..=entry);
            if b != 0 && a.gcd(&b) == 1 {
                break (a, b);
            }
        })
        .collect();
    let center = SeifertBlockData::new(rng.gen_range(0..=1), ends, &exceptional, 0);
    let mut m = ManifoldGraph::default();
    m.blocks.insert("B".into(), Block::Seifert(center));
    for i in 0..ends {
        let leaf = format!("L{i}");
        m.blocks.insert(leaf.clone(), Block::Seifert(SeifertBlockData::new(0, 1, &[(2, 1)], 0)));
        let (a, b) = if rng.gen_bool(0.5) {
            (TorusEnd::new("B", i), TorusEnd::new(leaf, 0))
        } else {
            (TorusEnd::new(leaf, 0), TorusEnd::new("B", i))
        };
        m.tori.push(JsjTorus {
            id: format!("T{i}"),
            a,
            b,
            glue: random_unimodular(rng, glue),
        });
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::interior_blocks;
    use crate::manifold::validate;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_produce_valid_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let t = random_tree(&mut rng, 12);
            let subs = random_intersecting_subtrees(&mut rng, &t, 5);
            assert!(!subs.is_empty());
            assert!(subs.iter().all(|s| t.is_subtree(s)));
            let _ = random_wallspace(&mut rng, 8, 12, true);
            let m = random_interior_block(&mut rng, 3, 4, 3);
            assert!(validate(&m).is_valid());
            assert!(interior_blocks(&m).contains("B"));
        }
    }

    #[test]
    fn seeded_output_is_reproducible() {
        let a = random_interior_block(&mut ChaCha8Rng::seed_from_u64(1), 2, 4, 3);
        let b = random_interior_block(&mut ChaCha8Rng::seed_from_u64(1), 2, 4, 3);
        assert_eq!(a, b);
    }
}
