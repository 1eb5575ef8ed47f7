use std::collections::BTreeSet;

use cubulate::charge::solve_charge;
use cubulate::cube_complex::{check_npc, hyperplanes, specialness_report, ComplexError, CubeComplex};
use cubulate::decomposition::{clusters, modify_jsj, plan_surface_assembly, ClusterKind, TorusCounts};
use cubulate::generate::{random_unimodular, random_wallspace};
use cubulate::homology::{class_in_h1, presentation_h1};
use cubulate::manifold::{
    slope_normalize, transport_slope, validate, Block, HyperbolicBlockData, JsjTorus, ManifoldGraph,
    SeifertBlockData, Slope, TorusEnd,
};
use cubulate::wallspace::{dual_cube_complex, max_crossing_family, walls_cross};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn nonzero() -> impl Strategy<Value = i64> {
    (-50i64..=50).prop_filter("nonzero", |k| *k != 0)
}

proptest! {
    #[test]
    fn normalize_is_constant_on_rays(p in -30i64..=30, q in -30i64..=30, k in nonzero()) {
        prop_assume!(p != 0 || q != 0);
        let s = slope_normalize(p, q).unwrap();
        prop_assert_eq!(slope_normalize(k * p, k * q).unwrap(), s);
        prop_assert_eq!(slope_normalize(s.p(), s.q()).unwrap(), s);
    }

    #[test]
    fn transport_round_trips(p in -30i64..=30, q in -30i64..=30, seed in any::<u64>()) {
        prop_assume!(p != 0 || q != 0);
        let s = slope_normalize(p, q).unwrap();
        let g = random_unimodular(&mut ChaCha8Rng::seed_from_u64(seed), 5);
        prop_assert_eq!(transport_slope(transport_slope(s, &g), &g.inverse()), s);
    }
}

#[test]
fn dual_matches_wall_combinatorics() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for trial in 0..120 {
        let ws = random_wallspace(&mut rng, 8, 12, trial % 2 == 0);
        let dual = dual_cube_complex(&ws).unwrap();
        let c = &dual.complex;
        let ws = &ws;
        let (size, family) = max_crossing_family(ws);
        assert_eq!(c.dimension(), size, "trial {trial}");
        for (i, &a) in family.iter().enumerate() {
            for &b in &family[i + 1..] {
                assert!(walls_cross(&ws.walls()[a], &ws.walls()[b]));
            }
        }

        let flippable: BTreeSet<usize> = dual
            .orientations
            .iter()
            .flat_map(|o| {
                (0..o.len()).filter(move |&w| {
                    let mut f = o.clone();
                    f[w] = !f[w];
                    ws.is_consistent(&f)
                })
            })
            .collect();
        let hs = hyperplanes(c);
        assert_eq!(hs.len(), flippable.len(), "trial {trial}");
        assert!(hs.len() <= ws.walls().len());
        let covered: usize = hs.iter().map(|h| h.edges.len()).sum();
        assert_eq!(covered, c.edges().len(), "hyperplanes partition the edges");

        for (cube, walls) in c.cubes().iter().zip(&dual.cube_walls) {
            assert_eq!(walls.len(), cube.dim());
            for (i, &a) in walls.iter().enumerate() {
                for &b in &walls[i + 1..] {
                    assert!(walls_cross(&ws.walls()[a], &ws.walls()[b]));
                }
            }
        }

        if size <= 4 {
            assert!(check_npc(c).unwrap().is_npc(), "trial {trial}");
            assert!(specialness_report(c).special, "trial {trial}");
        }
    }
}

#[test]
fn link_check_is_bounded() {
    let c = CubeComplex::standard_cube(5);
    assert_eq!(check_npc(&c), Err(ComplexError::DimensionTooLarge(5)));
}

fn random_mixed<R: Rng>(rng: &mut R) -> ManifoldGraph {
    let n = rng.gen_range(2..=6);
    let hyperbolic: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    for _ in 0..rng.gen_range(0..=2) {
        edges.push((rng.gen_range(0..n), rng.gen_range(0..n)));
    }
    let mut used = vec![0usize; n];
    let mut m = ManifoldGraph::default();
    for (i, &(u, v)) in edges.iter().enumerate() {
        let a = TorusEnd::new(format!("X{u}"), used[u]);
        used[u] += 1;
        let b = TorusEnd::new(format!("X{v}"), used[v]);
        used[v] += 1;
        m.tori.push(JsjTorus {
            id: format!("T{i}"),
            a,
            b,
            glue: random_unimodular(rng, 3),
        });
    }
    for (i, &h) in hyperbolic.iter().enumerate() {
        let extra = rng.gen_range(0..=1);
        for k in 0..extra {
            m.boundary.push(TorusEnd::new(format!("X{i}"), used[i] + k));
        }
        let nb = used[i] + extra;
        let block = if h {
            Block::Hyperbolic(HyperbolicBlockData {
                num_boundary: nb,
                ..Default::default()
            })
        } else {
            Block::Seifert(SeifertBlockData::new(rng.gen_range(0..=1), nb, &[(2, 1)], 0))
        };
        m.blocks.insert(format!("X{i}"), block);
    }
    m
}

#[test]
fn modification_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for trial in 0..300 {
        let m = random_mixed(&mut rng);
        assert!(validate(&m).is_valid(), "trial {trial}: {}", validate(&m));
        let once = modify_jsj(&m);
        assert!(validate(&once).is_valid(), "trial {trial}");
        assert_eq!(modify_jsj(&once), once, "trial {trial}: not idempotent");
        for t in &once.tori {
            let ha = once.blocks[&t.a.block].is_hyperbolic();
            let hb = once.blocks[&t.b.block].is_hyperbolic();
            assert!(!(ha && hb), "trial {trial}: torus {} has two hyperbolic sides", t.id);
        }
        for e in &once.boundary {
            assert!(!once.blocks[&e.block].is_hyperbolic(), "trial {trial}: boundary on {e}");
        }
        let partition = clusters(&once).unwrap();
        for id in &partition.transitional {
            let t = once.tori.iter().find(|t| &t.id == id).unwrap();
            let kinds = [&t.a.block, &t.b.block].map(|b| partition.clusters[partition.cluster_of(b).unwrap()].kind);
            assert_eq!(
                kinds.iter().filter(|k| **k == ClusterKind::Hyperbolic).count(),
                1,
                "trial {trial}: transitional torus {id}"
            );
        }
    }
}

#[test]
fn charge_verdict_is_scale_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let ends = rng.gen_range(1..=3);
        let ex: Vec<(i64, i64)> = (0..rng.gen_range(0..=2)).map(|_| (rng.gen_range(2..=4), 1)).collect();
        let b = SeifertBlockData::new(0, ends, &ex, 0);
        let pres = presentation_h1(&b);
        let classes: Vec<Vec<BigInt>> = (0..ends)
            .map(|k| {
                let s = Slope::new(rng.gen_range(0..=3), rng.gen_range(-3..=3)).unwrap_or(Slope::FIBER);
                class_in_h1(&b, k, s).unwrap()
            })
            .collect();
        let base = solve_charge(&classes, &pres.relations).unwrap();
        for factor in [2i64, -3, 5] {
            let scaled: Vec<Vec<BigInt>> = classes.iter().map(|z| z.iter().map(|x| x * factor).collect()).collect();
            let other = solve_charge(&scaled, &pres.relations).unwrap();
            assert_eq!(base.witness.is_some(), other.witness.is_some());
        }
    }
}

#[test]
fn assembly_caps_dominate_counts() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..500 {
        let tori: Vec<TorusCounts> = (0..rng.gen_range(1..=4))
            .map(|_| TorusCounts {
                r: rng.gen_range(0..=6),
                s: rng.gen_range(0..=6),
                a: rng.gen_range(1..=6),
                b: rng.gen_range(1..=6),
            })
            .collect();
        let plan = plan_surface_assembly(&tori).unwrap();
        for (t, &(alpha, beta)) in tori.iter().zip(&plan.caps) {
            assert_eq!(plan.ell % t.a, 0);
            assert_eq!(plan.ell % t.b, 0);
            assert!(alpha >= t.r && beta >= t.s);
            assert_eq!(alpha * t.a, t.r * plan.ell);
            assert_eq!(beta * t.b, t.s * plan.ell);
        }
    }
}
