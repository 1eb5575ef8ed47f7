use std::collections::{BTreeMap, BTreeSet};

use crate::manifold::{
    Block, GluingMatrix, JsjTorus, ManifoldGraph, SeifertBlockData, Slope, TorusEnd,
};

/// Fiber choices for inserted thin blocks.
///
/// Keys are torus ids (for JSJ tori) or ends written `block.index` (for
/// boundary tori). A slope is given in the basis of the torus' first side;
/// tori without an entry use the slope `(0, 1)` of that basis.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ModifyOptions {
    pub thin_fibers: BTreeMap<String, Slope>,
}

pub fn modify_jsj(m: &ManifoldGraph) -> ManifoldGraph {
    modify_jsj_with(m, &ModifyOptions::default())
}

fn fresh(taken: &mut BTreeSet<String>, base: String) -> String {
    let mut name = base.clone();
    let mut n = 2;
    while taken.contains(&name) {
        name = format!("{base}_{n}");
        n += 1;
    }
    taken.insert(name.clone());
    name
}

/// Inserts a thin block `T^2 x I` at every JSJ or boundary torus that touches
/// no Seifert block.
pub fn modify_jsj_with(m: &ManifoldGraph, opts: &ModifyOptions) -> ManifoldGraph {
    let hyperbolic = |id: &str| m.block(id).is_some_and(Block::is_hyperbolic);
    let mut out = m.clone();
    let mut block_names: BTreeSet<String> = m.blocks.keys().cloned().collect();
    let mut torus_names: BTreeSet<String> = m.tori.iter().map(|t| t.id.clone()).collect();

    let mut tori = Vec::with_capacity(m.tori.len());
    for t in &m.tori {
        if !(hyperbolic(&t.a.block) && hyperbolic(&t.b.block)) {
            tori.push(t.clone());
            continue;
        }
        let fiber = opts.thin_fibers.get(&t.id).copied().unwrap_or(Slope::FIBER);
        let to_thin = GluingMatrix::straightening(fiber);
        let thin = fresh(&mut block_names, format!("thin_{}", t.id));
        out.blocks.insert(thin.clone(), Block::Seifert(SeifertBlockData::thin()));
        tori.push(JsjTorus {
            id: t.id.clone(),
            a: t.a.clone(),
            b: TorusEnd::new(thin.clone(), 0),
            glue: to_thin,
        });
        tori.push(JsjTorus {
            id: fresh(&mut torus_names, format!("{}_b", t.id)),
            a: TorusEnd::new(thin, 1),
            b: t.b.clone(),
            glue: t.glue.compose(&to_thin.inverse()),
        });
    }

    let mut boundary = Vec::with_capacity(m.boundary.len());
    for end in &m.boundary {
        if !hyperbolic(&end.block) {
            boundary.push(end.clone());
            continue;
        }
        let fiber = opts.thin_fibers.get(&end.to_string()).copied().unwrap_or(Slope::FIBER);
        let thin = fresh(&mut block_names, format!("thin_{}_{}", end.block, end.index));
        out.blocks.insert(thin.clone(), Block::Seifert(SeifertBlockData::thin()));
        tori.push(JsjTorus {
            id: fresh(&mut torus_names, format!("collar_{}_{}", end.block, end.index)),
            a: end.clone(),
            b: TorusEnd::new(thin.clone(), 0),
            glue: GluingMatrix::straightening(fiber),
        });
        boundary.push(TorusEnd::new(thin, 1));
    }

    out.tori = tori;
    out.boundary = boundary;
    out
}
