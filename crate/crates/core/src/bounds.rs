//! The block-wise parameter `p(G) = max over blocks B of max(tw(B), Δe(B))`
//! and checks of the inequalities tying it, and the other widths, to
//! edge-treewidth.

use serde::Serialize;

use crate::blocks::block_decomposition;
use crate::error::Error;
use crate::graph::Multigraph;
use crate::limits::Limits;
use crate::tree_layout::{block_tree_layout, exact_rooted_solver, tree_cost_profile, TreeCostKind};
use crate::width::{width_exact, CostKind, Layout, Mode};

fn max_edge_degree(g: &Multigraph) -> u64 {
    (0..g.vertex_count()).map(|v| g.edeg(v)).max().unwrap_or(0)
}

fn exact(g: &Multigraph, kind: CostKind, limits: &Limits) -> Result<(u32, Layout), Error> {
    let cert = width_exact(g, kind, None, Mode::Dp, limits)?;
    Ok((cert.value, cert.witness))
}

pub fn p_block(g: &Multigraph, limits: &Limits) -> Result<u64, Error> {
    let mut best = 0;
    for block in block_decomposition(g).blocks {
        let (tw, _) = exact(&block.graph, CostKind::VC, limits)?;
        best = best.max(u64::from(tw)).max(max_edge_degree(&block.graph));
    }
    Ok(best)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub name: &'static str,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witnesses {
    pub tw: Layout,
    pub pw: Layout,
    pub cw: Layout,
    pub etw: Layout,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub tw: u32,
    pub pw: u32,
    pub cw: u32,
    pub etw: u32,
    pub p_block: u64,
    pub max_edge_degree: u64,
    pub verdicts: Vec<Verdict>,
    pub witnesses: Witnesses,
}

impl BoundReport {
    pub fn all_hold(&self) -> bool {
        self.verdicts.iter().all(|v| v.holds)
    }
}

pub fn bound_report(g: &Multigraph, limits: &Limits) -> Result<BoundReport, Error> {
    let (tw, tw_l) = exact(g, CostKind::VC, limits)?;
    let (pw, pw_l) = exact(g, CostKind::V, limits)?;
    let (cw, cw_l) = exact(g, CostKind::E, limits)?;
    let (etw, etw_l) = exact(g, CostKind::EC, limits)?;
    let p = p_block(g, limits)?;
    let delta = max_edge_degree(g);
    let (tw64, etw64, cw64, pw64) = (u64::from(tw), u64::from(etw), u64::from(cw), u64::from(pw));
    let verdicts = vec![
        Verdict {
            name: "sqrt(p) <= etw",
            holds: p <= etw64 * etw64,
        },
        Verdict {
            name: "etw <= p^4 + 2p^2",
            holds: etw64 <= p.pow(4) + 2 * p * p,
        },
        Verdict {
            name: "etw <= tw * max_edge_degree",
            holds: etw64 <= tw64 * delta,
        },
        Verdict {
            name: "tw <= etw",
            holds: tw64 <= etw64,
        },
        Verdict {
            name: "etw <= cw",
            holds: etw64 <= cw64,
        },
        Verdict {
            name: "tw <= pw",
            holds: tw64 <= pw64,
        },
    ];
    Ok(BoundReport {
        tw,
        pw,
        cw,
        etw,
        p_block: p,
        max_edge_degree: delta,
        verdicts,
        witnesses: Witnesses {
            tw: tw_l,
            pw: pw_l,
            cw: cw_l,
            etw: etw_l,
        },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootedBound {
    pub etw: u32,
    /// `etw(G, u)` for every vertex `u`.
    pub rooted: Vec<u32>,
    pub bound: u64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompositionBound {
    /// Largest `λe` of the block-assembled tree-layout.
    pub cost: u64,
    /// `max over blocks B of etw(B)^2 + 2 etw(B)`.
    pub bound: u64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructuralBounds {
    /// Present when the graph is biconnected.
    pub rooted: Option<RootedBound>,
    /// Present when the graph is connected.
    pub composition: Option<CompositionBound>,
}

/// A graph on at least two vertices forming a single block.
pub fn is_biconnected(g: &Multigraph) -> bool {
    let d = block_decomposition(g);
    g.vertex_count() >= 2 && d.blocks.len() == 1 && d.blocks[0].vertices.len() == g.vertex_count()
}

pub fn verify_structural_bounds(g: &Multigraph, limits: &Limits) -> Result<StructuralBounds, Error> {
    let rooted = if is_biconnected(g) {
        let e = u64::from(exact(g, CostKind::EC, limits)?.0);
        let rooted = (0..g.vertex_count())
            .map(|u| width_exact(g, CostKind::EC, Some(u), Mode::Dp, limits).map(|c| c.value))
            .collect::<Result<Vec<_>, _>>()?;
        let bound = e * e + 2 * e;
        Some(RootedBound {
            etw: e as u32,
            holds: rooted.iter().all(|&r| u64::from(r) <= bound),
            rooted,
            bound,
        })
    } else {
        None
    };
    let composition = if g.is_connected() {
        let t = block_tree_layout(g, exact_rooted_solver(limits))?;
        let cost = tree_cost_profile(g, &t, TreeCostKind::E)?.max;
        let mut bound = 0;
        for block in block_decomposition(g).blocks {
            let e = u64::from(exact(&block.graph, CostKind::EC, limits)?.0);
            bound = bound.max(e * e + 2 * e);
        }
        Some(CompositionBound {
            cost,
            bound,
            holds: cost <= bound,
        })
    } else {
        None
    };
    Ok(StructuralBounds { rooted, composition })
}
