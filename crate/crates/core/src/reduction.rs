//! Reduction from minimum bisection to edge-treewidth.
//!
//! From `G` on `n` vertices (n even) and a bound `k`, build `H` by adding an
//! independent set `Q` of `n²` vertices, each joined once to every vertex of
//! `G`, and set `w = n³/2 + k`. Then `G` has a balanced cut of at most `k`
//! edge copies iff `etw(H) ≤ w`, and a cut `(V1, V2)` yields the layout
//! `⟨V1 · Q · V2⟩` of width at most `w`.

use serde::Serialize;

use crate::bitgraph::{full_mask, Mask};
use crate::error::Error;
use crate::graph::Multigraph;
use crate::limits::Limits;
use crate::width::{layout_width, width_exact, CostKind, Layout, Mode};

/// Largest graph accepted by [`min_bisection_exact`].
pub const BISECTION_LIMIT: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtwInstance {
    pub graph: Multigraph,
    pub w: u64,
}

pub fn reduce_bisection_to_etw(g: &Multigraph, k: u64) -> Result<EtwInstance, Error> {
    let n = g.vertex_count();
    if n % 2 == 1 {
        return Err(Error::OddOrder(n));
    }
    if n == 0 {
        return Err(Error::InvalidInstance("the graph has no vertices".into()));
    }
    let mut h = Multigraph::new(n + n * n);
    for (u, v, m) in g.edges() {
        h.add_edge(u, v, m)?;
    }
    for q in n..n + n * n {
        for v in 0..n {
            h.add_edge(v, q, 1)?;
        }
    }
    let n = n as u64;
    Ok(EtwInstance {
        graph: h,
        w: n * n * n / 2 + k,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bisection {
    /// Number of edge copies crossing the cut.
    pub value: u64,
    /// The smaller side, ascending; the other side is its complement.
    pub side: Vec<usize>,
}

fn crossing(g: &Multigraph, side: Mask) -> u64 {
    g.edges()
        .filter(|&(u, v, _)| (side >> u & 1) != (side >> v & 1))
        .map(|(_, _, m)| u64::from(m))
        .sum()
}

/// Minimum cut over all bipartitions whose sides differ in size by at most one.
pub fn min_bisection_exact(g: &Multigraph) -> Result<Bisection, Error> {
    let n = g.vertex_count();
    if n > BISECTION_LIMIT {
        return Err(Error::SizeLimit {
            what: "exact bisection",
            n,
            limit: BISECTION_LIMIT,
        });
    }
    let half = n / 2;
    let limit = full_mask(n);
    let mut best: Option<(u64, Mask)> = None;
    let mut m: Mask = full_mask(half);
    loop {
        let c = crossing(g, m);
        if best.map_or(true, |(b, _)| c < b) {
            best = Some((c, m));
        }
        if m == 0 {
            break;
        }
        // next mask with the same number of bits
        let low = m & m.wrapping_neg();
        let r = m + low;
        if r > limit {
            break;
        }
        m = (((r ^ m) >> 2) / low) | r;
        if m > limit {
            break;
        }
    }
    let (value, mask) = best.expect("at least one bipartition");
    Ok(Bisection {
        value,
        side: (0..n).filter(|&v| mask >> v & 1 == 1).collect(),
    })
}

/// The layout `⟨V1 · Q · V2⟩` of the reduced graph for a cut with side `V1`.
pub fn bisection_layout(n: usize, side: &[usize]) -> Result<Layout, Error> {
    let mut in_side = vec![false; n];
    for &v in side {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, count: n });
        }
        in_side[v] = true;
    }
    let mut order: Vec<usize> = (0..n).filter(|&v| in_side[v]).collect();
    order.extend(n..n + n * n);
    order.extend((0..n).filter(|&v| !in_side[v]));
    Layout::new(order, n + n * n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionVerdict {
    pub k: u64,
    pub w: u64,
    pub min_bisection: u64,
    pub bisection_yes: bool,
    pub etw_h: u32,
    pub etw_yes: bool,
    pub agree: bool,
    /// Width of `⟨V1 · Q · V2⟩` for an optimal cut, when the bisection side holds.
    pub witness_width: Option<u32>,
    pub witness_ok: Option<bool>,
}

/// Solves both sides exactly and compares them.
pub fn verify_reduction(g: &Multigraph, k: u64, limits: &Limits) -> Result<ReductionVerdict, Error> {
    let n = g.vertex_count();
    let inst = reduce_bisection_to_etw(g, k)?;
    let max_k = (n * n / 2) as u64;
    if k > max_k {
        return Err(Error::InvalidInstance(format!(
            "k = {k} exceeds n^2/2 = {max_k}"
        )));
    }
    let bisection = min_bisection_exact(g)?;
    let etw_h = width_exact(&inst.graph, CostKind::EC, None, Mode::Dp, limits)?.value;
    let bisection_yes = bisection.value <= k;
    let etw_yes = u64::from(etw_h) <= inst.w;
    let (witness_width, witness_ok) = if bisection_yes {
        let layout = bisection_layout(n, &bisection.side)?;
        let width = layout_width(&inst.graph, &layout, CostKind::EC)?;
        (Some(width), Some(u64::from(width) <= inst.w))
    } else {
        (None, None)
    };
    Ok(ReductionVerdict {
        k,
        w: inst.w,
        min_bisection: bisection.value,
        bisection_yes,
        etw_h,
        etw_yes,
        agree: bisection_yes == etw_yes,
        witness_width,
        witness_ok,
    })
}
