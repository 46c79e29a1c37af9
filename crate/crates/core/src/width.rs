//! Layout cost functions and the exact width solvers.
//!
//! For a layout `⟨x_1, …, x_n⟩` with suffixes `S_i = {x_i, …, x_n}` the four
//! costs at position `i` are
//!
//! | kind | cost                     | parameter   |
//! |------|--------------------------|-------------|
//! | `V`  | `|N(S_i)|`               | pathwidth   |
//! | `VC` | `|N(C(S_i, x_i))|`       | treewidth   |
//! | `E`  | `|E(S_i)|`               | cutwidth    |
//! | `EC` | `|E(C(S_i, x_i))|`       | edge-treewidth |
//!
//! where `C(S, x)` is the component of `G[S]` containing `x`. Each cost only
//! depends on the suffix set and its first vertex, so the optimum satisfies
//! `f(P) = min_{x ∉ P} max(cost(V∖P, x), f(P ∪ {x}))` over placed prefixes
//! `P`, with `f(V) = 0`.

use std::collections::HashMap;
use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU32, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::bitgraph::{bit, full_mask, members, BitGraph, Mask};
use crate::error::Error;
use crate::graph::Multigraph;
use crate::limits::Limits;

/// Largest vertex count the subset DP will allocate a table for.
pub const DP_HARD_LIMIT: usize = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CostKind {
    V,
    VC,
    E,
    EC,
}

impl CostKind {
    pub const ALL: [CostKind; 4] = [CostKind::V, CostKind::VC, CostKind::E, CostKind::EC];

    /// Name of the parameter this cost induces.
    pub fn parameter(self) -> &'static str {
        match self {
            CostKind::V => "pw",
            CostKind::VC => "tw",
            CostKind::E => "cw",
            CostKind::EC => "etw",
        }
    }
}

impl fmt::Display for CostKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CostKind::V => "v",
            CostKind::VC => "vc",
            CostKind::E => "e",
            CostKind::EC => "ec",
        };
        f.write_str(s)
    }
}

impl FromStr for CostKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "v" | "pw" => Ok(CostKind::V),
            "vc" | "tw" => Ok(CostKind::VC),
            "e" | "cw" => Ok(CostKind::E),
            "ec" | "etw" => Ok(CostKind::EC),
            other => Err(format!("unknown cost kind `{other}`")),
        }
    }
}

/// A linear ordering of all vertices of a graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Layout(Vec<usize>);

impl Layout {
    /// Checks that `order` is a permutation of `0..n`.
    pub fn new(order: Vec<usize>, n: usize) -> Result<Self, Error> {
        if order.len() != n {
            return Err(Error::InvalidLayout(format!(
                "expected {n} vertices, got {}",
                order.len()
            )));
        }
        let mut seen = vec![false; n];
        for &v in &order {
            if v >= n {
                return Err(Error::InvalidLayout(format!("vertex {v} out of range")));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidLayout(format!("vertex {v} repeated")));
            }
        }
        Ok(Layout(order))
    }

    pub fn identity(n: usize) -> Self {
        Layout((0..n).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().copied()
    }

    /// Position of every vertex.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl fmt::Display for Layout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WidthCertificate {
    pub value: u32,
    pub witness: Layout,
    pub kind: CostKind,
    pub rooted_at: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Dp,
    BranchAndBound,
    GreedyUpper,
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dp" => Ok(Mode::Dp),
            "bnb" | "branch-and-bound" | "branch_and_bound" => Ok(Mode::BranchAndBound),
            "greedy" | "greedy-upper" | "greedy_upper" => Ok(Mode::GreedyUpper),
            other => Err(format!("unknown mode `{other}`")),
        }
    }
}

/// Suffix-set cost evaluation without a vertex cap.
struct SlowCosts {
    adj: Vec<Vec<(usize, u32)>>,
}

impl SlowCosts {
    fn new(g: &Multigraph) -> Self {
        SlowCosts { adj: g.adjacency() }
    }

    fn component(&self, in_s: &[bool], x: usize) -> Vec<bool> {
        let mut comp = vec![false; in_s.len()];
        comp[x] = true;
        let mut queue = VecDeque::from([x]);
        while let Some(u) = queue.pop_front() {
            for &(w, _) in &self.adj[u] {
                if in_s[w] && !comp[w] {
                    comp[w] = true;
                    queue.push_back(w);
                }
            }
        }
        comp
    }

    fn boundary(&self, set: &[bool], edges: bool) -> u32 {
        let mut total = 0u32;
        let mut outside = vec![false; set.len()];
        for (u, &inside) in set.iter().enumerate() {
            if !inside {
                continue;
            }
            for &(w, m) in &self.adj[u] {
                if !set[w] {
                    total += m;
                    outside[w] = true;
                }
            }
        }
        if edges {
            total
        } else {
            outside.iter().filter(|&&b| b).count() as u32
        }
    }

    fn cost(&self, in_s: &[bool], x: usize, kind: CostKind) -> u32 {
        match kind {
            CostKind::V => self.boundary(in_s, false),
            CostKind::E => self.boundary(in_s, true),
            CostKind::VC => self.boundary(&self.component(in_s, x), false),
            CostKind::EC => self.boundary(&self.component(in_s, x), true),
        }
    }
}

/// The cost at every position of `layout`.
pub fn cost_profile(g: &Multigraph, layout: &Layout, kind: CostKind) -> Result<Vec<u32>, Error> {
    check_layout(g, layout)?;
    let costs = SlowCosts::new(g);
    let mut in_s = vec![true; g.vertex_count()];
    let mut out = Vec::with_capacity(layout.len());
    for &x in layout.as_slice() {
        out.push(costs.cost(&in_s, x, kind));
        in_s[x] = false;
    }
    Ok(out)
}

/// `max` of the profile, 0 for the empty graph.
pub fn layout_width(g: &Multigraph, layout: &Layout, kind: CostKind) -> Result<u32, Error> {
    Ok(cost_profile(g, layout, kind)?.into_iter().max().unwrap_or(0))
}

fn check_layout(g: &Multigraph, layout: &Layout) -> Result<(), Error> {
    if layout.len() != g.vertex_count() {
        return Err(Error::InvalidLayout(format!(
            "layout has {} vertices, graph has {}",
            layout.len(),
            g.vertex_count()
        )));
    }
    Ok(())
}

pub fn width_exact(
    g: &Multigraph,
    kind: CostKind,
    root: Option<usize>,
    mode: Mode,
    limits: &Limits,
) -> Result<WidthCertificate, Error> {
    let n = g.vertex_count();
    if let Some(r) = root {
        if r >= n {
            return Err(Error::VertexOutOfRange { vertex: r, count: n });
        }
    }
    let (value, witness) = match mode {
        Mode::GreedyUpper => greedy(g, kind, root),
        Mode::Dp => {
            let limit = limits.exact_limit.min(DP_HARD_LIMIT);
            if n > limit {
                return Err(Error::SizeLimit { what: "the exact solver", n, limit });
            }
            subset_dp(g, kind, root, limits)?
        }
        Mode::BranchAndBound => {
            let limit = limits.exact_limit.min(64);
            if n > limit {
                return Err(Error::SizeLimit { what: "the exact solver", n, limit });
            }
            let (seed_value, seed) = greedy(g, kind, root);
            match bounded_search(g, kind, root, seed_value, false, limits)? {
                Some(better) => better,
                None => (seed_value, seed),
            }
        }
    };
    Ok(WidthCertificate {
        value,
        witness,
        kind,
        rooted_at: root,
    })
}

/// Exact value with the DP, default limits.
pub fn exact_value(g: &Multigraph, kind: CostKind) -> Result<u32, Error> {
    Ok(width_exact(g, kind, None, Mode::Dp, &Limits::default())?.value)
}

/// Edge-treewidth with the DP, default limits.
pub fn etw(g: &Multigraph) -> Result<u32, Error> {
    exact_value(g, CostKind::EC)
}

/// Repeatedly appends the unplaced vertex of least immediate cost, ties to the lowest id.
fn greedy(g: &Multigraph, kind: CostKind, root: Option<usize>) -> (u32, Layout) {
    let n = g.vertex_count();
    let costs = SlowCosts::new(g);
    let mut in_s = vec![true; n];
    let mut order = Vec::with_capacity(n);
    let mut worst = 0;
    if let Some(r) = root {
        worst = costs.cost(&in_s, r, kind);
        in_s[r] = false;
        order.push(r);
    }
    while order.len() < n {
        let (c, x) = (0..n)
            .filter(|&x| in_s[x])
            .map(|x| (costs.cost(&in_s, x, kind), x))
            .min()
            .expect("unplaced vertex remains");
        worst = worst.max(c);
        in_s[x] = false;
        order.push(x);
    }
    (worst, Layout(order))
}

/// Masks of `0..n` with exactly `k` bits set, ascending.
fn masks_with_popcount(n: usize, k: usize) -> Vec<Mask> {
    if k == 0 {
        return vec![0];
    }
    if k > n {
        return Vec::new();
    }
    let limit = full_mask(n);
    let mut out = Vec::new();
    let mut m: Mask = full_mask(k);
    loop {
        out.push(m);
        let c = m & m.wrapping_neg();
        let r = m.wrapping_add(c);
        if r == 0 || r > limit {
            break;
        }
        m = (((r ^ m) >> 2) / c) | r;
        if m > limit {
            break;
        }
    }
    out
}

/// Best value achievable from placed prefix `placed`, given `f` for all supersets.
#[inline]
fn dp_value(bg: &BitGraph, kind: CostKind, full: Mask, placed: Mask, f: &[AtomicU32]) -> u32 {
    let s = full & !placed;
    let next = |y: usize| f[(placed | bit(y)) as usize].load(Ordering::Relaxed);
    match kind {
        CostKind::V | CostKind::E => {
            let here = bg.cost(s, 0, kind);
            let rest = members(s).map(next).min().unwrap_or(0);
            here.max(rest)
        }
        CostKind::VC | CostKind::EC => {
            let mut best = u32::MAX;
            let mut remaining = s;
            while remaining != 0 {
                let x = remaining.trailing_zeros() as usize;
                let comp = bg.component(s, x);
                remaining &= !comp;
                let here = if kind == CostKind::EC {
                    bg.edge_boundary(comp)
                } else {
                    bg.vertex_boundary(comp)
                };
                if here >= best {
                    continue;
                }
                for y in members(comp) {
                    best = best.min(here.max(next(y)));
                }
            }
            best
        }
    }
}

fn subset_dp(
    g: &Multigraph,
    kind: CostKind,
    root: Option<usize>,
    limits: &Limits,
) -> Result<(u32, Layout), Error> {
    let n = g.vertex_count();
    if n == 0 {
        return Ok((0, Layout(Vec::new())));
    }
    let bg = BitGraph::new(g);
    let full = full_mask(n);
    let size = 1usize << n;
    let f: Vec<AtomicU32> = (0..size).map(|_| AtomicU32::new(u32::MAX)).collect();
    f[full as usize].store(0, Ordering::Relaxed);
    let required = root.map(bit).unwrap_or(0);
    for k in (0..n).rev() {
        limits.check_deadline()?;
        let layer = masks_with_popcount(n, k);
        layer.par_iter().for_each(|&placed| {
            if placed & required != required {
                return;
            }
            let v = dp_value(&bg, kind, full, placed, &f);
            f[placed as usize].store(v, Ordering::Relaxed);
        });
    }

    let value_at = |m: Mask| f[m as usize].load(Ordering::Relaxed);
    let mut order = Vec::with_capacity(n);
    let mut placed: Mask = 0;
    let mut value = 0;
    if let Some(r) = root {
        value = bg.cost(full, r, kind).max(value_at(bit(r)));
        placed = bit(r);
        order.push(r);
    } else {
        value = value.max(value_at(0));
    }
    while placed != full {
        let target = value_at(placed);
        let s = full & !placed;
        let y = members(s)
            .find(|&y| bg.cost(s, y, kind).max(value_at(placed | bit(y))) <= target)
            .expect("DP table admits a witness");
        order.push(y);
        placed |= bit(y);
    }
    Ok((value, Layout(order)))
}

struct Search<'a> {
    bg: BitGraph,
    kind: CostKind,
    full: Mask,
    limits: &'a Limits,
    /// Smallest running maximum with which each prefix has been expanded.
    memo: HashMap<Mask, u32>,
    order: Vec<usize>,
    /// Exclusive bound: only layouts of width `< best` are wanted.
    best: u32,
    best_order: Option<Vec<usize>>,
    first_only: bool,
    steps: usize,
}

impl Search<'_> {
    fn run(&mut self, placed: Mask, running: u32) -> Result<bool, Error> {
        if placed == self.full {
            self.best = running;
            self.best_order = Some(self.order.clone());
            return Ok(self.first_only);
        }
        match self.memo.get(&placed) {
            Some(&seen) if seen <= running => return Ok(false),
            _ => {}
        }
        if self.memo.len() >= self.limits.bnb_budget {
            return Err(Error::BudgetExceeded(format!(
                "branch-and-bound exceeded {} states",
                self.limits.bnb_budget
            )));
        }
        self.memo.insert(placed, running);
        self.steps += 1;
        if self.steps % 4096 == 0 {
            self.limits.check_deadline()?;
        }
        let s = self.full & !placed;
        let mut candidates: Vec<(u32, usize)> = members(s)
            .map(|y| (self.bg.cost(s, y, self.kind), y))
            .collect();
        candidates.sort_unstable();
        for (c, y) in candidates {
            let m = running.max(c);
            if m >= self.best {
                break;
            }
            self.order.push(y);
            let stop = self.run(placed | bit(y), m)?;
            self.order.pop();
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Depth-first search over prefixes for a layout of width strictly below
/// `bound`. With `first_only` it stops at the first such layout, otherwise
/// it returns the minimum.
fn bounded_search(
    g: &Multigraph,
    kind: CostKind,
    root: Option<usize>,
    bound: u32,
    first_only: bool,
    limits: &Limits,
) -> Result<Option<(u32, Layout)>, Error> {
    let n = g.vertex_count();
    if n == 0 {
        return Ok((bound > 0).then(|| (0, Layout(Vec::new()))));
    }
    let bg = BitGraph::new(g);
    let full = full_mask(n);
    let mut search = Search {
        bg,
        kind,
        full,
        limits,
        memo: HashMap::new(),
        order: Vec::with_capacity(n),
        best: bound,
        best_order: None,
        first_only,
        steps: 0,
    };
    match root {
        Some(r) => {
            let c = search.bg.cost(full, r, kind);
            if c < bound {
                search.order.push(r);
                search.run(bit(r), c)?;
            }
        }
        None => {
            search.run(0, 0)?;
        }
    }
    Ok(search
        .best_order
        .map(|order| (search.best, Layout(order))))
}

/// Decides whether some layout (starting at `root`, if given) has width at
/// most `k`, returning one when it exists. Works up to 64 vertices,
/// bounded by the branch-and-bound state budget rather than the exact limit.
pub fn decide_at_most(
    g: &Multigraph,
    kind: CostKind,
    k: u32,
    root: Option<usize>,
    limits: &Limits,
) -> Result<Option<Layout>, Error> {
    let n = g.vertex_count();
    if n > 64 {
        return Err(Error::SizeLimit { what: "the bitmask search", n, limit: 64 });
    }
    if let Some(r) = root {
        if r >= n {
            return Err(Error::VertexOutOfRange { vertex: r, count: n });
        }
    }
    Ok(bounded_search(g, kind, root, k.saturating_add(1), true, limits)?.map(|(_, l)| l))
}
