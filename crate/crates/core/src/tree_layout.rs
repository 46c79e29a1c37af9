//! Tree-layouts: a rooted tree plus an injective placement of the graph's
//! vertices on its nodes such that the endpoints of every edge are
//! ancestor-related.
//!
//! For a node `u`, `X(u)` is the set of vertices placed in the subtree of
//! `u`; the costs are `λv(u) = |N(X(u))|` and `λe(u) = |E(X(u))|`.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::Serialize;

use crate::blocks::{block_decomposition, Block, BlockKind};
use crate::error::Error;
use crate::graph::Multigraph;
use crate::limits::Limits;
use crate::width::{width_exact, CostKind, Layout, Mode};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeLayout {
    parent: Vec<Option<usize>>,
    root: usize,
    /// `placement[v]` is the node holding vertex `v`.
    placement: Vec<usize>,
}

impl TreeLayout {
    /// Builds a tree-layout after checking that `parent` describes a tree
    /// rooted at `root` and that `placement` is injective.
    pub fn new(parent: Vec<Option<usize>>, root: usize, placement: Vec<usize>) -> Result<Self, Error> {
        let m = parent.len();
        let bad = |msg: String| Err(Error::InvalidTreeLayout(msg));
        if root >= m {
            return bad(format!("root {root} is not a node"));
        }
        if parent[root].is_some() {
            return bad(format!("root {root} has a parent"));
        }
        for (u, p) in parent.iter().enumerate() {
            match p {
                None if u != root => return bad(format!("node {u} has no parent")),
                Some(p) if *p >= m => return bad(format!("parent {p} of node {u} is not a node")),
                _ => {}
            }
        }
        // every node must reach the root
        let mut state = vec![0u8; m];
        state[root] = 2;
        for start in 0..m {
            let mut path = Vec::new();
            let mut u = start;
            while state[u] == 0 {
                state[u] = 1;
                path.push(u);
                u = parent[u].expect("non-root nodes have parents");
            }
            if state[u] == 1 {
                return bad(format!("node {u} lies on a cycle"));
            }
            for w in path {
                state[w] = 2;
            }
        }
        let mut used = vec![None; m];
        for (v, &node) in placement.iter().enumerate() {
            if node >= m {
                return bad(format!("vertex {v} placed on missing node {node}"));
            }
            if let Some(w) = used[node].replace(v) {
                return bad(format!("vertices {w} and {v} share node {node}"));
            }
        }
        Ok(TreeLayout {
            parent,
            root,
            placement,
        })
    }

    pub fn node_count(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, node: usize) -> Option<usize> {
        self.parent[node]
    }

    pub fn placement(&self) -> &[usize] {
        &self.placement
    }

    /// Vertex placed on each node, if any.
    pub fn occupant(&self) -> Vec<Option<usize>> {
        let mut occ = vec![None; self.parent.len()];
        for (v, &node) in self.placement.iter().enumerate() {
            occ[node] = Some(v);
        }
        occ
    }

    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut ch = vec![Vec::new(); self.parent.len()];
        for (u, p) in self.parent.iter().enumerate() {
            if let Some(p) = p {
                ch[*p].push(u);
            }
        }
        ch
    }

    pub fn depths(&self) -> Vec<usize> {
        let mut depth = vec![usize::MAX; self.parent.len()];
        depth[self.root] = 0;
        let ch = self.children();
        let mut queue = VecDeque::from([self.root]);
        while let Some(u) = queue.pop_front() {
            for &c in &ch[u] {
                depth[c] = depth[u] + 1;
                queue.push_back(c);
            }
        }
        depth
    }

    /// True when `a` is an ancestor of `b` or equal to it.
    fn is_ancestor(&self, depth: &[usize], a: usize, mut b: usize) -> bool {
        while depth[b] > depth[a] {
            b = self.parent[b].expect("deeper nodes have parents");
        }
        a == b
    }

    /// Text form: `r <node>`, then `p <node> <parent>` and `m <vertex> <node>` lines.
    pub fn to_text(&self) -> String {
        let mut out = format!("r {}\n", self.root);
        for (u, p) in self.parent.iter().enumerate() {
            if let Some(p) = p {
                let _ = writeln!(out, "p {u} {p}");
            }
        }
        for (v, node) in self.placement.iter().enumerate() {
            let _ = writeln!(out, "m {v} {node}");
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, Error> {
        let bad = |line: usize, msg: &str| {
            Err(Error::InvalidTreeLayout(format!("line {line}: {msg}")))
        };
        let mut root = None;
        let mut parents: Vec<(usize, usize)> = Vec::new();
        let mut maps: Vec<(usize, usize)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let lineno = i + 1;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let nums: Option<Vec<usize>> = fields[1..].iter().map(|f| f.parse().ok()).collect();
            let Some(nums) = nums else {
                return bad(lineno, &format!("malformed line `{line}`"));
            };
            match (fields[0], nums.as_slice()) {
                ("r", [r]) => {
                    if root.replace(*r).is_some() {
                        return bad(lineno, "duplicate root line");
                    }
                }
                ("p", [u, p]) => parents.push((*u, *p)),
                ("m", [v, u]) => maps.push((*v, *u)),
                _ => return bad(lineno, &format!("malformed line `{line}`")),
            }
        }
        let Some(root) = root else {
            return Err(Error::InvalidTreeLayout("missing `r <node>` line".into()));
        };
        let node_count = parents
            .iter()
            .flat_map(|&(u, p)| [u, p])
            .chain(maps.iter().map(|&(_, u)| u))
            .chain([root])
            .max()
            .map_or(0, |m| m + 1);
        let mut parent = vec![None; node_count];
        for (u, p) in parents {
            if parent[u].replace(p).is_some() {
                return Err(Error::InvalidTreeLayout(format!("node {u} has two parents")));
            }
        }
        let vertex_count = maps.iter().map(|&(v, _)| v + 1).max().unwrap_or(0);
        let mut placement = vec![None; vertex_count];
        for (v, u) in maps {
            if placement[v].replace(u).is_some() {
                return Err(Error::InvalidTreeLayout(format!("vertex {v} placed twice")));
            }
        }
        let placement = placement
            .into_iter()
            .enumerate()
            .map(|(v, u)| u.ok_or_else(|| Error::InvalidTreeLayout(format!("vertex {v} is not placed"))))
            .collect::<Result<Vec<_>, _>>()?;
        TreeLayout::new(parent, root, placement)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// The tree-layout places a different number of vertices than the graph has.
    VertexCount { placed: usize, expected: usize },
    /// Endpoints of an edge sit on incomparable nodes.
    Incomparable { u: usize, v: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeLayoutVerdict {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

pub fn validate_tree_layout(g: &Multigraph, t: &TreeLayout) -> TreeLayoutVerdict {
    let mut violations = Vec::new();
    if t.placement.len() != g.vertex_count() {
        violations.push(Violation::VertexCount {
            placed: t.placement.len(),
            expected: g.vertex_count(),
        });
    } else {
        let depth = t.depths();
        for (u, v, _) in g.edges() {
            let (a, b) = (t.placement[u], t.placement[v]);
            if !t.is_ancestor(&depth, a, b) && !t.is_ancestor(&depth, b, a) {
                violations.push(Violation::Incomparable { u, v });
            }
        }
    }
    TreeLayoutVerdict {
        valid: violations.is_empty(),
        violations,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TreeCostKind {
    V,
    E,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeCostProfile {
    pub per_node: Vec<u64>,
    pub max: u64,
}

fn ensure_valid(g: &Multigraph, t: &TreeLayout) -> Result<(), Error> {
    let verdict = validate_tree_layout(g, t);
    match verdict.violations.first() {
        None => Ok(()),
        Some(Violation::VertexCount { placed, expected }) => Err(Error::InvalidTreeLayout(format!(
            "places {placed} vertices, graph has {expected}"
        ))),
        Some(Violation::Incomparable { u, v }) => Err(Error::InvalidTreeLayout(format!(
            "edge {u}-{v} joins incomparable nodes"
        ))),
    }
}

pub fn tree_cost_profile(
    g: &Multigraph,
    t: &TreeLayout,
    kind: TreeCostKind,
) -> Result<TreeCostProfile, Error> {
    ensure_valid(g, t)?;
    let depth = t.depths();
    let mut per_node = vec![0u64; t.node_count()];
    // An edge between nodes a (upper) and b (lower) crosses the boundary of
    // X(u) exactly for u on the path from b up to, but excluding, a.
    let lower_upper = |x: usize, y: usize| {
        let (a, b) = (t.placement[x], t.placement[y]);
        if depth[a] <= depth[b] {
            (b, a)
        } else {
            (a, b)
        }
    };
    match kind {
        TreeCostKind::E => {
            for (x, y, m) in g.edges() {
                let (mut u, top) = lower_upper(x, y);
                while u != top {
                    per_node[u] += u64::from(m);
                    u = t.parent[u].expect("path stays below the upper endpoint");
                }
            }
        }
        TreeCostKind::V => {
            // w is a boundary neighbour of X(u) when u lies strictly below
            // τ(w) and on the path from some neighbour's node up to τ(w).
            let adj = g.adjacency();
            let mut stamp = vec![usize::MAX; t.node_count()];
            for (w, nbrs) in adj.iter().enumerate() {
                let top = t.placement[w];
                for &(y, _) in nbrs {
                    let mut u = t.placement[y];
                    if depth[u] <= depth[top] {
                        continue;
                    }
                    while u != top && stamp[u] != w {
                        stamp[u] = w;
                        per_node[u] += 1;
                        u = t.parent[u].expect("path stays below the upper endpoint");
                    }
                }
            }
        }
    }
    let max = per_node.iter().copied().max().unwrap_or(0);
    Ok(TreeCostProfile { per_node, max })
}

/// Tree-layout read off a layout: an unplaced root, and for every component
/// `C` a child holding the earliest vertex `x_C` of `C`, below which the
/// construction recurses on `C ∖ {x_C}`.
pub fn layout_to_tree_layout(g: &Multigraph, layout: &Layout) -> Result<TreeLayout, Error> {
    let n = g.vertex_count();
    if layout.len() != n {
        return Err(Error::InvalidLayout(format!(
            "layout has {} vertices, graph has {n}",
            layout.len()
        )));
    }
    let pos = layout.positions();
    let adj = g.adjacency();
    let mut parent = vec![None];
    let mut placement = vec![0; n];
    // (vertex set, node to hang its components under)
    let mut work: Vec<(Vec<usize>, usize)> = vec![((0..n).collect(), 0)];
    let mut in_set = vec![false; n];
    let mut seen = vec![false; n];
    while let Some((set, under)) = work.pop() {
        for &v in &set {
            in_set[v] = true;
        }
        let mut components = Vec::new();
        for &s in &set {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &(w, _) in &adj[u] {
                    if in_set[w] && !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            components.push(comp);
        }
        for &v in &set {
            in_set[v] = false;
            seen[v] = false;
        }
        components.sort_by_key(|c| c.iter().map(|&v| pos[v]).min());
        for comp in components {
            let head = *comp.iter().min_by_key(|&&v| pos[v]).expect("nonempty component");
            let node = parent.len();
            parent.push(Some(under));
            placement[head] = node;
            let rest: Vec<usize> = comp.into_iter().filter(|&v| v != head).collect();
            if !rest.is_empty() {
                work.push((rest, node));
            }
        }
    }
    TreeLayout::new(parent, 0, placement)
}

/// Depth-first linearisation: placed vertices in discovery order, children
/// visited by ascending smallest placed vertex id in their subtree.
pub fn tree_layout_to_layout(g: &Multigraph, t: &TreeLayout) -> Result<Layout, Error> {
    ensure_valid(g, t)?;
    let occ = t.occupant();
    let children = t.children();
    let depth = t.depths();
    let mut key: Vec<usize> = occ.iter().map(|o| o.unwrap_or(usize::MAX)).collect();
    let mut by_depth: Vec<usize> = (0..t.node_count()).collect();
    by_depth.sort_by_key(|&u| std::cmp::Reverse(depth[u]));
    for &u in &by_depth {
        if let Some(p) = t.parent[u] {
            key[p] = key[p].min(key[u]);
        }
    }
    let mut order = Vec::with_capacity(g.vertex_count());
    let mut stack = vec![t.root];
    while let Some(u) = stack.pop() {
        if let Some(v) = occ[u] {
            order.push(v);
        }
        let mut ch = children[u].clone();
        ch.sort_by_key(|&c| (key[c], c));
        stack.extend(ch.into_iter().rev());
    }
    Layout::new(order, g.vertex_count())
}

/// Layout of a cycle block (including `C_2`) walking around it from `start`.
fn cycle_walk(block: &Multigraph, start: usize) -> Vec<usize> {
    let k = block.vertex_count();
    let adj = block.adjacency();
    let mut order = vec![start];
    let mut prev = start;
    let mut cur = start;
    while order.len() < k {
        let next = adj[cur]
            .iter()
            .map(|&(w, _)| w)
            .find(|&w| w != prev && w != start)
            .or_else(|| adj[cur].iter().map(|&(w, _)| w).find(|&w| w != start))
            .expect("cycle continues");
        order.push(next);
        prev = cur;
        cur = next;
    }
    order
}

fn block_layout<F>(block: &Block, local_root: usize, rooted_solver: &F) -> Result<Vec<usize>, Error>
where
    F: Fn(&Multigraph, usize) -> Result<Layout, Error>,
{
    let order = if block.kind == BlockKind::Bridge {
        vec![local_root, 1 - local_root]
    } else if block.is_cycle() {
        cycle_walk(&block.graph, local_root)
    } else {
        let layout = rooted_solver(&block.graph, local_root)?;
        if layout.first() != Some(local_root) || layout.len() != block.graph.vertex_count() {
            return Err(Error::InvalidLayout(
                "rooted solver returned a layout not starting at the requested root".into(),
            ));
        }
        layout.into_vec()
    };
    Ok(order)
}

/// Tree-layout assembled block by block along the block tree. The block tree
/// is rooted at its lowest-id leaf block `B_r`, whose lowest vertex sits on
/// the root node. Every block hangs as a chain, in the order of its rooted
/// layout, below the node of the cut vertex through which it is entered.
pub fn block_tree_layout<F>(g: &Multigraph, rooted_solver: F) -> Result<TreeLayout, Error>
where
    F: Fn(&Multigraph, usize) -> Result<Layout, Error>,
{
    let n = g.vertex_count();
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if n == 0 {
        return TreeLayout::new(vec![None], 0, Vec::new());
    }
    let decomposition = block_decomposition(g);
    if decomposition.blocks.is_empty() {
        return TreeLayout::new(vec![None], 0, vec![0]);
    }
    let root_block = decomposition.leaf_blocks()[0];
    let mut parent: Vec<Option<usize>> = Vec::with_capacity(n);
    let mut placement = vec![usize::MAX; n];
    let mut block_done = vec![false; decomposition.blocks.len()];
    // (block, entry vertex in parent ids)
    let mut queue = VecDeque::from([(root_block, decomposition.blocks[root_block].vertices[0])]);
    block_done[root_block] = true;
    while let Some((b, entry)) = queue.pop_front() {
        let block = &decomposition.blocks[b];
        let local = block.local_index(entry).expect("entry vertex lies in its block");
        let order = block_layout(block, local, &rooted_solver)?;
        let mut above = if placement[entry] == usize::MAX {
            parent.push(None);
            placement[entry] = 0;
            0
        } else {
            placement[entry]
        };
        for &lv in &order[1..] {
            let v = block.vertices[lv];
            let node = parent.len();
            parent.push(Some(above));
            placement[v] = node;
            above = node;
        }
        for &v in &block.vertices {
            for nb in decomposition.blocks_of(v) {
                if !block_done[nb] {
                    block_done[nb] = true;
                    queue.push_back((nb, v));
                }
            }
        }
    }
    TreeLayout::new(parent, 0, placement)
}

/// Rooted solver backed by the exact edge-treewidth DP.
pub fn exact_rooted_solver(limits: &Limits) -> impl Fn(&Multigraph, usize) -> Result<Layout, Error> + '_ {
    move |block, root| Ok(width_exact(block, CostKind::EC, Some(root), Mode::Dp, limits)?.witness)
}
