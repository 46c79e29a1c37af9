//! Blocks, cut vertices and the block tree.
//!
//! Components are computed on the underlying simple graph. A pair with
//! multiplicity one that forms its own component is a bridge; with larger
//! multiplicity it is a 2-connected `C_2`-like block.

use serde::Serialize;

use crate::graph::Multigraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BlockKind {
    Bridge,
    Biconnected,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    /// Parent vertex ids, ascending; local vertex `i` is `vertices[i]`.
    pub vertices: Vec<usize>,
    pub graph: Multigraph,
    pub kind: BlockKind,
}

impl Block {
    pub fn local_index(&self, parent_vertex: usize) -> Option<usize> {
        self.vertices.binary_search(&parent_vertex).ok()
    }

    /// True when the block is a single cycle (including `C_2`).
    pub fn is_cycle(&self) -> bool {
        let g = &self.graph;
        match g.vertex_count() {
            2 => g.multiplicity(0, 1) == 2,
            k if k >= 3 => {
                g.pair_count() == k
                    && g.max_multiplicity() == 1
                    && (0..k).all(|v| g.vdeg(v) == 2)
            }
            _ => false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BlockTreeNode {
    Block(usize),
    Cut(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub blocks: Vec<Block>,
    pub cut_vertices: Vec<usize>,
    /// Nodes `0..blocks.len()` are blocks, the rest are cut vertices in
    /// `cut_vertices` order.
    pub tree_nodes: Vec<BlockTreeNode>,
    pub tree_adjacency: Vec<Vec<usize>>,
}

impl BlockDecomposition {
    pub fn cut_node(&self, v: usize) -> Option<usize> {
        self.cut_vertices
            .binary_search(&v)
            .ok()
            .map(|i| self.blocks.len() + i)
    }

    /// Blocks containing parent vertex `v`.
    pub fn blocks_of(&self, v: usize) -> Vec<usize> {
        (0..self.blocks.len())
            .filter(|&b| self.blocks[b].local_index(v).is_some())
            .collect()
    }

    /// Leaf blocks of the block tree (every block when there is no cut vertex).
    pub fn leaf_blocks(&self) -> Vec<usize> {
        (0..self.blocks.len())
            .filter(|&b| self.tree_adjacency[b].len() <= 1)
            .collect()
    }
}

struct Tarjan<'a> {
    adj: &'a [Vec<usize>],
    disc: Vec<usize>,
    low: Vec<usize>,
    timer: usize,
    stack: Vec<(usize, usize)>,
    found: Vec<Vec<(usize, usize)>>,
}

impl Tarjan<'_> {
    fn visit(&mut self, u: usize, parent: Option<usize>) {
        self.timer += 1;
        self.disc[u] = self.timer;
        self.low[u] = self.timer;
        for i in 0..self.adj[u].len() {
            let w = self.adj[u][i];
            if Some(w) == parent {
                continue;
            }
            if self.disc[w] == 0 {
                self.stack.push((u, w));
                self.visit(w, Some(u));
                self.low[u] = self.low[u].min(self.low[w]);
                if self.low[w] >= self.disc[u] {
                    let mut comp = Vec::new();
                    while let Some(e) = self.stack.pop() {
                        comp.push(e);
                        if e == (u, w) {
                            break;
                        }
                    }
                    self.found.push(comp);
                }
            } else if self.disc[w] < self.disc[u] {
                self.stack.push((u, w));
                self.low[u] = self.low[u].min(self.disc[w]);
            }
        }
    }
}

pub fn block_decomposition(g: &Multigraph) -> BlockDecomposition {
    let n = g.vertex_count();
    let adj: Vec<Vec<usize>> = g
        .adjacency()
        .into_iter()
        .map(|l| l.into_iter().map(|(w, _)| w).collect())
        .collect();
    let mut t = Tarjan {
        adj: &adj,
        disc: vec![0; n],
        low: vec![0; n],
        timer: 0,
        stack: Vec::new(),
        found: Vec::new(),
    };
    for s in 0..n {
        if t.disc[s] == 0 {
            t.visit(s, None);
        }
    }

    let mut vertex_sets: Vec<Vec<usize>> = t
        .found
        .into_iter()
        .map(|edges| {
            let mut vs: Vec<usize> = edges.into_iter().flat_map(|(a, b)| [a, b]).collect();
            vs.sort_unstable();
            vs.dedup();
            vs
        })
        .collect();
    vertex_sets.sort();

    let blocks: Vec<Block> = vertex_sets
        .into_iter()
        .map(|vertices| {
            let graph = g.induced(&vertices);
            let kind = if vertices.len() == 2 && graph.multiplicity(0, 1) == 1 {
                BlockKind::Bridge
            } else {
                BlockKind::Biconnected
            };
            Block {
                vertices,
                graph,
                kind,
            }
        })
        .collect();

    let mut count = vec![0usize; n];
    for b in &blocks {
        for &v in &b.vertices {
            count[v] += 1;
        }
    }
    let cut_vertices: Vec<usize> = (0..n).filter(|&v| count[v] >= 2).collect();

    let mut tree_nodes: Vec<BlockTreeNode> = (0..blocks.len()).map(BlockTreeNode::Block).collect();
    tree_nodes.extend(cut_vertices.iter().map(|&v| BlockTreeNode::Cut(v)));
    let mut tree_adjacency = vec![Vec::new(); tree_nodes.len()];
    for (ci, &v) in cut_vertices.iter().enumerate() {
        let node = blocks.len() + ci;
        for (bi, b) in blocks.iter().enumerate() {
            if b.local_index(v).is_some() {
                tree_adjacency[bi].push(node);
                tree_adjacency[node].push(bi);
            }
        }
    }
    BlockDecomposition {
        blocks,
        cut_vertices,
        tree_nodes,
        tree_adjacency,
    }
}
