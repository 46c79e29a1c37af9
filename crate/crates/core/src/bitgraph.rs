//! Bitmask view of a multigraph on at most 64 vertices.

use crate::graph::Multigraph;
use crate::width::CostKind;

pub(crate) type Mask = u64;

#[inline]
pub(crate) fn bit(v: usize) -> Mask {
    1u64 << v
}

#[inline]
pub(crate) fn full_mask(n: usize) -> Mask {
    if n == 64 {
        !0
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn members(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

#[derive(Clone, Debug)]
pub(crate) struct BitGraph {
    pub adj: Vec<Mask>,
    /// `layers[j][v]` holds the neighbors `w` whose multiplicity to `v` has bit `j` set.
    layers: Vec<Vec<Mask>>,
}

impl BitGraph {
    pub fn new(g: &Multigraph) -> Self {
        let n = g.vertex_count();
        assert!(n <= 64, "bitmask view supports at most 64 vertices");
        let depth = 32 - g.max_multiplicity().leading_zeros() as usize;
        let mut adj = vec![0; n];
        let mut layers = vec![vec![0; n]; depth];
        for (u, v, m) in g.edges() {
            adj[u] |= bit(v);
            adj[v] |= bit(u);
            for (j, layer) in layers.iter_mut().enumerate() {
                if m >> j & 1 == 1 {
                    layer[u] |= bit(v);
                    layer[v] |= bit(u);
                }
            }
        }
        BitGraph { adj, layers }
    }

    /// Vertex set of the component of `G[s]` containing `x`.
    #[inline]
    pub fn component(&self, s: Mask, x: usize) -> Mask {
        let mut comp = bit(x);
        let mut frontier = comp;
        while frontier != 0 {
            let mut reach = 0;
            for v in members(frontier) {
                reach |= self.adj[v];
            }
            frontier = reach & s & !comp;
            comp |= frontier;
        }
        comp
    }

    /// `|E_G(c)|` counting multiplicity.
    #[inline]
    pub fn edge_boundary(&self, c: Mask) -> u32 {
        let out = !c;
        let mut total = 0u32;
        for (j, layer) in self.layers.iter().enumerate() {
            let mut cnt = 0u32;
            for v in members(c) {
                cnt += (layer[v] & out).count_ones();
            }
            total += cnt << j;
        }
        total
    }

    /// `|N_G(c)|`.
    #[inline]
    pub fn vertex_boundary(&self, c: Mask) -> u32 {
        let mut reach = 0;
        for v in members(c) {
            reach |= self.adj[v];
        }
        (reach & !c).count_ones()
    }

    /// Cost of placing `x` first among the suffix `s`.
    #[inline]
    pub fn cost(&self, s: Mask, x: usize, kind: CostKind) -> u32 {
        match kind {
            CostKind::V => self.vertex_boundary(s),
            CostKind::E => self.edge_boundary(s),
            CostKind::VC => self.vertex_boundary(self.component(s, x)),
            CostKind::EC => self.edge_boundary(self.component(s, x)),
        }
    }
}
