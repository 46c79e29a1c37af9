mod common;

use std::collections::BTreeSet;

use common::{random_connected, random_multigraph, rng};
use etw_core::{
    block_decomposition, cut_quantities, graph_metrics, parse_graph, serialize_graph, BlockKind,
    BlockTreeNode, Error, GraphFormat, Multigraph, ParseErrorKind, VertexSubset,
};
use proptest::prelude::*;
use rand::Rng;

fn theta(m: u32) -> Multigraph {
    Multigraph::from_edges(2, [(0, 1, m)]).unwrap()
}

fn triangle() -> Multigraph {
    Multigraph::from_edges(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap()
}

#[test]
fn parse_examples() {
    let c2 = parse_graph("n 2\ne 0 1 2").unwrap();
    assert_eq!(c2, theta(2));
    assert_eq!(parse_graph("n 3\ne 0 1 1\ne 1 2 1\ne 0 2 1").unwrap(), triangle());
    let err = parse_graph("n 2\ne 0 0 1").unwrap_err();
    assert_eq!(err.kind, ParseErrorKind::Loop(0));
    assert_eq!(err.line, 2);
}

#[test]
fn parse_rejects_bad_lines() {
    for text in ["n 2\ne 0 2 1", "n 2\ne 0 1 0", "e 0 1 1", "n 2\nn 3", "n 2\nx 1"] {
        assert!(parse_graph(text).is_err(), "{text:?} should not parse");
    }
}

#[test]
fn serialize_examples() {
    assert_eq!(serialize_graph(&theta(2), GraphFormat::Native).trim_end(), "n 2\ne 0 1 2");
    assert_eq!(serialize_graph(&Multigraph::new(0), GraphFormat::Native).trim_end(), "n 0");
    let dot = serialize_graph(&theta(2), GraphFormat::Dot);
    assert!(dot.starts_with("graph"));
    assert_eq!(dot.matches("0 -- 1").count(), 2);
}

#[test]
fn serialize_normalizes_edge_order() {
    let text = "# comment\nn 3\ne 2 1 1\ne 1 0 3\n";
    let g = parse_graph(text).unwrap();
    assert_eq!(serialize_graph(&g, GraphFormat::Native).trim_end(), "n 3\ne 0 1 3\ne 1 2 1");
}

#[test]
fn metric_examples() {
    let m = graph_metrics(&theta(2));
    assert_eq!((m.vdeg, m.edeg, m.max_vdeg, m.max_edeg), (vec![1, 1], vec![2, 2], 1, 2));
    assert_eq!(m.diameters, vec![Some(1)]);
    let m = graph_metrics(&theta(5));
    assert_eq!((m.max_vdeg, m.max_edeg), (1, 5));
    let m = graph_metrics(&triangle());
    assert_eq!((m.max_vdeg, m.max_edeg, m.diameters.clone()), (2, 2, vec![Some(1)]));
}

#[test]
fn cut_examples() {
    let q = cut_quantities(&theta(3), &VertexSubset::from_iter([1]), 1).unwrap();
    assert_eq!((q.neighborhood.to_vec(), q.boundary_size(), q.component.to_vec()), (vec![0], 3, vec![1]));
    let q = cut_quantities(&triangle(), &VertexSubset::from_iter([1, 2]), 1).unwrap();
    assert_eq!((q.neighborhood.to_vec(), q.boundary_size(), q.component.to_vec()), (vec![0], 2, vec![1, 2]));
    let g = Multigraph::from_edges(4, [(0, 1, 2), (2, 3, 1)]).unwrap();
    let q = cut_quantities(&g, &VertexSubset::all(&g), 2).unwrap();
    assert!(q.neighborhood.is_empty() && q.boundary.is_empty());
    assert_eq!(q.component.to_vec(), vec![2, 3]);
    assert_eq!(
        cut_quantities(&g, &VertexSubset::from_iter([0]), 1),
        Err(Error::NotInSubset(1))
    );
}

#[test]
fn neighborhood_never_exceeds_boundary() {
    let mut r = rng(11);
    for _ in 0..500 {
        let n = r.gen_range(1..=10);
        let density = r.gen_range(0.1..0.8);
        let g = random_multigraph(&mut r, n, density, 4);
        let mut s: VertexSubset = (0..n).filter(|_| r.gen_bool(0.5)).collect();
        let v = r.gen_range(0..n);
        s.insert(v);
        let q = cut_quantities(&g, &s, v).unwrap();
        assert!(q.neighborhood.len() as u64 <= q.boundary_size());
        assert!(q.component.iter().all(|x| s.contains(x)));
    }
}

#[test]
fn block_examples() {
    let bowtie = Multigraph::from_edges(
        5,
        [(0, 1, 1), (1, 2, 1), (0, 2, 1), (2, 3, 1), (3, 4, 1), (2, 4, 1)],
    )
    .unwrap();
    let d = block_decomposition(&bowtie);
    assert_eq!(d.blocks.len(), 2);
    assert_eq!(d.cut_vertices, vec![2]);
    assert_eq!(d.tree_nodes.len(), 3);
    let cut = d.cut_node(2).unwrap();
    assert_eq!(d.tree_nodes[cut], BlockTreeNode::Cut(2));
    assert_eq!(d.tree_adjacency[cut].len(), 2);

    let p4 = Multigraph::from_edges(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1)]).unwrap();
    let d = block_decomposition(&p4);
    assert_eq!(d.blocks.len(), 3);
    assert!(d.blocks.iter().all(|b| b.kind == BlockKind::Bridge));

    let d = block_decomposition(&theta(4));
    assert_eq!(d.blocks.len(), 1);
    assert_eq!(d.blocks[0].kind, BlockKind::Biconnected);
    assert!(d.cut_vertices.is_empty());
}

#[test]
fn blocks_partition_edge_copies() {
    let mut r = rng(12);
    for _ in 0..200 {
        let n = r.gen_range(1..=12);
        let density = r.gen_range(0.1..0.6);
        let g = random_multigraph(&mut r, n, density, 3);
        let d = block_decomposition(&g);
        let total: u64 = d.blocks.iter().map(|b| b.graph.edge_copy_count()).sum();
        assert_eq!(total, g.edge_copy_count());
        for v in 0..n {
            let in_blocks = d.blocks_of(v).len();
            assert_eq!(in_blocks >= 2, d.cut_vertices.contains(&v), "vertex {v}");
        }
    }
}

/// Two distinct pairs of the simple graph lie in one block iff some simple
/// cycle passes through both, found here by enumerating paths.
fn same_block_oracle(adj: &[Vec<bool>], a: (usize, usize), b: (usize, usize)) -> bool {
    // a cycle through edges a and b exists iff, after removing both edges,
    // there are two vertex-disjoint paths joining their endpoints crosswise
    let n = adj.len();
    let mut adj = adj.to_vec();
    for &(u, v) in &[a, b] {
        adj[u][v] = false;
        adj[v][u] = false;
    }
    let pairings = [((a.0, b.0), (a.1, b.1)), ((a.0, b.1), (a.1, b.0))];
    pairings.iter().any(|&((s1, t1), (s2, t2))| {
        let mut found = false;
        for_each_path(&adj, s1, t1, &mut vec![false; n], &mut |used| {
            if !found {
                found = path_avoiding(&adj, s2, t2, used);
            }
        });
        found
    })
}

fn for_each_path(adj: &[Vec<bool>], s: usize, t: usize, used: &mut Vec<bool>, f: &mut impl FnMut(&[bool])) {
    used[s] = true;
    if s == t {
        f(used);
    } else {
        for w in 0..adj.len() {
            if adj[s][w] && !used[w] {
                for_each_path(adj, w, t, used, f);
            }
        }
    }
    used[s] = false;
}

fn path_avoiding(adj: &[Vec<bool>], s: usize, t: usize, used: &[bool]) -> bool {
    if used[s] || used[t] {
        return false;
    }
    let mut seen = used.to_vec();
    seen[s] = true;
    let mut stack = vec![s];
    while let Some(u) = stack.pop() {
        if u == t {
            return true;
        }
        for w in 0..adj.len() {
            if adj[u][w] && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    false
}

#[test]
fn blocks_match_cycle_oracle() {
    let mut r = rng(13);
    for _ in 0..300 {
        let n = r.gen_range(2..=6);
        let extra = r.gen_range(0..6);
        let g = random_connected(&mut r, n, extra, 2);
        let mut adj = vec![vec![false; n]; n];
        let pairs: Vec<(usize, usize)> = g.edges().map(|(u, v, _)| (u, v)).collect();
        for &(u, v) in &pairs {
            adj[u][v] = true;
            adj[v][u] = true;
        }
        let d = block_decomposition(&g);
        let block_of = |(u, v): (usize, usize)| {
            d.blocks
                .iter()
                .position(|b| matches!((b.local_index(u), b.local_index(v)), (Some(x), Some(y)) if b.graph.multiplicity(x, y) > 0))
                .unwrap()
        };
        for (i, &a) in pairs.iter().enumerate() {
            let b = d.blocks[block_of(a)].clone();
            let expected = if g.multiplicity(a.0, a.1) == 1 { BlockKind::Bridge } else { BlockKind::Biconnected };
            if b.vertices.len() == 2 {
                assert_eq!(b.kind, expected);
            }
            for &c in &pairs[i + 1..] {
                assert_eq!(
                    block_of(a) == block_of(c),
                    same_block_oracle(&adj, a, c),
                    "pairs {a:?} {c:?} in {}",
                    g.to_native()
                );
            }
        }
        let verts: BTreeSet<usize> = d.blocks.iter().flat_map(|b| b.vertices.iter().copied()).collect();
        assert_eq!(verts.len(), n);
    }
}

fn arb_multigraph() -> impl Strategy<Value = Multigraph> {
    (0usize..9).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(0u32..4, pairs).prop_map(move |mults| {
            let mut g = Multigraph::new(n);
            let mut it = mults.into_iter();
            for u in 0..n {
                for v in u + 1..n {
                    let m = it.next().unwrap();
                    if m > 0 {
                        g.add_edge(u, v, m).unwrap();
                    }
                }
            }
            g
        })
    })
}

proptest! {
    #[test]
    fn native_round_trip(g in arb_multigraph()) {
        let text = serialize_graph(&g, GraphFormat::Native);
        let back = parse_graph(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(serialize_graph(&back, GraphFormat::Native), text);
    }

    #[test]
    fn dot_has_one_line_per_copy(g in arb_multigraph()) {
        let dot = serialize_graph(&g, GraphFormat::Dot);
        prop_assert_eq!(dot.matches(" -- ").count() as u64, g.edge_copy_count());
    }
}
