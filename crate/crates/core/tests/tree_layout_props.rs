mod common;

use common::{fixture, random_cactus, random_connected, random_tree, rng};
use etw_core::{
    block_decomposition, block_tree_layout, exact_rooted_solver, layout_to_tree_layout, layout_width,
    tree_cost_profile, tree_layout_to_layout, validate_tree_layout, width_exact, CostKind, Error,
    Layout, Limits, Mode, Multigraph, TreeCostKind, TreeLayout, Violation,
};
use rand::seq::SliceRandom;
use rand::Rng;

fn path3() -> Multigraph {
    Multigraph::from_edges(3, [(0, 1, 1), (1, 2, 1)]).unwrap()
}

/// Unplaced root 0, vertex `v` on node `v + 1`, each node the child of the previous.
fn chain(n: usize) -> TreeLayout {
    TreeLayout::new((0..=n).map(|u| u.checked_sub(1)).collect(), 0, (1..=n).collect()).unwrap()
}

fn optimal_tree_layout(g: &Multigraph) -> (u32, TreeLayout) {
    let cert = width_exact(g, CostKind::EC, None, Mode::Dp, &Limits::default()).unwrap();
    (cert.value, layout_to_tree_layout(g, &cert.witness).unwrap())
}

#[test]
fn validation_examples() {
    assert!(validate_tree_layout(&path3(), &chain(3)).valid);
    let triangle = Multigraph::from_edges(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap();
    // a at the root, b and c as its children
    let t = TreeLayout::new(vec![None, Some(0), Some(0)], 0, vec![0, 1, 2]).unwrap();
    let verdict = validate_tree_layout(&triangle, &t);
    assert!(!verdict.valid);
    assert_eq!(verdict.violations, vec![Violation::Incomparable { u: 1, v: 2 }]);
    let single = TreeLayout::new(vec![None], 0, vec![0]).unwrap();
    assert!(validate_tree_layout(&Multigraph::new(1), &single).valid);
    assert!(!validate_tree_layout(&Multigraph::new(2), &single).valid);
}

#[test]
fn malformed_trees_are_rejected() {
    assert!(TreeLayout::new(vec![None, Some(2), Some(1)], 0, vec![1]).is_err());
    assert!(TreeLayout::new(vec![None, Some(0)], 0, vec![1, 1]).is_err());
    assert!(TreeLayout::new(vec![None, None], 0, vec![0]).is_err());
    assert!(TreeLayout::parse("p 1 0\nm 0 1").is_err());
}

#[test]
fn cost_examples() {
    let p = tree_cost_profile(&path3(), &chain(3), TreeCostKind::E).unwrap();
    assert_eq!((p.per_node, p.max), (vec![0, 0, 1, 1], 1));
    let empty = Multigraph::new(3);
    assert_eq!(tree_cost_profile(&empty, &chain(3), TreeCostKind::E).unwrap().max, 0);
    let triangle = Multigraph::from_edges(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap();
    let bad = TreeLayout::new(vec![None, Some(0), Some(0)], 0, vec![0, 1, 2]).unwrap();
    assert!(matches!(
        tree_cost_profile(&triangle, &bad, TreeCostKind::E),
        Err(Error::InvalidTreeLayout(_))
    ));
}

#[test]
fn conversion_examples() {
    let t = layout_to_tree_layout(&path3(), &Layout::identity(3)).unwrap();
    assert_eq!(t, chain(3));
    assert_eq!(tree_cost_profile(&path3(), &t, TreeCostKind::E).unwrap().max, 1);
    assert_eq!(tree_layout_to_layout(&path3(), &chain(3)).unwrap().as_slice(), &[0, 1, 2]);

    let two_edges = Multigraph::from_edges(4, [(0, 1, 1), (2, 3, 1)]).unwrap();
    let t = layout_to_tree_layout(&two_edges, &Layout::new(vec![2, 0, 3, 1], 4).unwrap()).unwrap();
    assert_eq!(t.children()[t.root()].len(), 2);
    assert_eq!(tree_cost_profile(&two_edges, &t, TreeCostKind::E).unwrap().max, 1);

    let single = TreeLayout::new(vec![None], 0, vec![0]).unwrap();
    assert_eq!(tree_layout_to_layout(&Multigraph::new(1), &single).unwrap().as_slice(), &[0]);
}

#[test]
fn figure_graphs_are_certified_by_tree_layouts() {
    for (name, expected) in [("g1", 3), ("g2", 4), ("g3", 6), ("g4", 8)] {
        let g = fixture(name);
        let (value, t) = optimal_tree_layout(&g);
        assert_eq!(value, expected, "{name}");
        assert_eq!(tree_cost_profile(&g, &t, TreeCostKind::E).unwrap().max, u64::from(expected));
        let l = tree_layout_to_layout(&g, &t).unwrap();
        assert!(layout_width(&g, &l, CostKind::EC).unwrap() <= expected);
    }
}

#[test]
fn text_round_trip() {
    let (_, t) = optimal_tree_layout(&fixture("g3"));
    assert_eq!(TreeLayout::parse(&t.to_text()).unwrap(), t);
    assert_eq!(TreeLayout::parse(&chain(4).to_text()).unwrap(), chain(4));
}

#[test]
fn conversions_never_increase_cost() {
    let mut r = rng(31);
    for _ in 0..300 {
        let n = r.gen_range(1..=9);
        let extra = r.gen_range(0..12);
        let g = random_connected(&mut r, n, extra, 3);
        let (value, t) = optimal_tree_layout(&g);
        assert!(validate_tree_layout(&g, &t).valid);
        assert!(tree_cost_profile(&g, &t, TreeCostKind::E).unwrap().max <= u64::from(value));

        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut r);
        let l = Layout::new(order, n).unwrap();
        let t = layout_to_tree_layout(&g, &l).unwrap();
        let lambda = tree_cost_profile(&g, &t, TreeCostKind::E).unwrap().max;
        assert!(lambda <= u64::from(layout_width(&g, &l, CostKind::EC).unwrap()));
        let back = tree_layout_to_layout(&g, &t).unwrap();
        assert!(u64::from(layout_width(&g, &back, CostKind::EC).unwrap()) <= lambda);
        let lambda_v = tree_cost_profile(&g, &t, TreeCostKind::V).unwrap().max;
        assert!(lambda_v <= lambda);
    }
}

#[test]
fn block_layouts_of_cacti_and_trees() {
    let limits = Limits::default();
    let bowtie = Multigraph::from_edges(
        5,
        [(0, 1, 1), (1, 2, 1), (0, 2, 1), (2, 3, 1), (3, 4, 1), (2, 4, 1)],
    )
    .unwrap();
    let t = block_tree_layout(&bowtie, exact_rooted_solver(&limits)).unwrap();
    assert_eq!(tree_cost_profile(&bowtie, &t, TreeCostKind::E).unwrap().max, 2);

    let mut r = rng(32);
    for _ in 0..50 {
        let n = r.gen_range(1..=15);
        let tree = random_tree(&mut r, n);
        let t = block_tree_layout(&tree, |_, _| panic!("no solver needed for bridges")).unwrap();
        assert!(tree_cost_profile(&tree, &t, TreeCostKind::E).unwrap().max <= 1);
        let cactus = random_cactus(&mut r, 14);
        let t = block_tree_layout(&cactus, |_, _| panic!("no solver needed for cycles")).unwrap();
        assert!(tree_cost_profile(&cactus, &t, TreeCostKind::E).unwrap().max <= 2);
    }
    let split = Multigraph::from_edges(4, [(0, 1, 1), (2, 3, 1)]).unwrap();
    assert_eq!(block_tree_layout(&split, exact_rooted_solver(&limits)), Err(Error::Disconnected));
}

#[test]
fn block_layout_respects_composition_bound() {
    let limits = Limits::default();
    let mut r = rng(33);
    for _ in 0..100 {
        let n = r.gen_range(1..=9);
        let extra = r.gen_range(0..10);
        let g = random_connected(&mut r, n, extra, 3);
        let t = block_tree_layout(&g, exact_rooted_solver(&limits)).unwrap();
        assert!(validate_tree_layout(&g, &t).valid);
        let cost = tree_cost_profile(&g, &t, TreeCostKind::E).unwrap().max;
        let bound = block_decomposition(&g)
            .blocks
            .iter()
            .map(|b| {
                let e = u64::from(width_exact(&b.graph, CostKind::EC, None, Mode::Dp, &limits).unwrap().value);
                e * e + 2 * e
            })
            .max()
            .unwrap_or(0);
        assert!(cost <= bound, "{cost} > {bound} on {}", g.to_native());
    }
}

#[test]
fn single_block_uses_best_rooted_layout_bound() {
    let limits = Limits::default();
    let theta3 = Multigraph::from_edges(2, [(0, 1, 3)]).unwrap();
    let t = block_tree_layout(&theta3, exact_rooted_solver(&limits)).unwrap();
    let cost = tree_cost_profile(&theta3, &t, TreeCostKind::E).unwrap().max;
    assert_eq!(cost, 3);
    assert!(cost <= 3 * 3 + 2 * 3);
}
