//! Shared helpers for the integration tests: fixtures, seeded random graphs,
//! and oracles written straight from the definitions, independent of the
//! library's solvers.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use etw_core::{canonical_code, parse_graph, CostKind, Multigraph};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn fixture(name: &str) -> Multigraph {
    let path = format!("{}/tests/fixtures/{name}.graph", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    parse_graph(&text).unwrap()
}

pub fn mult_matrix(g: &Multigraph) -> Vec<Vec<u32>> {
    let n = g.vertex_count();
    let mut m = vec![vec![0; n]; n];
    for (u, v, k) in g.edges() {
        m[u][v] = k;
        m[v][u] = k;
    }
    m
}

/// Component of `x` in the subgraph induced by `set`, by plain graph search.
fn component_of(m: &[Vec<u32>], set: &[bool], x: usize) -> Vec<bool> {
    let n = m.len();
    let mut comp = vec![false; n];
    comp[x] = true;
    let mut stack = vec![x];
    while let Some(u) = stack.pop() {
        for w in 0..n {
            if set[w] && !comp[w] && m[u][w] > 0 {
                comp[w] = true;
                stack.push(w);
            }
        }
    }
    comp
}

/// `(|N(X)|, |E(X)|)` for a vertex set `X`, edge copies counted.
fn boundary(m: &[Vec<u32>], x: &[bool]) -> (u32, u32) {
    let n = m.len();
    let mut nb = 0;
    let mut edges = 0;
    for w in 0..n {
        if x[w] {
            continue;
        }
        let mut touches = false;
        for u in 0..n {
            if x[u] && m[u][w] > 0 {
                touches = true;
                edges += m[u][w];
            }
        }
        nb += u32::from(touches);
    }
    (nb, edges)
}

/// Cost of placing `x` first in the suffix `set`, read off the definitions.
pub fn naive_cost(m: &[Vec<u32>], set: &[bool], x: usize, kind: CostKind) -> u32 {
    match kind {
        CostKind::V => boundary(m, set).0,
        CostKind::E => boundary(m, set).1,
        CostKind::VC => boundary(m, &component_of(m, set, x)).0,
        CostKind::EC => boundary(m, &component_of(m, set, x)).1,
    }
}

pub fn naive_profile(g: &Multigraph, order: &[usize], kind: CostKind) -> Vec<u32> {
    let m = mult_matrix(g);
    let mut set = vec![true; g.vertex_count()];
    order
        .iter()
        .map(|&x| {
            let c = naive_cost(&m, &set, x, kind);
            set[x] = false;
            c
        })
        .collect()
}

fn for_each_permutation(items: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        for_each_permutation(items, k + 1, f);
        items.swap(k, i);
    }
}

/// Minimum width over all `n!` layouts (optionally starting at `root`).
pub fn brute_force_width(g: &Multigraph, kind: CostKind, root: Option<usize>) -> u32 {
    let n = g.vertex_count();
    if n == 0 {
        return 0;
    }
    assert!(n <= 10, "brute force is limited to 10 vertices");
    let m = mult_matrix(g);
    // the cost at a position depends on the suffix set and its first vertex
    let mut table = vec![0u32; (1 << n) * n];
    for s in 1usize..(1 << n) {
        let set: Vec<bool> = (0..n).map(|v| s >> v & 1 == 1).collect();
        for x in 0..n {
            if set[x] {
                table[s * n + x] = naive_cost(&m, &set, x, kind);
            }
        }
    }
    let mut best = u32::MAX;
    let mut items: Vec<usize> = (0..n).collect();
    for_each_permutation(&mut items, 0, &mut |order| {
        if root.is_some_and(|r| order[0] != r) {
            return;
        }
        let mut s = (1usize << n) - 1;
        let mut worst = 0;
        for &x in order {
            worst = worst.max(table[s * n + x]);
            if worst >= best {
                return;
            }
            s &= !(1 << x);
        }
        best = best.min(worst);
    });
    best
}

/// Smallest adjacency listing over all vertex orderings.
pub fn brute_force_canonical(g: &Multigraph) -> Vec<u32> {
    let m = mult_matrix(g);
    let n = g.vertex_count();
    let mut best: Option<Vec<u32>> = None;
    let mut items: Vec<usize> = (0..n).collect();
    for_each_permutation(&mut items, 0, &mut |order| {
        let mut code = Vec::with_capacity(n * n / 2);
        for i in 0..n {
            for j in 0..i {
                code.push(m[order[i]][order[j]]);
            }
        }
        if best.as_ref().map_or(true, |b| code < *b) {
            best = Some(code);
        }
    });
    let mut out = vec![n as u32];
    out.extend(best.unwrap_or_default());
    out
}

pub fn random_multigraph(rng: &mut ChaCha8Rng, n: usize, density: f64, max_mult: u32) -> Multigraph {
    let mut g = Multigraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                g.add_edge(u, v, rng.gen_range(1..=max_mult)).unwrap();
            }
        }
    }
    g
}

pub fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> Multigraph {
    let mut g = Multigraph::new(n);
    for v in 1..n {
        g.add_edge(rng.gen_range(0..v), v, 1).unwrap();
    }
    shuffle_labels(rng, &g)
}

pub fn shuffle_labels(rng: &mut ChaCha8Rng, g: &Multigraph) -> Multigraph {
    let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
    perm.shuffle(rng);
    g.relabel(&perm)
}

/// Random connected multigraph: a random spanning tree plus random extra copies.
pub fn random_connected(rng: &mut ChaCha8Rng, n: usize, extra: usize, max_mult: u32) -> Multigraph {
    let mut g = random_tree(rng, n);
    if n >= 2 {
        for _ in 0..extra {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u != v && g.multiplicity(u, v) < max_mult {
                g.add_edge(u, v, 1).unwrap();
            }
        }
    }
    g
}

/// Random cactus: blocks are cycles (including doubled edges) and bridges,
/// glued at single vertices.
pub fn random_cactus(rng: &mut ChaCha8Rng, max_n: usize) -> Multigraph {
    let mut g = Multigraph::new(1);
    while g.vertex_count() < max_n {
        let room = max_n - g.vertex_count();
        let at = rng.gen_range(0..g.vertex_count());
        let len = rng.gen_range(1..=room.min(5));
        match len {
            1 => {
                let w = g.add_vertex();
                let copies = if rng.gen_bool(0.3) { 2 } else { 1 };
                g.add_edge(at, w, copies).unwrap();
            }
            _ => {
                let mut prev = at;
                for _ in 0..len {
                    let w = g.add_vertex();
                    g.add_edge(prev, w, 1).unwrap();
                    prev = w;
                }
                g.add_edge(prev, at, 1).unwrap();
            }
        }
    }
    shuffle_labels(rng, &g)
}

/// Random 2-connected graph: a cycle plus random chords and extra copies.
pub fn random_biconnected(rng: &mut ChaCha8Rng, n: usize, extra: usize, max_mult: u32) -> Multigraph {
    let mut g = Multigraph::new(n);
    if n == 2 {
        g.add_edge(0, 1, rng.gen_range(2..=max_mult.max(2))).unwrap();
        return g;
    }
    for i in 0..n {
        g.add_edge(i, (i + 1) % n, 1).unwrap();
    }
    for _ in 0..extra {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v && g.multiplicity(u, v) < max_mult {
            g.add_edge(u, v, 1).unwrap();
        }
    }
    shuffle_labels(rng, &g)
}

/// One representative of every isomorphism class of multigraphs on `n`
/// vertices with multiplicities at most `max_mult`, found by adding one
/// edge copy at a time and keeping one graph per canonical code.
pub fn iso_classes(n: usize, max_mult: u32) -> Vec<Multigraph> {
    let mut seen = HashSet::new();
    let empty = Multigraph::new(n);
    seen.insert(canonical_code(&empty, 10).unwrap());
    let mut all = vec![empty.clone()];
    let mut frontier = vec![empty];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for g in &frontier {
            for u in 0..n {
                for v in u + 1..n {
                    if g.multiplicity(u, v) < max_mult {
                        let mut h = g.clone();
                        h.add_edge(u, v, 1).unwrap();
                        if seen.insert(canonical_code(&h, 10).unwrap()) {
                            next.push(h);
                        }
                    }
                }
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all
}

/// Local edge-connectivity between `s` and `t` by unit augmenting paths.
pub fn edge_connectivity(g: &Multigraph, s: usize, t: usize) -> u32 {
    let n = g.vertex_count();
    let mut cap: HashMap<(usize, usize), i64> = HashMap::new();
    for (u, v, m) in g.edges() {
        *cap.entry((u, v)).or_default() += i64::from(m);
        *cap.entry((v, u)).or_default() += i64::from(m);
    }
    let mut flow = 0;
    loop {
        let mut prev = vec![usize::MAX; n];
        prev[s] = s;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for w in 0..n {
                if prev[w] == usize::MAX && cap.get(&(u, w)).copied().unwrap_or(0) > 0 {
                    prev[w] = u;
                    stack.push(w);
                }
            }
        }
        if prev[t] == usize::MAX {
            return flow;
        }
        let mut v = t;
        while v != s {
            let u = prev[v];
            *cap.get_mut(&(u, v)).unwrap() -= 1;
            *cap.entry((v, u)).or_default() += 1;
            v = u;
        }
        flow += 1;
    }
}
