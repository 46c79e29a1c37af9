//! Isomorphism-invariant codes for small multigraphs.
//!
//! Vertices are first split into colour classes by iterated degree
//! refinement. The code is the lexicographically least adjacency listing over
//! all orderings that list the classes in colour order; orderings are built
//! one position at a time and cut as soon as their prefix exceeds the best
//! one seen. Swapping two vertices whose transposition is an automorphism
//! never changes the code, so only one of them is tried at each position.

use std::cmp::Ordering;

use crate::error::Error;
use crate::graph::Multigraph;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

fn encode(n: usize, words: &[u32]) -> CanonicalCode {
    let mut out = Vec::with_capacity(words.len() + 2);
    let mut push = |mut x: u64| loop {
        let low = (x & 0x7f) as u8;
        x >>= 7;
        if x == 0 {
            out.push(low);
            break;
        }
        out.push(low | 0x80);
    };
    push(n as u64);
    for &w in words {
        push(u64::from(w));
    }
    CanonicalCode(out)
}

fn rank<T: Ord + Clone>(sigs: &[T]) -> (Vec<u32>, usize) {
    let mut distinct: Vec<T> = sigs.to_vec();
    distinct.sort();
    distinct.dedup();
    let colors = sigs
        .iter()
        .map(|s| distinct.binary_search(s).expect("present") as u32)
        .collect();
    (colors, distinct.len())
}

/// Stable colour classes of iterated degree refinement, ranked invariantly.
pub(crate) fn refined_colors(g: &Multigraph) -> Vec<u32> {
    let n = g.vertex_count();
    let adj = g.adjacency();
    let initial: Vec<(u64, usize)> = (0..n).map(|v| (g.edeg(v), adj[v].len())).collect();
    let (mut colors, mut classes) = rank(&initial);
    loop {
        let sigs: Vec<(u32, Vec<(u32, u32)>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<(u32, u32)> = adj[v].iter().map(|&(w, m)| (colors[w], m)).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let (next, count) = rank(&sigs);
        colors = next;
        if count == classes {
            return colors;
        }
        classes = count;
    }
}

struct Search<'a> {
    n: usize,
    mult: &'a [Vec<u32>],
    /// Colour class to fill at each position.
    slot_color: Vec<u32>,
    colors: &'a [u32],
    twin_class: Vec<usize>,
    placed: Vec<bool>,
    order: Vec<usize>,
    code: Vec<u32>,
    best: Option<Vec<u32>>,
}

impl Search<'_> {
    fn go(&mut self) {
        let p = self.order.len();
        if p == self.n {
            let better = match &self.best {
                None => true,
                Some(b) => self.code < *b,
            };
            if better {
                self.best = Some(self.code.clone());
            }
            return;
        }
        let color = self.slot_color[p];
        let mut tried_twins: Vec<usize> = Vec::new();
        for v in 0..self.n {
            if self.placed[v] || self.colors[v] != color {
                continue;
            }
            let tc = self.twin_class[v];
            if tried_twins.contains(&tc) {
                continue;
            }
            tried_twins.push(tc);
            let before = self.code.len();
            for i in 0..p {
                self.code.push(self.mult[v][self.order[i]]);
            }
            let keep = match &self.best {
                None => true,
                Some(b) => self.code[..].cmp(&b[..self.code.len()]) != Ordering::Greater,
            };
            if keep {
                self.placed[v] = true;
                self.order.push(v);
                self.go();
                self.order.pop();
                self.placed[v] = false;
            }
            self.code.truncate(before);
        }
    }
}

/// Classes of vertices pairwise exchangeable by a transposition automorphism.
fn twin_classes(mult: &[Vec<u32>], colors: &[u32]) -> Vec<usize> {
    let n = mult.len();
    let mut class = vec![usize::MAX; n];
    let mut next = 0;
    for u in 0..n {
        if class[u] != usize::MAX {
            continue;
        }
        class[u] = next;
        for v in u + 1..n {
            if class[v] == usize::MAX
                && colors[u] == colors[v]
                && (0..n).all(|w| w == u || w == v || mult[u][w] == mult[v][w])
            {
                class[v] = next;
            }
        }
        next += 1;
    }
    class
}

pub fn canonical_code(g: &Multigraph, iso_limit: usize) -> Result<CanonicalCode, Error> {
    let n = g.vertex_count();
    if n > iso_limit {
        return Err(Error::SizeLimit {
            what: "canonical coding",
            n,
            limit: iso_limit,
        });
    }
    let mut mult = vec![vec![0u32; n]; n];
    for (u, v, m) in g.edges() {
        mult[u][v] = m;
        mult[v][u] = m;
    }
    let colors = refined_colors(g);
    let mut slot_color = colors.clone();
    slot_color.sort_unstable();
    let twin_class = twin_classes(&mult, &colors);
    let mut search = Search {
        n,
        mult: &mult,
        slot_color,
        colors: &colors,
        twin_class,
        placed: vec![false; n],
        order: Vec::with_capacity(n),
        code: Vec::with_capacity(n * n / 2),
        best: None,
    };
    search.go();
    Ok(encode(n, &search.best.unwrap_or_default()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabelling_keeps_the_code() {
        let c2 = Multigraph::from_edges(2, [(0, 1, 2)]).unwrap();
        let swapped = c2.relabel(&[1, 0]);
        assert_eq!(canonical_code(&c2, 10).unwrap(), canonical_code(&swapped, 10).unwrap());
        let theta3 = Multigraph::from_edges(2, [(0, 1, 3)]).unwrap();
        let p3 = Multigraph::from_edges(3, [(0, 1, 1), (1, 2, 1)]).unwrap();
        assert_ne!(canonical_code(&theta3, 10).unwrap(), canonical_code(&p3, 10).unwrap());
    }

    #[test]
    fn edgeless_and_complete_graphs_are_fast() {
        let empty = Multigraph::new(10);
        assert!(canonical_code(&empty, 10).is_ok());
        let mut k10 = Multigraph::new(10);
        for u in 0..10 {
            for v in u + 1..10 {
                k10.add_edge(u, v, 1).unwrap();
            }
        }
        assert!(canonical_code(&k10, 10).is_ok());
        assert!(canonical_code(&Multigraph::new(11), 10).is_err());
    }
}
