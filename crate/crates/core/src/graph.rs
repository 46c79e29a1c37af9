//! Loop-free undirected multigraphs over dense vertex ids `0..n`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, ParseError, ParseErrorKind};

/// A finite, loop-free multigraph. Vertices are `0..vertex_count`; every
/// stored pair `(u, v)` has `u < v` and multiplicity at least one.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Multigraph {
    n: usize,
    edges: BTreeMap<(usize, usize), u32>,
}

fn ordered(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Multigraph {
    pub fn new(vertex_count: usize) -> Self {
        Multigraph {
            n: vertex_count,
            edges: BTreeMap::new(),
        }
    }

    /// Builds a graph from `(u, v, multiplicity)` triples; repeated pairs add up.
    pub fn from_edges(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (usize, usize, u32)>,
    ) -> Result<Self, Error> {
        let mut g = Multigraph::new(vertex_count);
        for (u, v, m) in edges {
            g.add_edge(u, v, m)?;
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Adds `mult` copies of `{u, v}`.
    pub fn add_edge(&mut self, u: usize, v: usize, mult: u32) -> Result<(), Error> {
        if u == v {
            return Err(Error::Loop(u));
        }
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: x,
                    count: self.n,
                });
            }
        }
        if mult == 0 {
            return Err(Error::ZeroMultiplicity(u, v));
        }
        *self.edges.entry(ordered(u, v)).or_insert(0) += mult;
        Ok(())
    }

    /// Removes one copy of `{u, v}`. Returns false if the pair was absent.
    pub fn remove_edge_copy(&mut self, u: usize, v: usize) -> bool {
        let key = ordered(u, v);
        match self.edges.get_mut(&key) {
            Some(m) if *m > 1 => {
                *m -= 1;
                true
            }
            Some(_) => {
                self.edges.remove(&key);
                true
            }
            None => false,
        }
    }

    pub fn add_vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> u32 {
        self.edges.get(&ordered(u, v)).copied().unwrap_or(0)
    }

    /// Distinct pairs with their multiplicities, sorted by `(u, v)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.edges.iter().map(|(&(u, v), &m)| (u, v, m))
    }

    pub fn pair_count(&self) -> usize {
        self.edges.len()
    }

    /// Number of edge copies, counting multiplicity.
    pub fn edge_copy_count(&self) -> u64 {
        self.edges.values().map(|&m| m as u64).sum()
    }

    pub fn max_multiplicity(&self) -> u32 {
        self.edges.values().copied().max().unwrap_or(0)
    }

    /// Neighbors of `v` with multiplicities, ascending by neighbor id.
    pub fn neighbors(&self, v: usize) -> Vec<(usize, u32)> {
        self.adjacency()[v].clone()
    }

    pub fn adjacency(&self) -> Vec<Vec<(usize, u32)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (u, v, m) in self.edges() {
            adj[u].push((v, m));
            adj[v].push((u, m));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn vdeg(&self, v: usize) -> usize {
        self.edges().filter(|&(a, b, _)| a == v || b == v).count()
    }

    pub fn edeg(&self, v: usize) -> u64 {
        self.edges()
            .filter(|&(a, b, _)| a == v || b == v)
            .map(|(_, _, m)| m as u64)
            .sum()
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &(w, _) in &adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// The subgraph induced by `vertices`, relabeled in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Multigraph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Multigraph::new(vertices.len());
        for (u, v, m) in self.edges() {
            if index[u] != usize::MAX && index[v] != usize::MAX {
                g.edges.insert(ordered(index[u], index[v]), m);
            }
        }
        g
    }

    /// Applies a vertex permutation: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Multigraph {
        let mut g = Multigraph::new(self.n);
        for (u, v, m) in self.edges() {
            g.edges.insert(ordered(perm[u], perm[v]), m);
        }
        g
    }

    /// Disjoint union, with `other` shifted past this graph's vertices.
    pub fn disjoint_union(&self, other: &Multigraph) -> Multigraph {
        let mut g = self.clone();
        let shift = g.n;
        g.n += other.n;
        for (u, v, m) in other.edges() {
            g.edges.insert((u + shift, v + shift), m);
        }
        g
    }

    /// The same vertex set with every multiplicity replaced by `mult`.
    pub fn with_uniform_multiplicity(&self, mult: u32) -> Multigraph {
        let mut g = self.clone();
        for m in g.edges.values_mut() {
            *m = mult;
        }
        g
    }

    pub fn to_native(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for (u, v, m) in self.edges() {
            let _ = writeln!(out, "e {u} {v} {m}");
        }
        out
    }

    /// Graphviz output with one statement per edge copy.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.n {
            let _ = writeln!(out, "  {v};");
        }
        for (u, v, m) in self.edges() {
            for _ in 0..m {
                let _ = writeln!(out, "  {u} -- {v};");
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Output formats understood by [`serialize_graph`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Native,
    Dot,
}

pub fn serialize_graph(g: &Multigraph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Native => g.to_native(),
        GraphFormat::Dot => g.to_dot(),
    }
}

/// Parses the native line format:
///
/// ```text
/// # optional comments
/// n <count>
/// e <u> <v> <mult>
/// ```
pub fn parse_graph(text: &str) -> Result<Multigraph, ParseError> {
    let mut graph: Option<Multigraph> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |kind| ParseError {
            line: line_no,
            kind,
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "n" => {
                if graph.is_some() {
                    return Err(err(ParseErrorKind::DuplicateHeader));
                }
                if fields.len() != 2 {
                    return Err(err(ParseErrorKind::Malformed(line.to_string())));
                }
                let n = parse_num(fields[1]).ok_or_else(|| err(ParseErrorKind::Malformed(line.to_string())))?;
                graph = Some(Multigraph::new(n));
            }
            "e" => {
                let g = graph.as_mut().ok_or_else(|| err(ParseErrorKind::MissingHeader))?;
                if fields.len() != 4 {
                    return Err(err(ParseErrorKind::Malformed(line.to_string())));
                }
                let nums: Option<Vec<usize>> = fields[1..].iter().map(|f| parse_num(f)).collect();
                let nums = nums.ok_or_else(|| err(ParseErrorKind::Malformed(line.to_string())))?;
                let (u, v, m) = (nums[0], nums[1], nums[2]);
                if u == v {
                    return Err(err(ParseErrorKind::Loop(u)));
                }
                if u >= g.n || v >= g.n {
                    return Err(err(ParseErrorKind::VertexOutOfRange(u.max(v))));
                }
                if m == 0 || m > u32::MAX as usize {
                    return Err(err(ParseErrorKind::BadMultiplicity(fields[3].to_string())));
                }
                *g.edges.entry(ordered(u, v)).or_insert(0) += m as u32;
            }
            _ => return Err(err(ParseErrorKind::Malformed(line.to_string()))),
        }
    }
    graph.ok_or(ParseError {
        line: 0,
        kind: ParseErrorKind::MissingHeader,
    })
}

fn parse_num(s: &str) -> Option<usize> {
    if s.starts_with('+') {
        return None;
    }
    s.parse().ok()
}

/// A set of vertex ids, kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct VertexSubset(BTreeSet<usize>);

impl VertexSubset {
    pub fn new() -> Self {
        VertexSubset(BTreeSet::new())
    }

    pub fn all(g: &Multigraph) -> Self {
        (0..g.vertex_count()).collect()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }

    pub fn insert(&mut self, v: usize) -> bool {
        self.0.insert(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.0.iter().copied().collect()
    }
}

impl FromIterator<usize> for VertexSubset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSubset(iter.into_iter().collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphMetrics {
    pub vdeg: Vec<usize>,
    pub edeg: Vec<u64>,
    pub max_vdeg: usize,
    pub max_edeg: u64,
    /// One entry per connected component, in [`Multigraph::components`] order.
    pub diameters: Vec<Option<usize>>,
}

pub fn graph_metrics(g: &Multigraph) -> GraphMetrics {
    let adj = g.adjacency();
    let vdeg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let edeg: Vec<u64> = adj
        .iter()
        .map(|l| l.iter().map(|&(_, m)| m as u64).sum())
        .collect();
    let diameters = g
        .components()
        .iter()
        .map(|comp| component_diameter(&adj, comp))
        .collect();
    GraphMetrics {
        max_vdeg: vdeg.iter().copied().max().unwrap_or(0),
        max_edeg: edeg.iter().copied().max().unwrap_or(0),
        vdeg,
        edeg,
        diameters,
    }
}

fn component_diameter(adj: &[Vec<(usize, u32)>], comp: &[usize]) -> Option<usize> {
    if comp.is_empty() {
        return None;
    }
    let mut best = 0;
    let mut dist = vec![usize::MAX; adj.len()];
    for &s in comp {
        for &v in comp {
            dist[v] = usize::MAX;
        }
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            best = best.max(dist[u]);
            for &(w, _) in &adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
    }
    Some(best)
}

/// `N_G(S)`, `E_G(S)` and `C_G(S, v)` for a vertex set `S` containing `v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CutQuantities {
    pub neighborhood: VertexSubset,
    /// Boundary pairs `(inside, outside, multiplicity)`.
    pub boundary: Vec<(usize, usize, u32)>,
    pub component: VertexSubset,
}

impl CutQuantities {
    /// `|E_G(S)|` counting multiplicity.
    pub fn boundary_size(&self) -> u64 {
        self.boundary.iter().map(|&(_, _, m)| m as u64).sum()
    }
}

pub fn cut_quantities(g: &Multigraph, s: &VertexSubset, v: usize) -> Result<CutQuantities, Error> {
    if let Some(bad) = s.iter().find(|&x| x >= g.vertex_count()) {
        return Err(Error::VertexOutOfRange {
            vertex: bad,
            count: g.vertex_count(),
        });
    }
    if !s.contains(v) {
        return Err(Error::NotInSubset(v));
    }
    let mut neighborhood = VertexSubset::new();
    let mut boundary = Vec::new();
    for (a, b, m) in g.edges() {
        match (s.contains(a), s.contains(b)) {
            (true, false) => {
                neighborhood.insert(b);
                boundary.push((a, b, m));
            }
            (false, true) => {
                neighborhood.insert(a);
                boundary.push((b, a, m));
            }
            _ => {}
        }
    }
    let adj = g.adjacency();
    let mut component = VertexSubset::new();
    component.insert(v);
    let mut queue = VecDeque::from([v]);
    while let Some(u) = queue.pop_front() {
        for &(w, _) in &adj[u] {
            if s.contains(w) && component.insert(w) {
                queue.push_back(w);
            }
        }
    }
    Ok(CutQuantities {
        neighborhood,
        boundary,
        component,
    })
}
