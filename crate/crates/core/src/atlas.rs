//! Named graph families, the obstruction sets for edge-treewidth at most 1
//! and 2, and the layered containment parameter of an antichain of families.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Error;
use crate::graph::Multigraph;
use crate::limits::Limits;
use crate::rewrite::{apply_step, contains, legal_steps, weak_subdivision, Relation};
use crate::width::{width_exact, CostKind, Mode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FamilyId {
    Cycle,
    Path,
    Star,
    BinaryTree,
    Grid,
    Wall,
    DotWall,
    Theta,
    DotTheta,
    Fan,
    TildeFan,
    DotFan,
    Z2,
    Z3,
    GTight,
    ThetaBouquet,
}

impl FamilyId {
    pub const ALL: [FamilyId; 16] = [
        FamilyId::Cycle,
        FamilyId::Path,
        FamilyId::Star,
        FamilyId::BinaryTree,
        FamilyId::Grid,
        FamilyId::Wall,
        FamilyId::DotWall,
        FamilyId::Theta,
        FamilyId::DotTheta,
        FamilyId::Fan,
        FamilyId::TildeFan,
        FamilyId::DotFan,
        FamilyId::Z2,
        FamilyId::Z3,
        FamilyId::GTight,
        FamilyId::ThetaBouquet,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyId::Cycle => "cycle",
            FamilyId::Path => "path",
            FamilyId::Star => "star",
            FamilyId::BinaryTree => "binary-tree",
            FamilyId::Grid => "grid",
            FamilyId::Wall => "wall",
            FamilyId::DotWall => "dot-wall",
            FamilyId::Theta => "theta",
            FamilyId::DotTheta => "dot-theta",
            FamilyId::Fan => "fan",
            FamilyId::TildeFan => "tilde-fan",
            FamilyId::DotFan => "dot-fan",
            FamilyId::Z2 => "z2",
            FamilyId::Z3 => "z3",
            FamilyId::GTight => "g-tight",
            FamilyId::ThetaBouquet => "theta-bouquet",
        }
    }

    /// Inclusive index range accepted by [`generate`].
    pub fn index_range(self) -> (usize, usize) {
        match self {
            FamilyId::Cycle => (2, 1000),
            FamilyId::Path => (1, 1000),
            FamilyId::Star => (1, 1000),
            FamilyId::BinaryTree => (0, 16),
            FamilyId::Grid => (1, 100),
            FamilyId::Wall | FamilyId::DotWall => (2, 100),
            FamilyId::Theta | FamilyId::DotTheta => (1, 1000),
            FamilyId::Fan | FamilyId::TildeFan | FamilyId::DotFan => (1, 1000),
            FamilyId::Z2 => (1, 4),
            FamilyId::Z3 => (2, 1000),
            FamilyId::GTight => (4, 8),
            FamilyId::ThetaBouquet => (2, 30),
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.to_ascii_lowercase().replace('_', "-");
        FamilyId::ALL
            .into_iter()
            .find(|f| f.name() == key || f.name().replace('-', "") == key)
            .ok_or_else(|| format!("unknown family `{s}`"))
    }
}

fn simple(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Multigraph {
    Multigraph::from_edges(n, edges.into_iter().map(|(u, v)| (u, v, 1))).expect("generator edges are valid")
}

fn cycle(n: usize) -> Multigraph {
    if n == 2 {
        return Multigraph::from_edges(2, [(0, 1, 2)]).expect("valid");
    }
    simple(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// Path on `i` vertices `0..i` plus the universal vertex `i`.
fn fan(i: usize) -> Multigraph {
    simple(i + 1, (1..i).map(|v| (v - 1, v)).chain((0..i).map(|v| (v, i))))
}

/// Subdivides once every edge joining two vertices of vertex-degree 3.
fn tilde_fan(i: usize) -> Multigraph {
    let f = fan(i);
    let cubic: Vec<bool> = (0..f.vertex_count()).map(|v| f.vdeg(v) == 3).collect();
    let mut out = Multigraph::new(f.vertex_count());
    for (u, v, m) in f.edges() {
        if cubic[u] && cubic[v] {
            let w = out.add_vertex();
            out.add_edge(u, w, 1).expect("valid");
            out.add_edge(w, v, 1).expect("valid");
        } else {
            out.add_edge(u, v, m).expect("valid");
        }
    }
    out
}

/// The `r`-wall: the `2r × r` grid without the vertical edges
/// `{(x, y), (x, y + 1)}` for odd `x + y`, with degree-1 vertices removed.
fn wall(r: usize) -> Multigraph {
    let width = 2 * r;
    let id = |x: usize, y: usize| y * width + x;
    let mut edges = Vec::new();
    for y in 0..r {
        for x in 0..width {
            if x + 1 < width {
                edges.push((id(x, y), id(x + 1, y)));
            }
            // 1-based coordinates (x + 1, y + 1) have the parity of x + y
            if y + 1 < r && (x + y) % 2 == 0 {
                edges.push((id(x, y), id(x, y + 1)));
            }
        }
    }
    let mut g = simple(width * r, edges);
    loop {
        let keep: Vec<usize> = (0..g.vertex_count()).filter(|&v| g.vdeg(v) != 1).collect();
        if keep.len() == g.vertex_count() {
            return g;
        }
        g = g.induced(&keep);
    }
}

fn grid(i: usize) -> Multigraph {
    let id = |x: usize, y: usize| y * i + x;
    let mut edges = Vec::new();
    for y in 0..i {
        for x in 0..i {
            if x + 1 < i {
                edges.push((id(x, y), id(x + 1, y)));
            }
            if y + 1 < i {
                edges.push((id(x, y), id(x, y + 1)));
            }
        }
    }
    simple(i * i, edges)
}

/// Poles 0 and 1 joined by three internally disjoint paths, `j - 1` of
/// length two and `4 - j` of length one.
fn z2(j: usize) -> Multigraph {
    let mut g = Multigraph::new(2);
    if j < 4 {
        g.add_edge(0, 1, (4 - j) as u32).expect("valid");
    }
    for _ in 1..j {
        let w = g.add_vertex();
        g.add_edge(0, w, 1).expect("valid");
        g.add_edge(w, 1, 1).expect("valid");
    }
    g
}

/// Two adjacent centres, each the root of a complete `(i + 1)`-ary tree of
/// depth `i`, a vertex joined to every leaf, and every edge repeated `i + 2` times.
fn g_tight(i: usize) -> Multigraph {
    let mut edges = vec![(0, 1)];
    let mut count = 2;
    let mut leaves = Vec::new();
    for center in [0, 1] {
        let mut level = vec![center];
        for _ in 0..i {
            let mut next = Vec::new();
            for &p in &level {
                for _ in 0..=i {
                    edges.push((p, count));
                    next.push(count);
                    count += 1;
                }
            }
            level = next;
        }
        leaves.extend(level);
    }
    let x = count;
    edges.extend(leaves.into_iter().map(|l| (l, x)));
    Multigraph::from_edges(x + 1, edges.into_iter().map(|(u, v)| (u, v, (i + 2) as u32))).expect("valid")
}

pub fn generate(family: FamilyId, index: usize) -> Result<Multigraph, Error> {
    let (lo, hi) = family.index_range();
    if index < lo || index > hi {
        return Err(Error::IndexOutOfRange {
            family: family.name().to_string(),
            index,
        });
    }
    let i = index;
    Ok(match family {
        FamilyId::Cycle => cycle(i),
        FamilyId::Path => simple(i, (1..i).map(|v| (v - 1, v))),
        FamilyId::Star => simple(i + 1, (1..=i).map(|v| (0, v))),
        FamilyId::BinaryTree => {
            let n = (1usize << (i + 1)) - 1;
            simple(n, (1..n).map(|v| ((v - 1) / 2, v)))
        }
        FamilyId::Grid => grid(i),
        FamilyId::Wall => wall(i),
        FamilyId::DotWall => weak_subdivision(&wall(i)),
        FamilyId::Theta => Multigraph::from_edges(2, [(0, 1, i as u32)]).expect("valid"),
        FamilyId::DotTheta => {
            weak_subdivision(&Multigraph::from_edges(2, [(0, 1, i as u32)]).expect("valid"))
        }
        FamilyId::Fan => fan(i),
        FamilyId::TildeFan => tilde_fan(i),
        FamilyId::DotFan => weak_subdivision(&fan(i)),
        FamilyId::Z2 => z2(i),
        FamilyId::Z3 => cycle(i).with_uniform_multiplicity(if i == 2 { 4 } else { 2 }),
        FamilyId::GTight => g_tight(i - 3),
        FamilyId::ThetaBouquet => {
            let copies = wall(i).pair_count();
            Multigraph::from_edges(copies + 1, (1..=copies).map(|v| (0, v, 3))).expect("valid")
        }
    })
}

/// The weak-topological-minor obstructions for edge-treewidth at most `k`.
pub fn fixed_obstruction_set(k: u32) -> Result<Vec<Multigraph>, Error> {
    match k {
        1 => Ok(vec![cycle(2)]),
        2 => Ok((1..=4).map(z2).collect()),
        other => Err(Error::UnsupportedObstructionSet(other)),
    }
}

/// True iff `etw(h) > k` while every single weak-topological-minor step
/// brings it down to at most `k`.
pub fn minimality_check(h: &Multigraph, k: u32, limits: &Limits) -> Result<bool, Error> {
    let etw = |g: &Multigraph| width_exact(g, CostKind::EC, None, Mode::Dp, limits).map(|c| c.value);
    if etw(h)? <= k {
        return Ok(false);
    }
    for step in legal_steps(h, Relation::WeakTopologicalMinor) {
        let reduced = apply_step(h, step)?;
        if etw(&reduced)? > k {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Families whose `i`-th members, taken at index `offset + i`, form layer `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AntichainSpec {
    pub families: Vec<FamilyId>,
    pub offset: usize,
}

impl Default for AntichainSpec {
    fn default() -> Self {
        AntichainSpec {
            families: vec![
                FamilyId::Theta,
                FamilyId::DotTheta,
                FamilyId::TildeFan,
                FamilyId::DotFan,
                FamilyId::DotWall,
            ],
            offset: 3,
        }
    }
}

impl AntichainSpec {
    pub fn layer(&self, i: usize) -> Result<Vec<(FamilyId, Multigraph)>, Error> {
        self.families
            .iter()
            .map(|&f| Ok((f, generate(f, self.offset + i)?)))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniversalP {
    pub value: usize,
    /// Layer member found inside the graph, if any.
    pub witness: Option<(usize, FamilyId)>,
}

/// Largest layer `i ≤ max_layer` with a member that is a weak topological
/// minor of `g`, or 0 when there is none. An undecided query above the
/// answer makes the whole result undecided.
pub fn universal_p(
    g: &Multigraph,
    max_layer: usize,
    spec: &AntichainSpec,
    limits: &Limits,
) -> Result<UniversalP, Error> {
    let mut undecided: Option<Error> = None;
    for layer in (0..=max_layer).rev() {
        for (family, member) in spec.layer(layer)? {
            match contains(&member, g, Relation::WeakTopologicalMinor, limits) {
                Ok(true) => {
                    return match undecided {
                        Some(e) => Err(e),
                        None => Ok(UniversalP {
                            value: layer,
                            witness: Some((layer, family)),
                        }),
                    }
                }
                Ok(false) => {}
                Err(e) if e.is_indeterminate() => {
                    undecided.get_or_insert(e);
                }
                Err(e) => return Err(e),
            }
        }
    }
    match undecided {
        Some(e) => Err(e),
        None => Ok(UniversalP {
            value: 0,
            witness: None,
        }),
    }
}
