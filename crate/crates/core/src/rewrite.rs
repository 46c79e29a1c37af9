//! Atomic rewrites and the four containment relations built from them.
//!
//! Each relation is "take a subgraph, then apply a second kind of step":
//!
//! | relation | second-phase step |
//! |----------|-------------------|
//! | minor | contraction of any pair |
//! | topological minor | dissolution of a vertex with vertex- and edge-degree 2 |
//! | immersion | lifting two incident edge copies |
//! | weak topological minor | contraction of a pair whose ends both have vertex- and edge-degree 2 |

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::canonical::{canonical_code, CanonicalCode};
use crate::error::Error;
use crate::graph::Multigraph;
use crate::limits::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RewriteStep {
    DeleteVertex(usize),
    DeleteEdgeCopy(usize, usize),
    Dissolve(usize),
    Contract(usize, usize),
    WtpContract(usize, usize),
    /// Replace one copy of `{x, y}` and one of `{x, z}` by a copy of `{y, z}`.
    Lift { x: usize, y: usize, z: usize },
}

impl fmt::Display for RewriteStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RewriteStep::DeleteVertex(v) => write!(f, "delete-vertex({v})"),
            RewriteStep::DeleteEdgeCopy(u, v) => write!(f, "delete-edge({u},{v})"),
            RewriteStep::Dissolve(v) => write!(f, "dissolve({v})"),
            RewriteStep::Contract(u, v) => write!(f, "contract({u},{v})"),
            RewriteStep::WtpContract(u, v) => write!(f, "wtp-contract({u},{v})"),
            RewriteStep::Lift { x, y, z } => write!(f, "lift({x};{y},{z})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Relation {
    Minor,
    TopologicalMinor,
    Immersion,
    WeakTopologicalMinor,
}

impl FromStr for Relation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "mn" | "minor" => Ok(Relation::Minor),
            "tp" | "topological-minor" => Ok(Relation::TopologicalMinor),
            "im" | "immersion" => Ok(Relation::Immersion),
            "wtp" | "weak-topological-minor" => Ok(Relation::WeakTopologicalMinor),
            other => Err(format!("unknown relation `{other}`")),
        }
    }
}

fn precondition(step: RewriteStep, reason: impl Into<String>) -> Error {
    Error::StepPrecondition {
        step: step.to_string(),
        reason: reason.into(),
    }
}

fn degree_two(g: &Multigraph, v: usize) -> bool {
    g.vdeg(v) == 2 && g.edeg(v) == 2
}

/// Removes vertex `gone`, shifting higher ids down by one.
fn delete_vertex(g: &Multigraph, gone: usize) -> Multigraph {
    let shift = |v: usize| if v > gone { v - 1 } else { v };
    let mut out = Multigraph::new(g.vertex_count() - 1);
    for (u, v, m) in g.edges() {
        if u != gone && v != gone {
            out.add_edge(shift(u), shift(v), m).expect("valid edge");
        }
    }
    out
}

/// Merges `u` and `v` into the smaller id; the pair's own copies vanish and
/// copies towards a common neighbour are summed.
fn contract(g: &Multigraph, u: usize, v: usize) -> Multigraph {
    let (keep, gone) = (u.min(v), u.max(v));
    let shift = |w: usize| if w > gone { w - 1 } else { w };
    let mut out = Multigraph::new(g.vertex_count() - 1);
    for (a, b, m) in g.edges() {
        let a = if a == gone { keep } else { a };
        let b = if b == gone { keep } else { b };
        if a != b {
            out.add_edge(shift(a), shift(b), m).expect("valid edge");
        }
    }
    out
}

pub fn apply_step(g: &Multigraph, step: RewriteStep) -> Result<Multigraph, Error> {
    let n = g.vertex_count();
    let in_range = |v: usize| {
        if v < n {
            Ok(())
        } else {
            Err(precondition(step, format!("vertex {v} does not exist")))
        }
    };
    match step {
        RewriteStep::DeleteVertex(v) => {
            in_range(v)?;
            Ok(delete_vertex(g, v))
        }
        RewriteStep::DeleteEdgeCopy(u, v) => {
            in_range(u)?;
            in_range(v)?;
            let mut out = g.clone();
            if !out.remove_edge_copy(u, v) {
                return Err(precondition(step, format!("no edge between {u} and {v}")));
            }
            Ok(out)
        }
        RewriteStep::Dissolve(v) => {
            in_range(v)?;
            if !degree_two(g, v) {
                return Err(precondition(
                    step,
                    format!("vertex {v} has vertex-degree {} and edge-degree {}", g.vdeg(v), g.edeg(v)),
                ));
            }
            let nb = g.neighbors(v);
            let mut out = g.clone();
            out.add_edge(nb[0].0, nb[1].0, 1).expect("distinct neighbours");
            Ok(delete_vertex(&out, v))
        }
        RewriteStep::Contract(u, v) => {
            in_range(u)?;
            in_range(v)?;
            if u == v || g.multiplicity(u, v) == 0 {
                return Err(precondition(step, format!("no edge between {u} and {v}")));
            }
            Ok(contract(g, u, v))
        }
        RewriteStep::WtpContract(u, v) => {
            in_range(u)?;
            in_range(v)?;
            if u == v || g.multiplicity(u, v) == 0 {
                return Err(precondition(step, format!("no edge between {u} and {v}")));
            }
            if let Some(bad) = [u, v].into_iter().find(|&w| !degree_two(g, w)) {
                return Err(precondition(
                    step,
                    format!(
                        "vertex {bad} has vertex-degree {} and edge-degree {}",
                        g.vdeg(bad),
                        g.edeg(bad)
                    ),
                ));
            }
            Ok(contract(g, u, v))
        }
        RewriteStep::Lift { x, y, z } => {
            in_range(x)?;
            in_range(y)?;
            in_range(z)?;
            if y == z {
                return Err(precondition(step, "the two outer vertices coincide"));
            }
            if g.multiplicity(x, y) == 0 || g.multiplicity(x, z) == 0 {
                return Err(precondition(step, "the two edges are not both present"));
            }
            let mut out = g.clone();
            out.remove_edge_copy(x, y);
            out.remove_edge_copy(x, z);
            out.add_edge(y, z, 1).expect("distinct endpoints");
            Ok(out)
        }
    }
}

fn deletion_steps(g: &Multigraph) -> Vec<RewriteStep> {
    let mut steps: Vec<RewriteStep> = (0..g.vertex_count()).map(RewriteStep::DeleteVertex).collect();
    steps.extend(g.edges().map(|(u, v, _)| RewriteStep::DeleteEdgeCopy(u, v)));
    steps
}

fn second_phase_steps(g: &Multigraph, relation: Relation) -> Vec<RewriteStep> {
    match relation {
        Relation::Minor => g.edges().map(|(u, v, _)| RewriteStep::Contract(u, v)).collect(),
        Relation::TopologicalMinor => (0..g.vertex_count())
            .filter(|&v| degree_two(g, v))
            .map(RewriteStep::Dissolve)
            .collect(),
        Relation::WeakTopologicalMinor => g
            .edges()
            .filter(|&(u, v, _)| degree_two(g, u) && degree_two(g, v))
            .map(|(u, v, _)| RewriteStep::WtpContract(u, v))
            .collect(),
        Relation::Immersion => {
            let mut steps = Vec::new();
            for x in 0..g.vertex_count() {
                let nb = g.neighbors(x);
                for (i, &(y, _)) in nb.iter().enumerate() {
                    for &(z, _) in &nb[i + 1..] {
                        steps.push(RewriteStep::Lift { x, y, z });
                    }
                }
            }
            steps
        }
    }
}

/// Every step applicable to `g` under `relation`: the deletions plus the
/// relation's own step, each satisfying its precondition.
pub fn legal_steps(g: &Multigraph, relation: Relation) -> Vec<RewriteStep> {
    let mut steps = deletion_steps(g);
    steps.extend(second_phase_steps(g, relation));
    steps
}

/// Subdivides once every edge copy whose endpoints both have edge-degree at
/// least 3; new vertices follow the existing ones in edge order.
pub fn weak_subdivision(g: &Multigraph) -> Multigraph {
    let heavy: Vec<bool> = (0..g.vertex_count()).map(|v| g.edeg(v) >= 3).collect();
    let mut out = Multigraph::new(g.vertex_count());
    for (u, v, m) in g.edges() {
        if heavy[u] && heavy[v] {
            for _ in 0..m {
                let w = out.add_vertex();
                out.add_edge(u, w, 1).expect("valid edge");
                out.add_edge(w, v, 1).expect("valid edge");
            }
        } else {
            out.add_edge(u, v, m).expect("valid edge");
        }
    }
    out
}

struct Closure<'a> {
    limits: &'a Limits,
    visited: usize,
}

impl Closure<'_> {
    fn code(&mut self, g: &Multigraph) -> Result<CanonicalCode, Error> {
        canonical_code(g, self.limits.iso_limit)
    }

    fn count(&mut self) -> Result<(), Error> {
        self.visited += 1;
        if self.visited > self.limits.bfs_budget {
            return Err(Error::BudgetExceeded(format!(
                "containment search visited more than {} graphs",
                self.limits.bfs_budget
            )));
        }
        if self.visited % 1024 == 0 {
            self.limits.check_deadline()?;
        }
        Ok(())
    }
}

/// Decides `h ≤ g` under `relation` by breadth-first search over
/// isomorphism classes: first every subgraph of `g` still large enough to
/// contain `h`, then the closure of those subgraphs under the relation's
/// second-phase step. Running out of budget is an error, never a "no".
pub fn contains(h: &Multigraph, g: &Multigraph, relation: Relation, limits: &Limits) -> Result<bool, Error> {
    let hv = h.vertex_count();
    let he = h.edge_copy_count();
    if hv > g.vertex_count() || he > g.edge_copy_count() {
        return Ok(false);
    }
    let mut closure = Closure { limits, visited: 0 };
    let target = closure.code(h)?;
    let big_enough = |x: &Multigraph| x.vertex_count() >= hv && x.edge_copy_count() >= he;
    // Dissolutions and wtp-contractions each drop one vertex and one edge copy.
    let h_excess = hv as i64 - he as i64;
    let phase_two_start = |x: &Multigraph| match relation {
        Relation::TopologicalMinor | Relation::WeakTopologicalMinor => {
            x.vertex_count() as i64 - x.edge_copy_count() as i64 == h_excess
        }
        Relation::Minor | Relation::Immersion => true,
    };
    let matches = |x: &Multigraph, code: &CanonicalCode| {
        x.vertex_count() == hv && x.edge_copy_count() == he && *code == target
    };

    let mut seen_one: HashSet<CanonicalCode> = HashSet::new();
    let mut seen_two: HashSet<CanonicalCode> = HashSet::new();
    let mut layer_one = vec![g.clone()];
    let mut layer_two: Vec<Multigraph> = Vec::new();
    let start = closure.code(g)?;
    closure.count()?;
    seen_one.insert(start);
    while !layer_one.is_empty() {
        let mut next = Vec::new();
        for x in layer_one {
            if phase_two_start(&x) {
                let code = closure.code(&x)?;
                if matches(&x, &code) {
                    return Ok(true);
                }
                if seen_two.insert(code) {
                    layer_two.push(x.clone());
                }
            }
            for step in deletion_steps(&x) {
                let y = apply_step(&x, step).expect("generated steps are legal");
                if !big_enough(&y) {
                    continue;
                }
                let code = closure.code(&y)?;
                if seen_one.insert(code) {
                    closure.count()?;
                    next.push(y);
                }
            }
        }
        layer_one = next;
    }

    while !layer_two.is_empty() {
        let mut next = Vec::new();
        for x in layer_two {
            let mut steps = second_phase_steps(&x, relation);
            if relation == Relation::Immersion {
                // lifting leaves exhausted vertices behind; they may go
                steps.extend(
                    (0..x.vertex_count())
                        .filter(|&v| x.vdeg(v) == 0)
                        .map(RewriteStep::DeleteVertex),
                );
            }
            for step in steps {
                let y = apply_step(&x, step).expect("generated steps are legal");
                if !big_enough(&y) {
                    continue;
                }
                let code = closure.code(&y)?;
                if matches(&y, &code) {
                    return Ok(true);
                }
                if seen_two.insert(code) {
                    closure.count()?;
                    next.push(y);
                }
            }
        }
        layer_two = next;
    }
    Ok(false)
}
