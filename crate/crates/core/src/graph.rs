//! Finite `I`-colored directed graphs and the Kashiwara navigation on them.
//!
//! An `i`-arrow `x -> y` means `f_i x = y` and `e_i y = x`. Vertices are dense
//! ids `0..n`. Per color the graph keeps a successor and a predecessor table,
//! so (G1) and (G2) hold for every arrow stored there. Arrows that would
//! break them can only enter through [`ColoredGraph::insert_edge_lenient`];
//! they are kept aside so [`ColoredGraph::is_good`] can report them.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cartan::{Color, Gcm, IndexSet, RootCount};
use crate::pbw::PbwElement;

pub type VertexId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {0} does not exist")]
    UnknownVertex(VertexId),
    #[error("color {0} is not in the index set")]
    UnknownColor(Color),
    #[error("duplicate {color}-arrow at {from} -> {to}")]
    DuplicateEdge { from: VertexId, to: VertexId, color: Color },
    #[error("the {color}-string through vertex {vertex} is a cycle")]
    NonTerminating { vertex: VertexId, color: Color },
    #[error("no {color}-step in direction {dir:?} from vertex {vertex}")]
    UndefinedStep {
        vertex: VertexId,
        color: Color,
        dir: Direction,
    },
    #[error("vertex {vertex} is unreachable from {root}")]
    Unreachable { root: VertexId, vertex: VertexId },
    #[error("vertex {root} has an incoming arrow and cannot be a maximum element")]
    NotAMaximum { root: VertexId },
    #[error("inconsistent weight at vertex {witness}: {first} vs {second}")]
    InconsistentWeight {
        witness: VertexId,
        first: RootCount,
        second: RootCount,
        first_path: Vec<(Color, VertexId)>,
        second_path: Vec<(Color, VertexId)>,
    },
}

/// Raising (`e`) or lowering (`f`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    E,
    F,
}

/// `eps` (up-string length) or `phi` (down-string length).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Statistic {
    Epsilon,
    Phi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub from: VertexId,
    pub to: VertexId,
    pub color: Color,
}

/// Which clause of the goodness definition failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GoodRule {
    /// two outgoing arrows of one color
    G1,
    /// two incoming arrows of one color
    G2,
    /// a monochromatic cycle
    G3,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuralViolation {
    pub rule: GoodRule,
    pub color: Color,
    pub witness: VertexId,
}

impl fmt::Display for StructuralViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.rule {
            GoodRule::G1 => "more than one outgoing arrow",
            GoodRule::G2 => "more than one incoming arrow",
            GoodRule::G3 => "infinite string",
        };
        write!(
            f,
            "{:?}: {what} of color {} at vertex {}",
            self.rule, self.color, self.witness
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredGraph {
    index: IndexSet,
    cartan: Option<Gcm>,
    succ: Vec<Vec<Option<VertexId>>>,
    pred: Vec<Vec<Option<VertexId>>>,
    stray: Vec<Edge>,
    labels: Vec<Option<PbwElement>>,
}

impl ColoredGraph {
    pub fn new(index: IndexSet) -> Self {
        let n = index.len();
        Self {
            index,
            cartan: None,
            succ: vec![Vec::new(); n],
            pred: vec![Vec::new(); n],
            stray: Vec::new(),
            labels: Vec::new(),
        }
    }

    pub fn with_vertices(index: IndexSet, n: usize) -> Self {
        let mut g = Self::new(index);
        for _ in 0..n {
            g.add_vertex();
        }
        g
    }

    pub fn index_set(&self) -> &IndexSet {
        &self.index
    }

    pub fn colors(&self) -> &[Color] {
        self.index.colors()
    }

    pub fn cartan(&self) -> Option<&Gcm> {
        self.cartan.as_ref()
    }

    pub fn set_cartan(&mut self, cartan: Option<Gcm>) {
        if let Some(a) = &cartan {
            assert_eq!(
                a.index_set(),
                &self.index,
                "Cartan matrix indexed by a different color set"
            );
        }
        self.cartan = cartan;
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.vertex_count()
    }

    pub fn add_vertex(&mut self) -> VertexId {
        self.push_vertex(None)
    }

    pub fn add_labeled_vertex(&mut self, label: PbwElement) -> VertexId {
        self.push_vertex(Some(label))
    }

    fn push_vertex(&mut self, label: Option<PbwElement>) -> VertexId {
        let id = self.labels.len();
        self.labels.push(label);
        for table in self.succ.iter_mut().chain(self.pred.iter_mut()) {
            table.push(None);
        }
        id
    }

    pub fn label(&self, x: VertexId) -> Option<&PbwElement> {
        self.labels.get(x).and_then(Option::as_ref)
    }

    pub fn set_label(&mut self, x: VertexId, label: Option<PbwElement>) {
        self.labels[x] = label;
    }

    fn slot(&self, color: Color) -> Result<usize, GraphError> {
        self.index.position(color).ok_or(GraphError::UnknownColor(color))
    }

    fn check_vertex(&self, x: VertexId) -> Result<(), GraphError> {
        if x < self.vertex_count() {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex(x))
        }
    }

    /// Adds `from -> to` of the given color, refusing anything that breaks (G1) or (G2).
    pub fn add_edge(&mut self, from: VertexId, to: VertexId, color: Color) -> Result<(), GraphError> {
        let s = self.slot(color)?;
        self.check_vertex(from)?;
        self.check_vertex(to)?;
        if self.succ[s][from].is_some() || self.pred[s][to].is_some() {
            return Err(GraphError::DuplicateEdge { from, to, color });
        }
        self.succ[s][from] = Some(to);
        self.pred[s][to] = Some(from);
        Ok(())
    }

    /// Like [`add_edge`](Self::add_edge), but an arrow breaking (G1)/(G2) is
    /// recorded for [`is_good`](Self::is_good) instead of being refused.
    pub fn insert_edge_lenient(&mut self, from: VertexId, to: VertexId, color: Color) -> Result<(), GraphError> {
        match self.add_edge(from, to, color) {
            Err(GraphError::DuplicateEdge { .. }) => {
                self.stray.push(Edge { from, to, color });
                Ok(())
            }
            other => other,
        }
    }

    /// Removes the `color`-arrow leaving `from`, returning its target.
    pub fn remove_edge(&mut self, from: VertexId, color: Color) -> Option<VertexId> {
        let s = self.slot(color).ok()?;
        let to = self.succ[s].get(from).copied().flatten()?;
        self.succ[s][from] = None;
        self.pred[s][to] = None;
        Some(to)
    }

    /// `f_i x`
    pub fn f(&self, color: Color, x: VertexId) -> Option<VertexId> {
        let s = self.index.position(color)?;
        self.succ[s].get(x).copied().flatten()
    }

    /// `e_i x`
    pub fn e(&self, color: Color, x: VertexId) -> Option<VertexId> {
        let s = self.index.position(color)?;
        self.pred[s].get(x).copied().flatten()
    }

    pub fn step(&self, dir: Direction, color: Color, x: VertexId) -> Option<VertexId> {
        match dir {
            Direction::E => self.e(color, x),
            Direction::F => self.f(color, x),
        }
    }

    /// Edges in deterministic order: by color, then source vertex. Stray
    /// arrows come last.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for (s, &color) in self.index.colors().iter().enumerate() {
            for (from, to) in self.succ[s].iter().enumerate() {
                if let Some(to) = *to {
                    out.push(Edge { from, to, color });
                }
            }
        }
        out.extend(self.stray.iter().copied());
        out
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().flatten().filter(|t| t.is_some()).count() + self.stray.len()
    }

    /// `(eps, phi)` at `x`, one entry per color in index-set order.
    pub fn string_stats(&self, x: VertexId) -> Result<(Vec<u32>, Vec<u32>), GraphError> {
        self.check_vertex(x)?;
        let n = self.vertex_count();
        let mut eps = Vec::with_capacity(self.index.len());
        let mut phi = Vec::with_capacity(self.index.len());
        for (s, &color) in self.index.colors().iter().enumerate() {
            for (table, out) in [(&self.pred[s], &mut eps), (&self.succ[s], &mut phi)] {
                let mut len = 0u32;
                let mut cur = x;
                while let Some(next) = table[cur] {
                    len += 1;
                    cur = next;
                    if len as usize > n {
                        return Err(GraphError::NonTerminating { vertex: x, color });
                    }
                }
                out.push(len);
            }
        }
        Ok((eps, phi))
    }

    /// String statistics for every vertex at once.
    pub fn string_table(&self) -> Result<StringTable, GraphError> {
        let n = self.vertex_count();
        let k = self.index.len();
        let mut eps = vec![vec![0u32; k]; n];
        let mut phi = vec![vec![0u32; k]; n];
        for (s, &color) in self.index.colors().iter().enumerate() {
            let mut seen = vec![false; n];
            for start in 0..n {
                if self.pred[s][start].is_some() {
                    continue;
                }
                let mut chain = vec![start];
                let mut cur = start;
                while let Some(next) = self.succ[s][cur] {
                    chain.push(next);
                    cur = next;
                }
                let len = chain.len() as u32;
                for (pos, &v) in chain.iter().enumerate() {
                    seen[v] = true;
                    eps[v][s] = pos as u32;
                    phi[v][s] = len - 1 - pos as u32;
                }
            }
            if let Some(vertex) = seen.iter().position(|&b| !b) {
                return Err(GraphError::NonTerminating { vertex, color });
            }
        }
        Ok(StringTable { eps, phi })
    }

    /// `Delta^g_beta(i, j, x) = beta_j(g_i x) - beta_j(x)`.
    pub fn delta(&self, dir: Direction, stat: Statistic, i: Color, j: Color, x: VertexId) -> Result<i64, GraphError> {
        self.check_vertex(x)?;
        let sj = self.slot(j)?;
        self.slot(i)?;
        let y = self.step(dir, i, x).ok_or(GraphError::UndefinedStep {
            vertex: x,
            color: i,
            dir,
        })?;
        let pick = |v: VertexId| -> Result<i64, GraphError> {
            let (eps, phi) = self.string_stats(v)?;
            Ok(i64::from(match stat {
                Statistic::Epsilon => eps[sj],
                Statistic::Phi => phi[sj],
            }))
        };
        Ok(pick(y)? - pick(x)?)
    }

    /// Every (G1), (G2), (G3) failure. Empty iff the graph is good.
    pub fn is_good(&self) -> Vec<StructuralViolation> {
        let mut out = Vec::new();
        for edge in &self.stray {
            let s = self.slot(edge.color).expect("stray arrows carry known colors");
            if self.succ[s][edge.from].is_some() {
                out.push(StructuralViolation {
                    rule: GoodRule::G1,
                    color: edge.color,
                    witness: edge.from,
                });
            }
            if self.pred[s][edge.to].is_some() {
                out.push(StructuralViolation {
                    rule: GoodRule::G2,
                    color: edge.color,
                    witness: edge.to,
                });
            }
        }
        let n = self.vertex_count();
        for (s, &color) in self.index.colors().iter().enumerate() {
            // vertices on a cycle are those never reached from a string start
            let mut on_path = vec![false; n];
            for start in 0..n {
                if self.pred[s][start].is_some() {
                    continue;
                }
                let mut cur = Some(start);
                while let Some(v) = cur {
                    on_path[v] = true;
                    cur = self.succ[s][v];
                }
            }
            let mut reported = vec![false; n];
            for v in 0..n {
                if on_path[v] || reported[v] {
                    continue;
                }
                out.push(StructuralViolation {
                    rule: GoodRule::G3,
                    color,
                    witness: v,
                });
                let mut cur = v;
                loop {
                    reported[cur] = true;
                    cur = self.succ[s][cur].expect("cycle vertices have successors");
                    if cur == v {
                        break;
                    }
                }
            }
        }
        out.sort_by_key(|v| (v.witness, v.color, v.rule as u8));
        out
    }

    fn is_source(&self, x: VertexId) -> bool {
        self.pred.iter().all(|table| table[x].is_none())
    }

    /// Vertices with no incoming arrow from which every vertex is reachable.
    pub fn maximum_elements(&self) -> Vec<VertexId> {
        let sources: Vec<VertexId> = self.vertices().filter(|&x| self.is_source(x)).collect();
        sources
            .into_iter()
            .filter(|&x0| self.reachable_from(x0).iter().all(|&r| r))
            .collect()
    }

    fn reachable_from(&self, x0: VertexId) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count()];
        let mut queue = VecDeque::from([x0]);
        seen[x0] = true;
        while let Some(v) = queue.pop_front() {
            for table in &self.succ {
                if let Some(w) = table[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        seen
    }

    /// Assigns `WT` (multiset of colors along any `f`-path from `x0`) and `DIST`
    /// (shortest path length) to every vertex, and checks that every arrow
    /// agrees with the assignment.
    pub fn wt_assign(&self, x0: VertexId) -> Result<WeightMap, GraphError> {
        self.check_vertex(x0)?;
        if !self.is_source(x0) {
            return Err(GraphError::NotAMaximum { root: x0 });
        }
        let n = self.vertex_count();
        let mut wt: Vec<Option<RootCount>> = vec![None; n];
        let mut dist = vec![usize::MAX; n];
        let mut via: Vec<Option<(Color, VertexId)>> = vec![None; n];
        wt[x0] = Some(RootCount::new());
        dist[x0] = 0;
        let mut queue = VecDeque::from([x0]);
        while let Some(v) = queue.pop_front() {
            for (s, &color) in self.index.colors().iter().enumerate() {
                if let Some(w) = self.succ[s][v] {
                    if wt[w].is_none() {
                        wt[w] = Some(wt[v].as_ref().unwrap().with_color(color));
                        dist[w] = dist[v] + 1;
                        via[w] = Some((color, v));
                        queue.push_back(w);
                    }
                }
            }
        }
        if let Some(vertex) = wt.iter().position(Option::is_none) {
            return Err(GraphError::Unreachable { root: x0, vertex });
        }
        let wt: Vec<RootCount> = wt.into_iter().map(Option::unwrap).collect();
        let tree_path = |mut v: VertexId| {
            let mut path = Vec::new();
            while let Some((c, p)) = via[v] {
                path.push((c, v));
                v = p;
            }
            path.reverse();
            path
        };
        for v in 0..n {
            for (s, &color) in self.index.colors().iter().enumerate() {
                let Some(w) = self.succ[s][v] else { continue };
                let through = wt[v].with_color(color);
                if through != wt[w] {
                    let mut second_path = tree_path(v);
                    second_path.push((color, w));
                    return Err(GraphError::InconsistentWeight {
                        witness: w,
                        first: wt[w].clone(),
                        second: through,
                        first_path: tree_path(w),
                        second_path,
                    });
                }
            }
        }
        Ok(WeightMap { root: x0, wt, dist })
    }

    /// The same graph with every arrow reversed.
    pub fn reverse(&self) -> ColoredGraph {
        let mut g = self.clone();
        std::mem::swap(&mut g.succ, &mut g.pred);
        for e in &mut g.stray {
            std::mem::swap(&mut e.from, &mut e.to);
        }
        g
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.vertex_count()`.
    pub fn disjoint_union(&self, other: &ColoredGraph) -> ColoredGraph {
        assert_eq!(self.index, other.index, "union of graphs over different color sets");
        let shift = self.vertex_count();
        let mut g = self.clone();
        for v in other.vertices() {
            g.push_vertex(other.labels[v]);
        }
        for e in other.edges() {
            g.insert_edge_lenient(e.from + shift, e.to + shift, e.color)
                .expect("vertices exist");
        }
        g
    }
}

/// `eps[v][s]` and `phi[v][s]` for vertex `v` and the color at position `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StringTable {
    pub eps: Vec<Vec<u32>>,
    pub phi: Vec<Vec<u32>>,
}

/// Output of [`ColoredGraph::wt_assign`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightMap {
    pub root: VertexId,
    pub wt: Vec<RootCount>,
    pub dist: Vec<usize>,
}

impl WeightMap {
    /// Vertices grouped by `DIST`, each layer in id order.
    pub fn layers(&self) -> Vec<Vec<VertexId>> {
        let depth = self.dist.iter().copied().max().map_or(0, |d| d + 1);
        let mut out = vec![Vec::new(); depth];
        for (v, &d) in self.dist.iter().enumerate() {
            out[d].push(v);
        }
        out
    }
}
