//! Layered synthesis of the crystal with a given highest weight, and the
//! layered isomorphism between two graphs that satisfy the axioms.
//!
//! Synthesis grows the graph one layer at a time. Layer `k` starts as one
//! candidate per `(parent, color)` with `phi_color(parent) > 0`. Candidates
//! are then merged whenever an `f`-side axiom, evaluated on layers `< k`,
//! forces two words to agree:
//!
//! | axiom | base `w` | merged words |
//! |---|---|---|
//! | (A+) | layer `k-2` | `f_j f_i w = f_i f_j w` |
//! | (B+) | layer `k-4` | `f_i f_j^2 f_i w = f_j f_i^2 f_j w` |
//! | (C+_1) from (S8), (S9) | layer `k-5` | `f_i f_j^2 f_i^2 w = f_j f_i^3 f_j w` |
//! | (D+) from (S7) | layer `k-7` | `f_j f_i^3 f_j^2 f_i w = f_i f_j^2 f_i^3 f_j w` |
//!
//! `eps` comes from the parents and `phi` from `phi_i = eps_i + <h_i, lambda - wt>`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::axioms::{check_all, Report};
use crate::cartan::{CartanError, Color, Gcm, PairingVector, RootCount};
use crate::graph::{ColoredGraph, GraphError, VertexId};
use crate::pbw::{generate, HighestWeightB2, PbwError};

pub const DEFAULT_MAX_VERTICES: usize = 1_000_000;
pub const DEFAULT_MAX_LAYERS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error("synthesis inconsistency: {0}")]
    SynthesisInconsistency(String),
    #[error("budget exceeded: more than {max_vertices} vertices or {max_layers} layers")]
    BudgetExceeded { max_vertices: usize, max_layers: usize },
    #[error("prerequisite failed: {0}")]
    PrereqFailed(String),
    #[error("not isomorphic at layer {layer}, vertex {vertex}: {reason}")]
    NotIsomorphic {
        layer: usize,
        vertex: VertexId,
        reason: String,
    },
    #[error(transparent)]
    Pbw(#[from] PbwError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SynthesisOptions {
    pub max_vertices: usize,
    pub max_layers: usize,
}

impl Default for SynthesisOptions {
    fn default() -> Self {
        Self {
            max_vertices: DEFAULT_MAX_VERTICES,
            max_layers: DEFAULT_MAX_LAYERS,
        }
    }
}

/// One `(parent, color)` slot of the layer under construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LayerCandidate {
    pub parent: VertexId,
    pub color: Color,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    /// The smaller index becomes the root.
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

struct Synth<'a> {
    a: &'a Gcm,
    phi0: &'a PairingVector,
    g: ColoredGraph,
    eps: Vec<Vec<i64>>,
    phi: Vec<Vec<i64>>,
    wt: Vec<RootCount>,
    layers: Vec<Vec<VertexId>>,
}

impl Synth<'_> {
    fn slot(&self, c: Color) -> usize {
        self.a.index_set().position(c).expect("colors come from the matrix")
    }

    fn f_word(&self, word: &[Color], w: VertexId) -> Option<VertexId> {
        word.iter().rev().try_fold(w, |v, &c| self.g.f(c, v))
    }

    fn df_phi(&self, i: Color, j: Color, w: VertexId) -> Option<i64> {
        let y = self.g.f(i, w)?;
        let sj = self.slot(j);
        Some(self.phi[y][sj] - self.phi[w][sj])
    }

    fn de_eps(&self, i: Color, j: Color, y: VertexId) -> Option<i64> {
        let p = self.g.e(i, y)?;
        let sj = self.slot(j);
        Some(self.eps[p][sj] - self.eps[y][sj])
    }

    fn both_f(&self, i: Color, j: Color, w: VertexId) -> bool {
        self.g.f(i, w).is_some() && self.g.f(j, w).is_some()
    }

    fn layer(&self, k: usize, back: usize) -> &[VertexId] {
        match k.checked_sub(back) {
            Some(l) => &self.layers[l],
            None => &[],
        }
    }

    /// Merge requests for layer `k`, each as two `(prefix word, last color)` pairs at a base vertex.
    fn triggers(&self, k: usize) -> Vec<Merge> {
        let colors = self.a.index_set().colors();
        let mut out = Vec::new();
        for (p, &i) in colors.iter().enumerate() {
            for &j in &colors[p + 1..] {
                for &w in self.layer(k, 2) {
                    if !self.both_f(i, j, w) {
                        continue;
                    }
                    if self.df_phi(i, j, w) == Some(0) || self.df_phi(j, i, w) == Some(0) {
                        out.push(Merge::new("A+", w, (vec![i], j), (vec![j], i)));
                    }
                }
                for &w in self.layer(k, 4) {
                    if self.both_f(i, j, w) && self.df_phi(i, j, w) == Some(1) && self.df_phi(j, i, w) == Some(1) {
                        out.push(Merge::new("B+", w, (vec![j, j, i], i), (vec![i, i, j], j)));
                    }
                }
            }
        }
        for (i, j) in self.a.b2_pairs() {
            let si = self.slot(i);
            for &w in self.layer(k, 5) {
                if !self.both_f(i, j, w) {
                    continue;
                }
                let d = (self.df_phi(i, j, w), self.df_phi(j, i, w));
                let s8 = d == (Some(1), Some(1)) && self.phi[w][si] >= 2;
                let s9 = d == (Some(0), Some(2))
                    && self
                        .f_word(&[i, i], w)
                        .is_some_and(|u| self.g.f(j, u).is_some() && self.df_phi(j, i, u) == Some(0));
                if s8 || s9 {
                    let tag = if s8 { "C+1 (S8)" } else { "C+1 (S9)" };
                    out.push(Merge::new(tag, w, (vec![j, j, i, i], i), (vec![i, i, i, j], j)));
                }
            }
            for &w in self.layer(k, 7) {
                if !self.both_f(i, j, w) || (self.df_phi(i, j, w), self.df_phi(j, i, w)) != (Some(1), Some(2)) {
                    continue;
                }
                let y = self.f_word(&[i, i, j], w);
                let yp = self.f_word(&[i, i, j, j, i], w);
                let (Some(y), Some(yp)) = (y, yp) else {
                    out.push(Merge::broken("D+ (S7)", w, "y or y' is missing"));
                    continue;
                };
                if self.de_eps(i, j, y) == Some(0) && self.de_eps(i, j, yp) == Some(1) {
                    out.push(Merge::new(
                        "D+ (S7)",
                        w,
                        (vec![i, i, i, j, j, i], j),
                        (vec![j, j, i, i, i, j], i),
                    ));
                }
            }
        }
        out
    }

    fn k1_phi(&self, eps: &[i64], wt: &RootCount) -> Vec<i64> {
        let u = self.a.pairing_of_root_count(wt);
        (0..eps.len()).map(|s| eps[s] + self.phi0.0[s] - u.0[s]).collect()
    }
}

struct Merge {
    tag: &'static str,
    base: VertexId,
    left: (Vec<Color>, Color),
    right: (Vec<Color>, Color),
    broken: Option<&'static str>,
}

impl Merge {
    fn new(tag: &'static str, base: VertexId, left: (Vec<Color>, Color), right: (Vec<Color>, Color)) -> Self {
        Self {
            tag,
            base,
            left,
            right,
            broken: None,
        }
    }

    fn broken(tag: &'static str, base: VertexId, why: &'static str) -> Self {
        Self {
            tag,
            base,
            left: (Vec::new(), 0),
            right: (Vec::new(), 0),
            broken: Some(why),
        }
    }
}

pub fn synthesize(a: &Gcm, phi0: &PairingVector) -> Result<ColoredGraph, BuildError> {
    synthesize_with(a, phi0, SynthesisOptions::default())
}

pub fn synthesize_with(a: &Gcm, phi0: &PairingVector, opts: SynthesisOptions) -> Result<ColoredGraph, BuildError> {
    a.check_supported()?;
    if phi0.len() != a.rank() {
        return Err(BuildError::InvalidInput(format!(
            "highest weight has {} entries, matrix has rank {}",
            phi0.len(),
            a.rank()
        )));
    }
    if !phi0.is_dominant() {
        return Err(BuildError::InvalidInput(format!(
            "highest weight {:?} is not dominant",
            phi0.0
        )));
    }
    let budget = BuildError::BudgetExceeded {
        max_vertices: opts.max_vertices,
        max_layers: opts.max_layers,
    };
    let colors = a.index_set().colors().to_vec();
    let n = colors.len();
    let mut g = ColoredGraph::new(a.index_set().clone());
    g.set_cartan(Some(a.clone()));
    let mut s = Synth {
        a,
        phi0,
        g,
        eps: Vec::new(),
        phi: Vec::new(),
        wt: Vec::new(),
        layers: Vec::new(),
    };
    let x0 = s.g.add_vertex();
    s.eps.push(vec![0; n]);
    s.phi.push(phi0.0.clone());
    s.wt.push(RootCount::new());
    s.layers.push(vec![x0]);

    for k in 1.. {
        if k > opts.max_layers {
            return Err(budget);
        }
        let mut cands = Vec::new();
        let mut index: HashMap<(VertexId, Color), usize> = HashMap::new();
        for &p in &s.layers[k - 1] {
            for (sc, &c) in colors.iter().enumerate() {
                if s.phi[p][sc] > 0 {
                    index.insert((p, c), cands.len());
                    cands.push(LayerCandidate { parent: p, color: c });
                }
            }
        }
        if cands.is_empty() {
            break;
        }
        let mut uf = UnionFind::new(cands.len());
        for m in s.triggers(k) {
            if let Some(why) = m.broken {
                return Err(BuildError::SynthesisInconsistency(format!(
                    "{} at vertex {} (layer {}): {why}",
                    m.tag, m.base, k
                )));
            }
            let resolve = |(prefix, last): &(Vec<Color>, Color)| -> Result<usize, BuildError> {
                let p = s.f_word(prefix, m.base).ok_or_else(|| {
                    BuildError::SynthesisInconsistency(format!(
                        "{} at vertex {}: prefix {prefix:?} is undefined",
                        m.tag, m.base
                    ))
                })?;
                index.get(&(p, *last)).copied().ok_or_else(|| {
                    BuildError::SynthesisInconsistency(format!(
                        "{} at vertex {}: f{last} is not available at vertex {p}",
                        m.tag, m.base
                    ))
                })
            };
            let (l, r) = (resolve(&m.left)?, resolve(&m.right)?);
            uf.union(l, r);
        }

        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut class_of_root: HashMap<usize, usize> = HashMap::new();
        for c in 0..cands.len() {
            let root = uf.find(c);
            let id = *class_of_root.entry(root).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[id].push(c);
        }
        if s.g.vertex_count() + classes.len() > opts.max_vertices {
            return Err(budget);
        }
        let mut layer = Vec::with_capacity(classes.len());
        for class in classes {
            let v = s.g.add_vertex();
            let first = cands[class[0]];
            let wt = s.wt[first.parent].with_color(first.color);
            let mut eps = vec![0i64; n];
            for &ci in &class {
                let LayerCandidate { parent, color } = cands[ci];
                let here = s.wt[parent].with_color(color);
                if here != wt {
                    return Err(BuildError::SynthesisInconsistency(format!(
                        "layer {k}: merged candidates carry weights {wt} and {here}"
                    )));
                }
                s.g.add_edge(parent, v, color).map_err(|_| {
                    BuildError::SynthesisInconsistency(format!(
                        "layer {k}: two {color}-arrows would enter the same vertex"
                    ))
                })?;
                let sc = s.slot(color);
                eps[sc] = s.eps[parent][sc] + 1;
            }
            let phi = s.k1_phi(&eps, &wt);
            if let Some(sc) = phi.iter().position(|&p| p < 0) {
                return Err(BuildError::SynthesisInconsistency(format!(
                    "layer {k}: phi_{} = {} is negative",
                    colors[sc], phi[sc]
                )));
            }
            s.eps.push(eps);
            s.phi.push(phi);
            s.wt.push(wt);
            layer.push(v);
        }
        s.layers.push(layer);
    }

    let table = s.g.string_table()?;
    for v in s.g.vertices() {
        let lengths: Vec<i64> = table.phi[v].iter().map(|&p| i64::from(p)).collect();
        if lengths != s.phi[v] {
            return Err(BuildError::SynthesisInconsistency(format!(
                "vertex {v}: down-string lengths {lengths:?} differ from the weight formula {:?}",
                s.phi[v]
            )));
        }
    }
    let report = check_all(&s.g, a, Some(phi0));
    if !report.pass {
        return Err(BuildError::SynthesisInconsistency(format!(
            "result fails the axioms: {}",
            summarize(&report)
        )));
    }
    Ok(s.g)
}

fn summarize(r: &Report) -> String {
    let shown: Vec<String> = r.violations.iter().take(3).map(ToString::to_string).collect();
    format!("{} violation(s), first: {}", r.violations.len(), shown.join("; "))
}

/// A color-preserving bijection between the vertices of two graphs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "Vec<[VertexId; 2]>", try_from = "Vec<[VertexId; 2]>")]
pub struct IsoMap {
    forward: Vec<VertexId>,
}

impl IsoMap {
    pub fn apply(&self, x: VertexId) -> VertexId {
        self.forward[x]
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.forward.iter().copied().enumerate()
    }

    pub fn is_identity(&self) -> bool {
        self.pairs().all(|(x, y)| x == y)
    }
}

impl From<IsoMap> for Vec<[VertexId; 2]> {
    fn from(m: IsoMap) -> Self {
        m.pairs().map(|(x, y)| [x, y]).collect()
    }
}

impl TryFrom<Vec<[VertexId; 2]>> for IsoMap {
    type Error = String;

    fn try_from(pairs: Vec<[VertexId; 2]>) -> Result<Self, String> {
        let n = pairs.len();
        let mut forward = vec![usize::MAX; n];
        let mut hit = vec![false; n];
        for [x, y] in pairs {
            if x >= n || y >= n || forward[x] != usize::MAX || hit[y] {
                return Err(format!("[{x}, {y}] breaks bijectivity"));
            }
            forward[x] = y;
            hit[y] = true;
        }
        Ok(Self { forward })
    }
}

/// The unique isomorphism `X -> Y`, built layer by layer from the maxima.
pub fn build_isomorphism(x: &ColoredGraph, y: &ColoredGraph) -> Result<IsoMap, BuildError> {
    let a = match (x.cartan(), y.cartan()) {
        (Some(a), Some(b)) if a == b => a,
        (Some(_), Some(_)) => {
            return Err(BuildError::PrereqFailed(
                "the graphs carry different Cartan matrices".into(),
            ))
        }
        _ => return Err(BuildError::PrereqFailed("both graphs need a Cartan matrix".into())),
    };
    for (name, g) in [("first", x), ("second", y)] {
        let r = check_all(g, a, None);
        if !r.pass {
            return Err(BuildError::PrereqFailed(format!("{name} graph: {}", summarize(&r))));
        }
    }
    let (x0, y0) = (x.maximum_elements()[0], y.maximum_elements()[0]);
    let tx = x.string_table()?;
    let ty = y.string_table()?;
    if tx.phi[x0] != ty.phi[y0] {
        return Err(BuildError::PrereqFailed(format!(
            "phi at the maxima differ: {:?} vs {:?}",
            tx.phi[x0], ty.phi[y0]
        )));
    }
    let lx = x.wt_assign(x0)?.layers();
    let wy = y.wt_assign(y0)?;
    let ly = wy.layers();

    let mut h: Vec<Option<VertexId>> = vec![None; x.vertex_count()];
    let mut used = vec![false; y.vertex_count()];
    h[x0] = Some(y0);
    used[y0] = true;
    for (k, layer) in lx.iter().enumerate() {
        let fail = |vertex, reason: String| BuildError::NotIsomorphic {
            layer: k,
            vertex,
            reason,
        };
        if ly.get(k).map_or(0, Vec::len) != layer.len() {
            return Err(fail(
                layer[0],
                format!(
                    "layer sizes differ: {} vs {}",
                    layer.len(),
                    ly.get(k).map_or(0, Vec::len)
                ),
            ));
        }
        if k == 0 {
            continue;
        }
        for &v in layer {
            let mut image = None;
            for &c in x.colors() {
                let Some(p) = x.e(c, v) else { continue };
                let hp = h[p].expect("parents lie in the previous layer");
                let Some(t) = y.f(c, hp) else {
                    return Err(fail(
                        v,
                        format!("f{c} is undefined at the image {hp} of the {c}-parent"),
                    ));
                };
                match image {
                    None => image = Some(t),
                    Some(u) if u != t => {
                        return Err(fail(v, format!("parent colors disagree: {u} vs {t}")));
                    }
                    Some(_) => {}
                }
            }
            let t = image.expect("every vertex below the maximum has a parent");
            if used[t] || wy.dist[t] != k {
                return Err(fail(v, format!("image {t} is already used or lies in another layer")));
            }
            if tx.eps[v] != ty.eps[t] || tx.phi[v] != ty.phi[t] {
                return Err(fail(v, format!("string lengths differ at image {t}")));
            }
            used[t] = true;
            h[v] = Some(t);
        }
    }
    let forward: Vec<VertexId> = h.into_iter().map(|t| t.expect("every vertex is reached")).collect();
    if x.edge_count() != y.edge_count() {
        return Err(BuildError::NotIsomorphic {
            layer: lx.len(),
            vertex: x0,
            reason: format!("edge counts differ: {} vs {}", x.edge_count(), y.edge_count()),
        });
    }
    for e in x.edges() {
        if y.f(e.color, forward[e.from]) != Some(forward[e.to]) {
            return Err(BuildError::NotIsomorphic {
                layer: wy.dist[forward[e.to]],
                vertex: e.to,
                reason: format!("{}-arrow {} -> {} is not preserved", e.color, e.from, e.to),
            });
        }
    }
    Ok(IsoMap { forward })
}

/// Reversing all arrows of `B(lambda)` gives a graph isomorphic to it, and
/// the isomorphism swaps `eps` and `phi` and is an involution.
pub fn verify_reversal_involution(lam: HighestWeightB2) -> Result<bool, BuildError> {
    let g = generate(lam)?;
    let r = g.reverse();
    if !check_all(&r, &Gcm::b2(), Some(&lam.pairing())).pass {
        return Ok(false);
    }
    let w = build_isomorphism(&g, &r)?;
    let t = g.string_table()?;
    for b in g.vertices() {
        let wb = w.apply(b);
        if t.eps[b] != t.phi[wb] || t.phi[b] != t.eps[wb] || w.apply(wb) != b {
            return Ok(false);
        }
        for &c in g.colors() {
            if g.e(c, b).map(|p| w.apply(p)) != g.f(c, wb) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::IndexSet;

    fn pv(v: &[i64]) -> PairingVector {
        PairingVector(v.to_vec())
    }

    #[test]
    fn synthesize_examples() {
        let b2 = Gcm::b2();
        assert_eq!(synthesize(&b2, &pv(&[0, 0])).unwrap().vertex_count(), 1);
        for (l, n) in [([1, 1], 16), ([3, 0], 20), ([0, 2], 14)] {
            let g = synthesize(&b2, &pv(&l)).unwrap();
            assert_eq!(g.vertex_count(), n, "{l:?}");
        }
    }

    #[test]
    fn synthesize_other_types() {
        assert_eq!(synthesize(&Gcm::a2(), &pv(&[1, 1])).unwrap().vertex_count(), 8);
        assert_eq!(synthesize(&Gcm::a2(), &pv(&[2, 0])).unwrap().vertex_count(), 6);
        assert_eq!(synthesize(&Gcm::a1_a1(), &pv(&[2, 3])).unwrap().vertex_count(), 12);
        assert_eq!(synthesize(&Gcm::b3(), &pv(&[1, 0, 0])).unwrap().vertex_count(), 7);
        assert_eq!(synthesize(&Gcm::c3(), &pv(&[1, 0, 0])).unwrap().vertex_count(), 6);
        let bt = Gcm::from_rows(vec![vec![2, -1], vec![-2, 2]]).unwrap();
        assert_eq!(synthesize(&bt, &pv(&[1, 1])).unwrap().vertex_count(), 16);
    }

    #[test]
    fn synthesize_rejects_bad_input() {
        let b2 = Gcm::b2();
        assert!(matches!(synthesize(&b2, &pv(&[1])), Err(BuildError::InvalidInput(_))));
        assert!(matches!(
            synthesize(&b2, &pv(&[-1, 0])),
            Err(BuildError::InvalidInput(_))
        ));
        let g2 = Gcm::from_rows(vec![vec![2, -3], vec![-1, 2]]);
        assert!(g2.is_err() || synthesize(&g2.unwrap(), &pv(&[1, 0])).is_err());
        let small = SynthesisOptions {
            max_vertices: 10,
            max_layers: 100,
        };
        assert!(matches!(
            synthesize_with(&b2, &pv(&[1, 1]), small),
            Err(BuildError::BudgetExceeded { .. })
        ));
        let shallow = SynthesisOptions {
            max_vertices: 100,
            max_layers: 3,
        };
        assert!(matches!(
            synthesize_with(&b2, &pv(&[1, 1]), shallow),
            Err(BuildError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn synthesize_is_deterministic_and_graded() {
        let b2 = Gcm::b2();
        let g = synthesize(&b2, &pv(&[2, 1])).unwrap();
        assert_eq!(g, synthesize(&b2, &pv(&[2, 1])).unwrap());
        let w = g.wt_assign(0).unwrap();
        for e in g.edges() {
            assert_eq!(w.dist[e.to], w.dist[e.from] + 1);
        }
    }

    #[test]
    fn isomorphism_examples() {
        let g = generate(HighestWeightB2::new(1, 1)).unwrap();
        assert!(build_isomorphism(&g, &g).unwrap().is_identity());
        let s = synthesize(&Gcm::b2(), &pv(&[1, 1])).unwrap();
        let m = build_isomorphism(&g, &s).unwrap();
        assert_eq!(m.len(), 16);
        let other = generate(HighestWeightB2::new(3, 0)).unwrap();
        assert!(matches!(
            build_isomorphism(&g, &other),
            Err(BuildError::PrereqFailed(_))
        ));
        let mut bare = g.clone();
        bare.set_cartan(None);
        assert!(matches!(build_isomorphism(&g, &bare), Err(BuildError::PrereqFailed(_))));
    }

    #[test]
    fn isomorphism_preserves_weights() {
        let g = generate(HighestWeightB2::new(2, 2)).unwrap();
        let s = synthesize(&Gcm::b2(), &pv(&[2, 2])).unwrap();
        let m = build_isomorphism(&g, &s).unwrap();
        let (wg, ws) = (g.wt_assign(0).unwrap(), s.wt_assign(0).unwrap());
        for (x, y) in m.pairs() {
            assert_eq!(wg.wt[x], ws.wt[y]);
            assert_eq!(g.string_stats(x).unwrap(), s.string_stats(y).unwrap());
        }
    }

    #[test]
    fn iso_map_json() {
        let g = generate(HighestWeightB2::new(1, 0)).unwrap();
        let m = build_isomorphism(&g, &g).unwrap();
        let j = serde_json::to_string(&m).unwrap();
        assert_eq!(j, "[[0,0],[1,1],[2,2],[3,3]]");
        let back: IsoMap = serde_json::from_str(&j).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<IsoMap>("[[0,1],[1,1]]").is_err());
    }

    #[test]
    fn reversal_involution_examples() {
        for (l1, l2) in [(0, 0), (1, 1), (3, 2)] {
            assert!(
                verify_reversal_involution(HighestWeightB2::new(l1, l2)).unwrap(),
                "({l1},{l2})"
            );
        }
    }

    #[test]
    fn disconnected_input_is_rejected() {
        let mut g = ColoredGraph::with_vertices(IndexSet::standard(2), 2);
        g.set_cartan(Some(Gcm::b2()));
        assert!(matches!(build_isomorphism(&g, &g), Err(BuildError::PrereqFailed(_))));
    }
}
