//! Local axiom checking.
//!
//! Stembridge's axioms (S1)-(S5) apply to every pair of colors. The `B_2`
//! axioms (S6)-(S9), their variants and the luck consequence apply to the
//! ordered pairs `(i, j)` with `a_ij = -2`, `a_ji = -1`. A transposed pair is
//! visited through its oriented twin.
//!
//! An existence claim such as `z = e_i e_j^2 e_i x = e_j e_i^2 e_j x` needs
//! every intermediate step of both words to be defined and the two endpoints
//! to agree. `phi` is always the literal down-string length.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cartan::{Color, Gcm, PairingVector};
use crate::graph::{ColoredGraph, Direction, GoodRule, GraphError, Statistic, StringTable, VertexId};

/// Default search depth of [`check_confluence`].
pub const DEFAULT_CONFLUENCE_DEPTH: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum AxiomId {
    S1,
    S2,
    S3,
    S4,
    S5,
    S6,
    S7,
    S8,
    S9,
    AMinus,
    APlus,
    BMinus,
    BPlus,
    DMinus,
    DPlus,
    C1Plus,
    P1Minus,
    Q1Minus,
    RMinus,
    S8Prime,
    PMinus,
    QMinus,
    Confluence,
    /// no unique maximum element
    Maximum,
    /// `phi` at the maximum differs from the expected vector
    HighestWeight,
    /// the matrix has an unsupported pair or does not match the graph
    UnsupportedPair,
}

impl AxiomId {
    /// The serialized tag, e.g. `"C1_PLUS"`.
    pub fn name(self) -> &'static str {
        use AxiomId::*;
        match self {
            S1 => "S1",
            S2 => "S2",
            S3 => "S3",
            S4 => "S4",
            S5 => "S5",
            S6 => "S6",
            S7 => "S7",
            S8 => "S8",
            S9 => "S9",
            AMinus => "A_MINUS",
            APlus => "A_PLUS",
            BMinus => "B_MINUS",
            BPlus => "B_PLUS",
            DMinus => "D_MINUS",
            DPlus => "D_PLUS",
            C1Plus => "C1_PLUS",
            P1Minus => "P1_MINUS",
            Q1Minus => "Q1_MINUS",
            RMinus => "R_MINUS",
            S8Prime => "S8_PRIME",
            PMinus => "P_MINUS",
            QMinus => "Q_MINUS",
            Confluence => "CONFLUENCE",
            Maximum => "MAXIMUM",
            HighestWeight => "HIGHEST_WEIGHT",
            UnsupportedPair => "UNSUPPORTED_PAIR",
        }
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: AxiomId,
    /// `None` for graph-wide failures
    pub pair: Option<[Color; 2]>,
    /// `None` for graph-wide failures
    pub witness: Option<VertexId>,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<Vec<(Color, VertexId)>>,
}

impl Violation {
    fn at(axiom: AxiomId, (i, j): (Color, Color), witness: VertexId, detail: impl Into<String>) -> Self {
        Self {
            axiom,
            pair: Some([i, j]),
            witness: Some(witness),
            detail: detail.into(),
            path: None,
        }
    }

    fn global(axiom: AxiomId, detail: impl Into<String>) -> Self {
        Self {
            axiom,
            pair: None,
            witness: None,
            detail: detail.into(),
            path: None,
        }
    }

    fn sort_key(&self) -> (Option<VertexId>, AxiomId, Option<[Color; 2]>, &str) {
        (self.witness, self.axiom, self.pair, &self.detail)
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.axiom)?;
        if let Some([i, j]) = self.pair {
            write!(f, " ({i},{j})")?;
        }
        if let Some(w) = self.witness {
            write!(f, " at {w}")?;
        }
        write!(f, ": {}", self.detail)
    }
}

fn sorted(mut v: Vec<Violation>) -> Vec<Violation> {
    v.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    v
}

/// Result of [`check_all`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub pass: bool,
    pub violations: Vec<Violation>,
}

impl Report {
    fn from_violations(violations: Vec<Violation>) -> Self {
        let violations = sorted(violations);
        Self {
            pass: violations.is_empty(),
            violations,
        }
    }

    pub fn has(&self, axiom: AxiomId) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }
}

/// An ordered pair such as `Delta(x)` or `Delta'(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DeltaPair(pub i64, pub i64);

impl fmt::Display for DeltaPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.0, self.1)
    }
}

/// Read-only view of a graph with all string lengths precomputed.
pub struct LocalView<'g> {
    g: &'g ColoredGraph,
    table: StringTable,
}

impl<'g> LocalView<'g> {
    /// Fails on a graph with an infinite string.
    pub fn new(g: &'g ColoredGraph) -> Result<Self, GraphError> {
        Ok(Self {
            g,
            table: g.string_table()?,
        })
    }

    pub fn graph(&self) -> &'g ColoredGraph {
        self.g
    }

    fn slot(&self, c: Color) -> usize {
        self.g.index_set().position(c).expect("color belongs to the graph")
    }

    pub fn eps(&self, c: Color, x: VertexId) -> i64 {
        i64::from(self.table.eps[x][self.slot(c)])
    }

    pub fn phi(&self, c: Color, x: VertexId) -> i64 {
        i64::from(self.table.phi[x][self.slot(c)])
    }

    pub fn stat(&self, stat: Statistic, c: Color, x: VertexId) -> i64 {
        match stat {
            Statistic::Epsilon => self.eps(c, x),
            Statistic::Phi => self.phi(c, x),
        }
    }

    pub fn step(&self, dir: Direction, c: Color, x: VertexId) -> Option<VertexId> {
        self.g.step(dir, c, x)
    }

    pub fn e(&self, c: Color, x: VertexId) -> Option<VertexId> {
        self.g.e(c, x)
    }

    pub fn f(&self, c: Color, x: VertexId) -> Option<VertexId> {
        self.g.f(c, x)
    }

    /// `Delta^g_beta(i, j, x)`, or `None` when `g_i x` is undefined.
    pub fn delta(&self, dir: Direction, stat: Statistic, i: Color, j: Color, x: VertexId) -> Option<i64> {
        let y = self.step(dir, i, x)?;
        Some(self.stat(stat, j, y) - self.stat(stat, j, x))
    }

    pub fn de_eps(&self, i: Color, j: Color, x: VertexId) -> Option<i64> {
        self.delta(Direction::E, Statistic::Epsilon, i, j, x)
    }

    pub fn df_phi(&self, i: Color, j: Color, x: VertexId) -> Option<i64> {
        self.delta(Direction::F, Statistic::Phi, i, j, x)
    }

    /// `Delta(x) = (Delta^e_eps(i,j,x), Delta^e_eps(j,i,x))`.
    pub fn delta_e(&self, i: Color, j: Color, x: VertexId) -> Option<DeltaPair> {
        Some(DeltaPair(self.de_eps(i, j, x)?, self.de_eps(j, i, x)?))
    }

    /// `Delta'(x) = (Delta^f_phi(i,j,x), Delta^f_phi(j,i,x))`.
    pub fn delta_f(&self, i: Color, j: Color, x: VertexId) -> Option<DeltaPair> {
        Some(DeltaPair(self.df_phi(i, j, x)?, self.df_phi(j, i, x)?))
    }

    /// Applies a word written left to right, rightmost operator first.
    pub fn word(&self, dir: Direction, word: &[Color], x: VertexId) -> Option<VertexId> {
        word.iter().rev().try_fold(x, |v, &c| self.step(dir, c, v))
    }

    /// The common endpoint of all words, or a description of the failure.
    pub fn confluence(&self, dir: Direction, words: &[&[Color]], x: VertexId) -> Result<VertexId, String> {
        let mut end = None;
        for w in words {
            let Some(v) = self.word(dir, w, x) else {
                return Err(format!("{} x is undefined", render(dir, w)));
            };
            match end {
                None => end = Some(v),
                Some(u) if u != v => {
                    return Err(format!(
                        "{} x = {u} but {} x = {v}",
                        render(dir, words[0]),
                        render(dir, w)
                    ))
                }
                Some(_) => {}
            }
        }
        Ok(end.expect("at least one word"))
    }
}

/// `[1, 2, 2, 1]` in direction `E` renders as `e1 e2^2 e1`.
pub fn render(dir: Direction, word: &[Color]) -> String {
    let op = match dir {
        Direction::E => 'e',
        Direction::F => 'f',
    };
    let mut parts: Vec<String> = Vec::new();
    let mut k = 0;
    while k < word.len() {
        let c = word[k];
        let run = word[k..].iter().take_while(|&&d| d == c).count();
        parts.push(if run == 1 {
            format!("{op}{c}")
        } else {
            format!("{op}{c}^{run}")
        });
        k += run;
    }
    parts.join(" ")
}

fn view_or_s1(g: &ColoredGraph) -> Result<LocalView<'_>, Vec<Violation>> {
    LocalView::new(g).map_err(|_| s1_violations(g))
}

fn s1_violations(g: &ColoredGraph) -> Vec<Violation> {
    g.is_good()
        .into_iter()
        .map(|s| {
            let rule = match s.rule {
                GoodRule::G1 => "G1",
                GoodRule::G2 => "G2",
                GoodRule::G3 => "G3",
            };
            Violation::at(AxiomId::S1, (s.color, s.color), s.witness, format!("{rule}: {s}"))
        })
        .collect()
}

fn unordered_pairs(colors: &[Color]) -> Vec<(Color, Color)> {
    let mut out = Vec::new();
    for (p, &i) in colors.iter().enumerate() {
        for &j in &colors[p + 1..] {
            out.push((i, j));
        }
    }
    out
}

/// Which side (S2)/(S3) are evaluated on, and whether `j = i` is included
/// in (S2).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct S2S3Options {
    /// `E`: (S2), (S3) as stated; `F`: the `f`-side forms (S2_b), (S3').
    pub side: Direction,
    /// Include `j = i` in (S2), which then reads `2 = a_ii`.
    pub include_diagonal: bool,
}

impl Default for S2S3Options {
    fn default() -> Self {
        Self {
            side: Direction::E,
            include_diagonal: false,
        }
    }
}

pub fn check_s2_s3(g: &ColoredGraph, a: &Gcm) -> Vec<Violation> {
    check_s2_s3_with(g, a, S2S3Options::default())
}

pub fn check_s2_s3_with(g: &ColoredGraph, a: &Gcm, opts: S2S3Options) -> Vec<Violation> {
    let v = match view_or_s1(g) {
        Ok(v) => v,
        Err(s1) => return s1,
    };
    let colors = g.colors();
    let mut out = Vec::new();
    for x in g.vertices() {
        for (p, &i) in colors.iter().enumerate() {
            if v.step(opts.side, i, x).is_none() {
                continue;
            }
            for (q, &j) in colors.iter().enumerate() {
                if p == q && !opts.include_diagonal {
                    continue;
                }
                let a_ji = a.at(q, p);
                let d_eps = v.delta(opts.side, Statistic::Epsilon, i, j, x).unwrap();
                let d_phi = v.delta(opts.side, Statistic::Phi, i, j, x).unwrap();
                let (lhs, name) = match opts.side {
                    Direction::E => (d_phi - d_eps, "D^e_phi - D^e_eps"),
                    Direction::F => (d_eps - d_phi, "D^f_eps - D^f_phi"),
                };
                if lhs != a_ji {
                    out.push(Violation::at(
                        AxiomId::S2,
                        (i, j),
                        x,
                        format!("{name} = {lhs}, required a_{j}{i} = {a_ji}"),
                    ));
                }
                if p == q {
                    continue;
                }
                let ok = match opts.side {
                    Direction::E => d_phi <= 0 && 0 <= d_eps,
                    Direction::F => d_eps <= 0 && 0 <= d_phi,
                };
                if !ok {
                    out.push(Violation::at(
                        AxiomId::S3,
                        (i, j),
                        x,
                        format!("D_eps = {d_eps}, D_phi = {d_phi} have the wrong signs"),
                    ));
                }
            }
        }
    }
    sorted(out)
}

pub fn check_s4_s5(g: &ColoredGraph, _a: &Gcm) -> Vec<Violation> {
    let v = match view_or_s1(g) {
        Ok(v) => v,
        Err(s1) => return s1,
    };
    let mut out = Vec::new();
    for x in g.vertices() {
        for (i, j) in unordered_pairs(g.colors()) {
            for dir in [Direction::E, Direction::F] {
                if v.step(dir, i, x).is_some() && v.step(dir, j, x).is_some() {
                    out.extend(a_condition(&v, dir, i, j, x));
                    out.extend(a_condition(&v, dir, j, i, x));
                    out.extend(b_condition(&v, dir, i, j, x));
                }
            }
        }
    }
    sorted(out)
}

fn opposite(dir: Direction) -> Direction {
    match dir {
        Direction::E => Direction::F,
        Direction::F => Direction::E,
    }
}

fn side_stat(dir: Direction) -> Statistic {
    match dir {
        Direction::E => Statistic::Epsilon,
        Direction::F => Statistic::Phi,
    }
}

/// (A^-_{k,l}) for `E`, (A^+_{k,l}) for `F`.
fn a_condition(v: &LocalView, dir: Direction, k: Color, l: Color, x: VertexId) -> Option<Violation> {
    let (axiom, outer) = match dir {
        Direction::E => (AxiomId::AMinus, AxiomId::S4),
        Direction::F => (AxiomId::APlus, AxiomId::S5),
    };
    if v.delta(dir, side_stat(dir), k, l, x)? != 0 {
        return None;
    }
    let fail = |msg: String| Some(Violation::at(axiom, (k, l), x, format!("{outer}: {msg}")));
    match v.confluence(dir, &[&[l, k], &[k, l]], x) {
        Err(msg) => fail(msg),
        Ok(z) => {
            let back = opposite(dir);
            match v.delta(back, side_stat(back), l, k, z) {
                Some(0) => None,
                d => fail(format!("closing condition at z = {z} is {d:?}, required 0")),
            }
        }
    }
}

/// (B^-) for `E`, (B^+) for `F`.
fn b_condition(v: &LocalView, dir: Direction, i: Color, j: Color, x: VertexId) -> Option<Violation> {
    let (axiom, outer) = match dir {
        Direction::E => (AxiomId::BMinus, AxiomId::S4),
        Direction::F => (AxiomId::BPlus, AxiomId::S5),
    };
    let st = side_stat(dir);
    let d = DeltaPair(v.delta(dir, st, i, j, x)?, v.delta(dir, st, j, i, x)?);
    if d != DeltaPair(1, 1) {
        return None;
    }
    let fail = |msg: String| Some(Violation::at(axiom, (i, j), x, format!("{outer}: {msg}")));
    match v.confluence(dir, &[&[i, j, j, i], &[j, i, i, j]], x) {
        Err(msg) => fail(msg),
        Ok(z) => {
            let back = opposite(dir);
            let bs = side_stat(back);
            let dz = (v.delta(back, bs, i, j, z), v.delta(back, bs, j, i, z));
            if dz == (Some(1), Some(1)) {
                None
            } else {
                fail(format!("closing pair at z = {z} is {dz:?}, required (1,1)"))
            }
        }
    }
}

/// Data produced by the common prefix of (D^-) at a vertex with `Delta(x) = (1,2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DMinusData {
    pub y: VertexId,
    pub y_prime: VertexId,
    /// `(Delta^f_phi(i,j,y), Delta^f_phi(i,j,y'))`
    pub delta2: DeltaPair,
}

impl LocalView<'_> {
    /// Whether (S6) applies at `x` for the oriented pair `(i, j)`.
    pub fn s6_hypothesis(&self, i: Color, j: Color, x: VertexId) -> bool {
        self.e(i, x).is_some() && self.e(j, x).is_some() && self.delta_e(i, j, x) == Some(DeltaPair(1, 2))
    }

    /// `y = e_i^2 e_j x`, `y' = e_i^2 e_j^2 e_i x` and the pair `Delta''`.
    pub fn d_minus_data(&self, i: Color, j: Color, x: VertexId) -> Result<DMinusData, String> {
        let y = self
            .word(Direction::E, &[i, i, j], x)
            .ok_or_else(|| "y = e_i^2 e_j x is undefined".to_string())?;
        let y_prime = self
            .word(Direction::E, &[i, i, j, j, i], x)
            .ok_or_else(|| "y' = e_i^2 e_j^2 e_i x is undefined".to_string())?;
        let delta2 = DeltaPair(
            self.df_phi(i, j, y).expect("f_i y = e_i e_j x"),
            self.df_phi(i, j, y_prime).expect("f_i y' = e_i e_j^2 e_i x"),
        );
        Ok(DMinusData { y, y_prime, delta2 })
    }

    /// The (Q^-_1) witness `z = e_j e_i^3 e_j^2 e_i x = e_i e_j^2 e_i^3 e_j x`.
    pub fn q1_minus_z(&self, i: Color, j: Color, x: VertexId) -> Result<VertexId, String> {
        self.confluence(Direction::E, &[&[j, i, i, i, j, j, i], &[i, j, j, i, i, i, j]], x)
    }

    /// Whether (S7) applies at `x`.
    pub fn s7_hypothesis(&self, i: Color, j: Color, x: VertexId) -> bool {
        self.f(i, x).is_some() && self.f(j, x).is_some() && self.delta_f(i, j, x) == Some(DeltaPair(1, 2))
    }

    /// Whether (S8) applies at `x`.
    pub fn s8_hypothesis(&self, i: Color, j: Color, x: VertexId) -> bool {
        self.f(i, x).is_some()
            && self.f(j, x).is_some()
            && self.delta_f(i, j, x) == Some(DeltaPair(1, 1))
            && self.phi(i, x) >= 2
    }

    /// Whether (S9) applies at `x`.
    pub fn s9_hypothesis(&self, i: Color, j: Color, x: VertexId) -> bool {
        if !(self.f(i, x).is_some() && self.f(j, x).is_some() && self.delta_f(i, j, x) == Some(DeltaPair(0, 2))) {
            return false;
        }
        let Some(w) = self.word(Direction::F, &[i, i], x) else {
            return false;
        };
        self.f(j, w).is_some() && self.df_phi(j, i, w) == Some(0)
    }

    /// `(y, y')` of (D^+) when both exist and `(Delta^e_eps(i,j,y), Delta^e_eps(i,j,y')) = (0,1)`.
    pub fn d_plus_trigger(&self, i: Color, j: Color, x: VertexId) -> Option<(VertexId, VertexId)> {
        let y = self.word(Direction::F, &[i, i, j], x)?;
        let yp = self.word(Direction::F, &[i, i, j, j, i], x)?;
        (self.de_eps(i, j, y) == Some(0) && self.de_eps(i, j, yp) == Some(1)).then_some((y, yp))
    }
}

fn c1_plus(v: &LocalView, i: Color, j: Color, x: VertexId) -> Result<VertexId, String> {
    v.confluence(Direction::F, &[&[i, j, j, i, i], &[j, i, i, i, j]], x)
}

/// (S6)-(S9) on every oriented `B_2` pair of `a`.
pub fn check_s6_s9(g: &ColoredGraph, a: &Gcm) -> Vec<Violation> {
    let v = match view_or_s1(g) {
        Ok(v) => v,
        Err(s1) => return s1,
    };
    let mut out = Vec::new();
    for (i, j) in a.b2_pairs() {
        for x in g.vertices() {
            check_s6_at(&v, i, j, x, &mut out);
            check_s7_s9_at(&v, i, j, x, &mut out);
        }
    }
    sorted(out)
}

fn check_s6_at(v: &LocalView, i: Color, j: Color, x: VertexId, out: &mut Vec<Violation>) {
    if !v.s6_hypothesis(i, j, x) {
        return;
    }
    let pair = (i, j);
    let d = match v.d_minus_data(i, j, x) {
        Ok(d) => d,
        Err(msg) => {
            out.push(Violation::at(AxiomId::DMinus, pair, x, format!("S6: {msg}")));
            return;
        }
    };
    let (y, yp) = (d.y, d.y_prime);
    match d.delta2 {
        DeltaPair(1, 1) => {
            let fy = v.f(j, yp);
            if fy.is_none() || fy != v.e(i, y) {
                out.push(Violation::at(
                    AxiomId::P1Minus,
                    pair,
                    x,
                    format!("f_j y' = {fy:?}, e_i y = {:?}", v.e(i, y)),
                ));
            } else if v.df_phi(j, i, yp) != Some(1) {
                out.push(Violation::at(
                    AxiomId::P1Minus,
                    pair,
                    x,
                    format!("D^f_phi(j,i,y') = {:?}, required 1", v.df_phi(j, i, yp)),
                ));
            }
        }
        DeltaPair(0, 1) => match v.q1_minus_z(i, j, x) {
            Err(msg) => out.push(Violation::at(AxiomId::Q1Minus, pair, x, msg)),
            Ok(z) => {
                let dz = v.delta_f(i, j, z);
                if dz != Some(DeltaPair(1, 2)) {
                    out.push(Violation::at(
                        AxiomId::Q1Minus,
                        pair,
                        x,
                        format!("Delta'(z) = {dz:?} at z = {z}, required (1,2)"),
                    ));
                }
            }
        },
        DeltaPair(0, 0) => {
            let fy = v.f(j, yp);
            if fy.is_none() || fy != v.e(i, y) {
                out.push(Violation::at(
                    AxiomId::RMinus,
                    pair,
                    x,
                    format!("f_j y' = {fy:?}, e_i y = {:?}", v.e(i, y)),
                ));
            } else if v.df_phi(j, i, yp) != Some(2) {
                out.push(Violation::at(
                    AxiomId::RMinus,
                    pair,
                    x,
                    format!("D^f_phi(j,i,y') = {:?}, required 2", v.df_phi(j, i, yp)),
                ));
            } else {
                let w = v.word(Direction::F, &[i, i], yp);
                let d = w.and_then(|w| v.df_phi(j, i, w));
                if d != Some(0) {
                    out.push(Violation::at(
                        AxiomId::RMinus,
                        pair,
                        x,
                        format!("D^f_phi(j,i,f_i^2 y') = {d:?}, required 0"),
                    ));
                }
            }
        }
        DeltaPair(1, 0) => out.push(Violation::at(AxiomId::DMinus, pair, x, "S6: Delta'' = (1,0)")),
        _ => {}
    }
}

fn check_s7_s9_at(v: &LocalView, i: Color, j: Color, x: VertexId, out: &mut Vec<Violation>) {
    let pair = (i, j);
    if v.s7_hypothesis(i, j, x) {
        let y = v.word(Direction::F, &[i, i, j], x);
        let yp = v.word(Direction::F, &[i, i, j, j, i], x);
        if y.is_none() {
            out.push(Violation::at(
                AxiomId::DPlus,
                pair,
                x,
                "S7: y = f_i^2 f_j x is undefined",
            ));
        } else if yp.is_none() {
            out.push(Violation::at(
                AxiomId::DPlus,
                pair,
                x,
                "S7: y' = f_i^2 f_j^2 f_i x is undefined",
            ));
        } else if v.d_plus_trigger(i, j, x).is_some() {
            if let Err(msg) = v.confluence(Direction::F, &[&[j, i, i, i, j, j, i], &[i, j, j, i, i, i, j]], x) {
                out.push(Violation::at(AxiomId::DPlus, pair, x, format!("S7: {msg}")));
            }
        }
    }
    if v.s8_hypothesis(i, j, x) {
        if let Err(msg) = c1_plus(v, i, j, x) {
            out.push(Violation::at(AxiomId::C1Plus, pair, x, format!("S8: {msg}")));
        }
    }
    if v.s9_hypothesis(i, j, x) {
        if let Err(msg) = c1_plus(v, i, j, x) {
            out.push(Violation::at(AxiomId::C1Plus, pair, x, format!("S9: {msg}")));
        }
    }
}

/// (S8'), (P^-), (Q^-) and the luck consequence of (Q^-_1).
pub fn check_variants(g: &ColoredGraph, a: &Gcm) -> Vec<Violation> {
    let v = match view_or_s1(g) {
        Ok(v) => v,
        Err(s1) => return s1,
    };
    let mut out = Vec::new();
    for (i, j) in a.b2_pairs() {
        let pair = (i, j);
        for x in g.vertices() {
            if v.e(i, x).is_some()
                && v.e(j, x).is_some()
                && v.delta_e(i, j, x) == Some(DeltaPair(1, 1))
                && v.eps(i, x) >= 2
            {
                if let Err(msg) = v.confluence(Direction::E, &[&[i, j, j, i, i], &[j, i, i, i, j]], x) {
                    out.push(Violation::at(AxiomId::S8Prime, pair, x, msg));
                }
            }
            if !v.s6_hypothesis(i, j, x) {
                continue;
            }
            let Ok(d) = v.d_minus_data(i, j, x) else { continue };
            match d.delta2 {
                DeltaPair(1, 1) => {
                    match v.confluence(Direction::E, &[&[i, i, j, j, i], &[i, j, i, j, i], &[j, i, i, i, j]], x) {
                        Err(msg) => out.push(Violation::at(AxiomId::PMinus, pair, x, msg)),
                        Ok(yp) => {
                            if v.df_phi(j, i, yp) != Some(1) {
                                out.push(Violation::at(
                                    AxiomId::PMinus,
                                    pair,
                                    x,
                                    format!("D^f_phi(j,i,y') = {:?}, required 1", v.df_phi(j, i, yp)),
                                ));
                            }
                        }
                    }
                }
                DeltaPair(0, 1) => {
                    let words: [&[Color]; 4] = [
                        &[j, i, i, j, i, j, i],
                        &[j, i, i, i, j, j, i],
                        &[i, j, j, i, i, i, j],
                        &[i, j, i, j, i, i, j],
                    ];
                    match v.confluence(Direction::E, &words, x) {
                        Err(msg) => out.push(Violation::at(AxiomId::QMinus, pair, x, msg)),
                        Ok(z) => {
                            if v.delta_f(i, j, z) != Some(DeltaPair(1, 2)) {
                                out.push(Violation::at(
                                    AxiomId::QMinus,
                                    pair,
                                    x,
                                    format!("Delta'(z) = {:?}, required (1,2)", v.delta_f(i, j, z)),
                                ));
                            }
                        }
                    }
                    if let Ok(z) = v.q1_minus_z(i, j, x) {
                        let a1 = v.word(Direction::F, &[i, i, j], z).and_then(|w| v.de_eps(i, j, w));
                        let a2 = v
                            .word(Direction::F, &[i, i, j, j, i], z)
                            .and_then(|w| v.de_eps(i, j, w));
                        if (a1, a2) != (Some(0), Some(1)) {
                            out.push(Violation::at(
                                AxiomId::Q1Minus,
                                pair,
                                x,
                                format!("luck: (D^e_eps(i,j,f_i^2 f_j z), D^e_eps(i,j,f_i^2 f_j^2 f_i z)) = ({a1:?}, {a2:?}), expected (0,1)"),
                            ));
                        }
                    }
                }
                _ => {}
            }
        }
    }
    sorted(out)
}

/// Bounded search for homogeneous local confluence. A violation records
/// that no confluence was found within `s_max` steps, not that none exists.
pub fn check_confluence(g: &ColoredGraph, s_max: usize) -> Vec<Violation> {
    if let Err(s1) = view_or_s1(g) {
        return s1;
    }
    let colors = g.colors();
    let k = colors.len();
    let mut out = Vec::new();
    for x in g.vertices() {
        for (p, &i) in colors.iter().enumerate() {
            for (q, &j) in colors.iter().enumerate() {
                if p >= q {
                    continue;
                }
                let (Some(xi), Some(xj)) = (g.e(i, x), g.e(j, x)) else {
                    continue;
                };
                let mut left: HashSet<(VertexId, Vec<u16>)> = HashSet::from([(xi, unit(k, p))]);
                let mut right: HashSet<(VertexId, Vec<u16>)> = HashSet::from([(xj, unit(k, q))]);
                let mut found = false;
                for _s in 2..=s_max {
                    left = grow(g, &left);
                    right = grow(g, &right);
                    if left.iter().any(|st| right.contains(st)) {
                        found = true;
                        break;
                    }
                    if left.is_empty() || right.is_empty() {
                        break;
                    }
                }
                if !found {
                    out.push(Violation::at(
                        AxiomId::Confluence,
                        (i, j),
                        x,
                        format!("bounded-search failure: no homogeneous confluence of e{i} x and e{j} x within {s_max} steps"),
                    ));
                }
            }
        }
    }
    sorted(out)
}

fn unit(k: usize, p: usize) -> Vec<u16> {
    let mut v = vec![0; k];
    v[p] = 1;
    v
}

fn grow(g: &ColoredGraph, front: &HashSet<(VertexId, Vec<u16>)>) -> HashSet<(VertexId, Vec<u16>)> {
    let mut next = HashSet::new();
    for (v, counts) in front {
        for (p, &c) in g.colors().iter().enumerate() {
            if let Some(w) = g.e(c, *v) {
                let mut counts = counts.clone();
                counts[p] += 1;
                next.insert((w, counts));
            }
        }
    }
    next
}

/// Goodness, a unique maximum, consistent weights, (S2)-(S5), (S6)-(S9) on
/// `B_2` pairs, and optionally `phi` at the maximum.
pub fn check_all(g: &ColoredGraph, a: &Gcm, expected_phi0: Option<&PairingVector>) -> Report {
    if a.index_set() != g.index_set() {
        return Report::from_violations(vec![Violation::global(
            AxiomId::UnsupportedPair,
            format!(
                "matrix indexed by {:?}, graph by {:?}",
                a.index_set().colors(),
                g.colors()
            ),
        )]);
    }
    if let Err(e) = a.check_supported() {
        return Report::from_violations(vec![Violation::global(AxiomId::UnsupportedPair, e.to_string())]);
    }
    let s1 = s1_violations(g);
    if !s1.is_empty() {
        return Report::from_violations(s1);
    }
    let mut out = Vec::new();
    let maxima = g.maximum_elements();
    if maxima.len() == 1 {
        let x0 = maxima[0];
        if let Err(err) = g.wt_assign(x0) {
            let mut viol = Violation::global(AxiomId::Confluence, err.to_string());
            if let GraphError::InconsistentWeight {
                witness, second_path, ..
            } = err
            {
                viol.witness = Some(witness);
                viol.path = Some(second_path);
            }
            out.push(viol);
        }
        if let Some(expected) = expected_phi0 {
            let (_, phi) = g.string_stats(x0).expect("good graphs have finite strings");
            let phi = PairingVector(phi.into_iter().map(i64::from).collect());
            if &phi != expected {
                let mut viol = Violation::global(
                    AxiomId::HighestWeight,
                    format!("phi at the maximum is {:?}, expected {:?}", phi.0, expected.0),
                );
                viol.witness = Some(x0);
                out.push(viol);
            }
        }
    } else {
        out.push(Violation::global(
            AxiomId::Maximum,
            format!("expected exactly one maximum element, found {}", maxima.len()),
        ));
    }
    out.extend(check_s2_s3(g, a));
    out.extend(check_s4_s5(g, a));
    out.extend(check_s6_s9(g, a));
    Report::from_violations(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::IndexSet;
    use crate::pbw::{generate, HighestWeightB2};

    fn hw(l1: u32, l2: u32) -> ColoredGraph {
        generate(HighestWeightB2::new(l1, l2)).unwrap()
    }

    fn from_edges(n: usize, edges: &[(VertexId, VertexId, Color)]) -> ColoredGraph {
        let mut g = ColoredGraph::with_vertices(IndexSet::standard(2), n);
        for &(a, b, c) in edges {
            g.add_edge(a, b, c).unwrap();
        }
        g
    }

    /// `B(2 Lambda_1)` for `A_2`.
    fn a2_two_lambda1() -> ColoredGraph {
        from_edges(6, &[(0, 1, 1), (1, 2, 2), (1, 3, 1), (2, 4, 1), (3, 4, 2), (4, 5, 2)])
    }

    /// `B(Lambda_1 + Lambda_2)` for `A_2`.
    fn a2_adjoint() -> ColoredGraph {
        from_edges(
            8,
            &[
                (0, 1, 1),
                (0, 2, 2),
                (1, 3, 2),
                (2, 4, 1),
                (3, 5, 2),
                (4, 6, 1),
                (5, 7, 1),
                (6, 7, 2),
            ],
        )
    }

    /// Moves the incoming arrows of `v` with the given colors to a new vertex.
    fn split_incoming(g: &ColoredGraph, v: VertexId, colors: &[Color]) -> ColoredGraph {
        let mut out = ColoredGraph::with_vertices(g.index_set().clone(), g.vertex_count() + 1);
        let fresh = g.vertex_count();
        for e in g.edges() {
            let to = if e.to == v && colors.contains(&e.color) {
                fresh
            } else {
                e.to
            };
            out.add_edge(e.from, to, e.color).unwrap();
        }
        out
    }

    fn tags(v: &[Violation]) -> Vec<AxiomId> {
        v.iter().map(|v| v.axiom).collect()
    }

    #[test]
    fn render_examples() {
        assert_eq!(render(Direction::E, &[1, 2, 2, 1]), "e1 e2^2 e1");
        assert_eq!(render(Direction::F, &[2, 1, 1, 1, 2]), "f2 f1^3 f2");
    }

    #[test]
    fn s2_s3_on_generated() {
        let b2 = Gcm::b2();
        let g = hw(2, 1);
        assert!(check_s2_s3(&g, &b2).is_empty());
        for side in [Direction::E, Direction::F] {
            let opts = S2S3Options {
                side,
                include_diagonal: true,
            };
            assert!(check_s2_s3_with(&g, &b2, opts).is_empty());
        }
    }

    #[test]
    fn diagonal_delta_constants() {
        let g = hw(2, 1);
        let v = LocalView::new(&g).unwrap();
        for x in g.vertices() {
            for i in [1, 2] {
                if v.e(i, x).is_some() {
                    assert_eq!(v.delta(Direction::E, Statistic::Epsilon, i, i, x), Some(-1));
                    assert_eq!(v.delta(Direction::E, Statistic::Phi, i, i, x), Some(1));
                }
                if v.f(i, x).is_some() {
                    assert_eq!(v.delta(Direction::F, Statistic::Epsilon, i, i, x), Some(1));
                    assert_eq!(v.delta(Direction::F, Statistic::Phi, i, i, x), Some(-1));
                }
            }
        }
    }

    #[test]
    fn a2_graph_against_b2_matrix() {
        let v = check_s2_s3(&a2_two_lambda1(), &Gcm::b2());
        assert!(!v.is_empty());
        assert!(v.iter().all(|v| v.axiom == AxiomId::S2));
        assert!(v
            .iter()
            .any(|v| v.pair == Some([2, 1]) && v.detail.contains("= -1, required a_12 = -2")));
    }

    #[test]
    fn a2_crystals_pass() {
        let a2 = Gcm::a2();
        let r = check_all(&a2_two_lambda1(), &a2, Some(&PairingVector(vec![2, 0])));
        assert!(r.pass, "{:?}", r.violations);
        let r = check_all(&a2_adjoint(), &a2, Some(&PairingVector(vec![1, 1])));
        assert!(r.pass, "{:?}", r.violations);
        assert!(check_s4_s5(&a2_adjoint(), &a2).is_empty());
    }

    #[test]
    fn open_diamond_breaks_a_minus() {
        // t -2-> u -1-> x, w -2-> x
        let g = from_edges(4, &[(0, 1, 2), (1, 3, 1), (2, 3, 2)]);
        let v = check_s4_s5(&g, &Gcm::a2());
        assert!(v
            .iter()
            .any(|v| v.axiom == AxiomId::AMinus && v.witness == Some(3) && v.pair == Some([1, 2])));
    }

    #[test]
    fn check_all_examples() {
        let b2 = Gcm::b2();
        let g = hw(1, 1);
        assert!(check_all(&g, &b2, Some(&PairingVector(vec![1, 1]))).pass);
        let r = check_all(&g, &b2, Some(&PairingVector(vec![2, 1])));
        assert!(!r.pass);
        assert_eq!(tags(&r.violations), vec![AxiomId::HighestWeight]);
        let r = check_all(&g.disjoint_union(&hw(1, 0)), &b2, None);
        assert!(r.has(AxiomId::Maximum));
        let r = check_all(&g, &Gcm::a2(), None);
        assert!(r.has(AxiomId::S2));
        let r = check_all(&g, &Gcm::b3(), None);
        assert!(r.has(AxiomId::UnsupportedPair));
    }

    #[test]
    fn check_all_reports_goodness_first() {
        let mut g = ColoredGraph::with_vertices(IndexSet::standard(2), 2);
        g.add_edge(0, 1, 1).unwrap();
        g.add_edge(1, 0, 1).unwrap();
        let r = check_all(&g, &Gcm::b2(), None);
        assert_eq!(tags(&r.violations), vec![AxiomId::S1]);
        assert!(r.violations[0].detail.starts_with("G3"));
        assert_eq!(tags(&check_s6_s9(&g, &Gcm::b2())), vec![AxiomId::S1]);
    }

    #[test]
    fn check_all_reports_inconsistent_weight() {
        let g = crate::graph::tests::inconsistent_five();
        let r = check_all(&g, &Gcm::b2(), None);
        let c: Vec<_> = r.violations.iter().filter(|v| v.axiom == AxiomId::Confluence).collect();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].witness, Some(2));
        assert!(c[0].path.is_some());
    }

    #[test]
    fn transposed_pair_is_checked_in_its_orientation() {
        let g = hw(1, 1);
        let mut swapped = ColoredGraph::with_vertices(IndexSet::standard(2), g.vertex_count());
        for e in g.edges() {
            swapped.add_edge(e.from, e.to, 3 - e.color).unwrap();
        }
        let bt = Gcm::from_rows(vec![vec![2, -1], vec![-2, 2]]).unwrap();
        assert!(check_all(&swapped, &bt, Some(&PairingVector(vec![1, 1]))).pass);
        assert!(!check_all(&swapped, &Gcm::b2(), None).pass);
    }

    #[test]
    fn figure_crystals_satisfy_s6_s9_and_variants() {
        let b2 = Gcm::b2();
        for (l1, l2) in [(1, 1), (3, 0), (0, 2)] {
            let g = hw(l1, l2);
            assert!(check_s6_s9(&g, &b2).is_empty());
            assert!(check_variants(&g, &b2).is_empty());
        }
    }

    #[test]
    fn each_case_of_d_minus_appears() {
        let g = hw(1, 1);
        let v = LocalView::new(&g).unwrap();
        let mut seen = Vec::new();
        for (l1, l2) in [(1, 1), (3, 0), (0, 2)] {
            let g = hw(l1, l2);
            let v = LocalView::new(&g).unwrap();
            for x in g.vertices() {
                if v.s6_hypothesis(1, 2, x) {
                    seen.push(v.d_minus_data(1, 2, x).unwrap().delta2);
                }
            }
        }
        for case in [DeltaPair(0, 1), DeltaPair(1, 1), DeltaPair(0, 0)] {
            assert!(seen.contains(&case), "{case} missing from {seen:?}");
        }
        assert!(!seen.contains(&DeltaPair(1, 0)));
        let hits = g.vertices().filter(|&x| v.s7_hypothesis(1, 2, x)).count();
        assert!(hits > 0);
    }

    #[test]
    fn variants_on_generated_grid() {
        let b2 = Gcm::b2();
        for l1 in 0..=4 {
            for l2 in 0..=4 {
                let g = hw(l1, l2);
                assert!(check_variants(&g, &b2).is_empty(), "({l1},{l2})");
            }
        }
    }

    #[test]
    fn split_top_of_figure_left() {
        let g = hw(1, 1);
        let top = g.maximum_elements()[0];
        let split = split_incoming(&g.reverse(), top, &[2]).reverse();
        let v = check_s6_s9(&split, &Gcm::b2());
        assert!(
            v.iter().any(|v| matches!(v.axiom, AxiomId::Q1Minus | AxiomId::DPlus)),
            "{v:?}"
        );
        assert!(!check_variants(&split, &Gcm::b2()).is_empty());
    }

    #[test]
    fn removing_s9_merge() {
        let g = hw(0, 2);
        let v = LocalView::new(&g).unwrap();
        let yp = g
            .vertices()
            .find(|&x| v.s9_hypothesis(1, 2, x))
            .expect("S9 fires in B(0,2)");
        let z = v.word(Direction::F, &[1, 2, 2, 1, 1], yp).unwrap();
        let mutated = split_incoming(&g, z, &[2]);
        let viol = check_s6_s9(&mutated, &Gcm::b2());
        assert!(
            viol.iter()
                .any(|v| v.axiom == AxiomId::C1Plus && v.detail.starts_with("S9")),
            "{viol:?}"
        );
    }

    #[test]
    fn single_edge_deletions_are_detected() {
        let b2 = Gcm::b2();
        let g = hw(1, 1);
        for e in g.edges() {
            let mut m = g.clone();
            m.remove_edge(e.from, e.color);
            assert!(!check_all(&m, &b2, Some(&PairingVector(vec![1, 1]))).pass, "{e:?}");
            assert!(
                !check_s2_s3(&m, &b2).is_empty() || !check_s4_s5(&m, &b2).is_empty(),
                "{e:?}"
            );
        }
    }

    #[test]
    fn confluence_examples() {
        for l1 in 0..=3 {
            for l2 in 0..=3 {
                assert!(check_confluence(&hw(l1, l2), DEFAULT_CONFLUENCE_DEPTH).is_empty());
            }
        }
        let v = check_confluence(&crate::graph::tests::inconsistent_five(), DEFAULT_CONFLUENCE_DEPTH);
        assert_eq!(v.len(), 1);
        assert_eq!((v[0].axiom, v[0].witness), (AxiomId::Confluence, Some(2)));

        let string = from_edges(3, &[(0, 1, 1), (1, 2, 1)]);
        assert!(check_confluence(&string, DEFAULT_CONFLUENCE_DEPTH).is_empty());
    }

    #[test]
    fn report_json_shape() {
        let r = check_all(&hw(1, 1), &Gcm::b2(), Some(&PairingVector(vec![2, 1])));
        let j = serde_json::to_value(&r).unwrap();
        assert_eq!(j["pass"], false);
        assert_eq!(j["violations"][0]["axiom"], "HIGHEST_WEIGHT");
        assert!(j["violations"][0]["witness"].is_u64());
        let v = check_s2_s3(&a2_two_lambda1(), &Gcm::b2());
        let j = serde_json::to_value(&v[0]).unwrap();
        assert_eq!(j["axiom"], "S2");
        assert!(j["pair"].is_array());
        assert!(j.get("path").is_none());
        let back: Report = serde_json::from_value(serde_json::to_value(&r).unwrap()).unwrap();
        assert_eq!(back, r);
    }
}
