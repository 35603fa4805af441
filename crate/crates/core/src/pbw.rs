//! The PBW realization of B2 crystals.
//!
//! An element is a pair `(a, x)` of Lusztig data for the two reduced words
//! `s1 s2 s1 s2` and `s2 s1 s2 s1` of the longest Weyl group element, tied
//! together by `x = R(a)`. Root order along the first word is
//! `alpha1 < 2alpha1+alpha2 < alpha1+alpha2 < alpha2`.
//!
//! `e1`/`f1` act on `a_1` and recompute `x`; `e2`/`f2` act on `x_1` and
//! recompute `a`. Operators only ever touch the leading coordinate of one of
//! the two data, which is the reason both are carried.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cartan::{Gcm, IndexSet, PairingVector};
use crate::graph::{ColoredGraph, Direction};

/// Default cap on the number of vertices [`generate`] may create.
pub const DEFAULT_VERTEX_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PbwError {
    #[error("generation exceeded the vertex budget of {0}")]
    BudgetExceeded(usize),
    #[error("corollary hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("generated element {element} violates the {rule:?} membership rule")]
    MembershipViolation { element: PbwElement, rule: MembershipRule },
}

/// Coordinates along `s1 s2 s1 s2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LusztigDatum(pub [u32; 4]);

/// Coordinates along `s2 s1 s2 s1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DualDatum(pub [u32; 4]);

fn to_i64(t: [u32; 4]) -> [i64; 4] {
    t.map(i64::from)
}

fn to_u32(t: [i64; 4]) -> [u32; 4] {
    t.map(|v| u32::try_from(v).expect("transition map produced a negative coordinate"))
}

/// The transition map `R` from `a`-coordinates to `x`-coordinates.
pub fn r_transfer(a: LusztigDatum) -> DualDatum {
    let [a, b, c, d] = to_i64(a.0);
    let n1 = b.max(b.max(d) + c - a);
    let n2 = a.max(c) + 2 * b;
    let n3 = (c + d).min(a + b.min(d));
    let n4 = a.min(c);
    let mu = (2 * n3).max(n2 + n4);
    DualDatum(to_u32([n1, mu - n2, n2 + n3 - mu, n4 - 2 * n3 + mu]))
}

/// The inverse map `R^{-1}`.
pub fn r_inverse(x: DualDatum) -> LusztigDatum {
    let [a, b, c, d] = to_i64(x.0);
    let p1 = b.max(b.max(d) + 2 * (c - a));
    let p2 = a.max(c) + b;
    let p3 = (2 * c + d).min(2 * a + b.min(d));
    let p4 = a.min(c);
    let nu = p3.max(p2 + p4);
    LusztigDatum(to_u32([p1, nu - p2, 2 * p2 + p3 - 2 * nu, p4 - p3 + nu]))
}

/// Piecewise-linear form of `R` valid when `a3 >= a1`.
pub fn closed_form_r_upper(a: LusztigDatum) -> Option<DualDatum> {
    let [a1, a2, a3, a4] = to_i64(a.0);
    if a3 < a1 {
        return None;
    }
    let m = a2.min(a4);
    Some(DualDatum(to_u32([a2.max(a4) + a3 - a1, a1, m, a3 + 2 * a2 - 2 * m])))
}

/// Piecewise-linear form of `R` valid when `a3 <= a1`.
///
/// The middle bound `a4 + (a3 - a1)/2` can be half-integral; comparisons are
/// done after doubling both sides.
pub fn closed_form_r_lower(a: LusztigDatum) -> Option<DualDatum> {
    let [a1, a2, a3, a4] = to_i64(a.0);
    if a3 > a1 {
        return None;
    }
    let out = if 2 * a2 >= 2 * a4 + (a3 - a1) {
        [a2, a3, a4, a1 + 2 * a2 - 2 * a4]
    } else if a4 + a3 - a1 <= a2 {
        [a2, 2 * a3 + 2 * a4 - a1 - 2 * a2, a1 + 2 * a2 - (a3 + a4), a3]
    } else {
        [a4 + a3 - a1, a1, a2, a3]
    };
    Some(DualDatum(to_u32(out)))
}

/// `R` by the closed forms; agrees with [`r_transfer`] everywhere.
pub fn closed_form_r(a: LusztigDatum) -> DualDatum {
    closed_form_r_upper(a)
        .or_else(|| closed_form_r_lower(a))
        .expect("the two branches cover every datum")
}

/// Piecewise-linear form of `R^{-1}` valid when `x3 >= x1`.
pub fn closed_form_rinv_upper(x: DualDatum) -> Option<LusztigDatum> {
    let [x1, x2, x3, x4] = to_i64(x.0);
    if x3 < x1 {
        return None;
    }
    let m = x2.min(x4);
    Some(LusztigDatum(to_u32([x2.max(x4) + 2 * (x3 - x1), x1, m, x3 + x2 - m])))
}

/// Piecewise-linear form of `R^{-1}` valid when `x3 <= x1`.
pub fn closed_form_rinv_lower(x: DualDatum) -> Option<LusztigDatum> {
    let [x1, x2, x3, x4] = to_i64(x.0);
    if x3 > x1 {
        return None;
    }
    let out = if x2 >= x4 + x3 - x1 {
        [x2, x3, x4, x1 + x2 - x4]
    } else if x4 + 2 * (x3 - x1) <= x2 {
        [x2, 2 * x3 + x4 - x1 - x2, 2 * x1 + 2 * x2 - 2 * x3 - x4, x3]
    } else {
        [x4 + 2 * (x3 - x1), x1, x2, x3]
    };
    Some(LusztigDatum(to_u32(out)))
}

pub fn closed_form_rinv(x: DualDatum) -> LusztigDatum {
    closed_form_rinv_upper(x)
        .or_else(|| closed_form_rinv_lower(x))
        .expect("the two branches cover every datum")
}

/// A vertex of `B(infinity)` or `B(lambda)`: a consistent pair `(a, R(a))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct PbwElement {
    pub a: LusztigDatum,
    pub x: DualDatum,
}

impl PbwElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_a(a: [u32; 4]) -> Self {
        let a = LusztigDatum(a);
        Self { a, x: r_transfer(a) }
    }

    pub fn from_x(x: [u32; 4]) -> Self {
        let x = DualDatum(x);
        Self { a: r_inverse(x), x }
    }

    /// Unchecked pairing, for spelling out literal elements.
    pub fn new(a: [u32; 4], x: [u32; 4]) -> Self {
        Self {
            a: LusztigDatum(a),
            x: DualDatum(x),
        }
    }

    /// `x = R(a)` holds.
    pub fn is_consistent(&self) -> bool {
        r_transfer(self.a) == self.x
    }

    /// Multiplicities `(k1, k2)` of `alpha1`, `alpha2` in `lambda - wt`, read off `x`.
    pub fn root_multiplicities(&self) -> (u64, u64) {
        let [x1, x2, x3, x4] = self.x.0.map(u64::from);
        (x2 + 2 * x3 + x4, x1 + x2 + x3)
    }

    /// The same multiplicities read off `a`.
    pub fn root_multiplicities_from_a(&self) -> (u64, u64) {
        let [a1, a2, a3, a4] = self.a.0.map(u64::from);
        (a1 + 2 * a2 + a3, a2 + a3 + a4)
    }
}

impl fmt::Display for PbwElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a1, a2, a3, a4] = self.a.0;
        let [x1, x2, x3, x4] = self.x.0;
        write!(f, "(({a1},{a2},{a3},{a4}),({x1},{x2},{x3},{x4}))")
    }
}

/// A dominant weight for B2, given by its pairings `(<h1, lambda>, <h2, lambda>)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct HighestWeightB2 {
    pub l1: u32,
    pub l2: u32,
}

impl HighestWeightB2 {
    pub fn new(l1: u32, l2: u32) -> Self {
        Self { l1, l2 }
    }

    pub fn pairing(&self) -> PairingVector {
        PairingVector(vec![i64::from(self.l1), i64::from(self.l2)])
    }
}

impl fmt::Display for HighestWeightB2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.l1, self.l2)
    }
}

/// Which crystal an element is read in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrystalKind {
    Infinity,
    Highest(HighestWeightB2),
}

/// String data and weight pairing of an element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementStats {
    pub eps: [i64; 2],
    pub phi: [i64; 2],
    pub wt: [i64; 2],
}

pub fn elem_stats(m: &PbwElement, kind: CrystalKind) -> ElementStats {
    let (k1, k2) = m.root_multiplicities();
    let (k1, k2) = (k1 as i64, k2 as i64);
    let (l1, l2) = match kind {
        CrystalKind::Infinity => (0, 0),
        CrystalKind::Highest(lam) => (i64::from(lam.l1), i64::from(lam.l2)),
    };
    // <h1, alpha1> = 2, <h1, alpha2> = -2, <h2, alpha1> = -1, <h2, alpha2> = 2
    let wt = [l1 - (2 * k1 - 2 * k2), l2 - (2 * k2 - k1)];
    let eps = [i64::from(m.a.0[0]), i64::from(m.x.0[0])];
    ElementStats {
        eps,
        phi: [eps[0] + wt[0], eps[1] + wt[1]],
        wt,
    }
}

/// `(eps*_1, eps*_2) = (x4, a4)`.
pub fn epsilon_star(m: &PbwElement) -> (u32, u32) {
    (m.x.0[3], m.a.0[3])
}

/// One Kashiwara operator on a PBW element. `None` is the zero of the crystal.
///
/// In `B(infinity)` lowering operators are always defined; in `B(lambda)` they
/// require `phi_i > 0`. Raising operators require `eps_i > 0` in both.
pub fn kashiwara_step(m: &PbwElement, dir: Direction, color: u32, kind: CrystalKind) -> Option<PbwElement> {
    let stats = elem_stats(m, kind);
    let slot = match color {
        1 => 0,
        2 => 1,
        _ => return None,
    };
    match dir {
        Direction::E => {
            if stats.eps[slot] <= 0 {
                return None;
            }
        }
        Direction::F => {
            if let CrystalKind::Highest(_) = kind {
                if stats.phi[slot] <= 0 {
                    return None;
                }
            }
        }
    }
    let shift = |v: u32| match dir {
        Direction::E => v - 1,
        Direction::F => v + 1,
    };
    Some(if slot == 0 {
        let mut a = m.a.0;
        a[0] = shift(a[0]);
        PbwElement::from_a(a)
    } else {
        let mut x = m.x.0;
        x[0] = shift(x[0]);
        PbwElement::from_x(x)
    })
}

/// Apply a word of operators, written left to right and applied
/// right to left, e.g. `[1, 2, 2, 1]` is `e1 e2 e2 e1 m`.
pub fn apply_word(m: &PbwElement, dir: Direction, word: &[u32], kind: CrystalKind) -> Option<PbwElement> {
    word.iter()
        .rev()
        .try_fold(*m, |cur, &c| kashiwara_step(&cur, dir, c, kind))
}

/// The two candidate cutoff rules describing `B(lambda)` inside `B(infinity)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MembershipRule {
    /// `x3 <= <h1, lambda>` and `a3 <= <h2, lambda>`.
    ThirdCoordinate,
    /// `x4 <= <h1, lambda>` and `a4 <= <h2, lambda>`, i.e. `eps*_i <= <h_i, lambda>`.
    FourthCoordinate,
}

impl MembershipRule {
    /// The rule pinned against the Weyl dimension formula.
    pub const DEFAULT: MembershipRule = MembershipRule::FourthCoordinate;

    pub fn contains(self, m: &PbwElement, lam: HighestWeightB2) -> bool {
        let (c1, c2) = match self {
            MembershipRule::ThirdCoordinate => (m.x.0[2], m.a.0[2]),
            MembershipRule::FourthCoordinate => (m.x.0[3], m.a.0[3]),
        };
        c1 <= lam.l1 && c2 <= lam.l2
    }
}

#[derive(Debug, Clone)]
pub struct GenerateOptions {
    pub max_vertices: usize,
    /// Asserted on every generated vertex; `None` skips the assertion.
    pub membership: Option<MembershipRule>,
}

impl Default for GenerateOptions {
    fn default() -> Self {
        Self {
            max_vertices: DEFAULT_VERTEX_BUDGET,
            membership: Some(MembershipRule::DEFAULT),
        }
    }
}

/// The crystal graph of `B(lambda)` in the PBW realization.
pub fn generate(lam: HighestWeightB2) -> Result<ColoredGraph, PbwError> {
    generate_with(lam, &GenerateOptions::default())
}

/// Breadth-first closure of the zero element under `f1`, `f2` (in that
/// order, FIFO), guarded by `phi_i > 0`. Vertex ids follow discovery order.
pub fn generate_with(lam: HighestWeightB2, opts: &GenerateOptions) -> Result<ColoredGraph, PbwError> {
    let kind = CrystalKind::Highest(lam);
    let mut g = ColoredGraph::new(IndexSet::standard(2));
    g.set_cartan(Some(Gcm::b2()));
    let mut ids: HashMap<PbwElement, usize> = HashMap::new();
    let mut queue = VecDeque::new();

    let top = PbwElement::zero();
    ids.insert(top, g.add_labeled_vertex(top));
    queue.push_back(top);

    while let Some(m) = queue.pop_front() {
        if let Some(rule) = opts.membership {
            if !rule.contains(&m, lam) {
                return Err(PbwError::MembershipViolation { element: m, rule });
            }
        }
        let from = ids[&m];
        for color in [1, 2] {
            let Some(next) = kashiwara_step(&m, Direction::F, color, kind) else {
                continue;
            };
            let to = match ids.get(&next) {
                Some(&id) => id,
                None => {
                    if ids.len() >= opts.max_vertices {
                        return Err(PbwError::BudgetExceeded(opts.max_vertices));
                    }
                    let id = g.add_labeled_vertex(next);
                    ids.insert(next, id);
                    queue.push_back(next);
                    id
                }
            };
            g.add_edge(from, to, color)
                .expect("PBW operators are partial injections");
        }
    }
    Ok(g)
}

/// Number of elements reachable from zero by unguarded `f`-steps while staying
/// inside the set cut out by `rule`. Used to pin the membership rule.
pub fn count_members(lam: HighestWeightB2, rule: MembershipRule, max_vertices: usize) -> Result<usize, PbwError> {
    let mut seen = std::collections::HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(PbwElement::zero());
    queue.push_back(PbwElement::zero());
    while let Some(m) = queue.pop_front() {
        for color in [1, 2] {
            let next = kashiwara_step(&m, Direction::F, color, CrystalKind::Infinity)
                .expect("lowering is total on B(infinity)");
            if rule.contains(&next, lam) && seen.insert(next) {
                if seen.len() > max_vertices {
                    return Err(PbwError::BudgetExceeded(max_vertices));
                }
                queue.push_back(next);
            }
        }
    }
    Ok(seen.len())
}

/// `Delta^e_eps(2, 1, m)` in closed form, for `a3 >= a1 >= 1` and `x1 >= 1`.
pub fn corollary_delta_2_1(m: &PbwElement) -> Result<i64, PbwError> {
    let [a1, a2, a3, a4] = to_i64(m.a.0);
    let x1 = i64::from(m.x.0[0]);
    if !(a3 >= a1 && a1 >= 1 && x1 >= 1) {
        return Err(PbwError::HypothesisNotMet(format!(
            "need a3 >= a1 >= 1 and x1 >= 1 at {m}"
        )));
    }
    Ok(0.max(2 + a1 - a3 + 2 * a2 - 2 * a2.max(a4)))
}

/// `Delta^e_eps(1, 2, m)` in closed form, for `x3 >= x1 >= 1` and `a1 >= 1`.
pub fn corollary_delta_1_2(m: &PbwElement) -> Result<i64, PbwError> {
    let [x1, x2, x3, x4] = to_i64(m.x.0);
    let a1 = i64::from(m.a.0[0]);
    if !(x3 >= x1 && x1 >= 1 && a1 >= 1) {
        return Err(PbwError::HypothesisNotMet(format!(
            "need x3 >= x1 >= 1 and a1 >= 1 at {m}"
        )));
    }
    Ok(0.max(1 + x1 - x3 + x2 - x2.max(x4)))
}

/// `Delta^e_eps(i, j, m) = eps_j(e_i m) - eps_j(m)` by navigation in
/// `B(infinity)`. String lengths upward do not depend on `lambda`.
pub fn navigated_delta_e_eps(m: &PbwElement, i: u32, j: u32) -> Option<i64> {
    let up = kashiwara_step(m, Direction::E, i, CrystalKind::Infinity)?;
    let eps = |e: &PbwElement| elem_stats(e, CrystalKind::Infinity).eps[(j - 1) as usize];
    Some(eps(&up) - eps(m))
}
