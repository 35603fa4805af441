//! Independent checks: Weyl dimension formulas, and exhaustive re-verification
//! of the `B_2` transition-map identities and of the local structure at the
//! vertices where (S6)-(S9) have content.
//!
//! Every report names the finite domain it scanned.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::axioms::{DeltaPair, LocalView};
use crate::cartan::{Gcm, PairingVector};
use crate::graph::{ColoredGraph, Direction, VertexId};
use crate::pbw::{
    closed_form_r_lower, closed_form_r_upper, closed_form_rinv_lower, closed_form_rinv_upper, corollary_delta_1_2,
    corollary_delta_2_1, count_members, generate, navigated_delta_e_eps, r_inverse, r_transfer, DualDatum,
    HighestWeightB2, LusztigDatum, MembershipRule, PbwElement, PbwError,
};

/// Root closures larger than this are treated as infinite type.
pub const ROOT_BUDGET: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("root closure exceeded {0} roots; the matrix is not of finite type")]
    NotFiniteType(usize),
    #[error("weight has {got} entries, matrix has rank {rank}")]
    RankMismatch { got: usize, rank: usize },
    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claim: String,
    pub domain_size: usize,
    pub counterexamples: Vec<String>,
}

impl VerificationReport {
    fn new(claim: impl Into<String>) -> Self {
        Self {
            claim: claim.into(),
            domain_size: 0,
            counterexamples: Vec::new(),
        }
    }

    pub fn pass(&self) -> bool {
        self.counterexamples.is_empty()
    }

    fn fail(&mut self, msg: String) {
        self.counterexamples.push(msg);
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.pass() { "PASS" } else { "FAIL" };
        write!(f, "{status}  {}  (domain {})", self.claim, self.domain_size)?;
        if !self.pass() {
            write!(
                f,
                "  {} counterexample(s), first: {}",
                self.counterexamples.len(),
                self.counterexamples[0]
            )?;
        }
        Ok(())
    }
}

/// `(a+1)(b+1)(a+b+2)(a+2b+3)/6`.
pub fn weyl_dim_b2(a: u64, b: u64) -> u64 {
    (a + 1) * (b + 1) * (a + b + 2) * (a + 2 * b + 3) / 6
}

/// A positive root and its coroot, both in simple coordinates.
pub type RootPair = (Vec<i64>, Vec<i64>);

pub fn positive_roots(a: &Gcm) -> Result<Vec<RootPair>, OracleError> {
    let n = a.rank();
    let simple = |p: usize| {
        let mut v = vec![0; n];
        v[p] = 1;
        v
    };
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    for p in 0..n {
        seen.insert(simple(p));
        queue.push_back((simple(p), simple(p)));
    }
    while let Some((root, coroot)) = queue.pop_front() {
        for p in 0..n {
            // s_p(beta) = beta - <h_p, beta> alpha_p; s_p(h) = h - <h, alpha_p> h_p
            let pair_root: i64 = (0..n).map(|k| a.at(p, k) * root[k]).sum();
            let pair_coroot: i64 = (0..n).map(|k| coroot[k] * a.at(k, p)).sum();
            let mut r = root.clone();
            r[p] -= pair_root;
            let mut c = coroot.clone();
            c[p] -= pair_coroot;
            if r.iter().all(|&v| v >= 0) && r.iter().any(|&v| v > 0) && seen.insert(r.clone()) {
                if seen.len() > ROOT_BUDGET {
                    return Err(OracleError::NotFiniteType(ROOT_BUDGET));
                }
                queue.push_back((r, c));
            }
        }
        out.push((root, coroot));
    }
    out.sort();
    Ok(out)
}

/// Weyl dimension formula, `rho` pairing to 1 with every simple coroot.
pub fn weyl_dim_general(a: &Gcm, lam: &PairingVector) -> Result<u128, OracleError> {
    if lam.len() != a.rank() {
        return Err(OracleError::RankMismatch {
            got: lam.len(),
            rank: a.rank(),
        });
    }
    if !lam.is_dominant() {
        return Err(OracleError::NotDominant(lam.0.clone()));
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for (_, coroot) in positive_roots(a)? {
        let rho: i64 = coroot.iter().sum();
        let lr: i64 = coroot.iter().zip(&lam.0).map(|(c, l)| c * l).sum::<i64>() + rho;
        num *= lr as u128;
        den *= rho as u128;
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    debug_assert_eq!(den, 1);
    Ok(num / den)
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn label(g: &ColoredGraph, v: VertexId) -> PbwElement {
    *g.label(v).expect("generated vertices carry labels")
}

fn elem(a: [i64; 4], x: [i64; 4]) -> Option<PbwElement> {
    let conv = |t: [i64; 4]| -> Option<[u32; 4]> {
        let mut out = [0u32; 4];
        for (o, v) in out.iter_mut().zip(t) {
            *o = u32::try_from(v).ok()?;
        }
        Some(out)
    };
    Some(PbwElement::new(conv(a)?, conv(x)?))
}

fn coords(m: &PbwElement) -> ([i64; 4], [i64; 4]) {
    (m.a.0.map(i64::from), m.x.0.map(i64::from))
}

/// Which of the three parametrized families an element belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    X1,
    X2,
    X3,
}

/// Membership in `X1`, `X2`, `X3` by matching the label against the
/// parametrized forms.
pub fn families(m: &PbwElement) -> Vec<Family> {
    let ([a1, a2, a3, a4], _) = coords(m);
    let mut out = Vec::new();
    let (a, b) = (a1, a2);
    if a >= 1 && b >= 1 && elem([a, b, a, b], [b, a, b, a]).as_ref() == Some(m) {
        out.push(Family::X1);
    }
    let c = a4;
    if a >= 1 && c < b && elem([a, b, a, c], [b, a, c, a + 2 * b - 2 * c]).as_ref() == Some(m) {
        out.push(Family::X2);
    }
    let c = a3;
    if b >= 1 && c < a && elem([a, b, c, a + b - c], [b, a, b, c]).as_ref() == Some(m) {
        out.push(Family::X3);
    }
    out
}

/// Membership in `{((a,b,a+1,c),(b+1,a,c,a+2b-2c+1)) | a >= 2, 0 <= c <= b}`.
pub fn in_c1_family(m: &PbwElement) -> bool {
    let ([a, b, _, c], _) = coords(m);
    a >= 2 && c <= b && elem([a, b, a + 1, c], [b + 1, a, c, a + 2 * b - 2 * c + 1]).as_ref() == Some(m)
}

/// Membership in `{((a,b,c,a+b-c-1),(b,a-2,b+1,c)) | a >= 2, b >= 1, 0 <= c <= a-2}`.
pub fn in_s9_family(m: &PbwElement) -> bool {
    let ([a, b, c, _], _) = coords(m);
    a >= 2 && b >= 1 && c <= a - 2 && elem([a, b, c, a + b - c - 1], [b, a - 2, b + 1, c]).as_ref() == Some(m)
}

struct Scan<'g> {
    g: &'g ColoredGraph,
    v: LocalView<'g>,
}

impl<'g> Scan<'g> {
    fn new(g: &'g ColoredGraph) -> Self {
        Self {
            g,
            v: LocalView::new(g).expect("generated graphs are good"),
        }
    }

    fn e(&self, word: &[u32], x: VertexId) -> Option<VertexId> {
        self.v.word(Direction::E, word, x)
    }

    fn f(&self, word: &[u32], x: VertexId) -> Option<VertexId> {
        self.v.word(Direction::F, word, x)
    }

    fn lab(&self, v: Option<VertexId>) -> Option<PbwElement> {
        v.map(|v| label(self.g, v))
    }
}

fn expect_label(
    r: &mut VerificationReport,
    m: &PbwElement,
    what: &str,
    got: Option<PbwElement>,
    want: Option<PbwElement>,
) {
    if got != want || got.is_none() {
        let show = |e: Option<PbwElement>| e.map_or("undefined".to_string(), |e| e.to_string());
        r.fail(format!("{m}: {what} = {}, expected {}", show(got), show(want)));
    }
}

/// Vertices with `e_1 x`, `e_2 x` defined and `Delta(x) = (1,2)`: the set
/// equals `X1 + X2 + X3` inside `B(lambda)`, the cases of `Delta''` are
/// exclusive and match the families, and each case's conclusion holds.
pub fn verify_kakunin1(lam: HighestWeightB2) -> Result<VerificationReport, PbwError> {
    let g = generate(lam)?;
    let s = Scan::new(&g);
    let mut r = VerificationReport::new(format!("Delta = (1,2) structure on B{lam}"));
    r.domain_size = g.vertex_count();
    for x in g.vertices() {
        let m = label(&g, x);
        let fams = families(&m);
        if fams.len() > 1 {
            r.fail(format!("{m} lies in several families {fams:?}"));
        }
        let hyp = s.v.s6_hypothesis(1, 2, x);
        if hyp != !fams.is_empty() {
            r.fail(format!("{m}: hypothesis {hyp} but families {fams:?}"));
        }
        if !hyp {
            continue;
        }
        let d = match s.v.d_minus_data(1, 2, x) {
            Ok(d) => d,
            Err(msg) => {
                r.fail(format!("{m}: {msg}"));
                continue;
            }
        };
        let expected_case = match fams.first() {
            Some(Family::X1) => Some(DeltaPair(0, 1)),
            Some(Family::X2) => Some(DeltaPair(1, 1)),
            Some(Family::X3) => Some(DeltaPair(0, 0)),
            None => None,
        };
        if Some(d.delta2) != expected_case {
            r.fail(format!(
                "{m}: Delta'' = {}, family predicts {expected_case:?}",
                d.delta2
            ));
        }
        let ([a, b, a3, a4], _) = coords(&m);
        let (y, yp) = (Some(d.y), Some(d.y_prime));
        match d.delta2 {
            DeltaPair(0, 1) => {
                let words: [&[u32]; 4] = [
                    &[2, 1, 1, 2, 1, 2, 1],
                    &[2, 1, 1, 1, 2, 2, 1],
                    &[1, 2, 2, 1, 1, 1, 2],
                    &[1, 2, 1, 2, 1, 1, 2],
                ];
                match s.v.confluence(Direction::E, &words, x) {
                    Err(msg) => r.fail(format!("{m}: {msg}")),
                    Ok(z) => {
                        if s.v.delta_f(1, 2, z) != Some(DeltaPair(1, 2)) {
                            r.fail(format!("{m}: Delta'(z) = {:?}, expected (1,2)", s.v.delta_f(1, 2, z)));
                        }
                        expect_label(&mut r, &m, "y", s.lab(y), elem([a, b - 1, a, b], [b, a, b - 1, a]));
                        expect_label(
                            &mut r,
                            &m,
                            "y'",
                            s.lab(yp),
                            elem([a, b - 1, a - 1, b], [b - 1, a, b - 1, a - 1]),
                        );
                        expect_label(
                            &mut r,
                            &m,
                            "z",
                            s.lab(Some(z)),
                            elem([a - 1, b - 1, a - 1, b - 1], [b - 1, a - 1, b - 1, a - 1]),
                        );
                    }
                }
            }
            DeltaPair(1, 1) => {
                match s
                    .v
                    .confluence(Direction::E, &[&[1, 1, 2, 2, 1], &[1, 2, 1, 2, 1], &[2, 1, 1, 1, 2]], x)
                {
                    Err(msg) => r.fail(format!("{m}: {msg}")),
                    Ok(yp) => {
                        if s.v.df_phi(2, 1, yp) != Some(1) {
                            r.fail(format!("{m}: D^f_phi(2,1,y') = {:?}, expected 1", s.v.df_phi(2, 1, yp)));
                        }
                    }
                }
                let c = a4;
                let t = a + 2 * b - 2 * c;
                expect_label(&mut r, &m, "y", s.lab(y), elem([a, b - 1, a, c], [b - 1, a, c, t - 2]));
                expect_label(
                    &mut r,
                    &m,
                    "y'",
                    s.lab(yp),
                    elem([a, b - 1, a - 1, c], [b - 1, a - 1, c, t - 2]),
                );
                expect_label(
                    &mut r,
                    &m,
                    "f2 y'",
                    s.lab(s.f(&[2], d.y_prime)),
                    elem([a - 1, b - 1, a, c], [b, a - 1, c, t - 2]),
                );
            }
            DeltaPair(0, 0) => {
                let f2yp = s.f(&[2], d.y_prime);
                if f2yp.is_none() || f2yp != s.e(&[1], d.y) {
                    r.fail(format!("{m}: f2 y' differs from e1 y"));
                }
                if s.v.df_phi(2, 1, d.y_prime) != Some(2) {
                    r.fail(format!(
                        "{m}: D^f_phi(2,1,y') = {:?}, expected 2",
                        s.v.df_phi(2, 1, d.y_prime)
                    ));
                }
                let ff = s.f(&[1, 1], d.y_prime);
                if ff.and_then(|w| s.v.df_phi(2, 1, w)) != Some(0) {
                    r.fail(format!("{m}: D^f_phi(2,1,f1^2 y') is not 0"));
                }
                let c = a3;
                let t = a + b - c;
                expect_label(&mut r, &m, "y", s.lab(y), elem([a, b - 1, c, t], [b, a, b - 1, c]));
                expect_label(
                    &mut r,
                    &m,
                    "y'",
                    s.lab(yp),
                    elem([a - 1, b - 1, c, t - 1], [b, a - 1, b - 1, c]),
                );
                expect_label(
                    &mut r,
                    &m,
                    "f2 y'",
                    s.lab(f2yp),
                    elem([a - 1, b - 1, c, t], [b + 1, a - 1, b - 1, c]),
                );
                expect_label(
                    &mut r,
                    &m,
                    "f1^2 y'",
                    s.lab(ff),
                    elem([a + 1, b - 1, c, t - 1], [b - 1, a - 1, b, c]),
                );
                expect_label(
                    &mut r,
                    &m,
                    "f2 f1^2 y'",
                    s.lab(s.f(&[2, 1, 1], d.y_prime)),
                    elem([a - 1, b, c, t - 1], [b, a - 1, b, c]),
                );
            }
            other => r.fail(format!("{m}: Delta'' = {other} is none of the three cases")),
        }
    }
    Ok(r)
}

/// Vertices with `e_1 x`, `e_2 x` defined, `eps_1 >= 2` and `Delta(x) = (1,1)`:
/// the set matches its parametrization and the three-word confluence holds.
pub fn verify_kakunin2(lam: HighestWeightB2) -> Result<VerificationReport, PbwError> {
    let g = generate(lam)?;
    let s = Scan::new(&g);
    let mut r = VerificationReport::new(format!("eps_1 >= 2, Delta = (1,1) structure on B{lam}"));
    r.domain_size = g.vertex_count();
    for x in g.vertices() {
        let m = label(&g, x);
        let hyp = s.v.e(1, x).is_some()
            && s.v.e(2, x).is_some()
            && s.v.eps(1, x) >= 2
            && s.v.delta_e(1, 2, x) == Some(DeltaPair(1, 1));
        if hyp != in_c1_family(&m) {
            r.fail(format!("{m}: hypothesis {hyp}, parametrized set {}", in_c1_family(&m)));
        }
        if !hyp {
            continue;
        }
        match s
            .v
            .confluence(Direction::E, &[&[1, 2, 2, 1, 1], &[1, 2, 1, 2, 1], &[2, 1, 1, 1, 2]], x)
        {
            Err(msg) => r.fail(format!("{m}: {msg}")),
            Ok(z) => {
                let ([a, b, _, c], _) = coords(&m);
                expect_label(
                    &mut r,
                    &m,
                    "z",
                    s.lab(Some(z)),
                    elem([a - 2, b + 1, a - 2, c], [b + 1, a - 2, c, a + 2 * b - 2 * c]),
                );
            }
        }
    }
    Ok(r)
}

/// Vertices with `e_1 x`, `e_2 x`, `e_2 e_1^2 x` defined, `Delta(x) = (0,2)` and
/// `Delta^e_eps(2,1,e_1^2 x) = 0`: the set matches its parametrization and the
/// three-word confluence holds.
pub fn verify_kakunin3(lam: HighestWeightB2) -> Result<VerificationReport, PbwError> {
    let g = generate(lam)?;
    let s = Scan::new(&g);
    let mut r = VerificationReport::new(format!("Delta = (0,2) structure on B{lam}"));
    r.domain_size = g.vertex_count();
    for x in g.vertices() {
        let m = label(&g, x);
        let hyp = s.v.e(1, x).is_some()
            && s.v.e(2, x).is_some()
            && s.v.delta_e(1, 2, x) == Some(DeltaPair(0, 2))
            && s.e(&[2, 1, 1], x).is_some()
            && s.e(&[1, 1], x).and_then(|w| s.v.de_eps(2, 1, w)) == Some(0);
        if hyp != in_s9_family(&m) {
            r.fail(format!("{m}: hypothesis {hyp}, parametrized set {}", in_s9_family(&m)));
        }
        if !hyp {
            continue;
        }
        match s
            .v
            .confluence(Direction::E, &[&[1, 2, 2, 1, 1], &[2, 1, 1, 2, 1], &[2, 1, 1, 1, 2]], x)
        {
            Err(msg) => r.fail(format!("{m}: {msg}")),
            Ok(z) => {
                let ([a, b, c, _], _) = coords(&m);
                expect_label(
                    &mut r,
                    &m,
                    "z",
                    s.lab(Some(z)),
                    elem([a - 1, b - 1, c, a + b - c - 2], [b - 1, a - 1, b - 1, c]),
                );
            }
        }
    }
    Ok(r)
}

type RBranch = fn([i64; 4]) -> Option<[i64; 4]>;

/// The four piecewise-linear branches under test.
#[derive(Clone, Copy)]
pub struct ClosedForms {
    pub r_upper: RBranch,
    pub r_lower: RBranch,
    pub rinv_upper: RBranch,
    pub rinv_lower: RBranch,
}

fn wrap_r(f: fn(LusztigDatum) -> Option<DualDatum>, a: [i64; 4]) -> Option<[i64; 4]> {
    f(LusztigDatum(a.map(|v| v as u32))).map(|x| x.0.map(i64::from))
}

fn wrap_rinv(f: fn(DualDatum) -> Option<LusztigDatum>, x: [i64; 4]) -> Option<[i64; 4]> {
    f(DualDatum(x.map(|v| v as u32))).map(|a| a.0.map(i64::from))
}

impl ClosedForms {
    pub fn reference() -> Self {
        Self {
            r_upper: |a| wrap_r(closed_form_r_upper, a),
            r_lower: |a| wrap_r(closed_form_r_lower, a),
            rinv_upper: |x| wrap_rinv(closed_form_rinv_upper, x),
            rinv_lower: |x| wrap_rinv(closed_form_rinv_lower, x),
        }
    }

    /// The reference with `min` and `max` swapped in the upper `R` branch.
    pub fn with_injected_bug() -> Self {
        Self {
            r_upper: |[a1, a2, a3, a4]| {
                (a3 >= a1).then(|| {
                    let m = a2.max(a4);
                    [a2.min(a4) + a3 - a1, a1, m, a3 + 2 * a2 - 2 * m]
                })
            },
            ..Self::reference()
        }
    }
}

fn box4(n: u32) -> impl Iterator<Item = [u32; 4]> {
    (0..=n).flat_map(move |a| (0..=n).flat_map(move |b| (0..=n).flat_map(move |c| (0..=n).map(move |d| [a, b, c, d]))))
}

/// Transition-map and closed-form checks on `[0, n]^4`, one report per claim.
pub fn lemma_reports(n: u32, forms: &ClosedForms) -> Vec<VerificationReport> {
    let mut round = VerificationReport::new(format!("R^-1 R = id and R R^-1 = id on [0,{n}]^4"));
    let mut r_up = VerificationReport::new(format!("closed form of R for a3 >= a1 on [0,{n}]^4"));
    let mut r_lo = VerificationReport::new(format!("closed form of R for a3 <= a1 on [0,{n}]^4"));
    let mut i_up = VerificationReport::new(format!("closed form of R^-1 for x3 >= x1 on [0,{n}]^4"));
    let mut i_lo = VerificationReport::new(format!("closed form of R^-1 for x3 <= x1 on [0,{n}]^4"));
    let mut c21 = VerificationReport::new(format!("closed form of D^e_eps(2,1,m) on [0,{n}]^4"));
    let mut c12 = VerificationReport::new(format!("closed form of D^e_eps(1,2,m) on [0,{n}]^4"));
    let mut prod = VerificationReport::new(format!(
        "D^e_eps(1,2,m) D^e_eps(2,1,m) = 0 when a1 > a3, x1 > x3 on [0,{n}]^4"
    ));
    for t in box4(n) {
        let wide = t.map(i64::from);
        round.domain_size += 2;
        let x = r_transfer(LusztigDatum(t));
        if r_inverse(x) != LusztigDatum(t) {
            round.fail(format!("R^-1(R({t:?})) = {:?}", r_inverse(x).0));
        }
        let a = r_inverse(DualDatum(t));
        if r_transfer(a) != DualDatum(t) {
            round.fail(format!("R(R^-1({t:?})) = {:?}", r_transfer(a).0));
        }
        for (rep, f, exact) in [
            (&mut r_up, forms.r_upper, x.0),
            (&mut r_lo, forms.r_lower, x.0),
            (&mut i_up, forms.rinv_upper, a.0),
            (&mut i_lo, forms.rinv_lower, a.0),
        ] {
            if let Some(got) = f(wide) {
                rep.domain_size += 1;
                if got != exact.map(i64::from) {
                    rep.fail(format!("{t:?} -> {got:?}, exact {exact:?}"));
                }
            }
        }

        let m = PbwElement::from_a(t);
        if let Ok(d) = corollary_delta_2_1(&m) {
            c21.domain_size += 1;
            let nav = navigated_delta_e_eps(&m, 2, 1);
            if nav != Some(d) {
                c21.fail(format!("{m}: formula {d}, navigation {nav:?}"));
            }
        }
        if let Ok(d) = corollary_delta_1_2(&m) {
            c12.domain_size += 1;
            let nav = navigated_delta_e_eps(&m, 1, 2);
            if nav != Some(d) {
                c12.fail(format!("{m}: formula {d}, navigation {nav:?}"));
            }
        }
        let ([a1, _, a3, _], [x1, _, x3, _]) = coords(&m);
        if a1 > a3 && x1 > x3 {
            prod.domain_size += 1;
            let p = navigated_delta_e_eps(&m, 1, 2).zip(navigated_delta_e_eps(&m, 2, 1));
            if !matches!(p, Some((d12, d21)) if d12 * d21 == 0) {
                prod.fail(format!("{m}: (D(1,2), D(2,1)) = {p:?}"));
            }
        }
    }
    vec![round, r_up, r_lo, i_up, i_lo, c21, c12, prod]
}

/// Sums domains and prefixes each counterexample with its source claim.
pub fn merge_reports(claim: String, parts: Vec<VerificationReport>) -> VerificationReport {
    let mut out = VerificationReport::new(claim);
    for p in parts {
        out.domain_size += p.domain_size;
        out.counterexamples
            .extend(p.counterexamples.into_iter().map(|c| format!("{}: {c}", p.claim)));
    }
    out
}

/// All transition-map, closed-form and corollary checks on `[0, n]^4`.
pub fn verify_lemmas(n: u32) -> VerificationReport {
    verify_closed_forms(n, &ClosedForms::reference())
}

pub fn verify_closed_forms(n: u32, forms: &ClosedForms) -> VerificationReport {
    merge_reports(
        format!("transition maps and closed forms on [0,{n}]^4"),
        lemma_reports(n, forms),
    )
}

/// For each membership rule, whether its element count equals the Weyl
/// dimension on every `lambda` in `[0, max_hw]^2`.
pub fn membership_pinning(max_hw: u32) -> Result<Vec<(MembershipRule, VerificationReport)>, PbwError> {
    let mut out = Vec::new();
    for rule in [MembershipRule::ThirdCoordinate, MembershipRule::FourthCoordinate] {
        let mut r = VerificationReport::new(format!("{rule:?} cutoff count = Weyl dimension on [0,{max_hw}]^2"));
        for l1 in 0..=max_hw {
            for l2 in 0..=max_hw {
                r.domain_size += 1;
                let want = weyl_dim_b2(u64::from(l1), u64::from(l2));
                let budget = usize::try_from(want * 4 + 16).unwrap_or(usize::MAX);
                let got = match count_members(HighestWeightB2::new(l1, l2), rule, budget) {
                    Ok(n) => n.to_string(),
                    Err(PbwError::BudgetExceeded(_)) => format!("> {budget}"),
                    Err(e) => return Err(e),
                };
                if got != want.to_string() {
                    r.fail(format!("({l1},{l2}): {got} elements, Weyl dimension {want}"));
                }
            }
        }
        out.push((rule, r));
    }
    Ok(out)
}

/// Highest weights `[0, max_hw]^2` in row-major order.
pub fn hw_grid(max_hw: u32) -> Vec<HighestWeightB2> {
    (0..=max_hw)
        .flat_map(|l1| (0..=max_hw).map(move |l2| HighestWeightB2::new(l1, l2)))
        .collect()
}

/// The distinct `Delta''` cases seen over a set of highest weights.
pub fn delta2_cases(lams: &[HighestWeightB2]) -> Result<BTreeSet<(i64, i64)>, PbwError> {
    let mut out = BTreeSet::new();
    for &lam in lams {
        let g = generate(lam)?;
        let v = LocalView::new(&g).expect("generated graphs are good");
        for x in g.vertices() {
            if v.s6_hypothesis(1, 2, x) {
                if let Ok(d) = v.d_minus_data(1, 2, x) {
                    out.insert((d.delta2.0, d.delta2.1));
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn weyl_b2_examples() {
        assert_eq!(weyl_dim_b2(0, 0), 1);
        assert_eq!(weyl_dim_b2(1, 1), 16);
        assert_eq!(weyl_dim_b2(3, 0), 20);
        assert_eq!(weyl_dim_b2(0, 2), 14);
        assert_eq!(weyl_dim_b2(1, 0), 4);
        assert_eq!(weyl_dim_b2(0, 1), 5);
    }

    #[test]
    fn weyl_general_examples() {
        assert_eq!(weyl_dim_general(&Gcm::b2(), &PairingVector(vec![1, 1])), Ok(16));
        assert_eq!(weyl_dim_general(&Gcm::b3(), &PairingVector(vec![1, 0, 0])), Ok(7));
        assert_eq!(weyl_dim_general(&Gcm::b3(), &PairingVector(vec![0, 0, 1])), Ok(8));
        assert_eq!(weyl_dim_general(&Gcm::c3(), &PairingVector(vec![1, 0, 0])), Ok(6));
        assert_eq!(weyl_dim_general(&Gcm::a2(), &PairingVector(vec![1, 1])), Ok(8));
        assert_eq!(weyl_dim_general(&Gcm::a1_a1(), &PairingVector(vec![2, 3])), Ok(12));
        for a in [Gcm::b2(), Gcm::b3(), Gcm::a2()] {
            assert_eq!(weyl_dim_general(&a, &PairingVector::zeros(a.rank())), Ok(1));
        }
        assert_eq!(positive_roots(&Gcm::b2()).unwrap().len(), 4);
        assert_eq!(positive_roots(&Gcm::b3()).unwrap().len(), 9);
    }

    #[test]
    fn weyl_general_rejects() {
        let affine = Gcm::from_rows(vec![vec![2, -2], vec![-2, 2]]).unwrap();
        assert!(matches!(
            weyl_dim_general(&affine, &PairingVector(vec![1, 0])),
            Err(OracleError::NotFiniteType(_))
        ));
        assert!(matches!(
            weyl_dim_general(&Gcm::b2(), &PairingVector(vec![1])),
            Err(OracleError::RankMismatch { .. })
        ));
        assert!(matches!(
            weyl_dim_general(&Gcm::b2(), &PairingVector(vec![-1, 0])),
            Err(OracleError::NotDominant(_))
        ));
    }

    #[test]
    fn b2_coroots() {
        let roots = positive_roots(&Gcm::b2()).unwrap();
        let find = |r: Vec<i64>| roots.iter().find(|(a, _)| *a == r).unwrap().1.clone();
        assert_eq!(find(vec![1, 1]), vec![1, 2]);
        assert_eq!(find(vec![2, 1]), vec![1, 1]);
    }

    #[test]
    fn family_examples() {
        let m = PbwElement::new([1, 1, 1, 1], [1, 1, 1, 1]);
        assert_eq!(families(&m), vec![Family::X1]);
        assert!(in_c1_family(&PbwElement::new([2, 1, 3, 0], [2, 2, 0, 5])));
        assert!(in_s9_family(&PbwElement::new([2, 1, 0, 2], [1, 0, 2, 0])));
        assert!(families(&PbwElement::zero()).is_empty());
    }

    #[test]
    fn kakunin1_examples() {
        let r = verify_kakunin1(HighestWeightB2::new(0, 0)).unwrap();
        assert!(r.pass());
        let r = verify_kakunin1(HighestWeightB2::new(1, 1)).unwrap();
        assert!(r.pass(), "{:?}", r.counterexamples);
        let g = generate(HighestWeightB2::new(1, 1)).unwrap();
        let v = LocalView::new(&g).unwrap();
        let x = g
            .vertices()
            .find(|&x| label(&g, x) == PbwElement::new([1, 1, 1, 1], [1, 1, 1, 1]))
            .unwrap();
        assert!(v.s6_hypothesis(1, 2, x));
        assert_eq!(v.d_minus_data(1, 2, x).unwrap().delta2, DeltaPair(0, 1));
        let z = v.q1_minus_z(1, 2, x).unwrap();
        assert_eq!(label(&g, z), PbwElement::zero());
    }

    #[test]
    fn kakunin2_and_3_examples() {
        for lam in [HighestWeightB2::new(0, 0), HighestWeightB2::new(2, 2)] {
            assert!(verify_kakunin2(lam).unwrap().pass());
            assert!(verify_kakunin3(lam).unwrap().pass());
        }
        let m = PbwElement::new([2, 1, 0, 2], [1, 0, 2, 0]);
        let z = crate::pbw::apply_word(&m, Direction::E, &[1, 2, 2, 1, 1], crate::pbw::CrystalKind::Infinity);
        assert_eq!(z, Some(PbwElement::new([1, 0, 0, 1], [0, 1, 0, 0])));
    }

    #[test]
    fn suites_see_nonvacuous_domains() {
        let cases = delta2_cases(&hw_grid(3)).unwrap();
        assert_eq!(cases, BTreeSet::from([(0, 0), (0, 1), (1, 1)]));
    }

    #[test]
    fn lemma_examples() {
        let r = verify_lemmas(1);
        assert!(r.pass(), "{:?}", r.counterexamples);
        let r = verify_lemmas(4);
        assert!(r.pass(), "{:?}", r.counterexamples);
        let parts = lemma_reports(4, &ClosedForms::reference());
        assert!(parts.iter().all(|p| p.domain_size > 0));
        assert_eq!(parts[0].domain_size, 2 * 625);
    }

    #[test]
    fn injected_bug_is_caught() {
        let r = verify_closed_forms(3, &ClosedForms::with_injected_bug());
        assert!(!r.pass());
        assert!(r
            .counterexamples
            .iter()
            .all(|c| c.starts_with("closed form of R for a3 >= a1")));
    }

    #[test]
    fn membership_pins_one_rule() {
        let pins = membership_pinning(3).unwrap();
        let passing: Vec<_> = pins.iter().filter(|(_, r)| r.pass()).map(|(rule, _)| *rule).collect();
        assert_eq!(passing, vec![MembershipRule::DEFAULT]);
    }

    #[test]
    fn report_json() {
        let r = verify_kakunin2(HighestWeightB2::new(1, 1)).unwrap();
        let j = serde_json::to_value(&r).unwrap();
        assert!(j["claim"].is_string());
        assert_eq!(j["domain_size"], 16);
        assert_eq!(j["counterexamples"], serde_json::json!([]));
    }

    proptest! {
        #[test]
        fn weyl_specializes(a in 0u64..12, b in 0u64..12) {
            let general = weyl_dim_general(&Gcm::b2(), &PairingVector(vec![a as i64, b as i64])).unwrap();
            prop_assert_eq!(general, u128::from(weyl_dim_b2(a, b)));
        }
    }
}
