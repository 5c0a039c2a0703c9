//! Generalized induction of left cells.
//!
//! A datum is a family of pairs `(u, X_u)` with `u` in `U` and `X_u` a set of
//! group elements. Its basis is `{T_x C_u : u in U, x in X_u}`, restricted to
//! the products `xu` that lie in the working ball. The checks below decide the
//! five conditions that make the span of this basis behave like a left ideal
//! whose elements are unions of left cells, compute the pre-order on `U`, the
//! coefficients `r` of `bar(T_x C_u)` and the normalized coefficients `p*`,
//! and finally the induced left ideals.
//!
//! Every statement is made for the finite ball at hand. Left multiplication is
//! only examined on basis elements of length below the radius, so that no
//! product leaves the ball.

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cells::{is_left_ideal, CellGraph, CellKind, Verdict};
use crate::coxeter::{Ball, Elem, Gen, GenSet, Side};
use crate::error::{Error, Result};
use crate::g2::{self, Classifier, RegionMap};
use crate::hecke::{bar_table, compute_bound, t_elem_mul, t_gen_mul, Basis, HeckeElt};
use crate::klbasis::KlData;
use crate::laurent::{LaurentPoly, Region as Degrees};

/// How the set `X_u` of a member is described.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum XSource {
    /// Explicit words.
    Words(Vec<String>),
    /// Minimal left coset representatives of `W_J`: no right descent in `J`.
    CosetReps(GenSet),
    /// `{z : z u lies in the given region}`.
    Region(g2::Region),
    /// `(R^{t} ∩ X_J) t`: representatives having `t` as a right descent, followed by `t`.
    DescentReps { j: GenSet, t: Gen },
}

/// One element `u` of `U` together with `X_u ∩ ball`.
#[derive(Clone, Debug)]
pub struct Member {
    pub name: String,
    pub word: Vec<Gen>,
    /// `None` when `u` is longer than the ball radius.
    pub elem: Option<Elem>,
    pub source: XSource,
    /// Pairs `(x, xu)` with `xu` in the ball.
    pub x: Vec<(Elem, Elem)>,
    /// Region elements `w` for which `w u^-1` left the ball, so `l(xu) = l(x) + l(u)` cannot hold.
    pub escaped: Vec<Elem>,
}

/// Label of a basis element `T_x C_u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BasisLabel {
    pub member: usize,
    pub x: Elem,
    pub xu: Elem,
}

/// Outcome of a single condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Pass,
    Fail(Vec<String>),
    Inconclusive(String),
}

impl Status {
    pub fn is_pass(&self) -> bool {
        matches!(self, Status::Pass)
    }

    fn from_witnesses(w: Vec<String>) -> Self {
        if w.is_empty() {
            Status::Pass
        } else {
            Status::Fail(w)
        }
    }
}

/// A triple at which `P_{u1,u} T_x T_{u1}` has a coefficient outside `v^-1 Z[v^-1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct I5Failure {
    pub member: usize,
    pub u1: Elem,
    pub x: Elem,
}

#[derive(Clone, Debug)]
pub struct ConditionReport {
    /// Statuses of I1 to I5 in order.
    pub statuses: [Status; 5],
    pub i5_failures: Vec<I5Failure>,
    /// Number of products `T_s T_x C_u` reduced for I4.
    pub i4_products: usize,
}

impl ConditionReport {
    pub fn status(&self, i: usize) -> &Status {
        &self.statuses[i - 1]
    }

    pub fn all_pass(&self) -> bool {
        self.statuses.iter().all(Status::is_pass)
    }

    pub fn to_json(&self) -> Value {
        let conds: Vec<Value> = self
            .statuses
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let (status, detail) = match s {
                    Status::Pass => ("pass", json!(null)),
                    Status::Fail(w) => ("fail", json!(w)),
                    Status::Inconclusive(why) => ("inconclusive", json!(why)),
                };
                json!({"condition": format!("I{}", i + 1), "status": status, "witnesses": detail})
            })
            .collect();
        json!({"conditions": conds, "i4_products": self.i4_products})
    }
}

/// The pre-order on `U` and its equivalence classes.
#[derive(Clone, Debug)]
pub struct Preorder {
    /// `below[u]` holds the members `v` with `v ⪯ u`.
    pub below: Vec<FixedBitSet>,
    pub classes: Vec<Vec<usize>>,
}

impl Preorder {
    pub fn leq(&self, v: usize, u: usize) -> bool {
        self.below[u].contains(v)
    }
}

struct StepScan {
    direct: Vec<FixedBitSet>,
    failures: Vec<String>,
    products: usize,
}

/// An induction datum over the ball of a KL table.
pub struct InductionDatum<'a> {
    kl: &'a KlData,
    pub name: String,
    pub members: Vec<Member>,
    /// Basis labels sorted by `xu`.
    pub basis: Vec<BasisLabel>,
    index: HashMap<Elem, usize>,
    duplicates: Vec<(usize, usize)>,
    tc: Vec<OnceLock<HeckeElt>>,
    r: Vec<OnceLock<BTreeMap<usize, LaurentPoly>>>,
    bar: OnceLock<Vec<HeckeElt>>,
    steps: OnceLock<StepScan>,
    preorder: OnceLock<Preorder>,
}

impl std::fmt::Debug for InductionDatum<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("InductionDatum")
            .field("name", &self.name)
            .field("members", &self.members.len())
            .field("basis", &self.basis.len())
            .finish()
    }
}

/// A member before its `X_u` has been enumerated.
#[derive(Clone, Debug)]
pub struct MemberSpec {
    pub name: String,
    pub word: Vec<Gen>,
    pub source: XSource,
}

impl<'a> InductionDatum<'a> {
    /// Enumerates every `X_u` inside the ball. A classifier is needed only for region sources.
    pub fn new(
        kl: &'a KlData,
        name: impl Into<String>,
        specs: Vec<MemberSpec>,
        classifier: Option<&Classifier>,
    ) -> Result<Self> {
        let ball = kl.ball();
        let region_map = if specs.iter().any(|s| matches!(s.source, XSource::Region(_))) {
            let c = classifier.ok_or_else(|| Error::PreconditionViolated("region sources need a classifier".into()))?;
            Some(RegionMap::new(c, ball)?)
        } else {
            None
        };
        let mut members = Vec::with_capacity(specs.len());
        for spec in specs {
            members.push(enumerate_member(ball, spec, region_map.as_ref())?);
        }
        let mut basis: Vec<BasisLabel> = members
            .iter()
            .enumerate()
            .flat_map(|(m, mem)| mem.x.iter().map(move |&(x, xu)| BasisLabel { member: m, x, xu }))
            .collect();
        basis.sort_by_key(|b| (b.xu, b.member));
        let mut index = HashMap::with_capacity(basis.len());
        let mut duplicates = Vec::new();
        for (i, b) in basis.iter().enumerate() {
            if let Some(&j) = index.get(&b.xu) {
                duplicates.push((j, i));
            } else {
                index.insert(b.xu, i);
            }
        }
        let n = basis.len();
        Ok(Self {
            kl,
            name: name.into(),
            members,
            basis,
            index,
            duplicates,
            tc: (0..n).map(|_| OnceLock::new()).collect(),
            r: (0..n).map(|_| OnceLock::new()).collect(),
            bar: OnceLock::new(),
            steps: OnceLock::new(),
            preorder: OnceLock::new(),
        })
    }

    pub fn kl(&self) -> &'a KlData {
        self.kl
    }

    pub fn ball(&self) -> &'a Ball {
        self.kl.ball()
    }

    /// Index of a member by name.
    pub fn member(&self, name: &str) -> Option<usize> {
        self.members.iter().position(|m| m.name == name)
    }

    /// Basis index of `T_y C_v`.
    pub fn basis_index(&self, y: Elem, member: usize) -> Option<usize> {
        let u = self.members[member].elem?;
        let yv = self.ball().mul(y, u)?;
        let i = *self.index.get(&yv)?;
        (self.basis[i].member == member && self.basis[i].x == y).then_some(i)
    }

    /// Basis index of the element labelled by a product `xu`.
    pub fn basis_of_product(&self, xu: Elem) -> Option<usize> {
        self.index.get(&xu).copied()
    }

    /// The set `{xu}` over the given members.
    pub fn product_set(&self, members: &[usize]) -> FixedBitSet {
        let mut m = FixedBitSet::with_capacity(self.ball().len());
        for b in &self.basis {
            if members.contains(&b.member) {
                m.insert(b.xu.idx());
            }
        }
        m
    }

    pub fn label_string(&self, b: usize) -> String {
        let l = self.basis[b];
        format!("T_{} C_{}", self.ball().word_string(l.x), self.members[l.member].name)
    }

    /// `T_x C_u` in the T basis.
    pub fn tc(&self, b: usize) -> &HeckeElt {
        self.tc[b].get_or_init(|| {
            let l = self.basis[b];
            let u = self.members[l.member].elem.expect("members with basis elements lie in the ball");
            t_elem_mul(self.ball(), l.x, self.kl.c_elt(u)).expect("support is bounded by l(xu)")
        })
    }

    fn bar_table(&self) -> &[HeckeElt] {
        self.bar.get_or_init(|| bar_table(self.ball()))
    }

    /// Greedy elimination of leading terms against the basis. Returns the
    /// coefficients and the irreducible remainder.
    pub fn reduce(&self, mut h: HeckeElt) -> (BTreeMap<usize, LaurentPoly>, HeckeElt) {
        let mut coeffs: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
        let mut rest = HeckeElt::zero(Basis::T);
        while let Some((w, c)) = h.leading().map(|(w, c)| (w, c.clone())) {
            match self.index.get(&w) {
                Some(&b) => {
                    h.add_scaled(self.tc(b), &(-&c));
                    *coeffs.entry(b).or_default() += &c;
                }
                None => {
                    h.add_term(w, &(-&c));
                    rest.add_term(w, &c);
                }
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        (coeffs, rest)
    }

    fn scan(&self) -> &StepScan {
        self.steps.get_or_init(|| {
            let ball = self.ball();
            let n = self.members.len();
            let mut direct: Vec<FixedBitSet> = (0..n)
                .map(|i| {
                    let mut m = FixedBitSet::with_capacity(n);
                    m.insert(i);
                    m
                })
                .collect();
            let mut failures = Vec::new();
            let mut products = 0;
            for (b, l) in self.basis.iter().enumerate() {
                if ball.length(l.xu) >= ball.radius() {
                    continue;
                }
                for s in 0..ball.rank() {
                    let sxu = ball.mul_gen(l.xu, s, Side::Left).expect("inside the radius");
                    if let Some(&b2) = self.index.get(&sxu) {
                        let l2 = self.basis[b2];
                        if l2.member == l.member && ball.mul_gen(l.x, s, Side::Left) == Some(l2.x) {
                            continue;
                        }
                    }
                    products += 1;
                    let h = t_gen_mul(ball, s, self.tc(b), Side::Left).expect("inside the radius");
                    let (coeffs, rest) = self.reduce(h);
                    if let Some((w, _)) = rest.leading() {
                        failures.push(format!(
                            "T_{} {} leaves T_{}",
                            ball.system().name(s),
                            self.label_string(b),
                            ball.word_string(w)
                        ));
                    }
                    for c in coeffs.keys() {
                        direct[l.member].insert(self.basis[*c].member);
                    }
                }
            }
            StepScan { direct, failures, products }
        })
    }

    /// Decides I1 to I5 on the ball. Failures are reported, not raised.
    pub fn check_conditions(&self) -> ConditionReport {
        let ball = self.ball();
        let mut i1 = Vec::new();
        let mut i2 = Vec::new();
        for m in &self.members {
            let Some(u) = m.elem else { continue };
            if !m.x.iter().any(|(x, _)| *x == Elem::IDENTITY) {
                i1.push(format!("e is missing from X_{}", m.name));
            }
            for &(x, xu) in &m.x {
                if ball.length(xu) != ball.length(x) + ball.length(u) {
                    i2.push(format!("{} * {} is not reduced", ball.word_string(x), m.name));
                }
            }
            for w in &m.escaped {
                i2.push(format!("{} is not of the form x {}", ball.word_string(*w), m.name));
            }
        }
        let i3: Vec<String> = self
            .duplicates
            .iter()
            .map(|(a, b)| {
                format!(
                    "{} = {}",
                    self.label_string(*a),
                    self.label_string(*b)
                )
            })
            .collect();
        let scan = self.scan();
        let mut i5_failures = Vec::new();
        for (mi, m) in self.members.iter().enumerate() {
            let Some(u) = m.elem else { continue };
            let cu = self.kl.c_elt(u);
            for (u1, p) in cu.terms() {
                if u1 == u {
                    continue;
                }
                for &(x, _) in &m.x {
                    let prod = t_elem_mul(ball, x, &HeckeElt::basis_elem(Basis::T, u1)).expect("bounded by l(xu)");
                    let ok = prod.terms().all(|(_, c)| (c * p).in_region(Degrees::StrictlyNegative));
                    if !ok {
                        i5_failures.push(I5Failure { member: mi, u1, x });
                    }
                }
            }
        }
        let i5: Vec<String> = i5_failures
            .iter()
            .map(|f| {
                format!(
                    "u = {}, u1 = {}, x = {}",
                    self.members[f.member].name,
                    ball.word_string(f.u1),
                    ball.word_string(f.x)
                )
            })
            .collect();
        let i4 = if scan.failures.is_empty() && scan.products == 0 && !self.basis.is_empty() {
            Status::Inconclusive("every product is trivial or leaves the ball".into())
        } else {
            Status::from_witnesses(scan.failures.clone())
        };
        ConditionReport {
            statuses: [
                Status::from_witnesses(i1),
                Status::from_witnesses(i2),
                Status::from_witnesses(i3),
                i4,
                Status::from_witnesses(i5),
            ],
            i5_failures,
            i4_products: scan.products,
        }
    }

    /// Transitive closure of the relation witnessed by the reductions, with classes.
    pub fn preorder(&self) -> &Preorder {
        self.preorder.get_or_init(|| {
            let n = self.members.len();
            let mut below = self.scan().direct.clone();
            // Floyd-Warshall on bit rows.
            for k in 0..n {
                for i in 0..n {
                    if below[i].contains(k) {
                        let row = below[k].clone();
                        below[i].union_with(&row);
                    }
                }
            }
            let mut classes: Vec<Vec<usize>> = Vec::new();
            let mut seen = vec![false; n];
            for i in 0..n {
                if seen[i] {
                    continue;
                }
                let class: Vec<usize> = (0..n).filter(|&j| below[i].contains(j) && below[j].contains(i)).collect();
                for &j in &class {
                    seen[j] = true;
                }
                classes.push(class);
            }
            Preorder { below, classes }
        })
    }

    /// `xu ⊑ yv`: Bruhat below and `u ⪯ v`, or equal.
    pub fn sqsubseteq(&self, a: usize, b: usize) -> bool {
        let (la, lb) = (self.basis[a], self.basis[b]);
        a == b || (self.ball().bruhat_lt(la.xu, lb.xu) && self.preorder().leq(la.member, lb.member))
    }

    /// The coefficients `r_{xu,yv}` of `bar(T_y C_v) = sum bar(r_{xu,yv}) T_x C_u`, keyed by basis index.
    pub fn gen_r(&self, b: usize) -> Result<&BTreeMap<usize, LaurentPoly>> {
        if let Some(r) = self.r[b].get() {
            return Ok(r);
        }
        let table = self.bar_table();
        let mut h = HeckeElt::zero(Basis::T);
        for (w, c) in self.tc(b).terms() {
            h.add_scaled(&table[w.idx()], &c.bar());
        }
        let (coeffs, rest) = self.reduce(h);
        if let Some((w, _)) = rest.leading() {
            return Err(Error::HypothesisFailed {
                witness: format!("bar({})", self.label_string(b)),
                offending: format!("T_{}", self.ball().word_string(w)),
            });
        }
        let r: BTreeMap<usize, LaurentPoly> = coeffs.into_iter().map(|(k, c)| (k, c.bar())).collect();
        Ok(self.r[b].get_or_init(|| r))
    }

    /// `sum_{zw} bar(r_{xu,zw}) r_{zw,yv}` for basis indices `a = xu`, `b = yv`.
    pub fn delta(&self, a: usize, b: usize) -> Result<LaurentPoly> {
        let mut sum = LaurentPoly::zero();
        for (zw, r_zw_b) in self.gen_r(b)? {
            if let Some(r_a_zw) = self.gen_r(*zw)?.get(&a) {
                sum.add_product(&r_a_zw.bar(), r_zw_b);
            }
        }
        Ok(sum)
    }

    /// The family `p*_{xu,yv}` in `v^-1 Z[v^-1]` making `T_y C_v + sum p* T_x C_u` bar-invariant,
    /// together with that element in the T basis. The diagonal entry is 1.
    pub fn gen_p_star(&self, b: usize) -> Result<(BTreeMap<usize, LaurentPoly>, HeckeElt)> {
        let mut p: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
        p.insert(b, LaurentPoly::one());
        for c in (0..b).rev() {
            let mut q = LaurentPoly::zero();
            for (d, pd) in p.range(c + 1..) {
                if let Some(r) = self.gen_r(*d)?.get(&c) {
                    q.add_product(&pd.bar(), &r.bar());
                }
            }
            if q.is_zero() {
                continue;
            }
            if !(&q + &q.bar()).is_zero() {
                return Err(Error::HypothesisFailed {
                    witness: self.label_string(c),
                    offending: "non-antisymmetric correction".into(),
                });
            }
            let pc = q.negative_part();
            if !pc.is_zero() {
                p.insert(c, pc);
            }
        }
        let mut tilde = HeckeElt::zero(Basis::T);
        for (d, pd) in &p {
            tilde.add_scaled(self.tc(*d), pd);
        }
        Ok((p, tilde))
    }

    /// `{xu : u in subset}` certified as a left ideal.
    ///
    /// When I5 fails for some member of the subset, every failing `T_x C_u` is
    /// accepted only if the bar-invariant element built from it differs from
    /// `C_{xu}` by KL basis elements of the set itself.
    pub fn induced_ideal(&self, report: &ConditionReport, subset: &[usize]) -> Result<InducedIdeal> {
        let ball = self.ball();
        let pre = self.preorder();
        for &u in subset {
            for v in pre.below[u].ones() {
                if !subset.contains(&v) {
                    return Err(Error::NotDownwardClosed(self.members[v].name.clone()));
                }
            }
        }
        for i in 0..4 {
            if let Status::Fail(w) = &report.statuses[i] {
                return Err(Error::PreconditionViolated(format!("I{} fails: {}", i + 1, w[0])));
            }
        }
        let elements = self.product_set(subset);
        let mut repairs = Vec::new();
        for f in &report.i5_failures {
            if !subset.contains(&f.member) {
                continue;
            }
            let b = self.basis_index(f.x, f.member).expect("failure comes from a basis element");
            if repairs.iter().any(|r: &Repair| r.basis == b) {
                continue;
            }
            let (_, tilde) = self.gen_p_star(b)?;
            let mut diff = self.kl.to_c_basis(&tilde);
            diff.add_term(self.basis[b].xu, &LaurentPoly::from(-1));
            for (z, _) in diff.terms() {
                if !elements.contains(z.idx()) {
                    return Err(Error::HypothesisFailed {
                        witness: self.label_string(b),
                        offending: format!("C_{}", ball.word_string(z)),
                    });
                }
            }
            repairs.push(Repair { basis: b, correction: diff });
        }
        let graph = CellGraph::build(self.kl, CellKind::Left);
        let verdict = is_left_ideal(self.kl, &graph, &elements);
        Ok(InducedIdeal { elements, verdict, repairs })
    }
}

/// A basis element whose bar-invariant normalization is not `C_{xu}`.
#[derive(Clone, Debug)]
pub struct Repair {
    pub basis: usize,
    /// `C~ - C_{xu}` in the C basis.
    pub correction: HeckeElt,
}

#[derive(Clone, Debug)]
pub struct InducedIdeal {
    pub elements: FixedBitSet,
    /// Independent check against the KL edges of the ball.
    pub verdict: Verdict,
    pub repairs: Vec<Repair>,
}

fn enumerate_member(ball: &Ball, spec: MemberSpec, regions: Option<&RegionMap>) -> Result<Member> {
    let elem = ball.mul_word(Elem::IDENTITY, &spec.word, Side::Right).filter(|u| ball.length(*u) == spec.word.len());
    let mut x = Vec::new();
    let mut escaped = Vec::new();
    if let Some(u) = elem {
        let room = ball.radius() - ball.length(u);
        let mut push = |z: Elem| {
            if let Some(zu) = ball.mul(z, u) {
                x.push((z, zu));
            }
        };
        match &spec.source {
            XSource::Words(words) => {
                for w in words {
                    match ball.parse(w) {
                        Ok(z) => push(z),
                        Err(Error::NotInBall(..)) => {}
                        Err(e) => return Err(e),
                    }
                }
            }
            XSource::CosetReps(j) => {
                for z in ball.up_to(room) {
                    if ball.right_descents(z).iter().all(|s| !j.contains(s)) {
                        push(z);
                    }
                }
            }
            XSource::DescentReps { j, t } => {
                for y in ball.up_to(room + 1) {
                    let rd = ball.right_descents(y);
                    if rd.contains(*t) && rd.iter().all(|s| !j.contains(s)) {
                        push(ball.mul_gen(y, *t, Side::Right).expect("descent"));
                    }
                }
            }
            XSource::Region(r) => {
                let map = regions.expect("classifier supplied");
                let inv: Vec<Gen> = spec.word.iter().rev().copied().collect();
                for w in map.members(*r) {
                    match ball.mul_word(w, &inv, Side::Right) {
                        Some(z) => x.push((z, w)),
                        None => escaped.push(w),
                    }
                }
            }
        }
    }
    x.sort();
    x.dedup();
    Ok(Member { name: spec.name, word: spec.word, elem, source: spec.source, x, escaped })
}

/// Built-in data sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Preset {
    /// `U = W_J`, `X_u = X_J`.
    Parabolic(GenSet),
    /// `U = t W'`, `X_u = (R^{t} ∩ X_{S'}) t`, valid when `L(t)` exceeds the bound of `W'`.
    Theorem4 { s_prime: GenSet, t: Gen },
    /// The sets `C_i` together with `A_i` and `A'_i`.
    G2CSets,
    /// The construction isolating `B1`.
    G2B1,
    /// The construction isolating `B3`, where I5 fails.
    G2B3,
}

impl Preset {
    /// Parses `parabolic(s2,s3)`, `theorem4(s2,s3;s1)`, `g2_C_sets`, `g2_B1`, `g2_B3`.
    pub fn parse(ball: &Ball, text: &str) -> Result<Self> {
        let text = text.trim();
        let gens = |s: &str| -> Result<GenSet> { Ok(GenSet::from_gens(ball.parse_gens(s)?)) };
        if let Some(rest) = text.strip_prefix("parabolic(").and_then(|r| r.strip_suffix(')')) {
            return Ok(Preset::Parabolic(gens(rest)?));
        }
        if let Some(rest) = text.strip_prefix("theorem4(").and_then(|r| r.strip_suffix(')')) {
            let (j, t) = rest
                .split_once(';')
                .ok_or_else(|| Error::InvalidData(format!("expected theorem4(J;t), got {text}")))?;
            let t = ball.parse_gens(t)?;
            if t.len() != 1 {
                return Err(Error::InvalidData("theorem4 needs exactly one generator t".into()));
            }
            return Ok(Preset::Theorem4 { s_prime: gens(j)?, t: t[0] });
        }
        match text {
            "g2_C_sets" => Ok(Preset::G2CSets),
            "g2_B1" => Ok(Preset::G2B1),
            "g2_B3" => Ok(Preset::G2B3),
            _ => Err(Error::InvalidData(format!("unknown preset {text}"))),
        }
    }
}

fn gen_set(names: &[&str], ball: &Ball) -> GenSet {
    GenSet::from_gens(names.iter().map(|n| ball.system().gen_by_name(n).expect("generator")))
}

/// Least elements of the regions, as words, read off a ball deep enough to contain all of them.
fn g2_anchor_words(ball: &Ball, classifier: &Classifier) -> Result<HashMap<String, Vec<Gen>>> {
    let deep = Ball::new(ball.system().clone(), 18)?;
    let map = RegionMap::new(classifier, &deep)?;
    let anchors = g2::Anchors::new(&map)?;
    let mut out = HashMap::new();
    for i in 0..6 {
        for (prefix, e) in [("u", anchors.u[i]), ("v", anchors.v[i]), ("v'", anchors.v_prime[i])] {
            out.insert(format!("{prefix}{}", i + 1), deep.word(e).iter().map(|g| *g as Gen).collect());
        }
    }
    Ok(out)
}

/// Builds the datum of a preset.
pub fn build_preset<'a>(kl: &'a KlData, preset: &Preset, classifier: Option<&Classifier>) -> Result<InductionDatum<'a>> {
    let ball = kl.ball();
    match preset {
        Preset::Parabolic(j) => {
            let par = ball.coset_data(*j)?;
            let specs = par
                .elements
                .iter()
                .map(|&u| MemberSpec {
                    name: ball.word_string(u),
                    word: ball.word(u).iter().map(|g| *g as Gen).collect(),
                    source: XSource::CosetReps(*j),
                })
                .collect();
            InductionDatum::new(kl, format!("parabolic({})", ball.gen_set_string(*j)), specs, None)
        }
        Preset::Theorem4 { s_prime, t } => {
            let bound = compute_bound(ball, *s_prime)?;
            let weight = ball.system().weight(*t);
            if weight <= bound {
                return Err(Error::WeightTooSmall { weight, bound });
            }
            let par = ball.coset_data(*s_prime)?;
            let tw = ball.gen_elem(*t);
            let mut specs = Vec::new();
            for &w in &par.elements {
                let u = ball.mul(tw, w).ok_or_else(|| Error::ParabolicNotClosedInBall(ball.gen_set_string(*s_prime)))?;
                specs.push(MemberSpec {
                    name: ball.word_string(u),
                    word: ball.word(u).iter().map(|g| *g as Gen).collect(),
                    source: XSource::DescentReps { j: *s_prime, t: *t },
                });
            }
            InductionDatum::new(
                kl,
                format!("theorem4({};{})", ball.gen_set_string(*s_prime), ball.system().name(*t)),
                specs,
                None,
            )
        }
        Preset::G2CSets | Preset::G2B1 | Preset::G2B3 => {
            let classifier =
                classifier.ok_or_else(|| Error::PreconditionViolated("G2 presets need the region classifier".into()))?;
            let words = g2_anchor_words(ball, classifier)?;
            let parabolic = XSource::CosetReps(gen_set(&["s1", "s2"], ball));
            let anchor = |name: &str, source: XSource| MemberSpec {
                name: name.to_string(),
                word: words[name].clone(),
                source,
            };
            let region_c = |i: u8| XSource::Region(g2::Region::C(i));
            let mut specs = Vec::new();
            let (name, list): (&str, Vec<(&str, XSource)>) = match preset {
                Preset::G2CSets => {
                    let mut l = Vec::new();
                    for i in 1..=6u8 {
                        l.push((["u1", "u2", "u3", "u4", "u5", "u6"][i as usize - 1], region_c(i)));
                    }
                    for n in ["v1", "v2", "v3", "v4", "v5", "v6", "v'1", "v'2", "v'3", "v'4", "v'5", "v'6"] {
                        l.push((n, parabolic.clone()));
                    }
                    ("g2_C_sets", l)
                }
                Preset::G2B1 => {
                    specs.push(MemberSpec {
                        name: "u".into(),
                        word: ball.parse_gens("s1.s3.s2.s1")?,
                        source: XSource::Region(g2::Region::B(1)),
                    });
                    let l = vec![
                        ("u1", region_c(1)),
                        ("v1", parabolic.clone()),
                        ("v'1", parabolic.clone()),
                        ("u2", region_c(2)),
                        ("v2", parabolic.clone()),
                        ("v'2", parabolic.clone()),
                        ("v3", parabolic.clone()),
                    ];
                    ("g2_B1", l)
                }
                _ => {
                    specs.push(MemberSpec {
                        name: "v".into(),
                        word: ball.parse_gens("s1.s3.s2.s1.s2.s3")?,
                        source: XSource::Region(g2::Region::B(3)),
                    });
                    let l = vec![
                        ("u4", region_c(4)),
                        ("v4", parabolic.clone()),
                        ("v'4", parabolic.clone()),
                        ("v3", parabolic.clone()),
                        ("v2", parabolic.clone()),
                        ("v5", parabolic.clone()),
                    ];
                    ("g2_B3", l)
                }
            };
            for (n, src) in list {
                specs.push(anchor(n, src));
            }
            InductionDatum::new(kl, name, specs, Some(classifier))
        }
    }
}

/// User-supplied datum file.
#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct DatumFile {
    pub name: String,
    #[serde(rename = "U")]
    pub members: Vec<MemberEntry>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct MemberEntry {
    pub u: String,
    #[serde(default)]
    pub name: Option<String>,
    #[serde(rename = "X")]
    pub x: XEntry,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum XEntry {
    Words(Vec<String>),
    Spec(String),
}

impl DatumFile {
    /// Resolves the entries against a ball: `coset_reps(J)` and `classifier_region(label, shifted_by=u)`.
    pub fn member_specs(&self, ball: &Ball) -> Result<Vec<MemberSpec>> {
        self.members
            .iter()
            .map(|m| {
                let word = ball.parse_gens(&m.u)?;
                let source = match &m.x {
                    XEntry::Words(w) => XSource::Words(w.clone()),
                    XEntry::Spec(s) => parse_x_spec(ball, s)?,
                };
                Ok(MemberSpec { name: m.name.clone().unwrap_or_else(|| m.u.clone()), word, source })
            })
            .collect()
    }
}

fn parse_x_spec(ball: &Ball, text: &str) -> Result<XSource> {
    let text = text.trim();
    if let Some(j) = text.strip_prefix("coset_reps(").and_then(|r| r.strip_suffix(')')) {
        return Ok(XSource::CosetReps(GenSet::from_gens(ball.parse_gens(j)?)));
    }
    if let Some(args) = text.strip_prefix("classifier_region(").and_then(|r| r.strip_suffix(')')) {
        let mut parts = args.split(',').map(str::trim);
        let label = parts.next().unwrap_or_default();
        let region = g2::Region::parse(label).ok_or_else(|| Error::InvalidData(format!("unknown region {label}")))?;
        match parts.next() {
            None | Some("shifted_by=u") => return Ok(XSource::Region(region)),
            Some(other) => return Err(Error::InvalidData(format!("unsupported region argument {other}"))),
        }
    }
    Err(Error::InvalidData(format!("unrecognized X specification {text}")))
}

/// The classes of the pre-order as sets of member names.
pub fn class_names(datum: &InductionDatum) -> Vec<Vec<String>> {
    datum
        .preorder()
        .classes
        .iter()
        .map(|c| c.iter().map(|i| datum.members[*i].name.clone()).collect())
        .collect()
}

/// Whether two words name the same group element of the ball.
pub fn same_element(ball: &Ball, a: &str, b: &str) -> Result<bool> {
    Ok(ball.parse(a)? == ball.parse(b)?)
}

/// `Y_v = {y in X_v : l(y s2 s1 s2) = l(y) - 3}` for the B3 preset.
pub fn b3_y_set(datum: &InductionDatum) -> Vec<Elem> {
    let ball = datum.ball();
    let v = datum.member("v").expect("B3 preset");
    let tail = ball.parse_gens("s2.s1.s2").expect("generators");
    datum.members[v]
        .x
        .iter()
        .filter_map(|&(y, _)| {
            let y0 = ball.mul_word(y, &tail, Side::Right)?;
            (ball.length(y0) + 3 == ball.length(y)).then_some(y)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cells::{cells_of, CellPartition};
    use crate::coxeter::CoxeterSystem;

    fn kl(a: i32, radius: usize) -> KlData {
        KlData::new(Ball::new(CoxeterSystem::g2_affine(a, 1).unwrap(), radius).unwrap()).unwrap()
    }

    fn classifier() -> &'static Classifier {
        static C: OnceLock<Classifier> = OnceLock::new();
        C.get_or_init(|| Classifier::new().unwrap())
    }

    #[test]
    fn parabolic_preset_passes_and_matches_internal_order() {
        let k = kl(5, 9);
        let ball = k.ball();
        let j = gen_set(&["s2", "s3"], ball);
        let d = build_preset(&k, &Preset::Parabolic(j), None).unwrap();
        let report = d.check_conditions();
        assert!(report.all_pass(), "{:?}", report.statuses);

        // The order inside W' computed on its own.
        let sub = Ball::new(CoxeterSystem::dihedral(3, 1, 1).unwrap(), 3).unwrap();
        let sub_kl = KlData::new(sub).unwrap();
        let cells: CellPartition = cells_of(&sub_kl, CellKind::Left);
        let pre = d.preorder();
        for (i, mi) in d.members.iter().enumerate() {
            for (k2, mk) in d.members.iter().enumerate() {
                let to_sub = |m: &Member| {
                    let word: String = m.name.replace("s2", "a").replace("s3", "b").replace('a', "s1").replace('b', "s2");
                    sub_kl.ball().parse(&word).unwrap()
                };
                let (x, y) = (to_sub(mi), to_sub(mk));
                let internal = cells.leq(cells.cell_index(x), cells.cell_index(y));
                assert_eq!(pre.leq(i, k2), internal, "{} vs {}", mi.name, mk.name);
            }
        }
    }

    #[test]
    fn r_coefficients_are_triangular_and_invert() {
        let k = kl(5, 8);
        let j = gen_set(&["s2", "s3"], k.ball());
        let d = build_preset(&k, &Preset::Parabolic(j), None).unwrap();
        for b in 0..d.basis.len() {
            let r = d.gen_r(b).unwrap();
            assert!(r[&b].is_one());
            for a in r.keys() {
                assert!(d.sqsubseteq(*a, b));
            }
            if d.basis[b].x == Elem::IDENTITY {
                assert_eq!(r.len(), 1);
            }
        }
        for b in 0..d.basis.len() {
            for a in 0..=b {
                let want = if a == b { LaurentPoly::one() } else { LaurentPoly::zero() };
                assert_eq!(d.delta(a, b).unwrap(), want);
            }
        }
    }

    #[test]
    fn p_star_recovers_kl_basis_when_i5_holds() {
        let k = kl(5, 8);
        let j = gen_set(&["s2", "s3"], k.ball());
        let d = build_preset(&k, &Preset::Parabolic(j), None).unwrap();
        for b in 0..d.basis.len() {
            let (p, tilde) = d.gen_p_star(b).unwrap();
            assert!(p[&b].is_one());
            for (c, q) in &p {
                if *c != b {
                    assert!(q.in_region(Degrees::StrictlyNegative));
                }
            }
            assert_eq!(&tilde, k.c_elt(d.basis[b].xu));
        }
    }

    #[test]
    fn theorem4_weight_hypothesis() {
        let k = kl(3, 6);
        let j = gen_set(&["s2", "s3"], k.ball());
        let t = k.ball().system().gen_by_name("s1").unwrap();
        let err = build_preset(&k, &Preset::Theorem4 { s_prime: j, t }, None).unwrap_err();
        assert_eq!(err, Error::WeightTooSmall { weight: 3, bound: 3 });

        let k = kl(5, 9);
        let d = build_preset(&k, &Preset::Theorem4 { s_prime: j, t }, None).unwrap();
        assert_eq!(d.members.len(), 6);
        let report = d.check_conditions();
        assert!(report.all_pass(), "{:?}", report.statuses);
    }

    #[test]
    fn v_prime_one_spellings_agree() {
        let k = kl(5, 12);
        assert!(same_element(k.ball(), "s2.s1.s2.s1.s2.s3.s1.s2.s1.s2.s1", "s1.s2.s1.s2.s1.s2.s3.s2.s1.s2.s1").unwrap());
    }

    #[test]
    fn datum_file_round_trip() {
        let k = kl(5, 8);
        let text = r#"{"name": "demo", "U": [
            {"u": "s1.s2.s1.s2.s1", "X": "classifier_region(C1, shifted_by=u)"},
            {"u": "s1.s2.s1.s2.s1.s2", "X": "coset_reps(s1,s2)"},
            {"u": "s2", "X": ["e", "s1"]}
        ]}"#;
        let file: DatumFile = serde_json::from_str(text).unwrap();
        let specs = file.member_specs(k.ball()).unwrap();
        assert_eq!(specs[0].source, XSource::Region(g2::Region::C(1)));
        assert!(matches!(specs[1].source, XSource::CosetReps(_)));
        let d = InductionDatum::new(&k, file.name, specs, Some(classifier())).unwrap();
        assert_eq!(d.members[2].x.len(), 2);
        assert!(d.members[0].x.iter().any(|(x, _)| *x == Elem::IDENTITY));
        assert!(parse_x_spec(k.ball(), "nonsense").is_err());
    }
}
