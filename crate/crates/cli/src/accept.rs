//! The acceptance suite: one [`Criterion`] per numbered requirement, each made of named checks.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::rc::Rc;

use fixedbitset::FixedBitSet;
use klcells::cells::{
    cells_with_interior, check_lemma_mu, is_left_ideal, propagate_ideal_right, CellGraph, CellKind,
};
use klcells::g2::{predicted_partition, Classifier, Family, Region, RegionMap};
use klcells::hecke::{bar_table, t_mul, Basis, HeckeElt};
use klcells::induction::{b3_y_set, build_preset, Preset, Status};
use klcells::klbasis::{CProduct, KlData};
use klcells::{Ball, CoxeterSystem, Elem, GenSet, LaurentPoly, Side};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

/// Largest length at which cell statements are made.
pub const INTERIOR: usize = 12;
/// Ball radius used for statements about lengths up to [`INTERIOR`].
pub const RADIUS: usize = 18;
/// Larger radius for the stability check.
pub const STABILITY_RADIUS: usize = 20;

#[derive(Clone, Debug, Default)]
pub struct AcceptOptions {
    pub seed: u64,
    /// The `klcells` binary, needed by the determinism criterion.
    pub exe: Option<PathBuf>,
    /// Directory with reference outputs.
    pub golden: Option<PathBuf>,
    /// Criteria to run; empty means all.
    pub only: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
    /// Set when the check states a claim known to be false; the reason is recorded here.
    pub expected_failure: Option<&'static str>,
}

impl Check {
    fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Self { name: name.into(), pass, detail: detail.into(), expected_failure: None }
    }

    fn from_list(name: impl Into<String>, problems: Vec<String>, ok_detail: impl Into<String>) -> Self {
        if problems.is_empty() {
            Self::new(name, true, ok_detail)
        } else {
            let shown: Vec<&str> = problems.iter().take(4).map(String::as_str).collect();
            let more = if problems.len() > 4 { format!(" (+{} more)", problems.len() - 4) } else { String::new() };
            Self::new(name, false, format!("{}{more}", shown.join("; ")))
        }
    }

    fn expect_failure(mut self, reason: &'static str) -> Self {
        self.expected_failure = Some(reason);
        self
    }
}

#[derive(Clone, Debug)]
pub struct Criterion {
    pub id: usize,
    pub title: &'static str,
    pub checks: Vec<Check>,
}

impl Criterion {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// Every failing check is a recorded expected failure, and every expected failure did fail.
    pub fn as_expected(&self) -> bool {
        self.checks.iter().all(|c| c.pass != c.expected_failure.is_some())
    }

    pub fn line(&self) -> String {
        let passed = self.checks.iter().filter(|c| c.pass).count();
        let mut s = format!(
            "criterion {:>2} {}: {} ({passed}/{} checks)",
            self.id,
            if self.pass() { "PASS" } else { "FAIL" },
            self.title,
            self.checks.len()
        );
        for c in self.checks.iter().filter(|c| !c.pass) {
            match c.expected_failure {
                Some(reason) => s.push_str(&format!(" | expected failure, {reason}: {}: {}", c.name, c.detail)),
                None => s.push_str(&format!(" | {}: {}", c.name, c.detail)),
            }
        }
        for c in self.checks.iter().filter(|c| c.pass && c.expected_failure.is_some()) {
            s.push_str(&format!(" | UNEXPECTED PASS: {}", c.name));
        }
        s
    }

    pub fn to_json(&self) -> Value {
        json!({
            "criterion": self.id,
            "title": self.title,
            "pass": self.pass(),
            "as_expected": self.as_expected(),
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name,
                "pass": c.pass,
                "detail": c.detail,
                "expected_failure": c.expected_failure,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Shared data: classifier and KL data per weights and radius, built on first use.
struct Suite {
    opts: AcceptOptions,
    classifier: Classifier,
    kl: RefCell<HashMap<(i32, i32, usize), Rc<KlData>>>,
}

impl Suite {
    fn kl(&self, a: i32, b: i32, radius: usize) -> Rc<KlData> {
        self.kl
            .borrow_mut()
            .entry((a, b, radius))
            .or_insert_with(|| {
                let sys = CoxeterSystem::g2_affine(a, b).expect("valid weights");
                Rc::new(KlData::new(Ball::new(sys, radius).expect("ball")).expect("KL data"))
            })
            .clone()
    }

    fn regions(&self, ball: &Ball) -> RegionMap {
        RegionMap::new(&self.classifier, ball).expect("affine G2 ball")
    }
}

type CriterionFn = fn(&Suite) -> Vec<Check>;

/// Runs the selected criteria in order.
pub fn run(opts: &AcceptOptions) -> Vec<Criterion> {
    let suite = Suite {
        opts: opts.clone(),
        classifier: Classifier::new().expect("bundled region data"),
        kl: RefCell::new(HashMap::new()),
    };
    let all: [(usize, &'static str, CriterionFn); 10] = [
        (1, "KL basis agrees with the bar-invariance oracle", criterion1),
        (2, "product identities and a KL polynomial", |s| criterion2(s, 5, 1)),
        (3, "M-polynomial contract", criterion3),
        (4, "affine G2 left cells match the region map", |s| criterion4(s, 5, 1)),
        (5, "small cells of the {s2,s3} construction", |s| criterion5(s, 5, 1)),
        (6, "generalized induction", criterion6),
        (7, "left ideals", criterion7),
        (8, "order structure", criterion8),
        (9, "other weight regimes", criterion9),
        (10, "determinism and golden outputs", criterion10),
    ];
    all.iter()
        .filter(|(id, _, _)| opts.only.is_empty() || opts.only.contains(id))
        .map(|(id, title, f)| Criterion { id: *id, title, checks: f(&suite) })
        .collect()
}

fn elem(ball: &Ball, word: &str) -> Elem {
    ball.parse(word).unwrap_or_else(|e| panic!("{word}: {e}"))
}

fn c_terms(terms: Vec<(Elem, LaurentPoly)>) -> HeckeElt {
    HeckeElt::from_terms(Basis::C, terms)
}

// ---------------------------------------------------------------- 1

/// `C_w` from bar invariance alone: walking down from `w`, each `p_y` is the
/// negative-degree part of `sum_{x > y} bar(p_x) R_{y,x}`, where `R_{y,x}` is
/// the coefficient of `T_y` in `bar(T_x)`.
fn oracle_c(ball: &Ball, bars: &[HeckeElt], w: Elem) -> Result<HeckeElt, String> {
    let mut p: BTreeMap<Elem, LaurentPoly> = BTreeMap::new();
    p.insert(w, LaurentPoly::one());
    let lw = ball.length(w);
    let below: Vec<Elem> = ball.elements().filter(|y| ball.length(*y) < lw).collect();
    for &y in below.iter().rev() {
        let mut q = LaurentPoly::zero();
        for (x, px) in &p {
            let r = bars[x.idx()].coeff(y);
            if !r.is_zero() {
                q.add_product(&px.bar(), &r);
            }
        }
        if q.bar() != -&q {
            return Err(format!("bar(q) != -q at y = {}", ball.word_string(y)));
        }
        let py = q.negative_part();
        if !py.is_zero() {
            p.insert(y, py);
        }
    }
    Ok(HeckeElt::from_terms(Basis::T, p))
}

fn criterion1(suite: &Suite) -> Vec<Check> {
    let kl = suite.kl(5, 1, 8);
    let ball = kl.ball();
    let bars = bar_table(ball);
    let mut problems = Vec::new();
    for w in ball.elements() {
        match oracle_c(ball, &bars, w) {
            Ok(c) if &c == kl.c_elt(w) => {}
            Ok(_) => problems.push(format!("C_{} differs", ball.word_string(w))),
            Err(e) => problems.push(e),
        }
    }
    let oracle = Check::from_list("oracle", problems, format!("{} elements of ball(8)", ball.len()));

    // C_s C_w multiplied out in the T basis against the M-polynomial formula.
    let mut problems = Vec::new();
    let mut n = 0;
    for w in ball.elements().filter(|w| ball.length(*w) < ball.radius()) {
        for s in 0..ball.rank() {
            let cs = kl.c_elt(ball.gen_elem(s));
            let prod = t_mul(ball, cs, kl.c_elt(w)).expect("inside the ball");
            let want = kl.mul_c(CProduct::CsCw, s, w).expect("inside the ball");
            n += 1;
            if kl.to_c_basis(&prod) != want {
                problems.push(format!("C_{} C_{}", ball.system().name(s), ball.word_string(w)));
            }
        }
    }
    let products = Check::from_list("C_s C_w expansion", problems, format!("{n} products"));

    let mut rng = ChaCha8Rng::seed_from_u64(suite.opts.seed);
    let elems: Vec<Elem> = ball.elements().collect();
    let mut problems = Vec::new();
    let mut tried = 0;
    while tried < 200 {
        let pick = |rng: &mut ChaCha8Rng| elems[rng.gen_range(0..elems.len())];
        let (x, y, z) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        if ball.length(x) + ball.length(y) + ball.length(z) > ball.radius() {
            continue;
        }
        tried += 1;
        let t = |e: Elem| HeckeElt::basis_elem(Basis::T, e);
        let left = t_mul(ball, &t_mul(ball, &t(x), &t(y)).expect("fits"), &t(z)).expect("fits");
        let right = t_mul(ball, &t(x), &t_mul(ball, &t(y), &t(z)).expect("fits")).expect("fits");
        if left != right {
            problems.push(format!("({}, {}, {})", ball.word_string(x), ball.word_string(y), ball.word_string(z)));
        }
    }
    let assoc = Check::from_list("associativity", problems, format!("200 triples, seed {}", suite.opts.seed));
    vec![oracle, products, assoc]
}

// ---------------------------------------------------------------- 2

fn criterion2(suite: &Suite, a: i32, b: i32) -> Vec<Check> {
    let kl = suite.kl(a, b, 14);
    let ball = kl.ball();
    let map = suite.regions(ball);
    let least = |r: Region| map.min_element(r).expect("region meets ball(14)");
    let (u1, v1, u5, v5) = (least(Region::C(1)), least(Region::A(1)), least(Region::C(5)), least(Region::A(5)));
    let s1 = ball.system().gen_by_name("s1").expect("s1");
    let s2 = ball.system().gen_by_name("s2").expect("s2");
    let minus_v = -LaurentPoly::v_pow(-ball.system().weight(s2));
    let tag = format!("({a},{b},{b})");

    let got = kl.mul_c(CProduct::TsCw, s2, u1).expect("fits");
    let want = c_terms(vec![(v1, LaurentPoly::one()), (u1, minus_v.clone())]);
    let first = Check::new(
        format!("T_s2 C_u1 {tag}"),
        got == want,
        format!("u1 = {}: {}", ball.word_string(u1), got.display(ball)),
    );

    let got = kl.mul_c(CProduct::TsCw, s2, u5).expect("fits");
    let want = c_terms(vec![(v5, LaurentPoly::one()), (u5, minus_v), (v1, LaurentPoly::one())]);
    let second = Check::new(
        format!("T_s2 C_u5 {tag}"),
        got == want,
        format!("u5 = {}: {}", ball.word_string(u5), got.display(ball)),
    );

    let par = ball.coset_data(GenSet::from_gens([1, 2])).expect("finite parabolic");
    let mut problems = Vec::new();
    for &w in &par.elements {
        let s1w = ball.mul_gen(w, s1, Side::Left).expect("fits");
        if kl.mul_c(CProduct::CsCw, s1, w).expect("fits") != HeckeElt::basis_elem(Basis::C, s1w) {
            problems.push(format!("C_s1 C_{}", ball.word_string(w)));
        }
    }
    let third = Check::from_list(
        format!("C_s1 C_w' {tag}"),
        problems,
        format!("{} elements of W_(s2,s3)", par.elements.len()),
    );

    let p = kl.kl_p(elem(ball, "s1.s2.s1.s2.s3"), elem(ball, "s1.s3.s2.s1.s2.s3"));
    let want = LaurentPoly::v_pow(-ball.system().weight(s2));
    let fourth = Check::new(format!("P polynomial {tag}"), p == want, format!("P = {p}"));
    vec![first, second, third, fourth]
}

// ---------------------------------------------------------------- 3

fn criterion3(suite: &Suite) -> Vec<Check> {
    let kl = suite.kl(5, 1, 10);
    let ball = kl.ball();
    let mut problems = Vec::new();
    let mut n = 0;
    for (s, y, w, m) in kl.m_entries() {
        n += 1;
        let l = ball.system().weight(s);
        let lo = m.min_degree().unwrap_or(0);
        let hi = m.max_degree().unwrap_or(0);
        if !m.is_bar_invariant() || lo < 1 - l || hi > l - 1 {
            problems.push(format!(
                "M^{}_({}, {}) = {m}",
                ball.system().name(s),
                ball.word_string(y),
                ball.word_string(w)
            ));
        }
    }
    let contract = Check::from_list("bar invariance and degree window", problems, format!("{n} nonzero M over ball(10)"));
    let scan = match check_lemma_mu(&kl, GenSet::from_gens([1, 2])) {
        Ok(r) => {
            let list: Vec<String> = r.violations.iter().map(|(s, y, w)| format!("{s}: ({y}, {w})")).collect();
            Check::from_list(
                "dichotomy over {s2,s3}",
                list,
                format!("{} entries, {} by adjacency", r.checked, r.second_branch),
            )
        }
        Err(e) => Check::new("dichotomy over {s2,s3}", false, e.to_string()),
    };
    vec![contract, scan]
}

// ---------------------------------------------------------------- 4

fn criterion4(suite: &Suite, a: i32, b: i32) -> Vec<Check> {
    let tag = format!("({a},{b},{b})");
    let kl = suite.kl(a, b, RADIUS);
    let ball = kl.ball();
    let computed = cells_with_interior(&kl, CellKind::Left, INTERIOR);
    let predicted = predicted_partition(&suite.classifier, ball, INTERIOR).expect("region map");
    let diff = computed.interior_diff(ball, &predicted, INTERIOR);
    let certified = computed.cells.iter().filter(|c| c.certified).count();
    let decomposition = Check::from_list(
        format!("cells equal regions on the interior {tag}"),
        diff,
        format!("{certified} certified cells up to length {INTERIOR} on ball({RADIUS})"),
    );

    let map = suite.regions(ball);
    let finite = [
        Region::Identity,
        Region::F,
        Region::E(1),
        Region::E(2),
        Region::D(1),
        Region::D(2),
        Region::D(3),
    ];
    let mut problems = Vec::new();
    for r in finite {
        let members = map.members(r);
        let cell = computed.cell_of(members[0]);
        let longest = members.iter().map(|w| ball.length(*w)).max().unwrap_or(0);
        if !cell.certified || cell.elements != members || longest >= INTERIOR {
            problems.push(format!("{r}"));
        }
    }
    let finite = Check::from_list(format!("finite cells {tag}"), problems, "e, F, E1, E2, D1, D2, D3 exact");

    let big = suite.kl(a, b, STABILITY_RADIUS);
    let ball20 = big.ball();
    let computed20 = cells_with_interior(&big, CellKind::Left, INTERIOR);
    let predicted20 = predicted_partition(&suite.classifier, ball20, INTERIOR).expect("region map");
    let stable = Check::from_list(
        format!("unchanged at radius {STABILITY_RADIUS} {tag}"),
        computed20.interior_diff(ball20, &predicted20, INTERIOR),
        "same restriction",
    );
    vec![decomposition, finite, stable]
}

// ---------------------------------------------------------------- 5

fn criterion5(suite: &Suite, a: i32, b: i32) -> Vec<Check> {
    let tag = format!("({a},{b},{b})");
    let kl = suite.kl(a, b, RADIUS);
    let ball = kl.ball();
    let left = cells_with_interior(&kl, CellKind::Left, INTERIOR);
    let two = cells_with_interior(&kl, CellKind::TwoSided, INTERIOR);
    let mut problems = Vec::new();
    for set in [vec!["e"], vec!["s2", "s3.s2"], vec!["s3", "s2.s3"], vec!["s2.s3.s2"]] {
        let mut want: Vec<Elem> = set.iter().map(|w| elem(ball, w)).collect();
        want.sort();
        let cell = left.cell_of(want[0]);
        if !cell.certified || cell.elements != want {
            let got: Vec<String> = cell.elements.iter().take(6).map(|w| ball.word_string(*w)).collect();
            problems.push(format!("{{{}}} sits in {{{}}}", set.join(", "), got.join(", ")));
        }
    }
    let cells = Check::from_list(format!("left cells {tag}"), problems, "{e}, {s2, s3s2}, {s3, s2s3}, {s2s3s2}");
    let quad: Vec<Elem> = ["s2", "s3", "s2.s3", "s3.s2"].iter().map(|w| elem(ball, w)).collect();
    let one = quad.iter().all(|w| two.same_cell(*w, quad[0]));
    let two_sided = Check::new(
        format!("one two-sided cell {tag}"),
        one,
        format!("two-sided cell of size {}", two.cell_of(quad[0]).elements.len()),
    );
    vec![cells, two_sided]
}

// ---------------------------------------------------------------- 6

fn criterion6(suite: &Suite) -> Vec<Check> {
    let kl = suite.kl(5, 1, 12);
    let ball = kl.ball();
    let c = Some(&suite.classifier);
    let mut checks = Vec::new();
    for preset in ["parabolic(s2,s3)", "parabolic(s1,s2)", "g2_C_sets"] {
        let p = Preset::parse(ball, preset).expect("preset");
        let check = match build_preset(&kl, &p, c) {
            Ok(d) => {
                let report = d.check_conditions();
                let bad: Vec<String> = report
                    .statuses
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| !s.is_pass())
                    .map(|(i, s)| format!("I{}: {:?}", i + 1, s))
                    .collect();
                Check::from_list(format!("{preset} satisfies I1-I5"), bad, format!("{} basis elements", d.basis.len()))
            }
            Err(e) => Check::new(format!("{preset} satisfies I1-I5"), false, e.to_string()),
        };
        checks.push(check);
    }

    let d = build_preset(&kl, &Preset::G2CSets, c).expect("C-sets preset");
    let mut problems = Vec::new();
    let n = d.basis.len();
    for bb in 0..n {
        for aa in 0..n {
            let want = if aa == bb { LaurentPoly::one() } else { LaurentPoly::zero() };
            match d.delta(aa, bb) {
                Ok(got) if got == want => {}
                Ok(got) => problems.push(format!("delta({}, {}) = {got}", d.label_string(aa), d.label_string(bb))),
                Err(e) => problems.push(e.to_string()),
            }
        }
    }
    checks.push(Check::from_list("delta identity on g2_C_sets", problems, format!("{} pairs", n * n)));

    let kl = suite.kl(5, 1, 14);
    let ball = kl.ball();
    let d = build_preset(&kl, &Preset::G2B3, c).expect("B3 preset");
    let report = d.check_conditions();
    let v = d.member("v").expect("member v");
    let witness = elem(ball, "s1.s2.s1.s2.s3");
    let ys = b3_y_set(&d);
    let first_four: Vec<String> =
        (1..=4).filter(|i| !report.status(*i).is_pass()).map(|i| format!("I{i}: {:?}", report.status(i))).collect();
    let mut problems = first_four;
    if !matches!(report.status(5), Status::Fail(_)) {
        problems.push(format!("I5 reports {:?}", report.status(5)));
    }
    for f in &report.i5_failures {
        if f.member != v || f.u1 != witness || !ys.contains(&f.x) {
            problems.push(format!(
                "unexpected failure at {} with u1 = {}, x = {}",
                d.members[f.member].name,
                ball.word_string(f.u1),
                ball.word_string(f.x)
            ));
        }
    }
    checks.push(Check::from_list(
        "g2_B3 fails I5 at the expected witness",
        problems,
        format!("{} failures, all at u1 = s1s2s1s2s3 with x in Y_v ({} elements)", report.i5_failures.len(), ys.len()),
    ));

    let tail = ball.parse_gens("s2.s1.s2").expect("word");
    let shift = elem(ball, "s1.s2.s1.s2.s1.s2.s3");
    let mut matched = 0;
    let mut problems = Vec::new();
    for &y in &ys {
        let Some(b) = d.basis_index(y, v) else { continue };
        let y0 = ball.mul_word(y, &tail, Side::Right).expect("descent");
        let Some(z) = ball.mul(y0, shift) else { continue };
        if ball.length(z) != ball.length(y0) + ball.length(shift) {
            problems.push(format!("{} is not reduced", ball.word_string(y0)));
            continue;
        }
        match d.gen_p_star(b) {
            Ok((_, tilde)) => {
                let got = kl.to_c_basis(&tilde);
                let want = c_terms(vec![(d.basis[b].xu, LaurentPoly::one()), (z, LaurentPoly::one())]);
                if got == want {
                    matched += 1;
                } else {
                    problems.push(format!("y = {}: {}", ball.word_string(y), got.display(ball)));
                }
            }
            Err(e) => problems.push(e.to_string()),
        }
    }
    if matched == 0 && problems.is_empty() {
        problems.push("no y in Y_v fits in the ball".into());
    }
    checks.push(Check::from_list("p* repair for g2_B3", problems, format!("{matched} elements y reproduce the repair")));
    checks
}

// ---------------------------------------------------------------- 7

fn descent_set(ball: &Ball, j: GenSet) -> FixedBitSet {
    let mut m = FixedBitSet::with_capacity(ball.len());
    for w in ball.elements() {
        if j.is_subset(ball.right_descents(w)) {
            m.insert(w.idx());
        }
    }
    m
}

/// Elements of `set` of length at most `max_len`, by region name.
fn restricted(ball: &Ball, set: &FixedBitSet, max_len: usize) -> BTreeSet<Elem> {
    set.ones().map(|i| Elem(i as u32)).filter(|w| ball.length(*w) <= max_len).collect()
}

fn set_diff(ball: &Ball, map: &RegionMap, got: &BTreeSet<Elem>, want: &BTreeSet<Elem>) -> Vec<String> {
    let mut out = Vec::new();
    for w in got.difference(want) {
        out.push(format!("extra {} ({})", ball.word_string(*w), map.region(*w)));
    }
    for w in want.difference(got) {
        out.push(format!("missing {} ({})", ball.word_string(*w), map.region(*w)));
    }
    out
}

fn criterion7(suite: &Suite) -> Vec<Check> {
    let kl = suite.kl(5, 1, RADIUS);
    let ball = kl.ball();
    let map = suite.regions(ball);
    let graph = CellGraph::build(&kl, CellKind::Left);
    let gens = |names: &str| GenSet::from_gens(ball.parse_gens(names).expect("generators"));
    let mut checks = Vec::new();

    let cases = [
        (
            "R^{s1,s3}",
            "s1,s3",
            vec![Region::B(2), Region::A(3), Region::APrime(3), Region::A(2), Region::C(3)],
        ),
        ("R^{s2,s3}", "s2,s3", vec![Region::F, Region::B(4), Region::A(4), Region::A(5)]),
    ];
    for (name, j, regions) in cases {
        let set = descent_set(ball, gens(j));
        let got = restricted(ball, &set, INTERIOR);
        let want = restricted(ball, &map.mask(&regions), INTERIOR);
        let labels: Vec<String> = regions.iter().map(|r| r.to_string()).collect();
        let mut problems = set_diff(ball, &map, &got, &want);
        let verdict = is_left_ideal(&kl, &graph, &set);
        if !verdict.is_yes() {
            problems.push(format!("not a left ideal: {verdict:?}"));
        }
        checks.push(Check::from_list(
            format!("{name} decomposition"),
            problems,
            format!("{} up to length {INTERIOR}, left ideal", labels.join(" + ")),
        ));
    }

    // Both constructions multiply by s2 on the right, starting from A1.
    let s2 = ball.system().gen_by_name("s2").expect("s2");
    let a1 = map.mask(&[Region::A(1)]);
    let horizon = ball.radius() - 1;
    let b5_source = descent_set(ball, gens("s1,s3"));
    let b6_source = map.mask(&[
        Region::A(2),
        Region::APrime(2),
        Region::C(2),
        Region::B(1),
        Region::A(1),
        Region::APrime(1),
        Region::C(1),
        Region::A(3),
    ]);
    let b5_target = vec![Region::A(1), Region::A(5), Region::APrime(5), Region::A(6), Region::C(5), Region::B(5)];
    let b6_target = vec![Region::A(1), Region::A(6), Region::APrime(6), Region::C(6), Region::A(5), Region::B(6)];
    for (name, source, target) in [("B5", b5_source, b5_target), ("B6", b6_source, b6_target)] {
        let check = match propagate_ideal_right(&kl, &source, s2, &a1) {
            Ok(set) => {
                let got = restricted(ball, &set, horizon);
                let want = restricted(ball, &map.mask(&target), horizon);
                let labels: Vec<String> = target.iter().map(|r| r.to_string()).collect();
                Check::from_list(
                    format!("{name} ideal by right propagation"),
                    set_diff(ball, &map, &got, &want),
                    format!("{} up to length {horizon}", labels.join(" + ")),
                )
            }
            Err(e) => Check::new(format!("{name} ideal by right propagation"), false, e.to_string()),
        };
        checks.push(check);
    }

    let par = ball.coset_data(gens("s2,s3")).expect("finite parabolic");
    let mut outside = FixedBitSet::with_capacity(ball.len());
    for w in ball.elements().filter(|w| !par.contains(*w)) {
        outside.insert(w.idx());
    }
    let mut problems = Vec::new();
    if let Some(w) = outside.ones().map(|i| Elem(i as u32)).find(|w| !outside.contains(ball.inverse(*w).idx())) {
        problems.push(format!("{} has its inverse in W'", ball.word_string(w)));
    }
    let verdict = is_left_ideal(&kl, &graph, &outside);
    if !verdict.is_yes() {
        problems.push(format!("not a left ideal: {verdict:?}"));
    }
    checks.push(Check::from_list("W - W_(s2,s3)", problems, "inverse-stable left ideal"));
    checks
}

// ---------------------------------------------------------------- 8

/// Covering relations of the left-cell order drawn for affine G2, as `(lower, upper)`.
pub fn drawn_hasse() -> Vec<(Region, Region)> {
    use Region::*;
    let mut e = Vec::new();
    for i in 1..=6 {
        e.push((A(i), C(i)));
        e.push((APrime(i), C(i)));
    }
    e.extend([
        (C(1), B(1)),
        (C(2), B(1)),
        (A(3), B(1)),
        (C(3), B(2)),
        (A(2), B(2)),
        (C(4), B(3)),
        (A(3), B(3)),
        (A(5), B(3)),
        (A(4), B(4)),
        (A(5), B(4)),
        (C(5), B(5)),
        (A(6), B(5)),
        (C(6), B(6)),
        (A(1), B(6)),
        (A(5), B(6)),
        (A(2), C(4)),
        (A(1), C(5)),
        (B(1), D(1)),
        (B(2), D(1)),
        (B(3), D(3)),
        (B(4), D(3)),
        (B(2), D(3)),
        (B(5), D(2)),
        (B(6), D(2)),
        (B(4), F),
        (F, E(1)),
        (D(3), E(1)),
        (F, E(2)),
        (D(2), E(2)),
        (E(1), Identity),
        (E(2), Identity),
        (D(1), Identity),
    ]);
    e
}

const ORDER_CONFLICT: &str = "contradicted by the drawn Hasse diagram, which has no path from C_i to B_i for i = 2, 3, 4";

fn criterion8(suite: &Suite) -> Vec<Check> {
    let kl = suite.kl(5, 1, RADIUS);
    let ball = kl.ball();
    let map = suite.regions(ball);
    let left = cells_with_interior(&kl, CellKind::Left, INTERIOR);
    let two = cells_with_interior(&kl, CellKind::TwoSided, INTERIOR);
    let mut cell_of_region: BTreeMap<Region, usize> = BTreeMap::new();
    for (i, c) in left.cells.iter().enumerate().filter(|(_, c)| c.certified) {
        cell_of_region.insert(map.region(c.elements[0]), i);
    }
    let leq = |lo: Region, hi: Region| -> Option<bool> {
        Some(left.leq(*cell_of_region.get(&lo)?, *cell_of_region.get(&hi)?))
    };
    let mut checks = Vec::new();

    let mut problems = Vec::new();
    for i in 1..=6 {
        if leq(Region::A(i), Region::C(i)) != Some(true) {
            problems.push(format!("A{i} <= C{i}"));
        }
    }
    checks.push(Check::from_list("A_i <= C_i", problems, "all i"));
    let mut problems = Vec::new();
    for i in 1..=6 {
        if leq(Region::C(i), Region::B(i)) != Some(true) {
            problems.push(format!("C{i} <= B{i} does not hold"));
        }
    }
    checks.push(Check::from_list("C_i <= B_i", problems, "all i").expect_failure(ORDER_CONFLICT));

    let computed: BTreeSet<(Region, Region)> = left
        .certified_hasse()
        .into_iter()
        .map(|(lo, hi)| (map.region(left.cells[lo].elements[0]), map.region(left.cells[hi].elements[0])))
        .collect();
    let drawn: BTreeSet<(Region, Region)> = drawn_hasse()
        .into_iter()
        .filter(|(lo, hi)| cell_of_region.contains_key(lo) && cell_of_region.contains_key(hi))
        .collect();
    let mut problems = Vec::new();
    for (lo, hi) in computed.difference(&drawn) {
        problems.push(format!("extra cover {lo} < {hi}"));
    }
    for (lo, hi) in drawn.difference(&computed) {
        problems.push(format!("missing cover {lo} < {hi}"));
    }
    checks.push(Check::from_list(
        "Hasse diagram of certified left cells",
        problems,
        format!("{} covering relations among {} cells", computed.len(), cell_of_region.len()),
    ));

    // Two-sided cells: one per family, ordered as a chain with D and F side by side.
    let mut family_cell: BTreeMap<String, usize> = BTreeMap::new();
    let mut problems = Vec::new();
    for fam in [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::Identity] {
        let cells: BTreeSet<usize> = map
            .family_members(fam)
            .into_iter()
            .filter(|w| ball.length(*w) <= INTERIOR)
            .map(|w| two.cell_index(w))
            .collect();
        if cells.len() == 1 {
            family_cell.insert(fam.to_string(), *cells.iter().next().expect("one"));
        } else {
            problems.push(format!("family {fam} meets {} two-sided cells", cells.len()));
        }
    }
    let distinct: BTreeSet<usize> = family_cell.values().copied().collect();
    if distinct.len() != family_cell.len() {
        problems.push("two families share a two-sided cell".into());
    }
    let chain = [("A", "C"), ("C", "B"), ("B", "D"), ("B", "F"), ("D", "E"), ("F", "E"), ("E", "e")];
    for (lo, hi) in chain {
        if let (Some(&l), Some(&h)) = (family_cell.get(lo), family_cell.get(hi)) {
            if !two.leq(l, h) || two.leq(h, l) {
                problems.push(format!("{lo} < {hi} fails"));
            }
        }
    }
    if let (Some(&d), Some(&f)) = (family_cell.get("D"), family_cell.get("F")) {
        if two.leq(d, f) || two.leq(f, d) {
            problems.push("D and F are comparable".into());
        }
    }
    checks.push(Check::from_list("two-sided chain", problems, "A < C < B < {D, F} < E < e"));

    let mut problems = Vec::new();
    let certified: Vec<usize> = cell_of_region.values().copied().collect();
    for &x in &certified {
        for &y in &certified {
            let same = two.same_cell(left.cells[x].elements[0], left.cells[y].elements[0]);
            if x != y && same && left.leq(x, y) {
                problems.push(format!(
                    "{} <= {}",
                    map.region(left.cells[x].elements[0]),
                    map.region(left.cells[y].elements[0])
                ));
            }
        }
    }
    checks.push(Check::from_list("no relation inside a two-sided cell", problems, "none found"));

    let bad: Vec<String> = ball
        .up_to(INTERIOR)
        .filter(|w| !two.same_cell(*w, ball.inverse(*w)))
        .map(|w| ball.word_string(w))
        .collect();
    checks.push(Check::from_list("z ~ z^-1", bad, format!("all elements up to length {INTERIOR}")));
    checks
}

// ---------------------------------------------------------------- 9

fn criterion9(suite: &Suite) -> Vec<Check> {
    let mut checks = criterion2(suite, 9, 2);
    checks.extend(criterion4(suite, 9, 2));
    checks.extend(criterion5(suite, 9, 2));
    checks.extend(criterion5(suite, 4, 1).into_iter().filter(|c| c.name.starts_with("left cells")));
    checks
}

// ---------------------------------------------------------------- 10

/// Invocations whose outputs are kept as golden files.
pub const GOLDEN: [(&str, &[&str]); 3] = [
    ("cells.json", &["cells", "--radius", "12"]),
    ("kl.json", &["kl", "--radius", "6"]),
    ("g2.svg", &["g2-svg", "--radius", "8"]),
];

fn run_exe(exe: &Path, args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(exe).args(args).output().map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
    }
    Ok(out.stdout)
}

fn criterion10(suite: &Suite) -> Vec<Check> {
    let Some(exe) = &suite.opts.exe else {
        return vec![Check::new("binary", false, "path of the klcells binary unknown")];
    };
    let mut checks = Vec::new();
    for (file, args) in GOLDEN {
        let name = args[0];
        let first = run_exe(exe, args);
        let second = run_exe(exe, args);
        let check = match (first, second) {
            (Ok(a), Ok(b)) if a != b => Check::new(format!("{name} repeatable"), false, "two runs differ"),
            (Ok(a), Ok(_)) => match &suite.opts.golden {
                None => Check::new(format!("{name} repeatable"), false, "no golden directory"),
                Some(dir) => match std::fs::read(dir.join(file)) {
                    Ok(g) if g == a => Check::new(format!("{name} matches {file}"), true, format!("{} bytes", a.len())),
                    Ok(_) => Check::new(format!("{name} matches {file}"), false, "output differs from golden"),
                    Err(e) => Check::new(format!("{name} matches {file}"), false, e.to_string()),
                },
            },
            (Err(e), _) | (_, Err(e)) => Check::new(format!("{name} runs"), false, e),
        };
        checks.push(check);
    }
    checks
}

/// Whether a run of the whole suite turned out as recorded: only known failures fail.
pub fn as_expected(results: &[Criterion]) -> bool {
    results.iter().all(Criterion::as_expected)
}
