//! Kazhdan-Lusztig data for a ball: the basis `C_w`, the polynomials
//! `P`, `M` and `R`, and the structural products with generators.
//!
//! Everything is computed eagerly, one length stratum at a time. For each
//! `w` the basis element is obtained as `C_s C_{sw}` minus its `M`-corrections,
//! where `s` is the first letter of the canonical word of `w`. Once `C_w` is
//! known, the `M`-polynomials `M^s_{z,w}` for every ascent `s` of `w` are
//! solved from the congruence that characterizes them.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde_json::{json, Value};

use crate::coxeter::{Ball, Elem, Gen, Side};
use crate::error::{Error, Result};
use crate::hecke::{quadratic_coeff, t_gen_mul, Basis, HeckeElt};
use crate::laurent::LaurentPoly;

/// Products computed by [`KlData::mul_c`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CProduct {
    /// `C_s C_w`
    CsCw,
    /// `T_s C_w`
    TsCw,
    /// `C_w C_s`
    CwCs,
    /// `C_w T_s`
    CwTs,
}

/// Lengths up to which `C_w` is re-checked for bar invariance while building.
pub const DEFAULT_AUDIT_BOUND: usize = 12;

pub struct KlData {
    ball: Ball,
    c: Vec<HeckeElt>,
    /// `mu[w][s]`: nonzero `M^s_{z,w}` for an ascent `s` of `w`, by decreasing `z`.
    mu: Vec<Vec<Vec<(Elem, LaurentPoly)>>>,
    r: Vec<OnceLock<BTreeMap<Elem, LaurentPoly>>>,
}

impl std::fmt::Debug for KlData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("KlData").field("ball", &self.ball).finish()
    }
}

impl KlData {
    pub fn new(ball: Ball) -> Result<Self> {
        Self::with_audit(ball, DEFAULT_AUDIT_BOUND)
    }

    pub fn with_audit(ball: Ball, audit_bound: usize) -> Result<Self> {
        let n = ball.rank();
        let size = ball.len();
        let mut data = KlData {
            c: Vec::with_capacity(size),
            mu: Vec::with_capacity(size),
            r: (0..size).map(|_| OnceLock::new()).collect(),
            ball,
        };
        for w in data.ball.elements() {
            let cw = data.build_c(w);
            data.c.push(cw);
            let mut lists = vec![Vec::new(); n];
            for (s, list) in lists.iter_mut().enumerate() {
                if !data.ball.left_descents(w).contains(s) {
                    *list = data.build_mu(s, w);
                }
            }
            data.mu.push(lists);
            if data.ball.length(w) <= audit_bound && !data.c_is_bar_invariant(w) {
                return Err(Error::InvalidData(format!(
                    "C_{} failed the bar-invariance audit",
                    data.ball.word_string(w)
                )));
            }
        }
        Ok(data)
    }

    fn build_c(&self, w: Elem) -> HeckeElt {
        let ball = &self.ball;
        if w == Elem::IDENTITY {
            return HeckeElt::basis_elem(Basis::T, w);
        }
        let s = ball.word(w)[0] as Gen;
        let sw = ball.mul_gen(w, s, Side::Left).expect("shorter");
        let prev = &self.c[sw.idx()];
        let mut out = t_gen_mul(ball, s, prev, Side::Left).expect("length bounded by w");
        out.add_scaled(prev, &LaurentPoly::v_pow(-ball.system().weight(s)));
        for (z, m) in &self.mu[sw.idx()][s] {
            out.add_scaled(&self.c[z.idx()], &(-m));
        }
        out
    }

    fn build_mu(&self, s: Gen, w: Elem) -> Vec<(Elem, LaurentPoly)> {
        let ball = &self.ball;
        let vs = LaurentPoly::v_pow(ball.system().weight(s));
        let cw = &self.c[w.idx()];
        let mut found: Vec<(Elem, LaurentPoly)> = Vec::new();
        let below: Vec<Elem> = ball.bruhat_interval(w).collect();
        for &z in below.iter().rev() {
            if z == w || !ball.left_descents(z).contains(s) {
                continue;
            }
            let mut pi = &vs * &cw.coeff(z);
            for (zp, m) in &found {
                if let Some(p) = self.c[zp.idx()].coeff_ref(z) {
                    pi -= &(p * m);
                }
            }
            let (nonneg, _) = pi.split_nonneg();
            let m = &nonneg + &pi.positive_part().bar();
            if !m.is_zero() {
                found.push((z, m));
            }
        }
        found
    }

    fn c_is_bar_invariant(&self, w: Elem) -> bool {
        let cw = &self.c[w.idx()];
        let mut image = HeckeElt::zero(Basis::T);
        for (y, p) in cw.terms() {
            for (x, r) in self.r_column(y) {
                image.add_product_term(*x, &p.bar(), &r.bar());
            }
        }
        &image == cw
    }

    pub fn ball(&self) -> &Ball {
        &self.ball
    }

    /// T-basis expansion of `C_w`.
    pub fn c_elt(&self, w: Elem) -> &HeckeElt {
        &self.c[w.idx()]
    }

    /// `P_{y,w}`, zero unless `y <= w`.
    pub fn kl_p(&self, y: Elem, w: Elem) -> LaurentPoly {
        self.c[w.idx()].coeff(y)
    }

    /// `M^s_{z,w}` (left) or `M^{s,r}_{z,w} = M^s_{z^-1,w^-1}` (right).
    pub fn m_poly(&self, s: Gen, z: Elem, w: Elem, side: Side) -> Result<LaurentPoly> {
        let (z, w) = match side {
            Side::Left => (z, w),
            Side::Right => (self.ball.inverse(z), self.ball.inverse(w)),
        };
        let ball = &self.ball;
        let ok = ball.left_descents(z).contains(s)
            && !ball.left_descents(w).contains(s)
            && ball.bruhat_lt(z, w);
        if !ok {
            return Err(Error::PreconditionViolated(format!(
                "M^{}_{{{},{}}} needs sz < z < w < sw",
                ball.system().name(s),
                ball.word_string(z),
                ball.word_string(w)
            )));
        }
        Ok(self.mu[w.idx()][s]
            .iter()
            .find(|(y, _)| *y == z)
            .map(|(_, m)| m.clone())
            .unwrap_or_default())
    }

    /// Nonzero left `M^s_{z,w}` for an ascent `s` of `w`.
    pub fn m_list(&self, s: Gen, w: Elem) -> &[(Elem, LaurentPoly)] {
        &self.mu[w.idx()][s]
    }

    /// Every stored nonzero left M-polynomial as `(s, z, w, M)`.
    pub fn m_entries(&self) -> impl Iterator<Item = (Gen, Elem, Elem, &LaurentPoly)> + '_ {
        self.ball.elements().flat_map(move |w| {
            self.mu[w.idx()]
                .iter()
                .enumerate()
                .flat_map(move |(s, list)| list.iter().map(move |(z, m)| (s, *z, w, m)))
        })
    }

    /// The column `x -> R_{x,y}`.
    pub fn r_column(&self, y: Elem) -> &BTreeMap<Elem, LaurentPoly> {
        self.r[y.idx()].get_or_init(|| self.build_r_column(y))
    }

    fn build_r_column(&self, y: Elem) -> BTreeMap<Elem, LaurentPoly> {
        let ball = &self.ball;
        let mut col = BTreeMap::new();
        if y == Elem::IDENTITY {
            col.insert(y, LaurentPoly::one());
            return col;
        }
        let s = ball.word(y)[0] as Gen;
        let sy = ball.mul_gen(y, s, Side::Left).expect("shorter");
        let prev = self.r_column(sy);
        let q = quadratic_coeff(ball, s);
        for x in ball.bruhat_interval(y) {
            let sx = ball.mul_gen(x, s, Side::Left).expect("x <= y stays in ball");
            let mut val = prev.get(&sx).cloned().unwrap_or_default();
            if !ball.left_descents(x).contains(s) {
                if let Some(r) = prev.get(&x) {
                    val.add_product(&q, r);
                }
            }
            if !val.is_zero() {
                col.insert(x, val);
            }
        }
        col
    }

    /// `R_{x,y}`, zero unless `x <= y`.
    pub fn r_poly(&self, x: Elem, y: Elem) -> LaurentPoly {
        self.r_column(y).get(&x).cloned().unwrap_or_default()
    }

    /// C-basis expansion of a product of a generator with `C_w`.
    pub fn mul_c(&self, kind: CProduct, s: Gen, w: Elem) -> Result<HeckeElt> {
        let ball = &self.ball;
        let side = match kind {
            CProduct::CsCw | CProduct::TsCw => Side::Left,
            CProduct::CwCs | CProduct::CwTs => Side::Right,
        };
        let weight = ball.system().weight(s);
        let mut out = HeckeElt::zero(Basis::C);
        if ball.descents(w, side).contains(s) {
            let c = match kind {
                CProduct::CsCw | CProduct::CwCs => LaurentPoly::v_plus_inverse(weight),
                _ => LaurentPoly::v_pow(weight),
            };
            out.add_term(w, &c);
            return Ok(out);
        }
        let sw = ball
            .mul_gen(w, s, side)
            .ok_or(Error::SupportEscapesBall(ball.length(w) + 1, ball.radius()))?;
        out.add_term(sw, &LaurentPoly::one());
        if matches!(kind, CProduct::TsCw | CProduct::CwTs) {
            out.add_term(w, &-LaurentPoly::v_pow(-weight));
        }
        match side {
            Side::Left => {
                for (z, m) in self.m_list(s, w) {
                    out.add_term(*z, m);
                }
            }
            Side::Right => {
                for (z, m) in self.m_list(s, ball.inverse(w)) {
                    out.add_term(ball.inverse(*z), m);
                }
            }
        }
        Ok(out)
    }

    /// Rewrites a T-basis element in the C basis by peeling off leading terms.
    pub fn to_c_basis(&self, h: &HeckeElt) -> HeckeElt {
        assert_eq!(h.basis(), Basis::T, "to_c_basis expects T coordinates");
        let mut rest = h.clone();
        let mut out = HeckeElt::zero(Basis::C);
        while let Some((w, c)) = rest.leading() {
            let c = c.clone();
            rest.add_scaled(&self.c[w.idx()], &(-&c));
            out.add_term(w, &c);
        }
        out
    }

    /// Expands a C-basis element in the T basis.
    pub fn to_t_basis(&self, h: &HeckeElt) -> HeckeElt {
        assert_eq!(h.basis(), Basis::C, "to_t_basis expects C coordinates");
        let mut out = HeckeElt::zero(Basis::T);
        for (w, c) in h.terms() {
            out.add_scaled(&self.c[w.idx()], c);
        }
        out
    }

    /// `{y, w, poly}` records for every nonzero `P_{y,w}` with `y < w`, sorted by word strings.
    pub fn p_table_json(&self) -> Value {
        let ball = &self.ball;
        let mut rows: Vec<(String, String, Value)> = Vec::new();
        for w in ball.elements() {
            for (y, p) in self.c[w.idx()].terms() {
                if y != w {
                    rows.push((ball.word_string(y), ball.word_string(w), serde_json::to_value(p).expect("poly")));
                }
            }
        }
        rows.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
        Value::Array(rows.into_iter().map(|(y, w, p)| json!({"y": y, "w": w, "poly": p})).collect())
    }

    /// `{y, w, s, poly}` records for every nonzero left `M^s_{y,w}`, sorted by word strings.
    pub fn m_table_json(&self) -> Value {
        let ball = &self.ball;
        let mut rows: Vec<(String, String, String, Value)> = self
            .m_entries()
            .map(|(s, z, w, m)| {
                (
                    ball.word_string(z),
                    ball.word_string(w),
                    ball.system().name(s).to_string(),
                    serde_json::to_value(m).expect("poly"),
                )
            })
            .collect();
        rows.sort_by(|a, b| (&a.0, &a.1, &a.2).cmp(&(&b.0, &b.1, &b.2)));
        Value::Array(
            rows.into_iter()
                .map(|(y, w, s, p)| json!({"y": y, "w": w, "s": s, "poly": p}))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterSystem;
    use crate::hecke::bar_involution;

    fn kl(n: usize) -> KlData {
        KlData::new(Ball::new(CoxeterSystem::g2_affine(5, 1).unwrap(), n).unwrap()).unwrap()
    }

    fn c(k: &KlData, terms: &[(&str, LaurentPoly)]) -> HeckeElt {
        HeckeElt::from_terms(Basis::C, terms.iter().map(|(w, p)| (k.ball().parse(w).unwrap(), p.clone())))
    }

    #[test]
    fn r_examples() {
        let k = kl(6);
        let b = k.ball();
        let s2 = b.parse("s2").unwrap();
        assert!(k.r_poly(s2, s2).is_one());
        assert_eq!(k.r_poly(Elem::IDENTITY, s2), LaurentPoly::v_minus_inverse(1));
        let x = b.parse("s1.s2.s1").unwrap();
        let y = b.parse("s2.s1.s2").unwrap();
        assert!(k.r_poly(x, y).is_zero());
    }

    #[test]
    fn r_inversion_identity() {
        let k = kl(6);
        let b = k.ball();
        for y in b.elements() {
            for x in b.bruhat_interval(y) {
                let mut sum = LaurentPoly::zero();
                for z in b.bruhat_interval(y) {
                    if b.bruhat_leq(x, z) {
                        sum.add_product(&k.r_poly(x, z).bar(), &k.r_poly(z, y));
                    }
                }
                assert_eq!(sum.is_one(), x == y);
                assert!(x == y || sum.is_zero());
            }
        }
    }

    #[test]
    fn p_examples() {
        let k = kl(7);
        let b = k.ball();
        for w in b.elements() {
            assert!(k.kl_p(w, w).is_one());
        }
        let s1 = b.parse("s1").unwrap();
        let s2 = b.parse("s2").unwrap();
        assert_eq!(k.kl_p(Elem::IDENTITY, s1), LaurentPoly::v_pow(-5));
        assert_eq!(k.kl_p(Elem::IDENTITY, s2), LaurentPoly::v_pow(-1));
        let y = b.parse("s1.s2.s1.s2.s3").unwrap();
        let w = b.parse("s1.s3.s2.s1.s2.s3").unwrap();
        assert_eq!(k.kl_p(y, w), LaurentPoly::v_pow(-1));
    }

    #[test]
    fn m_examples() {
        let k = kl(6);
        let b = k.ball();
        let s2 = b.parse("s2").unwrap();
        let s3 = b.parse("s3").unwrap();
        let s3s2 = b.parse("s3.s2").unwrap();
        let s2s3 = b.parse("s2.s3").unwrap();
        let s1s2 = b.parse("s1.s2").unwrap();
        // w = s3 z with L(s3) = L(s2)
        assert!(k.m_poly(1, s2, s3s2, Side::Left).unwrap().is_one());
        assert!(k.m_poly(2, s3, s2s3, Side::Left).unwrap().is_one());
        // w = s1 z with L(s1) > L(s2)
        assert!(k.m_poly(1, s2, s1s2, Side::Left).unwrap().is_zero());
        // the reverse inequality gives a nonzero value of maximal degree
        let s1 = b.parse("s1").unwrap();
        let s2s1 = b.parse("s2.s1").unwrap();
        assert_eq!(k.m_poly(0, s1, s2s1, Side::Left).unwrap(), LaurentPoly::v_plus_inverse(4));
        // invalid triples
        assert!(matches!(k.m_poly(2, s2, s3s2, Side::Left), Err(Error::PreconditionViolated(_))));
        assert!(matches!(k.m_poly(1, s2, s2s3, Side::Left), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn m_right_is_transport() {
        let k = kl(8);
        let b = k.ball();
        for (s, z, w, m) in k.m_entries() {
            let got = k.m_poly(s, b.inverse(z), b.inverse(w), Side::Right).unwrap();
            assert_eq!(&got, m);
        }
    }

    #[test]
    fn m_is_bar_invariant_in_window() {
        let k = kl(9);
        for (s, _, _, m) in k.m_entries() {
            let l = k.ball().system().weight(s);
            assert!(m.is_bar_invariant());
            assert!(m.min_degree().unwrap() > -l && m.max_degree().unwrap() < l);
        }
    }

    #[test]
    fn c_examples() {
        let k = kl(6);
        let b = k.ball();
        assert_eq!(k.c_elt(Elem::IDENTITY), &HeckeElt::basis_elem(Basis::T, Elem::IDENTITY));
        let t = |w: &str, p: LaurentPoly| (b.parse(w).unwrap(), p);
        let want = HeckeElt::from_terms(Basis::T, [t("s2", LaurentPoly::one()), t("e", LaurentPoly::v_pow(-1))]);
        assert_eq!(k.c_elt(b.parse("s2").unwrap()), &want);
        let want = HeckeElt::from_terms(
            Basis::T,
            [
                t("s1.s3", LaurentPoly::one()),
                t("s1", LaurentPoly::v_pow(-1)),
                t("s3", LaurentPoly::v_pow(-5)),
                t("e", LaurentPoly::v_pow(-6)),
            ],
        );
        assert_eq!(k.c_elt(b.parse("s1.s3").unwrap()), &want);
        for w in b.elements() {
            assert_eq!(&bar_involution(b, k.c_elt(w)).unwrap(), k.c_elt(w));
        }
    }

    #[test]
    fn mul_c_examples() {
        let k = kl(8);
        let b = k.ball();
        let s2 = b.parse("s2").unwrap();
        let got = k.mul_c(CProduct::CsCw, 1, s2).unwrap();
        assert_eq!(got, c(&k, &[("s2", LaurentPoly::v_plus_inverse(1))]));
        let got = k.mul_c(CProduct::CsCw, 0, s2).unwrap();
        assert_eq!(got, c(&k, &[("s1.s2", LaurentPoly::one())]));
        let u1 = b.parse("s1.s2.s1.s2.s1").unwrap();
        let got = k.mul_c(CProduct::TsCw, 1, u1).unwrap();
        assert_eq!(
            got,
            c(&k, &[("s1.s2.s1.s2.s1.s2", LaurentPoly::one()), ("s1.s2.s1.s2.s1", -LaurentPoly::v_pow(-1))])
        );
    }

    #[test]
    fn mul_c_matches_t_basis_products() {
        let k = kl(8);
        let b = k.ball();
        for w in b.up_to(7) {
            for s in 0..3 {
                let cs = k.c_elt(b.gen_elem(s));
                let cw = k.c_elt(w);
                let left = crate::hecke::t_mul(b, cs, cw).unwrap();
                assert_eq!(k.to_t_basis(&k.mul_c(CProduct::CsCw, s, w).unwrap()), left);
                let right = crate::hecke::t_mul(b, cw, cs).unwrap();
                assert_eq!(k.to_t_basis(&k.mul_c(CProduct::CwCs, s, w).unwrap()), right);
                let ts = HeckeElt::basis_elem(Basis::T, b.gen_elem(s));
                let tl = crate::hecke::t_mul(b, &ts, cw).unwrap();
                assert_eq!(k.to_t_basis(&k.mul_c(CProduct::TsCw, s, w).unwrap()), tl);
                let tr = crate::hecke::t_mul(b, cw, &ts).unwrap();
                assert_eq!(k.to_t_basis(&k.mul_c(CProduct::CwTs, s, w).unwrap()), tr);
            }
        }
    }

    #[test]
    fn c_basis_roundtrip() {
        let k = kl(6);
        let b = k.ball();
        assert_eq!(
            k.to_c_basis(&HeckeElt::basis_elem(Basis::T, Elem::IDENTITY)),
            HeckeElt::basis_elem(Basis::C, Elem::IDENTITY)
        );
        let s2 = b.parse("s2").unwrap();
        assert_eq!(
            k.to_c_basis(&HeckeElt::basis_elem(Basis::T, s2)),
            c(&k, &[("s2", LaurentPoly::one()), ("e", -LaurentPoly::v_pow(-1))])
        );
        for w in b.elements() {
            assert_eq!(k.to_c_basis(k.c_elt(w)), HeckeElt::basis_elem(Basis::C, w));
        }
    }
}
