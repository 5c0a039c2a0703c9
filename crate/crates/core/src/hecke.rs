//! The Iwahori-Hecke algebra in its standard basis.
//!
//! Elements are finite sums over ball elements with Laurent-polynomial
//! coefficients. A product whose support would leave the ball is reported
//! as [`Error::SupportEscapesBall`] instead of being truncated.

use std::collections::BTreeMap;

use serde_json::{Map, Value};

use crate::coxeter::{Ball, Elem, Gen, GenSet, Side};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// Which basis the coordinates of a [`HeckeElt`] refer to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    T,
    C,
}

impl Basis {
    pub fn tag(self) -> &'static str {
        match self {
            Basis::T => "T",
            Basis::C => "C",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeElt {
    basis: Basis,
    terms: BTreeMap<Elem, LaurentPoly>,
}

impl HeckeElt {
    pub fn zero(basis: Basis) -> Self {
        Self { basis, terms: BTreeMap::new() }
    }

    pub fn basis_elem(basis: Basis, w: Elem) -> Self {
        Self::monomial(basis, w, LaurentPoly::one())
    }

    pub fn monomial(basis: Basis, w: Elem, c: LaurentPoly) -> Self {
        let mut h = Self::zero(basis);
        h.add_term(w, &c);
        h
    }

    pub fn from_terms(basis: Basis, terms: impl IntoIterator<Item = (Elem, LaurentPoly)>) -> Self {
        let mut h = Self::zero(basis);
        for (w, c) in terms {
            h.add_term(w, &c);
        }
        h
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: Elem) -> LaurentPoly {
        self.terms.get(&w).cloned().unwrap_or_default()
    }

    pub fn coeff_ref(&self, w: Elem) -> Option<&LaurentPoly> {
        self.terms.get(&w)
    }

    /// Terms in increasing element order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (Elem, &LaurentPoly)> + '_ {
        self.terms.iter().map(|(w, c)| (*w, c))
    }

    pub fn support(&self) -> impl Iterator<Item = Elem> + '_ {
        self.terms.keys().copied()
    }

    /// The term with the largest element index, which has maximal length.
    pub fn leading(&self) -> Option<(Elem, &LaurentPoly)> {
        self.terms.iter().next_back().map(|(w, c)| (*w, c))
    }

    pub fn add_term(&mut self, w: Elem, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add_product_term(&mut self, w: Elem, a: &LaurentPoly, b: &LaurentPoly) {
        let mut c = LaurentPoly::zero();
        c.add_product(a, b);
        self.add_term(w, &c);
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &HeckeElt, c: &LaurentPoly) {
        debug_assert_eq!(self.basis, other.basis);
        for (w, a) in other.terms() {
            self.add_product_term(w, a, c);
        }
    }

    pub fn add(&mut self, other: &HeckeElt) {
        self.add_scaled(other, &LaurentPoly::one());
    }

    pub fn sub(&mut self, other: &HeckeElt) {
        self.add_scaled(other, &LaurentPoly::from(-1));
    }

    pub fn scaled(&self, c: &LaurentPoly) -> HeckeElt {
        let mut h = HeckeElt::zero(self.basis);
        h.add_scaled(self, c);
        h
    }

    /// Applies the bar involution of `A` to every coefficient (not the bar map of `H`).
    pub fn bar_coeffs(&self) -> HeckeElt {
        HeckeElt {
            basis: self.basis,
            terms: self.terms.iter().map(|(w, c)| (*w, c.bar())).collect(),
        }
    }

    pub fn max_length(&self, ball: &Ball) -> Option<usize> {
        self.leading().map(|(w, _)| ball.length(w))
    }

    /// JSON with word-string keys: `{"basis": "T", "terms": {"s1.s2": {...}}}`.
    pub fn to_json(&self, ball: &Ball) -> Value {
        let mut terms = Map::new();
        for (w, c) in self.terms() {
            terms.insert(ball.word_string(w), serde_json::to_value(c).expect("serializable"));
        }
        let mut obj = Map::new();
        obj.insert("basis".into(), Value::String(self.basis.tag().into()));
        obj.insert("terms".into(), Value::Object(terms));
        Value::Object(obj)
    }

    /// Human-readable form such as `T_s1.s2 + (v^-1)T_e`.
    pub fn display(&self, ball: &Ball) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let tag = self.basis.tag();
        self.terms
            .iter()
            .rev()
            .map(|(w, c)| {
                let name = ball.word_string(*w);
                if c.is_one() {
                    format!("{tag}_{name}")
                } else {
                    format!("({c}){tag}_{name}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// `v^L(s) - v^-L(s)`.
pub fn quadratic_coeff(ball: &Ball, s: Gen) -> LaurentPoly {
    LaurentPoly::v_minus_inverse(ball.system().weight(s))
}

fn escape(ball: &Ball, w: Elem) -> Error {
    Error::SupportEscapesBall(ball.length(w) + 1, ball.radius())
}

/// `T_s h` (left) or `h T_s` (right) for `h` in the T basis.
pub fn t_gen_mul(ball: &Ball, s: Gen, h: &HeckeElt, side: Side) -> Result<HeckeElt> {
    debug_assert_eq!(h.basis, Basis::T);
    let q = quadratic_coeff(ball, s);
    let mut out = HeckeElt::zero(Basis::T);
    for (w, c) in h.terms() {
        let sw = ball.mul_gen(w, s, side).ok_or_else(|| escape(ball, w))?;
        out.add_term(sw, c);
        if ball.descents(w, side).contains(s) {
            out.add_product_term(w, c, &q);
        }
    }
    Ok(out)
}

/// `T_x h` for a single element `x`, applying the letters of its word from the right.
pub fn t_elem_mul(ball: &Ball, x: Elem, h: &HeckeElt) -> Result<HeckeElt> {
    let mut acc = h.clone();
    for &s in ball.word(x).iter().rev() {
        acc = t_gen_mul(ball, s as Gen, &acc, Side::Left)?;
    }
    Ok(acc)
}

/// Product of two T-basis elements.
pub fn t_mul(ball: &Ball, h1: &HeckeElt, h2: &HeckeElt) -> Result<HeckeElt> {
    let mut out = HeckeElt::zero(Basis::T);
    for (x, a) in h1.terms() {
        let prod = t_elem_mul(ball, x, h2)?;
        out.add_scaled(&prod, a);
    }
    Ok(out)
}

/// Structure constant `f_{x,y,z}` of `T_x T_y = sum f_{x,y,z} T_z`.
pub fn structure_f(ball: &Ball, x: Elem, y: Elem, z: Elem) -> Result<LaurentPoly> {
    let prod = t_elem_mul(ball, x, &HeckeElt::basis_elem(Basis::T, y))?;
    Ok(prod.coeff(z))
}

/// `bar(T_w) = T_{w^-1}^-1`, built letter by letter from `bar(T_s) = T_s - (v_s - v_s^-1)`.
pub fn bar_t(ball: &Ball, w: Elem) -> Result<HeckeElt> {
    let mut acc = HeckeElt::basis_elem(Basis::T, Elem::IDENTITY);
    for &s in ball.word(w) {
        let s = s as Gen;
        let mut next = t_gen_mul(ball, s, &acc, Side::Right)?;
        next.add_scaled(&acc, &(-quadratic_coeff(ball, s)));
        acc = next;
    }
    Ok(acc)
}

/// The ring involution of `H` on a T-basis element.
pub fn bar_involution(ball: &Ball, h: &HeckeElt) -> Result<HeckeElt> {
    let mut out = HeckeElt::zero(Basis::T);
    for (w, c) in h.terms() {
        out.add_scaled(&bar_t(ball, w)?, &c.bar());
    }
    Ok(out)
}

/// All `bar(T_w)` for the ball, built by the recursion `bar(T_w) = bar(T_{ws}) bar(T_s)`.
pub fn bar_table(ball: &Ball) -> Vec<HeckeElt> {
    let mut table: Vec<HeckeElt> = Vec::with_capacity(ball.len());
    for w in ball.elements() {
        if w == Elem::IDENTITY {
            table.push(HeckeElt::basis_elem(Basis::T, w));
            continue;
        }
        let word = ball.word(w);
        let s = *word.last().expect("nonidentity") as Gen;
        let ws = ball.mul_gen(w, s, Side::Right).expect("shorter");
        let prev = &table[ws.idx()];
        let mut next = t_gen_mul(ball, s, prev, Side::Right).expect("bounded by l(w)");
        next.add_scaled(prev, &(-quadratic_coeff(ball, s)));
        table.push(next);
    }
    table
}

/// Largest degree of any `f_{x,y,z}` with `x, y, z` in the finite parabolic `W_J`.
pub fn compute_bound(ball: &Ball, j: GenSet) -> Result<i32> {
    let par = ball.coset_data(j)?;
    let mut bound = 0;
    for &x in &par.elements {
        for &y in &par.elements {
            let prod = t_elem_mul(ball, x, &HeckeElt::basis_elem(Basis::T, y))?;
            for (_, c) in prod.terms() {
                bound = bound.max(c.max_degree().unwrap_or(0));
            }
        }
    }
    Ok(bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterSystem;

    fn ball(n: usize) -> Ball {
        Ball::new(CoxeterSystem::g2_affine(5, 1).unwrap(), n).unwrap()
    }

    fn t(b: &Ball, w: &str) -> HeckeElt {
        HeckeElt::basis_elem(Basis::T, b.parse(w).unwrap())
    }

    #[test]
    fn t_mul_examples() {
        let b = ball(6);
        let got = t_mul(&b, &t(&b, "s2"), &t(&b, "s2")).unwrap();
        let mut want = t(&b, "e");
        want.add_scaled(&t(&b, "s2"), &LaurentPoly::v_minus_inverse(1));
        assert_eq!(got, want);

        assert_eq!(t_mul(&b, &t(&b, "s1"), &t(&b, "s3")).unwrap(), t(&b, "s1.s3"));

        let got = t_mul(&b, &t(&b, "s2"), &t(&b, "s2.s3")).unwrap();
        let mut want = t(&b, "s3");
        want.add_scaled(&t(&b, "s2.s3"), &LaurentPoly::v_minus_inverse(1));
        assert_eq!(got, want);
    }

    #[test]
    fn t_mul_reports_escape() {
        let b = ball(2);
        let err = t_mul(&b, &t(&b, "s1.s2"), &t(&b, "s1")).unwrap_err();
        assert_eq!(err, Error::SupportEscapesBall(3, 2));
    }

    #[test]
    fn structure_constants() {
        let b = ball(6);
        let s2 = b.parse("s2").unwrap();
        let e = Elem::IDENTITY;
        assert!(structure_f(&b, s2, s2, e).unwrap().is_one());
        assert_eq!(structure_f(&b, s2, s2, s2).unwrap(), LaurentPoly::v_minus_inverse(1));
        let x = b.parse("s1.s2").unwrap();
        let y = b.parse("s3").unwrap();
        let xy = b.mul(x, y).unwrap();
        assert!(structure_f(&b, x, y, xy).unwrap().is_one());
    }

    #[test]
    fn bar_examples() {
        let b = ball(6);
        assert_eq!(bar_involution(&b, &t(&b, "e")).unwrap(), t(&b, "e"));
        let mut want = t(&b, "s2");
        want.add_scaled(&t(&b, "e"), &(-LaurentPoly::v_minus_inverse(1)));
        assert_eq!(bar_involution(&b, &t(&b, "s2")).unwrap(), want);
        let table = bar_table(&b);
        for w in b.elements() {
            let bw = bar_t(&b, w).unwrap();
            assert_eq!(table[w.idx()], bw);
            assert_eq!(bar_involution(&b, &bw).unwrap(), t(&b, &b.word_string(w)));
        }
    }

    #[test]
    fn bar_t_inverts_t() {
        let b = ball(6);
        for w in b.up_to(3) {
            let winv = b.inverse(w);
            let prod = t_mul(&b, &HeckeElt::basis_elem(Basis::T, winv), &bar_t(&b, w).unwrap()).unwrap();
            assert_eq!(prod, t(&b, "e"));
        }
    }

    #[test]
    fn bound_examples() {
        let b = ball(6);
        assert_eq!(compute_bound(&b, GenSet::EMPTY).unwrap(), 0);
        assert_eq!(compute_bound(&b, GenSet::from_gens([2])).unwrap(), 1);
        assert_eq!(compute_bound(&b, GenSet::from_gens([1, 2])).unwrap(), 3);
        let b2 = Ball::new(CoxeterSystem::g2_affine(5, 1).unwrap(), 12).unwrap();
        assert_eq!(compute_bound(&b2, GenSet::from_gens([0, 1])).unwrap(), 18);
    }

    #[test]
    fn json_shape() {
        let b = ball(3);
        let mut h = t(&b, "s1.s2");
        h.add_scaled(&t(&b, "e"), &LaurentPoly::v_pow(-1));
        let v = h.to_json(&b);
        assert_eq!(v.to_string(), r#"{"basis":"T","terms":{"e":{"-1":1},"s1.s2":{"0":1}}}"#);
    }
}
