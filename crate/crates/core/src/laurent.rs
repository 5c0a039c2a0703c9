//! Laurent polynomials in one variable `v` with integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An element of `Z[v, v^-1]`, stored as exponent -> nonzero coefficient.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, BigInt>,
}

/// Degree regions used by the Kazhdan-Lusztig normalisations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    /// `v^-1 Z[v^-1]`: every exponent is negative.
    StrictlyNegative,
    /// `Z[v^-1]`: every exponent is at most zero.
    Nonpositive,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c * v^e`.
    pub fn monomial(c: impl Into<BigInt>, e: i32) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    /// `v^e`.
    pub fn v_pow(e: i32) -> Self {
        Self::monomial(1, e)
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i32, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// `v^n - v^-n`.
    pub fn v_minus_inverse(n: i32) -> Self {
        Self::from_terms([(n, 1), (-n, -1)])
    }

    /// `v^n + v^-n`.
    pub fn v_plus_inverse(n: i32) -> Self {
        Self::from_terms([(n, 1), (-n, 1)])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, e: i32) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    fn add_term(&mut self, e: i32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    fn add_scaled(&mut self, other: &LaurentPoly, sign: i8) {
        for (e, c) in &other.terms {
            let slot = self.terms.entry(*e).or_default();
            if sign < 0 {
                *slot -= c;
            } else {
                *slot += c;
            }
            if slot.is_zero() {
                self.terms.remove(e);
            }
        }
    }

    /// Adds `a * b` into `self` without allocating the intermediate product.
    pub fn add_product(&mut self, a: &LaurentPoly, b: &LaurentPoly) {
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                self.add_term(ea + eb, ca * cb);
            }
        }
    }

    /// Multiplies by `v^k`.
    pub fn shift(&self, k: i32) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// The ring involution `v -> v^-1`.
    pub fn bar(&self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn is_bar_invariant(&self) -> bool {
        self.terms
            .iter()
            .all(|(e, c)| self.terms.get(&-e) == Some(c))
    }

    pub fn in_region(&self, region: Region) -> bool {
        match (region, self.max_degree()) {
            (_, None) => true,
            (Region::StrictlyNegative, Some(d)) => d < 0,
            (Region::Nonpositive, Some(d)) => d <= 0,
        }
    }

    /// Splits into (exponents >= 0, exponents < 0).
    pub fn split_nonneg(&self) -> (LaurentPoly, LaurentPoly) {
        let mut nonneg = BTreeMap::new();
        let mut neg = BTreeMap::new();
        for (e, c) in &self.terms {
            if *e >= 0 {
                nonneg.insert(*e, c.clone());
            } else {
                neg.insert(*e, c.clone());
            }
        }
        (LaurentPoly { terms: nonneg }, LaurentPoly { terms: neg })
    }

    /// The part with exponents strictly below zero.
    pub fn negative_part(&self) -> LaurentPoly {
        self.split_nonneg().1
    }

    /// The part with exponents strictly above zero.
    pub fn positive_part(&self) -> LaurentPoly {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| **e > 0)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> LaurentPoly {
        if k.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Renders highest degree first, e.g. `v^2 - 2 + v^-2`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let show_coeff = !abs.is_one() || *e == 0;
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match *e {
                0 => {}
                1 => write!(f, "v")?,
                e => write!(f, "v^{e}")?,
            }
        }
        Ok(())
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::monomial(c, 0)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, 1);
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self.add_scaled(&rhs, 1);
        self
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, -1);
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self.add_scaled(&rhs, -1);
        self
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        out.add_product(self, rhs);
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        self.add_scaled(rhs, 1);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        self.add_scaled(rhs, -1);
    }
}

// JSON form: {"-1": 1, "3": -2}, keys in ascending numeric order. Coefficients
// that do not fit in an i64 are written as decimal strings.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            let key = e.to_string();
            match c.to_i64() {
                Some(small) => map.serialize_entry(&key, &small)?,
                None => map.serialize_entry(&key, &c.to_string())?,
            }
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct PolyVisitor;

        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Coeff {
            Small(i64),
            Big(String),
        }

        impl<'de> Visitor<'de> for PolyVisitor {
            type Value = LaurentPoly;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "a map from integer exponents to integer coefficients")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<LaurentPoly, A::Error> {
                let mut p = LaurentPoly::zero();
                while let Some((k, c)) = access.next_entry::<String, Coeff>()? {
                    let e: i32 = k.parse().map_err(de::Error::custom)?;
                    let c = match c {
                        Coeff::Small(c) => BigInt::from(c),
                        Coeff::Big(s) => s.parse().map_err(de::Error::custom)?,
                    };
                    p.add_term(e, c);
                }
                Ok(p)
            }
        }

        deserializer.deserialize_map(PolyVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v() -> LaurentPoly {
        LaurentPoly::v_pow(1)
    }

    fn vinv() -> LaurentPoly {
        LaurentPoly::v_pow(-1)
    }

    #[test]
    fn ring_examples() {
        let a = &v() + &vinv();
        let b = &v() - &vinv();
        assert_eq!(&a * &b, LaurentPoly::from_terms([(2, 1), (-2, -1)]));
        assert_eq!(&a + &LaurentPoly::zero(), a);
        assert_eq!(&b * &b, LaurentPoly::from_terms([(2, 1), (0, -2), (-2, 1)]));
        assert_eq!(&b - &b, LaurentPoly::zero());
    }

    #[test]
    fn bar_examples() {
        assert_eq!(LaurentPoly::v_pow(3).bar(), LaurentPoly::v_pow(-3));
        let p = LaurentPoly::from_terms([(0, 1), (-2, 1)]);
        assert_eq!(p.bar(), LaurentPoly::from_terms([(0, 1), (2, 1)]));
    }

    #[test]
    fn region_examples() {
        assert!(vinv().in_region(Region::StrictlyNegative));
        assert!(!LaurentPoly::one().in_region(Region::StrictlyNegative));
        assert!(LaurentPoly::one().in_region(Region::Nonpositive));
        let p = LaurentPoly::from_terms([(-3, 1), (-1, -1)]);
        assert!(p.in_region(Region::StrictlyNegative));
        assert!(LaurentPoly::zero().in_region(Region::StrictlyNegative));
    }

    #[test]
    fn split_examples() {
        let p = LaurentPoly::from_terms([(1, 1), (0, 1), (-1, 1)]);
        let (hi, lo) = p.split_nonneg();
        assert_eq!(hi, LaurentPoly::from_terms([(1, 1), (0, 1)]));
        assert_eq!(lo, vinv());
        let (hi, lo) = LaurentPoly::v_pow(-2).split_nonneg();
        assert!(hi.is_zero());
        assert_eq!(lo, LaurentPoly::v_pow(-2));
        let (hi, lo) = LaurentPoly::zero().split_nonneg();
        assert!(hi.is_zero() && lo.is_zero());
    }

    #[test]
    fn display() {
        let p = LaurentPoly::from_terms([(2, 1), (0, -2), (-2, 1)]);
        assert_eq!(p.to_string(), "v^2 - 2 + v^-2");
        assert_eq!(LaurentPoly::from_terms([(-1, -3)]).to_string(), "-3v^-1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn json_is_numerically_sorted() {
        let p = LaurentPoly::from_terms([(10, 1), (2, 4), (-1, 1), (3, -2)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"-1":1,"2":4,"3":-2,"10":1}"#);
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn big_coefficients_survive_json() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let p = LaurentPoly::monomial(big, -4);
        let s = serde_json::to_string(&p).unwrap();
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec((-6i32..=6, -5i64..=5), 0..6).prop_map(LaurentPoly::from_terms)
    }

    proptest! {
        #[test]
        fn bar_is_ring_involution(p in arb_poly(), q in arb_poly()) {
            prop_assert_eq!((&p + &q).bar(), &p.bar() + &q.bar());
            prop_assert_eq!((&p * &q).bar(), &p.bar() * &q.bar());
            prop_assert_eq!(p.bar().bar(), p.clone());
        }

        #[test]
        fn split_recombines(p in arb_poly()) {
            let (hi, lo) = p.split_nonneg();
            prop_assert!(lo.in_region(Region::StrictlyNegative));
            prop_assert_eq!(&hi + &lo, p);
        }

        #[test]
        fn canonical_form_has_no_zeros(p in arb_poly(), q in arb_poly()) {
            let r = &(&p * &q) - &(&q * &p);
            prop_assert!(r.is_zero());
            prop_assert!((&p - &q).terms().all(|(_, c)| !c.is_zero()));
        }
    }
}
