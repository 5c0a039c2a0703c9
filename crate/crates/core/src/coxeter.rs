//! Coxeter systems, canonical words and length-bounded balls.
//!
//! Group elements are enumerated breadth-first through the integer
//! reflection representation on the root lattice. Every element of the ball
//! is identified by its index, which orders elements by length and then by
//! the ShortLex-least reduced word. After enumeration, all multiplication by
//! generators is table lookup.

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a generator in declaration order.
pub type Gen = usize;

/// Set of generators as a bit mask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenSet(pub u32);

impl GenSet {
    pub const EMPTY: GenSet = GenSet(0);

    pub fn from_gens(gens: impl IntoIterator<Item = Gen>) -> Self {
        GenSet(gens.into_iter().fold(0, |m, s| m | (1 << s)))
    }

    pub fn contains(self, s: Gen) -> bool {
        self.0 & (1 << s) != 0
    }

    pub fn insert(&mut self, s: Gen) {
        self.0 |= 1 << s;
    }

    pub fn is_subset(self, other: GenSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = Gen> {
        (0..32).filter(move |s| self.contains(*s))
    }
}

/// Which side a generator multiplies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// A group element of the active ball, by index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub u32);

impl Elem {
    pub const IDENTITY: Elem = Elem(0);

    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

/// Bond order `m_st`; `None` stands for infinity.
pub type Bond = Option<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterSystem {
    names: Vec<String>,
    bonds: Vec<Vec<Bond>>,
    weights: Vec<i32>,
    cartan: Vec<Vec<i64>>,
}

impl CoxeterSystem {
    /// Validates a Coxeter matrix (with `0` encoding infinity) and a weight vector.
    pub fn new(names: Vec<String>, matrix: Vec<Vec<u32>>, weights: Vec<i32>) -> Result<Self> {
        let n = names.len();
        if n == 0 || n > 31 {
            return Err(Error::MalformedMatrix(format!("{n} generators")));
        }
        if matrix.len() != n || matrix.iter().any(|row| row.len() != n) {
            return Err(Error::MalformedMatrix("matrix shape does not match generators".into()));
        }
        if weights.len() != n {
            return Err(Error::MalformedMatrix("weight vector length does not match generators".into()));
        }
        let mut bonds = vec![vec![Some(1); n]; n];
        for i in 0..n {
            if matrix[i][i] != 1 {
                return Err(Error::MalformedMatrix(format!("diagonal entry {i} is not 1")));
            }
            for j in 0..n {
                if matrix[i][j] != matrix[j][i] {
                    return Err(Error::NonSymmetricMatrix(i, j));
                }
                if i != j {
                    bonds[i][j] = match matrix[i][j] {
                        0 => None,
                        m @ (2 | 3 | 4 | 6) => Some(m),
                        m => return Err(Error::UnsupportedBondOrder(m)),
                    };
                }
            }
        }
        for (i, w) in weights.iter().enumerate() {
            if *w <= 0 {
                return Err(Error::NonPositiveWeight(names[i].clone()));
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if matches!(bonds[i][j], Some(m) if m % 2 == 1) && weights[i] != weights[j] {
                    return Err(Error::WeightConjugacyViolation(names[i].clone(), names[j].clone()));
                }
            }
        }
        // cartan[i][j] = <alpha_j, alpha_i^vee>; the lower-index generator
        // carries the -1 of each non-simply-laced pair.
        let mut cartan = vec![vec![0i64; n]; n];
        for i in 0..n {
            cartan[i][i] = 2;
            for j in (i + 1)..n {
                let (a, b) = match bonds[i][j] {
                    Some(2) => (0, 0),
                    Some(3) => (-1, -1),
                    Some(4) => (-1, -2),
                    Some(6) => (-1, -3),
                    None => (-2, -2),
                    Some(m) => return Err(Error::UnsupportedBondOrder(m)),
                };
                cartan[i][j] = a;
                cartan[j][i] = b;
            }
        }
        Ok(Self { names, bonds, weights, cartan })
    }

    /// Affine G2 with `s1 -6- s2 -3- s3` and weights `(a, b, b)`.
    pub fn g2_affine(a: i32, b: i32) -> Result<Self> {
        Self::new(
            vec!["s1".into(), "s2".into(), "s3".into()],
            vec![vec![1, 6, 2], vec![6, 1, 3], vec![2, 3, 1]],
            vec![a, b, b],
        )
    }

    /// The dihedral group `I2(m)` with both weights given.
    pub fn dihedral(m: u32, a: i32, b: i32) -> Result<Self> {
        Self::new(vec!["s1".into(), "s2".into()], vec![vec![1, m], vec![m, 1]], vec![a, b])
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, s: Gen) -> &str {
        &self.names[s]
    }

    pub fn gen_by_name(&self, name: &str) -> Result<Gen> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn bond(&self, s: Gen, t: Gen) -> Bond {
        self.bonds[s][t]
    }

    /// The matrix with infinity written as 0.
    pub fn matrix(&self) -> Vec<Vec<u32>> {
        self.bonds
            .iter()
            .map(|row| row.iter().map(|b| b.unwrap_or(0)).collect())
            .collect()
    }

    pub fn weight(&self, s: Gen) -> i32 {
        self.weights[s]
    }

    pub fn weights(&self) -> &[i32] {
        &self.weights
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    fn gen_set_string(&self, set: GenSet) -> String {
        let names: Vec<&str> = set.iter().map(|s| self.name(s)).collect();
        format!("{{{}}}", names.join(","))
    }

    /// Column-major matrix of the simple reflection `s` on the root lattice.
    fn reflection(&self, s: Gen) -> Vec<i64> {
        let n = self.rank();
        let mut m = vec![0i64; n * n];
        for j in 0..n {
            // column j: sigma_s(alpha_j) = alpha_j - cartan[s][j] alpha_s
            m[j * n + j] += 1;
            m[j * n + s] -= self.cartan[s][j];
        }
        m
    }
}

fn mat_mul(n: usize, a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; n * n];
    for j in 0..n {
        for k in 0..n {
            let bkj = b[j * n + k];
            if bkj == 0 {
                continue;
            }
            for i in 0..n {
                out[j * n + i] += a[k * n + i] * bkj;
            }
        }
    }
    out
}

/// Default cap on the number of elements a ball may hold.
pub const DEFAULT_ELEMENT_CAP: usize = 500_000;

/// All elements of length at most `radius`, with generator transition tables.
#[derive(Clone)]
pub struct Ball {
    system: CoxeterSystem,
    radius: usize,
    words: Vec<Vec<u8>>,
    lengths: Vec<u32>,
    level_start: Vec<usize>,
    left: Vec<Option<Elem>>,
    right: Vec<Option<Elem>>,
    inverse: Vec<Elem>,
    left_desc: Vec<GenSet>,
    right_desc: Vec<GenSet>,
    matrices: Vec<Vec<i64>>,
    below: Vec<FixedBitSet>,
}

impl fmt::Debug for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ball")
            .field("radius", &self.radius)
            .field("size", &self.len())
            .finish()
    }
}

impl Ball {
    pub fn new(system: CoxeterSystem, radius: usize) -> Result<Self> {
        Self::with_cap(system, radius, DEFAULT_ELEMENT_CAP)
    }

    pub fn with_cap(system: CoxeterSystem, radius: usize, cap: usize) -> Result<Self> {
        let n = system.rank();
        let refl: Vec<Vec<i64>> = (0..n).map(|s| system.reflection(s)).collect();
        let mut identity = vec![0i64; n * n];
        for i in 0..n {
            identity[i * n + i] = 1;
        }

        let mut words: Vec<Vec<u8>> = vec![vec![]];
        let mut matrices: Vec<Vec<i64>> = vec![identity];
        let mut lengths = vec![0u32];
        let mut level_start = vec![0usize, 1];
        let mut lookup: HashMap<Vec<i64>, u32> = HashMap::new();
        lookup.insert(matrices[0].clone(), 0);

        // Right descent of w at s iff w(alpha_s) is a negative root.
        let right_descents = |m: &[i64]| -> GenSet {
            let mut d = GenSet::EMPTY;
            for s in 0..n {
                if m[s * n..(s + 1) * n].iter().all(|c| *c <= 0) {
                    d.insert(s);
                }
            }
            d
        };

        for len in 0..radius {
            let (lo, hi) = (level_start[len], level_start[len + 1]);
            for w in lo..hi {
                let desc = right_descents(&matrices[w]);
                for s in 0..n {
                    if desc.contains(s) {
                        continue;
                    }
                    let m = mat_mul(n, &matrices[w], &refl[s]);
                    if lookup.contains_key(&m) {
                        continue;
                    }
                    if words.len() >= cap {
                        return Err(Error::ResourceLimit(cap));
                    }
                    let mut word = words[w].clone();
                    word.push(s as u8);
                    lookup.insert(m.clone(), words.len() as u32);
                    words.push(word);
                    matrices.push(m);
                    lengths.push(len as u32 + 1);
                }
            }
            level_start.push(words.len());
        }

        let size = words.len();
        let mut left = vec![None; size * n];
        let mut right = vec![None; size * n];
        let mut right_desc = vec![GenSet::EMPTY; size];
        let mut left_desc = vec![GenSet::EMPTY; size];
        for w in 0..size {
            right_desc[w] = right_descents(&matrices[w]);
            for s in 0..n {
                let r = mat_mul(n, &matrices[w], &refl[s]);
                right[w * n + s] = lookup.get(&r).map(|i| Elem(*i));
                let l = mat_mul(n, &refl[s], &matrices[w]);
                let le = lookup.get(&l).map(|i| Elem(*i));
                left[w * n + s] = le;
                if let Some(x) = le {
                    if lengths[x.idx()] < lengths[w] {
                        left_desc[w].insert(s);
                    }
                }
            }
        }

        let mut ball = Ball {
            system,
            radius,
            words,
            lengths,
            level_start,
            left,
            right,
            inverse: vec![Elem::IDENTITY; size],
            left_desc,
            right_desc,
            matrices,
            below: Vec::new(),
        };
        for w in 0..size {
            let mut x = Elem::IDENTITY;
            for &s in ball.words[w].iter().rev() {
                x = ball.mul_gen(x, s as Gen, Side::Right).expect("inverse stays in ball");
            }
            ball.inverse[w] = x;
        }
        ball.build_bruhat();
        Ok(ball)
    }

    // {y <= w} = {x, sx : x <= sw} for any s in L(w).
    fn build_bruhat(&mut self) {
        let size = self.len();
        let mut below: Vec<FixedBitSet> = Vec::with_capacity(size);
        let mut id = FixedBitSet::with_capacity(size);
        id.insert(0);
        below.push(id);
        for w in 1..size {
            let s = self.words[w][0] as Gen;
            let sw = self.left[w * self.rank() + s].expect("prefix is in ball");
            let mut set = below[sw.idx()].clone();
            set.grow(size);
            for x in below[sw.idx()].ones() {
                let sx = self.left[x * self.rank() + s].expect("shorter than w");
                set.insert(sx.idx());
            }
            below.push(set);
        }
        self.below = below;
    }

    pub fn system(&self) -> &CoxeterSystem {
        &self.system
    }

    pub fn rank(&self) -> usize {
        self.system.rank()
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn elements(&self) -> impl DoubleEndedIterator<Item = Elem> + ExactSizeIterator {
        (0..self.len() as u32).map(Elem)
    }

    /// Elements of exactly the given length.
    pub fn level(&self, len: usize) -> impl Iterator<Item = Elem> {
        let (lo, hi) = if len <= self.radius {
            (self.level_start[len], self.level_start[len + 1])
        } else {
            (0, 0)
        };
        (lo as u32..hi as u32).map(Elem)
    }

    /// Elements of length at most `len`.
    pub fn up_to(&self, len: usize) -> impl Iterator<Item = Elem> {
        let hi = self.level_start[len.min(self.radius) + 1];
        (0..hi as u32).map(Elem)
    }

    pub fn length(&self, w: Elem) -> usize {
        self.lengths[w.idx()] as usize
    }

    /// Canonical (ShortLex-least) reduced word as generator indices.
    pub fn word(&self, w: Elem) -> &[u8] {
        &self.words[w.idx()]
    }

    /// Word as `s1.s2.s1`; the identity is `e`.
    pub fn word_string(&self, w: Elem) -> String {
        let word = self.word(w);
        if word.is_empty() {
            return "e".into();
        }
        word.iter()
            .map(|s| self.system.name(*s as Gen))
            .collect::<Vec<_>>()
            .join(".")
    }

    pub fn mul_gen(&self, w: Elem, s: Gen, side: Side) -> Option<Elem> {
        let n = self.rank();
        match side {
            Side::Left => self.left[w.idx() * n + s],
            Side::Right => self.right[w.idx() * n + s],
        }
    }

    /// Multiplies `w` by each letter of `word` on the given side, in order.
    pub fn mul_word(&self, w: Elem, word: &[Gen], side: Side) -> Option<Elem> {
        let mut x = w;
        match side {
            Side::Right => {
                for &s in word {
                    x = self.mul_gen(x, s, Side::Right)?;
                }
            }
            Side::Left => {
                for &s in word.iter().rev() {
                    x = self.mul_gen(x, s, Side::Left)?;
                }
            }
        }
        Some(x)
    }

    /// Product `x * y`, if it lies in the ball.
    pub fn mul(&self, x: Elem, y: Elem) -> Option<Elem> {
        let word: Vec<Gen> = self.word(y).iter().map(|s| *s as Gen).collect();
        self.mul_word(x, &word, Side::Right)
    }

    pub fn inverse(&self, w: Elem) -> Elem {
        self.inverse[w.idx()]
    }

    pub fn left_descents(&self, w: Elem) -> GenSet {
        self.left_desc[w.idx()]
    }

    pub fn right_descents(&self, w: Elem) -> GenSet {
        self.right_desc[w.idx()]
    }

    pub fn descents(&self, w: Elem, side: Side) -> GenSet {
        match side {
            Side::Left => self.left_descents(w),
            Side::Right => self.right_descents(w),
        }
    }

    /// `(length, left descents, right descents)`.
    pub fn length_descents(&self, w: Elem) -> (usize, GenSet, GenSet) {
        (self.length(w), self.left_descents(w), self.right_descents(w))
    }

    /// Bruhat order `y <= w`.
    pub fn bruhat_leq(&self, y: Elem, w: Elem) -> bool {
        self.below[w.idx()].contains(y.idx())
    }

    pub fn bruhat_lt(&self, y: Elem, w: Elem) -> bool {
        y != w && self.bruhat_leq(y, w)
    }

    /// All `y <= w`, in index order.
    pub fn bruhat_interval(&self, w: Elem) -> impl Iterator<Item = Elem> + '_ {
        self.below[w.idx()].ones().map(|i| Elem(i as u32))
    }

    /// Image of the element in the root-lattice representation (column-major).
    pub fn matrix(&self, w: Elem) -> &[i64] {
        &self.matrices[w.idx()]
    }

    /// Parses a word such as `s1.s2.s1`, `s1 s2` or `e`, and reduces it in the ball.
    pub fn parse(&self, text: &str) -> Result<Elem> {
        let gens = self.parse_gens(text)?;
        self.mul_word(Elem::IDENTITY, &gens, Side::Right)
            .ok_or_else(|| Error::NotInBall(text.to_string(), self.radius))
    }

    /// Parses a word (or a comma-separated generator list) into generator indices without reducing it.
    pub fn parse_gens(&self, text: &str) -> Result<Vec<Gen>> {
        let text = text.trim();
        if text.is_empty() || text == "e" {
            return Ok(vec![]);
        }
        text.split(['.', ' ', '*', ','])
            .filter(|t| !t.is_empty())
            .map(|t| self.system.gen_by_name(t))
            .collect()
    }

    pub fn gen_elem(&self, s: Gen) -> Elem {
        self.mul_gen(Elem::IDENTITY, s, Side::Left)
            .expect("radius >= 1 for generator lookups")
    }

    pub fn gen_set_string(&self, set: GenSet) -> String {
        self.system.gen_set_string(set)
    }

    /// Parabolic data for the subgroup generated by `j`.
    pub fn coset_data(&self, j: GenSet) -> Result<Parabolic> {
        let mut elements = vec![Elem::IDENTITY];
        let mut seen = vec![false; self.len()];
        seen[0] = true;
        let mut head = 0;
        while head < elements.len() {
            let w = elements[head];
            head += 1;
            for s in j.iter() {
                let x = self
                    .mul_gen(w, s, Side::Right)
                    .ok_or_else(|| Error::ParabolicNotClosedInBall(self.gen_set_string(j)))?;
                if !seen[x.idx()] {
                    seen[x.idx()] = true;
                    elements.push(x);
                }
            }
        }
        elements.sort();
        let longest = *elements.last().expect("nonempty");
        let reps = self
            .elements()
            .filter(|w| self.right_descents(*w).0 & j.0 == 0)
            .collect();
        Ok(Parabolic { gens: j, elements, longest, reps })
    }
}

/// A finite standard parabolic subgroup `W_J` and its minimal left coset representatives.
#[derive(Clone, Debug)]
pub struct Parabolic {
    pub gens: GenSet,
    /// `W_J`, sorted.
    pub elements: Vec<Elem>,
    pub longest: Elem,
    /// `X_J` within the ball: elements with no right descent in `J`.
    pub reps: Vec<Elem>,
}

impl Parabolic {
    pub fn contains(&self, w: Elem) -> bool {
        self.elements.binary_search(&w).is_ok()
    }
}

/// `J ⊆ R(w)`.
pub fn in_right_ideal_set(ball: &Ball, w: Elem, j: GenSet) -> bool {
    j.is_subset(ball.right_descents(w))
}

/// `J ⊆ L(w)`.
pub fn in_left_ideal_set(ball: &Ball, w: Elem, j: GenSet) -> bool {
    j.is_subset(ball.left_descents(w))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g2(n: usize) -> Ball {
        Ball::new(CoxeterSystem::g2_affine(5, 1).unwrap(), n).unwrap()
    }

    #[test]
    fn build_system_examples() {
        assert!(CoxeterSystem::g2_affine(5, 1).is_ok());
        let bad = CoxeterSystem::new(
            vec!["s1".into(), "s2".into(), "s3".into()],
            vec![vec![1, 6, 2], vec![6, 1, 3], vec![2, 3, 1]],
            vec![5, 1, 2],
        );
        assert!(matches!(bad, Err(Error::WeightConjugacyViolation(..))));
        assert!(CoxeterSystem::dihedral(3, 1, 1).is_ok());
        assert!(matches!(CoxeterSystem::dihedral(5, 1, 1), Err(Error::UnsupportedBondOrder(5))));
        let asym = CoxeterSystem::new(
            vec!["a".into(), "b".into()],
            vec![vec![1, 4], vec![3, 1]],
            vec![1, 1],
        );
        assert!(matches!(asym, Err(Error::NonSymmetricMatrix(..))));
    }

    #[test]
    fn ball_sizes() {
        assert_eq!(g2(0).len(), 1);
        assert_eq!(g2(1).len(), 4);
        assert_eq!(g2(2).len(), 9);
    }

    #[test]
    fn ball_respects_cap() {
        let sys = CoxeterSystem::g2_affine(5, 1).unwrap();
        assert!(matches!(Ball::with_cap(sys, 10, 20), Err(Error::ResourceLimit(20))));
    }

    #[test]
    fn mul_gen_examples() {
        let b = g2(4);
        let s2 = b.parse("s2").unwrap();
        assert_eq!(b.mul_gen(Elem::IDENTITY, 1, Side::Right), Some(s2));
        assert_eq!(b.mul_gen(s2, 1, Side::Right), Some(Elem::IDENTITY));
        let s1s3 = b.parse("s1.s3").unwrap();
        assert_eq!(b.mul_gen(s1s3, 0, Side::Right), Some(b.parse("s3").unwrap()));
        // s3 s1 is written s1 s3 canonically
        assert_eq!(b.word_string(b.parse("s3.s1").unwrap()), "s1.s3");
        let top = b.level(4).next().unwrap();
        assert!(b.elements().filter(|w| b.length(*w) == 4).all(|w| {
            (0..3).any(|s| b.mul_gen(w, s, Side::Right).is_none())
        }));
        assert_eq!(b.length(top), 4);
    }

    #[test]
    fn length_descent_examples() {
        let b = g2(6);
        assert_eq!(b.length_descents(Elem::IDENTITY), (0, GenSet::EMPTY, GenSet::EMPTY));
        let w0 = b.parse("s2.s3.s2").unwrap();
        let both = GenSet::from_gens([1, 2]);
        assert_eq!(b.length_descents(w0), (3, both, both));
        let u1 = b.parse("s1.s2.s1.s2.s1").unwrap();
        assert_eq!(b.right_descents(u1), GenSet::from_gens([0]));
    }

    #[test]
    fn bruhat_examples() {
        let b = g2(6);
        assert!(b.elements().all(|w| b.bruhat_leq(Elem::IDENTITY, w)));
        let s2 = b.parse("s2").unwrap();
        let x = b.parse("s1.s2.s1").unwrap();
        let y = b.parse("s2.s1.s2").unwrap();
        assert!(b.bruhat_leq(s2, x));
        assert!(!b.bruhat_leq(x, y));
        assert!(!b.bruhat_leq(y, x));
    }

    #[test]
    fn inverse_examples() {
        let b = g2(6);
        assert_eq!(b.inverse(Elem::IDENTITY), Elem::IDENTITY);
        let x = b.parse("s1.s2").unwrap();
        assert_eq!(b.inverse(x), b.parse("s2.s1").unwrap());
        assert!(b.elements().all(|w| b.inverse(b.inverse(w)) == w));
    }

    #[test]
    fn coset_examples() {
        let b = g2(8);
        let empty = b.coset_data(GenSet::EMPTY).unwrap();
        assert_eq!(empty.elements, vec![Elem::IDENTITY]);
        assert_eq!(empty.reps.len(), b.len());
        let j = GenSet::from_gens([1, 2]);
        let p = b.coset_data(j).unwrap();
        assert_eq!(p.elements.len(), 6);
        assert_eq!(b.word_string(p.longest), "s2.s3.s2");
        let w = b.parse("s2.s1.s3").unwrap();
        assert!(in_right_ideal_set(&b, w, GenSet::from_gens([0, 2])));
        assert!(matches!(
            b.coset_data(GenSet::from_gens([0, 1, 2])),
            Err(Error::ParabolicNotClosedInBall(_))
        ));
    }

    #[test]
    fn parse_rejects_unknown_and_out_of_ball() {
        let b = g2(2);
        assert!(matches!(b.parse("s4"), Err(Error::UnknownGenerator(_))));
        assert!(matches!(b.parse("s1.s2.s1"), Err(Error::NotInBall(..))));
        assert_eq!(b.parse("s1.s1").unwrap(), Elem::IDENTITY);
    }

    #[test]
    fn bruhat_matches_subword_oracle() {
        let b = g2(6);
        for w in b.elements() {
            let word: Vec<Gen> = b.word(w).iter().map(|s| *s as Gen).collect();
            let mut below = vec![false; b.len()];
            for mask in 0u32..(1 << word.len()) {
                let sub: Vec<Gen> = (0..word.len())
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| word[i])
                    .collect();
                let y = b.mul_word(Elem::IDENTITY, &sub, Side::Right).unwrap();
                below[y.idx()] = true;
            }
            for y in b.elements() {
                assert_eq!(b.bruhat_leq(y, w), below[y.idx()], "{} <= {}", b.word_string(y), b.word_string(w));
            }
        }
    }

    #[test]
    fn descent_and_factorization_invariants() {
        let b = g2(8);
        for w in b.elements() {
            let wi = b.inverse(w);
            assert_eq!(b.length(wi), b.length(w));
            assert_eq!(b.left_descents(w), b.right_descents(wi));
            if b.length(w) > 0 {
                assert!(!b.left_descents(w).is_empty() && !b.right_descents(w).is_empty());
            }
            for s in 0..3 {
                if let Some(sw) = b.mul_gen(w, s, Side::Left) {
                    let down = b.length(sw) + 1 == b.length(w);
                    assert_eq!(down, b.left_descents(w).contains(s));
                    assert_eq!(b.length(sw).abs_diff(b.length(w)), 1);
                }
            }
        }
        let j = GenSet::from_gens([1, 2]);
        let p = b.coset_data(j).unwrap();
        let mut hits = vec![0; b.len()];
        for x in &p.reps {
            for u in &p.elements {
                if let Some(xu) = b.mul(*x, *u) {
                    if b.length(xu) == b.length(*x) + b.length(*u) {
                        hits[xu.idx()] += 1;
                    }
                }
            }
        }
        assert!(b.up_to(5).all(|w| hits[w.idx()] == 1));
    }
}
