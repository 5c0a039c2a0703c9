//! Alcove geometry of affine G2 and the region map of its left cells in the
//! regime `a > 4b`.
//!
//! Points of the plane are written in coordinates `(P, Q)`, the pairings with
//! the two simple coroots, scaled by 12 so that every alcove vertex is an
//! integer point. The fundamental alcove is `P > 0, Q > 0, 2P + 3Q < 1`,
//! whose walls are fixed by `s2` (`P = 0`), `s1` (`Q = 0`) and `s3`
//! (`2P + 3Q = 1`).
//!
//! An element `w = s_{i1} ... s_{ik}` is drawn as the alcove obtained from the
//! fundamental one by applying the wall reflections in word order. Then `ws`
//! is the mirror image of the alcove of `w` in a fixed wall, while `sw` is its
//! neighbour across the face of type `s`, so left cells are connected unions
//! of alcoves.
//!
//! The regions are encoded as a set of thick walls in the data file
//! `data/g2_cell_walls.json` together with one seed point per region. A
//! region is the set of alcoves reachable from its seed without crossing a
//! thick wall.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::Deserialize;

use crate::cells::{CellKind, CellPartition};
use crate::coxeter::{Ball, CoxeterSystem, Elem, Gen, Side};
use crate::error::{Error, Result};

/// Scaled plane point: `(12 P, 12 Q)`.
pub type Pt = (i64, i64);

const SCALE: i64 = 12;

/// The six positive coroots as forms `c1 P + c2 Q`.
pub const COROOT_FORMS: [(i64, i64); 6] = [(1, 0), (0, 1), (1, 1), (1, 2), (1, 3), (2, 3)];

/// The finite root system of type G2 in simple-root coordinates, short simple root first.
#[derive(Clone, Debug)]
pub struct RootSystemG2 {
    pub positive_roots: Vec<(i64, i64)>,
    /// Gram matrix of the simple roots, normalized so the short root has square length 2.
    pub gram: [[i64; 2]; 2],
}

impl Default for RootSystemG2 {
    fn default() -> Self {
        Self {
            positive_roots: vec![(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)],
            gram: [[2, -3], [-3, 6]],
        }
    }
}

impl RootSystemG2 {
    fn inner(&self, a: (i64, i64), b: (i64, i64)) -> i64 {
        let g = &self.gram;
        a.0 * b.0 * g[0][0] + (a.0 * b.1 + a.1 * b.0) * g[0][1] + a.1 * b.1 * g[1][1]
    }

    /// `<a, b^vee> = 2 (a, b) / (b, b)`, or `None` if it is not an integer.
    pub fn pairing(&self, a: (i64, i64), b: (i64, i64)) -> Option<i64> {
        let num = 2 * self.inner(a, b);
        let den = self.inner(b, b);
        (num % den == 0).then_some(num / den)
    }

    /// Reflection `s_b(a) = a - <a, b^vee> b`.
    pub fn reflect(&self, a: (i64, i64), b: (i64, i64)) -> (i64, i64) {
        let k = self.pairing(a, b).expect("integral pairing");
        (a.0 - k * b.0, a.1 - k * b.1)
    }

    pub fn is_root(&self, a: (i64, i64)) -> bool {
        self.positive_roots.contains(&a) || self.positive_roots.contains(&(-a.0, -a.1))
    }
}

/// A triangle of the affine hyperplane arrangement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alcove {
    /// Vertices in canonical (sorted) order.
    pub vertices: [Pt; 3],
}

impl Alcove {
    pub fn fundamental() -> Self {
        Self::new([(0, 0), (0, 4), (6, 0)])
    }

    pub fn new(mut vertices: [Pt; 3]) -> Self {
        vertices.sort();
        Self { vertices }
    }

    fn map(&self, f: impl Fn(Pt) -> Pt) -> Self {
        Self::new(self.vertices.map(f))
    }

    /// Image under the reflection in the wall of the fundamental alcove fixed by generator `s`.
    pub fn reflect(&self, s: Gen) -> Self {
        self.map(|pt| reflect_point(s, pt))
    }

    /// Integer parts of the six coroot pairings on the interior.
    pub fn floors(&self) -> [i64; 6] {
        let sx: i64 = self.vertices.iter().map(|v| v.0).sum();
        let sy: i64 = self.vertices.iter().map(|v| v.1).sum();
        COROOT_FORMS.map(|(a, b)| (a * sx + b * sy).div_euclid(3 * SCALE))
    }

    /// Number of affine walls separating this alcove from the fundamental one.
    pub fn separation(&self) -> usize {
        self.floors().iter().map(|k| k.unsigned_abs() as usize).sum()
    }

    /// The face shared with another alcove, if any.
    pub fn shared_face(&self, other: &Alcove) -> Option<(Pt, Pt)> {
        let common: Vec<Pt> = self.vertices.iter().copied().filter(|v| other.vertices.contains(v)).collect();
        (common.len() == 2).then(|| (common[0], common[1]))
    }

    /// Strict interior test for a point given as `(x, y) / den`.
    pub fn contains_strictly(&self, x: i128, y: i128, den: i128) -> bool {
        let [a, b, c] = self.vertices.map(|(p, q)| (p as i128 * den, q as i128 * den));
        let side = |u: (i128, i128), v: (i128, i128)| (v.0 - u.0) * (y - u.1) - (v.1 - u.1) * (x - u.0);
        let (d1, d2, d3) = (side(a, b), side(b, c), side(c, a));
        (d1 > 0 && d2 > 0 && d3 > 0) || (d1 < 0 && d2 < 0 && d3 < 0)
    }
}

fn reflect_point(s: Gen, (p, q): Pt) -> Pt {
    match s {
        0 => (p + 3 * q, -q),
        1 => (-p, q + p),
        2 => (SCALE - p - 3 * q, q),
        _ => unreachable!("affine G2 has three generators"),
    }
}

fn check_g2(ball: &Ball) -> Result<()> {
    let sys = ball.system();
    if sys.rank() != 3 {
        return Err(Error::UnsupportedRank(sys.rank()));
    }
    if sys.matrix() != vec![vec![1, 6, 2], vec![6, 1, 3], vec![2, 3, 1]] {
        return Err(Error::InvalidData("alcove geometry needs the affine G2 matrix s1-6-s2-3-s3".into()));
    }
    Ok(())
}

/// Alcoves of every ball element, indexed like the ball.
pub fn alcoves(ball: &Ball) -> Result<Vec<Alcove>> {
    check_g2(ball)?;
    let mut out: Vec<Alcove> = Vec::with_capacity(ball.len());
    for w in ball.elements() {
        if w == Elem::IDENTITY {
            out.push(Alcove::fundamental());
            continue;
        }
        let s = *ball.word(w).last().expect("nonidentity") as Gen;
        let prefix = ball.mul_gen(w, s, Side::Right).expect("shorter");
        out.push(out[prefix.idx()].reflect(s));
    }
    Ok(out)
}

/// Alcove of a single element.
pub fn alcove_of(ball: &Ball, w: Elem) -> Result<Alcove> {
    check_g2(ball)?;
    Ok(ball.word(w).iter().fold(Alcove::fundamental(), |a, s| a.reflect(*s as Gen)))
}

/// The regions of the left-cell map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Region {
    A(u8),
    APrime(u8),
    B(u8),
    C(u8),
    D(u8),
    E(u8),
    F,
    Identity,
}

/// Two-sided classes of regions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    Identity,
}

impl Region {
    pub fn all() -> Vec<Region> {
        let mut v = Vec::new();
        for i in 1..=6 {
            v.push(Region::A(i));
        }
        for i in 1..=6 {
            v.push(Region::APrime(i));
        }
        for i in 1..=6 {
            v.push(Region::B(i));
        }
        for i in 1..=6 {
            v.push(Region::C(i));
        }
        for i in 1..=3 {
            v.push(Region::D(i));
        }
        v.extend([Region::E(1), Region::E(2), Region::F, Region::Identity]);
        v
    }

    pub fn family(self) -> Family {
        match self {
            Region::A(_) | Region::APrime(_) => Family::A,
            Region::B(_) => Family::B,
            Region::C(_) => Family::C,
            Region::D(_) => Family::D,
            Region::E(_) => Family::E,
            Region::F => Family::F,
            Region::Identity => Family::Identity,
        }
    }

    pub fn parse(text: &str) -> Option<Region> {
        Region::all().into_iter().find(|r| r.to_string() == text)
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Region::A(i) => write!(f, "A{i}"),
            Region::APrime(i) => write!(f, "A'{i}"),
            Region::B(i) => write!(f, "B{i}"),
            Region::C(i) => write!(f, "C{i}"),
            Region::D(i) => write!(f, "D{i}"),
            Region::E(i) => write!(f, "E{i}"),
            Region::F => write!(f, "F"),
            Region::Identity => write!(f, "e"),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E => "E",
            Family::F => "F",
            Family::Identity => "e",
        };
        f.write_str(s)
    }
}

#[derive(Deserialize)]
struct RayData {
    from: [f64; 2],
    angle: u32,
}

#[derive(Deserialize)]
struct WallData {
    polygons: Vec<Vec<[f64; 2]>>,
    segments: Vec<[[f64; 2]; 2]>,
    rays: Vec<RayData>,
    seeds: BTreeMap<String, [f64; 2]>,
}

const WALL_DATA: &str = include_str!("../data/g2_cell_walls.json");

/// Horizontal figure unit, `sqrt(3)/4` rounded as in the data file.
const X_UNIT_MILLI: i64 = 433;

fn lattice_point(p: [f64; 2]) -> Result<Pt> {
    let kx = (p[0] * 1000.0 / X_UNIT_MILLI as f64).round() as i64;
    let ky = (p[1] * 4.0).round() as i64;
    if (p[0] * 1000.0 - (kx * X_UNIT_MILLI) as f64).abs() > 5.0 || (p[1] * 4.0 - ky as f64).abs() > 1e-9 {
        return Err(Error::InvalidData(format!("wall point {p:?} is not a lattice point")));
    }
    Ok((6 * kx, ky - 3 * kx))
}

fn ray_direction(angle: u32) -> Result<Pt> {
    let (kx, ky) = match angle {
        0 => (1, 0),
        30 => (1, 1),
        60 => (1, 3),
        90 => (0, 1),
        120 => (-1, 3),
        150 => (-1, 1),
        180 => (-1, 0),
        210 => (-1, -1),
        240 => (-1, -3),
        270 => (0, -1),
        300 => (1, -3),
        330 => (1, -1),
        _ => return Err(Error::InvalidData(format!("unsupported ray angle {angle}"))),
    };
    Ok((6 * kx, ky - 3 * kx))
}

/// A seed as `(x, y, den)` in scaled coordinates.
fn seed_point(p: [f64; 2]) -> (i128, i128, i128) {
    let xm = (p[0] * 1000.0).round() as i128;
    let ym = (p[1] * 1000.0).round() as i128;
    // kx = xm / 433, ky = 4 ym / 1000; scaled P = 6 kx, Q = ky - 3 kx.
    let den = 433 * 1000;
    let x = 6 * xm * 1000;
    let y = 4 * ym * 433 - 3 * xm * 1000;
    (x, y, den)
}

#[derive(Clone, Debug)]
enum Wall {
    Segment(Pt, Pt),
    Ray(Pt, Pt),
}

fn cross(a: Pt, b: Pt) -> i128 {
    a.0 as i128 * b.1 as i128 - a.1 as i128 * b.0 as i128
}

fn dot(a: Pt, b: Pt) -> i128 {
    a.0 as i128 * b.0 as i128 + a.1 as i128 * b.1 as i128
}

fn sub(a: Pt, b: Pt) -> Pt {
    (a.0 - b.0, a.1 - b.1)
}

impl Wall {
    fn contains_point(&self, x: Pt) -> bool {
        match *self {
            Wall::Segment(a, b) => {
                let (d, u) = (sub(b, a), sub(x, a));
                cross(d, u) == 0 && dot(d, u) >= 0 && dot(d, u) <= dot(d, d)
            }
            Wall::Ray(a, d) => {
                let u = sub(x, a);
                cross(d, u) == 0 && dot(d, u) >= 0
            }
        }
    }

    fn contains_face(&self, (u, v): (Pt, Pt)) -> bool {
        self.contains_point(u) && self.contains_point(v)
    }
}

/// The region map, materialized on the alcoves of a window ball.
#[derive(Clone, Debug)]
pub struct Classifier {
    walls: Vec<Wall>,
    labels: HashMap<Alcove, Region>,
    window: usize,
}

/// Window radius used when none is given; comfortably larger than any ball used for checks.
pub const DEFAULT_WINDOW: usize = 40;

impl Classifier {
    pub fn new() -> Result<Self> {
        Self::with_window(DEFAULT_WINDOW)
    }

    /// Flood-fills the region map over the alcoves of the ball of the given radius.
    pub fn with_window(window: usize) -> Result<Self> {
        let data: WallData =
            serde_json::from_str(WALL_DATA).map_err(|e| Error::InvalidData(format!("wall data: {e}")))?;
        let mut walls = Vec::new();
        for poly in &data.polygons {
            let pts: Vec<Pt> = poly.iter().map(|p| lattice_point(*p)).collect::<Result<_>>()?;
            for i in 0..pts.len() {
                walls.push(Wall::Segment(pts[i], pts[(i + 1) % pts.len()]));
            }
        }
        for seg in &data.segments {
            walls.push(Wall::Segment(lattice_point(seg[0])?, lattice_point(seg[1])?));
        }
        for ray in &data.rays {
            walls.push(Wall::Ray(lattice_point(ray.from)?, ray_direction(ray.angle)?));
        }

        let sys = CoxeterSystem::g2_affine(1, 1).expect("valid");
        let ball = Ball::new(sys, window)?;
        let alc = alcoves(&ball)?;
        let n = ball.len();

        let mut seeds: Vec<(Region, usize)> = Vec::new();
        for (name, pt) in &data.seeds {
            let region = Region::parse(name).ok_or_else(|| Error::InvalidData(format!("unknown region {name}")))?;
            let (x, y, den) = seed_point(*pt);
            let hits: Vec<usize> = (0..n).filter(|i| alc[*i].contains_strictly(x, y, den)).collect();
            match hits.as_slice() {
                [i] => seeds.push((region, *i)),
                _ => {
                    return Err(Error::InvalidData(format!(
                        "seed of {name} lies in {} alcoves of the window",
                        hits.len()
                    )))
                }
            }
        }

        let mut label: Vec<Option<Region>> = vec![None; n];
        for (region, start) in &seeds {
            if let Some(other) = label[*start] {
                return Err(Error::InvalidData(format!("regions {region} and {other} are connected")));
            }
            let mut stack = vec![*start];
            label[*start] = Some(*region);
            while let Some(i) = stack.pop() {
                for s in 0..3 {
                    let Some(j) = ball.mul_gen(Elem(i as u32), s, Side::Left) else { continue };
                    let j = j.idx();
                    let face = alc[i].shared_face(&alc[j]).expect("left neighbours share a face");
                    if walls.iter().any(|w| w.contains_face(face)) {
                        continue;
                    }
                    match label[j] {
                        None => {
                            label[j] = Some(*region);
                            stack.push(j);
                        }
                        Some(r) if r != *region => {
                            return Err(Error::InvalidData(format!("regions {region} and {r} are connected")));
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        let mut labels = HashMap::with_capacity(n);
        for i in 0..n {
            let region = label[i].ok_or_else(|| {
                Error::UnclassifiedAlcove(format!("{} is reached by no seed", ball.word_string(Elem(i as u32))))
            })?;
            labels.insert(alc[i], region);
        }
        Ok(Self { walls, labels, window })
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn classify(&self, alcove: &Alcove) -> Result<Region> {
        self.labels
            .get(alcove)
            .copied()
            .ok_or_else(|| Error::UnclassifiedAlcove(format!("{:?}", alcove.vertices)))
    }

    /// Whether the face between two alcoves lies on a thick wall.
    pub fn is_thick(&self, face: (Pt, Pt)) -> bool {
        self.walls.iter().any(|w| w.contains_face(face))
    }

    /// Region of every element of the ball.
    pub fn classify_ball(&self, ball: &Ball) -> Result<Vec<Region>> {
        alcoves(ball)?.iter().map(|a| self.classify(a)).collect()
    }
}

/// A ball with the region of each element.
#[derive(Clone, Debug)]
pub struct RegionMap {
    pub regions: Vec<Region>,
}

impl RegionMap {
    pub fn new(classifier: &Classifier, ball: &Ball) -> Result<Self> {
        Ok(Self { regions: classifier.classify_ball(ball)? })
    }

    pub fn region(&self, w: Elem) -> Region {
        self.regions[w.idx()]
    }

    /// Elements of a region, sorted.
    pub fn members(&self, region: Region) -> Vec<Elem> {
        (0..self.regions.len() as u32).map(Elem).filter(|w| self.regions[w.idx()] == region).collect()
    }

    pub fn family_members(&self, family: Family) -> Vec<Elem> {
        (0..self.regions.len() as u32).map(Elem).filter(|w| self.regions[w.idx()].family() == family).collect()
    }

    /// Bit mask of the union of the given regions.
    pub fn mask(&self, regions: &[Region]) -> FixedBitSet {
        let mut m = FixedBitSet::with_capacity(self.regions.len());
        for (i, r) in self.regions.iter().enumerate() {
            if regions.contains(r) {
                m.insert(i);
            }
        }
        m
    }

    /// Least element of a region (by length, then ShortLex).
    pub fn min_element(&self, region: Region) -> Option<Elem> {
        self.members(region).first().copied()
    }
}

/// The partition of the ball predicted by the region map.
pub fn predicted_partition(classifier: &Classifier, ball: &Ball, interior_length: usize) -> Result<CellPartition> {
    let map = RegionMap::new(classifier, ball)?;
    let sets: Vec<Vec<Elem>> = Region::all().into_iter().map(|r| map.members(r)).collect();
    CellPartition::from_sets(ball, CellKind::Left, sets, interior_length)
}

/// Minimal elements named in the constructions with induction data.
#[derive(Clone, Debug)]
pub struct Anchors {
    pub u: [Elem; 6],
    pub v: [Elem; 6],
    pub v_prime: [Elem; 6],
}

impl Anchors {
    pub fn new(map: &RegionMap) -> Result<Self> {
        let pick = |r: Region| {
            map.min_element(r)
                .ok_or_else(|| Error::InvalidData(format!("region {r} has no element in the ball")))
        };
        let mut u = [Elem::IDENTITY; 6];
        let mut v = [Elem::IDENTITY; 6];
        let mut vp = [Elem::IDENTITY; 6];
        for i in 0..6 {
            u[i] = pick(Region::C(i as u8 + 1))?;
            v[i] = pick(Region::A(i as u8 + 1))?;
            vp[i] = pick(Region::APrime(i as u8 + 1))?;
        }
        Ok(Self { u, v, v_prime: vp })
    }
}

/// Rendering options for [`emit_svg`].
#[derive(Clone, Debug)]
pub struct SvgStyle {
    /// Pixels per horizontal lattice step (`sqrt(3)/4` figure units).
    pub x_step: i64,
    /// Pixels per vertical lattice step (`1/4` figure unit).
    pub y_step: i64,
    pub show_walls: bool,
}

impl Default for SvgStyle {
    fn default() -> Self {
        Self { x_step: 26, y_step: 15, show_walls: true }
    }
}

fn svg_xy(style: &SvgStyle, (p, q): Pt) -> (i64, i64) {
    // p = 6 kx, q = ky - 3 kx
    let kx = p / 6;
    let ky = q + 3 * kx;
    (kx * style.x_step, -ky * style.y_step)
}

fn fill_color(i: usize) -> String {
    let hue = (i * 137) % 360;
    let light = 55 + (i % 3) * 10;
    format!("hsl({hue},60%,{light}%)")
}

/// Deterministic SVG of the ball's alcoves, colored by cell, with strokes between distinct cells.
pub fn emit_svg(
    ball: &Ball,
    partition: &CellPartition,
    labels: Option<&[String]>,
    style: &SvgStyle,
) -> Result<String> {
    let alc = alcoves(ball)?;
    let pts: Vec<[(i64, i64); 3]> = alc.iter().map(|a| a.vertices.map(|v| svg_xy(style, v))).collect();
    let (mut x0, mut y0, mut x1, mut y1) = (0i64, 0i64, 0i64, 0i64);
    for tri in &pts {
        for (x, y) in tri {
            x0 = x0.min(*x);
            y0 = y0.min(*y);
            x1 = x1.max(*x);
            y1 = y1.max(*y);
        }
    }
    let pad = 10;
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\" width=\"{}\" height=\"{}\">\n",
        x0 - pad,
        y0 - pad,
        x1 - x0 + 2 * pad,
        y1 - y0 + 2 * pad,
        x1 - x0 + 2 * pad,
        y1 - y0 + 2 * pad
    ));
    out.push_str("<g stroke=\"#999\" stroke-width=\"0.5\">\n");
    for w in ball.elements() {
        let cell = partition.cell_index(w);
        let name = ball.word_string(w);
        let label = labels.map(|l| l[cell].as_str()).unwrap_or("");
        let [a, b, c] = pts[w.idx()];
        out.push_str(&format!(
            "<polygon id=\"alcove-{name}\" data-cell=\"{cell}\" data-label=\"{label}\" fill=\"{}\" points=\"{},{} {},{} {},{}\"/>\n",
            fill_color(cell),
            a.0, a.1, b.0, b.1, c.0, c.1
        ));
    }
    out.push_str("</g>\n");
    if style.show_walls {
        out.push_str("<g stroke=\"#000\" stroke-width=\"2.5\" stroke-linecap=\"round\">\n");
        for w in ball.elements() {
            for s in 0..ball.rank() {
                let Some(sw) = ball.mul_gen(w, s, Side::Left) else { continue };
                if sw < w || partition.same_cell(w, sw) {
                    continue;
                }
                let (u, v) = alc[w.idx()].shared_face(&alc[sw.idx()]).expect("neighbours");
                let (a, b) = (svg_xy(style, u), svg_xy(style, v));
                out.push_str(&format!("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n", a.0, a.1, b.0, b.1));
            }
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::OnceLock;

    fn classifier() -> &'static Classifier {
        static C: OnceLock<Classifier> = OnceLock::new();
        C.get_or_init(|| Classifier::new().unwrap())
    }

    fn ball(n: usize) -> Ball {
        Ball::new(CoxeterSystem::g2_affine(5, 1).unwrap(), n).unwrap()
    }

    #[test]
    fn root_system_is_closed_and_integral() {
        let rs = RootSystemG2::default();
        for a in &rs.positive_roots {
            for b in &rs.positive_roots {
                assert!(rs.pairing(*a, *b).is_some());
                assert!(rs.is_root(rs.reflect(*a, *b)));
            }
        }
    }

    #[test]
    fn fundamental_alcove_has_zero_floors() {
        assert_eq!(Alcove::fundamental().floors(), [0; 6]);
        for s in 0..3 {
            let a = Alcove::fundamental().reflect(s);
            assert_eq!(a.separation(), 1);
            assert!(a.shared_face(&Alcove::fundamental()).is_some());
        }
    }

    #[test]
    fn length_is_separation() {
        let b = ball(10);
        let alc = alcoves(&b).unwrap();
        for w in b.elements() {
            assert_eq!(alc[w.idx()].separation(), b.length(w));
            assert_eq!(alc[w.idx()], alcove_of(&b, w).unwrap());
        }
        let distinct: std::collections::HashSet<_> = alc.iter().collect();
        assert_eq!(distinct.len(), b.len());
    }

    #[test]
    fn descents_match_geometry() {
        let b = ball(8);
        let alc = alcoves(&b).unwrap();
        for w in b.elements() {
            for s in 0..3 {
                if let Some(sw) = b.mul_gen(w, s, Side::Left) {
                    assert!(alc[w.idx()].shared_face(&alc[sw.idx()]).is_some());
                    let down = alc[sw.idx()].separation() + 1 == b.length(w);
                    assert_eq!(down, b.left_descents(w).contains(s));
                }
            }
        }
    }

    #[test]
    fn anchors_classify() {
        let b = ball(12);
        let c = classifier();
        let region = |w: &str| c.classify(&alcove_of(&b, b.parse(w).unwrap()).unwrap()).unwrap();
        assert_eq!(region("e"), Region::Identity);
        assert_eq!(region("s1.s2.s1.s2.s1"), Region::C(1));
        assert_eq!(region("s1.s2.s1.s2.s1.s2"), Region::A(1));
        assert_eq!(region("s2.s3.s2"), Region::F);
        assert_eq!(region("s2"), region("s3.s2"));
        assert_eq!(region("s3"), region("s2.s3"));
    }

    #[test]
    fn every_region_is_populated() {
        // The deepest least element, in A'4, has length 16.
        let b = ball(16);
        let map = RegionMap::new(classifier(), &b).unwrap();
        for r in Region::all() {
            assert!(!map.members(r).is_empty(), "{r} is empty");
        }
        let anchors = Anchors::new(&map).unwrap();
        assert_eq!(b.word_string(anchors.u[0]), "s1.s2.s1.s2.s1");
        assert_eq!(b.word_string(anchors.v[0]), "s1.s2.s1.s2.s1.s2");
        assert_eq!(anchors.v[1], b.parse("s2.s1.s2.s1.s2.s1.s3.s2.s1").unwrap());
        assert_eq!(anchors.v_prime[1], b.parse("s2.s1.s2.s1.s2.s3.s1.s2.s1.s2.s1.s3.s2.s1").unwrap());
        assert_eq!(anchors.u[1], b.parse("s1.s2.s1.s2.s1.s3.s2.s1").unwrap());
        assert_eq!(anchors.v[2], b.parse("s2.s1.s2.s1.s2.s1.s3").unwrap());
        assert_eq!(b.length(anchors.v_prime[3]), 16);
    }

    #[test]
    fn classification_is_exhaustive_and_exclusive() {
        let b = ball(14);
        let alc = alcoves(&b).unwrap();
        let map = RegionMap::new(classifier(), &b).unwrap();
        let total: usize = Region::all().into_iter().map(|r| map.members(r).len()).sum();
        assert_eq!(total, b.len());
        for w in b.elements() {
            for s in 0..3 {
                let Some(sw) = b.mul_gen(w, s, Side::Left) else { continue };
                let face = alc[w.idx()].shared_face(&alc[sw.idx()]).unwrap();
                if map.region(w) != map.region(sw) {
                    assert!(classifier().is_thick(face));
                }
            }
        }
    }

    #[test]
    fn svg_is_deterministic() {
        let b = ball(6);
        let p = predicted_partition(classifier(), &b, 6).unwrap();
        let one = emit_svg(&b, &p, None, &SvgStyle::default()).unwrap();
        let two = emit_svg(&b, &p, None, &SvgStyle::default()).unwrap();
        assert_eq!(one, two);
        assert!(one.contains("id=\"alcove-e\""));
        let fills: std::collections::BTreeSet<&str> =
            one.split("fill=\"").skip(1).map(|s| s.split('"').next().unwrap()).collect();
        assert_eq!(fills.len(), p.cells.len());
        let dihedral = Ball::new(CoxeterSystem::dihedral(3, 1, 1).unwrap(), 3).unwrap();
        assert!(matches!(emit_svg(&dihedral, &p, None, &SvgStyle::default()), Err(Error::UnsupportedRank(2))));
    }
}
