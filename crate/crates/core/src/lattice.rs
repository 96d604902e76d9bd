//! Lattice points of `N^r_q`, the total order used throughout the crate,
//! partition normal forms, and the face transformations that preserve
//! Scarf membership.
//!
//! Indices are 0-based in code. Coordinate `i` corresponds to the variable
//! index `i + 1` in the usual mathematical notation.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{domain, resource, Result};

/// An exponent vector `a` with `q` nonnegative coordinates summing to `r`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Point {
    coords: Vec<u32>,
    r: u32,
}

impl Point {
    pub fn new(coords: Vec<u32>) -> Result<Self> {
        if coords.is_empty() {
            return domain("a point needs at least one coordinate");
        }
        let r = coords.iter().sum();
        Ok(Point { coords, r })
    }

    /// The point `e_{i_1} + ... + e_{i_k}`; repeated indices add up.
    pub fn from_indices(q: usize, indices: &[usize]) -> Result<Self> {
        let mut coords = vec![0; q];
        for &i in indices {
            if i >= q {
                return domain(format!("index {i} out of range for q = {q}"));
            }
            coords[i] += 1;
        }
        Point::new(coords)
    }

    /// The characteristic vector `e_A` of a coordinate bitmask.
    pub fn char_vector(q: usize, mask: u32) -> Result<Self> {
        if q < 32 && mask >> q != 0 {
            return domain(format!("mask {mask:#b} does not fit q = {q}"));
        }
        Point::new((0..q).map(|i| (mask >> i) & 1).collect())
    }

    pub fn q(&self) -> usize {
        self.coords.len()
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    /// `a · e_A` for the coordinate set encoded by `mask`.
    pub fn dot_mask(&self, mask: u32) -> u32 {
        let mut sum = 0;
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            sum += self.coords[i];
            m &= m - 1;
        }
        sum
    }

    pub fn support_mask(&self) -> u32 {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .fold(0, |m, (i, _)| m | (1 << i))
    }

    pub fn is_square_free(&self) -> bool {
        self.coords.iter().all(|&c| c <= 1)
    }

    /// Coordinatewise minimum `a ∩ b`.
    pub fn meet(&self, other: &Point) -> Point {
        let coords: Vec<u32> = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(x, y)| *x.min(y))
            .collect();
        let r = coords.iter().sum();
        Point { coords, r }
    }

    pub fn partition_form(&self) -> PartitionForm {
        partition_form(self)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.coords.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Points of different shape are ordered by `(q, r)` first so that the
/// impl is total; within one `N^r_q` this is the order `≽`.
impl Ord for Point {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.q(), self.r)
            .cmp(&(other.q(), other.r))
            .then_with(|| order_within_shape(self, other))
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn order_within_shape(a: &Point, b: &Point) -> Ordering {
    partition_form(a)
        .cmp(&partition_form(b))
        .then_with(|| a.coords.cmp(&b.coords))
}

/// The coordinates of a point sorted non-increasingly, zeros dropped.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Default)]
pub struct PartitionForm(pub Vec<u32>);

impl PartitionForm {
    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn sum(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Realize the partition as a point of `N^{sum}_q`, parts in leading
    /// coordinates starting at `offset`.
    pub fn place(&self, q: usize, offset: usize) -> Result<Point> {
        if offset + self.0.len() > q {
            return domain("partition does not fit in the requested width");
        }
        let mut coords = vec![0; q];
        coords[offset..offset + self.0.len()].copy_from_slice(&self.0);
        Point::new(coords)
    }
}

pub fn partition_form(a: &Point) -> PartitionForm {
    let mut parts: Vec<u32> = a.coords.iter().copied().filter(|&c| c > 0).collect();
    parts.sort_unstable_by(|x, y| y.cmp(x));
    PartitionForm(parts)
}

/// Three-way comparison under `≽`: partition forms lexicographically, then
/// the vectors themselves lexicographically.
///
/// # Panics
/// If the points do not share `(q, r)`.
pub fn compare_points(a: &Point, b: &Point) -> Ordering {
    assert!(
        a.q() == b.q() && a.r() == b.r(),
        "compare_points on points of different shape"
    );
    order_within_shape(a, b)
}

/// All of `N^r_q`, sorted descending under `≽`.
///
/// # Panics
/// If `q == 0`.
pub fn enumerate_points(q: usize, r: u32) -> Vec<Point> {
    assert!(q >= 1, "enumerate_points needs q >= 1");
    let mut out = Vec::new();
    let mut buf = vec![0u32; q];
    fill_compositions(&mut buf, 0, r, &mut out);
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

fn fill_compositions(buf: &mut [u32], pos: usize, left: u32, out: &mut Vec<Point>) {
    if pos + 1 == buf.len() {
        buf[pos] = left;
        out.push(Point {
            coords: buf.to_vec(),
            r: buf.iter().sum(),
        });
        return;
    }
    for c in (0..=left).rev() {
        buf[pos] = c;
        fill_compositions(buf, pos + 1, left - c, out);
    }
}

/// A set of distinct points of a common `N^r_q`, stored descending.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Face {
    q: usize,
    r: u32,
    points: Vec<Point>,
}

impl Face {
    pub fn new(q: usize, r: u32, mut points: Vec<Point>) -> Result<Self> {
        if q == 0 {
            return domain("faces need q >= 1");
        }
        if let Some(p) = points.iter().find(|p| p.q() != q || p.r() != r) {
            return domain(format!("point ({p}) does not lie in N^{r}_{q}"));
        }
        points.sort_unstable_by(|a, b| b.cmp(a));
        if points.windows(2).any(|w| w[0] == w[1]) {
            return domain("faces cannot repeat a point");
        }
        Ok(Face { q, r, points })
    }

    /// Build from a nonempty list, taking the shape from the first point.
    pub fn from_points(points: Vec<Point>) -> Result<Self> {
        let Some(first) = points.first() else {
            return domain("cannot infer the shape of an empty face");
        };
        let (q, r) = (first.q(), first.r());
        Face::new(q, r, points)
    }

    pub fn empty(q: usize, r: u32) -> Self {
        Face {
            q,
            r,
            points: Vec::new(),
        }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.points.binary_search_by(|x| p.cmp(x)).is_ok()
    }

    pub fn is_subset_of(&self, other: &Face) -> bool {
        self.points.iter().all(|p| other.contains(p))
    }

    pub fn with_point(&self, p: Point) -> Result<Face> {
        let mut pts = self.points.clone();
        pts.push(p);
        Face::new(self.q, self.r, pts)
    }

    pub fn without_point(&self, p: &Point) -> Face {
        Face {
            q: self.q,
            r: self.r,
            points: self.points.iter().filter(|x| *x != p).cloned().collect(),
        }
    }

    /// The face on the points selected by `indices` (positions in this face).
    pub fn subface(&self, indices: &[usize]) -> Face {
        let mut points: Vec<Point> = indices.iter().map(|&i| self.points[i].clone()).collect();
        points.sort_unstable_by(|a, b| b.cmp(a));
        points.dedup();
        Face {
            q: self.q,
            r: self.r,
            points,
        }
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, p) in self.points.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "({p})")?;
        }
        f.write_str("}")
    }
}

impl Ord for Face {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.q, self.r)
            .cmp(&(other.q, other.r))
            .then_with(|| self.points.cmp(&other.points))
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic comparison of the descending point sequences.
///
/// # Panics
/// If the faces do not share `(q, r)`.
pub fn compare_faces(s: &Face, t: &Face) -> Ordering {
    assert!(
        s.q == t.q && s.r == t.r,
        "compare_faces on faces of different shape"
    );
    s.points.cmp(&t.points)
}

/// Operations under which Scarf membership is invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Action {
    /// Coordinate `i` moves to position `perm[i]`.
    Permute(Vec<usize>),
    /// Append `p` zero coordinates.
    PadRight(usize),
    /// Prepend `p` zero coordinates.
    PadLeft(usize),
    /// Add the same integer vector to every point.
    Shift(Vec<i64>),
}

pub fn transform(face: &Face, action: &Action) -> Result<Face> {
    let q = face.q;
    let map = |f: &dyn Fn(&Point) -> Result<Point>| -> Result<Vec<Point>> {
        face.points.iter().map(f).collect()
    };
    match action {
        Action::Permute(perm) => {
            let mut seen = vec![false; q];
            if perm.len() != q
                || perm.iter().any(|&j| j >= q || std::mem::replace(&mut seen[j], true))
            {
                return domain("permutation is not a bijection on the coordinates");
            }
            let pts = map(&|p| {
                let mut c = vec![0; q];
                for (i, &j) in perm.iter().enumerate() {
                    c[j] = p.coords[i];
                }
                Point::new(c)
            })?;
            Face::new(q, face.r, pts)
        }
        Action::PadRight(p) => {
            let pts = map(&|pt| {
                let mut c = pt.coords.clone();
                c.resize(q + p, 0);
                Point::new(c)
            })?;
            Face::new(q + p, face.r, pts)
        }
        Action::PadLeft(p) => {
            let pts = map(&|pt| {
                let mut c = vec![0; *p];
                c.extend_from_slice(&pt.coords);
                Point::new(c)
            })?;
            Face::new(q + p, face.r, pts)
        }
        Action::Shift(v) => {
            if v.len() != q {
                return domain("shift vector has the wrong length");
            }
            let total = face.r as i64 + v.iter().sum::<i64>();
            if total < 0 {
                return domain("shift produces a negative degree");
            }
            let pts = map(&|pt| {
                let c: Option<Vec<u32>> = pt
                    .coords
                    .iter()
                    .zip(v)
                    .map(|(&x, &d)| u32::try_from(x as i64 + d).ok())
                    .collect();
                match c {
                    Some(c) => Point::new(c),
                    None => domain(format!("shift makes a coordinate of ({pt}) negative")),
                }
            })?;
            Face::new(q, total as u32, pts)
        }
    }
}

/// Canonical representative of the orbit of an edge `{a, b}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NormalizedPair {
    /// The larger residual partition.
    pub first: PartitionForm,
    pub second: PartitionForm,
    /// Degree left after removing the common part.
    pub r: u32,
}

impl NormalizedPair {
    /// The two residuals on disjoint leading blocks of the smallest width
    /// that holds them (at least one coordinate).
    pub fn realize(&self) -> Result<(Point, Point)> {
        let q = (self.first.0.len() + self.second.0.len()).max(1);
        Ok((
            self.first.place(q, 0)?,
            self.second.place(q, self.first.0.len())?,
        ))
    }
}

/// Remove `a ∩ b` from both points and return the residuals in partition
/// form, larger first.
///
/// # Panics
/// If the points do not share `(q, r)`.
pub fn normalize_pair(a: &Point, b: &Point) -> NormalizedPair {
    assert!(
        a.q() == b.q() && a.r() == b.r(),
        "normalize_pair on points of different shape"
    );
    let m = a.meet(b);
    let residual = |p: &Point| {
        let c: Vec<u32> = p.coords.iter().zip(&m.coords).map(|(x, y)| x - y).collect();
        let r = c.iter().sum();
        partition_form(&Point { coords: c, r })
    };
    let (x, y) = (residual(a), residual(b));
    let (first, second) = if x >= y { (x, y) } else { (y, x) };
    NormalizedPair {
        first,
        second,
        r: a.r() - m.r(),
    }
}

/// Dense indexing of `N^r_q` in descending `≽` order, so that faces can be
/// handled as bitmasks over at most 64 vertices.
#[derive(Clone, Debug)]
pub struct PointIndex {
    q: usize,
    r: u32,
    points: Vec<Point>,
    index: HashMap<Point, usize>,
}

impl PointIndex {
    pub fn new(q: usize, r: u32) -> Self {
        let points = enumerate_points(q, r);
        let index = points
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        PointIndex {
            q,
            r,
            points,
            index,
        }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn position(&self, p: &Point) -> Option<usize> {
        self.index.get(p).copied()
    }

    fn check_width(&self) -> Result<()> {
        if self.points.len() > 64 {
            return resource(format!(
                "{} vertices do not fit a 64-bit cell mask",
                self.points.len()
            ));
        }
        Ok(())
    }

    pub fn mask_of(&self, face: &Face) -> Result<u64> {
        self.check_width()?;
        if face.q != self.q || face.r != self.r {
            return domain("face shape differs from the index");
        }
        Ok(face
            .points
            .iter()
            .fold(0u64, |m, p| m | (1u64 << self.index[p])))
    }

    pub fn face_of(&self, mask: u64) -> Face {
        let points = bits(mask).map(|i| self.points[i].clone()).collect();
        Face {
            q: self.q,
            r: self.r,
            points,
        }
    }
}

/// Set bit positions of a mask, ascending.
pub fn bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}
