//! Half-space geometry of faces: the min-max sandwich of a point set,
//! witness search, lattice points of the sandwich polytope, and the
//! hypersimplex facets `U_a^r`.
//!
//! A face `σ ⊆ N^r_q` is Scarf exactly when, for every subset `C ⊆ σ`, the
//! only lattice points `w ∈ N^r_q` with `min_{a∈C} a·e_A ≤ w·e_A ≤
//! max_{a∈C} a·e_A` for all `A ⊆ [q]` are the points of `C`. A point that
//! breaks this for some `C` is a witness.

use std::collections::HashMap;
use std::sync::RwLock;

use num_rational::Rational64;

use crate::error::{domain, resource, Result};
use crate::lattice::{normalize_pair, Face, NormalizedPair, Point};

/// Largest face the witness search accepts.
pub const MAX_FACE_SIZE: usize = 22;
/// Largest `q` the witness search accepts.
pub const MAX_Q: usize = 12;

pub fn dot_ea(a: &Point, mask: u32) -> u32 {
    a.dot_mask(mask)
}

/// `e_A − (|A|/q)·1`, the projection of `e_A` onto the hyperplane `|x| = 0`.
pub fn project_direction(mask: u32, q: usize) -> Vec<Rational64> {
    let size = mask.count_ones() as i64;
    (0..q)
        .map(|i| {
            let e = ((mask >> i) & 1) as i64;
            Rational64::from_integer(e) - Rational64::new(size, q as i64)
        })
        .collect()
}

/// `a · e_A` for every mask `A` of width `q`, indexed by mask.
fn dot_table(a: &Point) -> Vec<u32> {
    let q = a.q();
    let mut t = vec![0u32; 1 << q];
    for mask in 1..t.len() {
        let low = mask.trailing_zeros() as usize;
        t[mask] = t[mask & (mask - 1)] + a.coords()[low];
    }
    t
}

/// Bounds `lo(A) ≤ w·e_A ≤ hi(A)` for all `A ⊆ [q]` spanned by a point set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfspaceSystem {
    q: usize,
    r: u32,
    lo: Vec<u32>,
    hi: Vec<u32>,
}

impl HalfspaceSystem {
    pub fn new(face: &Face) -> Result<Self> {
        check_caps(face)?;
        if face.is_empty() {
            return domain("the half-space system of an empty face is undefined");
        }
        let tables: Vec<Vec<u32>> = face.points().iter().map(dot_table).collect();
        let refs: Vec<&[u32]> = tables.iter().map(Vec::as_slice).collect();
        Ok(Self::from_tables(face.q(), face.r(), &refs))
    }

    fn from_tables(q: usize, r: u32, tables: &[&[u32]]) -> Self {
        let mut lo = tables[0].to_vec();
        let mut hi = tables[0].to_vec();
        for t in &tables[1..] {
            for m in 0..lo.len() {
                lo[m] = lo[m].min(t[m]);
                hi[m] = hi[m].max(t[m]);
            }
        }
        HalfspaceSystem { q, r, lo, hi }
    }

    pub fn lo(&self, mask: u32) -> u32 {
        self.lo[mask as usize]
    }

    pub fn hi(&self, mask: u32) -> u32 {
        self.hi[mask as usize]
    }

    /// Two-sided sandwich membership.
    pub fn contains(&self, w: &Point) -> bool {
        w.q() == self.q
            && w.r() == self.r
            && dot_table(w)
                .iter()
                .enumerate()
                .all(|(m, &d)| self.lo[m] <= d && d <= self.hi[m])
    }

    /// Membership in the one-sided system `w·e_A ≤ hi(A)`.
    pub fn contains_upper(&self, w: &Point) -> bool {
        w.q() == self.q
            && w.r() == self.r
            && dot_table(w)
                .iter()
                .enumerate()
                .all(|(m, &d)| d <= self.hi[m])
    }

    /// Lattice points of the two-sided polytope, descending under `≽`.
    pub fn lattice_points(&self) -> Vec<Point> {
        let mut out: Vec<Point> = box_points(self.q, self.r, &self.lo, &self.hi)
            .into_iter()
            .filter(|c| full_check(c, &self.lo, &self.hi))
            .map(|c| Point::new(c).expect("q >= 1"))
            .collect();
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }
}

fn check_caps(face: &Face) -> Result<()> {
    if face.q() > MAX_Q {
        return resource(format!("q = {} exceeds the geometric cap {MAX_Q}", face.q()));
    }
    if face.len() > MAX_FACE_SIZE {
        return resource(format!(
            "face of size {} exceeds the geometric cap {MAX_FACE_SIZE}",
            face.len()
        ));
    }
    Ok(())
}

/// Coordinate vectors of `N^r_q` inside the box cut out by the singleton
/// constraints.
fn box_points(q: usize, r: u32, lo: &[u32], hi: &[u32]) -> Vec<Vec<u32>> {
    let lower: Vec<u32> = (0..q).map(|i| lo[1 << i]).collect();
    let upper: Vec<u32> = (0..q).map(|i| hi[1 << i]).collect();
    // Largest amount the coordinates from position i onwards can absorb.
    let mut tail_max = vec![0u32; q + 1];
    let mut tail_min = vec![0u32; q + 1];
    for i in (0..q).rev() {
        tail_max[i] = tail_max[i + 1] + upper[i];
        tail_min[i] = tail_min[i + 1] + lower[i];
    }
    let mut out = Vec::new();
    let mut buf = vec![0u32; q];
    fn rec(
        i: usize,
        left: u32,
        buf: &mut Vec<u32>,
        lower: &[u32],
        upper: &[u32],
        tail_min: &[u32],
        tail_max: &[u32],
        out: &mut Vec<Vec<u32>>,
    ) {
        if i == buf.len() {
            if left == 0 {
                out.push(buf.clone());
            }
            return;
        }
        if left < tail_min[i] || left > tail_max[i] {
            return;
        }
        for c in lower[i]..=upper[i].min(left) {
            buf[i] = c;
            rec(i + 1, left - c, buf, lower, upper, tail_min, tail_max, out);
        }
    }
    rec(0, r, &mut buf, &lower, &upper, &tail_min, &tail_max, &mut out);
    out
}

fn full_check(c: &[u32], lo: &[u32], hi: &[u32]) -> bool {
    full_check_into(c, lo, hi, &mut vec![0u32; lo.len()])
}

/// All `w ∈ N^r_q` in the min-max sandwich of the face; includes the face.
pub fn polytope_lattice_points(face: &Face) -> Result<Vec<Point>> {
    Ok(HalfspaceSystem::new(face)?.lattice_points())
}

/// A lattice point certifying that a face is not Scarf.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessReport {
    pub witness: Point,
    /// Positions (into the face's descending order) of the subset `C`.
    pub subset: Vec<usize>,
    /// True when `C` is the whole face.
    pub whole_face: bool,
}

/// First witness in a fixed search order: subsets `C` by decreasing size,
/// then lexicographically on positions; candidates descending under `≽`.
pub fn find_witness(face: &Face) -> Result<Option<WitnessReport>> {
    check_caps(face)?;
    if face.is_empty() {
        return domain("witness search needs a nonempty face");
    }
    let n = face.len();
    let tables: Vec<Vec<u32>> = face.points().iter().map(dot_table).collect();
    for size in (2..=n).rev() {
        let mut comb: Vec<usize> = (0..size).collect();
        loop {
            let refs: Vec<&[u32]> = comb.iter().map(|&i| tables[i].as_slice()).collect();
            let sys = HalfspaceSystem::from_tables(face.q(), face.r(), &refs);
            let mut cands = box_points(face.q(), face.r(), &sys.lo, &sys.hi);
            cands.sort_unstable_by(|a, b| {
                let pa = Point::new(a.clone()).expect("q >= 1");
                let pb = Point::new(b.clone()).expect("q >= 1");
                pb.cmp(&pa)
            });
            for c in cands {
                let in_c = comb.iter().any(|&i| face.points()[i].coords() == c.as_slice());
                if !in_c && full_check(&c, &sys.lo, &sys.hi) {
                    return Ok(Some(WitnessReport {
                        witness: Point::new(c)?,
                        subset: comb.clone(),
                        whole_face: size == n,
                    }));
                }
            }
            if !next_combination(&mut comb, n) {
                break;
            }
        }
    }
    Ok(None)
}

fn next_combination(comb: &mut [usize], n: usize) -> bool {
    let k = comb.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if comb[i] < n - k + i {
            comb[i] += 1;
            for j in i + 1..k {
                comb[j] = comb[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Whether the face is Scarf. Equivalent to `find_witness` returning none,
/// but walks subsets depth-first with incremental bounds.
pub fn is_scarf_face_geometric(face: &Face) -> Result<bool> {
    check_caps(face)?;
    if face.len() <= 1 {
        return Ok(true);
    }
    let tables: Vec<Vec<u32>> = face.points().iter().map(dot_table).collect();
    let coords: Vec<&[u32]> = face.points().iter().map(Point::coords).collect();
    let width = 1usize << face.q();
    let mut lo_stack = vec![vec![0u32; width]; face.len() + 1];
    let mut hi_stack = vec![vec![0u32; width]; face.len() + 1];
    let mut chosen = Vec::with_capacity(face.len());
    let search = Search {
        q: face.q(),
        r: face.r(),
        tables: &tables,
        coords: &coords,
    };
    let mut scratch = Scratch::new(face.q());
    Ok(!search.has_witness(0, &mut chosen, &mut lo_stack, &mut hi_stack, &mut scratch))
}

/// Reusable buffers for the allocation-free candidate scan.
struct Scratch {
    buf: Vec<u32>,
    table: Vec<u32>,
    lower: Vec<u32>,
    upper: Vec<u32>,
    tail_min: Vec<u32>,
    tail_max: Vec<u32>,
}

impl Scratch {
    fn new(q: usize) -> Self {
        Scratch {
            buf: vec![0; q],
            table: vec![0; 1 << q],
            lower: vec![0; q],
            upper: vec![0; q],
            tail_min: vec![0; q + 1],
            tail_max: vec![0; q + 1],
        }
    }
}

struct BoxBounds<'a> {
    lower: &'a [u32],
    upper: &'a [u32],
    tail_min: &'a [u32],
    tail_max: &'a [u32],
}

/// Whether some box point from position `i` on satisfies `accept`.
fn box_any(
    i: usize,
    left: u32,
    buf: &mut [u32],
    b: &BoxBounds<'_>,
    accept: &mut impl FnMut(&[u32]) -> bool,
) -> bool {
    if i == buf.len() {
        return left == 0 && accept(buf);
    }
    if left < b.tail_min[i] || left > b.tail_max[i] {
        return false;
    }
    for c in b.lower[i]..=b.upper[i].min(left) {
        buf[i] = c;
        if box_any(i + 1, left - c, buf, b, accept) {
            return true;
        }
    }
    false
}

fn full_check_into(c: &[u32], lo: &[u32], hi: &[u32], t: &mut [u32]) -> bool {
    t[0] = 0;
    for mask in 1..lo.len() {
        let low = mask.trailing_zeros() as usize;
        t[mask] = t[mask & (mask - 1)] + c[low];
        if t[mask] < lo[mask] || t[mask] > hi[mask] {
            return false;
        }
    }
    true
}

struct Search<'a> {
    q: usize,
    r: u32,
    tables: &'a [Vec<u32>],
    coords: &'a [&'a [u32]],
}

impl Search<'_> {
    fn has_witness(
        &self,
        start: usize,
        chosen: &mut Vec<usize>,
        lo_stack: &mut [Vec<u32>],
        hi_stack: &mut [Vec<u32>],
        scratch: &mut Scratch,
    ) -> bool {
        let depth = chosen.len();
        for j in start..self.tables.len() {
            {
                let (done, rest) = lo_stack.split_at_mut(depth + 1);
                let (hdone, hrest) = hi_stack.split_at_mut(depth + 1);
                let t = &self.tables[j];
                if depth == 0 {
                    rest[0].copy_from_slice(t);
                    hrest[0].copy_from_slice(t);
                } else {
                    for m in 0..t.len() {
                        rest[0][m] = done[depth][m].min(t[m]);
                        hrest[0][m] = hdone[depth][m].max(t[m]);
                    }
                }
            }
            chosen.push(j);
            let level = depth + 1;
            if level >= 2 && self.extra_point(chosen, &lo_stack[level], &hi_stack[level], scratch) {
                return true;
            }
            if self.has_witness(j + 1, chosen, lo_stack, hi_stack, scratch) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    fn extra_point(&self, chosen: &[usize], lo: &[u32], hi: &[u32], scratch: &mut Scratch) -> bool {
        let q = self.q;
        for i in 0..q {
            scratch.lower[i] = lo[1 << i];
            scratch.upper[i] = hi[1 << i];
        }
        for i in (0..q).rev() {
            scratch.tail_min[i] = scratch.tail_min[i + 1] + scratch.lower[i];
            scratch.tail_max[i] = scratch.tail_max[i + 1] + scratch.upper[i];
        }
        let Scratch {
            buf,
            table,
            lower,
            upper,
            tail_min,
            tail_max,
        } = scratch;
        let mut accept = |c: &[u32]| {
            !chosen.iter().any(|&i| self.coords[i] == c) && full_check_into(c, lo, hi, table)
        };
        let bounds = BoxBounds {
            lower,
            upper,
            tail_min,
            tail_max,
        };
        box_any(0, self.r, buf, &bounds, &mut accept)
    }
}

/// Memoized Scarf status of edges, keyed by the orbit representative from
/// [`normalize_pair`]. Safe to share across threads.
#[derive(Debug, Default)]
pub struct EdgeCache {
    map: RwLock<HashMap<NormalizedPair, bool>>,
}

impl EdgeCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_scarf_edge(&self, a: &Point, b: &Point) -> Result<bool> {
        if a == b {
            return domain("an edge needs two distinct points");
        }
        let key = normalize_pair(a, b);
        if let Some(&v) = self.map.read().expect("cache lock").get(&key) {
            return Ok(v);
        }
        let (x, y) = key.realize()?;
        let verdict = is_scarf_face_geometric(&Face::from_points(vec![x, y])?)?;
        self.map.write().expect("cache lock").insert(key, verdict);
        Ok(verdict)
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Square-free points of `N^k_q`, descending under `≽`.
pub fn hypersimplex(q: usize, k: u32) -> Vec<Point> {
    let mut out: Vec<Point> = (0u32..1 << q)
        .filter(|m| m.count_ones() == k)
        .map(|m| Point::char_vector(q, m).expect("mask fits"))
        .collect();
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// `U_a^r = a + U_q^{r−|a|}`.
pub fn u_facet(a: &[u32], r: u32) -> Result<Face> {
    let q = a.len();
    if q == 0 {
        return domain("u_facet needs q >= 1");
    }
    let base: u32 = a.iter().sum();
    if base >= r || (r - base) as usize > q {
        return domain(format!(
            "the square-free layer of degree {} is empty for q = {q}",
            r as i64 - base as i64
        ));
    }
    let points = hypersimplex(q, r - base)
        .into_iter()
        .map(|u| Point::new(u.coords().iter().zip(a).map(|(x, y)| x + y).collect()))
        .collect::<Result<Vec<_>>>()?;
    Face::new(q, r, points)
}

/// The facets `U_a^r` with `r − q < |a| < r`, descending under the face order.
///
/// For `q = 1` the defining range is empty while the complex is the single
/// vertex `(r)`; that vertex is returned as the one facet.
pub fn u_complex_facets(q: usize, r: u32) -> Result<Vec<Face>> {
    if q == 0 || r == 0 {
        return domain("u_complex_facets needs q, r >= 1");
    }
    if q == 1 {
        return Ok(vec![Face::new(1, r, vec![Point::new(vec![r])?])?]);
    }
    let low = (r as i64 - q as i64 + 1).max(0) as u32;
    let mut out = Vec::new();
    for k in low..r {
        for a in crate::lattice::enumerate_points(q, k) {
            out.push(u_facet(a.coords(), r)?);
        }
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out.dedup();
    Ok(out)
}
