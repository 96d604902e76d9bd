//! The acyclic matching on the Taylor complex of `E_q^3` whose critical
//! cells are the Scarf faces.
//!
//! Every nonface contains a minimal nonface; the largest one (under the face
//! order) names its class. Each minimal nonface `σ` comes with a vertex
//! `ω(σ)`, and a class is matched by toggling `ω(σ)`.
//!
//! Cells are vertex bitmasks over [`PointIndex`] positions, so this module
//! handles `q ≤ 6` (at most 56 vertices).

use std::collections::{HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{domain, resource, Error, Result};
use crate::ideal::{extremal_power, scarf_complex_bruteforce, DEFAULT_FACE_LIMIT};
use crate::lattice::{bits, Face, Point, PointIndex};
use crate::r3::{edge_type, minimal_nonfaces_r3, EdgeTemplate, Shape};

/// Largest `q` a [`MorseContext`] supports.
pub const MAX_MORSE_Q: usize = 6;
/// Largest vertex count for exhaustive verification.
pub const MAX_FULL_VERTICES: usize = 20;

/// The three kinds of minimal nonfaces that determine `ω`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NonfaceType {
    /// `{ε_i³, n}` with `ε_i³ ≻ n` and `n` not of the form `ε_i²ε_j`.
    I,
    /// `{ε_i²ε_j, ε_iε_j², n}` with `n` square-free away from `i, j`.
    II,
    /// `{ε_i²ε_j, n}` with `n` in the set `Q_{i,j}`.
    III,
}

/// A classified minimal nonface with its `ω` vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Classified {
    kind: NonfaceType,
    omega: Point,
}

fn is_minimal_nonface(sigma: &Face) -> Result<bool> {
    if sigma.r() != 3 {
        return Ok(false);
    }
    let pts = sigma.points();
    Ok(match pts.len() {
        2 => !edge_type(&pts[0], &pts[1])?.is_scarf_edge(),
        3 => {
            let shapes: Vec<Shape> = pts.iter().map(Shape::of).collect::<Result<_>>()?;
            let pairs: Vec<(usize, usize)> = shapes
                .iter()
                .filter_map(|s| match *s {
                    Shape::Pair(a, b) => Some((a, b)),
                    _ => None,
                })
                .collect();
            let triple = shapes.iter().find_map(|s| match *s {
                Shape::Triple(a, b, c) => Some([a, b, c]),
                _ => None,
            });
            match (pairs.as_slice(), triple) {
                ([(a, b), (c, d)], Some(t)) => {
                    *a == *d && *b == *c && !t.contains(a) && !t.contains(b)
                }
                _ => false,
            }
        }
        _ => false,
    })
}

/// Whether `n` lies in `Q_{i,j}`, given the pair point `x = ε_i²ε_j`.
fn in_q_set(x: &Point, i: usize, j: usize, n: &Point) -> Result<bool> {
    Ok(match Shape::of(n)? {
        Shape::Pair(a, b) => a != i && x > n && !(a == j && b == i),
        Shape::Triple(a, b, c) => {
            let s = [a, b, c];
            s.contains(&j) && !s.contains(&i)
        }
        Shape::Cube(_) => false,
    })
}

fn classify(sigma: &Face) -> Result<Classified> {
    if !is_minimal_nonface(sigma)? {
        return domain(format!("{sigma} is not a minimal nonface of the r = 3 complex"));
    }
    let q = sigma.q();
    let pts = sigma.points();
    let min_outside = |n: &Point, skip: &[usize]| -> Option<usize> {
        (0..q).find(|k| n.coords()[*k] > 0 && !skip.contains(k))
    };
    let mut found: Vec<Classified> = Vec::new();
    if pts.len() == 2 {
        // Type I: the larger point is a cube.
        if let Shape::Cube(i) = Shape::of(&pts[0])? {
            let n = &pts[1];
            let excluded = matches!(Shape::of(n)?, Shape::Pair(a, _) if a == i);
            if !excluded {
                let j = min_outside(n, &[i]).expect("n differs from the cube");
                found.push(Classified {
                    kind: NonfaceType::I,
                    omega: Point::from_indices(q, &[i, i, j])?,
                });
            }
        }
        // Type III: either point may play the role of ε_i²ε_j.
        for (x, n) in [(&pts[0], &pts[1]), (&pts[1], &pts[0])] {
            if let Shape::Pair(i, j) = Shape::of(x)? {
                if in_q_set(x, i, j, n)? {
                    // The outside index carrying the larger exponent of n, so
                    // that ε^ω divides lcm(σ) when n = ε_c²ε_d with d < c.
                    let k = (0..q)
                        .filter(|&l| l != i && l != j && n.coords()[l] > 0)
                        .max_by_key(|&l| (n.coords()[l], std::cmp::Reverse(l)))
                        .expect("n leaves {i, j}");
                    found.push(Classified {
                        kind: NonfaceType::III,
                        omega: Point::from_indices(q, &[i, j, k])?,
                    });
                }
            }
        }
    } else {
        let mut pair = None;
        let mut triple = None;
        for p in pts {
            match Shape::of(p)? {
                Shape::Pair(a, b) if a < b => pair = Some((a, b)),
                Shape::Triple(..) => triple = Some(p),
                _ => {}
            }
        }
        if let (Some((i, j)), Some(n)) = (pair, triple) {
            let k = min_outside(n, &[]).expect("nonzero point");
            found.push(Classified {
                kind: NonfaceType::II,
                omega: Point::from_indices(q, &[i, j, k])?,
            });
        }
    }
    match found.len() {
        1 => Ok(found.pop().expect("one entry")),
        0 => Err(Error::Invariant(format!("{sigma} matches no nonface type"))),
        _ => Err(Error::Invariant(format!("{sigma} matches several nonface types"))),
    }
}

pub fn classify_nonface(sigma: &Face) -> Result<NonfaceType> {
    Ok(classify(sigma)?.kind)
}

/// The vertex toggled inside the class of `sigma`.
pub fn omega(sigma: &Face) -> Result<Point> {
    Ok(classify(sigma)?.omega)
}

/// A minimal nonface in mask form together with its type and `ω`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassKey {
    pub face: Face,
    pub template: EdgeTemplate,
    pub kind: NonfaceType,
    pub omega: Point,
    pub mask: u64,
    pub omega_bit: u64,
}

/// The minimal nonfaces of one `q`, sorted descending, with bitmask data.
#[derive(Clone, Debug)]
pub struct MorseContext {
    index: PointIndex,
    keys: Vec<ClassKey>,
}

impl MorseContext {
    pub fn new(q: usize) -> Result<Self> {
        if q == 0 {
            return domain("MorseContext needs q >= 1");
        }
        if q > MAX_MORSE_Q {
            return resource(format!("Morse cells are bitmasks; q <= {MAX_MORSE_Q}"));
        }
        let index = PointIndex::new(q, 3);
        let keys = minimal_nonfaces_r3(q)?
            .into_iter()
            .map(|n| {
                let c = classify(&n.face)?;
                let pos = index.position(&c.omega).expect("omega lies in N^3_q");
                Ok(ClassKey {
                    mask: index.mask_of(&n.face)?,
                    omega_bit: 1u64 << pos,
                    template: n.template,
                    kind: c.kind,
                    omega: c.omega,
                    face: n.face,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MorseContext { index, keys })
    }

    pub fn q(&self) -> usize {
        self.index.q()
    }

    pub fn index(&self) -> &PointIndex {
        &self.index
    }

    pub fn keys(&self) -> &[ClassKey] {
        &self.keys
    }

    pub fn vertex_count(&self) -> usize {
        self.index.len()
    }

    /// Position in [`Self::keys`] of the class of a cell; `None` for faces.
    pub fn class_of(&self, cell: u64) -> Option<usize> {
        self.keys.iter().position(|k| k.mask & cell == k.mask)
    }

    /// The largest minimal nonface inside `tau`.
    pub fn partition_class(&self, tau: &Face) -> Result<&ClassKey> {
        let mask = self.index.mask_of(tau)?;
        match self.class_of(mask) {
            Some(k) => Ok(&self.keys[k]),
            None => domain(format!("{tau} is a Scarf face and has no class")),
        }
    }

    /// Class stability of one nonface cell: adding `ω` keeps the
    /// class, and so does removing it when present.
    pub fn class_is_stable(&self, cell: u64) -> Result<bool> {
        let Some(k) = self.class_of(cell) else {
            return domain("class stability is defined for nonfaces only");
        };
        let w = self.keys[k].omega_bit;
        let up = self.class_of(cell | w) == Some(k);
        let down = cell & w == 0 || self.class_of(cell & !w) == Some(k);
        Ok(up && down)
    }

    /// Random nonface cells: a uniformly chosen minimal nonface plus each
    /// other vertex independently with a per-sample random density.
    pub fn sample_nonfaces(&self, count: usize, seed: u64) -> Vec<u64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = self.vertex_count();
        (0..count)
            .map(|_| {
                let key = &self.keys[rng.gen_range(0..self.keys.len())];
                let density: f64 = rng.gen();
                (0..n).fold(key.mask, |cell, v| {
                    if rng.gen_bool(density) {
                        cell | 1 << v
                    } else {
                        cell
                    }
                })
            })
            .collect()
    }
}

/// Directed pairs `(γ, γ ∖ {v})`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Matching {
    /// `(upper, lower)` cells, sorted by upper cell.
    pub pairs: Vec<(u64, u64)>,
}

impl Matching {
    /// Build from explicit pairs, rejecting malformed ones.
    pub fn from_pairs(pairs: Vec<(u64, u64)>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(pairs.len() * 2);
        for &(up, low) in &pairs {
            let diff = up ^ low;
            if low & !up != 0 || diff.count_ones() != 1 {
                return Err(Error::Invariant(format!(
                    "pair {up:#x} -> {low:#x} does not drop exactly one vertex"
                )));
            }
            if low == 0 {
                return Err(Error::Invariant("the empty cell is never matched".into()));
            }
            for cell in [up, low] {
                if !seen.insert(cell) {
                    return Err(Error::Invariant(format!("cell {cell:#x} matched twice")));
                }
            }
        }
        let mut pairs = pairs;
        pairs.sort_unstable();
        Ok(Matching { pairs })
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn matched_cells(&self) -> HashSet<u64> {
        self.pairs.iter().flat_map(|&(a, b)| [a, b]).collect()
    }
}

/// Pairs `(γ, γ ∖ ω)` for the cells among `cells` that contain the `ω` of
/// their class.
pub fn build_matching(ctx: &MorseContext, cells: impl IntoIterator<Item = u64>) -> Result<Matching> {
    let pairs: Vec<(u64, u64)> = cells
        .into_iter()
        .filter_map(|cell| {
            let k = ctx.class_of(cell)?;
            let w = ctx.keys[k].omega_bit;
            (cell & w != 0).then_some((cell, cell & !w))
        })
        .collect();
    Matching::from_pairs(pairs)
}

/// Whether the modified Hasse diagram has no directed cycle.
///
/// A cycle alternates between two adjacent dimensions, so it is enough to
/// look, per dimension, at the graph on matched lower cells with an arc
/// `τ → τ'` when `τ` is matched with `γ` and `τ' = γ ∖ {v} ≠ τ` is itself a
/// matched lower cell. Cycles are detected with Kahn's algorithm.
pub fn matching_is_acyclic(m: &Matching) -> bool {
    let mut by_dim: HashMap<u32, Vec<(u64, u64)>> = HashMap::new();
    for &(up, low) in &m.pairs {
        by_dim.entry(low.count_ones()).or_default().push((up, low));
    }
    by_dim.into_par_iter().all(|(_, pairs)| {
        let node: HashMap<u64, usize> = pairs
            .iter()
            .enumerate()
            .map(|(i, &(_, low))| (low, i))
            .collect();
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); pairs.len()];
        let mut indeg = vec![0usize; pairs.len()];
        for (i, &(up, low)) in pairs.iter().enumerate() {
            for v in bits(up) {
                let other = up & !(1u64 << v);
                if other == low {
                    continue;
                }
                if let Some(&j) = node.get(&other) {
                    succ[i].push(j);
                    indeg[j] += 1;
                }
            }
        }
        let mut queue: Vec<usize> = (0..pairs.len()).filter(|&i| indeg[i] == 0).collect();
        let mut done = 0;
        while let Some(i) = queue.pop() {
            done += 1;
            for &j in &succ[i] {
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    queue.push(j);
                }
            }
        }
        done == pairs.len()
    })
}

/// Outcome of checking a matching against the Scarf complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingVerdicts {
    pub cells: u64,
    pub pairs: usize,
    pub homogeneous: bool,
    pub acyclic: bool,
    /// Every cell in a class that lacks `ω` is the lower end of a pair.
    pub perfect_on_nonfaces: bool,
    pub critical_cells: u64,
    pub scarf_faces: u64,
    pub critical_equals_scarf: bool,
}

impl MatchingVerdicts {
    pub fn all_pass(&self) -> bool {
        self.homogeneous && self.acyclic && self.perfect_on_nonfaces && self.critical_equals_scarf
    }
}

/// Whether matched cells share lcm labels in `E_q^3`.
pub fn matching_is_homogeneous(ctx: &MorseContext, m: &Matching) -> Result<bool> {
    let power = extremal_power(ctx.q(), 3)?;
    let gens = power.ideal.generators();
    let label = |cell: u64| {
        let mut e = vec![0u32; gens[0].nvars()];
        for v in bits(cell) {
            for (x, g) in e.iter_mut().zip(gens[v].exponents()) {
                *x = (*x).max(*g);
            }
        }
        e
    };
    Ok(m.pairs.par_iter().all(|&(up, low)| label(up) == label(low)))
}

/// Exhaustive check over all `2^n` cells of the Taylor complex; the Scarf
/// faces are taken from the label oracle.
pub fn verify_full(ctx: &MorseContext) -> Result<MatchingVerdicts> {
    let n = ctx.vertex_count();
    if n > MAX_FULL_VERTICES {
        return resource(format!(
            "full verification needs at most {MAX_FULL_VERTICES} vertices, got {n}"
        ));
    }
    let total = 1u64 << n;
    let matching = build_matching(ctx, 0..total)?;
    let matched = matching.matched_cells();
    let perfect_on_nonfaces = (0..total)
        .into_par_iter()
        .all(|c| ctx.class_of(c).is_none() || matched.contains(&c));
    let power = extremal_power(ctx.q(), 3)?;
    let mut scarf: HashSet<u64> = scarf_complex_bruteforce(&power.ideal, None, DEFAULT_FACE_LIMIT)?
        .into_iter()
        .map(|f| f.iter().fold(0u64, |m, &v| m | 1 << v))
        .collect();
    scarf.insert(0);
    let critical: HashSet<u64> = (0..total).filter(|c| !matched.contains(c)).collect();
    Ok(MatchingVerdicts {
        cells: total,
        pairs: matching.len(),
        homogeneous: matching_is_homogeneous(ctx, &matching)?,
        acyclic: matching_is_acyclic(&matching),
        perfect_on_nonfaces,
        critical_cells: critical.len() as u64,
        scarf_faces: scarf.len() as u64,
        critical_equals_scarf: critical == scarf,
    })
}

/// Sampled class-stability check; returns the number of stable samples.
pub fn verify_sampled(ctx: &MorseContext, samples: usize, seed: u64) -> Result<usize> {
    let cells = ctx.sample_nonfaces(samples, seed);
    let verdicts = cells
        .par_iter()
        .map(|&c| ctx.class_is_stable(c))
        .collect::<Result<Vec<bool>>>()?;
    Ok(verdicts.into_iter().filter(|&ok| ok).count())
}
