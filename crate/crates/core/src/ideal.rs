//! Monomials, monomial ideals and their lcm labels, the extremal ideal and
//! its powers, label-based Scarf testing, restriction, and homogenized
//! simplicial chain complexes.
//!
//! # Local label test
//!
//! A face `σ` of the Taylor complex is Scarf when no other face has the
//! label `m_σ = lcm(σ)`. It suffices to check
//!
//! * (a) no generator outside `σ` divides `m_σ`, and
//! * (b) removing any one vertex of `σ` changes the label.
//!
//! Faces with a common label `m` are closed under union, since the lcm of a
//! union is the lcm of the two labels. If `τ ≠ σ` has label `m_σ`, then
//! either `τ ⊄ σ`, so some vertex of `τ ∪ σ` outside `σ` divides `m_σ` and
//! (a) fails, or `τ ⊊ σ`, and then every face between `τ` and `σ` has label
//! `m_σ`, in particular some `σ ∖ {v}`, so (b) fails.

use std::collections::{HashMap, HashSet};
use std::fmt;

use rayon::prelude::*;

use crate::error::{domain, resource, Error, Result};
use crate::lattice::{enumerate_points, Point};

/// Cap on `q` for extremal ideals: `2^q − 1` dense exponent slots.
pub const MAX_EXTREMAL_Q: usize = 16;

/// A monomial stored as a dense exponent vector over a fixed variable set.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars],
        }
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|e| e * k).collect(),
        }
    }

    /// Render with the given variable names, e.g. `x^2*y`; `1` for the unit.
    pub fn render(&self, vars: &VariableSet) -> String {
        let terms: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                let name = vars.name(i);
                if e == 1 {
                    name
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect();
        if terms.is_empty() {
            "1".to_string()
        } else {
            terms.join("*")
        }
    }
}

/// Names for the variables of a polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VariableSet {
    Named(Vec<String>),
    /// Variables `x_A` for nonempty `A ⊆ [q]`; variable `k` is the mask `k + 1`.
    Extremal { q: usize },
}

impl VariableSet {
    pub fn named<S: AsRef<str>>(names: &[S]) -> Self {
        VariableSet::Named(names.iter().map(|s| s.as_ref().to_string()).collect())
    }

    pub fn len(&self) -> usize {
        match self {
            VariableSet::Named(v) => v.len(),
            VariableSet::Extremal { q } => (1usize << q) - 1,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn name(&self, k: usize) -> String {
        match self {
            VariableSet::Named(v) => v[k].clone(),
            VariableSet::Extremal { q } => {
                let mask = k + 1;
                let digits: Vec<String> = (0..*q)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| (i + 1).to_string())
                    .collect();
                let sep = if *q >= 10 { "," } else { "" };
                format!("x_{{{}}}", digits.join(sep))
            }
        }
    }
}

/// A monomial ideal given by generators over a fixed variable set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    vars: VariableSet,
    generators: Vec<Monomial>,
    minimal: bool,
}

impl MonomialIdeal {
    pub fn new(vars: VariableSet, generators: Vec<Monomial>) -> Result<Self> {
        let n = vars.len();
        if generators.iter().any(|g| g.nvars() != n) {
            return domain("generator width differs from the variable count");
        }
        let minimal = is_minimal_set(&generators);
        Ok(MonomialIdeal {
            vars,
            generators,
            minimal,
        })
    }

    pub fn vars(&self) -> &VariableSet {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    /// True when no generator divides another.
    pub fn is_minimal(&self) -> bool {
        self.minimal
    }
}

fn is_minimal_set(gens: &[Monomial]) -> bool {
    gens.iter().enumerate().all(|(i, g)| {
        gens.iter()
            .enumerate()
            .all(|(j, h)| i == j || !g.divides(h))
    })
}

/// The extremal ideal `E_q`, with `ε_i = ∏_{A ∋ i} x_A`.
pub fn extremal_ideal(q: usize) -> Result<MonomialIdeal> {
    check_extremal_q(q)?;
    let gens = (0..q)
        .map(|i| {
            let mut coords = vec![0; q];
            coords[i] = 1;
            extremal_power_generator(&Point::new(coords).expect("q >= 1"))
        })
        .collect::<Result<Vec<_>>>()?;
    MonomialIdeal::new(VariableSet::Extremal { q }, gens)
}

fn check_extremal_q(q: usize) -> Result<()> {
    if q == 0 {
        return domain("extremal ideals need q >= 1");
    }
    if q > MAX_EXTREMAL_Q {
        return resource(format!(
            "q = {q} exceeds the extremal-ideal cap {MAX_EXTREMAL_Q}"
        ));
    }
    Ok(())
}

/// `ε^a`: the exponent of `x_A` is `a · e_A`.
pub fn extremal_power_generator(a: &Point) -> Result<Monomial> {
    check_extremal_q(a.q())?;
    let n = (1u32 << a.q()) - 1;
    Ok(Monomial {
        exps: (1..=n).map(|mask| a.dot_mask(mask)).collect(),
    })
}

/// The power `E_q^r` with its generators indexed like
/// [`enumerate_points`] (descending `≽`).
#[derive(Clone, Debug)]
pub struct ExtremalPower {
    pub q: usize,
    pub r: u32,
    pub points: Vec<Point>,
    pub ideal: MonomialIdeal,
}

pub fn extremal_power(q: usize, r: u32) -> Result<ExtremalPower> {
    check_extremal_q(q)?;
    let points = enumerate_points(q, r);
    let gens = points
        .iter()
        .map(extremal_power_generator)
        .collect::<Result<Vec<_>>>()?;
    // Distinct generators of equal total degree never divide each other.
    let ideal = MonomialIdeal {
        vars: VariableSet::Extremal { q },
        generators: gens,
        minimal: true,
    };
    Ok(ExtremalPower {
        q,
        r,
        points,
        ideal,
    })
}

/// lcm of the generators at `face`; the unit monomial for the empty face.
pub fn lcm_label(ideal: &MonomialIdeal, face: &[usize]) -> Monomial {
    let mut exps = vec![0u32; ideal.nvars()];
    for &i in face {
        for (e, g) in exps.iter_mut().zip(&ideal.generators[i].exps) {
            *e = (*e).max(*g);
        }
    }
    Monomial { exps }
}

/// Label-uniqueness of `face` in the Taylor complex, via the local test
/// described in the module docs.
pub fn is_scarf_face_by_labels(ideal: &MonomialIdeal, face: &[usize]) -> Result<bool> {
    if !ideal.minimal {
        return domain("the label test needs a minimally generated ideal");
    }
    let mut face = face.to_vec();
    face.sort_unstable();
    face.dedup();
    if let Some(&bad) = face.iter().find(|&&i| i >= ideal.generators.len()) {
        return domain(format!("generator index {bad} out of range"));
    }
    Ok(label_test(ideal, &face))
}

fn label_test(ideal: &MonomialIdeal, face: &[usize]) -> bool {
    let label = lcm_label(ideal, face);
    let outside_divides = ideal
        .generators
        .iter()
        .enumerate()
        .any(|(i, g)| face.binary_search(&i).is_err() && g.divides(&label));
    if outside_divides {
        return false;
    }
    (0..face.len()).all(|k| {
        let rest: Vec<usize> = face
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, &v)| v)
            .collect();
        lcm_label(ideal, &rest) != label
    })
}

/// Default ceiling on the number of faces [`scarf_complex_bruteforce`] may
/// produce before giving up.
pub const DEFAULT_FACE_LIMIT: usize = 20_000_000;

/// All nonempty Scarf faces up to dimension `dim_cap`, as sorted generator
/// index lists ordered by size then lexicographically.
///
/// Built level by level: a candidate `(k+1)`-face is tested only when all of
/// its `k`-subfaces are Scarf, which is valid because the Scarf faces form a
/// simplicial complex.
pub fn scarf_complex_bruteforce(
    ideal: &MonomialIdeal,
    dim_cap: Option<usize>,
    face_limit: usize,
) -> Result<Vec<Vec<usize>>> {
    if !ideal.minimal {
        return domain("the Scarf complex needs a minimally generated ideal");
    }
    let n = ideal.generators.len();
    let mut level: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    let mut all = level.clone();
    let mut dim = 0;
    while !level.is_empty() && dim_cap.map_or(true, |c| dim < c) {
        let known: HashSet<&[usize]> = level.iter().map(|f| f.as_slice()).collect();
        let mut next: Vec<Vec<usize>> = level
            .par_iter()
            .flat_map_iter(|f| {
                let last = *f.last().expect("faces are nonempty");
                let known = &known;
                (last + 1..n).filter_map(move |v| {
                    let mut cand = f.clone();
                    cand.push(v);
                    let closed = (0..cand.len() - 1).all(|skip| {
                        let sub: Vec<usize> = cand
                            .iter()
                            .enumerate()
                            .filter(|&(j, _)| j != skip)
                            .map(|(_, &x)| x)
                            .collect();
                        known.contains(sub.as_slice())
                    });
                    (closed && label_test(ideal, &cand)).then_some(cand)
                })
            })
            .collect();
        next.sort_unstable();
        dim += 1;
        if all.len() + next.len() > face_limit {
            return Err(Error::Resource(format!(
                "face limit {face_limit} reached while building dimension {dim}; \
                 {} faces found through dimension {}",
                all.len(),
                dim - 1
            )));
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    Ok(all)
}

/// Generator indices of `ideal` whose generators divide `m`.
pub fn restrict_indices(ideal: &MonomialIdeal, m: &Monomial) -> Vec<usize> {
    ideal
        .generators
        .iter()
        .enumerate()
        .filter(|(_, g)| g.divides(m))
        .map(|(i, _)| i)
        .collect()
}

/// The ideal `I^{≤m}` generated by the generators dividing `m`.
pub fn restrict(ideal: &MonomialIdeal, m: &Monomial) -> MonomialIdeal {
    let generators: Vec<Monomial> = restrict_indices(ideal, m)
        .into_iter()
        .map(|i| ideal.generators[i].clone())
        .collect();
    MonomialIdeal {
        vars: ideal.vars.clone(),
        minimal: ideal.minimal || is_minimal_set(&generators),
        generators,
    }
}

/// `∏ x_A^r` over nonempty `A ≠ {q}`. Restricting `E_q^r` to it keeps
/// exactly the generators with last coordinate zero.
pub fn drop_last_index_monomial(q: usize, r: u32) -> Result<Monomial> {
    check_extremal_q(q)?;
    let last = 1usize << (q - 1);
    Ok(Monomial {
        exps: (1..1usize << q).map(|a| if a == last { 0 } else { r }).collect(),
    })
}

/// `ε_1 · ∏ x_A^{r−1}` over nonempty `A`. Restricting `E_q^r` to it gives
/// `ε_1 · E_q^{r−1}`.
pub fn first_generator_monomial(q: usize, r: u32) -> Result<Monomial> {
    if r == 0 {
        return domain("the first-generator restriction needs r >= 1");
    }
    let eps1 = extremal_ideal(q)?.generators.swap_remove(0);
    Ok(eps1.mul(&Monomial {
        exps: vec![r - 1; (1 << q) - 1],
    }))
}

/// One nonzero entry `sign · monomial` of a boundary matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryEntry {
    pub row: usize,
    pub col: usize,
    pub sign: i8,
    pub monomial: Monomial,
}

/// Sparse boundary map from dimension `k` cells (columns) to dimension
/// `k − 1` cells (rows).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BoundaryMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<BoundaryEntry>,
}

impl BoundaryMatrix {
    pub fn entry(&self, row: usize, col: usize) -> Option<&BoundaryEntry> {
        self.entries.iter().find(|e| e.row == row && e.col == col)
    }
}

/// The homogenized chain complex of a simplicial complex labelled by an ideal.
///
/// `bases[k + 1]` lists the `k`-dimensional faces (the empty face sits at
/// index 0), and `boundaries[k]` maps `k`-faces to `(k − 1)`-faces, so
/// `boundaries[0]` is the row of generators.
#[derive(Clone, Debug)]
pub struct ChainComplexRep {
    pub bases: Vec<Vec<Vec<usize>>>,
    pub boundaries: Vec<BoundaryMatrix>,
}

impl ChainComplexRep {
    pub fn top_dim(&self) -> isize {
        self.bases.len() as isize - 2
    }

    /// Whether every composite `d_{k−1} ∘ d_k` vanishes.
    pub fn composition_is_zero(&self) -> bool {
        (1..self.boundaries.len()).all(|k| {
            let upper = &self.boundaries[k];
            let lower = &self.boundaries[k - 1];
            let mut by_col: Vec<Vec<&BoundaryEntry>> = vec![Vec::new(); lower.cols];
            for e in &lower.entries {
                by_col[e.col].push(e);
            }
            let mut acc: HashMap<(usize, usize, Monomial), i64> = HashMap::new();
            for e in &upper.entries {
                for f in &by_col[e.row] {
                    *acc.entry((f.row, e.col, e.monomial.mul(&f.monomial)))
                        .or_default() += (e.sign as i64) * (f.sign as i64);
                }
            }
            acc.values().all(|&c| c == 0)
        })
    }

    /// Entries of `d_k`, `k ≥ 1`, that are nonzero constants. Their absence
    /// is the minimality criterion for the resolution.
    pub fn constant_entries(&self) -> Vec<(usize, &BoundaryEntry)> {
        self.boundaries
            .iter()
            .enumerate()
            .skip(1)
            .flat_map(|(k, d)| {
                d.entries
                    .iter()
                    .filter(|e| e.monomial.is_one())
                    .map(move |e| (k, e))
            })
            .collect()
    }

    pub fn is_minimal(&self) -> bool {
        self.constant_entries().is_empty()
    }
}

/// Homogenize the simplicial chain complex of `faces` with the labels of
/// `ideal`. Signs alternate with the position of the removed vertex in
/// ascending generator-index order.
pub fn homogenized_chain_complex(
    faces: &[Vec<usize>],
    ideal: &MonomialIdeal,
) -> Result<ChainComplexRep> {
    let mut set: HashSet<Vec<usize>> = HashSet::new();
    for f in faces {
        let mut f = f.clone();
        f.sort_unstable();
        f.dedup();
        if f.iter().any(|&i| i >= ideal.generators.len()) {
            return domain("face refers to a missing generator");
        }
        set.insert(f);
    }
    set.insert(Vec::new());
    for f in &set {
        for skip in 0..f.len() {
            let sub = drop_at(f, skip);
            if !set.contains(&sub) {
                return domain(format!("complex is not closed under subsets: {f:?}"));
            }
        }
    }
    let top = set.iter().map(Vec::len).max().unwrap_or(0);
    let mut bases: Vec<Vec<Vec<usize>>> = vec![Vec::new(); top + 1];
    for f in set {
        bases[f.len()].push(f);
    }
    for b in &mut bases {
        b.sort_unstable();
    }
    let labels: Vec<Vec<Monomial>> = bases
        .iter()
        .map(|b| b.iter().map(|f| lcm_label(ideal, f)).collect())
        .collect();
    let mut boundaries = Vec::with_capacity(top);
    for size in 1..=top {
        let rows_index: HashMap<&[usize], usize> = bases[size - 1]
            .iter()
            .enumerate()
            .map(|(i, f)| (f.as_slice(), i))
            .collect();
        let mut entries = Vec::new();
        for (col, f) in bases[size].iter().enumerate() {
            for pos in 0..f.len() {
                let sub = drop_at(f, pos);
                let row = rows_index[sub.as_slice()];
                let monomial = labels[size][col]
                    .checked_div(&labels[size - 1][row])
                    .ok_or_else(|| Error::Invariant("subface label must divide".into()))?;
                entries.push(BoundaryEntry {
                    row,
                    col,
                    sign: if pos % 2 == 0 { 1 } else { -1 },
                    monomial,
                });
            }
        }
        boundaries.push(BoundaryMatrix {
            rows: bases[size - 1].len(),
            cols: bases[size].len(),
            entries,
        });
    }
    Ok(ChainComplexRep { bases, boundaries })
}

fn drop_at(f: &[usize], pos: usize) -> Vec<usize> {
    f.iter()
        .enumerate()
        .filter(|&(j, _)| j != pos)
        .map(|(_, &v)| v)
        .collect()
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.exps.len()).map(|i| format!("v{i}")).collect();
        f.write_str(&self.render(&VariableSet::Named(names)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The ideal (xy, yz, zu) over variables x, y, z, u.
    pub(crate) fn path_ideal() -> MonomialIdeal {
        let m = |e: [u32; 4]| Monomial::from_exponents(e.to_vec());
        MonomialIdeal::new(
            VariableSet::named(&["x", "y", "z", "u"]),
            vec![m([1, 1, 0, 0]), m([0, 1, 1, 0]), m([0, 0, 1, 1])],
        )
        .unwrap()
    }

    #[test]
    fn extremal_generators_q4() {
        let e = extremal_ideal(4).unwrap();
        let vars = e.vars().clone();
        assert_eq!(
            e.generators()[0].render(&vars),
            "x_{1}*x_{12}*x_{13}*x_{123}*x_{14}*x_{124}*x_{134}*x_{1234}"
        );
        assert_eq!(e.generators()[0].degree(), 8);
        let e1 = extremal_ideal(1).unwrap();
        assert_eq!(e1.generators()[0].render(e1.vars()), "x_{1}");
        let e2 = extremal_ideal(2).unwrap();
        assert_eq!(e2.generators()[0].render(e2.vars()), "x_{1}*x_{12}");
        assert_eq!(e2.generators()[1].render(e2.vars()), "x_{2}*x_{12}");
        assert!(matches!(extremal_ideal(17), Err(Error::Resource(_))));
    }

    #[test]
    fn power_generator_exponents() {
        let g = extremal_power_generator(&Point::new(vec![2, 1, 0]).unwrap()).unwrap();
        assert_eq!(g.exponents()[0b011 - 1], 3);
        assert_eq!(g.exponents()[0b100 - 1], 0);
        assert_eq!(g.exponents()[0b001 - 1], 2);
        let g = extremal_power_generator(&Point::new(vec![1, 1, 1, 0]).unwrap()).unwrap();
        assert_eq!(g.exponents()[0b1111 - 1], 3);
    }

    #[test]
    fn path_ideal_labels() {
        let i = path_ideal();
        let v = i.vars().clone();
        assert_eq!(lcm_label(&i, &[0, 1]).render(&v), "x*y*z");
        assert_eq!(lcm_label(&i, &[0, 1, 2]).render(&v), "x*y*z*u");
        assert_eq!(lcm_label(&i, &[2]).render(&v), "z*u");
        assert!(lcm_label(&i, &[]).is_one());
        assert!(!is_scarf_face_by_labels(&i, &[0, 1, 2]).unwrap());
        assert!(!is_scarf_face_by_labels(&i, &[0, 2]).unwrap());
        assert!(is_scarf_face_by_labels(&i, &[0, 1]).unwrap());
    }

    #[test]
    fn label_test_rejects_nonminimal() {
        let m = |e: [u32; 2]| Monomial::from_exponents(e.to_vec());
        let i = MonomialIdeal::new(VariableSet::named(&["x", "y"]), vec![m([1, 0]), m([2, 0])])
            .unwrap();
        assert!(!i.is_minimal());
        assert!(is_scarf_face_by_labels(&i, &[0]).is_err());
    }

    #[test]
    fn bruteforce_face_limit_reports_progress() {
        let e = extremal_power(3, 2).unwrap();
        match scarf_complex_bruteforce(&e.ideal, None, 8) {
            Err(Error::Resource(msg)) => assert!(msg.contains("6 faces")),
            other => panic!("expected a resource error, got {other:?}"),
        }
    }

    #[test]
    fn chain_complex_rejects_open_sets() {
        let i = path_ideal();
        assert!(homogenized_chain_complex(&[vec![0, 1]], &i).is_err());
    }
}
