//! The complete catalog of the Scarf complex of `E_q^3`: edge templates,
//! facets, minimal nonfaces, catalog-based membership, and f-vectors by
//! enumeration.

use std::fmt;

use num_bigint::BigUint;

use crate::complex::f_vector_of_closure;
use crate::error::{domain, resource, Error, Result};
use crate::lattice::{enumerate_points, Face, Point, PointIndex};
use crate::scarfgeo::u_facet;

/// Largest `q` for [`f_vector_enumerated`].
pub const MAX_ENUMERATION_Q: usize = 6;

/// The three kinds of points of `N^3_q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    /// `3e_a`
    Cube(usize),
    /// `2e_a + e_b`
    Pair(usize, usize),
    /// `e_a + e_b + e_c` with `a < b < c`
    Triple(usize, usize, usize),
}

impl Shape {
    pub fn of(p: &Point) -> Result<Shape> {
        if p.r() != 3 {
            return domain(format!("({p}) is not of degree 3"));
        }
        let mut ones = Vec::new();
        let mut two = None;
        for (i, &c) in p.coords().iter().enumerate() {
            match c {
                0 => {}
                1 => ones.push(i),
                2 => two = Some(i),
                _ => return Ok(Shape::Cube(i)),
            }
        }
        Ok(match two {
            Some(a) => Shape::Pair(a, ones[0]),
            None => Shape::Triple(ones[0], ones[1], ones[2]),
        })
    }

    fn triple_set(&self) -> u32 {
        match *self {
            Shape::Triple(a, b, c) => 1 << a | 1 << b | 1 << c,
            _ => 0,
        }
    }
}

/// Templates for pairs of distinct points of `N^3_q`. The first nine are
/// the Scarf edges; the rest are the edge-shaped minimal nonfaces, plus the
/// one triangle-shaped minimal nonface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeTemplate {
    CubeWithPair,
    PairsSameDouble,
    PairsSwapped,
    PairWithTripleSharingBoth,
    PairWithTripleSharingDouble,
    PairWithDisjointTriple,
    TriplesDisjoint,
    TriplesSharingOne,
    TriplesSharingTwo,
    TwoCubes,
    CubeWithReversedPair,
    CubeWithDisjointPair,
    CubeWithIncidentTriple,
    CubeWithDisjointTriple,
    PairsChained,
    PairsSameSingle,
    PairsDisjoint,
    PairWithTripleSharingSingle,
    Triangle,
}

impl EdgeTemplate {
    pub const SCARF_EDGES: [EdgeTemplate; 9] = [
        EdgeTemplate::CubeWithPair,
        EdgeTemplate::PairsSameDouble,
        EdgeTemplate::PairsSwapped,
        EdgeTemplate::PairWithTripleSharingBoth,
        EdgeTemplate::PairWithTripleSharingDouble,
        EdgeTemplate::PairWithDisjointTriple,
        EdgeTemplate::TriplesDisjoint,
        EdgeTemplate::TriplesSharingOne,
        EdgeTemplate::TriplesSharingTwo,
    ];

    pub fn is_scarf_edge(self) -> bool {
        Self::SCARF_EDGES.contains(&self)
    }

    /// The template written with generic indices, all distinct.
    pub fn pattern(self) -> &'static str {
        use EdgeTemplate::*;
        match self {
            CubeWithPair => "{3e_u, 2e_u+e_j}",
            PairsSameDouble => "{2e_u+e_i, 2e_u+e_j}",
            PairsSwapped => "{2e_u+e_i, 2e_i+e_u}",
            PairWithTripleSharingBoth => "{2e_u+e_i, e_u+e_i+e_j}",
            PairWithTripleSharingDouble => "{2e_u+e_i, e_u+e_j+e_k}",
            PairWithDisjointTriple => "{2e_i+e_j, e_u+e_v+e_w}",
            TriplesDisjoint => "{e_i+e_j+e_k, e_u+e_v+e_w}",
            TriplesSharingOne => "{e_i+e_j+e_k, e_i+e_v+e_w}",
            TriplesSharingTwo => "{e_i+e_j+e_k, e_i+e_j+e_w}",
            TwoCubes => "{3e_a, 3e_b}",
            CubeWithReversedPair => "{3e_a, e_a+2e_b}",
            CubeWithDisjointPair => "{3e_a, 2e_b+e_c}",
            CubeWithIncidentTriple => "{3e_a, e_a+e_b+e_c}",
            CubeWithDisjointTriple => "{3e_a, e_b+e_c+e_d}",
            PairsChained => "{2e_a+e_b, 2e_b+e_c}",
            PairsSameSingle => "{2e_a+e_b, 2e_c+e_b}",
            PairsDisjoint => "{2e_a+e_b, 2e_c+e_d}",
            PairWithTripleSharingSingle => "{2e_a+e_b, e_b+e_c+e_d}",
            Triangle => "{2e_a+e_b, e_a+2e_b, e_c+e_d+e_e}",
        }
    }
}

impl fmt::Display for EdgeTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.pattern())
    }
}

/// Classify a pair of distinct degree-3 points.
pub fn edge_type(a: &Point, b: &Point) -> Result<EdgeTemplate> {
    use EdgeTemplate::*;
    use Shape::*;
    if a.q() != b.q() {
        return domain("points of different width");
    }
    if a == b {
        return domain("an edge needs two distinct points");
    }
    let (x, y) = (Shape::of(a)?, Shape::of(b)?);
    // Order so the first shape is the "heavier" one: cube, then pair, then triple.
    let rank = |s: &Shape| match s {
        Cube(_) => 0,
        Pair(..) => 1,
        Triple(..) => 2,
    };
    let (x, y) = if rank(&x) <= rank(&y) { (x, y) } else { (y, x) };
    Ok(match (x, y) {
        (Cube(_), Cube(_)) => TwoCubes,
        (Cube(u), Pair(s, t)) => {
            if s == u {
                CubeWithPair
            } else if t == u {
                CubeWithReversedPair
            } else {
                CubeWithDisjointPair
            }
        }
        (Cube(u), z @ Triple(..)) => {
            if z.triple_set() >> u & 1 == 1 {
                CubeWithIncidentTriple
            } else {
                CubeWithDisjointTriple
            }
        }
        (Pair(u, i), Pair(s, t)) => {
            if s == u {
                PairsSameDouble
            } else if s == i && t == u {
                PairsSwapped
            } else if s == i || t == u {
                PairsChained
            } else if t == i {
                PairsSameSingle
            } else {
                PairsDisjoint
            }
        }
        (Pair(u, i), z @ Triple(..)) => {
            let set = z.triple_set();
            match (set >> u & 1 == 1, set >> i & 1 == 1) {
                (true, true) => PairWithTripleSharingBoth,
                (true, false) => PairWithTripleSharingDouble,
                (false, true) => PairWithTripleSharingSingle,
                (false, false) => PairWithDisjointTriple,
            }
        }
        (s @ Triple(..), t @ Triple(..)) => match (s.triple_set() & t.triple_set()).count_ones() {
            0 => TriplesDisjoint,
            1 => TriplesSharingOne,
            _ => TriplesSharingTwo,
        },
        _ => unreachable!("shapes are ordered by rank"),
    })
}

/// The facet families of the Scarf complex of `E_q^3`. Indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FacetFamily {
    /// All square-free points.
    Hypersimplex,
    /// `U_{e_a}`
    Unit(usize),
    /// `U_{2e_a}`
    Double(usize),
    /// `U_{e_a+e_b}`, `a < b`
    UnitPair(usize, usize),
    /// `W_{P,a}` with `P` a coordinate bitmask.
    W { p: u32, a: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FacetDescriptor {
    pub family: FacetFamily,
    pub q: usize,
}

impl FacetDescriptor {
    pub fn is_w(&self) -> bool {
        matches!(self.family, FacetFamily::W { .. })
    }

    pub fn realize(&self) -> Result<Face> {
        let q = self.q;
        let shift = |idx: &[usize]| -> Vec<u32> {
            let mut a = vec![0; q];
            for &i in idx {
                a[i] += 1;
            }
            a
        };
        match self.family {
            FacetFamily::Hypersimplex => u_facet(&vec![0; q], 3),
            FacetFamily::Unit(a) => u_facet(&shift(&[a]), 3),
            FacetFamily::Double(a) => u_facet(&shift(&[a, a]), 3),
            FacetFamily::UnitPair(a, b) => u_facet(&shift(&[a, b]), 3),
            FacetFamily::W { p, a } => w_facet(p, a, q),
        }
    }
}

impl fmt::Display for FacetDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.family {
            FacetFamily::Hypersimplex => write!(f, "U_{}^3", self.q),
            FacetFamily::Unit(a) => write!(f, "U_{{e_{}}}", a + 1),
            FacetFamily::Double(a) => write!(f, "U_{{2e_{}}}", a + 1),
            FacetFamily::UnitPair(a, b) => write!(f, "U_{{e_{}+e_{}}}", a + 1, b + 1),
            FacetFamily::W { p, a } => {
                let set: Vec<String> = (0..self.q)
                    .filter(|i| p >> i & 1 == 1)
                    .map(|i| (i + 1).to_string())
                    .collect();
                write!(f, "W_{{{{{}}},{}}}", set.join(","), a + 1)
            }
        }
    }
}

/// `{2e_a+e_j : j ∈ P∖a} ∪ {square-free e_j+e_k+e_l : j,k,l ∉ P} ∪
/// {e_a+e_j+e_k : j < k, a ∉ {j,k}}`.
pub fn w_facet(p: u32, a: usize, q: usize) -> Result<Face> {
    if q == 0 || q > 31 || p >> q != 0 || a >= q || p >> a & 1 == 0 {
        return domain("w_facet needs a ∈ P ⊆ [q]");
    }
    let mut pts = Vec::new();
    for j in (0..q).filter(|&j| j != a && p >> j & 1 == 1) {
        pts.push(Point::from_indices(q, &[a, a, j])?);
    }
    for j in 0..q {
        for k in j + 1..q {
            for l in k + 1..q {
                let set = 1 << j | 1 << k | 1 << l;
                if set & p == 0 || (set >> a & 1 == 1) {
                    pts.push(Point::from_indices(q, &[j, k, l])?);
                }
            }
        }
    }
    pts.sort_unstable();
    pts.dedup();
    Face::new(q, 3, pts)
}

/// All facets, family by family in the order the families are gated by `q`,
/// with duplicate realizations removed.
pub fn facets_r3(q: usize) -> Result<Vec<(FacetDescriptor, Face)>> {
    if q == 0 {
        return domain("facets_r3 needs q >= 1");
    }
    if q > 31 {
        return resource("facets_r3 supports q <= 31");
    }
    let mut families = Vec::new();
    if q >= 4 {
        families.push(FacetFamily::Hypersimplex);
    }
    if q >= 3 {
        families.extend((0..q).map(FacetFamily::Unit));
    }
    families.extend((0..q).map(FacetFamily::Double));
    for a in 0..q {
        for b in a + 1..q {
            families.push(FacetFamily::UnitPair(a, b));
        }
    }
    if q >= 5 {
        for p in 1u32..1 << q {
            let size = p.count_ones() as usize;
            if (2..=q - 3).contains(&size) {
                for a in (0..q).filter(|&a| p >> a & 1 == 1) {
                    families.push(FacetFamily::W { p, a });
                }
            }
        }
    }
    let mut out: Vec<(FacetDescriptor, Face)> = Vec::with_capacity(families.len());
    for family in families {
        let d = FacetDescriptor { family, q };
        let face = d.realize()?;
        if !out.iter().any(|(_, f)| *f == face) {
            out.push((d, face));
        }
    }
    Ok(out)
}

/// A minimal nonface together with the template it instantiates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NonfaceDescriptor {
    pub template: EdgeTemplate,
    pub face: Face,
}

/// Every instance of the edge-shaped and triangle-shaped minimal nonfaces,
/// sorted descending under the face order.
pub fn minimal_nonfaces_r3(q: usize) -> Result<Vec<NonfaceDescriptor>> {
    if q == 0 {
        return domain("minimal_nonfaces_r3 needs q >= 1");
    }
    if q > 31 {
        return resource("minimal_nonfaces_r3 supports q <= 31");
    }
    let pts = enumerate_points(q, 3);
    let mut out = Vec::new();
    for (i, a) in pts.iter().enumerate() {
        for b in &pts[i + 1..] {
            let template = edge_type(a, b)?;
            if !template.is_scarf_edge() {
                out.push(NonfaceDescriptor {
                    template,
                    face: Face::new(q, 3, vec![a.clone(), b.clone()])?,
                });
            }
        }
    }
    for a in 0..q {
        for b in a + 1..q {
            let rest: Vec<usize> = (0..q).filter(|&x| x != a && x != b).collect();
            for (x, &c) in rest.iter().enumerate() {
                for (y, &d) in rest.iter().enumerate().skip(x + 1) {
                    for &e in &rest[y + 1..] {
                        out.push(NonfaceDescriptor {
                            template: EdgeTemplate::Triangle,
                            face: Face::new(
                                q,
                                3,
                                vec![
                                    Point::from_indices(q, &[a, a, b])?,
                                    Point::from_indices(q, &[a, b, b])?,
                                    Point::from_indices(q, &[c, d, e])?,
                                ],
                            )?,
                        });
                    }
                }
            }
        }
    }
    out.sort_unstable_by(|x, y| y.face.cmp(&x.face));
    Ok(out)
}

/// Facets and minimal nonfaces of one `q`, for repeated membership queries.
#[derive(Clone, Debug)]
pub struct R3Catalog {
    q: usize,
    facets: Vec<(FacetDescriptor, Face)>,
    nonfaces: Vec<NonfaceDescriptor>,
}

impl R3Catalog {
    pub fn new(q: usize) -> Result<Self> {
        Ok(R3Catalog {
            q,
            facets: facets_r3(q)?,
            nonfaces: minimal_nonfaces_r3(q)?,
        })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn facets(&self) -> &[(FacetDescriptor, Face)] {
        &self.facets
    }

    pub fn nonfaces(&self) -> &[NonfaceDescriptor] {
        &self.nonfaces
    }

    /// Route A: the face lies in a facet.
    pub fn in_some_facet(&self, face: &Face) -> bool {
        self.facets.iter().any(|(_, f)| face.is_subset_of(f))
    }

    /// Route B: the face contains no minimal nonface.
    pub fn avoids_nonfaces(&self, face: &Face) -> bool {
        !self
            .nonfaces
            .iter()
            .any(|n| n.face.len() <= face.len() && n.face.is_subset_of(face))
    }

    /// Membership by both routes; a disagreement is an error.
    pub fn is_face(&self, face: &Face) -> Result<bool> {
        if face.r() != 3 || face.q() != self.q {
            return domain(format!(
                "catalog for N^3_{} cannot judge a face in N^{}_{}",
                self.q,
                face.r(),
                face.q()
            ));
        }
        let a = self.in_some_facet(face);
        let b = self.avoids_nonfaces(face);
        if a != b {
            return Err(Error::Invariant(format!(
                "facet route says {a}, nonface route says {b} for {face}"
            )));
        }
        Ok(a)
    }
}

/// Catalog membership for a single face; see [`R3Catalog::is_face`].
pub fn is_face_r3(face: &Face) -> Result<bool> {
    if face.r() != 3 {
        return domain("catalog membership needs r = 3");
    }
    R3Catalog::new(face.q())?.is_face(face)
}

/// Face counts of the Scarf complex of `E_q^3` by dimension, from the
/// facet catalog.
pub fn f_vector_enumerated(q: usize) -> Result<Vec<BigUint>> {
    if q == 0 {
        return domain("f_vector_enumerated needs q >= 1");
    }
    if q > MAX_ENUMERATION_Q {
        return resource(format!(
            "f-vector enumeration is capped at q = {MAX_ENUMERATION_Q}"
        ));
    }
    let index = PointIndex::new(q, 3);
    let masks = facets_r3(q)?
        .iter()
        .map(|(_, f)| index.mask_of(f))
        .collect::<Result<Vec<_>>>()?;
    Ok(f_vector_of_closure(&masks)
        .into_iter()
        .map(BigUint::from)
        .collect())
}
